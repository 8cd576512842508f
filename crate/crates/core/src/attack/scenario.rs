//! Attack scenarios, key subsets, and the marked-key computation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cipher::{Block, Key, ToyCipher};

/// Recognizer for "plausible plaintext" in ciphertext-only attacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaintextModel {
    /// The block's high byte decodes to printable ASCII (0x20..=0x7E). A
    /// concrete stand-in for plaintext recognizability; swap in your own
    /// variant for other plaintext sources.
    PrintableHighByte,
}

impl PlaintextModel {
    pub fn plausible(&self, block: Block) -> bool {
        match self {
            PlaintextModel::PrintableHighByte => {
                let high = (block >> 8) & 0xFF;
                (0x20..=0x7E).contains(&high)
            }
        }
    }
}

/// What the attacker holds, per the four classic scenarios. Chosen-plaintext
/// and chosen-ciphertext carry pairs just like known-plaintext; the
/// difference is how the attacker obtained them, which does not change the
/// key-consistency check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AttackScenario {
    CiphertextOnly {
        ciphertexts: Vec<Block>,
        plaintext_model: PlaintextModel,
    },
    KnownPlaintext { pairs: Vec<(Block, Block)> },
    ChosenPlaintext { pairs: Vec<(Block, Block)> },
    ChosenCiphertext { pairs: Vec<(Block, Block)> },
}

impl AttackScenario {
    pub fn kind_name(&self) -> &'static str {
        match self {
            AttackScenario::CiphertextOnly { .. } => "ciphertext-only",
            AttackScenario::KnownPlaintext { .. } => "known-plaintext",
            AttackScenario::ChosenPlaintext { .. } => "chosen-plaintext",
            AttackScenario::ChosenCiphertext { .. } => "chosen-ciphertext",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AttackScenario::CiphertextOnly { ciphertexts, .. } => {
                if ciphertexts.is_empty() {
                    return Err(Error::invalid(
                        "ciphertext-only scenario needs at least one ciphertext",
                    ));
                }
            }
            AttackScenario::KnownPlaintext { pairs }
            | AttackScenario::ChosenPlaintext { pairs }
            | AttackScenario::ChosenCiphertext { pairs } => {
                if pairs.is_empty() {
                    return Err(Error::invalid(format!(
                        "{} scenario needs at least one (plaintext, ciphertext) pair",
                        self.kind_name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Is `key` consistent with every constraint the attacker holds?
    pub fn key_consistent(&self, cipher: &ToyCipher, key: Key) -> bool {
        match self {
            AttackScenario::CiphertextOnly {
                ciphertexts,
                plaintext_model,
            } => ciphertexts
                .iter()
                .all(|&y| plaintext_model.plausible(cipher.decrypt(key, y))),
            AttackScenario::KnownPlaintext { pairs }
            | AttackScenario::ChosenPlaintext { pairs }
            | AttackScenario::ChosenCiphertext { pairs } => pairs
                .iter()
                .all(|&(x, y)| cipher.encrypt(key, x) == y),
        }
    }
}

/// The finite subset `A` of the key space the attacker chooses to search.
/// Keys are addressed by a dense index `0..len`, which is what the walk and
/// the Grover statevector operate on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KeySubset {
    /// Inclusive range `lo..=hi`.
    Range { lo: Key, hi: Key },
    /// Explicit key list; must be free of duplicates. Index order is list
    /// order.
    Explicit { keys: Vec<Key> },
}

impl KeySubset {
    pub fn range(lo: Key, hi: Key) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty key range {lo:#x}-{hi:#x}")));
        }
        Ok(KeySubset::Range { lo, hi })
    }

    pub fn explicit(keys: Vec<Key>) -> Result<Self> {
        if keys.is_empty() {
            return Err(Error::invalid("explicit key subset is empty"));
        }
        let mut seen = std::collections::HashSet::with_capacity(keys.len());
        if let Some(dup) = keys.iter().find(|&&k| !seen.insert(k)) {
            return Err(Error::invalid(format!("duplicate key {dup:#x} in subset")));
        }
        Ok(KeySubset::Explicit { keys })
    }

    /// The whole key space of `cipher`.
    pub fn full_space(cipher: &ToyCipher) -> Self {
        KeySubset::Range {
            lo: 0,
            hi: (cipher.key_count() - 1) as Key,
        }
    }

    pub fn len(&self) -> u64 {
        match self {
            KeySubset::Range { lo, hi } => (*hi - *lo) as u64 + 1,
            KeySubset::Explicit { keys } => keys.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        false // both constructors reject empty subsets
    }

    pub fn get(&self, index: u64) -> Key {
        debug_assert!(index < self.len());
        match self {
            KeySubset::Range { lo, .. } => lo + index as Key,
            KeySubset::Explicit { keys } => keys[index as usize],
        }
    }

    pub fn index_of(&self, key: Key) -> Option<u64> {
        match self {
            KeySubset::Range { lo, hi } => {
                (key >= *lo && key <= *hi).then(|| (key - lo) as u64)
            }
            KeySubset::Explicit { keys } => {
                keys.iter().position(|&k| k == key).map(|i| i as u64)
            }
        }
    }

    pub fn contains(&self, key: Key) -> bool {
        self.index_of(key).is_some()
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Key> + '_> {
        match self {
            KeySubset::Range { lo, hi } => Box::new(*lo..=*hi),
            KeySubset::Explicit { keys } => Box::new(keys.iter().copied()),
        }
    }

    /// Keys must fit the cipher's key space.
    pub fn validate_for(&self, cipher: &ToyCipher) -> Result<()> {
        let limit = cipher.key_count() as Key;
        let bad = match self {
            KeySubset::Range { hi, .. } => (*hi >= limit).then_some(*hi),
            KeySubset::Explicit { keys } => keys.iter().copied().find(|&k| k >= limit),
        };
        match bad {
            Some(k) => Err(Error::invalid(format!(
                "key {k:#x} outside the {}-bit key space",
                cipher.key_bits()
            ))),
            None => Ok(()),
        }
    }
}

/// Subset-index flags of the keys consistent with the scenario; the walk's
/// marked set. `flags[i]` covers `subset.get(i)`.
pub fn marked_flags(cipher: &ToyCipher, scenario: &AttackScenario, subset: &KeySubset) -> Vec<bool> {
    let len = subset.len();
    (0..len)
        .into_par_iter()
        .map(|i| scenario.key_consistent(cipher, subset.get(i)))
        .collect()
}

/// The keys in `subset` consistent with every scenario constraint, in
/// subset-index order. May be empty: that is the attacker's "bad choice of
/// A" outcome, not an error.
pub fn marked_keys(cipher: &ToyCipher, scenario: &AttackScenario, subset: &KeySubset) -> Vec<Key> {
    marked_flags(cipher, scenario, subset)
        .into_iter()
        .enumerate()
        .filter_map(|(i, m)| m.then(|| subset.get(i as u64)))
        .collect()
}
