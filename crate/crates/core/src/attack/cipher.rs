//! Toy block ciphers for exercising key-space search.
//!
//! Neither is remotely secure; they exist to give the harness a concrete
//! `encrypt`/`decrypt` pair with a known key space. `xor16` is analytically
//! transparent (one known-plaintext pair pins the key exactly), `spn16` can
//! leave several keys consistent with one pair, which exercises walks with
//! more than one marked target.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Key as an integer in `0 .. 2^key_bits`.
pub type Key = u32;
/// Plaintext / ciphertext block as an integer in `0 .. 2^block_bits`.
pub type Block = u32;

/// 4-bit S-box applied to each nibble of `spn16` (Heys' tutorial table).
pub const SPN16_SBOX: [u8; 16] = [
    0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8, 0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7,
];

/// Inverse of [`SPN16_SBOX`].
pub const SPN16_SBOX_INV: [u8; 16] = [
    0xE, 0x3, 0x4, 0x8, 0x1, 0xC, 0xA, 0xF, 0x7, 0xD, 0x9, 0x6, 0xB, 0x2, 0x0, 0x5,
];

/// Bit permutation of `spn16`: numbering bits 0..15 from the least
/// significant, input bit `4r + c` moves to output bit `4c + r` (the 4x4
/// transpose). Self-inverse.
pub const SPN16_PERMUTATION: [u8; 16] = [
    0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToyCipher {
    /// 16-bit key, 16-bit block, `encrypt(k, x) = x ^ k`.
    Xor16,
    /// 16-bit key, 16-bit block, two rounds of (key XOR, nibble S-box, bit
    /// permutation) with the tables above and the same round key.
    Spn16,
}

impl std::str::FromStr for ToyCipher {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xor16" => Ok(ToyCipher::Xor16),
            "spn16" => Ok(ToyCipher::Spn16),
            other => Err(Error::invalid(format!(
                "unknown cipher {other:?}; expected xor16 or spn16"
            ))),
        }
    }
}

impl std::fmt::Display for ToyCipher {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn substitute(block: u16, sbox: &[u8; 16]) -> u16 {
    let mut out = 0u16;
    for nibble in 0..4 {
        let v = (block >> (nibble * 4)) & 0xF;
        out |= (sbox[v as usize] as u16) << (nibble * 4);
    }
    out
}

fn permute(block: u16) -> u16 {
    let mut out = 0u16;
    for bit in 0..16 {
        if block >> bit & 1 == 1 {
            out |= 1 << SPN16_PERMUTATION[bit];
        }
    }
    out
}

impl ToyCipher {
    pub fn name(&self) -> &'static str {
        match self {
            ToyCipher::Xor16 => "xor16",
            ToyCipher::Spn16 => "spn16",
        }
    }

    pub fn key_bits(&self) -> u32 {
        16
    }

    pub fn block_bits(&self) -> u32 {
        16
    }

    /// `|K| = 2^key_bits`.
    pub fn key_count(&self) -> u64 {
        1 << self.key_bits()
    }

    pub fn encrypt(&self, key: Key, block: Block) -> Block {
        debug_assert!(key < self.key_count() as Key);
        debug_assert!(block < (1 << self.block_bits()));
        let key = key as u16;
        let block = block as u16;
        let out = match self {
            ToyCipher::Xor16 => block ^ key,
            ToyCipher::Spn16 => {
                let mut b = block;
                for _ in 0..2 {
                    b ^= key;
                    b = substitute(b, &SPN16_SBOX);
                    b = permute(b);
                }
                b
            }
        };
        out as Block
    }

    pub fn decrypt(&self, key: Key, block: Block) -> Block {
        debug_assert!(key < self.key_count() as Key);
        debug_assert!(block < (1 << self.block_bits()));
        let key = key as u16;
        let block = block as u16;
        let out = match self {
            ToyCipher::Xor16 => block ^ key,
            ToyCipher::Spn16 => {
                let mut b = block;
                for _ in 0..2 {
                    b = permute(b); // the permutation is self-inverse
                    b = substitute(b, &SPN16_SBOX_INV);
                    b ^= key;
                }
                b
            }
        };
        out as Block
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn sbox_tables_are_mutually_inverse() {
        for v in 0..16usize {
            assert_eq!(SPN16_SBOX_INV[SPN16_SBOX[v] as usize] as usize, v);
        }
    }

    #[test]
    fn permutation_is_a_self_inverse_bijection() {
        let mut seen = [false; 16];
        for &p in &SPN16_PERMUTATION {
            assert!(!seen[p as usize]);
            seen[p as usize] = true;
        }
        for bit in 0..16usize {
            assert_eq!(
                SPN16_PERMUTATION[SPN16_PERMUTATION[bit] as usize] as usize,
                bit
            );
        }
        for block in [0x0000u16, 0xFFFF, 0x1234, 0x8001] {
            assert_eq!(permute(permute(block)), block);
        }
    }

    #[test]
    fn xor16_matches_the_worked_pair() {
        let c = ToyCipher::Xor16;
        assert_eq!(c.encrypt(0xBEEF, 0x1234), 0xACDB);
        assert_eq!(c.decrypt(0xBEEF, 0xACDB), 0x1234);
    }

    #[test]
    fn round_trip_holds_on_a_thousand_sampled_pairs() {
        let mut rng = crate::rng::stream_rng(2024, 0);
        for cipher in [ToyCipher::Xor16, ToyCipher::Spn16] {
            for _ in 0..1000 {
                let k: Key = rng.random_range(0..cipher.key_count() as Key);
                let x: Block = rng.random_range(0..1 << cipher.block_bits());
                assert_eq!(cipher.decrypt(k, cipher.encrypt(k, x)), x);
            }
        }
    }

    #[test]
    fn unknown_cipher_names_are_rejected() {
        assert!("des".parse::<ToyCipher>().is_err());
        assert_eq!("spn16".parse::<ToyCipher>().unwrap(), ToyCipher::Spn16);
    }
}
