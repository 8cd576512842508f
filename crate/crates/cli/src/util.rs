//! Flag parsing and output plumbing shared by the subcommands.

use std::io::Write;
use std::path::PathBuf;

use walksearch::attack::{Block, Key, KeySubset, ToyCipher};
use walksearch::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Case-insensitive hex with optional `0x` prefix.
pub fn parse_hex(s: &str) -> Result<u32> {
    let trimmed = s.trim();
    let digits = trimmed
        .strip_prefix("0x")
        .or_else(|| trimmed.strip_prefix("0X"))
        .unwrap_or(trimmed);
    u32::from_str_radix(digits, 16)
        .map_err(|e| Error::InvalidArgument(format!("bad hex value {s:?}: {e}")))
}

/// `PLAIN:CIPHER` pairs separated by commas.
pub fn parse_pairs(s: &str) -> Result<Vec<(Block, Block)>> {
    s.split(',')
        .map(|entry| {
            let (x, y) = entry.split_once(':').ok_or_else(|| {
                Error::InvalidArgument(format!("pair {entry:?} is not PLAIN:CIPHER"))
            })?;
            Ok((parse_hex(x)?, parse_hex(y)?))
        })
        .collect()
}

/// Comma-separated hex blocks.
pub fn parse_blocks(s: &str) -> Result<Vec<Block>> {
    s.split(',').map(parse_hex).collect()
}

/// `LO-HI` range or comma-separated key list; `full` for the whole space.
pub fn parse_subset(s: &str, cipher: &ToyCipher) -> Result<KeySubset> {
    let trimmed = s.trim();
    if trimmed.eq_ignore_ascii_case("full") {
        return Ok(KeySubset::full_space(cipher));
    }
    if let Some((lo, hi)) = trimmed.split_once('-') {
        return KeySubset::range(parse_hex(lo)?, parse_hex(hi)?);
    }
    let keys: Vec<Key> = trimmed
        .split(',')
        .map(parse_hex)
        .collect::<Result<Vec<_>>>()?;
    KeySubset::explicit(keys)
}

/// Write to `--output` when given, stdout otherwise.
pub fn emit(output: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}
