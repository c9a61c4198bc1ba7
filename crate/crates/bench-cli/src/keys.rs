//! Key file formats: decimal text, one per line, or raw little-endian u64.

use crate::error::{CliError, Result};

/// Parses one decimal per line. The final newline is optional; blank lines
/// are rejected.
pub fn parse_text(input: &[u8]) -> Result<Vec<u64>> {
    let text = std::str::from_utf8(input)
        .map_err(|e| CliError::Input(format!("input is not UTF-8 (byte offset {})", e.valid_up_to())))?;
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split('\n')
        .enumerate()
        .map(|(i, line)| {
            let token = line.trim();
            token
                .parse::<u64>()
                .map_err(|_| CliError::Input(format!("line {}: not an unsigned 64-bit integer: {token:?}", i + 1)))
        })
        .collect()
}

pub fn write_text(keys: &[u64]) -> Vec<u8> {
    let mut out = String::with_capacity(keys.len() * 8);
    for k in keys {
        out.push_str(&k.to_string());
        out.push('\n');
    }
    out.into_bytes()
}

/// Headerless little-endian u64 words; length must be a multiple of 8.
pub fn parse_binary(input: &[u8]) -> Result<Vec<u64>> {
    if !input.len().is_multiple_of(8) {
        let offset = input.len() - input.len() % 8;
        return Err(CliError::Input(format!(
            "byte offset {offset}: trailing {} bytes do not form a 64-bit key",
            input.len() % 8
        )));
    }
    Ok(input
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect())
}

pub fn write_binary(keys: &[u64]) -> Vec<u8> {
    keys.iter().flat_map(|k| k.to_le_bytes()).collect()
}
