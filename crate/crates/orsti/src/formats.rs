//! Plain-text and binary input formats.
//!
//! Tree files hold one node per line, `parent weight`, nodes numbered from 1
//! in line order and parent 0 marking the root. Point files hold `x y` per
//! line. Blank lines are ignored in both.
//!
//! A compressed parse is a sequence of 10-byte records: `F` and `L` as
//! little-endian `u32`, a flag byte (1 if a literal follows, else 0) and the
//! literal byte (0 when absent).

use std::io::Read;

use orsti_core::lz::{LzParse, Phrase};

use crate::{Error, Result};

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<Vec<u8>> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        buf
    } else {
        std::fs::read(path).map_err(|e| Error::Format(format!("cannot read {path}: {e}")))?
    };
    Ok(bytes)
}

fn lines(bytes: &[u8]) -> Result<impl Iterator<Item = (usize, &str)>> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Format("input is not UTF-8".into()))?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty()))
}

fn fields<const N: usize>(line: usize, l: &str) -> Result<[u64; N]> {
    let bad = || Error::Format(format!("line {line}: expected {N} non-negative integers"));
    let parts: Vec<u64> = l.split_whitespace().map(|f| f.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    parts.try_into().map_err(|_| bad())
}

/// Parent array with weights; node ids come back 0-based.
pub fn parse_tree(bytes: &[u8]) -> Result<Vec<(Option<usize>, u64)>> {
    let mut out = Vec::new();
    for (line, l) in lines(bytes)? {
        let [p, w] = fields::<2>(line, l)?;
        out.push(((p as usize).checked_sub(1), w));
    }
    Ok(out)
}

pub fn format_tree(nodes: &[(Option<usize>, u64)]) -> String {
    nodes.iter().map(|(p, w)| format!("{} {}\n", p.map_or(0, |p| p + 1), w)).collect()
}

pub fn parse_points(bytes: &[u8]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (line, l) in lines(bytes)? {
        let [x, y] = fields::<2>(line, l)?;
        out.push((x as usize, y as usize));
    }
    Ok(out)
}

pub fn encode_parse(parse: &LzParse) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(parse.len() * 10);
    for p in parse.phrases() {
        for v in [p.f, p.l] {
            let v = u32::try_from(v).map_err(|_| Error::Format("phrase field exceeds 32 bits".into()))?;
            out.extend_from_slice(&v.to_le_bytes());
        }
        out.push(u8::from(p.c.is_some()));
        out.push(p.c.unwrap_or(0));
    }
    Ok(out)
}

pub fn decode_parse(bytes: &[u8]) -> Result<LzParse> {
    if !bytes.len().is_multiple_of(10) {
        return Err(Error::Format("parse length is not a multiple of 10 bytes".into()));
    }
    let mut phrases = Vec::with_capacity(bytes.len() / 10);
    for rec in bytes.chunks_exact(10) {
        let f = u32::from_le_bytes(rec[0..4].try_into().unwrap()) as usize;
        let l = u32::from_le_bytes(rec[4..8].try_into().unwrap()) as usize;
        let c = match (rec[8], rec[9]) {
            (0, 0) => None,
            (1, c) => Some(c),
            _ => return Err(Error::Format("bad literal flag".into())),
        };
        phrases.push(Phrase { f, l, c });
    }
    Ok(LzParse::new(phrases))
}

/// A query pattern from either a raw argument or its hex spelling.
pub fn pattern(raw: Option<&str>, hex: Option<&str>) -> Result<Vec<u8>> {
    let bytes = match (raw, hex) {
        (Some(_), Some(_)) => return Err(Error::Usage("give a pattern either raw or as hex, not both".into())),
        (Some(r), None) => r.as_bytes().to_vec(),
        (None, Some(h)) => hex::decode(h).map_err(|e| Error::Format(format!("bad hex pattern: {e}")))?,
        (None, None) => return Err(Error::Usage("this query needs a pattern".into())),
    };
    if bytes.contains(&0) {
        return Err(Error::Format("patterns may not contain byte 0".into()));
    }
    Ok(bytes)
}
