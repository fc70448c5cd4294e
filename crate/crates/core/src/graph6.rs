//! The graph6 line format used by nauty, geng and most graph catalogs.
//!
//! A line is a vertex-count header followed by the upper triangle of the
//! adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed six bits per byte, most significant bit first, each byte offset
//! by 63. The header is one byte for `n <= 62`, `~` plus three bytes for
//! `n <= 258047`, and `~~` plus six bytes beyond that.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted in either direction.
pub const MAX_VERTICES: usize = 1 << 18;

const OFFSET: u8 = 63;
const OPTIONAL_HEADER: &[u8] = b">>graph6<<";

fn decode_byte(bytes: &[u8], pos: usize) -> Result<u8> {
    match bytes.get(pos) {
        None => Err(Error::parse(pos, "unexpected end of line")),
        Some(&b) if (63..=126).contains(&b) => Ok(b - OFFSET),
        Some(&b) if b.is_ascii() => Err(Error::parse(
            pos,
            format!("byte 0x{b:02x} outside the graph6 range 63..=126"),
        )),
        Some(&b) => Err(Error::parse(pos, format!("non-ASCII byte 0x{b:02x}"))),
    }
}

fn read_header(bytes: &[u8], start: usize) -> Result<(usize, usize)> {
    let first = decode_byte(bytes, start)?;
    if first < 63 {
        return Ok((first as usize, start + 1));
    }
    let second = decode_byte(bytes, start + 1)?;
    let (digits, body) = if second < 63 {
        (3, start + 1)
    } else {
        (6, start + 2)
    };
    let mut n: u64 = 0;
    for k in 0..digits {
        n = (n << 6) | u64::from(decode_byte(bytes, body + k)?);
    }
    let min = if digits == 3 { 63 } else { 258_048 };
    if n < min {
        return Err(Error::parse(
            start,
            format!("non-canonical length header for n = {n}"),
        ));
    }
    if n > MAX_VERTICES as u64 {
        return Err(Error::parse(
            start,
            format!("n = {n} exceeds the supported maximum {MAX_VERTICES}"),
        ));
    }
    Ok((n as usize, body + digits))
}

/// Parses one graph6 line. A single trailing `\n` (or `\r\n`) and the
/// optional `>>graph6<<` prefix are accepted; anything else after the last
/// data byte is an error.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    parse_graph6_bytes(text.as_bytes())
}

pub fn parse_graph6_bytes(line: &[u8]) -> Result<Graph> {
    let mut end = line.len();
    if line[..end].ends_with(b"\n") {
        end -= 1;
        if line[..end].ends_with(b"\r") {
            end -= 1;
        }
    }
    let bytes = &line[..end];
    let start = if bytes.starts_with(OPTIONAL_HEADER) {
        OPTIONAL_HEADER.len()
    } else {
        0
    };
    if bytes.len() == start {
        return Err(Error::parse(start, "empty graph6 line"));
    }
    let (n, body) = read_header(bytes, start)?;
    let bits = n * n.saturating_sub(1) / 2;
    let data_len = bits.div_ceil(6);
    if bytes.len() < body + data_len {
        return Err(Error::parse(
            bytes.len(),
            format!(
                "expected {data_len} data bytes for n = {n}, found {}",
                bytes.len() - body
            ),
        ));
    }
    if bytes.len() > body + data_len {
        return Err(Error::parse(body + data_len, "trailing bytes after graph data"));
    }
    // Validate every byte before allocating the adjacency rows.
    for pos in body..body + data_len {
        decode_byte(bytes, pos)?;
    }
    let pad = data_len * 6 - bits;
    if pad > 0 {
        let last = bytes[body + data_len - 1] - OFFSET;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Error::parse(body + data_len - 1, "non-zero padding bits"));
        }
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[body + k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_unchecked(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` as a graph6 line, without a trailing newline.
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::invalid(format!(
            "n = {n} exceeds the graph6 maximum {MAX_VERTICES}"
        )));
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + OFFSET);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
