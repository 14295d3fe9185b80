//! graph6 encoding.
//!
//! A record is the vertex count `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte with 63 added to each byte. `N(n)` is the single
//! byte `n + 63` for `n <= 62`, or `126` followed by three bytes carrying an
//! 18-bit big-endian count.

use thiserror::Error;

use super::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("header directives (>>graph6<<) are not supported")]
    Header,
    #[error("malformed vertex count prefix")]
    BadLength,
    #[error("byte 0x{byte:02x} at offset {offset} is outside the printable graph6 range")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6 record declares {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("record truncated: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage after {expected} data bytes")]
    TrailingGarbage { expected: usize },
    #[error("non-zero padding bits in final byte")]
    NonZeroPadding,
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::InvalidByte { offset, byte })
    }
}

/// Decode one graph6 record. A single trailing `\n` or `\r\n` is tolerated.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if bytes.starts_with(b">>") {
        return Err(Graph6Error::Header);
    }

    let first = check_byte(0, bytes[0])?;
    let (n, body_start) = if first < 63 {
        (first as usize, 1)
    } else {
        // 126 prefix: three 6-bit groups follow. The 8-byte form (126 126)
        // only encodes n > 258047, far above our cap.
        if bytes.len() < 4 {
            return Err(Graph6Error::BadLength);
        }
        if bytes[1] == 126 {
            return Err(Graph6Error::TooManyVertices(258_048));
        }
        let mut n = 0usize;
        for (offset, &b) in bytes.iter().enumerate().take(4).skip(1) {
            n = n << 6 | check_byte(offset, b)? as usize;
        }
        if n <= 62 {
            return Err(Graph6Error::BadLength);
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[body_start..];
    for (i, &b) in body.iter().enumerate() {
        check_byte(body_start + i, b)?;
    }
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage { expected });
    }

    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Encode a graph as a graph6 record (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    // Every byte is in 63..=126.
    String::from_utf8(out).expect("graph6 output is ASCII")
}
