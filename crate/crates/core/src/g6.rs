//! graph6 and digraph6 text codecs.
//!
//! graph6 packs the upper triangle of the adjacency matrix in column order
//! (0,1), (0,2), (1,2), (0,3), ... into 6-bit groups offset by 63. digraph6
//! is the same packing of the full n x n matrix in row-major order, prefixed
//! with '&'. Only single-byte vertex counts (n <= 62) are handled, which is
//! far beyond the sizes this crate supports anyway.

use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, MAX_VERTICES};

const FORMAT_G6: &str = "graph6";
const FORMAT_D6: &str = "digraph6";

/// Encodes by kind: graph6 for undirected graphs, digraph6 for digraphs.
pub fn encode(g: &Graph) -> String {
    match g.kind() {
        Kind::Undirected => encode_graph6(g).expect("kind checked"),
        Kind::Directed => encode_digraph6(g).expect("kind checked"),
    }
}

/// Decodes either format, dispatching on the '&' prefix.
pub fn decode(s: &str) -> Result<Graph> {
    if s.starts_with('&') {
        decode_digraph6(s)
    } else {
        decode_graph6(s)
    }
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    if g.kind() != Kind::Undirected {
        return Err(Error::KindMismatch {
            expected: Kind::Undirected,
            got: g.kind(),
        });
    }
    let n = g.n();
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_arc(i, j));
        }
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    pack_bits(&bits, &mut out);
    Ok(out)
}

pub fn encode_digraph6(g: &Graph) -> Result<String> {
    if g.kind() != Kind::Directed {
        return Err(Error::KindMismatch {
            expected: Kind::Directed,
            got: g.kind(),
        });
    }
    let n = g.n();
    let mut bits = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            bits.push(g.has_arc(i, j));
        }
    }
    let mut out = String::from("&");
    out.push((n as u8 + 63) as char);
    pack_bits(&bits, &mut out);
    Ok(out)
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let (n, payload) = split_header(bytes, FORMAT_G6)?;
    let nbits = n * (n.max(1) - 1) / 2;
    let bits = unpack_bits(payload, nbits, FORMAT_G6)?;
    let mut g = Graph::empty(Kind::Undirected, n)?;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                g.add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    Ok(g)
}

pub fn decode_digraph6(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(Error::InvalidFormat {
            format: FORMAT_D6,
            reason: "missing '&' prefix".into(),
        });
    }
    let (n, payload) = split_header(&bytes[1..], FORMAT_D6)?;
    let bits = unpack_bits(payload, n * n, FORMAT_D6)?;
    let mut g = Graph::empty(Kind::Directed, n)?;
    let mut idx = 0;
    for i in 0..n {
        for j in 0..n {
            if bits[idx] {
                if i == j {
                    return Err(Error::InvalidFormat {
                        format: FORMAT_D6,
                        reason: format!("loop bit set at vertex {i}"),
                    });
                }
                g.add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    Ok(g)
}

fn pack_bits(bits: &[bool], out: &mut String) {
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (pos, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - pos);
            }
        }
        out.push((v + 63) as char);
    }
}

fn split_header<'a>(bytes: &'a [u8], format: &'static str) -> Result<(usize, &'a [u8])> {
    let &first = bytes.first().ok_or(Error::InvalidFormat {
        format,
        reason: "empty input".into(),
    })?;
    if first == 126 {
        return Err(Error::InvalidFormat {
            format,
            reason: "multi-byte vertex counts are not supported".into(),
        });
    }
    if !(63..=125).contains(&first) {
        return Err(Error::InvalidFormat {
            format,
            reason: format!("invalid vertex count byte {first}"),
        });
    }
    let n = (first - 63) as usize;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    Ok((n, &bytes[1..]))
}

fn unpack_bits(payload: &[u8], nbits: usize, format: &'static str) -> Result<Vec<bool>> {
    let expect = nbits.div_ceil(6);
    if payload.len() != expect {
        return Err(Error::InvalidFormat {
            format,
            reason: format!(
                "payload is {} bytes, expected {expect} for this vertex count",
                payload.len()
            ),
        });
    }
    let mut bits = Vec::with_capacity(expect * 6);
    for &b in payload {
        if !(63..=126).contains(&b) {
            return Err(Error::InvalidFormat {
                format,
                reason: format!("invalid payload byte {b}"),
            });
        }
        let v = b - 63;
        for pos in 0..6 {
            bits.push(v >> (5 - pos) & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::InvalidFormat {
            format,
            reason: "nonzero padding bits".into(),
        });
    }
    bits.truncate(nbits);
    Ok(bits)
}
