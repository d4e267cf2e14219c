//! graph6 codec.
//!
//! The bit vector lists `x(i, j)` for `0 <= i < j < n` in column order
//! (`j` outer, `i` inner), packed big-endian into 6-bit groups offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn push_n(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes a graph whose labels are exactly `0..n`.
pub fn encode(g: &Graph) -> Result<String> {
    let n = g.order();
    if let Some((i, v)) = g.vertices().enumerate().find(|&(i, v)| v as usize != i) {
        return Err(Error::Precondition(format!("graph6 needs labels 0..{n}; position {i} holds {v}")));
    }
    Ok(encode_with_order(g, &g.vertex_vec()))
}

/// Encodes the graph with vertex `order[k]` placed at position `k`.
pub fn encode_with_order(g: &Graph, order: &[Vertex]) -> String {
    let n = order.len();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_n(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(order[i], order[j]) {
                acc |= 1;
            }
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 { offset, message: message.into() }
}

fn sixbits(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(err(offset, format!("byte {b:#04x} outside 63..=126"))),
        None => Err(err(offset, "unexpected end of input")),
    }
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match text.strip_prefix(">>graph6<<") {
        Some(rest) => (rest.as_bytes(), 10),
        None => (text.as_bytes(), 0),
    };
    let mut pos;
    let n = if bytes.first() == Some(&126) {
        if bytes.get(1) == Some(&126) {
            pos = 2;
            let mut n = 0usize;
            for _ in 0..6 {
                n = (n << 6) | sixbits(bytes, pos).map_err(|e| shift(e, base))? as usize;
                pos += 1;
            }
            n
        } else {
            pos = 1;
            let mut n = 0usize;
            for _ in 0..3 {
                n = (n << 6) | sixbits(bytes, pos).map_err(|e| shift(e, base))? as usize;
                pos += 1;
            }
            n
        }
    } else {
        let v = sixbits(bytes, 0).map_err(|e| shift(e, base))?;
        pos = 1;
        v as usize
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != pos + nbytes {
        return Err(err(
            base + bytes.len().min(pos + nbytes),
            format!("expected {} bytes for {n} vertices, found {}", pos + nbytes, bytes.len()),
        ));
    }
    let mut g = Graph::empty_on(0..n as Vertex);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = pos + k / 6;
            let val = sixbits(bytes, byte).map_err(|e| shift(e, base))?;
            if (val >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i as Vertex, j as Vertex);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = pos + nbytes - 1;
        let val = sixbits(bytes, last).map_err(|e| shift(e, base))?;
        let pad = 6 - nbits % 6;
        if val & ((1 << pad) - 1) != 0 {
            return Err(err(base + last, "non-zero padding bits"));
        }
    }
    Ok(g)
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Graph6 { offset, message } => Error::Graph6 { offset: offset + base, message },
        other => other,
    }
}

/// Decodes every non-empty line.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode).collect()
}

/// Relabels vertices to `0..n` in ascending label order, returning the
/// graph and the list mapping new position to old label.
pub fn normalize(g: &Graph) -> (Graph, Vec<Vertex>) {
    let order = g.vertex_vec();
    let map = order.iter().enumerate().map(|(i, &v)| (v, i as Vertex)).collect();
    (g.relabel(&map), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Reference encoder written directly from the format description:
    /// build the bit string, pad with zeros, then chunk.
    fn reference_encode(n: usize, edges: &[(usize, usize)]) -> String {
        let mut bitstr = String::new();
        for j in 1..n {
            for i in 0..j {
                let e = edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i));
                bitstr.push(if e { '1' } else { '0' });
            }
        }
        while !bitstr.len().is_multiple_of(6) {
            bitstr.push('0');
        }
        let mut out = String::new();
        out.push((n as u8 + 63) as char);
        for chunk in bitstr.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            out.push((v + 63) as char);
        }
        out
    }

    #[test]
    fn known_strings() {
        assert_eq!(reference_encode(2, &[(0, 1)]), "A_");
        assert_eq!(reference_encode(1, &[]), "@");
        let k2 = decode("A_").unwrap();
        assert_eq!(k2, families::complete(2));
        let k1 = decode("@").unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(k1.size(), 0);
        assert_eq!(encode(&families::complete(2)).unwrap(), "A_");
        assert_eq!(decode("?").unwrap().order(), 0);
    }

    #[test]
    fn matches_reference_on_all_small_graphs() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let g =
                    Graph::from_edges(n, &edges.iter().map(|&(a, b)| (a as Vertex, b as Vertex)).collect::<Vec<_>>());
                let s = encode(&g).unwrap();
                assert_eq!(s, reference_encode(n, &edges));
                assert_eq!(decode(&s).unwrap(), g);
                assert_eq!(encode(&decode(&s).unwrap()).unwrap(), s);
            }
        }
    }

    #[test]
    fn large_order_header() {
        let g = families::path(70);
        let s = encode(&g).unwrap();
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn decode_errors_carry_offsets() {
        // K2 needs exactly one data byte.
        match decode("A") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        // "A" + 0b000001: padding bit set.
        match decode("A@") {
            Err(Error::Graph6 { offset, message }) => {
                assert_eq!(offset, 1);
                assert!(message.contains("padding"));
            }
            other => panic!("{other:?}"),
        }
        match decode("B\u{7f}") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn encode_requires_contiguous_labels() {
        let g = Graph::from_parts([0, 2], [(0, 2)]);
        assert!(encode(&g).is_err());
        let (h, order) = normalize(&g);
        assert_eq!(order, vec![0, 2]);
        assert_eq!(encode(&h).unwrap(), "A_");
    }
}
