//! Canonical labeling for small graphs.
//!
//! Colour refinement on an ordered partition, then individualization of
//! each vertex of the first non-singleton cell, recursively. Every leaf is
//! a discrete ordering; the canonical label is the smallest adjacency
//! encoding over all leaves. The refinement only looks at cell indices and
//! adjacency, so the set of leaf encodings is relabeling-invariant.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

pub const MAX_CANON_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical form supports at most {MAX_CANON_VERTICES} vertices, got {0}")]
pub struct CanonError(pub usize);

/// Byte encoding of a graph's isomorphism class: vertex count, then the
/// upper triangle of the adjacency matrix under the canonical ordering.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalLabel, CanonError> {
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(CanonError(n));
    }
    let mut adj = [0u16; MAX_CANON_VERTICES];
    for &(i, j) in g.edge_indices() {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let ctx = Ctx { n, adj: &adj[..n] };
    let root = ctx.refine(vec![(0..n).collect()]);
    let mut best: Option<Vec<u8>> = None;
    ctx.search(root, &mut best);
    let mut bytes = vec![n as u8];
    bytes.extend(best.unwrap_or_default());
    Ok(CanonicalLabel(bytes))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

type Partition = Vec<Vec<usize>>;

struct Ctx<'a> {
    n: usize,
    adj: &'a [u16],
}

impl Ctx<'_> {
    fn refine(&self, mut cells: Partition) -> Partition {
        loop {
            let mut cell_of = vec![0usize; self.n];
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci;
                }
            }
            let k = cells.len();
            let mut next: Partition = Vec::with_capacity(k);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u8; k];
                        let mut bits = self.adj[v];
                        while bits != 0 {
                            let w = bits.trailing_zeros() as usize;
                            sig[cell_of[w]] += 1;
                            bits &= bits - 1;
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let mut bytes = Vec::with_capacity(self.n * self.n / 16 + 1);
        let mut acc = 0u8;
        let mut nbits = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let bit = (self.adj[order[i]] >> order[j]) & 1;
                acc = (acc << 1) | bit as u8;
                nbits += 1;
                if nbits == 8 {
                    bytes.push(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            bytes.push(acc << (8 - nbits));
        }
        bytes
    }

    fn search(&self, cells: Partition, best: &mut Option<Vec<u8>>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = self.encode(&order);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        };
        for &v in &cells[target] {
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.search(self.refine(child), best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()))
            .collect();
        Graph::new(labels.clone(), edges).unwrap()
    }

    #[test]
    fn relabeled_k6_has_equal_label() {
        let a = Graph::complete(["a", "b", "c", "d", "e", "f"]).unwrap();
        let b = Graph::complete(["6", "1", "5", "2", "4", "3"]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn k33_and_k222_differ() {
        let k33 = Graph::complete_multipartite(&[&["a", "b", "c"], &["x", "y", "z"]]).unwrap();
        let k222 = Graph::complete_multipartite(&[&["a", "b"], &["c", "d"], &["e", "f"]]).unwrap();
        assert_ne!(
            canonical_form(&k33).unwrap(),
            canonical_form(&k222).unwrap()
        );
    }

    #[test]
    fn c6_vs_two_triangles() {
        let two = Graph::new(
            ["a", "b", "c", "d", "e", "f"],
            [
                ("a", "b"),
                ("b", "c"),
                ("a", "c"),
                ("d", "e"),
                ("e", "f"),
                ("d", "f"),
            ],
        )
        .unwrap();
        assert!(!are_isomorphic(&cycle(6), &two).unwrap());
    }

    #[test]
    fn size_limit() {
        assert_eq!(canonical_form(&cycle(17)), Err(CanonError(17)));
        assert!(canonical_form(&cycle(16)).is_ok());
    }

    #[test]
    fn empty_graph() {
        assert_eq!(canonical_form(&Graph::empty()).unwrap().as_bytes(), &[0]);
    }
}
