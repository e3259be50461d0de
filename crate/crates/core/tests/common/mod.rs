#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::PI;

use bohme_core::cycle::Cycle;
use bohme_core::graph::Graph;
use proptest::prelude::*;

pub type P = [f64; 3];

fn sub(a: P, b: P) -> P {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: P, b: P) -> P {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: P, b: P) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: P) -> P {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

pub fn to_f64(pts: &[[i64; 3]]) -> Vec<P> {
    pts.iter()
        .map(|p| [p[0] as f64, p[1] as f64, p[2] as f64])
        .collect()
}

/// Gauss linking integral of two closed polygons, summed exactly per
/// segment pair as a signed solid angle.
pub fn gauss_linking(a: &[P], b: &[P]) -> f64 {
    let mut total = 0.0;
    for i in 0..a.len() {
        let (p1, p2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (p3, p4) = (b[j], b[(j + 1) % b.len()]);
            let r13 = sub(p3, p1);
            let r14 = sub(p4, p1);
            let r23 = sub(p3, p2);
            let r24 = sub(p4, p2);
            let n = [
                unit(cross(r13, r14)),
                unit(cross(r14, r24)),
                unit(cross(r24, r23)),
                unit(cross(r23, r13)),
            ];
            let omega: f64 = (0..4)
                .map(|k| dot(n[k], n[(k + 1) % 4]).clamp(-1.0, 1.0).asin())
                .sum();
            let s = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
            total += omega * s.signum();
        }
    }
    total / (4.0 * PI)
}

/// Midpoint-rule estimate of the Gauss double integral, used to pin the
/// sign convention of [`gauss_linking`].
pub fn gauss_quadrature(a: &[P], b: &[P], steps: usize) -> f64 {
    let sample = |poly: &[P]| -> Vec<(P, P)> {
        let mut out = Vec::new();
        for i in 0..poly.len() {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            let d = sub(q, p);
            let h = 1.0 / steps as f64;
            for k in 0..steps {
                let t = (k as f64 + 0.5) * h;
                out.push((
                    [p[0] + t * d[0], p[1] + t * d[1], p[2] + t * d[2]],
                    [d[0] * h, d[1] * h, d[2] * h],
                ));
            }
        }
        out
    };
    let (sa, sb) = (sample(a), sample(b));
    let mut total = 0.0;
    for &(r1, d1) in &sa {
        for &(r2, d2) in &sb {
            let r = sub(r1, r2);
            let len = dot(r, r).sqrt();
            total += dot(r, cross(d1, d2)) / (len * len * len);
        }
    }
    total / (4.0 * PI)
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every simple cycle by trying each vertex subset in each cyclic order.
pub fn brute_force_cycles(
    g: &Graph,
    max_len: Option<usize>,
    induced_only: bool,
) -> BTreeSet<Cycle> {
    let n = g.vertex_count();
    let cap = max_len.unwrap_or(n);
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = subset.len();
        if k < 3 || k > cap {
            continue;
        }
        if induced_only {
            let inner = g
                .edge_indices()
                .iter()
                .filter(|(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
                .count();
            if inner != k {
                continue;
            }
        }
        for perm in permutations(&subset[1..]) {
            let mut order = vec![subset[0]];
            order.extend(perm);
            if (0..k).all(|i| g.adjacent_indices(order[i], order[(i + 1) % k])) {
                out.insert(Cycle::new(order.iter().map(|&i| g.label(i).to_string())).unwrap());
            }
        }
    }
    out
}

/// Isomorphism by trying every bijection.
pub fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let idx: Vec<usize> = (0..n).collect();
    permutations(&idx).into_iter().any(|p| {
        a.edge_indices()
            .iter()
            .all(|&(i, j)| b.adjacent_indices(p[i], p[j]))
    })
}

pub fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask[k] {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
            k += 1;
        }
    }
    Graph::new(labels.clone(), edges).unwrap()
}

/// Random simple graph on `lo..=hi` vertices labeled `v0, v1, ...`.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

/// A permutation of `0..n` as a shuffle strategy.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}
