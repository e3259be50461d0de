use std::collections::BTreeMap;

use crate::cycle::{enumerate_cycles, Cycle};
use crate::family::standard_petersen;
use crate::graph::Graph;
use crate::sphere::{is_combinatorial_sphere, CycleSystem};

/// Map from a standard Petersen label (`o0..o4`, `i0..i4`) to one of the
/// labels `"1".."10"`.
pub type Labeling = BTreeMap<String, String>;

const PENTAGON: [&str; 5] = ["1", "2", "3", "4", "5"];

const REQUIRED_EDGES: [(&str, &str); 12] = [
    ("1", "2"),
    ("2", "3"),
    ("3", "4"),
    ("4", "5"),
    ("5", "1"),
    ("5", "6"),
    ("7", "10"),
    ("7", "9"),
    ("8", "10"),
    ("8", "6"),
    ("4", "10"),
    ("8", "2"),
];

/// Vertex sets of the three subgraphs whose induced cycles panel the P10
/// spheres: the pentagon plus {6,9}, {7,10} and {6,8}.
pub fn p10_system_sets() -> [Vec<String>; 3] {
    let with = |extra: [&str; 2]| -> Vec<String> {
        PENTAGON
            .iter()
            .chain(extra.iter())
            .map(|s| s.to_string())
            .collect()
    };
    [with(["6", "9"]), with(["7", "10"]), with(["6", "8"])]
}

/// Induced cycles of `g[set]` form a sphere with the pentagon as a face.
fn panels_with_pentagon(g: &Graph, set: &[String]) -> bool {
    let Ok(h) = g.induced_subgraph(set) else {
        return false;
    };
    let faces = enumerate_cycles(&h, None, true);
    let pentagon = Cycle::new(PENTAGON).expect("pentagon");
    faces.contains(&pentagon) && is_combinatorial_sphere(&CycleSystem::new(faces)).is_sphere
}

/// All bijections from [`standard_petersen`] onto `"1".."10"` under which
/// the required adjacencies hold and each of [`p10_system_sets`] panels
/// into a sphere containing the pentagon.
pub fn solve_p10_labeling() -> Vec<Labeling> {
    let std = standard_petersen();
    let targets: Vec<String> = (1..=10).map(|i| i.to_string()).collect();
    let mut assigned: Vec<usize> = Vec::with_capacity(10);
    let mut used = [false; 10];
    let mut out = Vec::new();
    solve(&std, &targets, &mut assigned, &mut used, &mut out);
    out
}

fn solve(
    std: &Graph,
    targets: &[String],
    assigned: &mut Vec<usize>,
    used: &mut [bool; 10],
    out: &mut Vec<Labeling>,
) {
    let k = assigned.len();
    if k == targets.len() {
        let labeling: Labeling = assigned
            .iter()
            .zip(targets)
            .map(|(&s, t)| (std.label(s).to_string(), t.clone()))
            .collect();
        let g = std.relabel(|v| labeling[v].clone()).expect("bijection");
        if p10_system_sets()
            .iter()
            .all(|set| panels_with_pentagon(&g, set))
        {
            out.push(labeling);
        }
        return;
    }
    let t = targets[k].as_str();
    for s in 0..std.vertex_count() {
        if used[s] {
            continue;
        }
        let consistent = REQUIRED_EDGES.iter().all(|&(a, b)| {
            let other = if a == t {
                b
            } else if b == t {
                a
            } else {
                return true;
            };
            match targets[..k].iter().position(|x| x == other) {
                Some(j) => std.adjacent_indices(s, assigned[j]),
                None => true,
            }
        });
        if !consistent {
            continue;
        }
        used[s] = true;
        assigned.push(s);
        solve(std, targets, assigned, used, out);
        assigned.pop();
        used[s] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::p10_labeled;

    #[test]
    fn every_labeling_gives_the_same_graph() {
        let sols = solve_p10_labeling();
        assert_eq!(sols.len(), 120);
        let std = standard_petersen();
        for l in &sols {
            let g = std.relabel(|v| l[v].clone()).unwrap();
            assert_eq!(g, p10_labeled());
        }
    }

    #[test]
    fn cycle_through_ten_and_eight() {
        let c = Cycle::new(["2", "3", "4", "10", "8"]).unwrap();
        assert!(c.validate_in(&p10_labeled()).is_ok());
    }
}
