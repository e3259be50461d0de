//! The seven Petersen family graphs: labeled constructions, closure of K6
//! under exchanges, and identification by canonical label.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalLabel};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyName {
    K6,
    K331,
    #[serde(rename = "K44_MINUS_E")]
    K44MinusE,
    P7,
    P8,
    P9,
    P10,
}

impl FamilyName {
    pub const ALL: [FamilyName; 7] = [
        FamilyName::K6,
        FamilyName::P7,
        FamilyName::K331,
        FamilyName::P8,
        FamilyName::K44MinusE,
        FamilyName::P9,
        FamilyName::P10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::K6 => "K6",
            FamilyName::K331 => "K331",
            FamilyName::K44MinusE => "K44_MINUS_E",
            FamilyName::P7 => "P7",
            FamilyName::P8 => "P8",
            FamilyName::P9 => "P9",
            FamilyName::P10 => "P10",
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            FamilyName::K6 => 6,
            FamilyName::K331 | FamilyName::P7 => 7,
            FamilyName::K44MinusE | FamilyName::P8 => 8,
            FamilyName::P9 => 9,
            FamilyName::P10 => 10,
        }
    }

    /// The member with its conventional vertex labels.
    pub fn graph(self) -> Graph {
        labeled_graphs()[&self].clone()
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, ',' | '_' | '-' | '−' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        Ok(match norm.as_str() {
            "K6" => FamilyName::K6,
            "K331" => FamilyName::K331,
            "K44E" | "K44MINUSE" => FamilyName::K44MinusE,
            "P7" => FamilyName::P7,
            "P8" => FamilyName::P8,
            "P9" => FamilyName::P9,
            "P10" | "PETERSEN" => FamilyName::P10,
            _ => return Err(format!("unknown family member `{s}`")),
        })
    }
}

/// One step of an exchange sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Exchange {
    DeltaY {
        triangle: [String; 3],
        new_label: String,
    },
    YDelta {
        center: String,
    },
}

impl Exchange {
    pub fn apply(&self, g: &Graph) -> Result<Graph, crate::graph::GraphError> {
        match self {
            Exchange::DeltaY {
                triangle,
                new_label,
            } => g.delta_y(
                [
                    triangle[0].as_str(),
                    triangle[1].as_str(),
                    triangle[2].as_str(),
                ],
                new_label,
            ),
            Exchange::YDelta { center } => g.y_delta(center),
        }
    }
}

impl fmt::Display for Exchange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exchange::DeltaY {
                triangle,
                new_label,
            } => {
                write!(
                    f,
                    "delta-y({},{},{})->{}",
                    triangle[0], triangle[1], triangle[2], new_label
                )
            }
            Exchange::YDelta { center } => write!(f, "y-delta({center})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub name: FamilyName,
    /// Conventional labeling (see [`FamilyName::graph`]).
    pub graph: Graph,
    /// Exchanges turning K6 on `a..f` into a graph isomorphic to `graph`.
    pub provenance: Vec<Exchange>,
}

fn labeled_graphs() -> &'static BTreeMap<FamilyName, Graph> {
    static CELL: OnceLock<BTreeMap<FamilyName, Graph>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut m = BTreeMap::new();
        let k6 = Graph::complete(["a", "b", "c", "d", "e", "f"]).expect("K6");
        let p7 = Graph::complete(["a", "b", "c", "1", "2", "3"])
            .and_then(|g| g.delta_y(["1", "2", "3"], "y"))
            .expect("P7");
        let k331 = Graph::complete_multipartite(&[&["a", "b", "c"], &["1", "2", "3"], &["v"]])
            .expect("K331");
        let p8 = k331.delta_y(["v", "a", "1"], "y").expect("P8");
        let k44e = {
            let full =
                Graph::complete_multipartite(&[&["a", "b", "c", "d"], &["1", "2", "3", "4"]])
                    .expect("K44");
            let edges: Vec<(&str, &str)> = full.edges().filter(|&e| e != ("4", "a")).collect();
            Graph::new(full.vertices().iter().map(String::as_str), edges).expect("K44-e")
        };
        let p9 = Graph::new(
            ["1", "2", "3", "4", "5", "6", "7", "8", "9"],
            [
                ("1", "2"),
                ("2", "3"),
                ("3", "4"),
                ("4", "5"),
                ("5", "6"),
                ("6", "1"),
                ("6", "7"),
                ("3", "7"),
                ("2", "8"),
                ("5", "8"),
                ("1", "9"),
                ("4", "9"),
                ("7", "8"),
                ("7", "9"),
                ("8", "9"),
            ],
        )
        .expect("P9");
        m.insert(FamilyName::K6, k6);
        m.insert(FamilyName::P7, p7);
        m.insert(FamilyName::K331, k331);
        m.insert(FamilyName::P8, p8);
        m.insert(FamilyName::K44MinusE, k44e);
        m.insert(FamilyName::P9, p9);
        m.insert(FamilyName::P10, p10_labeled());
        m
    })
}

/// Petersen graph labeled with outer 5-cycle (1,2,3,4,5), spokes 1-7,
/// 2-8, 3-9, 4-10, 5-6 and inner 5-cycle (6,9,7,10,8).
pub fn p10_labeled() -> Graph {
    Graph::new(
        ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"],
        [
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("4", "5"),
            ("5", "1"),
            ("1", "7"),
            ("2", "8"),
            ("3", "9"),
            ("4", "10"),
            ("5", "6"),
            ("6", "9"),
            ("9", "7"),
            ("7", "10"),
            ("10", "8"),
            ("8", "6"),
        ],
    )
    .expect("P10")
}

/// Standard Petersen graph: outer cycle o0..o4, spokes oi-ii, inner
/// pentagram ii-i(i+2).
pub fn standard_petersen() -> Graph {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for i in 0..5 {
        labels.push(format!("o{i}"));
        labels.push(format!("i{i}"));
        edges.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
        edges.push((format!("o{i}"), format!("i{i}")));
        edges.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
    }
    Graph::new(labels, edges).expect("Petersen")
}

fn named_labels() -> &'static BTreeMap<CanonicalLabel, FamilyName> {
    static CELL: OnceLock<BTreeMap<CanonicalLabel, FamilyName>> = OnceLock::new();
    CELL.get_or_init(|| {
        labeled_graphs()
            .iter()
            .map(|(&name, g)| (canonical_form(g).expect("small graph"), name))
            .collect()
    })
}

/// The family member isomorphic to `g`, if any.
pub fn identify_family_member(g: &Graph) -> Option<FamilyName> {
    if g.edge_count() != 15 {
        return None;
    }
    let label = canonical_form(g).ok()?;
    named_labels().get(&label).copied()
}

/// Every single exchange applicable to `g`: Δ-Y on each triangle (fresh
/// label `y<n>`) and Y-Δ at each degree-3 vertex with pairwise
/// non-adjacent neighbors.
pub fn applicable_exchanges(g: &Graph) -> Vec<Exchange> {
    let mut out = Vec::new();
    for [i, j, k] in g.triangles() {
        out.push(Exchange::DeltaY {
            triangle: [
                g.label(i).to_string(),
                g.label(j).to_string(),
                g.label(k).to_string(),
            ],
            new_label: g.fresh_label("y"),
        });
    }
    for v in 0..g.vertex_count() {
        let nb = g.neighbors_of(v);
        if nb.len() == 3
            && !g.adjacent_indices(nb[0], nb[1])
            && !g.adjacent_indices(nb[1], nb[2])
            && !g.adjacent_indices(nb[0], nb[2])
        {
            out.push(Exchange::YDelta {
                center: g.label(v).to_string(),
            });
        }
    }
    out
}

/// Closure of K6 under Δ-Y and Y-Δ, one member per isomorphism class,
/// ordered by vertex count and then canonical label.
pub fn generate_petersen_family() -> Vec<FamilyMember> {
    let start = labeled_graphs()[&FamilyName::K6].clone();
    let mut found: BTreeMap<CanonicalLabel, Vec<Exchange>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    found.insert(canonical_form(&start).expect("K6"), Vec::new());
    queue.push_back((start, Vec::new()));
    while let Some((g, path)) = queue.pop_front() {
        for ex in applicable_exchanges(&g) {
            let h = ex.apply(&g).expect("exchange listed as applicable");
            let Ok(label) = canonical_form(&h) else {
                continue;
            };
            if found.contains_key(&label) {
                continue;
            }
            let mut p: Vec<Exchange> = path.clone();
            p.push(ex);
            found.insert(label, p.clone());
            queue.push_back((h, p));
        }
    }
    let mut members: Vec<(usize, CanonicalLabel, FamilyMember)> = found
        .into_iter()
        .map(|(label, provenance)| {
            let name = *named_labels()
                .get(&label)
                .expect("closure class matches a named construction");
            let graph = name.graph();
            (
                graph.vertex_count(),
                label,
                FamilyMember {
                    name,
                    graph,
                    provenance,
                },
            )
        })
        .collect();
    members.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    members.into_iter().map(|(_, _, m)| m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn names_parse() {
        assert_eq!(
            "K4,4-e".parse::<FamilyName>().unwrap(),
            FamilyName::K44MinusE
        );
        assert_eq!(
            "k44_minus_e".parse::<FamilyName>().unwrap(),
            FamilyName::K44MinusE
        );
        assert_eq!("K3,3,1".parse::<FamilyName>().unwrap(), FamilyName::K331);
        assert!("K7".parse::<FamilyName>().is_err());
        for n in FamilyName::ALL {
            assert_eq!(n.as_str().parse::<FamilyName>().unwrap(), n);
        }
    }

    #[test]
    fn constructions_have_expected_sizes() {
        for n in FamilyName::ALL {
            let g = n.graph();
            assert_eq!(g.edge_count(), 15, "{n}");
            assert_eq!(g.vertex_count(), n.vertex_count(), "{n}");
        }
    }

    #[test]
    fn exchanges_between_named_members() {
        let k6 = Graph::complete(["a", "b", "c", "1", "2", "3"]).unwrap();
        let p7 = k6.delta_y(["1", "2", "3"], "y").unwrap();
        assert_eq!(identify_family_member(&p7), Some(FamilyName::P7));
        assert_eq!(
            identify_family_member(&p7.y_delta("y").unwrap()),
            Some(FamilyName::K6)
        );
        let p8 = FamilyName::K331
            .graph()
            .delta_y(["v", "a", "1"], "y")
            .unwrap();
        assert_eq!(identify_family_member(&p8), Some(FamilyName::P8));
        let p10 = FamilyName::P9
            .graph()
            .delta_y(["7", "8", "9"], "10")
            .unwrap();
        assert_eq!(identify_family_member(&p10), Some(FamilyName::P10));
        assert!(are_isomorphic(&p10, &standard_petersen()).unwrap());
        for v in p10.vertices() {
            let p9 = p10.y_delta(v).unwrap();
            assert_eq!((p9.vertex_count(), p9.edge_count()), (9, 15));
            assert_eq!(identify_family_member(&p9), Some(FamilyName::P9));
        }
    }

    #[test]
    fn identify_rejects_non_members() {
        let c5 = Graph::new(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        )
        .unwrap();
        assert_eq!(identify_family_member(&c5), None);
        assert_eq!(
            identify_family_member(&standard_petersen()),
            Some(FamilyName::P10)
        );
    }

    #[test]
    fn closure_has_seven_members() {
        let fam = generate_petersen_family();
        let mut names: Vec<FamilyName> = fam.iter().map(|m| m.name).collect();
        names.sort();
        let mut all = FamilyName::ALL.to_vec();
        all.sort();
        assert_eq!(names, all);
        for m in &fam {
            let mut g = Graph::complete(["a", "b", "c", "d", "e", "f"]).unwrap();
            for ex in &m.provenance {
                g = ex.apply(&g).unwrap();
            }
            assert!(are_isomorphic(&g, &m.graph).unwrap(), "{}", m.name);
        }
    }
}
