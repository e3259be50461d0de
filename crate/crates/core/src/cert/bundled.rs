use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::Certificate;
use crate::family::FamilyName;

const K6: &str = include_str!("../../data/certificates/k6.json");
const P7: &str = include_str!("../../data/certificates/p7.json");
const K331: &str = include_str!("../../data/certificates/k331.json");
const P8: &str = include_str!("../../data/certificates/p8.json");
const K44E: &str = include_str!("../../data/certificates/k44e.json");
const P9: &str = include_str!("../../data/certificates/p9.json");
const P10: &str = include_str!("../../data/certificates/p10.json");
const P10_Y_CONNECTOR: &str = include_str!("../../data/certificates/p10_y_connector.json");

fn parse(name: &str, src: &str) -> Certificate {
    Certificate::from_json_str(src).unwrap_or_else(|e| panic!("bundled certificate {name}: {e}"))
}

/// One certificate per family member, labeled like [`FamilyName::graph`].
pub fn bundled_certificates() -> &'static BTreeMap<FamilyName, Certificate> {
    static CELL: OnceLock<BTreeMap<FamilyName, Certificate>> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            (FamilyName::K6, K6),
            (FamilyName::P7, P7),
            (FamilyName::K331, K331),
            (FamilyName::P8, P8),
            (FamilyName::K44MinusE, K44E),
            (FamilyName::P9, P9),
            (FamilyName::P10, P10),
        ]
        .into_iter()
        .map(|(n, src)| (n, parse(n.as_str(), src)))
        .collect()
    })
}

pub fn bundled_certificate(name: FamilyName) -> &'static Certificate {
    &bundled_certificates()[&name]
}

/// Additional certificates shipped alongside the per-member ones, keyed
/// by file stem. `p10_y_connector` is a `Y_CONNECTOR` certificate for P10
/// on a 6-cycle base.
pub fn supplementary_certificates() -> &'static BTreeMap<&'static str, Certificate> {
    static CELL: OnceLock<BTreeMap<&'static str, Certificate>> = OnceLock::new();
    CELL.get_or_init(|| {
        [("p10_y_connector", P10_Y_CONNECTOR)]
            .into_iter()
            .map(|(n, src)| (n, parse(n, src)))
            .collect()
    })
}
