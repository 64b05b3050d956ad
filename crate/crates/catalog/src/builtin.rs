//! The ten shipped cases, compiled into the binary.

const CASES: &[(&str, &str)] = &[
    ("A-1", include_str!("../cases/A-1.json")),
    ("A-2", include_str!("../cases/A-2.json")),
    ("B-i-1", include_str!("../cases/B-i-1.json")),
    ("B-i-2", include_str!("../cases/B-i-2.json")),
    ("B-i-3", include_str!("../cases/B-i-3.json")),
    ("B-ii", include_str!("../cases/B-ii.json")),
    ("B-iii-1", include_str!("../cases/B-iii-1.json")),
    ("B-iii-2", include_str!("../cases/B-iii-2.json")),
    ("B-iii-3", include_str!("../cases/B-iii-3.json")),
    ("B-iii-4", include_str!("../cases/B-iii-4.json")),
];

/// Builtin ids in table order.
pub fn ids() -> impl Iterator<Item = &'static str> {
    CASES.iter().map(|(id, _)| *id)
}

pub fn source(id: &str) -> Option<&'static str> {
    CASES.iter().find(|(k, _)| *k == id).map(|(_, text)| *text)
}

/// Position in table order, for merging reports.
pub fn rank(id: &str) -> usize {
    CASES.iter().position(|(k, _)| *k == id).unwrap_or(CASES.len())
}
