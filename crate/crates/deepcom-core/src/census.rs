//! A fixed roster of small groups used for surveys and cross-checks.
//!
//! Entries are described by spec-language strings (see [`crate::speclang`]);
//! the order-64 member is the built-in `sg64_182` fixture, the smallest
//! order where the Bogomolov multiplier can be nontrivial.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::speclang::{parse_spec, realize};
use crate::HARD_ORDER_CAP;
use alloc::format;

/// One census member: a display name, the spec that builds it, its order.
pub struct CensusEntry {
    pub name: &'static str,
    pub spec: &'static str,
    pub order: usize,
}

/// The census, ordered by group order, names unique.
pub const CENSUS: &[CensusEntry] = &[
    CensusEntry { name: "C1", spec: "C1", order: 1 },
    CensusEntry { name: "C2", spec: "C2", order: 2 },
    CensusEntry { name: "C3", spec: "C3", order: 3 },
    CensusEntry { name: "C4", spec: "C4", order: 4 },
    CensusEntry { name: "C2xC2", spec: "C2xC2", order: 4 },
    CensusEntry { name: "C5", spec: "C5", order: 5 },
    CensusEntry { name: "C6", spec: "C6", order: 6 },
    CensusEntry { name: "S3", spec: "S3", order: 6 },
    CensusEntry { name: "C7", spec: "C7", order: 7 },
    CensusEntry { name: "C8", spec: "C8", order: 8 },
    CensusEntry { name: "C2xC4", spec: "C2xC4", order: 8 },
    CensusEntry { name: "C2xC2xC2", spec: "C2xC2xC2", order: 8 },
    CensusEntry { name: "D8", spec: "D8", order: 8 },
    CensusEntry { name: "Q8", spec: "Q8", order: 8 },
    CensusEntry { name: "C9", spec: "C9", order: 9 },
    CensusEntry { name: "C3xC3", spec: "C3xC3", order: 9 },
    CensusEntry { name: "C10", spec: "C10", order: 10 },
    CensusEntry { name: "C11", spec: "C11", order: 11 },
    CensusEntry { name: "C12", spec: "C12", order: 12 },
    CensusEntry { name: "A4", spec: "A4", order: 12 },
    CensusEntry { name: "D12", spec: "D12", order: 12 },
    CensusEntry { name: "C16", spec: "C16", order: 16 },
    CensusEntry { name: "C2xC8", spec: "C2xC8", order: 16 },
    CensusEntry { name: "C4xC4", spec: "C4xC4", order: 16 },
    CensusEntry { name: "C2xC2xC4", spec: "C2xC2xC4", order: 16 },
    CensusEntry { name: "D16", spec: "D16", order: 16 },
    CensusEntry { name: "Q16", spec: "Q16", order: 16 },
    CensusEntry { name: "SD16", spec: "SD16", order: 16 },
    CensusEntry { name: "S4", spec: "S4", order: 24 },
    CensusEntry { name: "C5xC5", spec: "C5xC5", order: 25 },
    CensusEntry { name: "C3xC9", spec: "C3xC9", order: 27 },
    CensusEntry { name: "A5", spec: "A5", order: 60 },
    CensusEntry { name: "sg64_182", spec: "sg64_182", order: 64 },
];

/// Looks an entry up by name.
pub fn census_entry(name: &str) -> Option<&'static CensusEntry> {
    CENSUS.iter().find(|e| e.name == name)
}

/// Builds a census member and stamps it with the census name.
pub fn census_group(entry: &CensusEntry) -> Result<Group> {
    let spec = parse_spec(entry.spec)?;
    let mut g = realize(&spec, HARD_ORDER_CAP, &mut |path| {
        Err(Error::File(format!(
            "census entries are self-contained, cannot load {path}"
        )))
    })?;
    g.set_name(entry.name);
    if g.order() != entry.order {
        return Err(Error::InternalVerificationFailure(format!(
            "census entry {} built with order {}, expected {}",
            entry.name,
            g.order(),
            entry.order
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelianization;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    #[test]
    fn every_entry_builds_with_its_declared_order_and_name() {
        let mut names = BTreeSet::new();
        let mut prev_order = 0;
        for entry in CENSUS {
            let g = census_group(entry).unwrap();
            assert_eq!(g.order(), entry.order, "{}", entry.name);
            assert_eq!(g.name(), entry.name);
            assert!(names.insert(entry.name), "duplicate name {}", entry.name);
            assert!(entry.order >= prev_order, "census must be sorted by order");
            prev_order = entry.order;
        }
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(census_entry("D8").unwrap().order, 8);
        assert_eq!(census_entry("sg64_182").unwrap().order, 64);
        assert!(census_entry("M11").is_none());
    }

    #[test]
    fn abelian_entries_have_the_right_shape() {
        let g = census_group(census_entry("C3xC9").unwrap()).unwrap();
        assert!(g.is_abelian());
        assert_eq!(abelianization(&g).0, vec![3, 9]);
        let g = census_group(census_entry("C2xC2xC4").unwrap()).unwrap();
        assert_eq!(abelianization(&g).0, vec![2, 2, 4]);
    }
}
