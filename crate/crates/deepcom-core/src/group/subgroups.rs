//! Subgroup enumeration up to conjugacy, for groups of order at most 64 so
//! subgroups fit in u64 bitmasks.

use super::{element_order, Group};
use crate::error::{Error, Result};
use crate::SUBGROUP_ENUM_CAP;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Elements of the class representative (the conjugate with the
    /// smallest bitmask), ascending.
    pub representative: Vec<usize>,
    pub order: usize,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    /// Number of conjugate subgroups in this class; 1 means normal.
    pub class_size: usize,
}

impl SubgroupClass {
    pub fn is_normal(&self) -> bool {
        self.class_size == 1
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupClassReport {
    /// Classes sorted by (order, representative mask).
    pub classes: Vec<SubgroupClass>,
    pub total_subgroups: usize,
}

impl SubgroupClassReport {
    pub fn noncyclic_abelian_classes(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| c.is_abelian && !c.is_cyclic)
            .count()
    }
}

fn closure_mask(g: &Group, seed: u64) -> u64 {
    let n = g.order();
    let mut mask = seed | 1;
    let mut frontier = mask;
    while frontier != 0 {
        let mut new = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            let mut m = mask;
            while m != 0 {
                let y = m.trailing_zeros() as usize;
                m &= m - 1;
                new |= 1u64 << g.mul(x, y);
                new |= 1u64 << g.mul(y, x);
            }
        }
        debug_assert!(n <= 64);
        frontier = new & !mask;
        mask |= new;
    }
    mask
}

fn conjugate_mask(g: &Group, h: usize, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let x = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1u64 << g.conj(h, x);
    }
    out
}

/// Enumerates every subgroup by closing cyclic seeds under single-element
/// extensions, then groups them into conjugacy classes.
pub fn subgroups_up_to_conjugacy(g: &Group) -> Result<SubgroupClassReport> {
    let n = g.order();
    if n > SUBGROUP_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration order",
            limit: SUBGROUP_ENUM_CAP,
            requested: n,
        });
    }
    let mut known: BTreeSet<u64> = BTreeSet::new();
    let mut layer: Vec<u64> = Vec::new();
    for x in 0..n {
        let m = closure_mask(g, 1u64 << x);
        if known.insert(m) {
            layer.push(m);
        }
    }
    while !layer.is_empty() {
        let mut next: Vec<u64> = Vec::new();
        for &s in &layer {
            for x in 0..n {
                if s & (1u64 << x) != 0 {
                    continue;
                }
                let m = closure_mask(g, s | (1u64 << x));
                if known.insert(m) {
                    next.push(m);
                }
            }
        }
        layer = next;
    }
    let total_subgroups = known.len();
    // Conjugation orbits; BTreeSet iteration makes representatives the
    // minimal masks automatically.
    let mut assigned: BTreeSet<u64> = BTreeSet::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for &mask in &known {
        if assigned.contains(&mask) {
            continue;
        }
        let mut orbit: BTreeSet<u64> = BTreeSet::new();
        for h in 0..n {
            orbit.insert(conjugate_mask(g, h, mask));
        }
        debug_assert!(orbit.iter().all(|m| known.contains(m)));
        assigned.extend(orbit.iter().copied());
        let elems: Vec<usize> = (0..n).filter(|&x| mask & (1u64 << x) != 0).collect();
        let order = elems.len();
        let is_abelian = elems
            .iter()
            .all(|&a| elems.iter().all(|&b| g.commutes(a, b)));
        let is_cyclic = elems.iter().any(|&x| element_order(g, x) == order);
        classes.push(SubgroupClass {
            representative: elems,
            order,
            is_abelian,
            is_cyclic,
            class_size: orbit.len(),
        });
    }
    classes.sort_by_key(|c| (c.order, c.representative.clone()));
    Ok(SubgroupClassReport {
        classes,
        total_subgroups,
    })
}
