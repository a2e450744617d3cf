//! Isomorphism and automorphism search by backtracking over generator
//! images, with incremental closure to prune inconsistent branches early.

use super::{conjugacy_classes, element_order, subgroup_generated, Group};
use crate::error::{Error, Result};
use crate::AUTOMORPHISM_CAP;
use alloc::vec;
use alloc::vec::Vec;

/// Found isomorphisms beyond this bound abort enumeration; it exists to
/// bound memory on highly symmetric inputs like elementary abelian groups.
const ISO_COUNT_CAP: usize = 65_536;

const UNSET: u16 = u16::MAX;

/// Small generating set, built greedily by largest closure extension.
fn greedy_generators(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut closure_size = 1usize;
    let mut in_closure = vec![false; n];
    in_closure[0] = true;
    while closure_size < n {
        let mut best: Option<(usize, usize)> = None;
        for x in 1..n {
            if in_closure[x] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = subgroup_generated(g, &trial).len();
            if best.map_or(true, |(bs, _)| size > bs) {
                best = Some((size, x));
            }
        }
        let (size, x) = best.expect("proper subgroup has elements outside it");
        gens.push(x);
        closure_size = size;
        for y in subgroup_generated(g, &gens) {
            in_closure[y] = true;
        }
    }
    gens
}

struct SearchState<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<usize>,
    /// candidate images per generator, ascending
    candidates: Vec<Vec<usize>>,
    map: Vec<u16>,
    used: Vec<bool>,
    /// assigned domain elements in discovery order
    elems: Vec<usize>,
}

impl SearchState<'_> {
    /// Assigns `img` to generator `gens[depth]` and closes the partial map
    /// under right multiplication by all assigned generators, checking
    /// homomorphism consistency and injectivity as it goes. Returns the
    /// undo list, or None on contradiction (after undoing).
    fn extend(&mut self, depth: usize, img: usize) -> Option<Vec<usize>> {
        let mut undo: Vec<usize> = Vec::new();
        let gen = self.gens[depth];
        debug_assert_eq!(self.map[gen], UNSET);
        if self.used[img] {
            return None;
        }
        self.map[gen] = img as u16;
        self.used[img] = true;
        self.elems.push(gen);
        undo.push(gen);
        let mut idx = 0;
        while idx < self.elems.len() {
            let x = self.elems[idx];
            idx += 1;
            let fx = self.map[x] as usize;
            for gi in 0..=depth {
                let s = self.gens[gi];
                let y = self.g.mul(x, s);
                let fy = self.h.mul(fx, self.map[s] as usize);
                if self.map[y] == UNSET {
                    if self.used[fy] {
                        self.rollback(&undo);
                        return None;
                    }
                    self.map[y] = fy as u16;
                    self.used[fy] = true;
                    self.elems.push(y);
                    undo.push(y);
                } else if self.map[y] as usize != fy {
                    self.rollback(&undo);
                    return None;
                }
            }
        }
        Some(undo)
    }

    fn rollback(&mut self, undo: &[usize]) {
        for &x in undo {
            self.used[self.map[x] as usize] = false;
            self.map[x] = UNSET;
        }
        self.elems.truncate(self.elems.len() - undo.len());
    }

    /// Full defense check on a completed assignment.
    fn is_isomorphism(&self) -> bool {
        let n = self.g.order();
        let mut seen = vec![false; n];
        for x in 0..n {
            let fx = self.map[x] as usize;
            if seen[fx] {
                return false;
            }
            seen[fx] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if self.map[self.g.mul(x, y)] as usize
                    != self.h.mul(self.map[x] as usize, self.map[y] as usize)
                {
                    return false;
                }
            }
        }
        true
    }

    fn search<F: FnMut(&[u16]) -> bool>(&mut self, depth: usize, visit: &mut F) -> bool {
        if depth == self.gens.len() {
            debug_assert_eq!(self.elems.len(), self.g.order());
            return !self.is_isomorphism() || visit(&self.map);
        }
        for ci in 0..self.candidates[depth].len() {
            let img = self.candidates[depth][ci];
            if let Some(undo) = self.extend(depth, img) {
                let keep_going = self.search(depth + 1, visit);
                self.rollback(&undo);
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `visit` with each isomorphism g -> h (as an image table) until it
/// returns false. Both groups must have equal order; the caller checks caps.
pub(crate) fn enumerate_isomorphisms<F: FnMut(&[u16]) -> bool>(
    g: &Group,
    h: &Group,
    visit: &mut F,
) {
    let n = g.order();
    assert_eq!(n, h.order(), "isomorphism search needs equal orders");
    if n == 1 {
        visit(&[0]);
        return;
    }
    let gens = greedy_generators(g);
    // (order, conjugacy class size) fingerprint per element on both sides.
    let inv_of = |gr: &Group| -> Vec<(usize, usize)> {
        let mut inv = vec![(0usize, 0usize); n];
        for class in conjugacy_classes(gr) {
            for &x in &class {
                inv[x] = (element_order(gr, x), class.len());
            }
        }
        inv
    };
    let ginv = inv_of(g);
    let hinv = inv_of(h);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&a| (0..n).filter(|&b| hinv[b] == ginv[a]).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut map = vec![UNSET; n];
    map[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    let mut state = SearchState {
        g,
        h,
        gens,
        candidates,
        map,
        used,
        elems: vec![0],
    };
    state.search(0, visit);
}

fn order_cap_check(n: usize) -> Result<()> {
    if n > AUTOMORPHISM_CAP {
        return Err(Error::CapExceeded {
            what: "isomorphism search order",
            limit: AUTOMORPHISM_CAP,
            requested: n,
        });
    }
    Ok(())
}

/// All automorphisms of g as image tables, lexicographically sorted.
pub fn automorphisms(g: &Group) -> Result<Vec<Vec<u16>>> {
    order_cap_check(g.order())?;
    let mut out: Vec<Vec<u16>> = Vec::new();
    let mut overflow = false;
    enumerate_isomorphisms(g, g, &mut |map| {
        if out.len() >= ISO_COUNT_CAP {
            overflow = true;
            return false;
        }
        out.push(map.to_vec());
        true
    });
    if overflow {
        return Err(Error::CapExceeded {
            what: "automorphism count",
            limit: ISO_COUNT_CAP,
            requested: ISO_COUNT_CAP + 1,
        });
    }
    out.sort_unstable();
    Ok(out)
}

/// An isomorphism g -> h as an image table, or None. Cheap invariants
/// first, then search; the first witness found is returned.
pub fn is_isomorphic(g: &Group, h: &Group) -> Result<Option<Vec<u16>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    order_cap_check(g.order())?;
    let signature = |gr: &Group| {
        let mut orders: Vec<usize> = (0..gr.order()).map(|x| element_order(gr, x)).collect();
        orders.sort_unstable();
        let mut class_sizes: Vec<usize> =
            conjugacy_classes(gr).iter().map(|c| c.len()).collect();
        class_sizes.sort_unstable();
        (orders, class_sizes, gr.is_abelian())
    };
    if signature(g) != signature(h) {
        return Ok(None);
    }
    let mut found: Option<Vec<u16>> = None;
    enumerate_isomorphisms(g, h, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_family, FamilyKind};

    const CAP: usize = 10_000;

    fn fam(kind: FamilyKind, p: usize) -> Group {
        make_family(kind, p, CAP).unwrap()
    }

    fn klein() -> Group {
        direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 2)).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        let c2 = fam(FamilyKind::Cyclic, 2);
        let cases: Vec<(Group, usize)> = vec![
            (klein(), 6),
            (fam(FamilyKind::Cyclic, 6), 2),
            (fam(FamilyKind::Cyclic, 8), 4),
            (fam(FamilyKind::Quaternion, 8), 24),
            (fam(FamilyKind::Symmetric, 3), 6),
            (direct_product(&klein(), &c2).unwrap(), 168),
        ];
        for (g, want) in cases {
            assert_eq!(automorphisms(&g).unwrap().len(), want, "Aut of {}", g.name());
        }
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = fam(FamilyKind::Symmetric, 3);
        let auts = automorphisms(&g).unwrap();
        let id: Vec<u16> = (0..6u16).collect();
        assert!(auts.contains(&id));
        for a in &auts {
            for b in &auts {
                let comp: Vec<u16> = (0..6).map(|x| a[b[x] as usize]).collect();
                assert!(auts.contains(&comp), "not closed under composition");
            }
        }
    }

    #[test]
    fn isomorphism_decisions() {
        let d8 = fam(FamilyKind::Dihedral, 8);
        let q8 = fam(FamilyKind::Quaternion, 8);
        assert!(is_isomorphic(&d8, &q8).unwrap().is_none());
        let c6 = fam(FamilyKind::Cyclic, 6);
        let c2xc3 =
            direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 3)).unwrap();
        let map = is_isomorphic(&c6, &c2xc3).unwrap().expect("C6 = C2xC3");
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(
                    map[c6.mul(x, y)] as usize,
                    c2xc3.mul(map[x] as usize, map[y] as usize)
                );
            }
        }
        let c4xc4 =
            direct_product(&fam(FamilyKind::Cyclic, 4), &fam(FamilyKind::Cyclic, 4)).unwrap();
        let c2xc8 =
            direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 8)).unwrap();
        assert!(is_isomorphic(&c4xc4, &c2xc8).unwrap().is_none());
        // D12 splits off its central involution
        let d12 = fam(FamilyKind::Dihedral, 12);
        let c2xs3 =
            direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Symmetric, 3)).unwrap();
        assert!(is_isomorphic(&d12, &c2xs3).unwrap().is_some());
    }

    #[test]
    fn order_cap_enforced() {
        let s5 = fam(FamilyKind::Symmetric, 5);
        assert!(matches!(
            automorphisms(&s5),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            is_isomorphic(&s5, &s5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn isomorphisms_are_bijective_homs() {
        let g = klein();
        let auts = automorphisms(&g).unwrap();
        for a in &auts {
            for x in 0..4 {
                for y in 0..4 {
                    assert_eq!(
                        a[g.mul(x, y)] as usize,
                        g.mul(a[x] as usize, a[y] as usize)
                    );
                }
            }
        }
    }
}
