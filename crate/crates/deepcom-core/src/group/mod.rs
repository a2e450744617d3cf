//! Finite groups as validated Cayley tables.
//!
//! Elements are indices `0..n` with the identity always at index 0.
//! Multiplication is a flat `n*n` table of `u16` indices.

mod abelian;
mod auto;
mod family;
mod subgroups;

pub use abelian::{abelian_basis, abelianization, AbelianInvariants};
pub use auto::{automorphisms, is_isomorphic};
pub use family::{family_order, make_family, sg64_182, FamilyKind};
pub use subgroups::{subgroups_up_to_conjugacy, SubgroupClass, SubgroupClassReport};

pub(crate) use abelian::prime_character_data;
pub(crate) use auto::enumerate_isomorphisms;

use crate::error::{Error, Result};
use crate::{ASSOC_CHECK_CAP, HARD_ORDER_CAP};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// A finite group on elements `0..n` with identity `0`, given by its full
/// multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    n: usize,
    table: Vec<u16>,
    names: Vec<String>,
    inv: Vec<u16>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// g x g^{-1}
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// x^{-1} y^{-1} x y
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        for a in 1..self.n {
            for b in (a + 1)..self.n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    /// Constructor for tables that are groups by construction (families,
    /// products, quotients, cocycle extensions). Computes inverses; checks
    /// the cheap axioms always and associativity only in debug builds.
    pub(crate) fn trusted(name: String, names: Vec<String>, table: Vec<u16>) -> Group {
        let n = names.len();
        assert_eq!(table.len(), n * n, "table size mismatch");
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let mut found = false;
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u16;
                    found = true;
                    break;
                }
            }
            assert!(found, "element {a} has no inverse");
        }
        debug_assert!({
            let mut ok = true;
            if n <= 128 {
                'chk: for a in 0..n {
                    for b in 0..n {
                        let ab = table[a * n + b] as usize;
                        for c in 0..n {
                            let bc = table[b * n + c] as usize;
                            if table[ab * n + c] != table[a * n + bc] {
                                ok = false;
                                break 'chk;
                            }
                        }
                    }
                }
            }
            ok
        });
        Group {
            name,
            n,
            table,
            names,
            inv,
        }
    }
}

/// Validates an untrusted Cayley table and returns the group, relabeling the
/// identity to index 0 if it sits elsewhere. Associativity is checked
/// exhaustively, so untrusted tables are capped at [`ASSOC_CHECK_CAP`].
pub fn group_from_table(name: &str, names: Vec<String>, table: Vec<u16>) -> Result<Group> {
    let n = names.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    if n > ASSOC_CHECK_CAP {
        return Err(Error::CapExceeded {
            what: "untrusted Cayley table",
            limit: ASSOC_CHECK_CAP,
            requested: n,
        });
    }
    if table.len() != n * n {
        return Err(Error::NotAGroup(format!(
            "table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    let mut sorted_names: Vec<&String> = names.iter().collect();
    sorted_names.sort();
    if let Some(w) = sorted_names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NotAGroup(format!("duplicate element name {:?}", w[0])));
    }
    if let Some(&e) = table.iter().find(|&&e| (e as usize) >= n) {
        return Err(Error::NotAGroup(format!("entry {e} out of range")));
    }
    // Rows and columns must be permutations.
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            let e = table[a * n + b] as usize;
            if seen[e] {
                return Err(Error::NotAGroup(format!("row {a} repeats entry {e}")));
            }
            seen[e] = true;
        }
    }
    for b in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for a in 0..n {
            let e = table[a * n + b] as usize;
            if seen[e] {
                return Err(Error::NotAGroup(format!("column {b} repeats entry {e}")));
            }
            seen[e] = true;
        }
    }
    // Locate the two-sided identity.
    let mut identity = None;
    'outer: for e in 0..n {
        for x in 0..n {
            if table[e * n + x] as usize != x || table[x * n + e] as usize != x {
                continue 'outer;
            }
        }
        identity = Some(e);
        break;
    }
    let Some(e) = identity else {
        return Err(Error::NotAGroup("no identity element".into()));
    };
    // Relabel so the identity is element 0.
    let (names, table) = if e == 0 {
        (names, table)
    } else {
        let perm = |a: usize| -> usize {
            if a == e {
                0
            } else if a == 0 {
                e
            } else {
                a
            }
        };
        let mut t2 = vec![0u16; n * n];
        let mut n2 = vec![String::new(); n];
        for a in 0..n {
            n2[perm(a)] = names[a].clone();
            for b in 0..n {
                t2[perm(a) * n + perm(b)] = perm(table[a * n + b] as usize) as u16;
            }
        }
        (n2, t2)
    };
    // Two-sided inverses.
    for a in 0..n {
        let b = (0..n).find(|&b| table[a * n + b] == 0).expect("row is a permutation");
        if table[b * n + a] != 0 {
            return Err(Error::NotAGroup(format!(
                "element {a} has distinct left and right inverses"
            )));
        }
    }
    // Associativity, exhaustively.
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b] as usize;
            for c in 0..n {
                let bc = table[b * n + c] as usize;
                if table[ab * n + c] != table[a * n + bc] {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    Ok(Group::trusted(name.to_string(), names, table))
}

/// Direct product with lexicographic element order: `(a, b) -> a*|H| + b`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let n = g.n.checked_mul(h.n).ok_or(Error::CapExceeded {
        what: "direct product",
        limit: HARD_ORDER_CAP,
        requested: usize::MAX,
    })?;
    if n > HARD_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "direct product",
            limit: HARD_ORDER_CAP,
            requested: n,
        });
    }
    let mut names = Vec::with_capacity(n);
    for a in 0..g.n {
        for b in 0..h.n {
            names.push(format!("({},{})", g.names[a], h.names[b]));
        }
    }
    let mut table = vec![0u16; n * n];
    for a1 in 0..g.n {
        for b1 in 0..h.n {
            let i = a1 * h.n + b1;
            for a2 in 0..g.n {
                let ga = g.mul(a1, a2);
                for b2 in 0..h.n {
                    let j = a2 * h.n + b2;
                    table[i * n + j] = (ga * h.n + h.mul(b1, b2)) as u16;
                }
            }
        }
    }
    let name = format!("{}x{}", g.name, h.name);
    Ok(Group::trusted(name, names, table))
}

/// Elements commuting with everything, ascending.
pub fn center(g: &Group) -> Vec<usize> {
    (0..g.n)
        .filter(|&x| (0..g.n).all(|y| g.commutes(x, y)))
        .collect()
}

/// x^e by binary exponentiation.
pub fn power(g: &Group, x: usize, e: u64) -> usize {
    assert!(x < g.n, "element index out of range");
    let mut base = x;
    let mut acc = 0usize;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = g.mul(acc, base);
        }
        base = g.mul(base, base);
        e >>= 1;
    }
    acc
}

/// Multiplicative order of an element.
pub fn element_order(g: &Group, x: usize) -> usize {
    assert!(x < g.n, "element index out of range");
    let mut ord = 1;
    let mut y = x;
    while y != 0 {
        y = g.mul(y, x);
        ord += 1;
    }
    ord
}

/// Closure of a generating set, ascending. The identity is always included.
pub fn subgroup_generated(g: &Group, gens: &[usize]) -> Vec<usize> {
    for &x in gens {
        assert!(x < g.n, "element index out of range");
    }
    let mut in_set = vec![false; g.n];
    in_set[0] = true;
    let mut elems = vec![0usize];
    let mut queue = vec![0usize];
    for &x in gens {
        if !in_set[x] {
            in_set[x] = true;
            elems.push(x);
            queue.push(x);
        }
    }
    while let Some(a) = queue.pop() {
        // Multiply by generators on both sides; enough to close the set.
        for &s in gens {
            for b in [g.mul(a, s), g.mul(s, a)] {
                if !in_set[b] {
                    in_set[b] = true;
                    elems.push(b);
                    queue.push(b);
                }
            }
        }
    }
    elems.sort_unstable();
    elems
}

/// The subgroup generated by all commutators, ascending.
pub fn derived_subgroup(g: &Group) -> Vec<usize> {
    let mut comms = Vec::new();
    let mut seen = vec![false; g.n];
    for x in 0..g.n {
        for y in (x + 1)..g.n {
            let c = g.commutator(x, y);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    subgroup_generated(g, &comms)
}

/// Conjugacy classes; classes ordered by their smallest element, elements
/// ascending within each class.
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; g.n];
    let mut classes = Vec::new();
    for x in 0..g.n {
        if assigned[x] {
            continue;
        }
        let mut orbit = Vec::new();
        for h in 0..g.n {
            let y = g.conj(h, x);
            if !assigned[y] {
                assigned[y] = true;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes
}

/// Checks that `elems` (sorted, containing 0) is a subgroup.
pub fn is_subgroup(g: &Group, elems: &[usize]) -> bool {
    if elems.first() != Some(&0) {
        return false;
    }
    let mut member = vec![false; g.n];
    for &x in elems {
        if x >= g.n || member[x] {
            return false;
        }
        member[x] = true;
    }
    elems
        .iter()
        .all(|&a| elems.iter().all(|&b| member[g.mul(a, b)]))
}

/// Checks that the subgroup `elems` is normal.
pub fn is_normal(g: &Group, elems: &[usize]) -> bool {
    if !is_subgroup(g, elems) {
        return false;
    }
    let mut member = vec![false; g.n];
    for &x in elems {
        member[x] = true;
    }
    elems
        .iter()
        .all(|&x| (0..g.n).all(|h| member[g.conj(h, x)]))
}

/// Quotient by a normal subgroup. Returns the quotient group (cosets ordered
/// by smallest member, which also names them) and the projection map.
pub fn quotient(g: &Group, normal: &[usize]) -> Result<(Group, Vec<u16>)> {
    if !is_normal(g, normal) {
        return Err(Error::BadParameter(
            "quotient requires a normal subgroup".into(),
        ));
    }
    let mut coset_rep = vec![usize::MAX; g.n];
    let mut reps = Vec::new();
    for x in 0..g.n {
        if coset_rep[x] != usize::MAX {
            continue;
        }
        for &s in normal {
            coset_rep[g.mul(x, s)] = x;
        }
        debug_assert_eq!(coset_rep[x], x);
        reps.push(x);
    }
    let q = reps.len();
    let mut rep_index = vec![0usize; g.n];
    for (i, &r) in reps.iter().enumerate() {
        rep_index[r] = i;
    }
    let proj: Vec<u16> = (0..g.n).map(|x| rep_index[coset_rep[x]] as u16).collect();
    let mut table = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = proj[g.mul(a, b)];
        }
    }
    let names = reps.iter().map(|&r| g.names[r].clone()).collect();
    let name = format!("{}/{}", g.name, normal.len());
    Ok((Group::trusted(name, names, table), proj))
}

/// Re-indexes a subgroup as a standalone group. Returns the group and the
/// embedding (new index -> ambient index).
pub fn subgroup_as_group(g: &Group, elems: &[usize]) -> Result<(Group, Vec<usize>)> {
    if !is_subgroup(g, elems) {
        return Err(Error::BadParameter("not a subgroup".into()));
    }
    let m = elems.len();
    let mut pos = vec![usize::MAX; g.n];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let mut table = vec![0u16; m * m];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            table[i * m + j] = pos[g.mul(a, b)] as u16;
        }
    }
    let names = elems.iter().map(|&x| g.names[x].clone()).collect();
    let name = format!("{}<{}", g.name, m);
    Ok((Group::trusted(name, names, table), elems.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_table() -> Vec<u16> {
        vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0]
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn validates_klein_table() {
        let g = group_from_table("V", names(4), klein_table()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.inv(3), 3);
    }

    #[test]
    fn rejects_non_associative_table() {
        // Rows and columns are permutations and 0 is an identity, but the
        // operation (a quasigroup on 5 elements) is not associative.
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        match group_from_table("Q5", names(5), t) {
            Err(Error::NotAGroup(msg)) => assert!(msg.contains("associativity")),
            other => panic!("expected NotAGroup, got {other:?}"),
        }
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let mut t = klein_table();
        t[5] = 1; // row 1 now repeats entry 1
        assert!(matches!(
            group_from_table("bad", names(4), t),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn rejects_duplicate_element_names() {
        let mut dup = names(4);
        dup[3] = "e1".to_string();
        match group_from_table("bad", dup, klein_table()) {
            Err(Error::NotAGroup(msg)) => assert!(msg.contains("duplicate")),
            other => panic!("expected NotAGroup, got {other:?}"),
        }
    }

    #[test]
    fn relabels_identity_to_zero() {
        // C3 written with the identity at index 2.
        // elements: a=0, a^2=1, e=2 with a*a = a^2 etc.
        let t = vec![
            1, 2, 0, //
            2, 0, 1, //
            0, 1, 2,
        ];
        let g = group_from_table("C3", vec!["a".into(), "b".into(), "e".into()], t).unwrap();
        assert_eq!(g.element_name(0), "e");
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(element_order(&g, 1), 3);
    }

    #[test]
    fn center_of_dihedral_8_is_rotation_square() {
        let g = make_family(FamilyKind::Dihedral, 8, 10_000).unwrap();
        assert_eq!(center(&g), vec![0, 2]);
    }

    #[test]
    fn conjugacy_classes_of_sym3() {
        let g = make_family(FamilyKind::Symmetric, 3, 10_000).unwrap();
        let sizes: Vec<usize> = conjugacy_classes(&g).iter().map(|c| c.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(conjugacy_classes(&g).len(), 3);
    }

    #[test]
    fn derived_subgroup_of_dihedral_8() {
        let g = make_family(FamilyKind::Dihedral, 8, 10_000).unwrap();
        assert_eq!(derived_subgroup(&g), vec![0, 2]);
    }

    #[test]
    fn quotient_of_dihedral_by_center_is_klein() {
        let g = make_family(FamilyKind::Dihedral, 8, 10_000).unwrap();
        let (q, proj) = quotient(&g, &[0, 2]).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert!(q.element_names().iter().all(|n| !n.is_empty()));
        assert_eq!(proj.len(), 8);
        assert!((0..4).all(|x| element_order(&q, x) <= 2));
    }

    #[test]
    fn product_order_and_names() {
        let c2 = make_family(FamilyKind::Cyclic, 2, 10_000).unwrap();
        let c3 = make_family(FamilyKind::Cyclic, 3, 10_000).unwrap();
        let p = direct_product(&c2, &c3).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.element_name(0), "(1,1)");
        assert_eq!(element_order(&p, 4), 6); // (g, g) has order 6
    }

    #[test]
    fn subgroup_generated_by_rotation() {
        let g = make_family(FamilyKind::Dihedral, 8, 10_000).unwrap();
        assert_eq!(subgroup_generated(&g, &[1]), vec![0, 1, 2, 3]);
        assert_eq!(subgroup_generated(&g, &[]), vec![0]);
    }
}
