//! Structure of finite abelian groups: invariant factors, independent
//! generating sets, and homomorphisms into Z/p^k used by the cohomology
//! machinery.

use super::{
    derived_subgroup, element_order, power, quotient, subgroup_as_group, subgroup_generated, Group,
};
use crate::error::{Error, Result};
use crate::ring::merge_invariant_factors;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Invariant factors d_1 | d_2 | ... | d_k of a finite abelian group,
/// ascending, each > 1. The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants(pub Vec<u64>);

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_order(&self) -> u64 {
        self.0.iter().product()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponents of the p-part of an abelian group, descending, computed by
/// counting solutions of x^{p^j} = 1. If the subgroup killed by p^j has
/// size p^{e_j} then the partition conjugate to (e_j - e_{j-1})_j gives the
/// cyclic decomposition exponents.
fn p_part_exponents(orders: &[u64], p: u64) -> Vec<u32> {
    let mut e = vec![0u32];
    loop {
        let j = e.len() as u32;
        let bound = p.pow(j);
        // x^{p^j} = 1 iff ord(x) is a p-power dividing p^j.
        let count = orders
            .iter()
            .filter(|&&o| bound % o == 0 && is_p_power(o, p))
            .count() as u64;
        let mut ej = 0u32;
        let mut q = 1u64;
        while q < count {
            q *= p;
            ej += 1;
        }
        debug_assert_eq!(q, count, "p-torsion layer is not a p-power");
        if ej == *e.last().unwrap() {
            break;
        }
        e.push(ej);
    }
    let jmax = e.len() - 1;
    let mut exps = Vec::new();
    for j in (1..=jmax).rev() {
        let parts_ge_j = e[j] - e[j - 1];
        let parts_ge_j1 = if j < jmax { e[j + 1] - e[j] } else { 0 };
        for _ in 0..(parts_ge_j - parts_ge_j1) {
            exps.push(j as u32);
        }
    }
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps
}

fn is_p_power(mut o: u64, p: u64) -> bool {
    while o % p == 0 {
        o /= p;
    }
    o == 1
}

fn invariants_of_abelian(a: &Group) -> AbelianInvariants {
    let orders: Vec<u64> = (0..a.order()).map(|x| element_order(a, x) as u64).collect();
    let mut per_prime = Vec::new();
    for p in prime_factors(a.order() as u64) {
        let chain: Vec<u64> = p_part_exponents(&orders, p)
            .into_iter()
            .map(|e| p.pow(e))
            .collect();
        per_prime.push(chain);
    }
    AbelianInvariants(merge_invariant_factors(&per_prime))
}

/// Invariant factors of G/[G,G].
pub fn abelianization(g: &Group) -> AbelianInvariants {
    let d = derived_subgroup(g);
    if d.len() == g.order() {
        return AbelianInvariants(Vec::new());
    }
    let (a, _) = quotient(g, &d).expect("derived subgroup is normal");
    invariants_of_abelian(&a)
}

/// Basis of an abelian p-group: returns (element, exponent) pairs with
/// orders p^e, exponents descending, such that the group is the direct sum
/// of the cyclic subgroups they generate.
///
/// Standard peeling argument: take x of maximal order p^e, split it off by
/// correcting each basis element y of the quotient mod <x>. If y^{p^b} =
/// x^c then p^b divides c (else y would beat x's order), and y * x^{-c/p^b}
/// has order exactly p^b and stays independent of x.
fn basis_of_abelian_p_group(pg: &Group, p: u64) -> Vec<(usize, u32)> {
    if pg.order() == 1 {
        return Vec::new();
    }
    let (x1, ord1) = (0..pg.order())
        .map(|x| (x, element_order(pg, x)))
        .max_by_key(|&(x, o)| (o, core::cmp::Reverse(x)))
        .unwrap();
    let e1 = ord1.ilog(p as usize) as u32;
    debug_assert_eq!((p as usize).pow(e1), ord1);
    let h = subgroup_generated(pg, &[x1]);
    let (q, proj) = quotient(pg, &h).expect("abelian subgroups are normal");
    // x1^i -> position i, for discrete logs in <x1>.
    let mut dlog = vec![u64::MAX; pg.order()];
    let mut y = 0usize;
    for i in 0..ord1 {
        dlog[y] = i as u64;
        y = pg.mul(y, x1);
    }
    let mut out = vec![(x1, e1)];
    for (yq, b) in basis_of_abelian_p_group(&q, p) {
        let lift = (0..pg.order())
            .find(|&x| proj[x] as usize == yq)
            .expect("projection is onto");
        let pb = p.pow(b);
        let c = dlog[power(pg, lift, pb)];
        debug_assert_ne!(c, u64::MAX, "y^{{p^b}} must land in <x1>");
        debug_assert_eq!(c % pb, 0);
        let corrector = power(pg, pg.inv(x1), c / pb);
        out.push((pg.mul(lift, corrector), b));
    }
    out
}

/// Independent generators of an abelian group: (element, order) pairs whose
/// cyclic subgroups sum directly to the whole group. Grouped by prime
/// (ascending), orders descending within each prime.
pub fn abelian_basis(g: &Group) -> Result<Vec<(usize, u64)>> {
    if !g.is_abelian() {
        return Err(Error::BadParameter(
            "abelian_basis requires an abelian group".into(),
        ));
    }
    let mut out = Vec::new();
    for p in prime_factors(g.order() as u64) {
        let elems: Vec<usize> = (0..g.order())
            .filter(|&x| is_p_power(element_order(g, x) as u64, p))
            .collect();
        let (pg, embed) = subgroup_as_group(g, &elems)?;
        for (x, e) in basis_of_abelian_p_group(&pg, p) {
            out.push((embed[x], p.pow(e)));
        }
    }
    Ok(out)
}

/// Data describing all homomorphisms G -> Z/p^k for every k at once: a
/// basis of the p-part of G/[G,G] with exponents e_i (orders p^{e_i},
/// descending) and, for every ambient element, its coordinate vector there.
/// A generating character into Z/p^k sends x to coord_i(x) * p^{k - min(e_i, k)}.
#[derive(Clone, Debug)]
pub(crate) struct PrimeCharData {
    pub exps: Vec<u32>,
    /// coords[x][i] in [0, p^{e_i}) for each ambient element x.
    pub coords: Vec<Vec<u64>>,
}

pub(crate) fn prime_character_data(g: &Group, p: u64) -> PrimeCharData {
    let d = derived_subgroup(g);
    let (ab, proj) = quotient(g, &d).expect("derived subgroup is normal");
    let elems: Vec<usize> = (0..ab.order())
        .filter(|&x| is_p_power(element_order(&ab, x) as u64, p))
        .collect();
    let (pg, embed) = subgroup_as_group(&ab, &elems).expect("torsion part is a subgroup");
    let basis = basis_of_abelian_p_group(&pg, p);
    let exps: Vec<u32> = basis.iter().map(|&(_, e)| e).collect();
    // Walk the coordinate box, recording each product's coordinates. The
    // basis property makes this a bijection onto the p-part. Rolling a digit
    // over multiplies by the basis element a full order's worth of times, so
    // the incremental product stays in sync.
    let r = basis.len();
    let mut coords_in_part: Vec<Vec<u64>> = vec![Vec::new(); pg.order()];
    let mut c = vec![0u64; r];
    let mut elem = 0usize;
    let mut visited = 0usize;
    loop {
        debug_assert!(coords_in_part[elem].is_empty() || visited == 0 && r == 0);
        coords_in_part[elem] = c.clone();
        visited += 1;
        let mut i = 0;
        while i < r {
            let (bx, be) = basis[i];
            c[i] += 1;
            elem = pg.mul(elem, bx);
            if c[i] < p.pow(be) {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    debug_assert_eq!(visited, pg.order());
    let mut pos_in_part = vec![usize::MAX; ab.order()];
    for (i, &x) in embed.iter().enumerate() {
        pos_in_part[x] = i;
    }
    // Project each ambient element onto the p-part: raising to the power
    // m' * inv(m' mod p^v) fixes the p-component and kills the rest.
    let pv = pg.order() as u64;
    let mut mprime = ab.order() as u64;
    while mprime % p == 0 {
        mprime /= p;
    }
    let expo = mprime * mod_inverse(mprime % pv, pv);
    let coords = (0..g.order())
        .map(|x| {
            let ap = power(&ab, proj[x] as usize, expo);
            coords_in_part[pos_in_part[ap]].clone()
        })
        .collect();
    PrimeCharData { exps, coords }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    // Extended Euclid on (a, m), gcd must be 1.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of non-unit");
    old_s.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_family, FamilyKind};

    const CAP: usize = 10_000;

    fn fam(kind: FamilyKind, p: usize) -> Group {
        make_family(kind, p, CAP).unwrap()
    }

    #[test]
    fn invariants_of_small_groups() {
        let cases: Vec<(Group, Vec<u64>)> = vec![
            (fam(FamilyKind::Cyclic, 1), vec![]),
            (fam(FamilyKind::Cyclic, 12), vec![12]),
            (fam(FamilyKind::Dihedral, 8), vec![2, 2]),
            (fam(FamilyKind::Quaternion, 8), vec![2, 2]),
            (fam(FamilyKind::Symmetric, 4), vec![2]),
            (fam(FamilyKind::Alternating, 4), vec![3]),
            (fam(FamilyKind::Alternating, 5), vec![]),
            (
                direct_product(&fam(FamilyKind::Cyclic, 6), &fam(FamilyKind::Cyclic, 2)).unwrap(),
                vec![2, 6],
            ),
            (
                direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 4)).unwrap(),
                vec![2, 4],
            ),
            (
                direct_product(&fam(FamilyKind::Cyclic, 3), &fam(FamilyKind::Cyclic, 9)).unwrap(),
                vec![3, 9],
            ),
        ];
        for (g, want) in cases {
            assert_eq!(abelianization(&g).0, want, "abelianization of {}", g.name());
        }
    }

    #[test]
    fn invariants_display() {
        assert_eq!(AbelianInvariants(vec![2, 4]).to_string(), "[2 4]");
        assert_eq!(AbelianInvariants(vec![]).to_string(), "[]");
    }

    #[test]
    fn basis_spans_bijectively() {
        let groups = vec![
            fam(FamilyKind::Cyclic, 8),
            direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 4)).unwrap(),
            direct_product(&fam(FamilyKind::Cyclic, 6), &fam(FamilyKind::Cyclic, 2)).unwrap(),
            direct_product(&fam(FamilyKind::Cyclic, 3), &fam(FamilyKind::Cyclic, 9)).unwrap(),
        ];
        for g in groups {
            let basis = abelian_basis(&g).unwrap();
            // orders multiply to |G|
            let prod: u64 = basis.iter().map(|&(_, o)| o).product();
            assert_eq!(prod, g.order() as u64, "basis of {}", g.name());
            for &(x, o) in &basis {
                assert_eq!(element_order(&g, x) as u64, o);
            }
            // the coordinate box covers every element exactly once
            let mut seen = vec![false; g.order()];
            let mut count = 0usize;
            let mut stack = vec![(0usize, 0usize)];
            while let Some((i, elem)) = stack.pop() {
                if i == basis.len() {
                    assert!(!seen[elem], "duplicate element in {}", g.name());
                    seen[elem] = true;
                    count += 1;
                    continue;
                }
                let (bx, bo) = basis[i];
                let mut cur = elem;
                for _ in 0..bo {
                    stack.push((i + 1, cur));
                    cur = g.mul(cur, bx);
                }
            }
            assert_eq!(count, g.order());
        }
    }

    #[test]
    fn basis_rejects_nonabelian() {
        assert!(abelian_basis(&fam(FamilyKind::Dihedral, 8)).is_err());
    }

    #[test]
    fn character_data_is_homomorphic() {
        let groups = vec![
            fam(FamilyKind::Dihedral, 8),
            fam(FamilyKind::Symmetric, 3),
            fam(FamilyKind::Cyclic, 12),
            direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 4)).unwrap(),
        ];
        for g in groups {
            for p in [2u64, 3u64] {
                let data = prime_character_data(&g, p);
                let r = data.exps.len();
                for x in 0..g.order() {
                    assert_eq!(data.coords[x].len(), r);
                    for y in 0..g.order() {
                        let xy = g.mul(x, y);
                        for i in 0..r {
                            let m = p.pow(data.exps[i]);
                            assert_eq!(
                                (data.coords[x][i] + data.coords[y][i]) % m,
                                data.coords[xy][i],
                                "{} p={p} coord {i} at ({x},{y})",
                                g.name()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn character_data_shape() {
        // D8 abelianizes to the Klein group: two independent order-2 chars.
        let d8 = fam(FamilyKind::Dihedral, 8);
        let data = prime_character_data(&d8, 2);
        assert_eq!(data.exps, vec![1, 1]);
        // No 3-part.
        assert!(prime_character_data(&d8, 3).exps.is_empty());
        // S3 abelianizes to C2.
        let s3 = fam(FamilyKind::Symmetric, 3);
        assert_eq!(prime_character_data(&s3, 2).exps, vec![1]);
        assert!(prime_character_data(&s3, 3).exps.is_empty());
    }
}
