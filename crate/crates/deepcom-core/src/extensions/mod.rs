//! Central extensions as explicit Cayley tables.
//!
//! An extension is stored as a validated surjection `total -> base` whose
//! kernel lies in the center of `total`. Extensions are built from 2-cocycles
//! or assembled from existing groups, pulled back along homomorphisms, and
//! compared through their relative commuting graphs. The module also carries
//! the commuting probability, the isoclinism test, and an oracle that
//! recomputes the deep commuting graph by enumerating concrete extensions
//! instead of evaluating cocycle pairings.

use crate::cohomology::{
    cocycle_basis, derived_rng, is_cocycle, pair_index, ByteStream, Cocycle, MIX_ORACLE,
};
use crate::error::{Error, Result};
use crate::graphs::{commuting_graph, graph_equal, GraphKind, SimpleGraph};
use crate::group::{
    center, conjugacy_classes, derived_subgroup, enumerate_isomorphisms, quotient, Group,
};
use crate::ring::factor_prime_powers;
use crate::{AUTOMORPHISM_CAP, EXTENSION_ORDER_CAP, ORACLE_ORDER_CAP};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;

/// A group `total` together with a surjective homomorphism onto `base`
/// whose kernel is central in `total`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    total: Group,
    base: Group,
    projection: Vec<u16>,
    kernel: Vec<usize>,
}

impl CentralExtension {
    /// Validates the projection table: a surjective homomorphism
    /// `total -> base` with central kernel.
    pub fn new(total: Group, base: Group, projection: Vec<u16>) -> Result<CentralExtension> {
        let nt = total.order();
        let nb = base.order();
        if projection.len() != nt {
            return Err(Error::BadExtension(format!(
                "projection table has {} entries for a group of order {nt}",
                projection.len()
            )));
        }
        if let Some(&v) = projection.iter().find(|&&v| v as usize >= nb) {
            return Err(Error::BadExtension(format!(
                "projection value {v} is outside the base group"
            )));
        }
        for s in 0..nt {
            for t in 0..nt {
                let lhs = projection[total.mul(s, t)] as usize;
                let rhs = base.mul(projection[s] as usize, projection[t] as usize);
                if lhs != rhs {
                    return Err(Error::BadExtension(format!(
                        "projection is not a homomorphism at ({s},{t})"
                    )));
                }
            }
        }
        let mut hit = vec![false; nb];
        for &v in &projection {
            hit[v as usize] = true;
        }
        if hit.iter().any(|&h| !h) {
            return Err(Error::BadExtension("projection is not surjective".to_string()));
        }
        let kernel: Vec<usize> = (0..nt).filter(|&t| projection[t] == 0).collect();
        let zen = center(&total);
        if kernel.iter().any(|x| zen.binary_search(x).is_err()) {
            return Err(Error::BadExtension("kernel is not central".to_string()));
        }
        Ok(CentralExtension {
            total,
            base,
            projection,
            kernel,
        })
    }

    pub fn total(&self) -> &Group {
        &self.total
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn projection(&self) -> &[u16] {
        &self.projection
    }

    /// Kernel elements, ascending. Always contains 0.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// One preimage per base element: the smallest index in `total`.
    pub fn section(&self) -> Vec<usize> {
        let mut sec = vec![usize::MAX; self.base.order()];
        for t in (0..self.total.order()).rev() {
            sec[self.projection[t] as usize] = t;
        }
        sec
    }
}

/// Builds the extension of `g` by Z/p^k defined by the normalized 2-cocycle
/// `f`: elements are pairs `(x, a)` with product
/// `(x, a)(y, b) = (xy, a + b + f(x, y))`. The result is validated like any
/// other extension; its kernel is the set of pairs over the identity.
pub fn extension_from_cocycle(g: &Group, f: &Cocycle) -> Result<CentralExtension> {
    let n = g.order();
    if f.group_order() != n {
        return Err(Error::BadParameter(format!(
            "cocycle is over a group of order {}, not {n}",
            f.group_order()
        )));
    }
    let m = f.prime_power().m as usize;
    if n * m > EXTENSION_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "extension order",
            limit: EXTENSION_ORDER_CAP,
            requested: n * m,
        });
    }
    is_cocycle(g, f)?;
    let nm = n * m;
    let mut names = Vec::with_capacity(nm);
    for x in 0..n {
        for a in 0..m {
            names.push(format!("({},{a})", g.element_name(x)));
        }
    }
    let mut table = vec![0u16; nm * nm];
    for x in 0..n {
        for a in 0..m {
            let row = (x * m + a) * nm;
            for y in 0..n {
                let z = g.mul(x, y);
                let c0 = a + f.value(x, y) as usize;
                for b in 0..m {
                    table[row + y * m + b] = (z * m + (c0 + b) % m) as u16;
                }
            }
        }
    }
    let total = Group::trusted(format!("{}:{m}", g.name()), names, table);
    let projection: Vec<u16> = (0..nm).map(|t| (t / m) as u16).collect();
    CentralExtension::new(total, g.clone(), projection)
}

/// The commuting graph of `base` as seen from inside the extension: `x ~ y`
/// iff their preimages commute in `total`. Since the kernel is central the
/// choice of preimage does not matter, so one section decides.
pub fn relative_commuting_graph(ext: &CentralExtension) -> SimpleGraph {
    let sec = ext.section();
    let nb = ext.base.order();
    let mut graph = SimpleGraph::new(GraphKind::Relcom, ext.base.element_names().to_vec());
    for x in 0..nb {
        for y in (x + 1)..nb {
            if ext.total.commutes(sec[x], sec[y]) {
                graph.add_edge(x, y);
            }
        }
    }
    graph
}

/// A stem extension is one whose kernel lies inside the derived subgroup of
/// the total group.
pub fn is_stem(ext: &CentralExtension) -> bool {
    let derived = derived_subgroup(&ext.total);
    ext.kernel.iter().all(|x| derived.binary_search(x).is_ok())
}

/// A commutation-preserving extension is one where preimages of commuting
/// elements still commute, i.e. the relative commuting graph equals the
/// commuting graph of the base.
pub fn is_cp(ext: &CentralExtension) -> bool {
    graph_equal(&relative_commuting_graph(ext), &commuting_graph(&ext.base))
}

/// Probability that two uniformly random elements commute. Summing the
/// centralizer orders and counting by orbits gives exactly
/// (number of conjugacy classes) / |G|.
pub fn commuting_probability(g: &Group) -> Ratio<u64> {
    Ratio::new(conjugacy_classes(g).len() as u64, g.order() as u64)
}

/// The identity extension of `g` by the trivial group: total and base are
/// both `g` with the identity projection. It is the unit for pullbacks.
pub fn trivial_extension(g: &Group) -> CentralExtension {
    let projection: Vec<u16> = (0..g.order()).map(|t| t as u16).collect();
    CentralExtension::new(g.clone(), g.clone(), projection)
        .expect("identity projection is a central extension")
}

/// Fiber product of two central extensions of the same base group: the
/// subgroup `{(s, t) : proj1(s) = proj2(t)}` of the direct product with
/// componentwise multiplication, projecting onto the shared base through the
/// first coordinate. Its kernel is the product of the two kernels, so the
/// total order is |base| * |kernel1| * |kernel2|. The bases must agree as
/// labeled tables; otherwise the gluing condition is meaningless.
pub fn pullback_extension(
    ext1: &CentralExtension,
    ext2: &CentralExtension,
) -> Result<CentralExtension> {
    let base = &ext1.base;
    let nb = base.order();
    if nb != ext2.base.order() {
        return Err(Error::BaseMismatch);
    }
    for x in 0..nb {
        for y in 0..nb {
            if base.mul(x, y) != ext2.base.mul(x, y) {
                return Err(Error::BaseMismatch);
            }
        }
    }
    let count = nb * ext1.kernel.len() * ext2.kernel.len();
    if count > EXTENSION_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "pullback extension order",
            limit: EXTENSION_ORDER_CAP,
            requested: count,
        });
    }
    let (n1, n2) = (ext1.total.order(), ext2.total.order());
    let mut elems: Vec<(usize, usize)> = Vec::with_capacity(count);
    for s in 0..n1 {
        for t in 0..n2 {
            if ext1.projection[s] == ext2.projection[t] {
                elems.push((s, t));
            }
        }
    }
    // each base element is covered by one kernel coset from each side
    debug_assert_eq!(elems.len(), count);
    let names: Vec<_> = elems
        .iter()
        .map(|&(s, t)| {
            format!(
                "({},{})",
                ext1.total.element_name(s),
                ext2.total.element_name(t)
            )
        })
        .collect();
    let mut table = vec![0u16; count * count];
    for (i, &(s1, t1)) in elems.iter().enumerate() {
        for (j, &(s2, t2)) in elems.iter().enumerate() {
            let key = (ext1.total.mul(s1, s2), ext2.total.mul(t1, t2));
            // closure: both projections send the product to the same place
            let idx = elems.binary_search(&key).expect("fiber product is closed");
            table[i * count + j] = idx as u16;
        }
    }
    let total = Group::trusted(
        format!("{}*{}", ext1.total.name(), ext2.total.name()),
        names,
        table,
    );
    let projection: Vec<u16> = elems.iter().map(|&(s, _)| ext1.projection[s]).collect();
    CentralExtension::new(total, base.clone(), projection)
}

/// A witness that two groups are isoclinic: `quotient_map` is an image table
/// for an isomorphism between the central quotients (indexed the way
/// `quotient` numbers cosets), and `derived_map` pairs up the derived
/// subgroups elementwise so that commutators correspond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isoclinism {
    pub quotient_map: Vec<u16>,
    pub derived_map: Vec<(usize, usize)>,
}

/// Isoclinism: an isomorphism of central quotients together with a matching
/// isomorphism of derived subgroups that transports the commutator map.
/// Quotient isomorphisms are enumerated; each candidate forces the derived
/// map on commutator values, which generate the derived subgroup, so the
/// candidate either extends uniquely or fails. Returns the first witness.
pub fn is_isoclinic(g: &Group, h: &Group) -> Result<Option<Isoclinism>> {
    let zg = center(g);
    let zh = center(h);
    let (gq, gproj) = quotient(g, &zg)?;
    let (hq, hproj) = quotient(h, &zh)?;
    if gq.order() != hq.order() {
        return Ok(None);
    }
    let dg = derived_subgroup(g);
    let dh = derived_subgroup(h);
    if dg.len() != dh.len() {
        return Ok(None);
    }
    if gq.order() > AUTOMORPHISM_CAP {
        return Err(Error::CapExceeded {
            what: "isoclinism central quotient",
            limit: AUTOMORPHISM_CAP,
            requested: gq.order(),
        });
    }
    let gsec = section_of(&gproj, gq.order());
    let hsec = section_of(&hproj, hq.order());
    let mut found: Option<Isoclinism> = None;
    enumerate_isomorphisms(&gq, &hq, &mut |phi: &[u16]| {
        if let Some(derived_map) = transports_commutators(g, h, &gsec, &hsec, phi, &dg, &dh) {
            found = Some(Isoclinism {
                quotient_map: phi.to_vec(),
                derived_map,
            });
            return false;
        }
        true
    });
    Ok(found)
}

/// Checks an isoclinism witness from scratch: the quotient map must be a
/// bijective homomorphism of the central quotients, the derived map a
/// multiplicative bijection of the derived subgroups, and every pair of
/// cosets must satisfy the compatibility equation
/// `psi([a, b]) = [phi(a), phi(b)]`. One representative per coset decides
/// the equation because central factors cancel inside commutators.
pub fn verify_isoclinism(g: &Group, h: &Group, witness: &Isoclinism) -> Result<bool> {
    let (gq, gproj) = quotient(g, &center(g))?;
    let (hq, hproj) = quotient(h, &center(h))?;
    let q = gq.order();
    let phi = &witness.quotient_map;
    if hq.order() != q || phi.len() != q {
        return Ok(false);
    }
    let mut hit = vec![false; q];
    for &v in phi {
        if v as usize >= q || hit[v as usize] {
            return Ok(false);
        }
        hit[v as usize] = true;
    }
    for a in 0..q {
        for b in 0..q {
            if phi[gq.mul(a, b)] as usize != hq.mul(phi[a] as usize, phi[b] as usize) {
                return Ok(false);
            }
        }
    }
    let dg = derived_subgroup(g);
    let dh = derived_subgroup(h);
    if dg.len() != dh.len() || witness.derived_map.len() != dg.len() {
        return Ok(false);
    }
    let mut psi = vec![usize::MAX; g.order()];
    let mut seen = vec![false; h.order()];
    for &(x, y) in &witness.derived_map {
        if x >= g.order()
            || y >= h.order()
            || dg.binary_search(&x).is_err()
            || dh.binary_search(&y).is_err()
            || psi[x] != usize::MAX
            || seen[y]
        {
            return Ok(false);
        }
        psi[x] = y;
        seen[y] = true;
    }
    for &x in &dg {
        for &y in &dg {
            if psi[g.mul(x, y)] != h.mul(psi[x], psi[y]) {
                return Ok(false);
            }
        }
    }
    let gsec = section_of(&gproj, q);
    let hsec = section_of(&hproj, q);
    for a in 0..q {
        for b in 0..q {
            let c = g.commutator(gsec[a], gsec[b]);
            let d = h.commutator(hsec[phi[a] as usize], hsec[phi[b] as usize]);
            if psi[c] != d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First preimage of each coset under a projection table.
fn section_of(proj: &[u16], q: usize) -> Vec<usize> {
    let mut sec = vec![usize::MAX; q];
    for t in (0..proj.len()).rev() {
        sec[proj[t] as usize] = t;
    }
    sec
}

/// Tries to extend a quotient isomorphism `phi` to a derived-subgroup
/// isomorphism compatible with commutators, returning the element pairing on
/// success. Seeds the map on commutator values of section pairs (central
/// factors drop out of commutators, so these cover every commutator in the
/// group), closes multiplicatively, then rechecks bijectivity and
/// multiplicativity from scratch.
fn transports_commutators(
    g: &Group,
    h: &Group,
    gsec: &[usize],
    hsec: &[usize],
    phi: &[u16],
    dg: &[usize],
    dh: &[usize],
) -> Option<Vec<(usize, usize)>> {
    let q = gsec.len();
    let mut psi = vec![usize::MAX; g.order()];
    for a in 0..q {
        for b in 0..q {
            let c = g.commutator(gsec[a], gsec[b]);
            let d = h.commutator(hsec[phi[a] as usize], hsec[phi[b] as usize]);
            if psi[c] == usize::MAX {
                psi[c] = d;
            } else if psi[c] != d {
                return None;
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &x in dg {
            if psi[x] == usize::MAX {
                continue;
            }
            for &y in dg {
                if psi[y] == usize::MAX {
                    continue;
                }
                let xy = g.mul(x, y);
                let im = h.mul(psi[x], psi[y]);
                if psi[xy] == usize::MAX {
                    psi[xy] = im;
                    changed = true;
                } else if psi[xy] != im {
                    return None;
                }
            }
        }
    }
    // full recheck: bijection onto the other derived subgroup that respects
    // multiplication everywhere
    let mut in_dh = vec![false; h.order()];
    for &y in dh {
        in_dh[y] = true;
    }
    let mut seen = vec![false; h.order()];
    for &x in dg {
        let v = psi[x];
        if v == usize::MAX || !in_dh[v] || seen[v] {
            return None;
        }
        seen[v] = true;
    }
    let multiplicative = dg.iter().all(|&x| {
        dg.iter()
            .all(|&y| psi[g.mul(x, y)] == h.mul(psi[x], psi[y]))
    });
    if multiplicative {
        Some(dg.iter().map(|&x| (x, psi[x])).collect())
    } else {
        None
    }
}

/// Recomputes the deep commuting graph by building extensions and
/// intersecting their relative commuting graphs, entirely bypassing the
/// pairing shortcut. Every generator of each cocycle module is realized as a
/// full validated extension; the rest of each module is either swept
/// exhaustively (comparing the two lifted products under the extension group
/// law) or sampled with `budget` random module elements per prime.
pub fn dcom_oracle(g: &Group, budget: usize) -> Result<SimpleGraph> {
    let n = g.order();
    if n > ORACLE_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "deep commuting oracle",
            limit: ORACLE_ORDER_CAP,
            requested: n,
        });
    }
    let mut out = SimpleGraph::new(GraphKind::Dcom, g.element_names().to_vec());
    for (i, j) in commuting_graph(g).edges() {
        out.add_edge(i, j);
    }
    for (p, k) in factor_prime_powers(n as u64) {
        let basis = cocycle_basis(g, p, k, ORACLE_ORDER_CAP)?;
        let gens = basis.z2_generators();
        for f in &gens {
            let ext = extension_from_cocycle(g, f)?;
            out.intersect_edges(&relative_commuting_graph(&ext));
        }
        if basis.z2_form().size_capped(1 << 20).is_some() {
            basis.z2_form().for_each_element(|vals| {
                prune_by_lifted_products(g, vals, &mut out);
                true
            });
        } else {
            for j in 0..budget {
                let mut bytes = ByteStream::new(derived_rng(p, k, MIX_ORACLE, j as u64));
                let coeffs: Vec<u8> = (0..gens.len()).map(|_| bytes.next_byte()).collect();
                let vals = basis.z2_form().combine(&coeffs);
                let f = Cocycle::from_values(basis.prime_power(), n, vals)?;
                let ext = extension_from_cocycle(g, &f)?;
                out.intersect_edges(&relative_commuting_graph(&ext));
            }
        }
    }
    Ok(out)
}

/// Drops every edge whose two section lifts (x, 0), (y, 0) have different
/// products in the extension defined by `vals`, computed directly from the
/// group law `(x, a)(y, b) = (xy, a + b + f(x, y))`.
fn prune_by_lifted_products(g: &Group, vals: &[u8], out: &mut SimpleGraph) {
    let n = g.order();
    for x in 1..n {
        for y in (x + 1)..n {
            if !out.has_edge(x, y) {
                continue;
            }
            let fwd = (g.mul(x, y), vals[pair_index(n, x, y)]);
            let bwd = (g.mul(y, x), vals[pair_index(n, y, x)]);
            if fwd != bwd {
                out.remove_edge(x, y);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::deep_commuting_graph;
    use crate::group::{direct_product, is_isomorphic, make_family, sg64_182, FamilyKind};
    use crate::ring::PrimePower;
    use crate::DEFAULT_ORACLE_BUDGET;

    fn fam(kind: FamilyKind, param: usize) -> Group {
        make_family(kind, param, 4096).unwrap()
    }

    fn klein() -> Group {
        direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 2)).unwrap()
    }

    fn all_cocycles(g: &Group, p: u64, k: u32) -> Vec<Cocycle> {
        let basis = cocycle_basis(g, p, k, 64).unwrap();
        let pp = basis.prime_power();
        let mut out = Vec::new();
        basis.z2_form().for_each_element(|vals| {
            out.push(Cocycle::from_values(pp, g.order(), vals.to_vec()).unwrap());
            true
        });
        out
    }

    #[test]
    fn klein_cocycles_realize_dihedral_and_quaternion() {
        let v4 = klein();
        let d8 = fam(FamilyKind::Dihedral, 8);
        let q8 = fam(FamilyKind::Quaternion, 8);
        let cocycles = all_cocycles(&v4, 2, 1);
        assert_eq!(cocycles.len(), 16);
        let (mut seen_d8, mut seen_q8, mut abelian) = (0, 0, 0);
        for f in &cocycles {
            let ext = extension_from_cocycle(&v4, f).unwrap();
            assert_eq!(ext.total().order(), 8);
            assert_eq!(ext.kernel().len(), 2);
            if is_isomorphic(ext.total(), &d8).unwrap().is_some() {
                seen_d8 += 1;
            } else if is_isomorphic(ext.total(), &q8).unwrap().is_some() {
                seen_q8 += 1;
            } else {
                assert!(ext.total().is_abelian());
                abelian += 1;
            }
        }
        // one quaternion class, three dihedral classes, two cocycles each
        assert_eq!((seen_d8, seen_q8, abelian), (6, 2, 8));
    }

    #[test]
    fn cyclic_twists_reach_the_nonsplit_extension() {
        let c3 = fam(FamilyKind::Cyclic, 3);
        let c9 = fam(FamilyKind::Cyclic, 9);
        let split = direct_product(&c3, &c3).unwrap();
        let cocycles = all_cocycles(&c3, 3, 1);
        assert_eq!(cocycles.len(), 9);
        let mut split_count = 0;
        let mut nonsplit_count = 0;
        for f in &cocycles {
            let ext = extension_from_cocycle(&c3, f).unwrap();
            if is_isomorphic(ext.total(), &split).unwrap().is_some() {
                split_count += 1;
            } else {
                assert!(is_isomorphic(ext.total(), &c9).unwrap().is_some());
                nonsplit_count += 1;
            }
        }
        // one split class, two classes isomorphic to C9, three cocycles each
        assert_eq!((split_count, nonsplit_count), (3, 6));
    }

    #[test]
    fn zero_cocycle_gives_the_direct_product() {
        let v4 = klein();
        let pp = PrimePower::new(2, 1).unwrap();
        let f = Cocycle::from_values(pp, 4, vec![0; 9]).unwrap();
        let ext = extension_from_cocycle(&v4, &f).unwrap();
        let c2 = fam(FamilyKind::Cyclic, 2);
        let expected = direct_product(&v4, &c2).unwrap();
        assert!(is_isomorphic(ext.total(), &expected).unwrap().is_some());
        assert!(is_cp(&ext));
        assert!(!is_stem(&ext));
    }

    #[test]
    fn validation_rejects_a_non_central_kernel() {
        // sign map S3 -> C2: a surjective homomorphism whose kernel A3 is
        // not central, so it is not a central extension
        let s3 = fam(FamilyKind::Symmetric, 3);
        let c2 = fam(FamilyKind::Cyclic, 2);
        let parity: Vec<u16> = (0..6)
            .map(|x| if [0, 3, 4].contains(&x) { 0 } else { 1 })
            .collect();
        for s in 0..6 {
            for t in 0..6 {
                assert_eq!(
                    parity[s3.mul(s, t)],
                    (parity[s] + parity[t]) % 2,
                    "sign map must be a homomorphism"
                );
            }
        }
        match CentralExtension::new(s3, c2, parity) {
            Err(Error::BadExtension(msg)) => assert!(msg.contains("central")),
            other => panic!("expected BadExtension, got {other:?}"),
        }
    }

    #[test]
    fn quotient_by_the_center_is_a_valid_extension() {
        let d8 = fam(FamilyKind::Dihedral, 8);
        let (v4, proj) = quotient(&d8, &center(&d8)).unwrap();
        let ext = CentralExtension::new(d8.clone(), v4, proj).unwrap();
        assert_eq!(ext.kernel(), center(&d8).as_slice());
        // the center of D8 is its derived subgroup, so this one is stem
        assert!(is_stem(&ext));
        // r and s do not commute upstairs, so it is not commutation
        // preserving: the Klein quotient is abelian but D8 is not
        assert!(!is_cp(&ext));
        let rel = relative_commuting_graph(&ext);
        assert!(rel.edge_count() < commuting_graph(ext.base()).edge_count());
    }

    #[test]
    fn commuting_probability_matches_pair_counts() {
        for (g, num, den) in [
            (fam(FamilyKind::Symmetric, 3), 1, 2),
            (fam(FamilyKind::Dihedral, 8), 5, 8),
            (fam(FamilyKind::Quaternion, 8), 5, 8),
            (fam(FamilyKind::Cyclic, 6), 1, 1),
            (fam(FamilyKind::Alternating, 4), 1, 3),
            (fam(FamilyKind::Symmetric, 4), 5, 24),
            (fam(FamilyKind::Alternating, 5), 1, 12),
        ] {
            let kappa = commuting_probability(&g);
            assert_eq!(kappa, Ratio::new(num, den), "kappa({})", g.name());
            let n = g.order() as u64;
            let pairs = (0..g.order())
                .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
                .filter(|&(x, y)| g.commutes(x, y))
                .count() as u64;
            assert_eq!(kappa, Ratio::new(pairs, n * n), "pair count for {}", g.name());
        }
    }

    #[test]
    fn pullbacks_glue_extensions_over_a_shared_base() {
        let v4 = klein();
        let d8 = fam(FamilyKind::Dihedral, 8);
        let q8 = fam(FamilyKind::Quaternion, 8);
        let mut d8_ext = None;
        let mut q8_ext = None;
        for f in all_cocycles(&v4, 2, 1) {
            let ext = extension_from_cocycle(&v4, &f).unwrap();
            if is_isomorphic(ext.total(), &d8).unwrap().is_some() {
                d8_ext.get_or_insert(ext);
            } else if is_isomorphic(ext.total(), &q8).unwrap().is_some() {
                q8_ext.get_or_insert(ext);
            }
        }
        let d8_ext = d8_ext.unwrap();
        let q8_ext = q8_ext.unwrap();
        let pb = pullback_extension(&d8_ext, &q8_ext).unwrap();
        assert_eq!(pb.total().order(), 16);
        assert_eq!(pb.kernel().len(), 4);
        assert_eq!(pb.base().order(), 4);
        // the commuting probability never rises along a pullback
        let glued = commuting_probability(pb.total());
        let lhs = commuting_probability(d8_ext.total());
        let rhs = commuting_probability(q8_ext.total());
        assert!(glued <= lhs.min(rhs));
        // gluing against the trivial extension changes nothing, on either side
        let triv = trivial_extension(d8_ext.base());
        let same = pullback_extension(&d8_ext, &triv).unwrap();
        assert_eq!(same.total().order(), 8);
        assert!(is_isomorphic(same.total(), &d8).unwrap().is_some());
        let flipped = pullback_extension(&triv, &q8_ext).unwrap();
        assert!(is_isomorphic(flipped.total(), &q8).unwrap().is_some());
        // extensions over different bases refuse to glue, even at equal order
        let c4 = fam(FamilyKind::Cyclic, 4);
        assert!(matches!(
            pullback_extension(&d8_ext, &trivial_extension(&c4)),
            Err(Error::BaseMismatch)
        ));
        assert!(matches!(
            pullback_extension(&d8_ext, &trivial_extension(&d8)),
            Err(Error::BaseMismatch)
        ));
    }

    #[test]
    fn isoclinism_matches_known_families() {
        let d8 = fam(FamilyKind::Dihedral, 8);
        let q8 = fam(FamilyKind::Quaternion, 8);
        let c2 = fam(FamilyKind::Cyclic, 2);
        let c2cube = direct_product(&klein(), &c2).unwrap();
        let d16 = fam(FamilyKind::Dihedral, 16);
        let q16 = fam(FamilyKind::Quaternion, 16);
        let sd16 = fam(FamilyKind::Semidihedral, 16);
        let s3 = fam(FamilyKind::Symmetric, 3);
        let w = is_isoclinic(&d8, &q8).unwrap().expect("D8 ~ Q8");
        assert!(verify_isoclinism(&d8, &q8, &w).unwrap());
        // tampering with the witness breaks verification: collapsing the
        // derived map is no longer injective
        let mut bad = w.clone();
        bad.derived_map[1].1 = bad.derived_map[0].1;
        assert!(!verify_isoclinism(&d8, &q8, &bad).unwrap());
        assert!(is_isoclinic(&d8, &c2cube).unwrap().is_none());
        assert!(is_isoclinic(&d8, &d16).unwrap().is_none());
        // all abelian groups form one isoclinism family
        let c4 = fam(FamilyKind::Cyclic, 4);
        let w = is_isoclinic(&c4, &klein()).unwrap().expect("abelian family");
        assert!(verify_isoclinism(&c4, &klein(), &w).unwrap());
        assert!(is_isoclinic(&fam(FamilyKind::Cyclic, 1), &c2cube).unwrap().is_some());
        assert!(is_isoclinic(&s3, &fam(FamilyKind::Cyclic, 6)).unwrap().is_none());
        assert!(is_isoclinic(&s3, &s3).unwrap().is_some());
        // the three maximal-class families of order 16 are isoclinic
        let w = is_isoclinic(&d16, &q16).unwrap().expect("D16 ~ Q16");
        assert!(verify_isoclinism(&d16, &q16, &w).unwrap());
        let w = is_isoclinic(&d16, &sd16).unwrap().expect("D16 ~ SD16");
        assert!(verify_isoclinism(&d16, &sd16, &w).unwrap());
        assert!(is_isoclinic(&d16, &fam(FamilyKind::Dihedral, 12)).unwrap().is_none());
    }

    #[test]
    fn oracle_agrees_with_the_pairing_definition() {
        let groups = [
            klein(),
            fam(FamilyKind::Cyclic, 6),
            fam(FamilyKind::Symmetric, 3),
            fam(FamilyKind::Dihedral, 8),
            fam(FamilyKind::Quaternion, 8),
            direct_product(&fam(FamilyKind::Cyclic, 3), &fam(FamilyKind::Cyclic, 3)).unwrap(),
            direct_product(&fam(FamilyKind::Cyclic, 2), &fam(FamilyKind::Cyclic, 4)).unwrap(),
            fam(FamilyKind::Cyclic, 12),
            fam(FamilyKind::Dihedral, 12),
            fam(FamilyKind::Alternating, 4),
        ];
        for g in &groups {
            let direct = deep_commuting_graph(g, 64).unwrap();
            let via_extensions = dcom_oracle(g, DEFAULT_ORACLE_BUDGET).unwrap();
            assert!(
                graph_equal(&direct, &via_extensions),
                "oracle disagrees on {}",
                g.name()
            );
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            dcom_oracle(&fam(FamilyKind::Dihedral, 16), 8),
            Err(Error::CapExceeded { .. })
        ));
        let sg = sg64_182();
        let pp = PrimePower::new(2, 6).unwrap();
        let f = Cocycle::from_values(pp, 64, vec![0; 63 * 63]).unwrap();
        assert!(matches!(
            extension_from_cocycle(&sg, &f),
            Err(Error::CapExceeded { .. })
        ));
    }
}
