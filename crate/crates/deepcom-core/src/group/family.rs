//! Built-in group families: cyclic, dihedral, generalized quaternion,
//! semidihedral, symmetric, alternating, plus one fixture of order 64.

use super::{center, conjugacy_classes, element_order, Group};
use crate::error::{Error, Result};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Cyclic,
    Dihedral,
    Quaternion,
    Semidihedral,
    Symmetric,
    Alternating,
}

impl FamilyKind {
    pub fn letter(self) -> &'static str {
        match self {
            FamilyKind::Cyclic => "C",
            FamilyKind::Dihedral => "D",
            FamilyKind::Quaternion => "Q",
            FamilyKind::Semidihedral => "SD",
            FamilyKind::Symmetric => "S",
            FamilyKind::Alternating => "A",
        }
    }
}

/// Largest symmetric/alternating degree we realize; S7 already has 5040
/// elements and a 25M-entry table.
const MAX_PERM_DEGREE: usize = 7;

/// Builds a family member. `param` follows the usual naming: the order for
/// C/D/Q/SD, the degree for S/A.
pub fn make_family(kind: FamilyKind, param: usize, max_order: usize) -> Result<Group> {
    let order = family_order(kind, param)?;
    if order > max_order {
        return Err(Error::CapExceeded {
            what: "group order",
            limit: max_order,
            requested: order,
        });
    }
    let name = format!("{}{param}", kind.letter());
    Ok(match kind {
        FamilyKind::Cyclic => cyclic(name, param),
        FamilyKind::Dihedral => dihedral(name, param),
        FamilyKind::Quaternion => quaternion(name, param),
        FamilyKind::Semidihedral => semidihedral(name, param),
        FamilyKind::Symmetric => permutation_group(name, param, false),
        FamilyKind::Alternating => permutation_group(name, param, true),
    })
}

/// Validates a family parameter and returns the member's order without
/// building anything. The spec parser leans on this for early rejection.
pub fn family_order(kind: FamilyKind, param: usize) -> Result<usize> {
    let order = match kind {
        FamilyKind::Cyclic => {
            if param == 0 {
                return Err(Error::BadParameter("C0 is not a group".into()));
            }
            param
        }
        FamilyKind::Dihedral => {
            if param < 4 || param % 2 != 0 {
                return Err(Error::BadParameter(format!(
                    "D{param}: dihedral groups here have even order at least 4"
                )));
            }
            param
        }
        FamilyKind::Quaternion => {
            if param < 8 || !param.is_power_of_two() {
                return Err(Error::BadParameter(format!(
                    "Q{param}: generalized quaternion groups have order 2^k, k >= 3"
                )));
            }
            param
        }
        FamilyKind::Semidihedral => {
            if param < 16 || !param.is_power_of_two() {
                return Err(Error::BadParameter(format!(
                    "SD{param}: semidihedral groups have order 2^k, k >= 4"
                )));
            }
            param
        }
        FamilyKind::Symmetric | FamilyKind::Alternating => {
            if param == 0 || param > MAX_PERM_DEGREE {
                return Err(Error::BadParameter(format!(
                    "{}{param}: degree must be between 1 and {MAX_PERM_DEGREE}",
                    kind.letter()
                )));
            }
            let f: usize = (1..=param).product();
            if kind == FamilyKind::Symmetric || param < 2 {
                f
            } else {
                f / 2
            }
        }
    };
    Ok(order)
}

fn power_name(gen: &str, e: usize) -> String {
    match e {
        0 => "1".into(),
        1 => gen.into(),
        _ => format!("{gen}^{e}"),
    }
}

fn cyclic(name: String, n: usize) -> Group {
    let names: Vec<String> = (0..n).map(|i| power_name("g", i)).collect();
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u16;
        }
    }
    Group::trusted(name, names, table)
}

/// Order-n dihedral group, n = 2m: rotations r^i at 0..m, reflections s*r^i
/// at m..n, with s r s = r^{-1}.
fn dihedral(name: String, n: usize) -> Group {
    let m = n / 2;
    let mut names: Vec<String> = (0..m).map(|i| power_name("r", i)).collect();
    for i in 0..m {
        names.push(if i == 0 {
            "s".into()
        } else {
            format!("s*{}", power_name("r", i))
        });
    }
    let mut table = vec![0u16; n * n];
    for i in 0..m {
        for j in 0..m {
            table[i * n + j] = ((i + j) % m) as u16;
            table[i * n + (m + j)] = (m + (m + j - i) % m) as u16;
            table[(m + i) * n + j] = (m + (i + j) % m) as u16;
            table[(m + i) * n + (m + j)] = ((m + j - i) % m) as u16;
        }
    }
    Group::trusted(name, names, table)
}

/// Order-n generalized quaternion group, n = 2^k: a of order m = n/2 at
/// 0..m, b*a^i at m..n, with b^2 = a^{m/2} and b a b^{-1} = a^{-1}.
fn quaternion(name: String, n: usize) -> Group {
    let m = n / 2;
    let names = two_generator_names(m, "a", "b");
    let mut table = vec![0u16; n * n];
    for i in 0..m {
        for j in 0..m {
            table[i * n + j] = ((i + j) % m) as u16;
            table[i * n + (m + j)] = (m + (m + j - i) % m) as u16;
            table[(m + i) * n + j] = (m + (i + j) % m) as u16;
            table[(m + i) * n + (m + j)] = ((m / 2 + m + j - i) % m) as u16;
        }
    }
    Group::trusted(name, names, table)
}

/// Order-n semidihedral group, n = 2^k: a of order m = n/2, b^2 = 1,
/// b a b = a^{m/2 - 1}.
fn semidihedral(name: String, n: usize) -> Group {
    let m = n / 2;
    let t = m / 2 - 1;
    let names = two_generator_names(m, "a", "b");
    let mut table = vec![0u16; n * n];
    for i in 0..m {
        for j in 0..m {
            table[i * n + j] = ((i + j) % m) as u16;
            table[i * n + (m + j)] = (m + (i * t + j) % m) as u16;
            table[(m + i) * n + j] = (m + (i + j) % m) as u16;
            table[(m + i) * n + (m + j)] = ((i * t + j) % m) as u16;
        }
    }
    Group::trusted(name, names, table)
}

fn two_generator_names(m: usize, a: &str, b: &str) -> Vec<String> {
    let mut names: Vec<String> = (0..m).map(|i| power_name(a, i)).collect();
    for i in 0..m {
        names.push(if i == 0 {
            b.into()
        } else {
            format!("{b}*{}", power_name(a, i))
        });
    }
    names
}

fn perm_parity_even(p: &[u8]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[j] < p[i] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Lexicographic rank of a permutation of 0..d-1.
fn lex_rank(p: &[u8], fact: &[usize]) -> usize {
    let d = p.len();
    let mut rank = 0;
    for i in 0..d {
        let mut smaller_after = 0;
        for j in (i + 1)..d {
            if p[j] < p[i] {
                smaller_after += 1;
            }
        }
        rank += smaller_after * fact[d - 1 - i];
    }
    rank
}

fn next_permutation(p: &mut [u8]) -> bool {
    let d = p.len();
    if d < 2 {
        return false;
    }
    let mut i = d - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = d - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn perm_cycle_name(p: &[u8]) -> String {
    let d = p.len();
    let mut seen = vec![false; d];
    let mut out = String::new();
    for start in 0..d {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut c = start;
        let mut first = true;
        while !seen[c] {
            seen[c] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(c + 1).to_string());
            c = p[c] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// Symmetric or alternating group of degree d. Elements are permutations in
/// lexicographic order (identity first); the product applies the right
/// factor first: (p*q)(i) = p(q(i)).
///
/// In lexicographic order permutations pair up by a swap of their last two
/// moved entries, so exactly one of ranks {2k, 2k+1} is even and the
/// alternating index of an even permutation is its rank divided by 2.
fn permutation_group(name: String, d: usize, even_only: bool) -> Group {
    let mut fact = vec![1usize; d + 1];
    for i in 1..=d {
        fact[i] = fact[i - 1] * i;
    }
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut p: Vec<u8> = (0..d as u8).collect();
    loop {
        if !even_only || perm_parity_even(&p) {
            perms.push(p.clone());
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    let n = perms.len();
    let names: Vec<String> = perms.iter().map(|p| perm_cycle_name(p)).collect();
    let index_of = |p: &[u8]| -> usize {
        let r = lex_rank(p, &fact);
        if even_only && d >= 2 {
            r / 2
        } else {
            r
        }
    };
    let mut table = vec![0u16; n * n];
    let mut comp = vec![0u8; d];
    for (i, pi) in perms.iter().enumerate() {
        for (j, pj) in perms.iter().enumerate() {
            for k in 0..d {
                comp[k] = pi[pj[k] as usize];
            }
            table[i * n + j] = index_of(&comp) as u16;
        }
    }
    Group::trusted(name, names, table)
}

/// The group of order 64 used as the `sg64_182` fixture: a semidirect
/// product of C8 by Q8 where Q8 acts through its Klein quotient as the full
/// unit group of Z/8. Pairs (a, q) sit at index q*8 + a and multiply as
/// (a1, q1)(a2, q2) = (a1 + act(q1)*a2 mod 8, q1 q2).
pub fn sg64_182() -> Group {
    let q8 = make_family(FamilyKind::Quaternion, 8, 64).expect("Q8 family");
    // act[q] for q in Q8 element order 1,a,a^2,a^3,b,b*a,b*a^2,b*a^3;
    // a acts as x -> x^3 and b as x -> x^5, so the kernel is {1, a^2}.
    const ACT: [usize; 8] = [1, 3, 1, 3, 5, 7, 5, 7];
    let n = 64usize;
    let mut table = vec![0u16; n * n];
    for q1 in 0..8 {
        for a1 in 0..8 {
            let i = q1 * 8 + a1;
            for q2 in 0..8 {
                let qp = q8.mul(q1, q2);
                for a2 in 0..8 {
                    let ap = (a1 + ACT[q1] * a2) % 8;
                    table[i * n + (q2 * 8 + a2)] = (qp * 8 + ap) as u16;
                }
            }
        }
    }
    let mut names = Vec::with_capacity(n);
    for q in 0..8 {
        for a in 0..8 {
            let xpart = power_name("x", a);
            names.push(match (a, q) {
                (0, _) => q8.element_name(q).to_string(),
                (_, 0) => xpart,
                _ => format!("{xpart}*{}", q8.element_name(q)),
            });
        }
    }
    let g = Group::trusted("sg64_182".into(), names, table);
    // Construction gate: these values pin down which action was frozen.
    assert_eq!(center(&g).len(), 4, "sg64_182 center size");
    assert_eq!(conjugacy_classes(&g).len(), 16, "sg64_182 class count");
    let mut hist = [0usize; 65];
    for x in 0..n {
        hist[element_order(&g, x)] += 1;
    }
    assert_eq!(
        (hist[1], hist[2], hist[4], hist[8]),
        (1, 3, 44, 16),
        "sg64_182 element order histogram"
    );
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{element_order, subgroup_generated};

    const CAP: usize = 10_000;

    #[test]
    fn cyclic_basics() {
        let g = make_family(FamilyKind::Cyclic, 6, CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(), "C6");
        assert_eq!(g.element_name(0), "1");
        assert_eq!(g.element_name(2), "g^2");
        assert_eq!(element_order(&g, 1), 6);
        assert!(g.is_abelian());
        let c1 = make_family(FamilyKind::Cyclic, 1, CAP).unwrap();
        assert_eq!(c1.order(), 1);
    }

    #[test]
    fn dihedral_relations() {
        let g = make_family(FamilyKind::Dihedral, 8, CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        let (r, s) = (1, 4);
        assert_eq!(element_order(&g, r), 4);
        assert_eq!(element_order(&g, s), 2);
        // s r s = r^{-1}
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        assert_eq!(g.element_name(5), "s*r");
        // every reflection is an involution
        for i in 4..8 {
            assert_eq!(element_order(&g, i), 2);
        }
    }

    #[test]
    fn quaternion_relations() {
        let g = make_family(FamilyKind::Quaternion, 8, CAP).unwrap();
        let (a, b) = (1, 4);
        assert_eq!(element_order(&g, a), 4);
        assert_eq!(element_order(&g, b), 4);
        // b^2 = a^2 and b a b^{-1} = a^{-1}
        assert_eq!(g.mul(b, b), g.mul(a, a));
        assert_eq!(g.mul(g.mul(b, a), g.inv(b)), g.inv(a));
        // unique involution
        let invols: Vec<usize> = (1..8).filter(|&x| element_order(&g, x) == 2).collect();
        assert_eq!(invols, vec![2]);
        let q16 = make_family(FamilyKind::Quaternion, 16, CAP).unwrap();
        assert_eq!(q16.order(), 16);
        let invols16: Vec<usize> = (1..16).filter(|&x| element_order(&q16, x) == 2).collect();
        assert_eq!(invols16.len(), 1);
    }

    #[test]
    fn semidihedral_relations() {
        let g = make_family(FamilyKind::Semidihedral, 16, CAP).unwrap();
        let (a, b) = (1, 8);
        assert_eq!(element_order(&g, a), 8);
        assert_eq!(element_order(&g, b), 2);
        // b a b = a^3
        let a3 = g.mul(g.mul(a, a), a);
        assert_eq!(g.mul(g.mul(b, a), b), a3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn symmetric_composition_applies_right_factor_first() {
        let g = make_family(FamilyKind::Symmetric, 3, CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_name(0), "1");
        let swap01 = (0..6).find(|&x| g.element_name(x) == "(1 2)").unwrap();
        let swap12 = (0..6).find(|&x| g.element_name(x) == "(2 3)").unwrap();
        assert_eq!(g.element_name(g.mul(swap01, swap12)), "(1 2 3)");
        assert_eq!(g.element_name(g.mul(swap12, swap01)), "(1 3 2)");
    }

    #[test]
    fn symmetric_4_and_alternating_4() {
        let s4 = make_family(FamilyKind::Symmetric, 4, CAP).unwrap();
        assert_eq!(s4.order(), 24);
        let a4 = make_family(FamilyKind::Alternating, 4, CAP).unwrap();
        assert_eq!(a4.order(), 12);
        // A4 has no element of order 4
        assert!((0..12).all(|x| element_order(&a4, x) != 4));
        // the 3-cycles generate A4
        let c3 = (0..12).find(|&x| element_order(&a4, x) == 3).unwrap();
        assert!(subgroup_generated(&a4, &[c3]).len() == 3);
    }

    #[test]
    fn alternating_5_is_order_60() {
        let g = make_family(FamilyKind::Alternating, 5, CAP).unwrap();
        assert_eq!(g.order(), 60);
        // orders present in A5: 1, 2, 3, 5
        let mut hist = [0usize; 6];
        for x in 0..60 {
            hist[element_order(&g, x)] += 1;
        }
        assert_eq!(hist, [0, 1, 15, 20, 0, 24]);
    }

    #[test]
    fn family_parameter_validation() {
        for (kind, param) in [
            (FamilyKind::Cyclic, 0),
            (FamilyKind::Dihedral, 5),
            (FamilyKind::Dihedral, 2),
            (FamilyKind::Quaternion, 6),
            (FamilyKind::Quaternion, 4),
            (FamilyKind::Semidihedral, 8),
            (FamilyKind::Semidihedral, 24),
            (FamilyKind::Symmetric, 8),
            (FamilyKind::Alternating, 9),
        ] {
            assert!(
                matches!(make_family(kind, param, CAP), Err(Error::BadParameter(_))),
                "{kind:?} {param} should be rejected"
            );
        }
    }

    #[test]
    fn family_order_cap() {
        assert!(matches!(
            make_family(FamilyKind::Symmetric, 7, 100),
            Err(Error::CapExceeded { requested: 5040, .. })
        ));
    }

    #[test]
    fn fixture_group_passes_its_gate() {
        let g = sg64_182();
        assert_eq!(g.order(), 64);
        assert_eq!(g.name(), "sg64_182");
        assert_eq!(g.element_name(0), "1");
        assert!(!g.is_abelian());
    }
}
