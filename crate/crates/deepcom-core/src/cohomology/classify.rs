//! Where a group falls in the chain EPow <= DCom <= Com, with built-in
//! cross-checks tying the graphs to the multipliers. Every cross-check
//! failure is an error, never a silent repair.

use super::{
    bogomolov_multiplier_from_bases, deep_commuting_graph_from_bases, m0_order,
    prime_power_bases, schur_multiplier_from_bases,
};
use crate::error::{Error, Result};
use crate::graphs::{
    commuting_graph, enhanced_power_graph, graph_equal, is_spanning_subgraph, SimpleGraph,
};
use crate::group::{subgroups_up_to_conjugacy, AbelianInvariants, Group, SubgroupClass};
use crate::SUBGROUP_ENUM_CAP;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HierarchyClass {
    /// EPow = DCom = Com
    AllEqual,
    /// EPow = DCom < Com
    DeepMatchesEnhanced,
    /// EPow < DCom = Com
    DeepMatchesCommuting,
    /// EPow < DCom < Com
    AllDistinct,
}

impl HierarchyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            HierarchyClass::AllEqual => "EPow=DCom=Com",
            HierarchyClass::DeepMatchesEnhanced => "EPow=DCom<Com",
            HierarchyClass::DeepMatchesCommuting => "EPow<DCom=Com",
            HierarchyClass::AllDistinct => "EPow<DCom<Com",
        }
    }
}

impl core::fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub group_name: String,
    pub order: usize,
    pub class: HierarchyClass,
    pub schur: AbelianInvariants,
    pub bogomolov: AbelianInvariants,
    /// |M| / |B0|; 1 exactly when DCom = Com.
    pub m0_order: u64,
    pub epow: SimpleGraph,
    pub dcom: SimpleGraph,
    pub com: SimpleGraph,
    /// Names of the cross-checks that ran and passed. The subgroup-based
    /// checks only run up to [`SUBGROUP_ENUM_CAP`], so this records which
    /// facts actually defend the classification.
    pub cross_checks: Vec<&'static str>,
}

/// Computes the three graphs and both multipliers, classifies the group in
/// the hierarchy, and cross-checks the structural facts relating them.
pub fn classify(g: &Group, cap: usize) -> Result<ClassifyReport> {
    let bases = prime_power_bases(g, cap)?;
    let epow = enhanced_power_graph(g);
    let dcom = deep_commuting_graph_from_bases(g, &bases);
    let com = commuting_graph(g);
    let schur = schur_multiplier_from_bases(&bases)?;
    let bogomolov = bogomolov_multiplier_from_bases(g, &bases)?;
    let m0 = m0_order(&schur, &bogomolov)?;

    let mut cross_checks = Vec::new();
    chain_inclusion(&epow, &dcom, &com)?;
    cross_checks.push("inclusion-chain");
    multiplier_equality_criterion(&dcom, &com, m0)?;
    cross_checks.push("multiplier-equality");
    let epow_eq_dcom = graph_equal(&epow, &dcom);
    let dcom_eq_com = graph_equal(&dcom, &com);
    if g.order() <= SUBGROUP_ENUM_CAP {
        let classes = subgroups_up_to_conjugacy(g)?.classes;
        abelian_lift_criterion(&dcom, &classes, epow_eq_dcom)?;
        cross_checks.push("abelian-lift");
        pxp_criterion(&classes, graph_equal(&epow, &com))?;
        cross_checks.push("pxp-subgroup");
        local_multiplier_remark(g, &classes, &schur, epow_eq_dcom)?;
        cross_checks.push("local-multiplier");
    }

    let class = match (epow_eq_dcom, dcom_eq_com) {
        (true, true) => HierarchyClass::AllEqual,
        (true, false) => HierarchyClass::DeepMatchesEnhanced,
        (false, true) => HierarchyClass::DeepMatchesCommuting,
        (false, false) => HierarchyClass::AllDistinct,
    };
    Ok(ClassifyReport {
        group_name: g.name().to_string(),
        order: g.order(),
        class,
        schur,
        bogomolov,
        m0_order: m0,
        epow,
        dcom,
        com,
        cross_checks,
    })
}

/// The three graphs always form a chain of spanning subgraphs.
fn chain_inclusion(epow: &SimpleGraph, dcom: &SimpleGraph, com: &SimpleGraph) -> Result<()> {
    if !is_spanning_subgraph(epow, dcom) {
        return Err(Error::TheoremViolation(
            "enhanced power graph is not contained in the deep commuting graph".into(),
        ));
    }
    if !is_spanning_subgraph(dcom, com) {
        return Err(Error::TheoremViolation(
            "deep commuting graph is not contained in the commuting graph".into(),
        ));
    }
    Ok(())
}

/// DCom = Com exactly when the Bogomolov multiplier exhausts the Schur
/// multiplier.
fn multiplier_equality_criterion(dcom: &SimpleGraph, com: &SimpleGraph, m0: u64) -> Result<()> {
    let graphs_equal = graph_equal(dcom, com);
    if graphs_equal != (m0 == 1) {
        return Err(Error::TheoremViolation(format!(
            "deep commuting graph {} the commuting graph but |M|/|B0| = {m0}",
            if graphs_equal { "equals" } else { "differs from" }
        )));
    }
    Ok(())
}

/// Whether every pair of elements of the subgroup is adjacent in the graph
/// (identity pairs included; they always are).
fn fully_adjacent(graph: &SimpleGraph, members: &[usize]) -> bool {
    members.iter().enumerate().all(|(i, &x)| {
        members[i + 1..]
            .iter()
            .all(|&y| graph.has_edge(x, y))
    })
}

/// EPow = DCom exactly when no noncyclic abelian subgroup has all its
/// pairs deep-commuting: such a subgroup, made of pairwise-liftable
/// elements generating noncyclic subgroups, is precisely what separates
/// the graphs, because a deep edge outside EPow generates one.
fn abelian_lift_criterion(
    dcom: &SimpleGraph,
    classes: &[SubgroupClass],
    epow_eq_dcom: bool,
) -> Result<()> {
    let witness = classes.iter().find(|c| {
        c.is_abelian && !c.is_cyclic && fully_adjacent(dcom, &c.representative)
    });
    if epow_eq_dcom != witness.is_none() {
        return Err(Error::TheoremViolation(match witness {
            Some(c) => format!(
                "EPow = DCom yet a noncyclic abelian subgroup of order {} is fully \
                 deep-commuting",
                c.order
            ),
            None => "EPow < DCom without a fully deep-commuting noncyclic abelian subgroup"
                .into(),
        }));
    }
    Ok(())
}

/// EPow = Com exactly when the group has no rank-two elementary abelian
/// subgroup (equivalently, every abelian subgroup is cyclic).
fn pxp_criterion(classes: &[SubgroupClass], epow_eq_com: bool) -> Result<()> {
    let has_pxp = classes.iter().any(|c| {
        !c.is_cyclic && {
            let f = crate::ring::factor_prime_powers(c.order as u64);
            f.len() == 1 && f[0].1 == 2
        }
    });
    if has_pxp == epow_eq_com {
        return Err(Error::TheoremViolation(if has_pxp {
            "EPow = Com despite a rank-two elementary abelian subgroup".into()
        } else {
            "EPow < Com without any rank-two elementary abelian subgroup".into()
        }));
    }
    Ok(())
}

/// If some p*p subgroup exists while p does not divide |M|, the whole
/// p-part of every pairing vanishes, that subgroup is fully
/// deep-commuting, and EPow must fall short of DCom.
fn local_multiplier_remark(
    g: &Group,
    classes: &[SubgroupClass],
    schur: &AbelianInvariants,
    epow_eq_dcom: bool,
) -> Result<()> {
    let m_order = schur.total_order();
    for (p, _) in crate::ring::factor_prime_powers(g.order() as u64) {
        let has_pxp = classes
            .iter()
            .any(|c| !c.is_cyclic && c.order as u64 == p * p);
        if has_pxp && m_order % p != 0 && epow_eq_dcom {
            return Err(Error::TheoremViolation(format!(
                "a {p}x{p} subgroup with no {p}-part in the multiplier forces EPow < DCom"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_family, sg64_182, FamilyKind};

    const CAP: usize = 64;

    fn fam(kind: FamilyKind, p: usize) -> Group {
        make_family(kind, p, 10_000).unwrap()
    }

    fn cyclic_product(a: usize, b: usize) -> Group {
        direct_product(&fam(FamilyKind::Cyclic, a), &fam(FamilyKind::Cyclic, b)).unwrap()
    }

    #[test]
    fn classification_of_small_groups() {
        let cases: Vec<(Group, HierarchyClass)> = vec![
            (fam(FamilyKind::Cyclic, 6), HierarchyClass::AllEqual),
            (fam(FamilyKind::Symmetric, 3), HierarchyClass::AllEqual),
            (fam(FamilyKind::Quaternion, 8), HierarchyClass::AllEqual),
            (cyclic_product(2, 2), HierarchyClass::DeepMatchesEnhanced),
            (fam(FamilyKind::Dihedral, 8), HierarchyClass::DeepMatchesEnhanced),
            (cyclic_product(3, 3), HierarchyClass::DeepMatchesEnhanced),
            (fam(FamilyKind::Alternating, 4), HierarchyClass::DeepMatchesEnhanced),
            (cyclic_product(2, 4), HierarchyClass::AllDistinct),
            (cyclic_product(4, 4), HierarchyClass::AllDistinct),
        ];
        for (g, want) in cases {
            let report = classify(&g, CAP).unwrap();
            assert_eq!(report.class, want, "class of {}", g.name());
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let g = fam(FamilyKind::Dihedral, 8);
        let report = classify(&g, CAP).unwrap();
        assert_eq!(report.group_name, "D8");
        assert_eq!(report.order, 8);
        assert_eq!(report.schur.0, vec![2]);
        assert!(report.bogomolov.is_trivial());
        assert_eq!(report.m0_order, 2);
        assert_eq!(report.epow.edge_count(), 10);
        assert_eq!(report.dcom.edge_count(), 10);
        assert_eq!(report.com.edge_count(), 16);
        assert_eq!(report.class.to_string(), "EPow=DCom<Com");
        // order 8 is far below the subgroup cap, so all five checks ran
        assert_eq!(
            report.cross_checks,
            vec![
                "inclusion-chain",
                "multiplier-equality",
                "abelian-lift",
                "pxp-subgroup",
                "local-multiplier"
            ]
        );
    }

    #[test]
    fn the_order_64_group_separates_deep_from_enhanced() {
        let report = classify(&sg64_182(), CAP).unwrap();
        assert_eq!(report.class, HierarchyClass::DeepMatchesCommuting);
        assert_eq!(report.schur.0, vec![2]);
        assert_eq!(report.bogomolov.0, vec![2]);
        assert_eq!(report.m0_order, 1);
    }

    #[test]
    fn klein_group_report() {
        let report = classify(&cyclic_product(2, 2), CAP).unwrap();
        assert_eq!(report.m0_order, 2);
        assert_eq!(report.dcom.edge_count(), 3);
        assert_eq!(report.com.edge_count(), 6);
    }
}
