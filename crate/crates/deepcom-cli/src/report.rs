//! Structured reports for the CLI. Each report serializes to JSON with a
//! `schema` version field and renders to aligned plain text; both forms are
//! deterministic functions of the group.

use deepcom_core::cohomology::{
    bogomolov_multiplier_from_bases, classify, m0_order, prime_power_bases,
    schur_multiplier_from_bases,
};
use deepcom_core::extensions::{commuting_probability, dcom_oracle};
use deepcom_core::graphs::graph_equal;
use deepcom_core::group::{abelianization, center, derived_subgroup, Group};
use deepcom_core::{Error, Result, DEFAULT_ORACLE_BUDGET, ORACLE_ORDER_CAP};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Version stamp carried by every JSON report.
pub const SCHEMA: u32 = 1;

/// Renders invariant factors the way the core's display does: space
/// separated inside brackets, `[]` for the trivial group.
pub fn fmt_invariants(inv: &[u64]) -> String {
    let mut s = String::from("[");
    for (i, d) in inv.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{d}");
    }
    s.push(']');
    s
}

/// Full analysis of one group: structural invariants, the commuting
/// probability as an exact rational, both multipliers, the three graph
/// sizes, and the hierarchy classification with its passed cross-checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub name: String,
    pub order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<u64>,
    pub kappa: String,
    pub schur: Vec<u64>,
    pub bogomolov: Vec<u64>,
    pub m0_order: u64,
    pub epow_edges: usize,
    pub dcom_edges: usize,
    pub com_edges: usize,
    pub class: String,
    pub cross_checks: Vec<String>,
}

pub fn analysis_report(g: &Group, cohomology_cap: usize) -> Result<AnalysisReport> {
    let rep = classify(g, cohomology_cap)?;
    Ok(AnalysisReport {
        schema: SCHEMA,
        name: rep.group_name.clone(),
        order: rep.order,
        center_order: center(g).len(),
        derived_order: derived_subgroup(g).len(),
        abelianization: abelianization(g).0,
        kappa: commuting_probability(g).to_string(),
        schur: rep.schur.0.clone(),
        bogomolov: rep.bogomolov.0.clone(),
        m0_order: rep.m0_order,
        epow_edges: rep.epow.edge_count(),
        dcom_edges: rep.dcom.edge_count(),
        com_edges: rep.com.edge_count(),
        class: rep.class.as_str().to_string(),
        cross_checks: rep.cross_checks.iter().map(|s| s.to_string()).collect(),
    })
}

impl AnalysisReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group:          {}", self.name);
        let _ = writeln!(out, "order:          {}", self.order);
        let _ = writeln!(out, "center order:   {}", self.center_order);
        let _ = writeln!(out, "derived order:  {}", self.derived_order);
        let _ = writeln!(out, "abelianization: {}", fmt_invariants(&self.abelianization));
        let _ = writeln!(out, "kappa:          {}", self.kappa);
        let _ = writeln!(out, "schur:          {}", fmt_invariants(&self.schur));
        let _ = writeln!(out, "bogomolov:      {}", fmt_invariants(&self.bogomolov));
        let _ = writeln!(out, "m0 order:       {}", self.m0_order);
        let _ = writeln!(out, "epow edges:     {}", self.epow_edges);
        let _ = writeln!(out, "dcom edges:     {}", self.dcom_edges);
        let _ = writeln!(out, "com edges:      {}", self.com_edges);
        let _ = writeln!(out, "class:          {}", self.class);
        let _ = writeln!(out, "cross checks:   {}", self.cross_checks.join(" "));
        out
    }
}

/// Just the cohomological side: Schur multiplier, Bogomolov multiplier,
/// and the order of their quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub schema: u32,
    pub name: String,
    pub order: usize,
    pub schur: Vec<u64>,
    pub bogomolov: Vec<u64>,
    pub m0_order: u64,
}

pub fn multiplier_report(g: &Group, cohomology_cap: usize) -> Result<MultiplierReport> {
    let bases = prime_power_bases(g, cohomology_cap)?;
    let schur = schur_multiplier_from_bases(&bases)?;
    let bogomolov = bogomolov_multiplier_from_bases(g, &bases)?;
    let m0 = m0_order(&schur, &bogomolov)?;
    Ok(MultiplierReport {
        schema: SCHEMA,
        name: g.name().to_string(),
        order: g.order(),
        schur: schur.0,
        bogomolov: bogomolov.0,
        m0_order: m0,
    })
}

impl MultiplierReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group:     {}", self.name);
        let _ = writeln!(out, "order:     {}", self.order);
        let _ = writeln!(out, "schur:     {}", fmt_invariants(&self.schur));
        let _ = writeln!(out, "bogomolov: {}", fmt_invariants(&self.bogomolov));
        let _ = writeln!(out, "m0 order:  {}", self.m0_order);
        out
    }
}

/// One census line; the CSV column order is fixed by [`CensusRow::CSV_HEADER`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub name: String,
    pub order: usize,
    pub kappa: String,
    pub schur: Vec<u64>,
    pub bogomolov: Vec<u64>,
    pub class: String,
}

pub fn census_row(name: &str, g: &Group, cohomology_cap: usize) -> Result<CensusRow> {
    let rep = classify(g, cohomology_cap)?;
    Ok(CensusRow {
        name: name.to_string(),
        order: rep.order,
        kappa: commuting_probability(g).to_string(),
        schur: rep.schur.0.clone(),
        bogomolov: rep.bogomolov.0.clone(),
        class: rep.class.as_str().to_string(),
    })
}

impl CensusRow {
    pub const CSV_HEADER: &'static str = "name,order,kappa,schur,bogomolov,class";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.name,
            self.order,
            self.kappa,
            fmt_invariants(&self.schur),
            fmt_invariants(&self.bogomolov),
            self.class
        )
    }
}

/// Renders census rows as an aligned text table, header first.
pub fn render_census_table(rows: &[CensusRow]) -> String {
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                r.order.to_string(),
                r.kappa.clone(),
                fmt_invariants(&r.schur),
                fmt_invariants(&r.bogomolov),
                r.class.clone(),
            ]
        })
        .collect();
    let header = ["name", "order", "kappa", "schur", "bogomolov", "class"];
    let mut width = header.map(str::len);
    for row in &cells {
        for (w, cell) in width.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let push_row = |row: &[&str; 6], out: &mut String| {
        for (i, (cell, w)) in row.iter().zip(width.iter()).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{cell:<w$}");
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    push_row(&header, &mut out);
    for row in &cells {
        let refs = [
            row[0].as_str(),
            row[1].as_str(),
            row[2].as_str(),
            row[3].as_str(),
            row[4].as_str(),
            row[5].as_str(),
        ];
        push_row(&refs, &mut out);
    }
    out
}

/// Outcome of `verify`: which cross-checks ran and passed, and whether the
/// extension oracle was compared or skipped. Any failure surfaces as an
/// error before a report exists, so a report always means "OK".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub name: String,
    pub order: usize,
    pub checks: Vec<String>,
    pub oracle: String,
    pub verdict: String,
}

pub fn verify_group(g: &Group, cohomology_cap: usize) -> Result<VerifyReport> {
    let rep = classify(g, cohomology_cap)?;
    let mut checks: Vec<String> = rep.cross_checks.iter().map(|s| s.to_string()).collect();

    // kappa two ways: conjugacy class count over order, against the literal
    // density of commuting ordered pairs (loops included)
    let kappa = commuting_probability(g);
    let n = g.order();
    let mut pairs: u64 = 0;
    for x in 0..n {
        for y in 0..n {
            if g.commutes(x, y) {
                pairs += 1;
            }
        }
    }
    let total = (n as u64) * (n as u64);
    if *kappa.numer() as u128 * total as u128 != pairs as u128 * *kappa.denom() as u128 {
        return Err(Error::InternalVerificationFailure(format!(
            "kappa {kappa} disagrees with commuting pair count {pairs}/{total} on {}",
            rep.group_name
        )));
    }
    checks.push("kappa-pair-count".to_string());

    let oracle = if n <= ORACLE_ORDER_CAP {
        let oracle_graph = dcom_oracle(g, DEFAULT_ORACLE_BUDGET)?;
        if !graph_equal(&oracle_graph, &rep.dcom) {
            return Err(Error::InternalVerificationFailure(format!(
                "extension oracle disagrees with the pairing computation on {}",
                rep.group_name
            )));
        }
        checks.push("extension-oracle".to_string());
        "ok".to_string()
    } else {
        format!("skipped (order {n} exceeds oracle cap {ORACLE_ORDER_CAP})")
    };

    Ok(VerifyReport {
        schema: SCHEMA,
        name: rep.group_name,
        order: rep.order,
        checks,
        oracle,
        verdict: "OK".to_string(),
    })
}

impl VerifyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group:   {}", self.name);
        let _ = writeln!(out, "order:   {}", self.order);
        let _ = writeln!(out, "checks:  {}", self.checks.join(" "));
        let _ = writeln!(out, "oracle:  {}", self.oracle);
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use deepcom_core::group::{make_family, FamilyKind};
    use deepcom_core::DEFAULT_COHOMOLOGY_CAP;

    fn family(kind: FamilyKind, param: usize) -> Group {
        make_family(kind, param, 1000).unwrap()
    }

    #[test]
    fn analysis_report_round_trips_through_json() {
        let d8 = family(FamilyKind::Dihedral, 8);
        let rep = analysis_report(&d8, DEFAULT_COHOMOLOGY_CAP).unwrap();
        assert_eq!(rep.schema, 1);
        assert_eq!(rep.kappa, "5/8");
        assert_eq!(rep.schur, vec![2]);
        assert_eq!(rep.bogomolov, Vec::<u64>::new());
        assert_eq!(rep.class, "EPow=DCom<Com");
        assert_eq!((rep.epow_edges, rep.dcom_edges, rep.com_edges), (10, 10, 16));

        let json = serde_json::to_string_pretty(&rep).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        let again = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(again, json);
    }

    #[test]
    fn text_rendering_is_stable() {
        let c6 = family(FamilyKind::Cyclic, 6);
        let rep = analysis_report(&c6, DEFAULT_COHOMOLOGY_CAP).unwrap();
        let text = rep.render_text();
        assert!(text.contains("kappa:          1\n"));
        assert!(text.contains("schur:          []\n"));
        assert!(text.contains("class:          EPow=DCom=Com\n"));

        let mult = multiplier_report(&family(FamilyKind::Dihedral, 8), DEFAULT_COHOMOLOGY_CAP)
            .unwrap();
        assert!(mult.render_text().contains("schur:     [2]\n"));
        assert!(mult.render_text().contains("m0 order:  2\n"));
    }

    #[test]
    fn census_rows_and_table_render() {
        let rows = vec![
            census_row("C2", &family(FamilyKind::Cyclic, 2), DEFAULT_COHOMOLOGY_CAP).unwrap(),
            census_row("D8", &family(FamilyKind::Dihedral, 8), DEFAULT_COHOMOLOGY_CAP).unwrap(),
        ];
        assert_eq!(rows[0].csv_line(), "C2,2,1,[],[],EPow=DCom=Com");
        assert_eq!(rows[1].csv_line(), "D8,8,5/8,[2],[],EPow=DCom<Com");
        let table = render_census_table(&rows);
        let mut lines = table.lines();
        assert_eq!(lines.next().unwrap().split_whitespace().next(), Some("name"));
        assert_eq!(table.lines().count(), 3);
        assert!(!table.lines().any(|l| l.ends_with(' ')));
    }

    #[test]
    fn verify_passes_on_sane_groups_and_reports_the_oracle_gate() {
        let q8 = family(FamilyKind::Quaternion, 8);
        let rep = verify_group(&q8, DEFAULT_COHOMOLOGY_CAP).unwrap();
        assert_eq!(rep.verdict, "OK");
        assert_eq!(rep.oracle, "ok");
        assert!(rep.checks.iter().any(|c| c == "kappa-pair-count"));
        assert!(rep.checks.iter().any(|c| c == "extension-oracle"));

        let d16 = family(FamilyKind::Dihedral, 16);
        let rep = verify_group(&d16, DEFAULT_COHOMOLOGY_CAP).unwrap();
        assert_eq!(rep.verdict, "OK");
        assert!(rep.oracle.starts_with("skipped"));
        assert!(!rep.checks.iter().any(|c| c == "extension-oracle"));
    }
}
