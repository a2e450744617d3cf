//! Guards the shipped extension fixtures under fixtures/ at the workspace
//! root. Every file is regenerated from the group families and compared
//! byte for byte; run with UPDATE_FIXTURES=1 to rewrite them after an
//! intentional change.

use deepcom_cli::io::{load_extension, load_group};
use deepcom_core::extensions::{relative_commuting_graph, CentralExtension};
use deepcom_core::graphs::{commuting_graph, graph_equal, SimpleGraph};
use deepcom_core::group::{
    center, is_isomorphic, make_family, quotient, subgroup_generated, FamilyKind, Group,
};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn family(kind: FamilyKind, param: usize) -> Group {
    make_family(kind, param, 1000).unwrap()
}

fn klein() -> Group {
    let c2 = family(FamilyKind::Cyclic, 2);
    let mut v4 = deepcom_core::group::direct_product(&c2, &c2).unwrap();
    v4.set_name("V4");
    v4
}

fn cayley_json(g: &Group) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{{");
    let _ = writeln!(s, "  \"name\": {},", serde_json::to_string(g.name()).unwrap());
    let _ = writeln!(s, "  \"order\": {},", g.order());
    let names: Vec<String> = g
        .element_names()
        .iter()
        .map(|n| serde_json::to_string(n).unwrap())
        .collect();
    let _ = writeln!(s, "  \"elements\": [{}],", names.join(", "));
    let _ = writeln!(s, "  \"table\": [");
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        let comma = if a + 1 < g.order() { "," } else { "" };
        let _ = writeln!(s, "    [{}]{comma}", row.join(","));
    }
    let _ = writeln!(s, "  ]");
    let _ = writeln!(s, "}}");
    s
}

fn extension_json(total_file: &str, base_file: &str, projection: &[u16]) -> String {
    let proj: Vec<String> = projection.iter().map(|p| p.to_string()).collect();
    format!(
        "{{\n  \"total\": \"{total_file}\",\n  \"base\": \"{base_file}\",\n  \"projection\": [{}]\n}}\n",
        proj.join(",")
    )
}

/// Projection of `total` onto `base` through the central quotient: quotient
/// by the center, then relabel by an isomorphism onto `base`. Everything
/// involved enumerates deterministically, so the bytes are reproducible.
fn central_projection(total: &Group, base: &Group) -> Vec<u16> {
    let (q, proj) = quotient(total, &center(total)).unwrap();
    let witness = is_isomorphic(&q, base)
        .unwrap()
        .expect("central quotient must be isomorphic to the base");
    proj.iter().map(|&c| witness[c as usize]).collect()
}

fn regenerate() -> Vec<(&'static str, String)> {
    let v4 = klein();
    let d8 = family(FamilyKind::Dihedral, 8);
    let q8 = family(FamilyKind::Quaternion, 8);
    let d16 = family(FamilyKind::Dihedral, 16);
    vec![
        ("klein.json", cayley_json(&v4)),
        ("d8.json", cayley_json(&d8)),
        ("q8.json", cayley_json(&q8)),
        ("d16.json", cayley_json(&d16)),
        (
            "d8_over_v4.json",
            extension_json("d8.json", "klein.json", &central_projection(&d8, &v4)),
        ),
        (
            "q8_over_v4.json",
            extension_json("q8.json", "klein.json", &central_projection(&q8, &v4)),
        ),
        (
            "d16_over_d8.json",
            extension_json("d16.json", "d8.json", &central_projection(&d16, &d8)),
        ),
    ]
}

#[test]
fn fixtures_on_disk_match_regeneration() {
    let dir = fixtures_dir();
    let files = regenerate();
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        fs::create_dir_all(&dir).unwrap();
        for (name, text) in &files {
            fs::write(dir.join(name), text).unwrap();
        }
    }
    for (name, text) in &files {
        let on_disk = fs::read_to_string(dir.join(name))
            .unwrap_or_else(|e| panic!("{name}: {e}; run with UPDATE_FIXTURES=1 to create"));
        assert_eq!(
            &on_disk, text,
            "{name} drifted from its generator; run with UPDATE_FIXTURES=1 to refresh"
        );
    }
}

#[test]
fn shipped_descriptors_load_as_valid_central_extensions() {
    let dir = fixtures_dir();
    for (name, total_order, base_order) in [
        ("d8_over_v4.json", 8, 4),
        ("q8_over_v4.json", 8, 4),
        ("d16_over_d8.json", 16, 8),
    ] {
        let ext = load_extension(&dir.join(name)).unwrap();
        assert_eq!(ext.total().order(), total_order, "{name}");
        assert_eq!(ext.base().order(), base_order, "{name}");
        assert_eq!(ext.kernel().len(), total_order / base_order, "{name}");
    }
    let v4 = load_group(&dir.join("klein.json")).unwrap();
    assert_eq!(v4.name(), "V4");
    assert!(v4.is_abelian());
}

/// The smaller the central subgroup quotiented away, the fewer pairs of
/// base elements gain commuting lifts: for Z1 contained in Z2 inside the
/// kernel of H -> G, relative-commuting edges via H/Z1 are contained in
/// those via H/Z2.
#[test]
fn quotienting_more_of_the_kernel_only_adds_edges() {
    let dir = fixtures_dir();
    for name in ["d8_over_v4.json", "d16_over_d8.json"] {
        let ext = load_extension(&dir.join(name)).unwrap();
        let h = ext.total();
        let base = ext.base();

        // all subgroups of the kernel, smallest first
        let kernel = ext.kernel();
        let mut subs: Vec<Vec<usize>> = Vec::new();
        for mask in 0..(1u32 << kernel.len()) {
            let gens: Vec<usize> = (0..kernel.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| kernel[i])
                .collect();
            let sub = subgroup_generated(h, &gens);
            if sub.iter().all(|x| kernel.contains(x)) && !subs.contains(&sub) {
                subs.push(sub);
            }
        }
        subs.sort_by_key(|s| s.len());

        let graph_via = |z: &[usize]| -> SimpleGraph {
            let (hz, to_coset) = quotient(h, z).unwrap();
            // induced projection H/Z -> G: push any coset representative
            // through the original projection
            let mut proj = vec![u16::MAX; hz.order()];
            for t in 0..h.order() {
                proj[to_coset[t] as usize] = ext.projection()[t];
            }
            let mid = CentralExtension::new(hz, base.clone(), proj).unwrap();
            relative_commuting_graph(&mid)
        };

        let graphs: Vec<SimpleGraph> = subs.iter().map(|z| graph_via(z)).collect();
        for (z1, g1) in subs.iter().zip(graphs.iter()) {
            for (z2, g2) in subs.iter().zip(graphs.iter()) {
                if !z1.iter().all(|x| z2.binary_search(x).is_ok()) {
                    continue;
                }
                for (a, b) in g1.edges() {
                    assert!(
                        g2.has_edge(a, b),
                        "{name}: edge ({a},{b}) via |Z1|={} missing via |Z2|={}",
                        z1.len(),
                        z2.len()
                    );
                }
            }
        }

        // the extremes are the extension's own graph and the plain
        // commuting graph of the base
        assert!(graph_equal(&graphs[0], &relative_commuting_graph(&ext)));
        assert!(graph_equal(graphs.last().unwrap(), &commuting_graph(base)));
    }
}
