//! Simple graphs on group elements: the commuting graph, the enhanced power
//! graph, induced subgraphs, isomorphism testing, blow-up decomposition and
//! deterministic emitters.

use crate::error::{Error, Result};
use crate::group::{center, element_order, is_subgroup, subgroup_generated, Group};
use crate::GRAPH_ISO_CAP;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Com,
    Epow,
    Dcom,
    Relcom,
    Other,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Com => "com",
            GraphKind::Epow => "epow",
            GraphKind::Dcom => "dcom",
            GraphKind::Relcom => "relcom",
            GraphKind::Other => "other",
        }
    }
}

impl core::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Undirected loopless graph over vertices 0..n with bitset adjacency rows.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    kind: GraphKind,
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    labels: Vec<String>,
}

impl SimpleGraph {
    pub fn new(kind: GraphKind, labels: Vec<String>) -> SimpleGraph {
        let n = labels.len();
        let stride = n.div_ceil(64);
        SimpleGraph {
            kind,
            n,
            stride,
            bits: vec![0u64; n * stride],
            labels,
        }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n && i != j, "bad edge ({i},{j})");
        self.bits[i * self.stride + j / 64] |= 1u64 << (j % 64);
        self.bits[j * self.stride + i / 64] |= 1u64 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n);
        i != j && self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "bad edge ({i},{j})");
        self.bits[i * self.stride + j / 64] &= !(1u64 << (j % 64));
        self.bits[j * self.stride + i / 64] &= !(1u64 << (i % 64));
    }

    /// Keeps only the edges present in both graphs. Kind and labels stay.
    pub fn intersect_edges(&mut self, other: &SimpleGraph) {
        assert_eq!(self.n, other.n, "vertex count mismatch");
        for (w, o) in self.bits.iter_mut().zip(other.bits.iter()) {
            *w &= o;
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.bits[v * self.stride..(v + 1) * self.stride]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges (i, j) with i < j, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Adjacency-only equality: kinds and labels are presentation, not content.
pub fn graph_equal(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.n == b.n && a.bits == b.bits
}

/// Whether every edge of `sub` is an edge of `sup` (same vertex set).
pub fn is_spanning_subgraph(sub: &SimpleGraph, sup: &SimpleGraph) -> bool {
    if sub.n != sup.n {
        return false;
    }
    sub.bits
        .iter()
        .zip(sup.bits.iter())
        .all(|(&s, &t)| s & !t == 0)
}

/// x ~ y iff xy = yx.
pub fn commuting_graph(g: &Group) -> SimpleGraph {
    let mut graph = SimpleGraph::new(GraphKind::Com, g.element_names().to_vec());
    for x in 0..g.order() {
        for y in (x + 1)..g.order() {
            if g.commutes(x, y) {
                graph.add_edge(x, y);
            }
        }
    }
    graph
}

/// x ~ y iff <x, y> is cyclic; built as the union of cliques over the
/// distinct cyclic subgroups.
pub fn enhanced_power_graph(g: &Group) -> SimpleGraph {
    let mut graph = SimpleGraph::new(GraphKind::Epow, g.element_names().to_vec());
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for z in 0..g.order() {
        let mut cyc = Vec::with_capacity(element_order(g, z));
        let mut y = 0usize;
        loop {
            cyc.push(y);
            y = g.mul(y, z);
            if y == 0 {
                break;
            }
        }
        cyc.sort_unstable();
        if !seen.insert(cyc.clone()) {
            continue;
        }
        for (i, &a) in cyc.iter().enumerate() {
            for &b in &cyc[i + 1..] {
                graph.add_edge(a, b);
            }
        }
    }
    graph
}

/// Subgraph on the given vertices (which become 0..k in the given order).
pub fn induced_subgraph(g: &SimpleGraph, verts: &[usize]) -> SimpleGraph {
    let labels = verts.iter().map(|&v| g.labels[v].clone()).collect();
    let mut out = SimpleGraph::new(g.kind, labels);
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                out.add_edge(i, j);
            }
        }
    }
    out
}

/// Stable vertex colors under iterated neighborhood refinement; the partner
/// map makes colors comparable across two graphs.
fn refine_colors(graphs: [&SimpleGraph; 2]) -> [Vec<u64>; 2] {
    let mut colors: [Vec<u64>; 2] =
        [0, 1].map(|s| (0..graphs[s].n).map(|v| graphs[s].degree(v) as u64).collect());
    for _ in 0..graphs[0].n.max(1) {
        // Joint canonical renumbering of (color, neighbor color multiset).
        let mut table: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let mut sigs: [Vec<(u64, Vec<u64>)>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for v in 0..graphs[s].n {
                let mut nb: Vec<u64> = (0..graphs[s].n)
                    .filter(|&u| graphs[s].has_edge(v, u))
                    .map(|u| colors[s][u])
                    .collect();
                nb.sort_unstable();
                sigs[s].push((colors[s][v], nb));
            }
        }
        for s in 0..2 {
            for sig in &sigs[s] {
                let next = table.len() as u64;
                table.entry(sig.clone()).or_insert(next);
            }
        }
        let new: [Vec<u64>; 2] =
            [0, 1].map(|s| sigs[s].iter().map(|sig| table[sig]).collect());
        if new == colors {
            break;
        }
        colors = new;
    }
    colors
}

/// Graph isomorphism by color refinement plus backtracking, returning a
/// vertex map a -> b on success. Capped because it is exponential in the
/// worst case.
pub fn graph_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<Option<Vec<usize>>> {
    if a.n != b.n || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    if a.n > GRAPH_ISO_CAP {
        return Err(Error::CapExceeded {
            what: "graph isomorphism order",
            limit: GRAPH_ISO_CAP,
            requested: a.n,
        });
    }
    let colors = refine_colors([a, b]);
    let mut ca = colors[0].clone();
    let mut cb = colors[1].clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Ok(None);
    }
    // Match vertices in order of rarest color first.
    let mut color_count: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &colors[0] {
        *color_count.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (color_count[&colors[0][v]], colors[0][v], v));
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    fn go(
        a: &SimpleGraph,
        b: &SimpleGraph,
        colors: &[Vec<u64>; 2],
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..b.n {
            if used[w] || colors[1][w] != colors[0][v] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| a.has_edge(v, u) == b.has_edge(w, map[u]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(a, b, colors, order, depth + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    if go(a, b, &colors, &order, 0, &mut map, &mut used) {
        debug_assert!((0..a.n).all(|v| {
            (0..a.n).all(|u| a.has_edge(v, u) == b.has_edge(map[v], map[u]))
        }));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Tests whether `graph` (on the elements of `g`) is a blow-up along the
/// cosets of a central subgroup `z`: each coset induces a clique and
/// adjacency between two cosets is all-or-nothing. On success returns the
/// quotient graph on coset representatives.
pub fn coset_blowup_decomposition(
    graph: &SimpleGraph,
    g: &Group,
    z: &[usize],
) -> Result<Option<SimpleGraph>> {
    if graph.n != g.order() {
        return Err(Error::BadParameter(
            "graph order does not match the group".into(),
        ));
    }
    if !is_subgroup(g, z) {
        return Err(Error::BadParameter("not a subgroup".into()));
    }
    let zen = center(g);
    if !z.iter().all(|x| zen.binary_search(x).is_ok()) {
        return Err(Error::BadParameter("subgroup is not central".into()));
    }
    // Cosets, each sorted, represented by smallest member.
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::new();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        let mut members: Vec<usize> = z.iter().map(|&s| g.mul(x, s)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = idx;
        }
        reps.push(x);
        cosets.push(members);
    }
    // Cliques inside cosets.
    for coset in &cosets {
        for (i, &x) in coset.iter().enumerate() {
            for &y in &coset[i + 1..] {
                if !graph.has_edge(x, y) {
                    return Ok(None);
                }
            }
        }
    }
    // All-or-nothing across cosets.
    let q = reps.len();
    let labels = reps.iter().map(|&r| g.element_name(r).to_string()).collect();
    let mut quotient = SimpleGraph::new(GraphKind::Other, labels);
    for i in 0..q {
        for j in (i + 1)..q {
            let mut count = 0usize;
            for &x in &cosets[i] {
                for &y in &cosets[j] {
                    if graph.has_edge(x, y) {
                        count += 1;
                    }
                }
            }
            if count == cosets[i].len() * cosets[j].len() {
                quotient.add_edge(i, j);
            } else if count != 0 {
                return Ok(None);
            }
        }
    }
    Ok(Some(quotient))
}

fn sanitize_ident(s: &str) -> String {
    let mut out: String = s
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if out.is_empty() || out.chars().next().unwrap().is_ascii_digit() {
        out.insert(0, 'g');
    }
    out
}

fn escape_label(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Graphviz output; byte-deterministic for a given graph.
pub fn emit_dot(graph: &SimpleGraph, group_name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "graph {}_{} {{\n",
        graph.kind,
        sanitize_ident(group_name)
    ));
    for v in 0..graph.n {
        out.push_str(&format!("  v{v} [label=\"{}\"];\n", escape_label(&graph.labels[v])));
    }
    for (i, j) in graph.edges() {
        out.push_str(&format!("  v{i} -- v{j};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Compact single-line JSON with sorted edge list and trailing newline.
pub fn emit_json(graph: &SimpleGraph, group_name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"group\":\"{}\",\"kind\":\"{}\",\"n\":{},\"edges\":[",
        escape_json(group_name),
        graph.kind,
        graph.n
    ));
    for (t, (i, j)) in graph.edges().into_iter().enumerate() {
        if t > 0 {
            out.push(',');
        }
        out.push_str(&format!("[{i},{j}]"));
    }
    out.push_str("]}\n");
    out
}

/// One "i j" line per edge, sorted.
pub fn emit_edgelist(graph: &SimpleGraph) -> String {
    let mut out = String::new();
    for (i, j) in graph.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

/// Whether <x, y> is cyclic, decided from scratch; cross-checks the clique
/// construction of the enhanced power graph.
pub fn generated_pair_is_cyclic(g: &Group, x: usize, y: usize) -> bool {
    let sub = subgroup_generated(g, &[x, y]);
    sub.iter().any(|&z| element_order(g, z) == sub.len())
}
