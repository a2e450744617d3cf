//! Normalized 2-cocycles of a finite group with values in Z/p^k, and what
//! they decide: the Schur multiplier, the Bogomolov multiplier, and the
//! deep commuting graph.
//!
//! A normalized cocycle is stored as its value table on pairs of
//! non-identity elements; the identity row and column are implicitly zero.
//! The cocycle identity f(x,y) + f(xy,z) = f(y,z) + f(x,yz) over all
//! non-identity triples cuts out a submodule of (Z/p^k)^((n-1)^2) which is
//! computed as the kernel of the constraint matrix in Howell form.

pub mod classify;

pub use classify::{classify, ClassifyReport, HierarchyClass};

use crate::error::{Error, Result};
use crate::graphs::{GraphKind, SimpleGraph};
use crate::group::{prime_character_data, AbelianInvariants, Group};
use crate::ring::{
    factor_prime_powers, invariant_factors_modpk, merge_invariant_factors, HowellBuilder,
    HowellForm, PrimePower,
};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Orders up to this limit insert one echelon row per associativity
/// constraint; larger orders first mix the sparse constraints into
/// width + EXTRA_MIXES dense random combinations, which is much cheaper
/// than (n-1)^3 echelon insertions and is certified after the fact.
const STREAM_ORDER_LIMIT: usize = 24;
const EXTRA_MIXES: usize = 64;

/// Tag for all derived random streams (ascii "deepcmix"), fixed so that
/// every run reproduces the same mixes bit for bit.
const STREAM_TAG: u64 = u64::from_le_bytes(*b"deepcmix");

pub(crate) const MIX_CONSTRAINTS: u32 = 1;
pub(crate) const MIX_ORACLE: u32 = 2;

/// Deterministic stream keyed by modulus, purpose and row index.
pub(crate) fn derived_rng(p: u64, k: u32, purpose: u32, index: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&STREAM_TAG.to_le_bytes());
    seed[8..16].copy_from_slice(&p.to_le_bytes());
    seed[16..20].copy_from_slice(&k.to_le_bytes());
    seed[20..24].copy_from_slice(&purpose.to_le_bytes());
    seed[24..32].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

pub(crate) struct ByteStream {
    rng: ChaCha8Rng,
    buf: u64,
    left: u32,
}

impl ByteStream {
    pub(crate) fn new(rng: ChaCha8Rng) -> ByteStream {
        ByteStream { rng, buf: 0, left: 0 }
    }

    #[inline]
    pub(crate) fn next_byte(&mut self) -> u8 {
        if self.left == 0 {
            self.buf = self.rng.next_u64();
            self.left = 8;
        }
        let b = self.buf as u8;
        self.buf >>= 8;
        self.left -= 1;
        b
    }
}

/// Index of the pair (x, y) of non-identity elements in a value table.
#[inline]
pub(crate) fn pair_index(n: usize, x: usize, y: usize) -> usize {
    debug_assert!(x >= 1 && x < n && y >= 1 && y < n);
    (x - 1) * (n - 1) + (y - 1)
}

/// A normalized 2-cocycle with values in Z/p^k.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pp: PrimePower,
    n: usize,
    vals: Vec<u8>,
}

impl Cocycle {
    /// Wraps a value table of shape (n-1) x (n-1); entries must already be
    /// reduced mod p^k. The cocycle identity is not checked here, see
    /// [`is_cocycle`].
    pub fn from_values(pp: PrimePower, n: usize, vals: Vec<u8>) -> Result<Cocycle> {
        if n == 0 || vals.len() != (n - 1) * (n - 1) {
            return Err(Error::BadParameter(format!(
                "cocycle table has {} entries, expected {}",
                vals.len(),
                n.saturating_sub(1).pow(2)
            )));
        }
        if let Some(&bad) = vals.iter().find(|&&v| v as u64 >= pp.m) {
            return Err(Error::BadParameter(format!(
                "cocycle value {bad} is not reduced mod {}",
                pp.m
            )));
        }
        Ok(Cocycle { pp, n, vals })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.vals
    }

    /// f(x, y); zero whenever x or y is the identity.
    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u8 {
        assert!(x < self.n && y < self.n);
        if x == 0 || y == 0 {
            0
        } else {
            self.vals[pair_index(self.n, x, y)]
        }
    }
}

/// First failing instance of the cocycle identity, if any. Only
/// non-identity triples are examined; instances involving the identity
/// hold automatically for normalized tables.
fn first_violation(g: &Group, pp: PrimePower, vals: &[u8]) -> Option<(usize, usize, usize)> {
    let n = g.order();
    let at = |x: usize, y: usize| -> i64 {
        if x == 0 || y == 0 {
            0
        } else {
            vals[pair_index(n, x, y)] as i64
        }
    };
    let m = pp.m as i64;
    for x in 1..n {
        for y in 1..n {
            let xy = g.mul(x, y);
            for z in 1..n {
                let lhs = at(x, y) + at(xy, z);
                let rhs = at(y, z) + at(x, g.mul(y, z));
                if (lhs - rhs) % m != 0 {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Checks the cocycle identity everywhere.
pub fn is_cocycle(g: &Group, f: &Cocycle) -> Result<()> {
    if f.n != g.order() {
        return Err(Error::BadParameter(format!(
            "cocycle is over a group of order {}, not {}",
            f.n,
            g.order()
        )));
    }
    match first_violation(g, f.pp, &f.vals) {
        None => Ok(()),
        Some((x, y, z)) => Err(Error::NotACocycle(x, y, z)),
    }
}

/// f(x,y) - f(y,x) mod p^k. For commuting x and y this is the commutator
/// of any two lifts in the extension built from f, so it vanishes exactly
/// when the lifts commute; it depends only on the cohomology class.
pub fn pairing_value(f: &Cocycle, x: usize, y: usize) -> u8 {
    let a = f.value(x, y) as u64;
    let b = f.value(y, x) as u64;
    ((a + f.pp.m - b) % f.pp.m) as u8
}

/// At most four entries: +1 at (x,y), +1 at (xy,z), -1 at (y,z), -1 at
/// (x,yz), with identity positions dropped and collisions merged.
#[derive(Clone, Copy, Default)]
struct SparseRow {
    idx: [u32; 4],
    coef: [u8; 4],
    len: u8,
}

impl SparseRow {
    fn add(&mut self, i: u32, c: u8, m: u64) {
        if c == 0 {
            return;
        }
        for t in 0..self.len as usize {
            if self.idx[t] == i {
                let merged = ((self.coef[t] as u64 + c as u64) % m) as u8;
                if merged == 0 {
                    self.len -= 1;
                    self.idx[t] = self.idx[self.len as usize];
                    self.coef[t] = self.coef[self.len as usize];
                } else {
                    self.coef[t] = merged;
                }
                return;
            }
        }
        self.idx[self.len as usize] = i;
        self.coef[self.len as usize] = c;
        self.len += 1;
    }

    fn to_dense(self, width: usize) -> Vec<u8> {
        let mut row = vec![0u8; width];
        for t in 0..self.len as usize {
            row[self.idx[t] as usize] = self.coef[t];
        }
        row
    }
}

fn constraint_row(g: &Group, pp: PrimePower, x: usize, y: usize, z: usize) -> SparseRow {
    let n = g.order();
    let neg = (pp.m - 1) as u8;
    let mut row = SparseRow::default();
    row.add(pair_index(n, x, y) as u32, 1, pp.m);
    let xy = g.mul(x, y);
    if xy != 0 {
        row.add(pair_index(n, xy, z) as u32, 1, pp.m);
    }
    row.add(pair_index(n, y, z) as u32, neg, pp.m);
    let yz = g.mul(y, z);
    if yz != 0 {
        row.add(pair_index(n, x, yz) as u32, neg, pp.m);
    }
    row
}

/// The cocycle module over one prime power, with the generating sets that
/// present the multipliers: coboundaries and character carries.
pub struct CocycleBasis {
    pp: PrimePower,
    n: usize,
    z2: HowellForm,
    constraints: HowellForm,
    boundaries: Vec<Vec<u8>>,
    carries: Vec<Vec<u8>>,
}

impl CocycleBasis {
    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    /// The full module of normalized cocycles, in Howell form.
    pub fn z2_form(&self) -> &HowellForm {
        &self.z2
    }

    pub fn z2_generators(&self) -> Vec<Cocycle> {
        self.z2
            .rows()
            .iter()
            .map(|r| Cocycle {
                pp: self.pp,
                n: self.n,
                vals: r.clone(),
            })
            .collect()
    }

    /// Value tables of the coboundaries of the indicator 1-cochains, one
    /// per non-identity element.
    pub fn coboundary_generators(&self) -> &[Vec<u8>] {
        &self.boundaries
    }

    /// Carry cocycles of lifted generating characters; together with the
    /// coboundaries these span exactly the classes that die in the
    /// multiplier.
    pub fn carry_generators(&self) -> &[Vec<u8>] {
        &self.carries
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BasisMode {
    Stream,
    Mixed,
}

/// Computes the cocycle module of G over Z/p^k.
///
/// Either path certifies its own output: every returned generator is
/// checked against every constraint instance. A mixed row is an exact
/// Z/p^k-combination of true constraints, so the computed kernel can only
/// be too large, never too small; generators that all pass the check span
/// a submodule of the true cocycle module, so passing forces equality.
/// The check is a proof, not a heuristic.
pub fn cocycle_basis(g: &Group, p: u64, k: u32, cap: usize) -> Result<CocycleBasis> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "cohomology group order",
            limit: cap,
            requested: n,
        });
    }
    let pp = PrimePower::new(p, k)?;
    let mode = if n <= STREAM_ORDER_LIMIT {
        BasisMode::Stream
    } else {
        BasisMode::Mixed
    };
    build_basis(g, pp, mode)
}

fn build_basis(g: &Group, pp: PrimePower, mode: BasisMode) -> Result<CocycleBasis> {
    let n = g.order();
    let width = (n - 1) * (n - 1);
    let mut builder = HowellBuilder::new(pp, width);
    match mode {
        BasisMode::Stream => {
            for x in 1..n {
                for y in 1..n {
                    for z in 1..n {
                        let row = constraint_row(g, pp, x, y, z);
                        if row.len > 0 {
                            builder.insert(row.to_dense(width));
                        }
                    }
                }
            }
        }
        BasisMode::Mixed => {
            let mut rows: Vec<SparseRow> = Vec::new();
            for x in 1..n {
                for y in 1..n {
                    for z in 1..n {
                        let row = constraint_row(g, pp, x, y, z);
                        if row.len > 0 {
                            rows.push(row);
                        }
                    }
                }
            }
            for j in 0..(width + EXTRA_MIXES) {
                let mut bytes =
                    ByteStream::new(derived_rng(pp.p, pp.k, MIX_CONSTRAINTS, j as u64));
                // Lazy u64 accumulators cannot overflow: each of at most
                // (n-1)^3 summands is below 2^16.
                let mut acc = vec![0u64; width];
                for row in &rows {
                    let c = bytes.next_byte() as u64;
                    if c == 0 {
                        continue;
                    }
                    for t in 0..row.len as usize {
                        acc[row.idx[t] as usize] += c * row.coef[t] as u64;
                    }
                }
                let mut dense = vec![0u8; width];
                pp.reduce_accumulator(&acc, &mut dense);
                builder.insert(dense);
            }
        }
    }
    let constraints = builder.finalize();
    let z2 = constraints.kernel();
    for row in z2.rows() {
        if let Some((x, y, z)) = first_violation(g, pp, row) {
            return Err(Error::InternalVerificationFailure(format!(
                "cocycle module generator fails the cocycle identity at ({x},{y},{z}) \
                 over {}^{}",
                pp.p, pp.k
            )));
        }
    }
    let boundaries = coboundary_rows(g, pp);
    let carries = carry_rows(g, pp);
    for row in boundaries.iter().chain(carries.iter()) {
        if !z2.contains(row) {
            return Err(Error::InternalVerificationFailure(format!(
                "trivializing generator escapes the cocycle module over {}^{}",
                pp.p, pp.k
            )));
        }
    }
    Ok(CocycleBasis {
        pp,
        n,
        z2,
        constraints,
        boundaries,
        carries,
    })
}

/// One basis per prime power exactly dividing |G|. The multiplier is
/// annihilated by |G|, so its p-part is already faithfully visible over
/// Z/p^k with p^k the full p-contribution to |G|; smaller cyclic
/// coefficient groups factor through these.
pub fn prime_power_bases(g: &Group, cap: usize) -> Result<Vec<CocycleBasis>> {
    factor_prime_powers(g.order() as u64)
        .into_iter()
        .map(|(p, k)| cocycle_basis(g, p, k, cap))
        .collect()
}

/// Coboundary of the indicator cochain of t, for each non-identity t.
fn coboundary_rows(g: &Group, pp: PrimePower) -> Vec<Vec<u8>> {
    let n = g.order();
    let width = (n - 1) * (n - 1);
    let m = pp.m as i64;
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for t in 1..n {
        let mut row = vec![0u8; width];
        for x in 1..n {
            for y in 1..n {
                let xy = g.mul(x, y);
                let v = (x == t) as i64 + (y == t) as i64 - (xy == t) as i64;
                row[pair_index(n, x, y)] = v.rem_euclid(m) as u8;
            }
        }
        out.push(row);
    }
    out
}

/// Carry cocycle of each generating character chi: G -> Z/p^k, i.e. the
/// failure of the integer lift of chi to stay additive, divided by p^k.
/// These represent exactly the classes killed by passing from Z/p^k
/// coefficients to the multiplier, so quotienting by them alongside the
/// coboundaries yields the p-part of the multiplier on the nose.
fn carry_rows(g: &Group, pp: PrimePower) -> Vec<Vec<u8>> {
    let n = g.order();
    let width = (n - 1) * (n - 1);
    let chars = prime_character_data(g, pp.p);
    let mut out = Vec::new();
    for (i, &e) in chars.exps.iter().enumerate() {
        let shift = if e >= pp.k { 1 } else { pp.p.pow(pp.k - e) };
        let chi: Vec<i64> = (0..n)
            .map(|x| ((chars.coords[x][i] * shift) % pp.m) as i64)
            .collect();
        let mut row = vec![0u8; width];
        for x in 1..n {
            for y in 1..n {
                let s = chi[x] + chi[y] - chi[g.mul(x, y)];
                debug_assert!(s == 0 || s == pp.m as i64, "carry must be 0 or 1");
                row[pair_index(n, x, y)] = u8::from(s != 0);
            }
        }
        out.push(row);
    }
    out
}

/// Relation module of the rows of a Howell form: all coefficient vectors
/// combining the rows to zero. This is the kernel of the transposed
/// generator matrix, so the existing kernel machinery applies directly.
fn generator_relations(module: &HowellForm) -> HowellForm {
    let s = module.rows().len();
    let mut builder = HowellBuilder::new(module.prime_power(), s);
    for j in 0..module.width() {
        let col: Vec<u8> = (0..s).map(|i| module.rows()[i][j]).collect();
        builder.insert(col);
    }
    builder.finalize().kernel()
}

/// Invariant factors (ascending prime powers) of module / span(subgens).
/// Presents the module on its Howell generators: relations are the
/// generator relation module plus the coordinates of each subgenerator.
fn quotient_invariant_factors<'a, I>(module: &HowellForm, subgens: I) -> Result<Vec<u64>>
where
    I: IntoIterator<Item = &'a Vec<u8>>,
{
    let s = module.rows().len();
    let mut rel: Vec<Vec<u8>> = generator_relations(module).rows().to_vec();
    for w in subgens {
        let coords = module.coords(w).ok_or_else(|| {
            Error::InternalVerificationFailure(
                "submodule generator escapes its ambient module".into(),
            )
        })?;
        rel.push(coords);
    }
    Ok(invariant_factors_modpk(module.prime_power(), &rel, s))
}

fn descending(mut factors: Vec<u64>) -> Vec<u64> {
    factors.reverse();
    factors
}

/// Schur multiplier: cocycles modulo coboundaries and character carries,
/// merged over the prime powers dividing |G|.
pub fn schur_multiplier_from_bases(bases: &[CocycleBasis]) -> Result<AbelianInvariants> {
    let mut per_prime = Vec::with_capacity(bases.len());
    for b in bases {
        let factors =
            quotient_invariant_factors(&b.z2, b.boundaries.iter().chain(b.carries.iter()))?;
        per_prime.push(descending(factors));
    }
    Ok(AbelianInvariants(merge_invariant_factors(&per_prime)))
}

pub fn schur_multiplier(g: &Group, cap: usize) -> Result<AbelianInvariants> {
    schur_multiplier_from_bases(&prime_power_bases(g, cap)?)
}

/// Cocycles symmetric on every commuting pair: the kernel of the
/// constraint system extended by f(x,y) = f(y,x) for commuting x, y.
fn symmetric_cocycle_module(g: &Group, basis: &CocycleBasis) -> HowellForm {
    let n = basis.n;
    let width = (n - 1) * (n - 1);
    let pp = basis.pp;
    let mut builder = HowellBuilder::new(pp, width);
    for row in basis.constraints.rows() {
        builder.insert(row.clone());
    }
    for x in 1..n {
        for y in (x + 1)..n {
            if g.commutes(x, y) {
                let mut row = vec![0u8; width];
                row[pair_index(n, x, y)] = 1;
                row[pair_index(n, y, x)] = (pp.m - 1) as u8;
                builder.insert(row);
            }
        }
    }
    let sym = builder.finalize().kernel();
    debug_assert!(sym.rows().iter().all(|r| basis.z2.contains(r)));
    sym
}

/// Bogomolov multiplier: the symmetric-on-commuting-pairs cocycles modulo
/// coboundaries and carries. It embeds in the Schur multiplier, and the
/// deep commuting graph equals the commuting graph exactly when the two
/// multipliers coincide.
pub fn bogomolov_multiplier_from_bases(
    g: &Group,
    bases: &[CocycleBasis],
) -> Result<AbelianInvariants> {
    let mut per_prime = Vec::with_capacity(bases.len());
    for b in bases {
        let sym = symmetric_cocycle_module(g, b);
        let factors =
            quotient_invariant_factors(&sym, b.boundaries.iter().chain(b.carries.iter()))?;
        per_prime.push(descending(factors));
    }
    Ok(AbelianInvariants(merge_invariant_factors(&per_prime)))
}

pub fn bogomolov_multiplier(g: &Group, cap: usize) -> Result<AbelianInvariants> {
    bogomolov_multiplier_from_bases(g, &prime_power_bases(g, cap)?)
}

/// |M| / |B0|, the order of the quotient separating the deep commuting
/// graph from the commuting graph.
pub fn m0_order(schur: &AbelianInvariants, bogomolov: &AbelianInvariants) -> Result<u64> {
    let ms = schur.total_order();
    let mb = bogomolov.total_order();
    if mb == 0 || ms % mb != 0 {
        return Err(Error::TheoremViolation(format!(
            "Bogomolov multiplier order {mb} does not divide Schur multiplier order {ms}"
        )));
    }
    Ok(ms / mb)
}

/// Deep commuting graph: x ~ y when their lifts commute in every central
/// extension. For commuting non-identity x, y that happens exactly when
/// every cocycle pairs them to zero, over every prime power exactly
/// dividing |G|; pairing is linear in the cocycle, so the module
/// generators decide. Lifts of the identity are central, making the
/// identity universal.
pub fn deep_commuting_graph_from_bases(g: &Group, bases: &[CocycleBasis]) -> SimpleGraph {
    let n = g.order();
    debug_assert!(bases.iter().all(|b| b.n == n));
    let mut graph = SimpleGraph::new(GraphKind::Dcom, g.element_names().to_vec());
    for x in 0..n {
        for y in (x + 1)..n {
            if !g.commutes(x, y) {
                continue;
            }
            let adjacent = x == 0
                || bases.iter().all(|b| {
                    let i = pair_index(n, x, y);
                    let j = pair_index(n, y, x);
                    b.z2.rows().iter().all(|r| r[i] == r[j])
                });
            if adjacent {
                graph.add_edge(x, y);
            }
        }
    }
    graph
}

pub fn deep_commuting_graph(g: &Group, cap: usize) -> Result<SimpleGraph> {
    Ok(deep_commuting_graph_from_bases(g, &prime_power_bases(g, cap)?))
}

/// Debug dump of the module generators as sparse JSON, keys "(x,y)" in
/// scan order.
pub fn cocycle_basis_json(basis: &CocycleBasis) -> String {
    let n = basis.n;
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"p\":{},\"k\":{},\"order\":{},\"generators\":[",
        basis.pp.p, basis.pp.k, n
    ));
    for (t, row) in basis.z2.rows().iter().enumerate() {
        if t > 0 {
            out.push(',');
        }
        out.push('{');
        let mut first = true;
        for x in 1..n {
            for y in 1..n {
                let v = row[pair_index(n, x, y)];
                if v != 0 {
                    if !first {
                        out.push(',');
                    }
                    first = false;
                    out.push_str(&format!("\"({x},{y})\":{v}"));
                }
            }
        }
        out.push('}');
    }
    out.push_str("]}\n");
    out
}
