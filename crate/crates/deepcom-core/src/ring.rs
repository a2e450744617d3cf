//! Linear algebra over Z/p^k: Howell-form echelons, kernels, and invariant
//! factors of quotient modules.
//!
//! Matrix entries are u8, so moduli are capped at 255. Row operations are
//! written as straight loops over byte slices so they vectorize; powers of
//! two reduce by masking and the odd moduli that matter get const-generic
//! instantiations where the reduction compiles to a multiply-shift.

use crate::error::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

macro_rules! odd_modulus_dispatch {
    ($m:expr, $call:ident, $fallback:ident, ($($args:expr),*)) => {
        match $m {
            3 => $call::<3>($($args),*),
            5 => $call::<5>($($args),*),
            7 => $call::<7>($($args),*),
            9 => $call::<9>($($args),*),
            11 => $call::<11>($($args),*),
            13 => $call::<13>($($args),*),
            17 => $call::<17>($($args),*),
            19 => $call::<19>($($args),*),
            23 => $call::<23>($($args),*),
            25 => $call::<25>($($args),*),
            27 => $call::<27>($($args),*),
            29 => $call::<29>($($args),*),
            31 => $call::<31>($($args),*),
            37 => $call::<37>($($args),*),
            41 => $call::<41>($($args),*),
            43 => $call::<43>($($args),*),
            47 => $call::<47>($($args),*),
            49 => $call::<49>($($args),*),
            53 => $call::<53>($($args),*),
            59 => $call::<59>($($args),*),
            61 => $call::<61>($($args),*),
            67 => $call::<67>($($args),*),
            71 => $call::<71>($($args),*),
            73 => $call::<73>($($args),*),
            79 => $call::<79>($($args),*),
            81 => $call::<81>($($args),*),
            83 => $call::<83>($($args),*),
            89 => $call::<89>($($args),*),
            97 => $call::<97>($($args),*),
            101 => $call::<101>($($args),*),
            103 => $call::<103>($($args),*),
            107 => $call::<107>($($args),*),
            109 => $call::<109>($($args),*),
            113 => $call::<113>($($args),*),
            121 => $call::<121>($($args),*),
            125 => $call::<125>($($args),*),
            127 => $call::<127>($($args),*),
            m => $fallback(m, $($args),*),
        }
    };
}

#[inline]
fn row_sub_mul_const<const M: u16>(dst: &mut [u8], src: &[u8], q: u8) {
    let neg = (M - q as u16) % M;
    for (d, &s) in dst.iter_mut().zip(src.iter()) {
        *d = ((*d as u16 + neg * s as u16) % M) as u8;
    }
}

#[inline]
fn row_sub_mul_any(m: u16, dst: &mut [u8], src: &[u8], q: u8) {
    let neg = (m - q as u16) % m;
    for (d, &s) in dst.iter_mut().zip(src.iter()) {
        *d = ((*d as u16 + neg * s as u16) % m) as u8;
    }
}

#[inline]
fn row_mul_const<const M: u16>(dst: &mut [u8], u: u8) {
    for d in dst.iter_mut() {
        *d = ((*d as u16 * u as u16) % M) as u8;
    }
}

#[inline]
fn row_mul_any(m: u16, dst: &mut [u8], u: u8) {
    for d in dst.iter_mut() {
        *d = ((*d as u16 * u as u16) % m) as u8;
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime powers p^k exactly dividing n, ascending by p.
pub fn factor_prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A prime power modulus p^k, at most 255.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub m: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<PrimePower> {
        if !is_prime(p) || k == 0 {
            return Err(Error::BadParameter(alloc::format!(
                "{p}^{k} is not a positive prime power"
            )));
        }
        match p.checked_pow(k) {
            Some(m) if m <= 255 => Ok(PrimePower { p, k, m }),
            other => Err(Error::CapExceeded {
                what: "prime power modulus",
                limit: 255,
                requested: other.map_or(usize::MAX, |m| m as usize),
            }),
        }
    }

    /// p-adic valuation of x mod p^k; val(0) = k.
    #[inline]
    pub fn val(&self, x: u8) -> u32 {
        if x == 0 {
            return self.k;
        }
        let mut x = x as u64;
        let mut a = 0;
        while x % self.p == 0 {
            x /= self.p;
            a += 1;
        }
        a
    }

    /// Multiplicative inverse of a unit mod p^k.
    pub fn inv_unit(&self, u: u8) -> u8 {
        debug_assert_ne!(u as u64 % self.p, 0, "inverse of a non-unit");
        let m = self.m as i64;
        let (mut old_r, mut r) = (u as i64, m);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        // old_r = gcd = 1 for a unit
        debug_assert_eq!(old_r, 1);
        old_s.rem_euclid(m) as u8
    }

    /// dst[i] <- (dst[i] - q * src[i]) mod p^k
    #[inline]
    pub fn row_sub_mul(&self, dst: &mut [u8], src: &[u8], q: u8) {
        debug_assert_eq!(dst.len(), src.len());
        let q = (q as u64 % self.m) as u8;
        if q == 0 {
            return;
        }
        if self.p == 2 {
            let mask = (self.m - 1) as u8;
            for (d, &s) in dst.iter_mut().zip(src.iter()) {
                *d = d.wrapping_sub(q.wrapping_mul(s)) & mask;
            }
        } else {
            odd_modulus_dispatch!(self.m as u16, row_sub_mul_const, row_sub_mul_any, (dst, src, q));
        }
    }

    /// dst[i] <- (dst[i] + src[i]) mod p^k
    #[inline]
    pub fn row_add(&self, dst: &mut [u8], src: &[u8]) {
        self.row_sub_mul(dst, src, (self.m - 1) as u8);
    }

    /// dst[i] <- (dst[i] * u) mod p^k
    #[inline]
    pub fn row_mul(&self, dst: &mut [u8], u: u8) {
        let u = (u as u64 % self.m) as u8;
        if self.p == 2 {
            let mask = (self.m - 1) as u8;
            for d in dst.iter_mut() {
                *d = d.wrapping_mul(u) & mask;
            }
        } else {
            odd_modulus_dispatch!(self.m as u16, row_mul_const, row_mul_any, (dst, u));
        }
    }

    /// out[i] <- (acc[i] mod p^k), narrowing lazy u64 accumulators.
    pub fn reduce_accumulator(&self, acc: &[u64], out: &mut [u8]) {
        debug_assert_eq!(acc.len(), out.len());
        for (o, &a) in out.iter_mut().zip(acc.iter()) {
            *o = (a % self.m) as u8;
        }
    }
}

fn leading_col(v: &[u8]) -> Option<usize> {
    v.iter().position(|&b| b != 0)
}

/// Incremental builder for the Howell normal form of a row span in
/// (Z/p^k)^width.
///
/// Invariants kept during insertion: pivot columns strictly increase, each
/// pivot entry is exactly p^a for a = its valuation, and for every row with
/// a > 0 its torsion companion p^{k-a} * row has been folded back in, which
/// is what gives the form its span property (every span element with zeros
/// before column c lies in the span of rows with pivot at or after c).
pub struct HowellBuilder {
    pp: PrimePower,
    width: usize,
    rows: Vec<Vec<u8>>,
    cols: Vec<usize>,
    vals: Vec<u32>,
}

impl HowellBuilder {
    pub fn new(pp: PrimePower, width: usize) -> HowellBuilder {
        HowellBuilder {
            pp,
            width,
            rows: Vec::new(),
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Scales so the pivot becomes exactly p^a, returning a.
    fn normalize(&self, v: &mut [u8], c: usize) -> u32 {
        let a = self.pp.val(v[c]);
        let unit = (v[c] as u64 / self.pp.p.pow(a)) as u8;
        if unit != 1 {
            self.pp.row_mul(v, self.pp.inv_unit(unit));
        }
        debug_assert_eq!(v[c] as u64, self.pp.p.pow(a));
        a
    }

    pub fn insert(&mut self, row: Vec<u8>) {
        debug_assert_eq!(row.len(), self.width);
        let mut pending = vec![row];
        while let Some(mut v) = pending.pop() {
            loop {
                let Some(c) = leading_col(&v) else { break };
                let slot = self.cols.binary_search(&c);
                match slot {
                    Err(pos) => {
                        let a = self.normalize(&mut v, c);
                        if a > 0 {
                            let mut companion = v.clone();
                            let scalar = (self.pp.p.pow(self.pp.k - a) % self.pp.m) as u8;
                            self.pp.row_mul(&mut companion, scalar);
                            pending.push(companion);
                        }
                        self.rows.insert(pos, v);
                        self.cols.insert(pos, c);
                        self.vals.insert(pos, a);
                        break;
                    }
                    Ok(i) => {
                        let b = self.vals[i];
                        let a = self.pp.val(v[c]);
                        if a < b {
                            // The newcomer has the better pivot: swap it in,
                            // then keep inserting the displaced row.
                            self.normalize(&mut v, c);
                            core::mem::swap(&mut self.rows[i], &mut v);
                            self.vals[i] = a;
                            if a > 0 {
                                let mut companion = self.rows[i].clone();
                                let scalar = (self.pp.p.pow(self.pp.k - a) % self.pp.m) as u8;
                                self.pp.row_mul(&mut companion, scalar);
                                pending.push(companion);
                            }
                            let q = (self.pp.p.pow(b - a) % self.pp.m) as u8;
                            let pivot_row = &self.rows[i];
                            // v is the old pivot row: entry p^b exactly.
                            let (dst, src) = (&mut v, pivot_row);
                            self.pp.row_sub_mul(dst, src, q);
                            debug_assert_eq!(v[c], 0);
                        } else {
                            let q = (v[c] as u64 / self.pp.p.pow(b)) as u8;
                            let row_i = &self.rows[i];
                            self.pp.row_sub_mul(&mut v, row_i, q);
                            debug_assert_eq!(v[c], 0);
                        }
                    }
                }
            }
        }
    }

    /// Back-reduces entries above each pivot below that pivot's power and
    /// returns the finished canonical form.
    pub fn finalize(mut self) -> HowellForm {
        let nrows = self.rows.len();
        for i in 0..nrows {
            for j in (i + 1)..nrows {
                let c = self.cols[j];
                let t = self.rows[i][c];
                if t == 0 {
                    continue;
                }
                let q = (t as u64 / self.pp.p.pow(self.vals[j])) as u8;
                if q == 0 {
                    continue;
                }
                // Split borrows: rows i and j are distinct.
                let (head, tail) = self.rows.split_at_mut(j);
                self.pp.row_sub_mul(&mut head[i], &tail[0], q);
            }
        }
        let form = HowellForm {
            pp: self.pp,
            width: self.width,
            rows: self.rows,
            pivot_cols: self.cols,
            pivot_vals: self.vals,
        };
        debug_assert!(form.is_canonical());
        form
    }
}

/// Canonical Howell form: one row per pivot column, pivot columns strictly
/// ascending, pivot entries exactly p^a, and every entry above a pivot
/// strictly below that pivot's power. Unique for a given row span, and
/// every span element is uniquely a combination with coefficient c_i in
/// [0, p^{k-a_i}) on row i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    pp: PrimePower,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivot_cols: Vec<usize>,
    pivot_vals: Vec<u32>,
}

impl HowellForm {
    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn pivot_vals(&self) -> &[u32] {
        &self.pivot_vals
    }

    fn is_canonical(&self) -> bool {
        let n = self.rows.len();
        for i in 0..n {
            let c = self.pivot_cols[i];
            if i > 0 && self.pivot_cols[i - 1] >= c {
                return false;
            }
            if leading_col(&self.rows[i]) != Some(c) {
                return false;
            }
            if self.rows[i][c] as u64 != self.pp.p.pow(self.pivot_vals[i]) {
                return false;
            }
            for j in 0..n {
                if j != i && self.rows[j][c] as u64 >= self.pp.p.pow(self.pivot_vals[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of module elements if it is at most `cap`, else None.
    pub fn size_capped(&self, cap: u128) -> Option<u128> {
        let mut size: u128 = 1;
        for &a in &self.pivot_vals {
            for _ in 0..(self.pp.k - a) {
                size = size.checked_mul(self.pp.p as u128)?;
                if size > cap {
                    return None;
                }
            }
        }
        Some(size)
    }

    /// Unique coefficients expressing v in the rows, or None if v is
    /// outside the span. Walks columns left to right, dividing out pivots.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        debug_assert_eq!(v.len(), self.width);
        let mut residual = v.to_vec();
        let mut out = vec![0u8; self.rows.len()];
        while let Some(c) = leading_col(&residual) {
            let i = self.pivot_cols.binary_search(&c).ok()?;
            let a = self.pivot_vals[i];
            if self.pp.val(residual[c]) < a {
                return None;
            }
            let q = (residual[c] as u64 / self.pp.p.pow(a)) as u8;
            out[i] = q;
            self.pp.row_sub_mul(&mut residual, &self.rows[i], q);
        }
        Some(out)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.coords(v).is_some()
    }

    /// Linear combination of the rows by the given coefficients.
    pub fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        debug_assert_eq!(coeffs.len(), self.rows.len());
        let mut out = vec![0u8; self.width];
        for (row, &c) in self.rows.iter().zip(coeffs.iter()) {
            let c = (c as u64 % self.pp.m) as u8;
            if c != 0 {
                self.pp.row_sub_mul(&mut out, row, (self.pp.m - c as u64) as u8);
            }
        }
        out
    }

    /// Visits every element of the module exactly once (the zero vector
    /// included); stops early if the visitor returns false. Returns whether
    /// the walk ran to completion.
    ///
    /// Odometer over the coefficient box with incremental row additions; a
    /// digit rollover has added p^{k-a} copies of its row, which is not
    /// necessarily zero, so each digit carries a correction vector.
    pub fn for_each_element<F: FnMut(&[u8]) -> bool>(&self, mut f: F) -> bool {
        let r = self.rows.len();
        let ranges: Vec<u64> = self
            .pivot_vals
            .iter()
            .map(|&a| self.pp.p.pow(self.pp.k - a))
            .collect();
        let corrections: Vec<Vec<u8>> = self
            .rows
            .iter()
            .zip(ranges.iter())
            .map(|(row, &range)| {
                let mut corr = row.clone();
                let scalar = ((self.pp.m - range % self.pp.m) % self.pp.m) as u8;
                self.pp.row_mul(&mut corr, scalar);
                corr
            })
            .collect();
        let mut digits = vec![0u64; r];
        let mut cur = vec![0u8; self.width];
        loop {
            if !f(&cur) {
                return false;
            }
            let mut i = 0;
            while i < r {
                digits[i] += 1;
                self.pp.row_add(&mut cur, &self.rows[i]);
                if digits[i] < ranges[i] {
                    break;
                }
                digits[i] = 0;
                self.pp.row_add(&mut cur, &corrections[i]);
                i += 1;
            }
            if i == r {
                debug_assert!(cur.iter().all(|&b| b == 0));
                return true;
            }
        }
    }

    /// The kernel {x : R x = 0 for every row R}, as a Howell form.
    ///
    /// Build the Howell form of [E^T | I]: its rows span exactly the pairs
    /// (E y, y), so rows whose left block vanished carry kernel vectors in
    /// their right half, and the span property guarantees those rows span
    /// the whole kernel and inherit canonical shape.
    pub fn kernel(&self) -> HowellForm {
        let s = self.rows.len();
        let n = self.width;
        let mut builder = HowellBuilder::new(self.pp, s + n);
        for c in 0..n {
            let mut row = vec![0u8; s + n];
            for i in 0..s {
                row[i] = self.rows[i][c];
            }
            row[s + c] = 1;
            builder.insert(row);
        }
        let aug = builder.finalize();
        let mut rows = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut pivot_vals = Vec::new();
        for (i, &c) in aug.pivot_cols.iter().enumerate() {
            if c < s {
                continue;
            }
            debug_assert!(aug.rows[i][..s].iter().all(|&b| b == 0));
            rows.push(aug.rows[i][s..].to_vec());
            pivot_cols.push(c - s);
            pivot_vals.push(aug.pivot_vals[i]);
        }
        let form = HowellForm {
            pp: self.pp,
            width: n,
            rows,
            pivot_cols,
            pivot_vals,
        };
        debug_assert!(form.is_canonical());
        form
    }
}

/// Invariant factors of (Z/p^k)^ncols divided by the row span of `rel`,
/// as prime powers ascending with trivial factors dropped.
///
/// Diagonalization with minimum-valuation pivoting: all remaining entries
/// then divide out exactly, so one row-elimination pass and one column pass
/// per pivot suffice, and scaling rows by units is legal because p^k * I is
/// inside any relation lattice here.
pub fn invariant_factors_modpk(pp: PrimePower, rel: &[Vec<u8>], ncols: usize) -> Vec<u64> {
    let nrows = rel.len();
    let mut mat: Vec<Vec<u8>> = rel.to_vec();
    for row in &mat {
        debug_assert_eq!(row.len(), ncols);
    }
    let mut col_used = vec![false; ncols];
    let mut row_used = vec![false; nrows];
    let mut diag: Vec<u32> = Vec::new();
    loop {
        // Minimum-valuation entry among unused rows/columns.
        let mut best: Option<(u32, usize, usize)> = None;
        for i in 0..nrows {
            if row_used[i] {
                continue;
            }
            for c in 0..ncols {
                if col_used[c] || mat[i][c] == 0 {
                    continue;
                }
                let a = pp.val(mat[i][c]);
                if best.map_or(true, |(ba, bc, bi)| (a, c, i) < (ba, bc, bi)) {
                    best = Some((a, c, i));
                }
            }
        }
        let Some((a, c, i)) = best else { break };
        // Normalize the pivot row so the pivot is exactly p^a.
        let unit = (mat[i][c] as u64 / pp.p.pow(a)) as u8;
        if unit != 1 {
            let inv = pp.inv_unit(unit);
            pp.row_mul(&mut mat[i], inv);
        }
        // Clear the pivot column; divisions are exact by minimality.
        for j in 0..nrows {
            if j == i || mat[j][c] == 0 {
                continue;
            }
            let q = (mat[j][c] as u64 / pp.p.pow(a)) as u8;
            let (src, dst) = if i < j {
                let (head, tail) = mat.split_at_mut(j);
                (&head[i][..], &mut tail[0])
            } else {
                let (head, tail) = mat.split_at_mut(i);
                (&tail[0][..], &mut head[j])
            };
            pp.row_sub_mul(dst, src, q);
            debug_assert_eq!(dst[c], 0);
        }
        // Clearing the pivot row's other entries would subtract multiples
        // of column c, which is now zero outside the pivot, so it only
        // zeroes those entries; valuations at or above a make this exact.
        for cc in 0..ncols {
            if cc != c {
                debug_assert!(mat[i][cc] == 0 || pp.val(mat[i][cc]) >= a);
                mat[i][cc] = 0;
            }
        }
        col_used[c] = true;
        row_used[i] = true;
        diag.push(a);
    }
    let mut factors: Vec<u64> = diag
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| pp.p.pow(a))
        .collect();
    factors.sort_unstable();
    let free_cols = col_used.iter().filter(|&&u| !u).count();
    for _ in 0..free_cols {
        factors.push(pp.m);
    }
    factors
}

/// Merges per-prime invariant chains (each descending, largest first) into
/// one divisor chain, ascending. Aligning the largest factors of each prime
/// together is what makes the result a chain.
pub fn merge_invariant_factors(per_prime: &[Vec<u64>]) -> Vec<u64> {
    let len = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for chain in per_prime {
        debug_assert!(chain.windows(2).all(|w| w[0] >= w[1]));
        for (t, &q) in chain.iter().enumerate() {
            out[t] *= q;
        }
    }
    out.reverse();
    out.retain(|&d| d > 1);
    debug_assert!(out.windows(2).all(|w| w[1] % w[0] == 0));
    out
}
