//! Exact linear algebra over the integers.
//!
//! Everything here works with arbitrary-precision entries: Smith normal
//! form pivots blow up quickly and a silent overflow would be a
//! correctness bug, not an edge case. The public surface is
//! [`smith_normal_form`], [`hermite_normal_form`], [`kernel_basis`],
//! [`cokernel_invariants`] and [`subgroup_membership`]; the rest of the
//! crate funnels every group computation through these.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZlatticeError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        IntMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ZlatticeError> {
        if v.len() != self.cols {
            return Err(ZlatticeError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() && !self.get(i, j).is_zero() {
                    *o += self.get(i, j) * x;
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Rank of the integer matrix (number of nonzero invariant factors).
    pub fn rank(&self) -> usize {
        diagonal_factors(self.clone()).len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += k * row_j
    fn row_add(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.data[j * self.cols + c];
            if !v.is_zero() {
                let t = k * v;
                self.data[i * self.cols + c] += t;
            }
        }
    }

    /// col_i += k * col_j
    fn col_add(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + j];
            if !v.is_zero() {
                let t = k * v;
                self.data[r * self.cols + i] += t;
            }
        }
    }

    fn neg_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            if !self.data[idx].is_zero() {
                let v = std::mem::take(&mut self.data[idx]);
                self.data[idx] = -v;
            }
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Presentation of a finitely generated abelian group: one relation per row,
/// columns indexed by generators.
#[derive(Clone, Debug)]
pub struct AbGroupPresentation {
    pub num_generators: usize,
    pub relations: IntMatrix,
}

impl AbGroupPresentation {
    pub fn new(num_generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.cols(),
            num_generators,
            "relation width must equal generator count"
        );
        AbGroupPresentation {
            num_generators,
            relations,
        }
    }

    pub fn from_relation_rows(num_generators: usize, rows: Vec<Vec<BigInt>>) -> Self {
        Self::new(
            num_generators,
            IntMatrix::from_bigint_rows(rows, num_generators),
        )
    }
}

/// Isomorphism invariants of a finitely generated abelian group:
/// free rank plus the torsion chain d_1 | d_2 | ... (all > 1).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AbGroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroupInvariants {
    pub fn free(rank: usize) -> Self {
        AbGroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }
}

impl std::fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.free_rank == 0 && self.torsion.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Smith normal form S = U * M * V with unimodular U, V.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

// Quotient with remainder of minimal absolute value.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

struct SnfCalc {
    m: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl SnfCalc {
    fn new(m: IntMatrix, track_u: bool, track_v: bool) -> Self {
        let u = track_u.then(|| IntMatrix::identity(m.rows()));
        let v = track_v.then(|| IntMatrix::identity(m.cols()));
        SnfCalc { m, u, v }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn row_add(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.row_add(i, j, k);
        if let Some(u) = self.u.as_mut() {
            u.row_add(i, j, k);
        }
    }

    fn col_add(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.col_add(i, j, k);
        if let Some(v) = self.v.as_mut() {
            v.col_add(i, j, k);
        }
    }

    fn neg_row(&mut self, i: usize) {
        self.m.neg_row(i);
        if let Some(u) = self.u.as_mut() {
            u.neg_row(i);
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing submatrix, with an
    /// early exit on +-1: the anti-swell pivot heuristic. Ties break on the
    /// lowest (row, col), which keeps the whole computation deterministic.
    fn select_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_mag: Option<BigInt> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let e = self.m.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let mag = e.abs();
                if mag.is_one() {
                    return Some((i, j));
                }
                if best_mag.as_ref().is_none_or(|b| &mag < b) {
                    best_mag = Some(mag);
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clear row t and column t against the pivot at (t, t). Remainders
    /// promote themselves to pivot via a swap, so this terminates with the
    /// gcd of the touched entries sitting at (t, t).
    fn eliminate_at(&mut self, t: usize) {
        'outer: loop {
            for i in 0..self.m.rows() {
                if i == t || self.m.get(i, t).is_zero() {
                    continue;
                }
                let q = rounded_div(self.m.get(i, t), self.m.get(t, t));
                self.row_add(i, t, &(-q));
                if !self.m.get(i, t).is_zero() {
                    self.swap_rows(t, i);
                    continue 'outer;
                }
            }
            for j in 0..self.m.cols() {
                if j == t || self.m.get(t, j).is_zero() {
                    continue;
                }
                let q = rounded_div(self.m.get(t, j), self.m.get(t, t));
                self.col_add(j, t, &(-q));
                if !self.m.get(t, j).is_zero() {
                    self.swap_cols(t, j);
                    continue 'outer;
                }
            }
            break;
        }
    }

    /// Diagonalize. Returns the number of nonzero pivots.
    fn diagonalize(&mut self) -> usize {
        let limit = self.m.rows().min(self.m.cols());
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.select_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            self.eliminate_at(t);
            t += 1;
        }
        t
    }

    /// Enforce d_1 | d_2 | ... on the nonzero diagonal using genuine
    /// row/column operations so U, V stay valid.
    fn normalize_chain(&mut self, rank: usize) {
        for i in 0..rank {
            if self.m.get(i, i).is_negative() {
                self.neg_row(i);
            }
        }
        loop {
            let mut stable = true;
            for i in 0..rank.saturating_sub(1) {
                let a = self.m.get(i, i).clone();
                let b = self.m.get(i + 1, i + 1).clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                stable = false;
                // Fold the pair into (gcd, lcm) by a local 2x2 elimination.
                self.row_add(i, i + 1, &BigInt::one());
                self.eliminate_at(i);
                if self.m.get(i, i).is_negative() {
                    self.neg_row(i);
                }
                if self.m.get(i + 1, i + 1).is_negative() {
                    self.neg_row(i + 1);
                }
            }
            if stable {
                break;
            }
        }
    }
}

/// Smith normal form with unimodular transforms: `u * m * v = s` exactly,
/// diagonal of `s` a divisibility chain. Total and deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut calc = SnfCalc::new(m.clone(), true, true);
    let rank = calc.diagonalize();
    calc.normalize_chain(rank);
    let factors: Vec<BigInt> = (0..rank).map(|i| calc.m.get(i, i).clone()).collect();
    let result = SnfResult {
        s: calc.m,
        u: calc.u.unwrap(),
        v: calc.v.unwrap(),
        invariant_factors: factors,
    };
    debug_assert!(
        result.u.mul(m).mul(&result.v) == result.s,
        "U*M*V != S — unimodular bookkeeping broken"
    );
    debug_assert!(result.s.is_diagonal());
    result
}

/// Invariant factors only (no transforms): the fast path for rank and
/// cokernel computations on the large relation matrices.
fn diagonal_factors(m: IntMatrix) -> Vec<BigInt> {
    let mut calc = SnfCalc::new(m, false, false);
    let rank = calc.diagonalize();
    let mut factors: Vec<BigInt> = (0..rank).map(|i| calc.m.get(i, i).abs()).collect();
    // (a, b) -> (gcd, lcm) preserves the elementary-divisor multiset, so the
    // chain can be fixed on the list itself without matrix operations.
    loop {
        let mut stable = true;
        for i in 0..factors.len().saturating_sub(1) {
            for j in i + 1..factors.len() {
                if (&factors[j] % &factors[i]).is_zero() {
                    continue;
                }
                let g = factors[i].gcd(&factors[j]);
                let l = (&factors[i] * &factors[j]) / &g;
                factors[i] = g;
                factors[j] = l;
                stable = false;
            }
        }
        if stable {
            break;
        }
    }
    factors
}

/// Invariants of the group presented by `p`: free rank is
/// generators − rank(relations), torsion the invariant factors above 1.
pub fn cokernel_invariants(p: &AbGroupPresentation) -> AbGroupInvariants {
    let factors = diagonal_factors(p.relations.clone());
    let free_rank = p.num_generators - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    AbGroupInvariants { free_rank, torsion }
}

/// Basis of the lattice `{v : M v = 0}`. The vectors are primitive (they
/// are columns of a unimodular matrix) and sign-normalized so the first
/// nonzero entry is positive.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut calc = SnfCalc::new(m.clone(), false, true);
    let rank = calc.diagonalize();
    let v = calc.v.unwrap();
    let mut basis = Vec::new();
    for j in rank..m.cols() {
        let mut col: Vec<BigInt> = (0..m.cols()).map(|i| v.get(i, j).clone()).collect();
        if let Some(first) = col.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in col.iter_mut() {
                    let t = std::mem::take(x);
                    *x = -t;
                }
            }
        }
        debug_assert!(m.mul_vec(&col).unwrap().iter().all(Zero::is_zero));
        basis.push(col);
    }
    basis
}

/// Row-style Hermite normal form: positive pivots in staircase position,
/// entries above a pivot reduced into `[0, pivot)`. Returns the reduced
/// matrix together with its pivot columns.
pub struct HnfResult {
    pub h: IntMatrix,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HnfResult {
    let mut h = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // gcd the column below r into a single entry at row r
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..h.rows() {
                let e = h.get(i, c);
                if e.is_zero() {
                    continue;
                }
                let mag = e.abs();
                if best.as_ref().is_none_or(|(_, b)| &mag < b) {
                    best = Some((i, mag));
                }
            }
            let Some((pi, _)) = best else {
                break;
            };
            h.swap_rows(r, pi);
            let mut clean = true;
            for i in r + 1..h.rows() {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = rounded_div(h.get(i, c), h.get(r, c));
                h.row_add(i, r, &(-q));
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.neg_row(r);
        }
        // reduce entries above the pivot to canonical representatives
        for i in 0..r {
            let p = h.get(r, c);
            let e = h.get(i, c);
            if e.is_zero() {
                continue;
            }
            let q = e.div_floor(p);
            h.row_add(i, r, &(-q));
        }
        pivots.push(c);
        r += 1;
    }
    HnfResult { h, pivots }
}

/// Invariants of the subgroup of `Z^n / rowspan(relations)` generated by the
/// classes of the `tracked` vectors.
///
/// Stack `[relations 0; tracked I]` and Hermite-reduce: rows whose left part
/// vanished record exactly the integer combinations of tracked vectors that
/// fall into the relation span, i.e. the kernel of `Z^tracked -> quotient`.
pub fn spanned_subgroup_invariants(
    relations: &IntMatrix,
    tracked: &[Vec<BigInt>],
) -> AbGroupInvariants {
    let dim = relations.cols();
    let t = tracked.len();
    assert!(tracked.iter().all(|v| v.len() == dim), "tracked width");
    let mut stacked = IntMatrix::zeros(relations.rows() + t, dim + t);
    for i in 0..relations.rows() {
        for j in 0..dim {
            stacked.set(i, j, relations.get(i, j).clone());
        }
    }
    for (i, v) in tracked.iter().enumerate() {
        let r = relations.rows() + i;
        for (j, x) in v.iter().enumerate() {
            stacked.set(r, j, x.clone());
        }
        stacked.set(r, dim + i, BigInt::one());
    }
    let hnf = hermite_normal_form(&stacked);
    let mut kernel_rows: Vec<Vec<BigInt>> = Vec::new();
    for (k, &c) in hnf.pivots.iter().enumerate() {
        if c >= dim {
            kernel_rows.push((dim..dim + t).map(|j| hnf.h.get(k, j).clone()).collect());
        }
    }
    cokernel_invariants(&AbGroupPresentation::from_relation_rows(t, kernel_rows))
}

/// Does `v` lie in the integer row span of `r`? Decided exactly through the
/// Hermite form: reduce `v` against each pivot and demand exact divisibility.
pub fn subgroup_membership(r: &IntMatrix, v: &[BigInt]) -> Result<bool, ZlatticeError> {
    if v.len() != r.cols() {
        return Err(ZlatticeError::DimensionMismatch {
            expected: r.cols(),
            got: v.len(),
        });
    }
    let hnf = hermite_normal_form(r);
    let mut w: Vec<BigInt> = v.to_vec();
    for (k, &c) in hnf.pivots.iter().enumerate() {
        if w[c].is_zero() {
            continue;
        }
        let p = hnf.h.get(k, c);
        let (q, rem) = w[c].div_rem(p);
        if !rem.is_zero() {
            return Ok(false);
        }
        for (j, wj) in w.iter_mut().enumerate() {
            let e = hnf.h.get(k, j);
            if !e.is_zero() {
                *wj -= &q * e;
            }
        }
    }
    Ok(w.iter().all(Zero::is_zero))
}
