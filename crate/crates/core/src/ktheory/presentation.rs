//! Truncated presentations of the K-groups of a diagonal action model:
//! the direct boundary-cylinder quotient, its two-coordinate reduction,
//! the second-difference quotient of the Denjoy action, and the kernel of
//! the assembled connecting map.

use num_bigint::BigInt;

use crate::freeboundary::{refine, BoundaryVector, Letter, ReducedWord};
use crate::zlattice::{
    cokernel_invariants, kernel_basis, spanned_subgroup_invariants, AbGroupInvariants,
    AbGroupPresentation, IntMatrix,
};

use super::model::{DiagonalActionModel, KtheoryError};
use super::tensor::{relation_row, TensorBasis};

fn to_bigint_row(row: Vec<i64>) -> Vec<BigInt> {
    row.into_iter().map(BigInt::from).collect()
}

/// The level-(L+1) relation matrix of the direct crossed-product
/// presentation: one row `F − φ_g F` per level-L tensor basis element and
/// generator letter, skipped when the clopen image leaves the window.
///
/// Rows are emitted for all four letters. In the full group the
/// inverse-letter rows are redundant (substitute `g⁻¹f` for `f`), but that
/// substitution needs window room, so emitting them keeps the truncated
/// relation lattice as large as the model supports.
pub fn direct_relation_matrix(model: &DiagonalActionModel) -> IntMatrix {
    let source = TensorBasis::new(model.k_dim(), model.boundary_level());
    let target = TensorBasis::new(model.k_dim(), model.boundary_level() + 1);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for g in Letter::ALL {
        for k in 0..model.k_dim() {
            if !model.map(g).defined_on(k) {
                continue;
            }
            for w in 0..source.cylinders().len() {
                let row = relation_row(model, g, k, w, &source, &target)
                    .expect("clopen image checked defined");
                rows.push(to_bigint_row(row));
            }
        }
    }
    IntMatrix::from_bigint_rows(rows, target.dim())
}

/// Classes tracked when reading invariants off the direct presentation:
/// `f ⊗ p_a` and `f ⊗ p_b` for every clopen basis vector, refined to the
/// relation level. These are exactly the classes the two-coordinate
/// reduction presents, so the two routes measure the same subgroup.
fn tracked_cylinder_classes(model: &DiagonalActionModel) -> Vec<Vec<BigInt>> {
    let target = TensorBasis::new(model.k_dim(), model.boundary_level() + 1);
    let mut tracked = Vec::new();
    for letter in [Letter::A, Letter::B] {
        let mut cyl = BoundaryVector::cylinder(&ReducedWord::single(letter));
        for _ in 0..model.boundary_level() {
            cyl = refine(&cyl);
        }
        for k in 0..model.k_dim() {
            let mut row = vec![BigInt::ZERO; target.dim()];
            for (c, &x) in cyl.coeffs.iter().enumerate() {
                if x != 0 {
                    row[target.index(k, c)] = BigInt::from(x);
                }
            }
            tracked.push(row);
        }
    }
    tracked
}

/// Direct truncation of the crossed-product K₀: assemble the level-(L+1)
/// tensor relation matrix and read off the invariants of the subgroup
/// generated by the two generator-letter cylinder classes.
///
/// The raw truncated cokernel carries window artifacts — classes that only
/// the missing out-of-window relations would glue, so its rank grows with
/// the level. The subgroup of the `f ⊗ p_a`, `f ⊗ p_b` classes is the
/// level-stable part, and it is the subgroup the reduced presentation
/// computes, which is what makes the two routes comparable truncation by
/// truncation.
pub fn pv_k0_direct(model: &DiagonalActionModel) -> Result<AbGroupInvariants, KtheoryError> {
    let relations = direct_relation_matrix(model);
    let tracked = tracked_cylinder_classes(model);
    Ok(spanned_subgroup_invariants(&relations, &tracked))
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(g − 1) f` as a partial map application.
fn minus_one(model: &DiagonalActionModel, g: Letter, f: &[i64]) -> Option<Vec<i64>> {
    Some(sub(&model.apply_letter(g, f)?, f))
}

/// `(2 − g − g⁻¹) f`.
fn laplacian(model: &DiagonalActionModel, g: Letter, f: &[i64]) -> Option<Vec<i64>> {
    let fwd = model.apply_letter(g, f)?;
    let bwd = model.apply_letter(g.inverse(), f)?;
    Some(
        f.iter()
            .zip(fwd.iter().zip(bwd.iter()))
            .map(|(x, (a, b))| 2 * x - a - b)
            .collect(),
    )
}

/// Reduced two-coordinate presentation: generators `C(K,Z)²`, and for
/// every clopen basis vector `f` with all needed images in window the two
/// relation rows
/// `((2−α−α⁻¹)f, (α⁻¹−1)(β−1)f)` and `((β⁻¹−1)(α−1)f, (2−β−β⁻¹)f)`.
pub fn pv_k0_reduced(model: &DiagonalActionModel) -> Result<AbGroupInvariants, KtheoryError> {
    let d = model.k_dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut push = |left: Vec<i64>, right: Vec<i64>| {
        if left.iter().all(|&c| c == 0) && right.iter().all(|&c| c == 0) {
            return;
        }
        let mut row = left;
        row.extend(right);
        rows.push(to_bigint_row(row));
    };

    for k in 0..d {
        let f = model.unit_vector(k);
        // ((2−α−α⁻¹)f, (α⁻¹−1)(β−1)f)
        if let (Some(u), Some(v)) = (
            laplacian(model, Letter::A, &f),
            minus_one(model, Letter::B, &f).and_then(|w| minus_one(model, Letter::AInv, &w)),
        ) {
            push(u, v);
        }
        // ((β⁻¹−1)(α−1)f, (2−β−β⁻¹)f)
        if let (Some(u), Some(v)) = (
            minus_one(model, Letter::A, &f).and_then(|w| minus_one(model, Letter::BInv, &w)),
            laplacian(model, Letter::B, &f),
        ) {
            push(u, v);
        }
    }
    let presentation = AbGroupPresentation::from_relation_rows(2 * d, rows);
    Ok(cokernel_invariants(&presentation))
}

/// Relation matrix of the second-difference quotient on the basis
/// `{1, x_{-n}, ..., x_n}`: one row `x_{j+2} − 2x_{j+1} + x_j` per window
/// position.
pub fn example16_relations(depth: usize) -> IntMatrix {
    let n = depth as i64;
    let dim = 2 * depth + 2;
    let slot = |j: i64| 1 + (j + n) as usize;
    let mut rows = Vec::new();
    for j in -n..=n - 2 {
        let mut row = vec![0i64; dim];
        row[slot(j)] = 1;
        row[slot(j + 1)] = -2;
        row[slot(j + 2)] = 1;
        rows.push(row);
    }
    IntMatrix::from_rows(&rows)
}

/// Quotient of the Denjoy clopen lattice by the second differences of the
/// rotation: free of rank 3 at every depth.
pub fn example16_quotient(depth: usize) -> AbGroupInvariants {
    assert!(depth >= 1, "depth must be at least 1");
    let relations = example16_relations(depth);
    cokernel_invariants(&AbGroupPresentation::new(2 * depth + 2, relations))
}

/// One domain column of the truncated connecting map: which generator
/// slot it lives in, which clopen basis vector, which level-L cylinder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaColumn {
    pub slot: Letter,
    pub k: usize,
    pub word: ReducedWord,
}

/// Kernel data of the truncated connecting map
/// `ζ(γ_a, γ_b) = (1 − a_*)γ_a + (1 − b_*)γ_b`.
pub struct K1Result {
    pub rank: usize,
    pub basis: Vec<Vec<BigInt>>,
    pub columns: Vec<ZetaColumn>,
    pub zeta: IntMatrix,
}

/// Assemble ζ on the truncated domain (columns restricted to clopen basis
/// vectors whose slot action is defined) and compute its integer kernel.
pub fn pv_k1_kernel(model: &DiagonalActionModel) -> Result<K1Result, KtheoryError> {
    let source = TensorBasis::new(model.k_dim(), model.boundary_level());
    let target = TensorBasis::new(model.k_dim(), model.boundary_level() + 1);

    let mut columns = Vec::new();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for slot in [Letter::A, Letter::B] {
        for k in 0..model.k_dim() {
            if !model.map(slot).defined_on(k) {
                continue;
            }
            for w in 0..source.cylinders().len() {
                let col = relation_row(model, slot, k, w, &source, &target)
                    .expect("clopen image checked defined");
                columns.push(ZetaColumn {
                    slot,
                    k,
                    word: source.cylinders().word(w).clone(),
                });
                cols.push(col);
            }
        }
    }

    let mut zeta = IntMatrix::zeros(target.dim(), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            if c != 0 {
                zeta.set(i, j, BigInt::from(c));
            }
        }
    }
    let basis = kernel_basis(&zeta);
    Ok(K1Result {
        rank: basis.len(),
        basis,
        columns,
        zeta,
    })
}

/// Domain vector of the commutation kernel element
/// `(1 ⊗ (1−β)f, 1 ⊗ (α−1)f)` in the coordinates of `result.columns`.
/// `None` when an action leaves the window or a needed column was not
/// part of the truncated domain.
pub fn m_vector(model: &DiagonalActionModel, result: &K1Result, f: &[i64]) -> Option<Vec<BigInt>> {
    let a_part = sub(f, &model.apply_letter(Letter::B, f)?);
    let b_part = minus_one(model, Letter::A, f)?;
    let mut v = vec![BigInt::ZERO; result.columns.len()];
    for (part, slot) in [(&a_part, Letter::A), (&b_part, Letter::B)] {
        for (k, &c) in part.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, col) in result.columns.iter().enumerate() {
                if col.slot == slot && col.k == k {
                    v[j] = BigInt::from(c);
                }
            }
            if !result
                .columns
                .iter()
                .any(|col| col.slot == slot && col.k == k)
            {
                return None;
            }
        }
    }
    Some(v)
}

/// One row of a stabilization sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub depth: usize,
    pub level: usize,
    pub invariants: AbGroupInvariants,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Index of the first row from which every later row matches the
    /// caller-supplied prediction; `None` without a prediction or match.
    pub stable_from: Option<usize>,
}

/// Run a family of computations over (depth, level) points and compare
/// against a caller-supplied closed form. Predictions never live in the
/// engine: the caller decides what stabilization should look like.
pub fn stabilization_sweep(
    points: &[(usize, usize)],
    compute: impl Fn(usize, usize) -> Result<AbGroupInvariants, KtheoryError>,
    predict: Option<&dyn Fn(usize, usize) -> AbGroupInvariants>,
) -> Result<SweepTable, KtheoryError> {
    let mut rows = Vec::new();
    for &(depth, level) in points {
        rows.push(SweepRow {
            depth,
            level,
            invariants: compute(depth, level)?,
        });
    }
    let stable_from = predict.and_then(|p| {
        let matches: Vec<bool> = rows
            .iter()
            .map(|r| r.invariants == p(r.depth, r.level))
            .collect();
        (0..rows.len()).find(|&i| matches[i..].iter().all(|&m| m))
    });
    Ok(SweepTable { rows, stable_from })
}
