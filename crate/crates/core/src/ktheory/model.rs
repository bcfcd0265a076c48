//! Partially-defined integer actions on a finite clopen basis, and the
//! two-generator diagonal action models assembled from them.

use thiserror::Error;

use crate::denjoy::{induced_action, ClopenVector};
use crate::freeboundary::{Letter, ReducedWord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KtheoryError {
    #[error("boundary level must be at least 1")]
    LevelTooSmall,
    #[error("partial actions fail to commute on basis index {basis}")]
    CommutationFailure { basis: usize },
    #[error("maps for {letter:?} and its inverse disagree on basis index {basis}")]
    InverseMismatch { letter: Letter, basis: usize },
    #[error("action of {letter:?} undefined on the requested vector")]
    UndefinedAction { letter: Letter },
}

/// Integer-linear map defined column-by-column; a missing column means the
/// image of that basis vector leaves the tracked window.
#[derive(Clone, Debug)]
pub struct PartialMap {
    dim: usize,
    cols: Vec<Option<Vec<i64>>>,
}

impl PartialMap {
    pub fn new(dim: usize, cols: Vec<Option<Vec<i64>>>) -> Self {
        assert_eq!(cols.len(), dim);
        for col in cols.iter().flatten() {
            assert_eq!(col.len(), dim);
        }
        PartialMap { dim, cols }
    }

    pub fn identity(dim: usize) -> Self {
        let cols = (0..dim)
            .map(|j| {
                let mut c = vec![0; dim];
                c[j] = 1;
                Some(c)
            })
            .collect();
        PartialMap { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> Option<&Vec<i64>> {
        self.cols[j].as_ref()
    }

    pub fn defined_on(&self, j: usize) -> bool {
        self.cols[j].is_some()
    }

    /// Image of an arbitrary vector; `None` as soon as a needed column is
    /// missing — no silent truncation.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![0i64; self.dim];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let col = self.cols[j].as_ref()?;
            for (o, e) in out.iter_mut().zip(col.iter()) {
                *o += c * e;
            }
        }
        Some(out)
    }
}

/// Partial map given by the Denjoy rotation pushforward to the given power
/// on the basis `{1, x_{-n}, ..., x_n}`.
fn denjoy_shift_map(depth: usize, shift: i64) -> PartialMap {
    let dim = 2 * depth + 2;
    let cols = (0..dim)
        .map(|j| {
            let mut basis = ClopenVector::zero(depth);
            basis.coeffs[j] = 1;
            induced_action(&basis, shift).ok().map(|v| v.coeffs)
        })
        .collect();
    PartialMap::new(dim, cols)
}

/// A diagonal two-generator action model: four partial maps on the clopen
/// basis (one per generator letter) plus the boundary truncation level.
#[derive(Clone, Debug)]
pub struct DiagonalActionModel {
    kind: String,
    k_dim: usize,
    k_depth: Option<usize>,
    boundary_level: usize,
    maps: [PartialMap; 4],
}

impl DiagonalActionModel {
    /// Assemble and validate: maps for inverse letters must invert each
    /// other where composable, and the two generators must commute as
    /// partial maps — mismatch anywhere is a construction error.
    pub fn from_parts(
        kind: impl Into<String>,
        k_depth: Option<usize>,
        boundary_level: usize,
        alpha: PartialMap,
        alpha_inv: PartialMap,
        beta: PartialMap,
        beta_inv: PartialMap,
    ) -> Result<Self, KtheoryError> {
        if boundary_level < 1 {
            return Err(KtheoryError::LevelTooSmall);
        }
        let k_dim = alpha.dim();
        let maps = [alpha, alpha_inv, beta, beta_inv];
        assert!(maps.iter().all(|m| m.dim() == k_dim));

        let unit = |j: usize| {
            let mut v = vec![0i64; k_dim];
            v[j] = 1;
            v
        };
        for (fwd, letter) in [(0usize, Letter::A), (2, Letter::B)] {
            let inv = fwd + 1;
            for j in 0..k_dim {
                let round_trips = [
                    maps[fwd].column(j).and_then(|c| maps[inv].apply(c)),
                    maps[inv].column(j).and_then(|c| maps[fwd].apply(c)),
                ];
                for rt in round_trips.into_iter().flatten() {
                    if rt != unit(j) {
                        return Err(KtheoryError::InverseMismatch { letter, basis: j });
                    }
                }
            }
        }
        for j in 0..k_dim {
            let ab = maps[2].column(j).and_then(|c| maps[0].apply(c));
            let ba = maps[0].column(j).and_then(|c| maps[2].apply(c));
            if let (Some(x), Some(y)) = (ab, ba) {
                if x != y {
                    return Err(KtheoryError::CommutationFailure { basis: j });
                }
            }
        }

        Ok(DiagonalActionModel {
            kind: kind.into(),
            k_dim,
            k_depth,
            boundary_level,
            maps,
        })
    }

    /// Trivial one-point clopen factor: both generators act as the
    /// identity on `Z`.
    pub fn point(boundary_level: usize) -> Result<Self, KtheoryError> {
        let id = PartialMap::identity(1);
        Self::from_parts(
            "point",
            None,
            boundary_level,
            id.clone(),
            id.clone(),
            id.clone(),
            id,
        )
    }

    /// First generator acts by the Denjoy rotation pushforward, second by
    /// the identity.
    pub fn denjoy(depth: usize, boundary_level: usize) -> Result<Self, KtheoryError> {
        let id = PartialMap::identity(2 * depth + 2);
        Self::from_parts(
            "denjoy",
            Some(depth),
            boundary_level,
            denjoy_shift_map(depth, 1),
            denjoy_shift_map(depth, -1),
            id.clone(),
            id,
        )
    }

    /// Both generators act by the same Denjoy rotation pushforward.
    pub fn denjoy_both(depth: usize, boundary_level: usize) -> Result<Self, KtheoryError> {
        Self::from_parts(
            "denjoy-both",
            Some(depth),
            boundary_level,
            denjoy_shift_map(depth, 1),
            denjoy_shift_map(depth, -1),
            denjoy_shift_map(depth, 1),
            denjoy_shift_map(depth, -1),
        )
    }

    /// Order-two swap on a two-point space: the torsion-producing negative
    /// control.
    pub fn two_point_swap(boundary_level: usize) -> Result<Self, KtheoryError> {
        let swap = PartialMap::new(2, vec![Some(vec![0, 1]), Some(vec![1, 0])]);
        let id = PartialMap::identity(2);
        Self::from_parts(
            "two-point-swap",
            None,
            boundary_level,
            swap.clone(),
            swap,
            id.clone(),
            id,
        )
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn k_depth(&self) -> Option<usize> {
        self.k_depth
    }

    pub fn boundary_level(&self) -> usize {
        self.boundary_level
    }

    pub fn map(&self, letter: Letter) -> &PartialMap {
        &self.maps[match letter {
            Letter::A => 0,
            Letter::AInv => 1,
            Letter::B => 2,
            Letter::BInv => 3,
        }]
    }

    pub fn unit_vector(&self, j: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.k_dim];
        v[j] = 1;
        v
    }

    pub fn apply_letter(&self, letter: Letter, v: &[i64]) -> Option<Vec<i64>> {
        self.map(letter).apply(v)
    }

    /// Apply a group word read left-to-right as a composition, so the
    /// rightmost letter acts first.
    pub fn apply_word(&self, word: &ReducedWord, v: &[i64]) -> Option<Vec<i64>> {
        let mut cur = v.to_vec();
        for &l in word.letters().iter().rev() {
            cur = self.apply_letter(l, &cur)?;
        }
        Some(cur)
    }

    /// Human-readable label of a clopen basis index for reports.
    pub fn basis_label(&self, j: usize) -> String {
        match self.k_depth {
            Some(depth) => {
                if j == 0 {
                    "1".to_string()
                } else {
                    format!("x_{}", j as i64 - 1 - depth as i64)
                }
            }
            None => format!("e_{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denjoy_maps_are_partial_shifts() {
        let model = DiagonalActionModel::denjoy(2, 1).unwrap();
        assert_eq!(model.k_dim(), 6);
        // unit fixed
        let unit = model.unit_vector(0);
        assert_eq!(model.apply_letter(Letter::A, &unit).unwrap(), unit);
        // x_2 shifts out of window
        let edge = model.unit_vector(5);
        assert!(model.apply_letter(Letter::A, &edge).is_none());
        assert_eq!(
            model.apply_letter(Letter::AInv, &edge).unwrap(),
            model.unit_vector(4)
        );
        // identity second generator
        assert_eq!(model.apply_letter(Letter::B, &edge).unwrap(), edge);
    }

    #[test]
    fn apply_word_composes_right_to_left() {
        let model = DiagonalActionModel::denjoy(3, 1).unwrap();
        let x_minus1 = model.unit_vector(3);
        let w = ReducedWord::parse("aa").unwrap();
        assert_eq!(
            model.apply_word(&w, &x_minus1).unwrap(),
            model.unit_vector(5)
        );
        let too_far = ReducedWord::parse("aaaaa").unwrap();
        assert!(model.apply_word(&too_far, &x_minus1).is_none());
    }

    #[test]
    fn noncommuting_maps_are_rejected() {
        // alpha shifts a three-point cycle, beta swaps two of its points:
        // these do not commute
        let cycle = PartialMap::new(
            3,
            vec![
                Some(vec![0, 1, 0]),
                Some(vec![0, 0, 1]),
                Some(vec![1, 0, 0]),
            ],
        );
        let cycle_inv = PartialMap::new(
            3,
            vec![
                Some(vec![0, 0, 1]),
                Some(vec![1, 0, 0]),
                Some(vec![0, 1, 0]),
            ],
        );
        let swap = PartialMap::new(
            3,
            vec![
                Some(vec![0, 1, 0]),
                Some(vec![1, 0, 0]),
                Some(vec![0, 0, 1]),
            ],
        );
        let err =
            DiagonalActionModel::from_parts("bad", None, 1, cycle, cycle_inv, swap.clone(), swap)
                .unwrap_err();
        assert!(matches!(err, KtheoryError::CommutationFailure { .. }));
    }

    #[test]
    fn swap_model_is_legal() {
        // the swap commutes with the identity and is its own inverse
        assert!(DiagonalActionModel::two_point_swap(1).is_ok());
    }

    #[test]
    fn bad_inverse_is_rejected() {
        let shift = PartialMap::new(2, vec![Some(vec![0, 1]), None]);
        let not_inverse = PartialMap::identity(2);
        let err = DiagonalActionModel::from_parts(
            "bad",
            None,
            1,
            shift,
            not_inverse,
            PartialMap::identity(2),
            PartialMap::identity(2),
        )
        .unwrap_err();
        assert!(matches!(err, KtheoryError::InverseMismatch { .. }));
    }

    #[test]
    fn level_zero_is_rejected() {
        assert_eq!(
            DiagonalActionModel::point(0).unwrap_err(),
            KtheoryError::LevelTooSmall
        );
    }
}
