//! The tensor lattice `C(K) ⊗ C(cylinders)` at a fixed boundary level and
//! the relation rows of the crossed-product presentation on it.

use crate::freeboundary::{
    act_generator, refine, BoundaryVector, CylinderBasis, Letter, ReducedWord,
};

use super::model::DiagonalActionModel;

/// Basis of the tensor lattice: clopen index major, cylinder index minor,
/// both in their canonical orders, which keeps every assembled matrix
/// byte-identical across runs.
pub struct TensorBasis {
    k_dim: usize,
    cylinders: CylinderBasis,
}

impl TensorBasis {
    pub fn new(k_dim: usize, level: usize) -> Self {
        TensorBasis {
            k_dim,
            cylinders: CylinderBasis::new(level),
        }
    }

    pub fn dim(&self) -> usize {
        self.k_dim * self.cylinders.len()
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn level(&self) -> usize {
        self.cylinders.level()
    }

    pub fn cylinders(&self) -> &CylinderBasis {
        &self.cylinders
    }

    pub fn index(&self, k: usize, cyl: usize) -> usize {
        k * self.cylinders.len() + cyl
    }
}

/// Integer combination of tensor basis elements at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    pub level: usize,
    pub k_dim: usize,
    pub coeffs: Vec<i64>,
}

impl TensorVector {
    pub fn zero(k_dim: usize, level: usize) -> Self {
        let basis = TensorBasis::new(k_dim, level);
        TensorVector {
            level,
            k_dim,
            coeffs: vec![0; basis.dim()],
        }
    }

    /// `f ⊗ p_ω` for a clopen coefficient vector and a single cylinder.
    pub fn simple(f: &[i64], word: &ReducedWord) -> Self {
        let basis = TensorBasis::new(f.len(), word.len());
        let cyl = basis.cylinders().index_of(word);
        let mut v = TensorVector::zero(f.len(), word.len());
        for (k, &c) in f.iter().enumerate() {
            v.coeffs[basis.index(k, cyl)] = c;
        }
        v
    }
}

/// The level-(L+1) row of the relation `F − φ_g F` sourced at the tensor
/// basis element `e_k ⊗ p_ω` of level L: the refinement of the source
/// minus the image `(g·e_k) ⊗ (g·p_ω)`. `None` when the clopen image of
/// `e_k` leaves the window (the relation is then simply not emitted).
pub fn relation_row(
    model: &DiagonalActionModel,
    g: Letter,
    k: usize,
    word_idx: usize,
    source: &TensorBasis,
    target: &TensorBasis,
) -> Option<Vec<i64>> {
    debug_assert_eq!(target.level(), source.level() + 1);
    let image_k = model.apply_letter(g, &model.unit_vector(k))?;

    let mut one_hot = BoundaryVector::zero(source.level());
    one_hot.coeffs[word_idx] = 1;
    let refined = refine(&one_hot);
    let moved = act_generator(g, &one_hot);

    let mut row = vec![0i64; target.dim()];
    for (cyl, &c) in refined.coeffs.iter().enumerate() {
        if c != 0 {
            row[target.index(k, cyl)] += c;
        }
    }
    for (k2, &a) in image_k.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (cyl, &c) in moved.coeffs.iter().enumerate() {
            if c != 0 {
                row[target.index(k2, cyl)] -= a * c;
            }
        }
    }
    Some(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeboundary::ReducedWord;

    #[test]
    fn tensor_index_is_k_major() {
        let basis = TensorBasis::new(3, 1);
        assert_eq!(basis.dim(), 12);
        assert_eq!(basis.index(0, 3), 3);
        assert_eq!(basis.index(1, 0), 4);
        assert_eq!(basis.index(2, 3), 11);
    }

    #[test]
    fn simple_tensor_places_coefficients() {
        let w = ReducedWord::parse("ab").unwrap();
        let v = TensorVector::simple(&[2, 0, -1], &w);
        let basis = TensorBasis::new(3, 2);
        let cyl = basis.cylinders().index_of(&w);
        assert_eq!(v.coeffs[basis.index(0, cyl)], 2);
        assert_eq!(v.coeffs[basis.index(2, cyl)], -1);
        assert_eq!(v.coeffs.iter().filter(|&&c| c != 0).count(), 2);
    }

    #[test]
    fn relation_row_on_point_model() {
        // refine(p_a) − a·p_a = (p_aa + p_ab + p_aB) − p_aa
        let model = DiagonalActionModel::point(1).unwrap();
        let source = TensorBasis::new(1, 1);
        let target = TensorBasis::new(1, 2);
        let w_a = source
            .cylinders()
            .index_of(&ReducedWord::parse("a").unwrap());
        let row = relation_row(&model, Letter::A, 0, w_a, &source, &target).unwrap();
        let idx = |s: &str| target.cylinders().index_of(&ReducedWord::parse(s).unwrap());
        assert_eq!(row[idx("aa")], 0);
        assert_eq!(row[idx("ab")], 1);
        assert_eq!(row[idx("aB")], 1);
        assert_eq!(row.iter().filter(|&&c| c != 0).count(), 2);

        // the whole-space class is fixed: summing rows over all sources
        // of one letter gives refine(1) − g·1 = 0
        for g in Letter::ALL {
            let mut total = vec![0i64; target.dim()];
            for w in 0..source.cylinders().len() {
                let row = relation_row(&model, g, 0, w, &source, &target).unwrap();
                for (t, v) in total.iter_mut().zip(row) {
                    *t += v;
                }
            }
            assert!(total.iter().all(|&c| c == 0), "letter {g:?}");
        }
    }

    #[test]
    fn relation_row_skipped_outside_window() {
        let model = DiagonalActionModel::denjoy(1, 1).unwrap();
        let source = TensorBasis::new(model.k_dim(), 1);
        let target = TensorBasis::new(model.k_dim(), 2);
        // x_1 sits at the top of the window: alpha pushes it out
        let k_top = model.k_dim() - 1;
        assert!(relation_row(&model, Letter::A, k_top, 0, &source, &target).is_none());
        assert!(relation_row(&model, Letter::AInv, k_top, 0, &source, &target).is_some());
    }
}
