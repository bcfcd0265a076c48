//! The reduction of the boundary-cylinder presentation to four and then
//! two clopen coordinates, together with a sampled exactness checker.
//!
//! A tensor class `[f ⊗ p_ω]` collapses to a single-letter class by
//! peeling the word from the front: `Φ(f ⊗ p_{x_1…x_n})` applies
//! `x_{n-1}⁻¹ ⋯ x_1⁻¹` to `f` and deposits the result in the coordinate
//! of the trailing letter `x_n`. `Ψ` sends a coordinate back to its
//! single-letter cylinder. On the four-coordinate side, `Γ` and `Θ`
//! eliminate the inverse-letter coordinates against the relation rows.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::freeboundary::{act_generator, BoundaryVector, CylinderBasis, Letter, ReducedWord};
use crate::zlattice::{subgroup_membership, IntMatrix};

use super::model::DiagonalActionModel;
use super::tensor::TensorVector;

/// Element of `C(K,Z)^4`, one clopen block per generator letter in the
/// fixed letter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadVector {
    pub k_dim: usize,
    pub coeffs: Vec<i64>,
}

impl QuadVector {
    pub fn zero(k_dim: usize) -> Self {
        QuadVector {
            k_dim,
            coeffs: vec![0; 4 * k_dim],
        }
    }

    fn block(letter: Letter) -> usize {
        match letter {
            Letter::A => 0,
            Letter::AInv => 1,
            Letter::B => 2,
            Letter::BInv => 3,
        }
    }

    pub fn from_component(f: &[i64], letter: Letter) -> Self {
        let mut q = QuadVector::zero(f.len());
        q.add_component(f, letter, 1);
        q
    }

    pub fn add_component(&mut self, f: &[i64], letter: Letter, scale: i64) {
        let base = Self::block(letter) * self.k_dim;
        for (i, &c) in f.iter().enumerate() {
            self.coeffs[base + i] += scale * c;
        }
    }

    pub fn component(&self, letter: Letter) -> &[i64] {
        let base = Self::block(letter) * self.k_dim;
        &self.coeffs[base..base + self.k_dim]
    }

    pub fn sub(&self, other: &QuadVector) -> QuadVector {
        assert_eq!(self.k_dim, other.k_dim);
        QuadVector {
            k_dim: self.k_dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn to_bigint(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }
}

/// Element of `C(K,Z)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVector {
    pub k_dim: usize,
    pub coeffs: Vec<i64>,
}

impl PairVector {
    pub fn zero(k_dim: usize) -> Self {
        PairVector {
            k_dim,
            coeffs: vec![0; 2 * k_dim],
        }
    }

    pub fn from_components(first: &[i64], second: &[i64]) -> Self {
        assert_eq!(first.len(), second.len());
        let mut coeffs = first.to_vec();
        coeffs.extend_from_slice(second);
        PairVector {
            k_dim: first.len(),
            coeffs,
        }
    }

    pub fn first(&self) -> &[i64] {
        &self.coeffs[..self.k_dim]
    }

    pub fn second(&self) -> &[i64] {
        &self.coeffs[self.k_dim..]
    }
}

/// The four-coordinate relation family of the model: for each letter `X`
/// defined on a basis vector `f`, the row `(X·f)_X − f_X − Δf`, where `Δ`
/// collects the two coordinates of the other generator.
pub fn quad_relation_matrix(model: &DiagonalActionModel) -> IntMatrix {
    let d = model.k_dim();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for x in Letter::ALL {
        let delta_blocks = match x {
            Letter::A | Letter::AInv => [Letter::B, Letter::BInv],
            Letter::B | Letter::BInv => [Letter::A, Letter::AInv],
        };
        for k in 0..d {
            let f = model.unit_vector(k);
            let Some(image) = model.apply_letter(x, &f) else {
                continue;
            };
            let mut row = QuadVector::zero(d);
            row.add_component(&image, x, 1);
            row.add_component(&f, x, -1);
            for b in delta_blocks {
                row.add_component(&f, b, -1);
            }
            rows.push(row.to_bigint());
        }
    }
    let mut m = IntMatrix::zeros(rows.len(), 4 * d);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// `Φ(f ⊗ p_ω)`: apply the inverse of the length-(n−1) prefix of `ω` to
/// `f` and place the result in the coordinate of the last letter. `None`
/// when the composed action leaves the window.
pub fn phi_map(f: &[i64], omega: &ReducedWord, model: &DiagonalActionModel) -> Option<QuadVector> {
    assert!(!omega.is_empty(), "phi needs a nonempty cylinder word");
    let op = omega.prefix(omega.len() - 1).inverse();
    let moved = model.apply_word(&op, f)?;
    Some(QuadVector::from_component(&moved, omega.last().unwrap()))
}

/// `Φ` extended additively to a tensor vector.
pub fn phi_tensor(tv: &TensorVector, model: &DiagonalActionModel) -> Option<QuadVector> {
    let cylinders = CylinderBasis::new(tv.level);
    let mut out = QuadVector::zero(tv.k_dim);
    for (idx, &c) in tv.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let k = idx / cylinders.len();
        let w = cylinders.word(idx % cylinders.len());
        let mut f = vec![0i64; tv.k_dim];
        f[k] = c;
        let term = phi_map(&f, w, model)?;
        for (o, t) in out.coeffs.iter_mut().zip(term.coeffs.iter()) {
            *o += t;
        }
    }
    Some(out)
}

/// `Ψ(f_x) = f ⊗ p_x` at boundary level one, extended additively.
pub fn psi_map(q: &QuadVector) -> TensorVector {
    let mut out = TensorVector::zero(q.k_dim, 1);
    let cylinders = CylinderBasis::new(1);
    for letter in Letter::ALL {
        let cyl = cylinders.index_of(&ReducedWord::single(letter));
        for (k, &c) in q.component(letter).iter().enumerate() {
            out.coeffs[k * cylinders.len() + cyl] += c;
        }
    }
    out
}

/// `Γ` on the four coordinate generators, landing in `C(K,Z)²`.
pub fn gamma_map(f: &[i64], letter: Letter, model: &DiagonalActionModel) -> Option<PairVector> {
    let zero = vec![0i64; f.len()];
    let neg: Vec<i64> = f.iter().map(|&c| -c).collect();
    let diff = |g: Letter| -> Option<Vec<i64>> {
        let image = model.apply_letter(g, f)?;
        Some(image.iter().zip(f).map(|(a, b)| a - b).collect())
    };
    Some(match letter {
        Letter::A => PairVector::from_components(f, &zero),
        Letter::B => PairVector::from_components(&zero, f),
        Letter::AInv => PairVector::from_components(&neg, &diff(Letter::B)?),
        Letter::BInv => PairVector::from_components(&diff(Letter::A)?, &neg),
    })
}

/// `Θ(u, v) = u_a + v_b`.
pub fn theta_map(p: &PairVector) -> QuadVector {
    let mut q = QuadVector::zero(p.k_dim);
    q.add_component(p.first(), Letter::A, 1);
    q.add_component(p.second(), Letter::B, 1);
    q
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub evaluated: usize,
    pub passed: usize,
    pub skipped_samples: usize,
    pub corrupted: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.evaluated
    }
}

fn random_reduced_word(rng: &mut ChaCha8Rng, len: usize) -> ReducedWord {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if letters.last() == Some(&l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    crate::freeboundary::reduce(&letters)
}

/// Membership vector of the relation `F − φ_g F` under `Φ`, for the
/// tensor basis element `F = e_k ⊗ p_ω`. Exactly zero unless `ω` is the
/// single letter `g⁻¹`, in which case it is a signed sum of relation
/// rows; either way it must lie in the row span of the relation family.
fn phi_relation_vector(
    model: &DiagonalActionModel,
    g: Letter,
    k: usize,
    omega: &ReducedWord,
) -> Option<QuadVector> {
    let f = model.unit_vector(k);
    let phi_f = phi_map(&f, omega, model)?;

    let image_k = model.apply_letter(g, &f)?;
    let mut one_hot = BoundaryVector::zero(omega.len());
    one_hot.coeffs[CylinderBasis::new(omega.len()).index_of(omega)] = 1;
    let moved = act_generator(g, &one_hot);
    let target = CylinderBasis::new(omega.len() + 1);

    let mut phi_moved = QuadVector::zero(model.k_dim());
    for (cyl, &c) in moved.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let scaled: Vec<i64> = image_k.iter().map(|&v| c * v).collect();
        let term = phi_map(&scaled, target.word(cyl), model)?;
        for (o, t) in phi_moved.coeffs.iter_mut().zip(term.coeffs.iter()) {
            *o += t;
        }
    }
    Some(phi_f.sub(&phi_moved))
}

/// Sampled verification that the reduction maps respect the presentation:
/// `Φ` sends relations into the row span of the four-coordinate relation
/// family, `Θ∘Γ` is the identity modulo that family, and `Γ∘Θ` is the
/// identity on the nose. With `corrupt` set, the relation lattice is
/// doubled before the membership tests — a negative control that must
/// produce failures.
pub fn verify_reduction(
    model: &DiagonalActionModel,
    samples: usize,
    seed: u64,
    corrupt: bool,
) -> VerifyReport {
    let mut relations = quad_relation_matrix(model);
    if corrupt {
        let doubled = relations.mul(&{
            let mut two = IntMatrix::identity(relations.cols());
            for i in 0..relations.cols() {
                two.set(i, i, BigInt::from(2));
            }
            two
        });
        relations = doubled;
    }
    let member = |v: &QuadVector| subgroup_membership(&relations, &v.to_bigint()).unwrap();

    let mut checks = Vec::new();
    let mut skipped_samples = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // mandatory single-letter relation checks: the only samples whose
    // membership vector is nonzero, hence the ones a corrupted family fails
    let mut mandatory: Vec<(Letter, usize, ReducedWord)> = Vec::new();
    for g in Letter::ALL {
        let omega = ReducedWord::single(g.inverse());
        let mut taken = 0;
        for k in 0..model.k_dim() {
            if taken >= 2 {
                break;
            }
            if phi_relation_vector(model, g, k, &omega).is_some() {
                mandatory.push((g, k, omega.clone()));
                taken += 1;
            }
        }
    }

    let mut evaluated_samples = 0usize;
    let mut attempts = 0usize;
    while evaluated_samples < samples && attempts < 200 * samples {
        attempts += 1;
        let (g, k, omega) = if evaluated_samples < mandatory.len() {
            mandatory[evaluated_samples].clone()
        } else {
            let g = Letter::ALL[rng.gen_range(0..4)];
            let k = rng.gen_range(0..model.k_dim());
            let len = rng.gen_range(1..=3);
            (g, k, random_reduced_word(&mut rng, len))
        };
        let Some(v) = phi_relation_vector(model, g, k, &omega) else {
            skipped_samples += 1;
            continue;
        };
        evaluated_samples += 1;
        checks.push(CheckResult {
            name: format!("phi-relation g={} k={k} w={omega}", g.to_char()),
            pass: member(&v),
        });
    }

    // Θ∘Γ = id on the four coordinate generators, modulo relations
    for letter in Letter::ALL {
        let mut done = false;
        for k in 0..model.k_dim() {
            let f = model.unit_vector(k);
            let Some(pair) = gamma_map(&f, letter, model) else {
                continue;
            };
            let defect = theta_map(&pair).sub(&QuadVector::from_component(&f, letter));
            checks.push(CheckResult {
                name: format!("theta-gamma {}_k{k}", letter.to_char()),
                pass: member(&defect),
            });
            done = true;
            break;
        }
        if !done {
            skipped_samples += 1;
        }
    }

    // Γ∘Θ = id on the two pair generators: exact, no quotient needed
    for (name, letter) in [
        ("gamma-theta first", Letter::A),
        ("gamma-theta second", Letter::B),
    ] {
        let f = model.unit_vector(0);
        let pair = match letter {
            Letter::A => PairVector::from_components(&f, &vec![0; f.len()]),
            _ => PairVector::from_components(&vec![0; f.len()], &f),
        };
        let back = gamma_map(
            match letter {
                Letter::A => pair.first(),
                _ => pair.second(),
            },
            letter,
            model,
        )
        .expect("gamma on direct coordinates is total");
        checks.push(CheckResult {
            name: name.to_string(),
            pass: back == pair,
        });
    }

    let evaluated = checks.len();
    let passed = checks.iter().filter(|c| c.pass).count();
    VerifyReport {
        checks,
        evaluated,
        passed,
        skipped_samples,
        corrupted: corrupt,
    }
}
