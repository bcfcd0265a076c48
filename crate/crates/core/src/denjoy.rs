//! Finite model of the Denjoy Cantor set: a circle cut along finitely many
//! rotation-orbit points, with an interval of length `2^{-|j|}` inserted at
//! the j-th orbit point.
//!
//! Points of the cut circle are either untouched angles or one of the two
//! endpoints of an inserted interval. Distances develop the cut circle onto
//! a circle of enlarged circumference, so the metric axioms hold exactly at
//! every truncation depth and the discarded tail `2·2^{-depth}` is reported
//! as an explicit uncertainty.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DenjoyError {
    #[error("rotation angle {0} outside (0, pi)")]
    AngleOutOfRange(f64),
    #[error("rotation angle over pi looks rational (convergent {p}/{q} within 1e-12)")]
    AngleLooksRational { p: i64, q: i64 },
    #[error("orbit points collide at depth {depth} (step {step})")]
    OrbitCollision { depth: usize, step: usize },
    #[error("orbit index {index} beyond tracked depth {depth}")]
    IndexBeyondDepth { index: i64, depth: usize },
    #[error("free angle {0} coincides with a tracked orbit point; use a side")]
    AmbiguousAngle(f64),
    #[error("coefficient at index {0} would shift outside the tracked window")]
    WindowOverflow(i64),
    #[error("neighborhood count {m} exceeds depth {depth}")]
    TooManyNeighborhoods { m: usize, depth: usize },
}

/// Golden-ratio rotation angle `2π/φ²`; its coding is the Fibonacci word.
pub fn golden_rotation() -> f64 {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    TAU / (phi * phi)
}

/// Reject ratios that are indistinguishable from a small-denominator
/// rational: exactness claims only make sense for genuinely irrational
/// rotation numbers, and a float can only witness that heuristically.
fn looks_rational(ratio: f64) -> Option<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, ratio.floor() as i64, 1i64);
    let mut x = ratio;
    for k in 0..25 {
        let a = x.floor();
        if k > 0 {
            let (p, q) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
            (p0, q0, p1, q1) = (p1, q1, p, q);
        }
        if q1 > 100_000_000 {
            break;
        }
        if q1 <= 10_000 && (ratio - p1 as f64 / q1 as f64).abs() < 1e-12 {
            return Some((p1, q1));
        }
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

/// The cut-circle system: rotation angle, base point and tracked depth.
#[derive(Clone, Debug)]
pub struct DenjoySystem {
    lambda: f64,
    base: f64,
    depth: usize,
}

impl DenjoySystem {
    pub fn new(lambda: f64, base: f64, depth: usize) -> Result<Self, DenjoyError> {
        if !(lambda > 0.0 && lambda < PI) {
            return Err(DenjoyError::AngleOutOfRange(lambda));
        }
        if let Some((p, q)) = looks_rational(lambda / PI) {
            return Err(DenjoyError::AngleLooksRational { p, q });
        }
        let sys = DenjoySystem {
            lambda,
            base: base.rem_euclid(TAU),
            depth,
        };
        for step in 1..=2 * depth {
            let d = (step as f64 * lambda).rem_euclid(TAU);
            if d.min(TAU - d) < 1e-9 {
                return Err(DenjoyError::OrbitCollision { depth, step });
            }
        }
        Ok(sys)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Angle of the j-th orbit point `a_j = a_0 + jλ (mod 2π)`.
    pub fn orbit_angle(&self, j: i64) -> f64 {
        (self.base + j as f64 * self.lambda).rem_euclid(TAU)
    }

    fn tracked_indices(&self) -> impl Iterator<Item = i64> {
        let n = self.depth as i64;
        -n..=n
    }

    /// Inserted-interval length at orbit index j.
    fn gap_length(j: i64) -> f64 {
        2f64.powi(-(j.unsigned_abs() as i32))
    }

    /// Total circumference of the developed cut circle at this depth.
    pub fn circumference(&self) -> f64 {
        TAU + self
            .tracked_indices()
            .map(DenjoySystem::gap_length)
            .sum::<f64>()
    }
}

/// Which endpoint of an inserted interval: `Left` borders the angles below
/// the cut, `Right` the angles above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A point of the cut circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CutPoint {
    Orbit { index: i64, side: Side },
    Free { angle: f64 },
}

impl CutPoint {
    pub fn orbit(index: i64, side: Side) -> Self {
        CutPoint::Orbit { index, side }
    }

    pub fn free(angle: f64) -> Self {
        CutPoint::Free {
            angle: angle.rem_euclid(TAU),
        }
    }
}

/// Position of a point on the developed circle of circumference
/// [`DenjoySystem::circumference`].
fn developed_position(sys: &DenjoySystem, p: &CutPoint) -> Result<f64, DenjoyError> {
    let (angle, include_own_gap, own_index) = match *p {
        CutPoint::Orbit { index, side } => {
            if index.unsigned_abs() as usize > sys.depth {
                return Err(DenjoyError::IndexBeyondDepth {
                    index,
                    depth: sys.depth,
                });
            }
            (sys.orbit_angle(index), side == Side::Right, Some(index))
        }
        CutPoint::Free { angle } => {
            let angle = angle.rem_euclid(TAU);
            for j in sys.tracked_indices() {
                if (angle - sys.orbit_angle(j)).abs() < 1e-12 {
                    return Err(DenjoyError::AmbiguousAngle(angle));
                }
            }
            (angle, false, None)
        }
    };
    let mut pos = angle;
    for j in sys.tracked_indices() {
        let aj = sys.orbit_angle(j);
        if aj < angle || (Some(j) == own_index && include_own_gap) {
            pos += DenjoySystem::gap_length(j);
        }
    }
    Ok(pos)
}

/// A distance value together with the truncation tail it ignores.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceResult {
    pub value: f64,
    pub tail_bound: f64,
}

/// Cut-circle metric `ρ(x, y) = min(m(x,y), m(y,x))`, where `m` travels
/// from `x` to `y` in the direction of increasing angle, accumulating arc
/// length plus every inserted interval crossed on the way.
pub fn denjoy_distance(
    x: &CutPoint,
    y: &CutPoint,
    sys: &DenjoySystem,
) -> Result<DistanceResult, DenjoyError> {
    let c = sys.circumference();
    let px = developed_position(sys, x)?;
    let py = developed_position(sys, y)?;
    let forward = (py - px).rem_euclid(c);
    let value = forward.min(c - forward);
    Ok(DistanceResult {
        value,
        tail_bound: 2.0 * 2f64.powi(-(sys.depth as i32)),
    })
}

/// Integer combination of the clopen basis `{1, x_{-n}, ..., x_n}`, where
/// `x_j` is the characteristic function of the arc from `a_j` to `a_{j+1}`.
/// Index 0 of `coeffs` is the unit; arc coefficients follow in order of j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenVector {
    pub depth: usize,
    pub coeffs: Vec<i64>,
}

impl ClopenVector {
    pub fn zero(depth: usize) -> Self {
        ClopenVector {
            depth,
            coeffs: vec![0; 2 * depth + 2],
        }
    }

    pub fn unit(depth: usize) -> Self {
        let mut v = ClopenVector::zero(depth);
        v.coeffs[0] = 1;
        v
    }

    pub fn arc(depth: usize, j: i64) -> Self {
        let mut v = ClopenVector::zero(depth);
        let slot = Self::slot(depth, j).expect("arc index within depth");
        v.coeffs[slot] = 1;
        v
    }

    pub fn slot(depth: usize, j: i64) -> Option<usize> {
        (j.unsigned_abs() as usize <= depth).then(|| 1 + (j + depth as i64) as usize)
    }

    pub fn unit_coeff(&self) -> i64 {
        self.coeffs[0]
    }

    pub fn arc_coeff(&self, j: i64) -> i64 {
        Self::slot(self.depth, j).map_or(0, |s| self.coeffs[s])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

/// Pushforward along the `power`-th rotation: the unit is fixed and the
/// arc `x_j` moves to `x_{j+power}`. Shifting any nonzero coefficient out
/// of the tracked window is an error, never a silent truncation.
pub fn induced_action(v: &ClopenVector, power: i64) -> Result<ClopenVector, DenjoyError> {
    let mut out = ClopenVector::zero(v.depth);
    out.coeffs[0] = v.coeffs[0];
    let n = v.depth as i64;
    for j in -n..=n {
        let c = v.arc_coeff(j);
        if c == 0 {
            continue;
        }
        let target = j + power;
        match ClopenVector::slot(v.depth, target) {
            Some(slot) => out.coeffs[slot] += c,
            None => return Err(DenjoyError::WindowOverflow(target)),
        }
    }
    Ok(out)
}

/// Integral against the restricted Lebesgue measure: the full circle has
/// mass 2π and every basis arc mass λ. Invariant under [`induced_action`]
/// since that merely permutes arc coefficients.
pub fn measure_functional(v: &ClopenVector, sys: &DenjoySystem) -> f64 {
    let arcs: i64 = v.coeffs[1..].iter().sum();
    TAU * v.unit_coeff() as f64 + sys.lambda * arcs as f64
}

/// Itinerary of the rotation with respect to the partition
/// `[0, λ) ↦ 2`, `[λ, 2π) ↦ 1`, angles measured from the base point. A
/// start hitting the partition boundary within `N` steps is nudged by 1e-9.
pub fn rotation_coding(sys: &DenjoySystem, start: f64, len: usize) -> Vec<u8> {
    let mut start = start.rem_euclid(TAU);
    'retry: for _ in 0..200 {
        let mut word = Vec::with_capacity(len);
        for k in 0..len {
            let rel = (start - sys.base + k as f64 * sys.lambda).rem_euclid(TAU);
            let near_boundary = rel.min(TAU - rel) < 1e-12 || (rel - sys.lambda).abs() < 1e-12;
            if near_boundary {
                start = (start + 1e-9).rem_euclid(TAU);
                continue 'retry;
            }
            word.push(if rel < sys.lambda { 2 } else { 1 });
        }
        return word;
    }
    unreachable!("perturbation always escapes the finitely many boundary hits")
}

/// Open arc on the circle, given by start angle and length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub len: f64,
}

impl Arc {
    pub fn contains(&self, angle: f64) -> bool {
        (angle - self.start).rem_euclid(TAU) < self.len
    }

    pub fn center(&self) -> f64 {
        (self.start + self.len / 2.0).rem_euclid(TAU)
    }

    fn disjoint(&self, other: &Arc) -> bool {
        let d = (other.start - self.start).rem_euclid(TAU);
        d >= self.len && TAU - d >= other.len
    }
}

/// Arcs `U_0, ..., U_m` with `U_j` the j-th rotation of `U_0`, pairwise
/// disjoint, `U_j` containing the j-th orbit point. Rigidity of the
/// rotation makes the translates literal rotations of `U_0`; disjointness
/// is re-verified on the produced arcs.
pub fn disjoint_orbit_neighborhoods(sys: &DenjoySystem, m: usize) -> Result<Vec<Arc>, DenjoyError> {
    if m > sys.depth {
        return Err(DenjoyError::TooManyNeighborhoods {
            m,
            depth: sys.depth,
        });
    }
    let mut min_dist = TAU;
    for i in 0..=m as i64 {
        for j in 0..=m as i64 {
            if i < j {
                let d = (sys.orbit_angle(j) - sys.orbit_angle(i)).rem_euclid(TAU);
                min_dist = min_dist.min(d.min(TAU - d));
            }
        }
    }
    let radius = min_dist / 3.0;
    let arcs: Vec<Arc> = (0..=m as i64)
        .map(|j| Arc {
            start: (sys.orbit_angle(j) - radius).rem_euclid(TAU),
            len: 2.0 * radius,
        })
        .collect();
    for (i, u) in arcs.iter().enumerate() {
        assert!(u.contains(sys.orbit_angle(i as i64)));
        for v in arcs.iter().skip(i + 1) {
            assert!(u.disjoint(v), "neighborhood construction overlapped");
        }
    }
    Ok(arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(depth: usize) -> DenjoySystem {
        DenjoySystem::new(1.0, 0.0, depth).unwrap()
    }

    #[test]
    fn golden_angle_is_accepted() {
        assert!(DenjoySystem::new(golden_rotation(), 0.0, 20).is_ok());
    }

    #[test]
    fn rational_multiples_are_rejected() {
        assert!(matches!(
            DenjoySystem::new(PI / 2.0, 0.0, 4),
            Err(DenjoyError::AngleLooksRational { p: 1, q: 2 })
        ));
        assert!(matches!(
            DenjoySystem::new(2.0 * PI / 3.0, 0.0, 4),
            Err(DenjoyError::AngleLooksRational { .. })
        ));
        assert!(DenjoySystem::new(-0.5, 0.0, 4).is_err());
    }

    #[test]
    fn distance_across_central_cut_is_one() {
        let s = sys(6);
        let x = CutPoint::orbit(0, Side::Left);
        let y = CutPoint::orbit(0, Side::Right);
        let d = denjoy_distance(&x, &y, &s).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        assert_eq!(d.tail_bound, 2.0 * 2f64.powi(-6));
    }

    #[test]
    fn distance_zero_iff_same_point() {
        let s = sys(5);
        let x = CutPoint::orbit(2, Side::Left);
        assert_eq!(denjoy_distance(&x, &x, &s).unwrap().value, 0.0);
        let y = CutPoint::orbit(2, Side::Right);
        assert!(denjoy_distance(&x, &y, &s).unwrap().value > 0.0);
        let f = CutPoint::free(0.5);
        assert_eq!(denjoy_distance(&f, &f, &s).unwrap().value, 0.0);
    }

    #[test]
    fn distance_matches_direct_enumeration() {
        let s = sys(6);
        let x = CutPoint::orbit(1, Side::Right);
        let y = CutPoint::orbit(2, Side::Left);
        let d = denjoy_distance(&x, &y, &s).unwrap();
        // independent route: arc length plus gaps at orbit points strictly
        // inside the arc from a_1 to a_2
        let (a1, a2) = (s.orbit_angle(1), s.orbit_angle(2));
        let arc = (a2 - a1).rem_euclid(TAU);
        let mut expect = arc;
        for j in -6i64..=6 {
            if j == 1 || j == 2 {
                continue;
            }
            let rel = (s.orbit_angle(j) - a1).rem_euclid(TAU);
            if rel > 0.0 && rel < arc {
                expect += 2f64.powi(-(j.unsigned_abs() as i32));
            }
        }
        assert!(
            (d.value - expect).abs() < 1e-12,
            "{} vs {}",
            d.value,
            expect
        );
    }

    #[test]
    fn distance_is_symmetric_and_triangular() {
        let s = sys(5);
        let pts = [
            CutPoint::orbit(0, Side::Left),
            CutPoint::orbit(0, Side::Right),
            CutPoint::orbit(-3, Side::Left),
            CutPoint::orbit(4, Side::Right),
            CutPoint::free(0.7),
            CutPoint::free(3.9),
        ];
        for x in &pts {
            for y in &pts {
                let dxy = denjoy_distance(x, y, &s).unwrap().value;
                let dyx = denjoy_distance(y, x, &s).unwrap().value;
                assert!((dxy - dyx).abs() < 1e-12);
                for z in &pts {
                    let dxz = denjoy_distance(x, z, &s).unwrap().value;
                    let dzy = denjoy_distance(z, y, &s).unwrap().value;
                    assert!(dxy <= dxz + dzy + 1e-12);
                }
            }
        }
    }

    #[test]
    fn unrepresentable_points_error() {
        let s = sys(3);
        let far = CutPoint::orbit(4, Side::Left);
        assert!(matches!(
            denjoy_distance(&far, &far, &s),
            Err(DenjoyError::IndexBeyondDepth { .. })
        ));
        let ambiguous = CutPoint::free(s.orbit_angle(1));
        assert!(matches!(
            denjoy_distance(&ambiguous, &ambiguous, &s),
            Err(DenjoyError::AmbiguousAngle(_))
        ));
    }

    #[test]
    fn action_shifts_arcs_and_fixes_unit() {
        let x0 = ClopenVector::arc(4, 0);
        let shifted = induced_action(&x0, 1).unwrap();
        assert_eq!(shifted, ClopenVector::arc(4, 1));

        let unit = ClopenVector::unit(4);
        assert_eq!(induced_action(&unit, 3).unwrap(), unit);

        let mut v = ClopenVector::arc(4, 2);
        let m = ClopenVector::arc(4, -1);
        for (c, d) in v.coeffs.iter_mut().zip(m.coeffs.iter()) {
            *c += 3 * d;
        }
        let moved = induced_action(&v, -1).unwrap();
        assert_eq!(moved.arc_coeff(1), 1);
        assert_eq!(moved.arc_coeff(-2), 3);
    }

    #[test]
    fn action_overflow_is_an_error() {
        let edge = ClopenVector::arc(3, 3);
        assert!(matches!(
            induced_action(&edge, 1),
            Err(DenjoyError::WindowOverflow(4))
        ));
    }

    #[test]
    fn measure_of_basis_elements() {
        let s = sys(5);
        assert!((measure_functional(&ClopenVector::unit(5), &s) - TAU).abs() < 1e-12);
        assert!((measure_functional(&ClopenVector::arc(5, 5), &s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_invariant_under_action() {
        let s = sys(5);
        let mut v = ClopenVector::unit(5);
        v.coeffs[3] = 4;
        v.coeffs[7] = -2;
        let moved = induced_action(&v, 2).unwrap();
        let before = measure_functional(&v, &s);
        let after = measure_functional(&moved, &s);
        assert!((before - after).abs() < 1e-12);
    }

    #[test]
    fn measure_functional_separates_unit_from_arc_sum() {
        // 2πμ + (2n+1)λμ₀ vanishes only at μ = μ₀ = 0 for irrational λ/π
        let s = DenjoySystem::new(golden_rotation(), 0.0, 4).unwrap();
        let n = 4usize;
        for mu in -10i64..=10 {
            for mu0 in -10i64..=10 {
                if mu == 0 && mu0 == 0 {
                    continue;
                }
                let mut v = ClopenVector::zero(n);
                v.coeffs[0] = mu;
                for slot in 1..v.coeffs.len() {
                    v.coeffs[slot] = mu0;
                }
                assert!(measure_functional(&v, &s).abs() > 1e-9, "mu={mu} mu0={mu0}");
            }
        }
    }

    #[test]
    fn coding_of_near_quarter_rotation() {
        // slightly past a quarter turn: pattern close to 2 1 1 1 repeating
        let s = DenjoySystem::new(TAU * 0.2501234567, 0.0, 2).unwrap();
        let word = rotation_coding(&s, 1e-4, 8);
        assert_eq!(word, vec![2, 1, 1, 1, 2, 1, 1, 1]);
        assert!(rotation_coding(&s, 0.3, 0).is_empty());
    }

    #[test]
    fn coding_of_generic_irrational_is_sturmian() {
        // block counts k+1 for the coding of a generic rotation angle
        let s = DenjoySystem::new(1.0, 0.0, 1).unwrap();
        let word = rotation_coding(&s, 0.37, 4000);
        for k in 1..=8usize {
            let factors = crate::symdyn::factors_of_slice(&word, k);
            assert_eq!(factors.len(), k + 1, "k = {k}");
        }
    }

    #[test]
    fn coding_survives_boundary_hit() {
        let s = DenjoySystem::new(golden_rotation(), 0.0, 2).unwrap();
        // start exactly on the partition endpoint: gets perturbed, not stuck
        let word = rotation_coding(&s, 0.0, 16);
        assert_eq!(word.len(), 16);
    }

    #[test]
    fn neighborhoods_are_disjoint_rotates() {
        let s = sys(6);
        for m in [1, 3, 6] {
            let arcs = disjoint_orbit_neighborhoods(&s, m).unwrap();
            assert_eq!(arcs.len(), m + 1);
            for (j, arc) in arcs.iter().enumerate() {
                assert!(arc.contains(s.orbit_angle(j as i64)));
                // U_j is the j-th rotate of U_0
                let expect = (arcs[0].center() + j as f64 * s.lambda()).rem_euclid(TAU);
                assert!((arc.center() - expect).rem_euclid(TAU).min(TAU) < 1e-9);
            }
        }
        assert!(disjoint_orbit_neighborhoods(&s, 7).is_err());
    }
}
