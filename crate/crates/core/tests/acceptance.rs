//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured quantity. Run with
//! `cargo test -p cantorx --test acceptance -- --nocapture`.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cantorx::denjoy::{golden_rotation, rotation_coding, DenjoySystem};
use cantorx::freeboundary::{infiniteness_witness, reduce, Letter, ReducedWord};
use cantorx::ktheory::{
    example16_quotient, m_vector, pv_k0_direct, pv_k0_reduced, pv_k1_kernel, verify_reduction,
    DiagonalActionModel,
};
use cantorx::shiftspec::{
    joint_spectrum_test, periodic_spectrum_of_pattern, polar_identity_check, rotation_weight_check,
    unimodular_witness, JointPoint, WeightSeq,
};
use cantorx::symdyn::{
    block_complexity, factors_of_slice, fibonacci_word, language, slope_estimate,
    two_sided_fibonacci, BiSequence,
};
use cantorx::zlattice::{smith_normal_form, AbGroupInvariants, IntMatrix};

fn trimmed(x: &BiSequence, radius: usize) -> BiSequence {
    assert!(radius <= x.radius());
    let symbols: Vec<u8> = (-(radius as i64)..=radius as i64)
        .map(|i| x.get(i))
        .collect();
    BiSequence::new(symbols).unwrap()
}

#[test]
fn criterion_01_example16_rank_three_at_every_depth() {
    let start = Instant::now();
    for depth in 1..=50 {
        let inv = example16_quotient(depth);
        assert_eq!(inv, AbGroupInvariants::free(3), "depth {depth}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 01 (second-difference quotient, depths 1..50): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_direct_equals_reduced_across_models() {
    let start = Instant::now();
    let mut combos = 0;
    for depth in 1..=4usize {
        for level in 1..=3usize {
            let models = [
                DiagonalActionModel::point(level).unwrap(),
                DiagonalActionModel::denjoy(depth, level).unwrap(),
                DiagonalActionModel::denjoy_both(depth, level).unwrap(),
            ];
            for model in &models {
                let direct = pv_k0_direct(model).unwrap();
                let reduced = pv_k0_reduced(model).unwrap();
                assert_eq!(
                    direct,
                    reduced,
                    "model {} depth {depth} level {level}",
                    model.kind()
                );
                combos += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("criterion 02 (direct = reduced on {combos} combos): PASS in {elapsed:?}");
}

#[test]
fn criterion_03_point_model_stabilizes_at_rank_two() {
    for level in 2..=4usize {
        let model = DiagonalActionModel::point(level).unwrap();
        let inv = pv_k0_direct(&model).unwrap();
        assert_eq!(inv, AbGroupInvariants::free(2), "level {level}");
    }
    // independent oracle: the four-cylinder relation matrix has invariant
    // factors [1, 1], so the quotient of Z^4 by it is free of rank 2
    let oracle = IntMatrix::from_rows(&[
        vec![0, 0, -1, -1],
        vec![0, 0, -1, -1],
        vec![-1, -1, 0, 0],
        vec![-1, -1, 0, 0],
    ]);
    let snf = smith_normal_form(&oracle);
    assert_eq!(
        snf.invariant_factors,
        vec![BigInt::from(1), BigInt::from(1)]
    );
    println!("criterion 03 (point model rank 2 from level 2; 4x4 oracle factors [1,1]): PASS");
}

#[test]
fn criterion_04_reduction_verification_and_negative_control() {
    let model = DiagonalActionModel::denjoy(4, 2).unwrap();
    let report = verify_reduction(&model, 200, 0, false);
    let membership = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("phi-relation"))
        .count();
    assert_eq!(membership, 200, "expected 200 evaluated membership checks");
    assert!(
        report.all_pass(),
        "failures: {:?}",
        report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.clone())
            .collect::<Vec<_>>()
    );

    let corrupted = verify_reduction(&model, 200, 0, true);
    assert!(
        corrupted.passed < corrupted.evaluated,
        "negative control failed to fail"
    );
    println!(
        "criterion 04 (200/200 membership + identities pass; corrupted control fails {}): PASS",
        corrupted.evaluated - corrupted.passed
    );
}

#[test]
fn criterion_05_k1_kernel_rank_and_exactness() {
    for depth in 2..=8usize {
        let model = DiagonalActionModel::denjoy(depth, 1).unwrap();
        let result = pv_k1_kernel(&model).unwrap();
        assert!(
            result.rank >= 2 * depth,
            "depth {depth}: rank {} < {}",
            result.rank,
            2 * depth
        );
        let n = depth as i64;
        for j in -n..n {
            let f = model.unit_vector((1 + j + n) as usize);
            let v = m_vector(&model, &result, &f).expect("commutation vector in window");
            assert!(v.iter().any(|c| !c.is_zero()));
            let image = result.zeta.mul_vec(&v).unwrap();
            assert!(
                image.iter().all(Zero::is_zero),
                "depth {depth} j {j}: nonzero image"
            );
        }
    }
    println!("criterion 05 (kernel rank >= 2n, commutation vectors map to zero): PASS");
}

#[test]
fn criterion_06_fibonacci_block_complexity() {
    let start = Instant::now();
    let x = two_sided_fibonacci(6);
    for k in 1..=30 {
        assert_eq!(block_complexity(&x, k).unwrap(), k + 1, "k = {k}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 06 (p_k = k+1 for k <= 30): PASS in {elapsed:?}");
}

#[test]
fn criterion_07_slope_converges_to_golden_conjugate() {
    let x = two_sided_fibonacci(5);
    let target = (3.0 - 5f64.sqrt()) / 2.0;
    let mut n = 8usize;
    while n <= 512 {
        let s = slope_estimate(&x, n).unwrap();
        let value = *s.numer() as f64 / *s.denom() as f64;
        let err = (value - target).abs();
        assert!(err <= 2.0 / n as f64 + 1e-12, "N = {n}: error {err}");
        n *= 2;
    }
    println!("criterion 07 (|slope(N) - (3-sqrt5)/2| <= 2/N for N in 8..512): PASS");
}

#[test]
fn criterion_08_rotation_coding_matches_fibonacci_language() {
    let sys = DenjoySystem::new(golden_rotation(), 0.0, 1).unwrap();
    let coding = rotation_coding(&sys, 0.1, 5000);
    let reference = fibonacci_word(20);
    for k in 1..=8 {
        let coded = factors_of_slice(&coding, k);
        let fib = factors_of_slice(&reference, k);
        assert_eq!(coded, fib, "factor sets of length {k} differ");
        assert_eq!(coded.len(), k + 1);
    }
    println!("criterion 08 (coding factors = Fibonacci factors up to length 8): PASS");
}

#[test]
fn criterion_09_unimodular_witness_bound() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let circle: Vec<Complex64> = (0..8)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 8.0))
        .collect();
    for _ in 0..20 {
        for &n in &[50usize, 200, 800] {
            let radius = n as i64 + 2;
            let values: Vec<Complex64> = (0..2 * radius + 1)
                .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let weights = WeightSeq::new(values);
            let bound = (2.0 / (n as f64 + 1.0)).sqrt() + 1e-9;
            for &lambda in &circle {
                let residual = unimodular_witness(&weights, lambda, n).unwrap();
                assert!(residual <= bound, "n {n}: {residual} > {bound}");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 09 (480 witness residuals under sqrt(2/(n+1)) + 1e-9): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_10_polar_and_rotation_identities() {
    let x = trimmed(&two_sided_fibonacci(4), 128);
    let polar = polar_identity_check(&x).unwrap();
    assert!(polar <= 1e-12, "polar residual {polar}");

    let theta = (5f64.sqrt() - 1.0) / 2.0;
    let rotation = rotation_weight_check(theta, 128);
    assert!(
        rotation.sqrt_identity_residual <= 1e-12,
        "sqrt identity residual {}",
        rotation.sqrt_identity_residual
    );
    assert!(
        rotation.commutation_residual <= 1e-12,
        "commutation residual {}",
        rotation.commutation_residual
    );
    println!(
        "criterion 10 (interior residuals at W=128: polar {polar:.2e}, sqrt {:.2e}, comm {:.2e}): PASS",
        rotation.sqrt_identity_residual, rotation.commutation_residual
    );
}

#[test]
fn criterion_11_periodic_weight_spectra() {
    let spec = periodic_spectrum_of_pattern(&[1.0, 2.0], 8).unwrap();
    assert_eq!(spec.eigenvalues.len(), 16);
    assert!((spec.predicted_radius - 2f64.sqrt()).abs() < 1e-15);
    assert!(
        spec.max_modulus_deviation <= 1e-9,
        "deviation {}",
        spec.max_modulus_deviation
    );

    let spec = periodic_spectrum_of_pattern(&[1.0, 1.0, 2.0], 8).unwrap();
    assert!((spec.predicted_radius - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    assert!(
        spec.max_modulus_deviation <= 1e-9,
        "deviation {}",
        spec.max_modulus_deviation
    );
    println!("criterion 11 (cyclic spectra on the predicted circles): PASS");
}

#[test]
fn criterion_12_joint_spectrum_grid() {
    let x = two_sided_fibonacci(4);
    let pairs = language(&x, 2).unwrap();
    let n = 41usize;
    let (lo, hi) = (0.5f64, 2.5f64);
    let coord = |i: usize| (lo * (n - 1 - i) as f64 + hi * i as f64) / (n - 1) as f64;
    let mut zero_hits = 0;
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (coord(i), coord(j));
            let point = JointPoint::new(
                vec![0, 1],
                vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
            );
            let score = joint_spectrum_test(&x, &point);
            let lattice_pair = (a == 1.0 || a == 2.0) && (b == 1.0 || b == 2.0);
            let occurring = lattice_pair && pairs.contains(&vec![a as u8, b as u8]);
            if occurring {
                assert_eq!(score, 0.0, "occurring pair ({a}, {b}) must score zero");
                zero_hits += 1;
            } else {
                assert!(score > 0.0, "non-occurring point ({a}, {b}) scored zero");
            }
            if a == 2.0 && b == 2.0 {
                assert!(score >= 0.25, "pair (2,2) score {score}");
            }
        }
    }
    assert_eq!(zero_hits, 3, "exactly the three occurring pairs score zero");
    println!("criterion 12 (41x41 joint grid: zeros exactly at occurring pairs): PASS");
}

#[test]
fn criterion_13_randomized_infiniteness_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..100 {
        let len = rng.gen_range(1..=8);
        let mut letters = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::ALL[rng.gen_range(0..4)];
            if letters.last() == Some(&l.inverse()) {
                continue;
            }
            letters.push(l);
        }
        let omega = reduce(&letters);
        assert_eq!(omega.len(), len);
        let g = infiniteness_witness(&omega);
        assert!(
            ReducedWord::is_reduced(g.letters()),
            "trial {trial}: unreduced"
        );
        assert_eq!(g.exponent_sum_a(), 0, "trial {trial}");
        assert_eq!(g.exponent_sum_b(), 0, "trial {trial}");
        assert!(
            g.starts_with(&omega) && g.len() > omega.len(),
            "trial {trial}: cylinder not strictly shrunk"
        );
    }
    println!("criterion 13 (100 witnesses reduced, zero sums, strict prefix): PASS");
}
