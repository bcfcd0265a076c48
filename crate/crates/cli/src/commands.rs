//! Subcommand implementations. Every JSON payload is serialized with a
//! fixed field order and sorted maps, so identical inputs give identical
//! bytes.

use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cantorx::denjoy::{
    denjoy_distance, measure_functional, rotation_coding, ClopenVector, DenjoySystem,
};
use cantorx::freeboundary::{
    act_generator, infiniteness_witness, minimality_witness, BoundaryVector, Letter, ReducedWord,
};
use cantorx::ktheory::{
    example16_quotient, pv_k0_direct, pv_k0_reduced, pv_k1_kernel, stabilization_sweep,
    verify_reduction, DiagonalActionModel, KReport, KtheoryError, ModelDesc, SweepReport,
};
use cantorx::shiftspec::{
    joint_spectrum_test, nonsimplicity_scan, periodic_spectrum_of_pattern, rotation_weight_check,
    unimodular_witness, weighted_shift, JointPoint, WeightSeq,
};
use cantorx::symdyn::{
    block_complexity, fibonacci_word, longest_run, slope_estimate, two_sided_fibonacci, BiSequence,
    SeqError,
};
use cantorx::zlattice::AbGroupInvariants;

use crate::args::*;
use crate::parse::*;

#[derive(Debug)]
pub enum CliError {
    Precondition(String),
    BadSequenceFile(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::BadSequenceFile(m) => write!(f, "malformed sequence file: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

impl From<KtheoryError> for CliError {
    fn from(e: KtheoryError) -> Self {
        precondition(e.to_string())
    }
}

fn emit(common: &Common, content: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, content).map_err(CliError::Io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes()).map_err(CliError::Io)
        }
    }
}

fn emit_json<T: Serialize>(common: &Common, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    emit(common, &text)
}

fn load_sequence(source: &SeqSource) -> Result<BiSequence, CliError> {
    if let Some(gen) = source.gen {
        let word = fibonacci_word(gen);
        let radius = (word.len() - 1) / 2;
        let symbols = word[..2 * radius + 1].to_vec();
        return BiSequence::new(symbols).map_err(|e| precondition(e.to_string()));
    }
    if let Some(stage) = source.stage {
        if stage == 0 {
            return Err(precondition("two-sided stage must be at least 1"));
        }
        return Ok(two_sided_fibonacci(stage));
    }
    if let Some(path) = &source.file {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::BadSequenceFile(e.to_string()))?;
        let line = text.lines().next().unwrap_or("");
        return BiSequence::parse(line).map_err(|e| CliError::BadSequenceFile(e.to_string()));
    }
    Err(precondition(
        "no sequence source: pass --gen, --stage or --file",
    ))
}

fn seq_error(e: SeqError) -> CliError {
    precondition(e.to_string())
}

fn parse_letter(c: char) -> Result<Letter, CliError> {
    Letter::from_char(c).map_err(|e| precondition(e.to_string()))
}

fn parse_word(s: &str) -> Result<ReducedWord, CliError> {
    ReducedWord::parse(s).map_err(|e| precondition(e.to_string()))
}

fn build_model(args: &ModelArgs) -> Result<DiagonalActionModel, CliError> {
    Ok(match args.model.as_str() {
        "point" => DiagonalActionModel::point(args.level)?,
        "denjoy" => DiagonalActionModel::denjoy(args.depth, args.level)?,
        "denjoy-both" => DiagonalActionModel::denjoy_both(args.depth, args.level)?,
        "two-point-swap" => DiagonalActionModel::two_point_swap(args.level)?,
        other => return Err(precondition(format!("unknown model {other:?}"))),
    })
}

pub fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Seq(c) => run_seq(c),
        Cmd::Boundary(c) => run_boundary(c),
        Cmd::Denjoy(c) => run_denjoy(c),
        Cmd::Ktheory(c) => run_ktheory(c),
        Cmd::Spectrum(c) => run_spectrum(c),
    }
}

fn run_seq(cmd: SeqCmd) -> Result<(), CliError> {
    match cmd {
        SeqCmd::Fib { common, gen, stage } => {
            #[derive(Serialize)]
            struct FibOut {
                #[serde(skip_serializing_if = "Option::is_none")]
                gen: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                stage: Option<usize>,
                length: usize,
                count2: usize,
                word: String,
                seed: u64,
            }
            let (word, length, count2) = match (gen, stage) {
                (_, Some(stage)) => {
                    if stage == 0 {
                        return Err(precondition("two-sided stage must be at least 1"));
                    }
                    let x = two_sided_fibonacci(stage);
                    let count2 = x.symbols().iter().filter(|&&s| s == 2).count();
                    (x.render(), x.symbols().len(), count2)
                }
                (Some(gen), None) => {
                    let w = fibonacci_word(gen);
                    let count2 = w.iter().filter(|&&s| s == 2).count();
                    let text: String = w.iter().map(|&s| char::from(b'0' + s)).collect();
                    (text, w.len(), count2)
                }
                (None, None) => return Err(precondition("pass --gen or --stage")),
            };
            emit_json(
                &common,
                &FibOut {
                    gen,
                    stage,
                    length,
                    count2,
                    word,
                    seed: common.seed,
                },
            )
        }
        SeqCmd::Complexity {
            common,
            source,
            max_k,
        } => {
            #[derive(Serialize)]
            struct ComplexityOut {
                complexity: std::collections::BTreeMap<usize, usize>,
                seed: u64,
            }
            if max_k == 0 {
                return Err(precondition("max-k must be positive"));
            }
            let x = load_sequence(&source)?;
            let mut complexity = std::collections::BTreeMap::new();
            for k in 1..=max_k {
                complexity.insert(k, block_complexity(&x, k).map_err(seq_error)?);
            }
            emit_json(
                &common,
                &ComplexityOut {
                    complexity,
                    seed: common.seed,
                },
            )
        }
        SeqCmd::Slope { common, source, n } => {
            #[derive(Serialize)]
            struct SlopeOut {
                slope: String,
                decimal: f64,
                n: usize,
                seed: u64,
            }
            if n == 0 {
                return Err(precondition("radius must be positive"));
            }
            let x = load_sequence(&source)?;
            let s = slope_estimate(&x, n).map_err(seq_error)?;
            emit_json(
                &common,
                &SlopeOut {
                    slope: format!("{}/{}", s.numer(), s.denom()),
                    decimal: *s.numer() as f64 / *s.denom() as f64,
                    n,
                    seed: common.seed,
                },
            )
        }
        SeqCmd::Runs {
            common,
            source,
            symbol,
        } => {
            #[derive(Serialize)]
            struct RunsOut {
                symbol: u8,
                longest_run: usize,
                seed: u64,
            }
            let x = load_sequence(&source)?;
            emit_json(
                &common,
                &RunsOut {
                    symbol,
                    longest_run: longest_run(&x, symbol),
                    seed: common.seed,
                },
            )
        }
    }
}

fn run_boundary(cmd: BoundaryCmd) -> Result<(), CliError> {
    match cmd {
        BoundaryCmd::Act {
            common,
            generator,
            word,
        } => {
            #[derive(Serialize)]
            struct ActOut {
                generator: char,
                word: String,
                level: usize,
                coeffs: std::collections::BTreeMap<String, i64>,
                seed: u64,
            }
            let g = parse_letter(generator)?;
            let w = parse_word(&word)?;
            let image = act_generator(g, &BoundaryVector::cylinder(&w));
            emit_json(
                &common,
                &ActOut {
                    generator,
                    word: w.to_string(),
                    level: image.level,
                    coeffs: image.to_named_coeffs(),
                    seed: common.seed,
                },
            )
        }
        BoundaryCmd::Witness { common, kind } => {
            #[derive(Serialize)]
            struct WitnessOut {
                kind: &'static str,
                word: String,
                length: usize,
                exponent_sum_a: i64,
                exponent_sum_b: i64,
                seed: u64,
            }
            let (kind_name, witness) = match kind {
                WitnessKind::Minimality {
                    prefix,
                    source_first,
                    exponent,
                } => {
                    if exponent == 0 {
                        return Err(precondition("exponent must be nonzero"));
                    }
                    let prefix = parse_word(&prefix)?;
                    let first = parse_letter(source_first)?;
                    ("minimality", minimality_witness(&prefix, first, exponent))
                }
                WitnessKind::Infiniteness { word } => {
                    let w = parse_word(&word)?;
                    if w.is_empty() {
                        return Err(precondition("source word must be nonempty"));
                    }
                    ("infiniteness", infiniteness_witness(&w))
                }
            };
            emit_json(
                &common,
                &WitnessOut {
                    kind: kind_name,
                    word: witness.to_string(),
                    length: witness.len(),
                    exponent_sum_a: witness.exponent_sum_a(),
                    exponent_sum_b: witness.exponent_sum_b(),
                    seed: common.seed,
                },
            )
        }
    }
}

fn run_denjoy(cmd: DenjoyCmd) -> Result<(), CliError> {
    match cmd {
        DenjoyCmd::Distance {
            common,
            lambda,
            depth,
            from,
            to,
        } => {
            #[derive(Serialize)]
            struct DistanceOut {
                value: f64,
                tail_bound: f64,
                seed: u64,
            }
            let sys = DenjoySystem::new(parse_lambda(&lambda)?, 0.0, depth)
                .map_err(|e| precondition(e.to_string()))?;
            let x = parse_cutpoint(&from)?;
            let y = parse_cutpoint(&to)?;
            let d = denjoy_distance(&x, &y, &sys).map_err(|e| precondition(e.to_string()))?;
            emit_json(
                &common,
                &DistanceOut {
                    value: d.value,
                    tail_bound: d.tail_bound,
                    seed: common.seed,
                },
            )
        }
        DenjoyCmd::Code {
            common,
            lambda,
            start,
            length,
        } => {
            let sys = DenjoySystem::new(parse_lambda(&lambda)?, 0.0, 1)
                .map_err(|e| precondition(e.to_string()))?;
            let word = rotation_coding(&sys, start, length);
            let mut line: String = word.iter().map(|&s| char::from(b'0' + s)).collect();
            line.push('\n');
            emit(&common, &line)
        }
        DenjoyCmd::Measure {
            common,
            lambda,
            depth,
            coeffs,
        } => {
            #[derive(Serialize)]
            struct MeasureOut {
                value: f64,
                seed: u64,
            }
            let sys = DenjoySystem::new(parse_lambda(&lambda)?, 0.0, depth)
                .map_err(|e| precondition(e.to_string()))?;
            let coeffs = parse_i64_list(&coeffs)?;
            if coeffs.len() != 2 * depth + 2 {
                return Err(precondition(format!(
                    "need {} coefficients for depth {depth}, got {}",
                    2 * depth + 2,
                    coeffs.len()
                )));
            }
            let v = ClopenVector { depth, coeffs };
            emit_json(
                &common,
                &MeasureOut {
                    value: measure_functional(&v, &sys),
                    seed: common.seed,
                },
            )
        }
    }
}

fn run_ktheory(cmd: KtheoryCmd) -> Result<(), CliError> {
    match cmd {
        KtheoryCmd::K0Direct { common, model } => {
            let m = build_model(&model)?;
            let inv = pv_k0_direct(&m)?;
            emit_json(&common, &KReport::new(&m, &inv, common.seed))
        }
        KtheoryCmd::K0Reduced { common, model } => {
            let m = build_model(&model)?;
            let inv = pv_k0_reduced(&m)?;
            emit_json(&common, &KReport::new(&m, &inv, common.seed))
        }
        KtheoryCmd::Example16 { common, depth } => {
            #[derive(Serialize)]
            struct Example16Out {
                free_rank: usize,
                torsion: Vec<u64>,
                depth: usize,
                seed: u64,
            }
            if depth == 0 {
                return Err(precondition("depth must be at least 1"));
            }
            let inv = example16_quotient(depth);
            emit_json(
                &common,
                &Example16Out {
                    free_rank: inv.free_rank,
                    torsion: cantorx::ktheory::report::torsion_u64(&inv),
                    depth,
                    seed: common.seed,
                },
            )
        }
        KtheoryCmd::K1 { common, model } => {
            #[derive(Serialize)]
            struct K1Out {
                model: ModelDesc,
                rank: usize,
                domain_columns: usize,
                seed: u64,
            }
            let m = build_model(&model)?;
            let result = pv_k1_kernel(&m)?;
            emit_json(
                &common,
                &K1Out {
                    model: ModelDesc::of(&m),
                    rank: result.rank,
                    domain_columns: result.columns.len(),
                    seed: common.seed,
                },
            )
        }
        KtheoryCmd::Verify {
            common,
            model,
            samples,
            corrupt,
        } => {
            #[derive(Serialize)]
            struct VerifyOut {
                model: ModelDesc,
                #[serde(flatten)]
                report: cantorx::ktheory::VerifyReport,
                all_pass: bool,
                seed: u64,
            }
            let m = build_model(&model)?;
            let report = verify_reduction(&m, samples, common.seed, corrupt);
            emit_json(
                &common,
                &VerifyOut {
                    model: ModelDesc::of(&m),
                    all_pass: report.all_pass(),
                    report,
                    seed: common.seed,
                },
            )
        }
        KtheoryCmd::Sweep {
            common,
            family,
            depths,
            levels,
        } => {
            let (dlo, dhi) = parse_range(&depths)?;
            let (llo, lhi) = parse_range(&levels)?;
            let grid: Vec<(usize, usize)> = (dlo..=dhi)
                .flat_map(|d| (llo..=lhi).map(move |l| (d, l)))
                .collect();
            type Predict = Box<dyn Fn(usize, usize) -> AbGroupInvariants>;
            type Compute = Box<dyn Fn(usize, usize) -> Result<AbGroupInvariants, KtheoryError>>;
            let (points, compute, predict): (Vec<(usize, usize)>, Compute, Option<Predict>) =
                match family.as_str() {
                    "example16" => (
                        (dlo..=dhi).map(|d| (d, llo)).collect(),
                        Box::new(|d, _| Ok(example16_quotient(d))),
                        Some(Box::new(|_, _| AbGroupInvariants::free(3))),
                    ),
                    "point" => (
                        (llo..=lhi).map(|l| (dlo, l)).collect(),
                        Box::new(|_, l| pv_k0_direct(&DiagonalActionModel::point(l)?)),
                        Some(Box::new(|_, _| AbGroupInvariants::free(2))),
                    ),
                    "denjoy-k0" => (
                        grid,
                        Box::new(|d, l| pv_k0_direct(&DiagonalActionModel::denjoy(d, l)?)),
                        Some(Box::new(|d, _| AbGroupInvariants::free(2 * d + 5))),
                    ),
                    "denjoy-both-k0" => (
                        grid,
                        Box::new(|d, l| pv_k0_direct(&DiagonalActionModel::denjoy_both(d, l)?)),
                        Some(Box::new(|d, _| AbGroupInvariants::free(2 * d + 5))),
                    ),
                    "denjoy-k1" => (
                        grid,
                        Box::new(|d, l| {
                            let result = pv_k1_kernel(&DiagonalActionModel::denjoy(d, l)?)?;
                            Ok(AbGroupInvariants::free(result.rank))
                        }),
                        None,
                    ),
                    other => return Err(precondition(format!("unknown family {other:?}"))),
                };
            let table = stabilization_sweep(&points, compute, predict.as_deref())?;
            emit_json(&common, &SweepReport::new(&family, &table, common.seed))
        }
    }
}

fn format_float(v: f64) -> String {
    format!("{v}")
}

fn run_spectrum(cmd: SpectrumCmd) -> Result<(), CliError> {
    match cmd {
        SpectrumCmd::Shift { common, source } => {
            #[derive(Serialize)]
            struct ShiftOut {
                window: usize,
                dim: usize,
                weights: Vec<u8>,
                seed: u64,
            }
            let x = load_sequence(&source)?;
            let op = weighted_shift(&x);
            emit_json(
                &common,
                &ShiftOut {
                    window: x.radius(),
                    dim: op.dim(),
                    weights: x.symbols().to_vec(),
                    seed: common.seed,
                },
            )
        }
        SpectrumCmd::Joint {
            common,
            source,
            gamma,
            lo,
            hi,
            grid_n,
        } => {
            let x = load_sequence(&source)?;
            let indices = parse_i64_list(&gamma)?;
            if grid_n < 2 {
                return Err(precondition("grid-n must be at least 2"));
            }
            // exact at lattice points: (lo(n-1-i) + hi·i)/(n-1)
            let coord =
                |i: usize| (lo * (grid_n - 1 - i) as f64 + hi * i as f64) / (grid_n - 1) as f64;
            let mut csv = String::new();
            match indices.len() {
                1 => {
                    csv.push_str("lambda_re,lambda_im,score\n");
                    for i in 0..grid_n {
                        for j in 0..grid_n {
                            let lambda = Complex64::new(coord(i), coord(j));
                            let point = JointPoint::new(indices.clone(), vec![lambda]);
                            let score = joint_spectrum_test(&x, &point);
                            csv.push_str(&format!(
                                "{},{},{}\n",
                                format_float(lambda.re),
                                format_float(lambda.im),
                                format_float(score)
                            ));
                        }
                    }
                }
                2 => {
                    csv.push_str("lambda0,lambda1,score\n");
                    for i in 0..grid_n {
                        for j in 0..grid_n {
                            let values =
                                vec![Complex64::new(coord(i), 0.0), Complex64::new(coord(j), 0.0)];
                            let point = JointPoint::new(indices.clone(), values);
                            let score = joint_spectrum_test(&x, &point);
                            csv.push_str(&format!(
                                "{},{},{}\n",
                                format_float(coord(i)),
                                format_float(coord(j)),
                                format_float(score)
                            ));
                        }
                    }
                }
                n => {
                    return Err(precondition(format!(
                        "grids support 1 or 2 indices, got {n}"
                    )))
                }
            }
            emit(&common, &csv)
        }
        SpectrumCmd::Witness {
            common,
            n_list,
            samples,
        } => {
            let ns = parse_usize_list(&n_list)?;
            if samples == 0 {
                return Err(precondition("samples must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let mut csv = String::from("n,residual\n");
            for &n in &ns {
                for _ in 0..samples {
                    let radius = n as i64 + 2;
                    let values: Vec<Complex64> = (0..2 * radius + 1)
                        .map(|_| {
                            Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
                        })
                        .collect();
                    let weights = WeightSeq::new(values);
                    let lambda =
                        Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                    let residual = unimodular_witness(&weights, lambda, n)
                        .map_err(|e| precondition(e.to_string()))?;
                    csv.push_str(&format!("{n},{}\n", format_float(residual)));
                }
            }
            emit(&common, &csv)
        }
        SpectrumCmd::Periodic {
            common,
            weights,
            copies,
        } => {
            #[derive(Serialize)]
            struct PeriodicOut {
                predicted_radius: f64,
                max_modulus_deviation: f64,
                eigenvalues: Vec<[f64; 2]>,
                seed: u64,
            }
            let pattern = parse_f64_list(&weights)?;
            let spec = periodic_spectrum_of_pattern(&pattern, copies)
                .map_err(|e| precondition(e.to_string()))?;
            emit_json(
                &common,
                &PeriodicOut {
                    predicted_radius: spec.predicted_radius,
                    max_modulus_deviation: spec.max_modulus_deviation,
                    eigenvalues: spec.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
                    seed: common.seed,
                },
            )
        }
        SpectrumCmd::Rotation {
            common,
            theta,
            window,
        } => {
            #[derive(Serialize)]
            struct RotationOut {
                theta: f64,
                sqrt_identity_residual: f64,
                commutation_residual: f64,
                seed: u64,
            }
            if window < 2 {
                return Err(precondition("window must be at least 2"));
            }
            let theta = parse_theta(&theta)?;
            let check = rotation_weight_check(theta, window);
            emit_json(
                &common,
                &RotationOut {
                    theta,
                    sqrt_identity_residual: check.sqrt_identity_residual,
                    commutation_residual: check.commutation_residual,
                    seed: common.seed,
                },
            )
        }
        SpectrumCmd::Nonsimple {
            common,
            source,
            all_words,
        } => {
            #[derive(Serialize)]
            struct NonsimpleOut {
                #[serde(flatten)]
                report: cantorx::shiftspec::NonSimplicityReport,
                seed: u64,
            }
            let x = match all_words {
                Some(radius) => {
                    if radius == 0 {
                        return Err(precondition("all-words radius must be positive"));
                    }
                    all_words_sequence(radius)
                }
                None => load_sequence(&source)?,
            };
            let report = nonsimplicity_scan(&x);
            emit_json(
                &common,
                &NonsimpleOut {
                    report,
                    seed: common.seed,
                },
            )
        }
    }
}

/// Sequence whose window runs through 1, 2, 11, 12, 21, 22, 111, ...: every
/// finite word eventually occurs, so runs of both symbols grow unboundedly.
fn all_words_sequence(radius: usize) -> BiSequence {
    let needed = 2 * radius + 1;
    let mut symbols: Vec<u8> = Vec::with_capacity(needed);
    let mut len = 1usize;
    'outer: loop {
        for code in 0..(1u64 << len) {
            for bit in (0..len).rev() {
                symbols.push(if code >> bit & 1 == 1 { 2 } else { 1 });
                if symbols.len() == needed {
                    break 'outer;
                }
            }
        }
        len += 1;
    }
    BiSequence::new(symbols).expect("constructed over {1,2}")
}
