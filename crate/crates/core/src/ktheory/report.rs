//! JSON-facing report types shared with the command line front end.

use serde::Serialize;

use crate::zlattice::AbGroupInvariants;

use super::model::DiagonalActionModel;
use super::presentation::SweepTable;
use super::reduction::CheckResult;

#[derive(Clone, Debug, Serialize)]
pub struct ModelDesc {
    pub kind: String,
    pub depth: Option<usize>,
    pub level: usize,
}

impl ModelDesc {
    pub fn of(model: &DiagonalActionModel) -> Self {
        ModelDesc {
            kind: model.kind().to_string(),
            depth: model.k_depth(),
            level: model.boundary_level(),
        }
    }
}

/// The `{model, level, free_rank, torsion, checks}` report emitted for
/// every group computation.
#[derive(Clone, Debug, Serialize)]
pub struct KReport {
    pub model: ModelDesc,
    pub level: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    pub checks: Vec<CheckResult>,
    pub seed: u64,
}

impl KReport {
    pub fn new(model: &DiagonalActionModel, invariants: &AbGroupInvariants, seed: u64) -> Self {
        KReport {
            model: ModelDesc::of(model),
            level: model.boundary_level(),
            free_rank: invariants.free_rank,
            torsion: torsion_u64(invariants),
            checks: Vec::new(),
            seed,
        }
    }
}

pub fn torsion_u64(invariants: &AbGroupInvariants) -> Vec<u64> {
    invariants
        .torsion
        .iter()
        .map(|d| u64::try_from(d).expect("torsion beyond u64 is outside every tracked model"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReportRow {
    pub depth: usize,
    pub level: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub family: String,
    pub rows: Vec<SweepReportRow>,
    pub stable_from: Option<usize>,
    pub seed: u64,
}

impl SweepReport {
    pub fn new(family: &str, table: &SweepTable, seed: u64) -> Self {
        SweepReport {
            family: family.to_string(),
            rows: table
                .rows
                .iter()
                .map(|r| SweepReportRow {
                    depth: r.depth,
                    level: r.level,
                    free_rank: r.invariants.free_rank,
                    torsion: torsion_u64(&r.invariants),
                })
                .collect(),
            stable_from: table.stable_from,
            seed,
        }
    }
}
