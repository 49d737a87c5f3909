//! Subprocess adapter for external QUBO solvers.
//!
//! Protocol: the QUBO is written to `qubo.json` (interchange format) in the
//! configured working directory, the command is executed with that directory
//! as its cwd, and it must write `solution.json` there before exiting with
//! status 0. Reported energies are informational; the adapter recomputes
//! every energy locally and selects the best solution itself.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coding::BitVector;
use crate::qubo::Qubo;
use crate::solvers::{better, sort_samples, SolveResult};
use crate::{Error, Result};

pub const REQUEST_FILE: &str = "qubo.json";
pub const RESPONSE_FILE: &str = "solution.json";

/// How to invoke the external solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalSolverConfig {
    /// Executable and arguments; run with `workdir` as current directory.
    pub command: Vec<String>,
    pub workdir: PathBuf,
}

/// Response document: one or more candidate solutions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub solutions: Vec<SolutionEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionEntry {
    /// 0/1 per variable.
    pub bits: Vec<u8>,
    /// Solver-reported energy; recomputed locally, never trusted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
}

pub fn solve_external(qubo: &Qubo, config: &ExternalSolverConfig) -> Result<SolveResult> {
    let start = Instant::now();
    if config.command.is_empty() {
        return Err(Error::invalid("external solver command is empty"));
    }
    std::fs::create_dir_all(&config.workdir)
        .map_err(|e| Error::ExternalSolver(format!("creating workdir: {e}")))?;

    let request_path = config.workdir.join(REQUEST_FILE);
    let tmp_path = config.workdir.join(format!("{REQUEST_FILE}.tmp"));
    std::fs::write(&tmp_path, qubo.to_interchange_json())
        .and_then(|()| std::fs::rename(&tmp_path, &request_path))
        .map_err(|e| Error::ExternalSolver(format!("writing {REQUEST_FILE}: {e}")))?;

    let output = Command::new(&config.command[0])
        .args(&config.command[1..])
        .current_dir(&config.workdir)
        .output()
        .map_err(|e| {
            Error::ExternalSolver(format!("spawning '{}': {e}", config.command[0]))
        })?;
    if !output.status.success() {
        let stderr = String::from_utf8_lossy(&output.stderr);
        return Err(Error::ExternalSolver(format!(
            "command exited with {}: {}",
            output.status,
            stderr.trim()
        )));
    }

    let response_path = config.workdir.join(RESPONSE_FILE);
    let text = std::fs::read_to_string(&response_path)
        .map_err(|e| Error::ExternalSolver(format!("reading {RESPONSE_FILE}: {e}")))?;
    let response: SolutionFile = serde_json::from_str(&text)
        .map_err(|e| Error::ExternalSolver(format!("malformed {RESPONSE_FILE}: {e}")))?;
    if response.solutions.is_empty() {
        return Err(Error::ExternalSolver("response contains no solutions".into()));
    }

    let mut best: Option<(BitVector, f64)> = None;
    let mut samples = Vec::with_capacity(response.solutions.len());
    for (idx, entry) in response.solutions.iter().enumerate() {
        if entry.bits.len() != qubo.num_vars() {
            return Err(Error::ExternalSolver(format!(
                "solution {idx} has {} bits, expected {}",
                entry.bits.len(),
                qubo.num_vars()
            )));
        }
        let code = BitVector::from_ints(&entry.bits)
            .map_err(|e| Error::ExternalSolver(format!("solution {idx}: {e}")))?;
        let energy = qubo.energy(&code)?;
        let candidate = (code, energy);
        if better(&candidate, &best) {
            best = Some(candidate.clone());
        }
        samples.push(candidate);
    }
    sort_samples(&mut samples);

    let (best_z, best_energy) = best.expect("solutions nonempty");
    Ok(SolveResult {
        best_z,
        best_energy,
        samples: Some(samples),
        solver_name: "external",
        elapsed: start.elapsed(),
    })
}
