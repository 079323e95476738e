use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{EnergyUpdate, IhhlError, SolverKind};
use crate::linalg::ComplexVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceStatus {
    Converged,
    MaxIterations,
    Diverged,
}

/// `β` was moved off a singular shift before iteration `iteration`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaAdjustment {
    pub iteration: usize,
    pub from: Complex64,
    pub to: Complex64,
}

/// Energy history of one solve. `energies[0]` is the starting estimate and
/// `energies[k]` the estimate after step `k`; `deltas[k-1] = |E_k − E_{k−1}|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub energies: Vec<Complex64>,
    pub deltas: Vec<f64>,
    /// Unit-norm iterate after each step, `vectors[0]` the (deflated) seed.
    pub vectors: Vec<ComplexVector>,
    pub status: TraceStatus,
    pub iterations_used: usize,
    pub solver: SolverKind,
    pub update: EnergyUpdate,
    pub epsilon: f64,
    pub beta_adjustments: Vec<BetaAdjustment>,
    /// Generator seed when the starting vector was random.
    pub random_seed: Option<u64>,
}

#[derive(Serialize)]
struct CsvRow {
    iteration: usize,
    re: f64,
    im: f64,
    abs_delta: Option<f64>,
}

impl IterationTrace {
    pub fn converged(&self) -> bool {
        self.status == TraceStatus::Converged
    }

    pub fn final_energy(&self) -> Complex64 {
        *self.energies.last().expect("trace starts with an energy")
    }

    /// Columns `iteration,re,im,abs_delta`; the starting row has no delta.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), IhhlError> {
        let mut w = csv::Writer::from_writer(out);
        for (k, e) in self.energies.iter().enumerate() {
            let abs_delta = k.checked_sub(1).map(|i| self.deltas[i]);
            w.serialize(CsvRow { iteration: k, re: e.re, im: e.im, abs_delta }).map_err(|e| IhhlError::Export(e.to_string()))?;
        }
        w.flush().map_err(|e| IhhlError::Export(e.to_string()))?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let t = IterationTrace {
            energies: vec![Complex64::new(1.0, -0.5), Complex64::new(1.25, -0.5)],
            deltas: vec![0.25],
            vectors: vec![],
            status: TraceStatus::Converged,
            iterations_used: 1,
            solver: SolverKind::Classical,
            update: EnergyUpdate::ShiftInvert,
            epsilon: 1e-4,
            beta_adjustments: vec![],
            random_seed: None,
        };
        assert_eq!(t.to_csv(), "iteration,re,im,abs_delta\n0,1.0,-0.5,\n1,1.25,-0.5,0.25\n");
        let back: IterationTrace = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
