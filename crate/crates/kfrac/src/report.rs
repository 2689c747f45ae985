//! Machine-readable check and spectrum reports.

use serde::{Deserialize, Serialize};

/// How a check value is compared with its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Residual must fall below the threshold.
    ResidualBelow,
    /// Witness value must exceed the threshold (non-triviality checks).
    ValueAbove,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Named residuals against tolerances for one verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), checks: Vec::new() }
    }

    /// Record a residual that must stay below `tol`.
    pub fn residual(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.checks.push(Check {
            name: name.into(),
            kind: CheckKind::ResidualBelow,
            value,
            threshold: tol,
            pass: value < tol,
        });
    }

    /// Record a witness value that must exceed `threshold`.
    pub fn nonzero(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.checks.push(Check {
            name: name.into(),
            kind: CheckKind::ValueAbove,
            value,
            threshold,
            pass: value > threshold,
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        for mut check in other.checks {
            check.name = format!("{}: {}", other.suite, check.name);
            self.checks.push(check);
        }
    }

    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::ResidualBelow)
            .map(|c| c.value)
            .fold(0.0, f64::max)
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for c in &self.checks {
            let rel = match c.kind {
                CheckKind::ResidualBelow => "<",
                CheckKind::ValueAbove => ">",
            };
            out.push_str(&format!(
                "  [{}] {:<55} {:>12.3e} {} {:.1e}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.value,
                rel,
                c.threshold,
            ));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall_pass() { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// One energy level with its degeneracy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: usize,
}

/// Energies of the graded oscillator Hamiltonian, grouped into levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub k: usize,
    pub boson_cutoff: usize,
    pub levels: Vec<Level>,
    pub spacing: f64,
    pub discarded: usize,
}

impl SpectrumReport {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "spectrum k={} (boson cutoff {}, {} truncation-contaminated labels discarded)\n",
            self.k, self.boson_cutoff, self.discarded
        ));
        out.push_str(&format!("level spacing: {}\n", self.spacing));
        for level in &self.levels {
            out.push_str(&format!(
                "  E = {:>8.4}   degeneracy {}\n",
                level.energy, level.degeneracy
            ));
        }
        out
    }
}

/// Deviation table for the generic-deformation to root-of-unity limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub epsilon: f64,
    /// max |[b-, b+] - 1| on the safe subspace
    pub boson_commutator: f64,
    /// max |[b_pm, f_pm]| over the four mixed pairs
    pub mixed_commutator: f64,
    /// max |f-f+ - Q f+f- - 1| on the fermion factor
    pub fermion_relation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub k: usize,
    pub boson_cutoff: usize,
    pub rows: Vec<LimitRow>,
    /// Deviations decrease strictly along the epsilon ladder.
    pub monotone: bool,
    /// Entrywise differences between successive b matrices decrease.
    pub cauchy: bool,
}

impl LimitReport {
    pub fn pass(&self) -> bool {
        self.monotone && self.cauchy
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("quon limit study k={} (boson cutoff {})\n", self.k, self.boson_cutoff));
        out.push_str("  epsilon      |[b-,b+]-1|   |[b,f]|       |f-f+-Qf+f--1|\n");
        for row in &self.rows {
            out.push_str(&format!(
                "  {:<12.3e} {:<13.3e} {:<13.3e} {:<13.3e}\n",
                row.epsilon, row.boson_commutator, row.mixed_commutator, row.fermion_relation
            ));
        }
        out.push_str(&format!(
            "monotone decrease: {}; entrywise convergence: {}\n",
            if self.monotone { "yes" } else { "NO" },
            if self.cauchy { "yes" } else { "NO" },
        ));
        out
    }
}
