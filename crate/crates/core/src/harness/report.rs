use std::time::Duration;

use serde::Serialize;

/// The first failing instance of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub lattice: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(lattice: impl Into<String>, detail: impl Into<String>) -> Self {
        Counterexample { lattice: lattice.into(), model: None, world: None, formula: None, detail: detail.into() }
    }

    pub fn model(mut self, model: impl Into<String>) -> Self {
        self.model = Some(model.into());
        self
    }

    pub fn world(mut self, world: impl Into<String>) -> Self {
        self.world = Some(world.into());
        self
    }

    pub fn formula(mut self, formula: impl Into<String>) -> Self {
        self.formula = Some(formula.into());
        self
    }
}

/// Result of one law suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub max_base: usize,
    pub lattices: usize,
    pub instances: u64,
    pub checks: u64,
    pub passed: bool,
    pub first_counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub duration_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Everything except the timing.
    pub fn without_duration(&self) -> Report {
        Report { duration_ms: 0, ..self.clone() }
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        format!(
            "{}: {verdict} ({} lattices, {} instances, {} checks, {:.2}s)",
            self.suite,
            self.lattices,
            self.instances,
            self.checks,
            Duration::from_millis(self.duration_ms as u64).as_secs_f64()
        )
    }
}
