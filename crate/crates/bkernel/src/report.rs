//! Kernelization results: reduced instance, offset, rule trace, and a
//! serializable report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Abg, VertexId};
use crate::oracle;

pub const REPORT_SCHEMA: u32 = 1;

/// One rule firing: which rule, which vertices it touched, and what it
/// contributed to the total offset.
#[derive(Clone, Debug, Serialize)]
pub struct RuleApplication {
    pub rule: String,
    pub affected: Vec<VertexId>,
    pub delta: i64,
}

impl RuleApplication {
    pub fn new(rule: &str, affected: impl IntoIterator<Item = VertexId>, delta: i64) -> Self {
        let mut affected: Vec<VertexId> = affected.into_iter().collect();
        affected.sort_unstable();
        affected.dedup();
        RuleApplication {
            rule: rule.to_string(),
            affected,
            delta,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct SizeSummary {
    pub vertices: usize,
    pub edges: usize,
    pub boundary: usize,
    pub terminals: usize,
}

impl SizeSummary {
    pub fn of(abg: &Abg) -> Self {
        SizeSummary {
            vertices: abg.graph.order(),
            edges: abg.graph.edge_count(),
            boundary: abg.boundary.len(),
            terminals: oracle::terminals_of(abg).len(),
        }
    }
}

/// A guaranteed output-size bound: the symbolic form in the instance
/// parameters and its numeric value for this instance.
#[derive(Clone, Debug, Serialize)]
pub struct SizeBound {
    pub expression: String,
    pub value: u64,
}

/// Failure-probability bound of the randomized parts; zero for
/// deterministic runs.
#[derive(Clone, Debug, Serialize)]
pub struct FailureBound {
    pub expression: String,
    pub value: f64,
}

impl FailureBound {
    pub fn deterministic() -> Self {
        FailureBound {
            expression: "0".to_string(),
            value: 0.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub schema: u32,
    pub problem: String,
    pub seed: u64,
    pub delta: i64,
    pub before: SizeSummary,
    pub after: SizeSummary,
    pub size_bound: SizeBound,
    pub failure_bound: FailureBound,
    pub trace: Vec<RuleApplication>,
}

/// Everything a kernelization returns. The convention throughout:
/// OPT(original ⊕ H) = OPT(reduced ⊕ H) + delta for every partner H.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub reduced: Abg,
    pub delta: i64,
    pub trace: Vec<RuleApplication>,
    pub report: KernelReport,
}

impl KernelResult {
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        problem: &str,
        seed: u64,
        original: &Abg,
        reduced: Abg,
        trace: Vec<RuleApplication>,
        size_bound: SizeBound,
        failure_bound: FailureBound,
    ) -> Result<Self> {
        let delta: i64 = trace.iter().map(|r| r.delta).sum();
        let report = KernelReport {
            schema: REPORT_SCHEMA,
            problem: problem.to_string(),
            seed,
            delta,
            before: SizeSummary::of(original),
            after: SizeSummary::of(&reduced),
            size_bound,
            failure_bound,
            trace: trace.clone(),
        };
        let result = KernelResult {
            reduced,
            delta,
            trace,
            report,
        };
        result.validate()?;
        Ok(result)
    }

    /// Internal consistency: the offset must equal the trace sum, the report
    /// must mirror the result, and the claimed size bound must hold.
    pub fn validate(&self) -> Result<()> {
        let sum: i64 = self.trace.iter().map(|r| r.delta).sum();
        if sum != self.delta || self.report.delta != self.delta {
            return Err(Error::Precondition(format!(
                "offset bookkeeping broken: delta {} vs trace sum {sum}",
                self.delta
            )));
        }
        if self.report.schema != REPORT_SCHEMA {
            return Err(Error::Precondition(format!(
                "unknown report schema {}",
                self.report.schema
            )));
        }
        let actual = SizeSummary::of(&self.reduced);
        if actual != self.report.after {
            return Err(Error::Precondition(
                "report size summary does not match the reduced instance".into(),
            ));
        }
        if (actual.vertices as u64) > self.report.size_bound.value {
            return Err(Error::Precondition(format!(
                "reduced instance has {} vertices, claimed bound {} ({})",
                actual.vertices, self.report.size_bound.value, self.report.size_bound.expression
            )));
        }
        Ok(())
    }

    pub fn report_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("report serializes")
    }
}
