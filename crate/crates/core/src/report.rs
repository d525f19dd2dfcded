//! Complexity tables: published counts for the classical fast algorithms next
//! to the live ledger of the builtin plans.

use std::fmt::Write as _;

use crate::error::Result;
use crate::plan::{builtin_plan, count_ops};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// A published constant.
    Paper,
    /// Computed by [`count_ops`] on a builtin plan.
    Measured,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Paper => "paper",
            Source::Measured => "measured",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub algorithm: String,
    pub n: usize,
    pub mults: usize,
    /// `None` for lower-bound rows, which only bound multiplications.
    pub adds: Option<usize>,
    pub source: Source,
}

impl ReportRow {
    pub fn total(&self) -> Option<usize> {
        self.adds.map(|a| a + self.mults)
    }
}

pub const LOWER_BOUND_LABEL: &str = "mu(DFT(N))";

/// `(N, μ(DFT(N)))`: minimal multiplicative complexity of the N-point DFT.
pub const MU_DFT: [(usize, usize); 4] = [(4, 0), (8, 2), (12, 4), (16, 10)];

/// `(algorithm, N, M, A)` for the classical algorithms.
pub const PUBLISHED: [(&str, usize, usize, usize); 8] = [
    ("Cooley-Tukey-4", 8, 12, 48),
    ("Split-Radix", 8, 8, 42),
    ("Cooley-Tukey-2", 8, 4, 26),
    ("Rader-Brenner", 8, 2, 24),
    ("Cooley-Tukey-2", 16, 20, 74),
    ("Cooley-Tukey-4", 16, 14, 70),
    ("Split-Radix", 16, 12, 64),
    ("Rader-Brenner", 16, 10, 64),
];

/// Builtin plan measured for each table.
pub const MEASURED_PLANS: [(usize, &str); 2] = [(8, "n8_p7"), (16, "n16_p31")];

pub fn complexity_report() -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for (n, plan) in MEASURED_PLANS {
        rows.extend(
            PUBLISHED
                .iter()
                .filter(|r| r.1 == n)
                .map(|&(alg, n, m, a)| ReportRow {
                    algorithm: alg.to_string(),
                    n,
                    mults: m,
                    adds: Some(a),
                    source: Source::Paper,
                }),
        );
        let count = count_ops(&builtin_plan(plan)?)?;
        rows.push(ReportRow {
            algorithm: "Proposed".to_string(),
            n,
            mults: count.total_mults(),
            adds: Some(count.total_adds()),
            source: Source::Measured,
        });
    }
    rows.extend(MU_DFT.iter().map(|&(n, mu)| ReportRow {
        algorithm: LOWER_BOUND_LABEL.to_string(),
        n,
        mults: mu,
        adds: None,
        source: Source::Paper,
    }));
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Markdown,
    Csv,
}

pub fn render_report(rows: &[ReportRow], format: ReportFormat) -> String {
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("algorithm,N,M,A,total,source\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.algorithm,
                    r.n,
                    r.mults,
                    opt(r.adds),
                    opt(r.total()),
                    r.source.as_str()
                )
                .unwrap();
            }
        }
        ReportFormat::Markdown => {
            let mut sizes: Vec<usize> = rows
                .iter()
                .filter(|r| r.adds.is_some())
                .map(|r| r.n)
                .collect();
            sizes.dedup();
            for n in sizes {
                writeln!(out, "## N = {n}\n").unwrap();
                out.push_str("| algorithm | M | A | M+A | source |\n");
                out.push_str("|---|---|---|---|---|\n");
                for r in rows.iter().filter(|r| r.n == n && r.adds.is_some()) {
                    writeln!(
                        out,
                        "| {} | {} | {} | {} | {} |",
                        r.algorithm,
                        r.mults,
                        opt(r.adds),
                        opt(r.total()),
                        r.source.as_str()
                    )
                    .unwrap();
                }
                out.push('\n');
            }
            let bounds: Vec<&ReportRow> = rows.iter().filter(|r| r.adds.is_none()).collect();
            if !bounds.is_empty() {
                out.push_str("## Multiplicative lower bounds\n\n");
                writeln!(out, "| N | {LOWER_BOUND_LABEL} | source |").unwrap();
                out.push_str("|---|---|---|\n");
                for r in bounds {
                    writeln!(out, "| {} | {} | {} |", r.n, r.mults, r.source.as_str()).unwrap();
                }
                out.push('\n');
            }
            let plans: Vec<String> = MEASURED_PLANS
                .iter()
                .map(|(n, name)| format!("{name} (N = {n})"))
                .collect();
            writeln!(out, "Measured rows: count_ops on {}.", plans.join(", ")).unwrap();
        }
    }
    out
}

pub fn emit_report(format: ReportFormat) -> Result<String> {
    Ok(render_report(&complexity_report()?, format))
}
