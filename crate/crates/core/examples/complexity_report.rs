//! Complexity tables for N = 8 and 16, with the builtin plans measured live.
//!
//! cargo run --example complexity_report

use ffht::{emit_report, ReportFormat};

fn main() -> ffht::Result<()> {
    print!("{}", emit_report(ReportFormat::Markdown)?);
    println!();
    print!("{}", emit_report(ReportFormat::Csv)?);
    Ok(())
}
