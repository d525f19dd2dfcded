//! Derive fast plans automatically and compare them with the dense transform.
//!
//! cargo run --release --example derive_plan
//!
//! Exhaustive runs stop at three layers; with the default depth of eight the
//! eight-point search takes close to a minute and finds the same plan.

use std::time::Instant;

use ffht::{count_ops_with, derive, CostMode, DeriveOptions, FastPlan, KernelSpec, Strategy};

fn main() -> ffht::Result<()> {
    let cases = [
        (7, "j", Strategy::Greedy, false),
        (7, "3", Strategy::Greedy, false),
        (7, "3", Strategy::Greedy, true),
        (7, "2+2j", Strategy::Greedy, true),
        (7, "j", Strategy::Exhaustive, true),
        (7, "3", Strategy::Exhaustive, true),
        (7, "2+2j", Strategy::Exhaustive, true),
        (7, "3j", Strategy::Greedy, true),
        (7, "2+4j", Strategy::Greedy, true),
        (31, "7+13j", Strategy::Greedy, true),
    ];
    println!(
        "{:>3} {:>6} {:>11} {:>7}  {:>14}  {:>14}  layers  zeros",
        "p", "zeta", "strategy", "scaling", "dense (M, A)", "derived (M, A)"
    );
    for (p, zeta, strategy, allow_scaling) in cases {
        let spec = KernelSpec::parse(p, zeta)?;
        let dense = count_ops_with(&FastPlan::dense(&spec), CostMode::Split)?;
        let max_layers = match strategy {
            Strategy::Greedy => DeriveOptions::default().max_layers,
            Strategy::Exhaustive => 3,
        };
        let opts = DeriveOptions {
            strategy,
            allow_scaling,
            max_layers,
        };
        let started = Instant::now();
        let d = derive(&spec, &opts)?;
        assert!(d.plan.validate().is_equal());
        println!(
            "{p:>3} {zeta:>6} {:>11} {allow_scaling:>7}  {:>14}  {:>14}  {:>6}  {:?}  ({:.2?})",
            format!("{strategy:?}"),
            format!("({}, {})", dense.total_mults(), dense.total_adds()),
            format!("({}, {})", d.cost.total_mults(), d.cost.total_adds()),
            d.plan.layers().len(),
            d.zero_counts,
            started.elapsed(),
        );
    }
    Ok(())
}
