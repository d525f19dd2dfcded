//! Cross-check the static cost ledger with a counting executor that performs
//! the real GF(p) arithmetic.
//!
//! cargo run --example cost_audit

use ffht::{audit, builtin_plan, count_ops, count_ops_with, CostMode, FastPlan, KernelSpec, BUILTIN_NAMES};

fn main() -> ffht::Result<()> {
    for name in BUILTIN_NAMES {
        let plan = builtin_plan(name)?;
        let p = plan.spec().ctx().p();
        let v: Vec<u64> = (0..plan.n() as u64).map(|i| (3 * i + 2) % p).collect();
        let (counted, _) = audit(&plan, &v, CostMode::Strict)?;
        let ledger = count_ops(&plan)?;
        println!("{name:<8} ledger {ledger}");
        println!("{:<8} audit  {counted}", "");
    }

    // Dense plans for kernels with complex entries need split accounting.
    let spec = KernelSpec::parse(7, "3")?;
    let dense = FastPlan::dense(&spec);
    match count_ops(&dense) {
        Ok(c) => println!("dense N=6 strict: {c}"),
        Err(e) => println!("dense N=6 strict: {e}"),
    }
    println!("dense N=6 split:  {}", count_ops_with(&dense, CostMode::Split)?);
    Ok(())
}
