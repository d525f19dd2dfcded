//! The builtin fast plans: validation, cost and a run against the dense
//! transform.
//!
//! cargo run --example fast_plans

use ffht::{builtin_plan, count_ops, forward, BUILTIN_NAMES};

fn main() -> ffht::Result<()> {
    println!("{:<8} {:>3} {:>6} {:>5}  ledger", "plan", "N", "layers", "valid");
    for name in BUILTIN_NAMES {
        let plan = builtin_plan(name)?;
        let cost = count_ops(&plan)?;
        println!(
            "{name:<8} {:>3} {:>6} {:>5}  {cost}",
            plan.n(),
            plan.layers().len(),
            plan.validate().is_equal()
        );
    }

    let plan = builtin_plan("n16_p7")?;
    let ctx = plan.spec().ctx();
    let v: Vec<_> = (0..16).map(|i| ctx.real(i * i % 7)).collect();
    let fast = plan.apply_strict(&v)?;
    let dense = forward(&plan.spec().cas_table(), &v)?;
    println!("\nn16_p7 on a real signal matches the dense transform: {}", fast == dense);
    Ok(())
}
