//! Arithmetic in GI(p) and kernel search.
//!
//! cargo run --example field_arithmetic

use ffht::field::divisors;
use ffht::{FieldCtx, KernelSearch};

fn main() -> ffht::Result<()> {
    let gi7 = FieldCtx::new(7)?;
    let x = gi7.parse("2+3j")?;
    let y = gi7.parse("4+j")?;
    println!("in GI(7): x = {x}, y = {y}");
    println!("  x + y = {}", gi7.add(x, y));
    println!("  x * y = {}", gi7.mul(x, y));
    println!("  x / y = {}", gi7.div(x, y)?);
    println!("  x^-1  = {}", gi7.inv(x)?);
    println!("  order(x) = {} (group order {})", gi7.order(x)?, gi7.group_order());

    // Every element of order N is a valid kernel for an N-point transform.
    for p in [7, 31] {
        let ctx = FieldCtx::new(p)?;
        println!("kernels in GI({p}), p^2 - 1 = {}:", ctx.group_order());
        for n in divisors(ctx.group_order()).into_iter().filter(|&n| n > 2 && n <= 16) {
            let smallest = ctx.find_kernel_with(n, KernelSearch::Smallest)?;
            let from_generator = ctx.find_kernel(n)?;
            println!("  N = {n:>2}: smallest {smallest:>6}, from a generator {from_generator:>6}");
        }
    }

    for p in [5, 9, 11] {
        match FieldCtx::new(p) {
            Ok(_) => println!("GI({p}) is a field"),
            Err(e) => println!("GI({p}): {e}"),
        }
    }
    Ok(())
}
