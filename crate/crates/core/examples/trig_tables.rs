//! Finite field sine, cosine and cas for a few kernels.
//!
//! cargo run --example trig_tables

use ffht::cli::format_trig_table;
use ffht::KernelSpec;

fn main() -> ffht::Result<()> {
    for (p, zeta) in [(7, "j"), (7, "2+2j"), (31, "7+13j")] {
        let spec = KernelSpec::parse(p, zeta)?;
        println!("zeta = {zeta} in GI({p}), N = {}", spec.n());
        print!("{}", format_trig_table(&spec, false));

        let ctx = spec.ctx();
        let n = spec.n() as i64;
        let pythagoras = (0..n).all(|i| {
            let (s, c) = (spec.sin(i), spec.cos(i));
            ctx.add(ctx.mul(s, s), ctx.mul(c, c)) == ctx.real(1)
        });
        println!("sin^2 + cos^2 = 1 for every i: {pythagoras}\n");
    }
    Ok(())
}
