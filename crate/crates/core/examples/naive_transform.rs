//! The dense transform, its matrix and its inverse.
//!
//! cargo run --example naive_transform

use ffht::cli::format_matrix;
use ffht::{forward, inverse, KernelSpec, Matrix};

fn main() -> ffht::Result<()> {
    let spec = KernelSpec::parse(7, "3")?;
    let ctx = spec.ctx();
    println!("T for zeta = 3 over GI(7):");
    print!("{}", format_matrix(&spec, false));

    let table = spec.cas_table();
    let v: Vec<_> = [1, 0, 2, 5, 3, 6].iter().map(|&a| ctx.real(a)).collect();
    let spectrum = forward(&table, &v)?;
    let back = inverse(&table, &spectrum)?;
    let show = |xs: &[ffht::GaussInt]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("v           = [{}]", show(&v));
    println!("forward(v)  = [{}]", show(&spectrum));
    println!("inverse(..) = [{}]", show(&back));

    // T is its own inverse up to the factor N.
    let t = ffht::build_matrix(&spec).into_matrix();
    let tt = t.mul(&ctx, &t)?;
    println!("T*T = N*I: {}", tt == Matrix::diagonal(spec.n(), spec.n_mod_p()));
    Ok(())
}
