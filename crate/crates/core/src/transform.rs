//! The reference FFHT: `V_k = Σ v_i·cas(ik)` and its inverse.
//!
//! Every fast plan is checked against these dense definitions.

use crate::error::{Error, Result};
use crate::field::GaussInt;
use crate::matrix::Matrix;
use crate::trig::{CasTable, KernelSpec};

/// The N×N matrix `T[k][i] = cas(ik mod N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMatrix {
    spec: KernelSpec,
    entries: Matrix,
}

impl TransformMatrix {
    pub fn new(table: &CasTable) -> Self {
        let n = table.n();
        let entries = Matrix::from_fn(n, n, |k, i| table.values()[(i * k) % n]);
        TransformMatrix {
            spec: *table.spec(),
            entries,
        }
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix {
        self.entries
    }
}

pub fn build_matrix(spec: &KernelSpec) -> TransformMatrix {
    TransformMatrix::new(&spec.cas_table())
}

fn check_len(table: &CasTable, v: &[GaussInt]) -> Result<()> {
    if v.len() != table.n() {
        return Err(Error::LengthMismatch {
            expected: table.n(),
            actual: v.len(),
        });
    }
    Ok(())
}

/// Forward transform. Inputs may be arbitrary GI(p) values; Definition-style
/// real inputs are just the special case `im = 0`.
pub fn forward(table: &CasTable, v: &[GaussInt]) -> Result<Vec<GaussInt>> {
    check_len(table, v)?;
    let ctx = table.spec().ctx();
    let n = table.n();
    let cas = table.values();
    Ok((0..n)
        .map(|k| {
            v.iter().enumerate().fold(GaussInt::ZERO, |acc, (i, &x)| {
                ctx.add(acc, ctx.mul(x, cas[(i * k) % n]))
            })
        })
        .collect())
}

/// Inverse transform: `v_i = (N mod p)⁻¹ Σ V_k·cas(ik)`.
pub fn inverse(table: &CasTable, spectrum: &[GaussInt]) -> Result<Vec<GaussInt>> {
    let spec = table.spec();
    let ctx = spec.ctx();
    let n_mod_p = spec.n_mod_p();
    if n_mod_p.is_zero() {
        return Err(Error::NonInvertibleLength {
            p: ctx.p(),
            n: spec.n() as u64,
        });
    }
    let scale = ctx.inv(n_mod_p)?;
    Ok(forward(table, spectrum)?
        .into_iter()
        .map(|x| ctx.mul(x, scale))
        .collect())
}
