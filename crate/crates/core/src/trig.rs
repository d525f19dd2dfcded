//! Finite-field trigonometry over a kernel ζ of multiplicative order N.
//!
//! ```text
//! sin(i) = (ζ^i - ζ^-i) / 2j     cos(i) = (ζ^i + ζ^-i) / 2     cas = sin + cos
//! ```

use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};

/// A kernel ζ together with its order N and the constants 2⁻¹ and (2j)⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KernelSpec {
    ctx: FieldCtx,
    zeta: GaussInt,
    n: u64,
    half: GaussInt,
    half_j_inv: GaussInt,
}

impl KernelSpec {
    /// Computes the order of `zeta` and builds the spec.
    pub fn new(ctx: FieldCtx, zeta: GaussInt) -> Result<Self> {
        if !ctx.contains(zeta) {
            return Err(Error::ParseElement(format!(
                "kernel {zeta} is not reduced mod {}",
                ctx.p()
            )));
        }
        let n = ctx.order(zeta)?;
        if n % ctx.p() == 0 {
            // Unreachable for p >= 3 since p never divides p^2 - 1, kept as a guard.
            return Err(Error::NonInvertibleLength { p: ctx.p(), n });
        }
        Ok(KernelSpec {
            ctx,
            zeta,
            n,
            half: ctx.inv(ctx.real(2))?,
            half_j_inv: ctx.inv(ctx.elem(0, 2))?,
        })
    }

    /// Like [`KernelSpec::new`] but insists that `zeta` has order `n`.
    pub fn with_order(ctx: FieldCtx, zeta: GaussInt, n: u64) -> Result<Self> {
        let spec = Self::new(ctx, zeta)?;
        if spec.n != n {
            return Err(Error::OrderMismatch {
                zeta: zeta.to_string(),
                expected: n,
                actual: spec.n,
            });
        }
        Ok(spec)
    }

    /// Convenience constructor from a modulus and element text.
    pub fn parse(p: u64, zeta: &str) -> Result<Self> {
        let ctx = FieldCtx::new(p)?;
        Self::new(ctx, ctx.parse(zeta)?)
    }

    #[inline]
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    #[inline]
    pub fn zeta(&self) -> GaussInt {
        self.zeta
    }

    /// Blocklength N, the multiplicative order of ζ.
    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `N mod p` as a field element.
    pub fn n_mod_p(&self) -> GaussInt {
        self.ctx.real((self.n % self.ctx.p()) as i64)
    }

    /// Reduces an arbitrary signed index into `[0, N)`.
    #[inline]
    pub fn index(&self, i: i64) -> usize {
        i.rem_euclid(self.n as i64) as usize
    }

    fn zeta_pm(&self, i: i64) -> (GaussInt, GaussInt) {
        let i = self.index(i) as u64;
        let up = self.ctx.pow_u(self.zeta, i);
        // ζ^-i = ζ^(N-i), no inversion needed.
        let down = self.ctx.pow_u(self.zeta, (self.n - i) % self.n);
        (up, down)
    }

    pub fn sin(&self, i: i64) -> GaussInt {
        let (up, down) = self.zeta_pm(i);
        self.ctx.mul(self.ctx.sub(up, down), self.half_j_inv)
    }

    pub fn cos(&self, i: i64) -> GaussInt {
        let (up, down) = self.zeta_pm(i);
        self.ctx.mul(self.ctx.add(up, down), self.half)
    }

    pub fn cas(&self, i: i64) -> GaussInt {
        self.ctx.add(self.sin(i), self.cos(i))
    }

    pub fn cas_table(&self) -> CasTable {
        CasTable::new(*self)
    }
}

/// `cas(0..N)` precomputed for a kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasTable {
    spec: KernelSpec,
    cas: Vec<GaussInt>,
}

impl CasTable {
    pub fn new(spec: KernelSpec) -> Self {
        let cas = (0..spec.n as i64).map(|i| spec.cas(i)).collect();
        CasTable { spec, cas }
    }

    #[inline]
    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.cas.len()
    }

    /// `cas(i)` for any signed index, via reduction mod N.
    #[inline]
    pub fn get(&self, i: i64) -> GaussInt {
        self.cas[self.spec.index(i)]
    }

    pub fn values(&self) -> &[GaussInt] {
        &self.cas
    }
}
