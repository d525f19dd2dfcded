//! Arithmetic in GF(p) and its Gaussian-integer extension GI(p).
//!
//! For a prime `p ≡ 3 (mod 4)` the polynomial `x² + 1` is irreducible over
//! GF(p), so the elements `a + bj` with `j² = -1` form a field with `p² - 1`
//! nonzero elements. All moduli are capped below 2^31, which keeps every
//! intermediate product inside a `u64`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest accepted modulus (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 31;

/// An element `re + im·j` of GI(p). Both components are reduced residues.
///
/// Values are only meaningful together with the [`FieldCtx`] that produced
/// them; mixing elements of different fields is a logic error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    re: u64,
    im: u64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const J: GaussInt = GaussInt { re: 0, im: 1 };

    #[inline]
    pub fn re(self) -> u64 {
        self.re
    }

    #[inline]
    pub fn im(self) -> u64 {
        self.im
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// True when the imaginary component vanishes (zero counts as real).
    #[inline]
    pub fn is_real(self) -> bool {
        self.im == 0
    }

    /// True for nonzero elements with a vanishing real component.
    #[inline]
    pub fn is_imaginary(self) -> bool {
        self.re == 0 && self.im != 0
    }
}

/// Canonical text form: zero components are elided (`3`, `5j`, `3+6j`) and a
/// unit imaginary coefficient is written as a bare `j` (`j`, `4+j`).
impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = match self.im {
            0 => None,
            1 => Some("j".to_string()),
            b => Some(format!("{b}j")),
        };
        let text = match (self.re, imag) {
            (a, None) => a.to_string(),
            (0, Some(b)) => b,
            (a, Some(b)) => format!("{a}+{b}"),
        };
        f.pad(&text)
    }
}

/// Strategy used by [`FieldCtx::find_kernel_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelSearch {
    /// Raise a generator of GI(p)* to the cofactor power. The generator is
    /// sampled from a ChaCha stream seeded by `p`, so results are reproducible.
    #[default]
    Generator,
    /// Scan `(re, im)` in ascending lexicographic order and return the first
    /// element of the requested order.
    Smallest,
}

/// A validated prime modulus `p ≡ 3 (mod 4)`; the arithmetic context for GI(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p % 4 != 3 {
            return Err(Error::BadResidueClass(p));
        }
        if p >= MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(FieldCtx { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Order of the multiplicative group GI(p)*, i.e. `p² - 1`.
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.p * self.p - 1
    }

    /// Builds `re + im·j`, reducing both (possibly negative) components.
    pub fn elem(&self, re: i64, im: i64) -> GaussInt {
        GaussInt {
            re: self.reduce(re),
            im: self.reduce(im),
        }
    }

    #[inline]
    pub fn real(&self, a: i64) -> GaussInt {
        self.elem(a, 0)
    }

    #[inline]
    fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Checks that both components are residues of this field.
    pub fn contains(&self, x: GaussInt) -> bool {
        x.re < self.p && x.im < self.p
    }

    #[inline]
    pub fn add(&self, x: GaussInt, y: GaussInt) -> GaussInt {
        GaussInt {
            re: (x.re + y.re) % self.p,
            im: (x.im + y.im) % self.p,
        }
    }

    #[inline]
    pub fn sub(&self, x: GaussInt, y: GaussInt) -> GaussInt {
        GaussInt {
            re: (x.re + self.p - y.re) % self.p,
            im: (x.im + self.p - y.im) % self.p,
        }
    }

    #[inline]
    pub fn neg(&self, x: GaussInt) -> GaussInt {
        GaussInt {
            re: (self.p - x.re) % self.p,
            im: (self.p - x.im) % self.p,
        }
    }

    /// `(a+bj)(c+dj) = (ac - bd) + (ad + bc)j`.
    #[inline]
    pub fn mul(&self, x: GaussInt, y: GaussInt) -> GaussInt {
        let p = self.p;
        let ac = x.re * y.re % p;
        let bd = x.im * y.im % p;
        let ad = x.re * y.im % p;
        let bc = x.im * y.re % p;
        GaussInt {
            re: (ac + p - bd) % p,
            im: (ad + bc) % p,
        }
    }

    /// Multiplies by a GF(p) scalar.
    #[inline]
    pub fn scale(&self, x: GaussInt, k: u64) -> GaussInt {
        let k = k % self.p;
        GaussInt {
            re: x.re * k % self.p,
            im: x.im * k % self.p,
        }
    }

    #[inline]
    pub fn conj(&self, x: GaussInt) -> GaussInt {
        GaussInt {
            re: x.re,
            im: (self.p - x.im) % self.p,
        }
    }

    /// The norm `a² + b²`, an element of GF(p).
    #[inline]
    pub fn norm(&self, x: GaussInt) -> u64 {
        (x.re * x.re + x.im * x.im) % self.p
    }

    /// Inverse in GF(p) by Fermat's little theorem.
    fn inv_scalar(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    /// `(a - bj)·(a² + b²)⁻¹`.
    pub fn inv(&self, x: GaussInt) -> Result<GaussInt> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // The norm of a nonzero element never vanishes because -1 is a
        // nonresidue mod p.
        let n_inv = self.inv_scalar(self.norm(x));
        Ok(self.scale(self.conj(x), n_inv))
    }

    pub fn div(&self, x: GaussInt, y: GaussInt) -> Result<GaussInt> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Square-and-multiply; negative exponents go through [`FieldCtx::inv`].
    pub fn pow(&self, x: GaussInt, e: i64) -> Result<GaussInt> {
        let base = if e < 0 { self.inv(x)? } else { x };
        Ok(self.pow_u(base, e.unsigned_abs()))
    }

    /// Exponentiation by an unsigned exponent (never fails).
    pub fn pow_u(&self, mut base: GaussInt, mut e: u64) -> GaussInt {
        let mut acc = GaussInt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `N >= 1` with `x^N = 1`.
    ///
    /// Starts from `p² - 1` and strips prime factors while the power stays 1.
    pub fn order(&self, x: GaussInt) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.order_with(x, &factorize(self.group_order())))
    }

    fn order_with(&self, x: GaussInt, factors: &[(u64, u32)]) -> u64 {
        let mut ord = self.group_order();
        for &(q, _) in factors {
            while ord.is_multiple_of(q) && self.pow_u(x, ord / q) == GaussInt::ONE {
                ord /= q;
            }
        }
        ord
    }

    /// Some element of multiplicative order exactly `n`.
    pub fn find_kernel(&self, n: u64) -> Result<GaussInt> {
        self.find_kernel_with(n, KernelSearch::default())
    }

    pub fn find_kernel_with(&self, n: u64, search: KernelSearch) -> Result<GaussInt> {
        let group_order = self.group_order();
        if n == 0 || !group_order.is_multiple_of(n) {
            return Err(Error::NoSuchOrder { n, group_order });
        }
        let factors = factorize(group_order);
        match search {
            KernelSearch::Generator => {
                let g = self.generator(&factors);
                Ok(self.pow_u(g, group_order / n))
            }
            KernelSearch::Smallest => {
                for re in 0..self.p {
                    for im in 0..self.p {
                        let x = GaussInt { re, im };
                        if !x.is_zero() && self.order_with(x, &factors) == n {
                            return Ok(x);
                        }
                    }
                }
                unreachable!("GI(p)* is cyclic, so every divisor of p^2 - 1 is an order")
            }
        }
    }

    /// A generator of the cyclic group GI(p)*.
    pub fn generator_element(&self) -> GaussInt {
        self.generator(&factorize(self.group_order()))
    }

    fn generator(&self, factors: &[(u64, u32)]) -> GaussInt {
        let mut rng = ChaCha8Rng::seed_from_u64(self.p);
        let full = self.group_order();
        loop {
            let x = GaussInt {
                re: rng.gen_range(0..self.p),
                im: rng.gen_range(0..self.p),
            };
            if !x.is_zero() && self.order_with(x, factors) == full {
                return x;
            }
        }
    }

    /// Parses `a`, `bj`, `a+bj` or `j` (decimal residues, no signs).
    /// Components must already be reduced.
    pub fn parse(&self, text: &str) -> Result<GaussInt> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::ParseElement(format!("{text:?}: {why}"));
        if s.is_empty() {
            return Err(bad("empty element"));
        }
        let (re_part, im_part) = match s.split_once('+') {
            Some((a, b)) => {
                if a.is_empty() || a.ends_with('j') || !b.ends_with('j') {
                    return Err(bad("expected a+bj"));
                }
                (Some(a), Some(b))
            }
            None if s.ends_with('j') => (None, Some(s.as_str())),
            None => (Some(s.as_str()), None),
        };
        let residue = |digits: &str| -> Result<u64> {
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad("components must be unsigned decimal integers"));
            }
            let v: u64 = digits.parse().map_err(|_| bad("component out of range"))?;
            if v >= self.p {
                return Err(bad(&format!("component {v} is not reduced mod {}", self.p)));
            }
            Ok(v)
        };
        let re = re_part.map(residue).transpose()?.unwrap_or(0);
        let im = match im_part {
            None => 0,
            Some(b) => {
                let digits = &b[..b.len() - 1];
                if digits.is_empty() {
                    1 % self.p
                } else {
                    residue(digits)?
                }
            }
        };
        Ok(GaussInt { re, im })
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (q, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= q;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}
