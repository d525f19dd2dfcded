//! Operation counting for fast plans.
//!
//! For real input every slot holds a purely real or purely imaginary value.
//! Additions are counted per component, and a multiplication by `c` is shared
//! by the whole class `{±c, ±cj}`: sign changes and multiplication by `j` only
//! move or negate a component. The classes of 0 and 1 cost nothing.
//!
//! Products are keyed by the value being multiplied. A `Pass` node forwards
//! its source unchanged, so a value scaled by the same class in two places is
//! only charged once.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};
use crate::plan::{FastPlan, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OpCount {
    pub pre_adds: usize,
    pub post_adds: usize,
    pub pre_mults: usize,
    pub post_mults: usize,
}

impl OpCount {
    pub fn total_adds(&self) -> usize {
        self.pre_adds + self.post_adds
    }

    pub fn total_mults(&self) -> usize {
        self.pre_mults + self.post_mults
    }

    pub fn total(&self) -> usize {
        self.total_adds() + self.total_mults()
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mults={} adds={} total={} (pre_mults={} post_mults={} pre_adds={} post_adds={})",
            self.total_mults(),
            self.total_adds(),
            self.total(),
            self.pre_mults,
            self.post_mults,
            self.pre_adds,
            self.post_adds
        )
    }
}

/// How post coefficients with both a real and an imaginary part are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CostMode {
    /// Reject them with `ImpurePlan`.
    #[default]
    Strict,
    /// Charge `a + bj` as two pure terms `a` and `bj`, one per output
    /// component. Pre-layer coefficients must still be pure.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Part {
    Re,
    Im,
}

impl Part {
    fn flip(self) -> Part {
        match self {
            Part::Re => Part::Im,
            Part::Im => Part::Re,
        }
    }
}

/// Representative of the class `{±c, ±cj}` for a pure scalar, as an integer
/// in `[0, p/2]`. `None` when `c` has two nonzero parts.
pub fn scalar_class(ctx: &FieldCtx, c: GaussInt) -> Option<u64> {
    match (c.re(), c.im()) {
        (v, 0) | (0, v) => Some(v.min(ctx.p() - v) % ctx.p()),
        _ => None,
    }
}

/// A pure scalar `±rep` or `±rep·j`.
#[derive(Debug, Clone, Copy)]
struct PureScalar {
    rep: u64,
    negate: bool,
    imag: bool,
}

fn pure_parts(ctx: &FieldCtx, c: GaussInt, allow_mixed: bool) -> Option<Vec<PureScalar>> {
    let p = ctx.p();
    let piece = |v: u64, imag: bool| PureScalar {
        rep: v.min(p - v),
        negate: v > p - v,
        imag,
    };
    match (c.re(), c.im()) {
        (0, 0) => Some(vec![]),
        (a, 0) => Some(vec![piece(a, false)]),
        (0, b) => Some(vec![piece(b, true)]),
        (a, b) if allow_mixed => Some(vec![piece(a, false), piece(b, true)]),
        _ => None,
    }
}

/// Identity of a computed value: `(level, slot)` where level 0 is the input.
type Origin = (usize, usize);

fn resolve_layers<F>(plan: &FastPlan, mut on_combine: F) -> Result<(Vec<Part>, Vec<Origin>)>
where
    F: FnMut(usize, usize, &[(Origin, Part, PureScalar)]) -> Result<()>,
{
    let ctx = plan.spec().ctx();
    let n = plan.n();
    let mut tags = vec![Part::Re; n];
    let mut origins: Vec<Origin> = (0..n).map(|i| (0, i)).collect();
    for (k, layer) in plan.layers().iter().enumerate() {
        let level = k + 1;
        let mut next_tags = Vec::with_capacity(n);
        let mut next_origins = Vec::with_capacity(n);
        for (i, node) in layer.nodes().iter().enumerate() {
            match *node {
                Node::Pass(s) => {
                    next_tags.push(tags[s]);
                    next_origins.push(origins[s]);
                }
                Node::Combine { .. } => {
                    let mut terms = Vec::with_capacity(2);
                    for (s, sigma) in node.sources() {
                        let part = match pure_parts(&ctx, sigma, false).as_deref() {
                            Some([one]) => *one,
                            _ => {
                                return Err(Error::ImpurePlan(format!(
                                    "layer {level} slot {i}: coefficient {sigma} mixes real and imaginary parts"
                                )))
                            }
                        };
                        let tag = if part.imag { tags[s].flip() } else { tags[s] };
                        terms.push((origins[s], tag, part));
                    }
                    if terms[0].1 != terms[1].1 {
                        return Err(Error::ImpurePlan(format!(
                            "layer {level} slot {i} adds a real value to an imaginary one"
                        )));
                    }
                    on_combine(level, i, &terms)?;
                    next_tags.push(terms[0].1);
                    next_origins.push((level, i));
                }
            }
        }
        tags = next_tags;
        origins = next_origins;
    }
    Ok((tags, origins))
}

/// The cost ledger under [`CostMode::Strict`].
pub fn count_ops(plan: &FastPlan) -> Result<OpCount> {
    count_ops_with(plan, CostMode::Strict)
}

pub fn count_ops_with(plan: &FastPlan, mode: CostMode) -> Result<OpCount> {
    let ctx = plan.spec().ctx();
    let mut count = OpCount::default();
    let mut products: HashSet<(Origin, u64)> = HashSet::new();

    let (tags, origins) = resolve_layers(plan, |_, _, terms| {
        count.pre_adds += 1;
        for &(origin, _, part) in terms {
            if part.rep > 1 && products.insert((origin, part.rep)) {
                count.pre_mults += 1;
            }
        }
        Ok(())
    })?;

    for (r, row) in plan.post().rows().iter().enumerate() {
        let (mut re_terms, mut im_terms) = (0usize, 0usize);
        for &(c, coeff) in row {
            let parts = pure_parts(&ctx, coeff, mode == CostMode::Split).ok_or_else(|| {
                Error::ImpurePlan(format!(
                    "post row {r} column {c}: coefficient {coeff} mixes real and imaginary parts"
                ))
            })?;
            for part in parts {
                let tag = if part.imag { tags[c].flip() } else { tags[c] };
                match tag {
                    Part::Re => re_terms += 1,
                    Part::Im => im_terms += 1,
                }
                if part.rep > 1 && products.insert((origins[c], part.rep)) {
                    count.post_mults += 1;
                }
            }
        }
        count.post_adds += re_terms.saturating_sub(1) + im_terms.saturating_sub(1);
    }
    Ok(count)
}

/// A pure value: the real number `v` or the imaginary number `v·j`.
#[derive(Debug, Clone, Copy)]
struct PureValue {
    part: Part,
    v: u64,
}

/// Counting executor that only performs GF(p) operations on pure values.
struct Audit<'a> {
    ctx: &'a FieldCtx,
    memo: HashMap<(Origin, u64), u64>,
    mults: usize,
    adds: usize,
}

impl Audit<'_> {
    fn scale(&mut self, origin: Origin, x: PureValue, s: PureScalar) -> PureValue {
        let p = self.ctx.p();
        let mut v = match s.rep {
            0 => 0,
            1 => x.v,
            rep => {
                let mults = &mut self.mults;
                *self.memo.entry((origin, rep)).or_insert_with(|| {
                    *mults += 1;
                    x.v * rep % p
                })
            }
        };
        let mut part = x.part;
        if s.negate {
            v = (p - v) % p;
        }
        if s.imag {
            // (v·j)·j = -v
            if part == Part::Im {
                v = (p - v) % p;
            }
            part = part.flip();
        }
        PureValue { part, v }
    }

    fn add(&mut self, x: PureValue, y: PureValue) -> PureValue {
        debug_assert_eq!(x.part, y.part);
        self.adds += 1;
        PureValue {
            part: x.part,
            v: (x.v + y.v) % self.ctx.p(),
        }
    }
}

/// Runs `plan` on the real input `v` with instrumented arithmetic and
/// returns the observed operation counts together with the output.
///
/// Every scalar product is computed once per (value, class) and reused; unit
/// factors are applied by sign and component manipulation only.
pub fn audit(plan: &FastPlan, v: &[u64], mode: CostMode) -> Result<(OpCount, Vec<GaussInt>)> {
    let ctx = plan.spec().ctx();
    let n = plan.n();
    if v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: v.len(),
        });
    }
    let mut au = Audit {
        ctx: &ctx,
        memo: HashMap::new(),
        mults: 0,
        adds: 0,
    };
    let mut x: Vec<(Origin, PureValue)> = v
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            (
                (0, i),
                PureValue {
                    part: Part::Re,
                    v: a % ctx.p(),
                },
            )
        })
        .collect();

    for (k, layer) in plan.layers().iter().enumerate() {
        let level = k + 1;
        let mut next = Vec::with_capacity(n);
        for (i, node) in layer.nodes().iter().enumerate() {
            match *node {
                Node::Pass(s) => next.push(x[s]),
                Node::Combine { .. } => {
                    let mut terms = Vec::with_capacity(2);
                    for (s, sigma) in node.sources() {
                        let part = match pure_parts(&ctx, sigma, false).as_deref() {
                            Some([one]) => *one,
                            _ => {
                                return Err(Error::ImpurePlan(format!(
                                    "layer {level} slot {i}: coefficient {sigma} mixes real and imaginary parts"
                                )))
                            }
                        };
                        let (origin, value) = x[s];
                        terms.push(au.scale(origin, value, part));
                    }
                    if terms[0].part != terms[1].part {
                        return Err(Error::ImpurePlan(format!(
                            "layer {level} slot {i} adds a real value to an imaginary one"
                        )));
                    }
                    next.push(((level, i), au.add(terms[0], terms[1])));
                }
            }
        }
        x = next;
    }
    let pre = (au.mults, au.adds);
    au.mults = 0;
    au.adds = 0;

    let mut out = Vec::with_capacity(n);
    for (r, row) in plan.post().rows().iter().enumerate() {
        let mut acc: [Option<PureValue>; 2] = [None, None];
        for &(c, coeff) in row {
            let parts = pure_parts(&ctx, coeff, mode == CostMode::Split).ok_or_else(|| {
                Error::ImpurePlan(format!(
                    "post row {r} column {c}: coefficient {coeff} mixes real and imaginary parts"
                ))
            })?;
            let (origin, value) = x[c];
            for part in parts {
                let term = au.scale(origin, value, part);
                let slot = &mut acc[term.part as usize];
                *slot = Some(match *slot {
                    None => term,
                    Some(prev) => au.add(prev, term),
                });
            }
        }
        let re = acc[Part::Re as usize].map_or(0, |t| t.v);
        let im = acc[Part::Im as usize].map_or(0, |t| t.v);
        out.push(ctx.elem(re as i64, im as i64));
    }

    let counts = OpCount {
        pre_adds: pre.1,
        post_adds: au.adds,
        pre_mults: pre.0,
        post_mults: au.mults,
    };
    Ok((counts, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::{builtin_plan, Layer, PostMatrix, BUILTIN_NAMES};
    use crate::transform::forward;
    use crate::trig::KernelSpec;

    fn ledger(name: &str) -> OpCount {
        count_ops(&builtin_plan(name).unwrap()).unwrap()
    }

    fn split(o: OpCount) -> (usize, usize, usize, usize) {
        (o.total_mults(), o.total_adds(), o.pre_adds, o.post_adds)
    }

    #[test]
    fn small_builtin_ledgers() {
        assert_eq!(split(ledger("n4_p7")), (0, 8, 4, 4));
        assert_eq!(split(ledger("n6_p7")), (2, 16, 10, 6));
        assert_eq!(split(ledger("n8_p7")), (2, 22, 14, 8));
        assert_eq!(split(ledger("n12_p7")), (4, 44, 32, 12));
    }

    #[test]
    fn sixteen_point_ledgers() {
        let p7 = ledger("n16_p7");
        assert_eq!((p7.pre_mults, p7.post_mults), (2, 6));
        assert_eq!((p7.pre_adds, p7.post_adds), (40, 16));
        let p31 = ledger("n16_p31");
        assert_eq!((p31.pre_mults, p31.post_mults), (6, 6));
        assert_eq!((p31.pre_adds, p31.post_adds), (44, 16));
    }

    #[test]
    fn totals_add_up() {
        let o = ledger("n8_p7");
        assert_eq!(o.total(), 24);
        assert_eq!(
            o.to_string(),
            "mults=2 adds=22 total=24 (pre_mults=0 post_mults=2 pre_adds=14 post_adds=8)"
        );
    }

    #[test]
    fn scalar_classes() {
        let ctx = FieldCtx::new(7).unwrap();
        assert_eq!(scalar_class(&ctx, ctx.real(1)), Some(1));
        assert_eq!(scalar_class(&ctx, ctx.real(6)), Some(1));
        assert_eq!(scalar_class(&ctx, ctx.elem(0, 6)), Some(1));
        assert_eq!(scalar_class(&ctx, ctx.real(4)), Some(3));
        assert_eq!(scalar_class(&ctx, ctx.elem(0, 3)), Some(3));
        assert_eq!(scalar_class(&ctx, GaussInt::ZERO), Some(0));
        assert_eq!(scalar_class(&ctx, ctx.elem(3, 6)), None);
    }

    #[test]
    fn dense_n6_needs_split_mode() {
        let plan = FastPlan::dense(&KernelSpec::parse(7, "3").unwrap());
        assert!(matches!(count_ops(&plan), Err(Error::ImpurePlan(_))));
        let o = count_ops_with(&plan, CostMode::Split).unwrap();
        // Rows 0 and 3 are real with six terms. The other rows have six
        // nonzero real parts and four nonzero imaginary parts.
        assert_eq!(o.total_adds(), 5 + 5 + 4 * (5 + 3));
    }

    #[test]
    fn mixed_tags_are_impure() {
        let spec = KernelSpec::parse(7, "j").unwrap();
        let ctx = spec.ctx();
        let layer = Layer::new(vec![
            Node::Combine {
                a: 0,
                sigma_a: GaussInt::ONE,
                b: 1,
                sigma_b: GaussInt::J,
            },
            Node::Pass(1),
            Node::Pass(2),
            Node::Pass(3),
        ]);
        let plan = FastPlan::new(
            spec,
            vec![layer],
            PostMatrix::from_dense(&crate::matrix::Matrix::identity(4)),
        )
        .unwrap();
        assert!(matches!(count_ops(&plan), Err(Error::ImpurePlan(_))));
        assert!(matches!(
            count_ops_with(&plan, CostMode::Split),
            Err(Error::ImpurePlan(_))
        ));
        assert!(matches!(
            audit(&plan, &[1, 2, 3, 4], CostMode::Strict),
            Err(Error::ImpurePlan(_))
        ));
        let _ = ctx;
    }

    #[test]
    fn audit_matches_ledger_and_oracle() {
        for name in BUILTIN_NAMES {
            let plan = builtin_plan(name).unwrap();
            let table = plan.spec().cas_table();
            let ctx = plan.spec().ctx();
            let v: Vec<u64> = (0..plan.n() as u64)
                .map(|i| (3 * i + 1) % ctx.p())
                .collect();
            let (counts, out) = audit(&plan, &v, CostMode::Strict).unwrap();
            assert_eq!(counts, count_ops(&plan).unwrap(), "{name}");
            let input: Vec<GaussInt> = v.iter().map(|&a| ctx.real(a as i64)).collect();
            assert_eq!(out, forward(&table, &input).unwrap(), "{name}");
        }
    }
}
