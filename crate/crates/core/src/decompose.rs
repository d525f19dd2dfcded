//! Derivation of fast plans by iterated Hadamard column pairing.
//!
//! A pairing step `(a, b, s)` replaces the inputs `x_a`, `x_b` with
//! `x_b - s·x_a` and `x_b + s·x_a`. Columns of the working matrix follow:
//!
//! ```text
//! minus column = (col_b - col_a·s⁻¹)·2⁻¹
//! plus column  = (col_b + col_a·s⁻¹)·2⁻¹
//! ```
//!
//! so `M_new · L = M_old` exactly. A step is worth taking when the new columns
//! have more zeros than the old ones; zeros in the final matrix are post terms
//! that never get computed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};
use crate::matrix::Matrix;
use crate::plan::{count_ops_with, CostMode, FastPlan, Layer, Node, OpCount, PostMatrix};
use crate::transform::build_matrix;
use crate::trig::KernelSpec;

/// Largest N accepted by [`Strategy::Exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Largest N for which greedy layers use an exact maximum-gain matching.
/// Beyond it pairs are taken greedily by gain.
const MATCHING_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairingStep {
    pub a: usize,
    pub b: usize,
    pub scale: GaussInt,
}

impl PairingStep {
    pub fn new(a: usize, b: usize, scale: GaussInt) -> Self {
        PairingStep { a, b, scale }
    }

    fn key(&self) -> (usize, usize, u64, u64) {
        (self.a, self.b, self.scale.re(), self.scale.im())
    }
}

/// Applies disjoint pairing steps to the columns of `m`.
///
/// Step `k` produces slots `2k` (minus) and `2k + 1` (plus); unpaired
/// columns follow as `Pass` nodes in ascending order.
pub fn apply_pairing(ctx: &FieldCtx, m: &Matrix, steps: &[PairingStep]) -> Result<(Matrix, Layer)> {
    let n = m.cols();
    let mut used = vec![false; n];
    for st in steps {
        if st.a >= n || st.b >= n {
            return Err(Error::InvalidPairing(format!(
                "columns ({}, {}) out of range for {n} columns",
                st.a, st.b
            )));
        }
        if st.a == st.b {
            return Err(Error::InvalidPairing(format!(
                "column {} paired with itself",
                st.a
            )));
        }
        if st.scale.is_zero() {
            return Err(Error::InvalidPairing(format!(
                "zero scale on ({}, {})",
                st.a, st.b
            )));
        }
        for c in [st.a, st.b] {
            if std::mem::replace(&mut used[c], true) {
                return Err(Error::OverlappingPairs(c));
            }
        }
    }

    let half = ctx.inv(ctx.real(2))?;
    let mut out = Matrix::zeros(m.rows(), n);
    let mut nodes = Vec::with_capacity(n);
    for (k, st) in steps.iter().enumerate() {
        let s_inv = ctx.inv(st.scale)?;
        let neg_s = ctx.neg(st.scale);
        nodes.push(Node::Combine {
            a: st.b,
            sigma_a: GaussInt::ONE,
            b: st.a,
            sigma_b: neg_s,
        });
        nodes.push(Node::Combine {
            a: st.b,
            sigma_a: GaussInt::ONE,
            b: st.a,
            sigma_b: st.scale,
        });
        for r in 0..m.rows() {
            let cb = m[(r, st.b)];
            let ca = ctx.mul(m[(r, st.a)], s_inv);
            out[(r, 2 * k)] = ctx.mul(ctx.sub(cb, ca), half);
            out[(r, 2 * k + 1)] = ctx.mul(ctx.add(cb, ca), half);
        }
    }
    for c in (0..n).filter(|&c| !used[c]) {
        let slot = nodes.len();
        nodes.push(Node::Pass(c));
        out.set_column(slot, &m.column(c));
    }
    Ok((out, Layer::new(nodes)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Greedy,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeriveOptions {
    pub strategy: Strategy,
    pub allow_scaling: bool,
    pub max_layers: usize,
}

impl Default for DeriveOptions {
    fn default() -> Self {
        DeriveOptions {
            strategy: Strategy::Greedy,
            allow_scaling: false,
            max_layers: 8,
        }
    }
}

/// A derived plan with its cost and the zero count of the working matrix
/// after each accepted layer (entry 0 is the dense matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub plan: FastPlan,
    pub cost: OpCount,
    pub zero_counts: Vec<usize>,
}

pub fn derive_plan(spec: &KernelSpec, opts: &DeriveOptions) -> Result<FastPlan> {
    derive(spec, opts).map(|d| d.plan)
}

/// Runs the search. Costs are measured with [`CostMode::Split`] since
/// intermediate matrices may hold coefficients with two nonzero parts.
pub fn derive(spec: &KernelSpec, opts: &DeriveOptions) -> Result<Derivation> {
    match opts.strategy {
        Strategy::Greedy => greedy(spec, opts),
        Strategy::Exhaustive => {
            if spec.n() > EXHAUSTIVE_LIMIT {
                return Err(Error::SearchSpaceTooLarge {
                    n: spec.n(),
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            exhaustive(spec, opts)
        }
    }
}

/// Working state: matrix, the component each slot lands in for real input
/// (`true` = imaginary), and the layers so far.
#[derive(Clone)]
struct State {
    m: Matrix,
    imag: Vec<bool>,
    layers: Vec<Layer>,
    zero_counts: Vec<usize>,
}

impl State {
    fn start(spec: &KernelSpec) -> Self {
        let m = build_matrix(spec).into_matrix();
        State {
            zero_counts: vec![m.count_zeros()],
            m,
            imag: vec![false; spec.n()],
            layers: Vec::new(),
        }
    }

    fn push(&self, ctx: &FieldCtx, steps: &[PairingStep]) -> State {
        let mut layers = self.layers.clone();
        let mut zero_counts = self.zero_counts.clone();
        let (m, imag) = layer_from(ctx, &self.m, &self.imag, steps, &mut layers);
        zero_counts.push(m.count_zeros());
        State {
            m,
            imag,
            layers,
            zero_counts,
        }
    }

    fn pre_adds(&self) -> usize {
        self.layers
            .iter()
            .flat_map(|l| l.nodes())
            .filter(|node| matches!(node, Node::Combine { .. }))
            .count()
    }

    /// Columns written by a combine in the last layer. Before any layer
    /// every column counts.
    fn fresh(&self) -> Vec<bool> {
        match self.layers.last() {
            None => vec![true; self.m.cols()],
            Some(layer) => layer
                .nodes()
                .iter()
                .map(|node| matches!(node, Node::Combine { .. }))
                .collect(),
        }
    }

    fn plan(&self, spec: &KernelSpec) -> FastPlan {
        FastPlan::new(*spec, self.layers.clone(), PostMatrix::from_dense(&self.m))
            .expect("derived plans are well formed")
    }
}

fn layer_from(
    ctx: &FieldCtx,
    m: &Matrix,
    imag: &[bool],
    steps: &[PairingStep],
    layers: &mut Vec<Layer>,
) -> (Matrix, Vec<bool>) {
    let (next, layer) = apply_pairing(ctx, m, steps).expect("steps are disjoint");
    let tags = layer
        .nodes()
        .iter()
        .map(|node| match *node {
            Node::Pass(s) => imag[s],
            // Both halves land where x_b lands.
            Node::Combine { a, .. } => imag[a],
        })
        .collect();
    layers.push(layer);
    (next, tags)
}

/// Net zeros created by one step.
fn gain(ctx: &FieldCtx, m: &Matrix, a: usize, b: usize, s: GaussInt) -> i64 {
    let s_inv = ctx.inv(s).expect("nonzero scale");
    let mut before = 0i64;
    let mut after = 0i64;
    for r in 0..m.rows() {
        let (ca, cb) = (m[(r, a)], m[(r, b)]);
        before += ca.is_zero() as i64 + cb.is_zero() as i64;
        let t = ctx.mul(ca, s_inv);
        after += ctx.sub(cb, t).is_zero() as i64 + ctx.add(cb, t).is_zero() as i64;
    }
    after - before
}

fn is_pure(s: GaussInt) -> bool {
    s.re() == 0 || s.im() == 0
}

/// Scales that keep both outputs of `(a, b)` in one component, ascending by
/// `(re, im)`.
fn scale_candidates(
    ctx: &FieldCtx,
    st: &State,
    a: usize,
    b: usize,
    allow_scaling: bool,
    full_sweep: bool,
) -> Vec<GaussInt> {
    let mut out = vec![GaussInt::ONE];
    if allow_scaling {
        if full_sweep {
            // s and -s give the same two columns with minus and plus swapped.
            for v in 1..=(ctx.p() as i64 - 1) / 2 {
                out.push(ctx.real(v));
                out.push(ctx.elem(0, v));
            }
        } else {
            for r in 0..st.m.rows() {
                let (ca, cb) = (st.m[(r, a)], st.m[(r, b)]);
                if !ca.is_zero() && !cb.is_zero() {
                    let ratio = ctx.div(ca, cb).expect("nonzero");
                    if is_pure(ratio) {
                        out.push(ratio);
                    }
                }
            }
        }
    }
    // s·x_a must land in the same component as x_b.
    out.retain(|s| (st.imag[a] ^ s.is_imaginary()) == st.imag[b]);
    out.sort_unstable();
    out.dedup();
    out
}

/// Best positive-gain scale for every pair `a < b`.
fn best_steps(ctx: &FieldCtx, st: &State, allow_scaling: bool) -> Vec<(PairingStep, i64)> {
    let n = st.m.cols();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut best: Option<(GaussInt, i64)> = None;
            for s in scale_candidates(ctx, st, a, b, allow_scaling, false) {
                let g = gain(ctx, &st.m, a, b, s);
                if best.is_none_or(|(_, bg)| g > bg) {
                    best = Some((s, g));
                }
            }
            if let Some((s, g)) = best.filter(|&(_, g)| g > 0) {
                out.push((PairingStep::new(a, b, s), g));
            }
        }
    }
    out
}

type StepKey = (usize, usize, u64, u64);

/// Maximum total gain over disjoint steps; ties go to the lexicographically
/// smallest sorted step list.
fn best_matching(n: usize, cands: &[(PairingStep, i64)]) -> Vec<PairingStep> {
    if n > MATCHING_LIMIT {
        let mut sorted: Vec<_> = cands.to_vec();
        sorted.sort_by_key(|(st, g)| (-g, st.key()));
        let mut used = vec![false; n];
        let mut out = Vec::new();
        for (st, _) in sorted {
            if !used[st.a] && !used[st.b] {
                used[st.a] = true;
                used[st.b] = true;
                out.push(st);
            }
        }
        out.sort_by_key(PairingStep::key);
        return out;
    }

    let mut by_first: Vec<Vec<(PairingStep, i64)>> = vec![Vec::new(); n];
    for &(st, g) in cands {
        by_first[st.a].push((st, g));
    }
    let mut memo: HashMap<u32, (i64, Vec<StepKey>, Vec<PairingStep>)> = HashMap::new();

    fn solve(
        mask: u32,
        n: usize,
        by_first: &[Vec<(PairingStep, i64)>],
        memo: &mut HashMap<u32, (i64, Vec<StepKey>, Vec<PairingStep>)>,
    ) -> (i64, Vec<StepKey>, Vec<PairingStep>) {
        let Some(i) = (0..n).find(|&i| mask & (1 << i) == 0) else {
            return (0, Vec::new(), Vec::new());
        };
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let mut best = solve(mask | 1 << i, n, by_first, memo);
        for &(st, g) in &by_first[i] {
            if mask & (1 << st.b) != 0 {
                continue;
            }
            let (rg, rk, rs) = solve(mask | 1 << i | 1 << st.b, n, by_first, memo);
            let total = g + rg;
            let mut keys = vec![st.key()];
            keys.extend(rk);
            if total > best.0 || (total == best.0 && keys < best.1) {
                let mut steps = vec![st];
                steps.extend(rs);
                best = (total, keys, steps);
            }
        }
        memo.insert(mask, best.clone());
        best
    }

    solve(0, n, &by_first, &mut memo).2
}

/// Least extra cost of one or more further steps when `post_adds` post
/// additions remain. Each step costs two additions and removes at most one
/// nonzero per row, so k steps cost at least 2k + max(0, post_adds - kN).
fn continuation_bound(post_adds: usize, n: usize) -> usize {
    let k = (post_adds / n).max(1);
    (2 * k + post_adds.saturating_sub(k * n)).min(2 * post_adds.div_ceil(n).max(1))
}

/// Split-mode post additions straight from the working matrix.
fn post_adds(st: &State) -> usize {
    (0..st.m.rows())
        .map(|r| {
            let mut terms = [0usize; 2];
            for (c, &imag) in st.imag.iter().enumerate() {
                let x = st.m[(r, c)];
                terms[imag as usize] += (x.re() != 0) as usize;
                terms[!imag as usize] += (x.im() != 0) as usize;
            }
            terms[0].saturating_sub(1) + terms[1].saturating_sub(1)
        })
        .sum()
}

fn cost_of(spec: &KernelSpec, st: &State) -> OpCount {
    count_ops_with(&st.plan(spec), CostMode::Split).expect("derived layers are pure")
}

fn greedy_state(spec: &KernelSpec, opts: &DeriveOptions) -> State {
    let ctx = spec.ctx();
    let mut st = State::start(spec);
    let mut best = (cost_of(spec, &st).total(), st.clone());

    while st.layers.len() < opts.max_layers {
        let cands = best_steps(&ctx, &st, opts.allow_scaling);
        let steps = best_matching(st.m.cols(), &cands);
        if steps.is_empty() {
            break;
        }
        st = st.push(&ctx, &steps);
        let total = cost_of(spec, &st).total();
        if total < best.0 {
            best = (total, st.clone());
        }
    }
    best.1
}

fn greedy(spec: &KernelSpec, opts: &DeriveOptions) -> Result<Derivation> {
    let st = greedy_state(spec, opts);
    Ok(Derivation {
        cost: cost_of(spec, &st),
        plan: st.plan(spec),
        zero_counts: st.zero_counts,
    })
}

/// Per column: fresh flag, component tag, entries.
type CanonicalKey = Vec<(bool, bool, Vec<GaussInt>)>;

/// Columns up to order and unit factors `±1, ±j`. Both leave every future
/// cost unchanged: reordering relabels slots and a unit factor moves into the
/// layer coefficients for free. Fresh flags stay in the key because they
/// restrict which steps may follow.
fn canonical_key(ctx: &FieldCtx, st: &State) -> CanonicalKey {
    let units = [GaussInt::ONE, ctx.real(-1), GaussInt::J, ctx.elem(0, -1)];
    let fresh = st.fresh();
    let mut cols: CanonicalKey = (0..st.m.cols())
        .map(|c| {
            let col = st.m.column(c);
            units
                .iter()
                .map(|&u| {
                    let scaled: Vec<GaussInt> = col.iter().map(|&x| ctx.mul(x, u)).collect();
                    // The slot is divided by u, so a j factor moves it to the
                    // other component.
                    (fresh[c], st.imag[c] ^ u.is_imaginary(), scaled)
                })
                .min()
                .expect("four units")
        })
        .collect();
    cols.sort_unstable();
    cols
}

/// Depth-first search over every layer built from disjoint positive-gain
/// steps, scales drawn from all pure nonzero elements. A step whose columns
/// both passed through the previous layer could have joined it at the same
/// cost, so every step must read a column the previous layer combined.
///
/// The total is minimal over that space, up to `max_layers` layers. Ties go
/// to fewer multiplications, then fewer layers, among the plans reached:
/// branches are cut as soon as a lower bound shows they cannot lower the
/// total, and states equal up to column order and unit factors are expanded
/// once. The greedy plan seeds the incumbent.
fn exhaustive(spec: &KernelSpec, opts: &DeriveOptions) -> Result<Derivation> {
    struct Search<'a> {
        spec: &'a KernelSpec,
        ctx: FieldCtx,
        allow_scaling: bool,
        max_layers: usize,
        best: (usize, usize, usize),
        best_state: State,
        seen: HashMap<CanonicalKey, (usize, usize, usize)>,
        visited: usize,
    }

    impl Search<'_> {
        fn visit(&mut self, st: State) {
            self.visited += 1;
            let n = st.m.cols();
            // Multiplications only add to these, so the full count is skipped
            // when the additions alone settle the state.
            let adds = (st.pre_adds(), post_adds(&st));
            let stop = |pre: usize, best: (usize, usize, usize)| {
                pre + continuation_bound(adds.1, n) >= best.0
            };
            let improves = (adds.0 + adds.1, 0, st.layers.len()) < self.best;
            if !improves && stop(adds.0, self.best) {
                return;
            }
            let cost = cost_of(self.spec, &st);
            let key = (cost.total(), cost.total_mults(), st.layers.len());
            if key < self.best {
                self.best = key;
                self.best_state = st.clone();
            }
            let pre = cost.pre_adds + cost.pre_mults;
            if stop(pre, self.best) {
                return;
            }
            debug_assert_eq!(adds, (cost.pre_adds, cost.post_adds));
            let reached = (pre, cost.pre_mults, st.layers.len());
            let key = canonical_key(&self.ctx, &st);
            match self.seen.get(&key) {
                Some(&seen) if seen <= reached => return,
                _ => {
                    self.seen.insert(key, reached);
                }
            }

            if st.layers.len() >= self.max_layers {
                return;
            }

            let fresh = st.fresh();
            let mut cands: Vec<Vec<PairingStep>> = vec![Vec::new(); n];
            for a in 0..n {
                for b in a + 1..n {
                    // A step on two untouched columns fits one layer earlier.
                    if !fresh[a] && !fresh[b] {
                        continue;
                    }
                    for s in scale_candidates(&self.ctx, &st, a, b, self.allow_scaling, true) {
                        if gain(&self.ctx, &st.m, a, b, s) > 0 {
                            cands[a].push(PairingStep::new(a, b, s));
                        }
                    }
                }
            }
            let mut chosen = Vec::new();
            self.matchings(&st, &cands, 0, 0, &mut chosen);
        }

        /// Enumerates the disjoint subsets of `cands`. A partial layer that
        /// cannot beat the incumbent even after more steps is visited as it
        /// stands and not grown further.
        fn matchings(
            &mut self,
            st: &State,
            cands: &[Vec<PairingStep>],
            from: usize,
            used: u32,
            chosen: &mut Vec<PairingStep>,
        ) {
            let n = cands.len();
            if !chosen.is_empty() {
                let next = st.push(&self.ctx, chosen);
                // Multiplications can only add to this.
                let bound = next.pre_adds() + continuation_bound(post_adds(&next), n);
                if bound >= self.best.0 {
                    self.visit(next);
                    return;
                }
            }
            let Some(i) = (from..n).find(|&i| used & (1 << i) == 0) else {
                if !chosen.is_empty() {
                    let next = st.push(&self.ctx, chosen);
                    self.visit(next);
                }
                return;
            };
            self.matchings(st, cands, i + 1, used | 1 << i, chosen);
            for &step in &cands[i] {
                if used & (1 << step.b) != 0 {
                    continue;
                }
                chosen.push(step);
                self.matchings(st, cands, i + 1, used | 1 << i | 1 << step.b, chosen);
                chosen.pop();
            }
        }
    }

    // The greedy plan is a valid incumbent and makes the cost bound bite early.
    let seed = greedy_state(spec, opts);
    let seed_cost = cost_of(spec, &seed);
    let mut search = Search {
        spec,
        ctx: spec.ctx(),
        allow_scaling: opts.allow_scaling,
        max_layers: opts.max_layers,
        best: (
            seed_cost.total(),
            seed_cost.total_mults(),
            seed.layers.len(),
        ),
        best_state: seed,
        seen: HashMap::new(),
        visited: 0,
    };
    search.visit(State::start(spec));
    if std::env::var_os("FFHT_TRACE").is_some() {
        eprintln!("exhaustive: {} states", search.visited);
    }

    let st = search.best_state;
    Ok(Derivation {
        cost: cost_of(spec, &st),
        plan: st.plan(spec),
        zero_counts: st.zero_counts,
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::transform::forward;

    fn spec(p: u64, z: &str) -> KernelSpec {
        KernelSpec::parse(p, z).unwrap()
    }

    fn matrix(ctx: &FieldCtx, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ctx.real(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn one(a: usize, b: usize) -> PairingStep {
        PairingStep::new(a, b, GaussInt::ONE)
    }

    fn assert_matches_oracle(plan: &FastPlan, seed: u64) {
        let ctx = plan.spec().ctx();
        let table = plan.spec().cas_table();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let v: Vec<GaussInt> = (0..plan.n())
                .map(|_| {
                    ctx.elem(
                        rng.gen_range(0..ctx.p() as i64),
                        rng.gen_range(0..ctx.p() as i64),
                    )
                })
                .collect();
            assert_eq!(plan.apply(&v).unwrap(), forward(&table, &v).unwrap());
        }
    }

    #[test]
    fn four_point_pairing() {
        let s = spec(7, "j");
        let ctx = s.ctx();
        let t = build_matrix(&s).into_matrix();
        let (m, _layer) = apply_pairing(&ctx, &t, &[one(1, 3), one(0, 2)]).unwrap();
        assert_eq!(m.column(0), matrix(&ctx, &[&[0, 6, 0, 1]]).row(0));
        assert_eq!(m.column(1), matrix(&ctx, &[&[1, 0, 6, 0]]).row(0));

        // S_2 = v_0 - v_2 takes column 2 as the subtracted one.
        let (m, layer) = apply_pairing(&ctx, &t, &[one(1, 3), one(2, 0)]).unwrap();
        let want = matrix(
            &ctx,
            &[&[0, 1, 0, 1], &[6, 0, 1, 0], &[0, 6, 0, 1], &[1, 0, 1, 0]],
        );
        assert_eq!(m, want);
        assert_eq!(m.mul(&ctx, &layer.to_matrix(&ctx)).unwrap(), t);
    }

    #[test]
    fn eight_point_pairing() {
        let s = spec(7, "2+2j");
        let ctx = s.ctx();
        let t = build_matrix(&s).into_matrix();
        let steps = [one(1, 5), one(2, 6), one(3, 7), one(4, 0)];
        let (m, layer) = apply_pairing(&ctx, &t, &steps).unwrap();
        let want = matrix(
            &ctx,
            &[
                &[0, 1, 0, 1, 0, 1, 0, 1],
                &[3, 0, 6, 0, 0, 0, 1, 0],
                &[0, 1, 0, 6, 0, 6, 0, 1],
                &[0, 0, 1, 0, 3, 0, 1, 0],
                &[0, 6, 0, 1, 0, 6, 0, 1],
                &[4, 0, 6, 0, 0, 0, 1, 0],
                &[0, 6, 0, 6, 0, 1, 0, 1],
                &[0, 0, 1, 0, 4, 0, 1, 0],
            ],
        );
        assert_eq!(m, want);
        assert_eq!(m.mul(&ctx, &layer.to_matrix(&ctx)).unwrap(), t);
    }

    #[test]
    fn empty_pairing_is_identity() {
        let s = spec(7, "3");
        let ctx = s.ctx();
        let t = build_matrix(&s).into_matrix();
        let (m, layer) = apply_pairing(&ctx, &t, &[]).unwrap();
        assert_eq!(m, t);
        assert_eq!(layer, Layer::identity(6));
    }

    #[test]
    fn bad_pairings() {
        let s = spec(7, "j");
        let ctx = s.ctx();
        let t = build_matrix(&s).into_matrix();
        assert_eq!(
            apply_pairing(&ctx, &t, &[one(0, 1), one(1, 2)]),
            Err(Error::OverlappingPairs(1))
        );
        assert!(matches!(
            apply_pairing(&ctx, &t, &[one(0, 4)]),
            Err(Error::InvalidPairing(_))
        ));
        assert!(matches!(
            apply_pairing(&ctx, &t, &[one(2, 2)]),
            Err(Error::InvalidPairing(_))
        ));
        let zero = PairingStep::new(0, 1, GaussInt::ZERO);
        assert!(matches!(
            apply_pairing(&ctx, &t, &[zero]),
            Err(Error::InvalidPairing(_))
        ));
    }

    #[test]
    fn scaled_pairing_keeps_the_product() {
        let s = spec(7, "2+2j");
        let ctx = s.ctx();
        let t = build_matrix(&s).into_matrix();
        let steps = [
            PairingStep::new(0, 3, ctx.real(2)),
            PairingStep::new(5, 1, ctx.elem(0, 3)),
        ];
        let (m, layer) = apply_pairing(&ctx, &t, &steps).unwrap();
        assert_eq!(m.mul(&ctx, &layer.to_matrix(&ctx)).unwrap(), t);
    }

    #[test]
    fn greedy_four_point() {
        let d = derive(&spec(7, "j"), &DeriveOptions::default()).unwrap();
        assert!(d.plan.validate().is_equal());
        assert_eq!((d.cost.total_mults(), d.cost.total_adds()), (0, 8));
        assert_matches_oracle(&d.plan, 1);
    }

    #[test]
    fn greedy_six_point_beats_dense() {
        let s = spec(7, "3");
        let dense = count_ops_with(&FastPlan::dense(&s), CostMode::Split).unwrap();
        let d = derive(&s, &DeriveOptions::default()).unwrap();
        assert!(d.plan.validate().is_equal());
        assert!(d.cost.total() <= dense.total());
        assert_matches_oracle(&d.plan, 2);
    }

    #[test]
    fn zero_counts_rise_each_layer() {
        for (p, z) in [(7, "j"), (7, "3"), (7, "2+2j"), (7, "2+4j"), (31, "7+13j")] {
            for allow_scaling in [false, true] {
                let opts = DeriveOptions {
                    allow_scaling,
                    ..DeriveOptions::default()
                };
                let d = derive(&spec(p, z), &opts).unwrap();
                assert_eq!(d.zero_counts.len(), d.plan.layers().len() + 1);
                assert!(
                    d.zero_counts.windows(2).all(|w| w[0] < w[1]),
                    "{z}: {:?}",
                    d.zero_counts
                );
            }
        }
    }

    #[test]
    fn derived_plans_dominate_dense_and_match_oracle() {
        for (seed, (p, z)) in [
            (7, "j"),
            (7, "3"),
            (7, "2+2j"),
            (7, "3j"),
            (7, "2+4j"),
            (31, "7+13j"),
        ]
        .into_iter()
        .enumerate()
        {
            let s = spec(p, z);
            let dense = count_ops_with(&FastPlan::dense(&s), CostMode::Split).unwrap();
            for allow_scaling in [false, true] {
                let opts = DeriveOptions {
                    allow_scaling,
                    ..DeriveOptions::default()
                };
                let d = derive(&s, &opts).unwrap();
                assert!(d.plan.validate().is_equal());
                assert!(d.cost.total() <= dense.total(), "{z}");
                assert_eq!(d.cost, count_ops_with(&d.plan, CostMode::Split).unwrap());
                assert_matches_oracle(&d.plan, seed as u64);
            }
        }
    }

    #[test]
    fn derivation_is_deterministic() {
        let opts = DeriveOptions {
            allow_scaling: true,
            ..DeriveOptions::default()
        };
        let s = spec(31, "7+13j");
        assert_eq!(derive(&s, &opts).unwrap(), derive(&s, &opts).unwrap());
    }

    #[test]
    fn max_layers_caps_depth() {
        let opts = DeriveOptions {
            allow_scaling: true,
            max_layers: 1,
            ..DeriveOptions::default()
        };
        let d = derive(&spec(7, "2+4j"), &opts).unwrap();
        assert!(d.plan.layers().len() <= 1);
        assert!(d.plan.validate().is_equal());
    }

    #[test]
    fn exhaustive_small_cases() {
        let opts = DeriveOptions {
            strategy: Strategy::Exhaustive,
            allow_scaling: true,
            ..DeriveOptions::default()
        };
        let d = derive(&spec(7, "j"), &opts).unwrap();
        assert_eq!((d.cost.total_mults(), d.cost.total_adds()), (0, 8));

        let s = spec(7, "3");
        let greedy = derive(
            &s,
            &DeriveOptions {
                allow_scaling: true,
                ..DeriveOptions::default()
            },
        )
        .unwrap();
        let d = derive(&s, &opts).unwrap();
        assert!(d.plan.validate().is_equal());
        assert!(d.cost.total() <= greedy.cost.total());
        assert_eq!((d.cost.total_mults(), d.cost.total_adds()), (2, 16));
        assert_matches_oracle(&d.plan, 9);
    }

    #[test]
    fn exhaustive_rejects_large_n() {
        let opts = DeriveOptions {
            strategy: Strategy::Exhaustive,
            ..DeriveOptions::default()
        };
        assert_eq!(
            derive(&spec(7, "3j"), &opts),
            Err(Error::SearchSpaceTooLarge { n: 12, limit: 8 })
        );
    }
}
