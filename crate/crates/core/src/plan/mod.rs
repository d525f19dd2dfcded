//! Fast plans: ordered pre-addition layers followed by a sparse post-matrix.
//!
//! A plan computes `V = post · L_k ⋯ L_1 · v`. Each layer maps N slots to N
//! slots and every output slot is either a copy of one input slot or a
//! two-term combination `σa·x[a] + σb·x[b]`.

mod builtin;
mod cost;
mod text;

pub use builtin::{builtin_plan, BUILTIN_NAMES};
pub use cost::{audit, count_ops, count_ops_with, scalar_class, CostMode, OpCount};
pub use text::{parse_plan, serialize_plan};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};
use crate::matrix::Matrix;
use crate::transform::build_matrix;
use crate::trig::KernelSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Pass(usize),
    /// `sigma_a·x[a] + sigma_b·x[b]`.
    Combine {
        a: usize,
        sigma_a: GaussInt,
        b: usize,
        sigma_b: GaussInt,
    },
}

impl Node {
    /// The paper's plain butterfly halves: `x[a] - x[b]` and `x[a] + x[b]`.
    pub fn diff(ctx: &FieldCtx, a: usize, b: usize) -> Node {
        Node::Combine {
            a,
            sigma_a: GaussInt::ONE,
            b,
            sigma_b: ctx.real(-1),
        }
    }

    pub fn sum(a: usize, b: usize) -> Node {
        Node::Combine {
            a,
            sigma_a: GaussInt::ONE,
            b,
            sigma_b: GaussInt::ONE,
        }
    }

    /// Slots read by this node.
    pub fn sources(&self) -> Vec<(usize, GaussInt)> {
        match *self {
            Node::Pass(s) => vec![(s, GaussInt::ONE)],
            Node::Combine {
                a,
                sigma_a,
                b,
                sigma_b,
            } => vec![(a, sigma_a), (b, sigma_b)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layer {
    nodes: Vec<Node>,
}

impl Layer {
    pub fn new(nodes: Vec<Node>) -> Self {
        Layer { nodes }
    }

    pub fn identity(n: usize) -> Self {
        Layer::new((0..n).map(Node::Pass).collect())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Dense N×N matrix of the layer (row = output slot).
    pub fn to_matrix(&self, ctx: &FieldCtx) -> Matrix {
        let n = self.nodes.len();
        let mut m = Matrix::zeros(n, n);
        for (i, node) in self.nodes.iter().enumerate() {
            for (s, sigma) in node.sources() {
                m[(i, s)] = ctx.add(m[(i, s)], sigma);
            }
        }
        m
    }

    pub fn apply(&self, ctx: &FieldCtx, x: &[GaussInt]) -> Vec<GaussInt> {
        self.nodes
            .iter()
            .map(|node| match *node {
                Node::Pass(s) => x[s],
                Node::Combine {
                    a,
                    sigma_a,
                    b,
                    sigma_b,
                } => ctx.add(ctx.mul(sigma_a, x[a]), ctx.mul(sigma_b, x[b])),
            })
            .collect()
    }
}

/// Sparse N×N post-matrix: per row, `(column, coefficient)` sorted by column,
/// zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PostMatrix {
    rows: Vec<Vec<(usize, GaussInt)>>,
}

impl PostMatrix {
    /// Sorts each row by column. Duplicate columns or explicit zeros are
    /// rejected so that every plan has a single canonical form.
    pub fn new(mut rows: Vec<Vec<(usize, GaussInt)>>) -> Result<Self> {
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|&(c, _)| c);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::MalformedPlan(format!(
                    "post row {r} lists column {} twice",
                    w[0].0
                )));
            }
            if let Some(&(c, _)) = row.iter().find(|(_, x)| x.is_zero()) {
                return Err(Error::MalformedPlan(format!(
                    "post row {r} has an explicit zero at column {c}"
                )));
            }
        }
        Ok(PostMatrix { rows })
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let rows = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, &x)| (c, x))
                    .collect()
            })
            .collect();
        PostMatrix { rows }
    }

    pub fn to_dense(&self, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), cols);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, x) in row {
                m[(r, c)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> &[Vec<(usize, GaussInt)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, ctx: &FieldCtx, x: &[GaussInt]) -> Vec<GaussInt> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(GaussInt::ZERO, |acc, &(c, k)| {
                    ctx.add(acc, ctx.mul(k, x[c]))
                })
            })
            .collect()
    }
}

/// Outcome of comparing a plan's composition with the dense transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Equal,
    Mismatch {
        row: usize,
        col: usize,
        expected: GaussInt,
        composed: GaussInt,
    },
}

impl ValidationReport {
    pub fn is_equal(&self) -> bool {
        matches!(self, ValidationReport::Equal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastPlan {
    spec: KernelSpec,
    layers: Vec<Layer>,
    post: PostMatrix,
}

impl FastPlan {
    /// Checks the structural invariants; does not validate against T.
    pub fn new(spec: KernelSpec, layers: Vec<Layer>, post: PostMatrix) -> Result<Self> {
        let n = spec.n();
        let ctx = spec.ctx();
        let reduced = |x: GaussInt, what: &str| {
            if ctx.contains(x) {
                Ok(())
            } else {
                Err(Error::MalformedPlan(format!(
                    "{what} {x} is not reduced mod {}",
                    ctx.p()
                )))
            }
        };
        for (k, layer) in layers.iter().enumerate() {
            let k = k + 1;
            if layer.len() != n {
                return Err(Error::MalformedPlan(format!(
                    "layer {k} has {} slots, expected {n}",
                    layer.len()
                )));
            }
            for (i, node) in layer.nodes().iter().enumerate() {
                for (s, sigma) in node.sources() {
                    if s >= n {
                        return Err(Error::MalformedPlan(format!(
                            "layer {k} slot {i} reads slot {s}, outside 0..{n}"
                        )));
                    }
                    if sigma.is_zero() {
                        return Err(Error::MalformedPlan(format!(
                            "layer {k} slot {i} has a zero coefficient"
                        )));
                    }
                    reduced(sigma, "coefficient")?;
                }
            }
        }
        if post.rows().len() != n {
            return Err(Error::MalformedPlan(format!(
                "post matrix has {} rows, expected {n}",
                post.rows().len()
            )));
        }
        for (r, row) in post.rows().iter().enumerate() {
            for &(c, x) in row {
                if c >= n {
                    return Err(Error::MalformedPlan(format!(
                        "post row {r} reads column {c}, outside 0..{n}"
                    )));
                }
                reduced(x, "post coefficient")?;
            }
        }
        Ok(FastPlan { spec, layers, post })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn post(&self) -> &PostMatrix {
        &self.post
    }

    /// `post · L_k ⋯ L_1` as a dense matrix.
    pub fn compose(&self) -> Matrix {
        let ctx = self.spec.ctx();
        let mut acc = self.post.to_dense(self.n());
        for layer in self.layers.iter().rev() {
            acc = acc
                .mul(&ctx, &layer.to_matrix(&ctx))
                .expect("layer dimensions are checked at construction");
        }
        acc
    }

    pub fn validate(&self) -> ValidationReport {
        let want = build_matrix(&self.spec).into_matrix();
        let got = self.compose();
        match want.first_difference(&got) {
            None => ValidationReport::Equal,
            Some((row, col)) => ValidationReport::Mismatch {
                row,
                col,
                expected: want[(row, col)],
                composed: got[(row, col)],
            },
        }
    }

    /// Runs the layers then the post-matrix. No validation, any GI(p) input.
    pub fn apply(&self, v: &[GaussInt]) -> Result<Vec<GaussInt>> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: v.len(),
            });
        }
        let ctx = self.spec.ctx();
        let mut x = v.to_vec();
        for layer in &self.layers {
            x = layer.apply(&ctx, &x);
        }
        Ok(self.post.apply(&ctx, &x))
    }

    /// Like [`FastPlan::apply`] but requires real input (the setting the cost
    /// model assumes) and a plan that validates against the transform matrix.
    pub fn apply_strict(&self, v: &[GaussInt]) -> Result<Vec<GaussInt>> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: v.len(),
            });
        }
        if let Some((index, x)) = v.iter().enumerate().find(|(_, x)| !x.is_real()) {
            return Err(Error::NonRealInput {
                index,
                value: x.to_string(),
            });
        }
        if let ValidationReport::Mismatch { row, col, .. } = self.validate() {
            return Err(Error::UnvalidatedPlan { row, col });
        }
        self.apply(v)
    }

    /// Copy of the plan with one post coefficient replaced (zero removes it).
    /// Mostly useful for fault injection in tests.
    pub fn with_post_entry(&self, row: usize, col: usize, value: GaussInt) -> Result<FastPlan> {
        let mut dense = self.post.to_dense(self.n());
        if row >= self.n() || col >= self.n() {
            return Err(Error::MalformedPlan(format!(
                "post entry ({row}, {col}) out of range"
            )));
        }
        dense[(row, col)] = value;
        FastPlan::new(
            self.spec,
            self.layers.clone(),
            PostMatrix::from_dense(&dense),
        )
    }

    /// The zero-layer plan whose post-matrix is the dense transform matrix.
    pub fn dense(spec: &KernelSpec) -> FastPlan {
        let t = build_matrix(spec).into_matrix();
        FastPlan {
            spec: *spec,
            layers: Vec::new(),
            post: PostMatrix::from_dense(&t),
        }
    }
}
