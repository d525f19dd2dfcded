//! The `ffhtplan v1` text format.
//!
//! ```text
//! ffhtplan v1
//! field p=7 zeta=j n=4
//! layer 1
//! slot 0 = 1*s3 + 6*s1
//! slot 1 = pass 2
//! post
//! row 0: 1=1, 3=1
//! ```
//!
//! Whitespace inside a line is insignificant and `#` starts a comment.
//! [`serialize_plan`] emits the canonical form: single spaces as above, every
//! slot and row listed in order, post columns ascending.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, GaussInt};
use crate::plan::{FastPlan, Layer, Node, PostMatrix};
use crate::trig::KernelSpec;

const HEADER: &str = "ffhtplan v1";

pub fn serialize_plan(plan: &FastPlan) -> String {
    let spec = plan.spec();
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(
        out,
        "field p={} zeta={} n={}",
        spec.ctx().p(),
        spec.zeta(),
        spec.n()
    )
    .unwrap();
    for (k, layer) in plan.layers().iter().enumerate() {
        writeln!(out, "layer {}", k + 1).unwrap();
        for (i, node) in layer.nodes().iter().enumerate() {
            match *node {
                Node::Pass(s) => writeln!(out, "slot {i} = pass {s}").unwrap(),
                Node::Combine {
                    a,
                    sigma_a,
                    b,
                    sigma_b,
                } => writeln!(out, "slot {i} = {sigma_a}*s{a} + {sigma_b}*s{b}").unwrap(),
            }
        }
    }
    writeln!(out, "post").unwrap();
    for (r, row) in plan.post().rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|(c, x)| format!("{c}={x}")).collect();
        if cells.is_empty() {
            writeln!(out, "row {r}:").unwrap();
        } else {
            writeln!(out, "row {r}: {}", cells.join(", ")).unwrap();
        }
    }
    out
}

enum Section {
    Start,
    Field,
    Layer(usize),
    Post,
}

pub fn parse_plan(text: &str) -> Result<FastPlan> {
    let mut section = Section::Start;
    let mut spec: Option<KernelSpec> = None;
    let mut layers: Vec<Vec<Option<Node>>> = Vec::new();
    let mut rows: Vec<Option<Vec<(usize, GaussInt)>>> = Vec::new();
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let compact: String = content.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            continue;
        }
        let syntax = |msg: String| Error::PlanSyntax { line, msg };

        match section {
            Section::Start => {
                if compact != "ffhtplanv1" {
                    return Err(syntax(format!("expected header {HEADER:?}")));
                }
                section = Section::Field;
            }
            Section::Field => {
                let parsed = parse_field(&compact).map_err(syntax)?;
                let (p, zeta, n) = parsed;
                let ctx = FieldCtx::new(p)?;
                let zeta = ctx.parse(&zeta).map_err(|e| syntax(e.to_string()))?;
                let s = KernelSpec::with_order(ctx, zeta, n)?;
                rows = vec![None; s.n()];
                spec = Some(s);
                section = Section::Layer(0);
            }
            Section::Layer(_) | Section::Post if compact.starts_with("layer") => {
                if matches!(section, Section::Post) {
                    return Err(syntax("layer block after post block".into()));
                }
                let k = parse_index(&compact["layer".len()..])
                    .ok_or_else(|| syntax("expected `layer <k>`".into()))?;
                if k != layers.len() + 1 {
                    return Err(syntax(format!(
                        "expected layer {}, got layer {k}",
                        layers.len() + 1
                    )));
                }
                let n = spec.as_ref().map_or(0, KernelSpec::n);
                layers.push(vec![None; n]);
                section = Section::Layer(k);
            }
            Section::Layer(_) if compact == "post" => {
                section = Section::Post;
            }
            Section::Layer(k) => {
                let ctx = spec.as_ref().map(KernelSpec::ctx).expect("field parsed");
                if k == 0 {
                    return Err(syntax("expected `layer 1` or `post`".into()));
                }
                let (slot, node) = parse_slot(&ctx, &compact).map_err(syntax)?;
                let layer = layers.last_mut().expect("layer opened");
                let cell = layer
                    .get_mut(slot)
                    .ok_or_else(|| syntax(format!("slot {slot} out of range")))?;
                if cell.is_some() {
                    return Err(syntax(format!("slot {slot} defined twice in layer {k}")));
                }
                *cell = Some(node);
            }
            Section::Post => {
                let ctx = spec.as_ref().map(KernelSpec::ctx).expect("field parsed");
                let (r, entries) = parse_row(&ctx, &compact).map_err(syntax)?;
                let cell = rows
                    .get_mut(r)
                    .ok_or_else(|| syntax(format!("row {r} out of range")))?;
                if cell.is_some() {
                    return Err(syntax(format!("row {r} defined twice")));
                }
                *cell = Some(entries);
            }
        }
    }

    let eof = |msg: &str| Error::PlanSyntax {
        line: last_line,
        msg: msg.to_string(),
    };
    let spec = match section {
        Section::Post => spec.expect("field parsed"),
        Section::Start | Section::Field => return Err(eof("missing header or field line")),
        Section::Layer(_) => return Err(eof("missing post block")),
    };
    let layers = layers
        .into_iter()
        .enumerate()
        .map(|(k, slots)| {
            slots
                .into_iter()
                .enumerate()
                .map(|(i, node)| {
                    node.ok_or_else(|| {
                        Error::MalformedPlan(format!("layer {} does not define slot {i}", k + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Layer::new)
        })
        .collect::<Result<Vec<_>>>()?;
    let post = PostMatrix::new(rows.into_iter().map(Option::unwrap_or_default).collect())?;
    FastPlan::new(spec, layers, post)
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_field(s: &str) -> std::result::Result<(u64, String, u64), String> {
    let err = || "expected `field p=<p> zeta=<element> n=<N>`".to_string();
    let rest = s.strip_prefix("fieldp=").ok_or_else(err)?;
    let (p, rest) = rest.split_once("zeta=").ok_or_else(err)?;
    let (zeta, n) = rest.split_once("n=").ok_or_else(err)?;
    let p = parse_index(p).ok_or_else(err)? as u64;
    let n = parse_index(n).ok_or_else(err)? as u64;
    Ok((p, zeta.to_string(), n))
}

fn parse_slot(ctx: &FieldCtx, s: &str) -> std::result::Result<(usize, Node), String> {
    let err = || "expected `slot <i> = pass <s>` or `slot <i> = <a>*s<i> + <b>*s<j>`".to_string();
    let rest = s.strip_prefix("slot").ok_or_else(err)?;
    let (slot, rhs) = rest.split_once('=').ok_or_else(err)?;
    let slot = parse_index(slot).ok_or_else(err)?;
    if let Some(src) = rhs.strip_prefix("pass") {
        return Ok((slot, Node::Pass(parse_index(src).ok_or_else(err)?)));
    }
    let (sa, rest) = rhs.split_once("*s").ok_or_else(err)?;
    let (a, rest) = rest.split_once('+').ok_or_else(err)?;
    let (sb, b) = rest.split_once("*s").ok_or_else(err)?;
    let elem = |t: &str| ctx.parse(t).map_err(|e| e.to_string());
    Ok((
        slot,
        Node::Combine {
            a: parse_index(a).ok_or_else(err)?,
            sigma_a: elem(sa)?,
            b: parse_index(b).ok_or_else(err)?,
            sigma_b: elem(sb)?,
        },
    ))
}

type Row = (usize, Vec<(usize, GaussInt)>);

fn parse_row(ctx: &FieldCtx, s: &str) -> std::result::Result<Row, String> {
    let err = || "expected `row <r>: <col>=<coeff>, ...`".to_string();
    let rest = s.strip_prefix("row").ok_or_else(err)?;
    let (r, cells) = rest.split_once(':').ok_or_else(err)?;
    let r = parse_index(r).ok_or_else(err)?;
    let mut entries = Vec::new();
    for cell in cells.split(',').filter(|c| !c.is_empty()) {
        let (c, x) = cell.split_once('=').ok_or_else(err)?;
        let c = parse_index(c).ok_or_else(err)?;
        let x = ctx.parse(x).map_err(|e| e.to_string())?;
        entries.push((c, x));
    }
    Ok((r, entries))
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::decompose::{apply_pairing, PairingStep};
    use crate::transform::build_matrix;
    use proptest::prelude::*;

    // Random layer stacks over GI(7), N = 8. Structural validity is all the
    // format needs; the plans need not compute the transform.
    fn arb_plan() -> impl Strategy<Value = FastPlan> {
        let node = prop_oneof![
            (0usize..8).prop_map(Node::Pass),
            (0usize..8, 1i64..49, 0usize..8, 1i64..49).prop_map(|(a, x, b, y)| {
                let ctx = FieldCtx::new(7).unwrap();
                let e = |v: i64| {
                    let g = ctx.elem(v / 7, v % 7);
                    if g.is_zero() {
                        GaussInt::ONE
                    } else {
                        g
                    }
                };
                Node::Combine {
                    a,
                    sigma_a: e(x),
                    b,
                    sigma_b: e(y),
                }
            })
        ];
        let layer = prop::collection::vec(node, 8).prop_map(Layer::new);
        let row = prop::collection::btree_map(0usize..8, (0i64..7, 0i64..7), 0..5);
        (
            prop::collection::vec(layer, 0..4),
            prop::collection::vec(row, 8),
        )
            .prop_map(|(layers, rows)| {
                let spec = KernelSpec::parse(7, "2+2j").unwrap();
                let ctx = spec.ctx();
                let rows = rows
                    .into_iter()
                    .map(|m| {
                        m.into_iter()
                            .map(|(c, (a, b))| (c, ctx.elem(a, b)))
                            .filter(|(_, x)| !x.is_zero())
                            .collect()
                    })
                    .collect();
                FastPlan::new(spec, layers, PostMatrix::new(rows).unwrap()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(plan in arb_plan()) {
            let text = serialize_plan(&plan);
            let back = parse_plan(&text).unwrap();
            prop_assert_eq!(&back, &plan);
            prop_assert_eq!(serialize_plan(&back), text);
        }

        #[test]
        fn pairing_plans_round_trip(a in 0usize..4, b in 4usize..8) {
            let spec = KernelSpec::parse(7, "2+2j").unwrap();
            let t = build_matrix(&spec).into_matrix();
            let step = PairingStep::new(a, b, GaussInt::ONE);
            let (m, layer) = apply_pairing(&spec.ctx(), &t, &[step]).unwrap();
            let plan = FastPlan::new(spec, vec![layer], PostMatrix::from_dense(&m)).unwrap();
            prop_assert!(plan.validate().is_equal());
            prop_assert_eq!(parse_plan(&serialize_plan(&plan)).unwrap(), plan);
        }
    }
}
