use ffht::{
    builtin_plan, forward, inverse, parse_plan, serialize_plan, FastPlan, GaussInt, KernelSpec,
    BUILTIN_NAMES,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPECS: [(u64, &str); 6] = [
    (7, "j"),
    (7, "3"),
    (7, "2+2j"),
    (7, "3j"),
    (7, "2+4j"),
    (31, "7+13j"),
];

fn random_signal(spec: &KernelSpec, rng: &mut impl Rng, real: bool) -> Vec<GaussInt> {
    let ctx = spec.ctx();
    let p = ctx.p() as i64;
    (0..spec.n())
        .map(|_| {
            let im = if real { 0 } else { rng.gen_range(0..p) };
            ctx.elem(rng.gen_range(0..p), im)
        })
        .collect()
}

#[test]
fn inverse_undoes_forward() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, z) in SPECS {
        let spec = KernelSpec::parse(p, z).unwrap();
        let table = spec.cas_table();
        for _ in 0..200 {
            let v = random_signal(&spec, &mut rng, false);
            assert_eq!(
                inverse(&table, &forward(&table, &v).unwrap()).unwrap(),
                v,
                "zeta {z}"
            );
        }
    }
}

#[test]
fn builtin_plans_match_the_dense_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for name in BUILTIN_NAMES {
        let plan = builtin_plan(name).unwrap();
        let table = plan.spec().cas_table();
        for _ in 0..500 {
            let v = random_signal(plan.spec(), &mut rng, true);
            let fast = plan.apply_strict(&v).unwrap();
            assert_eq!(fast, forward(&table, &v).unwrap(), "{name}");
        }
    }
}

#[test]
fn builtin_plan_text_round_trips() {
    for name in BUILTIN_NAMES {
        let plan = builtin_plan(name).unwrap();
        let text = serialize_plan(&plan);
        let again = parse_plan(&text).unwrap();
        assert_eq!(again, plan);
        assert_eq!(serialize_plan(&again), text);
    }
}

#[test]
fn dense_plans_validate() {
    for (p, z) in SPECS {
        let spec = KernelSpec::parse(p, z).unwrap();
        assert!(FastPlan::dense(&spec).validate().is_equal());
    }
}

/// A kernel, two signals and two scalars, as raw `(re, im)` pairs.
type Case = (
    KernelSpec,
    Vec<(i64, i64)>,
    Vec<(i64, i64)>,
    (i64, i64),
    (i64, i64),
);

fn spec_and_signals() -> impl Strategy<Value = Case> {
    (0..SPECS.len()).prop_flat_map(|i| {
        let (p, z) = SPECS[i];
        let spec = KernelSpec::parse(p, z).unwrap();
        let q = p as i64;
        let elem = (0..q, 0..q);
        let sig = prop::collection::vec(elem.clone(), spec.n());
        (Just(spec), sig.clone(), sig, elem.clone(), elem)
    })
}

proptest! {
    #[test]
    fn forward_is_linear((spec, u, v, a, b) in spec_and_signals()) {
        let ctx = spec.ctx();
        let table = spec.cas_table();
        let lift = |xs: &[(i64, i64)]| xs.iter().map(|&(re, im)| ctx.elem(re, im)).collect::<Vec<_>>();
        let (u, v) = (lift(&u), lift(&v));
        let (a, b) = (ctx.elem(a.0, a.1), ctx.elem(b.0, b.1));
        let mixed: Vec<_> = u.iter().zip(&v).map(|(&x, &y)| ctx.add(ctx.mul(a, x), ctx.mul(b, y))).collect();
        let fu = forward(&table, &u).unwrap();
        let fv = forward(&table, &v).unwrap();
        let want: Vec<_> = fu.iter().zip(&fv).map(|(&x, &y)| ctx.add(ctx.mul(a, x), ctx.mul(b, y))).collect();
        prop_assert_eq!(forward(&table, &mixed).unwrap(), want);
    }

    #[test]
    fn forward_twice_scales_by_n((spec, u, _v, _a, _b) in spec_and_signals()) {
        let ctx = spec.ctx();
        let table = spec.cas_table();
        let u: Vec<_> = u.iter().map(|&(re, im)| ctx.elem(re, im)).collect();
        let twice = forward(&table, &forward(&table, &u).unwrap()).unwrap();
        let want: Vec<_> = u.iter().map(|&x| ctx.mul(spec.n_mod_p(), x)).collect();
        prop_assert_eq!(twice, want);
    }
}
