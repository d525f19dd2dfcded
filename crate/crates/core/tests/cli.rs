//! The binary must print exactly what the library computes.

use std::path::PathBuf;
use std::process::Command;

use ffht::cli::{format_matrix, format_signal, format_trig_table, parse_inline};
use ffht::{
    builtin_plan, count_ops_with, derive, emit_report, forward, inverse, serialize_plan, CostMode,
    DeriveOptions, KernelSpec, ReportFormat, Strategy, BUILTIN_NAMES,
};

fn ffht(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ffht"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = ffht(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffht-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn transforms() {
    for (p, z, input) in [
        (7, "j", "1,2,3,4"),
        (7, "2+2j", "1,2+j,0,5j,6,1,1,3"),
        (31, "7+13j", "0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15"),
    ] {
        let spec = KernelSpec::parse(p, z).unwrap();
        let table = spec.cas_table();
        let v = parse_inline(&spec.ctx(), input).unwrap();
        let ps = p.to_string();
        let fwd = forward(&table, &v).unwrap();
        assert_eq!(
            ok(&["transform", "--p", &ps, "--zeta", z, "--input", input]),
            format_signal(&fwd)
        );
        let inv = inverse(&table, &v).unwrap();
        assert_eq!(
            ok(&[
                "transform",
                "--p",
                &ps,
                "--zeta",
                z,
                "--inverse",
                "--input",
                input
            ]),
            format_signal(&inv)
        );
    }
}

#[test]
fn fast_transforms() {
    for name in BUILTIN_NAMES {
        let plan = builtin_plan(name).unwrap();
        let ctx = plan.spec().ctx();
        let v: Vec<_> = (0..plan.n() as i64).map(|i| ctx.real(3 * i + 1)).collect();
        let input: Vec<String> = v.iter().map(ToString::to_string).collect();
        let input = input.join(",");
        let want = format_signal(&plan.apply_strict(&v).unwrap());
        assert_eq!(
            ok(&["transform", "--fast", "--builtin", name, "--input", &input]),
            want
        );

        let path = scratch(&format!("{name}.ffhtplan"));
        std::fs::write(&path, serialize_plan(&plan)).unwrap();
        let signal = scratch(&format!("{name}.txt"));
        std::fs::write(&signal, format!("# signal\n{}", format_signal(&v))).unwrap();
        let args = [
            "transform",
            "--fast",
            "--plan-file",
            path.to_str().unwrap(),
            "--input-file",
            signal.to_str().unwrap(),
        ];
        assert_eq!(ok(&args), want);
    }
}

#[test]
fn matrices_and_tables() {
    for (p, z) in [(7, "j"), (7, "3"), (7, "3j"), (31, "7+13j")] {
        let spec = KernelSpec::parse(p, z).unwrap();
        let ps = p.to_string();
        assert_eq!(
            ok(&["matrix", "--p", &ps, "--zeta", z]),
            format_matrix(&spec, false)
        );
        assert_eq!(
            ok(&["matrix", "--p", &ps, "--zeta", z, "--format", "csv"]),
            format_matrix(&spec, true)
        );
        assert_eq!(
            ok(&["table", "--p", &ps, "--zeta", z]),
            format_trig_table(&spec, false)
        );
        assert_eq!(
            ok(&["table", "--p", &ps, "--zeta", z, "--format", "csv"]),
            format_trig_table(&spec, true)
        );
    }
}

#[test]
fn plan_commands() {
    for name in BUILTIN_NAMES {
        let plan = builtin_plan(name).unwrap();
        assert_eq!(
            ok(&["plan", "show", "--builtin", name]),
            serialize_plan(&plan)
        );
        assert!(ok(&["plan", "validate", "--builtin", name]).starts_with("valid"));
        let strict = count_ops_with(&plan, CostMode::Strict).unwrap();
        assert_eq!(
            ok(&["plan", "count", "--builtin", name]),
            format!("{strict}\n")
        );
        let split = count_ops_with(&plan, CostMode::Split).unwrap();
        assert_eq!(
            ok(&["plan", "count", "--builtin", name, "--mode", "split"]),
            format!("{split}\n")
        );
    }
}

#[test]
fn broken_plan_fails_validation() {
    let plan = builtin_plan("n4_p7").unwrap();
    let ctx = plan.spec().ctx();
    let broken = plan.with_post_entry(0, 0, ctx.real(1)).unwrap();
    let path = scratch("broken.ffhtplan");
    std::fs::write(&path, serialize_plan(&broken)).unwrap();
    let (code, out, _) = ffht(&["plan", "validate", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("mismatch at (0, "), "{out}");
}

#[test]
fn derivation() {
    let spec = KernelSpec::parse(7, "3").unwrap();
    let opts = DeriveOptions {
        strategy: Strategy::Greedy,
        allow_scaling: true,
        ..DeriveOptions::default()
    };
    let d = derive(&spec, &opts).unwrap();
    let want = format!("{}# {}\n", serialize_plan(&d.plan), d.cost);
    assert_eq!(
        ok(&[
            "plan",
            "derive",
            "--p",
            "7",
            "--zeta",
            "3",
            "--allow-scaling"
        ]),
        want
    );

    let path = scratch("derived.ffhtplan");
    let out = ok(&[
        "plan",
        "derive",
        "--p",
        "7",
        "--zeta",
        "3",
        "--allow-scaling",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out, format!("{}\n", d.cost));
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        serialize_plan(&d.plan)
    );

    let (code, _, err) = ffht(&[
        "plan",
        "derive",
        "--p",
        "7",
        "--zeta",
        "3j",
        "--strategy",
        "exhaustive",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("SearchSpaceTooLarge"), "{err}");
}

#[test]
fn reports() {
    assert_eq!(
        ok(&["report"]),
        emit_report(ReportFormat::Markdown).unwrap()
    );
    assert_eq!(
        ok(&["report", "--format", "csv"]),
        emit_report(ReportFormat::Csv).unwrap()
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        ffht(&["transform", "--p", "7", "--zeta", "j", "--input", "1,2,3"]).0,
        1
    );
    assert_eq!(ffht(&["matrix", "--p", "9", "--zeta", "j"]).0, 1);
    assert_eq!(ffht(&["matrix", "--p", "7"]).0, 2);
    assert_eq!(ffht(&["nope"]).0, 2);
    let (code, out, _) = ffht(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("transform"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "plan",
        "derive",
        "--p",
        "31",
        "--zeta",
        "7+13j",
        "--allow-scaling",
    ];
    assert_eq!(ok(&args), ok(&args));
}
