use wmin_cli::{parse_series, run, GramReport, RangeJson};
use wmin_core::levels::LevelData;
use wmin_core::unitarity::{Outcome, UnitarityVerdict};

fn wmin(args: &str) -> wmin_cli::Outcome {
    run(std::iter::once("wmin").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let o = wmin(args);
    assert_eq!(o.code, 0, "{args}: {}", o.stderr);
    o.stdout
}

#[test]
fn check_psl22_table() {
    let out = ok("check --g psl22 --k -3 --nu-r 1 --l0 1/2");
    assert!(out.contains("outcome: UnitaryNonExtremal\n"), "{out}");
    assert!(out.contains("A: 1/2\n"));
    assert!(out.contains("M_1: 2\n"));
}

#[test]
fn range_f4() {
    assert_eq!(ok("range --g F4 --count 3"), "-4/3\n-2\n-8/3\n");
    let j: RangeJson = serde_json::from_str(&ok("range --g F4 --count 3 --format json")).unwrap();
    assert_eq!(j.k, vec!["-4/3", "-2", "-8/3"]);
}

#[test]
fn char_massless_leading_record() {
    let out = ok("char --g psl22 --M1 1 --r 1 --massless --qmax 4 --depth 8 --format json");
    let recs = parse_series(&out).unwrap();
    assert_eq!(recs[0].q.to_string(), "1/2");
    let w: Vec<String> = recs[0].weight.iter().map(ToString::to_string).collect();
    assert_eq!(w, ["0", "0", "1/2", "-1/2"]);
    assert_eq!(recs[0].coeff, 1);
    // Re-serializing gives the same bytes.
    let again = serde_json::to_string_pretty(&recs).unwrap() + "\n";
    assert_eq!(again, out);
}

#[test]
fn char_picks_massive_above_a() {
    let massive = ok("char --g psl22 --k -3 --nu-r 1 --l0 1 --qmax 3 --depth 4 --format json");
    let recs = parse_series(&massive).unwrap();
    assert_eq!(recs[0].q.to_string(), "1");
    let below = wmin("char --g psl22 --k -3 --nu-r 1 --l0 1/4 --qmax 3");
    assert_eq!(below.code, 1);
    assert!(below.stderr.contains("PreconditionViolated"));
    let wrong = wmin("char --g psl22 --k -3 --nu-r 1 --l0 1 --massless --qmax 3");
    assert_eq!(wrong.code, 1);
}

#[test]
fn verdict_json_round_trip() {
    for args in [
        "check --g psl22 --k -2 --nu-r 1 --l0 1/2 --format json",
        "check --g spo2m --m 3 --k -3/4 --l0 0 --format json",
        "check --g sl2m --m 4 --k -2 --l0 0 --format json",
        "check --g G3 --k -3/2 --nu-coords 0,1,0 --l0 3 --format json",
    ] {
        let out = ok(args);
        let v: UnitarityVerdict = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out, "{args}");
    }
}

#[test]
fn extremal_boundary_conjectural() {
    // F(4) at M_1 = 1: ν = ε_1 has ν(θ^∨) = 1 = M_1, so it is extremal.
    let out = ok("check --g F4 --M1 1 --nu-coords 0,1,0,0 --l0 1/2 --format json");
    let v: UnitarityVerdict = serde_json::from_str(&out).unwrap();
    let a = v.quantities.a.unwrap();
    let out = ok(&format!("check --g F4 --M1 1 --nu-coords 0,1,0,0 --l0 {a}"));
    assert!(out.contains("conjecturally unitary (Conjecture 2)"), "{out}");
    assert!(matches!(
        serde_json::from_str::<UnitarityVerdict>(&ok(&format!("check --g F4 --M1 1 --nu-coords 0,1,0,0 --l0 {a} --format json")))
            .unwrap()
            .outcome,
        Outcome::ExtremalBoundary { proved: false }
    ));
}

#[test]
fn levels_json() {
    let d: LevelData = serde_json::from_str(&ok("levels --g psl22 --k -2 --format json")).unwrap();
    assert_eq!(d.c.to_string(), "6");
    let t = ok("levels --g D21a --a 1/2 --k -2/3");
    assert!(t.contains("collapsing: V_1(sl2)\n"), "{t}");
}

#[test]
fn info_and_scan() {
    let j: serde_json::Value = serde_json::from_str(&ok("info --g G3 --format json")).unwrap();
    assert_eq!(j["entry"]["h_vee"], "-3/2");
    assert!(ok("info --g osp4m --m 4").contains("Skipped"));
    let out = ok("scan-sign2 --g psl22 --k -3 --nu-r 1 --n-max 4 --m-max 4");
    assert!(out.contains("violations: 0\n"), "{out}");
}

#[test]
fn gram_passes() {
    let out = ok("gram --sigma 3/7 --mu 5/3 --e-max 6 --n-max 2 --exp-max 3");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{out}");
    let r: GramReport = serde_json::from_str(&ok(
        "gram --e-max 5 --n-max 1 --exp-max 2 --g psl22 --k -3 --nu-r 1 --l0 1 --format json",
    ))
    .unwrap();
    assert!(r.checks.iter().all(|c| c.pass));
    assert_eq!(r.norms[0], ("g_half_norm".to_string(), "3".to_string()));
    let w = wmin("gram --e-max 3 --n-max 3");
    assert_eq!(w.code, 1);
    assert!(w.stderr.contains("WindowTooSmall"));
}

#[test]
fn exit_codes() {
    for bad in [
        "check --g psl22 --k 0.5 --l0 1",
        "check --g nope --k -2 --l0 1",
        "range",
        "frobnicate",
        "check --g psl22 --k 1/0 --l0 1",
    ] {
        let o = wmin(bad);
        assert_eq!(o.code, 2, "{bad}");
        assert!(o.stdout.is_empty());
    }
    let o = wmin("levels --g psl22 --k 0");
    assert_eq!((o.code, o.stderr.as_str()), (1, "error: CriticalLevel: k = 0 equals -h^vee\n"));
    let o = wmin("levels --g spo2m --m 4 --k 1");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("ParameterOutOfRange"));
    let o = wmin("check --g psl22 --k -3 --nu-coords 1,2 --l0 1");
    assert!(o.code == 1 && o.stderr.contains("InvalidWeight"));
    assert_eq!(wmin("levels --g psl22").code, 2);
    assert_eq!(wmin("--help").code, 0);
}

#[test]
fn byte_identical_runs() {
    let args = "char --g G3 --k -3/2 --l0 2 --qmax 4 --depth 4 --format json";
    assert_eq!(ok(args), ok(args));
    let args = "check --g D21a --a 2/3 --k -6/5 --nu-r 1,0 --l0 1 --format json";
    assert_eq!(ok(args), ok(args));
}
