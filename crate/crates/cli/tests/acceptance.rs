//! Acceptance run: one PASS/FAIL line per criterion, with wall time against its limit.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gkz_hodge_core::gkz::{build_as, duality_data, duality_well_defined, kernel_fl_cross_check, FiberContext};
use gkz_hodge_core::groebner::{bernstein_exponent, buchberger, lift_exists_exact, lift_filtered, LiftOutcome};
use gkz_hodge_core::homological::{
    default_box, duality_strictness, euler_koszul_regularity, local_cohomology_scan, DEFAULT_KOSZUL_BOUND,
    DEFAULT_STRICTNESS_BOUND,
};
use gkz_hodge_core::linalg::IntMatrix;
use gkz_hodge_core::toric::homogenize;
use gkz_hodge_core::weyl::{
    filtration_degree, is_pure, parse_element, q, FiltrationSpec, Monomial, Sig, Signature, TermOrder, WeylElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (usize, Duration, fn() -> Outcome);

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn desk() -> Vec<IntMatrix> {
    vec![m(&[&[1, 1], &[0, 1]]), m(&[&[1, 1, 1], &[0, 1, 2]])]
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gkz-hodge")).arg("--json").args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gorenstein_examples() -> Outcome {
    let v = cli(&["toric", &data("ex1.json")])?;
    let r = &v["result"];
    check(r["c"] == json!([2, 1, 1]), format!("ex1: c = {}", r["c"]))?;
    // (1,0,0) + (1,1,1) and (1,1,0) + (1,0,1).
    let mut sets: Vec<Value> = r["cprime_decompositions"]
        .as_array()
        .ok_or("no c' decompositions")?
        .iter()
        .filter(|d| d["cprime"] == json!([2, 1, 1]))
        .map(|d| d["k"].clone())
        .collect();
    sets.sort_by_key(|k| k.to_string());
    check(sets == vec![json!([0, 1, 1, 0]), json!([1, 0, 0, 1])], format!("ex1: representations {sets:?}"))?;
    let v = cli(&["toric", &data("ex2.txt")])?;
    let r = &v["result"];
    check(r["c"] == json!([0, 1]) && r["cprime"] == json!([1, 1]), format!("ex2: c = {}, c' = {}", r["c"], r["cprime"]))?;
    Ok("c = (2,1,1) with both representations; c = (0,1), c' = (1,1)".into())
}

fn bernstein_property() -> Outcome {
    let mats = [
        m(&[&[1, 2, -1, -2], &[0, 1, 0, 1]]),
        m(&[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]),
        m(&[&[1, 1, 1], &[0, 1, 2]]),
        homogenize(&m(&[&[1, 1], &[0, 1]])),
    ];
    let mut found = Vec::new();
    for b in &mats {
        let start = Instant::now();
        let r = bernstein_exponent(b, 8).map_err(|e| format!("{b:?}: {e}"))?;
        let mm = r.m.ok_or_else(|| format!("{b:?}: no exponent within the bound"))?;
        check(r.cprime.iter().any(|&x| x != 0), format!("{b:?}: c' = 0"))?;
        check(mm <= b.rows(), format!("{b:?}: m = {mm} > r"))?;
        let expected = if mm == 0 { vec![(0, true)] } else { vec![(mm - 1, false), (mm, true)] };
        check(r.power_checks == expected, format!("{b:?}: power checks {:?}", r.power_checks))?;
        check(start.elapsed() < Duration::from_secs(30), format!("{b:?}: {:?}", start.elapsed()))?;
        found.push(mm);
    }
    Ok(format!("m = {found:?} on {} matrices, E^m in and E^(m-1) out", mats.len()))
}

const NAMES: [&str; 3] = ["t", "u", "v"];

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, k: i32) -> Option<Monomial> {
    let mut x = vec![0i32; n];
    let mut d = vec![0i32; n];
    if k >= 0 {
        x[0] = k;
    } else {
        d[0] = -k;
    }
    for _ in 0..rng.gen_range(0..=3 - k.abs()) {
        let i = rng.gen_range(0..n);
        if i == 0 {
            if x.iter().chain(&d).sum::<i32>() + 2 <= 3 {
                x[0] += 1;
                d[0] += 1;
            }
        } else if rng.gen_bool(0.5) {
            x[i] += 1;
        } else {
            d[i] += 1;
        }
    }
    (x.iter().chain(&d).sum::<i32>() <= 3).then(|| Monomial::from_parts(&x, &d, &[]))
}

fn random_pure(rng: &mut ChaCha8Rng, s: &Sig) -> WeylElement {
    loop {
        let k = rng.gen_range(-1..=1);
        let mut p = WeylElement::zero(s);
        for _ in 0..rng.gen_range(1..=3) {
            if let Some(mono) = random_monomial(rng, s.nvars(), k) {
                p = &p + &WeylElement::monomial(s, mono, q([-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)]));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn groebner_purity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut sizes = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let s = Signature::new(&NAMES[..n]).unwrap().with_marked("t").unwrap().into_arc();
        let gens: Vec<WeylElement> = (0..rng.gen_range(1..=3)).map(|_| random_pure(&mut rng, &s)).collect();
        check(gens.iter().all(|g| is_pure(g) == Some(true)), format!("case {case}: impure input"))?;
        let gb = buchberger(&gens, &TermOrder::WeylStd).map_err(|e| format!("case {case}: {e}"))?;
        check(gb.generators.iter().all(|g| is_pure(g) == Some(true)), format!("case {case}: impure basis element"))?;
        check(gb.verify_s_pair_criterion().map_err(|e| e.to_string())?, format!("case {case}: S-pair does not reduce"))?;
        sizes += gb.len();
    }
    Ok(format!("100 sets, {sizes} basis elements, all pure, S-pairs reduce to 0"))
}

fn non_pure_counterexample() -> Outcome {
    let s = Signature::new(&["w"]).unwrap().with_marked("w").unwrap().into_arc();
    let gb = buchberger(&[parse_element(&s, "w^2*d_w - 1").unwrap()], &TermOrder::WeylStd).map_err(|e| e.to_string())?;
    let one = WeylElement::one(&s);
    let q_elem = parse_element(&s, "w^2*d_w").unwrap();
    let v = filtration_degree(&q_elem, &FiltrationSpec::VAlong(0)).map_err(|e| e.to_string())?;
    check(v.degree >= 1, "w^2 d_w is not in V^1")?;
    check(gb.contains(&(&q_elem - &one)).map_err(|e| e.to_string())?, "1 and w^2 d_w differ in M")?;
    check(one.order() == Some(0), "1 is not in F_0")?;
    check(lift_exists_exact(&one, 1, &gb) == Some(false), "a lift into V^1 ∩ F_0 exists")?;
    let (outcome, _) = lift_filtered(&one, &q_elem, 1, &gb).map_err(|e| e.to_string())?;
    check(matches!(outcome, LiftOutcome::Stuck { .. }), format!("lift outcome {outcome:?}"))?;
    Ok("[1] in V^1_ind ∩ F_0 but not in the image of V^1 ∩ F_0".into())
}

fn euler_koszul() -> Outcome {
    let mut notes = Vec::new();
    for a in desk() {
        let r = euler_koszul_regularity(&a, 0, DEFAULT_KOSZUL_BOUND).map_err(|e| e.to_string())?;
        check(r.koszul.all_complexes, format!("{a:?}: d^2 != 0"))?;
        check(r.koszul.positive_homology_vanishes, format!("{a:?}: positive Koszul homology"))?;
        check(r.h0_mismatches.is_empty(), format!("{a:?}: H_0 mismatches {:?}", r.h0_mismatches))?;
        notes.push(r.degrees_compared);
    }
    Ok(format!("H_i = 0 for i > 0, H_0 matches normal-form counts in {notes:?} degrees"))
}

fn duality_and_strictness() -> Outcome {
    for a in desk() {
        let at = homogenize(&a);
        let d = duality_data(&at, None).map_err(|e| e.to_string())?;
        check(d.certificate.pairings.iter().all(|&p| p == 1), format!("{a:?}: pairings {:?}", d.certificate.pairings))?;
        check(duality_well_defined(&at, &d).map_err(|e| e.to_string())?.well_defined, format!("{a:?}: not well defined"))?;
        let s = duality_strictness(&at, &d, DEFAULT_STRICTNESS_BOUND).map_err(|e| e.to_string())?;
        check(s.filtered && s.strict, format!("{a:?}: {} strictness failures", s.failures.len()))?;
    }
    let fiber = m(&[&[1, 1, 1, 1], &[0, 1, -1, 0], &[0, 0, 1, 1]]);
    let d = duality_data(&fiber, Some(FiberContext { k: 1, l: 1, m: 2 })).map_err(|e| e.to_string())?;
    check(d.c_tilde == vec![2, 0, 1] && d.fiber_form_matches == Some(true), format!("fiber form {:?}", d.c_tilde))?;
    Ok("facet certificates, well-defined and strict up to the bound; c̃ = (l+1, 0, 1)".into())
}

/// The exact clause is expected to fail: off the hyperplane `x_2 = 0` the
/// scan finds degrees in `S \ S⁻` with nonzero `H^1` (for `A = [[1]]`, the
/// degree `(-1, 1, 0)`), confirmed by an independent Čech complex. The
/// negative-degree clause is asserted separately.
fn ishida_classification() -> (Outcome, bool) {
    let mut mismatches = Vec::new();
    let mut negative = true;
    for a in [m(&[&[1]]), m(&[&[1, 1], &[0, 1]])] {
        let a_s = match build_as(&a) {
            Ok(x) => x,
            Err(e) => return (Err(e.to_string()), false),
        };
        let (lo, hi) = default_box(&a_s);
        let r = match local_cohomology_scan(&a_s, lo, hi) {
            Ok(r) => r,
            Err(e) => return (Err(e.to_string()), false),
        };
        negative &= r.strictly_negative && r.ishida.negative_degree && r.ishida.all_complexes && r.ishida.cech_agrees;
        mismatches.push((r.ishida.mismatches.len(), r.ishida.hyperplane_mismatches, r.ishida.degrees_scanned));
    }
    let exact = mismatches.iter().all(|&(all, _, _)| all == 0);
    let detail = format!(
        "(mismatches, on the hyperplane, scanned) = {mismatches:?}; nonzero degrees strictly negative: {negative}"
    );
    (if exact { Ok(detail) } else { Err(detail) }, negative)
}

fn cross_presentation() -> Outcome {
    let mut checked = 0;
    for a in desk() {
        for u in 0..=a.cols() {
            let (same, _, _) = kernel_fl_cross_check(&a, u).map_err(|e| e.to_string())?;
            check(same, format!("{a:?}, u = {u}: ideals differ"))?;
            checked += 1;
        }
    }
    Ok(format!("mutual reduction to 0 in {checked} charts"))
}

fn shift_ledger() -> Outcome {
    // (file, homogenized, d, n, c_0) from the facet normals by hand:
    // [[1]]: normals (1,-1), (0,1), c̃ = (2,1).
    // [[1,1],[0,1]]: normals (1,-1,0), (0,1,-1), (0,0,1), c̃ = (3,2,1).
    // [[1,1,1],[0,1,2]]: normals (1,-1,0), (0,0,1), (0,2,-1), c̃ = (2,1,1).
    // fiber: c̃ = (l+1, 0, 1) = (2,0,1) with four columns.
    let cases = [
        ("segment.json", false, 1, 1, 2),
        ("square.json", false, 2, 2, 3),
        ("cubic.json", false, 2, 3, 2),
        ("fiber.json", true, 2, 3, 2),
    ];
    for (file, homogenized, d, n, c0) in cases {
        let path = data(file);
        let mut args = vec!["verify-hodge", path.as_str()];
        if homogenized {
            args.push("--homogenized");
        }
        let v = cli(&args)?;
        let shifts: Vec<i64> = v["shift_ledger"].as_array().ok_or("no ledger")?.iter().filter_map(|e| e["shift"].as_i64()).collect();
        check(shifts == vec![d, c0 + n], format!("{file}: ledger {shifts:?}, expected [{d}, {}]", c0 + n))?;
        check(v["verdicts"]["shift_ledger"] == json!(true), format!("{file}: ledger verdict"))?;
    }
    Ok("d and c_0 + n on four examples".into())
}

fn report(n: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let ok = out.is_ok() && took <= limit;
    let status = if ok { "PASS" } else { "FAIL" };
    let detail = match out {
        Ok(s) if took <= limit => s,
        Ok(s) => format!("{s}; over the {limit:?} limit"),
        Err(e) => e,
    };
    println!("criterion {n}: {status} ({:.2}s / {:?}) {detail}", took.as_secs_f64(), limit);
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut failed = Vec::new();
    let runs: [Criterion; 5] = [
        (1, secs(1), gorenstein_examples),
        (2, secs(4 * 30), bernstein_property),
        (3, secs(120), groebner_purity),
        (4, secs(10), non_pure_counterexample),
        (5, secs(120), euler_koszul),
    ];
    for (n, limit, f) in runs {
        if !report(n, limit, f) {
            failed.push(n);
        }
    }
    if !report(6, secs(120), duality_and_strictness) {
        failed.push(6);
    }
    let start = Instant::now();
    let (exact, negative) = ishida_classification();
    let took = start.elapsed();
    let status = if exact.is_ok() && took <= secs(180) { "PASS" } else { "FAIL" };
    let detail = exact.unwrap_or_else(|e| e);
    println!("criterion 7: {status} ({:.2}s / 180s) {detail}", took.as_secs_f64());
    if status == "FAIL" {
        println!(
            "  expected: the exact classification fails off the hyperplane x_2 = 0, where a local cohomology \
             module of height one is nonzero below degree d + 1; the negative-degree clause is checked separately"
        );
    }
    if !negative || took > secs(180) {
        failed.push(7);
    }
    for (n, limit, f) in [(8, secs(120), cross_presentation as fn() -> Outcome), (9, secs(60), shift_ledger)] {
        if !report(n, limit, f) {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {failed:?}");
        ExitCode::FAILURE
    }
}
