use std::error::Error;

use gkz_hodge_core::gkz::{
    build_as, build_as_u, build_chart_system, build_fl_gkz, build_gkz, build_graph_embedded, build_radon_kernel,
    build_rees_gkz, duality_data, duality_well_defined, euler_certificates, DualityData, FiberContext,
    SystemPresentation,
};
use gkz_hodge_core::groebner::{bernstein_exponent, buchberger, BernsteinError, GroebnerBasis};
use gkz_hodge_core::homological::{
    default_box, duality_strictness, euler_koszul_regularity, local_cohomology_scan, strictness_check,
    FilteredQuotient, Grading, HomologicalError, StrictnessReport,
};
use gkz_hodge_core::linalg::IntMatrix;
use gkz_hodge_core::toric::{check_saturation, cprime_decompositions, homogenize, semigroup_profile, SaturationVerdict};
use gkz_hodge_core::weyl::{filtration_degree, FiltrationSpec, TermOrder, WeylElement};
use serde_json::{json, Value};

use crate::input::{parse_operators, signature, InputError, MorphismFile, OperatorFile};
use crate::report::RunReport;

pub type CmdResult = Result<(), Box<dyn Error>>;

fn rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, Box<dyn Error>> {
    Ok(m.to_i64_rows()?)
}

fn literals(gens: &[WeylElement]) -> Vec<String> {
    gens.iter().map(ToString::to_string).collect()
}

pub fn toric(m: &IntMatrix, bound: u32, report: &mut RunReport) -> CmdResult {
    let profile = match semigroup_profile(m, bound) {
        Ok(p) => p,
        Err(e) => {
            // The cone profile needs ZB = Z^r; saturation is also decided on a sublattice.
            let verdict = check_saturation(m, bound).map_err(|_| e)?;
            report.verdict("saturated", !matches!(verdict, SaturationVerdict::Refuted { .. }));
            report.result = json!({ "saturation": verdict });
            return Ok(());
        }
    };
    let decompositions = match &profile.gorenstein {
        Some(g) => cprime_decompositions(m, &g.c)?,
        None => Vec::new(),
    };
    report.verdict("saturated", !matches!(profile.saturated, SaturationVerdict::Refuted { .. }));
    report.result = json!({
        "facet_normals": profile.cone.facet_normals,
        "group_part_rank": profile.cone.group_part_rank,
        "saturation": profile.saturated,
        "gorenstein": profile.gorenstein.is_some(),
        "c": profile.gorenstein.as_ref().map(|g| g.c.clone()),
        "gorenstein_certificate": profile.gorenstein,
        "cprime": profile.cprime.as_ref().map(|c| c.cprime.clone()),
        "cprime_decompositions": decompositions,
    });
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BuildKind {
    Gkz,
    Fl,
    Graph,
    Chart,
    Kernel,
    Rees,
    As,
}

pub fn build(kind: BuildKind, m: &IntMatrix, beta: Option<Vec<i64>>, chart: usize, report: &mut RunReport) -> CmdResult {
    let beta = beta.unwrap_or_else(|| vec![0; m.rows()]);
    let p = match kind {
        BuildKind::Gkz => build_gkz(m, &beta)?,
        BuildKind::Fl => build_fl_gkz(m, &beta)?,
        BuildKind::Graph => build_graph_embedded(m)?,
        BuildKind::Chart => build_chart_system(m, chart)?,
        BuildKind::Kernel => build_radon_kernel(m, chart)?,
        BuildKind::Rees => build_rees_gkz(m)?,
        BuildKind::As => {
            let a_s = build_as(m)?;
            let a_su = build_as_u(m, chart)?;
            report.result = json!({ "as": rows(&a_s)?, "chart": chart, "as_u": rows(&a_su)? });
            return Ok(());
        }
    };
    let (commute, _) = euler_certificates(&p)?;
    report.verdict("euler_operators_commute", commute);
    report.shift_ledger.extend(p.shift_ledger.iter().cloned());
    report.result = presentation_json(&p);
    Ok(())
}

fn presentation_json(p: &SystemPresentation) -> Value {
    json!({
        "variables": p.sig.vars(),
        "central": p.sig.central(),
        "flavor": p.flavor,
        "generators": p.literals(),
        "eulers": p.eulers,
        "total_shift": p.total_shift(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OrderName {
    Weyl,
    Grevlex,
}

pub fn groebner(text: &str, beta: Option<Vec<i64>>, order: OrderName, report: &mut RunReport) -> CmdResult {
    let gens = if crate::input::is_object_with(text, "generators") {
        let f: OperatorFile = serde_json::from_str(text)?;
        let sig = signature(&f.variables, f.marked.as_deref())?;
        parse_operators(&sig, &f.generators)?
    } else {
        let m = crate::input::parse_matrix(text)?;
        build_gkz(&m, &beta.unwrap_or_else(|| vec![0; m.rows()]))?.generators
    };
    let order = match order {
        OrderName::Weyl => TermOrder::WeylStd,
        OrderName::Grevlex => TermOrder::Grevlex,
    };
    let gb = buchberger(&gens, &order)?;
    report.verdict("s_pairs_reduce_to_zero", gb.verify_s_pair_criterion()?);
    let mut inputs_reduce = true;
    for g in &gens {
        inputs_reduce &= gb.contains(g)?;
    }
    report.verdict("generators_reduce_to_zero", inputs_reduce);
    report.result = json!({
        "variables": gb.sig.vars(),
        "size": gb.len(),
        "unit_ideal": gb.is_unit(),
        "pure_along_marked": gb.sig.marked().map(|_| gb.pure_flag),
        "basis": literals(&gb.generators),
        "stats": gb.stats,
    });
    Ok(())
}

pub fn bernstein(m: &IntMatrix, bound: usize, report: &mut RunReport) -> CmdResult {
    match bernstein_exponent(m, bound) {
        Ok(b) => {
            report.verdict("b_is_a_power", b.m.is_some());
            if let Some(mm) = b.m {
                report.verdict("m_at_most_rank", mm <= m.rows());
                let certified = b.power_checks.iter().all(|&(j, inside)| inside == (j == mm));
                report.verdict("membership_certificates", certified);
            }
            report.verdict("no_shifted_roots", b.shifted_checks.iter().all(|(_, inside)| !inside));
            report.result = json!({
                "m": b.m,
                "polynomial": b.polynomial.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "cprime": b.cprime,
                "bprime": rows(&b.bprime)?,
                "generators": b.generators,
                "initial_basis_size": b.initial_basis_size,
                "power_checks": b.power_checks,
                "shifted_checks": b.shifted_checks,
                "search_bound": b.search_bound,
            });
            Ok(())
        }
        Err(e @ (BernsteinError::NotGorenstein | BernsteinError::TrivialCPrime | BernsteinError::BoundExceeded { .. })) => {
            report.verdict("b_is_a_power", false);
            report.result = json!({ "error": e.to_string() });
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

pub fn ishida(a: &IntMatrix, bx: Option<(i64, i64)>, report: &mut RunReport) -> CmdResult {
    let a_s = build_as(a)?;
    let (lo, hi) = bx.unwrap_or_else(|| default_box(&a_s));
    let scan = local_cohomology_scan(&a_s, lo, hi)?;
    let ish = &scan.ishida;
    report.verdict("differentials_square_to_zero", ish.all_complexes);
    report.verdict("cech_cross_check", ish.cech_agrees);
    report.verdict("strictly_negative_degrees", scan.strictly_negative);
    report.verdict("hyperplane_classification", ish.hyperplane_mismatches == 0 && scan.hyperplane_agrees);
    report.verdict("projection_checks", scan.projection_checks.iter().all(|c| c.equal && c.classification_agrees));
    report.verdict("classification_exact", ish.matches_classification());
    let degree = |d: &gkz_hodge_core::homological::IshidaDegree| {
        json!({ "x": d.x, "cohomology": d.cohomology, "in_s": d.in_s, "in_s_minus": d.in_s_minus })
    };
    report.result = json!({
        "as": ish.a_s,
        "d": ish.d,
        "box": [lo, hi],
        "facet_normals": ish.facet_normals,
        "faces": ish.faces,
        "degrees_scanned": ish.degrees_scanned,
        "nonzero_count": ish.nonzero.len(),
        "mismatch_count": ish.mismatches.len(),
        "nonzero": ish.nonzero.iter().map(degree).collect::<Vec<_>>(),
        "mismatches": ish.mismatches.iter().map(degree).collect::<Vec<_>>(),
        "projection_checks": scan.projection_checks,
        "hyperplane_points": scan.hyperplane_points,
    });
    Ok(())
}

fn strictness_json(r: &StrictnessReport, report: &mut RunReport) -> Value {
    report.verdict("filtered", r.filtered);
    report.verdict("strict", r.strict);
    serde_json::to_value(r).expect("reports serialize")
}

pub fn strict(text: &str, bound: usize, report: &mut RunReport) -> CmdResult {
    if crate::input::is_object_with(text, "multiplier") {
        let f: MorphismFile = serde_json::from_str(text)?;
        let sig = signature(&f.variables, None)?;
        let src = FilteredQuotient::new(&parse_operators(&sig, &f.source)?, f.source_shift)?;
        let tgt = FilteredQuotient::new(&parse_operators(&sig, &f.target)?, f.target_shift)?;
        let r = parse_operators(&sig, std::slice::from_ref(&f.multiplier))?.remove(0);
        match strictness_check(&src, &tgt, &r, &Grading::new(f.grading)?, bound) {
            Ok(rep) => {
                report.verdict("well_defined", true);
                let v = strictness_json(&rep, report);
                report.result = v;
            }
            Err(HomologicalError::NotWellDefined(why)) => {
                report.verdict("well_defined", false);
                report.result = json!({ "error": why });
            }
            Err(e) => return Err(e.into()),
        }
        return Ok(());
    }
    let a_tilde = crate::input::parse_matrix(text)?;
    let data = duality_data(&a_tilde, None)?;
    report.verdict("well_defined", duality_well_defined(&a_tilde, &data)?.well_defined);
    let rep = duality_strictness(&a_tilde, &data, bound)?;
    report.shift("source order filtration shifted by c_0", data.c_tilde[0]);
    let v = strictness_json(&rep, report);
    report.result = v;
    Ok(())
}

pub fn duality(a_tilde: &IntMatrix, fiber: Option<Vec<i64>>, report: &mut RunReport) -> CmdResult {
    let context = match fiber.as_deref() {
        None => None,
        Some(&[k, l, m]) if k >= 0 && l >= 0 && m >= 0 => Some(FiberContext { k: k as usize, l: l as usize, m: m as usize }),
        Some(_) => return Err(InputError("--fiber expects k,l,m (three nonnegative integers)".into()).into()),
    };
    let data = duality_data(a_tilde, context)?;
    let cert = duality_well_defined(a_tilde, &data)?;
    report.verdict("well_defined", cert.well_defined);
    report.verdict("facet_pairings_one", data.certificate.pairings.iter().all(|&p| p == 1));
    if let Some(ok) = data.fiber_form_matches {
        report.verdict("fiber_form", ok);
    }
    report.shift("dual filtration shifted by c_0 + n", data.hodge_shift);
    report.result = json!({ "data": data, "certificate": cert });
    Ok(())
}

pub struct HodgeBounds {
    pub koszul: usize,
    pub strictness: usize,
    pub bernstein: usize,
    pub chart: usize,
}

/// `(A, Ã)` from either form of the input.
pub fn split_tilde(m: &IntMatrix, homogenized: bool) -> Result<(IntMatrix, IntMatrix), Box<dyn Error>> {
    if !homogenized {
        return Ok((m.clone(), homogenize(m)));
    }
    let r = rows(m)?;
    let ok = r.len() >= 2 && r[0].iter().all(|&v| v == 1) && r.iter().skip(1).all(|row| row[0] == 0);
    if !ok {
        return Err(InputError("a homogenized matrix has a first row of ones and first column e_0".into()).into());
    }
    let a: Vec<Vec<i64>> = r.iter().skip(1).map(|row| row[1..].to_vec()).collect();
    Ok((IntMatrix::from_rows(&a)?, m.clone()))
}

/// Toric checks, Bernstein exponent, purity, Koszul regularity and strictness
/// for `M^0_Ã`, with the order filtration shifts of `M^0_Ã` and of its dual.
pub fn verify_hodge(a: &IntMatrix, a_tilde: &IntMatrix, bounds: &HodgeBounds, report: &mut RunReport) -> CmdResult {
    let profile = semigroup_profile(a_tilde, gkz_hodge_core::toric::DEFAULT_SATURATION_BOUND)?;
    report.verdict("saturated", profile.saturated.is_verified());
    let Some(gor) = profile.gorenstein.clone() else {
        report.verdict("gorenstein", false);
        report.result = json!({ "saturation": profile.saturated });
        return Ok(());
    };
    report.verdict("gorenstein", true);

    let bernstein = match bernstein_exponent(a_tilde, bounds.bernstein) {
        Ok(b) => {
            let certified = b.m.is_some() && b.power_checks.iter().all(|&(j, inside)| inside == (Some(j) == b.m));
            report.verdict("bernstein_power", certified);
            json!({ "m": b.m, "cprime": b.cprime })
        }
        Err(BernsteinError::TrivialCPrime) => json!({ "not_applicable": "c' = 0" }),
        Err(e) => {
            report.verdict("bernstein_power", false);
            json!({ "error": e.to_string() })
        }
    };

    let fl = build_fl_gkz(a_tilde, &vec![0; a_tilde.rows()])?;
    let gb = buchberger(&fl.generators, &TermOrder::WeylStd)?;
    let pure = pure_for_v_weight(&gb)?;
    report.verdict("purity", pure);

    let reg = euler_koszul_regularity(a, bounds.chart, bounds.koszul)?;
    report.verdict("koszul_regularity", reg.passed());

    let data: DualityData = duality_data(a_tilde, None)?;
    report.verdict("duality_well_defined", duality_well_defined(a_tilde, &data)?.well_defined);
    let st = duality_strictness(a_tilde, &data, bounds.strictness)?;
    report.verdict("strictness", st.filtered && st.strict);

    let rees = build_rees_gkz(a_tilde)?;
    let d = a_tilde.rows() as i64 - 1;
    let n = a_tilde.cols() as i64 - 1;
    report.verdict("shift_ledger", rees.total_shift() == d && data.hodge_shift == gor.c[0] + n);
    for e in &rees.shift_ledger {
        report.shift(format!("M^0: {}", e.description), e.shift);
    }
    report.shift("dual M^{-c}: order filtration shifted by c_0 + n", data.hodge_shift);
    report.result = json!({
        "a": rows(a)?,
        "a_tilde": rows(a_tilde)?,
        "c_tilde": data.c_tilde,
        "d": d,
        "n": n,
        "bernstein": bernstein,
        "purity_basis_size": gb.len(),
        "koszul": { "bound": reg.bound, "degrees_compared": reg.degrees_compared, "h0_mismatches": reg.h0_mismatches.len() },
        "strictness": { "bound": st.bound, "degrees_checked": st.degrees_checked, "failures": st.failures.len() },
    });
    Ok(())
}

/// Homogeneity of every basis element for the weight `|x| - |d|`.
pub fn pure_for_v_weight(gb: &GroebnerBasis) -> Result<bool, Box<dyn Error>> {
    let n = gb.sig.nvars();
    let mut w = vec![0i64; gb.sig.width()];
    w[..n].fill(1);
    w[n..2 * n].fill(-1);
    let spec = FiltrationSpec::Weight(w);
    for g in &gb.generators {
        if !filtration_degree(g, &spec)?.pure {
            return Ok(false);
        }
    }
    Ok(true)
}
