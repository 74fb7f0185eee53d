use serde::Serialize;

use super::builders::{chart_var_names, fl_system};
use super::{rows_of, Flavor, GkzError, ShiftEntry, SystemPresentation};
use crate::linalg::IntMatrix;
use crate::toric::chart_matrix;
use crate::weyl::{substitute, Sig, Signature, Substitution, WeylElement};

/// Signature of chart `u` (variables `w{i}_{u}`, `i != u`), optionally with
/// `w{v}_{u}` invertible.
pub fn chart_signature(n: usize, u: usize, invert: Option<usize>) -> Result<Sig, GkzError> {
    let names = chart_var_names(n, u);
    let mut sig = Signature::new(&names)?;
    if let Some(v) = invert {
        sig = sig.with_invertible(&format!("w{v}_{u}"))?;
    }
    Ok(sig.into_arc())
}

/// The chart system `FL-GKZ(A_u, 0)` on the chart variables `w{i}_{u}`.
pub fn build_chart_system(a: &IntMatrix, u: usize) -> Result<SystemPresentation, GkzError> {
    let (d, n) = (a.rows(), a.cols());
    let (a_u, _) = chart_matrix(a, u).map_err(|_| GkzError::BadChart(u))?;
    let sig = chart_signature(n, u, None)?;
    let p = fl_system(&a_u, &vec![0; d], &sig)?;
    Ok(SystemPresentation {
        flavor: Flavor::Chart { a: rows_of(a)?, u },
        shift_ledger: vec![ShiftEntry { description: "chart system: order filtration shifted by n - d".into(), shift: n as i64 - d as i64 }],
        ..p
    })
}

fn index_in_chart(i: usize, u: usize) -> usize {
    if i < u {
        i
    } else {
        i - 1
    }
}

/// Coordinate change from chart `u1` (localized at `w_{u2 u1}`) to chart `u2`
/// (localized at `w_{u1 u2}`), followed by right multiplication with
/// `w_{u1 u2}^{n+1}`.
pub fn chart_glue(p: &WeylElement, n: usize, u1: usize, u2: usize) -> Result<WeylElement, GkzError> {
    if u1 > n || u2 > n || u1 == u2 {
        return Err(GkzError::BadChart(u1.max(u2)));
    }
    let source = chart_signature(n, u1, Some(u2))?;
    if !p.same_signature(&WeylElement::zero(&source)) {
        return Err(GkzError::Weyl(crate::weyl::WeylError::SignatureMismatch));
    }
    let target = chart_signature(n, u2, Some(u1))?;
    let v = index_in_chart(u1, u2);
    let w = |i: usize| WeylElement::var(&target, index_in_chart(i, u2));
    let dw = |i: usize| WeylElement::partial(&target, index_in_chart(i, u2));
    let w_inv = WeylElement::var_pow(&target, v, -1);
    let wv = WeylElement::var(&target, v);
    let mut s = Substitution::identity(&source, &target);
    let euler = (0..=n).filter(|&j| j != u2).fold(WeylElement::zero(&target), |acc, j| &acc + &(&w(j) * &dw(j)));
    for i in (0..=n).filter(|&i| i != u1) {
        let src = index_in_chart(i, u1);
        if i == u2 {
            s.x[src] = w_inv.clone();
            s.x_inv[src] = Some(wv.clone());
            s.d[src] = -(&wv * &euler);
        } else {
            s.x[src] = &w(i) * &w_inv;
            s.x_inv[src] = None;
            s.d[src] = &wv * &dw(i);
        }
    }
    let image = substitute(p, &s)?;
    Ok(&image * &WeylElement::var_pow(&target, v, n as i32 + 1))
}

/// Result of mapping the generators of chart `u1` into chart `u2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueCertificate {
    pub u1: usize,
    pub u2: usize,
    /// `glue(E^{u1}_k) = w^{n+1} E^{u2}_k` exactly.
    pub eulers_match: bool,
    /// Each glued box is a Laurent binomial whose exponent difference is a relation of `A_{u2}`.
    pub boxes_in_target: bool,
}

/// Re-verifies that gluing sends the chart ideal of `u1` into that of `u2`.
pub fn verify_glue(a: &IntMatrix, u1: usize, u2: usize) -> Result<GlueCertificate, GkzError> {
    let n = a.cols();
    let src = build_chart_system(a, u1)?;
    let tgt = build_chart_system(a, u2)?;
    let source = chart_signature(n, u1, Some(u2))?;
    let target = chart_signature(n, u2, Some(u1))?;
    let v = index_in_chart(u1, u2);
    let wpow = WeylElement::var_pow(&target, v, n as i32 + 1);
    let mut eulers_match = true;
    for (e1, e2) in src.euler_operators().iter().zip(tgt.euler_operators()) {
        let glued = chart_glue(&e1.with_signature(&source)?, n, u1, u2)?;
        if glued != &wpow * &e2.with_signature(&target)? {
            eulers_match = false;
        }
    }
    let (a_u2, _) = chart_matrix(a, u2).map_err(|_| GkzError::BadChart(u2))?;
    let mut boxes_in_target = true;
    for g in src.boxes() {
        let glued = chart_glue(&g.with_signature(&source)?, n, u1, u2)?;
        let terms: Vec<_> = glued.terms().collect();
        let ok = terms.len() == 2 && terms.iter().all(|(m, _)| m.d(n).iter().all(|&e| e == 0)) && {
            let diff: Vec<i64> = (0..n).map(|i| (terms[0].0.x(n)[i] - terms[1].0.x(n)[i]) as i64).collect();
            a_u2.mul_vec_i64(&diff)?.iter().all(|&x| x == 0)
        };
        if !ok {
            boxes_in_target = false;
        }
    }
    Ok(GlueCertificate { u1, u2, eulers_match, boxes_in_target })
}
