use serde::Serialize;

use super::builders::build_gkz;
use super::GkzError;
use crate::groebner::buchberger;
use crate::linalg::{nonneg_integer_solve, IntMatrix, NonnegSolve, DEFAULT_SOLVE_BOUND};
use crate::toric::{gorenstein_vector, GorensteinCertificate, DEFAULT_SATURATION_BOUND};
use crate::weyl::{TermOrder, WeylElement};

/// Dimensions of a total space of `l` line bundles over a `k`-dimensional toric
/// base whose fan has `m` rays: `Ã` has `1 + k + l` rows and `1 + m + l` columns,
/// the last `l` columns being the fiber rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberContext {
    pub k: usize,
    pub l: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityData {
    /// `c̃ = (c_0, c)`.
    pub c_tilde: Vec<i64>,
    pub dual_parameter: Vec<i64>,
    /// `c_0 + n` with `n + 1` the number of columns of `Ã`.
    pub hodge_shift: i64,
    /// `m + k + 2l` when fiber data is given.
    pub weight: Option<i64>,
    /// `c̃ = (l + 1, 0, 1)` with `k` zeros and `l` ones, when fiber data is given.
    pub fiber_form_matches: Option<bool>,
    /// `k >= 0` with `Ã k = c̃`; with fiber data, `e_0 + e_{m+1} + ... + e_{m+l}`.
    pub exponent: Vec<i64>,
    pub certificate: GorensteinCertificate,
}

pub fn duality_data(a_tilde: &IntMatrix, context: Option<FiberContext>) -> Result<DualityData, GkzError> {
    let cert = gorenstein_vector(a_tilde, DEFAULT_SATURATION_BOUND)?.ok_or(GkzError::NotGorenstein)?;
    let c = cert.c.clone();
    let n = a_tilde.cols() as i64 - 1;
    let mut exponent = None;
    let (weight, fiber_form_matches) = match context {
        Some(FiberContext { k, l, m }) => {
            let mut expected = vec![l as i64 + 1];
            expected.extend(std::iter::repeat_n(0, k));
            expected.extend(std::iter::repeat_n(1, l));
            let mut fiber_k = vec![0i64; a_tilde.cols()];
            fiber_k[0] = 1;
            for e in fiber_k.iter_mut().skip(m + 1).take(l) {
                *e = 1;
            }
            if a_tilde.mul_vec_i64(&fiber_k).ok().as_deref() == Some(&c[..]) {
                exponent = Some(fiber_k);
            }
            (Some((m + k + 2 * l) as i64), Some(expected == c))
        }
        None => (None, None),
    };
    let exponent = match exponent {
        Some(k) => k,
        None => duality_exponent(a_tilde, &c)?,
    };
    Ok(DualityData {
        dual_parameter: c.iter().map(|x| -x).collect(),
        hodge_shift: c[0] + n,
        c_tilde: c,
        weight,
        fiber_form_matches,
        exponent,
        certificate: cert,
    })
}

/// Exponent `k >= 0` with `Ã k = beta + beta'`.
pub(crate) fn duality_exponent(a_tilde: &IntMatrix, target: &[i64]) -> Result<Vec<i64>, GkzError> {
    match nonneg_integer_solve(a_tilde, target, DEFAULT_SOLVE_BOUND)? {
        NonnegSolve::Found(k) => Ok(k),
        _ => Err(GkzError::NoExponent(target.to_vec())),
    }
}

/// `P -> P d^k` from `M^{-c̃}` to `M^0`, with `Ã k = c̃`.
pub fn duality_morphism(p: &WeylElement, data: &DualityData) -> WeylElement {
    let sig = p.signature();
    let mut out = p.clone();
    for (i, &e) in data.exponent.iter().enumerate() {
        if e > 0 {
            out = &out * &WeylElement::partial_pow(sig, i, e as i32);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCertificate {
    pub k: Vec<i64>,
    /// Sum of `k`, equal to `c_0` by homogeneity.
    pub order_shift: i64,
    /// Each generator of the source ideal, times `d^k`, and its normal form modulo the target.
    pub reductions: Vec<(String, String)>,
    pub well_defined: bool,
}

/// Reduces `g d^k` modulo a Groebner basis of the target for every generator `g`
/// of the source `M^{-c̃}`.
pub fn duality_well_defined(a_tilde: &IntMatrix, data: &DualityData) -> Result<DualityCertificate, GkzError> {
    let k = data.exponent.clone();
    let source = build_gkz(a_tilde, &data.dual_parameter)?;
    let target = build_gkz(a_tilde, &vec![0; a_tilde.rows()])?;
    let gb = buchberger(&target.generators, &TermOrder::WeylStd)?;
    let mut reductions = Vec::new();
    let mut well_defined = true;
    for g in &source.generators {
        let g = g.with_signature(&target.sig)?;
        let image = duality_morphism(&g, data);
        let nf = gb.normal_form(&image)?;
        well_defined &= nf.is_zero();
        reductions.push((image.to_string(), nf.to_string()));
    }
    Ok(DualityCertificate { order_shift: k.iter().sum(), k, reductions, well_defined })
}
