use serde::{Deserialize, Serialize};

use super::order::weigh;
use super::{Monomial, TermOrder, WeylElement, WeylError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationSpec {
    /// Total partial degree.
    Order,
    /// Weight vector over the full exponent layout `[x, d, central]`.
    Weight(Vec<i64>),
    /// V-filtration along variable `t`: a monomial has V-order `gamma_t - delta_t`.
    VAlong(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationDegree {
    pub degree: i64,
    /// Only meaningful for `VAlong`: every monomial has the same V-order.
    pub pure: bool,
}

pub fn v_order(m: &Monomial, n: usize, t: usize) -> i64 {
    m.x(n)[t] as i64 - m.d(n)[t] as i64
}

/// Order or weight degree (the maximum over monomials), or for `VAlong` the
/// minimal V-order together with the purity flag.
pub fn filtration_degree(p: &WeylElement, spec: &FiltrationSpec) -> Result<FiltrationDegree, WeylError> {
    if p.is_zero() {
        return Err(WeylError::ZeroElement);
    }
    let n = p.sig.nvars();
    let degs: Vec<i64> = match spec {
        FiltrationSpec::Order => p.terms.keys().map(|m| m.order(n)).collect(),
        FiltrationSpec::Weight(w) => p.terms.keys().map(|m| weigh(w, m)).collect(),
        FiltrationSpec::VAlong(t) => p.terms.keys().map(|m| v_order(m, n, *t)).collect(),
    };
    let all_equal = degs.windows(2).all(|w| w[0] == w[1]);
    let degree = match spec {
        FiltrationSpec::VAlong(_) => *degs.iter().min().expect("nonzero"),
        _ => *degs.iter().max().expect("nonzero"),
    };
    Ok(FiltrationDegree { degree, pure: all_equal })
}

/// Purity along the signature's marked variable (`None` if no marked variable).
pub fn is_pure(p: &WeylElement) -> Option<bool> {
    let t = p.sig.marked()?;
    Some(p.is_zero() || filtration_degree(p, &FiltrationSpec::VAlong(t)).ok()?.pure)
}

/// Terms of maximal weight. Weights cover the layout `[x, d, central]`.
pub fn initial_form(p: &WeylElement, weights: &[i64]) -> Result<WeylElement, WeylError> {
    if p.is_zero() {
        return Err(WeylError::ZeroElement);
    }
    let top = p.terms.keys().map(|m| weigh(weights, m)).max().expect("nonzero");
    Ok(WeylElement::from_terms(
        &p.sig,
        p.terms.iter().filter(|(m, _)| weigh(weights, m) == top).map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// Terms of maximal V-weight `delta_t - gamma_t` (the initial form for the V-filtration).
pub fn initial_form_v(p: &WeylElement, t: usize) -> Result<WeylElement, WeylError> {
    let n = p.sig.nvars();
    let mut w = vec![0i64; p.sig.width()];
    w[t] = -1;
    w[n + t] = 1;
    initial_form(p, &w)
}

pub fn leading_term(p: &WeylElement, order: &TermOrder) -> Result<Monomial, WeylError> {
    p.leading(order).map(|(m, _)| m.clone()).ok_or(WeylError::ZeroElement)
}

/// Weight vector giving every partial weight 1: the order filtration.
pub fn order_weights(sig: &super::Signature) -> Vec<i64> {
    let n = sig.nvars();
    let mut w = vec![0i64; sig.width()];
    for i in 0..n {
        w[n + i] = 1;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{parse_element, Signature};

    #[test]
    fn purity_examples() {
        let s = Signature::new(&["w"]).unwrap().with_marked("w").unwrap().into_arc();
        let p = parse_element(&s, "w^2*d_w").unwrap();
        assert_eq!(filtration_degree(&p, &FiltrationSpec::VAlong(0)).unwrap(), FiltrationDegree { degree: 1, pure: true });
        let p = parse_element(&s, "w^2*d_w - 1").unwrap();
        let fd = filtration_degree(&p, &FiltrationSpec::VAlong(0)).unwrap();
        assert!(!fd.pure);
        assert_eq!(fd.degree, 0);
        let init = initial_form(&p, &order_weights(&s)).unwrap();
        assert_eq!(init.to_string(), "w^2*d_w");
        assert!(filtration_degree(&WeylElement::zero(&s), &FiltrationSpec::Order).is_err());
    }

    #[test]
    fn euler_is_pure_of_order_zero() {
        let s = Signature::new(&["w0", "w1", "w2"]).unwrap().with_marked("w0").unwrap().into_arc();
        let f = parse_element(&s, "d_w0*w0 + d_w1*w1 + d_w2*w2").unwrap();
        assert_eq!(filtration_degree(&f, &FiltrationSpec::VAlong(0)).unwrap(), FiltrationDegree { degree: 0, pure: true });
    }

    #[test]
    fn leading_term_prefers_higher_partial_index() {
        let s = Signature::new(&["w0", "w1"]).unwrap().into_arc();
        let f = parse_element(&s, "d_w0*w0 + d_w1*w1").unwrap();
        let lt = leading_term(&f, &TermOrder::WeylStd).unwrap();
        assert_eq!(lt.d(2), &[0, 1]);
        let g = parse_element(&s, "d_w0 - d_w1").unwrap();
        assert_eq!(initial_form(&g, &order_weights(&s)).unwrap(), g);
    }
}
