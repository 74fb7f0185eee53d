use serde::Serialize;

use super::{GroebnerBasis, GroebnerError};
use crate::weyl::filtration::v_order;
use crate::weyl::{TermOrder, WeylElement};

#[derive(Clone, Debug, Serialize)]
pub enum LiftOutcome {
    /// `Q'` in `V^k ∩ F_p` with `Q' - P` in the ideal.
    Lifted { lift: String, steps: usize },
    /// The descending induction could not remove the top order symbol.
    Stuck { order: i64 },
}

fn v_min(p: &WeylElement, t: usize) -> Option<i64> {
    let n = p.signature().nvars();
    p.terms().map(|(m, _)| v_order(m, n, t)).min()
}

fn order_of(p: &WeylElement) -> i64 {
    p.order().unwrap_or(i64::MIN)
}

/// Given `P` in `F_p` and `Q` in `V^k` (along the marked variable) with
/// `P - Q` in the ideal of `gb`, lowers the order of `Q` step by step by
/// subtracting elements of `I ∩ V^k` with the same principal symbol. Succeeds
/// whenever the basis consists of V-pure elements.
pub fn lift_filtered(p: &WeylElement, q: &WeylElement, k: i64, gb: &GroebnerBasis) -> Result<(LiftOutcome, Option<WeylElement>), GroebnerError> {
    if gb.order != TermOrder::WeylStd {
        return Err(GroebnerError::OrderNotMultiplicative);
    }
    let t = gb.sig.marked().ok_or(GroebnerError::SignatureMismatch)?;
    let n = gb.sig.nvars();
    let ord_p = order_of(p);
    let mut q = q.clone();
    let mut steps = 0;
    loop {
        let i = &q - p;
        let top = order_of(&q).max(order_of(&i));
        if order_of(&q) <= ord_p.max(0) || q.is_zero() {
            return Ok((LiftOutcome::Lifted { lift: q.to_string(), steps }, Some(q)));
        }
        let (quotients, rem) = gb.divide(&i)?;
        if !rem.is_zero() {
            return Err(GroebnerError::SignatureMismatch);
        }
        let mut tilde = WeylElement::zero(&gb.sig);
        for (ql, gl) in quotients.iter().zip(&gb.generators) {
            let (Some(og), Some(vg)) = (gl.order(), v_min(gl, t)) else { continue };
            let part = WeylElement::from_terms(
                &gb.sig,
                ql.terms()
                    .filter(|(m, _)| m.order(n) + og == top && v_order(m, n, t) + vg >= k)
                    .map(|(m, c)| (m.clone(), c.clone())),
            );
            tilde = &tilde + &(&part * gl);
        }
        let next = &q - &tilde;
        let still_v = next.is_zero() || v_min(&next, t).is_some_and(|v| v >= k);
        if !still_v || order_of(&next) >= top {
            return Ok((LiftOutcome::Stuck { order: top }, None));
        }
        q = next;
        steps += 1;
    }
}

/// Exact answer to "is `[P]` the image of some `Q'` in `V^k ∩ F_p`" when the
/// ideal meets `F_p` trivially (no basis element has order `<= p`): then the
/// only candidate is `P` itself.
pub fn lift_exists_exact(p: &WeylElement, k: i64, gb: &GroebnerBasis) -> Option<bool> {
    let t = gb.sig.marked()?;
    let ord_p = p.order().unwrap_or(0);
    if gb.generators.iter().any(|g| g.order().is_some_and(|o| o <= ord_p)) {
        return None;
    }
    Some(p.is_zero() || v_min(p, t).is_some_and(|v| v >= k))
}
