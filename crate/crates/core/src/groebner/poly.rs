//! Dense-sorted term lists used inside the Groebner engine. Terms are kept in
//! ascending order under the active term order, so the leading term is last.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::weyl::{mono_mul, Monomial, Sig, TermOrder, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    pub terms: Vec<(Monomial, BigRational)>,
}

#[derive(Clone)]
pub(crate) struct Ctx {
    pub n: usize,
    pub homogenizer: Option<usize>,
    pub order: TermOrder,
}

impl Ctx {
    pub fn new(sig: &Sig, order: &TermOrder) -> Self {
        Ctx { n: sig.nvars(), homogenizer: sig.homogenizer(), order: order.clone() }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.n)
    }

    pub fn poly(&self, e: &WeylElement) -> Poly {
        let mut terms: Vec<(Monomial, BigRational)> = e.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| self.cmp(&a.0, &b.0));
        Poly { terms }
    }

    pub fn to_element(&self, sig: &Sig, p: &Poly) -> WeylElement {
        WeylElement::from_terms(sig, p.terms.iter().cloned())
    }

    /// `c * m * p` with the Weyl product, sorted ascending.
    pub fn mul_mono(&self, m: &Monomial, c: &BigRational, p: &Poly) -> Poly {
        let trivial = self.n == 0 || (0..self.n).all(|i| m.0[self.n + i] == 0);
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(p.terms.len());
        for (pm, pc) in &p.terms {
            let cc = c * pc;
            if trivial {
                let e: Vec<i32> = m.0.iter().zip(&pm.0).map(|(a, b)| a + b).collect();
                out.push((Monomial(e), cc));
            } else {
                for (mm, f) in mono_mul(self.n, self.homogenizer, m, pm) {
                    out.push((mm, &cc * BigRational::from_integer(f)));
                }
            }
        }
        if trivial {
            // A pure-x monomial multiplies termwise and keeps the order (orders are multiplicative).
            return Poly { terms: out };
        }
        self.normalize(out)
    }

    fn normalize(&self, mut v: Vec<(Monomial, BigRational)>) -> Poly {
        v.sort_by(|a, b| self.cmp(&a.0, &b.0));
        let mut terms: Vec<(Monomial, BigRational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            if let Some(last) = terms.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            terms.push((m, c));
        }
        terms.retain(|(_, c)| !c.is_zero());
        Poly { terms }
    }

    /// `a - b`, both ascending.
    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ord = if i == a.terms.len() {
                Ordering::Greater
            } else if j == b.terms.len() {
                Ordering::Less
            } else {
                self.cmp(&a.terms[i].0, &b.terms[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.terms[j].0.clone(), -b.terms[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.terms[i].1 - &b.terms[j].1;
                    if !c.is_zero() {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.last()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").0
    }

    pub fn monic(mut self) -> Poly {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = BigRational::one() / c;
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
        self
    }
}
