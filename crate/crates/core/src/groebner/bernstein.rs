use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::toric_ideal::{binomial, toric_ideal};
use super::{buchberger, GroebnerBasis, GroebnerError};
use crate::linalg::rational::{Echelon, SparseVec};
use crate::linalg::IntMatrix;
use crate::toric::{cprime_decomposition, gorenstein_vector, ToricError, DEFAULT_SATURATION_BOUND};
use crate::weyl::transform::{h_homogenize, set_central_one};
use crate::weyl::{initial_form_v, q, Sig, Signature, TermOrder, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BernsteinError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("semigroup is not Gorenstein (no interior vector with all facet pairings 1)")]
    NotGorenstein,
    #[error("c' = 0: the semigroup is a group and the divisor is empty")]
    TrivialCPrime,
    #[error("no polynomial in E of degree <= {bound} lies in the initial ideal")]
    BoundExceeded { bound: usize },
}

/// Graph-embedded GKZ data: the ideal `I'` on `W x C_t` for `B' = [B | c']`.
#[derive(Clone, Debug)]
pub struct GraphIdeal {
    pub sig: Sig,
    pub bprime: IntMatrix,
    pub cprime: Vec<i64>,
    pub generators: Vec<WeylElement>,
    /// Index of `t` in the signature.
    pub t: usize,
}

/// `E'_k = sum_i b_ki d_wi w_i + c'_k d_t t` and the boxes of the lattice of `B'`.
pub fn graph_ideal(b: &IntMatrix, cprime: &[i64]) -> Result<GraphIdeal, BernsteinError> {
    let s = b.cols();
    let r = b.rows();
    let mut cols = b.columns_i64().map_err(ToricError::from)?;
    cols.push(cprime.to_vec());
    let bprime = IntMatrix::from_columns(r, &cols).map_err(ToricError::from)?;
    let mut names: Vec<String> = (1..=s).map(|i| format!("w{i}")).collect();
    names.push("t".into());
    let sig = Signature::new(&names).expect("valid names").with_marked("t").expect("t exists").into_arc();
    let theta = |i: usize| &WeylElement::partial(&sig, i) * &WeylElement::var(&sig, i);
    let mut generators = Vec::new();
    for k in 0..r {
        let mut e = theta(s).scale(&q(cprime[k]));
        for (i, col) in cols.iter().take(s).enumerate() {
            e = &e + &theta(i).scale(&q(col[k]));
        }
        if !e.is_zero() {
            generators.push(e);
        }
    }
    let vars: Vec<usize> = (0..=s).collect();
    for m in toric_ideal(&bprime)? {
        generators.push(binomial(&sig, &vars, &m));
    }
    Ok(GraphIdeal { sig, bprime, cprime: cprime.to_vec(), generators, t: s })
}

/// The Bernstein-Sato polynomial of `[1]` in `D / I` along `x_t = 0`, as monic
/// coefficients (constant term first), with the Groebner basis of `in_V(I)` it
/// was read from.
///
/// `in_V(I)` is computed from a Groebner basis of the homogenized ideal for the
/// weight `(-1, 1)` on `(x_t, d_t)`; `b` is then the minimal polynomial of
/// `E = d_t x_t` modulo `in_V(I)`.
pub fn bernstein_polynomial(
    gens: &[WeylElement],
    t: usize,
    bound: usize,
) -> Result<(Vec<BigRational>, GroebnerBasis), BernsteinError> {
    let sig = gens.first().ok_or(GroebnerError::EmptyInput)?.signature().clone();
    let n = sig.nvars();
    let hname = (0..).map(|i| format!("h{i}")).find(|h| sig.var_index(h).is_none() && sig.central_index(h).is_none());
    let hsig = (*sig).clone().with_homogenizer(&hname.expect("unbounded")).expect("fresh name").into_arc();
    let hpos = hsig.ncentral() - 1;
    let homog: Vec<WeylElement> = gens.iter().map(|g| h_homogenize(g, &hsig)).collect::<Result<_, _>>().map_err(|_| GroebnerError::SignatureMismatch)?;
    let width = hsig.width();
    let total = vec![1i64; width];
    let mut v = vec![0i64; width];
    v[t] = -1;
    v[n + t] = 1;
    let order = TermOrder::weight(total, TermOrder::weight(v, TermOrder::WeylStd));
    let hgb = buchberger(&homog, &order)?;
    let initial: Vec<WeylElement> = hgb
        .generators
        .iter()
        .map(|g| set_central_one(g, hpos).with_signature(&sig).expect("same layout"))
        .filter(|g| !g.is_zero())
        .map(|g| initial_form_v(&g, t).expect("nonzero"))
        .collect();
    let gb = buchberger(&initial, &TermOrder::WeylStd)?;
    let e = &WeylElement::partial(&sig, t) * &WeylElement::var(&sig, t);
    let mut index: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
    let mut echelon = Echelon::new();
    let mut power = WeylElement::one(&sig);
    for j in 0..=bound {
        let nf = gb.normal_form(&power)?;
        let mut vec = SparseVec::new();
        for (m, c) in nf.terms() {
            let next = index.len();
            let k = *index.entry(m.exponents().to_vec()).or_insert(next);
            vec.insert(k, c.clone());
        }
        let (rem, comb) = echelon.reduce(&vec);
        if rem.is_empty() {
            let mut coeffs = vec![BigRational::zero(); j + 1];
            for (i, c) in comb {
                coeffs[i] = -c;
            }
            coeffs[j] = BigRational::one();
            return Ok((coeffs, gb));
        }
        echelon.insert(&vec);
        power = &power * &e;
    }
    Err(BernsteinError::BoundExceeded { bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct BernsteinExponent {
    /// `b(x) = x^m`, or `None` if the Bernstein polynomial has a nonzero root.
    pub m: Option<usize>,
    /// Monic Bernstein polynomial, constant term first.
    pub polynomial: Vec<BigRational>,
    pub cprime: Vec<i64>,
    pub bprime: IntMatrix,
    pub generators: usize,
    pub initial_basis_size: usize,
    /// `(alpha, (E - alpha)^deg in in_V(I'))` for the sampled nonzero `alpha`.
    pub shifted_checks: Vec<(String, bool)>,
    /// `(j, E^j in in_V(I'))` for `j = m - 1` and `j = m`, by reduction.
    pub power_checks: Vec<(usize, bool)>,
    pub search_bound: usize,
}

/// The least `m` with `(d_t t)^m in V^1 + I'` for the graph embedding of `B`.
pub fn bernstein_exponent(b: &IntMatrix, bound: usize) -> Result<BernsteinExponent, BernsteinError> {
    let g = gorenstein_vector(b, DEFAULT_SATURATION_BOUND)?.ok_or(BernsteinError::NotGorenstein)?;
    let cp = cprime_decomposition(b, &g.c)?;
    if cp.cprime.iter().all(|&x| x == 0) {
        return Err(BernsteinError::TrivialCPrime);
    }
    let gi = graph_ideal(b, &cp.cprime)?;
    let (polynomial, gb) = bernstein_polynomial(&gi.generators, gi.t, bound)?;
    let deg = polynomial.len() - 1;
    let is_monomial = polynomial[..deg].iter().all(Zero::is_zero);
    let e = &WeylElement::partial(&gi.sig, gi.t) * &WeylElement::var(&gi.sig, gi.t);
    let mut shifted_checks = Vec::new();
    for alpha in [q(1), q(-1), q(2), BigRational::new(1.into(), 2.into())] {
        let shifted = (&e - &WeylElement::constant(&gi.sig, alpha.clone())).pow(deg.max(1) as u32);
        shifted_checks.push((alpha.to_string(), gb.contains(&shifted)?));
    }
    let mut power_checks = Vec::new();
    if is_monomial {
        for j in deg.saturating_sub(1)..=deg {
            power_checks.push((j, gb.contains(&e.pow(j as u32))?));
        }
    }
    Ok(BernsteinExponent {
        m: is_monomial.then_some(deg),
        polynomial,
        cprime: cp.cprime,
        bprime: gi.bprime,
        generators: gi.generators.len(),
        initial_basis_size: gb.len(),
        shifted_checks,
        power_checks,
        search_bound: bound,
    })
}
