use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::boxes::{toric_box_generators, BoxFlavor};
use super::{rows_of, Flavor, GkzError, ShiftEntry, SystemPresentation};
use crate::groebner::{buchberger, graph_ideal, GroebnerBasis};
use crate::linalg::{rank, IntMatrix};
use crate::toric::{
    chart_matrix, columns_with_origin, cprime_decomposition, gorenstein_vector, DEFAULT_SATURATION_BOUND,
};
use crate::weyl::{fourier_laplace_inverse, q, Monomial, Sig, Signature, TermOrder, WeylElement};

fn check_beta(m: &IntMatrix, beta: &[i64]) -> Result<(), GkzError> {
    if beta.len() != m.rows() {
        return Err(GkzError::ParameterLength { expected: m.rows(), found: beta.len() });
    }
    Ok(())
}

fn is_homogenized(m: &IntMatrix) -> bool {
    m.rows() > 0 && (0..m.cols()).all(|j| m.get(0, j) == &BigInt::from(1))
}

fn theta(sig: &Sig, i: usize) -> WeylElement {
    WeylElement::theta(sig, i)
}

fn partial_times_var(sig: &Sig, i: usize) -> WeylElement {
    &WeylElement::partial(sig, i) * &WeylElement::var(sig, i)
}

/// `M^beta_A = D / (boxes, E_k - beta_k)` on variables `l0, l1, ...`.
pub fn build_gkz(a: &IntMatrix, beta: &[i64]) -> Result<SystemPresentation, GkzError> {
    let names: Vec<String> = (0..a.cols()).map(|i| format!("l{i}")).collect();
    build_gkz_named(a, beta, &names)
}

/// [`build_gkz`] with explicit variable names.
pub fn build_gkz_named(a: &IntMatrix, beta: &[i64], names: &[String]) -> Result<SystemPresentation, GkzError> {
    check_beta(a, beta)?;
    let sig = Signature::new(names)?.into_arc();
    let vars: Vec<usize> = (0..a.cols()).collect();
    let mut generators = toric_box_generators(a, &BoxFlavor::Partial, &sig, &vars)?;
    let mut eulers = Vec::new();
    for k in 0..a.rows() {
        let mut e = WeylElement::integer(&sig, -beta[k]);
        for i in 0..a.cols() {
            let c = a.get(k, i);
            if !c.is_zero() {
                e = &e + &theta(&sig, i).scale(&BigRational::from_integer(c.clone()));
            }
        }
        eulers.push(generators.len());
        generators.push(e);
    }
    let mut shift_ledger = Vec::new();
    if is_homogenized(a) {
        shift_ledger.push(ShiftEntry {
            description: "Hodge filtration of the homogenized GKZ system is the order filtration shifted by d".into(),
            shift: a.rows() as i64 - 1,
        });
    }
    let p = SystemPresentation { sig, generators, eulers, flavor: Flavor::Gkz { a: rows_of(a)?, beta: beta.to_vec() }, shift_ledger };
    certify_eulers(&p)?;
    Ok(p)
}

/// `FL-GKZ: D / (boxes in w, sum_i b_ki d_wi w_i + beta_k)` on variables `w1..ws`.
pub fn build_fl_gkz(b: &IntMatrix, beta: &[i64]) -> Result<SystemPresentation, GkzError> {
    check_beta(b, beta)?;
    let names: Vec<String> = (1..=b.cols()).map(|i| format!("w{i}")).collect();
    let sig = Signature::new(&names)?.into_arc();
    let p = fl_system(b, beta, &sig)?;
    let (r, s) = (rank(b) as i64, b.cols() as i64);
    Ok(SystemPresentation {
        flavor: Flavor::FlGkz { b: rows_of(b)?, beta: beta.to_vec() },
        shift_ledger: vec![ShiftEntry {
            description: "Hodge filtration of the Fourier-transformed system is the order filtration shifted by s - r".into(),
            shift: s - r,
        }],
        ..p
    })
}

pub(crate) fn fl_system(b: &IntMatrix, beta: &[i64], sig: &Sig) -> Result<SystemPresentation, GkzError> {
    let vars: Vec<usize> = (0..b.cols()).collect();
    let mut generators = toric_box_generators(b, &BoxFlavor::Fl, sig, &vars)?;
    let mut eulers = Vec::new();
    for k in 0..b.rows() {
        let mut e = WeylElement::integer(sig, beta[k]);
        for i in 0..b.cols() {
            let c = b.get(k, i);
            if !c.is_zero() {
                e = &e + &partial_times_var(sig, i).scale(&BigRational::from_integer(c.clone()));
            }
        }
        if e.is_zero() {
            continue;
        }
        eulers.push(generators.len());
        generators.push(e);
    }
    let p = SystemPresentation {
        sig: sig.clone(),
        generators,
        eulers,
        flavor: Flavor::FlGkz { b: rows_of(b)?, beta: beta.to_vec() },
        shift_ledger: vec![],
    };
    certify_eulers(&p)?;
    Ok(p)
}

/// Graph embedding along `c'`: `B' = [B | c']`, generators `E'_k` and the boxes of `B'`.
pub fn build_graph_embedded(b: &IntMatrix) -> Result<SystemPresentation, GkzError> {
    let cert = gorenstein_vector(b, DEFAULT_SATURATION_BOUND)?.ok_or(GkzError::NotGorenstein)?;
    let cp = cprime_decomposition(b, &cert.c)?;
    if cp.cprime.iter().all(|&x| x == 0) {
        return Err(GkzError::TrivialCPrime);
    }
    let g = graph_ideal(b, &cp.cprime)?;
    let eulers: Vec<usize> = (0..b.rows()).collect();
    let (r, s) = (rank(b) as i64, b.cols() as i64);
    let p = SystemPresentation {
        sig: g.sig,
        generators: g.generators,
        eulers,
        flavor: Flavor::Graph { bprime: rows_of(&g.bprime)? },
        shift_ledger: vec![ShiftEntry {
            description: "graph embedding along the divisor: order filtration shifted by s - r + 1".into(),
            shift: s - r + 1,
        }],
    };
    certify_eulers(&p)?;
    Ok(p)
}

/// `A^s`: columns `(1, 0, a_i)` for `i = 0..n` followed by `(0, 1, a_i)`, with `a_0 = 0`.
pub fn build_as(a: &IntMatrix) -> Result<IntMatrix, GkzError> {
    let cols = columns_with_origin(a)?;
    let d = a.rows();
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(2 * cols.len());
    for (first, second) in [(1, 0), (0, 1)] {
        for c in &cols {
            let mut v = vec![first, second];
            v.extend(c);
            out.push(v);
        }
    }
    Ok(IntMatrix::from_columns(d + 2, &out)?)
}

/// `A^s_u`: columns `(0, a_i - a_u)` for `i != u`, then `(1, a_i)` for `i = 0..n`.
pub fn build_as_u(a: &IntMatrix, u: usize) -> Result<IntMatrix, GkzError> {
    let (a_u, _) = chart_matrix(a, u).map_err(|_| GkzError::BadChart(u))?;
    let cols = columns_with_origin(a)?;
    let d = a.rows();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for c in a_u.columns_i64()? {
        let mut v = vec![0];
        v.extend(c);
        out.push(v);
    }
    for c in &cols {
        let mut v = vec![1];
        v.extend(c);
        out.push(v);
    }
    Ok(IntMatrix::from_columns(d + 1, &out)?)
}

pub(crate) fn chart_var_names(n: usize, u: usize) -> Vec<String> {
    (0..=n).filter(|&i| i != u).map(|i| format!("w{i}_{u}")).collect()
}

/// The Radon kernel system on `(w_iu)_{i != u}, l0..ln`: the chart Euler fields
/// corrected by the lambda Euler fields, the chart boxes, `d_li - w_iu d_lu`, and
/// `sum_j l_j d_lj`.
pub fn build_radon_kernel(a: &IntMatrix, u: usize) -> Result<SystemPresentation, GkzError> {
    let (d, n) = (a.rows(), a.cols());
    let (a_u, _) = chart_matrix(a, u).map_err(|_| GkzError::BadChart(u))?;
    let cols = columns_with_origin(a)?;
    let mut names = chart_var_names(n, u);
    names.extend((0..=n).map(|i| format!("l{i}")));
    let sig = Signature::new(&names)?.into_arc();
    let lam = |i: usize| n + i;
    let w_of = |i: usize| if i < u { i } else { i - 1 };
    let mut generators = Vec::new();
    let mut eulers = Vec::new();
    for k in 0..d {
        let mut e = WeylElement::zero(&sig);
        for j in 0..n {
            let c = a_u.get(k, j);
            if !c.is_zero() {
                e = &e + &partial_times_var(&sig, j).scale(&BigRational::from_integer(c.clone()));
            }
        }
        for (i, col) in cols.iter().enumerate().skip(1) {
            if col[k] != 0 {
                e = &e - &theta(&sig, lam(i)).scale(&q(col[k]));
            }
        }
        eulers.push(generators.len());
        generators.push(e);
    }
    let w_vars: Vec<usize> = (0..n).collect();
    generators.extend(toric_box_generators(&a_u, &BoxFlavor::Fl, &sig, &w_vars)?);
    for i in (0..=n).filter(|&i| i != u) {
        let g = &WeylElement::partial(&sig, lam(i))
            - &(&WeylElement::var(&sig, w_of(i)) * &WeylElement::partial(&sig, lam(u)));
        generators.push(g);
    }
    let e0 = (0..=n).fold(WeylElement::zero(&sig), |acc, i| &acc + &theta(&sig, lam(i)));
    eulers.push(generators.len());
    generators.push(e0);
    let p = SystemPresentation {
        sig,
        generators,
        eulers,
        flavor: Flavor::RadonKernel { a: rows_of(a)?, u },
        shift_ledger: vec![ShiftEntry {
            description: "chart system: order filtration shifted by n - d".into(),
            shift: n as i64 - d as i64,
        }],
    };
    certify_eulers(&p)?;
    Ok(p)
}

/// Transforms `GKZ(A^s_u, 0)` (written on `(w_iu)_{i != u}, l0..ln`) back by
/// `w -> -d_w, d_w -> w` on the chart variables and compares the ideal it
/// generates with the Radon kernel by reduced Groebner bases.
pub fn kernel_fl_cross_check(a: &IntMatrix, u: usize) -> Result<(bool, GroebnerBasis, GroebnerBasis), GkzError> {
    let n = a.cols();
    let kernel = build_radon_kernel(a, u)?;
    let asu = build_as_u(a, u)?;
    let gkz = build_gkz_named(&asu, &vec![0; asu.rows()], kernel.sig.vars())?;
    let w_vars: Vec<usize> = (0..n).collect();
    let transformed: Vec<WeylElement> = gkz
        .generators
        .iter()
        .map(|g| fourier_laplace_inverse(g, &w_vars)?.with_signature(&kernel.sig))
        .collect::<Result<_, _>>()?;
    let order = TermOrder::WeylStd;
    let g1 = buchberger(&kernel.generators, &order)?;
    let g2 = buchberger(&transformed, &order)?;
    Ok((g1.same_ideal(&g2)?, g1, g2))
}

/// Rees-level system of a homogenized `Ã`: `□^λ` boxes with `z d` and
/// `Ẽ_k = sum_i Ã_ki l_i z d_li`, with `z` a central parameter.
pub fn build_rees_gkz(a_tilde: &IntMatrix) -> Result<SystemPresentation, GkzError> {
    if !is_homogenized(a_tilde) {
        return Err(GkzError::NotHomogenized);
    }
    let names: Vec<String> = (0..a_tilde.cols()).map(|i| format!("l{i}")).collect();
    let sig = Signature::new(&names)?.with_central("z", false)?.into_arc();
    let z = WeylElement::central(&sig, 0);
    let vars: Vec<usize> = (0..a_tilde.cols()).collect();
    let mut generators = toric_box_generators(a_tilde, &BoxFlavor::Rees { z: z.clone() }, &sig, &vars)?;
    let mut eulers = Vec::new();
    for k in 0..a_tilde.rows() {
        let mut e = WeylElement::zero(&sig);
        for i in 0..a_tilde.cols() {
            let c = a_tilde.get(k, i);
            if !c.is_zero() {
                e = &e + &(&z * &theta(&sig, i)).scale(&BigRational::from_integer(c.clone()));
            }
        }
        eulers.push(generators.len());
        generators.push(e);
    }
    let d = a_tilde.rows() as i64 - 1;
    let p = SystemPresentation {
        sig,
        generators,
        eulers,
        flavor: Flavor::Rees { a_tilde: rows_of(a_tilde)? },
        shift_ledger: vec![ShiftEntry { description: "Rees module twisted by z^-d".into(), shift: d }],
    };
    certify_eulers(&p)?;
    Ok(p)
}

/// Exact checks for one Euler operator `E` against one box `g`: `E g - g E = c g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCertificate {
    pub euler: usize,
    pub generator: usize,
    /// The factor `c` with `g (E + c) = E g` (a constant, times a power of `z` for
    /// Rees systems); `None` if `[E, g]` is not such a multiple of `g`.
    pub constant: Option<String>,
}

/// Commutation of the Euler generators and the grading constants of the other generators.
pub fn euler_certificates(p: &SystemPresentation) -> Result<(bool, Vec<EulerCertificate>), GkzError> {
    let eulers = p.euler_operators();
    let mut commute = true;
    for i in 0..eulers.len() {
        for j in i + 1..eulers.len() {
            if !eulers[i].commutator(&eulers[j])?.is_zero() {
                commute = false;
            }
        }
    }
    let mut out = Vec::new();
    for (ei, &e_idx) in p.eulers.iter().enumerate() {
        for (gi, g) in p.generators.iter().enumerate() {
            if p.eulers.contains(&gi) {
                continue;
            }
            let comm = eulers[ei].commutator(g)?;
            out.push(EulerCertificate { euler: e_idx, generator: gi, constant: proportional(&comm, g).map(|c| c.to_string()) });
        }
    }
    Ok((commute, out))
}

/// `f` with `a = f b`, where `f` is a constant times a monomial in the central parameters.
fn proportional(a: &WeylElement, b: &WeylElement) -> Option<WeylElement> {
    let sig = b.signature();
    if a.is_zero() {
        return Some(WeylElement::zero(sig));
    }
    let n = sig.nvars();
    let (mb, cb) = b.terms().next()?;
    let (ma, ca) = a.terms().find(|(m, _)| m.x(n) == mb.x(n) && m.d(n) == mb.d(n))?;
    let central: Vec<i32> = ma.c(n).iter().zip(mb.c(n)).map(|(x, y)| x - y).collect();
    let f = WeylElement::monomial(sig, Monomial::from_parts(&vec![0; n], &vec![0; n], &central), ca / cb);
    (a == &(&f * b)).then_some(f)
}

fn certify_eulers(p: &SystemPresentation) -> Result<(), GkzError> {
    let (commute, certs) = euler_certificates(p)?;
    if !commute {
        return Err(GkzError::CertificateFailed("Euler operators do not commute".into()));
    }
    if let Some(c) = certs.iter().find(|c| c.constant.is_none()) {
        return Err(GkzError::CertificateFailed(format!(
            "generator {} is not homogeneous for Euler operator {}",
            c.generator, c.euler
        )));
    }
    Ok(())
}
