use std::collections::HashMap;
use std::sync::Arc;

use super::{Monomial, Sig, Signature, WeylElement, WeylError};

/// Algebra map given by the images of generators. `x_inv` / `c_inv` give images
/// of inverses and are consulted only for negative exponents.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub target: Sig,
    pub x: Vec<WeylElement>,
    pub x_inv: Vec<Option<WeylElement>>,
    pub d: Vec<WeylElement>,
    pub c: Vec<WeylElement>,
    pub c_inv: Vec<Option<WeylElement>>,
}

impl Substitution {
    /// Identity on a signature with the same layout as `source`, into `target`.
    pub fn identity(source: &Signature, target: &Sig) -> Self {
        let n = source.nvars();
        Substitution {
            target: Arc::clone(target),
            x: (0..n).map(|i| WeylElement::var(target, i)).collect(),
            x_inv: (0..n)
                .map(|i| source.is_invertible(i).then(|| WeylElement::var_pow(target, i, -1)))
                .collect(),
            d: (0..n).map(|i| WeylElement::partial(target, i)).collect(),
            c: (0..source.ncentral()).map(|j| WeylElement::central(target, j)).collect(),
            c_inv: (0..source.ncentral())
                .map(|j| source.is_central_invertible(j).then(|| WeylElement::central_pow(target, j, -1)))
                .collect(),
        }
    }
}

#[derive(Hash, PartialEq, Eq, Clone, Copy)]
enum Gen {
    X(usize),
    D(usize),
    C(usize),
}

pub fn substitute(p: &WeylElement, s: &Substitution) -> Result<WeylElement, WeylError> {
    let n = p.sig.nvars();
    let k = p.sig.ncentral();
    if s.x.len() != n || s.d.len() != n || s.c.len() != k {
        return Err(WeylError::SignatureMismatch);
    }
    let mut cache: HashMap<(Gen, i32), WeylElement> = HashMap::new();
    let mut power = |g: Gen, e: i32| -> Result<WeylElement, WeylError> {
        if let Some(v) = cache.get(&(g, e)) {
            return Ok(v.clone());
        }
        let base = match (g, e >= 0) {
            (Gen::X(i), true) => s.x[i].clone(),
            (Gen::D(i), true) => s.d[i].clone(),
            (Gen::C(j), true) => s.c[j].clone(),
            (Gen::X(i), false) => s.x_inv[i].clone().ok_or_else(|| WeylError::NotLocalized(p.sig.var_name(i).into()))?,
            (Gen::C(j), false) => {
                s.c_inv[j].clone().ok_or_else(|| WeylError::NotLocalized(p.sig.central_name(j).into()))?
            }
            (Gen::D(_), false) => return Err(WeylError::NotLocalized("partial".into())),
        };
        let v = base.pow(e.unsigned_abs());
        cache.insert((g, e), v.clone());
        Ok(v)
    };
    let mut out = WeylElement::zero(&s.target);
    for (m, c) in &p.terms {
        let mut t = WeylElement::constant(&s.target, c.clone());
        for (j, &e) in m.c(n).iter().enumerate() {
            if e != 0 {
                t = &t * &power(Gen::C(j), e)?;
            }
        }
        for (i, &e) in m.x(n).iter().enumerate() {
            if e != 0 {
                t = &t * &power(Gen::X(i), e)?;
            }
        }
        for (i, &e) in m.d(n).iter().enumerate() {
            if e != 0 {
                t = &t * &power(Gen::D(i), e)?;
            }
        }
        out = &out + &t;
    }
    Ok(out)
}

/// Plain Fourier-Laplace on the listed variables: `x -> d_x`, `d_x -> -x`.
/// Variable names are kept.
pub fn fourier_laplace(p: &WeylElement, vars: &[usize]) -> Result<WeylElement, WeylError> {
    fl_with_signs(p, vars, false)
}

/// Inverse of [`fourier_laplace`]: `x -> -d_x`, `d_x -> x`.
pub fn fourier_laplace_inverse(p: &WeylElement, vars: &[usize]) -> Result<WeylElement, WeylError> {
    fl_with_signs(p, vars, true)
}

fn fl_with_signs(p: &WeylElement, vars: &[usize], inverse: bool) -> Result<WeylElement, WeylError> {
    let sig = &p.sig;
    let mut s = Substitution::identity(sig, sig);
    for &i in vars {
        if i >= sig.nvars() {
            return Err(WeylError::UnsupportedLocalization(format!("variable index {i}")));
        }
        let x = WeylElement::var(sig, i);
        let d = WeylElement::partial(sig, i);
        if inverse {
            s.x[i] = -d;
            s.d[i] = x;
        } else {
            s.x[i] = d;
            s.d[i] = -x;
        }
        s.x_inv[i] = None;
    }
    substitute(p, &s)
}

/// Signature for the localized transform: variable `l0` becomes the invertible
/// variable `z`, everything else unchanged.
pub fn localized_signature(sig: &Signature, z: &str) -> Result<Sig, WeylError> {
    let idx = sig.var_index("l0").ok_or_else(|| WeylError::UnsupportedLocalization("no variable l0".into()))?;
    let mut names: Vec<String> = sig.vars().to_vec();
    names[idx] = z.to_string();
    let mut out = Signature::new(&names)?;
    for i in 0..sig.nvars() {
        if i != idx && sig.is_invertible(i) {
            out = out.with_invertible(&names[i])?;
        }
    }
    out = out.with_invertible(z)?;
    for j in 0..sig.ncentral() {
        out = out.with_central(sig.central_name(j), sig.is_central_invertible(j))?;
    }
    Ok(out.into_arc())
}

/// Localized Fourier-Laplace in the `l0` direction: `d_l0 -> z^-1`,
/// `l0 -> z^2 d_z`. Only the single variable `l0` is supported.
pub fn fourier_laplace_localized(p: &WeylElement, vars: &[usize], z: &str) -> Result<WeylElement, WeylError> {
    let sig = &p.sig;
    let idx = sig.var_index("l0");
    if vars.len() != 1 || Some(vars[0]) != idx {
        return Err(WeylError::UnsupportedLocalization(format!("variables {vars:?}; only l0 is supported")));
    }
    let i = vars[0];
    let target = localized_signature(sig, z)?;
    let mut s = Substitution::identity(sig, &target);
    let zv = WeylElement::var(&target, i);
    s.x[i] = &(&zv * &zv) * &WeylElement::partial(&target, i);
    s.x_inv[i] = None;
    s.d[i] = WeylElement::var_pow(&target, i, -1);
    substitute(p, &s)
}

/// Signature with an extra central parameter `z`.
pub fn rees_signature(sig: &Signature, z: &str) -> Result<Sig, WeylError> {
    Ok(sig.clone().with_central(z, false)?.into_arc())
}

/// `z^{ord P} P`: each monomial `x^g d^e` becomes `z^{ord P - |e|} x^g (z d)^e`.
/// For order-homogeneous `P` this is the termwise rewrite `d -> z d`.
pub fn rees_homogenize(p: &WeylElement, target: &Sig) -> Result<WeylElement, WeylError> {
    let n = p.sig.nvars();
    if target.nvars() != n || target.ncentral() != p.sig.ncentral() + 1 {
        return Err(WeylError::SignatureMismatch);
    }
    let ord = p.order().unwrap_or(0);
    Ok(WeylElement::from_terms(
        target,
        p.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.push(ord as i32);
            (Monomial(e), c.clone())
        }),
    ))
}

/// Sets central parameter `j` to 1 and drops it from the signature.
pub fn set_central_one(p: &WeylElement, j: usize) -> WeylElement {
    let target = p.sig.without_central(j).into_arc();
    let pos = 2 * p.sig.nvars() + j;
    WeylElement::from_terms(
        &target,
        p.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.remove(pos);
            (Monomial(e), c.clone())
        }),
    )
}

/// Homogenizes in the algebra with homogenizer `h` (`target` must be `sig` plus `h`):
/// every term is padded with `h` up to the maximal total degree.
pub fn h_homogenize(p: &WeylElement, target: &Sig) -> Result<WeylElement, WeylError> {
    let h = target.homogenizer().ok_or(WeylError::SignatureMismatch)?;
    if target.nvars() != p.sig.nvars() || target.ncentral() != p.sig.ncentral() + 1 || h != p.sig.ncentral() {
        return Err(WeylError::SignatureMismatch);
    }
    let top = p.terms.keys().map(Monomial::total_degree).max().unwrap_or(0);
    Ok(WeylElement::from_terms(
        target,
        p.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.push((top - m.total_degree()) as i32);
            (Monomial(e), c.clone())
        }),
    ))
}

/// Evaluates `P(x)` at `x := -x` for the listed variables (and `d -> -d`).
pub fn negate_variables(p: &WeylElement, vars: &[usize]) -> WeylElement {
    let n = p.sig.nvars();
    WeylElement::from_terms(
        &p.sig,
        p.terms.iter().map(|(m, c)| {
            let parity: i32 = vars.iter().map(|&i| m.0[i] + m.0[n + i]).sum();
            let c = if parity.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            (m.clone(), c)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse_element;

    #[test]
    fn plain_fl() {
        let s = Signature::new(&["w"]).unwrap().into_arc();
        let p = parse_element(&s, "d_w*w").unwrap();
        assert_eq!(fourier_laplace(&p, &[0]).unwrap().to_string(), "-w*d_w");
        let q = parse_element(&s, "w^2*d_w - 3*w + 1").unwrap();
        let back = fourier_laplace_inverse(&fourier_laplace(&q, &[0]).unwrap(), &[0]).unwrap();
        assert_eq!(back, q);
        let twice = fourier_laplace(&fourier_laplace(&q, &[0]).unwrap(), &[0]).unwrap();
        assert_eq!(twice, negate_variables(&q, &[0]));
    }

    #[test]
    fn localized_fl_of_euler() {
        let s = Signature::new(&["l0", "l1", "l2"]).unwrap().into_arc();
        let e = parse_element(&s, "l0*d_l0 + l1*d_l1 + l2*d_l2").unwrap();
        let fe = fourier_laplace_localized(&e, &[0], "z").unwrap();
        let t = fe.signature().clone();
        let z = WeylElement::var(&t, 0);
        let hat = parse_element(&t, "z^2*d_z + z*l1*d_l1 + z*l2*d_l2").unwrap();
        // z * FL(E - b0) = E^ - (b0 + 1) z
        assert_eq!(&z * &fe, &hat - &z);
        assert!(fourier_laplace_localized(&e, &[1], "z").is_err());
    }

    #[test]
    fn rees_round_trip() {
        let s = Signature::new(&["w", "l"]).unwrap().into_arc();
        let p = parse_element(&s, "d_w*w - 2*l*d_l").unwrap();
        let rs = rees_signature(&s, "z").unwrap();
        let r = rees_homogenize(&p, &rs).unwrap();
        assert_eq!(r.to_string(), "-2*z*l*d_l + z*w*d_w + z");
        assert_eq!(set_central_one(&r, 0), p);
    }
}
