use num_bigint::BigInt;

use super::GkzError;
use crate::groebner::{binomial, toric_ideal};
use crate::linalg::{kernel_lattice, smith_normal_form, IntMatrix};
use crate::weyl::{q, Sig, WeylElement};

/// Placement of a lattice relation `l` as an operator.
#[derive(Clone, Debug)]
pub enum BoxFlavor {
    /// `prod d^{l-} - prod d^{l+}`.
    Partial,
    /// `w^{l+} - w^{l-}`.
    Fl,
    /// `prod (z d)^{l-} - prod (z d)^{l+}` with `z` the given element.
    Rees { z: WeylElement },
    /// The localized boxes: the first `m` variables carry `lambda^k (z d)^k`, the
    /// remaining ones `prod_{nu=1..k} (lambda z d - z nu)`.
    Tilde { m: usize, z: WeylElement },
}

/// Lattice vectors `l` with `M l = 0` generating the toric ideal of `M`, each
/// checked to lie in the kernel, and jointly checked to span the whole kernel
/// lattice.
pub fn box_lattice(m: &IntMatrix) -> Result<Vec<Vec<i64>>, GkzError> {
    let vecs = toric_ideal(m)?;
    for v in &vecs {
        if m.mul_vec_i64(v)?.iter().any(|&x| x != 0) {
            return Err(GkzError::GenerationUncertified(format!("{v:?} is not a relation")));
        }
    }
    let ker = kernel_lattice(m);
    if ker.rows() > 0 {
        let rows: Vec<Vec<i64>> = vecs.clone();
        let span = IntMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>())
            .map_err(GkzError::from)?;
        let snf_span = smith_normal_form(&span);
        let snf_ker = smith_normal_form(&ker);
        let unit_factors = snf_span.invariant_factors().iter().all(|f| f == &BigInt::from(1));
        if snf_span.rank != snf_ker.rank || !unit_factors {
            return Err(GkzError::GenerationUncertified("relations do not span the kernel lattice".into()));
        }
    }
    Ok(vecs)
}

/// Box operators of `M` on the variables `vars` of `sig`.
pub fn toric_box_generators(m: &IntMatrix, flavor: &BoxFlavor, sig: &Sig, vars: &[usize]) -> Result<Vec<WeylElement>, GkzError> {
    if vars.len() != m.cols() {
        return Err(GkzError::ParameterLength { expected: m.cols(), found: vars.len() });
    }
    let lattice = box_lattice(m)?;
    Ok(lattice.iter().map(|l| box_operator(l, flavor, sig, vars)).collect())
}

fn power_product(factors: impl IntoIterator<Item = (WeylElement, u32)>, sig: &Sig) -> WeylElement {
    let mut out = WeylElement::one(sig);
    for (f, e) in factors {
        out = &out * &f.pow(e);
    }
    out
}

pub(crate) fn box_operator(l: &[i64], flavor: &BoxFlavor, sig: &Sig, vars: &[usize]) -> WeylElement {
    let plus = |i: usize| l[i].max(0) as u32;
    let minus = |i: usize| (-l[i]).max(0) as u32;
    let idx = 0..vars.len();
    match flavor {
        BoxFlavor::Fl => binomial(sig, vars, l),
        BoxFlavor::Partial => {
            let d = |i: usize| WeylElement::partial(sig, vars[i]);
            &power_product(idx.clone().map(|i| (d(i), minus(i))), sig) - &power_product(idx.map(|i| (d(i), plus(i))), sig)
        }
        BoxFlavor::Rees { z } => {
            let zd = |i: usize| z * &WeylElement::partial(sig, vars[i]);
            &power_product(idx.clone().map(|i| (zd(i), minus(i))), sig)
                - &power_product(idx.map(|i| (zd(i), plus(i))), sig)
        }
        BoxFlavor::Tilde { m, z } => {
            let side = |k: &dyn Fn(usize) -> u32| {
                let mut out = WeylElement::one(sig);
                for i in 0..vars.len() {
                    let e = k(i);
                    if e == 0 {
                        continue;
                    }
                    let lam = WeylElement::var(sig, vars[i]);
                    let zd = z * &WeylElement::partial(sig, vars[i]);
                    if i < *m {
                        out = &(&out * &lam.pow(e)) * &zd.pow(e);
                    } else {
                        let lzd = &lam * &zd;
                        for nu in 1..=e as i64 {
                            out = &out * &(&lzd - &z.scale(&q(nu)));
                        }
                    }
                }
                out
            };
            let lam_l = idx.clone().fold(WeylElement::one(sig), |acc, i| &acc * &WeylElement::var_pow(sig, vars[i], l[i] as i32));
            &side(&plus) - &(&lam_l * &side(&minus))
        }
    }
}

/// Checks `tilde(l) * prod_{i >= m} lambda_i = -prod_{i >= m} lambda_i * lambda^{l+} * rees(l)`
/// exactly, which relates the localized boxes to the Rees boxes.
pub fn tilde_box_certificate(l: &[i64], m: usize, z: &WeylElement, sig: &Sig, vars: &[usize]) -> bool {
    let tilde = box_operator(l, &BoxFlavor::Tilde { m, z: z.clone() }, sig, vars);
    let rees = box_operator(l, &BoxFlavor::Rees { z: z.clone() }, sig, vars);
    let fiber = (m..vars.len()).fold(WeylElement::one(sig), |acc, i| &acc * &WeylElement::var(sig, vars[i]));
    let lplus = (0..vars.len()).fold(WeylElement::one(sig), |acc, i| &acc * &WeylElement::var(sig, vars[i]).pow(l[i].max(0) as u32));
    &tilde * &fiber == -(&(&fiber * &lplus) * &rees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Signature;

    fn twisted() -> IntMatrix {
        IntMatrix::from_rows(&[vec![1i64, 1, 1], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn trivial_kernel_gives_no_boxes() {
        let sig = Signature::new(&["l0", "l1"]).unwrap().into_arc();
        let m = IntMatrix::identity(2);
        assert!(toric_box_generators(&m, &BoxFlavor::Partial, &sig, &[0, 1]).unwrap().is_empty());
    }

    #[test]
    fn twisted_cubic_boxes() {
        let sig = Signature::new(&["l0", "l1", "l2"]).unwrap().with_central("z", false).unwrap().into_arc();
        let g = toric_box_generators(&twisted(), &BoxFlavor::Partial, &sig, &[0, 1, 2]).unwrap();
        assert_eq!(g.len(), 1);
        let s = g[0].to_string();
        assert!(s == "d_l1^2 - d_l0*d_l2" || s == "-d_l1^2 + d_l0*d_l2" || s == "d_l0*d_l2 - d_l1^2", "{s}");
        let z = WeylElement::central(&sig, 0);
        let r = toric_box_generators(&twisted(), &BoxFlavor::Rees { z }, &sig, &[0, 1, 2]).unwrap();
        let expected = crate::weyl::parse_element(&sig, "z^2*d_l0*d_l2 - z^2*d_l1^2").unwrap();
        assert!(r[0] == expected || r[0] == -expected.clone());
    }

    #[test]
    fn tilde_relates_to_rees() {
        let sig = Signature::new(&["l1", "l2", "l3", "z"])
            .unwrap()
            .with_invertible("l1")
            .unwrap()
            .with_invertible("l2")
            .unwrap()
            .with_invertible("l3")
            .unwrap()
            .into_arc();
        let z = WeylElement::var(&sig, 3);
        for (l, m) in [(vec![1i64, 1, -2], 2usize), (vec![2, -1, -1], 1), (vec![-1, 2, 1], 2), (vec![1, -1, 0], 0)] {
            assert!(tilde_box_certificate(&l, m, &z, &sig, &[0, 1, 2]), "{l:?} {m}");
        }
    }
}
