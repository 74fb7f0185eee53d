use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{buchberger, GroebnerError};
use crate::linalg::{kernel_lattice, IntMatrix};
use crate::weyl::{Monomial, Sig, Signature, TermOrder, WeylElement};

/// Binomial `x^{m+} - x^{m-}` on the variables `vars` of `sig`.
pub fn binomial(sig: &Sig, vars: &[usize], m: &[i64]) -> WeylElement {
    let width = sig.width();
    let mut plus = vec![0i32; width];
    let mut minus = vec![0i32; width];
    for (&v, &e) in vars.iter().zip(m) {
        if e > 0 {
            plus[v] = e as i32;
        } else {
            minus[v] = -e as i32;
        }
    }
    WeylElement::from_terms(
        sig,
        [(Monomial(plus), BigRational::one()), (Monomial(minus), -BigRational::one())],
    )
}

/// Generators of the toric ideal `I_B = (x^{m+} - x^{m-} : B m = 0)` as
/// exponent vectors `m`, read off a reduced Groebner basis.
///
/// The lattice ideal of a kernel basis is saturated by `x_1 ... x_s` through
/// elimination of an auxiliary variable `y` with `y x_1 ... x_s = 1`.
pub fn toric_ideal(b: &IntMatrix) -> Result<Vec<Vec<i64>>, GroebnerError> {
    let s = b.cols();
    let ker = kernel_lattice(b);
    if ker.rows() == 0 {
        return Ok(vec![]);
    }
    let mut names: Vec<String> = (0..s).map(|i| format!("x{i}")).collect();
    names.push("y".into());
    let sig = Signature::new(&names).expect("valid names").into_arc();
    let vars: Vec<usize> = (0..s).collect();
    let mut gens: Vec<WeylElement> = ker
        .to_i64_rows()
        .expect("kernel entries fit in i64")
        .iter()
        .map(|m| binomial(&sig, &vars, m))
        .collect();
    let mut all = vec![1i32; s + 1];
    all.extend(vec![0; s + 1]);
    gens.push(&WeylElement::monomial(&sig, Monomial(all), BigRational::one()) - &WeylElement::one(&sig));
    let mut weights = vec![0i64; 2 * (s + 1)];
    weights[s] = 1;
    let gb = buchberger(&gens, &TermOrder::weight(weights, TermOrder::Grevlex))?;
    let mut out = Vec::new();
    for g in &gb.generators {
        let terms: Vec<(&Monomial, &BigRational)> = g.terms().collect();
        if terms.iter().any(|(m, _)| m.0[s] != 0) {
            continue;
        }
        assert_eq!(terms.len(), 2, "toric ideal element is a binomial");
        let (lead, _) = g.leading(&TermOrder::Grevlex).expect("nonzero");
        let other = terms.iter().find(|(m, _)| *m != lead).expect("binomial").0;
        out.push((0..s).map(|i| (lead.0[i] - other.0[i]).to_i64().expect("small")).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_cubic() {
        let b = IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
        let gens = toric_ideal(&b).unwrap();
        assert_eq!(gens.len(), 3);
        for m in &gens {
            assert!(b.mul_vec_i64(m).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn saturation_is_needed() {
        // The kernel basis {(1,-2,1,0), (0,1,-2,1)} alone misses x0 x3 - x1 x2.
        let b = IntMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
        let gens = toric_ideal(&b).unwrap();
        assert!(gens.iter().any(|m| m.iter().map(|x| x.abs()).sum::<i64>() == 4 && m[0] != 0 && m[3] != 0));
    }

    #[test]
    fn no_relations() {
        let b = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(toric_ideal(&b).unwrap().is_empty());
    }
}
