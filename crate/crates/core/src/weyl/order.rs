use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

/// Term orders on normally ordered monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermOrder {
    /// Total partial degree first; ties by the partial exponents compared from the
    /// highest index down, then the variable exponents the same way, then central
    /// parameters.
    WeylStd,
    /// Degree reverse lexicographic on the full exponent layout.
    Grevlex,
    /// Compare `weights . e` first, then fall back to `tie`.
    Weight { weights: Vec<i64>, tie: Box<TermOrder> },
}

impl TermOrder {
    pub fn weight(weights: Vec<i64>, tie: TermOrder) -> Self {
        TermOrder::Weight { weights, tie: Box::new(tie) }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        match self {
            TermOrder::WeylStd => {
                let da = a.order(n);
                let db = b.order(n);
                da.cmp(&db)
                    .then_with(|| rev_lex(a.d(n), b.d(n)))
                    .then_with(|| rev_lex(a.x(n), b.x(n)))
                    .then_with(|| rev_lex(a.c(n), b.c(n)))
            }
            TermOrder::Grevlex => {
                let ta = a.total_degree();
                let tb = b.total_degree();
                ta.cmp(&tb).then_with(|| {
                    for (x, y) in a.0.iter().zip(&b.0).rev() {
                        if x != y {
                            // Smaller exponent in the last differing slot is larger.
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            TermOrder::Weight { weights, tie } => {
                let wa = weigh(weights, a);
                let wb = weigh(weights, b);
                wa.cmp(&wb).then_with(|| tie.cmp(a, b, n))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::WeylStd => "weyl-std".into(),
            TermOrder::Grevlex => "grevlex".into(),
            TermOrder::Weight { weights, tie } => format!("weight{weights:?}+{}", tie.name()),
        }
    }
}

fn rev_lex(a: &[i32], b: &[i32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

pub(crate) fn weigh(weights: &[i64], m: &Monomial) -> i64 {
    weights.iter().zip(&m.0).map(|(w, e)| w * *e as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: &[i32], d: &[i32]) -> Monomial {
        Monomial::from_parts(x, d, &[])
    }

    #[test]
    fn weyl_std_prefers_partials() {
        let o = TermOrder::WeylStd;
        assert_eq!(o.cmp(&m(&[2], &[1]), &m(&[0], &[0]), 1), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[5, 0], &[0, 0]), &m(&[0, 0], &[1, 0]), 2), Ordering::Less);
        // d_1 beats d_0 at equal order.
        assert_eq!(o.cmp(&m(&[1, 0], &[1, 0]), &m(&[0, 1], &[0, 1]), 2), Ordering::Less);
    }

    #[test]
    fn grevlex_basics() {
        let o = TermOrder::Grevlex;
        let a = Monomial::from_parts(&[1, 1, 0], &[], &[]);
        let b = Monomial::from_parts(&[2, 0, 0], &[], &[]);
        let c = Monomial::from_parts(&[0, 1, 1], &[], &[]);
        assert_eq!(o.cmp(&b, &a, 0), Ordering::Greater);
        assert_eq!(o.cmp(&a, &c, 0), Ordering::Greater);
    }
}
