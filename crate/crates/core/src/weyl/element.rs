use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Sig, TermOrder, WeylError};

/// Exponent vector laid out as `[x_0..x_{n-1}, d_0..d_{n-1}, c_0..c_{k-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<i32>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn from_parts(x: &[i32], d: &[i32], c: &[i32]) -> Self {
        let mut e = Vec::with_capacity(x.len() + d.len() + c.len());
        e.extend_from_slice(x);
        e.extend_from_slice(d);
        e.extend_from_slice(c);
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn x(&self, n: usize) -> &[i32] {
        &self.0[..n]
    }

    pub fn d(&self, n: usize) -> &[i32] {
        &self.0[n..2 * n]
    }

    pub fn c(&self, n: usize) -> &[i32] {
        &self.0[2 * n..]
    }

    /// Total partial degree `|delta|`.
    pub fn order(&self, n: usize) -> i64 {
        self.d(n).iter().map(|&e| e as i64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn falling(c: i64, k: i64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r *= BigInt::from(c - i);
    }
    r
}

/// Product of two monomials in normal order:
/// `x^a d^b * x^c d^e = sum_k C(b,k) [c]_k x^(a+c-k) d^(b+e-k)` per variable,
/// with `h^(2k)` attached when the signature has a homogenizer.
pub(crate) fn mono_mul(n: usize, homogenizer: Option<usize>, a: &Monomial, b: &Monomial) -> Vec<(Monomial, BigInt)> {
    let mut base = Vec::with_capacity(a.0.len());
    for i in 0..a.0.len() {
        base.push(a.0[i] + b.0[i]);
    }
    let mut acc: Vec<(Vec<i32>, BigInt)> = vec![(base, BigInt::one())];
    for i in 0..n {
        let beta = a.0[n + i] as i64;
        let gamma = b.0[i] as i64;
        if beta == 0 || gamma == 0 {
            continue;
        }
        let kmax = if gamma > 0 { beta.min(gamma) } else { beta };
        let mut next = Vec::with_capacity(acc.len() * (kmax as usize + 1));
        for (e, c) in &acc {
            for k in 0..=kmax {
                let f = binomial(beta, k) * falling(gamma, k);
                if f.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] -= k as i32;
                e2[n + i] -= k as i32;
                if let Some(h) = homogenizer {
                    e2[2 * n + h] += 2 * k as i32;
                }
                next.push((e2, c * f));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(e, c)| (Monomial(e), c)).collect()
}

/// A normally ordered operator `sum c x^gamma d^delta` with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub(crate) sig: Sig,
    pub(crate) terms: BTreeMap<Monomial, BigRational>,
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl WeylElement {
    pub fn zero(sig: &Sig) -> Self {
        WeylElement { sig: Arc::clone(sig), terms: BTreeMap::new() }
    }

    pub fn constant(sig: &Sig, c: BigRational) -> Self {
        Self::monomial(sig, Monomial::one(sig.width()), c)
    }

    pub fn one(sig: &Sig) -> Self {
        Self::constant(sig, BigRational::one())
    }

    pub fn integer(sig: &Sig, c: i64) -> Self {
        Self::constant(sig, q(c))
    }

    pub fn monomial(sig: &Sig, m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeylElement { sig: Arc::clone(sig), terms }
    }

    pub fn var(sig: &Sig, i: usize) -> Self {
        Self::var_pow(sig, i, 1)
    }

    /// `x_i^e`; negative `e` is allowed for invertible variables.
    pub fn var_pow(sig: &Sig, i: usize, e: i32) -> Self {
        let mut m = Monomial::one(sig.width());
        m.0[i] = e;
        Self::monomial(sig, m, BigRational::one())
    }

    pub fn partial(sig: &Sig, i: usize) -> Self {
        Self::partial_pow(sig, i, 1)
    }

    pub fn partial_pow(sig: &Sig, i: usize, e: i32) -> Self {
        let mut m = Monomial::one(sig.width());
        m.0[sig.nvars() + i] = e;
        Self::monomial(sig, m, BigRational::one())
    }

    pub fn central(sig: &Sig, j: usize) -> Self {
        Self::central_pow(sig, j, 1)
    }

    pub fn central_pow(sig: &Sig, j: usize, e: i32) -> Self {
        let mut m = Monomial::one(sig.width());
        m.0[2 * sig.nvars() + j] = e;
        Self::monomial(sig, m, BigRational::one())
    }

    /// `x_i d_i`, the Euler field of one variable.
    pub fn theta(sig: &Sig, i: usize) -> Self {
        let mut m = Monomial::one(sig.width());
        m.0[i] = 1;
        m.0[sig.nvars() + i] = 1;
        Self::monomial(sig, m, BigRational::one())
    }

    pub fn from_terms(sig: &Sig, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut out = Self::zero(sig);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn signature(&self) -> &Sig {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn same_signature(&self, other: &WeylElement) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || *self.sig == *other.sig
    }

    fn check(&self, other: &WeylElement) -> Result<(), WeylError> {
        if self.same_signature(other) {
            Ok(())
        } else {
            Err(WeylError::SignatureMismatch)
        }
    }

    pub fn checked_add(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(other)?;
        let n = self.sig.nvars();
        let h = self.sig.homogenizer();
        let mut out = WeylElement::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (m, f) in mono_mul(n, h, ma, mb) {
                    out.add_term(m, &cab * BigRational::from_integer(f));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(&self.sig);
        }
        WeylElement { sig: Arc::clone(&self.sig), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> WeylElement {
        let mut out = WeylElement::one(&self.sig);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        Ok(self.checked_mul(other)? - other.checked_mul(self)?)
    }

    /// Maximal total partial degree; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        let n = self.sig.nvars();
        self.terms.keys().map(|m| m.order(n)).max()
    }

    pub fn leading(&self, order: &TermOrder) -> Option<(&Monomial, &BigRational)> {
        let n = self.sig.nvars();
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0, n))
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &BigRational)> {
        let n = self.sig.nvars();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0, n));
        v
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &TermOrder) -> WeylElement {
        match self.leading(order) {
            Some((_, c)) => self.scale(&(BigRational::one() / c)),
            None => self.clone(),
        }
    }

    /// Moves the element to another signature with the same layout.
    pub fn with_signature(&self, sig: &Sig) -> Result<WeylElement, WeylError> {
        if sig.width() != self.sig.width() || sig.nvars() != self.sig.nvars() {
            return Err(WeylError::SignatureMismatch);
        }
        Ok(WeylElement { sig: Arc::clone(sig), terms: self.terms.clone() })
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_factor(out: &mut String, name: &str, e: i32) {
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(name);
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

pub(crate) fn monomial_string(sig: &Sig, m: &Monomial) -> String {
    let n = sig.nvars();
    let mut s = String::new();
    for (j, &e) in m.c(n).iter().enumerate() {
        if e != 0 {
            write_factor(&mut s, sig.central_name(j), e);
        }
    }
    for (i, &e) in m.x(n).iter().enumerate() {
        if e != 0 {
            write_factor(&mut s, sig.var_name(i), e);
        }
    }
    for (i, &e) in m.d(n).iter().enumerate() {
        if e != 0 {
            write_factor(&mut s, &format!("d_{}", sig.var_name(i)), e);
        }
    }
    s
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.sorted_terms(&TermOrder::WeylStd).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = monomial_string(&self.sig, m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        self.checked_add(rhs).expect("signature mismatch in addition")
    }
}

impl Add for WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: WeylElement) -> WeylElement {
        &self + &rhs
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-BigRational::one())
    }
}

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Sub for WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: WeylElement) -> WeylElement {
        &self - &rhs
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.checked_mul(rhs).expect("signature mismatch in multiplication")
    }
}

impl Mul for WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: WeylElement) -> WeylElement {
        &self * &rhs
    }
}
