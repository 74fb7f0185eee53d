use std::cmp::Ordering;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::poly::{Ctx, Poly};
use super::GroebnerError;

type Quotient = Vec<(Monomial, BigRational)>;
use crate::weyl::{is_pure, Monomial, Sig, TermOrder, WeylElement};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Default step budget, overridable with `GKZ_HODGE_BUDGET`.
pub fn default_budget() -> u64 {
    std::env::var("GKZ_HODGE_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_skipped: usize,
    pub reductions: u64,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub sig: Sig,
    pub order: TermOrder,
    /// Reduced, monic, sorted ascending by leading monomial.
    pub generators: Vec<WeylElement>,
    /// Every generator is pure along the signature's marked variable.
    pub pure_flag: bool,
    pub stats: GbStats,
    pub(crate) polys: Vec<Poly>,
}

pub(crate) struct Reducer<'a> {
    pub ctx: &'a Ctx,
    pub budget: u64,
    pub steps: u64,
}

impl Reducer<'_> {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(GroebnerError::ResourceLimit { steps: self.budget });
        }
        Ok(())
    }

    /// Full normal form of `p` modulo `basis` (leading-term division, then tail).
    pub fn normal_form(&mut self, p: Poly, basis: &[Poly]) -> Result<Poly, GroebnerError> {
        let mut p = p;
        let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((m, c)) = p.lead().cloned() {
            let reducer = basis.iter().find(|g| g.lm().divides(&m));
            match reducer {
                Some(g) => {
                    self.tick()?;
                    let (gm, gc) = g.lead().expect("nonzero basis element");
                    let q = m.quotient(gm);
                    let f = &c / gc;
                    let t = self.ctx.mul_mono(&q, &f, g);
                    let next = self.ctx.sub(&p, &t);
                    if let Some((nm, _)) = next.lead() {
                        if self.ctx.cmp(nm, &m) != Ordering::Less {
                            return Err(GroebnerError::OrderNotMultiplicative);
                        }
                    }
                    p = next;
                }
                None => {
                    rem.push(p.terms.pop().expect("lead exists"));
                }
            }
        }
        rem.reverse();
        Ok(Poly { terms: rem })
    }

    /// Division with quotients: `p = sum q_l basis_l + remainder`.
    pub fn divide(&mut self, p: Poly, basis: &[Poly]) -> Result<(Vec<Quotient>, Poly), GroebnerError> {
        let mut quotients = vec![Vec::new(); basis.len()];
        let mut p = p;
        let mut rem: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((m, c)) = p.lead().cloned() {
            match basis.iter().position(|g| g.lm().divides(&m)) {
                Some(l) => {
                    self.tick()?;
                    let (gm, gc) = basis[l].lead().expect("nonzero basis element");
                    let qm = m.quotient(gm);
                    let f = &c / gc;
                    let t = self.ctx.mul_mono(&qm, &f, &basis[l]);
                    p = self.ctx.sub(&p, &t);
                    quotients[l].push((qm, f));
                }
                None => rem.push(p.terms.pop().expect("lead exists")),
            }
        }
        rem.reverse();
        Ok((quotients, Poly { terms: rem }))
    }

    pub fn s_poly(&mut self, f: &Poly, g: &Poly) -> Poly {
        let (fm, fc) = f.lead().expect("nonzero");
        let (gm, gc) = g.lead().expect("nonzero");
        let l = fm.lcm(gm);
        let a = self.ctx.mul_mono(&l.quotient(fm), &(BigRational::one() / fc), f);
        let b = self.ctx.mul_mono(&l.quotient(gm), &(BigRational::one() / gc), g);
        self.ctx.sub(&a, &b)
    }
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0)
}

/// Indices of Weyl pairs and central parameters touched anywhere in `p`.
fn support(p: &Poly, n: usize) -> Vec<bool> {
    let width = p.terms.first().map_or(0, |t| t.0 .0.len());
    let mut s = vec![false; n + width.saturating_sub(2 * n)];
    for (m, _) in &p.terms {
        for i in 0..n {
            if m.0[i] != 0 || m.0[n + i] != 0 {
                s[i] = true;
            }
        }
        for j in 2 * n..width {
            if m.0[j] != 0 {
                s[n + j - 2 * n] = true;
            }
        }
    }
    s
}

fn partial_free(p: &Poly, n: usize) -> bool {
    p.terms.iter().all(|(m, _)| m.d(n).iter().all(|&e| e == 0))
}

/// The product criterion is used only when the two elements commute: both are
/// free of partials, or their Weyl-pair supports are disjoint.
fn product_criterion(f: &Poly, g: &Poly, n: usize) -> bool {
    if !coprime(f.lm(), g.lm()) {
        return false;
    }
    if partial_free(f, n) && partial_free(g, n) {
        return true;
    }
    let sf = support(f, n);
    let sg = support(g, n);
    (0..n).all(|i| !(sf[i] && sg[i]))
}

fn check_inputs(gens: &[WeylElement], sig: &Sig) -> Result<(), GroebnerError> {
    if gens.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    for g in gens {
        if !g.same_signature(&WeylElement::zero(sig)) {
            return Err(GroebnerError::SignatureMismatch);
        }
        if g.is_zero() {
            return Err(GroebnerError::ZeroInput);
        }
        if g.has_negative_exponents() {
            return Err(GroebnerError::NegativeExponent);
        }
    }
    Ok(())
}

fn validate_order(order: &TermOrder, sig: &Sig) -> Result<(), GroebnerError> {
    if let TermOrder::Weight { weights, tie } = order {
        let n = sig.nvars();
        let w = |k: usize| weights.get(k).copied().unwrap_or(0);
        if (0..n).any(|i| w(i) + w(n + i) < 0) {
            return Err(GroebnerError::OrderNotMultiplicative);
        }
        validate_order(tie, sig)?;
    }
    Ok(())
}

pub fn buchberger(gens: &[WeylElement], order: &TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_budget(gens, order, default_budget())
}

pub fn buchberger_with_budget(gens: &[WeylElement], order: &TermOrder, budget: u64) -> Result<GroebnerBasis, GroebnerError> {
    let sig = gens.first().ok_or(GroebnerError::EmptyInput)?.signature().clone();
    check_inputs(gens, &sig)?;
    validate_order(order, &sig)?;
    let ctx = Ctx::new(&sig, order);
    let n = ctx.n;
    let mut red = Reducer { ctx: &ctx, budget, steps: 0 };
    let mut stats = GbStats::default();
    let mut basis: Vec<Poly> = Vec::new();
    // done[i][j] for i < j: the pair has been treated or discarded.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut treated: Vec<Vec<bool>> = Vec::new();

    let add = |p: Poly, basis: &mut Vec<Poly>, pairs: &mut Vec<(usize, usize)>, treated: &mut Vec<Vec<bool>>| {
        let k = basis.len();
        basis.push(p.monic());
        for row in treated.iter_mut() {
            row.push(false);
        }
        treated.push(vec![false; k + 1]);
        for i in 0..k {
            pairs.push((i, k));
        }
    };

    for g in gens {
        let p = red.normal_form(ctx.poly(g), &basis)?;
        if !p.is_zero() {
            add(p, &mut basis, &mut pairs, &mut treated);
        }
    }

    while !pairs.is_empty() {
        // Normal strategy: smallest lcm (total degree, then term order), then indices.
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (i1, j1) = pairs[a];
                let (i2, j2) = pairs[b];
                let l1 = basis[i1].lm().lcm(basis[j1].lm());
                let l2 = basis[i2].lm().lcm(basis[j2].lm());
                l1.total_degree()
                    .cmp(&l2.total_degree())
                    .then_with(|| ctx.cmp(&l1, &l2))
                    .then_with(|| (j1, i1).cmp(&(j2, i2)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);
        stats.pairs_considered += 1;
        treated[i][j] = true;
        treated[j][i] = true;
        if product_criterion(&basis[i], &basis[j], n) {
            stats.pairs_skipped += 1;
            continue;
        }
        let l = basis[i].lm().lcm(basis[j].lm());
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && basis[k].lm().divides(&l) && treated[i][k] && treated[j][k]
        });
        if chain {
            stats.pairs_skipped += 1;
            continue;
        }
        let sp = red.s_poly(&basis[i], &basis[j]);
        let r = red.normal_form(sp, &basis)?;
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut treated);
        }
    }

    // Minimize: drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Poly> = keep.into_iter().map(|i| basis[i].clone()).collect();
    // Interreduce.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p.clone()).collect();
        let lead = minimal[i].lead().cloned().expect("nonzero");
        let mut tail = minimal[i].clone();
        tail.terms.pop();
        let mut r = red.normal_form(tail, &others)?;
        r.terms.push(lead);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));
    stats.reductions = red.steps;
    let generators: Vec<WeylElement> = reduced.iter().map(|p| ctx.to_element(&sig, p)).collect();
    let pure_flag = sig.marked().is_some() && generators.iter().all(|g| is_pure(g) == Some(true));
    Ok(GroebnerBasis { sig: Arc::clone(&sig), order: order.clone(), generators, pure_flag, stats, polys: reduced })
}

impl GroebnerBasis {
    fn ctx(&self) -> Ctx {
        Ctx::new(&self.sig, &self.order)
    }

    pub fn normal_form(&self, p: &WeylElement) -> Result<WeylElement, GroebnerError> {
        if !p.same_signature(&WeylElement::zero(&self.sig)) {
            return Err(GroebnerError::SignatureMismatch);
        }
        if p.has_negative_exponents() {
            return Err(GroebnerError::NegativeExponent);
        }
        let ctx = self.ctx();
        let mut red = Reducer { ctx: &ctx, budget: default_budget(), steps: 0 };
        let r = red.normal_form(ctx.poly(p), &self.polys)?;
        Ok(ctx.to_element(&self.sig, &r))
    }

    pub fn contains(&self, p: &WeylElement) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|p| p.lm().divides(m))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True if the basis is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.lm().0.iter().all(|&e| e == 0))
    }

    /// Quotients `q_l` and remainder `r` with `p = sum q_l g_l + r`.
    pub fn divide(&self, p: &WeylElement) -> Result<(Vec<WeylElement>, WeylElement), GroebnerError> {
        if p.has_negative_exponents() {
            return Err(GroebnerError::NegativeExponent);
        }
        let ctx = self.ctx();
        let mut red = Reducer { ctx: &ctx, budget: default_budget(), steps: 0 };
        let (qs, r) = red.divide(ctx.poly(p), &self.polys)?;
        let qs = qs.into_iter().map(|t| WeylElement::from_terms(&self.sig, t)).collect();
        Ok((qs, ctx.to_element(&self.sig, &r)))
    }

    /// Checks every S-pair (no criteria) reduces to zero.
    pub fn verify_s_pair_criterion(&self) -> Result<bool, GroebnerError> {
        let ctx = self.ctx();
        let mut red = Reducer { ctx: &ctx, budget: default_budget(), steps: 0 };
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let sp = red.s_poly(&self.polys[i], &self.polys[j]);
                if !red.normal_form(sp, &self.polys)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Same left ideal: each basis reduces the other's generators to zero.
    pub fn same_ideal(&self, other: &GroebnerBasis) -> Result<bool, GroebnerError> {
        for g in &other.generators {
            if !self.contains(&g.with_signature(&self.sig).map_err(|_| GroebnerError::SignatureMismatch)?)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(&g.with_signature(&other.sig).map_err(|_| GroebnerError::SignatureMismatch)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Division of `p` by an arbitrary list (not necessarily a Groebner basis).
pub fn normal_form(p: &WeylElement, g: &[WeylElement], order: &TermOrder) -> Result<WeylElement, GroebnerError> {
    let sig = p.signature().clone();
    let ctx = Ctx::new(&sig, order);
    let polys: Vec<Poly> = g.iter().filter(|e| !e.is_zero()).map(|e| ctx.poly(e)).collect();
    let mut red = Reducer { ctx: &ctx, budget: default_budget(), steps: 0 };
    let r = red.normal_form(ctx.poly(p), &polys)?;
    Ok(ctx.to_element(&sig, &r))
}

/// `sp(P, Q) = m_P P - (p/q) m_Q Q` with `m_P = lcm / lm(P)`, `m_Q = lcm / lm(Q)`,
/// where `p`, `q` are the leading coefficients.
pub fn s_pair(p: &WeylElement, q: &WeylElement, order: &TermOrder) -> Result<WeylElement, GroebnerError> {
    if p.is_zero() || q.is_zero() {
        return Err(GroebnerError::ZeroInput);
    }
    if !p.same_signature(q) {
        return Err(GroebnerError::SignatureMismatch);
    }
    let sig = p.signature().clone();
    let ctx = Ctx::new(&sig, order);
    let fp = ctx.poly(p);
    let fq = ctx.poly(q);
    let (pm, pc) = fp.lead().expect("nonzero");
    let (qm, qc) = fq.lead().expect("nonzero");
    let l = pm.lcm(qm);
    let a = ctx.mul_mono(&l.quotient(pm), &BigRational::one(), &fp);
    let b = ctx.mul_mono(&l.quotient(qm), &(pc / qc), &fq);
    Ok(ctx.to_element(&sig, &ctx.sub(&a, &b)))
}
