use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::koszul::compositions;
use super::HomologicalError;
use crate::gkz::{build_gkz, duality_morphism, DualityData};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::linalg::rational::{rank_of, SparseVec};
use crate::linalg::IntMatrix;
use crate::weyl::{Monomial, TermOrder, WeylElement};

/// Extra source filtration levels used to approximate the image beyond the
/// checked levels.
pub const STRICTNESS_SLACK: usize = 2;

/// Default exponent bound for the degrees scanned by `strictness_check`.
pub const DEFAULT_STRICTNESS_BOUND: usize = 3;

/// A grading `deg(x_i) = g_i`, `deg(d_i) = -g_i` with one column per variable.
/// The first row must be positive so that every graded piece of a filtration
/// step is finite dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub rows: Vec<Vec<i64>>,
}

impl Grading {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, HomologicalError> {
        let ok = rows.first().is_some_and(|r| r.iter().all(|&g| g > 0))
            && rows.iter().all(|r| r.len() == rows[0].len());
        if !ok {
            return Err(HomologicalError::NotWellDefined("grading needs a positive first row".into()));
        }
        Ok(Grading { rows })
    }

    /// The torus grading by the columns of `a`.
    pub fn from_matrix(a: &IntMatrix) -> Result<Self, HomologicalError> {
        Grading::new(a.to_i64_rows()?)
    }

    fn nvars(&self) -> usize {
        self.rows[0].len()
    }

    pub fn degree(&self, m: &Monomial) -> Vec<i64> {
        let n = self.nvars();
        let (x, d) = (m.x(n), m.d(n));
        self.rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, g)| g * (x[i] - d[i]) as i64).sum())
            .collect()
    }

    fn element_degree(&self, f: &WeylElement) -> Result<Option<Vec<i64>>, HomologicalError> {
        let degs: BTreeSet<Vec<i64>> = f.terms().map(|(m, _)| self.degree(m)).collect();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(degs.into_iter().next()),
            _ => Err(HomologicalError::NotHomogeneous(f.to_string())),
        }
    }

    /// Exponent vectors `u >= 0` with `G u = rhs`.
    fn solutions(&self, rhs: &[i64]) -> Vec<Vec<i32>> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0i32; n];
        let mut acc = vec![0i64; self.rows.len()];
        self.search(0, rhs, &mut cur, &mut acc, &mut out);
        out
    }

    fn search(&self, i: usize, rhs: &[i64], cur: &mut Vec<i32>, acc: &mut Vec<i64>, out: &mut Vec<Vec<i32>>) {
        if i == cur.len() {
            if acc[..] == rhs[..] {
                out.push(cur.clone());
            }
            return;
        }
        let g0 = self.rows[0][i];
        let mut k = 0i32;
        while acc[0] + g0 * k as i64 <= rhs[0] {
            cur[i] = k;
            let saved = acc.clone();
            for (a, r) in acc.iter_mut().zip(&self.rows) {
                *a += r[i] * k as i64;
            }
            self.search(i + 1, rhs, cur, acc, out);
            *acc = saved;
            k += 1;
        }
        cur[i] = 0;
    }
}

/// `D / I` with `F_p = (F^ord_{p - shift} D + I) / I`. Standard monomials of a
/// Groebner basis for an order refining the order filtration give a basis of
/// every `F_p`.
#[derive(Clone, Debug)]
pub struct FilteredQuotient {
    pub gb: GroebnerBasis,
    pub shift: i64,
}

impl FilteredQuotient {
    pub fn new(generators: &[WeylElement], shift: i64) -> Result<Self, HomologicalError> {
        Ok(FilteredQuotient { gb: buchberger(generators, &TermOrder::WeylStd)?, shift })
    }

    fn nvars(&self) -> usize {
        self.gb.sig.nvars()
    }

    /// Standard monomials of degree `alpha` and order at most `max_order`.
    fn standard_piece(&self, grading: &Grading, alpha: &[i64], max_order: i64) -> Vec<Monomial> {
        let n = self.nvars();
        let width = self.gb.sig.width();
        let mut out = Vec::new();
        for o in 0..=max_order.max(-1) {
            for v in compositions(n, o as usize) {
                let shifted: Vec<i64> = grading
                    .rows
                    .iter()
                    .zip(alpha)
                    .map(|(r, a)| a + r.iter().zip(&v).map(|(g, e)| g * *e as i64).sum::<i64>())
                    .collect();
                if shifted[0] < 0 {
                    continue;
                }
                for u in grading.solutions(&shifted) {
                    let mut e = vec![0i32; width];
                    e[..n].copy_from_slice(&u);
                    e[n..2 * n].copy_from_slice(&v);
                    let m = Monomial(e);
                    if self.gb.is_standard(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnapshotPiece {
    pub level: i64,
    pub basis: Vec<String>,
}

/// Normal-form bases of `F_p` in one graded degree, for `p` from `shift` to
/// `shift + bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationSnapshot {
    pub degree: Vec<i64>,
    pub shift: i64,
    pub bound: usize,
    pub pieces: Vec<SnapshotPiece>,
}

pub fn filtration_snapshot(
    module: &FilteredQuotient,
    grading: &Grading,
    degree: &[i64],
    bound: usize,
) -> Result<FiltrationSnapshot, HomologicalError> {
    check_grading(module, grading, degree)?;
    let n = module.nvars();
    let all = module.standard_piece(grading, degree, bound as i64);
    let sig = &module.gb.sig;
    let pieces = (0..=bound as i64)
        .map(|rel| SnapshotPiece {
            level: module.shift + rel,
            basis: all
                .iter()
                .filter(|m| m.order(n) <= rel)
                .map(|m| WeylElement::monomial(sig, m.clone(), BigRational::one()).to_string())
                .collect(),
        })
        .collect();
    Ok(FiltrationSnapshot { degree: degree.to_vec(), shift: module.shift, bound, pieces })
}

fn check_grading(module: &FilteredQuotient, grading: &Grading, degree: &[i64]) -> Result<(), HomologicalError> {
    if grading.nvars() != module.nvars() || degree.len() != grading.rows.len() || module.gb.sig.ncentral() != 0 {
        return Err(HomologicalError::NotWellDefined("grading does not match the module".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictnessFailure {
    pub degree: Vec<i64>,
    pub level: i64,
    /// `dim d(F_p M)`.
    pub image_dim: usize,
    /// `dim (F_p N ∩ im d)`, from the image of source levels up to `bound + slack`.
    pub intersection_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictnessReport {
    pub multiplier: String,
    pub bound: usize,
    pub slack: usize,
    pub source_shift: i64,
    pub target_shift: i64,
    pub degrees_checked: usize,
    pub levels_checked: usize,
    /// `d(F_p M) ⊆ F_p N` on every source basis element used.
    pub filtered: bool,
    pub strict: bool,
    pub failures: Vec<StrictnessFailure>,
}

/// Checks `d(F_p M) = F_p N ∩ im d` dimension-wise for `d(P) = P R` from
/// `M = D/I` to `N = D/J`, at levels `p = target.shift + l` for `0 <= l <= bound`
/// and in every graded degree of a source monomial `x^u d^v` with
/// `|u|, |v| <= bound`.
pub fn strictness_check(
    source: &FilteredQuotient,
    target: &FilteredQuotient,
    multiplier: &WeylElement,
    grading: &Grading,
    bound: usize,
) -> Result<StrictnessReport, HomologicalError> {
    let sig = &target.gb.sig;
    if source.gb.sig.vars() != sig.vars() {
        return Err(HomologicalError::NotWellDefined("source and target use different variables".into()));
    }
    let zero = vec![0i64; grading.rows.len()];
    check_grading(source, grading, &zero)?;
    check_grading(target, grading, &zero)?;
    for g in source.gb.generators.iter().chain(&target.gb.generators) {
        grading.element_degree(g)?;
    }
    let r = multiplier.with_signature(sig)?;
    let delta = grading.element_degree(&r)?.unwrap_or(zero.clone());
    for g in &source.gb.generators {
        let image = &g.with_signature(sig)? * &r;
        if !target.gb.normal_form(&image)?.is_zero() {
            return Err(HomologicalError::NotWellDefined(format!("{g} times {r} is not in the target ideal")));
        }
    }

    let n = sig.nvars();
    let (s, t) = (source.shift, target.shift);
    let top = bound as i64 + STRICTNESS_SLACK as i64 + t - s;
    let mut degrees = BTreeSet::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for u in compositions(n, a) {
                for v in compositions(n, b) {
                    let mut e = vec![0i32; sig.width()];
                    e[..n].copy_from_slice(&u);
                    e[n..2 * n].copy_from_slice(&v);
                    degrees.insert(grading.degree(&Monomial(e)));
                }
            }
        }
    }

    let mut report = StrictnessReport {
        multiplier: r.to_string(),
        bound,
        slack: STRICTNESS_SLACK,
        source_shift: s,
        target_shift: t,
        degrees_checked: 0,
        levels_checked: 0,
        filtered: true,
        strict: true,
        failures: Vec::new(),
    };
    let mut any_source = false;
    for beta in degrees {
        let basis = source.standard_piece(grading, &beta, top);
        if basis.is_empty() {
            continue;
        }
        any_source = true;
        let alpha: Vec<i64> = beta.iter().zip(&delta).map(|(a, b)| a + b).collect();
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let mut coord_order: Vec<i64> = Vec::new();
        let mut images: Vec<(i64, SparseVec)> = Vec::with_capacity(basis.len());
        for m in &basis {
            let mono = WeylElement::monomial(sig, m.clone(), BigRational::one());
            let nf = target.gb.normal_form(&(&mono * &r))?;
            let mut col = SparseVec::new();
            let mut top_order = i64::MIN;
            for (tm, c) in nf.terms() {
                let next = index.len();
                let j = *index.entry(tm.clone()).or_insert(next);
                if j == coord_order.len() {
                    coord_order.push(tm.order(n));
                }
                top_order = top_order.max(tm.order(n));
                col.insert(j, c.clone());
            }
            let src_level = m.order(n) + s;
            if !col.is_empty() && top_order + t > src_level {
                report.filtered = false;
            }
            images.push((src_level, col));
        }
        let all: Vec<SparseVec> = images.iter().map(|(_, c)| c.clone()).collect();
        let full_rank = rank_of(&all);
        report.degrees_checked += 1;
        for rel in 0..=bound as i64 {
            let p = t + rel;
            let from_step: Vec<SparseVec> =
                images.iter().filter(|(lvl, _)| *lvl <= p).map(|(_, c)| c.clone()).collect();
            let image_dim = rank_of(&from_step);
            let above: Vec<SparseVec> = all
                .iter()
                .map(|c| c.iter().filter(|(j, _)| coord_order[**j] + t > p).map(|(j, v)| (*j, v.clone())).collect())
                .collect();
            let intersection_dim = full_rank - rank_of(&above);
            report.levels_checked += 1;
            if image_dim != intersection_dim {
                report.strict = false;
                report.failures.push(StrictnessFailure { degree: alpha.clone(), level: p, image_dim, intersection_dim });
            }
        }
    }
    if !any_source {
        return Err(HomologicalError::BoundTooSmall(bound));
    }
    Ok(report)
}

/// Strictness of `P -> P d^k` from `(M^{-c̃}, F^ord_{• - c_0})` to `(M^0, F^ord_•)`.
pub fn duality_strictness(
    a_tilde: &IntMatrix,
    data: &DualityData,
    bound: usize,
) -> Result<StrictnessReport, HomologicalError> {
    let source = build_gkz(a_tilde, &data.dual_parameter)?;
    let target = build_gkz(a_tilde, &vec![0; a_tilde.rows()])?;
    let src = FilteredQuotient::new(&source.generators, data.c_tilde[0])?;
    let tgt = FilteredQuotient::new(&target.generators, 0)?;
    let r = duality_morphism(&WeylElement::one(&target.sig), data);
    strictness_check(&src, &tgt, &r, &Grading::from_matrix(a_tilde)?, bound)
}
