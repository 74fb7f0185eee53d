use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::complex::ComplexPiece;
use super::HomologicalError;
use crate::gkz::{build_as_u, build_gkz_named, euler_certificates, SystemPresentation};
use crate::groebner::{binomial, buchberger, toric_ideal, GroebnerBasis};
use crate::linalg::rational::SparseVec;
use crate::linalg::{positive_functional, IntMatrix};
use crate::weyl::{q, Monomial, Sig, Signature, TermOrder, WeylElement};

/// Default weight bound for the Koszul regularity scan.
pub const DEFAULT_KOSZUL_BOUND: usize = 6;

/// Koszul complex of commuting Euler operators acting by right multiplication on
/// `D / (boxes)`. Chains are maps from index subsets (bit masks) to operators.
#[derive(Clone, Debug)]
pub struct EulerKoszul {
    pub sig: Sig,
    pub boxes: Vec<WeylElement>,
    pub eulers: Vec<WeylElement>,
}

pub type Chain = BTreeMap<u32, WeylElement>;

pub fn euler_koszul(p: &SystemPresentation) -> Result<EulerKoszul, HomologicalError> {
    let (commute, certs) = euler_certificates(p)?;
    if !commute {
        return Err(HomologicalError::NotWellDefined("Euler operators do not commute".into()));
    }
    if let Some(c) = certs.iter().find(|c| c.constant.is_none()) {
        return Err(HomologicalError::NotWellDefined(format!(
            "right multiplication by generator {} does not preserve the box ideal",
            c.euler
        )));
    }
    if p.eulers.len() > 31 {
        return Err(HomologicalError::NotWellDefined("too many Euler operators".into()));
    }
    Ok(EulerKoszul { sig: p.sig.clone(), boxes: p.boxes(), eulers: p.euler_operators() })
}

impl EulerKoszul {
    pub fn len(&self) -> usize {
        self.eulers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eulers.is_empty()
    }

    /// `d(P e_S) = sum_{j in S} (-1)^{#(s in S, s < j)} P E_j e_{S - j}`.
    pub fn differential(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (&mask, p) in chain {
            for (j, e) in self.eulers.iter().enumerate() {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let below = (mask & ((1 << j) - 1)).count_ones();
                let mut term = p * e;
                if below % 2 == 1 {
                    term = -term;
                }
                let slot = out.entry(mask & !(1 << j)).or_insert_with(|| WeylElement::zero(&self.sig));
                *slot = &*slot + &term;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `d d (e_S) = 0` for every subset `S`, exactly in the Weyl algebra.
    pub fn d_squared_zero(&self) -> bool {
        (0u32..(1 << self.len())).all(|mask| {
            let chain: Chain = [(mask, WeylElement::one(&self.sig))].into_iter().collect();
            self.differential(&self.differential(&chain)).is_empty()
        })
    }

    /// `H_0 = D / (boxes, Eulers)`.
    pub fn h0_generators(&self) -> Vec<WeylElement> {
        self.boxes.iter().chain(&self.eulers).cloned().collect()
    }
}

/// A graded quotient `Q[x] / I` of a polynomial ring. Each variable carries a
/// degree vector and a positive weight, a linear function of the degree, so
/// that every graded piece is finite and pieces of bounded weight can be listed.
#[derive(Clone, Debug)]
pub struct CommutativeQuotient {
    pub sig: Sig,
    pub gb: Option<GroebnerBasis>,
    pub var_degrees: Vec<Vec<i64>>,
    pub weights: Vec<i64>,
}

/// Weights `y . deg(x_i) > 0` for a functional `y`; all ones for ungraded variables.
pub(crate) fn positive_weights(var_degrees: &[Vec<i64>]) -> Result<Vec<i64>, HomologicalError> {
    let q = var_degrees.first().map_or(0, Vec::len);
    if q == 0 {
        return Ok(vec![1; var_degrees.len()]);
    }
    let y = positive_functional(var_degrees, q)
        .ok_or_else(|| HomologicalError::NotWellDefined("no positive weight on the variable degrees".into()))?;
    let w: Vec<i64> = var_degrees.iter().map(|d| d.iter().zip(&y).map(|(a, b)| a * b).sum()).collect();
    if w.iter().any(|&x| x <= 0) {
        return Err(HomologicalError::NotWellDefined("a variable has degree zero".into()));
    }
    Ok(w)
}

impl CommutativeQuotient {
    pub fn new(sig: &Sig, relations: &[WeylElement], var_degrees: Vec<Vec<i64>>) -> Result<Self, HomologicalError> {
        let weights = positive_weights(&var_degrees)?;
        let gb = if relations.is_empty() { None } else { Some(buchberger(relations, &TermOrder::Grevlex)?) };
        Ok(CommutativeQuotient { sig: sig.clone(), gb, var_degrees, weights })
    }

    fn nvars(&self) -> usize {
        self.sig.nvars()
    }

    /// `(weight, sum_i u_i deg(x_i))`.
    pub fn degree(&self, m: &Monomial) -> Vec<i64> {
        slot_degree(m.x(self.nvars()), &self.var_degrees, &self.weights)
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.gb.as_ref().is_none_or(|g| g.is_standard(m))
    }

    /// Standard monomials of weight `total`, grouped by degree.
    pub fn standard_monomials(&self, total: usize) -> HashMap<Vec<i64>, Vec<Monomial>> {
        let n = self.nvars();
        let width = self.sig.width();
        let mut out: HashMap<Vec<i64>, Vec<Monomial>> = HashMap::new();
        for u in weighted_compositions(&self.weights, total) {
            let mut e = vec![0i32; width];
            e[..n].copy_from_slice(&u);
            let m = Monomial(e);
            if self.is_standard(&m) {
                out.entry(self.degree(&m)).or_default().push(m);
            }
        }
        out
    }

    pub fn normal_form(&self, p: &WeylElement) -> Result<WeylElement, HomologicalError> {
        Ok(match &self.gb {
            Some(g) => g.normal_form(p)?,
            None => p.clone(),
        })
    }

    /// Degree of a homogeneous element.
    pub fn element_degree(&self, f: &WeylElement) -> Result<Vec<i64>, HomologicalError> {
        let degs: BTreeSet<Vec<i64>> = f.terms().map(|(m, _)| self.degree(m)).collect();
        match degs.len() {
            1 => Ok(degs.into_iter().next().expect("one degree")),
            _ => Err(HomologicalError::NotHomogeneous(f.to_string())),
        }
    }
}

pub(crate) fn slot_degree(e: &[i32], slot_degrees: &[Vec<i64>], weights: &[i64]) -> Vec<i64> {
    let q = slot_degrees.first().map_or(0, Vec::len);
    let mut d = vec![0i64; q + 1];
    for (k, &x) in e.iter().enumerate() {
        if x == 0 {
            continue;
        }
        d[0] += x as i64 * weights[k];
        for (t, g) in slot_degrees[k].iter().enumerate() {
            d[t + 1] += x as i64 * g;
        }
    }
    d
}

/// Exponent vectors `u >= 0` with `sum_i u_i weights_i = total`.
pub(crate) fn weighted_compositions(weights: &[i64], total: usize) -> Vec<Vec<i32>> {
    fn rec(i: usize, left: i64, weights: &[i64], cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = left / weights[i];
        while k >= 0 {
            cur[i] = k as i32;
            rec(i + 1, left - k * weights[i], weights, cur, out);
            k -= 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0i32; weights.len()];
    rec(0, total as i64, weights, &mut cur, &mut out);
    out
}

/// All exponent vectors of length `n` with entry sum `total`, in lex order.
pub(crate) fn compositions(n: usize, total: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as i32;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k as i32;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Koszul homology dimensions in one degree: `homology[i] = dim H_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulPiece {
    pub degree: Vec<i64>,
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub bound: usize,
    pub pieces: Vec<KoszulPiece>,
    pub positive_homology_vanishes: bool,
    pub all_complexes: bool,
}

impl KoszulReport {
    pub fn h0(&self) -> BTreeMap<Vec<i64>, usize> {
        self.pieces.iter().map(|p| (p.degree.clone(), p.homology[0])).collect()
    }
}

/// Homology of the Koszul complex of homogeneous `elements` on `ring`, in every
/// degree of total degree at most `bound`, by exact linear algebra on
/// standard-monomial bases.
pub fn graded_koszul_homology(
    ring: &CommutativeQuotient,
    elements: &[WeylElement],
    bound: usize,
) -> Result<KoszulReport, HomologicalError> {
    let r = elements.len();
    if r > 16 {
        return Err(HomologicalError::NotWellDefined("too many elements".into()));
    }
    let degs: Vec<Vec<i64>> = elements.iter().map(|f| ring.element_degree(f)).collect::<Result<_, _>>()?;
    let by_total: Vec<HashMap<Vec<i64>, Vec<Monomial>>> = (0..=bound).map(|t| ring.standard_monomials(t)).collect();
    let masks: Vec<u32> = (0u32..(1 << r)).collect();
    let mask_degree = |mask: u32| -> Vec<i64> {
        let mut d = vec![0i64; degs.first().map_or(1, Vec::len)];
        for (j, dj) in degs.iter().enumerate() {
            if mask & (1 << j) != 0 {
                for (a, b) in d.iter_mut().zip(dj) {
                    *a += b;
                }
            }
        }
        d
    };
    let empty = Vec::new();
    let basis = |deg: &[i64]| -> &Vec<Monomial> {
        if deg[0] < 0 || deg[0] as usize > bound {
            return &empty;
        }
        by_total[deg[0] as usize].get(deg).unwrap_or(&empty)
    };
    let mut degrees: BTreeSet<Vec<i64>> = BTreeSet::new();
    for table in &by_total {
        for key in table.keys() {
            for &mask in &masks {
                let d: Vec<i64> = key.iter().zip(mask_degree(mask)).map(|(a, b)| a + b).collect();
                if d[0] as usize <= bound {
                    degrees.insert(d);
                }
            }
        }
    }
    let mut pieces = Vec::new();
    let mut vanishes = true;
    let mut all_complexes = true;
    for alpha in degrees {
        // Homological degree i lives in cohomological slot r - i.
        let mut offsets: Vec<HashMap<(u32, Monomial), usize>> = vec![HashMap::new(); r + 1];
        let mut dims = vec![0usize; r + 1];
        let mut layout: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); r + 1];
        for &mask in &masks {
            let i = mask.count_ones() as usize;
            let sub: Vec<i64> = alpha.iter().zip(mask_degree(mask)).map(|(a, b)| a - b).collect();
            for m in basis(&sub) {
                offsets[i].insert((mask, m.clone()), dims[i]);
                layout[i].push((mask, m.clone()));
                dims[i] += 1;
            }
        }
        let mut maps: Vec<Vec<SparseVec>> = Vec::with_capacity(r);
        for i in (1..=r).rev() {
            let mut cols = Vec::with_capacity(dims[i]);
            for (mask, m) in &layout[i] {
                let mut col = SparseVec::new();
                let mono = WeylElement::monomial(&ring.sig, m.clone(), BigRational::one());
                for (j, f) in elements.iter().enumerate() {
                    if mask & (1 << j) == 0 {
                        continue;
                    }
                    let sign = if (mask & ((1 << j) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                    let target = mask & !(1 << j);
                    let nf = ring.normal_form(&(f * &mono))?;
                    for (tm, c) in nf.terms() {
                        let idx = *offsets[i - 1]
                            .get(&(target, tm.clone()))
                            .ok_or_else(|| HomologicalError::NotHomogeneous(f.to_string()))?;
                        let e = col.entry(idx).or_insert_with(BigRational::zero);
                        *e += c * BigRational::from_integer(sign.into());
                        if e.is_zero() {
                            col.remove(&idx);
                        }
                    }
                }
                cols.push(col);
            }
            maps.push(cols);
        }
        let piece = ComplexPiece { degree: alpha.clone(), dims: dims.iter().rev().cloned().collect(), maps };
        all_complexes &= piece.is_complex();
        let coh = piece.cohomology();
        let homology: Vec<usize> = coh.into_iter().rev().collect();
        if homology.iter().skip(1).any(|&h| h != 0) {
            vanishes = false;
        }
        if dims.iter().any(|&d| d > 0) {
            pieces.push(KoszulPiece { degree: alpha, homology });
        }
    }
    Ok(KoszulReport { bound, pieces, positive_homology_vanishes: vanishes, all_complexes })
}

/// Number of standard monomials of a Groebner basis in each degree of weight
/// at most `bound`, with degrees read from the exponent slots
/// `[x_0..x_{n-1}, d_0..d_{n-1}]`.
pub fn standard_monomial_counts(
    gb: &GroebnerBasis,
    slot_degrees: &[Vec<i64>],
    bound: usize,
) -> Result<BTreeMap<Vec<i64>, usize>, HomologicalError> {
    let n = gb.sig.nvars();
    let width = gb.sig.width();
    let weights = positive_weights(slot_degrees)?;
    let mut out = BTreeMap::new();
    for total in 0..=bound {
        for e in weighted_compositions(&weights, total) {
            let mut full = vec![0i32; width];
            full[..2 * n].copy_from_slice(&e);
            let m = Monomial(full);
            if gb.is_standard(&m) {
                *out.entry(slot_degree(&e, slot_degrees, &weights)).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

/// Regularity of the symbol Euler sequence of `GKZ(A^s_u, 0)` and the
/// comparison of `H_0` with a direct count of `gr` of the system.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub as_u: Vec<Vec<i64>>,
    pub u: usize,
    pub bound: usize,
    pub koszul: KoszulReport,
    /// Size of the Weyl Groebner basis used for the direct count.
    pub weyl_basis_size: usize,
    /// `(degree, dim H_0, standard monomial count)` where they differ.
    pub h0_mismatches: Vec<(Vec<i64>, usize, usize)>,
    pub degrees_compared: usize,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.koszul.positive_homology_vanishes && self.koszul.all_complexes && self.h0_mismatches.is_empty()
    }
}

/// Builds `C[w, l, v, m] / I_{A^s_u}(v, m)` with the symbols
/// `sum_i (A^s_u)_ki x_i xi_i` of the Euler operators, computes their Koszul
/// homology up to `bound`, and compares `H_0` with the standard monomials of a
/// Weyl Groebner basis of `GKZ(A^s_u, 0)` for the weight that is 1 on the chart
/// variables and on the lambda partials.
pub fn euler_koszul_regularity(a: &IntMatrix, u: usize, bound: usize) -> Result<RegularityReport, HomologicalError> {
    let asu = build_as_u(a, u)?;
    let n = a.cols();
    let cols = asu.columns_i64()?;
    let big_n = cols.len();
    let mut names: Vec<String> = (0..=n).filter(|&i| i != u).map(|i| format!("w{i}_{u}")).collect();
    names.extend((0..=n).map(|i| format!("l{i}")));
    let mut ring_names = names.clone();
    ring_names.extend(names.iter().map(|s| format!("s_{s}")));
    let sig = Signature::new(&ring_names)?.into_arc();
    // Degree of a variable: its omega-weight (1 on the chart variables and on the
    // lambda symbols), then its torus degree.
    let mut var_degrees = Vec::with_capacity(2 * big_n);
    for (i, c) in cols.iter().enumerate() {
        let mut d = vec![i64::from(i < n)];
        d.extend(c.iter().map(|x| -x));
        var_degrees.push(d);
    }
    for (i, c) in cols.iter().enumerate() {
        let mut d = vec![i64::from(i >= n)];
        d.extend(c);
        var_degrees.push(d);
    }
    let symbol_vars: Vec<usize> = (big_n..2 * big_n).collect();
    let relations: Vec<WeylElement> = toric_ideal(&asu)?.iter().map(|l| binomial(&sig, &symbol_vars, l)).collect();
    let ring = CommutativeQuotient::new(&sig, &relations, var_degrees.clone())?;
    let mut elements = Vec::new();
    for k in 0..asu.rows() {
        let mut e = WeylElement::zero(&sig);
        for (i, c) in cols.iter().enumerate() {
            if c[k] != 0 {
                let t = &WeylElement::var(&sig, i) * &WeylElement::var(&sig, big_n + i);
                e = &e + &t.scale(&q(c[k]));
            }
        }
        elements.push(e);
    }
    let koszul = graded_koszul_homology(&ring, &elements, bound)?;

    let gkz = build_gkz_named(&asu, &vec![0; asu.rows()], &names)?;
    let omega: Vec<i64> = var_degrees.iter().map(|d| d[0]).collect();
    let gb = buchberger(&gkz.generators, &TermOrder::weight(omega, TermOrder::Grevlex))?;
    let counts = standard_monomial_counts(&gb, &var_degrees, bound)?;
    let h0 = koszul.h0();
    let keys: BTreeSet<&Vec<i64>> = h0.keys().chain(counts.keys()).collect();
    let mut mismatches = Vec::new();
    for key in &keys {
        let a = h0.get(*key).copied().unwrap_or(0);
        let b = counts.get(*key).copied().unwrap_or(0);
        if a != b {
            mismatches.push(((*key).clone(), a, b));
        }
    }
    Ok(RegularityReport {
        as_u: asu.to_i64_rows()?,
        u,
        bound,
        koszul,
        weyl_basis_size: gb.len(),
        h0_mismatches: mismatches,
        degrees_compared: keys.len(),
    })
}
