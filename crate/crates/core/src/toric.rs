//! Cone and semigroup data of a column configuration `B`: facets, saturation,
//! the Gorenstein vector `c`, the divisor decomposition `c'`, chart matrices
//! and the bounded strongly-resonant test.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::linalg::{
    dot, integer_solve, kernel_lattice, minimal_nonneg_solutions, nonneg_integer_solve, rank, smith_normal_form,
    spans_full_lattice, IntMatrix, LinalgError, NonnegSolve, DEFAULT_SOLVE_BOUND,
};

pub const DEFAULT_SATURATION_BOUND: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("columns do not span Z^{0}")]
    NotFullRank(usize),
    #[error("semigroup is not saturated to the checked bound: {0:?}")]
    NotSaturated(SaturationVerdict),
    #[error("semigroup is not Gorenstein")]
    NotGorenstein,
    #[error("no decomposition c' found among minimal representations of c")]
    NoDecomposition,
    #[error("index {index} out of range (0..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeProfile {
    pub generators: Vec<Vec<i64>>,
    pub facet_normals: Vec<Vec<i64>>,
    pub group_part_rank: usize,
}

impl ConeProfile {
    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facet_normals.iter().all(|v| dot(v, x) >= 0)
    }

    pub fn is_interior(&self, x: &[i64]) -> bool {
        self.facet_normals.iter().all(|v| dot(v, x) >= 1)
    }

    pub fn is_pointed(&self) -> bool {
        self.group_part_rank == 0
    }

    /// Sum of the facet normals; strictly positive on nonzero generators of a pointed cone.
    pub fn grading(&self) -> Vec<i64> {
        let mut y = vec![0; self.dim()];
        for v in &self.facet_normals {
            for (a, b) in y.iter_mut().zip(v) {
                *a += b;
            }
        }
        y
    }

    /// Indices of generators lying in the group part `G`.
    pub fn in_group_part(&self, j: usize) -> bool {
        self.facet_normals.iter().all(|v| dot(v, &self.generators[j]) == 0)
    }
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facet normals of the cone spanned by the columns of `b`. Each normal is primitive
/// and nonnegative on every column; the list is sorted and free of duplicates.
pub fn facet_normals(b: &IntMatrix) -> Result<ConeProfile, ToricError> {
    if !spans_full_lattice(b) {
        return Err(ToricError::NotFullRank(b.rows()));
    }
    cone_of(b)
}

/// Facet computation for any `b` of rank `r` (the lattice may be a proper sublattice).
fn cone_of(b: &IntMatrix) -> Result<ConeProfile, ToricError> {
    let r = b.rows();
    if rank(b) != r {
        return Err(ToricError::NotFullRank(r));
    }
    let cols = b.columns_i64()?;
    let mut normals = BTreeSet::new();
    if r >= 1 {
        for subset in combinations(cols.len(), r - 1) {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&j| cols[j].clone()).collect();
            let m = if rows.is_empty() { IntMatrix::zeros(0, r) } else { IntMatrix::from_rows(&rows)? };
            let ker = kernel_lattice(&m);
            if ker.rows() != 1 {
                continue;
            }
            let v = primitive(&ker.to_i64_rows()?[0]);
            let pairings: Vec<i64> = cols.iter().map(|c| dot(&v, c)).collect();
            if pairings.iter().all(|&p| p >= 0) {
                normals.insert(v);
            } else if pairings.iter().all(|&p| p <= 0) {
                normals.insert(v.iter().map(|x| -x).collect());
            }
        }
    }
    let facet_normals: Vec<Vec<i64>> = normals.into_iter().collect();
    let nrank = if facet_normals.is_empty() { 0 } else { rank(&IntMatrix::from_rows(&facet_normals)?) };
    Ok(ConeProfile { generators: cols, facet_normals, group_part_rank: r - nrank })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Member { k: Vec<i64> },
    Nonmember,
    Unknown,
}

pub fn semigroup_membership(b: &IntMatrix, x: &[i64], bound: u32) -> Result<Membership, ToricError> {
    let cone = facet_normals(b)?;
    membership_in(&cone, b, x, bound)
}

fn membership_in(cone: &ConeProfile, b: &IntMatrix, x: &[i64], bound: u32) -> Result<Membership, ToricError> {
    if !cone.contains(x) {
        return Ok(Membership::Nonmember);
    }
    Ok(match nonneg_integer_solve(b, x, bound)? {
        NonnegSolve::Found(k) => Membership::Member { k },
        NonnegSolve::Infeasible => Membership::Nonmember,
        NonnegSolve::BoundExceeded(_) => Membership::Unknown,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SaturationVerdict {
    VerifiedToBound { bound: u32, points_checked: usize },
    Refuted { witness: Vec<i64> },
    Unknown { bound: u32, candidate: Vec<i64> },
}

impl SaturationVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, SaturationVerdict::VerifiedToBound { .. })
    }
}

/// The lattice points of the cone checked for saturation, and the set of
/// semigroup elements reached from 0 inside the search region.
struct Region {
    points: Vec<Vec<i64>>,
    reached: HashSet<Vec<i64>>,
    certified: bool,
}

/// Pointed cones use the grading `y = sum of normals` and the region `y.x <= bound`;
/// there the breadth-first closure is complete, so unreached points are certified
/// non-members. Otherwise the region is the sup-norm box of radius `bound` and the
/// closure is explored inside twice that box.
fn region(cone: &ConeProfile, bound: u32) -> Region {
    let r = cone.dim();
    let cols: Vec<&Vec<i64>> = cone.generators.iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
    let bound = bound as i64;
    if cone.is_pointed() {
        let y = cone.grading();
        // Box enclosing {x in cone : y.x <= bound}: x = sum l_j b_j with sum l_j (y.b_j) <= bound.
        let mut lim = vec![0i64; r];
        for c in &cols {
            let d = dot(&y, c);
            for i in 0..r {
                lim[i] = lim[i].max((bound * c[i].abs()) / d);
            }
        }
        let points = box_points(&lim.iter().map(|&l| (-l, l)).collect::<Vec<_>>())
            .into_iter()
            .filter(|x| cone.contains(x) && dot(&y, x) <= bound)
            .collect::<Vec<_>>();
        let reached = closure(&cols, |x| dot(&y, x) <= bound, r);
        let mut points = points;
        points.sort_by_key(|x| (dot(&y, x), x.clone()));
        Region { points, reached, certified: true }
    } else {
        let ranges = vec![(-bound, bound); r];
        let mut points: Vec<Vec<i64>> = box_points(&ranges).into_iter().filter(|x| cone.contains(x)).collect();
        points.sort_by_key(|x| (x.iter().map(|v| v.abs()).max().unwrap_or(0), x.clone()));
        let reached = closure(&cols, |x| x.iter().all(|v| v.abs() <= 2 * bound), r);
        Region { points, reached, certified: false }
    }
}

fn box_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &(lo, hi) in ranges {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
        for p in &out {
            for v in lo..=hi {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn closure(cols: &[&Vec<i64>], inside: impl Fn(&[i64]) -> bool, r: usize) -> HashSet<Vec<i64>> {
    let start = vec![0i64; r];
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        for c in cols {
            let q: Vec<i64> = p.iter().zip(c.iter()).map(|(a, b)| a + b).collect();
            if inside(&q) && !seen.contains(&q) {
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    seen
}

pub fn check_saturation(b: &IntMatrix, bound: u32) -> Result<SaturationVerdict, ToricError> {
    let cone = cone_of(b)?;
    Ok(saturation_of(&cone, bound))
}

fn saturation_of(cone: &ConeProfile, bound: u32) -> SaturationVerdict {
    let reg = region(cone, bound);
    for x in &reg.points {
        if !reg.reached.contains(x) {
            return if reg.certified {
                SaturationVerdict::Refuted { witness: x.clone() }
            } else {
                SaturationVerdict::Unknown { bound, candidate: x.clone() }
            };
        }
    }
    SaturationVerdict::VerifiedToBound { bound, points_checked: reg.points.len() }
}

/// Solves `V c = 1` over the integers (rows of `V` are the facet normals) and returns
/// the solution of minimal L1 norm, ties broken lexicographically.
fn solve_normals_one(cone: &ConeProfile, bound: u32) -> Result<Option<Vec<i64>>, ToricError> {
    let r = cone.dim();
    if cone.facet_normals.is_empty() {
        return Ok(Some(vec![0; r]));
    }
    let v = IntMatrix::from_rows(&cone.facet_normals)?;
    let ones = vec![BigInt::from(1); v.rows()];
    let Some(part) = integer_solve(&v, &ones)? else { return Ok(None) };
    let part: Vec<i64> = part.iter().map(crate::linalg::to_i64).collect::<Result<_, _>>()?;
    let g = kernel_lattice(&v).to_i64_rows()?;
    if g.is_empty() {
        return Ok(Some(part));
    }
    // Small search over the group part for the L1-minimal representative.
    let radius = (bound as i64).max(part.iter().map(|x| x.abs()).sum::<i64>());
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut coef = vec![-radius; g.len()];
    loop {
        let mut c = part.clone();
        for (k, gv) in coef.iter().zip(&g) {
            for (ci, gi) in c.iter_mut().zip(gv) {
                *ci += k * gi;
            }
        }
        let l1: i64 = c.iter().map(|x| x.abs()).sum();
        let better = match &best {
            None => true,
            Some((bl, bc)) => l1 < *bl || (l1 == *bl && c < *bc),
        };
        if better {
            best = Some((l1, c));
        }
        let mut i = 0;
        while i < coef.len() {
            if coef[i] < radius {
                coef[i] += 1;
                break;
            }
            coef[i] = -radius;
            i += 1;
        }
        if i == coef.len() {
            break;
        }
    }
    Ok(best.map(|(_, c)| c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinCertificate {
    pub c: Vec<i64>,
    /// `<c, v_a>` for each facet normal; all equal to 1.
    pub pairings: Vec<i64>,
    pub representation: Vec<i64>,
    pub interior_points_checked: usize,
}

/// Gorenstein vector `c` with `int(NB) = c + NB`, checked on the saturation region.
pub fn gorenstein_vector(b: &IntMatrix, bound: u32) -> Result<Option<GorensteinCertificate>, ToricError> {
    let cone = facet_normals(b)?;
    let verdict = saturation_of(&cone, bound);
    if !verdict.is_verified() {
        return Err(ToricError::NotSaturated(verdict));
    }
    let Some(c) = solve_normals_one(&cone, bound)? else { return Ok(None) };
    let pairings: Vec<i64> = cone.facet_normals.iter().map(|v| dot(v, &c)).collect();
    if pairings.iter().any(|&p| p != 1) {
        return Ok(None);
    }
    let representation = match membership_in(&cone, b, &c, DEFAULT_SOLVE_BOUND)? {
        Membership::Member { k } => k,
        _ => return Ok(None),
    };
    let reg = region(&cone, bound);
    let mut checked = 0;
    for x in reg.points.iter().filter(|x| cone.is_interior(x)) {
        let d: Vec<i64> = x.iter().zip(&c).map(|(a, b)| a - b).collect();
        checked += 1;
        if !reg.reached.contains(&d) {
            match membership_in(&cone, b, &d, DEFAULT_SOLVE_BOUND)? {
                Membership::Member { .. } => {}
                _ => return Ok(None),
            }
        }
    }
    Ok(Some(GorensteinCertificate { c, pairings, representation, interior_points_checked: checked }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPrime {
    /// Chosen generators outside the group part.
    pub j1: Vec<usize>,
    /// Chosen generators inside the group part.
    pub j2: Vec<usize>,
    pub cprime: Vec<i64>,
    /// The representation of `c` the choice was read from.
    pub k: Vec<i64>,
}

fn cprime_from_k(cone: &ConeProfile, c: &[i64], k: &[i64]) -> Option<CPrime> {
    let r = cone.dim();
    let chosen: Vec<usize> = (0..k.len()).filter(|&j| k[j] > 0).collect();
    let (j2, j1): (Vec<usize>, Vec<usize>) = chosen.iter().partition(|&&j| cone.in_group_part(j));
    let mut cp = vec![0i64; r];
    for &j in &chosen {
        for (a, b) in cp.iter_mut().zip(&cone.generators[j]) {
            *a += b;
        }
    }
    for v in &cone.facet_normals {
        if dot(v, &cp) != dot(v, c) {
            return None;
        }
        let ones = chosen.iter().filter(|&&j| dot(v, &cone.generators[j]) == 1).count();
        let others_zero = chosen.iter().all(|&j| matches!(dot(v, &cone.generators[j]), 0 | 1));
        if ones != 1 || !others_zero {
            return None;
        }
        if !j1.iter().any(|&j| dot(v, &cone.generators[j]) == 1) {
            return None;
        }
    }
    Some(CPrime { j1, j2, cprime: cp, k: k.to_vec() })
}

/// All decompositions read off the minimal-degree representations of `c`,
/// in lex order of the representation; duplicates of `c'` are dropped.
pub fn cprime_decompositions(b: &IntMatrix, c: &[i64]) -> Result<Vec<CPrime>, ToricError> {
    let cone = facet_normals(b)?;
    if cone.facet_normals.is_empty() {
        return Ok(vec![CPrime { j1: vec![], j2: vec![], cprime: vec![0; cone.dim()], k: vec![0; b.cols()] }]);
    }
    let reps = minimal_nonneg_solutions(b, c, DEFAULT_SOLVE_BOUND, 4096)?;
    let mut out: Vec<CPrime> = Vec::new();
    for k in reps {
        if let Some(cp) = cprime_from_k(&cone, c, &k) {
            if !out.iter().any(|o| o.j1 == cp.j1 && o.j2 == cp.j2) {
                out.push(cp);
            }
        }
    }
    Ok(out)
}

/// The decomposition from the lex-smallest minimal-degree representation of `c`.
pub fn cprime_decomposition(b: &IntMatrix, c: &[i64]) -> Result<CPrime, ToricError> {
    cprime_decompositions(b, c)?.into_iter().next().ok_or(ToricError::NoDecomposition)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupProfile {
    pub cone: ConeProfile,
    pub saturated: SaturationVerdict,
    pub gorenstein: Option<GorensteinCertificate>,
    pub cprime: Option<CPrime>,
}

pub fn semigroup_profile(b: &IntMatrix, bound: u32) -> Result<SemigroupProfile, ToricError> {
    let cone = facet_normals(b)?;
    let saturated = saturation_of(&cone, bound);
    let (gorenstein, cprime) = if saturated.is_verified() {
        let g = gorenstein_vector(b, bound)?;
        let cp = match &g {
            Some(g) => cprime_decomposition(b, &g.c).ok(),
            None => None,
        };
        (g, cp)
    } else {
        (None, None)
    };
    Ok(SemigroupProfile { cone, saturated, gorenstein, cprime })
}

/// `(1, 0) | (1, b_i)`: prepends a zero column and a row of ones.
pub fn homogenize(b: &IntMatrix) -> IntMatrix {
    let (r, s) = (b.rows(), b.cols());
    let mut out = IntMatrix::zeros(r + 1, s + 1);
    for j in 0..=s {
        out.set(0, j, BigInt::from(1));
    }
    for i in 0..r {
        for j in 0..s {
            out.set(i + 1, j + 1, b.get(i, j).clone());
        }
    }
    out
}

/// Columns of `A` with `a_0 = 0` prepended.
pub fn columns_with_origin(a: &IntMatrix) -> Result<Vec<Vec<i64>>, ToricError> {
    let mut cols = vec![vec![0i64; a.rows()]];
    cols.extend(a.columns_i64()?);
    Ok(cols)
}

/// Chart matrix `A_u` (columns `a_i - a_u`, `i != u`, `a_0 = 0`) and the unimodular
/// `C_u` with `C_u * Ã = Ã_u`, where `Ã_u` has columns `(1, a_i - a_u)`.
pub fn chart_matrix(a: &IntMatrix, u: usize) -> Result<(IntMatrix, IntMatrix), ToricError> {
    let (d, n) = (a.rows(), a.cols());
    if u > n {
        return Err(ToricError::IndexOutOfRange { index: u, max: n });
    }
    let cols = columns_with_origin(a)?;
    let au = &cols[u];
    let shifted: Vec<Vec<i64>> =
        (0..=n).filter(|&i| i != u).map(|i| cols[i].iter().zip(au).map(|(x, y)| x - y).collect()).collect();
    let a_u = IntMatrix::from_columns(d, &shifted)?;
    let mut c_u = IntMatrix::identity(d + 1);
    for k in 0..d {
        c_u.set(k + 1, 0, BigInt::from(-au[k]));
    }
    let all_shifted: Vec<Vec<i64>> = (0..=n)
        .map(|i| std::iter::once(1).chain(cols[i].iter().zip(au).map(|(x, y)| x - y)).collect())
        .collect();
    let tilde_u = IntMatrix::from_columns(d + 1, &all_shifted)?;
    debug_assert_eq!(c_u.mul(&homogenize(a)).ok().as_ref(), Some(&tilde_u));
    if c_u.mul(&homogenize(a))? != tilde_u {
        return Err(ToricError::Linalg(LinalgError::DimensionMismatch { expected: (d + 1, n + 1), found: (d + 1, n + 1) }));
    }
    Ok((a_u, c_u))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SresResult {
    Yes { j: usize, k: i64, point: Vec<i64> },
    /// No true degree found up to the bound; the test is a bounded approximation.
    NoToBound { bound: u32, inconclusive_points: usize },
}

/// Bounded test for strongly resonant parameters: looks for `j`, `k >= 1` with
/// `-beta - k b_j` a true degree of `C[NB]/(w_j)`, i.e. in `NB \ (b_j + NB)`.
pub fn sres_contains(b: &IntMatrix, beta: &[i64], bound: u32) -> Result<SresResult, ToricError> {
    let cone = facet_normals(b)?;
    let mut inconclusive = 0;
    for (j, bj) in cone.generators.iter().enumerate() {
        for k in 1..=bound as i64 {
            let x: Vec<i64> = beta.iter().zip(bj).map(|(be, bv)| -be - k * bv).collect();
            let m = membership_in(&cone, b, &x, DEFAULT_SOLVE_BOUND)?;
            if !matches!(m, Membership::Member { .. }) {
                if m == Membership::Unknown {
                    inconclusive += 1;
                }
                continue;
            }
            let y: Vec<i64> = x.iter().zip(bj).map(|(a, c)| a - c).collect();
            match membership_in(&cone, b, &y, DEFAULT_SOLVE_BOUND)? {
                Membership::Nonmember => return Ok(SresResult::Yes { j, k, point: x }),
                Membership::Unknown => inconclusive += 1,
                Membership::Member { .. } => {}
            }
        }
    }
    Ok(SresResult::NoToBound { bound, inconclusive_points: inconclusive })
}

/// `rank` of the lattice spanned by `b`, re-exported for reports.
pub fn lattice_rank(b: &IntMatrix) -> usize {
    smith_normal_form(b).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cols(c: &[&[i64]]) -> IntMatrix {
        let v: Vec<Vec<i64>> = c.iter().map(|x| x.to_vec()).collect();
        IntMatrix::from_columns(c[0].len(), &v).unwrap()
    }

    fn square() -> IntMatrix {
        cols(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]])
    }

    fn example2() -> IntMatrix {
        cols(&[&[1, 0], &[2, 1], &[-1, 0], &[-2, 1]])
    }

    #[test]
    fn orthant_normals() {
        let p = facet_normals(&cols(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.facet_normals, vec![vec![0, 1], vec![1, 0]]);
        assert!(p.is_pointed());
    }

    #[test]
    fn square_cone_has_four_facets() {
        let p = facet_normals(&square()).unwrap();
        assert_eq!(p.facet_normals, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, -1, 0], vec![1, 0, -1]]);
    }

    #[test]
    fn half_plane() {
        let p = facet_normals(&example2()).unwrap();
        assert_eq!(p.facet_normals, vec![vec![0, 1]]);
        assert_eq!(p.group_part_rank, 1);
        assert!(p.in_group_part(0) && p.in_group_part(2));
        assert!(!p.in_group_part(1));
    }

    #[test]
    fn not_full_rank() {
        assert!(matches!(facet_normals(&cols(&[&[2, 0], &[0, 1]])), Err(ToricError::NotFullRank(2))));
    }

    #[test]
    fn saturation_verdicts() {
        assert!(check_saturation(&IntMatrix::identity(3), 20).unwrap().is_verified());
        assert_eq!(
            check_saturation(&cols(&[&[1, 0], &[1, 2]]), 20).unwrap(),
            SaturationVerdict::Refuted { witness: vec![1, 1] }
        );
        // Same cone, full lattice but still a hole at (1,1).
        let b = cols(&[&[1, 0], &[1, 2], &[1, 3]]);
        assert_eq!(check_saturation(&b, 20).unwrap(), SaturationVerdict::Refuted { witness: vec![1, 1] });
        assert!(check_saturation(&square(), 20).unwrap().is_verified());
        assert!(check_saturation(&example2(), 20).unwrap().is_verified());
    }

    #[test]
    fn gorenstein_examples() {
        assert_eq!(gorenstein_vector(&square(), 20).unwrap().unwrap().c, vec![2, 1, 1]);
        assert_eq!(gorenstein_vector(&example2(), 20).unwrap().unwrap().c, vec![0, 1]);
        assert_eq!(gorenstein_vector(&IntMatrix::identity(3), 20).unwrap().unwrap().c, vec![1, 1, 1]);
        let b = cols(&[&[1, 0], &[1, 1], &[1, 2]]);
        assert_eq!(gorenstein_vector(&b, 20).unwrap().unwrap().c, vec![1, 1]);
        // Over a segment of length 3 the normals (0,1), (3,-1) admit no c.
        let b = cols(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]);
        assert_eq!(gorenstein_vector(&b, 20).unwrap(), None);
    }

    #[test]
    fn cprime_examples() {
        let all = cprime_decompositions(&square(), &[2, 1, 1]).unwrap();
        let cps: Vec<Vec<usize>> = all.iter().map(|c| c.j1.clone()).collect();
        assert_eq!(cps, vec![vec![1, 2], vec![0, 3]]);
        let cp = cprime_decomposition(&example2(), &[0, 1]).unwrap();
        assert_eq!(cp.cprime, vec![1, 1]);
        assert_eq!(cp.j1, vec![1]);
        assert_eq!(cp.j2, vec![2]);
        let unit = cprime_decomposition(&cols(&[&[1], &[-1]]), &[0]).unwrap();
        assert_eq!(unit.cprime, vec![0]);
        assert!(unit.j1.is_empty());
    }

    #[test]
    fn charts() {
        let a = cols(&[&[1], &[2]]);
        let (a1, c1) = chart_matrix(&a, 1).unwrap();
        assert_eq!(a1, cols(&[&[-1], &[1]]));
        assert!(c1.is_unimodular());
        let (a0, c0) = chart_matrix(&a, 0).unwrap();
        assert_eq!(a0, a);
        assert_eq!(c0, IntMatrix::identity(2));
        assert!(chart_matrix(&a, 3).is_err());
    }

    #[test]
    fn sres() {
        let b = cols(&[&[1]]);
        assert!(matches!(sres_contains(&b, &[-1], 10).unwrap(), SresResult::Yes { j: 0, k: 1, .. }));
        assert!(matches!(sres_contains(&b, &[0], 10).unwrap(), SresResult::NoToBound { .. }));
        assert!(matches!(sres_contains(&square(), &[0, 0, 0], 5).unwrap(), SresResult::NoToBound { .. }));
    }

    #[test]
    fn homogenize_shape() {
        let t = homogenize(&IntMatrix::identity(2));
        assert_eq!(t, cols(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]));
        assert_eq!(homogenize(&IntMatrix::zeros(0, 0)), cols(&[&[1]]));
    }
}
