use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::complex::{unit, ComplexPiece};
use super::HomologicalError;
use crate::linalg::rational::SparseVec;
use crate::linalg::{integer_solve, rank, spans_full_lattice, IntMatrix};
use crate::toric::{facet_normals, ConeProfile};

/// A face of `cone(A^s)` inside `σ`, given by the columns of `A^s` it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub generators: Vec<usize>,
    pub dim: usize,
    /// Facets of `cone(A^s)` containing the face, as indices into the normal list.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IshidaDegree {
    pub x: Vec<i64>,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub in_s: bool,
    pub in_s_minus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IshidaReport {
    pub a_s: Vec<Vec<i64>>,
    pub d: usize,
    pub box_lo: i64,
    pub box_hi: i64,
    pub facet_normals: Vec<Vec<i64>>,
    pub faces: Vec<Face>,
    pub degrees_scanned: usize,
    pub all_complexes: bool,
    /// Degrees with nonzero cohomology.
    pub nonzero: Vec<IshidaDegree>,
    /// Degrees where the computed cohomology differs from the S / S⁻ classification.
    pub mismatches: Vec<IshidaDegree>,
    /// Mismatches lying on the hyperplane `H_σ = {x_2 = 0}`.
    pub hyperplane_mismatches: usize,
    /// The Čech complex on `y^{a^s_0}, ..., y^{a^s_n}` has the same cohomology in every degree of `S`.
    pub cech_agrees: bool,
    /// Every degree with nonzero cohomology has negative first coordinate.
    pub negative_degree: bool,
}

impl IshidaReport {
    pub fn matches_classification(&self) -> bool {
        self.all_complexes && self.mismatches.is_empty()
    }
}

/// `[-2g, g]` with `g` the largest absolute entry of `A^s` times `d + 2`.
pub fn default_box(a_s: &IntMatrix) -> (i64, i64) {
    let g = a_s.max_abs_entry();
    let g: i64 = (g * BigInt::from(a_s.rows() as i64)).try_into().unwrap_or(i64::MAX / 4);
    (-2 * g, g)
}

/// The cone data of `A^s` needed for the Ishida complex of the facet `σ`
/// spanned by the first half of the columns.
#[derive(Clone, Debug)]
pub struct IshidaSetup {
    pub a_s: IntMatrix,
    pub cone: ConeProfile,
    pub sigma: usize,
    pub faces: Vec<Face>,
    /// For every face, a basis of its span taken from its generators.
    bases: Vec<Vec<usize>>,
    /// `(τ_i, τ_i^c)`: the faces of dimension `d` in `σ` and the other facet through each.
    pub ridge_facets: Vec<(usize, usize)>,
    full_lattice: bool,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl IshidaSetup {
    pub fn new(a_s: &IntMatrix) -> Result<Self, HomologicalError> {
        let rows = a_s.rows();
        if rows < 2 || !a_s.cols().is_multiple_of(2) {
            return Err(HomologicalError::NotWellDefined("A^s must have at least two rows and an even number of columns".into()));
        }
        let cone = facet_normals(a_s)?;
        let mut a_sigma = vec![0i64; rows];
        a_sigma[1] = 1;
        let sigma = cone
            .facet_normals
            .iter()
            .position(|v| *v == a_sigma)
            .ok_or_else(|| HomologicalError::NotWellDefined("(0, 1, 0, ...) is not a facet normal".into()))?;
        let cols = &cone.generators;
        let half = a_s.cols() / 2;
        let nf = cone.facet_normals.len();
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for mask in 0u64..(1 << nf) {
            if mask & (1 << sigma) == 0 {
                continue;
            }
            let gens: Vec<usize> = (0..cols.len())
                .filter(|&j| (0..nf).all(|f| mask & (1 << f) == 0 || dot(&cone.facet_normals[f], &cols[j]) == 0))
                .collect();
            if gens.iter().any(|&j| j >= half) || !seen.insert(gens.clone()) {
                continue;
            }
            let facets: Vec<usize> =
                (0..nf).filter(|&f| gens.iter().all(|&j| dot(&cone.facet_normals[f], &cols[j]) == 0)).collect();
            let dim = if gens.is_empty() { 0 } else { rank(&a_s.select_columns(&gens)) };
            faces.push(Face { generators: gens, dim, facets });
        }
        faces.sort_by(|a, b| (a.dim, &a.generators).cmp(&(b.dim, &b.generators)));
        let bases = faces.iter().map(|f| independent_prefix(a_s, &f.generators)).collect();
        let d = rows - 2;
        let mut ridge_facets = Vec::new();
        for (i, f) in faces.iter().enumerate().filter(|(_, f)| f.dim == d) {
            let others: Vec<usize> = f.facets.iter().copied().filter(|&g| g != sigma).collect();
            if others.len() != 1 {
                return Err(HomologicalError::NotWellDefined(format!("face {:?} lies on {} facets besides σ", f.generators, others.len())));
            }
            ridge_facets.push((i, others[0]));
        }
        Ok(IshidaSetup { a_s: a_s.clone(), cone, sigma, faces, bases, ridge_facets, full_lattice: spans_full_lattice(a_s) })
    }

    pub fn d(&self) -> usize {
        self.a_s.rows() - 2
    }

    fn in_lattice(&self, x: &[i64]) -> bool {
        if self.full_lattice {
            return true;
        }
        let t: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        matches!(integer_solve(&self.a_s, &t), Ok(Some(_)))
    }

    /// `(C[N A^s]_τ)_x ≠ 0` iff `x ∈ Z A^s` and `τ` is not visible from `x`, that is
    /// `⟨n_F, x⟩ >= 0` for every facet `F ⊇ τ` (the semigroup being saturated).
    pub fn piece_nonzero(&self, face: &Face, x: &[i64]) -> bool {
        face.facets.iter().all(|&f| dot(&self.cone.facet_normals[f], x) >= 0) && self.in_lattice(x)
    }

    /// `x ∈ Z A^s` with `x_2 >= 0`: the degrees of `C[N A^s]_σ`.
    pub fn in_s(&self, x: &[i64]) -> bool {
        x[1] >= 0 && self.in_lattice(x)
    }

    /// `x_2 >= 0` and `⟨a_{τ_i^c}, x⟩ < 0` for every `d`-dimensional face `τ_i ⊂ σ`.
    pub fn in_s_minus(&self, x: &[i64]) -> bool {
        x[1] >= 0 && self.ridge_facets.iter().all(|&(_, f)| dot(&self.cone.facet_normals[f], x) < 0)
    }

    /// Incidence sign `ε(τ', τ)` for a facet `τ'` of `τ`: the sign of the
    /// determinant of `(v, basis(τ'))` in `basis(τ)`, with `v` the first
    /// generator of `τ` outside `τ'`.
    pub fn incidence(&self, small: usize, big: usize) -> i64 {
        let (tp, t) = (&self.faces[small], &self.faces[big]);
        let v = *t.generators.iter().find(|j| !tp.generators.contains(j)).expect("proper face");
        let mut cols = vec![v];
        cols.extend(&self.bases[small]);
        let lhs = self.a_s.select_columns(&cols);
        let rhs = self.a_s.select_columns(&self.bases[big]);
        let k = cols.len();
        for rows in row_subsets(self.a_s.rows(), k) {
            let den = square(&rhs, &rows).determinant().expect("square");
            if den.is_zero() {
                continue;
            }
            let num = square(&lhs, &rows).determinant().expect("square");
            return if (num.is_positive()) == (den.is_positive()) { 1 } else { -1 };
        }
        unreachable!("basis of a face has a nonzero maximal minor")
    }

    /// The graded piece `(L^•_σ)_x`.
    pub fn piece(&self, x: &[i64]) -> ComplexPiece {
        let top = self.d() + 1;
        let mut layout: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for (i, f) in self.faces.iter().enumerate() {
            if f.dim <= top && self.piece_nonzero(f, x) {
                layout[f.dim].push(i);
            }
        }
        let mut maps = Vec::with_capacity(top);
        for k in 0..top {
            let cols: Vec<SparseVec> = layout[k]
                .iter()
                .map(|&small| {
                    let mut col = SparseVec::new();
                    for (pos, &big) in layout[k + 1].iter().enumerate() {
                        let (s, b) = (&self.faces[small], &self.faces[big]);
                        if s.generators.iter().all(|j| b.generators.contains(j)) {
                            col.extend(unit(pos, BigRational::from_integer(self.incidence(small, big).into())));
                        }
                    }
                    col
                })
                .collect();
            maps.push(cols);
        }
        ComplexPiece { degree: x.to_vec(), dims: layout.iter().map(Vec::len).collect(), maps }
    }

    /// `(Č^•)_x` for the Čech complex on `y^{a^s_i}`: the term of a subset `T` is
    /// `C` when `x ∈ N A^s + Z{a^s_i : i ∈ T}`, decided from the cone of `A^s`
    /// and the lattice without reference to the face lattice of `σ`.
    pub fn cech_piece(&self, x: &[i64]) -> ComplexPiece {
        let half = self.a_s.cols() / 2;
        let normals = &self.cone.facet_normals;
        let gens = &self.cone.generators;
        let lattice = self.in_lattice(x);
        let nonzero = |t: u64| -> bool {
            let mut s = vec![0i64; x.len()];
            for i in (0..half).filter(|i| t & (1 << i) != 0) {
                for (a, b) in s.iter_mut().zip(&gens[i]) {
                    *a += b;
                }
            }
            lattice && normals.iter().all(|n| dot(n, &s) > 0 || dot(n, x) >= 0)
        };
        let mut layout: Vec<Vec<u64>> = vec![Vec::new(); half + 1];
        for t in 0u64..(1 << half) {
            if nonzero(t) {
                layout[t.count_ones() as usize].push(t);
            }
        }
        let maps = (0..half)
            .map(|k| {
                layout[k]
                    .iter()
                    .map(|&t| {
                        let mut col = SparseVec::new();
                        for (pos, &big) in layout[k + 1].iter().enumerate() {
                            if big & t == t {
                                let j = (big & !t).trailing_zeros();
                                let sign = if (t & ((1 << j) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                                col.extend(unit(pos, BigRational::from_integer(sign.into())));
                            }
                        }
                        col
                    })
                    .collect()
            })
            .collect();
        ComplexPiece { degree: x.to_vec(), dims: layout.iter().map(Vec::len).collect(), maps }
    }

    /// `y_x = x + x_2 (a^s - b^s) = (x_1 + x_2, 0, x_3, ...)`.
    pub fn projection(&self, x: &[i64]) -> Vec<i64> {
        let mut y = x.to_vec();
        y[0] += x[1];
        y[1] = 0;
        y
    }

    /// Pairings `⟨a_{τ_i^c}, ·⟩` over the `d`-dimensional faces of `σ`.
    pub fn ridge_pairings(&self, x: &[i64]) -> Vec<i64> {
        self.ridge_facets.iter().map(|&(_, f)| dot(&self.cone.facet_normals[f], x)).collect()
    }

    /// `Ã`: the first half of the columns of `A^s` with the second row removed.
    pub fn a_tilde(&self) -> Result<IntMatrix, HomologicalError> {
        let half = self.a_s.cols() / 2;
        let rows: Vec<Vec<i64>> =
            self.a_s.to_i64_rows()?.into_iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, r)| r[..half].to_vec()).collect();
        Ok(IntMatrix::from_rows(&rows)?)
    }
}

fn independent_prefix(m: &IntMatrix, gens: &[usize]) -> Vec<usize> {
    let mut basis: Vec<usize> = Vec::new();
    for &j in gens {
        let mut trial = basis.clone();
        trial.push(j);
        if rank(&m.select_columns(&trial)) == trial.len() {
            basis = trial;
        }
    }
    basis
}

fn square(m: &IntMatrix, rows: &[usize]) -> IntMatrix {
    let data: Vec<Vec<BigInt>> = rows.iter().map(|&i| m.row(i)).collect();
    IntMatrix::from_rows(&data).expect("rectangular")
}

fn row_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << n)).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
}

fn box_points(dim: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1).max(0) as u64;
    let total = width.pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut x = vec![0i64; dim];
        for v in x.iter_mut().rev() {
            *v = lo + (idx % width) as i64;
            idx /= width;
        }
        x
    })
}

/// Cohomology of `(L^•_σ)_x` for every `x` in the box `[lo, hi]^{d+2}`,
/// compared with the classification by `S` and `S⁻`.
pub fn ishida_cohomology(a_s: &IntMatrix, lo: i64, hi: i64) -> Result<IshidaReport, HomologicalError> {
    let setup = IshidaSetup::new(a_s)?;
    let d = setup.d();
    let mut report = IshidaReport {
        a_s: a_s.to_i64_rows()?,
        d,
        box_lo: lo,
        box_hi: hi,
        facet_normals: setup.cone.facet_normals.clone(),
        faces: setup.faces.clone(),
        degrees_scanned: 0,
        all_complexes: true,
        nonzero: Vec::new(),
        mismatches: Vec::new(),
        hyperplane_mismatches: 0,
        cech_agrees: true,
        negative_degree: true,
    };
    for x in box_points(a_s.rows(), lo, hi) {
        report.degrees_scanned += 1;
        let piece = setup.piece(&x);
        if piece.dims.iter().all(|&n| n == 0) && !setup.in_s(&x) {
            continue;
        }
        report.all_complexes &= piece.is_complex();
        let cohomology = piece.cohomology();
        let cech = setup.cech_piece(&x);
        report.all_complexes &= cech.is_complex();
        let mut cech_cohomology = cech.cohomology();
        let mut padded = cohomology.clone();
        let len = cech_cohomology.len().max(padded.len());
        cech_cohomology.resize(len, 0);
        padded.resize(len, 0);
        if cech_cohomology != padded {
            report.cech_agrees = false;
        }
        let (in_s, in_s_minus) = (setup.in_s(&x), setup.in_s_minus(&x));
        let mut expected = vec![0usize; d + 2];
        if in_s && in_s_minus {
            expected[d + 1] = 1;
        }
        let entry = IshidaDegree { x: x.clone(), dims: piece.dims.clone(), cohomology: cohomology.clone(), in_s, in_s_minus };
        if cohomology != expected {
            if x[1] == 0 {
                report.hyperplane_mismatches += 1;
            }
            report.mismatches.push(entry.clone());
        }
        if cohomology.iter().any(|&h| h != 0) {
            if x[0] >= 0 {
                report.negative_degree = false;
            }
            report.nonzero.push(entry);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub x: Vec<i64>,
    pub y_x: Vec<i64>,
    pub pairings_x: Vec<i64>,
    pub pairings_y: Vec<i64>,
    pub equal: bool,
    /// `x ∈ S⁻` iff `y_x ∈ S⁻ ∩ H_σ`.
    pub classification_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyReport {
    pub ishida: IshidaReport,
    /// No nonzero cohomology in degrees with first coordinate `>= 0`.
    pub strictly_negative: bool,
    pub projection_checks: Vec<ProjectionCheck>,
    /// Points of the box on `H_σ` compared against `-p(x) ∈ interior cone(Ã)`.
    pub hyperplane_points: usize,
    /// `S⁻ ∩ H_σ` equals the lattice points of the negative open cone over `σ`.
    pub hyperplane_agrees: bool,
}

impl LocalCohomologyReport {
    pub fn passed(&self) -> bool {
        self.ishida.all_complexes
            && self.ishida.cech_agrees
            && self.ishida.hyperplane_mismatches == 0
            && self.strictly_negative
            && self.hyperplane_agrees
            && self.projection_checks.iter().all(|c| c.equal && c.classification_agrees)
    }
}

/// Aggregates the Ishida scan into the sign statement for the first grading,
/// checks the projection `x -> y_x` on three sampled points and compares
/// `S⁻ ∩ H_σ` with the negative open cone spanned by `σ`.
pub fn local_cohomology_scan(a_s: &IntMatrix, lo: i64, hi: i64) -> Result<LocalCohomologyReport, HomologicalError> {
    let ishida = ishida_cohomology(a_s, lo, hi)?;
    let setup = IshidaSetup::new(a_s)?;
    let a_tilde_cone = facet_normals(&setup.a_tilde()?)?;
    let mut samples: Vec<Vec<i64>> = box_points(a_s.rows(), lo, hi)
        .filter(|x| x[1] > 0 && setup.in_s_minus(x))
        .take(2)
        .collect();
    samples.extend(box_points(a_s.rows(), lo, hi).filter(|x| x[1] > 0 && setup.in_s(x) && !setup.in_s_minus(x)).take(3 - samples.len().min(3)));
    let projection_checks = samples
        .into_iter()
        .map(|x| {
            let y = setup.projection(&x);
            let (px, py) = (setup.ridge_pairings(&x), setup.ridge_pairings(&y));
            ProjectionCheck {
                classification_agrees: setup.in_s_minus(&x) == (setup.in_s_minus(&y) && y[1] == 0),
                equal: px == py,
                pairings_x: px,
                pairings_y: py,
                y_x: y,
                x,
            }
        })
        .collect();
    let mut hyperplane_points = 0;
    let mut hyperplane_agrees = true;
    for x in box_points(a_s.rows(), lo, hi).filter(|x| x[1] == 0) {
        hyperplane_points += 1;
        let minus_p: Vec<i64> = x.iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, v)| -v).collect();
        if setup.in_s_minus(&x) != a_tilde_cone.is_interior(&minus_p) {
            hyperplane_agrees = false;
        }
    }
    Ok(LocalCohomologyReport {
        strictly_negative: ishida.negative_degree,
        ishida,
        projection_checks,
        hyperplane_points,
        hyperplane_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkz::build_as;
    use crate::toric::{semigroup_membership, Membership};

    fn a_s(rows: &[Vec<i64>]) -> IntMatrix {
        build_as(&IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn faces_of_sigma_for_the_segment() {
        let s = IshidaSetup::new(&a_s(&[vec![1]])).unwrap();
        let dims: Vec<usize> = s.faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 2]);
        assert_eq!(s.ridge_facets.len(), 2);
        for (i, _) in s.faces.iter().enumerate() {
            for (j, _) in s.faces.iter().enumerate() {
                let (a, b) = (&s.faces[i], &s.faces[j]);
                if b.dim == a.dim + 1 && a.generators.iter().all(|g| b.generators.contains(g)) {
                    assert!(s.incidence(i, j).abs() == 1);
                }
            }
        }
    }

    #[test]
    fn visibility_rule_matches_semigroup_oracle() {
        let m = a_s(&[vec![1]]);
        let s = IshidaSetup::new(&m).unwrap();
        for x in box_points(3, -3, 2) {
            for f in &s.faces {
                let mut shifted = x.clone();
                for &j in &f.generators {
                    for (k, v) in shifted.iter_mut().enumerate() {
                        *v += 8 * s.cone.generators[j][k];
                    }
                }
                let oracle = matches!(semigroup_membership(&m, &shifted, 40).unwrap(), Membership::Member { .. });
                assert_eq!(s.piece_nonzero(f, &x), oracle, "x = {x:?}, face = {:?}", f.generators);
            }
        }
    }

    #[test]
    fn segment_cohomology() {
        let m = a_s(&[vec![1]]);
        let (lo, hi) = default_box(&m);
        assert_eq!((lo, hi), (-6, 3));
        let rep = ishida_cohomology(&m, lo, hi).unwrap();
        assert!(rep.all_complexes && rep.cech_agrees && rep.negative_degree);
        // On H_σ the classification holds; off it the ideal (y^{a_0}, y^{a_1}) has
        // grade 1 and H^1 survives, e.g. at x = b_0 - a_0.
        assert_eq!(rep.hyperplane_mismatches, 0);
        let x = rep.nonzero.iter().find(|e| e.x == vec![-1, 1, 0]).expect("H^1 at b_0 - a_0");
        assert_eq!(x.cohomology, vec![0, 1, 0]);
        assert!(!x.in_s_minus);
        assert!(rep.mismatches.iter().all(|e| e.x[1] > 0 && e.cohomology == vec![0, 1, 0]));
        let top: Vec<&IshidaDegree> = rep.nonzero.iter().filter(|e| e.cohomology[2] == 1).collect();
        assert!(top.iter().all(|e| e.in_s_minus));
        assert_eq!(top.len(), rep.nonzero.iter().filter(|e| e.in_s_minus).count());
    }

    #[test]
    fn scan_reports() {
        let m = a_s(&[vec![1]]);
        let rep = local_cohomology_scan(&m, -6, 3).unwrap();
        assert_eq!(rep.projection_checks.len(), 3);
        assert!(rep.passed(), "{rep:?}");
    }
}
