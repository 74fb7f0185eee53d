use num_bigint::BigInt;

use super::{integer_solve, IntMatrix, LinalgError};

pub const DEFAULT_SOLVE_BOUND: u32 = 64;

/// Outcome of a bounded search for `k in N^s` with `M k = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegSolve {
    /// Lex-smallest solution among those of minimal total degree.
    Found(Vec<i64>),
    /// Proven infeasible (lattice obstruction or exhaustive graded search).
    Infeasible,
    /// Nothing found with total degree up to the bound, and no proof of infeasibility.
    BoundExceeded(u32),
}

/// Finds `y` with `y . col > 0` for every nonzero column: first the smallest such
/// `y` in a box of radius 3, then by perceptron updates `y += col` (which terminate
/// whenever a solution exists). Zero columns are ignored. Returns `None` if none
/// is found within the iteration cap.
pub fn positive_functional(cols: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    let nonzero: Vec<&Vec<i64>> = cols.iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
    let works = |y: &[i64]| nonzero.iter().all(|c| dot(y, c) > 0);
    if dim == 0 {
        return if nonzero.is_empty() { Some(vec![]) } else { None };
    }
    for radius in 1..=3i64 {
        let mut y = vec![-radius; dim];
        loop {
            if y.iter().any(|v| v.abs() == radius) && works(&y) {
                return Some(y);
            }
            let mut i = 0;
            while i < dim {
                if y[i] < radius {
                    y[i] += 1;
                    break;
                }
                y[i] = -radius;
                i += 1;
            }
            if i == dim {
                break;
            }
        }
    }
    let mut y = vec![0i64; dim];
    for _ in 0..PERCEPTRON_CAP {
        let Some(c) = nonzero.iter().find(|c| dot(&y, c) <= 0) else { return Some(y) };
        for (a, b) in y.iter_mut().zip(c.iter()) {
            *a += b;
        }
    }
    None
}

const PERCEPTRON_CAP: usize = 100_000;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Bounded search for a nonnegative integer solution of `M k = t`.
pub fn nonneg_integer_solve(m: &IntMatrix, t: &[i64], bound: u32) -> Result<NonnegSolve, LinalgError> {
    let cols = m.columns_i64()?;
    let big_t: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
    if integer_solve(m, &big_t)?.is_none() {
        return Ok(NonnegSolve::Infeasible);
    }
    let grading = positive_functional(&cols, m.rows());
    let mut search = Search::new(&cols, t, grading.as_deref());
    let mut max_deg = bound;
    let mut exhaustive = false;
    if let Some(y) = &grading {
        let yt = dot(y, t);
        if yt < 0 {
            return Ok(NonnegSolve::Infeasible);
        }
        // Every nonzero column has y-degree >= 1; zero columns are never used.
        let cap = yt as u64;
        if cap <= bound as u64 {
            max_deg = cap as u32;
            exhaustive = true;
        }
    }
    for deg in 0..=max_deg {
        if let Some(k) = search.at_degree(deg) {
            return Ok(NonnegSolve::Found(k));
        }
    }
    Ok(if exhaustive { NonnegSolve::Infeasible } else { NonnegSolve::BoundExceeded(bound) })
}

/// All nonnegative solutions of minimal total degree (up to `bound`), in lex order.
pub fn minimal_nonneg_solutions(m: &IntMatrix, t: &[i64], bound: u32, limit: usize) -> Result<Vec<Vec<i64>>, LinalgError> {
    let cols = m.columns_i64()?;
    let grading = positive_functional(&cols, m.rows());
    let mut search = Search::new(&cols, t, grading.as_deref());
    for deg in 0..=bound {
        let all = search.all_at_degree(deg, limit);
        if !all.is_empty() {
            return Ok(all);
        }
    }
    Ok(vec![])
}

struct Search<'a> {
    cols: Vec<&'a Vec<i64>>,
    t: &'a [i64],
    y: Option<&'a [i64]>,
    ydeg: Vec<i64>,
    usable: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(cols: &'a [Vec<i64>], t: &'a [i64], y: Option<&'a [i64]>) -> Self {
        let ydeg = cols.iter().map(|c| y.map_or(0, |y| dot(y, c))).collect();
        let usable = cols.iter().map(|c| c.iter().any(|&x| x != 0)).collect();
        Search { cols: cols.iter().collect(), t, y, ydeg, usable }
    }

    fn at_degree(&mut self, deg: u32) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        self.run(deg, 1, &mut out);
        out.into_iter().next()
    }

    fn all_at_degree(&mut self, deg: u32, limit: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.run(deg, limit, &mut out);
        out
    }

    fn run(&self, deg: u32, limit: usize, out: &mut Vec<Vec<i64>>) {
        let s = self.cols.len();
        let mut k = vec![0i64; s];
        let mut residual = self.t.to_vec();
        let yt = self.y.map(|y| dot(y, self.t));
        self.rec(0, deg as i64, &mut k, &mut residual, yt, limit, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        j: usize,
        remaining: i64,
        k: &mut Vec<i64>,
        residual: &mut Vec<i64>,
        yres: Option<i64>,
        limit: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if j == self.cols.len() {
            if remaining == 0 && residual.iter().all(|&x| x == 0) {
                out.push(k.clone());
            }
            return;
        }
        if let Some(yr) = yres {
            if yr < 0 {
                return;
            }
            // The remaining degree must be realizable by columns j.. in y-degree.
            let rest = &self.ydeg[j..];
            let usable_rest: Vec<i64> = rest.iter().zip(&self.usable[j..]).filter(|(_, u)| **u).map(|(d, _)| *d).collect();
            if remaining > 0 && usable_rest.is_empty() {
                return;
            }
            if let (Some(&lo), Some(&hi)) = (usable_rest.iter().min(), usable_rest.iter().max()) {
                if remaining * lo > yr || remaining * hi < yr {
                    return;
                }
            } else if yr != 0 {
                return;
            }
        }
        let max_here = if self.usable[j] { remaining } else { 0 };
        // Lex-smallest first means small k_j first.
        for v in 0..=max_here {
            k[j] = v;
            self.rec(j + 1, remaining - v, k, residual, yres.map(|yr| yr - v * self.ydeg[j]), limit, out);
            if out.len() >= limit {
                k[j] = 0;
                return;
            }
            for (r, c) in residual.iter_mut().zip(self.cols[j].iter()) {
                *r -= c;
            }
        }
        for (r, c) in residual.iter_mut().zip(self.cols[j].iter()) {
            *r += c * (max_here + 1);
        }
        k[j] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(c: &[&[i64]]) -> IntMatrix {
        let v: Vec<Vec<i64>> = c.iter().map(|x| x.to_vec()).collect();
        IntMatrix::from_columns(c[0].len(), &v).unwrap()
    }

    #[test]
    fn positive_functional_beyond_the_small_box() {
        // Any solution has y_0 >= 5.
        let c = vec![vec![1, -4], vec![0, 1], vec![1, 0]];
        let y = positive_functional(&c, 2).unwrap();
        assert!(c.iter().all(|v| dot(&y, v) > 0), "{y:?}");
        assert_eq!(positive_functional(&[vec![1, 2], vec![-1, -2]], 2), None);
        assert_eq!(positive_functional(&[vec![0, 0], vec![3, 1]], 2).map(|y| dot(&y, &[3, 1]) > 0), Some(true));
    }

    #[test]
    fn lex_smallest_minimal_degree() {
        let b = cols(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]);
        assert_eq!(nonneg_integer_solve(&b, &[2, 1, 1], 64).unwrap(), NonnegSolve::Found(vec![0, 1, 1, 0]));
        let all = minimal_nonneg_solutions(&b, &[2, 1, 1], 64, 10).unwrap();
        assert_eq!(all, vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
    }

    #[test]
    fn infeasible_cases() {
        let b = cols(&[&[2]]);
        assert_eq!(nonneg_integer_solve(&b, &[3], 64).unwrap(), NonnegSolve::Infeasible);
        assert_eq!(nonneg_integer_solve(&b, &[-2], 64).unwrap(), NonnegSolve::Infeasible);
        let c = cols(&[&[1, 0], &[1, 2]]);
        assert_eq!(nonneg_integer_solve(&c, &[1, 1], 64).unwrap(), NonnegSolve::Infeasible);
    }

    #[test]
    fn non_pointed_search() {
        let b = cols(&[&[1, 0], &[2, 1], &[-1, 0], &[-2, 1]]);
        assert_eq!(nonneg_integer_solve(&b, &[1, 1], 64).unwrap(), NonnegSolve::Found(vec![0, 1, 1, 0]));
        // (0,-1) is outside the cone; the search cannot prove it without facets.
        assert_eq!(nonneg_integer_solve(&b, &[0, -1], 5).unwrap(), NonnegSolve::BoundExceeded(5));
    }
}
