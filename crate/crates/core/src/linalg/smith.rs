use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError};

/// `M = C * E * F` with `C`, `F` unimodular and `E` in Smith normal form.
/// `u = C^-1` and `v = F^-1`, so `u * M * v = E`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub c: IntMatrix,
    pub e: IntMatrix,
    pub f: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.e.get(i, i).clone()).collect()
    }

    /// Checks `C E F = M`, the unimodularity of `C`, `F`, and the divisibility chain.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let Ok(ce) = self.c.mul(&self.e) else { return false };
        let Ok(cef) = ce.mul(&self.f) else { return false };
        if &cef != m {
            return false;
        }
        if !self.c.is_unimodular() || !self.f.is_unimodular() {
            return false;
        }
        let Ok(uc) = self.u.mul(&self.c) else { return false };
        let Ok(vf) = self.v.mul(&self.f) else { return false };
        if uc != IntMatrix::identity(m.rows()) || vf != IntMatrix::identity(m.cols()) {
            return false;
        }
        for i in 0..self.e.rows() {
            for j in 0..self.e.cols() {
                let x = self.e.get(i, j);
                if i != j && !x.is_zero() {
                    return false;
                }
            }
        }
        let d = self.invariant_factors();
        if d.iter().any(|x| !x.is_positive()) {
            return false;
        }
        if (self.rank..m.rows().min(m.cols())).any(|i| !self.e.get(i, i).is_zero()) {
            return false;
        }
        d.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

/// Smith normal form with a deterministic pivot rule: smallest absolute value,
/// ties broken by lowest row then lowest column.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, s) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut c = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(s);
    let mut f = IntMatrix::identity(s);

    // Each helper keeps u*M*v = d and c = u^-1, f = v^-1.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, c: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        d.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        c.add_col_multiple(src, dst, &-k);
    };
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, f: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        d.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        f.add_row_multiple(src, dst, &-k);
    };

    let mut rank = 0;
    for t in 0..r.min(s) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..s {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if x.abs() < d.get(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, c, v, f, rank);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            c.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            f.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_add(&mut d, &mut u, &mut c, i, t, &-q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..s {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_add(&mut d, &mut v, &mut f, j, t, &-q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..s).any(|j| !d.get(i, j).is_multiple_of(&p)));
            if let Some(i) = bad {
                row_add(&mut d, &mut u, &mut c, t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            c.negate_col(t);
        }
        rank += 1;
    }
    finish(d, u, c, v, f, rank)
}

fn finish(e: IntMatrix, u: IntMatrix, c: IntMatrix, v: IntMatrix, f: IntMatrix, rank: usize) -> Smith {
    Smith { c, e, f, u, v, rank }
}

/// Row-style Hermite normal form of the row lattice: returns the nonzero rows
/// in echelon form with positive pivots and reduced entries above each pivot.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (r, s) = (a.rows(), a.cols());
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for j in 0..s {
        if pivot_row == r {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivot_row..r).filter(|&i| !a.get(i, j).is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz
                .iter()
                .min_by(|&&x, &&y| a.get(x, j).abs().cmp(&a.get(y, j).abs()).then(x.cmp(&y)))
                .unwrap();
            a.swap_rows(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..r {
                if a.get(i, j).is_zero() {
                    continue;
                }
                let q = a.get(i, j).div_floor(a.get(pivot_row, j));
                a.add_row_multiple(i, pivot_row, &-q);
                if !a.get(i, j).is_zero() {
                    done = false;
                }
            }
            if done {
                if a.get(pivot_row, j).is_negative() {
                    a.negate_row(pivot_row);
                }
                pivots.push((pivot_row, j));
                pivot_row += 1;
                break;
            }
        }
    }
    for &(pr, pc) in &pivots {
        for i in 0..pr {
            let q = a.get(i, pc).div_floor(a.get(pr, pc));
            a.add_row_multiple(i, pr, &-q);
        }
    }
    let keep: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| a.row(i)).collect();
    if keep.is_empty() {
        return IntMatrix::zeros(0, s);
    }
    IntMatrix::from_rows(&keep).expect("rows have equal length")
}

/// Integer kernel `{k : M k = 0}` as a canonical basis (rows of the result are
/// the basis vectors, in Hermite form with positive leading entries).
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let sm = smith_normal_form(m);
    let s = m.cols();
    let basis: Vec<Vec<BigInt>> = (sm.rank..s).map(|j| sm.v.column(j)).collect();
    if basis.is_empty() {
        return IntMatrix::zeros(0, s);
    }
    hermite_rows(&IntMatrix::from_rows(&basis).expect("equal length"))
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank
}

/// True iff the columns of `m` generate `Z^rows` as a group.
pub fn spans_full_lattice(m: &IntMatrix) -> bool {
    let sm = smith_normal_form(m);
    sm.rank == m.rows() && sm.invariant_factors().iter().all(One::is_one)
}

/// One integer solution of `M x = t`, or `None` if `t` is not in the column lattice.
pub fn integer_solve(m: &IntMatrix, t: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if t.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: (m.rows(), 1), found: (t.len(), 1) });
    }
    let sm = smith_normal_form(m);
    // E (F x) = U t
    let ut = sm.u.mul_vec(t)?;
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, val) in ut.iter().enumerate() {
        if i < sm.rank {
            let e = sm.e.get(i, i);
            if !val.is_multiple_of(e) {
                return Ok(None);
            }
            y[i] = val / e;
        } else if !val.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(sm.v.mul_vec(&y)?))
}
