use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::linalg::rational::{axpy, rank_of, SparseVec};

/// One graded piece of a cochain complex `C^0 -> C^1 -> ... -> C^r` of finite
/// dimensional rational vector spaces. `maps[i]` sends `C^i` to `C^{i+1}`; it is
/// stored by columns, each column in the coordinates of `C^{i+1}`.
#[derive(Clone, Debug, Default)]
pub struct ComplexPiece {
    pub degree: Vec<i64>,
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceHomology {
    pub degree: Vec<i64>,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
}

impl ComplexPiece {
    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(|m| rank_of(m)).collect()
    }

    /// `dim H^i = dim C^i - rank d^i - rank d^{i-1}`.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|i| {
                let out = if i < ranks.len() { ranks[i] } else { 0 };
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect()
    }

    /// `d^{i+1} d^i = 0` for every `i`, computed exactly.
    pub fn is_complex(&self) -> bool {
        for i in 0..self.maps.len().saturating_sub(1) {
            for col in &self.maps[i] {
                let mut acc = SparseVec::new();
                for (j, c) in col {
                    axpy(&mut acc, c, &self.maps[i + 1][*j]);
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn homology_report(&self) -> PieceHomology {
        PieceHomology { degree: self.degree.clone(), dims: self.dims.clone(), cohomology: self.cohomology() }
    }
}

pub(crate) fn unit(i: usize, c: BigRational) -> SparseVec {
    let mut v = SparseVec::new();
    if !c.is_zero() {
        v.insert(i, c);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::q;

    #[test]
    fn interval_complex() {
        // C^0 = Q -> C^1 = Q^2 (1 -> (1, 1)) -> C^2 = Q ((a, b) -> a - b).
        let p = ComplexPiece {
            degree: vec![],
            dims: vec![1, 2, 1],
            maps: vec![
                vec![[(0, q(1)), (1, q(1))].into_iter().collect()],
                vec![unit(0, q(1)), unit(0, q(-1))],
            ],
        };
        assert!(p.is_complex());
        assert_eq!(p.cohomology(), vec![0, 0, 0]);
        let broken = ComplexPiece { maps: vec![p.maps[0].clone(), vec![unit(0, q(1)), unit(0, q(1))]], ..p };
        assert!(!broken.is_complex());
    }
}
