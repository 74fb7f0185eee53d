use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse rational vector keyed by coordinate index.
pub type SparseVec = BTreeMap<usize, BigRational>;

pub fn axpy(y: &mut SparseVec, a: &BigRational, x: &SparseVec) {
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(BigRational::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Incremental echelon form over Q. Each stored row is normalized so that its
/// pivot (the smallest index present) equals 1, and the row carries the
/// combination of inserted vectors that produced it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. Returns the remainder and the
    /// combination `c` of inserted vectors with `v - remainder = sum c_i v_i`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut comb = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(p) = next else { break };
            let a = rem[&p].clone();
            let (row, rc) = &self.rows[&p];
            axpy(&mut rem, &-a.clone(), row);
            axpy(&mut comb, &a, rc);
            cursor = p + 1;
        }
        (rem, comb)
    }

    /// Inserts `v`; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, comb) = self.reduce(v);
        let Some((&p, lead)) = rem.iter().next() else { return false };
        let inv = BigRational::one() / lead;
        let mut row = SparseVec::new();
        axpy(&mut row, &inv, &rem);
        let mut rc = SparseVec::new();
        axpy(&mut rc, &-inv.clone(), &comb);
        let e = rc.entry(id).or_insert_with(BigRational::zero);
        *e += &inv;
        self.rows.insert(p, (row, rc));
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Exact rank of a list of sparse rational vectors.
pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
