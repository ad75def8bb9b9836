//! Exact sparse Gaussian elimination over the rationals.
//!
//! Vectors are `BTreeMap<usize, Rational>` keyed by coordinate index. An
//! [`EchelonBasis`] keeps a reduced row-echelon basis of the span of the
//! vectors inserted so far and, per row, the combination of inserted vectors
//! it came from, so membership tests can return an explicit witness.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

/// `dst += c * src`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, c: &Rational, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (idx, x) in src {
        let entry = dst.entry(*idx).or_insert_with(Rational::zero);
        *entry += c * x;
        if entry.is_zero() {
            dst.remove(idx);
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    pivot: usize,
    vec: SparseVec,
    combo: SparseVec,
}

#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<Row>,
    by_pivot: BTreeMap<usize, usize>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered via [`insert`](Self::insert), dependent or not.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` in place; returns `combo` with `v_original = v_reduced + sum combo[t] * input_t`.
    fn reduce(&self, v: &mut SparseVec) -> SparseVec {
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).next().map(|(i, c)| (*i, c.clone()));
            let Some((col, coeff)) = next else { break };
            if let Some(&r) = self.by_pivot.get(&col) {
                let row = &self.rows[r];
                axpy(v, &-&coeff, &row.vec);
                axpy(&mut combo, &coeff, &row.combo);
            }
            cursor = col + 1;
        }
        combo
    }

    /// Adds `v` as input number `inserted()`; returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let tag = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let used = self.reduce(&mut v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        // reduced = input_tag - sum used[t] input_t
        let mut combo = SparseVec::new();
        combo.insert(tag, Rational::one());
        axpy(&mut combo, &-Rational::one(), &used);
        let vec: SparseVec = v.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        let combo: SparseVec = combo.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        // keep earlier rows reduced against the new pivot
        for row in &mut self.rows {
            if let Some(c) = row.vec.get(&pivot).cloned() {
                axpy(&mut row.vec, &-&c, &vec);
                axpy(&mut row.combo, &-&c, &combo);
            }
        }
        self.by_pivot.insert(pivot, self.rows.len());
        self.rows.push(Row { pivot, vec, combo });
        true
    }

    /// If `v` lies in the span, the coefficients `x` with `v = sum x[t] * input_t`.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut w = v.clone();
        let combo = self.reduce(&mut w);
        w.is_empty().then_some(combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.solve(v).is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(dense_to_sparse(row));
    }
    basis.rank()
}

pub fn dense_to_sparse(row: &[Rational]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, c)| (*i, int(*c))).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), int(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
    }

    #[test]
    fn solve_returns_a_witness() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(sv(&[(0, 1), (1, 1)])));
        assert!(b.insert(sv(&[(1, 2), (2, 1)])));
        assert!(!b.insert(sv(&[(0, 2), (1, 4), (2, 1)])));
        let target = sv(&[(0, 3), (1, 1), (2, -1)]);
        let x = b.solve(&target).expect("in span");
        let mut recon = SparseVec::new();
        axpy(&mut recon, &x.get(&0).cloned().unwrap_or_default(), &sv(&[(0, 1), (1, 1)]));
        axpy(&mut recon, &x.get(&1).cloned().unwrap_or_default(), &sv(&[(1, 2), (2, 1)]));
        axpy(
            &mut recon,
            &x.get(&2).cloned().unwrap_or_default(),
            &sv(&[(0, 2), (1, 4), (2, 1)]),
        );
        assert_eq!(recon, target);
        assert!(b.solve(&sv(&[(2, 1), (3, 1)])).is_none());
    }

    #[test]
    fn fractional_pivots() {
        let mut b = EchelonBasis::new();
        let v: SparseVec = [(4usize, rat(2, 3))].into_iter().collect();
        assert!(b.insert(v));
        let w: SparseVec = [(4usize, rat(-7, 5))].into_iter().collect();
        assert_eq!(b.solve(&w).unwrap()[&0], rat(-21, 10));
    }
}
