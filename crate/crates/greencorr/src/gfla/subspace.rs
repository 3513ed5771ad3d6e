use super::matrix::kernel_from_rref;
use super::{add, inv, mul, neg, FpMatrix};
use crate::error::{Error, Result};

/// Subspace of `GF(p)^n`, stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Self {
        Self::from_matrix_rows(&FpMatrix::identity(p, n))
    }

    pub fn from_vectors(p: u32, n: usize, vecs: Vec<Vec<u32>>) -> Self {
        if vecs.is_empty() {
            return Self::zero(p, n);
        }
        Self::from_matrix_rows(&FpMatrix::from_row_vecs(p, n, &vecs))
    }

    pub fn from_matrix_rows(m: &FpMatrix) -> Self {
        let (r, rank, pivots) = m.rref();
        let rows = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace { p: m.p(), n: m.cols(), rows, pivots }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_row_vecs(self.p, self.n, &self.rows)
    }

    /// Subtracts the projection along the pivot coordinates; the result is zero iff `v` is contained.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for j in c..self.n {
                if row[j] != 0 {
                    v[j] = add(v[j], mul(nf, row[j], p), p);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coefficients of `v` in the RREF basis, if contained.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.p != o.p || self.n != o.n {
            return Err(Error::Dimension(format!(
                "subspaces of GF({})^{} and GF({})^{}",
                self.p, self.n, o.p, o.n
            )));
        }
        Ok(())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let mut v = self.rows.clone();
        v.extend(o.rows.iter().cloned());
        Ok(Subspace::from_vectors(self.p, self.n, v))
    }

    pub fn intersection(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        if self.dim() == 0 || o.dim() == 0 {
            return Ok(Subspace::zero(self.p, self.n));
        }
        // a^T A = b^T B  <=>  [A; -B]^T (a, b) = 0
        let a = self.basis_matrix();
        let b = o.basis_matrix().neg();
        let stacked = FpMatrix::vstack(self.p, self.n, &[&a, &b]).transpose();
        let ker = stacked.kernel_vectors();
        let vecs: Vec<Vec<u32>> = ker.iter().map(|k| a.vec_mul(&k[..self.dim()])).collect();
        Ok(Subspace::from_vectors(self.p, self.n, vecs))
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.p == o.p && self.n == o.n && self.rows.iter().all(|r| o.contains(r))
    }

    /// Vectors from `sup`'s basis that extend a basis of `self` to one of `sup`.
    pub fn complement_in(&self, sup: &Subspace) -> Vec<Vec<u32>> {
        let mut e = Echelon::new(self.p, self.n);
        for r in &self.rows {
            e.insert(r.clone());
        }
        sup.rows.iter().filter(|r| e.insert((*r).clone())).cloned().collect()
    }
}

/// Incremental row echelon form. Rows are reduced in insertion order; optionally tracks
/// each stored row as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<u32>>>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Self {
        Echelon { p, n, rows: Vec::new(), pivots: Vec::new(), track: None }
    }

    pub fn with_tracking(p: u32, n: usize) -> Self {
        Echelon { track: Some(Vec::new()), ..Self::new(p, n) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Reduces `v` in place, returning the multipliers used for each stored row.
    fn reduce_with(&self, v: &mut [u32], mut record: impl FnMut(usize, u32)) {
        let p = self.p;
        for (k, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = v[c];
            if f == 0 {
                continue;
            }
            record(k, f);
            let nf = (p - f) as u64;
            for j in c..self.n {
                let r = row[j];
                if r != 0 {
                    v[j] = ((v[j] as u64 + nf * r as u64) % p as u64) as u32;
                }
            }
        }
    }

    pub fn reduce(&self, v: &mut [u32]) {
        self.reduce_with(v, |_, _| {});
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.n, "echelon: vector length");
        assert!(self.track.is_none(), "use insert_tracked on a tracking echelon");
        self.reduce(&mut v);
        self.push_reduced(v, None)
    }

    /// Tracking insert. Independent vectors are numbered in insertion order; a dependent `v`
    /// is not stored and `Some(c)` is returned with `v = sum c[j] * independent[j]`.
    pub fn insert_tracked(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        let tag = self.rows.len();
        let p = self.p;
        let mut combo = vec![0u32; tag + 1];
        {
            let track = self.track.as_ref().expect("tracking echelon");
            self.reduce_with(&mut v, |k, f| {
                for (c, &t) in combo.iter_mut().zip(&track[k]) {
                    *c = add(*c, mul(f, t, p), p);
                }
            });
        }
        if v.iter().all(|&x| x == 0) {
            combo.truncate(tag);
            return Some(combo);
        }
        // stored row = (inserted[tag] - combo) / lead
        let mut t: Vec<u32> = combo.iter().map(|&c| neg(c, p)).collect();
        t[tag] = 1;
        self.push_reduced(v, Some(t));
        None
    }

    fn push_reduced(&mut self, mut v: Vec<u32>, mut t: Option<Vec<u32>>) -> bool {
        let p = self.p;
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[c], p);
        if s != 1 {
            for x in v[c..].iter_mut() {
                *x = mul(*x, s, p);
            }
            if let Some(t) = t.as_mut() {
                t.iter_mut().for_each(|x| *x = mul(*x, s, p));
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        if let (Some(track), Some(t)) = (self.track.as_mut(), t) {
            track.push(t);
        }
        true
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::from_vectors(self.p, self.n, self.rows.clone())
    }

    /// Null space of the system whose equations are the inserted rows.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        if self.rows.is_empty() {
            return (0..self.n)
                .map(|i| {
                    let mut v = vec![0; self.n];
                    v[i] = 1 % self.p;
                    v
                })
                .collect();
        }
        let m = FpMatrix::from_row_vecs(self.p, self.n, &self.rows);
        let (r, rank, pivots) = m.rref();
        kernel_from_rref(&r, rank, &pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn intersection_of_distinct_lines_is_zero() {
        let a = Subspace::from_vectors(5, 2, vec![vec![1, 0]]);
        let b = Subspace::from_vectors(5, 2, vec![vec![1, 1]]);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        let c = Subspace::zero(5, 3);
        assert!(a.sum(&c).is_err());
    }

    #[test]
    fn coords_use_pivot_columns() {
        let s = Subspace::from_vectors(7, 3, vec![vec![1, 0, 2], vec![0, 1, 3]]);
        assert_eq!(s.coords(&[3, 4, 4]), Some(vec![3, 4]));
        assert_eq!(s.coords(&[0, 0, 1]), None);
    }

    #[test]
    fn tracking_recovers_dependency() {
        let mut e = Echelon::with_tracking(3, 2);
        assert!(e.insert_tracked(vec![1, 2]).is_none());
        assert!(e.insert_tracked(vec![0, 1]).is_none());
        // (2, 0) = 2*(1,2) - 4*(0,1) = 2*(1,2) + 2*(0,1) mod 3
        assert_eq!(e.insert_tracked(vec![2, 0]), Some(vec![2, 2]));
    }

    fn mat(p: u32) -> impl Strategy<Value = FpMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| FpMatrix::from_vec(p, r, c, d))
        })
    }

    fn mat_cols(p: u32, c: usize) -> impl Strategy<Value = FpMatrix> {
        (1usize..6).prop_flat_map(move |r| {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| FpMatrix::from_vec(p, r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in mat(3)) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
            for v in m.kernel().basis() {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rref_is_idempotent(m in mat(5)) {
            let (r, _, _) = m.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn dimension_formula((a, b) in (1usize..6).prop_flat_map(|c| (mat_cols(2, c), mat_cols(2, c)))) {
            let (sa, sb) = (a.row_space(), b.row_space());
            let s = sa.sum(&sb).unwrap();
            let i = sa.intersection(&sb).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), sa.dim() + sb.dim());
            prop_assert!(i.is_subspace_of(&sa) && i.is_subspace_of(&sb));
        }

        #[test]
        fn echelon_matches_batch_rank(m in mat(7)) {
            let mut e = Echelon::new(7, m.cols());
            for i in 0..m.rows() {
                e.insert(m.row(i).to_vec());
            }
            prop_assert_eq!(e.rank(), m.rank());
            prop_assert_eq!(e.to_subspace(), m.row_space());
        }
    }
}
