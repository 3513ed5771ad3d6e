use std::fmt;

use super::{add, inv, mul, neg, reduce, sub, Poly, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, s: u32) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = s % p;
        }
        m
    }

    /// Builds from signed integer rows, reducing mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!("row {i} has length {} (expected {c})", row.len())));
            }
            data.extend(row.iter().map(|&v| reduce(v, p)));
        }
        Ok(FpMatrix { p, rows: r, cols: c, data })
    }

    /// Takes ownership of reduced row-major data.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        debug_assert!(data.iter().all(|&v| v < p));
        FpMatrix { p, rows, cols, data }
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Column vector.
    pub fn column(p: u32, v: &[u32]) -> Self {
        Self::from_vec(p, v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, n: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vecs(p: u32, n: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * n);
        for r in rows {
            assert_eq!(r.len(), n);
            data.extend_from_slice(r);
        }
        Self::from_vec(p, rows.len(), n, data)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { 1 % self.p } else { 0 }))
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| v as i64).collect()).collect()
    }

    fn check_same(&self, o: &FpMatrix, what: &str) {
        assert_eq!(self.p, o.p, "{what}: modulus mismatch");
        assert_eq!(self.shape(), o.shape(), "{what}: shape mismatch");
    }

    pub fn try_mul(&self, o: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != o.rows || self.p != o.p {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    /// Matrix product. Panics on shape mismatch.
    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, o.p, "mul: modulus mismatch");
        assert_eq!(self.cols, o.rows, "mul: {}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols);
        let p = self.p as u64;
        let (n, m) = (self.rows, o.cols);
        let mut out = vec![0u32; n * m];
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let arow = self.row(i);
            let mut pending = 0u32;
            for (k, &a) in arow.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let brow = &o.data[k * m..(k + 1) * m];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                pending += 1;
                // each term is below 2^32, so flush well before u64 overflow
                if pending == u32::MAX >> 1 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (dst, &x) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *dst = (x % p) as u32;
            }
        }
        FpMatrix { p: self.p, rows: n, cols: m, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &b) in acc.iter_mut().zip(self.row(i)) {
                *x += a as u64 * b as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn add(&self, o: &FpMatrix) -> FpMatrix {
        self.check_same(o, "add");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add(a, b, p)).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        self.check_same(o, "sub");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub(a, b, p)).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, o: &FpMatrix) {
        self.check_same(o, "add_assign");
        let p = self.p;
        self.data.iter_mut().zip(&o.data).for_each(|(a, &b)| *a = add(*a, b, p));
    }

    /// `self += s * o`
    pub fn axpy(&mut self, s: u32, o: &FpMatrix) {
        self.check_same(o, "axpy");
        if s == 0 {
            return;
        }
        let p = self.p;
        self.data.iter_mut().zip(&o.data).for_each(|(a, &b)| *a = add(*a, mul(s, b, p), p));
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let p = self.p;
        let s = s % p;
        FpMatrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul(a, s, p)).collect() }
    }

    pub fn neg(&self) -> FpMatrix {
        let p = self.p;
        FpMatrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| neg(a, p)).collect() }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Kronecker product; basis `e_i (x) f_j` sits at index `i * dim_f + j`.
    pub fn kron(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.p, o.p);
        let p = self.p;
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = FpMatrix::zeros(p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.data[(i * o.rows + k) * c + j * o.cols + l] = mul(a, o.get(k, l), p);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(p: u32, rows: usize, parts: &[&FpMatrix]) -> FpMatrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = FpMatrix::zeros(p, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack: row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(p: u32, cols: usize, parts: &[&FpMatrix]) -> FpMatrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack: column mismatch");
            data.extend_from_slice(&m.data);
        }
        FpMatrix { p, rows, cols, data }
    }

    pub fn block_diag(p: u32, parts: &[&FpMatrix]) -> FpMatrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = FpMatrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &FpMatrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for i in 0..m.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(m.row(i));
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, m: &FpMatrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        let p = self.p;
        for i in 0..m.rows {
            for j in 0..m.cols {
                let k = (r0 + i) * self.cols + c0 + j;
                self.data[k] = add(self.data[k], m.get(i, j), p);
            }
        }
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FpMatrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut out = FpMatrix::zeros(self.p, r1 - r0, c1 - c0);
        for i in r0..r1 {
            out.row_mut(i - r0).copy_from_slice(&self.row(i)[c0..c1]);
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FpMatrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| add(acc, self.get(i, i), self.p))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Reduced row-echelon form, rank and pivot columns (leftmost pivot, topmost row).
    pub fn rref(&self) -> (FpMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let r = pivots.len();
        (m, r, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in c..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let s = inv(self.data[r * cols + c], p);
            if s != 1 {
                for j in c..cols {
                    self.data[r * cols + j] = mul(self.data[r * cols + j], s, p);
                }
            }
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = (p - f) as u64;
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + nf * y as u64) % p as u64) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, rank, pivots) = self.rref();
        let vecs = kernel_from_rref(&r, rank, &pivots);
        Subspace::from_vectors(self.p, self.cols, vecs)
    }

    /// Kernel vectors in free-variable normal form (one per free column, in column order).
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let (r, rank, pivots) = self.rref();
        kernel_from_rref(&r, rank, &pivots)
    }

    /// Solves `self * x = b`. Returns a particular solution with the kernel, or `None` if inconsistent.
    pub fn solve(&self, b: &FpMatrix) -> Result<Option<(FpMatrix, Subspace)>> {
        if b.rows != self.rows || b.p != self.p {
            return Err(Error::Dimension(format!(
                "solve: system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let aug = FpMatrix::hstack(self.p, self.rows, &[self, b]);
        let (r, rank, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = FpMatrix::zeros(self.p, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate().take(rank) {
            for k in 0..b.cols {
                x.set(c, k, r.get(i, self.cols + k));
            }
        }
        Ok(Some((x, self.kernel())))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = FpMatrix::hstack(self.p, n, &[self, &FpMatrix::identity(self.p, n)]);
        let (r, rank, pivots) = aug.rref();
        if rank < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix_rows(self)
    }

    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Evaluates a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, f: &Poly) -> FpMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let k = i * n + i;
                acc.data[k] = add(acc.data[k], c, self.p);
            }
        }
        acc
    }

    /// Minimal polynomial, monic: the lcm of the local minimal polynomials of a set of
    /// vectors whose Krylov spaces fill the whole space.
    pub fn min_poly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let p = self.p;
        let mut span = super::Echelon::new(p, n);
        let mut f = Poly::one(p);
        for i in 0..n {
            if span.is_full() {
                break;
            }
            let mut v = vec![0u32; n];
            v[i] = 1;
            if span.contains(&v) {
                continue;
            }
            let mut krylov = super::Echelon::with_tracking(p, n);
            let mu = loop {
                match krylov.insert_tracked(v.clone()) {
                    None => {
                        span.insert(v.clone());
                        v = self.mul_vec(&v);
                    }
                    Some(c) => {
                        let mut c: Vec<u32> = c.iter().map(|&x| neg(x, p)).collect();
                        c.push(1);
                        break Poly::new(p, c);
                    }
                }
            };
            let g = f.gcd(&mu);
            f = f.mul(&mu).div_exact(&g);
        }
        f
    }
}

pub(crate) fn kernel_from_rref(r: &FpMatrix, rank: usize, pivots: &[usize]) -> Vec<Vec<u32>> {
    let p = r.p;
    let cols = r.cols;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for f in 0..cols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![0u32; cols];
        v[f] = 1 % p;
        for (i, &c) in pivots.iter().enumerate().take(rank) {
            v[c] = neg(r.get(i, f), p);
        }
        out.push(v);
    }
    out
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let i3 = FpMatrix::identity(2, 3);
        let (r, rank, piv) = i3.rref();
        assert_eq!(r, i3);
        assert_eq!(rank, 3);
        assert_eq!(piv, vec![0, 1, 2]);
        let z = FpMatrix::zeros(3, 2, 4);
        assert_eq!(z.rref().0, z);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rref_rank_one_mod_5() {
        let (r, rank, _) = m(5, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, m(5, &[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(7, 4).kernel().dim(), 0);
        assert_eq!(FpMatrix::zeros(7, 2, 3).kernel().dim(), 3);
        let k = m(2, &[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![1, 1]);
    }

    #[test]
    fn solve_examples() {
        let b = FpMatrix::column(3, &[2, 1, 0]);
        let (x, _) = FpMatrix::identity(3, 3).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
        let nz = FpMatrix::column(3, &[1, 0]);
        assert!(FpMatrix::zeros(3, 2, 2).solve(&nz).unwrap().is_none());
        let (x, k) = m(2, &[&[1, 1], &[0, 1]]).solve(&FpMatrix::column(2, &[0, 1])).unwrap().unwrap();
        assert_eq!(x.col(0), vec![1, 1]);
        assert_eq!(k.dim(), 0);
        assert!(FpMatrix::identity(2, 2).solve(&FpMatrix::zeros(2, 3, 1)).is_err());
    }

    #[test]
    fn inverse_and_minpoly() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        assert!(m(5, &[&[1, 2], &[2, 4]]).inverse().is_none());
        // nilpotent Jordan block has minimal polynomial x^2
        let j = m(3, &[&[0, 1], &[0, 0]]);
        assert_eq!(j.min_poly().coeffs(), &[0, 0, 1]);
        assert!(a.eval_poly(&a.min_poly()).is_zero());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(7, &[&[1, 2], &[3, 4]]);
        let i = FpMatrix::identity(7, 2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), 2);
        assert_eq!(k.get(3, 1), 3);
        assert_eq!(k.shape(), (4, 4));
    }
}
