//! Dense matrices over a [`Field`] with exact rank, kernel, and affine solve
//! via Gauss-Jordan elimination.

use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows x cols");
        Self { field, rows, cols, data }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Self { field, rows: nrows, cols, data }
    }

    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        let data = entries.iter().map(|&n| field.from_i64(n)).collect();
        Self::new(field, rows, cols, data)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Reduce in place to reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !f.is_zero(self.get(r, col)));
            let r = match found {
                Some(r) => r,
                None => continue,
            };
            self.swap_rows(pivot_row, r);
            let inv = f.inv(self.get(pivot_row, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(pivot_row, j), &inv);
                self.set(pivot_row, j, v);
            }
            for i in 0..self.rows {
                if i != pivot_row && !f.is_zero(self.get(i, col)) {
                    let factor = self.get(i, col).clone();
                    for j in col..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(pivot_row, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel, echelon-normalized: one vector per free
    /// column of the RREF, with a unit in that coordinate. Deterministic, so
    /// kernel output is byte-stable for golden files.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().copied().peekable();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (col, maybe_row) in pivot_of_col.iter().enumerate() {
                if let Some(row) = maybe_row {
                    v[col] = f.neg(m.get(*row, free));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if consistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Matrix::zeros(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            x[col] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Stack another matrix with the same number of columns below this one.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::new(self.field.clone(), self.rows + other.rows, self.cols, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, PrimeField};
    use crate::rng::SeededRng;
    use proptest::prelude::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let m = Matrix::zeros(f7(), 2, 3);
        assert_eq!(m.kernel().len(), 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let m = Matrix::identity(f7(), 3);
        assert!(m.kernel().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rank_one_kernel_vector() {
        // [[1,2],[2,4]] over F_7: manual row reduction leaves [[1,2],[0,0]],
        // so rank 1 and kernel spanned by (-2, 1) = (5, 1), proportional to (2, -1).
        let m = Matrix::from_i64(f7(), 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        // proportional to (2, -1) = (2, 6): v = c * (2, 6) for some c
        let f = f7();
        let c = f.div(&v[0], &2).unwrap();
        assert_eq!(f.mul(&c, &6), v[1]);
        assert_eq!(m.mul_vec(v), vec![0, 0]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f7();
        let m = Matrix::from_i64(f, 2, 2, &[1, 2, 2, 4]);
        let x = m.solve(&[3, 6]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![3, 6]);
        assert!(m.solve(&[3, 5]).is_none());
    }

    #[test]
    fn empty_matrix_kernel_is_identity_like() {
        let m = Matrix::zeros(f7(), 0, 4);
        let ker = m.kernel();
        assert_eq!(ker.len(), 4);
        for (i, v) in ker.iter().enumerate() {
            for (j, e) in v.iter().enumerate() {
                assert_eq!(*e, u64::from(i == j));
            }
        }
    }

    fn random_matrix(seed: u64, rows: usize, cols: usize) -> Matrix<PrimeField> {
        let f = PrimeField::default_prime();
        let mut rng = SeededRng::new(seed);
        let data = (0..rows * cols).map(|_| f.sample(&mut rng)).collect();
        Matrix::new(f, rows, cols, data)
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(seed in 0u64..500, rows in 1usize..6, cols in 1usize..6) {
            let m = random_matrix(seed, rows, cols);
            let ker = m.kernel();
            prop_assert_eq!(m.rank() + ker.len(), cols);
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|e| *e == 0));
            }
        }

        #[test]
        fn rank_invariant_under_row_shuffle_and_scaling(
            seed in 0u64..200, rows in 2usize..6, cols in 1usize..6,
            a in 0usize..6, b in 0usize..6, scale in 1i64..1000
        ) {
            let m = random_matrix(seed, rows, cols);
            let mut shuffled = m.clone();
            shuffled.swap_rows(a % rows, b % rows);
            prop_assert_eq!(m.rank(), shuffled.rank());

            let f = *m.field();
            let mut scaled = m.clone();
            let s = f.from_i64(scale); // nonzero since 0 < scale < p
            for j in 0..cols {
                let v = f.mul(scaled.get(0, j), &s);
                scaled.set(0, j, v);
            }
            prop_assert_eq!(m.rank(), scaled.rank());
        }
    }
}
