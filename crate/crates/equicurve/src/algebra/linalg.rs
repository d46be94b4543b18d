//! Dense exact linear algebra over GF(q): reduced row echelon form, rank,
//! kernels, inverses. Deterministic throughout (first-nonzero pivoting).

use crate::algebra::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElement>]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            data.extend(r.iter().cloned());
        }
        Matrix::new(field, rows.len(), ncols, data)
    }

    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let conv: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, &conv)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElement {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zero(&self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = &*out.at(r, c) + &(a * rhs.at(k, c));
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    acc = &acc + &(self.at(r, c) * &v[c]);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, data)
    }

    /// Stacks `below` underneath self.
    pub fn vstack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix::new(&self.field, self.rows + below.rows, self.cols, data)
    }

    /// Joins `right` to the right of self.
    pub fn hstack(&self, right: &Matrix) -> Matrix {
        assert_eq!(self.rows, right.rows);
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.extend(right.row(r).iter().cloned());
            rows.push(row);
        }
        Matrix::from_rows(&self.field, &rows)
    }

    /// In-place reduced row echelon form; returns the pivot column list.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = vec![];
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let pr = (lead..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(pr) = pr else { continue };
            // swap rows
            if pr != lead {
                for c in 0..self.cols {
                    let tmp = self.at(pr, c).clone();
                    *self.at_mut(pr, c) = self.at(lead, c).clone();
                    *self.at_mut(lead, c) = tmp;
                }
            }
            let inv = self.at(lead, col).inv().unwrap();
            for c in 0..self.cols {
                let v = &*self.at(lead, c) * &inv;
                *self.at_mut(lead, c) = v;
            }
            for r in 0..self.rows {
                if r != lead && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in 0..self.cols {
                        let v = &*self.at(r, c) - &(&factor * self.at(lead, c));
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, in reduced echelon form over the free
    /// variables (deterministic).
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = vec![];
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(ri, fc);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(&self.field, n));
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Matrix::zero(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                *out.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(out)
    }

    /// One solution of self * x = b, if any (deterministic: free vars zero).
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let bcol = Matrix::new(&self.field, self.rows, 1, b.to_vec());
        let mut aug = self.hstack(&bcol);
        let pivots = aug.rref();
        if pivots.last().is_some_and(|&p| p == self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(&self.field, self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    #[test]
    fn kernel_of_identity_is_empty() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::identity(&f, 3);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::zero(&f, 2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_solved_by_hand() {
        let f = Field::prime(2).unwrap();
        let m = Matrix::from_ints(&f, &[vec![1, 1], vec![0, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![f.one(), f.one()]);
    }

    #[test]
    fn rank_nullity() {
        let f = Field::new(3, 2).unwrap();
        let mut seed: u64 = 42;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..20 {
            let rows = 1 + (next() % 6) as usize;
            let cols = 1 + (next() % 6) as usize;
            let data: Vec<FieldElement> = (0..rows * cols)
                .map(|_| f.from_enc(next() % f.q()))
                .collect();
            let m = Matrix::new(&f, rows, cols, data);
            let kb = m.kernel_basis();
            assert_eq!(m.rank() + kb.len(), cols);
            for v in &kb {
                assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let f = Field::prime(5).unwrap();
        let mut m = Matrix::from_ints(&f, &[vec![2, 1, 3], vec![4, 2, 1], vec![1, 3, 2]]);
        m.rref();
        let once = m.clone();
        m.rref();
        assert_eq!(m, once);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_ints(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_ints(&f, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }
}
