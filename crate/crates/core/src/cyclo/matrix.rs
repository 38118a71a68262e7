use std::fmt;

use rayon::prelude::*;

use super::CycNum;
use crate::error::{Error, Result};

/// Dense row-major matrix over a single cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> CycNum,
    ) -> CycMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.conductor(), conductor, "matrix entry over wrong conductor");
                entries.push(e);
            }
        }
        CycMatrix { rows, cols, conductor, entries }
    }

    pub fn from_rows(conductor: u32, rows: Vec<Vec<CycNum>>) -> CycMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        let entries: Vec<CycNum> = rows.into_iter().flatten().collect();
        assert!(entries.iter().all(|e| e.conductor() == conductor));
        CycMatrix { rows: r, cols: c, conductor, entries }
    }

    pub fn identity(n: usize, conductor: u32) -> CycMatrix {
        CycMatrix::from_fn(n, n, conductor, |i, j| CycNum::from_int(conductor, (i == j) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, self.conductor, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &CycNum) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e.mul(k)).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> CycMatrix {
        CycMatrix::from_fn(rows.len(), cols.len(), self.conductor, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Matrix product; rows of the result are computed in parallel.
    pub fn matmul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        assert_eq!(self.conductor, other.conductor);
        let t = other.transpose();
        let entries: Vec<CycNum> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let t = &t;
                (0..other.cols).map(move |j| {
                    CycNum::dot(self.conductor, self.row(i).iter().zip(t.row(j)))
                })
            })
            .collect();
        CycMatrix { rows: self.rows, cols: other.cols, conductor: self.conductor, entries }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting. Each step divides by the previous pivot, which is exact.
    pub fn det_exact(&self) -> Result<CycNum> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m: Vec<Vec<CycNum>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev_inv = CycNum::one(self.conductor);
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(CycNum::zero(self.conductor)),
                }
            }
            if k + 1 == n {
                break;
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            bottom.par_iter_mut().for_each(|row| {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let v = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                    row[j] = v.mul(&prev_inv);
                }
                row[k] = CycNum::zero(pivot.conductor());
            });
            prev_inv = m[k][k].inv()?;
        }
        let det = if n == 0 { CycNum::one(self.conductor) } else { m[n - 1][n - 1].clone() };
        Ok(if negate { det.neg() } else { det })
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} over Q(ζ_{})", self.rows, self.cols, self.conductor)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  {}", row.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn cofactor_det(m: &CycMatrix) -> CycNum {
        let n = m.rows();
        if n == 0 {
            return CycNum::one(m.conductor());
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = CycNum::zero(m.conductor());
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = cofactor_det(&m.select(&rows, &cols));
            let term = m.get(0, j).mul(&minor);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn identity_det() {
        assert!(CycMatrix::identity(3, 5).det_exact().unwrap().is_one());
    }

    #[test]
    fn fibonacci_s_det() {
        let phi = CycNum::from_int_coeffs(5, &[0, 0, -1, -1]);
        let one = CycNum::one(5);
        let s = CycMatrix::from_rows(5, vec![vec![one.clone(), phi.clone()], vec![phi.clone(), one.neg()]]);
        let det = s.det_exact().unwrap();
        // -1 - φ² = -(5+√5)/2, with √5 = 2φ - 1
        let expected = one.neg().sub(&phi.mul(&phi));
        assert_eq!(det, expected);
        let sqrt5 = phi.add(&phi).sub(&one);
        let half = BigRational::new(1.into(), 2.into());
        let alt = CycNum::from_int(5, 5).add(&sqrt5).scale(&half).neg();
        assert_eq!(det, alt);
    }

    #[test]
    fn singular_det() {
        let one = CycNum::one(2);
        let s = CycMatrix::from_rows(2, vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]);
        assert!(s.det_exact().unwrap().is_zero());
    }

    #[test]
    fn pivoting_needed() {
        let z = CycNum::zero(4);
        let i = CycNum::zeta(4);
        let s = CycMatrix::from_rows(4, vec![vec![z.clone(), i.clone()], vec![i.clone(), z]]);
        // det = -i² = 1
        assert!(s.det_exact().unwrap().is_one());
    }

    #[test]
    fn not_square() {
        let m = CycMatrix::from_fn(2, 3, 1, |_, _| CycNum::one(1));
        assert!(matches!(m.det_exact(), Err(Error::NotSquare { rows: 2, cols: 3 })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=4, seed in proptest::collection::vec(-2i64..=2, 64)) {
            let m = CycMatrix::from_fn(n, n, 8, |i, j| {
                let base = (i * n + j) * 4;
                CycNum::from_int_coeffs(8, &seed[base..base + 4])
            });
            prop_assert_eq!(m.det_exact().unwrap(), cofactor_det(&m));
        }
    }
}
