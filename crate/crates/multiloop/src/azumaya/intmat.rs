//! Small exact integer matrices: determinants by fraction-free elimination,
//! unimodular inverses by adjugate, and the elementary row operations used
//! both for normal-form witnesses and the orbit search.

use crate::{Error, Result};
use std::fmt;

/// A square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix { n, entries: vec![0; n * n] };
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch);
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch);
        }
        let n = self.n;
        let mut out = IntMatrix { n, entries: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                out.set(i, j, i64::try_from(acc).expect("matrix entries stay in i64"));
            }
        }
        Ok(out)
    }

    /// Determinant by Bareiss fraction-free elimination (exact).
    pub fn det(&self) -> i128 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                // find a pivot row below
                match (k + 1..n).find(|&r| m[r * n + k] != 0) {
                    None => return 0,
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] =
                        (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                }
                m[i * n + k] = 0;
            }
            prev = m[k * n + k];
        }
        sign * m[n * n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.det();
        d == 1 || d == -1
    }

    /// Exact inverse of a unimodular matrix via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let d = self.det();
        if d != 1 && d != -1 {
            return Err(Error::NotUnimodular);
        }
        let n = self.n;
        let mut inv = IntMatrix { n, entries: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let cof = minor.det() * if (i + j) % 2 == 0 { 1 } else { -1 };
                inv.set(i, j, i64::try_from(cof * d).expect("adjugate entries stay in i64"));
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                entries.push(self.get(i, j));
            }
        }
        IntMatrix { n: n - 1, entries }
    }

    /// Row a += λ·row b (left multiplication by a transvection).
    pub fn row_add(&mut self, a: usize, b: usize, lambda: i64) {
        for j in 0..self.n {
            let v = self.get(a, j) + lambda * self.get(b, j);
            self.set(a, j, v);
        }
    }

    pub fn row_swap(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            let x = self.get(a, j);
            self.set(a, j, self.get(b, j));
            self.set(b, j, x);
        }
    }

    pub fn row_negate(&mut self, a: usize) {
        for j in 0..self.n {
            self.set(a, j, -self.get(a, j));
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cols: Vec<String> =
                    (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", cols.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_examples() {
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.det(), -1);
        let m = IntMatrix::from_rows(vec![vec![2, 3], vec![1, 2]]).unwrap();
        assert_eq!(m.det(), 1);
        let m = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        assert_eq!(m.det(), 0);
        assert_eq!(IntMatrix::identity(4).det(), 1);
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntMatrix::from_rows(vec![vec![2, 3], vec![1, 2]]).unwrap();
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(2));
        let m = IntMatrix::from_rows(vec![
            vec![1, 2, 0],
            vec![0, 1, 3],
            vec![0, 0, -1],
        ])
        .unwrap();
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(inv.mul(&m).unwrap(), IntMatrix::identity(3));
        let bad = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(bad.inverse_unimodular(), Err(Error::NotUnimodular));
    }
}
