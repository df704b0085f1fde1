//! Small exact matrix helpers: integer matrices and matrices over `Z/N`.
//!
//! Dimensions here are tiny (group ranks), so determinants use fraction-free
//! Bareiss elimination in `i128` and inverses go through the adjugate.

use num_integer::Integer;

use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| (i == j) as i64)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| 0)
    }

    /// `J = [[0, I], [-I, 0]]` of size `2n × 2n`.
    pub fn standard_symplectic(n: usize) -> Self {
        Self::from_fn(2 * n, 2 * n, |i, j| {
            if j == i + n {
                1
            } else if i == j + n {
                -1
            } else {
                0
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| self.get(i, k) * v[k]).sum())
            .collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| k * self.get(i, j))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn determinant(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        Ok(bareiss_det(self.rows, |i, j| self.get(i, j) as i128))
    }
}

/// Fraction-free Gaussian elimination; exact for integer input.
fn bareiss_det(n: usize, entry: impl Fn(usize, usize) -> i128) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Square matrix over `Z/N` with entries kept in `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    n: usize,
    modulus: u64,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn new(matrix: &IntMatrix, modulus: u64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument("modular matrices must be square".into()));
        }
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} < 2")));
        }
        let m = modulus as i64;
        Ok(Self {
            n: matrix.rows(),
            modulus,
            data: matrix.data.iter().map(|x| x.rem_euclid(m)).collect(),
        })
    }

    pub fn from_fn(n: usize, modulus: u64, f: impl Fn(usize, usize) -> i64) -> Self {
        let m = modulus as i64;
        let data = (0..n * n).map(|k| f(k / n, k % n).rem_euclid(m)).collect();
        Self { n, modulus, data }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        Self::from_fn(n, modulus, |i, j| (i == j) as i64)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::InvalidArgument(format!(
                "moduli differ: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.modulus, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let m = self.modulus as i128;
        Ok(Self::from_fn(self.n, self.modulus, |i, j| {
            let s: i128 = (0..self.n)
                .map(|k| self.get(i, k) as i128 * other.get(k, j) as i128)
                .sum();
            s.rem_euclid(m) as i64
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.n, self.modulus, |i, j| self.get(i, j) + other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.n, self.modulus, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn scale(&self, k: i64) -> Self {
        let m = self.modulus as i128;
        Self::from_fn(self.n, self.modulus, |i, j| {
            (self.get(i, j) as i128 * k as i128).rem_euclid(m) as i64
        })
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let m = self.modulus as i128;
        (0..self.n)
            .map(|i| {
                let s: i128 = (0..self.n).map(|k| self.get(i, k) as i128 * v[k] as i128).sum();
                s.rem_euclid(m) as i64
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn determinant(&self) -> i64 {
        bareiss_det(self.n, |i, j| self.get(i, j) as i128).rem_euclid(self.modulus as i128) as i64
    }

    pub fn is_invertible(&self) -> bool {
        (self.determinant() as u64).gcd(&self.modulus) == 1
    }

    /// Inverse via the adjugate; fails when `det` is not a unit mod `N`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        let det_inv = mod_inverse(det, self.modulus).ok_or(Error::Singular("matrix is not invertible mod N"))?;
        let n = self.n;
        let m = self.modulus as i128;
        let cofactor = |i: usize, j: usize| -> i128 {
            let minor = bareiss_det(n - 1, |r, c| {
                let rr = if r < i { r } else { r + 1 };
                let cc = if c < j { c } else { c + 1 };
                self.get(rr, cc) as i128
            });
            if (i + j).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        // adj[j][i] = cofactor(i, j)
        Ok(Self::from_fn(n, self.modulus, |r, c| {
            (cofactor(c, r).rem_euclid(m) * det_inv as i128).rem_euclid(m) as i64
        }))
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<i64> {
    let m = m as i64;
    let g = a.rem_euclid(m).extended_gcd(&m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]).unwrap();
        assert_eq!(a.determinant().unwrap(), 1);
        let b = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap();
        assert_eq!(b.determinant().unwrap(), -2);
        assert_eq!(IntMatrix::standard_symplectic(2).determinant().unwrap(), 1);
    }

    #[test]
    fn modular_inverse_round_trip() {
        let a = ModMatrix::new(&IntMatrix::from_rows(&[vec![1, 2], vec![3, 5]]).unwrap(), 7).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ModMatrix::identity(2, 7));
        assert_eq!(inv.mul(&a).unwrap(), ModMatrix::identity(2, 7));

        let b = ModMatrix::new(&IntMatrix::from_rows(&[vec![2]]).unwrap(), 5).unwrap();
        assert_eq!(b.inverse().unwrap().get(0, 0), 3);

        let singular = ModMatrix::new(&IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]]).unwrap(), 9).unwrap();
        assert!(singular.inverse().is_err());
        let non_unit = ModMatrix::new(&IntMatrix::from_rows(&[vec![3]]).unwrap(), 9).unwrap();
        assert!(!non_unit.is_invertible());
    }

    #[test]
    fn inverse_3x3_mod_11() {
        let a = ModMatrix::new(
            &IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 4, 5], vec![1, 0, 7]]).unwrap(),
            11,
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ModMatrix::identity(3, 11));
    }

    #[test]
    fn mod_inverse_basics() {
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(-1, 7), Some(6));
        assert_eq!(mod_inverse(2, 4), None);
    }
}
