//! Dense square and rectangular matrices over a finite field.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn square(n: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), n * n);
        Mat { rows: n, cols: n, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(u32) -> u32) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn mul(&self, other: &Mat, k: &Field) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        mul_into(&self.data, &other.data, &mut out.data, self.rows, self.cols, other.cols, k);
        out
    }

    pub fn add(&self, other: &Mat, k: &Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat, k: &Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32, k: &Field) -> Mat {
        self.map(|x| k.mul(c, x))
    }

    pub fn apply(&self, v: &[u32], k: &Field) -> Vec<u32> {
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = k.add(acc, k.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// Row echelon form in place; returns pivot columns.
    fn echelon(&mut self, k: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = k.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = k.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f != 0 {
                    for j in 0..self.cols {
                        let v = k.sub(self.get(i, j), k.mul(f, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, k: &Field) -> usize {
        self.clone().echelon(k).len()
    }

    /// Basis of the right null space {x : Ax = 0}.
    pub fn kernel(&self, k: &Field) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.echelon(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self, k: &Field) -> u32 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = k.neg(det);
            }
            let piv = m.get(c, c);
            det = k.mul(det, piv);
            let inv = k.inv(piv);
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), inv);
                if f != 0 {
                    for j in c..n {
                        let v = k.sub(m.get(i, j), k.mul(f, m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self, k: &Field) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let piv = aug.echelon(k);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Sub-matrix with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Mat, k: &Field) -> Mat {
        let mut out = Mat::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for r in 0..other.rows {
                    for s in 0..other.cols {
                        out.set(i * other.rows + r, j * other.cols + s, k.mul(a, other.get(r, s)));
                    }
                }
            }
        }
        out
    }
}

/// `out = a * b` for row-major flat matrices of shapes (r x m) and (m x c).
#[inline]
pub fn mul_into(a: &[u32], b: &[u32], out: &mut [u32], r: usize, m: usize, c: usize, k: &Field) {
    if k.is_prime_field() {
        let p = k.p() as u64;
        for i in 0..r {
            for j in 0..c {
                let mut acc = 0u64;
                for t in 0..m {
                    acc += a[i * m + t] as u64 * b[t * c + j] as u64;
                }
                out[i * c + j] = (acc % p) as u32;
            }
        }
    } else {
        for i in 0..r {
            for j in 0..c {
                let mut acc = 0u32;
                for t in 0..m {
                    acc = k.add(acc, k.mul(a[i * m + t], b[t * c + j]));
                }
                out[i * c + j] = acc;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let k = Field::new(5, 1).unwrap();
        let a = Mat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let inv = a.inverse(&k).unwrap();
        assert!(a.mul(&inv, &k).is_identity());
        assert_eq!(a.det(&k), k.from_int(-2));
        let s = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse(&k).is_none());
        assert_eq!(s.rank(&k), 1);
        assert_eq!(s.kernel(&k).len(), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let k = Field::new(3, 2).unwrap();
        let a = Mat::from_rows(&[vec![1, 4, 7], vec![2, 8, 5], vec![0, 0, 0]]);
        for v in a.kernel(&k) {
            assert!(a.apply(&v, &k).iter().all(|&x| x == 0));
        }
        assert_eq!(a.rank(&k) + a.kernel(&k).len(), 3);
    }
}
