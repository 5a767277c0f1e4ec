//! Dense matrices over the field of rational functions.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symexpr::{Rf, Symbol};

/// A dense `rows × cols` matrix with exact entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rf>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rf::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rf::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Rf) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(d: &[Rf]) -> Mat {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rf>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Rf> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat { rows: r, cols: c, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rf {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rf) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rf) {
        let i = r * self.cols + c;
        self.data[i] = self.data[i].add(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rf::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> Vec<Rf> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Rf) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(Rf::neg).collect() }
    }

    /// Matrix product; rows are computed in parallel.
    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let (n, m, p) = (self.rows, self.cols, o.cols);
        let data: Vec<Rf> = (0..n)
            .into_par_iter()
            .flat_map_iter(|r| {
                (0..p).map(move |c| {
                    let terms: Vec<Rf> = (0..m)
                        .filter_map(|k| {
                            let a = self.get(r, k);
                            let b = o.get(k, c);
                            (!a.is_zero() && !b.is_zero()).then(|| a.mul(b))
                        })
                        .collect();
                    Rf::sum(terms.iter())
                })
            })
            .collect();
        Mat { rows: n, cols: p, data }
    }

    pub fn apply(&self, v: &[Rf]) -> Vec<Rf> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let terms: Vec<Rf> = (0..self.cols)
                    .filter(|&c| !v[c].is_zero() && !self.get(r, c).is_zero())
                    .map(|c| self.get(r, c).mul(&v[c]))
                    .collect();
                Rf::sum(terms.iter())
            })
            .collect()
    }

    /// Applies a fallible map to every entry.
    pub fn try_map(&self, f: impl Fn(&Rf) -> Result<Rf> + Sync + Send) -> Result<Mat> {
        let data = self.data.par_iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn substitute(&self, b: &[(Symbol, Rf)]) -> Result<Mat> {
        self.try_map(|x| x.substitute(b))
    }

    /// The first nonzero entry, as a witness of inequality.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rf)> {
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|i| (i / self.cols, i % self.cols, self.data[i].clone()))
    }

    /// Row-reduces a copy; returns the reduced matrix and the pivot columns.
    pub fn row_reduce(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in 0..m.cols {
                let x = m.get(row, c).mul(&inv);
                m.set(row, c, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..m.cols {
                    if m.get(row, c).is_zero() {
                        continue;
                    }
                    let x = m.get(r, c).sub(&f.mul(m.get(row, c)));
                    m.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// The inverse, or `SingularGram` when the matrix is not invertible.
    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::SingularGram);
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rf::one());
        }
        let (red, pivots) = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularGram);
        }
        let mut inv = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// The determinant by fraction-free elimination over the field.
    pub fn det(&self) -> Rf {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rf::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rf::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = det.neg();
            }
            let piv = m.get(col, col).clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).mul(&inv);
                for c in col..n {
                    let x = m.get(r, c).sub(&f.mul(m.get(col, c)));
                    m.set(r, c, x);
                }
            }
        }
        det
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rf>> {
        let (red, pivots) = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rf::zero(); self.cols];
                v[f] = Rf::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = red.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    /// Stacks matrices vertically (all with the same number of columns).
    pub fn vstack(parts: &[Mat], cols: usize) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend(m.data.iter().cloned());
        }
        Mat { rows, cols, data }
    }
}
