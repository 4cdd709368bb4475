//! Square matrices over a [`FieldTower`], plus a kernel solver for general
//! linear systems over the same field.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ffield::{FFElement, FieldError, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("row {row} has length {len}, expected {dim}")]
    Ragged { row: usize, len: usize, dim: usize },
}

pub type Result<T> = std::result::Result<T, MatrixError>;

/// A `dim x dim` matrix over F_{p^k}, entries stored row-major as element codes.
#[derive(Clone)]
pub struct MatrixFq {
    tower: FieldTower,
    dim: usize,
    data: Vec<u32>,
}

impl MatrixFq {
    pub fn identity(tower: &FieldTower, dim: usize) -> Self {
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        MatrixFq {
            tower: tower.clone(),
            dim,
            data,
        }
    }

    pub fn zero(tower: &FieldTower, dim: usize) -> Self {
        MatrixFq {
            tower: tower.clone(),
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn from_rows(tower: &FieldTower, rows: &[Vec<FFElement>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(MatrixError::Ragged { row, len: r.len(), dim });
            }
            for x in r {
                tower.check_same(x.tower())?;
                data.push(x.code());
            }
        }
        Ok(MatrixFq {
            tower: tower.clone(),
            dim,
            data,
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(tower: &FieldTower, diag: &[FFElement]) -> Result<Self> {
        let mut m = MatrixFq::zero(tower, diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x)?;
        }
        Ok(m)
    }

    pub(crate) fn from_raw(tower: &FieldTower, dim: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        MatrixFq {
            tower: tower.clone(),
            dim,
            data,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> FFElement {
        self.tower.wrap(self.data[i * self.dim + j])
    }

    pub fn set(&mut self, i: usize, j: usize, x: &FFElement) -> Result<()> {
        self.tower.check_same(x.tower())?;
        self.data[i * self.dim + j] = x.code();
        Ok(())
    }

    fn check_compatible(&self, other: &MatrixFq) -> Result<()> {
        self.tower.check_same(&other.tower)?;
        if self.dim != other.dim {
            return Err(MatrixError::Dimension(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &MatrixFq) -> MatrixFq {
        let n = self.dim;
        let t = &self.tower;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        let idx = i * n + j;
                        out[idx] = t.add_raw(out[idx], t.mul_raw(a, b));
                    }
                }
            }
        }
        MatrixFq::from_raw(t, n, out)
    }

    pub fn try_add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_compatible(other)?;
        let t = &self.tower;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| t.add_raw(a, b)).collect();
        Ok(MatrixFq::from_raw(t, self.dim, data))
    }

    pub fn scale(&self, c: &FFElement) -> Result<MatrixFq> {
        self.tower.check_same(c.tower())?;
        let t = &self.tower;
        let data = self.data.iter().map(|&a| t.mul_raw(a, c.code())).collect();
        Ok(MatrixFq::from_raw(t, self.dim, data))
    }

    pub fn transpose(&self) -> MatrixFq {
        let n = self.dim;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        MatrixFq::from_raw(&self.tower, n, data)
    }

    /// Entrywise `x -> x^(p^j)`.
    pub fn frobenius(&self, j: u32) -> MatrixFq {
        let t = &self.tower;
        let data = self.data.iter().map(|&a| t.frob_raw(a, j)).collect();
        MatrixFq::from_raw(t, self.dim, data)
    }

    /// Conjugate transpose for the involution `x -> x^(p^j)`.
    pub fn conj_transpose(&self, j: u32) -> MatrixFq {
        self.transpose().frobenius(j)
    }

    pub fn det(&self) -> FFElement {
        let n = self.dim;
        let t = &self.tower;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return t.zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = t.neg_raw(det);
            }
            let pv = a[col * n + col];
            det = t.mul_raw(det, pv);
            let inv = t.inv_raw(pv);
            for r in col + 1..n {
                let f = t.mul_raw(a[r * n + col], inv);
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    let v = t.mul_raw(f, a[col * n + j]);
                    a[r * n + j] = t.sub_raw(a[r * n + j], v);
                }
            }
        }
        t.wrap(det)
    }

    pub fn inverse(&self) -> Result<MatrixFq> {
        let n = self.dim;
        let t = &self.tower;
        let mut a = self.data.clone();
        let mut inv = MatrixFq::identity(t, n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0).ok_or(MatrixError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = t.inv_raw(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = t.mul_raw(a[col * n + j], pinv);
                inv[col * n + j] = t.mul_raw(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = t.sub_raw(a[r * n + j], t.mul_raw(f, a[col * n + j]));
                    inv[r * n + j] = t.sub_raw(inv[r * n + j], t.mul_raw(f, inv[col * n + j]));
                }
            }
        }
        Ok(MatrixFq::from_raw(t, n, inv))
    }

    pub fn pow(&self, mut e: u64) -> MatrixFq {
        let mut acc = MatrixFq::identity(&self.tower, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.data
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == u32::from(idx / n == idx % n))
    }

    /// `Some(c)` when the matrix is `c * I`.
    pub fn as_scalar(&self) -> Option<FFElement> {
        let n = self.dim;
        let c = *self.data.first()?;
        let ok = self
            .data
            .iter()
            .enumerate()
            .all(|(idx, &v)| if idx / n == idx % n { v == c } else { v == 0 });
        ok.then(|| self.tower.wrap(c))
    }

    /// Row vector times matrix, on element codes.
    pub(crate) fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let t = &self.tower;
        let mut out = vec![0u32; n];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.data[i * n..(i + 1) * n];
            for (o, &a) in out.iter_mut().zip(row) {
                if a != 0 {
                    *o = t.add_raw(*o, t.mul_raw(x, a));
                }
            }
        }
        out
    }

    /// Byte key identifying the matrix within its field.
    pub fn key(&self) -> Box<[u8]> {
        let width = if self.tower.order() <= 256 { 1 } else if self.tower.order() <= 65536 { 2 } else { 4 };
        let mut out = Vec::with_capacity(self.data.len() * width);
        for &v in &self.data {
            out.extend_from_slice(&v.to_le_bytes()[..width]);
        }
        out.into_boxed_slice()
    }

    pub fn rows(&self) -> Vec<Vec<FFElement>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.data == other.data && self.tower.same_field(&other.tower)
    }
}

impl Eq for MatrixFq {}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.dim, self.dim, self.tower)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for MatrixFq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MatrixFq", 3)?;
        st.serialize_field("field", &self.tower.info())?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &self.rows())?;
        st.end()
    }
}

/// Basis of `{x : A x = 0}` for a `rows x cols` matrix of element codes.
pub(crate) fn nullspace(tower: &FieldTower, rows: usize, cols: usize, a: &[u32]) -> Vec<Vec<u32>> {
    let t = tower;
    let mut m = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                m.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = t.inv_raw(m[r * cols + c]);
        for j in 0..cols {
            m[r * cols + j] = t.mul_raw(m[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let v = t.mul_raw(f, m[r * cols + j]);
                m[i * cols + j] = t.sub_raw(m[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; cols];
            x[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = t.neg_raw(m[row * cols + fc]);
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldTower {
        FieldTower::new(7, 1).unwrap()
    }

    fn mat(t: &FieldTower, rows: &[&[i64]]) -> MatrixFq {
        let rows: Vec<Vec<FFElement>> = rows.iter().map(|r| r.iter().map(|&x| t.from_int(x)).collect()).collect();
        MatrixFq::from_rows(t, &rows).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let t = f7();
        let a = mat(&t, &[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        // det = 1(0-24) - 2(0-20) + 3(0-5) = -24 + 40 - 15 = 1
        assert_eq!(a.det(), t.one());
        let inv = a.inverse().unwrap();
        assert!(a.try_mul(&inv).unwrap().is_identity());
        assert!(inv.try_mul(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let t = f7();
        let a = mat(&t, &[&[1, 2], &[2, 4]]);
        assert!(a.det().is_zero());
        assert_eq!(a.inverse().unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn det_is_multiplicative() {
        let t = FieldTower::new(3, 2).unwrap();
        let g = t.generator();
        let a = MatrixFq::from_rows(&t, &[vec![g.clone(), t.one()], vec![t.one(), t.zero()]]).unwrap();
        let b = MatrixFq::from_rows(&t, &[vec![t.one(), g.clone()], vec![g.pow(3), g.pow(5)]]).unwrap();
        assert_eq!(a.try_mul(&b).unwrap().det(), &a.det() * &b.det());
    }

    #[test]
    fn nullspace_dimension() {
        let t = f7();
        // x + y + z = 0, 2x + 2y + 2z = 0 -> 2-dimensional kernel
        let a = [1, 1, 1, 2, 2, 2];
        let ker = nullspace(&t, 2, 3, &a);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s = v.iter().fold(0, |acc, &x| t.add_raw(acc, x));
            assert_eq!(s, 0);
        }
        assert!(nullspace(&t, 3, 3, &MatrixFq::identity(&t, 3).data).is_empty());
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = MatrixFq::identity(&f7(), 2);
        let b = MatrixFq::identity(&FieldTower::new(7, 2).unwrap(), 2);
        assert!(matches!(a.try_mul(&b), Err(MatrixError::Field(FieldError::TowerMismatch { .. }))));
        let c = MatrixFq::identity(&f7(), 3);
        assert_eq!(a.try_mul(&c).unwrap_err(), MatrixError::Dimension(2, 3));
    }
}
