//! Dense exact linear algebra over [`Scalar`].
//!
//! Elimination is deterministic: the pivot of each step is the first
//! nonzero column, and within it the first nonzero row at or below the
//! current row.

use std::fmt;

use super::{Scalar, ScalarKind};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    kind: ScalarKind,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`solve_linear`].
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    /// One particular solution per right-hand side (free variables set to 0).
    pub particular: Vec<Vec<Scalar>>,
    /// Basis of the kernel of the coefficient matrix.
    pub kernel: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(kind: ScalarKind, rows: usize, cols: usize) -> Self {
        Matrix {
            kind,
            rows,
            cols,
            data: vec![kind.zero(); rows * cols],
        }
    }

    pub fn identity(kind: ScalarKind, n: usize) -> Self {
        let mut m = Self::zeros(kind, n, n);
        for i in 0..n {
            m.set(i, i, kind.one());
        }
        m
    }

    pub fn from_rows(kind: ScalarKind, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::input(format!("row {i}"), "ragged matrix"));
            }
            for s in row {
                if s.kind() != kind {
                    return Err(Error::KindMismatch(format!(
                        "{} entry in {} matrix",
                        s.kind().tag(),
                        kind.tag()
                    )));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            kind,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(kind: ScalarKind, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(kind, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.kind, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.kind.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.kind, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`, row index `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.kind, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.kind, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(self.kind.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// In-place reduced row-echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, col).inv();
            for j in col..self.cols {
                let idx = row * self.cols + j;
                if !self.data[idx].is_zero() {
                    self.data[idx] = &self.data[idx] * &inv;
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let pv = &self.data[row * self.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let t = pv * &f;
                    let idx = r * self.cols + j;
                    self.data[idx] = &self.data[idx] - &t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::input("matrix", "inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.kind, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.kind.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Matrix::zeros(self.kind, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let kind = r.kind;
    let free: Vec<usize> = (0..r.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![kind.zero(); r.cols];
            v[f] = kind.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            v
        })
        .collect()
}

/// Solves `system · x = b` for every `b` in `rhs`, exactly.
pub fn solve_linear(system: &Matrix, rhs: &[Vec<Scalar>]) -> Result<LinearSolution> {
    let n = system.cols;
    let mut aug = Matrix::zeros(system.kind, system.rows, n + rhs.len());
    for i in 0..system.rows {
        for j in 0..n {
            aug.set(i, j, system.get(i, j).clone());
        }
    }
    for (k, b) in rhs.iter().enumerate() {
        if b.len() != system.rows {
            return Err(Error::input(format!("rhs[{k}]"), "length does not match the system"));
        }
        for (i, v) in b.iter().enumerate() {
            if v.kind() != system.kind {
                return Err(Error::KindMismatch("rhs kind differs from system".into()));
            }
            aug.set(i, n + k, v.clone());
        }
    }
    let (coeff_rref, coeff_pivots) = {
        let mut m = aug.clone();
        // pivots restricted to coefficient columns; continue past to detect inconsistency
        let all = m.rref_in_place();
        (m, all)
    };
    if coeff_pivots.iter().any(|&c| c >= n) {
        return Err(Error::Inconsistent);
    }
    let particular = (0..rhs.len())
        .map(|k| {
            let mut x = vec![system.kind.zero(); n];
            for (row, &pc) in coeff_pivots.iter().enumerate() {
                x[pc] = coeff_rref.get(row, n + k).clone();
            }
            x
        })
        .collect();
    let mut coeff_only = Matrix::zeros(system.kind, system.rows, n);
    for i in 0..system.rows {
        for j in 0..n {
            coeff_only.set(i, j, coeff_rref.get(i, j).clone());
        }
    }
    let kernel = kernel_from_rref(&coeff_only, &coeff_pivots);
    Ok(LinearSolution { particular, kernel })
}

/// A subspace of `kind^dim` with an echelon basis, supporting membership
/// tests and coordinates relative to the basis it was built from.
#[derive(Clone)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Scalar>>,
    // columns = basis vectors; used to express vectors in basis coordinates
    coords: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Spans `vectors`, keeping an independent subset (in order) as basis.
    pub fn span(kind: ScalarKind, dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut echelon: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for v in vectors {
            let mut w = v.clone();
            for (pc, e) in &echelon {
                let f = w[*pc].clone();
                if !f.is_zero() {
                    for (wi, ei) in w.iter_mut().zip(e) {
                        if !ei.is_zero() {
                            *wi = &*wi - &(ei * &f);
                        }
                    }
                }
            }
            if let Some(pc) = w.iter().position(|s| !s.is_zero()) {
                let inv = w[pc].inv();
                let w: Vec<Scalar> = w.iter().map(|s| s * &inv).collect();
                // keep echelon rows fully reduced
                for (_, e) in echelon.iter_mut() {
                    let f = e[pc].clone();
                    if !f.is_zero() {
                        for (ei, wi) in e.iter_mut().zip(&w) {
                            if !wi.is_zero() {
                                *ei = &*ei - &(wi * &f);
                            }
                        }
                    }
                }
                echelon.push((pc, w));
                basis.push(v.clone());
            }
        }
        let coords = Matrix::from_columns(kind, dim, &basis);
        let pivots = echelon.iter().map(|(p, _)| *p).collect();
        Subspace {
            dim,
            basis,
            coords,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        match solve_linear(&self.coords, &[v.to_vec()]) {
            Ok(mut s) => s.particular.pop(),
            Err(_) => None,
        }
    }

    /// Coordinates of several vectors at once; fails if any lies outside.
    pub fn coordinates_many(&self, vs: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
        Ok(solve_linear(&self.coords, vs)?.particular)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} {}]", self.rows, self.cols, self.kind.tag())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `acc += coeff · v`, skipping the work when `coeff` is zero.
pub fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(coeff * b);
        }
    }
}

pub fn scale_vec(coeff: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|b| coeff * b).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Basis of {Φ ∈ kind^{d×d} : X·Φ = Φ·X for every X in `mats`}.
pub fn commutant(kind: ScalarKind, d: usize, mats: &[&Matrix]) -> Vec<Matrix> {
    let mut system = Matrix::zeros(kind, mats.len() * d * d, d * d);
    for (t, x) in mats.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let row = (t * d + i) * d + j;
                for a in 0..d {
                    let c = x.get(i, a);
                    if !c.is_zero() {
                        let idx = a * d + j;
                        let v = system.get(row, idx) + c;
                        system.set(row, idx, v);
                    }
                    let c = x.get(a, j);
                    if !c.is_zero() {
                        let idx = i * d + a;
                        let v = system.get(row, idx) - c;
                        system.set(row, idx, v);
                    }
                }
            }
        }
    }
    system
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_rows(kind, v.chunks(d).map(<[Scalar]>::to_vec).collect()).expect("square"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        let k = ScalarKind::Rational;
        Matrix::from_rows(
            k,
            rows.iter()
                .map(|r| r.iter().map(|&v| k.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn qv(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| ScalarKind::Rational.from_i64(x)).collect()
    }

    #[test]
    fn identity_solves_to_rhs() {
        let id = Matrix::identity(ScalarKind::Rational, 3);
        let b = qv(&[4, -1, 7]);
        let s = solve_linear(&id, std::slice::from_ref(&b)).unwrap();
        assert_eq!(s.particular[0], b);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_one_by_one_has_kernel() {
        let z = qm(&[&[0]]);
        let s = solve_linear(&z, &[qv(&[0])]).unwrap();
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn inconsistent_system_flagged() {
        let m = qm(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&m, &[qv(&[1, 3])]), Err(Error::Inconsistent));
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = qm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn subspace_coordinates() {
        let k = ScalarKind::Rational;
        let s = Subspace::span(k, 3, &[qv(&[1, 1, 0]), qv(&[2, 2, 0]), qv(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        let c = s.coordinates(&qv(&[1, 3, 2])).unwrap();
        assert_eq!(c, qv(&[1, 2]));
        assert!(s.coordinates(&qv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn kron_of_identities() {
        let k = ScalarKind::Rational;
        let a = Matrix::identity(k, 2);
        let b = Matrix::identity(k, 3);
        assert!(a.kron(&b).is_identity());
        assert_eq!(qm(&[&[1, 2]]).kron(&qm(&[&[3], &[4]])), qm(&[&[3, 6], &[4, 8]]));
    }
}
