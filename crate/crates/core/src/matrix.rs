//! Exact integer matrices.
//!
//! [`IntMatrix`] is the square nonnegative adjacency datum of a shift of
//! finite type. [`RectMatrix`] holds the rectangular factors that show up in
//! strong shift equivalences and orbit selectors, and the signed matrices fed
//! to the Smith normal form.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Square matrix of nonnegative unbounded integers, optionally with state labels.
///
/// A matrix of dimension zero presents the empty shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
    labels: Option<Vec<String>>,
}

impl IntMatrix {
    pub fn new<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare { row: r, len: row.len(), expected: dim });
            }
            for (c, x) in row.into_iter().enumerate() {
                let x: BigInt = x.into();
                if x.is_negative() {
                    return Err(Error::NegativeEntry { row: r, col: c });
                }
                entries.push(x);
            }
        }
        Ok(IntMatrix { dim, entries, labels: None })
    }

    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, entries: vec![BigInt::zero(); dim * dim], labels: None }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("{} labels for a {}-state matrix", labels.len(), self.dim)));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Compares entries only, ignoring labels.
    pub fn same_entries(&self, other: &IntMatrix) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero() || x.is_one())
    }

    /// First entry exceeding 1, if any.
    pub fn first_non_zero_one(&self) -> Option<(usize, usize)> {
        self.entries.iter().position(|x| !(x.is_zero() || x.is_one())).map(|p| (p / self.dim, p % self.dim))
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        m.labels = self.labels.clone();
        m
    }

    /// Principal submatrix on the given states, in the given order.
    pub fn principal_submatrix(&self, states: &[usize]) -> IntMatrix {
        let k = states.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in states {
            for &j in states {
                entries.push(self.get(i, j).clone());
            }
        }
        let labels = self.labels.as_ref().map(|ls| states.iter().map(|&i| ls[i].clone()).collect());
        IntMatrix { dim: k, entries, labels }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim, "IntMatrix::mul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> IntMatrix {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone().without_labels();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Entry as a machine integer, if it fits.
    pub fn small(&self, i: usize, j: usize) -> Option<usize> {
        self.get(i, j).to_usize()
    }

    pub fn to_rect(&self) -> RectMatrix {
        RectMatrix { rows: self.dim, cols: self.dim, entries: self.entries.clone(), signed: false }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.rows())
    }
}

fn fmt_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<BigInt>]) -> fmt::Result {
    write!(f, "[")?;
    for (r, row) in rows.iter().enumerate() {
        if r > 0 {
            write!(f, ", ")?;
        }
        write!(f, "[")?;
        for (c, x) in row.iter().enumerate() {
            if c > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// Rectangular integer matrix. Entries are nonnegative unless `signed` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    signed: bool,
}

impl RectMatrix {
    pub fn new<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::build(rows, false)
    }

    pub fn new_signed<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::build(rows, true)
    }

    fn build<T: Into<BigInt>>(rows: Vec<Vec<T>>, signed: bool) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!("row {r} has {} entries, expected {ncols}", row.len())));
            }
            for (c, x) in row.into_iter().enumerate() {
                let x: BigInt = x.into();
                if !signed && x.is_negative() {
                    return Err(Error::NegativeEntry { row: r, col: c });
                }
                entries.push(x);
            }
        }
        Ok(RectMatrix { rows: nrows, cols: ncols, entries, signed })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols], signed: false }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::identity(n).to_rect()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, x: BigInt) {
        if x.is_negative() {
            self.signed = true;
        }
        self.entries[i * self.cols + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn transpose(&self) -> RectMatrix {
        let mut m = RectMatrix::zeros(self.cols, self.rows);
        m.signed = self.signed;
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Square nonnegative matrices convert back to [`IntMatrix`].
    pub fn to_square(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        if let Some(p) = self.entries.iter().position(|x| x.is_negative()) {
            return Err(Error::NegativeEntry { row: p / self.cols, col: p % self.cols });
        }
        Ok(IntMatrix { dim: self.rows, entries: self.entries.clone(), labels: None })
    }

    /// `self - other`, producing a signed matrix.
    pub fn sub(&self, other: &RectMatrix) -> Result<RectMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        let entries: Vec<BigInt> = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(RectMatrix { rows: self.rows, cols: self.cols, entries, signed: true })
    }
}

impl From<&IntMatrix> for RectMatrix {
    fn from(m: &IntMatrix) -> Self {
        m.to_rect()
    }
}

impl fmt::Display for RectMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.rows())
    }
}

/// Exact product `a * b`.
pub fn mat_mul(a: &RectMatrix, b: &RectMatrix) -> Result<RectMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = RectMatrix::zeros(a.rows, b.cols);
    out.signed = a.signed || b.signed;
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if !y.is_zero() {
                    out.entries[i * b.cols + j] += x * y;
                }
            }
        }
    }
    Ok(out)
}

/// `trace(a^n)`, the number of points of period `n` in the shift presented by `a`.
pub fn trace_of_power(a: &IntMatrix, n: u64) -> BigInt {
    assert!(n >= 1, "trace_of_power needs n >= 1");
    a.pow(n).trace()
}
