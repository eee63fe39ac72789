//! Binary Laurent polynomials in the delay operator `D`, and matrices of them.
//!
//! Polynomials are stored sparsely as their sorted exponent support. Every
//! polynomial the construction produces has a handful of taps, so a sparse
//! list beats a dense bit-vector even at degree 40.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A binary Laurent polynomial, represented by its strictly increasing
/// exponent support.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Poly {
    support: Vec<i64>,
}

/// Sorts and cancels repeated exponents in pairs (sum over GF(2)).
fn reduce(mut exps: Vec<i64>) -> Vec<i64> {
    exps.sort_unstable();
    let mut out: Vec<i64> = Vec::with_capacity(exps.len());
    for e in exps {
        if out.last() == Some(&e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exponent: i64) -> Self {
        Self {
            support: vec![exponent],
        }
    }

    /// Sum of `D^e` over the given exponents; a repeated exponent cancels.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exponents: I) -> Self {
        Self {
            support: reduce(exponents.into_iter().collect()),
        }
    }

    /// Indicator polynomial of a set of non-negative exponents.
    pub fn from_support<I: IntoIterator<Item = u32>>(support: I) -> Self {
        Self::from_exponents(support.into_iter().map(i64::from))
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Hamming weight (number of nonzero coefficients).
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn degree(&self) -> Degree {
        self.support
            .last()
            .map_or(Degree::NegInfinity, |&d| Degree::Finite(d))
    }

    /// Lowest exponent present, `None` for zero.
    pub fn low_exponent(&self) -> Option<i64> {
        self.support.first().copied()
    }

    pub fn coefficient(&self, exponent: i64) -> bool {
        self.support.binary_search(&exponent).is_ok()
    }

    /// Multiplication by `D^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            support: self.support.iter().map(|e| e + k).collect(),
        }
    }

    /// The substitution `D -> D^-1`.
    pub fn substitute_inverse(&self) -> Self {
        Self {
            support: self.support.iter().rev().map(|e| -e).collect(),
        }
    }

    /// Reversal within the window `[0, window]`: `a -> window - a`,
    /// i.e. `D^window p(D^-1)`.
    pub fn reverse(&self, window: i64) -> Result<Self> {
        if let Some(&e) = self.support.iter().find(|&&e| e < 0 || e > window) {
            return Err(Error::ReversalWindow {
                exponent: e,
                window,
            });
        }
        Ok(Self {
            support: self.support.iter().rev().map(|e| window - e).collect(),
        })
    }

    /// Non-negative exponents as `u32`, or `None` if any are negative or too large.
    pub fn nonnegative_support(&self) -> Option<Vec<u32>> {
        self.support
            .iter()
            .map(|&e| u32::try_from(e).ok())
            .collect()
    }
}

impl Add for &Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        // merge of two sorted lists, dropping common exponents
        let (a, b) = (&self.support, &rhs.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Gf2Poly { support: out }
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: Gf2Poly) -> Gf2Poly {
        &self + &rhs
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut exps = Vec::with_capacity(self.support.len() * rhs.support.len());
        for a in &self.support {
            for b in &rhs.support {
                exps.push(a + b);
            }
        }
        Gf2Poly::from_exponents(exps)
    }
}

impl Mul for Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        &self * &rhs
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        for (k, &e) in self.support.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("D")?,
                _ => write!(f, "D^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let e = match term {
                "1" => 0,
                "D" => 1,
                _ => term
                    .strip_prefix("D^")
                    .and_then(|k| k.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(s.to_string()))?,
            };
            exps.push(e);
        }
        Ok(Self::from_exponents(exps))
    }
}

/// Dense binary matrix, used for coefficient matrices and block-Toeplitz
/// truncations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged bit matrix");
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| !b)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// GF(2) product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v =
                    (0..self.cols).fold(false, |acc, k| acc ^ (self.get(i, k) & other.get(k, j)));
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    /// Rows as 0/1 vectors.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix{:?}", self.to_rows())
    }
}

/// An `r x n` matrix of binary Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Gf2Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Gf2Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Gf2Poly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Gf2Poly>>) -> Result<Self> {
        let r = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Error::Dimension(format!(
                "ragged rows: {} vs {n} columns",
                bad.len()
            )));
        }
        Self::new(r, n, rows.into_iter().flatten().collect())
    }

    /// A single-row matrix.
    pub fn row_vector(entries: Vec<Gf2Poly>) -> Self {
        Self {
            rows: 1,
            cols: entries.len(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Gf2Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Gf2Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Gf2Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Gf2Poly::is_zero)
    }

    /// Largest exponent over all entries.
    pub fn max_degree(&self) -> Degree {
        self.entries
            .iter()
            .map(Gf2Poly::degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Smallest exponent over all entries, `None` for the zero matrix.
    pub fn min_exponent(&self) -> Option<i64> {
        self.entries.iter().filter_map(Gf2Poly::low_exponent).min()
    }

    pub fn map(&self, f: impl Fn(&Gf2Poly) -> Gf2Poly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `A(D) B(D)^T`, or `A(D) B(D^-1)^T` when `invert_b` is set.
    pub fn mul_transpose(&self, b: &PolyMatrix, invert_b: bool) -> Result<Self> {
        if self.cols != b.cols {
            return Err(Error::Dimension(format!(
                "column counts differ: {} vs {}",
                self.cols, b.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * b.rows);
        for i in 0..self.rows {
            for j in 0..b.rows {
                let mut acc = Gf2Poly::zero();
                for k in 0..self.cols {
                    let rhs = if invert_b {
                        b.get(j, k).substitute_inverse()
                    } else {
                        b.get(j, k).clone()
                    };
                    acc = &acc + &(self.get(i, k) * &rhs);
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, b.rows, entries)
    }

    /// The binary matrix of `D^s` coefficients.
    pub fn coefficient_matrix(&self, s: i64) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).coefficient(s));
            }
        }
        m
    }

    /// Rebuilds a matrix from its coefficient matrices `(s, C_s)`.
    pub fn from_coefficients<'a, I>(rows: usize, cols: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, &'a BitMatrix)>,
    {
        let mut exps: Vec<Vec<i64>> = vec![Vec::new(); rows * cols];
        for (s, c) in coeffs {
            for i in 0..rows {
                for j in 0..cols {
                    if c.get(i, j) {
                        exps[i * cols + j].push(s);
                    }
                }
            }
        }
        Self {
            rows,
            cols,
            entries: exps.into_iter().map(Gf2Poly::from_exponents).collect(),
        }
    }
}

impl fmt::Display for PolyMatrix {
    /// `(a, b, c)` for a row vector, `[(a, b); (c, d)]` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render_row = |i: usize| {
            let parts: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        };
        if self.rows == 1 {
            return f.write_str(&render_row(0));
        }
        let rows: Vec<String> = (0..self.rows).map(render_row).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

impl FromStr for PolyMatrix {
    type Err = Error;

    /// Parses the row-vector rendering `(1+D, 1+D^2, 1)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        let entries = inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Gf2Poly>>>()?;
        Ok(Self::row_vector(entries))
    }
}
