//! Classical convolutional parity checks built from DTS supports.

use crate::dts::{difference_collisions, Collision, DtsFamily, SupportSet};
use crate::error::{Error, Result};
use crate::gf2poly::{BitMatrix, Degree, Gf2Poly, PolyMatrix};

/// Parameters of a classical convolutional code given by a parity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    /// Block length (symbols per frame).
    pub n: usize,
    /// Parity rows, `n - k`.
    pub parity_rows: usize,
    pub mu: u32,
    /// Common weight of the parity entries.
    pub w: usize,
    pub nu: u32,
}

impl CodeParams {
    /// Parameters of a systematic `1 x n` check.
    pub fn of_systematic(x: &PolyMatrix) -> Result<Self> {
        let parity = parity_entries(x)?;
        Ok(Self {
            n: x.cols(),
            parity_rows: 1,
            mu: memory(x, x.cols(), x.cols() - 1)?,
            w: parity.iter().map(Gf2Poly::weight).min().unwrap_or(0),
            nu: constraint_length(x),
        })
    }
}

/// Parity-check matrix from 1-based row sets `T_i` and column sets `S_j`:
/// entry `(i, j)` has support `{ t - 1 : t in T_i ∩ S_j }`.
///
/// The general multi-row path has no reference data beyond the systematic
/// single-row case.
pub fn build_parity_check(
    row_sets: &[SupportSet],
    col_sets: &[SupportSet],
    n: usize,
) -> Result<PolyMatrix> {
    if col_sets.len() != n {
        return Err(Error::Dimension(format!(
            "{} column sets for n = {n}",
            col_sets.len()
        )));
    }
    if row_sets.iter().chain(col_sets).any(|s| s.contains(0)) {
        return Err(Error::AlreadyZeroBased);
    }
    let mut rows = Vec::with_capacity(row_sets.len());
    for (i, t) in row_sets.iter().enumerate() {
        let row: Vec<Gf2Poly> = col_sets
            .iter()
            .map(|s| {
                Gf2Poly::from_support(
                    t.elements()
                        .iter()
                        .filter(|&&e| s.contains(e))
                        .map(|e| e - 1),
                )
            })
            .collect();
        if row.iter().all(Gf2Poly::is_zero) {
            return Err(Error::VacuousRow(i));
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(rows)
}

/// Result of building a systematic check; `warning` is set when the input
/// family is not strong and the CSOC guarantees therefore lapse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub matrix: PolyMatrix,
    pub warning: Option<String>,
}

/// `X(D) = [x_1(D), ..., x_(n-1)(D), 1]` with `x_i` the indicator
/// polynomial of the `i`-th set of a 0-based family.
pub fn build_systematic_x(family: &DtsFamily) -> Construction {
    let mut entries: Vec<Gf2Poly> = family.sets().iter().map(SupportSet::to_poly).collect();
    entries.push(Gf2Poly::one());
    let warning = (!family.classification().is_strong()).then(|| {
        format!(
            "family classifies as {}, not strong; self-orthogonality and distance guarantees do not apply",
            family.classification()
        )
    });
    Construction {
        matrix: PolyMatrix::row_vector(entries),
        warning,
    }
}

/// True for `1 x n` matrices whose last entry is the constant 1.
pub fn is_systematic(x: &PolyMatrix) -> bool {
    x.rows() == 1 && x.cols() >= 1 && *x.get(0, x.cols() - 1) == Gf2Poly::one()
}

/// The parity entries `x_1, ..., x_(n-1)` of a systematic check.
pub fn parity_entries(x: &PolyMatrix) -> Result<&[Gf2Poly]> {
    if !is_systematic(x) {
        return Err(Error::NotSystematic);
    }
    Ok(&x.row(0)[..x.cols() - 1])
}

/// Parity entry supports as sets of non-negative exponents.
pub fn parity_supports(x: &PolyMatrix) -> Result<Vec<SupportSet>> {
    parity_entries(x)?
        .iter()
        .map(|p| {
            let s = p.nonnegative_support().ok_or(Error::NotSystematic)?;
            SupportSet::new(s)
        })
        .collect()
}

/// Memory `ceil(m / (n - k)) - 1` where `m` is the 1-based scope
/// (largest exponent plus one). With one parity row this is the largest
/// exponent.
pub fn memory(h: &PolyMatrix, n: usize, k: usize) -> Result<u32> {
    if n != h.cols() || k >= n {
        return Err(Error::Dimension(format!(
            "memory of a {}x{} check with n = {n}, k = {k}",
            h.rows(),
            h.cols()
        )));
    }
    let top = match h.max_degree() {
        Degree::NegInfinity => return Err(Error::ZeroMatrix),
        Degree::Finite(d) if d < 0 => return Err(Error::NotSystematic),
        Degree::Finite(d) => d as u64,
    };
    let rows = (n - k) as u64;
    Ok(((top + 1).div_ceil(rows) - 1) as u32)
}

/// `nu(H)`: sum over rows of the largest entry degree (zero rows add 0).
pub fn constraint_length(h: &PolyMatrix) -> u32 {
    (0..h.rows())
        .map(|i| {
            h.row(i)
                .iter()
                .map(Gf2Poly::degree)
                .max()
                .and_then(Degree::finite)
                .map_or(0, |d| d.max(0) as u32)
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsocReport {
    pub csoc: bool,
    /// Entry indices are 0-based parity column indices.
    pub collisions: Vec<Collision>,
}

/// Checks that the positive-difference sets of the parity entries are full
/// and mutually disjoint.
pub fn is_csoc(x: &PolyMatrix) -> Result<CsocReport> {
    let supports = parity_supports(x)?;
    let diffs: Vec<Vec<u32>> = supports
        .iter()
        .map(SupportSet::positive_differences)
        .collect();
    let (within, across) = difference_collisions(&diffs);
    let mut collisions: Vec<Collision> = within.into_iter().chain(across).collect();
    collisions.sort();
    Ok(CsocReport {
        csoc: collisions.is_empty(),
        collisions,
    })
}

/// Truncated block-Toeplitz matrix `H_[0:j]`: block `(t, u)` is the
/// coefficient matrix `H_(t-u)` for `0 <= t - u <= mu`, zero otherwise.
pub fn block_toeplitz(h: &PolyMatrix, j: usize) -> BitMatrix {
    let (r, n) = (h.rows(), h.cols());
    let mu = h.max_degree().finite().unwrap_or(-1);
    let coeffs: Vec<BitMatrix> = (0..=mu.max(0)).map(|l| h.coefficient_matrix(l)).collect();
    let mut out = BitMatrix::zeros((j + 1) * r, (j + 1) * n);
    for t in 0..=j {
        for u in 0..=t {
            let lag = (t - u) as i64;
            if lag > mu {
                continue;
            }
            let block = &coeffs[lag as usize];
            for a in 0..r {
                for b in 0..n {
                    if block.get(a, b) {
                        out.set(t * r + a, u * n + b, true);
                    }
                }
            }
        }
    }
    out
}
