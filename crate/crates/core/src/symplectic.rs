//! Stabilizer commutation for polynomial X/Z check matrices.
//!
//! `X` and `Z` commute when `X(D) Z(D^-1)^T + Z(D) X(D^-1)^T = 0` over
//! binary Laurent polynomials, i.e. when every coefficient matrix of that
//! sum vanishes.

use crate::csoc::parity_supports;
use crate::error::{Error, Result};
use crate::gf2poly::{BitMatrix, Gf2Poly, PolyMatrix};
use crate::reflect::Permutation;

/// A nonzero coefficient: `D^s` at entry `(row, col)` of the symplectic sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub s: i64,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticReport {
    pub sum: PolyMatrix,
    pub commuting: bool,
    pub violations: Vec<Violation>,
}

/// `X(D) Z(D^-1)^T + Z(D) X(D^-1)^T`.
///
/// Only defined here for equal row counts; the two products have shapes
/// `r_x x r_z` and `r_z x r_x`.
pub fn symplectic_sum(x: &PolyMatrix, z: &PolyMatrix) -> Result<PolyMatrix> {
    if x.cols() != z.cols() {
        return Err(Error::Dimension(format!(
            "X has {} columns, Z has {}",
            x.cols(),
            z.cols()
        )));
    }
    if x.rows() != z.rows() {
        return Err(Error::AsymmetricRows(x.rows(), z.rows()));
    }
    let xz = x.mul_transpose(z, true)?;
    let zx = z.mul_transpose(x, true)?;
    xz.add(&zx)
}

/// Commutation test with every nonzero coefficient of the symplectic sum
/// listed, ordered by `(s, row, col)`.
pub fn is_commuting(x: &PolyMatrix, z: &PolyMatrix) -> Result<SymplecticReport> {
    let sum = symplectic_sum(x, z)?;
    let mut violations = Vec::new();
    for row in 0..sum.rows() {
        for col in 0..sum.cols() {
            violations.extend(sum.get(row, col).support().iter().map(|&s| Violation {
                s,
                row,
                col,
            }));
        }
    }
    violations.sort();
    Ok(SymplecticReport {
        commuting: violations.is_empty(),
        sum,
        violations,
    })
}

/// The `D^s` coefficient of the symplectic sum computed from coefficient
/// matrices: `sum_l (X_l Z_(l-s)^T + Z_l X_(l-s)^T)`.
pub fn symplectic_coefficient(x: &PolyMatrix, z: &PolyMatrix, s: i64) -> Result<BitMatrix> {
    if x.cols() != z.cols() {
        return Err(Error::Dimension(format!(
            "X has {} columns, Z has {}",
            x.cols(),
            z.cols()
        )));
    }
    if x.rows() != z.rows() {
        return Err(Error::AsymmetricRows(x.rows(), z.rows()));
    }
    let mut acc = BitMatrix::zeros(x.rows(), z.rows());
    let lo = x.min_exponent().into_iter().chain(z.min_exponent()).min();
    let hi = x
        .max_degree()
        .finite()
        .into_iter()
        .chain(z.max_degree().finite())
        .max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Ok(acc);
    };
    for l in lo..=hi {
        let (xl, zl) = (x.coefficient_matrix(l), z.coefficient_matrix(l));
        let (xs, zs) = (x.coefficient_matrix(l - s), z.coefficient_matrix(l - s));
        acc.add_assign(&xl.mul(&zs.transpose())?);
        acc.add_assign(&zl.mul(&xs.transpose())?);
    }
    Ok(acc)
}

fn tap_supports(x: &PolyMatrix) -> Vec<Vec<&[i64]>> {
    (0..x.rows())
        .map(|a| x.row(a).iter().map(Gf2Poly::support).collect())
        .collect()
}

/// Sum-index matrix: entry `(a, b)` is the parity of the number of tap
/// pairs `(t, u)` in `L_(a,k) x L_(b,k)` with `t + u = s`, summed over all
/// columns `k` (the identity column included).
pub fn sum_index_matrix(x: &PolyMatrix, s: i64) -> BitMatrix {
    let taps = tap_supports(x);
    let r = x.rows();
    let mut out = BitMatrix::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            let mut count = 0usize;
            for (ta, tb) in taps[a].iter().zip(&taps[b]) {
                for &t in *ta {
                    count += tb.iter().filter(|&&u| t + u == s).count();
                }
            }
            out.set(a, b, count % 2 == 1);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub holds: bool,
    /// First `(s, a, b)` with `C_s(X)[a][b] != C_(2M-s)(X)[b][a]`.
    pub counterexample: Option<(i64, usize, usize)>,
}

/// Tests `C_s(X) = C_(2M-s)(X)^T` for every `s` in `[0, 2M]`.
pub fn check_reflection_symmetry(x: &PolyMatrix, window: u32) -> Result<SymmetryReport> {
    let m = i64::from(window);
    if let Some(&e) = x
        .entries()
        .iter()
        .flat_map(Gf2Poly::support)
        .find(|&&e| e < 0 || e > m)
    {
        return Err(Error::ReversalWindow {
            exponent: e,
            window: m,
        });
    }
    let sums: Vec<BitMatrix> = (0..=2 * m).map(|s| sum_index_matrix(x, s)).collect();
    for s in 0..=2 * m {
        let (lhs, rhs) = (&sums[s as usize], &sums[(2 * m - s) as usize]);
        for a in 0..x.rows() {
            for b in 0..x.rows() {
                if lhs.get(a, b) != rhs.get(b, a) {
                    return Ok(SymmetryReport {
                        holds: false,
                        counterexample: Some((s, a, b)),
                    });
                }
            }
        }
    }
    Ok(SymmetryReport {
        holds: true,
        counterexample: None,
    })
}

/// Sum-index count twisted by a permutation of the parity columns:
/// parity of `#{(t, u) in L_k x L_pi(k) : t + u = s}` summed over parity
/// columns `k` of a systematic `1 x n` check.
pub fn twisted_sum_index(x: &PolyMatrix, pi: &Permutation, s: i64) -> Result<bool> {
    let supports = parity_supports(x)?;
    if pi.len() != supports.len() {
        return Err(Error::NotPermutation(supports.len()));
    }
    let s = match u32::try_from(s) {
        Ok(s) => s,
        Err(_) => return Ok(false),
    };
    let mut count = 0usize;
    for (k, lk) in supports.iter().enumerate() {
        let partner = &supports[pi.image(k)];
        for &t in lk.elements() {
            if t <= s && partner.contains(s - t) {
                count += 1;
            }
        }
    }
    Ok(count % 2 == 1)
}

/// The two addends of the `D^tau` coefficient of the symplectic sum of `X`
/// and its reflection `Z = build_z(X, pi)`: `(P_(M+tau), P_(M-tau))` with
/// `P` the twisted sum-index. The coefficient is their XOR; it vanishes
/// exactly when the addends agree.
pub fn reflection_addends(x: &PolyMatrix, pi: &Permutation, tau: i64) -> Result<(bool, bool)> {
    let m = x.max_degree().finite().ok_or(Error::ZeroMatrix)?;
    Ok((
        twisted_sum_index(x, pi, m + tau)?,
        twisted_sum_index(x, pi, m - tau)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflect::build_z;

    fn mat(s: &str) -> PolyMatrix {
        s.parse().unwrap()
    }

    fn example_x() -> PolyMatrix {
        mat("(1+D, 1+D^2, 1)")
    }

    #[test]
    fn symplectic_sum_examples() {
        let z = mat("(1+D^2, D+D^2, 1)");
        assert!(symplectic_sum(&example_x(), &z).unwrap().is_zero());
        let ones = mat("(1, 1)");
        assert!(symplectic_sum(&ones, &ones).unwrap().is_zero());
        assert!(symplectic_sum(&mat("(1, 0)"), &mat("(0, 1)"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn one_sided_product_is_constant_one() {
        let z = mat("(1+D^2, D+D^2, 1)");
        let one_sided = example_x().mul_transpose(&z, true).unwrap();
        assert_eq!(one_sided.get(0, 0), &Gf2Poly::one());
    }

    #[test]
    fn commuting_examples() {
        let r = is_commuting(&mat("(1+D, 1)"), &mat("(1, 1)")).unwrap();
        assert!(!r.commuting);
        let s: Vec<i64> = r.violations.iter().map(|v| v.s).collect();
        assert_eq!(s, vec![-1, 1]);
    }

    #[test]
    fn identity_reflection_of_example_does_not_commute() {
        // z_j = D^2 x_j(D^-1) leaves x_1^2 + x_2^2 = D^2 + D^4, which is
        // not palindromic about D^2
        let z = build_z(&example_x(), &Permutation::identity(2)).unwrap();
        let r = is_commuting(&example_x(), &z).unwrap();
        assert!(!r.commuting);
        assert_eq!(r.sum, mat("(D^-2+D^2)"));
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            symplectic_sum(&mat("(1, 1)"), &mat("(1)")),
            Err(Error::Dimension(_))
        ));
        let two_rows = PolyMatrix::zeros(2, 2);
        assert_eq!(
            symplectic_sum(&mat("(1, 1)"), &two_rows),
            Err(Error::AsymmetricRows(1, 2))
        );
    }

    #[test]
    fn sum_index_example() {
        let x = example_x();
        let c: Vec<bool> = (0..=4).map(|s| sum_index_matrix(&x, s).get(0, 0)).collect();
        assert_eq!(c, vec![true, false, true, false, true]);
    }

    #[test]
    fn reflection_symmetry_example() {
        let r = check_reflection_symmetry(&example_x(), 2).unwrap();
        assert!(r.holds);
        assert!(check_reflection_symmetry(&example_x(), 1).is_err());
    }

    #[test]
    fn reflection_symmetry_negative_control() {
        // x = 1+D+D^2 is not CSOC; tap 0 appears in both columns and
        // cancels, so C_0 = 0 while C_4 = 1
        let r = check_reflection_symmetry(&mat("(1+D+D^2, 1)"), 2).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some((0, 0, 0)));
    }

    #[test]
    fn addends_match_coefficients() {
        let x = example_x();
        for pi in [
            Permutation::identity(2),
            Permutation::new(vec![1, 0]).unwrap(),
        ] {
            let z = build_z(&x, &pi).unwrap();
            let sum = symplectic_sum(&x, &z).unwrap();
            for tau in -4..=4 {
                let (a, b) = reflection_addends(&x, &pi, tau).unwrap();
                assert_eq!(sum.get(0, 0).coefficient(tau), a ^ b, "tau {tau}");
            }
        }
    }
}
