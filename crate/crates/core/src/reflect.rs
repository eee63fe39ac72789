//! Reflection-permutation map from X-type supports to Z-type supports.
//!
//! Each parity support is reflected inside the window `[0, M]`
//! (`a -> M - a`, i.e. `z_j(D) = D^M x_pi(j)(D^-1)`) and the reflected
//! entries are reordered by a permutation `pi`. The systematic identity
//! entry is left alone.

use std::fmt;

use crate::csoc::{self, build_systematic_x, is_systematic, parity_entries, parity_supports};
use crate::distance;
use crate::dts::{Classification, DtsFamily};
use crate::error::{Error, Result};
use crate::gf2poly::{Gf2Poly, PolyMatrix};
use crate::symplectic;

/// A permutation of `0..len`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    /// From 1-based images, e.g. `[2, 1]` for the swap.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotPermutation(images.len()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(len: usize) -> Self {
        Self((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, p)| i == *p)
            .map(|(i, _)| i)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| self.0[p] == i)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_one_based().iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Reflects every set of a 0-based family about `bound` (default: the
/// family's scope). A bound other than the scope is rejected.
pub fn reflect_family(family: &DtsFamily, bound: Option<u32>) -> Result<DtsFamily> {
    let scope = family.scope();
    let bound = bound.unwrap_or(scope);
    if bound < scope {
        let exponent = family
            .sets()
            .iter()
            .filter_map(|s| s.largest())
            .max()
            .unwrap_or(0);
        return Err(Error::ReversalWindow {
            exponent: exponent.into(),
            window: bound.into(),
        });
    }
    if bound > scope {
        return Err(Error::ReflectionBound { bound, scope });
    }
    let sets = family
        .sets()
        .iter()
        .map(|s| s.reflect(bound))
        .collect::<Result<Vec<_>>>()?;
    DtsFamily::new(sets)
}

/// `Z(D)` from a systematic `X(D)`: parity entry `j` is
/// `D^M x_pi(j)(D^-1)` with `M` the largest exponent of `X`; the identity
/// entry stays 1.
pub fn build_z(x: &PolyMatrix, pi: &Permutation) -> Result<PolyMatrix> {
    let parity = parity_entries(x)?;
    if pi.len() != parity.len() {
        return Err(Error::NotPermutation(parity.len()));
    }
    let m = x.max_degree().finite().ok_or(Error::ZeroMatrix)?;
    let mut entries = (0..parity.len())
        .map(|j| parity[pi.image(j)].reverse(m))
        .collect::<Result<Vec<Gf2Poly>>>()?;
    entries.push(Gf2Poly::one());
    Ok(PolyMatrix::row_vector(entries))
}

/// Largest number of parity columns `first_commuting_permutation` will
/// enumerate permutations for.
pub const MAX_PERMUTATION_SEARCH: usize = 8;

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap_or(i);
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The lexicographically first `pi` for which `X` and `build_z(X, pi)`
/// commute, or `None` if no permutation does.
pub fn first_commuting_permutation(x: &PolyMatrix) -> Result<Option<Permutation>> {
    let k = parity_entries(x)?.len();
    if k > MAX_PERMUTATION_SEARCH {
        return Err(Error::SearchGuard(format!(
            "{k} parity columns exceed the permutation search limit of {MAX_PERMUTATION_SEARCH}"
        )));
    }
    let mut images: Vec<usize> = (0..k).collect();
    loop {
        let pi = Permutation(images.clone());
        let z = build_z(x, &pi)?;
        if symplectic::is_commuting(x, &z)?.commuting {
            return Ok(Some(pi));
        }
        if !next_permutation(&mut images) {
            return Ok(None);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    /// Difference spectra agree as multisets of multisets.
    pub spectrum: bool,
    pub memory: bool,
    /// Entry weights agree as multisets, so the `w + 1` distance
    /// certificates coincide.
    pub weight: bool,
}

impl PreservationReport {
    pub fn all(&self) -> bool {
        self.spectrum && self.memory && self.weight
    }
}

/// Compares the X and Z families: difference spectrum, memory, weights.
pub fn check_preservation(x: &PolyMatrix, z: &PolyMatrix) -> Result<PreservationReport> {
    let fx = DtsFamily::new(parity_supports(x)?);
    let fz = DtsFamily::new(parity_supports(z)?);
    let spectrum = match (&fx, &fz) {
        (Ok(a), Ok(b)) => a.difference_spectrum() == b.difference_spectrum(),
        _ => false,
    };
    let memory = x.max_degree() == z.max_degree();
    let weights = |m: &PolyMatrix| -> Result<Vec<usize>> {
        let mut w: Vec<usize> = parity_entries(m)?.iter().map(Gf2Poly::weight).collect();
        w.sort_unstable();
        Ok(w)
    };
    Ok(PreservationReport {
        spectrum,
        memory,
        weight: weights(x)? == weights(z)?,
    })
}

/// Quantum rate `(n - r_x - r_z) / n`, kept unreduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QccParams {
    pub n: usize,
    pub r_x: usize,
    pub r_z: usize,
}

impl QccParams {
    pub fn rate_numerator(&self) -> usize {
        self.n - self.r_x - self.r_z
    }

    pub fn rate_denominator(&self) -> usize {
        self.n
    }
}

impl fmt::Display for QccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.rate_numerator(), self.rate_denominator())
    }
}

/// Which properties of a pair have been machine-checked and passed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Certification {
    pub strong_dts: bool,
    pub csoc_x: bool,
    pub csoc_z: bool,
    pub commuting: bool,
    pub dfree: bool,
}

/// An X/Z stabilizer pair with its construction metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerPair {
    pub n: usize,
    pub x: PolyMatrix,
    pub z: PolyMatrix,
    /// Common degree bound `M`, equal to both memories.
    pub degree_bound: u32,
    pub w: usize,
    pub pi: Permutation,
    pub certified: Certification,
}

impl StabilizerPair {
    /// Builds `X` from a 0-based family, reflects it with `pi`, and runs
    /// every certification.
    pub fn from_family(family: &DtsFamily, pi: Permutation) -> Result<Self> {
        let x = build_systematic_x(family).matrix;
        let z = build_z(&x, &pi)?;
        let mut pair = Self {
            n: x.cols(),
            degree_bound: family.scope(),
            w: family.weight(),
            x,
            z,
            pi,
            certified: Certification::default(),
        };
        pair.certify(family.classification())?;
        Ok(pair)
    }

    /// Recomputes the certification flags. `classification` is that of the
    /// X family.
    pub fn certify(&mut self, classification: Classification) -> Result<()> {
        let csoc_x = csoc::is_csoc(&self.x)?.csoc;
        let csoc_z = csoc::is_csoc(&self.z)?.csoc;
        let commuting = symplectic::is_commuting(&self.x, &self.z)?.commuting;
        let dfree = csoc_x
            && distance::certify_dfree(&self.x)
                .map(|c| c.d_free as usize == self.w + 1)
                .unwrap_or(false);
        self.certified = Certification {
            strong_dts: classification.is_strong(),
            csoc_x,
            csoc_z,
            commuting,
            dfree,
        };
        Ok(())
    }

    pub fn qcc_params(&self) -> Result<QccParams> {
        qcc_params(self)
    }
}

/// Rate parameters of a certified-commuting pair.
pub fn qcc_params(pair: &StabilizerPair) -> Result<QccParams> {
    if !pair.certified.commuting {
        return Err(Error::NotCommuting);
    }
    debug_assert!(is_systematic(&pair.x) && is_systematic(&pair.z));
    Ok(QccParams {
        n: pair.n,
        r_x: pair.x.rows(),
        r_z: pair.z.rows(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(s: &str) -> PolyMatrix {
        s.parse().unwrap()
    }

    fn family(sets: &[&[u32]]) -> DtsFamily {
        DtsFamily::from_zero_based(&sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.inverse().images(), &[2, 0, 1]);
        assert!(!p.is_involution());
        assert_eq!(p.to_string(), "(2,3,1)");
    }

    #[test]
    fn reflect_family_examples() {
        let r = reflect_family(&family(&[&[0, 1], &[0, 2]]), Some(2)).unwrap();
        assert_eq!(r, family(&[&[1, 2], &[0, 2]]));
        let one_based: Vec<Vec<u32>> = r.sets().iter().map(|s| s.to_one_based()).collect();
        assert_eq!(one_based, vec![vec![2, 3], vec![1, 3]]);

        let r = reflect_family(&family(&[&[0, 1, 3], &[0, 4, 9]]), None).unwrap();
        assert_eq!(r, family(&[&[6, 8, 9], &[0, 5, 9]]));

        let r = reflect_family(&family(&[&[0, 2]]), Some(2)).unwrap();
        assert_eq!(r, family(&[&[0, 2]]));
    }

    #[test]
    fn reflect_family_bound_errors() {
        let f = family(&[&[0, 1, 3], &[0, 4, 9]]);
        assert!(matches!(
            reflect_family(&f, Some(8)),
            Err(Error::ReversalWindow { .. })
        ));
        assert_eq!(
            reflect_family(&f, Some(12)),
            Err(Error::ReflectionBound {
                bound: 12,
                scope: 9
            })
        );
    }

    #[test]
    fn build_z_examples() {
        let x = mat("(1+D, 1+D^2, 1)");
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(build_z(&x, &swap).unwrap(), mat("(1+D^2, D+D^2, 1)"));
        assert_eq!(
            build_z(&x, &Permutation::identity(2)).unwrap(),
            mat("(D+D^2, 1+D^2, 1)")
        );
        assert_eq!(
            build_z(&mat("(1, 1)"), &Permutation::identity(1)).unwrap(),
            mat("(1, 1)")
        );
        assert_eq!(
            build_z(&x, &Permutation::identity(3)),
            Err(Error::NotPermutation(2))
        );
        assert_eq!(
            build_z(&mat("(1+D, D)"), &Permutation::identity(1)),
            Err(Error::NotSystematic)
        );
    }

    #[test]
    fn preservation_examples() {
        let x = mat("(1+D, 1+D^2, 1)");
        let z = mat("(1+D^2, D+D^2, 1)");
        assert!(check_preservation(&x, &z).unwrap().all());

        let r = check_preservation(&mat("(1+D, 1)"), &mat("(1+D^2, 1)")).unwrap();
        assert!(!r.spectrum);
        assert!(!r.memory);
        assert!(r.weight);
    }

    #[test]
    fn pair_certification_and_rate() {
        let f = family(&[&[0, 1], &[0, 2]]);
        let pair =
            StabilizerPair::from_family(&f, Permutation::from_one_based(&[2, 1]).unwrap()).unwrap();
        assert_eq!(
            pair.certified,
            Certification {
                strong_dts: true,
                csoc_x: true,
                csoc_z: true,
                commuting: true,
                dfree: true
            }
        );
        assert_eq!(pair.degree_bound, 2);
        assert_eq!(qcc_params(&pair).unwrap().to_string(), "1/3");

        let bad = StabilizerPair::from_family(&f, Permutation::identity(2)).unwrap();
        assert!(!bad.certified.commuting);
        assert_eq!(qcc_params(&bad), Err(Error::NotCommuting));
    }

    #[test]
    fn first_commuting_permutation_examples() {
        let x = mat("(1+D, 1+D^2, 1)");
        let pi = first_commuting_permutation(&x).unwrap().unwrap();
        assert_eq!(pi.to_one_based(), vec![2, 1]);
        // a single entry 1+D+D^3 squares to 1+D^2+D^6, not palindromic about D^3
        assert_eq!(
            first_commuting_permutation(&mat("(1+D+D^3, 1)")).unwrap(),
            None
        );
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rate_labels_are_unreduced() {
        for (n, label) in [(3, "1/3"), (4, "2/4"), (5, "3/5")] {
            let q = QccParams { n, r_x: 1, r_z: 1 };
            assert_eq!(q.to_string(), label);
        }
    }
}
