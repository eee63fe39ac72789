//! Quantum convolutional stabilizer pairs from strong difference triangle
//! sets.
//!
//! The pipeline is:
//!
//! 1. [`dts`]: classify or search for a strong DTS family of exponent sets.
//! 2. [`csoc`]: turn the family into a systematic self-orthogonal check
//!    `X(D) = [x_1(D), ..., x_(n-1)(D), 1]`.
//! 3. [`reflect`]: reflect every support inside the degree window and
//!    permute, giving `Z(D)`.
//! 4. [`symplectic`] and [`distance`]: certify commutation and the free
//!    distance.
//!
//! ```
//! use qccdts::dts::DtsFamily;
//! use qccdts::reflect::{Permutation, StabilizerPair};
//!
//! let family = DtsFamily::from_one_based(&[vec![1, 2], vec![1, 3]]).unwrap();
//! let pair = StabilizerPair::from_family(&family, Permutation::from_one_based(&[2, 1]).unwrap())
//!     .unwrap();
//! assert_eq!(pair.x.to_string(), "(1+D, 1+D^2, 1)");
//! assert_eq!(pair.z.to_string(), "(1+D^2, D+D^2, 1)");
//! assert!(pair.certified.commuting);
//! ```

pub mod csoc;
pub mod distance;
pub mod dts;
pub mod error;
pub mod gf2poly;
pub mod reflect;
pub mod symplectic;

pub use error::{Error, Result};
pub use gf2poly::{BitMatrix, Degree, Gf2Poly, PolyMatrix};
