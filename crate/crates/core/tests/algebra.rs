use proptest::prelude::*;

use qccdts::gf2poly::{BitMatrix, Degree, Gf2Poly, PolyMatrix};

/// Dense coefficient vector over exponents `lo..lo + len`.
fn dense(p: &Gf2Poly, lo: i64, len: usize) -> Vec<u8> {
    (0..len as i64)
        .map(|i| u8::from(p.coefficient(lo + i)))
        .collect()
}

/// Schoolbook product of dense vectors, used as the multiplication oracle.
fn dense_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= x & y;
        }
    }
    out
}

fn laurent() -> impl Strategy<Value = Gf2Poly> {
    prop::collection::vec(-12i64..=12, 0..8).prop_map(Gf2Poly::from_exponents)
}

fn polynomial(max_deg: i64) -> impl Strategy<Value = Gf2Poly> {
    prop::collection::vec(0..=max_deg, 0..8).prop_map(Gf2Poly::from_exponents)
}

fn poly_matrix(rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(laurent(), rows * cols)
        .prop_map(move |e| PolyMatrix::new(rows, cols, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn addition_is_characteristic_two(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert!((&a + &a).is_zero());
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Gf2Poly::zero(), a.clone());
    }

    #[test]
    fn multiplication_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Gf2Poly::one(), a.clone());
        prop_assert!((&a * &Gf2Poly::zero()).is_zero());
    }

    #[test]
    fn squaring_is_frobenius(a in laurent()) {
        let doubled = Gf2Poly::from_exponents(a.support().iter().map(|e| 2 * e));
        prop_assert_eq!(&a * &a, doubled);
    }

    #[test]
    fn product_matches_schoolbook(a in laurent(), b in laurent()) {
        let (lo_a, lo_b) = (a.low_exponent().unwrap_or(0), b.low_exponent().unwrap_or(0));
        let da = dense(&a, lo_a, 26);
        let db = dense(&b, lo_b, 26);
        let expected = dense_mul(&da, &db);
        prop_assert_eq!(dense(&(&a * &b), lo_a + lo_b, 52), expected);
    }

    #[test]
    fn degree_and_weight(a in laurent(), b in laurent()) {
        let prod = &a * &b;
        match (a.degree(), b.degree()) {
            (Degree::Finite(x), Degree::Finite(y)) => {
                prop_assert_eq!(prod.degree(), Degree::Finite(x + y))
            }
            _ => prop_assert_eq!(prod.degree(), Degree::NegInfinity),
        }
        prop_assert!((&a + &b).weight() <= a.weight() + b.weight());
        prop_assert_eq!(a.weight(), a.support().len());
    }

    #[test]
    fn reversal_is_an_involution(a in polynomial(15), extra in 0i64..5) {
        let window = match a.degree() {
            Degree::Finite(d) => d + extra,
            Degree::NegInfinity => extra,
        };
        let r = a.reverse(window).unwrap();
        prop_assert_eq!(r.reverse(window).unwrap(), a.clone());
        prop_assert_eq!(r.weight(), a.weight());
        prop_assert_eq!(r, a.substitute_inverse().shift(window));
    }

    #[test]
    fn reversal_rejects_out_of_window(a in polynomial(15)) {
        if let Degree::Finite(d) = a.degree() {
            if d > 0 {
                prop_assert!(a.reverse(d - 1).is_err());
            }
        }
    }

    #[test]
    fn substitute_inverse_is_a_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.substitute_inverse().substitute_inverse(), a.clone());
        prop_assert_eq!(
            (&a * &b).substitute_inverse(),
            &a.substitute_inverse() * &b.substitute_inverse()
        );
    }

    #[test]
    fn text_round_trip(a in laurent()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Gf2Poly>().unwrap(), a);
    }

    #[test]
    fn coefficient_matrices_reconstruct(m in poly_matrix(2, 3)) {
        let lo = m.min_exponent().unwrap_or(0);
        let hi = m.max_degree().finite().unwrap_or(0);
        let coeffs: Vec<(i64, BitMatrix)> =
            (lo..=hi).map(|s| (s, m.coefficient_matrix(s))).collect();
        let rebuilt = PolyMatrix::from_coefficients(2, 3, coeffs.iter().map(|(s, c)| (*s, c)));
        prop_assert_eq!(rebuilt, m);
    }

    #[test]
    fn mul_transpose_matches_entrywise(a in poly_matrix(2, 3), b in poly_matrix(2, 3), inv in any::<bool>()) {
        let p = a.mul_transpose(&b, inv).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Gf2Poly::zero();
                for k in 0..3 {
                    let bk = if inv { b.get(j, k).substitute_inverse() } else { b.get(j, k).clone() };
                    acc = &acc + &(a.get(i, k) * &bk);
                }
                prop_assert_eq!(p.get(i, j), &acc);
            }
        }
    }

    #[test]
    fn matrix_text_round_trip(m in poly_matrix(1, 4)) {
        prop_assert_eq!(m.to_string().parse::<PolyMatrix>().unwrap(), m);
    }
}

#[test]
fn rendering_is_ascending_and_stable() {
    let p = Gf2Poly::from_exponents([3, 0, 1]);
    assert_eq!(p.to_string(), "1+D+D^3");
    assert_eq!(Gf2Poly::from_exponents([-2, 0]).to_string(), "D^-2+1");
    assert_eq!(Gf2Poly::zero().to_string(), "0");
}
