use proptest::prelude::*;

use qccdts::csoc::{block_toeplitz, build_systematic_x};
use qccdts::distance::{
    certify_dfree, column_distance, dfree_exact, dfree_upper, verify_codeword, ExactDistance,
    ORACLE_WINDOW_BITS,
};
use qccdts::dts::{search_strong_dts, DtsFamily};
use qccdts::gf2poly::{Gf2Poly, PolyMatrix};

/// Minimum weight of `v` in the kernel of `H_[0:j]` with a nonzero first
/// frame, by enumerating every window vector.
fn column_distance_oracle(h: &PolyMatrix, j: usize) -> u32 {
    let n = h.cols();
    let bits = (j + 1) * n;
    assert!(bits <= ORACLE_WINDOW_BITS);
    let rows = block_toeplitz(h, j).to_rows();
    let masks: Vec<u32> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .fold(0u32, |m, (i, &b)| m | (u32::from(b) << i))
        })
        .collect();
    let first = (1u32 << n) - 1;
    (1u32..1 << bits)
        .filter(|v| v & first != 0)
        .filter(|v| masks.iter().all(|m| (m & v).count_ones() % 2 == 0))
        .map(u32::count_ones)
        .min()
        .expect("the impulse response is in the kernel")
}

/// Lightest codeword whose information streams have degree below `len`,
/// computed by polynomial products: an upper bound on the free distance.
fn finite_input_upper(x: &PolyMatrix, len: u32) -> u32 {
    let parity = &x.row(0)[..x.cols() - 1];
    let k = parity.len() as u32;
    let total = k * len;
    (1u64..1 << total)
        .filter(|u| (0..k).any(|i| u >> (i * len) & 1 == 1))
        .map(|u| {
            let streams: Vec<Gf2Poly> = (0..k)
                .map(|i| Gf2Poly::from_support((0..len).filter(|t| u >> (i * len + t) & 1 == 1)))
                .collect();
            let p = streams
                .iter()
                .zip(parity)
                .fold(Gf2Poly::zero(), |acc, (s, x)| &acc + &(s * x));
            u.count_ones() + p.weight() as u32
        })
        .min()
        .unwrap()
}

fn systematic(max_deg: i64, streams: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(0..=max_deg, 1..4), streams).prop_map(|es| {
        let mut entries: Vec<Gf2Poly> = es
            .into_iter()
            .map(|e| {
                let p = Gf2Poly::from_exponents(e);
                if p.is_zero() {
                    Gf2Poly::one()
                } else {
                    p
                }
            })
            .collect();
        entries.push(Gf2Poly::one());
        PolyMatrix::row_vector(entries)
    })
}

fn permute_streams(x: &PolyMatrix, order: &[usize]) -> PolyMatrix {
    let row = x.row(0);
    let mut entries: Vec<Gf2Poly> = order.iter().map(|&i| row[i].clone()).collect();
    entries.push(row[row.len() - 1].clone());
    PolyMatrix::row_vector(entries)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn column_distance_matches_exhaustive_oracle(x in systematic(4, 2), j in 0usize..8) {
        prop_assume!((j + 1) * x.cols() <= ORACLE_WINDOW_BITS);
        prop_assert_eq!(column_distance(&x, j).unwrap(), column_distance_oracle(&x, j));
    }

    #[test]
    fn column_distances_are_monotone(x in systematic(5, 3)) {
        let d: Vec<u32> = (0..10).map(|j| column_distance(&x, j).unwrap()).collect();
        prop_assert!(d.windows(2).all(|w| w[0] <= w[1]), "{:?}", d);
    }

    #[test]
    fn exact_free_distance_is_bracketed(x in systematic(3, 2)) {
        let mu = x.max_degree().finite().unwrap() as usize;
        let exact = match dfree_exact(&x, 6).unwrap() {
            ExactDistance::Found(c) => c,
            ExactDistance::ExceedsBudget(_) => {
                // nothing up to weight 6, so every finite input is heavier
                prop_assert!(finite_input_upper(&x, 5) > 6);
                return Ok(());
            }
        };
        prop_assert!(verify_codeword(&x, &exact.witness));
        prop_assert_eq!(exact.witness.weight(), exact.d_free);
        prop_assert!(exact.d_free <= finite_input_upper(&x, 5));
        prop_assert!(exact.d_free <= dfree_upper(&x).unwrap().d_free);
        if (mu + 1) * x.cols() <= ORACLE_WINDOW_BITS {
            prop_assert!(column_distance_oracle(&x, mu) <= exact.d_free);
        }
    }

    #[test]
    fn distances_ignore_stream_order(x in systematic(4, 3), swap in 0usize..3) {
        let order: Vec<usize> = match swap {
            0 => vec![1, 0, 2],
            1 => vec![2, 1, 0],
            _ => vec![1, 2, 0],
        };
        let y = permute_streams(&x, &order);
        prop_assert_eq!(
            dfree_exact(&x, 5).unwrap().distance(),
            dfree_exact(&y, 5).unwrap().distance()
        );
        for j in 0..5 {
            prop_assert_eq!(column_distance(&x, j).unwrap(), column_distance(&y, j).unwrap());
        }
    }
}

#[test]
fn strong_families_reach_w_plus_one() {
    let mut checked = 0;
    for (r, w) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
        for f in search_strong_dts(r, w, 10).step_by(5) {
            let x = build_systematic_x(&f).matrix;
            let want = w as u32 + 1;
            let exact = dfree_exact(&x, want).unwrap();
            assert_eq!(exact.distance(), Some(want), "{f}");
            let cert = certify_dfree(&x).unwrap();
            assert_eq!(cert.d_free, want);
            assert!(verify_codeword(&x, &cert.witness));
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn column_distance_reaches_w_plus_one_at_memory() {
    // J = w orthogonal check sums on the first information bit
    for (r, w, scope) in [(1, 3, 6), (2, 2, 5), (1, 2, 7)] {
        for f in search_strong_dts(r, w, scope).take(10) {
            let x = build_systematic_x(&f).matrix;
            let mu = f.scope() as usize;
            if (mu + 1) * x.cols() <= ORACLE_WINDOW_BITS {
                assert_eq!(column_distance_oracle(&x, mu), w as u32 + 1, "{f}");
            }
            assert_eq!(column_distance(&x, mu).unwrap(), w as u32 + 1, "{f}");
        }
    }
}

#[test]
fn example_family_oracles() {
    let f = DtsFamily::from_zero_based(&[vec![0, 1], vec![0, 2]]).unwrap();
    let x = build_systematic_x(&f).matrix;
    let oracle: Vec<u32> = (0..=4).map(|j| column_distance_oracle(&x, j)).collect();
    let fast: Vec<u32> = (0..=4).map(|j| column_distance(&x, j).unwrap()).collect();
    assert_eq!(fast, oracle);
    assert_eq!(oracle[0], 2);
    assert_eq!(finite_input_upper(&x, 4), 3);
}
