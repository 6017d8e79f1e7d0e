use finfourier::parseval::{h_n, parseval_partial_sum, w_identity_residual, w_sums};

const PARAMS: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5)];

#[test]
fn octaves_shrink_geometrically() {
    for &(a, b) in &PARAMS {
        for n in 0..=3 {
            for m in 0..=3 {
                let r = parseval_partial_sum(n, m, a, b, 512).unwrap();
                let at = |j: usize| r.octaves.iter().find(|o| o.0 == j).unwrap().1;
                for w in [32usize, 64, 128, 256].windows(2) {
                    let (lo, hi) = (w[0], w[1]);
                    let later = (at(2 * hi) - at(hi)).norm();
                    let earlier = (at(hi) - at(lo)).norm();
                    assert!(later <= 2.0 * earlier + 1e-14, "n={n} m={m} ({a},{b}) J={hi}");
                }
                assert!(r.tail_est >= 0.0);
                assert!(r.residual < 1e-2 * (1.0 + r.target), "n={n} m={m}: {}", r.residual);
            }
        }
    }
}

#[test]
fn diagonal_targets() {
    assert_eq!(parseval_partial_sum(0, 0, 0.0, 0.0, 8).unwrap().target, 2.0);
    let r = parseval_partial_sum(1, 1, 0.0, 0.0, 8).unwrap();
    assert!((r.target - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(parseval_partial_sum(1, 2, 0.0, 0.0, 8).unwrap().target, 0.0);
    assert!((h_n(2, 1.0, 0.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn w_identity_converges_for_distinct_degrees() {
    for &(a, b) in &[(0.0, 0.0), (1.0, 0.5), (0.5, 0.0)] {
        for (n, m) in [(0usize, 1usize), (1, 2), (2, 1), (0, 2), (1, 3)] {
            let coarse = w_identity_residual(n, m, a, b, 32).unwrap();
            let fine = w_identity_residual(n, m, a, b, 256).unwrap();
            let (plain, _) = w_sums(n, m, a, b, 256).unwrap();
            assert!(fine <= coarse + 1e-12 * plain.norm().max(1.0), "n={n} m={m} ({a},{b})");
        }
    }
    let (plain, _) = w_sums(0, 1, 0.0, 0.0, 64).unwrap();
    assert!(w_identity_residual(0, 1, 0.0, 0.0, 64).unwrap() <= 1e-6 * plain.norm().max(1.0));
}
