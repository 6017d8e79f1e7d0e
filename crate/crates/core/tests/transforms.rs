use finfourier::numerics::tau;
use finfourier::oracle::quad_hat_spec;
use finfourier::polyfamilies::FamilySpec;
use finfourier::transforms::{hat, hat_with, jacobi_hat_zero, Flags, MethodId};
use finfourier::Complex64;
use proptest::prelude::*;

const PARAMS: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (2.0, 3.0), (-0.3, 0.7)];
const NUS: [f64; 3] = [0.5, 1.0, 2.5];

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn specs(n: usize) -> Vec<FamilySpec> {
    let mut out = vec![
        FamilySpec::legendre(n).unwrap(),
        FamilySpec::chebyshev_t(n).unwrap(),
        FamilySpec::chebyshev_u(n).unwrap(),
    ];
    out.extend(PARAMS.iter().map(|&(a, b)| FamilySpec::jacobi(n, a, b).unwrap()));
    out.extend(NUS.iter().map(|&nu| FamilySpec::gegenbauer(n, nu).unwrap()));
    out
}

#[test]
fn every_method_matches_the_oracle() {
    for n in [0usize, 1, 4, 9, 16, 20] {
        for spec in specs(n) {
            for method in MethodId::for_family(&spec.family) {
                if matches!(method, MethodId::Oracle | MethodId::JLambda0) {
                    continue;
                }
                for &l in &[0.7, 6.0, 23.0, 71.0] {
                    let got = match hat_with(&spec, l, method) {
                        Ok(r) => r.value,
                        Err(e) => panic!("{spec} {method} λ={l}: {e}"),
                    };
                    let q = quad_hat_spec(&spec, l, 1e-13).unwrap();
                    let d = (got - q.value).norm();
                    assert!(d <= 1e-8 * (1.0 + q.value.norm()), "{spec} {method} λ={l}: {d:e}");
                }
            }
        }
    }
}

#[test]
fn spec_examples() {
    let r = hat(&FamilySpec::legendre(5).unwrap(), 0.001).unwrap();
    assert_eq!(r.method, MethodId::SmallLambdaSeries);
    assert!(r.flags.contains(Flags::SMALL_LAMBDA_BRANCH));
    let spec = FamilySpec::legendre(5).unwrap();
    let r = hat(&spec, 10.0).unwrap();
    assert_eq!(r.method, MethodId::LClosed);
    let b = hat_with(&spec, 10.0, MethodId::LBessel).unwrap();
    assert!(rel(r.value, b.value) < 1e-10);
    for &l in &[0.2, 3.0, 55.0] {
        let r = hat(&FamilySpec::chebyshev_t(0).unwrap(), l).unwrap();
        assert!((r.value.re - 2.0 * l.sin() / l).abs() < 1e-15);
    }
    let t2 = hat(&FamilySpec::chebyshev_t(2).unwrap(), std::f64::consts::PI).unwrap();
    assert!((t2.value.re + 8.0 / (std::f64::consts::PI.powi(2))).abs() < 1e-15);
    let j = hat(&FamilySpec::jacobi(1, 1.0, 0.0).unwrap(), std::f64::consts::PI).unwrap();
    assert!(rel(j.value, Complex64::new(0.0, 3.0 / std::f64::consts::PI)) < 1e-15);
}

#[test]
fn requested_method_is_overridden_near_zero() {
    let spec = FamilySpec::jacobi(3, 1.0, 0.0).unwrap();
    let r = hat_with(&spec, 0.0, MethodId::JEk).unwrap();
    assert_eq!(r.method, MethodId::JLambda0);
    let r = hat_with(&spec, 0.5, MethodId::JBoundary).unwrap();
    assert_eq!(r.method, MethodId::SmallLambdaSeries);
    assert!(r.flags.contains(Flags::SMALL_LAMBDA_BRANCH));
}

#[test]
fn lambda_zero_adjudication() {
    let r = jacobi_hat_zero::<f64>(1, 1.0, 0.0).unwrap();
    assert_eq!(r.value, Complex64::new(1.0, 0.0));
    assert!(r.flags.contains(Flags::PAPER_FORMULA_DISCREPANCY));
    for n in 1..=10 {
        assert_eq!(
            jacobi_hat_zero::<f64>(n, 0.0, 0.0).unwrap().value,
            Complex64::new(0.0, 0.0)
        );
    }
    assert_eq!(jacobi_hat_zero::<f64>(0, 0.3, 2.0).unwrap().value.re, 2.0);
}

#[test]
fn inexact_parameters_are_flagged() {
    let spec = FamilySpec::jacobi(3, std::f64::consts::PI / 4.0, 0.0).unwrap();
    assert!(hat(&spec, 5.0).unwrap().flags.contains(Flags::INEXACT_PARAMETERS));
    let spec = FamilySpec::jacobi(3, 0.25, 0.0).unwrap();
    assert!(!hat(&spec, 5.0).unwrap().flags.contains(Flags::INEXACT_PARAMETERS));
}

#[test]
fn continuity_across_the_switch() {
    for n in [2usize, 7, 12, 20] {
        for spec in specs(n) {
            let t = tau(n);
            let below = hat(&spec, t * (1.0 - 1e-12)).unwrap();
            let above = hat(&spec, t * (1.0 + 1e-12)).unwrap();
            assert_ne!(below.method, above.method);
            assert!(rel(below.value, above.value) < 1e-8, "{spec}");
        }
    }
}

fn any_spec() -> impl Strategy<Value = FamilySpec> {
    (0usize..=20, 0usize..11).prop_map(|(n, k)| specs(n)[k])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn conjugate_symmetry(spec in any_spec(), l in 0.01f64..120.0) {
        let a = hat(&spec, l).unwrap().value;
        let b = hat(&spec, -l).unwrap().value;
        prop_assert!((a.conj() - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn jacobi_reflection(n in 0usize..=20, k in 0usize..5, l in 0.01f64..120.0) {
        let (a, b) = PARAMS[k];
        let lhs = hat(&FamilySpec::jacobi(n, a, b).unwrap(), -l).unwrap().value;
        let rhs = hat(&FamilySpec::jacobi(n, b, a).unwrap(), l).unwrap().value;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(rel(lhs, rhs * sign) <= 1e-10);
    }

    #[test]
    fn reductions(n in 0usize..=25, l in 0.01f64..120.0) {
        let p = hat(&FamilySpec::legendre(n).unwrap(), l).unwrap().value;
        let j = hat(&FamilySpec::jacobi(n, 0.0, 0.0).unwrap(), l).unwrap().value;
        let g = hat(&FamilySpec::gegenbauer(n, 0.5).unwrap(), l).unwrap().value;
        let u = hat(&FamilySpec::chebyshev_u(n).unwrap(), l).unwrap().value;
        let c1 = hat(&FamilySpec::gegenbauer(n, 1.0).unwrap(), l).unwrap().value;
        prop_assert!(rel(j, p) <= 1e-10);
        prop_assert!(rel(g, p) <= 1e-10);
        prop_assert!(rel(c1, u) <= 1e-10);
    }

    #[test]
    fn legendre_bound(n in 0usize..=60, l in -200.0f64..200.0) {
        let v = hat(&FamilySpec::legendre(n).unwrap(), l).unwrap();
        prop_assert!(v.value.norm() <= 2.0 + 1e-12);
        prop_assert!(v.est_rel_err >= 0.0);
    }
}
