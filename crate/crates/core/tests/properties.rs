use proptest::prelude::*;
use qweil::classes;
use qweil::gla::{FinVector, LinearMap};
use qweil::hopf::{Element, Tensor};
use qweil::presets::{self, ChernConvention};
use qweil::universal::SigmaAlgebra;
use qweil::{Context, Scalar};
use std::sync::OnceLock;

fn sumu2() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| presets::load_unchecked("sumu2-4d").unwrap())
}

fn u1() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| presets::load_unchecked("u1").unwrap())
}

fn u1_sigma() -> &'static SigmaAlgebra {
    static S: OnceLock<SigmaAlgebra> = OnceLock::new();
    S.get_or_init(|| SigmaAlgebra::new(u1().calc.clone(), 4))
}

/// Small rational functions in μ, λ, ν with multivariate denominators.
fn scalar() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        (-4i64..=4).prop_map(|n| n.to_string()),
        Just("mu".to_string()),
        Just("lambda".to_string()),
        Just("nu".to_string()),
    ];
    let var = prop::sample::select(vec!["mu", "lambda", "nu", "2"]);
    (atom.clone(), atom.clone(), atom, var.clone(), var.clone(), var, 1i64..=2).prop_map(|(a, b, c, x, y, z, k)| {
        Scalar::parse(&format!("({a}*{b} + {c})/({x}*{y}^{k} + {z} + 1)")).unwrap()
    })
}

fn word(ngens: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..ngens, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        prop_assert_eq!(Scalar::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn binomial_recursion(s in scalar(), k in 0u32..5) {
        let lhs = Scalar::binomial(&s, k + 1);
        let rhs = Scalar::binomial(&s, k).mul(&s.sub(&Scalar::int(k as i64))).div(&Scalar::int(k as i64 + 1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_vectors_are_annihilated(entries in prop::collection::vec(-3i64..=3, 12)) {
        let cols: Vec<FinVector> = entries
            .chunks(3)
            .map(|c| FinVector::from_dense(&c.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>()))
            .collect();
        let f = LinearMap::from_columns(4, 3, cols);
        let ker = f.kernel_basis();
        prop_assert_eq!(ker.len() + f.rank(), 4);
        for v in ker {
            prop_assert!(f.apply(&v).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sumu2_normal_form_is_idempotent_and_associative(a in word(4, 4), b in word(4, 3), c in word(4, 3)) {
        let alg = &sumu2().alg;
        let na = alg.normal_word(&a);
        prop_assert_eq!(alg.normalize(&na), na.clone());
        let (x, y, z) = (na, alg.normal_word(&b), alg.normal_word(&c));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn sumu2_coproduct_and_counit_are_multiplicative(a in word(4, 3), b in word(4, 3)) {
        let alg = &sumu2().alg;
        let (x, y) = (alg.normal_word(&a), alg.normal_word(&b));
        let xy = alg.mul(&x, &y);
        prop_assert_eq!(alg.coproduct(&xy), alg.tensor_mul(&alg.coproduct(&x), &alg.coproduct(&y)));
        prop_assert_eq!(alg.counit(&xy), alg.counit(&x).mul(&alg.counit(&y)));
    }

    #[test]
    fn sumu2_pi_kills_scalars_and_is_linear(a in word(4, 3), b in word(4, 3), c in scalar()) {
        let calc = &sumu2().calc;
        let alg = &sumu2().alg;
        let (x, y) = (alg.normal_word(&a), alg.normal_word(&b));
        prop_assert!(calc.pi(&Element::scalar(c.clone())).is_zero());
        prop_assert_eq!(calc.pi(&x.scale(&c).add(&y)), calc.pi(&x).scale(&c).add(&calc.pi(&y)));
    }

    #[test]
    fn u1_chern_series_is_multiplicative(xs in prop::collection::vec(-2i64..=2, 5), ys in prop::collection::vec(-2i64..=2, 5)) {
        let alg = &u1().alg;
        let laurent = |cs: &[i64]| {
            let (u, v) = (alg.gen("u"), alg.gen("v"));
            let mut a = Element::zero();
            for (k, &c) in cs.iter().enumerate() {
                let e = k as i64 - 2;
                let m = if e >= 0 { alg.pow(&u, e as usize) } else { alg.pow(&v, (-e) as usize) };
                a.add_scaled(&Scalar::int(c), &m);
            }
            a
        };
        let (a, b) = (laurent(&xs), laurent(&ys));
        let sigma = u1_sigma();
        for conv in [ChernConvention::Signed, ChernConvention::Exponential] {
            let sa = classes::chern_series(sigma, &a, 4, conv).unwrap();
            let sb = classes::chern_series(sigma, &b, 4, conv).unwrap();
            let sab = classes::chern_series(sigma, &a.add(&b), 4, conv).unwrap();
            prop_assert_eq!(classes::series_mul(sigma, &sa.coeffs, &sb.coeffs, 4), sab.coeffs);
        }
    }

    #[test]
    fn u1_power_sums_follow_pi_of_powers(n in -4i64..=4, k in 1usize..=4) {
        let alg = &u1().alg;
        let a = if n >= 0 { alg.pow(&alg.gen("u"), n as usize) } else { alg.pow(&alg.gen("v"), (-n) as usize) };
        let p = classes::power_sums(u1_sigma(), &a, k);
        let base = Scalar::one().sub(&Scalar::lambda().pow(n).unwrap());
        prop_assert_eq!(&p[k], &FinVector::single(0, base.pow(k as i64).unwrap()));
    }

    #[test]
    fn euler_action_truncations_are_prefixes(k in 0u32..4, n in -3i64..=3, o in 0usize..4) {
        let short = classes::euler_action_series(k, n, o);
        let long = classes::euler_action_series(k, n, o + 2);
        prop_assert_eq!(&long[..short.len()], &short[..]);
    }

    #[test]
    fn iterated_coproduct_is_coassociative(a in word(4, 3)) {
        let alg = &sumu2().alg;
        let x = alg.normal_word(&a);
        let t3 = alg.iterated_coproduct(&x, 3);
        let mut via_left = Tensor::zero(3);
        for (legs, c) in alg.coproduct(&x).terms() {
            let left = alg.coproduct(&Element::word(legs[0].clone()));
            let right = Tensor::from_element(&Element::word(legs[1].clone()));
            via_left.add_scaled(c, &left.outer(&right));
        }
        prop_assert_eq!(t3, via_left);
    }
}
