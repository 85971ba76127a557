use super::Calculus;
use crate::gla::{FinVector, RowSpace};
use crate::hopf::{Element, Word};
use crate::report::Report;

fn first<T, F: FnMut(&T) -> Option<String>>(items: &[T], f: F) -> Option<String> {
    items.iter().find_map(f)
}

/// Checks the calculus tables against the Hopf layer on normal words of
/// degree ≤ `max_degree`.
pub fn validate_calculus(calc: &Calculus, max_degree: usize) -> Report {
    let mut rep = Report::new();
    let alg = calc.alg();
    let n = calc.dim();
    let rules = alg.presentation().rules.clone();

    let fail = rules.iter().find_map(|r| {
        let lhs = calc.pi_word(&r.lhs);
        let rhs = calc.pi(&r.rhs);
        (lhs != rhs).then(|| format!("pi differs on the rule for {}", alg.format_word(&r.lhs)))
    });
    rep.record_first_failure("pi-descent", fail, "pi respects every rule");

    let fail = rules.iter().find_map(|r| {
        let lhs = calc.rho_word(&r.lhs);
        let mut rhs = crate::gla::Mat::zeros(n, n);
        for (w, c) in r.rhs.terms() {
            rhs = rhs.add(&calc.rho_word(w).scale(c));
        }
        (lhs != rhs).then(|| format!("circ differs on the rule for {}", alg.format_word(&r.lhs)))
    });
    rep.record_first_failure("circ-module-law", fail, "circ respects every rule");

    let words: Vec<Word> = alg.normal_words(max_degree).into_iter().flatten().collect();
    let short: Vec<Word> = alg.normal_words(max_degree.min(2)).into_iter().flatten().collect();

    // π(ab) = ε(a)π(b) + π(a)∘b
    let fail = first(&short, |a| {
        first(&short, |b| {
            let mut ab = a.clone();
            ab.extend_from_slice(b);
            let lhs = calc.pi(&alg.normal_word(&ab));
            let rhs = calc.pi_word(b).scale(&alg.counit_word(a)).add(&calc.circ_word(&calc.pi_word(a), b));
            (lhs != rhs).then(|| format!("on {} * {}", alg.format_word(a), alg.format_word(b)))
        })
    });
    rep.record_first_failure("pi-leibniz", fail, format!("{} pairs", short.len() * short.len()));

    let mut rs = RowSpace::new();
    for w in &short {
        rs.insert(&calc.pi_word(w));
    }
    rep.record("surjectivity", rs.rank() == n, format!("rank of pi is {} of {n}", rs.rank()));

    // ϖ is a coaction and ϖπ = (π⊗id)ad.
    let mut fail = None;
    for i in 0..n {
        let eps: FinVector =
            FinVector::from_pairs((0..n).map(|k| (k, alg.counit(calc.coeff(k, i)))));
        if eps != FinVector::unit(i) {
            fail = Some(format!("(id⊗ε)ϖ fails on {}", calc.basis_names()[i]));
            break;
        }
        for j in 0..n {
            let phi = alg.coproduct(calc.coeff(j, i));
            let mut rhs = crate::hopf::Tensor::zero(2);
            for k in 0..n {
                let a = calc.coeff(j, k);
                let b = calc.coeff(k, i);
                for (w1, c1) in a.terms() {
                    for (w2, c2) in b.terms() {
                        rhs.add_term(vec![w1.clone(), w2.clone()], &c1.mul(c2));
                    }
                }
            }
            if phi != rhs {
                fail = Some(format!("coaction law fails on {}", calc.basis_names()[i]));
                break;
            }
        }
        if fail.is_some() {
            break;
        }
    }
    rep.record_first_failure("varpi-coaction", fail, "counit and coassociativity");

    let fail = first(&words, |w| {
        let a = Element::word(w.clone());
        let lhs = calc.varpi(&calc.pi(&a));
        let rhs = calc.varpi_of_pi(&a);
        (lhs != rhs).then(|| format!("on {}", alg.format_word(w)))
    });
    rep.record_first_failure("varpi-pi", fail, format!("{} monomials", words.len()));

    let s12 = calc.sigma_at(3, 0);
    let s23 = calc.sigma_at(3, 1);
    let lhs = s12.compose(&s23).compose(&s12);
    let rhs = s23.compose(&s12).compose(&s23);
    rep.record("braid-equation", lhs == rhs, format!("{} basis tensors", n * n * n));

    let sigma = calc.sigma();
    let mut fail = None;
    for p in 0..n * n {
        let e = FinVector::unit(p);
        let left = calc.varpi2(&sigma.apply(&e));
        let right_src = calc.varpi2(&e);
        let mut right = vec![Element::zero(); n * n];
        for (q, coef) in right_src.iter().enumerate() {
            for (r, s) in sigma.column(q).entries() {
                right[*r].add_scaled(s, coef);
            }
        }
        if left != right {
            fail = Some(format!("on basis pair {p}"));
            break;
        }
    }
    rep.record_first_failure("sigma-intertwining", fail, "σ commutes with ϖ⊗ϖ");

    let fail = calc
        .s_wedge2()
        .rows()
        .iter()
        .find(|v| &sigma.apply(v) != *v)
        .map(|v| format!("σ moves {}", calc.format_tensor(v, 2)));
    rep.record_first_failure("sigma-fixes-s-wedge2", fail, format!("dim S^2 = {}", calc.s_wedge2().rank()));

    if let Some(given) = &calc.tables().s_wedge2 {
        let computed_rank = calc.s_wedge2_rank_at(3);
        let ok = calc.s_wedge2().rank() == computed_rank && given.iter().all(|v| calc.s_wedge2().contains(v));
        rep.record("s-wedge2-data", ok, format!("preset data spans the computed {computed_rank}-dim space"));
    }

    // star identities
    let mut fail = None;
    for i in 0..n {
        let e = FinVector::unit(i);
        if calc.star_form(&calc.star_form(&e)) != e {
            fail = Some(format!("star is not involutive on {}", calc.basis_names()[i]));
            break;
        }
    }
    rep.record_first_failure("star-involution", fail, "on the basis");

    let fail = first(&short, |w| {
        let a = Element::word(w.clone());
        let k = alg.star(&alg.antipode(&a));
        let lhs = calc.star_form(&calc.pi(&a));
        let rhs = calc.pi(&k).neg();
        if lhs != rhs {
            return Some(format!("π(a)* on {}", alg.format_word(w)));
        }
        (0..n).find_map(|i| {
            let e = FinVector::unit(i);
            let l = calc.star_form(&calc.circ(&e, &a));
            let r = calc.circ(&calc.star_form(&e), &k);
            (l != r).then(|| format!("(ϑ∘a)* on {} and {}", calc.basis_names()[i], alg.format_word(w)))
        })
    });
    rep.record_first_failure("star-identities", fail, format!("{} monomials", short.len()));

    let fail = calc.tables().r_generators.iter().find_map(|r| {
        let ok = calc.pi(r).is_zero() && alg.counit(r).is_zero();
        (!ok).then(|| format!("π or ε does not vanish on {}", alg.format(r)))
    });
    rep.record_first_failure(
        "r-generators",
        fail,
        format!("{} generators annihilated", calc.tables().r_generators.len()),
    );

    let delta = &calc.delta().delta;
    rep.record_first_failure(
        "delta",
        calc.delta().error.clone().or_else(|| calc.check_delta(delta)),
        format!("σδ = δ + c^⊤, hermitian, intertwining; solution dim {}", calc.delta().solution_dim),
    );
    rep
}
