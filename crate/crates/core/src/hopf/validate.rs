use super::{deglex, Element, HopfAlgebra, Tensor, Word};
use crate::report::Report;
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// φ of a raw word: product of the generator images, legs normalized.
fn raw_coproduct(alg: &HopfAlgebra, a: &Element) -> Tensor {
    let mut out = Tensor::zero(2);
    for (w, c) in a.terms() {
        let mut acc = Tensor::zero(2);
        acc.add_term(vec![Vec::new(), Vec::new()], &Scalar::one());
        for &g in w {
            acc = alg.tensor_mul(&acc, &alg.coproduct_word(&[g], 2));
        }
        out.add_scaled(c, &acc);
    }
    out
}

fn raw_antipode(alg: &HopfAlgebra, a: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in a.terms() {
        out.add_scaled(c, &alg.antipode_word(w));
    }
    out
}

fn raw_star(alg: &HopfAlgebra, a: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in a.terms() {
        out.add_scaled(&c.conj(), &alg.normal_word(&alg.star_word_raw(w)));
    }
    out
}

fn raw_counit(alg: &HopfAlgebra, a: &Element) -> Scalar {
    alg.counit(a)
}

/// Normalizes by rewriting a randomly chosen redex at every step.
fn random_normalize(alg: &HopfAlgebra, w: &[u8], rng: &mut ChaCha8Rng) -> Option<Element> {
    let mut cur = Element::word(w.to_vec());
    let mut budget = 100_000usize;
    loop {
        let reducible: Vec<(Word, Scalar)> =
            cur.terms().filter(|(w, _)| !alg.is_normal(w)).map(|(w, c)| (w.clone(), c.clone())).collect();
        if reducible.is_empty() {
            return Some(cur);
        }
        let (w, c) = &reducible[rng.gen_range(0..reducible.len())];
        let redexes = alg.redexes(w);
        let (pos, r) = redexes[rng.gen_range(0..redexes.len())];
        let step = alg.rewrite_at(w, pos, r);
        cur.add_term(w.clone(), &c.neg());
        cur.add_scaled(c, &step);
        budget = budget.checked_sub(1)?;
    }
}

fn flip_star(alg: &HopfAlgebra, t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(t.legs);
    for (key, c) in t.terms() {
        let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), c.conj())];
        for w in key {
            let img = alg.star(&Element::word(w.clone()));
            let mut next = Vec::new();
            for (k, x) in &partial {
                for (nw, y) in img.terms() {
                    let mut k2 = k.clone();
                    k2.push(nw.clone());
                    next.push((k2, x.mul(y)));
                }
            }
            partial = next;
        }
        for (k, x) in partial {
            out.add_term(k, &x);
        }
    }
    out
}

/// Checks the presentation on all normal monomials up to `max_degree` and
/// samples confluence with `samples` random words.
pub fn validate_presentation(alg: &HopfAlgebra, max_degree: usize, samples: usize, seed: u64) -> Report {
    let mut rep = Report::new();
    let pres = alg.presentation();

    let mut fail = None;
    for r in &pres.rules {
        if let Some((w, _)) = r.rhs.terms().find(|(w, _)| deglex(w, &r.lhs) != Ordering::Less) {
            fail = Some(format!("{} -> {} does not decrease", alg.format_word(&r.lhs), alg.format_word(w)));
            break;
        }
    }
    rep.record_first_failure("rule-order", fail, format!("{} rules decrease deglex", pres.rules.len()));

    let mut fail = None;
    for (g, s) in pres.star.iter().enumerate() {
        if pres.star[*s] != g {
            fail = Some(format!("star partner of {} is not an involution", pres.generators[g]));
        }
    }
    rep.record_first_failure("star-pairing", fail, "partners are mutual");

    let mut fail_eps = None;
    let mut fail_phi = None;
    let mut fail_kappa = None;
    let mut fail_star = None;
    for r in &pres.rules {
        let lhs = Element::word(r.lhs.clone());
        let name = alg.format_word(&r.lhs);
        if fail_eps.is_none() && raw_counit(alg, &lhs) != raw_counit(alg, &r.rhs) {
            fail_eps = Some(format!("counit differs on rule for {name}"));
        }
        if fail_phi.is_none() && raw_coproduct(alg, &lhs) != raw_coproduct(alg, &r.rhs) {
            fail_phi = Some(format!("coproduct differs on rule for {name}"));
        }
        if fail_kappa.is_none() && raw_antipode(alg, &lhs) != raw_antipode(alg, &r.rhs) {
            fail_kappa = Some(format!("antipode differs on rule for {name}"));
        }
        if fail_star.is_none() && raw_star(alg, &lhs) != raw_star(alg, &r.rhs) {
            fail_star = Some(format!("star differs on rule for {name}"));
        }
    }
    rep.record_first_failure("counit", fail_eps, "counit respects every rule");
    rep.record_first_failure("coproduct-rules", fail_phi, "coproduct respects every rule");
    rep.record_first_failure("antipode-rules", fail_kappa, "antipode respects every rule");
    rep.record_first_failure("star-rules", fail_star, "star respects every rule");
    if !rep.passed() {
        return rep;
    }

    let words: Vec<Word> = alg.normal_words(max_degree).into_iter().flatten().collect();
    let mut f_counit = None;
    let mut f_coassoc = None;
    let mut f_antipode = None;
    let mut f_star = None;
    for w in &words {
        let a = Element::word(w.clone());
        let name = alg.format_word(w);
        let phi = alg.coproduct(&a);
        if f_counit.is_none() {
            let left = alg.contract_leg(&phi, 0, |x| alg.counit_word(x)).to_element().expect("one leg");
            let right = alg.contract_leg(&phi, 1, |x| alg.counit_word(x)).to_element().expect("one leg");
            if left != a || right != a {
                f_counit = Some(format!("counit law fails on {name}"));
            }
        }
        if f_coassoc.is_none() {
            let mut left = Tensor::zero(3);
            let mut right = Tensor::zero(3);
            for (key, c) in phi.terms() {
                for (k2, c2) in alg.coproduct_word(&key[0], 2).terms() {
                    left.add_term(vec![k2[0].clone(), k2[1].clone(), key[1].clone()], &c.mul(c2));
                }
                for (k2, c2) in alg.coproduct_word(&key[1], 2).terms() {
                    right.add_term(vec![key[0].clone(), k2[0].clone(), k2[1].clone()], &c.mul(c2));
                }
            }
            if left != right {
                f_coassoc = Some(format!("coassociativity fails on {name}"));
            }
        }
        if f_antipode.is_none() {
            let eps = Element::scalar(alg.counit_word(w));
            let l = alg.multiply_legs(&alg.map_leg(&phi, 0, |x| alg.antipode_word(x)), 0).to_element().expect("one leg");
            let r = alg.multiply_legs(&alg.map_leg(&phi, 1, |x| alg.antipode_word(x)), 0).to_element().expect("one leg");
            if l != eps || r != eps {
                f_antipode = Some(format!("antipode law fails on {name}"));
            }
        }
        if f_star.is_none() {
            let lhs = alg.coproduct(&alg.star(&a));
            let rhs = flip_star(alg, &phi);
            if lhs != rhs || alg.star(&alg.star(&a)) != a {
                f_star = Some(format!("star compatibility fails on {name}"));
            }
        }
    }
    let n = words.len();
    rep.record_first_failure("counit-law", f_counit, format!("{n} monomials"));
    rep.record_first_failure("coassociativity", f_coassoc, format!("{n} monomials"));
    rep.record_first_failure("antipode-law", f_antipode, format!("{n} monomials"));
    rep.record_first_failure("star-coproduct", f_star, format!("{n} monomials"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f_conf = None;
    let ng = alg.ngens() as u8;
    for _ in 0..samples {
        let len = rng.gen_range(1..=6);
        let w: Word = (0..len).map(|_| rng.gen_range(0..ng)).collect();
        match random_normalize(alg, &w, &mut rng) {
            Some(e) if e == alg.normal_word(&w) => {}
            _ => {
                f_conf = Some(format!("reduction orders disagree on {}", alg.format_word(&w)));
                break;
            }
        }
    }
    rep.record_first_failure("confluence", f_conf, format!("{samples} random words"));
    rep
}
