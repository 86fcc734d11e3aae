//! Exercises the two-dimensional evaluation oracle: the full independent
//! check, agreement between engine normal forms and matrix arithmetic on a
//! systematic word corpus, and a perturbation control.

use qonsager_core::cartan::AffineDiagram;
use qonsager_core::coeff::RationalFn;
use qonsager_core::freealg::{Letter, NcMono, NcPoly, Word};
use qonsager_core::homver::{verify_pair, Realization};
use qonsager_core::onsager::Oq;
use qonsager_core::oracle::{
    check_defining_relations, matrix_oracle_sl2, realized_relation_matrix, EvalRep,
};
use qonsager_core::uqreduce::{relation_word_bound, Reducer, Uq};

fn setup() -> (Uq, Oq, Realization) {
    let dg = AffineDiagram::from_id("a1^1").unwrap();
    let uq = Uq::new(&dg, relation_word_bound(&dg));
    let oq = Oq::new(&dg);
    let real = Realization::new(&dg);
    (uq, oq, real)
}

#[test]
fn independent_oracle_passes() {
    matrix_oracle_sl2().unwrap();
}

#[test]
fn normal_forms_preserve_evaluation() {
    let (uq, _oq, mut real) = setup();
    let rep = EvalRep::new(&uq, &mut real);
    check_defining_relations(&uq, &rep).unwrap();
    let mut red = Reducer::new(&uq);
    let letters: Vec<Letter> = (0..4).collect();
    let mut words: Vec<Word> = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &words {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words.extend(next);
        words.sort();
        words.dedup();
    }
    let mut checked = 0usize;
    for w in &words {
        let p = NcPoly::monomial(NcMono::word(w.clone()), RationalFn::one());
        let nf = red.nf(&p);
        assert_eq!(rep.eval_poly(&p), rep.eval_poly(&nf), "word {w:?}");
        checked += 1;
    }
    assert!(checked >= 80, "corpus too small: {checked}");
}

#[test]
fn engine_solution_matches_oracle() {
    let (uq, oq, mut real) = setup();
    let mut red = Reducer::new(&uq);
    for (x, y) in [(0usize, 1usize), (1, 0)] {
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
        assert!(pv.constraints.is_empty());
        let rep = EvalRep::new(&uq, &mut real);
        let m = realized_relation_matrix(&uq, &oq, &mut real, &rep, &pv.rho, x, y);
        assert!(m.is_zero(), "({x},{y})");
    }
}

#[test]
fn perturbed_constants_fail_in_the_representation() {
    let (uq, oq, mut real) = setup();
    let mut red = Reducer::new(&uq);
    let pv = verify_pair(&uq, &oq, &mut real, &mut red, 0, 1).unwrap();
    let rep = EvalRep::new(&uq, &mut real);
    let perturbed: Vec<_> = pv
        .rho
        .iter()
        .map(|(s, v)| (*s, v.add_ref(&RationalFn::one())))
        .collect();
    let m = realized_relation_matrix(&uq, &oq, &mut real, &rep, &perturbed, 0, 1);
    assert!(!m.is_zero());
}
