//! Tensor verification of the comodule structure map.
//!
//! The map sends `A_i` to
//!
//! ```text
//!   (c_i E_i K_i + cbar_i F_i K_i) (x) 1  +  K_i^2 (x) A_i,
//! ```
//!
//! with the left factor in the deformed enveloping algebra and the right
//! factor an abstract generator. Substituting the images into a defining
//! relation whose structure constants are already solved, then reducing the
//! left factors, collapses everything to one invertible K-monomial tensored
//! with the relation element itself; rewriting that element by the
//! relation's own oriented rule finishes at zero. The collapse shows both
//! directions at once: the images satisfy the relation exactly when the
//! abstract generators do.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{RationalFn, Sym, SymbolTable};
use crate::freealg::{normal_form, FreeAlgebra, Letter, NcMono, NcPoly};
use crate::homver::Realization;
use crate::onsager::Oq;
use crate::uqreduce::{Reducer, Uq};

/// Element of (enveloping algebra) (x) (abstract algebra). Left monomials
/// carry K-parts; right monomials are plain words in the `A` letters.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(NcMono, NcMono), RationalFn>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut t = TensorPoly::zero();
        t.insert_add((NcMono::unit(), NcMono::unit()), RationalFn::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(NcMono, NcMono), &RationalFn)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (NcMono, NcMono), c: RationalFn) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &RationalFn) {
        for (key, v) in &other.terms {
            self.insert_add(key.clone(), v.mul_ref(c));
        }
    }

    pub fn map_coeffs<F: Fn(&RationalFn) -> RationalFn>(&self, f: F) -> Self {
        let mut out = TensorPoly::zero();
        for (key, v) in &self.terms {
            out.insert_add(key.clone(), f(v));
        }
        out
    }

    /// Product in the tensor algebra: factors multiply slotwise, without
    /// braiding. K-crossing phases arise on the left only; the right algebra
    /// is plain.
    pub fn mul(&self, other: &TensorPoly, left: &FreeAlgebra, right: &FreeAlgebra) -> Self {
        let mut out = TensorPoly::zero();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                let (el, lm) = left.mul_mono(la, lb);
                let (er, rm) = right.mul_mono(ra, rb);
                let c = ca.mul_ref(cb).mul_ref(&RationalFn::t_pow(el + er));
                out.insert_add((lm, rm), c);
            }
        }
        out
    }

    /// Right-side elements collected per left monomial, zero groups dropped,
    /// canonical order.
    pub fn group_by_left(&self) -> Vec<(NcMono, NcPoly)> {
        let mut groups: BTreeMap<NcMono, NcPoly> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            let entry = groups.entry(l.clone()).or_insert_with(NcPoly::zero);
            *entry = entry.add_ref(&NcPoly::monomial(r.clone(), c.clone()));
        }
        groups.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    pub fn render(&self, left: &FreeAlgebra, right: &FreeAlgebra, st: &SymbolTable) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                format!(
                    "({}) {} (x) {}",
                    c.render(st),
                    left.render_mono(l),
                    right.render_mono(r)
                )
            })
            .collect();
        parts.join(" + ")
    }
}

/// Image of `A_i` with `K_i^kexp` in the group-like summand; `kexp = 2` is
/// the structure map itself, other values are controls.
pub fn coact_with_group_factor(
    uq: &Uq,
    real: &Realization,
    i: usize,
    kexp: i32,
) -> TensorPoly {
    let ek = uq.alg.mul(&uq.e_poly(i), &uq.k_poly(i, 1));
    let fk = uq.alg.mul(&uq.f_poly(i), &uq.k_poly(i, 1));
    let b = ek
        .scale(&RationalFn::sym(real.c[i]))
        .add_ref(&fk.scale(&RationalFn::sym(real.cbar[i])));
    let mut out = TensorPoly::zero();
    for (m, c) in b.terms() {
        out.insert_add((m.clone(), NcMono::unit()), c.clone());
    }
    for (m, c) in uq.k_poly(i, kexp).terms() {
        out.insert_add((m.clone(), NcMono::word(vec![i as Letter])), c.clone());
    }
    out
}

/// The comodule structure map on the generator `A_i`.
pub fn coact(uq: &Uq, real: &Realization, i: usize) -> TensorPoly {
    coact_with_group_factor(uq, real, i, 2)
}

/// Applies the counit to the left factors: monomials containing letters die,
/// pure K-monomials become 1. Returns the right-side element.
pub fn counit_left(t: &TensorPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for ((l, r), c) in &t.terms {
        if l.w.is_empty() {
            out = out.add_ref(&NcPoly::monomial(r.clone(), c.clone()));
        }
    }
    out
}

/// Result of checking one ordered pair's relation on the tensor images.
#[derive(Clone, Debug)]
pub struct CoactionOutcome {
    pub x: usize,
    pub y: usize,
    /// Left-reduced expansion, grouped by left monomial.
    pub intermediate: Vec<(NcMono, NcPoly)>,
    /// The intermediate is a single invertible K-monomial tensored with a
    /// scalar multiple of the relation element.
    pub factors_through_relation: bool,
    /// Left groups surviving the right-side rewrite; empty is a pass.
    pub residual: Vec<(NcMono, NcPoly)>,
}

impl CoactionOutcome {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_empty()
    }
}

/// `p == lambda * q` for a scalar `lambda`.
fn proportional(p: &NcPoly, q: &NcPoly) -> bool {
    match (p.lead(), q.lead()) {
        (None, None) => true,
        (Some(_), None) | (None, Some(_)) => false,
        (Some((_, cp)), Some((_, cq))) => {
            let lambda = cp.mul_ref(&cq.inverse());
            *p == q.scale(&lambda)
        }
    }
}

/// Substitutes the tensor images into the `(x, y)` relation taken with the
/// supplied structure constants, reduces left factors with the enveloping
/// algebra's rules and right factors with the relation rules, and reports
/// the intermediate and the residual. `kexp` is the group-like power; the
/// map itself has `kexp = 2`.
pub fn coaction_outcome(
    uq: &Uq,
    oq: &Oq,
    real: &mut Realization,
    red: &mut Reducer,
    rho: &[(Sym, RationalFn)],
    x: usize,
    y: usize,
    kexp: i32,
) -> CoactionOutcome {
    let subst =
        |c: &RationalFn| rho.iter().fold(c.clone(), |acc, (s, v)| acc.subst_sym(*s, v));
    let rel = oq.relation(&mut real.st, x, y).map_coeffs(&subst);

    let dx = coact_with_group_factor(uq, real, x, kexp);
    let dy = coact_with_group_factor(uq, real, y, kexp);
    let mut expanded = TensorPoly::zero();
    for (m, c) in rel.terms() {
        debug_assert!(m.k.is_empty(), "abstract relation carries no K-part");
        let mut prod = TensorPoly::one();
        for &l in &m.w {
            let img = if l as usize == x { &dx } else { &dy };
            prod = prod.mul(img, &uq.alg, &oq.alg);
        }
        expanded.add_scaled(&prod, c);
    }

    let mut reduced = TensorPoly::zero();
    for ((lm, rm), c) in expanded.terms() {
        let nf = red.nf(&NcPoly::monomial(lm.clone(), c.clone()));
        for (m2, c2) in nf.terms() {
            reduced.insert_add((m2.clone(), rm.clone()), c2.clone());
        }
    }
    let intermediate = reduced.group_by_left();

    let factors_through_relation = match intermediate.as_slice() {
        [(m, p)] => m.is_k_only() && proportional(p, &rel),
        _ => false,
    };

    let rules = oq.rules(&mut real.st, &subst);
    let residual: Vec<(NcMono, NcPoly)> = intermediate
        .iter()
        .filter_map(|(m, p)| {
            let nf = normal_form(&oq.alg, p, &rules);
            (!nf.is_zero()).then(|| (m.clone(), nf))
        })
        .collect();

    CoactionOutcome { x, y, intermediate, factors_through_relation, residual }
}

/// The structure-map check for one ordered pair, with solved structure
/// constants shared between the left-side reduction and the right-side
/// rewrite.
pub fn verify_coaction_pair(
    uq: &Uq,
    oq: &Oq,
    real: &mut Realization,
    red: &mut Reducer,
    rho: &[(Sym, RationalFn)],
    x: usize,
    y: usize,
) -> CoactionOutcome {
    coaction_outcome(uq, oq, real, red, rho, x, y, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::AffineDiagram;
    use crate::homver::verify_pair;
    use crate::uqreduce::relation_word_bound;

    fn setup(id: &str) -> (AffineDiagram, Uq, Oq, Realization) {
        let dg = AffineDiagram::from_id(id).unwrap();
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let real = Realization::new(&dg);
        (dg, uq, oq, real)
    }

    #[test]
    fn counit_recovers_generators() {
        for id in ["a2^1", "g2^1"] {
            let (dg, uq, _oq, real) = setup(id);
            for i in 0..dg.n_nodes {
                let img = coact(&uq, &real, i);
                assert_eq!(counit_left(&img), NcPoly::word(&[i as Letter]), "{id} {i}");
            }
        }
    }

    #[test]
    fn degenerate_weights_leave_the_group_like_part() {
        let (_dg, uq, _oq, real) = setup("a1^1");
        let zero = RationalFn::zero();
        let img = coact(&uq, &real, 0).map_coeffs(|c| {
            c.subst_sym(real.c[0], &zero).subst_sym(real.cbar[0], &zero)
        });
        let mut expect = TensorPoly::zero();
        for (m, c) in uq.k_poly(0, 2).terms() {
            expect.insert_add((m.clone(), NcMono::word(vec![0])), c.clone());
        }
        assert_eq!(img, expect);
    }

    #[test]
    fn squared_image_term_counts() {
        // (B (x) 1 + K^2 (x) A)^2: the pure-B square keeps 4 words, the two
        // mixed products merge onto 2 K-normalized keys, the group part is 1.
        let (_dg, uq, oq, real) = setup("a1^1");
        let img = coact(&uq, &real, 0);
        let sq = img.mul(&img, &uq.alg, &oq.alg);
        assert_eq!(sq.num_terms(), 7);
        let mut by_right: BTreeMap<usize, usize> = BTreeMap::new();
        for ((_, r), _) in sq.terms() {
            *by_right.entry(r.w.len()).or_insert(0) += 1;
        }
        let expect: BTreeMap<usize, usize> = [(0, 4), (1, 2), (2, 1)].into_iter().collect();
        assert_eq!(by_right, expect);
    }

    #[test]
    fn residual_zero_across_link_types() {
        let pairs: [(&str, &[(usize, usize)]); 5] = [
            ("a1^1", &[(0, 1), (1, 0)]),
            ("a2^1", &[(0, 1)]),
            ("c2^1", &[(0, 1), (1, 0)]),
            ("g2^1", &[(1, 2), (2, 1)]),
            ("a2^2", &[(0, 1)]),
        ];
        for (id, dirs) in pairs {
            let (_dg, uq, oq, mut real) = setup(id);
            let mut red = Reducer::new(&uq);
            for &(x, y) in dirs {
                let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
                let out =
                    verify_coaction_pair(&uq, &oq, &mut real, &mut red, &pv.rho, x, y);
                assert!(out.factors_through_relation, "{id} ({x},{y})");
                assert!(out.residual_is_zero(), "{id} ({x},{y})");
                assert_eq!(out.intermediate.len(), 1, "{id} ({x},{y})");
            }
        }
    }

    #[test]
    #[ignore = "degree-six expansion, ~20s; run with --ignored"]
    fn residual_zero_on_the_quadruple_short_direction() {
        let (_dg, uq, oq, mut real) = setup("a2^2");
        let mut red = Reducer::new(&uq);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, 1, 0).unwrap();
        let out = verify_coaction_pair(&uq, &oq, &mut real, &mut red, &pv.rho, 1, 0);
        assert!(out.factors_through_relation);
        assert!(out.residual_is_zero());
    }

    #[test]
    fn group_factor_control_fails() {
        // Replacing K^2 by K in the group-like summand must break the check.
        let (_dg, uq, oq, mut real) = setup("a2^1");
        let mut red = Reducer::new(&uq);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, 0, 1).unwrap();
        let out = coaction_outcome(&uq, &oq, &mut real, &mut red, &pv.rho, 0, 1, 1);
        assert!(!out.factors_through_relation);
        assert!(!out.residual_is_zero());
    }
}
