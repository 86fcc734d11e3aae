//! The quantized enveloping algebra of an affine diagram, presented as a
//! rewrite system.
//!
//! Generators per node `i`: `E_i`, `F_i`, and an invertible group-like `K_i`
//! representing `q_i^{h_i/2}`, so `K_i E_j = t^{d_i a_ij} E_j K_i` and
//! `K_i F_j = t^{-d_i a_ij} F_j K_i` (one `K_i` is a *half* power: two of
//! them give the usual Cartan action). Defining rewrite rules:
//!
//! * `E_i F_j -> F_j E_i + delta_ij (K_i^2 - K_i^-2)/(q_i - q_i^-1)`;
//! * the two Serre rules of every linked pair, in each alphabet, oriented by
//!   the monomial order (one commutation rule per unlinked pair).
//!
//! The Serre rules alone are not confluent beyond simply-laced bonds, so
//! construction runs bounded Knuth-Bendix completion on the pure-`E` and
//! pure-`F` subsystems up to a caller-chosen word length. Mixed critical
//! pairs (a Serre pattern against an `E F` pattern) are expected to join by
//! the triangular decomposition; [`Uq::overlap_report`] checks that
//! empirically so callers can gate on it rather than trust it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cartan::AffineDiagram;
use crate::coeff::{qbinom, LaurentPoly, RationalFn};
use crate::freealg::{
    complete_bounded, normal_form, overlap_check, FreeAlgebra, Letter, NcMono, NcPoly,
    OverlapReport, Rule, Trace, Word,
};

/// Largest word length a pair relation produces: `2 - min a_ij`.
pub fn relation_word_bound(dg: &AffineDiagram) -> usize {
    let mut m = 2i64;
    for i in 0..dg.n_nodes {
        for j in 0..dg.n_nodes {
            if i != j {
                m = m.max(2 - dg.a[i][j]);
            }
        }
    }
    m as usize
}

/// Rewrite presentation of one quantized enveloping algebra.
pub struct Uq {
    pub dg: AffineDiagram,
    pub alg: FreeAlgebra,
    rules: Vec<Rule>,
    pub completion_len: usize,
    /// Rules derived by completion, beyond the defining ones.
    pub n_derived: usize,
}

impl Uq {
    pub fn e(&self, i: usize) -> Letter {
        debug_assert!(i < self.dg.n_nodes);
        i as Letter
    }

    pub fn f(&self, i: usize) -> Letter {
        debug_assert!(i < self.dg.n_nodes);
        (self.dg.n_nodes + i) as Letter
    }

    pub fn e_poly(&self, i: usize) -> NcPoly {
        NcPoly::letter(self.e(i))
    }

    pub fn f_poly(&self, i: usize) -> NcPoly {
        NcPoly::letter(self.f(i))
    }

    /// `K_i^e` (each unit of `e` is a half power of `q_i^{h_i}`).
    pub fn k_poly(&self, i: usize, e: i32) -> NcPoly {
        NcPoly::k_pow(i, e)
    }

    /// `q_i - q_i^{-1}` as a scalar.
    pub fn qi_minus_inv(&self, i: usize) -> RationalFn {
        let d = self.dg.d[i] as i64;
        RationalFn::from_poly(&LaurentPoly::t_pow(2 * d) - &LaurentPoly::t_pow(-2 * d))
    }

    pub fn new(dg: &AffineDiagram, completion_len: usize) -> Uq {
        let n = dg.n_nodes;
        let mut letters = Vec::with_capacity(2 * n);
        for i in 0..n {
            letters.push(format!("E{i}"));
        }
        for i in 0..n {
            letters.push(format!("F{i}"));
        }
        let k_names: Vec<String> = (0..n).map(|i| format!("K{i}")).collect();
        let mut kweight = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(2 * n);
            for j in 0..n {
                row.push(dg.d[i] as i64 * dg.a[i][j]);
            }
            for j in 0..n {
                row.push(-(dg.d[i] as i64) * dg.a[i][j]);
            }
            kweight.push(row);
        }
        let alg = FreeAlgebra::new(letters, k_names, kweight);

        let mut rules: Vec<Rule> = Vec::new();
        // E_i F_j -> F_j E_i (+ Cartan term when i = j).
        for i in 0..n {
            for j in 0..n {
                let mut rhs = NcPoly::word(&[(n + j) as Letter, i as Letter]);
                if i == j {
                    let d = dg.d[i] as i64;
                    let c = RationalFn::new(
                        LaurentPoly::one(),
                        &LaurentPoly::t_pow(2 * d) - &LaurentPoly::t_pow(-2 * d),
                    );
                    let cartan = NcPoly::k_pow(i, 2)
                        .sub_ref(&NcPoly::k_pow(i, -2))
                        .scale(&c);
                    rhs = rhs.add_ref(&cartan);
                }
                rules.push(Rule::new(
                    alloc::vec![i as Letter, (n + j) as Letter],
                    rhs,
                    "ef",
                ));
            }
        }
        let n_ef = rules.len();

        let e_of = |i: usize| i as Letter;
        let f_of = |i: usize| (n + i) as Letter;
        let e_base = Self::serre_rules(dg, &e_of, "serre-e");
        let f_base = Self::serre_rules(dg, &f_of, "serre-f");
        let n_base = n_ef + e_base.len() + f_base.len();

        let e_done = complete_bounded(&alg, e_base, completion_len);
        let f_done = complete_bounded(&alg, f_base, completion_len);
        rules.extend(e_done);
        rules.extend(f_done);

        Uq {
            dg: dg.clone(),
            alg,
            n_derived: rules.len() - n_base,
            rules,
            completion_len,
        }
    }

    /// The Serre element `sum_r (-1)^r [N; r]_{q_x} X^{N-r} Y X^r` with
    /// `N = 1 - a_xy`, in the alphabet selected by `letter`.
    pub fn serre_relation(
        dg: &AffineDiagram,
        letter: &dyn Fn(usize) -> Letter,
        x: usize,
        y: usize,
    ) -> NcPoly {
        let nn = (1 - dg.a[x][y]) as u32;
        let mut el = NcPoly::zero();
        for r in 0..=nn {
            let mut w: Word = Vec::with_capacity(nn as usize + 1);
            for _ in 0..nn - r {
                w.push(letter(x));
            }
            w.push(letter(y));
            for _ in 0..r {
                w.push(letter(x));
            }
            let mut c = RationalFn::from_poly(qbinom(nn, r, dg.d[x]));
            if r % 2 == 1 {
                c = c.neg_ref();
            }
            el = el.add_ref(&NcPoly::monomial(NcMono::word(w), c));
        }
        el
    }

    fn serre_rules(
        dg: &AffineDiagram,
        letter: &dyn Fn(usize) -> Letter,
        tag: &str,
    ) -> Vec<Rule> {
        let mut out = Vec::new();
        for x in 0..dg.n_nodes {
            for y in 0..dg.n_nodes {
                if x == y {
                    continue;
                }
                if dg.a[x][y] == 0 && x > y {
                    // The two commutation relations of an unlinked pair
                    // coincide; keep one.
                    continue;
                }
                let el = Self::serre_relation(dg, letter, x, y);
                out.push(crate::freealg::orient(&el, tag));
            }
        }
        out
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn reduce(&self, el: &NcPoly, trace: &mut Trace) -> NcPoly {
        crate::freealg::reduce(&self.alg, el, &self.rules, trace)
    }

    pub fn normal_form(&self, el: &NcPoly) -> NcPoly {
        normal_form(&self.alg, el, &self.rules)
    }

    /// Joinability of all critical pairs with overlap words up to
    /// `max_len`, over the full mixed rule set.
    pub fn overlap_report(&self, max_len: usize) -> OverlapReport {
        overlap_check(&self.alg, &self.rules, max_len)
    }
}

/// Word-level normal forms with memoization. The per-word strategy (always
/// the leftmost redex, longest pattern, lowest rule index) is deterministic;
/// on sectors where the rule set is confluent it agrees with any other
/// strategy, and a reduction to zero is sound unconditionally.
pub struct Reducer<'a> {
    uq: &'a Uq,
    cache: BTreeMap<Word, NcPoly>,
    pub trace: Trace,
}

impl<'a> Reducer<'a> {
    pub fn new(uq: &'a Uq) -> Self {
        Reducer { uq, cache: BTreeMap::new(), trace: Trace::default() }
    }

    fn find_redex(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            let mut best: Option<(usize, usize)> = None;
            for (ri, r) in self.uq.rules.iter().enumerate() {
                let n = r.lhs.len();
                if pos + n <= w.len() && w[pos..pos + n] == r.lhs[..] {
                    let better = match best {
                        None => true,
                        Some((bi, bl)) => n > bl || (n == bl && ri < bi),
                    };
                    if better {
                        best = Some((ri, n));
                    }
                }
            }
            if let Some((ri, _)) = best {
                return Some((pos, ri));
            }
        }
        None
    }

    fn nf_word(&mut self, w: &Word) -> NcPoly {
        if let Some(hit) = self.cache.get(w) {
            return hit.clone();
        }
        let Some((pos, ri)) = self.find_redex(w) else {
            let out = NcPoly::word(w);
            self.cache.insert(w.clone(), out.clone());
            return out;
        };
        let rule = &self.uq.rules[ri];
        let prefix = NcPoly::word(&w[..pos]);
        let suffix = NcPoly::word(&w[pos + rule.lhs.len()..]);
        let stepped = self.uq.alg.mul3(&prefix, &rule.rhs, &suffix);
        self.trace.steps += 1;
        // Each summand's word is strictly below w, so recursion terminates.
        let mut out = NcPoly::zero();
        for (m, c) in stepped.terms() {
            let sub = self.nf_word(&m.w);
            let shifted = self
                .uq
                .alg
                .mul(&NcPoly::monomial(NcMono { k: m.k.clone(), w: Vec::new() }, c.clone()), &sub);
            out = out.add_ref(&shifted);
        }
        self.trace.max_terms = self.trace.max_terms.max(out.num_terms());
        self.cache.insert(w.clone(), out.clone());
        out
    }

    pub fn nf(&mut self, el: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m, c) in el.terms() {
            let sub = self.nf_word(&m.w);
            let shifted = self
                .uq
                .alg
                .mul(&NcPoly::monomial(NcMono { k: m.k.clone(), w: Vec::new() }, c.clone()), &sub);
            out = out.add_ref(&shifted);
        }
        self.trace.max_terms = self.trace.max_terms.max(out.num_terms());
        out
    }
}
