//! Defining relations of the generalized q-Onsager algebra of an affine
//! diagram.
//!
//! One generator `A_i` per node. For each ordered pair `(x, y)` with Cartan
//! entry `a = a_xy` the defining relation is
//!
//! ```text
//!   sum_{r=0}^{1-a} (-1)^r [1-a; r]_{q_x} A_x^{1-a-r} A_y A_x^r
//!     = sum_{k=0}^{ceil(-a/2)-1} rho^k_xy
//!         sum_{l=0}^{-2k-a-1} (-1)^l gamma^{kl}_xy A_x^{-2k-a-1-l} A_y A_x^l
//! ```
//!
//! with `q_x = t^{2 d_x}`. The left side is the q-Serre shape; the right
//! side is the inhomogeneous deformation, with one free structure constant
//! `rho^k_xy` per `k` and fixed coefficients `gamma^{kl}_xy` depending only
//! on the bond. For an unlinked pair both sums degenerate to the plain
//! commutator `[A_x, A_y] = 0`.
//!
//! A pair whose symmetrizer entries share a factor `g > 1` is the minimal
//! bond of the same shape in the coarser variable `t^g`; the gamma table is
//! stated for minimal bonds and gets `t -> t^g` applied. Every gamma is
//! invariant under `t -> t^{-1}`, which is asserted at construction.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cartan::AffineDiagram;
use crate::coeff::{qbinom, qnum, LaurentPoly, RationalFn, Sym, SymbolTable};
use crate::freealg::{orient, FreeAlgebra, Letter, NcMono, NcPoly, Rule, Word};

/// Number of `rho` constants of the `(x, y)` relation: `ceil(-a_xy / 2)`.
pub fn rho_count(a_xy: i64) -> u32 {
    debug_assert!((-4..=0).contains(&a_xy));
    ((-a_xy + 1) / 2) as u32
}

pub fn rho_name(k: u32, x: usize, y: usize) -> String {
    format!("rho{k}_{x}{y}")
}

/// The coefficient `gamma^{kl}` of the relation with Cartan entries
/// `(a_xy, a_yx)`, for the minimal bond; `scale` applies `t -> t^scale`.
/// Panics if `(k, l)` is outside the sum range.
pub fn gamma(a_xy: i64, a_yx: i64, k: u32, l: u32, scale: u32) -> RationalFn {
    assert!(scale >= 1);
    assert!(k < rho_count(a_xy), "k out of range");
    assert!((l as i64) <= -2 * (k as i64) - a_xy - 1, "l out of range");
    let one = RationalFn::one();
    let val = match (a_xy, a_yx) {
        // Everything q-independent is 1.
        (-1, -1) | (-2, -2) | (-1, -2) | (-1, -3) | (-1, -4) => one,
        (-2, -1) => one,
        (-3, -1) => match (k, l) {
            (0, 1) => {
                // (q + q^-1)(q^2 + q^-2)(q^2 + 3 + q^-2)
                //   / (q^4 + 2 q^2 + 4 + 2 q^-2 + q^-4),  q = t^2
                let q = |e: i64| LaurentPoly::t_pow(2 * e);
                let num = qnum(2, 1)
                    .mul_ref(&(&q(2) + &q(-2)))
                    .mul_ref(&(&(&q(2) + &q(-2)) + &LaurentPoly::int(3)));
                let den = [&q(4), &q(2), &q(-2), &q(-4)]
                    .iter()
                    .fold(LaurentPoly::int(4), |acc, p| acc.add_ref(p))
                    .add_ref(&q(2))
                    .add_ref(&q(-2));
                RationalFn::new(num, den)
            }
            _ => one,
        },
        (-4, -1) => match (k, l) {
            (0, 1) | (0, 2) => {
                // [3]_q [5]_q / (q^4 + 3 + q^-4), q = t^2
                let num = qnum(3, 1).mul_ref(&qnum(5, 1));
                let den = &(&LaurentPoly::t_pow(8) + &LaurentPoly::t_pow(-8))
                    + &LaurentPoly::int(3);
                RationalFn::new(num, den)
            }
            _ => one,
        },
        _ => panic!("no bond with Cartan entries ({a_xy}, {a_yx})"),
    };
    let scaled = if scale == 1 { val } else { val.subst_t_pow(scale as i64) };
    debug_assert_eq!(scaled.bar(), scaled, "gamma must be bar-invariant");
    scaled
}

/// Generators and relations of one algebra.
pub struct Oq {
    pub dg: AffineDiagram,
    pub alg: FreeAlgebra,
}

impl Oq {
    pub fn new(dg: &AffineDiagram) -> Oq {
        let letters: Vec<String> = (0..dg.n_nodes).map(|i| format!("A{i}")).collect();
        Oq { dg: dg.clone(), alg: FreeAlgebra::plain(letters) }
    }

    pub fn a(&self, i: usize) -> Letter {
        debug_assert!(i < self.dg.n_nodes);
        i as Letter
    }

    pub fn rho_sym(&self, st: &mut SymbolTable, k: u32, x: usize, y: usize) -> Sym {
        st.intern(&rho_name(k, x, y))
    }

    /// `A_x^{p} A_y A_x^{r}` as a word.
    fn sandwich(&self, x: usize, y: usize, p: u32, r: u32) -> Word {
        let mut w = Word::with_capacity((p + r + 1) as usize);
        for _ in 0..p {
            w.push(self.a(x));
        }
        w.push(self.a(y));
        for _ in 0..r {
            w.push(self.a(x));
        }
        w
    }

    /// Homogeneous side of the `(x, y)` relation.
    pub fn lhs(&self, x: usize, y: usize) -> NcPoly {
        let a = self.dg.a[x][y];
        let nn = (1 - a) as u32;
        let mut el = NcPoly::zero();
        for r in 0..=nn {
            let mut c = RationalFn::from_poly(qbinom(nn, r, self.dg.d[x]));
            if r % 2 == 1 {
                c = c.neg_ref();
            }
            el = el.add_ref(&NcPoly::monomial(
                NcMono::word(self.sandwich(x, y, nn - r, r)),
                c,
            ));
        }
        el
    }

    /// Inhomogeneous side, with symbolic `rho^k_xy`.
    pub fn rhs(&self, st: &mut SymbolTable, x: usize, y: usize) -> NcPoly {
        let a = self.dg.a[x][y];
        let ayx = self.dg.a[y][x];
        let g = self.dg.bond_scale(x, y);
        let mut el = NcPoly::zero();
        for k in 0..rho_count(a) {
            let rho = RationalFn::sym(self.rho_sym(st, k, x, y));
            let lmax = (-2 * (k as i64) - a - 1) as u32;
            for l in 0..=lmax {
                let mut c = rho.mul_ref(&gamma(a, ayx, k, l, g));
                if l % 2 == 1 {
                    c = c.neg_ref();
                }
                el = el.add_ref(&NcPoly::monomial(
                    NcMono::word(self.sandwich(x, y, lmax - l, l)),
                    c,
                ));
            }
        }
        el
    }

    /// `lhs - rhs`; zero in the algebra.
    pub fn relation(&self, st: &mut SymbolTable, x: usize, y: usize) -> NcPoly {
        self.lhs(x, y).sub_ref(&self.rhs(st, x, y))
    }

    /// Rewrite rules: both relations of every linked pair plus one
    /// commutation rule per unlinked pair, each oriented at its greatest
    /// word. `subst` lets the caller replace the symbolic `rho` by solved
    /// values first. Sound for reduction-to-zero regardless of confluence.
    pub fn rules<F>(&self, st: &mut SymbolTable, subst: F) -> Vec<Rule>
    where
        F: Fn(&RationalFn) -> RationalFn,
    {
        let mut out = Vec::new();
        for x in 0..self.dg.n_nodes {
            for y in 0..self.dg.n_nodes {
                if x == y || (self.dg.a[x][y] == 0 && x > y) {
                    continue;
                }
                let rel = self.relation(st, x, y).map_coeffs(&subst);
                out.push(orient(&rel, "oq"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::AffineDiagram;

    #[test]
    fn rho_counts() {
        assert_eq!(rho_count(0), 0);
        assert_eq!(rho_count(-1), 1);
        assert_eq!(rho_count(-2), 1);
        assert_eq!(rho_count(-3), 2);
        assert_eq!(rho_count(-4), 2);
    }

    #[test]
    fn rank_one_relation_shape() {
        // a1^1: A0^3 A1 - [3] A0^2 A1 A0 + [3] A0 A1 A0^2 - A1 A0^3
        //         = rho (A0 A1 - A1 A0).
        let dg = AffineDiagram::from_id("a1^1").unwrap();
        let oq = Oq::new(&dg);
        let mut st = SymbolTable::new();
        let rel = oq.relation(&mut st, 0, 1);
        let rho = RationalFn::sym(st.lookup("rho0_01").unwrap());
        let three = RationalFn::from_poly(qnum(3, 1));
        let w = |v: &[Letter]| NcPoly::word(v);
        let expect = w(&[0, 0, 0, 1])
            .sub_ref(&w(&[0, 0, 1, 0]).scale(&three))
            .add_ref(&w(&[0, 1, 0, 0]).scale(&three))
            .sub_ref(&w(&[1, 0, 0, 0]))
            .sub_ref(&w(&[0, 1]).scale(&rho))
            .add_ref(&w(&[1, 0]).scale(&rho));
        assert_eq!(rel, expect);
    }

    #[test]
    fn unlinked_pair_commutes() {
        let dg = AffineDiagram::from_id("c2^1").unwrap();
        let oq = Oq::new(&dg);
        let mut st = SymbolTable::new();
        assert_eq!(dg.a[0][2], 0);
        let rel = oq.relation(&mut st, 0, 2);
        let expect = NcPoly::word(&[0, 2]).sub_ref(&NcPoly::word(&[2, 0]));
        assert_eq!(rel, expect);
        assert_eq!(st.len(), 0);
    }

    #[test]
    fn gamma_values_frozen() {
        let st = SymbolTable::new();
        // Triple bond, short-node direction, the single q-dependent entry;
        // value: (q^5 + 4q^3 + 5q + 5q^-1 + 4q^-3 + q^-5)
        //          / (q^4 + 2q^2 + 4 + 2q^-2 + q^-4) at q = t^2, here in the
        // canonical form with the denominator starting at t^0.
        let g01 = gamma(-3, -1, 0, 1, 1);
        assert_eq!(
            g01.render(&st),
            "(t^-2 + 4*t^2 + 5*t^6 + 5*t^10 + 4*t^14 + t^18)/(1 + 2*t^4 + 4*t^8 + 2*t^12 + t^16)"
        );
        // Quadruple bond: [3][5]/(q^4 + 3 + q^-4).
        let g02 = gamma(-4, -1, 0, 2, 1);
        assert_eq!(gamma(-4, -1, 0, 1, 1), g02);
        assert_eq!(
            g02.render(&st),
            "(t^-4 + 2 + 3*t^4 + 3*t^8 + 3*t^12 + 2*t^16 + t^20)/(1 + 3*t^8 + t^16)"
        );
        // Everything else in the tables is 1.
        for (axy, ayx, k, l) in [
            (-1i64, -1i64, 0u32, 0u32),
            (-2, -2, 0, 1),
            (-2, -1, 0, 0),
            (-2, -1, 0, 1),
            (-1, -2, 0, 0),
            (-3, -1, 0, 0),
            (-3, -1, 0, 2),
            (-3, -1, 1, 0),
            (-4, -1, 0, 0),
            (-4, -1, 0, 3),
            (-4, -1, 1, 0),
            (-4, -1, 1, 1),
        ] {
            assert!(gamma(axy, ayx, k, l, 1).is_one(), "({axy},{ayx},{k},{l})");
        }
    }

    #[test]
    fn gamma_scaling_changes_variable() {
        let g1 = gamma(-3, -1, 0, 1, 1);
        let g2 = gamma(-3, -1, 0, 1, 2);
        assert_eq!(g1.subst_t_pow(2), g2);
        assert_eq!(g2.bar(), g2);
    }

    #[test]
    fn relation_term_counts() {
        // Words on each side: 2 - a on the left, sum over k of (-2k - a)
        // on the right.
        let dg = AffineDiagram::from_id("a2^2").unwrap();
        let oq = Oq::new(&dg);
        let mut st = SymbolTable::new();
        // Direction with a = -4.
        assert_eq!(dg.a[1][0], -4);
        assert_eq!(oq.lhs(1, 0).num_terms(), 6);
        assert_eq!(oq.rhs(&mut st, 1, 0).num_terms(), 6);
        // Direction with a = -1.
        assert_eq!(oq.lhs(0, 1).num_terms(), 3);
        assert_eq!(oq.rhs(&mut st, 0, 1).num_terms(), 1);
    }

    #[test]
    fn rules_reduce_own_relations_to_zero() {
        let dg = AffineDiagram::from_id("c2^1").unwrap();
        let oq = Oq::new(&dg);
        let mut st = SymbolTable::new();
        let rules = oq.rules(&mut st, |c| c.clone());
        for (x, y) in [(0usize, 1usize), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)] {
            let rel = oq.relation(&mut st, x, y);
            let nf = crate::freealg::normal_form(&oq.alg, &rel, &rules);
            assert!(nf.is_zero(), "({x},{y})");
        }
    }
}
