//! Independent two-dimensional oracle for the rank-one diagram.
//!
//! The evaluation representation sends the node-1 raising generator to the
//! elementary matrix `E_12`, the lowering one to `E_21`, the torus element
//! to `diag(t, 1/t)`, and the node-0 generators to the node-1 images
//! twisted by a spectral parameter `z`. All entries live in the exact
//! rational-function field in `t`, `z`, and the boundary weights, so every
//! check here is literal equality of matrices. None of it touches the
//! rewrite engine, which is the point: the engine's rank-one answers are
//! confirmed against plain matrix arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::AffineDiagram;
use crate::coeff::{LaurentPoly, RationalFn};
use crate::freealg::{NcMono, NcPoly};
use crate::homver::Realization;
use crate::onsager::Oq;
use crate::uqreduce::{relation_word_bound, Uq};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat2(pub [[RationalFn; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([
            [RationalFn::zero(), RationalFn::zero()],
            [RationalFn::zero(), RationalFn::zero()],
        ])
    }

    pub fn diag(a: RationalFn, b: RationalFn) -> Self {
        let mut m = Mat2::zero();
        m.0[0][0] = a;
        m.0[1][1] = b;
        m
    }

    pub fn identity() -> Self {
        Mat2::diag(RationalFn::one(), RationalFn::one())
    }

    pub fn entry(r: usize, c: usize, v: RationalFn) -> Self {
        let mut m = Mat2::zero();
        m.0[r][c] = v;
        m
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                m.0[r][c] = self.0[r][c].add_ref(&o.0[r][c]);
            }
        }
        m
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = RationalFn::zero();
                for k in 0..2 {
                    acc = acc.add_ref(&self.0[r][k].mul_ref(&o.0[k][c]));
                }
                m.0[r][c] = acc;
            }
        }
        m
    }

    pub fn scale(&self, c: &RationalFn) -> Mat2 {
        let mut m = Mat2::zero();
        for r in 0..2 {
            for k in 0..2 {
                m.0[r][k] = self.0[r][k].mul_ref(c);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(RationalFn::is_zero)
    }
}

/// Letter and torus images of the rank-one system, node 0 carrying the
/// spectral twist `z`.
pub struct EvalRep {
    letter_mats: Vec<Mat2>,
}

impl EvalRep {
    /// `real` must belong to the rank-one diagram; `z` is interned into its
    /// symbol table.
    pub fn new(uq: &Uq, real: &mut Realization) -> EvalRep {
        assert_eq!(uq.dg.n_nodes, 2, "two-dimensional oracle is rank-one only");
        let z = RationalFn::sym(real.st.intern("z"));
        let mut letter_mats = vec![Mat2::zero(); 4];
        letter_mats[uq.e(1) as usize] = Mat2::entry(0, 1, RationalFn::one());
        letter_mats[uq.f(1) as usize] = Mat2::entry(1, 0, RationalFn::one());
        letter_mats[uq.e(0) as usize] = Mat2::entry(1, 0, z.clone());
        letter_mats[uq.f(0) as usize] = Mat2::entry(0, 1, z.inverse());
        EvalRep { letter_mats }
    }

    /// `K_0^{k_0} K_1^{k_1} = diag(t^{k_1 - k_0}, t^{k_0 - k_1})`.
    pub fn eval_mono(&self, m: &NcMono) -> Mat2 {
        let e = m.k_exp(1) as i64 - m.k_exp(0) as i64;
        let mut acc = Mat2::diag(RationalFn::t_pow(e), RationalFn::t_pow(-e));
        for &l in &m.w {
            acc = acc.mul(&self.letter_mats[l as usize]);
        }
        acc
    }

    pub fn eval_poly(&self, p: &NcPoly) -> Mat2 {
        let mut acc = Mat2::zero();
        for (m, c) in p.terms() {
            acc = acc.add(&self.eval_mono(m).scale(c));
        }
        acc
    }
}

/// Every oriented rule holds as a matrix identity.
pub fn check_defining_relations(uq: &Uq, rep: &EvalRep) -> Result<(), String> {
    for rule in uq.rules() {
        let lhs = rep.eval_poly(&NcPoly::word(&rule.lhs));
        let rhs = rep.eval_poly(&rule.rhs);
        if lhs != rhs {
            return Err(format!("rule {} violated in the evaluation matrices", rule.tag));
        }
    }
    Ok(())
}

/// The pair relation, with the given structure-constant values substituted
/// for their symbols, evaluated on the realized generator matrices.
pub fn realized_relation_matrix(
    uq: &Uq,
    oq: &Oq,
    real: &mut Realization,
    rep: &EvalRep,
    rho: &[(crate::coeff::Sym, RationalFn)],
    x: usize,
    y: usize,
) -> Mat2 {
    let amat: Vec<Mat2> = (0..uq.dg.n_nodes)
        .map(|i| rep.eval_poly(&real.a_image(uq, i)))
        .collect();
    let rel = oq.relation(&mut real.st, x, y);
    let mut acc = Mat2::zero();
    for (m, c) in rel.terms() {
        let coeff = rho.iter().fold(c.clone(), |a, (s, v)| a.subst_sym(*s, v));
        let mut word_mat = Mat2::identity();
        for &l in &m.w {
            word_mat = word_mat.mul(&amat[l as usize]);
        }
        acc = acc.add(&word_mat.scale(&coeff));
    }
    acc
}

/// Full engine-independent oracle: gate the defining relations, then check
/// both directions of the rank-one relation with the closed-form structure
/// constant `c_i cbar_i (q + q^-1)^2` built here from scratch.
pub fn matrix_oracle_sl2() -> Result<(), String> {
    let dg = AffineDiagram::from_id("a1^1").expect("rank-one diagram exists");
    let uq = Uq::new(&dg, relation_word_bound(&dg));
    let oq = Oq::new(&dg);
    let mut real = Realization::new(&dg);
    let rep = EvalRep::new(&uq, &mut real);
    check_defining_relations(&uq, &rep)?;
    let qq2 = RationalFn::from_poly(
        (&LaurentPoly::t_pow(2) + &LaurentPoly::t_pow(-2)).pow(2),
    );
    for (x, y) in [(0usize, 1usize), (1, 0)] {
        // Building the relation interns the structure-constant symbol.
        let _ = oq.relation(&mut real.st, x, y);
        let sym = real
            .st
            .lookup(&crate::onsager::rho_name(0, x, y))
            .expect("relation interned its structure constant");
        let val = RationalFn::sym(real.c[x])
            .mul_ref(&RationalFn::sym(real.cbar[x]))
            .mul_ref(&qq2);
        let m = realized_relation_matrix(&uq, &oq, &mut real, &rep, &[(sym, val)], x, y);
        if !m.is_zero() {
            return Err(format!("realized relation ({x},{y}) is nonzero in matrices"));
        }
    }
    Ok(())
}
