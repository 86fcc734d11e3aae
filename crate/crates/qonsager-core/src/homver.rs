//! Verification that the boundary realization embeds the deformed algebra
//! into the quantized enveloping algebra, pair by pair.
//!
//! The realization sends the generator of node `i` to
//!
//! ```text
//!   A_i  |->  c_i E_i K_i + cbar_i F_i K_i + w_i K_i^2
//! ```
//!
//! with free parameters `c_i`, `cbar_i` (couplings, assumed nonzero) and
//! `w_i` (boundary fields). For an ordered pair `(x, y)` the image of the
//! defining relation is reduced to normal form; the result is linear in the
//! structure constants `rho^k_xy`, which are solved from the two highest
//! pure-`E` pivot equations (their solutions are independent of the `w`).
//! After back-substitution every remaining nonzero coefficient must vanish
//! for the map to be a homomorphism; each one factors into the boundary
//! constraint atoms
//!
//! * `w_x`,
//! * `(q_x + q_x^-1 - 2) w_x^2 + c_x cbar_x`,
//! * `(q_x + q_x^-1 - 2) w_x^2 + c_x cbar_x (q_x + q_x^-1 - 1)^2`,
//!
//! possibly times a generic leftover factor. A leftover with no `w`
//! dependence at all cannot be repaired by boundary conditions and is
//! reported as an error rather than a constraint.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cartan::AffineDiagram;
use crate::coeff::{div_exact, LaurentPoly, RationalFn, Sym, SymbolTable};
use crate::freealg::{NcPoly, Trace};
use crate::onsager::{rho_count, Oq};
use crate::uqreduce::{relation_word_bound, Reducer, Uq};

/// Which of the two sign-twin embeddings the images use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// `K_i` and `K_i^2` group factors.
    Standard,
    /// `K_i^-1` and `K_i^-2` group factors.
    Bar,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Standard => "std",
            Variant::Bar => "bar",
        }
    }

    fn sign(self) -> i32 {
        match self {
            Variant::Standard => 1,
            Variant::Bar => -1,
        }
    }
}

/// Boundary parameters of one diagram, with their interned symbols.
#[derive(Clone, Debug)]
pub struct Realization {
    pub st: SymbolTable,
    pub c: Vec<Sym>,
    pub cbar: Vec<Sym>,
    pub w: Vec<Sym>,
    pub variant: Variant,
}

impl Realization {
    pub fn new(dg: &AffineDiagram) -> Self {
        Self::with_variant(dg, Variant::Standard)
    }

    pub fn with_variant(dg: &AffineDiagram, variant: Variant) -> Self {
        let mut st = SymbolTable::new();
        let mut c = Vec::new();
        let mut cbar = Vec::new();
        let mut w = Vec::new();
        for i in 0..dg.n_nodes {
            c.push(st.intern(&format!("c{i}")));
            cbar.push(st.intern(&format!("cbar{i}")));
            w.push(st.intern(&format!("w{i}")));
        }
        Realization { st, c, cbar, w, variant }
    }

    /// The image of `A_i`.
    pub fn a_image(&self, uq: &Uq, i: usize) -> NcPoly {
        let s = self.variant.sign();
        let ek = uq.alg.mul(&uq.e_poly(i), &uq.k_poly(i, s));
        let fk = uq.alg.mul(&uq.f_poly(i), &uq.k_poly(i, s));
        ek.scale(&RationalFn::sym(self.c[i]))
            .add_ref(&fk.scale(&RationalFn::sym(self.cbar[i])))
            .add_ref(&uq.k_poly(i, 2 * s).scale(&RationalFn::sym(self.w[i])))
    }

    /// `q_i + q_i^{-1} + shift` as a polynomial.
    fn qq(&self, dg: &AffineDiagram, i: usize, shift: i64) -> LaurentPoly {
        let d = 2 * dg.d[i] as i64;
        (&LaurentPoly::t_pow(d) + &LaurentPoly::t_pow(-d)).add_ref(&LaurentPoly::int(shift))
    }

    /// Polynomial form of a constraint atom.
    pub fn atom_poly(&self, dg: &AffineDiagram, atom: &Atom) -> LaurentPoly {
        match atom {
            Atom::W(i) => LaurentPoly::sym(self.w[*i]),
            Atom::Root1(i) => {
                let w2 = LaurentPoly::sym(self.w[*i]).pow(2);
                let cc = &LaurentPoly::sym(self.c[*i]) * &LaurentPoly::sym(self.cbar[*i]);
                (&self.qq(dg, *i, -2) * &w2).add_ref(&cc)
            }
            Atom::Root2(i) => {
                let w2 = LaurentPoly::sym(self.w[*i]).pow(2);
                let cc = &LaurentPoly::sym(self.c[*i]) * &LaurentPoly::sym(self.cbar[*i]);
                let m = self.qq(dg, *i, -1).pow(2);
                (&self.qq(dg, *i, -2) * &w2).add_ref(&(&cc * &m))
            }
            Atom::Generic(p) => p.clone(),
        }
    }
}

/// Irreducible factor shapes of a boundary constraint.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Atom {
    /// `w_i`
    W(usize),
    /// `(q_i + q_i^-1 - 2) w_i^2 + c_i cbar_i`
    Root1(usize),
    /// `(q_i + q_i^-1 - 2) w_i^2 + c_i cbar_i (q_i + q_i^-1 - 1)^2`
    Root2(usize),
    /// Anything that is not a product of the named atoms.
    Generic(LaurentPoly),
}

impl Atom {
    pub fn describe(&self, real: &Realization) -> String {
        match self {
            Atom::W(i) => format!("w{i}"),
            Atom::Root1(i) => format!("quad1(w{i})"),
            Atom::Root2(i) => format!("quad2(w{i})"),
            Atom::Generic(p) => p.render(&real.st),
        }
    }
}

/// One boundary constraint: the product of `atoms` must vanish. Atoms are
/// kept as a set (multiplicity does not change the vanishing locus).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Constraint {
    pub atoms: BTreeSet<Atom>,
}

impl Constraint {
    pub fn describe(&self, real: &Realization) -> String {
        let parts: Vec<String> = self.atoms.iter().map(|a| a.describe(real)).collect();
        parts.join(" * ")
    }
}

#[derive(Clone, Debug)]
pub enum VerifyError {
    /// A normal-form coefficient is not affine-linear in the structure
    /// constants (cannot happen for well-formed relations).
    NonlinearRho { monomial: String },
    /// No pivot equation determines `rho^k`.
    NoPivot { k: u32 },
    /// A solved structure constant depends on a boundary field.
    RhoNotBoundaryFree { k: u32, value: String },
    /// A leftover coefficient has no boundary-field dependence, so no
    /// boundary condition can repair the map.
    Inconsistent { monomial: String, value: String },
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VerifyError::NonlinearRho { monomial } => {
                write!(f, "coefficient at {monomial} is nonlinear in rho")
            }
            VerifyError::NoPivot { k } => write!(f, "no pivot equation for rho^{k}"),
            VerifyError::RhoNotBoundaryFree { k, value } => {
                write!(f, "rho^{k} = {value} depends on a boundary field")
            }
            VerifyError::Inconsistent { monomial, value } => {
                write!(f, "unremovable defect {value} at {monomial}")
            }
        }
    }
}

/// Outcome for one ordered pair.
#[derive(Clone, Debug)]
pub struct PairVerification {
    pub x: usize,
    pub y: usize,
    /// Solved structure constants, index `k`, with their symbols.
    pub rho: Vec<(Sym, RationalFn)>,
    /// Normalized boundary constraints, deduplicated, in canonical order.
    pub constraints: Vec<Constraint>,
    /// Monomials whose coefficient was nonzero before boundary conditions.
    pub defect_monomials: usize,
    /// Term count of the substituted relation before reduction, counting
    /// every product of realization summands separately.
    pub raw_expansion: u64,
    /// Distinct normal-form monomials examined.
    pub nf_monomials: usize,
    pub trace: Trace,
}

/// Verification of every ordered linked pair of a diagram, sharing one
/// rewrite system and one reduction cache.
pub struct DiagramVerification {
    pub real: Realization,
    pub pairs: Vec<PairVerification>,
}

impl DiagramVerification {
    pub fn pair(&self, x: usize, y: usize) -> Option<&PairVerification> {
        self.pairs.iter().find(|p| p.x == x && p.y == y)
    }
}

/// Substitutes the realization into an element of the deformed algebra.
/// Returns the image and the raw product-term count.
pub fn substitute(uq: &Uq, images: &[NcPoly], el: &NcPoly) -> (NcPoly, u64) {
    let mut out = NcPoly::zero();
    let mut raw: u64 = 0;
    for (m, c) in el.terms() {
        debug_assert!(m.k.is_empty());
        let mut acc = NcPoly::scalar(c.clone());
        let mut count: u64 = 1;
        for &l in &m.w {
            acc = uq.alg.mul(&acc, &images[l as usize]);
            count *= images[l as usize].num_terms() as u64;
        }
        raw += count;
        out = out.add_ref(&acc);
    }
    (out, raw)
}

fn is_pure_e(uq: &Uq, w: &[u16]) -> bool {
    w.iter().all(|&l| (l as usize) < uq.dg.n_nodes)
}

/// Verifies one ordered pair; see the module docs for the procedure.
pub fn verify_pair(
    uq: &Uq,
    oq: &Oq,
    real: &mut Realization,
    red: &mut Reducer<'_>,
    x: usize,
    y: usize,
) -> Result<PairVerification, VerifyError> {
    let a = uq.dg.a[x][y];
    let nrho = rho_count(a);
    let rel = oq.relation(&mut real.st, x, y);
    let rho_syms: Vec<Sym> = (0..nrho)
        .map(|k| real.st.lookup(&crate::onsager::rho_name(k, x, y)).unwrap())
        .collect();

    let images: Vec<NcPoly> = (0..uq.dg.n_nodes).map(|i| real.a_image(uq, i)).collect();
    let (img, raw_expansion) = substitute(uq, &images, &rel);
    let steps_before = red.trace.steps;
    let nf = red.nf(&img);
    let trace = Trace {
        steps: red.trace.steps - steps_before,
        max_terms: red.trace.max_terms,
    };

    // Split each coefficient as alpha + sum_k beta_k rho_k and check the
    // split reproduces it exactly.
    let zero_all = |v: &RationalFn| -> RationalFn {
        let mut out = v.clone();
        for s in &rho_syms {
            out = out.subst_sym(*s, &RationalFn::zero());
        }
        out
    };
    struct Eq {
        mono: crate::freealg::NcMono,
        alpha: RationalFn,
        beta: Vec<RationalFn>,
    }
    let mut eqs: Vec<Eq> = Vec::new();
    for (m, v) in nf.terms() {
        let alpha = zero_all(v);
        let mut beta = Vec::with_capacity(nrho as usize);
        for k in 0..nrho as usize {
            let mut vk = v.clone();
            for (j, s) in rho_syms.iter().enumerate() {
                let val = if j == k { RationalFn::one() } else { RationalFn::zero() };
                vk = vk.subst_sym(*s, &val);
            }
            beta.push(vk.sub_ref(&alpha));
        }
        let mut rebuilt = alpha.clone();
        for (k, b) in beta.iter().enumerate() {
            rebuilt = rebuilt.add_ref(&b.mul_ref(&RationalFn::sym(rho_syms[k])));
        }
        if &rebuilt != v {
            return Err(VerifyError::NonlinearRho {
                monomial: uq.alg.render_mono(m),
            });
        }
        eqs.push(Eq { mono: m.clone(), alpha, beta });
    }
    // Descending monomial order; nf iterates ascending.
    eqs.reverse();

    // Solve rho^0, then rho^1, each from the greatest equation that sees it.
    let mut solved: Vec<RationalFn> = Vec::new();
    for k in 0..nrho as usize {
        let pivot = eqs.iter().find(|e| !e.beta[k].is_zero()).ok_or(VerifyError::NoPivot {
            k: k as u32,
        })?;
        debug_assert!(is_pure_e(uq, &pivot.mono.w), "pivot word must be pure raising");
        for (j, b) in pivot.beta.iter().enumerate() {
            if j > k {
                assert!(
                    b.is_zero(),
                    "pivot for rho^{k} couples to rho^{j}; degree argument violated"
                );
            }
        }
        let mut alpha = pivot.alpha.clone();
        for (j, r) in solved.iter().enumerate() {
            alpha = alpha.add_ref(&pivot.beta[j].mul_ref(r));
        }
        let val = alpha.mul_ref(&pivot.beta[k].inverse()).neg_ref();
        for wi in &real.w {
            if val.contains_sym(*wi) {
                return Err(VerifyError::RhoNotBoundaryFree {
                    k: k as u32,
                    value: val.render(&real.st),
                });
            }
        }
        solved.push(val);
    }

    // Back-substitute and normalize the leftovers.
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut defect_monomials = 0usize;
    for e in &eqs {
        let mut v = e.alpha.clone();
        for (k, r) in solved.iter().enumerate() {
            v = v.add_ref(&e.beta[k].mul_ref(r));
        }
        if v.is_zero() {
            continue;
        }
        defect_monomials += 1;
        let has_w = real.w.iter().any(|wi| v.contains_sym(*wi));
        if !has_w {
            return Err(VerifyError::Inconsistent {
                monomial: uq.alg.render_mono(&e.mono),
                value: v.render(&real.st),
            });
        }
        // Denominators collect only base-ring scalars, so the vanishing
        // locus is carried by the numerator.
        debug_assert!(v.den().terms().all(|(m, _)| m.is_t_only()));
        let c = normalize_constraint(&uq.dg, real, v.num(), &[x, y]);
        if !constraints.contains(&c) {
            constraints.push(c);
        }
    }
    constraints.sort();

    Ok(PairVerification {
        x,
        y,
        rho: rho_syms.into_iter().zip(solved).collect(),
        constraints,
        defect_monomials,
        raw_expansion,
        nf_monomials: eqs.len(),
        trace,
    })
}

/// Factors a leftover numerator into constraint atoms: strips the monomial
/// content (keeping `w` factors as atoms, dropping `t`/coupling units),
/// then divides out the quadratic atoms of the two involved nodes, and
/// wraps whatever remains as a generic factor. Two polynomials generate the
/// same ideal up to units exactly when they normalize to the same atom set,
/// which is what makes this the mutual-implication checker.
pub fn normalize_constraint(
    dg: &AffineDiagram,
    real: &Realization,
    num: &LaurentPoly,
    nodes: &[usize],
) -> Constraint {
    let mut atoms: BTreeSet<Atom> = BTreeSet::new();
    debug_assert!(!num.is_zero());
    // Monomial content.
    let mut content: Option<crate::coeff::Mono> = None;
    for (m, _) in num.terms() {
        content = Some(match content {
            None => m.clone(),
            Some(c) => {
                let n = c.p.len().min(m.p.len());
                let mut p: Vec<u32> = (0..n).map(|i| c.p[i].min(m.p[i])).collect();
                while p.last() == Some(&0) {
                    p.pop();
                }
                crate::coeff::Mono { t: c.t.min(m.t), p }
            }
        });
    }
    let content = content.unwrap();
    for &i in nodes {
        if content.exp(real.w[i]) > 0 {
            atoms.insert(Atom::W(i));
        }
    }
    let mut rest = LaurentPoly::zero();
    for (m, c) in num.terms() {
        rest = rest.add_ref(&LaurentPoly::monomial(m.div(&content).unwrap(), c.clone()));
    }
    for &i in nodes {
        for atom in [Atom::Root1(i), Atom::Root2(i)] {
            let p = real.atom_poly(dg, &atom);
            while let Some(q) = div_exact(&rest, &p) {
                rest = q;
                atoms.insert(atom.clone());
            }
        }
    }
    let rest = crate::coeff::make_primitive(&rest);
    // A factor in t alone is nonzero at generic deformation parameter and
    // imposes nothing on the boundary data.
    if !rest.is_one() && !rest.syms().is_empty() {
        atoms.insert(Atom::Generic(rest));
    }
    Constraint { atoms }
}

/// Verifies both directions of every linked pair.
pub fn verify_diagram(dg: &AffineDiagram) -> Result<DiagramVerification, VerifyError> {
    verify_diagram_variant(dg, Variant::Standard)
}

/// As [`verify_diagram`], with the embedding variant chosen by the caller.
pub fn verify_diagram_variant(
    dg: &AffineDiagram,
    variant: Variant,
) -> Result<DiagramVerification, VerifyError> {
    let uq = Uq::new(dg, relation_word_bound(dg));
    let oq = Oq::new(dg);
    let mut real = Realization::with_variant(dg, variant);
    let mut red = Reducer::new(&uq);
    let mut pairs = Vec::new();
    for (i, j) in dg.linked_pairs() {
        pairs.push(verify_pair(&uq, &oq, &mut real, &mut red, i, j)?);
        pairs.push(verify_pair(&uq, &oq, &mut real, &mut red, j, i)?);
    }
    Ok(DiagramVerification { real, pairs })
}

/// True when two runs of the same ordered pair solved identical structure
/// constants and produced the same normalized constraint set. Unit factors
/// never appear in the comparison: atoms are already normalized shapes.
pub fn check_bar_symmetry(r1: &PairVerification, r2: &PairVerification) -> bool {
    if r1.x != r2.x || r1.y != r2.y || r1.rho.len() != r2.rho.len() {
        return false;
    }
    let rho_eq = r1
        .rho
        .iter()
        .zip(r2.rho.iter())
        .all(|((s1, v1), (s2, v2))| s1 == s2 && v1 == v2);
    let set1: BTreeSet<&Constraint> = r1.constraints.iter().collect();
    let set2: BTreeSet<&Constraint> = r2.constraints.iter().collect();
    rho_eq && set1 == set2
}
