//! Exact coefficient arithmetic.
//!
//! The coefficient domain for the whole crate is the field of rational
//! functions in one Laurent variable `t` and a registered set of commuting
//! parameter symbols (coupling constants, boundary fields, structure
//! constants). Working in `t = q^{1/2}` keeps every half-integer power of
//! `q_i = q^{d_i}` at an integer `t`-exponent, so no fractional exponents ever
//! arise: `q_i = t^{2 d_i}` and `q_i^{1/2} = t^{d_i}`.
//!
//! Canonical forms, stated once and relied on by every renderer and golden
//! test downstream:
//!
//! * a [`LaurentPoly`] maps monomials to nonzero rationals; monomials sort by
//!   `t`-exponent ascending, then parameter exponents lexicographically in
//!   symbol registration order;
//! * parameter exponents are nonnegative (only `t` is Laurent);
//! * a [`RationalFn`] is fully reduced (numerator and denominator coprime)
//!   with the denominator normalized to minimum `t`-exponent 0 and leading
//!   coefficient 1, so equal values have identical representations and the
//!   zero test is structural.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational scalar.
pub type Q = BigRational;

/// Interned parameter symbol. The index is the registration order, which
/// fixes the canonical monomial ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Sym(pub u32);

/// Registry of parameter symbols for one session. Symbols are registered
/// once, in a deterministic order, before any polynomial that uses them is
/// built; the order is part of the canonical form.
#[derive(Clone, Default, Debug)]
pub struct SymbolTable {
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `name`, or returns the existing symbol if already present.
    pub fn intern(&mut self, name: &str) -> Sym {
        if let Some(s) = self.lookup(name) {
            return s;
        }
        self.names.push(name.to_string());
        Sym((self.names.len() - 1) as u32)
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.names.iter().position(|n| n == name).map(|i| Sym(i as u32))
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Commutative monomial: a `t`-exponent plus parameter exponents indexed by
/// symbol. Trailing zero exponents are trimmed so equal monomials are equal
/// as values.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono {
    pub t: i64,
    pub p: Vec<u32>,
}

impl Mono {
    pub fn unit() -> Self {
        Mono { t: 0, p: Vec::new() }
    }

    pub fn t_pow(t: i64) -> Self {
        Mono { t, p: Vec::new() }
    }

    pub fn sym(s: Sym, e: u32) -> Self {
        let mut p = vec![0; s.0 as usize + 1];
        p[s.0 as usize] = e;
        let mut m = Mono { t: 0, p };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.p.last() == Some(&0) {
            self.p.pop();
        }
    }

    pub fn exp(&self, s: Sym) -> u32 {
        self.p.get(s.0 as usize).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.p.len().max(other.p.len());
        let mut p = Vec::with_capacity(n);
        for i in 0..n {
            p.push(
                self.p.get(i).copied().unwrap_or(0) + other.p.get(i).copied().unwrap_or(0),
            );
        }
        let mut m = Mono { t: self.t + other.t, p };
        m.trim();
        m
    }

    /// Exact monomial division; `None` if a parameter exponent would go
    /// negative. The `t`-exponent may go negative freely.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let n = self.p.len().max(other.p.len());
        let mut p = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.p.get(i).copied().unwrap_or(0);
            let b = other.p.get(i).copied().unwrap_or(0);
            if a < b {
                return None;
            }
            p.push(a - b);
        }
        let mut m = Mono { t: self.t - other.t, p };
        m.trim();
        Some(m)
    }

    pub fn is_unit(&self) -> bool {
        self.t == 0 && self.p.is_empty()
    }

    /// True when no parameter symbol occurs (a pure `t`-power).
    pub fn is_t_only(&self) -> bool {
        self.p.is_empty()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.t.cmp(&other.t) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = self.p.len().max(other.p.len());
        for i in 0..n {
            let a = self.p.get(i).copied().unwrap_or(0);
            let b = other.p.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Multivariate Laurent polynomial over `Q`: Laurent in `t`, ordinary in the
/// parameter symbols. Zero coefficients are never stored. The derived order
/// is arbitrary but total, which lets containers sort on polynomials.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::unit(), c);
        }
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(c)))
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(Mono::t_pow(k), Q::one())
    }

    /// A registered parameter symbol as a polynomial.
    pub fn sym(s: Sym) -> Self {
        Self::monomial(Mono::sym(s, 1), Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when the polynomial is a single monomial (a unit of the Laurent
    /// ring whenever its parameter part is also trivial, but more generally a
    /// pure product of a rational, a `t`-power, and symbol powers).
    pub fn as_monomial(&self) -> Option<(&Mono, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert_add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Substitutes `t -> t^k` (`k` may be negative; `k = -1` is the bar
    /// involution).
    pub fn subst_t_pow(&self, k: i64) -> Self {
        assert!(k != 0, "t -> t^0 is not a ring map on Laurent polynomials");
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.t = m.t * k;
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// Bar involution `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        self.subst_t_pow(-1)
    }

    /// Evaluates at the classical point `t = 1`, merging monomials that
    /// differed only in their `t` power.
    pub fn eval_t_one(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.t = 0;
            out.insert_add(m2, c.clone());
        }
        out
    }

    pub fn min_t_exp(&self) -> i64 {
        self.terms.keys().map(|m| m.t).min().unwrap_or(0)
    }

    pub fn max_t_exp(&self) -> i64 {
        self.terms.keys().map(|m| m.t).max().unwrap_or(0)
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i64) -> Self {
        self.mul_mono(&Mono::t_pow(k))
    }

    pub fn max_exp(&self, s: Sym) -> u32 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    pub fn contains_sym(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    /// Greatest monomial in canonical order with its coefficient.
    pub fn lead(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    /// Replaces a symbol by a polynomial value. Parameter exponents are small
    /// here, so plain power expansion is fine.
    pub fn subst_sym(&self, s: Sym, value: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            let mut rest = m.clone();
            if e > 0 {
                rest.p[s.0 as usize] = 0;
                rest.trim();
            }
            let base = Self::monomial(rest, c.clone());
            let term = if e == 0 { base } else { base.mul_ref(&value.pow(e)) };
            out = out.add_ref(&term);
        }
        out
    }

    /// All symbols occurring with positive exponent.
    pub fn syms(&self) -> Vec<Sym> {
        let mut seen: Vec<bool> = Vec::new();
        for m in self.terms.keys() {
            if m.p.len() > seen.len() {
                seen.resize(m.p.len(), false);
            }
            for (i, e) in m.p.iter().enumerate() {
                if *e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| Sym(i as u32))
            .collect()
    }

    /// Canonical string form; see the module docs for the ordering contract.
    pub fn render(&self, st: &SymbolTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if m.t != 0 {
                if m.t == 1 {
                    factors.push("t".to_string());
                } else {
                    factors.push(alloc::format!("t^{}", m.t));
                }
            }
            for (idx, e) in m.p.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let name = st.name(Sym(idx as u32));
                if *e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(alloc::format!("{}^{}", name, e));
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

// ---------------------------------------------------------------------------
// Exact division and gcd
// ---------------------------------------------------------------------------

/// Exact multivariate division: returns `f / g` when the division leaves no
/// remainder, `None` otherwise. `g` must be nonzero.
pub fn div_exact(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!g.is_zero(), "division by the zero polynomial");
    if f.is_zero() {
        return Some(LaurentPoly::zero());
    }
    if let Some((mg, cg)) = g.as_monomial() {
        let mut out = LaurentPoly::zero();
        for (m, c) in &f.terms {
            out.terms.insert(m.div(mg)?, c / cg);
        }
        return Some(out);
    }
    // Long division by leading terms, after shifting each operand to minimum
    // t-exponent 0. On the shifted ring (t-exponents nonnegative) the
    // canonical order is a monomial order, so the leading term strictly
    // decreases and the loop terminates; an exact quotient of the shifted
    // pair never needs negative exponents, so any failing step means the
    // division is inexact.
    let af = f.min_t_exp();
    let ag = g.min_t_exp();
    let mut r = f.shift_t(-af);
    let g0 = g.shift_t(-ag);
    let (mg, cg) = {
        let (m, c) = g0.lead().unwrap();
        (m.clone(), c.clone())
    };
    let mut q = LaurentPoly::zero();
    while !r.is_zero() {
        let (mr, cr) = {
            let (m, c) = r.lead().unwrap();
            (m.clone(), c.clone())
        };
        let mq = mr.div(&mg)?;
        if mq.t < 0 {
            return None;
        }
        let cq = cr / &cg;
        let qt = LaurentPoly::monomial(mq, cq);
        r = r.sub_ref(&qt.mul_ref(&g0));
        q = q.add_ref(&qt);
    }
    Some(q.shift_t(af - ag))
}

/// Rational content: positive rational `c` such that `f / c` has coprime
/// integer coefficients.
fn content_q(f: &LaurentPoly) -> Q {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in f.terms.values() {
        num_gcd = num_bigint_gcd(&num_gcd, c.numer());
        den_lcm = num_bigint_lcm(&den_lcm, c.denom());
    }
    if num_gcd.is_zero() {
        Q::one()
    } else {
        Q::new(num_gcd, den_lcm)
    }
}

fn num_bigint_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_bigint::BigUint;
    let au: BigUint = a.magnitude().clone();
    let bu: BigUint = b.magnitude().clone();
    let mut x = au;
    let mut y = bu;
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    BigInt::from(x)
}

fn num_bigint_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = num_bigint_gcd(a, b);
    (a / &g * b).abs()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Var {
    T,
    S(Sym),
}

fn vars_of(f: &LaurentPoly) -> Vec<Var> {
    let mut out = Vec::new();
    if f.max_t_exp() != f.min_t_exp() || f.min_t_exp() != 0 {
        out.push(Var::T);
    }
    for s in f.syms() {
        out.push(Var::S(s));
    }
    out
}

fn is_t_only_poly(f: &LaurentPoly) -> bool {
    f.terms.keys().all(|m| m.p.is_empty())
}

/// gcd of the pure-`t` coefficient polynomials obtained by grouping terms on
/// their symbol part.
fn t_content(f: &LaurentPoly) -> LaurentPoly {
    let mut groups: BTreeMap<Vec<u32>, LaurentPoly> = BTreeMap::new();
    for (m, c) in &f.terms {
        groups
            .entry(m.p.clone())
            .or_default()
            .insert_add(Mono::t_pow(m.t), c.clone());
    }
    let mut g = LaurentPoly::zero();
    for p in groups.values() {
        g = gcd_rec(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Largest monomial dividing both `m` and every term of `f`, ignoring the
/// `t`-part (a unit).
fn mono_common(m: &Mono, f: &LaurentPoly) -> Mono {
    let mut p = m.p.clone();
    for fm in f.terms.keys() {
        for (i, e) in p.iter_mut().enumerate() {
            *e = (*e).min(fm.p.get(i).copied().unwrap_or(0));
        }
        if p.iter().all(|&e| e == 0) {
            break;
        }
    }
    let mut g = Mono { t: 0, p };
    g.trim();
    g
}

/// Univariate view: coefficients of `v^k`, ascending in `k`. For `Var::T` the
/// caller guarantees nonnegative `t`-exponents.
fn to_upoly(f: &LaurentPoly, v: Var) -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = Vec::new();
    for (m, c) in &f.terms {
        let (k, rest) = match v {
            Var::T => {
                assert!(m.t >= 0);
                let mut r = m.clone();
                r.t = 0;
                (m.t as usize, r)
            }
            Var::S(s) => {
                let e = m.exp(s);
                let mut r = m.clone();
                if e > 0 {
                    r.p[s.0 as usize] = 0;
                    r.trim();
                }
                (e as usize, r)
            }
        };
        if out.len() <= k {
            out.resize(k + 1, LaurentPoly::zero());
        }
        out[k].insert_add(rest, c.clone());
    }
    while out.last().map(|p| p.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn from_upoly(u: &[LaurentPoly], v: Var) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (k, c) in u.iter().enumerate() {
        let vm = match v {
            Var::T => Mono::t_pow(k as i64),
            Var::S(s) => Mono::sym(s, k as u32),
        };
        out = out.add_ref(&c.mul_mono(&vm));
    }
    out
}

fn upoly_is_zero(u: &[LaurentPoly]) -> bool {
    u.is_empty()
}

/// gcd of all coefficients (recursive multivariate gcd).
fn content_poly(u: &[LaurentPoly]) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in u {
        g = gcd_rec(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn upoly_div_coeffs(u: &[LaurentPoly], d: &LaurentPoly) -> Vec<LaurentPoly> {
    u.iter()
        .map(|c| div_exact(c, d).expect("content division is exact"))
        .collect()
}

/// Divides out the rational content shared by every coefficient. Scalars are
/// units, so this does not change the gcd; without it the pseudo-remainder
/// sequence compounds rational factors exponentially.
fn upoly_strip_q(u: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for p in &u {
        for c in p.terms.values() {
            num_gcd = num_bigint_gcd(&num_gcd, c.numer());
            den_lcm = num_bigint_lcm(&den_lcm, c.denom());
        }
    }
    if num_gcd.is_zero() {
        return u;
    }
    let q = Q::new(num_gcd, den_lcm);
    if q.is_one() {
        return u;
    }
    let inv = q.recip();
    u.into_iter().map(|p| p.mul_q(&inv)).collect()
}

/// Pseudo-remainder of `f` by `g` in the main variable (coefficients are
/// polynomials in the remaining variables). The result is only used up to
/// content, so the exact pseudo-power factor is not tracked.
fn prem(f: &[LaurentPoly], g: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let dg = g.len() - 1;
    let lg = g.last().unwrap().clone();
    let mut r: Vec<LaurentPoly> = f.to_vec();
    while !upoly_is_zero(&r) && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r = lg*r - lr * g * v^{dr-dg}
        for c in r.iter_mut() {
            *c = c.mul_ref(&lg);
        }
        for (k, gc) in g.iter().enumerate() {
            let idx = k + dr - dg;
            let sub = gc.mul_ref(&lr);
            r[idx] = r[idx].sub_ref(&sub);
        }
        while r.last().map(|p| p.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() <= dg && !upoly_is_zero(&r) && r.len() - 1 < dg {
            break;
        }
        if upoly_is_zero(&r) {
            break;
        }
        if r.len() - 1 >= dr {
            // Degree must strictly drop; guards against a malformed g.
            unreachable!("pseudo-division failed to reduce degree");
        }
    }
    r
}

fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return make_primitive(b);
    }
    if b.is_zero() {
        return make_primitive(a);
    }
    // A monomial divides exactly what it divides componentwise; `t`-powers
    // are units.
    if let Some((m, _)) = a.as_monomial() {
        return LaurentPoly::monomial(mono_common(m, b), Q::one());
    }
    if let Some((m, _)) = b.as_monomial() {
        return LaurentPoly::monomial(mono_common(m, a), Q::one());
    }
    // A pure-`t` factor divides a polynomial exactly when it divides every
    // grouped `t`-coefficient, so mixed cases need only univariate gcds.
    match (is_t_only_poly(a), is_t_only_poly(b)) {
        (true, false) => return gcd_rec(a, &t_content(b)),
        (false, true) => return gcd_rec(&t_content(a), b),
        _ => {}
    }
    let mut vs = vars_of(a);
    for v in vars_of(b) {
        if !vs.contains(&v) {
            vs.push(v);
        }
    }
    vs.sort_by_key(|v| match v {
        Var::T => 0u64,
        Var::S(s) => 1 + s.0 as u64,
    });
    if vs.is_empty() {
        return LaurentPoly::one();
    }
    let v = vs[0];
    let au = to_upoly(a, v);
    let bu = to_upoly(b, v);
    let ca = content_poly(&au);
    let cb = content_poly(&bu);
    let pa = upoly_div_coeffs(&au, &ca);
    let pb = upoly_div_coeffs(&bu, &cb);
    let cg = gcd_rec(&ca, &cb);
    let (f, g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    let mut f = upoly_strip_q(f);
    let mut g = upoly_strip_q(g);
    loop {
        if g.len() == 1 {
            // gcd of primitive parts is 1 (a primitive degree-0 poly is a unit
            // up to content, which was already stripped).
            g = vec![LaurentPoly::one()];
            break;
        }
        let r = upoly_strip_q(prem(&f, &g));
        if upoly_is_zero(&r) {
            break;
        }
        f = g;
        let rc = content_poly(&r);
        g = upoly_strip_q(upoly_div_coeffs(&r, &rc));
    }
    let gp = make_primitive(&from_upoly(&g, v));
    make_primitive(&cg.mul_ref(&gp))
}

/// Canonical associate: minimum `t`-exponent 0, integer-coprime coefficients,
/// positive leading coefficient.
pub fn make_primitive(f: &LaurentPoly) -> LaurentPoly {
    if f.is_zero() {
        return LaurentPoly::zero();
    }
    let shifted = f.shift_t(-f.min_t_exp());
    let c = content_q(&shifted);
    let mut out = shifted.mul_q(&c.recip());
    if out.lead().unwrap().1.is_negative() {
        out = out.neg_ref();
    }
    out
}

/// gcd of two Laurent polynomials, as the canonical associate described on
/// [`make_primitive`]. `gcd(0, f)` is the canonical associate of `f`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_one() || b.is_one() {
        return LaurentPoly::one();
    }
    let a = a.shift_t(-a.min_t_exp());
    let b = b.shift_t(-b.min_t_exp());
    gcd_rec(&a, &b)
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Reduced rational function `num/den`. See the module docs for the
/// normalization contract.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFn { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::int(c))
    }

    pub fn t_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::t_pow(k))
    }

    pub fn sym(s: Sym) -> Self {
        Self::from_poly(LaurentPoly::sym(s))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Builds the fraction without a gcd pass; the caller guarantees `num`
    /// and `den` are coprime. Only the unit normalization (denominator
    /// t-shift and monic scaling) is applied.
    fn from_reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        let mut r = RationalFn { num, den };
        if r.num.is_zero() {
            r.den = LaurentPoly::one();
            return r;
        }
        if r.den.is_one() {
            return r;
        }
        let k = r.den.min_t_exp();
        if k != 0 {
            r.num = r.num.shift_t(-k);
            r.den = r.den.shift_t(-k);
        }
        let lc = r.den.lead().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            r.num = r.num.mul_q(&inv);
            r.den = r.den.mul_q(&inv);
        }
        r
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        {
            let g = gcd(&self.num, &self.den);
            if !g.is_one() {
                self.num = div_exact(&self.num, &g).expect("gcd divides numerator");
                self.den = div_exact(&self.den, &g).expect("gcd divides denominator");
            }
        }
        // Unit normalization: denominator minimum t-exponent 0, leading
        // coefficient 1.
        let k = self.den.min_t_exp();
        if k != 0 {
            self.num = self.num.shift_t(-k);
            self.den = self.den.shift_t(-k);
        }
        let lc = self.den.lead().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.mul_q(&inv);
            self.den = self.den.mul_q(&inv);
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFn { num: &self.num + &other.num, den: LaurentPoly::one() };
        }
        if self.den == other.den {
            return RationalFn::new(&self.num + &other.num, self.den.clone());
        }
        // Common-denominator via the den gcd keeps denominator degrees at
        // the lcm instead of the product.
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            // Coprime reduced fractions sum to a reduced fraction.
            let num = &self.num.mul_ref(&other.den) + &other.num.mul_ref(&self.den);
            let den = self.den.mul_ref(&other.den);
            return Self::from_reduced(num, den);
        }
        let da = div_exact(&self.den, &g).expect("gcd divides");
        let db = div_exact(&other.den, &g).expect("gcd divides");
        let num = &self.num.mul_ref(&db) + &other.num.mul_ref(&da);
        let den = self.den.mul_ref(&db);
        RationalFn::new(num, den)
    }

    pub fn neg_ref(&self) -> Self {
        RationalFn { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFn {
                num: self.num.mul_ref(&other.num),
                den: LaurentPoly::one(),
            };
        }
        // Multiplying by a monomial keeps the fraction reduced when the
        // monomial is a unit (pure t-power) or the denominator carries no
        // symbols for it to cancel against.
        if other.den.is_one() {
            if let Some((m, _)) = other.num.as_monomial() {
                if m.is_t_only() || is_t_only_poly(&self.den) {
                    return Self::from_reduced(
                        self.num.mul_ref(&other.num),
                        self.den.clone(),
                    );
                }
            }
        }
        if self.den.is_one() {
            if let Some((m, _)) = self.num.as_monomial() {
                if m.is_t_only() || is_t_only_poly(&other.den) {
                    return Self::from_reduced(
                        other.num.mul_ref(&self.num),
                        other.den.clone(),
                    );
                }
            }
        }
        // Cross-cancellation of reduced fractions leaves a reduced fraction.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = div_exact(&self.num, &g1).unwrap();
        let d2 = div_exact(&other.den, &g1).unwrap();
        let n2 = div_exact(&other.num, &g2).unwrap();
        let d1 = div_exact(&self.den, &g2).unwrap();
        Self::from_reduced(n1.mul_ref(&n2), d1.mul_ref(&d2))
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Bar involution `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        RationalFn::new(self.num.bar(), self.den.bar())
    }

    /// Substitutes `t -> t^k`, `k != 0`.
    pub fn subst_t_pow(&self, k: i64) -> Self {
        RationalFn::new(self.num.subst_t_pow(k), self.den.subst_t_pow(k))
    }

    /// Evaluates at `t = 1`. The denominator must not vanish there.
    pub fn eval_t_one(&self) -> Self {
        let den = self.den.eval_t_one();
        assert!(!den.is_zero(), "pole at t = 1");
        RationalFn::new(self.num.eval_t_one(), den)
    }

    /// Replaces a symbol by a rational function value.
    pub fn subst_sym(&self, s: Sym, value: &RationalFn) -> Self {
        let sub_poly = |p: &LaurentPoly| -> (LaurentPoly, LaurentPoly) {
            // p(s -> n/d) = (sum_k coeff_k n^k d^{D-k}) / d^D with D = deg_s p
            let dmax = p.max_exp(s);
            if dmax == 0 {
                return (p.clone(), LaurentPoly::one());
            }
            let u = to_upoly(p, Var::S(s));
            let mut acc = LaurentPoly::zero();
            for (k, c) in u.iter().enumerate() {
                let term = c
                    .mul_ref(&value.num.pow(k as u32))
                    .mul_ref(&value.den.pow(dmax - k as u32));
                acc = acc.add_ref(&term);
            }
            (acc, value.den.pow(dmax))
        };
        let (nn, nd) = sub_poly(&self.num);
        let (dn, dd) = sub_poly(&self.den);
        assert!(!dn.is_zero(), "substitution zeroed a denominator");
        RationalFn::new(nn.mul_ref(&dd), dn.mul_ref(&nd))
    }

    pub fn contains_sym(&self, s: Sym) -> bool {
        self.num.contains_sym(s) || self.den.contains_sym(s)
    }

    pub fn render(&self, st: &SymbolTable) -> String {
        if self.den.is_one() {
            self.num.render(st)
        } else {
            alloc::format!("({})/({})", self.num.render(st), self.den.render(st))
        }
    }

    pub fn evaluate(&self, asg: &Assignment) -> Result<Value, EvalError> {
        let n = eval_poly(&self.num, asg)?;
        let d = eval_poly(&self.den, asg)?;
        n.div(&d)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: Self) -> RationalFn {
        self.add_ref(rhs)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: Self) -> RationalFn {
        self.sub_ref(rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: Self) -> RationalFn {
        self.mul_ref(rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        self.neg_ref()
    }
}

// ---------------------------------------------------------------------------
// q-numbers
// ---------------------------------------------------------------------------

fn check_d(d: u32) {
    assert!((1..=4).contains(&d), "symmetrizer entry out of range: {}", d);
}

/// Symmetric q-integer `[a]` in the variable `q_d = t^{2d}`:
/// `(q_d^a - q_d^{-a}) / (q_d - q_d^{-1})`, with `[0] = 1` by convention.
pub fn qnum(a: u32, d: u32) -> LaurentPoly {
    check_d(d);
    if a == 0 {
        return LaurentPoly::one();
    }
    let mut out = LaurentPoly::zero();
    let step = 2 * d as i64;
    for j in 0..a {
        out = out.add_ref(&LaurentPoly::t_pow(step * (a as i64 - 1 - 2 * j as i64)));
    }
    out
}

/// q-factorial `[a]!` (empty product for `a = 0`).
pub fn qfac(a: u32, d: u32) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for k in 1..=a {
        out = out.mul_ref(&qnum(k, d));
    }
    out
}

/// Gaussian binomial `[n; k]` in `q_d`, computed from factorials; the
/// division is exact and asserted so.
pub fn qbinom(n: u32, k: u32, d: u32) -> LaurentPoly {
    assert!(k <= n, "qbinom requires 0 <= k <= n");
    let num = qfac(n, d);
    let den = qfac(k, d).mul_ref(&qfac(n - k, d));
    div_exact(&num, &den).expect("Gaussian binomial division is exact")
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Result of evaluating at a point: exact when every input was rational,
/// complex floating otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Q),
    Approx(Complex64),
}

impl Value {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Value::Exact(q) => Complex64::new(
                q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN),
                0.0,
            ),
            Value::Approx(z) => *z,
        }
    }

    fn is_zero_val(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Approx(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    fn div(&self, other: &Value) -> Result<Value, EvalError> {
        if other.is_zero_val() {
            return Err(EvalError::DivisionByZero);
        }
        Ok(match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a / b),
            _ => Value::Approx(self.to_complex() / other.to_complex()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// A symbol occurring in the expression has no binding.
    MissingSymbol(String),
    DivisionByZero,
}

/// Point assignment: a value for `t` and for each needed symbol.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub t: Option<Value>,
    pub vals: BTreeMap<Sym, Value>,
    /// Needed only for error messages.
    pub names: BTreeMap<Sym, String>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_t(&mut self, v: Value) -> &mut Self {
        self.t = Some(v);
        self
    }

    pub fn set(&mut self, st: &SymbolTable, s: Sym, v: Value) -> &mut Self {
        self.names.insert(s, st.name(s).to_string());
        self.vals.insert(s, v);
        self
    }

    fn any_approx(&self) -> bool {
        matches!(self.t, Some(Value::Approx(_)))
            || self.vals.values().any(|v| matches!(v, Value::Approx(_)))
    }
}

fn pow_rat(base: &Q, e: i64) -> Result<Q, EvalError> {
    if e == 0 {
        return Ok(Q::one());
    }
    if base.is_zero() && e < 0 {
        return Err(EvalError::DivisionByZero);
    }
    let mut acc = Q::one();
    let b = if e > 0 { base.clone() } else { base.recip() };
    for _ in 0..e.unsigned_abs() {
        acc = acc * &b;
    }
    Ok(acc)
}

fn pow_cpx(base: Complex64, e: i64) -> Result<Complex64, EvalError> {
    if e == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if base.re == 0.0 && base.im == 0.0 && e < 0 {
        return Err(EvalError::DivisionByZero);
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let b = if e > 0 { base } else { Complex64::new(1.0, 0.0) / base };
    for _ in 0..e.unsigned_abs() {
        acc *= b;
    }
    Ok(acc)
}

/// Evaluates a Laurent polynomial at an assignment. Every symbol occurring in
/// `p` (and `t`, if it occurs) must be bound; unused bindings are fine.
pub fn eval_poly(p: &LaurentPoly, asg: &Assignment) -> Result<Value, EvalError> {
    let approx = asg.any_approx();
    if approx {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &p.terms {
            let mut term = Complex64::new(
                c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN),
                0.0,
            );
            if m.t != 0 {
                let tv = asg.t.as_ref().ok_or_else(|| EvalError::MissingSymbol("t".into()))?;
                term *= pow_cpx(tv.to_complex(), m.t)?;
            }
            for (i, e) in m.p.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let s = Sym(i as u32);
                let v = asg.vals.get(&s).ok_or_else(|| {
                    EvalError::MissingSymbol(
                        asg.names.get(&s).cloned().unwrap_or_else(|| alloc::format!("#{}", i)),
                    )
                })?;
                term *= pow_cpx(v.to_complex(), *e as i64)?;
            }
            acc += term;
        }
        return Ok(Value::Approx(acc));
    }
    let mut acc = Q::zero();
    for (m, c) in &p.terms {
        let mut term = c.clone();
        if m.t != 0 {
            match asg.t.as_ref() {
                Some(Value::Exact(tv)) => term = term * pow_rat(tv, m.t)?,
                Some(Value::Approx(_)) => unreachable!(),
                None => return Err(EvalError::MissingSymbol("t".into())),
            }
        }
        for (i, e) in m.p.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let s = Sym(i as u32);
            match asg.vals.get(&s) {
                Some(Value::Exact(v)) => term = term * pow_rat(v, *e as i64)?,
                Some(Value::Approx(_)) => unreachable!(),
                None => {
                    return Err(EvalError::MissingSymbol(
                        asg.names.get(&s).cloned().unwrap_or_else(|| alloc::format!("#{}", i)),
                    ))
                }
            }
        }
        acc = acc + term;
    }
    Ok(Value::Exact(acc))
}
