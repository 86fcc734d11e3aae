//! Acceptance gate. Nine criteria, one test each, printing a single
//! `criterion N <name>: PASS|FAIL` line (visible with `--nocapture`, and
//! always visible on failure).
//!
//! Criterion 1 cross-checks the solved structure constants against the
//! reference tables this toolkit set out to confirm. Two of the published
//! second-order entries disagree with the engine's exact derivation, so
//! that test fails by design and prints both sides of every mismatch;
//! everything else is expected green.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qonsager_core::cartan::AffineDiagram;
use qonsager_core::coaction::verify_coaction_pair;
use qonsager_core::coeff::{qbinom, LaurentPoly, RationalFn, Sym};
use qonsager_core::freealg::{NcMono, NcPoly, Word};
use qonsager_core::homver::{
    check_bar_symmetry, normalize_constraint, verify_pair, Realization, Variant,
};
use qonsager_core::onsager::Oq;
use qonsager_core::oracle::matrix_oracle_sl2;
use qonsager_core::uqreduce::{relation_word_bound, Reducer, Uq};

use qonsager_cli::sections::classify_data;

fn diagram(id: &str) -> AffineDiagram {
    AffineDiagram::from_id(id).unwrap()
}

/// Sum of `c * t^e` terms.
fn tsum(terms: &[(i64, i64)]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for &(c, e) in terms {
        acc = acc.add_ref(&(&LaurentPoly::int(c) * &LaurentPoly::t_pow(e)));
    }
    acc
}

/// `c_i * cbar_i` for a node.
fn cc(real: &Realization, i: usize) -> LaurentPoly {
    &LaurentPoly::sym(real.c[i]) * &LaurentPoly::sym(real.cbar[i])
}

fn rational(p: LaurentPoly) -> RationalFn {
    RationalFn::from_poly(p)
}

// ---------------------------------------------------------------- criterion 1

/// Expected structure constants for one direction, written straight from
/// the reference tables with q = t^2 and q_i = t^(2 d_i).
fn reference_rho(id: &str, x: usize, real: &Realization) -> Vec<RationalFn> {
    let ccx = cc(real, x);
    // (q + q^-1)^2 for d_x = 1.
    let sq = tsum(&[(1, 4), (2, 0), (1, -4)]);
    match id {
        // Simply laced and every cheap direction: rho^0 = c cbar.
        "a2^1" => vec![rational(ccx)],
        "c2^1" if x == 0 => vec![rational(ccx)],
        "g2^1" if x == 1 => vec![rational(ccx)],
        "d4^3" if x == 2 => vec![rational(ccx)],
        "a2^2" if x == 0 => vec![rational(ccx)],
        // Double bond, short root first: rho^0 = c cbar (q + q^-1)^2.
        "c2^1" => vec![rational(&ccx * &sq)],
        // Triple bond, short root first.
        "g2^1" | "d4^3" => {
            let r0 = tsum(&[(1, 8), (2, 4), (4, 0), (2, -4), (1, -8)]);
            let r1 = tsum(&[(1, 8), (1, 0), (1, -8)]).pow(2);
            vec![
                rational(&ccx * &r0),
                rational(&LaurentPoly::int(-1) * &(&ccx.pow(2) * &r1)),
            ]
        }
        // Quadruple bond, short root first.
        "a2^2" => {
            let r0 = &sq * &tsum(&[(1, 8), (3, 0), (1, -8)]);
            let r1 = &sq.pow(2) * &tsum(&[(1, 4), (1, -4)]).pow(4);
            vec![
                rational(&ccx * &r0),
                rational(&LaurentPoly::int(-1) * &(&ccx.pow(2) * &r1)),
            ]
        }
        _ => panic!("no reference entry for {id} direction {x}"),
    }
}

#[test]
fn acceptance_1_structure_constant_tables() {
    let cases: &[(&str, &[(usize, usize)])] = &[
        ("a2^1", &[(0, 1)]),
        ("c2^1", &[(0, 1), (1, 0)]),
        ("g2^1", &[(1, 2), (2, 1)]),
        ("d4^3", &[(2, 1), (1, 2)]),
        ("a2^2", &[(0, 1), (1, 0)]),
    ];
    let mut mismatches: Vec<String> = Vec::new();
    let mut checked = 0usize;
    for (id, dirs) in cases {
        let t0 = Instant::now();
        let dg = diagram(id);
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let mut red = Reducer::new(&uq);
        for &(x, y) in *dirs {
            let mut real = Realization::new(&dg);
            let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
            let expected = reference_rho(id, x, &real);
            assert_eq!(pv.rho.len(), expected.len(), "{id} ({x},{y}): table size");
            for (k, (want, (sym, got))) in expected.iter().zip(&pv.rho).enumerate() {
                checked += 1;
                if !got.sub_ref(want).is_zero() {
                    mismatches.push(format!(
                        "{id} ({x},{y}) {}: derived {} but the reference table says {}",
                        real.st.name(*sym),
                        got.render(&real.st),
                        want.render(&real.st),
                    ));
                    let _ = k;
                }
            }
        }
        assert!(t0.elapsed().as_secs() < 60, "{id} exceeded the per-type budget");
    }
    if mismatches.is_empty() {
        println!("criterion 1 structure-constant tables: PASS — {checked} equalities hold");
    } else {
        println!(
            "criterion 1 structure-constant tables: FAIL — {} of {checked} reference equalities do not hold",
            mismatches.len()
        );
        for m in &mismatches {
            println!("  {m}");
        }
        panic!(
            "{} reference equalities disagree with the exact derivation (see lines above); \
             the derived values pass every independent gate in this suite",
            mismatches.len()
        );
    }
}

// ---------------------------------------------------------------- criterion 2

#[test]
fn acceptance_2_constraint_normalization() {
    // One case per bond multiplicity. The displayed products are written
    // out longhand with explicit t powers; each must normalize to exactly
    // the engine's atom set, and so must its unit multiples.
    let t0 = Instant::now();
    let mut checked = 0usize;

    // Rank one: no constraints on either side.
    {
        let dg = diagram("a1^1");
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let mut red = Reducer::new(&uq);
        let mut real = Realization::new(&dg);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, 0, 1).unwrap();
        assert!(pv.constraints.is_empty(), "a1^1 should be unconstrained");
        checked += 1;
    }

    // (id, x, y, d_x): the constrained direction and the symmetrizer of
    // the node whose quadratic atoms appear.
    let cases: &[(&str, usize, usize, i64)] =
        &[("a2^1", 0, 1, 1), ("c2^1", 0, 1, 2), ("g2^1", 2, 1, 1), ("a2^2", 0, 1, 4)];
    for &(id, x, y, dx) in cases {
        let dg = diagram(id);
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let mut red = Reducer::new(&uq);
        let mut real = Realization::new(&dg);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
        assert_eq!(pv.constraints.len(), 1, "{id} ({x},{y}): one constraint");
        let engine = &pv.constraints[0].atoms;

        let wy = LaurentPoly::sym(real.w[y]);
        let wx2 = LaurentPoly::sym(real.w[x]).pow(2);
        let qq2 = tsum(&[(1, 2 * dx), (1, -2 * dx), (-2, 0)]);
        let quad1 = (&qq2 * &wx2).add_ref(&cc(&real, x));
        let mut product = &wy * &quad1;
        if id == "g2^1" {
            let m = tsum(&[(1, 2 * dx), (1, -2 * dx), (-1, 0)]).pow(2);
            let quad2 = (&qq2 * &wx2).add_ref(&(&cc(&real, x) * &m));
            product = &product * &quad2;
        }

        for unit in [
            product.clone(),
            product.shift_t(3),
            &LaurentPoly::int(-1) * &product,
        ] {
            let n = normalize_constraint(&dg, &real, &unit, &[x, y]);
            assert_eq!(
                &n.atoms, engine,
                "{id} ({x},{y}): displayed product and engine constraint must generate the same ideal"
            );
            checked += 1;
        }

        // Reverse direction: the engine's own atom product round-trips.
        let back = pv.constraints[0]
            .atoms
            .iter()
            .fold(LaurentPoly::one(), |acc, a| &acc * &real.atom_poly(&dg, a));
        let n = normalize_constraint(&dg, &real, &back, &[x, y]);
        assert_eq!(&n.atoms, engine, "{id} ({x},{y}): atom product round-trip");
        checked += 1;
    }
    assert!(t0.elapsed().as_secs() < 60, "constraint checks exceeded the budget");
    println!("criterion 2 constraint normalization: PASS — {checked} mutual-implication checks");
}

// ---------------------------------------------------------------- criterion 3

#[test]
fn acceptance_3_family_sweep() {
    let t0 = Instant::now();
    let expected_counts: &[(&str, usize)] = &[
        ("a2^1", 2),
        ("a3^1", 2),
        ("b3^1", 2),
        ("c2^1", 2),
        ("c3^1", 2),
        ("d4^1", 2),
        ("a5^2", 2),
        ("a6^2", 2),
        ("d3^2", 2),
        ("a2^2", 2),
        ("a4^2", 3),
        ("g2^1", 3),
        ("d4^3", 2),
        ("f4^1", 3),
        ("e6^2", 3),
        ("e6^1", 2),
    ];
    for &(id, count) in expected_counts {
        let dg = diagram(id);
        let data = classify_data(&dg);
        assert!(data.ok, "{id}: {:?}", data.failure);
        assert_eq!(data.families.len(), count, "{id}: family count");
        let subsumed: Vec<_> = data
            .families
            .iter()
            .filter(|f| f.reference_match == Some("subsumed"))
            .collect();
        let exact = data
            .families
            .iter()
            .filter(|f| f.reference_match == Some("exact"))
            .count();
        if id == "c2^1" || id == "d3^2" {
            assert_eq!(subsumed.len(), 1, "{id}: exactly one family folds into a larger one");
            assert_eq!(exact, count - 1, "{id}");
        } else {
            assert!(subsumed.is_empty(), "{id}: unexpected subsumption");
            assert_eq!(exact, count, "{id}: every family must match the reference list");
        }
    }
    let secs = t0.elapsed().as_secs();
    assert!(secs < 300, "sweep took {secs}s, budget is 300s");
    println!(
        "criterion 3 family sweep: PASS — 16 diagrams, counts and reference matches as listed, {secs}s"
    );
}

// ---------------------------------------------------------------- criterion 4

#[test]
fn acceptance_4_rank_one_oracle() {
    let dg = diagram("a1^1");
    let uq = Uq::new(&dg, relation_word_bound(&dg));
    let oq = Oq::new(&dg);
    let mut red = Reducer::new(&uq);
    for (x, y) in [(0usize, 1usize), (1, 0)] {
        let mut real = Realization::new(&dg);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
        assert!(pv.constraints.is_empty(), "rank one is unconstrained");
        assert_eq!(pv.rho.len(), 1);
        let want = rational(&cc(&real, x) * &tsum(&[(1, 4), (2, 0), (1, -4)]));
        assert!(pv.rho[0].1.sub_ref(&want).is_zero(), "direction ({x},{y})");
    }
    matrix_oracle_sl2().unwrap();
    println!(
        "criterion 4 rank-one oracle: PASS — both directions solved, 2x2 evaluation model agrees"
    );
}

// ---------------------------------------------------------------- criterion 5

fn word_poly(letters: &[u16], c: i64) -> NcPoly {
    NcPoly::monomial(NcMono::word(letters.to_vec()), RationalFn::int(c))
}

fn sum_words(terms: &[(Vec<u16>, i64)]) -> NcPoly {
    terms
        .iter()
        .fold(NcPoly::zero(), |acc, (w, c)| acc.add_ref(&word_poly(w, *c)))
}

#[test]
fn acceptance_5_classical_degenerations() {
    let mut serre_checks = 0usize;

    // With every rho forced to zero the defining element is exactly the
    // two-sided q-Serre sum, term by term.
    for id in ["a1^1", "a2^1", "c2^1", "g2^1", "a2^2"] {
        let dg = diagram(id);
        let oq = Oq::new(&dg);
        let mut real = Realization::new(&dg);
        for x in 0..dg.n_nodes {
            for y in 0..dg.n_nodes {
                if x == y || dg.a[x][y] == 0 {
                    continue;
                }
                let rel = oq.relation(&mut real.st, x, y);
                let syms: Vec<Sym> = (0..qonsager_core::onsager::rho_count(dg.a[x][y]))
                    .map(|k| oq.rho_sym(&mut real.st, k, x, y))
                    .collect();
                let dropped = rel.map_coeffs(|c| {
                    syms.iter().fold(c.clone(), |acc, s| acc.subst_sym(*s, &RationalFn::zero()))
                });
                let a_of = |i: usize| oq.a(i);
                let serre = Uq::serre_relation(&dg, &a_of, x, y);
                assert_eq!(dropped, serre, "{id} ({x},{y})");
                serre_checks += 1;
            }
        }
    }

    // Specializes one direction to t = 1 with unit weights.
    let classical = |id: &str, x: usize, y: usize| -> NcPoly {
        let dg = diagram(id);
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let mut red = Reducer::new(&uq);
        let mut real = Realization::new(&dg);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
        let rel = oq.relation(&mut real.st, x, y);
        let one = RationalFn::one();
        rel.map_coeffs(|c| {
            let mut acc = pv.rho.iter().fold(c.clone(), |acc, (s, v)| acc.subst_sym(*s, v));
            for i in 0..dg.n_nodes {
                acc = acc.subst_sym(real.c[i], &one).subst_sym(real.cbar[i], &one);
            }
            acc.eval_t_one()
        })
    };

    // Cubic relation at t = 1.
    let got = classical("a2^1", 0, 1);
    let want = sum_words(&[
        (vec![0, 0, 1], 1),
        (vec![0, 1, 0], -2),
        (vec![1, 0, 0], 1),
        (vec![1], -1),
    ]);
    assert_eq!(got, want, "cubic classical limit");

    // Quartic relation at t = 1: the Dolan-Grady identity with coupling 4.
    let got = classical("a1^1", 0, 1);
    let want = sum_words(&[
        (vec![0, 0, 0, 1], 1),
        (vec![0, 0, 1, 0], -3),
        (vec![0, 1, 0, 0], 3),
        (vec![1, 0, 0, 0], -1),
        (vec![0, 1], -4),
        (vec![1, 0], 4),
    ]);
    assert_eq!(got, want, "quartic classical limit");

    println!(
        "criterion 5 classical degenerations: PASS — {serre_checks} Serre degenerations, cubic and quartic t=1 limits"
    );
}

// ---------------------------------------------------------------- criterion 6

#[test]
fn acceptance_6_inverse_variant_symmetry() {
    let cases: &[(&str, &[(usize, usize)])] = &[
        ("a1^1", &[(0, 1)]),
        ("a2^1", &[(0, 1)]),
        ("c2^1", &[(0, 1), (1, 0)]),
        ("g2^1", &[(1, 2), (2, 1)]),
        ("a2^2", &[(0, 1), (1, 0)]),
    ];
    let mut dirs = 0usize;
    for (id, pairs) in cases {
        let dg = diagram(id);
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let mut red = Reducer::new(&uq);
        for &(x, y) in *pairs {
            let mut std = Realization::new(&dg);
            let a = verify_pair(&uq, &oq, &mut std, &mut red, x, y).unwrap();
            let mut bar = Realization::with_variant(&dg, Variant::Bar);
            let b = verify_pair(&uq, &oq, &mut bar, &mut red, x, y).unwrap();
            assert!(
                check_bar_symmetry(&a, &b),
                "{id} ({x},{y}): inverse-group-factor embedding must solve identically"
            );
            dirs += 1;
        }
    }
    println!(
        "criterion 6 inverse-variant symmetry: PASS — {dirs} directions agree across both embeddings"
    );
}

// ---------------------------------------------------------------- criterion 7

#[test]
fn acceptance_7_comodule_factoring() {
    let cases: &[(&str, usize, usize)] = &[
        ("a1^1", 0, 1),
        ("a2^1", 0, 1),
        ("c2^1", 0, 1),
        ("g2^1", 1, 2),
        ("a2^2", 0, 1),
    ];
    for &(id, x, y) in cases {
        let t0 = Instant::now();
        let dg = diagram(id);
        let uq = Uq::new(&dg, relation_word_bound(&dg));
        let oq = Oq::new(&dg);
        let mut red = Reducer::new(&uq);
        let mut real = Realization::new(&dg);
        let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y).unwrap();
        let out = verify_coaction_pair(&uq, &oq, &mut real, &mut red, &pv.rho, x, y);
        assert!(out.residual_is_zero(), "{id} ({x},{y}): residual must vanish");
        assert!(out.factors_through_relation, "{id} ({x},{y}): must factor");
        assert_eq!(out.intermediate.len(), 1, "{id} ({x},{y}): single group factor");
        assert!(
            t0.elapsed().as_secs() < 120,
            "{id} ({x},{y}) exceeded the per-direction budget"
        );
    }
    println!(
        "criterion 7 comodule factoring: PASS — 5 directions factor as (unit K-monomial) x (relation), residual zero"
    );
}

// ---------------------------------------------------------------- criterion 8

fn random_word(rng: &mut ChaCha8Rng, n_letters: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..n_letters) as u16).collect()
}

/// Mixed commutators minus their torus term, plus both alphabets' Serre
/// sums: everything that must reduce to zero.
fn defining_elements(uq: &Uq) -> Vec<NcPoly> {
    let dg = &uq.dg;
    let n = dg.n_nodes;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut el = NcPoly::word(&[uq.e(i), uq.f(j)])
                .sub_ref(&NcPoly::word(&[uq.f(j), uq.e(i)]));
            if i == j {
                let cartan = uq
                    .k_poly(i, 2)
                    .sub_ref(&uq.k_poly(i, -2))
                    .scale(&uq.qi_minus_inv(i).inverse());
                el = el.sub_ref(&cartan);
            }
            out.push(el);
        }
    }
    let e_of = |i: usize| uq.e(i);
    let f_of = |i: usize| uq.f(i);
    for x in 0..n {
        for y in 0..n {
            if x != y && dg.a[x][y] != 0 {
                out.push(Uq::serre_relation(dg, &e_of, x, y));
                out.push(Uq::serre_relation(dg, &f_of, x, y));
            }
        }
    }
    out
}

#[test]
fn acceptance_8_rewrite_soundness() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut conjugations = 0usize;
    let mut idempotence = 0usize;
    let mut overlaps = 0usize;
    for id in ["a1^1", "a2^1", "c2^1", "g2^1", "a2^2"] {
        let dg = diagram(id);

        // Bounded confluence of the oriented rule set.
        let len = relation_word_bound(&dg) + 1;
        let uq = Uq::new(&dg, len);
        let rep = uq.overlap_report(len);
        assert!(rep.checked > 0, "{id}: no overlaps examined");
        assert!(rep.all_join(), "{id}: unjoinable {:?}", rep.unjoinable);
        overlaps += rep.checked;

        // Reduction is a projection.
        let mut red = Reducer::new(&uq);
        let n_letters = 2 * dg.n_nodes;
        for _ in 0..12 {
            let w = random_word(&mut rng, n_letters, 5);
            let p = NcPoly::monomial(NcMono::word(w.clone()), RationalFn::one());
            let nf = red.nf(&p);
            assert_eq!(red.nf(&nf), nf, "{id} word {w:?}");
            idempotence += 1;
        }

        // Conjugated defining elements vanish (two-sided ideal membership).
        // Conjugators add up to four letters, so complete that far beyond
        // the longest defining word.
        let uq4 = Uq::new(&dg, relation_word_bound(&dg) + 4);
        let mut red4 = Reducer::new(&uq4);
        for el in defining_elements(&uq4) {
            assert!(red4.nf(&el).is_zero(), "{id}: bare element");
            for _ in 0..8 {
                let a = random_word(&mut rng, n_letters, 2);
                let b = random_word(&mut rng, n_letters, 2);
                let left = NcPoly::monomial(NcMono::word(a.clone()), RationalFn::one());
                let right = NcPoly::monomial(NcMono::word(b.clone()), RationalFn::one());
                let conj = uq4.alg.mul(&uq4.alg.mul(&left, &el), &right);
                assert!(red4.nf(&conj).is_zero(), "{id}: {a:?} . el . {b:?}");
                conjugations += 1;
            }
        }
    }
    assert!(conjugations >= 250, "only {conjugations} conjugation instances");
    let secs = t0.elapsed().as_secs();
    assert!(secs < 600, "gates took {secs}s, budget is 600s");
    println!(
        "criterion 8 rewrite soundness: PASS — {overlaps} overlaps join, {idempotence} idempotence samples, {conjugations} conjugations vanish, {secs}s"
    );
}

// ---------------------------------------------------------------- criterion 9

fn random_laurent(rng: &mut ChaCha8Rng, s: Sym) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = loop {
            let c = rng.gen_range(-4i64..=4);
            if c != 0 {
                break c;
            }
        };
        let e = rng.gen_range(-3i64..=3);
        let mut term = &LaurentPoly::int(c) * &LaurentPoly::t_pow(e);
        if rng.gen_bool(0.5) {
            term = &term * &LaurentPoly::sym(s);
        }
        acc = acc.add_ref(&term);
    }
    acc
}

fn random_rational(rng: &mut ChaCha8Rng, s: Sym) -> RationalFn {
    let num = random_laurent(rng, s);
    let den = loop {
        let d = random_laurent(rng, s);
        if !d.is_zero() {
            break d;
        }
    };
    RationalFn::new(num, den)
}

#[test]
fn acceptance_9_scalar_layer() {
    let t0 = Instant::now();

    // Gaussian binomials: symmetry, both Pascal recurrences, and
    // invariance under t -> 1/t, for every symmetrizer in use.
    let mut binom_checks = 0usize;
    for d in 1..=4u32 {
        for n in 0..=8u32 {
            for k in 0..=n {
                let b = qbinom(n, k, d);
                assert_eq!(b, qbinom(n, n - k, d), "symmetry n={n} k={k} d={d}");
                assert_eq!(b, b.bar(), "bar invariance n={n} k={k} d={d}");
                if n > 0 && k > 0 && k < n {
                    let s = 2 * d as i64;
                    let upper = LaurentPoly::t_pow(s * k as i64)
                        .mul_ref(&qbinom(n - 1, k, d))
                        .add_ref(
                            &LaurentPoly::t_pow(s * (k as i64 - n as i64))
                                .mul_ref(&qbinom(n - 1, k - 1, d)),
                        );
                    assert_eq!(b, upper, "pascal n={n} k={k} d={d}");
                    let lower = LaurentPoly::t_pow(-s * k as i64)
                        .mul_ref(&qbinom(n - 1, k, d))
                        .add_ref(
                            &LaurentPoly::t_pow(s * (n as i64 - k as i64))
                                .mul_ref(&qbinom(n - 1, k - 1, d)),
                        );
                    assert_eq!(b, lower, "mirrored pascal n={n} k={k} d={d}");
                }
                binom_checks += 1;
            }
        }
    }

    // Field axioms and the bar involution on random rational functions.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut st = qonsager_core::coeff::SymbolTable::new();
    let s = st.intern("u");
    for _ in 0..100 {
        let a = random_rational(&mut rng, s);
        let b = random_rational(&mut rng, s);
        let c = random_rational(&mut rng, s);

        let assoc_add = a.add_ref(&b).add_ref(&c).sub_ref(&a.add_ref(&b.add_ref(&c)));
        assert!(assoc_add.is_zero(), "additive associativity");
        let assoc_mul = a.mul_ref(&b).mul_ref(&c).sub_ref(&a.mul_ref(&b.mul_ref(&c)));
        assert!(assoc_mul.is_zero(), "multiplicative associativity");
        assert!(a.add_ref(&b).sub_ref(&b.add_ref(&a)).is_zero(), "additive commutativity");
        assert!(a.mul_ref(&b).sub_ref(&b.mul_ref(&a)).is_zero(), "multiplicative commutativity");
        let distrib = a.mul_ref(&b.add_ref(&c)).sub_ref(&a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        assert!(distrib.is_zero(), "distributivity");
        assert!(a.add_ref(&a.neg_ref()).is_zero(), "additive inverse");
        if !a.is_zero() {
            assert!(a.mul_ref(&a.inverse()).is_one(), "multiplicative inverse");
        }
        assert!(a.bar().bar().sub_ref(&a).is_zero(), "bar involution");
        let bar_mul = a.mul_ref(&b).bar().sub_ref(&a.bar().mul_ref(&b.bar()));
        assert!(bar_mul.is_zero(), "bar is multiplicative");
        let bar_add = a.add_ref(&b).bar().sub_ref(&a.bar().add_ref(&b.bar()));
        assert!(bar_add.is_zero(), "bar is additive");
    }

    let secs = t0.elapsed().as_secs();
    assert!(secs < 60, "scalar checks took {secs}s");
    println!(
        "criterion 9 scalar layer: PASS — {binom_checks} binomial identities, 100 field-axiom samples"
    );
}
