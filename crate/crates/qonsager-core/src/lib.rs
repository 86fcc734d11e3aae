//! Exact symbolic toolkit for generalized q-Onsager algebras.
//!
//! The crate mechanically re-derives, by noncommutative rewriting inside a
//! quantum affine algebra U_q(g^), the structure constants and boundary-field
//! constraints under which
//!
//! ```text
//!     A_i = c_i e_i q_i^{h_i/2} + cbar_i f_i q_i^{h_i/2} + w_i q_i^{h_i}
//! ```
//!
//! satisfies the generalized q-Dolan-Grady relations, and it classifies the
//! maximal solution families of the resulting constraint systems over every
//! affine Dynkin diagram.
//!
//! Everything is exact: coefficients are multivariate Laurent polynomials in
//! `t = q^{1/2}` over arbitrary-precision rationals, kept in canonical reduced
//! form, so every verification below is an identity check with a structural
//! zero test rather than a numerical one.
//!
//! Module layout mirrors the pipeline:
//!
//! * [`coeff`] - Laurent polynomials, reduced rational functions, q-numbers,
//!   the bar involution `t -> t^{-1}`, and exact/complex evaluation.
//! * [`cartan`] - affine Cartan matrices, symmetrizers, marks, link
//!   classification for every admissible affine series.
//! * [`freealg`] - noncommutative polynomials over Chevalley letters with
//!   Cartan half-power exponents folded into monomials, plus tensor products.
//! * [`uqreduce`] - the oriented rewriting engine for rank-2 subalgebras of
//!   U_q(g^), with bounded completion and confluence diagnostics.
//! * [`onsager`] - the deformed Serre-type relations of O_q(g^) with their
//!   gamma coefficient tables.
//! * [`homver`] - relation-by-relation verification of the embedding: solves
//!   for the rho structure constants, extracts and factors the w-constraints.
//! * [`classify`] - enumeration of maximal boundary-parameter families and
//!   comparison against the expected classification.
//! * [`coaction`] - the comodule-algebra property of delta(A_i), verified on
//!   tensor polynomials with both tensor legs reduced.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cartan;
pub mod classify;
pub mod coaction;
pub mod coeff;
pub mod freealg;
pub mod homver;
pub mod onsager;
pub mod oracle;
pub mod uqreduce;
