//! Families of boundary parameters that annihilate a diagram's constraints.
//!
//! Every constraint produced by `homver` is a product of atoms, each
//! depending on a single node. Pinning a node with a tag kills the atom of
//! the matching shape: `Zero` kills `W(i)`, `Root1` kills `Root1(i)`,
//! `Root2` kills `Root2(i)`. A tag vector is valid when every constraint
//! contains a killed atom. The enumerator case-splits over which atom kills
//! each constraint, propagates forced choices, and keeps the maximal
//! families, so its output is the complete antichain of valid tag vectors.
//!
//! Families carry factor tags, never explicit roots: the roots need `i`, so
//! they live outside the exact coefficient field. `instantiate_numeric`
//! renders them as complex numbers on request.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::cartan::{AffineDiagram, LinkKind};
use crate::homver::{Atom, Constraint};

/// Per-node pinning of the boundary parameter `w_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    /// `w_i = 0`.
    Zero,
    /// `w_i` is a root of the first quadratic, `(q_i+q_i^-1-2) w_i^2 + 1`.
    Root1,
    /// `w_i` is a root of the second quadratic (triple bonds only).
    Root2,
    /// `w_i` unconstrained.
    Free,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Zero => "zero",
            Tag::Root1 => "root1",
            Tag::Root2 => "root2",
            Tag::Free => "free",
        }
    }
}

/// True when the tag at the atom's node pins that atom to zero. `Generic`
/// atoms are killed by no tag.
pub fn atom_killed(tags: &[Tag], atom: &Atom) -> bool {
    match atom {
        Atom::W(i) => tags[*i] == Tag::Zero,
        Atom::Root1(i) => tags[*i] == Tag::Root1,
        Atom::Root2(i) => tags[*i] == Tag::Root2,
        Atom::Generic(_) => false,
    }
}

pub fn constraint_holds(tags: &[Tag], c: &Constraint) -> bool {
    c.atoms.iter().any(|a| atom_killed(tags, a))
}

/// `general` covers `special`: wherever `general` pins a node, `special`
/// pins it the same way.
pub fn subsumes(general: &[Tag], special: &[Tag]) -> bool {
    general.len() == special.len()
        && general.iter().zip(special).all(|(g, s)| *g == Tag::Free || g == s)
}

/// All constraints of a diagram, deduplicated, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn is_valid(&self, tags: &[Tag]) -> bool {
        self.constraints.iter().all(|c| constraint_holds(tags, c))
    }
}

fn constraint_of(atoms: &[Atom]) -> Constraint {
    Constraint { atoms: atoms.iter().cloned().collect() }
}

/// Instantiates the per-link constraint templates. The templates match what
/// `homver::verify_diagram` derives by rewriting, bond shape by bond shape;
/// keeping them in closed form makes classification independent of the
/// rewriting engine.
pub fn constraints_for(dg: &AffineDiagram) -> ConstraintSet {
    let mut out: BTreeSet<Constraint> = BTreeSet::new();
    for (i, j) in dg.linked_pairs() {
        // For an asymmetric bond the longer root's row carries the -1.
        let (long, short) = if dg.a[i][j] == -1 { (i, j) } else { (j, i) };
        match dg.link_kind(i, j) {
            LinkKind::Unlinked | LinkKind::DoubleDouble => {}
            LinkKind::Simple => {
                out.insert(constraint_of(&[Atom::W(j), Atom::Root1(i)]));
                out.insert(constraint_of(&[Atom::W(i), Atom::Root1(j)]));
            }
            LinkKind::Double | LinkKind::Quadruple => {
                out.insert(constraint_of(&[Atom::W(short), Atom::Root1(long)]));
            }
            LinkKind::Triple => {
                out.insert(constraint_of(&[Atom::W(short), Atom::Root1(long)]));
                out.insert(constraint_of(&[
                    Atom::W(long),
                    Atom::Root1(short),
                    Atom::Root2(short),
                ]));
            }
        }
    }
    ConstraintSet { constraints: out.into_iter().collect() }
}

/// One pinning decision made during enumeration. `forced` decisions were
/// the only remaining way to satisfy some constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub node: usize,
    pub tag: Tag,
    pub forced: bool,
}

/// A maximal valid tag vector together with its decision trail. Nodes
/// absent from the trail were never pinned and end up `Free`.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub tags: Vec<Tag>,
    pub derivation: Vec<Decision>,
}

fn required_tag(atom: &Atom) -> Option<(usize, Tag)> {
    match atom {
        Atom::W(i) => Some((*i, Tag::Zero)),
        Atom::Root1(i) => Some((*i, Tag::Root1)),
        Atom::Root2(i) => Some((*i, Tag::Root2)),
        Atom::Generic(_) => None,
    }
}

fn undo_to(state: &mut [Option<Tag>], trail: &mut Vec<Decision>, mark: usize) {
    while trail.len() > mark {
        let d = trail.pop().expect("trail at least mark long");
        state[d.node] = None;
    }
}

fn search(
    cs: &ConstraintSet,
    state: &mut Vec<Option<Tag>>,
    trail: &mut Vec<Decision>,
    found: &mut BTreeMap<Vec<Tag>, SolutionFamily>,
) {
    let mark = trail.len();
    loop {
        let mut forced: Option<(usize, Tag)> = None;
        let mut split: Option<Vec<(usize, Tag)>> = None;
        for c in &cs.constraints {
            let mut killed = false;
            let mut viable: Vec<(usize, Tag)> = Vec::new();
            for atom in &c.atoms {
                let Some((node, tag)) = required_tag(atom) else { continue };
                match state[node] {
                    Some(t) if t == tag => {
                        killed = true;
                        break;
                    }
                    Some(_) => {}
                    None => viable.push((node, tag)),
                }
            }
            if killed {
                continue;
            }
            match viable.len() {
                0 => {
                    // No atom of this constraint can still vanish.
                    undo_to(state, trail, mark);
                    return;
                }
                1 => {
                    forced = Some(viable[0]);
                    break;
                }
                _ => {
                    if split.is_none() {
                        split = Some(viable);
                    }
                }
            }
        }
        if let Some((node, tag)) = forced {
            state[node] = Some(tag);
            trail.push(Decision { node, tag, forced: true });
            continue;
        }
        match split {
            None => {
                // Every constraint is killed; unpinned nodes stay free.
                let tags: Vec<Tag> =
                    state.iter().map(|s| s.unwrap_or(Tag::Free)).collect();
                found.entry(tags.clone()).or_insert_with(|| SolutionFamily {
                    tags,
                    derivation: trail.clone(),
                });
            }
            Some(choices) => {
                for (node, tag) in choices {
                    state[node] = Some(tag);
                    trail.push(Decision { node, tag, forced: false });
                    search(cs, state, trail, found);
                    trail.pop();
                    state[node] = None;
                }
            }
        }
        undo_to(state, trail, mark);
        return;
    }
}

/// Enumerates the maximal valid families, in canonical (tag-vector) order.
/// Case splits branch over which atom kills a constraint; single-choice
/// constraints propagate without branching; dominated leaves are dropped.
pub fn enumerate_families(cs: &ConstraintSet, dg: &AffineDiagram) -> Vec<SolutionFamily> {
    let mut state: Vec<Option<Tag>> = vec![None; dg.n_nodes];
    let mut trail: Vec<Decision> = Vec::new();
    let mut found: BTreeMap<Vec<Tag>, SolutionFamily> = BTreeMap::new();
    search(cs, &mut state, &mut trail, &mut found);
    let keys: Vec<Vec<Tag>> = found.keys().cloned().collect();
    found
        .into_iter()
        .filter(|(tags, _)| !keys.iter().any(|o| o != tags && subsumes(o, tags)))
        .map(|(_, fam)| fam)
        .collect()
}

/// Exhaustive oracle: all `4^n` tag vectors, filtered to the valid maximal
/// ones, in canonical order. Exponential, for small diagrams only.
pub fn brute_force_families(cs: &ConstraintSet, n_nodes: usize) -> Vec<Vec<Tag>> {
    const TAGS: [Tag; 4] = [Tag::Zero, Tag::Root1, Tag::Root2, Tag::Free];
    assert!(n_nodes <= 10, "brute force is 4^n");
    let mut valid: Vec<Vec<Tag>> = Vec::new();
    for code in 0..4usize.pow(n_nodes as u32) {
        let mut rest = code;
        let tags: Vec<Tag> = (0..n_nodes)
            .map(|_| {
                let t = TAGS[rest % 4];
                rest /= 4;
                t
            })
            .collect();
        if cs.is_valid(&tags) {
            valid.push(tags);
        }
    }
    let mut maximal: Vec<Vec<Tag>> = valid
        .iter()
        .filter(|f| !valid.iter().any(|g| &g != f && subsumes(g, f)))
        .cloned()
        .collect();
    maximal.sort();
    maximal
}

/// How a computed family relates to the encoded reference lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchKind {
    /// Equal to a listed family.
    Exact,
    /// Strictly contains a listed family.
    SubsumesExpected,
    /// Covers no listed family.
    Extra,
}

impl MatchKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MatchKind::Exact => "exact",
            MatchKind::SubsumesExpected => "subsumed",
            MatchKind::Extra => "extra",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub families: Vec<(SolutionFamily, MatchKind)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareError {
    /// No reference list is encoded for this diagram.
    NoTable,
    /// A listed family is contained in no computed family.
    Uncovered(Vec<Tag>),
}

impl core::fmt::Display for CompareError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CompareError::NoTable => write!(f, "no reference family list for this type"),
            CompareError::Uncovered(tags) => {
                write!(f, "reference family not covered by the enumeration: [")?;
                for (k, t) in tags.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", t.as_str())?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Reference family lists per affine type, including the blanket all-zero
/// family, encoded as tag patterns in this crate's node numbering. `None`
/// for `a1^1`, whose boundary parameters are unconstrained.
pub fn expected_families(dg: &AffineDiagram) -> Option<Vec<Vec<Tag>>> {
    let n = dg.n_nodes;
    let all = |t: Tag| vec![t; n];
    let series = dg.id.as_bytes()[0] as char;
    let caret = dg.id.find('^').expect("canonical id");
    let rank: usize = dg.id[1..caret].parse().expect("canonical id");
    let twist: u32 = dg.id[caret + 1..].parse().expect("canonical id");

    let mut lists: Vec<Vec<Tag>> = match (series, twist) {
        ('a', 1) if rank == 1 => return None,
        ('a', 1) | ('d', 1) | ('e', 1) => vec![all(Tag::Root1)],
        ('b', 1) => {
            let mut f = all(Tag::Root1);
            f[n - 1] = Tag::Free;
            vec![f]
        }
        ('c', 1) => {
            let mut f = all(Tag::Zero);
            f[0] = Tag::Free;
            f[n - 1] = Tag::Free;
            vec![all(Tag::Root1), f]
        }
        ('f', 1) => {
            let mut f = all(Tag::Root1);
            f[3] = Tag::Zero;
            f[4] = Tag::Zero;
            vec![all(Tag::Root1), f]
        }
        ('g', 1) => {
            let mut f = all(Tag::Root1);
            f[2] = Tag::Root2;
            vec![all(Tag::Root1), f]
        }
        ('a', 2) if rank == 2 => {
            vec![vec![Tag::Root1, Tag::Free], vec![Tag::Free, Tag::Zero]]
        }
        ('a', 2) if rank == 4 => vec![
            vec![Tag::Free, Tag::Root1, Tag::Root1],
            vec![Tag::Zero, Tag::Free, Tag::Root1],
            vec![Tag::Zero, Tag::Zero, Tag::Free],
        ],
        ('a', 2) if rank % 2 == 0 => {
            let mut f1 = all(Tag::Root1);
            f1[0] = Tag::Free;
            let mut f2 = all(Tag::Zero);
            f2[n - 1] = Tag::Free;
            vec![f1, f2]
        }
        ('a', 2) => {
            let mut f = all(Tag::Zero);
            f[n - 1] = Tag::Free;
            vec![all(Tag::Root1), f]
        }
        ('d', 2) => {
            let mut f = all(Tag::Root1);
            f[0] = Tag::Free;
            f[n - 1] = Tag::Free;
            vec![f]
        }
        ('e', 2) => {
            let mut f = all(Tag::Zero);
            f[3] = Tag::Root1;
            f[4] = Tag::Root1;
            vec![all(Tag::Root1), f]
        }
        ('d', 3) => vec![all(Tag::Root1)],
        _ => return None,
    };
    lists.push(all(Tag::Zero));
    lists.sort();
    lists.dedup();
    Some(lists)
}

/// Checks the computed families against the encoded reference list. Every
/// listed family must be covered by (contained in) some computed family;
/// each computed family is then flagged by how it relates to the list.
pub fn compare_with_expected(
    dg: &AffineDiagram,
    families: &[SolutionFamily],
) -> Result<ComparisonReport, CompareError> {
    let expected = expected_families(dg).ok_or(CompareError::NoTable)?;
    for e in &expected {
        if !families.iter().any(|f| subsumes(&f.tags, e)) {
            return Err(CompareError::Uncovered(e.clone()));
        }
    }
    let families = families
        .iter()
        .map(|f| {
            let kind = if expected.iter().any(|e| *e == f.tags) {
                MatchKind::Exact
            } else if expected.iter().any(|e| subsumes(&f.tags, e)) {
                MatchKind::SubsumesExpected
            } else {
                MatchKind::Extra
            };
            (f.clone(), kind)
        })
        .collect();
    Ok(ComparisonReport { families })
}

/// Numeric value of one node under a family at a concrete `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NodeValue {
    Fixed(Complex<f64>),
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericError {
    /// `t^{d_i} - t^{-d_i}` vanishes at the chosen `t`.
    VanishingDenominator { node: usize },
}

impl core::fmt::Display for NumericError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NumericError::VanishingDenominator { node } => {
                write!(f, "root denominator vanishes at node {node}")
            }
        }
    }
}

fn cpow(z: Complex<f64>, e: u32) -> Complex<f64> {
    let mut out = Complex::new(1.0, 0.0);
    for _ in 0..e {
        out *= z;
    }
    out
}

/// Representative roots per tag, with `q_i = t^{2 d_i}`:
/// `Root1 -> i/(t^{d_i} - t^{-d_i})` and
/// `Root2 -> i (q_i + q_i^-1 - 1)/(t^{d_i} - t^{-d_i})`; the second root of
/// each quadratic is the negative. `Zero -> 0`; `Free` stays symbolic.
pub fn instantiate_numeric(
    dg: &AffineDiagram,
    family: &SolutionFamily,
    tval: Complex<f64>,
) -> Result<Vec<NodeValue>, NumericError> {
    let one = Complex::new(1.0, 0.0);
    let i_unit = Complex::new(0.0, 1.0);
    family
        .tags
        .iter()
        .enumerate()
        .map(|(node, tag)| {
            if matches!(tag, Tag::Free) {
                return Ok(NodeValue::Free);
            }
            if matches!(tag, Tag::Zero) {
                return Ok(NodeValue::Fixed(Complex::new(0.0, 0.0)));
            }
            let s = cpow(tval, dg.d[node]);
            let den = s - one / s;
            if den.norm_sqr() < 1e-18 {
                return Err(NumericError::VanishingDenominator { node });
            }
            let value = match tag {
                Tag::Root1 => i_unit / den,
                Tag::Root2 => {
                    let q = s * s;
                    i_unit * (q + one / q - one) / den
                }
                Tag::Zero | Tag::Free => unreachable!(),
            };
            Ok(NodeValue::Fixed(value))
        })
        .collect()
}
