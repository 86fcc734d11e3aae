//! Affine Dynkin diagrams: Cartan matrices, symmetrizers, marks.
//!
//! Types are named by an id string `<series><rank>^<twist>`, e.g. `a2^1`,
//! `d4^3`. Every standard affine family is supported:
//!
//! * twist 1: `a1^1`, `an^1` (n >= 2), `bn^1` (n >= 3), `cn^1` (n >= 2),
//!   `dn^1` (n >= 4), `e6^1`, `e7^1`, `e8^1`, `f4^1`, `g2^1`;
//! * twist 2: `a2^2`, `a{2n}^2` (n >= 2), `a{2n-1}^2` (n >= 3),
//!   `d{n+1}^2` (n >= 2), `e6^2`;
//! * twist 3: `d4^3`.
//!
//! Conventions, fixed once here and relied on everywhere else:
//!
//! * nodes are `0..n_nodes`, with node 0 the affine node;
//! * `a[i][j]` is the Cartan integer; for a linked pair the longer root's row
//!   carries the entry closer to 0 (so `a[i][j] = -1` means node `i` is at
//!   least as long as node `j`);
//! * `d` is the minimal positive integer symmetrizer, `d_i a_ij = d_j a_ji`,
//!   and node `i` works in `q_i = q^{d_i} = t^{2 d_i}` (the global base is
//!   `q = t^2`, so `q_i^{1/2} = t^{d_i}` stays polynomial);
//! * `marks` is the positive generator of the right kernel, `A m = 0`, with
//!   entry gcd 1.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

/// One affine Dynkin diagram with its standard numerical data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDiagram {
    /// Canonical id, e.g. `"b3^1"`.
    pub id: String,
    pub n_nodes: usize,
    /// Cartan matrix, `a[i][j]`.
    pub a: Vec<Vec<i64>>,
    /// Minimal positive symmetrizer.
    pub d: Vec<u32>,
    /// Marks: positive right-kernel vector of the Cartan matrix, gcd 1.
    pub marks: Vec<u64>,
}

/// Shape of the bond between two nodes, ignoring orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    Unlinked,
    /// `(-1, -1)`
    Simple,
    /// `{-1, -2}`
    Double,
    /// `{-1, -3}`
    Triple,
    /// `{-1, -4}`
    Quadruple,
    /// `(-2, -2)`, the rank-1 affine diagram only.
    DoubleDouble,
}

impl LinkKind {
    pub fn of(aij: i64, aji: i64) -> LinkKind {
        match (aij.min(aji), aij.max(aji)) {
            (0, 0) => LinkKind::Unlinked,
            (-1, -1) => LinkKind::Simple,
            (-2, -1) => LinkKind::Double,
            (-3, -1) => LinkKind::Triple,
            (-4, -1) => LinkKind::Quadruple,
            (-2, -2) => LinkKind::DoubleDouble,
            _ => panic!("not an affine bond: ({}, {})", aij, aji),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LinkKind::Unlinked => "unlinked",
            LinkKind::Simple => "simple",
            LinkKind::Double => "double",
            LinkKind::Triple => "triple",
            LinkKind::Quadruple => "quadruple",
            LinkKind::DoubleDouble => "double-double",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// Not of the form `<letter><digits>^<digits>`.
    Malformed(String),
    /// Well formed but not an affine type (with a hint when a standard
    /// alias exists).
    Unknown(String),
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseError::Malformed(s) => {
                write!(f, "malformed type id {:?}: expected e.g. \"a2^1\", \"d4^3\"", s)
            }
            ParseError::Unknown(s) => write!(f, "{}", s),
        }
    }
}

/// Edge list entry: `(i, j, a_ij, a_ji)`.
type Edge = (usize, usize, i64, i64);

fn assemble(
    id: String,
    n_nodes: usize,
    edges: &[Edge],
    d: Vec<u32>,
    marks: Vec<u64>,
) -> AffineDiagram {
    let mut a = vec![vec![0i64; n_nodes]; n_nodes];
    for i in 0..n_nodes {
        a[i][i] = 2;
    }
    for &(i, j, aij, aji) in edges {
        a[i][j] = aij;
        a[j][i] = aji;
    }
    let dg = AffineDiagram { id, n_nodes, a, d, marks };
    dg.validate().expect("built-in diagram table is consistent");
    dg
}

impl AffineDiagram {
    /// Parses and builds a diagram from its id. Accepts surrounding
    /// whitespace and uppercase series letters.
    pub fn from_id(id: &str) -> Result<Self, ParseError> {
        let raw = id.trim();
        let norm: String = raw.to_lowercase();
        let bytes = norm.as_bytes();
        let malformed = || ParseError::Malformed(raw.to_string());
        if bytes.len() < 4 || !bytes[0].is_ascii_alphabetic() {
            return Err(malformed());
        }
        let series = bytes[0] as char;
        let caret = norm.find('^').ok_or_else(malformed)?;
        let rank: u32 = norm[1..caret].parse().map_err(|_| malformed())?;
        let twist: u32 = norm[caret + 1..].parse().map_err(|_| malformed())?;
        Self::build(series, rank, twist).ok_or_else(|| {
            let hint = match (series, rank, twist) {
                ('b', 2, 1) => " (b2^1 is c2^1 here)",
                ('d', 3, 1) => " (d3^1 is a3^1 here)",
                ('a', 3, 2) => " (a3^2 is d3^2 here)",
                _ => "",
            };
            ParseError::Unknown(format!("no affine type {}{}^{}{}", series, rank, twist, hint))
        })
    }

    fn build(series: char, rank: u32, twist: u32) -> Option<Self> {
        let id = format!("{}{}^{}", series, rank, twist);
        let n = rank as usize;
        let simple = |i: usize, j: usize| -> Edge { (i, j, -1, -1) };
        Some(match (series, rank, twist) {
            ('a', 1, 1) => assemble(id, 2, &[(0, 1, -2, -2)], vec![1, 1], vec![1, 1]),
            ('a', _, 1) if rank >= 2 => {
                let mut edges: Vec<Edge> = (0..n).map(|i| simple(i, i + 1)).collect();
                edges.push(simple(0, n));
                assemble(id, n + 1, &edges, vec![1; n + 1], vec![1; n + 1])
            }
            ('b', _, 1) if rank >= 3 => {
                let mut edges = vec![simple(0, 2), simple(1, 2)];
                for i in 2..n - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((n - 1, n, -1, -2));
                let mut d = vec![2; n + 1];
                d[n] = 1;
                let mut marks = vec![2; n + 1];
                marks[0] = 1;
                marks[1] = 1;
                assemble(id, n + 1, &edges, d, marks)
            }
            ('c', _, 1) if rank >= 2 => {
                let mut edges = vec![(0, 1, -1, -2)];
                for i in 1..n - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((n - 1, n, -2, -1));
                let mut d = vec![1; n + 1];
                d[0] = 2;
                d[n] = 2;
                let mut marks = vec![2; n + 1];
                marks[0] = 1;
                marks[n] = 1;
                assemble(id, n + 1, &edges, d, marks)
            }
            ('d', _, 1) if rank >= 4 => {
                let mut edges = vec![simple(0, 2), simple(1, 2)];
                for i in 2..n - 2 {
                    edges.push(simple(i, i + 1));
                }
                edges.push(simple(n - 2, n - 1));
                edges.push(simple(n - 2, n));
                let mut marks = vec![2; n + 1];
                marks[0] = 1;
                marks[1] = 1;
                marks[n - 1] = 1;
                marks[n] = 1;
                assemble(id, n + 1, &edges, vec![1; n + 1], marks)
            }
            ('e', 6, 1) => assemble(
                id,
                7,
                &[
                    simple(1, 2),
                    simple(2, 3),
                    simple(3, 4),
                    simple(4, 5),
                    simple(3, 6),
                    simple(6, 0),
                ],
                vec![1; 7],
                vec![1, 1, 2, 3, 2, 1, 2],
            ),
            ('e', 7, 1) => assemble(
                id,
                8,
                &[
                    simple(0, 1),
                    simple(1, 2),
                    simple(2, 3),
                    simple(3, 4),
                    simple(4, 5),
                    simple(5, 6),
                    simple(3, 7),
                ],
                vec![1; 8],
                vec![1, 2, 3, 4, 3, 2, 1, 2],
            ),
            ('e', 8, 1) => assemble(
                id,
                9,
                &[
                    simple(1, 2),
                    simple(2, 3),
                    simple(3, 4),
                    simple(4, 5),
                    simple(5, 6),
                    simple(6, 7),
                    simple(7, 0),
                    simple(3, 8),
                ],
                vec![1; 9],
                vec![1, 2, 4, 6, 5, 4, 3, 2, 3],
            ),
            ('f', 4, 1) => assemble(
                id,
                5,
                &[simple(0, 1), simple(1, 2), (2, 3, -1, -2), simple(3, 4)],
                vec![2, 2, 2, 1, 1],
                vec![1, 2, 3, 4, 2],
            ),
            ('g', 2, 1) => assemble(
                id,
                3,
                &[simple(0, 1), (1, 2, -1, -3)],
                vec![3, 3, 1],
                vec![1, 2, 3],
            ),
            ('a', 2, 2) => assemble(id, 2, &[(0, 1, -1, -4)], vec![4, 1], vec![1, 2]),
            ('a', _, 2) if rank >= 4 && rank % 2 == 0 => {
                // a_{2m}^2, nodes 0..m.
                let m = n / 2;
                let mut edges = vec![(0, 1, -2, -1)];
                for i in 1..m - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((m - 1, m, -2, -1));
                let mut d = vec![2; m + 1];
                d[0] = 1;
                d[m] = 4;
                let mut marks = vec![2; m + 1];
                marks[m] = 1;
                assemble(id, m + 1, &edges, d, marks)
            }
            ('a', _, 2) if rank >= 5 && rank % 2 == 1 => {
                // a_{2m-1}^2, nodes 0..m.
                let m = (n + 1) / 2;
                let mut edges = vec![simple(0, 2), simple(1, 2)];
                for i in 2..m - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((m - 1, m, -2, -1));
                let mut d = vec![1; m + 1];
                d[m] = 2;
                let mut marks = vec![2; m + 1];
                marks[0] = 1;
                marks[1] = 1;
                marks[m] = 1;
                assemble(id, m + 1, &edges, d, marks)
            }
            ('d', _, 2) if rank >= 3 => {
                // d_{m+1}^2 with m+1 = rank, nodes 0..m.
                let m = n - 1;
                let mut edges = vec![(0, 1, -2, -1)];
                for i in 1..m - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((m - 1, m, -1, -2));
                let mut d = vec![2; m + 1];
                d[0] = 1;
                d[m] = 1;
                assemble(id, m + 1, &edges, d, vec![1; m + 1])
            }
            ('e', 6, 2) => assemble(
                id,
                5,
                &[simple(0, 1), simple(1, 2), (2, 3, -2, -1), simple(3, 4)],
                vec![1, 1, 1, 2, 2],
                vec![1, 2, 3, 2, 1],
            ),
            ('d', 4, 3) => assemble(
                id,
                3,
                &[simple(0, 1), (1, 2, -3, -1)],
                vec![1, 1, 3],
                vec![1, 2, 1],
            ),
            _ => return None,
        })
    }

    /// Consistency of the numerical data: Cartan shape, symmetrizability,
    /// marks positive with gcd 1 in the right kernel.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n_nodes;
        if self.a.len() != n || self.d.len() != n || self.marks.len() != n {
            return Err("dimension mismatch".to_string());
        }
        for i in 0..n {
            if self.a[i].len() != n {
                return Err("ragged matrix".to_string());
            }
            if self.a[i][i] != 2 {
                return Err(format!("a[{i}][{i}] != 2"));
            }
            for j in 0..n {
                if i != j {
                    if self.a[i][j] > 0 || self.a[i][j] < -4 {
                        return Err(format!("a[{i}][{j}] out of range"));
                    }
                    if (self.a[i][j] == 0) != (self.a[j][i] == 0) {
                        return Err(format!("asymmetric zero pattern at ({i},{j})"));
                    }
                    if self.d[i] as i64 * self.a[i][j] != self.d[j] as i64 * self.a[j][i] {
                        return Err(format!("symmetrizer fails at ({i},{j})"));
                    }
                }
            }
            if self.d[i] == 0 || self.marks[i] == 0 {
                return Err(format!("nonpositive data at node {i}"));
            }
            let row: i64 = (0..n).map(|j| self.a[i][j] * self.marks[j] as i64).sum();
            if row != 0 {
                return Err(format!("marks are not in the kernel at row {i}"));
            }
        }
        let g = self.marks.iter().fold(0u64, |acc, &m| gcd_u64(acc, m));
        if g != 1 {
            return Err("marks not primitive".to_string());
        }
        Ok(())
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n_nodes).filter(|&j| j != i && self.a[i][j] != 0).collect()
    }

    /// Linked unordered pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn linked_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n_nodes {
            for j in i + 1..self.n_nodes {
                if self.a[i][j] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn link_kind(&self, i: usize, j: usize) -> LinkKind {
        LinkKind::of(self.a[i][j], self.a[j][i])
    }

    /// The common factor of the two symmetrizer entries. A pair with
    /// `bond_scale > 1` is the minimal rank-2 system of the same bond shape
    /// with `t` replaced by `t^scale`.
    pub fn bond_scale(&self, i: usize, j: usize) -> u32 {
        gcd_u64(self.d[i] as u64, self.d[j] as u64) as u32
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}
