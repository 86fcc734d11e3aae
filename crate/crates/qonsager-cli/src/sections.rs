//! Computation behind each subcommand, detached from output formatting.
//! Everything here returns plain owned data so the three emitters can walk
//! it without touching core types, and so pair jobs can run on worker
//! threads and still merge into a canonical order.

use rayon::prelude::*;

use qonsager_core::cartan::AffineDiagram;
use qonsager_core::classify::{
    compare_with_expected, constraints_for, enumerate_families, CompareError, MatchKind,
};
use qonsager_core::coaction::verify_coaction_pair;
use qonsager_core::homver::{
    check_bar_symmetry, verify_pair, Realization, Variant, VerifyError,
};
use qonsager_core::onsager::Oq;
use qonsager_core::uqreduce::{relation_word_bound, Reducer, Uq};

/// exit 2 for `Usage`, exit 1 for `Math`.
pub enum CmdError {
    Usage(String),
    Math(String),
}

pub fn parse_diagram(id: &str) -> Result<AffineDiagram, CmdError> {
    AffineDiagram::from_id(id).map_err(|e| CmdError::Usage(e.to_string()))
}

/// Runs one closure per input, in order, on up to `workers` threads
/// (0 = library default). Result order never depends on the worker count.
pub fn run_parallel<I, O, F>(inputs: Vec<I>, f: F, workers: usize) -> Vec<O>
where
    I: Send + Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    if workers == 1 || inputs.len() <= 1 {
        return inputs.iter().map(&f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool");
    pool.install(|| inputs.par_iter().map(&f).collect())
}

pub struct LinkData {
    pub i: usize,
    pub j: usize,
    pub kind: &'static str,
}

pub struct DiagramData {
    pub id: String,
    pub nodes: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<u32>,
    pub marks: Vec<u64>,
    pub links: Vec<LinkData>,
}

pub fn diagram_data(dg: &AffineDiagram) -> DiagramData {
    DiagramData {
        id: dg.id.clone(),
        nodes: dg.n_nodes,
        cartan: dg.a.clone(),
        symmetrizers: dg.d.clone(),
        marks: dg.marks.clone(),
        links: dg
            .linked_pairs()
            .into_iter()
            .map(|(i, j)| LinkData { i, j, kind: dg.link_kind(i, j).as_str() })
            .collect(),
    }
}

pub struct CoactionData {
    pub x: usize,
    pub y: usize,
    /// (left monomial, right element) pairs, canonical order.
    pub intermediate: Vec<(String, String)>,
    pub factors_through_relation: bool,
    pub residual: Vec<(String, String)>,
}

impl CoactionData {
    pub fn residual_zero(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn ok(&self) -> bool {
        self.factors_through_relation && self.residual.is_empty()
    }
}

pub struct PairData {
    pub x: usize,
    pub y: usize,
    /// (symbol name, rendered value), by ascending index.
    pub rho: Vec<(String, String)>,
    /// Each constraint as its atom descriptions.
    pub constraints: Vec<Vec<String>>,
    pub defect_monomials: usize,
    pub raw_expansion: u64,
    pub nf_monomials: usize,
    /// Present on report jobs: the inverse-group-factor run matched.
    pub bar_agrees: Option<bool>,
    pub coaction: Option<CoactionData>,
}

fn verify_err_string(dg_id: &str, x: usize, y: usize, e: &VerifyError) -> String {
    format!("{dg_id} pair ({x},{y}): verification failed: {e:?}")
}

/// One ordered-pair job: verify, optionally cross-check the inverse-group
/// embedding, optionally run the comodule check (which reuses the reducer
/// cache the verification warmed).
fn pair_job(
    dg: &AffineDiagram,
    x: usize,
    y: usize,
    variant: Variant,
    with_bar: bool,
    with_coaction: bool,
) -> Result<PairData, CmdError> {
    let uq = Uq::new(dg, relation_word_bound(dg));
    let oq = Oq::new(dg);
    let mut real = Realization::with_variant(dg, variant);
    let mut red = Reducer::new(&uq);
    let pv = verify_pair(&uq, &oq, &mut real, &mut red, x, y)
        .map_err(|e| CmdError::Math(verify_err_string(&dg.id, x, y, &e)))?;

    let bar_agrees = if with_bar {
        let other = match variant {
            Variant::Standard => Variant::Bar,
            Variant::Bar => Variant::Standard,
        };
        let mut real2 = Realization::with_variant(dg, other);
        let pv2 = verify_pair(&uq, &oq, &mut real2, &mut red, x, y)
            .map_err(|e| CmdError::Math(verify_err_string(&dg.id, x, y, &e)))?;
        Some(check_bar_symmetry(&pv, &pv2))
    } else {
        None
    };

    let coaction = if with_coaction {
        let out = verify_coaction_pair(&uq, &oq, &mut real, &mut red, &pv.rho, x, y);
        Some(CoactionData {
            x,
            y,
            intermediate: out
                .intermediate
                .iter()
                .map(|(m, p)| (uq.alg.render_mono(m), oq.alg.render(p, &real.st)))
                .collect(),
            factors_through_relation: out.factors_through_relation,
            residual: out
                .residual
                .iter()
                .map(|(m, p)| (uq.alg.render_mono(m), oq.alg.render(p, &real.st)))
                .collect(),
        })
    } else {
        None
    };

    Ok(PairData {
        x,
        y,
        rho: pv
            .rho
            .iter()
            .map(|(s, v)| (real.st.name(*s).to_string(), v.render(&real.st)))
            .collect(),
        constraints: pv
            .constraints
            .iter()
            .map(|c| c.atoms.iter().map(|a| a.describe(&real)).collect())
            .collect(),
        defect_monomials: pv.defect_monomials,
        raw_expansion: pv.raw_expansion,
        nf_monomials: pv.nf_monomials,
        bar_agrees,
        coaction,
    })
}

/// All ordered linked pairs, both directions, lexicographic.
pub fn ordered_pairs(dg: &AffineDiagram) -> Vec<(usize, usize)> {
    let mut dirs = Vec::new();
    for (i, j) in dg.linked_pairs() {
        dirs.push((i, j));
        dirs.push((j, i));
    }
    dirs.sort();
    dirs
}

pub fn verify_pairs(
    dg: &AffineDiagram,
    dirs: &[(usize, usize)],
    variant: Variant,
    with_bar: bool,
    with_coaction: bool,
    workers: usize,
) -> Result<Vec<PairData>, CmdError> {
    let results = run_parallel(
        dirs.to_vec(),
        |&(x, y)| pair_job(dg, x, y, variant, with_bar, with_coaction),
        workers,
    );
    results.into_iter().collect()
}

pub struct GateData {
    pub completion_len: usize,
    pub overlaps_checked: usize,
    pub all_join: bool,
}

/// Joinability evidence for the rule set actually used, one notch past the
/// longest relation word.
pub fn gate_data(dg: &AffineDiagram) -> GateData {
    let len = relation_word_bound(dg) + 1;
    let uq = Uq::new(dg, len);
    let rep = uq.overlap_report(len);
    GateData {
        completion_len: len,
        overlaps_checked: rep.checked,
        all_join: rep.all_join(),
    }
}

pub struct FamilyData {
    pub tags: Vec<&'static str>,
    /// None when no reference list covers the diagram.
    pub reference_match: Option<&'static str>,
}

pub struct ClassifyData {
    pub constraints: Vec<Vec<String>>,
    pub families: Vec<FamilyData>,
    /// False only when a reference family went uncovered (a math failure).
    pub ok: bool,
    pub failure: Option<String>,
}

pub fn classify_data(dg: &AffineDiagram) -> ClassifyData {
    let real = Realization::new(dg);
    let cs = constraints_for(dg);
    let fams = enumerate_families(&cs, dg);
    let constraints = cs
        .constraints
        .iter()
        .map(|c| c.atoms.iter().map(|a| a.describe(&real)).collect())
        .collect();
    match compare_with_expected(dg, &fams) {
        Ok(report) => {
            let extra = report
                .families
                .iter()
                .any(|(_, kind)| *kind == MatchKind::Extra);
            ClassifyData {
                constraints,
                families: report
                    .families
                    .iter()
                    .map(|(f, kind)| FamilyData {
                        tags: f.tags.iter().map(|t| t.as_str()).collect(),
                        reference_match: Some(kind.as_str()),
                    })
                    .collect(),
                ok: !extra,
                failure: extra.then(|| {
                    "a computed family matches no reference family".to_string()
                }),
            }
        }
        Err(CompareError::NoTable) => ClassifyData {
            constraints,
            families: fams
                .iter()
                .map(|f| FamilyData {
                    tags: f.tags.iter().map(|t| t.as_str()).collect(),
                    reference_match: None,
                })
                .collect(),
            ok: true,
            failure: None,
        },
        Err(CompareError::Uncovered(tags)) => ClassifyData {
            constraints,
            families: fams
                .iter()
                .map(|f| FamilyData {
                    tags: f.tags.iter().map(|t| t.as_str()).collect(),
                    reference_match: None,
                })
                .collect(),
            ok: false,
            failure: Some(format!(
                "reference family {:?} is not covered by any computed family",
                tags.iter().map(|t| t.as_str()).collect::<Vec<_>>()
            )),
        },
    }
}

/// Coaction for one ordered pair, standalone (own engine and cache).
pub fn coaction_for_pair(
    dg: &AffineDiagram,
    x: usize,
    y: usize,
) -> Result<CoactionData, CmdError> {
    let pd = pair_job(dg, x, y, Variant::Standard, false, true)?;
    Ok(pd.coaction.expect("requested"))
}

pub fn validate_pair(dg: &AffineDiagram, x: usize, y: usize) -> Result<(), CmdError> {
    if x >= dg.n_nodes || y >= dg.n_nodes {
        return Err(CmdError::Usage(format!(
            "pair ({x},{y}) out of range for {} ({} nodes)",
            dg.id, dg.n_nodes
        )));
    }
    if x == y {
        return Err(CmdError::Usage("pair nodes must differ".to_string()));
    }
    Ok(())
}
