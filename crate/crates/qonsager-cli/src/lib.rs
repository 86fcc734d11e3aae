//! Command-line front end: orchestrates the core engine per subcommand and
//! emits JSON, plain text, or LaTeX. Exit codes: 0 all checks passed,
//! 1 a mathematical check failed, 2 usage error. Output bytes depend only
//! on the arguments, never on worker count or timing (timings are opt-in).

mod latex;
pub mod sections;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qonsager_core::homver::Variant;

use latex::{latexify, latexify_tensor};
use sections::{
    classify_data, coaction_for_pair, diagram_data, gate_data, ordered_pairs,
    parse_diagram, validate_pair, verify_pairs, ClassifyData, CmdError, CoactionData,
    DiagramData, GateData, PairData,
};

#[derive(Parser)]
#[command(
    name = "qonsager",
    version,
    about = "Exact verification, classification, and reporting for generalized \
             q-Onsager algebras over affine Dynkin diagrams"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for pair jobs (0 = all cores); output bytes do not
    /// depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Append wall-clock timing fields (ignored by golden comparisons).
    #[arg(long, global = true, default_value_t = false)]
    timings: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Group factors K and K^2.
    Std,
    /// Group factors K^-1 and K^-2.
    Bar,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Std => Variant::Standard,
            VariantArg::Bar => Variant::Bar,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a diagram's Cartan data.
    Cartan { id: String },
    /// Solve structure constants and boundary constraints per ordered pair.
    Verify {
        id: String,
        /// Restrict to one ordered pair of nodes.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = VariantArg::Std)]
        variant: VariantArg,
    },
    /// Enumerate maximal boundary families and compare with the reference
    /// lists.
    Classify { id: String },
    /// Check the comodule structure map on one ordered pair.
    Coaction {
        id: String,
        #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
        pair: Vec<usize>,
    },
    /// Full dossier: Cartan data, verification with gates and the
    /// inverse-group-factor cross-check, comodule checks, classification.
    Report { id: String },
}

struct Output {
    json: Value,
    text: String,
    latex: String,
    ok: bool,
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let started = std::time::Instant::now();
    match execute(&cli) {
        Ok(mut out) => {
            if cli.timings {
                out.json["elapsedMs"] = json!(started.elapsed().as_millis() as u64);
                out.text
                    .push_str(&format!("elapsed: {} ms\n", started.elapsed().as_millis()));
            }
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("tree of plain values")
                ),
                Format::Text => print!("{}", out.text),
                Format::Latex => print!("{}", out.latex),
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(CmdError::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(CmdError::Math(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, CmdError> {
    match &cli.command {
        Cmd::Cartan { id } => cmd_cartan(id),
        Cmd::Verify { id, pair, variant } => cmd_verify(id, pair, *variant, cli.workers),
        Cmd::Classify { id } => cmd_classify(id),
        Cmd::Coaction { id, pair } => cmd_coaction(id, pair),
        Cmd::Report { id } => cmd_report(id, cli.workers),
    }
}

fn diagram_value(dd: &DiagramData) -> Value {
    json!({
        "nodes": dd.nodes,
        "cartanMatrix": dd.cartan,
        "symmetrizers": dd.symmetrizers,
        "marks": dd.marks,
        "links": dd.links.iter().map(|l| json!({
            "pair": [l.i, l.j],
            "kind": l.kind,
        })).collect::<Vec<_>>(),
    })
}

fn diagram_text(dd: &DiagramData) -> String {
    let mut s = format!("algebra {}: {} nodes\n", dd.id, dd.nodes);
    s.push_str("cartan matrix:\n");
    for row in &dd.cartan {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        s.push_str(&format!("  {}\n", cells.join(" ")));
    }
    let fmt_u32 = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let fmt_u64 = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    s.push_str(&format!("symmetrizers: {}\n", fmt_u32(&dd.symmetrizers)));
    s.push_str(&format!("marks: {}\n", fmt_u64(&dd.marks)));
    let links: Vec<String> = dd
        .links
        .iter()
        .map(|l| format!("({},{}) {}", l.i, l.j, l.kind))
        .collect();
    s.push_str(&format!("links: {}\n", links.join("; ")));
    s
}

fn diagram_latex(dd: &DiagramData) -> String {
    let mut s = format!("% Cartan data for {}\n", dd.id);
    s.push_str("\\[ A = \\begin{pmatrix}\n");
    for row in &dd.cartan {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("  {} \\\\\n", cells.join(" & ")));
    }
    s.push_str("\\end{pmatrix} \\]\n");
    let ds: Vec<String> = dd.symmetrizers.iter().map(|x| x.to_string()).collect();
    let ms: Vec<String> = dd.marks.iter().map(|x| x.to_string()).collect();
    s.push_str(&format!("\\[ d = ({}), \\quad m = ({}) \\]\n", ds.join(", "), ms.join(", ")));
    s
}

fn cmd_cartan(id: &str) -> Result<Output, CmdError> {
    let dg = parse_diagram(id)?;
    let dd = diagram_data(&dg);
    let mut json = json!({
        "schemaVersion": 1,
        "command": "cartan",
        "algebra": dd.id,
    });
    merge(&mut json, diagram_value(&dd));
    Ok(Output {
        json,
        text: diagram_text(&dd),
        latex: diagram_latex(&dd),
        ok: true,
    })
}

/// Moves every field of `extra` into `target` (both must be objects).
fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        for (k, v) in e {
            t.insert(k, v);
        }
    }
}

fn constraint_text(c: &[String]) -> String {
    c.join(" * ")
}

fn pair_value(p: &PairData) -> Value {
    let mut v = json!({
        "pair": [p.x, p.y],
        "rho": p.rho.iter().map(|(s, val)| json!({
            "symbol": s,
            "value": val,
        })).collect::<Vec<_>>(),
        "constraints": p.constraints,
        "defectMonomials": p.defect_monomials,
        "rawExpansion": p.raw_expansion,
        "nfMonomials": p.nf_monomials,
        "residualZero": true,
    });
    if let Some(b) = p.bar_agrees {
        v["barAgrees"] = json!(b);
    }
    v
}

fn pair_text(p: &PairData) -> String {
    let mut s = format!("pair ({},{}):\n", p.x, p.y);
    for (sym, val) in &p.rho {
        s.push_str(&format!("  {sym} = {val}\n"));
    }
    if p.constraints.is_empty() {
        s.push_str("  no constraints\n");
    } else {
        s.push_str("  constraints:\n");
        for c in &p.constraints {
            s.push_str(&format!("    {}\n", constraint_text(c)));
        }
    }
    if let Some(b) = p.bar_agrees {
        s.push_str(&format!("  variant cross-check: {}\n", if b { "agrees" } else { "MISMATCH" }));
    }
    s.push_str(&format!(
        "  defect monomials {}, raw expansion {}, nf monomials {}\n",
        p.defect_monomials, p.raw_expansion, p.nf_monomials
    ));
    s
}

fn pair_latex(p: &PairData) -> String {
    let mut s = String::from("\\begin{align*}\n");
    for (sym, val) in &p.rho {
        s.push_str(&format!("  {} &= {} \\\\\n", latexify(sym), latexify(val)));
    }
    for c in &p.constraints {
        let prod: Vec<String> = c.iter().map(|a| latexify(a)).collect();
        s.push_str(&format!("  0 &= {} \\\\\n", prod.join("\\cdot ")));
    }
    s.push_str("\\end{align*}\n");
    s
}

fn gates_value(g: &GateData) -> Value {
    json!({
        "completionLen": g.completion_len,
        "overlapsChecked": g.overlaps_checked,
        "allJoin": g.all_join,
    })
}

fn cmd_verify(
    id: &str,
    pair: &Option<Vec<usize>>,
    variant: VariantArg,
    workers: usize,
) -> Result<Output, CmdError> {
    let dg = parse_diagram(id)?;
    let dirs = match pair {
        Some(p) => {
            validate_pair(&dg, p[0], p[1])?;
            vec![(p[0], p[1])]
        }
        None => ordered_pairs(&dg),
    };
    let pairs = verify_pairs(&dg, &dirs, variant.into(), false, false, workers)?;
    let gates = gate_data(&dg);
    let variant_str = Variant::from(variant).as_str();

    let json = json!({
        "schemaVersion": 1,
        "command": "verify",
        "algebra": dg.id,
        "variant": variant_str,
        "gates": gates_value(&gates),
        "pairs": pairs.iter().map(pair_value).collect::<Vec<_>>(),
    });

    let mut text = format!("verify {} ({})\n", dg.id, variant_str);
    text.push_str(&format!(
        "gates: completion length {}, {} overlaps checked, {}\n",
        gates.completion_len,
        gates.overlaps_checked,
        if gates.all_join { "all join" } else { "UNJOINABLE PAIRS" }
    ));
    for p in &pairs {
        text.push_str(&pair_text(p));
    }

    let mut latex = format!("% verification of {} ({})\n", dg.id, variant_str);
    for p in &pairs {
        latex.push_str(&format!("% pair ({},{})\n", p.x, p.y));
        latex.push_str(&pair_latex(p));
    }

    Ok(Output { json, text, latex, ok: gates.all_join })
}

fn classify_value(c: &ClassifyData) -> Value {
    json!({
        "constraints": c.constraints,
        "families": c.families.iter().map(|f| json!({
            "tags": f.tags,
            "referenceMatch": f.reference_match,
        })).collect::<Vec<_>>(),
        "failure": c.failure,
    })
}

fn classify_text(id: &str, c: &ClassifyData) -> String {
    let mut s = format!("classify {}: {} maximal families\n", id, c.families.len());
    if c.constraints.is_empty() {
        s.push_str("no constraints\n");
    } else {
        s.push_str("constraints:\n");
        for con in &c.constraints {
            s.push_str(&format!("  {}\n", constraint_text(con)));
        }
    }
    s.push_str("families:\n");
    for f in &c.families {
        let m = f.reference_match.unwrap_or("unlisted");
        s.push_str(&format!("  [{}]  {}\n", f.tags.join(", "), m));
    }
    if let Some(msg) = &c.failure {
        s.push_str(&format!("FAILURE: {msg}\n"));
    }
    s
}

fn classify_latex(id: &str, c: &ClassifyData) -> String {
    let mut s = format!("% classification for {}\n", id);
    s.push_str("\\begin{tabular}{ll}\n");
    s.push_str("family & reference \\\\\\hline\n");
    for f in &c.families {
        let m = f.reference_match.unwrap_or("--");
        s.push_str(&format!("$({})$ & {} \\\\\n", f.tags.join(", "), m));
    }
    s.push_str("\\end{tabular}\n");
    s
}

fn cmd_classify(id: &str) -> Result<Output, CmdError> {
    let dg = parse_diagram(id)?;
    let data = classify_data(&dg);
    let mut json = json!({
        "schemaVersion": 1,
        "command": "classify",
        "algebra": dg.id,
    });
    merge(&mut json, classify_value(&data));
    Ok(Output {
        json,
        text: classify_text(&dg.id, &data),
        latex: classify_latex(&dg.id, &data),
        ok: data.ok,
    })
}

fn coaction_value(c: &CoactionData) -> Value {
    json!({
        "pair": [c.x, c.y],
        "factorsThroughRelation": c.factors_through_relation,
        "residualZero": c.residual_zero(),
        "intermediate": c.intermediate.iter().map(|(l, r)| json!({
            "left": l,
            "right": r,
        })).collect::<Vec<_>>(),
        "residual": c.residual.iter().map(|(l, r)| json!({
            "left": l,
            "right": r,
        })).collect::<Vec<_>>(),
    })
}

fn coaction_text(id: &str, c: &CoactionData) -> String {
    let mut s = format!("coaction {} pair ({},{})\n", id, c.x, c.y);
    s.push_str(&format!("factors through relation: {}\n", c.factors_through_relation));
    s.push_str(&format!("residual zero: {}\n", c.residual_zero()));
    s.push_str("intermediate:\n");
    for (l, r) in &c.intermediate {
        s.push_str(&format!("  {l}  (x)  {r}\n"));
    }
    if !c.residual.is_empty() {
        s.push_str("residual:\n");
        for (l, r) in &c.residual {
            s.push_str(&format!("  {l}  (x)  {r}\n"));
        }
    }
    s
}

fn coaction_latex(id: &str, c: &CoactionData) -> String {
    let mut s = format!("% comodule check for {} pair ({},{})\n", id, c.x, c.y);
    s.push_str("\\begin{align*}\n");
    for (l, r) in &c.intermediate {
        s.push_str(&format!(
            "  &{} \\otimes \\bigl({}\\bigr) \\\\\n",
            latexify_tensor(l),
            latexify_tensor(r)
        ));
    }
    s.push_str("\\end{align*}\n");
    s
}

fn cmd_coaction(id: &str, pair: &[usize]) -> Result<Output, CmdError> {
    let dg = parse_diagram(id)?;
    validate_pair(&dg, pair[0], pair[1])?;
    let data = coaction_for_pair(&dg, pair[0], pair[1])?;
    let mut json = json!({
        "schemaVersion": 1,
        "command": "coaction",
        "algebra": dg.id,
    });
    merge(&mut json, coaction_value(&data));
    let ok = data.ok();
    Ok(Output {
        json,
        text: coaction_text(&dg.id, &data),
        latex: coaction_latex(&dg.id, &data),
        ok,
    })
}

fn cmd_report(id: &str, workers: usize) -> Result<Output, CmdError> {
    let dg = parse_diagram(id)?;
    let dd = diagram_data(&dg);
    let dirs = ordered_pairs(&dg);
    let pairs = verify_pairs(&dg, &dirs, Variant::Standard, true, true, workers)?;
    let gates = gate_data(&dg);
    let cls = classify_data(&dg);

    let bar_ok = pairs.iter().all(|p| p.bar_agrees == Some(true));
    let coaction_ok = pairs
        .iter()
        .all(|p| p.coaction.as_ref().map(CoactionData::ok) == Some(true));
    let ok = gates.all_join && cls.ok && bar_ok && coaction_ok;

    let coaction_summaries: Vec<Value> = pairs
        .iter()
        .filter_map(|p| p.coaction.as_ref())
        .map(|c| {
            json!({
                "pair": [c.x, c.y],
                "factorsThroughRelation": c.factors_through_relation,
                "residualZero": c.residual_zero(),
            })
        })
        .collect();

    let json = json!({
        "schemaVersion": 1,
        "command": "report",
        "algebra": dg.id,
        "cartan": diagram_value(&dd),
        "verification": {
            "variant": "std",
            "gates": gates_value(&gates),
            "pairs": pairs.iter().map(pair_value).collect::<Vec<_>>(),
        },
        "coaction": coaction_summaries,
        "classification": classify_value(&cls),
        "status": if ok { "pass" } else { "fail" },
    });

    let mut text = format!("report {}\n\n", dg.id);
    text.push_str(&diagram_text(&dd));
    text.push('\n');
    text.push_str(&format!(
        "gates: completion length {}, {} overlaps checked, {}\n",
        gates.completion_len,
        gates.overlaps_checked,
        if gates.all_join { "all join" } else { "UNJOINABLE PAIRS" }
    ));
    for p in &pairs {
        text.push_str(&pair_text(p));
    }
    text.push('\n');
    for p in &pairs {
        if let Some(c) = &p.coaction {
            text.push_str(&format!(
                "coaction ({},{}): factors {}, residual zero {}\n",
                c.x,
                c.y,
                c.factors_through_relation,
                c.residual_zero()
            ));
        }
    }
    text.push('\n');
    text.push_str(&classify_text(&dg.id, &cls));
    text.push_str(&format!("\nstatus: {}\n", if ok { "pass" } else { "fail" }));

    let mut latex = format!("% dossier for {}\n", dg.id);
    latex.push_str(&diagram_latex(&dd));
    for p in &pairs {
        latex.push_str(&format!("% pair ({},{})\n", p.x, p.y));
        latex.push_str(&pair_latex(p));
    }
    latex.push_str(&classify_latex(&dg.id, &cls));

    Ok(Output { json, text, latex, ok })
}
