//! Command-line driver: typecheck, normalize, compare, enumerate, probe
//! derivability, and model-check frame files.
//!
//! Every invocation can emit a single JSON document (`--format json`) with
//! fields `format_version`, `command`, `flavor`, `input`, `result`,
//! `diagnostics`. Exit code 0 on success, 1 when the answer is negative
//! (ill-typed, unequal, frame violation, unsatisfied), 2 on parse or usage
//! errors.

use clap::{Parser, Subcommand, ValueEnum};
use laxcal_cli::{frames, parse};
use laxcal::equations::CATALOG;
use laxcal::kripke::{check_frame, satisfies, valid_in_model, FrameClass};
use laxcal::nbe::{decide_equal, norm};
use laxcal::nf::{check_inadmissible, embed, enumerate_nf, Verdict};
use laxcal::syntax::{print, Ctx, Flavor, Term};
use laxcal::typing::infer;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "laxcal", version, about = "lax modal lambda calculi workbench")]
struct Cli {
    /// Output format for results and diagnostics.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Slc,
    Rlc,
    Jlc,
    Mlc,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Slc => Flavor::Slc,
            FlavorArg::Rlc => Flavor::Rlc,
            FlavorArg::Jlc => Flavor::Jlc,
            FlavorArg::Mlc => Flavor::Mlc,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Sl,
    Rl,
    Jl,
    Ll,
}

impl From<ClassArg> for FrameClass {
    fn from(c: ClassArg) -> FrameClass {
        match c {
            ClassArg::Sl => FrameClass::Sl,
            ClassArg::Rl => FrameClass::Rl,
            ClassArg::Jl => FrameClass::Jl,
            ClassArg::Ll => FrameClass::Ll,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Infer the type of a term.
    Check {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Ambient context, e.g. "x:i, y:<>i".
        #[arg(long, default_value = "")]
        ctx: String,
        /// The term, inline.
        term: Option<String>,
        /// Read the term from a file instead.
        #[arg(long, conflicts_with = "term")]
        file: Option<std::path::PathBuf>,
    },
    /// Normalize a term to its eta-long normal form.
    Norm {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, default_value = "")]
        ctx: String,
        term: Option<String>,
        #[arg(long, conflicts_with = "term")]
        file: Option<std::path::PathBuf>,
    },
    /// Decide judgmental equality of two terms of the same type.
    Eq {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, default_value = "")]
        ctx: String,
        left: String,
        right: String,
    },
    /// List all normal forms of a type up to a derivation depth.
    Enumerate {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, default_value = "")]
        ctx: String,
        #[arg(long)]
        depth: usize,
        r#type: String,
    },
    /// Search for an inhabitant of a closed type; report emptiness with a
    /// saturation certificate when the subproblem space closes.
    Inadmissible {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long)]
        depth: usize,
        r#type: String,
    },
    /// Check a frame file against the conditions of a frame class.
    KripkeCheck {
        #[arg(long, value_enum)]
        class: ClassArg,
        file: std::path::PathBuf,
    },
    /// Evaluate a formula in a model file, at one world or at all worlds.
    KripkeSat {
        #[arg(long, value_enum, default_value_t = ClassArg::Sl)]
        class: ClassArg,
        /// World to evaluate at; omitted means "valid in the model".
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
        file: std::path::PathBuf,
    },
    /// Dump the equational rule catalog.
    Rules {
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
    },
}

struct Report {
    format: OutputFormat,
    command: &'static str,
    flavor: Option<String>,
    input: Value,
    result: Value,
    diagnostics: Vec<String>,
    human: String,
    code: u8,
}

impl Report {
    fn emit(self) -> ExitCode {
        match self.format {
            OutputFormat::Json => {
                let doc = json!({
                    "format_version": 1,
                    "command": self.command,
                    "flavor": self.flavor,
                    "input": self.input,
                    "result": self.result,
                    "diagnostics": self.diagnostics,
                });
                println!("{doc}");
            }
            OutputFormat::Human => {
                if !self.human.is_empty() {
                    println!("{}", self.human);
                }
                for d in &self.diagnostics {
                    eprintln!("error: {d}");
                }
            }
        }
        ExitCode::from(self.code)
    }
}

fn read_term_input(
    inline: Option<String>,
    file: Option<std::path::PathBuf>,
) -> Result<String, String> {
    match (inline, file) {
        (Some(t), None) => Ok(t),
        (None, Some(path)) => std::fs::read_to_string(&path)
            .map(|s| s.trim().to_string())
            .map_err(|e| format!("cannot read {}: {e}", path.display())),
        (None, None) => Err("a term is required, inline or via --file".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects the conflict"),
    }
}

fn name_refs(names: &[String]) -> Vec<&str> {
    names.iter().map(|s| s.as_str()).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match cli.command {
        Command::Check { flavor, ctx, term, file } => check_cmd(format, flavor.into(), ctx, term, file),
        Command::Norm { flavor, ctx, term, file } => norm_cmd(format, flavor.into(), ctx, term, file),
        Command::Eq { flavor, ctx, left, right } => eq_cmd(format, flavor.into(), ctx, left, right),
        Command::Enumerate { flavor, ctx, depth, r#type } => {
            enumerate_cmd(format, flavor.into(), ctx, depth, r#type)
        }
        Command::Inadmissible { flavor, depth, r#type } => {
            inadmissible_cmd(format, flavor.into(), depth, r#type)
        }
        Command::KripkeCheck { class, file } => kripke_check_cmd(format, class.into(), file),
        Command::KripkeSat { class, world, formula, file } => {
            kripke_sat_cmd(format, class.into(), world, formula, file)
        }
        Command::Rules { flavor } => rules_cmd(format, flavor.map(Flavor::from)),
    }
    .emit()
}

/// Parse the context and the term, reporting parse failures as exit 2.
fn parse_inputs(
    report: &mut Report,
    ctx_src: &str,
    term_src: &str,
) -> Option<(Vec<String>, Ctx, Term)> {
    let (names, ctx) = match parse::parse_ctx(ctx_src) {
        Ok(x) => x,
        Err(e) => {
            report.diagnostics.push(format!("in --ctx: {e}"));
            report.code = 2;
            return None;
        }
    };
    match parse::parse_term(term_src, &names) {
        Ok(t) => Some((names, ctx, t)),
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            None
        }
    }
}

fn base_report(format: OutputFormat, command: &'static str, flavor: Option<Flavor>) -> Report {
    Report {
        format,
        command,
        flavor: flavor.map(|f| f.to_string()),
        input: Value::Null,
        result: Value::Null,
        diagnostics: Vec::new(),
        human: String::new(),
        code: 0,
    }
}

fn check_cmd(
    format: OutputFormat,
    flavor: Flavor,
    ctx_src: String,
    term: Option<String>,
    file: Option<std::path::PathBuf>,
) -> Report {
    let mut report = base_report(format, "check", Some(flavor));
    let term_src = match read_term_input(term, file) {
        Ok(s) => s,
        Err(e) => {
            report.diagnostics.push(e);
            report.code = 2;
            return report;
        }
    };
    report.input = json!({ "ctx": ctx_src, "term": term_src });
    let Some((_, ctx, t)) = parse_inputs(&mut report, &ctx_src, &term_src) else {
        return report;
    };
    match infer(flavor, &ctx, &t) {
        Ok(ty) => {
            report.human = ty.to_string();
            report.result = json!({ "type": ty.to_string() });
        }
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 1;
        }
    }
    report
}

fn norm_cmd(
    format: OutputFormat,
    flavor: Flavor,
    ctx_src: String,
    term: Option<String>,
    file: Option<std::path::PathBuf>,
) -> Report {
    let mut report = base_report(format, "norm", Some(flavor));
    let term_src = match read_term_input(term, file) {
        Ok(s) => s,
        Err(e) => {
            report.diagnostics.push(e);
            report.code = 2;
            return report;
        }
    };
    report.input = json!({ "ctx": ctx_src, "term": term_src });
    let Some((names, ctx, t)) = parse_inputs(&mut report, &ctx_src, &term_src) else {
        return report;
    };
    match norm(flavor, &ctx, &t) {
        Ok(nf) => {
            let ty = infer(flavor, &ctx, &t).expect("norm implies well-typed");
            let rendered = print(&embed(&nf), &name_refs(&names));
            report.human = rendered.clone();
            report.result = json!({ "normal_form": rendered, "type": ty.to_string() });
        }
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 1;
        }
    }
    report
}

fn eq_cmd(
    format: OutputFormat,
    flavor: Flavor,
    ctx_src: String,
    left: String,
    right: String,
) -> Report {
    let mut report = base_report(format, "eq", Some(flavor));
    report.input = json!({ "ctx": ctx_src, "left": left, "right": right });
    let Some((names, ctx, lt)) = parse_inputs(&mut report, &ctx_src, &left) else {
        return report;
    };
    let rt = match parse::parse_term(&right, &names) {
        Ok(t) => t,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            return report;
        }
    };
    match decide_equal(flavor, &ctx, &lt, &rt) {
        Ok(equal) => {
            report.human = equal.to_string();
            report.result = json!({ "equal": equal });
            if !equal {
                report.code = 1;
            }
        }
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 1;
        }
    }
    report
}

fn enumerate_cmd(
    format: OutputFormat,
    flavor: Flavor,
    ctx_src: String,
    depth: usize,
    type_src: String,
) -> Report {
    let mut report = base_report(format, "enumerate", Some(flavor));
    report.input = json!({ "ctx": ctx_src, "type": type_src, "depth": depth });
    let (names, ctx) = match parse::parse_ctx(&ctx_src) {
        Ok(x) => x,
        Err(e) => {
            report.diagnostics.push(format!("in --ctx: {e}"));
            report.code = 2;
            return report;
        }
    };
    let ty = match parse::parse_type(&type_src) {
        Ok(t) => t,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            return report;
        }
    };
    let nfs = enumerate_nf(flavor, &ctx, &ty, depth);
    let rendered: Vec<String> = nfs
        .iter()
        .map(|nf| print(&embed(nf), &name_refs(&names)))
        .collect();
    report.human = rendered.join("\n");
    report.result = json!({ "count": rendered.len(), "normal_forms": rendered });
    report
}

fn inadmissible_cmd(
    format: OutputFormat,
    flavor: Flavor,
    depth: usize,
    type_src: String,
) -> Report {
    let mut report = base_report(format, "inadmissible", Some(flavor));
    report.input = json!({ "type": type_src, "depth": depth });
    let ty = match parse::parse_type(&type_src) {
        Ok(t) => t,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            return report;
        }
    };
    match check_inadmissible(flavor, &ty, depth) {
        Verdict::Inhabited(nf) => {
            let rendered = print(&embed(&nf), &[]);
            report.human = format!("Inhabited: {rendered}");
            report.result = json!({ "verdict": "inhabited", "witness": rendered });
        }
        Verdict::EmptySaturated { states } => {
            report.human = format!(
                "Empty (saturated: no normal form at any depth; {states} subproblems explored)"
            );
            report.result = json!({ "verdict": "empty-saturated", "states": states });
        }
        Verdict::EmptyUpTo { depth } => {
            report.human = format!("Empty up to depth {depth} (search not exhaustive)");
            report.result = json!({ "verdict": "empty-up-to-depth", "depth": depth });
        }
    }
    report
}

fn kripke_check_cmd(
    format: OutputFormat,
    class: FrameClass,
    file: std::path::PathBuf,
) -> Report {
    let mut report = base_report(format, "kripke-check", None);
    report.input = json!({ "file": file.display().to_string(), "class": class.name() });
    let src = match std::fs::read_to_string(&file) {
        Ok(s) => s,
        Err(e) => {
            report.diagnostics.push(format!("cannot read {}: {e}", file.display()));
            report.code = 2;
            return report;
        }
    };
    let parsed = match frames::parse_frame_file(&src) {
        Ok(p) => p,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            return report;
        }
    };
    let frame_report = check_frame(&parsed.model.frame, class);
    let mut findings: Vec<String> = frame_report
        .violations
        .iter()
        .map(|v| render_violation(v, &parsed.world_names))
        .collect();
    if !parsed.model.hereditary_ok() {
        findings.push("valuation is not hereditary along ri".into());
    }
    if findings.is_empty() {
        report.human = "ok".into();
        report.result = json!({ "ok": true, "violations": [] });
    } else {
        report.human = findings.join("\n");
        report.result = json!({ "ok": false, "violations": findings });
        report.code = 1;
    }
    report
}

fn render_violation(v: &laxcal::kripke::Violation, names: &[String]) -> String {
    use laxcal::kripke::Violation::*;
    let n = |w: usize| names.get(w).cloned().unwrap_or_else(|| format!("#{w}"));
    match v {
        RiNotReflexive { w } => format!("ri is not reflexive at {}", n(*w)),
        RiNotTransitive { w, v, u } => format!(
            "ri is not transitive: {} ri {} ri {} but not {} ri {}",
            n(*w), n(*v), n(*u), n(*w), n(*u)
        ),
        Inclusion { w, v } => format!("inclusion fails at ({}, {})", n(*w), n(*v)),
        ForwardConfluence { w, wp, v } => format!(
            "forward confluence fails: {} ri {}, {} rm {} cannot be completed",
            n(*w), n(*wp), n(*w), n(*v)
        ),
        RmNotReflexive { w } => format!("rm is not reflexive at {}", n(*w)),
        RmNotTransitive { w, v, u } => format!(
            "rm is not transitive: {} rm {} rm {} but not {} rm {}",
            n(*w), n(*v), n(*u), n(*w), n(*u)
        ),
    }
}

fn kripke_sat_cmd(
    format: OutputFormat,
    class: FrameClass,
    world: Option<String>,
    formula_src: String,
    file: std::path::PathBuf,
) -> Report {
    let mut report = base_report(format, "kripke-sat", None);
    report.input = json!({
        "file": file.display().to_string(),
        "class": class.name(),
        "world": world,
        "formula": formula_src,
    });
    let src = match std::fs::read_to_string(&file) {
        Ok(s) => s,
        Err(e) => {
            report.diagnostics.push(format!("cannot read {}: {e}", file.display()));
            report.code = 2;
            return report;
        }
    };
    let parsed = match frames::parse_frame_file(&src) {
        Ok(p) => p,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            return report;
        }
    };
    let formula = match parse::parse_formula(&formula_src) {
        Ok(f) => f,
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 2;
            return report;
        }
    };
    // Satisfaction presumes a legal frame of the ambient class.
    let frame_report = check_frame(&parsed.model.frame, class);
    if !frame_report.is_ok() {
        for v in &frame_report.violations {
            report.diagnostics.push(render_violation(v, &parsed.world_names));
        }
        report.code = 1;
        return report;
    }
    if !parsed.model.hereditary_ok() {
        report.diagnostics.push("valuation is not hereditary along ri".into());
        report.code = 1;
        return report;
    }
    let outcome = match &world {
        Some(name) => match parsed.world_index(name) {
            Some(w) => satisfies(&parsed.model, w, &formula),
            None => {
                report.diagnostics.push(format!("unknown world `{name}`"));
                report.code = 2;
                return report;
            }
        },
        None => valid_in_model(&parsed.model, &formula),
    };
    match outcome {
        Ok(truth) => {
            report.human = truth.to_string();
            report.result = match world {
                Some(_) => json!({ "satisfied": truth }),
                None => json!({ "valid": truth }),
            };
            if !truth {
                report.code = 1;
            }
        }
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.code = 1;
        }
    }
    report
}

fn rules_cmd(format: OutputFormat, flavor: Option<Flavor>) -> Report {
    let mut report = base_report(format, "rules", flavor);
    report.input = json!({});
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for rule in CATALOG.iter() {
        if let Some(f) = flavor {
            if !rule.flavors.contains(&f) {
                continue;
            }
        }
        let flavors: Vec<&str> = rule.flavors.iter().map(|f| f.name()).collect();
        lines.push(format!(
            "{:<12} flavors={:<18} metavars={}{}",
            rule.name,
            flavors.join(","),
            rule.metavars.join(","),
            if rule.is_eta { "  (eta)" } else { "" }
        ));
        entries.push(json!({
            "name": rule.name,
            "flavors": flavors,
            "metavars": rule.metavars,
            "eta": rule.is_eta,
        }));
    }
    report.human = lines.join("\n");
    report.result = json!({ "rules": entries });
    report
}
