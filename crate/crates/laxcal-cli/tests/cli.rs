//! End-to-end tests of the binary: one per subcommand, exit-code contract,
//! JSON document shape, and parser round-trips driven by generated terms.

use std::io::Write;
use std::process::Command;

use laxcal::gen::TermGen;
use laxcal::nf::{embed, enumerate_nf};
use laxcal::syntax::{alpha_eq, print, print_annotated, Ctx, Flavor, Type};
use laxcal_cli::parse::{parse_term, parse_type};
use proptest::prelude::*;

fn laxcal_bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_laxcal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).trim().to_string(),
        String::from_utf8_lossy(&out.stderr).trim().to_string(),
    )
}

#[test]
fn check_reports_types_and_diagnostics() {
    let (code, stdout, _) = laxcal_bin(&["check", "--flavor", "rlc", "\\x:i. return x"]);
    assert_eq!((code, stdout.as_str()), (0, "i -> <>i"));

    let (code, _, stderr) = laxcal_bin(&["check", "--flavor", "slc", "\\x:i. return x"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("`return` is not a construct of slc"), "{stderr}");

    let (code, _, stderr) = laxcal_bin(&["check", "--flavor", "slc", "\\x. x"]);
    assert_eq!(code, 1, "unannotated lambda is a typecheck-time diagnostic");
    assert!(stderr.contains("domain annotation"), "{stderr}");

    let (code, _, stderr) = laxcal_bin(&["check", "--flavor", "slc", "let x = in"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error at 1:"), "{stderr}");
}

#[test]
fn norm_and_eq_match_the_library() {
    let (code, stdout, _) = laxcal_bin(&[
        "norm", "--flavor", "slc", "--ctx", "z:<>i", "z",
    ]);
    assert_eq!((code, stdout.as_str()), (0, "letmap x = z in x"));

    let (code, stdout, _) = laxcal_bin(&[
        "eq", "--flavor", "mlc", "--ctx", "x:i",
        "let y = return x in return y", "return x",
    ]);
    assert_eq!((code, stdout.as_str()), (0, "true"));

    let (code, stdout, _) = laxcal_bin(&[
        "eq", "--flavor", "slc", "\\x:i. \\y:i. x", "\\x:i. \\y:i. y",
    ]);
    assert_eq!((code, stdout.as_str()), (1, "false"));

    let (code, _, stderr) = laxcal_bin(&["eq", "--flavor", "slc", "()", "\\x:i. x"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("different types"), "{stderr}");
}

#[test]
fn norm_reads_terms_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("term.lam");
    std::fs::write(&path, "\\x:<><>i. let y = x in y\n").unwrap();
    let (code, stdout, _) = laxcal_bin(&[
        "norm", "--flavor", "mlc", "--file", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    // Eta-long: the bound y : <>i is itself expanded under the return.
    assert_eq!(stdout, "\\x. let y = x in let z = y in return z");
}

#[test]
fn enumerate_prints_one_normal_form_per_line() {
    let (code, stdout, _) = laxcal_bin(&[
        "enumerate", "--flavor", "rlc", "--depth", "4", "i -> <>i",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines.contains(&"\\x. return x"), "{stdout}");
    // Same and deterministic across runs.
    let (_, again, _) = laxcal_bin(&[
        "enumerate", "--flavor", "rlc", "--depth", "4", "i -> <>i",
    ]);
    assert_eq!(stdout, again);

    let (code, stdout, _) = laxcal_bin(&[
        "enumerate", "--flavor", "slc", "--depth", "8", "i -> <>i",
    ]);
    assert_eq!((code, stdout.as_str()), (0, ""));

    // Open-term enumeration uses the context names in the output.
    let (code, stdout, _) = laxcal_bin(&[
        "enumerate", "--flavor", "slc", "--ctx", "z:<>i", "--depth", "3", "<>i",
    ]);
    assert_eq!((code, stdout.as_str()), (0, "letmap x = z in x"));
}

#[test]
fn inadmissible_distinguishes_saturation() {
    let (code, stdout, _) = laxcal_bin(&[
        "inadmissible", "--flavor", "slc", "--depth", "8", "i -> <>i",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("Empty (saturated"), "{stdout}");

    let (code, stdout, _) = laxcal_bin(&[
        "inadmissible", "--flavor", "mlc", "--depth", "4", "i -> <>i",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "Inhabited: \\x. return x");
}

#[test]
fn kripke_commands_work_on_frame_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("chain.frame");
    let mut f = std::fs::File::create(&good).unwrap();
    writeln!(f, "# one modal step along the inclusion order").unwrap();
    writeln!(f, "worlds: w v").unwrap();
    writeln!(f, "ri: w w\nri: v v\nri: w v\nrm: w v\nrm: v v").unwrap();
    writeln!(f, "V p: v").unwrap();
    drop(f);

    let good_path = good.to_str().unwrap();
    let (code, stdout, _) = laxcal_bin(&["kripke-check", "--class", "sl", good_path]);
    assert_eq!((code, stdout.as_str()), (0, "ok"));
    // rm is not reflexive at w, so the frame is not an rl-frame.
    let (code, stdout, _) = laxcal_bin(&["kripke-check", "--class", "rl", good_path]);
    assert_eq!(code, 1);
    assert!(stdout.contains("rm is not reflexive at w"), "{stdout}");

    let (code, stdout, _) = laxcal_bin(&[
        "kripke-sat", "--world", "w", "--formula", "<>p", good_path,
    ]);
    assert_eq!((code, stdout.as_str()), (0, "true"));
    let (code, stdout, _) = laxcal_bin(&[
        "kripke-sat", "--world", "w", "--formula", "p", good_path,
    ]);
    assert_eq!((code, stdout.as_str()), (1, "false"));
    // Validity over all worlds; the local and global diamonds agree here.
    let (code, stdout, _) = laxcal_bin(&[
        "kripke-sat", "--formula", "<>p -> o p", good_path,
    ]);
    assert_eq!((code, stdout.as_str()), (0, "true"));

    // Satisfaction refuses a model that fails its class's conditions.
    let (code, _, stderr) = laxcal_bin(&[
        "kripke-sat", "--class", "rl", "--formula", "p", good_path,
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("rm is not reflexive"), "{stderr}");

    let bad = dir.path().join("bad.frame");
    std::fs::write(&bad, "worlds: w\nri: w q\n").unwrap();
    let (code, _, stderr) = laxcal_bin(&["kripke-check", "--class", "sl", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn rules_lists_the_catalog() {
    let (code, stdout, _) = laxcal_bin(&["rules"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 19);
    for name in ["ML/<>-ass", "SL/<>-beta", "RL/<>-beta2", "JL/<>-com", "->-beta"] {
        assert!(stdout.contains(name), "missing {name}");
    }
    let (code, stdout, _) = laxcal_bin(&["rules", "--flavor", "jlc", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rules = doc["result"]["rules"].as_array().unwrap();
    // 6 shared + 5 jlc-specific.
    assert_eq!(rules.len(), 11);
}

#[test]
fn json_documents_are_self_contained() {
    let (code, stdout, _) = laxcal_bin(&[
        "norm", "--format", "json", "--flavor", "mlc", "--ctx", "x:i",
        "let y = return x in return y",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["format_version"], 1);
    assert_eq!(doc["command"], "norm");
    assert_eq!(doc["flavor"], "mlc");
    assert_eq!(doc["input"]["term"], "let y = return x in return y");
    assert_eq!(doc["result"]["normal_form"], "return x");
    assert_eq!(doc["result"]["type"], "<>i");
    assert_eq!(doc["diagnostics"].as_array().unwrap().len(), 0);

    // Diagnostics are part of the document, not just stderr.
    let (code, stdout, _) = laxcal_bin(&[
        "check", "--format", "json", "--flavor", "slc", "return ()",
    ]);
    assert_eq!(code, 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(doc["result"].is_null());
    assert_eq!(doc["diagnostics"].as_array().unwrap().len(), 1);
}

#[test]
fn generated_terms_round_trip_through_print_and_parse() {
    for flavor in Flavor::ALL {
        let mut g = TermGen::new(flavor, 0x51de);
        for _ in 0..150 {
            let (ctx, _, term) = g.random_judgment(3, 2, 5);
            let names: Vec<String> = (0..ctx.len()).map(|i| format!("v{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let printed = print(&term, &refs);
            let reparsed = parse_term(&printed, &names).unwrap_or_else(|e| {
                panic!("{flavor}: cannot reparse `{printed}`: {e}")
            });
            assert!(alpha_eq(&term, &reparsed), "{flavor}: `{printed}` round-trip changed");
            // The annotated form reproduces the term exactly.
            let annotated = print_annotated(&term, &refs);
            let reparsed = parse_term(&annotated, &names).unwrap();
            assert_eq!(term, reparsed, "{flavor}: `{annotated}`");
        }
    }
}

#[test]
fn enumerated_normal_forms_round_trip_up_to_depth_six() {
    let base = Type::Base;
    let cases = [
        (Ctx::empty(), Type::fun(base.clone(), Type::dia(base.clone()))),
        (
            Ctx::from_types(vec![Type::dia(base.clone())]),
            Type::dia(Type::prod(base.clone(), Type::Unit)),
        ),
        (
            Ctx::from_types(vec![Type::fun(base.clone(), base.clone()), Type::dia(base.clone())]),
            Type::dia(base.clone()),
        ),
    ];
    for flavor in Flavor::ALL {
        for (ctx, ty) in &cases {
            let names: Vec<String> = (0..ctx.len()).map(|i| format!("v{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            for nf in enumerate_nf(flavor, ctx, ty, 6) {
                let term = embed(&nf);
                let printed = print(&term, &refs);
                let reparsed = parse_term(&printed, &names)
                    .unwrap_or_else(|e| panic!("`{printed}`: {e}"));
                assert!(alpha_eq(&term, &reparsed), "`{printed}`");
            }
        }
    }
}

// Random types as trees, for the printer/parser round-trip.
fn type_strategy() -> impl Strategy<Value = Type> {
    let leaf = prop_oneof![Just(Type::Base), Just(Type::Unit)];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::prod(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::fun(a, b)),
            inner.prop_map(Type::dia),
        ]
    })
}

proptest! {
    #[test]
    fn printed_types_reparse_exactly(ty in type_strategy()) {
        let printed = ty.to_string();
        let reparsed = parse_type(&printed).unwrap();
        prop_assert_eq!(ty, reparsed);
    }

    #[test]
    fn arbitrary_input_never_panics_the_parsers(src in "\\PC{0,40}") {
        let _ = parse_type(&src);
        let _ = parse_term(&src, &["x".to_string()]);
        let _ = laxcal_cli::parse::parse_formula(&src);
        let _ = laxcal_cli::parse::parse_ctx(&src);
    }
}
