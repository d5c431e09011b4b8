//! End-to-end tests of the `logcoh` binary: every subcommand in every output
//! format, the exit-code contract (0 success, 2 bad input, 3 computation
//! failure), field selection, and byte stability of emitted files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

fn run_in(dir: &Path, envs: &[(&str, &str)], args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_logcoh"))
        .current_dir(dir)
        .env_remove("LOGCOH_FIELD")
        .envs(envs.iter().copied())
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        out.status.code().expect("no signal"),
    )
}

/// Temp directory preloaded with all built-in fixtures under `fx/`.
struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let dir = TempDir::new().expect("temp dir");
        let (out, err, code) = run_in(dir.path(), &[], &["fixtures", "--dir", "fx"]);
        assert_eq!(code, 0, "fixture emission failed: {err}");
        assert!(out.lines().all(|l| l.starts_with("wrote fx/")));
        Workspace { dir }
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }

    fn run(&self, args: &[&str]) -> (String, String, i32) {
        run_in(self.path(), &[], args)
    }

    fn ok(&self, args: &[&str]) -> String {
        let (out, err, code) = self.run(args);
        assert_eq!(code, 0, "args {args:?}: exit {code}, stderr: {err}");
        assert!(err.is_empty(), "args {args:?}: unexpected stderr: {err}");
        out
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.path().join(name);
        fs::write(&path, contents).expect("write test input");
        path
    }
}

const LINES6: &str = r#"{
  "schema": "arr/1",
  "mode": "projective",
  "forms": [[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,3],[1,4,9]]
}"#;

const LINES4: &str = r#"{
  "schema": "arr/1",
  "mode": "projective",
  "forms": [[1,0,0],[0,1,0],[0,0,1],[1,1,1]]
}"#;

const POINTS3: &str = r#"{
  "schema": "arr/1",
  "mode": "projective",
  "forms": [[1,0],[0,1],[1,-1]]
}"#;

// ---------------------------------------------------------------------------
// fixtures

#[test]
fn fixtures_lists_the_catalog_in_each_format() {
    let ws = Workspace::new();

    let text = ws.ok(&["fixtures"]);
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("cp2_cubic\tpair\n"));
    assert!(text.contains("dx_eq_y\tcomplex\n"));
    assert!(text.contains("boolean_3\tarrangement\n"));

    let json = ws.ok(&["fixtures", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[5]["name"], "cp2_cubic");
    assert_eq!(rows[5]["kind"], "pair");

    let selected = ws.ok(&["fixtures", "cp2_cubic", "dx_eq_y"]);
    assert_eq!(selected, "cp2_cubic\tpair\ndx_eq_y\tcomplex\n");

    let (_, err, code) = ws.run(&["fixtures", "nope_such"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown fixture `nope_such`"), "stderr: {err}");
}

#[test]
fn fixture_emission_is_byte_stable() {
    let ws = Workspace::new();
    ws.ok(&["fixtures", "--dir", "again"]);
    for entry in fs::read_dir(ws.path().join("fx")).expect("fixture dir") {
        let entry = entry.expect("dir entry");
        let first = fs::read(entry.path()).expect("first copy");
        let second = fs::read(ws.path().join("again").join(entry.file_name())).expect("second");
        assert_eq!(first, second, "{:?} differs between runs", entry.file_name());
        assert_eq!(first.last(), Some(&b'\n'), "{:?} lacks trailing newline", entry.file_name());
    }
}

// ---------------------------------------------------------------------------
// logcoh (and the bare `--pair` shorthand)

const CP2_TABLE: &str = "log cohomology over Q, weight bound 9, total dimension 21\n\
                         weight  0  3  6  9\n\
                         deg 0   1  1  1  1\n\
                         deg 1   .  2  2  2\n\
                         deg 2   2  2  2  2\n\
                         deg 3   .  1  1  1\n\
                         total   3  6  6  6\n";

#[test]
fn logcoh_prints_the_bigraded_table() {
    let ws = Workspace::new();
    let args = ["logcoh", "--pair", "fx/cp2_cubic.json", "--max-weight", "9"];
    assert_eq!(ws.ok(&args), CP2_TABLE);
    assert_eq!(ws.ok(&args), CP2_TABLE, "output is not reproducible");

    let tsv = ws.ok(&["logcoh", "--pair", "fx/cp2_cubic.json", "--max-weight", "9", "--format", "tsv"]);
    assert_eq!(
        tsv,
        "degree\tweight\tdim\n\
         0\t0\t1\n0\t3\t1\n0\t6\t1\n0\t9\t1\n\
         1\t3\t2\n1\t6\t2\n1\t9\t2\n\
         2\t0\t2\n2\t3\t2\n2\t6\t2\n2\t9\t2\n\
         3\t3\t1\n3\t6\t1\n3\t9\t1\n"
    );

    let json = ws.ok(&["logcoh", "--pair", "fx/cp2_cubic.json", "--max-weight", "9", "--format", "json"]);
    assert!(json.ends_with('\n'));
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["field"], "Q");
    assert_eq!(doc["total_dim"], 21);
    assert_eq!(doc["weights"], serde_json::json!([0, 3, 6, 9]));
}

#[test]
fn bare_pair_flag_is_shorthand_for_logcoh() {
    let ws = Workspace::new();
    let short = ws.ok(&["--pair", "fx/cp2_cubic.json", "--max-weight", "9"]);
    assert_eq!(short, CP2_TABLE);

    // With both a subcommand and the top-level flag the intent is unclear.
    let (_, err, code) =
        ws.run(&["--pair", "fx/cp2_cubic.json", "sr", "--pair", "fx/cp2_cubic.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("ambiguous"), "stderr: {err}");

    let (_, err, code) = ws.run(&[]);
    assert_eq!(code, 2);
    assert!(err.contains("give a subcommand or `--pair <FILE>`"), "stderr: {err}");
}

// ---------------------------------------------------------------------------
// sr

#[test]
fn sr_prints_the_presentation_and_weight_dimensions() {
    let ws = Workspace::new();
    assert_eq!(
        ws.ok(&["sr", "--pair", "fx/pants_n1.json"]),
        "SR = k[t1, t2, t3] / (t1*t2, t1*t3, t2*t3)\n\
         weight  0  1  2  3  4  5  6\n\
         dim     1  3  3  3  3  3  3\n"
    );
    // A single smooth divisor has no nonfaces at all.
    let cp2 = ws.ok(&["sr", "--pair", "fx/cp2_cubic.json"]);
    assert!(cp2.starts_with("SR = k[t1]\n"), "got: {cp2}");

    assert_eq!(
        ws.ok(&["sr", "--pair", "fx/pants_n1.json", "--format", "tsv"]),
        "weight\tdim\n0\t1\n1\t3\n2\t3\n3\t3\n4\t3\n5\t3\n6\t3\n"
    );

    let json = ws.ok(&["sr", "--pair", "fx/pants_n1.json", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["presentation"]["kind"], "classical");
    assert_eq!(doc["presentation"]["minimal_nonfaces"], serde_json::json!([[1, 2], [1, 3], [2, 3]]));
}

// ---------------------------------------------------------------------------
// present

#[test]
fn present_lists_generators_relations_and_the_hilbert_table() {
    let ws = Workspace::new();
    assert_eq!(
        ws.ok(&["present", "--pair", "fx/pants_n1.json", "--max-weight", "3"]),
        "generators:\n\
        \x20 t1  degree 0, weight 1\n\
        \x20 t2  degree 0, weight 1\n\
        \x20 t3  degree 0, weight 1\n\
        \x20 g1  degree 1  (basis of H*(X))\n\
        \x20 g2  degree 1  (basis of H*(X))\n\
         relations:\n\
        \x20 t1*t2 = 0\n\
        \x20 t1*t3 = 0\n\
        \x20 t2*t3 = 0\n\
        \x20 g1*g1 = 0\n\
        \x20 g1*g2 = 0\n\
        \x20 g2*g2 = 0\n\
        \x20 t1 * (g2) = 0\n\
        \x20 t2 * (g1) = 0\n\
        \x20 t3 * (-g1 + g2) = 0\n\
         presented ring over Q, weight bound 3, total dimension 21\n\
         weight  0  1  2  3\n\
         deg 0   1  3  3  3\n\
         deg 1   2  3  3  3\n\
         total   3  6  6  6\n"
    );

    let json = ws.ok(&["present", "--pair", "fx/pants_n1.json", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["t_generators"].as_array().expect("array").len(), 3);
    assert!(doc["kernel_relations"].as_array().expect("array").len() >= 3);
}

// ---------------------------------------------------------------------------
// sspages

#[test]
fn sspages_prints_pages_until_stabilization() {
    let ws = Workspace::new();
    assert_eq!(
        ws.ok(&["sspages", "--complex", "fx/dx_eq_y.json"]),
        "stabilizes at E_2\n\
         first nonzero differential: d_1\n\
         E_0:  (d = 0)\n\
        \x20      p=0  p=1\n\
        \x20 q=0    1    1\n\
         E_1:\n\
        \x20      p=0  p=1\n\
        \x20 q=0    1    1\n\
         E_2:  (d = 0)\n\
        \x20 (zero)\n\
         E_infinity:\n\
        \x20 (zero)\n\
         total cohomology: (zero)\n"
    );

    let later = ws.ok(&["sspages", "--complex", "fx/d2_only.json"]);
    assert!(later.starts_with("stabilizes at E_3\nfirst nonzero differential: d_2\n"));
    assert!(later.ends_with("total cohomology: H^0 = 1\n"));

    assert_eq!(
        ws.ok(&["sspages", "--complex", "fx/d2_only.json", "--format", "tsv"]),
        "page\tp\tq\tdim\n\
         0\t0\t0\t1\n0\t1\t-1\t1\n0\t2\t-1\t1\n\
         1\t0\t0\t1\n1\t1\t-1\t1\n1\t2\t-1\t1\n\
         2\t0\t0\t1\n2\t1\t-1\t1\n2\t2\t-1\t1\n\
         3\t1\t-1\t1\n\
         inf\t1\t-1\t1\n"
    );

    let json = ws.ok(&["sspages", "--complex", "fx/d2_only.json", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["stabilizes_at"], 3);
    assert_eq!(doc["first_nonzero_differential"], 2);
}

// ---------------------------------------------------------------------------
// classify

#[test]
fn classify_reports_honest_inconclusives_without_flags() {
    let ws = Workspace::new();
    let out = ws.ok(&["classify", "--pair", "fx/x_equals_c.json"]);
    assert_eq!(
        out,
        "easycor: skipped (required flag `same_line_bundle` is not declared on the pair)\n\
         topological: Inconclusive [same-bundle-component-count]; same-bundle hypothesis not declared\n\
         multiplicatively_topological: Inconclusive [same-bundle-component-count]; same-bundle hypothesis not declared\n\
         condition_a: Inconclusive [equal-powers-connected-strata]; same-bundle hypothesis not declared\n\
         degree_zero: skipped (pair is not log Calabi-Yau (anticanonical flag with all pole orders 1))\n\
         gw_degeneration: Inconclusive [admissible-obstruction-vanishing]; no vanishing flags declared\n"
    );
    assert!(!out.contains("Established"));
}

#[test]
fn classify_establishes_verdicts_from_declared_geometry() {
    let ws = Workspace::new();
    let five = ws.ok(&["classify", "--pair", "fx/p2_lines5.json"]);
    assert!(five.contains(
        "topological: Established [same-bundle-component-count]; k = 5 >= 3\n"
    ));
    assert!(five.contains(
        "multiplicatively_topological: Established [same-bundle-component-count]; k = 5 >= 5\n"
    ));

    let cubic = ws.ok(&["classify", "--pair", "fx/cp2_cubic.json"]);
    assert!(cubic.contains(
        "easycor: Established [same-bundle-multiplicity]; component 1 has bundle power 3 > 1\n"
    ));
    assert!(cubic.contains(
        "degree_zero: Established [fano-anticanonical-degree-zero]; ambient space Fano, all strata connected\n\
        \x20 gr SH^0 = k[t1]\n"
    ));
    assert!(cubic
        .contains("gw_degeneration: Inconclusive [admissible-obstruction-vanishing]"));
}

#[test]
fn classify_resolves_a_line_arrangement_when_given_forms() {
    let ws = Workspace::new();
    ws.write("lines6.json", LINES6);
    let out = ws.ok(&["classify", "--pair", "fx/p2_lines6.json", "--lines", "lines6.json"]);
    assert!(out.contains("resolution of the line arrangement:\n"));
    assert!(out.contains("  components: L1, L2, L3, L4, L5, L6\n"));
    assert!(out.contains("  blowups: none\n"));
    assert!(out.contains(
        "  topological: Established [p2-blowup-two-points]; every line meets >= 2 distinct points\n"
    ));
    assert!(out.contains(
        "  multiplicatively_topological: Established [p2-blowup-three-points]; \
         every line meets >= 3 distinct points\n"
    ));

    // A central or 2-variable file cannot describe plane lines.
    ws.write("pts3.json", POINTS3);
    let (_, err, code) =
        ws.run(&["classify", "--pair", "fx/p2_lines6.json", "--lines", "pts3.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("3-coefficient forms"), "stderr: {err}");
}

#[test]
fn classify_gw_flags_override_establishes_degeneration() {
    let ws = Workspace::new();
    ws.write("gw.json", r#"[{"I": [1], "vanishes": true}]"#);
    let out = ws.ok(&["classify", "--pair", "fx/cp2_cubic.json", "--gw-flags", "gw.json"]);
    assert!(out.contains(
        "gw_degeneration: Established [admissible-obstruction-vanishing]; \
         all strata admissible with vanishing obstructions\n"
    ));
}

#[test]
fn classify_tabular_formats_use_kebab_case_statuses() {
    let ws = Workspace::new();
    let tsv = ws.ok(&["classify", "--pair", "fx/cp2_cubic.json", "--format", "tsv"]);
    assert!(tsv.starts_with("criterion\tstatus\trule\tdetail\n"));
    assert!(tsv.contains(
        "easycor\testablished\tsame-bundle-multiplicity\tcomponent 1 has bundle power 3 > 1\n"
    ));
    assert!(tsv.contains("condition_a\thypothesis-failed\tequal-powers-connected-strata\t"));

    let json = ws.ok(&["classify", "--pair", "fx/cp2_cubic.json", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    let criteria = doc["criteria"].as_array().expect("array");
    assert_eq!(criteria.len(), 6);
    assert_eq!(criteria[0]["name"], "easycor");
    assert_eq!(criteria[0]["status"], "established");
    assert_eq!(criteria[3]["status"], "hypothesis-failed");
}

// ---------------------------------------------------------------------------
// validate

#[test]
fn validate_accepts_each_clean_input_kind() {
    let ws = Workspace::new();
    for (flag, file, expected) in [
        ("--pair", "fx/cp2_cubic.json", "pair: valid\n"),
        ("--complex", "fx/dx_eq_y.json", "complex: valid\n"),
        ("--arrangement", "fx/boolean_3.json", "arrangement: valid\n"),
    ] {
        assert_eq!(ws.ok(&["validate", flag, file]), expected);
    }

    let json = ws.ok(&["validate", "--pair", "fx/cp2_cubic.json", "--format", "json"]);
    assert_eq!(json, "{\n  \"clean\": true,\n  \"issues\": []\n}\n");

    let (_, err, code) =
        ws.run(&["validate", "--pair", "fx/cp2_cubic.json", "--complex", "fx/dx_eq_y.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("exactly one of"), "stderr: {err}");
}

#[test]
fn validate_reports_issues_on_stdout_with_exit_two() {
    let ws = Workspace::new();
    let broken = logcoh::schema::pair_to_json(&logcoh::fixtures::broken_restriction_pair());
    ws.write("broken.json", &broken);

    let (out, err, code) = ws.run(&["validate", "--pair", "broken.json"]);
    assert_eq!(code, 2);
    assert!(err.is_empty(), "stderr: {err}");
    assert!(out.starts_with("pair: 3 issue(s)\n"), "got: {out}");
    assert!(out.contains("restriction {} -> {1,2}"), "got: {out}");

    // Other commands refuse the same file with the same report.
    let (out, _, code) = ws.run(&["logcoh", "--pair", "broken.json"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("pair: 3 issue(s)\n"), "got: {out}");
}

#[test]
fn unreadable_or_malformed_inputs_exit_two_via_stderr() {
    let ws = Workspace::new();
    ws.write("bad.json", "{ not json");

    let (out, err, code) = ws.run(&["validate", "--pair", "bad.json"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error: malformed JSON"), "stderr: {err}");

    let (_, err, code) = ws.run(&["logcoh", "--pair", "no_such.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("no_such.json"), "stderr: {err}");
}

// ---------------------------------------------------------------------------
// arrangement subcommands

#[test]
fn arrangement_os_prints_the_algebra() {
    let ws = Workspace::new();
    assert_eq!(
        ws.ok(&["arrangement", "os", "--file", "fx/boolean_3.json"]),
        "Orlik-Solomon algebra of 3 hyperplanes in 3 variables over Q, dimension 8\n\
         poincare polynomial: 1 + 3*t + 3*t^2 + t^3\n\
         deg 0: 1\n\
         deg 1: b1, b2, b3\n\
         deg 2: b1*b2, b1*b3, b2*b3\n\
         deg 3: b1*b2*b3\n"
    );

    ws.write("pts3.json", POINTS3);
    let (_, err, code) = ws.run(&["arrangement", "os", "--file", "pts3.json"]);
    assert_eq!(code, 3);
    assert!(err.contains("needs a central arrangement"), "stderr: {err}");
}

#[test]
fn arrangement_complement_prints_projective_cohomology() {
    let ws = Workspace::new();
    ws.write("pts3.json", POINTS3);
    assert_eq!(
        ws.ok(&["arrangement", "complement", "--file", "pts3.json"]),
        "complement cohomology of 3 hyperplanes in P^1 over Q, dimension 3\n\
         poincare polynomial: 1 + 2*t\n\
         deg 0: 1\n\
         deg 1: -b1+b2, -b1+b3\n"
    );

    ws.write("lines4.json", LINES4);
    let out = ws.ok(&["arrangement", "complement", "--file", "lines4.json"]);
    assert!(out.contains("poincare polynomial: 1 + 3*t + 3*t^2\n"), "got: {out}");
}

#[test]
fn arrangement_pair_emits_a_loadable_pair_file() {
    let ws = Workspace::new();
    ws.write("lines4.json", LINES4);

    let summary = ws.ok(&["arrangement", "pair", "--file", "lines4.json"]);
    assert!(summary.starts_with("pair: k = 4, dim = 2, 11 nonempty strata\n"), "got: {summary}");

    let json = ws.ok(&["arrangement", "pair", "--file", "lines4.json", "--format", "json"]);
    let pair = logcoh::schema::pair_from_json::<logcoh_core::Rat>(&json).expect("parses back");
    assert!(pair.validate().is_clean());
    assert_eq!(pair.k, 4);
    assert_eq!(json, logcoh::schema::pair_to_json(&pair), "emission round-trips bytewise");

    // Dependent forms are rejected as non-generic.
    ws.write(
        "degenerate.json",
        r#"{"schema": "arr/1", "mode": "projective",
            "forms": [[1,0,0],[0,1,0],[1,1,0],[0,0,1]]}"#,
    );
    let (_, err, code) = ws.run(&["arrangement", "pair", "--file", "degenerate.json"]);
    assert_eq!(code, 3);
    assert!(err.contains("not generic"), "stderr: {err}");
}

#[test]
fn arrangement_sh_presents_the_complement_ring() {
    let ws = Workspace::new();
    ws.write("lines4.json", LINES4);
    let out = ws.ok(&["arrangement", "sh", "--file", "lines4.json", "--max-weight", "3"]);
    assert!(out.contains("  t1  degree 0, weight 1\n"), "got: {out}");
    assert!(out.contains("  g1  degree 1  (basis of H*(X))\n"), "got: {out}");
    assert!(out.contains("  t1*t2*t3 = 0\n"), "got: {out}");
}

#[test]
fn arrangement_mirror_prints_the_hochschild_table() {
    let ws = Workspace::new();
    ws.write("lines4.json", LINES4);
    assert_eq!(
        ws.ok(&["arrangement", "mirror", "--file", "lines4.json"]),
        "Hochschild cohomology of the mirror potential, m = 4, weights 0..4\n\
         weight  0   1   2   3   4\n\
         HH^0    1   4  10  16  22\n\
         HH^1    3  12  24  36  48\n"
    );
}

// ---------------------------------------------------------------------------
// mirror-check

#[test]
fn mirror_check_compares_all_three_models() {
    let ws = Workspace::new();
    assert_eq!(
        ws.ok(&["mirror-check", "--n", "1"]),
        "mirror comparison for n = 1 (m = 3)\n\
         relation match: t1*t2 <-> z1*z2\n\
         relation match: t1*t3 <-> z1*z3\n\
         relation match: t2*t3 <-> z2*z3\n\
         SR hilbert (orders 0..6):       1 3 3 3 3 3 3\n\
         jacobian hilbert (orders 0..6): 1 3 3 3 3 3 3\n\
         presentations agree: yes\n\
         HH^0 by weight (0..4): 1 3 3 3 3\n\
         SR by weight   (0..4): 1 3 3 3 3\n\
         HH^0 matches SR: yes\n\
         HH^1 in weight 0: 2 (b1 of the complement: 2), match: yes\n"
    );

    let json = ws.ok(&["mirror-check", "--n", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    assert_eq!(doc["m"], 4);
    assert_eq!(doc["relations_match"], true);
    assert_eq!(doc["hh0_matches_sr"], true);
    assert_eq!(doc["hh1_weight0_matches_b1"], true);

    let (_, err, code) = ws.run(&["mirror-check", "--n", "0"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error: "), "stderr: {err}");
}

// ---------------------------------------------------------------------------
// field selection

#[test]
fn field_comes_from_flag_then_env_then_defaults_to_q() {
    let ws = Workspace::new();
    let header = |out: &str| out.lines().next().expect("nonempty").to_string();

    let flagged = ws.ok(&["logcoh", "--pair", "fx/cp2_cubic.json", "--field", "fp:7"]);
    assert_eq!(header(&flagged), "log cohomology over F_7, weight bound 6, total dimension 15");

    // The flag is global: accepted before the subcommand too.
    let fronted = ws.ok(&["--field", "fp:7", "logcoh", "--pair", "fx/cp2_cubic.json"]);
    assert_eq!(fronted, flagged);

    let env = [("LOGCOH_FIELD", "fp:11")];
    let (from_env, _, code) =
        run_in(ws.path(), &env, &["logcoh", "--pair", "fx/cp2_cubic.json"]);
    assert_eq!(code, 0);
    assert_eq!(header(&from_env), "log cohomology over F_11, weight bound 6, total dimension 15");

    let (overridden, _, code) =
        run_in(ws.path(), &env, &["logcoh", "--pair", "fx/cp2_cubic.json", "--field", "q"]);
    assert_eq!(code, 0);
    assert_eq!(header(&overridden), "log cohomology over Q, weight bound 6, total dimension 15");
}

#[test]
fn unsupported_fields_are_rejected_up_front() {
    let ws = Workspace::new();
    let (_, err, code) = ws.run(&["logcoh", "--pair", "fx/cp2_cubic.json", "--field", "fp:4"]);
    assert_eq!(code, 2);
    assert_eq!(
        err,
        "error: characteristic 4 is not supported; supported primes: \
         3, 5, 7, 11, 13, 101, 251, 1009, 7919, 65521\n"
    );

    let (_, err, code) = run_in(ws.path(), &[("LOGCOH_FIELD", "nope")], &["fixtures"]);
    assert_eq!(code, 2);
    assert_eq!(err, "error: LOGCOH_FIELD: `nope`: expected `q` or `fp:<prime>`\n");
}
