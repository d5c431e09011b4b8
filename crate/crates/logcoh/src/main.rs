//! Command-line front end: reads pair, filtered-complex, and arrangement
//! files, runs computations from `logcoh-core`, and prints tables,
//! presentations, and verdict reports.
//!
//! Exit codes: 0 success, 2 for unreadable/invalid input, 3 for computation
//! errors on valid input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use logcoh::fixtures;
use logcoh::report::{
    algebra_report, classify_report, hilbert_report, json_string, mirror_check_report,
    mirror_report, pages_report, pair_summary, presentation_report, sr_report, validation_report,
    CriterionOutcome, MirrorCheck, OutputFormat, PagesReport, ResolutionReport, VerdictBundle,
};
use logcoh::schema;
use logcoh_core::arrangements::{
    build_generic_pair, intersection_lattice, mirror_hochschild, orlik_solomon,
    projective_complement, sh_presentation, sr_jacobian_isomorphism, Arrangement,
    ArrangementError, ArrangementMode,
};
use logcoh_core::criteria::{
    check_condition_a, check_easycor, classify_nc_pair, classify_pair, degree_zero_report,
    gw_degeneration_report, resolve_p2_arrangement, ClassifyInput,
};
use logcoh_core::logring::{build_log_ring, presentation_topological, sr_hilbert, stanley_reisner};
use logcoh_core::pair::{NcPairData, Subset};
use logcoh_core::specseq::{detect_degeneration, einfinity, page, total_cohomology, FilteredComplex};
use logcoh_core::{Field, Fp, Rat};

#[derive(Parser)]
#[command(
    name = "logcoh",
    version,
    about = "Log cohomology rings, spectral sequences, and degeneration verdicts \
             for normal-crossings pairs"
)]
struct Cli {
    /// Pair file; shorthand for the `logcoh` subcommand.
    #[arg(long, value_name = "FILE")]
    pair: Option<PathBuf>,

    /// Weight truncation for the shorthand form.
    #[arg(long, value_name = "W", default_value_t = 6)]
    max_weight: i64,

    /// Coefficient field, `q` or `fp:<prime>`; overrides LOGCOH_FIELD.
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a pair, complex, or arrangement file and report issues.
    Validate {
        #[arg(long, value_name = "FILE")]
        pair: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        complex: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        arrangement: Option<PathBuf>,
    },
    /// Bigraded Hilbert table of the log cohomology ring of a pair.
    Logcoh {
        #[arg(long, value_name = "FILE")]
        pair: PathBuf,
        /// Weight truncation.
        #[arg(long, value_name = "W", default_value_t = 6)]
        max_weight: i64,
    },
    /// Stanley-Reisner model of the degree-zero part, with weight dimensions.
    Sr {
        #[arg(long, value_name = "FILE")]
        pair: PathBuf,
        #[arg(long, value_name = "W", default_value_t = 6)]
        max_weight: i64,
    },
    /// Generators and relations of the log ring in the topological-pair form.
    Present {
        #[arg(long, value_name = "FILE")]
        pair: PathBuf,
        #[arg(long, value_name = "W", default_value_t = 6)]
        max_weight: i64,
    },
    /// Spectral-sequence page dimensions of a filtered complex.
    Sspages {
        #[arg(long, value_name = "FILE")]
        complex: PathBuf,
    },
    /// Degeneration and classification verdicts for a pair.
    Classify {
        #[arg(long, value_name = "FILE")]
        pair: PathBuf,
        /// JSON array of {"I": [..], "vanishes": bool} entries overriding the
        /// vanishing flags stored on the pair.
        #[arg(long, value_name = "FILE")]
        gw_flags: Option<PathBuf>,
        /// Projective line arrangement cutting out the same pair; enables the
        /// blowup resolution rule.
        #[arg(long, value_name = "FILE")]
        lines: Option<PathBuf>,
    },
    /// Hyperplane-arrangement computations.
    Arrangement {
        #[command(subcommand)]
        what: ArrangementCommand,
    },
    /// Compare the degree-zero log ring of P^n minus n+2 generic hyperplanes
    /// with the Jacobian ring and Hochschild cohomology of its mirror.
    MirrorCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "W", default_value_t = 4)]
        max_weight: i64,
    },
    /// List the built-in examples, or write them out as files.
    Fixtures {
        /// Write fixture files into this directory instead of listing.
        #[arg(long, value_name = "DIR")]
        dir: Option<PathBuf>,
        /// Fixture names (all when omitted).
        names: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ArrangementCommand {
    /// Orlik-Solomon algebra of a central arrangement.
    Os {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
    /// Cohomology ring of a projective arrangement complement.
    Complement {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
    /// Normal-crossings pair of a generic projective arrangement
    /// (the full ncpair/1 file with --format json).
    Pair {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
    /// Symplectic-cohomology presentation of a generic projective
    /// arrangement complement.
    Sh {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        #[arg(long, value_name = "W", default_value_t = 6)]
        max_weight: i64,
    },
    /// Hochschild cohomology H^0/H^1 of the mirror superpotential of a
    /// generic projective arrangement.
    Mirror {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        #[arg(long, value_name = "W", default_value_t = 4)]
        max_weight: i64,
    },
}

// ---------------------------------------------------------------------------
// coefficient field selection

const SUPPORTED_PRIMES: &[u64] = &[3, 5, 7, 11, 13, 101, 251, 1009, 7919, 65521];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FieldChoice {
    Q,
    Fp(u64),
}

impl FieldChoice {
    fn parse(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Q);
        }
        match s.strip_prefix("fp:") {
            Some(tail) => {
                let p: u64 =
                    tail.parse().map_err(|_| format!("`{s}`: `{tail}` is not a number"))?;
                if SUPPORTED_PRIMES.contains(&p) {
                    Ok(FieldChoice::Fp(p))
                } else {
                    let list: Vec<String> =
                        SUPPORTED_PRIMES.iter().map(u64::to_string).collect();
                    Err(format!(
                        "characteristic {p} is not supported; supported primes: {}",
                        list.join(", ")
                    ))
                }
            }
            None => Err(format!("`{s}`: expected `q` or `fp:<prime>`")),
        }
    }

    fn label(self) -> String {
        match self {
            FieldChoice::Q => "Q".to_string(),
            FieldChoice::Fp(p) => format!("F_{p}"),
        }
    }
}

fn resolve_field(flag: Option<&str>) -> Result<FieldChoice, String> {
    match flag {
        Some(s) => FieldChoice::parse(s),
        None => match std::env::var("LOGCOH_FIELD") {
            Ok(s) => FieldChoice::parse(&s).map_err(|e| format!("LOGCOH_FIELD: {e}")),
            Err(std::env::VarError::NotPresent) => Ok(FieldChoice::Q),
            Err(e) => Err(format!("LOGCOH_FIELD: {e}")),
        },
    }
}

/// Every supported coefficient field is a concrete type; this dispatches a
/// generic block over the curated prime list.
macro_rules! with_field {
    ($choice:expr, $K:ident, $body:block) => {
        match $choice {
            FieldChoice::Q => {
                type $K = Rat;
                $body
            }
            FieldChoice::Fp(3) => {
                type $K = Fp<3>;
                $body
            }
            FieldChoice::Fp(5) => {
                type $K = Fp<5>;
                $body
            }
            FieldChoice::Fp(7) => {
                type $K = Fp<7>;
                $body
            }
            FieldChoice::Fp(11) => {
                type $K = Fp<11>;
                $body
            }
            FieldChoice::Fp(13) => {
                type $K = Fp<13>;
                $body
            }
            FieldChoice::Fp(101) => {
                type $K = Fp<101>;
                $body
            }
            FieldChoice::Fp(251) => {
                type $K = Fp<251>;
                $body
            }
            FieldChoice::Fp(1009) => {
                type $K = Fp<1009>;
                $body
            }
            FieldChoice::Fp(7919) => {
                type $K = Fp<7919>;
                $body
            }
            FieldChoice::Fp(65521) => {
                type $K = Fp<65521>;
                $body
            }
            FieldChoice::Fp(p) => unreachable!("prime {p} passed parsing but has no arm"),
        }
    };
}

// ---------------------------------------------------------------------------
// error and loading plumbing

enum CmdError {
    /// Unreadable or malformed input; exit 2.
    Input(String),
    /// Failure on valid input; exit 3.
    Computation(String),
}

impl From<schema::ParseError> for CmdError {
    fn from(e: schema::ParseError) -> Self {
        CmdError::Input(e.to_string())
    }
}

fn comp(e: impl std::fmt::Display) -> CmdError {
    CmdError::Computation(e.to_string())
}

fn read(path: &Path) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))
}

/// Either the parsed object or a rendered validation report (exit 2).
enum Loaded<T> {
    Ok(T),
    Report(String),
}

macro_rules! valid {
    ($loaded:expr) => {
        match $loaded {
            Loaded::Ok(x) => x,
            Loaded::Report(out) => return Ok((out, 2)),
        }
    };
}

fn load_pair<K: Field>(path: &Path, fmt: OutputFormat) -> Result<Loaded<NcPairData<K>>, CmdError> {
    let pair = schema::pair_from_json::<K>(&read(path)?)?;
    let report = pair.validate();
    if report.is_clean() {
        Ok(Loaded::Ok(pair))
    } else {
        let issues: Vec<String> = report.issues.iter().map(|i| i.to_string()).collect();
        Ok(Loaded::Report(validation_report("pair", &issues, fmt)))
    }
}

fn load_complex<K: Field>(
    path: &Path,
    fmt: OutputFormat,
) -> Result<Loaded<FilteredComplex<K>>, CmdError> {
    let c = schema::complex_from_json::<K>(&read(path)?)?;
    match c.validate() {
        Ok(()) => Ok(Loaded::Ok(c)),
        Err(issues) => {
            let issues: Vec<String> = issues.iter().map(|i| i.to_string()).collect();
            Ok(Loaded::Report(validation_report("complex", &issues, fmt)))
        }
    }
}

fn load_arrangement(path: &Path) -> Result<Arrangement, CmdError> {
    Ok(schema::arrangement_from_json(&read(path)?)?)
}

/// Projective and in general position (every set of forms has maximal rank);
/// returns `(n, k)` for the pair `P^n` minus `k` hyperplanes.
fn generic_projective(a: &Arrangement) -> Result<(usize, usize), CmdError> {
    if a.mode != ArrangementMode::Projective {
        return Err(comp(ArrangementError::ExpectedProjective));
    }
    let vars = a.variables();
    let lattice = intersection_lattice(a).map_err(comp)?;
    for (subset, flat) in &lattice.flats {
        let expected = subset.len().min(vars);
        if flat.rank != expected {
            return Err(CmdError::Computation(format!(
                "arrangement is not generic: forms {subset} have rank {}, expected {expected}",
                flat.rank
            )));
        }
    }
    Ok((vars - 1, a.hyperplanes()))
}

// ---------------------------------------------------------------------------
// command handlers

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = match resolve_field(cli.field.as_deref()) {
        Ok(f) => f,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let command = match (cli.command, cli.pair) {
        (Some(_), Some(_)) => {
            eprintln!("error: `--pair` before a subcommand is ambiguous; pass it to the subcommand");
            return ExitCode::from(2);
        }
        (Some(c), None) => c,
        (None, Some(pair)) => Command::Logcoh { pair, max_weight: cli.max_weight },
        (None, None) => {
            eprintln!("error: give a subcommand or `--pair <FILE>`; see `logcoh --help`");
            return ExitCode::from(2);
        }
    };
    match run(command, field, cli.format) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, field: FieldChoice, fmt: OutputFormat) -> Result<(String, u8), CmdError> {
    match command {
        Command::Validate { pair, complex, arrangement } => {
            run_validate(pair, complex, arrangement, field, fmt)
        }
        Command::Logcoh { pair, max_weight } => with_field!(field, K, {
            let p = valid!(load_pair::<K>(&pair, fmt)?);
            let ring = build_log_ring(&p, max_weight).map_err(comp)?;
            let out = hilbert_report(
                "log cohomology",
                &field.label(),
                max_weight,
                &ring.hilbert_table(),
                fmt,
            );
            Ok((out, 0))
        }),
        Command::Sr { pair, max_weight } => with_field!(field, K, {
            let p = valid!(load_pair::<K>(&pair, fmt)?);
            let presentation = stanley_reisner(&p);
            let hilbert = sr_hilbert(&p, max_weight);
            Ok((sr_report(&presentation, &hilbert, &field.label(), max_weight, fmt), 0))
        }),
        Command::Present { pair, max_weight } => with_field!(field, K, {
            let p = valid!(load_pair::<K>(&pair, fmt)?);
            let pres = presentation_topological(&p).map_err(comp)?;
            let out = presentation_report(&p, &pres, None, &field.label(), max_weight, fmt);
            Ok((out, 0))
        }),
        Command::Sspages { complex } => with_field!(field, K, {
            let c = valid!(load_complex::<K>(&complex, fmt)?);
            let stab = c.stabilization_page();
            let mut pages = Vec::new();
            for r in 0..=stab {
                let pg = page(&c, r).map_err(comp)?;
                pages.push((r, pg.dims(), pg.differentials_vanish()));
            }
            let einf = einfinity(&c).map_err(comp)?.dims();
            let scan = detect_degeneration(&c, stab).map_err(comp)?;
            let total = total_cohomology(&c).map_err(comp)?;
            let report = PagesReport {
                pages,
                einfinity: einf,
                stabilizes_at: stab,
                first_nonzero_differential: scan.first_nonzero,
                total: total.by_degree,
            };
            Ok((pages_report(&report, fmt), 0))
        }),
        Command::Classify { pair, gw_flags, lines } => with_field!(field, K, {
            let p = valid!(load_pair::<K>(&pair, fmt)?);
            let overrides = match &gw_flags {
                None => None,
                Some(path) => Some(schema::gw_flags_from_json(&read(path)?)?),
            };
            let line_forms = match &lines {
                None => None,
                Some(path) => {
                    let a = load_arrangement(path)?;
                    if a.mode != ArrangementMode::Projective || a.variables() != 3 {
                        return Err(CmdError::Input(
                            "`--lines` needs a projective arrangement with 3-coefficient forms"
                                .to_string(),
                        ));
                    }
                    Some(a.forms)
                }
            };
            let bundle = classify_bundle(&p, overrides.as_ref(), line_forms.as_deref())?;
            Ok((classify_report(&bundle, fmt), 0))
        }),
        Command::Arrangement { what } => run_arrangement(what, field, fmt),
        Command::MirrorCheck { n, max_weight } => {
            let m = n + 2;
            let sr_jacobian = sr_jacobian_isomorphism(n).map_err(comp)?;
            let hochschild = mirror_hochschild(m, max_weight).map_err(comp)?;
            let p = build_generic_pair::<Rat>(n, m).map_err(comp)?;
            let sr = sr_hilbert(&p, max_weight);
            let sr_by_weight: Vec<usize> =
                (0..=max_weight).map(|w| sr.get(&w).copied().unwrap_or(0)).collect();
            let b1 = p.strata[&Subset::EMPTY].ring.basis().iter().filter(|b| b.deg == 1).count();
            let check = MirrorCheck { n, m, sr_jacobian, hochschild, sr_by_weight, b1 };
            Ok((mirror_check_report(&check, fmt), 0))
        }
        Command::Fixtures { dir, names } => run_fixtures(dir, names, fmt),
    }
}

fn run_validate(
    pair: Option<PathBuf>,
    complex: Option<PathBuf>,
    arrangement: Option<PathBuf>,
    field: FieldChoice,
    fmt: OutputFormat,
) -> Result<(String, u8), CmdError> {
    let given = [pair.is_some(), complex.is_some(), arrangement.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if given != 1 {
        return Err(CmdError::Input(
            "validate needs exactly one of --pair, --complex, --arrangement".to_string(),
        ));
    }
    let (what, issues): (&str, Vec<String>) = if let Some(path) = pair {
        with_field!(field, K, {
            let p = schema::pair_from_json::<K>(&read(&path)?)?;
            ("pair", p.validate().issues.iter().map(|i| i.to_string()).collect())
        })
    } else if let Some(path) = complex {
        with_field!(field, K, {
            let c = schema::complex_from_json::<K>(&read(&path)?)?;
            ("complex", c.validate().err().into_iter().flatten().map(|i| i.to_string()).collect())
        })
    } else {
        let a = load_arrangement(&arrangement.expect("one input is present"))?;
        ("arrangement", a.validate().err().map(|e| vec![e.to_string()]).unwrap_or_default())
    };
    let code = if issues.is_empty() { 0 } else { 2 };
    Ok((validation_report(what, &issues, fmt), code))
}

/// The ordered criterion list for `classify`. Criteria whose hypotheses the
/// pair does not even state are reported as skipped, not as verdicts.
fn classify_bundle<K: Field>(
    pair: &NcPairData<K>,
    gw_override: Option<&BTreeMap<Subset, bool>>,
    lines: Option<&[Vec<Rat>]>,
) -> Result<VerdictBundle, CmdError> {
    let mut entries = Vec::new();

    match check_easycor(pair.flags.same_line_bundle.as_deref()) {
        Ok(v) => entries.push(("easycor", CriterionOutcome::Verdict(v))),
        Err(e) => entries.push(("easycor", CriterionOutcome::Skipped(e.to_string()))),
    }

    let classification = match lines {
        None => classify_nc_pair(pair),
        Some(forms) => classify_pair(&ClassifyInput {
            pi2_omega_zero: pair.flags.pi2_omega_zero,
            same_line_bundle: pair.flags.same_line_bundle.is_some(),
            k: pair.k,
            dim: pair.dim,
            p2_lines: Some(forms.to_vec()),
        }),
    };
    entries.push(("topological", CriterionOutcome::Verdict(classification.topological)));
    entries.push((
        "multiplicatively_topological",
        CriterionOutcome::Verdict(classification.multiplicatively_topological),
    ));

    entries.push(("condition_a", CriterionOutcome::Verdict(check_condition_a(pair))));

    match degree_zero_report(pair) {
        Ok(r) => {
            entries.push(("degree_zero", CriterionOutcome::VerdictWithSr(r.verdict, r.gr_sh0)))
        }
        Err(e) => entries.push(("degree_zero", CriterionOutcome::Skipped(e.to_string()))),
    }

    entries.push((
        "gw_degeneration",
        CriterionOutcome::Verdict(gw_degeneration_report(pair, gw_override)),
    ));

    let resolution = match lines {
        None => None,
        Some(forms) => {
            let (data, classification) = resolve_p2_arrangement(forms).map_err(comp)?;
            Some(ResolutionReport { data, classification })
        }
    };
    Ok(VerdictBundle { entries, resolution })
}

fn run_arrangement(
    cmd: ArrangementCommand,
    field: FieldChoice,
    fmt: OutputFormat,
) -> Result<(String, u8), CmdError> {
    match cmd {
        ArrangementCommand::Os { file } => with_field!(field, K, {
            let a = load_arrangement(&file)?;
            let os = orlik_solomon::<K>(&a).map_err(comp)?;
            let label = format!(
                "Orlik-Solomon algebra of {} hyperplanes in {} variables",
                a.hyperplanes(),
                a.variables()
            );
            Ok((algebra_report(&label, &field.label(), &os.algebra, fmt), 0))
        }),
        ArrangementCommand::Complement { file } => with_field!(field, K, {
            let a = load_arrangement(&file)?;
            let alg = projective_complement::<K>(&a).map_err(comp)?;
            let label = format!(
                "complement cohomology of {} hyperplanes in P^{}",
                a.hyperplanes(),
                a.variables().saturating_sub(1)
            );
            Ok((algebra_report(&label, &field.label(), &alg, fmt), 0))
        }),
        ArrangementCommand::Pair { file } => with_field!(field, K, {
            let a = load_arrangement(&file)?;
            let (n, k) = generic_projective(&a)?;
            let p = build_generic_pair::<K>(n, k).map_err(comp)?;
            match fmt {
                OutputFormat::Json => Ok((schema::pair_to_json(&p), 0)),
                _ => Ok((pair_summary(&p, fmt), 0)),
            }
        }),
        ArrangementCommand::Sh { file, max_weight } => with_field!(field, K, {
            let a = load_arrangement(&file)?;
            let (n, k) = generic_projective(&a)?;
            let sh = sh_presentation::<K>(n, k).map_err(comp)?;
            let p = build_generic_pair::<K>(n, k).map_err(comp)?;
            let out = presentation_report(
                &p,
                &sh.presentation,
                sh.note.as_deref(),
                &field.label(),
                max_weight,
                fmt,
            );
            Ok((out, 0))
        }),
        ArrangementCommand::Mirror { file, max_weight } => {
            let a = load_arrangement(&file)?;
            generic_projective(&a)?;
            let mh = mirror_hochschild(a.hyperplanes(), max_weight).map_err(comp)?;
            Ok((mirror_report(&mh, fmt), 0))
        }
    }
}

fn run_fixtures(
    dir: Option<PathBuf>,
    names: Vec<String>,
    fmt: OutputFormat,
) -> Result<(String, u8), CmdError> {
    let selected: Vec<&'static str> = if names.is_empty() {
        fixtures::catalog().to_vec()
    } else {
        let mut out = Vec::new();
        for n in &names {
            match fixtures::catalog().iter().find(|c| **c == n.as_str()) {
                Some(c) => out.push(*c),
                None => {
                    return Err(CmdError::Input(format!(
                        "unknown fixture `{n}`; run `logcoh fixtures` for the catalog"
                    )))
                }
            }
        }
        out
    };
    match dir {
        None => {
            let rows: Vec<(&str, &str)> = selected
                .iter()
                .map(|n| (*n, fixtures::build(n).expect("catalog names build").kind()))
                .collect();
            match fmt {
                OutputFormat::Json => {
                    #[derive(serde::Serialize)]
                    struct Row {
                        name: &'static str,
                        kind: &'static str,
                    }
                    let rows: Vec<Row> =
                        selected
                            .iter()
                            .map(|n| Row {
                                name: n,
                                kind: fixtures::build(n).expect("catalog names build").kind(),
                            })
                            .collect();
                    Ok((json_string(&rows), 0))
                }
                _ => {
                    let mut out = String::new();
                    for (name, kind) in rows {
                        out.push_str(&format!("{name}\t{kind}\n"));
                    }
                    Ok((out, 0))
                }
            }
        }
        Some(dir) => {
            fs::create_dir_all(&dir)
                .map_err(|e| CmdError::Input(format!("{}: {e}", dir.display())))?;
            let mut out = String::new();
            for name in selected {
                let fixture = fixtures::build(name).expect("catalog names build");
                let path = dir.join(format!("{name}.json"));
                fs::write(&path, fixture.to_json())
                    .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
                out.push_str(&format!("wrote {}\n", path.display()));
            }
            Ok((out, 0))
        }
    }
}
