//! Byte-stable renderers for the CLI: every command's output in text, TSV,
//! and JSON form. All functions return complete output strings ending in a
//! newline; nothing here touches the filesystem or the clock.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use logcoh_core::arrangements::{MirrorHochschild, SrJacobianReport};
use logcoh_core::criteria::{Classification, ResolvedPairData, Verdict, VerdictStatus};
use logcoh_core::field::Field;
use logcoh_core::graded::GradedAlgebra;
use logcoh_core::logring::{HilbertTable, SrPresentation, TopPresentation};
use logcoh_core::pair::{NcPairData, Subset};

use crate::schema::Coef;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Tsv,
    Json,
}

pub fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn tsv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

/// Left-aligns the first column runs and right-aligns the rest, padding to
/// per-column widths with two-space separators.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (c, cell) in row.iter().enumerate() {
            widths[c] = widths[c].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            if c == 0 {
                line.push_str(&format!("{cell:<width$}", width = widths[c]));
            } else {
                line.push_str(&format!("{cell:>width$}", width = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// shared pretty-printers

/// `t1*t3` style monomial for the components of a subset.
pub fn subset_monomial(s: Subset) -> String {
    let names: Vec<String> = s.indices().into_iter().map(|i| format!("t{i}")).collect();
    if names.is_empty() {
        "1".to_string()
    } else {
        names.join("*")
    }
}

/// Linear combination `2*x + y - z` from sparse coordinates and basis names.
/// A term whose coefficient renders with a leading minus joins as ` - `.
pub fn combination<K: Field>(coords: &[(usize, K)], names: &[String]) -> String {
    let mut out = String::new();
    for (idx, c) in coords {
        if c.is_zero() {
            continue;
        }
        let name = &names[*idx];
        let term = if *c == K::one() {
            name.clone()
        } else if *c == K::from_i64(-1) {
            format!("-{name}")
        } else {
            format!("{c}*{name}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(pos) = term.strip_prefix('-') {
            write!(out, " - {pos}").unwrap();
        } else {
            write!(out, " + {term}").unwrap();
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `1 + 3*t + 2*t^2` from (degree, dimension) pairs.
pub fn poincare_string(poly: &[(i64, usize)]) -> String {
    let mut terms = Vec::new();
    for &(d, n) in poly {
        if n == 0 {
            continue;
        }
        terms.push(match (d, n) {
            (0, n) => format!("{n}"),
            (1, 1) => "t".to_string(),
            (1, n) => format!("{n}*t"),
            (d, 1) => format!("t^{d}"),
            (d, n) => format!("{n}*t^{d}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// `k[t1, t2] / (t1*t2)` style presentation of the Stanley-Reisner part.
pub fn sr_string(p: &SrPresentation) -> String {
    match p {
        SrPresentation::Classical { k, minimal_nonfaces } => {
            let vars: Vec<String> = (1..=*k).map(|i| format!("t{i}")).collect();
            let ring = format!("k[{}]", vars.join(", "));
            if minimal_nonfaces.is_empty() {
                ring
            } else {
                let rels: Vec<String> =
                    minimal_nonfaces.iter().map(|&s| subset_monomial(s)).collect();
                format!("{ring} / ({})", rels.join(", "))
            }
        }
        SrPresentation::PerComponent { generators } => {
            let vars: Vec<String> = generators
                .iter()
                .map(|(s, c)| format!("t[{s}#{}]", c + 1))
                .collect();
            format!("k[{}] (one generator per stratum component)", vars.join(", "))
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SrJson {
    Classical { k: usize, minimal_nonfaces: Vec<Vec<usize>> },
    PerComponent { generators: Vec<PerComponentGenerator> },
}

#[derive(Serialize)]
pub struct PerComponentGenerator {
    #[serde(rename = "I")]
    pub members: Vec<usize>,
    pub component: usize,
}

pub fn sr_json(p: &SrPresentation) -> SrJson {
    match p {
        SrPresentation::Classical { k, minimal_nonfaces } => SrJson::Classical {
            k: *k,
            minimal_nonfaces: minimal_nonfaces.iter().map(|s| s.indices()).collect(),
        },
        SrPresentation::PerComponent { generators } => SrJson::PerComponent {
            generators: generators
                .iter()
                .map(|(s, c)| PerComponentGenerator { members: s.indices(), component: *c })
                .collect(),
        },
    }
}

// ---------------------------------------------------------------------------
// bigraded Hilbert tables (logcoh, sr, present)

#[derive(Serialize)]
struct HilbertEntryJson {
    degree: i64,
    weight: i64,
    dim: usize,
}

#[derive(Serialize)]
struct HilbertJson {
    label: String,
    field: String,
    weight_bound: i64,
    total_dim: usize,
    weights: Vec<i64>,
    degrees: Vec<i64>,
    entries: Vec<HilbertEntryJson>,
}

fn hilbert_entries(table: &HilbertTable) -> Vec<(i64, i64, usize)> {
    let mut out = Vec::new();
    for &d in &table.degrees() {
        for &w in &table.weights() {
            let dim = table.dim(d, w);
            if dim > 0 {
                out.push((d, w, dim));
            }
        }
    }
    out
}

pub fn hilbert_report(
    label: &str,
    field: &str,
    weight_bound: i64,
    table: &HilbertTable,
    fmt: OutputFormat,
) -> String {
    let entries = hilbert_entries(table);
    let total: usize = entries.iter().map(|e| e.2).sum();
    match fmt {
        OutputFormat::Json => json_string(&HilbertJson {
            label: label.to_string(),
            field: field.to_string(),
            weight_bound,
            total_dim: total,
            weights: table.weights(),
            degrees: table.degrees(),
            entries: entries
                .into_iter()
                .map(|(degree, weight, dim)| HilbertEntryJson { degree, weight, dim })
                .collect(),
        }),
        OutputFormat::Tsv => {
            let mut rows = vec![vec![
                "degree".to_string(),
                "weight".to_string(),
                "dim".to_string(),
            ]];
            for (d, w, n) in entries {
                rows.push(vec![d.to_string(), w.to_string(), n.to_string()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let weights = table.weights();
            let degrees = table.degrees();
            let mut out =
                format!("{label} over {field}, weight bound {weight_bound}, total dimension {total}\n");
            if weights.is_empty() {
                out.push_str("(empty)\n");
                return out;
            }
            let mut rows = Vec::new();
            let mut header = vec!["weight".to_string()];
            header.extend(weights.iter().map(|w| w.to_string()));
            rows.push(header);
            for &d in &degrees {
                let mut row = vec![format!("deg {d}")];
                for &w in &weights {
                    let dim = table.dim(d, w);
                    row.push(if dim == 0 { ".".to_string() } else { dim.to_string() });
                }
                rows.push(row);
            }
            let mut totals = vec!["total".to_string()];
            for &w in &weights {
                let t: usize = degrees.iter().map(|&d| table.dim(d, w)).sum();
                totals.push(t.to_string());
            }
            rows.push(totals);
            out.push_str(&aligned(&rows));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// Stanley-Reisner report (sr)

#[derive(Serialize)]
struct SrReportJson {
    field: String,
    weight_bound: i64,
    presentation: SrJson,
    hilbert: Vec<WeightDimJson>,
}

#[derive(Serialize)]
struct WeightDimJson {
    weight: i64,
    dim: usize,
}

pub fn sr_report(
    presentation: &SrPresentation,
    hilbert: &BTreeMap<i64, usize>,
    field: &str,
    weight_bound: i64,
    fmt: OutputFormat,
) -> String {
    match fmt {
        OutputFormat::Json => json_string(&SrReportJson {
            field: field.to_string(),
            weight_bound,
            presentation: sr_json(presentation),
            hilbert: hilbert
                .iter()
                .map(|(&weight, &dim)| WeightDimJson { weight, dim })
                .collect(),
        }),
        OutputFormat::Tsv => {
            let mut rows = vec![vec!["weight".to_string(), "dim".to_string()]];
            for (w, n) in hilbert {
                rows.push(vec![w.to_string(), n.to_string()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let mut out = format!("SR = {}\n", sr_string(presentation));
            let mut header = vec!["weight".to_string()];
            let mut dims = vec!["dim".to_string()];
            for (w, n) in hilbert {
                header.push(w.to_string());
                dims.push(n.to_string());
            }
            out.push_str(&aligned(&[header, dims]));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// topological-pair presentation (present, arrangement sh)

#[derive(Serialize)]
struct TGeneratorJson {
    name: String,
    degree: i64,
    weight: i64,
}

#[derive(Serialize)]
struct NamedDegreeJson {
    name: String,
    degree: i64,
}

#[derive(Serialize)]
struct ProductJson {
    left: String,
    right: String,
    value: Vec<(usize, Coef)>,
}

#[derive(Serialize)]
struct KernelJson {
    #[serde(rename = "I")]
    members: Vec<usize>,
    relations: Vec<String>,
}

#[derive(Serialize)]
struct PresentationJson {
    field: String,
    weight_bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    t_generators: Vec<TGeneratorJson>,
    xring_generators: Vec<NamedDegreeJson>,
    stanley_reisner: SrJson,
    xring_products: Vec<ProductJson>,
    kernel_relations: Vec<KernelJson>,
    hilbert: Vec<HilbertEntryJson>,
}

/// The full presentation report. `pair` supplies the `H*(X)` structure
/// constants that `TopPresentation` does not carry.
pub fn presentation_report<K: Field>(
    pair: &NcPairData<K>,
    presentation: &TopPresentation<K>,
    note: Option<&str>,
    field: &str,
    weight_bound: i64,
    fmt: OutputFormat,
) -> String {
    let xring = &pair.strata[&Subset::EMPTY].ring;
    let names: Vec<String> = presentation.xring_basis.iter().map(|(n, _)| n.clone()).collect();
    let table = presentation.hilbert_table(weight_bound);

    // Products between non-unit basis elements, one orientation per pair.
    let mut products = Vec::new();
    for i in 0..xring.dim() {
        for j in i..xring.dim() {
            if i == xring.unit() || j == xring.unit() {
                continue;
            }
            products.push((i, j, xring.product(i, j).to_vec()));
        }
    }

    // Kernel columns rendered as combinations of X-ring basis names.
    let mut kernels: Vec<(Subset, Vec<String>)> = Vec::new();
    for (stratum, matrix) in &presentation.kernel_relations {
        let mut rendered = Vec::new();
        for c in 0..matrix.cols() {
            let coords: Vec<(usize, K)> = (0..matrix.rows())
                .map(|r| (r, matrix[(r, c)].clone()))
                .filter(|(_, x)| !x.is_zero())
                .collect();
            rendered.push(combination(&coords, &names));
        }
        kernels.push((*stratum, rendered));
    }

    match fmt {
        OutputFormat::Json => json_string(&PresentationJson {
            field: field.to_string(),
            weight_bound,
            note: note.map(str::to_string),
            t_generators: (1..=pair.k)
                .map(|i| TGeneratorJson {
                    name: format!("t{i}"),
                    degree: 2 * (1 - pair.pole_orders[i - 1]),
                    weight: pair.kappa[i - 1],
                })
                .collect(),
            xring_generators: presentation
                .xring_basis
                .iter()
                .map(|(name, degree)| NamedDegreeJson { name: name.clone(), degree: *degree })
                .collect(),
            stanley_reisner: sr_json(&presentation.sr),
            xring_products: products
                .into_iter()
                .map(|(i, j, value)| ProductJson {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    value: value.iter().map(|(t, c)| (*t, Coef::from_field(c))).collect(),
                })
                .collect(),
            kernel_relations: kernels
                .into_iter()
                .map(|(s, relations)| KernelJson { members: s.indices(), relations })
                .collect(),
            hilbert: hilbert_entries(&table)
                .into_iter()
                .map(|(degree, weight, dim)| HilbertEntryJson { degree, weight, dim })
                .collect(),
        }),
        OutputFormat::Tsv => {
            let mut rows = vec![vec![
                "degree".to_string(),
                "weight".to_string(),
                "dim".to_string(),
            ]];
            for (d, w, n) in hilbert_entries(&table) {
                rows.push(vec![d.to_string(), w.to_string(), n.to_string()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            if let Some(n) = note {
                writeln!(out, "note: {n}").unwrap();
            }
            out.push_str("generators:\n");
            for i in 1..=pair.k {
                writeln!(
                    out,
                    "  t{i}  degree {}, weight {}",
                    2 * (1 - pair.pole_orders[i - 1]),
                    pair.kappa[i - 1]
                )
                .unwrap();
            }
            for (i, (name, deg)) in presentation.xring_basis.iter().enumerate() {
                if i == xring.unit() {
                    continue;
                }
                writeln!(out, "  {name}  degree {deg}  (basis of H*(X))").unwrap();
            }
            out.push_str("relations:\n");
            match &presentation.sr {
                SrPresentation::Classical { minimal_nonfaces, .. } => {
                    for s in minimal_nonfaces {
                        writeln!(out, "  {} = 0", subset_monomial(*s)).unwrap();
                    }
                }
                SrPresentation::PerComponent { .. } => {
                    writeln!(out, "  (disconnected strata: {})", sr_string(&presentation.sr))
                        .unwrap();
                }
            }
            for (i, j, value) in &products {
                writeln!(out, "  {}*{} = {}", names[*i], names[*j], combination(value, &names))
                    .unwrap();
            }
            for (stratum, rendered) in &kernels {
                for r in rendered {
                    writeln!(out, "  {} * ({r}) = 0", subset_monomial(*stratum)).unwrap();
                }
            }
            out.push_str(&hilbert_report(
                "presented ring",
                field,
                weight_bound,
                &table,
                OutputFormat::Text,
            ));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// spectral sequence pages (sspages)

/// Dimension of each `(p, q)` cell of one page.
pub type PageDims = BTreeMap<(i64, i64), usize>;

pub struct PagesReport {
    /// `(r, cell dims, all differentials vanish)` per computed page.
    pub pages: Vec<(i64, PageDims, bool)>,
    pub einfinity: PageDims,
    pub stabilizes_at: i64,
    pub first_nonzero_differential: Option<i64>,
    /// Total cohomology dimension per degree.
    pub total: BTreeMap<i64, usize>,
}

#[derive(Serialize)]
struct CellJson {
    p: i64,
    q: i64,
    dim: usize,
}

#[derive(Serialize)]
struct PageJson {
    r: i64,
    differentials_vanish: bool,
    cells: Vec<CellJson>,
}

#[derive(Serialize)]
struct PagesJson {
    stabilizes_at: i64,
    first_nonzero_differential: Option<i64>,
    pages: Vec<PageJson>,
    einfinity: Vec<CellJson>,
    total: Vec<DegreeDimJson>,
}

#[derive(Serialize)]
struct DegreeDimJson {
    degree: i64,
    dim: usize,
}

fn cells_json(cells: &BTreeMap<(i64, i64), usize>) -> Vec<CellJson> {
    cells.iter().map(|(&(p, q), &dim)| CellJson { p, q, dim }).collect()
}

/// Dimension grid with p increasing left to right and q decreasing top to
/// bottom, indented two spaces.
fn page_grid(cells: &BTreeMap<(i64, i64), usize>) -> String {
    if cells.is_empty() {
        return "  (zero)\n".to_string();
    }
    let p_min = cells.keys().map(|k| k.0).min().unwrap();
    let p_max = cells.keys().map(|k| k.0).max().unwrap();
    let q_min = cells.keys().map(|k| k.1).min().unwrap();
    let q_max = cells.keys().map(|k| k.1).max().unwrap();
    let mut rows = Vec::new();
    let mut header = vec![String::new()];
    header.extend((p_min..=p_max).map(|p| format!("p={p}")));
    rows.push(header);
    let mut q = q_max;
    while q >= q_min {
        let mut row = vec![format!("q={q}")];
        for p in p_min..=p_max {
            row.push(cells.get(&(p, q)).map_or(".".to_string(), |d| d.to_string()));
        }
        rows.push(row);
        q -= 1;
    }
    let mut out = String::new();
    for line in aligned(&rows).lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

pub fn pages_report(r: &PagesReport, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_string(&PagesJson {
            stabilizes_at: r.stabilizes_at,
            first_nonzero_differential: r.first_nonzero_differential,
            pages: r
                .pages
                .iter()
                .map(|(pr, cells, vanish)| PageJson {
                    r: *pr,
                    differentials_vanish: *vanish,
                    cells: cells_json(cells),
                })
                .collect(),
            einfinity: cells_json(&r.einfinity),
            total: r
                .total
                .iter()
                .map(|(&degree, &dim)| DegreeDimJson { degree, dim })
                .collect(),
        }),
        OutputFormat::Tsv => {
            let mut rows =
                vec![vec!["page".to_string(), "p".to_string(), "q".to_string(), "dim".to_string()]];
            for (pr, cells, _) in &r.pages {
                for (&(p, q), &dim) in cells {
                    rows.push(vec![pr.to_string(), p.to_string(), q.to_string(), dim.to_string()]);
                }
            }
            for (&(p, q), &dim) in &r.einfinity {
                rows.push(vec!["inf".to_string(), p.to_string(), q.to_string(), dim.to_string()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let mut out = format!("stabilizes at E_{}\n", r.stabilizes_at);
            match r.first_nonzero_differential {
                Some(fr) => writeln!(out, "first nonzero differential: d_{fr}").unwrap(),
                None => out.push_str("all differentials vanish\n"),
            }
            for (pr, cells, vanish) in &r.pages {
                let marker = if *vanish { "  (d = 0)" } else { "" };
                writeln!(out, "E_{pr}:{marker}").unwrap();
                out.push_str(&page_grid(cells));
            }
            out.push_str("E_infinity:\n");
            out.push_str(&page_grid(&r.einfinity));
            if r.total.is_empty() {
                out.push_str("total cohomology: (zero)\n");
            } else {
                let parts: Vec<String> =
                    r.total.iter().map(|(d, n)| format!("H^{d} = {n}")).collect();
                writeln!(out, "total cohomology: {}", parts.join(", ")).unwrap();
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// verdicts (classify)

pub enum CriterionOutcome {
    Verdict(Verdict),
    /// Degree-zero result with its claimed gr SH^0 presentation.
    VerdictWithSr(Verdict, SrPresentation),
    Skipped(String),
}

pub struct VerdictBundle {
    pub entries: Vec<(&'static str, CriterionOutcome)>,
    pub resolution: Option<ResolutionReport>,
}

/// Output of the plane-arrangement resolution lemma.
pub struct ResolutionReport {
    pub data: ResolvedPairData,
    pub classification: Classification,
}

fn status_str(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Established => "established",
        VerdictStatus::Inconclusive => "inconclusive",
        VerdictStatus::HypothesisFailed => "hypothesis-failed",
    }
}

#[derive(Serialize)]
struct CriterionJson {
    name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gr_sh0: Option<SrJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

#[derive(Serialize)]
struct VerdictJson {
    status: &'static str,
    rule: &'static str,
    witnesses: Vec<String>,
}

#[derive(Serialize)]
struct ResolutionJson {
    components: Vec<String>,
    blowups: Vec<BlowupJson>,
    nonempty: Vec<Vec<usize>>,
    topological: VerdictJson,
    multiplicatively_topological: VerdictJson,
}

#[derive(Serialize)]
struct BlowupJson {
    center: Vec<Coef>,
    lines: Vec<usize>,
}

#[derive(Serialize)]
struct BundleJson {
    criteria: Vec<CriterionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolution: Option<ResolutionJson>,
}

fn verdict_json(v: &Verdict) -> VerdictJson {
    VerdictJson { status: status_str(v.status), rule: v.rule, witnesses: v.witnesses.clone() }
}

pub fn classify_report(bundle: &VerdictBundle, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => {
            let criteria = bundle
                .entries
                .iter()
                .map(|(name, outcome)| {
                    let mut row = CriterionJson {
                        name,
                        status: None,
                        rule: None,
                        witnesses: None,
                        gr_sh0: None,
                        skipped: None,
                    };
                    match outcome {
                        CriterionOutcome::Verdict(v) => {
                            row.status = Some(status_str(v.status));
                            row.rule = Some(v.rule);
                            row.witnesses = Some(v.witnesses.clone());
                        }
                        CriterionOutcome::VerdictWithSr(v, sr) => {
                            row.status = Some(status_str(v.status));
                            row.rule = Some(v.rule);
                            row.witnesses = Some(v.witnesses.clone());
                            row.gr_sh0 = Some(sr_json(sr));
                        }
                        CriterionOutcome::Skipped(reason) => row.skipped = Some(reason.clone()),
                    }
                    row
                })
                .collect();
            let resolution = bundle.resolution.as_ref().map(|r| ResolutionJson {
                components: r.data.component_names.clone(),
                blowups: r
                    .data
                    .blowups
                    .iter()
                    .map(|(center, lines)| BlowupJson {
                        center: center.iter().map(Coef::from_field).collect(),
                        lines: lines.clone(),
                    })
                    .collect(),
                nonempty: r.data.nonempty.iter().map(|s| s.indices()).collect(),
                topological: verdict_json(&r.classification.topological),
                multiplicatively_topological: verdict_json(
                    &r.classification.multiplicatively_topological,
                ),
            });
            json_string(&BundleJson { criteria, resolution })
        }
        OutputFormat::Tsv => {
            let mut rows = vec![vec![
                "criterion".to_string(),
                "status".to_string(),
                "rule".to_string(),
                "detail".to_string(),
            ]];
            for (name, outcome) in &bundle.entries {
                rows.push(match outcome {
                    CriterionOutcome::Verdict(v) | CriterionOutcome::VerdictWithSr(v, _) => vec![
                        name.to_string(),
                        status_str(v.status).to_string(),
                        v.rule.to_string(),
                        v.witnesses.join("; "),
                    ],
                    CriterionOutcome::Skipped(reason) => vec![
                        name.to_string(),
                        "skipped".to_string(),
                        String::new(),
                        reason.clone(),
                    ],
                });
            }
            if let Some(r) = &bundle.resolution {
                for (label, v) in [
                    ("resolution.topological", &r.classification.topological),
                    (
                        "resolution.multiplicatively_topological",
                        &r.classification.multiplicatively_topological,
                    ),
                ] {
                    rows.push(vec![
                        label.to_string(),
                        status_str(v.status).to_string(),
                        v.rule.to_string(),
                        v.witnesses.join("; "),
                    ]);
                }
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for (name, outcome) in &bundle.entries {
                match outcome {
                    CriterionOutcome::Verdict(v) => writeln!(out, "{name}: {v}").unwrap(),
                    CriterionOutcome::VerdictWithSr(v, sr) => {
                        writeln!(out, "{name}: {v}").unwrap();
                        writeln!(out, "  gr SH^0 = {}", sr_string(sr)).unwrap();
                    }
                    CriterionOutcome::Skipped(reason) => {
                        writeln!(out, "{name}: skipped ({reason})").unwrap()
                    }
                }
            }
            if let Some(r) = &bundle.resolution {
                out.push_str("resolution of the line arrangement:\n");
                writeln!(out, "  components: {}", r.data.component_names.join(", ")).unwrap();
                if r.data.blowups.is_empty() {
                    out.push_str("  blowups: none\n");
                }
                for (i, (center, lines)) in r.data.blowups.iter().enumerate() {
                    let coords: Vec<String> =
                        center.iter().map(|c| format!("{c}")).collect();
                    let through: Vec<String> = lines.iter().map(|l| format!("L{l}")).collect();
                    writeln!(
                        out,
                        "  E{} at ({}) through {}",
                        i + 1,
                        coords.join(" : "),
                        through.join(", ")
                    )
                    .unwrap();
                }
                let pairs: Vec<String> = r
                    .data
                    .nonempty
                    .iter()
                    .filter(|s| s.len() == 2)
                    .map(|s| s.to_string())
                    .collect();
                writeln!(out, "  pairwise intersections: {}", pairs.join(" ")).unwrap();
                writeln!(out, "  topological: {}", r.classification.topological).unwrap();
                writeln!(
                    out,
                    "  multiplicatively_topological: {}",
                    r.classification.multiplicatively_topological
                )
                .unwrap();
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// validation (validate)

#[derive(Serialize)]
struct ValidationJson {
    clean: bool,
    issues: Vec<String>,
}

pub fn validation_report(what: &str, issues: &[String], fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => {
            json_string(&ValidationJson { clean: issues.is_empty(), issues: issues.to_vec() })
        }
        OutputFormat::Tsv => {
            let mut rows = vec![vec!["issue".to_string()]];
            for i in issues {
                rows.push(vec![i.clone()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            if issues.is_empty() {
                format!("{what}: valid\n")
            } else {
                let mut out = format!("{what}: {} issue(s)\n", issues.len());
                for i in issues {
                    writeln!(out, "  {i}").unwrap();
                }
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------
// graded algebras (arrangement os, arrangement complement)

#[derive(Serialize)]
struct AlgebraJson {
    label: String,
    field: String,
    dim: usize,
    poincare: Vec<DegreeDimJson>,
    basis: Vec<NamedDegreeJson>,
}

pub fn algebra_report<K: Field>(
    label: &str,
    field: &str,
    alg: &GradedAlgebra<K>,
    fmt: OutputFormat,
) -> String {
    let poly = alg.poincare_polynomial();
    match fmt {
        OutputFormat::Json => json_string(&AlgebraJson {
            label: label.to_string(),
            field: field.to_string(),
            dim: alg.dim(),
            poincare: poly
                .iter()
                .map(|&(degree, dim)| DegreeDimJson { degree, dim })
                .collect(),
            basis: alg
                .basis()
                .iter()
                .map(|b| NamedDegreeJson { name: b.name.clone(), degree: b.deg })
                .collect(),
        }),
        OutputFormat::Tsv => {
            let mut rows = vec![vec!["degree".to_string(), "dim".to_string()]];
            for (d, n) in &poly {
                rows.push(vec![d.to_string(), n.to_string()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let mut out = format!("{label} over {field}, dimension {}\n", alg.dim());
            writeln!(out, "poincare polynomial: {}", poincare_string(&poly)).unwrap();
            for (d, _) in &poly {
                let names: Vec<String> = alg
                    .basis()
                    .iter()
                    .filter(|b| b.deg == *d)
                    .map(|b| b.name.clone())
                    .collect();
                writeln!(out, "deg {d}: {}", names.join(", ")).unwrap();
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// pair summary (arrangement pair, text/tsv forms)

pub fn pair_summary<K: Field>(p: &NcPairData<K>, fmt: OutputFormat) -> String {
    let rows: Vec<(String, usize, usize)> = p
        .strata
        .iter()
        .map(|(s, st)| (s.to_string(), st.components, st.ring.dim()))
        .collect();
    match fmt {
        OutputFormat::Tsv => {
            let mut t = vec![vec![
                "stratum".to_string(),
                "components".to_string(),
                "ring_dim".to_string(),
            ]];
            for (s, c, d) in rows {
                t.push(vec![s, c.to_string(), d.to_string()]);
            }
            tsv(&t)
        }
        _ => {
            let mut out = format!(
                "pair: k = {}, dim = {}, {} nonempty strata\n",
                p.k,
                p.dim,
                p.strata.len()
            );
            let mut t = vec![vec![
                "stratum".to_string(),
                "components".to_string(),
                "ring dim".to_string(),
            ]];
            for (s, c, d) in rows {
                t.push(vec![s, c.to_string(), d.to_string()]);
            }
            out.push_str(&aligned(&t));
            out
        }
    }
}

// ---------------------------------------------------------------------------
// mirror side (arrangement mirror, mirror-check)

#[derive(Serialize)]
struct MirrorJson {
    m: usize,
    weight_bound: i64,
    h0: Vec<usize>,
    h1: Vec<usize>,
}

pub fn mirror_report(mh: &MirrorHochschild, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_string(&MirrorJson {
            m: mh.m,
            weight_bound: mh.weight_bound,
            h0: mh.h0.clone(),
            h1: mh.h1.clone(),
        }),
        OutputFormat::Tsv => {
            let mut rows = vec![vec!["weight".to_string(), "hh0".to_string(), "hh1".to_string()]];
            for w in 0..mh.h0.len() {
                rows.push(vec![w.to_string(), mh.h0[w].to_string(), mh.h1[w].to_string()]);
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let mut out = format!(
                "Hochschild cohomology of the mirror potential, m = {}, weights 0..{}\n",
                mh.m, mh.weight_bound
            );
            let mut header = vec!["weight".to_string()];
            let mut h0 = vec!["HH^0".to_string()];
            let mut h1 = vec!["HH^1".to_string()];
            for w in 0..mh.h0.len() {
                header.push(w.to_string());
                h0.push(mh.h0[w].to_string());
                h1.push(mh.h1[w].to_string());
            }
            out.push_str(&aligned(&[header, h0, h1]));
            out
        }
    }
}

pub struct MirrorCheck {
    pub n: usize,
    pub m: usize,
    pub sr_jacobian: SrJacobianReport,
    pub hochschild: MirrorHochschild,
    /// Stanley-Reisner dimensions by weight, same range as `hochschild.h0`.
    pub sr_by_weight: Vec<usize>,
    pub b1: usize,
}

impl MirrorCheck {
    pub fn h0_matches_sr(&self) -> bool {
        self.hochschild.h0 == self.sr_by_weight
    }

    pub fn h1_weight0_matches_b1(&self) -> bool {
        self.hochschild.h1.first() == Some(&self.b1)
    }
}

#[derive(Serialize)]
struct RelationPairJson {
    sr: String,
    jacobian: String,
}

#[derive(Serialize)]
struct MirrorCheckJson {
    n: usize,
    m: usize,
    relations_match: bool,
    relation_pairs: Vec<RelationPairJson>,
    sr_hilbert: Vec<usize>,
    jacobian_hilbert: Vec<usize>,
    weight_bound: i64,
    hh0: Vec<usize>,
    sr_by_weight: Vec<usize>,
    hh0_matches_sr: bool,
    hh1: Vec<usize>,
    b1: usize,
    hh1_weight0_matches_b1: bool,
}

pub fn mirror_check_report(c: &MirrorCheck, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => json_string(&MirrorCheckJson {
            n: c.n,
            m: c.m,
            relations_match: c.sr_jacobian.holds,
            relation_pairs: c
                .sr_jacobian
                .relation_pairs
                .iter()
                .map(|(sr, jacobian)| RelationPairJson {
                    sr: sr.clone(),
                    jacobian: jacobian.clone(),
                })
                .collect(),
            sr_hilbert: c.sr_jacobian.sr_hilbert.clone(),
            jacobian_hilbert: c.sr_jacobian.jacobian_hilbert.clone(),
            weight_bound: c.hochschild.weight_bound,
            hh0: c.hochschild.h0.clone(),
            sr_by_weight: c.sr_by_weight.clone(),
            hh0_matches_sr: c.h0_matches_sr(),
            hh1: c.hochschild.h1.clone(),
            b1: c.b1,
            hh1_weight0_matches_b1: c.h1_weight0_matches_b1(),
        }),
        OutputFormat::Tsv => {
            let mut rows = vec![vec![
                "series".to_string(),
                "index".to_string(),
                "value".to_string(),
            ]];
            let series: [(&str, &[usize]); 5] = [
                ("sr_hilbert", &c.sr_jacobian.sr_hilbert),
                ("jacobian_hilbert", &c.sr_jacobian.jacobian_hilbert),
                ("hh0", &c.hochschild.h0),
                ("sr_by_weight", &c.sr_by_weight),
                ("hh1", &c.hochschild.h1),
            ];
            for (name, values) in series {
                for (i, v) in values.iter().enumerate() {
                    rows.push(vec![name.to_string(), i.to_string(), v.to_string()]);
                }
            }
            tsv(&rows)
        }
        OutputFormat::Text => {
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            let join = |v: &[usize]| {
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            };
            let mut out = format!("mirror comparison for n = {} (m = {})\n", c.n, c.m);
            for (sr, jac) in &c.sr_jacobian.relation_pairs {
                writeln!(out, "relation match: {sr} <-> {jac}").unwrap();
            }
            writeln!(out, "SR hilbert (orders 0..6):       {}", join(&c.sr_jacobian.sr_hilbert))
                .unwrap();
            writeln!(
                out,
                "jacobian hilbert (orders 0..6): {}",
                join(&c.sr_jacobian.jacobian_hilbert)
            )
            .unwrap();
            writeln!(out, "presentations agree: {}", yes_no(c.sr_jacobian.holds)).unwrap();
            writeln!(
                out,
                "HH^0 by weight (0..{}): {}",
                c.hochschild.weight_bound,
                join(&c.hochschild.h0)
            )
            .unwrap();
            writeln!(
                out,
                "SR by weight   (0..{}): {}",
                c.hochschild.weight_bound,
                join(&c.sr_by_weight)
            )
            .unwrap();
            writeln!(out, "HH^0 matches SR: {}", yes_no(c.h0_matches_sr())).unwrap();
            writeln!(
                out,
                "HH^1 in weight 0: {} (b1 of the complement: {}), match: {}",
                c.hochschild.h1.first().copied().unwrap_or(0),
                c.b1,
                yes_no(c.h1_weight0_matches_b1())
            )
            .unwrap();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use logcoh_core::field::Rat;
    use logcoh_core::logring::build_log_ring;
    use num_bigint::BigInt;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn combinations_render_signs_and_units() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(combination::<Rat>(&[], &names), "0");
        assert_eq!(combination(&[(0, rat(1))], &names), "x");
        assert_eq!(combination(&[(0, rat(-1))], &names), "-x");
        assert_eq!(
            combination(&[(0, rat(2)), (1, rat(-1)), (2, rat(1))], &names),
            "2*x - y + z"
        );
        assert_eq!(
            combination(&[(0, Rat::new(BigInt::from(-1), BigInt::from(2))), (1, rat(1))], &names),
            "-1/2*x + y"
        );
    }

    #[test]
    fn poincare_strings_cover_the_degree_cases() {
        assert_eq!(poincare_string(&[]), "0");
        assert_eq!(poincare_string(&[(0, 1), (1, 3), (2, 2)]), "1 + 3*t + 2*t^2");
        assert_eq!(poincare_string(&[(1, 1), (3, 1)]), "t + t^3");
    }

    #[test]
    fn sr_strings_render_both_presentations() {
        let classical = SrPresentation::Classical {
            k: 3,
            minimal_nonfaces: vec![Subset::from_indices(&[1, 2, 3])],
        };
        assert_eq!(sr_string(&classical), "k[t1, t2, t3] / (t1*t2*t3)");
        let free = SrPresentation::Classical { k: 2, minimal_nonfaces: vec![] };
        assert_eq!(sr_string(&free), "k[t1, t2]");
        let per = SrPresentation::PerComponent {
            generators: vec![(Subset::singleton(1), 0), (Subset::singleton(1), 1)],
        };
        assert_eq!(sr_string(&per), "k[t[{1}#1], t[{1}#2]] (one generator per stratum component)");
    }

    #[test]
    fn hilbert_text_marks_zero_cells() {
        let pair = crate::fixtures::cp2_cubic();
        let ring = build_log_ring(&pair, 9).unwrap();
        let text = hilbert_report("log cohomology", "Q", 9, &ring.hilbert_table(), OutputFormat::Text);
        assert!(text.starts_with("log cohomology over Q, weight bound 9, total dimension 21\n"));
        assert!(text.contains("deg 1   .  2  2  2\n"), "got:\n{text}");
        assert!(text.contains("total   3  6  6  6\n"), "got:\n{text}");

        let tsv = hilbert_report("log cohomology", "Q", 9, &ring.hilbert_table(), OutputFormat::Tsv);
        assert!(tsv.starts_with("degree\tweight\tdim\n"));
        assert!(tsv.contains("0\t0\t1\n"));
        let json = hilbert_report("log cohomology", "Q", 9, &ring.hilbert_table(), OutputFormat::Json);
        assert!(json.contains("\"total_dim\": 21"));
    }

    #[test]
    fn page_grids_right_align_and_mark_gaps() {
        let mut cells = BTreeMap::new();
        cells.insert((0, 0), 1);
        cells.insert((2, 1), 10);
        let grid = page_grid(&cells);
        let expected = "       p=0  p=1  p=2\n  q=1    .    .   10\n  q=0    1    .    .\n";
        assert_eq!(grid, expected);
        assert_eq!(page_grid(&BTreeMap::new()), "  (zero)\n");
    }
}
