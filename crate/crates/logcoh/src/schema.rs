//! The three JSON file formats: `ncpair/1` pairs, `filtcx/1` filtered
//! complexes, and `arr/1` arrangements.
//!
//! Input field order is irrelevant (serde structs); output field order is
//! fixed by the struct declarations, so emitted files are byte-stable.
//! Coefficients are written as JSON integers when they fit in an `i64` and
//! as `"a/b"` strings otherwise, and are accepted in either form anywhere.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use logcoh_core::arrangements::{Arrangement, ArrangementMode};
use logcoh_core::field::{Field, Rat};
use logcoh_core::graded::{BasisElt, GradedAlgebra, SparseVec};
use logcoh_core::matrix::Matrix;
use logcoh_core::pair::{NcPairData, PairFlags, Stratum, Subset};
use logcoh_core::specseq::{FilteredComplex, FilteredElt};

pub const PAIR_SCHEMA: &str = "ncpair/1";
pub const COMPLEX_SCHEMA: &str = "filtcx/1";
pub const ARRANGEMENT_SCHEMA: &str = "arr/1";

#[derive(Debug)]
pub enum ParseError {
    /// Malformed JSON; carries serde's line/column diagnostics.
    Json(serde_json::Error),
    WrongSchema { expected: &'static str, found: String },
    BadCoefficient { context: String, text: String },
    /// The coefficient is a rational with no image in the requested field
    /// (denominator divisible by the characteristic).
    NotInField { context: String, text: String },
    BadSubset { context: String, reason: String },
    IndexOutOfRange { context: String, index: usize, len: usize },
    DuplicateStratum { stratum: String },
    DuplicateRestriction { from: String, to: String },
    MissingRestriction { from: String, to: String },
    UnknownStratum { context: String, stratum: String },
    RaggedMatrix { context: String, expected: usize, found: usize },
    BadMode { found: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Json(e) => write!(f, "malformed JSON: {e}"),
            ParseError::WrongSchema { expected, found } => {
                write!(f, "expected schema \"{expected}\", found \"{found}\"")
            }
            ParseError::BadCoefficient { context, text } => {
                write!(f, "{context}: cannot parse coefficient {text:?}")
            }
            ParseError::NotInField { context, text } => {
                write!(f, "{context}: coefficient {text} has no image in the chosen field")
            }
            ParseError::BadSubset { context, reason } => write!(f, "{context}: {reason}"),
            ParseError::IndexOutOfRange { context, index, len } => {
                write!(f, "{context}: basis index {index} out of range (dimension {len})")
            }
            ParseError::DuplicateStratum { stratum } => {
                write!(f, "stratum {stratum} listed twice")
            }
            ParseError::DuplicateRestriction { from, to } => {
                write!(f, "restriction {from} -> {to} listed twice")
            }
            ParseError::MissingRestriction { from, to } => {
                write!(f, "missing restriction {from} -> {to}")
            }
            ParseError::UnknownStratum { context, stratum } => {
                write!(f, "{context}: stratum {stratum} is not listed under \"strata\"")
            }
            ParseError::RaggedMatrix { context, expected, found } => {
                write!(f, "{context}: ragged matrix (row of length {found}, expected {expected})")
            }
            ParseError::BadMode { found } => {
                write!(f, "mode must be \"central\" or \"projective\", found \"{found}\"")
            }
        }
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e)
    }
}

/// A rational literal: a JSON integer, or a string like `"-2/3"` for
/// fractions and for integers beyond the `i64` range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    pub fn from_field<K: Field>(x: &K) -> Coef {
        match x.try_to_bigint() {
            Some(n) => n.to_i64().map_or_else(|| Coef::Text(n.to_string()), Coef::Int),
            None => Coef::Text(x.to_string()),
        }
    }

    pub fn to_rat(&self, context: &str) -> Result<Rat, ParseError> {
        let bad = || ParseError::BadCoefficient {
            context: context.to_string(),
            text: match self {
                Coef::Int(n) => n.to_string(),
                Coef::Text(s) => s.clone(),
            },
        };
        match self {
            Coef::Int(n) => Ok(Rat::from_integer(BigInt::from(*n))),
            Coef::Text(s) => {
                let (num, den) = match s.split_once('/') {
                    Some((num, den)) => (num, den),
                    None => (s.as_str(), "1"),
                };
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Rat::new(num, den))
            }
        }
    }

    pub fn to_field<K: Field>(&self, context: &str) -> Result<K, ParseError> {
        if let Coef::Int(n) = self {
            return Ok(K::from_i64(*n));
        }
        let r = self.to_rat(context)?;
        K::from_rat(&r).ok_or_else(|| ParseError::NotInField {
            context: context.to_string(),
            text: r.to_string(),
        })
    }
}

/// `{"name","deg"}` basis entry, shared by algebras and filtered complexes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub deg: i64,
}

/// Sparse structure-constant row `[i, j, [[k, coef], ...]]`.
pub type MultEntry = (usize, usize, Vec<(usize, Coef)>);

/// `{"basis":[...],"unit":idx,"mult":[[i,j,[[k,c]...]]...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraEntry {
    pub basis: Vec<BasisEntry>,
    pub unit: usize,
    pub mult: Vec<MultEntry>,
}

pub fn algebra_to_entry<K: Field>(a: &GradedAlgebra<K>) -> AlgebraEntry {
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = a.product(i, j);
            if !p.is_empty() {
                mult.push((i, j, p.iter().map(|(t, c)| (*t, Coef::from_field(c))).collect()));
            }
        }
    }
    AlgebraEntry {
        basis: a.basis().iter().map(|b| BasisEntry { name: b.name.clone(), deg: b.deg }).collect(),
        unit: a.unit(),
        mult,
    }
}

pub fn algebra_from_entry<K: Field>(
    e: &AlgebraEntry,
    context: &str,
) -> Result<GradedAlgebra<K>, ParseError> {
    let n = e.basis.len();
    let oob = |place: String, index: usize| ParseError::IndexOutOfRange {
        context: place,
        index,
        len: n,
    };
    if e.unit >= n {
        return Err(oob(format!("{context}.unit"), e.unit));
    }
    let mut table = Vec::new();
    for (pos, (i, j, terms)) in e.mult.iter().enumerate() {
        let place = format!("{context}.mult[{pos}]");
        if *i >= n || *j >= n {
            return Err(oob(place, (*i).max(*j)));
        }
        let mut product: SparseVec<K> = Vec::new();
        for (t, c) in terms {
            if *t >= n {
                return Err(oob(place, *t));
            }
            product.push((*t, c.to_field(&place)?));
        }
        table.push((*i, *j, product));
    }
    let basis =
        e.basis.iter().map(|b| BasisElt { name: b.name.clone(), deg: b.deg }).collect();
    Ok(GradedAlgebra::from_parts(basis, e.unit, table))
}

fn matrix_from_rows<K: Field>(
    rows: &[Vec<Coef>],
    context: &str,
) -> Result<Matrix<K>, ParseError> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(ParseError::RaggedMatrix {
                context: context.to_string(),
                expected: cols,
                found: row.len(),
            });
        }
        let mut converted = Vec::with_capacity(cols);
        for (c, x) in row.iter().enumerate() {
            converted.push(x.to_field(&format!("{context}[{r}][{c}]"))?);
        }
        out.push(converted);
    }
    Ok(Matrix::from_rows(out))
}

fn matrix_to_rows<K: Field>(m: &Matrix<K>) -> Vec<Vec<Coef>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(Coef::from_field).collect()).collect()
}

fn subset_to_indices(s: Subset) -> Vec<usize> {
    s.indices()
}

fn subset_from_indices(members: &[usize], k: usize, context: &str) -> Result<Subset, ParseError> {
    let mut s = Subset::EMPTY;
    for &i in members {
        if i == 0 || i > k {
            return Err(ParseError::BadSubset {
                context: context.to_string(),
                reason: format!("component index {i} out of range 1..={k}"),
            });
        }
        if s.contains(i) {
            return Err(ParseError::BadSubset {
                context: context.to_string(),
                reason: format!("component index {i} repeated"),
            });
        }
        s = s.with(i);
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// ncpair/1

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumEntry {
    #[serde(rename = "I")]
    pub members: Vec<usize>,
    pub components: usize,
    pub ring: AlgebraEntry,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictionEntry {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    /// Row-major; column `j` is the image of source basis element `j`.
    pub matrix: Vec<Vec<Coef>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GwEntry {
    #[serde(rename = "I")]
    pub members: Vec<usize>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FlagsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fano: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi2_omega_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub same_line_bundle: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gw_vanishing: Option<Vec<GwEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub effective_classes: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub schema: String,
    pub k: usize,
    pub dim: usize,
    pub kappa: Vec<i64>,
    pub pole_orders: Vec<i64>,
    pub strata: Vec<StratumEntry>,
    pub restrictions: Vec<RestrictionEntry>,
    #[serde(default)]
    pub flags: FlagsEntry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_relations: Option<Vec<Vec<i64>>>,
}

pub fn pair_to_file<K: Field>(p: &NcPairData<K>) -> PairFile {
    let strata = p
        .strata
        .iter()
        .map(|(&i, s)| StratumEntry {
            members: subset_to_indices(i),
            components: s.components,
            ring: algebra_to_entry(&s.ring),
        })
        .collect();
    let restrictions = p
        .restrictions
        .iter()
        .map(|(&(from, to), m)| RestrictionEntry {
            from: subset_to_indices(from),
            to: subset_to_indices(to),
            matrix: matrix_to_rows(m),
        })
        .collect();
    let gw_vanishing = p.flags.gw_vanishing.as_ref().map(|m| {
        m.iter()
            .map(|(&i, &vanishes)| GwEntry { members: subset_to_indices(i), vanishes })
            .collect()
    });
    PairFile {
        schema: PAIR_SCHEMA.to_string(),
        k: p.k,
        dim: p.dim,
        kappa: p.kappa.clone(),
        pole_orders: p.pole_orders.clone(),
        strata,
        restrictions,
        flags: FlagsEntry {
            fano: p.flags.fano,
            anticanonical: p.flags.anticanonical,
            pi2_omega_zero: p.flags.pi2_omega_zero,
            same_line_bundle: p.flags.same_line_bundle.clone(),
            gw_vanishing,
            effective_classes: p.flags.effective_classes.clone(),
        },
        h1_relations: p.h1_relations.clone(),
    }
}

pub fn pair_from_file<K: Field>(file: &PairFile) -> Result<NcPairData<K>, ParseError> {
    if file.schema != PAIR_SCHEMA {
        return Err(ParseError::WrongSchema { expected: PAIR_SCHEMA, found: file.schema.clone() });
    }
    let k = file.k;

    let mut strata = BTreeMap::new();
    for (pos, entry) in file.strata.iter().enumerate() {
        let context = format!("strata[{pos}]");
        let i = subset_from_indices(&entry.members, k, &context)?;
        let ring = algebra_from_entry(&entry.ring, &format!("{context}.ring"))?;
        if strata.insert(i, Stratum { components: entry.components, ring }).is_some() {
            return Err(ParseError::DuplicateStratum { stratum: i.to_string() });
        }
    }

    let mut restrictions = BTreeMap::new();
    for (pos, entry) in file.restrictions.iter().enumerate() {
        let context = format!("restrictions[{pos}]");
        let from = subset_from_indices(&entry.from, k, &context)?;
        let to = subset_from_indices(&entry.to, k, &context)?;
        for s in [from, to] {
            if !strata.contains_key(&s) {
                return Err(ParseError::UnknownStratum {
                    context,
                    stratum: s.to_string(),
                });
            }
        }
        let matrix = matrix_from_rows(&entry.matrix, &format!("{context}.matrix"))?;
        if restrictions.insert((from, to), matrix).is_some() {
            return Err(ParseError::DuplicateRestriction {
                from: from.to_string(),
                to: to.to_string(),
            });
        }
    }

    // Required by the format: a map for every nested pair of nonempty
    // strata. Deeper invariants (shapes, multiplicativity, functoriality)
    // are validation's job, not the parser's.
    for &hi in strata.keys() {
        for lo in hi.subsets() {
            if lo != hi && strata.contains_key(&lo) && !restrictions.contains_key(&(lo, hi)) {
                return Err(ParseError::MissingRestriction {
                    from: lo.to_string(),
                    to: hi.to_string(),
                });
            }
        }
    }

    let gw_vanishing = match &file.flags.gw_vanishing {
        None => None,
        Some(entries) => {
            let mut map = BTreeMap::new();
            for (pos, e) in entries.iter().enumerate() {
                let context = format!("flags.gw_vanishing[{pos}]");
                map.insert(subset_from_indices(&e.members, k, &context)?, e.vanishes);
            }
            Some(map)
        }
    };

    Ok(NcPairData {
        k,
        dim: file.dim,
        kappa: file.kappa.clone(),
        pole_orders: file.pole_orders.clone(),
        strata,
        restrictions,
        flags: PairFlags {
            fano: file.flags.fano,
            anticanonical: file.flags.anticanonical,
            pi2_omega_zero: file.flags.pi2_omega_zero,
            same_line_bundle: file.flags.same_line_bundle.clone(),
            gw_vanishing,
            effective_classes: file.flags.effective_classes.clone(),
        },
        h1_relations: file.h1_relations.clone(),
    })
}

pub fn pair_from_json<K: Field>(text: &str) -> Result<NcPairData<K>, ParseError> {
    pair_from_file(&serde_json::from_str(text)?)
}

pub fn pair_to_json<K: Field>(p: &NcPairData<K>) -> String {
    to_stable_json(&pair_to_file(p))
}

/// Standalone vanishing-flag files (`classify --gw-flags`): a JSON array of
/// `{"I": [..], "vanishes": bool}` entries. Component indices are only
/// bounded by the subset representation here; `gw_degeneration_report` reads
/// the flags per stratum of the pair it is given.
pub fn gw_flags_from_json(text: &str) -> Result<BTreeMap<Subset, bool>, ParseError> {
    let entries: Vec<GwEntry> = serde_json::from_str(text)?;
    let mut out = BTreeMap::new();
    for e in &entries {
        let s = subset_from_indices(&e.members, 32, "gw_flags")?;
        out.insert(s, e.vanishes);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// filtcx/1

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiltBasisEntry {
    pub name: String,
    pub deg: i64,
    pub filt: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub schema: String,
    pub basis: Vec<FiltBasisEntry>,
    /// Row-major; column `j` is the differential of basis element `j`.
    pub d: Vec<Vec<Coef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<MultEntry>>,
}

pub fn complex_to_file<K: Field>(c: &FilteredComplex<K>) -> ComplexFile {
    let n = c.basis.len();
    let mult = c.mult.as_ref().map(|table| {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = &table[i * n + j];
                if !p.is_empty() {
                    entries.push((
                        i,
                        j,
                        p.iter().map(|(t, coef)| (*t, Coef::from_field(coef))).collect(),
                    ));
                }
            }
        }
        entries
    });
    ComplexFile {
        schema: COMPLEX_SCHEMA.to_string(),
        basis: c
            .basis
            .iter()
            .map(|b| FiltBasisEntry { name: b.name.clone(), deg: b.deg, filt: b.filt })
            .collect(),
        d: matrix_to_rows(&c.d),
        mult,
    }
}

pub fn complex_from_file<K: Field>(file: &ComplexFile) -> Result<FilteredComplex<K>, ParseError> {
    if file.schema != COMPLEX_SCHEMA {
        return Err(ParseError::WrongSchema {
            expected: COMPLEX_SCHEMA,
            found: file.schema.clone(),
        });
    }
    let n = file.basis.len();
    let d = matrix_from_rows(&file.d, "d")?;
    let mult = match &file.mult {
        None => None,
        Some(entries) => {
            let mut table: Vec<SparseVec<K>> = vec![Vec::new(); n * n];
            for (pos, (i, j, terms)) in entries.iter().enumerate() {
                let place = format!("mult[{pos}]");
                if *i >= n || *j >= n {
                    return Err(ParseError::IndexOutOfRange {
                        context: place,
                        index: (*i).max(*j),
                        len: n,
                    });
                }
                let mut product = Vec::new();
                for (t, c) in terms {
                    if *t >= n {
                        return Err(ParseError::IndexOutOfRange {
                            context: place,
                            index: *t,
                            len: n,
                        });
                    }
                    product.push((*t, c.to_field(&place)?));
                }
                table[i * n + j] = product;
            }
            Some(table)
        }
    };
    Ok(FilteredComplex {
        basis: file
            .basis
            .iter()
            .map(|b| FilteredElt { name: b.name.clone(), deg: b.deg, filt: b.filt })
            .collect(),
        d,
        mult,
    })
}

pub fn complex_from_json<K: Field>(text: &str) -> Result<FilteredComplex<K>, ParseError> {
    complex_from_file(&serde_json::from_str(text)?)
}

pub fn complex_to_json<K: Field>(c: &FilteredComplex<K>) -> String {
    to_stable_json(&complex_to_file(c))
}

// ---------------------------------------------------------------------------
// arr/1

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub schema: String,
    pub mode: String,
    pub forms: Vec<Vec<Coef>>,
}

pub fn arrangement_to_file(a: &Arrangement) -> ArrangementFile {
    ArrangementFile {
        schema: ARRANGEMENT_SCHEMA.to_string(),
        mode: match a.mode {
            ArrangementMode::Central => "central".to_string(),
            ArrangementMode::Projective => "projective".to_string(),
        },
        forms: a
            .forms
            .iter()
            .map(|f| f.iter().map(Coef::from_field).collect())
            .collect(),
    }
}

pub fn arrangement_from_file(file: &ArrangementFile) -> Result<Arrangement, ParseError> {
    if file.schema != ARRANGEMENT_SCHEMA {
        return Err(ParseError::WrongSchema {
            expected: ARRANGEMENT_SCHEMA,
            found: file.schema.clone(),
        });
    }
    let mode = match file.mode.as_str() {
        "central" => ArrangementMode::Central,
        "projective" => ArrangementMode::Projective,
        other => return Err(ParseError::BadMode { found: other.to_string() }),
    };
    let mut forms = Vec::with_capacity(file.forms.len());
    for (h, row) in file.forms.iter().enumerate() {
        let mut form = Vec::with_capacity(row.len());
        for (c, x) in row.iter().enumerate() {
            form.push(x.to_rat(&format!("forms[{h}][{c}]"))?);
        }
        forms.push(form);
    }
    Ok(Arrangement { forms, mode })
}

pub fn arrangement_from_json(text: &str) -> Result<Arrangement, ParseError> {
    arrangement_from_file(&serde_json::from_str(text)?)
}

pub fn arrangement_to_json(a: &Arrangement) -> String {
    to_stable_json(&arrangement_to_file(a))
}

/// Pretty JSON with a trailing newline; serde struct order makes it
/// deterministic.
fn to_stable_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}
