//! Degeneration and classification verdicts for normal-crossings pairs.
//!
//! Every check returns a [`Verdict`] carrying a rule slug and the hypotheses
//! it consumed as witnesses. `Established` means the named rule's hypotheses
//! were verified on the input; `Inconclusive` means no shipped rule applies
//! and asserts nothing; `HypothesisFailed` means a required hypothesis was
//! checked and found false.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::field::{Field, Rat};
use crate::graded::fmt_display_via_debug;
use crate::logring::{stanley_reisner, weight, SrPresentation};
use crate::pair::{NcPairData, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Established,
    Inconclusive,
    HypothesisFailed,
}

impl fmt::Display for VerdictStatus {
    fmt_display_via_debug!();
}

/// Outcome of one criterion: a status, the rule that produced it, and the
/// facts the rule consumed. An `Inconclusive` verdict never asserts a
/// negative; it only records which hypothesis was unavailable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub rule: &'static str,
    pub witnesses: Vec<String>,
}

impl Verdict {
    fn established(rule: &'static str, witnesses: Vec<String>) -> Self {
        Verdict { status: VerdictStatus::Established, rule, witnesses }
    }

    fn inconclusive(rule: &'static str, witnesses: Vec<String>) -> Self {
        Verdict { status: VerdictStatus::Inconclusive, rule, witnesses }
    }

    fn failed(rule: &'static str, witnesses: Vec<String>) -> Self {
        Verdict { status: VerdictStatus::HypothesisFailed, rule, witnesses }
    }

    pub fn is_established(&self) -> bool {
        self.status == VerdictStatus::Established
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.status, self.rule)?;
        for w in &self.witnesses {
            write!(f, "; {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriteriaError {
    FlagMissing { flag: &'static str },
    InvalidMultiplicity { index: usize },
    LengthMismatch { expected: usize, found: usize },
    DegenerateInput { reason: String },
    NotLogCY,
}

impl fmt::Display for CriteriaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriteriaError::FlagMissing { flag } => {
                write!(f, "required flag `{flag}` is not declared on the pair")
            }
            CriteriaError::InvalidMultiplicity { index } => {
                write!(f, "bundle power for component {} must be >= 1", index + 1)
            }
            CriteriaError::LengthMismatch { expected, found } => {
                write!(f, "vector has length {found}, expected {expected}")
            }
            CriteriaError::DegenerateInput { reason } => write!(f, "degenerate input: {reason}"),
            CriteriaError::NotLogCY => {
                write!(f, "pair is not log Calabi-Yau (anticanonical flag with all pole orders 1)")
            }
        }
    }
}

/// Multiplicity criterion: all components cut out by powers of one line
/// bundle, and some power exceeds 1. Pass the declared power list, or `None`
/// when the pair does not declare one.
pub fn check_easycor(same_line_bundle: Option<&[i64]>) -> Result<Verdict, CriteriaError> {
    let powers = same_line_bundle.ok_or(CriteriaError::FlagMissing { flag: "same_line_bundle" })?;
    if let Some(index) = powers.iter().position(|&n| n < 1) {
        return Err(CriteriaError::InvalidMultiplicity { index });
    }
    match powers.iter().position(|&n| n > 1) {
        Some(i) => Ok(Verdict::established(
            "same-bundle-multiplicity",
            vec![format!("component {} has bundle power {} > 1", i + 1, powers[i])],
        )),
        None => Ok(Verdict::inconclusive(
            "same-bundle-multiplicity",
            vec!["all bundle powers equal 1".to_string()],
        )),
    }
}

/// Geometric facts a classification can consume, decoupled from ring data.
#[derive(Clone, Debug, Default)]
pub struct ClassifyInput {
    pub pi2_omega_zero: Option<bool>,
    /// Components all cut out by sections of one line bundle.
    pub same_line_bundle: bool,
    /// Number of divisor components.
    pub k: usize,
    /// Complex dimension of the ambient space.
    pub dim: usize,
    /// Defining forms when the pair is a line arrangement in the projective
    /// plane; enables the blowup resolution rule.
    pub p2_lines: Option<Vec<Vec<Rat>>>,
}

/// Paired verdicts: is the log ring determined by topology, and is it
/// determined multiplicatively by topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub topological: Verdict,
    pub multiplicatively_topological: Verdict,
}

fn prefer_established(primary: Verdict, fallback: Verdict) -> Verdict {
    if primary.is_established() {
        primary
    } else if fallback.is_established() {
        fallback
    } else {
        primary
    }
}

/// Classify from declared geometry. Sufficient rules only: the symplectic
/// form vanishing on spheres settles both questions; a same-bundle pair with
/// enough components settles them by component count; a resolvable plane
/// arrangement settles them through its blowup model.
pub fn classify_pair(input: &ClassifyInput) -> Classification {
    if input.pi2_omega_zero == Some(true) {
        let v = Verdict::established(
            "omega-pi2-vanishing",
            vec!["symplectic form vanishes on pi_2".to_string()],
        );
        return Classification { topological: v.clone(), multiplicatively_topological: v };
    }

    let count_rule = |bound: usize| -> Verdict {
        if !input.same_line_bundle {
            Verdict::inconclusive(
                "same-bundle-component-count",
                vec!["same-bundle hypothesis not declared".to_string()],
            )
        } else if input.k >= bound {
            Verdict::established(
                "same-bundle-component-count",
                vec![format!("k = {} >= {}", input.k, bound)],
            )
        } else {
            Verdict::inconclusive(
                "same-bundle-component-count",
                vec![format!("k = {} < {}", input.k, bound)],
            )
        }
    };
    let mut topological = count_rule(input.dim + 1);
    let mut multiplicative = count_rule(2 * input.dim + 1);

    if let Some(lines) = &input.p2_lines {
        if let Ok((_, resolved)) = resolve_p2_arrangement(lines) {
            topological = prefer_established(topological, resolved.topological);
            multiplicative = prefer_established(multiplicative, resolved.multiplicatively_topological);
        }
    }

    Classification { topological, multiplicatively_topological: multiplicative }
}

/// Classify a pair from its declared flags alone.
pub fn classify_nc_pair<K: Field>(p: &NcPairData<K>) -> Classification {
    classify_pair(&ClassifyInput {
        pi2_omega_zero: p.flags.pi2_omega_zero,
        same_line_bundle: p.flags.same_line_bundle.is_some(),
        k: p.k,
        dim: p.dim,
        p2_lines: None,
    })
}

/// Combinatorics of the normal-crossings model obtained from a plane line
/// arrangement by blowing up every point where three or more lines meet.
#[derive(Clone, Debug)]
pub struct ResolvedPairData {
    /// Proper transforms `L1..Lk` first, then exceptional curves `E1..` in a
    /// deterministic order of their centers.
    pub component_names: Vec<String>,
    /// Nonempty intersection poset over the component indices.
    pub nonempty: BTreeSet<Subset>,
    /// Each blowup center with the 1-based lines through it.
    pub blowups: Vec<(Vec<Rat>, Vec<usize>)>,
}

fn cross(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    vec![
        a[1].clone() * &b[2] - a[2].clone() * &b[1],
        a[2].clone() * &b[0] - a[0].clone() * &b[2],
        a[0].clone() * &b[1] - a[1].clone() * &b[0],
    ]
}

fn normalize_point(mut p: Vec<Rat>) -> Vec<Rat> {
    let lead = p.iter().position(|c| !c.is_zero()).expect("nonzero projective point");
    let scale = p[lead].clone();
    for c in &mut p {
        *c = core::mem::replace(c, Rat::zero()) / &scale;
    }
    p
}

/// Resolve a projective-plane line arrangement to a normal-crossings pair by
/// blowing up all points of multiplicity at least three, and classify the
/// result by how many distinct points each line meets the others in.
pub fn resolve_p2_arrangement(
    lines: &[Vec<Rat>],
) -> Result<(ResolvedPairData, Classification), CriteriaError> {
    if lines.len() < 2 {
        return Err(CriteriaError::DegenerateInput {
            reason: format!("need at least 2 distinct lines, got {}", lines.len()),
        });
    }
    for (i, f) in lines.iter().enumerate() {
        if f.len() != 3 {
            return Err(CriteriaError::LengthMismatch { expected: 3, found: f.len() });
        }
        if f.iter().all(Zero::is_zero) {
            return Err(CriteriaError::DegenerateInput {
                reason: format!("line {} has the zero form", i + 1),
            });
        }
    }
    let k = lines.len();

    // Intersection points, keyed by normalized homogeneous coordinates.
    let mut points: BTreeMap<Vec<Rat>, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let p = cross(&lines[i], &lines[j]);
            if p.iter().all(Zero::is_zero) {
                return Err(CriteriaError::DegenerateInput {
                    reason: format!("lines {} and {} coincide", i + 1, j + 1),
                });
            }
            let entry = points.entry(normalize_point(p)).or_default();
            entry.insert(i);
            entry.insert(j);
        }
    }

    let mut component_names: Vec<String> = (1..=k).map(|i| format!("L{i}")).collect();
    let mut nonempty: BTreeSet<Subset> = BTreeSet::new();
    nonempty.insert(Subset::EMPTY);
    let mut blowups = Vec::new();
    for (point, through) in &points {
        let through: Vec<usize> = through.iter().copied().collect();
        if through.len() >= 3 {
            let e = component_names.len();
            component_names.push(format!("E{}", blowups.len() + 1));
            blowups.push((point.clone(), through.iter().map(|&i| i + 1).collect()));
            for &i in &through {
                nonempty.insert(Subset::from_indices(&[i + 1, e + 1]));
            }
        } else {
            nonempty.insert(Subset::from_indices(&[through[0] + 1, through[1] + 1]));
        }
    }
    for c in 1..=component_names.len() {
        nonempty.insert(Subset::singleton(c));
    }

    // Distinct points each line meets the other components in; blowups do
    // not change the count, they replace a crossing by an exceptional curve.
    let verdict = |bound: usize, rule: &'static str| -> Verdict {
        for i in 0..k {
            let met = points.values().filter(|through| through.contains(&i)).count();
            if met < bound {
                return Verdict::inconclusive(
                    rule,
                    vec![format!("L{} meets the others in {} < {} distinct points", i + 1, met, bound)],
                );
            }
        }
        Verdict::established(rule, vec![format!("every line meets >= {bound} distinct points")])
    };
    let classification = Classification {
        topological: verdict(2, "p2-blowup-two-points"),
        multiplicatively_topological: verdict(3, "p2-blowup-three-points"),
    };

    Ok((ResolvedPairData { component_names, nonempty, blowups }, classification))
}

/// Admissibility of the primitive vector `v`: every declared effective curve
/// class satisfies `Σ κ_i (A.D_i) >= w(v)`. An empty class list is vacuously
/// admissible.
pub fn check_admissible(
    v: &[u32],
    kappa: &[i64],
    effective_classes: &[Vec<i64>],
) -> Result<bool, CriteriaError> {
    let w = weight(v, kappa)
        .map_err(|_| CriteriaError::LengthMismatch { expected: kappa.len(), found: v.len() })?;
    for class in effective_classes {
        if class.len() != kappa.len() {
            return Err(CriteriaError::LengthMismatch {
                expected: kappa.len(),
                found: class.len(),
            });
        }
        let pairing: i64 = kappa.iter().zip(class).map(|(&kap, &c)| kap * c).sum();
        if pairing < w {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Condition for the weight filtration to be split by a bundle structure:
/// all components cut out by equal powers of one line bundle, more components
/// than the dimension, and every stratum connected.
pub fn check_condition_a<K: Field>(p: &NcPairData<K>) -> Verdict {
    const RULE: &str = "equal-powers-connected-strata";
    let Some(powers) = &p.flags.same_line_bundle else {
        return Verdict::inconclusive(RULE, vec!["same-bundle hypothesis not declared".to_string()]);
    };
    if let Some(i) = powers.iter().position(|n| *n != powers[0]) {
        return Verdict::failed(
            RULE,
            vec![format!(
                "bundle powers differ: component 1 has {}, component {} has {}",
                powers[0],
                i + 1,
                powers[i]
            )],
        );
    }
    if p.k <= p.dim {
        return Verdict::failed(RULE, vec![format!("k = {} <= dim = {}", p.k, p.dim)]);
    }
    for (subset, stratum) in &p.strata {
        if stratum.components != 1 {
            return Verdict::failed(
                RULE,
                vec![format!("stratum {subset} has {} components", stratum.components)],
            );
        }
    }
    Verdict::established(
        RULE,
        vec![format!("equal powers ({}), k = {} > dim = {}, all strata connected", powers[0], p.k, p.dim)],
    )
}

/// Verdict on degeneration in degree zero, with the associated-graded model
/// of `SH^0` that the positive verdict identifies.
#[derive(Clone, Debug)]
pub struct DegreeZeroReport {
    pub verdict: Verdict,
    pub gr_sh0: SrPresentation,
}

/// Degree-zero degeneration for log Calabi-Yau pairs. Requires the
/// anticanonical flag and pole orders all 1; established for Fano ambient
/// spaces with connected strata, and unconditionally in dimension two.
pub fn degree_zero_report<K: Field>(p: &NcPairData<K>) -> Result<DegreeZeroReport, CriteriaError> {
    if p.flags.anticanonical != Some(true) || p.pole_orders.iter().any(|&a| a != 1) {
        return Err(CriteriaError::NotLogCY);
    }
    let connected = p.strata.values().all(|s| s.components == 1);
    let verdict = if p.flags.fano == Some(true) && connected {
        Verdict::established(
            "fano-anticanonical-degree-zero",
            vec!["ambient space Fano, all strata connected".to_string()],
        )
    } else if p.dim == 2 {
        Verdict::established("log-cy-surface-degree-zero", vec!["dim = 2".to_string()])
    } else {
        let mut witnesses = Vec::new();
        if p.flags.fano != Some(true) {
            witnesses.push("Fano hypothesis not declared".to_string());
        }
        if !connected {
            witnesses.push("some stratum is disconnected".to_string());
        }
        witnesses.push(format!("dim = {} != 2", p.dim));
        Verdict::inconclusive("fano-anticanonical-degree-zero", witnesses)
    };
    Ok(DegreeZeroReport { verdict, gr_sh0: stanley_reisner(p) })
}

/// Full degeneration from vanishing obstruction invariants: every primitive
/// vector must be admissible (else the hypothesis fails outright), and every
/// nonempty stratum must carry a positive vanishing flag. Pass `None` to read
/// the flags stored on the pair.
pub fn gw_degeneration_report<K: Field>(
    p: &NcPairData<K>,
    gw_vanishing: Option<&BTreeMap<Subset, bool>>,
) -> Verdict {
    const RULE: &str = "admissible-obstruction-vanishing";
    for (&subset, _) in p.strata.iter().filter(|(s, _)| !s.is_empty()) {
        let v = subset.primitive_vector(p.k);
        match check_admissible(&v, &p.kappa, &p.flags.effective_classes) {
            Ok(true) => {}
            Ok(false) => {
                return Verdict::failed(
                    RULE,
                    vec![format!("primitive vector of {subset} is not admissible")],
                );
            }
            Err(e) => {
                return Verdict::failed(RULE, vec![format!("malformed effective class: {e}")]);
            }
        }
    }
    let flags = match gw_vanishing.or(p.flags.gw_vanishing.as_ref()) {
        Some(flags) => flags,
        None => {
            return Verdict::inconclusive(RULE, vec!["no vanishing flags declared".to_string()]);
        }
    };
    for (&subset, _) in p.strata.iter().filter(|(s, _)| !s.is_empty()) {
        match flags.get(&subset) {
            Some(true) => {}
            Some(false) => {
                return Verdict::inconclusive(
                    RULE,
                    vec![format!("vanishing fails for stratum {subset}")],
                );
            }
            None => {
                return Verdict::inconclusive(
                    RULE,
                    vec![format!("no vanishing flag for stratum {subset}")],
                );
            }
        }
    }
    Verdict::established(RULE, vec!["all strata admissible with vanishing obstructions".to_string()])
}
