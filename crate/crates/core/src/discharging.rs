//! Charges, the four transfer rules and the final-charge thresholds.
//!
//! Everything is exact. Initial charges are `d(v) − 4` off H,
//! `d(v) + 3γ − 1` on H and `|f| − 4` on faces; by Euler's formula they
//! sum to `(3 + 3γ)|V(H)| − 4χ`.

use crate::configurations::{
    find_stamens, scan_reducible_up_to_size, ConfigError, ScanEntry, ScanMode, ScanOptions,
    Stamen, DEFAULT_STAMEN_VERTICES,
};
use crate::embedding::EmbeddedGraph;
use crate::graph::{SubgraphMask, VertexId};
use crate::rational::{self, int, ratio, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DischargeParams {
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
}

impl DischargeParams {
    pub fn new(gamma: Rational) -> Result<Self, DischargeError> {
        if !gamma.is_positive() {
            return Err(DischargeError::NonPositiveGamma(rational::format(&gamma)));
        }
        Ok(DischargeParams { gamma })
    }

    /// γ = 4/195.
    pub fn standard() -> Self {
        DischargeParams {
            gamma: ratio(4, 195),
        }
    }

    /// Rule 1 and Rule 3 amount, `1/3 + γ`.
    pub fn stamen_amount(&self) -> Rational {
        ratio(1, 3) + &self.gamma
    }

    /// Rule 2 and Rule 4 amount, `3γ/4`.
    pub fn quarter_amount(&self) -> Rational {
        &self.gamma * ratio(3, 4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("γ must be positive, got {0}")]
    NonPositiveGamma(String),
    #[error("the per-vertex minimum {0} is not positive, so no vertex bound follows")]
    NonPositiveMinimum(String),
    #[error("χ = {0} is odd; no orientable genus")]
    OddEulerCharacteristic(i64),
    #[error(transparent)]
    Scan(#[from] ConfigError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Initial,
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeLedger {
    pub phase: Phase,
    #[serde(with = "rational_vec")]
    pub vertices: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub faces: Vec<Rational>,
}

impl ChargeLedger {
    pub fn total(&self) -> Rational {
        self.vertices.iter().chain(&self.faces).sum()
    }

    fn site_mut(&mut self, site: Site) -> &mut Rational {
        match site {
            Site::Vertex(v) => &mut self.vertices[v],
            Site::Face(f) => &mut self.faces[f],
        }
    }

    pub fn get(&self, site: Site) -> &Rational {
        match site {
            Site::Vertex(v) => &self.vertices[v],
            Site::Face(f) => &self.faces[f],
        }
    }
}

mod rational_vec {
    use crate::rational::{format, parse, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A vertex or a face, the two kinds of charge holder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum Site {
    Vertex(VertexId),
    Face(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The stamen carrying a Rule 1 transfer and a 4-face it is incident
    /// with.
    Stamen { path: Vec<VertexId>, face: usize },
    /// The 4-face shared by sender and receiver under Rule 2.
    SharedFace { face: usize },
    /// Position of the receiving instance in a face's boundary walk.
    WalkInstance { face: usize, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub rule: u8,
    pub source: Site,
    pub target: VertexId,
    #[serde(with = "rational::serde_str")]
    pub amount: Rational,
    pub evidence: Evidence,
}

/// Whether Rule 1 also requires `dist(v, u) ≤ 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule1Mode {
    /// Every qualifying stamen fires.
    #[default]
    PerStamen,
    /// Only stamens whose tip is within distance two of the root fire.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub degree: usize,
    pub in_h: bool,
    pub major: bool,
}

/// Major iff degree ≥ 5 or in H.
pub fn classify(g: &EmbeddedGraph, h: &SubgraphMask) -> Vec<VertexClass> {
    (0..g.vertex_count())
        .map(|v| {
            let degree = g.degree(v);
            let in_h = h.contains_vertex(v);
            VertexClass {
                degree,
                in_h,
                major: in_h || degree >= 5,
            }
        })
        .collect()
}

pub fn initial_charges(g: &EmbeddedGraph, h: &SubgraphMask, p: &DischargeParams) -> ChargeLedger {
    let vertices = (0..g.vertex_count())
        .map(|v| {
            let d = int(g.degree(v) as i64);
            if h.contains_vertex(v) {
                d + &p.gamma * int(3) - int(1)
            } else {
                d - int(4)
            }
        })
        .collect();
    let faces = g.faces().iter().map(|f| int(f.len() as i64 - 4)).collect();
    ChargeLedger {
        phase: Phase::Initial,
        vertices,
        faces,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    #[serde(with = "rational::serde_str")]
    pub total: Rational,
    #[serde(with = "rational::serde_str")]
    pub expected: Rational,
    pub holds: bool,
}

/// Compares the ledger total with `(3 + 3γ)|V(H)| − 4χ`.
pub fn check_charge_identity(
    ledger: &ChargeLedger,
    chi: i64,
    h_vertices: usize,
    p: &DischargeParams,
) -> IdentityCheck {
    let total = ledger.total();
    let expected = (int(3) + &p.gamma * int(3)) * int(h_vertices as i64) - int(4 * chi);
    IdentityCheck {
        holds: total == expected,
        total,
        expected,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discharge {
    pub mode: Rule1Mode,
    pub initial: ChargeLedger,
    #[serde(rename = "final")]
    pub final_: ChargeLedger,
    pub transfers: Vec<Transfer>,
    /// Pairs of Rule 1 stamens from one sender that share an internal
    /// vertex. Empty on instances satisfying the hypotheses.
    pub rule1_overlaps: Vec<(Stamen, Stamen)>,
}

/// Runs Rules 1–4 once, in rule order, and returns both ledgers.
pub fn apply_rules(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    p: &DischargeParams,
    mode: Rule1Mode,
) -> Discharge {
    let classes = classify(g, h);
    let abstract_graph = g.graph();
    let receiver = |u: VertexId, d: usize| !classes[u].in_h && classes[u].degree == d;
    let four_faces: Vec<usize> = (0..g.faces().len())
        .filter(|&f| g.faces()[f].len() == 4)
        .collect();
    let mut transfers = Vec::new();
    let mut overlaps = Vec::new();

    for v in (0..g.vertex_count()).filter(|&v| classes[v].major) {
        let dist = abstract_graph.distances_from(v);
        let mut fired: Vec<Stamen> = Vec::new();
        for s in find_stamens(abstract_graph, h, v, DEFAULT_STAMEN_VERTICES) {
            if mode == Rule1Mode::Strict && dist[s.tip()].map_or(true, |d| d > 2) {
                continue;
            }
            if let Some(&face) = four_faces.iter().find(|&&f| s.incident_with(g, f)) {
                transfers.push(Transfer {
                    rule: 1,
                    source: Site::Vertex(v),
                    target: s.tip(),
                    amount: p.stamen_amount(),
                    evidence: Evidence::Stamen {
                        path: s.path.clone(),
                        face,
                    },
                });
                fired.push(s);
            }
        }
        for (i, a) in fired.iter().enumerate() {
            for b in &fired[i + 1..] {
                if !a.internally_disjoint(b) {
                    overlaps.push((a.clone(), b.clone()));
                }
            }
        }
    }

    for v in (0..g.vertex_count()).filter(|&v| classes[v].major) {
        for &f in &four_faces {
            let vs = g.faces()[f].vertex_set();
            if !vs.contains(&v) {
                continue;
            }
            for &u in vs.iter().filter(|&&u| u != v && receiver(u, 4)) {
                transfers.push(Transfer {
                    rule: 2,
                    source: Site::Vertex(v),
                    target: u,
                    amount: p.quarter_amount(),
                    evidence: Evidence::SharedFace { face: f },
                });
            }
        }
    }

    for (f, walk) in g.faces().iter().enumerate().filter(|(_, w)| w.len() >= 5) {
        for (position, d) in walk.darts.iter().enumerate() {
            let (rule, amount) = if receiver(d.tail, 3) {
                (3, p.stamen_amount())
            } else if receiver(d.tail, 4) {
                (4, p.quarter_amount())
            } else {
                continue;
            };
            transfers.push(Transfer {
                rule,
                source: Site::Face(f),
                target: d.tail,
                amount,
                evidence: Evidence::WalkInstance { face: f, position },
            });
        }
    }
    transfers.sort_by_key(|t| t.rule);

    let initial = initial_charges(g, h, p);
    let mut final_ = initial.clone();
    final_.phase = Phase::Final;
    for t in &transfers {
        *final_.site_mut(t.source) -= &t.amount;
        *final_.site_mut(Site::Vertex(t.target)) += &t.amount;
    }
    Discharge {
        mode,
        initial,
        final_,
        transfers,
        rule1_overlaps: overlaps,
    }
}

/// Which final-charge claim applies to a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimClass {
    /// Degree ≤ 4, not in H.
    Small,
    Degree5,
    Degree6,
    Degree7Plus,
    InH,
    Face,
}

impl ClaimClass {
    pub const ALL: [ClaimClass; 6] = [
        ClaimClass::Small,
        ClaimClass::Degree5,
        ClaimClass::Degree6,
        ClaimClass::Degree7Plus,
        ClaimClass::InH,
        ClaimClass::Face,
    ];

    pub fn of_vertex(c: &VertexClass) -> ClaimClass {
        match (c.in_h, c.degree) {
            (true, _) => ClaimClass::InH,
            (false, 0..=4) => ClaimClass::Small,
            (false, 5) => ClaimClass::Degree5,
            (false, 6) => ClaimClass::Degree6,
            _ => ClaimClass::Degree7Plus,
        }
    }

    /// Lower bound on the final charge claimed for this class.
    pub fn threshold(self, p: &DischargeParams) -> Rational {
        let g = &p.gamma;
        match self {
            ClaimClass::Small => g * int(3),
            ClaimClass::Degree5 => ratio(1, 3) - g * ratio(53, 4),
            ClaimClass::Degree6 => ratio(2, 3) - g * ratio(35, 2),
            ClaimClass::Degree7Plus => ratio(2, 3) - g * ratio(91, 4),
            ClaimClass::InH => (g * int(3)).min(ratio(1, 3) - g * ratio(7, 2)),
            ClaimClass::Face => int(0),
        }
    }

    /// The cap on γ the claim's argument needs, if any.
    pub fn gamma_cap(self) -> Option<Rational> {
        match self {
            ClaimClass::Degree7Plus => Some(ratio(2, 13)),
            ClaimClass::Face => Some(ratio(1, 15)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimEntry {
    pub site: Site,
    pub class: ClaimClass,
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
    #[serde(with = "rational::serde_str")]
    pub actual: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub class: ClaimClass,
    pub count: usize,
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
    #[serde(with = "rational::serde_opt_str")]
    pub minimum: Option<Rational>,
    pub violations: usize,
    /// Whether γ is within the cap the claim relies on.
    pub gamma_cap_holds: bool,
}

/// Whether an instance meets the assumptions under which the claims are
/// theorems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub triangle_free: bool,
    pub h_proper: bool,
    pub scan_max_size: usize,
    /// First reducible configuration found by the scan, if any.
    pub reducible: Option<ScanEntry>,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.triangle_free && self.h_proper && self.reducible.is_none()
    }
}

/// Triangle-freeness, `H ⊊ G`, and a scan of G − V(H) for reducible
/// configurations with at most `max_size` vertices.
pub fn check_hypotheses(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    max_size: usize,
) -> Result<HypothesisReport, DischargeError> {
    let opts = ScanOptions {
        max_size,
        stop_at_first: true,
        reducible_only: true,
        ..Default::default()
    };
    let found = scan_reducible_up_to_size(g.graph(), h, ScanMode::Abstract, &opts)?;
    Ok(HypothesisReport {
        triangle_free: !g.has_triangle(),
        h_proper: h.is_proper_in(g.graph()),
        scan_max_size: max_size,
        reducible: found.into_iter().next(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    pub entries: Vec<ClaimEntry>,
    pub classes: Vec<ClassSummary>,
    #[serde(with = "rational::serde_opt_str")]
    pub vertex_minimum: Option<Rational>,
    pub all_pass: bool,
    pub hypotheses: Option<HypothesisReport>,
}

/// Compares every final charge with its class threshold.
pub fn verify_claim_bounds(
    g: &EmbeddedGraph,
    h: &SubgraphMask,
    p: &DischargeParams,
    final_: &ChargeLedger,
    hypotheses: Option<HypothesisReport>,
) -> ClaimReport {
    let classes = classify(g, h);
    let mut entries = Vec::new();
    for (v, c) in classes.iter().enumerate() {
        let class = ClaimClass::of_vertex(c);
        entries.push(entry(Site::Vertex(v), class, p, &final_.vertices[v]));
    }
    for (f, charge) in final_.faces.iter().enumerate() {
        entries.push(entry(Site::Face(f), ClaimClass::Face, p, charge));
    }
    let summaries = ClaimClass::ALL
        .iter()
        .map(|&class| {
            let of_class: Vec<&ClaimEntry> = entries.iter().filter(|e| e.class == class).collect();
            ClassSummary {
                class,
                count: of_class.len(),
                threshold: class.threshold(p),
                minimum: of_class.iter().map(|e| e.actual.clone()).min(),
                violations: of_class.iter().filter(|e| !e.pass).count(),
                gamma_cap_holds: class.gamma_cap().map_or(true, |cap| p.gamma <= cap),
            }
        })
        .collect();
    let vertex_minimum = final_.vertices.iter().min().cloned();
    ClaimReport {
        gamma: p.gamma.clone(),
        all_pass: entries.iter().all(|e| e.pass),
        entries,
        classes: summaries,
        vertex_minimum,
        hypotheses,
    }
}

fn entry(site: Site, class: ClaimClass, p: &DischargeParams, actual: &Rational) -> ClaimEntry {
    let threshold = class.threshold(p);
    ClaimEntry {
        site,
        class,
        pass: *actual >= threshold,
        threshold,
        actual: actual.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdTerm {
    pub label: String,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    pub terms: Vec<ThresholdTerm>,
    #[serde(with = "rational::serde_str")]
    pub minimum: Rational,
    pub attained_by: Vec<String>,
    /// `3 + 3γ`, the coefficient of `|V(H)|` in the charge total.
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
    pub gamma_le_2_13: bool,
    pub gamma_le_1_15: bool,
}

/// Minimum of the per-vertex thresholds and the γ-caps. Accepts γ = 0.
pub fn threshold_arithmetic(gamma: &Rational) -> ThresholdReport {
    let g = gamma;
    let terms = vec![
        ("3γ", g * int(3)),
        ("2/3 − 91γ/4", ratio(2, 3) - g * ratio(91, 4)),
        ("1/3 − 53γ/4", ratio(1, 3) - g * ratio(53, 4)),
        ("2/3 − 35γ/2", ratio(2, 3) - g * ratio(35, 2)),
        ("1/3 − 7γ/2", ratio(1, 3) - g * ratio(7, 2)),
    ];
    let minimum = terms.iter().map(|(_, v)| v.clone()).min().unwrap();
    ThresholdReport {
        gamma: g.clone(),
        attained_by: terms
            .iter()
            .filter(|(_, v)| *v == minimum)
            .map(|(l, _)| l.to_string())
            .collect(),
        terms: terms
            .into_iter()
            .map(|(label, value)| ThresholdTerm {
                label: label.to_string(),
                value,
            })
            .collect(),
        minimum,
        coefficient: int(3) + g * int(3),
        gamma_le_2_13: *g <= ratio(2, 13),
        gamma_le_1_15: *g <= ratio(1, 15),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexBound {
    pub h_vertices: usize,
    pub chi: i64,
    pub genus: i64,
    /// Per-vertex minimum m used to divide the charge total.
    #[serde(with = "rational::serde_str")]
    pub minimum: Rational,
    /// `((3 + 3γ)|V(H)| − 4χ) / m`.
    #[serde(with = "rational::serde_str")]
    pub charge_bound: Rational,
    /// `50(|V(H)| − 13/5) + 130g`.
    #[serde(with = "rational::serde_str")]
    pub target_bound: Rational,
    pub holds: bool,
}

/// The bound on `|V(G)|` obtained from the charge total, next to its
/// rounded form.
pub fn vertex_bound_from_charges(
    h_vertices: usize,
    chi: i64,
    p: &DischargeParams,
) -> Result<VertexBound, DischargeError> {
    let report = threshold_arithmetic(&p.gamma);
    if !report.minimum.is_positive() {
        return Err(DischargeError::NonPositiveMinimum(rational::format(
            &report.minimum,
        )));
    }
    if chi % 2 != 0 {
        return Err(DischargeError::OddEulerCharacteristic(chi));
    }
    let genus = (2 - chi) / 2;
    let h = int(h_vertices as i64);
    let charge_bound = (&report.coefficient * &h - int(4 * chi)) / &report.minimum;
    let target_bound = (h - ratio(13, 5)) * int(50) + int(130 * genus);
    Ok(VertexBound {
        h_vertices,
        chi,
        genus,
        holds: charge_bound <= target_bound,
        minimum: report.minimum,
        charge_bound,
        target_bound,
    })
}

/// Sum of transfers out of each site minus transfers in, per site.
pub fn net_outflow(transfers: &[Transfer], site: Site) -> Rational {
    transfers.iter().fold(Rational::zero(), |acc, t| {
        let mut acc = acc;
        if t.source == site {
            acc += &t.amount;
        }
        if Site::Vertex(t.target) == site {
            acc -= &t.amount;
        }
        acc
    })
}
