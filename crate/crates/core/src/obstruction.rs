//! Boundary verdicts for modular data.
//!
//! A gapped boundary forces the bulk category to be a Drinfeld center, which in turn forces the
//! central charge to vanish. Modular data only sees `c mod 8`, so the gate is necessary but not
//! sufficient. Past the gate the engine looks for multiplicity vectors of Lagrangian algebras
//! `A = ⊕ n_i x_i`: `n_0 = 1`, `θ_i = 1` on the support, `n_{i*} = n_i` and `Σ n_i d_i = D`.
//! The optional fusion filter `n_i n_j ≤ Σ_k N_{ij}^k n_k` ranks candidates but never decides a
//! negative verdict.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::modular_data::{central_charge, double, CentralCharge, ModularData, ModularError};
use crate::pointed::{indicator, lagrangian_subgroups, metric_modular_data, MetricGroup, PointedError};
use crate::scalar::Cyclotomic;
use crate::FusionRing;

/// Default node cap for [`candidate_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;
/// Default per-label multiplicity bound.
pub const DEFAULT_MAX_MULT: u64 = 16;

const NUMERIC_SLACK: f64 = 1e-9;

pub const MOD8_CAVEAT: &str =
    "central charge known only mod 8 from modular data; deformation-class obstruction (cf. E8) invisible";
pub const WITT_CAVEAT: &str = "Witt-group class not computed";
pub const CANDIDATE_CAVEAT: &str =
    "candidates satisfy multiplicity-level necessary conditions only; no algebra structure was verified";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Pointed(#[from] PointedError),
    #[error("candidate search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LagrangianCandidate {
    pub n: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub use_fusion_filter: bool,
    pub max_mult: u64,
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { use_fusion_filter: true, max_mult: DEFAULT_MAX_MULT, budget: DEFAULT_SEARCH_BUDGET }
    }
}

impl SearchConfig {
    pub fn with_filter(self, use_fusion_filter: bool) -> Self {
        Self { use_fusion_filter, ..self }
    }
}

/// Gate outcome: `Ok(c)` with `c ≡ 0`, `Err(c)` otherwise.
pub fn central_charge_gate(md: &ModularData) -> Result<Result<CentralCharge, CentralCharge>, ObstructionError> {
    let c = central_charge(md)?;
    Ok(if c.is_zero() { Ok(c) } else { Err(c) })
}

struct Problem<'a> {
    md: &'a ModularData,
    ring: FusionRing,
    dims: Vec<Cyclotomic>,
    big_d: Cyclotomic,
    approx_dims: Vec<f64>,
    approx_d: f64,
}

impl<'a> Problem<'a> {
    fn new(md: &'a ModularData) -> Result<Self, ObstructionError> {
        let dims = md.dims()?;
        let big_d = md.global_dimension()?;
        let approx_dims = dims.iter().map(|d| d.approx().0).collect();
        let approx_d = big_d.approx().0;
        Ok(Self { md, ring: md.fusion()?.into_owned(), dims, big_d, approx_dims, approx_d })
    }

    fn dimension_matches(&self, n: &[u64]) -> bool {
        let sum: Cyclotomic = n
            .iter()
            .zip(&self.dims)
            .filter(|(&k, _)| k != 0)
            .map(|(&k, d)| Cyclotomic::from_integer(k as i64) * d)
            .sum();
        sum == self.big_d
    }

    fn fusion_filter(&self, n: &[u64]) -> bool {
        let support: Vec<usize> = (0..n.len()).filter(|&i| n[i] != 0).collect();
        support.iter().all(|&i| {
            support.iter().all(|&j| {
                let rhs: u64 = self.ring.product(i, j).iter().map(|&(k, m)| m * n[k]).sum();
                n[i] * n[j] <= rhs
            })
        })
    }

    fn is_candidate(&self, n: &[u64], use_fusion_filter: bool) -> bool {
        let md = self.md;
        n.len() == md.rank()
            && n[md.unit()] == 1
            && (0..n.len()).all(|i| n[i] == 0 || md.thetas()[i].is_one())
            && (0..n.len()).all(|i| n[i] == n[self.ring.dual(i)])
            && self.dimension_matches(n)
            && (!use_fusion_filter || self.fusion_filter(n))
    }
}

/// Whether `n` meets every candidate condition (and the fusion filter, if requested).
pub fn is_candidate(md: &ModularData, n: &[u64], use_fusion_filter: bool) -> Result<bool, ObstructionError> {
    Ok(Problem::new(md)?.is_candidate(n, use_fusion_filter))
}

/// Streams candidates in descending lexicographic order to `visit`, which may stop the search early.
///
/// Returns `Ok(false)` without visiting anything when the central-charge gate fails.
pub fn visit_candidates(
    md: &ModularData,
    config: &SearchConfig,
    mut visit: impl FnMut(&[u64]) -> ControlFlow<()>,
) -> Result<bool, ObstructionError> {
    if !central_charge(md)?.is_zero() {
        return Ok(false);
    }
    let p = Problem::new(md)?;
    let r = md.rank();
    let unit = md.unit();
    // dual orbits {i, i*} of nontrivial θ-trivial labels, keyed by their smaller index
    let orbits: Vec<(usize, usize, u64, f64)> = (0..r)
        .filter(|&i| i != unit && i <= p.ring.dual(i) && md.thetas()[i].is_one())
        .map(|i| {
            let j = p.ring.dual(i);
            let bound = ((p.approx_d / p.approx_dims[i] + NUMERIC_SLACK).floor() as u64).min(config.max_mult);
            let weight = p.approx_dims[i] * if i == j { 1.0 } else { 2.0 };
            (i, j, bound, weight)
        })
        .collect();
    let mut reach = vec![0.0; orbits.len() + 1];
    for k in (0..orbits.len()).rev() {
        reach[k] = reach[k + 1] + orbits[k].2 as f64 * orbits[k].3;
    }
    let mut n = vec![0u64; r];
    n[unit] = 1;
    let mut nodes = 0u64;
    struct Ctx<'b, F> {
        p: &'b Problem<'b>,
        orbits: &'b [(usize, usize, u64, f64)],
        reach: &'b [f64],
        config: &'b SearchConfig,
        nodes: &'b mut u64,
        visit: F,
    }
    fn go<F: FnMut(&[u64]) -> ControlFlow<()>>(
        ctx: &mut Ctx<'_, F>,
        k: usize,
        partial: f64,
        n: &mut Vec<u64>,
    ) -> Result<ControlFlow<()>, ObstructionError> {
        *ctx.nodes += 1;
        if *ctx.nodes > ctx.config.budget {
            return Err(ObstructionError::SearchBudgetExceeded(ctx.config.budget));
        }
        let target = ctx.p.approx_d;
        let slack = NUMERIC_SLACK * target.max(1.0);
        if partial > target + slack || partial + ctx.reach[k] < target - slack {
            return Ok(ControlFlow::Continue(()));
        }
        if k == ctx.orbits.len() {
            if (partial - target).abs() <= slack
                && ctx.p.dimension_matches(n)
                && (!ctx.config.use_fusion_filter || ctx.p.fusion_filter(n))
            {
                return Ok((ctx.visit)(n));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let (i, j, bound, weight) = ctx.orbits[k];
        for m in (0..=bound).rev() {
            n[i] = m;
            n[j] = m;
            let flow = go(ctx, k + 1, partial + m as f64 * weight, n)?;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        n[i] = 0;
        n[j] = 0;
        Ok(ControlFlow::Continue(()))
    }
    let mut ctx = Ctx { p: &p, orbits: &orbits, reach: &reach, config, nodes: &mut nodes, visit: &mut visit };
    let _ = go(&mut ctx, 0, p.approx_dims[unit], &mut n)?;
    Ok(true)
}

/// All candidates in descending lexicographic order; empty when the central-charge gate fails.
pub fn candidate_search(
    md: &ModularData,
    config: &SearchConfig,
) -> Result<Vec<LagrangianCandidate>, ObstructionError> {
    let mut out = Vec::new();
    visit_candidates(md, config, |n| {
        out.push(LagrangianCandidate { n: n.to_vec() });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The diagonal `n_{(i,i)} = 1` on `double(md)`.
pub fn canonical_double_candidate(md: &ModularData) -> LagrangianCandidate {
    let r = md.rank();
    let mut n = vec![0; r * r];
    for i in 0..r {
        n[i * r + i] = 1;
    }
    LagrangianCandidate { n }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "NoBoundary_CentralCharge")]
    NoBoundaryCentralCharge,
    #[serde(rename = "NoBoundary_NoCandidate")]
    NoBoundaryNoCandidate,
    CandidatesFound,
    ExactBoundaries,
}

/// Where a condition used by the verdict comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub basis: String,
    pub decisive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub central_charge: String,
    pub candidates: Vec<LagrangianCandidate>,
    /// Candidates that also pass the fusion filter, when it is enabled.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub filtered_candidates: Option<Vec<LagrangianCandidate>>,
    /// Lagrangian subgroups as label lists, for exact pointed verdicts.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgroups: Option<Vec<Vec<String>>>,
    pub exact: bool,
    pub conditions: Vec<Condition>,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn has_boundary_candidate(&self) -> bool {
        matches!(self.verdict, Verdict::CandidatesFound | Verdict::ExactBoundaries)
    }
}

fn condition(name: &str, basis: &str, decisive: bool) -> Condition {
    Condition { name: name.into(), basis: basis.into(), decisive }
}

const THEOREM: &str = "boundary theorem: a gapped boundary makes the bulk a Drinfeld center";
const STANDARD: &str = "standard Lagrangian-algebra theory";

/// Gate, then exact pointed enumeration when `pointed_hint` regenerates `md`, otherwise the
/// unfiltered candidate search.
pub fn verdict(
    md: &ModularData,
    pointed_hint: Option<&MetricGroup>,
    config: &SearchConfig,
) -> Result<ObstructionReport, ObstructionError> {
    let c = central_charge(md)?;
    let mut report = ObstructionReport {
        verdict: Verdict::NoBoundaryCentralCharge,
        central_charge: format!("{c} mod 8"),
        candidates: Vec::new(),
        filtered_candidates: None,
        subgroups: None,
        exact: false,
        conditions: vec![condition("central charge vanishes mod 8", THEOREM, true)],
        caveats: vec![MOD8_CAVEAT.into(), WITT_CAVEAT.into()],
        notes: Vec::new(),
    };
    if !c.is_zero() {
        report.exact = true;
        return Ok(report);
    }
    if let Some(mg) = pointed_hint {
        let regenerated = metric_modular_data(mg)?;
        if regenerated.same_data(md) {
            let subs = lagrangian_subgroups(mg)?;
            report.verdict = Verdict::ExactBoundaries;
            report.exact = true;
            report.conditions.push(condition("Lagrangian subgroup of the metric group", STANDARD, true));
            report.candidates = subs.iter().map(|s| LagrangianCandidate { n: indicator(mg, s) }).collect();
            report.subgroups = Some(
                subs.iter()
                    .map(|s| s.elements.iter().map(|&a| md.labels()[a].clone()).collect())
                    .collect(),
            );
            if subs.is_empty() {
                report.verdict = Verdict::NoBoundaryNoCandidate;
            }
            return Ok(report);
        }
        report.notes.push("pointed hint does not regenerate the modular data; ignored".into());
    }
    report.conditions.extend([
        condition("unit multiplicity 1", STANDARD, true),
        condition("support has trivial twist", STANDARD, true),
        condition("multiplicities are dual-symmetric", STANDARD, true),
        condition("dim A = D", STANDARD, true),
        condition("fusion inequality n_i n_j <= sum_k N_ij^k n_k", STANDARD, false),
    ]);
    let unfiltered = candidate_search(md, &config.with_filter(false))?;
    if unfiltered.is_empty() {
        report.verdict = Verdict::NoBoundaryNoCandidate;
        report.exact = true;
        return Ok(report);
    }
    report.verdict = Verdict::CandidatesFound;
    report.caveats.push(CANDIDATE_CAVEAT.into());
    if config.use_fusion_filter {
        let p = Problem::new(md)?;
        report.filtered_candidates =
            Some(unfiltered.iter().filter(|c| p.fusion_filter(&c.n)).cloned().collect());
    }
    report.candidates = unfiltered;
    Ok(report)
}

/// `verdict(double(md))` together with the canonical candidate's membership, filter on and off.
pub fn double_closure(md: &ModularData, config: &SearchConfig) -> Result<(ObstructionReport, bool, bool), ObstructionError> {
    let d = double(md)?;
    let canonical = canonical_double_candidate(md);
    let report = verdict(&d, None, config)?;
    let off = report.candidates.contains(&canonical);
    let on = report
        .filtered_candidates
        .as_ref()
        .map_or_else(|| is_candidate(&d, &canonical.n, true), |f| Ok(f.contains(&canonical)))?;
    Ok((report, off, on))
}
