//! Exhaustive and seeded random sweeps over small category bases.
//!
//! A sweep generates candidate region families, validates them, and runs
//! every theorem-level check on each valid base: region intersections, the
//! fundamental theorem and its corollary, validity of the cluster operator,
//! the open-set lemma and the equivalence with `τ(D)`, Morgan's condition,
//! and optionally a batch of random operators and a hunt for a base that no
//! topology on `X` matches.
//!
//! Jobs are independent and run on a rayon pool; results are merged in
//! candidate order, so the report does not depend on the worker count.

pub mod canon;
pub mod enumerate;
pub mod random;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{validate_base, DEFAULT_BUDGET};
use crate::base::CategoryBase;
use crate::classify::{classify_all, comeager_region, fundamental_witness, SetClass};
use crate::doperator::{cluster_operator, d_topology, OperatorTable};
use crate::equiv::{compare, minimal_union_open_check, morgan_condition, EquivalenceReport};
use crate::error::{Error, Result, TheoremId};
use crate::set::{full_mask, PointSet, SetFamily};
use crate::topo::Topology;

use canon::{canonical_form, orbit_size, permutations};
use enumerate::{candidate_count, candidate_family, check_exhaustive, enumerate_topologies};
use random::{mix, random_family, random_operator_with_fallback};

pub use enumerate::{enumerate_bases, enumerate_topologies as topologies, find_equivalent_topology};
pub use random::{random_operator, random_valid_bases};

/// Random-mode ground sets are capped here; per-base work is `O(4^n)`.
pub const MAX_RANDOM_N: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n: usize,
    pub mode: Mode,
    /// Families drawn in random mode.
    pub sample_count: usize,
    pub seed: u64,
    /// Keep one representative per isomorphism class.
    pub canonicalize: bool,
    /// Disjoint-subfamily budget per base.
    pub budget: u64,
    /// Random operators checked per valid base, besides the cluster operator.
    pub operators_per_base: usize,
    /// Look for bases that no topology on `X` matches (`n ≤ 4`).
    pub hunt: bool,
    /// Allow exhaustive enumeration at `n = 4`.
    pub extended: bool,
    /// Worker threads; `0` uses the rayon default.
    #[serde(skip)]
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n: 3,
            mode: Mode::Exhaustive,
            sample_count: 1000,
            seed: 0,
            canonicalize: false,
            budget: DEFAULT_BUDGET,
            operators_per_base: 0,
            hunt: false,
            extended: false,
            workers: 0,
        }
    }
}

/// Where the operator of a check came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSource {
    Cluster,
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepViolation {
    pub base: SetFamily,
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PointSet>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepCounts {
    pub candidates: u64,
    pub valid_bases: u64,
    pub degenerate_bases: u64,
    /// Cluster operator: hypothesis holds.
    pub hypothesis_true: u64,
    /// Cluster operator: `M` and `B` classes coincide.
    pub equivalence_true: u64,
    pub morgan_true: u64,
    pub operator_jobs: u64,
    /// Random draws that fell back to the cluster operator.
    pub operator_fallbacks: u64,
    pub operator_hypothesis_true: u64,
    pub operator_equivalence_true: u64,
    pub operator_lemma_true: u64,
    /// Random operators whose open sets are not all abundant Baire while the
    /// hypothesis fails; logged only.
    pub lemma_failures_without_hypothesis: u64,
    /// Bases matched by some topology in the hunt.
    pub hunt_matched: u64,
    /// Candidates skipped because the axiom budget ran out.
    pub budget_exceeded: u64,
}

impl SweepCounts {
    fn add(&mut self, other: &SweepCounts, weight: u64) {
        self.candidates += other.candidates * weight;
        self.valid_bases += other.valid_bases * weight;
        self.degenerate_bases += other.degenerate_bases * weight;
        self.hypothesis_true += other.hypothesis_true * weight;
        self.equivalence_true += other.equivalence_true * weight;
        self.morgan_true += other.morgan_true * weight;
        self.operator_jobs += other.operator_jobs * weight;
        self.operator_fallbacks += other.operator_fallbacks * weight;
        self.operator_hypothesis_true += other.operator_hypothesis_true * weight;
        self.operator_equivalence_true += other.operator_equivalence_true * weight;
        self.operator_lemma_true += other.operator_lemma_true * weight;
        self.lemma_failures_without_hypothesis += other.lemma_failures_without_hypothesis * weight;
        self.hunt_matched += other.hunt_matched * weight;
        self.budget_exceeded += other.budget_exceeded * weight;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub counts: SweepCounts,
    /// Counts weighted by orbit size; exhaustive canonical sweeps only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weighted_counts: Option<SweepCounts>,
    pub violations: Vec<SweepViolation>,
    /// Some candidates were skipped for budget reasons.
    pub truncated: bool,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct JobOutcome {
    counts: SweepCounts,
    violations: Vec<SweepViolation>,
    weight: u64,
}

struct Job {
    family: Vec<u32>,
    weight: u64,
}

/// Runs the sweep described by `cfg`.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let started = Instant::now();
    let jobs = build_jobs(cfg)?;
    let topologies = if cfg.hunt {
        Some(enumerate_topologies(cfg.n)?)
    } else {
        None
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<JobOutcome>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| run_job(cfg, job, topologies.as_deref()))
            .collect()
    });

    let mut counts = SweepCounts::default();
    let mut weighted = SweepCounts::default();
    let mut violations = Vec::new();
    for outcome in outcomes {
        let outcome = outcome?;
        counts.add(&outcome.counts, 1);
        weighted.add(&outcome.counts, outcome.weight);
        violations.extend(outcome.violations);
    }
    violations.sort();
    let weighted_counts = (cfg.canonicalize && cfg.mode == Mode::Exhaustive).then_some(weighted);
    Ok(SweepReport {
        config: cfg.clone(),
        truncated: counts.budget_exceeded > 0,
        counts,
        weighted_counts,
        violations,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

fn build_jobs(cfg: &SweepConfig) -> Result<Vec<Job>> {
    let perms = permutations(cfg.n);
    match cfg.mode {
        Mode::Exhaustive => {
            check_exhaustive(cfg)?;
            let mut jobs = Vec::new();
            for index in 1..=candidate_count(cfg.n) {
                let family = candidate_family(index);
                if cfg.canonicalize {
                    if canonical_form(&family, &perms) != family {
                        continue;
                    }
                    let weight = orbit_size(&family, &perms);
                    jobs.push(Job { family, weight });
                } else {
                    jobs.push(Job { family, weight: 1 });
                }
            }
            Ok(jobs)
        }
        Mode::Random => {
            if cfg.n == 0 {
                return Err(Error::InvalidInput("ground set must be non-empty".into()));
            }
            if cfg.n > MAX_RANDOM_N {
                return Err(Error::Capacity {
                    what: "random sweep ground-set size",
                    requested: cfg.n as u64,
                    limit: MAX_RANDOM_N as u64,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut seen = std::collections::HashSet::new();
            let mut jobs = Vec::with_capacity(cfg.sample_count);
            for _ in 0..cfg.sample_count {
                let family = random_family(cfg.n, &mut rng);
                if cfg.canonicalize && !seen.insert(canonical_form(&family, &perms)) {
                    continue;
                }
                jobs.push(Job { family, weight: 1 });
            }
            Ok(jobs)
        }
    }
}

fn family_key(family: &[u32]) -> u64 {
    family
        .iter()
        .fold(0x5EED_CA7B_A5E0_0000, |acc, &m| mix(acc, u64::from(m)))
}

struct Ctx<'a> {
    base: &'a CategoryBase,
    out: &'a mut JobOutcome,
}

impl Ctx<'_> {
    fn violation(
        &mut self,
        theorem: TheoremId,
        operator: Option<OperatorSource>,
        witness: Option<PointSet>,
        detail: impl Into<String>,
    ) {
        self.out.violations.push(SweepViolation {
            base: self.base.regions().clone(),
            theorem,
            operator,
            witness,
            detail: detail.into(),
        });
    }

    fn from_error(&mut self, e: Error, operator: Option<OperatorSource>) -> Result<()> {
        match e {
            Error::TheoremViolation { theorem, detail } => {
                self.violation(theorem, operator, None, detail);
                Ok(())
            }
            other => Err(other),
        }
    }
}

fn run_job(cfg: &SweepConfig, job: &Job, topologies: Option<&[Topology]>) -> Result<JobOutcome> {
    let n = cfg.n;
    let mut out = JobOutcome {
        weight: job.weight,
        ..JobOutcome::default()
    };
    out.counts.candidates = 1;
    let regions: Vec<PointSet> = job.family.iter().map(|&m| PointSet::raw(n, m)).collect();
    let base = match validate_base(n, &regions, cfg.budget) {
        Ok(b) => b,
        Err(Error::InvalidBase(_)) => return Ok(out),
        Err(Error::Capacity { .. }) => {
            out.counts.budget_exceeded = 1;
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.counts.valid_bases = 1;
    out.counts.degenerate_bases = u64::from(base.is_degenerate());
    let class = classify_all(&base)?;
    let mut ctx = Ctx {
        base: &base,
        out: &mut out,
    };

    check_region_intersections(&mut ctx);
    check_fundamental(&mut ctx, &class)?;

    let morgan = morgan_condition(&base);
    if morgan {
        ctx.out.counts.morgan_true = 1;
    } else {
        ctx.violation(TheoremId::MorganCondition, None, None, "a region contains no minimal region");
    }
    match minimal_union_open_check(&base) {
        Ok(Ok(())) => {}
        Ok(Err(u)) => ctx.violation(
            TheoremId::MinimalUnionOpen,
            None,
            Some(u),
            format!("union of minimal regions {u} is not open in the basic topology"),
        ),
        Err(e) => ctx.from_error(e, None)?,
    }

    match cluster_operator(&base).and_then(|d| d_topology(&base, &d)) {
        Ok(t) => {
            let report = compare(&base, &class, t, Some(1));
            ctx.out.counts.hypothesis_true = u64::from(report.hypothesis_holds);
            ctx.out.counts.equivalence_true = u64::from(report.equivalent());
            check_report(&mut ctx, &report, OperatorSource::Cluster);
            if morgan && !report.equivalent() {
                ctx.violation(
                    TheoremId::MorganEquivalence,
                    Some(OperatorSource::Cluster),
                    first_mismatch(&report),
                    "Morgan's condition holds but the base differs from its basic topology",
                );
            }
        }
        Err(e) => ctx.from_error(e, Some(OperatorSource::Cluster))?,
    }

    let key = family_key(&job.family);
    for k in 0..cfg.operators_per_base {
        let seed = mix(mix(cfg.seed, key), k as u64);
        let source = OperatorSource::Random { seed };
        let (d, fell_back) = random_operator_with_fallback(&base, seed)?;
        ctx.out.counts.operator_jobs += 1;
        ctx.out.counts.operator_fallbacks += u64::from(fell_back);
        check_random_operator(&mut ctx, &class, &d, source)?;
    }

    if let Some(tops) = topologies {
        if find_equivalent_topology(&class, tops).is_some() {
            ctx.out.counts.hunt_matched = 1;
        } else {
            ctx.violation(
                TheoremId::EquivalentTopologyExists,
                None,
                None,
                format!("no topology on {n} points matches this base"),
            );
        }
    }
    Ok(out)
}

fn first_mismatch(report: &EquivalenceReport) -> Option<PointSet> {
    report.mismatches.first().map(|m| m.set)
}

/// Violations implied by an equivalence report under the hypothesis.
fn check_report(ctx: &mut Ctx<'_>, report: &EquivalenceReport, source: OperatorSource) {
    if !report.hypothesis_holds {
        return;
    }
    if !report.open_sets_abundant_baire {
        let w = report.open_set_witness;
        ctx.violation(
            TheoremId::OpenSetsAbundantBaire,
            Some(source),
            w,
            format!("open set {} is not an abundant Baire set", w.unwrap_or(PointSet::empty(0))),
        );
    }
    if !report.equivalent() {
        let detail = format!(
            "hypothesis holds but classes differ (mismatch counts {:?})",
            report.mismatch_counts
        );
        ctx.violation(
            TheoremId::EquivalenceUnderHypothesis,
            Some(source),
            first_mismatch(report),
            detail.clone(),
        );
        if report.open_sets_abundant_baire {
            ctx.violation(
                TheoremId::EquivalenceUnderHypothesisAndLemma,
                Some(source),
                first_mismatch(report),
                detail,
            );
        }
    }
}

fn check_random_operator(
    ctx: &mut Ctx<'_>,
    class: &SetClass,
    d: &OperatorTable,
    source: OperatorSource,
) -> Result<()> {
    let t = match d_topology(ctx.base, d) {
        Ok(t) => t,
        Err(e) => return ctx.from_error(e, Some(source)),
    };
    let report = compare(ctx.base, class, t, Some(1));
    let c = &mut ctx.out.counts;
    c.operator_hypothesis_true += u64::from(report.hypothesis_holds);
    c.operator_equivalence_true += u64::from(report.equivalent());
    c.operator_lemma_true += u64::from(report.open_sets_abundant_baire);
    if !report.hypothesis_holds && !report.open_sets_abundant_baire {
        c.lemma_failures_without_hypothesis += 1;
    }
    check_report(ctx, &report, source);
    Ok(())
}

/// Any two regions meet in a set that contains a region or is singular.
fn check_region_intersections(ctx: &mut Ctx<'_>) {
    let masks = ctx.base.regions().masks().to_vec();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i..] {
            let meet = a & b;
            if !ctx.base.contains_region_mask(meet) && !ctx.base.singular_mask(meet) {
                let n = ctx.base.n();
                ctx.violation(
                    TheoremId::RegionIntersection,
                    None,
                    Some(PointSet::raw(n, meet)),
                    format!(
                        "{} ∩ {} contains no region and is not singular",
                        PointSet::raw(n, a),
                        PointSet::raw(n, b)
                    ),
                );
            }
        }
    }
}

/// Fundamental theorem on every subset and its corollary on every abundant
/// Baire subset.
fn check_fundamental(ctx: &mut Ctx<'_>, class: &SetClass) -> Result<()> {
    let n = ctx.base.n();
    for s in (0..=full_mask(n)).map(|s| PointSet::raw(n, s)) {
        if let Err(e) = fundamental_witness(ctx.base, s) {
            ctx.from_error(e, None)?;
            if let Some(v) = ctx.out.violations.last_mut() {
                v.witness = Some(s);
            }
        }
        if !class.is_meager(s) && class.is_baire(s) {
            if let Err(e) = comeager_region(ctx.base, s) {
                ctx.from_error(e, None)?;
                if let Some(v) = ctx.out.violations.last_mut() {
                    v.witness = Some(s);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_two_points() {
        let r = sweep(&SweepConfig {
            n: 2,
            ..SweepConfig::default()
        })
        .unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.counts.candidates, 7);
        assert_eq!(r.counts.valid_bases, 5);
        assert_eq!(r.counts.equivalence_true, r.counts.valid_bases);
        assert_eq!(r.counts.morgan_true, r.counts.valid_bases);
    }

    #[test]
    fn canonical_weights_recover_plain_counts() {
        let plain = sweep(&SweepConfig {
            n: 2,
            ..SweepConfig::default()
        })
        .unwrap();
        let canon = sweep(&SweepConfig {
            n: 2,
            canonicalize: true,
            ..SweepConfig::default()
        })
        .unwrap();
        assert!(canon.counts.candidates < plain.counts.candidates);
        assert_eq!(canon.weighted_counts, Some(plain.counts));
    }

    #[test]
    fn random_mode_rejects_large_n() {
        let cfg = SweepConfig {
            n: 9,
            mode: Mode::Random,
            ..SweepConfig::default()
        };
        assert!(sweep(&cfg).unwrap_err().is_capacity());
    }
}
