//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use catbase::classify::classify_all;
use catbase::doperator::{basic_topology, check_derived_laws, d_topology, validate_operator};
use catbase::equiv::{check_equivalence, minimal_union_open_check, morgan_condition, Direction};
use catbase::fixtures::{disc3, fam, indisc2, ps, sier};
use catbase::search::enumerate::enumerate_topologies;
use catbase::search::random::mix;
use catbase::search::{enumerate_bases, random_operator, random_valid_bases, sweep, SweepConfig};
use catbase::topo::{baire_class, is_first_category, meager_class, validate_topology};
use catbase::{power_set_iter, validate_base, CategoryBase, OperatorTable, PointSet, SetFamily, TheoremId, Topology, DEFAULT_BUDGET};
use catbase_cli::render::{to_json, to_text};
use catbase_cli::{run, Cli};
use clap::Parser;
use common::{first_category_oracle, meager_oracle};

type Verdict = Result<String, String>;

fn exhaustive(n: usize) -> SweepConfig {
    SweepConfig { n, ..SweepConfig::default() }
}

fn valid_bases(n: usize) -> Vec<CategoryBase> {
    enumerate_bases(&exhaustive(n))
        .unwrap()
        .map(|b| b.unwrap())
        .collect()
}

fn power_set(n: usize) -> SetFamily {
    SetFamily::new(n, power_set_iter(n).unwrap()).unwrap()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let r = sweep(&SweepConfig { workers: 1, ..exhaustive(2) }).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let c = &r.counts;
    let detail = format!(
        "{} candidates, {} valid, {} hypothesis, {} equivalent, {} violations, {:.3}s",
        c.candidates,
        c.valid_bases,
        c.hypothesis_true,
        c.equivalence_true,
        r.violations.len(),
        elapsed.as_secs_f64()
    );
    let ok = c.candidates == 7
        && c.hypothesis_true == c.valid_bases
        && c.equivalence_true == c.valid_bases
        && r.violations.is_empty()
        && elapsed < Duration::from_secs(1);
    if ok { Ok(detail) } else { Err(detail) }
}

fn criterion_2() -> Verdict {
    let cfg = SweepConfig { operators_per_base: 100, ..exhaustive(3) };
    let timed = |workers: usize| {
        let start = Instant::now();
        let r = sweep(&SweepConfig { workers, ..cfg.clone() }).unwrap();
        (r, start.elapsed())
    };
    let (r1, t1) = timed(1);
    let (_, t8) = timed(8);
    let speedup = t1.as_secs_f64() / t8.as_secs_f64().max(1e-9);
    let mut by_theorem: Vec<(TheoremId, usize)> = Vec::new();
    for v in &r1.violations {
        match by_theorem.iter_mut().find(|(t, _)| *t == v.theorem) {
            Some((_, k)) => *k += 1,
            None => by_theorem.push((v.theorem, 1)),
        }
    }
    let first = r1
        .violations
        .iter()
        .find(|v| v.theorem == TheoremId::EquivalenceUnderHypothesis)
        .map(|v| format!("; first: base {} {:?} witness {:?}", serde_json::to_string(&v.base).unwrap(), v.operator, v.witness.map(|w| w.to_string())))
        .unwrap_or_default();
    let detail = format!(
        "{} candidates, {} valid, {} operator jobs, violations {:?}{}; 1 worker {:.3}s, 8 workers {:.3}s, speedup {:.2}x on {} cpu(s)",
        r1.counts.candidates,
        r1.counts.valid_bases,
        r1.counts.operator_jobs,
        by_theorem,
        first,
        t1.as_secs_f64(),
        t8.as_secs_f64(),
        speedup,
        std::thread::available_parallelism().map_or(1, |p| p.get()),
    );
    let ok = r1.counts.candidates == 127
        && r1.violations.is_empty()
        && t1 < Duration::from_secs(60)
        && speedup >= 4.0;
    if ok { Ok(detail) } else { Err(detail) }
}

fn criterion_3() -> Verdict {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let goldens = [
        ("SIER", sier(), fam(2, &[&[], &[0]]), power_set(2), fam(2, &[&[], &[1], &[0, 1]])),
        ("INDISC2", indisc2(), fam(2, &[&[]]), fam(2, &[&[], &[0, 1]]), fam(2, &[&[], &[0, 1]])),
        ("DISC3", disc3(), fam(3, &[&[]]), power_set(3), power_set(3)),
    ];
    for (name, base, meager, baire, opens) in goldens {
        let class = classify_all(&base).unwrap();
        check(&format!("{name} M(C)"), class.meager_class() == meager);
        check(&format!("{name} B(C)"), class.baire_class() == baire);
        check(&format!("{name} basic topology"), basic_topology(&base).unwrap().opens() == &opens);
    }
    let constant = OperatorTable::from_fn(3, |s| if s.is_empty() { s } else { PointSet::full(3) }).unwrap();
    let r = check_equivalence(&disc3(), &constant, None).unwrap();
    check("DISC3 constant hypothesis", !r.hypothesis_holds);
    check("DISC3 constant baire_equal", !r.baire_equal);
    check(
        "DISC3 constant witness",
        r.witnesses(Direction::BaireOnlyInBase).next() == Some(ps(3, &[0])),
    );
    if failures.is_empty() {
        Ok("SIER, INDISC2, DISC3 and DISC3 with constant operator reproduced exactly".into())
    } else {
        Err(format!("mismatched: {failures:?}"))
    }
}

/// Topologies on `n` points counted straight from the closure conditions.
fn brute_force_topologies(n: usize) -> Vec<SetFamily> {
    let full = (1u32 << n) - 1;
    let inner: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1 << inner.len()) {
        let mut opens = vec![0, full];
        opens.extend(inner.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &m)| m));
        let closed = opens.iter().all(|&a| {
            opens.iter().all(|&b| opens.contains(&(a | b)) && opens.contains(&(a & b)))
        });
        if closed {
            let sets = opens.iter().map(|&m| PointSet::new(n, m).unwrap());
            out.push(SetFamily::new(n, sets).unwrap());
        }
    }
    out.sort_by(|a, b| a.masks().cmp(b.masks()));
    out
}

fn criterion_4() -> Verdict {
    let brute = brute_force_topologies(3);
    let mut tops: Vec<Topology> = enumerate_topologies(3).map_err(|e| e.to_string())?;
    tops.sort_by(|a, b| a.opens().masks().cmp(b.opens().masks()));
    let same = tops.len() == brute.len() && tops.iter().zip(&brute).all(|(t, b)| t.opens() == b);
    let mut mismatches = 0usize;
    for t in &tops {
        let regions: Vec<PointSet> = t.nonempty_opens().collect();
        let Ok(base) = validate_base(3, &regions, DEFAULT_BUDGET) else {
            mismatches += 1;
            continue;
        };
        let class = classify_all(&base).unwrap();
        if class.meager_class() != meager_class(t).unwrap() || class.baire_class() != baire_class(t).unwrap() {
            mismatches += 1;
        }
    }
    let detail = format!("{} topologies (brute force {}), {} mismatches", tops.len(), brute.len(), mismatches);
    if same && brute.len() == 29 && mismatches == 0 { Ok(detail) } else { Err(detail) }
}

fn criterion_5() -> Verdict {
    let mut bases: Vec<CategoryBase> = (1..=3).flat_map(valid_bases).collect();
    let exhaustive_count = bases.len();
    bases.extend(random_valid_bases(4, 200, 5, DEFAULT_BUDGET, 100_000).map_err(|e| e.to_string())?);
    let random_count = bases.len() - exhaustive_count;
    let mut tops: Vec<Topology> = Vec::new();
    for n in 1..=3 {
        tops.extend(enumerate_topologies(n).unwrap());
    }
    let (mut meager_bad, mut category_bad, mut checked) = (0usize, 0usize, 0usize);
    for base in &bases {
        let class = classify_all(base).unwrap();
        let t = basic_topology(base).unwrap();
        for s in power_set_iter(base.n()).unwrap() {
            checked += 1;
            meager_bad += usize::from(class.is_meager(s) != meager_oracle(base, s));
            category_bad += usize::from(is_first_category(&t, s) != first_category_oracle(&t, s));
        }
    }
    for t in &tops {
        for s in power_set_iter(t.n()).unwrap() {
            category_bad += usize::from(is_first_category(t, s) != first_category_oracle(t, s));
        }
    }
    let detail = format!(
        "{exhaustive_count} exhaustive + {random_count} random bases, {checked} sets, {} topologies; disagreements: meager {meager_bad}, first category {category_bad}",
        tops.len()
    );
    if random_count == 200 && meager_bad == 0 && category_bad == 0 { Ok(detail) } else { Err(detail) }
}

fn criterion_6() -> Verdict {
    let bases = valid_bases(3);
    let mut violations = Vec::new();
    for i in 0..1000u64 {
        let base = &bases[i as usize % bases.len()];
        let seed = mix(0x0b5e_55ed, i);
        let d = random_operator(base, seed).unwrap();
        if !validate_operator(base, &d, true).is_empty() {
            violations.push(format!("operator {i} invalid"));
            continue;
        }
        match d_topology(base, &d) {
            Ok(t) if validate_topology(3, t.opens()).is_ok() => {}
            _ => violations.push(format!("operator {i}: tau(D) is not a topology")),
        }
        if let Err(v) = check_derived_laws(&d, 200, seed) {
            violations.push(format!("operator {i}: {v:?}"));
        }
    }
    let detail = format!("1000 operators over {} bases, {} violations", bases.len(), violations.len());
    if violations.is_empty() { Ok(detail) } else { Err(format!("{detail}: {:?}", &violations[..violations.len().min(3)])) }
}

fn criterion_7() -> Verdict {
    let mut failures = Vec::new();
    let mut total = 0usize;
    for n in 1..=3 {
        for base in valid_bases(n) {
            total += 1;
            if !morgan_condition(&base) {
                failures.push(format!("morgan {}", serde_json::to_string(base.regions()).unwrap()));
            }
            if !matches!(minimal_union_open_check(&base), Ok(Ok(()))) {
                failures.push(format!("minimal union {}", serde_json::to_string(base.regions()).unwrap()));
            }
        }
        let r = sweep(&SweepConfig { hunt: true, ..exhaustive(n) }).map_err(|e| e.to_string())?;
        let found: Vec<_> = r
            .violations
            .iter()
            .filter(|v| v.theorem == TheoremId::EquivalentTopologyExists)
            .collect();
        if !found.is_empty() || r.counts.hunt_matched != r.counts.valid_bases {
            failures.push(format!("hunt at n={n}: {} unmatched bases", found.len()));
        }
    }
    let detail = format!("{total} bases at n<=3, {} failures", failures.len());
    if failures.is_empty() { Ok(detail) } else { Err(format!("{detail}: {failures:?}")) }
}

/// Same path as the binary: parse, run, render.
fn cli(args: &[&str]) -> Vec<u8> {
    let cli = Cli::try_parse_from(std::iter::once("catbase").chain(args.iter().copied())).unwrap();
    let outcome = run(&cli);
    let text = if cli.json { to_json(&outcome.report) } else { to_text(&outcome.report) };
    text.into_bytes()
}

fn criterion_8() -> Verdict {
    let runs: [&[&str]; 3] = [
        &["sweep", "--n", "3", "--exhaustive", "--json"],
        &["sweep", "--n", "3", "--exhaustive", "--operators", "20", "--hunt", "--canonical", "--json"],
        &["sweep", "--n", "5", "--random", "--samples", "300", "--seed", "11", "--operators", "5", "--json"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let outputs: Vec<Vec<u8>> = ["1", "8", "1", "8"]
            .iter()
            .map(|w| cli(&[args, &["--workers", w]].concat()))
            .collect();
        if outputs.iter().any(|o| o != &outputs[0]) || outputs[0].is_empty() {
            differing.push(args.join(" "));
        }
    }
    let detail = format!("{} run configurations at 1 and 8 workers, {} differing", runs.len(), differing.len());
    if differing.is_empty() { Ok(detail) } else { Err(format!("{detail}: {differing:?}")) }
}

fn main() {
    let criteria: [(usize, fn() -> Verdict); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (id, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {id}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
