//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fatgraph::io::{emit_fatg, emit_script, parse_fatg, parse_script};
use fatgraph::model::{Direction, Twist};
use fatgraph::oracle::synth::{irreducible_pieces, random_composite};
use fatgraph::oracle::{
    bfs_distance, check_properties, distance_table, enumerate_fatgraphs, orientability_oracle, random_fatgraph,
    random_walk, Contract, DEFAULT_STATE_BOUND,
};
use fatgraph::planner::{execute, formula_distance, pacman_step, plan, r_distance, Rule};
use fatgraph::reversal::{self, legal_reversals};
use fatgraph::{Fatgraph, RibbonId};

const SAMPLES_PER_SIZE: usize = 250;
/// n = 5 samples also checked by a single-source search, not just the table.
const DIRECT_SEARCHES: usize = 10;
const TIME_LIMIT: Duration = Duration::from_secs(300);

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Instances with a known search distance, shared by the lower-bound check.
struct Measured {
    f: Fatgraph,
    search: usize,
}

struct Corpus {
    enumerated: Vec<Fatgraph>,
    measured: Vec<Measured>,
    sampled: Vec<Fatgraph>,
}

fn samples(n: usize, count: usize, first_seed: u64) -> Vec<Fatgraph> {
    let mut out = Vec::new();
    let mut seed = first_seed;
    while out.len() < count {
        if let Ok(f) = random_fatgraph(n, seed as usize % (n + 1), seed) {
            out.push(f);
        }
        seed += 1;
    }
    out
}

fn agreement(corpus: &mut Corpus) -> Check {
    let start = Instant::now();
    let compare = |f: &Fatgraph, search: usize| -> Result<(), String> {
        let formula = r_distance(f).map_err(|e| e.to_string())?;
        let p = plan(f).map_err(|e| format!("{f:?}: {e}"))?;
        ensure(formula == search && p.len() == search, || {
            format!("{f:?}: formula {formula}, search {search}, plan {}", p.len())
        })
    };
    for f in &corpus.enumerated {
        let search = bfs_distance(f, DEFAULT_STATE_BOUND).map_err(|e| e.to_string())?.distance;
        compare(f, search)?;
        corpus.measured.push(Measured { f: f.clone(), search });
    }
    for f in samples(4, SAMPLES_PER_SIZE, 0) {
        let search = bfs_distance(&f, DEFAULT_STATE_BOUND).map_err(|e| e.to_string())?.distance;
        compare(&f, search)?;
        corpus.measured.push(Measured { f, search });
    }
    let table = distance_table(5, 10 * DEFAULT_STATE_BOUND).map_err(|e| e.to_string())?;
    for (k, f) in samples(5, SAMPLES_PER_SIZE, 10_000).into_iter().enumerate() {
        let search = table.get(&f).ok_or_else(|| format!("{f:?} missing from the n = 5 table"))?;
        if k < DIRECT_SEARCHES {
            let direct = bfs_distance(&f, 10 * DEFAULT_STATE_BOUND).map_err(|e| e.to_string())?.distance;
            ensure(direct == search, || format!("{f:?}: table {search}, direct search {direct}"))?;
        }
        compare(&f, search)?;
        corpus.measured.push(Measured { f, search });
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} exhaustive (n <= 3), {} sampled at n = 4 and n = 5, in {:.1?}",
        corpus.enumerated.len(),
        2 * SAMPLES_PER_SIZE,
        elapsed
    ))
}

fn z(f: &Fatgraph, e: RibbonId, component: &[RibbonId]) -> usize {
    component.iter().filter(|&&x| x != e && f.ribbon(x).is_mono() != f.crossing(e, x)).count()
}

fn is_irreducible(f: &Fatgraph) -> bool {
    let d = f.decompose().expect("unicellular");
    d.components.len() == 1 && !d.components[0].trivial
}

fn irreducible_non_orientable(corpus: &Corpus) -> Check {
    let mut pool: Vec<Fatgraph> = corpus.enumerated.clone();
    pool.extend(irreducible_pieces());
    for n in 4..=8 {
        pool.extend(samples(n, 150, 100 * n as u64));
    }
    pool.retain(|f| is_irreducible(f) && !f.is_orientable());
    let mut steps = 0;
    for f in &pool {
        let g = f.euler_genus();
        let p = plan(f).map_err(|e| format!("{f:?}: {e}"))?;
        ensure(p.len() == g, || format!("{f:?}: {} steps for genus {g}", p.len()))?;
        let mut state = f.clone();
        for s in &p.steps {
            ensure(s.rule == Rule::MRibbon, || format!("{f:?}: step {} is {:?}", s.reversal, s.rule))?;
            let d = state.decompose().map_err(|e| e.to_string())?;
            ensure(d.components.iter().all(|c| c.trivial || !c.orientable), || {
                format!("{f:?}: orientable component before {}", s.reversal)
            })?;
            // The sliced ribbon must be a mono-directional z-maximizer of its component.
            let chosen = d.components.iter().find_map(|c| {
                c.ribbons
                    .iter()
                    .copied()
                    .find(|&e| {
                        state.ribbon(e).is_mono() && reversal::m_ribbon_slicing(&state, e).ok() == Some(s.reversal)
                    })
                    .map(|e| (e, c))
            });
            let (e, c) = chosen.ok_or_else(|| format!("{f:?}: {} slices no m-ribbon", s.reversal))?;
            let best =
                c.ribbons.iter().filter(|&&x| state.ribbon(x).is_mono()).map(|&x| z(&state, x, &c.ribbons)).max();
            ensure(Some(z(&state, e, &c.ribbons)) == best, || format!("{f:?}: {} is not a z-maximizer", s.reversal))?;
            state = reversal::apply(&state, s.reversal).map_err(|e| e.to_string())?;
            steps += 1;
        }
        ensure(state.euler_genus() == 0, || format!("{f:?}: ends at genus {}", state.euler_genus()))?;
    }
    ensure(pool.len() >= 100, || format!("only {} instances", pool.len()))?;
    Ok(format!("{} instances, {steps} m-ribbon slicings", pool.len()))
}

fn block_non_orientable(corpus: &Corpus) -> Check {
    let mut pool: Vec<Fatgraph> = corpus.enumerated.clone();
    pool.extend(corpus.sampled.iter().cloned());
    for n in 6..=9 {
        pool.extend(samples(n, 100, 1000 * n as u64));
    }
    pool.retain(|f| f.euler_genus() > 0 && f.decompose().expect("unicellular").is_block_non_orientable());
    let mut merges = 0;
    for f in &pool {
        let mut state = f.clone();
        for k in 0..f.euler_genus() {
            let (step, next) = pacman_step(&state).map_err(|e| format!("{f:?}: {e}"))?;
            let d = next.decompose().map_err(|e| e.to_string())?;
            ensure(next.euler_genus() + 1 == state.euler_genus() && d.is_block_non_orientable(), || {
                format!("{f:?}: step {} ({}) leaves genus {} h {}", k + 1, step.reversal, next.euler_genus(), d.h())
            })?;
            merges += (step.rule == Rule::PacMan) as usize;
            state = next;
        }
        ensure(state.euler_genus() == 0, || format!("{f:?}: genus {} left", state.euler_genus()))?;
        ensure(plan(f).map(|p| p.len()).ok() == Some(f.euler_genus()), || format!("{f:?}: plan length"))?;
    }
    Ok(format!("{} instances, {merges} merging slices", pool.len()))
}

const LOCAL: [Contract; 3] = [Contract::Direction, Contract::Crossing, Contract::Boundary];
const STRUCTURAL: [Contract; 4] =
    [Contract::ComponentPersistence, Contract::ComponentMerge, Contract::BlockPersistence, Contract::BlockMerge];

/// (fatgraph, reversal) pairs with n <= 5 and their failed contracts.
fn contract_sample() -> Result<(usize, Vec<String>), String> {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for seed in 0..80u64 {
        let n = 2 + seed as usize % 4;
        let f = if seed % 2 == 0 {
            random_walk(n, 1 + seed as usize % 6, seed)
        } else {
            random_fatgraph(n, seed as usize % (n + 1), seed)
        }
        .map_err(|e| e.to_string())?;
        for r in legal_reversals(&f) {
            let rep = check_properties(&f, r).map_err(|e| e.to_string())?;
            pairs += 1;
            for x in rep.failures() {
                failures.push(format!("{:?} {f:?} {r}: {}", x.contract, x.detail.clone().unwrap_or_default()));
            }
        }
    }
    Ok((pairs, failures))
}

fn contracts(sample: &(usize, Vec<String>), which: &[Contract]) -> Check {
    let (pairs, failures) = sample;
    ensure(*pairs >= 1000, || format!("only {pairs} pairs"))?;
    let bad: Vec<&String> =
        failures.iter().filter(|s| which.iter().any(|c| s.starts_with(&format!("{c:?} ")))).collect();
    ensure(bad.is_empty(), || format!("{} violations, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{pairs} pairs, 0 violations"))
}

fn distance_drop(corpus: &Corpus) -> Check {
    let mut states = 0;
    let mut moves = 0;
    for f in corpus.sampled.iter().step_by(3).chain(samples(8, 40, 77).iter()) {
        let before = f.euler_genus() + f.decompose().map_err(|e| e.to_string())?.h();
        for r in legal_reversals(f) {
            let g = reversal::apply(f, r).map_err(|e| e.to_string())?;
            let after = g.euler_genus() + g.decompose().map_err(|e| e.to_string())?.h();
            ensure(after + 1 >= before, || format!("{f:?} {r}: g + h {before} -> {after}"))?;
            moves += 1;
        }
        states += 1;
    }
    ensure(states >= 100, || format!("only {states} states"))?;
    Ok(format!("{states} states, {moves} reversals"))
}

fn orientability(corpus: &Corpus) -> Check {
    let ambiguous =
        corpus.enumerated.iter().flat_map(|f| f.ribbons().iter()).filter(|r| r.twist == Twist::Ambiguous).count();
    ensure(ambiguous == 0, || format!("{ambiguous} ambiguous ribbons"))?;
    for f in &corpus.enumerated {
        let o = orientability_oracle(f).map_err(|e| format!("{f:?}: {e}"))?;
        ensure(o == f.is_orientable(), || format!("{f:?}: oracle says {o}"))?;
    }
    Ok(format!("{} instances, 0 ambiguous ribbons", corpus.enumerated.len()))
}

fn additivity(corpus: &Corpus) -> Check {
    let pieces = irreducible_pieces();
    let composites: Vec<Fatgraph> = (0..300).map(|s| random_composite(1 + s as usize % 6, &pieces, s)).collect();
    let all = corpus.enumerated.iter().chain(&corpus.sampled).chain(&composites);
    let mut count = 0;
    for f in all {
        let d = f.decompose().map_err(|e| e.to_string())?;
        let sum: usize = d.components.iter().map(|c| c.genus).sum();
        ensure(sum == f.euler_genus(), || format!("{f:?}: genus {} vs sum {sum}", f.euler_genus()))?;
        for c in &d.components {
            let own = f.induced_fatgraph(&c.ribbons).map_err(|e| e.to_string())?.euler_genus();
            ensure(own == c.genus, || format!("{f:?}: component genus {} vs induced {own}", c.genus))?;
        }
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load(name: &str) -> Result<Fatgraph, String> {
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{name}.fatg"))).map_err(|e| e.to_string())?;
    parse_fatg(&text).map_err(|e| format!("{name}: {e}"))
}

fn spot_values() -> Check {
    let f = load("f2b")?;
    let r = f.ribbons();
    let find = |a: (usize, usize), b: (usize, usize)| {
        r.iter().find(|x| (x.wedge_a, x.wedge_b) == (a, b) || (x.wedge_a, x.wedge_b) == (b, a))
    };
    let bi = find((1, 5), (6, 2)).ok_or("no ribbon ((1,5),(6,2))")?;
    let mono = find((5, 3), (4, 6)).ok_or("no ribbon ((5,3),(4,6))")?;
    ensure(bi.twist == Twist::Untwisted && bi.direction == Direction::Bi, || format!("{bi:?}"))?;
    ensure(mono.twist == Twist::Untwisted && mono.direction == Direction::Mono, || format!("{mono:?}"))?;
    let d = formula_distance(12, 3, false);
    ensure(d == 15, || format!("formula_distance(12, 3, false) = {d}"))?;
    Ok("two-boundary ribbon classes; d(12, 3, not all super) = 15".into())
}

fn lower_bounds(corpus: &Corpus) -> Check {
    for m in &corpus.measured {
        let g = m.f.euler_genus();
        let h = m.f.decompose().map_err(|e| e.to_string())?.h();
        ensure(m.search >= g && m.search >= g + h, || format!("{:?}: search {} g {g} h {h}", m.f, m.search))?;
    }
    Ok(format!("{} instances", corpus.measured.len()))
}

fn replay() -> Check {
    let mut names = Vec::new();
    for entry in std::fs::read_dir(fixtures_dir()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|x| x == "fatg") {
            names.push(path.file_stem().unwrap().to_string_lossy().into_owned());
        }
    }
    names.sort();
    let mut replayed = 0;
    for name in names.iter().filter(|n| *n != "broken") {
        let f = load(name)?;
        let text = emit_fatg(&f);
        let back = parse_fatg(&text).map_err(|e| e.to_string())?;
        ensure(emit_fatg(&back) == text && back.canonical_form() == f.canonical_form(), || {
            format!("{name}: round trip changed the fatgraph")
        })?;
        if !f.is_unicellular() {
            continue;
        }
        let p = plan(&f).map_err(|e| format!("{name}: {e}"))?;
        let script = parse_script(&emit_script(&p.reversals())).map_err(|e| e.to_string())?;
        let ex = execute(&f, &script).map_err(|e| format!("{name}: {e}"))?;
        let reported = r_distance(&f).map_err(|e| e.to_string())?;
        ensure(ex.result.euler_genus() == 0 && script.len() == reported, || {
            format!("{name}: {} steps, genus {} left, distance {reported}", script.len(), ex.result.euler_genus())
        })?;
        replayed += 1;
    }
    ensure(load("broken").is_err(), || "broken fixture parsed".into())?;
    Ok(format!("{} fixtures round-tripped, {replayed} replayed to genus 0", names.len() - 1))
}

fn run(id: usize, name: &str, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1}s]");
            true
        }
        Err(why) => {
            println!("criterion {id:>2} FAIL  {name}: {why} [{secs:.1}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut corpus = Corpus { enumerated: Vec::new(), measured: Vec::new(), sampled: Vec::new() };
    for n in 1..=3 {
        corpus.enumerated.extend(enumerate_fatgraphs(n).expect("enumeration"));
    }
    corpus.sampled = (4..=7).flat_map(|n| samples(n, 100, 50_000 + n as u64 * 1000)).collect();

    let mut ok = run(1, "formula = search = plan length", || agreement(&mut corpus));
    ok &=
        run(2, "irreducible non-orientable: g z-maximizing m-ribbon slicings", || irreducible_non_orientable(&corpus));
    ok &= run(3, "block-non-orientable: g genus-reducing slicings", || block_non_orientable(&corpus));
    let sample = contract_sample();
    ok &= run(4, "direction and crossing changes", || contracts(sample.as_ref()?, &LOCAL));
    ok &= run(5, "component and block persistence and merging", || contracts(sample.as_ref()?, &STRUCTURAL));
    ok &= run(6, "g + h drops by at most one", || distance_drop(&corpus));
    ok &= run(7, "orientability against the flip oracle", || orientability(&corpus));
    ok &= run(8, "genus is additive over components", || additivity(&corpus));
    ok &= run(9, "spot values", spot_values);
    ok &= run(10, "search distance >= g and >= g + h", || lower_bounds(&corpus));
    ok &= run(11, "round trip and replay", replay);
    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
