//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snf_core::construct::{expand, generate_counterexample, generate_glp_example, ConstructError, GeneratorRecipe};
use snf_core::cyclotomic::{cyclotomic_polynomial, euler_phi, IntPolynomial, MAX_ORDER};
use snf_core::glp::{
    build_constraint_graph, check_labeling, decide_glp, decide_glp_even, decide_glp_odd, glp_via_slices, Verdict,
};
use snf_core::model::{catalog, validate, CATALOG_NAMES};
use snf_core::{CycInt, FractalSpec};

use common::{brute_force_glp, geometric_cycle_weight, largest_odd_divisor, sweep_spec};

const SWEEP_PER_K: u64 = 200;
const SLICE_PER_K: u64 = 60;

/// Labeling and witness checks collected from every suite.
#[derive(Default)]
struct Audit {
    labelings: usize,
    witnesses: usize,
    problems: Vec<String>,
}

impl Audit {
    fn record(&mut self, context: &str, spec: &FractalSpec, verdict: &Verdict) {
        match verdict {
            Verdict::Glp(labeling) => {
                self.labelings += 1;
                if check_labeling(spec, labeling) != Ok(true) {
                    self.problems.push(format!("{context}: labeling rejected"));
                }
            }
            Verdict::NoGlp(cycle) => {
                self.witnesses += 1;
                match geometric_cycle_weight(spec, cycle) {
                    Some(w) if w != 0 => {}
                    other => self.problems.push(format!("{context}: witness {cycle:?} sums to {other:?}")),
                }
            }
        }
    }
}

struct Swept {
    k: usize,
    seed: u64,
    spec: FractalSpec,
    verdict: Verdict,
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn catalog_verdicts(audit: &mut Audit) -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut verdicts = Vec::new();
    for name in CATALOG_NAMES {
        let spec = catalog(name).map_err(|e| format!("{name}: {e}"))?;
        let start = Instant::now();
        let verdict = decide_glp(&spec).map_err(|e| format!("{name}: {e}"))?;
        slowest = slowest.max(start.elapsed());
        audit.record(name, &spec, &verdict);
        verdicts.push((name, spec, verdict));
    }
    for (name, spec, verdict) in &verdicts {
        match *name {
            "lindstrom-snowflake" => {
                let cycle = verdict.witness().ok_or("snowflake decided GLP")?;
                ensure(cycle.len() == 3, || format!("snowflake witness {cycle:?} is not a triangle"))?;
            }
            "sierpinski-hexagon" => {
                ensure(verdict.is_glp(), || "hexagon decided NoGLP".into())?;
                let classes = decide_glp_even(spec)
                    .map_err(|e| e.to_string())?
                    .classes
                    .ok_or("hexagon has no class division")?;
                let graph = build_constraint_graph(spec).map_err(|e| e.to_string())?;
                ensure(
                    graph.edges().iter().all(|e| classes[e.a] != classes[e.b])
                        && classes.iter().all(|&c| c == 1 || c == 2),
                    || format!("hexagon classes {classes:?} are not a 2-colouring"),
                )?;
            }
            _ => ensure(verdict.is_glp(), || format!("{name} decided NoGLP"))?,
        }
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest decision took {slowest:?}"))?;
    Ok(format!("5 catalog verdicts, slowest {slowest:?}"))
}

fn run_sweep(orders: &[usize], audit: &mut Audit) -> Result<Vec<Swept>, String> {
    let mut out = Vec::new();
    for &k in orders {
        for seed in 0..SWEEP_PER_K {
            let spec = sweep_spec(k, seed);
            let verdict = decide_glp(&spec).map_err(|e| format!("k={k} seed={seed}: {e}"))?;
            audit.record(&format!("sweep k={k} seed={seed}"), &spec, &verdict);
            out.push(Swept { k, seed, spec, verdict });
        }
    }
    Ok(out)
}

fn decider_equivalence(sweep: &[Swept], elapsed: Duration) -> Outcome {
    let mut negatives = 0;
    for s in sweep.iter().filter(|s| s.k <= 12) {
        let other = if s.k % 2 == 0 {
            decide_glp_even(&s.spec).map(|d| d.verdict)
        } else {
            decide_glp_odd(&s.spec)
        }
        .map_err(|e| format!("k={} seed={}: {e}", s.k, s.seed))?;
        ensure(other.is_glp() == s.verdict.is_glp(), || {
            format!("k={} seed={}: deciders disagree", s.k, s.seed)
        })?;
        negatives += usize::from(!s.verdict.is_glp());
    }
    let count = sweep.iter().filter(|s| s.k <= 12).count();
    let largest = sweep.iter().filter(|s| s.k <= 12).map(|s| s.spec.len()).max().unwrap_or(0);
    ensure(count >= 10 * SWEEP_PER_K as usize, || format!("only {count} specs"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("sweep took {elapsed:?}"))?;
    Ok(format!(
        "{count} specs up to {largest} cells, {negatives} without GLP, {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn fast_paths(sweep: &[Swept]) -> Outcome {
    let mut checked = 0;
    let mut cycles = 0;
    for s in sweep.iter().filter(|s| [3, 5, 7, 11, 4, 8, 16].contains(&s.k)) {
        ensure(s.verdict.is_glp(), || format!("k={} seed={}: NoGLP", s.k, s.seed))?;
        checked += 1;
        if s.k.is_power_of_two() {
            let graph = build_constraint_graph(&s.spec).map_err(|e| e.to_string())?;
            for cycle in graph.fundamental_cycles() {
                ensure(cycle.len() % 2 == 0, || {
                    format!("k={} seed={}: odd cycle {cycle:?}", s.k, s.seed)
                })?;
                cycles += 1;
            }
        }
    }
    Ok(format!("{checked} specs with GLP, {cycles} even fundamental cycles"))
}

fn counterexamples(audit: &mut Audit) -> Outcome {
    let orders = [6, 9, 10, 12, 14, 15, 18, 20, 21, 22, 24, 25, 26, 27, 28, 30];
    for k in orders {
        let recipe = GeneratorRecipe::counterexample(k).map_err(|e| format!("k={k}: {e}"))?;
        let r = recipe.odd_divisor.ok_or(format!("k={k}: no divisor"))?;
        let spec = generate_counterexample(k).map_err(|e| format!("k={k}: {e}"))?;
        let verdict = decide_glp(&spec).map_err(|e| format!("k={k}: {e}"))?;
        audit.record(&format!("counterexample k={k}"), &spec, &verdict);
        let cycle = verdict.witness().ok_or(format!("k={k}: decided GLP"))?;
        ensure(cycle.len() == r && k % r == 0 && r % 2 == 1 && r > 1, || {
            format!("k={k}: witness length {} for divisor {r}", cycle.len())
        })?;
        if k % 2 == 0 {
            ensure(r == largest_odd_divisor(k), || format!("k={k}: divisor {r}"))?;
        }
    }
    for k in [8, 16] {
        ensure(generate_counterexample(k).err() == Some(ConstructError::PowerOfTwoOrder(k)), || {
            format!("k={k} did not raise the power-of-two error")
        })?;
    }
    Ok(format!("{} orders without GLP, 8 and 16 rejected", orders.len()))
}

fn glp_examples(audit: &mut Audit) -> Outcome {
    for k in 3..=20 {
        let spec = generate_glp_example(k).map_err(|e| format!("k={k}: {e}"))?;
        ensure(validate(&spec).is_valid(), || format!("k={k}: invalid"))?;
        let verdict = decide_glp(&spec).map_err(|e| format!("k={k}: {e}"))?;
        audit.record(&format!("example k={k}"), &spec, &verdict);
        ensure(verdict.is_glp(), || format!("k={k}: NoGLP"))?;
        if k % 4 == 0 {
            ensure(spec.len() == 2 * k, || format!("k={k}: {} cells", spec.len()))?;
        }
    }
    Ok("18 valid examples with GLP".into())
}

fn slice_reduction(audit: &mut Audit) -> Outcome {
    let mut specs: Vec<(String, FractalSpec)> = Vec::new();
    for name in CATALOG_NAMES {
        specs.push((name.to_string(), catalog(name).map_err(|e| e.to_string())?));
    }
    for k in 6..=10 {
        for seed in 0..SLICE_PER_K {
            let target = 2 * k + (seed as usize * 11) % 50;
            let spec = snf_core::construct::random_valid_spec(k, target, 1000 + seed, true)
                .map_err(|e| format!("k={k} seed={seed}: {e}"))?;
            specs.push((format!("k={k} seed={seed}"), spec));
        }
    }
    let mut central = 0;
    for (context, spec) in &specs {
        let direct = decide_glp(spec).map_err(|e| format!("{context}: {e}"))?;
        let sliced = glp_via_slices(spec).map_err(|e| format!("{context}: {e}"))?;
        audit.record(context, spec, &direct);
        audit.record(&format!("{context} via slices"), spec, &sliced);
        ensure(direct.is_glp() == sliced.is_glp(), || format!("{context}: slices disagree"))?;
        let has_central = validate(spec).central_cell.is_some();
        if spec.k() == 6 && has_central {
            central += 1;
            ensure(!direct.is_glp() && !sliced.is_glp(), || format!("{context}: central cell with GLP"))?;
        }
    }
    ensure(central > 0, || "no k = 6 spec with a central cell".into())?;
    Ok(format!("{} specs agree, {central} hexagonal with a central cell", specs.len()))
}

fn expansion(audit: &mut Audit) -> Outcome {
    for name in CATALOG_NAMES {
        let spec = catalog(name).map_err(|e| e.to_string())?;
        let deeper = expand(&spec, 2).map_err(|e| format!("{name}: {e}"))?;
        let (a, b) = (
            decide_glp(&spec).map_err(|e| e.to_string())?,
            decide_glp(&deeper).map_err(|e| format!("{name} level 2: {e}"))?,
        );
        audit.record(&format!("{name} level 2"), &deeper, &b);
        ensure(a.is_glp() == b.is_glp(), || format!("{name}: level 2 flips the verdict"))?;
        ensure(deeper.len() == spec.len().pow(2), || format!("{name}: {} cells", deeper.len()))?;
        if name == "sierpinski-gasket" {
            ensure(deeper.len() == 9, || "gasket level 2 is not 9 cells".into())?;
        }
    }
    Ok("5 catalog specs keep their verdict at level 2".into())
}

fn brute_force(sweep: &[Swept], audit: &mut Audit) -> Outcome {
    let mut specs: Vec<(String, FractalSpec, bool)> = sweep
        .iter()
        .filter(|s| s.spec.len() <= 8)
        .map(|s| (format!("k={} seed={}", s.k, s.seed), s.spec.clone(), s.verdict.is_glp()))
        .collect();
    for k in [6, 9, 10, 12, 14, 15, 18, 20, 21, 22, 24, 25, 26, 27, 28, 30] {
        let spec = generate_counterexample(k).map_err(|e| e.to_string())?;
        if spec.len() <= 8 {
            let verdict = decide_glp(&spec).map_err(|e| e.to_string())?;
            audit.record(&format!("counterexample k={k}"), &spec, &verdict);
            specs.push((format!("counterexample k={k}"), spec, verdict.is_glp()));
        }
    }
    for name in CATALOG_NAMES {
        let spec = catalog(name).map_err(|e| e.to_string())?;
        let glp = decide_glp(&spec).map_err(|e| e.to_string())?.is_glp();
        specs.push((name.to_string(), spec, glp));
    }
    let negatives = specs.iter().filter(|s| !s.2).count();
    for (context, spec, glp) in &specs {
        ensure(brute_force_glp(spec) == *glp, || format!("{context}: exhaustive search disagrees"))?;
    }
    ensure(specs.len() > 50 && negatives > 0, || format!("{} specs, {negatives} negative", specs.len()))?;
    Ok(format!("{} specs with N <= 8, {negatives} without GLP", specs.len()))
}

fn cyclotomic_suite() -> Outcome {
    for n in 1..=MAX_ORDER {
        let product = (1..=n)
            .filter(|d| n % d == 0)
            .fold(IntPolynomial::one(), |acc, d| acc.mul(&cyclotomic_polynomial(d)));
        ensure(product == IntPolynomial::x_pow_minus_one(n), || format!("n={n}: product"))?;
        let totient = (1..=n).filter(|&i| gcd(i, n) == 1).count();
        ensure(cyclotomic_polynomial(n).degree() == Some(totient) && euler_phi(n) == totient, || {
            format!("n={n}: degree")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut equal, mut unequal) = (0, 0);
    for _ in 0..10_000 {
        let k = rng.gen_range(3..=MAX_ORDER);
        let a: Vec<i64> = (0..k).map(|_| rng.gen_range(-10..=10)).collect();
        let b = if rng.gen_bool(0.5) {
            // shift by a random multiple of the minimal polynomial
            let phi = cyclotomic_polynomial(k);
            let free = k - phi.coeffs().len();
            let multiplier = IntPolynomial::new((0..=free).map(|_| rng.gen_range(-3..=3)).collect());
            let mut shifted = a.clone();
            for (i, c) in phi.mul(&multiplier).coeffs().iter().enumerate() {
                shifted[i] += c;
            }
            shifted
        } else {
            (0..k).map(|_| rng.gen_range(-10..=10)).collect()
        };
        let (x, y) = (CycInt::new(a).map_err(|e| e.to_string())?, CycInt::new(b).map_err(|e| e.to_string())?);
        let (p, q) = (x.to_cartesian(), y.to_cartesian());
        let close = (p.0 - q.0).hypot(p.1 - q.1) < 1e-9;
        ensure(x.equals(&y) == close, || format!("k={k}: {x:?} vs {y:?}"))?;
        if close {
            equal += 1;
        } else {
            unequal += 1;
        }
    }

    let mut sums = 0;
    for k in 2..=MAX_ORDER {
        for r in (2..=k).filter(|r| k % r == 0) {
            let total = (0..r as i64)
                .map(|h| CycInt::root(k, h * (k / r) as i64))
                .try_fold(CycInt::zero(k), |acc, z| acc.try_add(&z))
                .map_err(|e| e.to_string())?;
            ensure(total.is_zero(), || format!("k={k} r={r}: root sum is not zero"))?;
            sums += 1;
        }
    }
    Ok(format!("{equal} equal and {unequal} distinct pairs, {sums} vanishing root sums"))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn labeling_integrity(audit: &Audit) -> Outcome {
    match audit.problems.first() {
        Some(p) => Err(format!("{} problems, first: {p}", audit.problems.len())),
        None if audit.labelings == 0 || audit.witnesses == 0 => Err("nothing was checked".into()),
        None => Ok(format!("{} labelings and {} witnesses verified", audit.labelings, audit.witnesses)),
    }
}

fn main() -> ExitCode {
    let mut audit = Audit::default();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    results.push((1, "catalog verdicts", catalog_verdicts(&mut audit)));

    let start = Instant::now();
    let small = run_sweep(&(3..=12).collect::<Vec<_>>(), &mut audit);
    let elapsed = start.elapsed();
    let sweep = small.and_then(|mut s| {
        s.extend(run_sweep(&[16], &mut audit)?);
        Ok(s)
    });
    match &sweep {
        Ok(sweep) => {
            results.push((2, "decider equivalence", decider_equivalence(sweep, elapsed)));
            results.push((3, "fast-path theorems", fast_paths(sweep)));
        }
        Err(e) => {
            results.push((2, "decider equivalence", Err(e.clone())));
            results.push((3, "fast-path theorems", Err(e.clone())));
        }
    }
    results.push((4, "counterexample generator", counterexamples(&mut audit)));
    results.push((5, "example generator", glp_examples(&mut audit)));
    results.push((6, "slice reduction", slice_reduction(&mut audit)));
    results.push((7, "expansion robustness", expansion(&mut audit)));
    let brute = match &sweep {
        Ok(sweep) => brute_force(sweep, &mut audit),
        Err(e) => Err(e.clone()),
    };
    results.push((8, "brute-force oracle", brute));
    results.push((9, "cyclotomic suite", cyclotomic_suite()));
    results.push((10, "labeling integrity", labeling_integrity(&audit)));

    let mut failed = 0;
    for (n, title, outcome) in &results {
        match outcome {
            Ok(detail) => println!("acceptance criterion {n:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("acceptance criterion {n:>2} FAIL  {title}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
