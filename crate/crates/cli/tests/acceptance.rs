//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use eucseq::esa::decimal_digits;
use eucseq::exact::DEFAULT_CAP;
use eucseq::optimality::Prescription;
use eucseq::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn naive_distances(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    (0..n).map(|j| (1..=n).find(|&s| seq[(j + s) % n] == seq[j]).unwrap()).collect()
}

fn naive_sum_sq(seq: &[usize]) -> u64 {
    naive_distances(seq).iter().map(|&d| (d * d) as u64).sum()
}

fn is_rotation(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| a.iter().cycle().skip(r).take(a.len()).eq(b.iter()))
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d).unwrap()
}

fn binary(m1: usize, m2: usize) -> Arc<SequencingProblem> {
    Arc::new(SequencingProblem::binary("a", "b", m1, m2).unwrap())
}

fn from_str(p: &Arc<SequencingProblem>, s: &str) -> Cycle {
    Cycle::from_labels(p.clone(), &s.chars().map(String::from).collect::<Vec<_>>()).unwrap()
}

fn criterion_1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_eucseq"))
        .args(["esa", "--m1", "18", "--m2", "14", "--trace"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "exit status {}", out.status);
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<usize>> = text
        .lines()
        .filter_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() >= 7 && f[1].starts_with('[') {
                let nums: Option<Vec<usize>> = std::iter::once(f[0]).chain(f[2..7].iter().copied()).map(|x| x.parse().ok()).collect();
                nums
            } else {
                None
            }
        })
        .collect();
    let expected = vec![vec![1, 32, 18, 14, 1, 4], vec![2, 18, 14, 4, 3, 2], vec![3, 6, 4, 2, 2, 0]];
    ensure!(rows == expected, "rows {rows:?}");
    ensure!(text.lines().any(|l| l.trim() == "C = A3^2"), "closing line missing");

    let a = "ab".repeat(3) + "a";
    let x = a.repeat(2) + "ab";
    let explicit = x.repeat(2);
    let printed = text.lines().last().unwrap_or("").trim();
    let to_idx = |s: &str| s.chars().map(|c| (c == 'b') as usize).collect::<Vec<_>>();
    ensure!(printed.len() == 32, "expansion length {}", printed.len());
    ensure!(is_rotation(&to_idx(printed), &to_idx(&explicit)), "expansion {printed} is not a rotation of {explicit}");

    let problem = Arc::new(SequencingProblem::binary("a1", "a2", 18, 14).unwrap());
    let mut times: Vec<Duration> = (0..201)
        .map(|_| {
            let start = Instant::now();
            let trace = esa_solve(problem.clone()).unwrap();
            std::hint::black_box(trace.render_table());
            start.elapsed()
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure!(median < Duration::from_millis(1), "median runtime {median:?}");
    Ok(format!("3 rows, C = A3^2, expansion matches, median {median:?}"))
}

fn criterion_2() -> Outcome {
    let p = Arc::new(SequencingProblem::binary("0", "1", 3, 5).unwrap());
    let c1 = from_str(&p, "01101101");
    let c2 = from_str(&p, "01110101");
    ensure!(variance(&c1) == rat(1, 2), "variance(C1) = {}", variance(&c1));
    ensure!(variance(&c2) == rat(3, 4), "variance(C2) = {}", variance(&c2));
    for c in [&c1, &c2] {
        let pv = pulse_variance(c, 1).map_err(|e| e.to_string())?;
        ensure!(pv == rat(6, 25), "pulse variance of {} = {pv}", c.display_string());
        ensure!(pv.to_f64() == 0.24, "decimal pulse variance {}", pv.to_f64());
    }
    Ok("1/2, 3/4, 6/25 twice".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut problems = 0;
    let mut cycles = 0u64;
    for total in 2..=14usize {
        for m2 in 1..=total / 2 {
            let m1 = total - m2;
            let problem = binary(m1, m2);
            let exact = exact_min(problem.clone(), DEFAULT_CAP).map_err(|e| e.to_string())?;
            let esa = esa_solve(problem.clone()).map_err(|e| e.to_string())?.result;
            ensure!(exact.min_variance == variance(&esa), "({m1},{m2}): exact {} vs esa {}", exact.min_variance, variance(&esa));

            let mut oracle_min = u64::MAX;
            let mut scored = Vec::new();
            for mask in 0u32..(1 << total) {
                if mask.count_ones() as usize != m2 {
                    continue;
                }
                let seq: Vec<usize> = (0..total).map(|j| ((mask >> j) & 1) as usize).collect();
                let s = naive_sum_sq(&seq);
                oracle_min = oracle_min.min(s);
                scored.push((seq, s));
            }
            ensure!(oracle_min == exact.min_objective, "({m1},{m2}): oracle {oracle_min} vs exact {}", exact.min_objective);
            for (seq, s) in scored {
                let c = Cycle::new(problem.clone(), seq).map_err(|e| e.to_string())?;
                let accepted = verify_optimal(&c).map_err(|e| e.to_string())?.optimal;
                ensure!(accepted == (s == oracle_min), "({m1},{m2}): verdict {accepted} for {}", c.display_string());
                cycles += 1;
            }
            problems += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{problems} problems, {cycles} cycles classified, {elapsed:?}"))
}

fn random_cycle(rng: &mut StdRng) -> Cycle {
    let n = rng.random_range(1..=5usize);
    let total = rng.random_range(n..=30usize);
    let mut mult = vec![1usize; n];
    for _ in n..total {
        mult[rng.random_range(0..n)] += 1;
    }
    let problem = Arc::new(SequencingProblem::new((0..n).map(|k| format!("s{k}")), mult.clone()).unwrap());
    let mut seq: Vec<usize> = mult.iter().enumerate().flat_map(|(k, &m)| std::iter::repeat_n(k, m)).collect();
    seq.shuffle(rng);
    Cycle::new(problem, seq).unwrap()
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let samples = 1000;
    for i in 0..samples {
        let c = random_cycle(&mut rng);
        let p = c.problem();
        let (n, total) = (p.alphabet_size(), p.total());
        let naive = naive_distances(c.positions());
        ensure!(c.distances().deltas == naive, "sample {i}: distances differ");
        for k in 0..n {
            let sum: usize = (0..total).filter(|&j| c.positions()[j] == k).map(|j| naive[j]).sum();
            ensure!(sum == total, "sample {i}: round trip for symbol {k} gives {sum}");
        }
        let n_rat = ExactRational::from_integer(n as i64);
        ensure!(mean(&c) == n_rat, "sample {i}: mean {}", mean(&c));
        let m2 = raw_moment(&c, 2).map_err(|e| e.to_string())?;
        ensure!(variance(&c) == &m2 - &(&n_rat * &n_rat), "sample {i}: variance identity");
        ensure!(central_moment(&c, 1).map_err(|e| e.to_string())?.is_zero(), "sample {i}: first central moment");
        let r = rng.random_range(0..total);
        ensure!(variance(&c.rotate(r)) == variance(&c), "sample {i}: rotation by {r}");
        let sum_sq = ExactRational::from_integer(naive_sum_sq(c.positions()) as i64);
        ensure!(lower_bound(p) <= sum_sq, "sample {i}: bound {} above {}", lower_bound(p), sum_sq);
    }
    Ok(format!("{samples} random cycles, zero failures"))
}

fn counts(values: &[usize]) -> std::collections::BTreeMap<usize, usize> {
    let mut map = std::collections::BTreeMap::new();
    for &v in values {
        *map.entry(v).or_insert(0) += 1;
    }
    map
}

fn esa_structure(m1: usize, m2: usize) -> std::result::Result<(), String> {
    let trace = esa_solve(binary(m1, m2)).map_err(|e| e.to_string())?;
    let c = &trace.result;
    let (major, minor) = if m1 >= m2 { (0, 1) } else { (1, 0) };
    let (hi, lo) = (m1.max(m2), m1.min(m2));
    let total = m1 + m2;
    let by = &c.distances().by_symbol;
    if m1 != m2 {
        ensure!(is_unclustered(c, minor).map_err(|e| e.to_string())?, "({m1},{m2}): less abundant clustered");
        let seq = c.positions();
        ensure!((0..total).all(|j| seq[j] != minor || seq[(j + 1) % total] != minor), "({m1},{m2}): adjacent minor pair");
        let mut want = std::collections::BTreeMap::new();
        if hi > lo {
            want.insert(1, hi - lo);
        }
        want.insert(2, lo);
        ensure!(counts(&by[major]) == want, "({m1},{m2}): more-abundant distances {:?}", counts(&by[major]));
    }
    let lower = total / lo;
    let mut want = std::collections::BTreeMap::new();
    if total.is_multiple_of(lo) {
        want.insert(lower, lo);
    } else {
        want.insert(lower, lo * (lower + 1) - total);
        want.insert(lower + 1, total - lo * lower);
    }
    ensure!(counts(&by[minor]) == want, "({m1},{m2}): less-abundant distances {:?}", counts(&by[minor]));
    let spec = distance_spec(c.problem(), minor).map_err(|e| e.to_string())?;
    ensure!(spec.matches(&by[minor]), "({m1},{m2}): spec mismatch");
    if !total.is_multiple_of(lo) {
        ensure!(matches!(spec.prescription, Prescription::TwoValued { .. }), "({m1},{m2}): expected two values");
    }
    let bound = 5 * decimal_digits(lo as u64) as usize;
    ensure!(trace.iterations() <= bound, "({m1},{m2}): {} iterations > {bound}", trace.iterations());
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut pairs: Vec<(usize, usize)> = (0..200).map(|_| (rng.random_range(1..=10_000), rng.random_range(1..=10_000))).collect();
    pairs.extend([(89, 55), (55, 89), (233, 144), (144, 233)]);
    let mut max_iter = 0;
    for &(m1, m2) in &pairs {
        esa_structure(m1, m2)?;
        max_iter = max_iter.max(esa_solve(binary(m1, m2)).unwrap().iterations());
    }
    let fib = esa_solve(binary(233, 144)).unwrap().iterations();
    Ok(format!("{} problems, Fibonacci (233,144) in {fib} iterations, max {max_iter}", pairs.len()))
}

fn lp_tally(lp: &str) -> (usize, usize, usize, [usize; 6]) {
    let section = |name: &str| -> Vec<&str> {
        lp.lines()
            .skip_while(|l| l.trim() != name)
            .skip(1)
            .take_while(|l| l.starts_with(' '))
            .collect()
    };
    let binaries = section("Binaries").iter().flat_map(|l| l.split_whitespace()).count();
    let bounds = section("Bounds");
    let thetas = bounds.iter().filter(|l| l.trim_start().starts_with("t_")).count();
    let deltas = bounds.iter().filter(|l| l.trim_start().starts_with("d_")).count();
    let rows = section("Subject To");
    let count = |prefix: &str| rows.iter().filter(|l| l.trim_start().starts_with(prefix)).count();
    (binaries, thetas, deltas, [count("out_"), count("in_"), count("mtz_"), count("ord_"), count("dist_"), count("wrap_")])
}

fn criterion_6() -> Outcome {
    let mut evaluated = 0;
    for total in 2..=5usize {
        for m1 in 1..total {
            let problem = binary(m1, total - m1);
            let model = build_model(&problem).map_err(|e| e.to_string())?;
            let mut best = i64::MAX;
            for c in enumerate_admissible(problem.clone(), DEFAULT_CAP).map_err(|e| e.to_string())? {
                let eval = evaluate_assignment(&model, &c).map_err(|e| e.to_string())?;
                ensure!(eval.feasible, "{}: infeasible, violated {:?}", c.display_string(), eval.violated);
                let sq = naive_sum_sq(c.positions()) as i64;
                ensure!(eval.objective == sq, "{}: objective {} vs {sq}", c.display_string(), eval.objective);
                best = best.min(eval.objective);
                evaluated += 1;
            }
            let exact = exact_min(problem, DEFAULT_CAP).map_err(|e| e.to_string())?;
            ensure!(best as u64 == exact.min_objective, "({m1},{}): model min {best} vs exact {}", total - m1, exact.min_objective);
        }
    }
    let cases: [(&str, &str, usize, usize); 3] = [("a", "b", 1, 1), ("a", "b", 2, 1), ("a1", "a2", 8, 4)];
    for (x, y, m1, m2) in cases {
        let problem = SequencingProblem::binary(x, y, m1, m2).unwrap();
        let model = build_model(&problem).map_err(|e| e.to_string())?;
        let n = m1 + m2;
        let blocks = (m1 - 1) + (m2 - 1);
        let c = model.counts();
        let got = [c.binaries, c.angles, c.distances, c.assign_out_rows, c.assign_in_rows, c.subtour_rows, c.order_rows, c.distance_rows, c.wrap_rows];
        let want = [n * (n - 1), n, n, n, n, (n - 1) * (n - 2), blocks, blocks, 2];
        ensure!(got == want, "({m1},{m2}): counts {got:?} vs {want:?}");
        let (b, t, d, rows) = lp_tally(&model.to_lp());
        ensure!((b, t, d) == (want[0], want[1], want[2]), "({m1},{m2}): LP variables {b},{t},{d}");
        ensure!(rows.to_vec() == want[3..].to_vec(), "({m1},{m2}): LP rows {rows:?}");
    }
    let big = build_model(&SequencingProblem::binary("a1", "a2", 8, 4).unwrap()).unwrap().counts();
    ensure!(big.binaries == 132 && big.subtour_rows == 110, "(8,4): {} binaries, {} MTZ rows", big.binaries, big.subtour_rows);
    Ok(format!("{evaluated} cycles feasible with matching objective, closed-form tallies match"))
}

fn criterion_7() -> Outcome {
    for n in [2usize, 3, 4] {
        for m in [1usize, 2, 5] {
            let problem = Arc::new(SequencingProblem::new((0..n).map(|k| format!("s{k}")), vec![m; n]).unwrap());
            let c = uniform_cycle(problem.clone()).map_err(|e| e.to_string())?;
            ensure!(variance(&c).is_zero(), "n={n}, m={m}: variance {}", variance(&c));
            let sq = ExactRational::from_integer(naive_sum_sq(c.positions()) as i64);
            ensure!(sq == lower_bound(&problem), "n={n}, m={m}: {sq} vs bound {}", lower_bound(&problem));
            if n == 2 {
                let esa = esa_solve(problem.clone()).map_err(|e| e.to_string())?.result;
                ensure!(is_rotation(esa.positions(), c.positions()), "n=2, m={m}: differs from ESA");
            }
        }
    }
    Ok("9 problems at zero variance on the bound".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("1 iteration table for (18,14)", criterion_1),
        ("2 variance and pulse variance values", criterion_2),
        ("3 exhaustive oracle equivalence, N <= 14", criterion_3),
        ("4 randomized moment properties", criterion_4),
        ("5 construction structure, 200 random problems", criterion_5),
        ("6 integer program soundness and tallies", criterion_6),
        ("7 equal multiplicities", criterion_7),
    ];
    let mut failures = 0;
    let mut report = std::io::stderr();
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => writeln!(report, "PASS criterion {name}: {detail}").unwrap(),
            Err(detail) => {
                failures += 1;
                writeln!(report, "FAIL criterion {name}: {detail}").unwrap();
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
