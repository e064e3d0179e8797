//! One PASS/FAIL line per acceptance criterion. Tolerances and time limits
//! are fixed below; the process exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use frostman::dimension::{cantor_dim_partial, dim_interval, dyadic_content, local_dimension, shmerkin_measure};
use frostman::dyadic::{Rat, Word};
use frostman::flows::{bottleneck, concentrate_flow, max_flow_iterate, truncated_max_flow, CapacityTree, Labelling};
use frostman::frostman::{frost, strict_frost, FrostVerdict, FrostmanTask};
use frostman::measures::{
    concentrate, concentrated_support, frostman_check, measure_from_overt, support_overt, DyadicMeasure,
};
use frostman::sets::{
    closed_name, overt_name, perfect_core, CantorScheme, ClosedOvertName, ClosedSetName, Decision, EverythingCertified,
    ExplicitClosed, ExplicitOvert, Lagged, NothingCertified, NothingExcluded, OvertSetName,
};
use rand::Rng;

const DUALITY_LIMIT: Duration = Duration::from_secs(60);
const FROST_LIMIT: Duration = Duration::from_secs(10);
const LN_RATIO_TOL: f64 = 1e-9;
const LOCAL_DIM_TOL: f64 = 0.05;

type Verdict = Result<String, String>;

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn quarters() -> CantorScheme {
    CantorScheme::constant(Rat::integer(4)).unwrap()
}

fn thirds() -> CantorScheme {
    CantorScheme::constant(Rat::integer(3)).unwrap()
}

fn get(l: &Labelling, w: &Word) -> Rat {
    l.get(w).cloned().unwrap_or_else(Rat::zero)
}

/// Minimum cut below `v`, by the textbook recursion.
fn min_cut_dp(cap: &CapacityTree, v: &Word) -> Rat {
    let here = cap.get(v);
    if v.depth() == cap.depth() {
        return here;
    }
    let [l, r] = v.children();
    here.min(min_cut_dp(cap, &l) + min_cut_dp(cap, &r))
}

fn duality() -> Verdict {
    let start = Instant::now();
    let mut r = rng(1);
    for i in 0..200 {
        let depth = r.gen_range(0..=8);
        let cap = random_caps(&mut r, depth);
        let (value, witness) = truncated_max_flow(&cap);
        if witness.value() != value || witness.exceeds(&cap).is_some() || !is_flow(&witness) {
            return Err(format!("tree {i}: witness is not a feasible flow of value {value}"));
        }
        let dp = min_cut_dp(&cap, &Word::root());
        let ek = edmonds_karp(&cap);
        if value != dp || value != ek {
            return Err(format!(
                "tree {i} depth {depth}: flow {value}, min-cut dp {dp}, augmenting paths {ek}"
            ));
        }
        if depth <= 4 {
            let ex = min_cut_exhaustive(depth, |w| cap.get(w));
            if value != ex {
                return Err(format!("tree {i} depth {depth}: flow {value}, exhaustive {ex}"));
            }
        }
    }
    let t = start.elapsed();
    check(
        t < DUALITY_LIMIT,
        format!("200 trees agree with all oracles in {t:.1?} (limit {DUALITY_LIMIT:?})"),
    )
}

fn content_closed_forms() -> Verdict {
    let set = closed_name(&quarters());
    for depth in (0..=24).step_by(2) {
        let c = dyadic_content(&set, &Rat::new(1, 2), depth, depth).unwrap();
        if c != Rat::one() {
            return Err(format!("s = 1/2, depth {depth}: content {c}, expected 1"));
        }
    }
    for m in 1..=12u64 {
        let depth = 2 * m as usize;
        let c = dyadic_content(&set, &Rat::one(), depth, depth).unwrap();
        if c != Rat::dyadic(m) {
            return Err(format!(
                "s = 1, depth {depth}: content {c}, expected {}",
                Rat::dyadic(m)
            ));
        }
    }
    Ok("1 at s = 1/2 for even depths up to 24; 2^-m at s = 1, depth 2m, m up to 12".into())
}

fn frostman_soundness() -> Verdict {
    let start = Instant::now();
    let set = closed_name(&quarters());
    let s = Rat::new(1, 2);
    let task = FrostmanTask {
        s: s.clone(),
        depth: 16,
        stage: 16,
        k: 1,
    };
    let mu = match frost(&set, &task).unwrap() {
        FrostVerdict::Found(mu) => mu,
        FrostVerdict::Refuted(b) => return Err(format!("refuted with bound {b}")),
    };
    let t = start.elapsed();
    let violations = frostman_check(&mu, &s, 16).unwrap();
    let stray: Vec<&Word> = mu.entries().keys().filter(|w| set.excludes(w, 16)).collect();
    check(
        mu.total() == Rat::new(1, 2) && violations.is_empty() && stray.is_empty() && t < FROST_LIMIT,
        format!(
            "total {}, {} violations, {} words of mass excluded, {t:.1?} (limit {FROST_LIMIT:?})",
            mu.total(),
            violations.len(),
            stray.len()
        ),
    )
}

/// Words of length `2m` made of the blocks `00` and `11`.
fn quarter_survivors(m: usize) -> Vec<Word> {
    (0..1u64 << m)
        .map(|bits| {
            let s: String = (0..m)
                .map(|j| if bits >> (m - 1 - j) & 1 == 1 { "11" } else { "00" })
                .collect();
            w(&s)
        })
        .collect()
}

fn strict_support() -> Verdict {
    let scheme = quarters();
    for m in 1..=10usize {
        let mu = strict_frost(&scheme, &Rat::new(1, 2), 2 * m).unwrap();
        let survivors = quarter_survivors(m);
        for c in &survivors {
            if mu.mass(c) != Rat::dyadic(m as u64) {
                return Err(format!("depth {}: cell {c:?} has mass {}", 2 * m, mu.mass(c)));
            }
        }
        let at_level = mu.entries().keys().filter(|v| v.depth() == 2 * m).count();
        if at_level != survivors.len() {
            return Err(format!(
                "depth {}: {at_level} cells carry mass, expected {}",
                2 * m,
                survivors.len()
            ));
        }
    }
    Ok("mass 2^-m on each of the 2^m cells at depth 2m, m up to 10, and nowhere else".into())
}

fn overt_totals() -> Verdict {
    let names: Vec<(&str, Box<dyn OvertSetName>)> = vec![
        ("[0,1]", Box::new(EverythingCertified)),
        ("{0}", Box::new(ExplicitOvert::chain(false, 16))),
        ("middle thirds", Box::new(overt_name(&thirds()))),
    ];
    for (label, name) in &names {
        for k in 1..=12usize {
            let mu = measure_from_overt(name.as_ref(), k).unwrap();
            let partial: Rat = (1..=k as u64).map(Rat::dyadic).sum();
            if mu.total() != partial {
                return Err(format!("{label}, k = {k}: total {}, expected {partial}", mu.total()));
            }
            let sup = support_overt(mu);
            if let Some(v) = Word::all_up_to_depth(k).find(|v| sup.certifies(v, k) != name.certifies(v, k)) {
                return Err(format!("{label}, k = {k}: support and input disagree on {v:?}"));
            }
        }
    }
    Ok("totals 1/2 + ... + 2^-k and re-certification for k up to 12 on three names".into())
}

fn concentration() -> Verdict {
    let mut r = rng(6);
    for i in 0..100 {
        let f = random_flow(&mut r, 8);
        let g = concentrate_flow(&f).unwrap();
        if !is_flow(&g) {
            return Err(format!("flow {i}: output breaks conservation"));
        }
        if let Some(v) = g.scaled_exceeds(&f.value(), &f) {
            return Err(format!("flow {i}: f(root) g > f at {v:?}"));
        }
        if let Some((v, x)) = g
            .entries()
            .iter()
            .find(|(v, x)| **x < Rat::dyadic(2 * v.depth() as u64 + 1))
        {
            return Err(format!("flow {i}: g({v:?}) = {x} is positive but below the floor"));
        }
    }
    let (nu, k) = concentrate(&DyadicMeasure::lebesgue(8)).unwrap();
    let name = concentrated_support(&nu, &Rat::dyadic(k)).unwrap().into_name();
    if let Some((v, t)) = (0..=8).find_map(|t| name.find_inconsistency(9, t).map(|v| (v, t))) {
        return Err(format!(
            "support of concentrated Lebesgue: {v:?} certified and excluded at stage {t}"
        ));
    }
    Ok("100 random depth-8 flows concentrated; Lebesgue support name consistent".into())
}

fn iteration() -> Verdict {
    let mut r = rng(7);
    for i in 0..100 {
        let depth = r.gen_range(0..=8);
        let cap = random_caps(&mut r, depth);
        let words: Vec<Word> = Word::all_up_to_depth(depth).collect();
        let mut prev = max_flow_iterate(&cap, 0);
        for n in 1..=depth + 1 {
            let next = max_flow_iterate(&cap, n);
            if let Some(v) = words.iter().find(|v| get(&next, v) > get(&prev, v)) {
                return Err(format!("tree {i}: a_{n}({v:?}) increased"));
            }
            prev = next;
        }
        if let Some(v) = words.iter().find(|v| get(&prev, v) != min_cut_dp(&cap, v)) {
            return Err(format!("tree {i}: a_{}({v:?}) is not the fixpoint", depth + 1));
        }
        if prev != bottleneck(&cap) {
            return Err(format!("tree {i}: iteration and bottleneck differ"));
        }
    }
    let q = |n: usize| Rat::one() + Rat::dyadic(n as u64);
    for d in 1..=20 {
        let cap = CapacityTree::new(d, (0..=d).map(|n| (Word::repeat(true, n), q(n)))).unwrap();
        let root = get(&max_flow_iterate(&cap, d + 1), &Word::root());
        if root != q(d) {
            return Err(format!("path of depth {d}: root {root}, expected {}", q(d)));
        }
    }
    Ok("100 trees monotone to the fixpoint; path roots 1 + 2^-d for d up to 20, decreasing to 1".into())
}

fn brackets() -> Verdict {
    let unit = dim_interval(&NothingExcluded, 12, 12, 8).unwrap();
    let quarter = dim_interval(&closed_name(&quarters()), 20, 20, 8).unwrap();
    let point = dim_interval(&ExplicitClosed::chain(false, 16), 16, 16, 8).unwrap();
    let detail = format!(
        "[0,1] [{}, {}]; quarters [{}, {}]; {{0}} [{}, {}] (hi must be at most 1/8)",
        unit.lo, unit.hi, quarter.lo, quarter.hi, point.lo, point.hi
    );
    check(
        unit.contains(&Rat::one()) && quarter.contains(&Rat::new(1, 2)) && point.hi <= Rat::new(1, 8),
        detail,
    )
}

fn cantor_formula() -> Verdict {
    let three = cantor_dim_partial(&thirds(), 16).unwrap();
    let ln_ratio = std::f64::consts::LN_2 / 3f64.ln();
    let worst = three.terms.iter().map(|t| (t - ln_ratio).abs()).fold(0.0, f64::max);
    if worst > LN_RATIO_TOL {
        return Err(format!("middle thirds off by {worst:e}"));
    }
    let two = cantor_dim_partial(&CantorScheme::constant(Rat::integer(2)).unwrap(), 16).unwrap();
    if two.terms.iter().any(|&t| t != 1.0) {
        return Err("halving scheme is not exactly 1".into());
    }
    let n = 14;
    let fast = CantorScheme::from_sequence((0..n).map(|i| Rat::one() / Rat::dyadic(1 << i)).collect()).unwrap();
    let fast = cantor_dim_partial(&fast, n).unwrap();
    let halving = fast.terms.windows(2).all(|p| (p[1] - p[0] / 2.0).abs() < 1e-12);
    let last = *fast.tail_min.last().unwrap();
    check(
        halving && last < 1e-3,
        format!("thirds within {worst:.1e}; halving exactly 1; 2^(2^i) terms halve down to {last:.2e}"),
    )
}

fn shmerkin() -> Verdict {
    let slow = CantorScheme::from_fn(|i| Rat::integer(2) + Rat::new(1, i as i64 + 1)).unwrap();
    let mut r = rng(10);
    let bits: Vec<bool> = (0..120).map(|_| r.gen()).collect();
    let mu = shmerkin_measure(bits, slow.clone());
    let cells = mu.materialize(20).unwrap();
    if let Some(m) = (0..=20).find(|&m| cells.level_total(m) != Rat::one()) {
        return Err(format!("level {m} has total {}", cells.level_total(m)));
    }
    let m = 10_000;
    let chain = mu.chain(m, |_| false).unwrap();
    let got = local_dimension(&mu, &chain, &[m]).unwrap()[0].1;
    let sum_ln: f64 = (0..m).map(|i| (2.0 + 1.0 / (i as f64 + 1.0)).ln()).sum();
    let derived = (m - (m as f64).sqrt().floor() as usize) as f64 * std::f64::consts::LN_2 / sum_ln;
    check(
        (got - 1.0).abs() < LOCAL_DIM_TOL && (got - derived).abs() < 1e-9,
        format!("totals 1 up to level 20; local dimension {got:.6} at level {m} (derived {derived:.6})"),
    )
}

fn perfect_cores() -> Verdict {
    let s = thirds();
    let cases: Vec<(&str, ClosedOvertName)> = vec![
        ("[0,1]", ClosedOvertName::unit_interval()),
        (
            "empty",
            ClosedOvertName::new(ExplicitClosed::empty_from(4), NothingCertified),
        ),
        (
            "middle thirds",
            ClosedOvertName::new(
                Lagged {
                    inner: closed_name(&s),
                    lag: 25,
                },
                overt_name(&s),
            ),
        ),
    ];
    let mut added = 0;
    for (label, a) in cases {
        let core = perfect_core(&a.closed, 100).unwrap();
        let b = core.name();
        if let Some(v) = Word::all_up_to_depth(8).find(|v| a.certifies(v, 100) && b.excludes(v, 100)) {
            return Err(format!("{label}: input certifies {v:?} but the core excludes it"));
        }
        for p in core.points() {
            let recorded = p.flanks.iter().all(|f| {
                matches!(core.decision(f), Some((Decision::Flank | Decision::Excluded, _))) && b.excludes(f, 100)
            });
            if !recorded {
                return Err(format!("{label}: point {} lacks its flanking exclusions", p.x));
            }
        }
        if let Some(t) = (0..=100).find(|&t| b.find_inconsistency(8, t).is_some()) {
            return Err(format!("{label}: inconsistent at stage {t}"));
        }
        core.verify().map_err(|e| format!("{label}: {e}"))?;
        added += core.points().len();
    }
    Ok(format!(
        "three inputs at budget 100, {added} isolated points added, all flanked"
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Verdict); 11] = [
        (1, duality),
        (2, content_closed_forms),
        (3, frostman_soundness),
        (4, strict_support),
        (5, overt_totals),
        (6, concentration),
        (7, iteration),
        (8, brackets),
        (9, cantor_formula),
        (10, shmerkin),
        (11, perfect_cores),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n} PASS {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL {detail}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
