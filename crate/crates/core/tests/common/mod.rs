//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's own flow or content code.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use frostman::dyadic::{Rat, Word};
use frostman::flows::{CapacityTree, TreeFlow};
use frostman::sets::ClosedSetName;
use num::{BigInt, Integer, One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// A random nonnegative rational with small denominator; zero about one
/// time in six.
pub fn random_rat(rng: &mut StdRng) -> Rat {
    if rng.gen_ratio(1, 6) {
        return Rat::zero();
    }
    let q = rng.gen_range(1..=12);
    Rat::new(rng.gen_range(0..=2 * q), q)
}

pub fn random_caps(rng: &mut StdRng, depth: usize) -> CapacityTree {
    let entries: Vec<(Word, Rat)> = Word::all_up_to_depth(depth).map(|w| (w, random_rat(rng))).collect();
    CapacityTree::new(depth, entries).unwrap()
}

/// A random flow: the root gets a random positive value, every vertex
/// splits by a random fraction in `[0, 1]` (so subtrees are often empty).
pub fn random_flow(rng: &mut StdRng, depth: usize) -> TreeFlow {
    let root = Rat::new(rng.gen_range(1..=20), rng.gen_range(1..=20));
    let mut entries = Vec::new();
    let mut stack = vec![(Word::root(), root)];
    while let Some((v, x)) = stack.pop() {
        if v.depth() < depth && !x.is_zero() {
            let q = rng.gen_range(1..=6);
            let p = if rng.gen_ratio(1, 5) {
                [0, q][rng.gen_range(0..2)]
            } else {
                rng.gen_range(0..=q)
            };
            let left = &x * Rat::new(p, q);
            let right = &x - &left;
            let [l, r] = v.children();
            stack.push((l, left));
            stack.push((r, right));
        }
        entries.push((v, x));
    }
    TreeFlow::new(depth, entries).unwrap()
}

/// Exact Edmonds–Karp on the tree seen as a network: source → ε with
/// capacity cap(ε), v → vi with capacity cap(vi), every leaf → sink
/// unbounded.
pub fn edmonds_karp(cap: &CapacityTree) -> Rat {
    let depth = cap.depth();
    let words: Vec<Word> = Word::all_up_to_depth(depth).collect();
    let index: BTreeMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i + 1)).collect();
    let n = words.len() + 2;
    let (source, sink) = (0, n - 1);
    let unbounded: Rat = cap.entries().values().sum::<Rat>() + Rat::one();
    let mut residual: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); n];
    let add = |residual: &mut Vec<BTreeMap<usize, Rat>>, a: usize, b: usize, c: Rat| {
        *residual[a].entry(b).or_insert_with(Rat::zero) += c;
        residual[b].entry(a).or_insert_with(Rat::zero);
    };
    add(&mut residual, source, index[&Word::root()], cap.get(&Word::root()));
    for w in &words {
        if w.depth() < depth {
            for c in w.children() {
                add(&mut residual, index[w], index[&c], cap.get(&c));
            }
        } else {
            add(&mut residual, index[w], sink, unbounded.clone());
        }
    }
    let mut total = Rat::zero();
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            for (&b, c) in &residual[a] {
                if prev[b] == usize::MAX && c.is_positive() {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return total;
        }
        let mut path = vec![sink];
        while *path.last().unwrap() != source {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        let bottleneck = path
            .windows(2)
            .map(|e| residual[e[0]][&e[1]].clone())
            .reduce(|a, b| a.min(b))
            .unwrap();
        for e in path.windows(2) {
            *residual[e[0]].get_mut(&e[1]).unwrap() -= &bottleneck;
            *residual[e[1]].get_mut(&e[0]).unwrap() += &bottleneck;
        }
        total += bottleneck;
    }
}

/// Every antichain meeting each root-to-leaf path of the depth-`depth`
/// tree, listed explicitly.
pub fn all_cuts(depth: usize) -> Vec<Vec<Word>> {
    fn cuts(v: Word, depth: usize) -> Vec<Vec<Word>> {
        let mut out = vec![vec![v.clone()]];
        if v.depth() < depth {
            let [l, r] = v.children();
            let right = cuts(r, depth);
            for a in cuts(l, depth) {
                for b in &right {
                    out.push(a.iter().chain(b).cloned().collect());
                }
            }
        }
        out
    }
    cuts(Word::root(), depth)
}

/// Least total weight of a cut, by exhaustive enumeration.
pub fn min_cut_exhaustive(depth: usize, weight: impl Fn(&Word) -> Rat) -> Rat {
    all_cuts(depth)
        .into_iter()
        .map(|c| c.iter().map(&weight).sum::<Rat>())
        .reduce(|a, b| a.min(b))
        .unwrap()
}

/// `⌈p·n/q⌉` for `s = p/q`, in integers.
pub fn ceil_times(s: &Rat, n: usize) -> u64 {
    let num: BigInt = s.numer() * BigInt::from(n);
    let (q, r) = num.div_rem(s.denom());
    let q = if r.is_zero() { q } else { q + BigInt::one() };
    u64::try_from(q).unwrap()
}

/// The capacity of `w` for the content of a named set, computed directly.
pub fn content_weight(set: &dyn ClosedSetName, s: &Rat, stage: usize, w: &Word) -> Rat {
    if set.excludes(w, stage) {
        Rat::zero()
    } else {
        Rat::dyadic(ceil_times(s, w.depth()))
    }
}

/// Dyadic content by exhaustive enumeration of cuts.
pub fn content_exhaustive(set: &dyn ClosedSetName, s: &Rat, depth: usize, stage: usize) -> Rat {
    min_cut_exhaustive(depth, |w| content_weight(set, s, stage, w))
}

pub fn is_flow(f: &TreeFlow) -> bool {
    TreeFlow::new(f.depth(), f.entries().clone()).is_ok()
}
