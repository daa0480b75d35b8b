//! Brute-force oracles. They read only the order relation of a frame and
//! recompute everything else by search.
#![allow(dead_code)]

use locale_lab::omega::{ChainSublocale, LevelSet};
use locale_lab::{ElementSet, FiniteFrame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn glb(f: &FiniteFrame, items: &[usize]) -> usize {
    let lower: Vec<usize> = f.elements().filter(|&x| items.iter().all(|&i| f.leq(x, i))).collect();
    *lower.iter().find(|&&x| lower.iter().all(|&y| f.leq(y, x))).expect("lattice")
}

/// `max{c | a ∧ c ≤ b}` by scan.
pub fn heyting(f: &FiniteFrame, a: usize, b: usize) -> usize {
    let ok: Vec<usize> = f.elements().filter(|&c| f.leq(glb(f, &[a, c]), b)).collect();
    *ok.iter().find(|&&x| ok.iter().all(|&y| f.leq(y, x))).expect("frame")
}

/// Meet and implication tables recomputed from the order.
pub struct Tables {
    pub n: usize,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
}

impl Tables {
    pub fn new(f: &FiniteFrame) -> Self {
        let n = f.size();
        let meet: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| glb(f, &[a, b])).collect()).collect();
        let imp = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let ok: Vec<usize> = (0..n).filter(|&c| f.leq(meet[a][c], b)).collect();
                        *ok.iter().find(|&&x| ok.iter().all(|&y| f.leq(y, x))).expect("frame")
                    })
                    .collect()
            })
            .collect();
        Self { n, top: glb(f, &[]), meet, imp }
    }
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n <= 24);
    (0u32..(1 << n)).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// Sublocales as the subsets closed under all meets and under `a → s`.
pub fn sublocales_by_filter(f: &FiniteFrame) -> Vec<ElementSet> {
    let t = Tables::new(f);
    let n = t.n;
    assert!(n <= 24);
    let ins = |m: u32, x: usize| m >> x & 1 == 1;
    let mut out: Vec<ElementSet> = (0u32..(1 << n))
        .filter(|&m| {
            ins(m, t.top)
                && (0..n).filter(|&x| ins(m, x)).all(|x| {
                    (0..n).all(|y| !ins(m, y) || ins(m, t.meet[x][y])) && (0..n).all(|a| ins(m, t.imp[a][x]))
                })
        })
        .map(|m| ElementSet::from_ids(n, (0..n).filter(|&i| ins(m, i))))
        .collect();
    out.sort();
    out
}

/// `p ≠ 1` with `p = a ∧ b ⇒ p ∈ {a, b}`.
pub fn primes(f: &FiniteFrame) -> Vec<usize> {
    let t = Tables::new(f);
    (0..t.n)
        .filter(|&p| p != t.top)
        .filter(|&p| (0..t.n).all(|a| (0..t.n).all(|b| t.meet[a][b] != p || a == p || b == p)))
        .collect()
}

/// Primes lying in every subset whose meet is them.
pub fn covered_primes(f: &FiniteFrame) -> Vec<usize> {
    let t = Tables::new(f);
    primes(f)
        .into_iter()
        .filter(|&p| {
            (0u32..(1 << t.n)).all(|m| {
                let meet = (0..t.n).filter(|&i| m >> i & 1 == 1).fold(t.top, |acc, i| t.meet[acc][i]);
                meet != p || m >> p & 1 == 1
            })
        })
        .collect()
}

/// A seeded corpus of chain descriptions: offsets up to 6, patterns up to
/// length 4, small finite parts, both choices of `⊥` where allowed.
pub fn chain_corpus(seed: u64, count: usize) -> Vec<ChainSublocale> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![ChainSublocale::whole(), ChainSublocale::top_only(), "bottom: yes".parse().unwrap()];
    while out.len() < count {
        let offset = rng.random_range(1..=6u64);
        let len = rng.random_range(1..=4usize);
        let pattern: Vec<bool> = (0..len).map(|_| rng.random_bool(0.5)).collect();
        let tail = if rng.random_bool(0.8) {
            LevelSet::tail(offset, pattern).unwrap()
        } else {
            LevelSet::empty()
        };
        let finite = LevelSet::from_finite((1..=6u64).filter(|_| rng.random_bool(0.3)));
        let levels = tail.union(&finite);
        let bottom = !levels.is_finite() || rng.random_bool(0.5);
        out.push(ChainSublocale::new(levels, bottom).unwrap());
    }
    out
}

/// Pointwise bits of a level set on positions `0..len` (level `i + 1`).
fn bits(l: &LevelSet, len: usize) -> Vec<bool> {
    (0..len).map(|i| l.contains(i as u64 + 1)).collect()
}

fn horizon(items: &[&LevelSet]) -> (usize, usize) {
    let p = items.iter().map(|l| l.offset() as usize - 1).max().unwrap_or(0);
    let q = items.iter().fold(1usize, |acc, l| {
        let k = l.pattern().len();
        acc / gcd(acc, k) * k
    });
    (p, q)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Outcome of the bounded search for `S ∖ T`.
pub enum Search {
    Found(ChainSublocale),
    BoundExceeded,
}

/// `S ∖ T` as the least described `R ⊆ S` with `S ⊆ T ∨ R`, searched among
/// descriptions sharing the operands' prefix length and period. Gives up
/// when more than `max_free` bits are free.
pub fn chain_difference_by_search(s: &ChainSublocale, t: &ChainSublocale, max_free: usize) -> Search {
    let (p, q) = horizon(&[s.levels(), t.levels()]);
    let len = p + q;
    let sb = bits(s.levels(), len);
    let tb = bits(t.levels(), len);
    let free: Vec<usize> = (0..len).filter(|&i| sb[i]).collect();
    if free.len() > max_free {
        return Search::BoundExceeded;
    }
    let mut best: Option<(Vec<bool>, bool)> = None;
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut r = vec![false; len];
        for (k, &i) in free.iter().enumerate() {
            r[i] = mask >> k & 1 == 1;
        }
        let infinite = r[p..].iter().any(|&b| b);
        for bottom in [false, true] {
            if infinite && !bottom {
                continue;
            }
            if bottom && !s.has_bottom() {
                continue;
            }
            let covers = (0..len).all(|i| !sb[i] || tb[i] || r[i])
                && (!s.has_bottom() || t.has_bottom() || bottom);
            if covers {
                candidates.push((r.clone(), bottom));
            }
        }
    }
    for c in &candidates {
        let below_all = candidates
            .iter()
            .all(|d| (0..len).all(|i| !c.0[i] || d.0[i]) && (!c.1 || d.1));
        if below_all {
            best = Some(c.clone());
        }
    }
    let (r, bottom) = best.expect("S itself is a candidate, and candidates are meet-closed");
    let levels = LevelSet::new(r[..p].to_vec(), r[p..].to_vec()).unwrap();
    Search::Found(ChainSublocale::new(levels, bottom).unwrap())
}

/// `a ≰ b ⇒ ∃c. a ∨ c = 1 ≠ b ∨ c`, with joins recomputed from the order.
pub fn subfit(f: &FiniteFrame) -> bool {
    let lub = |a: usize, b: usize| {
        let upper: Vec<usize> = f.elements().filter(|&x| f.leq(a, x) && f.leq(b, x)).collect();
        *upper.iter().find(|&&x| upper.iter().all(|&y| f.leq(x, y))).expect("lattice")
    };
    let top = glb(f, &[]);
    f.elements().all(|a| {
        f.elements()
            .all(|b| f.leq(a, b) || f.elements().any(|c| lub(a, c) == top && lub(b, c) != top))
    })
}
