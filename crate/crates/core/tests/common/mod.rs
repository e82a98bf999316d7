//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seymour::dectree::{build_complete_tree, DecompNode, TreeMode};
use seymour::sums::{compose, SumKind};
use seymour::{BitMatrix, BitVec, LinearCode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, n: usize) -> BitVec {
    BitVec::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

/// Code spanned by `k` random words of length `n`; its dimension may be
/// smaller than `k`.
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LinearCode {
    let rows = (0..k).map(|_| random_word(rng, n)).collect();
    LinearCode::from_generator(&BitMatrix::from_rows(n, rows))
}

/// Random code of length `n` spanned by between 1 and `n - 1` words.
pub fn random_code_of_len(rng: &mut ChaCha8Rng, n: usize) -> LinearCode {
    let k = rng.gen_range(1..n.max(2));
    random_code(rng, n, k)
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

pub fn word(s: &str) -> BitVec {
    BitVec::parse01(s).unwrap()
}

/// Codewords by closing the generator rows under addition, independent of
/// the library's enumeration.
pub fn span(code: &LinearCode) -> BTreeSet<BitVec> {
    let mut words = BTreeSet::new();
    words.insert(BitVec::zeros(code.len()));
    for row in code.generator().rows() {
        let shifted: Vec<BitVec> = words.iter().map(|w| w.xor(row)).collect();
        words.extend(shifted);
    }
    words
}

pub fn dot(a: &BitVec, b: &BitVec) -> bool {
    a.iter_ones().filter(|&i| b.get(i)).count() % 2 == 1
}

/// Dual by testing every word of length `n` against the generator rows.
pub fn dual_by_search(code: &LinearCode) -> BTreeSet<BitVec> {
    let n = code.len();
    (0u64..1 << n)
        .map(|m| BitVec::from_bools(&(0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
        .filter(|w| code.generator().rows().iter().all(|r| !dot(r, w)))
        .collect()
}

pub fn select(w: &BitVec, coords: &[usize]) -> BitVec {
    BitVec::from_bools(&coords.iter().map(|&i| w.get(i)).collect::<Vec<_>>())
}

pub fn rest(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !set.contains(i)).collect()
}

/// Puncturing by projecting codewords.
pub fn puncture_oracle(code: &LinearCode, set: &[usize]) -> BTreeSet<BitVec> {
    let keep = rest(code.len(), set);
    span(code).iter().map(|w| select(w, &keep)).collect()
}

/// Shortening by keeping codewords that vanish on `set`.
pub fn shorten_oracle(code: &LinearCode, set: &[usize]) -> BTreeSet<BitVec> {
    let keep = rest(code.len(), set);
    span(code)
        .iter()
        .filter(|w| set.iter().all(|&i| !w.get(i)))
        .map(|w| select(w, &keep))
        .collect()
}

pub fn min_cost_oracle(code: &LinearCode, gamma: &[f64]) -> f64 {
    span(code)
        .iter()
        .map(|w| w.iter_ones().map(|i| gamma[i]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

pub fn min_weight_oracle(code: &LinearCode) -> usize {
    span(code).iter().map(BitVec::weight).filter(|&w| w > 0).min().unwrap()
}

pub fn words_of(set: &BTreeSet<BitVec>, n: usize) -> LinearCode {
    LinearCode::from_generator(&BitMatrix::from_rows(n, set.iter().cloned().collect()))
}

pub fn code(rows: &[&str]) -> LinearCode {
    LinearCode::from_rows(rows)
}

pub fn simplex() -> LinearCode {
    code(&["1000111", "0101011", "0011101"])
}

pub fn g12() -> LinearCode {
    code(&[
        "100011000111",
        "010101000111",
        "001110000111",
        "000000101011",
        "000000011101",
    ])
}

pub fn hamming_left() -> LinearCode {
    code(&["1100001", "1010010", "0110100", "1111000"])
}

pub fn hamming_right() -> LinearCode {
    code(&["1000011", "0100101", "0010110", "0001111"])
}

pub fn ext_hamming() -> LinearCode {
    code(&["10010011", "01010101", "00110110", "00001111"])
}

pub fn weak_left() -> LinearCode {
    code(&["1000000", "0101001", "0011010", "1110100"])
}

pub fn weak_right() -> LinearCode {
    code(&["1000110", "0100101", "0010011", "0001111"])
}

pub fn code_841() -> LinearCode {
    code(&["10000000", "01010011", "00110101", "00001111"])
}

/// Every worked example code.
pub fn examples() -> Vec<(&'static str, LinearCode)> {
    vec![
        ("simplex", simplex()),
        ("g12", g12()),
        ("hamming_left", hamming_left()),
        ("hamming_right", hamming_right()),
        ("ext_hamming", ext_hamming()),
        ("weak_left", weak_left()),
        ("code_841", code_841()),
    ]
}

/// Random pair whose sum of the given kind is defined, with total length
/// at most `max_len`.
pub fn random_sum_pair(rng: &mut ChaCha8Rng, kind: SumKind, max_len: usize) -> (LinearCode, LinearCode, LinearCode) {
    let (min_part, overlap) = match kind {
        SumKind::Direct => (1, 0),
        SumKind::Two => (3, 1),
        SumKind::Three | SumKind::ThreeBar => (7, 3),
    };
    loop {
        let n1 = rng.gen_range(min_part..=max_len + 2 * overlap - min_part);
        let n2 = max_len + 2 * overlap - n1;
        let n2 = rng.gen_range(min_part..=n2.max(min_part));
        let l = random_code_of_len(rng, n1);
        let r = random_code_of_len(rng, n2);
        if let Ok(c) = compose(&l, kind, &r) {
            return (l, r, c);
        }
    }
}

/// Random tree whose root kind is drawn from `kinds`. Direct and 2-sum
/// children recurse; 3-sum and 3̄-sum children come from a random valid pair
/// and are expanded by the library's tree builder.
pub fn random_tree(rng: &mut ChaCha8Rng, kinds: &[SumKind], max_len: usize, depth: usize) -> DecompNode {
    if depth == 0 || max_len < 8 {
        let n = rng.gen_range(2..=max_len.clamp(2, 7));
        return DecompNode::leaf(random_code_of_len(rng, n));
    }
    let kind = *kinds.choose(rng).unwrap();
    let (left, right) = match kind {
        SumKind::Three | SumKind::ThreeBar => {
            let (l, r, _) = random_sum_pair(rng, kind, max_len.min(14));
            let mode = if kind == SumKind::Three {
                TreeMode::ThreeHomogeneous
            } else {
                TreeMode::ThreeBarHomogeneous
            };
            (
                build_complete_tree(&l, mode).unwrap(),
                build_complete_tree(&r, mode).unwrap(),
            )
        }
        SumKind::Direct | SumKind::Two => {
            let overlap = usize::from(kind == SumKind::Two);
            let budget = max_len + 2 * overlap;
            let n1 = rng.gen_range(budget / 3..=budget / 2);
            let l = random_tree(rng, kinds, n1, depth - 1);
            let r = random_tree(rng, kinds, budget - l.code.len(), depth - 1);
            if compose(&l.code, kind, &r.code).is_err() {
                return random_tree(rng, &[SumKind::Direct], max_len, 1);
            }
            (l, r)
        }
    };
    let c = compose(&left.code, kind, &right.code).unwrap();
    let perm = random_perm(rng, c.len());
    let code = c.permute(&perm).unwrap();
    DecompNode::internal(code, kind, perm, left, right)
}

/// Proptest strategy: codes of length `1..=max_n` spanned by up to
/// `max_n` random words.
pub fn arb_code(max_n: usize) -> impl proptest::strategy::Strategy<Value = LinearCode> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), 0..=n).prop_map(move |rows| {
            let rows = rows.iter().map(|r| BitVec::from_bools(r)).collect();
            LinearCode::from_generator(&BitMatrix::from_rows(n, rows))
        })
    })
}

/// Connected random graph on `v` vertices: a random spanning tree plus
/// `extra` random edges, loops and parallel edges allowed.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, v: usize, extra: usize) -> seymour::graphic::Graph {
    let mut edges = Vec::new();
    for i in 1..v {
        edges.push((rng.gen_range(0..i), i));
    }
    for _ in 0..extra {
        edges.push((rng.gen_range(0..v), rng.gen_range(0..v)));
    }
    edges.shuffle(rng);
    seymour::graphic::Graph::new(v, edges).unwrap()
}
