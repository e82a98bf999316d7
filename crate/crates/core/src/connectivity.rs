//! Separations, connectivity and the minor-split identity.
//!
//! For a coordinate set `J` with complement `J'`, the defect is
//! `dim(C|J) + dim(C|J') - dim(C)`. A `k`-separation is a set with both sides
//! of size at least `k` and defect at most `k - 1`.

use crate::gf2core::{checked_set, complement, rank_u64, CodeError, LinearCode};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeparationError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("exhaustive separation search supports length at most {bound}, got {n}")]
    LengthBound { n: usize, bound: usize },
    #[error("invalid separation order k={k}, minimum side l={l}")]
    InvalidOrder { k: usize, l: usize },
    #[error("code is not 3-connected")]
    NotThreeConnected,
    #[error("coordinate {0} appears in both parts of the split")]
    OverlappingSplit(usize),
}

/// A separation found by [`find_k_separation`]. `side` is 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub side: Vec<usize>,
    pub order: usize,
    pub defect: usize,
    /// Defect equals `order - 1`.
    pub exact: bool,
    /// The smaller side has exactly `order` elements.
    pub minimal: bool,
}

impl Separation {
    fn new(side: Vec<usize>, n: usize, order: usize, defect: usize) -> Self {
        let small = side.len().min(n - side.len());
        Self {
            side,
            order,
            defect,
            exact: defect + 1 == order,
            minimal: small == order,
        }
    }
}

/// Connectivity `λ(C)`: the least `k` with a `k`-separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connectivity {
    Finite(usize),
    Infinite,
}

impl Connectivity {
    /// True when `λ >= k`.
    #[must_use]
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Connectivity::Finite(l) => l >= k,
            Connectivity::Infinite => true,
        }
    }
}

/// Rank oracle over the generator columns.
struct ColumnRank {
    cols: Vec<u64>,
    dim: usize,
}

impl ColumnRank {
    fn new(code: &LinearCode) -> Self {
        // The dual has the same defects, so fall back to it for wide codes.
        let cols = code
            .column_masks()
            .or_else(|| code.dual().column_masks())
            .expect("a code of length at most 128 has a side of dimension at most 64");
        let dim = if code.dim() <= 64 { code.dim() } else { code.len() - code.dim() };
        Self { cols, dim }
    }

    fn defect_mask(&self, inside: &[usize], outside: &[usize]) -> usize {
        let a = rank_u64(inside.iter().map(|&i| self.cols[i]));
        let b = rank_u64(outside.iter().map(|&i| self.cols[i]));
        a + b - self.dim
    }
}

/// Defect of the separation `(J, [n] - J)`.
pub fn defect(code: &LinearCode, side: &[usize]) -> Result<usize, SeparationError> {
    let side = checked_set(code.len(), side)?;
    let rest = complement(code.len(), &side);
    Ok(code.restricted_dim(&side)? + code.restricted_dim(&rest)? - code.dim())
}

/// State profile `s_i = defect({0..i})` for `i = 0..=n`.
#[must_use]
pub fn state_profile(code: &LinearCode) -> Vec<usize> {
    let n = code.len();
    let g = code.generator();
    (0..=n)
        .map(|i| {
            let left: Vec<usize> = (0..i).collect();
            let right: Vec<usize> = (i..n).collect();
            g.select_columns(&left).rank() + g.select_columns(&right).rank() - code.dim()
        })
        .collect()
}

/// Connected components of the code viewed as a binary matroid, each sorted,
/// in order of their least coordinate.
///
/// Two coordinates are joined when they share a row of the standard-form
/// generator `[I | A]`: a pivot coordinate and a non-pivot coordinate are
/// adjacent when the corresponding entry of `A` is one.
#[must_use]
pub fn components(code: &LinearCode) -> Vec<Vec<usize>> {
    let n = code.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for row in code.generator().rows() {
        let mut ones = row.iter_ones();
        if let Some(first) = ones.next() {
            for j in ones {
                let (a, b) = (find(&mut parent, first), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of_root[r]].push(i);
    }
    groups
}

/// Lexicographic successor of a sorted combination drawn from `[0, n)`.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let s = comb.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if comb[i] < n - s + i {
            comb[i] += 1;
            for j in i + 1..s {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn check_search_len(n: usize) -> Result<(), SeparationError> {
    let bound = Limits::global().separation_len;
    if n > bound {
        Err(SeparationError::LengthBound { n, bound })
    } else {
        Ok(())
    }
}

/// Finds a `k`-separation whose smaller side has at least `min_side`
/// elements.
///
/// The witness is deterministic: the smallest `|J|` first, then the
/// lexicographically least `J`, with `|J|` ranging from `min_side` to `n/2`.
/// The search is exhaustive and refuses lengths above
/// [`Limits::separation_len`], except for the 1-separation case with
/// `min_side == 1`, which reads the components directly.
pub fn find_k_separation(
    code: &LinearCode,
    k: usize,
    min_side: usize,
) -> Result<Option<Separation>, SeparationError> {
    if k == 0 || min_side < k {
        return Err(SeparationError::InvalidOrder { k, l: min_side });
    }
    let n = code.len();
    if k == 1 && min_side == 1 {
        let comps = components(code);
        if comps.len() < 2 {
            return Ok(None);
        }
        let smallest = comps.iter().map(Vec::len).min().unwrap_or(0);
        let side = comps.into_iter().find(|c| c.len() == smallest).unwrap_or_default();
        return Ok(Some(Separation::new(side, n, 1, 0)));
    }
    check_search_len(n)?;
    let ranks = ColumnRank::new(code);
    for size in min_side..=n / 2 {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let rest = complement(n, &comb);
            let d = ranks.defect_mask(&comb, &rest);
            if d < k {
                return Ok(Some(Separation::new(comb, n, k, d)));
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// `λ(C)`, the least `k` admitting a `k`-separation.
pub fn connectivity(code: &LinearCode) -> Result<Connectivity, SeparationError> {
    let n = code.len();
    if find_k_separation(code, 1, 1)?.is_some() {
        return Ok(Connectivity::Finite(1));
    }
    if n < 4 {
        return Ok(Connectivity::Infinite);
    }
    check_search_len(n)?;
    let ranks = ColumnRank::new(code);
    let mut best: Option<usize> = None;
    // A larger side can still carry a smaller order, so every size is
    // scanned; order 2 is the floor once 1-separations are ruled out.
    for size in 2..=n / 2 {
        if best == Some(2) {
            break;
        }
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let rest = complement(n, &comb);
            let order = ranks.defect_mask(&comb, &rest) + 1;
            if order <= size && best.is_none_or(|b| order < b) {
                best = Some(order);
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(best.map_or(Connectivity::Infinite, Connectivity::Finite))
}

/// True when `C` has no `k'`-separation for any `k' < k`.
pub fn is_k_connected(code: &LinearCode, k: usize) -> Result<bool, SeparationError> {
    Ok(connectivity(code)?.at_least(k))
}

/// A 3-connected code is internally 4-connected when every 3-separation has
/// a side with exactly three elements.
pub fn is_internally_4connected(code: &LinearCode) -> Result<bool, SeparationError> {
    if !is_k_connected(code, 3)? {
        return Err(SeparationError::NotThreeConnected);
    }
    Ok(find_k_separation(code, 3, 4)?.is_none())
}

/// The pair `(C/E2\E1, C/E1\E2)` on the coordinates outside `E1 ∪ E2`,
/// which keep their relative order.
pub fn minor_split(
    code: &LinearCode,
    e1: &[usize],
    e2: &[usize],
) -> Result<(LinearCode, LinearCode), SeparationError> {
    let a = checked_set(code.len(), e1)?;
    let b = checked_set(code.len(), e2)?;
    if let Some(&c) = a.iter().find(|c| b.contains(c)) {
        return Err(SeparationError::OverlappingSplit(c + 1));
    }
    Ok((code.minor(&b, &a)?, code.minor(&a, &b)?))
}
