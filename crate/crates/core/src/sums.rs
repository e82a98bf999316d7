//! Direct sums, 2-sums, 3-sums and 3̄-sums of binary codes, and the
//! constructions that split a code along an exact 2- or 3-separation.
//!
//! Components follow a fixed layout: the overlap coordinates are the last
//! ones of the left component and the first ones of the right component.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::{defect, SeparationError};
use crate::gf2core::{checked_set, complement, BitMatrix, BitVec, CodeError, LinearCode};

/// The ways two codes are glued together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SumKind {
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "2sum")]
    Two,
    #[serde(rename = "3sum")]
    Three,
    #[serde(rename = "3barsum")]
    ThreeBar,
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumKind::Direct => "direct sum",
            SumKind::Two => "2-sum",
            SumKind::Three => "3-sum",
            SumKind::ThreeBar => "3bar-sum",
        })
    }
}

/// Precondition clauses of the 2-sum and the two 3-sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// Left 2-sum operand: `0…01` is not a codeword and the last coordinate is used.
    P1,
    /// Right 2-sum operand: `10…0` is not a codeword and the first coordinate is used.
    P2,
    /// Left 3-sum operand: no word `0…0x` with `|x|` in {1, 2} in the code or its dual.
    A1,
    /// Right 3-sum operand: no word `x0…0` with `|x|` in {1, 2} in the code or its dual.
    A2,
    /// 3-sum: `0…0111` lies in the left code and `1110…0` in the right code.
    A3,
    /// 3̄-sum: `0…0111` lies in the left dual and `1110…0` in the right dual.
    A3Bar,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::P1 => "P1",
            Clause::P2 => "P2",
            Clause::A1 => "A1",
            Clause::A2 => "A2",
            Clause::A3 => "A3",
            Clause::A3Bar => "A3bar",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SumError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error("{kind} needs operands of length at least {min}, got {len}")]
    TooShort { kind: SumKind, len: usize, min: usize },
    #[error("overlap {m} is too large for lengths {n} and {n2}")]
    OverlapTooLarge { m: usize, n: usize, n2: usize },
    #[error("precondition {clause} fails: {detail}")]
    Precondition { clause: Clause, detail: String },
    #[error("side of size {side} and complement of size {rest} is not an exact {order}-separation (defect {defect})")]
    NotExactSeparation {
        order: usize,
        side: usize,
        rest: usize,
        defect: usize,
    },
}

fn fail(clause: Clause, detail: impl Into<String>) -> SumError {
    SumError::Precondition {
        clause,
        detail: detail.into(),
    }
}

/// The overlap construction `S_m(C, C')`: stack `[G | 0]` over `[0 | G']`
/// with the last `m` columns of `G` sharing positions with the first `m`
/// columns of `G'`, then shorten the shared positions.
///
/// `m = 0` gives the direct sum.
pub fn overlap_sum(left: &LinearCode, right: &LinearCode, m: usize) -> Result<LinearCode, SumError> {
    let (n, n2) = (left.len(), right.len());
    if m > 0 && 2 * m >= n.min(n2) {
        return Err(SumError::OverlapTooLarge { m, n, n2 });
    }
    let total = n + n2 - m;
    let mut rows = Vec::with_capacity(left.dim() + right.dim());
    for r in left.generator().rows() {
        let mut v = BitVec::zeros(total);
        for j in r.iter_ones() {
            v.set(j, true);
        }
        rows.push(v);
    }
    for r in right.generator().rows() {
        let mut v = BitVec::zeros(total);
        for j in r.iter_ones() {
            v.set(n - m + j, true);
        }
        rows.push(v);
    }
    let stacked = LinearCode::from_generator(&BitMatrix::from_rows(total, rows));
    let shared: Vec<usize> = (n - m..n).collect();
    Ok(stacked.shorten(&shared)?)
}

fn check_len(kind: SumKind, code: &LinearCode, min: usize) -> Result<(), SumError> {
    if code.len() < min {
        Err(SumError::TooShort {
            kind,
            len: code.len(),
            min,
        })
    } else {
        Ok(())
    }
}

/// Word of length `n` with the bits of `pattern` placed at `offset`.
fn word_at(n: usize, offset: usize, pattern: &[bool]) -> BitVec {
    let mut v = BitVec::zeros(n);
    for (i, &b) in pattern.iter().enumerate() {
        if b {
            v.set(offset + i, true);
        }
    }
    v
}

const LOW_WEIGHT: [[bool; 3]; 6] = [
    [true, false, false],
    [false, true, false],
    [false, false, true],
    [true, true, false],
    [true, false, true],
    [false, true, true],
];

/// Clause A1 (tail) or A2 (head).
fn check_no_short_words(code: &LinearCode, tail: bool) -> Result<(), SumError> {
    let n = code.len();
    let offset = if tail { n - 3 } else { 0 };
    let clause = if tail { Clause::A1 } else { Clause::A2 };
    let dual = code.dual();
    for pattern in &LOW_WEIGHT {
        let w = word_at(n, offset, pattern);
        if code.contains(&w) {
            return Err(fail(clause, format!("{w} is a codeword")));
        }
        if dual.contains(&w) {
            return Err(fail(clause, format!("{w} is a dual codeword")));
        }
    }
    Ok(())
}

fn check_two_sum(left: &LinearCode, right: &LinearCode) -> Result<(), SumError> {
    check_len(SumKind::Two, left, 3)?;
    check_len(SumKind::Two, right, 3)?;
    let n = left.len();
    let last = BitVec::unit(n, n - 1);
    if left.contains(&last) {
        return Err(fail(Clause::P1, format!("{last} is a codeword of the left operand")));
    }
    if left.generator().column(n - 1).is_zero() {
        return Err(fail(Clause::P1, "last coordinate of the left operand is identically zero"));
    }
    let first = BitVec::unit(right.len(), 0);
    if right.contains(&first) {
        return Err(fail(Clause::P2, format!("{first} is a codeword of the right operand")));
    }
    if right.generator().column(0).is_zero() {
        return Err(fail(Clause::P2, "first coordinate of the right operand is identically zero"));
    }
    Ok(())
}

/// `C ⊕₂ C'`, after checking P1 and P2. The result has dimension `k + k' - 1`.
pub fn two_sum(left: &LinearCode, right: &LinearCode) -> Result<LinearCode, SumError> {
    check_two_sum(left, right)?;
    let out = overlap_sum(left, right, 1)?;
    debug_assert_eq!(out.dim() + 1, left.dim() + right.dim());
    Ok(out)
}

fn triple_tail(n: usize) -> BitVec {
    word_at(n, n - 3, &[true; 3])
}

fn triple_head(n: usize) -> BitVec {
    word_at(n, 0, &[true; 3])
}

fn check_three_sum_shape(kind: SumKind, left: &LinearCode, right: &LinearCode) -> Result<(), SumError> {
    check_len(kind, left, 7)?;
    check_len(kind, right, 7)?;
    check_no_short_words(left, true)?;
    check_no_short_words(right, false)
}

/// `C ⊕₃ C'`, after checking A1, A2 and A3. The result has dimension `k + k' - 4`.
pub fn three_sum(left: &LinearCode, right: &LinearCode) -> Result<LinearCode, SumError> {
    check_three_sum_shape(SumKind::Three, left, right)?;
    let tail = triple_tail(left.len());
    if !left.contains(&tail) {
        return Err(fail(Clause::A3, format!("{tail} is not in the left operand")));
    }
    let head = triple_head(right.len());
    if !right.contains(&head) {
        return Err(fail(Clause::A3, format!("{head} is not in the right operand")));
    }
    let out = overlap_sum(left, right, 3)?;
    debug_assert_eq!(out.dim() + 4, left.dim() + right.dim());
    Ok(out)
}

fn with_word(code: &LinearCode, word: BitVec) -> LinearCode {
    let mut g = code.generator().clone();
    g.push_row(word);
    LinearCode::from_generator(&g)
}

/// `C ⊕̄₃ C'`, after checking A1, A2 and the dual form of A3: the 3-sum of
/// `C ∪ (0…0111 + C)` and `C' ∪ (1110…0 + C')`. Dimension `k + k' - 2`.
pub fn three_bar_sum(left: &LinearCode, right: &LinearCode) -> Result<LinearCode, SumError> {
    check_three_sum_shape(SumKind::ThreeBar, left, right)?;
    let tail = triple_tail(left.len());
    if !left.dual().contains(&tail) {
        return Err(fail(Clause::A3Bar, format!("{tail} is not in the dual of the left operand")));
    }
    let head = triple_head(right.len());
    if !right.dual().contains(&head) {
        return Err(fail(Clause::A3Bar, format!("{head} is not in the dual of the right operand")));
    }
    let out = overlap_sum(&with_word(left, tail), &with_word(right, head), 3)?;
    debug_assert_eq!(out.dim() + 2, left.dim() + right.dim());
    Ok(out)
}

/// Dispatches on `kind`.
pub fn compose(left: &LinearCode, kind: SumKind, right: &LinearCode) -> Result<LinearCode, SumError> {
    match kind {
        SumKind::Direct => Ok(left.direct_sum(right)),
        SumKind::Two => two_sum(left, right),
        SumKind::Three => three_sum(left, right),
        SumKind::ThreeBar => three_bar_sum(left, right),
    }
}

/// A minor `C/X\Y`, with both sets 0-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub punctured: Vec<usize>,
    pub shortened: Vec<usize>,
}

/// A code written as `permute(compose(left, kind, right), perm)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: SumKind,
    pub left: LinearCode,
    pub right: LinearCode,
    /// Coordinate `p` of the composed code lands at `perm[p]`.
    pub perm: Vec<usize>,
    /// For 2-sums: minors of the composed code (before `perm`) equal to the
    /// left and right components.
    pub witnesses: Option<[MinorWitness; 2]>,
}

impl Decomposition {
    /// Rebuilds the decomposed code.
    pub fn recompose(&self) -> Result<LinearCode, SumError> {
        Ok(compose(&self.left, self.kind, &self.right)?.permute(&self.perm)?)
    }
}

/// Systematic layout of a generator split along `(J, J')`.
struct SplitForm {
    /// Reduced rows; columns indexed by composed positions.
    rows: Vec<BitVec>,
    /// Composed position `p` holds original coordinate `perm[p]`.
    perm: Vec<usize>,
    side: usize,
    /// Rows with a pivot inside `J`.
    k1: usize,
    /// Rows with a pivot inside `J'`.
    lower: usize,
    /// Rows `0..k1` restricted to the non-pivot columns of `J'`.
    corner: Vec<BitVec>,
}

impl SplitForm {
    /// Orders `J` then `J'`, row-reduces, and moves pivot columns to the
    /// front of each side so the generator reads `[[I A O B], [O O I C]]`.
    fn new(code: &LinearCode, side: &[usize]) -> Self {
        let n = code.len();
        let rest = complement(n, side);
        let order: Vec<usize> = side.iter().chain(&rest).copied().collect();
        let (reduced, pivots) = code.generator().select_columns(&order).rref();
        let a = side.len();
        let k1 = pivots.iter().filter(|&&p| p < a).count();
        let lower = pivots.len() - k1;
        let mut layout: Vec<usize> = pivots[..k1].to_vec();
        layout.extend((0..a).filter(|p| !pivots[..k1].contains(p)));
        layout.extend(&pivots[k1..]);
        layout.extend((a..n).filter(|p| !pivots[k1..].contains(p)));
        let rows: Vec<BitVec> = reduced.rows().iter().map(|r| r.select(&layout)).collect();
        let perm = layout.iter().map(|&p| order[p]).collect();
        let corner_cols: Vec<usize> = (a + lower..n).collect();
        let corner = rows[..k1].iter().map(|r| r.select(&corner_cols)).collect();
        Self {
            rows,
            perm,
            side: a,
            k1,
            lower,
            corner,
        }
    }

    fn n(&self) -> usize {
        self.perm.len()
    }

    /// Row `i` restricted to the `J` block.
    fn left_part(&self, i: usize) -> BitVec {
        self.rows[i].select(&(0..self.side).collect::<Vec<_>>())
    }

    /// Row `i` restricted to the `J'` block.
    fn right_part(&self, i: usize) -> BitVec {
        self.rows[i].select(&(self.side..self.n()).collect::<Vec<_>>())
    }
}

fn check_exact(
    code: &LinearCode,
    side: &[usize],
    order: usize,
    min_side: usize,
) -> Result<Vec<usize>, SumError> {
    let side = checked_set(code.len(), side)?;
    let rest = code.len() - side.len();
    let d = defect(code, &side)?;
    if side.len() < min_side || rest < min_side || d + 1 != order {
        return Err(SumError::NotExactSeparation {
            order,
            side: side.len(),
            rest,
            defect: d,
        });
    }
    Ok(side)
}

/// Splits `code` along an exact 2-separation with side `J` into
/// `[I A b̃]` and `[[1 0 b], [0 I C]]`.
pub fn decompose_two_sum(code: &LinearCode, side: &[usize]) -> Result<Decomposition, SumError> {
    let side = check_exact(code, side, 2, 2)?;
    let form = SplitForm::new(code, &side);
    let b = form
        .corner
        .iter()
        .find(|r| !r.is_zero())
        .cloned()
        .expect("an exact 2-separation has a nonzero corner block");
    let indicator = BitVec::from_bools(&form.corner.iter().map(|r| *r == b).collect::<Vec<_>>());

    let a = form.side;
    let mut left_rows = Vec::with_capacity(form.k1);
    for i in 0..form.k1 {
        left_rows.push(form.left_part(i).concat(&BitVec::from_bools(&[indicator.get(i)])));
    }
    let left = LinearCode::from_generator(&BitMatrix::from_rows(a + 1, left_rows));

    let right_len = form.n() - a + 1;
    let mut right_rows = Vec::with_capacity(form.lower + 1);
    right_rows.push(BitVec::unit(1, 0).concat(&BitVec::zeros(form.lower)).concat(&b));
    for i in form.k1..form.k1 + form.lower {
        right_rows.push(BitVec::zeros(1).concat(&form.right_part(i)));
    }
    let right = LinearCode::from_generator(&BitMatrix::from_rows(right_len, right_rows));

    let j = a + form.lower + b.first_one().expect("nonzero row");
    let j_row = indicator.first_one().expect("nonzero indicator");
    let lower_pivots: Vec<usize> = (a..a + form.lower).collect();
    let left_witness = MinorWitness {
        punctured: (a + form.lower..form.n()).filter(|&p| p != j).collect(),
        shortened: lower_pivots,
    };
    let right_witness = MinorWitness {
        punctured: (form.k1..a).collect(),
        shortened: (0..form.k1).filter(|&p| p != j_row).collect(),
    };
    Ok(Decomposition {
        kind: SumKind::Two,
        left,
        right,
        perm: form.perm,
        witnesses: Some([left_witness, right_witness]),
    })
}

/// Splits `code` along an exact 3-separation with both sides of size at
/// least four into `[[I A D], [0 0 111]]` and `[[I₃ O X], [O I C]]`.
///
/// The corner block has rank two; its basis `x, y` is the first two
/// independent rows from the top, rows map to `D` by `0 → 000`, `x → 001`,
/// `y → 010`, `x+y → 100`, and `X` has rows `x+y, y, x`.
pub fn decompose_three_sum(code: &LinearCode, side: &[usize]) -> Result<Decomposition, SumError> {
    let side = check_exact(code, side, 3, 4)?;
    let form = SplitForm::new(code, &side);
    let x = form
        .corner
        .iter()
        .find(|r| !r.is_zero())
        .cloned()
        .expect("an exact 3-separation has a rank-two corner block");
    let y = form
        .corner
        .iter()
        .find(|r| !r.is_zero() && **r != x)
        .cloned()
        .expect("an exact 3-separation has a rank-two corner block");
    let sum = x.xor(&y);
    let code_of = |r: &BitVec| -> [bool; 3] {
        if r.is_zero() {
            [false, false, false]
        } else if *r == x {
            [false, false, true]
        } else if *r == y {
            [false, true, false]
        } else {
            debug_assert_eq!(*r, sum);
            [true, false, false]
        }
    };

    let a = form.side;
    let mut left_rows = Vec::with_capacity(form.k1 + 1);
    for i in 0..form.k1 {
        let tag = code_of(&form.corner[i]);
        left_rows.push(form.left_part(i).concat(&BitVec::from_bools(&tag)));
    }
    left_rows.push(BitVec::zeros(a).concat(&BitVec::ones(3)));
    let left = LinearCode::from_generator(&BitMatrix::from_rows(a + 3, left_rows));

    let right_len = form.n() - a + 3;
    let mut right_rows = Vec::with_capacity(form.lower + 3);
    for (i, tail) in [&sum, &y, &x].into_iter().enumerate() {
        right_rows.push(
            BitVec::unit(3, i)
                .concat(&BitVec::zeros(form.lower))
                .concat(tail),
        );
    }
    for i in form.k1..form.k1 + form.lower {
        right_rows.push(BitVec::zeros(3).concat(&form.right_part(i)));
    }
    let right = LinearCode::from_generator(&BitMatrix::from_rows(right_len, right_rows));
    Ok(Decomposition {
        kind: SumKind::Three,
        left,
        right,
        perm: form.perm,
        witnesses: None,
    })
}

/// Splits `code` as a 3̄-sum by decomposing its dual as a 3-sum along the
/// same side and dualizing both components.
pub fn decompose_three_bar_sum(code: &LinearCode, side: &[usize]) -> Result<Decomposition, SumError> {
    let d = decompose_three_sum(&code.dual(), side)?;
    Ok(Decomposition {
        kind: SumKind::ThreeBar,
        left: d.left.dual(),
        right: d.right.dual(),
        perm: d.perm,
        witnesses: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex() -> LinearCode {
        LinearCode::from_rows(&["1000111", "0101011", "0011101"])
    }

    #[test]
    fn two_sum_of_simplex_codes_has_dimension_five() {
        let c = two_sum(&simplex(), &simplex()).unwrap();
        assert_eq!((c.len(), c.dim()), (12, 5));
    }

    #[test]
    fn direct_sum_is_overlap_zero() {
        let s = simplex();
        assert_eq!(overlap_sum(&s, &s, 0).unwrap(), s.direct_sum(&s));
    }

    #[test]
    fn p1_names_the_clause() {
        let bad = LinearCode::from_rows(&["100", "001"]);
        let err = two_sum(&bad, &simplex()).unwrap_err();
        assert!(matches!(err, SumError::Precondition { clause: Clause::P1, .. }));
        let err = two_sum(&simplex(), &bad).unwrap_err();
        assert!(matches!(err, SumError::Precondition { clause: Clause::P2, .. }));
    }

    #[test]
    fn three_sum_requires_length_seven() {
        let err = three_sum(&LinearCode::full(6), &simplex()).unwrap_err();
        assert!(matches!(err, SumError::TooShort { len: 6, min: 7, .. }));
    }
}
