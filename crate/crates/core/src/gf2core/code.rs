use std::fmt;

use super::bits::{BitMatrix, BitVec};
use super::CodeError;
use crate::limits::Limits;

/// A binary linear code of length `n`.
///
/// The generator and parity-check bases are both kept in reduced row echelon
/// form, so two codes are equal exactly when their generator bases are equal.
/// Coordinates are 0-based here; the text formats and reports use 1-based
/// positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
    parity: BitMatrix,
}

impl LinearCode {
    /// Code spanned by the rows of `g`. Dependent rows are allowed.
    #[must_use]
    pub fn from_generator(g: &BitMatrix) -> Self {
        let (generator, pivots) = g.rref();
        let parity = null_space(&generator, &pivots);
        Self {
            n: g.ncols(),
            generator,
            parity,
        }
    }

    /// Code whose dual is spanned by the rows of `h`.
    #[must_use]
    pub fn from_parity_check(h: &BitMatrix) -> Self {
        Self::from_generator(h).dual()
    }

    /// Convenience constructor from `0`/`1` row strings.
    ///
    /// # Panics
    /// Panics on malformed rows; intended for literals.
    #[must_use]
    pub fn from_rows(rows: &[&str]) -> Self {
        let m = BitMatrix::parse_rows(rows).expect("malformed generator rows");
        Self::from_generator(&m)
    }

    /// The code `{0}` of length `n`.
    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self::from_generator(&BitMatrix::zeros(0, n))
    }

    /// The whole space `F_2^n`.
    #[must_use]
    pub fn full(n: usize) -> Self {
        Self::from_generator(&BitMatrix::identity(n))
    }

    /// Block length `n`.
    #[must_use]
    pub fn len(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension `k`.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    /// Generator basis in reduced row echelon form.
    #[must_use]
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Parity-check basis (generator of the dual) in reduced row echelon form.
    #[must_use]
    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity
    }

    #[must_use]
    pub fn dual(&self) -> Self {
        Self {
            n: self.n,
            generator: self.parity.clone(),
            parity: self.generator.clone(),
        }
    }

    /// Membership test through the parity checks.
    ///
    /// # Panics
    /// Panics if `word` has the wrong length.
    #[must_use]
    pub fn contains(&self, word: &BitVec) -> bool {
        assert_eq!(word.len(), self.n, "word length does not match code length");
        self.parity.rows().iter().all(|h| !h.dot(word))
    }

    /// Columns of the generator basis packed as row masks, when `k <= 64`.
    #[must_use]
    pub fn column_masks(&self) -> Option<Vec<u64>> {
        if self.dim() > 64 {
            return None;
        }
        let mut cols = vec![0u64; self.n];
        for (i, row) in self.generator.rows().iter().enumerate() {
            for j in row.iter_ones() {
                cols[j] |= 1 << i;
            }
        }
        Some(cols)
    }

    /// `dim(C|J)`: the rank of the generator columns indexed by `set`.
    pub fn restricted_dim(&self, set: &[usize]) -> Result<usize, CodeError> {
        let set = checked_set(self.n, set)?;
        Ok(self.generator.select_columns(&set).rank())
    }

    /// Restriction `C|J`, keeping the coordinates of `set` in increasing order.
    pub fn restrict(&self, set: &[usize]) -> Result<Self, CodeError> {
        let set = checked_set(self.n, set)?;
        Ok(Self::from_generator(&self.generator.select_columns(&set)))
    }

    /// The code read in the coordinate order `order`, which lists distinct
    /// coordinates; unlisted coordinates are dropped.
    #[must_use]
    pub(crate) fn restrict_in_order(&self, order: &[usize]) -> Self {
        Self::from_generator(&self.generator.select_columns(order))
    }

    /// Puncturing `C/X`: delete the coordinates in `set`.
    pub fn puncture(&self, set: &[usize]) -> Result<Self, CodeError> {
        let set = checked_set(self.n, set)?;
        let keep = complement(self.n, &set);
        Ok(Self::from_generator(&self.generator.select_columns(&keep)))
    }

    /// Shortening `C\Y`: keep the codewords vanishing on `set`, then delete it.
    pub fn shorten(&self, set: &[usize]) -> Result<Self, CodeError> {
        let set = checked_set(self.n, set)?;
        let keep = complement(self.n, &set);
        Ok(Self::from_generator(
            &self.vanishing_subcode(&set).select_columns(&keep),
        ))
    }

    /// Basis of the subcode of words that are zero on `set`.
    fn vanishing_subcode(&self, set: &[usize]) -> BitMatrix {
        let mut order = set.to_vec();
        order.extend(complement(self.n, set));
        let (reduced, pivots) = self.generator.rref_in_order(&order);
        let in_set = pivots.iter().take_while(|p| set.contains(p)).count();
        BitMatrix::from_rows(self.n, reduced.rows()[in_set..].to_vec())
    }

    /// The minor `C/X\Y`. Surviving coordinates keep their relative order.
    pub fn minor(&self, punctured: &[usize], shortened: &[usize]) -> Result<Self, CodeError> {
        let x = checked_set(self.n, punctured)?;
        let y = checked_set(self.n, shortened)?;
        if let Some(&c) = x.iter().find(|c| y.contains(c)) {
            return Err(CodeError::OverlappingSets(c + 1));
        }
        let sub = self.vanishing_subcode(&y);
        let mut removed: Vec<usize> = x.iter().chain(&y).copied().collect();
        removed.sort_unstable();
        let keep = complement(self.n, &removed);
        Ok(Self::from_generator(&sub.select_columns(&keep)))
    }

    /// Moves coordinate `i` to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, CodeError> {
        check_permutation(self.n, perm)?;
        let mut inverse = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        Ok(Self::from_generator(&self.generator.select_columns(&inverse)))
    }

    /// `C ⊕ C'`: the code `{(c, c')}` of length `n + n'`.
    #[must_use]
    pub fn direct_sum(&self, other: &Self) -> Self {
        let left = self.generator.hstack(&BitMatrix::zeros(self.dim(), other.n));
        let right = BitMatrix::zeros(other.dim(), self.n).hstack(&other.generator);
        Self::from_generator(&left.vstack(&right))
    }

    /// Calls `f` on every codeword, in Gray-code order starting at zero.
    pub fn try_for_each_codeword<F: FnMut(&BitVec)>(&self, mut f: F) -> Result<(), CodeError> {
        self.check_enumeration()?;
        let k = self.dim();
        let mut word = BitVec::zeros(self.n);
        f(&word);
        for step in 1u64..(1u64 << k) {
            let row = step.trailing_zeros() as usize;
            word.xor_assign(self.generator.row(row));
            f(&word);
        }
        Ok(())
    }

    /// All `2^k` codewords, in Gray-code order starting at zero.
    pub fn codewords(&self) -> Result<Vec<BitVec>, CodeError> {
        let mut out = Vec::with_capacity(1 << self.dim().min(20));
        self.try_for_each_codeword(|w| out.push(w.clone()))?;
        Ok(out)
    }

    /// Minimum nonzero weight by exhaustive enumeration.
    pub fn min_weight(&self) -> Result<usize, CodeError> {
        if self.dim() == 0 {
            return Err(CodeError::ZeroCode);
        }
        let mut best = usize::MAX;
        self.try_for_each_codeword(|w| {
            let wt = w.weight();
            if wt > 0 && wt < best {
                best = wt;
            }
        })?;
        Ok(best)
    }

    /// A nonzero codeword is minimal when no other nonzero codeword has
    /// support strictly inside its support; equivalently the parity-check
    /// columns on its support form a circuit.
    #[must_use]
    pub fn is_minimal_codeword(&self, word: &BitVec) -> bool {
        if word.is_zero() || !self.contains(word) {
            return false;
        }
        let support = word.support();
        self.parity.select_columns(&support).rank() + 1 == support.len()
    }

    /// All minimal codewords, sorted lexicographically.
    pub fn minimal_codewords(&self) -> Result<Vec<BitVec>, CodeError> {
        let mut out = Vec::new();
        self.try_for_each_codeword(|w| {
            if self.is_minimal_codeword(w) {
                out.push(w.clone());
            }
        })?;
        out.sort();
        Ok(out)
    }

    pub(crate) fn check_enumeration(&self) -> Result<(), CodeError> {
        let limits = Limits::global();
        if limits.allows_enumeration(self.dim()) {
            Ok(())
        } else {
            Err(CodeError::EnumerationBound {
                dimension: self.dim(),
                bound: limits.enum_words,
            })
        }
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}]", self.n, self.dim())?;
        for r in self.generator.rows() {
            write!(f, "\n  {r}")?;
        }
        Ok(())
    }
}

/// Basis of the null space of an rref matrix with the given pivots.
fn null_space(rref: &BitMatrix, pivots: &[usize]) -> BitMatrix {
    let n = rref.ncols();
    let mut rows = Vec::with_capacity(n - pivots.len());
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        let mut v = BitVec::unit(n, j);
        for (i, &p) in pivots.iter().enumerate() {
            if rref.get(i, j) {
                v.set(p, true);
            }
        }
        rows.push(v);
    }
    BitMatrix::from_rows(n, rows).rref().0
}

/// Sorts `set` and rejects duplicates and out-of-range coordinates.
pub(crate) fn checked_set(n: usize, set: &[usize]) -> Result<Vec<usize>, CodeError> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(CodeError::DuplicateCoordinate(w[0] + 1));
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&c| c >= n) {
        return Err(CodeError::CoordinateOutOfRange { coord: bad + 1, n });
    }
    Ok(sorted)
}

/// Coordinates of `[0, n)` not in the sorted `set`.
#[must_use]
pub fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|c| set.binary_search(c).is_err()).collect()
}

pub(crate) fn check_permutation(n: usize, perm: &[usize]) -> Result<(), CodeError> {
    if perm.len() != n {
        return Err(CodeError::NotAPermutation(format!(
            "expected {n} images, found {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(CodeError::NotAPermutation(format!(
                "image {} repeated or out of range",
                p + 1
            )));
        }
        seen[p] = true;
    }
    Ok(())
}
