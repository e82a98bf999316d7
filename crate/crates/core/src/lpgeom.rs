//! Exact linear programming over the fundamental polytope `Q(H)`.
//!
//! `Q(H)` is cut out of the unit cube by the odd-subset inequalities
//! `Σ_{j∈J} x_j − Σ_{i∈S\J} x_i ≤ |J| − 1`, one for every dual word `h` with
//! support `S` and every odd `J ⊆ S`. Every codeword lies in `Q(H)` when
//! `H ⊆ C⊥`; non-integral vertices are pseudocodewords.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gf2core::{BitMatrix, BitVec, CodeError, LinearCode};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("dual word {index} has length {got}, expected {expected}")]
    WordLength { index: usize, expected: usize, got: usize },
    #[error("dual word {0} is zero")]
    ZeroWord(usize),
    #[error("{rows} constraint rows exceed the budget of {budget}")]
    Budget { rows: u128, budget: usize },
    #[error("cost vector has length {got}, expected {expected}")]
    CostLength { expected: usize, got: usize },
    #[error("cost entry {0} is not finite")]
    NonFinite(usize),
    #[error("dual word {0} is not orthogonal to the code")]
    NotInDual(usize),
    #[error("dual words span dimension {rank}, the dual code has dimension {expected}")]
    NotSpanning { rank: usize, expected: usize },
    #[error("integral optimum is not a codeword")]
    NotACodeword,
}

/// One inequality `Σ coeffs_j x_j ≤ rhs` with coefficients in {-1, 0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LpRow {
    pub coeffs: Vec<i8>,
    pub rhs: i64,
}

impl LpRow {
    fn dot(&self, x: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (c, v) in self.coeffs.iter().zip(x) {
            match c {
                1 => s += v,
                -1 => s -= v,
                _ => {}
            }
        }
        s
    }

    fn rhs(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.rhs))
    }
}

/// `Q(H)` as a list of `≤` rows over `n` free variables.
///
/// Rows `0..n` are `-x_j ≤ 0` and rows `n..2n` are `x_j ≤ 1`; the
/// odd-subset rows follow in generation order with duplicates removed.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeLP {
    n: usize,
    rows: Vec<LpRow>,
    generated: usize,
}

impl PolytopeLP {
    #[must_use]
    pub fn len(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[must_use]
    pub fn rows(&self) -> &[LpRow] {
        &self.rows
    }

    /// Number of odd-subset rows generated before deduplication.
    #[must_use]
    pub fn generated_rows(&self) -> usize {
        self.generated
    }

    /// Exact membership test.
    #[must_use]
    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.n && self.rows.iter().all(|r| r.dot(x) <= r.rhs())
    }
}

/// Builds `Q(H)` for dual words of length `n`.
pub fn build_fundamental_polytope(words: &[BitVec], n: usize) -> Result<PolytopeLP, LpError> {
    let budget = Limits::global().lp_rows;
    let mut total: u128 = 2 * n as u128;
    for (i, h) in words.iter().enumerate() {
        if h.len() != n {
            return Err(LpError::WordLength {
                index: i + 1,
                expected: n,
                got: h.len(),
            });
        }
        if h.is_zero() {
            return Err(LpError::ZeroWord(i + 1));
        }
        total += 1u128 << (h.weight() - 1).min(100);
    }
    if total > budget as u128 {
        return Err(LpError::Budget { rows: total, budget });
    }

    let mut rows = Vec::with_capacity(total as usize);
    for j in 0..n {
        let mut coeffs = vec![0i8; n];
        coeffs[j] = -1;
        rows.push(LpRow { coeffs, rhs: 0 });
    }
    for j in 0..n {
        let mut coeffs = vec![0i8; n];
        coeffs[j] = 1;
        rows.push(LpRow { coeffs, rhs: 1 });
    }
    let mut seen: HashSet<LpRow> = rows.iter().cloned().collect();
    let mut generated = 0;
    for h in words {
        let support = h.support();
        for mask in 0u64..(1u64 << support.len()) {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![0i8; n];
            for (b, &s) in support.iter().enumerate() {
                coeffs[s] = if mask >> b & 1 == 1 { 1 } else { -1 };
            }
            let row = LpRow {
                coeffs,
                rhs: i64::from(mask.count_ones()) - 1,
            };
            generated += 1;
            if seen.insert(row.clone()) {
                rows.push(row);
            }
        }
    }
    Ok(PolytopeLP { n, rows, generated })
}

/// Optimal basic solution of an LP over `Q(H)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpVertex {
    pub x: Vec<BigRational>,
    pub integral: bool,
    pub objective: BigRational,
}

impl LpVertex {
    /// The vertex as a word, when it is integral.
    #[must_use]
    pub fn as_word(&self) -> Option<BitVec> {
        self.integral
            .then(|| BitVec::from_bools(&self.x.iter().map(|v| v.is_one()).collect::<Vec<_>>()))
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = m[col][col].recip();
        for v in &mut m[col] {
            *v *= &scale;
        }
        for v in &mut inv[col] {
            *v *= &scale;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let dm = &f * &m[col][c];
                m[r][c] -= dm;
                let di = &f * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}

/// Minimizes `<γ, x>` over the polytope with a primal active-set simplex in
/// exact arithmetic.
///
/// The walk starts at the origin with the nonnegativity rows as basis. At
/// each step the multipliers of the basis rows are computed; the smallest
/// basis row with a negative multiplier is released, and the blocking row
/// of smallest index enters.
pub fn lp_minimize(p: &PolytopeLP, gamma: &[BigRational]) -> Result<LpVertex, LpError> {
    let n = p.n;
    if gamma.len() != n {
        return Err(LpError::CostLength {
            expected: n,
            got: gamma.len(),
        });
    }
    let to_rat = |c: i8| BigRational::from_integer(BigInt::from(c));
    let mut x = vec![BigRational::zero(); n];
    let mut basis: Vec<usize> = (0..n).collect();
    loop {
        let a_b: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|&i| p.rows[i].coeffs.iter().map(|&c| to_rat(c)).collect())
            .collect();
        let inv = invert(a_b).expect("basis rows stay independent");
        // Multipliers μ solve A_Bᵀ μ = −γ, so μ_k = −Σ_j inv[j][k] γ_j.
        let multiplier = |k: usize| -> BigRational {
            let mut s = BigRational::zero();
            for (j, g) in gamma.iter().enumerate() {
                if !inv[j][k].is_zero() {
                    s -= &inv[j][k] * g;
                }
            }
            s
        };
        let leaving = (0..n)
            .filter(|&k| multiplier(k).is_negative())
            .min_by_key(|&k| basis[k]);
        let Some(k) = leaving else { break };
        // Direction keeps the other basis rows tight and leaves row k.
        let d: Vec<BigRational> = (0..n).map(|j| -inv[j][k].clone()).collect();
        let in_basis: HashSet<usize> = basis.iter().copied().collect();
        let mut best: Option<(BigRational, usize)> = None;
        for (i, row) in p.rows.iter().enumerate() {
            if in_basis.contains(&i) {
                continue;
            }
            let rate = row.dot(&d);
            if !rate.is_positive() {
                continue;
            }
            let slack = row.rhs() - row.dot(&x);
            let t = slack / rate;
            if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
                best = Some((t, i));
            }
        }
        let (t, entering) = best.expect("polytope is bounded");
        for (xj, dj) in x.iter_mut().zip(&d) {
            *xj += &t * dj;
        }
        basis[k] = entering;
    }
    debug_assert!(p.contains(&x));
    let integral = x.iter().all(|v| v.is_integer());
    let mut objective = BigRational::zero();
    for (g, v) in gamma.iter().zip(&x) {
        objective += g * v;
    }
    Ok(LpVertex { x, integral, objective })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    MlCodeword,
    Pseudocodeword,
}

/// Checks that `words` lie in `C⊥` and span it.
pub fn check_dual_words(code: &LinearCode, words: &[BitVec]) -> Result<(), LpError> {
    let n = code.len();
    let dual = code.dual();
    for (i, h) in words.iter().enumerate() {
        if h.len() != n {
            return Err(LpError::WordLength {
                index: i + 1,
                expected: n,
                got: h.len(),
            });
        }
        if !dual.contains(h) {
            return Err(LpError::NotInDual(i + 1));
        }
    }
    let rank = BitMatrix::from_rows(n, words.to_vec()).rank();
    if rank != dual.dim() {
        return Err(LpError::NotSpanning {
            rank,
            expected: dual.dim(),
        });
    }
    Ok(())
}

/// LP decoding over `Q(H)`; an integral optimum is certified ML.
pub fn lp_decode(code: &LinearCode, words: &[BitVec], gamma: &[BigRational]) -> Result<(LpVertex, Verdict), LpError> {
    check_dual_words(code, words)?;
    let poly = build_fundamental_polytope(words, code.len())?;
    decode_on(code, &poly, gamma)
}

fn decode_on(code: &LinearCode, poly: &PolytopeLP, gamma: &[BigRational]) -> Result<(LpVertex, Verdict), LpError> {
    let vertex = lp_minimize(poly, gamma)?;
    if let Some(word) = vertex.as_word() {
        if !code.contains(&word) {
            return Err(LpError::NotACodeword);
        }
        return Ok((vertex, Verdict::MlCodeword));
    }
    Ok((vertex, Verdict::Pseudocodeword))
}

/// Exact rational copy of a float cost vector.
pub fn rational_costs(gamma: &[f64]) -> Result<Vec<BigRational>, LpError> {
    gamma
        .iter()
        .enumerate()
        .map(|(i, &g)| BigRational::from_float(g).ok_or(LpError::NonFinite(i + 1)))
        .collect()
}

/// Seeded random cost vector for one hunt trial: numerators in [-9, 9],
/// denominators in [1, 4].
#[must_use]
pub fn trial_costs(n: usize, seed: u64, trial: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Outcome of a pseudocodeword hunt.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuntReport {
    pub trials: u64,
    /// 1-based index of the witnessing trial.
    pub witness_trial: Option<u64>,
    pub witness_gamma: Option<Vec<String>>,
    pub witness_vertex: Option<Vec<String>>,
}

/// Runs `trials` LPs with seeded random costs and reports the first
/// fractional optimum. Finding none does not prove that none exists.
pub fn hunt_pseudocodeword(code: &LinearCode, words: &[BitVec], trials: u64, seed: u64) -> Result<HuntReport, LpError> {
    check_dual_words(code, words)?;
    let poly = build_fundamental_polytope(words, code.len())?;
    let n = code.len();
    let found = (0..trials)
        .into_par_iter()
        .map(|t| {
            let gamma = trial_costs(n, seed, t);
            decode_on(code, &poly, &gamma).map(|(v, verdict)| (t, gamma, v, verdict))
        })
        .find_map_first(|r| match r {
            Ok((t, gamma, v, Verdict::Pseudocodeword)) => Some(Ok((t, gamma, v))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()?;
    let show = |v: &[BigRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    Ok(match found {
        Some((t, gamma, v)) => HuntReport {
            trials,
            witness_trial: Some(t + 1),
            witness_gamma: Some(show(&gamma)),
            witness_vertex: Some(show(&v.x)),
        },
        None => HuntReport {
            trials,
            witness_trial: None,
            witness_gamma: None,
            witness_vertex: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&a| BigRational::from_integer(a.into())).collect()
    }

    #[test]
    fn odd_subset_row_counts() {
        let h = BitVec::parse01("1110").unwrap();
        let p = build_fundamental_polytope(&[h], 4).unwrap();
        assert_eq!(p.generated_rows(), 4);
        assert_eq!(p.rows().len(), 8 + 4);
    }

    #[test]
    fn box_only_extremes() {
        let p = build_fundamental_polytope(&[], 3).unwrap();
        let v = lp_minimize(&p, &ints(&[1, 2, 3])).unwrap();
        assert!(v.x.iter().all(Zero::is_zero) && v.objective.is_zero());
        let v = lp_minimize(&p, &ints(&[-1, -2, -3])).unwrap();
        assert!(v.x.iter().all(One::is_one));
        assert_eq!(v.objective, BigRational::from_integer((-6).into()));
    }

    #[test]
    fn parity_check_code_decodes_integrally() {
        let code = LinearCode::from_rows(&["110", "011"]);
        let h = BitVec::parse01("111").unwrap();
        let (v, verdict) = lp_decode(&code, &[h], &ints(&[-2, -3, 1])).unwrap();
        assert_eq!(verdict, Verdict::MlCodeword);
        assert_eq!(v.objective, BigRational::from_integer((-5).into()));
    }

    #[test]
    fn non_spanning_words_are_rejected() {
        let code = LinearCode::from_rows(&["1100", "0011"]);
        let h = BitVec::parse01("1100").unwrap();
        assert!(matches!(
            lp_decode(&code, &[h], &ints(&[1, 1, 1, 1])),
            Err(LpError::NotSpanning { rank: 1, expected: 2 })
        ));
    }
}
