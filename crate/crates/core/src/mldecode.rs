//! Maximum-likelihood decoding as linear minimization over a code.
//!
//! Decoding a received word on a memoryless channel is the problem
//! `min <γ, c>` over codewords `c`, with `γ_i = ln(Pr[y_i|0] / Pr[y_i|1])`.
//! [`linmin_tree`] solves it recursively along a 3̄-homogeneous
//! decomposition tree, calling a leaf solver at each leaf; node subproblems
//! append a large weight `M = 1 + Σ|γ_i|` on the glued coordinates to force
//! each overlap pattern in turn.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::classify::{equivalent, Catalog};
use crate::dectree::{DecompNode, SumTag};
use crate::gf2core::{BitVec, CodeError, LinearCode};
use crate::graphic::{graphic_linmin, realize_graph, Graph, GraphError};
use crate::limits::Limits;

/// Comparison tolerance for real-valued costs.
pub const COST_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecodeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cost vector has length {got}, code has length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cost entry {0} is not finite")]
    NonFinite(usize),
    #[error("zero likelihood for symbol {symbol} at position {position}")]
    ZeroLikelihood { position: usize, symbol: usize },
    #[error("symbol {symbol} at position {position} is outside the channel alphabet of size {size}")]
    SymbolOutOfRange { position: usize, symbol: usize, size: usize },
    #[error("invalid channel: {0}")]
    Channel(String),
    #[error("tree contains a 3-sum node at {0}; rebuild it in 3bar-homogeneous mode")]
    ThreeSumNode(String),
    #[error("no leaf solver accepts the [{n}, {k}] leaf at {path}")]
    UnsolvableLeaf { path: String, n: usize, k: usize },
    #[error("malformed tree at {0}")]
    MalformedTree(String),
    #[error("forcing weight failed at {0}")]
    ForcingViolated(String),
    #[error("the zero code has no minimum distance")]
    ZeroCode,
}

/// Memoryless channel with binary input and a finite output alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    /// `likelihood[x][y] = Pr[y | x]`.
    likelihood: [Vec<f64>; 2],
}

impl Channel {
    /// Binary symmetric channel with crossover probability `p`.
    pub fn bsc(p: f64) -> Result<Self, DecodeError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(DecodeError::Channel(format!("crossover probability {p} outside [0, 1]")));
        }
        Self::from_table(vec![1.0 - p, p], vec![p, 1.0 - p])
    }

    /// Channel from the rows `Pr[· | 0]` and `Pr[· | 1]`, each summing to 1.
    pub fn from_table(given_zero: Vec<f64>, given_one: Vec<f64>) -> Result<Self, DecodeError> {
        if given_zero.len() != given_one.len() || given_zero.is_empty() {
            return Err(DecodeError::Channel("rows must be nonempty and of equal length".into()));
        }
        for row in [&given_zero, &given_one] {
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(DecodeError::Channel("probabilities must lie in [0, 1]".into()));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > COST_TOLERANCE {
                return Err(DecodeError::Channel(format!("row sums to {total}, not 1")));
            }
        }
        Ok(Self {
            likelihood: [given_zero, given_one],
        })
    }

    #[must_use]
    pub fn alphabet_size(&self) -> usize {
        self.likelihood[0].len()
    }

    /// `Pr[y | x]`.
    #[must_use]
    pub fn likelihood(&self, x: bool, y: usize) -> f64 {
        self.likelihood[usize::from(x)][y]
    }

    /// Parses `bsc p`, or `table` followed by the two likelihood rows.
    pub fn parse(text: &str) -> Result<Self, DecodeError> {
        let lines: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        let bad = |m: &str| DecodeError::Channel(m.to_string());
        let first = lines.first().ok_or_else(|| bad("empty channel file"))?;
        let mut words = first.split_whitespace();
        match words.next() {
            Some("bsc") => {
                let p = words
                    .next()
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| bad("expected `bsc p`"))?;
                Self::bsc(p)
            }
            Some("table") => {
                if lines.len() != 3 {
                    return Err(bad("a table needs exactly two rows"));
                }
                let row = |l: &str| -> Result<Vec<f64>, DecodeError> {
                    l.split_whitespace()
                        .map(|s| s.parse::<f64>().map_err(|_| bad("bad probability")))
                        .collect()
                };
                Self::from_table(row(lines[1])?, row(lines[2])?)
            }
            _ => Err(bad("expected `bsc p` or `table`")),
        }
    }
}

/// Cost vector `γ_i = ln(Pr[y_i|0] / Pr[y_i|1])` for received symbols `y`.
pub fn cost_from_channel(received: &[usize], channel: &Channel) -> Result<Vec<f64>, DecodeError> {
    received
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            if y >= channel.alphabet_size() {
                return Err(DecodeError::SymbolOutOfRange {
                    position: i + 1,
                    symbol: y,
                    size: channel.alphabet_size(),
                });
            }
            let (p0, p1) = (channel.likelihood(false, y), channel.likelihood(true, y));
            if p0 <= 0.0 || p1 <= 0.0 {
                return Err(DecodeError::ZeroLikelihood { position: i + 1, symbol: y });
            }
            Ok((p0 / p1).ln())
        })
        .collect()
}

/// `<γ, c>`, summed in coordinate order.
#[must_use]
pub fn cost_of(word: &BitVec, gamma: &[f64]) -> f64 {
    word.iter_ones().map(|i| gamma[i]).sum()
}

fn check_gamma(n: usize, gamma: &[f64]) -> Result<(), DecodeError> {
    if gamma.len() != n {
        return Err(DecodeError::LengthMismatch {
            expected: n,
            got: gamma.len(),
        });
    }
    if let Some(i) = gamma.iter().position(|g| !g.is_finite()) {
        return Err(DecodeError::NonFinite(i + 1));
    }
    Ok(())
}

/// Exhaustive minimizer of `<γ, c>`; ties go to the lexicographically least
/// codeword.
pub fn linmin_bruteforce(code: &LinearCode, gamma: &[f64]) -> Result<(BitVec, f64), DecodeError> {
    check_gamma(code.len(), gamma)?;
    let mut best = BitVec::zeros(code.len());
    let mut best_cost = 0.0;
    code.try_for_each_codeword(|w| {
        let c = cost_of(w, gamma);
        if c < best_cost || (c == best_cost && w < &best) {
            best = w.clone();
            best_cost = c;
        }
    })?;
    Ok((best, best_cost))
}

/// A strategy for minimizing `<γ, c>` over a leaf code.
pub trait LeafSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// `None` if the solver does not apply to this code.
    fn solve(&self, code: &LinearCode, gamma: &[f64]) -> Option<Result<(BitVec, f64), DecodeError>>;
}

/// Brute force over all codewords, for dimension at most `max_dim`.
pub struct ExhaustiveSolver {
    pub max_dim: usize,
}

impl LeafSolver for ExhaustiveSolver {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn solve(&self, code: &LinearCode, gamma: &[f64]) -> Option<Result<(BitVec, f64), DecodeError>> {
        (code.dim() <= self.max_dim && Limits::global().allows_enumeration(code.dim()))
            .then(|| linmin_bruteforce(code, gamma))
    }
}

/// Minimum-weight Eulerian subgraph on a cached graph realization.
#[derive(Default)]
pub struct GraphicSolver {
    cache: Mutex<HashMap<LinearCode, Option<Graph>>>,
}

impl LeafSolver for GraphicSolver {
    fn name(&self) -> &'static str {
        "graphic"
    }

    fn solve(&self, code: &LinearCode, gamma: &[f64]) -> Option<Result<(BitVec, f64), DecodeError>> {
        if code.len() > Limits::global().realization_len || code.is_empty() {
            return None;
        }
        let graph = {
            let mut cache = self.cache.lock().expect("cache lock");
            if !cache.contains_key(code) {
                let g = realize_graph(code).ok().flatten();
                cache.insert(code.clone(), g);
            }
            cache[code].clone()
        }?;
        Some(graphic_linmin(&graph, gamma).map_err(DecodeError::from))
    }
}

/// Solves leaves equivalent to a catalog code by brute force on the catalog
/// representative.
pub struct CatalogSolver;

impl LeafSolver for CatalogSolver {
    fn name(&self) -> &'static str {
        "catalog"
    }

    fn solve(&self, code: &LinearCode, gamma: &[f64]) -> Option<Result<(BitVec, f64), DecodeError>> {
        for entry in Catalog::standard().entries() {
            if entry.code.len() != code.len() || code.len() > Limits::global().equivalence_len {
                continue;
            }
            if let Ok(Some(perm)) = equivalent(code, &entry.code) {
                let mut mapped = vec![0.0; gamma.len()];
                for (i, &p) in perm.iter().enumerate() {
                    mapped[p] = gamma[i];
                }
                return Some(linmin_bruteforce(&entry.code, &mapped).map(|(w, _)| {
                    let word = BitVec::from_bools(&perm.iter().map(|&p| w.get(p)).collect::<Vec<_>>());
                    let cost = cost_of(&word, gamma);
                    (word, cost)
                }));
            }
        }
        None
    }
}

/// Leaf solvers tried in order.
pub struct DecodeContext {
    solvers: Vec<Box<dyn LeafSolver>>,
}

impl Default for DecodeContext {
    /// Exhaustive (dimension at most 20), then graphic, then catalog.
    fn default() -> Self {
        Self {
            solvers: vec![
                Box::new(ExhaustiveSolver { max_dim: 20 }),
                Box::new(GraphicSolver::default()),
                Box::new(CatalogSolver),
            ],
        }
    }
}

impl DecodeContext {
    #[must_use]
    pub fn new(solvers: Vec<Box<dyn LeafSolver>>) -> Self {
        Self { solvers }
    }

    #[must_use]
    pub fn solver_names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    fn solve_leaf(&self, code: &LinearCode, gamma: &[f64], path: &str) -> Result<(BitVec, f64), DecodeError> {
        for s in &self.solvers {
            if let Some(r) = s.solve(code, gamma) {
                return r;
            }
        }
        Err(DecodeError::UnsolvableLeaf {
            path: path.to_string(),
            n: code.len(),
            k: code.dim(),
        })
    }

    /// Minimizes `<γ, c>` over the root code of `tree`.
    pub fn linmin_tree(&self, tree: &DecompNode, gamma: &[f64]) -> Result<(BitVec, f64), DecodeError> {
        check_gamma(tree.code.len(), gamma)?;
        let word = self.solve_node(tree, gamma, "root")?;
        let cost = cost_of(&word, gamma);
        Ok((word, cost))
    }

    fn solve_node(&self, node: &DecompNode, gamma: &[f64], path: &str) -> Result<BitVec, DecodeError> {
        let Some(children) = &node.children else {
            return Ok(self.solve_leaf(&node.code, gamma, path)?.0);
        };
        let perm = node
            .perm
            .as_ref()
            .ok_or_else(|| DecodeError::MalformedTree(path.to_string()))?;
        if perm.len() != gamma.len() {
            return Err(DecodeError::MalformedTree(path.to_string()));
        }
        let local: Vec<f64> = perm.iter().map(|&p| gamma[p]).collect();
        let (left, right) = (&children[0], &children[1]);
        let lpath = format!("{path}/L");
        let rpath = format!("{path}/R");
        let composed = match node.sum {
            SumTag::Leaf => return Err(DecodeError::MalformedTree(path.to_string())),
            SumTag::Three => return Err(DecodeError::ThreeSumNode(path.to_string())),
            SumTag::Direct => {
                let n1 = left.code.len();
                let a = self.solve_node(left, &local[..n1], &lpath)?;
                let b = self.solve_node(right, &local[n1..], &rpath)?;
                a.concat(&b)
            }
            SumTag::Two => self.solve_two_sum(left, right, &local, &lpath, &rpath)?,
            SumTag::ThreeBar => self.solve_three_bar_sum(left, right, &local, &lpath, &rpath)?,
        };
        let mut word = BitVec::zeros(gamma.len());
        for (p, &target) in perm.iter().enumerate() {
            if composed.get(p) {
                word.set(target, true);
            }
        }
        Ok(word)
    }

    fn sub_minimum(&self, node: &DecompNode, gamma: &[f64], path: &str) -> Result<(BitVec, f64), DecodeError> {
        let w = self.solve_node(node, gamma, path)?;
        let c = cost_of(&w, gamma);
        Ok((w, c))
    }

    fn solve_two_sum(
        &self,
        left: &DecompNode,
        right: &DecompNode,
        gamma: &[f64],
        lpath: &str,
        rpath: &str,
    ) -> Result<BitVec, DecodeError> {
        let n1 = left.code.len();
        let big = big_weight(gamma);
        let head = &gamma[..n1 - 1];
        let mut minima = Vec::with_capacity(2);
        for (bit, sign) in [(false, 1.0), (true, -1.0)] {
            let mut alpha = head.to_vec();
            alpha.push(sign * big);
            let (w, mu) = self.sub_minimum(left, &alpha, lpath)?;
            if w.get(n1 - 1) != bit {
                return Err(DecodeError::ForcingViolated(lpath.to_string()));
            }
            minima.push((w, mu));
        }
        let mut beta = vec![minima[1].1 - minima[0].1 + big];
        beta.extend_from_slice(&gamma[n1 - 1..]);
        let (hat, _) = self.sub_minimum(right, &beta, rpath)?;
        let chosen = &minima[usize::from(hat.get(0))].0;
        Ok(truncate(chosen, n1 - 1).concat(&drop_front(&hat, 1)))
    }

    fn solve_three_bar_sum(
        &self,
        left: &DecompNode,
        right: &DecompNode,
        gamma: &[f64],
        lpath: &str,
        rpath: &str,
    ) -> Result<BitVec, DecodeError> {
        let n1 = left.code.len();
        let big = big_weight(gamma);
        let head = &gamma[..n1 - 3];
        const PATTERNS: [[f64; 3]; 4] = [
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ];
        const TAILS: [[bool; 3]; 4] = [
            [false, false, false],
            [false, true, true],
            [true, false, true],
            [true, true, false],
        ];
        let mut minima = Vec::with_capacity(4);
        for (pattern, tail) in PATTERNS.iter().zip(&TAILS) {
            let mut alpha = head.to_vec();
            alpha.extend(pattern.iter().map(|s| s * big));
            let (w, mu) = self.sub_minimum(left, &alpha, lpath)?;
            if (0..3).any(|i| w.get(n1 - 3 + i) != tail[i]) {
                return Err(DecodeError::ForcingViolated(lpath.to_string()));
            }
            minima.push((w, mu));
        }
        let mu: Vec<f64> = minima.iter().map(|m| m.1).collect();
        let mut beta = vec![
            -(mu[0] + mu[1] - mu[2] - mu[3]) / 2.0 + big,
            -(mu[0] - mu[1] + mu[2] - mu[3]) / 2.0 + big,
            -(mu[0] - mu[1] - mu[2] + mu[3]) / 2.0 + big,
        ];
        beta.extend_from_slice(&gamma[n1 - 3..]);
        let (hat, _) = self.sub_minimum(right, &beta, rpath)?;
        let key = [hat.get(0), hat.get(1), hat.get(2)];
        let index = TAILS
            .iter()
            .position(|t| *t == key)
            .ok_or_else(|| DecodeError::ForcingViolated(rpath.to_string()))?;
        Ok(truncate(&minima[index].0, n1 - 3).concat(&drop_front(&hat, 3)))
    }
}

fn big_weight(gamma: &[f64]) -> f64 {
    1.0 + gamma.iter().map(|g| g.abs()).sum::<f64>()
}

fn truncate(w: &BitVec, len: usize) -> BitVec {
    w.select(&(0..len).collect::<Vec<_>>())
}

fn drop_front(w: &BitVec, count: usize) -> BitVec {
    w.select(&(count..w.len()).collect::<Vec<_>>())
}

/// [`DecodeContext::linmin_tree`] with the default leaf solvers.
pub fn linmin_tree(tree: &DecompNode, gamma: &[f64]) -> Result<(BitVec, f64), DecodeError> {
    DecodeContext::default().linmin_tree(tree, gamma)
}

/// Minimum distance from `n` minimizations with the cost vectors
/// `γ⁽ⁱ⁾ = (1, …, 1, -n, 1, …, 1)`: `d = n + 1 + min_i min_c <γ⁽ⁱ⁾, c>`.
///
/// Uses the tree decoder when a tree is given, otherwise brute force.
pub fn min_distance(code: &LinearCode, tree: Option<&DecompNode>) -> Result<usize, DecodeError> {
    if code.dim() == 0 {
        return Err(DecodeError::ZeroCode);
    }
    let n = code.len();
    let ctx = DecodeContext::default();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let mut gamma = vec![1.0; n];
        gamma[i] = -(n as f64);
        let (_, cost) = match tree {
            Some(t) => ctx.linmin_tree(t, &gamma)?,
            None => linmin_bruteforce(code, &gamma)?,
        };
        best = best.min(cost);
    }
    Ok((n as f64 + 1.0 + best).round() as usize)
}
