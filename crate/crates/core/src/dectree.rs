//! Decomposition trees: binary trees whose internal nodes glue their two
//! children with a sum and a coordinate permutation, and whose leaves are
//! 3-connected, internally 4-connected codes.

use serde::{Deserialize, Serialize};

use crate::classify::{equivalent, has_minor, ClassifyError};
use crate::connectivity::{find_k_separation, SeparationError};
use crate::gf2core::{check_permutation, complement, BitMatrix, BitVec, CodeError, LinearCode};
use crate::graphic::{realize_graph, GraphError};
use crate::limits::Limits;
use crate::sums::{
    compose, decompose_three_bar_sum, decompose_three_sum, decompose_two_sum, SumError, SumKind,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TreeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error(transparent)]
    Sum(#[from] SumError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed tree at {path}: {detail}")]
    Malformed { path: String, detail: String },
    #[error("recomposition at {path} does not reproduce the stored code")]
    Mismatch { path: String },
    #[error("invalid tree JSON: {0}")]
    Json(String),
}

/// Node label: a leaf or the sum gluing the two children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SumTag {
    #[serde(rename = "leaf")]
    Leaf,
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "2sum")]
    Two,
    #[serde(rename = "3sum")]
    Three,
    #[serde(rename = "3barsum")]
    ThreeBar,
}

impl SumTag {
    #[must_use]
    pub fn kind(self) -> Option<SumKind> {
        match self {
            SumTag::Leaf => None,
            SumTag::Direct => Some(SumKind::Direct),
            SumTag::Two => Some(SumKind::Two),
            SumTag::Three => Some(SumKind::Three),
            SumTag::ThreeBar => Some(SumKind::ThreeBar),
        }
    }
}

impl From<SumKind> for SumTag {
    fn from(kind: SumKind) -> Self {
        match kind {
            SumKind::Direct => SumTag::Direct,
            SumKind::Two => SumTag::Two,
            SumKind::Three => SumTag::Three,
            SumKind::ThreeBar => SumTag::ThreeBar,
        }
    }
}

/// One node of a decomposition tree.
///
/// For an internal node, `code == permute(compose(left.code, sum, right.code), perm)`.
/// The fields are public so that malformed trees can be represented and
/// reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompNode {
    pub code: LinearCode,
    pub sum: SumTag,
    pub perm: Option<Vec<usize>>,
    pub children: Option<Box<[DecompNode; 2]>>,
}

impl DecompNode {
    #[must_use]
    pub fn leaf(code: LinearCode) -> Self {
        Self {
            code,
            sum: SumTag::Leaf,
            perm: None,
            children: None,
        }
    }

    #[must_use]
    pub fn internal(code: LinearCode, kind: SumKind, perm: Vec<usize>, left: Self, right: Self) -> Self {
        Self {
            code,
            sum: kind.into(),
            perm: Some(perm),
            children: Some(Box::new([left, right])),
        }
    }

    #[must_use]
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    #[must_use]
    pub fn depth(&self) -> usize {
        match &self.children {
            None => 0,
            Some(ch) => 1 + ch[0].depth().max(ch[1].depth()),
        }
    }

    #[must_use]
    pub fn node_count(&self) -> usize {
        match &self.children {
            None => 1,
            Some(ch) => 1 + ch[0].node_count() + ch[1].node_count(),
        }
    }
}

/// Which 3-sum flavour the builder uses at exact 3-separations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeMode {
    /// Only 3-sums.
    #[default]
    ThreeHomogeneous,
    /// Only 3̄-sums; the form the tree decoder accepts.
    ThreeBarHomogeneous,
}

/// Builds a complete decomposition tree.
///
/// Each node is split at the first of: a 1-separation (direct sum), an exact
/// 2-separation (2-sum), an exact 3-separation with both sides of size at
/// least four (3-sum or 3̄-sum by `mode`). A node with none of these is a
/// leaf, so every leaf is 3-connected and internally 4-connected.
pub fn build_complete_tree(code: &LinearCode, mode: TreeMode) -> Result<DecompNode, TreeError> {
    if let Some(sep) = find_k_separation(code, 1, 1)? {
        let rest = complement(code.len(), &sep.side);
        let left = code.restrict(&sep.side)?;
        let right = code.restrict(&rest)?;
        let perm: Vec<usize> = sep.side.iter().chain(&rest).copied().collect();
        debug_assert_eq!(left.direct_sum(&right).permute(&perm).ok().as_ref(), Some(code));
        return Ok(DecompNode::internal(
            code.clone(),
            SumKind::Direct,
            perm,
            build_complete_tree(&left, mode)?,
            build_complete_tree(&right, mode)?,
        ));
    }
    if code.len() < 4 {
        return Ok(DecompNode::leaf(code.clone()));
    }
    let split = if let Some(sep) = find_k_separation(code, 2, 2)? {
        Some(decompose_two_sum(code, &sep.side)?)
    } else if let Some(sep) = find_k_separation(code, 3, 4)? {
        Some(match mode {
            TreeMode::ThreeHomogeneous => decompose_three_sum(code, &sep.side)?,
            TreeMode::ThreeBarHomogeneous => decompose_three_bar_sum(code, &sep.side)?,
        })
    } else {
        None
    };
    match split {
        None => Ok(DecompNode::leaf(code.clone())),
        Some(d) => Ok(DecompNode::internal(
            code.clone(),
            d.kind,
            d.perm,
            build_complete_tree(&d.left, mode)?,
            build_complete_tree(&d.right, mode)?,
        )),
    }
}

/// Tree rules checked by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// The root carries the input code.
    R1,
    /// A node has a permutation exactly when it is internal.
    R2,
    /// A node is labelled leaf exactly when it has no children.
    R3,
    /// Each child is a proper minor of its parent.
    R4i,
    /// Recomposing the children reproduces the node's code.
    R4ii,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    pub rule: Rule,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Proper-minor checks skipped because the parent exceeds the search bound.
    pub unchecked: Vec<String>,
}

impl ValidationReport {
    #[must_use]
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the tree rules, returning every violation found.
///
/// When `input` is given, the root must carry exactly that code. The
/// proper-minor rule runs a minor search, which is only attempted for
/// parents within [`Limits::equivalence_len`]; larger parents are listed as
/// unchecked.
#[must_use]
pub fn validate(root: &DecompNode, input: Option<&LinearCode>) -> ValidationReport {
    let mut report = ValidationReport::default();
    if let Some(c) = input {
        if &root.code != c {
            report.violations.push(Violation {
                path: "root".into(),
                rule: Rule::R1,
                detail: "root code differs from the input code".into(),
            });
        }
    }
    validate_node(root, "root".into(), &mut report);
    report
}

fn validate_node(node: &DecompNode, path: String, report: &mut ValidationReport) {
    let mut found: Vec<(Rule, String)> = Vec::new();
    let mut push = |rule, detail: String| found.push((rule, detail));
    if node.perm.is_some() == node.is_leaf() {
        push(
            Rule::R2,
            if node.is_leaf() {
                "leaf carries a permutation".into()
            } else {
                "internal node has no permutation".into()
            },
        );
    }
    if (node.sum == SumTag::Leaf) != node.is_leaf() {
        push(
            Rule::R3,
            if node.is_leaf() {
                format!("childless node labelled {:?}", node.sum)
            } else {
                "node with children labelled leaf".into()
            },
        );
    }
    if let Some(children) = &node.children {
        check_children(node, children, &path, &mut push, &mut report.unchecked);
    }
    report.violations.extend(found.into_iter().map(|(rule, detail)| Violation {
        path: path.clone(),
        rule,
        detail,
    }));
    if let Some(children) = &node.children {
        for (side, child) in ["L", "R"].iter().zip(children.iter()) {
            validate_node(child, format!("{path}/{side}"), report);
        }
    }
}

fn check_children(
    node: &DecompNode,
    children: &[DecompNode; 2],
    path: &str,
    push: &mut impl FnMut(Rule, String),
    unchecked: &mut Vec<String>,
) {
    if let (Some(kind), Some(perm)) = (node.sum.kind(), &node.perm) {
        match compose(&children[0].code, kind, &children[1].code)
            .map_err(|e| e.to_string())
            .and_then(|c| c.permute(perm).map_err(|e| e.to_string()))
        {
            Ok(c) if c == node.code => {}
            Ok(_) => push(Rule::R4ii, "recomposed code differs from the node code".into()),
            Err(e) => push(Rule::R4ii, e),
        }
    }
    let bound = Limits::global().equivalence_len;
    for (side, child) in ["L", "R"].iter().zip(children.iter()) {
        if child.code.len() >= node.code.len() {
            push(Rule::R4i, format!("{side} child is not shorter than its parent"));
        } else if node.code.len() > bound {
            unchecked.push(format!("{path}/{side}"));
        } else {
            match has_minor(&node.code, &child.code) {
                Ok(Some(_)) => {}
                Ok(None) => push(Rule::R4i, format!("{side} child is not a minor of its parent")),
                Err(e) => push(Rule::R4i, e.to_string()),
            }
        }
    }
}

/// Recomposes the tree bottom-up, checking each node against its stored code.
pub fn recompose(root: &DecompNode) -> Result<LinearCode, TreeError> {
    recompose_at(root, "root")
}

fn recompose_at(node: &DecompNode, path: &str) -> Result<LinearCode, TreeError> {
    let Some(children) = &node.children else {
        return Ok(node.code.clone());
    };
    let malformed = |detail: &str| TreeError::Malformed {
        path: path.to_string(),
        detail: detail.to_string(),
    };
    let kind = node.sum.kind().ok_or_else(|| malformed("node with children labelled leaf"))?;
    let perm = node.perm.as_ref().ok_or_else(|| malformed("internal node has no permutation"))?;
    let left = recompose_at(&children[0], &format!("{path}/L"))?;
    let right = recompose_at(&children[1], &format!("{path}/R"))?;
    let code = compose(&left, kind, &right)?.permute(perm)?;
    if code != node.code {
        return Err(TreeError::Mismatch {
            path: path.to_string(),
        });
    }
    Ok(code)
}

/// Leaves in left-to-right order.
#[must_use]
pub fn leaves(root: &DecompNode) -> Vec<&DecompNode> {
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        match &node.children {
            None => out.push(node),
            Some(ch) => {
                stack.push(&ch[1]);
                stack.push(&ch[0]);
            }
        }
    }
    out
}

/// True if every internal node's left child is a leaf that is graphic or
/// equivalent to a member of `catalog`.
pub fn is_unary(root: &DecompNode, catalog: &[LinearCode]) -> Result<bool, TreeError> {
    let Some(children) = &root.children else {
        return Ok(true);
    };
    let left = &children[0];
    if !left.is_leaf() {
        return Ok(false);
    }
    let known = realize_graph(&left.code)?.is_some()
        || catalog
            .iter()
            .map(|d| equivalent(&left.code, d))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .any(Option::is_some);
    Ok(known && is_unary(&children[1], catalog)?)
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    sum: SumTag,
    n: usize,
    code: Vec<String>,
    perm: Option<Vec<usize>>,
    children: Option<Vec<JsonNode>>,
}

fn to_json_node(node: &DecompNode) -> JsonNode {
    JsonNode {
        sum: node.sum,
        n: node.code.len(),
        code: node.code.generator().rows().iter().map(ToString::to_string).collect(),
        perm: node.perm.as_ref().map(|p| p.iter().map(|i| i + 1).collect()),
        children: node
            .children
            .as_ref()
            .map(|ch| ch.iter().map(to_json_node).collect()),
    }
}

fn from_json_node(node: JsonNode, path: &str) -> Result<DecompNode, TreeError> {
    let bad = |detail: String| TreeError::Malformed {
        path: path.to_string(),
        detail,
    };
    let mut rows = Vec::with_capacity(node.code.len());
    for r in &node.code {
        let v = BitVec::parse01(r).ok_or_else(|| bad(format!("row `{r}` is not a 0/1 string")))?;
        if v.len() != node.n {
            return Err(bad(format!("row `{r}` does not have length {}", node.n)));
        }
        rows.push(v);
    }
    let code = LinearCode::from_generator(&BitMatrix::from_rows(node.n, rows));
    let perm = match node.perm {
        None => None,
        Some(p) => {
            if p.contains(&0) {
                return Err(bad("permutation images are 1-based".into()));
            }
            let p: Vec<usize> = p.into_iter().map(|i| i - 1).collect();
            check_permutation(node.n, &p).map_err(|e| bad(e.to_string()))?;
            Some(p)
        }
    };
    let children = match node.children {
        None => None,
        Some(ch) => {
            let [l, r]: [JsonNode; 2] = ch
                .try_into()
                .map_err(|_| bad("a node has either no children or exactly two".into()))?;
            Some(Box::new([
                from_json_node(l, &format!("{path}/L"))?,
                from_json_node(r, &format!("{path}/R"))?,
            ]))
        }
    };
    Ok(DecompNode {
        code,
        sum: node.sum,
        perm,
        children,
    })
}

/// Serializes a tree. Codes are written as generator row strings and
/// permutations as 1-based image lists.
#[must_use]
pub fn to_json(root: &DecompNode) -> serde_json::Value {
    serde_json::to_value(to_json_node(root)).expect("tree serialization cannot fail")
}

/// Parses a tree written by [`to_json`].
pub fn from_json(value: &serde_json::Value) -> Result<DecompNode, TreeError> {
    let node: JsonNode =
        serde_json::from_value(value.clone()).map_err(|e| TreeError::Json(e.to_string()))?;
    from_json_node(node, "root")
}
