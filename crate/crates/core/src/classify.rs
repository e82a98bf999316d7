//! Permutation equivalence, minor search, the named-code catalog, and the
//! graphic / regular / geometrically-perfect classifiers.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{next_combination, SeparationError};
use crate::dectree::{build_complete_tree, leaves, TreeError, TreeMode};
use crate::gf2core::{complement, parse_code, rank_u64, CodeError, LinearCode};
use crate::graphic::{realize_graph, GraphError};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error("tree construction failed: {0}")]
    Tree(String),
    #[error("equivalence and minor search support length at most {bound}, got {n}")]
    LengthBound { n: usize, bound: usize },
    #[error("catalog entry {name} has parameters [{n},{k},{d}], expected [{en},{ek},{ed}]")]
    CatalogParameters {
        name: &'static str,
        n: usize,
        k: usize,
        d: usize,
        en: usize,
        ek: usize,
        ed: usize,
    },
    #[error("the excluded-minor and decomposition-tree tests disagree on {0}")]
    MethodsDisagree(&'static str),
    #[error("neither classification method is within bounds for length {0}")]
    OutOfBounds(usize),
}

impl From<TreeError> for ClassifyError {
    fn from(e: TreeError) -> Self {
        ClassifyError::Tree(e.to_string())
    }
}

fn check_len(n: usize) -> Result<(), ClassifyError> {
    let bound = Limits::global().equivalence_len;
    if n > bound {
        Err(ClassifyError::LengthBound { n, bound })
    } else {
        Ok(())
    }
}

/// Weight distribution `A_0..A_n`.
pub fn weight_enumerator(code: &LinearCode) -> Result<Vec<u64>, CodeError> {
    let mut counts = vec![0u64; code.len() + 1];
    code.try_for_each_codeword(|w| counts[w.weight()] += 1)?;
    Ok(counts)
}

/// For the side (code or dual) of smaller dimension: the weight
/// distribution, and for every coordinate the distribution of the words
/// covering it.
fn invariants(code: &LinearCode) -> Result<(Vec<u64>, Vec<Vec<u32>>), CodeError> {
    let side = if code.dim() <= code.len() - code.dim() {
        code.clone()
    } else {
        code.dual()
    };
    let n = code.len();
    let mut total = vec![0u64; n + 1];
    let mut per_coord = vec![vec![0u32; n + 1]; n];
    side.try_for_each_codeword(|w| {
        let wt = w.weight();
        total[wt] += 1;
        for j in w.iter_ones() {
            per_coord[j][wt] += 1;
        }
    })?;
    Ok((total, per_coord))
}

/// Incremental linear-relation tracker over packed generator columns.
#[derive(Clone)]
struct Relations {
    basis: [u64; 64],
    combo: [u64; 64],
}

impl Relations {
    fn new() -> Self {
        Self {
            basis: [0; 64],
            combo: [0; 64],
        }
    }

    /// Adds the column at depth `d`. Returns `None` if it is independent of
    /// the earlier columns, otherwise the unique relation it completes.
    fn push(&mut self, column: u64, d: usize) -> Option<u64> {
        let mut v = column;
        let mut combo = 1u64 << d;
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.basis[lead] == 0 {
                self.basis[lead] = v;
                self.combo[lead] = combo;
                return None;
            }
            v ^= self.basis[lead];
            combo ^= self.combo[lead];
        }
        Some(combo)
    }
}

/// Finds `π` with `permute(a, π) == b`, or `None` if the codes are not
/// permutation-equivalent.
///
/// Candidate images are filtered by per-coordinate weight profiles, and a
/// partial assignment survives only if the assigned columns of both codes
/// satisfy the same linear relations.
pub fn equivalent(a: &LinearCode, b: &LinearCode) -> Result<Option<Vec<usize>>, ClassifyError> {
    check_len(a.len())?;
    check_len(b.len())?;
    if a.len() != b.len() || a.dim() != b.dim() {
        return Ok(None);
    }
    let (ta, sa) = invariants(a)?;
    let (tb, sb) = invariants(b)?;
    if ta != tb {
        return Ok(None);
    }
    Ok(match_columns(a, b, &sa, &sb))
}

fn match_columns(a: &LinearCode, b: &LinearCode, sa: &[Vec<u32>], sb: &[Vec<u32>]) -> Option<Vec<usize>> {
    let n = a.len();
    let (a, b) = if a.dim() <= 64 { (a.clone(), b.clone()) } else { (a.dual(), b.dual()) };
    let ca = a.column_masks()?;
    let cb = b.column_masks()?;
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(0, &ca, &cb, sa, sb, &mut perm, &mut used, &Relations::new(), &Relations::new()) {
        debug_assert_eq!(a.permute(&perm).ok().as_ref(), Some(&b));
        Some(perm)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    d: usize,
    ca: &[u64],
    cb: &[u64],
    sa: &[Vec<u32>],
    sb: &[Vec<u32>],
    perm: &mut [usize],
    used: &mut [bool],
    ra: &Relations,
    rb: &Relations,
) -> bool {
    if d == ca.len() {
        return true;
    }
    for j in 0..cb.len() {
        if used[j] || sa[d] != sb[j] {
            continue;
        }
        let mut na = ra.clone();
        let mut nb = rb.clone();
        if na.push(ca[d], d) != nb.push(cb[j], d) {
            continue;
        }
        perm[d] = j;
        used[j] = true;
        if assign(d + 1, ca, cb, sa, sb, perm, used, &na, &nb) {
            return true;
        }
        used[j] = false;
    }
    perm[d] = usize::MAX;
    false
}

/// Witness that `permute(code.minor(punctured, shortened), perm) == target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorMatch {
    pub punctured: Vec<usize>,
    pub shortened: Vec<usize>,
    pub perm: Vec<usize>,
}

/// Searches for a minor of `code` equivalent to `target`.
///
/// Every minor can be reached by puncturing a set that is independent in the
/// parity-check columns and shortening a set that is independent in the
/// generator columns; this fixes `|Y| = k - k'` and `|X| = (n - n') - |Y|`.
/// Pairs are visited in lexicographic order of `(X, Y)` and the first match
/// is returned.
pub fn has_minor(code: &LinearCode, target: &LinearCode) -> Result<Option<MinorMatch>, ClassifyError> {
    check_len(code.len())?;
    let (n, k) = (code.len(), code.dim());
    let (nt, kt) = (target.len(), target.dim());
    if nt > n || kt > k || nt - kt > n - k {
        return Ok(None);
    }
    let shorten = k - kt;
    let puncture = n - nt - shorten;
    let (target_total, target_profile) = invariants(target)?;
    let gen_cols = code.column_masks().expect("length bound keeps the dimension small");
    let par_cols = code.dual().column_masks().expect("length bound keeps the dimension small");

    let mut xs = Vec::new();
    let mut x: Vec<usize> = (0..puncture).collect();
    loop {
        if rank_u64(x.iter().map(|&i| par_cols[i])) == puncture {
            xs.push(x.clone());
        }
        if puncture == 0 || !next_combination(&mut x, n) {
            break;
        }
    }
    let found = xs.par_iter().find_map_first(|x| {
        let rest = complement(n, x);
        let mut pick: Vec<usize> = (0..shorten).collect();
        loop {
            let y: Vec<usize> = pick.iter().map(|&i| rest[i]).collect();
            if rank_u64(y.iter().map(|&i| gen_cols[i])) == shorten {
                if let Some(perm) = try_minor(code, x, &y, target, &target_total, &target_profile) {
                    return Some(MinorMatch {
                        punctured: x.clone(),
                        shortened: y,
                        perm,
                    });
                }
            }
            if shorten == 0 || !next_combination(&mut pick, rest.len()) {
                return None;
            }
        }
    });
    Ok(found)
}

fn try_minor(
    code: &LinearCode,
    x: &[usize],
    y: &[usize],
    target: &LinearCode,
    target_total: &[u64],
    target_profile: &[Vec<u32>],
) -> Option<Vec<usize>> {
    let minor = code.minor(x, y).ok()?;
    let (total, profile) = invariants(&minor).ok()?;
    if total != target_total {
        return None;
    }
    match_columns(&minor, target, &profile, target_profile)
}

/// A named code with its claimed parameters `[n, k, d]`.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub code: LinearCode,
    pub params: (usize, usize, usize),
}

/// The named codes used by the classifiers.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

const CATALOG_SOURCES: [(&str, &str, (usize, usize, usize)); 7] = [
    ("H7", include_str!("../data/h7.code"), (7, 4, 3)),
    ("SIMPLEX7", include_str!("../data/simplex7.code"), (7, 3, 4)),
    ("R10", include_str!("../data/r10.code"), (10, 5, 4)),
    ("CK5D", include_str!("../data/ck5d.code"), (10, 4, 4)),
    ("CK33D", include_str!("../data/ck33d.code"), (9, 5, 3)),
    ("CV8D", include_str!("../data/cv8d.code"), (12, 7, 3)),
    ("EXT_HAMMING8", include_str!("../data/ext_hamming8.code"), (8, 4, 4)),
];

impl Catalog {
    /// Parses the bundled data files and verifies every `[n, k, d]` by
    /// brute force.
    pub fn load() -> Result<Self, ClassifyError> {
        let mut entries = Vec::with_capacity(CATALOG_SOURCES.len());
        for (name, text, (en, ek, ed)) in CATALOG_SOURCES {
            let code = parse_code(text)?;
            let (n, k, d) = (code.len(), code.dim(), code.min_weight()?);
            if (n, k, d) != (en, ek, ed) {
                return Err(ClassifyError::CatalogParameters { name, n, k, d, en, ek, ed });
            }
            entries.push(CatalogEntry {
                name,
                code,
                params: (n, k, d),
            });
        }
        Ok(Self { entries })
    }

    /// The verified catalog, loaded once per process.
    ///
    /// # Panics
    /// Panics if the bundled data fails verification.
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::load().expect("bundled catalog verifies"))
    }

    #[must_use]
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// # Panics
    /// Panics on an unknown name.
    #[must_use]
    pub fn get(&self, name: &str) -> &LinearCode {
        &self
            .entries
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("unknown catalog entry {name}"))
            .code
    }
}

/// Which classifier produced a piece of evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    ExcludedMinor,
    DecompositionTree,
    Realization,
}

/// Evidence behind one flag of a [`ClassReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub flag: &'static str,
    pub method: Method,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub graphic: bool,
    pub cographic: bool,
    pub regular: bool,
    pub geometrically_perfect: bool,
    pub witnesses: Vec<Evidence>,
}

const GRAPHIC_EXCLUDED: [&str; 4] = ["H7", "SIMPLEX7", "CK5D", "CK33D"];
const REGULAR_EXCLUDED: [&str; 2] = ["H7", "SIMPLEX7"];
const PERFECT_EXCLUDED: [&str; 3] = ["SIMPLEX7", "R10", "CK5D"];
const PERFECT_LEAVES: [&str; 3] = ["H7", "CK33D", "CV8D"];

fn first_excluded_minor(
    code: &LinearCode,
    names: &[&'static str],
) -> Result<Option<(&'static str, MinorMatch)>, ClassifyError> {
    let catalog = Catalog::standard();
    for &name in names {
        if let Some(m) = has_minor(code, catalog.get(name))? {
            return Ok(Some((name, m)));
        }
    }
    Ok(None)
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn minor_evidence(flag: &'static str, found: &Option<(&'static str, MinorMatch)>) -> Evidence {
    Evidence {
        flag,
        method: Method::ExcludedMinor,
        detail: match found {
            None => "no excluded minor".into(),
            Some((name, m)) => format!(
                "minor equivalent to {name}: punctured {:?}, shortened {:?}",
                one_based(&m.punctured),
                one_based(&m.shortened)
            ),
        },
    }
}

fn is_graphic_by_realization(code: &LinearCode) -> Result<Option<bool>, ClassifyError> {
    if code.len() > Limits::global().realization_len {
        return Ok(None);
    }
    Ok(Some(realize_graph(code)?.is_some()))
}

fn equivalent_to_any(code: &LinearCode, names: &[&'static str]) -> Result<Option<&'static str>, ClassifyError> {
    let catalog = Catalog::standard();
    for &name in names {
        let target = catalog.get(name);
        if target.len() == code.len() && equivalent(code, target)?.is_some() {
            return Ok(Some(name));
        }
    }
    Ok(None)
}

/// Classifies `code` as graphic, cographic, regular and geometrically perfect.
///
/// The excluded-minor test runs when the length is within the minor-search
/// bound. The decomposition-tree test runs when the length is within the
/// separation bound: a 3-homogeneous tree for regularity (leaves graphic,
/// cographic or equivalent to R10) and a 3̄-homogeneous tree for geometric
/// perfection (leaves graphic or equivalent to H7, CK33D or CV8D). Graph
/// realization gives a third check of the graphic flags. Whenever two
/// methods run on the same flag they must agree.
pub fn classify_code(code: &LinearCode) -> Result<ClassReport, ClassifyError> {
    let limits = Limits::global();
    let n = code.len();
    let minors_ok = n <= limits.equivalence_len;
    let tree_ok = n <= limits.separation_len;
    if !minors_ok && !tree_ok {
        return Err(ClassifyError::OutOfBounds(n));
    }
    let mut witnesses = Vec::new();
    let mut flags: [Option<bool>; 4] = [None; 4];
    let names = ["graphic", "cographic", "regular", "geometrically perfect"];
    let mut settle = |slot: usize, value: bool| -> Result<(), ClassifyError> {
        match flags[slot] {
            Some(v) if v != value => Err(ClassifyError::MethodsDisagree(names[slot])),
            _ => {
                flags[slot] = Some(value);
                Ok(())
            }
        }
    };

    if minors_ok {
        let graphic = first_excluded_minor(code, &GRAPHIC_EXCLUDED)?;
        let cographic = first_excluded_minor(&code.dual(), &GRAPHIC_EXCLUDED)?;
        let regular = first_excluded_minor(code, &REGULAR_EXCLUDED)?;
        let perfect = first_excluded_minor(code, &PERFECT_EXCLUDED)?;
        settle(0, graphic.is_none())?;
        settle(1, cographic.is_none())?;
        settle(2, regular.is_none())?;
        settle(3, perfect.is_none())?;
        witnesses.push(minor_evidence("graphic", &graphic));
        witnesses.push(minor_evidence("cographic", &cographic));
        witnesses.push(minor_evidence("regular", &regular));
        witnesses.push(minor_evidence("geometrically perfect", &perfect));
    }

    for (slot, side) in [(0, code.clone()), (1, code.dual())] {
        if let Some(g) = is_graphic_by_realization(&side)? {
            settle(slot, g)?;
            witnesses.push(Evidence {
                flag: names[slot],
                method: Method::Realization,
                detail: if g { "graph realization found" } else { "no graph realization" }.into(),
            });
        }
    }

    if tree_ok {
        let tree = build_complete_tree(code, TreeMode::ThreeHomogeneous)?;
        let mut regular = true;
        let mut detail = format!("{} leaves graphic, cographic or R10", leaves(&tree).len());
        for (i, leaf) in leaves(&tree).into_iter().enumerate() {
            let ok = graphic_leaf(&leaf.code)?
                || graphic_leaf(&leaf.code.dual())?
                || equivalent_to_any(&leaf.code, &["R10"])?.is_some();
            if !ok {
                regular = false;
                detail = format!("leaf {} [{}, {}] is not graphic, cographic or R10", i + 1, leaf.code.len(), leaf.code.dim());
                break;
            }
        }
        settle(2, regular)?;
        witnesses.push(Evidence {
            flag: "regular",
            method: Method::DecompositionTree,
            detail,
        });

        let tree = build_complete_tree(code, TreeMode::ThreeBarHomogeneous)?;
        let mut perfect = true;
        let mut detail = format!("{} leaves graphic or in {{H7, CK33D, CV8D}}", leaves(&tree).len());
        for (i, leaf) in leaves(&tree).into_iter().enumerate() {
            let ok = graphic_leaf(&leaf.code)? || equivalent_to_any(&leaf.code, &PERFECT_LEAVES)?.is_some();
            if !ok {
                perfect = false;
                detail = format!(
                    "leaf {} [{}, {}] is neither graphic nor in {{H7, CK33D, CV8D}}",
                    i + 1,
                    leaf.code.len(),
                    leaf.code.dim()
                );
                break;
            }
        }
        settle(3, perfect)?;
        witnesses.push(Evidence {
            flag: "geometrically perfect",
            method: Method::DecompositionTree,
            detail,
        });
    }

    let [graphic, cographic, regular, perfect] = flags;
    let regular = regular.unwrap_or(graphic == Some(true) || cographic == Some(true));
    Ok(ClassReport {
        graphic: graphic.unwrap_or(false),
        cographic: cographic.unwrap_or(false),
        regular,
        geometrically_perfect: perfect.unwrap_or(false),
        witnesses,
    })
}

fn graphic_leaf(code: &LinearCode) -> Result<bool, ClassifyError> {
    Ok(realize_graph(code)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads() {
        let c = Catalog::load().unwrap();
        assert_eq!(c.entries().len(), 7);
        assert_eq!(c.get("H7").dual(), *c.get("SIMPLEX7"));
    }

    #[test]
    fn equivalence_of_permuted_code() {
        let c = Catalog::standard().get("R10").clone();
        let perm = vec![3, 0, 9, 1, 8, 2, 7, 4, 6, 5];
        let p = c.permute(&perm).unwrap();
        let found = equivalent(&c, &p).unwrap().unwrap();
        assert_eq!(c.permute(&found).unwrap(), p);
    }

    #[test]
    fn hamming_and_simplex_are_not_equivalent() {
        let cat = Catalog::standard();
        assert!(equivalent(cat.get("H7"), cat.get("SIMPLEX7")).unwrap().is_none());
    }
}
