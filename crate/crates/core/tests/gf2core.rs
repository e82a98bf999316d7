mod common;

use common::*;
use proptest::prelude::*;
use seymour::gf2core::{complement, format_code, parse_code, parse_word_list};
use seymour::{BitMatrix, BitVec, CodeError, LinearCode};

fn consistent(c: &LinearCode) -> bool {
    let g = c.generator();
    let h = c.parity_check();
    g.rank() == g.nrows()
        && h.rank() == h.nrows()
        && g.nrows() + h.nrows() == c.len()
        && g.rows().iter().all(|r| h.rows().iter().all(|p| !dot(r, p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bases_are_complementary(c in arb_code(12)) {
        prop_assert!(consistent(&c));
        prop_assert!(consistent(&c.dual()));
        prop_assert_eq!(c.dual().dual(), c.clone());
    }

    #[test]
    fn enumeration_matches_span(c in arb_code(10)) {
        let listed: std::collections::BTreeSet<BitVec> = c.codewords().unwrap().into_iter().collect();
        prop_assert_eq!(listed.len(), 1usize << c.dim());
        prop_assert_eq!(listed, span(&c));
    }

    #[test]
    fn dual_matches_search(c in arb_code(9)) {
        prop_assert_eq!(span(&c.dual()), dual_by_search(&c));
    }

    #[test]
    fn puncture_and_shorten_match_oracles(c in arb_code(10), mask in any::<u16>()) {
        let set: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).collect();
        let p = c.puncture(&set).unwrap();
        let s = c.shorten(&set).unwrap();
        prop_assert!(consistent(&p) && consistent(&s));
        prop_assert_eq!(span(&p), puncture_oracle(&c, &set));
        prop_assert_eq!(span(&s), shorten_oracle(&c, &set));
    }

    #[test]
    fn shortening_is_dual_of_puncturing_the_dual(c in arb_code(14), mask in any::<u16>()) {
        let set: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).collect();
        prop_assert_eq!(c.shorten(&set).unwrap(), c.dual().puncture(&set).unwrap().dual());
    }

    #[test]
    fn minor_operations_commute(c in arb_code(12), mask in any::<u32>()) {
        let n = c.len();
        let x: Vec<usize> = (0..n).filter(|i| mask >> (2 * i) & 3 == 1).collect();
        let y: Vec<usize> = (0..n).filter(|i| mask >> (2 * i) & 3 == 2).collect();
        let direct = c.minor(&x, &y).unwrap();
        // Shorten first, then puncture the surviving positions of X.
        let after: Vec<usize> = complement(n, &y);
        let x_after: Vec<usize> = after.iter().enumerate().filter(|(_, i)| x.contains(i)).map(|(p, _)| p).collect();
        let other = c.shorten(&y).unwrap().puncture(&x_after).unwrap();
        prop_assert_eq!(&direct, &other);
        prop_assert!(consistent(&direct));
    }

    #[test]
    fn separation_defect_is_nonnegative(c in arb_code(12), mask in any::<u16>()) {
        let j: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).collect();
        let rest = complement(c.len(), &j);
        prop_assert!(c.restricted_dim(&j).unwrap() + c.restricted_dim(&rest).unwrap() >= c.dim());
    }

    #[test]
    fn permutation_moves_coordinates(c in arb_code(10), seed in any::<u64>()) {
        let perm = random_perm(&mut rng(seed), c.len());
        let moved = c.permute(&perm).unwrap();
        let expected: std::collections::BTreeSet<BitVec> = span(&c)
            .iter()
            .map(|w| {
                let mut out = BitVec::zeros(c.len());
                for i in w.iter_ones() {
                    out.set(perm[i], true);
                }
                out
            })
            .collect();
        prop_assert_eq!(span(&moved), expected);
    }

    #[test]
    fn min_weight_matches_oracle(c in arb_code(10)) {
        prop_assume!(c.dim() > 0);
        prop_assert_eq!(c.min_weight().unwrap(), min_weight_oracle(&c));
    }

    #[test]
    fn text_format_round_trips(c in arb_code(12)) {
        prop_assert_eq!(parse_code(&format_code(&c)).unwrap(), c);
    }

    #[test]
    fn minimal_codewords_have_no_smaller_support(c in arb_code(8)) {
        let all = span(&c);
        let minimal = c.minimal_codewords().unwrap();
        for w in &all {
            if w.is_zero() {
                continue;
            }
            let has_smaller = all.iter().any(|v| !v.is_zero() && v != w && v.is_subset_of(w));
            prop_assert_eq!(minimal.contains(w), !has_smaller);
        }
    }
}

#[test]
fn rref_is_canonical() {
    let m = BitMatrix::parse_rows(&["0110", "1100", "1010"]).unwrap();
    let (r, pivots) = m.rref();
    assert_eq!(pivots, vec![0, 1]);
    assert_eq!(r.nrows(), 2);
    assert_eq!(m.rank(), 2);
}

#[test]
fn zero_and_full_codes() {
    let z = LinearCode::zero(4);
    assert_eq!((z.dim(), z.dual().dim()), (0, 4));
    assert_eq!(LinearCode::full(4), z.dual());
    assert_eq!(z.min_weight(), Err(CodeError::ZeroCode));
    let empty = LinearCode::zero(0);
    assert!(empty.is_empty() && empty.dual().is_empty());
}

#[test]
fn coordinate_errors_are_one_based() {
    let c = simplex();
    let err = c.puncture(&[7]).unwrap_err();
    assert_eq!(err, CodeError::CoordinateOutOfRange { coord: 8, n: 7 });
    assert!(err.to_string().contains('8'));
    assert!(matches!(c.shorten(&[1, 1]), Err(CodeError::DuplicateCoordinate(2))));
    assert!(matches!(c.minor(&[0], &[0]), Err(CodeError::OverlappingSets(1))));
    assert!(c.permute(&[0, 0, 1, 2, 3, 4, 5]).is_err());
}

#[test]
fn parser_reports_line_numbers() {
    let err = parse_code("2 3\n101\n01\n").unwrap_err();
    assert!(matches!(err, CodeError::Parse { line: 3, .. }));
    let h = parse_code("# parity\n1 3\n111\n").unwrap();
    assert_eq!(h.dim(), 2);
    let words = parse_word_list("101\n# comment\n011\n").unwrap();
    assert_eq!(words.len(), 2);
}

#[test]
fn enumeration_bound_refuses() {
    let big = LinearCode::full(30);
    assert!(matches!(
        big.codewords(),
        Err(CodeError::EnumerationBound { dimension: 30, .. })
    ));
}

#[test]
fn displayed_minor_of_g12_is_the_simplex() {
    let m = g12().minor(&[8, 10, 11], &[6, 7]).unwrap();
    assert_eq!(m, simplex());
}
