mod common;

use common::*;
use seymour::classify::{equivalent, Catalog};
use seymour::connectivity::{connectivity, defect, Connectivity};
use seymour::sums::*;
use seymour::LinearCode;

fn with_word(c: &LinearCode, w: &str) -> LinearCode {
    let mut rows = c.generator().rows().to_vec();
    rows.push(word(w));
    LinearCode::from_generator(&seymour::BitMatrix::from_rows(c.len(), rows))
}

fn tail(n: usize) -> String {
    "0".repeat(n - 3) + "111"
}

fn head(n: usize) -> String {
    "111".to_string() + &"0".repeat(n - 3)
}

#[test]
fn overlap_zero_is_direct_sum() {
    let (a, b) = (simplex(), hamming_right());
    assert_eq!(overlap_sum(&a, &b, 0).unwrap(), a.direct_sum(&b));
    assert_eq!(compose(&a, SumKind::Direct, &b).unwrap(), a.direct_sum(&b));
}

#[test]
fn overlap_sum_lengths() {
    let mut r = rng(11);
    for _ in 0..100 {
        let (n1, n2) = (r_len(&mut r), r_len(&mut r));
        let (a, b) = (random_code_of_len(&mut r, n1), random_code_of_len(&mut r, n2));
        for m in 0..=3 {
            let res = overlap_sum(&a, &b, m);
            if 2 * m < n1.min(n2) {
                assert_eq!(res.unwrap().len(), n1 + n2 - 2 * m);
            } else {
                assert!(res.is_err());
            }
        }
    }
}

fn r_len(r: &mut rand_chacha::ChaCha8Rng) -> usize {
    use rand::Rng;
    r.gen_range(2..9)
}

#[test]
fn overlap_one_matches_two_sum() {
    assert_eq!(overlap_sum(&simplex(), &simplex(), 1).unwrap(), two_sum(&simplex(), &simplex()).unwrap());
}

#[test]
fn golden_compositions() {
    assert_eq!(two_sum(&simplex(), &simplex()).unwrap(), g12());
    assert_eq!(three_sum(&hamming_left(), &hamming_right()).unwrap(), ext_hamming());
    assert_eq!(three_sum(&weak_left(), &weak_right()).unwrap(), code_841());
}

#[test]
fn two_sum_dual_on_the_example() {
    let s = simplex();
    assert_eq!(g12().dual(), two_sum(&s.dual(), &s.dual()).unwrap());
}

#[test]
fn three_sum_dual_on_the_example() {
    let (l, r) = (hamming_left(), hamming_right());
    assert_eq!(ext_hamming().dual(), three_bar_sum(&l.dual(), &r.dual()).unwrap());
}

#[test]
fn precondition_failures_name_the_clause() {
    let unit_tail = code(&["0001", "1100"]);
    assert!(matches!(
        two_sum(&unit_tail, &simplex()),
        Err(SumError::Precondition { clause: Clause::P1, .. })
    ));
    let unit_head = code(&["1000", "0011"]);
    assert!(matches!(
        two_sum(&simplex(), &unit_head),
        Err(SumError::Precondition { clause: Clause::P2, .. })
    ));
    assert!(matches!(two_sum(&code(&["11"]), &simplex()), Err(SumError::TooShort { .. })));
    // Without 0…0111 as a codeword the left side breaks A3.
    assert!(matches!(
        three_sum(&simplex(), &hamming_right()),
        Err(SumError::Precondition { clause: Clause::A3, .. })
    ));
}

#[test]
fn dimension_and_duality_laws_on_random_pairs() {
    let mut r = rng(12);
    for _ in 0..200 {
        let (a, b, c) = random_sum_pair(&mut r, SumKind::Two, 14);
        assert_eq!(c.dim(), a.dim() + b.dim() - 1);
        assert_eq!(c.dual(), two_sum(&a.dual(), &b.dual()).unwrap());
    }
    for _ in 0..200 {
        let (a, b, c) = random_sum_pair(&mut r, SumKind::Three, 14);
        assert_eq!(c.dim() + 4, a.dim() + b.dim());
        assert_eq!(c.dual(), three_bar_sum(&a.dual(), &b.dual()).unwrap());
    }
    for _ in 0..200 {
        let (a, b, c) = random_sum_pair(&mut r, SumKind::ThreeBar, 14);
        assert_eq!(c.dim() + 2, a.dim() + b.dim());
        let closed_l = with_word(&a, &tail(a.len()));
        let closed_r = with_word(&b, &head(b.len()));
        assert_eq!(c, three_sum(&closed_l, &closed_r).unwrap());
    }
}

#[test]
fn three_sum_as_three_bar_sum_of_closed_duals() {
    let mut r = rng(13);
    for _ in 0..100 {
        let (a, b, c) = random_sum_pair(&mut r, SumKind::Three, 14);
        let d1 = with_word(&a.dual(), &tail(a.len())).dual();
        let d2 = with_word(&b.dual(), &head(b.len())).dual();
        assert_eq!(c, three_bar_sum(&d1, &d2).unwrap());
    }
}

#[test]
fn distance_bounds_on_random_pairs() {
    let mut r = rng(14);
    for _ in 0..100 {
        let (a, b, c) = random_sum_pair(&mut r, SumKind::Two, 14);
        if c.dim() == 0 {
            continue;
        }
        let d = min_weight_oracle(&c);
        let a_short = a.shorten(&[a.len() - 1]).unwrap();
        let b_short = b.shorten(&[0]).unwrap();
        for part in [a_short, b_short] {
            if part.dim() > 0 {
                assert!(d <= min_weight_oracle(&part));
            }
        }
    }
}

#[test]
fn golden_two_sum_decomposition() {
    let d = decompose_two_sum(&g12(), &[0, 1, 2, 3, 4, 5]).unwrap();
    assert_eq!((&d.left, &d.right), (&simplex(), &simplex()));
    assert_eq!(d.perm, (0..12).collect::<Vec<_>>());
    assert_eq!(d.recompose().unwrap(), g12());
    assert_eq!(d.left.dim() + d.right.dim(), g12().dim() + 1);
}

#[test]
fn golden_three_sum_decomposition() {
    let h7 = Catalog::standard().get("H7").clone();
    let d = decompose_three_sum(&ext_hamming(), &[0, 1, 2, 3]).unwrap();
    assert_eq!(d.recompose().unwrap(), ext_hamming());
    assert_eq!(d.left.dim() + d.right.dim(), ext_hamming().dim() + 4);
    assert!(equivalent(&d.left, &h7).unwrap().is_some());
    assert!(equivalent(&d.right, &h7).unwrap().is_some());
    assert!(equivalent(&d.left, &hamming_left()).unwrap().is_some());
    assert!(equivalent(&d.right, &hamming_right()).unwrap().is_some());
}

#[test]
fn dual_of_extended_hamming_splits_into_hamming_duals() {
    let dual = ext_hamming().dual();
    let d = decompose_three_bar_sum(&dual, &[0, 1, 2, 3]).unwrap();
    assert_eq!(d.recompose().unwrap(), dual);
    let h7d = Catalog::standard().get("SIMPLEX7");
    assert!(equivalent(&d.left, h7d).unwrap().is_some());
    assert!(equivalent(&d.right, h7d).unwrap().is_some());
}

#[test]
fn weak_example_components_are_not_both_minors() {
    // The composite is not 3-connected, and the Hamming component is not a
    // minor of it.
    let c = code_841();
    assert_eq!(connectivity(&c).unwrap(), Connectivity::Finite(1));
    assert!(seymour::classify::has_minor(&c, &weak_right()).unwrap().is_none());
    assert!(seymour::classify::has_minor(&c, &weak_left()).unwrap().is_some());
}

#[test]
fn decomposition_rejects_inexact_separations() {
    assert!(matches!(
        decompose_two_sum(&ext_hamming(), &[0, 1, 2, 3]),
        Err(SumError::NotExactSeparation { .. })
    ));
    assert!(decompose_three_sum(&simplex(), &[0, 1, 2]).is_err());
}

#[test]
fn two_sum_round_trips_with_minor_witnesses() {
    let mut r = rng(15);
    let mut done = 0;
    while done < 200 {
        let (_, _, c) = random_sum_pair(&mut r, SumKind::Two, 14);
        let perm = random_perm(&mut r, c.len());
        let c = c.permute(&perm).unwrap();
        let Some(sep) = seymour::connectivity::find_k_separation(&c, 2, 2).unwrap() else { continue };
        if sep.defect != 1 {
            continue;
        }
        let d = decompose_two_sum(&c, &sep.side).unwrap();
        assert_eq!(d.recompose().unwrap(), c);
        assert_eq!(d.left.dim() + d.right.dim(), c.dim() + 1);
        let composed = two_sum(&d.left, &d.right).unwrap();
        let [lw, rw] = d.witnesses.clone().unwrap();
        assert_eq!(composed.minor(&lw.punctured, &lw.shortened).unwrap(), d.left);
        assert_eq!(composed.minor(&rw.punctured, &rw.shortened).unwrap(), d.right);
        done += 1;
    }
}

fn exact_three_instances(kind: SumKind, seed: u64, count: usize) -> Vec<(LinearCode, Vec<usize>)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let (a, _, c) = random_sum_pair(&mut r, kind, 14);
        let side: Vec<usize> = (0..a.len() - 3).collect();
        if side.len() < 4 || c.len() - side.len() < 4 || defect(&c, &side).unwrap() != 2 {
            continue;
        }
        let perm = random_perm(&mut r, c.len());
        let moved: Vec<usize> = {
            let mut v: Vec<usize> = side.iter().map(|&i| perm[i]).collect();
            v.sort();
            v
        };
        out.push((c.permute(&perm).unwrap(), moved));
    }
    out
}

#[test]
fn three_sum_round_trips() {
    for (c, side) in exact_three_instances(SumKind::Three, 16, 100) {
        let d = decompose_three_sum(&c, &side).unwrap();
        assert_eq!(d.recompose().unwrap(), c);
        assert_eq!(d.left.dim() + d.right.dim(), c.dim() + 4);
    }
}

#[test]
fn three_bar_sum_round_trips() {
    for (c, side) in exact_three_instances(SumKind::ThreeBar, 17, 100) {
        assert_eq!(defect(&c.dual(), &side).unwrap(), 2);
        let d = decompose_three_bar_sum(&c, &side).unwrap();
        assert_eq!(d.kind, SumKind::ThreeBar);
        assert_eq!(d.recompose().unwrap(), c);
    }
}

#[test]
fn three_connected_codes_have_components_as_minors() {
    use rand::Rng;
    let mut r = rng(18);
    let mut checked = 0;
    for _ in 0..5000 {
        let n = r.gen_range(8..=11);
        let k = r.gen_range(3..n - 2);
        let c = random_code(&mut r, n, k);
        if !connectivity(&c).unwrap().at_least(3) {
            continue;
        }
        let Some(sep) = seymour::connectivity::find_k_separation(&c, 3, 4).unwrap() else { continue };
        let d = decompose_three_sum(&c, &sep.side).unwrap();
        assert_eq!(d.recompose().unwrap(), c);
        assert!(seymour::classify::has_minor(&c, &d.left).unwrap().is_some());
        assert!(seymour::classify::has_minor(&c, &d.right).unwrap().is_some());
        checked += 1;
        if checked == 30 {
            break;
        }
    }
    assert_eq!(checked, 30);
}
