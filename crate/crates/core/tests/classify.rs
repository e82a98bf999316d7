mod common;

use common::*;
use rand::Rng;
use seymour::classify::*;
use seymour::graphic::{code_from_graph, Graph};
use seymour::sums::{two_sum, SumKind};
use seymour::LinearCode;

fn flags(r: &ClassReport) -> (bool, bool, bool, bool) {
    (r.graphic, r.cographic, r.regular, r.geometrically_perfect)
}

fn methods(r: &ClassReport, flag: &str) -> Vec<Method> {
    r.witnesses.iter().filter(|e| e.flag == flag).map(|e| e.method).collect()
}

#[test]
fn catalog_parameters() {
    let cat = Catalog::standard();
    let expected = [
        ("H7", 7, 4, 3),
        ("SIMPLEX7", 7, 3, 4),
        ("R10", 10, 5, 4),
        ("CK5D", 10, 4, 4),
        ("CK33D", 9, 5, 3),
        ("CV8D", 12, 7, 3),
        ("EXT_HAMMING8", 8, 4, 4),
    ];
    for (name, n, k, d) in expected {
        let c = cat.get(name);
        assert_eq!((c.len(), c.dim(), min_weight_oracle(c)), (n, k, d), "{name}");
    }
    assert_eq!(cat.get("H7").dual(), *cat.get("SIMPLEX7"));
    assert_eq!(cat.get("R10").dual().dim(), 5);
    assert!(equivalent(cat.get("R10"), &cat.get("R10").dual()).unwrap().is_some());
}

#[test]
fn weight_enumerators() {
    assert_eq!(weight_enumerator(&code(&["11111"])).unwrap(), vec![1, 0, 0, 0, 0, 1]);
    let h7 = Catalog::standard().get("H7");
    assert_eq!(weight_enumerator(h7).unwrap(), vec![1, 0, 0, 7, 7, 0, 0, 1]);
}

/// Krawtchouk transform of an enumerator.
fn macwilliams(a: &[u64], k: usize) -> Vec<u64> {
    let n = a.len() - 1;
    let binom = |n: i64, r: i64| -> i64 {
        if r < 0 || r > n {
            return 0;
        }
        (0..r).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
    };
    (0..=n as i64)
        .map(|j| {
            let s: i64 = (0..=n as i64)
                .map(|i| {
                    let kr: i64 = (0..=j).map(|t| (-1i64).pow(t as u32) * binom(i, t) * binom(n as i64 - i, j - t)).sum();
                    a[i as usize] as i64 * kr
                })
                .sum();
            (s >> k) as u64
        })
        .collect()
}

#[test]
fn macwilliams_identity_on_random_codes() {
    let mut r = rng(41);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let k = r.gen_range(0..=n);
        let c = random_code(&mut r, n, k);
        let a = weight_enumerator(&c).unwrap();
        assert_eq!(a.iter().sum::<u64>(), 1 << c.dim());
        assert_eq!(macwilliams(&a, c.dim()), weight_enumerator(&c.dual()).unwrap());
    }
}

#[test]
fn equivalence_basics() {
    let h7 = Catalog::standard().get("H7");
    assert!(equivalent(h7, h7).unwrap().is_some());
    assert!(equivalent(h7, &simplex()).unwrap().is_none());
    let perm = equivalent(&hamming_left(), &hamming_right()).unwrap().unwrap();
    assert_eq!(hamming_left().permute(&perm).unwrap(), hamming_right());
}

#[test]
fn equivalence_finds_random_permutations() {
    let mut r = rng(42);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let k = r.gen_range(0..=n);
        let c = random_code(&mut r, n, k);
        let moved = c.permute(&random_perm(&mut r, n)).unwrap();
        let p = equivalent(&c, &moved).unwrap().expect("permuted copy");
        assert_eq!(c.permute(&p).unwrap(), moved);
        let q = equivalent(&moved, &c).unwrap().unwrap();
        assert_eq!(moved.permute(&q).unwrap(), c);
    }
}

#[test]
fn same_parameters_different_structure() {
    let a = code(&["1100", "0011"]);
    let b = code(&["1100", "0110"]);
    assert!(equivalent(&a, &b).unwrap().is_none());
}

#[test]
fn minor_search() {
    let g = g12();
    assert!(has_minor(&g, &g).unwrap().is_some());
    let m = has_minor(&g, &simplex()).unwrap().unwrap();
    assert_eq!(g.minor(&m.punctured, &m.shortened).unwrap().permute(&m.perm).unwrap(), simplex());
    assert_eq!(g.minor(&[8, 10, 11], &[6, 7]).unwrap(), simplex());
    assert!(has_minor(&code_841(), &hamming_right()).unwrap().is_none());
}

#[test]
fn minor_relation_is_transitive_on_examples() {
    let h7 = Catalog::standard().get("H7");
    // [8,4,4] ≥ H7 ≥ its punctured [6,3] code.
    let small = h7.puncture(&[0]).unwrap();
    assert!(has_minor(&ext_hamming(), h7).unwrap().is_some());
    assert!(has_minor(h7, &small).unwrap().is_some());
    assert!(has_minor(&ext_hamming(), &small).unwrap().is_some());
}

#[test]
fn catalog_classifications() {
    let cat = Catalog::standard();
    let h7 = classify_code(cat.get("H7")).unwrap();
    assert_eq!((h7.graphic, h7.regular, h7.geometrically_perfect), (false, false, true));
    let r10 = classify_code(cat.get("R10")).unwrap();
    assert_eq!(flags(&r10), (false, false, true, false));
    for name in ["CK5D", "CK33D", "CV8D"] {
        let rep = classify_code(cat.get(name)).unwrap();
        assert!(rep.cographic && !rep.graphic && rep.regular, "{name}");
    }
    assert!(!classify_code(cat.get("CK5D")).unwrap().geometrically_perfect);
    assert!(classify_code(cat.get("CK33D")).unwrap().geometrically_perfect);
    assert!(classify_code(cat.get("CV8D")).unwrap().geometrically_perfect);
    assert!(!classify_code(cat.get("SIMPLEX7")).unwrap().geometrically_perfect);
}

#[test]
fn graph_codes_are_graphic_and_perfect() {
    let mut r = rng(43);
    let mut done = 0;
    while done < 40 {
        let v = r.gen_range(2..=7);
        let extra = r.gen_range(0..=8);
        let g = random_connected_graph(&mut r, v, extra);
        let c = code_from_graph(&g).unwrap();
        if c.len() > 14 {
            continue;
        }
        let rep = classify_code(&c).unwrap();
        assert!(rep.graphic && rep.regular && rep.geometrically_perfect);
        done += 1;
    }
    for g in [Graph::complete(5), Graph::complete_bipartite(3, 3)] {
        let rep = classify_code(&code_from_graph(&g).unwrap()).unwrap();
        assert!(rep.graphic && rep.geometrically_perfect && !rep.cographic);
    }
}

#[test]
fn methods_agree_on_mixed_codes() {
    let cat = Catalog::standard();
    let r10 = cat.get("R10");
    let mut r = rng(44);
    let mut pool: Vec<LinearCode> = vec![r10.clone(), cat.get("H7").clone(), cat.get("CK33D").clone()];
    for _ in 0..20 {
        let v = r.gen_range(3..=5);
        let extra = r.gen_range(1..=3);
        let g = random_connected_graph(&mut r, v, extra);
        pool.push(code_from_graph(&g).unwrap());
    }
    let mut checked = 0;
    for _ in 0..60 {
        let a = &pool[r.gen_range(0..pool.len())];
        let b = &pool[r.gen_range(0..pool.len())];
        let pa = a.permute(&random_perm(&mut r, a.len())).unwrap();
        let pb = b.permute(&random_perm(&mut r, b.len())).unwrap();
        let Ok(c) = two_sum(&pa, &pb) else { continue };
        if c.len() > 14 {
            continue;
        }
        let rep = classify_code(&c).unwrap();
        for flag in ["regular", "geometrically perfect"] {
            let m = methods(&rep, flag);
            assert!(m.contains(&Method::ExcludedMinor) && m.contains(&Method::DecompositionTree), "{flag}: {m:?}");
        }
        checked += 1;
    }
    assert!(checked >= 20);
    let _ = SumKind::Two;
}

#[test]
fn random_codes_classify_consistently() {
    let mut r = rng(45);
    for _ in 0..30 {
        let n = r.gen_range(4..=12);
        let k = r.gen_range(1..n);
        let c = random_code(&mut r, n, k);
        let rep = classify_code(&c).unwrap();
        let dual = classify_code(&c.dual()).unwrap();
        assert_eq!((rep.graphic, rep.cographic), (dual.cographic, dual.graphic));
        assert_eq!(rep.regular, dual.regular);
        if rep.graphic || rep.cographic {
            assert!(rep.regular);
        }
        if rep.graphic {
            assert!(rep.geometrically_perfect);
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn equivalence_matches_permutation_search() {
    let mut r = rng(46);
    let all = permutations(6);
    let mut same_enumerator = 0;
    for _ in 0..300 {
        let k = r.gen_range(1..=4);
        let a = random_code(&mut r, 6, k);
        let b = random_code(&mut r, 6, k);
        if weight_enumerator(&a).unwrap() != weight_enumerator(&b).unwrap() {
            continue;
        }
        same_enumerator += 1;
        let oracle = all.iter().any(|p| a.permute(p).unwrap() == b);
        assert_eq!(equivalent(&a, &b).unwrap().is_some(), oracle);
    }
    assert!(same_enumerator > 20);
}
