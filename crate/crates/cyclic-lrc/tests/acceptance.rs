//! Acceptance suite: one test per gate criterion. Each prints a single
//! PASS line with its elapsed time; run with `--nocapture` to see them.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use cyclic_lrc::bounds::{
    bch_bound, dim_bound_cube, dim_bound_rect, ht_bound, sij, singleton_like,
};
use cyclic_lrc::distance::{min_distance_bracket, min_distance_exact, DEFAULT_DISTANCE_BUDGET};
use cyclic_lrc::gf::FieldElement;
use cyclic_lrc::locality::{
    build_partitions, check_strong_orthogonality, check_strong_orthogonality_with, crt_map,
    local_distance_rank, repair, verify_availability,
};
use cyclic_lrc::search::check_reference_rows;
use cyclic_lrc::{ConstructionParams, CyclicLrc};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn example1_code() -> CyclicLrc {
    CyclicLrc::build(
        ConstructionParams::new(&[3, 5], &[2, 2])
            .unwrap()
            .with_offsets(&[1, 1])
            .unwrap()
            .with_shift(0)
            .with_global_set(&[7, 8])
            .unwrap()
            .with_field_order(16)
            .unwrap(),
    )
    .unwrap()
}

fn example2_code() -> CyclicLrc {
    CyclicLrc::build(
        ConstructionParams::new(&[3, 4], &[2, 2])
            .unwrap()
            .with_global_set(&[5, 7])
            .unwrap()
            .with_field_order(13)
            .unwrap(),
    )
    .unwrap()
}

fn random_codeword(code: &CyclicLrc, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let field = code.field();
    let message: Vec<FieldElement> = (0..code.dimension())
        .map(|_| field.element(rng.random_range(0..field.order())).unwrap())
        .collect();
    code.encode(&message).unwrap()
}

#[test]
fn criterion_01_code_15_6_reproduction() {
    let t0 = Instant::now();
    let code = example1_code();
    assert_eq!(code.defining_set().len(), 9);
    assert_eq!(code.dimension(), 6);
    let bch = bch_bound(code.defining_set());
    assert_eq!(bch.value, 7);
    let ht = ht_bound(code.defining_set());
    assert_eq!(ht.value, 7, "no improvement over the BCH bound");
    let report = verify_availability(&code);
    assert_eq!(report.groups.len(), 8);
    assert!(report.all_pass());
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 01 PASS - [15,6] over GF(16): |D|=9, k=6, BCH=HT=7, 8/8 groups verified ({elapsed:?})"
    );
}

#[test]
fn criterion_02_code_12_4_exact_distance() {
    let t0 = Instant::now();
    let code = example2_code();
    assert_eq!(code.dimension(), 4);
    assert_eq!(bch_bound(code.defining_set()).value, 8);
    let exact = min_distance_exact(&code, DEFAULT_DISTANCE_BUDGET);
    assert!(exact.exact);
    assert_eq!(exact.lower, 8);
    // sandwich: BCH below, Singleton-like above
    assert_eq!(singleton_like(12, 4, 2, 2).unwrap(), 8);
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!(
        "criterion 02 PASS - [12,4] over GF(13): BCH=8, exact d=8 over 13^4 codewords ({elapsed:?})"
    );
}

#[test]
fn criterion_03_reference_table_golden() {
    let t0 = Instant::now();
    let checks = check_reference_rows();
    assert_eq!(checks.len(), 11);
    for check in &checks {
        assert!(
            check.pass,
            "row {:?}: computed ({}, {}, {})",
            check.row,
            check.computed_distance_bound,
            check.computed_dimension,
            check.computed_dimension_bound
        );
    }
    // the two cells that pin the corrected dimension-bound evaluation
    let n21 = checks
        .iter()
        .find(|c| c.row.lengths == [3, 7] && c.row.distance_bound == 11)
        .unwrap();
    assert_eq!(n21.computed_dimension_bound, 8);
    let n35 = checks
        .iter()
        .find(|c| c.row.lengths == [5, 7] && c.row.distance_bound == 10)
        .unwrap();
    assert_eq!(n35.computed_dimension_bound, 20);
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 03 PASS - 11/11 reference rows reproduce (d, k, bound) ({elapsed:?})");
}

#[test]
fn criterion_04_dimension_bound_refinement() {
    let t0 = Instant::now();
    assert_eq!(dim_bound_cube(&[3, 5], 2, 7).unwrap(), 7);
    let (rect, sides) = dim_bound_rect(&[3, 5], &[2, 2], 7).unwrap();
    assert_eq!(rect, 6);
    assert_eq!(sides, vec![2, 3]);
    println!(
        "criterion 04 PASS - cube bound 7 refines to rectangle bound 6 at d=7 ({:?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_05_product_distance() {
    let t0 = Instant::now();
    let code = CyclicLrc::build(
        ConstructionParams::new(&[2, 3], &[2, 2])
            .unwrap()
            .with_field_order(7)
            .unwrap(),
    )
    .unwrap();
    let exact = min_distance_exact(&code, DEFAULT_DISTANCE_BUDGET);
    let enumeration_time = t0.elapsed();
    assert!(exact.exact);
    assert_eq!(exact.lower, 4);
    let product: u64 = code.params().rhos().iter().product();
    assert_eq!(exact.lower, product);
    assert!(
        enumeration_time < Duration::from_millis(1),
        "took {enumeration_time:?}"
    );

    // every reference base construction keeps a Hartmann-Tzeng floor of 4
    for lengths in [[3u64, 5], [3, 7], [3, 17], [5, 7]] {
        let params = ConstructionParams::new(&lengths, &[2, 2]).unwrap();
        let base = CyclicLrc::build(params).unwrap();
        let bracket = min_distance_bracket(&base, 200, 0);
        assert!(
            bracket.lower >= 4,
            "lengths {lengths:?} bracket lower {}",
            bracket.lower
        );
        assert!(bracket.lower <= bracket.upper);
    }
    println!(
        "criterion 05 PASS - [6,2] exact d=4=rho product; all base codes bracket lower >= 4 ({:?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_06_local_distance_of_every_reference_group() {
    let t0 = Instant::now();
    let mut groups_checked = 0;
    for check in check_reference_rows() {
        let code = CyclicLrc::build(check.row.params()).unwrap();
        let family = build_partitions(code.params());
        for i in 0..family.partition_count() {
            for group in family.groups(i) {
                let ld = local_distance_rank(&code, group, 2).unwrap();
                assert!(
                    ld.bound >= 2,
                    "row {:?} partition {i} group {group:?} bound {}",
                    check.row,
                    ld.bound
                );
                groups_checked += 1;
            }
        }
    }
    // rows contribute n/n_1 + n/n_2 groups: 2*(5+3) + 3*(7+3) + 3*(17+3) + 3*(7+5)
    assert_eq!(groups_checked, 142);
    println!(
        "criterion 06 PASS - {groups_checked} repair groups across 11 codes verify d_local >= 2 ({:?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_07_strong_orthogonality() {
    let t0 = Instant::now();
    let mut pairs = 0;
    for n1 in 2u64..=50 {
        for n2 in (n1 + 1)..=50 {
            if gcd(n1, n2) != 1 || n1 * n2 > 100 {
                continue;
            }
            let params = ConstructionParams::new(&[n1, n2], &[2, 2]).unwrap();
            let family = build_partitions(&params);
            assert!(check_strong_orthogonality(&family), "pair ({n1}, {n2})");
            // residue tuples are pairwise distinct
            let tuples: HashSet<Vec<u64>> = (0..n1 * n2)
                .map(|x| crt_map(x, &[n1, n2]).unwrap())
                .collect();
            assert_eq!(tuples.len() as u64, n1 * n2);
            pairs += 1;
        }
    }
    assert!(pairs > 50, "only {pairs} coprime pairs covered");

    // the binary cube on 8 positions under its explicit bit map
    let partitions = vec![
        vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        vec![vec![0, 2], vec![1, 3], vec![4, 6], vec![5, 7]],
        vec![vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]],
    ];
    let ok = check_strong_orthogonality_with(&partitions, 8, |x| {
        vec![(x & 1) as u64, ((x >> 1) & 1) as u64, ((x >> 2) & 1) as u64]
    })
    .unwrap();
    assert!(ok);
    println!(
        "criterion 07 PASS - {pairs} coprime pairs (n <= 100) plus the binary cube are strongly orthogonal ({:?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_08_index_identity() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let p = rng.random_range(2u64..64);
        let q = rng.random_range(2u64..64);
        let i = rng.random_range(1..q) as i64;
        let j = rng.random_range(1..p) as i64;
        let lhs = sij(i, j, p, q);
        let rhs = sij(q as i64 - i, p as i64 - j, p, q);
        assert_eq!((lhs + rhs) % (p * q), 0, "p={p} q={q} i={i} j={j}");
    }
    println!(
        "criterion 08 PASS - s_ij antisymmetry holds on 1000 random tuples ({:?})",
        t0.elapsed()
    );
}

/// Pairwise-coprime parameter sets with block length at most `max_n`.
fn random_params(rng: &mut ChaCha8Rng, max_n: u64) -> ConstructionParams {
    loop {
        let t = rng.random_range(1..=3usize);
        let mut lengths: Vec<u64> = Vec::new();
        let mut product = 1u64;
        for _ in 0..t {
            let mut tries = 0;
            loop {
                let candidate = rng.random_range(2u64..=13);
                if lengths.iter().all(|&l| gcd(l, candidate) == 1)
                    && product * candidate <= max_n
                {
                    lengths.push(candidate);
                    product *= candidate;
                    break;
                }
                tries += 1;
                if tries > 40 {
                    break;
                }
            }
        }
        if lengths.is_empty() {
            continue;
        }
        let rhos: Vec<u64> = lengths
            .iter()
            .map(|&ni| rng.random_range(2..=ni))
            .collect();
        let offsets: Vec<u64> = lengths
            .iter()
            .map(|&ni| loop {
                let b = rng.random_range(1..=ni);
                if gcd(ni, b) == 1 {
                    break b;
                }
            })
            .collect();
        let shift = rng.random_range(0..product);
        return ConstructionParams::new(&lengths, &rhos)
            .unwrap()
            .with_offsets(&offsets)
            .unwrap()
            .with_shift(shift);
    }
}

#[test]
fn criterion_09_dimension_identity_without_global_set() {
    let t0 = Instant::now();
    for lengths in [[3u64, 5], [3, 7], [3, 17], [5, 7]] {
        let params = ConstructionParams::new(&lengths, &[2, 2]).unwrap();
        let code = CyclicLrc::build(params).unwrap();
        let expected: u64 = lengths.iter().map(|&ni| ni - 1).product();
        assert_eq!(code.dimension() as u64, expected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..20 {
        let params = random_params(&mut rng, 200);
        let expected: u64 = params
            .lengths()
            .iter()
            .zip(params.rhos())
            .map(|(&ni, &rho)| ni - rho + 1)
            .product();
        let code = CyclicLrc::build(params.clone()).unwrap();
        assert_eq!(
            code.dimension() as u64,
            expected,
            "trial {trial} params {params:?}"
        );
    }
    println!(
        "criterion 09 PASS - k = prod(n_i - rho_i + 1) on 4 reference and 20 random parameter sets ({:?})",
        t0.elapsed()
    );
}

#[test]
fn criterion_10_repair_roundtrip() {
    let t0 = Instant::now();
    let codes = [example1_code(), example2_code()];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut triples = 0;
    for code in &codes {
        let family = build_partitions(code.params());
        let t = family.partition_count();

        // single random erasure, repaired through every partition
        for _ in 0..250 {
            let word = random_codeword(code, &mut rng);
            let position = rng.random_range(0..code.length());
            let mut erased: Vec<Option<FieldElement>> =
                word.iter().copied().map(Some).collect();
            erased[position] = None;
            for partition in 0..t {
                assert_eq!(repair(code, &erased, partition).unwrap(), word);
            }
            triples += 1;
        }

        // random admissible pattern for a random partition
        for _ in 0..250 {
            let word = random_codeword(code, &mut rng);
            let partition = rng.random_range(0..t);
            let rho = code.params().rhos()[partition];
            let mut erased: Vec<Option<FieldElement>> =
                word.iter().copied().map(Some).collect();
            for group in family.groups(partition) {
                let erasures = rng.random_range(0..rho) as usize;
                let mut victims: Vec<usize> = (0..group.len()).collect();
                for _ in 0..erasures {
                    let pick = rng.random_range(0..victims.len());
                    erased[group[victims.swap_remove(pick)]] = None;
                }
            }
            assert_eq!(repair(code, &erased, partition).unwrap(), word);
            // other partitions must agree whenever the pattern fits them too
            for other in (0..t).filter(|&o| o != partition) {
                let admissible = family.groups(other).iter().all(|group| {
                    let erased_count =
                        group.iter().filter(|&&p| erased[p].is_none()).count() as u64;
                    erased_count < code.params().rhos()[other]
                });
                if admissible {
                    assert_eq!(repair(code, &erased, other).unwrap(), word);
                }
            }
            triples += 1;
        }
    }
    assert_eq!(triples, 1000);
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 10 PASS - 1000 repair round-trips recovered exactly ({elapsed:?})");
}

/// Naive double enumeration: every nonzero message through the encoder.
fn naive_min_distance(code: &CyclicLrc) -> usize {
    let field = code.field();
    let q = field.order();
    let k = code.dimension();
    let mut best = usize::MAX;
    let mut message = vec![0u64; k];
    loop {
        let mut pos = 0;
        loop {
            if pos == k {
                return best;
            }
            if message[pos] + 1 == q {
                message[pos] = 0;
                pos += 1;
            } else {
                message[pos] += 1;
                break;
            }
        }
        let symbols: Vec<FieldElement> =
            message.iter().map(|&c| field.element(c).unwrap()).collect();
        let word = code.encode(&symbols).unwrap();
        best = best.min(CyclicLrc::weight(&word));
    }
}

#[test]
fn criterion_11_distance_oracle_cross_check() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 10 {
        let mut params = random_params(&mut rng, 30);
        let n = params.block_length();
        // shrink the dimension with random extra roots until q^k is tiny
        let code = loop {
            let candidate = CyclicLrc::build(params.clone()).unwrap();
            let q = candidate.field().order() as u128;
            let size = q.checked_pow(candidate.dimension() as u32);
            match size {
                Some(s) if s <= 10_000 => break Some(candidate),
                _ if candidate.dimension() <= 1 => break None,
                _ => {
                    let mut dg = params.global_set();
                    let mut e = rng.random_range(0..n);
                    while candidate.defining_set().contains(e) {
                        e = rng.random_range(0..n);
                    }
                    dg.push(e);
                    params = params.clone().with_global_set(&dg).unwrap();
                }
            }
        };
        let Some(code) = code else { continue };
        if code.dimension() == 0 {
            continue;
        }
        let fast = min_distance_exact(&code, DEFAULT_DISTANCE_BUDGET);
        assert!(fast.exact);
        let naive = naive_min_distance(&code);
        assert_eq!(
            fast.lower as usize, naive,
            "code n={} k={} q={}",
            code.length(),
            code.dimension(),
            code.field().order()
        );
        checked += 1;
    }
    println!(
        "criterion 11 PASS - exact distance matches naive double enumeration on 10 small codes ({:?})",
        t0.elapsed()
    );
}
