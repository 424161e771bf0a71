//! End-to-end acceptance suite. Each test prints one pass/fail line and
//! enforces the stated runtime budget.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use baseweight_core::harness::{
    parallel_class_spec, run_campaign, CampaignConfig, CatalogConfig, CheckKind,
};
use baseweight_core::{
    check_chowla_kemperman, check_egz_via_matroid, check_main, egz_witness, CyclicGroup, Error,
    GroundSet, Matroid, SequenceInstance, WeightFunction, WeightedMatroid,
};

fn report(name: &str, ok: bool, elapsed: Duration, budget: Duration) {
    let within = elapsed <= budget;
    println!(
        "{name}: {} ({elapsed:.2?}, budget {budget:.2?})",
        if ok && within { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{name}: property violated");
    assert!(within, "{name}: exceeded runtime budget");
}

fn z(n: u32) -> CyclicGroup {
    CyclicGroup::new(n).unwrap()
}

#[test]
fn criterion_1_chowla_kemperman_exhaustive() {
    let start = Instant::now();
    let mut inequality_violations = 0u64;
    let mut ap_violations = 0u64;
    let mut first_ap_violation = None;
    for n in 2u32..=8 {
        let group = z(n);
        for am in 1u64..1 << n {
            if am.count_ones() < 2 {
                continue;
            }
            for bm in 1u64..1 << n {
                if bm.count_ones() < 2 {
                    continue;
                }
                let a = group.set_from_mask(am);
                let b = group.set_from_mask(bm);
                if !b.chowla_condition().unwrap() {
                    continue;
                }
                let s = a.sumset(b);
                if s.len() < (a.len() + b.len() - 1).min(n) {
                    inequality_violations += 1;
                }
                let equality = a.len() + b.len() - 1 <= n && s.len() == a.len() + b.len() - 1;
                if equality && s.ap_differences().unwrap().is_empty() {
                    ap_violations += 1;
                    first_ap_violation.get_or_insert((a, b, s));
                }
                // the verifier must agree with the direct check
                let v = check_chowla_kemperman(a, b).unwrap();
                assert_eq!(
                    v.applicable && v.inequality_holds && v.ap_consistent,
                    s.len() >= (a.len() + b.len() - 1).min(n)
                        && !(equality && s.ap_differences().unwrap().is_empty())
                );
            }
        }
    }
    // Known red: the single-pivot generator condition is too weak for the
    // equality characterization at n = 8. Smallest counterexample:
    // A = {0,4}, B = {0,1,4} (pivot 1), A+B = {0,1,4,5}, |A+B| = 4 =
    // |A|+|B|-1, not a progression. The inequality half has no violations,
    // and the characterization does hold once B-B consists of generators
    // (see the companion test below).
    if let Some((a, b, s)) = &first_ap_violation {
        eprintln!(
            "equality-without-progression counterexamples: {ap_violations} \
             (first: A={a:?} B={b:?} A+B={s:?})"
        );
    }
    report(
        "criterion 1 (Chowla-Kemperman exhaustive, n=2..8)",
        inequality_violations == 0 && ap_violations == 0,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

// Companion to criterion 1: with the stronger condition that every nonzero
// element of B-B generates, the equality direction does hold exhaustively.
#[test]
fn chowla_equality_direction_holds_under_pollard_condition() {
    for n in 2u32..=8 {
        let group = z(n);
        for am in 1u64..1 << n {
            if am.count_ones() < 2 {
                continue;
            }
            for bm in 1u64..1 << n {
                if bm.count_ones() < 2 {
                    continue;
                }
                let a = group.set_from_mask(am);
                let b = group.set_from_mask(bm);
                if !b.pollard_condition().unwrap() {
                    continue;
                }
                let s = a.sumset(b);
                assert!(s.len() >= (a.len() + b.len() - 1).min(n));
                if a.len() + b.len() - 1 <= n && s.len() == a.len() + b.len() - 1 {
                    assert!(
                        !s.ap_differences().unwrap().is_empty(),
                        "equality without progression at n={n}: A={a:?} B={b:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn criterion_2_cauchy_davenport_via_matroids() {
    let start = Instant::now();
    let group = z(5);
    let mut mismatches = 0u64;
    for am in 1u64..1 << 5 {
        for bm in 1u64..1 << 5 {
            let a = group.set_from_mask(am);
            let b = group.set_from_mask(bm);
            let left = Matroid::uniform(a.len() as usize, 1).unwrap();
            let right = Matroid::uniform(b.len() as usize, 1).unwrap();
            let matroid = left.direct_sum(&right).unwrap();
            let values: Vec<u32> = a.values().chain(b.values()).collect();
            let weights = WeightFunction::new(matroid.ground(), group, &values).unwrap();
            let wm = WeightedMatroid::new(matroid, weights).unwrap();
            if wm.base_weight_set() != a.sumset(b) {
                mismatches += 1;
            }
            if wm.ss_bound().unwrap() != (a.len() + b.len() - 1).min(5) {
                mismatches += 1;
            }
        }
    }
    report(
        "criterion 2 (Cauchy-Davenport via U1(A)+U1(B) over Z5)",
        mismatches == 0,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

fn theorem2_catalog() -> CatalogConfig {
    CatalogConfig {
        uniform_max_ground: 5,
        direct_sum_max_total: 6,
        gf2_max_rows: 3,
        gf2_max_cols: 4,
        random_gf3_matrices: 0,
        hand_instances: true,
        moduli: vec![2, 3, 5],
        pollard_filtered_moduli: vec![4, 6],
        max_weight_maps: 0,
    }
}

#[test]
fn criterion_3_theorem2_campaign() {
    let start = Instant::now();
    let config = CampaignConfig {
        catalog: theorem2_catalog(),
        checks: vec![CheckKind::Axioms, CheckKind::Main],
        ..CampaignConfig::default()
    };
    let summary = run_campaign(&config).unwrap();
    report(
        "criterion 3 (Theorem 2 campaign: inequality and equality cases)",
        summary.counterexamples == 0 && summary.instances > 0,
        start.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_4_lemma_suite() {
    let start = Instant::now();
    let config = CampaignConfig {
        catalog: theorem2_catalog(),
        checks: vec![CheckKind::Lemma1, CheckKind::Lemma2],
        ..CampaignConfig::default()
    };
    let summary = run_campaign(&config).unwrap();
    report(
        "criterion 4 (lemma suite: contraction identities and (M/u)^w + G_u)",
        summary.counterexamples == 0 && summary.instances > 0,
        start.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_5_egz() {
    let start = Instant::now();
    let mut ok = true;

    // exhaustive at n = 2 and n = 3
    for n in [2u32, 3] {
        let group = z(n);
        let len = 2 * n as usize - 1;
        let total = (n as u64).pow(len as u32);
        for code in 0..total {
            let mut terms = Vec::with_capacity(len);
            let mut rest = code;
            for _ in 0..len {
                terms.push((rest % u64::from(n)) as u32);
                rest /= u64::from(n);
            }
            let seq = SequenceInstance::new(group, &terms);
            let witness = egz_witness(&seq).unwrap();
            match witness {
                Some(indices) => {
                    let sum: u32 = indices.iter().map(|&i| seq.terms()[i]).sum();
                    ok &= indices.len() == n as usize && sum.is_multiple_of(n);
                }
                None => ok = false,
            }
            match check_egz_via_matroid(&seq) {
                Ok(agrees) => ok &= agrees,
                Err(Error::RepeatedResidue(_)) => {}
                Err(_) => ok = false,
            }
        }
    }

    // seeded random at n = 5
    let group = z(5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x45475a);
    for _ in 0..10_000 {
        let terms: Vec<u32> = (0..9).map(|_| rng.gen_range(0..5)).collect();
        let seq = SequenceInstance::new(group, &terms);
        if egz_witness(&seq).unwrap().is_none() {
            ok = false;
        }
        match check_egz_via_matroid(&seq) {
            Ok(agrees) => ok &= agrees,
            Err(Error::RepeatedResidue(_)) => {}
            Err(_) => ok = false,
        }
    }

    report(
        "criterion 5 (EGZ: exhaustive n=2,3; 10k random n=5; matroid route agreement)",
        ok,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_6_worked_witness_parallel_class() {
    let start = Instant::now();
    let matroid = parallel_class_spec().build().unwrap();
    let group = z(7);
    let weights = WeightFunction::new(matroid.ground(), group, &[0, 0, 1, 3]).unwrap();
    let wm = WeightedMatroid::new(matroid.clone(), weights).unwrap();

    // independent brute force, straight from the definitions
    let base_list: Vec<Vec<usize>> = vec![vec![0, 1], vec![0, 2], vec![0, 3]];
    let w = [0u32, 0, 1, 3];
    let mut brute_weights: Vec<u32> = base_list
        .iter()
        .map(|b| b.iter().map(|&i| w[i]).sum::<u32>() % 7)
        .collect();
    brute_weights.sort_unstable();
    brute_weights.dedup();
    let brute_rank = |subset: &[usize]| -> usize {
        base_list
            .iter()
            .map(|b| b.iter().filter(|x| subset.contains(x)).count())
            .max()
            .unwrap()
    };
    let fiber_rank_sum: usize = (0..7u32)
        .map(|g| {
            let fiber: Vec<usize> = (0..4).filter(|&i| w[i] == g).collect();
            brute_rank(&fiber)
        })
        .sum();
    let brute_bound = 7.min(fiber_rank_sum - 2 + 1);

    let mut ok = brute_weights == vec![0, 1, 3] && brute_bound == 3;

    let v = check_main(&wm).unwrap();
    ok &= v.bound == 3
        && v.weight_count == 3
        && v.pollard_ok
        && v.inequality_holds
        && v.is_equality
        && !v.case_i
        && v.case_ii
        && v.witness_hyperplane.unwrap().mask() == 0b0001
        && v.witness_shift.unwrap().value() == 0;

    // re-derive the case (ii) witness by brute force over every subset H
    // meeting the hyperplane definition and every shift g
    let mut brute_case_ii = false;
    for h in matroid.ground().subsets() {
        if matroid.rank(h) != 1 {
            continue;
        }
        let maximal = (0..4).all(|x| {
            h.contains(x) || matroid.rank(h.union(matroid.ground().subset_from([x]))) == 2
        });
        if !maximal {
            continue;
        }
        let contracted = wm.contract(h);
        for g in group.elements() {
            if contracted.base_weight_set().translate(g) == wm.base_weight_set() {
                brute_case_ii = true;
            }
        }
    }
    ok &= brute_case_ii;

    report(
        "criterion 6 (worked witness: parallel-class instance over Z7)",
        ok,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_7_negative_controls_and_determinism() {
    let start = Instant::now();
    let mut ok = true;

    // from_bases rejects {{1,2},{3,4}} citing B3
    let ground = GroundSet::new(5).unwrap();
    let rejection = Matroid::from_bases(
        ground,
        [ground.subset_from([1, 2]), ground.subset_from([3, 4])],
    );
    ok &= matches!(rejection, Err(Error::ExchangeFailure { element: 1, .. }));

    let small = CampaignConfig {
        catalog: CatalogConfig {
            uniform_max_ground: 3,
            direct_sum_max_total: 4,
            gf2_max_rows: 2,
            gf2_max_cols: 3,
            random_gf3_matrices: 2,
            hand_instances: true,
            moduli: vec![2, 3, 5],
            pollard_filtered_moduli: vec![4],
            max_weight_maps: 20,
        },
        seed: Some(42),
        ..CampaignConfig::default()
    };

    // fault injection must surface counterexamples
    let faulty = CampaignConfig { fault_inject: true, ..small.clone() };
    ok &= run_campaign(&faulty).unwrap().counterexamples >= 1;

    // identical config+seed gives byte-identical reports
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.jsonl");
    let path_b = dir.path().join("b.jsonl");
    let mut run = small.clone();
    run.output = Some(path_a.clone());
    let first = run_campaign(&run).unwrap();
    run.output = Some(path_b.clone());
    run.jobs = Some(2);
    let second = run_campaign(&run).unwrap();
    ok &= first.counterexamples == 0 && second.counterexamples == 0;
    ok &= std::fs::read(&path_a).unwrap() == std::fs::read(&path_b).unwrap();

    report(
        "criterion 7 (negative controls, fault injection, determinism)",
        ok,
        start.elapsed(),
        Duration::from_secs(120),
    );
}
