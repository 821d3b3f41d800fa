//! One pass/fail line per acceptance criterion. Run with `--nocapture` to
//! see the report.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use structnet_core::designer::{design_switched, design_with, CostModel};
use structnet_core::generate::{
    four_subsystem_example, random_instance, random_modes, random_weights, reduction_instance,
    RandomParams,
};
use structnet_core::model::{check_instance, neighbor_map_from_pairs, StateRef};
use structnet_core::oracle::{
    exact_min_for_accessibility, exact_min_for_matching, exact_min_interconnections,
    numeric_realization_check, NumericVerdict, OracleConfig, OracleError,
};
use structnet_core::{
    check_structural_controllability, design, CompositeInstance, InterconnectionEdge,
    SparsityPattern,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, name: &str, o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {n} [{tag}] {name}: {}", o.detail);
}

/// Feasible instances with k <= 4, n_i <= 3, at most 10 states and at most
/// 24 candidate links.
fn corpus(count: usize) -> Vec<CompositeInstance> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = RandomParams {
            subsystems: rng.gen_range(2..=4),
            state_dim: (1, 3),
            input_dim: (0, 1),
            neighbor_density: rng.gen_range(0.2..0.6),
            pattern_density: rng.gen_range(0.15..0.45),
            seed,
        };
        seed += 1;
        let inst = random_instance(&params).unwrap();
        if inst.state_count() > 10 || inst.candidate_count() > 24 {
            continue;
        }
        let all = inst.candidate_edges();
        if check_instance(&inst, &all).unwrap().controllable {
            out.push(inst);
        }
    }
    out
}

fn link(i: usize, q: usize, j: usize, p: usize) -> InterconnectionEdge {
    InterconnectionEdge::new(StateRef::new(i, q), StateRef::new(j, p))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let inst = four_subsystem_example();
    let r = design(&inst).unwrap();
    let elapsed = t.elapsed();
    let controllable = check_instance(&inst, &r.union_edges).unwrap().controllable;
    let stage1_set = r.stage1_edges == vec![link(0, 1, 2, 2), link(2, 2, 3, 0)];
    let stage2_set = r.stage2_edges == vec![link(0, 0, 2, 0), link(2, 0, 1, 0), link(2, 0, 3, 0)];
    let pass = r.stage1_cost == 2.0
        && r.stage2_cost == 3.0
        && r.union_cost == 5.0
        && r.union_edges.len() == 5
        && r.lower_bound == 3.0
        && r.ratio_bound == 5.0 / 3.0
        && controllable
        && stage1_set
        && stage2_set
        && elapsed < Duration::from_secs(1);
    Outcome {
        pass,
        detail: format!(
            "costs {}/{}/{}, lower bound {}, ratio {:.4}, controllable {controllable}, \
             stage-1 set exact {stage1_set}, stage-2 set per realizer rule {stage2_set}, {elapsed:?}",
            r.stage1_cost, r.stage2_cost, r.union_cost, r.lower_bound, r.ratio_bound
        ),
    }
}

fn criteria_2_and_3(corpus: &[CompositeInstance]) -> (Outcome, Outcome) {
    let t = Instant::now();
    let cfg = OracleConfig::default();
    let (mut bad2, mut bad3) = (Vec::new(), Vec::new());
    for (idx, inst) in corpus.iter().enumerate() {
        let r = design(inst).unwrap();
        let m = exact_min_for_matching(inst, &cfg)
            .unwrap()
            .optimum_cost
            .unwrap();
        let a = exact_min_for_accessibility(inst, &cfg)
            .unwrap()
            .optimum_cost
            .unwrap();
        let delta = exact_min_interconnections(inst, &cfg)
            .unwrap()
            .optimum_cost
            .unwrap();
        if r.stage1_cost != m || r.stage2_cost != a {
            bad2.push(idx);
        }
        let ok3 = delta <= r.union_cost
            && r.union_cost <= 2.0 * delta
            && r.stage1_cost.max(r.stage2_cost) <= delta
            && m.max(a) <= delta
            && delta <= m + a;
        if !ok3 {
            bad3.push(idx);
        }
    }
    let elapsed = t.elapsed();
    (
        Outcome {
            pass: bad2.is_empty() && elapsed < Duration::from_secs(300),
            detail: format!(
                "{} instances, {} stage mismatches {:?}, {elapsed:?}",
                corpus.len(),
                bad2.len(),
                bad2
            ),
        },
        Outcome {
            pass: bad3.is_empty(),
            detail: format!(
                "{} instances, {} bound violations {:?}",
                corpus.len(),
                bad3.len(),
                bad3
            ),
        },
    )
}

fn criterion_4() -> Outcome {
    let path = |r: usize| (0..r - 1).map(|v| (v, v + 1)).collect::<Vec<_>>();
    let cycle = |r: usize| {
        let mut e = path(r);
        e.push((r - 1, 0));
        e
    };
    let complete = |r: usize| {
        (0..r)
            .flat_map(|u| (u + 1..r).map(move |v| (u, v)))
            .collect::<Vec<_>>()
    };
    let star = |leaves: usize| (1..=leaves).map(|v| (0, v)).collect::<Vec<_>>();
    let spider = vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)];
    type Case = (&'static str, usize, Vec<(usize, usize)>, bool);
    let graphs: Vec<Case> = vec![
        ("P2", 2, path(2), true),
        ("P3", 3, path(3), true),
        ("P4", 4, path(4), true),
        ("P5", 5, path(5), true),
        ("C4", 4, cycle(4), true),
        ("C5", 5, cycle(5), true),
        ("K4", 4, complete(4), true),
        ("K1,3", 4, star(3), false),
        ("K1,4", 5, star(4), false),
        ("spider", 6, spider, false),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut wrong = Vec::new();
    let t = Instant::now();
    for (name, r, edges, hamiltonian) in graphs {
        // relabel vertices so leader order does not line up with the path
        let mut perm: Vec<usize> = (0..r).collect();
        for i in (1..r).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let edges: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let target = (r - 1) as f64;
        let mut min_is_target = false;
        for leader in 0..r {
            let inst = reduction_instance(r, &edges, leader).unwrap();
            let within = exact_min_interconnections(
                &inst,
                &OracleConfig {
                    max_candidates: 400,
                    budget: Some(target),
                    ..OracleConfig::default()
                },
            );
            // an infeasible leader has no finite optimum at all
            let yes = match within {
                Ok(res) => res.answer == Some(true),
                Err(OracleError::Infeasible) => false,
                Err(e) => panic!("{name}: {e}"),
            };
            if yes {
                // every non-leader needs an incoming link, so r - 1 is a floor
                let below = exact_min_interconnections(
                    &inst,
                    &OracleConfig {
                        max_candidates: 400,
                        budget: Some(target - 1.0),
                        ..OracleConfig::default()
                    },
                )
                .unwrap();
                assert_eq!(below.answer, Some(false), "{name}: below r-1");
                min_is_target = true;
                break;
            }
        }
        if min_is_target != hamiltonian {
            wrong.push(name);
        }
    }
    Outcome {
        pass: wrong.is_empty(),
        detail: format!("10 graphs, wrong verdicts {wrong:?}, {:?}", t.elapsed()),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut agree, mut unsound, mut controllable) = (0, 0, 0);
    let total = 200;
    for trial in 0..total {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=2);
        let density = rng.gen_range(0.1..0.4);
        let mut a = SparsityPattern::zeros(n, n);
        let mut b = SparsityPattern::zeros(n, m);
        for p in 0..n {
            for q in 0..n {
                if rng.gen_bool(density) {
                    a.insert(p, q).unwrap();
                }
            }
            for q in 0..m {
                if rng.gen_bool(density) {
                    b.insert(p, q).unwrap();
                }
            }
        }
        let structural = check_structural_controllability(&a, &b)
            .unwrap()
            .controllable;
        let numeric = numeric_realization_check(&a, &b, 3, trial).unwrap();
        controllable += structural as usize;
        if (numeric == NumericVerdict::Controllable) == structural {
            agree += 1;
        }
        if numeric == NumericVerdict::Controllable && !structural {
            unsound += 1;
        }
    }
    Outcome {
        pass: agree * 100 >= total * 99 && unsound == 0,
        detail: format!(
            "{agree}/{total} agree ({controllable} structurally controllable), {unsound} unsound"
        ),
    }
}

fn criterion_6(corpus: &[CompositeInstance]) -> Outcome {
    let weighted_cfg = OracleConfig {
        cost_model: CostModel::Weighted,
        ..OracleConfig::default()
    };
    let (mut bound_bad, mut uniform_bad) = (0, 0);
    let count = 60;
    for (idx, inst) in corpus.iter().take(count).enumerate() {
        let w = random_weights(inst.clone(), 1.0, 5.0, idx as u64).unwrap();
        let r = design_with(&w, CostModel::Weighted).unwrap();
        let delta = exact_min_interconnections(&w, &weighted_cfg)
            .unwrap()
            .optimum_cost
            .unwrap();
        let tol = 1e-9 * delta.max(1.0);
        if r.union_cost > 2.0 * delta + tol || r.union_cost + tol < delta {
            bound_bad += 1;
        }
        let ones = random_weights(inst.clone(), 1.0, 1.0, 0).unwrap();
        let mut weighted = design_with(&ones, CostModel::Weighted).unwrap();
        let plain = design(inst).unwrap();
        weighted.cost_model = plain.cost_model;
        if weighted != plain {
            uniform_bad += 1;
        }
    }
    Outcome {
        pass: bound_bad == 0 && uniform_bad == 0,
        detail: format!(
            "{count} weighted instances, {bound_bad} bound violations, \
             {uniform_bad} uniform-weight mismatches"
        ),
    }
}

fn criterion_7(corpus: &[CompositeInstance]) -> Outcome {
    let mut bad = 0;
    let count = 30;
    for (idx, inst) in corpus.iter().take(count).enumerate() {
        let moded = random_modes(inst.clone(), 2, idx as u64).unwrap();
        match design_switched(&moded) {
            Ok(r) => {
                let admitted = r
                    .union_edges
                    .iter()
                    .all(|e| e.mode.is_some() && moded.is_admissible(e));
                if !admitted {
                    bad += 1;
                }
            }
            Err(_) => bad += 1,
        }
    }

    let inst = four_subsystem_example();
    let mode0 = neighbor_map_from_pairs(4, [(0, 2), (2, 1)]).unwrap();
    let mode1 = neighbor_map_from_pairs(4, [(1, 0), (2, 3)]).unwrap();
    let split = inst.clone().with_modes(vec![mode0, mode1]).unwrap();
    let r = design_switched(&split).unwrap();
    let plain = design(&inst).unwrap();
    let stripped: BTreeSet<_> = r.union_edges.iter().map(|e| e.key()).collect();
    let expected: BTreeSet<_> = plain.union_edges.iter().map(|e| e.key()).collect();
    let example_ok = r.union_edges.len() == 5
        && stripped == expected
        && r.union_edges.iter().all(|e| split.is_admissible(e));
    Outcome {
        pass: bad == 0 && example_ok,
        detail: format!(
            "{count} two-mode instances, {bad} failures; split example gives {} links, same set {}",
            r.union_edges.len(),
            stripped == expected
        ),
    }
}

fn large_instance(subsystems: usize, seed: u64) -> CompositeInstance {
    let mut seed = seed;
    loop {
        let inst = random_instance(&RandomParams {
            subsystems,
            state_dim: (10, 10),
            input_dim: (1, 1),
            neighbor_density: 4.0 / subsystems as f64,
            pattern_density: 0.15,
            seed,
        })
        .unwrap();
        let all = inst.candidate_edges();
        if check_instance(&inst, &all).unwrap().controllable {
            return inst;
        }
        seed += 1;
    }
}

fn criterion_8() -> Outcome {
    let small = large_instance(50, 8);
    let big = large_instance(100, 8);
    let time = |inst: &CompositeInstance| {
        let t = Instant::now();
        let r = design(inst).unwrap();
        (t.elapsed(), r.union_edges.len())
    };
    let (t500, l500) = time(&small);
    let (t1000, l1000) = time(&big);
    let ratio = t1000.as_secs_f64() / t500.as_secs_f64().max(1e-6);
    Outcome {
        pass: t500 < Duration::from_secs(10) && ratio < 8.0,
        detail: format!(
            "n_T={} ({} candidates, {l500} links) in {t500:?}; n_T={} ({} candidates, {l1000} links) \
             in {t1000:?}; ratio {ratio:.2}",
            small.state_count(),
            small.candidate_count(),
            big.state_count(),
            big.candidate_count()
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let corpus = corpus(200);
    let mut outcomes = Vec::new();
    outcomes.push(("worked example", criterion_1()));
    let (c2, c3) = criteria_2_and_3(&corpus);
    outcomes.push(("stage optimality vs oracle", c2));
    outcomes.push(("2-optimality", c3));
    outcomes.push(("reduction equivalence", criterion_4()));
    outcomes.push(("structural vs numeric", criterion_5()));
    outcomes.push(("weighted variant", criterion_6(&corpus)));
    outcomes.push(("switched variant", criterion_7(&corpus)));
    outcomes.push(("complexity smoke", criterion_8()));
    for (i, (name, o)) in outcomes.iter().enumerate() {
        report(i + 1, name, o);
    }
    let failed: Vec<usize> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, (_, o))| !o.pass)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
