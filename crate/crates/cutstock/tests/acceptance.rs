//! Acceptance gate: one test per criterion, each printing a pass/fail line
//! (visible with `--nocapture` or on failure).
//!
//! Criterion 5 contains a deliberate red: the five-order "single pattern"
//! expectation is refuted by exact search (see the test for the analysis).
//! Everything else is expected green.

use std::time::{Duration, Instant};

use num_rational::Ratio;

use cutstock::corpus;
use cutstock::exact::{self, BruteLimits, Objective};
use cutstock::generate::{generate_instance, GenBoundMode, GenParams};
use cutstock::instance::MaxQty;
use cutstock::lprelax::{self, BoundMode};
use cutstock::patmin::{self, BudgetSearchOutcome};
use cutstock::rational::{percent_3dp, ratio_string};
use cutstock::{Instance, Solution};

fn gap132() -> Instance {
    Instance::one_sided(132, &[(44, 2), (33, 3), (12, 6)]).unwrap()
}

/// Criterion 7d applied to every solution the suite produces.
fn audit(inst: &Instance, sol: &Solution) {
    let summary = sol.summarize(inst).unwrap();
    assert!(sol.validate(inst).unwrap().feasible, "infeasible solution");
    let produced_width: u64 = summary
        .produced
        .iter()
        .zip(inst.orders())
        .map(|(&n, o)| n * o.size())
        .sum();
    assert_eq!(
        summary.masters * inst.master_width(),
        produced_width + summary.total_waste,
        "accounting identity violated"
    );
    let canonical = sol.canonicalize();
    assert_eq!(canonical, canonical.canonicalize(), "canonicalize not idempotent");
    assert_eq!(canonical.masters(), sol.masters());
    assert_eq!(canonical.total_waste(), sol.total_waste());
}

#[test]
fn criterion_1_round_up_gap() {
    let start = Instant::now();
    let g = lprelax::integrality_gap(&gap132()).unwrap();
    assert_eq!(ratio_string(&g.z_lp), "259/132");
    assert_eq!(g.z_star, 3);
    assert_eq!(ratio_string(&g.gap), "137/132");
    assert_eq!(g.rounded_gap, 1);
    assert!(!lprelax::irup_holds(&gap132(), BoundMode::OneSided).unwrap());
    assert!(lprelax::mirup_holds(&gap132(), BoundMode::OneSided).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 1: pass — z_LP 259/132, z* 3, gap 137/132, rounded gap 1, IRUP false, MIRUP true ({elapsed:?})");
}

#[test]
fn criterion_2_two_sided_divergence() {
    let start = Instant::now();
    let inst = Instance::from_triples(
        1000,
        &[
            (340, 15, MaxQty::Bounded(18)),
            (300, 15, MaxQty::Bounded(15)),
        ],
    )
    .unwrap();
    let waste = exact::solve_exact(&inst, Objective::MinWaste, None).unwrap();
    assert_eq!(waste.optimal_value(), Some(380));
    assert_eq!(waste.secondary_value(), Some(11));
    let ws = waste.solution().unwrap();
    audit(&inst, ws);
    assert_eq!(
        percent_3dp(&ws.summarize(&inst).unwrap().percent_waste),
        "3.455"
    );
    let masters = exact::solve_exact(&inst, Objective::MinMasters, None).unwrap();
    assert_eq!(masters.optimal_value(), Some(10));
    assert_eq!(masters.secondary_value(), Some(400));
    let ms = masters.solution().unwrap();
    audit(&inst, ms);
    assert_eq!(
        percent_3dp(&ms.summarize(&inst).unwrap().percent_waste),
        "4.000"
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("criterion 2: pass — waste objective (380, 11 masters, 3.455%), master objective (10 masters, 400, 4.000%) ({elapsed:?})");
}

#[test]
fn criterion_3_one_sided_variant() {
    let inst = Instance::one_sided(1000, &[(340, 15), (300, 15)]).unwrap();
    let masters = exact::solve_exact(&inst, Objective::MinMasters, None).unwrap();
    assert_eq!(masters.optimal_value(), Some(10));
    audit(&inst, masters.solution().unwrap());

    let waste = exact::solve_exact(&inst, Objective::MinWaste, None).unwrap();
    let sol = waste.solution().unwrap();
    audit(&inst, sol);
    let summary = sol.summarize(&inst).unwrap();
    assert!(
        summary.masters > 10,
        "waste-optimal master count {} must strictly exceed 10",
        summary.masters
    );
    println!(
        "criterion 3: pass — master optimum 10; waste optimum uses {} masters, absolute waste {}, percentage waste {}%",
        summary.masters,
        summary.total_waste,
        percent_3dp(&summary.percent_waste)
    );
}

#[test]
fn criterion_4_order_splitting() {
    let start = Instant::now();
    let single = Instance::equality(10, &[(3, 7)]).unwrap();
    let solve = exact::solve_exact(&single, Objective::MinMasters, None).unwrap();
    assert_eq!(solve.optimal_value(), Some(3));
    audit(&single, solve.solution().unwrap());
    let patmin_report = patmin::min_patterns(&single, None).unwrap();
    assert_eq!(patmin_report.min_pattern_count(), Some(2));
    audit(&single, patmin_report.witness().unwrap());
    let split = patmin::min_split_for_order(&single, 0, None).unwrap();
    assert_eq!(split.min_appearances(), Some(2));
    audit(&single, split.witness());

    let four = Instance::equality(1000, &[(400, 1), (375, 1), (350, 1), (275, 300)]).unwrap();
    let split = patmin::min_split_for_order(&four, 3, None).unwrap();
    assert_eq!(split.min_appearances(), Some(3));
    audit(&four, split.witness());
    assert_eq!(
        split.witness().pattern_count(),
        3,
        "split count must equal the witness's total pattern count"
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 4: pass — single-order (3 masters, 2 patterns, split 2); four-size instance split 3 = witness pattern count ({elapsed:?})");
}

#[test]
fn criterion_5_pattern_counts() {
    let start = Instant::now();

    // m = 2 instance: k = 3 with optimal waste 900, cross-checked against
    // the exhaustive oracle.
    let two = Instance::equality(1000, &[(300, 7), (250, 100)]).unwrap();
    let brute = exact::brute_force_solve(&two, Objective::MinWaste, BruteLimits::default()).unwrap();
    assert_eq!(brute.optimal_value(), Some(900));
    audit(&two, brute.solution().unwrap());
    let report = patmin::min_patterns(&two, None).unwrap();
    assert_eq!(report.optimal_waste, 900);
    assert_eq!(report.min_pattern_count(), Some(3));
    audit(&two, report.witness().unwrap());

    // Single-order trivial case: k = 2.
    let single = Instance::equality(10, &[(3, 7)]).unwrap();
    assert_eq!(
        patmin::min_patterns(&single, None).unwrap().min_pattern_count(),
        Some(2)
    );

    // Lower bound ceil(sum of sizes / W) on the three reference instances.
    let five = Instance::equality(
        1000,
        &[(300, 100), (250, 100), (200, 100), (150, 100), (90, 100)],
    )
    .unwrap();
    assert_eq!(patmin::pattern_lower_bound(&five), 1);
    assert_eq!(patmin::pattern_lower_bound(&corpus::nine11_instance()), 3);
    assert_eq!(patmin::pattern_lower_bound(&two), 1);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");

    // Expected m = 5 clause: k = 1 via the unique pattern (1,1,1,1,1) on 100
    // masters. Exact search refutes it: the sizes admit full-width patterns
    // (2*300+250+150, 4*250, 5*200, 300+250+5*90, ...), so 99 masters reach
    // waste 0 (strictly better than the single pattern's waste 1000), and the
    // zero-waste optimum needs 4 distinct patterns. The values below are the
    // verified ground truth; the final assertion states the original
    // expectation and is an intentional, honest failure.
    let waste = exact::solve_exact(&five, Objective::MinWaste, None).unwrap();
    assert_eq!(waste.optimal_value(), Some(0));
    assert_eq!(waste.secondary_value(), Some(99));
    audit(&five, waste.solution().unwrap());
    let report = patmin::min_patterns(&five, None).unwrap();
    assert_eq!(report.optimal_waste, 0);
    audit(&five, report.witness().unwrap());
    let k = report.min_pattern_count().unwrap();
    println!(
        "criterion 5: FAIL (discovery) — five-order clause expected k=1 on 100 masters; \
         ground truth is waste 0 on 99 masters with k={k}; remaining clauses pass"
    );
    assert_eq!(
        k, 1,
        "five-order instance was expected to have a unique single-pattern optimum \
         ((1,1,1,1,1) x 100, waste 1000); exact search finds zero-waste solutions on \
         99 masters instead, e.g. 40x(2,1,0,1,0) + 20x(1,1,0,0,5) + 7x(0,4,0,0,0) + \
         12x(0,1,0,5,0) + 20x(0,0,5,0,0), and the zero-waste optimum needs {k} \
         distinct patterns — the expectation is refuted, not missed"
    );
}

#[test]
fn criterion_6_nine_order_verify_mode() {
    let start = Instant::now();
    let corpus = corpus::builtin_corpus();
    let entry = corpus.iter().find(|e| e.id == "nine11").unwrap();
    let witness = entry.witness.as_ref().unwrap();
    assert_eq!(witness.pattern_count(), 11);
    assert!(witness.validate(&entry.instance).unwrap().feasible);
    audit(&entry.instance, witness);
    let solve = exact::solve_exact(&entry.instance, Objective::MinWaste, None).unwrap();
    assert_eq!(
        solve.optimal_value(),
        Some(witness.total_waste()),
        "stored witness waste must equal the solver-computed optimum"
    );
    audit(&entry.instance, solve.solution().unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 6: pass — stored 11-pattern witness is feasible and waste-optimal (waste {}, {} masters) ({elapsed:?})",
        witness.total_waste(),
        witness.masters()
    );
}

/// Long-running proof: no waste-optimal solution of the nine-order instance
/// uses 10 or fewer distinct patterns. Run explicitly with
/// `cargo test -- --ignored criterion_6_nine_order_prove_mode`.
#[test]
#[ignore]
fn criterion_6_nine_order_prove_mode() {
    let inst = corpus::nine11_instance();
    let solve = exact::solve_exact(&inst, Objective::MinWaste, None).unwrap();
    let optimal_waste = solve.optimal_value().unwrap();
    match patmin::search_with_pattern_budget(&inst, optimal_waste, 10, None).unwrap() {
        BudgetSearchOutcome::Exhausted => {
            println!("criterion 6 (prove): pass — no waste-optimal solution with k <= 10")
        }
        BudgetSearchOutcome::Found(sol) => {
            panic!(
                "found a waste-optimal solution with only {} patterns: {sol}",
                sol.pattern_count()
            )
        }
        BudgetSearchOutcome::TimedOut => unreachable!("no deadline was set"),
    }
}

#[test]
fn criterion_7a_oracle_equivalence() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let m = 2 + (seed % 2) as usize; // 2 or 3 orders
        let width = 20 + (seed % 41); // 20..=60
        let params = GenParams {
            order_count: m,
            master_width: width,
            size_lo: Ratio::new(1, 5),
            size_hi: Ratio::new(4, 5),
            demand_lo: 1,
            demand_hi: 12,
            bound_mode: if seed % 3 == 0 {
                GenBoundMode::OneSided
            } else {
                GenBoundMode::Equality
            },
        };
        let inst = generate_instance(&params, seed).unwrap();
        for objective in [Objective::MinMasters, Objective::MinWaste] {
            let exact_report = exact::solve_exact(&inst, objective, None).unwrap();
            let brute_report =
                exact::brute_force_solve(&inst, objective, BruteLimits::default()).unwrap();
            assert_eq!(
                exact_report.optimal_value(),
                brute_report.optimal_value(),
                "objective mismatch on seed {seed}, {objective:?}, {inst:?}"
            );
            assert_eq!(
                exact_report.secondary_value(),
                brute_report.secondary_value(),
                "secondary mismatch on seed {seed}, {objective:?}, {inst:?}"
            );
            if let Some(sol) = exact_report.solution() {
                audit(&inst, sol);
            }
            if let Some(sol) = brute_report.solution() {
                audit(&inst, sol);
            }
        }
        checked += 1;
    }
    println!("criterion 7a: pass — solver matches the exhaustive oracle on {checked} instances, both objectives");
}

#[test]
fn criterion_7b_irup_sweep_small_widths() {
    let mut checked = 0;
    for seed in 0..1000u64 {
        let width = 8 + (seed % 8); // 8..=15
        let m = 2 + (seed % 2) as usize;
        let params = GenParams {
            order_count: m,
            master_width: width,
            size_lo: Ratio::new(1, 8),
            size_hi: Ratio::new(7, 8),
            demand_lo: 1,
            demand_hi: 9,
            bound_mode: GenBoundMode::Equality,
        };
        let inst = generate_instance(&params, 1000 + seed).unwrap();
        let g = lprelax::gap_report(&inst, BoundMode::Equality).unwrap();
        assert_eq!(
            g.rounded_gap, 0,
            "round-up property violated on seed {seed}: {inst:?} (z_LP {}, z* {})",
            ratio_string(&g.z_lp),
            g.z_star
        );
        checked += 1;
    }
    println!("criterion 7b: pass — z* = ceil(z_LP) on {checked} equality instances with W <= 15");
}

#[test]
fn criterion_7c_mirup_sweep() {
    let mut discoveries = Vec::new();
    for seed in 0..500u64 {
        let m = 2 + (seed % 5) as usize; // 2..=6
        let width = 50 + (seed % 151); // 50..=200
        let params = GenParams {
            order_count: m,
            master_width: width,
            size_lo: Ratio::new(15, 100),
            size_hi: Ratio::new(50, 100),
            demand_lo: 1,
            demand_hi: 20,
            bound_mode: GenBoundMode::Equality,
        };
        let inst = generate_instance(&params, 5000 + seed).unwrap();
        let g = lprelax::gap_report(&inst, BoundMode::Equality).unwrap();
        if g.rounded_gap > 1 {
            discoveries.push((seed, inst.clone(), ratio_string(&g.z_lp), g.z_star));
        }
    }
    // A violation would be a mathematical discovery; report it loudly rather
    // than hiding it, but do not fail the build for it.
    for (seed, inst, z_lp, z_star) in &discoveries {
        println!(
            "criterion 7c DISCOVERY: modified round-up property violated at seed {seed}: {inst:?} (z_LP {z_lp}, z* {z_star})"
        );
    }
    println!(
        "criterion 7c: pass — z* <= ceil(z_LP) + 1 on {}/500 instances ({} violations reported as discoveries)",
        500 - discoveries.len(),
        discoveries.len()
    );
}

#[test]
fn criterion_8_pattern_count_replication() {
    let mut histogram: std::collections::BTreeMap<u64, usize> = Default::default();
    let mut completed = 0usize;
    let mut timed_out = 0usize;
    for seed in 0..200u64 {
        let params = GenParams {
            order_count: 6,
            master_width: 120,
            size_lo: Ratio::new(15, 100),
            size_hi: Ratio::new(45, 100),
            demand_lo: 5,
            demand_hi: 15,
            bound_mode: GenBoundMode::Equality,
        };
        let inst = generate_instance(&params, 8000 + seed).unwrap();
        match patmin::min_patterns(&inst, Some(Duration::from_secs(1))) {
            Ok(report) => match report.min_pattern_count() {
                Some(k) => {
                    audit(&inst, report.witness().unwrap());
                    assert!(
                        k <= 6 + 2,
                        "pattern-count conjecture counterexample at seed {seed}: \
                         k = {k} > m + 2 on {inst:?} — flagged for human review"
                    );
                    *histogram.entry(k).or_default() += 1;
                    completed += 1;
                }
                None => timed_out += 1,
            },
            Err(_) => timed_out += 1,
        }
    }
    println!(
        "criterion 8: pass — {completed} instances completed ({timed_out} hit the per-instance budget); k distribution: {histogram:?}; all completed satisfy k <= m+2"
    );
    assert!(completed >= 100, "too few completions: {completed}");
}
