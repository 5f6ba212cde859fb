//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! 1. Worked example, inverse along d over Q, through the CLI, exactly
//!    [[1,2],[0,0]], exit 0, under a second.
//! 2. Worked example, weighted Bott-Duffin inverse over Q, through the CLI,
//!    exactly [[0,0],[-1,-1]] with a trivial homogeneous space, under a
//!    second.
//! 3. Every theorem suite passes with zero failures: exhaustive M_2(GF(2))
//!    with v = w = 1, plus 500 seeded random instances over M_2(GF(3)) and
//!    over M_2(Z_4), within ten minutes total.
//! 4. Oracle equivalence: wherever compute succeeds, brute-force enumeration
//!    returns exactly the computed singleton — all 4096 exhaustive GF(2)
//!    contexts for the bc kind, 200 seeded contexts per other kind.
//! 5. Group invertibility over M_2(GF(2)) and M_2(GF(3)): the membership
//!    criterion, the rank criterion, and exhaustive search agree on every
//!    element, under thirty seconds.
//! 6. Route agreement on 100 seeded GF(3) instances: direct construction,
//!    both group-inverse routes, the hybrid route, and the along-d route
//!    produce identical values.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use wbc_core::geninv::{group_inverse, is_group_invertible};
use wbc_core::harness::{
    generate_constrained, oracle_search, random_invertible, random_matrix, rng_for, run_suite,
    suite_names, Constraint, Instance, InstanceSpace, DEFAULT_BUDGET,
};
use wbc_core::matrix::{all_matrices, prod};
use wbc_core::solve::{ann_equal, rank, Side};
use wbc_core::weighted::{
    along_d, annihilator_inverse, bc_exists, bc_inverse, bc_inverse_via_group, bott_duffin,
    hybrid_inverse, hybrid_via_group, InverseKind, WeightedContext,
};
use wbc_core::{Matrix, RingSpec};

fn criterion(n: u32, name: &str, f: impl FnOnce() -> Result<(), String>) {
    match f() {
        Ok(()) => println!("ACCEPTANCE {n} ({name}): PASS"),
        Err(e) => {
            println!("ACCEPTANCE {n} ({name}): FAIL - {e}");
            panic!("acceptance criterion {n} ({name}) failed: {e}");
        }
    }
}

fn run_cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_wbc"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

#[test]
fn criterion_1_along_d_worked_example() {
    criterion(1, "inverse along d, worked 2x2 example over Q", || {
        let ctx = r#"{"ring":{"kind":"q"},"k":2,
            "a":[["1","1"],["0","0"]],
            "v":[["1","1"],["0","-1"]],
            "w":[["0","1"],["1","0"]],
            "d":[["1","2"],["0","0"]]}"#;
        let start = Instant::now();
        let (code, v) = run_cli(&["compute", "--kind", "along-d", "--in", ctx]);
        let elapsed = start.elapsed();
        if code != 0 {
            return Err(format!("exit code {code}, expected 0"));
        }
        let expect = serde_json::json!([["1", "2"], ["0", "0"]]);
        if v["value"]["entries"] != expect {
            return Err(format!("value {:?}, expected {expect}", v["value"]["entries"]));
        }
        if elapsed > Duration::from_secs(1) {
            return Err(format!("took {elapsed:?}, budget is 1 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_2_bott_duffin_worked_example() {
    criterion(2, "weighted Bott-Duffin, worked 2x2 example over Q", || {
        let ctx = r#"{"ring":{"kind":"q"},"k":2,
            "a":[["0","0"],["0","1"]],
            "v":[["0","-1"],["1","0"]],
            "w":[["1","0"],["0","1"]],
            "e":[["0","0"],["1","1"]],
            "f":[["1","1"],["0","0"]]}"#;
        let start = Instant::now();
        let (code, v) = run_cli(&["compute", "--kind", "bott-duffin", "--in", ctx]);
        let elapsed = start.elapsed();
        if code != 0 {
            return Err(format!("exit code {code}, expected 0"));
        }
        let expect = serde_json::json!([["0", "0"], ["-1", "-1"]]);
        if v["value"]["entries"] != expect {
            return Err(format!("value {:?}, expected {expect}", v["value"]["entries"]));
        }
        let unique = v["checks"]
            .as_array()
            .and_then(|cs| {
                cs.iter()
                    .find(|c| c[0] == "unique")
                    .and_then(|c| c[1].as_bool())
            })
            .unwrap_or(false);
        if !unique {
            return Err("homogeneous solution space is not trivial".into());
        }
        if elapsed > Duration::from_secs(1) {
            return Err(format!("took {elapsed:?}, budget is 1 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_3_all_theorem_suites() {
    criterion(3, "all theorem suites, zero failures", || {
        let start = Instant::now();
        let gf2 = RingSpec::prime_field(2).unwrap();
        let gf3 = RingSpec::prime_field(3).unwrap();
        let z4 = RingSpec::modular(4).unwrap();
        let names = suite_names();
        if names.len() < 14 {
            return Err(format!("only {} suites registered", names.len()));
        }
        for suite in &names {
            for space in [
                InstanceSpace::exhaustive(&gf2, 2),
                InstanceSpace::random(&gf3, 2, 20260809, 500),
                InstanceSpace::random(&z4, 2, 20260810, 500),
            ] {
                let res = run_suite(suite, &space)
                    .map_err(|e| format!("{suite} over {:?}: {e}", space.ring))?;
                if !res.passed() {
                    let f = &res.failures[0];
                    return Err(format!(
                        "{suite} over {:?}: {} failures; first property {:?} on {}",
                        space.ring,
                        res.failures.len(),
                        f.property,
                        serde_json::to_string(&f.instance).unwrap()
                    ));
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(600) {
            return Err(format!("took {elapsed:?}, budget is 600 s"));
        }
        Ok(())
    });
}

fn oracle_matches(kind: InverseKind, inst: &Instance, ctx: &WeightedContext) -> Result<(), String> {
    let rep = match kind {
        InverseKind::Bc => bc_inverse(ctx),
        InverseKind::Hybrid => hybrid_inverse(ctx),
        InverseKind::Annihilator => annihilator_inverse(ctx),
        _ => unreachable!(),
    }
    .map_err(|e| e.to_string())?;
    let hits = oracle_search(kind, inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if rep.exists {
        let y = rep.value.expect("existing value");
        if hits != vec![y] {
            return Err(format!(
                "{} oracle mismatch on {}",
                kind.as_str(),
                serde_json::to_string(inst).unwrap()
            ));
        }
    } else if !hits.is_empty() {
        return Err(format!(
            "{} compute missed an inverse on {}",
            kind.as_str(),
            serde_json::to_string(inst).unwrap()
        ));
    }
    Ok(())
}

#[test]
fn criterion_4_oracle_equivalence() {
    criterion(4, "oracle equivalence for all five kinds", || {
        let gf2 = RingSpec::prime_field(2).unwrap();
        let gf3 = RingSpec::prime_field(3).unwrap();
        let one2 = Matrix::one(&gf2, 2);

        // bc kind: exhaustive over the 4096 (a, b, c) contexts with v = w = 1
        let all: Vec<Matrix> = all_matrices(&gf2, 2).unwrap().collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    let ctx = WeightedContext::new(
                        a.clone(),
                        b.clone(),
                        c.clone(),
                        one2.clone(),
                        one2.clone(),
                    )
                    .unwrap();
                    let inst = Instance::new(&gf2, 2)
                        .with("a", a.clone())
                        .with("b", b.clone())
                        .with("c", c.clone())
                        .with("v", one2.clone())
                        .with("w", one2.clone());
                    oracle_matches(InverseKind::Bc, &inst, &ctx)?;
                }
            }
        }

        // hybrid and annihilator kinds: 200 seeded GF(3) contexts with
        // invertible v each
        let space = InstanceSpace::random(&gf3, 2, 424242, 200);
        let insts =
            generate_constrained(&space, Constraint::VInvertible).map_err(|e| e.to_string())?;
        for inst in &insts {
            let ctx = inst.weighted_context().map_err(|e| e.to_string())?;
            oracle_matches(InverseKind::Hybrid, inst, &ctx)?;
            oracle_matches(InverseKind::Annihilator, inst, &ctx)?;
        }

        // Bott-Duffin kind: 200 seeded idempotent pairs over GF(3)
        let space = InstanceSpace::random(&gf3, 2, 515151, 200);
        let insts =
            generate_constrained(&space, Constraint::IdempotentPair).map_err(|e| e.to_string())?;
        for inst in &insts {
            let bctx = inst.bott_duffin_context().map_err(|e| e.to_string())?;
            let rep = bott_duffin(&bctx).map_err(|e| e.to_string())?;
            let hits =
                oracle_search(InverseKind::BottDuffin, inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if rep.exists {
                let y = rep.value.expect("existing value");
                if !hits.contains(&y) {
                    return Err("bott-duffin oracle missed the computed value".into());
                }
                let unique = rep
                    .checks
                    .iter()
                    .any(|(n, ok)| n == "unique" && *ok);
                if unique && hits.len() != 1 {
                    return Err("bott-duffin uniqueness flag contradicts the oracle".into());
                }
            } else if !hits.is_empty() {
                return Err("bott-duffin compute missed an inverse".into());
            }
        }

        // along-d kind: 200 seeded GF(3) contexts with invertible v
        let mut rng = rng_for(616161);
        for _ in 0..200 {
            let a = random_matrix(&gf3, 2, &mut rng);
            let d = random_matrix(&gf3, 2, &mut rng);
            let v = random_invertible(&gf3, 2, &mut rng);
            let w = random_matrix(&gf3, 2, &mut rng);
            let inst = Instance::new(&gf3, 2)
                .with("a", a.clone())
                .with("d", d.clone())
                .with("v", v.clone())
                .with("w", w.clone());
            let rep = along_d(&a, &d, &v, &w).map_err(|e| e.to_string())?;
            let hits =
                oracle_search(InverseKind::AlongD, &inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if rep.exists {
                let y = rep.value.expect("existing value");
                if hits != vec![y] {
                    return Err("along-d oracle mismatch".into());
                }
            } else if !hits.is_empty() {
                return Err("along-d compute missed an inverse".into());
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_group_inverse_criterion() {
    criterion(5, "group invertibility: membership, rank, and search agree", || {
        let start = Instant::now();
        for ring in [
            RingSpec::prime_field(2).unwrap(),
            RingSpec::prime_field(3).unwrap(),
        ] {
            let all: Vec<Matrix> = all_matrices(&ring, 2).unwrap().collect();
            for a in &all {
                let by_membership = is_group_invertible(a);
                let a2 = a * a;
                let by_rank = rank(a).unwrap() == rank(&a2).unwrap();
                let brute: Vec<&Matrix> = all
                    .iter()
                    .filter(|y| {
                        prod(&[a, y, a]) == *a
                            && prod(&[y, a, y]) == **y
                            && (a * y) == (*y * a)
                    })
                    .collect();
                if by_membership != by_rank || by_membership != !brute.is_empty() {
                    return Err(format!(
                        "criteria disagree on {:?} over {}",
                        a.to_grid(),
                        ring.name()
                    ));
                }
                if let Some(res) = group_inverse(a).map_err(|e| e.to_string())? {
                    if &res.value != brute[0] {
                        return Err("constructed group inverse differs from search".into());
                    }
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(30) {
            return Err(format!("took {elapsed:?}, budget is 30 s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_6_route_agreement() {
    criterion(6, "all construction routes agree on shared instances", || {
        let gf3 = RingSpec::prime_field(3).unwrap();
        let mut rng = rng_for(777777);
        let mut agreed = 0u32;
        let mut attempts = 0u32;
        while agreed < 100 {
            attempts += 1;
            if attempts > 20000 {
                return Err(format!("only {agreed} qualifying instances in 20000 draws"));
            }
            let a = random_matrix(&gf3, 2, &mut rng);
            let d = random_matrix(&gf3, 2, &mut rng);
            let v = random_invertible(&gf3, 2, &mut rng);
            let w = random_matrix(&gf3, 2, &mut rng);
            let ctx =
                WeightedContext::new(a.clone(), d.clone(), d.clone(), v.clone(), w.clone())
                    .unwrap();
            if !bc_exists(&ctx).0 {
                continue;
            }
            let vawd = prod(&[&v, &a, &w, &d]);
            if !ann_equal(&vawd, &d, Side::Right).map_err(|e| e.to_string())? {
                continue;
            }
            // preconditions of every route hold now
            let direct = bc_inverse(&ctx).map_err(|e| e.to_string())?;
            let y = direct.value.expect("existing");
            let via_group = bc_inverse_via_group(&ctx, &d).map_err(|e| e.to_string())?;
            let hybrid = hybrid_inverse(&ctx).map_err(|e| e.to_string())?;
            let hybrid_group = hybrid_via_group(&ctx).map_err(|e| e.to_string())?;
            let along = along_d(&a, &d, &v, &w).map_err(|e| e.to_string())?;
            for (route, rep_value) in [
                ("bc_inverse_via_group", via_group.value),
                ("hybrid_inverse", hybrid.value),
                ("hybrid_via_group", hybrid_group.value),
                ("along_d", along.value),
            ] {
                if rep_value.as_ref() != Some(&y) {
                    return Err(format!("route {route} disagrees with the direct value"));
                }
            }
            agreed += 1;
        }
        Ok(())
    });
}
