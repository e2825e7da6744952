//! Acceptance gate: one PASS/FAIL line per criterion; exits non-zero if any fail.
//!
//! Built without the libtest harness so the lines always reach stdout.

use std::time::Instant;

use ginvlab_core::addabs::{self, jacobson_check};
use ginvlab_core::decomp;
use ginvlab_core::geninv::{
    self, oracle::drazin_by_linear_system, oracle::LinearMatrixSystem, Kind,
};
use ginvlab_core::harness::rng::InstanceRng;
use ginvlab_core::harness::{
    fuzz_all, gen_conforming_b, gen_matrix, FuzzConfig, GenProfile, Profile,
};
use ginvlab_core::weakdrazin::{product_collapse_check, WeakDrazinBase, WordFactor};
use ginvlab_core::{Error, GaussRational, Mat};

struct Gate {
    results: Vec<(u32, bool)>,
}

impl Gate {
    fn record(&mut self, id: u32, name: &str, started: Instant, outcome: Result<String, String>) {
        let secs = started.elapsed().as_secs_f64();
        let (ok, note) = match outcome {
            Ok(n) => (true, n),
            Err(n) => (false, n),
        };
        println!(
            "criterion {id} [{}] {name}: {note} ({secs:.1}s)",
            if ok { "PASS" } else { "FAIL" }
        );
        self.results.push((id, ok));
    }
}

fn random_instance(seed: u64, n_max: usize, index_max: usize) -> Mat {
    let mut rng = InstanceRng::for_trial(seed, "acceptance-size", 0);
    let n = rng.usize_in(1, n_max);
    let k = rng.usize_in(1, index_max.min(n));
    gen_matrix(&GenProfile::new(n, k, Profile::Unconstrained, seed)).expect("feasible profile")
}

fn criterion_1() -> Result<String, String> {
    let a = Mat::from_ints(&[[1, 1], [0, 0]]);
    let b = Mat::from_ints(&[[1, 0], [0, 0]]);
    let p = &a * &geninv::pseudo_core(&a).map_err(|e| e.to_string())?.inverse;
    let q = &Mat::identity(2) - &p;
    let f = &a + &b;
    let checks = [
        (
            "aa⊕ = [[1,0],[0,0]]",
            p == Mat::from_ints(&[[1, 0], [0, 0]]),
        ),
        ("(1-aa⊕)baa⊕ = 0", (&(&q * &b) * &p).is_zero()),
        ("(1-aa⊕)(a+b) = 0", (&q * &f).is_zero()),
        (
            "(a+b)(1-aa⊕) = [[0,1],[0,0]]",
            &f * &q == Mat::from_ints(&[[0, 1], [0, 0]]),
        ),
    ];
    if let Some((label, _)) = checks.iter().find(|c| !c.1) {
        return Err(format!("{label} failed"));
    }
    let r31 = addabs::suite_thm_pd31(&a, &b, 1).map_err(|e| e.to_string())?;
    let r33 = addabs::suite_thm_pd33(&a, &b, 1).map_err(|e| e.to_string())?;
    if !(r31.preconditions_hold() && r31.all_true()) {
        return Err(format!("pd31 not all true: {:?}", r31.conditions));
    }
    if !(r33.preconditions_hold() && r33.conditions.iter().all(|c| !c.1)) {
        return Err(format!("pd33 not all false: {:?}", r33.conditions));
    }
    Ok("projector identities reproduced; pd31 all true, pd33 all false".into())
}

fn criterion_2() -> Result<String, String> {
    let mut verified = 0;
    let mut not_applicable = 0;
    for seed in 0..500u64 {
        let a = random_instance(seed, 5, 3);
        for kind in Kind::ALL {
            match geninv::compute(&a, kind) {
                Ok(g) => {
                    let cert = geninv::verify_defining(&a, &g.inverse, kind, g.index)
                        .map_err(|e| e.to_string())?;
                    if let Some((label, _)) = cert.iter().find(|c| !c.1) {
                        return Err(format!("seed {seed}, {kind}: {label} fails"));
                    }
                    verified += 1;
                }
                Err(Error::NotGroupInvertible { .. } | Error::NotCoreInvertible { .. }) => {
                    not_applicable += 1
                }
                Err(e) => return Err(format!("seed {seed}, {kind}: {e}")),
            }
        }
    }
    Ok(format!(
        "{verified} inverses verified, {not_applicable} group/core cases with index > 1"
    ))
}

fn criterion_3() -> Result<String, String> {
    for seed in 0..200u64 {
        let a = random_instance(10_000 + seed, 4, 3);
        let cline = geninv::drazin(&a).map_err(|e| e.to_string())?.inverse;
        let linear = drazin_by_linear_system(&a).map_err(|e| e.to_string())?;
        let blocks = decomp::core_nilpotent(&a)
            .map_err(|e| e.to_string())?
            .drazin();
        if cline != linear || cline != blocks {
            return Err(format!("seed {seed}: oracles differ on {a:?}"));
        }
    }
    Ok("200 instances, three routes identical".into())
}

fn fuzz_reports() -> Result<String, String> {
    let cfg = FuzzConfig::new(4, 3, 2024);
    let reports = fuzz_all(&cfg, 200).map_err(|e| e.to_string())?;
    serde_json::to_string(&reports).map_err(|e| e.to_string())
}

fn criterion_4(json: &str) -> Result<String, String> {
    let reports: Vec<ginvlab_core::harness::FuzzReport> =
        serde_json::from_str(json).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for r in &reports {
        if !r.is_clean() {
            bad.push(format!(
                "{} ({} disagreements)",
                r.theorem,
                r.disagreements.len()
            ));
        }
        summary.push(format!(
            "{}:{}/{}/{}",
            r.theorem, r.agreements, r.all_true, r.precondition_skips
        ));
    }
    println!("  agree/all-true/skipped per suite: {}", summary.join(" "));
    if bad.is_empty() {
        Ok(format!(
            "{} suites x 200 trials, zero disagreements",
            reports.len()
        ))
    } else {
        Err(bad.join(", "))
    }
}

fn criterion_5() -> Result<String, String> {
    let mut both_sides = 0;
    let mut words = 0;
    for seed in 0..100u64 {
        let a = random_instance(20_000 + seed, 4, 3);
        let n = a.rows();
        let base = WeakDrazinBase::new(&a).map_err(|e| e.to_string())?;
        let mut rng = InstanceRng::for_trial(seed, "criterion-5", 0);
        let mut samples = Vec::new();
        for _ in 0..5 {
            let z = rng.matrix(n, n, 3);
            // (a) membership; tl_sample verifies internally as well
            let x = base.tl_sample(&z).map_err(|e| e.to_string())?.value;
            if !base.tl_contains(&x).unwrap() {
                return Err(format!("seed {seed}: sample outside T_l"));
            }
            // (b) round trips
            let e = base.phi(&x).map_err(|e| e.to_string())?;
            if base.psi(&e).map_err(|e| e.to_string())? != x {
                return Err(format!("seed {seed}: psi(phi(x)) != x"));
            }
            let e2 = base.el_value(&z).map_err(|e| e.to_string())?;
            if base.phi(&base.psi(&e2).unwrap()).unwrap() != e2 {
                return Err(format!("seed {seed}: phi(psi(e)) != e"));
            }
            samples.push(x);
        }
        // (c) T_l ∩ T_r = {a^D}: scan sampled members and solutions of the
        // linear half of both definitions.
        let k = base.index();
        let ak = a.pow(k);
        let ak1 = &ak * &a;
        let mut sys = LinearMatrixSystem::new(n, n);
        sys.equation(&[(Mat::identity(n), ak1.clone())], &ak)
            .unwrap();
        sys.equation(&[(ak1.clone(), Mat::identity(n))], &ak)
            .unwrap();
        let mut candidates = samples.clone();
        if let Some(x0) = sys.solve() {
            let basis = sys.homogeneous_basis();
            candidates.push(x0.clone());
            for _ in 0..5 {
                let mut x = x0.clone();
                for h in &basis {
                    if rng.chance(1, 2) {
                        x = &x + &h.scale(&GaussRational::from_int(rng.int_in(-2, 2)));
                    }
                }
                candidates.push(x);
            }
        }
        candidates.push(base.drazin().clone());
        for x in &candidates {
            if base.tl_contains(x).unwrap() && base.tr_contains(x).unwrap() {
                both_sides += 1;
                if x != base.drazin() {
                    return Err(format!(
                        "seed {seed}: element of T_l ∩ T_r differs from a^D"
                    ));
                }
            }
        }
        // (d) product collapse on 50 random words
        for _ in 0..50 {
            let len = rng.usize_in(1, 4);
            let word: Vec<WordFactor> = (0..len)
                .map(|i| WordFactor {
                    a_power: rng.usize_in(0, 3),
                    x: rng.pick(&samples).clone(),
                    x_power: if i + 1 == len {
                        rng.usize_in(1, 3)
                    } else {
                        rng.usize_in(0, 3)
                    },
                })
                .collect();
            if !product_collapse_check(&a, &word).map_err(|e| e.to_string())? {
                return Err(format!("seed {seed}: product collapse fails"));
            }
            words += 1;
        }
    }
    Ok(format!(
        "100 instances; {both_sides} two-sided members all equal a^D; {words} words collapse"
    ))
}

fn criterion_6() -> Result<String, String> {
    let mut done = 0;
    let mut seed = 0u64;
    while done < 50 {
        seed += 1;
        if seed > 5_000 {
            return Err(format!("only {done} positive instances found"));
        }
        let a = random_instance(30_000 + seed, 4, 3);
        let s = geninv::drazin_index(&a).unwrap();
        let g = GenProfile::new(a.rows(), s, Profile::UpperBlocks, seed);
        let b = match gen_conforming_b(&a, &g) {
            Ok(b) => b,
            Err(Error::Profile(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let ad = geninv::drazin(&a).unwrap().inverse;
        let report = addabs::suite_thm_pd27(&a, &ad, &ad, &b, s).map_err(|e| e.to_string())?;
        if !(report.preconditions_hold() && report.all_true()) {
            return Err(format!("seed {seed}: generated instance is not positive"));
        }
        let n = a.rows();
        let mut rng = InstanceRng::for_trial(seed, "criterion-6", 0);
        let mut panel = vec![Mat::zeros(n, n)];
        panel.extend((0..9).map(|_| rng.matrix(n, n, 3)));
        if !addabs::tl_transport_check(&a, &b, &panel).map_err(|e| e.to_string())? {
            return Err(format!("seed {seed}: transport fails"));
        }
        done += 1;
    }
    Ok("50 positive instances, 10-element panel, both directions".into())
}

fn criterion_7() -> Result<String, String> {
    let mut rng = InstanceRng::new(7);
    let mut checked = 0;
    let mut draws = 0;
    while checked < 300 {
        draws += 1;
        if draws > 10_000 {
            return Err(format!("only {checked} invertible pairs drawn"));
        }
        let p = rng.usize_in(1, 4);
        let q = rng.usize_in(1, 4);
        let x = rng.matrix(p, q, 3);
        let y = rng.matrix(q, p, 3);
        match jacobson_check(&x, &y).map_err(|e| e.to_string())? {
            None => {}
            Some(true) => checked += 1,
            Some(false) => return Err(format!("identity fails for {x:?}, {y:?}")),
        }
    }
    Ok(format!("300 pairs with I-XY invertible ({draws} draws)"))
}

fn main() {
    let mut gate = Gate {
        results: Vec::new(),
    };

    let t = Instant::now();
    gate.record(1, "2x2 counterexample", t, criterion_1());
    let t = Instant::now();
    gate.record(2, "defining equations", t, criterion_2());
    let t = Instant::now();
    gate.record(3, "Drazin triple oracle", t, criterion_3());

    let t = Instant::now();
    let first = fuzz_reports();
    let c4 = match &first {
        Ok(json) => criterion_4(json),
        Err(e) => Err(e.clone()),
    };
    gate.record(4, "equivalence agreement", t, c4);

    let t = Instant::now();
    gate.record(5, "weak Drazin structure", t, criterion_5());
    let t = Instant::now();
    gate.record(6, "transport law", t, criterion_6());
    let t = Instant::now();
    gate.record(7, "Jacobson identity", t, criterion_7());

    let t = Instant::now();
    let second = fuzz_reports();
    let c8 = match (&first, &second) {
        (Ok(a), Ok(b)) if a == b => Ok(format!("rerun identical ({} bytes)", a.len())),
        (Ok(_), Ok(_)) => Err("rerun differs".to_string()),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    gate.record(8, "determinism", t, c8);

    let failed: Vec<u32> = gate.results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
