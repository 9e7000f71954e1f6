//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use ternion_cli::verify::{random_invertible, random_vector};
use ternion_core::census::{brute_force_m, brute_force_mu, closed_form_m, closed_form_mu};
use ternion_core::pgbridge::pg_oracle_points;
use ternion_core::{
    FiniteField, Fq, FreeModule, SubmoduleOrbit, Ternion, TernionRing, VectorOrbit,
};

const CONFIGS: [(u64, usize); 7] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (5, 1)];
const EXHAUSTIVE_REDUCTION: [(u64, usize); 3] = [(2, 1), (3, 1), (2, 2)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn module(q: u64, n: usize) -> FreeModule {
    FreeModule::new(FiniteField::from_order(q).unwrap(), n).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn orbit_counts() -> Outcome {
    for (q, n) in CONFIGS {
        let m = module(q, n);
        let orbits: BTreeSet<VectorOrbit> = m
            .vectors()
            .map_err(|e| e.to_string())?
            .map(|x| m.classify_vector(&x))
            .collect();
        ensure(orbits.len() as u64 == 5 + q, || {
            format!("({q},{n}): {} vector orbits", orbits.len())
        })?;
        let mut sub_orbits = BTreeSet::new();
        for o in SubmoduleOrbit::ALL {
            for s in m.enumerate_submodules(o).map_err(|e| e.to_string())? {
                let mut s = s;
                let set = s.materialize(&m).clone();
                sub_orbits.insert(
                    m.classify_submodule_set(&set)
                        .ok_or("unclassified submodule")?,
                );
            }
        }
        ensure(sub_orbits.len() == 6, || {
            format!("({q},{n}): {} submodule orbits", sub_orbits.len())
        })?;
    }
    Ok(format!(
        "{} configurations, 5+q vector orbits and 6 submodule orbits",
        CONFIGS.len()
    ))
}

fn reduction_ok(m: &FreeModule, x: &ternion_core::TVector) -> bool {
    let r = m.reduce_to_distinguished(x);
    m.is_invertible(&r.matrix)
        && m.vec_mat_mul(x, &r.matrix) == r.distinguished
        && r.distinguished == m.distinguished_vector(m.classify_vector(x))
}

fn reduction_soundness() -> Outcome {
    let mut checked = 0usize;
    for (q, n) in CONFIGS {
        let m = module(q, n);
        let vectors: Vec<_> = if EXHAUSTIVE_REDUCTION.contains(&(q, n)) {
            m.vectors().unwrap().collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(q * 100 + n as u64);
            (0..10_000).map(|_| random_vector(&m, &mut rng)).collect()
        };
        let bad = vectors.par_iter().filter(|x| !reduction_ok(&m, x)).count();
        ensure(bad == 0, || format!("({q},{n}): {bad} failures"))?;
        checked += vectors.len();
    }
    Ok(format!("{checked} vectors, 0 failures"))
}

fn census_agreement() -> Outcome {
    for (q, n) in CONFIGS {
        let m = module(q, n);
        let cm = closed_form_m(q, n).map_err(|e| e.to_string())?;
        ensure(cm == brute_force_m(&m).map_err(|e| e.to_string())?, || {
            format!("({q},{n}): m differs")
        })?;
        let cmu = closed_form_mu(q, n).map_err(|e| e.to_string())?;
        let bmu = brute_force_mu(&m).map_err(|e| e.to_string())?;
        let same = (&cmu.mu, &cmu.mu1, &cmu.mu2, &cmu.mu3, &cmu.mu4)
            == (&bmu.mu, &bmu.mu1, &bmu.mu2, &bmu.mu3, &bmu.mu4);
        ensure(same, || format!("({q},{n}): mu differs"))?;
        let units = BigUint::from(m.ring().unit_count());
        ensure(&cmu.mu * units == *cm.get(4), || {
            format!("({q},{n}): mu |R*| != m4")
        })?;
    }
    let c = closed_form_mu(2, 2).unwrap();
    let fig: [u32; 4] = [21, 9, 3, 1];
    let got = [&c.mu, &c.mu2, &c.mu3, &c.mu4];
    ensure(
        got.iter().zip(fig).all(|(a, b)| **a == BigUint::from(b)),
        || format!("mu(2,2) = {got:?}"),
    )?;
    Ok("closed forms equal brute force; mu(2,2) = 21, 9, 3, 1".into())
}

fn traces_are_lines() -> Outcome {
    for (q, n) in CONFIGS {
        let r = module(q, n).verify_theorem1().map_err(|e| e.to_string())?;
        ensure(r.passed(), || {
            format!("({q},{n}): traces are not the lines")
        })?;
        ensure(r.uniform_fiber() == Some(q as usize + 1), || {
            format!("({q},{n}): fibers {:?}", r.fiber_sizes)
        })?;
    }
    Ok("NFCS traces are the lines of PG(n,q), q+1 NFCS per line".into())
}

fn point_recovery() -> Outcome {
    for (q, n) in CONFIGS {
        let m = module(q, n);
        let points = pg_oracle_points(m.field(), n);
        ensure(m.recover_points_via_unimodular().unwrap() == points, || {
            format!("({q},{n}): unimodular")
        })?;
        if n >= 2 {
            ensure(m.recover_points_via_nfcs().unwrap() == points, || {
                format!("({q},{n}): NFCS")
            })?;
        }
    }
    Ok("points recovered via NFCS (n >= 2) and via unimodular vectors".into())
}

fn ideal_completeness() -> Outcome {
    for q in [2u64, 3, 4] {
        let ring = TernionRing::new(FiniteField::from_order(q).unwrap());
        let right = ring.enumerate_right_ideals(4).unwrap().len();
        let left = ring.enumerate_left_ideals(4).unwrap().len();
        ensure(right == q as usize + 5 && left == q as usize + 5, || {
            format!("q={q}: {right} right, {left} left ideals")
        })?;
    }
    Ok("q+5 right and q+5 left ideals for q = 2, 3, 4".into())
}

fn export(threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ternion"));
    cmd.args([
        "export-snowflake",
        "--q",
        "2",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    if let Some(t) = threads {
        cmd.args(["--threads", t]);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    Ok(out.stdout)
}

fn snowflake() -> Outcome {
    let first = export(None)?;
    for t in [None, Some("1"), Some("2"), Some("8")] {
        ensure(export(t)? == first, || {
            format!("output differs with threads {t:?}")
        })?;
    }
    let doc: Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let nodes = doc["nodes"].as_array().ok_or("no nodes")?;
    let polygons = doc["polygons"].as_array().ok_or("no polygons")?;
    ensure(nodes.len() == 63 && polygons.len() == 21, || {
        format!("{} nodes, {} polygons", nodes.len(), polygons.len())
    })?;
    for p in polygons {
        let members = p["members"].as_array().ok_or("no members")?;
        let mut profile: Vec<u64> = members
            .iter()
            .map(|id| {
                nodes[id.as_u64().unwrap() as usize]["multiplicity"]
                    .as_u64()
                    .unwrap()
            })
            .collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        ensure(profile == [9, 9, 9, 3, 3, 1, 1], || {
            format!("profile {profile:?}")
        })?;
    }
    Ok(
        "63 nodes, 21 polygons of profile {9,9,9,3,3,1,1}, byte-identical across runs and threads"
            .into(),
    )
}

fn ring_axioms(q: u64) -> bool {
    let ring = TernionRing::new(FiniteField::from_order(q).unwrap());
    let els: Vec<Ternion> = ring.elements().collect();
    els.par_iter().all(|&a| {
        ring.mul(a, Ternion::ONE) == a
            && ring.mul(Ternion::ONE, a) == a
            && ring.add(a, ring.neg(a)) == Ternion::ZERO
            && els.iter().all(|&b| {
                ring.add(a, b) == ring.add(b, a)
                    && els.iter().all(|&c| {
                        ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
                            && ring.mul(a, ring.add(b, c))
                                == ring.add(ring.mul(a, b), ring.mul(a, c))
                            && ring.mul(ring.add(a, b), c)
                                == ring.add(ring.mul(a, c), ring.mul(b, c))
                    })
            })
    })
}

fn field_axioms(q: u64) -> bool {
    let f = FiniteField::from_order(q).unwrap();
    let els: Vec<Fq> = f.elements().collect();
    els.iter().all(|&a| {
        (a.is_zero() || f.mul(a, f.inv(a).unwrap()) == Fq::ONE)
            && els.iter().all(|&b| {
                f.mul(a, b) == f.mul(b, a)
                    && els.iter().all(|&c| {
                        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                            && f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    })
            })
    })
}

fn property_suites() -> Outcome {
    for q in [2, 3, 4, 5] {
        ensure(ring_axioms(q), || {
            format!("ternion ring axioms fail at q={q}")
        })?;
    }
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        ensure(field_axioms(q), || format!("field axioms fail at q={q}"))?;
    }
    for (q, n) in CONFIGS {
        let m = module(q, n);
        let vectors: Vec<_> = m.vectors().unwrap().collect();
        let bad = vectors
            .par_iter()
            .filter(|x| {
                let f = m.is_free(x);
                f != m.is_free_by_size(x) || f != m.is_free_by_annihilator(x)
            })
            .count();
        ensure(bad == 0, || {
            format!("({q},{n}): freeness criteria disagree on {bad} vectors")
        })?;

        let mut rng = ChaCha8Rng::seed_from_u64(q << 8 | n as u64);
        for _ in 0..100 {
            let a = random_invertible(&m, &mut rng);
            let ainv = m.inverse(&a).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let x = random_vector(&m, &mut rng);
                let y = m.vec_mat_mul(&x, &a);
                ensure(m.classify_vector(&y) == m.classify_vector(&x), || {
                    format!("({q},{n}): orbit changed")
                })?;
                ensure(m.vec_mat_mul(&y, &ainv) == x, || {
                    format!("({q},{n}): inverse")
                })?;
            }
        }
    }
    Ok("ring and field axioms, freeness criteria, GL invariance under 100 matrices per configuration".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 orbit counts", orbit_counts),
        ("2 reduction soundness", reduction_soundness),
        ("3 census agreement", census_agreement),
        ("4 traces are lines", traces_are_lines),
        ("5 point recovery", point_recovery),
        ("6 ideal completeness", ideal_completeness),
        ("7 snowflake export", snowflake),
        ("8 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {name}: {msg} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
