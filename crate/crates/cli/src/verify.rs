//! The `verify` suite: every exhaustive or randomized check that fits the
//! configured bounds, one line per check.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ternion_core::census::{
    brute_force_m, brute_force_mu, closed_form_m, closed_form_mu, distinguishability_check,
    nfcs_unit_identity, orbit_histogram, pg_identities,
};
use ternion_core::pgbridge::pg_oracle_points;
use ternion_core::{
    Error, FreeModule, Result, SubmoduleOrbit, TMatrix, TVector, Ternion, VectorOrbit,
};

/// Random matrices tried by the invariance check.
pub const GL_SAMPLES: usize = 100;
/// Vectors pushed through each random matrix.
pub const VECTORS_PER_MATRIX: usize = 20;
const SEED: u64 = 0x7e21_0a15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub q: u64,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("verify q={} n={}\n", self.q, self.n);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            s.push_str(&format!("{tag} {:<22} {}\n", c.name, c.detail));
        }
        s.push_str(if self.passed() {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        });
        s
    }
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skip(name: &'static str, why: impl Into<String>) -> Check {
    Check {
        name,
        status: Status::Skip,
        detail: why.into(),
    }
}

/// Fails with `BoundExceeded` before doing any work if a scan over `R^(n+1)`
/// would be too large.
pub fn check_bounds(module: &FreeModule) -> Result<()> {
    let b = module.bounds();
    let size = module.full_space_size();
    if size > b.full_space as u128 {
        return Err(Error::BoundExceeded {
            what: "R^(n+1)",
            size,
            bound: b.full_space,
        });
    }
    Ok(())
}

pub fn run(module: &FreeModule) -> Result<VerifyReport> {
    check_bounds(module)?;
    let q = module.q();
    let n = module.n();
    let checks = vec![
        field_axioms(module),
        ring_matches_matrices(module),
        ideal_counts(module)?,
        vector_orbits(module)?,
        submodule_orbits(module)?,
        reduction_and_freeness(module)?,
        orbit_census(module)?,
        incidence_census(module)?,
        traces_are_lines(module)?,
        point_recovery(module)?,
        distinguishability(module)?,
        gl_invariance(module),
    ];
    Ok(VerifyReport {
        schema: crate::SCHEMA_VERSION,
        q,
        n,
        checks,
    })
}

fn field_axioms(module: &FreeModule) -> Check {
    const NAME: &str = "field_axioms";
    let f = module.field();
    if f.order() > 64 {
        return skip(NAME, "q > 64");
    }
    let els: Vec<_> = f.elements().collect();
    let ok = els.par_iter().all(|&a| {
        let inv_ok = a.is_zero() || f.inv(a).map(|i| f.mul(a, i)) == Ok(ternion_core::Fq::ONE);
        inv_ok
            && f.add(a, f.neg(a)).is_zero()
            && els.iter().all(|&b| {
                f.add(a, b) == f.add(b, a)
                    && f.mul(a, b) == f.mul(b, a)
                    && els.iter().all(|&c| {
                        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                            && f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    })
            })
    });
    check(NAME, ok, format!("GF({}) exhaustive", f.order()))
}

fn ring_matches_matrices(module: &FreeModule) -> Check {
    const NAME: &str = "ring_vs_matrices";
    let ring = module.ring();
    let f = ring.field();
    if f.order() > 5 {
        return skip(NAME, "q > 5");
    }
    let els: Vec<Ternion> = ring.elements().collect();
    let ok = els.par_iter().all(|&a| {
        let inv_ok = match ring.inv(a) {
            Ok(i) => {
                a.is_unit() && ring.mul(a, i) == Ternion::ONE && ring.mul(i, a) == Ternion::ONE
            }
            Err(_) => !a.is_unit(),
        };
        inv_ok
            && els.iter().all(|&b| {
                // [[x,y],[0,z]] [[a,b],[0,c]]
                let m = Ternion::new(
                    f.mul(a.x, b.x),
                    f.add(f.mul(a.x, b.y), f.mul(a.y, b.z)),
                    f.mul(a.z, b.z),
                );
                ring.mul(a, b) == m
            })
    });
    check(NAME, ok, format!("{} products", els.len() * els.len()))
}

fn ideal_counts(module: &FreeModule) -> Result<Check> {
    const NAME: &str = "ideal_counts";
    let ring = module.ring();
    let max = module.bounds().ideal_max_q;
    if ring.field().order() > max {
        return Ok(skip(NAME, format!("q > {max}")));
    }
    let right = ring.enumerate_right_ideals(max)?.len();
    let left = ring.enumerate_left_ideals(max)?.len();
    let want = module.q() as usize + 5;
    Ok(check(
        NAME,
        right == want && left == want,
        format!("right {right}, left {left}, expected {want}"),
    ))
}

fn vector_orbits(module: &FreeModule) -> Result<Check> {
    let hist = orbit_histogram(module)?;
    let want: BTreeSet<VectorOrbit> = VectorOrbit::all(module.field()).into_iter().collect();
    let seen: BTreeSet<VectorOrbit> = hist.keys().copied().collect();
    Ok(check(
        "vector_orbits",
        seen == want && want.len() as u64 == 5 + module.q(),
        format!("{} orbits, expected {}", seen.len(), 5 + module.q()),
    ))
}

fn submodule_orbits(module: &FreeModule) -> Result<Check> {
    let mut counts = Vec::new();
    for orbit in SubmoduleOrbit::ALL {
        counts.push(module.enumerate_submodules(orbit)?.len());
    }
    let ok = counts.iter().all(|&c| c > 0);
    Ok(check(
        "submodule_orbits",
        ok,
        format!("submodules per orbit {counts:?}"),
    ))
}

fn reduction_and_freeness(module: &FreeModule) -> Result<Check> {
    let vectors: Vec<TVector> = module.vectors()?.collect();
    let good = vectors
        .par_iter()
        .filter(|x| {
            let r = module.reduce_to_distinguished(x);
            let sound = module.is_invertible(&r.matrix)
                && module.vec_mat_mul(x, &r.matrix) == r.distinguished
                && r.distinguished == module.distinguished_vector(r.orbit)
                && r.orbit == module.classify_vector(x);
            let free = module.is_free(x);
            sound && free == module.is_free_by_size(x) && free == module.is_free_by_annihilator(x)
        })
        .count();
    let bad = vectors.len() - good;
    Ok(check(
        "reduction_freeness",
        bad == 0,
        format!("{} vectors, {bad} failures", vectors.len()),
    ))
}

fn orbit_census(module: &FreeModule) -> Result<Check> {
    let closed = closed_form_m(module.q(), module.n())?;
    let brute = brute_force_m(module)?;
    let unit = nfcs_unit_identity(module.q(), module.n())?;
    Ok(check(
        "orbit_census",
        closed == brute && unit,
        format!(
            "m = {:?}",
            closed.m.iter().map(ToString::to_string).collect::<Vec<_>>()
        ),
    ))
}

fn incidence_census(module: &FreeModule) -> Result<Check> {
    let closed = closed_form_mu(module.q(), module.n())?;
    let brute = brute_force_mu(module)?;
    let same = [
        (&closed.mu, &brute.mu),
        (&closed.mu1, &brute.mu1),
        (&closed.mu2, &brute.mu2),
        (&closed.mu3, &brute.mu3),
        (&closed.mu4, &brute.mu4),
    ]
    .iter()
    .all(|(a, b)| a == b);
    let ok = same
        && brute.double_count_rad.holds()
        && brute.double_count_ratio.holds()
        && pg_identities(&closed).all();
    Ok(check(
        "incidence_census",
        ok,
        format!(
            "mu={} mu1={} mu2={} mu3={} mu4={}",
            brute.mu, brute.mu1, brute.mu2, brute.mu3, brute.mu4
        ),
    ))
}

fn traces_are_lines(module: &FreeModule) -> Result<Check> {
    let r = module.verify_theorem1()?;
    let fiber = r.uniform_fiber();
    Ok(check(
        "nfcs_traces_are_lines",
        r.passed() && fiber == Some(module.q() as usize + 1),
        format!("{} NFCS onto {} lines, fiber {:?}", r.nfcs, r.lines, fiber),
    ))
}

fn point_recovery(module: &FreeModule) -> Result<Check> {
    let points = pg_oracle_points(module.field(), module.n());
    let uni = module.recover_points_via_unimodular()? == points;
    if module.n() < 2 {
        return Ok(check(
            "point_recovery",
            uni,
            format!("{} points via unimodular vectors", points.len()),
        ));
    }
    let nfcs = module.recover_points_via_nfcs()? == points;
    Ok(check(
        "point_recovery",
        uni && nfcs,
        format!(
            "{} points, via NFCS {nfcs}, via unimodular {uni}",
            points.len()
        ),
    ))
}

fn distinguishability(module: &FreeModule) -> Result<Check> {
    const NAME: &str = "distinguishability";
    if module.n() < 2 {
        return Ok(skip(NAME, "n < 2"));
    }
    let ok = distinguishability_check(module.q(), module.n())?;
    Ok(check(NAME, ok, "mu1 > mu2 > mu3 > mu4 = 1"))
}

pub fn random_ternion(module: &FreeModule, rng: &mut impl Rng) -> Ternion {
    let q = module.field().order();
    Ternion::from_indices(
        rng.gen_range(0..q),
        rng.gen_range(0..q),
        rng.gen_range(0..q),
    )
}

pub fn random_vector(module: &FreeModule, rng: &mut impl Rng) -> TVector {
    TVector::new(
        (0..module.rank())
            .map(|_| random_ternion(module, rng))
            .collect(),
    )
}

pub fn random_invertible(module: &FreeModule, rng: &mut impl Rng) -> TMatrix {
    let size = module.rank();
    loop {
        let rows = (0..size)
            .map(|_| (0..size).map(|_| random_ternion(module, rng)).collect())
            .collect();
        let a = TMatrix::from_rows(rows).expect("square");
        if module.is_invertible(&a) {
            return a;
        }
    }
}

fn gl_invariance(module: &FreeModule) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    for _ in 0..GL_SAMPLES {
        let a = random_invertible(module, &mut rng);
        for _ in 0..VECTORS_PER_MATRIX {
            let x = random_vector(module, &mut rng);
            if module.classify_vector(&module.vec_mat_mul(&x, &a)) != module.classify_vector(&x) {
                failures += 1;
            }
        }
    }
    check(
        "gl_invariance",
        failures == 0,
        format!("{GL_SAMPLES} matrices x {VECTORS_PER_MATRIX} vectors, {failures} failures"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use ternion_core::{Bounds, FiniteField};

    #[test]
    fn suite_passes_on_small_cases() {
        for (q, n) in [(2, 1), (2, 2), (3, 1)] {
            let m = FreeModule::new(FiniteField::from_order(q).unwrap(), n).unwrap();
            let r = run(&m).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn rejects_oversized_spaces_upfront() {
        let m = FreeModule::new(FiniteField::from_order(2).unwrap(), 9)
            .unwrap()
            .with_bounds(Bounds::default());
        assert!(matches!(run(&m), Err(Error::BoundExceeded { .. })));
    }
}
