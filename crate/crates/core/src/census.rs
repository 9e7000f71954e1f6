//! Orbit and incidence counts over GF(q), in closed form and by brute force.
//!
//! Closed forms are evaluated with arbitrary-precision integers; every
//! division in them must be exact and is asserted to be.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::modvec::{FreeModule, VectorOrbit};
use crate::scan::par_fold;
use crate::ternion::Ternion;

/// Numbers of vectors in each of the six cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub q: u64,
    pub n: usize,
    #[serde(serialize_with = "big_array")]
    pub m: [BigUint; 6],
}

impl OrbitCensus {
    pub fn total(&self) -> BigUint {
        self.m.iter().sum()
    }

    /// `m_i` for `i` in `1..=6`.
    pub fn get(&self, case: usize) -> &BigUint {
        &self.m[case - 1]
    }
}

/// `a == b` for the two sides of a double count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCount {
    #[serde(serialize_with = "big")]
    pub lhs: BigUint,
    #[serde(serialize_with = "big")]
    pub rhs: BigUint,
}

impl DoubleCount {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Number of NFCS, and number of NFCS through a vector of each case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceCensus {
    pub q: u64,
    pub n: usize,
    #[serde(serialize_with = "big")]
    pub mu: BigUint,
    #[serde(serialize_with = "big")]
    pub mu1: BigUint,
    #[serde(serialize_with = "big")]
    pub mu2: BigUint,
    #[serde(serialize_with = "big")]
    pub mu3: BigUint,
    #[serde(serialize_with = "big")]
    pub mu4: BigUint,
    /// `m_2 mu_2` against `mu (q^2 - 1)`.
    pub double_count_rad: DoubleCount,
    /// `m_3 mu_3` against `mu q (q - 1)`.
    pub double_count_ratio: DoubleCount,
    /// Case number -> observed incidence -> number of vectors. Empty for closed forms.
    pub histogram: BTreeMap<u8, BTreeMap<u64, u64>>,
    /// Same as `histogram` for case 3, split by the parameter `b`.
    pub case3_by_b: BTreeMap<u32, BTreeMap<u64, u64>>,
}

/// The product identities relating the incidence numbers to sizes of
/// projective spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PgIdentities {
    /// `mu = |PG(n-1,q)| |PG(n,q)|`
    pub mu: bool,
    /// `mu_2 = |PG(n-1,q)| |PG(1,q)|`
    pub mu2: bool,
    /// `mu_3 = |PG(n-1,q)|`
    pub mu3: bool,
}

impl PgIdentities {
    pub fn all(&self) -> bool {
        self.mu && self.mu2 && self.mu3
    }
}

fn big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(small) => s.serialize_u64(small),
        None => s.serialize_str(&v.to_string()),
    }
}

fn big_array<S: Serializer>(v: &[BigUint; 6], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Big<'a>(&'a BigUint);
    impl Serialize for Big<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            big(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(6))?;
    for m in v {
        seq.serialize_element(&Big(m))?;
    }
    seq.end()
}

fn pow(q: u64, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Exact division; a remainder means a formula is wrong.
fn exact_div(num: BigUint, den: &BigUint) -> BigUint {
    assert!((&num % den).is_zero(), "{num} is not divisible by {den}");
    num / den
}

/// `|PG(k, q)| = (q^(k+1) - 1) / (q - 1)`.
pub fn pg_size(q: u64, k: usize) -> BigUint {
    exact_div(pow(q, k + 1) - 1u32, &BigUint::from(q - 1))
}

fn check_params(q: u64, n: usize) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if n < 1 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    Ok(())
}

/// `m_1 .. m_6` from their closed forms.
pub fn closed_form_m(q: u64, n: usize) -> Result<OrbitCensus> {
    check_params(q, n)?;
    let one = BigUint::one();
    let qb = BigUint::from(q);
    let qn = pow(q, n);
    let qn1 = pow(q, n + 1);
    let m = [
        one.clone(),
        &qn1 - &one,
        &qb * (&qn1 - &one),
        &qb * (&qn - &one) * (&qn1 - &one),
        &qn1 * (&qn1 - &one),
        &qn1 * (&qn1 - &one) * (&qn1 - &one),
    ];
    Ok(OrbitCensus { q, n, m })
}

/// Number of vectors of `R^(n+1)` in each orbit, by classifying every vector.
pub fn orbit_histogram(module: &FreeModule) -> Result<BTreeMap<VectorOrbit, u64>> {
    let total = module.checked_full_space()?;
    let rank = module.rank();
    Ok(par_fold(
        total,
        BTreeMap::new,
        |acc: &mut BTreeMap<VectorOrbit, u64>, range| {
            let mut buf = vec![Ternion::ZERO; rank];
            for i in range {
                module.decode_full(i, &mut buf);
                *acc.entry(module.classify_coords(&buf)).or_default() += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    ))
}

/// `m_1 .. m_6` by exhaustive classification.
pub fn brute_force_m(module: &FreeModule) -> Result<OrbitCensus> {
    let hist = orbit_histogram(module)?;
    let mut m: [BigUint; 6] = Default::default();
    for (orbit, count) in hist {
        m[orbit.case_number() as usize - 1] += count;
    }
    Ok(OrbitCensus {
        q: module.q(),
        n: module.n(),
        m,
    })
}

/// `mu` and `mu_1 .. mu_4` from their closed forms.
pub fn closed_form_mu(q: u64, n: usize) -> Result<IncidenceCensus> {
    check_params(q, n)?;
    let qm1 = BigUint::from(q - 1);
    let qn = pow(q, n);
    let qn1 = pow(q, n + 1);
    let mu = exact_div((&qn - 1u32) * (&qn1 - 1u32), &(&qm1 * &qm1));
    let mu2 = exact_div(BigUint::from(q + 1) * (&qn - 1u32), &qm1);
    let mu3 = exact_div(&qn - 1u32, &qm1);
    let m = closed_form_m(q, n)?;
    Ok(IncidenceCensus {
        q,
        n,
        mu1: mu.clone(),
        double_count_rad: DoubleCount {
            lhs: m.get(2) * &mu2,
            rhs: &mu * BigUint::from(q * q - 1),
        },
        double_count_ratio: DoubleCount {
            lhs: m.get(3) * &mu3,
            rhs: &mu * BigUint::from(q * (q - 1)),
        },
        mu,
        mu2,
        mu3,
        mu4: BigUint::one(),
        histogram: BTreeMap::new(),
        case3_by_b: BTreeMap::new(),
    })
}

/// Checks the incidence numbers against sizes of projective spaces.
pub fn pg_identities(census: &IncidenceCensus) -> PgIdentities {
    let (q, n) = (census.q, census.n);
    let pg_n1 = pg_size(q, n - 1);
    PgIdentities {
        mu: census.mu == &pg_n1 * pg_size(q, n),
        mu2: census.mu2 == &pg_n1 * pg_size(q, 1),
        mu3: census.mu3 == pg_n1,
    }
}

/// `mu |R*| = m_4`, from the closed forms.
pub fn nfcs_unit_identity(q: u64, n: usize) -> Result<bool> {
    let m = closed_form_m(q, n)?;
    let mu = closed_form_mu(q, n)?;
    Ok(mu.mu * BigUint::from(q * (q - 1) * (q - 1)) == *m.get(4))
}

/// Enumerates the NFCS and counts, for every vector of `I1^(n+1)`, how many
/// of them contain it. Fails if vectors of one case disagree.
pub fn brute_force_mu(module: &FreeModule) -> Result<IncidenceCensus> {
    let total = module.checked_i1_space()?;
    let nfcs = module.enumerate_nfcs()?;
    let q = module.q();

    let members: Vec<Vec<u64>> = nfcs
        .par_iter()
        .map(|s| {
            module
                .span(&s.generator)
                .iter()
                .map(|x| module.encode_i1(x.coords()))
                .collect()
        })
        .collect();
    let mut incidence = vec![0u64; total as usize];
    for idx in members.iter().flatten() {
        incidence[*idx as usize] += 1;
    }

    let mut histogram: BTreeMap<u8, BTreeMap<u64, u64>> = BTreeMap::new();
    let mut case3_by_b: BTreeMap<u32, BTreeMap<u64, u64>> = BTreeMap::new();
    let mut counts = [0u64; 6];
    let mut buf = vec![Ternion::ZERO; module.rank()];
    for (i, &inc) in incidence.iter().enumerate() {
        module.decode_i1(i as u64, &mut buf);
        let orbit = module.classify_coords(&buf);
        let case = orbit.case_number();
        counts[case as usize - 1] += 1;
        *histogram.entry(case).or_default().entry(inc).or_default() += 1;
        if let VectorOrbit::Case3(b) = orbit {
            *case3_by_b
                .entry(b.index())
                .or_default()
                .entry(inc)
                .or_default() += 1;
        }
    }

    let constant = |case: u8| -> Result<BigUint> {
        let observed = histogram.get(&case).cloned().unwrap_or_default();
        match observed.keys().copied().collect::<Vec<_>>()[..] {
            [v] => Ok(BigUint::from(v)),
            _ => Err(Error::NonConstantIncidence {
                case: format!("case {case}"),
                observed: observed.keys().copied().collect(),
            }),
        }
    };
    let mu = BigUint::from(nfcs.len());
    let mu1 = constant(1)?;
    let mu2 = constant(2)?;
    let mu3 = constant(3)?;
    let mu4 = constant(4)?;
    Ok(IncidenceCensus {
        q,
        n: module.n(),
        double_count_rad: DoubleCount {
            lhs: BigUint::from(counts[1]) * &mu2,
            rhs: &mu * BigUint::from(q * q - 1),
        },
        double_count_ratio: DoubleCount {
            lhs: BigUint::from(counts[2]) * &mu3,
            rhs: &mu * BigUint::from(q * (q - 1)),
        },
        mu,
        mu1,
        mu2,
        mu3,
        mu4,
        histogram,
        case3_by_b,
    })
}

/// Whether `mu_1 > mu_2 > mu_3 > mu_4 = 1`, which lets the incidence number
/// tell the four kinds of vectors apart. Only meaningful for `n >= 2`.
pub fn distinguishability_check(q: u64, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let c = closed_form_mu(q, n)?;
    Ok(c.mu1 > c.mu2 && c.mu2 > c.mu3 && c.mu3 > c.mu4 && c.mu4.is_one())
}
