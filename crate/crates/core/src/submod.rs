//! Cyclic submodules `R X` of `R^(n+1)`.
//!
//! There are six `GL_{n+1}(R)`-orbits of cyclic submodules. Two of them are
//! free (`|R X| = q^3`): the unimodular one generated by `(I, 0, ..., 0)` and
//! the non-unimodular one generated by `((0,0,1), (0,1,0), 0, ...)`. The
//! latter submodules are the NFCS enumerated here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modvec::{FreeModule, TVector, VectorOrbit};
use crate::scan::par_fold;
use crate::ternion::Ternion;

/// The orbit of a cyclic submodule, `CS1..CS6` in the order of the
/// representatives `0`, `rad`, `I1(b:1)`, `I1`, `I2`, `R`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubmoduleOrbit {
    Cs1,
    Cs2,
    Cs3,
    Cs4,
    Cs5,
    Cs6,
}

impl SubmoduleOrbit {
    pub const ALL: [SubmoduleOrbit; 6] = [
        SubmoduleOrbit::Cs1,
        SubmoduleOrbit::Cs2,
        SubmoduleOrbit::Cs3,
        SubmoduleOrbit::Cs4,
        SubmoduleOrbit::Cs5,
        SubmoduleOrbit::Cs6,
    ];

    pub fn is_free(self) -> bool {
        matches!(self, SubmoduleOrbit::Cs4 | SubmoduleOrbit::Cs6)
    }

    pub fn is_unimodular(self) -> bool {
        self == SubmoduleOrbit::Cs6
    }

    /// Whether a vector of the given orbit generates a submodule of this orbit.
    pub fn contains_generator(self, orbit: VectorOrbit) -> bool {
        SubmoduleOrbit::from(orbit) == self
    }
}

impl From<VectorOrbit> for SubmoduleOrbit {
    fn from(orbit: VectorOrbit) -> Self {
        match orbit {
            VectorOrbit::Case1 => SubmoduleOrbit::Cs1,
            VectorOrbit::Case2 => SubmoduleOrbit::Cs2,
            VectorOrbit::Case3(_) => SubmoduleOrbit::Cs3,
            VectorOrbit::Case4 => SubmoduleOrbit::Cs4,
            VectorOrbit::Case5 => SubmoduleOrbit::Cs5,
            VectorOrbit::Case6 => SubmoduleOrbit::Cs6,
        }
    }
}

impl fmt::Display for SubmoduleOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = SubmoduleOrbit::ALL.iter().position(|o| o == self).unwrap() + 1;
        write!(f, "cs{n}")
    }
}

impl std::str::FromStr for SubmoduleOrbit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubmoduleOrbit::ALL
            .into_iter()
            .find(|o| o.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!("unknown submodule orbit `{s}`, expected cs1..cs6"))
            })
    }
}

/// A cyclic submodule `R X`.
///
/// For free submodules `generator` is canonical (see
/// [`FreeModule::canonicalize`]); otherwise it is the generator the
/// submodule was built from.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicSubmodule {
    pub generator: TVector,
    pub orbit: SubmoduleOrbit,
    pub free: bool,
    pub unimodular: bool,
    #[serde(skip)]
    elements: Option<BTreeSet<TVector>>,
}

impl CyclicSubmodule {
    pub fn elements(&self) -> Option<&BTreeSet<TVector>> {
        self.elements.as_ref()
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.is_some()
    }

    pub fn materialize(&mut self, module: &FreeModule) -> &BTreeSet<TVector> {
        self.elements
            .get_or_insert_with(|| module.span(&self.generator))
    }
}

impl FreeModule {
    /// `{alpha X : alpha in R}`.
    pub fn span(&self, x: &TVector) -> BTreeSet<TVector> {
        self.ring()
            .elements()
            .map(|a| self.left_mul(a, x))
            .collect()
    }

    /// Builds and materializes `R X`.
    pub fn generate(&self, x: &TVector) -> CyclicSubmodule {
        let mut s = self.cyclic_submodule(x);
        s.materialize(self);
        s
    }

    /// `R X` without materializing its elements.
    pub fn cyclic_submodule(&self, x: &TVector) -> CyclicSubmodule {
        let orbit = SubmoduleOrbit::from(self.classify_vector(x));
        let generator = if orbit.is_free() {
            self.canonicalize(x).expect("generator is free")
        } else {
            x.clone()
        };
        CyclicSubmodule {
            generator,
            orbit,
            free: orbit.is_free(),
            unimodular: orbit.is_unimodular(),
            elements: None,
        }
    }

    /// Free iff the orbit is `Case4` or `Case6`.
    pub fn is_free(&self, x: &TVector) -> bool {
        matches!(
            self.classify_vector(x),
            VectorOrbit::Case4 | VectorOrbit::Case6
        )
    }

    /// Free iff `|R X| = |R|`.
    pub fn is_free_by_size(&self, x: &TVector) -> bool {
        self.span(x).len() as u64 == self.ring().order()
    }

    /// Free iff no nonzero ternion annihilates `X` from the left.
    pub fn is_free_by_annihilator(&self, x: &TVector) -> bool {
        self.ring()
            .elements()
            .filter(|t| !t.is_zero())
            .all(|t| !self.left_mul(t, x).is_zero())
    }

    /// Unimodular iff the coordinates generate `R` as a right ideal.
    pub fn is_unimodular(&self, x: &TVector) -> bool {
        self.classify_vector(x) == VectorOrbit::Case6
    }

    /// The smallest vector in `{u X : u a unit}`. Two free vectors generate
    /// the same submodule iff they have the same canonical form.
    pub fn canonicalize(&self, x: &TVector) -> Result<TVector> {
        if !self.is_free(x) {
            return Err(Error::NotFree);
        }
        Ok(self.canonicalize_free(x.coords()))
    }

    fn canonicalize_free(&self, coords: &[Ternion]) -> TVector {
        let ring = self.ring();
        let mut best: Option<Vec<Ternion>> = None;
        let mut buf = vec![Ternion::ZERO; coords.len()];
        for u in ring.units() {
            for (b, &c) in buf.iter_mut().zip(coords) {
                *b = ring.mul(u, c);
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        TVector::new(best.expect("the unit group is nonempty"))
    }

    /// All non-unimodular free cyclic submodules, sorted by canonical generator.
    ///
    /// Only vectors with every coordinate in `I1` are scanned, since those are
    /// exactly the generators of cases 1 to 4.
    pub fn enumerate_nfcs(&self) -> Result<Vec<CyclicSubmodule>> {
        let total = self.checked_i1_space()?;
        let rank = self.rank();
        let gens = par_fold(
            total,
            BTreeSet::new,
            |acc: &mut BTreeSet<TVector>, range| {
                let mut buf = vec![Ternion::ZERO; rank];
                for i in range {
                    self.decode_i1(i, &mut buf);
                    if self.classify_coords(&buf) == VectorOrbit::Case4 {
                        acc.insert(self.canonicalize_free(&buf));
                    }
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        Ok(gens
            .into_iter()
            .map(|generator| CyclicSubmodule {
                generator,
                orbit: SubmoduleOrbit::Cs4,
                free: true,
                unimodular: false,
                elements: None,
            })
            .collect())
    }

    /// All cyclic submodules of one orbit, sorted by generator.
    ///
    /// Free orbits are deduplicated by canonical generator. Non-free ones are
    /// deduplicated by element set and reported with the smallest generator
    /// found. `Cs1`..`Cs4` scan `I1^(n+1)`, `Cs5` scans `I2^(n+1)` (via the
    /// full space bound) and `Cs6` scans all of `R^(n+1)`.
    pub fn enumerate_submodules(&self, orbit: SubmoduleOrbit) -> Result<Vec<CyclicSubmodule>> {
        if orbit == SubmoduleOrbit::Cs4 {
            return self.enumerate_nfcs();
        }
        let rank = self.rank();
        let generators: Vec<TVector> = match orbit {
            SubmoduleOrbit::Cs1 | SubmoduleOrbit::Cs2 | SubmoduleOrbit::Cs3 => {
                let total = self.checked_i1_space()?;
                self.collect_generators(total, orbit, |i, buf| self.decode_i1(i, buf))?
            }
            SubmoduleOrbit::Cs5 => {
                // I2 is the image of I1 under (0, y, z) -> (z, y, 0)
                let total = self.checked_i1_space()?;
                self.collect_generators(total, orbit, |i, buf| {
                    self.decode_i1(i, buf);
                    for t in buf.iter_mut() {
                        *t = Ternion::new(t.z, t.y, t.x);
                    }
                })?
            }
            SubmoduleOrbit::Cs6 | SubmoduleOrbit::Cs4 => {
                let total = self.checked_full_space()?;
                self.collect_generators(total, orbit, |i, buf| self.decode_full(i, buf))?
            }
        };
        debug_assert!(generators.iter().all(|g| g.len() == rank));

        if orbit.is_free() {
            let canon: BTreeSet<TVector> = generators
                .iter()
                .map(|g| self.canonicalize_free(g.coords()))
                .collect();
            return Ok(canon.iter().map(|g| self.cyclic_submodule(g)).collect());
        }
        let mut by_set: BTreeMap<BTreeSet<TVector>, TVector> = BTreeMap::new();
        for g in generators {
            let set = self.span(&g);
            by_set
                .entry(set)
                .and_modify(|best| {
                    if g < *best {
                        *best = g.clone()
                    }
                })
                .or_insert(g);
        }
        let mut out: Vec<CyclicSubmodule> = by_set
            .into_iter()
            .map(|(set, generator)| CyclicSubmodule {
                generator,
                orbit,
                free: false,
                unimodular: false,
                elements: Some(set),
            })
            .collect();
        out.sort_by(|a, b| a.generator.cmp(&b.generator));
        Ok(out)
    }

    fn collect_generators(
        &self,
        total: u64,
        orbit: SubmoduleOrbit,
        decode: impl Fn(u64, &mut [Ternion]) + Sync + Send,
    ) -> Result<Vec<TVector>> {
        let rank = self.rank();
        let found = par_fold(
            total,
            BTreeSet::new,
            |acc: &mut BTreeSet<TVector>, range| {
                let mut buf = vec![Ternion::ZERO; rank];
                for i in range {
                    decode(i, &mut buf);
                    if orbit.contains_generator(self.classify_coords(&buf)) {
                        acc.insert(TVector::new(buf.clone()));
                    }
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        Ok(found.into_iter().collect())
    }

    /// Equality of submodules: canonical generators when both are free,
    /// element sets otherwise.
    pub fn submodule_equal(&self, s: &CyclicSubmodule, t: &CyclicSubmodule) -> bool {
        if s.free && t.free {
            return s.generator == t.generator;
        }
        if s.free != t.free || s.orbit != t.orbit {
            return false;
        }
        let own_s;
        let own_t;
        let a = match s.elements() {
            Some(e) => e,
            None => {
                own_s = self.span(&s.generator);
                &own_s
            }
        };
        let b = match t.elements() {
            Some(e) => e,
            None => {
                own_t = self.span(&t.generator);
                &own_t
            }
        };
        a == b
    }

    /// Determines the orbit of a submodule from its element set alone:
    /// the size separates `1, q, q^2, q^3`; among size `q` the radical ones
    /// are `Cs2`; among size `q^3` those containing a unimodular vector are `Cs6`.
    pub fn classify_submodule_set(&self, elements: &BTreeSet<TVector>) -> Option<SubmoduleOrbit> {
        let q = self.q() as usize;
        let size = elements.len();
        if size == 1 {
            Some(SubmoduleOrbit::Cs1)
        } else if size == q {
            Some(if elements.iter().all(TVector::in_rad) {
                SubmoduleOrbit::Cs2
            } else {
                SubmoduleOrbit::Cs5
            })
        } else if size == q * q {
            Some(SubmoduleOrbit::Cs3)
        } else if size == q * q * q {
            let unimodular = elements.iter().any(|x| {
                x.coords().iter().any(|c| !c.in_i1()) && x.coords().iter().any(|c| !c.in_i2())
            });
            Some(if unimodular {
                SubmoduleOrbit::Cs6
            } else {
                SubmoduleOrbit::Cs4
            })
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{FiniteField, Fq};

    fn module(q: u64, n: usize) -> FreeModule {
        FreeModule::new(FiniteField::from_order(q).unwrap(), n).unwrap()
    }

    fn v(s: &str) -> TVector {
        s.parse().unwrap()
    }

    #[test]
    fn generate_cs4_representative() {
        let m = module(2, 2);
        let s = m.generate(&v("0,0,1;0,1,0;0,0,0"));
        let f = m.field();
        let mut expected = BTreeSet::new();
        for x in f.elements() {
            for y in f.elements() {
                for z in f.elements() {
                    expected.insert(TVector::new(vec![
                        Ternion::new(Fq::ZERO, y, z),
                        Ternion::new(Fq::ZERO, x, Fq::ZERO),
                        Ternion::ZERO,
                    ]));
                }
            }
        }
        assert_eq!(s.elements().unwrap(), &expected);
        assert_eq!(expected.len(), 8);
        assert!(s.free && !s.unimodular);
        assert_eq!(s.orbit, SubmoduleOrbit::Cs4);
    }

    #[test]
    fn cs3_does_not_depend_on_b() {
        let m = module(3, 1);
        let sets: BTreeSet<BTreeSet<TVector>> = m
            .field()
            .elements()
            .map(|b| {
                let x = TVector::new(vec![Ternion::new(Fq::ZERO, b, Fq::ONE), Ternion::ZERO]);
                m.span(&x)
            })
            .collect();
        assert_eq!(sets.len(), 1);
        let set = sets.into_iter().next().unwrap();
        assert_eq!(set.len(), 9);
        assert!(set.iter().all(|x| x[0].in_i1() && x[1].is_zero()));

        let b0 = m.generate(&v("0,0,1;0,0,0"));
        let b1 = m.cyclic_submodule(&v("0,1,1;0,0,0"));
        assert!(m.submodule_equal(&b0, &b1));
    }

    #[test]
    fn cs5_has_q_elements() {
        let m = module(5, 1);
        assert_eq!(m.span(&v("1,0,0;0,0,0")).len(), 5);
        assert!(!m.is_free(&v("1,0,0;0,0,0")));
        assert!(m.is_free(&v("1,0,1;0,0,0")));
    }

    #[test]
    fn three_freeness_criteria_agree() {
        for (q, n) in [(2, 1), (3, 1), (2, 2)] {
            let m = module(q, n);
            for x in m.vectors().unwrap() {
                let a = m.is_free(&x);
                assert_eq!(a, m.is_free_by_size(&x), "{x}");
                assert_eq!(a, m.is_free_by_annihilator(&x), "{x}");
            }
        }
    }

    #[test]
    fn canonicalize_is_a_unit_orbit_invariant() {
        let m = module(3, 1);
        for x in m.vectors().unwrap().filter(|x| m.is_free(x)).step_by(17) {
            let c = m.canonicalize(&x).unwrap();
            assert!(c <= x);
            assert_eq!(m.canonicalize(&c).unwrap(), c);
            for u in m.ring().units() {
                assert_eq!(m.canonicalize(&m.left_mul(u, &x)).unwrap(), c);
            }
            assert_eq!(m.span(&c), m.span(&x));
        }
        assert_eq!(
            m.canonicalize(&v("0,1,0;0,0,0")).unwrap_err(),
            Error::NotFree
        );
    }

    #[test]
    fn case4_vectors_collapse_to_21_generators() {
        let m = module(2, 2);
        let case4: Vec<TVector> = m
            .vectors()
            .unwrap()
            .filter(|x| m.classify_vector(x) == VectorOrbit::Case4)
            .collect();
        assert_eq!(case4.len(), 42);
        let canon: BTreeSet<TVector> = case4.iter().map(|x| m.canonicalize(x).unwrap()).collect();
        assert_eq!(canon.len(), 21);
    }

    /// `(q^n - 1)(q^(n+1) - 1) / (q - 1)^2`
    fn mu_formula(q: u64, n: u32) -> u64 {
        (q.pow(n) - 1) * (q.pow(n + 1) - 1) / ((q - 1) * (q - 1))
    }

    #[test]
    fn nfcs_counts() {
        assert_eq!(mu_formula(2, 1), 3);
        assert_eq!(mu_formula(3, 1), 4);
        assert_eq!(mu_formula(2, 2), 21);
        for (q, n) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let m = module(q, n);
            let nfcs = m.enumerate_nfcs().unwrap();
            assert_eq!(nfcs.len() as u64, mu_formula(q, n as u32));
            // independent route: full-space scan, dedup by element set
            let sets: BTreeSet<BTreeSet<TVector>> = m
                .vectors()
                .unwrap()
                .filter(|x| m.is_free(x) && !m.is_unimodular(x))
                .map(|x| m.span(&x))
                .collect();
            assert_eq!(sets.len(), nfcs.len());
            assert!(nfcs.windows(2).all(|w| w[0].generator < w[1].generator));
        }
    }

    #[test]
    fn nfcs_members_are_exactly_the_i1_vectors() {
        let m = module(2, 2);
        let mut union = BTreeSet::new();
        for mut s in m.enumerate_nfcs().unwrap() {
            let els = s.materialize(&m).clone();
            assert_eq!(els.len(), 8);
            assert!(els.iter().all(|x| m.classify_vector(x).case_number() <= 4));
            union.extend(els);
        }
        assert_eq!(union.len(), 64);
    }

    #[test]
    fn enumerate_every_orbit() {
        let m = module(2, 1);
        let counts: Vec<usize> = SubmoduleOrbit::ALL
            .iter()
            .map(|&o| m.enumerate_submodules(o).unwrap().len())
            .collect();
        // m_i divided by the generators per submodule: q - 1 for cs2 and cs5,
        // q(q - 1) for cs3, |R*| for cs4 and cs6
        assert_eq!(counts, vec![1, 3, 3, 3, 12, 18]);
        for o in SubmoduleOrbit::ALL {
            for s in m.enumerate_submodules(o).unwrap() {
                assert_eq!(m.classify_submodule_set(&m.span(&s.generator)), Some(o));
            }
        }
    }

    #[test]
    fn orbit_labels_parse() {
        assert_eq!(
            "cs4".parse::<SubmoduleOrbit>().unwrap(),
            SubmoduleOrbit::Cs4
        );
        assert_eq!(
            "CS6".parse::<SubmoduleOrbit>().unwrap(),
            SubmoduleOrbit::Cs6
        );
        assert!("cs7".parse::<SubmoduleOrbit>().is_err());
    }
}
