//! From non-unimodular free cyclic submodules to `PG(n, q)`.
//!
//! `(rad R)^(n+1)` is identified with `F^(n+1)` by reading off the `y`
//! entries. The intersection of a submodule with `(rad R)^(n+1)` (its radical
//! trace) is then an F-subspace: a line for every NFCS and a point for every
//! unimodular free cyclic submodule.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FiniteField, Fq};
use crate::linalg;
use crate::modvec::{FreeModule, TVector, VectorOrbit};
use crate::scan::par_fold;
use crate::submod::CyclicSubmodule;
use crate::ternion::Ternion;

/// Coordinates `(y_0, ..., y_n)` of a vector of `(rad R)^(n+1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RadVector(pub Vec<Fq>);

impl RadVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for RadVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subspace of `F^(n+1)` stored as its reduced row-echelon basis, so equal
/// subspaces compare equal.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct PgSubspace {
    basis: Vec<RadVector>,
}

impl PgSubspace {
    pub fn span<I: IntoIterator<Item = RadVector>>(field: &FiniteField, vectors: I) -> Self {
        let rows: Vec<Vec<Fq>> = vectors.into_iter().map(|v| v.0).collect();
        PgSubspace {
            basis: linalg::rref(field, &rows)
                .into_iter()
                .map(RadVector)
                .collect(),
        }
    }

    pub fn basis(&self) -> &[RadVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `rank - 1`: -1 for the zero subspace, 0 for a point, 1 for a line.
    pub fn projective_dimension(&self) -> isize {
        self.rank() as isize - 1
    }

    /// All `q^rank` vectors of the subspace.
    pub fn vectors(&self, field: &FiniteField) -> BTreeSet<RadVector> {
        let len = self.basis.first().map_or(0, |b| b.0.len());
        let mut out = BTreeSet::from([RadVector(vec![Fq::ZERO; len])]);
        for b in &self.basis {
            let mut next = BTreeSet::new();
            for v in &out {
                for c in field.elements() {
                    next.insert(RadVector(
                        v.0.iter()
                            .zip(&b.0)
                            .map(|(&a, &e)| field.add(a, field.mul(c, e)))
                            .collect(),
                    ));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for PgSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// Every `k`-dimensional subspace of `F^len`, built directly as the set of
/// reduced row-echelon `k x len` matrices: choose pivot columns, then fill
/// every non-pivot entry right of a pivot freely.
fn subspaces_of_dimension(field: &FiniteField, len: usize, k: usize) -> BTreeSet<PgSubspace> {
    let mut out = BTreeSet::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(len, k, 0, &mut pivots, &mut |pivots| {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| (pivots[r] + 1..len).map(move |c| (r, c)))
            .filter(|(_, c)| !pivots.contains(c))
            .collect();
        let q = field.order() as u64;
        let total = q.pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![Fq::ZERO; len]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = Fq::ONE;
            }
            for &(r, c) in &free {
                rows[r][c] = Fq::from_index_unchecked((idx % q) as u32);
                idx /= q;
            }
            out.insert(PgSubspace {
                basis: rows.into_iter().map(RadVector).collect(),
            });
        }
    });
    out
}

fn choose_pivots(
    len: usize,
    k: usize,
    start: usize,
    acc: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if acc.len() == k {
        visit(acc);
        return;
    }
    for c in start..len {
        acc.push(c);
        choose_pivots(len, k, c + 1, acc, visit);
        acc.pop();
    }
}

/// The points of `PG(n, q)`.
pub fn pg_oracle_points(field: &FiniteField, n: usize) -> BTreeSet<PgSubspace> {
    subspaces_of_dimension(field, n + 1, 1)
}

/// The lines of `PG(n, q)`.
pub fn pg_oracle_lines(field: &FiniteField, n: usize) -> BTreeSet<PgSubspace> {
    subspaces_of_dimension(field, n + 1, 2)
}

/// Number of `k`-dimensional subspaces of `F^len` over GF(q).
pub fn gaussian_binomial(q: u128, len: u32, k: u32) -> u128 {
    if k > len {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow(len - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Outcome of checking that the radical traces of the NFCS are exactly the
/// lines of `PG(n, q)`.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub q: u64,
    pub n: usize,
    pub nfcs: usize,
    pub lines: usize,
    pub distinct_traces: usize,
    /// Every trace has projective dimension 1.
    pub traces_are_lines: bool,
    /// The set of traces equals the set of lines.
    pub sets_equal: bool,
    /// Number of NFCS over a line, mapped to how many lines have that many.
    pub fiber_sizes: BTreeMap<usize, usize>,
}

impl Theorem1Report {
    pub fn passed(&self) -> bool {
        self.traces_are_lines && self.sets_equal
    }

    /// The common fiber size, if every line is the trace of equally many NFCS.
    pub fn uniform_fiber(&self) -> Option<usize> {
        match self.fiber_sizes.keys().collect::<Vec<_>>()[..] {
            [&k] => Some(k),
            _ => None,
        }
    }
}

impl FreeModule {
    /// The `y` coordinates of a vector with every coordinate in `rad R`.
    pub fn rad_coordinates(&self, x: &TVector) -> Option<RadVector> {
        x.in_rad()
            .then(|| RadVector(x.coords().iter().map(|t| t.y).collect()))
    }

    pub fn from_rad_coordinates(&self, v: &RadVector) -> TVector {
        TVector::new(
            v.0.iter()
                .map(|&y| Ternion::new(Fq::ZERO, y, Fq::ZERO))
                .collect(),
        )
    }

    /// The vectors of `R X ∩ (rad R)^(n+1)` in coordinates.
    pub fn rad_trace_set(&self, s: &CyclicSubmodule) -> BTreeSet<RadVector> {
        match s.elements() {
            Some(els) => els.iter().filter_map(|x| self.rad_coordinates(x)).collect(),
            None => self.rad_trace_of_generator(&s.generator),
        }
    }

    fn rad_trace_of_generator(&self, x: &TVector) -> BTreeSet<RadVector> {
        self.ring()
            .elements()
            .filter_map(|a| self.rad_coordinates(&self.left_mul(a, x)))
            .collect()
    }

    /// The radical trace of a submodule as a subspace of `F^(n+1)`.
    pub fn rad_trace(&self, s: &CyclicSubmodule) -> PgSubspace {
        PgSubspace::span(self.field(), self.rad_trace_set(s))
    }

    /// Every NFCS with its radical trace, in NFCS order.
    pub fn nfcs_traces(&self) -> Result<Vec<(CyclicSubmodule, PgSubspace)>> {
        let nfcs = self.enumerate_nfcs()?;
        Ok(nfcs
            .into_par_iter()
            .map(|s| {
                let t = self.rad_trace(&s);
                (s, t)
            })
            .collect())
    }

    pub fn verify_theorem1(&self) -> Result<Theorem1Report> {
        let traces = self.nfcs_traces()?;
        let lines = pg_oracle_lines(self.field(), self.n());
        let mut fibers: BTreeMap<&PgSubspace, usize> = BTreeMap::new();
        for (_, t) in &traces {
            *fibers.entry(t).or_default() += 1;
        }
        let mut fiber_sizes = BTreeMap::new();
        for &count in fibers.values() {
            *fiber_sizes.entry(count).or_default() += 1;
        }
        let found: BTreeSet<&PgSubspace> = fibers.keys().copied().collect();
        Ok(Theorem1Report {
            q: self.q(),
            n: self.n(),
            nfcs: traces.len(),
            lines: lines.len(),
            distinct_traces: found.len(),
            traces_are_lines: traces.iter().all(|(_, t)| t.projective_dimension() == 1),
            sets_equal: found.len() == lines.len() && lines.iter().all(|l| found.contains(l)),
            fiber_sizes,
        })
    }

    /// Points as `R X ∩ R Y ∩ (rad R)^(n+1)` with more than one element, over
    /// pairs of NFCS with different traces. Needs `n >= 2`.
    pub fn recover_points_via_nfcs(&self) -> Result<BTreeSet<PgSubspace>> {
        if self.n() < 2 {
            return Err(Error::DimensionTooSmall {
                n: self.n(),
                min: 2,
            });
        }
        let traces: Vec<BTreeSet<RadVector>> = self
            .nfcs_traces()?
            .into_iter()
            .map(|(_, t)| t.vectors(self.field()))
            .collect();
        let field = self.field();
        Ok((0..traces.len())
            .into_par_iter()
            .map(|i| {
                let mut found = BTreeSet::new();
                for j in i + 1..traces.len() {
                    if traces[i] == traces[j] {
                        continue;
                    }
                    let meet: Vec<RadVector> =
                        traces[i].intersection(&traces[j]).cloned().collect();
                    if meet.len() > 1 {
                        found.insert(PgSubspace::span(field, meet));
                    }
                }
                found
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            }))
    }

    /// Points as the radical traces of the unimodular free cyclic submodules,
    /// scanning every unimodular vector of `R^(n+1)`.
    pub fn recover_points_via_unimodular(&self) -> Result<BTreeSet<PgSubspace>> {
        let total = self.checked_full_space()?;
        let rank = self.rank();
        let field = self.field();
        Ok(par_fold(
            total,
            BTreeSet::new,
            |acc: &mut BTreeSet<PgSubspace>, range| {
                let mut buf = vec![Ternion::ZERO; rank];
                for i in range {
                    self.decode_full(i, &mut buf);
                    if self.classify_coords(&buf) != VectorOrbit::Case6 {
                        continue;
                    }
                    let trace = self.rad_trace_of_generator(&TVector::new(buf.clone()));
                    acc.insert(PgSubspace::span(field, trace));
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        ))
    }
}
