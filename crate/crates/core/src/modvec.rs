//! Vectors of the free left module `R^(n+1)`, their `GL_{n+1}(R)`-orbits and
//! the constructive reduction of a vector to its orbit representative.
//!
//! Two vectors lie in one orbit iff their coordinates generate the same right
//! ideal, which gives `5 + q` orbits over GF(q). The reduction follows the
//! six cases of that classification and returns an explicit invertible
//! matrix `A` with `X A = D`.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FiniteField, Fq};
use crate::linalg::{self, Row};
use crate::ternion::{RightIdealClass, Ternion, TernionRing};
use crate::Bounds;

/// A vector of `R^(n+1)`. Ordered lexicographically by coordinates.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TVector(Vec<Ternion>);

impl TVector {
    pub fn new(coords: Vec<Ternion>) -> Self {
        TVector(coords)
    }

    pub fn zero(len: usize) -> Self {
        TVector(vec![Ternion::ZERO; len])
    }

    pub fn coords(&self) -> &[Ternion] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ternion::is_zero)
    }

    /// All coordinates lie in the Jacobson radical.
    pub fn in_rad(&self) -> bool {
        self.0.iter().all(Ternion::in_rad)
    }

    pub fn into_inner(self) -> Vec<Ternion> {
        self.0
    }
}

impl Index<usize> for TVector {
    type Output = Ternion;

    fn index(&self, i: usize) -> &Ternion {
        &self.0[i]
    }
}

impl From<Vec<Ternion>> for TVector {
    fn from(v: Vec<Ternion>) -> Self {
        TVector(v)
    }
}

/// `x,y,z;x,y,z;...`
impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for TVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty vector literal".into()));
        }
        s.split(';')
            .map(str::parse)
            .collect::<Result<Vec<Ternion>>>()
            .map(TVector)
    }
}

/// The `GL_{n+1}(R)`-orbit of a vector, labelled by the case of the
/// classification. Each case corresponds to one right ideal `I_X`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "case", content = "b", rename_all = "snake_case")]
pub enum VectorOrbit {
    /// `I_X = 0`.
    Case1,
    /// `I_X = rad R`.
    Case2,
    /// `I_X = I1(b:1)`.
    Case3(Fq),
    /// `I_X = I1`.
    Case4,
    /// `I_X = I2`.
    Case5,
    /// `I_X = R`.
    Case6,
}

impl VectorOrbit {
    pub fn case_number(&self) -> u8 {
        match self {
            VectorOrbit::Case1 => 1,
            VectorOrbit::Case2 => 2,
            VectorOrbit::Case3(_) => 3,
            VectorOrbit::Case4 => 4,
            VectorOrbit::Case5 => 5,
            VectorOrbit::Case6 => 6,
        }
    }

    pub fn ideal(&self) -> RightIdealClass {
        match *self {
            VectorOrbit::Case1 => RightIdealClass::Zero,
            VectorOrbit::Case2 => RightIdealClass::Rad,
            VectorOrbit::Case3(b) => RightIdealClass::Ratio(b),
            VectorOrbit::Case4 => RightIdealClass::I1,
            VectorOrbit::Case5 => RightIdealClass::I2,
            VectorOrbit::Case6 => RightIdealClass::Full,
        }
    }

    /// All `5 + q` orbits for a field, in ascending order.
    pub fn all(field: &FiniteField) -> Vec<VectorOrbit> {
        let mut out = vec![VectorOrbit::Case1, VectorOrbit::Case2];
        out.extend(field.elements().map(VectorOrbit::Case3));
        out.extend([VectorOrbit::Case4, VectorOrbit::Case5, VectorOrbit::Case6]);
        out
    }
}

impl From<RightIdealClass> for VectorOrbit {
    fn from(class: RightIdealClass) -> Self {
        match class {
            RightIdealClass::Zero => VectorOrbit::Case1,
            RightIdealClass::Rad => VectorOrbit::Case2,
            RightIdealClass::Ratio(b) => VectorOrbit::Case3(b),
            RightIdealClass::I1 => VectorOrbit::Case4,
            RightIdealClass::I2 => VectorOrbit::Case5,
            RightIdealClass::Full => VectorOrbit::Case6,
        }
    }
}

impl fmt::Display for VectorOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorOrbit::Case3(b) => write!(f, "Case3 b={b}"),
            other => write!(f, "Case{}", other.case_number()),
        }
    }
}

/// A square matrix over the ternions, acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TMatrix {
    size: usize,
    entries: Vec<Ternion>,
}

impl TMatrix {
    pub fn zeros(size: usize) -> Self {
        TMatrix {
            size,
            entries: vec![Ternion::ZERO; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = TMatrix::zeros(size);
        for i in 0..size {
            m.set(i, i, Ternion::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Ternion>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(TMatrix { size, entries })
    }

    /// The permutation matrix exchanging coordinates `i` and `j`.
    pub fn swap(size: usize, i: usize, j: usize) -> Self {
        let mut m = TMatrix::identity(size);
        if i != j {
            m.set(i, i, Ternion::ZERO);
            m.set(j, j, Ternion::ZERO);
            m.set(i, j, Ternion::ONE);
            m.set(j, i, Ternion::ONE);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Ternion {
        self.entries[i * self.size + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, t: Ternion) {
        self.entries[i * self.size + j] = t;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Ternion]> {
        self.entries.chunks(self.size.max(1))
    }

    /// The `2m x 2m` matrix over F made of the 2x2 blocks.
    pub fn to_field_matrix(&self) -> Vec<Row> {
        let m = self.size;
        let mut out = vec![vec![Fq::ZERO; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                let t = self.get(i, j);
                out[2 * i][2 * j] = t.x;
                out[2 * i][2 * j + 1] = t.y;
                out[2 * i + 1][2 * j + 1] = t.z;
            }
        }
        out
    }
}

impl Serialize for TMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

/// A single elementary step of a reduction.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionStep {
    pub label: &'static str,
    pub factor: TMatrix,
    pub result: TVector,
}

/// Certificate `vector * matrix = distinguished`.
#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub orbit: VectorOrbit,
    pub matrix: TMatrix,
    pub distinguished: TVector,
    /// Only filled by [`FreeModule::reduce_to_distinguished_traced`].
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<ReductionStep>,
}

/// The free left module `R^(n+1)` over the ternions of a finite field.
#[derive(Clone, Debug)]
pub struct FreeModule {
    ring: TernionRing,
    n: usize,
    bounds: Bounds,
}

impl FreeModule {
    /// `R^(n+1)` for `n >= 1`.
    pub fn new(field: FiniteField, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        Ok(FreeModule {
            ring: TernionRing::new(field),
            n,
            bounds: Bounds::default(),
        })
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn ring(&self) -> &TernionRing {
        &self.ring
    }

    pub fn field(&self) -> &FiniteField {
        self.ring.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coordinates, `n + 1`.
    pub fn rank(&self) -> usize {
        self.n + 1
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn q(&self) -> u64 {
        self.field().order() as u64
    }

    pub fn check_vector(&self, x: &TVector) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: x.len(),
            });
        }
        x.coords().iter().try_for_each(|t| self.ring.check(t))
    }

    pub fn zero_vector(&self) -> TVector {
        TVector::zero(self.rank())
    }

    /// `alpha X`.
    pub fn left_mul(&self, alpha: Ternion, x: &TVector) -> TVector {
        TVector(x.0.iter().map(|&c| self.ring.mul(alpha, c)).collect())
    }

    pub fn add_vectors(&self, a: &TVector, b: &TVector) -> TVector {
        TVector(
            a.0.iter()
                .zip(&b.0)
                .map(|(&s, &t)| self.ring.add(s, t))
                .collect(),
        )
    }

    /// `X A`, with `(X A)_j = sum_i X_i A_ij`.
    pub fn vec_mat_mul(&self, x: &TVector, a: &TMatrix) -> TVector {
        let m = a.size();
        TVector(
            (0..m)
                .map(|j| {
                    x.0.iter().enumerate().fold(Ternion::ZERO, |acc, (i, &xi)| {
                        self.ring.add(acc, self.ring.mul(xi, a.get(i, j)))
                    })
                })
                .collect(),
        )
    }

    pub fn mat_mul(&self, a: &TMatrix, b: &TMatrix) -> TMatrix {
        let m = a.size();
        let mut out = TMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let v = (0..m).fold(Ternion::ZERO, |acc, k| {
                    self.ring.add(acc, self.ring.mul(a.get(i, k), b.get(k, j)))
                });
                out.set(i, j, v);
            }
        }
        out
    }

    /// Invertibility via the determinant of the associated matrix over F.
    pub fn is_invertible(&self, a: &TMatrix) -> bool {
        !linalg::det(self.field(), &a.to_field_matrix()).is_zero()
    }

    pub fn inverse(&self, a: &TMatrix) -> Result<TMatrix> {
        let inv = linalg::inverse(self.field(), &a.to_field_matrix())?;
        let m = a.size();
        let mut out = TMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                debug_assert!(
                    inv[2 * i + 1][2 * j].is_zero(),
                    "blocks stay upper triangular"
                );
                out.set(
                    i,
                    j,
                    Ternion::new(
                        inv[2 * i][2 * j],
                        inv[2 * i][2 * j + 1],
                        inv[2 * i + 1][2 * j + 1],
                    ),
                );
            }
        }
        Ok(out)
    }

    pub fn classify_vector(&self, x: &TVector) -> VectorOrbit {
        self.classify_coords(x.coords())
    }

    #[inline]
    pub(crate) fn classify_coords(&self, coords: &[Ternion]) -> VectorOrbit {
        self.ring.right_ideal_of(coords).into()
    }

    pub fn same_orbit(&self, x: &TVector, y: &TVector) -> Result<bool> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.classify_vector(x) == self.classify_vector(y))
    }

    /// The orbit representative.
    pub fn distinguished_vector(&self, orbit: VectorOrbit) -> TVector {
        let mut v = self.zero_vector();
        let t = Ternion::from_indices;
        match orbit {
            VectorOrbit::Case1 => {}
            VectorOrbit::Case2 => v.0[0] = t(0, 1, 0),
            VectorOrbit::Case3(b) => v.0[0] = Ternion::new(Fq::ZERO, b, Fq::ONE),
            VectorOrbit::Case4 => {
                v.0[0] = t(0, 0, 1);
                v.0[1] = t(0, 1, 0);
            }
            VectorOrbit::Case5 => v.0[0] = t(1, 0, 0),
            VectorOrbit::Case6 => v.0[0] = Ternion::ONE,
        }
        v
    }

    pub fn reduce_to_distinguished(&self, x: &TVector) -> Reduction {
        Reducer::new(self, x, false).run()
    }

    /// Like [`FreeModule::reduce_to_distinguished`], keeping every factor.
    pub fn reduce_to_distinguished_traced(&self, x: &TVector) -> Reduction {
        Reducer::new(self, x, true).run()
    }

    /// `q^(3(n+1))`.
    pub fn full_space_size(&self) -> u128 {
        (self.q() as u128).pow(3 * self.rank() as u32)
    }

    /// `q^(2(n+1))`, the number of vectors with every coordinate in `I1`.
    pub fn i1_space_size(&self) -> u128 {
        (self.q() as u128).pow(2 * self.rank() as u32)
    }

    pub(crate) fn checked_full_space(&self) -> Result<u64> {
        bounded("R^(n+1)", self.full_space_size(), self.bounds.full_space)
    }

    pub(crate) fn checked_i1_space(&self) -> Result<u64> {
        bounded("I1^(n+1)", self.i1_space_size(), self.bounds.i1_space)
    }

    /// Writes the vector with the given index in `R^(n+1)` into `out`.
    /// Indices follow the vector ordering, coordinate 0 most significant.
    pub fn decode_full(&self, mut index: u64, out: &mut [Ternion]) {
        let base = self.ring.order();
        for slot in out.iter_mut().rev() {
            *slot = self.ring.ternion_at((index % base) as usize);
            index /= base;
        }
    }

    /// Writes the vector with the given index in `I1^(n+1)` into `out`.
    pub fn decode_i1(&self, mut index: u64, out: &mut [Ternion]) {
        let q = self.q();
        let base = q * q;
        for slot in out.iter_mut().rev() {
            let d = index % base;
            *slot = Ternion::new(
                Fq::ZERO,
                Fq::from_index_unchecked((d / q) as u32),
                Fq::from_index_unchecked((d % q) as u32),
            );
            index /= base;
        }
    }

    /// Index of a vector of `I1^(n+1)`, inverse of [`FreeModule::decode_i1`].
    pub fn encode_i1(&self, coords: &[Ternion]) -> u64 {
        let q = self.q();
        coords.iter().fold(0, |acc, t| {
            debug_assert!(t.in_i1());
            acc * q * q + t.y.index() as u64 * q + t.z.index() as u64
        })
    }

    /// Every vector of `R^(n+1)` in ascending order.
    pub fn vectors(&self) -> Result<impl Iterator<Item = TVector> + '_> {
        let total = self.checked_full_space()?;
        Ok((0..total).map(move |i| {
            let mut v = self.zero_vector();
            self.decode_full(i, &mut v.0);
            v
        }))
    }

    /// Every vector of `I1^(n+1)` in ascending order.
    pub fn i1_vectors(&self) -> Result<impl Iterator<Item = TVector> + '_> {
        let total = self.checked_i1_space()?;
        Ok((0..total).map(move |i| {
            let mut v = self.zero_vector();
            self.decode_i1(i, &mut v.0);
            v
        }))
    }
}

pub(crate) fn bounded(what: &'static str, size: u128, bound: u64) -> Result<u64> {
    if size > bound as u128 {
        Err(Error::BoundExceeded { what, size, bound })
    } else {
        Ok(size as u64)
    }
}

struct Reducer<'a> {
    module: &'a FreeModule,
    current: TVector,
    matrix: TMatrix,
    steps: Vec<ReductionStep>,
    trace: bool,
}

impl<'a> Reducer<'a> {
    fn new(module: &'a FreeModule, x: &TVector, trace: bool) -> Self {
        Reducer {
            module,
            current: x.clone(),
            matrix: TMatrix::identity(x.len()),
            steps: Vec::new(),
            trace,
        }
    }

    fn size(&self) -> usize {
        self.current.len()
    }

    fn ring(&self) -> &TernionRing {
        self.module.ring()
    }

    fn field(&self) -> &FiniteField {
        self.module.field()
    }

    fn apply(&mut self, label: &'static str, factor: TMatrix) {
        self.current = self.module.vec_mat_mul(&self.current, &factor);
        self.matrix = self.module.mat_mul(&self.matrix, &factor);
        if self.trace {
            self.steps.push(ReductionStep {
                label,
                factor,
                result: self.current.clone(),
            });
        }
    }

    fn first(&self, from: usize, pred: impl Fn(&Ternion) -> bool) -> usize {
        (from..self.size())
            .find(|&i| pred(&self.current[i]))
            .expect("the orbit guarantees a qualifying coordinate")
    }

    fn move_to(&mut self, from: usize, to: usize) {
        if from != to {
            self.apply("permute", TMatrix::swap(self.size(), from, to));
        }
    }

    /// Right-multiplies coordinate 0 by `w^-1 I` where `w` is the chosen entry.
    fn normalize_front(&mut self, entry: impl Fn(&Ternion) -> Fq) {
        let w = entry(&self.current[0]);
        if w == Fq::ONE {
            return;
        }
        let winv = self.field().inv(w).expect("normalizing entry is nonzero");
        let mut factor = TMatrix::identity(self.size());
        factor.set(0, 0, self.ring().scalar(winv));
        self.apply("scale", factor);
    }

    /// Identity except for row 0, which becomes `row0`.
    fn first_row_factor(&self, row0: Vec<Ternion>) -> TMatrix {
        let mut factor = TMatrix::identity(self.size());
        for (j, t) in row0.into_iter().enumerate() {
            factor.set(0, j, t);
        }
        factor
    }

    /// Row 0 `(I, -c_1 I, ..., -c_n I)` clearing coordinates `j >= 1`.
    fn shear_scalars(&mut self, label: &'static str, coeff: impl Fn(&Ternion) -> Fq) {
        let f = self.field().clone();
        let mut row0 = vec![Ternion::ONE];
        row0.extend(
            self.current.coords()[1..]
                .iter()
                .map(|t| self.ring().scalar(f.neg(coeff(t)))),
        );
        let factor = self.first_row_factor(row0);
        self.apply(label, factor);
    }

    fn run(mut self) -> Reduction {
        let orbit = self.module.classify_vector(&self.current);
        match orbit {
            VectorOrbit::Case1 => {}
            VectorOrbit::Case2 => {
                let i = self.first(0, |t| !t.y.is_zero());
                self.move_to(i, 0);
                self.normalize_front(|t| t.y);
                self.shear_scalars("case2 shear", |t| t.y);
            }
            VectorOrbit::Case3(_) => {
                // every coordinate is w_i (0, b, 1)
                let i = self.first(0, |t| !t.z.is_zero());
                self.move_to(i, 0);
                self.normalize_front(|t| t.z);
                self.shear_scalars("case3 shear", |t| t.z);
            }
            VectorOrbit::Case4 => self.case4(),
            VectorOrbit::Case5 => self.case5(),
            VectorOrbit::Case6 => self.case6(),
        }
        let distinguished = self.module.distinguished_vector(orbit);
        debug_assert_eq!(self.current, distinguished);
        Reduction {
            orbit,
            matrix: self.matrix,
            distinguished,
            steps: self.steps,
        }
    }

    fn case4(&mut self) {
        let f = self.field().clone();
        let i = self.first(0, |t| !t.z.is_zero());
        self.move_to(i, 0);
        self.normalize_front(|t| t.z);
        // X_j - z_j X_0 = (0, -d_j, 0) with d_j = y_0 z_j - y_j
        self.shear_scalars("case4 first", |t| t.z);
        let j = self.first(1, |t| !t.y.is_zero());
        self.move_to(j, 1);

        let y0 = self.current[0].y;
        let d: Vec<Fq> = self.current.coords().iter().map(|t| f.neg(t.y)).collect();
        let d1inv = f.inv(d[1]).expect("d_1 is nonzero");
        let mut factor = TMatrix::identity(self.size());
        factor.set(1, 0, self.ring().scalar(f.mul(y0, d1inv)));
        factor.set(1, 1, self.ring().scalar(f.neg(d1inv)));
        for (k, &dk) in d.iter().enumerate().skip(2) {
            factor.set(1, k, self.ring().scalar(f.neg(f.mul(dk, d1inv))));
        }
        self.apply("case4 second", factor);
    }

    fn case5(&mut self) {
        let f = self.field().clone();
        let i = self.first(0, |t| !t.x.is_zero());
        self.move_to(i, 0);
        self.normalize_front(|t| t.x);
        let y0 = self.current[0].y;
        let mut row0 = vec![Ternion::new(Fq::ONE, f.neg(y0), Fq::ONE)];
        row0.extend(
            self.current.coords()[1..]
                .iter()
                .map(|&t| self.ring().neg(t)),
        );
        let factor = self.first_row_factor(row0);
        self.apply("case5", factor);
    }

    fn case6(&mut self) {
        if let Some(i) = (0..self.size()).find(|&i| self.current[i].is_unit()) {
            self.move_to(i, 0);
        } else {
            // X_0 in I2 \ I1 and X_1 in I1 \ I2, then X_0 + X_1 is a unit
            let i = self.first(0, |t| t.in_i2() && !t.in_i1());
            self.move_to(i, 0);
            let j = self.first(1, |t| t.in_i1() && !t.in_i2());
            self.move_to(j, 1);
            let mut factor = TMatrix::identity(self.size());
            factor.set(1, 0, Ternion::ONE);
            self.apply("case6 unit", factor);
        }
        let ring = self.ring().clone();
        let u = ring
            .inv(self.current[0])
            .expect("front coordinate is a unit");
        let mut row0 = vec![u];
        row0.extend(
            self.current.coords()[1..]
                .iter()
                .map(|&t| ring.neg(ring.mul(u, t))),
        );
        let factor = self.first_row_factor(row0);
        self.apply("case6", factor);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(q: u64, n: usize) -> FreeModule {
        FreeModule::new(FiniteField::from_order(q).unwrap(), n).unwrap()
    }

    fn v(s: &str) -> TVector {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_trivial_dimensions() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(
            FreeModule::new(f, 0).unwrap_err(),
            Error::DimensionTooSmall { n: 0, min: 1 }
        );
    }

    #[test]
    fn classify_examples() {
        let m = module(2, 2);
        assert_eq!(
            m.classify_vector(&v("0,0,0;0,0,0;0,0,0")),
            VectorOrbit::Case1
        );
        assert_eq!(
            m.classify_vector(&v("0,1,0;0,0,0;0,0,0")),
            VectorOrbit::Case2
        );
        let m = module(2, 1);
        assert_eq!(m.classify_vector(&v("1,1,0;0,0,1")), VectorOrbit::Case6);
    }

    #[test]
    fn distinguished_examples() {
        assert_eq!(
            module(2, 2).distinguished_vector(VectorOrbit::Case4),
            v("0,0,1;0,1,0;0,0,0")
        );
        assert_eq!(
            module(2, 1).distinguished_vector(VectorOrbit::Case6),
            v("1,0,1;0,0,0")
        );
        assert_eq!(
            module(2, 1).distinguished_vector(VectorOrbit::Case3(Fq::ONE)),
            v("0,1,1;0,0,0")
        );
    }

    #[test]
    fn distinguished_vectors_reduce_trivially() {
        let m = module(3, 2);
        for orbit in VectorOrbit::all(m.field()) {
            let d = m.distinguished_vector(orbit);
            assert_eq!(m.classify_vector(&d), orbit);
            let r = m.reduce_to_distinguished(&d);
            assert_eq!(r.matrix, TMatrix::identity(3), "{orbit}");
            assert_eq!(r.distinguished, d);
        }
    }

    #[test]
    fn reduce_case3_example() {
        let m = module(2, 1);
        let x = v("0,1,1;0,1,1");
        let r = m.reduce_to_distinguished(&x);
        assert_eq!(r.orbit, VectorOrbit::Case3(Fq::ONE));
        assert_eq!(r.distinguished, v("0,1,1;0,0,0"));
        assert_eq!(m.vec_mat_mul(&x, &r.matrix), r.distinguished);
    }

    #[test]
    fn reduce_case4_example() {
        let m = module(2, 1);
        let x = v("0,1,1;0,0,1");
        let r = m.reduce_to_distinguished_traced(&x);
        assert_eq!(r.orbit, VectorOrbit::Case4);
        assert_eq!(r.distinguished, v("0,0,1;0,1,0"));
        assert_eq!(m.vec_mat_mul(&x, &r.matrix), r.distinguished);
        assert!(m.is_invertible(&r.matrix));
        assert_eq!(r.steps.last().unwrap().label, "case4 second");
        assert!(m.reduce_to_distinguished(&x).steps.is_empty());
    }

    #[test]
    fn case6_without_unit_coordinate_uses_the_shear() {
        let m = module(3, 2);
        // (x, y, 0) and (0, y, z): no unit, but I_X = R
        let x = v("0,1,0;0,2,2;2,1,0");
        let r = m.reduce_to_distinguished_traced(&x);
        assert_eq!(r.orbit, VectorOrbit::Case6);
        assert!(r.steps.iter().any(|s| s.label == "case6 unit"));
        assert_eq!(
            m.vec_mat_mul(&x, &r.matrix),
            m.distinguished_vector(VectorOrbit::Case6)
        );
    }

    #[test]
    fn invertibility_examples() {
        let m = module(2, 2);
        assert!(m.is_invertible(&TMatrix::identity(3)));
        assert!(m.is_invertible(&TMatrix::swap(3, 0, 2)));
        assert!(!m.is_invertible(&TMatrix::zeros(3)));
        let mut a = TMatrix::identity(3);
        a.set(0, 0, Ternion::from_indices(1, 1, 0));
        assert!(!m.is_invertible(&a));
        // the second case-4 factor with d_1 = 1, y_0 = 1
        let m1 = module(2, 1);
        let b = TMatrix::from_rows(vec![
            vec![Ternion::ONE, Ternion::ZERO],
            vec![Ternion::ONE, Ternion::ONE],
        ])
        .unwrap();
        assert!(m1.is_invertible(&b));
        let inv = m1.inverse(&b).unwrap();
        assert_eq!(m1.mat_mul(&b, &inv), TMatrix::identity(2));
    }

    #[test]
    fn same_orbit_examples() {
        let m = module(3, 1);
        assert!(!m.same_orbit(&v("0,0,1;0,0,0"), &v("0,1,1;0,0,0")).unwrap());
        assert!(m.same_orbit(&v("0,1,0;0,0,0"), &v("0,0,0;0,1,0")).unwrap());
        assert!(matches!(
            m.same_orbit(&v("0,1,0;0,0,0"), &v("0,1,0")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let m = module(2, 1);
        let all: Vec<TVector> = m.vectors().unwrap().collect();
        assert_eq!(all.len(), 64);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let i1: Vec<TVector> = m.i1_vectors().unwrap().collect();
        assert_eq!(i1.len(), 16);
        assert!(i1.iter().all(|x| x.coords().iter().all(Ternion::in_i1)));
        assert!(i1.windows(2).all(|w| w[0] < w[1]));
        let small = module(2, 9).with_bounds(Bounds::with_vector_bound(1 << 10));
        assert!(matches!(small.vectors(), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn parse_vector_literals() {
        assert_eq!(v("0,1,0;0,0,0").to_string(), "0,1,0;0,0,0");
        assert!("".parse::<TVector>().is_err());
        assert!("0,1;0,0,0".parse::<TVector>().is_err());
        let m = module(2, 1);
        assert!(m.check_vector(&v("0,1,0")).is_err());
        assert!(m.check_vector(&v("0,2,0;0,0,0")).is_err());
    }
}
