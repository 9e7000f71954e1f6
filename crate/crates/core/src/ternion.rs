//! The ring of ternions: upper triangular 2x2 matrices `[[x, y], [0, z]]`
//! over a finite field, together with its one-sided ideal structure.
//!
//! Besides the identity and zero, the ring has the two-sided ideals
//! `I1 = {x = 0}` and `I2 = {z = 0}`, the right ideals
//! `I1(b:c) = {(0, tb, tc)}` and the left ideals `I2(a:b) = {(ta, tb, 0)}`.
//! The Jacobson radical `{(0, y, 0)}` is `I1(1:0) = I2(0:1)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FiniteField, Fq};

/// Default upper bound on `q` for the exhaustive ideal enumeration.
pub const DEFAULT_IDEAL_ENUMERATION_MAX_Q: u32 = 9;

/// The ternion `[[x, y], [0, z]]`.
///
/// Ordering is lexicographic in `(x, y, z)` element indices, which is also
/// the order of the `"x,y,z"` serialization.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ternion {
    pub x: Fq,
    pub y: Fq,
    pub z: Fq,
}

impl Ternion {
    pub const ZERO: Ternion = Ternion::new(Fq::ZERO, Fq::ZERO, Fq::ZERO);
    pub const ONE: Ternion = Ternion::new(Fq::ONE, Fq::ZERO, Fq::ONE);

    pub const fn new(x: Fq, y: Fq, z: Fq) -> Self {
        Ternion { x, y, z }
    }

    /// Shorthand for building a ternion from raw element indices.
    pub const fn from_indices(x: u32, y: u32, z: u32) -> Self {
        Ternion::new(
            Fq::from_index_unchecked(x),
            Fq::from_index_unchecked(y),
            Fq::from_index_unchecked(z),
        )
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        *self == Ternion::ZERO
    }

    /// A ternion is invertible iff both diagonal entries are nonzero.
    #[inline]
    pub fn is_unit(&self) -> bool {
        !self.x.is_zero() && !self.z.is_zero()
    }

    #[inline]
    pub fn in_i1(&self) -> bool {
        self.x.is_zero()
    }

    #[inline]
    pub fn in_i2(&self) -> bool {
        self.z.is_zero()
    }

    #[inline]
    pub fn in_rad(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }
}

impl fmt::Display for Ternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.z)
    }
}

impl FromStr for Ternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x, y, z] = parts[..] else {
            return Err(Error::Parse(format!(
                "ternion `{s}` must have exactly three comma-separated entries"
            )));
        };
        let entry = |t: &str| {
            t.parse::<u32>()
                .map(Fq::from_index_unchecked)
                .map_err(|_| Error::Parse(format!("`{t}` is not a field element index")))
        };
        Ok(Ternion::new(entry(x)?, entry(y)?, entry(z)?))
    }
}

impl Serialize for Ternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y, self.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[Fq; 3]>::deserialize(d)?;
        Ok(Ternion::new(x, y, z))
    }
}

/// The right ideal generated by a set of ternions.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "ideal", content = "b", rename_all = "snake_case")]
pub enum RightIdealClass {
    Zero,
    /// `rad R = I1(1:0)`.
    Rad,
    /// `I1(b:1)`.
    Ratio(Fq),
    I1,
    I2,
    Full,
}

/// A left ideal of the ternion ring.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "ideal", rename_all = "snake_case")]
pub enum LeftIdealClass {
    Zero,
    /// `I2(a:b)`, normalized so that the first nonzero of `(a, b)` is 1.
    /// `rad R` is `I2(0:1)`.
    Ratio2 {
        a: Fq,
        b: Fq,
    },
    I1,
    I2,
    Full,
}

/// A materialized ideal.
pub type IdealSet = BTreeSet<Ternion>;

/// The ternion ring over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernionRing {
    field: FiniteField,
}

impl TernionRing {
    pub fn new(field: FiniteField) -> Self {
        TernionRing { field }
    }

    #[inline]
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `|R| = q^3`.
    pub fn order(&self) -> u64 {
        (self.field.order() as u64).pow(3)
    }

    /// `|R*| = q(q-1)^2`.
    pub fn unit_count(&self) -> u64 {
        let q = self.field.order() as u64;
        q * (q - 1) * (q - 1)
    }

    pub fn check(&self, t: &Ternion) -> Result<()> {
        for e in [t.x, t.y, t.z] {
            if !self.field.contains(e) {
                return Err(Error::ElementOutOfRange {
                    index: e.index() as u64,
                    order: self.field.order() as u64,
                });
            }
        }
        Ok(())
    }

    /// Position of `t` in [`TernionRing::elements`].
    #[inline]
    pub fn index_of(&self, t: &Ternion) -> usize {
        let q = self.field.order() as usize;
        (t.x.index() as usize * q + t.y.index() as usize) * q + t.z.index() as usize
    }

    #[inline]
    pub fn ternion_at(&self, index: usize) -> Ternion {
        let q = self.field.order() as usize;
        Ternion::from_indices(
            (index / (q * q)) as u32,
            (index / q % q) as u32,
            (index % q) as u32,
        )
    }

    /// All `q^3` ternions in ascending order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Ternion> + Clone + '_ {
        (0..self.order() as usize).map(move |i| self.ternion_at(i))
    }

    /// All units, in ascending order.
    pub fn units(&self) -> impl Iterator<Item = Ternion> + Clone + '_ {
        self.elements().filter(Ternion::is_unit)
    }

    #[inline]
    pub fn add(&self, a: Ternion, b: Ternion) -> Ternion {
        let f = &self.field;
        Ternion::new(f.add(a.x, b.x), f.add(a.y, b.y), f.add(a.z, b.z))
    }

    #[inline]
    pub fn neg(&self, a: Ternion) -> Ternion {
        let f = &self.field;
        Ternion::new(f.neg(a.x), f.neg(a.y), f.neg(a.z))
    }

    #[inline]
    pub fn sub(&self, a: Ternion, b: Ternion) -> Ternion {
        self.add(a, self.neg(b))
    }

    /// `(x, y, z)(a, b, c) = (xa, xb + yc, zc)`.
    #[inline]
    pub fn mul(&self, a: Ternion, b: Ternion) -> Ternion {
        let f = &self.field;
        Ternion::new(
            f.mul(a.x, b.x),
            f.add(f.mul(a.x, b.y), f.mul(a.y, b.z)),
            f.mul(a.z, b.z),
        )
    }

    /// The product `s I * t` of a field scalar and a ternion.
    #[inline]
    pub fn scale(&self, s: Fq, t: Ternion) -> Ternion {
        let f = &self.field;
        Ternion::new(f.mul(s, t.x), f.mul(s, t.y), f.mul(s, t.z))
    }

    /// The ternion `s I`.
    #[inline]
    pub fn scalar(&self, s: Fq) -> Ternion {
        Ternion::new(s, Fq::ZERO, s)
    }

    /// `(x, y, z)^-1 = (x^-1, -x^-1 y z^-1, z^-1)`.
    pub fn inv(&self, a: Ternion) -> Result<Ternion> {
        if !a.is_unit() {
            return Err(Error::NotUnit(a));
        }
        let f = &self.field;
        let xi = f.inv(a.x)?;
        let zi = f.inv(a.z)?;
        Ok(Ternion::new(xi, f.neg(f.mul(f.mul(xi, a.y), zi)), zi))
    }

    /// Classifies the right ideal generated by `gens`.
    pub fn right_ideal_of(&self, gens: &[Ternion]) -> RightIdealClass {
        let all_i1 = gens.iter().all(Ternion::in_i1);
        let all_i2 = gens.iter().all(Ternion::in_i2);
        match (all_i1, all_i2) {
            (true, true) => {
                if gens.iter().all(Ternion::is_zero) {
                    RightIdealClass::Zero
                } else {
                    RightIdealClass::Rad
                }
            }
            (true, false) => {
                // some z != 0; check that every (y, z) is a multiple of (b, 1)
                let lead = gens.iter().find(|t| !t.z.is_zero()).expect("not all in I2");
                let f = &self.field;
                let b = f.mul(lead.y, f.inv(lead.z).expect("z is nonzero"));
                let proportional = gens.iter().all(|t| f.mul(t.z, b) == t.y);
                if proportional {
                    RightIdealClass::Ratio(b)
                } else {
                    RightIdealClass::I1
                }
            }
            (false, true) => RightIdealClass::I2,
            (false, false) => RightIdealClass::Full,
        }
    }

    /// Classifies the left annihilator `{t : t a = 0}`.
    pub fn left_annihilator_class(&self, a: Ternion) -> LeftIdealClass {
        let f = &self.field;
        match (a.x.is_zero(), a.z.is_zero()) {
            _ if a.is_zero() => LeftIdealClass::Full,
            (false, false) => LeftIdealClass::Zero,
            // (x, y, 0) with x != 0, or (0, y, 0) with y != 0: annihilated by I1
            (_, true) => LeftIdealClass::I1,
            // (0, y, z) with z != 0: t = (s, -s y / z, 0), i.e. I2(1 : -y/z)
            (true, false) => {
                let b = f.neg(f.mul(a.y, f.inv(a.z).expect("z is nonzero")));
                LeftIdealClass::Ratio2 { a: Fq::ONE, b }
            }
        }
    }

    /// The elements of a right ideal class.
    pub fn right_ideal_elements(&self, class: RightIdealClass) -> IdealSet {
        let f = &self.field;
        let all = self.elements();
        match class {
            RightIdealClass::Zero => IdealSet::from([Ternion::ZERO]),
            RightIdealClass::Rad => all.filter(Ternion::in_rad).collect(),
            RightIdealClass::Ratio(b) => f
                .elements()
                .map(|t| Ternion::new(Fq::ZERO, f.mul(t, b), t))
                .collect(),
            RightIdealClass::I1 => all.filter(Ternion::in_i1).collect(),
            RightIdealClass::I2 => all.filter(Ternion::in_i2).collect(),
            RightIdealClass::Full => all.collect(),
        }
    }

    /// The elements of a left ideal class.
    pub fn left_ideal_elements(&self, class: LeftIdealClass) -> IdealSet {
        let f = &self.field;
        let all = self.elements();
        match class {
            LeftIdealClass::Zero => IdealSet::from([Ternion::ZERO]),
            LeftIdealClass::Ratio2 { a, b } => f
                .elements()
                .map(|s| Ternion::new(f.mul(s, a), f.mul(s, b), Fq::ZERO))
                .collect(),
            LeftIdealClass::I1 => all.filter(Ternion::in_i1).collect(),
            LeftIdealClass::I2 => all.filter(Ternion::in_i2).collect(),
            LeftIdealClass::Full => all.collect(),
        }
    }

    /// Brute-force closure of `gens` under addition and right (or left)
    /// multiplication by every ring element. The result is the one-sided
    /// ideal generated by `gens`.
    fn ideal_closure(&self, gens: &[Ternion], right: bool) -> IdealSet {
        let size = self.order() as usize;
        let mut member = vec![false; size];
        let mut list = Vec::with_capacity(size);
        let push = |t: Ternion, member: &mut Vec<bool>, list: &mut Vec<Ternion>| {
            let i = self.index_of(&t);
            if !member[i] {
                member[i] = true;
                list.push(t);
            }
        };
        push(Ternion::ZERO, &mut member, &mut list);
        for &g in gens {
            push(g, &mut member, &mut list);
        }
        // worklist: every element is combined with every earlier element and
        // multiplied by every ring element exactly once
        let mut next = 0;
        while next < list.len() {
            let e = list[next];
            for i in 0..=next {
                let s = self.add(e, list[i]);
                push(s, &mut member, &mut list);
            }
            for t in self.elements() {
                let p = if right {
                    self.mul(e, t)
                } else {
                    self.mul(t, e)
                };
                push(p, &mut member, &mut list);
            }
            next += 1;
        }
        list.into_iter().collect()
    }

    /// The right ideal generated by `gens`, computed by closure.
    pub fn right_ideal_closure(&self, gens: &[Ternion]) -> IdealSet {
        self.ideal_closure(gens, true)
    }

    /// The left ideal generated by `gens`, computed by closure.
    pub fn left_ideal_closure(&self, gens: &[Ternion]) -> IdealSet {
        self.ideal_closure(gens, false)
    }

    /// Every right ideal of the ring, found by closing single elements and
    /// then joining pairs of ideals until nothing new appears.
    pub fn enumerate_right_ideals(&self, max_q: u32) -> Result<Vec<IdealSet>> {
        self.enumerate_ideals(max_q, true)
    }

    /// Mirror of [`TernionRing::enumerate_right_ideals`] for left ideals.
    pub fn enumerate_left_ideals(&self, max_q: u32) -> Result<Vec<IdealSet>> {
        self.enumerate_ideals(max_q, false)
    }

    fn enumerate_ideals(&self, max_q: u32, right: bool) -> Result<Vec<IdealSet>> {
        let q = self.field.order();
        if q > max_q {
            return Err(Error::BoundExceeded {
                what: "ideal enumeration field",
                size: q as u128,
                bound: max_q as u64,
            });
        }
        let mut found: BTreeSet<IdealSet> = self
            .elements()
            .map(|t| self.ideal_closure(&[t], right))
            .collect();
        loop {
            let current: Vec<&IdealSet> = found.iter().collect();
            let mut fresh = BTreeSet::new();
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let gens: Vec<Ternion> = a.union(b).copied().collect();
                    let joined = self.ideal_closure(&gens, right);
                    if !found.contains(&joined) {
                        fresh.insert(joined);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            found.extend(fresh);
        }
        let mut out: Vec<IdealSet> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }
}

/// The ideals in `ideals` that are proper and not contained in another proper one.
pub fn maximal_ideals(ideals: &[IdealSet], ring_order: usize) -> Vec<&IdealSet> {
    let proper: Vec<&IdealSet> = ideals.iter().filter(|i| i.len() < ring_order).collect();
    proper
        .iter()
        .copied()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .collect()
}
