//! Finite fields GF(p^k) with elements coded as indices `0..q`.
//!
//! The index of an element is the base-`p` number whose digits are the
//! coefficients of its polynomial representative (digit `i` is the
//! coefficient of `x^i`). Index 0 is the additive identity and index 1 the
//! multiplicative identity. For `k > 1` the reduction polynomial is the
//! smallest monic irreducible of degree `k`, where monic polynomials are
//! ordered by the index of their lower `k` coefficients.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field, so memory is `O(q)` and every operation is `O(1)` (or `O(k)` for
//! addition in odd characteristic extensions).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the field order accepted by [`FiniteField::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// An element of a finite field, identified by its canonical index.
///
/// The value carries no reference to its field; arithmetic is done through
/// the owning [`FiniteField`].
#[derive(
    Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Builds an element from an index without range checking.
    ///
    /// Use [`FiniteField::elem`] when the index comes from outside.
    #[inline]
    pub const fn from_index_unchecked(index: u32) -> Fq {
        Fq(index)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients of the monic reduction polynomial, constant term first.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so that log sums never need a reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
}

/// The field GF(p^k). Cloning is cheap (the tables are shared).
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.k())
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        // the construction is deterministic in (p, k)
        self.p() == other.p() && self.k() == other.k()
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// GF(p^k) with the default order bound.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_max_order(p, k, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u64, k: u32, max_order: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if order > max_order as u128 || order > u32::MAX as u128 {
            return Err(Error::FieldTooLarge {
                order,
                bound: max_order,
            });
        }
        Ok(Self::build(p as u32, k, order as u32))
    }

    /// The field of order `q`, factoring `q = p^k`.
    pub fn from_order(q: u64) -> Result<Self> {
        Self::from_order_with_max(q, DEFAULT_MAX_ORDER)
    }

    pub fn from_order_with_max(q: u64, max_order: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_max_order(p, k, max_order)
    }

    fn build(p: u32, k: u32, q: u32) -> Self {
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, k)
        };
        let mulmod = |a: u32, b: u32| poly_mulmod(a, b, p, &modulus);

        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        (1..q)
            .find(|&g| {
                let mut cur = 1u32;
                for i in 0..order {
                    if i > 0 && cur == 1 {
                        return false;
                    }
                    exp[i as usize] = cur;
                    cur = mulmod(cur, g);
                }
                true
            })
            .expect("the multiplicative group of a finite field is cyclic");
        for i in 0..order as usize {
            exp[i + order as usize] = exp[i];
            log[exp[i] as usize] = i as u32;
        }

        let neg = (0..q)
            .map(|a| {
                let mut out = 0u32;
                let mut place = 1u32;
                let mut a = a;
                for _ in 0..k {
                    let d = a % p;
                    out += ((p - d) % p) * place;
                    a /= p;
                    place = place.wrapping_mul(p);
                }
                out
            })
            .collect();

        FiniteField {
            inner: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                exp,
                log,
                neg,
            }),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// The number of elements `q = p^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Reduction polynomial coefficients, constant term first (`x` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elem(&self, index: u64) -> Result<Fq> {
        if index < self.order() as u64 {
            Ok(Fq(index as u32))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order() as u64,
            })
        }
    }

    #[inline]
    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.inner.q
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Fq> + Clone {
        (0..self.inner.q).map(Fq)
    }

    /// Nonzero elements in index order.
    pub fn nonzero(&self) -> impl ExactSizeIterator<Item = Fq> + Clone {
        (1..self.inner.q).map(Fq)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.inner.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let t = &*self.inner;
        if t.k == 1 {
            let s = a.0 + b.0;
            Fq(if s >= t.p { s - t.p } else { s })
        } else if t.p == 2 {
            Fq(a.0 ^ b.0)
        } else {
            let (mut a, mut b) = (a.0, b.0);
            let mut out = 0u32;
            let mut place = 1u32;
            while a != 0 || b != 0 {
                out += ((a % t.p + b % t.p) % t.p) * place;
                a /= t.p;
                b /= t.p;
                place *= t.p;
            }
            Fq(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let t = &*self.inner;
        Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let t = &*self.inner;
        let order = t.q - 1;
        Ok(Fq(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let t = &*self.inner;
        let order = (t.q - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        Fq(t.exp[l as usize])
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut a: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two index-coded polynomials reduced modulo a monic `modulus`.
fn poly_mulmod(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let a = digits(a, p, k);
    let b = digits(b, p, k);
    let mut prod = vec![0u64; 2 * k];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // subtract c * x^(deg-k) * modulus
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
    undigits(&low, p)
}

/// Remainder of `num` by the monic `den` over GF(p); coefficient vectors, constant first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    for d in 1..=k / 2 {
        for low in 0..p.pow(d as u32) {
            let mut cand = digits(low, p, d);
            cand.push(1);
            if poly_rem(poly, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|low| {
            let mut poly = digits(low, p, k as usize);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}
