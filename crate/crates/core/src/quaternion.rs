//! The Lipschitz quaternions `L = {a + bi + cj + dk : a, b, c, d ∈ Z}`.
//!
//! `L` is not a Euclidean domain. Rounding `x·conj(a)/norm(a)` coordinate by
//! coordinate leaves a remainder with `norm(r) ≤ norm(a)`; equality happens
//! (e.g. `1 + i + j + k` modulo `2`), which is still enough to make the
//! remainder set finite.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{nonzero, ring_ops, round_half_down, serialize_as_text, Ring};
use crate::text;

/// `a + b·i + c·j + d·k` with `i² = j² = k² = ijk = −1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LipschitzQuat {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl LipschitzQuat {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        LipschitzQuat { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn i() -> Self {
        LipschitzQuat::new(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        LipschitzQuat::new(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        LipschitzQuat::new(0, 0, 0, 1)
    }

    pub fn conj(&self) -> Self {
        LipschitzQuat { a: self.a.clone(), b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        LipschitzQuat { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    /// Division on the right: `self = q·a + r` with `norm(r) ≤ norm(a)`.
    ///
    /// `r` depends only on the class of `self` modulo the left ideal `L·a`.
    pub fn right_div_rem(&self, a: &LipschitzQuat) -> Result<(LipschitzQuat, LipschitzQuat)> {
        nonzero(a)?;
        let n = a.norm();
        let q = (self * &a.conj()).map(|c| round_half_down(c, &n));
        let r = self - &(&q * a);
        Ok((q, r))
    }

    /// Division on the left: `self = a·q + r` with `norm(r) ≤ norm(a)`,
    /// obtained by conjugating [`right_div_rem`](Self::right_div_rem).
    pub fn left_div_rem(&self, a: &LipschitzQuat) -> Result<(LipschitzQuat, LipschitzQuat)> {
        let (q, r) = self.conj().right_div_rem(&a.conj())?;
        Ok((q.conj(), r.conj()))
    }

    /// Is `x ∈ a·L`?
    pub fn left_divides(a: &LipschitzQuat, x: &LipschitzQuat) -> Result<bool> {
        Ok(x.left_div_rem(a)?.1.is_zero())
    }

    /// Is `x ∈ L·b`?
    pub fn right_divides(b: &LipschitzQuat, x: &LipschitzQuat) -> Result<bool> {
        Ok(x.right_div_rem(b)?.1.is_zero())
    }

    /// A transversal of the left ideal `L·a`: one canonical remainder per
    /// class, sorted. Its length is `norm(a)²`.
    pub fn left_coset_reps(a: &LipschitzQuat) -> Result<Vec<LipschitzQuat>> {
        nonzero(a)?;
        // norm(a) = conj(a)·a ∈ L·a, so the cube [0, norm)⁴ meets every class.
        let side = a.norm().to_i64().ok_or(Error::CapExceeded {
            what: "coset enumeration modulus norm",
            len: u128::MAX,
            cap: i64::MAX as u128,
        })?;
        let mut reps = BTreeSet::new();
        for w in 0..side {
            for x in 0..side {
                for y in 0..side {
                    for z in 0..side {
                        reps.insert(LipschitzQuat::new(w, x, y, z).right_div_rem(a)?.1);
                    }
                }
            }
        }
        Ok(reps.into_iter().collect())
    }

    /// A transversal of the right ideal `a·L`, conjugate to the left one.
    pub fn right_coset_reps(a: &LipschitzQuat) -> Result<Vec<LipschitzQuat>> {
        let mut reps: Vec<_> = Self::left_coset_reps(&a.conj())?.iter().map(Self::conj).collect();
        reps.sort();
        Ok(reps)
    }
}

fn add(x: &LipschitzQuat, y: &LipschitzQuat) -> LipschitzQuat {
    LipschitzQuat { a: &x.a + &y.a, b: &x.b + &y.b, c: &x.c + &y.c, d: &x.d + &y.d }
}

fn sub(x: &LipschitzQuat, y: &LipschitzQuat) -> LipschitzQuat {
    LipschitzQuat { a: &x.a - &y.a, b: &x.b - &y.b, c: &x.c - &y.c, d: &x.d - &y.d }
}

// Hamilton product.
fn mul(x: &LipschitzQuat, y: &LipschitzQuat) -> LipschitzQuat {
    LipschitzQuat {
        a: &x.a * &y.a - &x.b * &y.b - &x.c * &y.c - &x.d * &y.d,
        b: &x.a * &y.b + &x.b * &y.a + &x.c * &y.d - &x.d * &y.c,
        c: &x.a * &y.c - &x.b * &y.d + &x.c * &y.a + &x.d * &y.b,
        d: &x.a * &y.d + &x.b * &y.c - &x.c * &y.b + &x.d * &y.a,
    }
}

fn neg(x: &LipschitzQuat) -> LipschitzQuat {
    x.map(|c| -c)
}

ring_ops!(LipschitzQuat, add = add, sub = sub, mul = mul, neg = neg);
serialize_as_text!(LipschitzQuat);

impl From<i64> for LipschitzQuat {
    fn from(n: i64) -> Self {
        LipschitzQuat::new(n, 0, 0, 0)
    }
}

impl fmt::Display for LipschitzQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()];
        f.write_str(&text::format_coeffs(&coeffs, &["i", "j", "k"]))
    }
}

impl FromStr for LipschitzQuat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = text::parse_coeffs(s, &['i', 'j', 'k'])?;
        let [a, b, c, d]: [BigInt; 4] = c.try_into().unwrap();
        Ok(LipschitzQuat { a, b, c, d })
    }
}

impl Ring for LipschitzQuat {
    const NAME: &'static str = "quat";

    fn zero() -> Self {
        LipschitzQuat::default()
    }

    fn one() -> Self {
        LipschitzQuat::new(1, 0, 0, 0)
    }

    fn from_int(n: BigInt) -> Self {
        LipschitzQuat { a: n, ..Default::default() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    fn coords(&self) -> Vec<BigInt> {
        vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    fn norm(&self) -> BigInt {
        LipschitzQuat::norm(self)
    }

    fn is_rational_integer(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    // The centre of L is Z.
    fn is_central(&self) -> bool {
        self.is_rational_integer()
    }

    fn in_left_ideal(x: &Self, a: &Self) -> Result<bool> {
        Self::right_divides(a, x)
    }

    fn in_right_ideal(x: &Self, a: &Self) -> Result<bool> {
        Self::left_divides(a, x)
    }

    fn right_ideal_residue(x: &Self, a: &Self) -> Result<Self> {
        Ok(x.left_div_rem(a)?.1)
    }

    fn right_ideal_index(a: &Self) -> Result<BigInt> {
        nonzero(a)?;
        let n = a.norm();
        Ok(&n * &n)
    }

    fn exact_quotient(x: &Self, z: &Self) -> Result<Option<Self>> {
        nonzero(z)?;
        if !z.is_central() {
            return Err(Error::NonCentralDilation(z.to_string()));
        }
        let q = x.map(|c| c.div_floor(&z.a));
        Ok((&q * z == *x).then_some(q))
    }

    fn coordinate_box(radius: i64) -> Vec<Self> {
        let r = -radius..=radius;
        let mut out = Vec::new();
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        out.push(LipschitzQuat::new(a, b, c, d));
                    }
                }
            }
        }
        out.sort_by(|x, y| x.norm().cmp(&y.norm()).then_with(|| x.cmp(y)));
        out
    }
}
