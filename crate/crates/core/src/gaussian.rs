//! The Gaussian integers `Z[i]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{nonzero, ring_ops, round_half_down, serialize_as_text, Ring};
use crate::text;

/// An element `re + im·i` of `Z[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianInt { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`, the squared modulus.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Euclidean division: `self = q·z + r` with `norm(r) ≤ norm(z)/2`.
    ///
    /// The quotient is the exact rational quotient `self·conj(z)/norm(z)`
    /// with each coordinate rounded to the nearest integer, ties toward
    /// negative infinity. The remainder depends only on the class of `self`
    /// modulo `z`, so it doubles as the canonical coset representative.
    pub fn div_rem_round(&self, z: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
        nonzero(z)?;
        let n = z.norm();
        let num = self * &z.conj();
        let q = GaussianInt {
            re: round_half_down(&num.re, &n),
            im: round_half_down(&num.im, &n),
        };
        let r = self - &(&q * z);
        Ok((q, r))
    }

    /// Does `self` divide `x`?
    pub fn divides(&self, x: &GaussianInt) -> Result<bool> {
        Ok(x.div_rem_round(self)?.1.is_zero())
    }

    /// One canonical representative per residue class modulo `z`, in
    /// lexicographic `(re, im)` order. The list has exactly `norm(z)` entries.
    pub fn coset_reps(z: &GaussianInt) -> Result<Vec<GaussianInt>> {
        nonzero(z)?;
        // norm(z) = z·conj(z) lies in zZ[i], so the square [0, norm)² meets every class.
        let n = z.norm();
        let side = n.to_i64().ok_or(Error::CapExceeded {
            what: "coset enumeration modulus norm",
            len: u128::MAX,
            cap: i64::MAX as u128,
        })?;
        let mut reps = std::collections::BTreeSet::new();
        for a in 0..side {
            for b in 0..side {
                reps.insert(GaussianInt::new(a, b).div_rem_round(z)?.1);
            }
        }
        Ok(reps.into_iter().collect())
    }
}

fn add(x: &GaussianInt, y: &GaussianInt) -> GaussianInt {
    GaussianInt { re: &x.re + &y.re, im: &x.im + &y.im }
}

fn sub(x: &GaussianInt, y: &GaussianInt) -> GaussianInt {
    GaussianInt { re: &x.re - &y.re, im: &x.im - &y.im }
}

fn mul(x: &GaussianInt, y: &GaussianInt) -> GaussianInt {
    GaussianInt {
        re: &x.re * &y.re - &x.im * &y.im,
        im: &x.re * &y.im + &x.im * &y.re,
    }
}

fn neg(x: &GaussianInt) -> GaussianInt {
    GaussianInt { re: -&x.re, im: -&x.im }
}

ring_ops!(GaussianInt, add = add, sub = sub, mul = mul, neg = neg);
serialize_as_text!(GaussianInt);

impl From<i64> for GaussianInt {
    fn from(n: i64) -> Self {
        GaussianInt::new(n, 0)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_coeffs(&[self.re.clone(), self.im.clone()], &["i"]))
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = text::parse_coeffs(s, &['i'])?.into_iter();
        Ok(GaussianInt { re: c.next().unwrap(), im: c.next().unwrap() })
    }
}

impl Ring for GaussianInt {
    const NAME: &'static str = "gauss";

    fn zero() -> Self {
        GaussianInt::default()
    }

    fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    fn from_int(n: BigInt) -> Self {
        GaussianInt { re: n, im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn coords(&self) -> Vec<BigInt> {
        vec![self.re.clone(), self.im.clone()]
    }

    fn norm(&self) -> BigInt {
        GaussianInt::norm(self)
    }

    fn is_rational_integer(&self) -> bool {
        self.im.is_zero()
    }

    fn is_central(&self) -> bool {
        true
    }

    fn in_left_ideal(x: &Self, a: &Self) -> Result<bool> {
        a.divides(x)
    }

    fn in_right_ideal(x: &Self, a: &Self) -> Result<bool> {
        a.divides(x)
    }

    fn right_ideal_residue(x: &Self, a: &Self) -> Result<Self> {
        Ok(x.div_rem_round(a)?.1)
    }

    fn right_ideal_index(a: &Self) -> Result<BigInt> {
        nonzero(a)?;
        Ok(a.norm())
    }

    fn exact_quotient(x: &Self, z: &Self) -> Result<Option<Self>> {
        nonzero(z)?;
        let n = z.norm();
        let num = x * &z.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        Ok((rr.is_zero() && ri.is_zero()).then_some(GaussianInt { re: qr, im: qi }))
    }

    fn coordinate_box(radius: i64) -> Vec<Self> {
        let mut out: Vec<Self> = (-radius..=radius)
            .flat_map(|a| (-radius..=radius).map(move |b| GaussianInt::new(a, b)))
            .collect();
        out.sort_by(|x, y| x.norm().cmp(&y.norm()).then_with(|| x.cmp(y)));
        out
    }
}
