//! Symbolic descriptions of candidate large sets.
//!
//! A description is an expression tree over residue classes and ideals,
//! closed under the boolean operations, translation and the multiplicative
//! transforms used throughout the constructions:
//!
//! | text            | members `y`                        |
//! |-----------------|------------------------------------|
//! | `ideal(z)`      | `y ∈ z·R ∩ R·z`                    |
//! | `residue(a; r)` | `y − r ∈ R·a`                      |
//! | `A | B`         | union                              |
//! | `A & B`         | intersection                       |
//! | `!A`            | complement                         |
//! | `shift(s)A`     | `s + y ∈ A` (the set `−s + A`)     |
//! | `dilate(z)A`    | `y = z·w` with `w ∈ A` (the set `zA`) |
//! | `lpre(a)A`      | `a·y ∈ A` (the set `a⁻¹A`)         |
//! | `rpre(b)A`      | `y·b ∈ A` (the set `Ab⁻¹`)         |
//!
//! `&` binds tighter than `|`, prefix operators bind tightest, both binary
//! operators associate to the left, and parentheses group. `all` is
//! shorthand for `ideal(1)`. Whitespace between tokens is ignored.
//!
//! Membership is decided by structural recursion, so it terminates for
//! every element. Nothing here certifies largeness (central, IP*, ...);
//! a description is only a membership oracle.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::configs::IndexSet;
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node<R> {
    Ideal(R),
    Residue { modulus: R, rep: R },
    Union(Box<Node<R>>, Box<Node<R>>),
    Intersection(Box<Node<R>>, Box<Node<R>>),
    Complement(Box<Node<R>>),
    Translate(R, Box<Node<R>>),
    Dilate(R, Box<Node<R>>),
    LeftPreimage(R, Box<Node<R>>),
    RightPreimage(R, Box<Node<R>>),
}

/// A validated set description: every modulus and multiplier is nonzero and
/// quaternion dilations use central factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetDescription<R>(Node<R>);

impl<R: Ring> SetDescription<R> {
    pub fn ideal(z: R) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(SetDescription(Node::Ideal(z)))
    }

    pub fn residue(modulus: R, rep: R) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(SetDescription(Node::Residue { modulus, rep }))
    }

    pub fn full() -> Self {
        SetDescription(Node::Ideal(R::one()))
    }

    pub fn empty() -> Self {
        Self::full().complement()
    }

    pub fn union(self, other: Self) -> Self {
        SetDescription(Node::Union(Box::new(self.0), Box::new(other.0)))
    }

    pub fn intersect(self, other: Self) -> Self {
        SetDescription(Node::Intersection(Box::new(self.0), Box::new(other.0)))
    }

    pub fn complement(self) -> Self {
        SetDescription(Node::Complement(Box::new(self.0)))
    }

    /// `−s + A = {y : s + y ∈ A}`.
    pub fn translate(self, s: R) -> Self {
        SetDescription(Node::Translate(s, Box::new(self.0)))
    }

    /// `zA = {z·w : w ∈ A}`.
    pub fn dilate(self, z: R) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        if !z.is_central() {
            return Err(Error::NonCentralDilation(z.to_string()));
        }
        Ok(SetDescription(Node::Dilate(z, Box::new(self.0))))
    }

    /// `a⁻¹A = {y : a·y ∈ A}`.
    pub fn left_preimage(self, a: R) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(SetDescription(Node::LeftPreimage(a, Box::new(self.0))))
    }

    /// `Ab⁻¹ = {y : y·b ∈ A}`.
    pub fn right_preimage(self, b: R) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(SetDescription(Node::RightPreimage(b, Box::new(self.0))))
    }

    pub fn node(&self) -> &Node<R> {
        &self.0
    }

    pub fn depth(&self) -> usize {
        fn go<R>(n: &Node<R>) -> usize {
            match n {
                Node::Ideal(_) | Node::Residue { .. } => 1,
                Node::Union(a, b) | Node::Intersection(a, b) => 1 + go(a).max(go(b)),
                Node::Complement(a)
                | Node::Translate(_, a)
                | Node::Dilate(_, a)
                | Node::LeftPreimage(_, a)
                | Node::RightPreimage(_, a) => 1 + go(a),
            }
        }
        go(&self.0)
    }

    pub fn member(&self, y: &R) -> bool {
        member(&self.0, y)
    }

    /// Extensional equality on a finite list of points.
    pub fn agrees_on(&self, other: &Self, points: &[R]) -> bool {
        points.iter().all(|p| self.member(p) == other.member(p))
    }
}

// Moduli and multipliers are nonzero by construction, so the ring calls
// below cannot fail.
fn member<R: Ring>(node: &Node<R>, y: &R) -> bool {
    const VALID: &str = "validated nonzero modulus";
    match node {
        Node::Ideal(z) => R::in_left_ideal(y, z).expect(VALID) && R::in_right_ideal(y, z).expect(VALID),
        Node::Residue { modulus, rep } => R::in_left_ideal(&(y.clone() - rep), modulus).expect(VALID),
        Node::Union(a, b) => member(a, y) || member(b, y),
        Node::Intersection(a, b) => member(a, y) && member(b, y),
        Node::Complement(a) => !member(a, y),
        Node::Translate(s, a) => member(a, &(s.clone() + y)),
        Node::Dilate(z, a) => match R::exact_quotient(y, z).expect(VALID) {
            Some(w) => member(a, &w),
            None => false,
        },
        Node::LeftPreimage(m, a) => member(a, &(m.clone() * y)),
        Node::RightPreimage(m, a) => member(a, &(y.clone() * m)),
    }
}

// Printing mirrors the grammar: `level` is the loosest construct that may
// appear unparenthesized at this position.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Union,
    Intersection,
    Prefix,
}

fn write_node<R: Ring>(f: &mut fmt::Formatter<'_>, node: &Node<R>, level: Level) -> fmt::Result {
    match node {
        Node::Ideal(z) => write!(f, "ideal({z})"),
        Node::Residue { modulus, rep } => write!(f, "residue({modulus}; {rep})"),
        Node::Union(a, b) => {
            let wrap = level > Level::Union;
            if wrap {
                f.write_str("(")?;
            }
            write_node(f, a, Level::Union)?;
            f.write_str(" | ")?;
            write_node(f, b, Level::Intersection)?;
            if wrap {
                f.write_str(")")?;
            }
            Ok(())
        }
        Node::Intersection(a, b) => {
            let wrap = level > Level::Intersection;
            if wrap {
                f.write_str("(")?;
            }
            write_node(f, a, Level::Intersection)?;
            f.write_str(" & ")?;
            write_node(f, b, Level::Prefix)?;
            if wrap {
                f.write_str(")")?;
            }
            Ok(())
        }
        Node::Complement(a) => {
            f.write_str("!")?;
            write_node(f, a, Level::Prefix)
        }
        Node::Translate(s, a) => {
            write!(f, "shift({s})")?;
            write_node(f, a, Level::Prefix)
        }
        Node::Dilate(z, a) => {
            write!(f, "dilate({z})")?;
            write_node(f, a, Level::Prefix)
        }
        Node::LeftPreimage(m, a) => {
            write!(f, "lpre({m})")?;
            write_node(f, a, Level::Prefix)
        }
        Node::RightPreimage(m, a) => {
            write!(f, "rpre({m})")?;
            write_node(f, a, Level::Prefix)
        }
    }
}

impl<R: Ring> fmt::Display for SetDescription<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.0, Level::Union)
    }
}

impl<R: Ring> Serialize for SetDescription<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
}

impl<'s> Parser<'s> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'s str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {token:?}")))
        }
    }

    fn element<R: Ring>(&mut self) -> Result<R> {
        self.skip_ws();
        let len = self.rest().find([')', ';']).ok_or_else(|| self.err("unterminated argument"))?;
        let text = &self.rest()[..len];
        let value = text.trim().parse().map_err(|e| self.err(&format!("{e}")))?;
        self.pos += len;
        Ok(value)
    }

    fn union<R: Ring>(&mut self) -> Result<SetDescription<R>> {
        let mut acc = self.intersection()?;
        while self.eat("|") {
            acc = acc.union(self.intersection()?);
        }
        Ok(acc)
    }

    fn intersection<R: Ring>(&mut self) -> Result<SetDescription<R>> {
        let mut acc = self.prefix()?;
        while self.eat("&") {
            acc = acc.intersect(self.prefix()?);
        }
        Ok(acc)
    }

    fn argument<R: Ring>(&mut self) -> Result<R> {
        self.expect("(")?;
        let v = self.element()?;
        self.expect(")")?;
        Ok(v)
    }

    fn prefix<R: Ring>(&mut self) -> Result<SetDescription<R>> {
        if self.eat("!") {
            return Ok(self.prefix()?.complement());
        }
        if self.eat("(") {
            let inner = self.union()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("ideal") {
            return SetDescription::ideal(self.argument()?);
        }
        if self.eat("residue") {
            self.expect("(")?;
            let modulus = self.element()?;
            self.expect(";")?;
            let rep = self.element()?;
            self.expect(")")?;
            return SetDescription::residue(modulus, rep);
        }
        if self.eat("all") {
            return Ok(SetDescription::full());
        }
        if self.eat("shift") {
            let s = self.argument()?;
            return Ok(self.prefix()?.translate(s));
        }
        if self.eat("dilate") {
            let z = self.argument()?;
            return self.prefix()?.dilate(z);
        }
        if self.eat("lpre") {
            let a = self.argument()?;
            return self.prefix()?.left_preimage(a);
        }
        if self.eat("rpre") {
            let b = self.argument()?;
            return self.prefix()?.right_preimage(b);
        }
        Err(self.err("expected a set expression"))
    }
}

impl<R: Ring> FromStr for SetDescription<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let desc = p.union()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(desc)
    }
}

/// Search limits for [`find_j_witness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JBounds {
    /// Shifts `a` range over the coordinate box of this radius.
    pub a_radius: i64,
    /// Index sets `H` range over nonempty subsets of `{1, ..., h_range}`.
    pub h_range: usize,
}

pub const MAX_J_RANGE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum JOutcome<R> {
    Found {
        a: R,
        #[serde(rename = "H")]
        h: IndexSet,
    },
    /// The bounded search space holds no witness. This says nothing about
    /// whether the set is a J-set.
    Exhausted { a_candidates: usize, h_candidates: u64 },
}

/// Looks for `a` and `H` with `a + Σ_{t ∈ H} f(t) ∈ A` for every `f` in the
/// family. Shifts are tried in order of norm, and for each shift the index
/// sets in increasing bitmask order, so the first hit is reproducible.
pub fn find_j_witness<R: Ring>(family: &[Vec<R>], set: &SetDescription<R>, bounds: &JBounds) -> Result<JOutcome<R>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let range = bounds.h_range;
    if range == 0 {
        return Err(Error::TooFewTerms { needed: 1, got: 0 });
    }
    if range > MAX_J_RANGE {
        return Err(Error::CapExceeded { what: "J-witness index range", len: range as u128, cap: MAX_J_RANGE as u128 });
    }
    if let Some(short) = family.iter().find(|f| f.len() < range) {
        return Err(Error::TooFewTerms { needed: range, got: short.len() });
    }
    let masks = 1usize << range;
    // sums[f][mask] = Σ_{t ∈ mask} f(t), built from the mask without its lowest bit.
    let sums: Vec<Vec<R>> = family
        .iter()
        .map(|f| {
            let mut table = vec![R::zero(); masks];
            for mask in 1..masks {
                let low = mask.trailing_zeros() as usize;
                table[mask] = table[mask & (mask - 1)].clone() + &f[low];
            }
            table
        })
        .collect();
    let shifts = R::coordinate_box(bounds.a_radius);
    for a in &shifts {
        for mask in 1..masks {
            if sums.iter().all(|table| set.member(&(a.clone() + &table[mask]))) {
                let h = IndexSet::new((0..range).filter(|t| mask & (1 << t) != 0).map(|t| t + 1).collect())?;
                return Ok(JOutcome::Found { a: a.clone(), h });
            }
        }
    }
    Ok(JOutcome::Exhausted { a_candidates: shifts.len(), h_candidates: (masks - 1) as u64 })
}
