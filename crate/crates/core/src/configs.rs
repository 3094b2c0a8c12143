//! Finite configurations: index sets, sum subsystems, and the value sets
//! FS, FP, AP, PS and PP of a finite list of terms.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::quaternion::LipschitzQuat;
use crate::ring::Ring;

pub const DEFAULT_FS_CAP: usize = 20;
pub const DEFAULT_AP_CAP: usize = 6;

/// A nonempty finite set of positive integers, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() || indices[0] == 0 {
            return Err(Error::InvalidIndexSet);
        }
        Ok(IndexSet(indices))
    }

    pub fn singleton(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `{lo, lo+1, ..., hi}`.
    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        Self::new((lo..=hi).collect())
    }

    pub fn min(&self) -> usize {
        self.0[0]
    }

    pub fn max(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn is_contiguous(&self) -> bool {
        self.max() - self.min() + 1 == self.len()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Checks `max H_n < min H_{n+1}` for consecutive blocks.
pub fn check_increasing(blocks: &[IndexSet]) -> Result<()> {
    for (n, pair) in blocks.windows(2).enumerate() {
        if pair[0].max() >= pair[1].min() {
            return Err(Error::OrderingViolation(n + 1));
        }
    }
    Ok(())
}

/// A sequence indexed from 1: either an explicit finite list or a rule
/// evaluated on demand up to a declared bound.
#[derive(Clone)]
pub enum SequenceSource<R> {
    Explicit(Vec<R>),
    Rule { rule: Arc<dyn Fn(usize) -> R + Send + Sync>, bound: usize },
}

impl<R: Ring> SequenceSource<R> {
    pub fn from_fn(bound: usize, rule: impl Fn(usize) -> R + Send + Sync + 'static) -> Self {
        SequenceSource::Rule { rule: Arc::new(rule), bound }
    }

    pub fn constant(value: R, bound: usize) -> Self {
        Self::from_fn(bound, move |_| value.clone())
    }

    pub fn ones(bound: usize) -> Self {
        Self::constant(R::one(), bound)
    }

    pub fn zeros(bound: usize) -> Self {
        Self::constant(R::zero(), bound)
    }

    /// `x_n = n`.
    pub fn naturals(bound: usize) -> Self {
        Self::from_fn(bound, |n| R::from_int(BigInt::from(n)))
    }

    /// The largest index that may be evaluated.
    pub fn bound(&self) -> usize {
        match self {
            SequenceSource::Explicit(v) => v.len(),
            SequenceSource::Rule { bound, .. } => *bound,
        }
    }

    pub fn get(&self, n: usize) -> Result<R> {
        if n == 0 || n > self.bound() {
            return Err(Error::IndexOutOfBound { index: n, bound: self.bound() });
        }
        Ok(match self {
            SequenceSource::Explicit(v) => v[n - 1].clone(),
            SequenceSource::Rule { rule, .. } => rule(n),
        })
    }

    /// `x_1, ..., x_k`.
    pub fn prefix(&self, k: usize) -> Result<Vec<R>> {
        (1..=k).map(|n| self.get(n)).collect()
    }

    pub fn block_sum(&self, block: &IndexSet) -> Result<R> {
        block.iter().try_fold(R::zero(), |acc, t| Ok(acc + self.get(t)?))
    }

    /// `n ↦ f(x_n)`.
    pub fn map<S: Ring>(&self, f: impl Fn(R) -> S + Send + Sync + 'static) -> SequenceSource<S> {
        let src = self.clone();
        SequenceSource::from_fn(self.bound(), move |n| f(src.get(n).expect("index within bound")))
    }
}

impl<R: Ring> fmt::Debug for SequenceSource<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSource::Explicit(v) => f.debug_tuple("Explicit").field(v).finish(),
            SequenceSource::Rule { bound, .. } => f.debug_struct("Rule").field("bound", bound).finish(),
        }
    }
}

/// A sum subsystem: `y_n = Σ_{t ∈ H_n} x_t` over blocks with
/// `max H_n < min H_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem<R> {
    pub blocks: Vec<IndexSet>,
    pub terms: Vec<R>,
}

impl<R: Ring> BlockSystem<R> {
    pub fn truncate(&self, depth: usize) -> Self {
        BlockSystem {
            blocks: self.blocks[..depth.min(self.blocks.len())].to_vec(),
            terms: self.terms[..depth.min(self.terms.len())].to_vec(),
        }
    }
}

pub fn apply_blocks<R: Ring>(x: &SequenceSource<R>, blocks: &[IndexSet]) -> Result<BlockSystem<R>> {
    check_increasing(blocks)?;
    let terms = blocks.iter().map(|b| x.block_sum(b)).collect::<Result<_>>()?;
    Ok(BlockSystem { blocks: blocks.to_vec(), terms })
}

/// `G_n = ⋃_{t ∈ K_n} H_t`.
pub fn union_blocks(h_seq: &[IndexSet], k_seq: &[IndexSet]) -> Result<Vec<IndexSet>> {
    check_increasing(h_seq)?;
    check_increasing(k_seq)?;
    k_seq
        .iter()
        .map(|k| {
            let mut merged = Vec::new();
            for t in k.iter() {
                let h = h_seq.get(t - 1).ok_or(Error::IndexOutOfBound { index: t, bound: h_seq.len() })?;
                merged.extend(h.iter());
            }
            IndexSet::new(merged)
        })
        .collect()
}

fn check_len(what: &'static str, len: usize, cap: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::TooFewTerms { needed: 1, got: 0 });
    }
    if len > cap {
        return Err(Error::CapExceeded { what, len: len as u128, cap: cap as u128 });
    }
    Ok(())
}

/// All sums over nonempty index subsets.
pub fn fs<R: Ring>(terms: &[R]) -> Result<BTreeSet<R>> {
    fs_with_cap(terms, DEFAULT_FS_CAP)
}

pub fn fs_with_cap<R: Ring>(terms: &[R], cap: usize) -> Result<BTreeSet<R>> {
    check_len("FS length", terms.len(), cap)?;
    let mut out = BTreeSet::new();
    for x in terms {
        let shifted: Vec<R> = out.iter().map(|s: &R| s.clone() + x).collect();
        out.extend(shifted);
        out.insert(x.clone());
    }
    Ok(out)
}

/// All products over nonempty index subsets, factors in increasing index
/// order.
pub fn fp<R: Ring>(terms: &[R]) -> Result<BTreeSet<R>> {
    fp_with_cap(terms, DEFAULT_FS_CAP)
}

pub fn fp_with_cap<R: Ring>(terms: &[R], cap: usize) -> Result<BTreeSet<R>> {
    check_len("FP length", terms.len(), cap)?;
    let mut out = BTreeSet::new();
    for x in terms {
        let extended: Vec<R> = out.iter().map(|p: &R| p.clone() * x).collect();
        out.extend(extended);
        out.insert(x.clone());
    }
    Ok(out)
}

/// Values of all ordered products of distinct terms, together with the
/// number of product expressions evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApSet<R> {
    pub values: BTreeSet<R>,
    pub expressions: u64,
}

/// Number of ordered selections of `1..=k` distinct items from `k`.
pub fn ap_expression_count(k: usize) -> u64 {
    let mut total = 0u64;
    let mut falling = 1u64;
    for j in 0..k {
        falling *= (k - j) as u64;
        total += falling;
    }
    total
}

pub fn ap<R: Ring>(terms: &[R]) -> Result<ApSet<R>> {
    ap_with_cap(terms, DEFAULT_AP_CAP)
}

pub fn ap_with_cap<R: Ring>(terms: &[R], cap: usize) -> Result<ApSet<R>> {
    check_len("AP length", terms.len(), cap)?;
    let mut set = ApSet { values: BTreeSet::new(), expressions: 0 };
    let mut used = vec![false; terms.len()];
    extend_products(terms, &mut used, None, &mut set);
    Ok(set)
}

fn extend_products<R: Ring>(terms: &[R], used: &mut [bool], acc: Option<&R>, set: &mut ApSet<R>) {
    for n in 0..terms.len() {
        if used[n] {
            continue;
        }
        let value = match acc {
            Some(p) => p.clone() * &terms[n],
            None => terms[n].clone(),
        };
        set.expressions += 1;
        used[n] = true;
        extend_products(terms, used, Some(&value), set);
        used[n] = false;
        set.values.insert(value);
    }
}

/// `{x_m + x_n : m ≠ n}`.
pub fn ps<R: Ring>(terms: &[R]) -> Result<BTreeSet<R>> {
    pairs(terms, |x, y| vec![x.clone() + y])
}

/// `{x_m · x_n : m ≠ n}`, both orders.
pub fn pp<R: Ring>(terms: &[R]) -> Result<BTreeSet<R>> {
    pairs(terms, |x, y| vec![x.clone() * y, y.clone() * x])
}

fn pairs<R: Ring>(terms: &[R], op: impl Fn(&R, &R) -> Vec<R>) -> Result<BTreeSet<R>> {
    if terms.len() < 2 {
        return Err(Error::TooFewTerms { needed: 2, got: terms.len() });
    }
    let mut out = BTreeSet::new();
    for m in 0..terms.len() {
        for n in m + 1..terms.len() {
            out.extend(op(&terms[m], &terms[n]));
        }
    }
    Ok(out)
}

/// `z_{2p-1} = x_p`, `z_{2p} = i·x_p`.
pub fn interleave_gaussian(x: &SequenceSource<GaussianInt>) -> SequenceSource<GaussianInt> {
    let src = x.clone();
    SequenceSource::from_fn(2 * x.bound(), move |m| {
        let v = src.get(m.div_ceil(2)).expect("index within bound");
        if m % 2 == 1 {
            v
        } else {
            GaussianInt::i() * v
        }
    })
}

/// `w_{4p+1} = x_{p+1}`, `w_{4p+2} = i·x_{p+1}`, `w_{4p+3} = j·x_{p+1}`,
/// `w_{4p} = k·x_p`.
pub fn interleave_quaternion(x: &SequenceSource<LipschitzQuat>) -> SequenceSource<LipschitzQuat> {
    let src = x.clone();
    SequenceSource::from_fn(4 * x.bound(), move |n| {
        let v = src.get(n.div_ceil(4)).expect("index within bound");
        match n % 4 {
            1 => v,
            2 => LipschitzQuat::i() * v,
            3 => LipschitzQuat::j() * v,
            _ => LipschitzQuat::k() * v,
        }
    })
}

/// Embeds an integer sequence in a ring.
pub fn embed<R: Ring>(x: &[i64]) -> SequenceSource<R> {
    SequenceSource::Explicit(x.iter().map(|&v| R::from_i64(v)).collect())
}
