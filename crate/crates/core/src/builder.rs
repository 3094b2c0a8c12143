//! Greedy construction of sum subsystems whose finite sums and products stay
//! inside a described set, and independent exhaustive verifiers for the
//! results.
//!
//! The constructions pick one block per level. A block `H` for level `n + 1`
//! must have `min H > max H_n` and its sum `y` must pass every membership
//! test that level's constraints impose given `y_1, ..., y_n`:
//!
//! * [`build_fs_fp`]: `y`, `s + y` for `s ∈ FS(y_1..y_n)` and `s·y` for
//!   `s ∈ FP(y_1..y_n)` all lie in `A`.
//! * [`build_fs_leftprod`]: for every `G ⊆ {1..n}` with `S = Σ_G y + y` and
//!   `m = min(G ∪ {n+1})`, `S ∈ A` and `b·S ∈ A` for `b ∈ AP(y_1..y_{m−1})`.
//! * [`build_fs_ap`]: as above, plus `S·b ∈ A` and `a·S·b ∈ A` for
//!   `a, b ∈ AP(y_1..y_{m−1})`.
//!
//! Candidate blocks are enumerated by increasing maximum index, then by
//! cardinality, then lexicographically, capped per level. When a level has
//! no admissible candidate the search backtracks depth-first.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::configs::{self, check_increasing, BlockSystem, IndexSet, SequenceSource};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::sets::SetDescription;

pub const DEFAULT_DEPTH_CAP: usize = 8;
pub const DEFAULT_AP_DEPTH_CAP: usize = configs::DEFAULT_AP_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildBounds {
    pub blocks_per_level: usize,
    pub backtracks: usize,
}

impl Default for BuildBounds {
    fn default() -> Self {
        BuildBounds { blocks_per_level: 500, backtracks: 10_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    FsFp,
    LeftProducts,
    AllProducts,
}

/// A sum subsystem `y_1..y_depth` of `x` with `FS ∪ FP ⊆ A`.
pub fn build_fs_fp<R: Ring>(
    x: &SequenceSource<R>,
    set: &SetDescription<R>,
    depth: usize,
    bounds: &BuildBounds,
) -> Result<BlockSystem<R>> {
    build(x, set, depth, bounds, Mode::FsFp, DEFAULT_DEPTH_CAP)
}

/// A sum subsystem with `FS ⊆ A` and `b·Σ_F x ∈ A` whenever
/// `b ∈ AP(x_1..x_{m−1})` and `min F ≥ m ≥ 2`.
pub fn build_fs_leftprod<R: Ring>(
    y: &SequenceSource<R>,
    set: &SetDescription<R>,
    depth: usize,
    bounds: &BuildBounds,
) -> Result<BlockSystem<R>> {
    build(y, set, depth, bounds, Mode::LeftProducts, DEFAULT_AP_DEPTH_CAP)
}

/// A sum subsystem with `FS ∪ AP ⊆ A`.
pub fn build_fs_ap<R: Ring>(
    y: &SequenceSource<R>,
    set: &SetDescription<R>,
    depth: usize,
    bounds: &BuildBounds,
) -> Result<BlockSystem<R>> {
    build(y, set, depth, bounds, Mode::AllProducts, DEFAULT_AP_DEPTH_CAP)
}

/// Membership tests a level imposes, precomputed from the chosen prefix.
enum Level<R> {
    FsFp { sums: BTreeSet<R>, products: BTreeSet<R> },
    /// One entry per `G ⊆ {1..n}`: `Σ_G y` and `AP(y_1..y_{m−1})`.
    Products { groups: Vec<(R, BTreeSet<R>)>, two_sided: bool },
}

impl<R: Ring> Level<R> {
    fn new(prefix: &[R], mode: Mode) -> Result<Self> {
        if mode == Mode::FsFp {
            if prefix.is_empty() {
                return Ok(Level::FsFp { sums: BTreeSet::new(), products: BTreeSet::new() });
            }
            return Ok(Level::FsFp { sums: configs::fs(prefix)?, products: configs::fp(prefix)? });
        }
        let n = prefix.len();
        // aps[m] = AP(y_1..y_{m−1}), empty for m = 1.
        let mut aps = vec![BTreeSet::new(); n + 2];
        for m in 2..=n + 1 {
            aps[m] = configs::ap_with_cap(&prefix[..m - 1], DEFAULT_AP_DEPTH_CAP)?.values;
        }
        let groups = (0usize..1 << n)
            .map(|mask| {
                let sum = (0..n).filter(|t| mask & (1 << t) != 0).fold(R::zero(), |acc, t| acc + &prefix[t]);
                let m = if mask == 0 { n + 1 } else { mask.trailing_zeros() as usize + 1 };
                (sum, aps[m].clone())
            })
            .collect();
        Ok(Level::Products { groups, two_sided: mode == Mode::AllProducts })
    }

    fn admits(&self, set: &SetDescription<R>, y: &R) -> bool {
        match self {
            Level::FsFp { sums, products } => {
                set.member(y)
                    && sums.iter().all(|s| set.member(&(s.clone() + y)))
                    && products.iter().all(|s| set.member(&(s.clone() * y)))
            }
            Level::Products { groups, two_sided } => groups.iter().all(|(partial, ap)| {
                let s = partial.clone() + y;
                set.member(&s)
                    && ap.iter().all(|b| set.member(&(b.clone() * &s)))
                    && (!two_sided
                        || ap.iter().all(|b| {
                            let right = s.clone() * b;
                            set.member(&right) && ap.iter().all(|a| set.member(&(a.clone() * &right)))
                        }))
            }),
        }
    }
}

/// Candidate blocks above `start`, ordered by (max, cardinality, lex), at
/// most `cap` of them.
pub fn candidate_blocks(start: usize, bound: usize, cap: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    for top in start + 1..=bound {
        let pool: Vec<usize> = (start + 1..top).collect();
        for extra in 0..=pool.len() {
            let mut pick: Vec<usize> = (0..extra).collect();
            loop {
                if out.len() == cap {
                    return out;
                }
                let mut block: Vec<usize> = pick.iter().map(|&p| pool[p]).collect();
                block.push(top);
                out.push(IndexSet::new(block).expect("positive indices"));
                // Advance to the next combination in lexicographic order.
                let Some(pos) = (0..extra).rev().find(|&p| pick[p] < pool.len() - extra + p) else {
                    break;
                };
                pick[pos] += 1;
                for q in pos + 1..extra {
                    pick[q] = pick[q - 1] + 1;
                }
            }
        }
    }
    out
}

struct Frame<R> {
    candidates: Vec<IndexSet>,
    next: usize,
    level: Level<R>,
}

fn build<R: Ring>(
    x: &SequenceSource<R>,
    set: &SetDescription<R>,
    depth: usize,
    bounds: &BuildBounds,
    mode: Mode,
    cap: usize,
) -> Result<BlockSystem<R>> {
    if depth == 0 {
        return Err(Error::TooFewTerms { needed: 1, got: 0 });
    }
    if depth > cap {
        return Err(Error::CapExceeded { what: "subsystem depth", len: depth as u128, cap: cap as u128 });
    }
    let mut blocks: Vec<IndexSet> = Vec::new();
    let mut terms: Vec<R> = Vec::new();
    let mut stack = vec![Frame {
        candidates: candidate_blocks(0, x.bound(), bounds.blocks_per_level),
        next: 0,
        level: Level::new(&[], mode)?,
    }];
    let (mut deepest, mut backtracks) = (0, 0);
    while blocks.len() < depth {
        let frame = stack.last_mut().expect("stack tracks chosen blocks");
        let mut chosen = None;
        while frame.next < frame.candidates.len() {
            let block = &frame.candidates[frame.next];
            frame.next += 1;
            let y = x.block_sum(block)?;
            if frame.level.admits(set, &y) {
                chosen = Some((block.clone(), y));
                break;
            }
        }
        match chosen {
            Some((block, y)) => {
                let start = block.max();
                blocks.push(block);
                terms.push(y);
                deepest = deepest.max(blocks.len());
                if blocks.len() < depth {
                    stack.push(Frame {
                        candidates: candidate_blocks(start, x.bound(), bounds.blocks_per_level),
                        next: 0,
                        level: Level::new(&terms, mode)?,
                    });
                }
            }
            None => {
                stack.pop();
                if stack.is_empty() || backtracks == bounds.backtracks {
                    return Err(Error::NotFound { deepest, depth, backtracks });
                }
                backtracks += 1;
                blocks.pop();
                terms.pop();
            }
        }
    }
    Ok(BlockSystem { blocks, terms })
}

/// Checks the sum-subsystem invariants of `sys` against its source from
/// scratch: increasing blocks and `terms[n] = Σ_{t ∈ blocks[n]} x_t`.
pub fn check_block_system<R: Ring>(x: &SequenceSource<R>, sys: &BlockSystem<R>) -> Result<bool> {
    check_increasing(&sys.blocks)?;
    if sys.blocks.len() != sys.terms.len() {
        return Ok(false);
    }
    for (block, term) in sys.blocks.iter().zip(&sys.terms) {
        let mut direct = R::zero();
        for t in block.iter() {
            direct = direct + &x.get(t)?;
        }
        if direct != *term {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Sum,
    Product,
    LeftProduct,
    OrderedProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation<R> {
    pub kind: ViolationKind,
    /// The offending expression in terms of `y_1, y_2, ...`, e.g. `y1+y3`
    /// or `y2*y1*(y3+y4)`.
    pub expression: String,
    pub value: R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCheck {
    /// FP, increasing index order.
    Fp,
    /// `b·Σ_F y` with `b` an ordered product of earlier terms.
    LeftProducts,
    /// Every ordered product of distinct terms.
    Ap,
}

impl ProductCheck {
    pub fn key(self) -> &'static str {
        match self {
            ProductCheck::Fp => "fp",
            ProductCheck::LeftProducts => "left_products",
            ProductCheck::Ap => "ap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport<R> {
    pub sums_checked: u64,
    pub products_checked: u64,
    pub product_check: ProductCheck,
    pub violations: Vec<Violation<R>>,
}

impl<R: Ring> VerifyReport<R> {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "fs": self.sums_checked, "violations": self.violations });
        v[self.product_check.key()] = json!(self.products_checked);
        v
    }
}

const MAX_VERIFY_TERMS: usize = 24;

fn subset(mask: usize, k: usize) -> Vec<usize> {
    (0..k).filter(|t| mask & (1 << t) != 0).collect()
}

fn sum_expr(indices: &[usize]) -> String {
    indices.iter().map(|t| format!("y{}", t + 1)).collect::<Vec<_>>().join("+")
}

fn product_expr(order: &[usize]) -> String {
    order.iter().map(|t| format!("y{}", t + 1)).collect::<Vec<_>>().join("*")
}

fn verify_sums<R: Ring>(terms: &[R], set: &SetDescription<R>, report: &mut VerifyReport<R>) {
    let k = terms.len();
    for mask in 1usize..1 << k {
        let idx = subset(mask, k);
        let mut value = R::zero();
        for &t in &idx {
            value = value + &terms[t];
        }
        report.sums_checked += 1;
        if !set.member(&value) {
            report.violations.push(Violation { kind: ViolationKind::Sum, expression: sum_expr(&idx), value });
        }
    }
}

fn check_cap(k: usize, cap: usize) -> Result<()> {
    if k > cap {
        return Err(Error::CapExceeded { what: "verified length", len: k as u128, cap: cap as u128 });
    }
    Ok(())
}

/// Every ordered arrangement of distinct indices drawn from `pool`, each
/// passed to `visit` with its product.
fn each_ordered_product<R: Ring>(terms: &[R], pool: &[usize], visit: &mut impl FnMut(&[usize], &R)) {
    fn go<R: Ring>(
        terms: &[R],
        pool: &[usize],
        order: &mut Vec<usize>,
        acc: &R,
        visit: &mut impl FnMut(&[usize], &R),
    ) {
        for &t in pool {
            if order.contains(&t) {
                continue;
            }
            let value = acc.clone() * &terms[t];
            order.push(t);
            visit(order, &value);
            go(terms, pool, order, &value, visit);
            order.pop();
        }
    }
    go(terms, pool, &mut Vec::new(), &R::one(), visit);
}

/// Evaluates membership for all `2^k − 1` sums and all `2^k − 1` products.
pub fn verify_fs_fp<R: Ring>(terms: &[R], set: &SetDescription<R>) -> Result<VerifyReport<R>> {
    check_cap(terms.len(), MAX_VERIFY_TERMS)?;
    let mut report =
        VerifyReport { sums_checked: 0, products_checked: 0, product_check: ProductCheck::Fp, violations: Vec::new() };
    verify_sums(terms, set, &mut report);
    let k = terms.len();
    for mask in 1usize..1 << k {
        let idx = subset(mask, k);
        let mut value = R::one();
        for &t in &idx {
            value = value * &terms[t];
        }
        report.products_checked += 1;
        if !set.member(&value) {
            report.violations.push(Violation { kind: ViolationKind::Product, expression: product_expr(&idx), value });
        }
    }
    Ok(report)
}

/// Checks `FS ⊆ A` and `b·Σ_{t ∈ F} y_t ∈ A` for every `F` with
/// `min F ≥ 2` and every ordered product `b` of distinct terms among
/// `y_1..y_{min F − 1}`.
pub fn verify_fs_leftprod<R: Ring>(terms: &[R], set: &SetDescription<R>) -> Result<VerifyReport<R>> {
    check_cap(terms.len(), configs::DEFAULT_FS_CAP.min(DEFAULT_AP_DEPTH_CAP + 1))?;
    let mut report = VerifyReport {
        sums_checked: 0,
        products_checked: 0,
        product_check: ProductCheck::LeftProducts,
        violations: Vec::new(),
    };
    verify_sums(terms, set, &mut report);
    let k = terms.len();
    for mask in 1usize..1 << k {
        let idx = subset(mask, k);
        let first = idx[0];
        let mut sum = R::zero();
        for &t in &idx {
            sum = sum + &terms[t];
        }
        let earlier: Vec<usize> = (0..first).collect();
        each_ordered_product(terms, &earlier, &mut |order, b| {
            let value = b.clone() * &sum;
            report.products_checked += 1;
            if !set.member(&value) {
                report.violations.push(Violation {
                    kind: ViolationKind::LeftProduct,
                    expression: format!("{}*({})", product_expr(order), sum_expr(&idx)),
                    value,
                });
            }
        });
    }
    Ok(report)
}

/// Checks `FS ⊆ A` and `AP ⊆ A`, the latter over every product expression.
pub fn verify_fs_ap<R: Ring>(terms: &[R], set: &SetDescription<R>) -> Result<VerifyReport<R>> {
    check_cap(terms.len(), DEFAULT_AP_DEPTH_CAP)?;
    let mut report =
        VerifyReport { sums_checked: 0, products_checked: 0, product_check: ProductCheck::Ap, violations: Vec::new() };
    verify_sums(terms, set, &mut report);
    let all: Vec<usize> = (0..terms.len()).collect();
    each_ordered_product(terms, &all, &mut |order, value| {
        report.products_checked += 1;
        if !set.member(value) {
            report.violations.push(Violation {
                kind: ViolationKind::OrderedProduct,
                expression: product_expr(order),
                value: value.clone(),
            });
        }
    });
    Ok(report)
}

/// The certificate emitted for a built subsystem.
pub fn certificate<R: Ring>(sys: &BlockSystem<R>, set: &SetDescription<R>, report: &VerifyReport<R>) -> Value {
    json!({
        "blocks": sys.blocks,
        "terms": sys.terms,
        "set": set.to_string(),
        "verified": report.to_json(),
    })
}
