//! Pigeonhole extraction of index sets whose sums are divisible by a fixed
//! nonzero element, and the union-subsystem refinements built on top of it.
//!
//! "Divisible by `z`" means membership in the right ideal `z·R`. For
//! Gaussian integers and for rational-integer quaternion moduli this is the
//! two-sided ideal; for a general quaternion `z` it is left divisibility
//! `x ∈ z·L`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::configs::{check_increasing, IndexSet, SequenceSource};
use crate::error::{Error, Result};
use crate::ring::{nonzero, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// Two equal residues among consecutive prefix sums give a contiguous
    /// block; at most `index(z)` terms.
    #[serde(rename = "A")]
    PrefixSum,
    /// `norm(z)` terms sharing one remainder `r`; their sum is
    /// `z·w + norm(z)·r` and `norm(z)·r = z·conj(z)·r`.
    #[serde(rename = "B")]
    EqualRemainder,
}

/// A divisible block together with the data needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibleBlock<R> {
    pub z: R,
    #[serde(rename = "H")]
    pub h: IndexSet,
    pub sum: R,
    pub strategy: Strategy,
}

fn small(n: num_bigint::BigInt, what: &'static str) -> Result<usize> {
    n.to_usize().ok_or(Error::CapExceeded { what, len: u128::MAX, cap: usize::MAX as u128 })
}

/// Number of residue classes modulo `z·R`.
pub fn class_count<R: Ring>(z: &R) -> Result<usize> {
    small(R::right_ideal_index(z)?, "residue class count")
}

/// Finds `H` with `min H > m` and `z | Σ_{n ∈ H} x_n`.
pub fn extract_divisible_block<R: Ring>(
    x: &SequenceSource<R>,
    z: &R,
    m: usize,
    strategy: Strategy,
) -> Result<IndexSet> {
    nonzero(z)?;
    match strategy {
        Strategy::PrefixSum => prefix_sum_block(x, z, m),
        Strategy::EqualRemainder => equal_remainder_block(x, z, m),
    }
}

pub fn extract_certificate<R: Ring>(
    x: &SequenceSource<R>,
    z: &R,
    m: usize,
    strategy: Strategy,
) -> Result<DivisibleBlock<R>> {
    let h = extract_divisible_block(x, z, m, strategy)?;
    let sum = x.block_sum(&h)?;
    Ok(DivisibleBlock { z: z.clone(), h, sum, strategy })
}

fn prefix_sum_block<R: Ring>(x: &SequenceSource<R>, z: &R, m: usize) -> Result<IndexSet> {
    let classes = class_count(z)?;
    let needed = m + classes;
    let mut seen = HashMap::from([(R::zero(), m)]);
    let mut acc = R::zero();
    for j in m + 1..=needed {
        if j > x.bound() {
            return Err(Error::SourceTooShort { needed, bound: x.bound() });
        }
        acc = acc + x.get(j)?;
        let key = R::right_ideal_residue(&acc, z)?;
        if let Some(&i) = seen.get(&key) {
            return IndexSet::range(i + 1, j);
        }
        seen.insert(key, j);
    }
    unreachable!("{} prefix sums cannot occupy {classes} classes injectively", classes + 1)
}

fn equal_remainder_block<R: Ring>(x: &SequenceSource<R>, z: &R, m: usize) -> Result<IndexSet> {
    let classes = class_count(z)?;
    let want = small(z.norm(), "norm")?;
    let needed = m + classes * (want - 1) + 1;
    let mut buckets: HashMap<R, Vec<usize>> = HashMap::new();
    for n in m + 1..=needed {
        if n > x.bound() {
            return Err(Error::SourceTooShort { needed, bound: x.bound() });
        }
        let key = R::right_ideal_residue(&x.get(n)?, z)?;
        let bucket = buckets.entry(key).or_default();
        bucket.push(n);
        if bucket.len() == want {
            return IndexSet::new(std::mem::take(bucket));
        }
    }
    unreachable!("{} indices over {classes} classes leave some class with {want}", needed - m)
}

/// A lazily produced, strictly increasing sequence of blocks.
trait BlockFeed {
    fn next_block(&mut self) -> Result<Option<IndexSet>>;
}

struct Singletons {
    next: usize,
    bound: usize,
}

impl BlockFeed for Singletons {
    fn next_block(&mut self) -> Result<Option<IndexSet>> {
        if self.next > self.bound {
            return Ok(None);
        }
        self.next += 1;
        IndexSet::singleton(self.next - 1).map(Some)
    }
}

struct Listed(std::vec::IntoIter<IndexSet>);

impl BlockFeed for Listed {
    fn next_block(&mut self) -> Result<Option<IndexSet>> {
        Ok(self.0.next())
    }
}

/// Groups consecutive blocks of `inner` into unions whose `f`-sums are
/// divisible by `z`, greedily and in order.
struct DivisibleUnions<'a, R> {
    inner: Box<dyn BlockFeed + 'a>,
    f: &'a SequenceSource<R>,
    z: &'a R,
    log: Rc<RefCell<Vec<IndexSet>>>,
}

impl<R: Ring> BlockFeed for DivisibleUnions<'_, R> {
    fn next_block(&mut self) -> Result<Option<IndexSet>> {
        let mut pulled: Vec<IndexSet> = Vec::new();
        let mut seen = HashMap::from([(R::zero(), 0usize)]);
        let mut acc = R::zero();
        loop {
            let Some(block) = self.inner.next_block()? else {
                return Ok(None);
            };
            acc = acc + self.f.block_sum(&block)?;
            pulled.push(block);
            let key = R::right_ideal_residue(&acc, self.z)?;
            if let Some(&i) = seen.get(&key) {
                let union = IndexSet::new(pulled[i..].iter().flat_map(IndexSet::iter).collect())?;
                self.log.borrow_mut().push(union.clone());
                return Ok(Some(union));
            }
            seen.insert(key, pulled.len());
        }
    }
}

fn take<F: BlockFeed + ?Sized>(feed: &mut F, count: usize) -> Result<Vec<IndexSet>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        match feed.next_block()? {
            Some(b) => out.push(b),
            None => return Err(Error::InsufficientBlocks { produced: out.len(), requested: count }),
        }
    }
    Ok(out)
}

/// A union subsystem `G_1, ..., G_count` of `h_seq` with
/// `z | Σ_{t ∈ G_n} f(t)` for every `n`.
///
/// Each `G_n` is the union of a run `H_{i+1}, ..., H_j` of consecutive
/// blocks found by prefix-sum pigeonholing on the block sums, the search
/// for `G_{n+1}` starting right after the last block used by `G_n`.
pub fn divisible_union_subsystem<R: Ring>(
    f: &SequenceSource<R>,
    h_seq: &[IndexSet],
    z: &R,
    count: usize,
) -> Result<Vec<IndexSet>> {
    nonzero(z)?;
    check_increasing(h_seq)?;
    let mut stream = DivisibleUnions {
        inner: Box::new(Listed(h_seq.to_vec().into_iter())),
        f,
        z,
        log: Rc::default(),
    };
    take(&mut stream, count)
}

/// Blocks `K_1, ..., K_count` with `max K_n < min K_{n+1}` on which every
/// sequence of `family` sums to a multiple of `z`.
pub fn common_divisible_blocks<R: Ring>(
    family: &[SequenceSource<R>],
    z: &R,
    count: usize,
) -> Result<Vec<IndexSet>> {
    let mut levels = common_divisible_levels(family, z, count)?;
    Ok(levels.pop().unwrap())
}

/// Like [`common_divisible_blocks`], but returns every refinement level:
/// entry `i` holds the blocks produced for `family[..=i]`, each a union of
/// consecutive blocks of entry `i - 1`. The last entry is the answer.
pub fn common_divisible_levels<R: Ring>(
    family: &[SequenceSource<R>],
    z: &R,
    count: usize,
) -> Result<Vec<Vec<IndexSet>>> {
    nonzero(z)?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let bound = family.iter().map(SequenceSource::bound).min().unwrap();
    let mut feed: Box<dyn BlockFeed + '_> = Box::new(Singletons { next: 1, bound });
    let mut logs = Vec::new();
    for f in family {
        let log = Rc::new(RefCell::new(Vec::new()));
        logs.push(log.clone());
        feed = Box::new(DivisibleUnions { inner: feed, f, z, log });
    }
    take(feed.as_mut(), count)?;
    drop(feed);
    Ok(logs.into_iter().map(|l| Rc::try_unwrap(l).unwrap().into_inner()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GaussianInt;
    use crate::quaternion::LipschitzQuat;

    fn g(s: &str) -> GaussianInt {
        s.parse().unwrap()
    }

    fn ix(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn prefix_strategy_examples() {
        let ones = SequenceSource::<GaussianInt>::ones(100);
        assert_eq!(extract_divisible_block(&ones, &g("2"), 0, Strategy::PrefixSum).unwrap(), ix(&[1, 2]));
        // Prefix sums of 1, 2, 3, ... are 1, 3, 6: the first repeated parity is
        // at positions 1 and 2, so the block is {2}.
        let nat = SequenceSource::<GaussianInt>::naturals(100);
        assert_eq!(extract_divisible_block(&nat, &g("2"), 0, Strategy::PrefixSum).unwrap(), ix(&[2]));
        assert_eq!(
            extract_divisible_block(&ones, &g("2+i"), 0, Strategy::PrefixSum).unwrap(),
            ix(&[1, 2, 3, 4, 5])
        );
        assert_eq!(extract_divisible_block(&ones, &g("2"), 7, Strategy::PrefixSum).unwrap(), ix(&[8, 9]));
    }

    #[test]
    fn equal_remainder_strategy_examples() {
        let ones = SequenceSource::<GaussianInt>::ones(100);
        assert_eq!(extract_divisible_block(&ones, &g("2"), 0, Strategy::EqualRemainder).unwrap(), ix(&[1, 2, 3, 4]));
        let nat = SequenceSource::<GaussianInt>::naturals(100);
        // norm(1+i) = 2: the first two naturals of equal parity are 1 and 3.
        assert_eq!(extract_divisible_block(&nat, &g("1+i"), 0, Strategy::EqualRemainder).unwrap(), ix(&[1, 3]));
    }

    #[test]
    fn extraction_errors() {
        let ones = SequenceSource::<GaussianInt>::ones(3);
        assert_eq!(extract_divisible_block(&ones, &g("0"), 0, Strategy::PrefixSum), Err(Error::DivisionByZero));
        assert_eq!(
            extract_divisible_block(&ones, &g("2+i"), 0, Strategy::PrefixSum),
            Err(Error::SourceTooShort { needed: 5, bound: 3 })
        );
        assert!(matches!(
            extract_divisible_block(&ones, &g("2"), 0, Strategy::EqualRemainder),
            Err(Error::SourceTooShort { .. })
        ));
    }

    #[test]
    fn quaternion_extraction_is_divisible() {
        let w = crate::configs::interleave_quaternion(&SequenceSource::naturals(40));
        for z in ["2", "3", "1+i", "1+i+j"] {
            let z: LipschitzQuat = z.parse().unwrap();
            for strategy in [Strategy::PrefixSum, Strategy::EqualRemainder] {
                let cert = extract_certificate(&w, &z, 3, strategy).unwrap();
                assert!(cert.h.min() > 3);
                assert!(LipschitzQuat::left_divides(&z, &cert.sum).unwrap(), "{z} {strategy:?}");
            }
        }
    }

    #[test]
    fn union_subsystem_examples() {
        let ones = SequenceSource::<GaussianInt>::ones(10);
        let h: Vec<_> = (1..=4).map(|n| ix(&[n])).collect();
        assert_eq!(divisible_union_subsystem(&ones, &h, &g("2"), 2).unwrap(), vec![ix(&[1, 2]), ix(&[3, 4])]);

        let evens = SequenceSource::<GaussianInt>::from_fn(20, |n| GaussianInt::from(2 * n as i64));
        let h = vec![ix(&[1, 2]), ix(&[4]), ix(&[7, 9])];
        assert_eq!(divisible_union_subsystem(&evens, &h, &g("2"), 3).unwrap(), h);

        let h: Vec<_> = (1..=4).map(|n| ix(&[n])).collect();
        assert_eq!(
            divisible_union_subsystem(&ones, &h, &g("2"), 3),
            Err(Error::InsufficientBlocks { produced: 2, requested: 3 })
        );
        assert!(divisible_union_subsystem(&ones, &[ix(&[2]), ix(&[1])], &g("2"), 1).is_err());
    }

    #[test]
    fn common_blocks_examples() {
        let ones = SequenceSource::<GaussianInt>::ones(50);
        assert_eq!(
            common_divisible_blocks(std::slice::from_ref(&ones), &g("3"), 2).unwrap(),
            vec![ix(&[1, 2, 3]), ix(&[4, 5, 6])]
        );
        let nat = SequenceSource::<GaussianInt>::naturals(50);
        assert_eq!(
            common_divisible_blocks(&[nat.clone(), nat.clone()], &g("2+i"), 4).unwrap(),
            common_divisible_blocks(std::slice::from_ref(&nat), &g("2+i"), 4).unwrap()
        );
        let k = common_divisible_blocks(&[ones.clone(), nat.clone()], &g("2"), 1).unwrap();
        assert_eq!(k[0].len() % 2, 0);
        assert_eq!(k[0].iter().sum::<usize>() % 2, 0);
        assert_eq!(common_divisible_blocks::<GaussianInt>(&[], &g("2"), 1), Err(Error::EmptyFamily));
        assert!(matches!(
            common_divisible_blocks(&[SequenceSource::<GaussianInt>::ones(5)], &g("3"), 2),
            Err(Error::InsufficientBlocks { produced: 1, requested: 2 })
        ));
    }

    /// Small exhaustive oracle: some K ⊆ {1..6} makes both n ↦ 1 and n ↦ n
    /// sum to an even number, and the extracted block is one of them.
    #[test]
    fn common_block_is_among_brute_force_solutions() {
        let solutions: Vec<Vec<usize>> = (1u32..64)
            .map(|mask| (1..=6).filter(|n| mask & (1 << (n - 1)) != 0).collect::<Vec<_>>())
            .filter(|k| k.len() % 2 == 0 && k.iter().sum::<usize>() % 2 == 0)
            .collect();
        let fam = [SequenceSource::<GaussianInt>::ones(6), SequenceSource::naturals(6)];
        let k = common_divisible_blocks(&fam, &g("2"), 1).unwrap();
        assert!(solutions.contains(&k[0].as_slice().to_vec()));
    }

    #[test]
    fn levels_are_nested_unions() {
        let fam: Vec<SequenceSource<GaussianInt>> = vec![
            SequenceSource::from_fn(4000, |n| GaussianInt::new((n * 7 % 11) as i64, (n % 3) as i64)),
            SequenceSource::from_fn(4000, |n| GaussianInt::new(1, (n * n % 5) as i64)),
            SequenceSource::naturals(4000),
        ];
        let z = g("1+2i");
        let levels = common_divisible_levels(&fam, &z, 5).unwrap();
        for pair in levels.windows(2) {
            let (coarse, fine) = (&pair[1], &pair[0]);
            for block in coarse {
                let parts: Vec<_> = fine.iter().filter(|b| block.contains(b.min())).collect();
                let covered: usize = parts.iter().map(|b| b.len()).sum();
                assert_eq!(covered, block.len());
            }
        }
        // A run on a prefix of the family reproduces the matching level.
        let short = common_divisible_levels(&fam[..2], &z, levels[1].len()).unwrap();
        assert_eq!(short[1], levels[1]);
    }
}
