//! Finite partition searches: exhaustive Schur colorings, monochromatic
//! finite-sum witnesses and pairwise sum/product checks under a coloring.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::configs;
use crate::error::{Error, Result};
use crate::ring::Ring;

pub const DEFAULT_ENUM_CAP: u128 = 1 << 24;
pub const ENUM_CAP_VAR: &str = "RAMSEY_RINGS_MAX_ENUM";
pub const MAX_COLORS: usize = 4;

/// The enumeration cap, overridable through `RAMSEY_RINGS_MAX_ENUM`.
pub fn enumeration_cap() -> u128 {
    std::env::var(ENUM_CAP_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_ENUM_CAP)
}

fn check_palette(colors: usize) -> Result<()> {
    if !(2..=MAX_COLORS).contains(&colors) {
        return Err(Error::PaletteSize(colors));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SchurOutcome {
    /// Every coloring has a monochromatic `{x, y, x + y}`.
    Forced { nodes: u64 },
    /// `coloring[t − 1]` is the color of `t`.
    Avoidable { coloring: Vec<u8>, nodes: u64 },
}

impl SchurOutcome {
    pub fn is_forced(&self) -> bool {
        matches!(self, SchurOutcome::Forced { .. })
    }
}

pub fn schur_search(n: usize, colors: usize) -> Result<SchurOutcome> {
    schur_search_with_cap(n, colors, enumeration_cap())
}

/// Decides whether every coloring of `{1..n}` contains `x`, `y`, `x + y` of
/// one color (`x = y` allowed). Colorings are explored depth-first with the
/// color of 1 fixed, so the returned avoiding coloring is the
/// lexicographically least one.
pub fn schur_search_with_cap(n: usize, colors: usize, cap: u128) -> Result<SchurOutcome> {
    check_palette(colors)?;
    let total = (colors as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::CapExceeded { what: "colorings", len: total, cap });
    }
    if n == 0 {
        return Ok(SchurOutcome::Avoidable { coloring: Vec::new(), nodes: 0 });
    }
    let mut col = vec![0u8; n + 1];
    let mut nodes = 0u64;

    // Whether giving `t` color `c` closes a monochromatic triple with
    // smaller, already colored values.
    let closes = |col: &[u8], t: usize, c: u8| (1..=t / 2).any(|x| col[x] == c && col[t - x] == c);

    fn go(
        t: usize,
        n: usize,
        colors: u8,
        col: &mut Vec<u8>,
        nodes: &mut u64,
        closes: &impl Fn(&[u8], usize, u8) -> bool,
    ) -> bool {
        if t > n {
            return true;
        }
        let palette = if t == 1 { 1 } else { colors };
        for c in 0..palette {
            *nodes += 1;
            if closes(col, t, c) {
                continue;
            }
            col[t] = c;
            if go(t + 1, n, colors, col, nodes, closes) {
                return true;
            }
        }
        false
    }

    if go(1, n, colors as u8, &mut col, &mut nodes, &closes) {
        Ok(SchurOutcome::Avoidable { coloring: col[1..].to_vec(), nodes })
    } else {
        Ok(SchurOutcome::Forced { nodes })
    }
}

/// True when `coloring` (color of `t` at `t − 1`) has a monochromatic
/// `{x, y, x + y}`.
pub fn has_schur_triple(coloring: &[u8]) -> bool {
    let n = coloring.len();
    (1..=n).any(|x| (x..=n - x).any(|y| coloring[x - 1] == coloring[y - 1] && coloring[x - 1] == coloring[x + y - 1]))
}

/// A finite coloring with at most four colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring<R> {
    colors: BTreeMap<R, u8>,
}

impl<R: Ring> Coloring<R> {
    pub fn from_map(colors: BTreeMap<R, u8>) -> Result<Self> {
        if let Some(&c) = colors.values().find(|&&c| c as usize >= MAX_COLORS) {
            return Err(Error::TooManyColors(c as usize + 1));
        }
        Ok(Coloring { colors })
    }

    /// Reads `{"<element>": color, ...}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("coloring must be a JSON object".into()))?;
        let mut colors = BTreeMap::new();
        for (k, c) in obj {
            let c = c.as_u64().ok_or_else(|| Error::Parse(format!("color of {k} must be a small integer")))?;
            colors.insert(k.parse()?, u8::try_from(c).unwrap_or(u8::MAX));
        }
        Coloring::from_map(colors)
    }

    pub fn constant(domain: impl IntoIterator<Item = R>) -> Self {
        Coloring { colors: domain.into_iter().map(|x| (x, 0)).collect() }
    }

    /// Color is the parity of the coordinate sum.
    pub fn parity(domain: impl IntoIterator<Item = R>) -> Self {
        let two = num_bigint::BigInt::from(2);
        let colors = domain
            .into_iter()
            .map(|x| {
                let s: num_bigint::BigInt = x.coords().iter().sum();
                let c = if num_integer::Integer::mod_floor(&s, &two) == num_bigint::BigInt::from(0) { 0 } else { 1 };
                (x, c)
            })
            .collect();
        Coloring { colors }
    }

    /// Color is the rank of the residue class of `x` in `R / z·R`, which must
    /// have at most four classes.
    pub fn residue(domain: impl IntoIterator<Item = R>, z: &R) -> Result<Self> {
        let index = R::right_ideal_index(z)?;
        if index > num_bigint::BigInt::from(MAX_COLORS) {
            return Err(Error::TooManyColors(usize::try_from(index).unwrap_or(usize::MAX)));
        }
        let mut ranks: BTreeMap<R, u8> = BTreeMap::new();
        let mut colors = BTreeMap::new();
        let domain: Vec<R> = domain.into_iter().collect();
        let residues = domain.iter().map(|x| R::right_ideal_residue(x, z)).collect::<Result<Vec<_>>>()?;
        for r in &residues {
            ranks.entry(r.clone()).or_insert(0);
        }
        for (rank, slot) in ranks.values_mut().enumerate() {
            *slot = rank as u8;
        }
        for (x, r) in domain.into_iter().zip(residues) {
            colors.insert(x, ranks[&r]);
        }
        Ok(Coloring { colors })
    }

    pub fn random(domain: impl IntoIterator<Item = R>, palette: usize, seed: u64) -> Result<Self> {
        check_palette(palette)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Coloring { colors: domain.into_iter().map(|x| (x, rng.gen_range(0..palette as u8))).collect() })
    }

    pub fn color(&self, x: &R) -> Option<u8> {
        self.colors.get(x).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = &R> {
        self.colors.keys()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// `1..=n` embedded in the ring.
pub fn interval<R: Ring>(lo: i64, hi: i64) -> Vec<R> {
    (lo..=hi).map(R::from_i64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HindmanBounds {
    pub nodes: usize,
}

impl Default for HindmanBounds {
    fn default() -> Self {
        HindmanBounds { nodes: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HindmanWitness<R> {
    pub terms: Vec<R>,
    pub color: u8,
    pub fs: Vec<R>,
}

/// Searches for `k` terms, increasing in domain order, whose `2^k − 1`
/// subset sums are pairwise distinct, lie in the domain and share a color.
pub fn hindman_witness<R: Ring>(
    coloring: &Coloring<R>,
    k: usize,
    bounds: &HindmanBounds,
) -> Result<HindmanWitness<R>> {
    if k == 0 {
        return Err(Error::TooFewTerms { needed: 1, got: 0 });
    }
    if k > configs::DEFAULT_FS_CAP {
        return Err(Error::CapExceeded {
            what: "witness length",
            len: k as u128,
            cap: configs::DEFAULT_FS_CAP as u128,
        });
    }
    let domain: Vec<&R> = coloring.domain().collect();
    let mut search = Search { coloring, domain: &domain, k, nodes: 0, limit: bounds.nodes, deepest: 0, backtracks: 0 };
    let mut terms = Vec::new();
    if search.extend(0, &mut terms, &mut BTreeSet::new()) {
        let color = coloring.color(&terms[0]).expect("terms come from the domain");
        let fs = configs::fs(&terms)?.into_iter().collect();
        return Ok(HindmanWitness { terms, color, fs });
    }
    Err(Error::NotFound { deepest: search.deepest, depth: k, backtracks: search.backtracks })
}

struct Search<'a, R> {
    coloring: &'a Coloring<R>,
    domain: &'a [&'a R],
    k: usize,
    nodes: usize,
    limit: usize,
    deepest: usize,
    backtracks: usize,
}

impl<R: Ring> Search<'_, R> {
    fn extend(&mut self, from: usize, terms: &mut Vec<R>, sums: &mut BTreeSet<R>) -> bool {
        if terms.len() == self.k {
            return true;
        }
        for pos in from..self.domain.len() {
            if self.nodes >= self.limit {
                return false;
            }
            self.nodes += 1;
            let y = self.domain[pos];
            let color = match terms.first() {
                Some(first) => self.coloring.color(first),
                None => self.coloring.color(y),
            };
            if self.coloring.color(y) != color || sums.contains(y) {
                continue;
            }
            let mut fresh = vec![y.clone()];
            let ok = sums.iter().all(|s| {
                let v = s.clone() + y;
                let good = self.coloring.color(&v) == color && !sums.contains(&v);
                fresh.push(v);
                good
            });
            if !ok {
                continue;
            }
            terms.push(y.clone());
            self.deepest = self.deepest.max(terms.len());
            sums.extend(fresh.iter().cloned());
            if self.extend(pos + 1, terms, sums) {
                return true;
            }
            for v in &fresh {
                sums.remove(v);
            }
            terms.pop();
            self.backtracks += 1;
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsppReport<R> {
    pub monochromatic: bool,
    pub ps: Vec<R>,
    pub pp: Vec<R>,
    /// How many distinct values of `PS ∪ PP` received each color.
    pub colors: BTreeMap<u8, usize>,
}

/// Colors `PS(terms) ∪ PP(terms)` and reports whether one color suffices.
pub fn pspp_check<R: Ring>(terms: &[R], coloring: &Coloring<R>) -> Result<PsppReport<R>> {
    let mut seen = BTreeSet::new();
    for t in terms {
        if !seen.insert(t) {
            return Err(Error::RepeatedTerm(t.to_string()));
        }
    }
    let ps = configs::ps(terms)?;
    let pp = configs::pp(terms)?;
    let mut colors = BTreeMap::new();
    for v in ps.union(&pp) {
        let c = coloring.color(v).ok_or_else(|| Error::OutOfDomain(v.to_string()))?;
        *colors.entry(c).or_insert(0) += 1;
    }
    Ok(PsppReport {
        monochromatic: colors.len() <= 1,
        ps: ps.into_iter().collect(),
        pp: pp.into_iter().collect(),
        colors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GaussianInt;
    use crate::quaternion::LipschitzQuat;

    type G = GaussianInt;

    fn g(v: &[i64]) -> Vec<G> {
        v.iter().map(|&n| G::from(n)).collect()
    }

    /// Plain enumeration of every coloring, independent of the search.
    fn forced_by_enumeration(n: usize, colors: usize) -> bool {
        let total = colors.pow(n as u32);
        (0..total).all(|mut code| {
            let coloring: Vec<u8> = (0..n)
                .map(|_| {
                    let c = (code % colors) as u8;
                    code /= colors;
                    c
                })
                .collect();
            has_schur_triple(&coloring)
        })
    }

    #[test]
    fn schur_small_cases() {
        let four = schur_search(4, 2).unwrap();
        let SchurOutcome::Avoidable { coloring, .. } = &four else { panic!("{four:?}") };
        assert_eq!(coloring, &vec![0, 1, 1, 0]);
        assert!(!has_schur_triple(coloring));
        assert!(schur_search(5, 2).unwrap().is_forced());
        assert!(!schur_search(1, 2).unwrap().is_forced());
        assert!(!schur_search(13, 3).unwrap().is_forced());
        assert!(schur_search(14, 3).unwrap().is_forced());
        for n in 1..=9 {
            assert_eq!(schur_search(n, 2).unwrap().is_forced(), forced_by_enumeration(n, 2), "n = {n}");
        }
    }

    #[test]
    fn schur_limits() {
        assert_eq!(schur_search(3, 1), Err(Error::PaletteSize(1)));
        assert_eq!(schur_search(3, 5), Err(Error::PaletteSize(5)));
        assert!(matches!(schur_search_with_cap(10, 2, 1000), Err(Error::CapExceeded { len: 1024, .. })));
        assert!(schur_search_with_cap(10, 2, 1024).is_ok());
    }

    #[test]
    fn hindman_examples() {
        let constant = Coloring::constant(interval::<G>(1, 7));
        let w = hindman_witness(&constant, 3, &HindmanBounds::default()).unwrap();
        assert_eq!(w.terms, g(&[1, 2, 4]));
        assert_eq!(w.fs, g(&[1, 2, 3, 4, 5, 6, 7]));

        let parity = Coloring::parity(interval::<G>(1, 100));
        let w = hindman_witness(&parity, 3, &HindmanBounds::default()).unwrap();
        assert_eq!(w.terms, g(&[2, 4, 8]));
        assert_eq!(w.color, 0);

        let w = hindman_witness(&parity, 1, &HindmanBounds::default()).unwrap();
        assert_eq!(w.terms, g(&[1]));

        let err = hindman_witness(&constant, 4, &HindmanBounds::default()).unwrap_err();
        assert!(matches!(err, Error::NotFound { deepest: 3, depth: 4, .. }));
    }

    #[test]
    fn hindman_on_gaussian_box() {
        let boxed = G::coordinate_box(3);
        let c = Coloring::residue(boxed, &G::new(1, 1)).unwrap();
        let w = hindman_witness(&c, 3, &HindmanBounds::default()).unwrap();
        let colors: BTreeSet<_> = w.fs.iter().map(|v| c.color(v)).collect();
        assert_eq!(colors.len(), 1);
        assert_eq!(configs::fs(&w.terms).unwrap().len(), 7);
    }

    #[test]
    fn pspp_examples() {
        let dom = interval::<G>(1, 20);
        let constant = Coloring::constant(dom.clone());
        let parity = Coloring::parity(dom.clone());
        let r = pspp_check(&g(&[2, 4]), &constant).unwrap();
        assert!(r.monochromatic);
        assert_eq!((r.ps.clone(), r.pp.clone()), (g(&[6]), g(&[8])));
        assert!(pspp_check(&g(&[2, 4]), &parity).unwrap().monochromatic);
        let r = pspp_check(&g(&[1, 2]), &parity).unwrap();
        assert!(!r.monochromatic);
        assert_eq!(r.colors, BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(pspp_check(&g(&[2, 2]), &parity), Err(Error::RepeatedTerm("2".into())));
        assert_eq!(pspp_check(&g(&[5, 6]), &parity), Err(Error::OutOfDomain("30".into())));
    }

    #[test]
    fn colorings() {
        let json: Value = serde_json::json!({"1": 0, "2+i": 3, "i": 1});
        let c = Coloring::<G>::from_json(&json).unwrap();
        assert_eq!(c.color(&G::new(2, 1)), Some(3));
        assert_eq!(c.len(), 3);
        assert_eq!(Coloring::<G>::from_json(&serde_json::json!({"1": 4})), Err(Error::TooManyColors(5)));
        assert!(Coloring::<G>::from_json(&serde_json::json!([1])).is_err());

        let a = Coloring::random(interval::<G>(1, 50), 3, 7).unwrap();
        let b = Coloring::random(interval::<G>(1, 50), 3, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.domain().all(|x| a.color(x).unwrap() < 3));

        assert!(Coloring::residue(interval::<G>(1, 5), &G::from(3)).is_err());
        let q = Coloring::residue(LipschitzQuat::coordinate_box(1), &LipschitzQuat::from(1)).unwrap();
        assert!(q.domain().all(|x| q.color(x) == Some(0)));
        let p = Coloring::parity(LipschitzQuat::coordinate_box(1));
        assert_eq!(p.color(&"1+i".parse().unwrap()), Some(0));
    }
}
