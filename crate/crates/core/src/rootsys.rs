//! Positive roots of `A_r` and `sl(m|n)`, twist patterns, and the
//! subalgebra decomposition generated by a set of preserved roots.
//!
//! An `A_r` positive root `e_lo - e_hi` is the index interval `[lo, hi)` of
//! simple roots. A set of roots generates an equivalence relation on the
//! row indices `1..=r+1`; its classes are the blocks of the decomposition and
//! every root internal to a block is preserved.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::poly::ExponentVector;

/// `e_lo - e_hi = α_lo + … + α_{hi-1}`, indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveRoot {
    lo: usize,
    hi: usize,
}

impl PositiveRoot {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo >= hi {
            return Err(Error::InvalidRoot(format!(
                "need 1 <= lo < hi, got ({lo},{hi})"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// The simple root `α_i`.
    pub fn simple(i: usize) -> Result<Self> {
        Self::new(i, i + 1)
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn height(&self) -> usize {
        self.hi - self.lo
    }

    pub fn fits_rank(&self, r: usize) -> bool {
        self.hi <= r + 1
    }

    fn check_rank(&self, r: usize) -> Result<()> {
        if self.fits_rank(r) {
            Ok(())
        } else {
            Err(Error::InvalidRoot(format!("{self} is not a root of A_{r}")))
        }
    }

    /// Exponents over the simple roots: 1 for `lo <= i < hi`.
    pub fn exponents(&self, r: usize) -> ExponentVector {
        ExponentVector::new(
            (1..=r)
                .map(|i| u32::from(self.lo <= i && i < self.hi))
                .collect(),
        )
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (self.lo..self.hi).map(|i| format!("a{i}")).collect();
        write!(f, "{}", names.join("+"))
    }
}

/// Parses a sum of consecutive simple roots written with the given letter,
/// e.g. `a2+a3` or `t1+t2`.
fn parse_interval(s: &str, letter: char) -> Result<PositiveRoot> {
    let bad = || {
        Error::InvalidRoot(format!(
            "cannot parse {s:?} as a sum of consecutive {letter}_i"
        ))
    };
    let mut idx = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        let rest = part.strip_prefix(letter).ok_or_else(bad)?;
        idx.push(rest.parse::<usize>().map_err(|_| bad())?);
    }
    idx.sort_unstable();
    if idx.is_empty() || idx[0] == 0 || idx.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(bad());
    }
    PositiveRoot::new(idx[0], idx[idx.len() - 1] + 1)
}

impl FromStr for PositiveRoot {
    type Err = Error;

    /// Accepts `a1`, `a1+a2`, … and also `e1-e3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('-') {
            let parse = |x: &str| {
                x.trim()
                    .strip_prefix('e')
                    .and_then(|v| v.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidRoot(format!("cannot parse {s:?}")))
            };
            return PositiveRoot::new(parse(a)?, parse(b)?);
        }
        parse_interval(s, 'a')
    }
}

/// All positive roots of `A_r`, sorted by `(lo, hi)`.
pub fn positive_roots(r: usize) -> Vec<PositiveRoot> {
    let mut out = Vec::with_capacity(r * (r + 1) / 2);
    for lo in 1..=r {
        for hi in lo + 1..=r + 1 {
            out.push(PositiveRoot { lo, hi });
        }
    }
    out
}

pub fn simple_roots(r: usize) -> Vec<PositiveRoot> {
    (1..=r).map(|i| PositiveRoot { lo: i, hi: i + 1 }).collect()
}

/// Which positive roots have vanishing total twist.
///
/// Stored as one flag per root of [`positive_roots`]; every constructor
/// guarantees the flags come from an actual assignment of angles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistConfiguration {
    rank: usize,
    zero_flags: Vec<bool>,
}

impl TwistConfiguration {
    /// All twists generic.
    pub fn generic(r: usize) -> Self {
        Self {
            rank: r,
            zero_flags: vec![false; r * (r + 1) / 2],
        }
    }

    /// Exact angles `θ_i`, each a rational multiple of `2π` (so `1/3` means `2π/3`).
    pub fn from_angles(angles: &[Ratio<i64>]) -> Self {
        let r = angles.len();
        let zero_flags = positive_roots(r)
            .iter()
            .map(|root| {
                let sum: Ratio<i64> = angles[root.lo - 1..root.hi - 1].iter().copied().sum();
                sum.is_integer()
            })
            .collect();
        Self {
            rank: r,
            zero_flags,
        }
    }

    /// The configuration in which exactly the listed combinations vanish,
    /// together with everything they imply.
    pub fn from_vanishing(r: usize, vanishing: &[PositiveRoot]) -> Result<Self> {
        let decomp = decomposition_from_subset(r, vanishing)?;
        let zero_flags = positive_roots(r)
            .iter()
            .map(|root| decomp.preserves(root))
            .collect();
        Ok(Self {
            rank: r,
            zero_flags,
        })
    }

    /// Parses `"t1,t2+t3"`; an empty string means no vanishing combination.
    pub fn parse_zeros(r: usize, spec: &str) -> Result<Self> {
        let roots = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_interval(s, 't'))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vanishing(r, &roots)
    }

    /// Explicit per-root flags, in [`positive_roots`] order. Rejects flag sets
    /// that no angle assignment can produce.
    pub fn from_flags(r: usize, zero_flags: Vec<bool>) -> Result<Self> {
        let roots = positive_roots(r);
        if zero_flags.len() != roots.len() {
            return Err(Error::InconsistentTwists(format!(
                "expected {} flags for rank {r}, got {}",
                roots.len(),
                zero_flags.len()
            )));
        }
        let vanishing: Vec<_> = roots
            .iter()
            .zip(&zero_flags)
            .filter(|(_, &z)| z)
            .map(|(r, _)| *r)
            .collect();
        let closed = Self::from_vanishing(r, &vanishing)?;
        if closed.zero_flags != zero_flags {
            let missing: Vec<String> = roots
                .iter()
                .zip(closed.zero_flags.iter().zip(&zero_flags))
                .filter(|(_, (c, z))| **c && !**z)
                .map(|(root, _)| root.to_string())
                .collect();
            return Err(Error::InconsistentTwists(format!(
                "the vanishing set implies {} must vanish too",
                missing.join(", ")
            )));
        }
        Ok(Self {
            rank: r,
            zero_flags,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn zero_flags(&self) -> &[bool] {
        &self.zero_flags
    }

    pub fn vanishing_roots(&self) -> Vec<PositiveRoot> {
        positive_roots(self.rank)
            .into_iter()
            .zip(&self.zero_flags)
            .filter(|(_, &z)| z)
            .map(|(r, _)| r)
            .collect()
    }
}

/// Partition of the row indices `1..=r+1` into blocks; the preserved
/// subalgebra is `⊕ su(|block|) ⊕ u(1)^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubalgebraDecomposition {
    rank: usize,
    blocks: Vec<Vec<usize>>,
}

impl SubalgebraDecomposition {
    /// Builds a decomposition from explicit blocks (1-based indices).
    pub fn from_blocks(r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; r + 2];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &i in b {
                if i == 0 || i > r + 1 || seen[i] {
                    return Err(Error::Invalid(format!(
                        "blocks do not partition 1..={}",
                        r + 1
                    )));
                }
                seen[i] = true;
            }
        }
        if seen[1..=r + 1].iter().any(|s| !s) {
            return Err(Error::Invalid(format!("blocks do not cover 1..={}", r + 1)));
        }
        blocks.sort();
        Ok(Self { rank: r, blocks })
    }

    /// All rows in one block: the untwisted chain.
    pub fn full(r: usize) -> Self {
        Self {
            rank: r,
            blocks: vec![(1..=r + 1).collect()],
        }
    }

    /// All rows separate: the fully twisted chain.
    pub fn trivial(r: usize) -> Self {
        Self {
            rank: r,
            blocks: (1..=r + 1).map(|i| vec![i]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Blocks sorted by their smallest index; indices inside a block ascend.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&i))
    }

    pub fn preserves(&self, root: &PositiveRoot) -> bool {
        matches!((self.block_of(root.lo), self.block_of(root.hi)), (Some(a), Some(b)) if a == b)
    }

    pub fn preserved_roots(&self) -> Vec<PositiveRoot> {
        positive_roots(self.rank)
            .into_iter()
            .filter(|r| self.preserves(r))
            .collect()
    }

    /// Ranks of the `su` summands (`A_k` for a block of size `k+1`), in block order.
    pub fn simple_summands(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| b.len() >= 2)
            .map(|b| b.len() - 1)
            .collect()
    }

    pub fn u1_count(&self) -> usize {
        self.rank - self.blocks.iter().map(|b| b.len() - 1).sum::<usize>()
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == self.rank + 1
    }

    /// Human-readable type, e.g. `su(2)+su(2)+u(1)` or `u(1)^3`.
    pub fn algebra_label(&self) -> String {
        let mut sizes: Vec<usize> = self.simple_summands().iter().map(|k| k + 1).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<String> = sizes.iter().map(|n| format!("su({n})")).collect();
        match self.u1_count() {
            0 => {}
            1 => parts.push("u(1)".into()),
            k => parts.push(format!("u(1)^{k}")),
        }
        if parts.is_empty() {
            // rank 0
            parts.push("0".into());
        }
        parts.join("+")
    }
}

/// Blocks are the classes of `φ_i = φ_j`, i.e. the rows joined by a root
/// whose total twist vanishes.
pub fn preserved_roots(r: usize, twists: &TwistConfiguration) -> Result<SubalgebraDecomposition> {
    if twists.rank != r {
        return Err(Error::InconsistentTwists(format!(
            "twist pattern is for rank {}, not {r}",
            twists.rank
        )));
    }
    let decomp = decomposition_from_subset(r, &twists.vanishing_roots())?;
    // Constructors keep the flags closed; recheck anyway since the flags are public data.
    for (root, &z) in positive_roots(r).iter().zip(&twists.zero_flags) {
        if decomp.preserves(root) != z {
            return Err(Error::InconsistentTwists(format!(
                "{root} breaks transitivity"
            )));
        }
    }
    Ok(decomp)
}

/// Smallest decomposition whose preserved roots contain `dplus`.
pub fn decomposition_from_subset(
    r: usize,
    dplus: &[PositiveRoot],
) -> Result<SubalgebraDecomposition> {
    let mut parent: Vec<usize> = (0..=r + 1).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for root in dplus {
        root.check_rank(r)?;
        let (a, b) = (find(&mut parent, root.lo), find(&mut parent, root.hi));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut rep_of: Vec<Option<usize>> = vec![None; r + 2];
    for i in 1..=r + 1 {
        let rep = find(&mut parent, i);
        match rep_of[rep] {
            Some(bi) => blocks[bi].push(i),
            None => {
                rep_of[rep] = Some(blocks.len());
                blocks.push(vec![i]);
            }
        }
    }
    Ok(SubalgebraDecomposition { rank: r, blocks })
}

/// Every distinct decomposition generated by some subset `D⁺` of the
/// positive roots, i.e. every set partition of `1..=r+1`, sorted by blocks.
pub fn all_subset_decompositions(r: usize) -> Vec<SubalgebraDecomposition> {
    let roots = positive_roots(r);
    assert!(roots.len() < 32, "rank too large to enumerate root subsets");
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1u32 << roots.len()) {
        let subset: Vec<PositiveRoot> = roots
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, root)| *root)
            .collect();
        let decomp = decomposition_from_subset(r, &subset).expect("roots fit the rank");
        seen.insert(decomp.blocks);
    }
    seen.into_iter()
        .map(|blocks| SubalgebraDecomposition { rank: r, blocks })
        .collect()
}

/// Parses a comma-separated root list such as `a1,a2+a3`.
pub fn parse_root_list(r: usize, spec: &str) -> Result<Vec<PositiveRoot>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let root: PositiveRoot = s.parse()?;
            root.check_rank(r)?;
            Ok(root)
        })
        .collect()
}

/// Reduces a rational angle to `[0, 1)`.
pub fn normalize_angle(a: Ratio<i64>) -> Ratio<i64> {
    let n = a.numer().mod_floor(a.denom());
    Ratio::new(n, *a.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Basis label of `sl(m|n)`: `e_i` (bosonic) or `f_k` (fermionic), 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuperBasis {
    E(usize),
    F(usize),
}

impl fmt::Display for SuperBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperBasis::E(i) => write!(f, "e{i}"),
            SuperBasis::F(k) => write!(f, "f{k}"),
        }
    }
}

/// A positive root `from - to` of `sl(m|n)` with its exponents over the
/// distinguished simple roots, ordered `α_1..α_{m-1}, β_1..β_{n-1}, δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPositiveRoot {
    pub parity: Parity,
    pub from: SuperBasis,
    pub to: SuperBasis,
    pub exponents: ExponentVector,
}

impl fmt::Display for SuperPositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

/// Even roots first (`e_i - e_j`, then `f_k - f_l`), then the odd roots `e_i - f_k`.
pub fn super_positive_roots(m: usize, n: usize) -> Result<Vec<SuperPositiveRoot>> {
    if m == 0 || n == 0 {
        return Err(Error::Invalid(format!("sl({m}|{n}) needs m, n >= 1")));
    }
    let arity = m + n - 1;
    let alpha = |i: usize| i - 1;
    let beta = |l: usize| m - 1 + l - 1;
    let delta = arity - 1;
    let vec_of = |idx: Vec<usize>| {
        let mut e = vec![0u32; arity];
        for i in idx {
            e[i] += 1;
        }
        ExponentVector::new(e)
    };

    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(SuperPositiveRoot {
                parity: Parity::Even,
                from: SuperBasis::E(i),
                to: SuperBasis::E(j),
                exponents: vec_of((i..j).map(alpha).collect()),
            });
        }
    }
    for k in 1..=n {
        for l in k + 1..=n {
            out.push(SuperPositiveRoot {
                parity: Parity::Even,
                from: SuperBasis::F(k),
                to: SuperBasis::F(l),
                exponents: vec_of((k..l).map(beta).collect()),
            });
        }
    }
    for i in 1..=m {
        for k in 1..=n {
            // e_i - f_k = α_i + … + α_{m-1} + δ + β_1 + … + β_{k-1}
            let mut idx: Vec<usize> = (i..m).map(alpha).collect();
            idx.push(delta);
            idx.extend((1..k).map(beta));
            out.push(SuperPositiveRoot {
                parity: Parity::Odd,
                from: SuperBasis::E(i),
                to: SuperBasis::F(k),
                exponents: vec_of(idx),
            });
        }
    }
    Ok(out)
}
