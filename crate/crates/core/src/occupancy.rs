//! Restricted-occupancy coefficients.
//!
//! `c_{s,L}(M)` counts the ways of stacking `r` layers of boxes on an
//! `L × 2s` frame, `M_a` boxes in layer `a`, where every row of a layer holds
//! no more boxes than the same row of the layer below. Its generating
//! function is `h_{2s}(1, x1, x1 x2, …, x1⋯x_r)^L`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::poly::{DegreeBox, ExponentVector, SignedPolynomial};

/// Symmetry algebra of the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// `su(rank + 1)`.
    Su { rank: usize },
    /// `sl(1|1)`: the counting problem is the rank-1 one.
    Sl11,
    /// `sl(1|2)`: the t-J counting problem.
    Sl12,
}

impl Algebra {
    /// Number of magnon charges (formal variables).
    pub fn arity(&self) -> usize {
        match self {
            Algebra::Su { rank } => *rank,
            Algebra::Sl11 => 1,
            Algebra::Sl12 => 2,
        }
    }

    pub fn is_super(&self) -> bool {
        !matches!(self, Algebra::Su { .. })
    }
}

/// A uniform chain of `length` sites, each carrying the spin `twos / 2`
/// symmetric representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinChainSpec {
    pub algebra: Algebra,
    pub twos: u32,
    pub length: u32,
}

impl SpinChainSpec {
    pub fn new(rank: usize, twos: u32, length: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Self::with_algebra(Algebra::Su { rank }, twos, length)
    }

    pub fn with_algebra(algebra: Algebra, twos: u32, length: u32) -> Result<Self> {
        if twos == 0 {
            return Err(Error::Invalid("2s must be at least 1".into()));
        }
        if length == 0 {
            return Err(Error::Invalid("chain length must be at least 1".into()));
        }
        if let Algebra::Su { rank: 0 } = algebra {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Ok(Self {
            algebra,
            twos,
            length,
        })
    }

    pub fn arity(&self) -> usize {
        self.algebra.arity()
    }

    /// Total number of boxes `2sL`.
    pub fn boxes(&self) -> i64 {
        i64::from(self.twos) * i64::from(self.length)
    }

    /// Whether `c(M)` can be nonzero.
    pub fn in_support(&self, m: &[i64]) -> bool {
        if m.len() != self.arity() {
            return false;
        }
        match self.algebra {
            Algebra::Su { .. } | Algebra::Sl11 => {
                m[0] <= self.boxes() && m.windows(2).all(|w| w[0] >= w[1]) && m[m.len() - 1] >= 0
            }
            Algebra::Sl12 => {
                (0..=i64::from(self.length)).contains(&m[0])
                    && m[1] >= 0
                    && m[1] <= i64::from(self.twos) * m[0]
            }
        }
    }

    /// All support points in increasing lexicographic order.
    pub fn support(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        match self.algebra {
            Algebra::Su { rank } => {
                fn rec(prefix: &mut Vec<i64>, upper: i64, depth: usize, out: &mut Vec<Vec<i64>>) {
                    if depth == 0 {
                        out.push(prefix.clone());
                        return;
                    }
                    for v in 0..=upper {
                        prefix.push(v);
                        rec(prefix, v, depth - 1, out);
                        prefix.pop();
                    }
                }
                rec(&mut Vec::with_capacity(rank), self.boxes(), rank, &mut out);
            }
            Algebra::Sl11 => out.extend((0..=self.boxes()).map(|m| vec![m])),
            Algebra::Sl12 => {
                for m1 in 0..=i64::from(self.length) {
                    for m2 in 0..=i64::from(self.twos) * m1 {
                        out.push(vec![m1, m2]);
                    }
                }
            }
        }
        out
    }
}

/// Box counts `n[a][α]`: layer `a` (0-based), row `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccupancyConfig {
    pub counts: Vec<Vec<u32>>,
}

impl OccupancyConfig {
    pub fn is_valid(&self, twos: u32) -> bool {
        let Some(first) = self.counts.first() else {
            return true;
        };
        first.iter().all(|&n| n <= twos)
            && self.counts.windows(2).all(|w| {
                w[0].len() == w[1].len() && w[1].iter().zip(&w[0]).all(|(hi, lo)| hi <= lo)
            })
    }

    pub fn magnons(&self) -> Vec<i64> {
        self.counts
            .iter()
            .map(|layer| layer.iter().map(|&n| i64::from(n)).sum())
            .collect()
    }
}

type PolyCache = RwLock<HashMap<(usize, u32), Arc<SignedPolynomial>>>;

fn site_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `h_{2s}(1, x1, x1 x2, …, x1⋯x_r)`: one monomial `∏ x_a^{n_a}` for every
/// weakly decreasing `2s ≥ n_1 ≥ … ≥ n_r ≥ 0`.
pub fn site_factor(r: usize, twos: u32) -> SignedPolynomial {
    if let Some(p) = site_cache().read().unwrap().get(&(r, twos)) {
        return (**p).clone();
    }
    let mut p = SignedPolynomial::zero(r);
    let mut seq = Vec::with_capacity(r);
    fn rec(seq: &mut Vec<u32>, upper: u32, r: usize, p: &mut SignedPolynomial) {
        if seq.len() == r {
            p.add_term(ExponentVector::new(seq.clone()), BigInt::one());
            return;
        }
        for v in 0..=upper {
            seq.push(v);
            rec(seq, v, r, p);
            seq.pop();
        }
    }
    rec(&mut seq, twos, r, &mut p);
    site_cache()
        .write()
        .unwrap()
        .insert((r, twos), Arc::new(p.clone()));
    p
}

/// Checks that `lambda` is a partition and returns it without trailing zeros.
pub fn validate_partition(lambda: &[i64]) -> Result<Vec<i64>> {
    if lambda.iter().any(|&p| p < 0) || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(lambda.to_vec()));
    }
    let len = lambda.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1);
    Ok(lambda[..len].to_vec())
}

/// `S_λ(1, x1, x1 x2, …, x1⋯x_r)` by the Jacobi–Trudi determinant
/// `det(h_{λ_i - i + j})`, expanded by cofactors over column subsets.
///
/// Partitions with more than `r + 1` parts give zero.
pub fn schur_specialized(lambda: &[i64], r: usize) -> Result<SignedPolynomial> {
    let parts = validate_partition(lambda)?;
    let l = parts.len();
    if l == 0 {
        return Ok(SignedPolynomial::one(r));
    }
    if l > r + 1 {
        return Ok(SignedPolynomial::zero(r));
    }
    let entry = |i: usize, j: usize| -> SignedPolynomial {
        let k = parts[i] - i as i64 + j as i64;
        if k < 0 {
            SignedPolynomial::zero(r)
        } else {
            site_factor(r, k as u32)
        }
    };
    // minors[mask] = det of rows 0..popcount(mask) restricted to the columns in mask
    let mut minors: Vec<Option<SignedPolynomial>> = vec![None; 1 << l];
    minors[0] = Some(SignedPolynomial::one(r));
    for mask in 1usize..(1 << l) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = SignedPolynomial::zero(r);
        for j in 0..l {
            if mask & (1 << j) == 0 {
                continue;
            }
            let rest = minors[mask ^ (1 << j)]
                .as_ref()
                .expect("smaller minors come first");
            if rest.is_zero() {
                continue;
            }
            let a = entry(row, j);
            if a.is_zero() {
                continue;
            }
            let term = a.mul(rest, None)?;
            // sign of moving column j past the larger columns still in the mask
            let larger = (mask >> (j + 1)).count_ones();
            acc = if larger % 2 == 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        minors[mask] = Some(acc);
    }
    Ok(minors.pop().flatten().expect("full minor"))
}

/// Box-truncated generating function of the chain. With `bounds = None` the
/// full polynomial is expanded.
pub fn generating_function(
    spec: &SpinChainSpec,
    bounds: Option<&DegreeBox>,
) -> Result<SignedPolynomial> {
    let base = match spec.algebra {
        Algebra::Su { rank } => site_factor(rank, spec.twos),
        Algebra::Sl11 => site_factor(1, spec.twos),
        Algebra::Sl12 => {
            // c^tJ generating function: (1 + x1 h_{2s}(1, x2))^L
            let h = site_factor(1, spec.twos);
            let mut p = SignedPolynomial::one(2);
            for (e, c) in h.terms() {
                p.add_term(ExponentVector::new(vec![1, e.as_slice()[0]]), c.clone());
            }
            p
        }
    };
    base.pow(spec.length, bounds)
}

/// Coefficients of a generating function read as a function of `M`; any
/// point outside the stored range reads as zero.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    poly: SignedPolynomial,
}

impl CoefficientTable {
    pub fn new(poly: SignedPolynomial) -> Self {
        Self { poly }
    }

    /// Full expansion for `spec`.
    pub fn full(spec: &SpinChainSpec) -> Result<Self> {
        Ok(Self::new(generating_function(spec, None)?))
    }

    /// Expansion truncated to `[0, M]`, enough for every point `M - β`.
    pub fn up_to(spec: &SpinChainSpec, m: &[i64]) -> Result<Self> {
        if m.len() != spec.arity() {
            return Err(Error::ArityMismatch {
                expected: spec.arity(),
                found: m.len(),
            });
        }
        let clamped: Vec<i64> = m.iter().map(|&v| v.max(0)).collect();
        let bounds = DegreeBox::covering(&clamped)?;
        Ok(Self::new(generating_function(spec, Some(&bounds))?))
    }

    pub fn get(&self, m: &[i64]) -> BigInt {
        self.poly.coefficient_at(m)
    }

    pub fn poly(&self) -> &SignedPolynomial {
        &self.poly
    }
}

/// `c_{s,L}(M)`: coefficient of `x^M`, zero outside the support.
pub fn c_coefficient(spec: &SpinChainSpec, m: &[i64]) -> BigInt {
    if !spec.in_support(m) {
        return BigInt::zero();
    }
    if let Algebra::Sl12 = spec.algebra {
        return tj_c(spec.twos, spec.length, m[0], m[1]);
    }
    let bounds = DegreeBox::covering(m).expect("support points are nonnegative");
    generating_function(spec, Some(&bounds))
        .expect("arity matches by construction")
        .coefficient_at(m)
}

/// Hard cap on the unpruned search space of [`brute_force_c`].
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Counts layered configurations by direct enumeration, row by row.
///
/// Independent of the generating function: it walks every weakly decreasing
/// column `2s ≥ n^(1) ≥ … ≥ n^(r)` for each row and keeps those whose layer
/// totals hit `M`. Branches that can no longer reach `M` are cut.
pub fn brute_force_c(spec: &SpinChainSpec, m: &[i64]) -> Result<BigInt> {
    let r = match spec.algebra {
        Algebra::Su { rank } => rank,
        Algebra::Sl11 => 1,
        Algebra::Sl12 => {
            return Err(Error::Invalid(
                "brute force covers the A-type problem only".into(),
            ))
        }
    };
    if m.len() != r {
        return Err(Error::ArityMismatch {
            expected: r,
            found: m.len(),
        });
    }
    let columns = row_choices(r, spec.twos);
    let space = (columns.len() as u128)
        .checked_pow(spec.length)
        .unwrap_or(u128::MAX);
    if space > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            what: "brute-force configurations",
            needed: space,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if m.iter().any(|&v| v < 0) {
        return Ok(BigInt::zero());
    }
    let mut remaining = m.to_vec();
    Ok(BigInt::from(count_rows(
        &columns,
        &mut remaining,
        spec.length,
        spec.twos,
    )))
}

/// Every `c(M)` of the support by full enumeration of all `columns^L`
/// configurations, tallied on a dense grid.
pub fn brute_force_table(spec: &SpinChainSpec) -> Result<BTreeMap<Vec<i64>, BigInt>> {
    let Algebra::Su { rank: r } = spec.algebra else {
        return Err(Error::Invalid(
            "brute force tables cover su(r+1) chains only".into(),
        ));
    };
    let columns = row_choices(r, spec.twos);
    let space = (columns.len() as u128)
        .checked_pow(spec.length)
        .unwrap_or(u128::MAX);
    if space > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            what: "brute-force configurations",
            needed: space,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let base = (spec.boxes() + 1) as usize;
    let cells = base.pow(r as u32);
    let encode = |m: &[i64]| m.iter().fold(0usize, |acc, &v| acc * base + v as usize);

    fn walk(
        columns: &[Vec<i64>],
        sums: &mut [i64],
        rows_left: u32,
        tally: &mut [u64],
        encode: &dyn Fn(&[i64]) -> usize,
    ) {
        if rows_left == 0 {
            tally[encode(sums)] += 1;
            return;
        }
        for col in columns {
            for (s, n) in sums.iter_mut().zip(col) {
                *s += n;
            }
            walk(columns, sums, rows_left - 1, tally, encode);
            for (s, n) in sums.iter_mut().zip(col) {
                *s -= n;
            }
        }
    }

    let tally = columns
        .par_iter()
        .map(|first| {
            let mut tally = vec![0u64; cells];
            let mut sums = first.clone();
            walk(&columns, &mut sums, spec.length - 1, &mut tally, &encode);
            tally
        })
        .reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(spec
        .support()
        .into_iter()
        .map(|m| {
            let c = BigInt::from(tally[encode(&m)]);
            (m, c)
        })
        .collect())
}

/// Every admissible single-row column, top layer last.
fn row_choices(r: usize, twos: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(seq: &mut Vec<i64>, upper: i64, r: usize, out: &mut Vec<Vec<i64>>) {
        if seq.len() == r {
            out.push(seq.clone());
            return;
        }
        for v in 0..=upper {
            seq.push(v);
            rec(seq, v, r, out);
            seq.pop();
        }
    }
    rec(&mut Vec::new(), i64::from(twos), r, &mut out);
    out
}

fn count_rows(columns: &[Vec<i64>], remaining: &mut [i64], rows_left: u32, twos: u32) -> u64 {
    if rows_left == 0 {
        return u64::from(remaining.iter().all(|&v| v == 0));
    }
    let cap = i64::from(rows_left) * i64::from(twos);
    if remaining.iter().any(|&v| v < 0 || v > cap) {
        return 0;
    }
    let mut total = 0;
    for col in columns {
        if col.iter().zip(remaining.iter()).any(|(n, rem)| n > rem) {
            continue;
        }
        for (rem, n) in remaining.iter_mut().zip(col) {
            *rem -= n;
        }
        total += count_rows(columns, remaining, rows_left - 1, twos);
        for (rem, n) in remaining.iter_mut().zip(col) {
            *rem += n;
        }
    }
    total
}

/// Lists the configurations behind `c(M)` (small cases only).
pub fn occupancy_configs(spec: &SpinChainSpec, m: &[i64]) -> Result<Vec<OccupancyConfig>> {
    let count = brute_force_c(spec, m)?;
    let r = m.len();
    let columns = row_choices(r, spec.twos);
    let mut out = Vec::new();
    let mut chosen: Vec<&Vec<i64>> = Vec::new();
    fn rec<'a>(
        columns: &'a [Vec<i64>],
        chosen: &mut Vec<&'a Vec<i64>>,
        rows: usize,
        target: &[i64],
        out: &mut Vec<OccupancyConfig>,
    ) {
        if chosen.len() == rows {
            let sums: Vec<i64> = (0..target.len())
                .map(|a| chosen.iter().map(|c| c[a]).sum())
                .collect();
            if sums == target {
                let counts = (0..target.len())
                    .map(|a| chosen.iter().map(|c| c[a] as u32).collect())
                    .collect();
                out.push(OccupancyConfig { counts });
            }
            return;
        }
        for c in columns {
            chosen.push(c);
            rec(columns, chosen, rows, target, out);
            chosen.pop();
        }
    }
    if !count.is_zero() {
        rec(&columns, &mut chosen, spec.length as usize, m, &mut out);
    }
    Ok(out)
}

/// Chain with one impurity site of spin `twos_impurity / 2`: coefficient of
/// `x^M` in `S_{(2s')} · h_{2s}^L`.
pub fn kondo_c(bulk: &SpinChainSpec, twos_impurity: u32, m: &[i64]) -> Result<BigInt> {
    let Algebra::Su { rank } = bulk.algebra else {
        return Err(Error::Invalid(
            "impurity chains are defined for su(r+1)".into(),
        ));
    };
    let mut diagrams = vec![vec![i64::from(twos_impurity)]];
    diagrams.extend(std::iter::repeat_n(
        vec![i64::from(bulk.twos)],
        bulk.length as usize,
    ));
    mixed_c(&diagrams, rank, m)
}

/// The impurity sum `Σ_i c_{s,L}(M - i)` over `2s' ≥ i_1 ≥ i_2 ≥ … ≥ i_r ≥ 0`,
/// i.e. over the monomials of `S_{(2s')}(1, x1, x1 x2, …)`.
pub fn kondo_c_nested(bulk: &SpinChainSpec, twos_impurity: u32, m: &[i64]) -> Result<BigInt> {
    let Algebra::Su { rank } = bulk.algebra else {
        return Err(Error::Invalid(
            "impurity chains are defined for su(r+1)".into(),
        ));
    };
    if m.len() != rank {
        return Err(Error::ArityMismatch {
            expected: rank,
            found: m.len(),
        });
    }
    if !m.iter().all(|&v| v >= 0) {
        return Ok(BigInt::zero());
    }
    let table = CoefficientTable::up_to(bulk, m)?;
    let mut total = BigInt::zero();
    for shift in row_choices(rank, twos_impurity) {
        let point: Vec<i64> = m.iter().zip(&shift).map(|(a, b)| a - b).collect();
        total += table.get(&point);
    }
    Ok(total)
}

/// Coefficient of `x^M` in `∏_n S_{λ^(n)}(1, x1, …, x1⋯x_r)`.
pub fn mixed_c(diagrams: &[Vec<i64>], r: usize, m: &[i64]) -> Result<BigInt> {
    if m.len() != r {
        return Err(Error::ArityMismatch {
            expected: r,
            found: m.len(),
        });
    }
    if m.iter().any(|&v| v < 0) {
        return Ok(BigInt::zero());
    }
    let bounds = DegreeBox::covering(m)?;
    Ok(mixed_generating_function(diagrams, r, Some(&bounds))?.coefficient_at(m))
}

pub fn mixed_generating_function(
    diagrams: &[Vec<i64>],
    r: usize,
    bounds: Option<&DegreeBox>,
) -> Result<SignedPolynomial> {
    // group equal diagrams so each distinct factor is raised once
    let mut groups: Vec<(Vec<i64>, u32)> = Vec::new();
    for d in diagrams {
        let d = validate_partition(d)?;
        match groups.iter_mut().find(|(g, _)| *g == d) {
            Some((_, n)) => *n += 1,
            None => groups.push((d, 1)),
        }
    }
    let mut acc = SignedPolynomial::one(r);
    for (d, n) in groups {
        let factor = schur_specialized(&d, r)?.pow(n, bounds)?;
        acc = acc.mul(&factor, bounds)?;
    }
    Ok(acc)
}

/// `c^tJ_{s,L}(M1, M2) = C(L, M1) · c_{s,M1}(M2)` with the rank-1 problem on
/// `M1` sites.
pub fn tj_c(twos: u32, length: u32, m1: i64, m2: i64) -> BigInt {
    if m1 < 0 || m2 < 0 || m1 > i64::from(length) {
        return BigInt::zero();
    }
    let inner = if m1 == 0 {
        BigInt::from(u8::from(m2 == 0))
    } else {
        let sub = SpinChainSpec {
            algebra: Algebra::Su { rank: 1 },
            twos,
            length: m1 as u32,
        };
        c_coefficient(&sub, &[m2])
    };
    binomial(i64::from(length), m1) * inner
}

/// `Σ_M c(M)`, i.e. the generating function at `x = 1`.
pub fn total_states(spec: &SpinChainSpec) -> BigInt {
    let per_site = match spec.algebra {
        Algebra::Su { rank } => site_factor(rank, spec.twos).sum_coefficients(),
        Algebra::Sl11 => BigInt::from(spec.twos + 1),
        Algebra::Sl12 => BigInt::from(spec.twos + 2),
    };
    num_traits::pow(per_site, spec.length as usize)
}
