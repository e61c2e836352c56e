//! Young diagrams attached to magnon charges, branched labels, and the
//! dimension and hook-length formulas.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::occupancy::SpinChainSpec;
use crate::rootsys::SubalgebraDecomposition;

/// Weakly decreasing, nonnegative rows. Zero rows are kept: the row count
/// fixes the algebra `su(rows)` the diagram labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct YoungDiagram(Vec<i64>);

impl YoungDiagram {
    pub fn new(rows: Vec<i64>) -> Result<Self> {
        if is_partition(&rows) {
            Ok(Self(rows))
        } else {
            Err(Error::InvalidPartition(rows))
        }
    }

    pub fn rows(&self) -> &[i64] {
        &self.0
    }

    pub fn row_count(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Dynkin labels `λ_i - λ_{i+1}`.
    pub fn dynkin_labels(&self) -> Vec<i64> {
        self.0.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn is_partition(rows: &[i64]) -> bool {
    rows.iter().all(|&p| p >= 0) && rows.windows(2).all(|w| w[0] >= w[1])
}

/// Raw rows `(N - M1, M1 - M2, …, M_{r-1} - M_r, M_r)` for `N` boxes, before
/// any validity check.
pub fn rows_from_magnons(total: i64, m: &[i64]) -> Vec<i64> {
    let mut rows = Vec::with_capacity(m.len() + 1);
    let mut prev = total;
    for &v in m {
        rows.push(prev - v);
        prev = v;
    }
    rows.push(prev);
    rows
}

/// `λ = (2sL - M1, M1 - M2, …, M_r)`, or `None` when that is not a
/// partition (the charges violate the highest-weight condition).
pub fn young_from_magnons(spec: &SpinChainSpec, m: &[i64]) -> Option<YoungDiagram> {
    if m.len() != spec.arity() {
        return None;
    }
    young_from_total(spec.boxes(), m)
}

pub fn young_from_total(total: i64, m: &[i64]) -> Option<YoungDiagram> {
    let rows = rows_from_magnons(total, m);
    is_partition(&rows).then_some(YoungDiagram(rows))
}

/// Rows of `λ` grouped by the blocks of a decomposition, block order kept;
/// singleton blocks become one-row `u(1)` labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchedLabel(Vec<YoungDiagram>);

impl BranchedLabel {
    pub fn components(&self) -> &[YoungDiagram] {
        &self.0
    }

    /// One-row components, i.e. the `u(1)` labels.
    pub fn u1_rows(&self) -> Vec<i64> {
        self.0
            .iter()
            .filter(|c| c.row_count() == 1)
            .map(|c| c.0[0])
            .collect()
    }

    /// Multi-row components only, the representation of the `su` summands.
    pub fn nonabelian(&self) -> Vec<&YoungDiagram> {
        self.0.iter().filter(|c| c.row_count() > 1).collect()
    }
}

impl fmt::Display for BranchedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Groups raw rows by block; `None` if some block is not weakly decreasing
/// or a row is negative.
pub fn branch_rows(rows: &[i64], decomp: &SubalgebraDecomposition) -> Option<BranchedLabel> {
    if rows.len() != decomp.rank() + 1 {
        return None;
    }
    decomp
        .blocks()
        .iter()
        .map(|block| {
            let comp: Vec<i64> = block.iter().map(|&i| rows[i - 1]).collect();
            is_partition(&comp).then_some(YoungDiagram(comp))
        })
        .collect::<Option<Vec<_>>>()
        .map(BranchedLabel)
}

pub fn branch_label(
    spec: &SpinChainSpec,
    m: &[i64],
    decomp: &SubalgebraDecomposition,
) -> Option<BranchedLabel> {
    if m.len() != spec.arity() {
        return None;
    }
    branch_rows(&rows_from_magnons(spec.boxes(), m), decomp)
}

/// `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)` for `su(r+1)`; shorter diagrams
/// are padded with zero rows, longer ones (nonzero beyond row `r+1`) give 0.
pub fn dim_irrep(lam: &YoungDiagram, r: usize) -> BigInt {
    let n = r + 1;
    if lam.0.iter().skip(n).any(|&p| p != 0) {
        return BigInt::zero();
    }
    let mut rows = lam.0.clone();
    rows.resize(n, 0);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= rows[i] - rows[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q
}

/// Product of the component dimensions; one-row components count 1.
pub fn dim_branched(label: &BranchedLabel) -> BigInt {
    label
        .0
        .iter()
        .map(|c| dim_irrep(c, c.row_count() - 1))
        .product()
}

/// Standard-tableau count `|λ|! / ∏ h_i! · ∏_{i<j} (h_i - h_j)` with
/// `h_i = λ_i + n - i` over the `n` rows of the diagram.
pub fn hook_length_mu(lam: &YoungDiagram) -> BigInt {
    let n = lam.row_count();
    let hooks: Vec<i64> = lam
        .0
        .iter()
        .enumerate()
        .map(|(i, &l)| l + (n - 1 - i) as i64)
        .collect();
    let mut num = factorial(lam.size() as u64);
    for i in 0..n {
        for j in i + 1..n {
            num *= hooks[i] - hooks[j];
        }
    }
    let den: BigInt = hooks.iter().map(|&h| factorial(h as u64)).product();
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q
}
