//! `sl(1|1)` and `sl(1|2)` chains.
//!
//! The super-denominator is a power series; it is expanded only inside the
//! box `[0, M]`, which is exact because the coefficient functions vanish at
//! negative charges.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::multiplicity::shifted;
use super::CompletenessReport;
use crate::characters::super_inverse;
use crate::error::{Error, Result};
use crate::occupancy::{total_states, Algebra, CoefficientTable, SpinChainSpec};
use crate::poly::DegreeBox;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuperKind {
    Sl11,
    Sl12,
}

impl SuperKind {
    pub fn algebra(self) -> Algebra {
        match self {
            SuperKind::Sl11 => Algebra::Sl11,
            SuperKind::Sl12 => Algebra::Sl12,
        }
    }

    /// `(m, n)` of `sl(m|n)`.
    pub fn shape(self) -> (usize, usize) {
        match self {
            SuperKind::Sl11 => (1, 1),
            SuperKind::Sl12 => (1, 2),
        }
    }

    pub fn arity(self) -> usize {
        self.algebra().arity()
    }
}

impl fmt::Display for SuperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = self.shape();
        write!(f, "sl({m}|{n})")
    }
}

impl FromStr for SuperKind {
    type Err = Error;

    /// Accepts `1,1` / `1|1` / `sl(1|1)` and likewise for `1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        match cleaned.as_str() {
            "11" => Ok(SuperKind::Sl11),
            "12" => Ok(SuperKind::Sl12),
            _ => Err(Error::Invalid(format!(
                "unsupported superalgebra {s:?}; only sl(1|1) and sl(1|2) are available"
            ))),
        }
    }
}

/// Whether `M` labels a highest weight.
///
/// `sl(1|1)`: any charge in `0..=2sL`. `sl(1|2)`: `M = (0,0)`, or the hook
/// `(L - M1, M1 - M2, 1^M2)` with `M1 > M2` and `L - 2 M1 + M2 >= 0`.
pub fn super_weight_valid(kind: SuperKind, twos: u32, length: u32, m: &[i64]) -> bool {
    match kind {
        SuperKind::Sl11 => {
            m.len() == 1 && (0..=i64::from(twos) * i64::from(length)).contains(&m[0])
        }
        SuperKind::Sl12 => {
            if m.len() != 2 {
                return false;
            }
            let (m1, m2) = (m[0], m[1]);
            (m1 == 0 && m2 == 0) || (m2 >= 0 && m1 > m2 && i64::from(length) - 2 * m1 + m2 >= 0)
        }
    }
}

fn super_spec(kind: SuperKind, twos: u32, length: u32) -> Result<SpinChainSpec> {
    SpinChainSpec::with_algebra(kind.algebra(), twos, length)
}

/// Multiplicity from the super-denominator stencil: the rank-1 `c` for
/// `sl(1|1)`, `c^tJ` for `sl(1|2)`.
pub fn mu_super(kind: SuperKind, twos: u32, length: u32, m: &[i64]) -> Result<BigInt> {
    let spec = super_spec(kind, twos, length)?;
    if m.len() != kind.arity() {
        return Err(Error::ArityMismatch {
            expected: kind.arity(),
            found: m.len(),
        });
    }
    if !super_weight_valid(kind, twos, length, m) {
        return Ok(BigInt::zero());
    }
    let bounds = DegreeBox::covering(m)?;
    let (a, b) = kind.shape();
    let inv = super_inverse(a, b, &bounds)?;
    let table = CoefficientTable::up_to(&spec, m)?;
    shifted(&table, &inv, m, true)
}

/// Dimension of the irreducible module with charges `M`.
pub fn dim_super(kind: SuperKind, length: u32, m: &[i64]) -> BigInt {
    match kind {
        SuperKind::Sl11 => BigInt::from(2),
        SuperKind::Sl12 => {
            if m[0] == 0 && m[1] == 0 {
                BigInt::from(2 * i64::from(length) + 1)
            } else {
                BigInt::from(4 * (i64::from(length) - 2 * m[0] + m[1] + 1))
            }
        }
    }
}

/// Charges summed over by [`super_completeness`].
pub fn super_weights(kind: SuperKind, twos: u32, length: u32) -> Vec<Vec<i64>> {
    match kind {
        // modules with M = 0..L-1
        SuperKind::Sl11 => (0..i64::from(length)).map(|m| vec![m]).collect(),
        SuperKind::Sl12 => {
            let spec = SpinChainSpec {
                algebra: Algebra::Sl12,
                twos,
                length,
            };
            spec.support()
                .into_iter()
                .filter(|m| super_weight_valid(kind, twos, length, m))
                .collect()
        }
    }
}

/// `Σ μ · dim` against the Hilbert-space dimension. Only `2s = 1` is a
/// proven identity; other spins are reported as experimental.
pub fn super_completeness(kind: SuperKind, twos: u32, length: u32) -> Result<CompletenessReport> {
    let spec = super_spec(kind, twos, length)?;
    let target = total_states(&spec);
    let experimental = twos != 1;
    let mut sum = BigInt::zero();
    let weights = super_weights(kind, twos, length);
    let full = CoefficientTable::full(&spec)?;
    let (a, b) = kind.shape();
    // one series covering every weight; entries beyond a smaller M are never read
    let max: Vec<i64> = (0..kind.arity())
        .map(|i| weights.iter().map(|w| w[i]).max().unwrap_or(0))
        .collect();
    let inv = super_inverse(a, b, &DegreeBox::covering(&max)?)?;
    for m in &weights {
        match shifted(&full, &inv, m, true) {
            Ok(mu) => sum += mu * dim_super(kind, length, m),
            Err(e @ Error::NegativeMultiplicity { .. }) if experimental => {
                return Ok(CompletenessReport {
                    sum,
                    target,
                    pass: false,
                    terms: weights.len(),
                    experimental,
                    note: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CompletenessReport::new(
        sum,
        target,
        weights.len(),
        experimental,
    ))
}
