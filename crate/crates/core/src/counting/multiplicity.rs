//! Multiplicities and branching coefficients from the shift operator of the
//! (partial) Weyl denominator.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::young::{branch_label, young_from_magnons, young_from_total};
use crate::characters::{apply_shift, partial_inverse, verma_inverse, CharacterInverse};
use crate::error::{Error, Result};
use crate::occupancy::{mixed_generating_function, Algebra, CoefficientTable, SpinChainSpec};
use crate::poly::DegreeBox;
use crate::rootsys::{positive_roots, SubalgebraDecomposition};

pub(crate) fn su_rank(spec: &SpinChainSpec) -> Result<usize> {
    match spec.algebra {
        Algebra::Su { rank } => Ok(rank),
        _ => Err(Error::Invalid(
            "this operation needs an su(r+1) chain".into(),
        )),
    }
}

fn check_arity(expected: usize, m: &[i64]) -> Result<()> {
    if m.len() == expected {
        Ok(())
    } else {
        Err(Error::ArityMismatch {
            expected,
            found: m.len(),
        })
    }
}

pub(crate) fn nonnegative(m: &[i64], value: BigInt) -> Result<BigInt> {
    if value.is_negative() {
        Err(Error::NegativeMultiplicity {
            magnons: m.to_vec(),
            value: value.to_string(),
        })
    } else {
        Ok(value)
    }
}

/// Stencil applied to a precomputed coefficient table; `valid = false`
/// short-circuits to zero.
pub(crate) fn shifted(
    table: &CoefficientTable,
    inv: &CharacterInverse,
    m: &[i64],
    valid: bool,
) -> Result<BigInt> {
    if !valid {
        return Ok(BigInt::zero());
    }
    let v = apply_shift(inv, |p| table.get(p), m)?;
    nonnegative(m, v)
}

/// Number of highest-weight states with charges `M` in the untwisted chain.
pub fn mu_untwisted(spec: &SpinChainSpec, m: &[i64]) -> Result<BigInt> {
    let r = su_rank(spec)?;
    check_arity(r, m)?;
    if young_from_magnons(spec, m).is_none() || !spec.in_support(m) {
        return Ok(BigInt::zero());
    }
    let table = CoefficientTable::up_to(spec, m)?;
    let inv = verma_inverse(&positive_roots(r), r)?;
    shifted(&table, &inv, m, true)
}

/// Branching coefficient for the subalgebra kept by `decomp`.
pub fn mu_partial(
    spec: &SpinChainSpec,
    m: &[i64],
    decomp: &SubalgebraDecomposition,
) -> Result<BigInt> {
    let r = su_rank(spec)?;
    check_arity(r, m)?;
    if decomp.rank() != r {
        return Err(Error::ArityMismatch {
            expected: r,
            found: decomp.rank(),
        });
    }
    if branch_label(spec, m, decomp).is_none() || !spec.in_support(m) {
        return Ok(BigInt::zero());
    }
    let table = CoefficientTable::up_to(spec, m)?;
    let inv = partial_inverse(decomp, r)?;
    shifted(&table, &inv, m, true)
}

/// Multiplicity in a chain whose sites carry the given diagrams, using the
/// untwisted stencil on the product of site characters. Not proven in
/// general; nonnegativity and completeness are checked in tests.
pub fn mu_mixed(diagrams: &[Vec<i64>], r: usize, m: &[i64]) -> Result<BigInt> {
    check_arity(r, m)?;
    let total: i64 = diagrams.iter().map(|d| d.iter().sum::<i64>()).sum();
    if young_from_total(total, m).is_none() {
        return Ok(BigInt::zero());
    }
    let bounds = DegreeBox::covering(m)?;
    let table = CoefficientTable::new(mixed_generating_function(diagrams, r, Some(&bounds))?);
    let inv = verma_inverse(&positive_roots(r), r)?;
    shifted(&table, &inv, m, true)
}
