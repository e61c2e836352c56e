//! Character peeling: an independent route to the untwisted multiplicities.
//!
//! The weight multiplicities of the tensor power are the coefficients `c(M)`.
//! Visiting charges in increasing lexicographic order (decreasing `λ`), the
//! residual at a valid highest weight is its multiplicity; the weight table
//! of that irreducible, `S_λ(1, x1, …)`, is then subtracted. Nothing here
//! uses the Weyl denominator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::multiplicity::su_rank;
use super::young::young_from_magnons;
use crate::error::{Error, Result};
use crate::occupancy::{schur_specialized, CoefficientTable, SpinChainSpec};

/// Largest support the oracle will peel.
pub const ORACLE_SUPPORT_LIMIT: u128 = 20_000;

/// Multiplicity of every highest weight in the support, keyed by `M`.
pub fn mu_oracle_table(spec: &SpinChainSpec) -> Result<BTreeMap<Vec<i64>, BigInt>> {
    let r = su_rank(spec)?;
    let support = spec.support();
    if support.len() as u128 > ORACLE_SUPPORT_LIMIT {
        return Err(Error::SizeGuard {
            what: "character-peeling support",
            needed: support.len() as u128,
            limit: ORACLE_SUPPORT_LIMIT,
        });
    }
    let table = CoefficientTable::full(spec)?;
    let mut residual: BTreeMap<Vec<i64>, BigInt> =
        support.iter().map(|m| (m.clone(), table.get(m))).collect();
    let mut out = BTreeMap::new();

    // `support` is already in increasing lexicographic order
    for m in &support {
        let here = residual.get(m).cloned().unwrap_or_default();
        if here.is_negative() {
            return Err(Error::NegativeMultiplicity {
                magnons: m.clone(),
                value: here.to_string(),
            });
        }
        match young_from_magnons(spec, m) {
            Some(lam) => {
                if !here.is_zero() {
                    let weights = schur_specialized(lam.rows(), r)?;
                    for (e, c) in weights.terms() {
                        let key: Vec<i64> = e.as_slice().iter().map(|&x| i64::from(x)).collect();
                        let slot = residual.entry(key).or_default();
                        *slot -= c * &here;
                    }
                }
                out.insert(m.clone(), here);
            }
            None => {
                if !here.is_zero() {
                    return Err(Error::PeelingResidual {
                        magnons: m.clone(),
                        value: here.to_string(),
                    });
                }
            }
        }
    }
    if let Some((m, v)) = residual.iter().find(|(_, v)| !v.is_zero()) {
        return Err(Error::PeelingResidual {
            magnons: m.clone(),
            value: v.to_string(),
        });
    }
    Ok(out)
}

/// Multiplicity at one charge vector by peeling the whole table.
pub fn mu_oracle(spec: &SpinChainSpec, m: &[i64]) -> Result<BigInt> {
    let table = mu_oracle_table(spec)?;
    Ok(table.get(m).cloned().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::mu_untwisted;

    #[test]
    fn su3_two_spin_one() {
        let s = SpinChainSpec::new(2, 2, 2).unwrap();
        let table = mu_oracle_table(&s).unwrap();
        let nonzero: Vec<_> = table
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (m.clone(), v.clone()))
            .collect();
        assert_eq!(
            nonzero,
            vec![
                (vec![0, 0], BigInt::from(1)),
                (vec![1, 0], BigInt::from(1)),
                (vec![2, 0], BigInt::from(1))
            ]
        );
    }

    #[test]
    fn su2_worked_example() {
        let s = SpinChainSpec::new(1, 1, 4).unwrap();
        assert_eq!(mu_oracle(&s, &[2]).unwrap(), BigInt::from(2));
    }

    #[test]
    fn agrees_with_stencil_spin_one() {
        let s = SpinChainSpec::new(1, 2, 3).unwrap();
        for m in s.support() {
            assert_eq!(
                mu_oracle(&s, &m).unwrap(),
                mu_untwisted(&s, &m).unwrap(),
                "M = {m:?}"
            );
        }
    }

    #[test]
    fn guard() {
        let s = SpinChainSpec::new(4, 3, 12).unwrap();
        assert!(matches!(mu_oracle_table(&s), Err(Error::SizeGuard { .. })));
    }
}
