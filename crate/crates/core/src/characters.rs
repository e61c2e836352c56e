//! Weyl denominators, super-denominators, and the shift operators built
//! from them.
//!
//! A polynomial `P = Σ sgn(β) t^β` acts on a coefficient function by
//! `D_P f(M) = Σ sgn(β) f(M - β)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{DegreeBox, ExponentVector, SignedPolynomial};
use crate::rootsys::{super_positive_roots, Parity, PositiveRoot, SubalgebraDecomposition};

/// Reciprocal of a Verma character.
///
/// For `su(r+1)` and its subalgebras this is the finite product
/// `∏ (1 - t^α)`. For superalgebras it is a power series, stored truncated
/// to `bounds`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterInverse {
    poly: SignedPolynomial,
    bounds: Option<DegreeBox>,
}

impl CharacterInverse {
    pub fn polynomial(poly: SignedPolynomial) -> Self {
        Self { poly, bounds: None }
    }

    pub fn poly(&self) -> &SignedPolynomial {
        &self.poly
    }

    pub fn arity(&self) -> usize {
        self.poly.arity()
    }

    /// `Some` for a truncated series.
    pub fn bounds(&self) -> Option<&DegreeBox> {
        self.bounds.as_ref()
    }

    pub fn stencil(&self) -> ShiftStencil {
        ShiftStencil {
            entries: self
                .poly
                .terms()
                .map(|(e, c)| (e.as_slice().to_vec(), c.clone()))
                .collect(),
        }
    }
}

/// Offsets `β` and weights `sgn(β)` in canonical term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftStencil {
    pub entries: Vec<(Vec<u32>, BigInt)>,
}

impl ShiftStencil {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ w · f(M - β)`.
    pub fn apply<F>(&self, f: F, m: &[i64]) -> BigInt
    where
        F: Fn(&[i64]) -> BigInt,
    {
        let mut point = vec![0i64; m.len()];
        let mut total = BigInt::zero();
        for (beta, w) in &self.entries {
            for ((p, &mi), &b) in point.iter_mut().zip(m).zip(beta) {
                *p = mi - i64::from(b);
            }
            let v = f(&point);
            if !v.is_zero() {
                total += w * v;
            }
        }
        total
    }

    /// Signed difference formula, e.g. `c(M1,M2) - c(M1-1,M2) - c(M1,M2-1) + …`.
    pub fn render(&self, symbol: &str) -> String {
        let mut out = String::new();
        for (i, (beta, w)) in self.entries.iter().enumerate() {
            let args: Vec<String> = beta
                .iter()
                .enumerate()
                .map(|(v, &b)| match b {
                    0 => format!("M{}", v + 1),
                    _ => format!("M{}-{b}", v + 1),
                })
                .collect();
            let mag = w.abs();
            let sign = match (i, w.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sign);
            if mag != BigInt::from(1) {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("{symbol}({})", args.join(",")));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

type DenominatorCache = RwLock<HashMap<(usize, Vec<(usize, usize)>), Arc<SignedPolynomial>>>;

fn denominator_cache() -> &'static DenominatorCache {
    static CACHE: OnceLock<DenominatorCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `∏_{α ∈ roots} (1 - t^α)` over `arity` simple-root variables.
pub fn verma_inverse(roots: &[PositiveRoot], arity: usize) -> Result<CharacterInverse> {
    let mut key: Vec<(usize, usize)> = roots.iter().map(|r| (r.lo(), r.hi())).collect();
    key.sort_unstable();
    key.dedup();
    if let Some(p) = denominator_cache()
        .read()
        .unwrap()
        .get(&(arity, key.clone()))
    {
        return Ok(CharacterInverse::polynomial((**p).clone()));
    }
    let mut acc = SignedPolynomial::one(arity);
    for &(lo, hi) in &key {
        let root = PositiveRoot::new(lo, hi)?;
        if !root.fits_rank(arity) {
            return Err(Error::InvalidRoot(format!(
                "{root} does not fit {arity} variables"
            )));
        }
        acc = acc.mul(&SignedPolynomial::one_minus(root.exponents(arity)), None)?;
    }
    denominator_cache()
        .write()
        .unwrap()
        .insert((arity, key), Arc::new(acc.clone()));
    Ok(CharacterInverse::polynomial(acc))
}

/// Denominator restricted to the roots the decomposition preserves.
pub fn partial_inverse(decomp: &SubalgebraDecomposition, arity: usize) -> Result<CharacterInverse> {
    if decomp.rank() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: decomp.rank(),
        });
    }
    verma_inverse(&decomp.preserved_roots(), arity)
}

/// `∏_{even} (1 - t^α) / ∏_{odd} (1 + t^α)` expanded inside `bounds`.
pub fn super_inverse(m: usize, n: usize, bounds: &DegreeBox) -> Result<CharacterInverse> {
    let roots = super_positive_roots(m, n)?;
    let arity = m + n - 1;
    if bounds.arity() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: bounds.arity(),
        });
    }
    let mut even = SignedPolynomial::one(arity);
    let mut odd = SignedPolynomial::one(arity);
    for root in &roots {
        match root.parity {
            Parity::Even => {
                even = even.mul(
                    &SignedPolynomial::one_minus(root.exponents.clone()),
                    Some(bounds),
                )?
            }
            Parity::Odd => {
                odd = odd.mul(
                    &SignedPolynomial::one_plus(root.exponents.clone()),
                    Some(bounds),
                )?
            }
        }
    }
    let poly = even.mul(&odd.series_reciprocal(bounds)?, Some(bounds))?;
    Ok(CharacterInverse {
        poly,
        bounds: Some(bounds.clone()),
    })
}

/// `∏_{odd} (1 + t^α) / ∏_{even} (1 - t^α)` expanded inside `bounds`.
pub fn super_character(m: usize, n: usize, bounds: &DegreeBox) -> Result<SignedPolynomial> {
    let roots = super_positive_roots(m, n)?;
    let arity = m + n - 1;
    let mut even = SignedPolynomial::one(arity);
    let mut odd = SignedPolynomial::one(arity);
    for root in &roots {
        match root.parity {
            Parity::Even => {
                even = even.mul(
                    &SignedPolynomial::one_minus(root.exponents.clone()),
                    Some(bounds),
                )?
            }
            Parity::Odd => {
                odd = odd.mul(
                    &SignedPolynomial::one_plus(root.exponents.clone()),
                    Some(bounds),
                )?
            }
        }
    }
    odd.mul(&even.series_reciprocal(bounds)?, Some(bounds))
}

/// `D_inv f(M)`.
///
/// A truncated series only carries the offsets inside its box, so the box
/// must reach `M`; `f` is assumed to vanish at points with a negative entry.
pub fn apply_shift<F>(inv: &CharacterInverse, f: F, m: &[i64]) -> Result<BigInt>
where
    F: Fn(&[i64]) -> BigInt,
{
    if m.len() != inv.arity() {
        return Err(Error::ArityMismatch {
            expected: inv.arity(),
            found: m.len(),
        });
    }
    if let Some(b) = &inv.bounds {
        let clamped: Vec<i64> = m.iter().map(|&v| v.max(0)).collect();
        if !b.covers(&clamped) {
            return Err(Error::BoxTooSmall {
                box_bounds: b.bounds().to_vec(),
                point: m.to_vec(),
            });
        }
    }
    Ok(inv.stencil().apply(f, m))
}

/// Unit vector helper for tests and callers building stencils by hand.
pub fn one_minus_var(arity: usize, var: usize) -> CharacterInverse {
    CharacterInverse::polynomial(SignedPolynomial::one_minus(ExponentVector::unit(
        arity, var,
    )))
}
