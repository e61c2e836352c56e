//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, plus box-truncated power series arithmetic.
//!
//! Terms are kept in a `BTreeMap` keyed by [`ExponentVector`], whose order is
//! graded lexicographic: lower total degree first, and within one degree the
//! lexicographically larger exponent first. With that order `(1-t1)(1-t2)`
//! iterates as `1, -t1, -t2, t1 t2`, which is also the order used when
//! rendering stencils and serializing polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative exponents of a monomial, one entry per formal variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn zero(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    /// Unit vector `t_var`.
    pub fn unit(arity: usize, var: usize) -> Self {
        let mut e = vec![0; arity];
        e[var] = 1;
        Self(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// Componentwise upper bound on exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeBox(Vec<u32>);

impl DegreeBox {
    pub fn new(bounds: Vec<u32>) -> Self {
        Self(bounds)
    }

    /// The box `[0, M]`. Fails if any entry of `point` is negative.
    pub fn covering(point: &[i64]) -> Result<Self> {
        point
            .iter()
            .map(|&m| {
                u32::try_from(m)
                    .map_err(|_| Error::Invalid(format!("negative box bound in {point:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, e: &ExponentVector) -> bool {
        e.0.iter().zip(&self.0).all(|(x, b)| x <= b)
    }

    /// True when the nonnegative integer point lies inside the box.
    pub fn covers(&self, point: &[i64]) -> bool {
        point.len() == self.0.len()
            && point
                .iter()
                .zip(&self.0)
                .all(|(&m, &b)| m >= 0 && m <= i64::from(b))
    }

    fn total(&self) -> u64 {
        self.0.iter().map(|&b| u64::from(b)).sum()
    }
}

/// Sparse polynomial over the integers in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPolynomial {
    arity: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ArityMismatch { expected, found })
    }
}

impl SignedPolynomial {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(ExponentVector::zero(arity), BigInt::one())
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(arity), c.into())
    }

    pub fn monomial(exps: ExponentVector, coeff: BigInt) -> Self {
        let arity = exps.arity();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { arity, terms }
    }

    /// `1 - t^e`.
    pub fn one_minus(exps: ExponentVector) -> Self {
        let arity = exps.arity();
        let mut p = Self::one(arity);
        p.add_term(exps, -BigInt::one());
        p
    }

    /// `1 + t^e`.
    pub fn one_plus(exps: ExponentVector) -> Self {
        let arity = exps.arity();
        let mut p = Self::one(arity);
        p.add_term(exps, BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed and zero results dropped.
    pub fn from_terms<I, C>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            check_arity(arity, e.len())?;
            p.add_term(ExponentVector(e), c.into());
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, exps: ExponentVector, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        assert_eq!(
            e.arity(),
            self.arity,
            "exponent arity does not match polynomial"
        );
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Coefficient at an arbitrary integer point; negative or oversized
    /// entries simply have no term and give zero.
    pub fn coefficient_at(&self, point: &[i64]) -> BigInt {
        if point.len() != self.arity {
            return BigInt::zero();
        }
        let mut exps = Vec::with_capacity(point.len());
        for &m in point {
            match u32::try_from(m) {
                Ok(e) => exps.push(e),
                Err(_) => return BigInt::zero(),
            }
        }
        self.terms
            .get(&ExponentVector(exps))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&ExponentVector::zero(self.arity))
    }

    /// Value at `t_i = 1` for all `i`, i.e. the sum of coefficients.
    pub fn sum_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_arity(self.arity, other.arity)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Drops every term outside the box.
    pub fn truncate(&self, bounds: &DegreeBox) -> Result<Self> {
        check_arity(self.arity, bounds.arity())?;
        Ok(Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| bounds.contains(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Product, discarding terms outside `bounds` when one is given.
    ///
    /// Exponents only grow under multiplication, so operands are pre-filtered
    /// to the box as well.
    pub fn mul(&self, other: &Self, bounds: Option<&DegreeBox>) -> Result<Self> {
        check_arity(self.arity, other.arity)?;
        if let Some(b) = bounds {
            check_arity(self.arity, b.arity())?;
        }
        let keep = |e: &ExponentVector| bounds.is_none_or(|b| b.contains(e));
        let lhs: Vec<_> = self.terms.iter().filter(|(e, _)| keep(e)).collect();
        let rhs: Vec<_> = other.terms.iter().filter(|(e, _)| keep(e)).collect();

        let mut acc: HashMap<ExponentVector, BigInt> =
            HashMap::with_capacity(lhs.len().max(rhs.len()));
        for (ea, ca) in &lhs {
            for (eb, cb) in &rhs {
                let e = ea.add(eb);
                if !keep(&e) {
                    continue;
                }
                let prod = *ca * *cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        Ok(Self {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// `self^k` by repeated squaring, truncating after every product.
    pub fn pow(&self, k: u32, bounds: Option<&DegreeBox>) -> Result<Self> {
        if let Some(b) = bounds {
            check_arity(self.arity, b.arity())?;
        }
        let mut result = Self::one(self.arity);
        if let Some(b) = bounds {
            result = result.truncate(b)?;
        }
        if k == 0 {
            return Ok(result);
        }
        let mut base = match bounds {
            Some(b) => self.truncate(b)?,
            None => self.clone(),
        };
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = result.mul(&base, bounds)?;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base, bounds)?;
        }
        Ok(result)
    }

    /// Power series inverse inside `bounds`.
    ///
    /// Writing `self = c0 - q` with `c0 = ±1` and `q` free of a constant
    /// term, the inverse is the fixed point of `p = c0 (1 + q p)`. Each pass
    /// fixes one more total degree, so at most `sum(bounds) + 1` passes run.
    pub fn series_reciprocal(&self, bounds: &DegreeBox) -> Result<Self> {
        check_arity(self.arity, bounds.arity())?;
        let c0 = self.constant_term();
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let unit = Self::constant(self.arity, c0.clone());
        let q = unit.sub(self)?.truncate(bounds)?;
        let mut p = unit.truncate(bounds)?;
        for _ in 0..=bounds.total() {
            let next = Self::one(self.arity)
                .add(&q.mul(&p, Some(bounds))?)?
                .scale(&c0);
            if next == p {
                break;
            }
            p = next;
        }
        Ok(p)
    }

    /// JSON term list in canonical order, coefficients as decimal strings.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(e, c)| JsonTerm {
                exponents: e.0.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(arity: usize, terms: &[JsonTerm]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| {
                t.coeff
                    .parse::<BigInt>()
                    .map(|c| (t.exponents.clone(), c))
                    .map_err(|_| Error::Invalid(format!("bad coefficient {:?}", t.coeff)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(arity, parsed)
    }
}

/// One entry of the serialized term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl fmt::Display for SignedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(v, &x)| {
                        if x == 1 {
                            format!("t{}", v + 1)
                        } else {
                            format!("t{}^{}", v + 1, x)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
