//! Multiplicities, branching coefficients, and completeness.

mod multiplicity;
mod oracle;
mod superalg;
mod young;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::characters::{partial_inverse, super_inverse, verma_inverse};
use crate::error::{Error, Result};
use crate::occupancy::{
    mixed_generating_function, total_states, Algebra, CoefficientTable, SpinChainSpec,
};
use crate::poly::DegreeBox;
use crate::rootsys::{positive_roots, SubalgebraDecomposition};

pub use multiplicity::{mu_mixed, mu_partial, mu_untwisted};
pub use oracle::{mu_oracle, mu_oracle_table, ORACLE_SUPPORT_LIMIT};
pub use superalg::{
    dim_super, mu_super, super_completeness, super_weight_valid, super_weights, SuperKind,
};
pub use young::{
    branch_label, branch_rows, dim_branched, dim_irrep, hook_length_mu, rows_from_magnons,
    young_from_magnons, young_from_total, BranchedLabel, YoungDiagram,
};

use multiplicity::{shifted, su_rank};

/// Outcome of a `Σ μ · dim` check. A failed check is data, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub sum: BigInt,
    pub target: BigInt,
    pub pass: bool,
    /// Number of labels summed over.
    pub terms: usize,
    /// Set when the identity is not established for these parameters.
    pub experimental: bool,
    pub note: Option<String>,
}

impl CompletenessReport {
    pub fn new(sum: BigInt, target: BigInt, terms: usize, experimental: bool) -> Self {
        let pass = sum == target;
        Self {
            sum,
            target,
            pass,
            terms,
            experimental,
            note: None,
        }
    }
}

/// One row of a multiplicity table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub m: Vec<i64>,
    pub label: BranchedLabel,
    pub mu: BigInt,
    pub dim: BigInt,
}

/// Largest support a full table may enumerate.
pub const TABLE_SUPPORT_LIMIT: u128 = 2_000_000;

/// Number of points in `spec.support()`, without building it.
pub fn support_size(spec: &SpinChainSpec) -> u128 {
    let boxes = spec.boxes() as u128;
    match spec.algebra {
        Algebra::Su { rank } => {
            // C(2sL + r, r)
            let mut acc: u128 = 1;
            for i in 1..=rank as u128 {
                acc = acc.saturating_mul(boxes + i) / i;
            }
            acc
        }
        Algebra::Sl11 => boxes + 1,
        Algebra::Sl12 => {
            let l = u128::from(spec.length);
            let twos = u128::from(spec.twos);
            (l + 1) + twos * l * (l + 1) / 2
        }
    }
}

fn guard_table(spec: &SpinChainSpec) -> Result<()> {
    let needed = support_size(spec);
    if needed > TABLE_SUPPORT_LIMIT {
        return Err(Error::SizeGuard {
            what: "table support",
            needed,
            limit: TABLE_SUPPORT_LIMIT,
        });
    }
    Ok(())
}

/// `c(M)` over the whole support, from a single full expansion.
pub fn c_table(spec: &SpinChainSpec) -> Result<Vec<(Vec<i64>, BigInt)>> {
    guard_table(spec)?;
    let table = CoefficientTable::full(spec)?;
    Ok(spec
        .support()
        .into_iter()
        .map(|m| {
            let c = table.get(&m);
            (m, c)
        })
        .collect())
}

/// Branching coefficients for every support point whose label is valid.
/// With the full decomposition these are the untwisted multiplicities.
pub fn mu_table(spec: &SpinChainSpec, decomp: &SubalgebraDecomposition) -> Result<Vec<TableRow>> {
    let r = su_rank(spec)?;
    if decomp.rank() != r {
        return Err(Error::ArityMismatch {
            expected: r,
            found: decomp.rank(),
        });
    }
    guard_table(spec)?;
    let table = CoefficientTable::full(spec)?;
    let inv = partial_inverse(decomp, r)?;
    spec.support()
        .into_par_iter()
        .filter_map(|m| branch_label(spec, &m, decomp).map(|label| (m, label)))
        .map(|(m, label)| {
            let mu = shifted(&table, &inv, &m, true)?;
            let dim = dim_branched(&label);
            Ok(TableRow { m, label, mu, dim })
        })
        .collect()
}

/// `Σ μ · dim R` against `C(2s+r, r)^L`.
pub fn completeness_check(
    spec: &SpinChainSpec,
    decomp: &SubalgebraDecomposition,
) -> Result<CompletenessReport> {
    let rows = mu_table(spec, decomp)?;
    let sum: BigInt = rows.iter().map(|row| &row.mu * &row.dim).sum();
    Ok(CompletenessReport::new(
        sum,
        total_states(spec),
        rows.len(),
        false,
    ))
}

/// `(M, λ, μ, dim)` row of a mixed chain table.
pub type MixedRow = (Vec<i64>, YoungDiagram, BigInt, BigInt);

/// Multiplicities of a chain of mixed site representations, one row per
/// valid highest weight, in increasing `M`.
pub fn mixed_mu_table(diagrams: &[Vec<i64>], r: usize) -> Result<Vec<MixedRow>> {
    let total: i64 = diagrams.iter().map(|d| d.iter().sum::<i64>()).sum();
    let pseudo = SpinChainSpec::new(r, total.max(1) as u32, 1)?;
    guard_table(&pseudo)?;
    let table = CoefficientTable::new(mixed_generating_function(diagrams, r, None)?);
    let inv = verma_inverse(&positive_roots(r), r)?;
    let mut points: Vec<Vec<i64>> = table
        .poly()
        .terms()
        .map(|(e, _)| e.as_slice().iter().map(|&x| i64::from(x)).collect())
        .collect();
    points.sort();
    points
        .into_iter()
        .filter_map(|m| young_from_total(total, &m).map(|lam| (m, lam)))
        .map(|(m, lam)| {
            let mu = shifted(&table, &inv, &m, true)?;
            let dim = dim_irrep(&lam, r);
            Ok((m, lam, mu, dim))
        })
        .collect()
}

/// Completeness for a chain of mixed site representations, with the
/// untwisted stencil. The target is the product of the site dimensions.
pub fn mixed_completeness(diagrams: &[Vec<i64>], r: usize) -> Result<CompletenessReport> {
    let rows = mixed_mu_table(diagrams, r)?;
    let mut target = BigInt::from(1);
    for d in diagrams {
        target *= YoungDiagram::new(d.clone()).map(|y| dim_irrep(&y, r))?;
    }
    let sum: BigInt = rows.iter().map(|(_, _, mu, dim)| mu * dim).sum();
    Ok(CompletenessReport::new(sum, target, rows.len(), true))
}

/// `(M, μ, dim)` for every superalgebra weight in the completeness sum.
pub fn super_mu_table(
    kind: SuperKind,
    twos: u32,
    length: u32,
) -> Result<Vec<(Vec<i64>, BigInt, BigInt)>> {
    guard_table(&SpinChainSpec::with_algebra(kind.algebra(), twos, length)?)?;
    super_weights(kind, twos, length)
        .into_iter()
        .map(|m| {
            let mu = mu_super(kind, twos, length, &m)?;
            let dim = dim_super(kind, length, &m);
            Ok((m, mu, dim))
        })
        .collect()
}

/// Signed difference formula of the (partial) counting stencil.
pub fn stencil_formula(decomp: &SubalgebraDecomposition) -> Result<String> {
    let r = decomp.rank();
    Ok(partial_inverse(decomp, r)?.stencil().render("c"))
}

/// Super stencil, materialized inside the box `[0, M]`.
pub fn super_stencil_formula(kind: SuperKind, m: &[i64]) -> Result<String> {
    let clamped: Vec<i64> = m.iter().map(|&v| v.max(0)).collect();
    let bounds = DegreeBox::covering(&clamped)?;
    let (a, b) = kind.shape();
    let symbol = match kind {
        SuperKind::Sl11 => "c",
        SuperKind::Sl12 => "cTJ",
    };
    Ok(super_inverse(a, b, &bounds)?.stencil().render(symbol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{decomposition_from_subset, parse_root_list};
    use num_traits::Zero;

    fn d(r: usize, s: &str) -> SubalgebraDecomposition {
        decomposition_from_subset(r, &parse_root_list(r, s).unwrap()).unwrap()
    }

    #[test]
    fn su3_a2_branching_listing() {
        // 6 x 6 under su(2) + u(1), charge 4 - 3 λ^(1)
        let s = SpinChainSpec::new(2, 2, 2).unwrap();
        let rows = mu_table(&s, &d(2, "a2")).unwrap();
        let mut got: Vec<(i64, i64, i64)> = rows
            .iter()
            .filter(|row| !row.mu.is_zero())
            .map(|row| {
                let charge = 4 - 3 * row.label.u1_rows()[0];
                (
                    row.dim.to_string().parse().unwrap(),
                    charge,
                    row.mu.to_string().parse().unwrap(),
                )
            })
            .collect();
        got.sort();
        let mut expected = vec![
            (5, 4, 1),
            (4, 1, 2),
            (3, -2, 3),
            (3, 4, 1),
            (2, -5, 2),
            (2, 1, 2),
            (1, -8, 1),
            (1, -2, 1),
            (1, 4, 1),
        ];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn su3_completeness_example() {
        let s = SpinChainSpec::new(2, 2, 2).unwrap();
        let report = completeness_check(&s, &SubalgebraDecomposition::full(2)).unwrap();
        assert!(report.pass);
        assert_eq!(report.sum, BigInt::from(36));
        let rows = mu_table(&s, &SubalgebraDecomposition::full(2)).unwrap();
        let dims: Vec<String> = rows
            .iter()
            .filter(|r| !r.mu.is_zero())
            .map(|r| r.dim.to_string())
            .collect();
        assert_eq!(dims, vec!["15", "15", "6"]);
    }

    #[test]
    fn su2_completeness() {
        for l in 1..=12 {
            let s = SpinChainSpec::new(1, 1, l).unwrap();
            let report = completeness_check(&s, &SubalgebraDecomposition::full(1)).unwrap();
            assert!(report.pass, "L = {l}");
        }
    }

    #[test]
    fn support_sizes() {
        for (r, twos, l) in [(1, 3, 4), (2, 2, 3), (3, 1, 5)] {
            let s = SpinChainSpec::new(r, twos, l).unwrap();
            assert_eq!(support_size(&s), s.support().len() as u128);
        }
        for twos in 1..=3 {
            let s = SpinChainSpec::with_algebra(Algebra::Sl12, twos, 4).unwrap();
            assert_eq!(support_size(&s), s.support().len() as u128);
        }
        let big = SpinChainSpec::new(4, 4, 40).unwrap();
        assert!(matches!(c_table(&big), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn c_table_rank_one_rows() {
        let s = SpinChainSpec::new(1, 3, 4).unwrap();
        assert_eq!(c_table(&s).unwrap().len(), 13);
    }

    #[test]
    fn formulas() {
        assert_eq!(
            stencil_formula(&d(2, "a2")).unwrap(),
            "c(M1,M2) - c(M1,M2-1)"
        );
        assert_eq!(
            stencil_formula(&d(2, "a1")).unwrap(),
            "c(M1,M2) - c(M1-1,M2)"
        );
        assert_eq!(
            stencil_formula(&d(2, "a1+a2")).unwrap(),
            "c(M1,M2) - c(M1-1,M2-1)"
        );
        assert_eq!(
            stencil_formula(&d(3, "a1,a3")).unwrap(),
            "c(M1,M2,M3) - c(M1-1,M2,M3) - c(M1,M2,M3-1) + c(M1-1,M2,M3-1)"
        );
        assert_eq!(stencil_formula(&d(2, "")).unwrap(), "c(M1,M2)");
        assert_eq!(
            super_stencil_formula(SuperKind::Sl11, &[2]).unwrap(),
            "c(M1) - c(M1-1) + c(M1-2)"
        );
    }

    #[test]
    fn kondo_completeness() {
        let report = mixed_completeness(&[vec![2], vec![1], vec![1], vec![1]], 2).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.target, BigInt::from(6 * 27));
    }
}
