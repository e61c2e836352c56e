use bethecount::combinat::binomial;
use bethecount::counting::{
    c_table, completeness_check, dim_super, hook_length_mu, mixed_completeness, mu_oracle_table,
    mu_super, mu_table, mu_untwisted, super_completeness, young_from_magnons, SuperKind,
};
use bethecount::occupancy::{
    brute_force_c, brute_force_table, c_coefficient, kondo_c, kondo_c_nested, tj_c,
    CoefficientTable, SpinChainSpec,
};
use bethecount::rootsys::{all_subset_decompositions, SubalgebraDecomposition};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn spec(r: usize, twos: u32, l: u32) -> SpinChainSpec {
    SpinChainSpec::new(r, twos, l).unwrap()
}

#[test]
fn coefficients_match_brute_force() {
    for r in 1..=3 {
        for twos in 1..=3 {
            for l in 1..=5 {
                let s = spec(r, twos, l);
                let brute = brute_force_table(&s).unwrap();
                for (m, c) in c_table(&s).unwrap() {
                    assert_eq!(brute[&m], c, "r={r} 2s={twos} L={l} M={m:?}");
                }
            }
        }
    }
}

#[test]
fn pointwise_brute_force_agrees_off_support() {
    let s = spec(2, 2, 3);
    for m in [[7, 0], [2, 3], [-1, 0], [3, -2], [6, 6]] {
        assert_eq!(
            brute_force_c(&s, &m).unwrap(),
            c_coefficient(&s, &m),
            "M={m:?}"
        );
    }
}

#[test]
fn multiplicities_match_peeling() {
    for r in 1..=2 {
        for twos in 1..=2 {
            for l in 1..=4 {
                let s = spec(r, twos, l);
                let oracle = mu_oracle_table(&s).unwrap();
                for m in s.support() {
                    let expected = oracle.get(&m).cloned().unwrap_or_default();
                    assert_eq!(
                        mu_untwisted(&s, &m).unwrap(),
                        expected,
                        "r={r} 2s={twos} L={l} M={m:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn hook_length_agreement() {
    for r in 1..=4 {
        for l in 1..=8 {
            let s = spec(r, 1, l);
            for m in s.support() {
                let mu = mu_untwisted(&s, &m).unwrap();
                match young_from_magnons(&s, &m) {
                    Some(lam) => assert_eq!(mu, hook_length_mu(&lam), "r={r} L={l} M={m:?}"),
                    None => assert!(mu.is_zero()),
                }
            }
        }
    }
}

#[test]
fn nonnegative_and_zero_off_chamber() {
    for r in 1..=3 {
        for twos in 1..=3 {
            for l in 1..=5 {
                let s = spec(r, twos, l);
                let table = CoefficientTable::full(&s).unwrap();
                let rows = mu_table(&s, &SubalgebraDecomposition::full(r)).unwrap();
                assert!(rows.iter().all(|row| !row.mu.is_negative()));
                assert_eq!(table.poly().len(), s.support().len());
                let invalid = s
                    .support()
                    .into_iter()
                    .find(|m| young_from_magnons(&s, m).is_none());
                if let Some(m) = invalid {
                    assert!(mu_untwisted(&s, &m).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn completeness_for_every_decomposition() {
    for r in 1..=3 {
        for d in all_subset_decompositions(r) {
            for twos in 1..=2 {
                for l in 1..=4 {
                    let report = completeness_check(&spec(r, twos, l), &d).unwrap();
                    assert!(
                        report.pass,
                        "r={r} 2s={twos} L={l} {}: {report:?}",
                        d.algebra_label()
                    );
                }
            }
        }
    }
}

#[test]
fn su3_partial_completeness_three_to_the_l() {
    let d = bethecount::rootsys::decomposition_from_subset(
        2,
        &bethecount::rootsys::parse_root_list(2, "a2").unwrap(),
    )
    .unwrap();
    for l in 1..=8 {
        let report = completeness_check(&spec(2, 1, l), &d).unwrap();
        assert!(report.pass);
        assert_eq!(report.sum, BigInt::from(3).pow(l));
    }
}

#[test]
fn sl11_binomial_and_completeness() {
    for l in 1..=12u32 {
        let li = i64::from(l);
        for m in 0..li {
            assert_eq!(
                mu_super(SuperKind::Sl11, 1, l, &[m]).unwrap(),
                binomial(li - 1, m)
            );
        }
        let report = super_completeness(SuperKind::Sl11, 1, l).unwrap();
        assert!(report.pass);
        assert_eq!(report.sum, BigInt::from(2).pow(l));
    }
}

fn tj_closed_form(l: i64, m1: i64, m2: i64) -> BigInt {
    // C(L,M1) C(M1-1,M2) - C(L,M1-M2-1) C(L-M1+M2,M2)
    if m1 == 0 && m2 == 0 {
        return BigInt::from(1);
    }
    binomial(l, m1) * binomial(m1 - 1, m2) - binomial(l, m1 - m2 - 1) * binomial(l - m1 + m2, m2)
}

#[test]
fn sl12_closed_form_and_completeness() {
    for l in 1..=10u32 {
        let li = i64::from(l);
        for m1 in 0..=li {
            for m2 in 0..=m1 {
                let mu = mu_super(SuperKind::Sl12, 1, l, &[m1, m2]).unwrap();
                let valid = (m1 == 0 && m2 == 0) || (m1 > m2 && li - 2 * m1 + m2 >= 0);
                if valid {
                    assert_eq!(mu, tj_closed_form(li, m1, m2), "L={l} M=({m1},{m2})");
                    let ratio = BigInt::from(li - 2 * m1 + m2 + 1)
                        * binomial(li, m1)
                        * binomial(m1 - 1, m2);
                    if m1 > 0 {
                        assert_eq!(mu.clone() * BigInt::from(li - m1 + m2 + 1), ratio);
                    }
                } else {
                    assert!(mu.is_zero());
                }
            }
        }
        let report = super_completeness(SuperKind::Sl12, 1, l).unwrap();
        assert!(report.pass);
        assert_eq!(report.sum, BigInt::from(3).pow(l));
    }
}

#[test]
fn sl12_dimensions() {
    for l in 1..=6u32 {
        let li = i64::from(l);
        assert_eq!(
            dim_super(SuperKind::Sl12, l, &[0, 0]),
            BigInt::from(2 * li + 1)
        );
        assert_eq!(
            dim_super(SuperKind::Sl12, l, &[1, 0]),
            BigInt::from(4 * (li - 1))
        );
    }
}

#[test]
fn tj_coefficients_factorize() {
    for l in 1..=6u32 {
        for m1 in 0..=i64::from(l) {
            for m2 in 0..=m1 {
                let inner = if m1 == 0 {
                    BigInt::from(u8::from(m2 == 0))
                } else {
                    c_coefficient(&spec(1, 1, m1 as u32), &[m2])
                };
                assert_eq!(tj_c(1, l, m1, m2), binomial(i64::from(l), m1) * inner);
            }
        }
    }
}

#[test]
fn kondo_generating_function_equals_nested_sum() {
    for r in 1..=2 {
        for twos in 1..=2 {
            for imp in 1..=2 {
                for l in 1..=4 {
                    let bulk = spec(r, twos, l);
                    for m in spec(r, twos.max(imp), l + 1).support() {
                        assert_eq!(
                            kondo_c(&bulk, imp, &m).unwrap(),
                            kondo_c_nested(&bulk, imp, &m).unwrap(),
                            "r={r} 2s={twos} 2s'={imp} L={l} M={m:?}"
                        );
                    }
                    let mut sites = vec![vec![i64::from(imp)]];
                    sites.extend(std::iter::repeat_n(vec![i64::from(twos)], l as usize));
                    assert!(mixed_completeness(&sites, r).unwrap().pass);
                }
            }
        }
    }
}

/// Impurity sum with bounds `i_k ≤ 2s' - Σ_{j<k} i_j`, i.e. over the
/// monomials of `h_{2s'}(x1, …, x_r)` rather than `h_{2s'}(1, x1, x1 x2, …)`.
fn kondo_composition_bounds(bulk: &SpinChainSpec, imp: i64, m: &[i64]) -> BigInt {
    fn rec(bulk: &SpinChainSpec, left: i64, m: &[i64], shift: &mut Vec<i64>, acc: &mut BigInt) {
        if shift.len() == m.len() {
            let p: Vec<i64> = m.iter().zip(shift.iter()).map(|(a, b)| a - b).collect();
            *acc += c_coefficient(bulk, &p);
            return;
        }
        for i in 0..=left {
            shift.push(i);
            rec(bulk, left - i, m, shift, acc);
            shift.pop();
        }
    }
    let mut acc = BigInt::zero();
    rec(bulk, imp, m, &mut Vec::new(), &mut acc);
    acc
}

#[test]
fn kondo_composition_bounds_only_hold_at_rank_one() {
    for twos in 1..=2 {
        for imp in 1..=2 {
            let bulk = spec(1, twos, 3);
            for m in 0..=(3 * i64::from(twos) + i64::from(imp)) {
                assert_eq!(
                    kondo_composition_bounds(&bulk, i64::from(imp), &[m]),
                    kondo_c(&bulk, imp as u32, &[m]).unwrap()
                );
            }
        }
    }
    let bulk = spec(2, 1, 1);
    assert_eq!(kondo_c(&bulk, 1, &[0, 1]).unwrap(), BigInt::zero());
    assert_eq!(kondo_composition_bounds(&bulk, 1, &[0, 1]), BigInt::from(1));
}
