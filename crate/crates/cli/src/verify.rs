use std::time::Instant;

use bethecount::combinat::binomial;
use bethecount::counting::{
    c_table, completeness_check, hook_length_mu, mixed_completeness, mu_oracle_table, mu_super,
    mu_table, super_completeness, young_from_magnons, SuperKind,
};
use bethecount::occupancy::{brute_force_table, kondo_c, kondo_c_nested, SpinChainSpec};
use bethecount::rootsys::{all_subset_decompositions, SubalgebraDecomposition};
use bethecount::Error;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

use crate::args::{Format, VerifyArgs};
use crate::failure::Failure;
use crate::render;

#[derive(Default)]
struct Outcome {
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Outcome {
    fn expect(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(context());
            }
        }
    }
}

struct Family {
    name: &'static str,
    run: fn(&Limits) -> Result<Outcome, Error>,
}

struct Limits {
    max_length: Option<u32>,
    perturb: bool,
}

impl Limits {
    fn lengths(&self, default: u32) -> std::ops::RangeInclusive<u32> {
        1..=self.max_length.map_or(default, |m| m.min(default))
    }
}

fn spec(r: usize, twos: u32, l: u32) -> SpinChainSpec {
    SpinChainSpec::new(r, twos, l).expect("suite parameters are valid")
}

fn c_vs_brute_force(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    let mut corrupt = lim.perturb;
    for r in 1..=3 {
        for twos in 1..=3 {
            for l in lim.lengths(5) {
                let s = spec(r, twos, l);
                let brute = brute_force_table(&s)?;
                for (m, mut c) in c_table(&s)? {
                    if corrupt {
                        c += 1;
                        corrupt = false;
                    }
                    let ok = brute.get(&m) == Some(&c);
                    out.expect(ok, || {
                        format!(
                            "r={r} 2s={twos} L={l} M={m:?}: c={c}, brute force {:?}",
                            brute.get(&m)
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

fn mu_vs_hook_length(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for r in 1..=4 {
        for l in lim.lengths(8) {
            let s = spec(r, 1, l);
            for row in mu_table(&s, &SubalgebraDecomposition::full(r))? {
                let lam = young_from_magnons(&s, &row.m).expect("table rows are valid");
                let hook = hook_length_mu(&lam);
                out.expect(hook == row.mu, || {
                    format!(
                        "r={r} L={l} M={:?}: mu={}, hook length {hook}",
                        row.m, row.mu
                    )
                });
            }
        }
    }
    Ok(out)
}

fn mu_vs_peeling(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for r in 1..=2 {
        for twos in 1..=2 {
            for l in lim.lengths(4) {
                let s = spec(r, twos, l);
                let oracle = mu_oracle_table(&s)?;
                for row in mu_table(&s, &SubalgebraDecomposition::full(r))? {
                    let expected = oracle.get(&row.m).cloned().unwrap_or_default();
                    out.expect(expected == row.mu, || {
                        format!(
                            "r={r} 2s={twos} L={l} M={:?}: mu={}, peeling {expected}",
                            row.m, row.mu
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

fn completeness_all_decompositions(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for r in 1..=3 {
        let decomps = all_subset_decompositions(r);
        for twos in 1..=2 {
            for l in lim.lengths(4) {
                let s = spec(r, twos, l);
                for d in &decomps {
                    let rep = completeness_check(&s, d)?;
                    out.expect(rep.pass, || {
                        format!(
                            "r={r} 2s={twos} L={l} {}: {} != {}",
                            d.algebra_label(),
                            rep.sum,
                            rep.target
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

fn sl11(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for l in lim.lengths(12) {
        for m in 0..i64::from(l) {
            let mu = mu_super(SuperKind::Sl11, 1, l, &[m])?;
            let expected = binomial(i64::from(l) - 1, m);
            out.expect(mu == expected, || {
                format!("L={l} M={m}: mu={mu}, C(L-1,M)={expected}")
            });
        }
        let rep = super_completeness(SuperKind::Sl11, 1, l)?;
        let target = BigInt::from(2).pow(l);
        out.expect(rep.pass && rep.sum == target, || {
            format!("L={l}: sum {} != 2^L", rep.sum)
        });
    }
    Ok(out)
}

/// `(L-2M1+M2+1)/(L-M1+M2+1) · C(L,M1) · C(M1-1,M2)`, with `1` at `M = 0`.
pub fn tj_closed_form(l: i64, m1: i64, m2: i64) -> BigInt {
    if m1 == 0 && m2 == 0 {
        return BigInt::one();
    }
    let num = BigInt::from(l - 2 * m1 + m2 + 1) * binomial(l, m1) * binomial(m1 - 1, m2);
    num / BigInt::from(l - m1 + m2 + 1)
}

fn sl12(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for l in lim.lengths(10) {
        let li = i64::from(l);
        for m1 in 0..=li {
            for m2 in 0..=m1 {
                let mu = mu_super(SuperKind::Sl12, 1, l, &[m1, m2])?;
                let valid = (m1 == 0 && m2 == 0) || (m1 > m2 && li - 2 * m1 + m2 >= 0);
                let expected = if valid {
                    tj_closed_form(li, m1, m2)
                } else {
                    BigInt::default()
                };
                out.expect(mu == expected, || {
                    format!("L={l} M=({m1},{m2}): mu={mu}, closed form {expected}")
                });
            }
        }
        let rep = super_completeness(SuperKind::Sl12, 1, l)?;
        let target = BigInt::from(3).pow(l);
        out.expect(rep.pass && rep.sum == target, || {
            format!("L={l}: sum {} != 3^L", rep.sum)
        });
    }
    Ok(out)
}

fn kondo(lim: &Limits) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    for r in 1..=2 {
        for twos in 1..=2 {
            for imp in 1..=2u32 {
                for l in lim.lengths(4) {
                    let bulk = spec(r, twos, l);
                    let wide = spec(r, twos.max(imp), l + 1);
                    for m in wide.support() {
                        let gf = kondo_c(&bulk, imp, &m)?;
                        let nested = kondo_c_nested(&bulk, imp, &m)?;
                        out.expect(gf == nested, || {
                            format!("r={r} 2s={twos} 2s'={imp} L={l} M={m:?}: {gf} != {nested}")
                        });
                    }
                    let mut sites = vec![vec![i64::from(imp)]];
                    sites.extend(std::iter::repeat_n(vec![i64::from(twos)], l as usize));
                    let rep = mixed_completeness(&sites, r)?;
                    out.expect(rep.pass, || {
                        format!(
                            "r={r} 2s={twos} 2s'={imp} L={l}: {} != {}",
                            rep.sum, rep.target
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

const FAMILIES: &[Family] = &[
    Family {
        name: "c = brute force (r<=3, 2s<=3, L<=5)",
        run: c_vs_brute_force,
    },
    Family {
        name: "mu = hook length (2s=1, r<=4, L<=8)",
        run: mu_vs_hook_length,
    },
    Family {
        name: "mu = character peeling (r<=2, 2s<=2, L<=4)",
        run: mu_vs_peeling,
    },
    Family {
        name: "completeness, all D+ (r<=3, 2s<=2, L<=4)",
        run: completeness_all_decompositions,
    },
    Family {
        name: "sl(1|1): mu = C(L-1,M), sum = 2^L (L<=12)",
        run: sl11,
    },
    Family {
        name: "sl(1|2): closed form, sum = 3^L (L<=10)",
        run: sl12,
    },
    Family {
        name: "Kondo: generating function = nested sum (r<=2, L<=4)",
        run: kondo,
    },
];

pub fn run(job: &VerifyArgs) -> Result<String, Failure> {
    let lim = Limits {
        max_length: job.max_length,
        perturb: job.perturb,
    };
    if lim.max_length == Some(0) {
        return Err(Failure::BadInput("--max-L must be at least 1".into()));
    }
    let mut results = Vec::new();
    for fam in FAMILIES {
        let start = Instant::now();
        let outcome = (fam.run)(&lim)?;
        results.push((fam.name, outcome, start.elapsed().as_secs_f64()));
    }
    let passed = results.iter().filter(|(_, o, _)| o.failures == 0).count();
    let all = passed == results.len();
    let out = match job.format {
        Format::Human => {
            let mut s = String::new();
            for (name, o, secs) in &results {
                let status = if o.failures == 0 { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{status}  {name:<52} {:>6} cases  {secs:>7.3} s\n",
                    o.cases
                ));
                if let Some(f) = &o.first_failure {
                    s.push_str(&format!("      first mismatch: {f}\n"));
                }
            }
            s.push_str(&format!(
                "summary: {passed}/{} families passed\n",
                results.len()
            ));
            s
        }
        Format::Json => render::to_json(json!({
            "command": "verify",
            "checks": results.iter().map(|(name, o, secs)| json!({
                "name": name,
                "cases": o.cases,
                "failures": o.failures,
                "first_failure": o.first_failure,
                "pass": o.failures == 0,
                "seconds": secs,
            })).collect::<Vec<_>>(),
            "pass": all,
        })),
        Format::Csv => {
            let mut records = vec![vec![
                "check".into(),
                "cases".into(),
                "failures".into(),
                "seconds".into(),
            ]];
            for (name, o, secs) in &results {
                records.push(vec![
                    name.to_string(),
                    o.cases.to_string(),
                    o.failures.to_string(),
                    format!("{secs:.3}"),
                ]);
            }
            render::write_csv(&records)?
        }
    };
    if all {
        Ok(out)
    } else {
        Err(Failure::CheckFailed(out))
    }
}
