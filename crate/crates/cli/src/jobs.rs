use bethecount::counting::{
    branch_label, c_table, completeness_check, mixed_completeness, mixed_mu_table, mu_mixed,
    mu_partial, mu_super, stencil_formula, super_completeness, super_mu_table,
    super_stencil_formula, support_size, SuperKind, YoungDiagram, TABLE_SUPPORT_LIMIT,
};
use bethecount::occupancy::{
    c_coefficient, mixed_c, mixed_generating_function, Algebra, SpinChainSpec,
};
use bethecount::rootsys::{
    decomposition_from_subset, parse_root_list, preserved_roots, SubalgebraDecomposition,
    TwistConfiguration,
};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::args::{Format, JobArgs, SymmetryArgs, TwistArgs};
use crate::failure::Failure;
use crate::render::{self, Label, Row, Table};

/// The chain a job runs on.
enum Chain {
    Su(SpinChainSpec),
    Super {
        kind: SuperKind,
        spec: SpinChainSpec,
    },
    /// Arbitrary site diagrams; an impurity chain is a special case.
    Mixed {
        rank: usize,
        diagrams: Vec<Vec<i64>>,
    },
}

fn bad(msg: impl Into<String>) -> Failure {
    Failure::BadInput(msg.into())
}

fn parse_ints(raw: &str, what: &str) -> Result<Vec<i64>, Failure> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| bad(format!("cannot parse {what} entry {s:?}")))
        })
        .collect()
}

fn parse_sites(raw: &str) -> Result<Vec<Vec<i64>>, Failure> {
    let sites: Vec<Vec<i64>> = raw
        .split(';')
        .map(|d| parse_ints(d, "site diagram"))
        .collect::<Result<_, _>>()?;
    if sites.is_empty() || sites.iter().any(Vec::is_empty) {
        return Err(bad("--sites needs at least one nonempty diagram"));
    }
    for d in &sites {
        YoungDiagram::new(d.clone())?;
    }
    Ok(sites)
}

fn resolve_chain(job: &JobArgs) -> Result<Chain, Failure> {
    if let Some(raw) = &job.superalgebra {
        let kind: SuperKind = raw.parse()?;
        let length = job.length.ok_or_else(|| bad("--L is required"))?;
        let spec = SpinChainSpec::with_algebra(kind.algebra(), job.twos.unwrap_or(1), length)?;
        return Ok(Chain::Super { kind, spec });
    }
    let rank = job
        .rank
        .ok_or_else(|| bad("one of --r or --super is required"))?;
    if rank == 0 {
        return Err(bad("--r must be at least 1"));
    }
    if let Some(raw) = &job.sites {
        return Ok(Chain::Mixed {
            rank,
            diagrams: parse_sites(raw)?,
        });
    }
    let length = job.length.ok_or_else(|| bad("--L is required"))?;
    let twos = job.twos.unwrap_or(1);
    let spec = SpinChainSpec::new(rank, twos, length)?;
    match job.impurity {
        Some(0) => Err(bad("--impurity must be at least 1")),
        Some(imp) => {
            let mut diagrams = vec![vec![i64::from(imp)]];
            diagrams.extend(std::iter::repeat_n(vec![i64::from(twos)], length as usize));
            Ok(Chain::Mixed { rank, diagrams })
        }
        None => Ok(Chain::Su(spec)),
    }
}

fn parse_angles(raw: &str) -> Result<Vec<Ratio<i64>>, Failure> {
    raw.split(',')
        .map(str::trim)
        .map(|s| {
            s.parse::<Ratio<i64>>()
                .map_err(|_| bad(format!("cannot parse angle {s:?}")))
        })
        .collect()
}

/// Decomposition selected by the twist flags; untwisted when none is given.
pub fn resolve_decomposition(
    rank: usize,
    twist: &TwistArgs,
) -> Result<SubalgebraDecomposition, Failure> {
    if let Some(raw) = &twist.dplus {
        return Ok(decomposition_from_subset(
            rank,
            &parse_root_list(rank, raw)?,
        )?);
    }
    if let Some(raw) = &twist.zeros {
        return Ok(preserved_roots(
            rank,
            &TwistConfiguration::parse_zeros(rank, raw)?,
        )?);
    }
    if let Some(raw) = &twist.angles {
        let angles = parse_angles(raw)?;
        if angles.len() != rank {
            return Err(bad(format!(
                "--angles needs {rank} values, got {}",
                angles.len()
            )));
        }
        return Ok(preserved_roots(
            rank,
            &TwistConfiguration::from_angles(&angles),
        )?);
    }
    Ok(SubalgebraDecomposition::full(rank))
}

fn parse_magnons(job: &JobArgs, arity: usize) -> Result<Option<Vec<i64>>, Failure> {
    let Some(raw) = &job.magnons else {
        return Ok(None);
    };
    let m = parse_ints(raw, "--M")?;
    if m.len() != arity {
        return Err(bad(format!("--M needs {arity} entries, got {}", m.len())));
    }
    Ok(Some(m))
}

fn reject_twists(job: &JobArgs, context: &str) -> Result<(), Failure> {
    if job.twist.any() {
        return Err(bad(format!("twist flags are not supported {context}")));
    }
    Ok(())
}

fn meta(chain: &Chain) -> Vec<(&'static str, Value)> {
    match chain {
        Chain::Su(spec) => vec![
            ("algebra", json!(algebra_name(spec))),
            ("twos", json!(spec.twos)),
            ("L", json!(spec.length)),
        ],
        Chain::Super { kind, spec } => vec![
            ("algebra", json!(kind.to_string())),
            ("twos", json!(spec.twos)),
            ("L", json!(spec.length)),
        ],
        Chain::Mixed { rank, diagrams } => {
            let sites: Vec<String> = diagrams
                .iter()
                .map(|d| YoungDiagram::new(d.clone()).expect("validated").to_string())
                .collect();
            vec![
                ("algebra", json!(format!("su({})", rank + 1))),
                ("sites", json!(sites.join(";"))),
            ]
        }
    }
}

fn algebra_name(spec: &SpinChainSpec) -> String {
    match spec.algebra {
        Algebra::Su { rank } => format!("su({})", rank + 1),
        Algebra::Sl11 => "sl(1|1)".into(),
        Algebra::Sl12 => "sl(1|2)".into(),
    }
}

fn mixed_total(diagrams: &[Vec<i64>]) -> i64 {
    diagrams.iter().map(|d| d.iter().sum::<i64>()).sum()
}

fn guard_mixed(rank: usize, diagrams: &[Vec<i64>]) -> Result<(), Failure> {
    let pseudo = SpinChainSpec::new(rank, mixed_total(diagrams).max(1) as u32, 1)?;
    let needed = support_size(&pseudo);
    if needed > TABLE_SUPPORT_LIMIT {
        return Err(Failure::Guard(format!(
            "table support needs {needed}, limit is {TABLE_SUPPORT_LIMIT}"
        )));
    }
    Ok(())
}

pub fn count(job: &JobArgs) -> Result<String, Failure> {
    reject_twists(job, "by count")?;
    if job.explain {
        return Err(bad("--explain applies to mu"));
    }
    let chain = resolve_chain(job)?;
    let plain = |m: Vec<i64>, value: BigInt| Row {
        m,
        label: None,
        value,
        dim: None,
        charge: None,
    };
    let (rows, single) = match &chain {
        Chain::Su(spec) | Chain::Super { spec, .. } => match parse_magnons(job, spec.arity())? {
            Some(m) => (vec![plain(m.clone(), c_coefficient(spec, &m))], true),
            None => (
                c_table(spec)?
                    .into_iter()
                    .map(|(m, c)| plain(m, c))
                    .collect(),
                false,
            ),
        },
        Chain::Mixed { rank, diagrams } => match parse_magnons(job, *rank)? {
            Some(m) => (vec![plain(m.clone(), mixed_c(diagrams, *rank, &m)?)], true),
            None => {
                guard_mixed(*rank, diagrams)?;
                let gf = mixed_generating_function(diagrams, *rank, None)?;
                let mut rows: Vec<Row> = gf
                    .terms()
                    .map(|(e, c)| {
                        plain(
                            e.as_slice().iter().map(|&x| i64::from(x)).collect(),
                            c.clone(),
                        )
                    })
                    .collect();
                rows.sort_by(|a, b| a.m.cmp(&b.m));
                (rows, false)
            }
        },
    };
    let table = Table {
        command: "count",
        value_name: "c",
        meta: meta(&chain),
        formula: None,
        rows,
        single,
    };
    table.render(job.format)
}

/// `(a, b)` of the affine charge `a + b · row`, if one applies.
fn charge_convention(
    job: &JobArgs,
    decomp: &SubalgebraDecomposition,
) -> Result<Option<(i64, i64)>, Failure> {
    if let Some(raw) = &job.charge {
        let v = parse_ints(raw, "--charge")?;
        if v.len() != 2 {
            return Err(bad("--charge needs two integers a,b"));
        }
        return Ok(Some((v[0], v[1])));
    }
    // su(3) -> su(2) + u(1) with the su(2) on rows 2,3
    let default = decomp.rank() == 2 && decomp.blocks() == [vec![1], vec![2, 3]];
    Ok(default.then_some((4, -3)))
}

pub fn mu(job: &JobArgs) -> Result<String, Failure> {
    let chain = resolve_chain(job)?;
    if job.charge.is_some() && !matches!(chain, Chain::Su(_)) {
        return Err(bad("--charge applies to su(r+1) chains"));
    }
    let meta = meta(&chain);
    let (rows, single, formula) = match &chain {
        Chain::Su(spec) => {
            let r = spec.arity();
            let decomp = resolve_decomposition(r, &job.twist)?;
            let charge = charge_convention(job, &decomp)?;
            let full = decomp.is_full();
            let make_label = |l: bethecount::counting::BranchedLabel| {
                if full {
                    Label::Young(l.components()[0].clone())
                } else {
                    Label::Branched(l)
                }
            };
            let charges = |l: &bethecount::counting::BranchedLabel| {
                charge.map(|(a, b)| {
                    l.u1_rows()
                        .iter()
                        .map(|&row| a + b * row)
                        .collect::<Vec<i64>>()
                })
            };
            let formula = job.explain.then(|| stencil_formula(&decomp)).transpose()?;
            match parse_magnons(job, r)? {
                Some(m) => {
                    let label = branch_label(spec, &m, &decomp);
                    let value = mu_partial(spec, &m, &decomp)?;
                    let dim = label.as_ref().map(bethecount::counting::dim_branched);
                    let charge = label.as_ref().and_then(charges);
                    (
                        vec![Row {
                            m,
                            label: label.map(make_label),
                            value,
                            dim,
                            charge,
                        }],
                        true,
                        formula,
                    )
                }
                None => {
                    let rows = bethecount::counting::mu_table(spec, &decomp)?
                        .into_iter()
                        .map(|row| Row {
                            charge: charges(&row.label),
                            m: row.m,
                            label: Some(make_label(row.label)),
                            value: row.mu,
                            dim: Some(row.dim),
                        })
                        .collect();
                    (rows, false, formula)
                }
            }
        }
        Chain::Super { kind, spec } => {
            reject_twists(job, "for superalgebra chains")?;
            match parse_magnons(job, kind.arity())? {
                Some(m) => {
                    let formula = job
                        .explain
                        .then(|| super_stencil_formula(*kind, &m))
                        .transpose()?;
                    let value = mu_super(*kind, spec.twos, spec.length, &m)?;
                    let dim =
                        bethecount::counting::super_weight_valid(*kind, spec.twos, spec.length, &m)
                            .then(|| bethecount::counting::dim_super(*kind, spec.length, &m));
                    (
                        vec![Row {
                            m,
                            label: None,
                            value,
                            dim,
                            charge: None,
                        }],
                        true,
                        formula,
                    )
                }
                None => {
                    let rows: Vec<Row> = super_mu_table(*kind, spec.twos, spec.length)?
                        .into_iter()
                        .map(|(m, mu, dim)| Row {
                            m,
                            label: None,
                            value: mu,
                            dim: Some(dim),
                            charge: None,
                        })
                        .collect();
                    let formula = match (job.explain, rows.last()) {
                        (true, Some(last)) => Some(super_stencil_formula(*kind, &last.m)?),
                        _ => None,
                    };
                    (rows, false, formula)
                }
            }
        }
        Chain::Mixed { rank, diagrams } => {
            reject_twists(job, "for mixed-site chains")?;
            let formula = job
                .explain
                .then(|| stencil_formula(&SubalgebraDecomposition::full(*rank)))
                .transpose()?;
            match parse_magnons(job, *rank)? {
                Some(m) => {
                    let lam = bethecount::counting::young_from_total(mixed_total(diagrams), &m);
                    let value = mu_mixed(diagrams, *rank, &m)?;
                    let dim = lam
                        .as_ref()
                        .map(|l| bethecount::counting::dim_irrep(l, *rank));
                    (
                        vec![Row {
                            m,
                            label: lam.map(Label::Young),
                            value,
                            dim,
                            charge: None,
                        }],
                        true,
                        formula,
                    )
                }
                None => {
                    let rows = mixed_mu_table(diagrams, *rank)?
                        .into_iter()
                        .map(|(m, lam, mu, dim)| Row {
                            m,
                            label: Some(Label::Young(lam)),
                            value: mu,
                            dim: Some(dim),
                            charge: None,
                        })
                        .collect();
                    (rows, false, formula)
                }
            }
        }
    };
    let mut meta = meta;
    if let Chain::Su(spec) = &chain {
        meta.push((
            "symmetry",
            json!(resolve_decomposition(spec.arity(), &job.twist)?.algebra_label()),
        ));
    }
    let table = Table {
        command: "mu",
        value_name: "mu",
        meta,
        formula,
        rows,
        single,
    };
    table.render(job.format)
}

pub fn check(job: &JobArgs) -> Result<String, Failure> {
    if job.magnons.is_some() || job.explain || job.charge.is_some() {
        return Err(bad("check takes no --M, --explain or --charge"));
    }
    let chain = resolve_chain(job)?;
    let mut meta = meta(&chain);
    let report = match &chain {
        Chain::Su(spec) => {
            let decomp = resolve_decomposition(spec.arity(), &job.twist)?;
            meta.push(("symmetry", json!(decomp.algebra_label())));
            completeness_check(spec, &decomp)?
        }
        Chain::Super { kind, spec } => {
            reject_twists(job, "for superalgebra chains")?;
            super_completeness(*kind, spec.twos, spec.length)?
        }
        Chain::Mixed { rank, diagrams } => {
            reject_twists(job, "for mixed-site chains")?;
            guard_mixed(*rank, diagrams)?;
            mixed_completeness(diagrams, *rank)?
        }
    };
    let out = render::completeness(&report, &meta, job.format)?;
    if report.pass {
        Ok(out)
    } else {
        Err(Failure::CheckFailed(out))
    }
}

pub fn symmetry(job: &SymmetryArgs) -> Result<String, Failure> {
    if job.rank == 0 {
        return Err(bad("--r must be at least 1"));
    }
    let twist = &job.twist;
    // no flag at all means generic twists here, not the untwisted chain
    let decomp = if twist.any() {
        resolve_decomposition(job.rank, twist)?
    } else {
        SubalgebraDecomposition::trivial(job.rank)
    };
    let label = decomp.algebra_label();
    let blocks: Vec<String> = decomp
        .blocks()
        .iter()
        .map(|b| {
            format!(
                "{{{}}}",
                b.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    let roots: Vec<String> = decomp
        .preserved_roots()
        .iter()
        .map(ToString::to_string)
        .collect();
    match job.format {
        Format::Human => Ok(format!(
            "{label}\nblocks: {}\npreserved roots: {}\n",
            blocks.join(" "),
            if roots.is_empty() {
                "none".to_string()
            } else {
                roots.join(", ")
            }
        )),
        Format::Json => Ok(render::to_json(json!({
            "command": "symmetry",
            "rank": job.rank,
            "algebra": label,
            "blocks": decomp.blocks(),
            "preserved_roots": roots,
            "u1_count": decomp.u1_count(),
        }))),
        Format::Csv => render::write_csv(&[
            vec!["algebra".into(), "blocks".into(), "preserved_roots".into()],
            vec![label, blocks.join(" "), roots.join(";")],
        ]),
    }
}
