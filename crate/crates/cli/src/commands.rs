use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use tel_core::arith::{
    expsum_moments, hall_check, rho_table, second_moment_identity, summarize_rho, ExpsumMode, PseudoPolySpec,
};
use tel_core::category::{gram_rank_at, hom_dim_generic, hom_dim_repsn_unit_std, parse_rational};
use tel_core::combinatorics::{bell, factorial, rencontres_row, IntegerPartition};
use tel_core::measures::{
    carleman_partial, compare_moments, complex_gaussian_moments, hankel_psd, poisson_moments, pushforward_2re,
    q_affine_fix_moments, q_fix_moments, ratio_to_f64, CompareOptions, EmpiricalMoments, ExactTable, MomentKind,
    MomentReport,
};
use tel_core::randomlab::{
    aff_fix_experiment, character_mc_experiment, character_moment_exact, cycle_poisson_experiment,
    exact_aff_fix_law, exact_gl_fix_law, fix_experiment, gl_fix_experiment, law_as_distribution, stabilize,
    trace_experiment, EmpiricalDistribution,
};
use tel_core::{Error, Result};

use crate::args::{Command, GroupArgs};
use crate::io::{csv_text, read_empirical, read_exact_table, Outcome};

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable result")
}

/// `poisson:LAMBDA`, `bell`, `cgauss`, `qfix:Q`, `qaffine:Q` or `2re-cgauss`.
pub fn parse_law(spec: &str, max_order: usize) -> Result<ExactTable> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let q = || -> Result<u64> {
        arg.trim()
            .parse()
            .or_else(|_| invalid(format!("{name} needs an integer field size, got {arg:?}")))
    };
    match name.trim() {
        "poisson" => poisson_moments(&parse_rational(arg)?, max_order),
        "bell" => poisson_moments(&BigRational::one(), max_order),
        "cgauss" => Ok(complex_gaussian_moments(max_order)),
        "2re-cgauss" => pushforward_2re(&complex_gaussian_moments(max_order)),
        "qfix" => q_fix_moments(q()?, max_order),
        "qaffine" => q_affine_fix_moments(q()?, max_order),
        _ => invalid(format!(
            "unknown law {spec:?}; use poisson:LAMBDA, bell, cgauss, 2re-cgauss, qfix:Q or qaffine:Q"
        )),
    }
}

fn parse_lambda(s: &str) -> Result<IntegerPartition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(IntegerPartition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .or_else(|_| invalid(format!("--lambda expects a comma list of positive parts, got {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerPartition::new(parts)
}

fn compare(emp: &EmpiricalMoments, target: &ExactTable, z: f64, support: Option<u64>) -> Result<MomentReport> {
    compare_moments(
        emp,
        target,
        None,
        &CompareOptions {
            z,
            support_base: support,
        },
    )
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Bell { k } => {
            let b = bell(*k);
            Ok(Outcome {
                csv: csv_text(&["k", "bell"], [[k.to_string(), b.to_string()]]),
                json: json!({ "k": k, "bell": b.to_string() }),
            })
        }
        Command::Homdim { k, n } => {
            let dim = match n {
                None => hom_dim_generic(0, *k),
                Some(n) => hom_dim_repsn_unit_std(*k, *n)?,
            };
            let n_str = n.map_or("generic".to_string(), |n| n.to_string());
            Ok(Outcome {
                csv: csv_text(&["k", "n", "dim"], [[k.to_string(), n_str.clone(), dim.to_string()]]),
                json: json!({ "k": k, "n": n, "dim": dim.to_string() }),
            })
        }
        Command::GramRank { k, n } => {
            let r = gram_rank_at(*k, *n)?;
            Ok(Outcome {
                csv: csv_text(&["k", "n", "rank"], [[k.to_string(), n.to_string(), r.to_string()]]),
                json: json!({ "k": k, "n": n, "rank": r }),
            })
        }
        Command::Rencontres { n } => {
            if *n == 0 {
                return invalid("--n must be at least 1");
            }
            let row = rencontres_row(*n);
            let total = BigInt::from(factorial(*n as u64));
            let rows: Vec<[String; 3]> = row
                .iter()
                .enumerate()
                .map(|(r, c)| {
                    let p = BigRational::new(c.clone().into(), total.clone());
                    [r.to_string(), c.to_string(), p.to_string()]
                })
                .collect();
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "r": r[0], "count": r[1], "probability": r[2] }))
                .collect();
            Ok(Outcome {
                csv: csv_text(&["r", "count", "probability"], rows),
                json: json!({ "n": n, "rows": json_rows }),
            })
        }
        Command::PermFix { n, mc, max_order } => {
            let dist = fix_experiment(*n, mc.trials, mc.seed)?;
            let emp = dist.moments(*max_order)?;
            let report = compare(&emp, &poisson_moments(&BigRational::one(), *max_order)?, 4.0, None)?;
            let probs: Vec<Value> = (0..=(*n).min(10))
                .map(|r| {
                    let (p, se) = dist.probability(r as i64);
                    let target = tel_core::arith::poisson1_mass(r);
                    json!({
                        "r": r, "empirical": p, "stderr": se, "target": target,
                        "pass": (p - target).abs() <= 4.0 * se + 1e-12,
                    })
                })
                .collect();
            Ok(Outcome {
                csv: dist.to_csv(),
                json: json!({ "distribution": dist, "empirical": emp, "moments": report, "probabilities": probs }),
            })
        }
        Command::Cycles { n, imax, mc, max_order } => {
            let exp = cycle_poisson_experiment(*n, mc.trials, *imax, mc.seed)?;
            let mut rows = Vec::new();
            let mut reports = Vec::new();
            for (i, d) in exp.per_cycle.iter().enumerate() {
                for (v, c) in &d.histogram {
                    rows.push([(i + 1).to_string(), v.to_string(), c.to_string()]);
                }
                let lam = BigRational::new(1.into(), BigInt::from(i + 1));
                let emp = d.moments(*max_order)?;
                reports.push(json!({
                    "cycle_length": i + 1,
                    "moments": compare(&emp, &poisson_moments(&lam, *max_order)?, 4.0, None)?,
                }));
            }
            Ok(Outcome {
                csv: csv_text(&["cycle_length", "value", "count"], rows),
                json: json!({ "experiment": exp, "per_cycle_moments": reports }),
            })
        }
        Command::CharMoments { lambda, n, a, mc, seed, stabilize: stab } => {
            let lam = parse_lambda(lambda)?;
            let exact: Vec<BigRational> = (0..=*a)
                .map(|k| character_moment_exact(&lam, *n, k))
                .collect::<Result<_>>()?;
            let mut json = json!({
                "lambda": lam.parts(),
                "n": n,
                "exact": exact.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            if *stab {
                let reports: Vec<Value> = (1..=*a)
                    .map(|k| stabilize(&lam, k, *n).map(|(_, s)| to_json(&s)))
                    .collect::<Result<_>>()?;
                json["stabilization"] = Value::Array(reports);
            }
            let csv = match mc {
                None => csv_text(
                    &["a", "exact", "value"],
                    exact
                        .iter()
                        .enumerate()
                        .map(|(k, v)| [k.to_string(), v.to_string(), ratio_to_f64(v).to_string()]),
                ),
                Some(trials) => {
                    let dist = character_mc_experiment(&lam, *n, *trials, *seed)?;
                    let emp = dist.moments(*a as usize)?;
                    let report = compare(&emp, &ExactTable::real(exact.clone())?, 4.0, None)?;
                    let csv = report.to_csv();
                    json["distribution"] = to_json(&dist);
                    json["empirical"] = to_json(&emp);
                    json["moments"] = to_json(&report);
                    csv
                }
            };
            Ok(Outcome { csv, json })
        }
        Command::GlFix(g) => group_fix(g, false),
        Command::AffFix(g) => group_fix(g, true),
        Command::UnitaryTrace { n, mc, max_order } => {
            let emp = trace_experiment(*n, mc.trials, *max_order, mc.seed)?;
            let report = compare(&emp, &complex_gaussian_moments(*max_order), 4.0, None)?;
            Ok(Outcome {
                csv: report.to_csv(),
                json: json!({ "n": n, "empirical": emp, "moments": report }),
            })
        }
        Command::MomentsCompare { empirical, target, max_order, z, support_base } => {
            let emp = read_empirical(empirical, *max_order)?;
            let order = emp.table.max_order();
            let table = parse_law(target, order)?;
            if table.kind() != emp.table.kind() {
                let want = if emp.table.kind() == MomentKind::Real { "a real" } else { "a complex" };
                return invalid(format!("the empirical table needs {want} target law, got {target}"));
            }
            let report = compare(&emp, &table, *z, *support_base)?;
            Ok(Outcome {
                csv: report.to_csv(),
                json: json!({ "target": target, "moments": report }),
            })
        }
        Command::Hankel { table, law, order } => {
            let t = match (table, law) {
                (Some(path), None) => read_exact_table(path)?,
                (None, Some(law)) => parse_law(law, 2 * order)?,
                _ => return invalid("give exactly one of --table or --law"),
            };
            let verdict = hankel_psd(&t, *order)?;
            let carleman = if t.max_order() >= 2 * order && *order >= 1 {
                carleman_partial(&t, *order).ok()
            } else {
                None
            };
            let witness = verdict
                .witness
                .as_ref()
                .map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";"))
                .unwrap_or_default();
            let carleman_str = carleman.map_or(String::new(), |c| c.to_string());
            Ok(Outcome {
                csv: csv_text(
                    &["order", "psd", "witness", "carleman_partial"],
                    [[order.to_string(), verdict.psd.to_string(), witness, carleman_str]],
                ),
                json: json!({
                    "order": order,
                    "psd": verdict.psd,
                    "witness": verdict.witness.map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                    "carleman_partial": carleman,
                }),
            })
        }
        Command::PseudoRoots { pmax, spec, summary } => {
            let spec: PseudoPolySpec = spec.parse()?;
            let table = rho_table(&spec, *pmax)?;
            let hist = summarize_rho(&table, *pmax);
            let csv = if *summary {
                let mut rows: Vec<[String; 4]> = hist
                    .rows
                    .iter()
                    .map(|r| [r.r.to_string(), r.count.to_string(), r.fraction.to_string(), r.target.to_string()])
                    .collect();
                rows.push([
                    "overflow".into(),
                    hist.overflow.to_string(),
                    (hist.overflow as f64 / hist.prime_count.max(1) as f64).to_string(),
                    String::new(),
                ]);
                csv_text(&["r", "count", "fraction", "target"], rows)
            } else {
                csv_text(&["p", "rho"], table.iter().map(|(p, r)| [p.to_string(), r.to_string()]))
            };
            Ok(Outcome {
                csv,
                json: json!({ "spec": spec.to_string(), "histogram": hist, "per_prime": table }),
            })
        }
        Command::Expsum { p, max_order, mode, spec, seed } => {
            let spec: PseudoPolySpec = spec.parse()?;
            let mode = match mode.trim() {
                "exact" => ExpsumMode::Exact,
                m => match m.strip_prefix("sampled:").map(str::parse::<u64>) {
                    Some(Ok(count)) => ExpsumMode::Sampled { count, seed: *seed },
                    _ => return invalid(format!("--mode must be exact or sampled:N, got {m:?}")),
                },
            };
            let res = expsum_moments(&spec, *p, *max_order, &mode)?;
            let target = complex_gaussian_moments(*max_order);
            let rows: Vec<[String; 6]> = res
                .moments
                .table
                .orders()
                .into_iter()
                .map(|(a, b)| {
                    let e = res.moments.table.get(a, b).expect("listed order");
                    let t = ratio_to_f64(target.get(a, b).expect("same order"));
                    [
                        a.to_string(),
                        b.to_string(),
                        e.value.re.to_string(),
                        e.value.im.to_string(),
                        t.to_string(),
                        e.stderr.to_string(),
                    ]
                })
                .collect();
            let mut json = to_json(&res);
            if mode == ExpsumMode::Exact {
                json["second_moment_identity"] = Value::String(second_moment_identity(&spec, *p)?.to_string());
            }
            Ok(Outcome {
                csv: csv_text(&["a_order", "b_order", "value_re", "value_im", "target", "stderr"], rows),
                json,
            })
        }
        Command::HallCheck { bound, spec } => {
            let spec: PseudoPolySpec = spec.parse()?;
            let r = hall_check(&spec, *bound);
            let (m, n) = r.first_failure.map_or((String::new(), String::new()), |(m, n)| (m.to_string(), n.to_string()));
            Ok(Outcome {
                csv: csv_text(
                    &["spec", "bound", "holds", "first_failure_m", "first_failure_n"],
                    [[spec.to_string(), bound.to_string(), r.holds.to_string(), m, n]],
                ),
                json: json!({ "spec": spec.to_string(), "report": r }),
            })
        }
    }
}

fn group_fix(g: &GroupArgs, affine: bool) -> Result<Outcome> {
    let k = g.max_order.unwrap_or(g.n);
    let dist: EmpiricalDistribution = if g.exact {
        let law = if affine { exact_aff_fix_law(g.n, g.q)? } else { exact_gl_fix_law(g.n, g.q)? };
        law_as_distribution(&law)
    } else {
        if g.trials == 0 {
            return invalid("--trials must be positive unless --exact is given");
        }
        if affine {
            aff_fix_experiment(g.n, g.q, g.trials, g.seed)?
        } else {
            gl_fix_experiment(g.n, g.q, g.trials, g.seed)?
        }
    };
    let target = if affine { q_affine_fix_moments(g.q, k)? } else { q_fix_moments(g.q, k)? };
    let emp = if g.exact {
        let exact: Vec<f64> = (0..=k as u32).map(|j| ratio_to_f64(&dist.moment(j))).collect();
        EmpiricalMoments {
            support: Some(dist.histogram.keys().copied().collect()),
            trials: dist.trials,
            ..EmpiricalMoments::exact_real(&exact)
        }
    } else {
        dist.moments(k)?
    };
    let report = compare(&emp, &target, 4.0, Some(g.q))?;
    let exact_moments: Option<Vec<String>> =
        g.exact.then(|| (0..=k as u32).map(|j| dist.moment(j).to_string()).collect());
    Ok(Outcome {
        csv: dist.to_csv(),
        json: json!({
            "distribution": dist,
            "exact_moments": exact_moments,
            "empirical": emp,
            "moments": report,
        }),
    })
}
