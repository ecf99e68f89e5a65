//! One handler per subcommand; each returns a [`Report`] or a library error.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::json;

use freegauss::chains::{graph, return_time_sum, simulate, stationary, transition_matrix, Chain};
use freegauss::checks::{moment_test_set, parse_module, run_checks, Level};
use freegauss::cumulants::gaussian::riordan;
use freegauss::cumulants::lattice::{cumulants_by_inversion, moments_by_zeta};
use freegauss::cumulants::{
    boolean_from_moments, classical_from_moments, dilate_free_variance, free_convolve, free_from_moments,
    free_power, gaussian_free_cumulants, gaussian_moments, moments_from_boolean, moments_from_classical,
    moments_from_free, nc_innerpoint_sum, semicircle_free_cumulants, weighted_pairing_moment, WeightKind,
    WeightSpec,
};
use freegauss::hopf::bf::{
    bf_associativity_check, bf_closure_check, bf_coassociativity_check, bf_counit_check,
};
use freegauss::hopf::{
    antipode, antipode_check, associativity_check, bf_coproduct, bf_over, closure_check,
    coassociativity_check, counit_check, hilbert_dimension, label_independence_check, lr_coproduct,
    lr_product, multiplicativity_check, LabeledTree, LawReport, OrderedTree,
};
use freegauss::partitions::{count_connected_pairings, LatticeKind};
use freegauss::rational::{parse_rational, to_f64, RationalSeq, Role};
use freegauss::transforms::{
    cf_eval, decomposition_residual, density_eval, f_eval, f_trajectory, fid_test, g_eval, residual_grid,
    riccati_residual, voiculescu_phi, Precision, Verdict,
};
use freegauss::trees_dyck::{dyck_to_tree, enumerate_dyck, mu_operator, nu_operator, s_via_trees, DyckWord};
use freegauss::{Error, Result};

use crate::cli::*;
use crate::report::Report;

/// Largest Im φ tolerated on the lower-half-plane check for c ≤ 0.
const PHI_SLACK: f64 = 1e-8;

pub fn run(cli: &Cli) -> Result<Report> {
    let precision = match cli.precision {
        PrecisionArg::Double => Precision::Double,
        PrecisionArg::Extended => Precision::Extended,
    };
    match &cli.command {
        Command::Sequence(a) => sequence(a),
        Command::Cumulants(a) => match &a.action {
            CumulantsAction::Convert(c) => convert(c),
            CumulantsAction::Weighted(w) => weighted(w),
        },
        Command::Chains(a) => chains(a, cli.seed),
        Command::Hopf(a) => hopf(a),
        Command::Dyck(a) => dyck(a),
        Command::Fid(a) => fid(a),
        Command::Transform(a) => transform(a, precision),
        Command::Density(a) => density(a, precision),
        Command::Check(a) => check(a),
    }
}

fn dec(r: &BigRational) -> String {
    format!("{:.12e}", to_f64(r))
}

fn exact_row(n: usize, v: &BigRational) -> Vec<String> {
    vec![n.to_string(), v.to_string(), dec(v)]
}

fn seq_table(seq: &RationalSeq, skip: usize) -> Vec<Vec<String>> {
    seq.values().iter().enumerate().skip(skip).map(|(n, v)| exact_row(n, v)).collect()
}

fn even_orders(max: usize) -> Result<Vec<usize>> {
    if max < 2 {
        return Err(Error::domain("max must be at least 2"));
    }
    Ok((2..=max).step_by(2).collect())
}

fn sequence(a: &SequenceArgs) -> Result<Report> {
    let (values, orders): (Vec<BigRational>, Vec<usize>) = match a.name {
        SequenceName::A000699 => {
            let orders = even_orders(a.max)?;
            let ints: Vec<BigInt> = match a.method {
                SequenceMethod::Recursion => riordan(a.max / 2)[1..].to_vec(),
                SequenceMethod::Pairings => {
                    orders.iter().map(|&n| count_connected_pairings(n)).collect::<Result<_>>()?
                }
                SequenceMethod::Trees => orders.iter().map(|&n| s_via_trees(n / 2 - 1)).collect::<Result<_>>()?,
            };
            (ints.into_iter().map(BigRational::from_integer).collect(), orders)
        }
        SequenceName::Innerpoint => {
            let orders = even_orders(a.max)?;
            let ints = orders.iter().map(|&n| nc_innerpoint_sum(n)).collect::<Result<Vec<_>>>()?;
            (ints.into_iter().map(BigRational::from_integer).collect(), orders)
        }
        SequenceName::GaussianFree => {
            let v = gaussian_free_cumulants(a.max)?.free.into_values();
            let n = v.len();
            (v, (0..n).collect())
        }
        SequenceName::GaussianMoments => {
            let v = gaussian_moments(a.max).into_values();
            let n = v.len();
            (v, (0..n).collect())
        }
        SequenceName::Shifted => {
            let v = gaussian_free_cumulants(a.max + 2)?.shifted.into_values();
            let n = v.len();
            (v, (0..n).collect())
        }
    };
    let rows = orders.iter().zip(&values).map(|(&n, v)| exact_row(n, v)).collect();
    let text: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    Ok(Report::new(json!({ "orders": orders, "values": text }))
        .line(text.join(","))
        .table(vec!["n", "value", "decimal"], rows))
}

fn parse_seq(s: &str, role: Role) -> Result<RationalSeq> {
    let v = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    RationalSeq::new(v, role)
}

fn convert(a: &ConvertArgs) -> Result<Report> {
    let to_cumulants = a.direction == Direction::ToCumulants;
    let (role, lattice) = match a.kind {
        CumulantKind::Classical => (Role::Classical, LatticeKind::All),
        CumulantKind::Free => (Role::Free, LatticeKind::Noncrossing),
        CumulantKind::Boolean => (Role::Boolean, LatticeKind::Interval),
    };
    let input = match (&a.input, a.distribution) {
        (Some(s), _) => parse_seq(s, if to_cumulants { Role::Moment } else { role })?,
        (None, Some(d)) => {
            if !to_cumulants {
                return Err(Error::domain("a named law supplies moments; use --direction to-cumulants"));
            }
            let name = d.to_possible_value_name();
            moment_test_set(a.order)
                .into_iter()
                .find(|(n, _)| *n == name)
                .map(|(_, s)| s)
                .ok_or_else(|| Error::domain(format!("unknown law {name}")))?
        }
        (None, None) => return Err(Error::domain("need --input or --distribution")),
    };
    let n = input.order();
    let output = match (a.method, to_cumulants, a.kind) {
        (ConvertMethod::Lattice, true, _) => cumulants_by_inversion(lattice, &input, n)?,
        (ConvertMethod::Lattice, false, _) => moments_by_zeta(lattice, &input, n)?,
        (ConvertMethod::Series, true, CumulantKind::Classical) => classical_from_moments(&input)?,
        (ConvertMethod::Series, true, CumulantKind::Free) => free_from_moments(&input)?,
        (ConvertMethod::Series, true, CumulantKind::Boolean) => boolean_from_moments(&input)?,
        (ConvertMethod::Series, false, CumulantKind::Classical) => moments_from_classical(&input)?,
        (ConvertMethod::Series, false, CumulantKind::Free) => moments_from_free(&input)?,
        (ConvertMethod::Series, false, CumulantKind::Boolean) => moments_from_boolean(&input)?,
    };
    let skip = usize::from(to_cumulants);
    Ok(Report::new(json!({ "input": input, "output": output }))
        .line(format!("{output}"))
        .table(vec!["n", "value", "decimal"], seq_table(&output, skip)))
}

trait PossibleValueName {
    fn to_possible_value_name(&self) -> String;
}

impl<T: clap::ValueEnum> PossibleValueName for T {
    fn to_possible_value_name(&self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

fn weighted(a: &WeightedArgs) -> Result<Report> {
    let p = parse_rational(&a.param)?;
    let orders = even_orders(a.max)?;
    let kind = match a.weight {
        WeightArg::Cc => WeightKind::CcPower,
        WeightArg::Cr => WeightKind::CrPower,
        WeightArg::Bdj => WeightKind::Bdj,
    };
    let fc = gaussian_free_cumulants(a.max)?.free;
    // the cumulant-route moments, where a closed form exists
    let reference: Option<RationalSeq> = match a.weight {
        WeightArg::Cc => Some(moments_from_free(&free_power(&fc, &p)?)?),
        WeightArg::Bdj => {
            let one = BigRational::from_integer(1.into());
            let mix = free_convolve(
                &dilate_free_variance(&fc, &p)?,
                &dilate_free_variance(&semicircle_free_cumulants(a.max), &(one - &p))?,
            )?;
            Some(moments_from_free(&mix)?)
        }
        WeightArg::Cr if p == BigRational::from_integer(1.into()) => Some(gaussian_moments(a.max)),
        WeightArg::Cr if p == BigRational::from_integer(0.into()) => {
            Some(moments_from_free(&semicircle_free_cumulants(a.max))?)
        }
        WeightArg::Cr => None,
    };
    let spec = WeightSpec::new(kind, p);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut mismatch = None;
    for &n in &orders {
        let w = weighted_pairing_moment(n, &spec)?;
        let r = reference.as_ref().map(|s| s.values()[n].clone());
        if let Some(r) = &r {
            if *r != w && mismatch.is_none() {
                mismatch = Some(format!("2n = {n}: pairing sum {w} vs cumulant route {r}"));
            }
        }
        rows.push(vec![
            n.to_string(),
            w.to_string(),
            dec(&w),
            r.as_ref().map_or("-".into(), |r| r.to_string()),
        ]);
        values.push(json!({
            "order": n,
            "pairing_sum": w.to_string(),
            "cumulant_route": r.map(|r| r.to_string()),
        }));
    }
    Ok(Report::new(json!({ "weight": spec, "values": values }))
        .table(vec!["2n", "pairing_sum", "decimal", "cumulant_route"], rows)
        .finding(mismatch))
}

fn chains(a: &ChainsArgs, seed: u64) -> Result<Report> {
    let chain = match a.model {
        Model::Mtr => Chain::Mtr,
        Model::Nt => Chain::Nt,
    };
    let p = transition_matrix(chain, a.n)?;
    match a.action {
        ChainAction::Stationary => {
            let pi = stationary(&p)?;
            let rows = pi
                .entries
                .iter()
                .map(|e| vec![e.state.clone(), e.weight.to_string(), dec(&e.weight), e.weight.recip().to_string()])
                .collect();
            Ok(Report::new(&pi).table(vec!["state", "weight", "decimal", "reciprocal"], rows))
        }
        ChainAction::Graph => {
            let pi = stationary(&p)?;
            let g = graph(&p, &pi);
            let rows = g
                .iter()
                .flat_map(|node| {
                    node.out
                        .iter()
                        .map(|e| vec![node.state.clone(), node.weight.clone(), e.to.clone(), e.weight.clone()])
                })
                .collect();
            Ok(Report::new(json!({ "nodes": g })).table(vec!["from", "from_weight", "to", "probability"], rows))
        }
        ChainAction::ReturnTimes => {
            let r = return_time_sum(a.n, chain)?;
            let row = vec![
                a.n.to_string(),
                r.sum.to_string(),
                r.states.to_string(),
                r.mean_return_time.to_string(),
            ];
            Ok(Report::new(&r).table(vec!["n", "sum", "states", "mean_return_time"], vec![row]))
        }
        ChainAction::Simulate => {
            let pi = stationary(&p)?;
            let emp = simulate(&p, a.steps, seed);
            let tv = emp.tv_distance(&pi);
            let rows = emp
                .states
                .iter()
                .zip(&emp.frequencies)
                .zip(&pi.entries)
                .map(|((s, f), e)| vec![s.clone(), format!("{f:.6}"), dec(&e.weight)])
                .collect();
            Ok(Report::new(json!({ "empirical": emp, "tv_distance": tv }))
                .line(format!("total variation distance {tv:.6e} after {} steps (seed {seed})", a.steps))
                .table(vec!["state", "frequency", "exact"], rows))
        }
    }
}

fn ordered(s: Option<&String>, flag: &str) -> Result<OrderedTree> {
    let s = s.ok_or_else(|| Error::domain(format!("--{flag} is required")))?;
    OrderedTree::new(&LabeledTree::from_str(s)?)
}

fn hopf(a: &HopfArgs) -> Result<Report> {
    let tensor_rows = |terms: Vec<freegauss::hopf::tree::TensorTerm>| {
        let rows = terms
            .iter()
            .map(|t| vec![t.left.to_string(), t.right.to_string(), t.coefficient.clone()])
            .collect();
        Report::new(&terms).table(vec!["left", "right", "coefficient"], rows)
    };
    let tree_rows = |terms: Vec<freegauss::hopf::tree::TreeTerm>| {
        let rows = terms
            .iter()
            .map(|t| vec![t.tree.to_string(), t.coefficient.clone()])
            .collect();
        Report::new(&terms).table(vec!["tree", "coefficient"], rows)
    };
    match a.action {
        HopfAction::Coproduct => Ok(tensor_rows(lr_coproduct(&ordered(a.tree.as_ref(), "tree")?)?.to_terms())),
        HopfAction::BfCoproduct => Ok(tensor_rows(bf_coproduct(&ordered(a.tree.as_ref(), "tree")?)?.to_terms())),
        HopfAction::Product => {
            let s = ordered(a.tree.as_ref(), "tree")?;
            let t = ordered(a.other.as_ref(), "other")?;
            Ok(tree_rows(lr_product(&s, &t)?.to_terms()))
        }
        HopfAction::Over => {
            let s = ordered(a.tree.as_ref(), "tree")?;
            let t = ordered(a.other.as_ref(), "other")?;
            let o = bf_over(&s, &t)?;
            Ok(Report::new(&o).table(vec!["tree"], vec![vec![o.to_string()]]))
        }
        HopfAction::Antipode => Ok(tree_rows(antipode(&ordered(a.tree.as_ref(), "tree")?)?.to_terms())),
        HopfAction::Laws => {
            let n = a.n;
            let checks: [fn(usize) -> Result<LawReport>; 11] = [
                coassociativity_check,
                counit_check,
                antipode_check,
                associativity_check,
                multiplicativity_check,
                closure_check,
                label_independence_check,
                bf_associativity_check,
                bf_closure_check,
                bf_coassociativity_check,
                bf_counit_check,
            ];
            let reports = checks.iter().map(|f| f(n)).collect::<Result<Vec<_>>>()?;
            let failed = reports
                .iter()
                .filter(|r| !r.holds)
                .map(|r| format!("{} fails on {}", r.law, r.counterexample.as_deref().unwrap_or("?")))
                .collect::<Vec<_>>();
            let rows = reports
                .iter()
                .map(|r| vec![r.law.to_string(), r.cases.to_string(), r.holds.to_string()])
                .collect();
            Ok(Report::new(&reports)
                .table(vec!["law", "cases", "holds"], rows)
                .finding((!failed.is_empty()).then(|| failed.join("; "))))
        }
        HopfAction::Dimensions => {
            let dims = (0..=a.n).map(hilbert_dimension).collect::<Result<Vec<_>>>()?;
            let rows = dims.iter().enumerate().map(|(n, d)| vec![n.to_string(), d.to_string()]).collect();
            let text: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            Ok(Report::new(&text).table(vec!["n", "dimension"], rows))
        }
    }
}

fn dyck(a: &DyckArgs) -> Result<Report> {
    let word = || -> Result<DyckWord> {
        let s = a.word.as_ref().ok_or_else(|| Error::domain("--word is required"))?;
        DyckWord::from_str(s)
    };
    match a.action {
        DyckAction::Mu | DyckAction::Nu => {
            let w = word()?;
            let comb = if a.action == DyckAction::Mu { mu_operator(&w) } else { nu_operator(&w) };
            let rows = comb.terms().iter().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
            Ok(Report::new(&comb)
                .line(format!("{comb}"))
                .line(format!("coefficient sum {}", comb.coefficient_sum()))
                .table(vec!["word", "coefficient"], rows))
        }
        DyckAction::Factorial => {
            let w = word()?;
            let t = dyck_to_tree(&w);
            let f = w.factorial();
            Ok(Report::new(json!({ "word": w.to_string(), "tree": t.to_string(), "factorial": f.to_string() }))
                .table(vec!["word", "tree", "factorial"], vec![vec![w.to_string(), t.to_string(), f.to_string()]]))
        }
        DyckAction::Enumerate => {
            let words = enumerate_dyck(a.n)?;
            let rows: Vec<Vec<String>> = words
                .iter()
                .map(|w| {
                    let f = w.factorial();
                    vec![w.to_string(), dyck_to_tree(w).to_string(), f.to_string(), format!("1/{f}")]
                })
                .collect();
            let json_rows: Vec<_> = rows
                .iter()
                .map(|r| json!({ "word": r[0], "tree": r[1], "factorial": r[2] }))
                .collect();
            Ok(Report::new(json_rows).table(vec!["word", "tree", "factorial", "weight"], rows))
        }
    }
}

fn fid(a: &FidArgs) -> Result<Report> {
    let c = parse_rational(&a.c)?;
    let r = fid_test(&c, a.order)?;
    let verdict = match (r.verdict, r.first_negative_index) {
        (Verdict::Fail, Some(k)) => format!("FAIL at index {k}"),
        (Verdict::Fail, None) => "FAIL".to_string(),
        (Verdict::Pass, _) => format!("PASS through index {}", r.depth),
    };
    let finding = (r.verdict == Verdict::Fail)
        .then(|| format!("shifted free cumulants of μ_{c} are not positive definite: {verdict}"));
    let rows = r
        .beta_signs
        .iter()
        .enumerate()
        .map(|(k, s)| vec![k.to_string(), s.to_string()])
        .collect();
    let mut rep = Report::new(&r)
        .line(format!("c = {c}, order {}: {verdict}", a.order))
        .line(format!("convention: {}", r.convention));
    if let Some(note) = &r.note {
        rep = rep.line(format!("note: {note}"));
    }
    Ok(rep.table(vec!["k", "pivot_sign"], rows).finding(finding))
}

fn parse_complex(s: &str) -> Result<Complex64> {
    Complex64::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a complex number: {s:?}")))
}

fn parse_axis(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse(format!("axis must be LO:HI:N, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else { return Err(bad()) };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn points(a: &TransformArgs) -> Result<Vec<Complex64>> {
    if !a.z.is_empty() {
        return a.z.iter().map(|s| parse_complex(s)).collect();
    }
    if a.grid == "residual" {
        return Ok(residual_grid());
    }
    let (xs, ys) = a
        .grid
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("grid must be \"residual\" or X0:X1:NX,Y0:Y1:NY, got {:?}", a.grid)))?;
    let (xs, ys) = (parse_axis(xs)?, parse_axis(ys)?);
    Ok(xs.iter().flat_map(|&x| ys.iter().map(move |&y| Complex64::new(x, y))).collect())
}

fn num(x: f64) -> String {
    format!("{x:.15e}")
}

fn transform(a: &TransformArgs, precision: Precision) -> Result<Report> {
    let c = parse_rational(&a.c)?;
    if a.quantity == Quantity::Trajectory {
        return trajectory(a, &c);
    }
    let zs = points(a)?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut worst: f64 = 0.0;
    let (headers, tol) = match a.quantity {
        Quantity::G | Quantity::F => (vec!["re", "im", "value_re", "value_im", "method", "error_estimate"], None),
        Quantity::Phi => (vec!["re", "im", "phi_re", "phi_im", "w_re", "w_im", "residual"], None),
        Quantity::Riccati => (vec!["re", "im", "g_form", "f_form"], Some(a.riccati_tol)),
        Quantity::Decomposition => (vec!["re", "im", "identity", "dilation"], Some(a.decomposition_tol)),
        Quantity::Compare => (vec!["re", "im", "eval_re", "eval_im", "fraction_re", "fraction_im", "difference"], Some(a.agreement_tol)),
        Quantity::Trajectory => unreachable!("handled above"),
    };
    for z in zs {
        let mut row = vec![num(z.re), num(z.im)];
        match a.quantity {
            Quantity::G => {
                let e = g_eval(&c, z, precision)?;
                row.extend([num(e.value.re), num(e.value.im), method_name(e.method), num(e.error_estimate)]);
                values.push(json!({ "z": z, "evaluation": e }));
            }
            Quantity::F => {
                let e = g_eval(&c, z, precision)?;
                let f = f_eval(&c, z, precision)?;
                row.extend([num(f.re), num(f.im), method_name(e.method), num(e.error_estimate)]);
                values.push(json!({ "z": z, "value": f }));
            }
            Quantity::Phi => {
                let v = voiculescu_phi(&c, z, precision)?;
                worst = worst.max(v.phi.im);
                row.extend([num(v.phi.re), num(v.phi.im), num(v.w.re), num(v.w.im), num(v.residual)]);
                values.push(serde_json::to_value(v).expect("serializable"));
            }
            Quantity::Riccati => {
                let r = riccati_residual(&c, z, a.step, precision)?;
                worst = worst.max(r.g_form).max(r.f_form);
                row.extend([num(r.g_form), num(r.f_form)]);
                values.push(json!({ "z": z, "residual": r }));
            }
            Quantity::Decomposition => {
                let r = decomposition_residual(&c, z, precision)?;
                worst = worst.max(r.identity).max(r.dilation);
                row.extend([num(r.identity), num(r.dilation)]);
                values.push(json!({ "z": z, "residual": r }));
            }
            Quantity::Compare => {
                let g = g_eval(&c, z, precision)?.value;
                let f = cf_eval(&c, z, None, Precision::Extended)?.value;
                let d = (g - f).norm();
                worst = worst.max(d);
                row.extend([num(g.re), num(g.im), num(f.re), num(f.im), num(d)]);
                values.push(json!({ "z": z, "eval": g, "fraction": f, "difference": d }));
            }
            Quantity::Trajectory => unreachable!("handled above"),
        }
        rows.push(row);
    }
    let finding = match a.quantity {
        Quantity::Phi if c <= BigRational::from_integer(0.into()) && worst > PHI_SLACK => {
            Some(format!("Im φ = {worst:.3e} > 0 for c = {c}"))
        }
        _ => tol.filter(|&t| worst >= t).map(|t| format!("max residual {worst:.3e} ≥ tolerance {t:e}")),
    };
    let mut rep = Report::new(json!({ "c": c.to_string(), "points": values }));
    if a.quantity == Quantity::Phi {
        rep = rep.line(format!("max Im φ = {worst:.3e}"));
    } else if let Some(t) = tol {
        rep = rep.line(format!("max residual {worst:.3e} (tolerance {t:e})"));
    }
    Ok(rep.table(headers, rows).finding(finding))
}

fn method_name(m: freegauss::transforms::Method) -> String {
    serde_json::to_value(m).expect("serializable").as_str().unwrap_or_default().to_string()
}

fn trajectory(a: &TransformArgs, c: &BigRational) -> Result<Report> {
    let bad = || Error::Parse(format!("r-range must be LO:HI, got {:?}", a.r_range));
    let (lo, hi) = a.r_range.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let t = f_trajectory(c, lo, hi, a.ode_tol, a.sample_step)?;
    let opt = |v: Option<f64>| v.map_or("none".to_string(), num);
    let failed: Vec<String> = t
        .assertions
        .iter()
        .filter(|x| !x.holds)
        .map(|x| format!("{} ({})", x.name, x.detail))
        .collect();
    let mut rep = Report::new(&t)
        .line(format!("q0 = {}", opt(t.q0)))
        .line(format!("s_crit = {} (bound {})", opt(t.s_crit), num(t.critical_bound)))
        .line(format!("asymptote gap {}", num(t.asymptote_gap)));
    for x in &t.assertions {
        rep = rep.line(format!("{} {}: {}", if x.holds { "holds" } else { "FAILS" }, x.name, x.detail));
    }
    let rows = t.samples.iter().map(|s| vec![num(s.r), num(s.f), num(s.df)]).collect();
    Ok(rep
        .table(vec!["r", "f", "df"], rows)
        .finding((!failed.is_empty()).then(|| failed.join("; "))))
}

fn density(a: &DensityArgs, precision: Precision) -> Result<Report> {
    let c = parse_rational(&a.c)?;
    let bad = || Error::Parse(format!("range must be LO:HI:STEP, got {:?}", a.range));
    let parts: Vec<&str> = a.range.split(':').collect();
    let [lo, hi, step] = parts[..] else { return Err(bad()) };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let step: f64 = step.parse().map_err(|_| bad())?;
    if !(step > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    let mut rows = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    for k in 0..count {
        let u = lo + k as f64 * step;
        let d = density_eval(&c, u, a.eps, !a.no_richardson, precision)?;
        rows.push(vec![num(u), num(d)]);
        values.push([u, d]);
    }
    Ok(Report::new(json!({ "c": c.to_string(), "values": values })).table(vec!["u", "density"], rows))
}

fn check(a: &CheckArgs) -> Result<Report> {
    let modules = if a.modules.iter().any(|m| m == "all") {
        Vec::new()
    } else {
        a.modules.iter().map(|m| parse_module(m)).collect::<Result<Vec<_>>>()?
    };
    let level = match a.level {
        LevelArg::Desk => Level::Desk,
        LevelArg::Full => Level::Full,
    };
    let report = run_checks(&modules, level);
    let failed: Vec<String> = report.failures().map(|r| format!("{}: {}", r.module, r.name)).collect();
    // timings stay out of the output so it is byte-deterministic
    let results: Vec<_> = report
        .results
        .iter()
        .map(|r| json!({ "module": r.module, "name": r.name, "holds": r.holds, "detail": r.detail }))
        .collect();
    let rows = report
        .results
        .iter()
        .map(|r| {
            vec![
                r.module.to_string(),
                if r.holds { "PASS" } else { "FAIL" }.to_string(),
                r.name.to_string(),
                r.detail.clone(),
            ]
        })
        .collect();
    let passed = report.results.len() - failed.len();
    Ok(Report::new(json!({ "level": report.level, "holds": report.holds(), "results": results }))
        .line(format!("{passed}/{} checks hold", report.results.len()))
        .table(vec!["module", "status", "check", "detail"], rows)
        .finding((!failed.is_empty()).then(|| failed.join("; "))))
}
