//! The invariant suite behind `check`: one named, self-contained assertion per
//! module property, each reported with a short detail line.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chains::{return_time_sum, stationary, transition_matrix, Chain};
use crate::cumulants::lattice::Inversion;
use crate::cumulants::{
    boolean_from_moments, classical_from_moments, dilate_free_variance, free_convolve,
    free_from_moments, free_power, gaussian_free_cumulants, gaussian_moments, moments_from_free,
    nc_innerpoint_sum, semicircle_free_cumulants, weighted_pairing_moment, WeightKind, WeightSpec,
};
use crate::error::{Error, Result};
use crate::hopf::bf::{bf_associativity_check, bf_closure_check, bf_coassociativity_check, bf_counit_check};
use crate::hopf::{
    antipode_check, associativity_check, closure_check, coassociativity_check, counit_check,
    hilbert_dimension, label_independence_check, multiplicativity_check, LawReport,
};
use crate::partitions::{
    count_connected_pairings, enumerate_partitions, LatticeKind, MoebiusTable, Partition,
};
use crate::rational::{int, rat, RationalSeq};
use crate::transforms::{
    decomposition_residual, density_eval, f_trajectory, fid_test, formal_phi_ode_check,
    g_eval, cf_eval, jacobi_from_moments, moments_from_jacobi, mu_c_jacobi, residual_grid,
    riccati_residual, voiculescu_grid, Precision, Verdict,
};
use crate::transforms::voiculescu::voiculescu_default_grid;
use crate::trees_dyck::{
    count_anti_increasing_labelings, dyck_to_tree, enumerate_dyck, enumerate_trees, mu_operator,
    s_via_trees, tree_to_dyck, BinaryTree, DyckWord,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Seconds-scale sizes.
    #[default]
    Desk,
    /// The sizes of the acceptance suite; minutes.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Module {
    Partitions,
    Cumulants,
    TreesDyck,
    Chains,
    Hopf,
    Transforms,
}

impl Module {
    pub const ALL: [Module; 6] = [
        Module::Partitions,
        Module::Cumulants,
        Module::TreesDyck,
        Module::Chains,
        Module::Hopf,
        Module::Transforms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Module::Partitions => "partitions",
            Module::Cumulants => "cumulants",
            Module::TreesDyck => "trees_dyck",
            Module::Chains => "chains",
            Module::Hopf => "hopf",
            Module::Transforms => "transforms",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub level: Level,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.holds)
    }
}

type Outcome = Result<(bool, String)>;

struct Runner {
    module: &'static str,
    out: Vec<CheckResult>,
}

impl Runner {
    fn check(&mut self, name: &'static str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (holds, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, e.to_string()),
        };
        self.out.push(CheckResult {
            module: self.module,
            name,
            holds,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
}

fn law(r: LawReport) -> Outcome {
    let detail = match &r.counterexample {
        Some(c) => format!("{} fails on {c}", r.law),
        None => format!("{} on {} cases up to size {}", r.law, r.cases, r.max_size),
    };
    Ok((r.holds, detail))
}

fn bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `(1, 1, 4, 27, 248, 2830)`: `s_0 … s_10` of the Gaussian shifted sequence.
const SHIFTED: [i64; 6] = [1, 1, 4, 27, 248, 2830];

/// Moment sequences exercising all three conversion routes.
pub fn moment_test_set(order: usize) -> Vec<(&'static str, RationalSeq)> {
    let gen = |f: &dyn Fn(usize) -> BigRational| {
        RationalSeq::moments((0..=order).map(f).collect()).expect("m0 = 1")
    };
    let catalan = |n: usize| -> BigRational {
        if n % 2 == 1 {
            return BigRational::zero();
        }
        let k = n / 2;
        let mut c = BigInt::one();
        for i in 0..k {
            c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
        }
        BigRational::from_integer(c)
    };
    let bell = |n: usize| -> BigRational {
        // Bell numbers by the triangle
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![row.last().expect("nonempty").clone()];
            for x in &row {
                let v = next.last().expect("nonempty") + x;
                next.push(v);
            }
            row = next;
        }
        BigRational::from_integer(row[0].clone())
    };
    // (1/3)δ₀ + (2/3)δ_{1/2}: m_n = (2/3)(1/2)^n for n ≥ 1
    let two_atoms = |n: usize| -> BigRational {
        if n == 0 {
            BigRational::one()
        } else {
            rat(2, 3) * num_traits::pow(rat(1, 2), n)
        }
    };
    vec![
        ("gaussian", gaussian_moments(order)),
        ("semicircle", gen(&catalan)),
        ("rademacher", gen(&|n| int((n % 2 == 0) as i64))),
        ("poisson", gen(&bell)),
        ("two-atom", gen(&two_atoms)),
    ]
}

fn partitions_checks(level: Level, r: &mut Runner) {
    let n_max = if level == Level::Full { 10 } else { 8 };
    r.check("lattice sizes are Bell, Catalan and 2^(n-1)", || {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for n in 1..=n_max {
            let all = enumerate_partitions(n, LatticeKind::All)?.len();
            let nc = enumerate_partitions(n, LatticeKind::Noncrossing)?.len();
            let iv = enumerate_partitions(n, LatticeKind::Interval)?.len();
            if all != bell[n] || nc != catalan[n] || iv != 1 << (n - 1) {
                return Ok((false, format!("n = {n}: {all}, {nc}, {iv}")));
            }
        }
        Ok((true, format!("n ≤ {n_max}")))
    });
    r.check("Möbius function to the top", || {
        // μ(0̂, 1̂) is (-1)^{n-1}(n-1)! on L_n, (-1)^{n-1} C_{n-1} on NC_n, (-1)^{n-1} on I_n
        let catalan = [1i64, 1, 2, 5, 14, 42, 132, 429];
        for n in 1..=7usize {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let fact: i64 = (1..n as i64).product();
            let bottom = Partition::bottom(n)?;
            for (kind, want) in [
                (LatticeKind::All, sign * fact),
                (LatticeKind::Noncrossing, sign * catalan[n - 1]),
                (LatticeKind::Interval, sign),
            ] {
                let got = MoebiusTable::new(n, kind)?.to_top(&bottom);
                if got != want {
                    return Ok((false, format!("{kind:?}, n = {n}: {got} ≠ {want}")));
                }
            }
        }
        Ok((true, "n ≤ 7".into()))
    });
    r.check("connected pairings give 1, 1, 4, 27, 248, 2830", || {
        let got = (1..=6).map(|k| count_connected_pairings(2 * k)).collect::<Result<Vec<_>>>()?;
        Ok((got == bigints(&SHIFTED), format!("{got:?}")))
    });
}

fn cumulants_checks(level: Level, r: &mut Runner) {
    let n = if level == Level::Full { 10 } else { 8 };
    r.check("series and lattice conversions agree", || {
        let lattices = [LatticeKind::All, LatticeKind::Noncrossing, LatticeKind::Interval]
            .map(|k| Inversion::new(k, n))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        for (name, m) in moment_test_set(n) {
            let series = [classical_from_moments(&m)?, free_from_moments(&m)?, boolean_from_moments(&m)?];
            for (inv, series) in lattices.iter().zip(&series) {
                if inv.cumulants(&m)?.values()[1..] != series.values()[1..=n] {
                    return Ok((false, format!("{name}, {:?}", series.role())));
                }
            }
        }
        Ok((true, format!("5 sequences, n ≤ {n}")))
    });
    r.check("Gaussian shifted sequence equals pairings and inner-point sums", || {
        let g = gaussian_free_cumulants(12)?;
        for k in 0..=5 {
            let s = g.shifted.values()[2 * k].clone();
            let pairs = BigRational::from_integer(count_connected_pairings(2 * k + 2)?);
            let inner = if k == 0 {
                BigRational::one()
            } else {
                BigRational::from_integer(nc_innerpoint_sum(2 * k)?)
            };
            if s != pairs || s != inner {
                return Ok((false, format!("s_{} = {s}, {pairs}, {inner}", 2 * k)));
            }
        }
        Ok((true, "orders ≤ 12".into()))
    });
    r.check("free Gaussian powers match s^cc pairing sums", || {
        let fc = gaussian_free_cumulants(12)?.free;
        for s in [rat(1, 3), rat(1, 2), int(2), int(5)] {
            let m = moments_from_free(&free_power(&fc, &s)?)?;
            for two_n in (2..=12).step_by(2) {
                let w = weighted_pairing_moment(two_n, &WeightSpec::new(WeightKind::CcPower, s.clone()))?;
                if w != m.values()[two_n] {
                    return Ok((false, format!("s = {s}, 2n = {two_n}")));
                }
            }
        }
        Ok((true, "2n ≤ 12, four parameters".into()))
    });
    r.check("BDJ pairing sums match a Gaussian-semicircle free convolution", || {
        let fc = gaussian_free_cumulants(10)?.free;
        let sc = semicircle_free_cumulants(10);
        for b in [int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)] {
            let mix = free_convolve(
                &dilate_free_variance(&fc, &b)?,
                &dilate_free_variance(&sc, &(BigRational::one() - &b))?,
            )?;
            let m = moments_from_free(&mix)?;
            for two_n in (2..=10).step_by(2) {
                let w = weighted_pairing_moment(two_n, &WeightSpec::new(WeightKind::Bdj, b.clone()))?;
                if w != m.values()[two_n] {
                    return Ok((false, format!("b = {b}, 2n = {two_n}: {w} vs {}", m.values()[two_n])));
                }
            }
        }
        Ok((true, "2n ≤ 10, b ∈ {0, 1/4, 1/2, 3/4, 1}".into()))
    });
    r.check("crossing weight interpolates double factorials and Catalan numbers", || {
        let ones = [1i64, 3, 15, 105, 945];
        let cat = [1i64, 2, 5, 14, 42];
        for k in 1..=5 {
            let q1 = weighted_pairing_moment(2 * k, &WeightSpec::new(WeightKind::CrPower, int(1)))?;
            let q0 = weighted_pairing_moment(2 * k, &WeightSpec::new(WeightKind::CrPower, int(0)))?;
            if q1 != int(ones[k - 1]) || q0 != int(cat[k - 1]) {
                return Ok((false, format!("2n = {}", 2 * k)));
            }
        }
        Ok((true, "2n ≤ 10".into()))
    });
}

fn trees_dyck_checks(level: Level, r: &mut Runner) {
    let n_max = if level == Level::Full { 7 } else { 6 };
    r.check("Σ t! over trees gives the shifted sequence", || {
        let got = (0..=5).map(s_via_trees).collect::<Result<Vec<_>>>()?;
        Ok((got == bigints(&SHIFTED), format!("{got:?}")))
    });
    r.check("t! counts anti-increasing labelings", || {
        for n in 1..=6 {
            for t in enumerate_trees(n)? {
                if count_anti_increasing_labelings(&t)? != t.factorial() {
                    return Ok((false, format!("tree {t}")));
                }
            }
        }
        Ok((true, "n ≤ 6".into()))
    });
    r.check("tree/Dyck bijection round-trips and preserves factorials", || {
        for n in 0..=n_max {
            for t in enumerate_trees(n)? {
                let w = tree_to_dyck(&t);
                if dyck_to_tree(&w) != t || w.factorial() != t.factorial() {
                    return Ok((false, format!("tree {t}")));
                }
            }
        }
        Ok((true, format!("n ≤ {n_max}")))
    });
    r.check("μ(UUDUDD) = UUDUDD + 2·UUDDUD + UDUDUD", || {
        let w: DyckWord = "UUDUDD".parse()?;
        let m = mu_operator(&w);
        let want = [("UUDUDD", 1), ("UUDDUD", 2), ("UDUDUD", 1)];
        let ok = m.terms().len() == 3
            && want.iter().all(|(s, k)| s.parse().map(|x: DyckWord| m.coefficient(&x) == int(*k)).unwrap_or(false));
        Ok((ok, m.to_string()))
    });
    r.check("μ coefficient sums equal n+1", || {
        for n in 0..=5 {
            for w in enumerate_dyck(n)? {
                if mu_operator(&w).coefficient_sum() != int(n as i64 + 1) {
                    return Ok((false, format!("word {w}")));
                }
            }
        }
        Ok((true, "n ≤ 5".into()))
    });
}

fn chains_checks(level: Level, r: &mut Runner) {
    let n_max = if level == Level::Full { 5 } else { 4 };
    r.check("stationary laws are 1/w! and 1/t!", || {
        for n in 1..=n_max {
            for chain in [Chain::Nt, Chain::Mtr] {
                let pi = stationary(&transition_matrix(chain, n)?)?;
                let mut total = BigRational::zero();
                for e in &pi.entries {
                    let fact = match chain {
                        Chain::Nt => e.state.parse::<DyckWord>()?.factorial(),
                        Chain::Mtr => e.state.parse::<BinaryTree>()?.factorial(),
                    };
                    if e.weight != BigRational::new(BigInt::one(), fact) {
                        return Ok((false, format!("{chain:?}, n = {n}, state {}", e.state)));
                    }
                    total += &e.weight;
                }
                if !total.is_one() {
                    return Ok((false, format!("{chain:?}, n = {n}: total {total}")));
                }
            }
        }
        Ok((true, format!("n ≤ {n_max}")))
    });
    r.check("return-time sums equal the shifted sequence", || {
        for n in 1..=n_max {
            for chain in [Chain::Nt, Chain::Mtr] {
                let got = return_time_sum(n, chain)?.sum;
                if got != BigInt::from(SHIFTED[n]) {
                    return Ok((false, format!("{chain:?}, n = {n}: {got}")));
                }
            }
        }
        Ok((true, format!("n ≤ {n_max}")))
    });
}

fn hopf_checks(level: Level, r: &mut Runner) {
    let n = if level == Level::Full { 4 } else { 3 };
    r.check("coassociativity", || law(coassociativity_check(n)?));
    r.check("counit", || law(counit_check(n)?));
    r.check("antipode", || law(antipode_check(n)?));
    r.check("product associativity", || law(associativity_check(3)?));
    r.check("closure under the product", || law(closure_check(n)?));
    r.check("label independence", || law(label_independence_check(n)?));
    r.check("coproduct is multiplicative", || law(multiplicativity_check(n)?));
    r.check("charge product associativity", || law(bf_associativity_check(3)?));
    r.check("charge closure", || law(bf_closure_check(n)?));
    r.check("charge coassociativity", || law(bf_coassociativity_check(n)?));
    r.check("charge counit", || law(bf_counit_check(n)?));
    r.check("Hilbert dimensions follow the shifted sequence", || {
        let top = if level == Level::Full { 4 } else { 3 };
        let got = (0..=top).map(hilbert_dimension).collect::<Result<Vec<_>>>()?;
        Ok((got == bigints(&SHIFTED[..=top]), format!("{got:?}")))
    });
}

fn transforms_checks(level: Level, r: &mut Runner) {
    r.check("Jacobi round trip", || {
        for c in [int(0), rat(9, 10), rat(-1, 2), int(1)] {
            let j = mu_c_jacobi(&c, 40)?;
            let back = jacobi_from_moments(&moments_from_jacobi(&j, 80)?)?;
            if back.params != j || back.breakdown.is_some() {
                return Ok((false, format!("c = {c}")));
            }
        }
        Ok((true, "depth 40".into()))
    });
    r.check("Gaussian Jacobi pipeline gives connected pairings", || {
        let m = moments_from_jacobi(&mu_c_jacobi(&int(0), 7)?, 14)?;
        let fc = free_from_moments(&m)?;
        for k in 1..=6 {
            if fc.values()[2 * k] != BigRational::from_integer(count_connected_pairings(2 * k)?) {
                return Ok((false, format!("order {}", 2 * k)));
            }
        }
        Ok((true, "orders ≤ 12".into()))
    });
    let (pos_order, neg_order) = if level == Level::Full { (120, 200) } else { (60, 200) };
    r.check("Hankel positivity for c ∈ [-1, 0]", || {
        for c in [int(-1), rat(-3, 4), rat(-1, 2), rat(-1, 4), int(0)] {
            let rep = fid_test(&c, pos_order)?;
            if rep.verdict != Verdict::Pass {
                return Ok((false, format!("c = {c} fails at {:?}", rep.first_negative_index)));
            }
        }
        Ok((true, format!("order {pos_order}")))
    });
    r.check("first negative Hankel determinant for c = 1", || {
        let rep = fid_test(&int(1), neg_order)?;
        Ok((
            rep.verdict == Verdict::Fail && rep.first_negative_index == Some(83),
            format!("{:?} at {:?}", rep.verdict, rep.first_negative_index),
        ))
    });
    if level == Level::Full {
        r.check("first negative Hankel determinant for c = 9/10", || {
            let rep = fid_test(&rat(9, 10), neg_order)?;
            Ok((
                rep.verdict == Verdict::Fail && rep.first_negative_index == Some(97),
                format!("{:?} at {:?}", rep.verdict, rep.first_negative_index),
            ))
        });
    }
    r.check("formal φ equation", || {
        let f = formal_phi_ode_check(60)?;
        Ok((f.holds, format!("order {}", f.order)))
    });
    let params = [rat(-9, 10), rat(-1, 2), int(0), rat(1, 2)];
    r.check("Riccati residuals and sign of Im G", || {
        let mut worst: f64 = 0.0;
        for c in &params {
            for z in residual_grid() {
                let g = g_eval(c, z, Precision::Double)?.value;
                if g.im >= 0.0 {
                    return Ok((false, format!("Im G ≥ 0 at c = {c}, z = {z}")));
                }
                let res = riccati_residual(c, z, 1e-4, Precision::Double)?;
                worst = worst.max(res.g_form).max(res.f_form);
            }
        }
        Ok((worst < 1e-6, format!("max residual {worst:.3e}")))
    });
    r.check("decomposition identity", || {
        let mut worst: f64 = 0.0;
        for c in &params {
            for z in residual_grid() {
                let d = decomposition_residual(c, z, Precision::Double)?;
                worst = worst.max(d.identity).max(d.dilation);
            }
        }
        Ok((worst < 1e-8, format!("max residual {worst:.3e}")))
    });
    r.check("series and continued fraction agree", || {
        let mut worst: f64 = 0.0;
        for c in &params {
            for z in residual_grid().into_iter().step_by(5) {
                let a = g_eval(c, z, Precision::Double)?.value;
                let b = cf_eval(c, z, None, Precision::Extended)?.value;
                worst = worst.max((a - b).norm());
            }
        }
        Ok((worst < 1e-10, format!("max difference {worst:.3e}")))
    });
    r.check("Gaussian density", || {
        let mut worst: f64 = 0.0;
        for u in [-2.0f64, -1.0, 0.0, 1.0, 2.0] {
            let d = density_eval(&int(0), u, 1e-3, true, Precision::Double)?;
            let want = (-u * u / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
            worst = worst.max((d - want).abs());
        }
        Ok((worst < 1e-4, format!("max error {worst:.3e}")))
    });
    r.check("imaginary-axis trajectory assertions", || {
        for c in [rat(-9, 10), rat(-1, 2), rat(-1, 10)] {
            let t = f_trajectory(&c, -6.0, 6.0, 1e-10, 0.01)?;
            if let Err(e) = t.verify() {
                return Ok((false, e.to_string()));
            }
        }
        Ok((true, "c ∈ {-9/10, -1/2, -1/10}".into()))
    });
    r.check("Voiculescu transform maps into the closed lower half-plane", || {
        let (nx, ny) = if level == Level::Full { (11, 5) } else { (5, 3) };
        let grid = voiculescu_default_grid(nx, ny);
        let mut worst = f64::NEG_INFINITY;
        for c in [rat(-1, 2), int(0)] {
            let rep = voiculescu_grid(&c, &grid, Precision::Double)?;
            worst = worst.max(rep.max_im_phi);
        }
        Ok((worst <= 1e-8, format!("max Im φ = {worst:.3e}")))
    });
}

/// Runs the suite for `modules` (all when empty) at `level`.
pub fn run_checks(modules: &[Module], level: Level) -> CheckReport {
    let modules = if modules.is_empty() { &Module::ALL[..] } else { modules };
    let mut results = Vec::new();
    for &m in modules {
        let mut r = Runner {
            module: m.name(),
            out: Vec::new(),
        };
        match m {
            Module::Partitions => partitions_checks(level, &mut r),
            Module::Cumulants => cumulants_checks(level, &mut r),
            Module::TreesDyck => trees_dyck_checks(level, &mut r),
            Module::Chains => chains_checks(level, &mut r),
            Module::Hopf => hopf_checks(level, &mut r),
            Module::Transforms => transforms_checks(level, &mut r),
        }
        results.extend(r.out);
    }
    CheckReport { level, results }
}

/// Parses a module name as used on the command line.
pub fn parse_module(s: &str) -> Result<Module> {
    Module::ALL
        .into_iter()
        .find(|m| m.name() == s || m.name().replace('_', "-") == s)
        .ok_or_else(|| Error::Parse(format!("unknown module {s:?}")))
}
