//! Command-line grammar. Every struct doubles as the echoed configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Seed used when `--seed` is not given, so unseeded runs stay reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "freegauss", version, about = "Exact free-cumulant calculus and free infinite divisibility tests")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Seed for simulations.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Floating precision for analytic evaluations.
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double, global = true)]
    pub precision: PrecisionArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionArg {
    Double,
    Extended,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "subcommand")]
pub enum Command {
    /// Integer sequences around the Gaussian free cumulants.
    Sequence(SequenceArgs),
    /// Moment/cumulant conversions and weighted pairing sums.
    Cumulants(CumulantsArgs),
    /// Tree-shape Markov chains.
    Chains(ChainsArgs),
    /// Loday-Ronco and BF operations on ordered trees.
    Hopf(HopfArgs),
    /// Dyck words, the μ operator and the word factorial.
    Dyck(DyckArgs),
    /// Hankel positivity test of the shifted free cumulants of μ_c.
    Fid(FidArgs),
    /// Cauchy transform, reciprocal, Voiculescu transform and residuals of μ_c.
    Transform(TransformArgs),
    /// Density of μ_c on a range, by Stieltjes inversion.
    Density(DensityArgs),
    /// Invariant suite of one or all modules.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceName {
    /// Connected pairings of 2n points, 2n = 2, 4, …, max.
    A000699,
    /// Gaussian free cumulants fc_0 … fc_max.
    GaussianFree,
    /// Gaussian moments m_0 … m_max.
    GaussianMoments,
    /// Shifted sequence s_n = fc_{n+2}, n = 0 … max.
    Shifted,
    /// Noncrossing inner-point sums, 2n = 2, 4, …, max.
    Innerpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceMethod {
    /// Riordan recursion.
    Recursion,
    /// Enumeration of connected pairings.
    Pairings,
    /// Sum of tree factorials.
    Trees,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SequenceArgs {
    #[arg(value_enum)]
    pub name: SequenceName,
    /// Largest order.
    #[arg(long, default_value_t = 12)]
    pub max: usize,
    /// Route used for a000699.
    #[arg(long, value_enum, default_value_t = SequenceMethod::Recursion)]
    pub method: SequenceMethod,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CumulantsArgs {
    #[command(subcommand)]
    pub action: CumulantsAction,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "action")]
pub enum CumulantsAction {
    /// Converts between moments and classical, free or boolean cumulants.
    Convert(ConvertArgs),
    /// Weighted pairing sums against the cumulant route.
    Weighted(WeightedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CumulantKind {
    Classical,
    Free,
    Boolean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    ToCumulants,
    ToMoments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvertMethod {
    /// Triangular series recursions.
    Series,
    /// Möbius inversion over the partition lattice.
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Named {
    Gaussian,
    Semicircle,
    Rademacher,
    Poisson,
    TwoAtom,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub kind: CumulantKind,
    #[arg(long, value_enum, default_value_t = Direction::ToCumulants)]
    pub direction: Direction,
    /// Input sequence x_0,x_1,… as comma-separated "p/q" values.
    #[arg(long, conflicts_with = "distribution", required_unless_present = "distribution")]
    pub input: Option<String>,
    /// Moments of a named law (direction to-cumulants only).
    #[arg(long, value_enum)]
    pub distribution: Option<Named>,
    /// Order for a named law.
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ConvertMethod::Series)]
    pub method: ConvertMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightArg {
    /// s^{cc(π)}, compared with the free power of the Gaussian.
    Cc,
    /// q^{cr(π)}, compared with the q-Gaussian at q = 0 and 1.
    Cr,
    /// b^{n-h(π)}, compared with the dilated Gaussian ⊞ semicircle.
    Bdj,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeightedArgs {
    #[arg(long, value_enum)]
    pub weight: WeightArg,
    /// Weight parameter as "p/q".
    #[arg(long)]
    pub param: String,
    /// Largest even order 2n.
    #[arg(long, default_value_t = 10)]
    pub max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainAction {
    /// Exact stationary distribution.
    Stationary,
    /// Transition graph with stationary weights.
    Graph,
    /// Sum of expected return times.
    ReturnTimes,
    /// Seeded simulation against the exact law.
    Simulate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Move-to-root on tree shapes.
    Mtr,
    /// Nearest-transposition chain on Dyck words.
    Nt,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChainsArgs {
    #[arg(value_enum)]
    pub action: ChainAction,
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Recorded steps for simulate.
    #[arg(long, default_value_t = 100_000)]
    pub steps: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopfAction {
    /// Loday-Ronco coproduct of --tree.
    Coproduct,
    /// BF coproduct of --tree.
    BfCoproduct,
    /// Loday-Ronco product --tree * --other.
    Product,
    /// BF over-product --tree / --other.
    Over,
    /// Antipode of --tree.
    Antipode,
    /// All algebraic laws on trees of size ≤ --n.
    Laws,
    /// Number of ordered trees of size 0 … --n.
    Dimensions,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HopfArgs {
    #[arg(value_enum)]
    pub action: HopfAction,
    /// Anti-increasingly labeled tree as nested lists, e.g. "[3,[1],[2]]".
    #[arg(long)]
    pub tree: Option<String>,
    /// Second operand of product and over.
    #[arg(long)]
    pub other: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DyckAction {
    /// μ(w) = w + ν(w).
    Mu,
    /// ν(w).
    Nu,
    /// w! and the corresponding tree.
    Factorial,
    /// All words of semilength --n with trees and factorials.
    Enumerate,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DyckArgs {
    #[arg(value_enum)]
    pub action: DyckAction,
    /// Word over {U, D}.
    #[arg(long)]
    pub word: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FidArgs {
    /// Parameter c ≥ -1 as "p/q".
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// Highest free cumulant order used.
    #[arg(long, default_value_t = 120)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Cauchy transform G.
    G,
    /// Reciprocal F = 1/G.
    F,
    /// Voiculescu transform φ.
    Phi,
    /// Riccati residuals of G and F.
    Riccati,
    /// Residuals of the c ↦ c+1 identity.
    Decomposition,
    /// G by series and by continued fraction, side by side.
    Compare,
    /// Im F along the imaginary axis (needs -1 < c < 0).
    Trajectory,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TransformArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, value_enum, default_value_t = Quantity::G)]
    pub quantity: Quantity,
    /// Points: "residual" (fixed 25-point grid) or "X0:X1:NX,Y0:Y1:NY".
    #[arg(long, default_value = "residual", conflicts_with = "z", allow_hyphen_values = true)]
    pub grid: String,
    /// Single points such as "1+2i"; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Difference step of the Riccati residual.
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
    /// Riccati residual tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub riccati_tol: f64,
    /// Decomposition residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub decomposition_tol: f64,
    /// Series vs continued-fraction agreement tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub agreement_tol: f64,
    /// Trajectory range "R_LO:R_HI".
    #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
    pub r_range: String,
    /// Trajectory integration tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub ode_tol: f64,
    /// Trajectory sample spacing.
    #[arg(long, default_value_t = 0.01)]
    pub sample_step: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// "LO:HI:STEP".
    #[arg(long, default_value = "-4:4:0.01", allow_hyphen_values = true)]
    pub range: String,
    /// Distance to the real axis.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Disable the Richardson extrapolation in eps.
    #[arg(long)]
    pub no_richardson: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelArg {
    Desk,
    Full,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    /// "all" or module names (partitions, cumulants, trees-dyck, chains, hopf, transforms).
    #[arg(required = true)]
    pub modules: Vec<String>,
    #[arg(long, value_enum, default_value_t = LevelArg::Desk)]
    pub level: LevelArg,
}
