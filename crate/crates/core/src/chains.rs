//! The move-to-root chain on binary tree shapes and the Naimi–Trehel chain on
//! Dyck words, with exact stationary distributions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, serde_bigint, serde_rational, to_f64};
use crate::trees_dyck::{enumerate_trees, nt_adjacency, BinaryTree};

/// Bound for both chains (Catalan(6) = 132 states).
pub const MAX_CHAIN: usize = 6;
/// Steps discarded before counting visits in [`simulate`].
pub const BURN_IN: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chain {
    Mtr,
    Nt,
}

/// A row-stochastic matrix over named states.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    states: Vec<String>,
    rows: Vec<Vec<BigRational>>,
}

impl StochasticMatrix {
    pub fn new(states: Vec<String>, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = states.len();
        if n == 0 || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("a stochastic matrix must be square and nonempty"));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = states.iter().find(|s| !seen.insert(*s)) {
            return Err(Error::domain(format!("duplicate state {dup}")));
        }
        for (s, row) in states.iter().zip(&rows) {
            if row.iter().any(Signed::is_negative) {
                return Err(Error::domain(format!("negative entry in row {s}")));
            }
            if !row.iter().sum::<BigRational>().is_one() {
                return Err(Error::domain(format!("row {s} does not sum to 1")));
            }
        }
        Ok(StochasticMatrix { states, rows })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Communicating classes, each as a sorted list of state indices.
    pub fn communicating_classes(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    g.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        classes.sort();
        classes
    }

    /// `x P` for a row vector `x`.
    pub fn left_apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        let n = self.len();
        (0..n)
            .map(|j| (0..n).map(|i| &x[i] * &self.rows[i][j]).sum())
            .collect()
    }
}

/// A probability vector over named states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    pub entries: Vec<WeightedState>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedState {
    pub state: String,
    #[serde(with = "serde_rational")]
    pub weight: BigRational,
}

impl Distribution {
    pub fn weights(&self) -> Vec<BigRational> {
        self.entries.iter().map(|e| e.weight.clone()).collect()
    }

    pub fn weight(&self, state: &str) -> Option<&BigRational> {
        self.entries.iter().find(|e| e.state == state).map(|e| &e.weight)
    }
}

/// Rotates child `dir` (false = left, true = right) of the root above it.
fn rotate_up(t: BinaryTree, right: bool) -> BinaryTree {
    let BinaryTree::Node(l, r) = t else {
        unreachable!("rotation at a vertex")
    };
    match (right, *l, *r) {
        (false, BinaryTree::Node(a, b), c) => BinaryTree::node(*a, BinaryTree::node(*b, c)),
        (true, a, BinaryTree::Node(b, c)) => BinaryTree::node(BinaryTree::node(a, *b), *c),
        _ => unreachable!("rotated child exists"),
    }
}

/// Moves the vertex at `path` to the root by successive simple exchanges.
pub fn move_to_root(t: &BinaryTree, path: &[bool]) -> BinaryTree {
    let Some((&dir, rest)) = path.split_first() else {
        return t.clone();
    };
    let BinaryTree::Node(l, r) = t else {
        unreachable!("path inside the tree")
    };
    let lifted = if dir {
        BinaryTree::node((**l).clone(), move_to_root(r, rest))
    } else {
        BinaryTree::node(move_to_root(l, rest), (**r).clone())
    };
    rotate_up(lifted, dir)
}

/// Paths from the root to every vertex, in preorder.
pub fn vertex_paths(t: &BinaryTree) -> Vec<Vec<bool>> {
    fn walk(t: &BinaryTree, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if let BinaryTree::Node(l, r) = t {
            out.push(prefix.clone());
            prefix.push(false);
            walk(l, prefix, out);
            prefix.pop();
            prefix.push(true);
            walk(r, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(t, &mut Vec::new(), &mut out);
    out
}

/// Move-to-root on shapes: each vertex, root included, is chosen with probability `1/n`.
pub fn mtr_transition_matrix(n: usize) -> Result<StochasticMatrix> {
    if n == 0 {
        return Err(Error::domain("the chain needs at least one vertex"));
    }
    Error::check_bound("n", n, MAX_CHAIN)?;
    let trees = enumerate_trees(n)?;
    let index: HashMap<&BinaryTree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let p = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut rows = vec![vec![BigRational::zero(); trees.len()]; trees.len()];
    for (i, t) in trees.iter().enumerate() {
        for path in vertex_paths(t) {
            rows[i][index[&move_to_root(t, &path)]] += &p;
        }
    }
    StochasticMatrix::new(trees.iter().map(|t| t.to_string()).collect(), rows)
}

/// Naimi–Trehel chain: the μ-operator matrix divided by `n + 1`.
pub fn nt_transition_matrix(n: usize) -> Result<StochasticMatrix> {
    if n == 0 {
        return Err(Error::domain("the chain needs at least one step pair"));
    }
    Error::check_bound("n", n, MAX_CHAIN)?;
    let a = nt_adjacency(n)?;
    let scale = BigRational::new(BigInt::one(), BigInt::from(n + 1));
    let rows = a
        .rows
        .iter()
        .map(|r| r.iter().map(|v| v * &scale).collect())
        .collect();
    StochasticMatrix::new(a.states.iter().map(|w| w.to_string()).collect(), rows)
}

pub fn transition_matrix(chain: Chain, n: usize) -> Result<StochasticMatrix> {
    match chain {
        Chain::Mtr => mtr_transition_matrix(n),
        Chain::Nt => nt_transition_matrix(n),
    }
}

/// Exact stationary distribution of an irreducible chain.
pub fn stationary(p: &StochasticMatrix) -> Result<Distribution> {
    let classes = p.communicating_classes();
    if classes.len() > 1 {
        let named: Vec<Vec<&str>> = classes
            .iter()
            .map(|c| c.iter().map(|&i| p.states[i].as_str()).collect())
            .collect();
        return Err(Error::Structure(format!("reducible chain, communicating classes {named:?}")));
    }
    let n = p.len();
    // columns of (P - I) as equations, the last one replaced by normalization
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let d = if i == j { BigRational::one() } else { BigRational::zero() };
                    &p.rows[i][j] - d
                })
                .collect()
        })
        .collect();
    let mut b = vec![BigRational::zero(); n];
    a[n - 1] = vec![BigRational::one(); n];
    b[n - 1] = BigRational::one();
    let pi = linalg::solve(&a, &b)?;
    if p.left_apply(&pi) != pi {
        return Err(Error::Verification("solution is not stationary".into()));
    }
    Ok(Distribution {
        entries: p
            .states
            .iter()
            .zip(pi)
            .map(|(s, w)| WeightedState {
                state: s.clone(),
                weight: w,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnTimes {
    /// `Σ_w 1/π(w)`.
    #[serde(with = "serde_bigint")]
    pub sum: BigInt,
    /// Number of states, the Catalan number `C_n`.
    pub states: usize,
    /// Mean expected return time `sum / C_n`.
    #[serde(with = "serde_rational")]
    pub mean_return_time: BigRational,
}

/// Sum of expected return times over all states, from the exact stationary law.
pub fn return_time_sum(n: usize, chain: Chain) -> Result<ReturnTimes> {
    let pi = stationary(&transition_matrix(chain, n)?)?;
    let total: BigRational = pi.entries.iter().map(|e| e.weight.recip()).sum();
    if !total.is_integer() {
        return Err(Error::Verification(format!("return-time sum {total} is not an integer")));
    }
    let states = pi.entries.len();
    Ok(ReturnTimes {
        sum: total.to_integer(),
        states,
        mean_return_time: total / BigRational::from_integer(states.into()),
    })
}

/// Visit frequencies of a simulated path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Empirical {
    pub states: Vec<String>,
    pub frequencies: Vec<f64>,
    pub steps: u64,
    pub burn_in: u64,
    pub seed: u64,
}

impl Empirical {
    /// Total-variation distance to an exact distribution over the same states.
    pub fn tv_distance(&self, exact: &Distribution) -> f64 {
        self.frequencies
            .iter()
            .zip(&exact.entries)
            .map(|(f, e)| (f - to_f64(&e.weight)).abs())
            .sum::<f64>()
            / 2.0
    }
}

/// Runs the chain from the first state with a ChaCha8 stream seeded by `seed`,
/// discards [`BURN_IN`] steps, then records `steps` visits.
///
/// With `steps = 0` the result is the point mass at the state reached after burn-in.
pub fn simulate(p: &StochasticMatrix, steps: u64, seed: u64) -> Empirical {
    let cumulative: Vec<Vec<f64>> = p
        .rows
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .map(|v| {
                    acc += v.to_f64().unwrap_or(0.0);
                    acc
                })
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = |state: usize, rng: &mut ChaCha8Rng| {
        let u: f64 = rng.random();
        let row = &cumulative[state];
        row.iter()
            .position(|&c| u < c)
            .unwrap_or_else(|| row.iter().rposition(|_| true).expect("nonempty"))
    };
    let mut state = 0;
    for _ in 0..BURN_IN {
        state = step(state, &mut rng);
    }
    let mut counts = vec![0u64; p.len()];
    if steps == 0 {
        counts[state] = 1;
    }
    for _ in 0..steps {
        state = step(state, &mut rng);
        counts[state] += 1;
    }
    let total = counts.iter().sum::<u64>() as f64;
    Empirical {
        states: p.states.clone(),
        frequencies: counts.iter().map(|&c| c as f64 / total).collect(),
        steps,
        burn_in: BURN_IN,
        seed,
    }
}

/// One vertex of the exported transition graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphNode {
    pub state: String,
    pub weight: String,
    pub out: Vec<GraphEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphEdge {
    pub to: String,
    pub weight: String,
}

/// Transition graph annotated with stationary weights, for external rendering.
pub fn graph(p: &StochasticMatrix, pi: &Distribution) -> Vec<GraphNode> {
    p.states
        .iter()
        .zip(&p.rows)
        .zip(&pi.entries)
        .map(|((s, row), e)| GraphNode {
            state: s.clone(),
            weight: format_rational(&e.weight),
            out: row
                .iter()
                .zip(&p.states)
                .filter(|(v, _)| !v.is_zero())
                .map(|(v, t)| GraphEdge {
                    to: t.clone(),
                    weight: format_rational(v),
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::trees_dyck::{enumerate_dyck, tree_to_dyck};

    #[test]
    fn mtr_small() {
        let p = mtr_transition_matrix(1).unwrap();
        assert_eq!(p.rows(), &[vec![BigRational::one()]]);
        let p = mtr_transition_matrix(2).unwrap();
        let half = rat(1, 2);
        assert_eq!(p.rows(), &[vec![half.clone(), half.clone()], vec![half.clone(), half]]);
    }

    #[test]
    fn rotations() {
        let left = BinaryTree::left_chain(2);
        assert_eq!(move_to_root(&left, &[false]), BinaryTree::right_chain(2));
        assert_eq!(move_to_root(&left, &[]), left);
        // the two vertices above the moved one keep their parent-child relation
        let t = BinaryTree::left_chain(3);
        assert_eq!(move_to_root(&t, &[false, false]).to_string(), "()(())");
        for n in 1..=5 {
            for t in enumerate_trees(n).unwrap() {
                for path in vertex_paths(&t) {
                    assert_eq!(move_to_root(&t, &path).size(), n);
                }
            }
        }
    }

    #[test]
    fn stationary_is_inverse_factorial() {
        for n in 1..=5 {
            let trees = enumerate_trees(n).unwrap();
            let pi = stationary(&mtr_transition_matrix(n).unwrap()).unwrap();
            for (t, e) in trees.iter().zip(&pi.entries) {
                assert_eq!(e.weight, BigRational::from_integer(t.factorial()).recip());
            }
            let words = enumerate_dyck(n).unwrap();
            let nt = stationary(&nt_transition_matrix(n).unwrap()).unwrap();
            for (w, e) in words.iter().zip(&nt.entries) {
                assert_eq!(e.weight, BigRational::from_integer(w.factorial()).recip());
            }
            // transport through α
            for (t, e) in trees.iter().zip(&pi.entries) {
                assert_eq!(nt.weight(&tree_to_dyck(t).to_string()), Some(&e.weight));
            }
        }
    }

    #[test]
    fn return_times() {
        let expect = [1, 4, 27, 248];
        for (i, e) in expect.iter().enumerate() {
            for chain in [Chain::Mtr, Chain::Nt] {
                let r = return_time_sum(i + 1, chain).unwrap();
                assert_eq!(r.sum, BigInt::from(*e));
            }
        }
        let r = return_time_sum(3, Chain::Nt).unwrap();
        assert_eq!(r.mean_return_time, rat(27, 5));
    }

    #[test]
    fn reducible_chain_is_reported() {
        let one = BigRational::one();
        let zero = BigRational::zero();
        let p = StochasticMatrix::new(
            vec!["a".into(), "b".into()],
            vec![vec![one.clone(), zero.clone()], vec![zero, one]],
        )
        .unwrap();
        assert!(matches!(stationary(&p), Err(Error::Structure(_))));
    }

    #[test]
    fn invalid_matrices() {
        let h = rat(1, 2);
        assert!(StochasticMatrix::new(vec!["a".into()], vec![vec![h]]).is_err());
        assert!(StochasticMatrix::new(vec![], vec![]).is_err());
    }

    #[test]
    fn simulation_converges() {
        for (chain, n) in [(Chain::Nt, 2), (Chain::Mtr, 3)] {
            let p = transition_matrix(chain, n).unwrap();
            let pi = stationary(&p).unwrap();
            let e = simulate(&p, 100_000, 7);
            assert!(e.tv_distance(&pi) < 0.02, "{chain:?}: {}", e.tv_distance(&pi));
            assert_eq!(simulate(&p, 1000, 42), simulate(&p, 1000, 42));
        }
        let p = nt_transition_matrix(3).unwrap();
        let e = simulate(&p, 0, 1);
        assert_eq!(e.frequencies.iter().filter(|&&f| f == 1.0).count(), 1);
    }

    #[test]
    fn graph_export() {
        let p = nt_transition_matrix(2).unwrap();
        let pi = stationary(&p).unwrap();
        let g = graph(&p, &pi);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].weight, "1/2");
    }
}
