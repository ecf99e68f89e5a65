//! Labeled binary trees, anti-increasingly ordered trees and formal combinations.
//!
//! Orientation: in `s ∨_k t` the first argument `s` is the left subtree. A
//! labeling is anti-increasing when, at every vertex, all left-subtree labels are
//! below all right-subtree labels.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::trees_dyck::{enumerate_trees, BinaryTree};

/// Bound for enumerating ordered trees (s₁₄ = 593 859 trees of size 7).
pub const MAX_ORDERED: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum LabeledTree {
    #[default]
    Empty,
    Node(u32, Box<LabeledTree>, Box<LabeledTree>),
}

impl LabeledTree {
    pub fn vertex(label: u32) -> Self {
        LabeledTree::Node(label, Box::default(), Box::default())
    }

    /// `s ∨_k t` without label checks.
    pub fn join(s: LabeledTree, k: u32, t: LabeledTree) -> Self {
        LabeledTree::Node(k, Box::new(s), Box::new(t))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, LabeledTree::Empty)
    }

    pub fn size(&self) -> usize {
        match self {
            LabeledTree::Empty => 0,
            LabeledTree::Node(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Labels in preorder.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<u32>) {
        if let LabeledTree::Node(k, l, r) = self {
            out.push(*k);
            l.collect_labels(out);
            r.collect_labels(out);
        }
    }

    pub fn shape(&self) -> BinaryTree {
        match self {
            LabeledTree::Empty => BinaryTree::Empty,
            LabeledTree::Node(_, l, r) => BinaryTree::node(l.shape(), r.shape()),
        }
    }

    pub fn has_distinct_labels(&self) -> bool {
        let mut l = self.labels();
        l.sort_unstable();
        l.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_anti_increasing(&self) -> bool {
        fn walk(t: &LabeledTree) -> Option<Option<(u32, u32)>> {
            let LabeledTree::Node(k, l, r) = t else {
                return Some(None);
            };
            let lr = walk(l)?;
            let rr = walk(r)?;
            if let (Some((_, lmax)), Some((rmin, _))) = (lr, rr) {
                if lmax >= rmin {
                    return None;
                }
            }
            let lo = [lr.map(|x| x.0), rr.map(|x| x.0), Some(*k)].into_iter().flatten().min();
            let hi = [lr.map(|x| x.1), rr.map(|x| x.1), Some(*k)].into_iter().flatten().max();
            Some(lo.zip(hi))
        }
        self.has_distinct_labels() && walk(self).is_some()
    }

    pub fn map_labels(&self, f: &impl Fn(u32) -> u32) -> LabeledTree {
        match self {
            LabeledTree::Empty => LabeledTree::Empty,
            LabeledTree::Node(k, l, r) => LabeledTree::join(l.map_labels(f), f(*k), r.map_labels(f)),
        }
    }

    pub fn shift(&self, offset: u32) -> LabeledTree {
        self.map_labels(&|k| k + offset)
    }

    pub fn max_label(&self) -> u32 {
        self.labels().into_iter().max().unwrap_or(0)
    }

    /// Relabels by rank onto `1..=n`.
    pub fn canonical(&self) -> LabeledTree {
        let mut sorted = self.labels();
        sorted.sort_unstable();
        self.map_labels(&|k| sorted.binary_search(&k).expect("own label") as u32 + 1)
    }

    fn to_json(&self) -> Value {
        match self {
            LabeledTree::Empty => Value::Array(vec![]),
            LabeledTree::Node(k, l, r) if l.is_empty() && r.is_empty() => Value::Array(vec![(*k).into()]),
            LabeledTree::Node(k, l, r) => Value::Array(vec![(*k).into(), l.to_json(), r.to_json()]),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("not a labeled tree: {v}"));
        let items = v.as_array().ok_or_else(bad)?;
        match items.as_slice() {
            [] => Ok(LabeledTree::Empty),
            [k] => Ok(LabeledTree::vertex(label(k).ok_or_else(bad)?)),
            [k, l, r] => Ok(LabeledTree::join(
                Self::from_json(l)?,
                label(k).ok_or_else(bad)?,
                Self::from_json(r)?,
            )),
            _ => Err(bad()),
        }
    }
}

fn label(v: &Value) -> Option<u32> {
    v.as_u64().and_then(|k| u32::try_from(k).ok())
}

/// Nested-list text: `[]`, `[k]`, or `[k,left,right]`.
impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl fmt::Debug for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl Serialize for LabeledTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        LabeledTree::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Grafts `s` and `t` on a new root labeled `k`, `s` on the left.
pub fn graft(s: &LabeledTree, k: u32, t: &LabeledTree) -> Result<LabeledTree> {
    let tree = LabeledTree::join(s.clone(), k, t.clone());
    if !tree.has_distinct_labels() {
        return Err(Error::domain(format!("label clash grafting {s} and {t} at {k}")));
    }
    Ok(tree)
}

/// An anti-increasingly ordered tree, stored with labels `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct OrderedTree(LabeledTree);

impl OrderedTree {
    pub fn empty() -> Self {
        OrderedTree(LabeledTree::Empty)
    }

    /// The ordered tree induced by an anti-increasing labeling.
    pub fn new(t: &LabeledTree) -> Result<Self> {
        if !t.is_anti_increasing() {
            return Err(Error::domain(format!("{t} is not anti-increasingly labeled")));
        }
        Ok(OrderedTree(t.canonical()))
    }

    pub fn tree(&self) -> &LabeledTree {
        &self.0
    }
}

impl Deref for OrderedTree {
    type Target = LabeledTree;

    fn deref(&self) -> &LabeledTree {
        &self.0
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'de> Deserialize<'de> for OrderedTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = LabeledTree::deserialize(d)?;
        OrderedTree::new(&t).map_err(serde::de::Error::custom)
    }
}

/// Every anti-increasing labeling of `shape` with the given sorted labels.
fn label_shape(shape: &BinaryTree, labels: &[u32]) -> Vec<LabeledTree> {
    let Some((l, r)) = shape.children() else {
        return vec![LabeledTree::Empty];
    };
    let a = l.size();
    let mut out = Vec::new();
    for i in 0..labels.len() {
        let mut rest = labels.to_vec();
        let root = rest.remove(i);
        let lefts = label_shape(l, &rest[..a]);
        let rights = label_shape(r, &rest[a..]);
        for lt in &lefts {
            for rt in &rights {
                out.push(LabeledTree::join(lt.clone(), root, rt.clone()));
            }
        }
    }
    out
}

/// All ordered trees with `n` vertices, grouped by shape.
pub fn enumerate_ordered(n: usize) -> Result<Vec<OrderedTree>> {
    Error::check_bound("n", n, MAX_ORDERED)?;
    let labels: Vec<u32> = (1..=n as u32).collect();
    Ok(enumerate_trees(n)?
        .iter()
        .flat_map(|s| label_shape(s, &labels))
        .map(OrderedTree)
        .collect())
}

/// Number of ordered trees with `n` vertices.
pub fn hilbert_dimension(n: usize) -> Result<num_bigint::BigInt> {
    Ok(num_bigint::BigInt::from(enumerate_ordered(n)?.len()))
}

/// A finite formal combination with rational coefficients and no zero terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

pub type TreeCombination = Combination<OrderedTree>;
pub type TensorCombination = Combination<(OrderedTree, OrderedTree)>;

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        let mut c = Self::zero();
        c.add_term(k, BigRational::one());
        c
    }

    pub fn add_term(&mut self, k: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<K, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, k: &K) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Linear extension of a map on basis elements.
    pub fn map<J: Ord + Clone>(&self, f: impl Fn(&K) -> Combination<J>) -> Combination<J> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add(&f(k).scaled(c));
        }
        out
    }

    /// Bilinear extension of a map on pairs of basis elements.
    pub fn bilinear<J: Ord + Clone, L: Ord + Clone>(
        &self,
        other: &Combination<J>,
        f: impl Fn(&K, &J) -> Combination<L>,
    ) -> Combination<L> {
        let mut out = Combination::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add(&f(a, b).scaled(&(ca * cb)));
            }
        }
        out
    }
}

impl<K: Ord + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c}·{k}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| (k, c.to_string()))).finish()
    }
}

/// Pair display for tensor terms.
pub struct Tensor<'a, A, B>(pub &'a A, pub &'a B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Tensor<'_, A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

/// Serializable term list: `{"left", "right", "coefficient"}` per tensor term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorTerm {
    pub left: LabeledTree,
    pub right: LabeledTree,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeTerm {
    pub tree: LabeledTree,
    pub coefficient: String,
}

impl TensorCombination {
    pub fn to_terms(&self) -> Vec<TensorTerm> {
        self.terms
            .iter()
            .map(|((a, b), c)| TensorTerm {
                left: a.tree().clone(),
                right: b.tree().clone(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

impl TreeCombination {
    pub fn to_terms(&self) -> Vec<TreeTerm> {
        self.terms
            .iter()
            .map(|(t, c)| TreeTerm {
                tree: t.tree().clone(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}
