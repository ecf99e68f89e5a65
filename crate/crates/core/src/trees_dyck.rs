//! Planar rooted binary trees, Dyck words, the bijection between them, and the
//! μ/ν operators whose matrix is the Naimi–Trehel transition matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Bound for listing trees (Catalan(14) = 2 674 440).
pub const MAX_TREES: usize = 14;
/// Bound for brute-force labeling counts (8! permutations).
pub const MAX_LABELING: usize = 8;
/// Bound for the μ-operator matrix over `D_n` (Catalan(7) = 429 states).
pub const MAX_DYCK_MATRIX: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum BinaryTree {
    #[default]
    Empty,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn vertex() -> Self {
        Self::node(BinaryTree::Empty, BinaryTree::Empty)
    }

    /// Path of `n` vertices, each a left child of the previous one.
    pub fn left_chain(n: usize) -> Self {
        (0..n).fold(BinaryTree::Empty, |t, _| Self::node(t, BinaryTree::Empty))
    }

    pub fn right_chain(n: usize) -> Self {
        (0..n).fold(BinaryTree::Empty, |t, _| Self::node(BinaryTree::Empty, t))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, BinaryTree::Empty)
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn children(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        match self {
            BinaryTree::Empty => None,
            BinaryTree::Node(l, r) => Some((l, r)),
        }
    }

    /// `t! = n · t₁! · t₂!` with `∅! = 1`.
    pub fn factorial(&self) -> BigInt {
        match self {
            BinaryTree::Empty => BigInt::one(),
            BinaryTree::Node(l, r) => BigInt::from(self.size()) * l.factorial() * r.factorial(),
        }
    }

    fn write_parens(&self, out: &mut String) {
        if let BinaryTree::Node(l, r) = self {
            out.push('(');
            l.write_parens(out);
            out.push(')');
            r.write_parens(out);
        }
    }
}

/// Canonical text form: `∅` is the empty string and a node is `(left)right`.
impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_parens(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryTree({self})")
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // "(L)R" is the Dyck word L U … read with '(' = U; reuse its parser
        let w: String = s
            .chars()
            .map(|ch| match ch {
                '(' => Ok('U'),
                ')' => Ok('D'),
                other => Err(Error::Parse(format!("unexpected {other:?} in tree {s:?}"))),
            })
            .collect::<Result<_>>()?;
        let word: DyckWord = w.parse()?;
        Ok(paren_tree(word.steps()))
    }
}

fn paren_tree(steps: &[Step]) -> BinaryTree {
    if steps.is_empty() {
        return BinaryTree::Empty;
    }
    let close = matching_close(steps, 0);
    BinaryTree::node(paren_tree(&steps[1..close]), paren_tree(&steps[close + 1..]))
}

fn matching_close(steps: &[Step], open: usize) -> usize {
    let mut depth = 0i32;
    for (i, s) in steps.iter().enumerate().skip(open) {
        depth += if *s == Step::U { 1 } else { -1 };
        if depth == 0 {
            return i;
        }
    }
    unreachable!("balanced word")
}

impl Serialize for BinaryTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All planar rooted binary trees with `n` vertices, ordered by left-subtree size
/// and then recursively.
pub fn enumerate_trees(n: usize) -> Result<Vec<BinaryTree>> {
    Error::check_bound("n", n, MAX_TREES)?;
    let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Empty]];
    for k in 1..=n {
        let mut level = Vec::new();
        for i in 0..k {
            for l in &by_size[i] {
                for r in &by_size[k - 1 - i] {
                    level.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    Ok(by_size.swap_remove(n))
}

pub fn tree_factorial(t: &BinaryTree) -> BigInt {
    t.factorial()
}

/// `Σ_{t ∈ PRBT_n} t!`.
pub fn s_via_trees(n: usize) -> Result<BigInt> {
    Ok(enumerate_trees(n)?.iter().map(BinaryTree::factorial).sum())
}

/// Whether labels (in preorder) make `t` anti-increasing: at every vertex, all
/// left-subtree labels are below all right-subtree labels.
fn anti_increasing(t: &BinaryTree, labels: &[usize]) -> bool {
    fn walk(t: &BinaryTree, labels: &[usize]) -> Option<(usize, usize)> {
        let BinaryTree::Node(l, r) = t else {
            return Some((usize::MAX, 0));
        };
        let me = labels[0];
        let ls = l.size();
        let (lmin, lmax) = walk(l, &labels[1..1 + ls])?;
        let (rmin, rmax) = walk(r, &labels[1 + ls..])?;
        if !l.is_empty() && !r.is_empty() && lmax >= rmin {
            return None;
        }
        Some((me.min(lmin).min(rmin), me.max(lmax).max(rmax)))
    }
    walk(t, labels).is_some()
}

/// Counts anti-increasing labelings of `t` by brute force over all `n!` labelings.
pub fn count_anti_increasing_labelings(t: &BinaryTree) -> Result<BigInt> {
    let n = t.size();
    Error::check_bound("tree size", n, MAX_LABELING)?;
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut count = 0u64;
    loop {
        if anti_increasing(t, &perm) {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One letter of a Dyck word; `U` sorts before `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DyckWord(Vec<Step>);

impl DyckWord {
    pub fn empty() -> Self {
        DyckWord(Vec::new())
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let mut h = 0i64;
        for s in &steps {
            h += if *s == Step::U { 1 } else { -1 };
            if h < 0 {
                return Err(Error::Parse("prefix with more D than U".into()));
            }
        }
        if h != 0 {
            return Err(Error::Parse("unequal numbers of U and D".into()));
        }
        Ok(DyckWord(steps))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// Semilength `n`.
    pub fn half_len(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Splits `w = u x v x*` where `x*` is the last letter and `x` its matching opener.
    pub fn decompose(&self) -> Option<(DyckWord, DyckWord)> {
        if self.0.is_empty() {
            return None;
        }
        let mut depth = 0i32;
        let last = self.0.len() - 1;
        let open = (0..=last)
            .rev()
            .find(|&i| {
                depth += if self.0[i] == Step::D { 1 } else { -1 };
                depth == 0
            })
            .expect("balanced word");
        Some((
            DyckWord(self.0[..open].to_vec()),
            DyckWord(self.0[open + 1..last].to_vec()),
        ))
    }

    /// `u x v x*` from its parts.
    pub fn compose(u: &DyckWord, v: &DyckWord) -> DyckWord {
        let mut s = Vec::with_capacity(u.0.len() + v.0.len() + 2);
        s.extend_from_slice(&u.0);
        s.push(Step::U);
        s.extend_from_slice(&v.0);
        s.push(Step::D);
        DyckWord(s)
    }

    pub fn concat(&self, other: &DyckWord) -> DyckWord {
        let mut s = self.0.clone();
        s.extend_from_slice(&other.0);
        DyckWord(s)
    }

    /// `(u x v x*)! = n · u! · v!` with `1! = 1`.
    pub fn factorial(&self) -> BigInt {
        match self.decompose() {
            None => BigInt::one(),
            Some((u, v)) => BigInt::from(self.half_len()) * u.factorial() * v.factorial(),
        }
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Step::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for DyckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                other => Err(Error::Parse(format!("unexpected {other:?} in Dyck word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckWord::from_steps(steps)
    }
}

impl Serialize for DyckWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DyckWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All Dyck words of semilength `n` in lexicographic order with `U < D`.
pub fn enumerate_dyck(n: usize) -> Result<Vec<DyckWord>> {
    Error::check_bound("n", n, MAX_TREES)?;
    fn rec(ups: usize, downs: usize, n: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckWord>) {
        if cur.len() == 2 * n {
            out.push(DyckWord(cur.clone()));
            return;
        }
        if ups < n {
            cur.push(Step::U);
            rec(ups + 1, downs, n, cur, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(Step::D);
            rec(ups, downs + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, n, &mut Vec::with_capacity(2 * n), &mut out);
    Ok(out)
}

/// `α(t) = α(t₁) U α(t₂) D`.
pub fn tree_to_dyck(t: &BinaryTree) -> DyckWord {
    match t {
        BinaryTree::Empty => DyckWord::empty(),
        BinaryTree::Node(l, r) => DyckWord::compose(&tree_to_dyck(l), &tree_to_dyck(r)),
    }
}

pub fn dyck_to_tree(w: &DyckWord) -> BinaryTree {
    match w.decompose() {
        None => BinaryTree::Empty,
        Some((u, v)) => BinaryTree::node(dyck_to_tree(&u), dyck_to_tree(&v)),
    }
}

/// A finite formal combination of Dyck words with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DyckCombination {
    terms: BTreeMap<DyckWord, BigRational>,
}

impl DyckCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: DyckWord) -> Self {
        let mut c = Self::zero();
        c.add_term(w, BigRational::one());
        c
    }

    pub fn add_term(&mut self, w: DyckWord, coeff: BigRational) {
        let entry = self.terms.entry(w).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&mut self, other: &DyckCombination) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn terms(&self) -> &BTreeMap<DyckWord, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, w: &DyckWord) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().sum()
    }

    fn map_words(&self, f: impl Fn(&DyckWord) -> DyckWord) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Linear extension of `u x v x* ⋀ w = u x v w x*`; the empty word maps to 0.
    pub fn wedge(&self, w: &DyckWord) -> Self {
        let mut out = Self::zero();
        for (left, c) in &self.terms {
            if let Some((u, v)) = left.decompose() {
                out.add_term(DyckWord::compose(&u, &v.concat(w)), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for DyckCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for DyckCombination {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.terms.iter().map(|(w, c)| (w.to_string(), c.to_string())))
    }
}

/// `ν(1) = 0`, `ν(u x v x*) = ν(u) ⋀ (x v x*) + μ(v) · x u x*`.
pub fn nu_operator(w: &DyckWord) -> DyckCombination {
    let Some((u, v)) = w.decompose() else {
        return DyckCombination::zero();
    };
    let xvx = DyckWord::compose(&DyckWord::empty(), &v);
    let xux = DyckWord::compose(&DyckWord::empty(), &u);
    let mut out = nu_operator(&u).wedge(&xvx);
    out.add(&mu_operator(&v).map_words(|p| p.concat(&xux)));
    out
}

/// `μ(w) = w + ν(w)`.
pub fn mu_operator(w: &DyckWord) -> DyckCombination {
    let mut out = DyckCombination::word(w.clone());
    out.add(&nu_operator(w));
    out
}

/// States and rows of the μ-operator matrix over `D_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjacency {
    pub states: Vec<DyckWord>,
    pub rows: Vec<Vec<BigRational>>,
}

/// Row `w` holds the coefficients of `μ(w)` on the lexicographically ordered `D_n`.
pub fn nt_adjacency(n: usize) -> Result<Adjacency> {
    Error::check_bound("n", n, MAX_DYCK_MATRIX)?;
    let states = enumerate_dyck(n)?;
    let index: BTreeMap<&DyckWord, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows = states
        .iter()
        .map(|w| {
            let mut row = vec![BigRational::zero(); states.len()];
            for (t, c) in mu_operator(w).terms() {
                row[index[t]] = c.clone();
            }
            row
        })
        .collect();
    Ok(Adjacency { states, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::gaussian::shifted_recursion1;
    use crate::rational::int;

    fn w(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_trees(0).unwrap(), vec![BinaryTree::Empty]);
        let counts: Vec<usize> = (0..=8).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        assert!(enumerate_trees(15).is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(BinaryTree::Empty.factorial(), BigInt::one());
        assert_eq!(BinaryTree::vertex().factorial(), BigInt::one());
        assert_eq!(BinaryTree::left_chain(5).factorial(), BigInt::from(120));
        let cherry = BinaryTree::node(BinaryTree::vertex(), BinaryTree::vertex());
        assert_eq!(cherry.factorial(), BigInt::from(3));
    }

    #[test]
    fn s_values() {
        let s = shifted_recursion1(12);
        for n in 1..=12 {
            assert_eq!(s_via_trees(n).unwrap(), s[n], "n = {n}");
        }
        assert_eq!(s_via_trees(3).unwrap(), BigInt::from(27));
    }

    #[test]
    fn labelings_match_factorial() {
        for n in 0..=7 {
            for t in enumerate_trees(n).unwrap() {
                assert_eq!(count_anti_increasing_labelings(&t).unwrap(), t.factorial(), "{t}");
            }
        }
        assert_eq!(count_anti_increasing_labelings(&BinaryTree::left_chain(2)).unwrap(), BigInt::from(2));
        assert!(count_anti_increasing_labelings(&BinaryTree::left_chain(9)).is_err());
    }

    #[test]
    fn alpha_bijection() {
        assert_eq!(tree_to_dyck(&BinaryTree::vertex()), w("UD"));
        for n in 0..=6 {
            let trees = enumerate_trees(n).unwrap();
            let mut words: Vec<DyckWord> = trees.iter().map(tree_to_dyck).collect();
            for (t, d) in trees.iter().zip(&words) {
                assert_eq!(&dyck_to_tree(d), t);
                assert_eq!(d.factorial(), t.factorial());
            }
            words.sort();
            assert_eq!(words, enumerate_dyck(n).unwrap());
        }
        assert_eq!(w("UUDUDD").factorial(), BigInt::from(6));
        assert_eq!(dyck_to_tree(&w("UUDUDD")).factorial(), BigInt::from(6));
    }

    #[test]
    fn parse_errors() {
        assert!("UDD".parse::<DyckWord>().is_err());
        assert!("DU".parse::<DyckWord>().is_err());
        assert!("UX".parse::<DyckWord>().is_err());
        assert!("(()".parse::<BinaryTree>().is_err());
    }

    #[test]
    fn tree_text_round_trip() {
        for t in enumerate_trees(5).unwrap() {
            assert_eq!(t.to_string().parse::<BinaryTree>().unwrap(), t);
        }
        assert_eq!(BinaryTree::vertex().to_string(), "()");
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_operator(&DyckWord::empty()), DyckCombination::word(DyckWord::empty()));
        let mut expect = DyckCombination::zero();
        expect.add_term(w("UD"), int(2));
        assert_eq!(mu_operator(&w("UD")), expect);
        let m = mu_operator(&w("UUDUDD"));
        assert_eq!(m.terms().len(), 3);
        assert_eq!(m.coefficient(&w("UUDUDD")), int(1));
        assert_eq!(m.coefficient(&w("UUDDUD")), int(2));
        assert_eq!(m.coefficient(&w("UDUDUD")), int(1));
    }

    #[test]
    fn mu_coefficient_sums() {
        for n in 0..=5 {
            for d in enumerate_dyck(n).unwrap() {
                let m = mu_operator(&d);
                assert_eq!(m.coefficient_sum(), int(n as i64 + 1), "{d}");
                for (t, c) in m.terms() {
                    assert_eq!(t.half_len(), n);
                    assert!(c > &BigRational::zero() && c.is_integer());
                }
            }
        }
    }

    #[test]
    fn adjacency_small() {
        let a = nt_adjacency(1).unwrap();
        assert_eq!(a.rows, vec![vec![int(2)]]);
        let a = nt_adjacency(2).unwrap();
        assert_eq!(a.states, vec![w("UUDD"), w("UDUD")]);
        for row in &a.rows {
            assert_eq!(row.iter().sum::<BigRational>(), int(3));
        }
    }
}
