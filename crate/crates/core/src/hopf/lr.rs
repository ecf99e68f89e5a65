//! The Loday–Ronco product and coproduct, lifted to labeled trees.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::tree::{enumerate_ordered, Combination, LabeledTree, OrderedTree, TensorCombination, TreeCombination};
use crate::error::{Error, Result};

pub type LabeledCombination = Combination<LabeledTree>;
pub type LabeledTensor = Combination<(LabeledTree, LabeledTree)>;

/// `s * t = s₁ ∨_k (s₂ * t) + (s * t₁) ∨_l t₂`, with `∅ * t = t * ∅ = t`.
pub fn lr_product_labeled(s: &LabeledTree, t: &LabeledTree) -> LabeledCombination {
    let (LabeledTree::Node(k, s1, s2), LabeledTree::Node(l, t1, t2)) = (s, t) else {
        return Combination::single(if s.is_empty() { t.clone() } else { s.clone() });
    };
    let mut out = lr_product_labeled(s2, t).map(|x| Combination::single(LabeledTree::join((**s1).clone(), *k, x.clone())));
    out.add(&lr_product_labeled(s, t1).map(|x| Combination::single(LabeledTree::join(x.clone(), *l, (**t2).clone()))));
    out
}

/// `Δ(u ∨_k v) = Σ (u₁ * v₁') ⊗ (u₂ ∨_k v₂') + t ⊗ ∅`, `Δ(∅) = ∅ ⊗ ∅`.
pub fn lr_coproduct_labeled(t: &LabeledTree) -> LabeledTensor {
    let LabeledTree::Node(k, u, v) = t else {
        return Combination::single((LabeledTree::Empty, LabeledTree::Empty));
    };
    let mut out = lr_coproduct_labeled(u).bilinear(&lr_coproduct_labeled(v), |(u1, u2), (v1, v2)| {
        let right = LabeledTree::join(u2.clone(), *k, v2.clone());
        lr_product_labeled(u1, v1).map(|p| Combination::single((p.clone(), right.clone())))
    });
    out.add_term((t.clone(), LabeledTree::Empty), BigRational::one());
    out
}

fn order(t: &LabeledTree) -> Result<OrderedTree> {
    OrderedTree::new(t).map_err(|_| Error::Verification(format!("term {t} is not anti-increasing")))
}

fn order_trees(c: &LabeledCombination) -> Result<TreeCombination> {
    let mut out = Combination::zero();
    for (t, coeff) in c.terms() {
        out.add_term(order(t)?, coeff.clone());
    }
    Ok(out)
}

pub(crate) fn order_tensor(c: &LabeledTensor) -> Result<TensorCombination> {
    let mut out = Combination::zero();
    for ((a, b), coeff) in c.terms() {
        out.add_term((order(a)?, order(b)?), coeff.clone());
    }
    Ok(out)
}

/// Product of ordered trees: the labels of `t` are shifted above those of `s`.
pub fn lr_product(s: &OrderedTree, t: &OrderedTree) -> Result<TreeCombination> {
    order_trees(&lr_product_labeled(s.tree(), &t.shift(s.size() as u32)))
}

pub fn lr_coproduct(t: &OrderedTree) -> Result<TensorCombination> {
    order_tensor(&lr_coproduct_labeled(t.tree()))
}

/// Coproduct of an anti-increasingly labeled tree, factors reduced to ordered trees.
pub fn lr_coproduct_of_labeled(t: &LabeledTree) -> Result<TensorCombination> {
    if !t.is_anti_increasing() {
        return Err(Error::domain(format!("{t} is not anti-increasingly labeled")));
    }
    order_tensor(&lr_coproduct_labeled(t))
}

fn product_comb(a: &TreeCombination, b: &TreeCombination) -> Result<TreeCombination> {
    let mut out = Combination::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            out.add(&lr_product(x, y)?.scaled(&(cx * cy)));
        }
    }
    Ok(out)
}

/// Antipode by the graded recursion `S(t) = −Σ' S(t₁) * t₂` over `Δ(t) − t ⊗ ∅`.
pub struct Antipode {
    memo: HashMap<OrderedTree, TreeCombination>,
}

impl Default for Antipode {
    fn default() -> Self {
        Self::new()
    }
}

impl Antipode {
    pub fn new() -> Self {
        Antipode { memo: HashMap::new() }
    }

    pub fn apply(&mut self, t: &OrderedTree) -> Result<TreeCombination> {
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let value = if t.is_empty() {
            Combination::single(OrderedTree::empty())
        } else {
            let mut acc = Combination::zero();
            for ((a, b), c) in lr_coproduct(t)?.terms() {
                if a == t && b.is_empty() {
                    continue;
                }
                let sa = self.apply(a)?;
                acc.add(&product_comb(&sa, &Combination::single(b.clone()))?.scaled(c));
            }
            acc.scaled(&-BigRational::one())
        };
        self.memo.insert(t.clone(), value.clone());
        Ok(value)
    }
}

pub fn antipode(t: &OrderedTree) -> Result<TreeCombination> {
    Antipode::new().apply(t)
}

/// Outcome of an exhaustive law check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: &'static str,
    pub max_size: usize,
    pub cases: usize,
    pub holds: bool,
    pub counterexample: Option<String>,
}

impl LawReport {
    fn run(law: &'static str, max_size: usize, cases: Vec<Vec<OrderedTree>>, check: impl Fn(&[OrderedTree]) -> Result<bool>) -> Result<Self> {
        let mut counterexample = None;
        for case in &cases {
            if !check(case)? {
                counterexample = Some(case.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" , "));
                break;
            }
        }
        Ok(LawReport {
            law,
            max_size,
            cases: cases.len(),
            holds: counterexample.is_none(),
            counterexample,
        })
    }
}

pub(crate) fn trees_up_to(n: usize) -> Result<Vec<OrderedTree>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_ordered(k)?);
    }
    Ok(out)
}

/// Tuples of ordered trees whose total size is at most `n`.
pub(crate) fn tuples_up_to(n: usize, arity: usize) -> Result<Vec<Vec<OrderedTree>>> {
    let all = trees_up_to(n)?;
    let mut acc: Vec<Vec<OrderedTree>> = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &acc {
            let used: usize = prefix.iter().map(|t| t.size()).sum();
            for t in all.iter().filter(|t| used + t.size() <= n) {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    Ok(acc)
}

type Triple = (OrderedTree, OrderedTree, OrderedTree);

pub(crate) fn coassociativity_with(
    delta: &impl Fn(&OrderedTree) -> Result<TensorCombination>,
    t: &OrderedTree,
) -> Result<bool> {
    let d = delta(t)?;
    let mut left: Combination<Triple> = Combination::zero();
    let mut right: Combination<Triple> = Combination::zero();
    for ((a, b), c) in d.terms() {
        for ((a1, a2), c2) in delta(a)?.terms() {
            left.add_term((a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        for ((b1, b2), c2) in delta(b)?.terms() {
            right.add_term((a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    Ok(left == right)
}

pub(crate) fn counit_with(delta: &impl Fn(&OrderedTree) -> Result<TensorCombination>, t: &OrderedTree) -> Result<bool> {
    let d = delta(t)?;
    let mut left = TreeCombination::zero();
    let mut right = TreeCombination::zero();
    for ((a, b), c) in d.terms() {
        if a.is_empty() {
            left.add_term(b.clone(), c.clone());
        }
        if b.is_empty() {
            right.add_term(a.clone(), c.clone());
        }
    }
    let expect = Combination::single(t.clone());
    Ok(left == expect && right == expect)
}

pub fn coassociativity_check(n: usize) -> Result<LawReport> {
    let cases = trees_up_to(n)?.into_iter().map(|t| vec![t]).collect();
    LawReport::run("coassociativity", n, cases, |c| coassociativity_with(&lr_coproduct, &c[0]))
}

pub fn counit_check(n: usize) -> Result<LawReport> {
    let cases = trees_up_to(n)?.into_iter().map(|t| vec![t]).collect();
    LawReport::run("counit", n, cases, |c| counit_with(&lr_coproduct, &c[0]))
}

/// Both antipode laws `m(S⊗id)Δ = m(id⊗S)Δ = ηε`.
pub fn antipode_check(n: usize) -> Result<LawReport> {
    let cases = trees_up_to(n)?.into_iter().map(|t| vec![t]).collect();
    let s = std::cell::RefCell::new(Antipode::new());
    LawReport::run("antipode", n, cases, |c| {
        let t = &c[0];
        let mut left = TreeCombination::zero();
        let mut right = TreeCombination::zero();
        for ((a, b), coeff) in lr_coproduct(t)?.terms() {
            let sa = s.borrow_mut().apply(a)?;
            let sb = s.borrow_mut().apply(b)?;
            left.add(&product_comb(&sa, &Combination::single(b.clone()))?.scaled(coeff));
            right.add(&product_comb(&Combination::single(a.clone()), &sb)?.scaled(coeff));
        }
        let expect = if t.is_empty() {
            Combination::single(OrderedTree::empty())
        } else {
            Combination::zero()
        };
        Ok(left == expect && right == expect)
    })
}

pub fn associativity_check(n: usize) -> Result<LawReport> {
    LawReport::run("associativity", n, tuples_up_to(n, 3)?, |c| {
        let (r, s, t) = (&c[0], &c[1], &c[2]);
        let left = product_comb(&lr_product(r, s)?, &Combination::single(t.clone()))?;
        let right = product_comb(&Combination::single(r.clone()), &lr_product(s, t)?)?;
        Ok(left == right)
    })
}

/// `Δ(s * t) = Δ(s) Δ(t)` with the componentwise product on tensors.
pub fn multiplicativity_check(n: usize) -> Result<LawReport> {
    LawReport::run("multiplicativity", n, tuples_up_to(n, 2)?, |c| {
        let (s, t) = (&c[0], &c[1]);
        let mut left = TensorCombination::zero();
        for (p, cp) in lr_product(s, t)?.terms() {
            left.add(&lr_coproduct(p)?.scaled(cp));
        }
        let mut right = TensorCombination::zero();
        for ((a, b), ca) in lr_coproduct(s)?.terms() {
            for ((x, y), cx) in lr_coproduct(t)?.terms() {
                let first = lr_product(a, x)?;
                let second = lr_product(b, y)?;
                let coeff = ca * cx;
                for (f, cf) in first.terms() {
                    for (g, cg) in second.terms() {
                        right.add_term((f.clone(), g.clone()), &coeff * cf * cg);
                    }
                }
            }
        }
        Ok(left == right)
    })
}

/// Products of anti-increasing trees with separated labels are sums of
/// anti-increasing trees, and coproduct factors are anti-increasing.
pub fn closure_check(n: usize) -> Result<LawReport> {
    LawReport::run("closure", n, tuples_up_to(n, 2)?, |c| {
        let (s, t) = (c[0].tree(), c[1].shift(c[0].size() as u32));
        let prod_ok = lr_product_labeled(s, &t).terms().keys().all(|x| x.is_anti_increasing() && x.size() == s.size() + t.size());
        let co_ok = lr_coproduct_labeled(s)
            .terms()
            .keys()
            .all(|(a, b)| a.is_anti_increasing() && b.is_anti_increasing() && a.size() + b.size() == s.size());
        Ok(prod_ok && co_ok)
    })
}

/// Results on ordered trees do not depend on the concrete labelings chosen.
pub fn label_independence_check(n: usize) -> Result<LawReport> {
    LawReport::run("label independence", n, tuples_up_to(n, 2)?, |c| {
        let (s, t) = (&c[0], &c[1]);
        // spread labels apart, keeping the order
        let s2 = s.map_labels(&|k| 3 * k + 1);
        let t2 = t.map_labels(&|k| 5 * k + 100);
        let mut prod = TreeCombination::zero();
        for (x, cx) in lr_product_labeled(&s2, &t2).terms() {
            prod.add_term(order(x)?, cx.clone());
        }
        let co = order_tensor(&lr_coproduct_labeled(&s2))?;
        Ok(prod == lr_product(s, t)? && co == lr_coproduct(s)?)
    })
}
