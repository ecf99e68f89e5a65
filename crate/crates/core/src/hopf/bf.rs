//! The over-product `s / t` and the Brouder–Frabetti coproduct.

use num_rational::BigRational;
use num_traits::One;

use super::lr::{coassociativity_with, counit_with, order_tensor, trees_up_to, tuples_up_to, LabeledTensor, LawReport};
use super::tree::{Combination, LabeledTree, OrderedTree, TensorCombination};
use crate::error::{Error, Result};

/// Grafts `s` onto the leftmost leaf of `t`, keeping labels.
pub fn bf_over_labeled(s: &LabeledTree, t: &LabeledTree) -> LabeledTree {
    match t {
        LabeledTree::Empty => s.clone(),
        LabeledTree::Node(k, l, r) => LabeledTree::join(bf_over_labeled(s, l), *k, (**r).clone()),
    }
}

/// `s / t` on ordered trees, the labels of `t` shifted above those of `s`.
pub fn bf_over(s: &OrderedTree, t: &OrderedTree) -> Result<OrderedTree> {
    OrderedTree::new(&bf_over_labeled(s.tree(), &t.shift(s.size() as u32)))
}

fn over_tensor(a: &LabeledTensor, b: &LabeledTensor) -> LabeledTensor {
    a.bilinear(b, |(a1, a2), (b1, b2)| {
        Combination::single((bf_over_labeled(a1, b1), bf_over_labeled(a2, b2)))
    })
}

fn v(k: u32, t: &LabeledTree) -> LabeledTree {
    LabeledTree::join(LabeledTree::Empty, k, t.clone())
}

/// Δ_BF on labeled trees, labels kept.
///
/// Every tree factors as `t₁ ∨_k t₂ = t₁ / V_k(t₂)` with `V_k(t) = ∅ ∨_k t`; Δ_BF is
/// multiplicative for `/`, and on generators
/// `Δ(V_k(s ∨_l u)) = V_k(s ∨_l u) ⊗ ∅ + (id ⊗ V_k)[Δ(s) / (Δ(V_l u) − V_l u ⊗ ∅)]`.
pub fn bf_coproduct_labeled(t: &LabeledTree) -> LabeledTensor {
    let empty = LabeledTree::Empty;
    let LabeledTree::Node(k, left, right) = t else {
        return Combination::single((empty.clone(), empty));
    };
    if !left.is_empty() {
        return over_tensor(&bf_coproduct_labeled(left), &bf_coproduct_labeled(&v(*k, right)));
    }
    let LabeledTree::Node(l, s, u) = &**right else {
        let mut out = Combination::single((t.clone(), empty.clone()));
        out.add_term((empty, t.clone()), BigRational::one());
        return out;
    };
    let vl = v(*l, u);
    let mut reduced = bf_coproduct_labeled(&vl);
    reduced.add_term((vl, empty.clone()), -BigRational::one());
    let inner = over_tensor(&bf_coproduct_labeled(s), &reduced);
    let mut out = inner.map(|(a, b)| Combination::single((a.clone(), v(*k, b))));
    out.add_term((t.clone(), empty), BigRational::one());
    out
}

pub fn bf_coproduct(t: &OrderedTree) -> Result<TensorCombination> {
    order_tensor(&bf_coproduct_labeled(t.tree()))
        .map_err(|e| Error::Structure(format!("Δ_BF of {t} leaves the ordered trees: {e}")))
}

pub fn bf_associativity_check(n: usize) -> Result<LawReport> {
    let cases = tuples_up_to(n, 3)?;
    let mut counterexample = None;
    for c in &cases {
        let left = bf_over(&bf_over(&c[0], &c[1])?, &c[2])?;
        let right = bf_over(&c[0], &bf_over(&c[1], &c[2])?)?;
        if left != right {
            counterexample = Some(format!("{} , {} , {}", c[0], c[1], c[2]));
            break;
        }
    }
    Ok(LawReport {
        law: "BF associativity",
        max_size: n,
        cases: cases.len(),
        holds: counterexample.is_none(),
        counterexample,
    })
}

fn single_law(law: &'static str, n: usize, check: impl Fn(&OrderedTree) -> Result<bool>) -> Result<LawReport> {
    let trees = trees_up_to(n)?;
    let mut counterexample = None;
    for t in &trees {
        if !check(t)? {
            counterexample = Some(t.to_string());
            break;
        }
    }
    Ok(LawReport {
        law,
        max_size: n,
        cases: trees.len(),
        holds: counterexample.is_none(),
        counterexample,
    })
}

/// All Δ_BF factors of anti-increasing trees are anti-increasing.
pub fn bf_closure_check(n: usize) -> Result<LawReport> {
    single_law("BF closure", n, |t| {
        Ok(bf_coproduct_labeled(t.tree())
            .terms()
            .keys()
            .all(|(a, b)| a.is_anti_increasing() && b.is_anti_increasing() && a.size() + b.size() == t.size()))
    })
}

pub fn bf_coassociativity_check(n: usize) -> Result<LawReport> {
    single_law("BF coassociativity", n, |t| coassociativity_with(&bf_coproduct, t))
}

pub fn bf_counit_check(n: usize) -> Result<LawReport> {
    single_law("BF counit", n, |t| counit_with(&bf_coproduct, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn o(s: &str) -> OrderedTree {
        OrderedTree::new(&s.parse().unwrap()).unwrap()
    }

    fn tensor(terms: &[(&str, &str, i64)]) -> TensorCombination {
        let mut c = TensorCombination::zero();
        for (a, b, k) in terms {
            c.add_term((o(a), o(b)), int(*k));
        }
        c
    }

    #[test]
    fn over_product() {
        let v = o("[1]");
        let e = OrderedTree::empty();
        assert_eq!(bf_over(&e, &v).unwrap(), v);
        assert_eq!(bf_over(&v, &e).unwrap(), v);
        assert_eq!(bf_over(&v, &v).unwrap(), o("[2,[1],[]]"));
        assert!(bf_associativity_check(3).unwrap().holds);
    }

    #[test]
    fn printed_examples() {
        assert_eq!(bf_coproduct(&OrderedTree::empty()).unwrap(), tensor(&[("[]", "[]", 1)]));
        assert_eq!(bf_coproduct(&o("[1]")).unwrap(), tensor(&[("[1]", "[]", 1), ("[]", "[1]", 1)]));
        let right = "[1,[],[2]]";
        assert_eq!(bf_coproduct(&o(right)).unwrap(), tensor(&[(right, "[]", 1), ("[]", right, 1)]));
        let left = "[1,[2],[]]";
        assert_eq!(
            bf_coproduct(&o(left)).unwrap(),
            tensor(&[(left, "[]", 1), ("[1]", "[1]", 2), ("[]", left, 1)])
        );
        let t = "[1,[],[2,[3],[]]]";
        assert_eq!(
            bf_coproduct(&o(t)).unwrap(),
            tensor(&[(t, "[]", 1), ("[1]", right, 1), ("[]", t, 1)])
        );
    }

    #[test]
    fn laws() {
        for r in [bf_closure_check(4).unwrap(), bf_counit_check(4).unwrap(), bf_coassociativity_check(4).unwrap()] {
            assert!(r.holds, "{r:?}");
        }
    }
}
