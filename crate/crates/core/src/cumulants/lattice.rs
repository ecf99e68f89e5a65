//! Moment–cumulant relations as sums over partition lattices.
//!
//! These enumerate the lattice directly and serve as small-order oracles for the
//! series recursions, and as the definition of the mixed formulas
//! (free from classical over connected partitions, boolean from free over
//! irreducible noncrossing partitions).

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{for_each_partition, LatticeKind, MoebiusTable, Partition};
use crate::rational::{RationalSeq, Role};

/// Largest order accepted by the lattice sums.
pub const MAX_LATTICE_ORDER: usize = 12;

fn block_product(p: &Partition, seq: &RationalSeq) -> BigRational {
    p.block_sizes()
        .iter()
        .fold(BigRational::one(), |acc, &s| acc * &seq[s])
}

fn check_order(seq: &RationalSeq, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("order must be positive"));
    }
    Error::check_bound("order", n, MAX_LATTICE_ORDER)?;
    if seq.order() < n {
        return Err(Error::domain(format!(
            "sequence has order {} but order {n} was requested",
            seq.order()
        )));
    }
    Ok(())
}

/// `Σ_{π ∈ L_n} Π_V seq_{|V|}` over the lattice of the given kind.
pub fn zeta_sum(kind: LatticeKind, seq: &RationalSeq, n: usize) -> Result<BigRational> {
    check_order(seq, n)?;
    let mut acc = BigRational::zero();
    for_each_partition(n, kind, |p| acc += block_product(p, seq))?;
    Ok(acc)
}

/// `Σ_{π ∈ L_n} m_π μ(π, 1̂)`: the order-`n` cumulant of the kind's independence.
pub fn moebius_sum(table: &MoebiusTable, m: &RationalSeq) -> Result<BigRational> {
    check_order(m, table.n())?;
    let mut acc = BigRational::zero();
    for p in table.elements() {
        let mu = table.to_top(p);
        if mu != 0 {
            acc += block_product(p, m) * BigRational::from_integer(mu.into());
        }
    }
    Ok(acc)
}

/// Möbius tables of `L_1, …, L_n`, built once and reused across sequences.
pub struct Inversion {
    kind: LatticeKind,
    tables: Vec<MoebiusTable>,
}

impl Inversion {
    pub fn new(kind: LatticeKind, n: usize) -> Result<Self> {
        let tables = (1..=n).map(|k| MoebiusTable::new(k, kind)).collect::<Result<_>>()?;
        Ok(Inversion { kind, tables })
    }

    /// Cumulants `κ_1 … κ_n` of `m` by Möbius inversion.
    pub fn cumulants(&self, m: &RationalSeq) -> Result<RationalSeq> {
        let role = match self.kind {
            LatticeKind::All => Role::Classical,
            LatticeKind::Noncrossing => Role::Free,
            LatticeKind::Interval => Role::Boolean,
        };
        let mut out = vec![BigRational::zero()];
        for table in &self.tables {
            out.push(moebius_sum(table, m)?);
        }
        RationalSeq::new(out, role)
    }
}

/// All cumulants through order `n` by Möbius inversion on `L_1, …, L_n`.
pub fn cumulants_by_inversion(kind: LatticeKind, m: &RationalSeq, n: usize) -> Result<RationalSeq> {
    Inversion::new(kind, n)?.cumulants(m)
}

/// All moments through order `n` as lattice sums of cumulant products.
pub fn moments_by_zeta(kind: LatticeKind, k: &RationalSeq, n: usize) -> Result<RationalSeq> {
    let mut out = vec![BigRational::one()];
    for order in 1..=n {
        out.push(zeta_sum(kind, k, order)?);
    }
    RationalSeq::moments(out)
}

/// `fc_n = Σ_{π connected} κ_π` over connected partitions of `[n]`.
pub fn free_from_classical(c: &RationalSeq, n: usize) -> Result<BigRational> {
    check_order(c, n)?;
    let mut acc = BigRational::zero();
    for_each_partition(n, LatticeKind::All, |p| {
        if p.is_connected() {
            acc += block_product(p, c);
        }
    })?;
    Ok(acc)
}

/// `bc_n = Σ_{π ∈ NC_irr} fc_π` over irreducible noncrossing partitions of `[n]`.
pub fn boolean_from_free(f: &RationalSeq, n: usize) -> Result<BigRational> {
    check_order(f, n)?;
    let mut acc = BigRational::zero();
    for_each_partition(n, LatticeKind::Noncrossing, |p| {
        // for noncrossing partitions, irreducible means 1 and n share a block
        if p.block_of(1) == p.block_of(n) {
            acc += block_product(p, f);
        }
    })?;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::series;
    use crate::rational::{int, rat};

    fn gaussian_cc(n: usize) -> RationalSeq {
        let v = (0..=n).map(|k| int((k == 2) as i64)).collect();
        RationalSeq::new(v, Role::Classical).unwrap()
    }

    #[test]
    fn free_from_classical_gaussian() {
        let c = gaussian_cc(8);
        assert_eq!(free_from_classical(&c, 6).unwrap(), int(4));
        assert_eq!(free_from_classical(&c, 8).unwrap(), int(27));
        let only_first = RationalSeq::new(vec![int(0), int(3), int(0), int(0)], Role::Classical).unwrap();
        assert_eq!(free_from_classical(&only_first, 3).unwrap(), int(0));
    }

    #[test]
    fn boolean_from_free_examples() {
        let semi = RationalSeq::from_ints(&[0, 0, 1, 0, 0], Role::Free).unwrap();
        assert_eq!(boolean_from_free(&semi, 4).unwrap(), int(1));
        let g = RationalSeq::from_ints(&[0, 0, 1, 0, 1], Role::Free).unwrap();
        assert_eq!(boolean_from_free(&g, 4).unwrap(), int(2));
        let f = RationalSeq::new(vec![int(0), rat(2, 3)], Role::Free).unwrap();
        assert_eq!(boolean_from_free(&f, 1).unwrap(), rat(2, 3));
    }

    #[test]
    fn mixed_formulas_match_series_composition() {
        let m = RationalSeq::moments(vec![int(1), rat(1, 3), int(2), rat(-1, 2), int(5), rat(7, 5), int(1)]).unwrap();
        let c = series::classical_from_moments(&m).unwrap();
        let f = series::free_from_moments(&m).unwrap();
        let b = series::boolean_from_moments(&m).unwrap();
        for n in 1..=6 {
            assert_eq!(free_from_classical(&c, n).unwrap(), f[n]);
            assert_eq!(boolean_from_free(&f, n).unwrap(), b[n]);
        }
    }

    #[test]
    fn inversion_matches_series_small() {
        let m = RationalSeq::moments(vec![int(1), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5), rat(1, 6)]).unwrap();
        assert_eq!(
            cumulants_by_inversion(LatticeKind::All, &m, 5).unwrap(),
            series::classical_from_moments(&m).unwrap()
        );
        assert_eq!(
            cumulants_by_inversion(LatticeKind::Noncrossing, &m, 5).unwrap(),
            series::free_from_moments(&m).unwrap()
        );
        assert_eq!(
            cumulants_by_inversion(LatticeKind::Interval, &m, 5).unwrap(),
            series::boolean_from_moments(&m).unwrap()
        );
        let f = series::free_from_moments(&m).unwrap();
        assert_eq!(moments_by_zeta(LatticeKind::Noncrossing, &f, 5).unwrap(), m);
    }

    #[test]
    fn order_is_bounded() {
        let c = gaussian_cc(14);
        assert!(matches!(free_from_classical(&c, 13), Err(Error::Bound { .. })));
        assert!(free_from_classical(&c, 0).is_err());
    }
}
