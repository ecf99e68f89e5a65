//! Set partitions of `[n]`, their lattices, statistics and Möbius functions.
//!
//! A [`Partition`] is stored as its restricted-growth string (RGS): element `i`
//! carries the index of its block, blocks being numbered in order of their least
//! element. The RGS is unique per partition, so equality, hashing and ordering
//! all work on it directly; the derived order is lexicographic in the RGS.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set a [`Partition`] can represent.
pub const MAX_N: usize = 24;
/// Bound for listing all of `Π_n` (Bell(14) ≈ 1.9·10⁸ entries).
pub const MAX_ALL: usize = 14;
/// Bound for listing `NC_n` (Catalan(18) ≈ 4.8·10⁸ entries).
pub const MAX_NONCROSSING: usize = 18;
pub const MAX_INTERVAL: usize = MAX_N;
/// Bound for listing pairings; counting by visitor goes to [`MAX_PAIRING_COUNT`].
pub const MAX_PAIRING_LIST: usize = 16;
pub const MAX_PAIRING_COUNT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LatticeKind {
    All,
    Noncrossing,
    Interval,
}

impl LatticeKind {
    pub fn bound(self) -> usize {
        match self {
            LatticeKind::All => MAX_ALL,
            LatticeKind::Noncrossing => MAX_NONCROSSING,
            LatticeKind::Interval => MAX_INTERVAL,
        }
    }

    pub fn contains(self, p: &Partition) -> bool {
        match self {
            LatticeKind::All => true,
            LatticeKind::Noncrossing => p.is_noncrossing(),
            LatticeKind::Interval => p.is_interval(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: u8,
    rgs: [u8; MAX_N],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub connected: bool,
    pub irreducible: bool,
    pub noncrossing: bool,
    pub interval: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statistics {
    /// Connected components of the crossing graph on blocks.
    pub cc: usize,
    /// Quadruples a<b<c<d with a,c and b,d in two distinct blocks.
    pub cr: usize,
    /// Components made of exactly one two-element block.
    pub h: usize,
    /// Inner-point count of each block, in block order.
    pub ip: Vec<usize>,
}

impl Partition {
    /// Builds a partition from an RGS given with 0-based block labels.
    pub fn from_rgs(rgs: &[u8]) -> Result<Self> {
        if rgs.is_empty() || rgs.len() > MAX_N {
            return Err(Error::domain(format!(
                "ground set size must be in 1..={MAX_N}, got {}",
                rgs.len()
            )));
        }
        let mut max = 0u8;
        for (i, &b) in rgs.iter().enumerate() {
            let ok = if i == 0 { b == 0 } else { b <= max + 1 };
            if !ok {
                return Err(Error::domain(format!("not a restricted growth string: {rgs:?}")));
            }
            max = max.max(b);
        }
        Ok(Self::from_rgs_unchecked(rgs))
    }

    fn from_rgs_unchecked(rgs: &[u8]) -> Self {
        let mut a = [0u8; MAX_N];
        a[..rgs.len()].copy_from_slice(rgs);
        Partition {
            n: rgs.len() as u8,
            rgs: a,
        }
    }

    /// Builds a partition from 1-based blocks in any order.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::domain(format!("ground set size must be in 1..={MAX_N}, got {n}")));
        }
        let mut owner = vec![usize::MAX; n];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::domain(format!("element {e} outside 1..={n}")));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::domain(format!("element {e} appears twice")));
                }
                owner[e - 1] = bi;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::domain(format!("element {} is not covered", missing + 1)));
        }
        Ok(Self::canonical_from_labels(&owner))
    }

    /// Relabels arbitrary block labels into the canonical RGS.
    fn canonical_from_labels(labels: &[usize]) -> Self {
        let mut map: HashMap<usize, u8> = HashMap::new();
        let rgs: Vec<u8> = labels
            .iter()
            .map(|l| {
                let next = map.len() as u8;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Self::from_rgs_unchecked(&rgs)
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs[..self.size()]
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs().iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Block of the 1-based element `e`, as a block index.
    pub fn block_of(&self, e: usize) -> usize {
        self.rgs[e - 1] as usize
    }

    /// Blocks as sorted 1-based element lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs().iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &b in self.rgs() {
            sizes[b as usize] += 1;
        }
        sizes
    }

    pub fn is_pairing(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    /// Whether `self` refines `other` (`self ≤ other`).
    pub fn refines(&self, other: &Partition) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (a, b) in self.rgs().iter().zip(other.rgs()) {
            let slot = &mut image[*a as usize];
            if *slot == u8::MAX {
                *slot = *b;
            } else if *slot != *b {
                return false;
            }
        }
        true
    }

    fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.num_blocks();
        let rgs = self.rgs();
        let mut out = Vec::new();
        for x in 0..k {
            for y in x + 1..k {
                // blocks cross iff their interleaving has at least four runs
                let mut runs = 0;
                let mut last = u8::MAX;
                for &b in rgs {
                    if (b as usize == x || b as usize == y) && b != last {
                        runs += 1;
                        last = b;
                    }
                }
                if runs >= 4 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Component index of each block in the crossing graph.
    fn components(&self) -> Vec<usize> {
        let k = self.num_blocks();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (x, y) in self.crossing_pairs() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        (0..k).map(|b| find(&mut parent, b)).collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        // an NC partition has no pattern a<b<c<d with a,c | b,d in distinct blocks;
        // scanning with a stack of open blocks detects it in linear time
        let rgs = self.rgs();
        let mut last = vec![0usize; self.num_blocks()];
        for (i, &b) in rgs.iter().enumerate() {
            last[b as usize] = i;
        }
        let mut stack: Vec<u8> = Vec::new();
        let mut seen = vec![false; self.num_blocks()];
        for (i, &b) in rgs.iter().enumerate() {
            if seen[b as usize] {
                while let Some(&top) = stack.last() {
                    if top == b {
                        break;
                    }
                    if last[top as usize] > i {
                        return false;
                    }
                    stack.pop();
                }
            } else {
                seen[b as usize] = true;
                stack.push(b);
            }
            if last[b as usize] == i && stack.last() == Some(&b) {
                stack.pop();
            }
        }
        true
    }

    pub fn is_interval(&self) -> bool {
        self.rgs().windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// No proper subinterval of `[n]` is a union of blocks.
    pub fn is_connected(&self) -> bool {
        let rgs = self.rgs();
        let n = rgs.len();
        let k = self.num_blocks();
        let (mut lo, mut hi) = (vec![usize::MAX; k], vec![0; k]);
        for (i, &b) in rgs.iter().enumerate() {
            lo[b as usize] = lo[b as usize].min(i);
            hi[b as usize] = i;
        }
        for i in 0..n {
            let mut hi_max = 0;
            for j in i..n {
                let b = rgs[j] as usize;
                if lo[b] < i {
                    break;
                }
                hi_max = hi_max.max(hi[b]);
                if hi_max == j && !(i == 0 && j == n - 1) {
                    return false;
                }
            }
        }
        true
    }

    /// `1` and `n` lie in the same connected component.
    pub fn is_irreducible(&self) -> bool {
        let comp = self.components();
        comp[self.block_of(1)] == comp[self.block_of(self.size())]
    }

    pub fn classify(&self) -> Flags {
        Flags {
            connected: self.is_connected(),
            irreducible: self.is_irreducible(),
            noncrossing: self.is_noncrossing(),
            interval: self.is_interval(),
        }
    }

    pub fn crossings(&self) -> usize {
        let rgs = self.rgs();
        let n = rgs.len();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if rgs[b] == rgs[a] {
                    continue;
                }
                for c in b + 1..n {
                    if rgs[c] != rgs[a] {
                        continue;
                    }
                    count += (c + 1..n).filter(|&d| rgs[d] == rgs[b]).count();
                }
            }
        }
        count
    }

    pub fn statistics(&self) -> Statistics {
        let comp = self.components();
        let mut roots: Vec<usize> = comp.clone();
        roots.sort_unstable();
        roots.dedup();
        let sizes = self.block_sizes();
        let h = roots
            .iter()
            .filter(|&&r| {
                let members: Vec<usize> = (0..comp.len()).filter(|&b| comp[b] == r).collect();
                members.len() == 1 && sizes[members[0]] == 2
            })
            .count();
        let ip = self
            .blocks()
            .iter()
            .map(|b| {
                let (lo, hi) = (b[0], *b.last().unwrap());
                (hi - lo + 1) - b.len()
            })
            .collect();
        Statistics {
            cc: roots.len(),
            cr: self.crossings(),
            h,
            ip,
        }
    }

    pub fn bottom(n: usize) -> Result<Self> {
        let rgs: Vec<u8> = (0..n as u8).collect();
        Self::from_rgs(&rgs)
    }

    pub fn top(n: usize) -> Result<Self> {
        Self::from_rgs(&vec![0; n])
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                format!("[{}]", items.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let n = blocks.iter().map(|b| b.len()).sum();
        Partition::from_blocks(n, &blocks).map_err(serde::de::Error::custom)
    }
}

/// Calls `visit` on every partition of the given kind, in RGS lexicographic order.
pub fn for_each_partition(n: usize, kind: LatticeKind, mut visit: impl FnMut(&Partition)) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::bound("n", n, MAX_N));
    }
    let mut rgs = vec![0u8; n];
    let mut first = vec![0usize; n];
    let mut last = vec![0usize; n];
    rec_partitions(kind, 1, 0, &mut rgs, &mut first, &mut last, &mut visit);
    Ok(())
}

fn rec_partitions(
    kind: LatticeKind,
    i: usize,
    max: u8,
    rgs: &mut Vec<u8>,
    first: &mut [usize],
    last: &mut [usize],
    visit: &mut impl FnMut(&Partition),
) {
    if i == rgs.len() {
        visit(&Partition::from_rgs_unchecked(rgs));
        return;
    }
    for b in 0..=max + 1 {
        let allowed = match kind {
            LatticeKind::All => true,
            LatticeKind::Interval => b == rgs[i - 1] || b == max + 1,
            LatticeKind::Noncrossing => {
                b == max + 1 || {
                    // joining b is safe iff no block opened before last(b) reappears after it
                    let l = last[b as usize];
                    (l + 1..i).all(|j| first[rgs[j] as usize] > l)
                }
            }
        };
        if !allowed {
            continue;
        }
        rgs[i] = b;
        let saved_last = last[b as usize];
        if b == max + 1 {
            first[b as usize] = i;
        }
        last[b as usize] = i;
        rec_partitions(kind, i + 1, max.max(b), rgs, first, last, visit);
        last[b as usize] = saved_last;
    }
}

pub fn enumerate_partitions(n: usize, kind: LatticeKind) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    Error::check_bound("n", n, kind.bound())?;
    let mut out = Vec::new();
    for_each_partition(n, kind, |p| out.push(*p))?;
    Ok(out)
}

/// Calls `visit` on every pairing of `[n]`; nothing for odd `n`.
pub fn for_each_pairing(n: usize, mut visit: impl FnMut(&Partition)) -> Result<()> {
    Error::check_bound("n", n, MAX_PAIRING_COUNT)?;
    if n == 0 || n % 2 == 1 {
        return Ok(());
    }
    let mut labels = vec![usize::MAX; n];
    rec_pairings(&mut labels, 0, &mut visit);
    Ok(())
}

fn rec_pairings(labels: &mut Vec<usize>, next_label: usize, visit: &mut impl FnMut(&Partition)) {
    let Some(i) = labels.iter().position(|&l| l == usize::MAX) else {
        let rgs: Vec<u8> = labels.iter().map(|&l| l as u8).collect();
        visit(&Partition::from_rgs_unchecked(&rgs));
        return;
    };
    labels[i] = next_label;
    for j in i + 1..labels.len() {
        if labels[j] == usize::MAX {
            labels[j] = next_label;
            rec_pairings(labels, next_label + 1, visit);
            labels[j] = usize::MAX;
        }
    }
    labels[i] = usize::MAX;
}

pub fn enumerate_pairings(n: usize) -> Result<Vec<Partition>> {
    Error::check_bound("n", n, MAX_PAIRING_LIST)?;
    let mut out = Vec::new();
    for_each_pairing(n, |p| out.push(*p))?;
    out.sort();
    Ok(out)
}

/// Number of connected pairings of `[two_n]`, by enumeration.
pub fn count_connected_pairings(two_n: usize) -> Result<BigInt> {
    if two_n == 0 || two_n % 2 == 1 {
        return Err(Error::domain(format!("expected a positive even order, got {two_n}")));
    }
    let mut count: u64 = 0;
    for_each_pairing(two_n, |p| {
        if p.statistics_cc_is_one() {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

impl Partition {
    fn statistics_cc_is_one(&self) -> bool {
        let comp = self.components();
        comp.iter().all(|&c| c == comp[0])
    }
}

/// Set partitions of `k` atoms, as RGS, in lexicographic order.
fn atom_partitions(k: usize, mut visit: impl FnMut(&[u8])) {
    fn rec(i: usize, max: u8, rgs: &mut Vec<u8>, visit: &mut impl FnMut(&[u8])) {
        if i == rgs.len() {
            visit(rgs);
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, visit);
        }
    }
    if k == 0 {
        return;
    }
    let mut rgs = vec![0u8; k];
    rec(1, 0, &mut rgs, &mut visit);
}

/// Merges the blocks of `p` according to a partition of its blocks.
fn merge(p: &Partition, atoms: &[u8]) -> Partition {
    // atoms are ordered by least element, so the image is already an RGS
    let rgs: Vec<u8> = p.rgs().iter().map(|&b| atoms[b as usize]).collect();
    Partition::from_rgs_unchecked(&rgs)
}

/// `μ(σ, 1̂)` for every `σ` in one lattice, computed by zeta inversion from the top.
pub struct MoebiusTable {
    kind: LatticeKind,
    n: usize,
    elements: Vec<Partition>,
    values: HashMap<Partition, i64>,
}

impl MoebiusTable {
    pub fn new(n: usize, kind: LatticeKind) -> Result<Self> {
        // Bell(12) coarsening sweeps are the practical ceiling for the inversion
        Error::check_bound("n", n, 12)?;
        let mut elements = enumerate_partitions(n, kind)?;
        elements.sort_by_key(|p| (p.num_blocks(), *p));
        let mut values: HashMap<Partition, i64> = HashMap::with_capacity(elements.len());
        for p in &elements {
            let k = p.num_blocks();
            if k == 1 {
                values.insert(*p, 1);
                continue;
            }
            let mut sum = 0i64;
            atom_partitions(k, |atoms| {
                if atoms.iter().enumerate().all(|(i, &a)| a as usize == i) {
                    return;
                }
                let q = merge(p, atoms);
                if kind.contains(&q) {
                    sum += values[&q];
                }
            });
            values.insert(*p, -sum);
        }
        Ok(MoebiusTable {
            kind,
            n,
            elements,
            values,
        })
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lattice elements, sorted by block count.
    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn to_top(&self, p: &Partition) -> i64 {
        self.values[p]
    }
}

/// Möbius function `μ(σ, π)` of the chosen lattice, by zeta inversion on `[σ, π]`.
pub fn moebius(kind: LatticeKind, sigma: &Partition, pi: &Partition) -> Result<BigInt> {
    if sigma.size() != pi.size() {
        return Err(Error::domain("partitions of different ground sets"));
    }
    for p in [sigma, pi] {
        if !kind.contains(p) {
            return Err(Error::domain(format!("{p} is not in the {kind:?} lattice")));
        }
    }
    if !sigma.refines(pi) {
        return Err(Error::Order(format!("{sigma} is not below {pi}")));
    }
    Error::check_bound("blocks of sigma", sigma.num_blocks(), 12)?;
    let mut interval = Vec::new();
    atom_partitions(sigma.num_blocks(), |atoms| {
        let q = merge(sigma, atoms);
        if q.refines(pi) && kind.contains(&q) {
            interval.push(q);
        }
    });
    interval.sort_by_key(|p| (p.num_blocks(), *p));
    let mut mu: HashMap<Partition, i64> = HashMap::new();
    for (i, t) in interval.iter().enumerate() {
        let value = if t == pi {
            1
        } else {
            -interval[..i]
                .iter()
                .filter(|r| *r != t && t.refines(r))
                .map(|r| mu[r])
                .sum::<i64>()
        };
        mu.insert(*t, value);
    }
    Ok(BigInt::from(mu[sigma]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, blocks: &[&[usize]]) -> Partition {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        Partition::from_blocks(n, &b).unwrap()
    }

    // independent brute force: insert element i into any existing block or a new one
    fn brute_all(n: usize) -> Vec<Vec<Vec<usize>>> {
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for e in 1..=n {
            let mut next = Vec::new();
            for part in &acc {
                for i in 0..part.len() {
                    let mut q = part.clone();
                    q[i].push(e);
                    next.push(q);
                }
                let mut q = part.clone();
                q.push(vec![e]);
                next.push(q);
            }
            acc = next;
        }
        acc
    }

    fn brute_crossing(blocks: &[Vec<usize>]) -> bool {
        for (i, x) in blocks.iter().enumerate() {
            for (j, y) in blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                for &a in x {
                    for &c in x {
                        for &b in y {
                            for &d in y {
                                if a < b && b < c && c < d {
                                    return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        assert_eq!(enumerate_partitions(1, LatticeKind::All).unwrap().len(), 1);
        for n in 1..=7 {
            let brute = brute_all(n);
            assert_eq!(enumerate_partitions(n, LatticeKind::All).unwrap().len(), brute.len());
            let nc = brute.iter().filter(|b| !brute_crossing(b)).count();
            assert_eq!(enumerate_partitions(n, LatticeKind::Noncrossing).unwrap().len(), nc);
        }
        assert_eq!(enumerate_partitions(3, LatticeKind::All).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(4, LatticeKind::Noncrossing).unwrap().len(), 14);
        assert_eq!(enumerate_partitions(5, LatticeKind::Interval).unwrap().len(), 16);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        for kind in [LatticeKind::All, LatticeKind::Noncrossing, LatticeKind::Interval] {
            let v = enumerate_partitions(6, kind).unwrap();
            assert!(v.windows(2).all(|w| w[0] < w[1]));
            assert!(v.iter().all(|q| kind.contains(q)));
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            enumerate_partitions(15, LatticeKind::All),
            Err(Error::Bound { bound: 14, .. })
        ));
        assert!(enumerate_partitions(0, LatticeKind::All).is_err());
        assert!(matches!(enumerate_pairings(18), Err(Error::Bound { .. })));
    }

    #[test]
    fn pairings() {
        assert_eq!(enumerate_pairings(2).unwrap(), vec![p(2, &[&[1, 2]])]);
        assert_eq!(enumerate_pairings(4).unwrap().len(), 3);
        assert_eq!(enumerate_pairings(6).unwrap().len(), 15);
        assert!(enumerate_pairings(5).unwrap().is_empty());
        let mut expect = 1usize;
        for n in (2..=14).step_by(2) {
            expect *= n - 1;
            let mut count = 0;
            for_each_pairing(n, |_| count += 1).unwrap();
            assert_eq!(count, expect, "(n-1)!! for n = {n}");
        }
    }

    #[test]
    fn classification_examples() {
        let f = p(4, &[&[1, 3], &[2, 4]]).classify();
        assert!(f.connected && f.irreducible && !f.noncrossing && !f.interval);
        let f = p(4, &[&[1, 4], &[2, 3]]).classify();
        assert!(!f.connected && f.irreducible && f.noncrossing && !f.interval);
        let f = p(4, &[&[1, 2], &[3, 4]]).classify();
        assert!(!f.connected && !f.irreducible && f.noncrossing && f.interval);
        let f = p(1, &[&[1]]).classify();
        assert!(f.connected && f.irreducible && f.noncrossing && f.interval);
    }

    #[test]
    fn statistics_examples() {
        let s = p(4, &[&[1, 3], &[2, 4]]).statistics();
        assert_eq!((s.cc, s.cr), (1, 1));
        let s = p(4, &[&[1, 2], &[3, 4]]).statistics();
        assert_eq!((s.cc, s.cr, s.h), (2, 0, 2));
        let s = p(6, &[&[1, 6], &[2, 5], &[3, 4]]).statistics();
        assert_eq!((s.cc, s.h), (3, 3));
        assert_eq!(s.ip, vec![4, 2, 0]);
        // (1,2,3,4) and (2,3,4,5)
        let s = p(5, &[&[1, 3, 5], &[2, 4]]).statistics();
        assert_eq!(s.cr, 2);
        assert_eq!(s.cc, 1);
    }

    #[test]
    fn invariants_up_to_ten() {
        for n in 1..=10 {
            for_each_partition(n, LatticeKind::All, |q| {
                let f = q.classify();
                let s = q.statistics();
                assert!(!f.connected || f.irreducible, "{q}");
                assert!(!f.interval || f.noncrossing, "{q}");
                assert_eq!(f.noncrossing, s.cc == q.num_blocks(), "{q}");
                assert_eq!(f.noncrossing, s.cr == 0, "{q}");
                assert_eq!(f.connected, s.cc == 1, "{q}");
            })
            .unwrap();
        }
    }

    fn brute_connected(q: &Partition) -> bool {
        let n = q.size();
        let blocks = q.blocks();
        !(1..=n).any(|i| {
            (i..=n).any(|j| {
                (i, j) != (1, n)
                    && blocks
                        .iter()
                        .filter(|b| b.iter().any(|e| (i..=j).contains(e)))
                        .all(|b| b.iter().all(|e| (i..=j).contains(e)))
            })
        })
    }

    #[test]
    fn connected_matches_brute_force() {
        for_each_partition(8, LatticeKind::All, |q| {
            assert_eq!(q.is_connected(), brute_connected(q), "{q}");
        })
        .unwrap();
    }

    #[test]
    fn noncrossing_matches_brute_force() {
        for_each_partition(8, LatticeKind::All, |q| {
            assert_eq!(q.is_noncrossing(), !brute_crossing(&q.blocks()), "{q}");
        })
        .unwrap();
    }

    #[test]
    fn connected_pairing_counts() {
        let expect = [1, 1, 4, 27, 248, 2830];
        for (i, e) in expect.iter().enumerate() {
            let two_n = 2 * (i + 1);
            assert_eq!(count_connected_pairings(two_n).unwrap(), BigInt::from(*e));
            let filtered = enumerate_pairings(two_n)
                .unwrap()
                .iter()
                .filter(|q| q.is_connected())
                .count();
            assert_eq!(filtered, *e as usize);
        }
        assert!(count_connected_pairings(3).is_err());
    }

    #[test]
    fn moebius_examples() {
        let s = p(3, &[&[1], &[2], &[3]]);
        assert_eq!(moebius(LatticeKind::All, &s, &s).unwrap(), BigInt::from(1));
        let top3 = Partition::top(3).unwrap();
        assert_eq!(moebius(LatticeKind::All, &s, &top3).unwrap(), BigInt::from(2));
        let b4 = Partition::bottom(4).unwrap();
        let t4 = Partition::top(4).unwrap();
        assert_eq!(moebius(LatticeKind::Noncrossing, &b4, &t4).unwrap(), BigInt::from(-5));
        assert_eq!(moebius(LatticeKind::All, &b4, &t4).unwrap(), BigInt::from(-6));
        assert_eq!(moebius(LatticeKind::Interval, &b4, &t4).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn moebius_errors() {
        let a = p(4, &[&[1, 2], &[3, 4]]);
        let b = p(4, &[&[1, 3], &[2, 4]]);
        assert!(matches!(moebius(LatticeKind::All, &a, &b), Err(Error::Order(_))));
        let t = Partition::top(4).unwrap();
        assert!(matches!(moebius(LatticeKind::Noncrossing, &b, &t), Err(Error::Domain(_))));
    }

    #[test]
    fn moebius_product_formulas() {
        // (-1)^{n-1}(n-1)!, (-1)^{n-1} C_{n-1}, (-1)^{n-1}
        let catalan = [1i64, 1, 2, 5, 14, 42, 132];
        let mut fact = 1i64;
        for n in 1..=7usize {
            if n > 1 {
                fact *= n as i64 - 1;
            }
            let sgn = if n % 2 == 1 { 1 } else { -1 };
            let b = Partition::bottom(n).unwrap();
            for (kind, expect) in [
                (LatticeKind::All, sgn * fact),
                (LatticeKind::Noncrossing, sgn * catalan[n - 1]),
                (LatticeKind::Interval, sgn),
            ] {
                let table = MoebiusTable::new(n, kind).unwrap();
                assert_eq!(table.to_top(&b), expect, "{kind:?} n={n}");
            }
        }
    }

    #[test]
    fn moebius_sums_vanish() {
        for n in 2..=6 {
            for kind in [LatticeKind::All, LatticeKind::Noncrossing, LatticeKind::Interval] {
                let elems = enumerate_partitions(n, kind).unwrap();
                for pi in &elems {
                    if pi.num_blocks() == n {
                        continue;
                    }
                    let s: BigInt = elems
                        .iter()
                        .filter(|s| s.refines(pi))
                        .map(|s| moebius(kind, s, pi).unwrap())
                        .sum();
                    assert_eq!(s, BigInt::from(0), "{kind:?} {pi}");
                }
            }
        }
    }

    #[test]
    fn table_agrees_with_pairwise() {
        for kind in [LatticeKind::All, LatticeKind::Noncrossing, LatticeKind::Interval] {
            let table = MoebiusTable::new(5, kind).unwrap();
            let top = Partition::top(5).unwrap();
            for s in table.elements() {
                assert_eq!(BigInt::from(table.to_top(s)), moebius(kind, s, &top).unwrap());
            }
        }
    }

    #[test]
    fn json_blocks() {
        let q = p(4, &[&[2, 4], &[1, 3]]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[[1,3],[2,4]]");
        let back: Partition = serde_json::from_str("[[1,3],[2,4]]").unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Partition>("[[1,3],[3,4]]").is_err());
    }
}
