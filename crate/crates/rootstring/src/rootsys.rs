//! Exact construction of abstract root systems and the primitive queries on
//! them: membership, inner products, Cartan integers, levels, alpha-strings,
//! and Dynkin adjacency.
//!
//! Roots are stored as integer coefficient vectors over the simple basis;
//! geometry enters solely through a rational Gram matrix, so every quantity
//! in the crate is exact. Positive roots are generated level by level from
//! the simple basis with the `p - q` rule; the non-reduced `BC` family is
//! obtained from `B` by adjoining the doubles of all short roots.
//!
//! Normalization: long roots have squared length 2 in each family, short
//! roots 1, except `G2` whose short roots get 2/3 under `<long,long> = 2`.
//! Only ratios matter for Cartan integers; this scale makes the Gram
//! matrices concrete and testable.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational scalar used for Gram matrices and norms.
pub type Rat = Ratio<i64>;

/// The irreducible families, including the non-reduced `BC` series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

/// Designator of an irreducible root system: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    /// Validates the rank bounds of each family. `C1` and `D3` are accepted
    /// here and canonicalized to `A1` and `A3` by [`RootSystemType::canonical`].
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bound: &'static str = match family {
            Family::A | Family::B | Family::BC => "rank >= 1",
            Family::C => "rank >= 1 (C1 is an alias of A1)",
            Family::D => "rank >= 3 (D3 is an alias of A3)",
            Family::E => "rank in {6, 7, 8}",
            Family::F => "rank = 4",
            Family::G => "rank = 2",
        };
        let ok = match family {
            Family::A | Family::B | Family::BC | Family::C => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family,
                rank,
                bound,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Resolves the low-rank coincidences `C1 = A1` and `D3 = A3`.
    /// Returns the canonical designator and whether the input was an alias.
    pub fn canonical(self) -> (RootSystemType, bool) {
        match (self.family, self.rank) {
            (Family::C, 1) => (
                RootSystemType {
                    family: Family::A,
                    rank: 1,
                },
                true,
            ),
            (Family::D, 3) => (
                RootSystemType {
                    family: Family::A,
                    rank: 3,
                },
                true,
            ),
            _ => (self, false),
        }
    }

    /// `BC` is the only non-reduced family.
    pub fn is_reduced(&self) -> bool {
        self.family != Family::BC
    }

    /// Closed-form number of positive roots.
    pub fn positive_count(&self) -> usize {
        let (c, _) = self.canonical();
        let n = c.rank;
        match c.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::BC => n * n + n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    /// Parses designators like `A5`, `BC3`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit());
        let (fam, digits) = match split {
            Some(i) if i > 0 => s.split_at(i),
            _ => return Err(Error::BadDesignator(s.to_string())),
        };
        let family = match fam.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "BC" => Family::BC,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return Err(Error::BadDesignator(s.to_string())),
        };
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::BadDesignator(s.to_string()))?;
        RootSystemType::new(family, rank)
    }
}

/// A root (or the zero vector) as integer coefficients over the simple basis.
///
/// Members of a root system have all coefficients of one sign; the zero
/// vector is representable because alpha-strings and phi-strings live in
/// `Sigma ∪ {0}`, but it is never itself a member of `Sigma`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Root(vec![0; rank])
    }

    /// Basis vector for the simple root at `index` (0-based).
    pub fn simple(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Sum of the coefficients over the simple basis. Positive roots have
    /// positive level, negative roots negative level.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// True when every nonzero coefficient sits at an index from `phi`.
    pub fn supported_on(&self, phi: &[bool]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || phi.get(i).copied().unwrap_or(false))
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|a| k * a).collect())
    }

    /// True when `self = k * other` for a rational `k` (zero is proportional
    /// to everything).
    pub fn proportional_to(&self, other: &Root) -> bool {
        // cross-ratio test: self[i] * other[j] == self[j] * other[i]
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                if self.0[i] * other.0[j] != self.0[j] * other.0[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ordering used everywhere a deterministic listing is needed:
/// level first, then lexicographic on the coefficients.
pub fn level_lex(a: &Root, b: &Root) -> std::cmp::Ordering {
    a.level().cmp(&b.level()).then_with(|| a.cmp(b))
}

/// The Gram matrix `<alpha_i, alpha_j>` of the canonical simple basis.
pub(crate) fn gram_matrix(canon: RootSystemType) -> Vec<Vec<Rat>> {
    let n = canon.rank();
    let r = |p: i64, q: i64| Rat::new(p, q);
    let (diag, edges): (Vec<Rat>, Vec<(usize, usize, Rat)>) = match canon.family() {
        Family::A => (
            vec![r(2, 1); n],
            (0..n.saturating_sub(1)).map(|i| (i, i + 1, r(-1, 1))).collect(),
        ),
        Family::B | Family::BC => (
            // alpha_1..alpha_{n-1} long, alpha_n short.
            (0..n).map(|i| if i + 1 == n { r(1, 1) } else { r(2, 1) }).collect(),
            (0..n.saturating_sub(1)).map(|i| (i, i + 1, r(-1, 1))).collect(),
        ),
        Family::C => {
            // alpha_1..alpha_{n-1} short, alpha_n long.
            let mut edges: Vec<_> = (0..n.saturating_sub(2))
                .map(|i| (i, i + 1, r(-1, 2)))
                .collect();
            if n >= 2 {
                edges.push((n - 2, n - 1, r(-1, 1)));
            }
            (
                (0..n).map(|i| if i + 1 == n { r(2, 1) } else { r(1, 1) }).collect(),
                edges,
            )
        }
        Family::D => {
            // chain alpha_1..alpha_{n-1} with alpha_n attached to alpha_{n-2}.
            let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, r(-1, 1))).collect();
            edges.push((n - 3, n - 1, r(-1, 1)));
            (vec![r(2, 1); n], edges)
        }
        Family::E => {
            // chain alpha_1-alpha_3-alpha_4-...-alpha_n with alpha_2 on alpha_4.
            let mut edges = vec![(0, 2, r(-1, 1)), (1, 3, r(-1, 1))];
            for i in 2..n - 1 {
                edges.push((i, i + 1, r(-1, 1)));
            }
            (vec![r(2, 1); n], edges)
        }
        Family::F => (
            // beta_1, beta_2 short; beta_3, beta_4 long; double bond at (2,3).
            vec![r(1, 1), r(1, 1), r(2, 1), r(2, 1)],
            vec![(0, 1, r(-1, 2)), (1, 2, r(-1, 1)), (2, 3, r(-1, 1))],
        ),
        Family::G => (
            // alpha_1 short, alpha_2 long.
            vec![r(2, 3), r(2, 1)],
            vec![(0, 1, r(-1, 1))],
        ),
    };
    let mut g = vec![vec![Rat::zero(); n]; n];
    for (i, d) in diag.into_iter().enumerate() {
        g[i][i] = d;
    }
    for (i, j, v) in edges {
        g[i][j] = v;
        g[j][i] = v;
    }
    g
}

/// Dynkin diagram of a simple system: bond multiplicities
/// `A_{i,j} * A_{j,i}` and, on multiple bonds, an arrow toward the shorter
/// root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    /// Node indices into the simple system this graph was built from.
    pub nodes: Vec<usize>,
    /// `(i, j) -> multiplicity` with `i < j`; orthogonal pairs absent.
    pub bonds: BTreeMap<(usize, usize), u32>,
    /// For multiplicity >= 2, `(i, j) -> index of the shorter root`.
    pub arrows: BTreeMap<(usize, usize), usize>,
}

impl DynkinGraph {
    /// Connected components of the node set under bond adjacency.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = self.nodes.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.first().copied() {
            let mut block = vec![start];
            let mut queue = vec![start];
            remaining.retain(|&x| x != start);
            while let Some(v) = queue.pop() {
                let adjacent: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&w| {
                        let key = (v.min(w), v.max(w));
                        self.bonds.contains_key(&key)
                    })
                    .collect();
                for w in adjacent {
                    remaining.retain(|&x| x != w);
                    block.push(w);
                    queue.push(w);
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Total bond count treating multiplicities as single edges.
    pub fn edge_count(&self) -> usize {
        self.bonds.len()
    }
}

/// An immutable abstract root system: designator, rational Gram matrix over
/// the simple basis, the full root set and the positive subset.
pub struct RootSystem {
    requested: RootSystemType,
    rtype: RootSystemType,
    alias: bool,
    gram: Vec<Vec<Rat>>,
    roots: HashSet<Root>,
    positives: Vec<Root>,
    positive_set: HashSet<Root>,
}

/// Builds the root system for `rtype`.
///
/// The simple basis ordering follows the diagram labelings used throughout
/// the crate (see [`gram_matrix`]); `C1` and `D3` inputs are canonicalized
/// to `A1` and `A3` with the alias recorded.
pub fn build_root_system(rtype: RootSystemType) -> Result<RootSystem> {
    let (canon, alias) = rtype.canonical();
    let n = canon.rank();
    let gram = gram_matrix(canon);

    let inner = |a: &Root, b: &Root, g: &Vec<Vec<Rat>>| -> Rat {
        let mut acc = Rat::zero();
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs().iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                acc += g[i][j] * Rat::from_integer(ai * bj);
            }
        }
        acc
    };

    // Level-by-level closure from the simple basis with the p - q rule.
    let mut positive_set: HashSet<Root> = HashSet::new();
    let mut current: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut positives: Vec<Root> = Vec::new();
    for s in &current {
        positive_set.insert(s.clone());
    }
    positives.extend(current.iter().cloned());

    while !current.is_empty() {
        let mut next: Vec<Root> = Vec::new();
        for mu in &current {
            for i in 0..n {
                let alpha = Root::simple(n, i);
                // p = how far the alpha-string через mu extends downward in
                // Sigma ∪ {0}; only vectors of lower level occur, so the
                // membership tests see fully generated data.
                let mut p: i64 = 0;
                let mut v = mu.sub(&alpha);
                loop {
                    let present = v.is_zero()
                        || positive_set.contains(&v)
                        || positive_set.contains(&v.neg());
                    if !present {
                        break;
                    }
                    p += 1;
                    v = v.sub(&alpha);
                }
                let a = {
                    let num = Rat::from_integer(2) * inner(&alpha, mu, &gram);
                    let den = inner(&alpha, &alpha, &gram);
                    let q = num / den;
                    debug_assert!(q.is_integer());
                    q.to_integer()
                };
                if p - a >= 1 {
                    let up = mu.add(&alpha);
                    if positive_set.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        positives.extend(next.iter().cloned());
        current = next;
    }

    // BC_n: adjoin the doubles of all short roots of the underlying B_n.
    if rtype.family() == Family::BC {
        let one = Rat::from_integer(1);
        let shorts: Vec<Root> = positives
            .iter()
            .filter(|r| inner(r, r, &gram) == one)
            .cloned()
            .collect();
        for s in shorts {
            let d = s.scale(2);
            if positive_set.insert(d.clone()) {
                positives.push(d);
            }
        }
    }

    positives.sort_by(level_lex);

    let mut roots: HashSet<Root> = positive_set.clone();
    for p in &positives {
        roots.insert(p.neg());
    }

    Ok(RootSystem {
        requested: rtype,
        rtype: canon,
        alias,
        gram,
        roots,
        positives,
        positive_set,
    })
}

impl RootSystem {
    /// The designator the system was requested as (`C1`, `D3` kept verbatim).
    pub fn requested_type(&self) -> RootSystemType {
        self.requested
    }

    /// The canonical designator (`C1 -> A1`, `D3 -> A3`).
    pub fn rtype(&self) -> RootSystemType {
        self.rtype
    }

    /// True when the requested designator was an alias of another family.
    pub fn is_alias(&self) -> bool {
        self.alias
    }

    pub fn rank(&self) -> usize {
        self.rtype.rank()
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn simple_root(&self, index: usize) -> Result<Root> {
        if index >= self.rank() {
            return Err(Error::BadSimpleIndex {
                index,
                rank: self.rank(),
            });
        }
        Ok(Root::simple(self.rank(), index))
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn is_positive(&self, r: &Root) -> bool {
        self.positive_set.contains(r)
    }

    /// Positive roots sorted by level, then lexicographically.
    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Exact inner product through the Gram matrix.
    pub fn inner(&self, a: &Root, b: &Root) -> Rat {
        let mut acc = Rat::zero();
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs().iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                acc += self.gram[i][j] * Rat::from_integer(ai * bj);
            }
        }
        acc
    }

    pub fn norm2(&self, a: &Root) -> Rat {
        self.inner(a, a)
    }

    /// The Cartan integer `A_{alpha,beta} = 2 <alpha, beta> / |alpha|^2`.
    ///
    /// `alpha` must be a root of the system, `beta` a root or zero. The value
    /// lies in `{0, ±1, ±2, ±3, ±4}` with `±4` only in non-reduced systems
    /// for `beta = ±2 alpha`.
    pub fn cartan_integer(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        if alpha.is_zero() {
            return Err(Error::ZeroBase);
        }
        if !self.contains(alpha) {
            return Err(Error::NotARoot(alpha.clone()));
        }
        if !beta.is_zero() && !self.contains(beta) {
            return Err(Error::NotARoot(beta.clone()));
        }
        let q = Rat::from_integer(2) * self.inner(alpha, beta) / self.norm2(alpha);
        if !q.is_integer() {
            return Err(Error::Internal(format!(
                "non-integral Cartan number for {alpha} and {beta}"
            )));
        }
        Ok(q.to_integer())
    }

    fn in_sigma_or_zero(&self, v: &Root) -> bool {
        v.is_zero() || self.roots.contains(v)
    }

    /// The alpha-string through `lambda`: all elements of `Sigma ∪ {0}` of
    /// the form `lambda + n alpha`, returned in increasing `n` order
    /// (`lambda - p alpha` up to `lambda + q alpha`, no gaps,
    /// `p - q = A_{alpha,lambda}`).
    pub fn alpha_string(&self, alpha: &Root, lambda: &Root) -> Result<Vec<Root>> {
        if !self.contains(alpha) {
            return Err(Error::NotARoot(alpha.clone()));
        }
        if !self.in_sigma_or_zero(lambda) {
            return Err(Error::NotARoot(lambda.clone()));
        }
        let mut down = Vec::new();
        let mut v = lambda.sub(alpha);
        while self.in_sigma_or_zero(&v) {
            down.push(v.clone());
            v = v.sub(alpha);
        }
        down.reverse();
        let mut out = down;
        out.push(lambda.clone());
        let mut v = lambda.add(alpha);
        while self.in_sigma_or_zero(&v) {
            out.push(v.clone());
            v = v.add(alpha);
        }
        Ok(out)
    }

    /// Writes a positive root as an ordered sum of simple roots so that every
    /// left partial sum is again a positive root. The sequence length equals
    /// the level of the root.
    pub fn simple_decomposition(&self, lambda: &Root) -> Result<Vec<usize>> {
        if !self.is_positive(lambda) {
            return Err(Error::NotPositive(lambda.clone()));
        }
        let mut out = Vec::new();
        let mut cur = lambda.clone();
        'outer: while !cur.is_zero() {
            for i in 0..self.rank() {
                let prev = cur.sub(&Root::simple(self.rank(), i));
                if prev.is_zero() || self.is_positive(&prev) {
                    out.push(i);
                    cur = prev;
                    continue 'outer;
                }
            }
            return Err(Error::Internal(format!(
                "no simple summand found below {cur}"
            )));
        }
        out.reverse();
        Ok(out)
    }

    /// Dynkin adjacency between two simple roots.
    pub fn simples_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && !self.gram[i][j].is_zero()
    }

    /// Partition of a set of simple indices into maximal connected blocks
    /// under Dynkin adjacency; the blocks are mutually orthogonal.
    pub fn connected_components(&self, phi: &[usize]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = {
            let mut v = phi.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut out = Vec::new();
        while let Some(start) = remaining.first().copied() {
            remaining.retain(|&x| x != start);
            let mut block = vec![start];
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                let adj: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&w| self.simples_adjacent(v, w))
                    .collect();
                for w in adj {
                    remaining.retain(|&x| x != w);
                    block.push(w);
                    queue.push(w);
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out.sort();
        out
    }

    pub fn is_connected_subset(&self, phi: &[usize]) -> bool {
        if phi.is_empty() {
            return false;
        }
        self.connected_components(phi).len() == 1
    }

    /// Sum over a connected set of simple roots; the result is always a
    /// positive root.
    pub fn connected_sum(&self, psi: &[usize]) -> Result<Root> {
        if !self.is_connected_subset(psi) {
            return Err(Error::NotConnected);
        }
        let mut acc = Root::zero(self.rank());
        let mut seen = HashSet::new();
        for &i in psi {
            if i >= self.rank() {
                return Err(Error::BadSimpleIndex {
                    index: i,
                    rank: self.rank(),
                });
            }
            if seen.insert(i) {
                acc = acc.add(&Root::simple(self.rank(), i));
            }
        }
        if !self.is_positive(&acc) {
            return Err(Error::Internal(format!(
                "connected sum {acc} escaped the positive roots"
            )));
        }
        Ok(acc)
    }

    /// Rational rank of a set of coefficient vectors.
    // index loops: row ops read the pivot row while writing another
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn rational_rank(vectors: &[Root]) -> usize {
        let rows = vectors.len();
        if rows == 0 {
            return 0;
        }
        let cols = vectors[0].rank();
        let mut m: Vec<Vec<Rat>> = vectors
            .iter()
            .map(|v| v.coeffs().iter().map(|&c| Rat::from_integer(c)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else { continue };
            m.swap(rank, p);
            let inv = m[rank][col];
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col] / inv;
                    for c in col..cols {
                        let sub = m[rank][c] * f;
                        m[r][c] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Builds the Dynkin graph of a simple system: `S` must be linearly
    /// independent roots with pairwise non-positive Cartan integers.
    pub fn dynkin_graph(&self, s: &[Root]) -> Result<DynkinGraph> {
        for r in s {
            if !self.contains(r) {
                return Err(Error::NotARoot(r.clone()));
            }
        }
        if Self::rational_rank(s) != s.len() {
            return Err(Error::DependentSet);
        }
        let mut bonds = BTreeMap::new();
        let mut arrows = BTreeMap::new();
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                let aij = self.cartan_integer(&s[i], &s[j])?;
                let aji = self.cartan_integer(&s[j], &s[i])?;
                if aij > 0 || aji > 0 {
                    return Err(Error::NotASimpleSystem(s[i].clone(), s[j].clone()));
                }
                let mult = (aij * aji) as u32;
                if mult == 0 {
                    continue;
                }
                if mult > 3 {
                    return Err(Error::Internal(format!(
                        "bond multiplicity {mult} between {} and {}",
                        s[i], s[j]
                    )));
                }
                bonds.insert((i, j), mult);
                if mult >= 2 {
                    let shorter = if self.norm2(&s[i]) < self.norm2(&s[j]) {
                        i
                    } else {
                        j
                    };
                    arrows.insert((i, j), shorter);
                }
            }
        }
        // Acyclicity holds for any genuine simple system; assert it.
        let mut parent: Vec<usize> = (0..s.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(i, j) in bonds.keys() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                return Err(Error::Internal(
                    "cycle in Dynkin graph of a simple system".to_string(),
                ));
            }
            parent[ri] = rj;
        }
        Ok(DynkinGraph {
            nodes: (0..s.len()).collect(),
            bonds,
            arrows,
        })
    }

    /// Debug dump: one positive root per line as comma-separated integer
    /// coefficients, sorted by level then lexicographically.
    pub fn dump_positives(&self) -> String {
        let mut out = String::new();
        for r in &self.positives {
            let line: Vec<String> = r.coeffs().iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RootSystem({}, {} positives)",
            self.rtype,
            self.positives.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn root(v: &[i64]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn a1_is_one_pair() {
        let sys = rs("A1");
        assert_eq!(sys.positives().len(), 1);
        assert_eq!(sys.root_count(), 2);
        assert!(sys.contains(&root(&[1])));
        assert!(sys.contains(&root(&[-1])));
    }

    #[test]
    fn bc1_contains_the_double() {
        let sys = rs("BC1");
        let mut all: Vec<Root> = sys.roots().cloned().collect();
        all.sort();
        assert_eq!(
            all,
            vec![root(&[-2]), root(&[-1]), root(&[1]), root(&[2])]
        );
        assert_eq!(sys.positives().len(), 2);
    }

    #[test]
    fn a2_has_six_roots() {
        let sys = rs("A2");
        let mut pos = sys.positives().to_vec();
        pos.sort();
        assert_eq!(pos, vec![root(&[0, 1]), root(&[1, 0]), root(&[1, 1])]);
        assert_eq!(sys.root_count(), 6);
    }

    #[test]
    fn positive_counts_match_closed_forms() {
        for s in [
            "A1", "A4", "A8", "B1", "B4", "B8", "C2", "C5", "C8", "BC1", "BC4", "BC8", "D4",
            "D6", "D8", "E6", "E7", "E8", "F4", "G2",
        ] {
            let sys = rs(s);
            assert_eq!(
                sys.positives().len(),
                sys.rtype().positive_count(),
                "positive count for {s}"
            );
        }
    }

    #[test]
    fn aliases_canonicalize() {
        let c1 = rs("C1");
        assert!(c1.is_alias());
        assert_eq!(c1.rtype().to_string(), "A1");
        assert_eq!(c1.requested_type().to_string(), "C1");
        let d3 = rs("D3");
        assert!(d3.is_alias());
        assert_eq!(d3.rtype().to_string(), "A3");
        assert_eq!(d3.positives().len(), 6);
    }

    #[test]
    fn invalid_ranks_are_rejected() {
        assert!("E5".parse::<RootSystemType>().is_err());
        assert!("F3".parse::<RootSystemType>().is_err());
        assert!("G1".parse::<RootSystemType>().is_err());
        assert!("D2".parse::<RootSystemType>().is_err());
        assert!("A0".parse::<RootSystemType>().is_err());
        assert!("H4".parse::<RootSystemType>().is_err());
    }

    #[test]
    fn cartan_examples() {
        let a2 = rs("A2");
        let a = root(&[1, 0]);
        let b = root(&[0, 1]);
        assert_eq!(a2.cartan_integer(&a, &a).unwrap(), 2);
        assert_eq!(a2.cartan_integer(&a, &b).unwrap(), -1);

        let bc1 = rs("BC1");
        let alpha = root(&[1]);
        let double = root(&[2]);
        assert_eq!(bc1.cartan_integer(&alpha, &double).unwrap(), 4);

        assert_eq!(a2.cartan_integer(&a, &Root::zero(2)).unwrap(), 0);
        assert!(matches!(
            a2.cartan_integer(&Root::zero(2), &a),
            Err(Error::ZeroBase)
        ));
    }

    #[test]
    fn cartan_range_over_small_systems() {
        for s in ["A3", "B3", "C3", "BC3", "D4", "F4", "G2"] {
            let sys = rs(s);
            let roots: Vec<Root> = sys.roots().cloned().collect();
            for a in &roots {
                for b in &roots {
                    let v = sys.cartan_integer(a, b).unwrap();
                    assert!((-4..=4).contains(&v), "{s}: A({a},{b}) = {v}");
                    if v.abs() == 4 {
                        assert!(!sys.rtype().is_reduced());
                        assert!(*b == a.scale(2) || *b == a.scale(-2));
                    }
                }
            }
        }
    }

    #[test]
    fn levels_of_highest_roots() {
        let a3 = rs("A3");
        assert_eq!(a3.positives().iter().map(|r| r.level()).max(), Some(3));
        let e8 = rs("E8");
        assert_eq!(e8.positives().iter().map(|r| r.level()).max(), Some(29));
    }

    #[test]
    fn alpha_string_examples() {
        let a2 = rs("A2");
        let a1 = root(&[1, 0]);
        let a2r = root(&[0, 1]);
        // alpha_2-string through alpha_1: p = 0, q = 1.
        assert_eq!(
            a2.alpha_string(&a2r, &a1).unwrap(),
            vec![root(&[1, 0]), root(&[1, 1])]
        );
        // String through zero is always [-alpha, 0, alpha] in reduced systems.
        assert_eq!(
            a2.alpha_string(&a1, &Root::zero(2)).unwrap(),
            vec![root(&[-1, 0]), Root::zero(2), root(&[1, 0])]
        );

        let g2 = rs("G2");
        let short = root(&[1, 0]);
        let long = root(&[0, 1]);
        let s = g2.alpha_string(&short, &long).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(
            s,
            vec![
                root(&[0, 1]),
                root(&[1, 1]),
                root(&[2, 1]),
                root(&[3, 1])
            ]
        );

        // Proportional case in a non-reduced system: 5 elements through 2a.
        let bc1 = rs("BC1");
        let s = bc1.alpha_string(&root(&[1]), &root(&[2])).unwrap();
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn alpha_string_p_minus_q_rule() {
        // Every (alpha, lambda) pair in every built system up to rank 8.
        let mut names: Vec<String> = Vec::new();
        for n in 1..=8usize {
            names.push(format!("A{n}"));
            names.push(format!("B{n}"));
            names.push(format!("BC{n}"));
            if n >= 2 {
                names.push(format!("C{n}"));
            }
            if n >= 3 {
                names.push(format!("D{n}"));
            }
        }
        names.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
        for name in &names {
            let sys = rs(name);
            let roots: Vec<Root> = sys.roots().cloned().collect();
            let mut lams: Vec<Root> = roots.clone();
            lams.push(Root::zero(sys.rank()));
            for alpha in &roots {
                for lam in &lams {
                    let s = sys.alpha_string(alpha, lam).unwrap();
                    let p = s.iter().position(|v| v == lam).unwrap() as i64;
                    let q = (s.len() as i64) - 1 - p;
                    assert_eq!(
                        p - q,
                        sys.cartan_integer(alpha, lam).unwrap(),
                        "{name}: string through {lam} along {alpha}"
                    );
                    if !lam.proportional_to(alpha) {
                        assert!(s.len() <= 4, "{name}: {lam} along {alpha} gave {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn simple_decomposition_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.simple_decomposition(&root(&[1, 0])).unwrap(), vec![0]);
        let d = a2.simple_decomposition(&root(&[1, 1])).unwrap();
        assert!(d == vec![0, 1] || d == vec![1, 0]);

        let b2 = rs("B2");
        let lam = root(&[1, 2]);
        let d = b2.simple_decomposition(&lam).unwrap();
        assert_eq!(d.len(), lam.level() as usize);
        // Every left partial sum must be a positive root; in particular the
        // decomposition cannot start with alpha_2, alpha_2.
        let mut acc = Root::zero(2);
        for &i in &d {
            acc = acc.add(&Root::simple(2, i));
            assert!(b2.is_positive(&acc), "partial sum {acc} not positive");
        }
        assert_ne!(&d[..2], &[1, 1]);

        assert!(a2.simple_decomposition(&root(&[-1, 0])).is_err());
    }

    #[test]
    fn partial_sums_hold_everywhere() {
        for name in ["A4", "B4", "C4", "BC3", "D5", "F4", "G2", "E6"] {
            let sys = rs(name);
            for lam in sys.positives() {
                let d = sys.simple_decomposition(lam).unwrap();
                assert_eq!(d.len() as i64, lam.level());
                let mut acc = Root::zero(sys.rank());
                for &i in &d {
                    acc = acc.add(&Root::simple(sys.rank(), i));
                    assert!(sys.is_positive(&acc));
                }
                assert_eq!(&acc, lam);
            }
        }
    }

    #[test]
    fn connected_components_examples() {
        let a5 = rs("A5");
        assert_eq!(
            a5.connected_components(&[0, 1, 2, 3, 4]),
            vec![vec![0, 1, 2, 3, 4]]
        );
        assert_eq!(
            a5.connected_components(&[0, 2, 3]),
            vec![vec![0], vec![2, 3]]
        );
        let d4 = rs("D4");
        // The three outer nodes of D4 are pairwise orthogonal.
        assert_eq!(
            d4.connected_components(&[0, 2, 3]),
            vec![vec![0], vec![2], vec![3]]
        );
        assert!(a5.connected_components(&[]).is_empty());
    }

    #[test]
    fn connected_sum_examples() {
        let a4 = rs("A4");
        assert_eq!(a4.connected_sum(&[1]).unwrap(), root(&[0, 1, 0, 0]));
        let mut betas = Vec::new();
        for l in 1..=4 {
            let psi: Vec<usize> = (0..l).collect();
            let beta = a4.connected_sum(&psi).unwrap();
            assert!(a4.is_positive(&beta));
            assert_eq!(beta.level(), l as i64);
            betas.push(beta);
        }
        // Within the A-chain, A_{beta_m, beta_l} = 1 for m < l.
        for m in 0..betas.len() {
            for l in (m + 1)..betas.len() {
                assert_eq!(a4.cartan_integer(&betas[m], &betas[l]).unwrap(), 1);
            }
        }
        let f4 = rs("F4");
        assert_eq!(
            f4.connected_sum(&[0, 1, 2, 3]).unwrap(),
            root(&[1, 1, 1, 1])
        );
        assert!(f4.is_positive(&root(&[1, 1, 1, 1])));
        let a5 = rs("A5");
        assert!(a5.connected_sum(&[0, 2]).is_err());
    }

    #[test]
    fn orthogonal_block_sums_are_never_roots() {
        // lambda_0 spanned by phi_0, lambda_1 by phi_1, phi_0 ⟂ phi_1:
        // none of ±lambda_0 ± lambda_1 is a root. Checked over all roots of
        // the two spans, not just the simple ones.
        for (name, phi0, phi1) in [
            ("A5", vec![0usize, 1], vec![3usize, 4]),
            ("D5", vec![0], vec![2, 3, 4]),
            ("B4", vec![0, 1], vec![3]),
            ("BC4", vec![0], vec![2, 3]),
            ("E6", vec![0, 2], vec![4, 5]),
            ("F4", vec![0], vec![2, 3]),
        ] {
            let sys = rs(name);
            let n = sys.rank();
            let mask = |phi: &[usize]| -> Vec<bool> { (0..n).map(|i| phi.contains(&i)).collect() };
            let (m0, m1) = (mask(&phi0), mask(&phi1));
            // Orthogonality of the blocks themselves.
            for &i in &phi0 {
                for &j in &phi1 {
                    assert!(!sys.simples_adjacent(i, j), "{name}: blocks not orthogonal");
                }
            }
            let span0: Vec<Root> = sys.roots().filter(|r| r.supported_on(&m0)).cloned().collect();
            let span1: Vec<Root> = sys.roots().filter(|r| r.supported_on(&m1)).cloned().collect();
            assert!(!span0.is_empty() && !span1.is_empty());
            for a in &span0 {
                for b in &span1 {
                    let v = a.add(b); // signs covered since the spans are negation-closed
                    assert!(!sys.contains(&v), "{name}: {a} + {b} = {v} is a root");
                }
            }
        }
    }

    #[test]
    fn closure_and_integrality_axioms() {
        for name in ["A3", "B3", "C4", "BC3", "D4", "F4", "G2", "E6"] {
            let sys = rs(name);
            let roots: Vec<Root> = sys.roots().cloned().collect();
            for a in &roots {
                for b in &roots {
                    let k = sys.cartan_integer(a, b).unwrap();
                    let reflected = b.sub(&a.scale(k));
                    assert!(sys.contains(&reflected), "{name}: reflection escaped");
                }
            }
        }
    }

    #[test]
    fn reduced_systems_have_no_doubles() {
        for name in ["A4", "B4", "C4", "D4", "F4", "G2"] {
            let sys = rs(name);
            for r in sys.positives() {
                assert!(!sys.contains(&r.scale(2)), "{name}: {r} has a double");
            }
        }
    }

    #[test]
    fn roots_split_into_positives_and_negatives() {
        for name in ["A3", "BC2", "F4"] {
            let sys = rs(name);
            assert_eq!(sys.root_count(), 2 * sys.positives().len());
            for r in sys.roots() {
                let pos = r.coeffs().iter().all(|&c| c >= 0);
                let neg = r.coeffs().iter().all(|&c| c <= 0);
                assert!(pos ^ neg, "{name}: mixed-sign root {r}");
                assert_eq!(pos, sys.is_positive(r));
            }
        }
    }

    #[test]
    fn dynkin_graph_shapes() {
        let a3 = rs("A3");
        let basis: Vec<Root> = (0..3).map(|i| Root::simple(3, i)).collect();
        let g = a3.dynkin_graph(&basis).unwrap();
        assert_eq!(g.bonds.len(), 2);
        assert!(g.bonds.values().all(|&m| m == 1));
        assert!(g.arrows.is_empty());

        let f4 = rs("F4");
        let basis: Vec<Root> = (0..4).map(|i| Root::simple(4, i)).collect();
        let g = f4.dynkin_graph(&basis).unwrap();
        assert_eq!(g.bonds[&(0, 1)], 1);
        assert_eq!(g.bonds[&(1, 2)], 2);
        assert_eq!(g.bonds[&(2, 3)], 1);
        // Arrow on the double bond points at the shorter root beta_2.
        assert_eq!(g.arrows[&(1, 2)], 1);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_connected());
        assert_eq!(g.components(), vec![vec![0, 1, 2, 3]]);

        // Chain inside B3 with the double bond at the lambda end:
        // S = [alpha_3, alpha_2, alpha_1].
        let b3 = rs("B3");
        let s = vec![Root::simple(3, 2), Root::simple(3, 1), Root::simple(3, 0)];
        let g = b3.dynkin_graph(&s).unwrap();
        assert_eq!(g.bonds[&(0, 1)], 2);
        assert_eq!(g.bonds[&(1, 2)], 1);
        assert_eq!(g.arrows[&(0, 1)], 0);

        // A positive Cartan pair is not a simple system.
        let bad = vec![root(&[1, 0, 0]), root(&[1, 1, 0])];
        assert!(matches!(
            b3.dynkin_graph(&bad),
            Err(Error::NotASimpleSystem(_, _))
        ));
        let dep = vec![root(&[1, 0, 0]), root(&[-1, 0, 0])];
        assert!(matches!(b3.dynkin_graph(&dep), Err(Error::DependentSet)));
    }

    #[test]
    fn dump_is_sorted_by_level_then_lex() {
        let a2 = rs("A2");
        assert_eq!(a2.dump_positives(), "0,1\n1,0\n1,1\n");
        let b2 = rs("B2");
        assert_eq!(b2.dump_positives(), "0,1\n1,0\n1,1\n1,2\n");
    }

    #[test]
    fn designator_roundtrip() {
        for s in ["A1", "BC3", "E8", "G2", "D4"] {
            let t: RootSystemType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }
}
