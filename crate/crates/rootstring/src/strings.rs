//! Phi-strings by brute force from the definition, the subsystems they live
//! in, and Dynkin-type classification of those subsystems.

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsys::{level_lex, Family, Rat, Root, RootSystem, RootSystemType};

/// The set `I_Phi^lambda` together with its defining data.
///
/// Members live in `Sigma ∪ {0}`; the zero vector occurs exactly when the
/// base root is spanned by `phi` (the subsystem case, flagged explicitly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringSet {
    ambient: RootSystemType,
    phi: BTreeSet<usize>,
    base: Root,
    members: BTreeSet<Root>,
    subsystem_case: bool,
}

impl StringSet {
    pub(crate) fn from_parts(
        ambient: RootSystemType,
        phi: BTreeSet<usize>,
        base: Root,
        members: BTreeSet<Root>,
        subsystem_case: bool,
    ) -> Self {
        StringSet {
            ambient,
            phi,
            base,
            members,
            subsystem_case,
        }
    }

    pub fn ambient(&self) -> RootSystemType {
        self.ambient
    }

    pub fn phi(&self) -> &BTreeSet<usize> {
        &self.phi
    }

    pub fn base(&self) -> &Root {
        &self.base
    }

    pub fn members(&self) -> &BTreeSet<Root> {
        &self.members
    }

    /// True when the base root lies in the span of `phi`, in which case the
    /// string is the whole subsystem `Sigma_Phi ∪ {0}`.
    pub fn is_subsystem_case(&self) -> bool {
        self.subsystem_case
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.members.contains(r)
    }

    /// Members sorted by level, then lexicographically.
    pub fn members_sorted(&self) -> Vec<Root> {
        let mut v: Vec<Root> = self.members.iter().cloned().collect();
        v.sort_by(level_lex);
        v
    }

    /// The unique member of minimum level.
    ///
    /// Rejected in the subsystem case, which has no distinguished base. A
    /// duplicated minimum cannot occur for a base outside `span(phi)`; the
    /// scan still checks and reports an internal error if one ever appears.
    pub fn minimum_level_root(&self) -> Result<&Root> {
        if self.subsystem_case {
            return Err(Error::SubsystemStringNoBase);
        }
        let min = self
            .members
            .iter()
            .min_by_key(|r| r.level())
            .ok_or_else(|| Error::Internal("empty string set".to_string()))?;
        let ties = self
            .members
            .iter()
            .filter(|r| r.level() == min.level())
            .count();
        if ties != 1 {
            return Err(Error::Internal(format!(
                "{ties} members of minimum level {} in the string of {}",
                min.level(),
                self.base
            )));
        }
        Ok(min)
    }
}

fn phi_mask(rs: &RootSystem, phi: &[usize]) -> Result<(BTreeSet<usize>, Vec<bool>)> {
    let mut set = BTreeSet::new();
    let mut mask = vec![false; rs.rank()];
    for &i in phi {
        if i >= rs.rank() {
            return Err(Error::BadSimpleIndex {
                index: i,
                rank: rs.rank(),
            });
        }
        set.insert(i);
        mask[i] = true;
    }
    Ok((set, mask))
}

/// The Phi-string of `lambda`, computed from the definition: scan
/// `Sigma ∪ {0}` and keep the elements whose difference from `lambda` is
/// supported on `phi`.
pub fn phi_string(rs: &RootSystem, phi: &[usize], lambda: &Root) -> Result<StringSet> {
    if lambda.rank() != rs.rank() {
        return Err(Error::BadVectorLength {
            got: lambda.rank(),
            want: rs.rank(),
        });
    }
    if !rs.contains(lambda) {
        return Err(Error::NotARoot(lambda.clone()));
    }
    let (set, mask) = phi_mask(rs, phi)?;
    let subsystem_case = lambda.supported_on(&mask);
    let mut members = BTreeSet::new();
    for r in rs.roots() {
        if r.sub(lambda).supported_on(&mask) {
            members.insert(r.clone());
        }
    }
    if subsystem_case {
        members.insert(Root::zero(rs.rank()));
    }
    Ok(StringSet::from_parts(
        rs.rtype(),
        set,
        lambda.clone(),
        members,
        subsystem_case,
    ))
}

/// A root subsystem cut out by the integer span of a set of generators.
#[derive(Debug, Clone)]
pub struct Subsystem {
    generators: Vec<Root>,
    roots: BTreeSet<Root>,
    positives: Vec<Root>,
    simple_system: Vec<Root>,
    simple_cartans: Vec<Vec<i64>>,
    simple_norms: Vec<Rat>,
    non_reduced: bool,
}

impl Subsystem {
    pub fn generators(&self) -> &[Root] {
        &self.generators
    }

    pub fn roots(&self) -> &BTreeSet<Root> {
        &self.roots
    }

    /// Subsystem positives (the ambient positivity criterion), sorted by
    /// level then lexicographically.
    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    /// The simple system of the subsystem: its indecomposable positives.
    pub fn simple_system(&self) -> &[Root] {
        &self.simple_system
    }

    /// Cartan integers `A_{s_i, s_j}` between the simple roots.
    pub fn simple_cartans(&self) -> &[Vec<i64>] {
        &self.simple_cartans
    }

    pub fn simple_norms(&self) -> &[Rat] {
        &self.simple_norms
    }

    /// True when some root has its double in the subsystem.
    pub fn is_non_reduced(&self) -> bool {
        self.non_reduced
    }

    pub fn rank(&self) -> usize {
        self.simple_system.len()
    }

    /// Exact coordinates of a vector over the generators, or `None` when it
    /// lies outside their rational span. For a subsystem generated by
    /// `{lambda} ∪ Phi` this is how the lambda-coefficient of a member is
    /// read off.
    pub fn coordinates(&self, v: &Root) -> Option<Vec<Rat>> {
        let cols: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .map(|g| g.coeffs().iter().map(|&c| Rat::from_integer(c)).collect())
            .collect();
        let b: Vec<Rat> = v.coeffs().iter().map(|&c| Rat::from_integer(c)).collect();
        solve_rational(&cols, &b)
    }
}

/// Exact solution of `cols * x = b` over the rationals, for independent
/// columns. Returns `None` when the system is inconsistent.
// index loops: row ops read the pivot row while writing another
#[allow(clippy::needless_range_loop)]
fn solve_rational(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = b.len();
    let k = cols.len();
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r]).collect();
            row.push(b[r]);
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            return None; // dependent columns; callers pre-check independence
        };
        m.swap(row, p);
        let inv = m[row][col];
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col] / inv;
                for c in col..=k {
                    let sub = m[row][c] * f;
                    m[r][c] -= sub;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Any leftover row with a nonzero RHS makes the system inconsistent.
    for r in row..rows {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); k];
    for (col, &pr) in pivot_rows.iter().enumerate() {
        x[col] = m[pr][k] / m[pr][col];
    }
    Some(x)
}

/// The subsystem `span_Z(S) ∩ Sigma`, with its simple system derived as the
/// indecomposable positives.
pub fn span_subsystem(rs: &RootSystem, s: &[Root]) -> Result<Subsystem> {
    if s.is_empty() {
        return Err(Error::DependentSet);
    }
    for v in s {
        if v.rank() != rs.rank() {
            return Err(Error::BadVectorLength {
                got: v.rank(),
                want: rs.rank(),
            });
        }
    }
    if RootSystem::rational_rank(s) != s.len() {
        return Err(Error::DependentSet);
    }
    let cols: Vec<Vec<Rat>> = s
        .iter()
        .map(|v| v.coeffs().iter().map(|&c| Rat::from_integer(c)).collect())
        .collect();
    let mut roots = BTreeSet::new();
    for r in rs.roots() {
        let b: Vec<Rat> = r.coeffs().iter().map(|&c| Rat::from_integer(c)).collect();
        if let Some(x) = solve_rational(&cols, &b) {
            if x.iter().all(|c| c.is_integer()) {
                roots.insert(r.clone());
            }
        }
    }
    let mut positives: Vec<Root> = roots
        .iter()
        .filter(|r| rs.is_positive(r))
        .cloned()
        .collect();
    positives.sort_by(level_lex);
    let pos_set: HashSet<&Root> = positives.iter().collect();
    let mut simple_system: Vec<Root> = positives
        .iter()
        .filter(|p| {
            // indecomposable: not a sum of two subsystem positives
            !positives.iter().any(|a| {
                let rem = p.sub(a);
                !rem.is_zero()
                    && rem.coeffs().iter().all(|&c| c >= 0)
                    && pos_set.contains(&rem)
            })
        })
        .cloned()
        .collect();
    simple_system.sort_by(level_lex);
    let non_reduced = roots.iter().any(|r| roots.contains(&r.scale(2)));
    let mut simple_cartans = vec![vec![0i64; simple_system.len()]; simple_system.len()];
    for (i, a) in simple_system.iter().enumerate() {
        for (j, b) in simple_system.iter().enumerate() {
            simple_cartans[i][j] = rs.cartan_integer(a, b)?;
        }
    }
    let simple_norms: Vec<Rat> = simple_system.iter().map(|r| rs.norm2(r)).collect();
    Ok(Subsystem {
        generators: s.to_vec(),
        roots,
        positives,
        simple_system,
        simple_cartans,
        simple_norms,
        non_reduced,
    })
}

/// Identifies the Dynkin type of a subsystem by matching its simple system
/// against the family catalog, and returns the permutation sending canonical
/// node `i` to the matching entry of `sub.simple_system()`.
///
/// The match is a brute-force permutation search over at most 9 nodes,
/// pruned as each node is assigned; rank-2 double-bond systems canonicalize
/// to `B2` and rank-1 to `A1`.
pub fn classify_type(sub: &Subsystem) -> Result<(RootSystemType, Vec<usize>)> {
    let r = sub.rank();
    if r == 0 {
        return Err(Error::DependentSet);
    }
    let m = sub.positives().len();
    let candidates: Vec<Family> = if sub.is_non_reduced() {
        vec![Family::BC]
    } else {
        vec![
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ]
    };
    for family in candidates {
        let Ok(t) = RootSystemType::new(family, r) else {
            continue;
        };
        let (canon, alias) = t.canonical();
        if alias {
            continue; // the canonical family will be tried on its own
        }
        if canon.positive_count() != m {
            continue;
        }
        let target = canonical_cartans(canon);
        if let Some(perm) = match_cartans(&target, sub.simple_cartans()) {
            return Ok((canon, perm));
        }
    }
    Err(Error::Internal(format!(
        "subsystem with {m} positives and rank {r} matches no catalog entry"
    )))
}

/// Cartan matrix of the canonical simple basis of a family, computed from
/// its Gram matrix alone.
pub(crate) fn canonical_cartans(t: RootSystemType) -> Vec<Vec<i64>> {
    let g = crate::rootsys::gram_matrix(t.canonical().0);
    let n = t.rank();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let q = Rat::from_integer(2) * g[i][j] / g[i][i];
            *entry = q.to_integer();
        }
    }
    c
}

/// Backtracking search for a permutation `perm` with
/// `target[i][j] == actual[perm[i]][perm[j]]` for all `i, j`.
pub(crate) fn match_cartans(target: &[Vec<i64>], actual: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = target.len();
    if actual.len() != n {
        return None;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        target: &[Vec<i64>],
        actual: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = perm.len();
        if i == target.len() {
            return true;
        }
        for cand in 0..target.len() {
            if used[cand] {
                continue;
            }
            if target[i][i] != actual[cand][cand] {
                continue;
            }
            let ok = (0..i).all(|j| {
                target[i][j] == actual[cand][perm[j]] && target[j][i] == actual[perm[j]][cand]
            });
            if !ok {
                continue;
            }
            used[cand] = true;
            perm.push(cand);
            if go(target, actual, perm, used) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }
    if go(target, actual, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

/// Outcome of the minimum-level test: when false, `witness` names a simple
/// index `alpha` in `phi` with `lambda - alpha` a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimumLevelCheck {
    pub is_minimum: bool,
    pub witness: Option<usize>,
}

/// Tests whether `lambda` is of minimum level in its phi-string without
/// computing the string: no `alpha` in `phi` may have `lambda - alpha` in
/// `Sigma`.
pub fn is_minimum_level(rs: &RootSystem, phi: &[usize], lambda: &Root) -> Result<MinimumLevelCheck> {
    if !rs.is_positive(lambda) {
        return Err(Error::NotPositive(lambda.clone()));
    }
    let (_, mask) = phi_mask(rs, phi)?;
    if lambda.supported_on(&mask) {
        return Err(Error::BaseInSpan);
    }
    for &i in phi {
        let v = lambda.sub(&Root::simple(rs.rank(), i));
        if rs.contains(&v) {
            return Ok(MinimumLevelCheck {
                is_minimum: false,
                witness: Some(i),
            });
        }
    }
    Ok(MinimumLevelCheck {
        is_minimum: true,
        witness: None,
    })
}

/// Assembles the phi-string of `lambda` for non-connected `phi` from its
/// per-block strings: every member is `lambda + sum_k gamma_k` with each
/// `lambda + gamma_k` a member of the block string.
pub fn product_string(rs: &RootSystem, blocks: &[Vec<usize>], lambda: &Root) -> Result<StringSet> {
    for block in blocks {
        if !rs.is_connected_subset(block) {
            return Err(Error::BlockNotConnected(block.clone()));
        }
    }
    for (k, a) in blocks.iter().enumerate() {
        for b in blocks.iter().skip(k + 1) {
            for &i in a {
                for &j in b {
                    if i == j || !rs.gram()[i][j].is_zero() {
                        return Err(Error::BlocksNotOrthogonal);
                    }
                }
            }
        }
    }
    let union: Vec<usize> = blocks.iter().flatten().copied().collect();
    let check = is_minimum_level(rs, &union, lambda)?;
    if let Some(w) = check.witness {
        return Err(Error::NotMinimumLevel(lambda.clone(), w));
    }
    let mut deltas: Vec<Root> = vec![Root::zero(rs.rank())];
    for block in blocks {
        let s = phi_string(rs, block, lambda)?;
        let block_deltas: Vec<Root> = s.members().iter().map(|m| m.sub(lambda)).collect();
        let mut next = Vec::with_capacity(deltas.len() * block_deltas.len());
        for d in &deltas {
            for bd in &block_deltas {
                next.push(d.add(bd));
            }
        }
        deltas = next;
    }
    let members: BTreeSet<Root> = deltas.iter().map(|d| lambda.add(d)).collect();
    let (set, _) = phi_mask(rs, &union)?;
    Ok(StringSet::from_parts(
        rs.rtype(),
        set,
        lambda.clone(),
        members,
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn root(v: &[i64]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn empty_phi_gives_singleton() {
        let a2 = rs("A2");
        let lam = root(&[0, 1]);
        let s = phi_string(&a2, &[], &lam).unwrap();
        assert_eq!(s.cardinality(), 1);
        assert!(s.contains(&lam));
        assert!(!s.is_subsystem_case());
        assert_eq!(s.minimum_level_root().unwrap(), &lam);
    }

    #[test]
    fn a2_string_of_alpha2_along_alpha1() {
        let a2 = rs("A2");
        let s = phi_string(&a2, &[0], &root(&[0, 1])).unwrap();
        let want: BTreeSet<Root> = [root(&[0, 1]), root(&[1, 1])].into_iter().collect();
        assert_eq!(s.members(), &want);
        assert_eq!(s.minimum_level_root().unwrap(), &root(&[0, 1]));
    }

    #[test]
    fn f4_c3_string_has_fourteen_members() {
        let f4 = rs("F4");
        let s = phi_string(&f4, &[0, 1, 2], &root(&[0, 0, 0, 1])).unwrap();
        assert_eq!(s.cardinality(), 14);
        assert_eq!(s.minimum_level_root().unwrap(), &root(&[0, 0, 0, 1]));
    }

    #[test]
    fn subsystem_case_is_flagged_and_contains_zero() {
        let a2 = rs("A2");
        let s = phi_string(&a2, &[0, 1], &root(&[1, 1])).unwrap();
        assert!(s.is_subsystem_case());
        assert!(s.contains(&Root::zero(2)));
        assert_eq!(s.cardinality(), 7); // the six roots of A2 plus zero
        assert!(matches!(
            s.minimum_level_root(),
            Err(Error::SubsystemStringNoBase)
        ));
    }

    #[test]
    fn negation_symmetry_small() {
        let b3 = rs("B3");
        for lam in b3.positives() {
            for phi in [vec![0], vec![1, 2], vec![0, 2]] {
                let plus = phi_string(&b3, &phi, lam).unwrap();
                let minus = phi_string(&b3, &phi, &lam.neg()).unwrap();
                let negated: BTreeSet<Root> = minus.members().iter().map(|r| r.neg()).collect();
                assert_eq!(plus.members(), &negated);
            }
        }
    }

    #[test]
    fn minimum_level_examples() {
        let a2 = rs("A2");
        let s = phi_string(&a2, &[0], &root(&[1, 1])).unwrap();
        // The string of alpha_1 + alpha_2 along alpha_1 contains alpha_2.
        assert_eq!(s.minimum_level_root().unwrap(), &root(&[0, 1]));

        let check = is_minimum_level(&a2, &[0], &root(&[1, 1])).unwrap();
        assert!(!check.is_minimum);
        assert_eq!(check.witness, Some(0));

        let check = is_minimum_level(&a2, &[0], &root(&[0, 1])).unwrap();
        assert!(check.is_minimum);

        assert!(matches!(
            is_minimum_level(&a2, &[0], &root(&[1, 0])),
            Err(Error::BaseInSpan)
        ));
    }

    #[test]
    fn span_subsystem_examples() {
        let b3 = rs("B3");
        let sub = span_subsystem(&b3, &[root(&[1, 0, 0]), root(&[0, 1, 0])]).unwrap();
        assert_eq!(sub.roots().len(), 6);
        assert_eq!(sub.positives().len(), 3);
        assert_eq!(
            sub.simple_system(),
            &[root(&[0, 1, 0]), root(&[1, 0, 0])]
        );
        let (t, _) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "A2");

        // The full simple basis spans the whole system.
        let basis: Vec<Root> = (0..3).map(|i| Root::simple(3, i)).collect();
        let sub = span_subsystem(&b3, &basis).unwrap();
        assert_eq!(sub.roots().len(), b3.root_count());
        let (t, _) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "B3");

        assert!(matches!(
            span_subsystem(&b3, &[root(&[1, 0, 0]), root(&[-1, 0, 0])]),
            Err(Error::DependentSet)
        ));
    }

    #[test]
    fn extended_generators_are_the_simple_system() {
        // For lambda of minimum level, {lambda} ∪ phi is exactly the derived
        // simple system of the subsystem it spans, and every subsystem root
        // has one-signed integer coordinates over it.
        for (name, phi, lam) in [
            ("B4", vec![0usize, 1, 2], Root::simple(4, 3)),
            ("F4", vec![1, 2, 3], Root::simple(4, 0)),
            ("E6", vec![0, 2, 3, 4], Root::simple(6, 1)),
        ] {
            let sys = rs(name);
            let mut gens: Vec<Root> = phi.iter().map(|&i| Root::simple(sys.rank(), i)).collect();
            gens.push(lam.clone());
            let sub = span_subsystem(&sys, &gens).unwrap();
            let mut want = gens.clone();
            want.sort();
            let mut got = sub.simple_system().to_vec();
            got.sort();
            assert_eq!(got, want, "{name}: simple system differs from generators");
            for r in sub.roots() {
                let coords = sub.coordinates(r).expect("member lies in the span");
                assert!(coords.iter().all(|c| c.is_integer()));
                let pos = coords.iter().all(|c| *c >= Rat::from_integer(0));
                let neg = coords.iter().all(|c| *c <= Rat::from_integer(0));
                assert!(pos || neg, "{name}: mixed-sign coordinates for {r}");
            }
        }
    }

    #[test]
    fn root_systems_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<RootSystem>();
        assert_send_sync::<StringSet>();
        assert_send_sync::<Subsystem>();
    }

    #[test]
    fn f4_spans_itself() {
        let f4 = rs("F4");
        let s = vec![
            Root::simple(4, 0),
            Root::simple(4, 1),
            Root::simple(4, 2),
            Root::simple(4, 3),
        ];
        let sub = span_subsystem(&f4, &s).unwrap();
        assert_eq!(sub.roots().len(), 48);
        let (t, _) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "F4");
    }

    #[test]
    fn classify_small_types() {
        let e6 = rs("E6");
        // Single node.
        let sub = span_subsystem(&e6, &[Root::simple(6, 3)]).unwrap();
        let (t, _) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "A1");

        // A branched 4-chain inside E6 around the trivalent node.
        let sub = span_subsystem(
            &e6,
            &[
                Root::simple(6, 1),
                Root::simple(6, 2),
                Root::simple(6, 3),
                Root::simple(6, 4),
            ],
        )
        .unwrap();
        let (t, _) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "D4");

        // Doubled roots force BC.
        let bc3 = rs("BC3");
        let basis: Vec<Root> = (0..3).map(|i| Root::simple(3, i)).collect();
        let sub = span_subsystem(&bc3, &basis).unwrap();
        assert!(sub.is_non_reduced());
        let (t, _) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "BC3");
    }

    #[test]
    fn classify_returns_usable_permutation() {
        // The last three simple roots of C4 span a C3; classification must
        // return a permutation mapping the canonical Cartan matrix onto the
        // actual one.
        let c4 = rs("C4");
        let s = vec![Root::simple(4, 3), Root::simple(4, 1), Root::simple(4, 2)];
        let sub = span_subsystem(&c4, &s).unwrap();
        let (t, perm) = classify_type(&sub).unwrap();
        assert_eq!(t.to_string(), "C3");
        let target = canonical_cartans(t);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(target[i][j], sub.simple_cartans()[perm[i]][perm[j]]);
            }
        }
    }

    #[test]
    fn product_string_examples() {
        let a5 = rs("A5");
        let lam = Root::simple(5, 1);
        let blocks = vec![vec![0], vec![2, 3]];
        let p = product_string(&a5, &blocks, &lam).unwrap();
        assert_eq!(p.cardinality(), 6);
        let brute = phi_string(&a5, &[0, 2, 3], &lam).unwrap();
        assert_eq!(p.members(), brute.members());

        let d4 = rs("D4");
        let lam = Root::simple(4, 1);
        let blocks = vec![vec![0], vec![2], vec![3]];
        let p = product_string(&d4, &blocks, &lam).unwrap();
        assert_eq!(p.cardinality(), 8);
        let brute = phi_string(&d4, &[0, 2, 3], &lam).unwrap();
        assert_eq!(p.members(), brute.members());

        // Single block degenerates to the block's own string.
        let p = product_string(&d4, &[vec![0]], &lam).unwrap();
        let brute = phi_string(&d4, &[0], &lam).unwrap();
        assert_eq!(p.members(), brute.members());

        // Non-orthogonal blocks are rejected.
        assert!(matches!(
            product_string(&a5, &[vec![0], vec![1]], &Root::simple(5, 3)),
            Err(Error::BlocksNotOrthogonal)
        ));
    }

    #[test]
    fn at_most_three_blocks_attach() {
        // For minimum-level lambda, at most three alphas in phi have
        // lambda + alpha positive.
        for name in ["A5", "D5", "E6", "B4"] {
            let sys = rs(name);
            let n = sys.rank();
            let all: Vec<usize> = (0..n).collect();
            for lam in sys.positives() {
                for skip in 0..n {
                    let phi: Vec<usize> = all.iter().copied().filter(|&i| i != skip).collect();
                    let mask_ok = !lam.supported_on(
                        &(0..n).map(|i| i != skip).collect::<Vec<bool>>(),
                    );
                    if !mask_ok {
                        continue;
                    }
                    if !is_minimum_level(&sys, &phi, lam).unwrap().is_minimum {
                        continue;
                    }
                    let attached = phi
                        .iter()
                        .filter(|&&i| {
                            sys.is_positive(&lam.add(&Root::simple(n, i)))
                        })
                        .count();
                    assert!(attached <= 3, "{name}: {lam} attaches {attached}");
                }
            }
        }
    }
}
