//! Finite permutation groups acting on 0-1 presentations by permuting states.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RectMatrix};
use crate::sft::{CycleWord, Edge, SftPresentation};

/// A bijection of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// Builds a permutation from disjoint or overlapping cycles of 0-based
    /// points; cycles are composed right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = BTreeSet::new();
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!("point {} out of range for degree {degree}", x + 1)));
                }
                if !seen.insert(x) {
                    return Err(Error::InvalidPermutation(format!("point {} repeats in a cycle", x + 1)));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
            p = p.compose(&Permutation(images));
        }
        Ok(p)
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5 6)`. Points may be
    /// separated by spaces or commas; without separators every digit is a
    /// point, as in `(12)(3456)`. The empty string and `()` give the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("{text:?}: {msg}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &body_start[..close];
            rest = body_start[close + 1..].trim_start();
            let tokens: Vec<&str> = if body.contains([' ', ',']) {
                body.split([' ', ',']).filter(|s| !s.is_empty()).collect()
            } else {
                body.trim().char_indices().map(|(i, c)| &body.trim()[i..i + c.len_utf8()]).collect()
            };
            let mut cycle = Vec::new();
            for t in tokens {
                let x: usize = t.parse().map_err(|_| bad(&format!("bad point {t:?}")))?;
                if x == 0 {
                    return Err(bad("points are 1-based"));
                }
                cycle.push(x - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.0[start];
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.0[k];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }

    /// `P(i, g i) = 1`.
    pub fn matrix(&self) -> RectMatrix {
        let n = self.0.len();
        let mut m = RectMatrix::zeros(n, n);
        for (i, &j) in self.0.iter().enumerate() {
            m.set(i, j, BigInt::one());
        }
        m
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// A finite group of permutations with element 0 the identity.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Wraps an explicit element list, preserving its order.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(Error::NotAGroup("element 0 must be the identity".into()));
        }
        let mut index = HashMap::with_capacity(elements.len());
        for (k, e) in elements.iter().enumerate() {
            if e.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "element {k} has degree {}, expected {degree}",
                    e.degree()
                )));
            }
            if index.insert(e.clone(), k).is_some() {
                return Err(Error::NotAGroup(format!("element {k} is repeated")));
            }
        }
        let n = elements.len();
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ab = elements[a].compose(&elements[b]);
                mul[a][b] = *index.get(&ab).ok_or_else(|| Error::NotAGroup(format!("not closed: {a}*{b}")))?;
            }
        }
        let inv =
            (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).expect("closure gives inverses in a finite set")).collect();
        Ok(PermGroup { degree, elements, mul, inv })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, vec![Permutation::identity(degree)]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &Permutation {
        &self.elements[g]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |e, a| e.lcm(&self.element_order(a)))
    }

    pub fn permutation_matrix(&self, g: usize) -> RectMatrix {
        self.elements[g].matrix()
    }
}

/// Closure of `gens` under composition. The identity comes first, then each
/// breadth-first layer of new products, sorted lexicographically.
pub fn group_from_generators(degree: usize, gens: &[Permutation], limit: usize) -> Result<PermGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut seen: BTreeSet<Permutation> = elements.iter().cloned().collect();
    let mut layer = elements.clone();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for x in &layer {
            for g in gens {
                let y = g.compose(x);
                if !seen.contains(&y) {
                    next.insert(y);
                }
            }
        }
        if seen.len() + next.len() > limit {
            return Err(Error::GroupLimitExceeded { limit });
        }
        seen.extend(next.iter().cloned());
        layer = next.into_iter().collect();
        elements.extend(layer.iter().cloned());
    }
    PermGroup::from_elements(degree, elements)
}

/// Sorted set of group element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn new(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup(elements)
    }

    pub fn whole(order: usize) -> Self {
        Subgroup((0..order).collect())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.iter().copied().filter(|&g| other.contains(g)).collect())
    }
}

/// A validated permutation action on a 0-1 presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    presentation: SftPresentation,
    group: PermGroup,
}

/// Checks `A(gi, gj) = A(i, j)` for every element and state pair.
pub fn validate_action(p: &SftPresentation, g: &PermGroup) -> Result<PermutationAction> {
    p.require_zero_one()?;
    if p.dim() != g.degree() {
        return Err(Error::DimensionMismatch(format!("group of degree {} acting on {} states", g.degree(), p.dim())));
    }
    for (k, perm) in g.elements().iter().enumerate() {
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                if p.multiplicity(perm.apply(i), perm.apply(j)) != p.multiplicity(i, j) {
                    return Err(Error::InvarianceViolated { element: k, i, j });
                }
            }
        }
    }
    Ok(PermutationAction { presentation: p.clone(), group: g.clone() })
}

impl PermutationAction {
    pub fn presentation(&self) -> &SftPresentation {
        &self.presentation
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.presentation.matrix()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.presentation.dim()
    }

    pub fn act_state(&self, g: usize, i: usize) -> usize {
        self.group.element(g).apply(i)
    }

    pub fn act_edge(&self, g: usize, e: &Edge) -> Edge {
        let p = self.group.element(g);
        Edge::new(p.apply(e.from), p.apply(e.to), e.index)
    }

    /// The same permutations acting on the transposed presentation.
    pub fn transpose(&self) -> PermutationAction {
        PermutationAction { presentation: self.presentation.transpose(), group: self.group.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStructure {
    /// Orbits with members ascending, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit index of each state.
    pub orbit_of: Vec<usize>,
    pub stabilizers: Vec<Subgroup>,
    /// Elements fixing every state.
    pub kernel: Subgroup,
}

impl OrbitStructure {
    pub fn representative(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }
}

/// Orbits of a permutation group on its points, members ascending, ordered
/// by least member, together with the orbit index of every point.
pub fn group_orbits(g: &PermGroup) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.degree();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let members: BTreeSet<usize> = g.elements().iter().map(|p| p.apply(i)).collect();
        for &k in &members {
            orbit_of[k] = orbits.len();
        }
        orbits.push(members.into_iter().collect::<Vec<_>>());
    }
    (orbits, orbit_of)
}

pub fn orbit_structure(a: &PermutationAction) -> OrbitStructure {
    let n = a.dim();
    let g = a.group();
    let (orbits, orbit_of) = group_orbits(g);
    let stabilizers: Vec<Subgroup> =
        (0..n).map(|i| Subgroup::new((0..g.order()).filter(|&k| g.element(k).apply(i) == i).collect())).collect();
    let kernel = stabilizers.iter().fold(Subgroup::whole(g.order()), |h, s| h.intersect(s));
    OrbitStructure { orbits, orbit_of, stabilizers, kernel }
}

/// States fixed by element `g`, ascending.
pub fn fixed_states(a: &PermutationAction, g: usize) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.act_state(g, i) == i).collect()
}

/// Principal submatrix on the states fixed by `g`; `(0)` when none are fixed.
pub fn fixed_submatrix(a: &PermutationAction, g: usize) -> IntMatrix {
    let fixed = fixed_states(a, g);
    if fixed.is_empty() {
        return IntMatrix::zeros(1);
    }
    a.matrix().principal_submatrix(&fixed)
}

/// Intersection of the stabilizers of the states visited by `w`; this is the
/// stabilizer of the periodic point `w^∞`.
pub fn word_stabilizer(a: &PermutationAction, w: &CycleWord) -> Result<Subgroup> {
    if !w.is_cycle_of(a.presentation()) {
        return Err(Error::NotACycle);
    }
    let order = a.group().order();
    Ok(w.states().iter().fold(Subgroup::whole(order), |h, &i| {
        h.intersect(&Subgroup::new((0..order).filter(|&k| a.act_state(k, i) == i).collect()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(12)(3456)", 6).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 4, 5, 2]);
        assert_eq!(p.to_cycle_string(), "(1 2)(3 4 5 6)");
        assert_eq!(Permutation::parse_cycles("(1 2)(3 4 5 6)", 6).unwrap(), p);
        assert_eq!(Permutation::parse_cycles("(10, 11)", 11).unwrap().apply(9), 10);
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn cyclic_group_of_order_four() {
        let gen = Permutation::parse_cycles("(12)(3456)", 6).unwrap();
        let g = group_from_generators(6, std::slice::from_ref(&gen), 100).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element(1), &gen);
        assert_eq!(g.element(2), &gen.compose(&gen));
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn trivial_and_symmetric_closure() {
        assert_eq!(group_from_generators(4, &[], 10).unwrap().order(), 1);
        let gens = [Permutation::parse_cycles("(12)", 3).unwrap(), Permutation::parse_cycles("(123)", 3).unwrap()];
        let s3 = group_from_generators(3, &gens, 10).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(group_from_generators(3, &gens, 5), Err(Error::GroupLimitExceeded { limit: 5 }));
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inverse(a)), 0);
        }
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let t = Permutation::parse_cycles("(12)", 3).unwrap();
        let c = Permutation::parse_cycles("(123)", 3).unwrap();
        assert!(PermGroup::from_elements(3, vec![Permutation::identity(3), c]).is_err());
        assert!(PermGroup::from_elements(3, vec![t.clone(), Permutation::identity(3)]).is_err());
        assert!(PermGroup::from_elements(3, vec![Permutation::identity(3), t.clone(), t]).is_err());
    }

    #[test]
    fn validate_example_action() {
        let a = fixtures::z4_six_state();
        assert_eq!(a.group().order(), 4);
        let p = SftPresentation::new(IntMatrix::new(vec![vec![1, 1], vec![0, 1]]).unwrap()).unwrap();
        let swap = group_from_generators(2, &[Permutation::parse_cycles("(12)", 2).unwrap()], 10).unwrap();
        let err = validate_action(&p, &swap).unwrap_err();
        assert_eq!(err, Error::InvarianceViolated { element: 1, i: 0, j: 1 });
        assert!(validate_action(&p, &PermGroup::trivial(2)).is_ok());
    }

    #[test]
    fn orbits_and_stabilizers() {
        let a = fixtures::z4_six_state();
        let o = orbit_structure(&a);
        assert_eq!(o.orbits, vec![vec![0, 1], vec![2, 3, 4, 5]]);
        assert_eq!(o.stabilizers[2], Subgroup::new(vec![0]));
        assert_eq!(o.stabilizers[0], Subgroup::new(vec![0, 2]));
        assert_eq!(o.kernel, Subgroup::new(vec![0]));
        for i in 0..6 {
            assert_eq!(o.orbits[o.orbit_of[i]].len() * o.stabilizers[i].len(), 4);
        }
    }

    #[test]
    fn fixed_submatrices() {
        let a = fixtures::z4_six_state();
        assert_eq!(fixed_submatrix(&a, 0), *a.matrix());
        assert!(fixed_submatrix(&a, 1).same_entries(&IntMatrix::zeros(1)));
        let sq = fixed_submatrix(&a, 2);
        assert!(sq.same_entries(&IntMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap()));
    }

    #[test]
    fn stabilizers_of_words() {
        let a = fixtures::z4_six_state();
        let loop1 = CycleWord::from_states(&[0]).unwrap();
        assert_eq!(word_stabilizer(&a, &loop1).unwrap(), Subgroup::new(vec![0, 2]));
        let all = CycleWord::from_states(&[0, 2, 1, 3, 0, 4, 1, 5]).unwrap();
        assert!(all.is_cycle_of(a.presentation()));
        assert_eq!(word_stabilizer(&a, &all).unwrap(), Subgroup::new(vec![0]));
        let bogus = CycleWord::from_states(&[0, 1]).unwrap();
        assert_eq!(word_stabilizer(&a, &bogus), Err(Error::NotACycle));
    }

    #[test]
    fn permutation_matrix_convention() {
        let p = Permutation::parse_cycles("(123)", 3).unwrap();
        let m = p.matrix();
        assert_eq!(m.get(0, 1), &BigInt::one());
        assert_eq!(m.get(2, 0), &BigInt::one());
    }
}
