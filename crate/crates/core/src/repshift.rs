//! Representation shifts: shifts of finite type whose states are
//! homomorphisms of a finitely presented group into a finite group, built
//! from HNN data, with the conjugation action and its right reduced shift.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::action::{validate_action, PermGroup, Permutation, PermutationAction};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RectMatrix};
use crate::poly::IntPolynomial;
use crate::quotient::{burnside_counts, OrbitCountReport};
use crate::reduce::{reduce_matrix, ReducedShift, Side};
use crate::sft::{trim_essential, SftPresentation};

/// Groups larger than this are not checked for associativity.
pub const ASSOCIATIVITY_CHECK_BOUND: usize = 128;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates closure, identity, inverses and (up to
    /// [`ASSOCIATIVITY_CHECK_BOUND`]) associativity.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAGroup("a group has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAGroup(format!("table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::NotAGroup("table entry out of range".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", names[x])))?;
            inverse.push(y);
        }
        if n <= ASSOCIATIVITY_CHECK_BOUND {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::NotAGroup(format!(
                                "({}·{})·{} differs from {}·({}·{})",
                                names[a], names[b], names[c], names[a], names[b], names[c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroupTable { names, table, identity, inverse })
    }

    /// `Z/n` with elements `0, 1, ..., n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, table).expect("cyclic group")
    }

    /// The symmetric group on `1..=n`, elements in lexicographic order of
    /// their image lists, named in cycle notation; `a·b` applies `b` first.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        loop {
            let mut p = perms.last().expect("nonempty").clone();
            let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { break };
            let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
            p.swap(i - 1, j);
            p[i..].reverse();
            perms.push(p);
        }
        let perms: Vec<Permutation> =
            perms.into_iter().map(|p| Permutation::from_images(p).expect("permutation")).collect();
        Self::from_permutations(&perms)
    }

    /// The dihedral group of order `2n`: `r^k` then `r^k s`, with
    /// `s r = r^-1 s`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let idx = |k: usize, f: usize| f * n + k;
        let mut names = Vec::with_capacity(2 * n);
        for f in 0..2 {
            for k in 0..n {
                let r = match k {
                    0 => String::new(),
                    1 => "r".into(),
                    _ => format!("r^{k}"),
                };
                names.push(match (f, r.is_empty()) {
                    (0, true) => "e".into(),
                    (0, false) => r,
                    (_, true) => "s".into(),
                    (_, false) => format!("{r}s"),
                });
            }
        }
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for (f1, k1, f2, k2) in (0..2)
            .flat_map(|f1| (0..n).flat_map(move |k1| (0..2).flat_map(move |f2| (0..n).map(move |k2| (f1, k1, f2, k2)))))
        {
            // r^k1 s^f1 · r^k2 s^f2 = r^(k1 ± k2) s^(f1 + f2)
            let k = if f1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            table[idx(k1, f1)][idx(k2, f2)] = idx(k, (f1 + f2) % 2);
        }
        Self::from_table(names, table).expect("dihedral group")
    }

    /// The quaternion group `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // Units 1, i, j, k as 0..4; unit product with sign.
        let unit = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let letters = ["1", "i", "j", "k"];
        let mut names = Vec::with_capacity(8);
        for u in letters {
            names.push(u.to_string());
            names.push(format!("-{u}"));
        }
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = unit(a / 2, b / 2);
                        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                        2 * u + usize::from(sign)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, table).expect("quaternion group")
    }

    /// The group of the given permutations (which must be closed under
    /// composition), named in cycle notation.
    pub fn from_permutations(perms: &[Permutation]) -> Self {
        let index: BTreeMap<&Permutation, usize> = perms.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let names = perms.iter().map(|p| p.to_cycle_string()).collect();
        let table = perms.iter().map(|a| perms.iter().map(|b| index[&a.compose(b)]).collect()).collect();
        Self::from_table(names, table).expect("closed permutation set")
    }

    /// `Zn`, `Sn`, `Dn` or `Q8`.
    pub fn by_name(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownGroup(name.to_string());
        if name == "Q8" {
            return Ok(Self::quaternion());
        }
        let (kind, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
        let n: usize = rest.parse().map_err(|_| unknown())?;
        match kind {
            "Z" if (1..=1000).contains(&n) => Ok(Self::cyclic(n)),
            "S" if (1..=5).contains(&n) => Ok(Self::symmetric(n)),
            "D" if (1..=500).contains(&n) => Ok(Self::dihedral(n)),
            _ => Err(unknown()),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `c⁻¹ x c`.
    pub fn conjugate(&self, x: usize, c: usize) -> usize {
        self.mul(self.mul(self.inv(c), x), c)
    }

    /// The permutations `ρ ↦ c⁻¹ρc` (componentwise) of the given tuples, one
    /// per element `c` in table order with repeats removed, so the identity
    /// comes first. Fails if some conjugate is missing from `tuples`.
    pub fn conjugation_on_tuples(&self, tuples: &[Vec<usize>]) -> Result<PermGroup> {
        let index: BTreeMap<&[usize], usize> = tuples.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
        let mut order: Vec<usize> = vec![self.identity];
        order.extend((0..self.order()).filter(|&c| c != self.identity));
        let mut perms: Vec<Permutation> = Vec::new();
        for c in order {
            let images = tuples
                .iter()
                .map(|t| {
                    let conj: Vec<usize> = t.iter().map(|&x| self.conjugate(x, c)).collect();
                    index.get(conj.as_slice()).copied().ok_or_else(|| {
                        Error::InconsistentHnn(format!("conjugate of a tuple by {} is not listed", self.names[c]))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let p = Permutation::from_images(images)?;
            if !perms.contains(&p) {
                perms.push(p);
            }
        }
        PermGroup::from_elements(tuples.len(), perms)
    }
}

/// One generator or inverse generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A word in generators `a, b, c, ...` (0-based indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord(letters)
    }

    pub fn generator(k: usize) -> Self {
        GroupWord(vec![Letter { generator: k, inverse: false }])
    }

    /// Parses words such as `a b^-1`, `aB` (capitals are inverses),
    /// `a^3 b^-2` or `1` (the empty word). Spaces and `*` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidCode(format!("word {text:?}: {m}"));
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if chars == ['1'] {
            return Ok(GroupWord::default());
        }
        let mut letters = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if !c.is_ascii_alphabetic() {
                return Err(bad(format!("unexpected {c:?}")));
            }
            let generator = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            let mut inverse = c.is_ascii_uppercase();
            k += 1;
            let mut power = 1i64;
            if k < chars.len() && chars[k] == '^' {
                let start = k + 1;
                let mut end = start;
                if end < chars.len() && chars[end] == '-' {
                    end += 1;
                }
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let digits: String = chars[start..end].iter().collect();
                power = digits.parse().map_err(|_| bad(format!("bad exponent {digits:?}")))?;
                k = end;
            }
            if power < 0 {
                inverse = !inverse;
            }
            for _ in 0..power.unsigned_abs() {
                letters.push(Letter { generator, inverse });
            }
        }
        Ok(GroupWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let c = (b'a' + l.generator as u8) as char;
            write!(f, "{}", if l.inverse { c.to_ascii_uppercase() } else { c })?;
        }
        Ok(())
    }
}

/// Product of the images of the letters of `w`.
pub fn evaluate_word(w: &GroupWord, images: &[usize], g: &FiniteGroupTable) -> Result<usize> {
    let mut x = g.identity();
    for l in w.letters() {
        let y =
            *images.get(l.generator).ok_or(Error::GeneratorOutOfRange { index: l.generator, count: images.len() })?;
        x = g.mul(x, if l.inverse { g.inv(y) } else { y });
    }
    Ok(x)
}

/// All assignments of group elements to `gens` generators that kill every
/// relator, in lexicographic order. A relator is tested as soon as all of
/// its generators are assigned.
pub fn enumerate_homs(
    gens: usize,
    relators: &[GroupWord],
    g: &FiniteGroupTable,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    for r in relators {
        if let Some(k) = r.max_generator().filter(|&k| k >= gens) {
            return Err(Error::GeneratorOutOfRange { index: k, count: gens });
        }
    }
    let size = BigInt::from(g.order()).pow(gens as u32);
    if size > BigInt::from(limit) {
        return Err(Error::HomLimitExceeded { size: size.to_string(), limit });
    }
    let mut by_last: Vec<Vec<&GroupWord>> = vec![Vec::new(); gens.max(1)];
    let mut constant = Vec::new();
    for r in relators {
        match r.max_generator() {
            Some(k) => by_last[k].push(r),
            None => constant.push(r),
        }
    }
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens);
    extend_homs(gens, &by_last, g, &mut images, &mut out)?;
    Ok(out)
}

fn extend_homs(
    gens: usize,
    by_last: &[Vec<&GroupWord>],
    g: &FiniteGroupTable,
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let k = images.len();
    if k == gens {
        out.push(images.clone());
        return Ok(());
    }
    for x in 0..g.order() {
        images.push(x);
        let mut ok = true;
        for r in &by_last[k] {
            if evaluate_word(r, images, g)? != g.identity() {
                ok = false;
                break;
            }
        }
        if ok {
            extend_homs(gens, by_last, g, images, out)?;
        }
        images.pop();
    }
    Ok(())
}

/// An HNN base `B` with subgroups `U`, `V` and the amalgamating map
/// `U -> V`. `u_gens` and `v_gens` are words in the `B`-generators;
/// `phi_images[k]` is the image of the `k`-th `U`-generator, as a word in the
/// `B`-generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HnnData {
    pub b_gens: usize,
    pub b_relators: Vec<GroupWord>,
    pub u_gens: Vec<GroupWord>,
    pub u_relators: Vec<GroupWord>,
    pub v_gens: Vec<GroupWord>,
    pub v_relators: Vec<GroupWord>,
    pub phi_images: Vec<GroupWord>,
}

impl HnnData {
    pub fn validate(&self) -> Result<()> {
        if self.phi_images.len() != self.u_gens.len() {
            return Err(Error::InconsistentHnn(format!(
                "{} amalgamating images for {} U-generators",
                self.phi_images.len(),
                self.u_gens.len()
            )));
        }
        let check = |words: &[GroupWord], count: usize| -> Result<()> {
            for w in words {
                if let Some(k) = w.max_generator().filter(|&k| k >= count) {
                    return Err(Error::GeneratorOutOfRange { index: k, count });
                }
            }
            Ok(())
        };
        check(&self.b_relators, self.b_gens)?;
        check(&self.u_gens, self.b_gens)?;
        check(&self.v_gens, self.b_gens)?;
        check(&self.phi_images, self.b_gens)?;
        check(&self.u_relators, self.u_gens.len())?;
        check(&self.v_relators, self.v_gens.len())
    }
}

/// The representation shift of HNN data and a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepShift {
    pub group: FiniteGroupTable,
    /// Homomorphisms `U -> G` that survive trimming, as generator images.
    pub states: Vec<Vec<usize>>,
    /// Homomorphisms `B -> G` between surviving states, with their initial
    /// and terminal states.
    pub edges: Vec<Vec<usize>>,
    pub edge_ends: Vec<(usize, usize)>,
    /// The state presentation (entries count parallel edges).
    pub presentation: SftPresentation,
    /// Conjugation on the states.
    pub state_group: PermGroup,
    /// Conjugation as a permutation action: on the state presentation when
    /// it is 0-1, otherwise on the edge graph.
    pub action: PermutationAction,
    pub edge_level: bool,
}

fn tuple_label(g: &FiniteGroupTable, t: &[usize]) -> String {
    let names: Vec<&str> = t.iter().map(|&x| g.name(x)).collect();
    format!("[{}]", names.join(","))
}

pub fn build_repshift(h: &HnnData, g: &FiniteGroupTable, limit: usize) -> Result<RepShift> {
    h.validate()?;
    let all_states = enumerate_homs(h.u_gens.len(), &h.u_relators, g, limit)?;
    let all_edges = enumerate_homs(h.b_gens, &h.b_relators, g, limit)?;
    let state_index: BTreeMap<&[usize], usize> =
        all_states.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
    let eval_all = |words: &[GroupWord], rho: &[usize]| -> Result<Vec<usize>> {
        words.iter().map(|w| evaluate_word(w, rho, g)).collect()
    };
    let n = all_states.len();
    let mut counts = vec![vec![0u64; n]; n];
    let mut ends = Vec::with_capacity(all_edges.len());
    for rho in &all_edges {
        let v_tuple = eval_all(&h.v_gens, rho)?;
        if let Some(r) = h.v_relators.iter().find(|r| evaluate_word(r, &v_tuple, g).ok() != Some(g.identity())) {
            return Err(Error::InconsistentHnn(format!("V-relator {r} fails at {}", tuple_label(g, rho))));
        }
        let init = eval_all(&h.u_gens, rho)?;
        let term = eval_all(&h.phi_images, rho)?;
        let locate = |t: &[usize], what: &str| -> Result<usize> {
            state_index.get(t).copied().ok_or_else(|| {
                let failing = h
                    .u_relators
                    .iter()
                    .find(|r| evaluate_word(r, t, g).ok() != Some(g.identity()))
                    .map_or_else(|| "?".to_string(), |r| r.to_string());
                Error::InconsistentHnn(format!(
                    "{what} state {} of {} violates U-relator {failing}",
                    tuple_label(g, t),
                    tuple_label(g, rho)
                ))
            })
        };
        let (i, j) = (locate(&init, "initial")?, locate(&term, "terminal")?);
        counts[i][j] += 1;
        ends.push((i, j));
    }
    let labels: Vec<String> = all_states.iter().map(|t| tuple_label(g, t)).collect();
    let full = IntMatrix::new(counts)?.with_labels(labels)?;
    let presentation = trim_essential(&full)?;
    let origin = presentation.origin().to_vec();
    let mut new_index = vec![usize::MAX; n];
    for (k, &o) in origin.iter().enumerate() {
        new_index[o] = k;
    }
    let states: Vec<Vec<usize>> = origin.iter().map(|&o| all_states[o].clone()).collect();
    let mut edges = Vec::new();
    let mut edge_ends = Vec::new();
    for (rho, &(i, j)) in all_edges.iter().zip(&ends) {
        if new_index[i] != usize::MAX && new_index[j] != usize::MAX {
            edges.push(rho.clone());
            edge_ends.push((new_index[i], new_index[j]));
        }
    }
    let state_group = g.conjugation_on_tuples(&states)?;
    let (action, edge_level) = if presentation.is_zero_one() {
        (validate_action(&presentation, &state_group)?, false)
    } else {
        let m = edges.len();
        let rows: Vec<Vec<u32>> =
            (0..m).map(|e| (0..m).map(|f| u32::from(edge_ends[e].1 == edge_ends[f].0)).collect()).collect();
        let labels = edges.iter().map(|t| tuple_label(g, t)).collect();
        let edge_graph = SftPresentation::new(IntMatrix::new(rows)?.with_labels(labels)?)?;
        (validate_action(&edge_graph, &g.conjugation_on_tuples(&edges)?)?, true)
    };
    Ok(RepShift { group: g.clone(), states, edges, edge_ends, presentation, state_group, action, edge_level })
}

/// A genus-one fibered knot: `B = U = V` free on `a, b` with the monodromy
/// as amalgamating map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedPreset {
    pub name: String,
    pub monodromy: Vec<GroupWord>,
    pub hnn: HnnData,
    /// Alexander polynomial of the knot, constant term first.
    pub alexander: IntPolynomial,
}

impl FiberedPreset {
    /// Columns are the abelianized images of `a` and `b`.
    pub fn abelianized(&self) -> RectMatrix {
        let mut cols = vec![vec![0i64; 2]; 2];
        for (k, w) in self.monodromy.iter().enumerate() {
            for l in w.letters() {
                cols[k][l.generator] += if l.inverse { -1 } else { 1 };
            }
        }
        RectMatrix::new_signed(vec![vec![cols[0][0], cols[1][0]], vec![cols[0][1], cols[1][1]]]).expect("2x2 matrix")
    }

    /// `det(tI - M)` of the abelianized monodromy.
    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        let m = self.abelianized();
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        IntPolynomial::new(vec![a * d - b * c, -(a + d), BigInt::from(1)])
    }

    pub fn self_check(&self) -> bool {
        self.characteristic_polynomial() == self.alexander
    }
}

/// `trefoil` (`a ↦ b`, `b ↦ a⁻¹b`) or `figure8` (`a ↦ ab`, `b ↦ bab`).
pub fn fibered_preset(name: &str) -> Result<FiberedPreset> {
    let (images, alexander) = match name {
        "trefoil" => (["b", "Ab"], IntPolynomial::new(vec![1, -1, 1])),
        "figure8" => (["ab", "bab"], IntPolynomial::new(vec![1, -3, 1])),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    let monodromy: Vec<GroupWord> = images.iter().map(|w| GroupWord::parse(w).expect("preset word")).collect();
    let hnn = HnnData {
        b_gens: 2,
        b_relators: Vec::new(),
        u_gens: vec![GroupWord::generator(0), GroupWord::generator(1)],
        u_relators: Vec::new(),
        v_gens: monodromy.clone(),
        v_relators: Vec::new(),
        phi_images: monodromy.clone(),
    };
    Ok(FiberedPreset { name: name.to_string(), monodromy, hnn, alexander })
}

/// The right reduced shift of the conjugation action on states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TqftMatrix {
    pub reduced: ReducedShift,
}

impl TqftMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.reduced.matrix
    }
}

pub fn tqft_matrix(r: &RepShift) -> Result<TqftMatrix> {
    Ok(TqftMatrix { reduced: reduce_matrix(r.presentation.matrix(), &r.state_group, Side::Right)? })
}

/// Counts of conjugation orbits of periodic points, i.e. of flat bundles
/// over the cyclic branched covers, with their recurrence.
pub fn flat_bundle_counts(r: &RepShift, m: usize) -> Result<OrbitCountReport> {
    burnside_counts(&r.action, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::trace_of_power;
    use num_traits::Zero;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn builtin_groups() {
        assert_eq!(FiniteGroupTable::cyclic(5).order(), 5);
        let s3 = FiniteGroupTable::symmetric(3);
        assert_eq!(s3.names(), &["()", "(2 3)", "(1 2)", "(1 2 3)", "(1 3 2)", "(1 3)"]);
        assert_eq!(FiniteGroupTable::symmetric(4).order(), 24);
        let d4 = FiniteGroupTable::dihedral(4);
        assert_eq!(d4.order(), 8);
        let q8 = FiniteGroupTable::quaternion();
        let i = q8.names().iter().position(|n| n == "i").unwrap();
        let minus_one = q8.names().iter().position(|n| n == "-1").unwrap();
        assert_eq!(q8.mul(i, i), minus_one);
        // Q8 and D4 differ by their number of involutions.
        let involutions =
            |g: &FiniteGroupTable| (0..g.order()).filter(|&x| x != g.identity() && g.mul(x, x) == g.identity()).count();
        assert_eq!(involutions(&q8), 1);
        assert_eq!(involutions(&d4), 5);
        assert!(matches!(FiniteGroupTable::by_name("X3"), Err(Error::UnknownGroup(_))));
        assert_eq!(FiniteGroupTable::by_name("D3").unwrap().order(), 6);
    }

    #[test]
    fn table_validation() {
        let names = vec!["e".to_string(), "x".to_string()];
        assert!(FiniteGroupTable::from_table(names.clone(), vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FiniteGroupTable::from_table(names, vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn words() {
        let s3 = FiniteGroupTable::symmetric(3);
        let a = s3.names().iter().position(|n| n == "(1 2)").unwrap();
        let b = s3.names().iter().position(|n| n == "(2 3)").unwrap();
        assert_eq!(evaluate_word(&w("1"), &[a, b], &s3).unwrap(), s3.identity());
        assert_eq!(evaluate_word(&w("aA"), &[a, b], &s3).unwrap(), s3.identity());
        assert_eq!(evaluate_word(&w("ab"), &[a, b], &s3).unwrap(), s3.mul(a, b));
        assert_eq!(w("a^-1 b^2"), w("Abb"));
        assert_eq!(w("Abb").to_string(), "Abb");
        assert!(matches!(evaluate_word(&w("c"), &[a, b], &s3), Err(Error::GeneratorOutOfRange { index: 2, .. })));
    }

    #[test]
    fn hom_counts() {
        let z2 = FiniteGroupTable::cyclic(2);
        assert_eq!(enumerate_homs(1, &[w("a^3")], &z2, 100).unwrap(), vec![vec![0]]);
        let s3 = FiniteGroupTable::symmetric(3);
        assert_eq!(enumerate_homs(2, &[], &s3, 100).unwrap().len(), 36);
        assert_eq!(enumerate_homs(2, &[w("abAB")], &s3, 100).unwrap().len(), 18);
        let one = FiniteGroupTable::cyclic(1);
        assert_eq!(enumerate_homs(3, &[w("ab"), w("c^5")], &one, 100).unwrap().len(), 1);
        assert!(matches!(enumerate_homs(3, &[], &s3, 100), Err(Error::HomLimitExceeded { .. })));
    }

    #[test]
    fn presets() {
        for name in ["trefoil", "figure8"] {
            assert!(fibered_preset(name).unwrap().self_check(), "{name}");
        }
        let t = fibered_preset("trefoil").unwrap();
        assert_eq!(t.abelianized().rows(), RectMatrix::new_signed(vec![vec![0, -1], vec![1, 1]]).unwrap().rows());
        assert!(matches!(fibered_preset("unknot"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn trefoil_z2() {
        let t = fibered_preset("trefoil").unwrap();
        let r = build_repshift(&t.hnn, &FiniteGroupTable::cyclic(2), 1 << 20).unwrap();
        assert_eq!(r.presentation.dim(), 4);
        assert!(!r.edge_level);
        for i in 0..4 {
            assert_eq!(r.presentation.followers(i).len(), 1);
            assert_eq!(r.presentation.predecessors(i).len(), 1);
        }
        let counts: Vec<BigInt> = (1..=6).map(|n| trace_of_power(r.presentation.matrix(), n)).collect();
        assert_eq!(counts, [1, 1, 4, 1, 1, 4].map(BigInt::from).to_vec());
        let f = flat_bundle_counts(&r, 12).unwrap();
        assert_eq!(&f.counts[..6], &counts[..]);
        assert!(f.residuals().iter().all(|x| x.is_zero()));
        let tq = tqft_matrix(&r).unwrap();
        assert!(tq.matrix().same_entries(r.presentation.matrix()));
    }

    #[test]
    fn trivial_group() {
        let t = fibered_preset("figure8").unwrap();
        let r = build_repshift(&t.hnn, &FiniteGroupTable::cyclic(1), 10).unwrap();
        assert_eq!(r.presentation.matrix().rows(), vec![vec![BigInt::from(1)]]);
        assert!(tqft_matrix(&r).unwrap().matrix().same_entries(&IntMatrix::new(vec![vec![1]]).unwrap()));
        assert_eq!(flat_bundle_counts(&r, 4).unwrap().counts, vec![BigInt::from(1); 4]);
    }

    #[test]
    fn trefoil_s3_counts_conjugation_orbits() {
        let t = fibered_preset("trefoil").unwrap();
        let r = build_repshift(&t.hnn, &FiniteGroupTable::symmetric(3), 1 << 20).unwrap();
        assert_eq!(r.presentation.dim(), 36);
        assert_eq!(r.state_group.order(), 6);
        let tq = tqft_matrix(&r).unwrap();
        // Conjugation classes of pairs in S3: 11.
        assert_eq!(tq.matrix().dim(), 11);
        let f = flat_bundle_counts(&r, 12).unwrap();
        assert!(f.residuals().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn multigraph_state_shift_uses_edge_level_action() {
        // B free on a, b, c; U generated by a; the map sends a to b, so each
        // pair of states is joined by one edge per value of c.
        let h = HnnData {
            b_gens: 3,
            u_gens: vec![w("a")],
            v_gens: vec![w("b")],
            phi_images: vec![w("b")],
            ..HnnData::default()
        };
        let r = build_repshift(&h, &FiniteGroupTable::symmetric(3), 1000).unwrap();
        assert!(r.edge_level);
        assert_eq!(r.presentation.dim(), 6);
        assert_eq!(r.action.dim(), 216);
        let tq = tqft_matrix(&r).unwrap();
        assert!(tq.matrix().same_entries(&IntMatrix::new(vec![vec![6, 18, 12]; 3]).unwrap()));
        // Fixed points are the pairs (x, c); S3 has 11 classes of pairs.
        let f = flat_bundle_counts(&r, 2).unwrap();
        assert_eq!(f.counts[0], BigInt::from(11));
    }

    #[test]
    fn inconsistent_hnn_is_reported() {
        let h = HnnData {
            b_gens: 1,
            b_relators: vec![],
            u_gens: vec![w("a")],
            u_relators: vec![w("a^2")],
            v_gens: vec![w("a")],
            v_relators: vec![],
            phi_images: vec![w("a")],
        };
        assert!(matches!(build_repshift(&h, &FiniteGroupTable::cyclic(3), 100), Err(Error::InconsistentHnn(_))));
    }
}
