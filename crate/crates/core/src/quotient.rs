//! Periodic orbit counts of the quotient by a permutation action, the
//! expansivity classification of the quotient, and explicit witnesses of
//! nonexpansivity.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::action::{fixed_states, fixed_submatrix, orbit_structure, word_stabilizer, PermutationAction, Subgroup};
use crate::error::{Error, Result};
use crate::matrix::trace_of_power;
use crate::poly::{char_poly_reciprocal, poly_lcm, IntPolynomial};
use crate::reduce::{left_reduce, right_reduce};
use crate::sft::{enumerate_cycles, is_irreducible, CycleWord, Edge, SftPresentation};
use crate::snf::bowen_franks;

/// Default bound on the number of objects an enumeration may produce.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCountReport {
    /// `N_1, ..., N_m`.
    pub counts: Vec<BigInt>,
    /// `Σ_g trace(A_g^n)` for `n = 1..=m`.
    pub burnside_sums: Vec<BigInt>,
    /// `traces[g][n - 1] = trace(A_g^n)`.
    pub traces: Vec<Vec<BigInt>>,
    /// Least common multiple of the `det(I - t A_g)`.
    pub recurrence: IntPolynomial,
    pub group_order: usize,
}

impl OrbitCountReport {
    /// Residuals of the recurrence on the computed counts; all zero when it
    /// annihilates them.
    pub fn residuals(&self) -> Vec<BigInt> {
        self.recurrence.recurrence_residuals(&self.counts)
    }
}

/// Orbit counts of periodic points by averaging fixed-point counts:
/// `N_n = (1/|G|) Σ_g trace(A_g^n)` with `A_g` the matrix on the states fixed
/// by `g`.
pub fn burnside_counts(a: &PermutationAction, m: usize) -> Result<OrbitCountReport> {
    let order = a.group().order();
    let mut traces = Vec::with_capacity(order);
    let mut polys = Vec::with_capacity(order);
    for g in 0..order {
        let ag = fixed_submatrix(a, g);
        traces.push((1..=m as u64).map(|n| trace_of_power(&ag, n)).collect::<Vec<_>>());
        polys.push(char_poly_reciprocal(&ag));
    }
    let mut counts = Vec::with_capacity(m);
    let mut burnside_sums = Vec::with_capacity(m);
    let size = BigInt::from(order);
    for n in 0..m {
        let sum: BigInt = traces.iter().map(|t| &t[n]).sum();
        let (q, r) = sum.div_rem(&size);
        assert!(r.is_zero(), "Burnside sum {sum} is not divisible by {order}");
        counts.push(q);
        burnside_sums.push(sum);
    }
    Ok(OrbitCountReport { counts, burnside_sums, traces, recurrence: poly_lcm(&polys)?, group_order: order })
}

fn act_cycle(a: &PermutationAction, g: usize, c: &CycleWord) -> CycleWord {
    CycleWord::new(c.edges().iter().map(|e| a.act_edge(g, e)).collect()).expect("actions map cycles to cycles")
}

/// Orbits of periodic points counted directly: all closed paths of length
/// `n` under the edgewise action.
pub fn brute_orbit_counts(a: &PermutationAction, m: usize, cap: usize) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(m);
    for n in 1..=m {
        let cycles = enumerate_cycles(a.presentation(), n, cap)?;
        let orbits: BTreeSet<CycleWord> = cycles
            .iter()
            .map(|c| (0..a.group().order()).map(|g| act_cycle(a, g, c)).min().expect("nonempty group"))
            .collect();
        out.push(BigInt::from(orbits.len()));
    }
    Ok(out)
}

fn min_image(a: &PermutationAction, x: &[usize]) -> Vec<usize> {
    (0..a.group().order())
        .map(|h| x.iter().map(|&i| a.act_state(h, i)).collect::<Vec<_>>())
        .min()
        .expect("nonempty group")
}

/// Number of points `[x]` of the quotient with `σⁿ[x] = [x]`, for
/// `n = 1..=m`. Every such `x` solves `σⁿx = gx` for some `g`, so it is
/// determined by its first `n` states `u` (a path with `u_{n-1} -> g·u_0`)
/// and has period dividing `n·exponent(G)`.
pub fn quotient_period_counts(a: &PermutationAction, m: usize, cap: usize) -> Result<Vec<BigInt>> {
    let p = a.presentation();
    p.require_zero_one()?;
    let e = a.group().exponent();
    let mut out = Vec::with_capacity(m);
    for n in 1..=m {
        let mut points: BTreeSet<Vec<usize>> = BTreeSet::new();
        let paths = state_paths(p, n, cap)?;
        for g in 0..a.group().order() {
            for u in &paths {
                if p.multiplicity(u[n - 1], a.act_state(g, u[0])) == 0 {
                    continue;
                }
                let mut x = Vec::with_capacity(n * e);
                let mut block = u.clone();
                for _ in 0..e {
                    x.extend_from_slice(&block);
                    block = block.iter().map(|&i| a.act_state(g, i)).collect();
                }
                points.insert(x);
            }
        }
        let orbits: BTreeSet<Vec<usize>> = points.iter().map(|x| min_image(a, x)).collect();
        out.push(BigInt::from(orbits.len()));
    }
    Ok(out)
}

/// The same counts by filtering every periodic point of period dividing
/// `n·exponent(G)`. Exponential in `n·exponent(G)`; a reference for small
/// cases.
pub fn quotient_period_counts_by_filter(a: &PermutationAction, m: usize, cap: usize) -> Result<Vec<BigInt>> {
    let p = a.presentation();
    p.require_zero_one()?;
    let e = a.group().exponent();
    let mut out = Vec::with_capacity(m);
    for n in 1..=m {
        let len = n * e;
        let mut orbits = BTreeSet::new();
        for c in enumerate_cycles(p, len, cap)? {
            let x = c.states();
            let mut shifted = x.clone();
            shifted.rotate_left(n % len);
            let invariant =
                (0..a.group().order()).any(|g| x.iter().map(|&i| a.act_state(g, i)).eq(shifted.iter().copied()));
            if invariant {
                orbits.insert(min_image(a, &x));
            }
        }
        out.push(BigInt::from(orbits.len()));
    }
    Ok(out)
}

fn state_paths(p: &SftPresentation, n: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut paths: Vec<Vec<usize>> = (0..p.dim()).map(|i| vec![i]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for path in &paths {
            for j in p.followers(*path.last().expect("nonempty")) {
                if next.len() == cap {
                    return Err(Error::CapExceeded { cap });
                }
                let mut q = path.clone();
                q.push(j);
                next.push(q);
            }
        }
        paths = next;
    }
    Ok(paths)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ConstantToOne,
    Nonexpansive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClassification {
    pub verdict: Verdict,
    /// Elements fixing every state.
    pub kernel: Subgroup,
    /// For a nonexpansive verdict: an element outside the kernel and a cycle
    /// through states it fixes.
    pub witness: Option<(usize, CycleWord)>,
}

/// The quotient map is constant-to-one unless some element outside the
/// kernel fixes every state of some cycle; then the quotient is nonexpansive.
pub fn classify_quotient(a: &PermutationAction) -> Result<QuotientClassification> {
    if !is_irreducible(a.presentation())? {
        return Err(Error::NotIrreducible);
    }
    let kernel = orbit_structure(a).kernel;
    for g in 0..a.group().order() {
        if kernel.contains(g) {
            continue;
        }
        if let Some(c) = cycle_within(a.presentation(), &fixed_states(a, g)) {
            return Ok(QuotientClassification { verdict: Verdict::Nonexpansive, kernel, witness: Some((g, c)) });
        }
    }
    Ok(QuotientClassification { verdict: Verdict::ConstantToOne, kernel, witness: None })
}

/// A shortest cycle through the least possible state, staying inside `states`.
fn cycle_within(p: &SftPresentation, states: &[usize]) -> Option<CycleWord> {
    let allowed: BTreeSet<usize> = states.iter().copied().collect();
    for &s in states {
        let mut parent = vec![usize::MAX; p.dim()];
        let mut queue = std::collections::VecDeque::new();
        for t in p.followers(s) {
            if allowed.contains(&t) && parent[t] == usize::MAX {
                parent[t] = s;
                queue.push_back(t);
            }
        }
        while let Some(i) = queue.pop_front() {
            if i == s {
                let mut walk = vec![s];
                let mut k = parent[s];
                while k != s {
                    walk.push(k);
                    k = parent[k];
                }
                walk.push(s);
                walk.reverse();
                walk.pop();
                return CycleWord::from_states(&walk);
            }
            for t in p.followers(i) {
                if allowed.contains(&t) && parent[t] == usize::MAX {
                    parent[t] = i;
                    queue.push_back(t);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerScan {
    /// Cycles of every length `1..=lengths_scanned` were examined.
    pub lengths_scanned: usize,
    /// A cycle whose stabilizer is larger than the kernel, if one was seen.
    pub witness: Option<CycleWord>,
}

/// Compares the stabilizer of every cycle of length up to `max_len` with the
/// kernel. Lengths whose enumeration would exceed `cap` are not scanned; the
/// report says how far the scan got.
pub fn stabilizer_scan(a: &PermutationAction, max_len: usize, cap: usize) -> Result<StabilizerScan> {
    let kernel = orbit_structure(a).kernel;
    let mut lengths_scanned = 0;
    for n in 1..=max_len {
        let cycles = match enumerate_cycles(a.presentation(), n, cap) {
            Ok(c) => c,
            Err(Error::CapExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        for c in cycles {
            if word_stabilizer(a, &c)? != kernel {
                return Ok(StabilizerScan { lengths_scanned: n, witness: Some(c) });
            }
        }
        lengths_scanned = n;
    }
    Ok(StabilizerScan { lengths_scanned, witness: None })
}

/// A point `... left left middle right right ...` whose middle block starts
/// at coordinate `start`. `left` repeats to the left of the middle block
/// (its last state sits at `start - 1`), `right` to the right of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodicPoint {
    pub left: Vec<usize>,
    pub middle: Vec<usize>,
    pub right: Vec<usize>,
    pub start: i64,
}

impl EventuallyPeriodicPoint {
    fn end(&self) -> i64 {
        self.start + self.middle.len() as i64
    }

    pub fn at(&self, t: i64) -> usize {
        if t < self.start {
            let q = self.left.len() as i64;
            self.left[(t - self.start).rem_euclid(q) as usize]
        } else if t < self.end() {
            self.middle[(t - self.start) as usize]
        } else {
            let q = self.right.len() as i64;
            self.right[(t - self.end()).rem_euclid(q) as usize]
        }
    }

    pub fn window(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|t| self.at(t)).collect()
    }

    /// Equality of two points after applying `f` to every state of `self`.
    pub fn maps_onto(&self, other: &EventuallyPeriodicPoint, f: impl Fn(usize) -> usize) -> bool {
        let period = [self.left.len(), self.right.len(), other.left.len(), other.right.len()]
            .iter()
            .fold(1usize, |l, &x| l.lcm(&x)) as i64;
        let lo = self.start.min(other.start) - period;
        let hi = self.end().max(other.end()) + period;
        (lo..hi).all(|t| f(self.at(t)) == other.at(t))
    }
}

/// The data of a nonexpansivity witness: cycles `u` (through states fixed
/// by `g`) and `v` (through every state), and connecting words `w` from `u`
/// to `v` and `w′` from `v` to `u`. All are state sequences; `w` starts at
/// `u[0]` and stops just before `v[0]`, `w′` starts at `v[0]` and stops just
/// before `u[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonexpansiveWitness {
    pub g: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub w_prime: Vec<usize>,
}

impl NonexpansiveWitness {
    /// `x = v^∞ w′ . u^{2m+1} w v^∞` and `y = v^∞ w′ . u^{2m+1} (gw) (gv)^∞`.
    pub fn points(&self, a: &PermutationAction, m: usize) -> (EventuallyPeriodicPoint, EventuallyPeriodicPoint) {
        let gx = |word: &[usize]| word.iter().map(|&i| a.act_state(self.g, i)).collect::<Vec<_>>();
        let mut core = self.w_prime.clone();
        for _ in 0..2 * m + 1 {
            core.extend_from_slice(&self.u);
        }
        let start = -(self.w_prime.len() as i64);
        let mut mx = core.clone();
        mx.extend_from_slice(&self.w);
        let mut my = core;
        my.extend(gx(&self.w));
        let x = EventuallyPeriodicPoint { left: self.v.clone(), middle: mx, right: self.v.clone(), start };
        let y = EventuallyPeriodicPoint { left: self.v.clone(), middle: my, right: gx(&self.v), start };
        (x, y)
    }

    /// Inclusive coordinate range `-|w′| - m ..= (2m+1)|u| + |w| + m`.
    pub fn window(&self, m: usize) -> (i64, i64) {
        let m = m as i64;
        let lo = -(self.w_prime.len() as i64) - m;
        let hi = (2 * m + 1) * self.u.len() as i64 + self.w.len() as i64 + m;
        (lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessWindows {
    pub m: usize,
    pub lo: i64,
    pub hi: i64,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Builds the witness for a nonexpansive verdict and checks, for the given
/// `m`, that `x^(m)` and `y^(m)` lie in distinct orbits while at every
/// offset of the window their central `(2m+1)`-blocks agree up to the action.
pub fn nonexpansive_witness(
    a: &PermutationAction,
    c: &QuotientClassification,
    m: usize,
) -> Result<(NonexpansiveWitness, WitnessWindows)> {
    let (g, cycle) = match (&c.verdict, &c.witness) {
        (Verdict::Nonexpansive, Some(w)) => w.clone(),
        _ => return Err(Error::ConstantToOne),
    };
    let p = a.presentation();
    if !is_irreducible(p)? {
        return Err(Error::NotIrreducible);
    }
    let u = cycle.states();
    let mut v = Vec::new();
    for s in 0..p.dim() {
        let path = p.shortest_path(s, (s + 1) % p.dim()).ok_or(Error::NotIrreducible)?;
        v.extend_from_slice(&path[..path.len() - 1]);
    }
    if v.is_empty() {
        // A single state: its loop is the all-states cycle.
        v.push(0);
    }
    let mut w = p.shortest_path(u[0], v[0]).ok_or(Error::NotIrreducible)?;
    w.pop();
    let mut w_prime = p.shortest_path(v[0], u[0]).ok_or(Error::NotIrreducible)?;
    w_prime.pop();
    let witness = NonexpansiveWitness { g, u, v, w, w_prime };
    let windows = check_witness(a, &witness, m)?;
    Ok((witness, windows))
}

/// The postconditions of [`nonexpansive_witness`] for one `m`.
pub fn check_witness(a: &PermutationAction, wt: &NonexpansiveWitness, m: usize) -> Result<WitnessWindows> {
    let p = a.presentation();
    let fail = |what: &str| Err(Error::ConsequenceFailed(format!("witness check failed: {what}")));
    let u_cycle = CycleWord::from_states(&wt.u).ok_or(Error::NotACycle)?;
    let v_cycle = CycleWord::from_states(&wt.v).ok_or(Error::NotACycle)?;
    let su = word_stabilizer(a, &u_cycle)?;
    let sv = word_stabilizer(a, &v_cycle)?;
    if !su.contains(wt.g) || sv.contains(wt.g) {
        return fail("g must stabilize u but not v");
    }
    let (x, y) = wt.points(a, m);
    let (lo, hi) = wt.window(m);
    let mm = m as i64;
    let is_path = |pt: &EventuallyPeriodicPoint| {
        (lo - mm - 1..=hi + mm).all(|t| p.has_edge(&Edge::simple(pt.at(t), pt.at(t + 1))))
    };
    if !is_path(&x) || !is_path(&y) {
        return fail("points are not paths of the presentation");
    }
    for t in lo..=hi {
        let bx = x.window(t - mm, t + mm);
        let by = y.window(t - mm, t + mm);
        let agrees = (0..a.group().order()).any(|h| bx.iter().map(|&i| a.act_state(h, i)).eq(by.iter().copied()));
        if !agrees {
            return fail(&format!("blocks at offset {t} are not related by the action"));
        }
    }
    if (0..a.group().order()).any(|h| x.maps_onto(&y, |i| a.act_state(h, i))) {
        return fail("x and y lie in the same orbit");
    }
    Ok(WitnessWindows { m, lo, hi, x: x.window(lo, hi), y: y.window(lo, hi) })
}

/// For a constant-to-one verdict, checks that both reduced shifts have the
/// same zeta function and Bowen-Franks group, and that their periodic point
/// counts match the quotient's for `n <= max_n`.
pub fn constant_to_one_check(a: &PermutationAction, max_n: usize, cap: usize) -> Result<bool> {
    if classify_quotient(a)?.verdict == Verdict::Nonexpansive {
        return Err(Error::Nonexpansive);
    }
    let right = right_reduce(a)?.matrix;
    let left = left_reduce(a)?.matrix;
    if char_poly_reciprocal(&right) != char_poly_reciprocal(&left) || bowen_franks(&right) != bowen_franks(&left) {
        return Ok(false);
    }
    let counts = quotient_period_counts(a, max_n, cap)?;
    Ok(counts.iter().enumerate().all(|(k, c)| {
        let n = k as u64 + 1;
        *c == trace_of_power(&right, n) && *c == trace_of_power(&left, n)
    }))
}
