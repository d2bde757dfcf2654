//! Dispatch of jobs to the library.

use num_bigint::BigInt;
use serde_json::{Map, Value};

use sftgroup::action::{orbit_structure, Subgroup};
use sftgroup::matrix::{trace_of_power, RectMatrix};
use sftgroup::poly::char_poly_reciprocal;
use sftgroup::quotient::{
    burnside_counts, check_witness, classify_quotient, nonexpansive_witness, quotient_period_counts, Verdict,
    DEFAULT_CAP,
};
use sftgroup::reduce::{left_reduce, right_reduce, ReducedShift};
use sftgroup::repshift::{build_repshift, fibered_preset, flat_bundle_counts, tqft_matrix, RepShift};
use sftgroup::snf::{bowen_franks, AbelianGroupInvariants};
use sftgroup::sse::{
    action_higher_block, in_split, out_split, transport_splits, Direction, ElementarySse, SplitData, SseChain,
};
use sftgroup::{
    group_from_generators, validate_action, IntMatrix, IntPolynomial, Permutation, PermutationAction, SftPresentation,
};

use crate::error::CliError;
use crate::job::{big, matrix_value, Command, JobSpec, SplitDirection};
use crate::report::Report;

pub const DEFAULT_MAX_N: usize = 6;
pub const DEFAULT_GROUP_LIMIT: usize = 1 << 16;
pub const DEFAULT_HOM_LIMIT: usize = 1 << 20;

pub fn run_job(job: &JobSpec) -> Result<Report, CliError> {
    let mut r = Map::new();
    match job.command {
        Command::Reduce => reduce(job, &mut r)?,
        Command::Invariants => invariants(job, &mut r)?,
        Command::Classify => classify(job, &mut r)?,
        Command::Witness => witness(job, &mut r)?,
        Command::Burnside => burnside(job, &mut r)?,
        Command::QuotientCounts => quotient_counts(job, &mut r)?,
        Command::VerifySse => verify_sse(job, &mut r)?,
        Command::Transport => transport(job, &mut r)?,
        Command::Split => split(job, &mut r)?,
        Command::Repshift => repshift(job, &mut r)?,
        Command::Tqft => tqft(job, &mut r)?,
        Command::BundleCounts => bundle_counts(job, &mut r)?,
    }
    Ok(Report::new(job.command.as_str(), job.to_value(), r))
}

fn max_n(job: &JobSpec) -> usize {
    job.max_n.unwrap_or(DEFAULT_MAX_N)
}

fn cap(job: &JobSpec) -> usize {
    job.cap.unwrap_or(DEFAULT_CAP)
}

fn matrix_of(job: &JobSpec) -> Result<IntMatrix, CliError> {
    let rows = job.matrix.clone().ok_or_else(|| CliError::Input("matrix: required".into()))?;
    let m = IntMatrix::new(rows)?;
    Ok(match &job.labels {
        Some(l) => m.with_labels(l.clone())?,
        None => m,
    })
}

/// The action and the group index of each listed generator.
fn action_of(job: &JobSpec) -> Result<(PermutationAction, Vec<usize>), CliError> {
    let p = SftPresentation::new(matrix_of(job)?)?;
    let n = p.dim();
    let gens = job.generators.iter().map(|g| Permutation::parse_cycles(g, n)).collect::<sftgroup::Result<Vec<_>>>()?;
    let group = group_from_generators(n, &gens, job.limit.unwrap_or(DEFAULT_GROUP_LIMIT))?;
    let idx = gens.iter().map(|g| group.index_of(g).expect("generator lies in its group")).collect();
    Ok((validate_action(&p, &group)?, idx))
}

fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(big).collect())
}

fn nums(xs: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(xs.into_iter().map(Value::from).collect())
}

fn one_based(xs: &[usize]) -> Value {
    nums(xs.iter().map(|x| x + 1))
}

fn int_matrix(m: &IntMatrix) -> Value {
    matrix_value(&m.rows())
}

fn rect(m: &RectMatrix) -> Value {
    matrix_value(&m.rows())
}

fn strings(xs: impl IntoIterator<Item = String>) -> Value {
    Value::Array(xs.into_iter().map(Value::String).collect())
}

fn abelian(g: &AbelianGroupInvariants) -> Value {
    let mut o = Map::new();
    o.insert("invariant_factors".into(), ints(&g.torsion));
    o.insert("free_rank".into(), g.free_rank.into());
    Value::Object(o)
}

fn poly(p: &IntPolynomial) -> Value {
    let mut o = Map::new();
    o.insert("coefficients".into(), ints(p.coefficients()));
    o.insert("text".into(), p.to_string().into());
    Value::Object(o)
}

fn traces(m: &IntMatrix, n: usize) -> Vec<BigInt> {
    (1..=n as u64).map(|k| trace_of_power(m, k)).collect()
}

/// Zeta polynomial `det(I - tA)`, Bowen-Franks group and traces.
fn shift_invariants(m: &IntMatrix, n: usize) -> Value {
    let mut o = Map::new();
    o.insert("zeta_polynomial".into(), poly(&char_poly_reciprocal(m)));
    o.insert("bowen_franks".into(), abelian(&bowen_franks(m)));
    if n > 0 {
        o.insert("traces".into(), ints(&traces(m, n)));
    }
    Value::Object(o)
}

fn orbit_labels(m: &IntMatrix) -> Vec<String> {
    match m.labels() {
        Some(l) => l.to_vec(),
        None => (1..=m.dim()).map(|k| format!("G{k}")).collect(),
    }
}

fn reduced(r: &ReducedShift) -> Value {
    let mut o = Map::new();
    o.insert("matrix".into(), int_matrix(&r.matrix));
    o.insert("labels".into(), strings(orbit_labels(&r.matrix)));
    o.insert("orbits".into(), Value::Array(r.orbits.iter().map(|x| one_based(x)).collect()));
    Value::Object(o)
}

fn elements(a: &PermutationAction, s: &Subgroup) -> Value {
    strings(s.elements().iter().map(|&g| a.group().element(g).to_cycle_string()))
}

fn reduce(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, _) = action_of(job)?;
    r.insert("group_order".into(), a.group().order().into());
    r.insert("right".into(), reduced(&right_reduce(&a)?));
    r.insert("left".into(), reduced(&left_reduce(&a)?));
    Ok(())
}

fn invariants(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let n = max_n(job);
    let m = matrix_of(job)?;
    r.insert("shift".into(), shift_invariants(&m, n));
    if !job.generators.is_empty() {
        let (a, _) = action_of(job)?;
        r.insert("right".into(), shift_invariants(&right_reduce(&a)?.matrix, n));
        r.insert("left".into(), shift_invariants(&left_reduce(&a)?.matrix, n));
    }
    Ok(())
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::ConstantToOne => "constant-to-one",
        Verdict::Nonexpansive => "nonexpansive",
    }
}

fn classify(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, _) = action_of(job)?;
    let c = classify_quotient(&a)?;
    r.insert("verdict".into(), verdict_text(c.verdict).into());
    r.insert("kernel".into(), elements(&a, &c.kernel));
    if let Some((g, cycle)) = &c.witness {
        let mut w = Map::new();
        w.insert("element".into(), a.group().element(*g).to_cycle_string().into());
        w.insert("cycle".into(), one_based(&cycle.states()));
        r.insert("witness".into(), Value::Object(w));
    }
    let right = right_reduce(&a)?.matrix;
    let left = left_reduce(&a)?.matrix;
    r.insert("right_matrix".into(), int_matrix(&right));
    r.insert("left_matrix".into(), int_matrix(&left));
    Ok(())
}

fn witness(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, _) = action_of(job)?;
    let c = classify_quotient(&a)?;
    let m = job.m.unwrap_or(1).max(1);
    let (w, _) = nonexpansive_witness(&a, &c, 1)?;
    r.insert("element".into(), a.group().element(w.g).to_cycle_string().into());
    for (k, word) in [("u", &w.u), ("v", &w.v), ("w", &w.w), ("w_prime", &w.w_prime)] {
        r.insert(k.into(), one_based(word));
    }
    let mut windows = Vec::new();
    for mm in 1..=m {
        let win = check_witness(&a, &w, mm)?;
        let mut o = Map::new();
        o.insert("m".into(), mm.into());
        o.insert("lo".into(), win.lo.into());
        o.insert("hi".into(), win.hi.into());
        o.insert("x".into(), one_based(&win.x));
        o.insert("y".into(), one_based(&win.y));
        windows.push(Value::Object(o));
    }
    r.insert("windows".into(), Value::Array(windows));
    r.insert("orbits_distinct".into(), true.into());
    Ok(())
}

fn burnside(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, _) = action_of(job)?;
    let b = burnside_counts(&a, max_n(job))?;
    r.insert("group_order".into(), b.group_order.into());
    r.insert("counts".into(), ints(&b.counts));
    r.insert("burnside_sums".into(), ints(&b.burnside_sums));
    r.insert("recurrence".into(), poly(&b.recurrence));
    r.insert("recurrence_holds".into(), b.residuals().iter().all(|x| *x == BigInt::from(0)).into());
    Ok(())
}

fn quotient_counts(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, _) = action_of(job)?;
    let n = max_n(job);
    r.insert("counts".into(), ints(&quotient_period_counts(&a, n, cap(job))?));
    r.insert("right_traces".into(), ints(&traces(&right_reduce(&a)?.matrix, n)));
    r.insert("left_traces".into(), ints(&traces(&left_reduce(&a)?.matrix, n)));
    Ok(())
}

fn sse_value(e: &ElementarySse) -> Value {
    let mut o = Map::new();
    o.insert("a".into(), int_matrix(&e.a));
    o.insert("b".into(), int_matrix(&e.b));
    o.insert("r".into(), rect(&e.r));
    o.insert("s".into(), rect(&e.s));
    Value::Object(o)
}

fn chain_ends(chain: &SseChain, r: &mut Map<String, Value>) {
    if let (Some(x), Some(y)) = (chain.source(), chain.target()) {
        let (zx, zy) = (char_poly_reciprocal(x), char_poly_reciprocal(y));
        let (bx, by) = (bowen_franks(x), bowen_franks(y));
        r.insert("invariants_agree".into(), (zx == zy && bx == by).into());
        r.insert("source".into(), shift_invariants(x, 0));
        r.insert("target".into(), shift_invariants(y, 0));
    }
}

fn verify_sse(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let steps = job.certificate.as_ref().ok_or_else(|| CliError::Input("certificate: required".into()))?;
    let mut built = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        let e = ElementarySse {
            a: IntMatrix::new(s.a.clone())?,
            b: IntMatrix::new(s.b.clone())?,
            r: RectMatrix::new(s.r.clone())?,
            s: RectMatrix::new(s.s.clone())?,
        };
        if !sftgroup::sse::verify_elementary_sse(&e)? {
            return Err(CliError::Precondition(format!("certificate.steps[{k}]: RS = A and SR = B do not both hold")));
        }
        built.push(e);
    }
    let chain = SseChain::new(built)?;
    if !chain.verify()? {
        return Err(CliError::Precondition("certificate: consecutive steps do not chain".into()));
    }
    r.insert("valid".into(), true.into());
    r.insert("steps".into(), chain.len().into());
    chain_ends(&chain, r);
    Ok(())
}

fn split_data(spec: &crate::job::SplitSpec) -> SplitData {
    SplitData {
        direction: match spec.direction {
            SplitDirection::Out => Direction::Out,
            SplitDirection::In => Direction::In,
        },
        partitions: spec
            .partitions
            .iter()
            .map(|p| p.iter().map(|b| b.iter().map(|x| x - 1).collect()).collect())
            .collect(),
    }
}

/// Applies the job's splittings in order, each to the previous result.
fn apply_splits(job: &JobSpec, a: &PermutationAction) -> Result<Vec<sftgroup::sse::SplitResult>, CliError> {
    let mut current = a.clone();
    let mut out = Vec::new();
    for spec in &job.splits {
        let d = split_data(spec);
        let s = match d.direction {
            Direction::Out => out_split(&current, &d)?,
            Direction::In => in_split(&current, &d)?,
        };
        current = s.action.clone();
        out.push(s);
    }
    Ok(out)
}

fn split(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, gens) = action_of(job)?;
    let splits = apply_splits(job, &a)?;
    let last = splits.last().expect("at least one split");
    r.insert("matrix".into(), int_matrix(last.action.matrix()));
    r.insert("generators".into(), strings(gens.iter().map(|&g| last.action.group().element(g).to_cycle_string())));
    let steps: Vec<Value> = splits
        .iter()
        .map(|s| {
            let mut o = Map::new();
            o.insert("parent".into(), one_based(&s.parent));
            o.insert("certificate".into(), sse_value(&s.certificate));
            Value::Object(o)
        })
        .collect();
    r.insert("steps".into(), Value::Array(steps));
    let chain = SseChain::new(splits.iter().map(|s| s.certificate.clone()).collect())?;
    r.insert("verified".into(), chain.verify()?.into());
    Ok(())
}

fn transport(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let (a, _) = action_of(job)?;
    let splits = match job.blocks {
        Some(n) => action_higher_block(&a, n)?.0,
        None => apply_splits(job, &a)?,
    };
    let chain = transport_splits(&a, &splits)?;
    let verified = chain.verify()?;
    if !verified {
        return Err(CliError::Precondition("transported chain does not verify".into()));
    }
    r.insert("verified".into(), verified.into());
    r.insert("chain".into(), Value::Array(chain.steps().iter().map(sse_value).collect()));
    chain_ends(&chain, r);
    Ok(())
}

fn repshift_of(job: &JobSpec) -> Result<RepShift, CliError> {
    let g = job.group.as_ref().ok_or_else(|| CliError::Input("group: required".into()))?.build()?;
    let hnn = match (&job.preset, &job.hnn) {
        (Some(p), _) => fibered_preset(p)?.hnn,
        (None, Some(h)) => h.build()?,
        (None, None) => return Err(CliError::Input("preset: required".into())),
    };
    Ok(build_repshift(&hnn, &g, job.limit.unwrap_or(DEFAULT_HOM_LIMIT))?)
}

fn repshift(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let rs = repshift_of(job)?;
    r.insert("group_order".into(), rs.group.order().into());
    r.insert("states".into(), rs.states.len().into());
    r.insert("edges".into(), rs.edges.len().into());
    r.insert("edge_level".into(), rs.edge_level.into());
    let m = rs.presentation.matrix();
    r.insert("labels".into(), strings(orbit_labels(m)));
    r.insert("matrix".into(), int_matrix(m));
    r.insert("conjugation_orbits".into(), orbit_structure(&rs.action).orbits.len().into());
    if let Some(p) = &job.preset {
        let f = fibered_preset(p)?;
        r.insert("alexander".into(), poly(&f.alexander));
        r.insert("alexander_check".into(), f.self_check().into());
    }
    Ok(())
}

fn tqft(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let rs = repshift_of(job)?;
    let t = tqft_matrix(&rs)?;
    let m = rs.presentation.matrix();
    let names = orbit_labels(m);
    r.insert("matrix".into(), int_matrix(t.matrix()));
    r.insert("labels".into(), strings(orbit_labels(t.matrix())));
    r.insert(
        "orbits".into(),
        Value::Array(t.reduced.orbits.iter().map(|o| strings(o.iter().map(|&s| names[s].clone()))).collect()),
    );
    Ok(())
}

fn bundle_counts(job: &JobSpec, r: &mut Map<String, Value>) -> Result<(), CliError> {
    let rs = repshift_of(job)?;
    let b = flat_bundle_counts(&rs, max_n(job))?;
    r.insert("counts".into(), ints(&b.counts));
    r.insert("recurrence".into(), poly(&b.recurrence));
    r.insert("recurrence_holds".into(), b.residuals().iter().all(|x| *x == BigInt::from(0)).into());
    Ok(())
}
