//! Job documents: parsing with path diagnostics and canonical re-emission.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use sftgroup::repshift::{FiniteGroupTable, GroupWord};
use sftgroup::Permutation;

use crate::error::{input_err, CliError};

pub const JOB_FORMAT: &str = "sftgroup-job/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Reduce,
    Invariants,
    Classify,
    Witness,
    Burnside,
    QuotientCounts,
    VerifySse,
    Transport,
    Split,
    Repshift,
    Tqft,
    BundleCounts,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Reduce,
        Command::Invariants,
        Command::Classify,
        Command::Witness,
        Command::Burnside,
        Command::QuotientCounts,
        Command::VerifySse,
        Command::Transport,
        Command::Split,
        Command::Repshift,
        Command::Tqft,
        Command::BundleCounts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Reduce => "reduce",
            Command::Invariants => "invariants",
            Command::Classify => "classify",
            Command::Witness => "witness",
            Command::Burnside => "burnside",
            Command::QuotientCounts => "quotient-counts",
            Command::VerifySse => "verify-sse",
            Command::Transport => "transport",
            Command::Split => "split",
            Command::Repshift => "repshift",
            Command::Tqft => "tqft",
            Command::BundleCounts => "bundle-counts",
        }
    }

    fn needs_action(self) -> bool {
        !matches!(self, Command::VerifySse | Command::Repshift | Command::Tqft | Command::BundleCounts)
    }

    fn needs_hnn(self) -> bool {
        matches!(self, Command::Repshift | Command::Tqft | Command::BundleCounts)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| input_err("command", format!("unknown command {s:?}")))
    }
}

/// An abstract finite group for representation shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Zn`, `Sn`, `Dn` or `Q8`.
    Named(String),
    Table {
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    /// Generated by permutations in 1-based cycle notation.
    Permutations {
        degree: usize,
        generators: Vec<String>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroupTable, CliError> {
        Ok(match self {
            GroupSpec::Named(n) => FiniteGroupTable::by_name(n)?,
            GroupSpec::Table { names, table } => FiniteGroupTable::from_table(names.clone(), table.clone())?,
            GroupSpec::Permutations { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|g| Permutation::parse_cycles(g, *degree))
                    .collect::<sftgroup::Result<Vec<_>>>()?;
                let g = sftgroup::group_from_generators(*degree, &gens, 1 << 16)?;
                FiniteGroupTable::from_permutations(g.elements())
            }
        })
    }
}

/// HNN data with words in the letters `a, b, c, ...` (upper case inverts).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HnnSpec {
    pub b_gens: usize,
    pub b_relators: Vec<String>,
    pub u_gens: Vec<String>,
    pub u_relators: Vec<String>,
    pub v_gens: Vec<String>,
    pub v_relators: Vec<String>,
    pub phi_images: Vec<String>,
}

impl HnnSpec {
    pub fn build(&self) -> Result<sftgroup::repshift::HnnData, CliError> {
        let words = |ws: &[String]| ws.iter().map(|w| GroupWord::parse(w)).collect::<sftgroup::Result<Vec<_>>>();
        Ok(sftgroup::repshift::HnnData {
            b_gens: self.b_gens,
            b_relators: words(&self.b_relators)?,
            u_gens: words(&self.u_gens)?,
            u_relators: words(&self.u_relators)?,
            v_gens: words(&self.v_gens)?,
            v_relators: words(&self.v_relators)?,
            phi_images: words(&self.phi_images)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SseStepSpec {
    pub a: Vec<Vec<BigInt>>,
    pub b: Vec<Vec<BigInt>>,
    pub r: Vec<Vec<BigInt>>,
    pub s: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitDirection {
    Out,
    In,
}

/// One state splitting: for each state (1-based, in order) a partition of
/// its followers (`out`) or predecessors (`in`) into blocks of 1-based
/// states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub direction: SplitDirection,
    pub partitions: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub matrix: Option<Vec<Vec<BigInt>>>,
    pub labels: Option<Vec<String>>,
    /// State permutations in canonical 1-based cycle notation.
    pub generators: Vec<String>,
    pub group: Option<GroupSpec>,
    pub preset: Option<String>,
    pub hnn: Option<HnnSpec>,
    pub certificate: Option<Vec<SseStepSpec>>,
    pub splits: Vec<SplitSpec>,
    pub blocks: Option<usize>,
    pub max_n: Option<usize>,
    pub m: Option<usize>,
    pub cap: Option<usize>,
    pub limit: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            matrix: None,
            labels: None,
            generators: Vec::new(),
            group: None,
            preset: None,
            hnn: None,
            certificate: None,
            splits: Vec::new(),
            blocks: None,
            max_n: None,
            m: None,
            cap: None,
            limit: None,
        }
    }

    /// The canonical document for this job.
    pub fn to_value(&self) -> Value {
        let mut o = Map::new();
        o.insert("format".into(), JOB_FORMAT.into());
        o.insert("command".into(), self.command.as_str().into());
        if let Some(m) = &self.matrix {
            o.insert("matrix".into(), matrix_value(m));
        }
        if let Some(l) = &self.labels {
            o.insert("labels".into(), strings_value(l));
        }
        if !self.generators.is_empty() {
            o.insert("generators".into(), strings_value(&self.generators));
        }
        if let Some(g) = &self.group {
            let v = match g {
                GroupSpec::Named(n) => Value::String(n.clone()),
                GroupSpec::Table { names, table } => {
                    let mut t = Map::new();
                    t.insert("names".into(), strings_value(names));
                    t.insert(
                        "table".into(),
                        Value::Array(
                            table.iter().map(|r| Value::Array(r.iter().map(|&x| x.into()).collect())).collect(),
                        ),
                    );
                    Value::Object(t)
                }
                GroupSpec::Permutations { degree, generators } => {
                    let mut t = Map::new();
                    t.insert("degree".into(), (*degree).into());
                    t.insert("permutations".into(), strings_value(generators));
                    Value::Object(t)
                }
            };
            o.insert("group".into(), v);
        }
        if let Some(p) = &self.preset {
            o.insert("preset".into(), p.clone().into());
        }
        if let Some(h) = &self.hnn {
            let mut t = Map::new();
            t.insert("b_gens".into(), h.b_gens.into());
            for (k, ws) in [
                ("b_relators", &h.b_relators),
                ("u_gens", &h.u_gens),
                ("u_relators", &h.u_relators),
                ("v_gens", &h.v_gens),
                ("v_relators", &h.v_relators),
                ("phi_images", &h.phi_images),
            ] {
                t.insert(k.into(), strings_value(ws));
            }
            o.insert("hnn".into(), Value::Object(t));
        }
        if let Some(c) = &self.certificate {
            let steps = c
                .iter()
                .map(|s| {
                    let mut t = Map::new();
                    for (k, m) in [("a", &s.a), ("b", &s.b), ("r", &s.r), ("s", &s.s)] {
                        t.insert(k.into(), matrix_value(m));
                    }
                    Value::Object(t)
                })
                .collect();
            let mut t = Map::new();
            t.insert("steps".into(), Value::Array(steps));
            o.insert("certificate".into(), Value::Object(t));
        }
        if !self.splits.is_empty() {
            let splits = self
                .splits
                .iter()
                .map(|s| {
                    let mut t = Map::new();
                    let d = match s.direction {
                        SplitDirection::Out => "out",
                        SplitDirection::In => "in",
                    };
                    t.insert("direction".into(), d.into());
                    t.insert(
                        "partitions".into(),
                        Value::Array(
                            s.partitions
                                .iter()
                                .map(|p| {
                                    Value::Array(
                                        p.iter().map(|b| Value::Array(b.iter().map(|&x| x.into()).collect())).collect(),
                                    )
                                })
                                .collect(),
                        ),
                    );
                    Value::Object(t)
                })
                .collect();
            o.insert("splits".into(), Value::Array(splits));
        }
        for (k, v) in
            [("blocks", self.blocks), ("max_n", self.max_n), ("m", self.m), ("cap", self.cap), ("limit", self.limit)]
        {
            if let Some(v) = v {
                o.insert(k.into(), v.into());
            }
        }
        Value::Object(o)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("job serializes");
        s.push('\n');
        s
    }
}

pub(crate) fn big(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer text is a JSON number"))
}

pub(crate) fn matrix_value(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(big).collect())).collect())
}

fn strings_value(s: &[String]) -> Value {
    Value::Array(s.iter().map(|x| Value::String(x.clone())).collect())
}

/// Parses a job document.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    if text.trim().is_empty() {
        return Err(CliError::Input("missing command".into()));
    }
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))?;
    parse_job_value(&v)
}

/// Parses an already decoded job document.
pub fn parse_job_value(v: &Value) -> Result<JobSpec, CliError> {
    let o = v.as_object().ok_or_else(|| input_err("$", "expected an object"))?;
    const KEYS: [&str; 15] = [
        "format",
        "command",
        "matrix",
        "labels",
        "generators",
        "group",
        "preset",
        "hnn",
        "certificate",
        "splits",
        "blocks",
        "max_n",
        "m",
        "cap",
        "limit",
    ];
    if let Some(k) = o.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(input_err(k, "unknown field"));
    }
    if let Some(f) = o.get("format") {
        let f = as_str(f, "format")?;
        if f != JOB_FORMAT {
            return Err(input_err("format", format!("unsupported format {f:?}, expected {JOB_FORMAT:?}")));
        }
    }
    let command: Command = match o.get("command") {
        None => return Err(CliError::Input("missing command".into())),
        Some(c) => as_str(c, "command")?.parse()?,
    };
    let mut job = JobSpec::new(command);
    if let Some(m) = o.get("matrix") {
        let m = as_matrix(m, "matrix", true)?;
        if m.is_empty() {
            return Err(input_err("matrix", "must have at least one row"));
        }
        job.matrix = Some(m);
    }
    if let Some(l) = o.get("labels") {
        let l = as_strings(l, "labels")?;
        let n = job.matrix.as_ref().map_or(0, |m| m.len());
        if job.matrix.is_none() || l.len() != n {
            return Err(input_err("labels", format!("expected one label per matrix row ({n})")));
        }
        job.labels = Some(l);
    }
    if let Some(g) = o.get("generators") {
        let n = job.matrix.as_ref().map(|m| m.len()).ok_or_else(|| input_err("generators", "requires a matrix"))?;
        let gens = as_strings(g, "generators")?;
        for (k, g) in gens.iter().enumerate() {
            let p = Permutation::parse_cycles(g, n).map_err(|e| input_err(&format!("generators[{k}]"), e))?;
            job.generators.push(p.to_cycle_string());
        }
    }
    if let Some(g) = o.get("group") {
        job.group = Some(parse_group(g)?);
    }
    if let Some(p) = o.get("preset") {
        job.preset = Some(as_str(p, "preset")?.to_string());
    }
    if let Some(h) = o.get("hnn") {
        job.hnn = Some(parse_hnn(h)?);
    }
    if let Some(c) = o.get("certificate") {
        job.certificate = Some(parse_certificate(c)?);
    }
    if let Some(s) = o.get("splits") {
        let arr = s.as_array().ok_or_else(|| input_err("splits", "expected an array"))?;
        for (k, s) in arr.iter().enumerate() {
            job.splits.push(parse_split(s, &format!("splits[{k}]"))?);
        }
    }
    job.blocks = opt_usize(o, "blocks")?;
    job.max_n = opt_usize(o, "max_n")?;
    job.m = opt_usize(o, "m")?;
    job.cap = opt_usize(o, "cap")?;
    job.limit = opt_usize(o, "limit")?;
    check_required(&job)?;
    Ok(job)
}

fn check_required(job: &JobSpec) -> Result<(), CliError> {
    let c = job.command;
    if c.needs_action() && job.matrix.is_none() {
        return Err(input_err("matrix", format!("required by command {c}")));
    }
    if c == Command::VerifySse && job.certificate.is_none() {
        return Err(input_err("certificate", format!("required by command {c}")));
    }
    if c == Command::Split && job.splits.is_empty() {
        return Err(input_err("splits", format!("required by command {c}")));
    }
    if c == Command::Transport && job.splits.is_empty() == job.blocks.is_none() {
        return Err(input_err("splits", "transport needs exactly one of \"splits\" or \"blocks\""));
    }
    if let Some(b) = job.blocks {
        if b < 2 {
            return Err(input_err("blocks", "must be at least 2"));
        }
    }
    if c.needs_hnn() {
        if job.preset.is_some() == job.hnn.is_some() {
            return Err(input_err("preset", format!("command {c} needs exactly one of \"preset\" or \"hnn\"")));
        }
        if job.group.is_none() {
            return Err(input_err("group", format!("required by command {c}")));
        }
    }
    if let Some(p) = &job.preset {
        sftgroup::repshift::fibered_preset(p).map_err(|e| input_err("preset", e))?;
    }
    if let Some(g) = &job.group {
        g.build().map_err(|e| input_err("group", e))?;
    }
    Ok(())
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| input_err(path, "expected a string"))
}

fn as_strings(v: &Value, path: &str) -> Result<Vec<String>, CliError> {
    let arr = v.as_array().ok_or_else(|| input_err(path, "expected an array of strings"))?;
    arr.iter().enumerate().map(|(k, x)| as_str(x, &format!("{path}[{k}]")).map(str::to_string)).collect()
}

fn as_int(v: &Value, path: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| input_err(path, format!("{n} is not an integer")))
        }
        _ => Err(input_err(path, "expected an integer")),
    }
}

fn as_usize(v: &Value, path: &str) -> Result<usize, CliError> {
    let x = as_int(v, path)?;
    usize::try_from(&x).map_err(|_| input_err(path, format!("expected a nonnegative integer, found {x}")))
}

fn opt_usize(o: &Map<String, Value>, key: &str) -> Result<Option<usize>, CliError> {
    o.get(key).map(|v| as_usize(v, key)).transpose()
}

/// A rectangular array of integers; `nonnegative` rejects negative entries.
fn as_matrix(v: &Value, path: &str, nonnegative: bool) -> Result<Vec<Vec<BigInt>>, CliError> {
    let rows = v.as_array().ok_or_else(|| input_err(path, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let r = r.as_array().ok_or_else(|| input_err(&rp, "expected an array of integers"))?;
        let mut row = Vec::with_capacity(r.len());
        for (j, x) in r.iter().enumerate() {
            let ep = format!("{path}[{i}][{j}]");
            let x = as_int(x, &ep)?;
            if nonnegative && x < BigInt::from(0) {
                return Err(input_err(&ep, format!("negative entry {x}")));
            }
            row.push(x);
        }
        if let Some(first) = out.first().map(|f: &Vec<BigInt>| f.len()) {
            if row.len() != first {
                return Err(input_err(&rp, format!("row has {} entries, expected {first}", row.len())));
            }
        }
        out.push(row);
    }
    Ok(out)
}

fn parse_group(v: &Value) -> Result<GroupSpec, CliError> {
    if let Some(n) = v.as_str() {
        return Ok(GroupSpec::Named(n.to_string()));
    }
    let o = v.as_object().ok_or_else(|| input_err("group", "expected a name or an object"))?;
    if let Some(t) = o.get("table") {
        let table = as_matrix(t, "group.table", true)?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        usize::try_from(x).map_err(|_| input_err(&format!("group.table[{i}][{j}]"), "too large"))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        let names = match o.get("names") {
            Some(n) => as_strings(n, "group.names")?,
            None => (0..table.len()).map(|k| k.to_string()).collect(),
        };
        return Ok(GroupSpec::Table { names, table });
    }
    if let Some(p) = o.get("permutations") {
        let generators = as_strings(p, "group.permutations")?;
        let degree = o
            .get("degree")
            .map(|d| as_usize(d, "group.degree"))
            .transpose()?
            .ok_or_else(|| input_err("group.degree", "required with \"permutations\""))?;
        let mut canon = Vec::new();
        for (k, g) in generators.iter().enumerate() {
            let p =
                Permutation::parse_cycles(g, degree).map_err(|e| input_err(&format!("group.permutations[{k}]"), e))?;
            canon.push(p.to_cycle_string());
        }
        return Ok(GroupSpec::Permutations { degree, generators: canon });
    }
    Err(input_err("group", "expected \"table\" or \"permutations\""))
}

fn parse_hnn(v: &Value) -> Result<HnnSpec, CliError> {
    let o = v.as_object().ok_or_else(|| input_err("hnn", "expected an object"))?;
    let mut h = HnnSpec {
        b_gens: o
            .get("b_gens")
            .map(|x| as_usize(x, "hnn.b_gens"))
            .transpose()?
            .ok_or_else(|| input_err("hnn.b_gens", "required"))?,
        ..HnnSpec::default()
    };
    for (key, slot) in [
        ("b_relators", &mut h.b_relators),
        ("u_gens", &mut h.u_gens),
        ("u_relators", &mut h.u_relators),
        ("v_gens", &mut h.v_gens),
        ("v_relators", &mut h.v_relators),
        ("phi_images", &mut h.phi_images),
    ] {
        let path = format!("hnn.{key}");
        if let Some(ws) = o.get(key) {
            for (k, w) in as_strings(ws, &path)?.iter().enumerate() {
                let word = GroupWord::parse(w).map_err(|e| input_err(&format!("{path}[{k}]"), e))?;
                slot.push(word.to_string());
            }
        }
    }
    if let Some(k) = o.keys().find(|k| {
        !["b_gens", "b_relators", "u_gens", "u_relators", "v_gens", "v_relators", "phi_images"].contains(&k.as_str())
    }) {
        return Err(input_err(&format!("hnn.{k}"), "unknown field"));
    }
    h.build().and_then(|d| d.validate().map_err(CliError::from)).map_err(|e| input_err("hnn", e))?;
    Ok(h)
}

fn parse_certificate(v: &Value) -> Result<Vec<SseStepSpec>, CliError> {
    let steps = v
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| input_err("certificate.steps", "expected an array of steps"))?;
    let mut out = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        let p = format!("certificate.steps[{k}]");
        let get = |key: &str| -> Result<Vec<Vec<BigInt>>, CliError> {
            let path = format!("{p}.{key}");
            as_matrix(s.get(key).ok_or_else(|| input_err(&path, "required"))?, &path, true)
        };
        out.push(SseStepSpec { a: get("a")?, b: get("b")?, r: get("r")?, s: get("s")? });
    }
    Ok(out)
}

fn parse_split(v: &Value, path: &str) -> Result<SplitSpec, CliError> {
    let dp = format!("{path}.direction");
    let direction = match v.get("direction").map(|d| as_str(d, &dp)).transpose()? {
        Some("out") => SplitDirection::Out,
        Some("in") => SplitDirection::In,
        Some(d) => return Err(input_err(&dp, format!("expected \"out\" or \"in\", found {d:?}"))),
        None => return Err(input_err(&dp, "required")),
    };
    let pp = format!("{path}.partitions");
    let parts = v.get("partitions").and_then(Value::as_array).ok_or_else(|| input_err(&pp, "expected an array"))?;
    let mut partitions = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let ip = format!("{pp}[{i}]");
        let blocks = p.as_array().ok_or_else(|| input_err(&ip, "expected an array of blocks"))?;
        let mut out = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let bp = format!("{ip}[{b}]");
            let xs = block.as_array().ok_or_else(|| input_err(&bp, "expected an array of states"))?;
            let mut states = Vec::new();
            for (k, x) in xs.iter().enumerate() {
                let s = as_usize(x, &format!("{bp}[{k}]"))?;
                if s == 0 {
                    return Err(input_err(&format!("{bp}[{k}]"), "states are 1-based"));
                }
                states.push(s);
            }
            out.push(states);
        }
        partitions.push(out);
    }
    Ok(SplitSpec { direction, partitions })
}

#[cfg(test)]
mod tests {
    use super::*;

    const REDUCE: &str = r#"{"command": "reduce",
        "matrix": [[0,1,1,0,0,0],[1,0,0,1,0,0],[1,0,0,0,1,0],[0,1,0,0,0,1],[0,0,1,0,0,0],[0,0,0,1,0,0]],
        "generators": ["(1 2)(3 4 5 6)"]}"#;

    #[test]
    fn minimal_reduce_job() {
        let j = parse_job(REDUCE).unwrap();
        assert_eq!(j.command, Command::Reduce);
        assert_eq!(j.generators, vec!["(1 2)(3 4 5 6)".to_string()]);
        assert_eq!(j.matrix.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn empty_document_is_missing_command() {
        let e = parse_job("").unwrap_err();
        assert_eq!(e.to_string(), "input error: missing command");
        assert!(parse_job("{}").unwrap_err().to_string().contains("missing command"));
    }

    #[test]
    fn negative_entry_is_named() {
        let e = parse_job(r#"{"command":"invariants","matrix":[[1,0],[-3,1]]}"#).unwrap_err();
        assert_eq!(e.to_string(), "input error: matrix[1][0]: negative entry -3");
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn diagnostics_name_paths() {
        let e = parse_job(r#"{"command":"nope"}"#).unwrap_err();
        assert!(e.to_string().contains("unknown command"));
        let e = parse_job(r#"{"command":"split","matrix":[[1]],"splits":[{"direction":"up","partitions":[]}]}"#)
            .unwrap_err();
        assert!(e.to_string().contains("splits[0].direction"));
        let e = parse_job(r#"{"command":"reduce","matrix":[[1,1],[1]]}"#).unwrap_err();
        assert!(e.to_string().contains("matrix[1]"));
        let e = parse_job(r#"{"command":"reduce","matrix":[[1,1],[1,1]],"generators":["(1 3)"]}"#).unwrap_err();
        assert!(e.to_string().contains("generators[0]"));
        let e = parse_job(r#"{"command":"tqft","preset":"trefoil"}"#).unwrap_err();
        assert!(e.to_string().contains("group"));
        let e = parse_job(r#"{"command":"reduce","matrix":[]}"#).unwrap_err();
        assert!(e.to_string().contains("at least one row"));
        let e = parse_job(r#"{"command":"reduce","matrix":[[1.5]]}"#).unwrap_err();
        assert!(e.to_string().contains("matrix[0][0]"));
    }

    #[test]
    fn canonical_round_trip() {
        let j = parse_job(REDUCE).unwrap();
        let text = j.to_json();
        let k = parse_job(&text).unwrap();
        assert_eq!(j, k);
        assert_eq!(text, k.to_json());
    }

    #[test]
    fn hnn_words_are_canonical() {
        let j = parse_job(
            r#"{"command":"repshift","group":"Z2","hnn":{"b_gens":2,"u_gens":["a","b"],"v_gens":["b","a^-1 b"],"phi_images":["b","a^-1 b"]}}"#,
        )
        .unwrap();
        assert_eq!(j.hnn.as_ref().unwrap().phi_images, vec!["b".to_string(), "Ab".to_string()]);
        assert_eq!(parse_job(&j.to_json()).unwrap(), j);
    }
}
