//! `pairdual`: closures, interiors, cores and hulls of pairs over truncated
//! numerical semigroup rings and monomial ideals of `k[[x,y]]`.

use std::cell::RefCell;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use pairdual::core_hull::{box_expansions, box_reductions, ring_expansions, ring_reductions};
use pairdual::linalg::{PrimeField, Subspace};
use pairdual::monomial2::{render_monomial, MonomialIdeal};
use pairdual::pair_ops::{check_properties, FiniteContext, Ring, Side, Verdict};
use pairdual::parse::{parse_ideal_in, OpName, OpSpec};
use pairdual::reproduce::{self, Reproduction, Status};
use pairdual::semigroup_ring::{
    dual_stability_check, stability_check, NumericalSemigroup, Outcome, TruncatedSemigroupAlgebra,
};
use pairdual::{Error, Result};

#[derive(Parser)]
#[command(name = "pairdual", version, about = "Pair operations, cores and hulls on semigroup rings and monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Primal,
    Dual,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::Primal => Side::Primal,
            SideArg::Dual => Side::Dual,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SideArg::Primal => "primal",
            SideArg::Dual => "dual",
        }
    }
}

#[derive(Args)]
struct Common {
    /// `sg:<generators>` (e.g. `sg:2,3`) or `mon2` for monomial ideals of k[[x,y]]
    #[arg(long, default_value = "sg:2,3")]
    ring: String,
    /// Characteristic of the coefficient field
    #[arg(short = 'p', default_value_t = 2)]
    p: u32,
    /// Semigroup truncation N [default: 20, or 8 for `check`]
    #[arg(short = 'N')]
    n: Option<u32>,
    /// Box b of k[x,y]/(x^b,y^b) in mon2 mode [default: 8, or 4 for `check`]
    #[arg(long = "box")]
    bound: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Closure of the pair (I, R): jbf, integral, rr or identity
    Closure {
        #[command(flatten)]
        common: Common,
        /// Operation name, optionally with its ideal as in `jbf:m`
        #[arg(long)]
        op: String,
        /// The ideal J of jbf
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long)]
        ideal: String,
    },
    /// Interior of the pair (I, R): jbe or identity
    Interior {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: String,
        /// The ideal J of jbe
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long)]
        ideal: String,
    },
    /// Core: intersection of all reductions, with the minimal ones
    Core {
        #[command(flatten)]
        common: Common,
        /// Closure such as `jbf:m`, `integral` or `identity`
        #[arg(long)]
        cl: String,
        #[arg(long)]
        ideal: String,
        /// `dual` works with (0:_E I) in the dual module
        #[arg(long, value_enum, default_value = "primal")]
        side: SideArg,
    },
    /// Hull: sum of all expansions, with the maximal ones
    Hull {
        #[command(flatten)]
        common: Common,
        /// Interior such as `jbe:m` or `identity`
        #[arg(long)]
        int: String,
        #[arg(long, required_unless_present = "dual_of", conflicts_with = "dual_of")]
        ideal: Option<String>,
        /// Ideal I whose core problem is dual to this hull; the hull of I is taken
        #[arg(long = "dual-of")]
        dual_of: Option<String>,
        #[arg(long, value_enum, default_value = "primal")]
        side: SideArg,
    },
    /// Check the pair-operation axioms on the whole finite lattice
    Check {
        #[command(flatten)]
        common: Common,
        /// Operation such as `rr_cap`, `jbf:m`, `jbe:m^2`, `integral`
        #[arg(long)]
        op: String,
        #[arg(long, value_enum, default_value = "primal")]
        side: SideArg,
    },
    /// Recompute a reference table and diff it against the expected values
    Reproduce {
        #[arg(value_parser = PossibleValuesParser::new(reproduce::TABLES))]
        table: String,
        #[arg(short = 'p', default_value_t = 2)]
        p: u32,
        /// Largest level n [default: 12 for ex72, 10 otherwise]
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        /// Largest r for lemma71
        #[arg(long = "r-max", default_value_t = 10)]
        r_max: u32,
        /// Values of r for ex73
        #[arg(long = "r", value_delimiter = ',', default_value = "3,4,5")]
        r: Vec<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What a command prints, before formatting.
struct Output {
    command: &'static str,
    config: Vec<(&'static str, Value)>,
    body: Vec<(String, String)>,
    table: Vec<String>,
    result: Value,
    stability: Option<Value>,
    witnesses: Option<Value>,
    exit: u8,
}

impl Output {
    fn new(command: &'static str, config: Vec<(&'static str, Value)>) -> Self {
        Output {
            command,
            config,
            body: Vec::new(),
            table: Vec::new(),
            result: Value::Null,
            stability: None,
            witnesses: None,
            exit: 0,
        }
    }

    fn line(&mut self, key: &str, value: impl Into<String>) {
        self.body.push((key.to_string(), value.into()));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("command".into(), json!(self.command));
                doc.insert("config".into(), Value::Object(self.config.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()));
                doc.insert("result".into(), self.result.clone());
                if let Some(s) = &self.stability {
                    doc.insert("stability".into(), s.clone());
                }
                if let Some(w) = &self.witnesses {
                    doc.insert("witnesses".into(), w.clone());
                }
                let mut s = serde_json::to_string(&Value::Object(doc)).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self) -> String {
        let mut out = format!("# {}", self.command);
        for (k, v) in &self.config {
            let shown = match v {
                Value::Null => continue,
                Value::String(s) => s.clone(),
                Value::Array(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                other => other.to_string(),
            };
            out.push_str(&format!(" {k}={shown}"));
        }
        out.push('\n');
        let width = self.body.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.body {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for l in &self.table {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

fn parse_error(column: usize, message: String) -> Error {
    Error::Parse { line: 1, column, message }
}

/// Names the flag in a parse error.
fn in_flag(flag: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { line, column, message } => Error::Parse { line, column, message: format!("{flag}: {message}") },
        other => other,
    }
}

enum RingSel {
    Semigroup(NumericalSemigroup),
    Mon2,
}

fn ring_sel(text: &str) -> Result<RingSel> {
    if text == "mon2" {
        return Ok(RingSel::Mon2);
    }
    let Some(rest) = text.strip_prefix("sg:") else {
        return Err(parse_error(1, format!("--ring: unknown ring '{text}', expected sg:<generators> or mon2")));
    };
    let mut gens = Vec::new();
    let mut column = 4;
    for part in rest.split(',') {
        let g = part
            .trim()
            .parse::<u32>()
            .map_err(|_| parse_error(column, format!("--ring: '{part}' is not a generator")))?;
        gens.push(g);
        column += part.len() + 1;
    }
    Ok(RingSel::Semigroup(NumericalSemigroup::new(gens)?))
}

fn op_spec(op: &str, j: Option<&str>) -> Result<OpSpec> {
    match j {
        Some(_) if op.contains(':') => Err(parse_error(op.find(':').unwrap() + 1, "--op: J given twice".into())),
        Some(j) => OpSpec::parse(&format!("{op}:{j}")).map_err(in_flag("--op/--J")),
        None => OpSpec::parse(op).map_err(in_flag("--op")),
    }
}

fn require(spec: &OpSpec, allowed: &[OpName], what: &str) -> Result<()> {
    if allowed.contains(&spec.name) {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!("{} is not {what}", spec.label())))
    }
}

fn not_applicable(spec: &OpSpec) -> Error {
    Error::InvalidParam(format!("{} is not defined on this pair", spec.label()))
}

fn semigroup_alg(sg: NumericalSemigroup, p: u32, n: u32) -> Result<TruncatedSemigroupAlgebra> {
    TruncatedSemigroupAlgebra::new(sg, PrimeField::new(p)?, n)
}

fn is_sg23(alg: &TruncatedSemigroupAlgebra) -> bool {
    alg.semigroup().generators() == [2, 3]
}

fn ring_name(alg: &TruncatedSemigroupAlgebra) -> String {
    let g: Vec<String> = alg.semigroup().generators().iter().map(|x| x.to_string()).collect();
    format!("sg:{}", g.join(","))
}

/// Primal ideal of a semigroup ring as JSON, with its class in `<2,3>`.
fn sg_ideal(alg: &TruncatedSemigroupAlgebra, i: &Subspace) -> Value {
    let gens: Vec<String> = alg.minimal_generators(i).iter().map(|g| alg.render_element(g)).collect();
    let mut v = json!({ "rendered": alg.render_ideal(i), "generators": gens, "basis": i.basis() });
    if is_sg23(alg) {
        if let Ok(c) = alg.classify(i) {
            v["class"] = json!(c.tag());
        }
    }
    v
}

fn sg_outcome(alg: &TruncatedSemigroupAlgebra, outcome: &Outcome) -> Value {
    match outcome {
        Outcome::Stable(i) => sg_ideal(alg, i),
        Outcome::Vanishing => {
            let mut v = json!({ "rendered": "0", "generators": [], "basis": [] });
            if is_sg23(alg) {
                v["class"] = json!("Zero");
            }
            v
        }
    }
}

/// Submodule `(0:_E I)` of the dual, described by `I`.
fn sg_dual(alg: &TruncatedSemigroupAlgebra, s: &Subspace) -> Value {
    let i = s.orthogonal();
    let mut v = sg_ideal(alg, &i);
    v["rendered"] = json!(format!("(0:_E {})", alg.render_ideal(&i)));
    v["basis"] = json!(s.basis());
    v["dual"] = json!(true);
    if let Some(o) = v.as_object_mut() {
        o.remove("class");
    }
    v
}

fn sg_stability(n: u32, vanishing: bool) -> (String, Value) {
    let text = if vanishing {
        format!("order grows at N = {}, {}, {}; limit is 0", n, n + 2, n + 4)
    } else {
        format!("N = {}, {}, {} agree", n, n + 2, n + 4)
    };
    let limit = if vanishing { "vanishing" } else { "stable" };
    (text, json!({ "N": n, "checked": [n, n + 2, n + 4], "confirmed": true, "limit": limit }))
}

fn put_result(out: &mut Output, key: &str, v: Value) {
    out.line(key, v["rendered"].as_str().unwrap_or_default());
    if let Some(c) = v.get("class").and_then(Value::as_str) {
        out.line("class", c);
    }
    out.result = v;
}

fn mono_ideal(text: &str) -> Result<MonomialIdeal> {
    parse_ideal_in(text, &['x', 'y']).map_err(in_flag("--ideal"))?.in_monomial()
}

fn mono_json(i: &MonomialIdeal) -> Value {
    let gens: Vec<String> = if i.is_zero() {
        Vec::new()
    } else {
        i.generators().iter().rev().map(|&(a, b)| render_monomial(a, b)).collect()
    };
    json!({ "rendered": i.to_string(), "generators": gens })
}

fn exact_stability() -> (String, Value) {
    ("exact in k[[x,y]]".into(), json!({ "N": null, "confirmed": true, "exact": true }))
}

#[derive(Clone, Copy)]
enum Apply {
    Closure,
    Interior,
}

fn cmd_apply(kind: Apply, common: &Common, op: &str, j: Option<&str>, ideal: &str) -> Result<Output> {
    let spec = op_spec(op, j)?;
    let (command, allowed, what): (_, &[OpName], _) = match kind {
        Apply::Closure => ("closure", &[OpName::Identity, OpName::Jbf, OpName::Integral, OpName::RatliffRush], "a closure"),
        Apply::Interior => ("interior", &[OpName::Identity, OpName::Jbe], "an interior"),
    };
    require(&spec, allowed, what)?;
    match ring_sel(&common.ring)? {
        RingSel::Semigroup(sg) => {
            let n = common.n.unwrap_or(20);
            let alg = semigroup_alg(sg, common.p, n)?;
            let expr = parse_ideal_in(ideal, &['t']).map_err(in_flag("--ideal"))?;
            let mut out = Output::new(command, vec![
                ("ring", json!(ring_name(&alg))),
                ("p", json!(common.p)),
                ("N", json!(n)),
                ("op", json!(spec.label())),
                ("ideal", json!(ideal)),
            ]);
            let outcome = stability_check(&alg, |a| {
                let ring = Ring::semigroup(a.clone());
                let i = expr.in_semigroup(a)?;
                spec.for_semigroup(a)?
                    .evaluate(&ring, Side::Primal, &i, &a.unit_ideal(), &a.zero_ideal())?
                    .ok_or_else(|| not_applicable(&spec))
            })?;
            put_result(&mut out, "result", sg_outcome(&alg, &outcome));
            let (t, s) = sg_stability(n, outcome == Outcome::Vanishing);
            out.line("stability", t);
            out.stability = Some(s);
            Ok(out)
        }
        RingSel::Mon2 => {
            let i = mono_ideal(ideal)?;
            let mut out = Output::new(command, vec![
                ("ring", json!("mon2")),
                ("p", json!(common.p)),
                ("op", json!(spec.label())),
                ("ideal", json!(ideal)),
            ]);
            put_result(&mut out, "result", mono_json(&spec.apply_monomial(&i)?));
            let (t, s) = exact_stability();
            out.line("stability", t);
            out.stability = Some(s);
            Ok(out)
        }
    }
}

/// Core or hull problem.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Search {
    Core,
    Hull,
}

/// The part of a reduction or expansion set that gets printed.
struct Found {
    label: String,
    result: Subspace,
    extreme: Vec<Subspace>,
    count: usize,
}

fn sg_search(search: Search, alg: &TruncatedSemigroupAlgebra, spec: &OpSpec, expr: &pairdual::parse::IdealExpr, side: Side) -> Result<(Found, Option<Outcome>)> {
    let first: RefCell<Option<Found>> = RefCell::new(None);
    let compute = |a: &TruncatedSemigroupAlgebra| -> Result<Subspace> {
        let ring = Ring::semigroup(a.clone());
        let i = expr.in_semigroup(a)?;
        let op = spec.for_semigroup(a)?;
        let (target, m, u) = match side {
            Side::Primal => (i, ring.full(side), ring.zero(side)),
            Side::Dual => (ring.ann(&i), ring.full(side), ring.zero(side)),
        };
        let found = match search {
            Search::Core => {
                let s = ring_reductions(&ring, side, &target, &m, &u, &op)?;
                Found { label: s.label, result: s.core, extreme: s.minimal, count: s.reductions.len() }
            }
            Search::Hull => {
                let s = ring_expansions(&ring, side, &target, &m, &u, &op)?;
                Found { label: s.label, result: s.hull, extreme: s.maximal, count: s.expansions.len() }
            }
        };
        let r = found.result.clone();
        first.borrow_mut().get_or_insert(found);
        Ok(r)
    };
    let outcome = match side {
        Side::Primal => Some(stability_check(alg, compute)?),
        Side::Dual => {
            dual_stability_check(alg, compute)?;
            None
        }
    };
    Ok((first.into_inner().expect("computed at N"), outcome))
}

fn box_search(search: Search, ring: &Ring, spec: &OpSpec, i: &MonomialIdeal, side: Side) -> Result<Found> {
    let op = spec.for_box(ring)?;
    let i = i.to_box(ring.algebra());
    let (target, m, u) = match side {
        Side::Primal => (i, ring.full(side), ring.zero(side)),
        Side::Dual => (ring.ann(&i), ring.full(side), ring.zero(side)),
    };
    Ok(match search {
        Search::Core => {
            let s = box_reductions(ring, side, &target, &m, &u, &op)?;
            Found { label: s.label, result: s.core, extreme: s.minimal, count: s.reductions.len() }
        }
        Search::Hull => {
            let s = box_expansions(ring, side, &target, &m, &u, &op)?;
            Found { label: s.label, result: s.hull, extreme: s.maximal, count: s.expansions.len() }
        }
    })
}

fn cmd_search(search: Search, common: &Common, op: &str, ideal: (&'static str, &str), side: SideArg) -> Result<Output> {
    let spec = OpSpec::parse(op).map_err(in_flag(if search == Search::Core { "--cl" } else { "--int" }))?;
    let (command, allowed, what, key, extreme_key, count_key): (_, &[OpName], _, _, _, _) = match search {
        Search::Core => ("core", &[OpName::Identity, OpName::Jbf, OpName::Integral], "a closure", "core", "minimal reductions", "reductions"),
        Search::Hull => ("hull", &[OpName::Identity, OpName::Jbe], "an interior", "hull", "maximal expansions", "expansions"),
    };
    require(&spec, allowed, what)?;
    let op_key = if search == Search::Core { "cl" } else { "int" };
    let list = |xs: Vec<String>| format!("{{{}}}", xs.join(","));
    match ring_sel(&common.ring)? {
        RingSel::Semigroup(sg) => {
            let n = common.n.unwrap_or(20);
            let alg = semigroup_alg(sg, common.p, n)?;
            let expr = parse_ideal_in(ideal.1, &['t']).map_err(in_flag("--ideal"))?;
            let mut out = Output::new(command, vec![
                ("ring", json!(ring_name(&alg))),
                ("p", json!(common.p)),
                ("N", json!(n)),
                (op_key, json!(spec.label())),
                ("side", json!(side.name())),
                (ideal.0, json!(ideal.1)),
            ]);
            let (found, outcome) = sg_search(search, &alg, &spec, &expr, side.side())?;
            let (render, value): (Box<dyn Fn(&Subspace) -> String>, Value) = match (side, &outcome) {
                (SideArg::Primal, Some(o)) => (Box::new(|s: &Subspace| alg.render_ideal(s)), sg_outcome(&alg, o)),
                _ => (Box::new(|s: &Subspace| format!("(0:_E {})", alg.render_ideal(&s.orthogonal()))), sg_dual(&alg, &found.result)),
            };
            let extreme: Vec<String> = found.extreme.iter().map(render).collect();
            put_result(&mut out, key, value);
            out.line(extreme_key, list(extreme.clone()));
            out.line(count_key, found.count.to_string());
            out.line("label", found.label.clone());
            out.result["label"] = json!(found.label);
            out.result[extreme_key.replace(' ', "_")] = json!(extreme);
            out.result[count_key] = json!(found.count);
            let (t, s) = sg_stability(n, outcome == Some(Outcome::Vanishing));
            out.line("stability", t);
            out.stability = Some(s);
            Ok(out)
        }
        RingSel::Mon2 => {
            let b = common.bound.unwrap_or(8);
            let field = PrimeField::new(common.p)?;
            let i = mono_ideal(ideal.1)?;
            if let Some(&(x, y)) = i.generators().iter().find(|&&(x, y)| x >= b || y >= b) {
                return Err(Error::InvalidParam(format!("generator {} lies outside box {b}", render_monomial(x, y))));
            }
            let mut out = Output::new(command, vec![
                ("ring", json!("mon2")),
                ("p", json!(common.p)),
                ("box", json!(b)),
                (op_key, json!(spec.label())),
                ("side", json!(side.name())),
                (ideal.0, json!(ideal.1)),
            ]);
            let ring = Ring::monomial_box(field, b);
            let found = box_search(search, &ring, &spec, &i, side.side())?;
            let read = |r: &Ring, s: &Subspace, b: u32| MonomialIdeal::from_box(s, r.algebra(), b);
            let confirmed = side == SideArg::Primal;
            if confirmed {
                let bigger = Ring::monomial_box(field, b + 2);
                let again = box_search(search, &bigger, &spec, &i, Side::Primal)?;
                let (here, there) = (read(&ring, &found.result, b), read(&bigger, &again.result, b + 2));
                if here != there {
                    return Err(Error::Instability(format!("{here} in box {b} became {there} in box {}", b + 2)));
                }
            }
            let render = |s: &Subspace| match side {
                SideArg::Primal => read(&ring, s, b).to_string(),
                SideArg::Dual => ring.render(Side::Dual, s),
            };
            let mut value = match side {
                SideArg::Primal => mono_json(&read(&ring, &found.result, b)),
                SideArg::Dual => {
                    let mut v = mono_json(&read(&ring, &ring.ann(&found.result), b));
                    v["rendered"] = json!(render(&found.result));
                    v["dual"] = json!(true);
                    v
                }
            };
            let extreme: Vec<String> = found.extreme.iter().map(render).collect();
            value["label"] = json!(found.label);
            value[extreme_key.replace(' ', "_")] = json!(extreme);
            value[count_key] = json!(found.count);
            put_result(&mut out, key, value);
            out.line(extreme_key, list(extreme));
            out.line(count_key, found.count.to_string());
            out.line("label", found.label);
            let (t, s) = if confirmed {
                (format!("boxes {b} and {} agree", b + 2), json!({ "N": null, "box": [b, b + 2], "confirmed": true }))
            } else {
                (format!("box {b} only"), json!({ "N": null, "box": [b], "confirmed": false }))
            };
            out.line("stability", t);
            out.stability = Some(s);
            Ok(out)
        }
    }
}

fn cmd_check(common: &Common, op: &str, side: SideArg) -> Result<Output> {
    let spec = OpSpec::parse(op).map_err(in_flag("--op"))?;
    let (ctx, mut out) = match ring_sel(&common.ring)? {
        RingSel::Semigroup(sg) => {
            let n = common.n.unwrap_or(8);
            let alg = semigroup_alg(sg, common.p, n)?;
            let config = vec![
                ("ring", json!(ring_name(&alg))),
                ("p", json!(common.p)),
                ("N", json!(n)),
                ("op", json!(spec.label())),
                ("side", json!(side.name())),
            ];
            (FiniteContext::semigroup(alg)?, Output::new("check", config))
        }
        RingSel::Mon2 => {
            let b = common.bound.unwrap_or(4);
            let config = vec![
                ("ring", json!("mon2")),
                ("p", json!(common.p)),
                ("box", json!(b)),
                ("op", json!(spec.label())),
                ("side", json!(side.name())),
            ];
            (FiniteContext::monomial_box(PrimeField::new(common.p)?, b)?, Output::new("check", config))
        }
    };
    let op = match ctx.model() {
        pairdual::pair_ops::Model::Semigroup(a) => spec.for_semigroup(a)?,
        pairdual::pair_ops::Model::MonomialBox { .. } => spec.for_box(ctx.ring())?,
    };
    let report = check_properties(&op, &ctx, side.side())?;
    let mut properties = Vec::new();
    let mut witnesses = Vec::new();
    for (p, verdict) in &report.verdicts {
        match verdict {
            Verdict::Holds { checked } => {
                out.line(p.name(), format!("holds ({checked} instances)"));
                properties.push(json!({ "property": p.name(), "holds": true, "checked": checked }));
            }
            Verdict::Fails(w) => {
                let roles = w.render(&ctx);
                let shown: Vec<String> = roles.iter().map(|(r, v)| format!("{r} = {v}")).collect();
                let via = if w.component != *p { format!(" via {}", w.component.name()) } else { String::new() };
                out.line(p.name(), format!("FAILS{via}: {}", shown.join(", ")));
                properties.push(json!({ "property": p.name(), "holds": false }));
                let values: Map<String, Value> = roles.into_iter().map(|(r, v)| (r, json!(v))).collect();
                witnesses.push(json!({
                    "property": p.name(),
                    "component": w.component.name(),
                    "side": side.name(),
                    "values": values,
                }));
            }
        }
    }
    let failures = witnesses.len();
    out.line("failures", failures.to_string());
    out.result = json!({ "operation": report.operation, "properties": properties, "failures": failures });
    out.witnesses = Some(Value::Array(witnesses));
    out.stability = Some(json!({ "N": out.config.iter().find(|(k, _)| *k == "N").map(|(_, v)| v.clone()), "confirmed": false }));
    if failures > 0 {
        out.exit = 1;
    }
    Ok(out)
}

fn table_lines(rep: &Reproduction) -> Vec<String> {
    let head = ["item", "expected", "computed", "status"];
    let rows: Vec<[String; 4]> = rep
        .rows
        .iter()
        .map(|r| [r.item.clone(), r.expected.clone().unwrap_or_else(|| "-".into()), r.computed.clone(), r.status().to_string()])
        .collect();
    let width = |k: usize| rows.iter().map(|r| r[k].chars().count()).chain([head[k].len()]).max().unwrap_or(0);
    let w = [width(0), width(1), width(2)];
    let pad = |s: &str, n: usize| format!("{s}{}", " ".repeat(n - s.chars().count()));
    let fmt = |r: [&str; 4]| format!("{}  {}  {}  {}", pad(r[0], w[0]), pad(r[1], w[1]), pad(r[2], w[2]), r[3]);
    let mut out = vec![format!("== {} ({})", rep.name, rep.config), fmt(head)];
    out.extend(rows.iter().map(|r| fmt([&r[0], &r[1], &r[2], &r[3]])));
    out
}

fn cmd_reproduce(table: &str, p: u32, n_max: Option<u32>, r_max: u32, rs: &[u32]) -> Result<Output> {
    let mut config = vec![("table", json!(table))];
    let reps = match table {
        "ex72" => {
            let n = n_max.unwrap_or(12);
            config.extend([("p", json!(p)), ("n-max", json!(n))]);
            vec![reproduce::ex72(p, n)?]
        }
        "ex73" => {
            let n = n_max.unwrap_or(10);
            config.extend([("p", json!(p)), ("r", json!(rs)), ("n-max", json!(n))]);
            rs.iter().map(|&r| reproduce::ex73(p, r, n)).collect::<Result<_>>()?
        }
        "lemma71" => {
            let n = n_max.unwrap_or(10);
            config.extend([("p", json!(p)), ("r-max", json!(r_max)), ("n-max", json!(n))]);
            vec![reproduce::lemma71(p, r_max, n)?]
        }
        "ex25" => vec![reproduce::ex25()?],
        "ex38" => vec![reproduce::ex38()?],
        "ex310" => vec![reproduce::ex310()?],
        other => return Err(Error::InvalidParam(format!("unknown table {other}"))),
    };
    let mut out = Output::new("reproduce", config);
    let mut tables = Vec::new();
    let mut diff = Vec::new();
    for rep in &reps {
        out.table.extend(table_lines(rep));
        let rows: Vec<Value> = rep
            .rows
            .iter()
            .map(|r| json!({ "item": r.item, "expected": r.expected, "computed": r.computed, "status": r.status().to_string() }))
            .collect();
        tables.push(json!({ "name": rep.name, "config": rep.config, "rows": rows }));
        for r in rep.mismatches() {
            diff.push(format!("- {}: {}", r.item, r.expected.as_deref().unwrap_or("")));
            diff.push(format!("+ {}: {}", r.item, r.computed));
        }
    }
    let count = |s: Status| reps.iter().flat_map(|r| &r.rows).filter(|r| r.status() == s).count();
    let (ok, bad, unstated) = (count(Status::Match), count(Status::Mismatch), count(Status::Unstated));
    out.table.push(format!("summary: {ok} ok, {bad} mismatched, {unstated} computed without an expected value"));
    if !diff.is_empty() {
        out.table.push("diff:".into());
        out.table.extend(diff);
        out.exit = 1;
    }
    out.result = json!({ "tables": tables, "ok": ok, "mismatched": bad, "unstated": unstated });
    Ok(out)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidParam(_) | Error::NotPrime(_) | Error::ModulusTooLarge(_) | Error::NotSubmodule(_) => 2,
        Error::Instability(_) | Error::NotStabilized(_) => 3,
        Error::CapExceeded(_) | Error::LatticeNotClosed(_) => 4,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<(Output, Format)> {
    Ok(match &cli.command {
        Command::Closure { common, op, j, ideal } => (cmd_apply(Apply::Closure, common, op, j.as_deref(), ideal)?, common.format),
        Command::Interior { common, op, j, ideal } => (cmd_apply(Apply::Interior, common, op, j.as_deref(), ideal)?, common.format),
        Command::Core { common, cl, ideal, side } => (cmd_search(Search::Core, common, cl, ("ideal", ideal), *side)?, common.format),
        Command::Hull { common, int, ideal, dual_of, side } => {
            let target = match (ideal, dual_of) {
                (Some(i), _) => ("ideal", i.as_str()),
                (None, Some(d)) => ("dual-of", d.as_str()),
                (None, None) => unreachable!("clap requires one of them"),
            };
            (cmd_search(Search::Hull, common, int, target, *side)?, common.format)
        }
        Command::Check { common, op, side } => (cmd_check(common, op, *side)?, common.format),
        Command::Reproduce { table, p, n_max, r_max, r, format } => (cmd_reproduce(table, *p, *n_max, *r_max, r)?, *format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, format)) => {
            print!("{}", out.render(format));
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
