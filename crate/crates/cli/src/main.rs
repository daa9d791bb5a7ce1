//! Command-line front end: JSON in, JSON out.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::process::ExitCode;

use algtau::gamma::{abel, exp_char0, exp_charp, factorize, witt_add, Sign};
use algtau::grassmann::{GrassPoint, MayaDiagram};
use algtau::pairings::{commutator_pairing, residue_pairing, LieElement, COMMUTATOR_ORIENTATION};
use algtau::scalars::{BaseField, CoeffRing, RingElement, RingRef};
use algtau::serial::{self, GammaWire, LaurentWire, MayaWire, PointWire, PolyWire};
use algtau::tau::{baker, tau_direct, tau_schur};
use algtau::verify::{self, Scale};
use algtau::{schur, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "algtau", version, about = "Exact algebra on the Grassmannian of k((z))")]
struct Cli {
    /// Base field: "q" or "fp:<p>".
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Degree bound d of the tau and Schur rings.
    #[arg(long = "deg", global = true)]
    deg: Option<u32>,
    /// Tail depth N to split input points at.
    #[arg(long = "tail-depth", global = true)]
    tail_depth: Option<i64>,
    /// z-adic window M.
    #[arg(long = "window", global = true)]
    window: Option<i64>,
    /// Window W of the commutator pairing.
    #[arg(long = "pair-window", global = true)]
    pair_window: Option<i64>,
    /// Read the payload from this file instead of standard input.
    #[arg(long = "in", global = true)]
    input: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor an invertible series as gminus * unit * gplus * z^n.
    Factor,
    /// Exponential map into Gamma_- or Gamma_+.
    Exp,
    /// Witt sum of two coefficient vectors.
    WittAdd,
    /// Abel morphism of a list of nilpotent points.
    Abel,
    /// Index of a point.
    Index,
    /// Pluecker coordinate of a point in a chart.
    Plucker,
    /// Chart transition det(delta_AB).
    Transition,
    /// Action of a Gamma element on a point.
    Act,
    /// Tau-function of a big-cell point.
    Tau {
        #[arg(long, value_enum, default_value_t = TauMethod::Direct)]
        method: TauMethod,
    },
    /// Baker function of a big-cell point.
    Baker,
    /// Schur polynomial F_lambda.
    Schur,
    /// Bosonization of Pluecker coordinates.
    Bosonize,
    /// Residue, commutator or duality pairing.
    Pair,
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "full")]
        scale: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TauMethod {
    Direct,
    Schur,
}

/// Generator weights and bound of the payload ring; the field comes from
/// the command line.
#[derive(Debug, Default, Deserialize)]
struct RingShape {
    #[serde(default)]
    vars: Option<usize>,
    #[serde(default)]
    weights: Vec<u32>,
    #[serde(default)]
    degree_bound: u32,
}

impl RingShape {
    fn build(&self, base: BaseField) -> Result<RingRef, Error> {
        let weights = match self.vars {
            Some(n) if self.weights.is_empty() => vec![1; n],
            Some(n) if n != self.weights.len() => {
                return Err(Error::Parse("vars and weights disagree".into()))
            }
            _ => self.weights.clone(),
        };
        if weights.is_empty() {
            return Ok(CoeffRing::field(base));
        }
        CoeffRing::weighted(base, weights, self.degree_bound)
    }
}

struct Outcome {
    result: Value,
    precision: BTreeMap<&'static str, i64>,
    flags: Vec<&'static str>,
    exit: u8,
}

impl Outcome {
    fn new(result: Value) -> Self {
        Outcome {
            result,
            precision: BTreeMap::new(),
            flags: Vec::new(),
            exit: 0,
        }
    }

    fn with(mut self, key: &'static str, value: i64) -> Self {
        self.precision.insert(key, value);
        self
    }

    fn flag(mut self, f: &'static str) -> Self {
        self.flags.push(f);
        self
    }
}

const H_CONVENTION: &str = "x_i = h_i (complete homogeneous)";
const INDEX_CONVENTION: &str = "index = dim(L cap V+) - dim(V/(L + V+))";
const DELTA_CONVENTION: &str = "delta = Omega_+(U)";

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn field<T: for<'de> Deserialize<'de>>(payload: &Value, key: &str) -> Result<T, Error> {
    let v = payload
        .get(key)
        .ok_or_else(|| Error::Parse(format!("payload lacks {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("{key}: {e}")))
}

fn optional<T: for<'de> Deserialize<'de>>(payload: &Value, key: &str) -> Result<Option<T>, Error> {
    match payload.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => field(payload, key).map(Some),
    }
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Parse(format!("{flag} is required for this command")))
}

fn payload_ring(payload: &Value, base: BaseField) -> Result<RingRef, Error> {
    optional::<RingShape>(payload, "ring")?
        .unwrap_or_default()
        .build(base)
}

fn polys(ring: &RingRef, ws: &[PolyWire]) -> Result<Vec<RingElement>, Error> {
    ws.iter().map(|w| serial::decode_poly(ring, w)).collect()
}

fn chart(payload: &Value, key: &str) -> Result<MayaDiagram, Error> {
    let v = payload
        .get(key)
        .ok_or_else(|| Error::Parse(format!("payload lacks {key:?}")))?;
    if v.is_array() {
        let parts: Vec<u32> = serde_json::from_value(v.clone()).map_err(parse_err)?;
        return Ok(MayaDiagram::from_partition(&serial::decode_partition(&parts)?));
    }
    let w: MayaWire = serde_json::from_value(v.clone()).map_err(parse_err)?;
    serial::decode_maya(&w)
}

fn point(cli: &Cli, ring: &RingRef, payload: &Value) -> Result<GrassPoint, Error> {
    let w: PointWire = field(payload, "point")?;
    let p = serial::decode_point(ring, &w)?;
    match cli.tail_depth {
        Some(n) => p.extend_depth(n),
        None => Ok(p),
    }
}

fn poly_json(f: &RingElement) -> Value {
    json!({ "poly": serial::encode_poly(f), "text": f.to_string() })
}

fn sign(payload: &Value) -> Result<Sign, Error> {
    match optional::<String>(payload, "sign")?.as_deref() {
        None | Some("minus") => Ok(Sign::Minus),
        Some("plus") => Ok(Sign::Plus),
        Some(s) => Err(Error::Parse(format!("unknown sign {s:?}"))),
    }
}

fn run(cli: &Cli, payload: &Value) -> Result<Outcome, Error> {
    let base = serial::parse_field(&cli.field)?;
    match &cli.command {
        Command::Factor => {
            let ring = payload_ring(payload, base)?;
            let f = serial::decode_laurent(&ring, &field::<LaurentWire>(payload, "series")?)?;
            let g = factorize(&f)?;
            Ok(Outcome::new(json!(serial::encode_gamma(&g))))
        }
        Command::Exp => {
            let ring = payload_ring(payload, base)?;
            let coeffs = polys(&ring, &field::<Vec<PolyWire>>(payload, "coeffs")?)?;
            let sign = sign(payload)?;
            let g = if base.characteristic() == 0 {
                exp_char0(&ring, &coeffs, sign, cli.window)?
            } else {
                exp_charp(&ring, &coeffs, sign)?
            };
            let mut out = Outcome::new(json!(serial::encode_gamma(&g)));
            if let Some(m) = cli.window {
                out = out.with("M", m);
            }
            let form = if base.characteristic() == 0 {
                "exp(sum y_i z^(+-i))"
            } else {
                "prod (1 - a_i z^(+-i))"
            };
            Ok(out.flag(form))
        }
        Command::WittAdd => {
            let ring = payload_ring(payload, base)?;
            let a = polys(&ring, &field::<Vec<PolyWire>>(payload, "a")?)?;
            let b = polys(&ring, &field::<Vec<PolyWire>>(payload, "b")?)?;
            let n = optional::<usize>(payload, "n")?.unwrap_or(a.len().max(b.len()));
            let c = witt_add(&ring, &a, &b, n)?;
            let enc: Vec<PolyWire> = c.iter().map(serial::encode_poly).collect();
            Ok(Outcome::new(json!(enc)).with("n", n as i64))
        }
        Command::Abel => {
            let ring = payload_ring(payload, base)?;
            let pts = polys(&ring, &field::<Vec<PolyWire>>(payload, "points")?)?;
            Ok(Outcome::new(json!(serial::encode_gamma(&abel(&ring, &pts)?))))
        }
        Command::Index => {
            let ring = payload_ring(payload, base)?;
            let p = point(cli, &ring, payload)?;
            Ok(Outcome::new(json!(p.index()?)).flag(INDEX_CONVENTION))
        }
        Command::Plucker => {
            let ring = payload_ring(payload, base)?;
            let p = point(cli, &ring, payload)?;
            let s = chart(payload, "chart")?;
            Ok(Outcome::new(poly_json(&p.plucker(&s)?)))
        }
        Command::Transition => {
            let ring = payload_ring(payload, base)?;
            let p = point(cli, &ring, payload)?;
            let a = chart(payload, "a")?;
            let b = chart(payload, "b")?;
            Ok(Outcome::new(poly_json(&p.chart_transition(&a, &b)?)))
        }
        Command::Act => {
            let ring = payload_ring(payload, base)?;
            let p = point(cli, &ring, payload)?;
            let g = serial::decode_gamma(&ring, &field::<GammaWire>(payload, "gamma")?)?;
            let moved = p.act(&g)?;
            let mut out = Outcome::new(json!(serial::encode_point(&moved)))
                .with("N", moved.tail_depth())
                .with("M", moved.window_high());
            if let Some(l) = moved.depth_limit() {
                out = out.with("depth_limit", l);
            }
            Ok(out)
        }
        Command::Tau { method } => {
            let d = require(cli.deg, "--deg")?;
            let ring = CoeffRing::field(base);
            let p = point(cli, &ring, payload)?;
            let t = match method {
                TauMethod::Direct => tau_direct(&p, d)?,
                TauMethod::Schur => tau_schur(&p, d)?,
            };
            let result = json!({
                "tau": serial::encode_poly(&t.value),
                "text": t.value.to_string(),
                "delta": t.delta.constant_term().encode(),
            });
            Ok(Outcome::new(result)
                .with("d", d as i64)
                .with("N", p.tail_depth())
                .with("M", p.window_high())
                .flag(H_CONVENTION)
                .flag(DELTA_CONVENTION))
        }
        Command::Baker => {
            let d = require(cli.deg, "--deg")?;
            let m = require(cli.window, "--window")?;
            let ring = CoeffRing::field(base);
            let p = point(cli, &ring, payload)?;
            let psi = baker(&p, d, m)?;
            Ok(Outcome::new(json!(serial::encode_baker(&psi)))
                .with("d", d as i64)
                .with("M", m)
                .with("N", p.tail_depth())
                .flag(H_CONVENTION)
                .flag(DELTA_CONVENTION))
        }
        Command::Schur => {
            let d = require(cli.deg, "--deg")?;
            let parts: Vec<u32> = field(payload, "partition")?;
            let f = schur::schur(base, &serial::decode_partition(&parts)?, d)?;
            Ok(Outcome::new(poly_json(&f)).with("d", d as i64).flag(H_CONVENTION))
        }
        Command::Bosonize => {
            #[derive(Deserialize)]
            struct Coord {
                partition: Vec<u32>,
                coeff: String,
            }
            let d = require(cli.deg, "--deg")?;
            let coords: Vec<Coord> = field(payload, "coords")?;
            let mut map = BTreeMap::new();
            for c in coords {
                map.insert(serial::decode_partition(&c.partition)?, base.parse(&c.coeff)?);
            }
            let f = schur::bosonize(base, &map, d)?;
            Ok(Outcome::new(poly_json(&f)).with("d", d as i64).flag(H_CONVENTION))
        }
        Command::Pair => pair(cli, base, payload),
        Command::Verify { suite, seed, scale } => {
            let scale = Scale::parse(scale)?;
            let reports = if suite == "all" {
                verify::run_all(*seed, scale)?
            } else {
                vec![verify::run_suite(suite, *seed, scale)?]
            };
            let mut criteria: BTreeMap<u32, bool> = BTreeMap::new();
            for r in &reports {
                let e = criteria.entry(r.criterion).or_insert(true);
                *e = *e && r.ok();
            }
            let all = criteria.values().all(|&b| b);
            let summary: Vec<Value> = criteria
                .iter()
                .map(|(c, ok)| json!({ "criterion": c, "pass": ok }))
                .collect();
            let mut out = Outcome::new(json!({
                "suites": reports,
                "criteria": summary,
                "all_passed": all,
            }))
            .with("seed", *seed as i64);
            if !all {
                out.exit = 1;
            }
            Ok(out)
        }
    }
}

fn pair(cli: &Cli, base: BaseField, payload: &Value) -> Result<Outcome, Error> {
    let kind: String = field(payload, "kind")?;
    match kind.as_str() {
        "residue" => {
            let ring = payload_ring(payload, base)?;
            let f = serial::decode_laurent(&ring, &field::<LaurentWire>(payload, "f")?)?;
            let g = serial::decode_laurent(&ring, &field::<LaurentWire>(payload, "g")?)?;
            let r = residue_pairing(&LieElement::new(f), &LieElement::new(g))?;
            Ok(Outcome::new(poly_json(&r)).flag("res(f dg)"))
        }
        "commutator" => {
            let w = require(cli.pair_window, "--pair-window")?;
            let ring = payload_ring(payload, base)?;
            let g1 = serial::decode_gamma(&ring, &field::<GammaWire>(payload, "g1")?)?;
            let g2 = serial::decode_gamma(&ring, &field::<GammaWire>(payload, "g2")?)?;
            let c = commutator_pairing(&g1, &g2, w)?;
            Ok(Outcome::new(poly_json(&c))
                .with("W", w)
                .flag(COMMUTATOR_ORIENTATION))
        }
        "duality" => {
            let d = require(cli.deg, "--deg")?;
            let ring = schur::symmetric_ring(base, d);
            let f = serial::decode_poly(&ring, &field::<PolyWire>(payload, "f")?)?;
            let g = serial::decode_poly(&ring, &field::<PolyWire>(payload, "g")?)?;
            let c = schur::duality_pair(&f, &g)?;
            Ok(Outcome::new(json!(c.encode()))
                .with("d", d as i64)
                .flag(H_CONVENTION))
        }
        other => Err(Error::Parse(format!("unknown pairing {other:?}"))),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Precision(_) => 4,
        Error::RingMismatch(_)
        | Error::NotUnit(_)
        | Error::Precondition(_)
        | Error::Characteristic(_) => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Precision(_) => "precision",
        Error::RingMismatch(_) => "ring_mismatch",
        Error::NotUnit(_) => "not_unit",
        Error::Precondition(_) => "precondition",
        Error::Characteristic(_) => "not_applicable",
    }
}

fn read_payload(cli: &Cli) -> Result<Value, Error> {
    if matches!(cli.command, Command::Verify { .. }) {
        return Ok(Value::Null);
    }
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(parse_err)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(parse_err)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(parse_err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = read_payload(&cli).and_then(|p| run(&cli, &p));
    let (doc, code) = match outcome {
        Ok(o) => (
            json!({
                "status": "ok",
                "result": o.result,
                "precision_used": o.precision,
                "convention_flags": o.flags,
            }),
            o.exit,
        ),
        Err(e) => (
            json!({
                "status": "error",
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            }),
            exit_code(&e),
        ),
    };
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    // a closed pipe on the reading side is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
