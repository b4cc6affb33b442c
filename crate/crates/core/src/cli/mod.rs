//! The command-line surface: one subcommand per operation, JSON on stdin and
//! stdout, and a `verify` subcommand replaying every desk check.
//!
//! Exit codes: 0 success, 1 malformed input, 2 domain error. Errors are
//! reported on stdout as `{"error": {"kind": .., "message": ..}}`.

pub mod schema;
pub mod verify;

use crate::collections::{self, Collection4};
use crate::error::Error;
use crate::k0::{self, K0Class};
use crate::surface::SurfaceParams;
use crate::tower::{self, TowerEntry, TowerHeader};
use crate::twist::SphericalClass;
use schema::{InputError, Request, TwistDirection};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

/// Seed for the randomized checks in `verify` unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0x4b30_f2f2;
pub const DEFAULT_DEPTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    Euler,
    Cohom,
    Twist,
    Tower,
    Classify,
    Profile,
    ExtTable,
    Mutate,
    OrbitSearch,
    Enumerate,
    Verify,
}

impl Subcommand {
    pub const ALL: [Subcommand; 11] = [
        Subcommand::Euler,
        Subcommand::Cohom,
        Subcommand::Twist,
        Subcommand::Tower,
        Subcommand::Classify,
        Subcommand::Profile,
        Subcommand::ExtTable,
        Subcommand::Mutate,
        Subcommand::OrbitSearch,
        Subcommand::Enumerate,
        Subcommand::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Euler => "euler",
            Subcommand::Cohom => "cohom",
            Subcommand::Twist => "twist",
            Subcommand::Tower => "tower",
            Subcommand::Classify => "classify",
            Subcommand::Profile => "profile",
            Subcommand::ExtTable => "ext-table",
            Subcommand::Mutate => "mutate",
            Subcommand::OrbitSearch => "orbit-search",
            Subcommand::Enumerate => "enumerate",
            Subcommand::Verify => "verify",
        }
    }

    /// Subcommands whose mathematics only exists on 𝔽₂.
    pub fn requires_f2(self) -> bool {
        matches!(
            self,
            Subcommand::Twist | Subcommand::Tower | Subcommand::Classify | Subcommand::Profile
        )
    }

    pub fn reads_stdin(self) -> bool {
        self != Subcommand::Verify
    }
}

impl FromStr for Subcommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown subcommand {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}, expected json or text")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invocation {
    pub subcommand: Subcommand,
    pub n: u32,
    pub format: Format,
    pub depth: usize,
    pub tower_max: i64,
    pub seed: u64,
}

impl Invocation {
    pub fn new(subcommand: Subcommand) -> Self {
        Invocation {
            subcommand,
            n: 2,
            format: Format::Json,
            depth: DEFAULT_DEPTH,
            tower_max: tower::DEFAULT_TOWER_MAX,
            seed: DEFAULT_SEED,
        }
    }

    pub fn surface(&self) -> SurfaceParams {
        SurfaceParams::new(self.n)
    }
}

/// Exit code and stdout payload of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
}

struct Output {
    json: Value,
    text: String,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Output {
            json: serde_json::to_value(value).expect("response types serialize to JSON"),
            text,
        }
    }
}

enum Failure {
    Input(InputError),
    Domain(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Runs one invocation against a stdin payload.
pub fn run(inv: &Invocation, stdin: &str) -> Outcome {
    match execute(inv, stdin) {
        Ok(out) => Outcome {
            exit_code: EXIT_OK,
            stdout: match inv.format {
                Format::Json => format!("{}\n", out.json),
                Format::Text => out.text,
            },
        },
        Err(Failure::Input(e)) => error_outcome(inv.format, EXIT_INPUT, e.kind(), &e.to_string()),
        Err(Failure::Domain(e)) => error_outcome(inv.format, EXIT_DOMAIN, e.kind(), &e.to_string()),
    }
}

fn error_outcome(format: Format, exit_code: i32, kind: &str, message: &str) -> Outcome {
    let stdout = match format {
        Format::Json => format!("{}\n", json!({"error": {"kind": kind, "message": message}})),
        Format::Text => format!("error ({kind}): {message}\n"),
    };
    Outcome { exit_code, stdout }
}

fn check_invocation(inv: &Invocation) -> Result<(), InputError> {
    schema::validate_n(inv.n)?;
    if inv.depth > schema::MAX_DEPTH {
        return Err(InputError::OutOfRange(format!(
            "depth {} exceeds {}",
            inv.depth,
            schema::MAX_DEPTH
        )));
    }
    if !(0..=schema::MAX_TOWER).contains(&inv.tower_max) {
        return Err(InputError::OutOfRange(format!(
            "tower-max {} outside 0..={}",
            inv.tower_max,
            schema::MAX_TOWER
        )));
    }
    Ok(())
}

fn execute(inv: &Invocation, stdin: &str) -> Result<Output, Failure> {
    check_invocation(inv)?;
    let request = schema::decode_request(inv.subcommand, stdin)?;
    if inv.subcommand.requires_f2() && inv.n != 2 {
        return Err(Error::RequiresF2(inv.n).into());
    }
    let s = inv.surface();
    let out = match request {
        Request::Euler(r) => {
            let chi = k0::euler_form(s, r.v, r.w)?;
            Output::new(&json!({ "chi": chi }), format!("χ = {chi}\n"))
        }
        Request::Cohom(d) => {
            let h = s.line_bundle_cohomology(d);
            let chi = h.euler_char();
            Output::new(
                &json!({"h0": h.h0, "h1": h.h1, "h2": h.h2, "chi": chi}),
                format!("h•(O({d})) on {s} = {h}, χ = {chi}\n"),
            )
        }
        Request::Twist(r) => {
            let a = SphericalClass::new(r.a);
            let v = match r.direction {
                TwistDirection::Twist => a.twist(r.class)?,
                TwistDirection::Inverse => a.inverse_twist(r.class)?,
            };
            Output::new(&v, format!("{v}\n"))
        }
        Request::Profile(v) => {
            let p = tower::restriction_profile(v)?;
            Output::new(&p, format!("b0 = {}, s = {}, R = {}\n", p.b0, p.s, p.rank))
        }
        Request::Tower(v) => {
            let (header, entries) = tower::tower_report(v, -inv.tower_max..=inv.tower_max)?;
            let text = render_tower(&header, &entries);
            Output::new(&json!({ "header": header, "entries": entries }), text)
        }
        Request::Classify(v) => {
            let rep = tower::classify_sheaves_sharing_class(v, inv.tower_max)?;
            let mut text = render_tower(&rep.header, &rep.entries);
            let _ = writeln!(
                text,
                "E_-1 ≅ E_0: {} ({} semantics)",
                rep.bundle_coincides_with_e0, rep.semantics
            );
            Output::new(&rep, text)
        }
        Request::ExtTable(r) => {
            let table = tower::ext_table(r.t, r.f)?;
            let rows: Vec<Value> = table
                .rows()
                .map(|(x, y, e)| {
                    json!({"from": x.name(), "to": y.name(), "ext": e, "chi": table.chi(x, y)})
                })
                .collect();
            let mut text = format!("t = {}, f = {}\n", r.t, r.f);
            for (x, y, e) in table.rows() {
                let _ = writeln!(text, "({}, {}): {:?}", x.name(), y.name(), e);
            }
            Output::new(&json!({"t": r.t, "f": r.f, "rows": rows}), text)
        }
        Request::Mutate(r) => {
            let c = collections::apply_group_element(s, &r.collection, &r.element())?;
            let exceptional = collections::is_exceptional_collection(s, &c);
            Output::new(
                &json!({"collection": c, "exceptional": exceptional}),
                format!("{c}\nexceptional: {exceptional}\n"),
            )
        }
        Request::OrbitSearch(r) => {
            let target = match r.target {
                Some(t) => t,
                None if inv.n == 2 => collections::standard_collection(),
                None => return Err(Error::RequiresF2(inv.n).into()),
            };
            let g = collections::orbit_search(s, &r.source, &target, inv.depth)?;
            Output::new(&g, format!("{g}\n"))
        }
        Request::Enumerate(b) => {
            let classes = k0::enumerate_exceptional_classes(s, &b);
            let text = render_classes(&classes);
            Output::new(&classes, text)
        }
        Request::Verify => {
            let rep = verify::verify_suite(s, inv.seed);
            let text = rep.render_text();
            Output::new(&rep, text)
        }
    };
    Ok(out)
}

fn render_tower(header: &TowerHeader, entries: &[TowerEntry]) -> String {
    let p = header.profile;
    let mut out = format!(
        "root {} b0 = {} s = {} R = {}\n",
        header.root, p.b0, p.s, p.rank
    );
    for e in entries {
        let _ = writeln!(
            out,
            "E_{:<3} {:<18} O_C({})^{} free {}",
            e.i, e.kind, e.torsion_degree, e.torsion_mult, e.free_part
        );
    }
    out
}

fn render_classes(classes: &[K0Class]) -> String {
    let mut out = String::new();
    for v in classes {
        let _ = writeln!(out, "{v}");
    }
    let _ = writeln!(out, "{} classes", classes.len());
    out
}

/// The collection the `mutate`/`orbit-search` examples start from.
pub fn standard_collection_json() -> String {
    serde_json::to_string::<Collection4>(&collections::standard_collection())
        .expect("collections serialize")
}
