//! Scenario files: named, reproducible checks with a machine-readable report.
//!
//! ```yaml
//! version: 1
//! scenarios:
//!   - id: newgen-g4
//!     kind: framed-identity
//!     anchor: "D_eta = D_omega^2 phi_1 phi_2 phi_3"
//!     params: { genus: 4, lhs: "e", rhs: "w w {chain}" }
//!     expect: { equal: true }
//! ```
//!
//! Word parameters may use the templates `{g}` (the genus) and `{chain}`
//! (`x1 x2 … x{g−1}`). Unknown fields anywhere are errors.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::{framed_of_word, is_full_turn, perm_of_word, FramedPermutation};
use crate::dihedral::{self, DihElement};
use crate::modp::{self, naive, reduce_mod_p, ModPMatrix, StabilizerChain};
use crate::realization::{exchange_realization_search, frozen_convention};
use crate::sampling::{random_eyeglass_spec, random_orthogonal_triple, random_powell_word, random_word};
use crate::symplectic::{
    conjugation_covariance_check, exchange_matrix, eyeglass_composition_check, eyeglass_map, flip_matrix,
    local_sl2_check, stabilize, EyeglassSpec, HomologyClass, SymplecticMatrix,
};
use crate::symplectic::eval_sp;
use crate::words::{Word, WordError};

/// The literal anchor for scenarios that test plumbing rather than a claim.
pub const PLUMBING: &str = "plumbing";

pub const PAPER_CORE: &str = include_str!("../scenarios/paper-core.yaml");
pub const THEOREM_SHADOW: &str = include_str!("../scenarios/theorem-shadow.yaml");

/// Scenario files shipped with the crate, by name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "paper-core" => Some(PAPER_CORE),
        "theorem-shadow" => Some(THEOREM_SHADOW),
        _ => None,
    }
}

pub const BUNDLED_NAMES: [&str; 2] = ["paper-core", "theorem-shadow"];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("schema error: {0}")]
    Yaml(#[from] serde_yaml::Error),
    #[error("unsupported version {0}; expected 1")]
    Version(u32),
    #[error("scenario `{id}`: field `{field}`: {message}")]
    Field { id: String, field: String, message: String },
    #[error("scenario `{id}`: {source}")]
    Word { id: String, source: WordError },
    #[error("duplicate scenario id `{0}`")]
    DuplicateId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    DihRelation,
    DihClosure,
    PermIdentity,
    FramedIdentity,
    SpIdentity,
    SpProperty,
    Membership,
    Sl2,
    RealizationSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectStatus {
    #[default]
    Pass,
    Finding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleExpect {
    pub from: usize,
    pub to: usize,
    pub framing: String,
}

/// Expected outcome. Which fields apply depends on the kind.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default)]
    pub status: ExpectStatus,
    pub element: Option<String>,
    pub size: Option<usize>,
    pub elements: Option<Vec<String>>,
    pub equal: Option<bool>,
    pub perm: Option<String>,
    pub framings: Option<Vec<String>>,
    pub bubble: Option<BubbleExpect>,
    pub holds: Option<bool>,
    pub member: Option<bool>,
    pub order: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    id: String,
    kind: Kind,
    #[serde(default)]
    anchor: String,
    #[serde(default)]
    params: serde_yaml::Mapping,
    #[serde(default)]
    expect: Expect,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: u32,
    #[serde(default)]
    scenarios: Vec<RawScenario>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DihRelationParams {
    pub product: Option<Vec<String>>,
    pub word: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DihClosureParams {
    #[serde(default)]
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityParams {
    pub genera: Vec<usize>,
    pub lhs: String,
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramedParams {
    pub genus: usize,
    pub lhs: String,
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    BraidRelation,
    EyeglassComposition,
    ConjugationCovariance,
    Homomorphism,
    Symplectic,
    StabilizeHomomorphism,
    LensesFixed,
    CentralFraming,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyParams {
    pub property: Property,
    pub genera: Vec<usize>,
    #[serde(default)]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subgroup {
    Powell,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipParams {
    pub genus: usize,
    pub p: u32,
    pub subgroup: Subgroup,
    /// Words, or one of `@exchanges`, `@flips`, `@eyeglasses`.
    #[serde(default)]
    pub targets: Vec<String>,
    /// Compare the chain against element-by-element closure, with this many
    /// random membership queries.
    #[serde(default)]
    pub crosscheck_queries: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmptyParams {}

/// A typed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    DihRelation(DihRelationParams),
    DihClosure(DihClosureParams),
    PermIdentity(IdentityParams),
    FramedIdentity(FramedParams),
    SpIdentity(IdentityParams),
    SpProperty(PropertyParams),
    Membership(MembershipParams),
    Sl2,
    RealizationSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub id: String,
    pub kind: Kind,
    pub anchor: String,
    pub check: Check,
    pub expect: Expect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
        })
    }
}

/// Result of one scenario; serializes with keys `id, status, witness, ms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub status: Status,
    pub witness: Value,
    pub ms: u64,
}

/// `{g}` and `{chain}` substitution.
pub fn expand_template(text: &str, g: usize) -> String {
    text.replace("{chain}", &Word::exchange_chain(g).to_string()).replace("{g}", &g.to_string())
}

fn field_error(id: &str, field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Field { id: id.to_string(), field: field.to_string(), message: message.into() }
}

fn params<T: for<'de> Deserialize<'de>>(id: &str, map: &serde_yaml::Mapping) -> Result<T, ScenarioError> {
    serde_yaml::from_value(serde_yaml::Value::Mapping(map.clone())).map_err(|e| field_error(id, "params", e.to_string()))
}

fn parse_word(id: &str, text: &str) -> Result<Word, ScenarioError> {
    Word::parse(text).map_err(|source| ScenarioError::Word { id: id.to_string(), source })
}

fn require<T>(id: &str, field: &str, value: Option<T>) -> Result<T, ScenarioError> {
    value.ok_or_else(|| field_error(id, field, "required for this kind"))
}

impl Scenario {
    fn from_raw(raw: RawScenario) -> Result<Scenario, ScenarioError> {
        let id = raw.id.as_str();
        let e = &raw.expect;
        let check = match raw.kind {
            Kind::DihRelation => {
                let p: DihRelationParams = params(id, &raw.params)?;
                match (&p.product, &p.word) {
                    (Some(list), None) => {
                        for s in list {
                            DihElement::parse(s).map_err(|err| field_error(id, "params.product", err.to_string()))?;
                        }
                    }
                    (None, Some(w)) => {
                        parse_word(id, w)?;
                    }
                    _ => return Err(field_error(id, "params", "exactly one of `product` or `word` is required")),
                }
                let el = require(id, "expect.element", e.element.as_ref())?;
                DihElement::parse(el).map_err(|err| field_error(id, "expect.element", err.to_string()))?;
                Check::DihRelation(p)
            }
            Kind::DihClosure => {
                let p: DihClosureParams = params(id, &raw.params)?;
                for s in p.generators.iter().chain(e.elements.iter().flatten()) {
                    DihElement::parse(s).map_err(|err| field_error(id, "params.generators", err.to_string()))?;
                }
                if e.size.is_none() && e.elements.is_none() {
                    return Err(field_error(id, "expect", "`size` or `elements` is required"));
                }
                Check::DihClosure(p)
            }
            Kind::PermIdentity | Kind::SpIdentity => {
                let p: IdentityParams = params(id, &raw.params)?;
                if p.genera.is_empty() {
                    return Err(field_error(id, "params.genera", "must list at least one genus"));
                }
                for &g in &p.genera {
                    parse_word(id, &expand_template(&p.lhs, g))?;
                    if let Some(r) = &p.rhs {
                        parse_word(id, &expand_template(r, g))?;
                    }
                }
                let wants = if raw.kind == Kind::PermIdentity { e.equal.is_some() || e.perm.is_some() } else { e.equal.is_some() };
                if !wants || (p.rhs.is_some() != e.equal.is_some()) {
                    return Err(field_error(id, "expect", "`equal` (with `rhs`) or `perm` (without) is required"));
                }
                if raw.kind == Kind::PermIdentity {
                    Check::PermIdentity(p)
                } else {
                    Check::SpIdentity(p)
                }
            }
            Kind::FramedIdentity => {
                let p: FramedParams = params(id, &raw.params)?;
                parse_word(id, &expand_template(&p.lhs, p.genus))?;
                if let Some(r) = &p.rhs {
                    parse_word(id, &expand_template(r, p.genus))?;
                }
                if p.rhs.is_some() != e.equal.is_some() {
                    return Err(field_error(id, "expect.equal", "`equal` goes together with `rhs`"));
                }
                for f in e.framings.iter().flatten().chain(e.bubble.as_ref().map(|b| &b.framing)) {
                    f.parse::<Rational64>().map_err(|_| field_error(id, "expect.framings", format!("bad fraction `{f}`")))?;
                }
                Check::FramedIdentity(p)
            }
            Kind::SpProperty => {
                let p: PropertyParams = params(id, &raw.params)?;
                if p.genera.is_empty() {
                    return Err(field_error(id, "params.genera", "must list at least one genus"));
                }
                require(id, "expect.holds", e.holds)?;
                Check::SpProperty(p)
            }
            Kind::Membership => {
                let p: MembershipParams = params(id, &raw.params)?;
                modp::check_prime(p.p).map_err(|err| field_error(id, "params.p", err.to_string()))?;
                for t in &p.targets {
                    if !t.starts_with('@') {
                        parse_word(id, &expand_template(t, p.genus))?;
                    } else if !["@exchanges", "@flips", "@eyeglasses"].contains(&t.as_str()) {
                        return Err(field_error(id, "params.targets", format!("unknown family `{t}`")));
                    }
                }
                if e.member.is_some() == p.targets.is_empty() {
                    return Err(field_error(id, "expect.member", "`member` goes together with `targets`"));
                }
                Check::Membership(p)
            }
            Kind::Sl2 => {
                let _: EmptyParams = params(id, &raw.params)?;
                Check::Sl2
            }
            Kind::RealizationSearch => {
                let _: EmptyParams = params(id, &raw.params)?;
                Check::RealizationSearch
            }
        };
        Ok(Scenario { id: raw.id, kind: raw.kind, anchor: raw.anchor, check, expect: raw.expect })
    }
}

/// Parses and validates a scenario file.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>, ScenarioError> {
    let raw: RawFile = serde_yaml::from_str(text)?;
    if raw.version != 1 {
        return Err(ScenarioError::Version(raw.version));
    }
    let mut ids = HashSet::new();
    let mut out = Vec::with_capacity(raw.scenarios.len());
    for s in raw.scenarios {
        if !ids.insert(s.id.clone()) {
            return Err(ScenarioError::DuplicateId(s.id));
        }
        out.push(Scenario::from_raw(s)?);
    }
    Ok(out)
}

/// Problems that make a file unfit to ship even though it parses.
pub fn lint(text: &str) -> Result<Vec<String>, ScenarioError> {
    let scenarios = parse_scenarios(text)?;
    let mut problems = Vec::new();
    for s in &scenarios {
        let anchor = s.anchor.trim();
        if anchor.is_empty() {
            problems.push(format!("{}: missing anchor (a claim, or `{PLUMBING}`)", s.id));
        } else if anchor != PLUMBING && anchor.chars().filter(|c| !c.is_whitespace()).count() < 8 {
            problems.push(format!("{}: anchor `{anchor}` is too short to state a claim", s.id));
        }
    }
    Ok(problems)
}

/// Outcome of a check before status assignment.
struct Outcome {
    ok: bool,
    witness: Value,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { ok: true, witness: Value::Null }
    }

    fn fail(witness: Value) -> Self {
        Outcome { ok: false, witness }
    }

    fn with(ok: bool, witness: Value) -> Self {
        Outcome { ok, witness }
    }
}

fn matrix_json(m: &SymplecticMatrix) -> Value {
    Value::Array(
        m.rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn modp_json(m: &ModPMatrix) -> Value {
    Value::String(m.to_string())
}

fn fallible<F: FnOnce() -> Result<Outcome, String>>(f: F) -> Outcome {
    f().unwrap_or_else(|message| Outcome::fail(json!({ "error": message })))
}

pub fn run_scenario(s: &Scenario) -> Report {
    let start = Instant::now();
    let outcome = fallible(|| run_check(s));
    let ms = start.elapsed().as_millis() as u64;
    let status = if !outcome.ok {
        Status::Fail
    } else if s.expect.status == ExpectStatus::Finding {
        Status::Finding
    } else {
        Status::Pass
    };
    Report { id: s.id.clone(), status, witness: outcome.witness, ms }
}

fn run_check(s: &Scenario) -> Result<Outcome, String> {
    let e = &s.expect;
    let err = |x: &dyn fmt::Display| x.to_string();
    let word = |text: &str, g: usize| Word::parse(&expand_template(text, g)).map_err(|x| err(&x));
    match &s.check {
        Check::DihRelation(p) => {
            let got = match (&p.product, &p.word) {
                (Some(list), _) => {
                    let els: Vec<DihElement> = list.iter().map(|t| DihElement::parse(t)).collect::<Result<_, _>>().map_err(|x| err(&x))?;
                    dihedral::product(&els)
                }
                (_, Some(w)) => {
                    let w = Word::parse(w).map_err(|x| err(&x))?;
                    DihElement::of_word(&w).map_err(|x| err(&x))?
                }
                _ => unreachable!("validated at load"),
            };
            let want = DihElement::parse(e.element.as_deref().expect("validated")).map_err(|x| err(&x))?;
            Ok(if got == want { Outcome::pass() } else { Outcome::fail(json!({ "got": got.to_string() })) })
        }
        Check::DihClosure(p) => {
            let gens: Vec<DihElement> = p.generators.iter().map(|t| DihElement::parse(t)).collect::<Result<_, _>>().map_err(|x| err(&x))?;
            let closure = dihedral::closure(&gens);
            let mut ok = e.size.is_none_or(|n| n == closure.len());
            if let Some(list) = &e.elements {
                let mut want: Vec<DihElement> = list.iter().map(|t| DihElement::parse(t)).collect::<Result<_, _>>().map_err(|x| err(&x))?;
                want.sort();
                ok &= want == closure;
            }
            let listed: Vec<String> = closure.iter().map(|x| x.to_string()).collect();
            Ok(Outcome::with(ok, json!({ "size": closure.len(), "elements": listed })))
        }
        Check::PermIdentity(p) => {
            for &g in &p.genera {
                let lhs = perm_of_word(g, &word(&p.lhs, g)?).map_err(|x| err(&x))?;
                let matches = match (&p.rhs, &e.perm) {
                    (Some(r), _) => {
                        let rhs = perm_of_word(g, &word(r, g)?).map_err(|x| err(&x))?;
                        let same = lhs == rhs;
                        if same != e.equal.unwrap_or(true) {
                            return Ok(Outcome::fail(json!({ "genus": g, "lhs": lhs.to_string(), "rhs": rhs.to_string() })));
                        }
                        true
                    }
                    (None, Some(want)) => lhs.to_string() == *want,
                    _ => unreachable!("validated at load"),
                };
                if !matches {
                    return Ok(Outcome::fail(json!({ "genus": g, "lhs": lhs.to_string() })));
                }
            }
            Ok(Outcome::pass())
        }
        Check::FramedIdentity(p) => {
            let g = p.genus;
            let lhs = framed_of_word(g, &word(&p.lhs, g)?).map_err(|x| err(&x))?;
            let mut ok = true;
            let mut witness = json!({ "lhs": lhs.to_string() });
            if let Some(r) = &p.rhs {
                let rhs = framed_of_word(g, &word(r, g)?).map_err(|x| err(&x))?;
                ok &= (lhs == rhs) == e.equal.unwrap_or(true);
                witness["rhs"] = Value::String(rhs.to_string());
            }
            if let Some(want) = &e.perm {
                ok &= lhs.perm().to_string() == *want;
            }
            if let Some(list) = &e.framings {
                let want: Vec<Rational64> = list.iter().map(|f| f.parse().expect("validated")).collect();
                ok &= lhs.framings() == want.as_slice();
            }
            if let Some(b) = &e.bubble {
                let framing: Rational64 = b.framing.parse().expect("validated");
                ok &= b.from >= 1 && b.from <= g && lhs.perm().apply(b.from) == b.to && lhs.framing_of(b.from) == framing;
            }
            Ok(if ok { Outcome::pass() } else { Outcome::fail(witness) })
        }
        Check::SpIdentity(p) => {
            let rhs_text = p.rhs.as_deref().expect("validated");
            for &g in &p.genera {
                let lhs = eval_sp(g, &word(&p.lhs, g)?).map_err(|x| err(&x))?;
                let rhs = eval_sp(g, &word(rhs_text, g)?).map_err(|x| err(&x))?;
                if (lhs == rhs) != e.equal.expect("validated") {
                    return Ok(Outcome::fail(json!({ "genus": g, "lhs": matrix_json(&lhs), "rhs": matrix_json(&rhs) })));
                }
            }
            Ok(Outcome::pass())
        }
        Check::SpProperty(p) => {
            let holds = run_property(p)?;
            let want = e.holds.expect("validated");
            Ok(match holds {
                None if want => Outcome::pass(),
                None => Outcome::fail(json!({ "note": "property held but was expected to fail" })),
                Some(w) if !want => Outcome::with(true, w),
                Some(w) => Outcome::fail(w),
            })
        }
        Check::Membership(p) => run_membership(p, e),
        Check::Sl2 => {
            let r = local_sl2_check();
            let failed: Vec<&str> = r.checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
            Ok(if failed.is_empty() {
                Outcome::pass()
            } else {
                Outcome::fail(json!({ "failed": failed, "product": r.product }))
            })
        }
        Check::RealizationSearch => {
            let r = exchange_realization_search();
            Ok(match &r.found {
                None => Outcome::with(true, json!({ "tried": r.candidates_tried, "matches": 0 })),
                Some((conv, product)) => {
                    let ok = *conv == frozen_convention() && r.squares_to_identity() == Some(true);
                    Outcome::with(
                        ok,
                        json!({
                            "convention": conv.to_string(),
                            "tried": r.candidates_tried,
                            "matches": r.matches,
                            "product": matrix_json(product),
                        }),
                    )
                }
            })
        }
    }
}

/// Returns `None` when the property held on every trial, or a witness.
fn run_property(p: &PropertyParams) -> Result<Option<Value>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let err = |x: &dyn fmt::Display| x.to_string();
    for &g in &p.genera {
        match p.property {
            Property::BraidRelation => {
                for i in 1..g.saturating_sub(1) {
                    let l = Word::parse(&format!("x{i} x{} x{i}", i + 1)).expect("static");
                    let r = Word::parse(&format!("x{} x{i} x{}", i + 1, i + 1)).expect("static");
                    let perm_ok = perm_of_word(g, &l).map_err(|x| err(&x))? == perm_of_word(g, &r).map_err(|x| err(&x))?;
                    let sp_ok = eval_sp(g, &l).map_err(|x| err(&x))? == eval_sp(g, &r).map_err(|x| err(&x))?;
                    if !(perm_ok && sp_ok) {
                        return Ok(Some(json!({ "genus": g, "i": i, "perm": perm_ok, "sp": sp_ok })));
                    }
                }
            }
            Property::EyeglassComposition => {
                for _ in 0..p.trials {
                    let (a, b, m) = random_orthogonal_triple(&mut rng, g);
                    let c = eyeglass_composition_check(&a, &b, &m).map_err(|x| err(&x))?;
                    if !c.passed() {
                        return Ok(Some(json!({
                            "genus": g, "lens_a": a.to_string(), "lens_b": b.to_string(), "mu": m.to_string(),
                            "lhs": matrix_json(&c.lhs), "rhs": matrix_json(&c.rhs),
                        })));
                    }
                }
            }
            Property::ConjugationCovariance => {
                for _ in 0..p.trials {
                    let spec = random_eyeglass_spec(&mut rng, g);
                    let w = random_powell_word(&mut rng, g, 8);
                    let m = eval_sp(g, &w).map_err(|x| err(&x))?;
                    let c = conjugation_covariance_check(&spec, &m).map_err(|x| err(&x))?;
                    if !c.passed() {
                        return Ok(Some(json!({ "genus": g, "word": w.to_string(), "lhs": matrix_json(&c.lhs), "rhs": matrix_json(&c.rhs) })));
                    }
                }
            }
            Property::Homomorphism => {
                for _ in 0..p.trials {
                    let (lu, lv) = (rng.gen_range(0..12), rng.gen_range(0..12));
                    let u = random_word(&mut rng, g, lu);
                    let v = random_word(&mut rng, g, lv);
                    let uv = u.concat(&v);
                    let sp = eval_sp(g, &uv).map_err(|x| err(&x))?
                        == &eval_sp(g, &u).map_err(|x| err(&x))? * &eval_sp(g, &v).map_err(|x| err(&x))?;
                    let fr = framed_of_word(g, &uv).map_err(|x| err(&x))?
                        == framed_of_word(g, &u).map_err(|x| err(&x))?.compose(&framed_of_word(g, &v).map_err(|x| err(&x))?);
                    if !(sp && fr) {
                        return Ok(Some(json!({ "genus": g, "u": u.to_string(), "v": v.to_string(), "sp": sp, "framed": fr })));
                    }
                }
            }
            Property::Symplectic => {
                for _ in 0..p.trials {
                    let w = random_word(&mut rng, g, 10);
                    let m = eval_sp(g, &w).map_err(|x| err(&x))?;
                    if !m.is_symplectic() {
                        return Ok(Some(json!({ "genus": g, "word": w.to_string() })));
                    }
                }
            }
            Property::StabilizeHomomorphism => {
                for _ in 0..p.trials {
                    let a = eval_sp(g, &random_word(&mut rng, g, 6)).map_err(|x| err(&x))?;
                    let b = eval_sp(g, &random_word(&mut rng, g, 6)).map_err(|x| err(&x))?;
                    let lhs = stabilize(&(&a * &b)).map_err(|x| err(&x))?;
                    let rhs = &stabilize(&a).map_err(|x| err(&x))? * &stabilize(&b).map_err(|x| err(&x))?;
                    if lhs != rhs {
                        return Ok(Some(json!({ "genus": g, "lhs": matrix_json(&lhs), "rhs": matrix_json(&rhs) })));
                    }
                }
            }
            Property::LensesFixed => {
                for _ in 0..p.trials {
                    let spec = random_eyeglass_spec(&mut rng, g);
                    let m = eyeglass_map(&spec);
                    if m.apply(spec.lens_a()) != *spec.lens_a() || m.apply(spec.lens_b()) != *spec.lens_b() {
                        return Ok(Some(json!({ "genus": g, "lens_a": spec.lens_a().to_string(), "lens_b": spec.lens_b().to_string() })));
                    }
                }
            }
            Property::CentralFraming => {
                let x: FramedPermutation = crate::braid::central_framing(g).map_err(|x| err(&x))?;
                if !is_full_turn(&x) {
                    return Ok(Some(json!({ "genus": g, "got": x.to_string() })));
                }
            }
        }
    }
    Ok(None)
}

/// Every nonzero vector of `ℤ^g` with entries in `{−1, 0, 1}`.
fn unit_combinations(g: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(g as u32);
    for mut code in 0..total {
        let mut v = Vec::with_capacity(g);
        for _ in 0..g {
            v.push((code % 3) as i64 - 1);
            code /= 3;
        }
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

/// Eyeglass twists whose lenses are a `±1`-combination of meridians and a
/// `±1`-combination of longitudes with zero pairing.
pub fn a_side_b_side_eyeglasses(g: usize) -> Vec<EyeglassSpec> {
    let combos = unit_combinations(g);
    let mut out = Vec::new();
    for c in &combos {
        for d in &combos {
            let dot: i64 = c.iter().zip(d).map(|(x, y)| x * y).sum();
            if dot != 0 {
                continue;
            }
            let mut a = vec![0i64; 2 * g];
            let mut b = vec![0i64; 2 * g];
            for i in 0..g {
                a[2 * i] = c[i];
                b[2 * i + 1] = d[i];
            }
            out.push(
                EyeglassSpec::new(HomologyClass::from_i64s(&a), HomologyClass::from_i64s(&b), 1)
                    .expect("orthogonal by construction"),
            );
        }
    }
    out
}

/// Expands membership targets into labeled integer matrices.
pub fn membership_targets(g: usize, targets: &[String]) -> Result<Vec<(String, SymplecticMatrix)>, String> {
    let mut out = Vec::new();
    for t in targets {
        match t.as_str() {
            "@exchanges" => {
                for i in 1..=g {
                    for j in i + 1..=g {
                        out.push((format!("exchange({i},{j})"), exchange_matrix(g, i, j).map_err(|e| e.to_string())?));
                    }
                }
            }
            "@flips" => {
                for i in 1..=g {
                    out.push((format!("flip({i})"), flip_matrix(g, i).map_err(|e| e.to_string())?));
                }
            }
            "@eyeglasses" => {
                for spec in a_side_b_side_eyeglasses(g) {
                    out.push((format!("eyeglass({},{})", spec.lens_a(), spec.lens_b()), eyeglass_map(&spec)));
                }
            }
            w => {
                let word = Word::parse(&expand_template(w, g)).map_err(|e| e.to_string())?;
                out.push((word.to_string(), eval_sp(g, &word).map_err(|e| e.to_string())?));
            }
        }
    }
    Ok(out)
}

fn generators(g: usize, subgroup: Subgroup) -> Result<Vec<SymplecticMatrix>, String> {
    match subgroup {
        Subgroup::Powell => modp::powell_generators(g).map_err(|e| e.to_string()),
        Subgroup::Full => Ok(modp::full_generators(g)),
    }
}

fn run_membership(p: &MembershipParams, e: &Expect) -> Result<Outcome, String> {
    let err = |x: &dyn fmt::Display| x.to_string();
    let gens_z = generators(p.genus, p.subgroup)?;
    let gens: Vec<ModPMatrix> = gens_z.iter().map(|m| reduce_mod_p(m, p.p)).collect::<Result<_, _>>().map_err(|x| err(&x))?;
    let chain = StabilizerChain::build(p.genus, p.p, &gens).map_err(|x| err(&x))?;
    let order = chain.order();
    let mut witness = json!({
        "order": order.to_string(),
        "sp_order": modp::symplectic_group_order(p.genus, p.p).to_string(),
        "orbits": chain.orbit_sizes(),
    });
    let mut ok = true;
    if let Some(want) = &e.order {
        let want: BigUint = want.parse().map_err(|_| format!("bad order `{want}`"))?;
        ok &= want == order;
    }
    let targets = membership_targets(p.genus, &p.targets)?;
    let reduced: Vec<(String, ModPMatrix)> = targets
        .iter()
        .map(|(name, m)| reduce_mod_p(m, p.p).map(|r| (name.clone(), r)))
        .collect::<Result<_, _>>()
        .map_err(|x| err(&x))?;
    if let Some(want) = e.member {
        let mut members = 0usize;
        for (name, m) in &reduced {
            let sift = chain.sift(m).map_err(|x| err(&x))?;
            if sift.member {
                members += 1;
            }
            if sift.member != want && ok {
                ok = false;
                witness["first_mismatch"] = json!({ "target": name, "member": sift.member, "residue": modp_json(&sift.residue) });
            }
        }
        witness["targets"] = json!(reduced.len());
        witness["members"] = json!(members);
    }
    if let Some(queries) = p.crosscheck_queries {
        if !naive::feasible(p.genus, p.p) {
            return Err(format!("genus {} mod {} is too large to enumerate", p.genus, p.p));
        }
        let elements = naive::closure(p.genus, p.p, &gens);
        let naive_order = BigUint::from(elements.len());
        let mut agree = naive_order == order;
        for (_, m) in &reduced {
            agree &= naive::contains(&elements, m) == chain.contains(m).map_err(|x| err(&x))?;
        }
        // queries drawn from the whole symplectic group, so both answers occur
        let full: Vec<ModPMatrix> = modp::full_generators(p.genus)
            .iter()
            .map(|m| reduce_mod_p(m, p.p))
            .collect::<Result<_, _>>()
            .map_err(|x| err(&x))?;
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let mut yes = 0;
        for _ in 0..queries {
            let mut q = ModPMatrix::identity(p.genus, p.p);
            for _ in 0..rng.gen_range(0..40) {
                q = q.mul(&full[rng.gen_range(0..full.len())]);
            }
            if rng.gen_bool(0.5) {
                // bias half the queries towards the subgroup
                q = ModPMatrix::identity(p.genus, p.p);
                for _ in 0..rng.gen_range(0..40) {
                    q = q.mul(&gens[rng.gen_range(0..gens.len().max(1))]);
                }
            }
            let c = chain.contains(&q).map_err(|x| err(&x))?;
            yes += usize::from(c);
            agree &= c == naive::contains(&elements, &q);
        }
        witness["naive_order"] = json!(naive_order.to_string());
        witness["queries"] = json!(queries);
        witness["query_members"] = json!(yes);
        ok &= agree;
    }
    Ok(Outcome::with(ok, witness))
}

/// Runs scenarios on up to `jobs` threads; output order follows input order.
pub fn run_all(scenarios: &[Scenario], jobs: usize) -> Vec<Report> {
    use rayon::prelude::*;
    if jobs <= 1 {
        return scenarios.iter().map(run_scenario).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| scenarios.par_iter().map(run_scenario).collect()),
        Err(_) => scenarios.iter().map(run_scenario).collect(),
    }
}

pub fn run_scenario_text(text: &str, jobs: usize) -> Result<Vec<Report>, ScenarioError> {
    Ok(run_all(&parse_scenarios(text)?, jobs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(reports: &[Report], format: Format) -> Vec<u8> {
    match format {
        Format::Json => serde_json::to_vec(reports).expect("reports serialize"),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let witness = if r.witness.is_null() { String::new() } else { format!("  {}", r.witness) };
                s.push_str(&format!("{:<8} {} ({} ms){witness}\n", r.status.to_string(), r.id, r.ms));
            }
            s.into_bytes()
        }
    }
}

/// Whether the run should exit successfully.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file() {
        let reports = run_scenario_text("version: 1\nscenarios: []\n", 1).unwrap();
        assert!(reports.is_empty());
        assert!(all_passed(&reports));
        assert_eq!(emit_report(&reports, Format::Json), b"[]");
        assert!(run_scenario_text("version: 1\n", 1).unwrap().is_empty());
    }

    #[test]
    fn json_shape() {
        let r = vec![Report { id: "newgen-g4".into(), status: Status::Pass, witness: Value::Null, ms: 3 }];
        let s = String::from_utf8(emit_report(&r, Format::Json)).unwrap();
        assert_eq!(s, r#"[{"id":"newgen-g4","status":"pass","witness":null,"ms":3}]"#);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_scenarios("version: 2\n"), Err(ScenarioError::Version(2))));
        assert!(matches!(parse_scenarios("version: 1\nextra: 3\n"), Err(ScenarioError::Yaml(_))));
        let unknown_kind = "version: 1\nscenarios:\n  - id: a\n    kind: nope\n";
        let e = parse_scenarios(unknown_kind).unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
        let unknown_field = "version: 1\nscenarios:\n  - id: a\n    kind: sl2\n    colour: red\n";
        assert!(matches!(parse_scenarios(unknown_field), Err(ScenarioError::Yaml(_))));
        let bad_param = "version: 1\nscenarios:\n  - id: a\n    kind: sl2\n    params: { x: 1 }\n";
        assert!(matches!(parse_scenarios(bad_param), Err(ScenarioError::Field { .. })));
        let bad_word = "version: 1\nscenarios:\n  - id: a\n    kind: sp-identity\n    params: { genera: [2], lhs: \"q\", rhs: \"e\" }\n    expect: { equal: true }\n";
        assert!(matches!(parse_scenarios(bad_word), Err(ScenarioError::Word { .. })));
        let dup = "version: 1\nscenarios:\n  - { id: a, kind: sl2 }\n  - { id: a, kind: sl2 }\n";
        assert!(matches!(parse_scenarios(dup), Err(ScenarioError::DuplicateId(_))));
    }

    #[test]
    fn failing_sp_identity_has_both_matrices() {
        let text = "version: 1\nscenarios:\n  - id: bad\n    kind: sp-identity\n    anchor: plumbing\n    params: { genera: [2], lhs: \"t\", rhs: \"e\" }\n    expect: { equal: true }\n";
        let r = run_scenario_text(text, 1).unwrap();
        assert_eq!(r[0].status, Status::Fail);
        assert!(r[0].witness["lhs"].is_array() && r[0].witness["rhs"].is_array());
        assert!(!all_passed(&r));
    }

    #[test]
    fn finding_carries_order() {
        let text = "version: 1\nscenarios:\n  - id: ord\n    kind: membership\n    anchor: plumbing\n    params: { genus: 2, p: 2, subgroup: powell }\n    expect: { status: finding }\n";
        let r = run_scenario_text(text, 1).unwrap();
        assert_eq!(r[0].status, Status::Finding);
        assert_eq!(r[0].witness["order"], json!("6"));
    }

    #[test]
    fn lint_flags_missing_anchor() {
        let text = "version: 1\nscenarios:\n  - { id: a, kind: sl2 }\n  - { id: b, kind: sl2, anchor: plumbing }\n";
        let problems = lint(text).unwrap();
        assert_eq!(problems.len(), 1);
        assert!(problems[0].starts_with("a:"));
    }

    #[test]
    fn eyeglass_family_is_orthogonal() {
        let specs = a_side_b_side_eyeglasses(3);
        assert!(!specs.is_empty());
        for s in &specs {
            assert!(s.lens_a().pairing(s.lens_b()) == num_bigint::BigInt::from(0));
        }
    }

    #[test]
    fn templates() {
        assert_eq!(expand_template("w w {chain}", 4), "w w x1 x2 x3");
        assert_eq!(expand_template("e^{g}", 3), "e^3");
    }
}
