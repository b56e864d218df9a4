//! JSON documents: a frame plus named objects.
//!
//! ```json
//! {
//!   "frame": "(0,0,12)",
//!   "forms": {"eta": "e3", "omega": "e1 + i*e2"},
//!   "vectors": {"R": "E3"},
//!   "sections": {"s": {"X": "E1", "f": "1", "xi": "-e1"}},
//!   "twists": {"contact": {"H2": "d($eta)"}},
//!   "pairs": {"p": {"phi": "$omega", "psi": "$eta ^ $omega", "e1": {"xi": "$eta"}, "e2": {"X": "$R"}}}
//! }
//! ```
//!
//! The frame is a structure-constant string, `{"coordinate": n}`, or
//! `{"variables": k, "d": [form, …]}`. Forms, vectors and functions are
//! notation strings (which may use `$name` for other named forms and
//! vectors) or their canonical encodings. Sections, twists, transforms and
//! pairs may be given inline or by name.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{Map, Value};

use crate::courant::{ContactSection, GenSection, Twists};
use crate::error::{Error, Result};
use crate::exterior::{Poly, Polyform, Scalar, Vector};
use crate::frame::{parse_nil, FrameAlgebra};
use crate::notation::{self, Context};
use crate::spinor::{pythagorean_mu, MixedPair};
use crate::structures::{BbaTransform, Bundle, CechDatum, FrameEndo, GenContactMetric, SekiyaQuadruple};

use super::codec::{decode_form_canonical, decode_poly, decode_scalar, decode_vector_canonical};

#[derive(Clone, Debug)]
pub struct Document {
    pub frame: FrameAlgebra,
    pub forms: BTreeMap<String, Polyform>,
    pub vectors: BTreeMap<String, Vector>,
    pub sections: BTreeMap<String, ContactSection>,
    pub twists: BTreeMap<String, Twists>,
    pub transforms: BTreeMap<String, BbaTransform>,
    pub pairs: BTreeMap<String, MixedPair>,
    pub quadruples: BTreeMap<String, SekiyaQuadruple>,
    pub metrics: BTreeMap<String, GenContactMetric>,
    pub cech: BTreeMap<String, CechDatum>,
    pub sample_points: Vec<Vec<BigRational>>,
}

const KEYS: [&str; 11] = [
    "frame", "forms", "vectors", "sections", "twists", "transforms", "pairs", "quadruples", "metrics", "cech",
    "sample_points",
];

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn ctx_err(e: Error, what: &str) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{what}: {m}")),
        Error::Parse { position, message } => Error::Input(format!("{what}: parse error at {position}: {message}")),
        other => Error::Input(format!("{what}: {other}")),
    }
}

fn table<'v>(root: &'v Map<String, Value>, key: &str) -> Result<Vec<(&'v String, &'v Value)>> {
    match root.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => Ok(m.iter().collect()),
        Some(other) => Err(input(format!("\"{key}\" must be an object, found {other}"))),
    }
}

pub fn parse_frame(v: &Value) -> Result<FrameAlgebra> {
    let frame = match v {
        Value::String(s) => parse_nil(s, None)?,
        Value::Object(m) => {
            if let Some(s) = m.get("nil").and_then(Value::as_str) {
                parse_nil(s, None)?
            } else if let Some(n) = m.get("coordinate").and_then(Value::as_u64) {
                FrameAlgebra::coordinate(n as usize)
            } else if let Some(Value::Array(ds)) = m.get("d") {
                let k = m.get("variables").and_then(Value::as_u64).unwrap_or(0) as usize;
                let n = ds.len();
                let ctx = Context::new(n);
                let d = ds
                    .iter()
                    .map(|x| form_value(x, &ctx))
                    .collect::<Result<Vec<_>>>()?;
                FrameAlgebra::mixed(k, d)?
            } else {
                return Err(input("frame object needs \"nil\", \"coordinate\" or \"d\""));
            }
        }
        other => return Err(input(format!("bad frame {other}"))),
    };
    let r = frame.validate();
    if let Some(c) = r.failures().next() {
        return Err(input(format!("frame fails {}: d² ≠ 0", c.name)));
    }
    Ok(frame)
}

/// `{"dim", "variables", "d": [canonical forms], "nil"}`; the structure-
/// constant string is present only for constant-coefficient frames.
pub fn encode_frame(frame: &FrameAlgebra) -> Value {
    let mut v = serde_json::json!({
        "dim": frame.dim(),
        "variables": frame.variables(),
        "d": frame.d_gens().iter().map(super::encode_form).collect::<Vec<_>>(),
    });
    if let Some(s) = crate::frame::to_nil_string(frame) {
        v["nil"] = Value::String(s);
    }
    v
}

fn form_value(v: &Value, ctx: &Context<'_>) -> Result<Polyform> {
    match v {
        Value::String(s) => notation::parse_form(s, ctx),
        Value::Array(_) => decode_form_canonical(v, ctx.dim),
        Value::Number(_) => Ok(Polyform::constant(ctx.dim, decode_scalar(v)?)),
        other => Err(input(format!("expected a form, found {other}"))),
    }
}

fn vector_value(v: &Value, ctx: &Context<'_>) -> Result<Vector> {
    match v {
        Value::String(s) => notation::parse_vector(s, ctx),
        Value::Array(_) => decode_vector_canonical(v, ctx.dim),
        other => Err(input(format!("expected a vector field, found {other}"))),
    }
}

fn poly_value(v: &Value, ctx: &Context<'_>) -> Result<Poly> {
    match v {
        Value::String(s) => notation::parse_poly(s, ctx),
        _ => decode_poly(v, ctx.dim),
    }
}

fn scalar_value(v: &Value, ctx: &Context<'_>) -> Result<Scalar> {
    decode_scalar(v).or_else(|_| {
        poly_value(v, ctx)?
            .as_constant()
            .ok_or_else(|| input(format!("expected a constant, found {v}")))
    })
}

fn rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|_| input(format!("bad rational '{s}'"))),
        Value::Number(n) => n
            .as_i64()
            .map(|k| BigRational::from_integer(k.into()))
            .ok_or_else(|| input(format!("non-integer number {n}; write it as \"p/q\""))),
        other => Err(input(format!("expected a rational, found {other}"))),
    }
}

pub fn parse_points(v: &Value) -> Result<Vec<Vec<BigRational>>> {
    let Value::Array(pts) = v else {
        return Err(input("sample points must be a list of lists"));
    };
    pts.iter()
        .map(|p| match p {
            Value::Array(cs) => cs.iter().map(rational_value).collect(),
            other => Err(input(format!("bad sample point {other}"))),
        })
        .collect()
}

/// Named forms and vectors, resolved on demand so that definitions may
/// refer to each other in any order.
struct Named<'a> {
    frame: &'a FrameAlgebra,
    raw: BTreeMap<String, (bool, &'a Value)>,
    done: RefCell<BTreeMap<String, notation::Value>>,
    active: RefCell<BTreeSet<String>>,
}

impl<'a> Named<'a> {
    fn get(&self, name: &str) -> Result<notation::Value> {
        if let Some(v) = self.done.borrow().get(name) {
            return Ok(v.clone());
        }
        let &(is_vector, raw) = self
            .raw
            .get(name)
            .ok_or_else(|| input(format!("unresolved reference ${name}")))?;
        if !self.active.borrow_mut().insert(name.to_string()) {
            return Err(input(format!("cyclic definition of ${name}")));
        }
        let res = {
            let resolver = |n: &str| self.get(n);
            let ctx = Context::with_frame(self.frame).resolver(&resolver);
            if is_vector {
                vector_value(raw, &ctx).map(notation::Value::Vector)
            } else {
                form_value(raw, &ctx).map(notation::Value::Form)
            }
        };
        self.active.borrow_mut().remove(name);
        let v = res.map_err(|e| ctx_err(e, &format!("${name}")))?;
        self.done.borrow_mut().insert(name.to_string(), v.clone());
        Ok(v)
    }
}

struct Loader<'a> {
    named: &'a Named<'a>,
    doc: Document,
}

impl Loader<'_> {
    fn with_ctx<T>(&self, f: impl FnOnce(&Context<'_>) -> Result<T>) -> Result<T> {
        let resolver = |n: &str| self.named.get(n);
        let ctx = Context::with_frame(&self.doc.frame).resolver(&resolver);
        f(&ctx)
    }

    fn form(&self, v: Option<&Value>) -> Result<Polyform> {
        let n = self.doc.frame.dim();
        let f = match v {
            None | Some(Value::Null) => return Ok(Polyform::zero(n)),
            Some(v) => self.with_ctx(|c| form_value(v, c))?,
        };
        self.doc.frame.check_form(&f)?;
        Ok(f)
    }

    fn vector(&self, v: Option<&Value>) -> Result<Vector> {
        let n = self.doc.frame.dim();
        let x = match v {
            None | Some(Value::Null) => return Ok(Vector::zero(n)),
            Some(v) => self.with_ctx(|c| vector_value(v, c))?,
        };
        self.doc.frame.check_vector(&x)?;
        Ok(x)
    }

    fn poly(&self, v: Option<&Value>) -> Result<Poly> {
        let p = match v {
            None | Some(Value::Null) => return Ok(Poly::zero()),
            Some(v) => self.with_ctx(|c| poly_value(v, c))?,
        };
        self.doc.frame.check_poly(&p)?;
        Ok(p)
    }

    fn scalar(&self, v: Option<&Value>) -> Result<Option<Scalar>> {
        match v {
            None | Some(Value::Null) => Ok(None),
            Some(v) => self.with_ctx(|c| scalar_value(v, c)).map(Some),
        }
    }

    fn object<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
        v.as_object().ok_or_else(|| input(format!("{what} must be an object, found {v}")))
    }

    fn section(&self, v: &Value) -> Result<ContactSection> {
        if let Value::String(name) = v {
            return self
                .doc
                .sections
                .get(name)
                .cloned()
                .ok_or_else(|| input(format!("unknown section '{name}'")));
        }
        let m = Self::object(v, "a section")?;
        let x = self.vector(m.get("X").or_else(|| m.get("x")))?;
        Ok(ContactSection::new(x, self.poly(m.get("f"))?, self.poly(m.get("g"))?, self.form(m.get("xi"))?))
    }

    fn gen_section(&self, v: &Value) -> Result<GenSection> {
        let s = self.section(v)?;
        if !(s.f.is_zero() && s.g.is_zero()) {
            return Err(input("expected a section of TM⊕T*M (f = g = 0)"));
        }
        Ok(s.gen_part())
    }

    fn twists(&self, v: &Value) -> Result<Twists> {
        if let Value::String(name) = v {
            return self.doc.twists.get(name).cloned().ok_or_else(|| input(format!("unknown twists '{name}'")));
        }
        let m = Self::object(v, "twists")?;
        if let Some(p) = m.get("potentials") {
            let t = self.transform(p)?;
            return Twists::from_potentials(&self.doc.frame, &t.b2, &t.b, &t.a);
        }
        Twists::new(self.form(m.get("H3"))?, self.form(m.get("H2"))?, self.form(m.get("F"))?)
    }

    fn transform(&self, v: &Value) -> Result<BbaTransform> {
        if let Value::String(name) = v {
            return self
                .doc
                .transforms
                .get(name)
                .cloned()
                .ok_or_else(|| input(format!("unknown transform '{name}'")));
        }
        let m = Self::object(v, "a transform")?;
        BbaTransform::new(self.form(m.get("B"))?, self.form(m.get("b"))?, self.form(m.get("a"))?)
    }

    fn lambda_mu(&self, m: &Map<String, Value>) -> Result<(Scalar, Scalar)> {
        let lambda = self.scalar(m.get("lambda"))?.unwrap_or_else(Scalar::zero);
        let mu = match self.scalar(m.get("mu"))? {
            Some(mu) => mu,
            None => pythagorean_mu(&lambda).ok_or_else(|| Error::Unrepresentable {
                value: (&Scalar::one() + &(&lambda * &lambda)).to_string(),
            })?,
        };
        Ok((lambda, mu))
    }

    fn pair(&self, v: &Value) -> Result<MixedPair> {
        if let Value::String(name) = v {
            return self.doc.pairs.get(name).cloned().ok_or_else(|| input(format!("unknown pair '{name}'")));
        }
        let m = Self::object(v, "a pair")?;
        let need = |k: &str| m.get(k).ok_or_else(|| input(format!("pair lacks \"{k}\"")));
        let (lambda, mu) = self.lambda_mu(m)?;
        Ok(MixedPair::new(
            self.form(m.get("phi"))?,
            self.form(m.get("psi"))?,
            self.gen_section(need("e1")?)?,
            self.gen_section(need("e2")?)?,
        )
        .with_lambda(lambda, mu))
    }

    fn matrix(&self, v: &Value, size: usize) -> Result<Vec<Vec<Poly>>> {
        let rows = v.as_array().ok_or_else(|| input("expected a matrix (list of rows)"))?;
        if rows.len() != size {
            return Err(Error::dims(size, rows.len()));
        }
        rows.iter()
            .map(|r| {
                let r = r.as_array().ok_or_else(|| input("matrix rows must be lists"))?;
                if r.len() != size {
                    return Err(Error::dims(size, r.len()));
                }
                r.iter().map(|p| self.poly(Some(p))).collect()
            })
            .collect()
    }

    fn quadruple(&self, v: &Value) -> Result<SekiyaQuadruple> {
        if let Value::String(name) = v {
            return self
                .doc
                .quadruples
                .get(name)
                .cloned()
                .ok_or_else(|| input(format!("unknown quadruple '{name}'")));
        }
        let m = Self::object(v, "a quadruple")?;
        let n = self.doc.frame.dim();
        if let Some(c) = m.get("cosymplectic") {
            let c = Self::object(c, "cosymplectic data")?;
            return SekiyaQuadruple::cosymplectic(
                &self.form(c.get("theta"))?,
                &self.form(c.get("eta"))?,
                &self.vector(c.get("reeb"))?,
            );
        }
        if let Some(c) = m.get("complex_type") {
            let c = Self::object(c, "complex-type data")?;
            let phi = self.matrix(c.get("phi").ok_or_else(|| input("complex_type lacks \"phi\""))?, n)?;
            return SekiyaQuadruple::complex_type(&phi, &self.form(c.get("alpha"))?, &self.vector(c.get("reeb"))?);
        }
        let need = |k: &str| m.get(k).ok_or_else(|| input(format!("quadruple lacks \"{k}\"")));
        let phi = FrameEndo::new(n, Bundle::Tangent, self.matrix(need("Phi")?, 2 * n)?)?;
        let (lambda, mu) = self.lambda_mu(m)?;
        SekiyaQuadruple::with_mu(phi, self.gen_section(need("e1")?)?, self.gen_section(need("e2")?)?, lambda, mu)
    }

    fn metric(&self, v: &Value) -> Result<GenContactMetric> {
        let m = Self::object(v, "a metric")?;
        let n = self.doc.frame.dim();
        let g = match m.get("g") {
            None => GenContactMetric::flat(n).g,
            Some(g) => self.matrix(g, n)?,
        };
        let h = match m.get("h") {
            None => Poly::one(),
            Some(h) => self.poly(Some(h))?,
        };
        let t = match m.get("transform") {
            None => BbaTransform::identity(n),
            Some(t) => self.transform(t)?,
        };
        let pts = match m.get("sample_points") {
            None => self.doc.sample_points.clone(),
            Some(p) => parse_points(p)?,
        };
        Ok(GenContactMetric::new(g, h, t)?.with_points(pts))
    }

    fn cech(&self, v: &Value) -> Result<CechDatum> {
        let m = Self::object(v, "Čech data")?;
        let patches: Vec<String> = m
            .get("patches")
            .and_then(Value::as_array)
            .ok_or_else(|| input("Čech data lacks a \"patches\" list"))?
            .iter()
            .map(|p| p.as_str().map(str::to_string).ok_or_else(|| input("patch names must be strings")))
            .collect::<Result<_>>()?;
        let data = Self::object(m.get("data").ok_or_else(|| input("Čech data lacks \"data\""))?, "\"data\"")?;
        let mut per = BTreeMap::new();
        for p in &patches {
            let t = data.get(p).ok_or_else(|| input(format!("no data for patch '{p}'")))?;
            per.insert(p.clone(), self.transform(t)?);
        }
        if let Some(extra) = data.keys().find(|k| !patches.contains(k)) {
            return Err(input(format!("data for undeclared patch '{extra}'")));
        }
        let mut cd = CechDatum::new(patches, per)?;
        if let Some(Value::Array(os)) = m.get("overlaps") {
            for o in os {
                let o = Self::object(o, "an overlap")?;
                let name = |k: &str| {
                    o.get(k)
                        .and_then(Value::as_str)
                        .map(str::to_string)
                        .ok_or_else(|| input(format!("overlap lacks \"{k}\"")))
                };
                let t = self.transform(o.get("transform").ok_or_else(|| input("overlap lacks \"transform\""))?)?;
                cd = cd.with_overlap(&name("from")?, &name("to")?, t)?;
            }
        }
        Ok(cd)
    }
}

impl Document {
    pub fn from_json(v: &Value) -> Result<Document> {
        let root = v.as_object().ok_or_else(|| input("document must be a JSON object"))?;
        if let Some(k) = root.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(input(format!("unknown top-level key \"{k}\"")));
        }
        let frame = parse_frame(root.get("frame").ok_or_else(|| input("document lacks \"frame\""))?)?;
        let sample_points = match root.get("sample_points") {
            None => Vec::new(),
            Some(p) => parse_points(p)?,
        };
        let mut raw = BTreeMap::new();
        for (key, is_vector) in [("forms", false), ("vectors", true)] {
            for (name, v) in table(root, key)? {
                if raw.insert(name.clone(), (is_vector, v)).is_some() {
                    return Err(input(format!("'{name}' is defined as both a form and a vector")));
                }
            }
        }
        let named = Named {
            frame: &frame,
            raw,
            done: RefCell::new(BTreeMap::new()),
            active: RefCell::new(BTreeSet::new()),
        };
        let mut forms = BTreeMap::new();
        let mut vectors = BTreeMap::new();
        for name in named.raw.keys() {
            match named.get(name)? {
                notation::Value::Form(f) => {
                    frame.check_form(&f).map_err(|e| ctx_err(e, &format!("${name}")))?;
                    forms.insert(name.clone(), f);
                }
                notation::Value::Vector(x) => {
                    frame.check_vector(&x).map_err(|e| ctx_err(e, &format!("${name}")))?;
                    vectors.insert(name.clone(), x);
                }
            }
        }
        let mut l = Loader {
            named: &named,
            doc: Document {
                frame: frame.clone(),
                forms,
                vectors,
                sections: BTreeMap::new(),
                twists: BTreeMap::new(),
                transforms: BTreeMap::new(),
                pairs: BTreeMap::new(),
                quadruples: BTreeMap::new(),
                metrics: BTreeMap::new(),
                cech: BTreeMap::new(),
                sample_points,
            },
        };
        macro_rules! load {
            ($key:literal, $field:ident, $method:ident) => {
                for (name, v) in table(root, $key)? {
                    let x = l.$method(v).map_err(|e| ctx_err(e, &format!("{} '{}'", $key, name)))?;
                    l.doc.$field.insert(name.clone(), x);
                }
            };
        }
        load!("sections", sections, section);
        load!("transforms", transforms, transform);
        load!("twists", twists, twists);
        load!("pairs", pairs, pair);
        load!("quadruples", quadruples, quadruple);
        load!("metrics", metrics, metric);
        load!("cech", cech, cech);
        Ok(l.doc)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(s: &str) -> Result<Document> {
        let v: Value = serde_json::from_str(s).map_err(|e| input(format!("invalid JSON: {e}")))?;
        Document::from_json(&v)
    }

    pub fn load(path: &Path) -> Result<Document> {
        let s = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        Document::from_str(&s)
    }
}

macro_rules! getter {
    ($fn:ident, $field:ident, $ty:ty, $what:literal) => {
        pub fn $fn(&self, name: &str) -> Result<&$ty> {
            self.$field.get(name).ok_or_else(|| {
                let known: Vec<&str> = self.$field.keys().map(String::as_str).collect();
                input(format!(concat!("no ", $what, " named '{}' (have: {})"), name, known.join(", ")))
            })
        }
    };
}

impl Document {
    getter!(form, forms, Polyform, "form");
    getter!(section, sections, ContactSection, "section");
    getter!(twist, twists, Twists, "twists");
    getter!(transform, transforms, BbaTransform, "transform");
    getter!(pair, pairs, MixedPair, "pair");
    getter!(quadruple, quadruples, SekiyaQuadruple, "quadruple");
    getter!(metric, metrics, GenContactMetric, "metric");
    getter!(cech_datum, cech, CechDatum, "Čech datum");

    /// Twists by name, or zero twists when no name is given.
    pub fn twists_or_zero(&self, name: Option<&str>) -> Result<Twists> {
        match name {
            Some(n) => self.twist(n).cloned(),
            None => Ok(Twists::zero(self.frame.dim())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::Encode;
    use crate::spinor::validate_mixed_pair;

    const CONTACT: &str = r#"{
      "frame": "(0,0,12)",
      "forms": {"omega": "e1 + i*e2", "eta": "e3", "psi": "$eta ^ $omega"},
      "vectors": {"R": "E3"},
      "twists": {"contact": {"H2": "d($eta)"}},
      "pairs": {"p": {"phi": "$omega", "psi": "$psi", "e1": {"xi": "$eta"}, "e2": {"X": "$R"}}}
    }"#;

    #[test]
    fn contact_document() {
        let d = Document::from_str(CONTACT).unwrap();
        let (_, mp, tw) = crate::gallery::heisenberg_contact();
        assert_eq!(d.pair("p").unwrap(), &mp);
        assert_eq!(d.twist("contact").unwrap(), &tw);
        assert!(validate_mixed_pair(d.pair("p").unwrap(), false).passed());
    }

    #[test]
    fn canonical_encodings_round_trip() {
        let (q1, _, m) = crate::gallery::gen_sasaki();
        let mp = crate::gallery::cosymplectic_pair();
        let t = BbaTransform::new(Polyform::basis(5, &[1, 5]), Polyform::zero(5), Polyform::basis(5, &[2])).unwrap();
        let doc = serde_json::json!({
            "frame": {"coordinate": 5},
            "pairs": {"p": mp.encode()},
            "quadruples": {"q": q1.encode()},
            "transforms": {"t": t.encode()},
            "metrics": {"m": m.encode()},
        });
        let d = Document::from_json(&doc).unwrap();
        assert_eq!(d.pair("p").unwrap(), &mp);
        assert_eq!(d.quadruple("q").unwrap(), &q1);
        assert_eq!(d.transform("t").unwrap(), &t);
        assert_eq!(d.metric("m").unwrap(), &m);
    }

    #[test]
    fn references_must_resolve() {
        let bad = r#"{"frame": "(0,0)", "forms": {"a": "$b"}}"#;
        assert!(matches!(Document::from_str(bad), Err(Error::Input(m)) if m.contains("$b")));
        let cyc = r#"{"frame": "(0,0)", "forms": {"a": "$b", "b": "$a"}}"#;
        assert!(matches!(Document::from_str(cyc), Err(Error::Input(m)) if m.contains("cyclic")));
        let pair = r#"{"frame": "(0,0)", "pairs": {"p": {"phi": "1", "e1": "s", "e2": {}}}}"#;
        assert!(Document::from_str(pair).is_err());
    }

    #[test]
    fn frame_encoding_round_trips() {
        for f in [crate::gallery::nilmanifold_frame(), FrameAlgebra::coordinate(2)] {
            let v = encode_frame(&f);
            assert_eq!(parse_frame(&v).unwrap(), f);
        }
        assert_eq!(encode_frame(&crate::gallery::nilmanifold_frame())["nil"], "(0,0,12,13,14+23,-25+34,0)");
    }

    #[test]
    fn frame_and_dimension_errors() {
        assert!(Document::from_str(r#"{"frame": "(0,0,12)", "forms": {"a": "e4"}}"#).is_err());
        assert!(Document::from_str(r#"{"frame": {"d": ["0", "0", "e12", "e13+e23"]}}"#).is_ok());
        assert!(Document::from_str(r#"{"frame": "(0,0)", "extra": 1}"#).is_err());
        assert!(Document::from_str("not json").is_err());
    }

    #[test]
    fn cech_document() {
        let doc = r#"{
          "frame": {"coordinate": 3},
          "cech": {"c": {"patches": ["U", "V"], "data": {"U": {"B": "x1*e23"}, "V": {}},
                         "overlaps": [{"from": "U", "to": "V", "transform": {"B": "e12"}}]}}
        }"#;
        let d = Document::from_str(doc).unwrap();
        let c = d.cech_datum("c").unwrap();
        assert_eq!(c.patches, vec!["U".to_string(), "V".to_string()]);
        assert_eq!(c.overlaps.len(), 1);
    }

    #[test]
    fn quadruple_constructors() {
        let doc = r#"{
          "frame": "(0,0,0,0,0)",
          "quadruples": {
            "q1": {"cosymplectic": {"theta": "e12 + e34", "eta": "e5", "reeb": "E5"}},
            "q2": {"complex_type": {"phi": [[0,-1,0,0,0],[1,0,0,0,0],[0,0,0,-1,0],[0,0,1,0,0],[0,0,0,0,0]],
                                    "alpha": "e5", "reeb": "E5"}}
          }
        }"#;
        let d = Document::from_str(doc).unwrap();
        let (q1, _, _) = crate::gallery::gen_sasaki();
        assert_eq!(d.quadruple("q1").unwrap(), &q1);
        assert!(crate::structures::validate_sekiya(d.quadruple("q2").unwrap()).passed());
    }
}
