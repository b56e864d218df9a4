//! Generalised contact metrics, generalised coKähler triples and the
//! coKähler-Einstein length condition.

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::courant::{ContactSection, GenSection};
use crate::error::{Error, Result};
use crate::exterior::{Poly, Polyform, Scalar, Vector};
use crate::io::{encode_poly, Encode};
use crate::linalg::{same_span, Matrix};
use crate::report::{Check, Report};
use crate::spinor::{conjugate_pair, mukai, mukai_mixed, FormPair};

use super::endo::{gen_coords, Bundle, FrameEndo};
use super::sekiya::{assemble_jinv_unchecked, validate_sekiya, SekiyaQuadruple};
use super::transform::{transform_section, BbaTransform};

/// `(g, h, B, b, a)` with sample points at which positivity is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenContactMetric {
    pub g: Vec<Vec<Poly>>,
    pub h: Poly,
    pub transform: BbaTransform,
    pub sample_points: Vec<Vec<BigRational>>,
}

impl GenContactMetric {
    pub fn new(g: Vec<Vec<Poly>>, h: Poly, transform: BbaTransform) -> Result<Self> {
        let n = transform.dim();
        if g.len() != n {
            return Err(Error::dims(n, g.len()));
        }
        if let Some(r) = g.iter().find(|r| r.len() != n) {
            return Err(Error::dims(n, r.len()));
        }
        Ok(GenContactMetric {
            g,
            h,
            transform,
            sample_points: Vec::new(),
        })
    }

    /// `g = id`, `h = 1`, no transform.
    pub fn flat(n: usize) -> Self {
        let g = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
            .collect();
        GenContactMetric::new(g, Poly::one(), BbaTransform::identity(n)).expect("square")
    }

    pub fn with_points(mut self, points: Vec<Vec<BigRational>>) -> Self {
        self.sample_points = points;
        self
    }

    pub fn with_transform(mut self, t: BbaTransform) -> Self {
        self.transform = t;
        self
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    fn is_constant(&self) -> bool {
        self.h.is_constant() && self.g.iter().flatten().all(Poly::is_constant)
    }

    /// Sample points, or the single empty point when every coefficient is
    /// constant and none were given.
    pub fn points(&self) -> Vec<Vec<BigRational>> {
        if self.sample_points.is_empty() && self.is_constant() {
            vec![Vec::new()]
        } else {
            self.sample_points.clone()
        }
    }

    fn g_at(&self, point: &[BigRational]) -> Matrix {
        Matrix::from_rows(self.g.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect())
    }

    fn g_covector(&self, k: usize) -> Polyform {
        let n = self.dim();
        let mut xi = Polyform::zero(n);
        for (j, p) in self.g[k].iter().enumerate() {
            xi.add_term(crate::exterior::Blade::single(j + 1), p.clone());
        }
        xi
    }
}

impl Encode for GenContactMetric {
    fn encode(&self) -> Value {
        let n = self.g.iter().flatten().chain([&self.h]).map(Poly::max_variable).max().unwrap_or(0);
        let g: Vec<Value> = self
            .g
            .iter()
            .map(|r| Value::Array(r.iter().map(|p| encode_poly(p, n)).collect()))
            .collect();
        let pts: Vec<Value> = self
            .sample_points
            .iter()
            .map(|p| Value::Array(p.iter().map(|x| Value::String(Scalar::real(x.clone()).to_string())).collect()))
            .collect();
        json!({"g": g, "h": encode_poly(&self.h, n), "transform": self.transform.encode(), "sample_points": pts})
    }
    fn is_zero_value(&self) -> bool {
        false
    }
}

fn is_positive(s: &Scalar) -> bool {
    s.is_real() && s.re().is_positive()
}

/// Every leading principal minor positive.
fn sylvester(m: &Matrix) -> bool {
    (1..=m.rows()).all(|k| is_positive(&m.leading_minor(k)))
}

/// `metric.symmetric`, and per sample point `metric.positive` (Sylvester
/// minors of `g`) and `metric.h` (`h ≠ 0`).
pub fn validate_metric(m: &GenContactMetric) -> Report {
    let mut r = Report::new();
    let n = m.dim();
    let sym = (0..n).all(|i| (0..n).all(|j| m.g[i][j] == m.g[j][i]));
    r.push(Check::from_bool("metric.symmetric", sym));
    let points = m.points();
    if points.is_empty() {
        r.push(Check::skip("metric.positive", "no sample points for non-constant data"));
    }
    for (k, pt) in points.iter().enumerate() {
        r.push(Check::from_bool("metric.positive", sylvester(&m.g_at(pt))).with_trial(k));
        r.push(Check::from_bool("metric.h", !m.h.eval(pt).is_zero()).with_trial(k));
    }
    r
}

fn require_valid(m: &GenContactMetric) -> Result<()> {
    match validate_metric(m).failures().next() {
        Some(c) => Err(Error::Metric(format!("{} fails", c.name))),
        None => Ok(()),
    }
}

/// Generators of `C₊` and `C₋`: the `e^t`-images of `(eₖ, 0, 0, ±g(eₖ,·))`
/// and `(0, 1, ±h², 0)`.
pub fn metric_subspaces(m: &GenContactMetric) -> Result<(Vec<ContactSection>, Vec<ContactSection>)> {
    require_valid(m)?;
    let n = m.dim();
    let h2 = &m.h * &m.h;
    let side = |sign: i64| -> Vec<ContactSection> {
        let c = Scalar::int(sign);
        let mut out: Vec<ContactSection> = (0..n)
            .map(|k| ContactSection::new(Vector::basis(n, k + 1), Poly::zero(), Poly::zero(), m.g_covector(k).scale(&c)))
            .collect();
        out.push(ContactSection::new(Vector::zero(n), Poly::one(), h2.scale(&c), Polyform::zero(n)));
        out.iter().map(|s| transform_section(&m.transform, s)).collect()
    };
    Ok((side(1), side(-1)))
}

/// `𝒢 = e^t 𝒢₀ e^{−t}` at a point, with `𝒢₀ = (0, g⁻¹; g, 0) ⊕ (0, h⁻²; h², 0)`
/// on `(X, ξ) ⊕ (f, g)`. `g⁻¹` and `h⁻²` are not polynomial in general, so
/// the matrix is evaluated.
pub fn metric_endomorphism(m: &GenContactMetric, point: &[BigRational]) -> Result<Matrix> {
    require_valid(m)?;
    let n = m.dim();
    let g = m.g_at(point);
    let ginv = g.inverse().ok_or_else(|| Error::Metric("g is singular".into()))?;
    let h = m.h.eval(point);
    let h2 = &h * &h;
    let h2inv = h2.inv().ok_or_else(|| Error::Metric("h vanishes".into()))?;
    let k = 2 * n + 2;
    let mut g0 = Matrix::zeros(k, k);
    for i in 0..n {
        for j in 0..n {
            g0.set(n + i, j, g.get(i, j).clone());
            g0.set(i, n + j, ginv.get(i, j).clone());
        }
    }
    g0.set(2 * n + 1, 2 * n, h2);
    g0.set(2 * n, 2 * n + 1, h2inv);
    let t = m.transform.matrix().eval(point);
    let tinv = m.transform.inverse().matrix().eval(point);
    Ok(t.mul(&g0).mul(&tinv))
}

fn adjoint_at(n: usize, a: &Matrix) -> Matrix {
    FrameEndo::from_matrix(n, Bundle::Contact, a)
        .expect("square")
        .adjoint()
        .to_matrix()
        .expect("constant")
}

fn coords_at(s: &ContactSection, point: &[BigRational]) -> Vec<Scalar> {
    s.to_coords().iter().map(|p| p.eval(point)).collect()
}

/// Gram matrix of `⟨·,·⟩` on `vs` at a point.
fn gram(vs: &[ContactSection], point: &[BigRational]) -> Matrix {
    Matrix::from_rows(
        vs.iter()
            .map(|a| vs.iter().map(|b| crate::courant::pairing_contact(a, b).eval(point)).collect())
            .collect(),
    )
}

/// Per sample point: `metric.square` (`𝒢² = id`), `metric.selfadjoint`
/// (`𝒢* = 𝒢`), `metric.eigen` (`𝒢 = ±1` on `C±`) and `metric.definite`
/// (`±⟨·,·⟩` positive definite on `C±`, by Sylvester minors).
pub fn check_metric(m: &GenContactMetric) -> Report {
    let mut r = validate_metric(m);
    if !r.passed() {
        return r;
    }
    let n = m.dim();
    let (cp, cm) = match metric_subspaces(m) {
        Ok(c) => c,
        Err(e) => {
            r.push(Check::fail("metric.subspaces", None).with_notes(e.to_string()));
            return r;
        }
    };
    for (k, pt) in m.points().iter().enumerate() {
        let gm = match metric_endomorphism(m, pt) {
            Ok(gm) => gm,
            Err(e) => {
                r.push(Check::fail("metric.endomorphism", None).with_notes(e.to_string()).with_trial(k));
                continue;
            }
        };
        let id = Matrix::identity(2 * n + 2);
        r.push(Check::from_bool("metric.square", gm.mul(&gm) == id).with_trial(k));
        r.push(Check::from_bool("metric.selfadjoint", adjoint_at(n, &gm) == gm).with_trial(k));
        let eigen = |vs: &[ContactSection], sign: i64| {
            vs.iter().all(|s| {
                let v = coords_at(s, pt);
                gm.apply(&v) == v.iter().map(|x| &Scalar::int(sign) * x).collect::<Vec<_>>()
            })
        };
        r.push(Check::from_bool("metric.eigen", eigen(&cp, 1) && eigen(&cm, -1)).with_trial(k));
        let definite = sylvester(&gram(&cp, pt)) && sylvester(&gram(&cm, pt).scale(&-Scalar::one()));
        r.push(Check::from_bool("metric.definite", definite).with_trial(k));
    }
    r
}

fn gen_coords_at(s: &GenSection, point: &[BigRational]) -> Vec<Scalar> {
    gen_coords(s).iter().map(|p| p.eval(point)).collect()
}

/// Generalised coKähler conditions for `(𝒥₁, 𝒥₂, 𝒢)`:
/// - `cokahler.commute`: `𝒥₁𝒥₂ = 𝒥₂𝒥₁`, exactly;
/// - `cokahler.metric`: `−𝒥₁𝒥₂ = 𝒢` at each sample point;
/// - `cokahler.span`: `ℂe₁⁽¹⁾ ⊕ ℂe₂⁽¹⁾ = ℂe₁⁽²⁾ ⊕ ℂe₂⁽²⁾` at each point;
/// - `cokahler.ematch`: `e⁽¹⁾ = e⁽²⁾` with `λ₁ = λ₂`, or `e₁⁽¹⁾ = e₂⁽²⁾`,
///   `e₂⁽¹⁾ = e₁⁽²⁾`, up to the `O(1,1)` rescaling `(c, 1/c)` when
///   `λ₁ = λ₂ = 0`;
/// - `cokahler.phi`: `Φ₁Φ₂ = Φ₂Φ₁` on `ℰ^⊥`.
///
/// The last three depend on the splitting `E = 𝕋M ⊕ ℝ ⊕ ℝ`, which `e^t`
/// moves. They are evaluated on the quadruples of `e^{−t}𝒥ᵢe^{t}`, with `t`
/// the metric's transform, i.e. in the splitting where `𝒢` is block
/// diagonal. The notes record whether they also hold for `q1, q2` as given.
pub fn check_cokahler(q1: &SekiyaQuadruple, q2: &SekiyaQuadruple, m: &GenContactMetric) -> Report {
    let mut r = Report::new();
    r.extend(validate_sekiya(q1).scoped("q1"));
    r.extend(validate_sekiya(q2).scoped("q2"));
    r.extend(check_metric(m));
    let n = q1.dim();
    if q2.dim() != n || m.dim() != n {
        r.push(Check::fail("cokahler.dims", None).with_notes("dimension mismatch"));
        return r;
    }
    let j1 = assemble_jinv_unchecked(q1);
    let j2 = assemble_jinv_unchecked(q2);
    let j12 = j1.mul(&j2);
    r.push(Check::vanishing("cokahler.commute", &j12.sub(&j2.mul(&j1))));
    let points = m.points();
    for (k, pt) in points.iter().enumerate() {
        let c = match metric_endomorphism(m, pt) {
            Ok(gm) => Check::from_bool("cokahler.metric", j12.eval(pt).scale(&-Scalar::one()) == gm),
            Err(e) => Check::fail("cokahler.metric", None).with_notes(e.to_string()),
        };
        r.push(c.with_trial(k));
    }
    let back = m.transform.inverse();
    let adapted = if m.transform.is_identity() {
        Ok((q1.clone(), q2.clone()))
    } else {
        transform_sekiya_unchecked(&back, q1).and_then(|a| Ok((a, transform_sekiya_unchecked(&back, q2)?)))
    };
    let (a1, a2) = match adapted {
        Ok(a) => a,
        Err(e) => {
            for name in ["cokahler.span", "cokahler.ematch", "cokahler.phi"] {
                r.push(Check::fail(name, None).with_notes(format!("no adapted splitting: {e}")));
            }
            return r;
        }
    };
    let raw = restrictions(q1, q2, &points);
    let fine = restrictions(&a1, &a2, &points);
    let given = |ok: bool| if ok { "also holds for the given quadruples" } else { "fails for the given quadruples" };
    let names = ["cokahler.span", "cokahler.ematch", "cokahler.phi"];
    for ((name, ok), (raw_ok, why)) in names.iter().zip([fine.0, fine.1 .0, fine.2]).zip([
        (raw.0, ""),
        (raw.1 .0, fine.1 .1),
        (raw.2, ""),
    ]) {
        let mut notes = String::new();
        if !why.is_empty() {
            notes.push_str(why);
            notes.push_str("; ");
        }
        if !m.transform.is_identity() {
            notes.push_str(given(raw_ok));
        }
        r.push(Check::from_bool(*name, ok).with_notes(notes.trim_end_matches("; ").to_string()));
    }
    r
}

fn transform_sekiya_unchecked(t: &BbaTransform, q: &SekiyaQuadruple) -> Result<SekiyaQuadruple> {
    super::sekiya::disassemble_jinv(&t.conjugate(&assemble_jinv_unchecked(q)))
}

/// `(span, (ematch, which), phi)`.
fn restrictions(q1: &SekiyaQuadruple, q2: &SekiyaQuadruple, points: &[Vec<BigRational>]) -> (bool, (bool, &'static str), bool) {
    let span = points.iter().all(|pt| {
        let a = vec![gen_coords_at(&q1.e1, pt), gen_coords_at(&q1.e2, pt)];
        let b = vec![gen_coords_at(&q2.e1, pt), gen_coords_at(&q2.e2, pt)];
        same_span(&a, &b)
    });
    let straight = q1.lambda == q2.lambda && q1.e1 == q2.e1 && q1.e2 == q2.e2;
    let crossed = q1.e1 == q2.e2 && q1.e2 == q2.e1;
    let zero = q1.lambda.is_zero() && q2.lambda.is_zero();
    let ematch = if straight {
        (true, "e⁽¹⁾ = e⁽²⁾")
    } else if crossed {
        (true, "e₁⁽¹⁾ = e₂⁽²⁾, e₂⁽¹⁾ = e₁⁽²⁾")
    } else if zero && (rescaled(&q1.e1, &q1.e2, &q2.e1, &q2.e2) || rescaled(&q1.e1, &q1.e2, &q2.e2, &q2.e1)) {
        (true, "equal up to O(1,1)")
    } else {
        (false, "neither alternative holds")
    };
    (span, ematch, phi_commute_on_complement(q1, q2, points).is_pass())
}

/// `u₁ = c v₁` and `u₂ = v₂ / c` for a constant `c ≠ 0`.
fn rescaled(u1: &GenSection, u2: &GenSection, v1: &GenSection, v2: &GenSection) -> bool {
    let (a, b) = (gen_coords(u1), gen_coords(v1));
    let Some(k) = b.iter().position(|p| !p.is_zero()) else {
        return false;
    };
    let (Some(x), Some(y)) = (a[k].as_constant(), b[k].as_constant()) else {
        return false;
    };
    let Some(c) = x.checked_div(&y) else {
        return false;
    };
    let Some(ci) = c.inv() else {
        return false;
    };
    u1 == &v1.mul_poly(&Poly::constant(c)) && u2 == &v2.mul_poly(&Poly::constant(ci))
}

/// `Φ₁Φ₂v = Φ₂Φ₁v` for `v` in a basis of `ℰ^⊥` at each point.
fn phi_commute_on_complement(q1: &SekiyaQuadruple, q2: &SekiyaQuadruple, points: &[Vec<BigRational>]) -> Check {
    let n = q1.dim();
    let p12 = q1.phi.mul(&q2.phi);
    let p21 = q2.phi.mul(&q1.phi);
    for pt in points {
        // ⟨v, e⟩ = ½ Σᵢ e_{σ(i)} vᵢ with σ exchanging the vector and form slots.
        let rows: Vec<Vec<Scalar>> = [&q1.e1, &q1.e2]
            .iter()
            .map(|e| {
                let c = gen_coords_at(e, pt);
                (0..2 * n).map(|i| c[(i + n) % (2 * n)].clone()).collect()
            })
            .collect();
        let perp = Matrix::from_rows(rows).nullspace();
        let (a, b) = (p12.eval(pt), p21.eval(pt));
        if perp.iter().any(|v| a.apply(v) != b.apply(v)) {
            return Check::fail("cokahler.phi", None);
        }
    }
    Check::pass("cokahler.phi")
}

/// Length of a pair: `((φ,ψ), (φ̄,−ψ̄))` in odd dimension, `(φ, φ̄)` in even
/// dimension (where `ψ` must vanish).
pub fn pair_length(p: &FormPair) -> Result<Polyform> {
    let n = p.0.dim();
    if n % 2 == 1 {
        mukai_mixed(p, &conjugate_pair(p))
    } else if p.1.is_zero() {
        Ok(mukai(&p.0, &p.0.conj()))
    } else {
        Err(Error::Input("even-dimensional lengths take ψ = 0".into()))
    }
}

/// `c` with `length(p₂) = c · length(p₁)` if that ratio is a real constant,
/// `None` if the top forms are not proportional that way.
pub fn check_einstein_pairing(p1: &FormPair, p2: &FormPair) -> Result<Option<Scalar>> {
    let l1 = pair_length(p1)?;
    let l2 = pair_length(p2)?;
    if l1.is_zero() || l2.is_zero() {
        return Err(Error::Degenerate("zero pairing".into()));
    }
    let top = crate::exterior::Blade::from_bits((1u64 << l1.dim()) - 1);
    let (a, b) = (l1.coefficient(top), l2.coefficient(top));
    let Some((m, c1)) = a.terms().next() else {
        return Ok(None);
    };
    let c = b.coefficient(m).checked_div(c1).expect("nonzero leading coefficient");
    Ok((c.is_real() && a.scale(&c) == b).then_some(c))
}

/// JSON form of an Einstein check result.
pub fn encode_einstein(c: &Option<Scalar>) -> Value {
    match c {
        Some(c) => json!({"c": c.to_string()}),
        None => json!({"c": null}),
    }
}
