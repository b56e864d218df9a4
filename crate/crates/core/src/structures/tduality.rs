//! Circle T-duality at the invariant level: admissibility of `H`, the dual
//! mixed pair and twists, and the induced action on quadruples and metrics.
//!
//! The dual of `(φ, ψ, e₁, e₂, λ)` is `(ψ, φ, e₂, e₁, −λ)` with twists
//! `(H₃, −F, −H₂)` and connections `(−Ã, −A)`. With these signs
//! `d_{T′}(ψ, φ) = −σ d_T(φ, ψ)` where `σ(a, b) = (b, a)`, so a witness
//! `V = (X, f, g, ξ)` of `d_T(φ,ψ) = V·(φ,ψ)` becomes `(X, −g, −f, ξ)` and
//! the whole operation is an involution.

use serde_json::json;

use crate::courant::{require_maurer_cartan, ContactSection, Twists};
use crate::error::{Error, Result};
use crate::exterior::{Poly, Polyform};
use crate::frame::FrameAlgebra;
use crate::io::Encode;
use crate::report::{Check, Report};
use crate::spinor::{
    check_annihilator_involutive, twisted_differential_unchecked, validate_mixed_pair, FormPair,
    MixedPair,
};

use super::endo::FrameEndo;
use super::metric::GenContactMetric;
use super::sekiya::SekiyaQuadruple;
use super::transform::BbaTransform;

/// Checks `ι_{e_j}ι_{e_i}H = 0` for every pair `i < j` of fibre indices.
pub fn check_admissible(h: &Polyform, fibers: &[usize]) -> Report {
    let mut r = Report::new();
    if let Some(&bad) = fibers.iter().find(|&&k| k == 0 || k > h.dim()) {
        r.push(Check::fail("admissible.input", None).with_notes(format!("fibre index {bad} outside 1..={}", h.dim())));
        return r;
    }
    let mut trial = 0;
    for (a, &i) in fibers.iter().enumerate() {
        for &j in &fibers[a + 1..] {
            let res = h.contract_basis(i).contract_basis(j);
            r.push(Check::vanishing("admissible", &res).with_notes(format!("fibres ({i}, {j})")).with_trial(trial));
            trial += 1;
        }
    }
    if trial == 0 {
        r.push(Check::pass("admissible").with_notes("fewer than two fibre directions"));
    }
    r
}

/// A mixed pair with its twists and the two connection potentials `A`
/// (`dA = F`) and `Ã` (`dÃ = H₂`). A zero potential means "not given".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleData {
    pub pair: MixedPair,
    pub twists: Twists,
    pub connection: Polyform,
    pub dual_connection: Polyform,
}

impl CircleData {
    pub fn new(pair: MixedPair, twists: Twists) -> Self {
        let n = pair.dim();
        CircleData {
            pair,
            twists,
            connection: Polyform::zero(n),
            dual_connection: Polyform::zero(n),
        }
    }

    pub fn with_connections(mut self, a: Polyform, a_dual: Polyform) -> Self {
        self.connection = a;
        self.dual_connection = a_dual;
        self
    }
}

fn check_potential(frame: &FrameAlgebra, name: &str, a: &Polyform, curvature: &Polyform) -> Result<()> {
    if a.is_zero() {
        return Ok(());
    }
    if a.homogeneous_degree() != Some(1) {
        return Err(Error::Duality(format!("{name} must be a 1-form")));
    }
    if &frame.d(a)? != curvature {
        return Err(Error::Duality(format!("d{name} does not match its curvature")));
    }
    Ok(())
}

/// The circle T-dual of `data` on `frame`. The fibre is the extension
/// generator `ε_{n+1}` of `H = H₃ + ε_{n+1}∧H₂`; with a single fibre
/// direction admissibility always holds, and it is still checked here.
pub fn t_dualize_circle(frame: &FrameAlgebra, data: &CircleData) -> Result<CircleData> {
    let n = frame.dim();
    let tw = &data.twists;
    require_maurer_cartan(frame, tw)?;
    let adm = check_admissible(&crate::courant::upstairs_h(tw), &[n + 1]);
    if !adm.passed() {
        return Err(Error::Duality("H is not admissible".into()));
    }
    check_potential(frame, "A", &data.connection, &tw.f)?;
    check_potential(frame, "Ã", &data.dual_connection, &tw.h2)?;
    let mp = &data.pair;
    Ok(CircleData {
        pair: MixedPair {
            phi: mp.psi.clone(),
            psi: mp.phi.clone(),
            e1: mp.e2.clone(),
            e2: mp.e1.clone(),
            lambda: -mp.lambda.clone(),
            mu: mp.mu.clone(),
        },
        twists: Twists::new(tw.h3.clone(), -&tw.f, -&tw.h2)?,
        connection: -&data.dual_connection,
        dual_connection: -&data.connection,
    })
}

/// `(X, f, g, ξ) ↦ (X, −g, −f, ξ)`: carries a witness of the pair to a
/// witness of the dual pair.
pub fn dualize_section(s: &ContactSection) -> ContactSection {
    ContactSection::new(s.x.clone(), -&s.g, -&s.f, s.xi.clone())
}

/// `(X, f, g, ξ) ↦ (X, g, f, ξ)` on `E`, the duality in the frame of the
/// assembled endomorphisms. It is [`dualize_section`] seen through
/// `(X, f, g, ξ) ↦ (X, −if, ig, ξ)`, the map taking the annihilator of a
/// pair to the `+i`-eigenbundle of its `𝒥`.
pub fn duality_endo(n: usize) -> FrameEndo {
    FrameEndo::of_contact_map(n, |s| ContactSection::new(s.x.clone(), s.g.clone(), s.f.clone(), s.xi.clone()))
}

/// `(Φ, e₂, e₁, −λ)`: the quadruple of the dual pair, equal to the
/// conjugate of `𝒥` by [`duality_endo`].
pub fn dualize_quadruple(q: &SekiyaQuadruple) -> SekiyaQuadruple {
    q.swapped()
}

/// Conjugate of the metric by [`duality_endo`]: `h ↦ 1/h` and
/// `(B, b, a) ↦ (B, a, b)`. Needs a constant `h`.
pub fn dualize_metric(m: &GenContactMetric) -> Result<GenContactMetric> {
    let h = m
        .h
        .as_constant()
        .and_then(|c| c.inv())
        .ok_or_else(|| Error::Duality("dualizing a metric needs a nonzero constant h".into()))?;
    let t = &m.transform;
    let t2 = BbaTransform::new(t.b2.clone(), t.a.clone(), t.b.clone())?;
    Ok(GenContactMetric::new(m.g.clone(), Poly::constant(h), t2)?.with_points(m.sample_points.clone()))
}

/// Pair-level image of a transform: `(B, b, a) ↦ (B, −a, −b)`, so that
/// dualizing commutes with [`transform_mixed_pair`](super::transform_mixed_pair).
pub fn dualize_transform(t: &BbaTransform) -> BbaTransform {
    BbaTransform::new(t.b2.clone(), -&t.a, -&t.b).expect("same degrees")
}

fn swap_neg(p: &FormPair) -> FormPair {
    (-&p.1, -&p.0)
}

/// Report on a dualization: the dual pair validates, the dual twists are
/// Maurer–Cartan, `d_{T′}(ψ,φ) = −σ d_T(φ,ψ)`, dualizing twice returns the
/// input, and (for constant-coefficient pairs) the annihilator identity and
/// closure hold on both sides.
pub fn check_t_duality(frame: &FrameAlgebra, data: &CircleData) -> Report {
    let mut r = Report::new();
    let dual = match t_dualize_circle(frame, data) {
        Ok(d) => d,
        Err(e) => {
            r.push(Check::fail("tdual.input", None).with_notes(e.to_string()));
            return r;
        }
    };
    r.extend(validate_mixed_pair(&dual.pair, false).scoped("tdual"));
    r.extend(crate::courant::validate_maurer_cartan(frame, &dual.twists).scoped("tdual"));

    let diff = (|| -> Result<(FormPair, bool)> {
        let d = twisted_differential_unchecked(frame, &data.pair.pair(), &data.twists)?;
        let d2 = twisted_differential_unchecked(frame, &dual.pair.pair(), &dual.twists)?;
        let res = (&d2.0 - &swap_neg(&d).0, &d2.1 - &swap_neg(&d).1);
        let tw = &data.twists;
        let printed = Twists::new(tw.h3.clone(), tw.f.clone(), tw.h2.clone())?;
        let d3 = twisted_differential_unchecked(frame, &dual.pair.pair(), &printed)?;
        Ok((res, d3 == swap_neg(&d)))
    })();
    r.push(match diff {
        Ok((res, printed)) => Check::vanishing("tdual.differential", &res).with_notes(format!(
            "the unsigned interchange (H₃, F, H₂) {} for this input",
            if printed { "also holds" } else { "fails" }
        )),
        Err(e) => Check::fail("tdual.differential", None).with_notes(e.to_string()),
    });

    r.push(match t_dualize_circle(frame, &dual) {
        Ok(back) => Check::from_bool("tdual.involution", &back == data),
        Err(e) => Check::fail("tdual.involution", None).with_notes(e.to_string()),
    });

    let constant = |mp: &MixedPair| mp.phi.has_constant_coefficients() && mp.psi.has_constant_coefficients();
    if constant(&data.pair) {
        let before = check_annihilator_involutive(frame, &data.pair, &data.twists);
        let after = check_annihilator_involutive(frame, &dual.pair, &dual.twists);
        for name in ["theorem.identity", "theorem.closure"] {
            let (b, a) = (before.get(name).map(Check::is_pass), after.get(name).map(Check::is_pass));
            let c = Check::from_bool(format!("tdual.{name}"), b == a && a.is_some())
                .with_notes(format!("before {b:?}, after {a:?}"));
            r.push(c);
        }
    } else {
        r.push(Check::skip("tdual.theorem", "annihilator check needs constant coefficients"));
    }
    r
}

impl Encode for CircleData {
    fn encode(&self) -> serde_json::Value {
        json!({
            "pair": self.pair.encode(),
            "twists": self.twists.encode(),
            "connection": self.connection.encode(),
            "dual_connection": self.dual_connection.encode(),
        })
    }
    fn is_zero_value(&self) -> bool {
        false
    }
}

/// Checks the algebraic coherence of the duality on a coKähler triple:
/// `𝒥′ = σ𝒥σ` for both quadruples and `𝒢′ = σ𝒢σ` at every sample point.
pub fn check_dual_conjugation(q1: &SekiyaQuadruple, q2: &SekiyaQuadruple, m: &GenContactMetric) -> Report {
    let mut r = Report::new();
    let n = m.dim();
    let s = duality_endo(n);
    for (k, q) in [q1, q2].into_iter().enumerate() {
        let j = super::sekiya::assemble_jinv_unchecked(q);
        let jd = super::sekiya::assemble_jinv_unchecked(&dualize_quadruple(q));
        r.push(Check::vanishing(format!("tdual.jinv{}", k + 1), &jd.sub(&s.mul(&j).mul(&s))));
    }
    match dualize_metric(m) {
        Ok(md) => {
            for (k, p) in m.points().iter().enumerate() {
                let res = (|| -> Result<_> {
                    let g = super::metric::metric_endomorphism(m, p)?;
                    let gd = super::metric::metric_endomorphism(&md, p)?;
                    let sm = s.eval(p);
                    Ok(gd.sub(&sm.mul(&g).mul(&sm)))
                })();
                r.push(match res {
                    Ok(x) => Check::vanishing("tdual.metric", &x).with_trial(k),
                    Err(e) => Check::fail("tdual.metric", None).with_notes(e.to_string()).with_trial(k),
                });
            }
        }
        Err(e) => r.push(Check::fail("tdual.metric", None).with_notes(e.to_string())),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::courant::GenSection;
    use crate::exterior::{Scalar, Vector};
    use crate::gallery;
    use crate::random::Sampler;
    use crate::spinor::clifford_contact;
    use crate::structures::{check_cokahler, transform_sekiya};
    use proptest::prelude::*;

    fn e(n: usize, idx: &[usize]) -> Polyform {
        Polyform::basis(n, idx)
    }

    #[test]
    fn admissibility_examples() {
        let h = e(5, &[1, 2, 3]);
        let r = check_admissible(&h, &[1, 2]);
        let c = r.get("admissible").unwrap();
        assert!(c.is_fail());
        // ι_{e₂}ι_{e₁}ε₁₂₃ = ε₃
        assert_eq!(c.residual, Some(e(5, &[3]).encode()));
        assert!(check_admissible(&e(5, &[3, 4, 5]), &[1, 2]).passed());
        assert!(check_admissible(&h, &[1]).passed());
        assert!(!check_admissible(&h, &[6]).passed());
    }

    #[test]
    fn contact_dualizes_to_curvature() {
        let (frame, mp, tw) = gallery::heisenberg_contact();
        let eta = e(3, &[3]);
        let data = CircleData::new(mp.clone(), tw.clone()).with_connections(Polyform::zero(3), eta.clone());
        let dual = t_dualize_circle(&frame, &data).unwrap();
        assert_eq!(dual.pair.phi, mp.psi);
        assert_eq!(dual.pair.psi, mp.phi);
        assert!(dual.twists.h2.is_zero());
        assert_eq!(dual.twists.f, -&frame.d(&eta).unwrap());
        assert_eq!(dual.connection, -&eta);
        let r = check_t_duality(&frame, &data);
        assert!(r.passed(), "{}", r.to_text());
        // ε₁₂∧Ω = 0, so the unsigned interchange holds here as well
        assert!(r.get("tdual.differential").unwrap().notes.contains("also holds"));
    }

    #[test]
    fn cosymplectic_dual() {
        let mp = gallery::cosymplectic_pair();
        let frame = gallery::flat_frame(5);
        let data = CircleData::new(mp.clone(), Twists::zero(5));
        let dual = t_dualize_circle(&frame, &data).unwrap();
        assert_eq!((dual.pair.phi.clone(), dual.pair.psi.clone()), (mp.psi.clone(), mp.phi.clone()));
        assert_eq!(dual.pair.e1, GenSection::vector(Vector::basis(5, 5)));
        assert!(check_t_duality(&frame, &data).passed());
    }

    #[test]
    fn wrong_connection_is_rejected() {
        let (frame, mp, tw) = gallery::heisenberg_contact();
        let data = CircleData::new(mp, tw).with_connections(e(3, &[3]), Polyform::zero(3));
        assert!(matches!(t_dualize_circle(&frame, &data), Err(Error::Duality(_))));
    }

    #[test]
    fn unsigned_interchange_fails_in_general() {
        let frame = crate::frame::FrameAlgebra::coordinate(3);
        let tw = Twists::new(Polyform::zero(3), e(3, &[1, 2]), Polyform::zero(3)).unwrap();
        let mp = MixedPair::new(Polyform::one(3), e(3, &[3]), GenSection::form(e(3, &[3])), GenSection::vector(Vector::basis(3, 3)));
        let r = check_t_duality(&frame, &CircleData::new(mp, tw));
        assert!(r.get("tdual.differential").unwrap().is_pass());
        assert!(r.get("tdual.differential").unwrap().notes.contains("fails"));
    }

    #[test]
    fn cokahler_survives_dualization() {
        let (q1, q2, m) = gallery::gen_sasaki();
        let (d1, d2, md) = (dualize_quadruple(&q1), dualize_quadruple(&q2), dualize_metric(&m).unwrap());
        let r = check_cokahler(&d1, &d2, &md);
        assert!(r.passed(), "{}", r.to_text());
        let c = check_dual_conjugation(&q1, &q2, &m);
        assert!(c.passed(), "{}", c.to_text());
    }

    #[test]
    fn deformed_cokahler_survives_dualization() {
        let (q1, q2, m) = gallery::gen_sasaki();
        let b2 = &e(5, &[1, 5]) - &e(5, &[2, 3]).scale(&Scalar::int(3));
        let t = BbaTransform::new(b2, e(5, &[5]).scale(&Scalar::ratio(3, 4)), Polyform::zero(5)).unwrap();
        let (t1, t2) = (transform_sekiya(&t, &q1).unwrap(), transform_sekiya(&t, &q2).unwrap());
        let mt = m.with_transform(t);
        assert!(check_cokahler(&t1, &t2, &mt).passed());
        let md = dualize_metric(&mt).unwrap();
        let r = check_cokahler(&dualize_quadruple(&t1), &dualize_quadruple(&t2), &md);
        assert!(r.passed(), "{}", r.to_text());
        assert!(check_dual_conjugation(&t1, &t2, &mt).passed());
    }

    #[test]
    fn metric_dual_needs_constant_h() {
        let mut m = GenContactMetric::flat(2);
        m.h = Poly::var(1);
        assert!(dualize_metric(&m).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn dualization_is_an_involution_and_intertwines_d(seed in any::<u64>()) {
            let frame = crate::frame::parse_nil("(0,0,12,13)", None).unwrap();
            let mut s = Sampler::new(&frame, seed);
            let tw = Twists::random_valid(&frame, &mut s);
            let p = (s.parity_form(true, 4), s.parity_form(false, 4));
            let mp = MixedPair::new(p.0, p.1, GenSection::zero(4), GenSection::zero(4));
            let data = CircleData::new(mp, tw);
            let dual = t_dualize_circle(&frame, &data).unwrap();
            prop_assert_eq!(&t_dualize_circle(&frame, &dual).unwrap(), &data);
            let d = twisted_differential_unchecked(&frame, &data.pair.pair(), &data.twists).unwrap();
            let d2 = twisted_differential_unchecked(&frame, &dual.pair.pair(), &dual.twists).unwrap();
            prop_assert_eq!(d2, swap_neg(&d));
        }

        #[test]
        fn dual_witness_acts_on_the_dual_pair(seed in any::<u64>()) {
            let frame = crate::frame::FrameAlgebra::coordinate(3);
            let mut s = Sampler::new(&frame, seed);
            let v = ContactSection::random(&mut s);
            let p = (s.parity_form(true, 3), s.parity_form(false, 3));
            let swapped = (p.1.clone(), p.0.clone());
            prop_assert_eq!(clifford_contact(&dualize_section(&v), &swapped), swap_neg(&clifford_contact(&v, &p)));
        }

        #[test]
        fn transform_commutes_with_dualization(seed in any::<u64>()) {
            let frame = crate::frame::FrameAlgebra::coordinate(3);
            let mut s = Sampler::new(&frame, seed);
            let t = BbaTransform::random(&mut s);
            let p = (s.parity_form(true, 3), s.parity_form(false, 3));
            let tp = crate::structures::transform_mixed_pair(&t, &p);
            let td = crate::structures::transform_mixed_pair(&dualize_transform(&t), &(p.1.clone(), p.0.clone()));
            prop_assert_eq!((tp.1, tp.0), td);
        }

        #[test]
        fn section_duality_preserves_pairing(seed in any::<u64>()) {
            let frame = crate::frame::FrameAlgebra::coordinate(3);
            let mut s = Sampler::new(&frame, seed);
            let (a, b) = (ContactSection::random(&mut s), ContactSection::random(&mut s));
            prop_assert_eq!(
                crate::courant::pairing_contact(&dualize_section(&a), &dualize_section(&b)),
                crate::courant::pairing_contact(&a, &b)
            );
        }
    }
}
