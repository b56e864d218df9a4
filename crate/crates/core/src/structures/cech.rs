//! Čech data `(B_α, b_α, a_α)` generating twists, their overlap cocycle and
//! gauge equivalence. All patches share one frame; restrictions are
//! identities.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::courant::Twists;
use crate::error::{Error, Result};
use crate::exterior::Scalar;
use crate::frame::FrameAlgebra;
use crate::io::Encode;
use crate::report::{Check, Report};

use super::transform::{compose_transforms, BbaTransform};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechDatum {
    pub patches: Vec<String>,
    pub data: BTreeMap<String, BbaTransform>,
    /// Explicit gluing data `t_αβ`; missing pairs are derived from `data`.
    pub overlaps: BTreeMap<(String, String), BbaTransform>,
}

impl CechDatum {
    pub fn new(patches: Vec<String>, data: BTreeMap<String, BbaTransform>) -> Result<Self> {
        if let Some(p) = patches.iter().find(|p| !data.contains_key(*p)) {
            return Err(Error::Input(format!("no data for patch {p}")));
        }
        if let Some(k) = data.keys().find(|k| !patches.contains(k)) {
            return Err(Error::Input(format!("data for undeclared patch {k}")));
        }
        let dims: Vec<usize> = data.values().map(BbaTransform::dim).collect();
        if let Some(&d) = dims.iter().find(|&&d| d != dims[0]) {
            return Err(Error::dims(dims[0], d));
        }
        Ok(CechDatum {
            patches,
            data,
            overlaps: BTreeMap::new(),
        })
    }

    /// One patch carrying `t`.
    pub fn single(t: BbaTransform) -> Self {
        let mut data = BTreeMap::new();
        data.insert("U".to_string(), t);
        CechDatum::new(vec!["U".into()], data).expect("one patch")
    }

    pub fn with_overlap(mut self, alpha: &str, beta: &str, t: BbaTransform) -> Result<Self> {
        for p in [alpha, beta] {
            if !self.data.contains_key(p) {
                return Err(Error::Input(format!("unknown patch {p}")));
            }
        }
        self.overlaps.insert((alpha.into(), beta.into()), t);
        Ok(self)
    }

    /// `t_αβ`: explicit if given (or the inverse of an explicit `t_βα`),
    /// otherwise `(B_α − B_β + ½b_α∧a_β + ½a_α∧b_β, b_α − b_β, a_α − a_β)`.
    pub fn overlap(&self, alpha: &str, beta: &str) -> BbaTransform {
        if let Some(t) = self.overlaps.get(&(alpha.to_string(), beta.to_string())) {
            return t.clone();
        }
        if let Some(t) = self.overlaps.get(&(beta.to_string(), alpha.to_string())) {
            return t.inverse();
        }
        derived_overlap(&self.data[alpha], &self.data[beta])
    }
}

/// `t_β⁻¹ · t_α`.
pub fn derived_overlap(ta: &BbaTransform, tb: &BbaTransform) -> BbaTransform {
    compose_transforms(&tb.inverse(), ta)
}

impl Encode for CechDatum {
    fn encode(&self) -> Value {
        let data: Map<String, Value> = self.data.iter().map(|(k, t)| (k.clone(), t.encode())).collect();
        let mut v = json!({"patches": self.patches, "data": data});
        if !self.overlaps.is_empty() {
            let o: Vec<Value> = self
                .overlaps
                .iter()
                .map(|((a, b), t)| json!({"from": a, "to": b, "transform": t.encode()}))
                .collect();
            v["overlaps"] = Value::Array(o);
        }
        v
    }
    fn is_zero_value(&self) -> bool {
        false
    }
}

fn twist_difference(a: &Twists, b: &Twists) -> Twists {
    Twists {
        h3: &a.h3 - &b.h3,
        h2: &a.h2 - &b.h2,
        f: &a.f - &b.f,
    }
}

/// - `cech.curvature` per patch: `(dB_α − ½a_α∧db_α − ½da_α∧b_α, db_α, da_α)`
///   equals `expected`;
/// - `cech.overlap` per explicit overlap: agrees with the patch data;
/// - `cech.cocycle` per ordered triple: `t_γα · t_βγ · t_αβ = 0`;
/// - with `other`, `cech.gauge.*`: the two choices differ by one global
///   `(B″, b″, a″)` with `db″ = 0`, `da″ = 0`, `dB″ − a″∧H₂ − b″∧F = 0`,
///   and generate the same twists.
pub fn validate_cech(frame: &FrameAlgebra, cd: &CechDatum, expected: &Twists, other: Option<&CechDatum>) -> Report {
    let mut r = Report::new();
    for (k, p) in cd.patches.iter().enumerate() {
        let t = &cd.data[p];
        let c = match Twists::from_potentials(frame, &t.b2, &t.b, &t.a) {
            Ok(tw) => Check::vanishing("cech.curvature", &twist_difference(&tw, expected)),
            Err(e) => Check::fail("cech.curvature", None).with_notes(e.to_string()),
        };
        r.push(c.with_notes(format!("patch {p}")).with_trial(k));
    }
    for (k, ((a, b), t)) in cd.overlaps.iter().enumerate() {
        let d = derived_overlap(&cd.data[a], &cd.data[b]);
        let diff = BbaTransform {
            b2: &t.b2 - &d.b2,
            b: &t.b - &d.b,
            a: &t.a - &d.a,
        };
        r.push(Check::vanishing("cech.overlap", &diff).with_notes(format!("overlap ({a},{b})")).with_trial(k));
    }
    let mut trial = 0;
    for a in &cd.patches {
        for b in &cd.patches {
            for c in &cd.patches {
                let prod = compose_transforms(&cd.overlap(c, a), &compose_transforms(&cd.overlap(b, c), &cd.overlap(a, b)));
                r.push(
                    Check::vanishing("cech.cocycle", &prod)
                        .with_notes(format!("triple ({a},{b},{c})"))
                        .with_trial(trial),
                );
                trial += 1;
            }
        }
    }
    if let Some(o) = other {
        r.extend(check_gauge(frame, cd, o, expected));
    }
    r
}

/// `(B″, b″, a″)` on one patch from `B′ = B + B″ − ½b∧a″ − ½a∧b″`,
/// `b′ = b + b″`, `a′ = a + a″`.
pub fn gauge_difference(t: &BbaTransform, t2: &BbaTransform) -> BbaTransform {
    let half = Scalar::ratio(1, 2);
    let b = &t2.b - &t.b;
    let a = &t2.a - &t.a;
    let b2 = &(&t2.b2 - &t.b2) + &(&t.b.wedge(&a) + &t.a.wedge(&b)).scale(&half);
    BbaTransform { b2, b, a }
}

fn check_gauge(frame: &FrameAlgebra, cd: &CechDatum, o: &CechDatum, tw: &Twists) -> Report {
    let mut r = Report::new();
    if cd.patches != o.patches {
        r.push(Check::fail("cech.gauge.patches", None).with_notes("patch lists differ"));
        return r;
    }
    let diffs: Vec<BbaTransform> = cd.patches.iter().map(|p| gauge_difference(&cd.data[p], &o.data[p])).collect();
    let first = &diffs[0];
    let mismatch = cd.patches.iter().zip(&diffs).find(|(_, d)| *d != first);
    r.push(match mismatch {
        None => Check::pass("cech.gauge.global"),
        Some((p, d)) => {
            let res = BbaTransform {
                b2: &d.b2 - &first.b2,
                b: &d.b - &first.b,
                a: &d.a - &first.a,
            };
            Check::vanishing("cech.gauge.global", &res).with_notes(format!("patch {p} differs from {}", cd.patches[0]))
        }
    });
    let cond = (|| -> Result<Twists> {
        let h3 = &(&frame.d(&first.b2)? - &first.a.wedge(&tw.h2)) - &first.b.wedge(&tw.f);
        Ok(Twists {
            h3,
            h2: frame.d(&first.b)?,
            f: frame.d(&first.a)?,
        })
    })();
    r.push(match cond {
        Ok(c) => Check::vanishing("cech.gauge.condition", &c),
        Err(e) => Check::fail("cech.gauge.condition", None).with_notes(e.to_string()),
    });
    for (k, p) in o.patches.iter().enumerate() {
        let t = &o.data[p];
        let c = match Twists::from_potentials(frame, &t.b2, &t.b, &t.a) {
            Ok(t2) => Check::vanishing("cech.gauge.twists", &twist_difference(&t2, tw)),
            Err(e) => Check::fail("cech.gauge.twists", None).with_notes(e.to_string()),
        };
        r.push(c.with_notes(format!("patch {p}")).with_trial(k));
    }
    r
}

/// Ordered triple product in the displayed order `t_αβ · t_βγ · t_γα`.
pub fn cocycle_printed_order(cd: &CechDatum, a: &str, b: &str, c: &str) -> BbaTransform {
    compose_transforms(&cd.overlap(a, b), &compose_transforms(&cd.overlap(b, c), &cd.overlap(c, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::courant::ContactSection;
    use crate::exterior::{Poly, Polyform};
    use crate::random::Sampler;
    use crate::structures::transform_section;

    fn e(idx: &[usize]) -> Polyform {
        Polyform::basis(3, idx)
    }

    fn datum(ts: &[(&str, BbaTransform)]) -> CechDatum {
        CechDatum::new(ts.iter().map(|(p, _)| p.to_string()).collect(), ts.iter().map(|(p, t)| (p.to_string(), t.clone())).collect()).unwrap()
    }

    fn curv(frame: &FrameAlgebra, t: &BbaTransform) -> Twists {
        Twists::from_potentials(frame, &t.b2, &t.b, &t.a).unwrap()
    }

    /// `t₁` with `a₁ = x₁ε₂`, and `t₂` = `t₁` gauge-shifted by
    /// `(B″, b″, a″) = (x₁ε₂₃, ε₃, 0)`: `dB″ = ε₁₂₃ = b″∧F`.
    fn gauge_pair() -> (FrameAlgebra, BbaTransform, BbaTransform) {
        let frame = FrameAlgebra::coordinate(3);
        let x = Poly::var(1);
        let t1 = BbaTransform::new(e(&[1, 3]).mul_poly(&Poly::var(2)), e(&[1]).mul_poly(&Poly::var(3)), e(&[2]).mul_poly(&x)).unwrap();
        let g = BbaTransform::new(e(&[2, 3]).mul_poly(&x), e(&[3]), Polyform::zero(3)).unwrap();
        let half = Scalar::ratio(1, 2);
        let b2 = &(&t1.b2 + &g.b2) - &(&t1.b.wedge(&g.a) + &t1.a.wedge(&g.b)).scale(&half);
        let t2 = BbaTransform::new(b2, &t1.b + &g.b, &t1.a + &g.a).unwrap();
        (frame, t1, t2)
    }

    #[test]
    fn single_patch_b_field() {
        let frame = FrameAlgebra::coordinate(3);
        let b2 = e(&[1, 2]).mul_poly(&Poly::var(3));
        let cd = CechDatum::single(BbaTransform::new(b2.clone(), Polyform::zero(3), Polyform::zero(3)).unwrap());
        let expected = Twists::new(frame.d(&b2).unwrap(), Polyform::zero(3), Polyform::zero(3)).unwrap();
        assert_eq!(expected.h3, e(&[1, 2, 3]));
        assert!(validate_cech(&frame, &cd, &expected, None).passed());
    }

    #[test]
    fn two_patches_differing_by_closed_forms() {
        let (frame, t1, t2) = gauge_pair();
        let expected = curv(&frame, &t1);
        assert_eq!(curv(&frame, &t2), expected);
        let cd = datum(&[("U", t1), ("V", t2)]);
        let r = validate_cech(&frame, &cd, &expected, None);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn gauge_equivalence() {
        let (frame, t1, t2) = gauge_pair();
        let expected = curv(&frame, &t1);
        let cd = datum(&[("U", t1.clone()), ("V", t1.clone())]);
        let other = datum(&[("U", t2.clone()), ("V", t2.clone())]);
        let r = validate_cech(&frame, &cd, &expected, Some(&other));
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(gauge_difference(&t1, &t2).b, e(&[3]));
        // a non-closed b″ changes H₂
        let bad = BbaTransform::new(t1.b2.clone(), &t1.b + &e(&[3]).mul_poly(&Poly::var(1)), t1.a.clone()).unwrap();
        let other = datum(&[("U", bad.clone()), ("V", bad)]);
        let r = validate_cech(&frame, &cd, &expected, Some(&other));
        assert!(r.get("cech.gauge.condition").unwrap().is_fail());
        // a patch-dependent difference is not a gauge transformation
        let other = datum(&[("U", t2), ("V", t1)]);
        assert!(validate_cech(&frame, &cd, &expected, Some(&other)).get("cech.gauge.global").unwrap().is_fail());
    }

    #[test]
    fn inconsistent_overlap_fails_with_triple() {
        let (frame, t1, _) = gauge_pair();
        let expected = curv(&frame, &t1);
        let cd = datum(&[("U", t1.clone()), ("V", t1.clone()), ("W", t1)])
            .with_overlap("U", "V", BbaTransform::new(e(&[1, 2]), Polyform::zero(3), Polyform::zero(3)).unwrap())
            .unwrap();
        let r = validate_cech(&frame, &cd, &expected, None);
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.iter().any(|c| c.name == "cech.cocycle" && c.notes == "triple (U,V,W)" && c.residual.is_some()));
        assert!(bad.iter().any(|c| c.name == "cech.overlap"));
        assert!(r.get("cech.curvature").unwrap().is_pass());
    }

    #[test]
    fn wrong_expected_twists_fail_curvature() {
        let (frame, t1, _) = gauge_pair();
        let cd = CechDatum::single(t1);
        assert!(validate_cech(&frame, &cd, &Twists::zero(3), None).get("cech.curvature").unwrap().is_fail());
    }

    // Sections glue by s_α = e^{t_αβ} s_β; going round a triple returns s.
    #[test]
    fn cocycle_matches_section_gluing() {
        let frame = FrameAlgebra::coordinate(3);
        let mut s = Sampler::new(&frame, 17);
        let ts: Vec<BbaTransform> = (0..3).map(|_| BbaTransform::random(&mut s)).collect();
        let cd = datum(&[("A", ts[0].clone()), ("B", ts[1].clone()), ("C", ts[2].clone())]);
        let x = ContactSection::random(&mut s);
        let round = transform_section(&cd.overlap("C", "A"), &transform_section(&cd.overlap("B", "C"), &transform_section(&cd.overlap("A", "B"), &x)));
        assert_eq!(round, x);
        assert!(validate_cech(&frame, &cd, &curv(&frame, &ts[0]), None).get("cech.cocycle").is_some());
        // the displayed product order does not close up
        assert!(!cocycle_printed_order(&cd, "A", "B", "C").is_identity());
    }

    #[test]
    fn explicit_inverse_overlap() {
        let (_, t1, t2) = gauge_pair();
        let cd = datum(&[("U", t1.clone()), ("V", t2.clone())]);
        let d = cd.overlap("U", "V");
        let cd2 = cd.clone().with_overlap("U", "V", d.clone()).unwrap();
        assert_eq!(cd2.overlap("V", "U"), d.inverse());
        assert_eq!(cd.overlap("V", "U"), d.inverse());
    }

    #[test]
    fn missing_patch_data_rejected() {
        let mut data = BTreeMap::new();
        data.insert("U".to_string(), BbaTransform::identity(3));
        assert!(CechDatum::new(vec!["U".into(), "V".into()], data).is_err());
    }
}
