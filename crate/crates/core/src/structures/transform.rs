//! `(B, b, a)`-transformations on sections, pairs, twists and
//! endomorphisms of `E`.

use serde_json::{json, Value};

use crate::courant::{ContactSection, Twists};
use crate::error::{Error, Result};
use crate::exterior::{Polyform, Scalar};
use crate::frame::FrameAlgebra;
use crate::io::{encode_form, Encode};
use crate::random::Sampler;
use crate::spinor::FormPair;

use super::endo::FrameEndo;

/// `(B, b, a)` with `B` a 2-form and `b, a` 1-forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbaTransform {
    pub b2: Polyform,
    pub b: Polyform,
    pub a: Polyform,
}

fn check_degree(name: &str, f: &Polyform, deg: usize) -> Result<()> {
    if f.is_zero() || f.homogeneous_degree() == Some(deg) {
        Ok(())
    } else {
        Err(Error::Input(format!("{name} must be a {deg}-form")))
    }
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

impl BbaTransform {
    pub fn new(b2: Polyform, b: Polyform, a: Polyform) -> Result<Self> {
        let n = b2.dim();
        if b.dim() != n || a.dim() != n {
            return Err(Error::dims(n, if b.dim() != n { b.dim() } else { a.dim() }));
        }
        check_degree("B", &b2, 2)?;
        check_degree("b", &b, 1)?;
        check_degree("a", &a, 1)?;
        Ok(BbaTransform { b2, b, a })
    }

    pub fn identity(dim: usize) -> Self {
        BbaTransform {
            b2: Polyform::zero(dim),
            b: Polyform::zero(dim),
            a: Polyform::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.b2.dim()
    }

    pub fn is_identity(&self) -> bool {
        self.b2.is_zero() && self.b.is_zero() && self.a.is_zero()
    }

    /// `(−B, −b, −a)`, the inverse under [`compose_transforms`].
    pub fn inverse(&self) -> Self {
        BbaTransform {
            b2: -&self.b2,
            b: -&self.b,
            a: -&self.a,
        }
    }

    pub fn random(s: &mut Sampler) -> Self {
        BbaTransform {
            b2: s.form(2),
            b: s.form(1),
            a: s.form(1),
        }
    }

    pub fn random_constant(s: &mut Sampler) -> Self {
        BbaTransform {
            b2: s.constant_form(2),
            b: s.constant_form(1),
            a: s.constant_form(1),
        }
    }

    /// `(B, −ib, ia)`: the transform of mixed pairs that matches conjugating
    /// `𝒥` by `e^t`, since the real Clifford action on pairs and the
    /// eigenbundles of `𝒥` differ by `(f, g) ↦ (−if, ig)`.
    pub fn for_pair(&self) -> Self {
        BbaTransform {
            b2: self.b2.clone(),
            b: self.b.scale(&-Scalar::i()),
            a: self.a.scale(&Scalar::i()),
        }
    }

    /// Matrix of [`transform_section`] on the frame of `E`.
    pub fn matrix(&self) -> FrameEndo {
        FrameEndo::of_contact_map(self.dim(), |s| transform_section(self, s))
    }

    /// `e^t ∘ m ∘ e^{−t}`.
    pub fn conjugate(&self, m: &FrameEndo) -> FrameEndo {
        self.matrix().mul(m).mul(&self.inverse().matrix())
    }
}

impl Encode for BbaTransform {
    fn encode(&self) -> Value {
        json!({"B": encode_form(&self.b2), "b": encode_form(&self.b), "a": encode_form(&self.a)})
    }
    fn is_zero_value(&self) -> bool {
        self.is_identity()
    }
}

/// `(X, f + ι_Xa, g + ι_Xb, ξ + ι_XB − f b − g a − ½(ι_Xa) b − ½(ι_Xb) a)`.
pub fn transform_section(t: &BbaTransform, s: &ContactSection) -> ContactSection {
    let xa = t.a.contract(&s.x).scalar_part();
    let xb = t.b.contract(&s.x).scalar_part();
    let h = half();
    let xi = &(&(&s.xi + &t.b2.contract(&s.x)) - &t.b.mul_poly(&s.f)) - &t.a.mul_poly(&s.g);
    let xi = &xi - &(&t.b.mul_poly(&xa.scale(&h)) + &t.a.mul_poly(&xb.scale(&h)));
    ContactSection::new(s.x.clone(), &s.f + &xa, &s.g + &xb, xi)
}

/// `(B₂,b₂,a₂)·(B₁,b₁,a₁) = (B₁ + B₂ − ½(b₁∧a₂ + a₁∧b₂), b₁ + b₂, a₁ + a₂)`;
/// `e^{t₂}e^{t₁} = e^{t₂·t₁}`.
pub fn compose_transforms(t2: &BbaTransform, t1: &BbaTransform) -> BbaTransform {
    let cross = &t1.b.wedge(&t2.a) + &t1.a.wedge(&t2.b);
    BbaTransform {
        b2: &(&t1.b2 + &t2.b2) - &cross.scale(&half()),
        b: &t1.b + &t2.b,
        a: &t1.a + &t2.a,
    }
}

/// `(e^{−B}φ − a∧e^{−B}ψ − ½a∧b∧e^{−B}φ, e^{−B}ψ + b∧e^{−B}φ − ½b∧a∧e^{−B}ψ)`,
/// the exponential of `(φ,ψ) ↦ (−B∧φ − a∧ψ, −B∧ψ + b∧φ)`. With these signs
/// `e^t(𝕏)·e^t(φ,ψ) = e^t(𝕏·(φ,ψ))`.
pub fn transform_mixed_pair(t: &BbaTransform, p: &FormPair) -> FormPair {
    pair_action(t, p, -Scalar::one())
}

/// The same action with the opposite signs on the `a∧ψ` and `b∧φ` terms.
/// It preserves the Mukai pairing but is not Clifford-equivariant.
pub fn transform_mixed_pair_literal(t: &BbaTransform, p: &FormPair) -> FormPair {
    pair_action(t, p, Scalar::one())
}

fn pair_action(t: &BbaTransform, p: &FormPair, sign: Scalar) -> FormPair {
    let e = (-&t.b2).exp();
    let phi = e.wedge(&p.0);
    let psi = e.wedge(&p.1);
    let h = half();
    let a = t.a.scale(&sign);
    let b = t.b.scale(&sign);
    let ab = a.wedge(&b);
    let ba = b.wedge(&a);
    (
        &(&phi + &a.wedge(&psi)) - &ab.wedge(&phi).scale(&h),
        &(&psi - &b.wedge(&phi)) - &ba.wedge(&psi).scale(&h),
    )
}

/// Twists seen by `e^t`-transformed data:
/// `(H₃ + dB − a∧H₂ − b∧F − ½(da∧b + a∧db), H₂ + db, F + da)`.
pub fn transform_twists(frame: &FrameAlgebra, t: &BbaTransform, tw: &Twists) -> Result<Twists> {
    let db = frame.d(&t.b)?;
    let da = frame.d(&t.a)?;
    let h = half();
    let h3 = &(&(&tw.h3 + &frame.d(&t.b2)?) - &t.a.wedge(&tw.h2)) - &t.b.wedge(&tw.f);
    let h3 = &h3 - &(&da.wedge(&t.b) + &t.a.wedge(&db)).scale(&h);
    Twists::new(h3, &tw.h2 + &db, &tw.f + &da)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::courant::{dorfman_contact, pairing_contact, validate_maurer_cartan};
    use crate::frame::parse_nil;
    use crate::spinor::{clifford_contact, mukai_mixed};

    fn frames() -> Vec<FrameAlgebra> {
        vec![FrameAlgebra::coordinate(4), parse_nil("(0,0,12)", None).unwrap()]
    }

    // e^N with N(X,f,g,ξ) = (0, ι_Xa, ι_Xb, ι_XB − f b − g a); N³ = 0.
    #[test]
    fn section_transform_is_exponential_of_generator() {
        let mut s = Sampler::with_shape(3, 2, 4);
        for _ in 0..5 {
            let t = BbaTransform::random(&mut s);
            let n_map = FrameEndo::of_contact_map(3, |x| {
                let xi = &(&t.b2.contract(&x.x) - &t.b.mul_poly(&x.f)) - &t.a.mul_poly(&x.g);
                ContactSection::new(
                    crate::exterior::Vector::zero(3),
                    t.a.contract(&x.x).scalar_part(),
                    t.b.contract(&x.x).scalar_part(),
                    xi,
                )
            });
            let n2 = n_map.mul(&n_map);
            assert!(n2.mul(&n_map).is_zero());
            let id = FrameEndo::identity(3, super::super::Bundle::Contact);
            let expected = id.add(&n_map).add(&n2.scale(&half()));
            assert_eq!(t.matrix(), expected);
        }
    }

    #[test]
    fn section_transform_preserves_pairing_and_composes() {
        for frame in frames() {
            let mut s = Sampler::new(&frame, 3);
            for _ in 0..6 {
                let (t1, t2) = (BbaTransform::random(&mut s), BbaTransform::random(&mut s));
                let (x, y) = (ContactSection::random(&mut s), ContactSection::random(&mut s));
                let e = |z: &ContactSection| transform_section(&t1, z);
                assert_eq!(pairing_contact(&e(&x), &e(&y)), pairing_contact(&x, &y));
                assert_eq!(transform_section(&t2, &e(&x)), transform_section(&compose_transforms(&t2, &t1), &x));
                assert_eq!(transform_section(&t1.inverse(), &e(&x)), x);
            }
        }
    }

    #[test]
    fn twists_transform_preserves_maurer_cartan_and_bracket() {
        for frame in frames() {
            let mut s = Sampler::new(&frame, 7);
            for _ in 0..4 {
                let t = BbaTransform::random(&mut s);
                let tw = Twists::random_valid(&frame, &mut s);
                let tw2 = transform_twists(&frame, &t, &tw).unwrap();
                assert!(validate_maurer_cartan(&frame, &tw2).passed());
                let (x, y) = (ContactSection::random(&mut s), ContactSection::random(&mut s));
                let e = |z: &ContactSection| transform_section(&t, z);
                let lhs = dorfman_contact(&frame, &e(&x), &e(&y), &tw2).unwrap();
                let rhs = e(&dorfman_contact(&frame, &x, &y, &tw).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn twists_from_zero_are_the_potentials() {
        let frame = parse_nil("(0,0,12)", None).unwrap();
        let mut s = Sampler::new(&frame, 9);
        let t = BbaTransform::random(&mut s);
        let from_zero = transform_twists(&frame, &t, &Twists::zero(3)).unwrap();
        assert_eq!(from_zero, Twists::from_potentials(&frame, &t.b2, &t.b, &t.a).unwrap());
    }

    #[test]
    fn pair_action_is_clifford_equivariant_and_isometric() {
        let mut s = Sampler::with_shape(3, 2, 12);
        for _ in 0..5 {
            let t = BbaTransform::random(&mut s);
            let p = (s.parity_form(true, 3), s.parity_form(false, 3));
            let q = (s.parity_form(true, 3), s.parity_form(false, 3));
            let x = ContactSection::random(&mut s);
            let tp = transform_mixed_pair(&t, &p);
            assert_eq!(clifford_contact(&transform_section(&t, &x), &tp), transform_mixed_pair(&t, &clifford_contact(&x, &p)));
            assert_eq!(mukai_mixed(&tp, &transform_mixed_pair(&t, &q)), mukai_mixed(&p, &q));
            let lp = transform_mixed_pair_literal(&t, &p);
            assert_eq!(mukai_mixed(&lp, &transform_mixed_pair_literal(&t, &q)), mukai_mixed(&p, &q));
        }
    }

    #[test]
    fn twisted_differential_is_coherent() {
        use crate::spinor::twisted_differential;
        for frame in frames() {
            let n = frame.dim();
            let mut s = Sampler::new(&frame, 5);
            for _ in 0..4 {
                let t = BbaTransform::random(&mut s);
                let tw = Twists::random_valid(&frame, &mut s);
                let tw2 = transform_twists(&frame, &t, &tw).unwrap();
                let p = (s.parity_form(true, n), s.parity_form(false, n));
                let v = ContactSection::random(&mut s);
                let sub = |a: &FormPair, b: &FormPair| (&a.0 - &b.0, &a.1 - &b.1);
                let tp = transform_mixed_pair(&t, &p);
                let lhs = sub(&twisted_differential(&frame, &tp, &tw2).unwrap(), &clifford_contact(&transform_section(&t, &v), &tp));
                let rhs = sub(&twisted_differential(&frame, &p, &tw).unwrap(), &clifford_contact(&v, &p));
                assert_eq!(lhs, transform_mixed_pair(&t, &rhs));
            }
        }
    }

    #[test]
    fn literal_pair_action_breaks_equivariance() {
        let mut s = Sampler::with_shape(3, 0, 21);
        let broken = (0..5).any(|_| {
            let t = BbaTransform::random_constant(&mut s);
            let p = (s.parity_form(true, 3), s.parity_form(false, 3));
            let x = ContactSection::random(&mut s);
            let lhs = clifford_contact(&transform_section(&t, &x), &transform_mixed_pair_literal(&t, &p));
            lhs != transform_mixed_pair_literal(&t, &clifford_contact(&x, &p))
        });
        assert!(broken);
    }

    #[test]
    fn pure_b_transform_on_pairs() {
        let n = 2;
        let b2 = Polyform::basis(n, &[1, 2]);
        let t = BbaTransform::new(b2.clone(), Polyform::zero(n), Polyform::zero(n)).unwrap();
        let p = (Polyform::one(n), Polyform::gen(n, 1));
        let (phi, psi) = transform_mixed_pair(&t, &p);
        assert_eq!(phi, &Polyform::one(n) - &b2);
        assert_eq!(psi, Polyform::gen(n, 1));
    }

    #[test]
    fn degree_checks() {
        assert!(BbaTransform::new(Polyform::gen(2, 1), Polyform::zero(2), Polyform::zero(2)).is_err());
        assert!(BbaTransform::new(Polyform::zero(2), Polyform::zero(3), Polyform::zero(2)).is_err());
    }
}
