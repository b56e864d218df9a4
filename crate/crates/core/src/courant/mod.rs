//! The H-twisted Courant algebroid on `TM⊕T*M` and the (H₃,H₂,F)-twisted
//! contact Courant algebroid on `TM⊕ℝ⊕ℝ⊕T*M`.
//!
//! Double contractions follow `H(X₁, X₂, ·) = ι_{X₂}ι_{X₁}H`.

mod axioms;
mod reduction;

pub use axioms::{check_courant_axioms, Algebroid, ContactBracket, StandardBracket};
pub use reduction::{lift_pair, lift_section, reduce_bracket_oracle, reduce_form, reduce_section, upstairs_h};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{Poly, Polyform, Scalar, Vector};
use crate::frame::FrameAlgebra;
use crate::io::{encode_form, encode_poly, encode_vector, Encode};
use crate::random::Sampler;
use crate::report::{Check, Report};

/// A section `(X, ξ)` of `TM⊕T*M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSection {
    pub x: Vector,
    pub xi: Polyform,
}

impl GenSection {
    pub fn new(x: Vector, xi: Polyform) -> Self {
        GenSection { x, xi }
    }

    pub fn zero(dim: usize) -> Self {
        GenSection::new(Vector::zero(dim), Polyform::zero(dim))
    }

    pub fn vector(x: Vector) -> Self {
        let n = x.dim();
        GenSection::new(x, Polyform::zero(n))
    }

    pub fn form(xi: Polyform) -> Self {
        let n = xi.dim();
        GenSection::new(Vector::zero(n), xi)
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.xi.is_zero()
    }

    pub fn add(&self, o: &GenSection) -> GenSection {
        GenSection::new(&self.x + &o.x, &self.xi + &o.xi)
    }

    pub fn sub(&self, o: &GenSection) -> GenSection {
        GenSection::new(&self.x - &o.x, &self.xi - &o.xi)
    }

    pub fn scale(&self, c: &Scalar) -> GenSection {
        GenSection::new(self.x.scale(c), self.xi.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> GenSection {
        GenSection::new(self.x.mul_poly(p), self.xi.mul_poly(p))
    }

    pub fn conj(&self) -> GenSection {
        GenSection::new(self.x.conj(), self.xi.conj())
    }

    /// As a contact section with `f = g = 0`.
    pub fn to_contact(&self) -> ContactSection {
        ContactSection::new(self.x.clone(), Poly::zero(), Poly::zero(), self.xi.clone())
    }

    pub fn random(s: &mut Sampler) -> GenSection {
        GenSection::new(s.vector(), s.form(1))
    }
}

impl Encode for GenSection {
    fn encode(&self) -> Value {
        json!({"X": encode_vector(&self.x), "xi": encode_form(&self.xi)})
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// A section `(X, f, g, ξ)` of `TM⊕ℝ⊕ℝ⊕T*M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactSection {
    pub x: Vector,
    pub f: Poly,
    pub g: Poly,
    pub xi: Polyform,
}

impl ContactSection {
    pub fn new(x: Vector, f: Poly, g: Poly, xi: Polyform) -> Self {
        ContactSection { x, f, g, xi }
    }

    pub fn zero(dim: usize) -> Self {
        ContactSection::new(Vector::zero(dim), Poly::zero(), Poly::zero(), Polyform::zero(dim))
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.f.is_zero() && self.g.is_zero() && self.xi.is_zero()
    }

    pub fn add(&self, o: &ContactSection) -> ContactSection {
        ContactSection::new(&self.x + &o.x, &self.f + &o.f, &self.g + &o.g, &self.xi + &o.xi)
    }

    pub fn sub(&self, o: &ContactSection) -> ContactSection {
        ContactSection::new(&self.x - &o.x, &self.f - &o.f, &self.g - &o.g, &self.xi - &o.xi)
    }

    pub fn neg(&self) -> ContactSection {
        ContactSection::zero(self.dim()).sub(self)
    }

    pub fn scale(&self, c: &Scalar) -> ContactSection {
        ContactSection::new(self.x.scale(c), self.f.scale(c), self.g.scale(c), self.xi.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> ContactSection {
        ContactSection::new(self.x.mul_poly(p), &self.f * p, &self.g * p, self.xi.mul_poly(p))
    }

    pub fn conj(&self) -> ContactSection {
        ContactSection::new(self.x.conj(), self.f.conj(), self.g.conj(), self.xi.conj())
    }

    pub fn eval(&self, point: &[num_rational::BigRational]) -> ContactSection {
        ContactSection::new(
            self.x.eval(point),
            Poly::constant(self.f.eval(point)),
            Poly::constant(self.g.eval(point)),
            self.xi.eval(point),
        )
    }

    /// The `TM⊕T*M` part.
    pub fn gen_part(&self) -> GenSection {
        GenSection::new(self.x.clone(), self.xi.clone())
    }

    pub fn random(s: &mut Sampler) -> ContactSection {
        ContactSection::new(s.vector(), s.poly(), s.poly(), s.form(1))
    }

    /// Coordinates in the basis `(e₁ … eₙ, ε₁ … εₙ, f, g)`.
    pub fn to_coords(&self) -> Vec<Poly> {
        let n = self.dim();
        let mut v: Vec<Poly> = self.x.components().to_vec();
        for k in 1..=n {
            v.push(self.xi.coefficient(crate::exterior::Blade::single(k)));
        }
        v.push(self.f.clone());
        v.push(self.g.clone());
        v
    }

    pub fn from_coords(n: usize, c: &[Poly]) -> ContactSection {
        assert_eq!(c.len(), 2 * n + 2);
        let x = Vector::new(c[..n].to_vec());
        let mut xi = Polyform::zero(n);
        for k in 0..n {
            xi.add_term(crate::exterior::Blade::single(k + 1), c[n + k].clone());
        }
        ContactSection::new(x, c[2 * n].clone(), c[2 * n + 1].clone(), xi)
    }
}

impl From<GenSection> for ContactSection {
    fn from(s: GenSection) -> Self {
        s.to_contact()
    }
}

impl Encode for ContactSection {
    fn encode(&self) -> Value {
        let n = self.dim();
        json!({
            "X": encode_vector(&self.x),
            "f": encode_poly(&self.f, n),
            "g": encode_poly(&self.g, n),
            "xi": encode_form(&self.xi),
        })
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// Twist forms `(H₃, H₂, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twists {
    pub h3: Polyform,
    pub h2: Polyform,
    pub f: Polyform,
}

impl Twists {
    pub fn new(h3: Polyform, h2: Polyform, f: Polyform) -> Result<Self> {
        let n = h3.dim();
        if h2.dim() != n || f.dim() != n {
            return Err(Error::dims(n, if h2.dim() != n { h2.dim() } else { f.dim() }));
        }
        for (name, form, deg) in [("H3", &h3, 3), ("H2", &h2, 2), ("F", &f, 2)] {
            if form.homogeneous_degree().is_some_and(|d| d != deg)
                || (!form.is_zero() && form.homogeneous_degree().is_none())
            {
                return Err(Error::Twist(format!("{name} must be a {deg}-form")));
            }
        }
        Ok(Twists { h3, h2, f })
    }

    pub fn zero(dim: usize) -> Self {
        Twists {
            h3: Polyform::zero(dim),
            h2: Polyform::zero(dim),
            f: Polyform::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.h3.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.h3.is_zero() && self.h2.is_zero() && self.f.is_zero()
    }

    /// Twists generated by potentials `(B, b, a)`:
    /// `(dB − ½a∧db − ½da∧b, db, da)`. These always satisfy the
    /// Maurer–Cartan identities.
    pub fn from_potentials(frame: &FrameAlgebra, b2: &Polyform, b: &Polyform, a: &Polyform) -> Result<Twists> {
        let half = Scalar::ratio(1, 2);
        let db = frame.d(b)?;
        let da = frame.d(a)?;
        let h3 = &(&frame.d(b2)? - &a.wedge(&db).scale(&half)) - &da.wedge(b).scale(&half);
        Twists::new(h3, db, da)
    }

    pub fn random_valid(frame: &FrameAlgebra, s: &mut Sampler) -> Twists {
        let b2 = s.form(2);
        let b = s.form(1);
        let a = s.form(1);
        Twists::from_potentials(frame, &b2, &b, &a).expect("sampled forms are frame-legal")
    }
}

impl Encode for Twists {
    fn encode(&self) -> Value {
        json!({"H3": encode_form(&self.h3), "H2": encode_form(&self.h2), "F": encode_form(&self.f)})
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// `½(ι_{X₁}ξ₂ + ι_{X₂}ξ₁)`.
pub fn pairing_tm(s1: &GenSection, s2: &GenSection) -> Poly {
    let a = s2.xi.contract(&s1.x).scalar_part();
    let b = s1.xi.contract(&s2.x).scalar_part();
    (&a + &b).scale(&Scalar::ratio(1, 2))
}

/// `½(ι_{X₁}ξ₂ + ι_{X₂}ξ₁ + f₁g₂ + g₁f₂)`.
pub fn pairing_contact(s1: &ContactSection, s2: &ContactSection) -> Poly {
    let a = s2.xi.contract(&s1.x).scalar_part();
    let b = s1.xi.contract(&s2.x).scalar_part();
    let c = &s1.f * &s2.g;
    let d = &s1.g * &s2.f;
    (&(&a + &b) + &(&c + &d)).scale(&Scalar::ratio(1, 2))
}

fn require_closed(frame: &FrameAlgebra, h: &Polyform) -> Result<()> {
    if !frame.d(h)?.is_zero() {
        return Err(Error::Twist("H is not closed".into()));
    }
    Ok(())
}

/// `([X₁,X₂], L_{X₁}ξ₂ − ι_{X₂}dξ₁ − H(X₁,X₂,·))`.
pub fn dorfman_h(frame: &FrameAlgebra, s1: &GenSection, s2: &GenSection, h: &Polyform) -> Result<GenSection> {
    require_closed(frame, h)?;
    dorfman_h_unchecked(frame, s1, s2, h)
}

pub(crate) fn dorfman_h_unchecked(
    frame: &FrameAlgebra,
    s1: &GenSection,
    s2: &GenSection,
    h: &Polyform,
) -> Result<GenSection> {
    let x = frame.lie_bracket(&s1.x, &s2.x)?;
    let lie = frame.lie_derivative(&s1.x, &s2.xi)?;
    let dxi1 = frame.d(&s1.xi)?.contract(&s2.x);
    let hh = h.eval2(&s1.x, &s2.x);
    Ok(GenSection::new(x, &(&lie - &dxi1) - &hh))
}

/// Which sign pattern to use for the mixed terms of the contact bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactSigns {
    /// The four mixed terms `+f₁ι_{X₂}H₂ − f₂ι_{X₁}H₂ + g₁ι_{X₂}F − g₂ι_{X₁}F`
    /// as commonly printed.
    Printed,
    /// The signs produced by reducing the standard bracket on the circle
    /// extension; the default.
    Reduced,
}

/// Checks `dH₃ + H₂∧F = 0`, `dH₂ = 0`, `dF = 0`.
pub fn validate_maurer_cartan(frame: &FrameAlgebra, t: &Twists) -> Report {
    let mut r = Report::new();
    let checked = (|| -> Result<(Polyform, Polyform, Polyform)> {
        let a = &frame.d(&t.h3)? + &t.h2.wedge(&t.f);
        Ok((a, frame.d(&t.h2)?, frame.d(&t.f)?))
    })();
    match checked {
        Ok((a, b, c)) => {
            r.push(Check::vanishing("mc.dH3+H2^F", &a));
            r.push(Check::vanishing("mc.dH2", &b));
            r.push(Check::vanishing("mc.dF", &c));
        }
        Err(e) => r.push(Check::fail("mc.input", None).with_notes(e.to_string())),
    }
    r
}

pub fn require_maurer_cartan(frame: &FrameAlgebra, t: &Twists) -> Result<()> {
    let r = validate_maurer_cartan(frame, t);
    if let Some(c) = r.failures().next() {
        return Err(Error::Twist(format!(
            "Maurer-Cartan identity {} fails: {}",
            c.name,
            c.residual.as_ref().map_or(c.notes.clone(), |v| v.to_string())
        )));
    }
    Ok(())
}

/// The contact Dorfman bracket with the reduced (oracle-confirmed) signs.
pub fn dorfman_contact(
    frame: &FrameAlgebra,
    s1: &ContactSection,
    s2: &ContactSection,
    t: &Twists,
) -> Result<ContactSection> {
    require_maurer_cartan(frame, t)?;
    dorfman_contact_with(frame, s1, s2, t, ContactSigns::Reduced)
}

/// The contact Dorfman bracket with the printed mixed-term signs.
pub fn dorfman_contact_literal(
    frame: &FrameAlgebra,
    s1: &ContactSection,
    s2: &ContactSection,
    t: &Twists,
) -> Result<ContactSection> {
    require_maurer_cartan(frame, t)?;
    dorfman_contact_with(frame, s1, s2, t, ContactSigns::Printed)
}

/// Runs both sign versions of the contact bracket against the reduction
/// oracle on seeded random pairs and reports the first residual of each.
pub fn compare_contact_signs(frame: &FrameAlgebra, t: &Twists, trials: usize, seed: u64) -> Report {
    let mut r = Report::new();
    if let Err(e) = require_maurer_cartan(frame, t) {
        r.push(Check::fail("oracle.bracket.input", None).with_notes(e.to_string()));
        return r;
    }
    for (name, signs) in [
        ("oracle.bracket.reduced", ContactSigns::Reduced),
        ("oracle.bracket.printed", ContactSigns::Printed),
    ] {
        let mut s = Sampler::new(frame, seed);
        let mut check = Check::pass(name).with_notes(format!("{trials} trials"));
        for k in 0..trials {
            let a = ContactSection::random(&mut s);
            let b = ContactSection::random(&mut s);
            let got = reduce_bracket_oracle(frame, t, &a, &b)
                .and_then(|o| Ok(dorfman_contact_with(frame, &a, &b, t, signs)?.sub(&o)));
            match got {
                Ok(res) if res.is_zero() => {}
                Ok(res) => {
                    check = Check::fail(name, Some(res.encode()))
                        .with_notes(format!("first mismatch at trial {k}"))
                        .with_trial(k);
                    break;
                }
                Err(e) => {
                    check = Check::fail(name, None).with_notes(e.to_string()).with_trial(k);
                    break;
                }
            }
        }
        r.push(check);
    }
    r
}

pub(crate) fn dorfman_contact_with(
    frame: &FrameAlgebra,
    s1: &ContactSection,
    s2: &ContactSection,
    t: &Twists,
    signs: ContactSigns,
) -> Result<ContactSection> {
    let (x1, x2) = (&s1.x, &s2.x);
    let x = frame.lie_bracket(x1, x2)?;
    let f = &(&frame.apply(x1, &s2.f) - &frame.apply(x2, &s1.f)) - &t.f.eval2(x1, x2).scalar_part();
    let g = &(&frame.apply(x1, &s2.g) - &frame.apply(x2, &s1.g)) - &t.h2.eval2(x1, x2).scalar_part();

    let mut xi = &frame.lie_derivative(x1, &s2.xi)? - &frame.d(&s1.xi)?.contract(x2);
    xi = &xi - &t.h3.eval2(x1, x2);
    xi = &xi + &frame.d_poly(&s1.f).mul_poly(&s2.g);
    xi = &xi + &frame.d_poly(&s1.g).mul_poly(&s2.f);

    let mixed = &(&t.h2.contract(x2).mul_poly(&s1.f) - &t.h2.contract(x1).mul_poly(&s2.f))
        + &(&t.f.contract(x2).mul_poly(&s1.g) - &t.f.contract(x1).mul_poly(&s2.g));
    xi = match signs {
        ContactSigns::Printed => &xi + &mixed,
        ContactSigns::Reduced => &xi - &mixed,
    };
    Ok(ContactSection::new(x, f, g, xi))
}
