//! Clifford actions, Mukai pairings, mixed pairs and involutivity.
//!
//! A pair `(φ, ψ)` on an `m`-dimensional frame is the reduction of the
//! spinor `φ + ε_{m+1}∧ψ` on the circle extension; every pair operation here
//! is the downstairs image of the corresponding spinor operation.

mod annihilator;
mod involutive;

pub use annihilator::{
    annihilator, annihilator_constant, geometric_type, spinor_annihilator, spinor_type, Annihilator,
};
pub use involutive::{
    check_annihilator_involutive, check_differential_oracle, solve_dirac_relators, solve_involutive,
    solve_involutive_spinor, twisted_differential, twisted_differential_unchecked,
};

use serde_json::{json, Value};

use crate::courant::{pairing_tm, ContactSection, GenSection};
use crate::error::{Error, Result};
use crate::exterior::{Parity, Poly, Polyform, Scalar};
use crate::io::{encode_form, Encode};
use crate::report::{Check, Report};

/// A pair of forms `(φ, ψ)`.
pub type FormPair = (Polyform, Polyform);

/// `(X, ξ)·a = ι_X a + ξ∧a`.
pub fn clifford_tm(s: &GenSection, a: &Polyform) -> Polyform {
    &a.contract(&s.x) + &s.xi.wedge(a)
}

/// `(X, f, g, ξ)·(φ, ψ) = ((X,ξ)·φ + fψ, gφ − (X,ξ)·ψ)`.
pub fn clifford_contact(s: &ContactSection, p: &FormPair) -> FormPair {
    let g = s.gen_part();
    (
        &clifford_tm(&g, &p.0) + &p.1.mul_poly(&s.f),
        &p.0.mul_poly(&s.g) - &clifford_tm(&g, &p.1),
    )
}

/// Degree-`m` part of `α(a)∧b`, where `m` is the frame dimension.
pub fn mukai(a: &Polyform, b: &Polyform) -> Polyform {
    a.reversal().wedge(b).project_degree(a.dim())
}

/// `(−1)^k` applied to each degree-`k` component.
fn degree_sign(a: &Polyform) -> Polyform {
    a.grade_involution()
}

/// Parities of a pair; they must be definite and opposite. A zero entry
/// takes the parity opposite to its partner.
pub fn pair_parity(p: &FormPair) -> Result<(Parity, Parity)> {
    let (a, b) = (p.0.parity(), p.1.parity());
    if a == Parity::Mixed || b == Parity::Mixed {
        return Err(Error::Parity("pair entries must each have a definite parity".into()));
    }
    match (p.0.is_zero(), p.1.is_zero()) {
        (true, true) => Ok((Parity::Even, Parity::Odd)),
        (true, false) => Ok((b.flip(), b)),
        (false, true) => Ok((a, a.flip())),
        (false, false) if a != b => Ok((a, b)),
        _ => Err(Error::Parity("φ and ψ must have opposite parities".into())),
    }
}

/// `(−1)^{|φ₁|}(α(φ₁)∧ψ₂)_m + (−1)^{|ψ₁|}(α(ψ₁)∧φ₂)_m`, signs taken degree
/// by degree.
pub fn mukai_mixed(p1: &FormPair, p2: &FormPair) -> Result<Polyform> {
    pair_parity(p1)?;
    pair_parity(p2)?;
    let a = mukai(&degree_sign(&p1.0), &p2.1);
    let b = mukai(&degree_sign(&p1.1), &p2.0);
    Ok(&a + &b)
}

/// Conjugate of the pair as seen from the lifted spinor `φ + iε∧ψ`:
/// `(φ̄, −ψ̄)`.
pub fn conjugate_pair(p: &FormPair) -> FormPair {
    (p.0.conj(), -p.1.conj())
}

pub fn scale_pair(p: &FormPair, c: &Scalar) -> FormPair {
    (p.0.scale(c), p.1.scale(c))
}

pub fn pair_is_zero(p: &FormPair) -> bool {
    p.0.is_zero() && p.1.is_zero()
}

pub fn sub_pair(a: &FormPair, b: &FormPair) -> FormPair {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// `(φ, ψ, e₁, e₂, λ, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedPair {
    pub phi: Polyform,
    pub psi: Polyform,
    pub e1: GenSection,
    pub e2: GenSection,
    pub lambda: Scalar,
    pub mu: Scalar,
}

impl MixedPair {
    /// Pair with `λ = 0`, `μ = 1`.
    pub fn new(phi: Polyform, psi: Polyform, e1: GenSection, e2: GenSection) -> Self {
        MixedPair {
            phi,
            psi,
            e1,
            e2,
            lambda: Scalar::zero(),
            mu: Scalar::one(),
        }
    }

    pub fn with_lambda(mut self, lambda: Scalar, mu: Scalar) -> Self {
        self.lambda = lambda;
        self.mu = mu;
        self
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn pair(&self) -> FormPair {
        (self.phi.clone(), self.psi.clone())
    }
}

impl Encode for MixedPair {
    fn encode(&self) -> Value {
        json!({
            "phi": encode_form(&self.phi),
            "psi": encode_form(&self.psi),
            "e1": self.e1.encode(),
            "e2": self.e2.encode(),
            "lambda": self.lambda.to_string(),
            "mu": self.mu.to_string(),
        })
    }
    fn is_zero_value(&self) -> bool {
        false
    }
}

/// `μ` with `μ² = 1 + λ²` if that square root is rational and positive.
pub fn pythagorean_mu(lambda: &Scalar) -> Option<Scalar> {
    let s = &Scalar::one() + &(lambda * lambda);
    s.rational_sqrt()
}

/// Exact checks of a mixed pair: parity, the four compatibility identities,
/// the pairing normalisation of `e₁, e₂`, `μ² = 1 + λ²` and nondegeneracy
/// of `((φ,ψ),(φ̄,−ψ̄))`. The individual top-degree pairings of `φ` and `ψ`
/// with their conjugates are recorded and only enforced when `strict`.
pub fn validate_mixed_pair(mp: &MixedPair, strict: bool) -> Report {
    let mut r = Report::new();
    let p = mp.pair();
    match pair_parity(&p) {
        Ok(_) => r.push(Check::pass("pair.parity")),
        Err(e) => {
            r.push(Check::fail("pair.parity", None).with_notes(e.to_string()));
            return r;
        }
    }
    let i = Scalar::i();
    let one = Scalar::one();
    let plus = &one + &(&i * &mp.lambda);
    let minus = &one - &(&i * &mp.lambda);
    r.push(Check::vanishing("pair.e1.psi", &clifford_tm(&mp.e1, &mp.psi)));
    r.push(Check::vanishing(
        "pair.e1.phi",
        &(&clifford_tm(&mp.e1, &mp.phi).scale(&mp.mu) - &mp.psi.scale(&plus)),
    ));
    r.push(Check::vanishing("pair.e2.phi", &clifford_tm(&mp.e2, &mp.phi)));
    r.push(Check::vanishing(
        "pair.e2.psi",
        &(&clifford_tm(&mp.e2, &mp.psi).scale(&mp.mu) - &mp.phi.scale(&minus)),
    ));
    r.push(Check::vanishing("pair.e1e1", &pairing_tm(&mp.e1, &mp.e1)));
    r.push(Check::vanishing("pair.e2e2", &pairing_tm(&mp.e2, &mp.e2)));
    r.push(Check::vanishing(
        "pair.e1e2",
        &(&pairing_tm(&mp.e1, &mp.e2) - &Poly::constant(Scalar::ratio(1, 2))),
    ));
    let pyth = &(&mp.mu * &mp.mu) - &(&one + &(&mp.lambda * &mp.lambda));
    r.push(Check::vanishing("pair.mu", &pyth));

    let notes = "degree convention: m";
    let top = mukai_mixed(&p, &conjugate_pair(&p)).expect("parities checked");
    r.push(if top.is_zero() {
        Check::fail("pair.nondegenerate", Some(top.encode())).with_notes(format!("{notes}; pairing vanishes"))
    } else {
        Check::pass("pair.nondegenerate").with_notes(format!("{notes}; pairing {top}"))
    });

    let m = mp.dim();
    for (name, a) in [("pair.nondegenerate.phi", &mp.phi), ("pair.nondegenerate.psi", &mp.psi)] {
        let v = if m == 0 {
            Polyform::zero(0)
        } else {
            a.reversal().wedge(&a.conj()).project_degree(m - 1)
        };
        let c = if !strict {
            Check::skip(name, format!("(α(a)∧ā)_(m-1) = {v}; enforced only in strict mode"))
        } else if v.is_zero() {
            Check::fail(name, Some(v.encode())).with_notes("(α(a)∧ā)_(m-1) vanishes")
        } else {
            Check::pass(name).with_notes(format!("(α(a)∧ā)_(m-1) = {v}"))
        };
        r.push(c);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Vector;
    use crate::random::Sampler;
    use crate::frame::FrameAlgebra;

    fn e(n: usize, idx: &[usize]) -> Polyform {
        Polyform::basis(n, idx)
    }

    pub(crate) fn cosymplectic() -> MixedPair {
        let theta = &e(5, &[1, 2]) + &e(5, &[3, 4]);
        let phi = theta.scale(&Scalar::i()).exp();
        let eta = e(5, &[5]);
        let psi = eta.wedge(&phi);
        MixedPair::new(phi, psi, GenSection::form(eta), GenSection::vector(Vector::basis(5, 5)))
    }

    #[test]
    fn clifford_examples() {
        let s = GenSection::vector(Vector::basis(2, 1));
        assert_eq!(clifford_tm(&s, &e(2, &[1, 2])), e(2, &[2]));
        assert_eq!(clifford_tm(&GenSection::form(e(2, &[1])), &Polyform::one(2)), e(2, &[1]));
        let p = (e(2, &[1]), Polyform::one(2));
        let f = ContactSection::new(Vector::zero(2), Poly::one(), Poly::zero(), Polyform::zero(2));
        assert_eq!(clifford_contact(&f, &p), (Polyform::one(2), Polyform::zero(2)));
        let g = ContactSection::new(Vector::zero(2), Poly::zero(), Poly::one(), Polyform::zero(2));
        assert_eq!(clifford_contact(&g, &p), (Polyform::zero(2), e(2, &[1])));
    }

    #[test]
    fn clifford_squares() {
        let c = FrameAlgebra::coordinate(3);
        let mut r = Sampler::new(&c, 21);
        for _ in 0..10 {
            let s = ContactSection::random(&mut r);
            let p = (r.parity_form(true, 3), r.parity_form(false, 3));
            let twice = clifford_contact(&s, &clifford_contact(&s, &p));
            let norm = &s.xi.contract(&s.x).scalar_part() + &(&s.f * &s.g);
            assert_eq!(twice, (p.0.mul_poly(&norm), p.1.mul_poly(&norm)));
            let g = s.gen_part();
            let a = r.parity_form(true, 3);
            assert_eq!(clifford_tm(&g, &clifford_tm(&g, &a)), a.mul_poly(&pairing_tm(&g, &g)));
        }
    }

    #[test]
    fn mukai_examples() {
        let w = e(2, &[1, 2]);
        let a = w.scale(&Scalar::i()).exp();
        let b = w.scale(&-Scalar::i()).exp();
        assert_eq!(mukai(&a, &b), w.scale(&(Scalar::int(-2) * Scalar::i())));
        assert_eq!(mukai(&Polyform::one(3), &Polyform::volume(3)), Polyform::volume(3));
        let one = (Polyform::one(3), Polyform::zero(3));
        let vol = (Polyform::zero(3), Polyform::volume(3));
        assert_eq!(mukai_mixed(&one, &vol).unwrap(), Polyform::volume(3));
        let mixed = (&Polyform::one(3) + &e(3, &[1]), Polyform::zero(3));
        assert!(matches!(mukai_mixed(&mixed, &vol), Err(Error::Parity(_))));
    }

    #[test]
    fn cosymplectic_pair_is_valid() {
        let mp = cosymplectic();
        let r = validate_mixed_pair(&mp, false);
        assert!(r.passed(), "{}", r.to_text());
        // α(φ) = e^{−iθ}, so (α(φ)∧φ̄)₄ = (e^{−2iθ})₄ = −4ε₁₂₃₄ and the
        // pairing is −2η∧(−4ε₁₂₃₄) = 8ε₁₂₃₄₅
        let top = mukai_mixed(&mp.pair(), &conjugate_pair(&mp.pair())).unwrap();
        assert_eq!(top, Polyform::volume(5).scale(&Scalar::int(8)));
        // the unconjugated-sign pairing vanishes identically
        let plain = (mp.phi.conj(), mp.psi.conj());
        assert!(mukai_mixed(&mp.pair(), &plain).unwrap().is_zero());
    }

    #[test]
    fn contact_type_pair_is_valid() {
        let omega = &e(3, &[1]) + &e(3, &[2]).scale(&Scalar::i());
        let alpha = e(3, &[3]);
        let mp = MixedPair::new(
            omega.clone(),
            alpha.wedge(&omega),
            GenSection::form(alpha),
            GenSection::vector(Vector::basis(3, 3)),
        );
        assert!(validate_mixed_pair(&mp, false).passed());
    }

    #[test]
    fn broken_pair_fails() {
        let mut mp = cosymplectic();
        mp.e2 = GenSection::vector(Vector::basis(5, 1));
        let r = validate_mixed_pair(&mp, false);
        assert_eq!(r.status_of("pair.e2.phi"), Some(crate::report::Status::Fail));
    }

    #[test]
    fn strict_mode_flags_individual_pairings() {
        let r = validate_mixed_pair(&cosymplectic(), true);
        assert_eq!(r.status_of("pair.nondegenerate"), Some(crate::report::Status::Pass));
        assert!(r.get("pair.nondegenerate.psi").is_some());
    }

    #[test]
    fn pythagorean() {
        assert_eq!(pythagorean_mu(&Scalar::ratio(3, 4)), Some(Scalar::ratio(5, 4)));
        assert_eq!(pythagorean_mu(&Scalar::one()), None);
    }
}
