//! Products of a mixed pair with a generalised complex spinor.

use crate::courant::GenSection;
use crate::error::{Error, Result};
use crate::exterior::Polyform;
use crate::spinor::{mukai, validate_mixed_pair, MixedPair};

/// `(φ₁∧φ₂, ψ₁∧φ₂, e₁, e₂)` on the direct sum of the two frames, the first
/// factor's generators first. The pair must validate and the spinor must
/// have a nonzero pairing `(φ₂, φ̄₂)`.
pub fn lift_product(contact: &MixedPair, spinor: &Polyform) -> Result<MixedPair> {
    let r = validate_mixed_pair(contact, false);
    if let Some(c) = r.failures().next() {
        return Err(Error::Structure(format!("contact factor fails {}", c.name)));
    }
    if spinor.is_zero() || mukai(spinor, &spinor.conj()).is_zero() {
        return Err(Error::Structure("spinor factor has vanishing pairing with its conjugate".into()));
    }
    let (n1, n2) = (contact.dim(), spinor.dim());
    let n = n1 + n2;
    let s = spinor.shifted(n1, n);
    let up = |e: &GenSection| GenSection::new(e.x.extend(n), e.xi.extend(n));
    Ok(MixedPair {
        phi: contact.phi.extend(n).wedge(&s),
        psi: contact.psi.extend(n).wedge(&s),
        e1: up(&contact.e1),
        e2: up(&contact.e2),
        lambda: contact.lambda.clone(),
        mu: contact.mu.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::courant::Twists;
    use crate::exterior::{Scalar, Vector};
    use crate::frame::parse_nil;
    use crate::spinor::check_annihilator_involutive;

    fn e(n: usize, idx: &[usize]) -> Polyform {
        Polyform::basis(n, idx)
    }

    fn cosymplectic3() -> MixedPair {
        let phi = e(3, &[1, 2]).scale(&Scalar::i()).exp();
        let eta = e(3, &[3]);
        MixedPair::new(phi.clone(), eta.wedge(&phi), GenSection::form(eta), GenSection::vector(Vector::basis(3, 3)))
    }

    #[test]
    fn cosymplectic_times_symplectic() {
        let sym = e(2, &[1, 2]).scale(&Scalar::i()).exp();
        let mp = lift_product(&cosymplectic3(), &sym).unwrap();
        assert_eq!(mp.dim(), 5);
        assert!(validate_mixed_pair(&mp, false).passed());
        // e^{iε₁₂}∧e^{iε₄₅}
        let expect = (&e(5, &[1, 2]) + &e(5, &[4, 5])).scale(&Scalar::i()).exp();
        assert_eq!(mp.phi, expect);
    }

    #[test]
    fn trivial_factor_is_identity() {
        let mp = cosymplectic3();
        assert_eq!(lift_product(&mp, &Polyform::one(0)).unwrap(), mp);
    }

    #[test]
    fn degenerate_factors_are_rejected() {
        assert!(lift_product(&cosymplectic3(), &Polyform::one(2)).is_err());
        let mut bad = cosymplectic3();
        bad.e2 = GenSection::vector(Vector::basis(3, 1));
        assert!(lift_product(&bad, &e(2, &[1, 2]).scale(&Scalar::i()).exp()).is_err());
    }

    #[test]
    fn circle_times_nilmanifold() {
        // S¹ first, so the nilmanifold generators sit at 2..=7
        let circle = MixedPair::new(
            Polyform::one(1),
            e(1, &[1]),
            GenSection::form(e(1, &[1])),
            GenSection::vector(Vector::basis(1, 1)),
        );
        let i = Scalar::i();
        let n = 6;
        let big_omega = &e(n, &[1]) + &e(n, &[2]).scale(&i);
        let b = &(&e(n, &[2, 6]) - &e(n, &[3, 5])) + &(&e(n, &[3, 6]) - &e(n, &[4, 5]));
        let omega = &e(n, &[3, 6]) + &e(n, &[4, 5]);
        let spinor = (&b + &omega.scale(&i)).exp().wedge(&big_omega);
        let mp = lift_product(&circle, &spinor).unwrap();
        assert!(validate_mixed_pair(&mp, false).passed());
        let frame = parse_nil("(0,0,0,23,24,25+34,45+63)", None).unwrap();
        let r = check_annihilator_involutive(&frame, &mp, &Twists::zero(7));
        assert!(r.get("theorem.identity").unwrap().is_pass(), "{}", r.to_text());
    }
}
