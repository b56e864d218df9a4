//! Reduction of the standard bracket on a circle extension.
//!
//! The extended frame has a connection generator `ε_{n+1}` with
//! `dε_{n+1} = F`. A contact section `(X, f, g, ξ)` lifts to the invariant
//! section `(X + f e_{n+1}, ξ + g ε_{n+1})` and the twists assemble into
//! `H = H₃ + ε_{n+1}∧H₂`.

use crate::error::{Error, Result};
use crate::exterior::{Polyform, Vector};
use crate::frame::FrameAlgebra;

use super::{dorfman_h, ContactSection, GenSection, Twists};

/// `H₃ + ε_{n+1}∧H₂` on the extended frame.
pub fn upstairs_h(t: &Twists) -> Polyform {
    let n = t.dim() + 1;
    let conn = Polyform::gen(n, n);
    &t.h3.extend(n) + &conn.wedge(&t.h2.extend(n))
}

pub fn lift_section(s: &ContactSection) -> GenSection {
    let n = s.dim() + 1;
    let mut comps = s.x.components().to_vec();
    comps.push(s.f.clone());
    let xi = &s.xi.extend(n) + &Polyform::gen(n, n).mul_poly(&s.g);
    GenSection::new(Vector::new(comps), xi)
}

/// Inverse of [`lift_section`]; fails if the section does not come from
/// downstairs data.
pub fn reduce_section(s: &GenSection) -> Result<ContactSection> {
    let n1 = s.dim();
    if n1 == 0 {
        return Err(Error::Reduction("cannot reduce a zero-dimensional section".into()));
    }
    let n = n1 - 1;
    let f = s.x.get(n1).clone();
    let x = Vector::new(s.x.components()[..n].to_vec());
    if f.max_variable() > n || x.components().iter().any(|p| p.max_variable() > n) {
        return Err(Error::Reduction("vector depends on the fibre coordinate".into()));
    }
    let (base, along) = s.xi.split_generator(n1);
    let g = along.scalar_part();
    if along.len() > usize::from(!g.is_zero()) {
        return Err(Error::Reduction("fibre component of the form is not a function".into()));
    }
    let xi = base.restrict(n)?;
    Ok(ContactSection::new(x, f, g, xi))
}

/// Computes the contact bracket by lifting to the circle extension with
/// curvature `t.f`, bracketing with [`dorfman_h`] and reducing.
pub fn reduce_bracket_oracle(
    frame: &FrameAlgebra,
    t: &Twists,
    s1: &ContactSection,
    s2: &ContactSection,
) -> Result<ContactSection> {
    for s in [s1, s2] {
        frame.check_vector(&s.x)?;
        frame.check_form(&s.xi)?;
        frame.check_poly(&s.f)?;
        frame.check_poly(&s.g)?;
    }
    let ext = frame.extend_circle(&t.f)?;
    let h = upstairs_h(t);
    let r = dorfman_h(&ext, &lift_section(s1), &lift_section(s2), &h)?;
    reduce_section(&r)
}

/// Decomposes a form on the extended frame as `a₀ + ε_{n+1}∧a₁` and returns
/// `(a₀, a₁)` on the base frame.
pub fn reduce_form(a: &Polyform) -> Result<(Polyform, Polyform)> {
    let n1 = a.dim();
    let (a0, a1) = a.split_generator(n1);
    Ok((a0.restrict(n1 - 1)?, a1.restrict(n1 - 1)?))
}

/// Lifts a pair `(φ, ψ)` to `φ + ε_{n+1}∧ψ`.
pub fn lift_pair(phi: &Polyform, psi: &Polyform) -> Polyform {
    let n = phi.dim() + 1;
    &phi.extend(n) + &Polyform::gen(n, n).wedge(&psi.extend(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::courant::dorfman_contact_with;
    use crate::courant::ContactSigns;
    use crate::frame::parse_nil;
    use crate::random::Sampler;

    #[test]
    fn lift_round_trip() {
        let c = FrameAlgebra::coordinate(3);
        let mut s = Sampler::new(&c, 5);
        for _ in 0..10 {
            let a = ContactSection::random(&mut s);
            assert_eq!(reduce_section(&lift_section(&a)).unwrap(), a);
        }
    }

    fn agreement(frame: &FrameAlgebra, t: &Twists, seed: u64) -> (usize, usize) {
        let mut s = Sampler::new(frame, seed);
        let (mut printed, mut reduced) = (0, 0);
        for _ in 0..20 {
            let a = ContactSection::random(&mut s);
            let b = ContactSection::random(&mut s);
            let o = reduce_bracket_oracle(frame, t, &a, &b).unwrap();
            if o == dorfman_contact_with(frame, &a, &b, t, ContactSigns::Printed).unwrap() {
                printed += 1;
            }
            if o == dorfman_contact_with(frame, &a, &b, t, ContactSigns::Reduced).unwrap() {
                reduced += 1;
            }
        }
        (printed, reduced)
    }

    #[test]
    fn oracle_matches_reduced_signs() {
        let c = FrameAlgebra::coordinate(4);
        let mut s = Sampler::new(&c, 9);
        let t = Twists::random_valid(&c, &mut s);
        let (p, r) = agreement(&c, &t, 1);
        assert_eq!(r, 20, "printed {p}");

        let h = parse_nil("(0,0,12)", None).unwrap();
        let eta = Polyform::gen(3, 3);
        let t = Twists::new(Polyform::zero(3), h.d(&eta).unwrap(), Polyform::basis(3, &[1, 2])).unwrap();
        let (_, r) = agreement(&h, &t, 2);
        assert_eq!(r, 20);
    }
}
