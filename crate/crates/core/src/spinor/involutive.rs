//! Twisted differentials, relator and involutivity solves, and the
//! annihilator bracket identity.

use rayon::prelude::*;

use crate::courant::{
    dorfman_contact, lift_pair, reduce_form, require_maurer_cartan, upstairs_h, ContactSection, GenSection,
    Twists,
};
use crate::error::{Error, Result};
use crate::exterior::{Poly, Polyform};
use crate::frame::FrameAlgebra;
use crate::io::Encode;
use crate::report::{Check, Report};
use crate::solve::solve_combination;

use super::annihilator::{annihilator, contact_basis, gen_basis};
use super::{clifford_contact, clifford_tm, pair_is_zero, sub_pair, FormPair, MixedPair};

/// `(dφ + H₃∧φ + F∧ψ, H₂∧φ − dψ − H₃∧ψ)`.
pub fn twisted_differential(frame: &FrameAlgebra, p: &FormPair, t: &Twists) -> Result<FormPair> {
    require_maurer_cartan(frame, t)?;
    twisted_differential_unchecked(frame, p, t)
}

/// As [`twisted_differential`] without the Maurer–Cartan check.
pub fn twisted_differential_unchecked(frame: &FrameAlgebra, p: &FormPair, t: &Twists) -> Result<FormPair> {
    let (phi, psi) = p;
    let a = &(&frame.d(phi)? + &t.h3.wedge(phi)) + &t.f.wedge(psi);
    let b = &(&t.h2.wedge(phi) - &frame.d(psi)?) - &t.h3.wedge(psi);
    Ok((a, b))
}

/// Difference between [`twisted_differential`] and the reduction of
/// `d_H(φ + ε_{n+1}∧ψ)` on the circle extension with `dε_{n+1} = F`,
/// `H = H₃ + ε_{n+1}∧H₂`. Zero when the two agree.
pub fn check_differential_oracle(frame: &FrameAlgebra, t: &Twists, p: &FormPair) -> Result<FormPair> {
    let down = twisted_differential(frame, p, t)?;
    let ext = frame.extend_circle(&t.f)?;
    let rho = lift_pair(&p.0, &p.1);
    let up = &ext.d(&rho)? + &upstairs_h(t).wedge(&rho);
    let reduced = reduce_form(&up)?;
    Ok(sub_pair(&down, &reduced))
}

fn gen_from_coeffs(n: usize, c: &[Poly]) -> GenSection {
    let mut s = GenSection::zero(n);
    for (k, p) in c.iter().enumerate() {
        s = s.add(&gen_basis(n, k).mul_poly(p));
    }
    s
}

fn contact_from_coeffs(n: usize, c: &[Poly]) -> ContactSection {
    ContactSection::from_coords(n, c)
}

/// Solves `v₁·φ = ψ` and `v₂·ψ = φ` for `v₁, v₂ ∈ TM⊕T*M` with polynomial
/// coefficients of degree `≤ degree`.
pub fn solve_dirac_relators(
    frame: &FrameAlgebra,
    p: &FormPair,
    degree: u32,
) -> Result<Option<(GenSection, GenSection)>> {
    frame.check_form(&p.0)?;
    frame.check_form(&p.1)?;
    let n = frame.dim();
    let solve = |from: &Polyform, to: &Polyform| {
        let images: Vec<Vec<Polyform>> = (0..2 * n).map(|k| vec![clifford_tm(&gen_basis(n, k), from)]).collect();
        solve_combination(&images, std::slice::from_ref(to), frame.variables(), degree)
            .map(|c| gen_from_coeffs(n, &c))
    };
    Ok(solve(&p.0, &p.1).zip(solve(&p.1, &p.0)))
}

/// Finds `V` with `d_{H₃,H₂,F}(φ,ψ) = V·(φ,ψ)`, coefficients of degree
/// `≤ degree_bound`.
pub fn solve_involutive(
    frame: &FrameAlgebra,
    p: &FormPair,
    t: &Twists,
    degree_bound: u32,
) -> Result<Option<ContactSection>> {
    let target = twisted_differential(frame, p, t)?;
    let n = frame.dim();
    let images: Vec<Vec<Polyform>> = (0..2 * n + 2)
        .map(|k| {
            let (a, b) = clifford_contact(&contact_basis(n, k), p);
            vec![a, b]
        })
        .collect();
    let sol = solve_combination(&images, &[target.0.clone(), target.1.clone()], frame.variables(), degree_bound);
    Ok(sol.map(|c| contact_from_coeffs(n, &c)).filter(|v| {
        let got = clifford_contact(v, p);
        got == target
    }))
}

/// Finds `v` with `dφ + H∧φ = v·φ`.
pub fn solve_involutive_spinor(
    frame: &FrameAlgebra,
    phi: &Polyform,
    h: &Polyform,
    degree_bound: u32,
) -> Result<Option<GenSection>> {
    if !frame.d(h)?.is_zero() {
        return Err(Error::Twist("H is not closed".into()));
    }
    let target = &frame.d(phi)? + &h.wedge(phi);
    let n = frame.dim();
    let images: Vec<Vec<Polyform>> = (0..2 * n).map(|k| vec![clifford_tm(&gen_basis(n, k), phi)]).collect();
    let sol = solve_combination(&images, std::slice::from_ref(&target), frame.variables(), degree_bound);
    Ok(sol.map(|c| gen_from_coeffs(n, &c)).filter(|v| clifford_tm(v, phi) == target))
}

/// For every ordered pair `𝕏₁, 𝕏₂` from the annihilator basis, checks
/// `(𝕏₁∘𝕏₂)·(φ,ψ) = −𝕏₂·𝕏₁·d_{H₃,H₂,F}(φ,ψ)` (`theorem.identity`) and
/// `(𝕏₁∘𝕏₂)·(φ,ψ) = 0` (`theorem.closure`).
pub fn check_annihilator_involutive(frame: &FrameAlgebra, mp: &MixedPair, t: &Twists) -> Report {
    let mut r = Report::new();
    let p = mp.pair();
    let prep = (|| -> Result<_> {
        if !(p.0.has_constant_coefficients() && p.1.has_constant_coefficients()) {
            return Err(Error::Input(
                "bracket closure needs a constant-coefficient annihilator basis".into(),
            ));
        }
        let dp = twisted_differential(frame, &p, t)?;
        let ann = annihilator(frame, &p, &[])?.remove(0).basis;
        Ok((dp, ann))
    })();
    let (dp, ann) = match prep {
        Ok(v) => v,
        Err(e) => {
            r.push(Check::fail("theorem.input", None).with_notes(e.to_string()));
            return r;
        }
    };
    let k = ann.len();
    let results: Vec<Result<(FormPair, FormPair)>> = (0..k * k)
        .into_par_iter()
        .map(|ij| {
            let (a, b) = (&ann[ij / k], &ann[ij % k]);
            let lhs = clifford_contact(&dorfman_contact(frame, a, b, t)?, &p);
            let rhs = clifford_contact(b, &clifford_contact(a, &dp));
            let identity = (&lhs.0 + &rhs.0, &lhs.1 + &rhs.1);
            Ok((identity, lhs))
        })
        .collect();
    let mut identity = Check::pass("theorem.identity");
    let mut closure = Check::pass("theorem.closure");
    for (ij, res) in results.into_iter().enumerate() {
        let (i, j) = (ij / k, ij % k);
        match res {
            Err(e) => {
                r.push(Check::fail("theorem.input", None).with_notes(e.to_string()));
                return r;
            }
            Ok((id, cl)) => {
                if !pair_is_zero(&id) && !identity.is_fail() {
                    identity = Check::fail("theorem.identity", Some(id.encode()))
                        .with_notes(format!("basis pair ({i}, {j})"));
                }
                if !pair_is_zero(&cl) && !closure.is_fail() {
                    closure = Check::fail("theorem.closure", Some(cl.encode()))
                        .with_notes(format!("basis pair ({i}, {j})"));
                }
            }
        }
    }
    let note = format!("annihilator rank {k}, {} ordered pairs", k * k);
    if !identity.is_fail() {
        identity = identity.with_notes(note.clone());
    }
    if !closure.is_fail() {
        closure = closure.with_notes(note);
    }
    r.push(identity);
    r.push(closure);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Scalar, Vector};
    use crate::frame::parse_nil;
    use crate::random::Sampler;
    use crate::report::Status;

    fn e(n: usize, idx: &[usize]) -> Polyform {
        Polyform::basis(n, idx)
    }

    fn cosymplectic(frame_dim: usize) -> MixedPair {
        let theta = &e(frame_dim, &[1, 2]) + &e(frame_dim, &[3, 4]);
        let phi = theta.scale(&Scalar::i()).exp();
        let eta = e(frame_dim, &[5]);
        MixedPair::new(
            phi.clone(),
            eta.wedge(&phi),
            GenSection::form(eta),
            GenSection::vector(Vector::basis(frame_dim, 5)),
        )
    }

    #[test]
    fn cosymplectic_is_closed() {
        let f = parse_nil("(0,0,0,0,0)", None).unwrap();
        let mp = cosymplectic(5);
        let t = Twists::zero(5);
        let d = twisted_differential(&f, &mp.pair(), &t).unwrap();
        assert!(pair_is_zero(&d));
        assert_eq!(solve_involutive(&f, &mp.pair(), &t, 0).unwrap(), Some(ContactSection::zero(5)));
        assert!(check_annihilator_involutive(&f, &mp, &t).passed());
    }

    #[test]
    fn contact_form_pair() {
        let h = parse_nil("(0,0,12)", None).unwrap();
        let omega = &e(3, &[1]) + &e(3, &[2]).scale(&Scalar::i());
        let eta = e(3, &[3]);
        let mp = MixedPair::new(
            omega.clone(),
            eta.wedge(&omega),
            GenSection::form(eta.clone()),
            GenSection::vector(Vector::basis(3, 3)),
        );
        let t = Twists::new(Polyform::zero(3), h.d(&eta).unwrap(), Polyform::zero(3)).unwrap();
        assert!(pair_is_zero(&twisted_differential(&h, &mp.pair(), &t).unwrap()));
        let r = check_annihilator_involutive(&h, &mp, &t);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn non_involutive_pair() {
        let f = parse_nil("(0,0,0,12,13)", None).unwrap();
        let mp = cosymplectic(5);
        let t = Twists::zero(5);
        assert_eq!(solve_involutive(&f, &mp.pair(), &t, 0).unwrap(), None);
        let r = check_annihilator_involutive(&f, &mp, &t);
        assert_eq!(r.status_of("theorem.identity"), Some(Status::Pass));
        assert_eq!(r.status_of("theorem.closure"), Some(Status::Fail));
    }

    #[test]
    fn relators() {
        let c1 = FrameAlgebra::coordinate(1);
        let (v1, v2) = solve_dirac_relators(&c1, &(Polyform::one(1), e(1, &[1])), 0).unwrap().unwrap();
        assert_eq!(v1, GenSection::form(e(1, &[1])));
        assert_eq!(v2, GenSection::vector(Vector::basis(1, 1)));
        assert!(solve_dirac_relators(&c1, &(Polyform::one(1), Polyform::zero(1)), 0)
            .unwrap()
            .is_none());
        let mp = cosymplectic(5);
        let c5 = FrameAlgebra::coordinate(5);
        let (v1, v2) = solve_dirac_relators(&c5, &mp.pair(), 0).unwrap().unwrap();
        assert_eq!(clifford_tm(&v1, &mp.phi), mp.psi);
        assert_eq!(clifford_tm(&v2, &mp.psi), mp.phi);
    }

    #[test]
    fn rescaling_shifts_witness_by_log_derivative() {
        // d(hφ) = dh∧φ + h dφ, so the witness for (hφ, hψ) is V + h⁻¹dh in
        // the form slot; cleared of denominators, hV′ = hV + (0,0,0,dh)
        let c5 = FrameAlgebra::coordinate(5);
        let mp = cosymplectic(5);
        let t = Twists::zero(5);
        let h = &Poly::one() + &Poly::var(1);
        let hp = (mp.phi.mul_poly(&h), mp.psi.mul_poly(&h));
        let target = twisted_differential(&c5, &hp, &t).unwrap();
        let dh = ContactSection::new(Vector::zero(5), Poly::zero(), Poly::zero(), c5.d_poly(&h));
        assert_eq!(clifford_contact(&dh, &mp.pair()), target);
        let minus = ContactSection::zero(5).sub(&dh);
        assert_ne!(clifford_contact(&minus, &mp.pair()), target);
    }

    #[test]
    fn spinor_involutivity() {
        let c2 = FrameAlgebra::coordinate(2);
        let w = e(2, &[1, 2]);
        let phi = w.scale(&Scalar::i()).exp();
        let v = solve_involutive_spinor(&c2, &phi, &Polyform::zero(2), 0).unwrap();
        assert_eq!(v, Some(GenSection::zero(2)));

        let c3 = FrameAlgebra::coordinate(3);
        let mut s = Sampler::new(&c3, 3);
        let b = s.form(2);
        let phi = &Polyform::one(3) + &e(3, &[1, 2]).scale(&Scalar::i());
        let h = Polyform::zero(3);
        let v = solve_involutive_spinor(&c3, &phi, &h, 1).unwrap().unwrap();
        let hb = &h + &c3.d(&b).unwrap();
        let phib = (-&b).exp().wedge(&phi);
        let vb = solve_involutive_spinor(&c3, &phib, &hb, 2).unwrap();
        assert!(vb.is_some(), "witness for the B-transform exists, v = {v:?}");
    }

    #[test]
    fn differential_matches_oracle() {
        let c4 = FrameAlgebra::coordinate(4);
        let mut s = Sampler::new(&c4, 8);
        for _ in 0..5 {
            let t = Twists::random_valid(&c4, &mut s);
            let p = (s.parity_form(true, 4), s.parity_form(false, 4));
            assert!(pair_is_zero(&check_differential_oracle(&c4, &t, &p).unwrap()));
        }
    }
}
