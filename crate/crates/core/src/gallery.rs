//! Worked example data shared by the tests, the acceptance runner and the
//! command-line corpus.

use crate::courant::{GenSection, Twists};
use crate::exterior::{Poly, Polyform, Scalar, Vector};
use crate::frame::{parse_nil, FrameAlgebra};
use crate::spinor::{FormPair, MixedPair};
use crate::structures::{GenContactMetric, SekiyaQuadruple};

fn e(n: usize, idx: &[usize]) -> Polyform {
    Polyform::basis(n, idx)
}

/// `(0, …, 0)` with `n` entries.
pub fn flat_frame(n: usize) -> FrameAlgebra {
    FrameAlgebra::invariant(vec![Polyform::zero(n); n]).expect("abelian frame")
}

/// Cosymplectic pair on a flat dim-5 frame: `θ = ε₁₂ + ε₃₄`, `η = ε₅`,
/// `φ = e^{iθ}`, `ψ = η∧φ`, `e₁ = η`, `e₂ = e₅`.
pub fn cosymplectic_pair() -> MixedPair {
    let n = 5;
    let theta = &e(n, &[1, 2]) + &e(n, &[3, 4]);
    let phi = theta.scale(&Scalar::i()).exp();
    let eta = e(n, &[5]);
    MixedPair::new(phi.clone(), eta.wedge(&phi), GenSection::form(eta), GenSection::vector(Vector::basis(n, 5)))
}

/// The Heisenberg frame `(0,0,12)` with the contact pair `φ = ε₁ + iε₂`,
/// `ψ = η∧φ`, `η = ε₃`, and twists `(0, dη, 0)`.
pub fn heisenberg_contact() -> (FrameAlgebra, MixedPair, Twists) {
    let frame = parse_nil("(0,0,12)", None).expect("valid notation");
    let omega = &e(3, &[1]) + &e(3, &[2]).scale(&Scalar::i());
    let eta = e(3, &[3]);
    let mp = MixedPair::new(
        omega.clone(),
        eta.wedge(&omega),
        GenSection::form(eta.clone()),
        GenSection::vector(Vector::basis(3, 3)),
    );
    let tw = Twists::new(Polyform::zero(3), frame.d(&eta).expect("frame form"), Polyform::zero(3)).expect("2-form");
    (frame, mp, tw)
}

pub const NILMANIFOLD: &str = "(0,0,12,13,14+23,34+52,0)";

/// The nilmanifold `(0,0,12,13,14+23,34+52)` times a circle.
pub fn nilmanifold_frame() -> FrameAlgebra {
    parse_nil(NILMANIFOLD, None).expect("valid notation")
}

/// `φ = e^{B+iω}∧Ω`, `ψ = η∧φ` with `Ω = ε₁ + iε₂`,
/// `B = ε₂₆ − ε₃₅ + ε₃₆ − ε₄₅`, `ω = ε₃₆ + ε₄₅`, `η = ε₇`.
pub fn nilmanifold_pair() -> MixedPair {
    let n = 7;
    let i = Scalar::i();
    let big_omega = &e(n, &[1]) + &e(n, &[2]).scale(&i);
    let b = &(&e(n, &[2, 6]) - &e(n, &[3, 5])) + &(&e(n, &[3, 6]) - &e(n, &[4, 5]));
    let omega = &e(n, &[3, 6]) + &e(n, &[4, 5]);
    let phi = (&b + &omega.scale(&i)).exp().wedge(&big_omega);
    let eta = e(n, &[7]);
    MixedPair::new(phi.clone(), eta.wedge(&phi), GenSection::form(eta), GenSection::vector(Vector::basis(n, 7)))
}

/// Flat transverse Kähler data on a dim-5 frame: the cosymplectic
/// quadruple of `θ = ε₁₂ + ε₃₄`, `η = ε₅`, and the complex-type quadruple
/// of `J` (`J e₁ = −e₂`, `J e₃ = −e₄`, so `θ(JX, Y) = g(X, Y)`) with
/// `e₁ = R`, `e₂ = η`, together with the flat metric.
pub fn gen_sasaki() -> (SekiyaQuadruple, SekiyaQuadruple, GenContactMetric) {
    let n = 5;
    let theta = &e(n, &[1, 2]) + &e(n, &[3, 4]);
    let q1 = SekiyaQuadruple::cosymplectic(&theta, &e(n, &[5]), &Vector::basis(n, 5)).expect("nondegenerate");
    let mut minus_j = vec![vec![Poly::zero(); n]; n];
    // columns are images of −J
    minus_j[1][0] = Poly::one();
    minus_j[0][1] = Poly::int(-1);
    minus_j[3][2] = Poly::one();
    minus_j[2][3] = Poly::int(-1);
    let phi2 = SekiyaQuadruple::complex_type(&minus_j, &e(n, &[5]), &Vector::basis(n, 5))
        .expect("square")
        .phi;
    let q2 = SekiyaQuadruple::new(phi2, GenSection::vector(Vector::basis(n, 5)), GenSection::form(e(n, &[5])), Scalar::zero())
        .expect("λ = 0");
    (q1, q2, GenContactMetric::flat(n))
}

/// Kähler torus data `(e^{iω}, 0)` and `(Ω, 0)` with `ω = ε₁₂ + ε₃₄`,
/// `Ω = (ε₁ + iε₂)∧(ε₃ + iε₄)`.
pub fn torus_cy() -> (FormPair, FormPair) {
    let n = 4;
    let i = Scalar::i();
    let omega = &e(n, &[1, 2]) + &e(n, &[3, 4]);
    let big = (&e(n, &[1]) + &e(n, &[2]).scale(&i)).wedge(&(&e(n, &[3]) + &e(n, &[4]).scale(&i)));
    ((omega.scale(&i).exp(), Polyform::zero(n)), (big, Polyform::zero(n)))
}
