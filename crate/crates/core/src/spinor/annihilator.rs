//! Annihilators of spinors and pairs, computed as exact kernels.

use num_rational::BigRational;

use crate::courant::{ContactSection, GenSection};
use crate::error::{Error, Result};
use crate::exterior::{Blade, Poly, Polyform, Scalar, Vector};
use crate::frame::FrameAlgebra;
use crate::linalg::span_rank;
use crate::solve::constant_kernel;

use super::{clifford_contact, clifford_tm, FormPair};

/// Basis section `k` of `TM⊕ℝ⊕ℝ⊕T*M` in the order `(e₁…eₙ, ε₁…εₙ, f, g)`.
pub(crate) fn contact_basis(n: usize, k: usize) -> ContactSection {
    let mut c = vec![Poly::zero(); 2 * n + 2];
    c[k] = Poly::one();
    ContactSection::from_coords(n, &c)
}

/// Basis section `k` of `TM⊕T*M` in the order `(e₁…eₙ, ε₁…εₙ)`.
pub(crate) fn gen_basis(n: usize, k: usize) -> GenSection {
    if k < n {
        GenSection::vector(Vector::basis(n, k + 1))
    } else {
        GenSection::form(Polyform::gen(n, k - n + 1))
    }
}

fn constant_coords(s: &ContactSection) -> Vec<Scalar> {
    s.to_coords().iter().map(Poly::constant_term).collect()
}

/// Kernel of `s ↦ s·p` at one point (or globally for constant data).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    pub point: Option<Vec<BigRational>>,
    pub basis: Vec<ContactSection>,
}

impl Annihilator {
    /// Complex dimension.
    pub fn complex_dim(&self) -> usize {
        self.basis.len()
    }

    /// Real dimension of the complex subspace.
    pub fn real_dim(&self) -> usize {
        2 * self.basis.len()
    }

    /// `dim_ℂ(L ∩ L̄)`, the dimension of the real points.
    pub fn real_slice_dim(&self) -> usize {
        let l: Vec<Vec<Scalar>> = self.basis.iter().map(constant_coords).collect();
        let lbar: Vec<Vec<Scalar>> = self.basis.iter().map(|s| constant_coords(&s.conj())).collect();
        let both: Vec<Vec<Scalar>> = l.iter().chain(lbar.iter()).cloned().collect();
        span_rank(&l) + span_rank(&lbar) - span_rank(&both)
    }

    /// Rank of the projection to `TM⊗ℂ`.
    pub fn tangent_rank(&self) -> usize {
        let xs: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|s| s.x.components().iter().map(Poly::constant_term).collect())
            .collect();
        span_rank(&xs)
    }
}

/// Annihilator of a pair with constant coefficients.
pub fn annihilator_constant(p: &FormPair) -> Vec<ContactSection> {
    let n = p.0.dim();
    let images: Vec<Vec<Polyform>> = (0..2 * n + 2)
        .map(|k| {
            let (a, b) = clifford_contact(&contact_basis(n, k), p);
            vec![a, b]
        })
        .collect();
    constant_kernel(&images)
        .into_iter()
        .map(|v| ContactSection::from_coords(n, &v.into_iter().map(Poly::constant).collect::<Vec<_>>()))
        .collect()
}

fn pair_is_constant(p: &FormPair) -> bool {
    p.0.has_constant_coefficients() && p.1.has_constant_coefficients()
}

fn check_point(frame: &FrameAlgebra, x: &[BigRational]) -> Result<()> {
    if x.len() != frame.variables() {
        return Err(Error::Input(format!(
            "sample point has {} coordinates, frame has {}",
            x.len(),
            frame.variables()
        )));
    }
    Ok(())
}

/// Annihilator of `p`: globally if its coefficients are constant, otherwise
/// at each sample point.
pub fn annihilator(frame: &FrameAlgebra, p: &FormPair, points: &[Vec<BigRational>]) -> Result<Vec<Annihilator>> {
    frame.check_form(&p.0)?;
    frame.check_form(&p.1)?;
    if pair_is_constant(p) {
        return Ok(vec![Annihilator {
            point: None,
            basis: annihilator_constant(p),
        }]);
    }
    if points.is_empty() {
        return Err(Error::Input("non-constant pair needs at least one sample point".into()));
    }
    points
        .iter()
        .map(|x| {
            check_point(frame, x)?;
            let at = (p.0.eval(x), p.1.eval(x));
            Ok(Annihilator {
                point: Some(x.clone()),
                basis: annihilator_constant(&at),
            })
        })
        .collect()
}

/// Complex codimension of the tangent projection of `Ann(p)` at a point.
pub fn geometric_type(frame: &FrameAlgebra, p: &FormPair, point: Option<&[BigRational]>) -> Result<usize> {
    let pts: Vec<Vec<BigRational>> = point.map(|x| vec![x.to_vec()]).unwrap_or_default();
    let ann = annihilator(frame, p, &pts)?;
    Ok(frame.dim() - ann[0].tangent_rank())
}

/// Annihilator of a single spinor with constant coefficients.
pub fn spinor_annihilator(phi: &Polyform) -> Vec<GenSection> {
    let n = phi.dim();
    let images: Vec<Vec<Polyform>> = (0..2 * n).map(|k| vec![clifford_tm(&gen_basis(n, k), phi)]).collect();
    constant_kernel(&images)
        .into_iter()
        .map(|v| {
            let x = Vector::new(v[..n].iter().cloned().map(Poly::constant).collect());
            let mut xi = Polyform::zero(n);
            for k in 0..n {
                xi.add_term(Blade::single(k + 1), Poly::constant(v[n + k].clone()));
            }
            GenSection::new(x, xi)
        })
        .collect()
}

/// Type of a spinor at a point: `n − rank ρ(Ann φ)`.
pub fn spinor_type(frame: &FrameAlgebra, phi: &Polyform, point: Option<&[BigRational]>) -> Result<usize> {
    frame.check_form(phi)?;
    let at = if phi.has_constant_coefficients() {
        phi.clone()
    } else {
        let x = point.ok_or_else(|| Error::Input("non-constant spinor needs a sample point".into()))?;
        check_point(frame, x)?;
        phi.eval(x)
    };
    let xs: Vec<Vec<Scalar>> = spinor_annihilator(&at)
        .iter()
        .map(|s| s.x.components().iter().map(Poly::constant_term).collect())
        .collect();
    Ok(frame.dim() - span_rank(&xs))
}
