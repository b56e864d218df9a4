//! Differential structure on a frame: `d`, Lie derivatives and brackets.
//!
//! A [`FrameAlgebra`] has generators `ε₁ … εₙ` with dual vectors `e₁ … eₙ`.
//! The first `variables` generators are coordinate differentials `dx_k`
//! (so `e_k = ∂/∂x_k` and polynomial coefficients in `x₁ … x_variables` are
//! allowed); every other generator carries an explicit `dε_k` with constant
//! or polynomial coefficients.

mod nil;

pub use nil::{parse_nil, to_nil_string};

use crate::error::{Error, Result};
use crate::exterior::{Blade, Poly, Polyform, Vector};
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Coordinate,
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameAlgebra {
    dim: usize,
    variables: usize,
    d_gen: Vec<Polyform>,
}

impl FrameAlgebra {
    /// Flat coordinate frame: `ε_k = dx_k`, all `dε_k = 0`.
    pub fn coordinate(dim: usize) -> Self {
        FrameAlgebra {
            dim,
            variables: dim,
            d_gen: vec![Polyform::zero(dim); dim],
        }
    }

    /// Left-invariant frame with `dε_k = d_gen[k-1]`; coefficients must be
    /// constant.
    pub fn invariant(d_gen: Vec<Polyform>) -> Result<Self> {
        let dim = d_gen.len();
        for (k, f) in d_gen.iter().enumerate() {
            if f.dim() != dim {
                return Err(Error::dims(dim, f.dim()));
            }
            if !f.has_constant_coefficients() {
                return Err(Error::ModeViolation(format!(
                    "d(e{}) has non-constant coefficients in invariant mode",
                    k + 1
                )));
            }
            if f.homogeneous_degree().is_some_and(|d| d != 2) {
                return Err(Error::Input(format!("d(e{}) is not a 2-form", k + 1)));
            }
        }
        Ok(FrameAlgebra {
            dim,
            variables: 0,
            d_gen,
        })
    }

    /// General constructor: `variables` leading coordinate generators plus
    /// explicit differentials for the rest.
    pub fn mixed(variables: usize, d_gen: Vec<Polyform>) -> Result<Self> {
        let dim = d_gen.len();
        if variables > dim {
            return Err(Error::Input(format!(
                "{variables} coordinate variables exceed frame dimension {dim}"
            )));
        }
        for (k, f) in d_gen.iter().enumerate() {
            if f.dim() != dim {
                return Err(Error::dims(dim, f.dim()));
            }
            if k < variables && !f.is_zero() {
                return Err(Error::ModeViolation(format!(
                    "coordinate generator e{} must have d(e{}) = 0",
                    k + 1,
                    k + 1
                )));
            }
            if f.max_variable() > variables {
                return Err(Error::ModeViolation(format!(
                    "d(e{}) uses coordinates beyond x{variables}",
                    k + 1
                )));
            }
        }
        Ok(FrameAlgebra {
            dim,
            variables,
            d_gen,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn mode(&self) -> Mode {
        if self.variables == 0 {
            Mode::Invariant
        } else {
            Mode::Coordinate
        }
    }

    /// `dε_k`, 1-based.
    pub fn d_gen(&self, k: usize) -> &Polyform {
        &self.d_gen[k - 1]
    }

    pub fn d_gens(&self) -> &[Polyform] {
        &self.d_gen
    }

    /// Frame extended by a connection generator `ε_{n+1}` with
    /// `dε_{n+1} = curvature`. Coordinates are unchanged, so the new
    /// direction is invariant.
    pub fn extend_circle(&self, curvature: &Polyform) -> Result<FrameAlgebra> {
        self.check_form(curvature)?;
        if curvature.homogeneous_degree().is_some_and(|d| d != 2) {
            return Err(Error::Input("curvature must be a 2-form".into()));
        }
        if !self.d(curvature)?.is_zero() {
            return Err(Error::Twist("curvature of a circle extension must be closed".into()));
        }
        let n = self.dim + 1;
        let mut d_gen: Vec<Polyform> = self.d_gen.iter().map(|f| f.extend(n)).collect();
        d_gen.push(curvature.extend(n));
        Ok(FrameAlgebra {
            dim: n,
            variables: self.variables,
            d_gen,
        })
    }

    /// Direct sum of two frames; the second frame's generators (and
    /// coordinates) are shifted past the first's. Coordinate generators of
    /// the second factor must stay leading, so this requires the first frame
    /// to be purely coordinate whenever the second one has coordinates.
    pub fn direct_sum(&self, other: &FrameAlgebra) -> Result<FrameAlgebra> {
        let n = self.dim + other.dim;
        if other.variables > 0 && self.variables != self.dim {
            return Err(Error::Input(
                "direct sum needs the first factor fully coordinate when the second has coordinates"
                    .into(),
            ));
        }
        let mut d_gen: Vec<Polyform> = self.d_gen.iter().map(|f| f.extend(n)).collect();
        d_gen.extend(other.d_gen.iter().map(|f| f.shifted(self.dim, n)));
        let variables = if other.variables > 0 {
            self.dim + other.variables
        } else {
            self.variables
        };
        FrameAlgebra::mixed(variables, d_gen)
    }

    /// Checks that the form's coefficients are legal in this frame.
    pub fn check_form(&self, a: &Polyform) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::dims(self.dim, a.dim()));
        }
        if a.max_variable() > self.variables {
            return Err(self.mode_violation(a.max_variable()));
        }
        Ok(())
    }

    pub fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::dims(self.dim, v.dim()));
        }
        let mv = v.components().iter().map(Poly::max_variable).max().unwrap_or(0);
        if mv > self.variables {
            return Err(self.mode_violation(mv));
        }
        Ok(())
    }

    pub fn check_poly(&self, p: &Poly) -> Result<()> {
        if p.max_variable() > self.variables {
            return Err(self.mode_violation(p.max_variable()));
        }
        Ok(())
    }

    fn mode_violation(&self, var: usize) -> Error {
        match self.mode() {
            Mode::Invariant => {
                Error::ModeViolation("non-constant coefficient in invariant mode".into())
            }
            Mode::Coordinate => Error::ModeViolation(format!(
                "coefficient uses x{var} but the frame has only {} coordinates",
                self.variables
            )),
        }
    }

    /// `df` of a coefficient function.
    pub fn d_poly(&self, f: &Poly) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for k in 1..=self.variables.min(f.max_variable()) {
            out.add_term(Blade::single(k), f.derivative(k));
        }
        out
    }

    fn d_blade(&self, b: Blade) -> Polyform {
        // d(ε_{i1}∧…∧ε_{ik}) = Σ_j (−1)^{j} ε_{i1}…dε_{ij}…ε_{ik}
        let idx = b.indices();
        let mut out = Polyform::zero(self.dim);
        for (j, &k) in idx.iter().enumerate() {
            let dk = &self.d_gen[k - 1];
            if dk.is_zero() {
                continue;
            }
            let before = Polyform::basis(self.dim, &idx[..j]);
            let after = Polyform::basis(self.dim, &idx[j + 1..]);
            let t = before.wedge(dk).wedge(&after);
            out = if j % 2 == 1 { &out - &t } else { &out + &t };
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self, a: &Polyform) -> Result<Polyform> {
        self.check_form(a)?;
        Ok(self.d_unchecked(a))
    }

    pub(crate) fn d_unchecked(&self, a: &Polyform) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, p) in a.terms() {
            let blade = Polyform::term(self.dim, *b, Poly::one());
            let dp = self.d_poly(p);
            if !dp.is_zero() {
                out = &out + &dp.wedge(&blade);
            }
            let db = self.d_blade(*b);
            if !db.is_zero() {
                out = &out + &db.mul_poly(p);
            }
        }
        out
    }

    /// `X(f)`.
    pub fn apply(&self, x: &Vector, f: &Poly) -> Poly {
        self.d_poly(f).contract(x).scalar_part()
    }

    /// Cartan's formula `L_X = ι_X d + d ι_X`.
    pub fn lie_derivative(&self, x: &Vector, a: &Polyform) -> Result<Polyform> {
        self.check_vector(x)?;
        self.check_form(a)?;
        Ok(&self.d_unchecked(a).contract(x) + &self.d_unchecked(&a.contract(x)))
    }

    /// `[X, Y]` from `ε_k([X,Y]) = X(Y^k) − Y(X^k) − dε_k(X, Y)`.
    pub fn lie_bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let comps = (1..=self.dim)
            .map(|k| {
                let xy = &self.apply(x, y.get(k)) - &self.apply(y, x.get(k));
                let c = self.d_gen[k - 1].eval2(x, y).scalar_part();
                &xy - &c
            })
            .collect();
        Ok(Vector::new(comps))
    }

    /// PASS iff `d(dε_k) = 0` for every generator.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for k in 1..=self.dim {
            let dd = self.d_unchecked(&self.d_gen[k - 1]);
            r.push(Check::vanishing(format!("frame.d2.e{k:02}"), &dd));
        }
        r
    }

    /// `true` if every generator is closed under `d²`.
    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Scalar;

    fn heis() -> FrameAlgebra {
        parse_nil("(0,0,12)", None).unwrap()
    }

    #[test]
    fn coordinate_d() {
        let f = FrameAlgebra::coordinate(2);
        let a = Polyform::gen(2, 2).mul_poly(&Poly::var(1));
        assert_eq!(f.d(&a).unwrap(), Polyform::basis(2, &[1, 2]));
    }

    #[test]
    fn heisenberg_d() {
        let f = heis();
        assert_eq!(f.d(&Polyform::gen(3, 3)).unwrap(), Polyform::basis(3, &[1, 2]));
        assert!(f.d(&Polyform::basis(3, &[1, 3])).unwrap().is_zero());
        let bad = Polyform::gen(3, 1).mul_poly(&Poly::var(1));
        assert!(matches!(f.d(&bad), Err(Error::ModeViolation(_))));
    }

    #[test]
    fn brackets() {
        let c = FrameAlgebra::coordinate(2);
        let e1 = Vector::basis(2, 1);
        let x1e2 = Vector::basis(2, 2).mul_poly(&Poly::var(1));
        assert_eq!(c.lie_bracket(&e1, &x1e2).unwrap(), Vector::basis(2, 2));
        let a = Polyform::gen(2, 2).mul_poly(&Poly::var(1));
        assert_eq!(c.lie_derivative(&e1, &a).unwrap(), Polyform::gen(2, 2));

        let h = heis();
        let b = h
            .lie_bracket(&Vector::basis(3, 1), &Vector::basis(3, 2))
            .unwrap();
        assert_eq!(b, Vector::basis(3, 3).scale(&Scalar::int(-1)));
    }

    #[test]
    fn validate_reports_bad_frames() {
        let mut d = vec![Polyform::zero(3); 3];
        d[1] = Polyform::basis(3, &[1, 3]);
        d[2] = Polyform::basis(3, &[1, 2]);
        let f = FrameAlgebra::invariant(d).unwrap();
        let r = f.validate();
        // d²ε₂ = −ε₁∧dε₃ = −ε₁∧ε₁₂ = 0 and d²ε₃ = −ε₁∧ε₁₃ = 0: both closed
        assert!(r.passed());
        let mut d = vec![Polyform::zero(3); 3];
        d[0] = Polyform::basis(3, &[2, 3]);
        d[2] = Polyform::basis(3, &[1, 2]);
        let f = FrameAlgebra::invariant(d).unwrap();
        // d²ε₁ = dε₂∧ε₃ − ε₂∧dε₃ = −ε₂∧ε₁₂ = 0; d²ε₃ = dε₁∧ε₂ − ε₁∧dε₂ = ε₂₃∧ε₂ = 0
        assert!(f.validate().passed());
        assert!(FrameAlgebra::coordinate(4).validate().passed());
    }

    #[test]
    fn circle_extension() {
        let base = FrameAlgebra::coordinate(2);
        let ext = base.extend_circle(&Polyform::basis(2, &[1, 2])).unwrap();
        assert_eq!(ext.dim(), 3);
        assert_eq!(ext.variables(), 2);
        assert_eq!(ext.d(&Polyform::gen(3, 3)).unwrap(), Polyform::basis(3, &[1, 2]));
    }
}
