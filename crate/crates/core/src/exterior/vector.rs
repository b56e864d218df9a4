//! Vector fields in the frame basis `e₁ … eₙ` (dual to `ε₁ … εₙ`).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    components: Vec<Poly>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector {
            components: vec![Poly::zero(); dim],
        }
    }

    pub fn new(components: Vec<Poly>) -> Self {
        Vector { components }
    }

    /// The frame vector `e_k`, 1-based.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= dim, "basis vector {k} outside frame of dim {dim}");
        let mut v = Vector::zero(dim);
        v.components[k - 1] = Poly::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// Component `k`, 1-based.
    pub fn get(&self, k: usize) -> &Poly {
        &self.components[k - 1]
    }

    pub fn set(&mut self, k: usize, p: Poly) {
        self.components[k - 1] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector::new(self.components.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, f: &Poly) -> Vector {
        Vector::new(self.components.iter().map(|p| p * f).collect())
    }

    pub fn conj(&self) -> Vector {
        Vector::new(self.components.iter().map(Poly::conj).collect())
    }

    pub fn eval(&self, point: &[BigRational]) -> Vector {
        Vector::new(
            self.components
                .iter()
                .map(|p| Poly::constant(p.eval(point)))
                .collect(),
        )
    }

    /// Directional derivative `X(f)` of a coefficient function, treating the
    /// frame as coordinate vector fields.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.derivative(k + 1);
            if !df.is_zero() {
                out = &out + &(c * &df);
            }
        }
        out
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.components.iter().all(Poly::is_constant)
    }

    pub fn extend(&self, dim: usize) -> Vector {
        assert!(dim >= self.dim());
        let mut c = self.components.clone();
        c.resize(dim, Poly::zero());
        Vector::new(c)
    }

    pub fn shifted(&self, offset: usize, dim: usize) -> Vector {
        assert!(self.dim() + offset <= dim);
        let mut c = vec![Poly::zero(); dim];
        for (k, p) in self.components.iter().enumerate() {
            c[k + offset] = p.relabel(|j| j + offset);
        }
        Vector::new(c)
    }

    /// Drop trailing components; the dropped ones must vanish.
    pub fn truncate(&self, dim: usize) -> Option<Vector> {
        if self.components[dim..].iter().any(|p| !p.is_zero()) {
            return None;
        }
        Some(Vector::new(self.components[..dim].to_vec()))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p.len() == 1 && p.is_constant() {
                write!(f, "{}*E{}", p.constant_term(), k + 1)?;
            } else {
                write!(f, "[{p}]*E{}", k + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector<{}>({})", self.dim(), self)
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "sum of vectors on different frames");
        Vector::new(
            self.components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self + &(-rhs)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(self.components.iter().map(|p| -p).collect())
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

impl Add<Vector> for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub<Vector> for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directional_derivative() {
        let x = Vector::basis(2, 1).mul_poly(&Poly::var(2));
        let f = &Poly::var(1) * &Poly::var(1);
        assert_eq!(x.apply(&f), (&Poly::var(1) * &Poly::var(2)).scale(&Scalar::int(2)));
    }

    #[test]
    fn truncate_requires_vanishing_tail() {
        let v = Vector::basis(3, 3);
        assert!(v.truncate(2).is_none());
        assert_eq!(Vector::basis(3, 1).truncate(2), Some(Vector::basis(2, 1)));
    }
}
