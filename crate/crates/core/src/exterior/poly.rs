//! Sparse multivariate polynomials in the frame coordinates `x₁ … xₙ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::scalar::Scalar;

/// Exponent vector with trailing zeros stripped, so constants are `[]`
/// regardless of how many variables the ambient frame has.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v = exps.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    /// `x_k` with 1-based `k`.
    pub fn var(k: usize) -> Self {
        assert!(k >= 1, "variables are 1-based");
        let mut v = vec![0; k];
        v[k - 1] = 1;
        Monomial(v)
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// Exponents padded to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// Number of variable slots actually used (highest variable index).
    pub fn span(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v: Vec<u32> = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Monomial(v)
    }

    /// All monomials in `nvars` variables of total degree at most `max_degree`,
    /// in graded order.
    pub fn enumerate(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for deg in 0..=max_degree {
            let mut cur = vec![0u32; nvars];
            compositions(nvars, deg, 0, &mut cur, &mut out);
        }
        out
    }
}

fn compositions(nvars: usize, left: u32, at: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if left == 0 {
            out.push(Monomial::one());
        }
        return;
    }
    if at == nvars - 1 {
        cur[at] = left;
        out.push(Monomial::from_exponents(cur));
        cur[at] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[at] = e;
        compositions(nvars, left - e, at + 1, cur, out);
    }
    cur[at] = 0;
}

/// A polynomial with [`Scalar`] coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Scalar::int(n))
    }

    /// The coordinate function `x_k`.
    pub fn var(k: usize) -> Self {
        Poly::monomial(Scalar::one(), Monomial::var(k))
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.constant_term())
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_default()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest variable index appearing with nonzero exponent (0 if constant).
    pub fn max_variable(&self) -> usize {
        self.terms.keys().map(Monomial::span).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.conj())).collect(),
        }
    }

    /// `∂/∂x_k`, 1-based.
    pub fn derivative(&self, k: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            if e == 0 {
                continue;
            }
            let mut v = m.0.clone();
            v[k - 1] -= 1;
            out.add_term(Monomial::from_exponents(&v), c * &Scalar::int(e as i64));
        }
        out
    }

    /// Evaluate at a rational point; missing coordinates count as zero.
    pub fn eval(&self, point: &[BigRational]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).cloned().unwrap_or_default();
                v = &v * &Scalar::real(num_traits::pow(x, e as usize));
            }
            acc += &v;
        }
        acc
    }

    /// Relabel variables: `x_k ↦ x_{map(k)}`.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut v: Vec<u32> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let k = map(i + 1);
                if v.len() < k {
                    v.resize(k, 0);
                }
                v[k - 1] += e;
            }
            out.add_term(Monomial::from_exponents(&v), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}**{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_poly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_cancellation() {
        let x = Poly::var(1);
        let y = Poly::var(2);
        let p = &(&x + &y) * &(&x - &y);
        let q = &(&x * &x) - &(&y * &y);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.max_variable(), 2);
    }

    #[test]
    fn derivative_and_eval() {
        let x = Poly::var(1);
        let p = &x.pow(3) + &Poly::int(2);
        assert_eq!(p.derivative(1), x.pow(2).scale(&Scalar::int(3)));
        assert!(p.derivative(2).is_zero());
        let v = p.eval(&[BigRational::from_integer(2.into())]);
        assert_eq!(v, Scalar::int(10));
    }

    #[test]
    fn trailing_zero_exponents_are_canonical() {
        assert_eq!(Monomial::from_exponents(&[1, 0, 0]), Monomial::var(1));
        assert_eq!(Monomial::var(2).padded(4), vec![0, 1, 0, 0]);
        assert!(Poly::int(3).is_constant());
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n + d, d)
        assert_eq!(Monomial::enumerate(3, 2).len(), 10);
        assert_eq!(Monomial::enumerate(0, 3).len(), 1);
        assert_eq!(Monomial::enumerate(2, 0), vec![Monomial::one()]);
    }
}
