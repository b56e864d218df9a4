//! Blades and inhomogeneous differential forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use super::poly::Poly;
use super::scalar::Scalar;
use super::vector::Vector;
use crate::error::{Error, Result};

/// Largest frame dimension a [`Blade`] bitmask can hold.
pub const MAX_DIM: usize = 64;

/// A basis monomial `ε_{i1}∧…∧ε_{ik}` with `i1 < … < ik`, stored as a bitmask
/// (bit `i-1` set for index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_bits(bits: u64) -> Self {
        Blade(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The generator `ε_k`, 1-based.
    pub fn single(k: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&k), "frame index {k} out of range");
        Blade(1u64 << (k - 1))
    }

    /// Blade from strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        let mut last = 0usize;
        for &k in indices {
            if k == 0 || k > MAX_DIM {
                return Err(Error::Input(format!("blade index {k} out of range")));
            }
            if k <= last {
                return Err(Error::Input(format!(
                    "blade indices must be strictly increasing, got {indices:?}"
                )));
            }
            last = k;
            bits |= 1u64 << (k - 1);
        }
        Ok(Blade(bits))
    }

    /// Blade on `ε₁ … ε_n`.
    pub fn top(n: usize) -> Self {
        if n >= 64 {
            Blade(u64::MAX)
        } else {
            Blade((1u64 << n) - 1)
        }
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, k: usize) -> bool {
        (1..=MAX_DIM).contains(&k) && self.0 & (1u64 << (k - 1)) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=MAX_DIM).filter(|&k| self.contains(k)).collect()
    }

    /// Highest index present (0 for the scalar blade).
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// `ε_A ∧ ε_B = sign · ε_{A∪B}`, or `None` if they share an index.
    pub fn wedge(self, other: Blade) -> Option<(Blade, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (i ∈ A, j ∈ B) with i > j
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            b &= b - 1;
            let above = if j >= 63 { 0 } else { self.0 >> (j + 1) };
            swaps += above.count_ones();
        }
        Some((Blade(self.0 | other.0), swaps % 2 == 1))
    }

    /// `ι_{e_k} ε_A`: removes `k`, sign from the number of indices below `k`.
    pub fn remove(self, k: usize) -> Option<(Blade, bool)> {
        if !self.contains(k) {
            return None;
        }
        let below = self.0 & ((1u64 << (k - 1)) - 1);
        Some((Blade(self.0 & !(1u64 << (k - 1))), below.count_ones() % 2 == 1))
    }

    /// Shift every index by `offset`.
    pub fn shifted(self, offset: usize) -> Blade {
        Blade(self.0 << offset)
    }
}

impl Ord for Blade {
    /// Grade first, then lexicographic on the ascending index list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| {
            if self.0 == other.0 {
                return Ordering::Equal;
            }
            let low = (self.0 ^ other.0).trailing_zeros();
            // the blade holding the lowest differing index sorts first
            if self.0 & (1u64 << low) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let idx = self.indices();
        if idx.iter().all(|&k| k <= 9) {
            write!(f, "e")?;
            for k in idx {
                write!(f, "{k}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = idx.iter().map(|k| k.to_string()).collect();
            write!(f, "e[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Homogeneity class of a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Mixed => Parity::Mixed,
        }
    }
}

/// An inhomogeneous form `Σ_A p_A ε_A` over a frame of dimension `dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polyform {
    dim: usize,
    terms: BTreeMap<Blade, Poly>,
}

impl Polyform {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "frame dimension {dim} exceeds {MAX_DIM}");
        Polyform {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Polyform::scalar(dim, Poly::one())
    }

    pub fn scalar(dim: usize, p: Poly) -> Self {
        Polyform::term(dim, Blade::SCALAR, p)
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Polyform::scalar(dim, Poly::constant(c))
    }

    /// The generator `ε_k`.
    pub fn gen(dim: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= dim, "generator {k} outside frame of dim {dim}");
        Polyform::term(dim, Blade::single(k), Poly::one())
    }

    /// `ε_{i1}∧…` for an arbitrary (not necessarily sorted) index list.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Polyform::one(dim), |acc, &k| acc.wedge(&Polyform::gen(dim, k)))
    }

    /// Volume form `ε₁∧…∧ε_n`.
    pub fn volume(dim: usize) -> Self {
        Polyform::term(dim, Blade::top(dim), Poly::one())
    }

    pub fn term(dim: usize, blade: Blade, p: Poly) -> Self {
        let mut f = Polyform::zero(dim);
        f.add_term(blade, p);
        f
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, Poly)>) -> Result<Self> {
        let mut f = Polyform::zero(dim);
        for (b, p) in terms {
            if b.max_index() > dim {
                return Err(Error::Input(format!(
                    "blade {b} does not fit a frame of dimension {dim}"
                )));
            }
            f.add_term(b, p);
        }
        Ok(f)
    }

    pub fn add_term(&mut self, blade: Blade, p: Poly) {
        debug_assert!(blade.max_index() <= self.dim);
        if p.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &p;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: Blade) -> Poly {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    pub fn scalar_part(&self) -> Poly {
        self.coefficient(Blade::SCALAR)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_dim(&self, other: &Polyform) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::dims(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polyform) -> Result<Polyform> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.add_term(*b, p.clone());
        }
        Ok(out)
    }

    pub fn try_wedge(&self, other: &Polyform) -> Result<Polyform> {
        self.check_dim(other)?;
        let mut out = Polyform::zero(self.dim);
        for (b1, p1) in &self.terms {
            for (b2, p2) in &other.terms {
                if let Some((b, neg)) = b1.wedge(*b2) {
                    let p = p1 * p2;
                    out.add_term(b, if neg { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// `a ∧ b`; panics on dimension mismatch (see [`Polyform::try_wedge`]).
    pub fn wedge(&self, other: &Polyform) -> Polyform {
        self.try_wedge(other).expect("wedge of forms on different frames")
    }

    pub fn try_contract(&self, v: &Vector) -> Result<Polyform> {
        if v.dim() != self.dim {
            return Err(Error::dims(self.dim, v.dim()));
        }
        let mut out = Polyform::zero(self.dim);
        for (k, vk) in v.components().iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for (b, p) in &self.terms {
                if let Some((nb, neg)) = b.remove(k + 1) {
                    let q = vk * p;
                    out.add_term(nb, if neg { -q } else { q });
                }
            }
        }
        Ok(out)
    }

    /// Interior product `ι_v a`.
    pub fn contract(&self, v: &Vector) -> Polyform {
        self.try_contract(v).expect("contraction across different frames")
    }

    /// `ι_{e_k} a` for the frame vector `e_k`.
    pub fn contract_basis(&self, k: usize) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, p) in &self.terms {
            if let Some((nb, neg)) = b.remove(k) {
                out.add_term(nb, if neg { -p } else { p.clone() });
            }
        }
        out
    }

    /// `a(X, Y, ·) = ι_Y ι_X a`.
    pub fn eval2(&self, x: &Vector, y: &Vector) -> Polyform {
        self.contract(x).contract(y)
    }

    /// The Clifford anti-automorphism: degree `k` scaled by `(−1)^{k(k−1)/2}`.
    pub fn reversal(&self) -> Polyform {
        self.map_by_grade(|k| if (k * k.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 })
    }

    /// Degree `k` scaled by `(−1)^k`.
    pub fn grade_involution(&self) -> Polyform {
        self.map_by_grade(|k| if k % 2 == 1 { -1 } else { 1 })
    }

    fn map_by_grade(&self, sign: impl Fn(usize) -> i32) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, p) in &self.terms {
            let q = if sign(b.grade()) < 0 { -p } else { p.clone() };
            out.add_term(*b, q);
        }
        out
    }

    pub fn project_degree(&self, k: usize) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, p) in &self.terms {
            if b.grade() == k {
                out.add_term(*b, p.clone());
            }
        }
        out
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(k)` if the form is nonzero and homogeneous of degree `k`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// Parity; the zero form counts as even.
    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for b in self.terms.keys() {
            if b.grade() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polyform {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    pub fn mul_poly(&self, p: &Poly) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, q) in &self.terms {
            out.add_term(*b, q * p);
        }
        out
    }

    pub fn conj(&self) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, p) in &self.terms {
            out.add_term(*b, p.conj());
        }
        out
    }

    /// `e^a = Σ aᵏ/k!`, expanded eagerly. Fails if `a` has a nonzero
    /// scalar part, which would make the series non-terminating.
    pub fn try_exp(&self) -> Result<Polyform> {
        if !self.scalar_part().is_zero() {
            return Err(Error::Input(
                "exponential of a form with nonzero degree-0 part".into(),
            ));
        }
        let mut acc = Polyform::one(self.dim);
        let mut power = Polyform::one(self.dim);
        let mut k: i64 = 1;
        loop {
            power = power.wedge(self).scale(&Scalar::ratio(1, k));
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
            k += 1;
        }
        Ok(acc)
    }

    pub fn exp(&self) -> Polyform {
        self.try_exp().expect("exponential of a form with scalar part")
    }

    /// `aᵏ` under the wedge product.
    pub fn wedge_pow(&self, k: u32) -> Polyform {
        (0..k).fold(Polyform::one(self.dim), |acc, _| acc.wedge(self))
    }

    /// Coefficients evaluated at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Polyform {
        let mut out = Polyform::zero(self.dim);
        for (b, p) in &self.terms {
            out.add_term(*b, Poly::constant(p.eval(point)));
        }
        out
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }

    /// Highest coordinate variable used by any coefficient.
    pub fn max_variable(&self) -> usize {
        self.terms.values().map(Poly::max_variable).max().unwrap_or(0)
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.terms.values().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// The same form viewed in a larger frame (indices unchanged).
    pub fn extend(&self, dim: usize) -> Polyform {
        assert!(dim >= self.dim, "cannot shrink a form's frame");
        Polyform {
            dim,
            terms: self.terms.clone(),
        }
    }

    /// Pull back to a frame where index `k` becomes `k + offset`, coefficient
    /// variables shifted the same way.
    pub fn shifted(&self, offset: usize, dim: usize) -> Polyform {
        assert!(self.dim + offset <= dim, "shifted form does not fit");
        let mut out = Polyform::zero(dim);
        for (b, p) in &self.terms {
            out.add_term(b.shifted(offset), p.relabel(|k| k + offset));
        }
        out
    }

    /// Split off the components containing generator `k`:
    /// `a = a₀ + ε_k ∧ a₁` with `a₀, a₁` free of `ε_k`. Returns `(a₀, a₁)`.
    pub fn split_generator(&self, k: usize) -> (Polyform, Polyform) {
        let a0 = {
            let mut out = Polyform::zero(self.dim);
            for (b, p) in &self.terms {
                if !b.contains(k) {
                    out.add_term(*b, p.clone());
                }
            }
            out
        };
        let a1 = self.contract_basis(k);
        (a0, a1)
    }

    /// Restrict to a smaller frame; fails if any blade uses a dropped index.
    pub fn restrict(&self, dim: usize) -> Result<Polyform> {
        let mut out = Polyform::zero(dim);
        for (b, p) in &self.terms {
            if b.max_index() > dim || p.max_variable() > dim {
                return Err(Error::Reduction(format!(
                    "term {b} with coefficient {p} does not live on the first {dim} generators"
                )));
            }
            out.add_term(*b, p.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Polyform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p.len() == 1 && p.is_constant() {
                write!(f, "{}", p.constant_term())?;
            } else {
                write!(f, "[{p}]")?;
            }
            if *b != Blade::SCALAR {
                write!(f, "*{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polyform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polyform<{}>({})", self.dim, self)
    }
}

impl Add<&Polyform> for &Polyform {
    type Output = Polyform;
    fn add(self, rhs: &Polyform) -> Polyform {
        self.try_add(rhs).expect("sum of forms on different frames")
    }
}

impl Sub<&Polyform> for &Polyform {
    type Output = Polyform;
    fn sub(self, rhs: &Polyform) -> Polyform {
        self + &(-rhs)
    }
}

impl Neg for &Polyform {
    type Output = Polyform;
    fn neg(self) -> Polyform {
        Polyform {
            dim: self.dim,
            terms: self.terms.iter().map(|(b, p)| (*b, -p)).collect(),
        }
    }
}

impl Neg for Polyform {
    type Output = Polyform;
    fn neg(self) -> Polyform {
        -&self
    }
}

macro_rules! owned_form_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Polyform> for Polyform {
            type Output = Polyform;
            fn $m(self, rhs: Polyform) -> Polyform { (&self).$m(&rhs) }
        }
        impl $tr<&Polyform> for Polyform {
            type Output = Polyform;
            fn $m(self, rhs: &Polyform) -> Polyform { (&self).$m(rhs) }
        }
        impl $tr<Polyform> for &Polyform {
            type Output = Polyform;
            fn $m(self, rhs: Polyform) -> Polyform { self.$m(&rhs) }
        }
    )*};
}
owned_form_ops!(Add add, Sub sub);
