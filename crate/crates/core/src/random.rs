//! Seeded random test data with small integer coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Blade, Monomial, Poly, Polyform, Scalar, Vector};
use crate::frame::FrameAlgebra;

/// Generates forms, vectors and functions legal in a given frame: polynomial
/// coefficients of total degree ≤ 1 in coordinate mode, constants otherwise.
pub struct Sampler {
    rng: ChaCha8Rng,
    dim: usize,
    variables: usize,
    /// Largest absolute integer coefficient.
    pub range: i64,
    /// Probability that a coefficient slot is left empty.
    pub sparsity: f64,
}

impl Sampler {
    pub fn new(frame: &FrameAlgebra, seed: u64) -> Self {
        Sampler::with_shape(frame.dim(), frame.variables(), seed)
    }

    pub fn with_shape(dim: usize, variables: usize, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
            variables,
            range: 3,
            sparsity: 0.4,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.range..=self.range)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let v = self.int();
            if v != 0 {
                return v;
            }
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn constant(&mut self) -> Poly {
        Poly::int(self.int())
    }

    /// Random function: constant plus linear terms in the coordinates.
    pub fn poly(&mut self) -> Poly {
        let mut p = Poly::int(self.int());
        for k in 1..=self.variables {
            if !self.coin(self.sparsity) {
                p.add_term(Monomial::var(k), Scalar::int(self.int()));
            }
        }
        p
    }

    fn slot(&mut self) -> Poly {
        if self.coin(self.sparsity) {
            Poly::zero()
        } else {
            self.poly()
        }
    }

    /// Random homogeneous form of degree `k`.
    pub fn form(&mut self, k: usize) -> Polyform {
        let mut f = Polyform::zero(self.dim);
        for bits in blades_of_grade(self.dim, k) {
            let p = self.slot();
            f.add_term(Blade::from_bits(bits), p);
        }
        f
    }

    /// Random form with constant coefficients (closed-ness not implied).
    pub fn constant_form(&mut self, k: usize) -> Polyform {
        let mut f = Polyform::zero(self.dim);
        for bits in blades_of_grade(self.dim, k) {
            if !self.coin(self.sparsity) {
                let c = self.int();
                f.add_term(Blade::from_bits(bits), Poly::int(c));
            }
        }
        f
    }

    pub fn vector(&mut self) -> Vector {
        Vector::new((0..self.dim).map(|_| self.slot()).collect())
    }

    /// Random inhomogeneous form of the given parity, up to degree `max`.
    pub fn parity_form(&mut self, even: bool, max: usize) -> Polyform {
        let mut f = Polyform::zero(self.dim);
        let start = if even { 0 } else { 1 };
        for k in (start..=max.min(self.dim)).step_by(2) {
            f = &f + &self.form(k);
        }
        f
    }
}

/// Bitmasks of all blades of grade `k` in a frame of dimension `n`.
pub fn blades_of_grade(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    fn rec(n: usize, k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(n, k - 1, i + 1, acc | (1u64 << i), out);
        }
    }
    rec(n, k, 0, 0, &mut out);
    out
}
