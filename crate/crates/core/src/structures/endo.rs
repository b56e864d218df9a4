//! Square polynomial matrices acting on an explicit frame of `𝕋M` or `E`.
//!
//! Frames are ordered `(e₁…eₙ, ε₁…εₙ)` for `𝕋M` and
//! `(e₁…eₙ, ε₁…εₙ, f, g)` for `E = 𝕋M⊕ℝ⊕ℝ`, matching
//! [`ContactSection::to_coords`].

use num_rational::BigRational;
use serde_json::Value;

use crate::courant::{ContactSection, GenSection};
use crate::error::{Error, Result};
use crate::exterior::{Poly, Scalar};
use crate::io::{encode_poly, Encode};
use crate::linalg::Matrix;

/// Which bundle the matrix acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    /// `𝕋M`, frame size `2n`.
    Tangent,
    /// `E = 𝕋M⊕ℝ⊕ℝ`, frame size `2n+2`.
    Contact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameEndo {
    n: usize,
    bundle: Bundle,
    rows: Vec<Vec<Poly>>,
}

fn frame_size(n: usize, bundle: Bundle) -> usize {
    match bundle {
        Bundle::Tangent => 2 * n,
        Bundle::Contact => 2 * n + 2,
    }
}

impl FrameEndo {
    pub fn new(n: usize, bundle: Bundle, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let k = frame_size(n, bundle);
        if rows.len() != k {
            return Err(Error::dims(k, rows.len()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::dims(k, r.len()));
        }
        Ok(FrameEndo { n, bundle, rows })
    }

    pub fn zero(n: usize, bundle: Bundle) -> Self {
        let k = frame_size(n, bundle);
        FrameEndo {
            n,
            bundle,
            rows: vec![vec![Poly::zero(); k]; k],
        }
    }

    pub fn identity(n: usize, bundle: Bundle) -> Self {
        let mut m = FrameEndo::zero(n, bundle);
        for i in 0..m.size() {
            m.rows[i][i] = Poly::one();
        }
        m
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(n: usize, bundle: Bundle, cols: &[Vec<Poly>]) -> Result<Self> {
        let mut m = FrameEndo::zero(n, bundle);
        if cols.len() != m.size() {
            return Err(Error::dims(m.size(), cols.len()));
        }
        for (j, c) in cols.iter().enumerate() {
            if c.len() != m.size() {
                return Err(Error::dims(m.size(), c.len()));
            }
            for (i, p) in c.iter().enumerate() {
                m.rows[i][j] = p.clone();
            }
        }
        Ok(m)
    }

    /// Matrix of a linear map on `E` over a frame of dimension `n`.
    pub fn of_contact_map(n: usize, f: impl Fn(&ContactSection) -> ContactSection) -> Self {
        let k = 2 * n + 2;
        let cols: Vec<Vec<Poly>> = (0..k)
            .map(|j| {
                let mut c = vec![Poly::zero(); k];
                c[j] = Poly::one();
                f(&ContactSection::from_coords(n, &c)).to_coords()
            })
            .collect();
        FrameEndo::from_columns(n, Bundle::Contact, &cols).expect("square by construction")
    }

    /// Matrix of a linear map on `𝕋M` over a frame of dimension `n`.
    pub fn of_gen_map(n: usize, f: impl Fn(&GenSection) -> GenSection) -> Self {
        let cols: Vec<Vec<Poly>> = (0..2 * n)
            .map(|j| {
                let mut c = vec![Poly::zero(); 2 * n + 2];
                c[j] = Poly::one();
                let s = ContactSection::from_coords(n, &c).gen_part();
                gen_coords(&f(&s))
            })
            .collect();
        FrameEndo::from_columns(n, Bundle::Tangent, &cols).expect("square by construction")
    }

    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn bundle(&self) -> Bundle {
        self.bundle
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.rows.iter().flatten().all(Poly::is_constant)
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.size());
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(Poly::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn apply_contact(&self, s: &ContactSection) -> ContactSection {
        assert_eq!(self.bundle, Bundle::Contact);
        ContactSection::from_coords(s.dim(), &self.apply(&s.to_coords()))
    }

    pub fn apply_gen(&self, s: &GenSection) -> GenSection {
        assert_eq!(self.bundle, Bundle::Tangent);
        gen_from_coords(s.dim(), &self.apply(&gen_coords(s)))
    }

    pub fn mul(&self, o: &FrameEndo) -> FrameEndo {
        assert_eq!((self.n, self.bundle), (o.n, o.bundle));
        let k = self.size();
        let mut m = FrameEndo::zero(self.n, self.bundle);
        for i in 0..k {
            for j in 0..k {
                let mut acc = Poly::zero();
                for l in 0..k {
                    if !self.rows[i][l].is_zero() && !o.rows[l][j].is_zero() {
                        acc = &acc + &(&self.rows[i][l] * &o.rows[l][j]);
                    }
                }
                m.rows[i][j] = acc;
            }
        }
        m
    }

    fn zip(&self, o: &FrameEndo, f: impl Fn(&Poly, &Poly) -> Poly) -> FrameEndo {
        assert_eq!((self.n, self.bundle), (o.n, o.bundle));
        FrameEndo {
            n: self.n,
            bundle: self.bundle,
            rows: self
                .rows
                .iter()
                .zip(&o.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn add(&self, o: &FrameEndo) -> FrameEndo {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &FrameEndo) -> FrameEndo {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> FrameEndo {
        FrameEndo {
            n: self.n,
            bundle: self.bundle,
            rows: self.rows.iter().map(|r| r.iter().map(|p| p.scale(c)).collect()).collect(),
        }
    }

    pub fn neg(&self) -> FrameEndo {
        self.scale(&-Scalar::one())
    }

    pub fn transpose(&self) -> FrameEndo {
        let k = self.size();
        let mut m = FrameEndo::zero(self.n, self.bundle);
        for i in 0..k {
            for j in 0..k {
                m.rows[j][i] = self.rows[i][j].clone();
            }
        }
        m
    }

    /// Adjoint with respect to the split pairing (`pairing_tm` on a
    /// `2n`-frame, `pairing_contact` on a `2n+2`-frame): `S Aᵀ S` where `S`
    /// swaps `eᵢ ↔ εᵢ` and `f ↔ g`.
    pub fn adjoint(&self) -> FrameEndo {
        let k = self.size();
        let s = self.swap_perm();
        let t = self.transpose();
        let mut m = FrameEndo::zero(self.n, self.bundle);
        for i in 0..k {
            for j in 0..k {
                m.rows[i][j] = t.rows[s[i]][s[j]].clone();
            }
        }
        m
    }

    /// Index permutation exchanging `eᵢ ↔ εᵢ` and `f ↔ g`.
    fn swap_perm(&self) -> Vec<usize> {
        let n = self.n;
        (0..self.size())
            .map(|i| match i {
                i if i < n => i + n,
                i if i < 2 * n => i - n,
                i if i == 2 * n => 2 * n + 1,
                _ => 2 * n,
            })
            .collect()
    }

    /// Upper-left `𝕋M` block of an endomorphism of `E`.
    pub fn tm_block(&self) -> FrameEndo {
        let k = 2 * self.n;
        FrameEndo {
            n: self.n,
            bundle: Bundle::Tangent,
            rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> Matrix {
        Matrix::from_rows(self.rows.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect())
    }

    /// The scalar matrix, if every entry is constant.
    pub fn to_matrix(&self) -> Option<Matrix> {
        self.is_constant().then(|| self.eval(&[]))
    }

    pub fn from_matrix(n: usize, bundle: Bundle, m: &Matrix) -> Result<FrameEndo> {
        FrameEndo::new(
            n,
            bundle,
            (0..m.rows()).map(|i| m.row(i).iter().cloned().map(Poly::constant).collect()).collect(),
        )
    }
}

/// Coordinates of a `𝕋M` section in the basis `(e₁…eₙ, ε₁…εₙ)`.
pub fn gen_coords(s: &GenSection) -> Vec<Poly> {
    let mut c = s.to_contact().to_coords();
    c.truncate(2 * s.dim());
    c
}

pub fn gen_from_coords(n: usize, c: &[Poly]) -> GenSection {
    let mut full = c.to_vec();
    full.push(Poly::zero());
    full.push(Poly::zero());
    ContactSection::from_coords(n, &full).gen_part()
}

impl Encode for FrameEndo {
    fn encode(&self) -> Value {
        let n = self.rows.iter().flatten().map(Poly::max_variable).max().unwrap_or(0);
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|p| encode_poly(p, n)).collect()))
                .collect(),
        )
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}
