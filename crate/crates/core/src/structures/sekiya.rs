//! Sekiya quadruples `(Φ, e₁, e₂, λ)`, the assembled endomorphism of `E`
//! and its `(B, b, a)`-deformations.

use serde_json::{json, Value};

use crate::courant::{pairing_tm, ContactSection, GenSection};
use crate::error::{Error, Result};
use crate::exterior::{Poly, Polyform, Scalar, Vector};
use crate::io::Encode;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::spinor::pythagorean_mu;

use super::endo::{gen_coords, gen_from_coords, Bundle, FrameEndo};
use super::transform::BbaTransform;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SekiyaQuadruple {
    pub phi: FrameEndo,
    pub e1: GenSection,
    pub e2: GenSection,
    pub lambda: Scalar,
    pub mu: Scalar,
}

impl SekiyaQuadruple {
    /// Quadruple with `μ = √(1 + λ²)`; fails if that root is irrational.
    pub fn new(phi: FrameEndo, e1: GenSection, e2: GenSection, lambda: Scalar) -> Result<Self> {
        let mu = pythagorean_mu(&lambda).ok_or_else(|| Error::Unrepresentable {
            value: (&Scalar::one() + &(&lambda * &lambda)).to_string(),
        })?;
        SekiyaQuadruple::with_mu(phi, e1, e2, lambda, mu)
    }

    pub fn with_mu(phi: FrameEndo, e1: GenSection, e2: GenSection, lambda: Scalar, mu: Scalar) -> Result<Self> {
        let n = phi.base_dim();
        if phi.bundle() != Bundle::Tangent {
            return Err(Error::Structure("Φ must act on 𝕋M".into()));
        }
        for e in [&e1, &e2] {
            if e.dim() != n {
                return Err(Error::dims(n, e.dim()));
            }
        }
        Ok(SekiyaQuadruple { phi, e1, e2, lambda, mu })
    }

    pub fn dim(&self) -> usize {
        self.phi.base_dim()
    }

    /// `(Φ, e₂, e₁, −λ)`, the same structure with the roles of `e₁, e₂`
    /// exchanged.
    pub fn swapped(&self) -> Self {
        SekiyaQuadruple {
            phi: self.phi.clone(),
            e1: self.e2.clone(),
            e2: self.e1.clone(),
            lambda: -self.lambda.clone(),
            mu: self.mu.clone(),
        }
    }

    /// Cosymplectic-type data: `Φ = (0, −θ⁻¹; θ, 0)` on `ker η ⊕ Ann(R)`,
    /// zero on `R` and `η`, with `e₁ = η`, `e₂ = R`, `λ = 0`. Constant
    /// coefficients only.
    pub fn cosymplectic(theta: &Polyform, eta: &Polyform, reeb: &Vector) -> Result<Self> {
        let n = theta.dim();
        let th = constant_matrix_of_2form(theta)?;
        let et = constant_covector(eta)?;
        let r: Vec<Scalar> = constant_vector(reeb)?;
        // θ⁻¹: Ann(R) → ker η by solving ι_Xθ = ξ, η(X) = 0.
        let mut sys_rows: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| th.get(j, i).clone()).collect()).collect();
        sys_rows.push(et.clone());
        let sys = Matrix::from_rows(sys_rows);
        let inv_on = |xi: &[Scalar]| -> Result<Vec<Scalar>> {
            let xr = dot(xi, &r);
            let proj: Vec<Scalar> = xi.iter().zip(&et).map(|(x, e)| x - &(&xr * e)).collect();
            let mut rhs = proj;
            rhs.push(Scalar::zero());
            sys.solve(&rhs)
                .ok_or_else(|| Error::Structure("θ is degenerate on ker η".into()))
        };
        let mut cols = Vec::with_capacity(2 * n);
        for j in 0..2 * n {
            let mut col = vec![Scalar::zero(); 2 * n];
            if j < n {
                // ι_{e_j}θ = Σ_k θ_{jk} ε_k
                for k in 0..n {
                    col[n + k] = th.get(j, k).clone();
                }
            } else {
                let mut xi = vec![Scalar::zero(); n];
                xi[j - n] = Scalar::one();
                let x = inv_on(&xi)?;
                for k in 0..n {
                    col[k] = -x[k].clone();
                }
            }
            cols.push(col.into_iter().map(Poly::constant).collect());
        }
        let phi = FrameEndo::from_columns(n, Bundle::Tangent, &cols)?;
        SekiyaQuadruple::new(phi, GenSection::form(eta.clone()), GenSection::vector(reeb.clone()), Scalar::zero())
    }

    /// Complex-type data: `Φ = (φ, 0; 0, −φ*)` for an endomorphism `φ` of
    /// `TM` (columns are images of `e_j`), with `e₁ = α`, `e₂ = R`, `λ = 0`.
    pub fn complex_type(phi_tm: &[Vec<Poly>], alpha: &Polyform, reeb: &Vector) -> Result<Self> {
        let n = alpha.dim();
        if phi_tm.len() != n || phi_tm.iter().any(|r| r.len() != n) {
            return Err(Error::dims(n, phi_tm.len()));
        }
        let mut m = FrameEndo::zero(n, Bundle::Tangent);
        for (i, row) in phi_tm.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                m.set(i, j, entry.clone());
                // (φ*ξ)_i = Σ_j ξ_j φ_{ji}
                m.set(n + i, n + j, -phi_tm[j][i].clone());
            }
        }
        SekiyaQuadruple::new(m, GenSection::form(alpha.clone()), GenSection::vector(reeb.clone()), Scalar::zero())
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn constant_matrix_of_2form(w: &Polyform) -> Result<Matrix> {
    let n = w.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let row = w.contract(&Vector::basis(n, i + 1));
        for j in 0..n {
            let c = row.coefficient(crate::exterior::Blade::single(j + 1));
            let c = c
                .as_constant()
                .ok_or_else(|| Error::Structure("expected constant coefficients".into()))?;
            m.set(i, j, c);
        }
    }
    Ok(m)
}

fn constant_covector(a: &Polyform) -> Result<Vec<Scalar>> {
    (1..=a.dim())
        .map(|k| {
            a.coefficient(crate::exterior::Blade::single(k))
                .as_constant()
                .ok_or_else(|| Error::Structure("expected constant coefficients".into()))
        })
        .collect()
}

fn constant_vector(v: &Vector) -> Result<Vec<Scalar>> {
    v.components()
        .iter()
        .map(|p| p.as_constant().ok_or_else(|| Error::Structure("expected constant coefficients".into())))
        .collect()
}

impl Encode for SekiyaQuadruple {
    fn encode(&self) -> Value {
        json!({
            "Phi": self.phi.encode(),
            "e1": self.e1.encode(),
            "e2": self.e2.encode(),
            "lambda": self.lambda.to_string(),
            "mu": self.mu.to_string(),
        })
    }
    fn is_zero_value(&self) -> bool {
        false
    }
}

fn residual_gen(name: &str, s: &GenSection) -> Check {
    Check::vanishing(name, s)
}

/// Exact checks of the four axiom groups and `μ² = 1 + λ²`.
pub fn validate_sekiya(q: &SekiyaQuadruple) -> Report {
    let mut r = Report::new();
    let n = q.dim();
    let half = Poly::constant(Scalar::ratio(1, 2));
    r.push(Check::vanishing("sekiya.e1e1", &pairing_tm(&q.e1, &q.e1)));
    r.push(Check::vanishing("sekiya.e2e2", &pairing_tm(&q.e2, &q.e2)));
    r.push(Check::vanishing("sekiya.e1e2", &(&pairing_tm(&q.e1, &q.e2) - &half)));
    r.push(Check::vanishing("sekiya.skew", &q.phi.adjoint().add(&q.phi)));
    let lam = Poly::constant(q.lambda.clone());
    r.push(residual_gen(
        "sekiya.eigen.e1",
        &q.phi.apply_gen(&q.e1).sub(&q.e1.mul_poly(&lam)),
    ));
    r.push(residual_gen(
        "sekiya.eigen.e2",
        &q.phi.apply_gen(&q.e2).add(&q.e2.mul_poly(&lam)),
    ));
    // Φ²(v) + v − 2(1+λ²)(⟨v,e₂⟩e₁ + ⟨v,e₁⟩e₂) on every frame vector
    let c = Poly::constant(&Scalar::int(2) * &(&Scalar::one() + &(&q.lambda * &q.lambda)));
    let mut worst: Option<GenSection> = None;
    for j in 0..2 * n {
        let mut coords = vec![Poly::zero(); 2 * n];
        coords[j] = Poly::one();
        let v = gen_from_coords(n, &coords);
        let p2 = q.phi.apply_gen(&q.phi.apply_gen(&v));
        let rhs = q.e1.mul_poly(&pairing_tm(&v, &q.e2)).add(&q.e2.mul_poly(&pairing_tm(&v, &q.e1)));
        let res = p2.add(&v).sub(&rhs.mul_poly(&c));
        if !res.is_zero() && worst.is_none() {
            worst = Some(res);
        }
    }
    r.push(match worst {
        None => Check::pass("sekiya.square"),
        Some(res) => Check::fail("sekiya.square", Some(res.encode())),
    });
    let mu_res = &(&(&q.mu * &q.mu) - &Scalar::one()) - &(&q.lambda * &q.lambda);
    r.push(Check::vanishing("sekiya.mu", &mu_res));
    r
}

/// `𝒥 = (Φ, μe₁, μe₂; −2μ⟨e₂,·⟩, −λ, 0; −2μ⟨e₁,·⟩, 0, λ)` on `E`, without
/// validating the quadruple.
pub fn assemble_jinv_unchecked(q: &SekiyaQuadruple) -> FrameEndo {
    let n = q.dim();
    let mu = Poly::constant(q.mu.clone());
    let mut j = FrameEndo::zero(n, Bundle::Contact);
    for r in 0..2 * n {
        for c in 0..2 * n {
            j.set(r, c, q.phi.get(r, c).clone());
        }
    }
    let e1 = gen_coords(&q.e1);
    let e2 = gen_coords(&q.e2);
    for r in 0..2 * n {
        j.set(r, 2 * n, &e1[r] * &mu);
        j.set(r, 2 * n + 1, &e2[r] * &mu);
    }
    let m2 = mu.scale(&Scalar::int(-2));
    for c in 0..2 * n {
        let mut coords = vec![Poly::zero(); 2 * n];
        coords[c] = Poly::one();
        let v = gen_from_coords(n, &coords);
        j.set(2 * n, c, &m2 * &pairing_tm(&q.e2, &v));
        j.set(2 * n + 1, c, &m2 * &pairing_tm(&q.e1, &v));
    }
    j.set(2 * n, 2 * n, Poly::constant(-q.lambda.clone()));
    j.set(2 * n + 1, 2 * n + 1, Poly::constant(q.lambda.clone()));
    j
}

/// [`assemble_jinv_unchecked`] after [`validate_sekiya`].
pub fn assemble_jinv(q: &SekiyaQuadruple) -> Result<FrameEndo> {
    let rep = validate_sekiya(q);
    if let Some(c) = rep.failures().next() {
        return Err(Error::Structure(format!("invalid Sekiya quadruple: {} fails", c.name)));
    }
    Ok(assemble_jinv_unchecked(q))
}

/// `jinv.square` (`𝒥² = −id`) and `jinv.skew` (`𝒥* = −𝒥`).
pub fn check_jinv(j: &FrameEndo) -> Report {
    let mut r = Report::new();
    let id = FrameEndo::identity(j.base_dim(), j.bundle());
    r.push(Check::vanishing("jinv.square", &j.mul(j).add(&id)));
    r.push(Check::vanishing("jinv.skew", &j.adjoint().add(j)));
    r
}

/// Reads `(Φ, e₁, e₂, λ)` back out of an endomorphism of `E` of the
/// assembled shape, taking `μ = √(1+λ²) > 0`.
pub fn disassemble_jinv(j: &FrameEndo) -> Result<SekiyaQuadruple> {
    let n = j.base_dim();
    let lam = j
        .get(2 * n + 1, 2 * n + 1)
        .as_constant()
        .ok_or_else(|| Error::Structure("λ′ is not constant".into()))?;
    let mu = pythagorean_mu(&lam).ok_or_else(|| Error::Unrepresentable {
        value: (&Scalar::one() + &(&lam * &lam)).to_string(),
    })?;
    let inv = Poly::constant(mu.inv().expect("μ ≥ 1"));
    let col = |c: usize| -> GenSection {
        let v: Vec<Poly> = (0..2 * n).map(|r| j.get(r, c) * &inv).collect();
        gen_from_coords(n, &v)
    };
    SekiyaQuadruple::with_mu(j.tm_block(), col(2 * n), col(2 * n + 1), lam, mu)
}

/// `q′` with `𝒥(q′) = e^t 𝒥(q) e^{−t}`. Fails when `1 + λ′²` is not a
/// rational square or `λ′` is not constant.
pub fn transform_sekiya(t: &BbaTransform, q: &SekiyaQuadruple) -> Result<SekiyaQuadruple> {
    let j = assemble_jinv(q)?;
    disassemble_jinv(&t.conjugate(&j))
}

/// The deformation formulas applied term by term, with `⟨v,a⟩` the
/// `𝕋M` pairing against `(0, a)` and `e^B(X, ξ) = (X, ξ + ι_XB)`.
pub fn transform_sekiya_literal(t: &BbaTransform, q: &SekiyaQuadruple) -> Result<SekiyaQuadruple> {
    let n = q.dim();
    let a = GenSection::form(t.a.clone());
    let b = GenSection::form(t.b.clone());
    let e_b = |v: &GenSection| GenSection::new(v.x.clone(), &v.xi + &t.b2.contract(&v.x));
    let e_mb = |v: &GenSection| GenSection::new(v.x.clone(), &v.xi - &t.b2.contract(&v.x));
    let phi = |v: &GenSection| q.phi.apply_gen(v);
    let p = |u: &GenSection, v: &GenSection| pairing_tm(u, v);
    let mu = Poly::constant(q.mu.clone());
    let two_mu = mu.scale(&Scalar::int(2));
    let lam_p = &(&(&Poly::constant(q.lambda.clone()) + &p(&b, &phi(&a)).scale(&Scalar::int(2)))
        + &(&two_mu * &p(&q.e1, &a)))
        - &(&two_mu * &p(&q.e2, &b));
    let lam = lam_p
        .as_constant()
        .ok_or_else(|| Error::Structure("λ′ is not constant".into()))?;
    let mu_p = pythagorean_mu(&lam).ok_or_else(|| Error::Unrepresentable {
        value: (&Scalar::one() + &(&lam * &lam)).to_string(),
    })?;
    let phi_a = phi(&a);
    let phi_b = phi(&b);
    let eb_phi_a = e_b(&phi_a);
    let eb_phi_b = e_b(&phi_b);
    let eb_e1 = e_b(&q.e1);
    let eb_e2 = e_b(&q.e2);
    let a_phib = p(&a, &phi_b);
    let b_phia = p(&b, &phi_a);
    let phi_prime = |v: &GenSection| -> GenSection {
        let va = p(v, &a);
        let vb = p(v, &b);
        let mut out = e_b(&phi(&e_mb(v)));
        out = out.sub(&phi_b.mul_poly(&va)).sub(&phi_a.mul_poly(&vb));
        out = out.add(&q.e1.mul_poly(&(&two_mu * &va))).add(&q.e2.mul_poly(&(&two_mu * &vb)));
        let cb = &(&(&p(&eb_phi_a, v) - &(&(&two_mu * &p(&q.e1, &a)) * &va)) - &(&(&two_mu * &p(&q.e2, &a)) * &vb))
            - &(&two_mu * &p(&eb_e2, v));
        let ca = &(&(&p(&eb_phi_b, v) - &(&(&two_mu * &p(&q.e2, &b)) * &vb)) - &(&(&two_mu * &p(&q.e1, &b)) * &va))
            - &(&two_mu * &p(&eb_e1, v));
        let cb = &cb + &(&a_phib * &va);
        let ca = &ca + &(&b_phia * &vb);
        out.add(&b.mul_poly(&cb)).add(&a.mul_poly(&ca))
    };
    let new_phi = FrameEndo::of_gen_map(n, phi_prime);
    let inv = Poly::constant(mu_p.inv().expect("μ′ ≥ 1"));
    let lp = Poly::constant(lam.clone());
    let e1 = eb_e1
        .mul_poly(&mu)
        .sub(&b.mul_poly(&lp))
        .add(&a.mul_poly(&(&mu * &p(&q.e1, &b))))
        .add(&b.mul_poly(&(&mu * &p(&q.e1, &a))))
        .sub(&eb_phi_b)
        .mul_poly(&inv);
    let e2 = eb_e2
        .mul_poly(&mu)
        .add(&a.mul_poly(&lp))
        .add(&b.mul_poly(&(&mu * &p(&q.e2, &a))))
        .add(&a.mul_poly(&(&mu * &p(&q.e2, &b))))
        .sub(&eb_phi_a)
        .mul_poly(&inv);
    SekiyaQuadruple::with_mu(new_phi, e1, e2, lam, mu_p)
}

/// Conjugation against the literal deformation formulas:
/// `sekiya.conjugation` checks that `e^t𝒥e^{−t}` has the assembled shape,
/// the `sekiya.literal.*` checks carry the literal-minus-conjugation
/// residuals.
pub fn check_sekiya_transform(t: &BbaTransform, q: &SekiyaQuadruple) -> Report {
    let mut r = Report::new();
    let conj = match assemble_jinv(q) {
        Ok(j) => t.conjugate(&j),
        Err(e) => {
            r.push(Check::fail("sekiya.input", None).with_notes(e.to_string()));
            return r;
        }
    };
    let q1 = match disassemble_jinv(&conj) {
        Ok(q1) => q1,
        Err(e) => {
            r.push(Check::fail("sekiya.conjugation", None).with_notes(e.to_string()));
            return r;
        }
    };
    r.push(Check::vanishing("sekiya.conjugation", &assemble_jinv_unchecked(&q1).sub(&conj)));
    r.extend(validate_sekiya(&q1).scoped("deformed"));
    match transform_sekiya_literal(t, q) {
        Ok(q2) => {
            r.push(Check::vanishing("sekiya.literal.phi", &q2.phi.sub(&q1.phi)));
            r.push(Check::vanishing("sekiya.literal.e1", &q2.e1.sub(&q1.e1)));
            r.push(Check::vanishing("sekiya.literal.e2", &q2.e2.sub(&q1.e2)));
            r.push(Check::vanishing("sekiya.literal.lambda", &(&q2.lambda - &q1.lambda)));
        }
        Err(e) => r.push(Check::fail("sekiya.literal", None).with_notes(e.to_string())),
    }
    r
}

/// `+i`-eigenspace of a constant endomorphism of `E`, as sections.
pub fn eigen_sections(j: &FrameEndo, eigenvalue: &Scalar) -> Result<Vec<ContactSection>> {
    let m = j
        .to_matrix()
        .ok_or_else(|| Error::Structure("eigenspaces need constant coefficients".into()))?;
    let k = m.rows();
    let shifted = m.sub(&Matrix::identity(k).scale(eigenvalue));
    Ok(shifted
        .nullspace()
        .into_iter()
        .map(|v| ContactSection::from_coords(j.base_dim(), &v.into_iter().map(Poly::constant).collect::<Vec<_>>()))
        .collect())
}

/// `λ′` of the deformed quadruple, read off the conjugated endomorphism.
pub fn deformed_lambda(t: &BbaTransform, q: &SekiyaQuadruple) -> Poly {
    let n = q.dim();
    t.conjugate(&assemble_jinv_unchecked(q)).get(2 * n + 1, 2 * n + 1).clone()
}

/// Random constant transform whose deformation of `q` has `λ′ = target`,
/// obtained by moving `b` or `a` along one frame covector (`λ′` is affine
/// in each). `None` if no such direction moves `λ′`.
pub fn sample_with_lambda(
    q: &SekiyaQuadruple,
    s: &mut crate::random::Sampler,
    target: &Scalar,
) -> Option<BbaTransform> {
    let n = q.dim();
    let t = BbaTransform::random_constant(s);
    let at = |t: &BbaTransform| deformed_lambda(t, q).as_constant();
    let base = at(&t)?;
    let shift = |t: &BbaTransform, which: bool, k: usize, c: &Scalar| {
        let mut t = t.clone();
        let v = Polyform::gen(n, k).scale(c);
        if which {
            t.b = &t.b + &v;
        } else {
            t.a = &t.a + &v;
        }
        t
    };
    for which in [true, false] {
        for k in 1..=n {
            let slope = &at(&shift(&t, which, k, &Scalar::one()))? - &base;
            if slope.is_zero() {
                continue;
            }
            let step = (target - &base).checked_div(&slope)?;
            let t = shift(&t, which, k, &step);
            if at(&t)? == *target {
                return Some(t);
            }
        }
    }
    None
}

/// `(X, f, g, ξ) ↦ (X, −if, ig, ξ)`. It carries `Ann(φ,ψ)` for the real
/// Clifford action onto the annihilator of `φ + i𝒜∧ψ`, the `+i`-eigenbundle
/// of the matching `𝒥`.
pub fn pair_to_jinv_frame(s: &ContactSection) -> ContactSection {
    ContactSection::new(
        s.x.clone(),
        s.f.scale(&-Scalar::i()),
        s.g.scale(&Scalar::i()),
        s.xi.clone(),
    )
}

/// `jinv.pair`: the `+i`-eigenbundle of a constant `𝒥` equals the image of
/// `Ann(φ,ψ)` under [`pair_to_jinv_frame`].
pub fn check_pair_matches_jinv(j: &FrameEndo, p: &crate::spinor::FormPair) -> Check {
    let coords = |v: &[ContactSection]| -> Option<Vec<Vec<Scalar>>> {
        v.iter()
            .map(|s| s.to_coords().iter().map(Poly::as_constant).collect())
            .collect()
    };
    let Ok(eig) = eigen_sections(j, &Scalar::i()) else {
        return Check::skip("jinv.pair", "non-constant endomorphism");
    };
    let ann: Vec<ContactSection> = crate::spinor::annihilator_constant(p).iter().map(pair_to_jinv_frame).collect();
    match (coords(&eig), coords(&ann)) {
        (Some(a), Some(b)) => Check::from_bool("jinv.pair", crate::linalg::same_span(&a, &b))
            .with_notes(format!("eigenbundle rank {}, annihilator rank {}", a.len(), b.len())),
        _ => Check::skip("jinv.pair", "non-constant annihilator"),
    }
}
