//! Linear equations with polynomial unknowns, solved exactly by matching
//! coefficients of `(slot, blade, monomial)`.

use std::collections::BTreeMap;

use crate::exterior::{Blade, Monomial, Poly, Polyform, Scalar};
use crate::linalg::{SparseRow, SparseSystem};

/// Default cap on unknown polynomial degrees; overridden by `GC_MAX_DEGREE`.
pub const DEFAULT_MAX_DEGREE: u32 = 4;

pub fn max_degree_from_env() -> u32 {
    std::env::var("GC_MAX_DEGREE")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

type Key = (usize, Blade, Monomial);

fn entries(slots: &[Polyform], scale: &Poly) -> Vec<(Key, Scalar)> {
    let mut out = Vec::new();
    for (s, form) in slots.iter().enumerate() {
        for (b, p) in form.terms() {
            let q = if scale.as_constant().is_some_and(|c| c.is_one()) {
                p.clone()
            } else {
                p * scale
            };
            for (m, c) in q.terms() {
                out.push(((s, *b, m.clone()), c.clone()));
            }
        }
    }
    out
}

/// Finds polynomials `c_j` of total degree `≤ degree` in `nvars` variables
/// with `Σ_j c_j·images[j] = target` slot by slot. Free parameters are set
/// to zero.
pub fn solve_combination(
    images: &[Vec<Polyform>],
    target: &[Polyform],
    nvars: usize,
    degree: u32,
) -> Option<Vec<Poly>> {
    let monos = Monomial::enumerate(nvars, degree);
    let nm = monos.len();
    let mut rows: BTreeMap<Key, SparseRow> = BTreeMap::new();
    for (j, img) in images.iter().enumerate() {
        for (k, m) in monos.iter().enumerate() {
            let scale = Poly::monomial(Scalar::one(), m.clone());
            for (key, c) in entries(img, &scale) {
                let row = rows.entry(key).or_default();
                let col = j * nm + k;
                let v = row.remove(&col).map_or(c.clone(), |old| &old + &c);
                if !v.is_zero() {
                    row.insert(col, v);
                }
            }
        }
    }
    let mut rhs: BTreeMap<Key, Scalar> = BTreeMap::new();
    for (key, c) in entries(target, &Poly::one()) {
        rhs.insert(key, c);
    }
    let mut sys = SparseSystem::new(images.len() * nm);
    for (key, row) in &rows {
        let r = rhs.remove(key).unwrap_or_else(Scalar::zero);
        if !sys.add_equation(row.clone(), r) {
            return None;
        }
    }
    if rhs.values().any(|c| !c.is_zero()) {
        return None;
    }
    let sol = sys.solve()?;
    Some(
        (0..images.len())
            .map(|j| {
                let mut p = Poly::zero();
                for (k, m) in monos.iter().enumerate() {
                    p.add_term(m.clone(), sol[j * nm + k].clone());
                }
                p
            })
            .collect(),
    )
}

/// Kernel of `c ↦ Σ_j c_j·images[j]` over constant coefficients.
pub fn constant_kernel(images: &[Vec<Polyform>]) -> Vec<Vec<Scalar>> {
    let mut rows: BTreeMap<Key, SparseRow> = BTreeMap::new();
    for (j, img) in images.iter().enumerate() {
        for (key, c) in entries(img, &Poly::one()) {
            rows.entry(key).or_default().insert(j, c);
        }
    }
    let mut sys = SparseSystem::new(images.len());
    for row in rows.into_values() {
        sys.add_equation(row, Scalar::zero());
    }
    sys.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_polynomial_multiple() {
        // c·ε₁ = (1 + x₁)ε₁ has c = 1 + x₁
        let img = vec![vec![Polyform::basis(2, &[1])]];
        let target = vec![Polyform::basis(2, &[1]).mul_poly(&(&Poly::one() + &Poly::var(1)))];
        let c = solve_combination(&img, &target, 2, 1).unwrap();
        assert_eq!(c[0], &Poly::one() + &Poly::var(1));
        assert!(solve_combination(&img, &target, 2, 0).is_none());
        let other = vec![Polyform::basis(2, &[2])];
        assert!(solve_combination(&img, &other, 2, 2).is_none());
    }

    #[test]
    fn kernel_of_dependent_images() {
        let a = Polyform::basis(2, &[1]);
        let img = vec![vec![a.clone()], vec![a.scale(&Scalar::int(2))], vec![Polyform::basis(2, &[2])]];
        let k = constant_kernel(&img);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!((&v[0] + &(&v[1] * &Scalar::int(2))).is_zero());
        assert!(v[2].is_zero() && !v[0].is_zero());
    }
}
