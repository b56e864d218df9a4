//! Brute-force verification of the Courant algebroid axioms on seeded random
//! sections.

use rayon::prelude::*;
use serde_json::json;

use crate::error::Result;
use crate::exterior::{Poly, Polyform, Vector};
use crate::frame::FrameAlgebra;
use crate::io::Encode;
use crate::random::Sampler;
use crate::report::{Check, Report};

use super::{
    dorfman_contact_with, dorfman_h_unchecked, pairing_contact, require_maurer_cartan, ContactSection,
    ContactSigns, GenSection, Twists,
};

/// A Courant algebroid whose sections are represented as [`ContactSection`]s
/// (the standard one uses `f = g = 0`).
pub trait Algebroid: Sync {
    fn frame(&self) -> &FrameAlgebra;
    fn bracket(&self, a: &ContactSection, b: &ContactSection) -> Result<ContactSection>;
    fn pairing(&self, a: &ContactSection, b: &ContactSection) -> Poly;
    fn anchor(&self, a: &ContactSection) -> Vector {
        a.x.clone()
    }
    /// `D` with `⟨Dh, e⟩ = ½ρ(e)h`.
    fn d_op(&self, h: &Poly) -> ContactSection {
        let n = self.frame().dim();
        ContactSection::new(Vector::zero(n), Poly::zero(), Poly::zero(), self.frame().d_poly(h))
    }
    fn sample(&self, s: &mut Sampler) -> ContactSection;
}

/// The `H`-twisted Dorfman bracket on `TM⊕T*M`.
pub struct StandardBracket {
    pub frame: FrameAlgebra,
    pub h: Polyform,
    /// Negative control: reads the bracket as `L_{X₁}ξ₂ − dι_{X₂}ξ₁` and
    /// drops the twist.
    pub corrupt: bool,
}

impl StandardBracket {
    pub fn new(frame: FrameAlgebra, h: Polyform) -> Result<Self> {
        frame.check_form(&h)?;
        if !frame.d(&h)?.is_zero() {
            return Err(crate::Error::Twist("H is not closed".into()));
        }
        Ok(StandardBracket { frame, h, corrupt: false })
    }

    pub fn corrupted(mut self) -> Self {
        self.corrupt = true;
        self
    }
}

impl Algebroid for StandardBracket {
    fn frame(&self) -> &FrameAlgebra {
        &self.frame
    }

    fn bracket(&self, a: &ContactSection, b: &ContactSection) -> Result<ContactSection> {
        let (a, b) = (a.gen_part(), b.gen_part());
        let r = if self.corrupt {
            let lie = self.frame.lie_derivative(&a.x, &b.xi)?;
            let wrong = self.frame.d(&a.xi.contract(&b.x))?;
            GenSection::new(self.frame.lie_bracket(&a.x, &b.x)?, &lie - &wrong)
        } else {
            dorfman_h_unchecked(&self.frame, &a, &b, &self.h)?
        };
        Ok(r.to_contact())
    }

    fn pairing(&self, a: &ContactSection, b: &ContactSection) -> Poly {
        pairing_contact(a, b)
    }

    fn sample(&self, s: &mut Sampler) -> ContactSection {
        GenSection::random(s).to_contact()
    }
}

/// The `(H₃, H₂, F)`-twisted contact Dorfman bracket.
pub struct ContactBracket {
    pub frame: FrameAlgebra,
    pub twists: Twists,
    pub signs: ContactSigns,
    /// Negative control: same misreading as [`StandardBracket::corrupt`],
    /// and `H₃` dropped.
    pub corrupt: bool,
}

impl ContactBracket {
    pub fn new(frame: FrameAlgebra, twists: Twists) -> Result<Self> {
        require_maurer_cartan(&frame, &twists)?;
        Ok(ContactBracket {
            frame,
            twists,
            signs: ContactSigns::Reduced,
            corrupt: false,
        })
    }

    pub fn with_signs(mut self, signs: ContactSigns) -> Self {
        self.signs = signs;
        self
    }

    pub fn corrupted(mut self) -> Self {
        self.corrupt = true;
        self
    }
}

impl Algebroid for ContactBracket {
    fn frame(&self) -> &FrameAlgebra {
        &self.frame
    }

    fn bracket(&self, a: &ContactSection, b: &ContactSection) -> Result<ContactSection> {
        if !self.corrupt {
            return dorfman_contact_with(&self.frame, a, b, &self.twists, self.signs);
        }
        let mut t = self.twists.clone();
        t.h3 = Polyform::zero(t.dim());
        let mut r = dorfman_contact_with(&self.frame, a, b, &t, self.signs)?;
        let fix = &self.frame.d(&a.xi)?.contract(&b.x) - &self.frame.d(&a.xi.contract(&b.x))?;
        r.xi = &r.xi + &fix;
        Ok(r)
    }

    fn pairing(&self, a: &ContactSection, b: &ContactSection) -> Poly {
        pairing_contact(a, b)
    }

    fn sample(&self, s: &mut Sampler) -> ContactSection {
        ContactSection::random(s)
    }
}

/// Outcome of one trial: residuals of the three axioms (zero when they hold).
struct Trial {
    leibniz: Result<ContactSection>,
    invariance: Result<Poly>,
    square: Result<ContactSection>,
    inputs: [ContactSection; 3],
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(trial as u64)
}

fn run_trial<A: Algebroid + ?Sized>(alg: &A, seed: u64, trial: usize) -> Trial {
    let mut s = Sampler::new(alg.frame(), trial_seed(seed, trial));
    let e1 = alg.sample(&mut s);
    let e2 = alg.sample(&mut s);
    let e3 = alg.sample(&mut s);

    let leibniz = (|| {
        let lhs = alg.bracket(&e1, &alg.bracket(&e2, &e3)?)?;
        let r1 = alg.bracket(&alg.bracket(&e1, &e2)?, &e3)?;
        let r2 = alg.bracket(&e2, &alg.bracket(&e1, &e3)?)?;
        Ok(lhs.sub(&r1).sub(&r2))
    })();
    let invariance = (|| {
        let lhs = alg.frame().apply(&alg.anchor(&e3), &alg.pairing(&e1, &e2));
        let a = alg.pairing(&alg.bracket(&e3, &e1)?, &e2);
        let b = alg.pairing(&e1, &alg.bracket(&e3, &e2)?);
        Ok(&(&lhs - &a) - &b)
    })();
    let square = (|| {
        let lhs = alg.bracket(&e1, &e1)?;
        Ok(lhs.sub(&alg.d_op(&alg.pairing(&e1, &e1))))
    })();
    Trial {
        leibniz,
        invariance,
        square,
        inputs: [e1, e2, e3],
    }
}

fn summarise<T: Encode>(
    name: &str,
    trials: &[Trial],
    pick: impl Fn(&Trial) -> &Result<T>,
    inputs: usize,
) -> Check {
    for (k, t) in trials.iter().enumerate() {
        match pick(t) {
            Ok(r) if r.is_zero_value() => continue,
            Ok(r) => {
                let witness: Vec<_> = t.inputs[..inputs].iter().map(Encode::encode).collect();
                return Check::fail(name, Some(r.encode()))
                    .with_notes(format!(
                        "first counterexample at trial {k}; sections {}",
                        json!(witness)
                    ))
                    .with_trial(k);
            }
            Err(e) => {
                return Check::fail(name, None)
                    .with_notes(format!("trial {k}: {e}"))
                    .with_trial(k)
            }
        }
    }
    Check::pass(name).with_notes(format!("{} trials", trials.len()))
}

/// Runs `trials` seeded trials (in parallel, aggregated in trial order) of
/// Leibniz, invariance and `e∘e = D⟨e,e⟩`, reporting the first
/// counterexample of each.
pub fn check_courant_axioms<A: Algebroid + ?Sized>(alg: &A, trials: usize, seed: u64) -> Report {
    let results: Vec<Trial> = (0..trials.max(1))
        .into_par_iter()
        .map(|k| run_trial(alg, seed, k))
        .collect();
    let mut r = Report::new();
    r.push(summarise("axiom.leibniz", &results, |t| &t.leibniz, 3));
    r.push(summarise("axiom.invariance", &results, |t| &t.invariance, 3));
    r.push(summarise("axiom.square", &results, |t| &t.square, 1));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::parse_nil;
    use crate::report::Status;

    #[test]
    fn standard_passes_and_corruption_fails() {
        let c3 = FrameAlgebra::coordinate(3);
        let alg = StandardBracket::new(c3.clone(), Polyform::basis(3, &[1, 2, 3])).unwrap();
        assert!(check_courant_axioms(&alg, 10, 1).passed());
        let bad = StandardBracket::new(c3, Polyform::basis(3, &[1, 2, 3])).unwrap().corrupted();
        let r = check_courant_axioms(&bad, 10, 1);
        assert_eq!(r.status_of("axiom.square"), Some(Status::Fail));
        assert!(r.get("axiom.square").unwrap().residual.is_some());
    }

    #[test]
    fn contact_passes_with_reduced_signs() {
        let c4 = FrameAlgebra::coordinate(4);
        let mut s = Sampler::new(&c4, 4);
        let t = Twists::random_valid(&c4, &mut s);
        let alg = ContactBracket::new(c4, t).unwrap();
        let r = check_courant_axioms(&alg, 10, 2);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn contact_on_heisenberg() {
        let h = parse_nil("(0,0,12)", None).unwrap();
        let t = Twists::new(Polyform::zero(3), Polyform::basis(3, &[1, 2]), Polyform::zero(3)).unwrap();
        let alg = ContactBracket::new(h, t).unwrap();
        assert!(check_courant_axioms(&alg, 10, 3).passed());
    }

    #[test]
    fn printed_signs_reported() {
        let c4 = FrameAlgebra::coordinate(4);
        let mut s = Sampler::new(&c4, 4);
        let t = Twists::random_valid(&c4, &mut s);
        let alg = ContactBracket::new(c4, t).unwrap().with_signs(ContactSigns::Printed);
        let r = check_courant_axioms(&alg, 10, 2);
        assert_eq!(r.status_of("axiom.leibniz"), Some(Status::Fail));
        assert_eq!(r.status_of("axiom.square"), Some(Status::Pass));
    }
}
