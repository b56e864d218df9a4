//! Seeded cross-checks of the reduced formulas against the circle
//! extension.

use crate::courant::{compare_contact_signs, require_maurer_cartan, Twists};
use crate::frame::FrameAlgebra;
use crate::io::Encode;
use crate::random::Sampler;
use crate::report::{Check, Report};
use crate::spinor::{check_differential_oracle, pair_is_zero};

/// `dorfman_contact` against the reduction of the standard bracket on
/// `trials` random section pairs. The printed mixed-term signs are run too
/// and reported in the notes.
pub fn check_bracket_oracle(frame: &FrameAlgebra, t: &Twists, trials: usize, seed: u64) -> Report {
    let r = compare_contact_signs(frame, t, trials, seed);
    let printed = match r.get("oracle.bracket.printed") {
        Some(c) if c.is_fail() => "printed signs disagree with the reduction",
        Some(_) => "printed signs agree on these trials",
        None => "",
    };
    let mut out = Report::new();
    for c in r.checks {
        if c.name == "oracle.bracket.printed" {
            continue;
        }
        let notes = if c.notes.is_empty() { printed.to_string() } else { format!("{}; {printed}", c.notes) };
        out.push(Check { notes, ..c });
    }
    out
}

/// `twisted_differential` against `d_H` on the circle extension for
/// `trials` random pairs of opposite parity.
pub fn check_differential_oracle_random(frame: &FrameAlgebra, t: &Twists, trials: usize, seed: u64) -> Report {
    let mut r = Report::new();
    if let Err(e) = require_maurer_cartan(frame, t) {
        r.push(Check::fail("oracle.differential", None).with_notes(e.to_string()));
        return r;
    }
    let n = frame.dim();
    let mut s = Sampler::new(frame, seed);
    let mut check = Check::pass("oracle.differential").with_notes(format!("{trials} trials"));
    for k in 0..trials {
        let even = s.coin(0.5);
        let p = (s.parity_form(even, n), s.parity_form(!even, n));
        match check_differential_oracle(frame, t, &p) {
            Ok(res) if pair_is_zero(&res) => {}
            Ok(res) => {
                check = Check::fail("oracle.differential", Some(res.encode()))
                    .with_notes(format!("first mismatch at trial {k}"))
                    .with_trial(k);
                break;
            }
            Err(e) => {
                check = Check::fail("oracle.differential", None).with_notes(e.to_string()).with_trial(k);
                break;
            }
        }
    }
    r.push(check);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Poly, Polyform};
    use crate::frame::parse_nil;

    #[test]
    fn oracles_agree_on_heisenberg() {
        let h = parse_nil("(0,0,12)", None).unwrap();
        let mut s = Sampler::new(&h, 3);
        let t = Twists::random_valid(&h, &mut s);
        let r = check_bracket_oracle(&h, &t, 10, 1);
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.get("oracle.bracket.printed").is_none());
        assert!(check_differential_oracle_random(&h, &t, 10, 1).passed());
    }

    #[test]
    fn invalid_twists_fail() {
        let c = FrameAlgebra::coordinate(3);
        // dH₂ = ε₁₂₃ ≠ 0
        let h2 = Polyform::basis(3, &[2, 3]).mul_poly(&Poly::var(1));
        let t = Twists::new(Polyform::zero(3), h2, Polyform::zero(3)).unwrap();
        assert!(!check_differential_oracle_random(&c, &t, 3, 1).passed());
        assert!(!check_bracket_oracle(&c, &t, 3, 1).passed());
    }
}
