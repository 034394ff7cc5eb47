//! Exact rational arithmetic used by the closed-form formulas.
//!
//! All quotient-matrix entries have denominator 1, 2 or 4, but characteristic
//! polynomials are evaluated at arbitrary rational points, so the numerators
//! grow to roughly (point * n)^3. i128 components keep that exact with a wide
//! margin for every grid in the test suite.

use num_rational::Ratio;

/// Exact rational with i128 components.
pub type Rat = Ratio<i128>;

/// Shorthand constructor, `rat(p, q) = p/q`.
pub fn rat(p: i128, q: i128) -> Rat {
    Rat::new(p, q)
}

/// Integer as a rational.
pub fn rint(p: i128) -> Rat {
    Rat::from_integer(p)
}

/// Lossy conversion for handing exact values to the float solvers.
pub fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Renders `p/q` with an explicit denominator, the wire format for matrices.
pub fn format_rat(r: Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().ok()?;
            let q: i128 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}
