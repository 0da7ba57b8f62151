//! Shared rendering of `coeff*symbol` terms in divisor-class displays.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::IntPoly;

/// Appends one signed term to `f`. `wrote` tracks whether anything came
/// before (controls ` + ` / ` - ` separators vs. a bare leading `-`).
///
/// Constant coefficients render as `3*sym`, `sym`, `-sym`; monomials
/// stay bare (`n*f`, `-2n*f`); sums are parenthesized, with the sign
/// pulled out when the leading coefficient is negative: `(2n + 2)*f`.
pub fn term(
    f: &mut fmt::Formatter<'_>,
    coeff: &IntPoly,
    sym: &str,
    wrote: &mut bool,
) -> fmt::Result {
    debug_assert!(!coeff.is_zero());
    let negative = match coeff.degree() {
        Some(k) => coeff.coeff(k).is_negative(),
        None => false,
    };
    let mag = if negative { -coeff } else { coeff.clone() };
    if *wrote {
        write!(f, " {} ", if negative { "-" } else { "+" })?;
    } else if negative {
        write!(f, "-")?;
    }
    *wrote = true;
    let terms = match mag.degree() {
        Some(d) => (0..=d).filter(|&k| !mag.coeff(k).is_zero()).count(),
        None => 0,
    };
    match mag.as_constant() {
        Some(c) if c.is_one() => write!(f, "{sym}"),
        Some(c) => write!(f, "{c}*{sym}"),
        None if terms == 1 => write!(f, "{mag}*{sym}"),
        None => write!(f, "({mag})*{sym}"),
    }
}
