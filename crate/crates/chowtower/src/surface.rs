//! Hirzebruch surfaces F_m and their Picard lattices.
//!
//! Classes are written against the standard basis: `g` is the section with
//! g^2 = -m, `f` the ruling fiber. The index m may be a polynomial in n
//! (e.g. the exceptional surface of the first blow-up lives on F_{n+1});
//! it must be nonnegative over the whole working range n >= 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{IntPoly, WORKING_FROM};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "IntPoly", into = "IntPoly")]
pub struct HirzebruchSurface {
    index: IntPoly,
}

impl TryFrom<IntPoly> for HirzebruchSurface {
    type Error = Error;
    fn try_from(index: IntPoly) -> Result<Self> {
        HirzebruchSurface::new(index)
    }
}

impl From<HirzebruchSurface> for IntPoly {
    fn from(s: HirzebruchSurface) -> IntPoly {
        s.index
    }
}

impl HirzebruchSurface {
    pub fn new(index: IntPoly) -> Result<Self> {
        if !index.nonneg_from(WORKING_FROM) {
            return Err(Error::NegativeIndex(index.to_string()));
        }
        Ok(HirzebruchSurface { index })
    }

    pub fn index(&self) -> &IntPoly {
        &self.index
    }

    pub fn class(&self, gamma: IntPoly, fiber: IntPoly) -> SurfacePicClass {
        SurfacePicClass {
            surface: self.clone(),
            gamma,
            fiber,
        }
    }

    pub fn class_i(&self, gamma: i64, fiber: i64) -> SurfacePicClass {
        self.class(IntPoly::constant(gamma), IntPoly::constant(fiber))
    }

    /// K = -2g - (m+2)f.
    pub fn canonical(&self) -> SurfacePicClass {
        self.class(
            IntPoly::constant(-2),
            -(&self.index + &IntPoly::constant(2)),
        )
    }

    /// Topological Euler number, constant 4.
    pub fn euler(&self) -> IntPoly {
        IntPoly::constant(4)
    }

    /// Adjunction genus g(C) = 1 + (C^2 + C.K)/2; errors if not integral.
    pub fn genus(&self, c: &SurfacePicClass) -> Result<IntPoly> {
        self.check_owns(c)?;
        let twice = &c.intersect(c)? + &c.intersect(&self.canonical())?;
        let half = twice.div_exact(2).map_err(|_| Error::NonIntegralGenus)?;
        Ok(&half + &IntPoly::constant(1))
    }

    fn check_owns(&self, c: &SurfacePicClass) -> Result<()> {
        if c.surface != *self {
            return Err(Error::SurfaceMismatch);
        }
        Ok(())
    }

    /// h^0 of a*g + b*f with coefficients evaluated at n = n0.
    pub fn h0(&self, n0: i64, c: &SurfacePicClass) -> Result<i64> {
        self.check_owns(c)?;
        let m = self.index.eval_i64(n0)?;
        h0_numeric(m, c.gamma.eval_i64(n0)?, c.fiber.eval_i64(n0)?)
    }

    /// Fixed/moving decomposition of |a*g + b*f| at n = n0.
    pub fn fixed_part(&self, n0: i64, c: &SurfacePicClass) -> Result<FixedPart> {
        self.check_owns(c)?;
        let m = self.index.eval_i64(n0)?;
        fixed_part_numeric(m, c.gamma.eval_i64(n0)?, c.fiber.eval_i64(n0)?)
    }
}

/// h^0(F_m, a*g + b*f) = sum_{k=0}^{a} max(0, b - k*m + 1) (0 when a < 0),
/// from pushing forward along the ruling.
pub fn h0_numeric(m: i64, a: i64, b: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::NegativeIndex(m.to_string()));
    }
    if a < 0 {
        return Ok(0);
    }
    let mut total: i64 = 0;
    for k in 0..=a {
        let t = b - k * m + 1;
        if t > 0 {
            total = total.checked_add(t).ok_or(Error::Numeric)?;
        }
    }
    Ok(total)
}

/// Fixed multiplicity of g in |a*g + b*f| plus the moving remainder.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FixedPart {
    /// |a*g + b*f| = mult * g + |moving|.
    pub mult: i64,
    /// (a - mult, b).
    pub moving: (i64, i64),
}

pub fn fixed_part_numeric(m: i64, a: i64, b: i64) -> Result<FixedPart> {
    if h0_numeric(m, a, b)? == 0 {
        return Err(Error::EmptySystem);
    }
    // h0 > 0 guarantees some k with b - k*m + 1 > 0
    let k_max = (0..=a).filter(|k| b - k * m + 1 > 0).max().unwrap();
    Ok(FixedPart {
        mult: a - k_max,
        moving: (k_max, b),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurfacePicClass {
    surface: HirzebruchSurface,
    gamma: IntPoly,
    fiber: IntPoly,
}

impl SurfacePicClass {
    pub fn surface(&self) -> &HirzebruchSurface {
        &self.surface
    }

    pub fn gamma(&self) -> &IntPoly {
        &self.gamma
    }

    pub fn fiber(&self) -> &IntPoly {
        &self.fiber
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero() && self.fiber.is_zero()
    }

    /// Intersection pairing: (g, f) Gram matrix [[-m, 1], [1, 0]].
    pub fn intersect(&self, other: &SurfacePicClass) -> Result<IntPoly> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        let m = self.surface.index();
        let gg = -(&(&self.gamma * &other.gamma) * m);
        let gf = &(&self.gamma * &other.fiber) + &(&self.fiber * &other.gamma);
        Ok(&gg + &gf)
    }

    pub fn add(&self, other: &SurfacePicClass) -> Result<SurfacePicClass> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        Ok(self.surface.class(
            &self.gamma + &other.gamma,
            &self.fiber + &other.fiber,
        ))
    }

    pub fn neg(&self) -> SurfacePicClass {
        self.surface.class(-&self.gamma, -&self.fiber)
    }

    pub fn times(&self, k: i64) -> SurfacePicClass {
        self.surface.class(self.gamma.times(k), self.fiber.times(k))
    }
}

/// Rendered as `a*g + b*f` with polynomial coefficients parenthesized.
impl fmt::Display for SurfacePicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coeff, sym) in [(&self.gamma, "g"), (&self.fiber, "f")] {
            if coeff.is_zero() {
                continue;
            }
            crate::render::term(f, coeff, sym, &mut wrote)?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
