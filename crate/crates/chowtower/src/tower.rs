//! Tower description files.
//!
//! A tower is declared in TOML: a Hirzebruch base index (a polynomial in
//! n), the bundle twist (x, y), a sequence of blow-ups given by the two
//! divisors cutting each center, and optionally a branch divisor for a
//! double cover of the last stage:
//!
//! ```toml
//! [base]
//! index = "n"
//!
//! [bundle]
//! x = 2
//! y = -1
//!
//! [[blowup]]
//! name = "E1"
//! center = ["C0", "tau + A"]
//!
//! [cover]
//! branch = "-2*K - 2*E1"
//! ```
//!
//! Divisor expressions are signed sums of `coeff*SYMBOL` terms; the
//! coefficient is an integer or a parenthesized polynomial in n, e.g.
//! `(2n + 2)*F`. Two symbols are contextual: `K` is the canonical class
//! of the stage the expression is elaborated on, and `A` is the bundle
//! twist x*C0 + y*F. Everything else must name a basis divisor already
//! present at that stage; `n` itself is never a divisor.

use std::fmt;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::bundle::BundleSpec;
use crate::poly::IntPoly;
use crate::threefold::{DivClass, ThreefoldModel};
use crate::{Error, Result};

/// The tower file bundled into the library and used by default.
pub const BUILTIN_TOWER: &str = include_str!("../fixtures/paper.tower");

/// A parsed, not yet elaborated divisor expression.
#[derive(Clone, Debug)]
pub struct DivisorExpr {
    source: String,
    terms: Vec<(IntPoly, String)>,
}

impl fmt::Display for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl DivisorExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let bytes: Vec<char> = src.chars().collect();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut terms: Vec<(IntPoly, String)> = Vec::new();
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::Parse {
                at: 0,
                msg: "empty divisor expression".into(),
            });
        }
        while pos < bytes.len() {
            // sign: optional on the first term, required between terms
            let mut sign = 1i64;
            match bytes[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if !terms.is_empty() => {
                    return Err(Error::Parse {
                        at: pos,
                        msg: "expected + or - between terms".into(),
                    });
                }
                _ => {}
            }
            skip_ws(&mut pos);

            // coefficient: INT or ( poly ), each followed by *
            let mut coeff = IntPoly::constant(sign);
            let explicit = if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = bytes[start..pos].iter().collect();
                let value: BigInt = digits.parse().map_err(|_| Error::Parse {
                    at: start,
                    msg: "bad integer".into(),
                })?;
                coeff = &coeff * &IntPoly::constant(value);
                true
            } else if pos < bytes.len() && bytes[pos] == '(' {
                let open = pos;
                let close = (open + 1..bytes.len())
                    .find(|&k| bytes[k] == ')')
                    .ok_or(Error::Parse {
                        at: open,
                        msg: "unclosed coefficient".into(),
                    })?;
                let inner: String = bytes[open + 1..close].iter().collect();
                let p: IntPoly = inner.parse().map_err(|e| match e {
                    Error::Parse { at, msg } => Error::Parse {
                        at: open + 1 + at,
                        msg,
                    },
                    other => other,
                })?;
                coeff = &coeff * &p;
                pos = close + 1;
                true
            } else {
                false
            };
            if explicit {
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != '*' {
                    return Err(Error::Parse {
                        at: pos.min(bytes.len()),
                        msg: "expected * between coefficient and symbol".into(),
                    });
                }
                pos += 1;
                skip_ws(&mut pos);
            }

            // symbol
            if pos >= bytes.len() || !is_ident_start(bytes[pos]) {
                return Err(Error::Parse {
                    at: pos.min(bytes.len()),
                    msg: "expected divisor symbol".into(),
                });
            }
            let start = pos;
            while pos < bytes.len() && is_ident_char(bytes[pos]) {
                pos += 1;
            }
            let sym: String = bytes[start..pos].iter().collect();
            if sym == "n" {
                return Err(Error::Parse {
                    at: start,
                    msg: "n is the family parameter, not a divisor symbol".into(),
                });
            }
            terms.push((coeff, sym));
            skip_ws(&mut pos);
        }
        Ok(DivisorExpr {
            source: src.trim().to_string(),
            terms,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Resolves the expression on one stage of a tower. `twist` supplies
    /// the contextual class A; `K` always means the stage canonical.
    pub fn elaborate(
        &self,
        stage: &ThreefoldModel,
        twist: Option<&DivClass>,
    ) -> Result<DivClass> {
        let mut out = DivClass::zero();
        for (c, sym) in &self.terms {
            let class = match sym.as_str() {
                "K" => stage.canonical(),
                "A" => twist
                    .cloned()
                    .ok_or_else(|| Error::Stage {
                        symbol: "A".into(),
                        stage: stage.name().into(),
                    })?,
                s if stage.basis().iter().any(|b| b == s) => DivClass::sym(s),
                s => {
                    return Err(Error::Stage {
                        symbol: s.into(),
                        stage: stage.name().into(),
                    })
                }
            };
            out = out.add(&class.scale(c));
        }
        Ok(out)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerFile {
    base: BaseSection,
    bundle: BundleSpec,
    #[serde(default)]
    blowup: Vec<BlowupSection>,
    cover: Option<CoverSection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseSection {
    index: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlowupSection {
    name: String,
    center: [String; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverSection {
    branch: String,
}

#[derive(Clone, Debug)]
pub struct BlowupStep {
    pub name: String,
    pub center: (DivisorExpr, DivisorExpr),
}

/// A fully parsed tower description.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    base_index: IntPoly,
    bundle: BundleSpec,
    blowups: Vec<BlowupStep>,
    cover_branch: Option<DivisorExpr>,
}

const RESERVED: [&str; 6] = ["n", "K", "A", "tau", "C0", "F"];

impl TowerSpec {
    pub fn parse(src: &str) -> Result<Self> {
        let file: TowerFile =
            toml::from_str(src).map_err(|e| Error::Tower(e.message().to_string()))?;
        let base_index: IntPoly = file
            .base
            .index
            .parse()
            .map_err(|e| Error::Tower(format!("base index: {e}")))?;
        let mut blowups = Vec::new();
        for section in &file.blowup {
            let name = section.name.clone();
            if RESERVED.contains(&name.as_str()) {
                return Err(Error::Tower(format!(
                    "blowup name {name} is a reserved symbol"
                )));
            }
            let mut chars = name.chars();
            let valid = matches!(chars.next(), Some(c) if is_ident_start(c))
                && chars.all(is_ident_char);
            if !valid {
                return Err(Error::Tower(format!("blowup name {name} is not a symbol")));
            }
            if blowups.iter().any(|b: &BlowupStep| b.name == name) {
                return Err(Error::Tower(format!("duplicate blowup name {name}")));
            }
            let parse_center = |k: usize| {
                DivisorExpr::parse(&section.center[k]).map_err(|e| {
                    Error::Tower(format!("blowup {name} center[{k}]: {e}"))
                })
            };
            blowups.push(BlowupStep {
                center: (parse_center(0)?, parse_center(1)?),
                name,
            });
        }
        let cover_branch = match &file.cover {
            Some(c) => Some(
                DivisorExpr::parse(&c.branch)
                    .map_err(|e| Error::Tower(format!("cover branch: {e}")))?,
            ),
            None => None,
        };
        Ok(TowerSpec {
            base_index,
            bundle: file.bundle,
            blowups,
            cover_branch,
        })
    }

    /// The tower description bundled with the crate.
    pub fn builtin() -> Result<Self> {
        Self::parse(BUILTIN_TOWER)
    }

    pub fn base_index(&self) -> &IntPoly {
        &self.base_index
    }

    pub fn bundle(&self) -> BundleSpec {
        self.bundle
    }

    pub fn blowups(&self) -> &[BlowupStep] {
        &self.blowups
    }

    pub fn cover_branch(&self) -> Option<&DivisorExpr> {
        self.cover_branch.as_ref()
    }
}
