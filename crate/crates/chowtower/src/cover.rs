//! Double covers of a threefold stage branched along an even divisor.
//!
//! For a smooth branch B = 2*H the cover Y has e(Y) = 2*e(X) - e(B) and
//! K_Y pulled back from L = K_X + H. The checks here classify L: whether
//! the pair is log Calabi-Yau against a proposed boundary, whether the
//! preimage of an embedded surface is a K3, and what sign the canonical
//! class of Y carries.

use crate::bundle::SAMPLE_POINTS;
use crate::poly::{IntPoly, WORKING_FROM};
use crate::surface::SurfacePicClass;
use crate::threefold::{DivClass, ThreefoldModel};
use crate::{Error, Result};

pub struct CoverModel {
    base: ThreefoldModel,
    branch: DivClass,
    half: DivClass,
    euler: IntPoly,
    l_class: DivClass,
}

/// Result of a log Calabi-Yau test: K + B/2 + boundary must vanish.
#[derive(Clone, Debug)]
pub struct LogCyCheck {
    pub boundary: DivClass,
    pub residual: DivClass,
    pub passes: bool,
}

/// Invariants of the double cover of one embedded surface.
#[derive(Clone, Debug)]
pub struct K3Check {
    pub surface: String,
    pub branch_restriction: SurfacePicClass,
    /// B|_S = -2K_S, the condition that kills the cover's canonical.
    pub anticanonical_match: bool,
    /// Genus of the curve B|_S.
    pub genus: IntPoly,
    /// e(B|_S) = 2 - 2g.
    pub ramification_euler: IntPoly,
    /// e of the covering surface: 2*e(S) - e(B|_S).
    pub cover_euler: IntPoly,
    /// |B|_S| has no fixed component at the sample values of n.
    pub fixed_free_at_samples: bool,
    pub passes: bool,
}

/// Sign classification of -K on the cover.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KodairaSign {
    /// K_Y = 0 on the nose.
    CalabiYau,
    /// -K_Y pulls back from a nonnegative combination of basis divisors.
    AnticanonicalEffective,
    /// Mixed coefficients: effectivity is not decided by the basis.
    Inconclusive,
}

impl CoverModel {
    pub fn new(base: ThreefoldModel, branch: DivClass) -> Result<Self> {
        base.check_class(&branch)?;
        let mut half = DivClass::zero();
        for (sym, c) in branch.terms() {
            if !c.is_even() {
                return Err(Error::OddBranch(format!(
                    "branch coefficient of {sym} is {c}"
                )));
            }
            half.add_term(sym, &c.div_exact(2)?);
        }
        let euler = &base.euler().times(2) - &base.euler_divisor(&branch)?;
        let l_class = base.canonical().add(&half);
        Ok(CoverModel {
            base,
            branch,
            half,
            euler,
            l_class,
        })
    }

    pub fn base(&self) -> &ThreefoldModel {
        &self.base
    }

    pub fn branch(&self) -> &DivClass {
        &self.branch
    }

    pub fn half_branch(&self) -> &DivClass {
        &self.half
    }

    pub fn euler(&self) -> &IntPoly {
        &self.euler
    }

    /// Euler number of the branch surface itself.
    pub fn branch_euler(&self) -> Result<IntPoly> {
        self.base.euler_divisor(&self.branch)
    }

    /// The class downstairs whose pullback is K of the cover.
    pub fn canonical_pullback(&self) -> &DivClass {
        &self.l_class
    }

    pub fn verify_log_cy(&self, boundary: &DivClass) -> Result<LogCyCheck> {
        self.base.check_class(boundary)?;
        let residual = self.l_class.add(boundary);
        Ok(LogCyCheck {
            boundary: boundary.clone(),
            passes: residual.is_zero(),
            residual,
        })
    }

    /// Checks whether the preimage of the registered surface `name` is a
    /// K3: the branch must restrict to -2K of the surface, and the cover
    /// Euler number, computed through the genus of the branch curve, must
    /// come out to 24.
    pub fn k3_check(&self, name: &str) -> Result<K3Check> {
        let surf = self
            .base
            .surface(name)
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))?;
        let restricted = surf.restrict_class(&self.branch)?;
        let minus_2k = surf.model().canonical().times(-2);
        let anticanonical_match = restricted == minus_2k;
        let genus = surf.model().genus(&restricted)?;
        let ramification_euler = &IntPoly::constant(2) - &genus.times(2);
        let cover_euler = &surf.model().euler().times(2) - &ramification_euler;
        let mut fixed_free_at_samples = true;
        for n0 in SAMPLE_POINTS {
            if surf.model().fixed_part(n0, &restricted)?.mult != 0 {
                fixed_free_at_samples = false;
                break;
            }
        }
        let passes = anticanonical_match
            && cover_euler == IntPoly::constant(24)
            && fixed_free_at_samples;
        Ok(K3Check {
            surface: name.to_string(),
            branch_restriction: restricted,
            anticanonical_match,
            genus,
            ramification_euler,
            cover_euler,
            fixed_free_at_samples,
            passes,
        })
    }

    /// Classifies -K of the cover by looking at -L downstairs.
    pub fn kodaira_sign_check(&self) -> KodairaSign {
        let anti = self.l_class.neg();
        if anti.is_zero() {
            return KodairaSign::CalabiYau;
        }
        let all_nonneg = anti.terms().all(|(_, c)| c.nonneg_from(WORKING_FROM));
        if all_nonneg {
            KodairaSign::AnticanonicalEffective
        } else {
            KodairaSign::Inconclusive
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blow_up;
    use crate::bundle::{BundleSpec, Scroll};

    fn fp(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn second_stage() -> ThreefoldModel {
        let s = Scroll::new(fp("n"), BundleSpec { x: 2, y: -1 }).unwrap();
        let tau_a = s.tau_plus_a();
        let mut b1 = blow_up(s.model(), "X1", "E1", &DivClass::sym("C0"), &tau_a).unwrap();
        b1.register_exceptional().unwrap();
        let p = tau_a.sub(&DivClass::sym("E1"));
        let mut b2 = blow_up(b1.model(), "X2", "E2", &p, &DivClass::sym("E1")).unwrap();
        b2.register_exceptional().unwrap();
        b2.into_model()
    }

    fn main_branch(x2: &ThreefoldModel) -> DivClass {
        x2.canonical()
            .times(-2)
            .sub(&DivClass::sym("E2").times(2))
    }

    #[test]
    fn cover_invariants() {
        let x2 = second_stage();
        let branch = main_branch(&x2);
        assert_eq!(
            branch.to_string(),
            "4*tau + 8*C0 + (2n + 2)*F - 2*E1 - 4*E2"
        );
        let cover = CoverModel::new(x2, branch).unwrap();
        assert_eq!(cover.branch_euler().unwrap(), fp("48n + 70"));
        assert_eq!(*cover.euler(), fp("-48n - 46"));
        assert_eq!(cover.canonical_pullback().to_string(), "-E2");
    }

    #[test]
    fn log_cy_boundary() {
        let x2 = second_stage();
        let cover = CoverModel::new(x2, main_branch(&second_stage())).unwrap();
        let good = cover.verify_log_cy(&DivClass::sym("E2")).unwrap();
        assert!(good.passes);
        assert!(good.residual.is_zero());
        let bad = cover.verify_log_cy(&DivClass::sym("F")).unwrap();
        assert!(!bad.passes);
        assert_eq!(bad.residual.to_string(), "F - E2");
    }

    #[test]
    fn odd_branch_is_rejected() {
        let x2 = second_stage();
        let odd = main_branch(&x2).sub(&DivClass::sym("E2"));
        assert!(matches!(
            CoverModel::new(x2, odd),
            Err(Error::OddBranch(_))
        ));
    }

    #[test]
    fn k3_over_the_second_exceptional() {
        let x2 = second_stage();
        let cover = CoverModel::new(x2, main_branch(&second_stage())).unwrap();
        let k3 = cover.k3_check("E2").unwrap();
        assert!(k3.passes);
        assert!(k3.anticanonical_match);
        assert_eq!(k3.branch_restriction.to_string(), "4*g + 6*f");
        assert_eq!(k3.genus, fp("9"));
        assert_eq!(k3.ramification_euler, fp("-16"));
        assert_eq!(k3.cover_euler, fp("24"));
        assert!(k3.fixed_free_at_samples);

        assert!(matches!(
            cover.k3_check("T"),
            Err(Error::UnknownSurface(_))
        ));
    }

    #[test]
    fn kodaira_classification() {
        let x2 = second_stage();
        let minus_2k = x2.canonical().times(-2);

        let cy = CoverModel::new(second_stage(), minus_2k.clone()).unwrap();
        assert_eq!(cy.kodaira_sign_check(), KodairaSign::CalabiYau);

        let eff = CoverModel::new(second_stage(), main_branch(&x2)).unwrap();
        assert_eq!(
            eff.kodaira_sign_check(),
            KodairaSign::AnticanonicalEffective
        );

        let mixed_branch = minus_2k
            .sub(&DivClass::sym("F").times(2))
            .add(&DivClass::sym("E2").times(2));
        let mixed = CoverModel::new(second_stage(), mixed_branch).unwrap();
        assert_eq!(mixed.kodaira_sign_check(), KodairaSign::Inconclusive);
    }
}
