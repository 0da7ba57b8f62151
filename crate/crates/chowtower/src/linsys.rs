//! The bianticanonical series on the scroll and its section filtration.
//!
//! Everything here is specific to the x = 2, y = -1 bundle, where
//! -2K = 4*(tau + A) + (2m + 6)*F recombines into four copies of the
//! rigid section class plus a free fiber part. Peeling tau + A one copy
//! at a time gives the series D_i = -2K - i*(tau + A), i = 0..4, whose
//! section counts, restriction drops, and fixed parts locate the base
//! curve and its generic multiplicity.

use serde::Serialize;

use crate::bundle::{Scroll, SAMPLE_POINTS};
use crate::poly::{IntPoly, WORKING_FROM};
use crate::surface::FixedPart;
use crate::threefold::DivClass;
use crate::{Error, Result};

/// How far the peeling goes: -2K carries 4 copies of tau + A.
pub const SERIES_LEN: usize = 5;

/// -2K = section_multiple * (tau + A) + fiber_coefficient * F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recombination {
    pub section_multiple: i64,
    pub fiber_coefficient: IntPoly,
}

/// Numeric snapshot of the filtration at one value of n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filtration {
    pub n0: i64,
    /// h^0(D_i) for i = 0..=4.
    pub dims: Vec<i64>,
    /// dims[i] - dims[i+1].
    pub drops: Vec<i64>,
    /// h^0 of D_i restricted to the section surface R.
    pub restriction_dims: Vec<i64>,
    /// Whether restriction to R accounts for the whole drop at level i.
    pub surjective: Vec<bool>,
    /// Fixed multiplicity of the section curve in D_i|_R.
    pub fixed_mults: Vec<i64>,
    /// min over i of i + fixed_mults[i]: the generic vanishing order
    /// along the base curve.
    pub multiplicity: i64,
}

/// One verification step of the base-locus argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseLocusStep {
    pub name: String,
    pub detail: String,
}

/// The base locus of |-2K|: a single section curve, cut out by the two
/// divisors returned in `center`.
#[derive(Clone, Debug)]
pub struct BaseLocusReport {
    pub steps: Vec<BaseLocusStep>,
    pub center: (DivClass, DivClass),
}

/// Stabilized linear forms of the whole filtration.
#[derive(Clone, Debug)]
pub struct DimsProfile {
    /// h^0(D_i) as a polynomial in n, valid from stable_from on.
    pub forms: Vec<IntPoly>,
    /// Least n from which each form holds.
    pub series_stable_from: Vec<i64>,
    /// forms[i] - forms[i+1].
    pub drops: Vec<IntPoly>,
    pub multiplicity: IntPoly,
    pub multiplicity_stable_from: i64,
    /// max of the individual thresholds: the table is exact from here on.
    pub stable_from: i64,
}

pub struct LinearSeries<'a> {
    scroll: &'a Scroll,
}

impl<'a> LinearSeries<'a> {
    pub fn new(scroll: &'a Scroll) -> Result<Self> {
        if !scroll.spec().is_main() {
            return Err(Error::Unsupported(format!(
                "series analysis needs the x = 2, y = -1 bundle, got x = {}, y = {}",
                scroll.spec().x,
                scroll.spec().y
            )));
        }
        Ok(LinearSeries { scroll })
    }

    /// D_i = -2K - i*(tau + A).
    pub fn divisor(&self, i: i64) -> DivClass {
        let minus_2k = self.scroll.model().canonical().times(-2);
        minus_2k.sub(&self.scroll.tau_plus_a().times(i))
    }

    pub fn recombination(&self) -> Recombination {
        let fiber_coefficient = &self.scroll.base().index().times(2) + &IntPoly::constant(6);
        Recombination {
            section_multiple: 4,
            fiber_coefficient,
        }
    }

    fn restriction_to(&self, surface: &str, d: &DivClass) -> Result<crate::surface::SurfacePicClass> {
        let s = self
            .scroll
            .model()
            .surface(surface)
            .ok_or_else(|| Error::UnknownSurface(surface.to_string()))?;
        s.restrict_class(d)
    }

    pub fn filtration(&self, n0: i64) -> Result<Filtration> {
        let r = self
            .scroll
            .model()
            .surface("R")
            .ok_or_else(|| Error::UnknownSurface("R".into()))?;
        let mut dims = Vec::with_capacity(SERIES_LEN);
        let mut restriction_dims = Vec::new();
        let mut fixed_mults = Vec::new();
        for i in 0..SERIES_LEN as i64 {
            let d = self.divisor(i);
            dims.push(self.scroll.h0(n0, &d)?);
            let res = r.restrict_class(&d)?;
            if i + 1 < SERIES_LEN as i64 {
                restriction_dims.push(r.model().h0(n0, &res)?);
            }
            fixed_mults.push(r.model().fixed_part(n0, &res)?.mult);
        }
        let drops: Vec<i64> = dims.windows(2).map(|w| w[0] - w[1]).collect();
        let surjective: Vec<bool> = drops
            .iter()
            .zip(&restriction_dims)
            .map(|(d, r)| d == r)
            .collect();
        let multiplicity = fixed_mults
            .iter()
            .enumerate()
            .map(|(i, m)| i as i64 + m)
            .min()
            .unwrap();
        Ok(Filtration {
            n0,
            dims,
            drops,
            restriction_dims,
            surjective,
            fixed_mults,
            multiplicity,
        })
    }

    pub fn multiplicity(&self, n0: i64) -> Result<i64> {
        Ok(self.filtration(n0)?.multiplicity)
    }

    /// Verifies that the base locus of |-2K| is exactly the section curve
    /// C0 meet (tau + A), and returns that center. Each failed check
    /// reports which step broke.
    pub fn base_locus(&self) -> Result<BaseLocusReport> {
        let mut steps = Vec::new();
        let minus_2k = self.divisor(0);
        let rec = self.recombination();

        // 1: the recombination identity itself
        let rebuilt = self
            .scroll
            .tau_plus_a()
            .times(rec.section_multiple)
            .add(&DivClass::from_terms([(
                "F".to_string(),
                rec.fiber_coefficient.clone(),
            )]));
        if rebuilt != minus_2k {
            return Err(Error::BaseLocus {
                step: 1,
                detail: format!("recombination gives {rebuilt}, expected {minus_2k}"),
            });
        }
        steps.push(BaseLocusStep {
            name: "recombination".into(),
            detail: format!(
                "-2K = {}*(tau + A) + ({})*F",
                rec.section_multiple, rec.fiber_coefficient
            ),
        });

        // 2: the fiber part moves (a pencil at least) and has no fixed part
        if !rec.fiber_coefficient.positive_from(WORKING_FROM) {
            return Err(Error::BaseLocus {
                step: 2,
                detail: format!(
                    "fiber coefficient {} is not positive over the working range",
                    rec.fiber_coefficient
                ),
            });
        }
        for n0 in SAMPLE_POINTS {
            let fp = crate::surface::fixed_part_numeric(
                self.scroll.base().index().eval_i64(n0)?,
                0,
                rec.fiber_coefficient.eval_i64(n0)?,
            )
            .map_err(|_| Error::BaseLocus {
                step: 2,
                detail: format!("fiber system empty at n = {n0}"),
            })?;
            if fp.mult != 0 {
                return Err(Error::BaseLocus {
                    step: 2,
                    detail: format!("fiber system has fixed part at n = {n0}"),
                });
            }
        }
        steps.push(BaseLocusStep {
            name: "fiber part free".into(),
            detail: format!(
                "h0 of the fiber part is {} >= 2 with no fixed component",
                &rec.fiber_coefficient + &IntPoly::constant(1)
            ),
        });

        // 3: tau + A is rigid but not a fixed component of |-2K|
        let rigid = self.scroll.rigid_primes()?;
        let d1 = self.divisor(1);
        for n0 in SAMPLE_POINTS {
            let h0_full = self.scroll.h0(n0, &minus_2k)?;
            let h0_peeled = self.scroll.h0(n0, &d1)?;
            if h0_peeled >= h0_full {
                return Err(Error::BaseLocus {
                    step: 3,
                    detail: format!(
                        "peeling tau + A does not drop sections at n = {n0} ({h0_peeled} >= {h0_full})"
                    ),
                });
            }
        }
        steps.push(BaseLocusStep {
            name: "section class moves".into(),
            detail: format!(
                "{} rigid classes verified; h0(-2K - (tau + A)) < h0(-2K) at all samples",
                rigid.len()
            ),
        });

        // 4: restricting to the two surfaces through the curve pins it
        let mut details = Vec::new();
        for name in ["R", "U"] {
            let res = self.restriction_to(name, &minus_2k)?;
            let surf = self.scroll.model().surface(name).unwrap();
            for n0 in SAMPLE_POINTS {
                let fp: FixedPart = surf.model().fixed_part(n0, &res)?;
                if fp.mult < 1 {
                    return Err(Error::BaseLocus {
                        step: 4,
                        detail: format!(
                            "-2K restricted to {name} has no fixed section curve at n = {n0}"
                        ),
                    });
                }
            }
            details.push(format!("-2K|_{name} = {res} fixes the section curve"));
        }
        steps.push(BaseLocusStep {
            name: "restrictions pin the curve".into(),
            detail: details.join("; "),
        });

        Ok(BaseLocusReport {
            steps,
            center: (DivClass::sym("C0"), self.scroll.tau_plus_a()),
        })
    }

    /// Stabilizes all five section counts and the multiplicity over
    /// [lo, hi], cross-checking each candidate through hi + 10.
    pub fn stabilized_dims(&self, lo: i64, hi: i64) -> Result<DimsProfile> {
        let mut forms = Vec::new();
        let mut series_stable_from = Vec::new();
        for i in 0..SERIES_LEN as i64 {
            let d = self.divisor(i);
            let (form, from) = stabilize(lo, hi, |n0| self.scroll.h0(n0, &d))?;
            forms.push(form);
            series_stable_from.push(from);
        }
        let drops: Vec<IntPoly> = forms.windows(2).map(|w| &w[0] - &w[1]).collect();
        let (multiplicity, multiplicity_stable_from) =
            stabilize(lo, hi, |n0| self.multiplicity(n0))?;
        let stable_from = series_stable_from
            .iter()
            .copied()
            .chain([multiplicity_stable_from])
            .max()
            .unwrap();
        Ok(DimsProfile {
            forms,
            series_stable_from,
            drops,
            multiplicity,
            multiplicity_stable_from,
            stable_from,
        })
    }
}

/// Finds the least N in [lo, hi) from which f is affine-linear in n: the
/// line through (N, f(N)) and (N+1, f(N+1)) must match every later value
/// up to hi, and is cross-checked at hi+1..=hi+10.
pub fn stabilize<F>(lo: i64, hi: i64, mut f: F) -> Result<(IntPoly, i64)>
where
    F: FnMut(i64) -> Result<i64>,
{
    if hi <= lo {
        return Err(Error::Unsupported(format!(
            "stabilization range [{lo}, {hi}] is too small"
        )));
    }
    let mut values = Vec::new();
    for n0 in lo..=hi + 10 {
        values.push(f(n0)?);
    }
    let at = |n0: i64| values[(n0 - lo) as usize];
    for start in lo..hi {
        let slope = at(start + 1) - at(start);
        let intercept = at(start) - slope * start;
        let fits = (start..=hi + 10).all(|k| at(k) == slope * k + intercept);
        if fits {
            return Ok((IntPoly::linear(slope, intercept), start));
        }
    }
    Err(Error::NoStabilization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::BundleSpec;

    fn fp(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn main_scroll() -> Scroll {
        Scroll::new(fp("n"), BundleSpec { x: 2, y: -1 }).unwrap()
    }

    #[test]
    fn gate_requires_main_bundle() {
        let other = Scroll::new(fp("n"), BundleSpec { x: 1, y: -1 }).unwrap();
        assert!(matches!(
            LinearSeries::new(&other),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn series_divisors() {
        let s = main_scroll();
        let ls = LinearSeries::new(&s).unwrap();
        assert_eq!(ls.divisor(0).to_string(), "4*tau + 8*C0 + (2n + 2)*F");
        assert_eq!(ls.divisor(3).to_string(), "tau + 2*C0 + (2n + 5)*F");
        assert_eq!(ls.divisor(4).to_string(), "(2n + 6)*F");
        let rec = ls.recombination();
        assert_eq!(rec.section_multiple, 4);
        assert_eq!(rec.fiber_coefficient, fp("2n + 6"));
    }

    #[test]
    fn filtration_at_ten() {
        let s = main_scroll();
        let ls = LinearSeries::new(&s).unwrap();
        let filt = ls.filtration(10).unwrap();
        assert_eq!(filt.dims, [201, 162, 120, 75, 27]);
        assert_eq!(filt.drops, [39, 42, 45, 48]);
        assert_eq!(filt.restriction_dims, [39, 42, 45, 48]);
        assert!(filt.surjective.iter().all(|&b| b));
        assert_eq!(filt.fixed_mults, [6, 4, 2, 0, 0]);
        assert_eq!(filt.multiplicity, 3);
    }

    #[test]
    fn multiplicity_timeline() {
        let s = main_scroll();
        let ls = LinearSeries::new(&s).unwrap();
        let timeline: Vec<i64> = (1..=6).map(|n0| ls.multiplicity(n0).unwrap()).collect();
        assert_eq!(timeline, [2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn base_locus_is_the_section_curve() {
        let s = main_scroll();
        let ls = LinearSeries::new(&s).unwrap();
        let report = ls.base_locus().unwrap();
        assert_eq!(report.steps.len(), 4);
        assert_eq!(report.center.0.to_string(), "C0");
        assert_eq!(report.center.1.to_string(), "tau + 2*C0 - F");
    }

    #[test]
    fn stabilized_profile() {
        let s = main_scroll();
        let ls = LinearSeries::new(&s).unwrap();
        let profile = ls.stabilized_dims(1, 40).unwrap();
        let shown: Vec<String> = profile.forms.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown,
            ["14n + 61", "11n + 52", "8n + 40", "5n + 25", "2n + 7"]
        );
        let drops: Vec<String> = profile.drops.iter().map(|p| p.to_string()).collect();
        assert_eq!(drops, ["3n + 9", "3n + 12", "3n + 15", "3n + 18"]);
        assert_eq!(profile.series_stable_from[0], 5);
        assert_eq!(profile.series_stable_from[4], 1);
        assert_eq!(profile.multiplicity, fp("3"));
        assert_eq!(profile.multiplicity_stable_from, 3);
        assert_eq!(profile.stable_from, 5);
    }

    #[test]
    fn stabilize_finds_least_threshold() {
        let noisy = |n: i64| Ok(if n < 5 { 100 + n } else { 3 * n + 2 });
        let (form, from) = stabilize(1, 20, noisy).unwrap();
        assert_eq!(form, fp("3n + 2"));
        assert_eq!(from, 5);

        let constant = |_: i64| Ok(7);
        let (form, from) = stabilize(1, 20, constant).unwrap();
        assert_eq!(form, fp("7"));
        assert_eq!(from, 1);

        let quadratic = |n: i64| Ok(n * n);
        assert!(matches!(
            stabilize(1, 20, quadratic),
            Err(Error::NoStabilization)
        ));

        // a tail deviation beyond hi must spoil the candidate
        let trap = |n: i64| Ok(if n <= 20 { 2 * n } else { 0 });
        assert!(matches!(stabilize(1, 20, trap), Err(Error::NoStabilization)));

        assert!(matches!(
            stabilize(3, 3, |n| Ok(n)),
            Err(Error::Unsupported(_))
        ));
    }
}
