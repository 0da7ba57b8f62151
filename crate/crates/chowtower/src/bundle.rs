//! The scroll X = P(O + O(-A)) over a Hirzebruch surface F_m.
//!
//! A = x*C0 + y*F is the twisting divisor on the base. Pic(X) has basis
//! (tau, C0, F) where tau is the tautological class and C0, F are pulled
//! back. The intersection ring reduces through three rules:
//! tau.a.b = (a.b) on the base, tau^2.a = (c1(V).a), tau^3 = c1(V)^2 with
//! c1(V) = -A, and any product of three pullbacks vanishes.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::poly::{IntPoly, WORKING_FROM};
use crate::surface::{h0_numeric, HirzebruchSurface};
use crate::threefold::{Cycle2, DivClass, EmbeddedSurface, ThreefoldModel, TripleForm};
use crate::{Error, Result};

/// Twisting data: A = x*C0 + y*F.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BundleSpec {
    pub x: i64,
    pub y: i64,
}

impl BundleSpec {
    /// The configuration whose divisor geometry the library tracks in full
    /// (embedded surfaces, linear-system analysis).
    pub fn is_main(&self) -> bool {
        self.x == 2 && self.y == -1
    }
}

/// Sample values of n used whenever a symbolic claim is corroborated
/// numerically.
pub const SAMPLE_POINTS: [i64; 6] = [1, 2, 3, 5, 10, 25];

/// Outcome of an effectivity test on the scroll.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Effectivity {
    pub effective: bool,
    /// Summands r of the bundle filtration carrying sections for all n.
    pub witnesses: Vec<i64>,
}

pub struct Scroll {
    spec: BundleSpec,
    base: HirzebruchSurface,
    model: ThreefoldModel,
}

impl Scroll {
    pub fn new(base_index: IntPoly, spec: BundleSpec) -> Result<Self> {
        let base = HirzebruchSurface::new(base_index.clone())?;
        let m = base_index;
        let x = IntPoly::constant(spec.x);
        let y = IntPoly::constant(spec.y);

        let mut t = TripleForm::new();
        t.set("tau", "C0", "F", IntPoly::constant(1));
        t.set("tau", "C0", "C0", -&m);
        // tau^2 against c1(V) = -A
        t.set("tau", "tau", "C0", &(&x * &m) - &y);
        t.set("tau", "tau", "F", -&x);
        // tau^3 = c1(V)^2 = A^2 = -x^2 m + 2xy
        let a2 = &(&x * &y).times(2) - &(&(&x * &x) * &m);
        t.set("tau", "tau", "tau", a2);

        let c1 = DivClass::from_terms([
            ("tau".to_string(), IntPoly::constant(2)),
            ("C0".to_string(), IntPoly::constant(2 + spec.x)),
            ("F".to_string(), &m + &IntPoly::constant(2 + spec.y)),
        ]);

        let mut c2 = Cycle2::zero();
        c2.add_pair("tau", "C0", &IntPoly::constant(4));
        c2.add_pair("tau", "F", &(&m.times(2) + &IntPoly::constant(4)));
        c2.add_pair(
            "C0",
            "F",
            &(&IntPoly::constant(4 + 2 * spec.x + 2 * spec.y) - &m.times(spec.x)),
        );

        let model = ThreefoldModel::new(
            "X",
            vec!["tau".into(), "C0".into(), "F".into()],
            t,
            c1,
            c2,
            IntPoly::constant(8),
        )?;

        let mut scroll = Scroll { spec, base, model };
        if spec.is_main() {
            scroll.register_standard_surfaces()?;
        }
        Ok(scroll)
    }

    /// The three sections/pullback surfaces with known Hirzebruch structure
    /// in the x = 2, y = -1 configuration:
    /// T in |tau| and R in |tau + A| are copies of the base, U in |C0|
    /// is the scroll of the base's section and has index 2m + 1.
    fn register_standard_surfaces(&mut self) -> Result<()> {
        let m = self.base.index().clone();
        let one = IntPoly::constant(1);
        let zero = IntPoly::zero();

        let t_surf = EmbeddedSurface::new(
            "T",
            DivClass::sym("tau"),
            self.base.clone(),
            [
                ("tau".to_string(), (IntPoly::constant(-2), one.clone())),
                ("C0".to_string(), (one.clone(), zero.clone())),
                ("F".to_string(), (zero.clone(), one.clone())),
            ],
        );
        self.model.add_surface(t_surf)?;

        let r_surf = EmbeddedSurface::new(
            "R",
            self.tau_plus_a(),
            self.base.clone(),
            [
                ("tau".to_string(), (zero.clone(), zero.clone())),
                ("C0".to_string(), (one.clone(), zero.clone())),
                ("F".to_string(), (zero.clone(), one.clone())),
            ],
        );
        self.model.add_surface(r_surf)?;

        let u_index = &m.times(2) + &one;
        let u_surf = EmbeddedSurface::new(
            "U",
            DivClass::sym("C0"),
            HirzebruchSurface::new(u_index.clone())?,
            [
                ("tau".to_string(), (one.clone(), u_index)),
                ("C0".to_string(), (zero.clone(), -&m)),
                ("F".to_string(), (zero.clone(), one.clone())),
            ],
        );
        self.model.add_surface(u_surf)?;
        Ok(())
    }

    pub fn spec(&self) -> BundleSpec {
        self.spec
    }

    pub fn base(&self) -> &HirzebruchSurface {
        &self.base
    }

    pub fn model(&self) -> &ThreefoldModel {
        &self.model
    }

    pub fn into_model(self) -> ThreefoldModel {
        self.model
    }

    /// A = x*C0 + y*F as a divisor class upstairs.
    pub fn a_class(&self) -> DivClass {
        DivClass::from_terms([
            ("C0".to_string(), IntPoly::constant(self.spec.x)),
            ("F".to_string(), IntPoly::constant(self.spec.y)),
        ])
    }

    /// tau + A, the second section class of the scroll.
    pub fn tau_plus_a(&self) -> DivClass {
        DivClass::sym("tau").add(&self.a_class())
    }

    /// h^0 of a*tau + b*C0 + c*F at n = n0, via the bundle filtration:
    /// pushing forward gives the sum over r = 0..a of
    /// h^0(F_m, (b - r*x)*g + (c - r*y)*f).
    pub fn h0(&self, n0: i64, d: &DivClass) -> Result<i64> {
        self.model.check_class(d)?;
        let m = self.base.index().eval_i64(n0)?;
        let a = d.coeff("tau").eval_i64(n0)?;
        let b = d.coeff("C0").eval_i64(n0)?;
        let c = d.coeff("F").eval_i64(n0)?;
        if a < 0 {
            return Ok(0);
        }
        let mut total: i64 = 0;
        for r in 0..=a {
            let h = h0_numeric(m, b - r * self.spec.x, c - r * self.spec.y)?;
            total = total.checked_add(h).ok_or(Error::Numeric)?;
        }
        Ok(total)
    }

    /// Decides effectivity uniformly in n: the tau coefficient must be a
    /// constant a, and the class is effective iff some filtration summand
    /// r in 0..=a has both base coefficients nonnegative over the whole
    /// working range.
    pub fn is_effective(&self, d: &DivClass) -> Result<Effectivity> {
        self.model.check_class(d)?;
        let a = d
            .coeff("tau")
            .as_constant()
            .and_then(|c| c.to_i64())
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "effectivity needs a constant tau coefficient, got {}",
                    d.coeff("tau")
                ))
            })?;
        let b = d.coeff("C0");
        let c = d.coeff("F");
        let mut witnesses = Vec::new();
        let mut r = 0;
        while r <= a {
            let br = &b - &IntPoly::constant(r * self.spec.x);
            let cr = &c - &IntPoly::constant(r * self.spec.y);
            if br.nonneg_from(WORKING_FROM) && cr.nonneg_from(WORKING_FROM) {
                witnesses.push(r);
            }
            r += 1;
        }
        Ok(Effectivity {
            effective: !witnesses.is_empty(),
            witnesses,
        })
    }

    /// The irreducible classes with h^0 = 1 used to peel fixed components:
    /// tau, C0, and tau + A. Requires y < 0 (so that |tau| and |tau + A|
    /// are single points); each claim is corroborated at the sample values
    /// of n before being returned.
    pub fn rigid_primes(&self) -> Result<Vec<DivClass>> {
        if self.spec.y >= 0 {
            return Err(Error::Unsupported(format!(
                "rigid generators need y < 0, bundle has y = {}",
                self.spec.y
            )));
        }
        let classes = vec![
            DivClass::sym("tau"),
            DivClass::sym("C0"),
            self.tau_plus_a(),
        ];
        for d in &classes {
            for n0 in SAMPLE_POINTS {
                let h = self.h0(n0, d)?;
                if h != 1 {
                    return Err(Error::Incompatible(format!(
                        "class {d} has h0 = {h} at n = {n0}, expected a rigid divisor"
                    )));
                }
            }
        }
        Ok(classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn main_scroll() -> Scroll {
        Scroll::new(fp("n"), BundleSpec { x: 2, y: -1 }).unwrap()
    }

    fn dc(a: i64, b: i64, c: i64) -> DivClass {
        DivClass::from_terms([
            ("tau".to_string(), IntPoly::constant(a)),
            ("C0".to_string(), IntPoly::constant(b)),
            ("F".to_string(), IntPoly::constant(c)),
        ])
    }

    #[test]
    fn chern_data() {
        let s = main_scroll();
        assert_eq!(s.model().c1().to_string(), "2*tau + 4*C0 + (n + 1)*F");
        assert_eq!(
            s.model().canonical().to_string(),
            "-2*tau - 4*C0 - (n + 1)*F"
        );
        assert_eq!(s.model().c2().pair_coeff("tau", "C0"), fp("4"));
        assert_eq!(s.model().c2().pair_coeff("tau", "F"), fp("2n + 4"));
        assert_eq!(s.model().c2().pair_coeff("C0", "F"), fp("6 - 2n"));
        assert_eq!(*s.model().euler(), fp("8"));
    }

    #[test]
    fn triple_table() {
        let s = main_scroll();
        let t = s.model().triple_form();
        assert_eq!(t.get("tau", "tau", "C0"), fp("2n + 1"));
        assert_eq!(t.get("tau", "tau", "F"), fp("-2"));
        assert_eq!(t.get("tau", "tau", "tau"), fp("-4n - 4"));
        assert_eq!(t.get("tau", "C0", "C0"), fp("-n"));
        assert_eq!(t.get("tau", "C0", "F"), fp("1"));
        assert_eq!(t.get("tau", "F", "F"), fp("0"));
        for a in ["C0", "F"] {
            for b in ["C0", "F"] {
                for c in ["C0", "F"] {
                    assert_eq!(t.get(a, b, c), fp("0"), "{a}.{b}.{c}");
                }
            }
        }
    }

    #[test]
    fn chern_degrees() {
        let s = main_scroll();
        assert_eq!(s.model().c2_dot(&DivClass::sym("tau")).unwrap(), fp("2n + 2"));
        assert_eq!(s.model().c2_dot(&DivClass::sym("F")).unwrap(), fp("4"));
        assert_eq!(s.model().c2_dot(s.model().c1()).unwrap(), fp("24"));
    }

    #[test]
    fn noether_degree_for_other_bundles() {
        for (x, y) in [(0, 0), (1, 3), (3, -2), (2, -1)] {
            for m in ["0", "2", "n", "2n + 1"] {
                let s = Scroll::new(fp(m), BundleSpec { x, y }).unwrap();
                assert_eq!(
                    s.model().c2_dot(s.model().c1()).unwrap(),
                    fp("24"),
                    "x={x} y={y} m={m}"
                );
            }
        }
    }

    #[test]
    fn section_counts() {
        let s = main_scroll();
        assert_eq!(s.h0(6, &dc(4, 8, 14)).unwrap(), 145);
        assert_eq!(s.h0(6, &dc(1, 2, 17)).unwrap(), 55);
        let minus_2k = s.model().canonical().times(-2);
        assert_eq!(s.h0(5, &minus_2k).unwrap(), 131);
        // below the stabilization threshold the count exceeds the
        // eventual linear form 14n + 61 (which gives 75 at n = 1)
        assert_eq!(s.h0(1, &minus_2k).unwrap(), 91);
        assert_eq!(s.h0(3, &dc(-1, 5, 5)).unwrap(), 0);
    }

    #[test]
    fn h0_rejects_foreign_symbols() {
        let s = main_scroll();
        assert!(matches!(
            s.h0(2, &DivClass::sym("E1")),
            Err(Error::UnknownBasis(_))
        ));
    }

    #[test]
    fn h0_matches_lattice_oracle() {
        // independent count of monomials: a section of a*tau + b*C0 + c*F
        // is a lattice point (r, k, j) with 0 <= r <= a, 0 <= k <= b - r*x,
        // 0 <= j <= c - r*y - k*m
        fn oracle(m: i64, x: i64, y: i64, a: i64, b: i64, c: i64) -> i64 {
            let mut count = 0;
            for r in 0..=a {
                let bb = b - r * x;
                let cc = c - r * y;
                let mut k = 0;
                while k <= bb {
                    let top = cc - k * m;
                    if top >= 0 {
                        count += top + 1;
                    }
                    k += 1;
                }
            }
            count
        }
        let s = main_scroll();
        let mut cases = 0u32;
        for n0 in 1..=5 {
            for a in 0..=5 {
                for b in 0..=10 {
                    for c in -5..=15 {
                        assert_eq!(
                            s.h0(n0, &dc(a, b, c)).unwrap(),
                            oracle(n0, 2, -1, a, b, c),
                            "n={n0} a={a} b={b} c={c}"
                        );
                        cases += 1;
                    }
                }
            }
        }
        assert!(cases >= 5000, "grid too small: {cases}");
    }

    #[test]
    fn effectivity_witnesses() {
        let s = main_scroll();
        let tau_a = s.tau_plus_a();
        assert_eq!(
            s.is_effective(&tau_a).unwrap(),
            Effectivity { effective: true, witnesses: vec![1] }
        );
        assert_eq!(
            s.is_effective(&DivClass::sym("tau")).unwrap(),
            Effectivity { effective: true, witnesses: vec![0] }
        );
        assert!(!s.is_effective(&DivClass::sym("tau").neg()).unwrap().effective);
        assert!(!s.is_effective(&dc(0, -1, 1)).unwrap().effective);
        assert!(s.is_effective(&DivClass::zero()).unwrap().effective);
        // -2K has every summand effective
        let minus_2k = s.model().canonical().times(-2);
        assert_eq!(s.is_effective(&minus_2k).unwrap().witnesses, vec![0, 1, 2, 3, 4]);
        // a polynomial tau coefficient is outside this test's scope
        let poly_tau = DivClass::from_terms([("tau".to_string(), fp("n"))]);
        assert!(matches!(
            s.is_effective(&poly_tau),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn rigid_classes() {
        let s = main_scroll();
        let rigid = s.rigid_primes().unwrap();
        let shown: Vec<String> = rigid.iter().map(|d| d.to_string()).collect();
        assert_eq!(shown, ["tau", "C0", "tau + 2*C0 - F"]);
        for d in &rigid {
            for n0 in SAMPLE_POINTS {
                assert_eq!(s.h0(n0, d).unwrap(), 1);
            }
        }

        let nonneg_y = Scroll::new(fp("n"), BundleSpec { x: 2, y: 0 }).unwrap();
        assert!(matches!(nonneg_y.rigid_primes(), Err(Error::Unsupported(_))));

        // over F_0 the section class C0 moves, so the corroboration trips
        let f0 = Scroll::new(fp("0"), BundleSpec { x: 2, y: -1 }).unwrap();
        assert!(matches!(f0.rigid_primes(), Err(Error::Incompatible(_))));
    }

    #[test]
    fn standard_surfaces_and_restrictions() {
        let s = main_scroll();
        let minus_2k = s.model().canonical().times(-2);

        let r = s.model().surface("R").unwrap();
        assert_eq!(
            r.restrict_class(&minus_2k).unwrap().to_string(),
            "8*g + (2n + 2)*f"
        );
        assert_eq!(r.model().index(), &fp("n"));

        let u = s.model().surface("U").unwrap();
        assert_eq!(
            u.restrict_class(&minus_2k).unwrap().to_string(),
            "4*g + (2n + 6)*f"
        );
        assert_eq!(
            u.restrict_class(&DivClass::sym("tau")).unwrap().to_string(),
            "g + (2n + 1)*f"
        );
        assert_eq!(u.model().index(), &fp("2n + 1"));

        let t = s.model().surface("T").unwrap();
        assert_eq!(
            t.restrict_class(&DivClass::sym("tau")).unwrap().to_string(),
            "-2*g + f"
        );

        // surfaces are only tracked for the main bundle
        let other = Scroll::new(fp("n"), BundleSpec { x: 1, y: -1 }).unwrap();
        assert!(other.model().surface("T").is_none());
        assert!(other.model().surface("R").is_none());
    }
}
