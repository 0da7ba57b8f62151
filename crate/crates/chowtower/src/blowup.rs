//! Blow-up of a threefold stage along a smooth curve cut out by two
//! divisors.
//!
//! The center C = P meet Q must be a section of the ruling: P.Q.F = 1 is
//! validated up front. Its normal bundle splits as O(P)|_C + O(Q)|_C with
//! degrees deg_a = P^2.Q and deg_b = P.Q^2, and the intersection ring
//! extends by E.D.D' = 0, E^2.D = -D.P.Q, E^3 = -(deg_a + deg_b) for
//! pulled-back D, D'. Chern data moves by c1' = c1 - E and
//! c2' = (c2 - P.Q) - c1.E, and the Euler number rises by 2.
//!
//! The exceptional divisor is itself a Hirzebruch surface
//! F_{|deg_a - deg_b|}, ruled over C; [`Blowup::exceptional_surface`]
//! builds it together with the restriction map of the new Picard basis.

use crate::poly::{IntPoly, WORKING_FROM};
use crate::surface::HirzebruchSurface;
use crate::threefold::{Cycle2, DivClass, EmbeddedSurface, ThreefoldModel};
use crate::{Error, Result};

pub struct Blowup {
    model: ThreefoldModel,
    exc: String,
    deg_a: IntPoly,
    deg_b: IntPoly,
}

/// Blows up `model` along P meet Q, adding the exceptional class `exc` to
/// the divisor basis of the resulting stage `name`. Embedded-surface
/// registrations do not survive: total transforms of the old surfaces are
/// no longer irreducible with Hirzebruch structure, so the new stage
/// starts with an empty registry.
pub fn blow_up(
    model: &ThreefoldModel,
    name: &str,
    exc: &str,
    div_a: &DivClass,
    div_b: &DivClass,
) -> Result<Blowup> {
    if model.basis().iter().any(|s| s == exc) {
        return Err(Error::Unsupported(format!(
            "exceptional symbol {exc} is already a basis class"
        )));
    }
    model.check_class(div_a)?;
    model.check_class(div_b)?;

    let fiber_deg = model.triple_eval(div_a, div_b, &DivClass::sym("F"))?;
    if fiber_deg != IntPoly::constant(1) {
        return Err(Error::Incompatible(format!(
            "center must meet the ruling fiber once, got P.Q.F = {fiber_deg}"
        )));
    }

    let deg_a = model.triple_eval(div_a, div_a, div_b)?;
    let deg_b = model.triple_eval(div_a, div_b, div_b)?;

    let mut basis = model.basis().to_vec();
    basis.push(exc.to_string());

    // products of pullbacks keep their values; E^2 sees the center class
    let mut triple = model.triple_form().clone();
    for sym in model.basis() {
        let through_center =
            model.triple_eval(&DivClass::sym(sym), div_a, div_b)?;
        triple.set(exc, exc, sym, -&through_center);
    }
    triple.set(exc, exc, exc, -&(&deg_a + &deg_b));

    let mut c1 = model.c1().clone();
    c1.add_term(exc, &IntPoly::constant(-1));

    let center_cycle = Cycle2::product(div_a, div_b);
    let c2 = model
        .c2()
        .sub(&center_cycle)
        .sub(&Cycle2::product(model.c1(), &DivClass::sym(exc)));

    let euler = model.euler() + &IntPoly::constant(2);

    let model = ThreefoldModel::new(name, basis, triple, c1, c2, euler)?;
    Ok(Blowup {
        model,
        exc: exc.to_string(),
        deg_a,
        deg_b,
    })
}

impl Blowup {
    pub fn model(&self) -> &ThreefoldModel {
        &self.model
    }

    pub fn model_mut(&mut self) -> &mut ThreefoldModel {
        &mut self.model
    }

    pub fn into_model(self) -> ThreefoldModel {
        self.model
    }

    pub fn exceptional(&self) -> &str {
        &self.exc
    }

    /// Degrees of O(P)|_C and O(Q)|_C on the blown-up curve.
    pub fn normal_degrees(&self) -> (&IntPoly, &IntPoly) {
        (&self.deg_a, &self.deg_b)
    }

    /// deg c1 of the normal bundle; always equals -E^3.
    pub fn normal_c1(&self) -> IntPoly {
        &self.deg_a + &self.deg_b
    }

    /// The exceptional divisor as a Hirzebruch surface
    /// F_{|deg_a - deg_b|}: its ruling index needs |deg_a - deg_b| to have
    /// one sign over the whole working range, else the structure is not
    /// uniform in n and this errors.
    ///
    /// Restrictions: F pulls back to the ruling fiber f; for each basis
    /// class D the g-component is E.D.F and the f-component follows from
    /// pairing against E|_E = -g + d_min*f.
    pub fn exceptional_surface(&self) -> Result<EmbeddedSurface> {
        let diff = &self.deg_a - &self.deg_b;
        let (index, d_min) = if diff.nonneg_from(WORKING_FROM) {
            (diff.clone(), self.deg_b.clone())
        } else if diff.nonpos_from(WORKING_FROM) {
            (-&diff, self.deg_a.clone())
        } else {
            return Err(Error::MixedSign(format!(
                "normal degree difference {diff} changes sign over the working range"
            )));
        };
        let surface = HirzebruchSurface::new(index.clone())?;
        let t = self.model.triple_form();
        let mut restrict = Vec::new();
        for sym in self.model.basis() {
            let p = t.get(&self.exc, sym, "F");
            let q = &(&p * &(&index + &d_min)) - &t.get(&self.exc, sym, &self.exc);
            restrict.push((sym.clone(), (p, q)));
        }
        Ok(EmbeddedSurface::new(
            &self.exc,
            DivClass::sym(&self.exc),
            surface,
            restrict,
        ))
    }

    /// Builds and registers the exceptional surface on this stage's model,
    /// which re-checks every pairing against the extended triple form.
    pub fn register_exceptional(&mut self) -> Result<()> {
        let s = self.exceptional_surface()?;
        self.model.add_surface(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{BundleSpec, Scroll};

    fn fp(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn main_scroll() -> Scroll {
        Scroll::new(fp("n"), BundleSpec { x: 2, y: -1 }).unwrap()
    }

    fn first_stage() -> Blowup {
        let s = main_scroll();
        let tau_a = s.tau_plus_a();
        blow_up(
            s.model(),
            "X1",
            "E1",
            &DivClass::sym("C0"),
            &tau_a,
        )
        .unwrap()
    }

    #[test]
    fn center_degrees() {
        let b = first_stage();
        let (da, db) = b.normal_degrees();
        assert_eq!(*da, fp("-n"));
        assert_eq!(*db, fp("-2n - 1"));
        assert_eq!(b.normal_c1(), fp("-3n - 1"));
    }

    #[test]
    fn extended_triple_table() {
        let b = first_stage();
        let t = b.model().triple_form();
        // pullback products unchanged
        assert_eq!(t.get("tau", "tau", "C0"), fp("2n + 1"));
        assert_eq!(t.get("tau", "C0", "F"), fp("1"));
        // one E against two pullbacks dies
        assert_eq!(t.get("E1", "tau", "C0"), fp("0"));
        assert_eq!(t.get("E1", "C0", "F"), fp("0"));
        assert_eq!(t.get("E1", "tau", "tau"), fp("0"));
        // E^2 reads the center
        assert_eq!(t.get("E1", "E1", "C0"), fp("n"));
        assert_eq!(t.get("E1", "E1", "F"), fp("-1"));
        assert_eq!(t.get("E1", "E1", "tau"), fp("0"));
        assert_eq!(t.get("E1", "E1", "E1"), fp("3n + 1"));
    }

    #[test]
    fn chern_bookkeeping() {
        let b = first_stage();
        let m = b.model();
        assert_eq!(
            m.c1().to_string(),
            "2*tau + 4*C0 + (n + 1)*F - E1"
        );
        assert_eq!(*m.euler(), fp("10"));
        let c2 = m.c2();
        assert_eq!(c2.pair_coeff("tau", "C0"), fp("3"));
        assert_eq!(c2.pair_coeff("tau", "F"), fp("2n + 4"));
        assert_eq!(c2.pair_coeff("C0", "F"), fp("7 - 2n"));
        assert_eq!(c2.pair_coeff("C0", "C0"), fp("-2"));
        assert_eq!(c2.pair_coeff("tau", "E1"), fp("-2"));
        assert_eq!(c2.pair_coeff("C0", "E1"), fp("-4"));
        assert_eq!(c2.pair_coeff("F", "E1"), fp("-n - 1"));
        assert_eq!(c2.pair_coeff("E1", "E1"), fp("0"));
    }

    #[test]
    fn exceptional_surface_structure() {
        let mut b = first_stage();
        b.register_exceptional().unwrap();
        let e = b.model().surface("E1").unwrap();
        assert_eq!(e.model().index(), &fp("n + 1"));
        assert_eq!(
            e.restriction_of("E1").unwrap().to_string(),
            "-g - (2n + 1)*f"
        );
        assert_eq!(e.restriction_of("tau").unwrap().to_string(), "0");
        assert_eq!(e.restriction_of("C0").unwrap().to_string(), "-n*f");
        assert_eq!(e.restriction_of("F").unwrap().to_string(), "f");
    }

    #[test]
    fn euler_of_exceptional_divisor() {
        let b = first_stage();
        assert_eq!(
            b.model().euler_divisor(&DivClass::sym("E1")).unwrap(),
            fp("4")
        );
    }

    #[test]
    fn rejects_bad_centers() {
        let s = main_scroll();
        let c0 = DivClass::sym("C0");
        let f = DivClass::sym("F");
        let tau_a = s.tau_plus_a();

        // C0 and C0 + F never meet a fiber
        let vertical = c0.add(&f);
        assert!(matches!(
            blow_up(s.model(), "X1", "E1", &c0, &vertical),
            Err(Error::Incompatible(_))
        ));

        // duplicate basis symbol
        assert!(matches!(
            blow_up(s.model(), "X1", "tau", &c0, &tau_a),
            Err(Error::Unsupported(_))
        ));

        // unknown symbol in a center class
        assert!(matches!(
            blow_up(s.model(), "X1", "E1", &DivClass::sym("E9"), &tau_a),
            Err(Error::UnknownBasis(_))
        ));
    }

    #[test]
    fn sign_change_in_normal_difference_is_reported() {
        let s = main_scroll();
        // P = C0, Q = tau + A + 2F has degree difference n - 3
        let q = s.tau_plus_a().add(&DivClass::sym("F").times(2));
        let b = blow_up(s.model(), "X1", "E1", &DivClass::sym("C0"), &q).unwrap();
        let (da, db) = b.normal_degrees();
        assert_eq!(&(da - db), &fp("n - 3"));
        assert!(matches!(
            b.exceptional_surface(),
            Err(Error::MixedSign(_))
        ));
    }
}
