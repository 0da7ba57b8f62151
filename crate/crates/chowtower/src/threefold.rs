//! Divisor classes and intersection data on a smooth projective threefold.
//!
//! A model carries a named divisor basis, the full symmetric triple
//! intersection form, Chern data (c1 as a divisor class, c2 as a formal
//! 2-cycle in products of basis divisors), the topological Euler number,
//! and a registry of embedded surfaces with known restriction maps.
//! Every number is an [`IntPoly`] in the family parameter n.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::IntPoly;
use crate::surface::{HirzebruchSurface, SurfacePicClass};
use crate::{Error, Result};

/// Display order: tau, C0, F, then exceptional classes by index, then the rest.
fn sym_rank(s: &str) -> (u8, u64) {
    match s {
        "tau" => (0, 0),
        "C0" => (1, 0),
        "F" => (2, 0),
        _ => match s.strip_prefix('E').and_then(|t| t.parse::<u64>().ok()) {
            Some(k) if s.len() > 1 => (3, k),
            _ => (4, 0),
        },
    }
}

fn by_rank(a: &str, b: &str) -> std::cmp::Ordering {
    sym_rank(a).cmp(&sym_rank(b)).then_with(|| a.cmp(b))
}

/// Formal integer-polynomial combination of named basis divisors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DivClass {
    coeffs: BTreeMap<String, IntPoly>,
}

impl DivClass {
    pub fn zero() -> Self {
        DivClass::default()
    }

    /// The basis divisor `name` with coefficient 1.
    pub fn sym(name: &str) -> Self {
        DivClass::from_terms([(name.to_string(), IntPoly::constant(1))])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (String, IntPoly)>,
    {
        let mut d = DivClass::zero();
        for (s, c) in terms {
            d.add_term(&s, &c);
        }
        d
    }

    pub fn add_term(&mut self, sym: &str, c: &IntPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(sym.to_string()).or_insert_with(IntPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(sym);
        }
    }

    pub fn coeff(&self, sym: &str) -> IntPoly {
        self.coeffs.get(sym).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in alphabetical key order (stable for maps and serialization).
    pub fn terms(&self) -> impl Iterator<Item = (&str, &IntPoly)> {
        self.coeffs.iter().map(|(s, c)| (s.as_str(), c))
    }

    pub fn support(&self) -> Vec<&str> {
        let mut syms: Vec<&str> = self.coeffs.keys().map(|s| s.as_str()).collect();
        syms.sort_by(|a, b| by_rank(a, b));
        syms
    }

    pub fn add(&self, other: &DivClass) -> DivClass {
        let mut d = self.clone();
        for (s, c) in other.terms() {
            d.add_term(s, c);
        }
        d
    }

    pub fn sub(&self, other: &DivClass) -> DivClass {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DivClass {
        DivClass {
            coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &IntPoly) -> DivClass {
        if k.is_zero() {
            return DivClass::zero();
        }
        DivClass {
            coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), c * k)).collect(),
        }
    }

    pub fn times(&self, k: i64) -> DivClass {
        self.scale(&IntPoly::constant(k))
    }
}

/// Rendered in rank order, e.g. `2*tau + 4*C0 + (n + 1)*F`.
impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for sym in self.support() {
            let c = &self.coeffs[sym];
            crate::render::term(f, c, sym, &mut wrote)?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn triple_key(a: &str, b: &str, c: &str) -> (String, String, String) {
    let mut k = [a, b, c];
    k.sort_unstable();
    (k[0].to_string(), k[1].to_string(), k[2].to_string())
}

/// Formal 2-cycle written as a symmetric combination of products of two
/// basis divisors; this is how c2 is carried between blow-ups.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Cycle2 {
    terms: BTreeMap<(String, String), IntPoly>,
}

impl Cycle2 {
    pub fn zero() -> Self {
        Cycle2::default()
    }

    pub fn add_pair(&mut self, a: &str, b: &str, c: &IntPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(pair_key(a, b))
            .or_insert_with(IntPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&pair_key(a, b));
        }
    }

    pub fn pair_coeff(&self, a: &str, b: &str) -> IntPoly {
        self.terms
            .get(&pair_key(a, b))
            .cloned()
            .unwrap_or_else(IntPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(String, String), &IntPoly)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Cycle2) -> Cycle2 {
        let mut out = self.clone();
        for ((a, b), c) in other.terms() {
            out.add_pair(a, b, c);
        }
        out
    }

    pub fn sub(&self, other: &Cycle2) -> Cycle2 {
        let mut out = self.clone();
        for ((a, b), c) in other.terms() {
            out.add_pair(a, b, &-c);
        }
        out
    }

    /// Bilinear expansion of the product of two divisor classes.
    pub fn product(d1: &DivClass, d2: &DivClass) -> Cycle2 {
        let mut out = Cycle2::zero();
        for (a, ca) in d1.terms() {
            for (b, cb) in d2.terms() {
                out.add_pair(a, b, &(ca * cb));
            }
        }
        out
    }
}

/// Symmetric trilinear intersection form on the divisor basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TripleForm {
    vals: BTreeMap<(String, String, String), IntPoly>,
}

impl TripleForm {
    pub fn new() -> Self {
        TripleForm::default()
    }

    pub fn set(&mut self, a: &str, b: &str, c: &str, v: IntPoly) {
        let key = triple_key(a, b, c);
        if v.is_zero() {
            self.vals.remove(&key);
        } else {
            self.vals.insert(key, v);
        }
    }

    pub fn get(&self, a: &str, b: &str, c: &str) -> IntPoly {
        self.vals
            .get(&triple_key(a, b, c))
            .cloned()
            .unwrap_or_else(IntPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(String, String, String), &IntPoly)> {
        self.vals.iter()
    }
}

/// An irreducible surface inside the model with known class and a linear
/// restriction map Pic(X) -> Pic(S) against the (g, f) basis of S.
#[derive(Clone, Debug)]
pub struct EmbeddedSurface {
    name: String,
    class: DivClass,
    model: HirzebruchSurface,
    restrict: BTreeMap<String, (IntPoly, IntPoly)>,
}

impl EmbeddedSurface {
    pub fn new<I>(name: &str, class: DivClass, model: HirzebruchSurface, restrict: I) -> Self
    where
        I: IntoIterator<Item = (String, (IntPoly, IntPoly))>,
    {
        EmbeddedSurface {
            name: name.to_string(),
            class,
            model,
            restrict: restrict.into_iter().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn class(&self) -> &DivClass {
        &self.class
    }

    pub fn model(&self) -> &HirzebruchSurface {
        &self.model
    }

    pub fn restriction_of(&self, sym: &str) -> Result<SurfacePicClass> {
        let (g, f) = self
            .restrict
            .get(sym)
            .ok_or_else(|| Error::UnknownBasis(sym.to_string()))?;
        Ok(self.model.class(g.clone(), f.clone()))
    }

    /// Pulls a divisor class back to Pic(S) term by term.
    pub fn restrict_class(&self, d: &DivClass) -> Result<SurfacePicClass> {
        let mut g = IntPoly::zero();
        let mut f = IntPoly::zero();
        for (sym, c) in d.terms() {
            let (rg, rf) = self
                .restrict
                .get(sym)
                .ok_or_else(|| Error::UnknownBasis(sym.to_string()))?;
            g += &(c * rg);
            f += &(c * rf);
        }
        Ok(self.model.class(g, f))
    }
}

/// A threefold stage of the tower: basis, intersection theory, Chern data,
/// and registered embedded surfaces.
#[derive(Clone, Debug)]
pub struct ThreefoldModel {
    name: String,
    basis: Vec<String>,
    triple: TripleForm,
    c1: DivClass,
    c2: Cycle2,
    euler: IntPoly,
    surfaces: BTreeMap<String, EmbeddedSurface>,
}

impl ThreefoldModel {
    pub fn new(
        name: &str,
        basis: Vec<String>,
        triple: TripleForm,
        c1: DivClass,
        c2: Cycle2,
        euler: IntPoly,
    ) -> Result<Self> {
        let model = ThreefoldModel {
            name: name.to_string(),
            basis,
            triple,
            c1,
            c2,
            euler,
            surfaces: BTreeMap::new(),
        };
        for (key, _) in model.triple.entries() {
            for sym in [&key.0, &key.1, &key.2] {
                model.check_symbol(sym)?;
            }
        }
        model.check_class(&model.c1)?;
        for ((a, b), _) in model.c2.terms() {
            model.check_symbol(a)?;
            model.check_symbol(b)?;
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn triple_form(&self) -> &TripleForm {
        &self.triple
    }

    pub fn c1(&self) -> &DivClass {
        &self.c1
    }

    pub fn c2(&self) -> &Cycle2 {
        &self.c2
    }

    pub fn euler(&self) -> &IntPoly {
        &self.euler
    }

    pub fn canonical(&self) -> DivClass {
        self.c1.neg()
    }

    fn check_symbol(&self, sym: &str) -> Result<()> {
        if self.basis.iter().any(|b| b == sym) {
            Ok(())
        } else {
            Err(Error::UnknownBasis(sym.to_string()))
        }
    }

    pub fn check_class(&self, d: &DivClass) -> Result<()> {
        for (sym, _) in d.terms() {
            self.check_symbol(sym)?;
        }
        Ok(())
    }

    /// Trilinear evaluation of D1 . D2 . D3.
    pub fn triple_eval(&self, d1: &DivClass, d2: &DivClass, d3: &DivClass) -> Result<IntPoly> {
        for d in [d1, d2, d3] {
            self.check_class(d)?;
        }
        let mut total = IntPoly::zero();
        for (a, ca) in d1.terms() {
            for (b, cb) in d2.terms() {
                let cab = ca * cb;
                for (c, cc) in d3.terms() {
                    total += &(&(&cab * cc) * &self.triple.get(a, b, c));
                }
            }
        }
        Ok(total)
    }

    /// The degree c2(X) . D.
    pub fn c2_dot(&self, d: &DivClass) -> Result<IntPoly> {
        self.check_class(d)?;
        let mut total = IntPoly::zero();
        for ((a, b), cab) in self.c2.terms() {
            for (s, cs) in d.terms() {
                total += &(&(cab * cs) * &self.triple.get(a, b, s));
            }
        }
        Ok(total)
    }

    /// Euler number of a smooth surface S in class D, from
    /// c2(S) = (c2(X) - c1(X).D + D^2) . D.
    pub fn euler_divisor(&self, d: &DivClass) -> Result<IntPoly> {
        let cross = self.triple_eval(&self.c1, d, d)?;
        let cube = self.triple_eval(d, d, d)?;
        Ok(&(&self.c2_dot(d)? - &cross) + &cube)
    }

    /// Registers an embedded surface after checking its restriction map
    /// against the triple form: for all basis divisors D, D',
    /// [S] . D . D' must equal (D|_S) . (D'|_S) in Pic(S).
    pub fn add_surface(&mut self, s: EmbeddedSurface) -> Result<()> {
        self.check_class(s.class())?;
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i..] {
                let lhs = self.triple_eval(
                    s.class(),
                    &DivClass::sym(a),
                    &DivClass::sym(b),
                )?;
                let ra = s.restriction_of(a)?;
                let rb = s.restriction_of(b)?;
                let rhs = ra.intersect(&rb)?;
                if lhs != rhs {
                    return Err(Error::Incompatible(format!(
                        "surface {}: [S].{a}.{b} = {lhs} but restrictions pair to {rhs}",
                        s.name()
                    )));
                }
            }
        }
        self.surfaces.insert(s.name().to_string(), s);
        Ok(())
    }

    pub fn surface(&self, name: &str) -> Option<&EmbeddedSurface> {
        self.surfaces.get(name)
    }

    pub fn surfaces(&self) -> impl Iterator<Item = &EmbeddedSurface> {
        self.surfaces.values()
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    /// (P1)^3: basis a, b, c with a.b.c = 1 and all repeated products zero.
    fn cube() -> ThreefoldModel {
        let mut t = TripleForm::new();
        t.set("a", "b", "c", fp("1"));
        let c1 = DivClass::from_terms([
            ("a".into(), fp("2")),
            ("b".into(), fp("2")),
            ("c".into(), fp("2")),
        ]);
        let mut c2 = Cycle2::zero();
        c2.add_pair("a", "b", &fp("4"));
        c2.add_pair("a", "c", &fp("4"));
        c2.add_pair("b", "c", &fp("4"));
        ThreefoldModel::new(
            "cube",
            vec!["a".into(), "b".into(), "c".into()],
            t,
            c1,
            c2,
            fp("8"),
        )
        .unwrap()
    }

    #[test]
    fn divclass_arithmetic_and_display() {
        let d = DivClass::from_terms([
            ("F".into(), fp("n + 1")),
            ("tau".into(), fp("2")),
            ("C0".into(), fp("4")),
        ]);
        assert_eq!(d.to_string(), "2*tau + 4*C0 + (n + 1)*F");
        assert_eq!(d.neg().to_string(), "-2*tau - 4*C0 - (n + 1)*F");
        assert_eq!(d.sub(&d), DivClass::zero());
        assert_eq!(DivClass::zero().to_string(), "0");
        assert_eq!(d.coeff("C0"), fp("4"));
        assert_eq!(d.coeff("E1"), fp("0"));
        let e = DivClass::from_terms([
            ("E2".into(), fp("1")),
            ("E1".into(), fp("-1")),
            ("tau".into(), fp("1")),
        ]);
        assert_eq!(e.to_string(), "tau - E1 + E2");
        assert_eq!(d.times(2).coeff("tau"), fp("4"));
        assert_eq!(d.scale(&fp("n")).coeff("F"), fp("n^2 + n"));
    }

    #[test]
    fn triple_form_is_symmetric_storage() {
        let mut t = TripleForm::new();
        t.set("x", "y", "z", fp("5"));
        assert_eq!(t.get("z", "x", "y"), fp("5"));
        assert_eq!(t.get("y", "z", "x"), fp("5"));
        t.set("z", "y", "x", fp("7"));
        assert_eq!(t.get("x", "y", "z"), fp("7"));
        assert_eq!(t.get("x", "x", "z"), fp("0"));
    }

    #[test]
    fn cube_intersections() {
        let m = cube();
        let a = DivClass::sym("a");
        let h = DivClass::from_terms([
            ("a".into(), fp("1")),
            ("b".into(), fp("1")),
            ("c".into(), fp("1")),
        ]);
        // h^3 = 6 since only the mixed product survives
        assert_eq!(m.triple_eval(&h, &h, &h).unwrap(), fp("6"));
        assert_eq!(m.triple_eval(&a, &a, &h).unwrap(), fp("0"));
        assert_eq!(m.c2_dot(m.c1()).unwrap(), fp("24"));
        // fiber a is P1 x P1
        assert_eq!(m.euler_divisor(&a).unwrap(), fp("4"));
        assert_eq!(m.canonical().to_string(), "-2*a - 2*b - 2*c");
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        let m = cube();
        let bad = DivClass::sym("E1");
        assert!(matches!(
            m.triple_eval(&bad, &bad, &bad),
            Err(Error::UnknownBasis(_))
        ));
        assert!(matches!(m.c2_dot(&bad), Err(Error::UnknownBasis(_))));

        let mut t = TripleForm::new();
        t.set("a", "a", "q", fp("1"));
        assert!(ThreefoldModel::new(
            "bad",
            vec!["a".into()],
            t,
            DivClass::zero(),
            Cycle2::zero(),
            fp("0"),
        )
        .is_err());
    }

    #[test]
    fn cycle2_products() {
        let d1 = DivClass::from_terms([("a".into(), fp("2")), ("b".into(), fp("1"))]);
        let d2 = DivClass::from_terms([("a".into(), fp("1")), ("c".into(), fp("3"))]);
        let p = Cycle2::product(&d1, &d2);
        assert_eq!(p.pair_coeff("a", "a"), fp("2"));
        assert_eq!(p.pair_coeff("a", "b"), fp("1"));
        assert_eq!(p.pair_coeff("a", "c"), fp("6"));
        assert_eq!(p.pair_coeff("b", "c"), fp("3"));
        assert_eq!(p.pair_coeff("b", "b"), fp("0"));
        let q = p.sub(&p);
        assert_eq!(q, Cycle2::zero());
    }

    #[test]
    fn surface_registration_checks_pairings() {
        let mut m = cube();
        let f0 = HirzebruchSurface::new(IntPoly::zero()).unwrap();
        let good = EmbeddedSurface::new(
            "S",
            DivClass::sym("a"),
            f0.clone(),
            [
                ("a".to_string(), (fp("0"), fp("0"))),
                ("b".to_string(), (fp("1"), fp("0"))),
                ("c".to_string(), (fp("0"), fp("1"))),
            ],
        );
        m.add_surface(good).unwrap();
        let s = m.surface("S").unwrap();
        let h = DivClass::from_terms([("b".into(), fp("2")), ("c".into(), fp("5"))]);
        assert_eq!(s.restrict_class(&h).unwrap().to_string(), "2*g + 5*f");

        let bad = EmbeddedSurface::new(
            "Sbad",
            DivClass::sym("a"),
            f0,
            [
                ("a".to_string(), (fp("0"), fp("0"))),
                ("b".to_string(), (fp("1"), fp("0"))),
                ("c".to_string(), (fp("1"), fp("0"))), // pairs to g.g = 0, not 1
            ],
        );
        assert!(matches!(m.add_surface(bad), Err(Error::Incompatible(_))));
    }
}
