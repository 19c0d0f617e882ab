//! Well-pointed endofunctors, their algebras, the ind-object `Ω^∞X` and the
//! localisation `L_Ω C` with hom `colim_m C(X, Ω^m Y)`.

use std::sync::Arc;

use serde::Serialize;

use crate::cat::assemble::{assemble, Assembled, HomRule};
use crate::cat::enumerate::enumerate_functors;
use crate::cat::iso::{check_equivalence, inverse, is_iso, naturally_isomorphic, skeleton};
use crate::cat::{Arrow, Elem, Enrichment, EnumLimits, FiniteCategory, Functor, NatTransformation, ObjId};
use crate::error::{Error, Result};
use crate::ind::{ind_hom, row_colimit, IndObject};
use crate::linalg::{Matrix, Q};
use crate::periodic::{unroll, Carrier, SeqColimit};

/// A pointed endofunctor `(Ω, θ: id => Ω)` satisfying `θΩ = Ωθ`.
#[derive(Clone, Debug)]
pub struct WellPointedEndo {
    pub omega: Functor,
    pub theta: NatTransformation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellPointedReport {
    pub well_pointed: bool,
    pub failing_object: Option<String>,
}

pub fn check_well_pointed(omega: &Functor, theta: &NatTransformation) -> Result<WellPointedReport> {
    let cat = &omega.src;
    for x in cat.objects() {
        let lhs = theta.component(omega.obj(x));
        let rhs = omega.apply(theta.component(x))?;
        if *lhs != rhs {
            return Ok(WellPointedReport { well_pointed: false, failing_object: Some(cat.object_name(x).to_string()) });
        }
    }
    Ok(WellPointedReport { well_pointed: true, failing_object: None })
}

impl WellPointedEndo {
    /// Validates `Ω`, `θ` and well-pointedness.
    pub fn new(omega: Functor, theta: NatTransformation) -> Result<Self> {
        if !omega.is_endo() {
            return Err(Error::Precondition("Ω must be an endofunctor".into()));
        }
        if !omega.validate().is_valid() {
            return Err(Error::Precondition("Ω is not a functor".into()));
        }
        if theta.source != Functor::identity(&omega.src) || theta.target != omega {
            return Err(Error::Precondition("θ must go from the identity to Ω".into()));
        }
        if !theta.validate().is_valid() {
            return Err(Error::Precondition("θ is not natural".into()));
        }
        let report = check_well_pointed(&omega, &theta)?;
        if let Some(x) = report.failing_object {
            return Err(Error::Precondition(format!("θΩ and Ωθ differ at `{x}`")));
        }
        Ok(Self { omega, theta })
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.omega.src
    }

    pub fn theta(&self, x: ObjId) -> &Arrow {
        self.theta.component(x)
    }

    /// `θ` iterated: `X -> Ω^n X`.
    pub fn theta_power(&self, x: ObjId, n: usize) -> Result<Arrow> {
        let cat = self.category();
        let mut acc = cat.identity(x);
        let mut o = x;
        for _ in 0..n {
            acc = cat.compose(self.theta(o), &acc)?;
            o = self.omega.obj(o);
        }
        Ok(acc)
    }

    /// The same data on the opposite category, for a copointed `ε: Ω => id`.
    pub fn from_copointed(omega: &Functor, epsilon: &[Arrow]) -> Result<Self> {
        let op = Arc::new(omega.src.opposite());
        let omega_op = Functor {
            src: op.clone(),
            dst: op.clone(),
            on_objects: omega.on_objects.clone(),
            on_morphisms: omega.on_morphisms.iter().map(FiniteCategory::op_arrow).collect(),
        };
        let components = epsilon.iter().map(FiniteCategory::op_arrow).collect();
        Self::new(omega_op.clone(), NatTransformation::pointing(&omega_op, components))
    }
}

/// The inverse of `θ_X` if it exists: by the Lemma this is the unique
/// algebra structure `ΩX -> X`.
pub fn algebra_structure(wp: &WellPointedEndo, x: ObjId) -> Option<Arrow> {
    inverse(wp.category(), wp.theta(x))
}

/// All `f: ΩX -> X` with `f o θ_X = id` (Set), or one such `f` together with
/// the dimension of the solution space (Vect).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraCandidates {
    pub solutions: Vec<Arrow>,
    pub unique: bool,
}

pub fn algebra_candidates(wp: &WellPointedEndo, x: ObjId) -> Result<AlgebraCandidates> {
    let cat = wp.category();
    let ox = wp.omega.obj(x);
    let t = wp.theta(x);
    let id = cat.identity(x);
    match cat.enrichment() {
        Enrichment::Set => {
            let mut solutions = Vec::new();
            for f in cat.hom_arrows(ox, x) {
                if cat.compose(&f, t)? == id {
                    solutions.push(f);
                }
            }
            let unique = solutions.len() == 1;
            Ok(AlgebraCandidates { solutions, unique })
        }
        Enrichment::Vect => {
            let basis = cat.hom_arrows(ox, x);
            let rows = cat.hom_size(x, x);
            if basis.is_empty() {
                return Ok(AlgebraCandidates { solutions: Vec::new(), unique: false });
            }
            let cols = basis
                .iter()
                .map(|f| Ok(cat.compose(f, t)?.value.vector().expect("linear").to_vec()))
                .collect::<Result<Vec<Vec<Q>>>>()?;
            let m = Matrix::from_columns(rows, &cols);
            match m.solve(id.value.vector().expect("linear")) {
                Some(v) => Ok(AlgebraCandidates {
                    solutions: vec![Arrow { src: ox, dst: x, value: Elem::Vector(v) }],
                    unique: m.kernel().is_empty(),
                }),
                None => Ok(AlgebraCandidates { solutions: Vec::new(), unique: false }),
            }
        }
    }
}

/// `X -> ΩX -> Ω²X -> ...` as an ind-object.
pub fn omega_infinity(wp: &WellPointedEndo, x: ObjId) -> Result<IndObject> {
    let (objects, q, _) = unroll(x, |&o| wp.omega.obj(o));
    let transitions = objects.iter().map(|&o| wp.theta(o).clone()).collect();
    IndObject::new(wp.category().clone(), objects, transitions, q)
}

/// `L_Ω C` with the functor `Ω^∞: C -> L_Ω C`.
#[derive(Debug)]
pub struct LocalisedCategory {
    pub source: Arc<FiniteCategory>,
    pub category: Arc<FiniteCategory>,
    pub omega_infinity: Functor,
    /// `rows[x][y] = colim_m C(x, Ω^m y)`.
    rows: Vec<Vec<SeqColimit>>,
    towers: Vec<IndObject>,
    assembled: Assembled,
}

struct LocalRule<'a> {
    cat: &'a FiniteCategory,
    omega: &'a Functor,
    rows: &'a [Vec<SeqColimit>],
    towers: &'a [IndObject],
}

impl LocalRule<'_> {
    fn anchor(&self, y: ObjId) -> usize {
        self.towers[y].preperiod
    }

    fn rep(&self, x: ObjId, y: ObjId, e: &Elem) -> Arrow {
        let q = self.anchor(y);
        Arrow { src: x, dst: self.towers[y].object_at(q), value: self.rows[x][y].representative(e) }
    }
}

impl HomRule for LocalRule<'_> {
    fn carrier(&self, a: ObjId, b: ObjId) -> Carrier {
        self.rows[a][b].carrier()
    }

    fn identity(&self, a: ObjId) -> Elem {
        self.rows[a][a].leg(0, &self.cat.identity(a).value)
    }

    fn compose(&self, x: ObjId, y: ObjId, z: ObjId, g: &Elem, f: &Elem) -> Result<Elem> {
        let (m, n) = (self.anchor(y), self.anchor(z));
        let f_rep = self.rep(x, y, f);
        let g_rep = self.rep(y, z, g);
        let h = self.cat.compose(&self.omega.apply_power(&g_rep, m)?, &f_rep)?;
        Ok(self.rows[x][z].leg(m + n, &h.value))
    }

    fn label(&self, a: ObjId, b: ObjId, e: &Elem) -> String {
        let (sa, sb) = (self.cat.object_name(a), self.cat.object_name(b));
        match e {
            Elem::Point(_) => format!("[{}]:{sa}->{sb}", self.cat.describe(&self.rep(a, b, e))),
            Elem::Vector(v) => {
                let k = v.iter().position(|c| *c != Q::from_integer(0.into())).unwrap_or(0);
                format!("[{}]:{sa}->{sb}", self.cat.describe(&self.rep(a, b, &Elem::Vector(crate::linalg::unit(v.len(), k)))))
            }
        }
    }
}

pub fn localisation_category(wp: &WellPointedEndo) -> Result<LocalisedCategory> {
    let cat = wp.category().clone();
    let towers: Vec<IndObject> = cat.objects().map(|y| omega_infinity(wp, y)).collect::<Result<_>>()?;
    let rows: Vec<Vec<SeqColimit>> = cat
        .objects()
        .map(|x| towers.iter().map(|t| row_colimit(x, t)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let names: Vec<String> = cat.objects().map(|o| cat.object_name(o).to_string()).collect();
    let rule = LocalRule { cat: &cat, omega: &wp.omega, rows: &rows, towers: &towers };
    let assembled = assemble(&format!("L({})", cat.name()), cat.enrichment(), &names, &rule)?;
    let category = Arc::new(assembled.category.clone());
    let on_morphisms = (0..cat.morphism_count())
        .map(|m| {
            let f = cat.basis_arrow(m);
            let e = rows[f.src][f.dst].leg(0, &f.value);
            assembled.to_arrow(f.src, f.dst, &e)
        })
        .collect();
    let omega_infinity = Functor { src: cat.clone(), dst: category.clone(), on_objects: cat.objects().collect(), on_morphisms };
    Ok(LocalisedCategory { source: cat, category, omega_infinity, rows, towers, assembled })
}

impl LocalisedCategory {
    /// `Ω^∞` applied to an arrow of the source category.
    pub fn image(&self, f: &Arrow) -> Result<Arrow> {
        self.omega_infinity.apply(f)
    }

    /// A representative `X -> Ω^q Y` of an arrow of `L_Ω C`.
    pub fn representative(&self, f: &Arrow) -> Arrow {
        let e = self.assembled.to_carrier(f);
        let y = f.dst;
        Arrow { src: f.src, dst: self.towers[y].object_at(self.towers[y].preperiod), value: self.rows[f.src][y].representative(&e) }
    }

    /// Every `Ω^∞(θ_X)` is invertible.
    pub fn inverts_theta(&self, wp: &WellPointedEndo) -> Result<bool> {
        for x in self.source.objects() {
            if !is_iso(&self.category, &self.image(wp.theta(x))?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The induced well-pointed endofunctor on `L_Ω C`.
    pub fn induced(&self, wp: &WellPointedEndo) -> Result<WellPointedEndo> {
        let l = &self.category;
        let on_morphisms = (0..l.morphism_count())
            .map(|m| {
                let f = l.basis_arrow(m);
                let e = self.assembled.to_carrier(&f);
                let (x, y) = (f.src, f.dst);
                let q = self.towers[y].preperiod;
                let rep = Arrow { src: x, dst: self.towers[y].object_at(q), value: self.rows[x][y].representative(&e) };
                let (ox, oy) = (wp.omega.obj(x), wp.omega.obj(y));
                let moved = wp.omega.apply(&rep)?;
                // Ω(Ω^q y) = Ω^q(Ω y), read at stage q of the tower of Ω y
                let class = self.rows[ox][oy].leg(q, &moved.value);
                Ok(self.assembled.to_arrow(ox, oy, &class))
            })
            .collect::<Result<_>>()?;
        let omega = Functor { src: l.clone(), dst: l.clone(), on_objects: wp.omega.on_objects.clone(), on_morphisms };
        let components = self.source.objects().map(|x| self.image(wp.theta(x))).collect::<Result<_>>()?;
        WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, components))
    }

    /// A skeleton, preferring objects that are already `Ω`-algebras.
    pub fn skeleton(&self, wp: &WellPointedEndo) -> FiniteCategory {
        skeleton(&self.category, |x| algebra_structure(wp, x).is_some()).0
    }
}

/// `lim_n colim_m C(Ω^n X, Ω^m Y)` against `colim_m C(X, Ω^m Y)`: restriction
/// to stage 0 is a bijection (Set) or invertible (Vect).
pub fn hom_formula_agreement(wp: &WellPointedEndo, x: ObjId, y: ObjId) -> Result<bool> {
    let (ox, oy) = (omega_infinity(wp, x)?, omega_infinity(wp, y)?);
    let full = ind_hom(&ox, &oy)?;
    let row = row_colimit(x, &oy)?;
    if full.carrier() != row.carrier() {
        return Ok(false);
    }
    let images: Vec<Elem> = full.carrier().elements().iter().map(|e| full.limit.leg(0, e)).collect();
    Ok(match full.carrier() {
        Carrier::Set(n) => {
            let mut seen: Vec<usize> = images.iter().filter_map(Elem::point).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == n
        }
        Carrier::Vect(n) => {
            n == 0 || {
                let cols: Vec<Vec<Q>> = images.iter().map(|e| e.vector().expect("linear").to_vec()).collect();
                Matrix::from_columns(n, &cols).rank() == n
            }
        }
    })
}

/// `Ω^∞` sends each composite `X -> Ω^n X` of `θ`s to an isomorphism.
pub fn reflection_unit_check(wp: &WellPointedEndo, l: &LocalisedCategory) -> Result<bool> {
    for x in wp.category().objects() {
        let t = omega_infinity(wp, x)?;
        for n in 0..=t.objects.len() {
            if !is_iso(&l.category, &l.image(&wp.theta_power(x, n)?)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Localising `L_Ω C` again at the induced pointing gives an equivalence.
pub fn idempotence_check(wp: &WellPointedEndo, l: &LocalisedCategory) -> Result<bool> {
    let induced = l.induced(wp)?;
    let ll = localisation_category(&induced)?;
    Ok(check_equivalence(&ll.omega_infinity).equivalent)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorisation {
    /// Object map of the functor `F: C -> D`.
    pub functor: Vec<String>,
    pub inverts_theta: bool,
    /// Number of `F': L_Ω C -> D` with `F' Ω^∞ ≅ F`.
    pub factorisations: usize,
    pub unique_up_to_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub functors: usize,
    pub inverting: usize,
    pub entries: Vec<Factorisation>,
    pub holds: bool,
}

/// Checks the universal property of `Ω^∞: C -> L_Ω C` against every functor
/// `C -> D`: each `θ`-inverting functor factors, uniquely up to natural
/// isomorphism.
pub fn verify_localisation_universal(wp: &WellPointedEndo, d: &Arc<FiniteCategory>, limits: &EnumLimits) -> Result<UniversalReport> {
    let l = localisation_category(wp)?;
    let cat = wp.category();
    let from_c = enumerate_functors(cat, d, *limits)?;
    let from_l = enumerate_functors(&l.category, d, *limits)?;
    let mut entries = Vec::new();
    for f in &from_c {
        let inverts = cat.objects().all(|x| f.apply(wp.theta(x)).map(|t| is_iso(d, &t)).unwrap_or(false));
        let functor = f.on_objects.iter().map(|&o| d.object_name(o).to_string()).collect();
        if !inverts {
            entries.push(Factorisation { functor, inverts_theta: false, factorisations: 0, unique_up_to_iso: true });
            continue;
        }
        let mut factors = Vec::new();
        for g in &from_l {
            let composite = g.after(&l.omega_infinity)?;
            if naturally_isomorphic(&composite, f) {
                factors.push(g);
            }
        }
        let unique = factors.windows(2).all(|w| naturally_isomorphic(w[0], w[1]));
        entries.push(Factorisation { functor, inverts_theta: true, factorisations: factors.len(), unique_up_to_iso: unique });
    }
    let inverting = entries.iter().filter(|e| e.inverts_theta).count();
    let holds = entries.iter().all(|e| !e.inverts_theta || (e.factorisations > 0 && e.unique_up_to_iso));
    Ok(UniversalReport { functors: from_c.len(), inverting, entries, holds })
}

/// Hom carrier of `L_Ω C` computed independently of the assembled category.
pub fn localised_hom_carrier(wp: &WellPointedEndo, x: ObjId, y: ObjId) -> Result<Carrier> {
    Ok(row_colimit(x, &omega_infinity(wp, y)?)?.carrier())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::*;

    fn chain3_shift() -> WellPointedEndo {
        let c = Arc::new(chain3());
        let omega = monotone_functor(&c, &[1, 2, 2]).unwrap();
        let theta = (0..3).map(|x| unique_arrow(&c, x, omega.obj(x)).unwrap()).collect();
        WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, theta)).unwrap()
    }

    fn monoid_e() -> WellPointedEndo {
        let m = Arc::new(idempotent_monoid());
        let omega = Functor::identity(&m);
        let e = m.basis_arrow(m.morphism_id("e").unwrap());
        WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, vec![e])).unwrap()
    }

    #[test]
    fn algebra_structures_on_chain3() {
        let wp = chain3_shift();
        assert_eq!(algebra_structure(&wp, 2), Some(wp.category().identity(2)));
        assert_eq!(algebra_structure(&wp, 0), None);
        assert!(algebra_candidates(&wp, 0).unwrap().solutions.is_empty());
    }

    #[test]
    fn monoid_e_has_no_algebra() {
        let wp = monoid_e();
        assert_eq!(algebra_structure(&wp, 0), None);
        assert!(algebra_candidates(&wp, 0).unwrap().solutions.is_empty());
    }

    #[test]
    fn omega_infinity_of_bottom_is_top() {
        let wp = chain3_shift();
        let x = omega_infinity(&wp, 0).unwrap();
        assert_eq!(x.objects, vec![0, 1, 2]);
        assert_eq!(x.preperiod, 2);
        assert!(crate::ind::ind_isomorphic(&x, &IndObject::embed(wp.category(), 2)).unwrap());
    }

    #[test]
    fn chain3_localisation_collapses_to_top() {
        let wp = chain3_shift();
        let l = localisation_category(&wp).unwrap();
        assert!(l.category.validate().is_valid());
        assert!(l.inverts_theta(&wp).unwrap());
        let sk = l.skeleton(&wp);
        assert_eq!((sk.object_count(), sk.morphism_count()), (1, 1));
        assert_eq!(sk.object_name(0), "2");
    }

    #[test]
    fn monoid_localisation_is_trivial() {
        let wp = monoid_e();
        let l = localisation_category(&wp).unwrap();
        assert_eq!(l.category.morphism_count(), 1);
        assert!(l.inverts_theta(&wp).unwrap());
    }

    #[test]
    fn identity_localisation_is_equivalent() {
        let c = Arc::new(chain3());
        let omega = Functor::identity(&c);
        let theta = c.objects().map(|x| c.identity(x)).collect();
        let wp = WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, theta)).unwrap();
        let l = localisation_category(&wp).unwrap();
        assert!(check_equivalence(&l.omega_infinity).equivalent);
    }

    #[test]
    fn universal_property_into_chain3() {
        let wp = chain3_shift();
        let d = Arc::new(chain3());
        let r = verify_localisation_universal(&wp, &d, &EnumLimits::default()).unwrap();
        assert_eq!(r.functors, 10);
        assert!(r.holds);
        assert!(r.inverting > 0);
    }

    #[test]
    fn idempotence_and_reflection() {
        for wp in [chain3_shift(), monoid_e()] {
            let l = localisation_category(&wp).unwrap();
            assert!(idempotence_check(&wp, &l).unwrap());
            assert!(reflection_unit_check(&wp, &l).unwrap());
            for x in wp.category().objects() {
                for y in wp.category().objects() {
                    assert!(hom_formula_agreement(&wp, x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn copointed_becomes_well_pointed_on_opposite() {
        let c = Arc::new(chain3());
        let f = monotone_functor(&c, &[0, 0, 1]).unwrap();
        let eps: Vec<Arrow> = (0..3).map(|x| unique_arrow(&c, f.obj(x), x).unwrap()).collect();
        assert!(WellPointedEndo::from_copointed(&f, &eps).is_ok());
    }
}
