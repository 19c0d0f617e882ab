//! Heller stabilisation: pairs `(c, i)` with
//! `[(c,i),(d,j)] = colim_k C(Ω^{k+i} c, Ω^{k+j} d)`.
//!
//! Homs depend only on the degree difference, so the category is built on a
//! window of degrees `[-W, W]`.

use std::sync::Arc;

use crate::cat::assemble::{assemble, Assembled, HomRule};
use num::integer::lcm;
use serde::Serialize;

use crate::cat::coreflect::is_bijective;
use crate::cat::iso::naturally_isomorphic;
use crate::cat::{enumerate_functors, Arrow, Elem, EnumLimits, Enrichment, FiniteCategory, Functor, ObjId};
use crate::error::{Error, Result};
use crate::ind::{arrow, hom_carrier};
use crate::linalg::{unit, Q};
use crate::periodic::{detect_orbit, sequential_colimit, sequential_limit, unroll, Carrier, Direction, EpSequence, Map, SeqColimit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabObject {
    pub base: ObjId,
    pub degree: i64,
}

impl StabObject {
    pub fn new(base: ObjId, degree: i64) -> Self {
        Self { base, degree }
    }
}

/// A representative `Ω^{k+i} c -> Ω^{k+j} d` at stage `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabMorphism {
    pub stage: usize,
    pub rep: Arrow,
}

fn start_stage(x: StabObject, y: StabObject) -> usize {
    (-x.degree).max(-y.degree).max(0) as usize
}

fn lift(omega: &Functor, base: ObjId, degree: i64, k: usize) -> ObjId {
    omega.obj_power(base, (k as i64 + degree) as usize)
}

#[derive(Clone, Debug)]
pub struct StabHom {
    pub source: StabObject,
    pub target: StabObject,
    /// The stage `k` of sequence position 0.
    pub start: usize,
    pub colimit: SeqColimit,
    omega: Functor,
}

pub fn stab_hom(omega: &Functor, x: StabObject, y: StabObject) -> Result<StabHom> {
    if !omega.is_endo() {
        return Err(Error::Precondition("Ω must be an endofunctor".into()));
    }
    let cat = omega.src.clone();
    let start = start_stage(x, y);
    let first = (lift(omega, x.base, x.degree, start), lift(omega, y.base, y.degree, start));
    let (pairs, mu, lam) = unroll(first, |&(a, b)| (omega.obj(a), omega.obj(b)));
    let stages = pairs.iter().map(|&(a, b)| hom_carrier(&cat, a, b)).collect();
    let links = (0..pairs.len())
        .map(|n| {
            let (a, b) = pairs[n];
            let (na, nb) = if n + 1 < pairs.len() { pairs[n + 1] } else { pairs[mu] };
            Map::tabulate(hom_carrier(&cat, a, b), hom_carrier(&cat, na, nb), |h| {
                Ok(omega.apply(&arrow(a, b, h.clone()))?.value)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(pairs.len(), mu + lam);
    let colimit = sequential_colimit(&EpSequence::new(stages, links, mu, Direction::Forward)?)?;
    Ok(StabHom { source: x, target: y, start, colimit, omega: omega.clone() })
}

impl StabHom {
    pub fn carrier(&self) -> Carrier {
        self.colimit.carrier()
    }

    /// The pair of objects `(Ω^{k+i} c, Ω^{k+j} d)` at stage `k`.
    pub fn objects_at(&self, k: usize) -> (ObjId, ObjId) {
        let (x, y) = (self.source, self.target);
        (lift(&self.omega, x.base, x.degree, k), lift(&self.omega, y.base, y.degree, k))
    }

    /// The class of a representative; stages below the start are raised by `Ω`.
    pub fn class(&self, m: &StabMorphism) -> Result<Elem> {
        let (mut rep, mut k) = (m.rep.clone(), m.stage);
        if (rep.src, rep.dst) != self.objects_at(k) && k >= self.start {
            return Err(Error::Precondition("representative has the wrong endpoints".into()));
        }
        while k < self.start {
            rep = self.omega.apply(&rep)?;
            k += 1;
        }
        if (rep.src, rep.dst) != self.objects_at(k) {
            return Err(Error::Precondition("representative has the wrong endpoints".into()));
        }
        Ok(self.colimit.leg(k - self.start, &rep.value))
    }

    /// The representative at the canonical stage (start plus preperiod).
    pub fn normal_form(&self, e: &Elem) -> StabMorphism {
        let stage = self.start + self.colimit.seq.preperiod;
        let (a, b) = self.objects_at(stage);
        StabMorphism { stage, rep: arrow(a, b, self.colimit.representative(e)) }
    }

    /// `[(c,i),(d,j)] -> [(c,i+l),(d,j+l)]`: the same arrow read at stage `k - l`.
    pub fn shift_class(&self, shifted: &StabHom, l: i64, e: &Elem) -> Result<Elem> {
        let mut m = self.normal_form(e);
        while (m.stage as i64) < l {
            m = StabMorphism { stage: m.stage + 1, rep: self.omega.apply(&m.rep)? };
        }
        shifted.class(&StabMorphism { stage: (m.stage as i64 - l) as usize, rep: m.rep })
    }
}

fn stab_name(cat: &FiniteCategory, x: StabObject) -> String {
    format!("({},{})", cat.object_name(x.base), x.degree)
}

/// The stabilisation on the degree window `[-W, W]`.
#[derive(Debug)]
pub struct Stabilisation {
    pub omega: Functor,
    pub window: i64,
    pub objects: Vec<StabObject>,
    pub category: Arc<FiniteCategory>,
    homs: Vec<Vec<StabHom>>,
    assembled: Assembled,
}

struct StabRule<'a> {
    base: &'a FiniteCategory,
    omega: &'a Functor,
    objects: &'a [StabObject],
    homs: &'a [Vec<StabHom>],
}

impl HomRule for StabRule<'_> {
    fn carrier(&self, a: ObjId, b: ObjId) -> Carrier {
        self.homs[a][b].carrier()
    }

    fn identity(&self, a: ObjId) -> Elem {
        let h = &self.homs[a][a];
        let (o, _) = h.objects_at(h.start);
        h.class(&StabMorphism { stage: h.start, rep: self.base.identity(o) }).expect("identity class")
    }

    fn compose(&self, x: ObjId, y: ObjId, z: ObjId, g: &Elem, f: &Elem) -> Result<Elem> {
        let f = self.homs[x][y].normal_form(f);
        let g = self.homs[y][z].normal_form(g);
        let k = f.stage.max(g.stage);
        let f = self.omega.apply_power(&f.rep, k - f.stage)?;
        let g = self.omega.apply_power(&g.rep, k - g.stage)?;
        self.homs[x][z].class(&StabMorphism { stage: k, rep: self.base.compose(&g, &f)? })
    }

    fn label(&self, a: ObjId, b: ObjId, e: &Elem) -> String {
        let e = match e {
            Elem::Point(_) => e.clone(),
            Elem::Vector(v) => {
                let k = v.iter().position(|c| *c != Q::from_integer(0.into())).unwrap_or(0);
                Elem::Vector(unit(v.len(), k))
            }
        };
        let m = self.homs[a][b].normal_form(&e);
        format!(
            "[{}]@{}:{}->{}",
            self.base.describe(&m.rep),
            m.stage,
            stab_name(self.base, self.objects[a]),
            stab_name(self.base, self.objects[b])
        )
    }
}

pub const DEFAULT_WINDOW: i64 = 3;

pub fn stabilisation_category(omega: &Functor, window: i64) -> Result<Stabilisation> {
    if window < 0 {
        return Err(Error::Precondition("window must be non-negative".into()));
    }
    let base = omega.src.clone();
    let objects: Vec<StabObject> =
        (-window..=window).flat_map(|i| base.objects().map(move |c| StabObject::new(c, i))).collect();
    let homs: Vec<Vec<StabHom>> = objects
        .iter()
        .map(|&x| objects.iter().map(|&y| stab_hom(omega, x, y)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let names: Vec<String> = objects.iter().map(|&x| stab_name(&base, x)).collect();
    let rule = StabRule { base: &base, omega, objects: &objects, homs: &homs };
    let assembled = assemble(&format!("S({})", base.name()), base.enrichment(), &names, &rule)?;
    let category = Arc::new(assembled.category.clone());
    Ok(Stabilisation { omega: omega.clone(), window, objects, category, homs, assembled })
}

/// Results of the autoequivalence checks for `Ω` on the window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AutoequivalenceReport {
    /// `Ω` is a functor on the window category.
    pub functor: bool,
    /// `Ω` is bijective (resp. a linear iso) on every hom.
    pub fully_faithful: bool,
    /// The identity classes `Ω(c,i) -> (c,i+1)` are isomorphisms, natural in `(c,i)`.
    pub shift_natural_iso: bool,
    /// Shifting degrees by `±l` is a bijection on every hom, for `l` in the window.
    pub degree_shift: bool,
}

impl AutoequivalenceReport {
    pub fn passes(&self) -> bool {
        self.functor && self.fully_faithful && self.shift_natural_iso && self.degree_shift
    }
}

impl Stabilisation {
    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.omega.src
    }

    pub fn index_of(&self, x: StabObject) -> Option<ObjId> {
        self.objects.iter().position(|&o| o == x)
    }

    fn index(&self, x: StabObject) -> Result<ObjId> {
        self.index_of(x).ok_or_else(|| Error::Precondition(format!("{x:?} lies outside the window")))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &StabHom {
        &self.homs[a][b]
    }

    pub fn arrow(&self, a: ObjId, b: ObjId, e: &Elem) -> Arrow {
        self.assembled.to_arrow(a, b, e)
    }

    pub fn element(&self, f: &Arrow) -> Elem {
        self.assembled.to_carrier(f)
    }

    /// The arrow of the window category represented by `m`.
    pub fn class_of(&self, a: ObjId, b: ObjId, m: &StabMorphism) -> Result<Arrow> {
        Ok(self.arrow(a, b, &self.homs[a][b].class(m)?))
    }

    /// The normal form of an arrow of the window category.
    pub fn normal_form(&self, f: &Arrow) -> StabMorphism {
        self.homs[f.src][f.dst].normal_form(&self.element(f))
    }

    /// `c |-> (c, 0)`.
    pub fn universal(&self) -> Result<Functor> {
        let base = self.base();
        let on_objects: Vec<ObjId> =
            base.objects().map(|c| self.index(StabObject::new(c, 0))).collect::<Result<_>>()?;
        let on_morphisms = (0..base.morphism_count())
            .map(|m| {
                let f = base.basis_arrow(m);
                self.class_of(on_objects[f.src], on_objects[f.dst], &StabMorphism { stage: 0, rep: f })
            })
            .collect::<Result<_>>()?;
        Ok(Functor { src: base.clone(), dst: self.category.clone(), on_objects, on_morphisms })
    }

    /// `Ω(c,i) = (Ωc, i)` on the window.
    pub fn loop_functor(&self) -> Result<Functor> {
        let on_objects: Vec<ObjId> = self
            .objects
            .iter()
            .map(|x| self.index(StabObject::new(self.omega.obj(x.base), x.degree)))
            .collect::<Result<_>>()?;
        let c = &self.category;
        let on_morphisms = (0..c.morphism_count())
            .map(|m| {
                let f = c.basis_arrow(m);
                let nf = self.normal_form(&f);
                let rep = self.omega.apply(&nf.rep)?;
                self.class_of(on_objects[f.src], on_objects[f.dst], &StabMorphism { stage: nf.stage, rep })
            })
            .collect::<Result<_>>()?;
        Ok(Functor { src: c.clone(), dst: c.clone(), on_objects, on_morphisms })
    }

    /// The class of the identity `Ω(c,i) -> (c,i+1)`.
    pub fn shift_iso(&self, x: StabObject) -> Result<Arrow> {
        let a = self.index(StabObject::new(self.omega.obj(x.base), x.degree))?;
        let b = self.index(StabObject::new(x.base, x.degree + 1))?;
        let k = start_stage(self.objects[a], self.objects[b]);
        let o = lift(&self.omega, x.base, x.degree + 1, k);
        self.class_of(a, b, &StabMorphism { stage: k, rep: self.base().identity(o) })
    }

    pub fn autoequivalence_report(&self) -> Result<AutoequivalenceReport> {
        let c = &self.category;
        let omega = self.loop_functor()?;
        let functor = omega.validate().is_valid();
        let fully_faithful = fully_faithful(&omega)?;
        let inner: Vec<StabObject> = self.objects.iter().copied().filter(|x| x.degree < self.window).collect();
        let mut shift_natural_iso = true;
        for &x in &inner {
            let s = self.shift_iso(x)?;
            if !crate::cat::is_iso(c, &s) {
                shift_natural_iso = false;
            }
        }
        for m in 0..c.morphism_count() {
            let f = c.basis_arrow(m);
            let (x, y) = (self.objects[f.src], self.objects[f.dst]);
            if x.degree >= self.window || y.degree >= self.window {
                continue;
            }
            let fa = self.index(StabObject::new(x.base, x.degree + 1))?;
            let fb = self.index(StabObject::new(y.base, y.degree + 1))?;
            let shifted = self.arrow(fa, fb, &self.homs[f.src][f.dst].shift_class(&self.homs[fa][fb], -1, &self.element(&f))?);
            let lhs = c.compose(&self.shift_iso(y)?, &omega.apply(&f)?)?;
            let rhs = c.compose(&shifted, &self.shift_iso(x)?)?;
            if lhs != rhs {
                shift_natural_iso = false;
            }
        }
        let degree_shift = self.degree_shift_check()?;
        Ok(AutoequivalenceReport { functor, fully_faithful, shift_natural_iso, degree_shift })
    }

    /// Every hom of the window against its shift by `l`, for all admissible `l`.
    pub fn degree_shift_check(&self) -> Result<bool> {
        for a in 0..self.objects.len() {
            for b in 0..self.objects.len() {
                let (x, y) = (self.objects[a], self.objects[b]);
                for l in -2 * self.window..=2 * self.window {
                    let (Some(sa), Some(sb)) = (
                        self.index_of(StabObject::new(x.base, x.degree + l)),
                        self.index_of(StabObject::new(y.base, y.degree + l)),
                    ) else {
                        continue;
                    };
                    if !shift_bijective(&self.homs[a][b], &self.homs[sa][sb], l)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Whether the degree shift by `l` is a bijection (resp. linear iso) of carriers.
pub fn shift_bijective(h: &StabHom, shifted: &StabHom, l: i64) -> Result<bool> {
    if h.carrier() != shifted.carrier() {
        return Ok(false);
    }
    let map = Map::tabulate(h.carrier(), shifted.carrier(), |e| h.shift_class(shifted, l, e))?;
    let back = Map::tabulate(shifted.carrier(), h.carrier(), |e| shifted.shift_class(h, -l, e))?;
    Ok(back.after(&map) == Map::identity(h.carrier()) && map.after(&back) == Map::identity(shifted.carrier()))
}

/// Whether an endofunctor of a finite category is bijective on every hom.
pub fn fully_faithful(f: &Functor) -> Result<bool> {
    let (src, dst) = (&f.src, &f.dst);
    for a in src.objects() {
        for b in src.objects() {
            let (fa, fb) = (f.obj(a), f.obj(b));
            let map = Map::tabulate(hom_carrier(src, a, b), hom_carrier(dst, fa, fb), |h| {
                Ok(f.apply(&arrow(a, b, h.clone()))?.value)
            })?;
            let injective_and_surjective = is_bijective(&map);
            if !injective_and_surjective {
                return Ok(false);
            }
        }
    }
    Ok(true)
}


/// `lim -> colim` for one hom loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomComparison {
    pub source: String,
    pub target: String,
    pub limit: usize,
    pub colimit: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub holds: bool,
    /// Objects on which `Ω` is eventually a permutation.
    pub periodic_objects: Vec<String>,
    pub objects_bijective: bool,
    pub homs: Vec<HomComparison>,
    pub witness: Option<String>,
}

/// The comparison `lim -> colim` of a loop `g` on a finite set, as a map.
fn loop_comparison(carrier: Carrier, g: &Map) -> Result<(usize, usize, bool)> {
    let tower = sequential_limit(&EpSequence::constant_loop(carrier, g.clone(), Direction::Backward)?)?;
    let telescope = sequential_colimit(&EpSequence::constant_loop(carrier, g.clone(), Direction::Forward)?)?;
    let map = Map::tabulate(tower.carrier(), telescope.carrier(), |e| Ok(telescope.leg(0, &tower.leg(0, e))))?;
    Ok((tower.carrier().size(), telescope.carrier().size(), is_bijective(&map)))
}

/// Compares `lim J` and `colim J` for `J = ... -> C -> C -> ...` along `Ω`,
/// on objects and on the hom loops between periodic objects.
pub fn eventual_image_duality_check(omega: &Functor) -> Result<DualityReport> {
    let cat = &omega.src;
    if cat.enrichment() != Enrichment::Set {
        return Err(Error::Unsupported("eventual image duality is only checked for Set-enriched categories".into()));
    }
    let n = cat.object_count();
    let on_objects = Map::Fun { dst_size: n, images: omega.on_objects.clone() };
    let (_, _, objects_bijective) = loop_comparison(Carrier::Set(n), &on_objects)?;
    let periodic: Vec<ObjId> = cat.objects().filter(|&a| detect_orbit(omega, a).preperiod == 0).collect();
    let mut homs = Vec::new();
    let mut witness = (!objects_bijective).then(|| "objects".to_string());
    for &a in &periodic {
        for &b in &periodic {
            let p = lcm(detect_orbit(omega, a).period, detect_orbit(omega, b).period);
            let carrier = hom_carrier(cat, a, b);
            let g = Map::tabulate(carrier, carrier, |h| Ok(omega.apply_power(&arrow(a, b, h.clone()), p)?.value))?;
            let (limit, colimit, bijective) = loop_comparison(carrier, &g)?;
            if !bijective && witness.is_none() {
                witness = Some(format!("{} -> {}", cat.object_name(a), cat.object_name(b)));
            }
            homs.push(HomComparison {
                source: cat.object_name(a).to_string(),
                target: cat.object_name(b).to_string(),
                limit,
                colimit,
                bijective,
            });
        }
    }
    Ok(DualityReport {
        holds: witness.is_none(),
        periodic_objects: periodic.iter().map(|&a| cat.object_name(a).to_string()).collect(),
        objects_bijective,
        homs,
        witness,
    })
}

/// The inverse of an endofunctor that is bijective on objects and on homs.
pub fn invert_automorphism(f: &Functor) -> Result<Functor> {
    let cat = &f.src;
    let n = cat.object_count();
    let mut inv = vec![usize::MAX; n];
    for a in cat.objects() {
        inv[f.obj(a)] = a;
    }
    if inv.contains(&usize::MAX) || !fully_faithful(f)? {
        return Err(Error::Unsupported("the target loop functor must be an automorphism".into()));
    }
    let on_morphisms = (0..cat.morphism_count())
        .map(|m| {
            let h = cat.basis_arrow(m);
            let (a, b) = (inv[h.src], inv[h.dst]);
            let map = Map::tabulate(hom_carrier(cat, a, b), hom_carrier(cat, h.src, h.dst), |x| {
                Ok(f.apply(&arrow(a, b, x.clone()))?.value)
            })?;
            let value = match (&map, &h.value) {
                (Map::Fun { images, .. }, Elem::Point(t)) => images.iter().position(|i| i == t).map(Elem::Point),
                (Map::Lin(m), Elem::Vector(v)) => m.solve(v).map(Elem::Vector),
                _ => None,
            };
            value
                .map(|v| arrow(a, b, v))
                .ok_or_else(|| Error::Unsupported("the target loop functor must be an automorphism".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Functor { src: cat.clone(), dst: cat.clone(), on_objects: inv, on_morphisms })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HellerReport {
    /// `F'` is a functor on the window.
    pub extension_functor: bool,
    /// `F = F' o ι` on the nose.
    pub restricts: bool,
    /// `F' o Ω ≅ Ω_D o F'`.
    pub intertwines: bool,
    /// Functors `G` with `G ι ≅ F` and `G Ω ≅ Ω_D G`.
    pub candidates: usize,
    /// Every such `G` is naturally isomorphic to `F'`.
    pub unique: bool,
}

impl HellerReport {
    pub fn holds(&self) -> bool {
        self.extension_functor && self.restricts && self.intertwines && self.unique
    }
}

/// `F'(c, i) = Ω_D^i F(c)` extended to morphisms by `[f]_k |-> Ω_D^{-k} F(f)`.
pub fn heller_extension(s: &Stabilisation, omega_d: &Functor, f: &Functor) -> Result<Functor> {
    if !omega_d.is_endo() || f.src != *s.base() || f.dst != omega_d.src {
        return Err(Error::Precondition("F must go from the base category to the target of Ω_D".into()));
    }
    if f.after(&s.omega)? != omega_d.after(f)? {
        return Err(Error::Precondition("F does not intertwine Ω and Ω_D strictly".into()));
    }
    let inv = invert_automorphism(omega_d)?;
    let shift = |x: ObjId, i: i64| -> ObjId {
        if i >= 0 {
            omega_d.obj_power(x, i as usize)
        } else {
            inv.obj_power(x, (-i) as usize)
        }
    };
    let on_objects: Vec<ObjId> = s.objects.iter().map(|x| shift(f.obj(x.base), x.degree)).collect();
    let on_morphisms = (0..s.category.morphism_count())
        .map(|m| {
            let nf = s.normal_form(&s.category.basis_arrow(m));
            inv.apply_power(&f.apply(&nf.rep)?, nf.stage)
        })
        .collect::<Result<_>>()?;
    Ok(Functor { src: s.category.clone(), dst: omega_d.src.clone(), on_objects, on_morphisms })
}

pub fn verify_heller_universal(s: &Stabilisation, omega_d: &Functor, f: &Functor, limits: EnumLimits) -> Result<HellerReport> {
    let ext = heller_extension(s, omega_d, f)?;
    let iota = s.universal()?;
    let omega_s = s.loop_functor()?;
    let intertwines = |g: &Functor| -> Result<bool> { Ok(naturally_isomorphic(&g.after(&omega_s)?, &omega_d.after(g)?)) };
    let all = enumerate_functors(&s.category, &omega_d.src, limits)?;
    let mut candidates = 0;
    let mut unique = true;
    for g in &all {
        if naturally_isomorphic(&g.after(&iota)?, f) && intertwines(g)? {
            candidates += 1;
            if !naturally_isomorphic(g, &ext) {
                unique = false;
            }
        }
    }
    Ok(HellerReport {
        extension_functor: ext.validate().is_valid(),
        restricts: ext.after(&iota)? == *f,
        intertwines: intertwines(&ext)?,
        candidates,
        unique: unique && candidates > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::{self, chain3, idempotent_monoid, monotone_functor};

    fn chain3_shift() -> Functor {
        let c = Arc::new(chain3());
        monotone_functor(&c, &[1, 2, 2]).unwrap()
    }

    #[test]
    fn chain3_shift_is_terminal() {
        let s = stabilisation_category(&chain3_shift(), 2).unwrap();
        for a in 0..s.objects.len() {
            for b in 0..s.objects.len() {
                assert_eq!(s.hom(a, b).carrier().size(), 1);
            }
        }
        let two = s.index_of(StabObject::new(2, 0)).unwrap();
        for a in 0..s.objects.len() {
            assert!(crate::cat::iso::are_isomorphic(&s.category, a, two));
        }
        assert!(s.autoequivalence_report().unwrap().passes());
    }

    #[test]
    fn monoid_with_identity_loop() {
        let m = Arc::new(idempotent_monoid());
        let s = stabilisation_category(&Functor::identity(&m), 1).unwrap();
        let a = s.index_of(StabObject::new(0, 0)).unwrap();
        let b = s.index_of(StabObject::new(0, 1)).unwrap();
        assert_eq!(s.hom(a, b).carrier().size(), 2);
        assert_eq!(s.hom(a, a).carrier().size(), 2);
        assert!(s.autoequivalence_report().unwrap().passes());
        let u = s.universal().unwrap();
        assert!(u.validate().is_valid());
    }

    #[test]
    fn degree_shift_by_five() {
        let omega = chain3_shift();
        for (c, d) in [(0, 2), (2, 0), (1, 1)] {
            let h = stab_hom(&omega, StabObject::new(c, -1), StabObject::new(d, 2)).unwrap();
            let g = stab_hom(&omega, StabObject::new(c, 4), StabObject::new(d, 7)).unwrap();
            assert!(shift_bijective(&h, &g, 5).unwrap());
        }
    }

    #[test]
    fn duality_on_a_loop_of_singletons() {
        let c = Arc::new(instances::discrete(&["1", "2", "3"]));
        let omega = monotone_functor(&c, &[1, 2, 2]).unwrap();
        let r = eventual_image_duality_check(&omega).unwrap();
        assert!(r.holds);
        assert_eq!(r.periodic_objects, vec![c.object_name(2).to_string()]);
    }

    #[test]
    fn duality_refuses_linear() {
        let c = Arc::new(instances::scalar_line());
        assert!(matches!(eventual_image_duality_check(&Functor::identity(&c)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn heller_into_terminal() {
        let s = stabilisation_category(&chain3_shift(), 0).unwrap();
        let t = Arc::new(instances::terminal());
        let omega_t = Functor::identity(&t);
        let f = crate::cat::enumerate_functors(s.base(), &t, EnumLimits::default()).unwrap().remove(0);
        let r = verify_heller_universal(&s, &omega_t, &f, EnumLimits::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.candidates, 1);
    }

    #[test]
    fn heller_into_monoid() {
        let m = Arc::new(idempotent_monoid());
        let id = Functor::identity(&m);
        let s = stabilisation_category(&id, 1).unwrap();
        let r = verify_heller_universal(&s, &id, &id, EnumLimits::default()).unwrap();
        assert!(r.holds());
    }
}
