//! The orbit category `A_F`: same objects as `A`, homs graded by powers of
//! `F`, with `A_F(X, Y)` in grade `n` equal to `A(F^n X, Y)`.
//!
//! Hom-sets are infinite; everything here is bounded by a grade.

use serde::Serialize;

use crate::cat::{Arrow, Enrichment, Functor, ObjId};
use crate::error::{Error, Result};
use crate::periodic::{detect_orbit, Orbit};

/// `(n, f)` with `f: F^n X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMorphism {
    pub grade: usize,
    pub src: ObjId,
    pub dst: ObjId,
    pub map: Arrow,
}

fn set_only(f: &Functor) -> Result<()> {
    if !f.is_endo() {
        return Err(Error::Precondition("F must be an endofunctor".into()));
    }
    if f.src.enrichment() != Enrichment::Set {
        return Err(Error::Unsupported("orbit categories are built for Set-enriched categories only".into()));
    }
    Ok(())
}

impl GradedMorphism {
    pub fn new(f: &Functor, grade: usize, src: ObjId, dst: ObjId, map: Arrow) -> Result<Self> {
        if map.src != f.obj_power(src, grade) || map.dst != dst {
            return Err(Error::TypeMismatch(format!("a grade {grade} morphism needs source F^{grade} of its domain")));
        }
        f.src.check_arrow(&map)?;
        Ok(Self { grade, src, dst, map })
    }

    pub fn identity(f: &Functor, x: ObjId) -> Self {
        Self { grade: 0, src: x, dst: x, map: f.src.identity(x) }
    }
}

/// The grades `0..=max_grade` of `A_F(X, Y)` with the periodicity of the
/// orbit of `X`.
#[derive(Clone, Debug)]
pub struct OrbitHom {
    pub grades: Vec<Vec<GradedMorphism>>,
    pub orbit: Orbit,
}

impl OrbitHom {
    /// Grade `n` has the same carrier as grade `n + period` once `n` is past
    /// the preperiod.
    pub fn repeats(&self, n: usize) -> bool {
        n >= self.orbit.preperiod
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.grades.iter().map(Vec::len).collect()
    }
}

pub fn orbit_hom(f: &Functor, x: ObjId, y: ObjId, max_grade: usize) -> Result<OrbitHom> {
    set_only(f)?;
    let cat = &f.src;
    let grades = (0..=max_grade)
        .map(|n| {
            let a = f.obj_power(x, n);
            cat.hom_arrows(a, y).into_iter().map(|map| GradedMorphism { grade: n, src: x, dst: y, map }).collect()
        })
        .collect();
    Ok(OrbitHom { grades, orbit: detect_orbit(f, x) })
}

/// `(j, g) o (i, f) = (i + j, g o F^j f)`.
pub fn orbit_compose(f: &Functor, g: &GradedMorphism, h: &GradedMorphism) -> Result<GradedMorphism> {
    if h.dst != g.src {
        return Err(Error::TypeMismatch("graded morphisms are not composable".into()));
    }
    let lifted = f.apply_power(&h.map, g.grade)?;
    Ok(GradedMorphism { grade: h.grade + g.grade, src: h.src, dst: g.dst, map: f.src.compose(&g.map, &lifted)? })
}

/// `F(n, f) = (n, F f)`.
pub fn orbit_apply(f: &Functor, m: &GradedMorphism) -> Result<GradedMorphism> {
    Ok(GradedMorphism { grade: m.grade, src: f.obj(m.src), dst: f.obj(m.dst), map: f.apply(&m.map)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    /// Grades checked: at least one full period past the preperiod of every orbit.
    pub checked_grades: usize,
    pub natural: bool,
    pub well_pointed: bool,
    pub functor: bool,
}

impl OrbitCertificate {
    pub fn passes(&self) -> bool {
        self.natural && self.well_pointed && self.functor
    }
}

#[derive(Clone, Debug)]
pub struct OrbitWellPointing {
    /// `θ_X = (1, id_{FX})`.
    pub theta: Vec<GradedMorphism>,
    pub certificate: OrbitCertificate,
}

/// The grade bound past which every hom family repeats.
pub fn closing_grade(f: &Functor) -> usize {
    f.src.objects().map(|x| {
        let o = detect_orbit(f, x);
        o.preperiod + o.period
    }).max().unwrap_or(0)
}

pub fn orbit_well_pointing(f: &Functor, max_grade: usize) -> Result<OrbitWellPointing> {
    set_only(f)?;
    let cat = &f.src;
    let theta: Vec<GradedMorphism> =
        cat.objects().map(|x| GradedMorphism { grade: 1, src: x, dst: f.obj(x), map: cat.identity(f.obj(x)) }).collect();
    let bound = max_grade.max(closing_grade(f));
    let mut natural = true;
    let mut functor = true;
    for x in cat.objects() {
        for y in cat.objects() {
            for m in orbit_hom(f, x, y, bound)?.grades.into_iter().flatten() {
                let lhs = orbit_compose(f, &theta[y], &m)?;
                let fm = orbit_apply(f, &m)?;
                let rhs = orbit_compose(f, &fm, &theta[x])?;
                natural &= lhs == rhs;
                for z in cat.objects() {
                    for n in orbit_hom(f, y, z, 1)?.grades.into_iter().flatten() {
                        let composite = orbit_apply(f, &orbit_compose(f, &n, &m)?)?;
                        functor &= composite == orbit_compose(f, &orbit_apply(f, &n)?, &fm)?;
                    }
                }
            }
        }
        let id = GradedMorphism::identity(f, x);
        functor &= orbit_apply(f, &id)? == GradedMorphism::identity(f, f.obj(x));
    }
    let well_pointed = cat.objects().all(|x| {
        orbit_apply(f, &theta[x]).map(|t| t == theta[f.obj(x)]).unwrap_or(false)
    });
    Ok(OrbitWellPointing { theta, certificate: OrbitCertificate { checked_grades: bound, natural, well_pointed, functor } })
}
