use std::sync::Arc;

use num::Zero;
use serde::Serialize;

use super::category::{Arrow, Elem, FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::linalg::{add_assign, scale, Q};

/// A functor between finite categories, given by its action on objects and
/// on basis morphisms. In linear mode the action extends linearly.
#[derive(Clone, Debug)]
pub struct Functor {
    pub src: Arc<FiniteCategory>,
    pub dst: Arc<FiniteCategory>,
    pub on_objects: Vec<ObjId>,
    pub on_morphisms: Vec<Arrow>,
}

/// An endofunctor is a functor whose source and target coincide.
pub type Endofunctor = Functor;

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.on_objects == other.on_objects && self.on_morphisms == other.on_morphisms
    }
}

impl Eq for Functor {}

impl std::hash::Hash for Functor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.on_objects.hash(state);
        self.on_morphisms.hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum FunctorViolation {
    WrongType { morphism: String, detail: String },
    Identity { object: String },
    Composition { g: String, f: String },
    Naturality { morphism: String },
    ComponentType { object: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Functor {
    pub fn identity(cat: &Arc<FiniteCategory>) -> Self {
        Self {
            src: cat.clone(),
            dst: cat.clone(),
            on_objects: cat.objects().collect(),
            on_morphisms: (0..cat.morphism_count()).map(|m| cat.basis_arrow(m)).collect(),
        }
    }

    /// Builds a functor from an object map and the images of basis morphisms
    /// given by label.
    pub fn from_labels(
        src: &Arc<FiniteCategory>,
        dst: &Arc<FiniteCategory>,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<Self> {
        let mut on_objects = vec![usize::MAX; src.object_count()];
        for (a, b) in objects {
            let a = src.object_id(a).ok_or_else(|| Error::UnknownObject(a.to_string()))?;
            let b = dst.object_id(b).ok_or_else(|| Error::UnknownObject(b.to_string()))?;
            on_objects[a] = b;
        }
        if on_objects.contains(&usize::MAX) {
            return Err(Error::Malformed("object map is not total".into()));
        }
        let mut on_morphisms: Vec<Option<Arrow>> = vec![None; src.morphism_count()];
        for o in src.objects() {
            on_morphisms[src.identity_id(o)] = Some(dst.identity(on_objects[o]));
        }
        for (f, g) in morphisms {
            let f = src.morphism_id(f).ok_or_else(|| Error::UnknownMorphism(f.to_string()))?;
            let g = dst.morphism_id(g).ok_or_else(|| Error::UnknownMorphism(g.to_string()))?;
            on_morphisms[f] = Some(dst.basis_arrow(g));
        }
        let on_morphisms = on_morphisms
            .into_iter()
            .enumerate()
            .map(|(m, a)| a.ok_or_else(|| Error::Malformed(format!("no image for `{}`", src.morphism(m).label))))
            .collect::<Result<_>>()?;
        Ok(Self { src: src.clone(), dst: dst.clone(), on_objects, on_morphisms })
    }

    pub fn obj(&self, o: ObjId) -> ObjId {
        self.on_objects[o]
    }

    pub fn basis_image(&self, m: MorId) -> &Arrow {
        &self.on_morphisms[m]
    }

    pub fn apply(&self, f: &Arrow) -> Result<Arrow> {
        let hom = self.src.hom(f.src, f.dst);
        let (a, b) = (self.on_objects[f.src], self.on_objects[f.dst]);
        match &f.value {
            Elem::Point(i) => Ok(self.on_morphisms[hom[*i]].clone()),
            Elem::Vector(v) => {
                let mut acc = vec![Q::zero(); self.dst.hom_size(a, b)];
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let img = self.on_morphisms[hom[i]]
                        .value
                        .vector()
                        .ok_or_else(|| Error::EnrichmentMismatch("set image of a linear morphism".into()))?;
                    add_assign(&mut acc, &scale(img, c));
                }
                Ok(Arrow { src: a, dst: b, value: Elem::Vector(acc) })
            }
        }
    }

    /// `self o first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        let on_morphisms = first.on_morphisms.iter().map(|f| self.apply(f)).collect::<Result<_>>()?;
        Ok(Functor {
            src: first.src.clone(),
            dst: self.dst.clone(),
            on_objects: first.on_objects.iter().map(|&o| self.on_objects[o]).collect(),
            on_morphisms,
        })
    }

    /// `n`-fold power of an endofunctor.
    pub fn power(&self, n: usize) -> Result<Functor> {
        let mut acc = Functor::identity(&self.src);
        for _ in 0..n {
            acc = self.after(&acc)?;
        }
        Ok(acc)
    }

    pub fn obj_power(&self, o: ObjId, n: usize) -> ObjId {
        (0..n).fold(o, |x, _| self.on_objects[x])
    }

    pub fn apply_power(&self, f: &Arrow, n: usize) -> Result<Arrow> {
        let mut acc = f.clone();
        for _ in 0..n {
            acc = self.apply(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.src, &self.dst) || *self.src == *self.dst
    }

    /// Checks well-typedness, preservation of identities and of composition
    /// on every composable pair of basis morphisms.
    pub fn validate(&self) -> FunctorReport {
        let mut violations = Vec::new();
        let src = &self.src;
        let dst = &self.dst;
        if self.on_objects.len() != src.object_count()
            || self.on_morphisms.len() != src.morphism_count()
            || self.on_objects.iter().any(|&o| o >= dst.object_count())
        {
            violations.push(FunctorViolation::WrongType {
                morphism: String::new(),
                detail: "object or morphism map has the wrong size".into(),
            });
            return FunctorReport { violations };
        }
        for m in 0..src.morphism_count() {
            let d = src.morphism(m);
            let img = &self.on_morphisms[m];
            let expected = (self.on_objects[d.src], self.on_objects[d.dst]);
            if (img.src, img.dst) != expected || dst.check_arrow(img).is_err() {
                violations.push(FunctorViolation::WrongType {
                    morphism: d.label.clone(),
                    detail: format!(
                        "image {} is not in hom({}, {})",
                        dst.describe(img),
                        dst.object_name(expected.0),
                        dst.object_name(expected.1)
                    ),
                });
            }
        }
        if !violations.is_empty() {
            return FunctorReport { violations };
        }
        for o in src.objects() {
            if self.on_morphisms[src.identity_id(o)] != dst.identity(self.on_objects[o]) {
                violations.push(FunctorViolation::Identity { object: src.object_name(o).to_string() });
            }
        }
        for f in 0..src.morphism_count() {
            for g in 0..src.morphism_count() {
                if src.morphism(f).dst != src.morphism(g).src {
                    continue;
                }
                let (fa, ga) = (src.basis_arrow(f), src.basis_arrow(g));
                let lhs = src.compose(&ga, &fa).and_then(|gf| self.apply(&gf));
                let rhs = dst.compose(&self.on_morphisms[g], &self.on_morphisms[f]);
                if lhs.ok() != rhs.ok() {
                    violations.push(FunctorViolation::Composition {
                        g: src.morphism(g).label.clone(),
                        f: src.morphism(f).label.clone(),
                    });
                }
            }
        }
        FunctorReport { violations }
    }
}

/// A natural transformation `source => target` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<Arrow>,
}

impl NatTransformation {
    /// A pointing `id => omega` with the given components.
    pub fn pointing(omega: &Functor, components: Vec<Arrow>) -> Self {
        Self { source: Functor::identity(&omega.src), target: omega.clone(), components }
    }

    pub fn from_labels(source: Functor, target: Functor, components: &[(&str, &str)]) -> Result<Self> {
        let src = source.src.clone();
        let dst = source.dst.clone();
        let mut comps: Vec<Option<Arrow>> = vec![None; src.object_count()];
        for (o, m) in components {
            let o = src.object_id(o).ok_or_else(|| Error::UnknownObject(o.to_string()))?;
            let m = dst.morphism_id(m).ok_or_else(|| Error::UnknownMorphism(m.to_string()))?;
            comps[o] = Some(dst.basis_arrow(m));
        }
        let components = comps
            .into_iter()
            .enumerate()
            .map(|(o, c)| c.ok_or_else(|| Error::Malformed(format!("no component at `{}`", src.object_name(o)))))
            .collect::<Result<_>>()?;
        Ok(Self { source, target, components })
    }

    pub fn component(&self, o: ObjId) -> &Arrow {
        &self.components[o]
    }

    /// Checks component types and every naturality square on basis morphisms.
    pub fn validate(&self) -> FunctorReport {
        let mut violations = Vec::new();
        let src = &self.source.src;
        let dst = &self.source.dst;
        for o in src.objects() {
            let c = &self.components[o];
            if (c.src, c.dst) != (self.source.obj(o), self.target.obj(o)) || dst.check_arrow(c).is_err() {
                violations.push(FunctorViolation::ComponentType { object: src.object_name(o).to_string() });
            }
        }
        if !violations.is_empty() {
            return FunctorReport { violations };
        }
        for m in 0..src.morphism_count() {
            let f = src.basis_arrow(m);
            let lhs = self.target.apply(&f).and_then(|gf| dst.compose(&gf, &self.components[f.src]));
            let rhs = self.source.apply(&f).and_then(|ff| dst.compose(&self.components[f.dst], &ff));
            if lhs.ok() != rhs.ok() {
                violations.push(FunctorViolation::Naturality { morphism: src.morphism(m).label.clone() });
            }
        }
        FunctorReport { violations }
    }
}
