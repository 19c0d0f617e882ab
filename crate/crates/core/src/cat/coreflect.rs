//! Coreflective full subcategories: a counit `κ_x: Rx -> x` with `Rx` in the
//! subcategory, universal among maps out of it.

use std::sync::Arc;

use super::category::{Arrow, Elem, Enrichment, FiniteCategory, ObjId};
use super::functor::Functor;
use crate::error::Result;
use crate::ind::{arrow, hom_carrier, postcompose};
use crate::periodic::Map;

pub(crate) fn is_bijective(map: &Map) -> bool {
    match map {
        Map::Fun { dst_size, images } => {
            let mut seen = vec![false; *dst_size];
            images.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) && seen.iter().all(|&s| s)
        }
        Map::Lin(m) => m.rows() == m.cols() && m.rank() == m.rows(),
    }
}

/// Some `g: a -> κ.src` with `κ o g = target`.
pub fn solve_through(cat: &FiniteCategory, kappa: &Arrow, a: ObjId, target: &Arrow) -> Result<Option<Arrow>> {
    let map = postcompose(cat, a, kappa)?;
    let found = match (&map, &target.value) {
        (Map::Fun { images, .. }, Elem::Point(t)) => images.iter().position(|i| i == t).map(Elem::Point),
        (Map::Lin(m), Elem::Vector(v)) => {
            if m.cols() == 0 {
                crate::linalg::is_zero_vec(v).then(|| Elem::Vector(Vec::new()))
            } else if m.rows() == 0 {
                Some(Elem::Vector(vec![crate::linalg::Q::from_integer(0.into()); m.cols()]))
            } else {
                m.solve(v).map(Elem::Vector)
            }
        }
        _ => None,
    };
    Ok(found.map(|value| arrow(a, kappa.src, value)))
}

/// Whether `κ o -: C(t, κ.src) -> C(t, κ.dst)` is bijective for every `t` in `sub`.
pub fn is_universal(cat: &FiniteCategory, sub: &[ObjId], kappa: &Arrow) -> Result<bool> {
    for &t in sub {
        if !is_bijective(&postcompose(cat, t, kappa)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn counit_candidates(cat: &FiniteCategory, s: ObjId, x: ObjId) -> Vec<Arrow> {
    let mut out = Vec::new();
    if s == x {
        out.push(cat.identity(s));
    }
    let basis = cat.hom_arrows(s, x);
    if cat.enrichment() == Enrichment::Vect && basis.len() > 1 {
        let n = hom_carrier(cat, s, x).size();
        out.push(arrow(s, x, Elem::Vector(vec![crate::linalg::Q::from_integer(1.into()); n])));
    }
    out.extend(basis);
    out
}

#[derive(Clone, Debug)]
pub struct Coreflection {
    /// `I R` as an endofunctor of the ambient category.
    pub functor: Functor,
    pub counit: Vec<Arrow>,
    /// `ν_t: t -> R t` for `t` in the subcategory.
    pub unit: Vec<(ObjId, Arrow)>,
    pub triangle_identities: bool,
}

/// Searches for a coreflection onto the full subcategory `sub`, trying the
/// objects of `preferred(x)` first.
///
/// In linear mode counit candidates are basis morphisms and their sum.
pub fn find_coreflection(
    cat: &Arc<FiniteCategory>,
    sub: &[ObjId],
    preferred: &dyn Fn(ObjId) -> Vec<ObjId>,
) -> Result<Option<Coreflection>> {
    let mut counit = Vec::with_capacity(cat.object_count());
    for x in cat.objects() {
        let mut order = preferred(x);
        let rest: Vec<ObjId> = sub.iter().copied().filter(|s| !order.contains(s)).collect();
        order.extend(rest);
        let mut found = None;
        'search: for s in order {
            for k in counit_candidates(cat, s, x) {
                if is_universal(cat, sub, &k)? {
                    found = Some(k);
                    break 'search;
                }
            }
        }
        match found {
            Some(k) => counit.push(k),
            None => return Ok(None),
        }
    }
    let on_objects: Vec<ObjId> = counit.iter().map(|k| k.src).collect();
    let mut on_morphisms = Vec::with_capacity(cat.morphism_count());
    for m in 0..cat.morphism_count() {
        let f = cat.basis_arrow(m);
        let target = cat.compose(&f, &counit[f.src])?;
        match solve_through(cat, &counit[f.dst], on_objects[f.src], &target)? {
            Some(g) => on_morphisms.push(g),
            None => return Ok(None),
        }
    }
    let functor = Functor { src: cat.clone(), dst: cat.clone(), on_objects, on_morphisms };
    let mut unit = Vec::with_capacity(sub.len());
    let mut triangle_identities = functor.validate().is_valid();
    for &t in sub {
        match solve_through(cat, &counit[t], t, &cat.identity(t))? {
            Some(nu) => unit.push((t, nu)),
            None => return Ok(None),
        }
    }
    for x in cat.objects() {
        let rx = functor.obj(x);
        let Some((_, nu)) = unit.iter().find(|(t, _)| *t == rx) else {
            triangle_identities = false;
            continue;
        };
        let lhs = cat.compose(&functor.apply(&counit[x])?, nu)?;
        if lhs != cat.identity(rx) {
            triangle_identities = false;
        }
    }
    for (t, nu) in &unit {
        if cat.compose(&counit[*t], nu)? != cat.identity(*t) {
            triangle_identities = false;
        }
    }
    Ok(Some(Coreflection { functor, counit, unit, triangle_identities }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::chain3;

    #[test]
    fn bottom_of_a_chain_is_coreflective() {
        let c = Arc::new(chain3());
        let r = find_coreflection(&c, &[0], &|_| vec![]).unwrap().unwrap();
        assert!(r.triangle_identities);
        assert_eq!(r.functor.on_objects, vec![0, 0, 0]);
    }

    #[test]
    fn top_of_a_chain_is_not() {
        let c = Arc::new(chain3());
        assert!(find_coreflection(&c, &[2], &|_| vec![]).unwrap().is_none());
    }
}
