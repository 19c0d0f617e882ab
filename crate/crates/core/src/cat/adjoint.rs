//! Left adjoints of endofunctors by universal-arrow search.
//!
//! For each object `x` we look for a pair `(s, u: x -> Ω s)` such that
//! `h |-> Ω(h) o u` is a bijection `hom(s, t) -> hom(x, Ω t)` for every `t`.
//! In linear mode bijectivity is a rank test and `u` ranges over the hom basis.

use std::sync::Arc;

use serde::Serialize;

use super::category::{Arrow, Elem, Enrichment, FiniteCategory, ObjId};
use super::functor::Functor;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};

#[derive(Clone, Debug)]
pub struct Adjunction {
    /// The left adjoint.
    pub sigma: Functor,
    /// `x -> Ω Σ x`.
    pub unit: Vec<Arrow>,
    /// `Σ Ω s -> s`.
    pub counit: Vec<Arrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub left_triangle_failures: Vec<String>,
    pub right_triangle_failures: Vec<String>,
    pub functor_valid: bool,
}

impl TriangleReport {
    pub fn passes(&self) -> bool {
        self.functor_valid && self.left_triangle_failures.is_empty() && self.right_triangle_failures.is_empty()
    }
}

/// The transposition map `hom(s, t) -> hom(x, Ω t)`, `h |-> Ω h o u`.
fn transposes(cat: &FiniteCategory, omega: &Functor, u: &Arrow, s: ObjId, t: ObjId) -> Result<Vec<Arrow>> {
    cat.hom_arrows(s, t).iter().map(|h| cat.compose(&omega.apply(h)?, u)).collect()
}

fn is_bijective(cat: &FiniteCategory, omega: &Functor, u: &Arrow, s: ObjId, t: ObjId) -> Result<bool> {
    let x = u.src;
    let images = transposes(cat, omega, u, s, t)?;
    let target = cat.hom_size(x, omega.obj(t));
    Ok(match cat.enrichment() {
        Enrichment::Set => {
            let set: std::collections::HashSet<&Arrow> = images.iter().collect();
            set.len() == images.len() && images.len() == target
        }
        Enrichment::Vect => {
            if images.len() != target {
                false
            } else if target == 0 {
                true
            } else {
                let cols: Vec<Vec<Q>> = images.iter().map(|a| a.value.vector().expect("linear").to_vec()).collect();
                Matrix::from_columns(target, &cols).rank() == target
            }
        }
    })
}

/// Solves `Ω(h) o u = v` for `h: s -> t`, assuming the transposition map is
/// bijective.
fn transpose_back(cat: &FiniteCategory, omega: &Functor, u: &Arrow, s: ObjId, t: ObjId, v: &Arrow) -> Result<Arrow> {
    let basis = cat.hom_arrows(s, t);
    let images = transposes(cat, omega, u, s, t)?;
    match cat.enrichment() {
        Enrichment::Set => basis
            .into_iter()
            .zip(images)
            .find(|(_, img)| img == v)
            .map(|(h, _)| h)
            .ok_or_else(|| Error::Precondition("no transpose".into())),
        Enrichment::Vect => {
            let rows = cat.hom_size(u.src, omega.obj(t));
            let cols: Vec<Vec<Q>> = images.iter().map(|a| a.value.vector().expect("linear").to_vec()).collect();
            let x = if cols.is_empty() {
                Vec::new()
            } else {
                Matrix::from_columns(rows, &cols)
                    .solve(v.value.vector().expect("linear"))
                    .ok_or_else(|| Error::Precondition("no transpose".into()))?
            };
            Ok(Arrow { src: s, dst: t, value: Elem::Vector(x) })
        }
    }
}

/// Finds a left adjoint of `omega`, or `None` if some object has no
/// universal arrow to it.
pub fn find_left_adjoint(omega: &Functor) -> Result<Option<Adjunction>> {
    let cat = omega.src.clone();
    let mut sigma_obj = Vec::new();
    let mut unit = Vec::new();
    for x in cat.objects() {
        let mut found = None;
        'search: for s in cat.objects() {
            for u in cat.hom_arrows(x, omega.obj(s)) {
                let mut ok = true;
                for t in cat.objects() {
                    if !is_bijective(&cat, omega, &u, s, t)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    found = Some((s, u));
                    break 'search;
                }
            }
        }
        match found {
            Some((s, u)) => {
                sigma_obj.push(s);
                unit.push(u);
            }
            None => return Ok(None),
        }
    }
    let mut on_morphisms = Vec::with_capacity(cat.morphism_count());
    for m in 0..cat.morphism_count() {
        let f = cat.basis_arrow(m);
        let v = cat.compose(&unit[f.dst], &f)?;
        on_morphisms.push(transpose_back(&cat, omega, &unit[f.src], sigma_obj[f.src], sigma_obj[f.dst], &v)?);
    }
    let sigma = Functor { src: cat.clone(), dst: cat.clone(), on_objects: sigma_obj, on_morphisms };
    let mut counit = Vec::with_capacity(cat.object_count());
    for s in cat.objects() {
        let os = omega.obj(s);
        counit.push(transpose_back(&cat, omega, &unit[os], sigma.obj(os), s, &cat.identity(os))?);
    }
    Ok(Some(Adjunction { sigma, unit, counit }))
}

impl Adjunction {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.sigma.src
    }

    /// Verifies both triangle identities and functoriality of Σ.
    pub fn verify(&self, omega: &Functor) -> TriangleReport {
        let cat = self.category();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for x in cat.objects() {
            // ε_{Σx} o Σ(η_x) = id_{Σx}
            let sx = self.sigma.obj(x);
            let ok = self
                .sigma
                .apply(&self.unit[x])
                .and_then(|s_eta| cat.compose(&self.counit[sx], &s_eta))
                .map(|c| c == cat.identity(sx))
                .unwrap_or(false);
            if !ok {
                left.push(cat.object_name(x).to_string());
            }
        }
        for s in cat.objects() {
            // Ω(ε_s) o η_{Ωs} = id_{Ωs}
            let os = omega.obj(s);
            let ok = omega
                .apply(&self.counit[s])
                .and_then(|o_eps| cat.compose(&o_eps, &self.unit[os]))
                .map(|c| c == cat.identity(os))
                .unwrap_or(false);
            if !ok {
                right.push(cat.object_name(s).to_string());
            }
        }
        TriangleReport {
            left_triangle_failures: left,
            right_triangle_failures: right,
            functor_valid: self.sigma.validate().is_valid(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::*;

    fn galois_left_adjoint(omega: &[usize]) -> Option<Vec<usize>> {
        // Σx = least y with x <= Ωy, and it must satisfy Σx <= y <=> x <= Ωy
        let n = omega.len();
        (0..n)
            .map(|x| {
                let s = (0..n).find(|&y| x <= omega[y])?;
                (0..n).all(|y| (s <= y) == (x <= omega[y])).then_some(s)
            })
            .collect()
    }

    #[test]
    fn chain3_shift_has_left_adjoint() {
        let c = Arc::new(chain3());
        let omega = monotone_functor(&c, &[1, 2, 2]).unwrap();
        let adj = find_left_adjoint(&omega).unwrap().unwrap();
        assert_eq!(adj.sigma.on_objects, vec![0, 0, 1]);
        assert_eq!(galois_left_adjoint(&[1, 2, 2]), Some(vec![0, 0, 1]));
        assert!(adj.verify(&omega).passes());
    }

    #[test]
    fn identity_is_self_adjoint() {
        let c = Arc::new(chain3());
        let adj = find_left_adjoint(&Functor::identity(&c)).unwrap().unwrap();
        assert_eq!(adj.sigma, Functor::identity(&c));
    }

    #[test]
    fn constant_at_non_terminal_has_no_left_adjoint() {
        let c = Arc::new(chain3());
        let omega = monotone_functor(&c, &[1, 1, 1]).unwrap();
        assert!(find_left_adjoint(&omega).unwrap().is_none());
        assert_eq!(galois_left_adjoint(&[1, 1, 1]), None);
    }

    #[test]
    fn agrees_with_galois_criterion_on_all_monotone_maps() {
        let c = Arc::new(chain3());
        for a in 0..3 {
            for b in a..3 {
                for d in b..3 {
                    let map = [a, b, d];
                    let omega = monotone_functor(&c, &map).unwrap();
                    let found = find_left_adjoint(&omega).unwrap();
                    assert_eq!(found.as_ref().map(|adj| adj.sigma.on_objects.clone()), galois_left_adjoint(&map));
                    if let Some(adj) = found {
                        assert!(adj.verify(&omega).passes());
                    }
                }
            }
        }
    }
}
