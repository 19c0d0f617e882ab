//! Constructors for the small categories used throughout: posets, monoids,
//! discrete and terminal categories, and linearisation of set-enriched ones.

use std::sync::Arc;

use super::category::{CategoryBuilder, Elem, Enrichment, FiniteCategory, ObjId};
use super::functor::Functor;
use crate::error::{Error, Result};
use crate::linalg::{unit, Q};

/// Label of the identity on object `name`.
pub fn id_label(name: &str) -> String {
    format!("id_{name}")
}

/// The poset category on `elements` with `leq(i, j)` giving `i <= j`.
/// The relation must be a preorder; arrows are labelled `a_b`.
pub fn preorder(name: &str, elements: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<FiniteCategory> {
    let n = elements.len();
    let mut b = CategoryBuilder::new(name, Enrichment::Set);
    for e in elements {
        b.object(*e);
    }
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                arrow[i][j] = Some(if i == j {
                    b.identity(id_label(elements[i]), i)
                } else {
                    b.morphism(format!("{}_{}", elements[i], elements[j]), i, j)
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                    let h = arrow[i][k].ok_or_else(|| Error::Malformed("relation is not transitive".into()))?;
                    b.compose_to(g, f, h)?;
                }
            }
        }
    }
    b.build()
}

/// The total order `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&format!("chain{n}"), &refs, |i, j| i <= j).expect("chain is a poset")
}

pub fn chain3() -> FiniteCategory {
    chain(3)
}

/// One-object category from a multiplication table `mul[a][b] = a * b`
/// (composite `a o b`). Element `unit` is the identity.
pub fn monoid(name: &str, elements: &[&str], unit_elem: usize, mul: &[Vec<usize>]) -> Result<FiniteCategory> {
    let mut b = CategoryBuilder::new(name, Enrichment::Set);
    let o = b.object("*");
    let ids: Vec<usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| if i == unit_elem { b.identity(*e, o) } else { b.morphism(*e, o, o) })
        .collect();
    for a in 0..elements.len() {
        for c in 0..elements.len() {
            b.compose_to(ids[a], ids[c], ids[mul[a][c]])?;
        }
    }
    b.build()
}

/// `M = {1, e}` with `e * e = e`.
pub fn idempotent_monoid() -> FiniteCategory {
    monoid("M", &["1", "e"], 0, &[vec![0, 1], vec![1, 1]]).expect("idempotent monoid")
}

pub fn discrete(names: &[&str]) -> FiniteCategory {
    let mut b = CategoryBuilder::new("discrete", Enrichment::Set);
    for n in names {
        let o = b.object(*n);
        b.identity(id_label(n), o);
    }
    b.fill_identity_composites().expect("identities compose");
    b.build().expect("discrete category")
}

pub fn terminal() -> FiniteCategory {
    discrete(&["pt"]).with_name("terminal")
}

/// The free linear category on a set-enriched one: same objects, hom-spaces
/// with the old hom-sets as bases, composition extended bilinearly.
pub fn linearise(cat: &FiniteCategory) -> Result<FiniteCategory> {
    if cat.enrichment() != Enrichment::Set {
        return Err(Error::EnrichmentMismatch("linearise expects a set-enriched category".into()));
    }
    let mut b = CategoryBuilder::new(format!("k[{}]", cat.name()), Enrichment::Vect);
    for o in cat.objects() {
        b.object(cat.object_name(o));
    }
    for m in 0..cat.morphism_count() {
        let d = cat.morphism(m);
        if cat.identity_id(d.src) == m {
            b.identity(d.label.clone(), d.src);
        } else {
            b.morphism(d.label.clone(), d.src, d.dst);
        }
    }
    for f in 0..cat.morphism_count() {
        for g in 0..cat.morphism_count() {
            if let Some(Elem::Point(k)) = cat.table_entry(g, f) {
                let h = cat.hom(cat.morphism(f).src, cat.morphism(g).dst)[*k];
                b.compose_linear(g, f, &[(Q::from_integer(1.into()), h)])?;
            }
        }
    }
    b.build()
}

/// The one-object linear category whose endomorphism space is the ground
/// field, spanned by the identity.
pub fn scalar_line() -> FiniteCategory {
    let mut b = CategoryBuilder::new("line", Enrichment::Vect);
    let o = b.object("x");
    b.identity("id_x", o);
    b.fill_identity_composites().expect("identity composes");
    b.build().expect("line category")
}

/// The one-object linear category with basis `{1, e}`, `e * e = e`.
pub fn idempotent_algebra() -> FiniteCategory {
    linearise(&idempotent_monoid()).expect("linearisable").with_name("k[M]")
}

/// The functor on a preorder induced by a monotone object map.
pub fn monotone_functor(cat: &Arc<FiniteCategory>, map: &[ObjId]) -> Result<Functor> {
    let mut on_morphisms = Vec::with_capacity(cat.morphism_count());
    for m in 0..cat.morphism_count() {
        let d = cat.morphism(m);
        let (a, b) = (map[d.src], map[d.dst]);
        let hom = cat.hom(a, b);
        if hom.len() != 1 {
            return Err(Error::Precondition(format!(
                "map is not monotone: no unique arrow {} -> {}",
                cat.object_name(a),
                cat.object_name(b)
            )));
        }
        on_morphisms.push(cat.basis_arrow(hom[0]));
    }
    Ok(Functor { src: cat.clone(), dst: cat.clone(), on_objects: map.to_vec(), on_morphisms })
}

/// The unique arrow `a -> b` in a thin category.
pub fn unique_arrow(cat: &FiniteCategory, a: ObjId, b: ObjId) -> Result<super::category::Arrow> {
    match cat.hom(a, b) {
        [m] => Ok(cat.basis_arrow(*m)),
        _ => Err(Error::Precondition(format!(
            "no unique arrow {} -> {}",
            cat.object_name(a),
            cat.object_name(b)
        ))),
    }
}

pub fn scalar(cat: &FiniteCategory, m: super::category::MorId, c: Q) -> super::category::Arrow {
    let mut f = cat.basis_arrow(m);
    if let Elem::Vector(v) = &mut f.value {
        let pos = v.iter().position(|x| *x != Q::from_integer(0.into())).expect("basis vector");
        *v = unit(v.len(), pos).into_iter().map(|x| x * &c).collect();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain3_is_valid() {
        let c = chain3();
        assert!(c.validate().is_valid());
        assert_eq!(c.morphism_count(), 6);
    }

    #[test]
    fn idempotent_monoid_is_valid() {
        assert!(idempotent_monoid().validate().is_valid());
        assert!(idempotent_algebra().validate().is_valid());
        assert!(scalar_line().validate().is_valid());
    }

    #[test]
    fn planted_associativity_failure_is_named() {
        // a*b table that is not associative: x*x = 1, otherwise x.
        let bad = monoid("bad", &["1", "x", "y"], 0, &[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 1]]).unwrap();
        let report = bad.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, super::super::category::Violation::Associativity { .. })));
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = chain3();
        let op = c.opposite();
        assert_eq!(op.hom_size(2, 0), 1);
        assert_eq!(op.hom_size(0, 2), 0);
        assert!(op.validate().is_valid());
        assert_eq!(op.opposite(), c);
    }
}
