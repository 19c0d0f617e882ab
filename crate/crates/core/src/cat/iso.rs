//! Invertibility, isomorphism search, natural isomorphisms and equivalence
//! checking.
//!
//! In set mode every search is exhaustive. In linear mode, inverting a given
//! morphism is an exact linear solve, while searching for *some* isomorphism
//! between two objects scans the hom basis (with scalar multiples being
//! irrelevant for invertibility); that is complete for linearisations of
//! set-enriched categories and for the one-object examples shipped here.

use serde::Serialize;

use super::category::{Arrow, CategoryBuilder, Elem, Enrichment, FiniteCategory, ObjId};
use super::functor::Functor;
use crate::linalg::{unit, Matrix, Q};

fn coords(f: &Arrow) -> &[Q] {
    f.value.vector().expect("linear arrow")
}

/// Two-sided inverse of `f`, if one exists.
pub fn inverse(cat: &FiniteCategory, f: &Arrow) -> Option<Arrow> {
    let (a, b) = (f.src, f.dst);
    let id_a = cat.identity(a);
    let id_b = cat.identity(b);
    match cat.enrichment() {
        Enrichment::Set => cat.hom_arrows(b, a).into_iter().find(|g| {
            cat.compose(g, f).ok().as_ref() == Some(&id_a) && cat.compose(f, g).ok().as_ref() == Some(&id_b)
        }),
        Enrichment::Vect => {
            let basis = cat.hom_arrows(b, a);
            if basis.is_empty() {
                return None;
            }
            let (na, nb) = (cat.hom_size(a, a), cat.hom_size(b, b));
            let mut m = Matrix::zeros(na + nb, basis.len());
            for (j, g) in basis.iter().enumerate() {
                let left = cat.compose(g, f).ok()?;
                let right = cat.compose(f, g).ok()?;
                for (i, x) in coords(&left).iter().enumerate() {
                    m[(i, j)] = x.clone();
                }
                for (i, x) in coords(&right).iter().enumerate() {
                    m[(na + i, j)] = x.clone();
                }
            }
            let rhs: Vec<Q> = coords(&id_a).iter().chain(coords(&id_b)).cloned().collect();
            let x = m.solve(&rhs)?;
            Some(Arrow { src: b, dst: a, value: Elem::Vector(x) })
        }
    }
}

pub fn is_iso(cat: &FiniteCategory, f: &Arrow) -> bool {
    inverse(cat, f).is_some()
}

/// Candidate isomorphisms `a -> b` in a fixed search order.
pub fn isos(cat: &FiniteCategory, a: ObjId, b: ObjId) -> Vec<Arrow> {
    cat.hom_arrows(a, b).into_iter().filter(|f| is_iso(cat, f)).collect()
}

pub fn find_iso(cat: &FiniteCategory, a: ObjId, b: ObjId) -> Option<Arrow> {
    if a == b {
        return Some(cat.identity(a));
    }
    cat.hom_arrows(a, b).into_iter().find(|f| is_iso(cat, f))
}

pub fn are_isomorphic(cat: &FiniteCategory, a: ObjId, b: ObjId) -> bool {
    find_iso(cat, a, b).is_some()
}

/// Searches for a natural isomorphism `f => g` between parallel functors.
pub fn find_nat_iso(f: &Functor, g: &Functor) -> Option<Vec<Arrow>> {
    if f.dst.enrichment() == Enrichment::Vect {
        return find_nat_iso_linear(f, g);
    }
    let src = &f.src;
    let dst = &f.dst;
    let n = src.object_count();
    let candidates: Vec<Vec<Arrow>> = (0..n)
        .map(|o| {
            let (a, b) = (f.obj(o), g.obj(o));
            let mut c = isos(dst, a, b);
            if a == b {
                let id = dst.identity(a);
                c.retain(|x| *x != id);
                c.insert(0, id);
            }
            c
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut chosen: Vec<Arrow> = Vec::with_capacity(n);
    fn natural_so_far(f: &Functor, g: &Functor, chosen: &[Arrow]) -> bool {
        let k = chosen.len() - 1;
        let src = &f.src;
        let dst = &f.dst;
        (0..src.morphism_count()).all(|m| {
            let d = src.morphism(m);
            if !((d.src == k && d.dst <= k) || (d.dst == k && d.src <= k)) {
                return true;
            }
            let arrow = src.basis_arrow(m);
            let lhs = g.apply(&arrow).and_then(|gm| dst.compose(&gm, &chosen[d.src]));
            let rhs = f.apply(&arrow).and_then(|fm| dst.compose(&chosen[d.dst], &fm));
            matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
        })
    }
    fn go(f: &Functor, g: &Functor, cands: &[Vec<Arrow>], chosen: &mut Vec<Arrow>) -> bool {
        if chosen.len() == cands.len() {
            return true;
        }
        for c in &cands[chosen.len()] {
            chosen.push(c.clone());
            if natural_so_far(f, g, chosen) && go(f, g, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(f, g, &candidates, &mut chosen).then_some(chosen)
}


/// Linear mode: natural transformations form the kernel of the naturality
/// equations; a few generic combinations of a kernel basis are tested for
/// invertibility.
fn find_nat_iso_linear(f: &Functor, g: &Functor) -> Option<Vec<Arrow>> {
    let (src, dst) = (&f.src, &f.dst);
    let offsets: Vec<usize> = src
        .objects()
        .scan(0, |acc, o| {
            let start = *acc;
            *acc += dst.hom_size(f.obj(o), g.obj(o));
            Some(start)
        })
        .collect();
    let unknowns: usize = src.objects().map(|o| dst.hom_size(f.obj(o), g.obj(o))).sum();
    let component = |o: ObjId, x: &[Q]| -> Arrow {
        let n = dst.hom_size(f.obj(o), g.obj(o));
        Arrow { src: f.obj(o), dst: g.obj(o), value: Elem::Vector(x[offsets[o]..offsets[o] + n].to_vec()) }
    };
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for m in 0..src.morphism_count() {
        let arrow = src.basis_arrow(m);
        let (a, b) = (arrow.src, arrow.dst);
        let (fm, gm) = (f.apply(&arrow).ok()?, g.apply(&arrow).ok()?);
        let width = dst.hom_size(f.obj(a), g.obj(b));
        let mut block = vec![vec![Q::from_integer(0.into()); unknowns]; width];
        for k in 0..unknowns {
            let x = unit(unknowns, k);
            let lhs = dst.compose(&gm, &component(a, &x)).ok()?;
            let rhs = dst.compose(&component(b, &x), &fm).ok()?;
            for (r, (l, h)) in coords(&lhs).iter().zip(coords(&rhs)).enumerate() {
                block[r][k] = l - h;
            }
        }
        rows.extend(block);
    }
    let kernel = if unknowns == 0 {
        Vec::new()
    } else if rows.is_empty() {
        (0..unknowns).map(|k| unit(unknowns, k)).collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let mut trials: Vec<Vec<Q>> = kernel.clone();
    for t in 0..6u32 {
        let mut v = vec![Q::from_integer(0.into()); unknowns];
        for (i, k) in kernel.iter().enumerate() {
            let c = Q::from_integer(((i + 1) as i64).pow(t).into());
            for (acc, x) in v.iter_mut().zip(k) {
                *acc += &c * x;
            }
        }
        trials.push(v);
    }
    if unknowns == 0 {
        trials.push(Vec::new());
    }
    trials.into_iter().find_map(|x| {
        let comps: Vec<Arrow> = src.objects().map(|o| component(o, &x)).collect();
        comps.iter().all(|c| is_iso(dst, c)).then_some(comps)
    })
}

pub fn naturally_isomorphic(f: &Functor, g: &Functor) -> bool {
    find_nat_iso(f, g).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceWitness {
    /// Every hom map is bijective (resp. a linear isomorphism) and every
    /// target object is isomorphic to the listed image.
    Certificate { preimages: Vec<(String, String)> },
    NotFaithful { src: String, dst: String, detail: String },
    NotFull { src: String, dst: String, detail: String },
    NotEssentiallySurjective { object: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub witness: EquivalenceWitness,
}

/// Decides whether `f` is fully faithful and essentially surjective.
pub fn check_equivalence(f: &Functor) -> EquivalenceReport {
    let src = &f.src;
    let dst = &f.dst;
    for a in src.objects() {
        for b in src.objects() {
            let (fa, fb) = (f.obj(a), f.obj(b));
            let names = || (src.object_name(a).to_string(), src.object_name(b).to_string());
            let images: Vec<Arrow> = src
                .hom_arrows(a, b)
                .iter()
                .map(|m| f.apply(m).expect("functor applies to its source"))
                .collect();
            match src.enrichment() {
                Enrichment::Set => {
                    let mut seen = std::collections::HashSet::new();
                    for (m, img) in src.hom_arrows(a, b).iter().zip(&images) {
                        if !seen.insert(img.clone()) {
                            let (s, d) = names();
                            return EquivalenceReport {
                                equivalent: false,
                                witness: EquivalenceWitness::NotFaithful {
                                    src: s,
                                    dst: d,
                                    detail: format!("{} collides with another morphism", src.describe(m)),
                                },
                            };
                        }
                    }
                    if seen.len() != dst.hom_size(fa, fb) {
                        let (s, d) = names();
                        return EquivalenceReport {
                            equivalent: false,
                            witness: EquivalenceWitness::NotFull {
                                src: s,
                                dst: d,
                                detail: format!("{} of {} target morphisms hit", seen.len(), dst.hom_size(fa, fb)),
                            },
                        };
                    }
                }
                Enrichment::Vect => {
                    let rows = dst.hom_size(fa, fb);
                    let cols: Vec<Vec<Q>> = images.iter().map(|x| coords(x).to_vec()).collect();
                    let rank = if cols.is_empty() { 0 } else { Matrix::from_columns(rows, &cols).rank() };
                    if rank < cols.len() {
                        let (s, d) = names();
                        return EquivalenceReport {
                            equivalent: false,
                            witness: EquivalenceWitness::NotFaithful { src: s, dst: d, detail: format!("rank {rank} < {}", cols.len()) },
                        };
                    }
                    if rank < rows {
                        let (s, d) = names();
                        return EquivalenceReport {
                            equivalent: false,
                            witness: EquivalenceWitness::NotFull { src: s, dst: d, detail: format!("rank {rank} < {rows}") },
                        };
                    }
                }
            }
        }
    }
    let mut preimages = Vec::new();
    for t in dst.objects() {
        match src.objects().find(|&s| are_isomorphic(dst, f.obj(s), t)) {
            Some(s) => preimages.push((dst.object_name(t).to_string(), src.object_name(s).to_string())),
            None => {
                return EquivalenceReport {
                    equivalent: false,
                    witness: EquivalenceWitness::NotEssentiallySurjective { object: dst.object_name(t).to_string() },
                }
            }
        }
    }
    EquivalenceReport { equivalent: true, witness: EquivalenceWitness::Certificate { preimages } }
}

/// The full subcategory on `objects` (in that order), with inclusion data.
pub fn full_subcategory(cat: &FiniteCategory, objects: &[ObjId], name: &str) -> FiniteCategory {
    let mut b = CategoryBuilder::new(name, cat.enrichment());
    for &o in objects {
        b.object(cat.object_name(o));
    }
    let mut new_id = std::collections::HashMap::new();
    for (i, &a) in objects.iter().enumerate() {
        for (j, &c) in objects.iter().enumerate() {
            for &m in cat.hom(a, c) {
                let label = cat.morphism(m).label.clone();
                let id = if m == cat.identity_id(a) { b.identity(label, i) } else { b.morphism(label, i, j) };
                new_id.insert(m, id);
            }
        }
    }
    for &a in objects {
        for &c in objects {
            for &d in objects {
                for &f in cat.hom(a, c) {
                    for &g in cat.hom(c, d) {
                        match cat.table_entry(g, f).expect("complete table") {
                            Elem::Point(k) => {
                                let h = cat.hom(a, d)[*k];
                                b.compose_to(new_id[&g], new_id[&f], new_id[&h]).expect("composable");
                            }
                            Elem::Vector(v) => {
                                let terms: Vec<(Q, usize)> = v
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, x)| **x != Q::from_integer(0.into()))
                                    .map(|(k, x)| (x.clone(), new_id[&cat.hom(a, d)[k]]))
                                    .collect();
                                b.compose_linear(new_id[&g], new_id[&f], &terms).expect("composable");
                            }
                        }
                    }
                }
            }
        }
    }
    b.build().expect("full subcategory of a valid category")
}

/// A skeleton: one representative per isomorphism class, chosen as the first
/// object in the class satisfying `prefer`, else the first object. Returns
/// the skeleton and, for each object, the index of its representative in it.
pub fn skeleton(cat: &FiniteCategory, prefer: impl Fn(ObjId) -> bool) -> (FiniteCategory, Vec<usize>) {
    let mut classes: Vec<Vec<ObjId>> = Vec::new();
    for o in cat.objects() {
        match classes.iter_mut().find(|c| are_isomorphic(cat, c[0], o)) {
            Some(c) => c.push(o),
            None => classes.push(vec![o]),
        }
    }
    let reps: Vec<ObjId> = classes
        .iter()
        .map(|c| c.iter().copied().find(|&o| prefer(o)).unwrap_or(c[0]))
        .collect();
    let mut class_of = vec![0; cat.object_count()];
    for (i, c) in classes.iter().enumerate() {
        for &o in c {
            class_of[o] = i;
        }
    }
    (full_subcategory(cat, &reps, &format!("sk({})", cat.name())), class_of)
}

/// Identity arrow as a coordinate vector in linear mode, for tests.
pub fn identity_vector(cat: &FiniteCategory, o: ObjId) -> Vec<Q> {
    let pos = cat.hom(o, o).iter().position(|&m| m == cat.identity_id(o)).expect("identity in hom");
    unit(cat.hom_size(o, o), pos)
}
