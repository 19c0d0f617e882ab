//! Building a finite category from hom carriers and a composition rule given
//! on carrier elements.
//!
//! In linear mode each endomorphism space gets a basis starting with the
//! identity; other hom spaces keep the standard basis of their carrier.

use super::category::{Arrow, CategoryBuilder, Elem, Enrichment, FiniteCategory, ObjId};
use crate::error::{Error, Result};
use crate::linalg::{unit, Matrix, Q};
use crate::periodic::Carrier;

#[derive(Debug)]
pub struct HomData {
    pub carrier: Carrier,
    /// Carrier-coordinates of each basis morphism, as columns.
    basis: Matrix,
    inverse: Matrix,
}

#[derive(Debug)]
pub struct Assembled {
    pub category: FiniteCategory,
    homs: Vec<Vec<HomData>>,
}

impl Assembled {
    pub fn carrier(&self, a: ObjId, b: ObjId) -> Carrier {
        self.homs[a][b].carrier
    }

    /// The arrow represented by a carrier element.
    pub fn to_arrow(&self, a: ObjId, b: ObjId, e: &Elem) -> Arrow {
        let value = match e {
            Elem::Point(i) => Elem::Point(*i),
            Elem::Vector(v) => Elem::Vector(self.homs[a][b].inverse.apply(v)),
        };
        Arrow { src: a, dst: b, value }
    }

    /// The carrier element of an arrow.
    pub fn to_carrier(&self, f: &Arrow) -> Elem {
        match &f.value {
            Elem::Point(i) => Elem::Point(*i),
            Elem::Vector(c) => Elem::Vector(self.homs[f.src][f.dst].basis.apply(c)),
        }
    }
}

/// The rule set for [`assemble`].
pub trait HomRule {
    fn carrier(&self, a: ObjId, b: ObjId) -> Carrier;
    fn identity(&self, a: ObjId) -> Elem;
    fn compose(&self, a: ObjId, b: ObjId, c: ObjId, g: &Elem, f: &Elem) -> Result<Elem>;
    fn label(&self, a: ObjId, b: ObjId, basis_element: &Elem) -> String;
}

fn greedy_basis(n: usize, first: Option<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut chosen: Vec<Vec<Q>> = first.into_iter().collect();
    for i in 0..n {
        if chosen.len() == n {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(unit(n, i));
        if Matrix::from_columns(n, &trial).rank() == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

pub fn assemble(name: &str, enrichment: Enrichment, objects: &[String], rule: &impl HomRule) -> Result<Assembled> {
    let n = objects.len();
    let mut b = CategoryBuilder::new(name, enrichment);
    for o in objects {
        b.object(o.clone());
    }
    let mut homs = Vec::with_capacity(n);
    let mut ids = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let carrier = rule.carrier(x, y);
            let size = carrier.size();
            let data = match enrichment {
                Enrichment::Set => {
                    let id = (x == y).then(|| rule.identity(x));
                    for e in carrier.elements() {
                        let label = rule.label(x, y, &e);
                        ids[x][y].push(if Some(&e) == id.as_ref() { b.identity(label, x) } else { b.morphism(label, x, y) });
                    }
                    HomData { carrier, basis: Matrix::zeros(0, 0), inverse: Matrix::zeros(0, 0) }
                }
                Enrichment::Vect => {
                    let first = if x == y {
                        let id = rule.identity(x).vector().expect("linear").to_vec();
                        if crate::linalg::is_zero_vec(&id) {
                            return Err(Error::Unsupported(format!(
                                "`{}` is a zero object; its identity is not a basis morphism",
                                objects[x]
                            )));
                        }
                        Some(id)
                    } else {
                        None
                    };
                    let cols = greedy_basis(size, first);
                    for (k, v) in cols.iter().enumerate() {
                        let label = rule.label(x, y, &Elem::Vector(v.clone()));
                        ids[x][y].push(if x == y && k == 0 { b.identity(label, x) } else { b.morphism(label, x, y) });
                    }
                    let basis = if size == 0 { Matrix::zeros(0, 0) } else { Matrix::from_columns(size, &cols) };
                    let inverse = if size == 0 { Matrix::zeros(0, 0) } else { basis.inverse().expect("basis") };
                    HomData { carrier, basis, inverse }
                }
            };
            row.push(data);
        }
        homs.push(row);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let fs = homs[x][y].carrier.elements();
                let gs = homs[y][z].carrier.elements();
                for (fi, f) in fs.iter().enumerate() {
                    let f = basis_elem(&homs[x][y], fi, f);
                    for (gi, g) in gs.iter().enumerate() {
                        let g = basis_elem(&homs[y][z], gi, g);
                        let h = rule.compose(x, y, z, &g, &f)?;
                        let (gm, fm) = (ids[y][z][gi], ids[x][y][fi]);
                        match h {
                            Elem::Point(k) => b.compose_to(gm, fm, ids[x][z][k])?,
                            Elem::Vector(v) => {
                                let c = homs[x][z].inverse.apply(&v);
                                let terms: Vec<(Q, usize)> = c
                                    .into_iter()
                                    .enumerate()
                                    .filter(|(_, q)| *q != Q::from_integer(0.into()))
                                    .map(|(k, q)| (q, ids[x][z][k]))
                                    .collect();
                                b.compose_linear(gm, fm, &terms)?
                            }
                        }
                    }
                }
            }
        }
    }
    let category = b.build()?;
    Ok(Assembled { category, homs })
}

fn basis_elem(h: &HomData, i: usize, standard: &Elem) -> Elem {
    match standard {
        Elem::Point(_) => standard.clone(),
        Elem::Vector(_) => Elem::Vector(h.basis.column(i)),
    }
}
