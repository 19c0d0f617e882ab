//! Sequential ind-objects over a finite category.
//!
//! `ind_hom(X, Y) = lim_i colim_j C(X_i, Y_j)`: each row `colim_j` is a
//! sequential colimit along postcomposition with the transitions of `Y`, and
//! the rows form a tower along precomposition with the transitions of `X`.

use std::sync::Arc;

use crate::cat::assemble::{assemble, Assembled, HomRule};
use crate::cat::{Arrow, Elem, Enrichment, FiniteCategory, Functor, ObjId};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::periodic::{sequential_colimit, sequential_limit, Carrier, Direction, EpSequence, Map, SeqColimit, SeqLimit};

pub fn hom_carrier(cat: &FiniteCategory, a: ObjId, b: ObjId) -> Carrier {
    match cat.enrichment() {
        Enrichment::Set => Carrier::Set(cat.hom_size(a, b)),
        Enrichment::Vect => Carrier::Vect(cat.hom_size(a, b)),
    }
}

pub fn arrow(a: ObjId, b: ObjId, value: Elem) -> Arrow {
    Arrow { src: a, dst: b, value }
}

/// `C(a, b) -> C(a, c)`, `h |-> g o h`.
pub fn postcompose(cat: &FiniteCategory, a: ObjId, g: &Arrow) -> Result<Map> {
    Map::tabulate(hom_carrier(cat, a, g.src), hom_carrier(cat, a, g.dst), |h| {
        Ok(cat.compose(g, &arrow(a, g.src, h.clone()))?.value)
    })
}

/// `C(b, c) -> C(a, c)`, `h |-> h o f`.
pub fn precompose(cat: &FiniteCategory, f: &Arrow, c: ObjId) -> Result<Map> {
    Map::tabulate(hom_carrier(cat, f.dst, c), hom_carrier(cat, f.src, c), |h| {
        Ok(cat.compose(&arrow(f.dst, c, h.clone()), f)?.value)
    })
}

/// An eventually periodic sequence `X_0 -> X_1 -> ...` in a finite category,
/// kept in its minimal presentation.
#[derive(Clone, Debug)]
pub struct IndObject {
    pub cat: Arc<FiniteCategory>,
    pub objects: Vec<ObjId>,
    /// `transitions[i]: objects[i] -> objects[next(i)]`.
    pub transitions: Vec<Arrow>,
    pub preperiod: usize,
}

impl PartialEq for IndObject {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.transitions == other.transitions && self.preperiod == other.preperiod
    }
}

impl Eq for IndObject {}

impl IndObject {
    pub fn new(cat: Arc<FiniteCategory>, objects: Vec<ObjId>, transitions: Vec<Arrow>, preperiod: usize) -> Result<Self> {
        if objects.is_empty() || preperiod >= objects.len() || transitions.len() != objects.len() {
            return Err(Error::Malformed("ind-object needs one transition per stage and a period of at least 1".into()));
        }
        let x = Self { cat, objects, transitions, preperiod };
        for i in 0..x.objects.len() {
            let t = &x.transitions[i];
            x.cat.check_arrow(t)?;
            if t.src != x.objects[i] || t.dst != x.objects[x.next(i)] {
                return Err(Error::TypeMismatch(format!("transition {i} does not connect its stages")));
            }
        }
        Ok(x.normalised())
    }

    /// The constant ind-object on `x` with identity transitions.
    pub fn embed(cat: &Arc<FiniteCategory>, x: ObjId) -> Self {
        Self { cat: cat.clone(), objects: vec![x], transitions: vec![cat.identity(x)], preperiod: 0 }
    }

    pub fn period(&self) -> usize {
        self.objects.len() - self.preperiod
    }

    pub fn item(&self, n: usize) -> usize {
        let q = self.preperiod;
        if n < q {
            n
        } else {
            q + (n - q) % self.period()
        }
    }

    pub fn next(&self, i: usize) -> usize {
        if i + 1 < self.objects.len() {
            i + 1
        } else {
            self.preperiod
        }
    }

    pub fn object_at(&self, n: usize) -> ObjId {
        self.objects[self.item(n)]
    }

    pub fn transition_at(&self, n: usize) -> &Arrow {
        &self.transitions[self.item(n)]
    }

    fn normalised(self) -> Self {
        let q = self.preperiod;
        let p = self.period();
        let same = |a: usize, b: usize| self.object_at(a) == self.object_at(b) && self.transition_at(a) == self.transition_at(b);
        let p_min = (1..=p).find(|d| p.is_multiple_of(*d) && (0..p).all(|i| same(q + i, q + i + d))).unwrap_or(p);
        let q_min = (0..=q).find(|&m| (m..q + p).all(|n| same(n, n + p_min))).unwrap_or(q);
        let len = q_min + p_min;
        let objects = (0..len).map(|n| self.object_at(n)).collect();
        let transitions = (0..len).map(|n| self.transition_at(n).clone()).collect();
        Self { cat: self.cat, objects, transitions, preperiod: q_min }
    }

    /// Applies `f` levelwise and renormalises.
    pub fn extend(&self, f: &Functor) -> Result<Self> {
        if !Arc::ptr_eq(&f.src, &self.cat) && *f.src != *self.cat {
            return Err(Error::Precondition("functor source is not the ind-object's category".into()));
        }
        let objects = self.objects.iter().map(|&o| f.obj(o)).collect();
        let transitions = self.transitions.iter().map(|t| f.apply(t)).collect::<Result<_>>()?;
        IndObject::new(f.dst.clone(), objects, transitions, self.preperiod)
    }
}

pub fn extend_functor(f: &Functor, x: &IndObject) -> Result<IndObject> {
    x.extend(f)
}

/// `colim_j C(a, Y_j)`.
pub fn row_colimit(a: ObjId, y: &IndObject) -> Result<SeqColimit> {
    let cat = &y.cat;
    let stages = y.objects.iter().map(|&b| hom_carrier(cat, a, b)).collect();
    let links = y.transitions.iter().map(|t| postcompose(cat, a, t)).collect::<Result<_>>()?;
    sequential_colimit(&EpSequence::new(stages, links, y.preperiod, Direction::Forward)?)
}

/// The hom-object `ind_hom(X, Y)` with the data needed to compose.
#[derive(Clone, Debug)]
pub struct IndHom {
    pub source: IndObject,
    pub target: IndObject,
    /// `colim_j C(X_i, Y_j)` for each presented stage `i` of the source.
    pub rows: Vec<SeqColimit>,
    pub limit: SeqLimit,
}

pub fn ind_hom(x: &IndObject, y: &IndObject) -> Result<IndHom> {
    if x.cat.enrichment() != y.cat.enrichment() {
        return Err(Error::EnrichmentMismatch("ind-objects over different enrichments".into()));
    }
    if *x.cat != *y.cat {
        return Err(Error::Precondition("ind-objects over different categories".into()));
    }
    let cat = &x.cat;
    let rows: Vec<SeqColimit> = x.objects.iter().map(|&a| row_colimit(a, y)).collect::<Result<_>>()?;
    let qy = y.preperiod;
    let mut links = Vec::with_capacity(rows.len());
    for i in 0..rows.len() {
        let upper = &rows[x.next(i)];
        let lower = &rows[i];
        let t = &x.transitions[i];
        let link = Map::tabulate(upper.carrier(), lower.carrier(), |e| {
            let r = arrow(t.dst, y.objects[qy], upper.representative(e));
            Ok(lower.leg(qy, &cat.compose(&r, t)?.value))
        })?;
        links.push(link);
    }
    let stages = rows.iter().map(SeqColimit::carrier).collect();
    let limit = sequential_limit(&EpSequence::new(stages, links, x.preperiod, Direction::Backward)?)?;
    Ok(IndHom { source: x.clone(), target: y.clone(), rows, limit })
}

impl IndHom {
    pub fn carrier(&self) -> Carrier {
        self.limit.carrier()
    }

    /// A representative arrow `X_n -> Y_q` (absolute `n`, `q` the target's
    /// preperiod) of the component of `e` at stage `n`.
    pub fn representative(&self, e: &Elem, n: usize) -> Arrow {
        let i = self.source.item(n);
        let class = self.limit.leg(n, e);
        arrow(self.source.objects[i], self.target.objects[self.target.preperiod], self.rows[i].representative(&class))
    }

    /// The ind-morphism whose component at the source's anchor stage is the
    /// class of `h: X_q -> Y_j` (absolute `j`), if that family is compatible.
    pub fn from_anchor(&self, j: usize, h: &Arrow) -> Option<Elem> {
        let q = self.source.preperiod;
        self.limit.locate(&self.rows[q].leg(j, &h.value))
    }

    /// The identity of an ind-object.
    pub fn identity(&self) -> Result<Elem> {
        if self.source != self.target {
            return Err(Error::Precondition("identity needs equal source and target".into()));
        }
        let q = self.source.preperiod;
        self.from_anchor(q, &self.source.cat.identity(self.source.objects[q]))
            .ok_or_else(|| Error::OracleRefused("identity family is not compatible".into()))
    }
}

impl IndHom {
    /// The ind-morphism whose component at absolute source stage `n` is the
    /// class of `h: X_n -> Y_j` (absolute `j`), if there is one.
    pub fn from_component(&self, n: usize, j: usize, h: &Arrow) -> Option<Elem> {
        let class = self.rows[self.source.item(n)].leg(j, &h.value);
        match self.limit.leg_map(n) {
            Map::Fun { images, .. } => {
                let target = class.point()?;
                images.iter().position(|&x| x == target).map(Elem::Point)
            }
            Map::Lin(m) => {
                let v = class.vector()?;
                if m.cols() == 0 {
                    return v.iter().all(|x| *x == Q::from_integer(0.into())).then(|| Elem::Vector(Vec::new()));
                }
                m.solve(v).map(Elem::Vector)
            }
        }
    }
}

/// `F` applied to an ind-morphism `e` in `hom`, landing in `target`, which
/// must be `ind_hom(F X, F Y)`.
pub fn ind_functor_map(f: &Functor, hom: &IndHom, target: &IndHom, e: &Elem) -> Result<Elem> {
    let n = hom.source.preperiod;
    let rep = hom.representative(e, n);
    let moved = f.apply(&rep)?;
    target
        .from_component(n, hom.target.preperiod, &moved)
        .ok_or_else(|| Error::OracleRefused("image family is not compatible".into()))
}

/// The full subcategory of ind-objects on a finite list, as a finite
/// category.
#[derive(Debug)]
pub struct IndClosure {
    pub base: Arc<FiniteCategory>,
    pub objects: Vec<IndObject>,
    pub names: Vec<String>,
    pub category: Arc<FiniteCategory>,
    homs: Vec<Vec<IndHom>>,
    assembled: Assembled,
}

struct ClosureRule<'a> {
    homs: &'a [Vec<IndHom>],
    names: &'a [String],
}

impl HomRule for ClosureRule<'_> {
    fn carrier(&self, a: ObjId, b: ObjId) -> Carrier {
        self.homs[a][b].carrier()
    }

    fn identity(&self, a: ObjId) -> Elem {
        self.homs[a][a].identity().expect("identity family")
    }

    fn compose(&self, x: ObjId, y: ObjId, z: ObjId, g: &Elem, f: &Elem) -> Result<Elem> {
        ind_compose(&self.homs[x][z], &self.homs[y][z], &self.homs[x][y], g, f)
    }

    fn label(&self, a: ObjId, b: ObjId, e: &Elem) -> String {
        let h = &self.homs[a][b];
        let e = match e {
            Elem::Point(_) => e.clone(),
            Elem::Vector(v) => {
                let k = v.iter().position(|c| *c != Q::from_integer(0.into())).unwrap_or(0);
                Elem::Vector(crate::linalg::unit(v.len(), k))
            }
        };
        let rep = h.representative(&e, h.source.preperiod);
        format!("[{}]:{}->{}", h.source.cat.describe(&rep), self.names[a], self.names[b])
    }
}

impl IndClosure {
    pub fn new(base: &Arc<FiniteCategory>, objects: Vec<IndObject>, names: Vec<String>) -> Result<Self> {
        let homs: Vec<Vec<IndHom>> = objects
            .iter()
            .map(|x| objects.iter().map(|y| ind_hom(x, y)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let rule = ClosureRule { homs: &homs, names: &names };
        let assembled = assemble(&format!("ind({})", base.name()), base.enrichment(), &names, &rule)?;
        let category = Arc::new(assembled.category.clone());
        Ok(Self { base: base.clone(), objects, names, category, homs, assembled })
    }

    pub fn index_of(&self, x: &IndObject) -> Option<ObjId> {
        self.objects.iter().position(|o| o == x)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &IndHom {
        &self.homs[a][b]
    }

    /// The arrow of the closure represented by an element of `ind_hom`.
    pub fn arrow(&self, a: ObjId, b: ObjId, e: &Elem) -> Arrow {
        self.assembled.to_arrow(a, b, e)
    }

    /// The `ind_hom` element of an arrow of the closure.
    pub fn element(&self, f: &Arrow) -> Elem {
        self.assembled.to_carrier(f)
    }

    /// `F` extended to the closure; the list must be closed under `F`.
    pub fn extend_endofunctor(&self, f: &Functor) -> Result<Functor> {
        let on_objects: Vec<ObjId> = self
            .objects
            .iter()
            .map(|x| {
                let fx = x.extend(f)?;
                self.index_of(&fx).ok_or_else(|| Error::Precondition("object list is not closed under the functor".into()))
            })
            .collect::<Result<_>>()?;
        let c = &self.category;
        let on_morphisms = (0..c.morphism_count())
            .map(|m| {
                let a = c.basis_arrow(m);
                let (x, y) = (a.src, a.dst);
                let e = ind_functor_map(f, &self.homs[x][y], &self.homs[on_objects[x]][on_objects[y]], &self.element(&a))?;
                Ok(self.arrow(on_objects[x], on_objects[y], &e))
            })
            .collect::<Result<_>>()?;
        Ok(Functor { src: c.clone(), dst: c.clone(), on_objects, on_morphisms })
    }

    /// `θ` extended to the closure: the family `θ_{X_n}` at every stage.
    pub fn extend_pointing(&self, omega_hat: &Functor, theta: &crate::cat::NatTransformation) -> Result<Vec<Arrow>> {
        (0..self.objects.len())
            .map(|a| {
                let x = &self.objects[a];
                let b = omega_hat.obj(a);
                let n = x.preperiod;
                let e = self.homs[a][b]
                    .from_component(n, n, theta.component(x.object_at(n)))
                    .ok_or_else(|| Error::OracleRefused("θ is not a compatible family".into()))?;
                Ok(self.arrow(a, b, &e))
            })
            .collect()
    }

    /// `C -> closure`, `c |-> embed(c)`; every `embed(c)` must be listed.
    pub fn embedding(&self) -> Result<Functor> {
        let base = &self.base;
        let on_objects: Vec<ObjId> = base
            .objects()
            .map(|c| self.index_of(&IndObject::embed(base, c)).ok_or_else(|| Error::Precondition("embedded object missing".into())))
            .collect::<Result<_>>()?;
        let on_morphisms = (0..base.morphism_count())
            .map(|m| {
                let f = base.basis_arrow(m);
                let (x, y) = (on_objects[f.src], on_objects[f.dst]);
                let e = self.homs[x][y].from_anchor(0, &f).ok_or_else(|| Error::OracleRefused("not compatible".into()))?;
                Ok(self.arrow(x, y, &e))
            })
            .collect::<Result<_>>()?;
        Ok(Functor { src: base.clone(), dst: self.category.clone(), on_objects, on_morphisms })
    }
}

/// `g o f` for `f` in `xy`, `g` in `yz`, landing in `xz`.
pub fn ind_compose(xz: &IndHom, yz: &IndHom, xy: &IndHom, g: &Elem, f: &Elem) -> Result<Elem> {
    if xy.target != yz.source || xz.source != xy.source || xz.target != yz.target {
        return Err(Error::TypeMismatch("ind-morphisms are not composable".into()));
    }
    let cat = &xz.source.cat;
    let f_rep = xy.representative(f, xy.source.preperiod);
    let g_rep = yz.representative(g, yz.source.preperiod);
    let h = cat.compose(&g_rep, &f_rep)?;
    xz.from_anchor(xz.target.preperiod, &h)
        .ok_or_else(|| Error::OracleRefused("composite family is not compatible".into()))
}

/// Linear matrix of `f |-> g o f` (or `g |-> g o f`) over a basis, used to
/// solve for inverses in linear mode.
fn composition_matrix(xz: &IndHom, yz: &IndHom, xy: &IndHom, fixed: &Elem, fixed_is_g: bool) -> Result<Matrix> {
    let free = if fixed_is_g { xy.carrier() } else { yz.carrier() };
    let rows = xz.carrier().size();
    let cols = free
        .elements()
        .iter()
        .map(|b| {
            let v = if fixed_is_g { ind_compose(xz, yz, xy, fixed, b)? } else { ind_compose(xz, yz, xy, b, fixed)? };
            Ok(v.vector().expect("linear").to_vec())
        })
        .collect::<Result<Vec<Vec<Q>>>>()?;
    Ok(if cols.is_empty() { Matrix::zeros(rows, 0) } else { Matrix::from_columns(rows, &cols) })
}

/// The four hom-objects between `X` and `Y`, for inverse search.
pub struct IsoSearch {
    pub xy: IndHom,
    pub yx: IndHom,
    xx: IndHom,
    yy: IndHom,
    id_x: Elem,
    id_y: Elem,
}

impl IsoSearch {
    pub fn new(x: &IndObject, y: &IndObject) -> Result<Self> {
        let xx = ind_hom(x, x)?;
        let yy = ind_hom(y, y)?;
        let (id_x, id_y) = (xx.identity()?, yy.identity()?);
        Ok(Self { xy: ind_hom(x, y)?, yx: ind_hom(y, x)?, xx, yy, id_x, id_y })
    }

    /// A two-sided inverse of `f: X -> Y`.
    pub fn inverse(&self, f: &Elem) -> Result<Option<Elem>> {
        let (xx, yy, xy, yx) = (&self.xx, &self.yy, &self.xy, &self.yx);
        match self.xy.source.cat.enrichment() {
            Enrichment::Set => {
                for g in yx.carrier().elements() {
                    if ind_compose(xx, yx, xy, &g, f)? == self.id_x && ind_compose(yy, xy, yx, f, &g)? == self.id_y {
                        return Ok(Some(g));
                    }
                }
                Ok(None)
            }
            Enrichment::Vect => {
                let left = composition_matrix(xx, yx, xy, f, false)?;
                let right = composition_matrix(yy, xy, yx, f, true)?;
                let mut stacked = left.columns();
                for (col, r) in stacked.iter_mut().zip(right.columns()) {
                    col.extend(r);
                }
                let height = left.rows() + right.rows();
                let mut rhs = self.id_x.vector().expect("linear").to_vec();
                rhs.extend(self.id_y.vector().expect("linear").iter().cloned());
                let sol = if stacked.is_empty() {
                    rhs.iter().all(|v| *v == Q::from_integer(0.into())).then(Vec::new)
                } else {
                    Matrix::from_columns(height, &stacked).solve(&rhs)
                };
                Ok(sol.map(Elem::Vector))
            }
        }
    }

    /// An isomorphism with its inverse. In linear mode the candidates for the
    /// forward map are the basis vectors and their sum.
    pub fn find(&self) -> Result<Option<(Elem, Elem)>> {
        let mut candidates = self.xy.carrier().elements();
        let n = self.xy.carrier().size();
        if self.xy.source.cat.enrichment() == Enrichment::Vect && n > 1 {
            candidates.push(Elem::Vector(vec![Q::from_integer(1.into()); n]));
        }
        for f in candidates {
            if let Some(g) = self.inverse(&f)? {
                return Ok(Some((f, g)));
            }
        }
        Ok(None)
    }
}

pub fn ind_inverse(x: &IndObject, y: &IndObject, f: &Elem) -> Result<Option<Elem>> {
    IsoSearch::new(x, y)?.inverse(f)
}

pub fn find_ind_iso(x: &IndObject, y: &IndObject) -> Result<Option<(Elem, Elem)>> {
    IsoSearch::new(x, y)?.find()
}

pub fn ind_isomorphic(x: &IndObject, y: &IndObject) -> Result<bool> {
    Ok(find_ind_iso(x, y)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::*;

    fn telescope(cat: &Arc<FiniteCategory>, x: ObjId, t: &str) -> IndObject {
        let m = cat.morphism_id(t).unwrap();
        IndObject::new(cat.clone(), vec![x], vec![cat.basis_arrow(m)], 0).unwrap()
    }

    #[test]
    fn embed_is_fully_faithful_on_chain3() {
        let c = Arc::new(chain3());
        for a in c.objects() {
            for b in c.objects() {
                let h = ind_hom(&IndObject::embed(&c, a), &IndObject::embed(&c, b)).unwrap();
                assert_eq!(h.carrier().size(), c.hom_size(a, b));
            }
        }
    }

    #[test]
    fn e_telescope_hom_is_singleton() {
        let m = Arc::new(idempotent_monoid());
        let y = telescope(&m, 0, "e");
        let h = ind_hom(&IndObject::embed(&m, 0), &y).unwrap();
        assert_eq!(h.carrier(), Carrier::Set(1));
    }

    #[test]
    fn normalisation_collapses_repeated_stages() {
        let c = Arc::new(chain3());
        let id2 = c.identity(2);
        let x = IndObject::new(c.clone(), vec![2, 2, 2], vec![id2.clone(), id2.clone(), id2], 1).unwrap();
        assert_eq!(x, IndObject::embed(&c, 2));
    }

    #[test]
    fn shift_telescope_is_isomorphic_to_top() {
        let c = Arc::new(chain3());
        let u = |a, b| unique_arrow(&c, a, b).unwrap();
        let x = IndObject::new(c.clone(), vec![0, 1, 2], vec![u(0, 1), u(1, 2), u(2, 2)], 2).unwrap();
        assert!(ind_isomorphic(&x, &IndObject::embed(&c, 2)).unwrap());
        assert!(!ind_isomorphic(&x, &IndObject::embed(&c, 1)).unwrap());
    }

    #[test]
    fn extend_by_shift_moves_constant() {
        let c = Arc::new(chain3());
        let omega = monotone_functor(&c, &[1, 2, 2]).unwrap();
        let x = extend_functor(&omega, &IndObject::embed(&c, 0)).unwrap();
        assert_eq!(x, IndObject::embed(&c, 1));
        assert_eq!(extend_functor(&Functor::identity(&c), &x).unwrap(), x);
    }

    #[test]
    fn linear_scalar_telescope_is_iso_to_constant() {
        let c = Arc::new(scalar_line());
        let two = scalar(&c, 0, Q::from_integer(2.into()));
        let x = IndObject::new(c.clone(), vec![0], vec![two], 0).unwrap();
        let (f, g) = find_ind_iso(&x, &IndObject::embed(&c, 0)).unwrap().unwrap();
        assert_eq!(f.vector().unwrap().len(), 1);
        assert_eq!(g.vector().unwrap().len(), 1);
    }
}
