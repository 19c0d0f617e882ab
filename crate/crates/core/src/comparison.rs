//! The comparison functors between Ω-spectra, the stabilisation and the
//! localisation, computed over the closure of `C` under `Ω^∞` inside
//! ind-objects.

use std::sync::Arc;

use serde::Serialize;

use crate::cat::assemble::{assemble, Assembled, HomRule};
use crate::cat::coreflect::{find_coreflection, Coreflection};
use crate::cat::iso::{are_isomorphic, isos};
use crate::cat::{check_equivalence, find_nat_iso, inverse, is_iso, Arrow, Elem, EquivalenceWitness, FiniteCategory, Functor, NatTransformation, ObjId};
use crate::error::{Error, Result};
use crate::ind::{arrow, precompose, IndClosure, IndObject};
use crate::linalg::{is_zero_vec, Q};
use crate::localise::{localised_hom_carrier, omega_infinity, WellPointedEndo};
use crate::periodic::{Carrier, Map};
use crate::spectra::{spectra_hom, theta_embedding, SpectraHom, Spectrum};
use crate::stabilise::{stabilisation_category, StabObject, Stabilisation};

/// `C` together with every `Ω^∞ c`, as a full subcategory of ind-objects,
/// with `Ω` and `θ` extended.
#[derive(Debug)]
pub struct IndModel {
    pub closure: IndClosure,
    pub wp: WellPointedEndo,
    /// Objects where the extended `θ` is invertible.
    pub algebras: Vec<ObjId>,
    /// `r(A)`: the algebra `Ω^∞` of each object.
    pub reflect: Vec<ObjId>,
    /// `u_A: A -> r(A)`.
    pub unit: Vec<Arrow>,
}

impl IndModel {
    pub fn new(wp: &WellPointedEndo) -> Result<Self> {
        let base = wp.category().clone();
        let mut objects: Vec<IndObject> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        for c in base.objects() {
            objects.push(IndObject::embed(&base, c));
            names.push(base.object_name(c).to_string());
        }
        let mut telescope = Vec::new();
        for c in base.objects() {
            let t = omega_infinity(wp, c)?;
            let k = match objects.iter().position(|o| *o == t) {
                Some(k) => k,
                None => {
                    objects.push(t);
                    names.push(format!("Ω∞{}", base.object_name(c)));
                    objects.len() - 1
                }
            };
            telescope.push(k);
        }
        let closure = IndClosure::new(&base, objects, names)?;
        let omega = closure.extend_endofunctor(&wp.omega)?;
        let theta = closure.extend_pointing(&omega, &wp.theta)?;
        let wp_hat = WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, theta))?;
        let cat = closure.category.clone();
        let algebras: Vec<ObjId> = cat.objects().filter(|&a| is_iso(&cat, wp_hat.theta(a))).collect();
        let n = cat.object_count();
        let mut reflect = vec![0; n];
        let mut unit = Vec::with_capacity(n);
        for a in 0..n {
            if a < base.object_count() {
                let r = telescope[a];
                let e = closure
                    .hom(a, r)
                    .from_anchor(0, &base.identity(a))
                    .ok_or_else(|| Error::OracleRefused("unit of Ω^∞ is not compatible".into()))?;
                reflect[a] = r;
                unit.push(closure.arrow(a, r, &e));
            } else {
                reflect[a] = a;
                unit.push(cat.identity(a));
            }
        }
        Ok(Self { closure, wp: wp_hat, algebras, reflect, unit })
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.closure.category
    }

    /// `r(f)`: the unique `g: rA -> rB` with `g o u_A = u_B o f`.
    pub fn reflect_map(&self, f: &Arrow) -> Result<Arrow> {
        let cat = self.category();
        let (ra, rb) = (self.reflect[f.src], self.reflect[f.dst]);
        let target = cat.compose(&self.unit[f.dst], f)?;
        let map = precompose(cat, &self.unit[f.src], rb)?;
        let value = match (&map, &target.value) {
            (Map::Fun { images, .. }, Elem::Point(t)) => images.iter().position(|i| i == t).map(Elem::Point),
            (Map::Lin(m), Elem::Vector(v)) => {
                if m.cols() == 0 {
                    is_zero_vec(v).then(|| Elem::Vector(Vec::new()))
                } else if m.rows() == 0 {
                    Some(Elem::Vector(vec![Q::from_integer(0.into()); m.cols()]))
                } else {
                    m.solve(v).map(Elem::Vector)
                }
            }
            _ => None,
        };
        value
            .map(|v| arrow(ra, rb, v))
            .ok_or_else(|| Error::OracleRefused("map does not factor through the reflection".into()))
    }

    /// `r(θ^m_A): r(A) -> r(Ω^m A)`.
    fn tau(&self, a: ObjId, m: usize) -> Result<Arrow> {
        self.reflect_map(&self.wp.theta_power(a, m)?)
    }

    /// Whether `L(Ω^∞ c, Ω^∞ d)` computed here matches the localised hom formula.
    pub fn localisation_agrees(&self, wp: &WellPointedEndo) -> Result<bool> {
        let base = wp.category();
        for c in base.objects() {
            for d in base.objects() {
                let here = self.closure.hom(self.reflect[c], self.reflect[d]).carrier();
                if here != localised_hom_carrier(wp, c, d)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A finite full subcategory of Ω-spectra.
#[derive(Debug)]
pub struct SpectraModel {
    pub spectra: Vec<Spectrum>,
    pub category: Arc<FiniteCategory>,
    homs: Vec<Vec<SpectraHom>>,
    assembled: Assembled,
}

struct SpectraRule<'a> {
    homs: &'a [Vec<SpectraHom>],
    names: &'a [String],
}

fn locate(h: &SpectraHom, component: &Arrow) -> Result<Elem> {
    h.limit
        .locate(&component.value)
        .ok_or_else(|| Error::OracleRefused("components do not form a map of spectra".into()))
}

impl HomRule for SpectraRule<'_> {
    fn carrier(&self, a: ObjId, b: ObjId) -> Carrier {
        self.homs[a][b].carrier()
    }

    fn identity(&self, a: ObjId) -> Elem {
        let h = &self.homs[a][a];
        let q = h.limit.tower.preperiod;
        locate(h, &h.source.cat().identity(h.source.level(q))).expect("identity is a map of spectra")
    }

    fn compose(&self, x: ObjId, y: ObjId, z: ObjId, g: &Elem, f: &Elem) -> Result<Elem> {
        let xz = &self.homs[x][z];
        let q = xz.limit.tower.preperiod;
        let (f, g) = (self.homs[x][y].map(f), self.homs[y][z].map(g));
        locate(xz, &xz.source.cat().compose(g.at(q), f.at(q))?)
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
        let m = h.map(&e);
        let parts: Vec<String> = m.components.iter().map(|c| h.source.cat().describe(c)).collect();
        format!("<{}>:{}->{}", parts.join(","), self.names[a], self.names[b])
    }
}

fn spectrum_name(cat: &FiniteCategory, k: usize, x: &Spectrum) -> String {
    let levels: Vec<&str> = x.levels.iter().map(|&o| cat.object_name(o)).collect();
    format!("X{k}[{}]", levels.join(","))
}

impl SpectraModel {
    pub fn new(spectra: Vec<Spectrum>) -> Result<Self> {
        let first = spectra.first().ok_or_else(|| Error::Precondition("no spectra".into()))?;
        let cat = first.cat().clone();
        let homs: Vec<Vec<SpectraHom>> = spectra
            .iter()
            .map(|x| spectra.iter().map(|y| spectra_hom(x, y)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let names: Vec<String> = spectra.iter().enumerate().map(|(k, x)| spectrum_name(&cat, k, x)).collect();
        let rule = SpectraRule { homs: &homs, names: &names };
        let assembled = assemble(&format!("Sp({})", cat.name()), cat.enrichment(), &names, &rule)?;
        let category = Arc::new(assembled.category.clone());
        Ok(Self { spectra, category, homs, assembled })
    }

    pub fn index_of(&self, x: &Spectrum) -> Option<ObjId> {
        self.spectra.iter().position(|s| s == x)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &SpectraHom {
        &self.homs[a][b]
    }

    pub fn arrow(&self, a: ObjId, b: ObjId, e: &Elem) -> Arrow {
        self.assembled.to_arrow(a, b, e)
    }

    pub fn element(&self, f: &Arrow) -> Elem {
        self.assembled.to_carrier(f)
    }
}

/// Ω-spectra used for the finite model: strict periodic spectra on the
/// periodic objects of `Ω`, the constant spectra `Θ(A)` on algebras, and all
/// spectra of length at most two whose structure maps are isomorphisms from
/// the search list, up to `cap` in total.
pub fn omega_spectra(model: &IndModel, cap: usize) -> Result<Vec<Spectrum>> {
    let cat = model.category();
    let omega = &model.wp.omega;
    let mut out: Vec<Spectrum> = Vec::new();
    let push = |x: Spectrum, out: &mut Vec<Spectrum>| {
        if !out.contains(&x) {
            out.push(x);
        }
    };
    for &a in &model.algebras {
        push(theta_embedding(&model.wp, a)?, &mut out);
    }
    for a in cat.objects() {
        let orbit: Vec<ObjId> = std::iter::successors(Some(omega.obj(a)), |&o| Some(omega.obj(o)))
            .take(cat.object_count())
            .collect();
        let Some(p) = orbit.iter().position(|&o| o == a).map(|i| i + 1) else { continue };
        let levels: Vec<ObjId> = (0..p).map(|n| omega.obj_power(a, (p - n) % p)).collect();
        let sigma = levels.iter().map(|&o| cat.identity(o)).collect();
        push(Spectrum::new(omega, levels, sigma, 0)?, &mut out);
    }
    'extra: for a in cat.objects() {
        for s in isos(cat, a, omega.obj(a)) {
            if out.len() >= cap {
                break 'extra;
            }
            push(Spectrum::new(omega, vec![a], vec![s], 0)?, &mut out);
        }
        for b in cat.objects() {
            for s0 in isos(cat, a, omega.obj(b)) {
                for s1 in isos(cat, b, omega.obj(a)) {
                    if out.len() >= cap {
                        break 'extra;
                    }
                    push(Spectrum::new(omega, vec![a, b], vec![s0.clone(), s1], 0)?, &mut out);
                }
            }
        }
    }
    Ok(out)
}

/// Everything needed to compare `Sp`, the stabilisation and `L`.
#[derive(Debug)]
pub struct Comparison {
    pub model: IndModel,
    pub spectra: SpectraModel,
    pub stabilisation: Stabilisation,
    pub phi: Functor,
    pub psi: Functor,
    pub eta: Coreflection,
    pub epsilon: Coreflection,
    /// `(A, 0)` for algebras `A`.
    pub local_in_stab: Vec<ObjId>,
    /// `Θ(A)` for algebras `A`.
    pub local_in_spectra: Vec<ObjId>,
}

pub const DEFAULT_SPECTRA_CAP: usize = 48;

pub fn comparison_functors(wp: &WellPointedEndo, window: i64) -> Result<Comparison> {
    let model = IndModel::new(wp)?;
    let spectra = SpectraModel::new(omega_spectra(&model, DEFAULT_SPECTRA_CAP)?)?;
    let stabilisation = stabilisation_category(&model.wp.omega, window)?;
    let cat = model.category().clone();
    let s = &stabilisation;

    let theta_index = |a: ObjId| -> Result<ObjId> {
        spectra
            .index_of(&theta_embedding(&model.wp, a)?)
            .ok_or_else(|| Error::Precondition("constant spectrum missing from the model".into()))
    };
    let stab_index = |x: StabObject| -> Result<ObjId> {
        s.index_of(x).ok_or_else(|| Error::Precondition("object outside the window".into()))
    };

    let phi_objects: Vec<ObjId> =
        spectra.spectra.iter().map(|x| stab_index(StabObject::new(x.level(0), 0))).collect::<Result<_>>()?;
    let phi_morphisms = (0..spectra.category.morphism_count())
        .map(|m| {
            let f = spectra.category.basis_arrow(m);
            let component = spectra.hom(f.src, f.dst).map(&spectra.element(&f)).at(0).clone();
            s.class_of(phi_objects[f.src], phi_objects[f.dst], &crate::stabilise::StabMorphism { stage: 0, rep: component })
        })
        .collect::<Result<_>>()?;
    let phi = Functor {
        src: spectra.category.clone(),
        dst: s.category.clone(),
        on_objects: phi_objects,
        on_morphisms: phi_morphisms,
    };

    let psi_objects: Vec<ObjId> =
        s.objects.iter().map(|x| theta_index(model.reflect[x.base])).collect::<Result<_>>()?;
    let psi_morphisms = (0..s.category.morphism_count())
        .map(|m| {
            let f = s.category.basis_arrow(m);
            let (x, y) = (s.objects[f.src], s.objects[f.dst]);
            let nf = s.normal_form(&f);
            let k = nf.stage as i64;
            let ta = model.tau(x.base, (k + x.degree) as usize)?;
            let tb = model.tau(y.base, (k + y.degree) as usize)?;
            let tb_inv = inverse(&cat, &tb).ok_or_else(|| Error::OracleRefused("reflected θ is not invertible".into()))?;
            let g = cat.compose_path(&[ta, model.reflect_map(&nf.rep)?, tb_inv])?;
            let (a, b) = (psi_objects[f.src], psi_objects[f.dst]);
            Ok(spectra.arrow(a, b, &locate(spectra.hom(a, b), &g)?))
        })
        .collect::<Result<_>>()?;
    let psi = Functor {
        src: s.category.clone(),
        dst: spectra.category.clone(),
        on_objects: psi_objects,
        on_morphisms: psi_morphisms,
    };

    let local_in_stab: Vec<ObjId> =
        model.algebras.iter().map(|&a| stab_index(StabObject::new(a, 0))).collect::<Result<_>>()?;
    let local_in_spectra: Vec<ObjId> = model.algebras.iter().map(|&a| theta_index(a)).collect::<Result<_>>()?;

    let eta = find_coreflection(&s.category, &local_in_stab, &|x| {
        stab_index(StabObject::new(model.reflect[s.objects[x].base], 0)).into_iter().collect()
    })?
    .ok_or_else(|| Error::OracleRefused("no coreflection onto the localisation in the stabilisation".into()))?;
    let epsilon = find_coreflection(&spectra.category, &local_in_spectra, &|x| {
        theta_index(model.reflect[spectra.spectra[x].level(0)]).into_iter().collect()
    })?
    .ok_or_else(|| Error::OracleRefused("no coreflection onto the localisation in spectra".into()))?;

    Ok(Comparison { model, spectra, stabilisation, phi, psi, eta, epsilon, local_in_stab, local_in_spectra })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonCertificate {
    pub phi_functor: bool,
    pub psi_functor: bool,
    pub eta_triangles: bool,
    pub epsilon_triangles: bool,
    /// `η(d,i) ≅ (Ω^∞ d, 0)`.
    pub eta_formula: bool,
    /// `ε(X) ≅ Θ(Ω^∞ X_0)`.
    pub epsilon_formula: bool,
    /// Components of `ΦΨ ≅ η`, by object name.
    pub phi_psi_iso: Option<Vec<String>>,
    /// Components of `ΨΦ ≅ ε`, by object name.
    pub psi_phi_iso: Option<Vec<String>>,
    pub localisation_agrees: bool,
}

impl ComparisonCertificate {
    pub fn passes(&self) -> bool {
        self.phi_functor
            && self.psi_functor
            && self.eta_triangles
            && self.epsilon_triangles
            && self.eta_formula
            && self.epsilon_formula
            && self.phi_psi_iso.is_some()
            && self.psi_phi_iso.is_some()
            && self.localisation_agrees
    }
}

fn describe_all(cat: &FiniteCategory, arrows: &[Arrow]) -> Vec<String> {
    arrows.iter().map(|a| cat.describe(a)).collect()
}

impl Comparison {
    pub fn certificate(&self, wp: &WellPointedEndo) -> Result<ComparisonCertificate> {
        let s = &self.stabilisation;
        let sp = &self.spectra;
        let eta_formula = s.objects.iter().enumerate().all(|(x, o)| {
            s.index_of(StabObject::new(self.model.reflect[o.base], 0))
                .is_some_and(|t| are_isomorphic(&s.category, self.eta.functor.obj(x), t))
        });
        let epsilon_formula = sp.spectra.iter().enumerate().all(|(x, o)| {
            theta_embedding(&self.model.wp, self.model.reflect[o.level(0)])
                .ok()
                .and_then(|t| sp.index_of(&t))
                .is_some_and(|t| are_isomorphic(&sp.category, self.epsilon.functor.obj(x), t))
        });
        let phi_psi = self.phi.after(&self.psi)?;
        let psi_phi = self.psi.after(&self.phi)?;
        Ok(ComparisonCertificate {
            phi_functor: self.phi.validate().is_valid(),
            psi_functor: self.psi.validate().is_valid(),
            eta_triangles: self.eta.triangle_identities,
            epsilon_triangles: self.epsilon.triangle_identities,
            eta_formula,
            epsilon_formula,
            phi_psi_iso: find_nat_iso(&phi_psi, &self.eta.functor).map(|c| describe_all(&s.category, &c)),
            psi_phi_iso: find_nat_iso(&psi_phi, &self.epsilon.functor).map(|c| describe_all(&sp.category, &c)),
            localisation_agrees: self.model.localisation_agrees(wp)?,
        })
    }
}

/// An object whose hom-object differs from that of its coreflection into `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub side: String,
    pub object: String,
    pub hom: Vec<String>,
    pub localised: String,
    pub localised_hom: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    /// `Φ` is an equivalence of categories.
    pub phi_equivalence: bool,
    pub phi_witness: EquivalenceWitness,
    /// `Φ` is an equivalence with quasi-inverse `Ψ`.
    pub phi_inverse_psi: bool,
    /// Both the stabilisation and `Sp` are equivalent to `L` via the inclusions.
    pub both_equivalent_to_localisation: bool,
    pub witness: Option<HomWitness>,
    /// The two conditions agree.
    pub conditions_agree: bool,
}

impl PropositionReport {
    pub fn verdict(&self) -> bool {
        self.phi_inverse_psi
    }
}

fn hom_witness(side: &str, cat: &FiniteCategory, r: &Coreflection) -> Option<HomWitness> {
    let x = cat.objects().find(|&x| !is_iso(cat, &r.counit[x]))?;
    let rx = r.functor.obj(x);
    let names = |a: ObjId| cat.hom_arrows(a, a).iter().map(|f| cat.describe(f)).collect();
    Some(HomWitness {
        side: side.to_string(),
        object: cat.object_name(x).to_string(),
        hom: names(x),
        localised: cat.object_name(rx).to_string(),
        localised_hom: names(rx),
    })
}

pub fn check_proposition_equivalence(c: &Comparison) -> PropositionReport {
    let s = &c.stabilisation.category;
    let sp = &c.spectra.category;
    let report = check_equivalence(&c.phi);
    let psi_phi = c.psi.after(&c.phi).ok();
    let phi_psi = c.phi.after(&c.psi).ok();
    let phi_inverse_psi = report.equivalent
        && psi_phi.is_some_and(|f| find_nat_iso(&f, &Functor::identity(sp)).is_some())
        && phi_psi.is_some_and(|f| find_nat_iso(&f, &Functor::identity(s)).is_some());
    let witness = hom_witness("stabilisation", s, &c.eta).or_else(|| hom_witness("spectra", sp, &c.epsilon));
    let both = witness.is_none();
    PropositionReport {
        phi_equivalence: report.equivalent,
        phi_witness: report.witness,
        phi_inverse_psi,
        both_equivalent_to_localisation: both,
        witness,
        conditions_agree: phi_inverse_psi == both,
    }
}
