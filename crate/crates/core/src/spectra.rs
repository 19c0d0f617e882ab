//! Spectra `X_n, σ_n: X_n -> Ω X_{n+1}` with eventually periodic levels,
//! the shift `S`, the pointing `σ: id => ΩS`, spectrification and the
//! functors `Θ` and `Σ^∞`.

use std::sync::Arc;

use num::integer::lcm;
use serde::Serialize;

use crate::cat::iso::inverse;
use crate::cat::{Adjunction, Arrow, Elem, Enrichment, FiniteCategory, Functor, ObjId};
use crate::error::{Error, Result};
use crate::ind::{hom_carrier, ind_hom, IndObject, IsoSearch};
use crate::linalg::{Matrix, Q};
use crate::localise::WellPointedEndo;
use crate::periodic::{sequential_limit, unroll, Carrier, Direction, EpSequence, Map, SeqLimit};

fn item(q: usize, p: usize, n: usize) -> usize {
    if n < q {
        n
    } else {
        q + (n - q) % p
    }
}

/// A spectrum in `C` with levels presented by stages `0..q+p`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub omega: Functor,
    pub levels: Vec<ObjId>,
    /// `sigma[i]: levels[i] -> Ω levels[next(i)]`.
    pub sigma: Vec<Arrow>,
    pub preperiod: usize,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels && self.sigma == other.sigma && self.preperiod == other.preperiod
    }
}

impl Eq for Spectrum {}

impl Spectrum {
    pub fn new(omega: &Functor, levels: Vec<ObjId>, sigma: Vec<Arrow>, preperiod: usize) -> Result<Self> {
        if levels.is_empty() || preperiod >= levels.len() || sigma.len() != levels.len() {
            return Err(Error::Malformed("spectrum needs one structure map per level and a period of at least 1".into()));
        }
        let x = Self { omega: omega.clone(), levels, sigma, preperiod };
        for i in 0..x.levels.len() {
            let s = &x.sigma[i];
            x.cat().check_arrow(s)?;
            if s.src != x.levels[i] || s.dst != omega.obj(x.levels[x.next(i)]) {
                return Err(Error::TypeMismatch(format!("structure map {i} has the wrong type")));
            }
        }
        Ok(x.normalised())
    }

    pub fn cat(&self) -> &Arc<FiniteCategory> {
        &self.omega.src
    }

    pub fn period(&self) -> usize {
        self.levels.len() - self.preperiod
    }

    pub fn item(&self, n: usize) -> usize {
        item(self.preperiod, self.period(), n)
    }

    pub fn next(&self, i: usize) -> usize {
        if i + 1 < self.levels.len() {
            i + 1
        } else {
            self.preperiod
        }
    }

    pub fn level(&self, n: usize) -> ObjId {
        self.levels[self.item(n)]
    }

    pub fn sigma_at(&self, n: usize) -> &Arrow {
        &self.sigma[self.item(n)]
    }

    fn normalised(self) -> Self {
        let (q, p) = (self.preperiod, self.period());
        let same = |a: usize, b: usize| self.level(a) == self.level(b) && self.sigma_at(a) == self.sigma_at(b);
        let p_min = (1..=p).find(|d| p % d == 0 && (0..p).all(|i| same(q + i, q + i + d))).unwrap_or(p);
        let q_min = (0..=q).find(|&m| (m..q + p).all(|n| same(n, n + p_min))).unwrap_or(q);
        let len = q_min + p_min;
        Self {
            levels: (0..len).map(|n| self.level(n)).collect(),
            sigma: (0..len).map(|n| self.sigma_at(n).clone()).collect(),
            preperiod: q_min,
            omega: self.omega,
        }
    }

    pub fn is_omega_spectrum(&self) -> bool {
        self.sigma.iter().all(|s| inverse(self.cat(), s).is_some())
    }

    /// `(SX)_n = X_{n+1}`.
    pub fn shift(&self) -> Self {
        let n = self.levels.len() + 1;
        let levels = (1..n).map(|k| self.level(k)).collect();
        let sigma = (1..n).map(|k| self.sigma_at(k).clone()).collect();
        Self::new(&self.omega, levels, sigma, self.preperiod.saturating_sub(1)).expect("shift of a valid spectrum")
    }

    /// Levelwise `Ω`, with structure maps `Ω σ_n`.
    pub fn loop_levels(&self) -> Self {
        let levels = self.levels.iter().map(|&o| self.omega.obj(o)).collect();
        let sigma = self.sigma.iter().map(|s| self.omega.apply(s).expect("functor applies")).collect();
        Self::new(&self.omega, levels, sigma, self.preperiod).expect("Ω of a valid spectrum")
    }

    /// `σ_X: X -> ΩSX`.
    pub fn sigma_map(&self) -> SpectrumMap {
        SpectrumMap { components: self.sigma.clone(), preperiod: self.preperiod }
    }

    /// The levelwise embedding into spectra of ind-objects.
    pub fn iota(&self) -> Result<IndSpectrum> {
        let cat = self.cat();
        let levels: Vec<IndObject> = self.levels.iter().map(|&o| IndObject::embed(cat, o)).collect();
        let mut sigma = Vec::with_capacity(levels.len());
        for (i, s) in self.sigma.iter().enumerate() {
            let target = levels[self.next(i)].extend(&self.omega)?;
            let h = ind_hom(&levels[i], &target)?;
            sigma.push(h.from_anchor(target.preperiod, s).ok_or_else(|| Error::OracleRefused("σ is not a compatible family".into()))?);
        }
        Ok(IndSpectrum { omega: self.omega.clone(), levels, sigma, preperiod: self.preperiod })
    }
}

/// A morphism of spectra, eventually periodic in its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumMap {
    pub components: Vec<Arrow>,
    pub preperiod: usize,
}

impl SpectrumMap {
    pub fn period(&self) -> usize {
        self.components.len() - self.preperiod
    }

    pub fn at(&self, n: usize) -> &Arrow {
        &self.components[item(self.preperiod, self.period(), n)]
    }

    /// `(ΩS f)_n = Ω(f_{n+1})`.
    pub fn omega_shift(&self, omega: &Functor) -> Result<SpectrumMap> {
        let n = self.components.len() + 1;
        let components = (1..n).map(|k| omega.apply(self.at(k))).collect::<Result<_>>()?;
        Ok(SpectrumMap { components, preperiod: self.preperiod.saturating_sub(1) })
    }

    /// Checks `σ^Y_n o f_n = Ω(f_{n+1}) o σ^X_n` on a window covering all
    /// three presentations.
    pub fn is_morphism(&self, x: &Spectrum, y: &Spectrum) -> bool {
        let cat = x.cat();
        let w = window(&[(x.preperiod, x.period()), (y.preperiod, y.period()), (self.preperiod, self.period())]);
        (0..w).all(|n| {
            let lhs = cat.compose(y.sigma_at(n), self.at(n));
            let rhs = x.omega.apply(self.at(n + 1)).and_then(|g| cat.compose(&g, x.sigma_at(n)));
            matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
        })
    }
}

fn window(presentations: &[(usize, usize)]) -> usize {
    let q = presentations.iter().map(|p| p.0).max().unwrap_or(0);
    let p = presentations.iter().map(|p| p.1).fold(1, lcm);
    q + p + 1
}

/// `Sp(X, Y)` for an Ω-spectrum `Y`: the limit of the tower
/// `C(X_{n+1}, Y_{n+1}) -> C(X_n, Y_n)`, `f |-> (σ^Y_n)^{-1} o Ω f o σ^X_n`.
#[derive(Clone, Debug)]
pub struct SpectraHom {
    pub source: Spectrum,
    pub target: Spectrum,
    pub limit: SeqLimit,
}

pub fn spectra_hom(x: &Spectrum, y: &Spectrum) -> Result<SpectraHom> {
    let cat = x.cat().clone();
    let q = x.preperiod.max(y.preperiod);
    let p = lcm(x.period(), y.period());
    let stages: Vec<Carrier> = (0..q + p).map(|n| hom_carrier(&cat, x.level(n), y.level(n))).collect();
    let mut links = Vec::with_capacity(q + p);
    for n in 0..q + p {
        let inv = inverse(&cat, y.sigma_at(n))
            .ok_or_else(|| Error::Precondition("target is not an Ω-spectrum".into()))?;
        let (a, b) = (x.level(n + 1), y.level(n + 1));
        links.push(Map::tabulate(hom_carrier(&cat, a, b), stages[n], |f| {
            let of = x.omega.apply(&Arrow { src: a, dst: b, value: f.clone() })?;
            Ok(cat.compose_path(&[x.sigma_at(n).clone(), of, inv.clone()])?.value)
        })?);
    }
    let limit = sequential_limit(&EpSequence::new(stages, links, q, Direction::Backward)?)?;
    Ok(SpectraHom { source: x.clone(), target: y.clone(), limit })
}

impl SpectraHom {
    pub fn carrier(&self) -> Carrier {
        self.limit.carrier()
    }

    pub fn map(&self, e: &Elem) -> SpectrumMap {
        let t = &self.limit.tower;
        let components = (0..t.stages.len())
            .map(|n| Arrow { src: self.source.level(n), dst: self.target.level(n), value: self.limit.leg(n, e) })
            .collect();
        SpectrumMap { components, preperiod: t.preperiod }
    }
}

/// Certificate that `ΩS = SΩ` and `(ΩS, σ)` is well-pointed and natural on a
/// suite of spectra and maps between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumCertificate {
    pub commute: bool,
    pub well_pointed: bool,
    pub natural: bool,
    pub witness: Option<String>,
}

impl SpectrumCertificate {
    pub fn passes(&self) -> bool {
        self.commute && self.well_pointed && self.natural
    }
}

/// Runs the certificate with a pointing given spectrum by spectrum; the
/// canonical one is [`Spectrum::sigma_map`].
pub fn certify_pointing(
    suite: &[Spectrum],
    maps: &[(usize, usize, SpectrumMap)],
    sigma: impl Fn(&Spectrum) -> SpectrumMap,
) -> Result<SpectrumCertificate> {
    let mut cert = SpectrumCertificate { commute: true, well_pointed: true, natural: true, witness: None };
    for (k, x) in suite.iter().enumerate() {
        if x.shift().loop_levels() != x.loop_levels().shift() {
            cert.commute = false;
            cert.witness.get_or_insert(format!("ΩS and SΩ differ on spectrum {k}"));
        }
        let osx = x.shift().loop_levels();
        let lhs = sigma(&osx);
        let rhs = sigma(x).omega_shift(&x.omega)?;
        let w = window(&[(lhs.preperiod, lhs.period()), (rhs.preperiod, rhs.period())]);
        if let Some(n) = (0..w).find(|&n| lhs.at(n) != rhs.at(n)) {
            cert.well_pointed = false;
            cert.witness.get_or_insert(format!("σ_ΩS and ΩSσ differ on spectrum {k} at level {n}"));
        }
    }
    for (a, b, f) in maps {
        let (x, y) = (&suite[*a], &suite[*b]);
        let cat = x.cat();
        let (sx, sy) = (sigma(x), sigma(y));
        let osf = f.omega_shift(&x.omega)?;
        let w = window(&[(x.preperiod, x.period()), (y.preperiod, y.period()), (f.preperiod, f.period()), (sx.preperiod, sx.period()), (sy.preperiod, sy.period())]);
        for n in 0..w {
            let lhs = cat.compose(osf.at(n), sx.at(n));
            let rhs = cat.compose(sy.at(n), f.at(n));
            if !matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r) {
                cert.natural = false;
                cert.witness.get_or_insert(format!("naturality square fails for map {a} -> {b} at level {n}"));
                break;
            }
        }
    }
    Ok(cert)
}

/// `S`, levelwise `Ω` and `σ`, with their certificate on `suite`; maps are
/// all spectrum morphisms between suite members whose target is an
/// Ω-spectrum.
pub fn spectrum_endofunctors(suite: &[Spectrum]) -> Result<SpectrumCertificate> {
    let mut maps = Vec::new();
    for (a, x) in suite.iter().enumerate() {
        for (b, y) in suite.iter().enumerate() {
            if !y.is_omega_spectrum() {
                continue;
            }
            let h = spectra_hom(x, y)?;
            for e in h.carrier().elements() {
                maps.push((a, b, h.map(&e)));
            }
        }
    }
    certify_pointing(suite, &maps, Spectrum::sigma_map)
}

/// A spectrum whose levels are ind-objects; `sigma[i]` is an element of
/// `ind_hom(levels[i], Ω levels[next(i)])`.
#[derive(Clone, Debug)]
pub struct IndSpectrum {
    pub omega: Functor,
    pub levels: Vec<IndObject>,
    pub sigma: Vec<Elem>,
    pub preperiod: usize,
}

impl IndSpectrum {
    pub fn period(&self) -> usize {
        self.levels.len() - self.preperiod
    }

    pub fn next(&self, i: usize) -> usize {
        if i + 1 < self.levels.len() {
            i + 1
        } else {
            self.preperiod
        }
    }

    pub fn level(&self, n: usize) -> &IndObject {
        &self.levels[item(self.preperiod, self.period(), n)]
    }

    /// Every structure map has a two-sided inverse in the ind-homs.
    pub fn is_omega_spectrum(&self) -> Result<bool> {
        for i in 0..self.levels.len() {
            let target = self.levels[self.next(i)].extend(&self.omega)?;
            if IsoSearch::new(&self.levels[i], &target)?.inverse(&self.sigma[i])?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Levels are isomorphic ind-objects at every stage of a joint window.
    pub fn levelwise_isomorphic(&self, other: &IndSpectrum) -> Result<bool> {
        let w = window(&[(self.preperiod, self.period()), (other.preperiod, other.period())]);
        for n in 0..w {
            if IsoSearch::new(self.level(n), other.level(n))?.find()?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `colim(X_n -> Ω X_{n+1} -> Ω² X_{n+2} -> ...)`.
pub fn spectrify_level(x: &Spectrum, n: usize) -> Result<IndObject> {
    let omega = &x.omega;
    let cat = x.cat();
    let start = (x.item(n), Functor::identity(cat));
    let (states, q, _) = unroll(start, |(i, power)| (x.item(i + 1), omega.after(power).expect("endofunctor")));
    let objects = states.iter().map(|(i, power)| power.obj(x.levels[*i])).collect();
    let transitions = states.iter().map(|(i, power)| power.apply(&x.sigma[*i])).collect::<Result<_>>()?;
    IndObject::new(cat.clone(), objects, transitions, q)
}

/// Levels `colim_k Ω^k X_{n+k}` with structure maps induced by `σ`.
pub fn spectrify(x: &Spectrum) -> Result<IndSpectrum> {
    let levels: Vec<IndObject> = (0..x.levels.len()).map(|n| spectrify_level(x, n)).collect::<Result<_>>()?;
    let mut sigma = Vec::with_capacity(levels.len());
    for (i, l) in levels.iter().enumerate() {
        let target = levels[x.next(i)].extend(&x.omega)?;
        let h = ind_hom(l, &target)?;
        // stage k of the source maps to stage k of the target by its own transition
        let k = l.preperiod;
        let t = l.transition_at(k).clone();
        sigma.push(h.from_anchor(k, &t).ok_or_else(|| Error::OracleRefused("induced σ is not compatible".into()))?);
    }
    Ok(IndSpectrum { omega: x.omega.clone(), levels, sigma, preperiod: x.preperiod })
}

/// Constant spectrum on `X` with structure maps `θ_X`.
pub fn theta_embedding(wp: &WellPointedEndo, x: ObjId) -> Result<Spectrum> {
    Spectrum::new(&wp.omega, vec![x], vec![wp.theta(x).clone()], 0)
}

/// `Σ^∞(X)_n = Σ^n X`, with structure maps the units of the adjunction.
pub fn sigma_infinity(omega: &Functor, adj: &Adjunction, x: ObjId) -> Result<Spectrum> {
    let (levels, q, _) = unroll(x, |&o| adj.sigma.obj(o));
    let sigma = levels.iter().map(|&o| adj.unit[o].clone()).collect();
    Spectrum::new(omega, levels, sigma, q)
}

/// `colim(X -> ΩΣX -> Ω²Σ²X -> ...)`.
pub fn free_loop(omega: &Functor, adj: &Adjunction, x: ObjId) -> Result<IndObject> {
    let cat = omega.src.clone();
    let start = (x, Functor::identity(&cat));
    let (states, q, _) = unroll(start, |(o, power)| (adj.sigma.obj(*o), omega.after(power).expect("endofunctor")));
    let objects = states.iter().map(|(o, power)| power.obj(*o)).collect();
    let transitions = states.iter().map(|(o, power)| power.apply(&adj.unit[*o])).collect::<Result<_>>()?;
    IndObject::new(cat, objects, transitions, q)
}

/// A colimit of a sequential diagram in `C` with its cocone.
#[derive(Clone, Debug)]
pub struct Cocone {
    pub apex: ObjId,
    /// One leg per presented stage of the diagram.
    pub legs: Vec<Arrow>,
}

/// Realises sequential colimits inside a finite category.
pub trait ColimitOracle {
    fn colimit(&self, cat: &FiniteCategory, x: &IndObject) -> Result<Cocone>;

    /// The unique `u: apex -> target` with `u o leg_i = legs[i]`.
    fn factor(&self, cat: &FiniteCategory, cocone: &Cocone, target: ObjId, legs: &[Arrow]) -> Result<Arrow> {
        let fits = |u: &Arrow| -> Result<bool> {
            for (l, g) in cocone.legs.iter().zip(legs) {
                if cat.compose(u, l)? != *g {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        match cat.enrichment() {
            Enrichment::Set => {
                let mut found = None;
                for u in cat.hom_arrows(cocone.apex, target) {
                    if fits(&u)? {
                        if found.is_some() {
                            return Err(Error::OracleRefused("factorisation is not unique".into()));
                        }
                        found = Some(u);
                    }
                }
                found.ok_or_else(|| Error::OracleRefused("cocone does not factor".into()))
            }
            Enrichment::Vect => {
                let basis = cat.hom_arrows(cocone.apex, target);
                let mut rows: Vec<Vec<Q>> = vec![Vec::new(); basis.len()];
                let mut rhs = Vec::new();
                for (l, g) in cocone.legs.iter().zip(legs) {
                    for (j, b) in basis.iter().enumerate() {
                        rows[j].extend(cat.compose(b, l)?.value.vector().expect("linear").iter().cloned());
                    }
                    rhs.extend(g.value.vector().expect("linear").iter().cloned());
                }
                if basis.is_empty() {
                    return if rhs.iter().all(|v| *v == Q::from_integer(0.into())) {
                        cat.zero_arrow(cocone.apex, target)
                    } else {
                        Err(Error::OracleRefused("cocone does not factor".into()))
                    };
                }
                let m = Matrix::from_columns(rhs.len(), &rows);
                let v = m.solve(&rhs).ok_or_else(|| Error::OracleRefused("cocone does not factor".into()))?;
                if !m.kernel().is_empty() {
                    return Err(Error::OracleRefused("factorisation is not unique".into()));
                }
                Ok(Arrow { src: cocone.apex, dst: target, value: Elem::Vector(v) })
            }
        }
    }
}

/// Colimits in a thin category: least upper bounds of the stages.
pub struct JoinOracle;

impl ColimitOracle for JoinOracle {
    fn colimit(&self, cat: &FiniteCategory, x: &IndObject) -> Result<Cocone> {
        if cat.enrichment() != Enrichment::Set || cat.objects().any(|a| cat.objects().any(|b| cat.hom_size(a, b) > 1)) {
            return Err(Error::OracleRefused("join oracle needs a thin category".into()));
        }
        let le = |a: ObjId, b: ObjId| cat.hom_size(a, b) == 1;
        let bounds: Vec<ObjId> = cat.objects().filter(|&u| x.objects.iter().all(|&s| le(s, u))).collect();
        let apex = bounds
            .iter()
            .copied()
            .find(|&u| bounds.iter().all(|&v| le(u, v)))
            .ok_or_else(|| Error::OracleRefused("the stages have no join".into()))?;
        let legs = x.objects.iter().map(|&s| cat.basis_arrow(cat.hom(s, apex)[0])).collect();
        Ok(Cocone { apex, legs })
    }
}

/// Refuses every diagram.
pub struct NoColimits;

impl ColimitOracle for NoColimits {
    fn colimit(&self, _: &FiniteCategory, _: &IndObject) -> Result<Cocone> {
        Err(Error::OracleRefused("no colimits available".into()))
    }
}

/// Spectrification followed by a realisation of the level colimits in `C`.
pub fn classical_spectrification(x: &Spectrum, oracle: &dyn ColimitOracle) -> Result<Spectrum> {
    let cat = x.cat().clone();
    let omega = &x.omega;
    let len = x.levels.len();
    let levels: Vec<IndObject> = (0..len).map(|n| spectrify_level(x, n)).collect::<Result<_>>()?;
    let cocones: Vec<Cocone> = levels.iter().map(|l| oracle.colimit(&cat, l)).collect::<Result<_>>()?;
    let mut sigma = Vec::with_capacity(len);
    for n in 0..len {
        let (l, up) = (&levels[n], &levels[x.next(n)]);
        let target = omega.obj(cocones[x.next(n)].apex);
        let legs = (0..l.objects.len())
            .map(|k| {
                let up_leg = &cocones[x.next(n)].legs[up.item(k)];
                cat.compose(&omega.apply(up_leg)?, &l.transitions[k])
            })
            .collect::<Result<Vec<_>>>()?;
        sigma.push(oracle.factor(&cat, &cocones[n], target, &legs)?);
    }
    Spectrum::new(omega, cocones.iter().map(|c| c.apex).collect(), sigma, x.preperiod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::*;
    use crate::cat::{find_left_adjoint, NatTransformation};

    fn chain3_shift() -> WellPointedEndo {
        let c = Arc::new(chain3());
        let omega = monotone_functor(&c, &[1, 2, 2]).unwrap();
        let theta = (0..3).map(|x| unique_arrow(&c, x, omega.obj(x)).unwrap()).collect();
        WellPointedEndo::new(omega.clone(), NatTransformation::pointing(&omega, theta)).unwrap()
    }

    #[test]
    fn theta_hom_in_chain3() {
        let wp = chain3_shift();
        let (a, b) = (theta_embedding(&wp, 0).unwrap(), theta_embedding(&wp, 2).unwrap());
        assert!(b.is_omega_spectrum());
        assert_eq!(spectra_hom(&a, &b).unwrap().carrier(), Carrier::Set(1));
        assert!(spectra_hom(&b, &a).is_err());
    }

    #[test]
    fn spectrify_theta_is_top_everywhere() {
        let wp = chain3_shift();
        let x = theta_embedding(&wp, 0).unwrap();
        let s = spectrify(&x).unwrap();
        assert!(s.is_omega_spectrum().unwrap());
        let top = IndObject::embed(wp.category(), 2);
        for l in &s.levels {
            assert!(IsoSearch::new(l, &top).unwrap().find().unwrap().is_some());
        }
    }

    #[test]
    fn classical_spectrification_by_joins() {
        let wp = chain3_shift();
        let x = theta_embedding(&wp, 0).unwrap();
        let c = classical_spectrification(&x, &JoinOracle).unwrap();
        assert_eq!(c.levels, vec![2]);
        assert!(c.is_omega_spectrum());
        assert!(classical_spectrification(&x, &NoColimits).is_err());
    }

    #[test]
    fn certificate_on_theta_spectra() {
        let wp = chain3_shift();
        let suite: Vec<Spectrum> = (0..3).map(|x| theta_embedding(&wp, x).unwrap()).collect();
        assert!(spectrum_endofunctors(&suite).unwrap().passes());
    }

    #[test]
    fn free_loop_and_sigma_infinity() {
        let wp = chain3_shift();
        let adj = find_left_adjoint(&wp.omega).unwrap().unwrap();
        let top = IndObject::embed(wp.category(), 2);
        assert!(IsoSearch::new(&free_loop(&wp.omega, &adj, 2).unwrap(), &top).unwrap().find().unwrap().is_some());
        let s = sigma_infinity(&wp.omega, &adj, 2).unwrap();
        let sp = spectrify(&s).unwrap();
        for n in 0..4 {
            let direct = free_loop(&wp.omega, &adj, s.level(n)).unwrap();
            assert!(IsoSearch::new(sp.level(n), &direct).unwrap().find().unwrap().is_some());
        }
    }

    #[test]
    fn shift_and_loop_commute() {
        let wp = chain3_shift();
        let adj = find_left_adjoint(&wp.omega).unwrap().unwrap();
        let s = sigma_infinity(&wp.omega, &adj, 2).unwrap();
        assert_eq!(s.shift().loop_levels(), s.loop_levels().shift());
    }
}
