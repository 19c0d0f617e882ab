//! Exhaustive enumeration of functors between small categories.
//!
//! The source is presented by a generating set of morphisms together with a
//! word for every morphism; only generator images are chosen, every other
//! image is forced. Each composition law is checked as soon as all the
//! generators it mentions have been assigned.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::{Arrow, Enrichment, FiniteCategory, MorId, ObjId};
use super::functor::Functor;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// Upper bound on the number of candidate assignments explored.
    pub max_candidates: u128,
}

impl Default for EnumLimits {
    fn default() -> Self {
        Self { max_objects: 8, max_morphisms: 64, max_candidates: 50_000_000 }
    }
}

impl EnumLimits {
    pub const ENV_VAR: &'static str = "WELLPOINT_ENUM_LIMIT";

    /// Defaults, with `max_candidates` overridden by the environment variable
    /// when it parses.
    pub fn from_env() -> Self {
        let mut l = Self::default();
        if let Some(n) = std::env::var(Self::ENV_VAR).ok().and_then(|v| v.parse().ok()) {
            l.max_candidates = n;
        }
        l
    }
}

/// A generating set and, for every morphism, a word in generators
/// (application order) whose composite is that morphism.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<MorId>,
    pub words: Vec<Vec<usize>>,
}

/// Greedy generating set: scan morphisms in order, keep those not already
/// composites of earlier choices. Identities need no generator.
pub fn presentation(cat: &FiniteCategory, marked: Option<&[MorId]>) -> Result<Presentation> {
    let mut generators: Vec<MorId> = Vec::new();
    let mut words: HashMap<MorId, Vec<usize>> = HashMap::new();
    for o in cat.objects() {
        words.insert(cat.identity_id(o), Vec::new());
    }
    let close = |generators: &[MorId], words: &mut HashMap<MorId, Vec<usize>>| -> Result<()> {
        let mut frontier: Vec<MorId> = words.keys().copied().collect();
        frontier.sort_unstable();
        while let Some(m) = frontier.pop() {
            let w = words[&m].clone();
            let ma = cat.basis_arrow(m);
            for (gi, &g) in generators.iter().enumerate() {
                if cat.morphism(g).src != ma.dst {
                    continue;
                }
                let composite = cat.compose(&cat.basis_arrow(g), &ma)?;
                let Some(label) = cat.basis_label(&composite) else { continue };
                let h = cat.morphism_id(label).expect("label exists");
                if let std::collections::hash_map::Entry::Vacant(e) = words.entry(h) {
                    let mut nw = w.clone();
                    nw.push(gi);
                    e.insert(nw);
                    frontier.push(h);
                }
            }
        }
        Ok(())
    };
    match marked {
        Some(gens) => {
            generators = gens.to_vec();
            close(&generators, &mut words)?;
            if words.len() != cat.morphism_count() {
                return Err(Error::Precondition("marked morphisms do not generate the category".into()));
            }
        }
        None => {
            for m in 0..cat.morphism_count() {
                if let std::collections::hash_map::Entry::Vacant(e) = words.entry(m) {
                    generators.push(m);
                    e.insert(vec![generators.len() - 1]);
                    close(&generators, &mut words)?;
                }
            }
        }
    }
    let words = (0..cat.morphism_count()).map(|m| words.remove(&m).expect("every morphism has a word")).collect();
    Ok(Presentation { generators, words })
}

/// Rough count of candidate assignments, used to refuse oversized searches.
pub fn estimate(src: &FiniteCategory, dst: &FiniteCategory, generators: usize) -> u128 {
    let objs = (dst.object_count() as u128).saturating_pow(src.object_count() as u32);
    let max_hom = dst
        .objects()
        .flat_map(|a| dst.objects().map(move |b| (a, b)))
        .map(|(a, b)| dst.hom_size(a, b))
        .max()
        .unwrap_or(0)
        .max(1) as u128;
    objs.saturating_mul(max_hom.saturating_pow(generators as u32))
}

/// All functors `src -> dst`, without duplicates.
pub fn enumerate_functors(
    src: &Arc<FiniteCategory>,
    dst: &Arc<FiniteCategory>,
    limits: EnumLimits,
) -> Result<Vec<Functor>> {
    enumerate_functors_with(src, dst, limits, None)
}

pub fn enumerate_functors_with(
    src: &Arc<FiniteCategory>,
    dst: &Arc<FiniteCategory>,
    limits: EnumLimits,
    marked: Option<&[MorId]>,
) -> Result<Vec<Functor>> {
    if src.enrichment() != dst.enrichment() {
        return Err(Error::EnrichmentMismatch("source and target enrichments differ".into()));
    }
    for c in [src, dst] {
        if c.object_count() > limits.max_objects || c.morphism_count() > limits.max_morphisms {
            return Err(Error::LimitExceeded {
                estimate: c.morphism_count() as u128,
                limit: limits.max_morphisms as u128,
            });
        }
    }
    if src.enrichment() == Enrichment::Vect {
        return enumerate_linear(src, dst, limits);
    }
    let pres = presentation(src, marked)?;
    let est = estimate(src, dst, pres.generators.len());
    if est > limits.max_candidates {
        return Err(Error::LimitExceeded { estimate: est, limit: limits.max_candidates });
    }
    // Level of a morphism: the largest generator index in its word (+1), 0
    // for identities. A law is checked once its level is reached.
    let level = |m: MorId| pres.words[m].iter().map(|g| g + 1).max().unwrap_or(0);
    let mut laws: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); pres.generators.len() + 1];
    for f in 0..src.morphism_count() {
        for g in 0..src.morphism_count() {
            if src.morphism(f).dst != src.morphism(g).src {
                continue;
            }
            let gf = src.compose(&src.basis_arrow(g), &src.basis_arrow(f))?;
            let h = src.morphism_id(src.basis_label(&gf).expect("set composite")).expect("label");
            let lv = level(f).max(level(g)).max(level(h));
            laws[lv].push((g, f, h));
        }
    }
    let mut out = Vec::new();
    let n = src.object_count();
    let mut objmap = vec![0usize; n];
    loop {
        search_generators(src, dst, &pres, &laws, &objmap, &mut Vec::new(), &mut out)?;
        // next object map in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            objmap[i] += 1;
            if objmap[i] < dst.object_count() {
                break;
            }
            objmap[i] = 0;
        }
        if n == 0 {
            return Ok(out);
        }
    }
}

fn image_of(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    pres: &Presentation,
    objmap: &[ObjId],
    gens: &[Arrow],
    m: MorId,
) -> Result<Arrow> {
    let word = &pres.words[m];
    if word.is_empty() {
        return Ok(dst.identity(objmap[src.morphism(m).src]));
    }
    let path: Vec<Arrow> = word.iter().map(|&g| gens[g].clone()).collect();
    dst.compose_path(&path)
}

fn search_generators(
    src: &Arc<FiniteCategory>,
    dst: &Arc<FiniteCategory>,
    pres: &Presentation,
    laws: &[Vec<(MorId, MorId, MorId)>],
    objmap: &[ObjId],
    gens: &mut Vec<Arrow>,
    out: &mut Vec<Functor>,
) -> Result<()> {
    let k = gens.len();
    // laws at the current level must hold for the partial assignment
    for &(g, f, h) in &laws[k] {
        let fi = image_of(src, dst, pres, objmap, gens, f)?;
        let gi = image_of(src, dst, pres, objmap, gens, g)?;
        let hi = image_of(src, dst, pres, objmap, gens, h)?;
        if dst.compose(&gi, &fi)? != hi {
            return Ok(());
        }
    }
    if k == pres.generators.len() {
        let on_morphisms = (0..src.morphism_count())
            .map(|m| image_of(src, dst, pres, objmap, gens, m))
            .collect::<Result<Vec<_>>>()?;
        out.push(Functor {
            src: src.clone(),
            dst: dst.clone(),
            on_objects: objmap.to_vec(),
            on_morphisms,
        });
        return Ok(());
    }
    let d = src.morphism(pres.generators[k]);
    for cand in dst.hom_arrows(objmap[d.src], objmap[d.dst]) {
        gens.push(cand);
        search_generators(src, dst, pres, laws, objmap, gens, out)?;
        gens.pop();
    }
    Ok(())
}

/// Linear functors are determined by object images exactly when every source
/// hom-space is spanned by identities; other linear sources would need a
/// polynomial solve and are refused.
fn enumerate_linear(src: &Arc<FiniteCategory>, dst: &Arc<FiniteCategory>, limits: EnumLimits) -> Result<Vec<Functor>> {
    if (0..src.morphism_count()).any(|m| src.identity_id(src.morphism(m).src) != m) {
        return Err(Error::Unsupported(
            "linear functor enumeration requires a source whose hom-spaces are spanned by identities".into(),
        ));
    }
    let est = estimate(src, dst, 0);
    if est > limits.max_candidates {
        return Err(Error::LimitExceeded { estimate: est, limit: limits.max_candidates });
    }
    let n = src.object_count();
    let mut out = Vec::new();
    let total = dst.object_count().pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let objmap: Vec<ObjId> = (0..n)
            .map(|_| {
                let o = c % dst.object_count();
                c /= dst.object_count();
                o
            })
            .collect();
        let on_morphisms = (0..src.morphism_count()).map(|m| dst.identity(objmap[src.morphism(m).src])).collect();
        out.push(Functor { src: src.clone(), dst: dst.clone(), on_objects: objmap, on_morphisms });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::instances::*;

    /// Independent count of monotone self-maps of {0,..,n-1}.
    fn monotone_maps(n: usize) -> usize {
        let mut count = 0;
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let f: Vec<usize> = (0..n)
                .map(|_| {
                    let v = c % n;
                    c /= n;
                    v
                })
                .collect();
            if (0..n).all(|i| (i..n).all(|j| f[i] <= f[j])) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn chain3_endofunctors_are_monotone_maps() {
        let c = Arc::new(chain3());
        let fs = enumerate_functors(&c, &c, EnumLimits::default()).unwrap();
        assert_eq!(monotone_maps(3), 10);
        assert_eq!(fs.len(), 10);
        assert!(fs.iter().all(|f| f.validate().is_valid()));
        let mut seen = std::collections::HashSet::new();
        assert!(fs.iter().all(|f| seen.insert(f.clone())));
    }

    #[test]
    fn terminal_source_picks_an_object() {
        let t = Arc::new(terminal());
        let c = Arc::new(chain3());
        assert_eq!(enumerate_functors(&t, &c, EnumLimits::default()).unwrap().len(), 3);
    }

    #[test]
    fn idempotent_monoid_endomorphisms() {
        let m = Arc::new(idempotent_monoid());
        // brute force: maps {1,e} -> {1,e} with 1 -> 1 that are multiplicative
        let table = [[0usize, 1], [1, 1]];
        let brute = (0..2)
            .filter(|&img_e| {
                let f = [0usize, img_e];
                (0..2).all(|a| (0..2).all(|b| f[table[a][b]] == table[f[a]][f[b]]))
            })
            .count();
        let fs = enumerate_functors(&m, &m, EnumLimits::default()).unwrap();
        assert_eq!(brute, 2);
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn refuses_when_over_limit() {
        let c = Arc::new(chain(5));
        let limits = EnumLimits { max_candidates: 10, ..EnumLimits::default() };
        assert!(matches!(enumerate_functors(&c, &c, limits), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn marked_generators_must_generate() {
        let c = chain3();
        let a = c.morphism_id("0_1").unwrap();
        assert!(presentation(&c, Some(&[a])).is_err());
        let b = c.morphism_id("1_2").unwrap();
        let p = presentation(&c, Some(&[a, b])).unwrap();
        assert_eq!(p.words[c.morphism_id("0_2").unwrap()], vec![0, 1]);
    }
}
