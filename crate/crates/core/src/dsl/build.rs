//! Elaboration of a parsed file into categories, functors, pointings and
//! spectra.
//!
//! Every object `x` gets an identity `id_x`, which may also be declared
//! explicitly. In set mode the composition table is completed with the
//! entries forced by identities, singleton homs and associativity; linear
//! tables must be given in full.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::One;

use super::syntax::*;
use crate::cat::instances::id_label;
use crate::cat::{Arrow, CategoryBuilder, Elem, Enrichment, FiniteCategory, Functor, MorId, NatTransformation, ObjId, Violation};
use crate::error::Error;
use crate::localise::WellPointedEndo;
use crate::spectra::Spectrum;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub window: Option<u64>,
    pub grade: Option<u64>,
    pub max_objects: Option<u64>,
    pub max_morphisms: Option<u64>,
}

/// Everything a file defines, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: Vec<(String, Arc<FiniteCategory>)>,
    pub functors: Vec<(String, Functor)>,
    pub nats: Vec<(String, NatTransformation)>,
    pub spectra: Vec<(String, Spectrum)>,
    pub options: Options,
}

fn find<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Workspace {
    pub fn category(&self, name: &str) -> Option<&Arc<FiniteCategory>> {
        find(&self.categories, name)
    }

    pub fn functor(&self, name: &str) -> Option<&Functor> {
        find(&self.functors, name)
    }

    pub fn nat(&self, name: &str) -> Option<&NatTransformation> {
        find(&self.nats, name)
    }

    pub fn spectrum(&self, name: &str) -> Option<&Spectrum> {
        find(&self.spectra, name)
    }

    /// The well-pointed endofunctor named by `endo` and `point`. Either may
    /// be omitted when the file has exactly one candidate.
    pub fn well_pointed(&self, endo: Option<&str>, point: Option<&str>) -> crate::Result<WellPointedEndo> {
        let theta = match point {
            Some(p) => self.nat(p).ok_or_else(|| Error::Precondition(format!("no pointing named `{p}`")))?,
            None => {
                let pointings: Vec<&NatTransformation> = self
                    .nats
                    .iter()
                    .map(|(_, t)| t)
                    .filter(|t| endo.is_none_or(|e| self.functor(e) == Some(&t.target)))
                    .collect();
                match pointings.as_slice() {
                    [t] => *t,
                    [] => return Err(Error::Precondition("the file declares no pointing".into())),
                    _ => return Err(Error::Precondition("several pointings; choose one with --point".into())),
                }
            }
        };
        if let Some(e) = endo {
            let f = self.functor(e).ok_or_else(|| Error::Precondition(format!("no functor named `{e}`")))?;
            if *f != theta.target {
                return Err(Error::Precondition(format!("the pointing does not end at `{e}`")));
            }
        }
        WellPointedEndo::new(theta.target.clone(), theta.clone())
    }

    /// The endofunctor named `endo`, or the only one in the file.
    pub fn endofunctor(&self, endo: Option<&str>) -> crate::Result<Functor> {
        if let Some(e) = endo {
            return self.functor(e).cloned().ok_or_else(|| Error::Precondition(format!("no functor named `{e}`")));
        }
        let endos: Vec<&Functor> = self.functors.iter().map(|(_, f)| f).filter(|f| f.is_endo()).collect();
        match endos.as_slice() {
            [f] => Ok((*f).clone()),
            [] => Err(Error::Precondition("the file declares no endofunctor".into())),
            _ => Err(Error::Precondition("several endofunctors; choose one with --endo".into())),
        }
    }
}

type Diag = Diagnostic;

fn diag(code: Code, span: Span, msg: impl Into<String>) -> Diag {
    Diagnostic::new(code, span, msg)
}

/// Resolves `e` to an arrow `a -> b` of `cat`.
fn arrow(cat: &FiniteCategory, e: &Expr, a: ObjId, b: ObjId) -> Result<Arrow, Diag> {
    let mut terms = Vec::new();
    for (c, n) in &e.terms {
        let m = cat.morphism_id(&n.text).ok_or_else(|| diag(Code::E002, n.span, format!("undefined morphism `{}` in `{}`", n.text, cat.name())))?;
        let d = cat.morphism(m);
        if d.src != a || d.dst != b {
            return Err(diag(
                Code::E005,
                n.span,
                format!(
                    "`{}` : {} -> {} where {} -> {} is required",
                    n.text,
                    cat.object_name(d.src),
                    cat.object_name(d.dst),
                    cat.object_name(a),
                    cat.object_name(b)
                ),
            ));
        }
        terms.push((c.clone(), cat.basis_arrow(m)));
    }
    match cat.enrichment() {
        Enrichment::Set => match terms.as_slice() {
            [(c, f)] if c.is_one() => Ok(f.clone()),
            _ => Err(diag(Code::E005, e.span, "a set-enriched morphism must be a single name")),
        },
        Enrichment::Vect => cat.combine(a, b, &terms).map_err(|err| diag(Code::E005, e.span, err.to_string())),
    }
}

fn violation_text(v: &Violation) -> String {
    match v {
        Violation::MissingComposite { g, f } => format!("missing composite {g} . {f}"),
        Violation::Associativity { h, g, f } => format!("({h} . {g}) . {f} != {h} . ({g} . {f})"),
        Violation::LeftIdentity { f } => format!("identity law fails on the left of `{f}`"),
        Violation::RightIdentity { f } => format!("identity law fails on the right of `{f}`"),
    }
}

struct SetTable {
    src: Vec<ObjId>,
    dst: Vec<ObjId>,
    entries: HashMap<(MorId, MorId), MorId>,
}

impl SetTable {
    /// Adds `g . f = h`; `Err` carries the conflicting previous value.
    fn insert(&mut self, g: MorId, f: MorId, h: MorId) -> Result<bool, MorId> {
        match self.entries.get(&(g, f)) {
            Some(&old) if old != h => Err(old),
            Some(_) => Ok(false),
            None => {
                self.entries.insert((g, f), h);
                Ok(true)
            }
        }
    }

    /// Closes the table under `h . (g . f) = (h . g) . f`. Returns the first
    /// triple whose two bracketings disagree.
    fn saturate(&mut self) -> Result<(), (MorId, MorId, MorId)> {
        let n = self.src.len();
        let (src, dst) = (self.src.clone(), self.dst.clone());
        loop {
            let mut changed = false;
            for f in 0..n {
                for g in (0..n).filter(|&g| src[g] == dst[f]) {
                    for h in (0..n).filter(|&h| src[h] == dst[g]) {
                        let gf = self.entries.get(&(g, f)).copied();
                        let hg = self.entries.get(&(h, g)).copied();
                        let left = gf.and_then(|gf| self.entries.get(&(h, gf)).copied());
                        let right = hg.and_then(|hg| self.entries.get(&(hg, f)).copied());
                        match (left, right) {
                            (Some(l), Some(r)) if l != r => return Err((h, g, f)),
                            (Some(l), None) => {
                                if let Some(hg) = hg {
                                    changed |= self.insert(hg, f, l).map_err(|_| (h, g, f))?;
                                }
                            }
                            (None, Some(r)) => {
                                if let Some(gf) = gf {
                                    changed |= self.insert(h, gf, r).map_err(|_| (h, g, f))?;
                                }
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

fn category(decl: &CategoryDecl) -> Result<FiniteCategory, Diag> {
    let enrichment = match decl.enrichment {
        EnrichmentTag::Set => Enrichment::Set,
        EnrichmentTag::Vect => Enrichment::Vect,
    };
    let mut b = CategoryBuilder::new(decl.name.text.clone(), enrichment);
    let mut spans: BTreeMap<String, Span> = BTreeMap::new();
    for o in &decl.objects {
        if b.object_id(&o.text).is_some() {
            return Err(diag(Code::E006, o.span, format!("object `{}` declared twice", o.text)));
        }
        b.object(o.text.clone());
    }
    let obj = |b: &CategoryBuilder, n: &Name| b.object_id(&n.text).ok_or_else(|| diag(Code::E002, n.span, format!("undefined object `{}`", n.text)));
    let mut identity_given = vec![false; decl.objects.len()];
    for (i, o) in &decl.identities {
        let x = obj(&b, o)?;
        if spans.insert(i.text.clone(), i.span).is_some() {
            return Err(diag(Code::E006, i.span, format!("morphism `{}` declared twice", i.text)));
        }
        if std::mem::replace(&mut identity_given[x], true) {
            return Err(diag(Code::E006, i.span, format!("`{}` has two identities", o.text)));
        }
        b.identity(i.text.clone(), x);
    }
    for m in &decl.morphisms {
        if spans.insert(m.name.text.clone(), m.name.span).is_some() {
            return Err(diag(Code::E006, m.name.span, format!("morphism `{}` declared twice", m.name.text)));
        }
        let (s, t) = (obj(&b, &m.src)?, obj(&b, &m.dst)?);
        let implicit = (0..decl.objects.len()).find(|&o| !identity_given[o] && id_label(&decl.objects[o].text) == m.name.text);
        if let Some(o) = implicit {
            if s != o || t != o {
                return Err(diag(Code::E005, m.name.span, format!("`{}` is reserved for the identity of `{}`", m.name.text, decl.objects[o].text)));
            }
            identity_given[o] = true;
            b.identity(m.name.text.clone(), o);
        } else {
            b.morphism(m.name.text.clone(), s, t);
        }
    }
    for (o, given) in identity_given.iter().enumerate() {
        if !given {
            let label = id_label(&decl.objects[o].text);
            if spans.contains_key(&label) {
                return Err(diag(Code::E006, spans[&label], format!("`{label}` clashes with an implicit identity")));
            }
            b.identity(label, o);
        }
    }
    let mor = |b: &CategoryBuilder, n: &Name| b.morphism_id(&n.text).ok_or_else(|| diag(Code::E002, n.span, format!("undefined morphism `{}`", n.text)));
    let count = b.morphism_count();
    let data: Vec<(ObjId, ObjId)> = (0..count).map(|m| (b.morphism_data(m).src, b.morphism_data(m).dst)).collect();
    let hom = |s: ObjId, t: ObjId| -> Vec<MorId> { (0..count).filter(|&m| data[m] == (s, t)).collect() };
    let mut entries: Vec<(MorId, MorId, &Composition)> = Vec::new();
    for k in &decl.compositions {
        let (g, f) = (mor(&b, &k.g)?, mor(&b, &k.f)?);
        if data[f].1 != data[g].0 {
            return Err(diag(Code::E005, k.f.span, format!("`{}` and `{}` are not composable", k.g.text, k.f.text)));
        }
        entries.push((g, f, k));
    }
    match enrichment {
        Enrichment::Set => {
            let mut table = SetTable { src: data.iter().map(|d| d.0).collect(), dst: data.iter().map(|d| d.1).collect(), entries: HashMap::new() };
            for m in 0..count {
                let (s, t) = data[m];
                table.insert(m, b.identity_of(s).expect("identity"), m).expect("fresh table");
                table.insert(b.identity_of(t).expect("identity"), m, m).expect("fresh table");
            }
            let labels: Vec<String> = (0..count).map(|m| b.morphism_data(m).label.clone()).collect();
            let label = |m: MorId| labels[m].clone();
            for (g, f, k) in &entries {
                let cat_view = PartialView { b: &b, count };
                let h = arrow_in_builder(&cat_view, &k.result, data[*f].0, data[*g].1)?;
                if let Err(old) = table.insert(*g, *f, h) {
                    return Err(diag(Code::E003, k.result.span, format!("{} . {} is already {}", k.g.text, k.f.text, label(old))));
                }
            }
            for f in 0..count {
                for g in (0..count).filter(|&g| data[g].0 == data[f].1) {
                    if let [h] = hom(data[f].0, data[g].1).as_slice() {
                        table.entries.entry((g, f)).or_insert(*h);
                    }
                }
            }
            if let Err((h, g, f)) = table.saturate() {
                return Err(diag(Code::E003, decl.name.span, format!("associativity forces two values for {} . {} . {}", label(h), label(g), label(f))));
            }
            let mut missing: Vec<String> = Vec::new();
            for f in 0..count {
                for g in (0..count).filter(|&g| data[g].0 == data[f].1) {
                    match table.entries.get(&(g, f)) {
                        Some(&h) => b.compose_to(g, f, h).map_err(|e| diag(Code::E003, decl.name.span, e.to_string()))?,
                        None => missing.push(format!("{} . {}", label(g), label(f))),
                    }
                }
            }
            if !missing.is_empty() {
                return Err(diag(Code::E004, decl.name.span, format!("composition table is incomplete: {}", missing.join(", "))));
            }
        }
        Enrichment::Vect => {
            b.fill_identity_composites().map_err(|e| diag(Code::E003, decl.name.span, e.to_string()))?;
            for (g, f, k) in &entries {
                let (s, t) = (data[*f].0, data[*g].1);
                let hs = hom(s, t);
                let mut terms = Vec::new();
                for (c, n) in &k.result.terms {
                    let m = mor(&b, n)?;
                    if !hs.contains(&m) {
                        return Err(diag(Code::E005, n.span, format!("`{}` is not in the hom of {} . {}", n.text, k.g.text, k.f.text)));
                    }
                    terms.push((c.clone(), m));
                }
                b.compose_linear(*g, *f, &terms).map_err(|e| diag(Code::E003, k.result.span, e.to_string()))?;
            }
            let missing: Vec<String> = (0..count)
                .flat_map(|f| (0..count).map(move |g| (g, f)))
                .filter(|&(g, f)| data[g].0 == data[f].1 && b.composite(g, f).is_none())
                .map(|(g, f)| format!("{} . {}", b.morphism_data(g).label, b.morphism_data(f).label))
                .collect();
            if !missing.is_empty() {
                return Err(diag(Code::E004, decl.name.span, format!("composition table is incomplete: {}", missing.join(", "))));
            }
        }
    }
    let cat = b.build().map_err(|e| diag(Code::E005, decl.name.span, e.to_string()))?;
    let report = cat.validate();
    if let Some(v) = report.violations.first() {
        return Err(diag(Code::E003, decl.name.span, violation_text(v)));
    }
    Ok(cat)
}

struct PartialView<'a> {
    b: &'a CategoryBuilder,
    count: usize,
}

/// A set-mode result expression resolved against a builder.
fn arrow_in_builder(v: &PartialView<'_>, e: &Expr, a: ObjId, t: ObjId) -> Result<MorId, Diag> {
    let [(c, n)] = e.terms.as_slice() else {
        return Err(diag(Code::E005, e.span, "a set-enriched composite must be a single name"));
    };
    if !c.is_one() {
        return Err(diag(Code::E005, e.span, "a set-enriched composite must be a single name"));
    }
    let m = v.b.morphism_id(&n.text).filter(|&m| m < v.count).ok_or_else(|| diag(Code::E002, n.span, format!("undefined morphism `{}`", n.text)))?;
    let d = v.b.morphism_data(m);
    if d.src != a || d.dst != t {
        return Err(diag(Code::E005, n.span, format!("`{}` has the wrong type for this composite", n.text)));
    }
    Ok(m)
}

fn functor(ws: &Workspace, decl: &FunctorDecl) -> Result<Functor, Diag> {
    let get = |n: &Name| ws.category(&n.text).cloned().ok_or_else(|| diag(Code::E002, n.span, format!("undefined category `{}`", n.text)));
    let (src, dst) = (get(&decl.src)?, get(&decl.dst)?);
    if src.enrichment() != dst.enrichment() {
        return Err(diag(Code::E005, decl.dst.span, "source and target have different enrichments"));
    }
    let mut on_objects: Vec<Option<ObjId>> = vec![None; src.object_count()];
    for (a, b) in &decl.objects {
        let x = src.object_id(&a.text).ok_or_else(|| diag(Code::E002, a.span, format!("undefined object `{}` in `{}`", a.text, src.name())))?;
        let y = dst.object_id(&b.text).ok_or_else(|| diag(Code::E002, b.span, format!("undefined object `{}` in `{}`", b.text, dst.name())))?;
        if on_objects[x].replace(y).is_some() {
            return Err(diag(Code::E006, a.span, format!("object `{}` mapped twice", a.text)));
        }
    }
    let on_objects: Vec<ObjId> = on_objects
        .iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| diag(Code::E004, decl.name.span, format!("no image for object `{}`", src.object_name(x)))))
        .collect::<Result<_, _>>()?;
    let mut on_morphisms: Vec<Option<Arrow>> = vec![None; src.morphism_count()];
    for o in src.objects() {
        on_morphisms[src.identity_id(o)] = Some(dst.identity(on_objects[o]));
    }
    let mut given = vec![false; src.morphism_count()];
    for (a, e) in &decl.morphisms {
        let m = src.morphism_id(&a.text).ok_or_else(|| diag(Code::E002, a.span, format!("undefined morphism `{}` in `{}`", a.text, src.name())))?;
        if std::mem::replace(&mut given[m], true) {
            return Err(diag(Code::E006, a.span, format!("morphism `{}` mapped twice", a.text)));
        }
        let d = src.morphism(m);
        let image = arrow(&dst, e, on_objects[d.src], on_objects[d.dst])?;
        if on_morphisms[m].as_ref().is_some_and(|old| *old != image) {
            return Err(diag(Code::E005, e.span, "identities must map to identities"));
        }
        on_morphisms[m] = Some(image);
    }
    let on_morphisms = on_morphisms
        .into_iter()
        .enumerate()
        .map(|(m, a)| a.ok_or_else(|| diag(Code::E004, decl.name.span, format!("no image for morphism `{}`", src.morphism(m).label))))
        .collect::<Result<_, _>>()?;
    let f = Functor { src, dst, on_objects, on_morphisms };
    if let Some(v) = f.validate().violations.first() {
        return Err(diag(Code::E005, decl.name.span, format!("not a functor: {v:?}")));
    }
    Ok(f)
}

fn nat(ws: &Workspace, decl: &NatDecl) -> Result<NatTransformation, Diag> {
    let side = |n: &Name| -> Result<Option<Functor>, Diag> {
        if n.text == "id" {
            return Ok(None);
        }
        ws.functor(&n.text).cloned().map(Some).ok_or_else(|| diag(Code::E002, n.span, format!("undefined functor `{}`", n.text)))
    };
    let (s, t) = (side(&decl.source)?, side(&decl.target)?);
    let (source, target) = match (s, t) {
        (Some(s), Some(t)) => (s, t),
        (None, Some(t)) => (Functor::identity(&t.src), t),
        (Some(s), None) => (s.clone(), Functor::identity(&s.src)),
        (None, None) => return Err(diag(Code::E005, decl.source.span, "a transformation id => id needs a named functor")),
    };
    if source.src.name() != target.src.name() || source.dst.name() != target.dst.name() {
        return Err(diag(Code::E005, decl.target.span, "source and target functors are not parallel"));
    }
    let (c, d) = (source.src.clone(), source.dst.clone());
    let mut comps: Vec<Option<Arrow>> = vec![None; c.object_count()];
    for (o, e) in &decl.components {
        let x = c.object_id(&o.text).ok_or_else(|| diag(Code::E002, o.span, format!("undefined object `{}`", o.text)))?;
        let a = arrow(&d, e, source.obj(x), target.obj(x))?;
        if comps[x].replace(a).is_some() {
            return Err(diag(Code::E006, o.span, format!("component at `{}` given twice", o.text)));
        }
    }
    let components = comps
        .into_iter()
        .enumerate()
        .map(|(x, a)| a.ok_or_else(|| diag(Code::E004, decl.name.span, format!("no component at `{}`", c.object_name(x)))))
        .collect::<Result<_, _>>()?;
    let t = NatTransformation { source, target, components };
    if let Some(v) = t.validate().violations.first() {
        return Err(diag(Code::E005, decl.name.span, format!("not natural: {v:?}")));
    }
    Ok(t)
}

fn spectrum(ws: &Workspace, decl: &SpectrumDecl) -> Result<Spectrum, Diag> {
    let omega = ws.functor(&decl.endo.text).ok_or_else(|| diag(Code::E002, decl.endo.span, format!("undefined functor `{}`", decl.endo.text)))?;
    if !omega.is_endo() {
        return Err(diag(Code::E005, decl.endo.span, format!("`{}` is not an endofunctor", decl.endo.text)));
    }
    let c = &omega.src;
    let levels: Vec<ObjId> = decl
        .levels
        .iter()
        .map(|n| c.object_id(&n.text).ok_or_else(|| diag(Code::E002, n.span, format!("undefined object `{}`", n.text))))
        .collect::<Result<_, _>>()?;
    if decl.sigma.len() != levels.len() || decl.preperiod >= levels.len() {
        return Err(diag(Code::E005, decl.name.span, "need one structure map per level and a preperiod below the level count"));
    }
    let next = |i: usize| if i + 1 < levels.len() { i + 1 } else { decl.preperiod };
    let sigma = decl
        .sigma
        .iter()
        .enumerate()
        .map(|(i, e)| arrow(c, e, levels[i], omega.obj(levels[next(i)])))
        .collect::<Result<_, _>>()?;
    Spectrum::new(omega, levels, sigma, decl.preperiod).map_err(|e| diag(Code::E005, decl.name.span, e.to_string()))
}

fn option(opts: &mut Options, decl: &OptionDecl) -> Result<(), Diag> {
    let slot = match decl.key.text.as_str() {
        "window" => &mut opts.window,
        "grade" => &mut opts.grade,
        "max_objects" => &mut opts.max_objects,
        "max_morphisms" => &mut opts.max_morphisms,
        k => return Err(diag(Code::E005, decl.key.span, format!("unknown option `{k}`"))),
    };
    if slot.replace(decl.value).is_some() {
        return Err(diag(Code::E006, decl.key.span, format!("option `{}` set twice", decl.key.text)));
    }
    Ok(())
}

/// Elaborates every item; on failure returns all diagnostics in source order.
pub fn build(file: &SpecFile) -> Result<Workspace, Vec<Diagnostic>> {
    let mut ws = Workspace::default();
    let mut errors = Vec::new();
    let mut taken: BTreeMap<(u8, String), Span> = BTreeMap::new();
    for item in &file.items {
        let (kind, name) = match item {
            Item::Category(c) => (0, &c.name),
            Item::Functor(f) => (1, &f.name),
            Item::Nat(n) => (1, &n.name),
            Item::Spectrum(s) => (1, &s.name),
            Item::Option(o) => (2, &o.key),
        };
        if kind < 2 && taken.insert((kind, name.text.clone()), name.span).is_some() {
            errors.push(diag(Code::E006, name.span, format!("`{}` declared twice", name.text)));
            continue;
        }
        let result = match item {
            Item::Category(c) => category(c).map(|cat| ws.categories.push((c.name.text.clone(), Arc::new(cat)))),
            Item::Functor(f) => functor(&ws, f).map(|x| ws.functors.push((f.name.text.clone(), x))),
            Item::Nat(n) => nat(&ws, n).map(|x| ws.nats.push((n.name.text.clone(), x))),
            Item::Spectrum(s) => spectrum(&ws, s).map(|x| ws.spectra.push((s.name.text.clone(), x))),
            Item::Option(o) => option(&mut ws.options, o),
        };
        if let Err(d) = result {
            errors.push(d);
        }
    }
    if errors.is_empty() {
        Ok(ws)
    } else {
        errors.sort_by_key(|d| (d.span.line, d.span.col));
        Err(errors)
    }
}

/// Parses and elaborates `text`.
pub fn load(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    build(&parse(text).map_err(|d| vec![d])?)
}

fn name(text: &str) -> Name {
    Name { text: text.to_string(), span: Span::default() }
}

fn expr_of(cat: &FiniteCategory, f: &Arrow) -> Expr {
    let hom = cat.hom(f.src, f.dst);
    let terms = match &f.value {
        Elem::Point(i) => vec![(num::one(), name(&cat.morphism(hom[*i]).label))],
        Elem::Vector(v) => v
            .iter()
            .enumerate()
            .filter(|(_, c)| !num::Zero::is_zero(*c))
            .map(|(i, c)| (c.clone(), name(&cat.morphism(hom[i]).label)))
            .collect(),
    };
    Expr { terms, span: Span::default() }
}

fn word_like(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '∞')
}

/// The declaration of `cat`, with composites involving an identity
/// omitted. Identities named `id_<object>` stay in morphism order.
pub fn category_decl(cat: &FiniteCategory) -> CategoryDecl {
    let objects: Vec<Name> = cat.objects().map(|o| name(cat.object_name(o))).collect();
    let ids: Vec<MorId> = cat.objects().map(|o| cat.identity_id(o)).collect();
    let implicit = |m: MorId| ids.iter().position(|&i| i == m).is_none_or(|o| cat.morphism(m).label == id_label(cat.object_name(o)));
    let identities = cat
        .objects()
        .filter(|&o| !implicit(ids[o]))
        .map(|o| (name(&cat.morphism(ids[o]).label), name(cat.object_name(o))))
        .collect();
    let morphisms = (0..cat.morphism_count())
        .filter(|&m| implicit(m))
        .map(|m| {
            let d = cat.morphism(m);
            MorphismDecl { name: name(&d.label), src: name(cat.object_name(d.src)), dst: name(cat.object_name(d.dst)) }
        })
        .collect();
    let mut compositions = Vec::new();
    for f in (0..cat.morphism_count()).filter(|f| !ids.contains(f)) {
        for g in (0..cat.morphism_count()).filter(|g| !ids.contains(g) && cat.morphism(*g).src == cat.morphism(f).dst) {
            if let Ok(h) = cat.compose(&cat.basis_arrow(g), &cat.basis_arrow(f)) {
                compositions.push(Composition { g: name(&cat.morphism(g).label), f: name(&cat.morphism(f).label), result: expr_of(cat, &h) });
            }
        }
    }
    let enrichment = match cat.enrichment() {
        Enrichment::Set => EnrichmentTag::Set,
        Enrichment::Vect => EnrichmentTag::Vect,
    };
    CategoryDecl { name: name(cat.name()), enrichment, objects, identities, morphisms, compositions }
}

/// Whether every name in `file` survives printing and parsing.
pub fn printable(file: &SpecFile) -> bool {
    let mut names: Vec<&str> = Vec::new();
    let mut morphisms: Vec<&str> = Vec::new();
    for item in &file.items {
        match item {
            Item::Category(c) => {
                names.push(&c.name.text);
                names.extend(c.objects.iter().map(|o| o.text.as_str()));
                morphisms.extend(c.identities.iter().map(|(i, _)| i.text.as_str()));
                morphisms.extend(c.morphisms.iter().map(|m| m.name.text.as_str()));
            }
            Item::Functor(f) => names.push(&f.name.text),
            Item::Nat(n) => names.push(&n.name.text),
            Item::Spectrum(s) => names.push(&s.name.text),
            Item::Option(_) => {}
        }
    }
    names.iter().chain(&morphisms).all(|n| word_like(n)) && !morphisms.contains(&"0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(text: &str) -> Vec<Code> {
        load(text).unwrap_err().into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn set_tables_saturate() {
        let ws = load("category c : set {\n  objects 0, 1, 2;\n  morphism f : 0 -> 1;\n  morphism g : 1 -> 2;\n  morphism h : 0 -> 2;\n}\n").unwrap();
        let c = ws.category("c").unwrap();
        let gf = c.compose(&c.basis_arrow(c.morphism_id("g").unwrap()), &c.basis_arrow(c.morphism_id("f").unwrap())).unwrap();
        assert_eq!(c.describe(&gf), "h");
    }

    #[test]
    fn idempotent_needs_its_square() {
        assert_eq!(codes("category m : set {\n  objects x;\n  morphism e : x -> x;\n}\n"), [Code::E004]);
        assert!(load("category m : set {\n  objects x;\n  morphism e : x -> x;\n  compose e . e = e;\n}\n").is_ok());
    }

    #[test]
    fn diagnostics() {
        assert_eq!(codes("category m : set {\n  objects x, x;\n}\n"), [Code::E006]);
        assert_eq!(codes("category m : set {\n  objects x;\n  morphism e : x -> y;\n}\n"), [Code::E002]);
        assert_eq!(
            codes("category m : set {\n  objects x;\n  morphism e : x -> x;\n  compose e . e = e;\n  compose e . e = id_x;\n}\n"),
            [Code::E003]
        );
        assert_eq!(codes("category m : vect {\n  objects x;\n  morphism e : x -> x;\n}\n"), [Code::E004]);
        assert_eq!(codes("option depth = 2;\n"), [Code::E005]);
    }

    #[test]
    fn pointing_from_text() {
        let text = "category m : set {\n  objects x;\n  morphism e : x -> x;\n  compose e . e = e;\n}\n\nfunctor Om : m -> m {\n  object x -> x;\n  morphism e -> e;\n}\n\nnat theta : id => Om {\n  x : e;\n}\n";
        let wp = load(text).unwrap().well_pointed(None, None).unwrap();
        assert_eq!(wp.category().describe(wp.theta(0)), "e");
    }

    #[test]
    fn declarations_round_trip() {
        for (_, wp) in crate::corpus::all() {
            let cat = wp.category();
            let file = SpecFile { items: vec![Item::Category(category_decl(cat))] };
            let back = if printable(&file) {
                load(&super::super::print(&file)).unwrap()
            } else {
                build(&file).unwrap()
            };
            assert_eq!(**back.category(cat.name()).unwrap(), **cat);
        }
    }
}
