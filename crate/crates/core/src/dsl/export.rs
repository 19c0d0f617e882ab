//! Versioned JSON interchange and Graphviz output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::build::{category_decl, Workspace};
use super::syntax::*;
use crate::cat::{Enrichment, FiniteCategory, Functor};
use crate::linalg::{fmt_q, parse_q};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coefficient: String,
    pub morphism: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityJson {
    pub name: String,
    pub object: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionJson {
    pub g: String,
    pub f: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub name: String,
    pub enrichment: Enrichment,
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityJson>,
    pub morphisms: Vec<MorphismJson>,
    pub compositions: Vec<CompositionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatJson {
    pub name: String,
    pub source: String,
    pub target: String,
    pub components: BTreeMap<String, Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumJson {
    pub name: String,
    pub endo: String,
    pub levels: Vec<String>,
    pub sigma: Vec<Vec<Term>>,
    pub preperiod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    pub categories: Vec<CategoryJson>,
    #[serde(default)]
    pub functors: Vec<FunctorJson>,
    #[serde(default)]
    pub nats: Vec<NatJson>,
    #[serde(default)]
    pub spectra: Vec<SpectrumJson>,
    #[serde(default)]
    pub options: BTreeMap<String, u64>,
}

fn terms(e: &Expr) -> Vec<Term> {
    e.terms.iter().map(|(c, n)| Term { coefficient: fmt_q(c), morphism: n.text.clone() }).collect()
}

fn name(text: &str) -> Name {
    Name { text: text.to_string(), span: Span::default() }
}

fn expr(ts: &[Term]) -> std::result::Result<Expr, Diagnostic> {
    let terms = ts
        .iter()
        .map(|t| {
            parse_q(&t.coefficient)
                .map(|c| (c, name(&t.morphism)))
                .ok_or_else(|| Diagnostic::new(Code::E005, Span::default(), format!("bad coefficient `{}`", t.coefficient)))
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(Expr { terms, span: Span::default() })
}

impl Document {
    pub fn from_spec(file: &SpecFile) -> Self {
        let mut doc = Document {
            schema_version: SCHEMA_VERSION,
            categories: Vec::new(),
            functors: Vec::new(),
            nats: Vec::new(),
            spectra: Vec::new(),
            options: BTreeMap::new(),
        };
        for item in &file.items {
            match item {
                Item::Category(c) => doc.categories.push(CategoryJson {
                    name: c.name.text.clone(),
                    enrichment: match c.enrichment {
                        EnrichmentTag::Set => Enrichment::Set,
                        EnrichmentTag::Vect => Enrichment::Vect,
                    },
                    objects: c.objects.iter().map(|o| o.text.clone()).collect(),
                    identities: c.identities.iter().map(|(i, o)| IdentityJson { name: i.text.clone(), object: o.text.clone() }).collect(),
                    morphisms: c
                        .morphisms
                        .iter()
                        .map(|m| MorphismJson { name: m.name.text.clone(), src: m.src.text.clone(), dst: m.dst.text.clone() })
                        .collect(),
                    compositions: c
                        .compositions
                        .iter()
                        .map(|k| CompositionJson { g: k.g.text.clone(), f: k.f.text.clone(), result: terms(&k.result) })
                        .collect(),
                }),
                Item::Functor(f) => doc.functors.push(FunctorJson {
                    name: f.name.text.clone(),
                    source: f.src.text.clone(),
                    target: f.dst.text.clone(),
                    objects: f.objects.iter().map(|(a, b)| (a.text.clone(), b.text.clone())).collect(),
                    morphisms: f.morphisms.iter().map(|(a, e)| (a.text.clone(), terms(e))).collect(),
                }),
                Item::Nat(n) => doc.nats.push(NatJson {
                    name: n.name.text.clone(),
                    source: n.source.text.clone(),
                    target: n.target.text.clone(),
                    components: n.components.iter().map(|(o, e)| (o.text.clone(), terms(e))).collect(),
                }),
                Item::Spectrum(s) => doc.spectra.push(SpectrumJson {
                    name: s.name.text.clone(),
                    endo: s.endo.text.clone(),
                    levels: s.levels.iter().map(|l| l.text.clone()).collect(),
                    sigma: s.sigma.iter().map(terms).collect(),
                    preperiod: s.preperiod,
                }),
                Item::Option(o) => {
                    doc.options.insert(o.key.text.clone(), o.value);
                }
            }
        }
        doc
    }

    /// The equivalent source file. Items come out grouped by kind, which is
    /// always a valid declaration order.
    pub fn to_spec(&self) -> std::result::Result<SpecFile, Diagnostic> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Diagnostic::new(
                Code::E005,
                Span::default(),
                format!("unsupported schema_version {} (expected {SCHEMA_VERSION})", self.schema_version),
            ));
        }
        let mut items = Vec::new();
        for c in &self.categories {
            items.push(Item::Category(CategoryDecl {
                name: name(&c.name),
                enrichment: match c.enrichment {
                    Enrichment::Set => EnrichmentTag::Set,
                    Enrichment::Vect => EnrichmentTag::Vect,
                },
                objects: c.objects.iter().map(|o| name(o)).collect(),
                identities: c.identities.iter().map(|i| (name(&i.name), name(&i.object))).collect(),
                morphisms: c.morphisms.iter().map(|m| MorphismDecl { name: name(&m.name), src: name(&m.src), dst: name(&m.dst) }).collect(),
                compositions: c
                    .compositions
                    .iter()
                    .map(|k| Ok(Composition { g: name(&k.g), f: name(&k.f), result: expr(&k.result)? }))
                    .collect::<std::result::Result<_, _>>()?,
            }));
        }
        for f in &self.functors {
            items.push(Item::Functor(FunctorDecl {
                name: name(&f.name),
                src: name(&f.source),
                dst: name(&f.target),
                objects: f.objects.iter().map(|(a, b)| (name(a), name(b))).collect(),
                morphisms: f.morphisms.iter().map(|(a, t)| Ok((name(a), expr(t)?))).collect::<std::result::Result<_, _>>()?,
            }));
        }
        for n in &self.nats {
            items.push(Item::Nat(NatDecl {
                name: name(&n.name),
                source: name(&n.source),
                target: name(&n.target),
                components: n.components.iter().map(|(o, t)| Ok((name(o), expr(t)?))).collect::<std::result::Result<_, _>>()?,
            }));
        }
        for s in &self.spectra {
            items.push(Item::Spectrum(SpectrumDecl {
                name: name(&s.name),
                endo: name(&s.endo),
                levels: s.levels.iter().map(|l| name(l)).collect(),
                sigma: s.sigma.iter().map(|t| expr(t)).collect::<std::result::Result<_, _>>()?,
                preperiod: s.preperiod,
            }));
        }
        for (k, v) in &self.options {
            items.push(Item::Option(OptionDecl { key: name(k), value: *v }));
        }
        Ok(SpecFile { items })
    }
}

pub fn to_json(file: &SpecFile) -> String {
    serde_json::to_string_pretty(&Document::from_spec(file)).expect("document serialises") + "\n"
}

pub fn from_json(text: &str) -> std::result::Result<SpecFile, Diagnostic> {
    let doc: Document = serde_json::from_str(text).map_err(|e| {
        let code = if e.is_syntax() || e.is_eof() { Code::E001 } else { Code::E005 };
        Diagnostic::new(code, Span { line: e.line(), col: e.column() }, e.to_string())
    })?;
    doc.to_spec()
}

fn functor_name(ws: &Workspace, f: &Functor) -> String {
    ws.functors.iter().find(|(_, g)| g == f).map(|(n, _)| n.clone()).unwrap_or_else(|| "id".into())
}

fn arrow_expr(cat: &FiniteCategory, f: &crate::cat::Arrow) -> Expr {
    let hom = cat.hom(f.src, f.dst);
    let terms = match &f.value {
        crate::cat::Elem::Point(i) => vec![(num::one(), name(&cat.morphism(hom[*i]).label))],
        crate::cat::Elem::Vector(v) => v
            .iter()
            .enumerate()
            .filter(|(_, c)| !num::Zero::is_zero(*c))
            .map(|(i, c)| (c.clone(), name(&cat.morphism(hom[i]).label)))
            .collect(),
    };
    Expr { terms, span: Span::default() }
}

/// The fully elaborated form of a workspace: complete composition tables,
/// explicit identities, every functor and component spelled out.
pub fn elaborate(ws: &Workspace) -> SpecFile {
    let mut items = Vec::new();
    for (n, c) in &ws.categories {
        let mut decl = category_decl(c);
        decl.name.text = n.clone();
        items.push(Item::Category(decl));
    }
    for (n, f) in &ws.functors {
        let (src, dst) = (&f.src, &f.dst);
        let ids: Vec<usize> = src.objects().map(|o| src.identity_id(o)).collect();
        items.push(Item::Functor(FunctorDecl {
            name: name(n),
            src: name(src.name()),
            dst: name(dst.name()),
            objects: src.objects().map(|o| (name(src.object_name(o)), name(dst.object_name(f.obj(o))))).collect(),
            morphisms: (0..src.morphism_count())
                .filter(|m| !ids.contains(m))
                .map(|m| (name(&src.morphism(m).label), arrow_expr(dst, f.basis_image(m))))
                .collect(),
        }));
    }
    for (n, t) in &ws.nats {
        let c = &t.source.src;
        items.push(Item::Nat(NatDecl {
            name: name(n),
            source: name(&functor_name(ws, &t.source)),
            target: name(&functor_name(ws, &t.target)),
            components: c.objects().map(|o| (name(c.object_name(o)), arrow_expr(&t.source.dst, t.component(o)))).collect(),
        }));
    }
    for (n, s) in &ws.spectra {
        let c = s.cat();
        items.push(Item::Spectrum(SpectrumDecl {
            name: name(n),
            endo: name(&functor_name(ws, &s.omega)),
            levels: s.levels.iter().map(|&l| name(c.object_name(l))).collect(),
            sigma: s.sigma.iter().map(|a| arrow_expr(c, a)).collect(),
            preperiod: s.preperiod,
        }));
    }
    let o = &ws.options;
    for (k, v) in [("window", o.window), ("grade", o.grade), ("max_objects", o.max_objects), ("max_morphisms", o.max_morphisms)] {
        if let Some(v) = v {
            items.push(Item::Option(OptionDecl { key: name(k), value: v }));
        }
    }
    SpecFile { items }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per object and one edge per basis morphism, identities
/// included.
pub fn dot(cat: &FiniteCategory) -> String {
    let mut out = format!("digraph {} {{\n", quote(cat.name()));
    for o in cat.objects() {
        out.push_str(&format!("  {};\n", quote(cat.object_name(o))));
    }
    for m in 0..cat.morphism_count() {
        let d = cat.morphism(m);
        out.push_str(&format!("  {} -> {} [label={}];\n", quote(cat.object_name(d.src)), quote(cat.object_name(d.dst)), quote(&d.label)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{load, parse, print};

    const TEXT: &str = "category m : vect {\n  objects x;\n  morphism e : x -> x;\n  compose e . e = e;\n}\n\nfunctor Om : m -> m {\n  object x -> x;\n  morphism e -> e;\n}\n\nnat theta : id => Om {\n  x : 1/2*e + id_x;\n}\n\noption window = 2;\n";

    #[test]
    fn json_round_trip() {
        let spec = parse(TEXT).unwrap();
        let json = to_json(&spec);
        assert!(json.contains("\"schema_version\": 1"));
        let back = from_json(&json).unwrap();
        assert_eq!(print(&back), TEXT);
    }

    #[test]
    fn wrong_version_is_refused() {
        let json = to_json(&parse(TEXT).unwrap()).replace("\"schema_version\": 1", "\"schema_version\": 7");
        assert_eq!(from_json(&json).unwrap_err().code, Code::E005);
        assert_eq!(from_json("{\"schema_version\": ").unwrap_err().code, Code::E001);
    }

    #[test]
    fn elaboration_is_stable() {
        let ws = load(TEXT).unwrap();
        let once = print(&elaborate(&ws));
        let again = print(&elaborate(&load(&once).unwrap()));
        assert_eq!(once, again);
    }

    #[test]
    fn dot_counts_homs() {
        let ws = load(TEXT).unwrap();
        let d = dot(ws.category("m").unwrap());
        assert_eq!(d.matches(" -> ").count(), 2);
        assert!(d.contains("\"x\" -> \"x\" [label=\"id_x\"]"));
    }
}
