//! The normalised rendering of a [`SpecFile`]: two-space indentation, one
//! statement per line, a blank line between items, no comments.

use std::fmt::Write;

use num::{One, Signed};

use super::syntax::{EnrichmentTag, Expr, Item, Name, SpecFile};
use crate::linalg::fmt_q;

fn names(ns: &[Name]) -> String {
    ns.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(", ")
}

pub fn expr(e: &Expr) -> String {
    if e.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, n)) in e.terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !a.is_one() {
            write!(out, "{}*", fmt_q(&a)).unwrap();
        }
        out.push_str(&n.text);
    }
    out
}

pub fn print(file: &SpecFile) -> String {
    let blocks: Vec<String> = file.items.iter().map(item).collect();
    let mut out = blocks.join("\n");
    if out.is_empty() {
        out.push('\n');
    }
    out
}

fn item(it: &Item) -> String {
    let mut s = String::new();
    match it {
        Item::Category(c) => {
            let tag = match c.enrichment {
                EnrichmentTag::Set => "set",
                EnrichmentTag::Vect => "vect",
            };
            writeln!(s, "category {} : {tag} {{", c.name.text).unwrap();
            if !c.objects.is_empty() {
                writeln!(s, "  objects {};", names(&c.objects)).unwrap();
            }
            for (i, o) in &c.identities {
                writeln!(s, "  identity {} : {};", i.text, o.text).unwrap();
            }
            for m in &c.morphisms {
                writeln!(s, "  morphism {} : {} -> {};", m.name.text, m.src.text, m.dst.text).unwrap();
            }
            for k in &c.compositions {
                writeln!(s, "  compose {} . {} = {};", k.g.text, k.f.text, expr(&k.result)).unwrap();
            }
            s.push_str("}\n");
        }
        Item::Functor(f) => {
            writeln!(s, "functor {} : {} -> {} {{", f.name.text, f.src.text, f.dst.text).unwrap();
            for (a, b) in &f.objects {
                writeln!(s, "  object {} -> {};", a.text, b.text).unwrap();
            }
            for (a, e) in &f.morphisms {
                writeln!(s, "  morphism {} -> {};", a.text, expr(e)).unwrap();
            }
            s.push_str("}\n");
        }
        Item::Nat(n) => {
            writeln!(s, "nat {} : {} => {} {{", n.name.text, n.source.text, n.target.text).unwrap();
            for (o, e) in &n.components {
                writeln!(s, "  {} : {};", o.text, expr(e)).unwrap();
            }
            s.push_str("}\n");
        }
        Item::Spectrum(x) => {
            writeln!(s, "spectrum {} : {} {{", x.name.text, x.endo.text).unwrap();
            writeln!(s, "  levels {};", names(&x.levels)).unwrap();
            let sigma: Vec<String> = x.sigma.iter().map(expr).collect();
            writeln!(s, "  sigma {};", sigma.join(", ")).unwrap();
            if x.preperiod > 0 {
                writeln!(s, "  preperiod {};", x.preperiod).unwrap();
            }
            s.push_str("}\n");
        }
        Item::Option(o) => {
            writeln!(s, "option {} = {};", o.key.text, o.value).unwrap();
        }
    }
    s
}
