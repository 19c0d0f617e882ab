use std::path::PathBuf;

use proptest::prelude::*;
use wellpoint::cat::FiniteCategory;
use wellpoint::dsl::{self, Code};
use wellpoint::localise::localisation_category;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(format!("{name}.cat"))).unwrap()
}

fn hom_sizes(c: &FiniteCategory) -> Vec<Vec<usize>> {
    c.objects().map(|a| c.objects().map(|b| c.hom_size(a, b)).collect()).collect()
}

#[test]
fn corpus_files_match_the_builtin_instances() {
    for (name, builtin) in wellpoint::corpus::all() {
        let ws = dsl::load(&read(name)).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        let wp = ws.well_pointed(None, None).unwrap();
        assert_eq!(hom_sizes(wp.category()), hom_sizes(builtin.category()), "{name}");
        assert_eq!(wp.omega.on_objects, builtin.omega.on_objects, "{name}");
        let (l, r) = (localisation_category(&wp).unwrap(), localisation_category(&builtin).unwrap());
        assert_eq!(hom_sizes(&l.category), hom_sizes(&r.category), "{name}");
    }
}

#[test]
fn corpus_files_round_trip() {
    for (name, _) in wellpoint::corpus::all() {
        let text = read(name);
        let normal = dsl::print(&dsl::parse(&text).unwrap());
        assert_eq!(dsl::print(&dsl::parse(&normal).unwrap()), normal, "{name}");
        let json = dsl::to_json(&dsl::parse(&normal).unwrap());
        let from_json = dsl::from_json(&json).unwrap();
        assert_eq!(dsl::to_json(&from_json), json, "{name}");
        let full = dsl::print(&dsl::elaborate(&dsl::load(&normal).unwrap()));
        assert_eq!(dsl::print(&dsl::elaborate(&dsl::load(&full).unwrap())), full, "{name}");
    }
}

#[test]
fn diagnostics_point_at_the_offending_token() {
    let text = "category m : set {\n  objects x;\n  morphism e : x -> x;\n  compose e . f = e;\n}\n";
    let errs = dsl::load(text).unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].code, Code::E002);
    assert_eq!((errs[0].span.line, errs[0].span.col), (4, 15));
    assert!(errs[0].to_string().starts_with("4:15: error[E002]"));
}

#[test]
fn errors_in_several_items_are_all_reported() {
    let text = "category a : set {\n  objects x;\n}\n\ncategory a : set {\n  objects y;\n}\n\nfunctor F : a -> b {\n}\n";
    let codes: Vec<Code> = dsl::load(text).unwrap_err().iter().map(|d| d.code).collect();
    assert_eq!(codes, [Code::E006, Code::E002]);
}

#[test]
fn linear_associativity_failure_is_a_conflict() {
    let text = "category a : vect {\n  objects x;\n  morphism e : x -> x;\n  compose e . e = 2*e;\n}\n";
    assert!(dsl::load(text).is_ok());
    let bad = "category a : vect {\n  objects x;\n  morphism e : x -> x;\n  morphism f : x -> x;\n  compose e . e = f;\n  compose e . f = e;\n  compose f . e = f;\n  compose f . f = id_x;\n}\n";
    assert_eq!(dsl::load(bad).unwrap_err()[0].code, Code::E003);
}

fn poset_text(n: usize, rel: &[bool]) -> String {
    let mut s = format!("category p : set {{\n  objects {};\n", (0..n).map(|i| format!("o{i}")).collect::<Vec<_>>().join(", "));
    for i in 0..n {
        for j in i + 1..n {
            if rel[i * n + j] {
                s.push_str(&format!("  morphism m{i}_{j} : o{i} -> o{j};\n"));
            }
        }
    }
    s + "}\n"
}

fn closure(n: usize, rel: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn posets_need_no_composition_table(n in 1usize..6, bits in proptest::collection::vec(any::<bool>(), 36)) {
        let mut rel: Vec<bool> = (0..n * n).map(|k| k / n < k % n && bits[k]).collect();
        closure(n, &mut rel);
        let ws = dsl::load(&poset_text(n, &rel)).unwrap();
        let c = ws.category("p").unwrap();
        prop_assert!(c.validate().is_valid());
        for i in 0..n {
            for j in 0..n {
                let expected = usize::from(i == j || rel[i * n + j]);
                prop_assert_eq!(c.hom_size(i, j), expected);
            }
        }
    }

    #[test]
    fn printing_is_idempotent(n in 1usize..6, bits in proptest::collection::vec(any::<bool>(), 36)) {
        let mut rel: Vec<bool> = (0..n * n).map(|k| k / n < k % n && bits[k]).collect();
        closure(n, &mut rel);
        let once = dsl::print(&dsl::parse(&poset_text(n, &rel)).unwrap());
        prop_assert_eq!(dsl::print(&dsl::parse(&once).unwrap()), once.clone());
        prop_assert_eq!(once, poset_text(n, &rel));
    }
}

#[test]
fn schema_lists_every_document_field() {
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(corpus_dir().join("../schema/wellpoint-v1.schema.json")).unwrap()).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&dsl::to_json(&dsl::parse(&read("algebra-e")).unwrap())).unwrap();
    let props = schema["properties"].as_object().unwrap();
    for key in doc.as_object().unwrap().keys() {
        assert!(props.contains_key(key), "{key}");
    }
    assert_eq!(schema["properties"]["schema_version"]["const"], dsl::SCHEMA_VERSION);
}
