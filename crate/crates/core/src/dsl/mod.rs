//! The `.cat` text format: parsing, printing, building engine objects, and
//! JSON/DOT export.

pub mod build;
pub mod export;
pub mod print;
pub mod syntax;

pub use export::{dot, elaborate, from_json, to_json, Document, SCHEMA_VERSION};
pub use build::{build, category_decl, load, printable, Options, Workspace};
pub use print::print;
pub use syntax::{parse, Code, Diagnostic, Item, SpecFile, Span};
