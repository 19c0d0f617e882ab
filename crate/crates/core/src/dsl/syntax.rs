//! Lexer, AST and parser for `.cat` files.

use std::fmt;

use crate::linalg::{parse_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    /// Syntax error.
    E001,
    /// Reference to an undeclared name.
    E002,
    /// Conflicting composition entries.
    E003,
    /// Missing composition entries.
    E004,
    /// Ill-typed or invalid data.
    E005,
    /// Name declared twice.
    E006,
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn new(code: Code, span: Span, message: impl Into<String>) -> Self {
        Self { code, message: message.into(), span }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.span, self.code, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(&'static str),
    Eof,
}

const PUNCT: [&str; 13] = ["->", "=>", ":", ";", ",", "{", "}", "=", ".", "+", "-", "*", "/"];

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '∞'
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, Diagnostic> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Word(chars[start..i].iter().collect()), span));
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) else {
                return Err(Diagnostic::new(Code::E001, span, format!("unexpected character `{c}`")));
            };
            i += p.chars().count();
            col += p.chars().count();
            out.push((Tok::Punct(p), span));
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnrichmentTag {
    Set,
    Vect,
}

/// A linear combination of morphism names; a single name in set mode. The
/// empty sum is written `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Q, Name)>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: Name,
    pub src: Name,
    pub dst: Name,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub g: Name,
    pub f: Name,
    pub result: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Name,
    pub enrichment: EnrichmentTag,
    pub objects: Vec<Name>,
    /// `(label, object)` for identities not named `id_<object>`.
    pub identities: Vec<(Name, Name)>,
    pub morphisms: Vec<MorphismDecl>,
    pub compositions: Vec<Composition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDecl {
    pub name: Name,
    pub src: Name,
    pub dst: Name,
    pub objects: Vec<(Name, Name)>,
    pub morphisms: Vec<(Name, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatDecl {
    pub name: Name,
    /// `id` or a functor name.
    pub source: Name,
    pub target: Name,
    pub components: Vec<(Name, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDecl {
    pub name: Name,
    pub endo: Name,
    pub levels: Vec<Name>,
    pub sigma: Vec<Expr>,
    pub preperiod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptionDecl {
    pub key: Name,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Category(CategoryDecl),
    Functor(FunctorDecl),
    Nat(NatDecl),
    Spectrum(SpectrumDecl),
    Option(OptionDecl),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpecFile {
    pub items: Vec<Item>,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of file".into(),
        }
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(Diagnostic::new(Code::E001, self.span(), format!("expected {expected}, found {}", Self::describe(self.peek()))))
    }

    fn punct(&mut self, p: &str) -> PResult<Span> {
        match self.peek() {
            Tok::Punct(q) if *q == p => Ok(self.bump().1),
            _ => self.error(&format!("`{p}`")),
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Word(text) => {
                let span = self.bump().1;
                Ok(Name { text, span })
            }
            _ => self.error("a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> PResult<Span> {
        if self.at_word(k) {
            Ok(self.bump().1)
        } else {
            self.error(&format!("`{k}`"))
        }
    }

    fn number(&mut self) -> PResult<u64> {
        let span = self.span();
        let n = self.name()?;
        n.text.parse().map_err(|_| Diagnostic::new(Code::E001, span, format!("expected a number, found `{}`", n.text)))
    }

    fn names(&mut self) -> PResult<Vec<Name>> {
        let mut out = vec![self.name()?];
        while self.at_punct(",") {
            self.bump();
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn coefficient(&mut self, w: &str, span: Span) -> PResult<Q> {
        let mut text = w.to_string();
        if self.at_punct("/") {
            self.bump();
            text.push('/');
            text.push_str(&self.name()?.text);
        }
        parse_q(&text).ok_or_else(|| Diagnostic::new(Code::E001, span, format!("`{text}` is not a rational coefficient")))
    }

    fn term(&mut self, sign: Q) -> PResult<(Q, Name)> {
        let first = self.name()?;
        let is_number = first.text.chars().all(|c| c.is_ascii_digit());
        if is_number && (self.at_punct("*") || self.at_punct("/")) {
            let c = self.coefficient(&first.text, first.span)?;
            self.punct("*")?;
            Ok((sign * c, self.name()?))
        } else {
            Ok((sign, first))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let span = self.span();
        if self.at_word("0") && matches!(self.toks[self.pos + 1].0, Tok::Punct(";") | Tok::Punct(",")) {
            self.bump();
            return Ok(Expr { terms: Vec::new(), span });
        }
        let one = Q::from_integer(1.into());
        let mut sign = one.clone();
        if self.at_punct("-") {
            self.bump();
            sign = -one.clone();
        }
        let mut terms = vec![self.term(sign)?];
        loop {
            let s = if self.at_punct("+") {
                one.clone()
            } else if self.at_punct("-") {
                -one.clone()
            } else {
                break;
            };
            self.bump();
            terms.push(self.term(s)?);
        }
        Ok(Expr { terms, span })
    }

    fn category(&mut self) -> PResult<CategoryDecl> {
        self.keyword("category")?;
        let name = self.name()?;
        self.punct(":")?;
        let enrichment = if self.at_word("set") {
            EnrichmentTag::Set
        } else if self.at_word("vect") {
            EnrichmentTag::Vect
        } else {
            return self.error("`set` or `vect`");
        };
        self.bump();
        self.punct("{")?;
        let mut decl = CategoryDecl { name, enrichment, objects: Vec::new(), identities: Vec::new(), morphisms: Vec::new(), compositions: Vec::new() };
        while !self.at_punct("}") {
            if self.at_word("objects") {
                self.bump();
                decl.objects.extend(self.names()?);
            } else if self.at_word("identity") {
                self.bump();
                let name = self.name()?;
                self.punct(":")?;
                decl.identities.push((name, self.name()?));
            } else if self.at_word("morphism") {
                self.bump();
                let name = self.name()?;
                self.punct(":")?;
                let src = self.name()?;
                self.punct("->")?;
                let dst = self.name()?;
                decl.morphisms.push(MorphismDecl { name, src, dst });
            } else if self.at_word("compose") {
                self.bump();
                let g = self.name()?;
                self.punct(".")?;
                let f = self.name()?;
                self.punct("=")?;
                let result = self.expr()?;
                decl.compositions.push(Composition { g, f, result });
            } else {
                return self.error("`objects`, `identity`, `morphism`, `compose` or `}`");
            }
            self.punct(";")?;
        }
        self.punct("}")?;
        Ok(decl)
    }

    fn functor(&mut self) -> PResult<FunctorDecl> {
        self.keyword("functor")?;
        let name = self.name()?;
        self.punct(":")?;
        let src = self.name()?;
        self.punct("->")?;
        let dst = self.name()?;
        self.punct("{")?;
        let mut decl = FunctorDecl { name, src, dst, objects: Vec::new(), morphisms: Vec::new() };
        while !self.at_punct("}") {
            if self.at_word("object") {
                self.bump();
                let a = self.name()?;
                self.punct("->")?;
                decl.objects.push((a, self.name()?));
            } else if self.at_word("morphism") {
                self.bump();
                let a = self.name()?;
                self.punct("->")?;
                decl.morphisms.push((a, self.expr()?));
            } else {
                return self.error("`object`, `morphism` or `}`");
            }
            self.punct(";")?;
        }
        self.punct("}")?;
        Ok(decl)
    }

    fn nat(&mut self) -> PResult<NatDecl> {
        self.keyword("nat")?;
        let name = self.name()?;
        self.punct(":")?;
        let source = self.name()?;
        self.punct("=>")?;
        let target = self.name()?;
        self.punct("{")?;
        let mut components = Vec::new();
        while !self.at_punct("}") {
            let o = self.name()?;
            self.punct(":")?;
            components.push((o, self.expr()?));
            self.punct(";")?;
        }
        self.punct("}")?;
        Ok(NatDecl { name, source, target, components })
    }

    fn spectrum(&mut self) -> PResult<SpectrumDecl> {
        self.keyword("spectrum")?;
        let name = self.name()?;
        self.punct(":")?;
        let endo = self.name()?;
        self.punct("{")?;
        self.keyword("levels")?;
        let levels = self.names()?;
        self.punct(";")?;
        self.keyword("sigma")?;
        let mut sigma = vec![self.expr()?];
        while self.at_punct(",") {
            self.bump();
            sigma.push(self.expr()?);
        }
        self.punct(";")?;
        let mut preperiod = 0;
        if self.at_word("preperiod") {
            self.bump();
            preperiod = self.number()? as usize;
            self.punct(";")?;
        }
        self.punct("}")?;
        Ok(SpectrumDecl { name, endo, levels, sigma, preperiod })
    }

    fn option(&mut self) -> PResult<OptionDecl> {
        self.keyword("option")?;
        let key = self.name()?;
        self.punct("=")?;
        let value = self.number()?;
        self.punct(";")?;
        Ok(OptionDecl { key, value })
    }

    fn file(&mut self) -> PResult<SpecFile> {
        let mut items = Vec::new();
        loop {
            let item = match self.peek() {
                Tok::Eof => break,
                Tok::Word(w) => match w.as_str() {
                    "category" => Item::Category(self.category()?),
                    "functor" => Item::Functor(self.functor()?),
                    "nat" => Item::Nat(self.nat()?),
                    "spectrum" => Item::Spectrum(self.spectrum()?),
                    "option" => Item::Option(self.option()?),
                    _ => return self.error("`category`, `functor`, `nat`, `spectrum` or `option`"),
                },
                Tok::Punct(_) => return self.error("a declaration"),
            };
            items.push(item);
        }
        Ok(SpecFile { items })
    }
}

pub fn parse(text: &str) -> Result<SpecFile, Diagnostic> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.file()
}
