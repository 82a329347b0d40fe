//! Ring and module specifications and the line-oriented spec-file grammar.
//!
//! ```text
//! # comments start with '#'
//! ring A = zmod(4)
//! module E = quot_module(A, gens=[2])
//! ring R = trivext(A, E)
//! poly f = [(2,0), (0,1)]
//! ```
//!
//! Statements are separated by newlines or `;`. Element literals are
//! integers or parenthesised tuples of literals.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::gf;

/// An element literal as written in a spec file.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Tuple(Vec<Literal>),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Tuple(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Equality compares the construction only, not the declared name.
#[derive(Clone, Debug, Serialize)]
pub struct RingSpec {
    pub name: String,
    pub kind: RingKind,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for RingSpec {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKind {
    Zmod {
        modulus: u32,
    },
    /// `poly` is monic of degree `k`, lowest coefficient first.
    Gf {
        p: u32,
        k: u32,
        poly: Vec<u32>,
    },
    Product {
        left: Box<RingSpec>,
        right: Box<RingSpec>,
    },
    Quotient {
        ring: Box<RingSpec>,
        gens: Vec<Literal>,
    },
    TrivExt {
        ring: Box<RingSpec>,
        module: Box<ModuleSpec>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleSpec {
    pub name: String,
    pub kind: ModuleKind,
}

impl PartialEq for ModuleSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for ModuleSpec {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleKind {
    Free {
        ring: Box<RingSpec>,
        rank: u32,
    },
    QuotModule {
        ring: Box<RingSpec>,
        gens: Vec<Literal>,
    },
    Sum {
        left: Box<ModuleSpec>,
        right: Box<ModuleSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolySpec {
    pub name: String,
    pub coeffs: Vec<Literal>,
}

/// Everything declared in one spec file, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub rings: Vec<RingSpec>,
    pub modules: Vec<ModuleSpec>,
    pub polys: Vec<PolySpec>,
}

impl SpecDocument {
    /// The last ring declared; the one commands operate on.
    pub fn target(&self) -> Option<&RingSpec> {
        self.rings.last()
    }

    pub fn ring(&self, name: &str) -> Option<&RingSpec> {
        self.rings.iter().rev().find(|r| r.name == name)
    }
}

impl RingSpec {
    pub fn new(name: impl Into<String>, kind: RingKind) -> Self {
        RingSpec {
            name: name.into(),
            kind,
        }
    }

    pub fn zmod(modulus: u32) -> Self {
        RingSpec::new(format!("zmod({modulus})"), RingKind::Zmod { modulus })
    }

    pub fn same_ring(&self, other: &RingSpec) -> bool {
        self == other
    }

    /// Emits a spec file that declares this ring (and everything it
    /// depends on) and parses back to an equal `RingSpec`.
    pub fn to_document(&self) -> String {
        let mut out = Emitter::default();
        out.ring(self);
        out.lines.join("\n") + "\n"
    }
}

impl ModuleSpec {
    pub fn base(&self) -> &RingSpec {
        match &self.kind {
            ModuleKind::Free { ring, .. } | ModuleKind::QuotModule { ring, .. } => ring,
            ModuleKind::Sum { left, .. } => left.base(),
        }
    }
}

fn write_gens(f: &mut fmt::Formatter<'_>, gens: &[Literal]) -> fmt::Result {
    write!(f, "gens=[")?;
    for (i, g) in gens.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{g}")?;
    }
    write!(f, "]")
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Zmod { modulus } => write!(f, "zmod({modulus})"),
            RingKind::Gf { p, k, poly } => {
                write!(f, "gf({p},{k},poly=[")?;
                for (i, c) in poly.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
            RingKind::Product { left, right } => write!(f, "product({left}, {right})"),
            RingKind::Quotient { ring, gens } => {
                write!(f, "quotient({ring}, ")?;
                write_gens(f, gens)?;
                write!(f, ")")
            }
            RingKind::TrivExt { ring, module } => write!(f, "trivext({ring}, {module})"),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModuleKind::Free { ring, rank } => write!(f, "free({ring}, {rank})"),
            ModuleKind::QuotModule { ring, gens } => {
                write!(f, "quot_module({ring}, ")?;
                write_gens(f, gens)?;
                write!(f, ")")
            }
            ModuleKind::Sum { left, right } => write!(f, "sum({left}, {right})"),
        }
    }
}

#[derive(Default)]
struct Emitter {
    lines: Vec<String>,
    rings: Vec<(RingKind, String)>,
    modules: Vec<(ModuleKind, String)>,
}

impl Emitter {
    fn ring(&mut self, spec: &RingSpec) -> String {
        if let Some((_, id)) = self.rings.iter().find(|(k, _)| *k == spec.kind) {
            return id.clone();
        }
        let rhs = match &spec.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => spec.to_string(),
            RingKind::Product { left, right } => {
                let l = self.ring(left);
                let r = self.ring(right);
                format!("product({l},{r})")
            }
            RingKind::Quotient { ring, gens } => {
                let r = self.ring(ring);
                format!("quotient({r}, gens=[{}])", join_literals(gens))
            }
            RingKind::TrivExt { ring, module } => {
                let r = self.ring(ring);
                let m = self.module(module);
                format!("trivext({r},{m})")
            }
        };
        let id = format!("r{}", self.rings.len());
        self.rings.push((spec.kind.clone(), id.clone()));
        self.lines.push(format!("ring {id} = {rhs}"));
        id
    }

    fn module(&mut self, spec: &ModuleSpec) -> String {
        if let Some((_, id)) = self.modules.iter().find(|(k, _)| *k == spec.kind) {
            return id.clone();
        }
        let rhs = match &spec.kind {
            ModuleKind::Free { ring, rank } => {
                let r = self.ring(ring);
                format!("free({r},{rank})")
            }
            ModuleKind::QuotModule { ring, gens } => {
                let r = self.ring(ring);
                format!("quot_module({r}, gens=[{}])", join_literals(gens))
            }
            ModuleKind::Sum { left, right } => {
                let l = self.module(left);
                let r = self.module(right);
                format!("sum({l},{r})")
            }
        };
        let id = format!("m{}", self.modules.len());
        self.modules.push((spec.kind.clone(), id.clone()));
        self.lines.push(format!("module {id} = {rhs}"));
        id
    }
}

fn join_literals(items: &[Literal]) -> String {
    items
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Splits the text into statements, each a token list terminated by `End`.
fn lex(text: &str) -> Result<Vec<Vec<Token>>> {
    let mut statements = Vec::new();
    let mut current = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (byte, c) = chars[i];
            let col = content[..byte].chars().count() + 1;
            let simple = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                ',' => Some(Tok::Comma),
                '=' => Some(Tok::Eq),
                _ => None,
            };
            if let Some(tok) = simple {
                current.push(Token { tok, line, col });
                i += 1;
            } else if c == ';' {
                if !current.is_empty() {
                    current.push(Token {
                        tok: Tok::End,
                        line,
                        col,
                    });
                    statements.push(std::mem::take(&mut current));
                }
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || c == '-' {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(content.len(), |&(b, _)| b);
                let s = &content[byte..end];
                let v = s
                    .parse::<i64>()
                    .map_err(|_| syntax(line, col, format!("bad integer `{s}`")))?;
                current.push(Token {
                    tok: Tok::Int(v),
                    line,
                    col,
                });
            } else if c.is_alphabetic() || c == '_' {
                i += 1;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let end = chars.get(i).map_or(content.len(), |&(b, _)| b);
                current.push(Token {
                    tok: Tok::Ident(content[byte..end].to_string()),
                    line,
                    col,
                });
            } else {
                return Err(syntax(line, col, format!("unexpected character `{c}`")));
            }
        }
        if !current.is_empty() {
            current.push(Token {
                tok: Tok::End,
                line,
                col: content.chars().count() + 1,
            });
            statements.push(std::mem::take(&mut current));
        }
    }
    Ok(statements)
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Clone, Debug)]
enum Value {
    Int(i64),
    Ident(String),
    List(Vec<Literal>),
}

#[derive(Clone, Debug)]
struct Arg {
    name: Option<String>,
    value: Value,
    line: usize,
    col: usize,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &'a Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> &'a Token {
        let t = self.peek();
        if self.pos < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<&'a Token> {
        let t = self.next();
        if &t.tok == want {
            Ok(t)
        } else {
            Err(syntax(t.line, t.col, format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.line, t.col)),
            _ => Err(syntax(t.line, t.col, format!("expected {what}"))),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => Ok(Literal::Int(*v)),
            Tok::LParen => {
                let mut items = vec![self.literal()?];
                loop {
                    let t = self.next();
                    match t.tok {
                        Tok::Comma => items.push(self.literal()?),
                        Tok::RParen => break,
                        _ => return Err(syntax(t.line, t.col, "expected `,` or `)` in tuple")),
                    }
                }
                Ok(Literal::Tuple(items))
            }
            _ => Err(syntax(t.line, t.col, "expected element literal")),
        }
    }

    fn list(&mut self) -> Result<Vec<Literal>> {
        self.expect(&Tok::LBracket, "`[`")?;
        let mut items = Vec::new();
        if self.peek().tok == Tok::RBracket {
            self.next();
            return Ok(items);
        }
        loop {
            items.push(self.literal()?);
            let t = self.next();
            match t.tok {
                Tok::Comma => {}
                Tok::RBracket => break,
                _ => return Err(syntax(t.line, t.col, "expected `,` or `]` in list")),
            }
        }
        Ok(items)
    }

    fn value(&mut self) -> Result<Value> {
        let t = self.peek();
        match &t.tok {
            Tok::Int(v) => {
                self.next();
                Ok(Value::Int(*v))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(Value::Ident(s.clone()))
            }
            Tok::LBracket => Ok(Value::List(self.list()?)),
            _ => Err(syntax(t.line, t.col, "expected argument")),
        }
    }

    fn args(&mut self) -> Result<Vec<Arg>> {
        self.expect(&Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if self.peek().tok == Tok::RParen {
            self.next();
            return Ok(args);
        }
        loop {
            let start = self.peek();
            let (line, col) = (start.line, start.col);
            let named = matches!(start.tok, Tok::Ident(_))
                && self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Eq);
            let name = if named {
                let (n, _, _) = self.ident("argument name")?;
                self.next();
                Some(n)
            } else {
                None
            };
            let value = self.value()?;
            args.push(Arg {
                name,
                value,
                line,
                col,
            });
            let t = self.next();
            match t.tok {
                Tok::Comma => {}
                Tok::RParen => break,
                _ => return Err(syntax(t.line, t.col, "expected `,` or `)`")),
            }
        }
        Ok(args)
    }
}

struct Env {
    rings: HashMap<String, RingSpec>,
    modules: HashMap<String, ModuleSpec>,
}

struct Call {
    ctor: String,
    args: Vec<Arg>,
    line: usize,
    col: usize,
}

impl Call {
    fn arity(&self, n: usize) -> Result<()> {
        let positional = self.args.iter().filter(|a| a.name.is_none()).count();
        if positional != n {
            return Err(syntax(
                self.line,
                self.col,
                format!(
                    "`{}` takes {n} positional argument(s), got {positional}",
                    self.ctor
                ),
            ));
        }
        Ok(())
    }

    fn positional(&self, i: usize) -> &Arg {
        self.args
            .iter()
            .filter(|a| a.name.is_none())
            .nth(i)
            .unwrap()
    }

    fn named(&self, name: &str) -> Option<&Arg> {
        self.args.iter().find(|a| a.name.as_deref() == Some(name))
    }

    fn reject_unknown_named(&self, allowed: &[&str]) -> Result<()> {
        for a in &self.args {
            if let Some(n) = &a.name {
                if !allowed.contains(&n.as_str()) {
                    return Err(syntax(a.line, a.col, format!("unknown argument `{n}`")));
                }
            }
        }
        Ok(())
    }
}

fn int_arg(a: &Arg) -> Result<i64> {
    match a.value {
        Value::Int(v) => Ok(v),
        _ => Err(syntax(a.line, a.col, "expected integer")),
    }
}

fn ident_arg(a: &Arg) -> Result<&str> {
    match &a.value {
        Value::Ident(s) => Ok(s),
        _ => Err(syntax(a.line, a.col, "expected identifier")),
    }
}

fn list_arg(a: &Arg) -> Result<&[Literal]> {
    match &a.value {
        Value::List(l) => Ok(l),
        _ => Err(syntax(a.line, a.col, "expected `[...]` list")),
    }
}

impl Env {
    fn ring_ref(&self, a: &Arg) -> Result<RingSpec> {
        let name = ident_arg(a)?;
        self.rings
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownIdentifier {
                line: a.line,
                col: a.col,
                name: name.to_string(),
            })
    }

    fn module_ref(&self, a: &Arg) -> Result<ModuleSpec> {
        let name = ident_arg(a)?;
        self.modules
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownIdentifier {
                line: a.line,
                col: a.col,
                name: name.to_string(),
            })
    }

    fn gens(&self, call: &Call) -> Result<Vec<Literal>> {
        call.reject_unknown_named(&["gens"])?;
        match call.named("gens") {
            Some(a) => Ok(list_arg(a)?.to_vec()),
            None => Err(syntax(call.line, call.col, "missing `gens=[...]`")),
        }
    }

    fn ring(&self, name: &str, call: &Call) -> Result<RingSpec> {
        let kind = match call.ctor.as_str() {
            "zmod" => {
                call.arity(1)?;
                call.reject_unknown_named(&[])?;
                let n = int_arg(call.positional(0))?;
                if n < 2 {
                    return Err(Error::ModulusTooSmall(n));
                }
                let modulus = u32::try_from(n).map_err(|_| {
                    syntax(call.line, call.col, format!("modulus {n} is too large"))
                })?;
                RingKind::Zmod { modulus }
            }
            "gf" => {
                call.arity(2)?;
                call.reject_unknown_named(&["poly"])?;
                let p = int_arg(call.positional(0))?;
                let k = int_arg(call.positional(1))?;
                if p < 2 || p > u32::MAX as i64 || !gf::is_prime(p as u32) {
                    return Err(Error::NotPrime(p.clamp(0, u32::MAX as i64) as u32));
                }
                let (p, k) = (p as u32, k);
                if !(1..=32).contains(&k) {
                    return Err(syntax(call.line, call.col, "gf degree must be at least 1"));
                }
                let k = k as u32;
                let poly = match call.named("poly") {
                    Some(a) => {
                        let mut coeffs = Vec::new();
                        for lit in list_arg(a)? {
                            match lit {
                                Literal::Int(v) => coeffs.push(v.rem_euclid(p as i64) as u32),
                                _ => {
                                    return Err(syntax(
                                        a.line,
                                        a.col,
                                        "gf polynomial coefficients must be integers",
                                    ))
                                }
                            }
                        }
                        coeffs
                    }
                    None if k == 1 => vec![0, 1],
                    None => {
                        return Err(syntax(
                            call.line,
                            call.col,
                            "gf of degree > 1 needs an explicit `poly=[...]`",
                        ))
                    }
                };
                let poly = gf::normalize_modulus(p, k, &poly).ok_or_else(|| Error::Reducible {
                    p,
                    degree: k,
                    poly: poly.clone(),
                })?;
                RingKind::Gf { p, k, poly }
            }
            "product" => {
                call.arity(2)?;
                call.reject_unknown_named(&[])?;
                RingKind::Product {
                    left: Box::new(self.ring_ref(call.positional(0))?),
                    right: Box::new(self.ring_ref(call.positional(1))?),
                }
            }
            "quotient" => {
                call.arity(1)?;
                RingKind::Quotient {
                    ring: Box::new(self.ring_ref(call.positional(0))?),
                    gens: self.gens(call)?,
                }
            }
            "trivext" => {
                call.arity(2)?;
                call.reject_unknown_named(&[])?;
                let ring = self.ring_ref(call.positional(0))?;
                let module = self.module_ref(call.positional(1))?;
                if !module.base().same_ring(&ring) {
                    return Err(Error::ModuleBaseMismatch);
                }
                RingKind::TrivExt {
                    ring: Box::new(ring),
                    module: Box::new(module),
                }
            }
            other => {
                return Err(Error::UnknownKind {
                    line: call.line,
                    col: call.col,
                    kind: other.to_string(),
                })
            }
        };
        Ok(RingSpec::new(name, kind))
    }

    fn module(&self, name: &str, call: &Call) -> Result<ModuleSpec> {
        let kind = match call.ctor.as_str() {
            "free" => {
                call.arity(2)?;
                call.reject_unknown_named(&[])?;
                let ring = self.ring_ref(call.positional(0))?;
                let rank_arg = call.positional(1);
                let rank = int_arg(rank_arg)?;
                if !(1..=64).contains(&rank) {
                    return Err(syntax(
                        rank_arg.line,
                        rank_arg.col,
                        "rank must be at least 1",
                    ));
                }
                ModuleKind::Free {
                    ring: Box::new(ring),
                    rank: rank as u32,
                }
            }
            "quot_module" => {
                call.arity(1)?;
                ModuleKind::QuotModule {
                    ring: Box::new(self.ring_ref(call.positional(0))?),
                    gens: self.gens(call)?,
                }
            }
            "sum" => {
                call.arity(2)?;
                call.reject_unknown_named(&[])?;
                let left = self.module_ref(call.positional(0))?;
                let right = self.module_ref(call.positional(1))?;
                if !left.base().same_ring(right.base()) {
                    return Err(Error::ModuleBaseMismatch);
                }
                ModuleKind::Sum {
                    left: Box::new(left),
                    right: Box::new(right),
                }
            }
            other => {
                return Err(Error::UnknownKind {
                    line: call.line,
                    col: call.col,
                    kind: other.to_string(),
                })
            }
        };
        Ok(ModuleSpec {
            name: name.to_string(),
            kind,
        })
    }
}

/// Parses a whole spec file.
pub fn parse_document(text: &str) -> Result<SpecDocument> {
    let mut env = Env {
        rings: HashMap::new(),
        modules: HashMap::new(),
    };
    let mut doc = SpecDocument::default();
    for stmt in lex(text)? {
        let mut cur = Cursor {
            toks: &stmt,
            pos: 0,
        };
        let (keyword, kl, kc) = cur.ident("`ring`, `module` or `poly`")?;
        let (name, _, _) = cur.ident("identifier")?;
        cur.expect(&Tok::Eq, "`=`")?;
        match keyword.as_str() {
            "poly" => {
                let coeffs = cur.list()?;
                cur.expect(&Tok::End, "end of statement")?;
                doc.polys.push(PolySpec { name, coeffs });
            }
            "ring" | "module" => {
                let (ctor, line, col) = cur.ident("constructor")?;
                let args = cur.args()?;
                cur.expect(&Tok::End, "end of statement")?;
                let call = Call {
                    ctor,
                    args,
                    line,
                    col,
                };
                if keyword == "ring" {
                    let spec = env.ring(&name, &call)?;
                    env.rings.insert(name, spec.clone());
                    doc.rings.push(spec);
                } else {
                    let spec = env.module(&name, &call)?;
                    env.modules.insert(name, spec.clone());
                    doc.modules.push(spec);
                }
            }
            other => {
                return Err(syntax(
                    kl,
                    kc,
                    format!("expected `ring`, `module` or `poly`, found `{other}`"),
                ))
            }
        }
    }
    Ok(doc)
}

/// Parses a spec file and returns the last ring it declares.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let doc = parse_document(text)?;
    doc.target()
        .cloned()
        .ok_or_else(|| syntax(1, 1, "no ring declared"))
}
