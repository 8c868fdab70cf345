//! Declaration-level parser for a Java syntax subset.
//!
//! Only what the connection rules need is recovered: type declarations with
//! their modifiers and supertypes, field types, method signatures, and from
//! every executable body the `new T(` expressions plus the declared types of
//! `receiver.method(` invocations. Nested, local and anonymous classes are
//! skipped with a warning.

use std::collections::HashMap;

use super::lexer::{tokenize, Tok, Token};
use super::AbstractionKind;

/// A type as written in a declaration: simple name plus the simple names of
/// its immediate type arguments (`List<Strategy>` -> `List`, `[Strategy]`).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeRef {
    pub name: String,
    pub args: Vec<String>,
}

impl TypeRef {
    /// The type and its type arguments, generics unwrapped one level.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.name.as_str()).chain(self.args.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MethodSig {
    pub name: String,
    /// `None` for constructors.
    pub return_type: Option<TypeRef>,
    pub params: Vec<TypeRef>,
}

/// One top-level class, interface, enum or record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: String,
    pub abstraction: AbstractionKind,
    pub line: usize,
    /// `extends` and `implements` targets.
    pub supertypes: Vec<String>,
    pub fields: Vec<TypeRef>,
    pub methods: Vec<MethodSig>,
    /// Types instantiated with `new T(...)` anywhere in the class.
    pub created: Vec<String>,
    /// Declared types of receivers of method invocations.
    pub invoked: Vec<String>,
}

impl ClassDecl {
    fn new(name: String, abstraction: AbstractionKind, line: usize) -> Self {
        Self {
            name,
            abstraction,
            line,
            supertypes: Vec::new(),
            fields: Vec::new(),
            methods: Vec::new(),
            created: Vec::new(),
            invoked: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedSource {
    pub classes: Vec<ClassDecl>,
    /// (line, message) pairs for constructs that were skipped.
    pub warnings: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

pub fn parse_source(src: &str) -> Result<ParsedSource, SyntaxError> {
    let toks = tokenize(src).map_err(|e| SyntaxError {
        line: e.line,
        message: e.message,
    })?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        out: ParsedSource::default(),
    };
    p.compilation_unit()?;
    Ok(p.out)
}

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "abstract",
    "static",
    "final",
    "sealed",
    "strictfp",
    "transient",
    "volatile",
    "synchronized",
    "native",
    "default",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "break",
    "case",
    "catch",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "interface",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "volatile",
    "while",
    "true",
    "false",
    "null",
    "yield",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

fn is_type_decl_keyword(s: &str) -> bool {
    matches!(s, "class" | "interface" | "enum" | "record")
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    out: ParsedSource,
}

/// A member whose body is scanned once every field of the class is known.
struct PendingBody {
    range: std::ops::Range<usize>,
    params: Vec<(String, String)>,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + offset)
    }

    fn line(&self) -> usize {
        self.peek().or_else(|| self.toks.last()).map_or(1, |t| t.line)
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError {
            line: self.line(),
            message: message.into(),
        })
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().is_some_and(|t| t.is_punct(c))
    }

    fn at_ident(&self, word: &str) -> bool {
        self.peek().is_some_and(|t| t.is_ident(word))
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> PResult<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_ident(&mut self) -> PResult<(String, usize)> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s),
                line,
            }) => {
                self.pos += 1;
                Ok((s.clone(), *line))
            }
            _ => self.err("expected identifier"),
        }
    }

    fn warn(&mut self, line: usize, message: String) {
        self.out.warnings.push((line, message));
    }

    /// Skips a balanced group starting at the current opening token and
    /// returns the range strictly inside it.
    fn skip_group(&mut self, open: char, close: char) -> PResult<std::ops::Range<usize>> {
        let start_line = self.line();
        self.expect_punct(open)?;
        let start = self.pos;
        let mut depth = 1usize;
        while let Some(t) = self.peek() {
            if t.is_punct(open) {
                depth += 1;
            } else if t.is_punct(close) {
                depth -= 1;
                if depth == 0 {
                    let end = self.pos;
                    self.pos += 1;
                    return Ok(start..end);
                }
            }
            self.pos += 1;
        }
        Err(SyntaxError {
            line: start_line,
            message: format!("unbalanced `{open}`"),
        })
    }

    fn skip_until_semicolon(&mut self) -> PResult<()> {
        while let Some(t) = self.peek() {
            self.pos += 1;
            if t.is_punct(';') {
                return Ok(());
            }
        }
        self.err("expected `;`")
    }

    fn skip_annotations(&mut self) -> PResult<()> {
        while self.at_punct('@') && !self.peek_at(1).is_some_and(|t| t.is_ident("interface")) {
            self.pos += 1;
            self.expect_ident()?;
            while self.at_punct('.') {
                self.pos += 1;
                self.expect_ident()?;
            }
            if self.at_punct('(') {
                self.skip_group('(', ')')?;
            }
        }
        Ok(())
    }

    /// Consumes annotations and modifiers; returns whether `abstract` was seen.
    fn modifiers(&mut self) -> PResult<bool> {
        let mut is_abstract = false;
        loop {
            self.skip_annotations()?;
            match self.peek().and_then(Token::ident) {
                Some("abstract") => is_abstract = true,
                Some("non") if self.peek_at(1).is_some_and(|t| t.is_punct('-')) => {
                    // non-sealed
                    self.pos += 2;
                }
                Some(m) if MODIFIERS.contains(&m) => {
                    // `default` is a modifier only on interface methods, not `default:` labels
                }
                _ => return Ok(is_abstract),
            }
            self.pos += 1;
        }
    }

    fn compilation_unit(&mut self) -> PResult<()> {
        while let Some(t) = self.peek() {
            if t.is_punct(';') {
                self.pos += 1;
                continue;
            }
            if t.is_ident("package") || t.is_ident("import") {
                self.skip_until_semicolon()?;
                continue;
            }
            let is_abstract = self.modifiers()?;
            if self.at_punct('@') {
                // annotation type declaration
                let line = self.line();
                self.pos += 2;
                let (name, _) = self.expect_ident()?;
                self.skip_group('{', '}')?;
                self.warn(line, format!("annotation type `{name}` skipped"));
                continue;
            }
            match self.peek().and_then(Token::ident) {
                Some(kw) if is_type_decl_keyword(kw) => {
                    let kw = kw.to_owned();
                    self.pos += 1;
                    let decl = self.type_decl(&kw, is_abstract)?;
                    self.out.classes.push(decl);
                }
                Some(other) => return self.err(format!("expected type declaration, found `{other}`")),
                None if self.peek().is_none() => return Ok(()),
                None => return self.err("expected type declaration"),
            }
        }
        Ok(())
    }

    fn type_decl(&mut self, keyword: &str, is_abstract: bool) -> PResult<ClassDecl> {
        let (name, line) = self.expect_ident()?;
        let abstraction = match keyword {
            "interface" => AbstractionKind::Interface,
            "class" if is_abstract => AbstractionKind::Abstract,
            _ => AbstractionKind::Normal,
        };
        let mut decl = ClassDecl::new(name, abstraction, line);
        if self.at_punct('<') {
            self.skip_group('<', '>')?;
        }
        let mut record_components = Vec::new();
        if keyword == "record" && self.at_punct('(') {
            let range = self.skip_group('(', ')')?;
            record_components = self.params_in(range)?;
        }
        loop {
            match self.peek() {
                Some(t) if t.is_punct('{') => break,
                Some(t) if t.is_ident("extends") || t.is_ident("implements") => {
                    self.pos += 1;
                    loop {
                        let ty = self.type_ref()?;
                        decl.supertypes.push(ty.name);
                        if !self.eat_punct(',') {
                            break;
                        }
                    }
                }
                Some(t) if t.is_ident("permits") => {
                    self.pos += 1;
                    loop {
                        self.type_ref()?;
                        if !self.eat_punct(',') {
                            break;
                        }
                    }
                }
                Some(_) => return self.err(format!("unexpected token in `{}` header", decl.name)),
                None => return self.err("unexpected end of file"),
            }
        }

        let mut scope: HashMap<String, String> = HashMap::new();
        for (ty, var) in record_components {
            scope.insert(var, ty.name.clone());
            decl.fields.push(ty);
        }

        let body = self.skip_group('{', '}')?;
        let end = self.pos;
        self.pos = body.start;
        let pending = self.class_body(body.end, keyword == "enum", &mut decl, &mut scope)?;
        self.pos = end;

        for item in pending {
            let mut local = scope.clone();
            local.extend(item.params);
            self.scan_body(item.range, &mut local, &mut decl);
        }
        Ok(decl)
    }

    fn class_body(
        &mut self,
        end: usize,
        is_enum: bool,
        decl: &mut ClassDecl,
        scope: &mut HashMap<String, String>,
    ) -> PResult<Vec<PendingBody>> {
        let mut pending = Vec::new();
        if is_enum {
            // enum constants up to the first top-level `;`
            while self.pos < end {
                if self.at_punct(';') {
                    self.pos += 1;
                    break;
                }
                if self.at_punct('(') {
                    let r = self.skip_group('(', ')')?;
                    pending.push(PendingBody {
                        range: r,
                        params: Vec::new(),
                    });
                } else if self.at_punct('{') {
                    let line = self.line();
                    self.skip_group('{', '}')?;
                    self.warn(line, format!("enum constant body in `{}` skipped", decl.name));
                } else {
                    self.pos += 1;
                }
            }
        }

        while self.pos < end {
            if self.eat_punct(';') {
                continue;
            }
            let member_line = self.line();
            let _ = self.modifiers()?;
            if self.pos >= end {
                break;
            }
            if self.at_punct('@') {
                self.pos += 2;
                let (name, _) = self.expect_ident()?;
                self.skip_group('{', '}')?;
                self.warn(member_line, format!("nested annotation type `{name}` skipped"));
                continue;
            }
            if let Some(kw) = self.peek().and_then(Token::ident) {
                if is_type_decl_keyword(kw) && self.peek_at(1).and_then(Token::ident).is_some() {
                    let nested = self.peek_at(1).and_then(Token::ident).unwrap_or_default();
                    self.warn(
                        member_line,
                        format!("nested type `{nested}` in `{}` skipped", decl.name),
                    );
                    while !self.at_punct('{') {
                        if self.pos >= end {
                            return self.err("unterminated nested type header");
                        }
                        self.pos += 1;
                    }
                    self.skip_group('{', '}')?;
                    continue;
                }
            }
            if self.at_punct('{') {
                let range = self.skip_group('{', '}')?;
                pending.push(PendingBody {
                    range,
                    params: Vec::new(),
                });
                continue;
            }
            if self.at_punct('<') {
                self.skip_group('<', '>')?;
            }

            // constructor
            if self.peek_at(1).is_some_and(|t| t.is_punct('(')) {
                let (name, _) = self.expect_ident()?;
                let params = self.param_list()?;
                self.throws_clause()?;
                let range = self.skip_group('{', '}')?;
                decl.methods.push(MethodSig {
                    name,
                    return_type: None,
                    params: params.iter().map(|(t, _)| t.clone()).collect(),
                });
                pending.push(PendingBody {
                    range,
                    params: params.into_iter().map(|(t, v)| (v, t.name)).collect(),
                });
                continue;
            }

            let ty = self.type_ref()?;
            let (name, _) = self.expect_ident()?;
            if self.at_punct('(') {
                let params = self.param_list()?;
                while self.at_punct('[') {
                    self.skip_group('[', ']')?;
                }
                self.throws_clause()?;
                decl.methods.push(MethodSig {
                    name,
                    return_type: Some(ty),
                    params: params.iter().map(|(t, _)| t.clone()).collect(),
                });
                if self.at_punct('{') {
                    let range = self.skip_group('{', '}')?;
                    pending.push(PendingBody {
                        range,
                        params: params.into_iter().map(|(t, v)| (v, t.name)).collect(),
                    });
                } else if self.at_ident("default") {
                    self.skip_until_semicolon()?;
                } else {
                    self.expect_punct(';')?;
                }
                continue;
            }

            // field declarators
            scope.insert(name, ty.name.clone());
            decl.fields.push(ty.clone());
            loop {
                while self.at_punct('[') {
                    self.skip_group('[', ']')?;
                }
                if self.eat_punct('=') {
                    let start = self.pos;
                    self.initializer(end)?;
                    pending.push(PendingBody {
                        range: start..self.pos,
                        params: Vec::new(),
                    });
                }
                if self.eat_punct(',') {
                    let (next, _) = self.expect_ident()?;
                    scope.insert(next, ty.name.clone());
                    continue;
                }
                self.expect_punct(';')?;
                break;
            }
        }
        Ok(pending)
    }

    /// Advances over a field initializer, stopping before the `,` that starts
    /// the next declarator or before the terminating `;`.
    fn initializer(&mut self, end: usize) -> PResult<()> {
        while self.pos < end {
            let t = &self.toks[self.pos];
            match &t.tok {
                Tok::Punct('(') => {
                    self.skip_group('(', ')')?;
                }
                Tok::Punct('[') => {
                    self.skip_group('[', ']')?;
                }
                Tok::Punct('{') => {
                    self.skip_group('{', '}')?;
                }
                Tok::Punct(';') => return Ok(()),
                Tok::Punct(',') => {
                    let next_is_declarator = matches!(self.peek_at(1).map(|t| &t.tok), Some(Tok::Ident(_)))
                        && self
                            .peek_at(2)
                            .is_some_and(|t| t.is_punct('=') || t.is_punct(',') || t.is_punct(';') || t.is_punct('['));
                    if next_is_declarator {
                        return Ok(());
                    }
                    self.pos += 1;
                }
                _ => self.pos += 1,
            }
        }
        self.err("unterminated field initializer")
    }

    fn throws_clause(&mut self) -> PResult<()> {
        if self.at_ident("throws") {
            self.pos += 1;
            loop {
                self.type_ref()?;
                if !self.eat_punct(',') {
                    break;
                }
            }
        }
        Ok(())
    }

    fn param_list(&mut self) -> PResult<Vec<(TypeRef, String)>> {
        let range = self.skip_group('(', ')')?;
        self.params_in(range)
    }

    fn params_in(&mut self, range: std::ops::Range<usize>) -> PResult<Vec<(TypeRef, String)>> {
        let resume = self.pos;
        self.pos = range.start;
        let mut params = Vec::new();
        while self.pos < range.end {
            self.skip_annotations()?;
            while self.at_ident("final") {
                self.pos += 1;
                self.skip_annotations()?;
            }
            let ty = self.type_ref()?;
            while self.at_punct('.') {
                self.pos += 1; // varargs
            }
            let (name, _) = self.expect_ident()?;
            while self.at_punct('[') {
                self.skip_group('[', ']')?;
            }
            params.push((ty, name));
            if self.pos < range.end {
                self.expect_punct(',')?;
            }
        }
        self.pos = resume;
        Ok(params)
    }

    /// `a.b.Name<Arg, ? extends Other>[]`
    fn type_ref(&mut self) -> PResult<TypeRef> {
        self.skip_annotations()?;
        let (mut name, _) = self.expect_ident()?;
        let mut args = Vec::new();
        loop {
            if self.at_punct('<') {
                args = self.type_args()?;
            }
            if self.at_punct('.') && matches!(self.peek_at(1).map(|t| &t.tok), Some(Tok::Ident(_))) {
                self.pos += 1;
                name = self.expect_ident()?.0;
                continue;
            }
            break;
        }
        while self.at_punct('[') && self.peek_at(1).is_some_and(|t| t.is_punct(']')) {
            self.pos += 2;
        }
        Ok(TypeRef { name, args })
    }

    fn type_args(&mut self) -> PResult<Vec<String>> {
        self.expect_punct('<')?;
        let mut args = Vec::new();
        if self.eat_punct('>') {
            return Ok(args); // diamond
        }
        loop {
            if self.eat_punct('?') {
                if self.at_ident("extends") || self.at_ident("super") {
                    self.pos += 1;
                    args.push(self.type_ref()?.name);
                }
            } else {
                args.push(self.type_ref()?.name);
            }
            if self.eat_punct(',') {
                continue;
            }
            self.expect_punct('>')?;
            return Ok(args);
        }
    }

    /// Tries to read a type starting at `at` without consuming anything.
    fn try_type_at(&mut self, at: usize) -> Option<(TypeRef, usize)> {
        let saved = self.pos;
        let saved_warnings = self.out.warnings.len();
        self.pos = at;
        let r = self.type_ref().ok().map(|t| (t, self.pos));
        self.pos = saved;
        self.out.warnings.truncate(saved_warnings);
        r
    }

    fn scan_body(&mut self, range: std::ops::Range<usize>, scope: &mut HashMap<String, String>, decl: &mut ClassDecl) {
        let toks = self.toks;
        let mut i = range.start;
        while i < range.end {
            let t = &toks[i];
            let prev_is_dot = i > 0 && toks[i - 1].is_punct('.');
            let Tok::Ident(word) = &t.tok else {
                i += 1;
                continue;
            };

            if word == "new" {
                match self.try_type_at(i + 1) {
                    Some((ty, after)) if after < range.end && toks[after].is_punct('(') => {
                        decl.created.push(ty.name.clone());
                        let close = matching(toks, after, '(', ')').unwrap_or(range.end);
                        if close + 1 < range.end && toks[close + 1].is_punct('{') {
                            self.warn(
                                t.line,
                                format!("anonymous subclass of `{}` in `{}` skipped", ty.name, decl.name),
                            );
                            let body_close = matching(toks, close + 1, '{', '}').unwrap_or(range.end);
                            i = body_close + 1;
                        } else {
                            i = after;
                        }
                    }
                    Some((_, after)) => i = after,
                    None => i += 1,
                }
                continue;
            }

            if is_type_decl_keyword(word) && !prev_is_dot && toks.get(i + 1).is_some_and(|n| n.ident().is_some()) {
                let name = toks[i + 1].ident().unwrap_or_default().to_owned();
                let mut j = i + 1;
                while j < range.end && !toks[j].is_punct('{') {
                    j += 1;
                }
                if j < range.end {
                    self.warn(t.line, format!("local type `{name}` in `{}` skipped", decl.name));
                    i = matching(toks, j, '{', '}').map_or(range.end, |c| c + 1);
                    continue;
                }
            }

            // receiver.method(
            if !prev_is_dot
                && toks.get(i + 1).is_some_and(|n| n.is_punct('.'))
                && toks.get(i + 2).and_then(Token::ident).is_some()
                && toks.get(i + 3).is_some_and(|n| n.is_punct('('))
            {
                if word == "this" {
                    // this.method() is a self call
                } else if let Some(ty) = scope.get(word.as_str()) {
                    decl.invoked.push(ty.clone());
                } else if word.starts_with(char::is_uppercase) {
                    decl.invoked.push(word.clone());
                }
                i += 2;
                continue;
            }
            // this.field.method(
            if word == "this"
                && toks.get(i + 1).is_some_and(|n| n.is_punct('.'))
                && toks.get(i + 3).is_some_and(|n| n.is_punct('.'))
                && toks.get(i + 5).is_some_and(|n| n.is_punct('('))
            {
                if let Some(field) = toks.get(i + 2).and_then(Token::ident) {
                    if let Some(ty) = scope.get(field) {
                        decl.invoked.push(ty.clone());
                    }
                }
                i += 4;
                continue;
            }

            // local declaration: Type name (= | ; | : | , | ))
            if !prev_is_dot && (!is_keyword(word) || word == "final") {
                let start = if word == "final" { i + 1 } else { i };
                if let Some((ty, after)) = self.try_type_at(start) {
                    if let (Some(name), Some(follow)) = (toks.get(after).and_then(Token::ident), toks.get(after + 1)) {
                        let declares =
                            !is_keyword(name) && ['=', ';', ':', ',', ')'].iter().any(|&c| follow.is_punct(c));
                        if declares {
                            let declared = if ty.name == "var" {
                                inferred_var_type(toks, after + 1)
                            } else if PRIMITIVES.contains(&ty.name.as_str()) {
                                None
                            } else {
                                Some(ty.name.clone())
                            };
                            match declared {
                                Some(d) => {
                                    scope.insert(name.to_owned(), d);
                                }
                                None => {
                                    scope.remove(name);
                                }
                            }
                            i = after;
                            continue;
                        }
                    }
                }
            }
            i += 1;
        }
    }
}

/// `var x = new Foo(...)` declares `x` as `Foo`.
fn inferred_var_type(toks: &[Token], eq: usize) -> Option<String> {
    if toks.get(eq)?.is_punct('=') && toks.get(eq + 1)?.is_ident("new") {
        let mut j = eq + 2;
        let mut name = toks.get(j)?.ident()?.to_owned();
        while toks.get(j + 1).is_some_and(|t| t.is_punct('.')) {
            j += 2;
            name = toks.get(j)?.ident()?.to_owned();
        }
        return Some(name);
    }
    None
}

fn matching(toks: &[Token], open_at: usize, open: char, close: char) -> Option<usize> {
    let mut depth = 0usize;
    for (k, t) in toks.iter().enumerate().skip(open_at) {
        if t.is_punct(open) {
            depth += 1;
        } else if t.is_punct(close) {
            depth -= 1;
            if depth == 0 {
                return Some(k);
            }
        }
    }
    None
}
