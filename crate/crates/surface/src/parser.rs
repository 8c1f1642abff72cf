//! Recursive-descent parser.
//!
//! ```text
//! decl  ::= def NAME : term := term
//!         | postulate NAME : term
//!         | (#eq | #fail-eq) label? atom atom : term
//!         | #norm label? term : term
//! label ::= [ NAME ]
//! term  ::= λ NAME+ . term | Π tele . term | Σ tele . term
//!         | let NAME : term := term in term
//!         | prod (-> term)?
//! tele  ::= ( NAME+ : term )+
//! prod  ::= app (× prod)?
//! app   ::= head atom*
//! head  ::= succ atom | fst atom | snd atom | Id atom atom atom
//!         | J atom atom atom atom atom atom | natrec atom atom atom atom | atom
//! atom  ::= NAME | NUM | Type NUM | Unit | tt | Nat | zero | refl
//!         | ( term ) | ( term , term (, term)* ) | ( term : term )
//! ```

use crate::lexer::{Directive, Keyword, Symbol, Token, TokenKind};
use crate::span::Span;
use crate::syntax::{Decl, DeclKind, JArgs, NatRecArgs, Term, TermKind, ANON};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at {span}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

pub fn parse_file(tokens: &[Token]) -> Result<Vec<Decl>, ParseError> {
    let mut p = Parser::new(tokens);
    let mut decls = Vec::new();
    while !p.at_eoi() {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

/// Parses a single term that must span the whole token stream.
pub fn parse_term(tokens: &[Token]) -> Result<Term, ParseError> {
    let mut p = Parser::new(tokens);
    let t = p.term()?;
    if !p.at_eoi() {
        return Err(p.error(&["end of input"]));
    }
    Ok(t)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token]) -> Parser<'a> {
        assert!(
            matches!(tokens.last().map(|t| t.kind), Some(TokenKind::Eoi)),
            "token stream must end with Eoi"
        );
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self) -> TokenKind {
        self.tokens[self.pos].kind
    }

    fn at_eoi(&self) -> bool {
        self.peek_kind() == TokenKind::Eoi
    }

    fn bump(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if t.kind != TokenKind::Eoi {
            self.pos += 1;
        }
        t
    }

    fn last_span(&self) -> Span {
        if self.pos == 0 {
            Span::default()
        } else {
            self.tokens[self.pos - 1].span
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let tok = self.peek();
        ParseError {
            span: tok.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn eat_symbol(&mut self, s: Symbol) -> bool {
        if self.peek_kind() == TokenKind::Symbol(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_symbol(&mut self, s: Symbol) -> Result<Span, ParseError> {
        if self.peek_kind() == TokenKind::Symbol(s) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{}`", s.as_str())]))
        }
    }

    fn expect_keyword(&mut self, k: Keyword) -> Result<Span, ParseError> {
        if self.peek_kind() == TokenKind::Keyword(k) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&format!("`{}`", k.as_str())]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        if self.peek_kind() == TokenKind::Ident {
            Ok(self.bump().lexeme.clone())
        } else {
            Err(self.error(&["identifier"]))
        }
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let start = self.peek().span;
        let kind = match self.peek_kind() {
            TokenKind::Keyword(Keyword::Def) => {
                self.bump();
                let name = self.ident()?;
                self.expect_symbol(Symbol::Colon)?;
                let ty = self.term()?;
                self.expect_symbol(Symbol::ColonEq)?;
                let body = self.term()?;
                DeclKind::Def { name, ty, body }
            }
            TokenKind::Keyword(Keyword::Postulate) => {
                self.bump();
                let name = self.ident()?;
                self.expect_symbol(Symbol::Colon)?;
                let ty = self.term()?;
                DeclKind::Postulate { name, ty }
            }
            TokenKind::Directive(d) => {
                self.bump();
                let label = if self.eat_symbol(Symbol::LBracket) {
                    let l = self.ident()?;
                    self.expect_symbol(Symbol::RBracket)?;
                    Some(l)
                } else {
                    None
                };
                match d {
                    Directive::Eq | Directive::FailEq => {
                        let lhs = self.atom()?;
                        let rhs = self.atom()?;
                        self.expect_symbol(Symbol::Colon)?;
                        let ty = self.term()?;
                        if d == Directive::Eq {
                            DeclKind::Eq { label, lhs, rhs, ty }
                        } else {
                            DeclKind::FailEq { label, lhs, rhs, ty }
                        }
                    }
                    Directive::Norm => {
                        let term = self.term()?;
                        self.expect_symbol(Symbol::Colon)?;
                        let ty = self.term()?;
                        DeclKind::Norm { label, term, ty }
                    }
                }
            }
            _ => return Err(self.error(&["`def`", "`postulate`", "directive"])),
        };
        Ok(Decl { kind, span: start.to(self.last_span()) })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.peek().span;
        match self.peek_kind() {
            TokenKind::Symbol(Symbol::Lambda) => {
                self.bump();
                let mut names = Vec::new();
                while self.peek_kind() == TokenKind::Ident {
                    names.push(self.bump().lexeme.clone());
                }
                if names.is_empty() {
                    return Err(self.error(&["binder name"]));
                }
                self.expect_symbol(Symbol::Dot)?;
                let body = self.term()?;
                let span = start.to(body.span);
                Ok(names
                    .into_iter()
                    .rev()
                    .fold(body, |b, x| Term::new(TermKind::Lam(x, Box::new(b)), span)))
            }
            TokenKind::Symbol(s @ (Symbol::Pi | Symbol::Sigma)) => {
                self.bump();
                let mut binders = Vec::new();
                loop {
                    self.expect_symbol(Symbol::LParen)?;
                    let mut names = Vec::new();
                    while self.peek_kind() == TokenKind::Ident {
                        names.push(self.bump().lexeme.clone());
                    }
                    if names.is_empty() {
                        return Err(self.error(&["binder name"]));
                    }
                    self.expect_symbol(Symbol::Colon)?;
                    let ty = self.term()?;
                    self.expect_symbol(Symbol::RParen)?;
                    for x in names {
                        binders.push((x, ty.clone()));
                    }
                    if self.peek_kind() != TokenKind::Symbol(Symbol::LParen) {
                        break;
                    }
                }
                self.expect_symbol(Symbol::Dot)?;
                let body = self.term()?;
                let span = start.to(body.span);
                Ok(binders.into_iter().rev().fold(body, |b, (x, ty)| {
                    let kind = if s == Symbol::Pi {
                        TermKind::Pi(x, Box::new(ty), Box::new(b))
                    } else {
                        TermKind::Sigma(x, Box::new(ty), Box::new(b))
                    };
                    Term::new(kind, span)
                }))
            }
            TokenKind::Keyword(Keyword::Let) => {
                self.bump();
                let name = self.ident()?;
                self.expect_symbol(Symbol::Colon)?;
                let ty = self.term()?;
                self.expect_symbol(Symbol::ColonEq)?;
                let val = self.term()?;
                self.expect_keyword(Keyword::In)?;
                let body = self.term()?;
                let span = start.to(body.span);
                Ok(Term::new(
                    TermKind::Let(name, Box::new(ty), Box::new(val), Box::new(body)),
                    span,
                ))
            }
            _ => {
                let lhs = self.prod()?;
                if self.eat_symbol(Symbol::Arrow) {
                    let rhs = self.term()?;
                    let span = lhs.span.to(rhs.span);
                    Ok(Term::new(
                        TermKind::Pi(ANON.to_string(), Box::new(lhs), Box::new(rhs)),
                        span,
                    ))
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    fn prod(&mut self) -> Result<Term, ParseError> {
        let lhs = self.app()?;
        if self.eat_symbol(Symbol::Times) {
            let rhs = match self.peek_kind() {
                TokenKind::Symbol(Symbol::Lambda | Symbol::Pi | Symbol::Sigma)
                | TokenKind::Keyword(Keyword::Let) => self.term()?,
                _ => self.prod()?,
            };
            let span = lhs.span.to(rhs.span);
            Ok(Term::new(
                TermKind::Sigma(ANON.to_string(), Box::new(lhs), Box::new(rhs)),
                span,
            ))
        } else {
            Ok(lhs)
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek_kind(),
            TokenKind::Ident
                | TokenKind::Nat(_)
                | TokenKind::Symbol(Symbol::LParen)
                | TokenKind::Keyword(
                    Keyword::Type
                        | Keyword::Unit
                        | Keyword::Tt
                        | Keyword::Nat
                        | Keyword::Zero
                        | Keyword::Refl
                )
        )
    }

    fn atoms<const N: usize>(&mut self) -> Result<[Term; N], ParseError> {
        let mut out = Vec::with_capacity(N);
        for _ in 0..N {
            out.push(self.atom()?);
        }
        Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let start = self.peek().span;
        let mut head = match self.peek_kind() {
            TokenKind::Keyword(k @ (Keyword::Succ | Keyword::Fst | Keyword::Snd)) => {
                self.bump();
                let a = Box::new(self.atom()?);
                let kind = match k {
                    Keyword::Succ => TermKind::Succ(a),
                    Keyword::Fst => TermKind::Fst(a),
                    _ => TermKind::Snd(a),
                };
                Term::new(kind, start.to(self.last_span()))
            }
            TokenKind::Keyword(Keyword::Id) => {
                self.bump();
                let [a, x, y] = self.atoms::<3>()?;
                Term::new(
                    TermKind::Id(Box::new(a), Box::new(x), Box::new(y)),
                    start.to(self.last_span()),
                )
            }
            TokenKind::Keyword(Keyword::J) => {
                self.bump();
                let [ty, motive, base, lhs, rhs, path] = self.atoms::<6>()?;
                Term::new(
                    TermKind::J(Box::new(JArgs { ty, motive, base, lhs, rhs, path })),
                    start.to(self.last_span()),
                )
            }
            TokenKind::Keyword(Keyword::NatRec) => {
                self.bump();
                let [motive, zero, succ, target] = self.atoms::<4>()?;
                Term::new(
                    TermKind::NatRec(Box::new(NatRecArgs { motive, zero, succ, target })),
                    start.to(self.last_span()),
                )
            }
            _ => self.atom()?,
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            let span = head.span.to(arg.span);
            head = Term::new(TermKind::App(Box::new(head), Box::new(arg)), span);
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let tok = self.peek().clone();
        let span = tok.span;
        let simple = |kind| Ok(Term::new(kind, span));
        match tok.kind {
            TokenKind::Ident => {
                self.bump();
                simple(TermKind::Var(tok.lexeme))
            }
            TokenKind::Nat(n) => {
                self.bump();
                let mut t = Term::new(TermKind::Zero, span);
                for _ in 0..n {
                    t = Term::new(TermKind::Succ(Box::new(t)), span);
                }
                Ok(t)
            }
            TokenKind::Keyword(Keyword::Type) => {
                self.bump();
                match self.peek_kind() {
                    TokenKind::Nat(n) if n <= u32::MAX as u64 => {
                        let end = self.bump().span;
                        Ok(Term::new(TermKind::Type(n as u32), span.to(end)))
                    }
                    _ => Err(self.error(&["universe level"])),
                }
            }
            TokenKind::Keyword(Keyword::Unit) => {
                self.bump();
                simple(TermKind::Unit)
            }
            TokenKind::Keyword(Keyword::Tt) => {
                self.bump();
                simple(TermKind::Tt)
            }
            TokenKind::Keyword(Keyword::Nat) => {
                self.bump();
                simple(TermKind::Nat)
            }
            TokenKind::Keyword(Keyword::Zero) => {
                self.bump();
                simple(TermKind::Zero)
            }
            TokenKind::Keyword(Keyword::Refl) => {
                self.bump();
                simple(TermKind::Refl)
            }
            TokenKind::Symbol(Symbol::LParen) => {
                self.bump();
                let first = self.term()?;
                if self.eat_symbol(Symbol::Colon) {
                    let ty = self.term()?;
                    let end = self.expect_symbol(Symbol::RParen)?;
                    return Ok(Term::new(
                        TermKind::Ann(Box::new(first), Box::new(ty)),
                        span.to(end),
                    ));
                }
                let mut items = vec![first];
                while self.eat_symbol(Symbol::Comma) {
                    items.push(self.term()?);
                }
                let end = match self.expect_symbol(Symbol::RParen) {
                    Ok(end) => end,
                    Err(_) if items.len() == 1 => {
                        return Err(self.error(&["`)`", "`,`", "`:`"]));
                    }
                    Err(_) => return Err(self.error(&["`)`", "`,`"])),
                };
                let full = span.to(end);
                if items.len() == 1 {
                    let mut t = items.pop().unwrap();
                    t.span = full;
                    return Ok(t);
                }
                let mut t = items.pop().unwrap();
                while let Some(a) = items.pop() {
                    t = Term::new(TermKind::Pair(Box::new(a), Box::new(t)), full);
                }
                Ok(t)
            }
            _ => Err(self.error(&["term"])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::tokenize;

    fn term(s: &str) -> Term {
        parse_term(&tokenize(s).unwrap()).unwrap()
    }

    #[test]
    fn arrow_is_right_associative() {
        let t = term("A -> B -> C");
        let expected = Term::pi(
            ANON,
            Term::var("A"),
            Term::pi(ANON, Term::var("B"), Term::var("C")),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn application_is_left_associative() {
        let t = term("f a b");
        let expected = Term::app(Term::app(Term::var("f"), Term::var("a")), Term::var("b"));
        assert_eq!(t, expected);
    }

    #[test]
    fn lambda_binders_nest() {
        assert_eq!(term("λ x y . x"), term("λ x . λ y . x"));
        assert_eq!(term("Π (x y : A) . B"), term("Π (x : A) . Π (y : A) . B"));
    }

    #[test]
    fn numerals_desugar() {
        assert_eq!(term("2"), term("succ (succ zero)"));
    }

    #[test]
    fn tuples_nest_right() {
        assert_eq!(term("(a, b, c)"), term("(a, (b, c))"));
    }

    #[test]
    fn def_declaration() {
        let toks = tokenize("def id : Π (A : Type 0) . A -> A := λ A x . x").unwrap();
        let decls = parse_file(&toks).unwrap();
        assert_eq!(decls.len(), 1);
        assert!(matches!(&decls[0].kind, DeclKind::Def { name, .. } if name == "id"));
    }

    #[test]
    fn eq_declaration() {
        let toks = tokenize("#eq (λ x . f x) f : A -> B").unwrap();
        let decls = parse_file(&toks).unwrap();
        assert_eq!(decls.len(), 1);
        match &decls[0].kind {
            DeclKind::Eq { label, lhs, rhs, ty } => {
                assert!(label.is_none());
                assert_eq!(*lhs, term("λ x . f x"));
                assert_eq!(*rhs, term("f"));
                assert_eq!(*ty, term("A -> B"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn labelled_directive() {
        let toks = tokenize("#fail-eq [distinct] zero (succ zero) : Nat").unwrap();
        let decls = parse_file(&toks).unwrap();
        assert_eq!(decls[0].name(), Some("distinct"));
    }

    #[test]
    fn error_reports_expected_set() {
        let toks = tokenize("def x : := y").unwrap();
        let err = parse_file(&toks).unwrap_err();
        assert_eq!(err.found, "`:=`");
        assert!(err.expected.contains(&"term".to_string()));
    }
}
