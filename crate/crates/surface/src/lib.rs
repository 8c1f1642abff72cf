//! Lexing, parsing and printing of the `.rgl` formalization language.

pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod span;
pub mod syntax;

pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse_file, parse_term, ParseError};
pub use pretty::{print_decl, print_file, print_term};
pub use span::{line_col, Span};
pub use syntax::{Decl, DeclKind, JArgs, NatRecArgs, Term, TermKind, ANON};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span,
            SyntaxError::Parse(e) => e.span,
        }
    }
}

/// Tokenizes and parses a whole file.
pub fn parse_str(source: &str) -> Result<Vec<Decl>, SyntaxError> {
    Ok(parse_file(&tokenize(source)?)?)
}

/// Tokenizes and parses a single term.
pub fn parse_str_term(source: &str) -> Result<Term, SyntaxError> {
    Ok(parse_term(&tokenize(source)?)?)
}
