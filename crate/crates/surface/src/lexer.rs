//! Lexer for `.rgl` source.

use crate::span::Span;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Keyword {
    Def,
    Postulate,
    Let,
    In,
    Type,
    Id,
    Refl,
    J,
    Unit,
    Tt,
    Nat,
    Zero,
    Succ,
    NatRec,
    Fst,
    Snd,
}

impl Keyword {
    pub fn from_word(word: &str) -> Option<Keyword> {
        Some(match word {
            "def" => Keyword::Def,
            "postulate" => Keyword::Postulate,
            "let" => Keyword::Let,
            "in" => Keyword::In,
            "Type" => Keyword::Type,
            "Id" => Keyword::Id,
            "refl" => Keyword::Refl,
            "J" => Keyword::J,
            "Unit" => Keyword::Unit,
            "tt" => Keyword::Tt,
            "Nat" => Keyword::Nat,
            "zero" => Keyword::Zero,
            "succ" => Keyword::Succ,
            "natrec" => Keyword::NatRec,
            "fst" => Keyword::Fst,
            "snd" => Keyword::Snd,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Def => "def",
            Keyword::Postulate => "postulate",
            Keyword::Let => "let",
            Keyword::In => "in",
            Keyword::Type => "Type",
            Keyword::Id => "Id",
            Keyword::Refl => "refl",
            Keyword::J => "J",
            Keyword::Unit => "Unit",
            Keyword::Tt => "tt",
            Keyword::Nat => "Nat",
            Keyword::Zero => "zero",
            Keyword::Succ => "succ",
            Keyword::NatRec => "natrec",
            Keyword::Fst => "fst",
            Keyword::Snd => "snd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Lambda,
    Pi,
    Sigma,
    Arrow,
    Times,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    ColonEq,
    Dot,
    Comma,
}

impl Symbol {
    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::Lambda => "λ",
            Symbol::Pi => "Π",
            Symbol::Sigma => "Σ",
            Symbol::Arrow => "->",
            Symbol::Times => "×",
            Symbol::LParen => "(",
            Symbol::RParen => ")",
            Symbol::LBracket => "[",
            Symbol::RBracket => "]",
            Symbol::Colon => ":",
            Symbol::ColonEq => ":=",
            Symbol::Dot => ".",
            Symbol::Comma => ",",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Directive {
    Eq,
    FailEq,
    Norm,
}

impl Directive {
    pub fn as_str(self) -> &'static str {
        match self {
            Directive::Eq => "#eq",
            Directive::FailEq => "#fail-eq",
            Directive::Norm => "#norm",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Keyword(Keyword),
    Symbol(Symbol),
    Nat(u64),
    Directive(Directive),
    Eoi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    /// Short description used in parse errors.
    pub fn describe(&self) -> String {
        match self.kind {
            TokenKind::Eoi => "end of input".to_string(),
            TokenKind::Ident => format!("identifier `{}`", self.lexeme),
            _ => format!("`{}`", self.lexeme),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("lexical error at {span}: {message}")]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

/// Characters allowed after the first character of an identifier, beyond
/// alphanumerics.
fn is_ident_extra(c: char) -> bool {
    matches!(c, '_' | '\'' | '⁺' | '⁻' | '±' | '₋' | '†')
}

fn is_reserved_char(c: char) -> bool {
    matches!(c, 'λ' | 'Π' | 'Σ' | '×' | '→')
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_') && !is_reserved_char(c)
}

fn is_ident_continue(c: char) -> bool {
    (c.is_alphanumeric() || is_ident_extra(c)) && !is_reserved_char(c)
}

/// Splits `source` into tokens, skipping whitespace and `--` comments.
/// The stream always ends with an `Eoi` token whose span is empty and sits at
/// the end of the input.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    let mut chars = source.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if source[start..].starts_with("--") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        let push = |tokens: &mut Vec<Token>, kind, end: usize| {
            tokens.push(Token {
                kind,
                lexeme: source[start..end].to_string(),
                span: Span::new(start, end),
            });
        };
        if is_ident_start(c) {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let word = &source[start..end];
            let kind = match word {
                "Pi" => TokenKind::Symbol(Symbol::Pi),
                "Sigma" => TokenKind::Symbol(Symbol::Sigma),
                _ => match Keyword::from_word(word) {
                    Some(kw) => TokenKind::Keyword(kw),
                    None => TokenKind::Ident,
                },
            };
            push(&mut tokens, kind, end);
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let value = source[start..end].parse::<u64>().map_err(|_| LexError {
                span: Span::new(start, end),
                message: "numeric literal out of range".to_string(),
            })?;
            push(&mut tokens, TokenKind::Nat(value), end);
            continue;
        }
        if c == '#' {
            chars.next();
            let mut end = start + 1;
            while let Some(&(i, c)) = chars.peek() {
                if !(c.is_ascii_lowercase() || c == '-') {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let kind = match &source[start..end] {
                "#eq" => Directive::Eq,
                "#fail-eq" => Directive::FailEq,
                "#norm" => Directive::Norm,
                other => {
                    return Err(LexError {
                        span: Span::new(start, end),
                        message: format!("unknown directive `{other}`"),
                    })
                }
            };
            push(&mut tokens, TokenKind::Directive(kind), end);
            continue;
        }
        chars.next();
        let next = chars.peek().map(|&(_, c)| c);
        let (symbol, end) = match c {
            'λ' | '\\' => (Symbol::Lambda, start + c.len_utf8()),
            'Π' => (Symbol::Pi, start + c.len_utf8()),
            'Σ' => (Symbol::Sigma, start + c.len_utf8()),
            '×' | '*' => (Symbol::Times, start + c.len_utf8()),
            '→' => (Symbol::Arrow, start + c.len_utf8()),
            '-' if next == Some('>') => {
                chars.next();
                (Symbol::Arrow, start + 2)
            }
            ':' if next == Some('=') => {
                chars.next();
                (Symbol::ColonEq, start + 2)
            }
            ':' => (Symbol::Colon, start + 1),
            '(' => (Symbol::LParen, start + 1),
            ')' => (Symbol::RParen, start + 1),
            '[' => (Symbol::LBracket, start + 1),
            ']' => (Symbol::RBracket, start + 1),
            '.' => (Symbol::Dot, start + 1),
            ',' => (Symbol::Comma, start + 1),
            _ => {
                return Err(LexError {
                    span: Span::new(start, start + c.len_utf8()),
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        push(&mut tokens, TokenKind::Symbol(symbol), end);
    }
    tokens.push(Token {
        kind: TokenKind::Eoi,
        lexeme: String::new(),
        span: Span::new(source.len(), source.len()),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lambda_identity() {
        assert_eq!(
            kinds("λ x . x"),
            vec![
                TokenKind::Symbol(Symbol::Lambda),
                TokenKind::Ident,
                TokenKind::Symbol(Symbol::Dot),
                TokenKind::Ident,
                TokenKind::Eoi
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(kinds(""), vec![TokenKind::Eoi]);
        assert_eq!(kinds("  -- only a comment\n"), vec![TokenKind::Eoi]);
    }

    #[test]
    fn eq_directive_counts() {
        let toks = tokenize("#eq refl refl : Id Nat zero zero").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Directive(Directive::Eq));
        // refl refl : Id Nat zero zero, then EOI
        assert_eq!(toks.len() - 1, 8);
    }

    #[test]
    fn arrow_and_comment() {
        assert_eq!(
            kinds("A -> B -- tail"),
            vec![
                TokenKind::Ident,
                TokenKind::Symbol(Symbol::Arrow),
                TokenKind::Ident,
                TokenKind::Eoi
            ]
        );
    }

    #[test]
    fn superscript_identifiers() {
        let toks = tokenize("disp⁺ p_† A₋₁B").unwrap();
        let words: Vec<_> = toks.iter().map(|t| t.lexeme.as_str()).collect();
        assert_eq!(words, vec!["disp⁺", "p_†", "A₋₁B", ""]);
    }

    #[test]
    fn bad_character() {
        let err = tokenize("x ? y").unwrap_err();
        assert_eq!(err.span, Span::new(2, 3));
    }
}
