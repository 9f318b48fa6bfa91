use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(BigInt),
    /// Identifier; a trailing `*` that cannot start a product is included.
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Dot,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Semi,
    LBracket,
    RBracket,
    Tensor,
    Arrow,
    EqEq,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    /// 1-based column (in characters).
    pub col: usize,
}

fn operand_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '('
}

/// Tokenize one line. `line` is used for error positions.
pub fn lex(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, msg: String| Error::Syntax { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '.' => Some(Tok::Dot),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '⊗' => Some(Tok::Tensor),
            '*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(Token { tok: t, col });
            i += 1;
            continue;
        }
        match c {
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Token { tok: Tok::Arrow, col });
                    i += 2;
                } else {
                    out.push(Token { tok: Tok::Minus, col });
                    i += 1;
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push(Token { tok: Tok::EqEq, col });
                    i += 2;
                } else {
                    out.push(Token { tok: Tok::Eq, col });
                    i += 1;
                }
            }
            '(' => {
                if chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
                    out.push(Token { tok: Tok::Tensor, col });
                    i += 3;
                } else {
                    out.push(Token { tok: Tok::LParen, col });
                    i += 1;
                }
            }
            '"' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j >= chars.len() {
                    return Err(err(col, "unterminated string".into()));
                }
                out.push(Token { tok: Tok::Str(chars[start..j].iter().collect()), col });
                i = j + 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Int(s.parse().unwrap()), col });
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-' && ident_hyphen(&chars, i)) {
                    i += 1;
                }
                let mut s: String = chars[start..i].iter().collect();
                if chars.get(i) == Some(&'*') && star_is_suffix(&chars, i) {
                    s.push('*');
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(s), col });
            }
            _ => return Err(err(col, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// Hyphens inside keywords such as `hopf-axioms` (letter on both sides,
/// no surrounding spaces) belong to the identifier.
fn ident_hyphen(chars: &[char], i: usize) -> bool {
    i > 0
        && chars[i - 1].is_ascii_lowercase()
        && chars.get(i + 1).is_some_and(|c| c.is_ascii_lowercase())
        && {
            // `alpha-gamma` should still be a difference of two generators;
            // only the known check keywords use hyphens.
            let mut s = i;
            while s > 0 && (chars[s - 1].is_alphanumeric() || chars[s - 1] == '-') {
                s -= 1;
            }
            let mut e = i + 1;
            while e < chars.len() && (chars[e].is_alphanumeric() || chars[e] == '-') {
                e += 1;
            }
            let word: String = chars[s..e].iter().collect();
            HYPHENATED.contains(&word.as_str())
        }
}

pub const HYPHENATED: &[&str] = &[
    "hopf-axioms",
    "star-closure",
    "strong-connection",
    "sigma-nabla",
    "haar-invariance",
    "left-coideal",
    "star-variant",
    "ell-formulas",
    "gauge-coaction",
    "fibre-scalars",
    "tensor-identity",
    "torus-triangle",
    "antipode-inverse",
    "star-involution",
];

fn star_is_suffix(chars: &[char], i: usize) -> bool {
    let mut j = i + 1;
    while j < chars.len() && chars[j] == ' ' {
        j += 1;
    }
    match chars.get(j) {
        None => true,
        Some('(') => chars.get(j + 1) == Some(&'x') && chars.get(j + 2) == Some(&')'),
        Some(&c) => !operand_start(c) || keyword_at(chars, j),
    }
}

/// A check keyword that ends an expression (`... u* mod U2`).
fn keyword_at(chars: &[char], j: usize) -> bool {
    let mut e = j;
    while e < chars.len() && (chars[e].is_alphanumeric() || chars[e] == '_') {
        e += 1;
    }
    let w: String = chars[j..e].iter().collect();
    matches!(w.as_str(), "mod" | "in" | "anchor" | "mode")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idents(s: &str) -> Vec<Tok> {
        lex(s, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn star_suffix_rules() {
        assert_eq!(
            idents("alpha*gamma"),
            vec![Tok::Ident("alpha".into()), Tok::Star, Tok::Ident("gamma".into())]
        );
        assert_eq!(idents("gamma*.u*"), vec![Tok::Ident("gamma*".into()), Tok::Dot, Tok::Ident("u*".into())]);
        assert_eq!(
            idents("alpha**gamma"),
            vec![Tok::Ident("alpha*".into()), Tok::Star, Tok::Ident("gamma".into())]
        );
        assert_eq!(
            idents("u* mod U2"),
            vec![Tok::Ident("u*".into()), Tok::Ident("mod".into()), Tok::Ident("U2".into())]
        );
        assert_eq!(
            idents("gamma* (x) u"),
            vec![Tok::Ident("gamma*".into()), Tok::Tensor, Tok::Ident("u".into())]
        );
        assert_eq!(idents("check hopf-axioms")[1], Tok::Ident("hopf-axioms".into()));
        assert_eq!(idents("alpha-gamma")[1], Tok::Minus);
    }
}
