use super::{Expr, Func, Var};
use crate::error::{GeomError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            self.pos += len;
            return Ok((Tok::Ident(rest[..len].to_string()), start));
        }
        self.pos += c.len_utf8();
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(GeomError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize)> {
        let b = self.src.as_bytes();
        let mut i = self.pos;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let int_len = digits(&mut i);
        let mut frac_len = 0;
        if i < b.len() && b[i] == b'.' {
            i += 1;
            frac_len = digits(&mut i);
        }
        if int_len + frac_len == 0 {
            return Err(GeomError::Syntax {
                offset: start,
                message: "malformed number".into(),
            });
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if digits(&mut j) == 0 {
                return Err(GeomError::Syntax {
                    offset: j,
                    message: "exponent needs digits".into(),
                });
            }
            i = j;
        }
        let text = &self.src[start..i];
        self.pos = i;
        let x: f64 = text.parse().map_err(|_| GeomError::Syntax {
            offset: start,
            message: format!("malformed number `{text}`"),
        })?;
        Ok((Tok::Num(x), start))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

/// Parses a formula. Errors carry the byte offset of the offending token.
pub fn parse(text: &str) -> Result<Expr> {
    let mut lex = Lexer { src: text, pos: 0 };
    let (tok, at) = lex.next()?;
    let mut p = Parser { lex, tok, at };
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error("unexpected input after expression"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn bump(&mut self) -> Result<()> {
        let (tok, at) = self.lex.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn error(&self, msg: &str) -> GeomError {
        let found = match &self.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        };
        GeomError::Syntax {
            offset: self.at,
            message: format!("{msg}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.tok {
            self.bump()?;
            let rhs = self.term()?;
            lhs = if c == '+' { lhs + rhs } else { lhs - rhs };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.tok {
            self.bump()?;
            let rhs = self.unary()?;
            lhs = if c == '*' { lhs * rhs } else { lhs / rhs };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exp = self.unary()?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.tok.clone() {
            Tok::Num(x) => {
                self.bump()?;
                Ok(Expr::Num(x))
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                if name == "pi" {
                    self.bump()?;
                    return Ok(Expr::Pi);
                }
                if let Some(v) = Var::from_name(&name) {
                    self.bump()?;
                    return Ok(Expr::Var(v));
                }
                if let Some(f) = Func::from_name(&name) {
                    self.bump()?;
                    if self.tok != Tok::LParen {
                        return Err(self.error(&format!("`{name}` must be followed by `(`")));
                    }
                    self.bump()?;
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expr::call(f, arg));
                }
                Err(GeomError::UnknownIdentifier { name, offset: at })
            }
            _ => Err(self.error("expected a number, variable, function or `(`")),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        if self.tok != Tok::RParen {
            return Err(self.error("expected `)`"));
        }
        self.bump()
    }
}
