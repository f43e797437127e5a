//! The expression grammar shared by every algebra:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' ['-'] digits]
//! atom   := rational | generator | '(' expr ')' | '(#)'
//! ```
//!
//! Juxtaposition multiplies; `(#)` is the unit. Rationals are `p` or `p/q`.

use thiserror::Error;

use super::{
    AlgebraError, GroupAlgebraElement, GroupAlphabet, GroupWord, Rational, Ring, TensorAlphabet, TensorElement,
    UnitRing,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator '{name}' at {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("at {position}: {source}")]
    Algebra { position: usize, source: AlgebraError },
}

/// Supplies generators, scalars and inverses for one algebra.
pub trait ExprContext {
    type Elem: Ring;
    fn generator(&self, name: &str) -> Option<Self::Elem>;
    fn scalar(&self, c: &Rational) -> Self::Elem;
    fn inverse(&self, e: &Self::Elem) -> Option<Self::Elem>;
}

pub struct GroupContext(pub GroupAlphabet);

impl ExprContext for GroupContext {
    type Elem = GroupAlgebraElement;
    fn generator(&self, name: &str) -> Option<GroupAlgebraElement> {
        let g = self.0.index_of(name)?;
        Some(GroupAlgebraElement::from_word(GroupWord::generator(self.0, g).ok()?))
    }
    fn scalar(&self, c: &Rational) -> GroupAlgebraElement {
        GroupAlgebraElement::constant(self.0, c.clone())
    }
    fn inverse(&self, e: &GroupAlgebraElement) -> Option<GroupAlgebraElement> {
        e.unit_inverse()
    }
}

pub struct TensorContext(pub TensorAlphabet);

impl ExprContext for TensorContext {
    type Elem = TensorElement;
    fn generator(&self, name: &str) -> Option<TensorElement> {
        Some(TensorElement::letter(self.0, self.0.index_of(name)?))
    }
    fn scalar(&self, c: &Rational) -> TensorElement {
        TensorElement::constant(self.0, c.clone())
    }
    fn inverse(&self, e: &TensorElement) -> Option<TensorElement> {
        e.unit_inverse()
    }
}

pub fn parse_group(alphabet: GroupAlphabet, text: &str) -> Result<GroupAlgebraElement, ParseError> {
    parse_with(&GroupContext(alphabet), text)
}

pub fn parse_tensor(alphabet: TensorAlphabet, text: &str) -> Result<TensorElement, ParseError> {
    parse_with(&TensorContext(alphabet), text)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Unit,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' => out.push((start, Token::Star)),
            '^' => out.push((start, Token::Caret)),
            ')' => out.push((start, Token::RParen)),
            '(' => {
                if chars.get(i + 1) == Some(&'#') && chars.get(i + 2) == Some(&')') {
                    out.push((start, Token::Unit));
                    i += 3;
                    continue;
                }
                out.push((start, Token::LParen));
            }
            _ if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let num: String = chars[i..j].iter().collect();
                let mut value = Rational::from_integer(num.parse().expect("digits"));
                if j < chars.len() && chars[j] == '/' {
                    let mut k = j + 1;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == j + 1 {
                        return Err(ParseError::Syntax {
                            position: j,
                            message: "expected a denominator after '/'".into(),
                        });
                    }
                    let den: String = chars[j + 1..k].iter().collect();
                    let den: num::BigInt = den.parse().expect("digits");
                    if den == num::BigInt::from(0) {
                        return Err(ParseError::Syntax {
                            position: j + 1,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(den);
                    j = k;
                }
                out.push((start, Token::Number(value)));
                i = j;
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                out.push((start, Token::Ident(chars[i..j].iter().collect())));
                i = j;
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: start,
                    message: format!("unexpected character '{}'", c),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, C: ExprContext> {
    ctx: &'a C,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

pub fn parse_with<C: ExprContext>(ctx: &C, text: &str) -> Result<C::Elem, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        ctx,
        tokens,
        pos: 0,
        end: text.len(),
    };
    if p.tokens.is_empty() {
        return Err(ParseError::Syntax {
            position: 0,
            message: "empty expression".into(),
        });
    }
    let value = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(ParseError::Syntax {
            position: p.tokens[p.pos].0,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(value)
}

impl<C: ExprContext> Parser<'_, C> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<C::Elem, ParseError> {
        let negate_first = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.negated();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.plus(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.minus(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<C::Elem, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.times(&self.factor()?);
                }
                Some(Token::Number(_) | Token::Ident(_) | Token::Unit | Token::LParen) => {
                    acc = acc.times(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<C::Elem, ParseError> {
        let start = self.here();
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp_pos = self.here();
        let k = match self.tokens.get(self.pos) {
            Some((_, Token::Number(n))) if n.is_integer() => {
                let k: u32 = n.to_integer().try_into().map_err(|_| ParseError::Syntax {
                    position: exp_pos,
                    message: "exponent too large".into(),
                })?;
                self.pos += 1;
                k
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: exp_pos,
                    message: "expected an integer exponent".into(),
                })
            }
        };
        let base = if negative {
            self.ctx.inverse(&base).ok_or_else(|| ParseError::Algebra {
                position: start,
                source: AlgebraError::NotAUnit(base.to_string()),
            })?
        } else {
            base
        };
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<C::Elem, ParseError> {
        let position = self.here();
        let token = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        match token {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(self.ctx.scalar(&n))
            }
            Some(Token::Unit) => {
                self.pos += 1;
                Ok(self.ctx.scalar(&Rational::from_integer(1.into())))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.ctx
                    .generator(&name)
                    .ok_or(ParseError::UnknownGenerator { name, position })
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(ParseError::Syntax {
                        position: self.here(),
                        message: "expected ')'".into(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                position,
                message: "expected a number, generator or '('".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{frac, int};

    #[test]
    fn group_expression_with_powers() {
        let a = parse_group(GroupAlphabet::F2, "X0^2 (X1 - 1)").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.augmentation(), int(0));
    }

    #[test]
    fn rational_coefficients_and_unit() {
        let a = parse_group(GroupAlphabet::F2, "3/6 (#) + 2 * X0").unwrap();
        assert_eq!(a.augmentation(), frac(5, 2));
    }

    #[test]
    fn negative_power_of_a_sum_is_rejected() {
        let err = parse_group(GroupAlphabet::F2, "(X0 + X1)^-1").unwrap_err();
        assert!(matches!(err, ParseError::Algebra { position: 0, .. }));
    }

    #[test]
    fn unknown_generator_reports_position() {
        let err = parse_group(GroupAlphabet::F2, "X0 Y1").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownGenerator {
                name: "Y1".into(),
                position: 3
            }
        );
    }

    #[test]
    fn tensor_expression() {
        let t = parse_tensor(TensorAlphabet::V, "e0 e1 - e1 e0").unwrap();
        assert!(t.is_homogeneous_of(2));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_group(GroupAlphabet::F2, "").is_err());
        assert!(parse_group(GroupAlphabet::F2, "X0 +").is_err());
        assert!(parse_group(GroupAlphabet::F2, "(X0").is_err());
        assert!(parse_group(GroupAlphabet::F2, "X0^").is_err());
        assert!(parse_group(GroupAlphabet::F2, "1/0").is_err());
        assert!(parse_group(GroupAlphabet::F2, "X0 $").is_err());
    }

    #[test]
    fn printed_form_parses_back() {
        for s in ["X0^2 X1^-1 - 1/3 X1 + 2", "-X0", "0", "X1^-3 X0^2"] {
            let a = parse_group(GroupAlphabet::F2, s).unwrap();
            assert_eq!(parse_group(GroupAlphabet::F2, &a.to_string()).unwrap(), a);
        }
    }
}
