//! Symbolic input syntax for field elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := rational | decimal | name | '(' expr ')'
//! name   := i | phi | φ | sqrt2 | sqrt5 | sqrt10
//! ```

use super::{parse_rational, FieldElem, FieldError};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, FieldError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            out.push(Token::Number(chars[start..k].iter().collect()));
        } else if c.is_alphabetic() || c == '√' {
            let start = k;
            k += 1;
            while k < chars.len() && chars[k].is_alphanumeric() {
                k += 1;
            }
            out.push(Token::Name(chars[start..k].iter().collect()));
        } else if "+-*/^()·".contains(c) {
            out.push(Token::Op(if c == '·' { '*' } else { c }));
            k += 1;
        } else {
            return Err(FieldError::Parse(format!(
                "unexpected character `{c}` in `{s}`"
            )));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldElem, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc + self.term()?;
            } else if self.eat_op('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc * self.unary()?;
            } else if self.eat_op('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else if matches!(
                self.peek(),
                Some(Token::Number(_) | Token::Name(_) | Token::Op('('))
            ) {
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElem, FieldError> {
        if self.eat_op('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldElem, FieldError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let negative = self.eat_op('-');
        let exp: u32 = match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                n.parse()
                    .map_err(|_| FieldError::Parse(format!("bad exponent `{n}`")))?
            }
            _ => return Err(FieldError::Parse("expected exponent after `^`".into())),
        };
        let value = base.pow(exp);
        if negative {
            value.inv()
        } else {
            Ok(value)
        }
    }

    fn atom(&mut self) -> Result<FieldElem, FieldError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| FieldError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Number(n) => Ok(FieldElem::from_rational(parse_rational(&n)?)),
            Token::Name(name) => match name.as_str() {
                "i" => Ok(FieldElem::i()),
                "phi" | "φ" => Ok(FieldElem::phi()),
                "sqrt2" | "√2" => Ok(FieldElem::sqrt2()),
                "sqrt5" | "√5" => Ok(FieldElem::sqrt5()),
                "sqrt10" | "√10" => Ok(FieldElem::sqrt10()),
                other => Err(FieldError::Parse(format!("unknown symbol `{other}`"))),
            },
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(FieldError::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Token::Op(c) => Err(FieldError::Parse(format!("unexpected `{c}`"))),
        }
    }
}

pub(super) fn parse_expr(s: &str) -> Result<FieldElem, FieldError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(FieldError::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(FieldError::Parse(format!("trailing input in `{s}`")));
    }
    Ok(value)
}
