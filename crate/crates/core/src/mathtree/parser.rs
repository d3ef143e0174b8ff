//! Recursive-descent parser for a LaTeX subset.
//!
//! Precedence, loosest first: relations (`= < > \le \ge \ne`), `+ -`,
//! unary sign, `* /`, implicit multiplication, scripts (`^ _`). Every binary
//! level is left-associative. `{...}` and `(...)` group without producing a
//! node. Commands other than `\frac` and the relations are leaf symbols.

use thiserror::Error;

use super::{MathNode, MathTree};

pub const IMPLICIT_MUL: &str = "\u{b7}";
pub const FRACTION: &str = "frac";
pub const NEGATION: &str = "neg";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {reason}")]
pub struct ParseError {
    pub position: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Atom(String),
    Command(String),
    Op(char),
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn relation_label(command: &str) -> Option<&'static str> {
    match command {
        "\\le" | "\\leq" => Some("\\le"),
        "\\ge" | "\\geq" => Some("\\ge"),
        "\\ne" | "\\neq" => Some("\\ne"),
        _ => None,
    }
}

fn lex(source: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = source.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        let kind = match c {
            '\\' => match chars.peek().copied() {
                Some((_, n)) if n.is_ascii_alphabetic() => {
                    let mut name = String::from('\\');
                    while let Some(&(_, n)) = chars.peek() {
                        if !n.is_ascii_alphabetic() {
                            break;
                        }
                        name.push(n);
                        chars.next();
                    }
                    Kind::Command(name)
                }
                Some((_, n)) => {
                    chars.next();
                    Kind::Atom(format!("\\{n}"))
                }
                None => Kind::Atom("\\".into()),
            },
            '0'..='9' => {
                let mut number = String::from(c);
                while let Some(&(_, n)) = chars.peek() {
                    if !n.is_ascii_digit() {
                        break;
                    }
                    number.push(n);
                    chars.next();
                }
                // A decimal point only belongs to the number when digits follow it.
                let mut ahead = chars.clone();
                if let (Some((_, '.')), Some((_, d))) = (ahead.next(), ahead.next()) {
                    if d.is_ascii_digit() {
                        chars.next();
                        number.push('.');
                        while let Some(&(_, n)) = chars.peek() {
                            if !n.is_ascii_digit() {
                                break;
                            }
                            number.push(n);
                            chars.next();
                        }
                    }
                }
                Kind::Atom(number)
            }
            '+' | '-' | '*' | '/' | '^' | '_' | '=' | '<' | '>' | '{' | '}' | '(' | ')' => {
                Kind::Op(c)
            }
            _ => Kind::Atom(c.to_string()),
        };
        tokens.push(Token { kind, pos });
    }
    tokens
}

struct Parser {
    tokens: Vec<Token>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Kind> {
        self.tokens.get(self.index).map(|t| &t.kind)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.index).cloned();
        self.index += 1;
        token
    }

    fn error<T>(&self, position: usize, reason: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            reason: reason.into(),
        })
    }

    fn peek_op(&self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Kind::Op(c)) if ops.contains(c) => Some(*c),
            _ => None,
        }
    }

    fn peek_relation(&self) -> Option<&'static str> {
        match self.peek()? {
            Kind::Op('=') => Some("="),
            Kind::Op('<') => Some("<"),
            Kind::Op('>') => Some(">"),
            Kind::Command(name) => relation_label(name),
            _ => None,
        }
    }

    fn starts_operand(&self) -> bool {
        match self.peek() {
            Some(Kind::Atom(_)) => true,
            Some(Kind::Command(name)) => relation_label(name).is_none(),
            Some(Kind::Op(c)) => matches!(c, '{' | '('),
            None => false,
        }
    }

    fn relation(&mut self) -> Result<MathNode, ParseError> {
        let mut lhs = self.additive()?;
        while let Some(label) = self.peek_relation() {
            self.bump();
            let rhs = self.additive()?;
            lhs = MathNode::branch(label, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<MathNode, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek_op(&['+', '-']) {
            self.bump();
            let rhs = self.unary()?;
            lhs = MathNode::branch(op.to_string(), vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<MathNode, ParseError> {
        match self.peek_op(&['+', '-']) {
            Some('-') => {
                self.bump();
                Ok(MathNode::branch(NEGATION, vec![self.unary()?]))
            }
            Some(_) => {
                self.bump();
                self.unary()
            }
            None => self.multiplicative(),
        }
    }

    fn multiplicative(&mut self) -> Result<MathNode, ParseError> {
        let mut lhs = self.implicit()?;
        while let Some(op) = self.peek_op(&['*', '/']) {
            self.bump();
            let rhs = self.implicit()?;
            lhs = MathNode::branch(op.to_string(), vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn implicit(&mut self) -> Result<MathNode, ParseError> {
        let mut lhs = self.scripted()?;
        while self.starts_operand() {
            let rhs = self.scripted()?;
            lhs = MathNode::branch(IMPLICIT_MUL, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn scripted(&mut self) -> Result<MathNode, ParseError> {
        let mut base = self.primary()?;
        while let Some(op) = self.peek_op(&['^', '_']) {
            self.bump();
            let arg = self.primary()?;
            base = MathNode::branch(op.to_string(), vec![base, arg]);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MathNode, ParseError> {
        let position = self.position();
        let Some(token) = self.bump() else {
            return self.error(position, "empty operand at end of input");
        };
        match token.kind {
            Kind::Atom(symbol) => Ok(MathNode::leaf(symbol)),
            Kind::Command(name) if name == "\\frac" => {
                let numerator = self.primary()?;
                let denominator = self.primary()?;
                Ok(MathNode::branch(FRACTION, vec![numerator, denominator]))
            }
            Kind::Command(name) if relation_label(&name).is_some() => {
                self.error(position, format!("empty operand before {name}"))
            }
            Kind::Command(name) => Ok(MathNode::leaf(name)),
            Kind::Op(open @ ('{' | '(')) => {
                let close = if open == '{' { '}' } else { ')' };
                if self.peek_op(&[close]).is_some() {
                    return self.error(self.position(), format!("empty group {open}{close}"));
                }
                let inner = self.relation()?;
                match self.bump() {
                    Some(Token {
                        kind: Kind::Op(c), ..
                    }) if c == close => Ok(inner),
                    Some(t) => self.error(
                        t.pos,
                        format!("expected {close:?} to close {open:?} at byte {position}"),
                    ),
                    None => self.error(
                        self.end,
                        format!("unclosed {open:?} opened at byte {position}"),
                    ),
                }
            }
            Kind::Op(c @ ('}' | ')')) => self.error(position, format!("unbalanced {c:?}")),
            Kind::Op(c) => self.error(position, format!("empty operand before {c:?}")),
        }
    }
}

pub fn parse_expression(source: &str) -> Result<MathTree, ParseError> {
    let tokens = lex(source);
    if tokens.is_empty() {
        return Err(ParseError {
            position: 0,
            reason: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        index: 0,
        end: source.len(),
    };
    let root = parser.relation()?;
    if let Some(token) = parser.tokens.get(parser.index) {
        let reason = match &token.kind {
            Kind::Op(c @ ('}' | ')')) => format!("unbalanced {c:?}"),
            other => format!("unexpected token {other:?}"),
        };
        return Err(ParseError {
            position: token.pos,
            reason,
        });
    }
    Ok(MathTree { root })
}
