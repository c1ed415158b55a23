//! Recursive-descent parser for the formula syntax.
//!
//! Precedence, tightest first: prefix `dia`/`<>`/`box`/`[]`/`~`, then `&`,
//! then `|`, then `->` (right-associative). `&` and `|` associate to the
//! left. Unicode `♦ ◆ ⧫ □ ◻ ⊤ ⊥ ∧ ∨ → ¬` are accepted as aliases.

use thiserror::Error;

use super::Formula;

/// Deepest nesting the parser accepts before giving up.
pub const MAX_NESTING: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    And,
    Or,
    Imp,
    Dia,
    Box,
    Not,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom '{s}'"),
            Tok::Top => "'top'".into(),
            Tok::Bot => "'bot'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Dia => "'dia'".into(),
            Tok::Box => "'box'".into(),
            Tok::Not => "'~'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let two = |s: &str| chars[i..].iter().take(2).collect::<String>() == s;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '~' | '¬' => Tok::Not,
            '→' => Tok::Imp,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bot,
            '♦' | '◆' | '⧫' => Tok::Dia,
            '□' | '◻' | '☐' => Tok::Box,
            '-' if two("->") => {
                i += 1;
                Tok::Imp
            }
            '<' if two("<>") => {
                i += 1;
                Tok::Dia
            }
            '[' if two("[]") => {
                i += 1;
                Tok::Box
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    "dia" => Tok::Dia,
                    "box" => Tok::Box,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(ParseError { position: start, message: format!("unexpected character '{other}'") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nesting: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn here(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError { position: self.here(), message: format!("expected {expected}, found {}", self.peek().describe()) }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(ParseError { position: self.here(), message: format!("nesting deeper than {MAX_NESTING}") });
        }
        Ok(())
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        self.enter()?;
        let lhs = self.disjunction()?;
        let out = if *self.peek() == Tok::Imp {
            self.bump();
            Formula::imp(lhs, self.implication()?)
        } else {
            lhs
        };
        self.nesting -= 1;
        Ok(out)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Dia => Formula::dia,
            Tok::Box => Formula::boxed,
            Tok::Not => Formula::not,
            _ => return self.primary(),
        };
        self.bump();
        self.enter()?;
        let sub = self.unary()?;
        self.nesting -= 1;
        Ok(wrap(sub))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0, nesting: 0 };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(parse("p & q -> r").unwrap(), Formula::imp(Formula::and(a("p"), a("q")), a("r")));
        assert_eq!(
            parse("box p -> p | bot").unwrap(),
            Formula::imp(Formula::boxed(a("p")), Formula::or(a("p"), Formula::Bot))
        );
        assert_eq!(parse("p -> q -> r").unwrap(), Formula::imp(a("p"), Formula::imp(a("q"), a("r"))));
        assert_eq!(parse("p | q | r").unwrap(), Formula::or(Formula::or(a("p"), a("q")), a("r")));
        assert_eq!(parse("~p").unwrap(), Formula::imp(a("p"), Formula::Bot));
        assert_eq!(parse("~~p").unwrap(), Formula::not(Formula::not(a("p"))));
        assert_eq!(parse("dia p & q").unwrap(), Formula::and(Formula::dia(a("p")), a("q")));
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("♦p ∧ □q → ⊥").unwrap(), parse("dia p & box q -> bot").unwrap());
        assert_eq!(parse("<>p ∨ []⊤").unwrap(), parse("dia p | box top").unwrap());
        assert_eq!(parse("¬p").unwrap(), parse("~p").unwrap());
    }

    #[test]
    fn dangling_arrow_fails_at_end() {
        let err = parse("p ->").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(err.message.contains("end of input"), "{err}");
    }

    #[test]
    fn other_errors_carry_positions() {
        assert_eq!(parse("(p & q").unwrap_err().position, 6);
        assert_eq!(parse("p q").unwrap_err().position, 2);
        assert_eq!(parse("p $ q").unwrap_err().position, 2);
        assert_eq!(parse("").unwrap_err().position, 0);
    }

    #[test]
    fn identifiers() {
        assert_eq!(parse("p_1 & Q2").unwrap(), Formula::and(a("p_1"), a("Q2")));
        assert_eq!(parse("topx").unwrap(), a("topx"));
    }

    #[test]
    fn deep_nesting_is_refused_not_overflowed() {
        let deep = format!("{}p{}", "(".repeat(10_000), ")".repeat(10_000));
        assert!(parse(&deep).is_err());
        let ok = format!("{}p{}", "(".repeat(100), ")".repeat(100));
        assert_eq!(parse(&ok).unwrap(), a("p"));
    }
}
