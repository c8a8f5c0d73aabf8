//! Graph specification language.
//!
//! ```text
//! expr  := prim | wedge
//! prim  := ("P" | "C") "(" int ")"
//! wedge := "wedge(" expr "@" int ("," expr "@" int)+ ")"
//! ```
//!
//! Whitespace is ignored between tokens. Indices are 1-based. A nested wedge
//! numbers its vertices the way the built graph does: the wedge point is 1,
//! then each operand's remaining vertices in order.

use std::fmt;

use thiserror::Error;
use wedgehom::graph::{self, Graph, WedgeSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    /// Operands with the 1-based index of their base vertex.
    Wedge(Vec<(GraphSpec, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("index {index} out of range 1..={vertex_count} for operand {operand}")]
    IndexOutOfRange {
        operand: String,
        index: usize,
        vertex_count: usize,
    },
    #[error("C({0}) needs at least 3 vertices")]
    ShortCycle(usize),
    #[error(transparent)]
    Graph(#[from] wedgehom::Error),
}

impl GraphSpec {
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphSpec::Path(m) => *m,
            GraphSpec::Cycle(n) => *n,
            GraphSpec::Wedge(parts) => {
                parts.iter().map(|(p, _)| p.vertex_count()).sum::<usize>() + 1 - parts.len()
            }
        }
    }

    pub fn build(&self) -> Result<Graph, SpecError> {
        Ok(match self {
            GraphSpec::Path(m) => graph::path(*m)?,
            GraphSpec::Cycle(n) => graph::cycle(*n)?,
            GraphSpec::Wedge(parts) => {
                let built = parts
                    .iter()
                    .map(|(p, i)| Ok((p.build()?, i - 1)))
                    .collect::<Result<Vec<_>, SpecError>>()?;
                graph::wedge(&WedgeSpec::new(built)?)?
            }
        })
    }

    fn validate(&self) -> Result<(), SpecError> {
        match self {
            GraphSpec::Path(_) => Ok(()),
            GraphSpec::Cycle(n) if *n < 3 => Err(SpecError::ShortCycle(*n)),
            GraphSpec::Cycle(_) => Ok(()),
            GraphSpec::Wedge(parts) => parts.iter().try_for_each(|(p, i)| {
                p.validate()?;
                let n = p.vertex_count();
                if *i == 0 || *i > n {
                    return Err(SpecError::IndexOutOfRange {
                        operand: p.to_string(),
                        index: *i,
                        vertex_count: n,
                    });
                }
                Ok(())
            }),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path(m) => write!(f, "P({m})"),
            GraphSpec::Cycle(n) => write!(f, "C({n})"),
            GraphSpec::Wedge(parts) => {
                write!(f, "wedge(")?;
                for (j, (p, i)) in parts.iter().enumerate() {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}@{i}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for GraphSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_spec(s)
    }
}

/// Parses and validates a specification.
pub fn parse_spec(text: &str) -> Result<GraphSpec, SpecError> {
    let mut p = Parser { text, pos: 0 };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    spec.validate()?;
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn expr(&mut self) -> Result<GraphSpec, SpecError> {
        if self.eat("wedge") {
            self.expect("(")?;
            let mut parts = vec![self.operand()?];
            while self.eat(",") {
                parts.push(self.operand()?);
            }
            if parts.len() < 2 {
                return Err(self.error("a wedge needs at least two operands"));
            }
            self.expect(")")?;
            Ok(GraphSpec::Wedge(parts))
        } else if self.eat("P") {
            self.expect("(")?;
            let m = self.int()?;
            self.expect(")")?;
            Ok(GraphSpec::Path(m))
        } else if self.eat("C") {
            self.expect("(")?;
            let n = self.int()?;
            self.expect(")")?;
            Ok(GraphSpec::Cycle(n))
        } else {
            Err(self.error("expected P(..), C(..) or wedge(..)"))
        }
    }

    fn operand(&mut self) -> Result<(GraphSpec, usize), SpecError> {
        let e = self.expr()?;
        self.expect("@")?;
        Ok((e, self.int()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitives() {
        assert_eq!(parse_spec("P(5)").unwrap(), GraphSpec::Path(5));
        assert_eq!(parse_spec(" C ( 4 ) ").unwrap(), GraphSpec::Cycle(4));
    }

    #[test]
    fn wedges() {
        let s = parse_spec("wedge(C(4)@1, P(5)@3)").unwrap();
        assert_eq!(
            s,
            GraphSpec::Wedge(vec![(GraphSpec::Cycle(4), 1), (GraphSpec::Path(5), 3)])
        );
        assert_eq!(s.vertex_count(), 8);
        let s = parse_spec("wedge(P(7)@1, P(7)@1, P(5)@1)").unwrap();
        assert_eq!(s.vertex_count(), 17);
        assert_eq!(s.to_string(), "wedge(P(7)@1, P(7)@1, P(5)@1)");
        assert_eq!(s.build().unwrap().vertex_count(), 17);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_spec("Q(3)"), Err(SpecError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_spec("P(3"), Err(SpecError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_spec("wedge(P(3)@1)"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec("P(3) x"), Err(SpecError::Syntax { pos: 5, .. })));
        assert!(matches!(
            parse_spec("wedge(P(3)@4, C(3)@1)"),
            Err(SpecError::IndexOutOfRange { index: 4, vertex_count: 3, .. })
        ));
        assert!(matches!(parse_spec("C(2)"), Err(SpecError::ShortCycle(2))));
        assert!(matches!(parse_spec("wedge(P(3)@0, C(3)@1)"), Err(SpecError::IndexOutOfRange { .. })));
    }

    #[test]
    fn nested_wedge_numbering() {
        let s = parse_spec("wedge(wedge(C(3)@1, C(3)@1)@1, P(2)@1)").unwrap();
        let g = s.build().unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.degree(0), 5);
    }
}
