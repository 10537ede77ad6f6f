//! Graph literals: the textual format used by the CLI and serialization.
//!
//! Grammar (whitespace-insensitive, parsed recursively):
//!
//! ```text
//! expr := cycle '(' n ')'
//!       | circulant '(' n [';' list] ')'
//!       | gcd '(' n [';' list] ')'
//!       | union '(' expr ',' expr ')'
//!       | complement '(' expr ')'
//!       | product '(' expr {',' expr} ')'
//! ```
//!
//! `union` and `complement` operate on circulant operands; `product` accepts
//! both and flattens nested products into one factor list.

use crate::error::{Error, Result};
use crate::graph::{
    gcd_set, is_gcd_set, CirculantGraph, CompositeFactor, CompositeGraph, DivisorSet,
};
use num_integer::gcd as int_gcd;
use std::fmt;

/// A parsed graph: either a single circulant or a Cartesian product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphExpr {
    Circulant(CirculantGraph),
    Composite(CompositeGraph),
}

impl GraphExpr {
    pub fn vertex_count(&self) -> u64 {
        match self {
            GraphExpr::Circulant(g) => g.order(),
            GraphExpr::Composite(g) => g.vertex_count(),
        }
    }
}

pub fn parse_graph_literal(src: &str) -> Result<GraphExpr> {
    let mut p = Parser { src, pos: 0 };
    let expr = p.parse_expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len()
            && self.src.as_bytes()[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && self.src.as_bytes()[self.pos].is_ascii_alphabetic()
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a graph constructor name"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn number_list(&mut self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        if self.peek() == Some(b')') {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn parse_expr(&mut self) -> Result<GraphExpr> {
        let name_pos = self.pos;
        let name = self.ident()?;
        self.expect(b'(')?;
        let expr = match name {
            "cycle" => {
                let n = self.number()?;
                GraphExpr::Circulant(CirculantGraph::cycle(n)?)
            }
            "circulant" => {
                let n = self.number()?;
                let elems = if self.peek() == Some(b';') {
                    self.pos += 1;
                    self.number_list()?
                } else {
                    Vec::new()
                };
                GraphExpr::Circulant(CirculantGraph::new(
                    crate::graph::ConnectionSet::new(n, elems)?,
                ))
            }
            "gcd" => {
                let n = self.number()?;
                let divs = if self.peek() == Some(b';') {
                    self.pos += 1;
                    self.number_list()?
                } else {
                    Vec::new()
                };
                GraphExpr::Circulant(CirculantGraph::gcd_graph(&DivisorSet::new(n, divs)?))
            }
            "union" => {
                let a = self.parse_expr()?;
                self.expect(b',')?;
                let b = self.parse_expr()?;
                let (GraphExpr::Circulant(ga), GraphExpr::Circulant(gb)) = (&a, &b) else {
                    return Err(Error::Parse {
                        pos: name_pos,
                        msg: "union operands must be circulant graphs, not products".into(),
                    });
                };
                GraphExpr::Circulant(ga.union(gb)?)
            }
            "complement" => {
                let a = self.parse_expr()?;
                let GraphExpr::Circulant(g) = a else {
                    return Err(Error::Parse {
                        pos: name_pos,
                        msg: "complement of a product is not representable; \
                              apply complement to the factors instead"
                            .into(),
                    });
                };
                GraphExpr::Circulant(g.complement())
            }
            "product" => {
                let mut factors: Vec<CompositeFactor> = Vec::new();
                loop {
                    // remember whether the operand was written as complement(...)
                    let operand_pos = self.pos;
                    let sub = self.parse_expr()?;
                    let complemented = self.src[operand_pos..]
                        .trim_start()
                        .starts_with("complement");
                    match sub {
                        GraphExpr::Circulant(g) => {
                            factors.push(CompositeFactor { graph: g, complemented })
                        }
                        GraphExpr::Composite(c) => factors.extend(c.factors().iter().cloned()),
                    }
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                GraphExpr::Composite(CompositeGraph::new(factors)?)
            }
            other => {
                return Err(Error::Parse {
                    pos: name_pos,
                    msg: format!("unknown graph constructor '{other}'"),
                })
            }
        };
        self.expect(b')')?;
        Ok(expr)
    }
}

/// Canonical display of a circulant: the most specific constructor wins
/// (cycle, then gcd, then raw circulant).
fn fmt_circulant(g: &CirculantGraph, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let n = g.order();
    let s = g.connection();
    if n >= 3 && s.elements() == [1, n - 1] {
        return write!(f, "cycle({n})");
    }
    if is_gcd_set(s) {
        let mut divs: Vec<u64> = s.elements().iter().map(|&x| int_gcd(x, n)).collect();
        divs.sort_unstable();
        divs.dedup();
        // sanity: these classes reproduce the set
        if let Ok(d) = DivisorSet::new(n, divs.iter().copied()) {
            if gcd_set(&d) == *s {
                write!(f, "gcd({n}")?;
                if !divs.is_empty() {
                    write!(f, "; ")?;
                    for (i, d) in divs.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{d}")?;
                    }
                }
                return write!(f, ")");
            }
        }
    }
    write!(f, "circulant({n}")?;
    if !s.is_empty() {
        write!(f, "; ")?;
        for (i, x) in s.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
    }
    write!(f, ")")
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Circulant(g) => fmt_circulant(g, f),
            GraphExpr::Composite(c) => {
                write!(f, "product(")?;
                for (i, factor) in c.factors().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if factor.complemented {
                        write!(f, "complement(")?;
                        fmt_circulant(&factor.graph.complement(), f)?;
                        write!(f, ")")?;
                    } else {
                        fmt_circulant(&factor.graph, f)?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}
