//! The element expression grammar shared with the CLI.
//!
//! Expressions are whitespace-separated tokens: a vertex id, an edge id,
//! or an edge id with the suffix `^-1`. The literal `0`, standing alone,
//! denotes zero. Printing inverts parsing: `parse_element` of a printed
//! element yields an equal value.

use thiserror::Error;

use crate::gis::{reduce_word, GisElement, GisGenerator};
use crate::graph::Graph;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("{line}:{col}: unknown identifier `{token}`")]
    UnknownIdentifier {
        token: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: `{token}` names both a vertex and an edge")]
    AmbiguousIdentifier {
        token: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: malformed inverse suffix in `{token}` (only `^-1` is allowed)")]
    MalformedSuffix {
        token: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: vertex `{token}` cannot carry `^-1`")]
    InvertedVertex {
        token: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: the zero literal must stand alone")]
    MisplacedZero { line: usize, col: usize },
    #[error("empty expression")]
    Empty,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut start: Option<(usize, usize, usize)> = None; // byte offset, line, col
    for (offset, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some((s, l, k)) = start.take() {
                tokens.push(Token {
                    text: &text[s..offset],
                    line: l,
                    col: k,
                });
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        } else {
            if start.is_none() {
                start = Some((offset, line, col));
            }
            col += 1;
        }
    }
    if let Some((s, l, k)) = start {
        tokens.push(Token {
            text: &text[s..],
            line: l,
            col: k,
        });
    }
    tokens
}

/// Parses an expression into a generator word. The `0` literal is not a
/// generator and is rejected here; use `parse_element` for full
/// expressions.
pub fn parse_word(g: &Graph, text: &str) -> Result<Vec<GisGenerator>, ExprError> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(ExprError::Empty);
    }
    tokens
        .iter()
        .map(|t| {
            if t.text == "0" {
                return Err(ExprError::MisplacedZero {
                    line: t.line,
                    col: t.col,
                });
            }
            let (body, inverted) = match t.text.split_once('^') {
                None => (t.text, false),
                Some((body, "-1")) => (body, true),
                Some(_) => {
                    return Err(ExprError::MalformedSuffix {
                        token: t.text.to_string(),
                        line: t.line,
                        col: t.col,
                    })
                }
            };
            match (g.vertex(body), g.edge(body)) {
                (Some(_), Some(_)) => Err(ExprError::AmbiguousIdentifier {
                    token: body.to_string(),
                    line: t.line,
                    col: t.col,
                }),
                (Some(v), None) => {
                    if inverted {
                        Err(ExprError::InvertedVertex {
                            token: body.to_string(),
                            line: t.line,
                            col: t.col,
                        })
                    } else {
                        Ok(GisGenerator::Vertex(v))
                    }
                }
                (None, Some(e)) => Ok(if inverted {
                    GisGenerator::EdgeInverse(e)
                } else {
                    GisGenerator::Edge(e)
                }),
                (None, None) => Err(ExprError::UnknownIdentifier {
                    token: body.to_string(),
                    line: t.line,
                    col: t.col,
                }),
            }
        })
        .collect()
}

/// Parses an expression and folds it to the element it denotes.
pub fn parse_element(g: &Graph, text: &str) -> Result<GisElement, ExprError> {
    if text.trim() == "0" {
        return Ok(GisElement::Zero);
    }
    let word = parse_word(g, text)?;
    Ok(reduce_word(g, &word))
}

/// Prints an element in the expression grammar: `0` for zero, the vertex
/// name for a vertex idempotent, and otherwise the `u` edges followed by
/// the `v` edges reversed with `^-1` suffixes.
pub fn format_element(g: &Graph, x: &GisElement) -> String {
    let GisElement::NonZero { u, v } = x else {
        return "0".to_string();
    };
    if u.is_empty() && v.is_empty() {
        return g.vertex_name(u.start()).to_string();
    }
    let mut tokens: Vec<String> = u
        .edges()
        .iter()
        .map(|&e| g.edge_name(e).to_string())
        .collect();
    tokens.extend(
        v.edges()
            .iter()
            .rev()
            .map(|&e| format!("{}^-1", g.edge_name(e))),
    );
    tokens.join(" ")
}
