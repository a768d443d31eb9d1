//! The polycyclic monoid P_lambda as a normal-form calculus: elements are
//! pairs of generator-index words denoting `x y^-1`, with `1 = (, )` the
//! identity and an explicit zero. Includes a letter-word reduction engine
//! and the prefix-code substitution embedding into P_2.

use thiserror::Error;

/// A word in the positive generators: a finite sequence of indices.
pub type Word = Vec<u32>;

/// The generator arity. `Omega` admits every natural index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Finite(u32),
    Omega,
}

impl Arity {
    pub fn admits(self, index: u32) -> bool {
        match self {
            Arity::Finite(k) => index < k,
            Arity::Omega => true,
        }
    }
}

/// A single generator occurrence: `p_i` or `p_i^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyLetter {
    Pos(u32),
    Neg(u32),
}

/// A polycyclic monoid element in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyElement {
    Zero,
    /// `(x, y)` denotes `x y^-1`; both words empty is the identity.
    NonZero {
        x: Word,
        y: Word,
    },
}

impl PolyElement {
    pub fn one() -> PolyElement {
        PolyElement::NonZero {
            x: Vec::new(),
            y: Vec::new(),
        }
    }

    pub fn pair(x: Word, y: Word) -> PolyElement {
        PolyElement::NonZero { x, y }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PolyElement::Zero)
    }
}

pub fn element_valid(arity: Arity, e: &PolyElement) -> bool {
    match e {
        PolyElement::Zero => true,
        PolyElement::NonZero { x, y } => {
            x.iter().all(|&i| arity.admits(i)) && y.iter().all(|&i| arity.admits(i))
        }
    }
}

pub fn letters_valid(arity: Arity, letters: &[PolyLetter]) -> bool {
    letters.iter().all(|l| match *l {
        PolyLetter::Pos(i) | PolyLetter::Neg(i) => arity.admits(i),
    })
}

/// An unmaterialized product: the surviving words plus the borrowed
/// leftover that lands on one of them.
pub(crate) enum ProductParts<'a> {
    Zero,
    /// `(x ++ tail) y^-1`.
    OnLeft {
        x: &'a [u32],
        tail: &'a [u32],
        y: &'a [u32],
    },
    /// `x (y ++ tail)^-1`.
    OnRight {
        x: &'a [u32],
        y: &'a [u32],
        tail: &'a [u32],
    },
}

pub(crate) fn multiply_parts<'a>(a: &'a PolyElement, b: &'a PolyElement) -> ProductParts<'a> {
    let (PolyElement::NonZero { x, y }, PolyElement::NonZero { x: z, y: w }) = (a, b) else {
        return ProductParts::Zero;
    };
    if let Some(tail) = z.strip_prefix(&y[..]) {
        ProductParts::OnLeft { x, tail, y: w }
    } else if let Some(tail) = y.strip_prefix(&z[..]) {
        ProductParts::OnRight { x, y: w, tail }
    } else {
        ProductParts::Zero
    }
}

fn joined(head: &[u32], tail: &[u32]) -> Word {
    let mut out = Vec::with_capacity(head.len() + tail.len());
    out.extend_from_slice(head);
    out.extend_from_slice(tail);
    out
}

/// The normal-form product, via the one-vertex multiplication formula:
/// with factors `x y^-1` and `z w^-1`, if `z = y z1` the product is
/// `(x z1) w^-1`; if `y = z y1` it is `x (w y1)^-1`; otherwise zero.
pub fn multiply(a: &PolyElement, b: &PolyElement) -> PolyElement {
    match multiply_parts(a, b) {
        ProductParts::Zero => PolyElement::Zero,
        ProductParts::OnLeft { x, tail, y } => PolyElement::NonZero {
            x: joined(x, tail),
            y: y.to_vec(),
        },
        ProductParts::OnRight { x, y, tail } => PolyElement::NonZero {
            x: x.to_vec(),
            y: joined(y, tail),
        },
    }
}

/// `(x y^-1)^-1 = y x^-1`.
pub fn invert(e: &PolyElement) -> PolyElement {
    match e {
        PolyElement::Zero => PolyElement::Zero,
        PolyElement::NonZero { x, y } => PolyElement::NonZero {
            x: y.clone(),
            y: x.clone(),
        },
    }
}

/// Which adjacent `(negative, positive)` redex to rewrite first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostInnermost,
}

/// Reduces a letter word to normal form by the defining relations:
/// `p_i^-1 p_i = 1` deletes the pair, `p_j^-1 p_i = 0` (i != j) collapses
/// the word. The empty word reduces to the identity.
///
/// This single left-to-right pass maintains a normal-form accumulator and
/// performs the leftmost-innermost rewrite sequence; `reduce_with` is the
/// explicit scan it is checked against.
pub fn reduce(letters: &[PolyLetter]) -> PolyElement {
    let mut x: Word = Vec::new();
    let mut y_rev: Word = Vec::new(); // y stored back-to-front
    for &letter in letters {
        match letter {
            PolyLetter::Neg(i) => y_rev.push(i),
            PolyLetter::Pos(i) => match y_rev.last() {
                None => x.push(i),
                Some(&j) if j == i => {
                    y_rev.pop();
                }
                Some(_) => return PolyElement::Zero,
            },
        }
    }
    y_rev.reverse();
    PolyElement::NonZero { x, y: y_rev }
}

/// Reduction by repeated rewriting of a chosen adjacent redex.
pub fn reduce_with(letters: &[PolyLetter], strategy: Strategy) -> PolyElement {
    let mut w: Vec<PolyLetter> = letters.to_vec();
    loop {
        let redex = {
            let is_redex = |i: &usize| {
                matches!(
                    (&w[*i], &w[*i + 1]),
                    (PolyLetter::Neg(_), PolyLetter::Pos(_))
                )
            };
            match strategy {
                Strategy::LeftmostInnermost => (0..w.len().saturating_sub(1)).find(is_redex),
                Strategy::RightmostInnermost => (0..w.len().saturating_sub(1)).rev().find(is_redex),
            }
        };
        let Some(i) = redex else { break };
        let (PolyLetter::Neg(a), PolyLetter::Pos(b)) = (w[i], w[i + 1]) else {
            unreachable!()
        };
        if a != b {
            return PolyElement::Zero;
        }
        w.drain(i..i + 2);
    }
    // No redex left: the word has shape (positives)(negatives).
    let split = w
        .iter()
        .position(|l| matches!(l, PolyLetter::Neg(_)))
        .unwrap_or(w.len());
    let x: Word = w[..split]
        .iter()
        .map(|l| match *l {
            PolyLetter::Pos(i) => i,
            PolyLetter::Neg(_) => unreachable!(),
        })
        .collect();
    let y: Word = w[split..]
        .iter()
        .rev()
        .map(|l| match *l {
            PolyLetter::Neg(i) => i,
            PolyLetter::Pos(_) => unreachable!("positive letter after the split"),
        })
        .collect();
    PolyElement::NonZero { x, y }
}

/// The letter expansion of a normal form: `x` positively, then `y`
/// reversed negatively. Zero has no letter expansion.
pub fn element_letters(e: &PolyElement) -> Option<Vec<PolyLetter>> {
    let PolyElement::NonZero { x, y } = e else {
        return None;
    };
    let mut letters: Vec<PolyLetter> = x.iter().map(|&i| PolyLetter::Pos(i)).collect();
    letters.extend(y.iter().rev().map(|&i| PolyLetter::Neg(i)));
    Some(letters)
}

/// The i-th code word `q_i = p_1^i p_0` of the prefix code carrying the
/// embedding into P_2.
pub fn code_word(i: u32) -> Word {
    let mut w = vec![1; i as usize];
    w.push(0);
    w
}

/// Letter-wise substitution `p_i -> q_i` on both words, embedding any
/// element with natural indices into P_2. The code is a prefix code, so
/// `q_i^-1 q_j` reduces to the identity exactly when `i = j` and to zero
/// otherwise; the test suite checks this through `reduce`.
pub fn embed_into_p2(e: &PolyElement) -> PolyElement {
    let substitute = |w: &Word| -> Word {
        let mut out = Vec::with_capacity(w.iter().map(|&i| i as usize + 1).sum());
        for &i in w {
            out.extend_from_slice(&code_word(i));
        }
        out
    };
    match e {
        PolyElement::Zero => PolyElement::Zero,
        PolyElement::NonZero { x, y } => PolyElement::NonZero {
            x: substitute(x),
            y: substitute(y),
        },
    }
}

/// `min(|x|, |y|)` for non-zero elements; `None` marks zero, which belongs
/// to every neighborhood.
pub fn min_word_length(e: &PolyElement) -> Option<usize> {
    match e {
        PolyElement::Zero => None,
        PolyElement::NonZero { x, y } => Some(x.len().min(y.len())),
    }
}

/// All index words of length at most `max_len`, by length then
/// lexicographically.
pub fn enumerate_words(arity: u32, max_len: usize) -> Vec<Word> {
    let mut all: Vec<Word> = vec![Vec::new()];
    let mut level: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for i in 0..arity {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
        if level.is_empty() {
            break;
        }
    }
    all
}

/// Zero followed by every `(x, y)` pair of words with `|x|, |y| <= max_len`.
pub fn enumerate_elements(arity: u32, max_len: usize) -> Vec<PolyElement> {
    let words = enumerate_words(arity, max_len);
    let mut out = vec![PolyElement::Zero];
    for x in &words {
        for y in &words {
            out.push(PolyElement::NonZero {
                x: x.clone(),
                y: y.clone(),
            });
        }
    }
    out
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("column {col}: expected {expected}")]
    Unexpected { col: usize, expected: &'static str },
    #[error("column {col}: index {index} is not below the arity {arity}")]
    IndexOutOfRange { col: usize, index: u32, arity: u32 },
    #[error("column {col}: malformed letter token `{token}`")]
    BadLetter { col: usize, token: String },
}

/// Canonical text form: `0` for zero, `[i j ...][k l ...]^-1` otherwise.
pub fn format_element(e: &PolyElement) -> String {
    match e {
        PolyElement::Zero => "0".to_string(),
        PolyElement::NonZero { x, y } => {
            let join = |w: &Word| {
                w.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!("[{}][{}]^-1", join(x), join(y))
        }
    }
}

/// Parses the canonical text form back; `format_element` then
/// `parse_element` is the identity.
pub fn parse_element(text: &str) -> Result<PolyElement, PolyParseError> {
    let mut chars = text.char_indices().peekable();
    let skip_ws = |chars: &mut std::iter::Peekable<std::str::CharIndices>| {
        while chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    };
    skip_ws(&mut chars);
    if let Some(&(_, '0')) = chars.peek() {
        chars.next();
        skip_ws(&mut chars);
        return match chars.next() {
            None => Ok(PolyElement::Zero),
            Some((i, _)) => Err(PolyParseError::Unexpected {
                col: i + 1,
                expected: "end of input after `0`",
            }),
        };
    }

    let parse_word =
        |chars: &mut std::iter::Peekable<std::str::CharIndices>| -> Result<Word, PolyParseError> {
            match chars.next() {
                Some((_, '[')) => {}
                other => {
                    return Err(PolyParseError::Unexpected {
                        col: other.map_or(text.len() + 1, |(i, _)| i + 1),
                        expected: "`[`",
                    })
                }
            }
            let mut word = Vec::new();
            loop {
                while chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
                match chars.peek() {
                    Some(&(_, ']')) => {
                        chars.next();
                        return Ok(word);
                    }
                    Some(&(i, c)) if c.is_ascii_digit() => {
                        let mut value: u64 = 0;
                        while let Some((_, d)) = chars.next_if(|(_, c)| c.is_ascii_digit()) {
                            value = value * 10 + d.to_digit(10).unwrap() as u64;
                            if value > u32::MAX as u64 {
                                return Err(PolyParseError::Unexpected {
                                    col: i + 1,
                                    expected: "an index that fits in 32 bits",
                                });
                            }
                        }
                        word.push(value as u32);
                    }
                    other => {
                        return Err(PolyParseError::Unexpected {
                            col: other.map_or(text.len() + 1, |&(i, _)| i + 1),
                            expected: "an index or `]`",
                        })
                    }
                }
            }
        };

    let x = parse_word(&mut chars)?;
    let y = parse_word(&mut chars)?;
    for expected in ['^', '-', '1'] {
        match chars.next() {
            Some((_, c)) if c == expected => {}
            other => {
                return Err(PolyParseError::Unexpected {
                    col: other.map_or(text.len() + 1, |(i, _)| i + 1),
                    expected: "`^-1`",
                })
            }
        }
    }
    skip_ws(&mut chars);
    match chars.next() {
        None => Ok(PolyElement::NonZero { x, y }),
        Some((i, _)) => Err(PolyParseError::Unexpected {
            col: i + 1,
            expected: "end of input",
        }),
    }
}

/// Parses a whitespace-separated letter word: `p<i>` or `p<i>^-1` tokens.
pub fn parse_letters(text: &str, arity: Arity) -> Result<Vec<PolyLetter>, PolyParseError> {
    let mut letters = Vec::new();
    let mut col = 1usize;
    for chunk in text.split_whitespace() {
        // Column of this token in the original text.
        col = text[col - 1..]
            .find(chunk)
            .map(|off| col + off)
            .unwrap_or(col);
        let bad = || PolyParseError::BadLetter {
            col,
            token: chunk.to_string(),
        };
        let (body, negative) = match chunk.strip_suffix("^-1") {
            Some(body) => (body, true),
            None => (chunk, false),
        };
        let index: u32 = body
            .strip_prefix('p')
            .and_then(|d| d.parse().ok())
            .ok_or_else(bad)?;
        if !arity.admits(index) {
            let Arity::Finite(k) = arity else {
                unreachable!()
            };
            return Err(PolyParseError::IndexOutOfRange {
                col,
                index,
                arity: k,
            });
        }
        letters.push(if negative {
            PolyLetter::Neg(index)
        } else {
            PolyLetter::Pos(index)
        });
        col += chunk.len();
    }
    Ok(letters)
}

pub fn format_letters(letters: &[PolyLetter]) -> String {
    letters
        .iter()
        .map(|l| match *l {
            PolyLetter::Pos(i) => format!("p{i}"),
            PolyLetter::Neg(i) => format!("p{i}^-1"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
