//! The shared word grammar for both monoids.
//!
//! Tokens are whitespace-separated: `s<i>` (and `s<i>^-1` in braid
//! mode), `e[k1,k2,...]` with strictly increasing cuts in `1..n`, and
//! `e[]` for the unit idempotent. Parse errors carry the token index
//! and character span.

use std::fmt;

use crate::setpart::StandardComposition;
use crate::{Error, Result};

/// Largest accepted word length.
pub const WORD_LENGTH_GUARD: usize = 10_000;

/// A generator of `R_n`: an adjacent transposition or a standard
/// idempotent. `e[]` (empty cuts) is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RnGenerator {
    S(usize),
    E(StandardComposition),
}

/// A word over the `R_n` generating set (an element of the free monoid).
pub type RnWord = Vec<RnGenerator>;

/// A generator of the braid PM-monoid: a signed braid letter or a
/// standard idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BraidGenerator {
    S { i: usize, inverse: bool },
    E(StandardComposition),
}

/// A word over the braid generating set.
pub type BraidWord = Vec<BraidGenerator>;

/// Which word grammar to parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rn,
    Braid,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Rn => "rn",
            Mode::Braid => "braid",
        })
    }
}

/// A parsed word in either grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedWord {
    Rn(RnWord),
    Braid(BraidWord),
}

impl ParsedWord {
    pub fn len(&self) -> usize {
        match self {
            ParsedWord::Rn(w) => w.len(),
            ParsedWord::Braid(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The underlying braid word; `Rn` letters become positive braid
    /// letters.
    pub fn into_braid(self) -> BraidWord {
        match self {
            ParsedWord::Braid(w) => w,
            ParsedWord::Rn(w) => rn_to_braid(&w),
        }
    }
}

/// Lifts an `R_n` word to the braid monoid (all letters positive).
pub fn rn_to_braid(word: &[RnGenerator]) -> BraidWord {
    word.iter()
        .map(|g| match g {
            RnGenerator::S(i) => BraidGenerator::S {
                i: *i,
                inverse: false,
            },
            RnGenerator::E(c) => BraidGenerator::E(c.clone()),
        })
        .collect()
}

/// Forgets braid signs: `s_i^{±1} -> s_i`.
pub fn project_to_rn(word: &[BraidGenerator]) -> RnWord {
    word.iter()
        .map(|g| match g {
            BraidGenerator::S { i, .. } => RnGenerator::S(*i),
            BraidGenerator::E(c) => RnGenerator::E(c.clone()),
        })
        .collect()
}

/// Parses a word in the given mode. `^-1` is rejected in `rn` mode.
pub fn parse_word(text: &str, n: usize, mode: Mode) -> Result<ParsedWord> {
    let mut letters = Vec::new();
    let mut token_index = 0usize;
    let mut offset = 0usize;
    for chunk in text.split_inclusive(char::is_whitespace) {
        let token = chunk.trim_end_matches(char::is_whitespace);
        if !token.is_empty() {
            let span = (offset, offset + token.len());
            letters.push(parse_token(token, token_index, span, n, mode)?);
            token_index += 1;
            if letters.len() > WORD_LENGTH_GUARD {
                return Err(Error::ResourceGuard(format!(
                    "word longer than {WORD_LENGTH_GUARD} letters"
                )));
            }
        }
        offset += chunk.len();
    }
    Ok(match mode {
        Mode::Braid => ParsedWord::Braid(letters),
        Mode::Rn => ParsedWord::Rn(
            letters
                .into_iter()
                .map(|g| match g {
                    BraidGenerator::S { i, .. } => RnGenerator::S(i),
                    BraidGenerator::E(c) => RnGenerator::E(c),
                })
                .collect(),
        ),
    })
}

fn parse_token(
    token: &str,
    index: usize,
    span: (usize, usize),
    n: usize,
    mode: Mode,
) -> Result<BraidGenerator> {
    if let Some(rest) = token.strip_prefix('s') {
        let (digits, inverse) = match rest.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if inverse && mode == Mode::Rn {
            return Err(Error::parse(
                index,
                span,
                format!("`{token}`: `^-1` is only valid in braid mode"),
            ));
        }
        let i: usize = digits
            .parse()
            .map_err(|_| Error::parse(index, span, format!("`{token}`: expected s<i>")))?;
        if i == 0 || i + 1 > n {
            return Err(Error::parse(
                index,
                span,
                format!("`{token}`: index must be in 1..={}", n.saturating_sub(1)),
            ));
        }
        return Ok(BraidGenerator::S { i, inverse });
    }
    if let Some(rest) = token.strip_prefix('e') {
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| {
                Error::parse(index, span, format!("`{token}`: expected e[k1,k2,...]"))
            })?;
        let mut cuts = Vec::new();
        if !inner.is_empty() {
            for part in inner.split(',') {
                let c: usize = part.trim().parse().map_err(|_| {
                    Error::parse(index, span, format!("`{token}`: bad cut `{part}`"))
                })?;
                cuts.push(c);
            }
        }
        let cuts = StandardComposition::new(n, cuts)
            .map_err(|e| Error::parse(index, span, format!("`{token}`: {e}")))?;
        return Ok(BraidGenerator::E(cuts));
    }
    Err(Error::parse(
        index,
        span,
        format!("unknown token `{token}`"),
    ))
}

/// Prints a braid word in the parseable syntax.
pub fn braid_word_to_string(word: &[BraidGenerator]) -> String {
    word.iter()
        .map(|g| match g {
            BraidGenerator::S { i, inverse: false } => format!("s{i}"),
            BraidGenerator::S { i, inverse: true } => format!("s{i}^-1"),
            BraidGenerator::E(c) => c.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Prints an `R_n` word in the parseable syntax.
pub fn rn_word_to_string(word: &[RnGenerator]) -> String {
    braid_word_to_string(&rn_to_braid(word))
}
