//! Text formats for signals.
//!
//! The document format is line oriented, `#` starts a comment:
//!
//! ```text
//! signal v1
//! width 1
//! init 1
//! at 0 -> 0
//! at 1 -> 1
//! at 2 -> 0
//! cycle start 3 period 5
//! at +0 -> 1
//! at +2 -> 0
//! at +3 -> 1
//! at +4 -> 0
//! ```
//!
//! Rationals are written `p` or `p/q`; decimals are rejected. Values are bit
//! strings of exactly `width` characters.

mod chi;

pub use chi::parse_chi_expr;

use std::fmt::Write as _;

use crate::bits::BinaryVector;
use crate::rat::Rat;
use crate::signal::UpSignal;
use crate::step::Cycle;

/// Largest magnitude accepted for a numerator or denominator.
pub const MAX_LITERAL: i128 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("line {line}, column {column}: `...` needs a `repeat start=<s> period=<p>` clause")]
    MissingRepeatClause { line: usize, column: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Semantic { line, .. }
            | ParseError::MissingRepeatClause { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        message: message.into(),
    }
}

/// Parses a rational literal, bounding its size.
pub(crate) fn parse_rat(text: &str, line: usize, column: usize) -> Result<Rat, ParseError> {
    let r: Rat = text
        .parse()
        .map_err(|e| syntax(line, column, format!("bad rational `{text}`: {e}")))?;
    if r.numer().abs() > MAX_LITERAL || r.denom() > MAX_LITERAL {
        return Err(syntax(
            line,
            column,
            format!("rational `{text}` is too large"),
        ));
    }
    Ok(r)
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in code.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, i));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, code.len()));
    }
    out.into_iter()
        .map(|(s, e)| Token {
            text: &code[s..e],
            column: code[..s].chars().count() + 1,
        })
        .collect()
}

struct Line<'a> {
    number: usize,
    toks: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn expect_len(&self, n: usize, usage: &str) -> Result<(), ParseError> {
        if self.toks.len() == n {
            return Ok(());
        }
        let column = self.toks.get(n).map_or(self.end_column, |t| t.column);
        Err(syntax(self.number, column, format!("expected `{usage}`")))
    }

    fn keyword(&self, i: usize, word: &str) -> Result<(), ParseError> {
        match self.toks.get(i) {
            Some(t) if t.text == word => Ok(()),
            Some(t) => Err(syntax(
                self.number,
                t.column,
                format!("expected `{word}`, found `{}`", t.text),
            )),
            None => Err(syntax(
                self.number,
                self.end_column,
                format!("expected `{word}`"),
            )),
        }
    }

    fn rat(&self, i: usize) -> Result<Rat, ParseError> {
        let t = self.toks[i];
        parse_rat(t.text, self.number, t.column)
    }

    fn bits(&self, i: usize, width: usize) -> Result<BinaryVector, ParseError> {
        let t = self.toks[i];
        if let Some((k, c)) = t.text.char_indices().find(|(_, c)| *c != '0' && *c != '1') {
            return Err(syntax(
                self.number,
                t.column + t.text[..k].chars().count(),
                format!("unexpected character `{c}` in bit string"),
            ));
        }
        if t.text.len() != width {
            return Err(semantic(
                self.number,
                format!(
                    "value `{}` has width {}, expected {width}",
                    t.text,
                    t.text.len()
                ),
            ));
        }
        Ok(t.text.parse().expect("validated bit string"))
    }
}

/// Parses a signal document into a canonical [`UpSignal`].
pub fn parse(text: &str) -> Result<UpSignal, ParseError> {
    let lines: Vec<Line<'_>> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            toks: tokens(l),
            end_column: l.split('#').next().unwrap_or("").chars().count() + 1,
        })
        .filter(|l| !l.toks.is_empty())
        .collect();
    let last_line = text.lines().count().max(1);
    let mut it = lines.iter();
    let mut next = |what: &str| {
        it.next().ok_or_else(|| {
            syntax(
                last_line,
                1,
                format!("unexpected end of input, expected `{what}`"),
            )
        })
    };

    let header = next("signal v1")?;
    header.keyword(0, "signal")?;
    header.keyword(1, "v1")?;
    header.expect_len(2, "signal v1")?;

    let wline = next("width <n>")?;
    wline.keyword(0, "width")?;
    wline.expect_len(2, "width <n>")?;
    let wtok = wline.toks[1];
    let width: usize = match wtok.text.parse::<usize>() {
        Ok(w) if w > 0 && wtok.text.bytes().all(|b| b.is_ascii_digit()) => w,
        _ => return Err(semantic(wline.number, format!("bad width `{}`", wtok.text))),
    };

    let iline = next("init <bits>")?;
    iline.keyword(0, "init")?;
    iline.expect_len(2, "init <bits>")?;
    let init = iline.bits(1, width)?;

    let mut transient: Vec<(Rat, BinaryVector)> = Vec::new();
    let mut cycle: Option<(usize, Rat, Rat)> = None;
    let mut pattern: Vec<(Rat, BinaryVector)> = Vec::new();
    let mut last_line_no = iline.number;

    for line in it {
        last_line_no = line.number;
        let head = line.toks[0];
        match head.text {
            "at" => {
                line.expect_len(4, "at <time> -> <bits>")?;
                line.keyword(2, "->")?;
                let ttok = line.toks[1];
                let value = line.bits(3, width)?;
                match cycle {
                    None => {
                        if ttok.text.starts_with('+') {
                            return Err(syntax(
                                line.number,
                                ttok.column,
                                "cycle offsets need a `cycle` line first",
                            ));
                        }
                        let t = line.rat(1)?;
                        if let Some((prev, _)) = transient.last() {
                            if t <= *prev {
                                return Err(semantic(
                                    line.number,
                                    format!("non-increasing times: {t} after {prev}"),
                                ));
                            }
                        }
                        transient.push((t, value));
                    }
                    Some((_, _, period)) => {
                        let Some(off_text) = ttok.text.strip_prefix('+') else {
                            return Err(syntax(
                                line.number,
                                ttok.column,
                                "cycle offsets are written `+<offset>`",
                            ));
                        };
                        let off = parse_rat(off_text, line.number, ttok.column + 1)?;
                        match pattern.last() {
                            None if !off.is_zero() => {
                                return Err(semantic(
                                    line.number,
                                    format!("first cycle offset is {off}, expected 0"),
                                ));
                            }
                            Some((prev, _)) if off <= *prev => {
                                return Err(semantic(
                                    line.number,
                                    format!("non-increasing offsets: {off} after {prev}"),
                                ));
                            }
                            _ => {}
                        }
                        if off >= period {
                            return Err(semantic(
                                line.number,
                                format!("offset {off} outside [0, {period})"),
                            ));
                        }
                        pattern.push((off, value));
                    }
                }
            }
            "cycle" => {
                if cycle.is_some() {
                    return Err(syntax(line.number, head.column, "duplicate `cycle` line"));
                }
                line.expect_len(5, "cycle start <time> period <time>")?;
                line.keyword(1, "start")?;
                line.keyword(3, "period")?;
                let start = line.rat(2)?;
                let period = line.rat(4)?;
                if !period.is_positive() {
                    return Err(semantic(
                        line.number,
                        format!("period must be positive (got {period})"),
                    ));
                }
                if let Some((t, _)) = transient.last() {
                    if *t >= start {
                        return Err(semantic(
                            line.number,
                            format!("cycle start {start} must follow the last switch at {t}"),
                        ));
                    }
                }
                cycle = Some((line.number, start, period));
            }
            other => {
                return Err(syntax(
                    line.number,
                    head.column,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let cycle = match cycle {
        None => None,
        Some((line, _, _)) if pattern.is_empty() => {
            return Err(semantic(line, "cycle has no `at +<offset>` entries"));
        }
        Some((_, start, period)) => Some(Cycle::new(start, period, pattern)),
    };
    UpSignal::new(init, transient, cycle).map_err(|e| semantic(last_line_no, e.to_string()))
}

/// Writes the canonical document for `x`.
pub fn serialize(x: &UpSignal) -> String {
    let mut out = String::new();
    writeln!(out, "signal v1").unwrap();
    writeln!(out, "width {}", x.width()).unwrap();
    writeln!(out, "init {}", x.initial_value()).unwrap();
    for (t, v) in x.transient() {
        writeln!(out, "at {t} -> {v}").unwrap();
    }
    if let Some(c) = x.cycle() {
        writeln!(out, "cycle start {} period {}", c.start, c.period).unwrap();
        for (o, v) in &c.pattern {
            writeln!(out, "at +{o} -> {v}").unwrap();
        }
    }
    out
}
