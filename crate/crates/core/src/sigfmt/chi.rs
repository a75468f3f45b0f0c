//! Characteristic-function sums for single-bit signals:
//!
//! ```text
//! chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) ^ ... repeat start=3 period=5
//! ```
//!
//! The terms are combined with `^` (or `⊕`). The optional `repeat` clause
//! declares that the combined function on `[start, start+period)` repeats
//! forever; terms past `start+period` must agree with that repetition. A
//! trailing `...` announces an infinite sum and requires the clause.

use super::{parse_rat, ParseError};
use crate::bits::BinaryVector;
use crate::rat::Rat;
use crate::signal::UpSignal;
use crate::step::Cycle;

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            _src: src,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.bump();
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            for _ in 0..n {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn rat(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let mut text = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '-' || c == '+' || c == '/' {
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if text.is_empty() {
            return Err(self.err("expected a rational"));
        }
        parse_rat(&text, line, column)
    }
}

fn bit(b: bool) -> BinaryVector {
    BinaryVector::bit(b)
}

pub fn parse_chi_expr(text: &str) -> Result<UpSignal, ParseError> {
    let mut sc = Scanner::new(text);
    let mut sum = UpSignal::constant(bit(false));
    let mut last_end: Option<Rat> = None;
    let mut ellipsis: Option<(usize, usize)> = None;
    loop {
        sc.skip_ws();
        let (line, column) = (sc.line, sc.column);
        if sc.eat("...") || sc.eat("…") {
            ellipsis = Some((line, column));
            break;
        }
        sc.expect("chi")?;
        let term = if sc.eat("(") {
            sc.expect("-inf")?;
            sc.expect(",")?;
            let a = sc.rat()?;
            sc.expect(")")?;
            last_end = Some(last_end.map_or(a, |e| e.max(a)));
            UpSignal::new(bit(true), vec![(a, bit(false))], None)
        } else if sc.eat("[") {
            let a = sc.rat()?;
            sc.expect(",")?;
            let b = sc.rat()?;
            sc.expect(")")?;
            if a > b {
                return Err(ParseError::Semantic {
                    line,
                    message: format!("interval [{a},{b}) has its ends reversed"),
                });
            }
            last_end = Some(last_end.map_or(b, |e| e.max(b)));
            UpSignal::new(bit(false), vec![(a, bit(true)), (b, bit(false))], None)
        } else {
            return Err(sc.err("expected `(` or `[` after `chi`"));
        }
        .expect("well-formed term");
        sum = sum.xor(&term).expect("width 1");
        if !(sc.eat("^") || sc.eat("⊕")) {
            break;
        }
    }

    sc.skip_ws();
    let clause_at = (sc.line, sc.column);
    let repeat = if sc.eat("repeat") {
        sc.expect("start")?;
        sc.expect("=")?;
        let start = sc.rat()?;
        sc.expect("period")?;
        sc.expect("=")?;
        let period = sc.rat()?;
        Some((start, period))
    } else {
        None
    };
    if !sc.at_end() {
        return Err(sc.err("unexpected trailing input"));
    }

    let Some((start, period)) = repeat else {
        if let Some((line, column)) = ellipsis {
            return Err(ParseError::MissingRepeatClause { line, column });
        }
        return Ok(sum);
    };
    let semantic = |message: String| ParseError::Semantic {
        line: clause_at.0,
        message,
    };
    if !period.is_positive() {
        return Err(semantic(format!("period must be positive (got {period})")));
    }
    let end = start + period;
    let transient: Vec<(Rat, BinaryVector)> = sum
        .transient()
        .iter()
        .filter(|(t, _)| *t < start)
        .cloned()
        .collect();
    let mut pattern = vec![(Rat::ZERO, sum.eval(start).clone())];
    pattern.extend(
        sum.switches_in(start, end)
            .into_iter()
            .filter(|t| *t > start)
            .map(|t| (t - start, sum.eval(t).clone())),
    );
    let signal = UpSignal::new(
        sum.initial_value().clone(),
        transient,
        Some(Cycle::new(start, period, pattern)),
    )
    .map_err(|e| semantic(e.to_string()))?;

    // Terms written past the first period must match the repetition.
    if let Some(last) = last_end.filter(|e| *e > end) {
        let mut points = sum.switches_in(end, last);
        points.extend(signal.switches_in(end, last));
        points.push(end);
        for t in points {
            if sum.eval(t) != signal.eval(t) {
                return Err(semantic(format!(
                    "terms disagree with the declared repeat at t={t}"
                )));
            }
        }
    }
    Ok(signal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::signal::fixtures::{b, xstar};

    #[test]
    fn xstar_formula() {
        let x =
            parse_chi_expr("chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) repeat start=3 period=5")
                .unwrap();
        assert_eq!(x, xstar());
        let y = parse_chi_expr(
            "chi(-inf,0) ⊕ chi[1,2) ⊕ chi[3,5) ⊕ chi[6,7) ⊕ chi[8,10) ⊕ chi[11,12) ⊕ ... repeat start=3 period=5",
        )
        .unwrap();
        assert_eq!(y, xstar());
    }

    #[test]
    fn simple_terms() {
        let x = parse_chi_expr("chi(-inf,0)").unwrap();
        assert_eq!(x.initial_value(), &b("1"));
        assert_eq!(x.transient(), &[(rat!(0), b("0"))]);
        assert!(parse_chi_expr("chi[0,1) ^ chi[0,1)").unwrap().is_constant());
        let x = parse_chi_expr("chi[ 1/2 , 3/2 )").unwrap();
        assert_eq!(x.transient(), &[(rat!(1, 2), b("1")), (rat!(3, 2), b("0"))]);
    }

    #[test]
    fn ellipsis_needs_repeat() {
        let e = parse_chi_expr("chi[1,2) ^ chi[3,4) ^ ...").unwrap_err();
        assert_eq!(
            e,
            ParseError::MissingRepeatClause {
                line: 1,
                column: 23
            }
        );
    }

    #[test]
    fn inconsistent_repeat() {
        let e = parse_chi_expr("chi[3,5) ^ chi[9,10) repeat start=3 period=5").unwrap_err();
        assert!(matches!(e, ParseError::Semantic { .. }));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_chi_expr("chi{1,2)"),
            Err(ParseError::Syntax {
                line: 1,
                column: 4,
                ..
            })
        ));
        assert!(matches!(
            parse_chi_expr("chi[1,2) junk"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_chi_expr(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_chi_expr("chi[2,1)"),
            Err(ParseError::Semantic { .. })
        ));
        assert!(matches!(
            parse_chi_expr("chi[1,2) repeat start=0 period=0"),
            Err(ParseError::Semantic { .. })
        ));
    }
}
