//! The textual gauge grammar:
//!
//! ```text
//! spec  := base | "dual(" spec ")" | ("maxext" | "minext") ":" int "(" spec ")"
//! base  := "mean" | "essinf" | "esssup"
//!        | ("quantile" | "quantile-upper" | "avgq-right" | "avgq-left" | "expectile") ":" num
//!        | "norm:" num ":" num
//! ```

use std::fmt;

use gaugesets::scalar::{GaugeSpec, MAX_NESTING};

#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    /// the offending token, or the empty string at end of input
    pub token: String,
    pub position: usize,
    pub reason: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.token.is_empty() {
            write!(f, "gauge spec: {} at end of input", self.reason)
        } else {
            write!(f, "gauge spec: {} at '{}' (offset {})", self.reason, self.token, self.position)
        }
    }
}

impl std::error::Error for SpecError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn err(&self, start: usize, reason: impl Into<String>) -> SpecError {
        let rest = &self.src[start..];
        let end = rest
            .char_indices()
            .find(|&(i, c)| i > 0 && (c.is_whitespace() || "():".contains(c)))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let end = if end == 0 { rest.chars().next().map(char::len_utf8).unwrap_or(0) } else { end };
        SpecError { token: rest[..end].to_string(), position: start, reason: reason.into() }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> (usize, &'a str) {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        (start, &self.src[start..self.pos])
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<(usize, f64), SpecError> {
        self.skip_ws();
        let (start, tok) = self.take_while(|c| c.is_ascii_digit() || "+-.eE".contains(c));
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((start, v)),
            _ => Err(self.err(start, "expected a number")),
        }
    }

    fn expr(&mut self, depth: usize) -> Result<GaugeSpec, SpecError> {
        self.skip_ws();
        let (start, name) = self.take_while(|c| c.is_ascii_lowercase() || c == '-');
        let wrapper = |p: &mut Self| -> Result<GaugeSpec, SpecError> {
            if depth >= MAX_NESTING {
                return Err(p.err(start, format!("nesting deeper than {MAX_NESTING}")));
            }
            p.expect('(')?;
            let inner = p.expr(depth + 1)?;
            p.expect(')')?;
            Ok(inner)
        };
        let spec = match name {
            "mean" => GaugeSpec::Expectation,
            "essinf" => GaugeSpec::EssInf,
            "esssup" => GaugeSpec::EssSup,
            "dual" => GaugeSpec::dual(wrapper(self)?),
            "maxext" | "minext" => {
                self.expect(':')?;
                self.skip_ws();
                let (ms, tok) = self.take_while(|c| c.is_ascii_digit());
                let m = match tok.parse::<u32>() {
                    Ok(m) if m >= 1 => m,
                    _ => return Err(self.err(ms, "expected a positive integer")),
                };
                let inner = wrapper(self)?;
                if name == "maxext" {
                    GaugeSpec::max_ext(m, inner)
                } else {
                    GaugeSpec::min_ext(m, inner)
                }
            }
            "quantile" | "quantile-upper" | "avgq-right" | "avgq-left" | "expectile" => {
                self.expect(':')?;
                let (ns, v) = self.number()?;
                let g = match name {
                    "quantile" => GaugeSpec::QuantileLower(v),
                    "quantile-upper" => GaugeSpec::QuantileUpper(v),
                    "avgq-right" => GaugeSpec::AvgQuantileRight(v),
                    "avgq-left" => GaugeSpec::AvgQuantileLeft(v),
                    _ => GaugeSpec::Expectile(v),
                };
                g.validate().map_err(|e| self.err(ns, e.to_string()))?;
                g
            }
            "norm" => {
                self.expect(':')?;
                let (ps, p) = self.number()?;
                self.expect(':')?;
                let (as_, a) = self.number()?;
                if p < 1.0 {
                    return Err(self.err(ps, "norm exponent must be at least 1"));
                }
                let g = GaugeSpec::NormGauge { p, a };
                g.validate().map_err(|e| self.err(as_, e.to_string()))?;
                g
            }
            _ => return Err(self.err(start, "unknown gauge")),
        };
        Ok(spec)
    }
}

pub fn parse_gauge_spec(src: &str) -> Result<GaugeSpec, SpecError> {
    let mut p = Parser { src, pos: 0 };
    let spec = p.expr(0)?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.err(p.pos, "trailing input"));
    }
    Ok(spec)
}

/// Inverse of [`parse_gauge_spec`]; floats use the shortest round-trip form.
pub fn format_gauge_spec(spec: &GaugeSpec) -> String {
    match spec {
        GaugeSpec::QuantileLower(a) => format!("quantile:{a}"),
        GaugeSpec::QuantileUpper(a) => format!("quantile-upper:{a}"),
        GaugeSpec::EssInf => "essinf".into(),
        GaugeSpec::EssSup => "esssup".into(),
        GaugeSpec::Expectation => "mean".into(),
        GaugeSpec::AvgQuantileRight(a) => format!("avgq-right:{a}"),
        GaugeSpec::AvgQuantileLeft(a) => format!("avgq-left:{a}"),
        GaugeSpec::Expectile(t) => format!("expectile:{t}"),
        GaugeSpec::NormGauge { p, a } => format!("norm:{p}:{a}"),
        GaugeSpec::Dual(g) => format!("dual({})", format_gauge_spec(g)),
        GaugeSpec::MaxExt { m, inner } => format!("maxext:{m}({})", format_gauge_spec(inner)),
        GaugeSpec::MinExt { m, inner } => format!("minext:{m}({})", format_gauge_spec(inner)),
    }
}
