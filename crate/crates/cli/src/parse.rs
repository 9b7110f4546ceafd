//! Parser for group spec strings.
//!
//! Grammar: `cyclic(n)` | `abelian(n1,...,nr)` | `dsd(n1,...,nr)` |
//! `G1(a,b,c)` | `G2(a,b,c)` | `G3(a,b,g,s)` | `G4(g)` |
//! `direct(spec,spec)`. Whitespace is ignored; parameters are decimal.

use zerosum_core::constructions::PaperGroupSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub reason: String,
    /// False for a well-formed spec whose parameters violate a constraint.
    pub syntactic: bool,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.syntactic {
            write!(f, "parse error at byte {}: {}", self.pos, self.reason)
        } else {
            write!(f, "{}", self.reason)
        }
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError {
                pos: self.pos,
                reason: format!("expected '{}'", c as char),
                syntactic: true,
            }),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError {
                pos: start,
                reason: "expected a family name".into(),
                syntactic: true,
            });
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError {
                pos: start,
                reason: "expected a decimal number".into(),
                syntactic: true,
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                reason: "number too large".into(),
                syntactic: true,
            })
    }

    fn numbers(&mut self) -> Result<Vec<u64>, ParseError> {
        let mut out = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<PaperGroupSpec, ParseError> {
        let name_pos = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?;
        self.expect(b'(')?;
        let spec = match name.to_ascii_lowercase().as_str() {
            "cyclic" => PaperGroupSpec::Cyclic(self.number()?),
            "abelian" => PaperGroupSpec::Abelian(self.numbers()?),
            "dsd" => PaperGroupSpec::Dsd(self.numbers()?),
            "g1" => {
                let ns = self.fixed(3, "G1 takes (α,β,γ)")?;
                PaperGroupSpec::G1 {
                    alpha: ns[0],
                    beta: ns[1],
                    gamma: ns[2],
                }
            }
            "g2" => {
                let ns = self.fixed(3, "G2 takes (α,β,γ)")?;
                PaperGroupSpec::G2 {
                    alpha: ns[0],
                    beta: ns[1],
                    gamma: ns[2],
                }
            }
            "g3" => {
                let ns = self.fixed(4, "G3 takes (α,β,γ,σ)")?;
                PaperGroupSpec::G3 {
                    alpha: ns[0],
                    beta: ns[1],
                    gamma: ns[2],
                    sigma: ns[3],
                }
            }
            "g4" => {
                let ns = self.fixed(1, "G4 takes (γ)")?;
                PaperGroupSpec::G4 { gamma: ns[0] }
            }
            "direct" => {
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                PaperGroupSpec::Direct(Box::new(a), Box::new(b))
            }
            other => {
                return Err(ParseError {
                    pos: name_pos,
                    reason: format!("unknown family '{other}'"),
                    syntactic: true,
                })
            }
        };
        self.expect(b')')?;
        Ok(spec)
    }

    fn fixed(&mut self, count: usize, what: &str) -> Result<Vec<u32>, ParseError> {
        let pos = self.pos;
        let ns = self.numbers()?;
        if ns.len() != count {
            return Err(ParseError {
                pos,
                reason: what.to_string(),
                syntactic: true,
            });
        }
        ns.iter()
            .map(|&n| {
                u32::try_from(n).map_err(|_| ParseError {
                    pos,
                    reason: "exponent too large".into(),
                    syntactic: true,
                })
            })
            .collect()
    }
}

/// Parse and validate a group spec string.
pub fn parse_group_spec(s: &str) -> Result<PaperGroupSpec, ParseError> {
    let mut p = Parser {
        bytes: s.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    if p.peek().is_some() {
        return Err(ParseError {
            pos: p.pos,
            reason: "trailing input".into(),
            syntactic: true,
        });
    }
    spec.validate().map_err(|e| ParseError {
        pos: 0,
        reason: e.to_string(),
        syntactic: false,
    })?;
    Ok(spec)
}
