//! Textual model syntax.
//!
//! ```text
//! model   := "hardcode" | "phi1" "=" pattern ";" "phi2" "=" pattern [";"]
//! pattern := term ("." term)*
//! term    := "$" digits | '"' chars '"'
//! ```
//!
//! `""` denotes the empty pattern. Adjacent literals are merged on parse, and
//! the printer always emits the canonical form, so `parse(print(m)) == m`.

use std::fmt;

use super::{Model, MorphModel, Pattern, PatternToken};
use crate::error::{Error, Result};

pub(super) const HARDCODE_KEYWORD: &str = "hardcode";

pub fn parse_model(src: &str) -> Result<Model> {
    let mut p = Parser { src, pos: 0 };
    p.skip_ws();
    if p.rest().starts_with(HARDCODE_KEYWORD) {
        p.pos += HARDCODE_KEYWORD.len();
        p.skip_ws();
        p.expect_end()?;
        return Ok(Model::HardCode);
    }
    p.keyword("phi1")?;
    p.symbol('=')?;
    let phi1 = p.pattern()?;
    p.symbol(';')?;
    p.keyword("phi2")?;
    p.symbol('=')?;
    let phi2 = p.pattern()?;
    if p.rest().starts_with(';') {
        p.pos += 1;
        p.skip_ws();
    }
    p.expect_end()?;
    MorphModel::from_patterns(phi1, phi2).map(Model::Morph)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if !self.rest().starts_with(kw) {
            return Err(self.error(format!("expected `{kw}`")));
        }
        self.pos += kw.len();
        self.skip_ws();
        Ok(())
    }

    fn symbol(&mut self, ch: char) -> Result<()> {
        if !self.rest().starts_with(ch) {
            return Err(self.error(format!("expected `{ch}`")));
        }
        self.pos += ch.len_utf8();
        self.skip_ws();
        Ok(())
    }

    fn expect_end(&self) -> Result<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    fn pattern(&mut self) -> Result<Pattern> {
        let mut tokens = vec![self.term()?];
        while self.rest().starts_with('.') {
            self.pos += 1;
            self.skip_ws();
            tokens.push(self.term()?);
        }
        Ok(Pattern::canonicalize(tokens))
    }

    fn term(&mut self) -> Result<PatternToken> {
        let token = if let Some(rest) = self.rest().strip_prefix('$') {
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let index: usize = digits
                .parse()
                .map_err(|_| self.error("expected a slot number after `$`"))?;
            if index == 0 {
                return Err(self.error("slot numbers start at 1"));
            }
            self.pos += 1 + digits.len();
            PatternToken::Slot(index)
        } else if self.rest().starts_with('"') {
            self.pos += 1;
            let mut word = String::new();
            let mut chars = self.rest().char_indices();
            loop {
                match chars.next() {
                    Some((i, '"')) => {
                        self.pos += i + 1;
                        break;
                    }
                    Some((_, '\\')) => match chars.next() {
                        Some((_, c)) => word.push(c),
                        None => return Err(self.error("unterminated escape")),
                    },
                    Some((_, c)) => word.push(c),
                    None => return Err(self.error("unterminated literal")),
                }
            }
            PatternToken::Literal(word)
        } else {
            return Err(self.error("expected `$n` or a quoted literal"));
        };
        self.skip_ws();
        Ok(token)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("\"\"");
        }
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            match token {
                PatternToken::Slot(k) => write!(f, "${k}")?,
                PatternToken::Literal(w) => {
                    f.write_str("\"")?;
                    for c in w.chars() {
                        if c == '"' || c == '\\' {
                            f.write_str("\\")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str("\"")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MorphModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi1={}; phi2={}", self.phi1, self.phi2)
    }
}
