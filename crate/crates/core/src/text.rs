//! Line-oriented `[section]` / `key = value` files shared by every input
//! format.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct Line {
    pub number: usize,
    pub text: String,
}

impl Line {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { line: self.number, message: message.into() }
    }

    pub fn key_value(&self) -> Result<(&str, &str)> {
        self.split_on('=')
    }

    pub fn split_on(&self, sep: char) -> Result<(&str, &str)> {
        let (k, v) = self
            .text
            .split_once(sep)
            .ok_or_else(|| self.error(format!("expected `key {sep} value`, found `{}`", self.text)))?;
        Ok((k.trim(), v.trim()))
    }

    /// Rewraps an error with this line's number.
    pub fn context(&self, err: impl std::fmt::Display) -> Error {
        self.error(err.to_string())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Section {
    pub name: String,
    pub args: Vec<String>,
    pub header: Line,
    pub lines: Vec<Line>,
}

impl Section {
    pub fn arity(&self, n: usize) -> Result<()> {
        if self.args.len() != n {
            return Err(self.header.error(format!(
                "section [{}] takes {n} argument(s), found {}",
                self.name,
                self.args.len()
            )));
        }
        Ok(())
    }
}

/// Splits `input` into sections. Text after `#` is a comment; blank lines
/// are skipped. Content before the first header is an error.
pub(crate) fn sections(input: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let line = Line { number: i + 1, text: text.to_string() };
        if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| line.error("unterminated section header"))?;
            let mut words = inner.split_whitespace().map(str::to_string);
            let name = words.next().ok_or_else(|| line.error("empty section header"))?;
            out.push(Section { name, args: words.collect(), header: line, lines: Vec::new() });
            continue;
        }
        match out.last_mut() {
            Some(section) => section.lines.push(line),
            None => return Err(line.error("content before the first section header")),
        }
    }
    Ok(out)
}

pub(crate) fn parse_bool(line: &Line, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(line.error(format!("expected true or false, found `{other}`"))),
    }
}
