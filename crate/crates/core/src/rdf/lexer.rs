//! Character-level scanning shared by the N-Triples and Turtle readers.

use super::term::is_language_tag;
use super::RdfError;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0, line: 1 }
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    pub fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    /// Case-insensitive keyword match that must be followed by whitespace.
    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) {
            return false;
        }
        let (head, tail) = rest.split_at(kw.len());
        if head.eq_ignore_ascii_case(kw) && tail.chars().next().is_some_and(char::is_whitespace) {
            self.eat(head);
            true
        } else {
            false
        }
    }

    /// Skips spaces and tabs only.
    pub fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    /// Skips whitespace, line breaks and `#` comments.
    pub fn skip_ws_and_comments(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => self.skip_comment(),
                _ => break,
            }
        }
    }

    pub fn skip_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' || c == '\r' {
                break;
            }
            self.bump();
        }
    }

    /// The token at the current position, for error messages.
    pub fn token(&self) -> String {
        let rest = self.rest();
        if rest.is_empty() {
            return "end of input".to_string();
        }
        let tok: String = rest.chars().take_while(|c| !c.is_whitespace()).take(40).collect();
        if tok.is_empty() {
            rest.chars().next().map(|c| format!("{c:?}")).unwrap_or_default()
        } else {
            tok
        }
    }

    pub fn error(&self, message: impl Into<String>) -> RdfError {
        RdfError::Syntax {
            line: self.line,
            token: self.token(),
            message: message.into(),
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<(), RdfError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    /// `<...>` with `\u`/`\U` escapes. Returns the unescaped IRI text.
    pub fn iri_ref(&mut self) -> Result<String, RdfError> {
        self.expect("<")?;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error("unterminated IRI")),
                Some('>') => {
                    self.bump();
                    return Ok(out);
                }
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some('u') => out.push(self.hex_escape(4)?),
                        Some('U') => out.push(self.hex_escape(8)?),
                        _ => return Err(self.error("invalid escape in IRI")),
                    }
                }
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(format!("invalid character {c:?} in IRI")));
                }
                Some(c) => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    fn hex_escape(&mut self, digits: usize) -> Result<char, RdfError> {
        let rest = self.rest();
        let hex = rest.get(..digits).filter(|h| h.chars().all(|c| c.is_ascii_hexdigit()));
        let Some(hex) = hex else {
            return Err(self.error("invalid unicode escape"));
        };
        let code = u32::from_str_radix(hex, 16).expect("hex digits checked");
        let c = char::from_u32(code).ok_or_else(|| self.error("escape is not a unicode scalar value"))?;
        for _ in 0..digits {
            self.bump();
        }
        Ok(c)
    }

    /// A quoted string. `long` selects the triple-quoted form.
    pub fn string(&mut self, quote: char, long: bool) -> Result<String, RdfError> {
        let delim: String = std::iter::repeat_n(quote, if long { 3 } else { 1 }).collect();
        self.expect(&delim)?;
        let mut out = String::new();
        loop {
            if self.eat(&delim) {
                return Ok(out);
            }
            match self.peek() {
                None => return Err(self.error("unterminated string literal")),
                Some('\\') => {
                    self.bump();
                    let escaped = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return Err(self.error("invalid escape in string literal")),
                    };
                    out.push(escaped);
                }
                Some('\n' | '\r') if !long => return Err(self.error("line break in string literal")),
                Some(c) => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    /// Language tag after `@`.
    pub fn language_tag(&mut self) -> Result<String, RdfError> {
        self.expect("@")?;
        let tag: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '-')
            .collect();
        if !is_language_tag(&tag) {
            return Err(self.error("invalid language tag"));
        }
        for _ in tag.chars() {
            self.bump();
        }
        Ok(tag)
    }

    /// Blank node label after `_:`.
    pub fn blank_label(&mut self) -> Result<String, RdfError> {
        self.expect("_:")?;
        let label: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        if label.is_empty() {
            return Err(self.error("empty blank node label"));
        }
        if let Some(c) = self.rest()[label.len()..].chars().next() {
            if c.is_alphanumeric() || c == '-' || (c == '.' && self.rest()[label.len() + 1..].starts_with(|n: char| n.is_alphanumeric())) {
                return Err(self.error("unsupported character in blank node label (allowed: A-Z a-z 0-9 _)"));
            }
        }
        for _ in label.chars() {
            self.bump();
        }
        Ok(label)
    }
}
