//! Small byte cursor shared by the text parsers.

use num::{BigInt, BigRational};

use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    pub fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    /// Consumes `c` after skipping whitespace.
    pub fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            // ASCII digits are valid UTF-8.
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }

    pub fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.error("integer out of range")),
            None => self.error("expected an integer"),
        }
    }

    pub fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    pub fn big_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        match self.digits() {
            Some(d) => Ok(d.parse().unwrap()),
            None => self.error("expected a number"),
        }
    }

    /// Unsigned `a` or `a/b`; whitespace is not allowed inside the literal.
    pub fn unsigned_rational(&mut self) -> Result<BigRational> {
        let num = self.big_uint()?;
        if self.peek() == Some(b'/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let den = self.big_uint()?;
            if den == BigInt::from(0) {
                return self.error("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    pub fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        if !self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == b'_')
        {
            return None;
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}
