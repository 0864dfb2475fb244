//! Text form of sequences.
//!
//! One-sided: `PRE(PER)`, for example `10(010)` or `(101)`.
//!
//! Bi-infinite: `(PB)QB.QF(PF)`, read in index order with the dot just left of
//! index 0, so `bd = reverse(QB)·reverse(PB)^∞` and `fd = QF·PF^∞`.

use std::fmt;
use std::str::FromStr;

use crate::biseq::BiSeqEP;
use crate::error::ParseError;
use crate::seq::SeqEP;
use crate::word::Word;

/// Result of [`parse_seq`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    OneSided(SeqEP),
    BiInfinite(BiSeqEP),
}

/// Parse either grammar; the presence of `.` selects the bi-infinite form.
pub fn parse_seq(text: &str) -> Result<Parsed, ParseError> {
    let mut cursor = Cursor::new(text);
    let parsed = if text.contains('.') {
        Parsed::BiInfinite(cursor.biseq()?)
    } else {
        Parsed::OneSided(cursor.seq()?)
    };
    cursor.finish()?;
    Ok(parsed)
}

/// Canonical text of either kind of value.
pub fn format_seq(value: &Parsed) -> String {
    match value {
        Parsed::OneSided(s) => s.to_string(),
        Parsed::BiInfinite(s) => s.to_string(),
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bits(&mut self) -> Word {
        let mut w = Word::new();
        while let Some(c @ ('0' | '1')) = self.peek() {
            w.push(u8::from(c == '1'));
            self.pos += 1;
        }
        w
    }

    fn expect(&mut self, want: char, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(ParseError::UnexpectedChar { position: self.pos, found }),
            None => Err(ParseError::UnexpectedEnd { position: self.pos, expected }),
        }
    }

    fn period(&mut self) -> Result<Word, ParseError> {
        self.expect('(', "'('")?;
        let start = self.pos;
        let per = self.bits();
        self.expect(')', "')'")?;
        if per.is_empty() {
            return Err(ParseError::EmptyPeriod { position: start });
        }
        Ok(per)
    }

    fn seq(&mut self) -> Result<SeqEP, ParseError> {
        let pre = self.bits();
        let per = self.period()?;
        Ok(SeqEP::new(pre, per).expect("period checked nonempty"))
    }

    fn biseq(&mut self) -> Result<BiSeqEP, ParseError> {
        let pb = self.period()?;
        let qb = self.bits();
        self.expect('.', "'.'")?;
        let qf = self.bits();
        let pf = self.period()?;
        let backward = SeqEP::new(qb.reversed(), pb.reversed()).expect("period checked nonempty");
        let forward = SeqEP::new(qf, pf).expect("period checked nonempty");
        Ok(BiSeqEP::new(backward, forward))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(found) => Err(ParseError::UnexpectedChar { position: self.pos, found }),
        }
    }
}

impl fmt::Display for SeqEP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod(), self.period())
    }
}

impl fmt::Display for BiSeqEP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.backward();
        write!(
            f,
            "({}){}.{}",
            b.period().reversed(),
            b.preperiod().reversed(),
            self.forward()
        )
    }
}

impl FromStr for SeqEP {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cursor = Cursor::new(s);
        let seq = cursor.seq()?;
        cursor.finish()?;
        Ok(seq)
    }
}

impl FromStr for BiSeqEP {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cursor = Cursor::new(s);
        let seq = cursor.biseq()?;
        cursor.finish()?;
        Ok(seq)
    }
}
