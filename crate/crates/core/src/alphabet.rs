//! The DNA alphabet and the sentinel.
//!
//! Symbols are ranked `$ < a < c < g < t`; the rank doubles as the symbol code
//! stored in the BWT.

use std::fmt;

/// Number of symbols including the sentinel.
pub const SIGMA: usize = 5;

/// One of the four bases. Reads never contain anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Base {
    A = 1,
    C = 2,
    G = 3,
    T = 4,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::T];

    /// Case-insensitive.
    pub fn from_ascii(b: u8) -> Option<Base> {
        match b {
            b'a' | b'A' => Some(Base::A),
            b'c' | b'C' => Some(Base::C),
            b'g' | b'G' => Some(Base::G),
            b't' | b'T' => Some(Base::T),
            _ => None,
        }
    }

    pub fn to_ascii(self) -> u8 {
        match self {
            Base::A => b'a',
            Base::C => b'c',
            Base::G => b'g',
            Base::T => b't',
        }
    }

    pub fn complement(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::C => Base::G,
            Base::G => Base::C,
            Base::T => Base::A,
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

impl TryFrom<char> for Base {
    type Error = char;

    fn try_from(c: char) -> Result<Self, char> {
        if c.is_ascii() {
            Base::from_ascii(c as u8).ok_or(c)
        } else {
            Err(c)
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ascii() as char)
    }
}

/// A BWT symbol: a base or the sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Sentinel,
    Base(Base),
}

impl Symbol {
    pub const ALL: [Symbol; SIGMA] = [
        Symbol::Sentinel,
        Symbol::Base(Base::A),
        Symbol::Base(Base::C),
        Symbol::Base(Base::G),
        Symbol::Base(Base::T),
    ];

    pub fn code(self) -> u8 {
        match self {
            Symbol::Sentinel => 0,
            Symbol::Base(b) => b.code(),
        }
    }

    pub fn from_code(code: u8) -> Option<Symbol> {
        match code {
            0 => Some(Symbol::Sentinel),
            1 => Some(Symbol::Base(Base::A)),
            2 => Some(Symbol::Base(Base::C)),
            3 => Some(Symbol::Base(Base::G)),
            4 => Some(Symbol::Base(Base::T)),
            _ => None,
        }
    }

    pub fn to_ascii(self) -> u8 {
        match self {
            Symbol::Sentinel => b'$',
            Symbol::Base(b) => b.to_ascii(),
        }
    }

    pub fn from_ascii(b: u8) -> Option<Symbol> {
        if b == b'$' {
            Some(Symbol::Sentinel)
        } else {
            Base::from_ascii(b).map(Symbol::Base)
        }
    }
}

impl From<Base> for Symbol {
    fn from(b: Base) -> Self {
        Symbol::Base(b)
    }
}

/// Reverse complement of a lowercase `acgt` sequence.
pub fn reverse_complement(seq: &[u8]) -> Vec<u8> {
    seq.iter()
        .rev()
        .map(|&b| {
            Base::from_ascii(b)
                .expect("sequence outside the alphabet")
                .complement()
                .to_ascii()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_order_puts_sentinel_first() {
        let codes: Vec<u8> = Symbol::ALL.iter().map(|s| s.code()).collect();
        assert_eq!(codes, vec![0, 1, 2, 3, 4]);
        assert!(Symbol::Sentinel < Symbol::Base(Base::A));
        assert!(Symbol::Base(Base::G) < Symbol::Base(Base::T));
    }

    #[test]
    fn rejects_letters_outside_alphabet() {
        assert_eq!(Base::try_from('z'), Err('z'));
        assert_eq!(Base::try_from('N'), Err('N'));
        assert_eq!(Base::try_from('G'), Ok(Base::G));
    }

    #[test]
    fn reverse_complement_is_involution() {
        let s = b"ccgtaca";
        assert_eq!(reverse_complement(s), b"tgtacgg".to_vec());
        assert_eq!(reverse_complement(&reverse_complement(s)), s.to_vec());
        assert_eq!(reverse_complement(b"acgt"), b"acgt".to_vec());
    }
}
