//! Words over the four-letter alphabet {a, x, y, z}.
//!
//! `a` is the distinguished letter occupying every odd position of a
//! generated word; `x`, `y`, `z` are the filler letters. The module also
//! carries the two substitution families everything else is built from:
//! the Lysenok substitution `kappa` (a ↦ axa, x ↦ y, y ↦ z, z ↦ x) and the
//! elementary substitutions `tau` (a ↦ aβa, fixing x, y, z).

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::Error;

#[repr(u8)]
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    A = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::X, Letter::Y, Letter::Z];

    /// The filler cycle x → y → z, in block order.
    pub const FILLERS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::X => 'x',
            Letter::Y => 'y',
            Letter::Z => 'z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'x' => Some(Letter::X),
            'y' => Some(Letter::Y),
            'z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub(crate) fn code(self) -> u8 {
        self as u8
    }

}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word. Dereferences to its letter slice; the empty word is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from_slice(&mut self, letters: &[Letter]) {
        self.0.extend_from_slice(letters);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.0.len();
        (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    /// The `times`-fold concatenation of the word with itself.
    pub fn repeat(&self, times: usize) -> Word {
        let mut out = Vec::with_capacity(self.0.len() * times);
        for _ in 0..times {
            out.extend_from_slice(&self.0);
        }
        Word(out)
    }

    /// Cyclic left rotation by `k` positions.
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut out = Vec::with_capacity(self.0.len());
        out.extend_from_slice(&self.0[k..]);
        out.extend_from_slice(&self.0[..k]);
        Word(out)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Word {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word, Error> {
        let mut letters = Vec::with_capacity(s.len());
        for (pos, c) in s.char_indices() {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("invalid letter {c:?}; expected one of a, x, y, z"),
                    })
                }
            }
        }
        Ok(Word(letters))
    }
}

/// The Lysenok substitution: a ↦ axa, x ↦ y, y ↦ z, z ↦ x.
///
/// `|kappa(w)| = |w| + 2 * (number of occurrences of a in w)`.
pub fn kappa(w: &[Letter]) -> Word {
    let extra = w.iter().filter(|&&l| l == Letter::A).count();
    let mut out = Vec::with_capacity(w.len() + 2 * extra);
    for &l in w {
        match l {
            Letter::A => out.extend_from_slice(&[Letter::A, Letter::X, Letter::A]),
            Letter::X => out.push(Letter::Y),
            Letter::Y => out.push(Letter::Z),
            Letter::Z => out.push(Letter::X),
        }
    }
    Word(out)
}

/// The elementary substitution τ_β: a ↦ aβa, fixing x, y and z.
pub fn tau(beta: Letter, w: &[Letter]) -> Word {
    debug_assert!(beta != Letter::A, "tau is defined for filler letters only");
    let extra = w.iter().filter(|&&l| l == Letter::A).count();
    let mut out = Vec::with_capacity(w.len() + 2 * extra);
    for &l in w {
        if l == Letter::A {
            out.extend_from_slice(&[Letter::A, beta, Letter::A]);
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Border array: `b[i]` is the length of the longest proper border of `w[..=i]`.
pub fn border_array(w: &[Letter]) -> Vec<usize> {
    let mut b = vec![0usize; w.len()];
    for i in 1..w.len() {
        let mut k = b[i - 1];
        while k > 0 && w[i] != w[k] {
            k = b[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        b[i] = k;
    }
    b
}

/// All occurrence positions of `needle` in `haystack` (KMP).
pub fn find_all(haystack: &[Letter], needle: &[Letter]) -> Vec<usize> {
    let mut out = Vec::new();
    if needle.is_empty() || needle.len() > haystack.len() {
        return out;
    }
    let fail = border_array(needle);
    let mut k = 0usize;
    for (i, &c) in haystack.iter().enumerate() {
        while k > 0 && c != needle[k] {
            k = fail[k - 1];
        }
        if c == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            out.push(i + 1 - k);
            k = fail[k - 1];
        }
    }
    out
}

pub fn contains_word(haystack: &[Letter], needle: &[Letter]) -> bool {
    if needle.is_empty() {
        return true;
    }
    if needle.len() > haystack.len() {
        return false;
    }
    let fail = border_array(needle);
    let mut k = 0usize;
    for &c in haystack {
        while k > 0 && c != needle[k] {
            k = fail[k - 1];
        }
        if c == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn kappa_on_single_letters() {
        assert_eq!(kappa(&w("a")).to_string(), "axa");
        assert_eq!(kappa(&w("x")).to_string(), "y");
        assert_eq!(kappa(&w("y")).to_string(), "z");
        assert_eq!(kappa(&w("z")).to_string(), "x");
    }

    #[test]
    fn kappa_on_empty_word_is_empty() {
        assert_eq!(kappa(&Word::new()), Word::new());
    }

    #[test]
    fn kappa_concatenates_letterwise() {
        assert_eq!(kappa(&w("axa")).to_string(), "axayaxa");
    }

    #[test]
    fn tau_inserts_filler_between_a() {
        assert_eq!(tau(Letter::X, &w("a")).to_string(), "axa");
        assert_eq!(tau(Letter::Y, &w("axa")).to_string(), "ayaxaya");
        assert_eq!(tau(Letter::Z, &w("xyz")).to_string(), "xyz");
    }

    #[test]
    fn border_array_examples() {
        assert_eq!(border_array(&w("axa")), vec![0, 0, 1]);
        assert_eq!(border_array(&w("axaxa")), vec![0, 0, 1, 2, 3]);
        assert_eq!(border_array(&w("xay")), vec![0, 0, 0]);
    }

    #[test]
    fn find_all_reports_every_occurrence() {
        assert_eq!(find_all(&w("axaxaxa"), &w("axa")), vec![0, 2, 4]);
        assert_eq!(find_all(&w("axaxaxa"), &w("z")), Vec::<usize>::new());
        assert!(contains_word(&w("axayaxa"), &w("yax")));
        assert!(!contains_word(&w("axayaxa"), &w("yay")));
    }

    #[test]
    fn parse_rejects_bad_letters_with_position() {
        let err = "axb".parse::<Word>().unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 2),
            other => panic!("unexpected error: {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(codes in proptest::collection::vec(0u8..4, 0..64)) {
            let word: Word = codes.iter().map(|&c| Letter::ALL[c as usize]).collect();
            let back: Word = word.to_string().parse().unwrap();
            prop_assert_eq!(word, back);
        }

        #[test]
        fn kappa_length_law(codes in proptest::collection::vec(0u8..4, 0..64)) {
            let word: Word = codes.iter().map(|&c| Letter::ALL[c as usize]).collect();
            let image = kappa(&word);
            let a_count = word.iter().filter(|&&l| l == Letter::A).count();
            prop_assert_eq!(image.len(), word.len() + 2 * a_count);
        }
    }
}
