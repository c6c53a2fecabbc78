//! Word generation for a fixed sequence spec.
//!
//! A session owns the growing prefix of the generating word η together with
//! the per-length factor tables derived from it. Level words obey
//! w_0 = a and w_{j+1} = w_j · β^{(j)} · w_j, so |w_j| = 2^{j+1} − 1 and each
//! w_j is a prefix of the next; the session therefore materializes a single
//! buffer and hands out slices. All word lengths are guarded by a memory
//! budget so runaway queries fail with `DepthExceeded` instead of wrapping
//! or exhausting memory.
//!
//! Cache filling takes `&mut self`; once the needed levels and tables are
//! built, reads are plain slice accesses.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::language::FactorTable;
use crate::lspec::{filler_letter, LSpec};
use crate::word::{tau, Letter, Word};

#[derive(Clone, Copy, Debug)]
pub struct SessionConfig {
    /// Bound in bytes on any single materialized word (1 byte per letter).
    pub memory_budget: usize,
    /// Bound on p · |v| when probing powers v^p; hitting it yields a
    /// distinguished cap outcome, never a silent truncation.
    pub power_cap: u64,
}

pub const DEFAULT_MEMORY_BUDGET: usize = 64 << 20;
pub const DEFAULT_POWER_CAP: u64 = 1 << 20;

impl Default for SessionConfig {
    fn default() -> SessionConfig {
        SessionConfig {
            memory_budget: DEFAULT_MEMORY_BUDGET,
            power_cap: DEFAULT_POWER_CAP,
        }
    }
}

pub struct Session {
    spec: LSpec,
    config: SessionConfig,
    /// Prefix buffer; always equal to w_level.
    eta: Vec<Letter>,
    level: u32,
    /// β^{(0)}, β^{(1)}, … as far as computed.
    fillers: Vec<Letter>,
    pub(crate) tables: BTreeMap<usize, FactorTable>,
    /// Single-slot cache of the covering triple w_J·x·w_J, w_J·y·w_J, w_J·z·w_J.
    pub(crate) covering: Option<(u32, [Word; 3])>,
}

impl Session {
    pub fn new(spec: LSpec) -> Session {
        Session::with_config(spec, SessionConfig::default())
    }

    pub fn with_config(spec: LSpec, config: SessionConfig) -> Session {
        Session {
            spec,
            config,
            eta: vec![Letter::A],
            level: 0,
            fillers: Vec::new(),
            tables: BTreeMap::new(),
            covering: None,
        }
    }

    pub fn spec(&self) -> &LSpec {
        &self.spec
    }

    pub fn config(&self) -> SessionConfig {
        self.config
    }

    /// Largest level whose word fits in the memory budget.
    pub fn max_eta_level(&self) -> u32 {
        let mut j = 0u32;
        while j < 62 && level_len(j + 1).is_some_and(|n| n <= self.config.memory_budget) {
            j += 1;
        }
        j
    }

    /// β^{(j)}, cached.
    pub fn filler(&mut self, j: u32) -> Result<Letter> {
        while self.fillers.len() <= j as usize {
            let next = filler_letter(&self.spec, self.fillers.len() as u64)?;
            self.fillers.push(next);
        }
        Ok(self.fillers[j as usize])
    }

    /// Minimal level j with 2^{j+1} − 1 ≥ n, checked against the budget.
    pub(crate) fn level_for_len(&self, n: usize) -> Result<u32> {
        let mut j = 0u32;
        loop {
            match level_len(j) {
                Some(len) if len >= n => break,
                Some(_) => j += 1,
                None => {
                    return Err(Error::DepthExceeded(format!(
                        "length {n} exceeds the guarded integer range"
                    )))
                }
            }
        }
        if level_len(j).unwrap() > self.config.memory_budget {
            return Err(Error::DepthExceeded(format!(
                "length {n} needs level {j} ({} bytes) over the {} byte budget",
                level_len(j).unwrap(),
                self.config.memory_budget
            )));
        }
        Ok(j)
    }

    fn ensure_level(&mut self, j: u32) -> Result<()> {
        if level_len(j).is_none_or(|n| n > self.config.memory_budget) {
            return Err(Error::DepthExceeded(format!(
                "level {j} word exceeds the {} byte budget",
                self.config.memory_budget
            )));
        }
        while self.level < j {
            let beta = self.filler(self.level)?;
            let len = self.eta.len();
            self.eta.reserve(len + 1);
            self.eta.push(beta);
            self.eta.extend_from_within(..len);
            self.level += 1;
        }
        Ok(())
    }

    /// The level word w_j = τ^{(j)}(a), with |w_j| = 2^{j+1} − 1.
    pub fn level_word(&mut self, j: u32) -> Result<&[Letter]> {
        self.ensure_level(j)?;
        Ok(&self.eta[..level_len(j).unwrap()])
    }

    /// Prefix of length n of the generating word η.
    pub fn eta_prefix(&mut self, n: usize) -> Result<&[Letter]> {
        let j = self.level_for_len(n)?;
        self.ensure_level(j)?;
        Ok(&self.eta[..n])
    }

    pub fn eta_prefix_word(&mut self, n: usize) -> Result<Word> {
        Ok(Word::from(self.eta_prefix(n)?))
    }

    /// Materializes the covering triple at level j in the single-slot cache.
    pub(crate) fn ensure_covering(&mut self, j: u32) -> Result<()> {
        if let Some((cached, _)) = &self.covering {
            if *cached == j {
                return Ok(());
            }
        }
        let triple_len = level_len(j + 1).ok_or_else(|| {
            Error::DepthExceeded("covering word exceeds the guarded integer range".into())
        })?;
        if triple_len > self.config.memory_budget {
            return Err(Error::DepthExceeded(format!(
                "covering words at level {j} exceed the {} byte budget",
                self.config.memory_budget
            )));
        }
        self.ensure_level(j)?;
        let w = &self.eta[..level_len(j).unwrap()];
        let triple = [Letter::X, Letter::Y, Letter::Z].map(|beta| {
            let mut word = Word::from(w);
            word.push(beta);
            word.extend_from_slice(w);
            word
        });
        self.covering = Some((j, triple));
        Ok(())
    }

    pub(crate) fn covering_ref(&self) -> &[Word; 3] {
        &self.covering.as_ref().expect("covering cache filled").1
    }
}

/// 2^{j+1} − 1 within usize, or None past the guarded range.
pub(crate) fn level_len(j: u32) -> Option<usize> {
    if j >= usize::BITS - 1 {
        return None;
    }
    Some((1usize << (j + 1)) - 1)
}

/// τ^{(j)}(w): the first j substitutions of the stream applied to w,
/// innermost first, i.e. τ_{β^{(0)}} ∘ … ∘ τ_{β^{(j-1)}}(w).
pub fn tau_image(spec: &LSpec, j: u64, w: &[Letter]) -> Result<Word> {
    let mut image = Word::from(w);
    for i in (0..j).rev() {
        image = tau(filler_letter(spec, i)?, &image);
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn session(s: &str) -> Session {
        Session::new(s.parse().unwrap())
    }

    #[test]
    fn level_words_follow_the_doubling_recursion() {
        let mut s = session("const:1");
        assert_eq!(Word::from(s.level_word(1).unwrap()).to_string(), "axa");
        assert_eq!(
            Word::from(s.level_word(3).unwrap()).to_string(),
            "axayaxazaxayaxa"
        );

        let mut s = session("const:2");
        assert_eq!(Word::from(s.level_word(2).unwrap()).to_string(), "axaxaxa");
    }

    #[test]
    fn level_word_lengths_are_exact() {
        for text in ["const:1", "geom:2", "ex3", "ex4"] {
            let mut s = session(text);
            for j in 0..=14 {
                assert_eq!(s.level_word(j).unwrap().len(), (1 << (j + 1)) - 1);
            }
        }
    }

    #[test]
    fn eta_prefixes_match_hand_expansions() {
        let mut s = session("const:1");
        assert_eq!(s.eta_prefix_word(7).unwrap().to_string(), "axayaxa");
        assert_eq!(s.eta_prefix_word(16).unwrap().to_string(), "axayaxazaxayaxax");

        let mut s = session("geom:2");
        assert_eq!(s.eta_prefix_word(3).unwrap().to_string(), "axa");

        let mut s = session("ex4");
        assert_eq!(s.eta_prefix_word(16).unwrap().to_string(), "axazaxazaxazaxaz");
    }

    #[test]
    fn level_words_are_palindromes() {
        for text in ["const:1", "geom:2", "ex3", "ex4", "list:3,1,4,1,5:repeat-last"] {
            let mut s = session(text);
            for j in 0..=10 {
                assert!(Word::from(s.level_word(j).unwrap()).is_palindrome());
            }
        }
    }

    #[test]
    fn tau_image_reproduces_level_words() {
        let spec: LSpec = "const:2".parse().unwrap();
        let mut s = Session::new(spec.clone());
        for j in 0..=8 {
            let direct = tau_image(&spec, j as u64, &[Letter::A]).unwrap();
            assert_eq!(&*direct, s.level_word(j).unwrap());
        }
    }

    #[test]
    fn derived_session_starts_with_rotated_cycle() {
        let spec: LSpec = "const:1".parse().unwrap();
        let d = crate::lspec::derived_spec(&spec, 2).unwrap();
        let mut s = Session::new(d);
        assert_eq!(s.eta_prefix_word(3).unwrap().to_string(), "aza");
    }

    #[test]
    fn budget_guards_depth() {
        let spec: LSpec = "const:1".parse().unwrap();
        let mut s = Session::with_config(
            spec,
            SessionConfig {
                memory_budget: 1 << 10,
                power_cap: 1 << 10,
            },
        );
        assert!(s.eta_prefix(2000).is_err());
        assert!(s.level_word(9).is_ok());
        assert!(s.level_word(10).is_err());
    }

    proptest! {
        #[test]
        fn eta_prefix_stability(n in 1usize..2000, m in 1usize..2000) {
            let (n, m) = (n.min(m), n.max(m));
            let mut s = session("list:3,1,4,1,5:repeat-last");
            let long = s.eta_prefix_word(m).unwrap();
            let short = s.eta_prefix_word(n).unwrap();
            prop_assert_eq!(&long[..n], &*short);
        }
    }
}
