//! Exact language enumeration.
//!
//! Every factor of η of length n ≤ 2^{J+1} − 1 occurs inside one of the
//! three covering words w_J·x·w_J, w_J·y·w_J, w_J·z·w_J, and conversely all
//! three covering words are factors of η. Sliding a window over the triple
//! therefore enumerates the language exactly — no "long enough prefix"
//! heuristics. Tables store deduplicated factors keyed by packed 2-bit
//! letter codes together with their right-extension sets.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::session::Session;
use crate::word::{contains_word, find_all, Letter, Word};

/// Set of right extensions of a factor, as a 4-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct ExtSet(u8);

impl ExtSet {
    pub fn contains(self, l: Letter) -> bool {
        self.0 & (1 << l.code()) != 0
    }

    fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l.code();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        Letter::ALL.into_iter().filter(move |l| self.contains(*l))
    }
}

/// The exact set of length-n factors with their right extensions.
pub struct FactorTable {
    n: usize,
    words: Vec<Word>,
    exts: Vec<ExtSet>,
    index: HashMap<Box<[u8]>, u32>,
}

impl FactorTable {
    /// p(n): the number of distinct factors of length n.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Factors in lexicographic order (a < x < y < z).
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, ExtSet)> {
        self.words.iter().zip(self.exts.iter().copied())
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.id_of(w).is_some()
    }

    pub fn extensions_of(&self, w: &[Letter]) -> Option<ExtSet> {
        self.id_of(w).map(|id| self.exts[id as usize])
    }

    /// Σ over factors of |extensions|; equals p(n+1).
    pub fn extension_sum(&self) -> u64 {
        self.exts.iter().map(|e| e.len() as u64).sum()
    }

    pub(crate) fn id_of(&self, w: &[Letter]) -> Option<u32> {
        if w.len() != self.n {
            return None;
        }
        let mut buf = Vec::with_capacity(packed_len(self.n));
        pack_into(w, &mut buf);
        self.index.get(buf.as_slice()).copied()
    }
}

fn packed_len(n: usize) -> usize {
    n.div_ceil(4)
}

fn pack_into(w: &[Letter], buf: &mut Vec<u8>) {
    buf.clear();
    buf.resize(packed_len(w.len()), 0);
    for (i, &l) in w.iter().enumerate() {
        buf[i / 4] |= l.code() << (2 * (i % 4));
    }
}

fn build_table(covering: &[Word; 3], n: usize) -> FactorTable {
    let mut map: BTreeMap<Word, ExtSet> = BTreeMap::new();
    for c in covering {
        for window in c.windows(n) {
            map.entry(Word::from(window)).or_default();
        }
        for window in c.windows(n + 1) {
            map.entry(Word::from(&window[..n]))
                .or_default()
                .insert(window[n]);
        }
    }
    let mut words = Vec::with_capacity(map.len());
    let mut exts = Vec::with_capacity(map.len());
    let mut index = HashMap::with_capacity(map.len());
    let mut buf = Vec::new();
    for (word, ext) in map {
        pack_into(&word, &mut buf);
        index.insert(buf.clone().into_boxed_slice(), words.len() as u32);
        words.push(word);
        exts.push(ext);
    }
    FactorTable { n, words, exts, index }
}

impl Session {
    /// The three covering words w_J·x·w_J, w_J·y·w_J, w_J·z·w_J at the
    /// smallest level J with 2^{J+1} − 1 ≥ n. Their length-n windows are
    /// exactly the factors of length n.
    pub fn covering_words(&mut self, n: usize) -> Result<[Word; 3]> {
        let j = self.level_for_len(n.max(1))?;
        self.ensure_covering(j)?;
        Ok(self.covering_ref().clone())
    }

    /// The exact factor table for length n, built and cached on first use.
    /// Extension data is read off (n+1)-windows, so the covering level is
    /// chosen for n + 1.
    pub fn factors(&mut self, n: usize) -> Result<&FactorTable> {
        if n == 0 {
            return Err(Error::InvalidArg("factor tables need n >= 1".into()));
        }
        if !self.tables.contains_key(&n) {
            let j = self.level_for_len(n + 1)?;
            self.ensure_covering(j)?;
            let table = build_table(self.covering_ref(), n);
            self.tables.insert(n, table);
        }
        Ok(&self.tables[&n])
    }

    /// Membership in L(η). Uses a cached table when one exists, otherwise
    /// searches the covering words directly.
    pub fn is_factor(&mut self, w: &[Letter]) -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        if let Some(table) = self.tables.get(&w.len()) {
            return Ok(table.contains(w));
        }
        let j = self.level_for_len(w.len())?;
        self.ensure_covering(j)?;
        Ok(self
            .covering_ref()
            .iter()
            .any(|c| contains_word(c, w)))
    }

    /// All s-right-special factors of length n with s ≥ 2, with their s.
    pub fn right_special_words(&mut self, n: usize) -> Result<Vec<(Word, usize)>> {
        let table = self.factors(n)?;
        Ok(table
            .entries()
            .filter(|(_, ext)| ext.len() >= 2)
            .map(|(w, ext)| (w.clone(), ext.len()))
            .collect())
    }

    /// Maximal difference between successive occurrences of `w` in the
    /// length-`horizon` prefix of η; a uniform-recurrence diagnostic.
    pub fn max_gap(&mut self, w: &[Letter], horizon: usize) -> Result<usize> {
        if w.is_empty() {
            return Err(Error::InvalidArg("max_gap needs a non-empty word".into()));
        }
        if !self.is_factor(w)? {
            return Err(Error::NotAFactor(Word::from(w).to_string()));
        }
        let prefix = self.eta_prefix(horizon)?;
        let occ = find_all(prefix, w);
        if occ.len() < 2 {
            return Err(Error::DepthExceeded(format!(
                "horizon {horizon} sees {} occurrence(s) of {}; no gap to measure",
                occ.len(),
                Word::from(w)
            )));
        }
        Ok(occ.windows(2).map(|p| p[1] - p[0]).max().unwrap())
    }

    /// True iff every factor of length `window_len` contains every factor of
    /// length n — the predicate underlying the repetitive function. Runs a
    /// sliding distinct-count over the covering words, so `window_len` may be
    /// large without materializing a factor table for it.
    pub(crate) fn every_factor_contains_all(
        &mut self,
        window_len: usize,
        n: usize,
    ) -> Result<bool> {
        if window_len < n {
            return Ok(false);
        }
        self.factors(n)?;
        let j = self.level_for_len(window_len)?;
        self.ensure_covering(j)?;
        let table = &self.tables[&n];
        let total = table.len();
        let span = window_len - n + 1;
        let mut buf = Vec::new();
        for c in self.covering.as_ref().expect("covering cache filled").1.iter() {
            let mut counts = vec![0u32; total];
            let mut distinct = 0usize;
            let mut ids = Vec::with_capacity(c.len() - n + 1);
            for window in c.windows(n) {
                pack_into(window, &mut buf);
                let id = *table
                    .index
                    .get(buf.as_slice())
                    .expect("covering window is a factor");
                ids.push(id);
            }
            for (end, &id) in ids.iter().enumerate() {
                let slot = &mut counts[id as usize];
                if *slot == 0 {
                    distinct += 1;
                }
                *slot += 1;
                if end >= span {
                    let old = &mut counts[ids[end - span] as usize];
                    *old -= 1;
                    if *old == 0 {
                        distinct -= 1;
                    }
                }
                if end + 1 >= span && distinct < total {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
