//! Sequence specifications.
//!
//! An l-Grigorchuk subshift is determined by a sequence l = (l_i) of block
//! lengths: the generating word is built from the substitution stream
//! τ_x^{l_1} τ_y^{l_2} τ_z^{l_3} τ_x^{l_4} …, the filler cycle x → y → z
//! advancing once per block. A spec describes the sequence (a closed family
//! or an explicit list) together with a validation mode:
//!
//! * strict-positive — every entry must be ≥ 1;
//! * weak-zero — entries may be 0, but no two consecutive entries may both
//!   be 0. Zero blocks contribute no substitutions yet still advance the
//!   filler cycle. Factor enumeration additionally assumes that all three
//!   fillers keep occurring in the stream, which holds for the built-in
//!   weak-zero family (only finitely many zero entries).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::Letter;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValidationMode {
    StrictPositive,
    WeakZero,
}

/// What an explicit list does past its last entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExtendPolicy {
    ErrorPastEnd,
    RepeatLast,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LFamily {
    /// l_i = k.
    Const(u64),
    /// l_i = b^i, b ≥ 2.
    Geom(u64),
    /// l_i = P(i); coefficients from highest degree down to the constant.
    Poly(Vec<i64>),
    /// l_i = 1 for odd i, 2^{i/2} - 1 for even i (bounded part fixed to 1).
    ExampleIii,
    /// l_i = i for odd i, 2^{i/2} - i for even i; entries 2 and 4 are zero.
    ExampleIv,
    Explicit { entries: Vec<u64>, extend: ExtendPolicy },
    /// Suffix view used for derived sequences: first block shortened to
    /// `first_len`, then the base sequence from `start_block + 1` on. Block
    /// b maps to base block `start_block + b - 1`, which also rotates the
    /// filler cycle.
    Tail {
        base: Box<LSpec>,
        start_block: u64,
        first_len: u64,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LSpec {
    family: LFamily,
    validation: ValidationMode,
}

impl LSpec {
    /// Builds a spec and eagerly validates a short prefix of the sequence.
    pub fn new(family: LFamily, validation: ValidationMode) -> Result<LSpec> {
        if let LFamily::Geom(b) = family {
            if b < 2 {
                return Err(Error::InvalidSpec(format!(
                    "geom base must be >= 2, got {b}"
                )));
            }
        }
        if let LFamily::Explicit { entries, .. } = &family {
            if entries.is_empty() {
                return Err(Error::InvalidSpec("explicit list is empty".into()));
            }
        }
        let eager_limit = match &family {
            LFamily::Explicit {
                entries,
                extend: ExtendPolicy::ErrorPastEnd,
            } => entries.len().min(8) as u64,
            _ => 8,
        };
        let spec = LSpec { family, validation };
        for i in 1..=eager_limit {
            match spec.entry(i) {
                Ok(_) => {}
                Err(e @ Error::InvalidSpec(_)) => return Err(e),
                // Deep entries may legitimately overflow (or run past an
                // explicit list); that only matters when they are queried.
                Err(_) => break,
            }
        }
        Ok(spec)
    }

    pub fn strict(family: LFamily) -> Result<LSpec> {
        LSpec::new(family, ValidationMode::StrictPositive)
    }

    pub fn family(&self) -> &LFamily {
        &self.family
    }

    pub fn validation(&self) -> ValidationMode {
        self.validation
    }

    pub fn is_strict(&self) -> bool {
        self.validation == ValidationMode::StrictPositive
    }

    fn raw_entry(&self, i: u64) -> Result<u64> {
        debug_assert!(i >= 1);
        match &self.family {
            LFamily::Const(k) => Ok(*k),
            LFamily::Geom(b) => {
                let exp = u32::try_from(i)
                    .map_err(|_| Error::DepthExceeded(format!("geom exponent {i}")))?;
                b.checked_pow(exp)
                    .ok_or_else(|| Error::DepthExceeded(format!("geom entry l_{i} overflows")))
            }
            LFamily::Poly(coeffs) => {
                let mut acc: i128 = 0;
                for &c in coeffs {
                    acc = acc
                        .checked_mul(i as i128)
                        .and_then(|v| v.checked_add(c as i128))
                        .ok_or_else(|| {
                            Error::DepthExceeded(format!("poly entry l_{i} overflows"))
                        })?;
                }
                if acc < 0 {
                    return Err(Error::InvalidSpec(format!(
                        "poly produces negative value {acc} at index {i}"
                    )));
                }
                u64::try_from(acc)
                    .map_err(|_| Error::DepthExceeded(format!("poly entry l_{i} overflows")))
            }
            LFamily::ExampleIii => {
                if i % 2 == 1 {
                    Ok(1)
                } else {
                    let k = u32::try_from(i / 2)
                        .map_err(|_| Error::DepthExceeded(format!("entry l_{i}")))?;
                    1u64.checked_shl(k)
                        .map(|v| v - 1)
                        .ok_or_else(|| Error::DepthExceeded(format!("entry l_{i} overflows")))
                }
            }
            LFamily::ExampleIv => {
                if i % 2 == 1 {
                    Ok(i)
                } else {
                    let k = u32::try_from(i / 2)
                        .map_err(|_| Error::DepthExceeded(format!("entry l_{i}")))?;
                    let pow = 1u64
                        .checked_shl(k)
                        .ok_or_else(|| Error::DepthExceeded(format!("entry l_{i} overflows")))?;
                    // 2^{i/2} >= i for all even i >= 2, so this cannot underflow.
                    Ok(pow - i)
                }
            }
            LFamily::Explicit { entries, extend } => {
                let idx = (i - 1) as usize;
                if idx < entries.len() {
                    Ok(entries[idx])
                } else {
                    match extend {
                        ExtendPolicy::RepeatLast => Ok(*entries.last().unwrap()),
                        ExtendPolicy::ErrorPastEnd => Err(Error::InvalidSpec(format!(
                            "explicit list has {} entries; l_{i} requested with error-past-end policy",
                            entries.len()
                        ))),
                    }
                }
            }
            LFamily::Tail {
                base,
                start_block,
                first_len,
            } => {
                if i == 1 {
                    Ok(*first_len)
                } else {
                    base.raw_entry(start_block + i - 1)
                }
            }
        }
    }

    /// The i-th block length l_i (1-based), checked against the validation mode.
    pub fn entry(&self, i: u64) -> Result<u64> {
        if i == 0 {
            return Err(Error::InvalidArg("sequence entries are 1-based".into()));
        }
        let v = self.raw_entry(i)?;
        match self.validation {
            ValidationMode::StrictPositive => {
                if v == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "l_{i} = 0 under strict-positive validation"
                    )));
                }
            }
            ValidationMode::WeakZero => {
                if v == 0 && i >= 2 && self.raw_entry(i - 1)? == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "consecutive zero entries at indices {} and {i}",
                        i - 1
                    )));
                }
            }
        }
        Ok(v)
    }

    /// Σ_{i=1}^{upto} l_i with overflow guarding.
    pub fn partial_sum(&self, upto: u64) -> Result<u64> {
        let mut sum: u64 = 0;
        for i in 1..=upto {
            sum = sum
                .checked_add(self.entry(i)?)
                .ok_or_else(|| Error::DepthExceeded(format!("partial sum through l_{i}")))?;
        }
        Ok(sum)
    }

    /// Filler letter of a block: the cycle x → y → z indexed by block number,
    /// rotated through any Tail wrappers.
    pub fn letter_of_block(&self, block: u64) -> Letter {
        debug_assert!(block >= 1);
        match &self.family {
            LFamily::Tail {
                base, start_block, ..
            } => base.letter_of_block(start_block + block - 1),
            _ => Letter::FILLERS[((block - 1) % 3) as usize],
        }
    }
}

/// The block containing a given substitution: `j = offset + Σ_{i<block} l_i`
/// with `0 <= offset < l_block`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockPos {
    pub block: u64,
    pub offset: u64,
}

/// Decomposes substitution index j: the minimal block whose cumulative length
/// reaches j+1. Zero-length blocks are skipped (they still advance the cycle).
pub fn block_decompose(spec: &LSpec, j: u64) -> Result<BlockPos> {
    let mut sum: u64 = 0;
    let mut block: u64 = 0;
    // No two consecutive zero entries, so at most 2(j+2) blocks are needed.
    let limit = 2 * (j + 2);
    while block < limit {
        block += 1;
        let len = spec.entry(block)?;
        sum = sum
            .checked_add(len)
            .ok_or_else(|| Error::DepthExceeded(format!("partial sum through l_{block}")))?;
        if sum > j {
            return Ok(BlockPos {
                block,
                offset: j - (sum - len),
            });
        }
    }
    Err(Error::InvalidSpec(format!(
        "sequence stalls before covering substitution {}",
        j + 1
    )))
}

/// β^{(j)}: the filler letter of the (j+1)-th elementary substitution.
pub fn filler_letter(spec: &LSpec, j: u64) -> Result<Letter> {
    Ok(spec.letter_of_block(block_decompose(spec, j)?.block))
}

/// The spec of the derived word η^{(j)}: the suffix of the substitution
/// stream after its first j entries. Its first block has length
/// l_{N(j)} − q(j) and the filler cycle starts at the letter of block N(j).
pub fn derived_spec(spec: &LSpec, j: u64) -> Result<LSpec> {
    if !spec.is_strict() {
        return Err(Error::InvalidSpec(
            "derived specs require a strict-positive base".into(),
        ));
    }
    if j == 0 {
        return Ok(spec.clone());
    }
    let pos = block_decompose(spec, j)?;
    let first_len = spec.entry(pos.block)? - pos.offset;
    debug_assert!(first_len >= 1);
    Ok(LSpec {
        family: LFamily::Tail {
            base: Box::new(spec.clone()),
            start_block: pos.block,
            first_len,
        },
        validation: spec.validation,
    })
}

impl fmt::Display for LSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            LFamily::Const(k) => write!(f, "const:{k}"),
            LFamily::Geom(b) => write!(f, "geom:{b}"),
            LFamily::Poly(coeffs) => {
                write!(f, "poly:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            LFamily::ExampleIii => write!(f, "ex3"),
            LFamily::ExampleIv => write!(f, "ex4"),
            LFamily::Explicit { entries, extend } => {
                write!(f, "list:")?;
                for (i, v) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                if *extend == ExtendPolicy::RepeatLast {
                    write!(f, ":repeat-last")?;
                }
                Ok(())
            }
            LFamily::Tail {
                base,
                start_block,
                first_len,
            } => write!(f, "derived({base} @ block {start_block}, first {first_len})"),
        }
    }
}

impl FromStr for LSpec {
    type Err = Error;

    /// Grammar: `const:<k>` | `geom:<b>` | `poly:<c_d,…,c_0>` |
    /// `list:<v1,v2,…>[:repeat-last]` | `ex3` | `ex4`.
    fn from_str(s: &str) -> Result<LSpec> {
        fn num<T: FromStr>(text: &str, pos: usize, what: &str) -> Result<T> {
            text.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected {what}, got {text:?}"),
            })
        }

        if s.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty spec string".into(),
            });
        }
        match s {
            "ex3" => return LSpec::strict(LFamily::ExampleIii),
            "ex4" => return LSpec::new(LFamily::ExampleIv, ValidationMode::WeakZero),
            _ => {}
        }
        let (head, rest) = match s.find(':') {
            Some(i) => (&s[..i], &s[i + 1..]),
            None => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown spec {s:?}; expected const:, geom:, poly:, list:, ex3 or ex4"),
                })
            }
        };
        let body_pos = head.len() + 1;
        if rest.is_empty() {
            return Err(Error::Parse {
                pos: body_pos,
                msg: "missing spec body".into(),
            });
        }
        match head {
            "const" => LSpec::strict(LFamily::Const(num(rest, body_pos, "a positive integer")?)),
            "geom" => LSpec::strict(LFamily::Geom(num(rest, body_pos, "an integer base")?)),
            "poly" => {
                let mut coeffs = Vec::new();
                let mut pos = body_pos;
                for part in rest.split(',') {
                    coeffs.push(num(part, pos, "an integer coefficient")?);
                    pos += part.len() + 1;
                }
                LSpec::strict(LFamily::Poly(coeffs))
            }
            "list" => {
                let (items, extend) = match rest.strip_suffix(":repeat-last") {
                    Some(prefix) => (prefix, ExtendPolicy::RepeatLast),
                    None => (rest, ExtendPolicy::ErrorPastEnd),
                };
                let mut entries = Vec::new();
                let mut pos = body_pos;
                for part in items.split(',') {
                    entries.push(num(part, pos, "a non-negative integer")?);
                    pos += part.len() + 1;
                }
                LSpec::strict(LFamily::Explicit { entries, extend })
            }
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown spec family {head:?}"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(s: &str) -> LSpec {
        s.parse().unwrap()
    }

    #[test]
    fn block_decompose_const_one() {
        let s = spec("const:1");
        assert_eq!(block_decompose(&s, 0).unwrap(), BlockPos { block: 1, offset: 0 });
        assert_eq!(block_decompose(&s, 4).unwrap(), BlockPos { block: 5, offset: 0 });
    }

    #[test]
    fn block_decompose_geom_two() {
        let s = spec("geom:2");
        assert_eq!(s.entry(1).unwrap(), 2);
        assert_eq!(s.entry(3).unwrap(), 8);
        assert_eq!(block_decompose(&s, 5).unwrap(), BlockPos { block: 2, offset: 3 });
    }

    #[test]
    fn fillers_cycle_with_blocks() {
        let s = spec("const:1");
        let fillers: String = (0..6)
            .map(|j| filler_letter(&s, j).unwrap().as_char())
            .collect();
        assert_eq!(fillers, "xyzxyz");

        let s = spec("list:2,1,1:repeat-last");
        let fillers: String = (0..3)
            .map(|j| filler_letter(&s, j).unwrap().as_char())
            .collect();
        assert_eq!(fillers, "xxy");
    }

    #[test]
    fn example_families_match_their_definitions() {
        let s = spec("ex3");
        let head: Vec<u64> = (1..=8).map(|i| s.entry(i).unwrap()).collect();
        assert_eq!(head, vec![1, 1, 1, 3, 1, 7, 1, 15]);

        let s = spec("ex4");
        let head: Vec<u64> = (1..=7).map(|i| s.entry(i).unwrap()).collect();
        assert_eq!(head, vec![1, 0, 3, 0, 5, 2, 7]);
    }

    #[test]
    fn weak_zero_skips_zero_blocks_but_advances_cycle() {
        let s = spec("ex4");
        // Substitution 2 falls in block 3 because block 2 is empty.
        assert_eq!(block_decompose(&s, 1).unwrap(), BlockPos { block: 3, offset: 0 });
        assert_eq!(filler_letter(&s, 1).unwrap(), Letter::Z);
        // Block 5 carries letter y after the skipped block 4.
        assert_eq!(block_decompose(&s, 4).unwrap(), BlockPos { block: 5, offset: 0 });
        assert_eq!(filler_letter(&s, 4).unwrap(), Letter::Y);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(matches!(
            LSpec::strict(LFamily::Const(0)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            LSpec::strict(LFamily::Geom(1)),
            Err(Error::InvalidSpec(_))
        ));
        // Negative polynomial value reported with the offending index.
        let err = LSpec::strict(LFamily::Poly(vec![1, -10])).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(ref m) if m.contains("index 1")));
        // Two consecutive zeros are rejected even in weak-zero mode.
        let weak = LSpec::new(
            LFamily::Explicit {
                entries: vec![1, 0, 0, 1],
                extend: ExtendPolicy::RepeatLast,
            },
            ValidationMode::WeakZero,
        );
        assert!(matches!(weak, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn explicit_list_extension_policies() {
        let s = spec("list:3,1,4,1,5:repeat-last");
        assert_eq!(s.entry(5).unwrap(), 5);
        assert_eq!(s.entry(9).unwrap(), 5);

        let s = spec("list:3,1");
        assert_eq!(s.entry(2).unwrap(), 1);
        assert!(matches!(s.entry(3), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            "geom:abc".parse::<LSpec>(),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            "list:1,q".parse::<LSpec>(),
            Err(Error::Parse { pos: 7, .. })
        ));
        assert!(matches!("".parse::<LSpec>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("bogus".parse::<LSpec>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trips_through_parse() {
        for text in ["const:1", "geom:2", "poly:1,0", "list:3,1,4,1,5:repeat-last", "ex3", "ex4"] {
            assert_eq!(spec(text).to_string(), text);
        }
    }

    #[test]
    fn derived_spec_shifts_blocks_and_cycle() {
        let s = spec("const:1");
        let d = derived_spec(&s, 2).unwrap();
        assert_eq!(d.entry(1).unwrap(), 1);
        assert_eq!(d.letter_of_block(1), Letter::Z);
        assert_eq!(derived_spec(&s, 0).unwrap(), s);
    }

    proptest! {
        #[test]
        fn block_decompose_invariant(j in 0u64..400, pick in 0usize..4) {
            let s = spec(["const:1", "const:3", "geom:2", "list:3,1,4,1,5:repeat-last"][pick]);
            let pos = block_decompose(&s, j).unwrap();
            let before: u64 = (1..pos.block).map(|i| s.entry(i).unwrap()).sum();
            prop_assert_eq!(j, pos.offset + before);
            prop_assert!(pos.offset < s.entry(pos.block).unwrap());
        }
    }
}
