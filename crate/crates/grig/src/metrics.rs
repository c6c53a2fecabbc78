//! Order metrics at finite scale: maximal powers Q(n) and Q(v), the
//! repetitive function R(n), the repulsiveness statistic A_{α,n}, factor
//! complexity p(n) with its closed-form evaluator, and finite-scale partials
//! of the exponent quantities Q_α, R_α and ℓ_α.
//!
//! The window-counting complexity and the closed-form evaluator are kept as
//! separate operations on purpose: the brute force is the arbiter, and the
//! harness records their difference instead of patching either side.

use crate::error::{Error, Result};
use crate::lspec::{block_decompose, LSpec};
use crate::session::Session;
use crate::word::{border_array, Letter, Word};

/// Length of the longest proper border (prefix that is also a suffix).
pub fn longest_border(w: &[Letter]) -> usize {
    border_array(w).last().copied().unwrap_or(0)
}

/// Result of a power probe. `CapReached(p)` means v^p is a factor but the
/// probe budget forbade testing beyond p; the true value may be larger.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PowerOutcome {
    Exact(u64),
    CapReached(u64),
}

impl PowerOutcome {
    pub fn value(self) -> u64 {
        match self {
            PowerOutcome::Exact(p) | PowerOutcome::CapReached(p) => p,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, PowerOutcome::Exact(_))
    }
}

fn power_member(session: &mut Session, v: &[Letter], p: u64) -> Result<bool> {
    let word = Word::from(v).repeat(p as usize);
    session.is_factor(&word)
}

/// Q(v): the largest p with v^p ∈ L(η), probed up to the session power cap.
pub fn word_power(session: &mut Session, v: &[Letter]) -> Result<PowerOutcome> {
    if v.is_empty() {
        return Err(Error::InvalidArg("word_power needs a non-empty word".into()));
    }
    if !session.is_factor(v)? {
        return Err(Error::NotAFactor(Word::from(v).to_string()));
    }
    let cap = session.config().power_cap / v.len() as u64;
    if cap <= 1 {
        return Ok(PowerOutcome::CapReached(1));
    }
    // Exponential probing, then binary search; membership is monotone in p.
    let mut good = 1u64;
    let mut bad = None;
    let mut probe = 2u64;
    while bad.is_none() && probe <= cap {
        if power_member(session, v, probe)? {
            good = probe;
            probe = probe.saturating_mul(2);
        } else {
            bad = Some(probe);
        }
    }
    match bad {
        Some(mut bad) => {
            while bad - good > 1 {
                let mid = good + (bad - good) / 2;
                if power_member(session, v, mid)? {
                    good = mid;
                } else {
                    bad = mid;
                }
            }
            Ok(PowerOutcome::Exact(good))
        }
        None => {
            let mut lo = good;
            let mut hi = cap;
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if power_member(session, v, mid)? {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            if lo == cap {
                Ok(PowerOutcome::CapReached(cap))
            } else {
                Ok(PowerOutcome::Exact(lo))
            }
        }
    }
}

/// Q(n) = max over factors v of length n of Q(v).
pub fn max_power(session: &mut Session, n: usize) -> Result<PowerOutcome> {
    let words: Vec<Word> = session.factors(n)?.words().to_vec();
    let cap = session.config().power_cap / n as u64;
    let mut best = 1u64;
    let mut capped = false;
    for v in &words {
        // A word only matters if it beats the current best; one cheap probe
        // rules most words out before the full search runs.
        if best + 1 > cap {
            capped = true;
            break;
        }
        if !power_member(session, v, best + 1)? {
            continue;
        }
        match word_power(session, v)? {
            PowerOutcome::Exact(p) => best = best.max(p),
            PowerOutcome::CapReached(p) => {
                best = best.max(p);
                capped = true;
            }
        }
    }
    if capped {
        Ok(PowerOutcome::CapReached(best))
    } else {
        Ok(PowerOutcome::Exact(best))
    }
}

/// p(n) by exact window counting over the covering words.
pub fn complexity(session: &mut Session, n: usize) -> Result<u64> {
    Ok(session.factors(n)?.len() as u64)
}

/// M(m) = |τ^{(Σ_{i≤m} l_i)}(a)| = 2^{1+Σ_{i≤m} l_i} − 1, with M(0) = 1.
pub fn milestone_len(spec: &LSpec, m: u64) -> Result<u64> {
    let sum = spec.partial_sum(m)?;
    let exp = u32::try_from(sum + 1)
        .ok()
        .filter(|&e| e <= 62)
        .ok_or_else(|| Error::DepthExceeded(format!("milestone M({m}) overflows")))?;
    Ok((1u64 << exp) - 1)
}

/// The closed-form complexity evaluator:
/// p(M(m)+1+r) = 2M(m)+M(m−1)+3r for r < M(m)−M(m−1), else 3M(m)+2r.
/// Only defined for n > M(1); the m = 0 branch would need M(−1).
pub fn complexity_formula(spec: &LSpec, n: u64) -> Result<u64> {
    let m1 = milestone_len(spec, 1)?;
    if n <= m1 {
        return Err(Error::OutOfRange { n, m1 });
    }
    let mut m = 1u64;
    let mut m_cur = m1;
    let mut m_next = milestone_len(spec, 2)?;
    // Largest m with M(m) < n; equal consecutive milestones (possible with
    // zero entries) are stepped over.
    while m_next < n {
        m += 1;
        m_cur = m_next;
        m_next = milestone_len(spec, m + 1)?;
    }
    let m_prev = milestone_len(spec, m - 1)?;
    let r = n - m_cur - 1;
    let value = if r < m_cur - m_prev {
        2u128 * m_cur as u128 + m_prev as u128 + 3 * r as u128
    } else {
        3u128 * m_cur as u128 + 2 * r as u128
    };
    u64::try_from(value).map_err(|_| Error::DepthExceeded(format!("p({n}) overflows")))
}

/// A_{α,n}: the minimum of (n − b) / b^{1/α} over bordered factors of
/// length n, where b is the longest-border length. Infinity when no factor
/// of length n is bordered. The longest border suffices: shrinking a border
/// raises the numerator and lowers the denominator.
pub fn repulsiveness(session: &mut Session, alpha: f64, n: usize) -> Result<f64> {
    if alpha < 1.0 {
        return Err(Error::InvalidArg(format!("alpha must be >= 1, got {alpha}")));
    }
    let table = session.factors(n)?;
    if alpha == 1.0 {
        // Exact rational comparison: (n - b) / b.
        let mut best: Option<(u64, u64)> = None;
        for w in table.words() {
            let b = longest_border(w) as u64;
            if b == 0 {
                continue;
            }
            let cand = (n as u64 - b, b);
            let better = match best {
                None => true,
                Some((num, den)) => {
                    (cand.0 as u128) * (den as u128) < (num as u128) * (cand.1 as u128)
                }
            };
            if better {
                best = Some(cand);
            }
        }
        return Ok(best.map_or(f64::INFINITY, |(num, den)| num as f64 / den as f64));
    }
    let mut best = f64::INFINITY;
    for w in table.words() {
        let b = longest_border(w);
        if b == 0 {
            continue;
        }
        let value = (n - b) as f64 / (b as f64).powf(1.0 / alpha);
        if value < best {
            best = value;
        }
    }
    Ok(best)
}

/// The bracket for R(2^{j+1} − 1) in terms of the sequence:
/// [2^{l_{N(j)+1} + l_{N(j)} − q(j) + j + 1}, 2^{… + j + 2}].
pub fn repetitive_bounds(spec: &LSpec, j: u64) -> Result<(u64, u64)> {
    let pos = block_decompose(spec, j)?;
    let exp = spec
        .entry(pos.block + 1)?
        .checked_add(spec.entry(pos.block)?)
        .and_then(|e| e.checked_sub(pos.offset))
        .and_then(|e| e.checked_add(j + 1))
        .ok_or_else(|| Error::DepthExceeded("repetitive bound exponent overflows".into()))?;
    let exp = u32::try_from(exp)
        .ok()
        .filter(|&e| e <= 62)
        .ok_or_else(|| Error::DepthExceeded(format!("repetitive bound 2^{exp} overflows")))?;
    Ok((1u64 << exp, 1u64 << (exp + 1)))
}

/// R(n): the least r' such that every factor of length r' contains every
/// factor of length n. Binary search on a monotone predicate, bracketed
/// below by n·Q(n)+1 and above by the dyadic bound (doubled once); a bracket
/// violation is an error, never a silent clamp.
pub fn repetitive(session: &mut Session, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArg("repetitive needs n >= 1".into()));
    }
    let q = match max_power(session, n)? {
        PowerOutcome::Exact(q) => q,
        PowerOutcome::CapReached(_) => {
            return Err(Error::DepthExceeded(format!(
                "power cap hit while bracketing R({n})"
            )))
        }
    };
    let lo = n as u64 * q + 1;
    let dyadic_j = session.level_for_len(n)? as u64;
    let (_, upper) = repetitive_bounds(session.spec(), dyadic_j)?;
    let hi = upper
        .checked_mul(2)
        .ok_or_else(|| Error::DepthExceeded("repetitive bracket overflows".into()))?;
    if !session.every_factor_contains_all(hi as usize, n)? {
        return Err(Error::BracketFailed(format!(
            "upper bound {hi} does not satisfy the covering predicate for n = {n}"
        )));
    }
    if session.every_factor_contains_all(lo as usize - 1, n)? {
        return Err(Error::BracketFailed(format!(
            "lower bound {} already satisfies the covering predicate for n = {n}",
            lo - 1
        )));
    }
    let mut lo = lo;
    let mut hi = hi;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if session.every_factor_contains_all(mid as usize, n)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Number of length-n factors possessing a non-empty proper border.
pub fn bordered_count(session: &mut Session, n: usize) -> Result<u64> {
    Ok(session
        .factors(n)?
        .words()
        .iter()
        .filter(|w| longest_border(w) > 0)
        .count() as u64)
}

/// One row of the per-length metric table.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct MetricsRow {
    pub n: usize,
    pub complexity: u64,
    pub max_power: PowerOutcome,
    /// Computed only on request; R is by far the most expensive column.
    pub repetitive: Option<u64>,
    pub repulsiveness: f64,
    pub bordered_count: u64,
}

pub fn metrics_row(
    session: &mut Session,
    alpha: f64,
    n: usize,
    with_repetitive: bool,
) -> Result<MetricsRow> {
    Ok(MetricsRow {
        n,
        complexity: complexity(session, n)?,
        max_power: max_power(session, n)?,
        repetitive: if with_repetitive {
            Some(repetitive(session, n)?)
        } else {
            None
        },
        repulsiveness: repulsiveness(session, alpha, n)?,
        bordered_count: bordered_count(session, n)?,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExponentKind {
    /// Q(n)/n^{α−1}, with the closed-form block terms alongside.
    MaxPower,
    /// R(n)/n^α.
    Repetitive,
    /// A_{α,n}.
    Repulsive,
}

/// Finite-scale terms of a defining limsup/liminf expression. These are
/// partial values over an index window — not limits.
pub struct ExponentPartial {
    pub alpha: f64,
    pub kind: ExponentKind,
    /// (index, term) pairs over the requested range.
    pub terms: Vec<(u64, f64)>,
    /// For `MaxPower`: the closed-form terms 2^{l_{m+1}+1−(α−1)Σ_{i≤m} l_i}
    /// per block index m whose dyadic peak falls inside the range.
    pub closed_terms: Option<Vec<(u64, f64)>>,
    pub running_sup: f64,
    pub tail_min: f64,
}

pub const PARTIAL_LABEL: &str = "finite-scale partial, not a limit";

pub fn exponent_partials(
    session: &mut Session,
    alpha: f64,
    kind: ExponentKind,
    lo: u64,
    hi: u64,
) -> Result<ExponentPartial> {
    if alpha < 1.0 {
        return Err(Error::InvalidArg(format!("alpha must be >= 1, got {alpha}")));
    }
    if lo > hi || lo == 0 {
        return Err(Error::InvalidArg(format!("bad index range [{lo}, {hi}]")));
    }
    let mut terms = Vec::new();
    let mut closed_terms = None;
    match kind {
        ExponentKind::MaxPower => {
            for n in lo..=hi {
                let q = match max_power(session, n as usize)? {
                    PowerOutcome::Exact(q) => q,
                    PowerOutcome::CapReached(_) => {
                        return Err(Error::DepthExceeded(format!(
                            "power cap hit at Q({n}) while building partials"
                        )))
                    }
                };
                terms.push((n, q as f64 / (n as f64).powf(alpha - 1.0)));
            }
            let mut closed = Vec::new();
            let mut m = 1u64;
            loop {
                let sum = session.spec().partial_sum(m)?;
                if sum + 1 >= 63 || (1u64 << (sum + 1)) > hi {
                    break;
                }
                let l_next = session.spec().entry(m + 1)? as f64;
                let value = ((l_next + 1.0) - (alpha - 1.0) * sum as f64).exp2();
                closed.push((m, value));
                m += 1;
            }
            closed_terms = Some(closed);
        }
        ExponentKind::Repetitive => {
            for n in lo..=hi {
                let r = repetitive(session, n as usize)?;
                terms.push((n, r as f64 / (n as f64).powf(alpha)));
            }
        }
        ExponentKind::Repulsive => {
            for n in lo.max(2)..=hi {
                terms.push((n, repulsiveness(session, alpha, n as usize)?));
            }
        }
    }
    let finite = terms.iter().map(|&(_, v)| v).filter(|v| v.is_finite());
    let running_sup = terms
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let tail_min = finite.fold(f64::INFINITY, f64::min);
    Ok(ExponentPartial {
        alpha,
        kind,
        terms,
        closed_terms,
        running_sup,
        tail_min,
    })
}
