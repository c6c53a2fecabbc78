//! Boundedness criteria on the sequence l.
//!
//! The subshift is α-repulsive (equivalently α-finite) iff
//! c_n = l_{n+1} + (1 − α) Σ_{i≤n} l_i stays bounded, and α-repetitive iff
//! d_n = l_{n+2} + l_{n+1} + (1 − α) Σ_{i≤n} l_i stays bounded. Boundedness
//! of a limsup cannot be decided from finitely many terms, so verdicts are
//! three-valued heuristics over a finite window, labeled as such.

use crate::error::{Error, Result};
use crate::lspec::LSpec;
use crate::verify::{CheckReport, CheckStatus};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CriterionKind {
    /// α-repulsive / α-finite: c_n = l_{n+1} + (1 − α) S_n.
    Finite,
    /// α-repetitive: d_n = l_{n+2} + l_{n+1} + (1 − α) S_n.
    Repetitive,
}

impl CriterionKind {
    pub fn label(self) -> &'static str {
        match self {
            CriterionKind::Finite => "finite",
            CriterionKind::Repetitive => "repetitive",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    BoundedSoFar,
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::BoundedSoFar => "bounded-so-far",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

pub struct CriterionTrace {
    pub kind: CriterionKind,
    pub alpha: f64,
    pub terms: Vec<f64>,
    pub sup_abs: f64,
    pub verdict: Verdict,
}

const FLOAT_SUP_TOL: f64 = 1e-9;

/// Window heuristic over |terms|:
/// * diverging — |terms| strictly increase over the last quarter, or the
///   last quarter's sup exceeds the previous quarter's;
/// * bounded-so-far — the sup over the last half equals the sup over the
///   first half;
/// * inconclusive — anything else.
fn verdict_for(terms: &[f64]) -> Verdict {
    let m = terms.len();
    let abs: Vec<f64> = terms.iter().map(|t| t.abs()).collect();
    let sup = |range: &[f64]| range.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let quarter = (m / 4).max(1);
    let last_quarter = &abs[m - quarter..];
    let prev_quarter = &abs[m.saturating_sub(2 * quarter)..m - quarter];
    let increasing = last_quarter.len() >= 2 && last_quarter.windows(2).all(|p| p[1] > p[0]);
    if increasing || (!prev_quarter.is_empty() && sup(last_quarter) > sup(prev_quarter) + FLOAT_SUP_TOL)
    {
        return Verdict::Diverging;
    }
    let half = (m / 2).max(1);
    if (sup(&abs[..half]) - sup(&abs[m - half..])).abs() <= FLOAT_SUP_TOL {
        return Verdict::BoundedSoFar;
    }
    Verdict::Inconclusive
}

/// The criterion sequence for a given α, exact for integer α (i128 internally)
/// and within 1e−12 relative error otherwise.
pub fn criterion_trace(
    spec: &LSpec,
    alpha: f64,
    kind: CriterionKind,
    depth: u64,
) -> Result<CriterionTrace> {
    if alpha < 1.0 {
        return Err(Error::InvalidArg(format!("alpha must be >= 1, got {alpha}")));
    }
    if depth < 3 {
        return Err(Error::InvalidArg("criterion traces need depth >= 3".into()));
    }
    let integer_alpha = alpha.fract() == 0.0 && alpha <= (1u64 << 32) as f64;
    let mut terms = Vec::with_capacity(depth as usize);
    let mut sum: u64 = 0;
    for n in 1..=depth {
        sum = sum
            .checked_add(spec.entry(n)?)
            .ok_or_else(|| Error::DepthExceeded(format!("partial sum through l_{n}")))?;
        let head = match kind {
            CriterionKind::Finite => spec.entry(n + 1)? as i128,
            CriterionKind::Repetitive => (spec.entry(n + 1)? + spec.entry(n + 2)?) as i128,
        };
        let term = if integer_alpha {
            let exact = head + (1 - alpha as i128) * sum as i128;
            if exact.unsigned_abs() > 1 << 53 {
                return Err(Error::DepthExceeded(format!(
                    "criterion term at n = {n} exceeds the exact float range"
                )));
            }
            exact as f64
        } else {
            head as f64 + (1.0 - alpha) * sum as f64
        };
        terms.push(term);
    }
    let sup_abs = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
    let verdict = verdict_for(&terms);
    Ok(CriterionTrace {
        kind,
        alpha,
        terms,
        sup_abs,
        verdict,
    })
}

pub struct ExponentEstimate {
    pub kind: CriterionKind,
    pub values: Vec<f64>,
    pub last: f64,
    /// max − min over the last quarter of the window.
    pub drift: f64,
}

/// Solves c_n = 0 (resp. d_n = 0) for α at each n:
/// α̂_n = 1 + l_{n+1}/S_n, resp. 1 + (l_{n+1} + l_{n+2})/S_n.
pub fn exponent_estimate(
    spec: &LSpec,
    kind: CriterionKind,
    depth: u64,
) -> Result<ExponentEstimate> {
    if depth < 3 {
        return Err(Error::InvalidArg("exponent estimates need depth >= 3".into()));
    }
    if !spec.is_strict() {
        return Err(Error::InvalidSpec(
            "exponent estimates require a strict-positive spec".into(),
        ));
    }
    let mut values = Vec::with_capacity(depth as usize);
    let mut sum: u64 = 0;
    for n in 1..=depth {
        sum = sum
            .checked_add(spec.entry(n)?)
            .ok_or_else(|| Error::DepthExceeded(format!("partial sum through l_{n}")))?;
        let head = match kind {
            CriterionKind::Finite => spec.entry(n + 1)? as f64,
            CriterionKind::Repetitive => (spec.entry(n + 1)? + spec.entry(n + 2)?) as f64,
        };
        values.push(1.0 + head / sum as f64);
    }
    let quarter = (values.len() / 4).max(1);
    let tail = &values[values.len() - quarter..];
    let drift = tail.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - tail.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    Ok(ExponentEstimate {
        kind,
        last: *values.last().unwrap(),
        values,
        drift,
    })
}

pub const DEFAULT_ALPHA_GRID: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 4.0];
pub const DEFAULT_SQUARE_TOL: f64 = 0.05;

/// Checks the relation "α-repulsive implies α²-repetitive" at finite scale:
/// if no grid α bounds either criterion the spec passes by divergence;
/// otherwise the repetitive exponent estimate must be the square of the
/// finite one within tolerance.
pub fn square_relation_check(
    spec: &LSpec,
    depth: u64,
    alpha_grid: &[f64],
    tol: f64,
) -> Result<CheckReport> {
    let spec_text = spec.to_string();
    let mut bounded_finite = Vec::new();
    let mut bounded_repetitive = Vec::new();
    for &alpha in alpha_grid {
        if criterion_trace(spec, alpha, CriterionKind::Finite, depth)?.verdict
            == Verdict::BoundedSoFar
        {
            bounded_finite.push(alpha);
        }
        if criterion_trace(spec, alpha, CriterionKind::Repetitive, depth)?.verdict
            == Verdict::BoundedSoFar
        {
            bounded_repetitive.push(alpha);
        }
    }
    if bounded_finite.is_empty() && bounded_repetitive.is_empty() {
        return Ok(CheckReport {
            check_id: "square-relation".into(),
            l_spec: spec_text,
            params: format!("depth {depth}, tol {tol}"),
            status: CheckStatus::Pass,
            detail: format!(
                "no bounded alpha on the grid {alpha_grid:?} at depth {depth}; pass by divergence"
            ),
        });
    }
    let fin = exponent_estimate(spec, CriterionKind::Finite, depth)?;
    let rep = exponent_estimate(spec, CriterionKind::Repetitive, depth)?;
    if fin.drift > tol || rep.drift > tol {
        return Ok(CheckReport {
            check_id: "square-relation".into(),
            l_spec: spec_text,
            params: format!("depth {depth}, tol {tol}"),
            status: CheckStatus::Inconclusive {
                note: format!(
                    "estimate drift {:.4}/{:.4} exceeds tolerance {tol}",
                    fin.drift, rep.drift
                ),
            },
            detail: String::new(),
        });
    }
    let expected = fin.last * fin.last;
    let status = if (rep.last - expected).abs() <= tol {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail {
            witness: format!(
                "repetitive estimate {:.4} vs squared finite estimate {:.4}",
                rep.last, expected
            ),
        }
    };
    Ok(CheckReport {
        check_id: "square-relation".into(),
        l_spec: spec_text,
        params: format!("depth {depth}, tol {tol}"),
        status,
        detail: format!(
            "finite estimate {:.4}, repetitive estimate {:.4}, squared {:.4}",
            fin.last, rep.last, expected
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> LSpec {
        s.parse().unwrap()
    }

    #[test]
    fn constant_sequence_criteria_are_constant() {
        let t = criterion_trace(&spec("const:1"), 1.0, CriterionKind::Finite, 20).unwrap();
        assert!(t.terms.iter().all(|&c| c == 1.0));
        assert_eq!(t.verdict, Verdict::BoundedSoFar);

        let t = criterion_trace(&spec("const:1"), 1.0, CriterionKind::Repetitive, 20).unwrap();
        assert!(t.terms.iter().all(|&c| c == 2.0));
        assert_eq!(t.verdict, Verdict::BoundedSoFar);
    }

    #[test]
    fn geometric_sequence_criteria() {
        let t = criterion_trace(&spec("geom:2"), 2.0, CriterionKind::Finite, 20).unwrap();
        assert!(t.terms.iter().all(|&c| c == 2.0));
        assert_eq!(t.verdict, Verdict::BoundedSoFar);

        let t = criterion_trace(&spec("geom:2"), 4.0, CriterionKind::Repetitive, 20).unwrap();
        assert!(t.terms.iter().all(|&c| c == 6.0));
        assert_eq!(t.verdict, Verdict::BoundedSoFar);

        let t = criterion_trace(&spec("geom:2"), 1.0, CriterionKind::Finite, 20).unwrap();
        assert_eq!(t.verdict, Verdict::Diverging);
    }

    #[test]
    fn example_three_is_repetitive_but_not_finite() {
        let s = spec("ex3");
        let t = criterion_trace(&s, 2.0, CriterionKind::Repetitive, 24).unwrap();
        assert_eq!(t.verdict, Verdict::BoundedSoFar);
        assert!(t.sup_abs <= 2.0);
        for alpha in DEFAULT_ALPHA_GRID {
            let t = criterion_trace(&s, alpha, CriterionKind::Finite, 24).unwrap();
            assert_ne!(t.verdict, Verdict::BoundedSoFar, "alpha = {alpha}");
        }
    }

    #[test]
    fn example_four_bounds_nothing() {
        let s = spec("ex4");
        for alpha in DEFAULT_ALPHA_GRID {
            for kind in [CriterionKind::Finite, CriterionKind::Repetitive] {
                let t = criterion_trace(&s, alpha, kind, 24).unwrap();
                assert_ne!(t.verdict, Verdict::BoundedSoFar, "alpha = {alpha}");
            }
        }
    }

    #[test]
    fn estimates_approach_the_family_exponents() {
        let e = exponent_estimate(&spec("const:1"), CriterionKind::Finite, 20).unwrap();
        assert!((e.last - 1.05).abs() < 1e-12);
        assert_eq!(e.values[0], 2.0);

        let e = exponent_estimate(&spec("geom:2"), CriterionKind::Finite, 20).unwrap();
        assert!((e.last - 2.0).abs() < 0.05);

        let e = exponent_estimate(&spec("geom:2"), CriterionKind::Repetitive, 20).unwrap();
        assert!((e.last - 4.0).abs() < 0.05);
    }

    #[test]
    fn square_relation_across_families() {
        let grid = DEFAULT_ALPHA_GRID;
        let report = square_relation_check(&spec("const:1"), 20, &grid, 0.05).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);

        let report = square_relation_check(&spec("geom:2"), 20, &grid, 0.05).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);

        let report = square_relation_check(&spec("poly:1,0"), 20, &grid, 0.05).unwrap();
        assert_eq!(report.status, CheckStatus::Pass);
        assert!(report.detail.contains("divergence"));
    }
}
