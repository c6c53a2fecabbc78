//! Sequence classification: the boundedness criteria for alpha-finite /
//! alpha-repulsive and alpha-repetitive behaviour, exponent estimates, and
//! the square relation between the two exponents.
//!
//! ```bash
//! cargo run -p grig --release --example classify_families
//! ```

use grig::classifier::{
    criterion_trace, exponent_estimate, square_relation_check, CriterionKind, DEFAULT_ALPHA_GRID,
    DEFAULT_SQUARE_TOL,
};
use grig::LSpec;

fn main() -> grig::Result<()> {
    let depth = 20;
    for text in ["const:1", "geom:2", "geom:3", "ex3", "ex4", "poly:1,0"] {
        let spec: LSpec = text.parse()?;
        println!("{text}");
        for kind in [CriterionKind::Finite, CriterionKind::Repetitive] {
            for alpha in DEFAULT_ALPHA_GRID {
                let trace = criterion_trace(&spec, alpha, kind, depth)?;
                println!(
                    "  {:<10} alpha {:<4} sup|term| {:<12} {}",
                    kind.label(),
                    alpha,
                    trace.sup_abs,
                    trace.verdict.label()
                );
            }
        }
        if spec.is_strict() {
            for kind in [CriterionKind::Finite, CriterionKind::Repetitive] {
                let est = exponent_estimate(&spec, kind, depth)?;
                println!(
                    "  estimated {} exponent {:.4} (drift {:.4})",
                    kind.label(),
                    est.last,
                    est.drift
                );
            }
        }
        let square = square_relation_check(&spec, depth, &DEFAULT_ALPHA_GRID, DEFAULT_SQUARE_TOL)?;
        println!("  square relation: {} {}", square.status.label(), square.detail);
        println!();
    }
    Ok(())
}
