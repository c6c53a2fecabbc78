//! Order metrics: maximal powers Q(n), the repetitive function R(n) with its
//! dyadic brackets, the repulsiveness statistic A_{alpha,n}, and finite-scale
//! partials of the exponent quantities.
//!
//! ```bash
//! cargo run -p grig --release --example powers_and_repetition
//! ```

use grig::metrics::{
    exponent_partials, max_power, repetitive, repetitive_bounds, repulsiveness, word_power,
    ExponentKind, PowerOutcome, PARTIAL_LABEL,
};
use grig::{LSpec, Session, Word};

fn main() -> grig::Result<()> {
    let spec: LSpec = "const:1".parse()?;
    let mut session = Session::new(spec.clone());

    println!("n, Q(n), R(n), n*Q(n) (R always exceeds it):");
    for n in 1..=8usize {
        let q = max_power(&mut session, n)?.value();
        let r = repetitive(&mut session, n)?;
        println!("  {n}  {q}  {r:>3}  {}", n as u64 * q);
    }
    println!();

    println!("dyadic brackets for R(2^(j+1)-1):");
    for j in 0..=3u64 {
        let n = (1usize << (j + 1)) - 1;
        let (lower, upper) = repetitive_bounds(&spec, j)?;
        let r = repetitive(&mut session, n)?;
        println!(
            "  j={j}: stated [{lower}, {upper}], exact R({n}) = {r}{}",
            if r > upper { "  <- exceeds the stated bound" } else { "" }
        );
    }
    println!();

    for probe in ["ax", "axay", "axa"] {
        let word: Word = probe.parse()?;
        match word_power(&mut session, &word)? {
            PowerOutcome::Exact(p) => println!("Q({probe}) = {p}"),
            PowerOutcome::CapReached(p) => println!("Q({probe}) >= {p} (cap reached)"),
        }
    }
    println!();

    println!("A_(1,n) over bordered factors (inf when nothing is bordered):");
    for n in 2..=10usize {
        println!("  n={n:<3} {}", repulsiveness(&mut session, 1.0, n)?);
    }
    println!();

    let partial = exponent_partials(&mut session, 1.0, ExponentKind::MaxPower, 1, 32)?;
    println!("Q partial at alpha = 1 over n <= 32 ({PARTIAL_LABEL}):");
    println!("  running sup of Q(n)/n^0 = {}", partial.running_sup);
    if let Some(closed) = partial.closed_terms {
        let terms: Vec<String> = closed.iter().map(|(m, v)| format!("m={m}:{v}")).collect();
        println!("  closed-form block terms: {}", terms.join(" "));
    }

    let ell = exponent_partials(&mut session, 1.0, ExponentKind::Repulsive, 2, 64)?;
    println!("ell partial at alpha = 1 over n <= 64: tail min = {:.6}", ell.tail_min);
    Ok(())
}
