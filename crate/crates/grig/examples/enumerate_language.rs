//! Exact language enumeration: covering words, factor tables with right
//! extensions, complexity, right-special factors and recurrence gaps.
//!
//! ```bash
//! cargo run -p grig --release --example enumerate_language
//! ```

use grig::metrics::complexity;
use grig::{LSpec, Session, Word};

fn main() -> grig::Result<()> {
    let spec: LSpec = "const:1".parse()?;
    let mut session = Session::new(spec);

    println!("covering words for length 3:");
    for w in session.covering_words(3)? {
        println!("  {w}");
    }
    println!();

    println!("factors of length 4 with right extensions:");
    for (word, ext) in session.factors(4)?.entries() {
        let letters: String = ext.letters().map(|l| l.as_char()).collect();
        println!("  {word} -> {letters}");
    }
    println!();

    println!("n, p(n), right-special words:");
    for n in 1..=12 {
        let p = complexity(&mut session, n)?;
        let special: Vec<String> = session
            .right_special_words(n)?
            .into_iter()
            .map(|(w, s)| format!("{w}({s})"))
            .collect();
        println!("  {n:>2}  {p:>3}  {}", special.join(" "));
    }
    println!();

    for probe in ["axax", "aa", "yay", "zaxayaxax"] {
        let word: Word = probe.parse()?;
        println!("is_factor({probe}) = {}", session.is_factor(&word)?);
    }
    println!();

    println!("maximal occurrence gaps in the first 2^14 letters:");
    for probe in ["a", "x", "z", "axa", "axazaxa"] {
        let word: Word = probe.parse()?;
        println!("  {probe:<8} {}", session.max_gap(&word, 1 << 14)?);
    }
    Ok(())
}
