//! Word generation: level words, prefixes of the generating word, the block
//! structure of the substitution stream, and derived (suffix) sequences.
//!
//! ```bash
//! cargo run -p grig --release --example generate_words
//! ```

use grig::{block_decompose, derived_spec, filler_letter, kappa, LSpec, Session, Word};

fn main() -> grig::Result<()> {
    for text in ["const:1", "const:2", "geom:2", "ex4"] {
        let spec: LSpec = text.parse()?;
        let mut session = Session::new(spec.clone());

        let fillers: String = (0..12)
            .map(|j| filler_letter(&spec, j).map(|l| l.as_char()))
            .collect::<grig::Result<_>>()?;
        println!("{text}");
        println!("  filler stream  {fillers}...");
        for j in 0..=3 {
            let w = Word::from(session.level_word(j)?);
            println!("  w_{j}            {w}");
        }
        println!("  eta            {}...", session.eta_prefix_word(40)?);

        let pos = block_decompose(&spec, 9)?;
        println!(
            "  substitution 10 sits in block {} at offset {}",
            pos.block, pos.offset
        );
        println!();
    }

    // The constant-one word is the fixed point of a ↦ axa, x ↦ y, y ↦ z, z ↦ x.
    let mut classical = Session::new("const:1".parse()?);
    let prefix = classical.eta_prefix_word(31)?;
    println!("kappa(w)[..31] = {}", Word::from(&kappa(&prefix)[..31]));
    println!("w[..31]        = {prefix}");
    println!();

    // Cutting j substitutions off the front of the stream leaves another
    // sequence of the same kind; its image under those j substitutions
    // reproduces the original word.
    let spec: LSpec = "const:1".parse()?;
    for j in [1u64, 2, 3] {
        let derived = derived_spec(&spec, j)?;
        let mut derived_session = Session::new(derived.clone());
        let head = derived_session.eta_prefix_word(12)?;
        let image = grig::tau_image(&spec, j, &head)?;
        println!("derived at j={j}: {derived}");
        println!("  starts {head}, tau^({j}) image prefixes eta: {}", {
            let original = classical.eta_prefix_word(image.len())?;
            image == original
        });
    }
    Ok(())
}
