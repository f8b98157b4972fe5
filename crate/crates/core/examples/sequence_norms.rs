//! The sequence norms that appear on the right of the KSZ inequalities.

use kszlab::norms::{
    harmonic_number, l_hn_norm, lp_norm, marcinkiewicz_norm, orlicz_seq_norm, s_norm, to_complex, weak_norm,
    WeightSequence,
};

fn main() -> kszlab::Result<()> {
    let n = 1000;
    let harmonic: Vec<f64> = (1..=n).map(|k| 1.0 / k as f64).collect();
    let flat = vec![1.0; n];

    for (name, x) in [("1/k", to_complex(&harmonic)), ("ones", to_complex(&flat))] {
        println!("x = {name}, length {n}");
        println!("  l2            {:.4}", lp_norm(&x, 2.0)?);
        println!("  weak l2       {:.4}", weak_norm(&x, 2.0)?);
        println!("  weak l4       {:.4}", weak_norm(&x, 4.0)?);
        for r in [2.0, 3.0, 4.0] {
            println!("  S_r' (r = {r})  {:.4}", s_norm(&x, r)?);
        }
        let w = WeightSequence::from_psi(|t| t.sqrt(), n)?;
        println!("  Marcinkiewicz {:.4}", marcinkiewicz_norm(&x, &w)?);
        // Young function e^{u^2} - 1, given through its inverse
        let exp2 = orlicz_seq_norm(&x, &|u: f64| u.ln_1p().sqrt())?;
        println!("  Orlicz exp(u^2) - 1   {exp2:.4}");
    }

    let xi = to_complex(&[1.0, 0.5, 0.25, 0.125]);
    println!("h_4 = {:.4}, ||xi||_(l_h) = {:.4}", harmonic_number(4)?, l_hn_norm(&xi)?);
    Ok(())
}
