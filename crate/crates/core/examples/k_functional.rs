//! K-functionals, K-method norms and Calderon-Lozanovskii norms.

use kszlab::interp::{cl_orlicz_norm, k_functional_l1_l2, k_functional_weighted_linf, k_method_norm, KProfile, QFunction};
use kszlab::norms::{to_complex, weak_norm};

fn main() -> kszlab::Result<()> {
    let x = to_complex(&[3.0, 1.0, 0.5, 0.25]);
    println!("K(t, x; l1, l2) for x = (3, 1, 0.5, 0.25)");
    for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
        println!("  t = {t:>4}: {:.6}", k_functional_l1_l2(t, &x)?);
    }

    let xi: Vec<_> = to_complex(&(1..=64).map(|k| 1.0 / (k as f64).sqrt()).collect::<Vec<_>>());
    let profile = KProfile::new(&xi, -8, 8)?;
    println!(
        "weighted l_inf profile on k = -8..8: nondecreasing {}, concave {}",
        profile.is_nondecreasing(1e-12),
        profile.is_concave(1e-12)
    );
    println!("K(1, 1; xi) = {:.6}", k_functional_weighted_linf(1.0, 1.0, &xi, 0)?);

    // psi(s, t) = s^{1/2} t^{1/2} identifies a weak-type space up to constants
    let psi = QFunction::power(0.5)?;
    let k = k_method_norm(&xi, &psi, 8)?;
    let weak = weak_norm(&xi, 2.0)?;
    println!("K-method norm {k:.4}, weak l2 norm {weak:.4}, ratio {:.4}", k / weak);

    // phi(s, t) = s^{1/2} t^{1/2} turns into the l_{4/3} norm
    let cl = cl_orlicz_norm(&to_complex(&[3.0, 4.0]), &QFunction::power(0.5)?)?;
    let l43 = (3f64.powf(4.0 / 3.0) + 4f64.powf(4.0 / 3.0)).powf(0.75);
    println!("CL norm of (3, 4) with phi = sqrt(st): {cl:.6} (l_4/3 norm {l43:.6})");
    Ok(())
}
