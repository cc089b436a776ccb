//! Frobenius-semilinear modules over F_{p^m}: the F_p-dimension of the fixed points,
//! checked against exhaustive search.
//!
//! cargo run --example frobenius_fixed_points

use aomega::witt_ainf::{GaloisField, SemilinearModule};

fn main() -> aomega::Result<()> {
    let k = GaloisField::new(3, 2)?;
    let g = k.generator();
    let cases = [
        (
            "identity",
            vec![vec![k.one(), k.zero()], vec![k.zero(), k.one()]],
        ),
        (
            "diag(g, 1)",
            vec![vec![g.clone(), k.zero()], vec![k.zero(), k.one()]],
        ),
        (
            "swap",
            vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]],
        ),
        (
            "[[g, 1], [0, g^2]]",
            vec![vec![g.clone(), k.one()], vec![k.zero(), k.pow(&g, 2)]],
        ),
    ];
    for (label, matrix) in cases {
        let m = SemilinearModule::new(k.clone(), matrix)?;
        let fp = m.frobenius_fixed_points();
        println!(
            "F_9^2 with phi = {label:<20} dim_F3 = {}  status {:?}  exhaustive count {}",
            fp.dimension,
            fp.status,
            m.count_fixed_points_exhaustive()
        );
    }
    Ok(())
}
