//! Generic rank against special-fibre dimension for complexes over F_p[u].
//!
//! cargo run --example semicontinuity

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use aomega::torus::{
    ainf_omega_torus, random_fp_poly_complex, semicontinuity_demo, torsion_jump_model,
    torus_semicontinuity, GradingBox,
};

fn main() -> aomega::Result<()> {
    let r = semicontinuity_demo(&torsion_jump_model(3));
    println!(
        "F_3[u] --u--> F_3[u]: generic {:?}, special {:?}, {:?}",
        r.generic_ranks, r.special_dims, r.verdict
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..4 {
        let k = random_fp_poly_complex(&mut rng, 2);
        let r = semicontinuity_demo(&k);
        println!(
            "random complex: generic {:?}, special {:?}, {:?}",
            r.generic_ranks, r.special_dims, r.verdict
        );
    }

    for d in 1..=3 {
        let a = ainf_omega_torus(&GradingBox::new(2, d, 1, 1)?)?;
        let r = torus_semicontinuity(&a);
        println!(
            "torus d = {d}: generic {:?}, special {:?}, {:?}",
            r.generic_ranks, r.special_dims, r.verdict
        );
    }
    Ok(())
}
