//! `L eta_f` on small complexes over Z, with the Bockstein complex and the Koszul rule.
//!
//! cargo run --example decalage

use num_bigint::BigInt;

use aomega::arith::RationalExponent;
use aomega::complexes::{
    homology_snf, HomologyPresentation, IntComplex, Integers, KoszulSummand, ModuleStructure,
};
use aomega::decalage::{bockstein, eta_subcomplex, leta_homology_formula, leta_koszul, LetaKoszul};

fn show(h: &HomologyPresentation<ModuleStructure>) -> String {
    let parts: Vec<String> = h
        .degrees
        .iter()
        .enumerate()
        .map(|(i, m)| format!("H^{} = {m}", h.lo + i as i32))
        .collect();
    parts.join(", ")
}

fn main() -> aomega::Result<()> {
    let three = BigInt::from(3);
    for (label, c) in [("Z/3", 3), ("Z/9", 9)] {
        let k = IntComplex::from_i64(0, vec![1, 1], &[&[c]])?;
        println!(
            "L eta_3 of {label}: {}",
            show(&eta_subcomplex(&k, &three)?.homology())
        );
    }

    let k = IntComplex::from_i64(0, vec![1, 2, 1], &[&[4, 12], &[6, -2]])?;
    let f = BigInt::from(2);
    let h = homology_snf(&k);
    println!("\nK = Z --(4,12)--> Z^2 --(6 -2)--> Z");
    println!("H(K)           : {}", show(&h));
    println!(
        "H(L eta_2 K)   : {}",
        show(&eta_subcomplex(&k, &f)?.homology())
    );
    println!("H(K) / H(K)[2] : {}", show(&leta_homology_formula(&h, &f)));
    let b = bockstein(&k, &f)?;
    println!(
        "Bockstein complex H^*(K/2): beta^2 = 0 is {}",
        b.check_beta_squared()
    );
    println!("H(Bockstein)   : {}", show(&b.homology()));

    println!();
    for g in [[6, 4], [2, 5], [3, 5]] {
        let elems: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
        let grading = vec![RationalExponent::integer(0, 2); 2];
        let s = KoszulSummand::new(Integers, elems, grading, 0);
        let out = match leta_koszul(&s, &f) {
            LetaKoszul::Koszul(t) => format!(
                "K({})",
                t.elements
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            other => other.label().to_string(),
        };
        println!("L eta_2 K({}, {}) = {out}", g[0], g[1]);
    }
    Ok(())
}
