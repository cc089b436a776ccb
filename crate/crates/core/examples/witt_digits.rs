//! Truncated Witt vectors of F_p[x^{1/p^inf}]: Teichmuller lifts, digits and Frobenius.
//!
//! cargo run --example witt_digits

use aomega::arith::RationalExponent;
use aomega::witt_ainf::{
    digits_to_witt, teichmuller_digits, teichmuller_lift, PerfectionElement, TruncatedWittElement,
};

fn main() {
    let (p, m) = (3, 3);
    let x = |num, den_pow| RationalExponent::new(num, den_pow, p);
    let a = PerfectionElement::from_terms(p, [(x(1, 0), 1), (x(1, 1), 2)]);
    let lift = teichmuller_lift(&a, m);
    println!("a        = {a}");
    println!("[a]      = {lift}");
    println!(
        "phi([a]) = [a^p]: {}",
        lift.frobenius() == teichmuller_lift(&a.pow(p as u32), m)
    );

    let w = TruncatedWittElement::constant(p, m, 14);
    let digits = teichmuller_digits(&w);
    println!(
        "\n14 in W_{m}(F_{p}) has digits {:?}",
        digits.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    println!(
        "sum [a_i] p^i recovers it: {}",
        digits_to_witt(&digits, m) == w
    );

    let w = lift.add(&TruncatedWittElement::constant(p, m, 5));
    let digits = teichmuller_digits(&w);
    println!("\n[a] + 5 has digits:");
    for (i, d) in digits.iter().enumerate() {
        println!("  a_{i} = {d}");
    }
    println!("round trip: {}", digits_to_witt(&digits, m) == w);
    println!(
        "\nas JSON: {}",
        serde_json::to_string(&w.to_json()).unwrap()
    );
}
