//! The cyclotomic model of A_inf: mu, xi, xi~, Frobenius, theta and the notation identities.
//!
//! cargo run --example ainf_notation

use aomega::arith::{q_analog, LaurentElement, RationalExponent};
use aomega::witt_ainf::{check_notation_identities, AinfModel};

fn main() -> aomega::Result<()> {
    let model = AinfModel::new(3, 2)?;
    println!("p = 3, depth 2: q = u^{}", model.q_exponent());
    println!("mu          = {}", model.mu());
    println!("phi^-1 mu   = {}", model.phi_inverse_mu());
    println!("xi          = {}", model.xi());
    println!("xi~ = [p]_q = {}", model.xi_tilde());
    println!("phi(xi)     = {}", model.phi(&model.xi()));
    println!("theta(xi)   = {}", model.theta(&model.xi()));
    println!("theta~(xi~) = {}", model.theta_tilde(&model.xi_tilde())?);
    let five = q_analog(&RationalExponent::integer(5, 3), &model)?;
    println!("[5]_q       = {five}");
    println!("theta([5]_q) = {}", model.theta(&five));
    println!("[5]_q is a unit: {}", model.is_completed_unit(&five));
    println!(
        "xi | mu: {}",
        model.completed_divides(&model.xi(), &model.mu())
    );
    println!(
        "mu | xi: {}",
        model.completed_divides(&model.mu(), &model.xi())
    );
    let profile = model.cyclotomic_profile(&LaurentElement::constant(2, 3).mul(&model.mu())?);
    println!("cyclotomic profile of 3 mu: {:?}", profile.0);

    println!();
    let report = check_notation_identities(&model, 50, 1);
    for c in &report.checks {
        println!(
            "{:<6} {:>5} cases  {}",
            if c.passed { "ok" } else { "FAIL" },
            c.cases,
            c.identity
        );
    }
    Ok(())
}
