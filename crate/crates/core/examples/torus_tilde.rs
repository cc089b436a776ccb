//! The graded cohomology of the perfectoid torus over O_C and its decalage by zeta_p - 1.
//!
//! cargo run --example torus_tilde

use aomega::torus::{tilde_omega_torus, GradingBox};

fn main() -> aomega::Result<()> {
    let b = GradingBox::new(3, 2, 1, 1)?;
    let r = tilde_omega_torus(&b)?;
    println!(
        "p = 3, d = 2, depth 1, B = 1: {} cells, {} killed, passed {}",
        r.total_cells, r.killed_cells, r.passed
    );
    println!("free ranks by degree: {:?}", r.free_rank_table);
    println!("twist tags: {:?}", r.cells.first().map(|c| &c.twists));
    for c in r.cells.iter().take(4) {
        let h: Vec<String> = c
            .homology
            .iter()
            .map(|m| format!("rank {} {:?}", m.free_rank, m.quotients))
            .collect();
        println!("  grading {:?}: {}", c.grading, h.join(" | "));
    }
    let big = GradingBox::new(5, 3, 2, 4)?;
    let r = tilde_omega_torus(&big)?;
    println!(
        "\np = 5, d = 3, depth 2, B = 4: {} cells, passed {}",
        r.total_cells, r.passed
    );
    Ok(())
}
