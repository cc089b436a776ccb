//! A Omega of the torus by iterated decalage, and its Hodge-Tate, de Rham and etale specializations.
//!
//! cargo run --example torus_ainf

use aomega::torus::{
    ainf_omega_torus, etale_rank_torus, specialize_de_rham, specialize_hodge_tate, GradingBox,
};

fn main() -> aomega::Result<()> {
    let b = GradingBox::new(2, 2, 1, 2)?;
    let a = ainf_omega_torus(&b)?;
    println!(
        "A Omega: {} cells, {} survive, passed {}",
        a.total_cells,
        a.cells.len(),
        a.passed
    );
    for grading in [["0", "0"], ["1", "0"], ["2", "-1"]] {
        if let Some(c) = a.cell(&grading) {
            println!("  {grading:?}: K({})", c.elements.join(", "));
        }
    }
    let ht = specialize_hodge_tate(&a)?;
    println!(
        "Hodge-Tate: passed {}, free ranks {:?}",
        ht.passed, ht.free_rank_table
    );
    let dr = specialize_de_rham(&a)?;
    println!(
        "de Rham: passed {}, free ranks {:?}, torsion {:?}",
        dr.passed, dr.free_rank_table, dr.torsion_table
    );
    for grading in [["0", "0"], ["2", "0"], ["2", "-2"]] {
        if let Some(c) = dr.cell(&grading) {
            let h: Vec<String> = c
                .homology
                .iter()
                .map(|m| format!("{} {:?}", m.free_rank, m.quotients))
                .collect();
            println!("  {grading:?}: {}", h.join(" | "));
        }
    }
    let et = etale_rank_torus(&a)?;
    println!("etale ranks over Q(u): {:?}", et.free_rank_table);
    Ok(())
}
