//! The q-de Rham complex of the torus, its q = 1 limit, and the comparison with A Omega.
//!
//! cargo run --example q_de_rham

use aomega::arith::LaurentElement;
use aomega::qderham::{
    check_q_to_one, compare_with_torus_pipeline, q_de_rham_complex, q_de_rham_table,
    QLaurentFunction,
};

fn main() -> aomega::Result<()> {
    let (p, depth) = (3, 1);
    let t2 = QLaurentFunction::monomial(p, depth, vec![2], LaurentElement::constant(depth, 1));
    for (m, c) in t2.nabla_q(0).terms() {
        println!("nabla_q t^2 has coefficient {c} on t^{m:?}");
    }

    for row in q_de_rham_table(p, depth, 1, 3)? {
        let h: Vec<String> = row
            .homology
            .iter()
            .map(|m| format!("{} {:?}", m.free_rank, m.quotients))
            .collect();
        println!("t^{:?}: {}", row.monomial, h.join(" | "));
    }
    let q = q_de_rham_complex(p, depth, 2, 2)?;
    println!(
        "\nq = 1 reproduces de Rham on {} blocks: {}",
        q.blocks.len(),
        check_q_to_one(&q).is_empty()
    );
    let r = compare_with_torus_pipeline(p, depth, 2, 2)?;
    println!(
        "q-de Rham blocks equal A Omega summands on {} blocks: {}",
        r.blocks, r.passed
    );
    Ok(())
}
