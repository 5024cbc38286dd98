//! The 4×4 linear system in `(A, B, C, <∂|η|², η̄>)`: entries, determinant, singular set.

use gauduchon::check::render_table;
use gauduchon::scalar::rational;
use gauduchon::system::{determinant, format_roots, reduced_rank, singular_set, system_matrix, verify_system, Tamper};

fn main() {
    let m = system_matrix();
    for (i, row) in m.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        println!("row {}: [{}]", i + 1, cells.join(" | "));
    }
    let det = determinant();
    println!("\ndet = {det}");
    match singular_set() {
        Ok(roots) => println!("roots: {}", format_roots(&roots)),
        Err(rest) => println!("irreducible remainder: {rest}"),
    }
    for s in [rational(2, 3), rational(4, 5)] {
        println!("reduced rank at {}: {}", gauduchon::scalar::format_rational(&s), reduced_rank(&s).rank);
    }
    println!();
    print!("{}", render_table(&verify_system(&Tamper::NONE)));
}
