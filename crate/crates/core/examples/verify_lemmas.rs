//! Runs the exact lemma suite on seeded samples of the torsion family.

use std::time::Instant;

use gauduchon::check::render_table;
use gauduchon::formal::verify_lemmas;
use gauduchon::system::Tamper;

fn main() {
    for n in 2..=4 {
        let start = Instant::now();
        let checks = verify_lemmas(n, 100, 0, &Tamper::NONE).expect("n >= 2");
        println!("n = {n} ({:.1?})", start.elapsed());
        print!("{}", render_table(&checks));
    }
}
