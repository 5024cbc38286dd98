//! The locally conformally Kähler torsion family and its contractions.

use gauduchon::formal::{lck_torsion, ContractionValues};
use gauduchon::scalar::{format_gauss, gauss, rational};

fn main() {
    let a = [gauss(rational(1, 1), rational(0, 1)), gauss(rational(0, 1), rational(1, 1)), gauss(rational(0, 1), rational(0, 1))];
    let p = lck_torsion(&a).expect("n >= 2");
    let show = |v: &[_]| v.iter().map(format_gauss).collect::<Vec<_>>().join(", ");
    println!("η = ({})", show(&p.eta()));
    println!("cyclic residual zero: {}", p.cyclic_residual() == 0.0);
    let cv = ContractionValues::compute(3, p.torsion());
    println!("A = {}, Ã = {}, B = {}, C = {}", format_gauss(&cv.scalar_a), format_gauss(&cv.scalar_a_tilde), format_gauss(&cv.scalar_b), format_gauss(&cv.scalar_c));
    println!("|T|² = {}, |η|² = {}", format_gauss(&cv.norm_t), format_gauss(&cv.norm_eta));
    println!("X/Y/Z traces: ({})", show(&cv.xyz_traces()));
}
