//! Bundled fixtures and their headline invariants, recomputed from scratch.

use gauduchon::fixtures::{catalog, render_catalog};

fn main() {
    print!("{}", render_catalog(&catalog(1e-9)));
}
