//! Per-s report for a model file, as text and as JSON.
//!
//! `cargo run --example model_report -- path/to/model.json` (defaults to the Iwasawa fixture).

use gauduchon::fixtures::sweep_grid;
use gauduchon::report::{build_report, load_model, load_model_text};

fn main() {
    let loaded = match std::env::args().nth(1) {
        Some(path) => load_model(path.as_ref()),
        None => load_model_text(include_str!("../fixtures/iwasawa.json"), "iwasawa.json"),
    };
    let loaded = loaded.unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(1);
    });
    let doc = build_report(&loaded, &sweep_grid(), 1e-9);
    print!("{}", doc.to_text());
    println!("\n{}", doc.to_json());
}
