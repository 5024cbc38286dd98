//! Model validation: a good file, a non-integrable J, and a forbidden (0,2) term.

use gauduchon::report::{load_model_text, ReportError};

fn main() {
    let cases = [
        ("torus2.json", include_str!("../fixtures/torus2.json")),
        ("hopf_sheared_j.json", include_str!("../tests/data/hopf_sheared_j.json")),
        ("iwasawa_02_term.json", include_str!("../tests/data/iwasawa_02_term.json")),
        ("not_json.json", include_str!("../tests/data/not_json.json")),
    ];
    for (name, text) in cases {
        match load_model_text(text, name) {
            Ok(m) => println!("{name}: valid, n = {}, kähler = {}", m.model.n(), m.model.is_kahler()),
            Err(ReportError::Invalid(v)) => {
                println!("{name}: invalid");
                for e in &v.0 {
                    println!("  [{}] {e}", e.check_name());
                }
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
