//! On the Hopf surface the Bismut connection is flat, hence Kähler-like, so the
//! structural identities hold with derivatives read off the connection itself.
//! Away from `s = 2` the same checks break.

use gauduchon::check::render_table;
use gauduchon::fixtures::find;
use gauduchon::formal::fixture_checks;
use gauduchon::scalar::rational;

fn main() {
    let hopf = find("hopf").expect("bundled").load();
    for s in [rational(2, 1), rational(1, 3)] {
        println!("s = {}", gauduchon::scalar::format_rational(&s));
        print!("{}", render_table(&fixture_checks(&hopf.model, &s, 1e-10)));
        println!();
    }
}
