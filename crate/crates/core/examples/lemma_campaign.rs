//! Runs a reduced campaign and prints the report.

use gridlink::verifier::{verify_lemma, LemmaId, Strategy};

fn main() {
    let id: LemmaId = std::env::args().nth(1).as_deref().unwrap_or("L5").parse().unwrap();
    let report = verify_lemma(id, Strategy::Reduced, 2);
    print!("{}", report.render());
}
