//! Decides weak 2-linkage for strips, L-shapes and a short path.

use gridlink::routing::{is_weakly_2_linked, weak_2_linkage_counterexample};
use gridlink::verifier::GraphFamily;

fn main() {
    let mut families: Vec<GraphFamily> = (3..=6).map(GraphFamily::Strip).collect();
    families.extend((3..=6).map(GraphFamily::LShape));
    families.push(GraphFamily::Path(3));
    for f in families {
        let g = f.graph();
        println!(
            "{f:?}: weakly 2-linked = {} (counterexample {:?})",
            is_weakly_2_linked(&g),
            weak_2_linkage_counterexample(&g)
        );
    }
}
