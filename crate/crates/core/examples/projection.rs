//! Finds every terminal set for which linking some terminal to the middle
//! of B fails while the others escape to A.

use gridlink::grid::{adjusted_quadrant, AdjustedKind};
use gridlink::lemmas::exceptional_sets;

fn main() {
    let q0 = adjusted_quadrant(AdjustedKind::Q0);
    for (t, working) in exceptional_sets(&q0).unwrap() {
        println!("exceptional {t:?}: only {working:?} can take the link");
    }
}
