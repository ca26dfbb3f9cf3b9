//! Frames two terminals on one of the central cycles and mates a third
//! onto the other cycle.

use gridlink::grid::{v, Corner, Quadrant};
use gridlink::lemmas::{build_frame, frame_two_mate_third};

fn main() {
    let q = Quadrant::standard(Corner::UpperLeft);
    for alpha in [0, 1] {
        let f = build_frame(&q, v(1, 1), v(2, 3), alpha).unwrap();
        println!(
            "frame on {:?} anchored at {}: {:?} (avoids cycles: {})",
            f.cycle,
            f.anchor,
            f.mating_paths,
            f.avoids_cycles()
        );
    }
    let (fm, alpha) = frame_two_mate_third(&q, v(1, 1), v(1, 3), v(3, 1)).unwrap();
    println!(
        "alpha = {alpha}, mate path for terminal {}: {:?}",
        fm.mated, fm.mate_path
    );
    println!("checker: {:?}", fm.certificate.check());
}
