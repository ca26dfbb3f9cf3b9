//! Writes an instance and its certificate in the text formats and parses
//! them back.

use gridlink::format::{parse_certificate, parse_instance, write_certificate, write_instance, CertificateFile};
use gridlink::routing::solve;

const INSTANCE: &str = "\
grid 3 3
remove_vertex (2,2)      # a hole in the middle
contract (3,3) (3,2)
demand pair (1,1) (3,2)
demand escape (1,3) -> {(2,1), (2,3)} [group 0]
";

fn main() {
    let inst = parse_instance(INSTANCE).unwrap();
    let text = write_instance(&inst);
    print!("{text}");
    assert_eq!(parse_instance(&text).unwrap(), inst);

    let cert = match solve(&inst).unwrap().into_paths() {
        Some(p) => CertificateFile::Paths(p),
        None => CertificateFile::Infeasible,
    };
    let text = write_certificate(&cert);
    print!("{text}");
    assert_eq!(parse_certificate(&text).unwrap(), cert);

    println!("{}", parse_instance("grid 2 2\ndemand pair (1,1) (4,4)\n").unwrap_err());
}
