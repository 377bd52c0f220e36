//! The Kishino knot and its bundled slicing certificates.

use crate::certificate::Certificate;
use crate::code::parse_gauss;
use crate::gauss::GaussDiagram;

pub const GAUSS_RESOURCE: &str = include_str!("../resources/kishino.gauss");
pub const CERTIFICATE_RESOURCE: &str = include_str!("../resources/kishino.cert");
pub const DISK_CERTIFICATE_RESOURCE: &str = include_str!("../resources/kishino-disk.cert");

/// The Gauss code line of the bundled resource.
pub fn code() -> &'static str {
    GAUSS_RESOURCE
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .expect("kishino resource holds a code line")
}

pub fn diagram() -> GaussDiagram {
    parse_gauss(code()).expect("kishino resource parses")
}

/// One saddle, two R2 moves, one death: a concordance to the unknot.
pub fn certificate() -> Certificate {
    CERTIFICATE_RESOURCE
        .parse()
        .expect("kishino certificate parses")
}

/// The same slicing ending with both circles capped: a slice disk.
pub fn disk_certificate() -> Certificate {
    DISK_CERTIFICATE_RESOURCE
        .parse()
        .expect("kishino disk certificate parses")
}
