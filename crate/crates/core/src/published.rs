//! Printed reference values the computations are compared against.

/// `(group, order, rank, Occ)` as printed.
pub const OCC_TABLE: &[(&str, usize, usize, usize)] = &[
    ("Z2", 2, 1, 1),
    ("Z3", 3, 1, 1),
    ("Z4", 4, 1, 1),
    ("Z2xZ2", 4, 2, 3),
    ("Z5", 5, 1, 1),
    ("Z6", 6, 1, 1),
    ("S3", 6, 2, 4),
    ("Z7", 7, 1, 1),
    ("Z8", 8, 1, 1),
    ("Q8", 8, 2, 1),
    ("Z2xZ4", 8, 2, 3),
    ("D4", 8, 2, 5),
    ("Dic3", 12, 2, 2),
    ("Z2xZ6", 12, 2, 4),
    ("A4", 12, 2, 7),
    ("D6", 12, 2, 8),
];

/// Printed Occ cells known to disagree with the definition, with the value
/// the definition gives.
pub const OCC_DISCREPANCIES: &[(&str, usize)] = &[("Z6", 2)];

/// `(chi, radius)` rows of the printed D4 radius table, elements ordered
/// `e, r, r², r³, s, rs, r²s, r³s`. The pattern `10000100` is printed twice;
/// the vector `10001000` is absent.
pub const D4_RADIUS_TABLE: &[(&str, usize)] = &[
    ("11111111", 2),
    ("10000000", 5),
    ("10000100", 2),
    ("10000100", 2),
    ("10000010", 2),
    ("10000001", 2),
    ("10100000", 4),
    ("11110000", 2),
    ("10101010", 3),
    ("10100101", 3),
];

/// `F_0 ..= F_3` as printed; `None` marks a `?` cell. The prime row is
/// expanded to the primes in the catalog.
pub const FUSION_TABLE: &[(&str, [Option<u64>; 4])] = &[
    ("Z2", [Some(2), Some(2), Some(2), Some(2)]),
    ("Z3", [Some(2), Some(2), Some(2), Some(2)]),
    ("Z5", [Some(2), Some(2), Some(2), Some(2)]),
    ("Z7", [Some(2), Some(2), Some(2), Some(2)]),
    ("Z4", [Some(2), Some(4), Some(2), Some(4)]),
    ("Z2xZ2", [Some(4), Some(8), Some(2), None]),
    ("Z6", [Some(2), Some(4), Some(4), Some(8)]),
    ("S3", [Some(4), Some(16), Some(2), None]),
    ("Z8", [Some(2), Some(8), Some(2), Some(8)]),
    ("D4", [Some(4), Some(64), None, None]),
    ("Q8", [Some(4), Some(16), Some(2), None]),
    ("Z9", [Some(2), Some(4), Some(2), Some(4)]),
    ("Z3xZ3", [Some(4), Some(16), Some(2), None]),
    ("Z10", [Some(2), Some(4), Some(4), Some(8)]),
    ("Z12", [Some(2), Some(8), Some(4), None]),
    ("Z14", [Some(2), Some(4), Some(4), Some(8)]),
    ("Z16", [Some(2), Some(16), Some(2), None]),
];

pub fn printed_occ(spec: &str) -> Option<(usize, usize, usize)> {
    OCC_TABLE.iter().find(|r| r.0 == spec).map(|r| (r.1, r.2, r.3))
}

pub fn printed_fusion(spec: &str) -> Option<[Option<u64>; 4]> {
    FUSION_TABLE.iter().find(|r| r.0 == spec).map(|r| r.1)
}
