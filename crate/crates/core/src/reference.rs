//! Published length-42 Jacobi polynomials at the two triple-orbit
//! representatives {0, 1, inf} and {0, 6, inf}, as (m1, n1, coeff) with m1
//! the exponent of z and n1 the exponent of y.

use crate::code::Label;
use crate::enumerators::{JacobiJson, JacobiPolynomial, JacobiTerm};

pub const JACOBI_42_FIRST: [(usize, usize, u64); 50] = [
    (0, 0, 1),
    (0, 10, 744),
    (0, 12, 3756),
    (0, 14, 14211),
    (0, 16, 35703),
    (0, 18, 60172),
    (0, 20, 65436),
    (0, 22, 48330),
    (0, 24, 24318),
    (0, 26, 7668),
    (0, 28, 1584),
    (0, 30, 203),
    (0, 32, 18),
    (1, 9, 744),
    (1, 11, 4827),
    (1, 13, 22977),
    (1, 15, 71316),
    (1, 17, 147924),
    (1, 19, 195930),
    (1, 21, 177630),
    (1, 23, 109116),
    (1, 25, 42876),
    (1, 27, 11043),
    (1, 29, 1833),
    (1, 31, 216),
    (2, 8, 216),
    (2, 10, 1833),
    (2, 12, 11043),
    (2, 14, 42876),
    (2, 16, 109116),
    (2, 18, 177630),
    (2, 20, 195930),
    (2, 22, 147924),
    (2, 24, 71316),
    (2, 26, 22977),
    (2, 28, 4827),
    (2, 30, 744),
    (3, 7, 18),
    (3, 9, 203),
    (3, 11, 1584),
    (3, 13, 7668),
    (3, 15, 24318),
    (3, 17, 48330),
    (3, 19, 65436),
    (3, 21, 60172),
    (3, 23, 35703),
    (3, 25, 14211),
    (3, 27, 3756),
    (3, 29, 744),
    (3, 39, 1),
];

pub const JACOBI_42_SECOND: [(usize, usize, u64); 50] = [
    (0, 0, 1),
    (0, 10, 744),
    (0, 12, 3755),
    (0, 14, 14220),
    (0, 16, 35667),
    (0, 18, 60256),
    (0, 20, 65310),
    (0, 22, 48456),
    (0, 24, 24234),
    (0, 26, 7704),
    (0, 28, 1575),
    (0, 30, 204),
    (0, 32, 18),
    (1, 9, 744),
    (1, 11, 4830),
    (1, 13, 22950),
    (1, 15, 71424),
    (1, 17, 147672),
    (1, 19, 196308),
    (1, 21, 177252),
    (1, 23, 109368),
    (1, 25, 42768),
    (1, 27, 11070),
    (1, 29, 1830),
    (1, 31, 216),
    (2, 8, 216),
    (2, 10, 1830),
    (2, 12, 11070),
    (2, 14, 42768),
    (2, 16, 109368),
    (2, 18, 177252),
    (2, 20, 196308),
    (2, 22, 147672),
    (2, 24, 71424),
    (2, 26, 22950),
    (2, 28, 4830),
    (2, 30, 744),
    (3, 7, 18),
    (3, 9, 204),
    (3, 11, 1575),
    (3, 13, 7704),
    (3, 15, 24234),
    (3, 17, 48456),
    (3, 19, 65310),
    (3, 21, 60256),
    (3, 23, 35667),
    (3, 25, 14220),
    (3, 27, 3755),
    (3, 29, 744),
    (3, 39, 1),
];

/// The published table for {0, 1, inf} (`first`) or {0, 6, inf}.
pub fn reference_jacobi_42(first: bool) -> JacobiPolynomial {
    let (table, c) = if first {
        (&JACOBI_42_FIRST, 1)
    } else {
        (&JACOBI_42_SECOND, 6)
    };
    let terms = table
        .iter()
        .map(|&(m1, n1, coeff)| JacobiTerm {
            m0: 3 - m1,
            m1,
            n0: 39 - n1,
            n1,
            coeff,
        })
        .collect();
    let json = JacobiJson {
        n: 42,
        t: 3,
        set: vec![Label::Finite(0), Label::Finite(c), Label::Infinity],
        terms,
    };
    JacobiPolynomial::from_json(&json).expect("reference table is well formed")
}
