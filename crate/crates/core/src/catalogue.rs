//! The known Barker sequences normalised to `A(1) = A(2) = +1`.

use crate::seqcore::BinarySequence;

/// `(name, text)` for every known canonical Barker sequence, ordered by
/// length and then lexicographically.
pub const CANONICAL: [(&str, &str); 8] = [
    ("A2", "++"),
    ("A3", "++-"),
    ("A4", "+++-"),
    ("A4'", "++-+"),
    ("A5", "+++-+"),
    ("A7", "+++--+-"),
    ("A11", "+++---+--+-"),
    ("A13", "+++++--++-+-+"),
];

/// The odd-length members.
pub const ODD: [&str; 5] = ["A3", "A5", "A7", "A11", "A13"];

pub fn by_name(name: &str) -> Option<BinarySequence> {
    CANONICAL
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| BinarySequence::parse(s).expect("catalogue entry"))
}

/// Canonical Barker sequences of length `n` known from the catalogue.
pub fn of_length(n: usize) -> Vec<BinarySequence> {
    CANONICAL
        .iter()
        .filter(|(_, s)| s.len() == n)
        .map(|(_, s)| BinarySequence::parse(s).expect("catalogue entry"))
        .collect()
}

pub fn all() -> Vec<(&'static str, BinarySequence)> {
    CANONICAL
        .iter()
        .map(|(n, s)| (*n, BinarySequence::parse(s).expect("catalogue entry")))
        .collect()
}

pub fn a2() -> BinarySequence {
    by_name("A2").unwrap()
}
pub fn a3() -> BinarySequence {
    by_name("A3").unwrap()
}
pub fn a4() -> BinarySequence {
    by_name("A4").unwrap()
}
pub fn a4_prime() -> BinarySequence {
    by_name("A4'").unwrap()
}
pub fn a5() -> BinarySequence {
    by_name("A5").unwrap()
}
pub fn a7() -> BinarySequence {
    by_name("A7").unwrap()
}
pub fn a11() -> BinarySequence {
    by_name("A11").unwrap()
}
pub fn a13() -> BinarySequence {
    by_name("A13").unwrap()
}
