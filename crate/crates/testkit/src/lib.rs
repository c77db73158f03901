//! Random instances and brute-force oracles shared by the test suites. The
//! oracles use determinantal divisors and fraction-free elimination, never the
//! Smith normal form of the library under test.

pub mod oracle;
pub mod random;
