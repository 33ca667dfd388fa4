//! Standard-library companion of `dpholo-core`: JSON formats, seeded random
//! generators, the verification suites and the command-line front end.

pub mod cli;
pub mod json;
pub mod random;
pub mod suites;
