//! Shared fixtures for the benchmarks.

use adcode_core::concat::{concatenate, dual_rail};
use adcode_core::stabcode::get_code;
use adcode_core::StabilizerCode;

/// The `[[10,1]]` code from the five-qubit code and the dual rail.
pub fn ten_one() -> StabilizerCode {
    concatenate(&get_code("five_1_3").expect("built in"), &dual_rail()).expect("valid outer code")
}
