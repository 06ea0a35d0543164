//! Holds the acceptance harness in `tests/acceptance.rs`; there is no library code.
//!
//! Kept as its own package so the harness runs after every suite of `stratkos`.
