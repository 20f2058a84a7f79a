//! Shift/reset with answer-type modification, multi-prompt shift/reset, and
//! the prompt-passing translations from the former into the latter.
//!
//! The crate is `no_std` and only needs `alloc`. File access, the command
//! line and parallel sweeps live in the `promptpass` binary crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod harness;
pub mod source;
pub mod syntax;
pub mod target;
pub mod translate;
