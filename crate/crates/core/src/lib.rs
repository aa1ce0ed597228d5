#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod frugal;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod sidon;
pub mod verify;
