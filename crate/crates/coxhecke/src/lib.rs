#![no_std]

extern crate alloc;

pub mod ring;
pub mod cartan;
pub mod coxgroup;
pub mod klbase;
pub mod relcells;
pub mod sparse;
pub mod leading;
