// shared by several test targets, each of which uses only part of it
#![allow(dead_code)]

pub mod assemble;
pub mod oracle;
