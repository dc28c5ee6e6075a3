//! Input handling, verification reports, SVG drawings and A-infinity self-tests behind the
//! `hms` command-line tool.

pub mod input;
pub mod selftest;
pub mod svg;
pub mod verify;
