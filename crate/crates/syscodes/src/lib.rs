//! File formats, parallel drivers, verification suites and the command line
//! for [`syscodes_core`].

pub mod cli;
pub mod complex_file;
pub mod parallel;
pub mod random;
pub mod report;
pub mod verify;

pub use syscodes_core as core;
