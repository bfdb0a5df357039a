pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod spanning;
pub mod verify;
