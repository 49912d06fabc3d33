//! Boolean network analysis: asynchronous dynamics, interaction graphs,
//! and-nets, variable elimination and explicit constructions.

pub mod andnet;
pub mod constructions;
pub mod andnet_analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod graph;
pub mod interaction;
pub mod isometry;
pub mod network;
pub mod report;
pub mod state;
pub mod transform;
pub mod verify;
