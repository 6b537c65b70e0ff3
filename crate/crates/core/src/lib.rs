//! Recampaigning: placing additional candidates into districts so that each
//! of them wins where it is placed.

pub mod cli;
pub mod election;
mod flow;
pub mod gadgets;
pub mod io;
pub mod matching;
pub mod model;
pub mod solvers;
