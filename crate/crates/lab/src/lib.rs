//! Experiment orchestration on top of `geomlab`: seeded corpus generation,
//! parallel sweep dispatch, and report emission.
//!
//! The binary front-end (`lab`) reads plain-text configuration files in the
//! format of [`geomlab::config`], runs one experiment per invocation, and
//! writes a JSON-lines report plus a CSV summary. Everything downstream of
//! the master seed is deterministic: work item `i` draws from a generator
//! seeded with `item_seed(master, i)`, items are processed in parallel but
//! collected in index order, and report files are written serially.
//!
//! Exit status is part of the contract. A run exits 0 when every blocking
//! report holds, 1 when at least one blocking report fails, and 2 on any
//! configuration or I/O error. Tracked reports record ratio data and never
//! affect the exit status.

pub mod corpus;
pub mod experiments;

pub use experiments::{blocking_violations, run_experiment, Experiment, Settings};
