//! Command-line tool and HTTP JSON service for arrow graphs and focal curves.

pub mod api;
pub mod cli;
pub mod ops;
