//! Command-line front end: the word language, JSON traces and ring files.

pub mod app;
pub mod dsl;
pub mod ringfile;
pub mod trace;
