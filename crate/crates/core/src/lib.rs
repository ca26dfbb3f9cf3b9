pub mod cli;
pub mod format;
pub mod grid;
pub mod lemmas;
pub mod routing;
pub mod verifier;
