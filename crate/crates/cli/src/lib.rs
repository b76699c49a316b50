//! Command-line front end for the tautilt workbench.

pub mod commands;
pub mod workspace;

pub use commands::{envelope, execute, Command, Outcome};
pub use workspace::{parse_workspace, write_algebra, write_module, write_pair, Workspace};
