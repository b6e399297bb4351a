//! Command-line front end for `modspec-core`: module files, commands and JSON reports.

pub mod error;
pub mod input;
pub mod report;
pub mod run;

pub use error::InputError;
pub use input::{parse_module_file, ModuleFile};
pub use report::{Report, Status};
pub use run::{run, Outcome, CARD_CAP_VAR};
