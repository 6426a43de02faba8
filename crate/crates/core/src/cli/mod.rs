pub mod commands;
pub mod eqfile;
pub mod lower;
pub mod parser;
pub mod print;

pub use commands::{execute, Outcome};
pub use eqfile::{parse_eqfile, parse_eqfile_with, print_eqfile, EqFile};
pub use lower::Session;
pub use parser::{parse, parse_equation, Ast};
