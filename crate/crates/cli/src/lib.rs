//! Library side of the `classdiv` command: configuration, generation,
//! verification, counting and class-number tables.

pub mod classnum;
pub mod config;
pub mod count;
pub mod error;
pub mod generate;
pub mod triples;
pub mod verify;

pub use classnum::{run_classnum, ClassRow};
pub use config::Config;
pub use count::{run_count, slope_fit, CountRecord, CountReport, SlopeFit};
pub use error::CliError;
pub use generate::{generate_at, run_generate, Generated};
pub use triples::{parse_rows, write_rows, Format, TripleRow};
pub use verify::{run_verify, Check, Failure, VerifyOptions, VerifyReport};
