//! Front end for the `blockcheck` binary: group-file ingestion, the
//! `table`, `blocks`, `verify` and `census` commands, and report emission.

pub mod census;
pub mod commands;
pub mod groupfile;
pub mod report;

pub use census::{census_command, load_manifest, Manifest, ManifestEntry};
pub use commands::{
    blocks_command, max_order_from_env, table_command, verify_command, CliError, VerifyFlags, MAX_ORDER_VAR,
};
pub use groupfile::{parse_group_file, GroupFile, ParseError};
