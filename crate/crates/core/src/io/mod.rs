//! Text formats: network/structure files, case files and DOT output.

mod case_file;
mod dot;
mod network_file;

pub use case_file::{read_cases, write_cases};
pub use dot::{parse_dot_edges, to_dot};
pub use network_file::{
    parse_model_file, parse_network, parse_structure, write_network, write_structure, ModelFile,
    FORMAT_VERSION,
};
