//! Library side of the `isotriple` command-line tool: the STF format and
//! command dispatch.

pub mod app;
pub mod stf;
