//! File formats, grammars, reports and the bundled corpus behind the
//! `fiberprod` command-line tool.

pub mod corpus;
pub mod cover_file;
pub mod expr;
pub mod report;
