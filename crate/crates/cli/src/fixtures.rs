//! The shipped fixture specs, compiled into the binary.

use crate::error::{CliError, CliResult};
use crate::schema::SpecFile;

pub const FILES: [(&str, &str); 6] = [
    ("bialgebras.json", include_str!("../fixtures/bialgebras.json")),
    ("geometry.json", include_str!("../fixtures/geometry.json")),
    ("momentum.json", include_str!("../fixtures/momentum.json")),
    ("hopf.json", include_str!("../fixtures/hopf.json")),
    ("actions.json", include_str!("../fixtures/actions.json")),
    ("reductions.json", include_str!("../fixtures/reductions.json")),
];

/// All fixture files merged into one spec.
pub fn spec() -> CliResult<SpecFile> {
    let mut out = SpecFile::default();
    for (name, src) in FILES {
        let part = SpecFile::parse(src).map_err(|e| CliError::Input(format!("fixture {name}: {e}")))?;
        out.merge(part)?;
    }
    Ok(out)
}
