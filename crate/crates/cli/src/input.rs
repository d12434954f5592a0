//! Graph and family arguments: a JSON file path, or a built-in name.

use std::fs;
use std::path::Path;

use gbh_core::corpus;
use gbh_core::family::FIGraphFamily;
use gbh_core::Graph;

use crate::error::CliError;

/// Reads a graph file; falls back to a corpus name (`star_3`, `C_4`, `K_2_3`, ...)
/// when no file of that name exists.
pub fn load_graph(arg: &str) -> Result<(String, Graph), CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        let g = Graph::from_json_str(&text).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        let label = path.file_stem().map_or(arg.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((label, g));
    }
    match corpus::by_name(arg) {
        Some(g) => Ok((arg.to_string(), g)),
        None => Err(CliError::input(format!("{arg}: no such file or built-in graph"))),
    }
}

/// Reads a family file; falls back to `star` or `bipartite_M`.
pub fn load_family(arg: &str) -> Result<FIGraphFamily, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        return FIGraphFamily::from_json_str(&text).map_err(|e| CliError::input(format!("{arg}: {e}")));
    }
    if arg == "star" {
        return Ok(FIGraphFamily::star());
    }
    if let Some(m) = arg.strip_prefix("bipartite_").and_then(|m| m.parse::<usize>().ok()) {
        if m > 0 {
            return Ok(FIGraphFamily::complete_bipartite(m));
        }
    }
    Err(CliError::input(format!("{arg}: no such file or built-in family")))
}
