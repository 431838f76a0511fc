use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GroupTable, Notation};
use crate::error::{Error, Result};

/// Orders up to this value get a full associativity triple scan on load;
/// larger tables are checked with Light's test.
pub const DEFAULT_ASSOCIATIVITY_CAP: usize = 256;

/// On-disk group table: `{"order": n, "names": [...], "table": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn from_group(g: &GroupTable) -> Self {
        TableFile {
            order: g.order(),
            names: g.names().to_vec(),
            table: (0..g.order()).map(|a| g.row(a)).collect(),
        }
    }

    pub fn into_group(self, spec: &str, associativity_cap: usize) -> Result<GroupTable> {
        if self.order != self.names.len() {
            return Err(Error::InvalidTable(format!(
                "order {} does not match {} names",
                self.order,
                self.names.len()
            )));
        }
        let g = GroupTable::from_rows(spec, self.names, Notation::Plain, &self.table)?;
        g.check_associative(associativity_cap)?;
        Ok(g)
    }
}

pub fn load_table_file(path: impl AsRef<Path>, associativity_cap: usize) -> Result<GroupTable> {
    let path = path.as_ref();
    let io = |e: &dyn std::fmt::Display| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let text = std::fs::read_to_string(path).map_err(|e| io(&e))?;
    let file: TableFile = serde_json::from_str(&text).map_err(|e| io(&e))?;
    file.into_group(&format!("table:{}", path.display()), associativity_cap)
}
