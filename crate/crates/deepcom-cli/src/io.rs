//! JSON file formats: Cayley tables and central-extension descriptors.

use deepcom_core::extensions::CentralExtension;
use deepcom_core::group::{group_from_table, Group};
use deepcom_core::{Error, Result};
use serde::Deserialize;
use std::fmt::Display;
use std::fs;
use std::path::Path;

/// On-disk Cayley table. `table[a][b]` is the index of the product of
/// elements `a` and `b`; the identity may sit at any index, the loader
/// relabels it to 0 and checks the group axioms.
#[derive(Deserialize)]
struct CayleyFile {
    name: String,
    order: usize,
    elements: Vec<String>,
    table: Vec<Vec<u16>>,
}

fn file_err(path: &Path, what: impl Display) -> Error {
    Error::File(format!("{}: {what}", path.display()))
}

/// Loads and validates a Cayley table file.
pub fn load_group(path: &Path) -> Result<Group> {
    let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
    let file: CayleyFile = serde_json::from_str(&text).map_err(|e| file_err(path, e))?;
    if file.elements.len() != file.order {
        return Err(file_err(
            path,
            format!(
                "{} element names for declared order {}",
                file.elements.len(),
                file.order
            ),
        ));
    }
    if file.table.len() != file.order {
        return Err(file_err(
            path,
            format!("{} table rows for declared order {}", file.table.len(), file.order),
        ));
    }
    let mut flat = Vec::with_capacity(file.order * file.order);
    for (i, row) in file.table.iter().enumerate() {
        if row.len() != file.order {
            return Err(file_err(
                path,
                format!("table row {i} has {} entries, expected {}", row.len(), file.order),
            ));
        }
        flat.extend_from_slice(row);
    }
    group_from_table(&file.name, file.elements, flat)
}

/// On-disk central extension: two Cayley table files plus the projection
/// from total onto base. File paths resolve relative to the descriptor.
#[derive(Deserialize)]
struct ExtensionFile {
    total: String,
    base: String,
    projection: Vec<u16>,
}

/// Loads an extension descriptor; the projection is revalidated from
/// scratch (surjective homomorphism with central kernel).
pub fn load_extension(path: &Path) -> Result<CentralExtension> {
    let text = fs::read_to_string(path).map_err(|e| file_err(path, e))?;
    let file: ExtensionFile = serde_json::from_str(&text).map_err(|e| file_err(path, e))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let total = load_group(&dir.join(&file.total))?;
    let base = load_group(&dir.join(&file.base))?;
    CentralExtension::new(total, base, file.projection)
}
