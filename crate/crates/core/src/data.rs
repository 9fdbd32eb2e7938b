//! Shipped data files. They are compiled in; a directory named by `EIX_DATA_DIR`
//! or an explicit path overrides them.

use crate::dirac::InfChar;
use crate::error::{Error, Result};
use std::path::{Path, PathBuf};

pub const DATA_DIR_ENV: &str = "EIX_DATA_DIR";
pub const PHI1_FILE: &str = "phi1.json";
pub const TABLES_FILE: &str = "fs_scattered.json";

const PHI1_EMBEDDED: &str = include_str!("../../../data/phi1.json");
const TABLES_EMBEDDED: &str = include_str!("../../../data/fs_scattered.json");

/// File contents and a label used in error messages.
pub fn read(name: &str, explicit: Option<&Path>) -> Result<(String, String)> {
    let path: Option<PathBuf> = explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(DATA_DIR_ENV).map(|d| PathBuf::from(d).join(name)));
    match path {
        Some(p) => {
            let label = p.display().to_string();
            let text = std::fs::read_to_string(&p).map_err(|source| Error::Io {
                path: label.clone(),
                source,
            })?;
            Ok((text, label))
        }
        None => {
            let text = match name {
                PHI1_FILE => PHI1_EMBEDDED,
                TABLES_FILE => TABLES_EMBEDDED,
                _ => {
                    return Err(Error::Data {
                        locus: name.into(),
                        msg: "no embedded copy".into(),
                    })
                }
            };
            Ok((text.to_string(), format!("embedded {name}")))
        }
    }
}

pub fn parse_phi1(text: &str, label: &str) -> Result<Vec<InfChar>> {
    let raw: Vec<[i64; 8]> = serde_json::from_str(text).map_err(|e| Error::Data {
        locus: label.into(),
        msg: e.to_string(),
    })?;
    raw.into_iter()
        .enumerate()
        .map(|(i, v)| {
            InfChar::from_ints(v).map_err(|e| Error::Data {
                locus: format!("{label} entry {i}"),
                msg: e.to_string(),
            })
        })
        .collect()
}

pub fn load_phi1(explicit: Option<&Path>) -> Result<Vec<InfChar>> {
    let (text, label) = read(PHI1_FILE, explicit)?;
    parse_phi1(&text, &label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_phi1() {
        let v = parse_phi1(PHI1_EMBEDDED, "embedded").unwrap();
        assert_eq!(v.len(), 51);
        assert_eq!(v[0], InfChar::from_ints([0, 1, 1, 0, 1, 0, 1, 0]).unwrap());
    }

    #[test]
    fn malformed_phi1() {
        assert!(parse_phi1("[[1,2]]", "x").is_err());
        assert!(parse_phi1("[[0,0,0,0,0,0,0,-1]]", "x").is_err());
        let err = parse_phi1("nope", "file.json").unwrap_err().to_string();
        assert!(err.starts_with("file.json"));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_phi1(Some(Path::new("/nonexistent/phi1.json"))), Err(Error::Io { .. })));
    }
}
