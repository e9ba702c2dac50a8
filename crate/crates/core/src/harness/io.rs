use crate::{Error, Result};
use std::fs;
use std::path::Path;

/// Parses `name k1=v1 k2=v2 ...` into its key/value pairs.
pub fn header_fields(header: &str, name: &str, line: usize) -> Result<Vec<(String, u64)>> {
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some(name) {
        return Err(Error::Parse { line, msg: format!("expected header '{name} ...'") });
    }
    tokens
        .map(|tok| {
            let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse { line, msg: format!("bad field '{tok}'") })?;
            let v = v.parse::<u64>().map_err(|_| Error::Parse { line, msg: format!("bad value in '{tok}'") })?;
            Ok((k.to_string(), v))
        })
        .collect()
}

pub fn field(fields: &[(String, u64)], key: &str, line: usize) -> Result<u64> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse { line, msg: format!("missing field '{key}'") })
}

/// Writes `contents`, creating parent directories.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers() {
        let f = header_fields("graph n=4 m=2", "graph", 1).unwrap();
        assert_eq!(field(&f, "n", 1).unwrap(), 4);
        assert!(field(&f, "x", 1).is_err());
        assert!(header_fields("graph n=4", "unital", 1).is_err());
        assert!(header_fields("graph n", "graph", 1).is_err());
        assert!(header_fields("graph n=-1", "graph", 1).is_err());
    }
}
