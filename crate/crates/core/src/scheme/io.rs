//! Plain-text scheme format.
//!
//! ```text
//! # optional comment lines
//! n D
//! c_00 c_01 ... c_0(n-1)
//! ...
//! ```
//!
//! The writer emits exactly this layout: single spaces, no trailing
//! whitespace, LF line endings, no comments.

use std::path::Path;

use super::{Scheme, SchemeError};

pub fn parse_scheme(text: &str) -> Result<Scheme, SchemeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_err = |line: usize, message: String| SchemeError::Parse { line, message };
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n D`".into()))?;
    let header: Vec<&str> = header.split_whitespace().collect();
    if header.len() != 2 {
        return Err(parse_err(header_line, "header must be `n D`".into()));
    }
    let parse_num = |tok: &str, line: usize| {
        tok.parse::<usize>().map_err(|_| parse_err(line, format!("`{tok}` is not a nonnegative integer")))
    };
    let n = parse_num(header[0], header_line)?;
    let classes = parse_num(header[1], header_line)?;

    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, content) in lines {
        if rows == n {
            return Err(parse_err(line, format!("expected {n} rows, found more")));
        }
        let row: Vec<usize> = content.split_whitespace().map(|t| parse_num(t, line)).collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("expected {n} entries, found {}", row.len())));
        }
        table.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(parse_err(text.lines().count(), format!("expected {n} rows, found {rows}")));
    }
    let max = table.iter().copied().max().unwrap_or(0);
    if max != classes {
        return Err(parse_err(header_line, format!("header declares D={classes} but the table uses labels up to {max}")));
    }
    Scheme::from_flat(n, table)
}

pub fn write_scheme(scheme: &Scheme) -> String {
    let mut out = format!("{} {}\n", scheme.n(), scheme.classes());
    for x in 0..scheme.n() {
        let row: Vec<String> = scheme.row(x).iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_scheme(path: &Path) -> crate::Result<Scheme> {
    let text = std::fs::read_to_string(path).map_err(|source| crate::Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into());
    Ok(parse_scheme(&text)?.with_label(label))
}
