//! Matrix file format.
//!
//! ```text
//! GTMAT v1 <rows> <cols>
//! # key=value          (optional metadata, any number of lines)
//! 0101...              (one line of 0/1 characters per row)
//! ```

use super::{BinaryMatrix, MatrixError};
use std::fs;
use std::io::Write;
use std::path::Path;

pub fn write_gtmat(
    mat: &BinaryMatrix,
    metadata: &[(String, String)],
    out: &mut impl Write,
) -> Result<(), MatrixError> {
    writeln!(out, "GTMAT v1 {} {}", mat.rows(), mat.cols())?;
    for (k, v) in metadata {
        writeln!(out, "# {k}={v}")?;
    }
    let mut line = String::with_capacity(mat.cols());
    for i in 0..mat.rows() {
        line.clear();
        for j in 0..mat.cols() {
            line.push(if mat.get(i, j) { '1' } else { '0' });
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn write_gtmat_file(
    mat: &BinaryMatrix,
    metadata: &[(String, String)],
    path: &Path,
) -> Result<(), MatrixError> {
    let mut buf = Vec::new();
    write_gtmat(mat, metadata, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_gtmat(text: &str) -> Result<(BinaryMatrix, Vec<(String, String)>), MatrixError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(MatrixError::Parse {
        line: 1,
        msg: "empty input, expected GTMAT header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "GTMAT" || fields[1] != "v1" {
        return Err(MatrixError::Parse {
            line: 1,
            msg: format!("expected header 'GTMAT v1 <rows> <cols>', got '{header}'"),
        });
    }
    let rows: usize = fields[2].parse().map_err(|_| MatrixError::Parse {
        line: 1,
        msg: format!("bad row count '{}'", fields[2]),
    })?;
    let cols: usize = fields[3].parse().map_err(|_| MatrixError::Parse {
        line: 1,
        msg: format!("bad column count '{}'", fields[3]),
    })?;
    if rows == 0 || cols == 0 {
        return Err(MatrixError::Parse {
            line: 1,
            msg: format!("dimensions must be positive, got {rows}x{cols}"),
        });
    }

    let mut mat = BinaryMatrix::zeros(rows, cols);
    let mut metadata = Vec::new();
    let mut row = 0usize;
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if row >= rows {
            return Err(MatrixError::Parse {
                line: lineno,
                msg: format!("more than {rows} data rows"),
            });
        }
        if line.len() != cols {
            return Err(MatrixError::Parse {
                line: lineno,
                msg: format!("row has {} entries, expected {cols}", line.len()),
            });
        }
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mat.set(row, j, true),
                other => {
                    return Err(MatrixError::Parse {
                        line: lineno,
                        msg: format!("invalid character '{other}' in matrix row"),
                    })
                }
            }
        }
        row += 1;
    }
    if row != rows {
        return Err(MatrixError::Parse {
            line: text.lines().count(),
            msg: format!("found {row} data rows, header declared {rows}"),
        });
    }
    Ok((mat, metadata))
}

pub fn read_gtmat_file(path: &Path) -> Result<(BinaryMatrix, Vec<(String, String)>), MatrixError> {
    read_gtmat(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_metadata() {
        let m = BinaryMatrix::from_fn(3, 5, |i, j| (i + j) % 2 == 0);
        let meta = vec![("seed".to_string(), "42".to_string())];
        let mut buf = Vec::new();
        write_gtmat(&m, &meta, &mut buf).unwrap();
        let (back, meta_back) = read_gtmat(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(meta_back, meta);
    }

    #[test]
    fn errors_name_the_line() {
        let text = "GTMAT v1 2 3\n101\n10\n";
        match read_gtmat(text) {
            Err(MatrixError::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("expected 3"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_header_and_row_count() {
        assert!(matches!(
            read_gtmat("GTMAT v2 1 1\n1\n"),
            Err(MatrixError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_gtmat("GTMAT v1 3 2\n10\n01\n"),
            Err(MatrixError::Parse { .. })
        ));
    }
}
