//! UCR-style dataset files: the `@`-header sequence format with
//! `v1,v2,...:label` data lines, plus plain delimited files with the
//! label in the first column.

use std::fs;
use std::path::Path;

use tscl_core::{Dataset, TimeSeries};

use crate::{CliError, Result};

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_value(path: &Path, line: usize, token: &str) -> Result<f64> {
    let t = token.trim();
    if t == "?" || t.eq_ignore_ascii_case("nan") {
        return Err(CliError::Unsupported {
            path: path.to_path_buf(),
            reason: format!("missing value on line {line}"),
        });
    }
    t.parse::<f64>()
        .map_err(|_| parse_err(path, line, format!("cannot parse value {t:?}")))
}

/// Load a dataset from either supported grammar. Unequal lengths and
/// missing values are unsupported-dataset errors; malformed lines report
/// their line number.
pub fn load_ucr_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;

    let mut name: Option<String> = None;
    let mut series: Vec<TimeSeries> = Vec::new();
    let mut labels: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix('@') {
            let mut parts = header.splitn(2, char::is_whitespace);
            let key = parts.next().unwrap_or_default();
            if key.eq_ignore_ascii_case("problemName") {
                name = parts.next().map(|s| s.trim().to_string());
            }
            // other headers (@univariate, @classLabel, @data, ...) carry no
            // information the loader needs beyond marking themselves as
            // non-data lines
            continue;
        }

        let (values_part, label) = if let Some((values, label)) = line.rsplit_once(':') {
            // sequence format: values, colon, label
            let label = label.trim();
            if label.is_empty() {
                return Err(parse_err(path, lineno, "empty label after ':'"));
            }
            (values, Some(label.to_string()))
        } else {
            // plain delimited: label first, values after
            let mut split = line.splitn(2, [',', ' ', '\t']);
            let label = split.next().unwrap_or_default().trim().to_string();
            let rest = split
                .next()
                .ok_or_else(|| parse_err(path, lineno, "line holds a label but no values"))?;
            (rest, Some(label))
        };

        let values: Vec<f64> = values_part
            .split([',', ' ', '\t'])
            .filter(|t| !t.trim().is_empty())
            .map(|t| parse_value(path, lineno, t))
            .collect::<Result<_>>()?;
        if values.is_empty() {
            return Err(parse_err(path, lineno, "no values on line"));
        }
        let s = TimeSeries::new(values)
            .map_err(|e| parse_err(path, lineno, e.to_string()))?;
        if let Some(first) = series.first() {
            if s.len() != first.len() {
                return Err(CliError::Unsupported {
                    path: path.to_path_buf(),
                    reason: format!(
                        "unequal series lengths ({} vs {} on line {lineno})",
                        first.len(),
                        s.len()
                    ),
                });
            }
        }
        series.push(s);
        if let Some(l) = label {
            labels.push(l);
        }
    }

    if series.is_empty() {
        return Err(CliError::Unsupported {
            path: path.to_path_buf(),
            reason: "no data lines".into(),
        });
    }
    let name = name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into())
    });
    let labels = if labels.len() == series.len() {
        Some(labels)
    } else {
        None
    };
    Ok(Dataset::new(name, series, labels)?)
}

/// Write a dataset in the sequence format so it reloads identically.
/// Unlabelled series are written with the placeholder label "0".
pub fn write_ucr_dataset(path: impl AsRef<Path>, data: &Dataset) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    out.push_str(&format!("@problemName {}\n", data.name));
    out.push_str("@univariate true\n@data\n");
    for (i, s) in data.series().iter().enumerate() {
        let values: Vec<String> = s.values().iter().map(|v| format!("{v}")).collect();
        let label = data
            .labels()
            .map(|l| l[i].clone())
            .unwrap_or_else(|| "0".into());
        out.push_str(&format!("{}:{}\n", values.join(","), label));
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}

/// A single series from a plain text file: floats separated by commas,
/// whitespace or newlines.
pub fn load_series(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let values: Vec<f64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_value(path, 1, t))
        .collect::<Result<_>>()?;
    TimeSeries::new(values).map_err(|e| parse_err(path, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn loads_sequence_format() {
        let dir = tempdir().unwrap();
        let p = write(
            &dir,
            "toy.ts",
            "@problemName Toy\n@univariate true\n@classLabel true 0 1\n@data\n1.0,2.0,3.0:0\n4.0,5.0,6.0:1\n",
        );
        let d = load_ucr_dataset(&p).unwrap();
        assert_eq!(d.name, "Toy");
        assert_eq!(d.len(), 2);
        assert_eq!(d.series()[1].values(), &[4.0, 5.0, 6.0]);
        assert_eq!(d.labels().unwrap(), &["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn loads_plain_label_first() {
        let dir = tempdir().unwrap();
        let p = write(&dir, "plain.csv", "1,0.5,0.25\n2,1.5,1.25\n");
        let d = load_ucr_dataset(&p).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.series_len(), 2);
        assert_eq!(d.labels().unwrap()[0], "1");
    }

    #[test]
    fn short_series_is_unsupported_with_line() {
        let dir = tempdir().unwrap();
        let p = write(&dir, "bad.ts", "@data\n1,2,3:0\n1,2:1\n");
        match load_ucr_dataset(&p) {
            Err(CliError::Unsupported { reason, .. }) => {
                assert!(reason.contains("line 3"), "{reason}");
            }
            other => panic!("expected unsupported, got {other:?}"),
        }
    }

    #[test]
    fn malformed_value_names_line() {
        let dir = tempdir().unwrap();
        let p = write(&dir, "bad.ts", "@data\n1,2,3:0\n1,x,3:1\n");
        match load_ucr_dataset(&p) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_value_is_unsupported() {
        let dir = tempdir().unwrap();
        let p = write(&dir, "bad.ts", "@data\n1,?,3:0\n");
        assert!(matches!(
            load_ucr_dataset(&p),
            Err(CliError::Unsupported { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let dir = tempdir().unwrap();
        let series = vec![
            TimeSeries::new(vec![0.125, -3.5, 7.0]).unwrap(),
            TimeSeries::new(vec![1.0, 2.0, -0.0625]).unwrap(),
        ];
        let d = Dataset::new(
            "rt",
            series,
            Some(vec!["a".into(), "b".into()]),
        )
        .unwrap();
        let p = dir.path().join("rt.ts");
        write_ucr_dataset(&p, &d).unwrap();
        let back = load_ucr_dataset(&p).unwrap();
        assert_eq!(back.name, d.name);
        assert_eq!(back.series(), d.series());
        assert_eq!(back.labels(), d.labels());
    }

    #[test]
    fn loads_single_series_file() {
        let dir = tempdir().unwrap();
        let p = write(&dir, "s.csv", "1.0, 2.0\n3.0\n");
        assert_eq!(load_series(&p).unwrap().values(), &[1.0, 2.0, 3.0]);
    }
}
