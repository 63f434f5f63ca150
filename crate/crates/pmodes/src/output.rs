//! JSON and CSV rendering.

use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One object becomes one row; an array of objects becomes one row per element.
pub fn render(value: &Value, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value).expect("serializable") + "\n"),
        Format::Csv => {
            let rows: Vec<&Map<String, Value>> = match value {
                Value::Object(o) => vec![o],
                Value::Array(a) => a.iter().filter_map(Value::as_object).collect(),
                _ => return Err(CliError::Parse("value has no tabular form".into())),
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = rows.first() {
                w.write_record(first.keys()).map_err(io_err)?;
            }
            for r in rows {
                w.write_record(r.values().map(cell)).map_err(io_err)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("utf-8"))
        }
    }
}

fn io_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_rows() {
        let v = json!([{"m": 1, "name": "a,b"}, {"m": 2, "name": "c"}]);
        assert_eq!(render(&v, Format::Csv).unwrap(), "m,name\n1,\"a,b\"\n2,c\n");
        let o = json!({"re": 1.0, "im": -0.5});
        assert_eq!(render(&o, Format::Csv).unwrap(), "re,im\n1.0,-0.5\n");
        assert!(render(&json!(3), Format::Csv).is_err());
    }
}
