//! Output rendering. Every command produces a JSON document and one or more
//! flat tables; the `--output` flag picks which is printed.

use std::io::Write;

use serde_json::Value;

use crate::args::OutputFormat;

pub struct Table {
    pub title: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            title: None,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Two-column table from `(key, value)` pairs.
    pub fn fields(pairs: Vec<(&str, String)>) -> Self {
        let mut t = Table::new(&["field", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v]);
        }
        t
    }
}

pub struct Rendered {
    pub json: Value,
    pub tables: Vec<Table>,
}

/// Rewrites every JSON number as its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify_numbers).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, stringify_numbers(v)))
                .collect(),
        ),
        other => other,
    }
}

pub fn emit(
    out: &mut impl Write,
    rendered: &Rendered,
    format: OutputFormat,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&stringify_numbers(rendered.json.clone()))?;
            writeln!(out, "{text}")
        }
        OutputFormat::Csv => {
            for (i, table) in rendered.tables.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                if let Some(title) = &table.title {
                    writeln!(out, "# {title}")?;
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&table.header)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Ok(())
        }
        OutputFormat::Table => {
            for (i, table) in rendered.tables.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write_aligned(out, table)?;
            }
            Ok(())
        }
    }
}

fn write_aligned(out: &mut impl Write, table: &Table) -> std::io::Result<()> {
    if let Some(title) = &table.title {
        writeln!(out, "{title}")?;
    }
    let cols = table.header.len();
    let mut widths: Vec<usize> = table.header.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&table.header))?;
    let rule: Vec<String> = widths.iter().take(cols).map(|&w| "-".repeat(w)).collect();
    writeln!(out, "{}", rule.join("  "))?;
    for row in &table.rows {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn numbers_become_strings() {
        let v = stringify_numbers(json!({"a": 1, "b": [2, "x", null], "c": {"d": 3}}));
        assert_eq!(v, json!({"a": "1", "b": ["2", "x", null], "c": {"d": "3"}}));
    }

    #[test]
    fn aligned_table() {
        let mut t = Table::new(&["l", "g"]);
        t.push(vec!["1".into(), "6".into()]);
        t.push(vec!["10".into(), "1234".into()]);
        let mut buf = Vec::new();
        write_aligned(&mut buf, &t).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "l   g\n--  ----\n1   6\n10  1234\n"
        );
    }
}
