//! Reports: an ordered list of named fields plus an optional table.
//!
//! JSON output is one object with the fields in order and, when there is a
//! table, a final `rows` array of objects keyed by column. TSV output prints
//! one `key<TAB>value` line per field, then a blank line, a header line and
//! one line per row. Non-scalar TSV cells are compact JSON.

use serde_json::{Map, Value};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    fields: Map<String, Value>,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn columns(&mut self, cols: &[&str]) {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
        }
    }

    fn to_json(&self) -> String {
        let mut obj = self.fields.clone();
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            obj.insert("rows".to_string(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("values serialize");
        s.push('\n');
        s
    }

    fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            s.push_str(k);
            s.push('\t');
            s.push_str(&cell(v));
            s.push('\n');
        }
        if !self.columns.is_empty() {
            s.push('\n');
            s.push_str(&self.columns.join("\t"));
            s.push('\n');
            for r in &self.rows {
                s.push_str(&r.iter().map(cell).collect::<Vec<_>>().join("\t"));
                s.push('\n');
            }
        }
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn field_order_is_kept() {
        let mut r = Report::new("demo");
        r.set("zeta", 1);
        r.set("alpha", "a");
        r.columns(&["n", "dim"]);
        r.row(vec![json!(-1), Value::Null]);
        r.row(vec![json!(0), json!([1, 2])]);
        assert_eq!(r.render(Format::Tsv), "command\tdemo\nzeta\t1\nalpha\ta\n\nn\tdim\n-1\t-\n0\t[1,2]\n");
        let j = r.render(Format::Json);
        assert!(j.find("zeta").unwrap() < j.find("alpha").unwrap());
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["rows"][1]["dim"], json!([1, 2]));
    }
}
