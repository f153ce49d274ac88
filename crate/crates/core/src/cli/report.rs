use serde::Serialize;
use serde_json::{json, Value};

/// Output format for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Everything a command produced. The canonical serialization omits the
/// timing, so equal inputs give byte-identical documents.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub catalog_fingerprint: String,
    pub partial: bool,
    /// False when the run found a data violation (exit status 2).
    pub ok: bool,
    pub result: Value,
    #[serde(skip)]
    pub timing_ms: Option<u128>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, catalog_fingerprint: String, result: Value) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            catalog_fingerprint,
            partial: false,
            ok: true,
            result,
            timing_ms: None,
            text: String::new(),
            csv: None,
        }
    }

    /// Pretty JSON with sorted keys and no timing.
    pub fn canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// The canonical document plus the timing field.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let (Some(t), Value::Object(m)) = (self.timing_ms, &mut v) {
            m.insert("timing_ms".into(), json!(t));
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => self.to_json() + "\n",
            Format::Csv => self.csv.clone().unwrap_or_else(|| self.text.clone()),
        }
    }
}
