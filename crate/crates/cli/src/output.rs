//! Report envelopes and their json, csv and text renderings.

use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Configuration embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub n: usize,
    pub seed: u64,
    pub dim_budget: usize,
    pub class_cap: usize,
    pub trials: usize,
    pub peel_trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restrict: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInfo {
    pub name: String,
    pub p: u32,
    pub rank: usize,
    pub dim: usize,
    pub hash: String,
}

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub settings: &'a Settings,
    pub modules: &'a [ModuleInfo],
    pub result: &'a T,
}

/// A finished command: all three renderings plus the exit status.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub csv: String,
    pub text: String,
    pub exit_code: i32,
}

impl Output {
    pub fn build<T: Serialize>(
        command: &str,
        settings: &Settings,
        modules: &[ModuleInfo],
        result: &T,
        csv_rows: Vec<Vec<String>>,
        text: String,
    ) -> Result<Output, CliError> {
        let env = Envelope {
            tool: "npj",
            version: env!("CARGO_PKG_VERSION"),
            command,
            settings,
            modules,
            result,
        };
        let mut json = serde_json::to_string_pretty(&env)?;
        json.push('\n');
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for row in csv_rows {
            w.write_record(&row)?;
        }
        let csv = String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
            .expect("csv output is utf-8");
        Ok(Output {
            json,
            csv,
            text,
            exit_code: 0,
        })
    }

    pub fn render(&self, f: Format) -> &str {
        match f {
            Format::Json => &self.json,
            Format::Csv => &self.csv,
            Format::Text => &self.text,
        }
    }

    pub fn write(&self, f: Format, out: Option<&Path>) -> Result<(), CliError> {
        let s = self.render(f);
        match out {
            Some(p) => std::fs::write(p, s)?,
            None => {
                use std::io::Write;
                let mut o = std::io::stdout().lock();
                o.write_all(s.as_bytes())?;
                o.flush()?;
            }
        }
        Ok(())
    }
}

pub fn row<I, S>(items: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: ToString,
{
    items.into_iter().map(|s| s.to_string()).collect()
}
