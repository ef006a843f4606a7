//! Report records and their text, CSV and JSON renderings.
//!
//! Every numeric field renders as four columns: `name` (exact `p/q`, empty
//! when the value is not exact), `name_decimal`, `name_rad` (ball radius or
//! Monte Carlo standard error) and `name_digits` (significant digits the
//! radius supports).

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value as Json};

use sepprob_core::numerics::format_rational;
use sepprob_core::{Rational, RealBall};

/// Decimal digits printed for exact rationals.
const EXACT_DIGITS: usize = 40;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Field {
    Exact(Rational),
    Ball(RealBall),
    /// A statistical estimate and its standard error.
    Estimate(f64, f64),
    Int(i128),
    Bool(bool),
    Text(String),
}

struct Number {
    exact: Option<String>,
    decimal: String,
    rad: String,
    digits: i64,
}

fn number(field: &Field) -> Option<Number> {
    match field {
        Field::Exact(r) => Some(Number {
            exact: Some(format_rational(r)),
            decimal: RealBall::from_rational(r, 4 * EXACT_DIGITS as u32).to_decimal(EXACT_DIGITS),
            rad: "0".into(),
            digits: EXACT_DIGITS as i64,
        }),
        Field::Ball(b) => Some(Number {
            exact: None,
            decimal: b.to_decimal_certified(),
            rad: format!("{:.3e}", b.rad().to_f64()),
            digits: b.accurate_digits(),
        }),
        Field::Estimate(v, se) => {
            let digits = if *se > 0.0 && *v != 0.0 {
                (v.abs() / se).log10().floor().max(0.0) as i64
            } else {
                0
            };
            Some(Number {
                exact: None,
                decimal: format!("{v}"),
                rad: format!("{se:.3e}"),
                digits,
            })
        }
        _ => None,
    }
}

fn scalar_text(field: &Field) -> String {
    match field {
        Field::Int(v) => v.to_string(),
        Field::Bool(v) => v.to_string(),
        Field::Text(s) => s.clone(),
        _ => unreachable!("numeric field"),
    }
}

fn field_json(field: &Field) -> Json {
    match number(field) {
        Some(n) => json!({ "exact": n.exact, "decimal": n.decimal, "rad": n.rad, "digits": n.digits }),
        None => match field {
            Field::Int(v) => json!(*v as i64),
            Field::Bool(v) => json!(v),
            Field::Text(s) => json!(s),
            _ => unreachable!(),
        },
    }
}

fn flatten(name: &str, field: &Field, header: &mut Vec<String>, cells: &mut Vec<String>) {
    match number(field) {
        Some(n) => {
            header.extend([
                name.to_string(),
                format!("{name}_decimal"),
                format!("{name}_rad"),
                format!("{name}_digits"),
            ]);
            cells.extend([n.exact.unwrap_or_default(), n.decimal, n.rad, n.digits.to_string()]);
        }
        None => {
            header.push(name.to_string());
            cells.push(scalar_text(field));
        }
    }
}

pub type Row = Vec<(String, Field)>;

/// A named field.
pub fn named(name: &str, field: Field) -> (String, Field) {
    (name.to_string(), field)
}

/// Output of one subcommand.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub parameters: Row,
    pub rows: Vec<Row>,
    /// Whole-run quantities such as a fitted slope.
    pub summary: Row,
    pub notes: Vec<String>,
    pub elapsed_seconds: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn param(mut self, name: &str, field: Field) -> Self {
        self.parameters.push(named(name, field));
        self
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
            Format::Text => self.write_text(out),
        }
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let object = |fields: &[(String, Field)]| {
            Json::Object(fields.iter().map(|(k, v)| (k.clone(), field_json(v))).collect::<Map<_, _>>())
        };
        let mut doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "parameters": object(&self.parameters),
            "results": self.rows.iter().map(|r| object(r)).collect::<Vec<_>>(),
            "summary": object(&self.summary),
            "notes": self.notes,
        });
        if let Some(t) = self.elapsed_seconds {
            doc["timing"] = json!({ "seconds": t });
        }
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }

    /// Rows as CSV; the summary, notes and timing follow as `#` lines.
    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        {
            let mut w = csv::Writer::from_writer(&mut *out);
            for (i, row) in self.rows.iter().enumerate() {
                let mut header = Vec::new();
                let mut cells = Vec::new();
                for (name, field) in row {
                    flatten(name, field, &mut header, &mut cells);
                }
                if i == 0 {
                    w.write_record(&header)?;
                }
                w.write_record(&cells)?;
            }
            w.flush()?;
        }
        for (name, field) in &self.summary {
            writeln!(out, "# {name} = {}", text_value(field))?;
        }
        for note in &self.notes {
            writeln!(out, "# {note}")?;
        }
        if let Some(t) = self.elapsed_seconds {
            writeln!(out, "# elapsed_seconds = {t:.3}")?;
        }
        Ok(())
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            for (name, field) in row {
                writeln!(out, "{name:<18} {}", text_value(field))?;
            }
        }
        if !self.summary.is_empty() && !self.rows.is_empty() {
            writeln!(out)?;
        }
        for (name, field) in &self.summary {
            writeln!(out, "{name:<18} {}", text_value(field))?;
        }
        for note in &self.notes {
            writeln!(out, "note: {note}")?;
        }
        if let Some(t) = self.elapsed_seconds {
            writeln!(out, "elapsed            {t:.3} s")?;
        }
        Ok(())
    }
}

fn text_value(field: &Field) -> String {
    match (field, number(field)) {
        (Field::Exact(_), Some(n)) => format!("{}  ~ {}", n.exact.unwrap_or_default(), n.decimal),
        (Field::Estimate(..), Some(n)) => format!("{} +- {}", n.decimal, n.rad),
        (_, Some(n)) => format!("{} +- {} ({} digits)", n.decimal, n.rad, n.digits),
        (_, None) => scalar_text(field),
    }
}
