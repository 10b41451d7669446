//! The JSON run record and its number formatting.

use std::io::{self, Read, Write};

use eqdist_core::{
    ApproxResult, BoundSet, ClosedForm, EquilibriumDistribution, Family, Moments, PointSet,
    SignChangeTable,
};
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

pub const SCHEMA_VERSION: u32 = 1;

/// Everything needed to reproduce one invocation, plus its results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: u32,
    pub command: String,
    pub tool_version: String,
    pub parameters: Parameters,
    pub results: Results,
    pub duration_secs: f64,
}

/// Flags as resolved for the run. Fields that a command does not use are
/// left out.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_set: Option<PointSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_max_players: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `"flag"` when given on the command line, `"entropy"` when drawn.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_method: Option<String>,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Results {
    Sample {
        distribution: EquilibriumDistribution,
        moments: Moments,
        n_fallback: u64,
        n_failed: u64,
    },
    Exact {
        closed_form: ClosedForm,
    },
    Signs {
        tables: Vec<SignChangeTable>,
        /// Largest difference between any two methods over the table.
        max_discrepancy: Option<f64>,
    },
    Compare {
        rows: Vec<CompareRow>,
        sampling: Vec<EquilibriumDistribution>,
        closed_form: Vec<EquilibriumDistribution>,
        approximation: Vec<ApproxResult>,
    },
    Bounds {
        bounds: BoundSet,
    },
}

/// One `(d, m)` row of a comparison, in wide form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub d: usize,
    pub m: usize,
    pub sampling: f64,
    pub sampling_stderr: f64,
    pub closed_form: Option<f64>,
    pub closed_form_stderr: Option<f64>,
    pub descartes_lower: f64,
    pub descartes_upper: f64,
    pub poisson: f64,
    /// `|sampling - closed_form|`.
    pub gap: Option<f64>,
}

/// Pretty JSON with every float written to 17 significant digits.
struct SignificantDigits {
    inner: serde_json::ser::PrettyFormatter<'static>,
}

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

impl RunRecord {
    pub fn write_json<W: Write>(&self, writer: W) -> io::Result<()> {
        let fmt = SignificantDigits {
            inner: serde_json::ser::PrettyFormatter::new(),
        };
        let mut ser = serde_json::Serializer::with_formatter(writer, fmt);
        self.serialize(&mut ser).map_err(io::Error::from)?;
        ser.into_inner().write_all(b"\n")
    }

    pub fn to_json_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_json(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn read_json<R: Read>(reader: R) -> serde_json::Result<Self> {
        serde_json::from_reader(reader)
    }
}
