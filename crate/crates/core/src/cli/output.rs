//! Result persistence: summary JSON, trajectory CSV, and the stdout table.
//!
//! CSV floats use the shortest representation that parses back to the same
//! bits, so a record round-trips losslessly. One row per visited state; the
//! maneuver columns carry the joint move that produced the row's state
//! (`-` on the initial row) and the outcome column stays `Ongoing` until the
//! final row of the trial.

use serde::{Deserialize, Serialize};

use super::config::ResolvedConfig;
use super::CliError;
use crate::airframe::{AircraftState, Maneuver};
use crate::arena::{MCSummary, TrialRecord};
use crate::engagement::{GameState, JointManeuver, Outcome};

pub const TRIALS_HEADER: [&str; 14] = [
    "trial", "step", "time_s", "x1", "y1", "theta1", "zeta1", "x2", "y2", "theta2", "zeta2",
    "m1", "m2", "outcome",
];

/// The summary document written to `summary.json`.
///
/// `config_echo` carries the experiment-defining keys only; execution
/// details (`out`, `parallel`, `plot`) never change results, so they are
/// left to `resolved_config.toml` and the summary stays byte-identical
/// across parallelism degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub case: String,
    pub seed: u64,
    pub m_s: u32,
    pub m_w1: u32,
    pub m_w2: u32,
    pub m_d: u32,
    pub p_w1: f64,
    pub p_w2: f64,
    pub p_d: f64,
    pub config_echo: serde_json::Value,
}

impl Summary {
    pub fn new(cfg: &ResolvedConfig, mc: &MCSummary) -> Self {
        let mut echo = serde_json::to_value(cfg).expect("config serializes");
        if let serde_json::Value::Object(map) = &mut echo {
            for execution_only in ["out", "parallel", "plot"] {
                map.remove(execution_only);
            }
        }
        Self {
            case: cfg.case.clone(),
            seed: cfg.seed,
            m_s: mc.m_s,
            m_w1: mc.m_w1,
            m_w2: mc.m_w2,
            m_d: mc.m_d,
            p_w1: mc.p_w1,
            p_w2: mc.p_w2,
            p_d: mc.p_d,
            config_echo: echo,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Plain-text table printed to standard output after a run.
    pub fn table(&self) -> String {
        format!(
            "case {}  seed {}  trials {}\n\
             outcome  count  probability\n\
             win 1    {:>5}  {:>11.3}\n\
             win 2    {:>5}  {:>11.3}\n\
             draw     {:>5}  {:>11.3}\n",
            self.case, self.seed, self.m_s, self.m_w1, self.p_w1, self.m_w2, self.p_w2,
            self.m_d, self.p_d
        )
    }
}

fn outcome_str(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Win1 => "Win1",
        Outcome::Win2 => "Win2",
        Outcome::Draw => "Draw",
        Outcome::Ongoing => "Ongoing",
    }
}

fn parse_outcome(s: &str, row: usize) -> Result<Outcome, CliError> {
    match s {
        "Win1" => Ok(Outcome::Win1),
        "Win2" => Ok(Outcome::Win2),
        "Draw" => Ok(Outcome::Draw),
        "Ongoing" => Ok(Outcome::Ongoing),
        other => Err(CliError::CsvSchema {
            row,
            message: format!("unknown outcome `{other}`"),
        }),
    }
}

/// Serialize every trial to the trajectory CSV format.
pub fn trials_to_csv(records: &[TrialRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRIALS_HEADER).expect("header writes");
    for r in records {
        let last = r.states.len() - 1;
        for (i, s) in r.states.iter().enumerate() {
            let (m1, m2) = match i.checked_sub(1).map(|j| r.moves[j]) {
                Some(jm) => (jm.m1.letter().to_string(), jm.m2.letter().to_string()),
                None => ("-".to_string(), "-".to_string()),
            };
            let outcome = if i == last { r.outcome } else { Outcome::Ongoing };
            w.write_record([
                r.trial.to_string(),
                i.to_string(),
                fmt_f64(r.time_of(i)),
                fmt_f64(s.ac1.x),
                fmt_f64(s.ac1.y),
                fmt_f64(s.ac1.theta),
                fmt_f64(s.ac1.zeta),
                fmt_f64(s.ac2.x),
                fmt_f64(s.ac2.y),
                fmt_f64(s.ac2.theta),
                fmt_f64(s.ac2.zeta),
                m1,
                m2,
                outcome_str(outcome).to_string(),
            ])
            .expect("row writes");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

/// Shortest decimal form that parses back to the identical f64.
fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

struct RawRow {
    trial: u32,
    step: u64,
    time_s: f64,
    ac1: [f64; 4],
    ac2: [f64; 4],
    m1: Option<Maneuver>,
    m2: Option<Maneuver>,
    outcome: Outcome,
}

fn parse_field<T: std::str::FromStr>(s: &str, name: &str, row: usize) -> Result<T, CliError> {
    s.parse().map_err(|_| CliError::CsvSchema {
        row,
        message: format!("column `{name}` has unparseable value `{s}`"),
    })
}

fn parse_maneuver(s: &str, name: &str, row: usize) -> Result<Option<Maneuver>, CliError> {
    if s == "-" {
        return Ok(None);
    }
    let mut chars = s.chars();
    match (chars.next().and_then(Maneuver::from_letter), chars.next()) {
        (Some(m), None) => Ok(Some(m)),
        _ => Err(CliError::CsvSchema {
            row,
            message: format!("column `{name}` expects L, S, R, or `-`, got `{s}`"),
        }),
    }
}

fn parse_row(record: &csv::StringRecord, row: usize) -> Result<RawRow, CliError> {
    if record.len() != TRIALS_HEADER.len() {
        return Err(CliError::CsvSchema {
            row,
            message: format!("expected {} columns, got {}", TRIALS_HEADER.len(), record.len()),
        });
    }
    let mut floats = [0.0f64; 9];
    for (slot, col) in floats.iter_mut().zip(2..11) {
        *slot = parse_field(&record[col], TRIALS_HEADER[col], row)?;
    }
    Ok(RawRow {
        trial: parse_field(&record[0], "trial", row)?,
        step: parse_field(&record[1], "step", row)?,
        time_s: floats[0],
        ac1: [floats[1], floats[2], floats[3], floats[4]],
        ac2: [floats[5], floats[6], floats[7], floats[8]],
        m1: parse_maneuver(&record[11], "m1", row)?,
        m2: parse_maneuver(&record[12], "m2", row)?,
        outcome: parse_outcome(&record[13], row)?,
    })
}

/// Rebuild one trial from its contiguous run of rows.
fn build_record(rows: &[(usize, RawRow)], v1: f64, v2: f64) -> Result<TrialRecord, CliError> {
    let trial = rows[0].1.trial;
    let step_seconds = if rows.len() > 1 { rows[1].1.time_s } else { 1.0 };
    let mut states = Vec::with_capacity(rows.len());
    let mut moves = Vec::with_capacity(rows.len() - 1);
    for (i, (row, raw)) in rows.iter().enumerate() {
        let row = *row;
        if raw.step != i as u64 {
            return Err(CliError::CsvSchema {
                row,
                message: format!("trial {trial}: expected step {i}, got {}", raw.step),
            });
        }
        let expected_time = i as f64 * step_seconds;
        if (raw.time_s - expected_time).abs() > 1e-9 {
            return Err(CliError::CsvSchema {
                row,
                message: format!(
                    "trial {trial}: time_s {} does not match step spacing {step_seconds}",
                    raw.time_s
                ),
            });
        }
        let last = i == rows.len() - 1;
        if !last && raw.outcome != Outcome::Ongoing {
            return Err(CliError::CsvSchema {
                row,
                message: format!("trial {trial}: outcome before the final row must be Ongoing"),
            });
        }
        if last && raw.outcome == Outcome::Ongoing {
            return Err(CliError::CsvSchema {
                row,
                message: format!("trial {trial}: final row must carry a finished outcome"),
            });
        }
        match (i, raw.m1, raw.m2) {
            (0, None, None) => {}
            (0, _, _) => {
                return Err(CliError::CsvSchema {
                    row,
                    message: format!("trial {trial}: initial row must have `-` maneuvers"),
                });
            }
            (_, Some(m1), Some(m2)) => moves.push(JointManeuver { m1, m2 }),
            _ => {
                return Err(CliError::CsvSchema {
                    row,
                    message: format!("trial {trial}: non-initial rows need both maneuvers"),
                });
            }
        }
        states.push(GameState {
            ac1: AircraftState::new(raw.ac1[0], raw.ac1[1], v1, raw.ac1[2], raw.ac1[3]),
            ac2: AircraftState::new(raw.ac2[0], raw.ac2[1], v2, raw.ac2[2], raw.ac2[3]),
            k: i as u32,
        });
    }
    let outcome = rows.last().expect("nonempty group").1.outcome;
    Ok(TrialRecord {
        trial,
        moves,
        states,
        outcome,
        steps: (rows.len() - 1) as u32,
        step_seconds,
    })
}

/// Parse a trajectory CSV back into trial records. Speeds are not part of
/// the schema (they are constant per aircraft) and must be supplied.
pub fn parse_trials_csv(text: &str, v1: f64, v2: f64) -> Result<Vec<TrialRecord>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = reader.records().enumerate();
    let header = match rows.next() {
        Some((_, Ok(record))) => record,
        Some((_, Err(e))) => {
            return Err(CliError::CsvSchema { row: 0, message: e.to_string() });
        }
        None => {
            return Err(CliError::CsvSchema {
                row: 0,
                message: "empty trajectory: no header row".to_string(),
            });
        }
    };
    if header.iter().ne(TRIALS_HEADER) {
        return Err(CliError::CsvSchema {
            row: 0,
            message: format!(
                "header must be `{}`, got `{}`",
                TRIALS_HEADER.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut records = Vec::new();
    let mut group: Vec<(usize, RawRow)> = Vec::new();
    let mut seen: Vec<u32> = Vec::new();
    for (row, record) in rows {
        let record = record.map_err(|e| CliError::CsvSchema { row, message: e.to_string() })?;
        let raw = parse_row(&record, row)?;
        if let Some(current) = group.last().map(|(_, r)| r.trial) {
            if raw.trial != current {
                if seen.contains(&raw.trial) {
                    return Err(CliError::CsvSchema {
                        row,
                        message: format!("rows of trial {} are not contiguous", raw.trial),
                    });
                }
                records.push(build_record(&group, v1, v2)?);
                group.clear();
            }
        }
        if group.is_empty() {
            seen.push(raw.trial);
        }
        group.push((row, raw));
    }
    if group.is_empty() {
        return Err(CliError::CsvSchema {
            row: 0,
            message: "empty trajectory: no data rows".to_string(),
        });
    }
    records.push(build_record(&group, v1, v2)?);
    Ok(records)
}
