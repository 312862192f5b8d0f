use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

/// Metrics for one command run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_size: Option<usize>,
    pub load_secs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score_secs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solve_secs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_rss_kb: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<ScoreSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynamic: Option<DynamicSummary>,
}

/// Distribution of per-node clique counts.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ScoreSummary {
    pub min: u64,
    pub max: u64,
    pub mean: f64,
    /// Nodes contained in at least one clique.
    pub covered: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DynamicSummary {
    pub ops: usize,
    pub op_errors: usize,
    pub initial_size: usize,
    pub final_index_size: usize,
    pub latency_p50_us: f64,
    pub latency_p90_us: f64,
    pub latency_p99_us: f64,
    pub latency_max_us: f64,
    pub total_update_secs: f64,
    pub size_trajectory: Vec<usize>,
}

pub fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

/// Nearest-rank quantile in microseconds; 0 for no samples.
pub fn quantile_us(latencies: &[Duration], q: f64) -> f64 {
    if latencies.is_empty() {
        return 0.0;
    }
    let mut sorted = latencies.to_vec();
    sorted.sort_unstable();
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1].as_secs_f64() * 1e6
}

/// Peak resident set size of this process, where the platform exposes it.
pub fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|line| line.strip_prefix("VmHWM:"))
        .and_then(|rest| rest.split_whitespace().next()?.parse().ok())
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let key = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{prefix}={}", joined.join(","));
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}={s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}={other}");
        }
    }
}

impl RunReport {
    /// One `key=value` line per field; nested fields use dotted keys.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        flatten(
            "",
            &serde_json::to_value(self).expect("report serializes"),
            &mut out,
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_values_skip_absent_fields() {
        let report = RunReport {
            command: "count".into(),
            k: Some(3),
            n: 4,
            tau: Some(2),
            ..RunReport::default()
        };
        let text = report.to_key_values();
        assert!(text.contains("command=count\n"));
        assert!(text.contains("tau=2\n"));
        assert!(!text.contains("solution_size"));
    }

    #[test]
    fn nested_and_array_fields() {
        let report = RunReport {
            dynamic: Some(DynamicSummary {
                size_trajectory: vec![2, 3],
                ..DynamicSummary::default()
            }),
            ..RunReport::default()
        };
        assert!(report
            .to_key_values()
            .contains("dynamic.size_trajectory=2,3\n"));
        let json: Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["dynamic"]["size_trajectory"][1], 3);
    }

    #[test]
    fn quantiles() {
        let lat: Vec<Duration> = (1..=100).map(Duration::from_micros).collect();
        assert_eq!(quantile_us(&lat, 0.5), 50.0);
        assert_eq!(quantile_us(&lat, 0.99), 99.0);
        assert_eq!(quantile_us(&lat, 1.0), 100.0);
        assert_eq!(quantile_us(&[], 0.5), 0.0);
    }
}
