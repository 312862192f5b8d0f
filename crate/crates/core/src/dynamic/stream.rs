use std::io::BufRead;
use std::time::{Duration, Instant};

use super::{DynamicState, UpdateKind, UpdateOp};
use crate::error::{Error, Result};

/// One update as written in a stream, with external node labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StreamOp {
    pub kind: UpdateKind,
    pub u: u64,
    pub v: u64,
}

/// Parses `+ u v` / `- u v` lines; `#` starts a comment line.
pub fn parse_update_stream<R: BufRead>(source: R) -> Result<Vec<StreamOp>> {
    let mut ops = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let [sign, a, b] = tokens[..] else {
            return Err(err(format!("expected `+ u v` or `- u v`, got {trimmed:?}")));
        };
        let kind = match sign {
            "+" => UpdateKind::Insert,
            "-" => UpdateKind::Delete,
            other => return Err(err(format!("unknown operation {other:?}"))),
        };
        let label = |tok: &str| {
            tok.parse::<u64>()
                .map_err(|_| err(format!("invalid node label {tok:?}")))
        };
        let (u, v) = (label(a)?, label(b)?);
        if u == v {
            return Err(err(format!("self-loop on {u}")));
        }
        ops.push(StreamOp { kind, u, v });
    }
    Ok(ops)
}

/// Per-operation measurements from [`replay`].
#[derive(Clone, Debug, Default)]
pub struct ReplayMetrics {
    pub latencies: Vec<Duration>,
    /// Solution size after each operation.
    pub sizes: Vec<usize>,
    /// Candidate count after each operation.
    pub index_sizes: Vec<usize>,
    /// Operations that could not be applied, by position in the stream.
    pub errors: Vec<(usize, String)>,
}

impl ReplayMetrics {
    pub fn total_time(&self) -> Duration {
        self.latencies.iter().sum()
    }
}

/// Applies `ops` in order. Operations naming unknown labels are recorded in
/// `errors` and skipped. With `verify`, the full state is checked after every
/// operation and the first inconsistency aborts the replay.
pub fn replay(state: &mut DynamicState, ops: &[StreamOp], verify: bool) -> Result<ReplayMetrics> {
    let mut metrics = ReplayMetrics::default();
    for (i, op) in ops.iter().enumerate() {
        let resolve = |label: u64| {
            state
                .graph()
                .node_of_label(label)
                .ok_or_else(|| format!("unknown node label {label}"))
        };
        let start = Instant::now();
        let outcome = match (resolve(op.u), resolve(op.v)) {
            (Ok(u), Ok(v)) => state
                .apply(UpdateOp {
                    kind: op.kind,
                    u,
                    v,
                })
                .map(|_| ())
                .map_err(|e| e.to_string()),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        metrics.latencies.push(start.elapsed());
        if let Err(message) = outcome {
            metrics.errors.push((i, message));
        }
        metrics.sizes.push(state.solution().len());
        metrics.index_sizes.push(state.index().len());
        if verify {
            state
                .verify()
                .map_err(|message| Error::Verification { op: i, message })?;
        }
    }
    Ok(metrics)
}
