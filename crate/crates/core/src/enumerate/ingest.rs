use std::io::BufRead;

use thiserror::Error;

use crate::graph::{parse_graph6, Graph, Graph6Error};

/// A parsed record with its one-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestedGraph {
    pub line: usize,
    pub text: String,
    pub graph: Graph,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        text: String,
        #[source]
        source: Graph6Error,
    },
    #[error("line {line}: read failed: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
}

impl IngestError {
    pub fn line(&self) -> usize {
        match self {
            IngestError::Parse { line, .. } | IngestError::Io { line, .. } => *line,
        }
    }
}

/// Parse line-delimited graph6. Blank lines are skipped; a malformed line
/// yields an error item and the stream continues.
pub fn ingest_graph6_stream<R: BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<IngestedGraph, IngestError>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        let text = match line {
            Ok(t) => t,
            Err(source) => {
                return Some(Err(IngestError::Io {
                    line: line_no,
                    source,
                }))
            }
        };
        let text = text.trim_end_matches('\r').to_string();
        if text.is_empty() {
            return None;
        }
        Some(match parse_graph6(&text) {
            Ok(graph) => Ok(IngestedGraph {
                line: line_no,
                text,
                graph,
            }),
            Err(source) => Err(IngestError::Parse {
                line: line_no,
                text,
                source,
            }),
        })
    })
}
