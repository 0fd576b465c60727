//! Hypergraph file formats.
//!
//! - hMETIS-like text: a header `<#edges> <#vertices> [fmt]` followed by one
//!   line per edge of 1-based vertex ids. When the last digit of `fmt` is 1,
//!   each edge line starts with its weight. When the tens digit is 1, one
//!   vertex-weight line per vertex follows the edges; those weights are
//!   validated and discarded. Lines starting with `%` are comments.
//! - Benson dataset pair: a file of edge sizes (`*-nverts.txt`) and a file of
//!   the flattened 1-based vertex lists (`*-simplices.txt`), one integer per
//!   line.
//! - JSON instance: `{"n": .., "edges": [[ids]], "weights": [..]}` with 0-based
//!   ids.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::hypercore::Hypergraph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Hmetis,
    Benson,
    Json,
}

impl Format {
    /// `.json` is JSON, `*-nverts.txt` is a Benson pair, anything else is
    /// hMETIS-like.
    pub fn from_path(path: &Path) -> Format {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if name.ends_with(".json") {
            Format::Json
        } else if name.ends_with("-nverts.txt") {
            Format::Benson
        } else {
            Format::Hmetis
        }
    }
}

const HMETIS: &str = "hmetis";

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(HMETIS, line, format!("bad {what} {tok:?}")))
}

/// Parses hMETIS-like text. Vertex ids are shifted to 0-based.
pub fn parse_hmetis(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('%'));

    let (header_line, header) = loop {
        match lines.next() {
            Some((_, "")) => continue,
            Some(found) => break found,
            None => return Err(Error::parse(HMETIS, 1, "missing header")),
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 3 {
        return Err(Error::parse(
            HMETIS,
            header_line,
            "header must be `<#edges> <#vertices> [fmt]`",
        ));
    }
    let m = parse_usize(fields[0], header_line, "edge count")?;
    let n = parse_usize(fields[1], header_line, "vertex count")?;
    if n == 0 {
        return Err(Error::parse(HMETIS, header_line, "vertex count must be positive"));
    }
    let fmt = match fields.get(2) {
        None => 0,
        Some(tok) => match *tok {
            "0" | "00" => 0,
            "1" | "01" => 1,
            "10" => 10,
            "11" => 11,
            other => {
                return Err(Error::parse(
                    HMETIS,
                    header_line,
                    format!("unsupported fmt flag {other:?}"),
                ))
            }
        },
    };
    let edge_weights = fmt % 10 == 1;
    let vertex_weights = fmt / 10 == 1;

    let mut edges = Vec::with_capacity(m.min(1 << 20));
    let mut weights = Vec::with_capacity(m.min(1 << 20));
    let mut last_line = header_line;
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or_else(|| {
            Error::parse(
                HMETIS,
                last_line + 1,
                format!("expected {m} edge lines, found {}", edges.len()),
            )
        })?;
        last_line = lineno;
        let mut toks = line.split_whitespace();
        let w = if edge_weights {
            let tok = toks
                .next()
                .ok_or_else(|| Error::parse(HMETIS, lineno, "empty edge"))?;
            let w = tok
                .parse::<f64>()
                .map_err(|_| Error::parse(HMETIS, lineno, format!("bad edge weight {tok:?}")))?;
            if !w.is_finite() || w < 0.0 {
                return Err(Error::parse(HMETIS, lineno, format!("invalid edge weight {w}")));
            }
            w
        } else {
            1.0
        };
        let mut edge = Vec::new();
        for tok in toks {
            let id = parse_usize(tok, lineno, "vertex id")?;
            if id == 0 || id > n {
                return Err(Error::parse(
                    HMETIS,
                    lineno,
                    format!("vertex id {id} out of range 1..={n}"),
                ));
            }
            edge.push(id - 1);
        }
        if edge.is_empty() {
            return Err(Error::parse(HMETIS, lineno, "empty edge"));
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::parse(HMETIS, lineno, "duplicate vertex id in edge"));
        }
        edges.push(edge);
        weights.push(w);
    }
    if vertex_weights {
        for v in 0..n {
            let (lineno, line) = lines.next().ok_or_else(|| {
                Error::parse(HMETIS, last_line + 1, format!("missing weight for vertex {}", v + 1))
            })?;
            last_line = lineno;
            let mut toks = line.split_whitespace();
            match (toks.next(), toks.next()) {
                (Some(tok), None) if tok.parse::<f64>().is_ok_and(|w| w.is_finite() && w >= 0.0) => {}
                _ => return Err(Error::parse(HMETIS, lineno, "bad vertex weight line")),
            }
        }
    }
    for (lineno, line) in lines {
        if !line.is_empty() {
            return Err(Error::parse(HMETIS, lineno, "unexpected trailing content"));
        }
    }
    Hypergraph::new(n, edges, Some(weights))
}

/// Writes hMETIS-like text; the `1` fmt flag is emitted only when some
/// weight differs from one.
pub fn write_hmetis(h: &Hypergraph) -> String {
    let weighted = !h.has_unit_weights();
    let mut out = String::new();
    if weighted {
        let _ = writeln!(out, "{} {} 1", h.n_edges(), h.n_vertices());
    } else {
        let _ = writeln!(out, "{} {}", h.n_edges(), h.n_vertices());
    }
    for (edge, w) in h.edges().iter().zip(h.weights()) {
        let ids: Vec<String> = edge.iter().map(|v| (v + 1).to_string()).collect();
        if weighted {
            let _ = writeln!(out, "{} {}", w, ids.join(" "));
        } else {
            let _ = writeln!(out, "{}", ids.join(" "));
        }
    }
    out
}

fn parse_int_lines(text: &str, name: &str) -> Result<Vec<(usize, usize)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let tok = l.trim();
            tok.parse::<usize>()
                .map(|v| (i + 1, v))
                .map_err(|_| Error::parse(name, i + 1, format!("bad integer {tok:?}")))
        })
        .collect()
}

/// Parses a Benson `nverts`/`simplices` pair. When `n_vertices` is `None` the
/// vertex count is the largest id seen.
pub fn parse_benson(nverts: &str, simplices: &str, n_vertices: Option<usize>) -> Result<Hypergraph> {
    let sizes = parse_int_lines(nverts, "nverts")?;
    let ids = parse_int_lines(simplices, "simplices")?;
    let mut cursor = ids.iter();
    let mut edges = Vec::with_capacity(sizes.len());
    for &(lineno, size) in &sizes {
        if size == 0 {
            return Err(Error::parse("nverts", lineno, "empty edge"));
        }
        let mut edge = Vec::with_capacity(size.min(1024));
        for _ in 0..size {
            let &(id_line, id) = cursor.next().ok_or_else(|| {
                Error::parse("nverts", lineno, "edge sizes exceed the simplices list")
            })?;
            if id == 0 {
                return Err(Error::parse("simplices", id_line, "vertex ids are 1-based"));
            }
            if let Some(n) = n_vertices {
                if id > n {
                    return Err(Error::parse(
                        "simplices",
                        id_line,
                        format!("vertex id {id} out of range 1..={n}"),
                    ));
                }
            }
            if edge.contains(&(id - 1)) {
                return Err(Error::parse("simplices", id_line, "duplicate vertex id in edge"));
            }
            edge.push(id - 1);
        }
        edges.push(edge);
    }
    if let Some(&(lineno, _)) = cursor.next() {
        return Err(Error::parse("simplices", lineno, "ids left over after the last edge"));
    }
    let n = match n_vertices {
        Some(n) => n,
        None => edges.iter().flatten().map(|&v| v + 1).max().unwrap_or(0),
    };
    if n == 0 {
        return Err(Error::parse("nverts", 1, "no vertices"));
    }
    Hypergraph::unweighted(n, edges)
}

/// Writes the Benson pair `(nverts, simplices)`. Edge weights are not
/// representable; a weight-`k` edge (integer `k`) is written `k` times.
pub fn write_benson(h: &Hypergraph) -> Result<(String, String)> {
    let mut nverts = String::new();
    let mut simplices = String::new();
    for (edge, &w) in h.edges().iter().zip(h.weights()) {
        if w.fract() != 0.0 || w > 1e6 {
            return Err(Error::InvalidInput(format!(
                "weight {w} cannot be written as a Benson multiplicity"
            )));
        }
        for _ in 0..(w as u64) {
            let _ = writeln!(nverts, "{}", edge.len());
            for &v in edge {
                let _ = writeln!(simplices, "{}", v + 1);
            }
        }
    }
    Ok((nverts, simplices))
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

pub fn parse_instance_json(text: &str) -> Result<Hypergraph> {
    let raw: InstanceJson = serde_json::from_str(text)?;
    Hypergraph::new(raw.n, raw.edges, raw.weights)
}

/// JSON instance dump; `weights` is always written.
pub fn instance_json(h: &Hypergraph) -> String {
    let raw = InstanceJson {
        n: h.n_vertices(),
        edges: h.edges().to_vec(),
        weights: Some(h.weights().to_vec()),
    };
    serde_json::to_string(&raw).expect("instance serialisation is infallible")
}

/// Companion simplices path for a `*-nverts.txt` path.
pub fn benson_companion(nverts_path: &Path) -> PathBuf {
    let name = nverts_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = name.strip_suffix("-nverts.txt").unwrap_or(&name);
    nverts_path.with_file_name(format!("{stem}-simplices.txt"))
}

pub fn read_hypergraph(path: &Path, format: Format) -> Result<Hypergraph> {
    match format {
        Format::Hmetis => parse_hmetis(&std::fs::read_to_string(path)?),
        Format::Json => parse_instance_json(&std::fs::read_to_string(path)?),
        Format::Benson => {
            let nverts = std::fs::read_to_string(path)?;
            let simplices = std::fs::read_to_string(benson_companion(path))?;
            parse_benson(&nverts, &simplices, None)
        }
    }
}

pub fn write_hypergraph(path: &Path, h: &Hypergraph, format: Format) -> Result<()> {
    match format {
        Format::Hmetis => std::fs::write(path, write_hmetis(h))?,
        Format::Json => std::fs::write(path, instance_json(h))?,
        Format::Benson => {
            let (nverts, simplices) = write_benson(h)?;
            std::fs::write(path, nverts)?;
            std::fs::write(benson_companion(path), simplices)?;
        }
    }
    Ok(())
}
