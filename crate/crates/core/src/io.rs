//! Facet file formats.
//!
//! *Plain*: one facet per line, whitespace-separated vertex labels. `#` starts
//! a comment; blank lines are ignored.
//!
//! *JSON*: an object with a `"facets"` key holding an array of arrays of
//! string labels. Other keys are ignored. Labels must be nonempty and contain
//! neither whitespace nor `#`, so every JSON file has a plain equivalent.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::error::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FacetFormat {
    #[default]
    Plain,
    Json,
}

impl FacetFormat {
    /// `.json` files are JSON; anything else is plain.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => FacetFormat::Json,
            _ => FacetFormat::Plain,
        }
    }
}

impl FromStr for FacetFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(FacetFormat::Plain),
            "json" => Ok(FacetFormat::Json),
            other => Err(format!("unknown facet format `{other}` (expected plain or json)")),
        }
    }
}

impl fmt::Display for FacetFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FacetFormat::Plain => "plain",
            FacetFormat::Json => "json",
        })
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    /// Positions are 1-based; columns count characters.
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("facet {facet}: {message}")]
    Facet { facet: usize, message: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Complex(#[from] Error),
}

/// Parses the plain format.
pub fn parse_plain(text: &str) -> Result<SimplicialComplex, FormatError> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(code, _)| code);
        let mut facet: Vec<&str> = Vec::new();
        let mut columns: Vec<usize> = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let token_len = rest[start..]
                .find(char::is_whitespace)
                .unwrap_or(rest.len() - start);
            let token = &rest[start..start + token_len];
            let column = line[..offset + start].chars().count() + 1;
            if let Some(first) = facet.iter().position(|t| *t == token) {
                return Err(FormatError::Syntax {
                    line: n + 1,
                    column,
                    message: format!(
                        "vertex `{token}` repeated in facet (first at column {})",
                        columns[first]
                    ),
                });
            }
            facet.push(token);
            columns.push(column);
            offset += start + token_len;
            rest = &rest[start + token_len..];
        }
        if facet.len() > crate::complex::MAX_FACET_SIZE {
            return Err(FormatError::Syntax {
                line: n + 1,
                column: columns[0],
                message: format!(
                    "facet has {} vertices; at most {} are supported",
                    facet.len(),
                    crate::complex::MAX_FACET_SIZE
                ),
            });
        }
        if !facet.is_empty() {
            facets.push(facet);
        }
    }
    Ok(SimplicialComplex::from_facets(facets)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonFacets {
    facets: Vec<Vec<String>>,
}

/// Parses the JSON format.
pub fn parse_json(text: &str) -> Result<SimplicialComplex, FormatError> {
    let doc: JsonFacets = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: message.strip_suffix(&suffix).unwrap_or(&message).to_owned(),
        }
    })?;
    for (i, facet) in doc.facets.iter().enumerate() {
        for label in facet {
            if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '#') {
                return Err(FormatError::Facet {
                    facet: i,
                    message: format!("invalid vertex label {label:?}"),
                });
            }
        }
    }
    SimplicialComplex::from_facets(&doc.facets).map_err(|e| match e {
        Error::DuplicateVertex { facet, label } => FormatError::Facet {
            facet,
            message: format!("vertex `{label}` repeated in facet"),
        },
        other => other.into(),
    })
}

pub fn parse(text: &str, format: FacetFormat) -> Result<SimplicialComplex, FormatError> {
    match format {
        FacetFormat::Plain => parse_plain(text),
        FacetFormat::Json => parse_json(text),
    }
}

/// Reads a facet file; the format defaults to the one implied by the
/// extension.
pub fn read_path(path: &Path, format: Option<FacetFormat>) -> Result<SimplicialComplex, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, format.unwrap_or_else(|| FacetFormat::from_path(path)))
}

fn facet_labels(k: &SimplicialComplex) -> impl Iterator<Item = Vec<String>> + '_ {
    k.facets().iter().map(|f| k.face_labels(f))
}

/// One facet per line in canonical order; no header.
pub fn to_plain(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for facet in facet_labels(k) {
        out.push_str(&facet.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(k: &SimplicialComplex) -> String {
    let doc = JsonFacets {
        facets: facet_labels(k).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("facet lists serialize");
    s.push('\n');
    s
}

pub fn render(k: &SimplicialComplex, format: FacetFormat) -> String {
    match format {
        FacetFormat::Plain => to_plain(k),
        FacetFormat::Json => to_json(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_with_comments_and_blank_lines() {
        let k =
            parse_plain("# boundary of a tetrahedron\n0 1 2\n\n0 1 3 # trailing\n  0 2 3\n1\t2 3\n").unwrap();
        assert_eq!(k.face_counts(), vec![4, 6, 4]);
    }

    #[test]
    fn plain_duplicate_reports_position() {
        let err = parse_plain("a b c\n  x y x\n").unwrap_err();
        match err {
            FormatError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 7)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn plain_empty_file_is_the_empty_complex() {
        let k = parse_plain("").unwrap();
        assert_eq!(k.dim(), -1);
        let k = parse_plain("# nothing\n\n").unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn unicode_labels_keep_character_columns() {
        let err = parse_plain("α β α").unwrap_err();
        assert!(err.to_string().starts_with("1:5:"), "{err}");
        let k = parse_plain("α β γ").unwrap();
        assert_eq!(k.vertex_table().labels(), &["α", "β", "γ"]);
    }

    #[test]
    fn json_round_trip() {
        let k = parse_json(r#"{"facets": [["a","b"],["b","c"]], "note": "ignored"}"#).unwrap();
        assert_eq!(k.face_counts(), vec![3, 2]);
        assert_eq!(parse_json(&to_json(&k)).unwrap(), k);
        assert_eq!(parse_plain(&to_plain(&k)).unwrap(), k);
    }

    #[test]
    fn json_errors() {
        let err = parse_json("{\"facets\": [[\"a\",\n 1]]}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err:?}");
        assert!(matches!(
            parse_json(r#"{"faces": []}"#),
            Err(FormatError::Syntax { .. })
        ));
        assert!(matches!(
            parse_json(r#"{"facets": [["a b"]]}"#),
            Err(FormatError::Facet { facet: 0, .. })
        ));
        assert!(matches!(
            parse_json(r#"{"facets": [["a"], ["b","b"]]}"#),
            Err(FormatError::Facet { facet: 1, .. })
        ));
    }

    #[test]
    fn format_detection() {
        assert_eq!(FacetFormat::from_path(Path::new("x/t.JSON")), FacetFormat::Json);
        assert_eq!(FacetFormat::from_path(Path::new("t.facets")), FacetFormat::Plain);
        assert_eq!("json".parse::<FacetFormat>(), Ok(FacetFormat::Json));
        assert!("yaml".parse::<FacetFormat>().is_err());
    }
}
