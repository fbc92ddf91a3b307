//! Plain-text frame/model files.
//!
//! ```text
//! # binary chain with one modal step
//! worlds: w v
//! ri: w w
//! ri: v v
//! ri: w v
//! rm: w v
//! V p: v
//! ```
//!
//! One `worlds:` line first, then one relation pair per `ri:`/`rm:` line,
//! and `V atom: world...` valuation lines. `#` starts a comment.

use laxcal::kripke::{FiniteFrame, FiniteModel};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FrameFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frame file, line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FrameFileError {}

#[derive(Debug, Clone)]
pub struct FrameFile {
    pub world_names: Vec<String>,
    pub model: FiniteModel,
}

impl FrameFile {
    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.world_names.iter().position(|w| w == name)
    }
}

pub fn parse_frame_file(src: &str) -> Result<FrameFile, FrameFileError> {
    let err = |line: usize, message: String| FrameFileError { line, message };
    let mut world_names: Vec<String> = Vec::new();
    let mut ri: Vec<u32> = Vec::new();
    let mut rm: Vec<u32> = Vec::new();
    let mut valuation: BTreeMap<String, u32> = BTreeMap::new();
    let mut seen_worlds = false;

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| err(lineno, "expected `worlds:`, `ri:`, `rm:` or `V atom:`".into()))?;
        let head = head.trim();
        let fields: Vec<&str> = rest.split_whitespace().collect();
        let lookup = |name: &str| -> Result<usize, FrameFileError> {
            world_names
                .iter()
                .position(|w| w == name)
                .ok_or_else(|| err(lineno, format!("unknown world `{name}`")))
        };
        match head {
            "worlds" => {
                if seen_worlds {
                    return Err(err(lineno, "duplicate `worlds:` line".into()));
                }
                seen_worlds = true;
                for name in &fields {
                    if world_names.iter().any(|w| w == name) {
                        return Err(err(lineno, format!("duplicate world `{name}`")));
                    }
                    world_names.push((*name).to_string());
                }
                if world_names.is_empty() {
                    return Err(err(lineno, "at least one world is required".into()));
                }
                if world_names.len() > 32 {
                    return Err(err(lineno, "at most 32 worlds are supported".into()));
                }
                ri = vec![0; world_names.len()];
                rm = vec![0; world_names.len()];
            }
            "ri" | "rm" => {
                if !seen_worlds {
                    return Err(err(lineno, "`worlds:` must come first".into()));
                }
                if fields.len() != 2 {
                    return Err(err(lineno, format!("`{head}:` takes exactly two worlds")));
                }
                let from = lookup(fields[0])?;
                let to = lookup(fields[1])?;
                if head == "ri" {
                    ri[from] |= 1 << to;
                } else {
                    rm[from] |= 1 << to;
                }
            }
            _ if head == "V" || head.starts_with("V ") => {
                if !seen_worlds {
                    return Err(err(lineno, "`worlds:` must come first".into()));
                }
                let atom = head.strip_prefix('V').unwrap_or("").trim();
                if atom.is_empty() {
                    return Err(err(lineno, "valuation line needs an atom: `V p: ...`".into()));
                }
                let mut mask = 0u32;
                for name in &fields {
                    mask |= 1 << lookup(name)?;
                }
                valuation.insert(atom.to_string(), mask);
            }
            other => {
                return Err(err(lineno, format!("unknown directive `{other}:`")));
            }
        }
    }
    if !seen_worlds {
        return Err(err(1, "missing `worlds:` line".into()));
    }
    let frame = FiniteFrame::new(world_names.len(), ri, rm);
    Ok(FrameFile { world_names, model: FiniteModel { frame, valuation } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_two_world_model() {
        let src = "\
# example
worlds: w v
ri: w w
ri: v v
ri: w v
rm: w v
V p: v
V q:
";
        let file = parse_frame_file(src).unwrap();
        assert_eq!(file.world_names, vec!["w", "v"]);
        assert_eq!(file.model.frame.ri, vec![0b11, 0b10]);
        assert_eq!(file.model.frame.rm, vec![0b10, 0b00]);
        assert_eq!(file.model.valuation["p"], 0b10);
        assert_eq!(file.model.valuation["q"], 0);
        assert!(file.model.hereditary_ok());
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        let err = parse_frame_file("ri: a b\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_frame_file("worlds: w\nri: w v\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("unknown world"));
        let err = parse_frame_file("worlds: w\nxy: w w\n").unwrap_err();
        assert!(err.message.contains("unknown directive"));
    }
}
