//! The line-oriented space document format.
//!
//! ```text
//! # a comment
//! space E
//! points a b c
//! open a b
//! ```
//!
//! The empty set and the full carrier are implicit. Rendering is canonical:
//! points as given, opens sorted by size then positionally, trivial opens
//! omitted.

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_WIDTH};
use crate::space::{FiniteSpace, ValidationMode};

pub const MAX_INPUT_BYTES: usize = 64 * 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDoc {
    pub name: String,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

fn tokens_of(line: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (col, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            if !current.is_empty() {
                out.push((start + 1, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = col;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((start + 1, current));
    }
    out
}

pub fn parse_space(text: &str) -> Result<SpaceDoc> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: format!("input exceeds {MAX_INPUT_BYTES} bytes"),
        });
    }
    let mut name: Option<String> = None;
    let mut points: Option<Vec<String>> = None;
    let mut opens: Vec<Vec<String>> = Vec::new();
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let body = match raw.find('#') {
            Some(h) => &raw[..h],
            None => raw,
        };
        let tokens = tokens_of(body);
        if tokens.is_empty() {
            continue;
        }
        let (kw_col, keyword) = &tokens[0];
        let args = &tokens[1..];
        match keyword.as_str() {
            "space" => {
                if name.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        col: *kw_col,
                        msg: "duplicate `space` line".into(),
                    });
                }
                if args.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        col: *kw_col,
                        msg: "`space` takes exactly one name".into(),
                    });
                }
                name = Some(args[0].1.clone());
            }
            "points" => {
                if points.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        col: *kw_col,
                        msg: "duplicate `points` line".into(),
                    });
                }
                if args.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        col: *kw_col,
                        msg: "`points` needs at least one label".into(),
                    });
                }
                let mut labels = Vec::with_capacity(args.len());
                for (_, label) in args {
                    if labels.contains(label) {
                        return Err(Error::DuplicateLabel {
                            label: label.clone(),
                            line: Some(line_no),
                        });
                    }
                    labels.push(label.clone());
                }
                points = Some(labels);
            }
            "open" => {
                let known = points.as_ref().ok_or(Error::Parse {
                    line: line_no,
                    col: *kw_col,
                    msg: "`open` before `points`".into(),
                })?;
                let mut labels = Vec::with_capacity(args.len());
                for (_, label) in args {
                    if !known.contains(label) {
                        return Err(Error::UnknownLabel {
                            label: label.clone(),
                            line: Some(line_no),
                        });
                    }
                    labels.push(label.clone());
                }
                opens.push(labels);
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    col: *kw_col,
                    msg: format!("expected `space`, `points`, or `open`, found `{other}`"),
                });
            }
        }
    }

    let name = name.ok_or(Error::Parse {
        line: last_line + 1,
        col: 1,
        msg: "missing `space` line".into(),
    })?;
    let points = points.ok_or(Error::Parse {
        line: last_line + 1,
        col: 1,
        msg: "missing `points` line".into(),
    })?;
    Ok(SpaceDoc {
        name,
        points,
        opens,
    })
}

/// Canonical rendering; trivial opens are omitted and duplicates collapse.
pub fn render_space(doc: &SpaceDoc) -> String {
    let index = |label: &str| {
        doc.points
            .iter()
            .position(|p| p == label)
            .expect("open labels must come from the point list")
    };
    let n = doc.points.len();
    let mut sets: Vec<Vec<usize>> = doc
        .opens
        .iter()
        .map(|labels| {
            let mut ids: Vec<usize> = labels.iter().map(|l| index(l)).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .filter(|ids| !ids.is_empty() && ids.len() != n)
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();

    let mut out = format!("space {}\npoints {}\n", doc.name, doc.points.join(" "));
    for ids in sets {
        let labels: Vec<&str> = ids.iter().map(|&i| doc.points[i].as_str()).collect();
        out.push_str(&format!("open {}\n", labels.join(" ")));
    }
    out
}

impl SpaceDoc {
    pub fn to_space(&self) -> Result<FiniteSpace> {
        let n = self.points.len();
        if n > MAX_WIDTH {
            return Err(Error::SizeLimitExceeded {
                what: "points",
                value: n,
                limit: MAX_WIDTH,
            });
        }
        for (i, label) in self.points.iter().enumerate() {
            if self.points[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                    line: None,
                });
            }
        }
        let mut family = Vec::with_capacity(self.opens.len());
        for labels in &self.opens {
            let mut s = PointSet::empty(n);
            for label in labels {
                let idx = self
                    .points
                    .iter()
                    .position(|p| p == label)
                    .ok_or(Error::UnknownLabel {
                        label: label.clone(),
                        line: None,
                    })?;
                s = s.with(idx);
            }
            family.push(s);
        }
        Ok(FiniteSpace::validate_topology(n, &family, ValidationMode::Strict)?
            .with_labels(self.points.clone()))
    }

    pub fn from_space(name: impl Into<String>, sp: &FiniteSpace) -> SpaceDoc {
        let points: Vec<String> = (0..sp.n()).map(|p| sp.label_of(p)).collect();
        let opens = sp
            .opens()
            .filter(|o| !o.is_empty() && !o.is_full())
            .map(|o| o.iter().map(|p| points[p].clone()).collect())
            .collect();
        SpaceDoc {
            name: name.into(),
            points,
            opens,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture() {
        let doc = parse_space("space E\npoints a b c\nopen a b\n").unwrap();
        assert_eq!(doc.name, "E");
        assert_eq!(doc.points, vec!["a", "b", "c"]);
        assert_eq!(doc.opens, vec![vec!["a".to_string(), "b".to_string()]]);
        let sp = doc.to_space().unwrap();
        assert_eq!(sp.open_count(), 3);
    }

    #[test]
    fn parses_without_open_lines() {
        let doc = parse_space("space I2\npoints x y\n").unwrap();
        let sp = doc.to_space().unwrap();
        assert_eq!(sp, FiniteSpace::indiscrete(2));
    }

    #[test]
    fn unknown_label_is_reported() {
        let err = parse_space("space B\npoints a\nopen a b\n").unwrap_err();
        match err {
            Error::UnknownLabel { label, line } => {
                assert_eq!(label, "b");
                assert_eq!(line, Some(3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicate_label_is_reported() {
        let err = parse_space("space B\npoints a a\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel { .. }));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let doc =
            parse_space("# header\nspace S\n\npoints x y # trailing\nopen x\n").unwrap();
        assert_eq!(doc.points, vec!["x", "y"]);
        assert_eq!(doc.opens, vec![vec!["x".to_string()]]);
    }

    #[test]
    fn missing_sections_are_parse_errors() {
        assert!(matches!(
            parse_space("points a b\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_space("space X\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_space("space X\nopen a\npoints a\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn render_is_canonical_and_round_trips() {
        let messy = "space E\npoints a b c\nopen b a\nopen a b\n";
        let doc = parse_space(messy).unwrap();
        let rendered = render_space(&doc);
        assert_eq!(rendered, "space E\npoints a b c\nopen a b\n");
        let again = parse_space(&rendered).unwrap();
        assert_eq!(render_space(&again), rendered);
        assert_eq!(parse_space(&render_space(&again)).unwrap(), again);
    }

    #[test]
    fn from_space_round_trips_through_text() {
        let sp = parse_space("space E\npoints a b c\nopen a b\n")
            .unwrap()
            .to_space()
            .unwrap();
        let doc = SpaceDoc::from_space("E", &sp);
        let text = render_space(&doc);
        let back = parse_space(&text).unwrap().to_space().unwrap();
        assert_eq!(back, sp);
    }

    #[test]
    fn oversized_input_is_rejected() {
        let huge = "x".repeat(MAX_INPUT_BYTES + 1);
        assert!(matches!(parse_space(&huge), Err(Error::Parse { .. })));
    }
}
