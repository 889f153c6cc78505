//! Cover, point-set, and recipe files.
//!
//! JSON covers look like
//! `{"n":2,"field":{"p":5,"h":1,"modulus":[0,1]},"hyperplanes":[[0,1,0],...]}`
//! and point sets use a `"points"` key instead. The text form is a marker
//! line (`# hyperplanes` or `# points`, optional, hyperplanes by default), a
//! header `n p h c_0 .. c_h`, then one coordinate vector per line as
//! space-separated field element encodings. Blank lines and other `#` lines
//! are ignored.
//!
//! Writers always emit canonical vectors sorted by index, so reading and
//! rewriting a file produced here is byte-stable.

use std::fmt::Write as _;

use pgcover_core::constructions::{Kind, Recipe};
use pgcover_core::projective::{Hyperplane, ProjPoint};
use pgcover_core::{FieldSpec, Geometry, PartialCover, PointSet};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    /// `.txt` means text; anything else JSON.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("txt") => Format::Text,
            _ => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Hyperplanes,
    Points,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u32,
    pub h: u32,
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn from_spec(f: &FieldSpec) -> Self {
        FieldJson { p: f.p(), h: f.h(), modulus: f.modulus().to_vec() }
    }

    pub fn to_spec(&self) -> Result<FieldSpec> {
        Ok(FieldSpec::new(self.p, self.h, Some(&self.modulus))?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetJson {
    n: usize,
    field: FieldJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hyperplanes: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<u32>>>,
}

/// A parsed cover or point-set file: raw coordinate rows, not yet
/// normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFile {
    pub kind: SetKind,
    pub n: usize,
    pub field: FieldSpec,
    pub rows: Vec<Vec<u32>>,
}

impl SetFile {
    pub fn from_cover(geo: &Geometry, c: &PartialCover) -> Self {
        SetFile {
            kind: SetKind::Hyperplanes,
            n: geo.n(),
            field: geo.field().clone(),
            rows: c.iter().map(|i| geo.hyperplane(i).reps()).collect(),
        }
    }

    pub fn from_points(geo: &Geometry, b: &PointSet) -> Self {
        SetFile {
            kind: SetKind::Points,
            n: geo.n(),
            field: geo.field().clone(),
            rows: b.iter().map(|i| geo.point(i).reps()).collect(),
        }
    }

    pub fn geometry(&self) -> Result<Geometry> {
        Ok(Geometry::new(self.n, self.field.clone())?)
    }

    fn check_row(&self, i: usize, row: &[u32]) -> Result<()> {
        if row.len() != self.n + 1 {
            return Err(Error::Invalid(format!(
                "entry {}: expected {} coordinates, found {}",
                i + 1,
                self.n + 1,
                row.len()
            )));
        }
        Ok(())
    }

    pub fn to_cover(&self, geo: &Geometry) -> Result<PartialCover> {
        if self.kind != SetKind::Hyperplanes {
            return Err(Error::Invalid("expected a hyperplane set, found a point set".into()));
        }
        let mut v = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            self.check_row(i, row)?;
            let h = Hyperplane::from_reps(geo.field(), row).map_err(|e| Error::Invalid(format!("entry {}: {e}", i + 1)))?;
            v.push(h);
        }
        Ok(PartialCover::from_elements(geo, &v)?)
    }

    pub fn to_points(&self, geo: &Geometry) -> Result<PointSet> {
        if self.kind != SetKind::Points {
            return Err(Error::Invalid("expected a point set, found a hyperplane set".into()));
        }
        let mut v = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            self.check_row(i, row)?;
            let p = ProjPoint::from_reps(geo.field(), row).map_err(|e| Error::Invalid(format!("entry {}: {e}", i + 1)))?;
            v.push(p);
        }
        Ok(PointSet::from_elements(geo, &v)?)
    }

    /// Same rows, other kind.
    pub fn dual(&self) -> SetFile {
        let kind = match self.kind {
            SetKind::Hyperplanes => SetKind::Points,
            SetKind::Points => SetKind::Hyperplanes,
        };
        SetFile { kind, ..self.clone() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let (hyperplanes, points) = match self.kind {
                    SetKind::Hyperplanes => (Some(self.rows.clone()), None),
                    SetKind::Points => (None, Some(self.rows.clone())),
                };
                let j = SetJson { n: self.n, field: FieldJson::from_spec(&self.field), hyperplanes, points };
                let mut s = serde_json::to_string(&j).expect("plain data serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                s.push_str(match self.kind {
                    SetKind::Hyperplanes => "# hyperplanes\n",
                    SetKind::Points => "# points\n",
                });
                let _ = write!(s, "{} {} {}", self.n, self.field.p(), self.field.h());
                for c in self.field.modulus() {
                    let _ = write!(s, " {c}");
                }
                s.push('\n');
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(u32::to_string).collect();
                    s.push_str(&line.join(" "));
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_set(src: &str) -> Result<(SetFile, Format)> {
    if src.trim_start().starts_with('{') {
        parse_set_json(src).map(|f| (f, Format::Json))
    } else {
        parse_set_text(src).map(|f| (f, Format::Text))
    }
}

fn parse_set_json(src: &str) -> Result<SetFile> {
    let j: SetJson = serde_json::from_str(src)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: strip_position(&e.to_string()) })?;
    let field = j.field.to_spec()?;
    let (kind, rows) = match (j.hyperplanes, j.points) {
        (Some(h), None) => (SetKind::Hyperplanes, h),
        (None, Some(p)) => (SetKind::Points, p),
        _ => return Err(Error::Invalid("exactly one of \"hyperplanes\" and \"points\" is required".into())),
    };
    Ok(SetFile { kind, n: j.n, field, rows })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn parse_set_text(src: &str) -> Result<SetFile> {
    let mut kind = SetKind::Hyperplanes;
    let mut header: Option<(usize, FieldSpec)> = None;
    let mut rows = Vec::new();
    let mut seen_content = false;
    for (ln, line) in src.lines().enumerate() {
        let line_no = ln + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if !seen_content {
                match comment.trim() {
                    "points" => kind = SetKind::Points,
                    "hyperplanes" => kind = SetKind::Hyperplanes,
                    _ => {}
                }
            }
            continue;
        }
        seen_content = true;
        let nums = parse_numbers(line, line_no)?;
        match &header {
            None => {
                if nums.len() < 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        column: line.len() + 1,
                        message: "header needs `n p h c_0 .. c_h`".into(),
                    });
                }
                let (n, p, h) = (nums[0].1 as usize, nums[1].1, nums[2].1);
                let modulus: Vec<u32> = nums[3..].iter().map(|x| x.1).collect();
                let field = FieldSpec::new(p, h, Some(&modulus))
                    .map_err(|e| Error::Parse { line: line_no, column: nums[1].0, message: e.to_string() })?;
                header = Some((n, field));
            }
            Some((n, field)) => {
                if nums.len() != n + 1 {
                    let column = nums.get(n + 1).map_or(line.len() + 1, |x| x.0);
                    return Err(Error::Parse {
                        line: line_no,
                        column,
                        message: format!("expected {} coordinates, found {}", n + 1, nums.len()),
                    });
                }
                if let Some(bad) = nums.iter().find(|x| x.1 >= field.q()) {
                    return Err(Error::Parse {
                        line: line_no,
                        column: bad.0,
                        message: format!("{} is not an element of GF({})", bad.1, field.q()),
                    });
                }
                if nums.iter().all(|x| x.1 == 0) {
                    return Err(Error::Parse { line: line_no, column: 1, message: "zero vector".into() });
                }
                rows.push(nums.into_iter().map(|x| x.1).collect());
            }
        }
    }
    let (n, field) = header.ok_or(Error::Parse { line: 1, column: 1, message: "missing header".into() })?;
    Ok(SetFile { kind, n, field, rows })
}

/// Unsigned integers of a line with their 1-based columns.
fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    let mut col = 0;
    for tok in line.split_whitespace() {
        let start = line[col..].find(tok).map(|i| i + col).unwrap_or(col);
        col = start + tok.len();
        let v = tok.parse::<u32>().map_err(|_| Error::Parse {
            line: line_no,
            column: start + 1,
            message: format!("`{tok}` is not a non-negative integer"),
        })?;
        out.push((start + 1, v));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeJson {
    pub kind: String,
    pub n: usize,
    pub field: FieldJson,
    pub a: usize,
    pub seed: u64,
}

impl RecipeJson {
    pub fn from_recipe(r: &Recipe) -> Self {
        RecipeJson {
            kind: r.kind.name().to_string(),
            n: r.n,
            field: FieldJson::from_spec(&r.field),
            a: r.a,
            seed: r.seed,
        }
    }

    pub fn to_recipe(&self) -> Result<Recipe> {
        let kind = Kind::from_name(&self.kind)
            .ok_or_else(|| Error::Invalid(format!("unknown construction kind `{}`", self.kind)))?;
        Ok(Recipe::new(kind, self.n, self.field.to_spec()?, self.a, self.seed))
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(src: &str) -> Result<Self> {
        serde_json::from_str(src)
            .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: strip_position(&e.to_string()) })
    }
}
