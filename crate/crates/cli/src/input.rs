//! Readers for the JSON input documents and subdivision scripts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::Value;
use transgress_core::euler::euler_cycle;
use transgress_core::linalg::Matrix;
use transgress_core::order::{ChainSelector, CoefficientSystem, FinitePoset};
use transgress_core::subdivision::SubdivisionScript;
use transgress_core::transgression::{CycleAssignment, TriangulationSystem};
use transgress_core::{Chain, Error as CoreError, ErrorClass, OrientedComplex, Rational, Simplex, Vertex};

use crate::error::{CliError, CliResult};

/// A file's text, kept for locating tokens in error messages.
pub struct Source {
  name: String,
  dir: PathBuf,
  text: String,
}

impl Source {
  pub fn read(path: &Path) -> CliResult<Self> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { file: path.display().to_string(), source })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Self { name: path.display().to_string(), dir, text })
  }

  fn resolve(&self, relative: &str) -> PathBuf { self.dir.join(relative) }

  pub fn json(&self) -> CliResult<Value> {
    serde_json::from_str(&self.text).map_err(|e| {
      let line = e.line().max(1);
      let text = self.text.lines().nth(line - 1).unwrap_or("");
      let start = e.column().saturating_sub(1).min(text.len());
      let token = token_at(text, start);
      CliError::Parse { file: self.name.clone(), line, token, message: strip_position(&e.to_string()) }
    })
  }

  fn line_of(&self, token: &str) -> Option<usize> {
    if token.is_empty() {
      return None;
    }
    let quoted = format!("\"{token}\"");
    let find = |needle: &str| self.text.lines().position(|l| l.contains(needle)).map(|i| i + 1);
    find(&quoted).or_else(|| find(token))
  }

  pub fn fail(&self, token: &str, message: impl Into<String>) -> CliError {
    CliError::Parse { file: self.name.clone(), line: self.line_of(token).unwrap_or(1), token: token.to_string(), message: message.into() }
  }

  fn fail_at(&self, line: usize, token: &str, message: impl Into<String>) -> CliError {
    CliError::Parse { file: self.name.clone(), line, token: token.to_string(), message: message.into() }
  }

  /// Input-class core errors become parse errors pointing at the first token of
  /// the message that occurs in this file; other classes pass through.
  pub fn core(&self, e: CoreError) -> CliError {
    if e.class() != ErrorClass::Input {
      return CliError::Core(e);
    }
    let message = e.to_string();
    let payload = match &e {
      CoreError::UnknownElement(s)
      | CoreError::VertexNotFound(s)
      | CoreError::SimplexNotFound(s)
      | CoreError::MalformedSimplex(s)
      | CoreError::VertexCollision(s) => Some(s.clone()),
      _ => None,
    };
    let candidates = payload.into_iter().chain(message.split_whitespace().map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()).to_string()));
    for token in candidates {
      if let Some(line) = self.line_of(&token) {
        return self.fail_at(line, &token, message);
      }
    }
    self.fail_at(1, &token_at(self.text.lines().next().unwrap_or(""), 0), message)
  }
}

fn token_at(line: &str, start: usize) -> String {
  let rest = line.get(start..).unwrap_or("").trim_start();
  let token: String = rest.chars().take_while(|c| !c.is_whitespace() && !matches!(c, ',' | ':' | ']' | '}')).collect();
  if token.is_empty() {
    rest.chars().next().map_or_else(|| "<end of input>".into(), String::from)
  } else {
    token
  }
}

fn strip_position(message: &str) -> String { message.split(" at line ").next().unwrap_or(message).to_string() }

pub fn read_json(path: &Path) -> CliResult<(Source, Value)> {
  let src = Source::read(path)?;
  let v = src.json()?;
  Ok((src, v))
}

fn field<'a>(src: &Source, v: &'a Value, key: &str) -> CliResult<&'a Value> {
  v.get(key).ok_or_else(|| src.fail(key, format!("missing field `{key}`")))
}

fn text<'a>(src: &Source, v: &'a Value, what: &str) -> CliResult<&'a str> {
  v.as_str().ok_or_else(|| src.fail(&v.to_string(), format!("expected a string for {what}")))
}

fn list<'a>(src: &Source, v: &'a Value, what: &str) -> CliResult<&'a Vec<Value>> {
  v.as_array().ok_or_else(|| src.fail(&v.to_string(), format!("expected a list for {what}")))
}

fn count(src: &Source, v: &Value, what: &str) -> CliResult<usize> {
  v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| src.fail(&v.to_string(), format!("expected a nonnegative integer for {what}")))
}

fn names(src: &Source, v: &Value, what: &str) -> CliResult<Vec<String>> {
  list(src, v, what)?.iter().map(|x| text(src, x, what).map(str::to_string)).collect()
}

pub fn rational(src: &Source, v: &Value) -> CliResult<Rational> {
  let raw = match v {
    Value::String(s) => s.clone(),
    Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
    other => return Err(src.fail(&other.to_string(), "expected a rational as \"p/q\" or an integer")),
  };
  Rational::from_str(raw.trim()).map_err(|_| src.fail(&raw, "malformed rational"))
}

/// A document given either inline or as a path relative to the referring file.
fn nested(src: &Source, v: &Value) -> CliResult<Option<(Source, Value)>> {
  match v {
    Value::String(path) => read_json(&src.resolve(path)).map(Some),
    _ => Ok(None),
  }
}

pub fn complex(src: &Source, v: &Value) -> CliResult<OrientedComplex> {
  if let Some((inner, value)) = nested(src, v)? {
    return complex(&inner, &value);
  }
  let vertices = match v.get("vertices") {
    Some(list) => names(src, list, "vertices")?,
    None => Vec::new(),
  };
  let mut simplices = Vec::new();
  for s in list(src, field(src, v, "simplices")?, "simplices")? {
    let vs = names(src, s, "a simplex")?;
    if vs.is_empty() {
      return Err(src.fail("[]", "empty simplex"));
    }
    simplices.push(Simplex::new(vs.iter().map(|n| Vertex::new(n))).map_err(|e| src.core(e))?);
  }
  OrientedComplex::with_vertices(vertices.iter().map(|n| Vertex::new(n)), simplices).map_err(|e| src.core(e))
}

pub fn poset(src: &Source, v: &Value) -> CliResult<FinitePoset> {
  if let Some((inner, value)) = nested(src, v)? {
    return poset(&inner, &value);
  }
  let elements = names(src, field(src, v, "elements")?, "elements")?;
  let mut covers = Vec::new();
  for pair in list(src, field(src, v, "covers")?, "covers")? {
    let ends = names(src, pair, "a covering pair")?;
    if ends.len() != 2 {
      return Err(src.fail(&pair.to_string(), "a covering pair has two elements"));
    }
    covers.push((ends[0].clone(), ends[1].clone()));
  }
  FinitePoset::new(&elements, &covers).map_err(|e| src.core(e))
}

pub fn system(src: &Source, v: &Value, p: &FinitePoset) -> CliResult<CoefficientSystem<Rational>> {
  let dims_v = field(src, v, "dims")?;
  let dims_obj = dims_v.as_object().ok_or_else(|| src.fail("dims", "expected an object of element dimensions"))?;
  if let Some(unknown) = dims_obj.keys().find(|k| p.index_of(k).is_err()) {
    return Err(src.fail(unknown, format!("unknown poset element {unknown}")));
  }
  let mut dims = Vec::with_capacity(p.len());
  for name in p.names() {
    dims.push(count(src, dims_obj.get(name).ok_or_else(|| src.fail("dims", format!("no dimension for element {name}")))?, "a dimension")?);
  }
  let mut maps = BTreeMap::new();
  let empty = Vec::new();
  let entries = match v.get("maps") {
    Some(m) => list(src, m, "maps")?,
    None => &empty,
  };
  for m in entries {
    let from_name = text(src, field(src, m, "from")?, "from")?;
    let to_name = text(src, field(src, m, "to")?, "to")?;
    let from = p.index_of(from_name).map_err(|e| src.core(e))?;
    let to = p.index_of(to_name).map_err(|e| src.core(e))?;
    let rows = list(src, field(src, m, "matrix")?, "matrix")?;
    if rows.len() != dims[to] {
      return Err(src.fail(to_name, format!("map {from_name}→{to_name} has {} rows, expected {}", rows.len(), dims[to])));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
      let entries = list(src, row, "a matrix row")?;
      if entries.len() != dims[from] {
        return Err(src.fail(&row.to_string(), format!("map {from_name}→{to_name} has a row of length {}, expected {}", entries.len(), dims[from])));
      }
      parsed.push(entries.iter().map(|x| rational(src, x)).collect::<CliResult<Vec<_>>>()?);
    }
    if maps.insert((from, to), Matrix::from_rows(dims[from], parsed)).is_some() {
      return Err(src.fail(to_name, format!("duplicate map {from_name}→{to_name}")));
    }
  }
  CoefficientSystem::new(p.clone(), dims, maps).map_err(|e| src.core(e))
}

pub fn selector(src: &Source, v: &Value, p: &FinitePoset) -> CliResult<ChainSelector> {
  let chains: Vec<Vec<String>> = list(src, field(src, v, "chains")?, "chains")?.iter().map(|c| names(src, c, "a chain")).collect::<CliResult<_>>()?;
  ChainSelector::from_names(p, &chains).map_err(|e| src.core(e))
}

/// Terms `{"simplex": [...], "coefficient": "p/q"}` in the given orientation.
pub fn chain(src: &Source, v: &Value, degree: usize) -> CliResult<Chain<Rational>> {
  let mut terms = Vec::new();
  for t in list(src, v, "chain terms")? {
    let vs = names(src, field(src, t, "simplex")?, "a simplex")?;
    if vs.len() != degree + 1 {
      return Err(src.fail(vs.first().map_or("[]", String::as_str), format!("expected a {degree}-simplex")));
    }
    terms.push((vs, rational(src, field(src, t, "coefficient")?)?));
  }
  Chain::from_oriented(degree, terms.into_iter().map(|(vs, c)| (vs.into_iter().map(|n| Vertex::new(&n)).collect::<Vec<_>>(), c))).map_err(|e| src.core(e))
}

pub fn script_text(name: &str, text: &str) -> CliResult<SubdivisionScript> {
  SubdivisionScript::parse(text).map_err(|e| script_error(name, text, e))
}

pub fn script(path: &Path) -> CliResult<SubdivisionScript> {
  let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { file: path.display().to_string(), source })?;
  script_text(&path.display().to_string(), &text)
}

/// Script errors arrive as `line N: ... at token 'x'`.
fn script_error(file: &str, text: &str, e: CoreError) -> CliError {
  let CoreError::Parse(message) = &e else { return CliError::Core(e) };
  let line = message.strip_prefix("line ").and_then(|r| r.split(':').next()).and_then(|n| n.parse().ok()).unwrap_or(1);
  let token = message.rsplit_once("token '").map(|(_, t)| t.trim_end_matches('\'').to_string()).unwrap_or_else(|| token_at(text.lines().nth(line - 1).unwrap_or(""), 0));
  let why = message.split_once(": ").map_or(message.as_str(), |(_, w)| w);
  let why = why.rsplit_once(" at token").map_or(why, |(w, _)| w);
  CliError::Parse { file: file.to_string(), line, token, message: why.to_string() }
}

/// A poset of triangulations: complexes per element (omitted ones are produced by
/// applying a script from a lower element) and a script per covering pair.
pub fn bundle(path: &Path) -> CliResult<(Source, TriangulationSystem<Rational>)> {
  let (src, v) = read_json(path)?;
  let p = poset(&src, field(&src, &v, "poset")?)?;
  let mut complexes: Vec<Option<OrientedComplex>> = vec![None; p.len()];
  if let Some(cs) = v.get("complexes") {
    let obj = cs.as_object().ok_or_else(|| src.fail("complexes", "expected an object of complexes"))?;
    for (name, c) in obj {
      let i = p.index_of(name).map_err(|_| src.fail(name, format!("unknown poset element {name}")))?;
      complexes[i] = Some(complex(&src, c)?);
    }
  }
  let mut scripts = BTreeMap::new();
  for s in list(&src, field(&src, &v, "subdivisions")?, "subdivisions")? {
    let from_name = text(&src, field(&src, s, "from")?, "from")?;
    let to_name = text(&src, field(&src, s, "to")?, "to")?;
    let from = p.index_of(from_name).map_err(|e| src.core(e))?;
    let to = p.index_of(to_name).map_err(|e| src.core(e))?;
    if !p.covers().contains(&(from, to)) {
      return Err(src.fail(to_name, format!("{from_name}→{to_name} is not a covering pair")));
    }
    let parsed = match (s.get("script"), s.get("moves")) {
      (Some(path), None) => script(&src.resolve(text(&src, path, "script")?))?,
      (None, Some(moves)) => {
        let lines = names(&src, moves, "moves")?;
        SubdivisionScript::parse(&lines.join("\n")).map_err(|e| match script_error(&src.name, &lines.join("\n"), e) {
          CliError::Parse { token, message, .. } => src.fail(&token, message),
          other => other,
        })?
      },
      _ => return Err(src.fail(to_name, "a subdivision needs exactly one of `script` or `moves`")),
    };
    scripts.insert((from, to), parsed);
  }
  for q in p.linear_extension() {
    if complexes[q].is_some() {
      continue;
    }
    let (&(from, _), script) = scripts
      .iter()
      .find(|(&(a, b), _)| b == q && complexes[a].is_some())
      .ok_or_else(|| src.fail(p.name(q), format!("no complex for element {} and no subdivision into it", p.name(q))))?;
    let fine = script.apply::<Rational>(complexes[from].as_ref().unwrap()).map_err(|e| src.core(e))?.fine().clone();
    complexes[q] = Some(fine);
  }
  let complexes = complexes.into_iter().map(Option::unwrap).collect();
  let tri = TriangulationSystem::from_scripts(p, complexes, &scripts).map_err(|e| src.core(e))?;
  Ok((src, tri))
}

/// `{"degree": i, "values": {element: chain terms or "euler"}}`.
pub fn assignment(path: &Path, tri: &TriangulationSystem<Rational>) -> CliResult<CycleAssignment<Rational>> {
  let (src, v) = read_json(path)?;
  let degree = count(&src, field(&src, &v, "degree")?, "degree")?;
  let obj = field(&src, &v, "values")?.as_object().ok_or_else(|| src.fail("values", "expected an object of cycles"))?;
  let p = tri.system.poset();
  if let Some(unknown) = obj.keys().find(|k| p.index_of(k).is_err()) {
    return Err(src.fail(unknown, format!("unknown poset element {unknown}")));
  }
  let mut values = Vec::with_capacity(p.len());
  for (i, name) in p.names().iter().enumerate() {
    let value = obj.get(name).ok_or_else(|| src.fail("values", format!("no cycle for element {name}")))?;
    let c = match value {
      Value::String(s) if s == "euler" => {
        if degree != 0 {
          return Err(src.fail("euler", "Euler cycles have degree 0"));
        }
        euler_cycle::<Rational>(&tri.complexes[i]).into_chain()
      },
      other => chain(&src, other, degree)?,
    };
    values.push(tri.coords(i, &c).map_err(|e| src.core(e))?);
  }
  Ok(CycleAssignment { degree, values })
}

pub fn base_cycle(path: &Path, tri: &TriangulationSystem<Rational>, base: usize, degree: usize) -> CliResult<Vec<Rational>> {
  let (src, v) = read_json(path)?;
  let c = chain(&src, field(&src, &v, "chain")?, degree)?;
  tri.coords(base, &c).map_err(|e| src.core(e))
}
