//! JSON file formats for complexes and group presentations, and the relator word grammar.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::fox::{FreeWord, GroupPresentation};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::poly_text::parse_poly;
use crate::ring::{CoeffRing, RingSpec};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    variables: usize,
    coefficients: String,
    degrees: [i64; 2],
    ranks: Vec<usize>,
    #[serde(default)]
    boundary: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: Vec<String>,
    relators: Vec<String>,
    nu: BTreeMap<String, Vec<i64>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Line and column (1-based) of the first occurrence of `needle` in `src`.
fn locate(src: &str, needle: &str) -> (usize, usize) {
    match src.find(needle) {
        None => (1, 1),
        Some(off) => {
            let before = &src[..off];
            let line = before.matches('\n').count() + 1;
            let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, col)
        }
    }
}

/// Re-anchors a parse error inside an embedded string to its position in the file.
fn reanchor(src: &str, embedded: &str, context: &str, e: Error) -> Error {
    match e {
        Error::Parse { column, message, .. } => {
            let (line, col) = locate(src, &format!("\"{embedded}\""));
            Error::Parse { line, column: col + column, message: format!("{context}: {message}") }
        }
        other => other,
    }
}

/// Parses a complex document. Boundaries not listed are zero.
pub fn parse_complex(src: &str) -> Result<FreeComplex> {
    let f: ComplexFile = serde_json::from_str(src).map_err(json_error)?;
    let coeffs = CoeffRing::parse(&f.coefficients)?;
    let ring = RingSpec::new(coeffs, f.variables)?;
    let [lo, hi] = f.degrees;
    if hi < lo {
        return Err(Error::Shape(format!("degrees [{lo}, {hi}] are not ordered")));
    }
    if f.ranks.len() as i64 != hi - lo + 1 {
        return Err(Error::Shape(format!("{} ranks for degrees [{lo}, {hi}]", f.ranks.len())));
    }
    let mut bd = BTreeMap::new();
    for (key, rows) in &f.boundary {
        let i: i64 = key.trim().parse().map_err(|_| {
            let (line, column) = locate(src, &format!("\"{key}\""));
            Error::Parse { line, column, message: format!("boundary key {key:?} is not an integer degree") }
        })?;
        if i <= lo || i > hi {
            return Err(Error::DegreeOutOfRange { degree: i, lo: lo + 1, hi });
        }
        let cols = f.ranks[(i - lo) as usize];
        let mut parsed = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, s) in row.iter().enumerate() {
                let ctx = format!("boundary {i} entry ({}, {})", r + 1, c + 1);
                out.push(parse_poly(s, ring).map_err(|e| reanchor(src, s, &ctx, e))?);
            }
            parsed.push(out);
        }
        bd.insert(i, PolyMatrix::from_rows(ring, parsed, cols).map_err(|e| match e {
            Error::Shape(m) => Error::Shape(format!("boundary {i}: {m}")),
            other => other,
        })?);
    }
    FreeComplex::new(ring, lo, hi, f.ranks, bd)
}

/// Canonical document: every boundary listed, entries in canonical polynomial form.
pub fn format_complex(c: &FreeComplex) -> String {
    let boundary = c
        .boundary_map()
        .into_iter()
        .map(|(i, m)| (i.to_string(), (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.to_string()).collect()).collect()))
        .collect();
    let f = ComplexFile {
        variables: c.ring().nvars,
        coefficients: c.ring().coeffs.to_string(),
        degrees: [c.lo(), c.hi()],
        ranks: c.ranks().to_vec(),
        boundary,
    };
    serde_json::to_string_pretty(&f).expect("serializable") + "\n"
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: 1, column: at + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn relator(&mut self) -> Result<FreeWord> {
        let lhs = self.word()?;
        match self.peek() {
            None => Ok(lhs),
            Some('=') => {
                self.pos += 1;
                let rhs = self.word()?;
                match self.peek() {
                    None => Ok(lhs.concat(&rhs.inverse())),
                    Some(c) => self.err(self.pos, format!("unexpected '{c}'")),
                }
            }
            Some(c) => self.err(self.pos, format!("unexpected '{c}'")),
        }
    }

    fn word(&mut self) -> Result<FreeWord> {
        let mut w = FreeWord::default();
        loop {
            match self.peek() {
                Some(c) if c.is_alphanumeric() || c == '_' || c == '[' || c == '(' => {
                    let item = self.item()?;
                    w = w.concat(&item);
                }
                _ => return Ok(w),
            }
        }
    }

    /// An atom with an optional power; after juxtaposed letters like `ab^2`
    /// the power binds to the last letter.
    fn item(&mut self) -> Result<FreeWord> {
        let (head, base) = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(head.concat(&base));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<i64>() {
            Ok(n) if n != 0 => Ok(head.concat(&base.pow(n))),
            _ => self.err(start, "expected a nonzero integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<(FreeWord, FreeWord)> {
        let start = self.pos;
        let whole = |w: FreeWord| Ok((FreeWord::default(), w));
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                if self.peek() != Some(',') {
                    return self.err(self.pos, "expected ',' in commutator");
                }
                self.pos += 1;
                let v = self.word()?;
                if self.peek() != Some(']') {
                    return self.err(self.pos, "expected ']'");
                }
                self.pos += 1;
                whole(FreeWord::commutator(&u, &v))
            }
            Some('(') => {
                self.pos += 1;
                let u = self.word()?;
                if self.peek() != Some(')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                whole(u)
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let begin = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let ident: String = self.chars[begin..self.pos].iter().collect();
                if ident == "1" {
                    return whole(FreeWord::default());
                }
                if let Some(g) = self.names.iter().position(|n| *n == ident) {
                    return whole(FreeWord::new([(g, 1)]));
                }
                // juxtaposed one-letter generators, e.g. "aba"
                let letters: Option<Vec<(usize, i8)>> = ident
                    .chars()
                    .map(|ch| self.names.iter().position(|n| n.chars().count() == 1 && n.starts_with(ch)).map(|g| (g, 1)))
                    .collect();
                match letters {
                    Some(mut l) => {
                        let last = l.pop().expect("nonempty identifier");
                        Ok((FreeWord::new(l), FreeWord::new([last])))
                    }
                    None => self.err(begin, format!("unknown generator '{ident}'")),
                }
            }
            _ => self.err(start, "expected a generator, '[' or '('"),
        }
    }
}

/// Parses a relator: generator names, `^n` powers, `[u,v]` commutators,
/// parentheses, `1` for the empty word and an optional `u = v`.
pub fn parse_word(src: &str, names: &[String]) -> Result<FreeWord> {
    let mut p = WordParser { chars: src.chars().collect(), pos: 0, names };
    p.relator()
}

/// Canonical form: space-separated letters, inverses as `x^-1`, `1` for the empty word.
pub fn format_word(w: &FreeWord, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.letters()
        .iter()
        .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^-1", names[g]) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_name(n: &str) -> bool {
    !n.is_empty() && n != "1" && n.chars().all(|c| c.is_alphanumeric() || c == '_') && !n.chars().all(|c| c.is_ascii_digit())
}

pub fn parse_presentation(src: &str) -> Result<GroupPresentation> {
    let f: PresentationFile = serde_json::from_str(src).map_err(json_error)?;
    for (k, n) in f.generators.iter().enumerate() {
        if !check_name(n) || f.generators[..k].contains(n) {
            let (line, column) = locate(src, &format!("\"{n}\""));
            return Err(Error::Parse { line, column, message: format!("invalid or duplicate generator name {n:?}") });
        }
    }
    if let Some(extra) = f.nu.keys().find(|k| !f.generators.contains(k)) {
        return Err(Error::Usage(format!("nu given for unknown generator {extra:?}")));
    }
    let nu = f
        .generators
        .iter()
        .map(|n| f.nu.get(n).cloned().ok_or_else(|| Error::Usage(format!("nu missing for generator {n:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let relators = f
        .relators
        .iter()
        .enumerate()
        .map(|(k, s)| parse_word(s, &f.generators).map_err(|e| reanchor(src, s, &format!("relator {}", k + 1), e)))
        .collect::<Result<Vec<_>>>()?;
    GroupPresentation::new(f.generators, relators, nu)
}

pub fn format_presentation(p: &GroupPresentation) -> String {
    let f = PresentationFile {
        generators: p.names().to_vec(),
        relators: p.relators().iter().map(|w| format_word(w, p.names())).collect(),
        nu: p.names().iter().cloned().zip(p.nu().iter().cloned()).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable") + "\n"
}

/// Either input kind, told apart by its fields.
#[derive(Debug, Clone)]
pub enum Input {
    Complex(FreeComplex),
    Presentation(GroupPresentation),
}

pub fn parse_input(src: &str) -> Result<Input> {
    let v: serde_json::Value = serde_json::from_str(src).map_err(json_error)?;
    if v.get("generators").is_some() {
        Ok(Input::Presentation(parse_presentation(src)?))
    } else {
        Ok(Input::Complex(parse_complex(src)?))
    }
}

/// Polynomial strings of a list of polynomials.
pub fn poly_strings(ps: &[LaurentPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}
