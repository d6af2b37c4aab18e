//! JSON readers and writers for every input type. Rationals are strings
//! `"a/b"` (integers are also accepted on input), matrices are row-major,
//! subspaces are lists of columns.
//!
//! Readers collect every schema violation, each tagged with a JSON pointer,
//! and return nothing unless the whole document is valid.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::exact::{fmt_q, parse_q, Matrix, Subspace, Q};
use crate::mixedfilt::FilteredWDRep;
use crate::pi1::FreeTruncation;
use crate::selmer::{CurveSelmerInput, GCocycle, Label, PhiNLieDatum};
use crate::wdrep::WDRep;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    /// JSON pointer to the offending value.
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.path.is_empty() { "/" } else { &self.path };
        write!(f, "{p}: {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("{} schema error(s)", .0.len())]
    Schema(Vec<SchemaError>),
    /// Well-formed input rejected by the library.
    #[error("{0}")]
    Domain(String),
}

impl InputError {
    pub fn messages(&self) -> Vec<String> {
        match self {
            InputError::Schema(es) => es.iter().map(|e| e.to_string()).collect(),
            InputError::Domain(m) => vec![m.clone()],
        }
    }
}

fn domain(e: impl fmt::Display) -> InputError {
    InputError::Domain(e.to_string())
}

fn child(path: &str, key: &str) -> String {
    format!("{path}/{}", key.replace('~', "~0").replace('/', "~1"))
}

fn idx(path: &str, i: usize) -> String {
    format!("{path}/{i}")
}

#[derive(Default)]
struct Reader {
    errors: Vec<SchemaError>,
}

impl Reader {
    fn err<T>(&mut self, path: &str, msg: impl Into<String>) -> Option<T> {
        self.errors.push(SchemaError {
            path: path.to_string(),
            message: msg.into(),
        });
        None
    }

    fn finish<T>(self, v: Option<T>) -> Result<T, InputError> {
        match v {
            Some(v) if self.errors.is_empty() => Ok(v),
            _ => Err(InputError::Schema(self.errors)),
        }
    }

    fn object<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        match v.as_object() {
            Some(o) => Some(o),
            None => self.err(path, "expected an object"),
        }
    }

    fn required<'a>(&mut self, o: &'a Map<String, Value>, path: &str, key: &str) -> Option<&'a Value> {
        match o.get(key) {
            Some(v) => Some(v),
            None => self.err(&child(path, key), "missing required field"),
        }
    }

    fn array<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Vec<Value>> {
        match v.as_array() {
            Some(a) => Some(a),
            None => self.err(path, "expected an array"),
        }
    }

    fn rational(&mut self, v: &Value, path: &str) -> Option<Q> {
        match v {
            Value::String(s) => match parse_q(s) {
                Ok(q) => Some(q),
                Err(e) => self.err(path, e.to_string()),
            },
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_q(&n.to_string()).ok(),
            _ => self.err(path, "expected a rational string \"a/b\" or an integer"),
        }
    }

    fn integer(&mut self, v: &Value, path: &str) -> Option<BigInt> {
        let q = self.rational(v, path)?;
        if q.is_integer() {
            Some(q.to_integer())
        } else {
            self.err(path, "expected an integer")
        }
    }

    fn natural(&mut self, v: &Value, path: &str) -> Option<u64> {
        match v.as_u64() {
            Some(n) => Some(n),
            None => self.err(path, "expected a nonnegative integer"),
        }
    }

    fn modulus(&mut self, v: &Value, path: &str) -> Option<BigInt> {
        let z = self.integer(v, path)?;
        if z >= BigInt::from(2) {
            Some(z)
        } else {
            self.err(path, "expected an integer at least 2")
        }
    }

    fn vector(&mut self, v: &Value, path: &str, len: Option<usize>) -> Option<Vec<Q>> {
        let a = self.array(v, path)?;
        if let Some(n) = len {
            if a.len() != n {
                return self.err(path, format!("expected {n} entries, found {}", a.len()));
            }
        }
        let out: Vec<Option<Q>> = a.iter().enumerate().map(|(i, x)| self.rational(x, &idx(path, i))).collect();
        out.into_iter().collect()
    }

    /// Row-major matrix; `shape` fixes `(rows, cols)` when known.
    fn matrix(&mut self, v: &Value, path: &str, shape: Option<(usize, usize)>) -> Option<Matrix> {
        let a = self.array(v, path)?;
        let rows: Vec<Option<Vec<Q>>> = a.iter().enumerate().map(|(i, r)| self.vector(r, &idx(path, i), None)).collect();
        let rows: Vec<Vec<Q>> = rows.into_iter().collect::<Option<_>>()?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return self.err(path, "rows have different lengths");
        }
        if let Some((r, c)) = shape {
            if rows.len() != r || cols != c {
                return self.err(path, format!("expected a {r}x{c} matrix, found {}x{cols}", rows.len()));
            }
        }
        if rows.is_empty() {
            return Some(Matrix::zeros(0, shape.map_or(0, |s| s.1)));
        }
        Some(Matrix::from_rows(rows))
    }

    fn square(&mut self, v: &Value, path: &str, dim: Option<usize>) -> Option<Matrix> {
        let m = self.matrix(v, path, dim.map(|d| (d, d)))?;
        if m.is_square() {
            Some(m)
        } else {
            self.err(path, format!("expected a square matrix, found {}x{}", m.rows(), m.cols()))
        }
    }

    fn columns(&mut self, v: &Value, path: &str, dim: usize) -> Option<Subspace> {
        let a = self.array(v, path)?;
        let cols: Vec<Option<Vec<Q>>> = a.iter().enumerate().map(|(i, c)| self.vector(c, &idx(path, i), Some(dim))).collect();
        let cols: Vec<Vec<Q>> = cols.into_iter().collect::<Option<_>>()?;
        Some(Subspace::span(dim, &cols))
    }

    fn filtration(&mut self, v: &Value, path: &str, dim: usize) -> Option<BTreeMap<i64, Subspace>> {
        let o = self.object(v, path)?;
        let mut w = BTreeMap::new();
        let mut ok = true;
        for (k, s) in o {
            let p = child(path, k);
            let Ok(i) = k.trim().parse::<i64>() else {
                self.err::<()>(&p, "weight index must be an integer");
                ok = false;
                continue;
            };
            match self.columns(s, &p, dim) {
                Some(sub) => {
                    if w.insert(i, sub).is_some() {
                        self.err::<()>(&p, format!("weight index {i} given twice"));
                        ok = false;
                    }
                }
                None => ok = false,
            }
        }
        ok.then_some(w)
    }

    fn optional_dim(&mut self, o: &Map<String, Value>, path: &str) -> Option<Option<usize>> {
        match o.get("dim") {
            None => Some(None),
            Some(v) => self.natural(v, &child(path, "dim")).map(|d| Some(d as usize)),
        }
    }
}

fn rep_parts(r: &mut Reader, v: &Value) -> Option<(BigInt, Matrix, Matrix)> {
    let o = r.object(v, "")?;
    let dim = r.optional_dim(o, "")?;
    let q = r.required(o, "", "q").and_then(|x| r.modulus(x, "/q"));
    let phi = r.required(o, "", "phi").and_then(|x| r.square(x, "/phi", dim));
    let d = phi.as_ref().map(|m| m.rows()).or(dim);
    let n = r.required(o, "", "N").and_then(|x| r.square(x, "/N", d));
    Some((q?, phi?, n?))
}

/// `{"dim", "q", "phi", "N"}`, shape-checked only (axioms are not enforced).
pub fn read_wdrep_unchecked(v: &Value) -> Result<WDRep, InputError> {
    let mut r = Reader::default();
    let parts = rep_parts(&mut r, v);
    let (q, phi, n) = r.finish(parts)?;
    WDRep::unchecked(q, phi, n).map_err(domain)
}

pub fn read_wdrep(v: &Value) -> Result<WDRep, InputError> {
    let mut r = Reader::default();
    let parts = rep_parts(&mut r, v);
    let (q, phi, n) = r.finish(parts)?;
    WDRep::new(q, phi, n).map_err(domain)
}

/// WDRep fields plus `"W": {"-2": [[col], ...], ...}`.
pub fn read_filtered(v: &Value) -> Result<FilteredWDRep, InputError> {
    let mut r = Reader::default();
    let parts = rep_parts(&mut r, v);
    let w = match (v.as_object(), &parts) {
        (Some(o), Some((_, phi, _))) => r.required(o, "", "W").and_then(|x| r.filtration(x, "/W", phi.rows())),
        (Some(o), None) => {
            r.required(o, "", "W");
            None
        }
        _ => None,
    };
    let (q, phi, n) = r.finish(parts)?;
    let w = w.expect("reader succeeded");
    let rep = WDRep::new(q, phi, n).map_err(domain)?;
    FilteredWDRep::new(rep, w).map_err(domain)
}

/// `{"letters", "depth", "q", "eigenvalues", "N_pairs": [[from, to(, c)]], "K"}`;
/// returns the truncation and `K`.
pub fn read_pi1(v: &Value) -> Result<(FreeTruncation, Subspace), InputError> {
    let mut r = Reader::default();
    let parsed = (|| {
        let o = r.object(v, "")?;
        let m = r.required(o, "", "letters").and_then(|x| r.natural(x, "/letters"));
        let n = r.required(o, "", "depth").and_then(|x| r.natural(x, "/depth"));
        let q = r.required(o, "", "q").and_then(|x| r.modulus(x, "/q"));
        let eig = r.required(o, "", "eigenvalues").and_then(|x| r.vector(x, "/eigenvalues", m.map(|m| m as usize)));
        let mut pairs = Some(Vec::new());
        if let Some(ps) = o.get("N_pairs").and_then(|x| r.array(x, "/N_pairs")) {
            for (i, p) in ps.iter().enumerate() {
                let path = idx("/N_pairs", i);
                let entry = (|| {
                    let a = r.array(p, &path)?;
                    if a.len() != 2 && a.len() != 3 {
                        return r.err(&path, "expected [from, to] or [from, to, coefficient]");
                    }
                    let from = r.natural(&a[0], &idx(&path, 0));
                    let to = r.natural(&a[1], &idx(&path, 1));
                    let c = if a.len() == 3 { r.rational(&a[2], &idx(&path, 2)) } else { Some(Q::one()) };
                    let (from, to, c) = (from? as usize, to? as usize, c?);
                    if let Some(m) = m {
                        if from >= m as usize || to >= m as usize {
                            return r.err(&path, format!("letter index out of range for {m} letters"));
                        }
                    }
                    Some((from, to, c))
                })();
                match (entry, pairs.as_mut()) {
                    (Some(e), Some(ps)) => ps.push(e),
                    _ => pairs = None,
                }
            }
        }
        let (m, n) = (m?, n?);
        if m == 0 {
            return r.err("/letters", "need at least one letter");
        }
        if n == 0 {
            return r.err("/depth", "depth must be at least 1");
        }
        Some((m as usize, n as usize, q?, eig?, pairs?, o.get("K").cloned()))
    })();
    let (m, n, q, eig, pairs, k) = r.finish(parsed)?;
    let t = FreeTruncation::new(m, n, q, eig, &pairs).map_err(domain)?;
    let k = match k {
        None => Subspace::zero(t.dim()),
        Some(kv) => {
            let mut r = Reader::default();
            let s = r.columns(&kv, "/K", t.dim());
            r.finish(s)?
        }
    };
    Ok((t, k))
}

/// `{"dim", "p", "bracket": [[i, j, [coeffs]], ...], "phi", "N", "W", "F0"}`.
/// Each bracket entry sets `[e_i, e_j]` and, by antisymmetry, `[e_j, e_i]`.
pub fn read_datum(v: &Value) -> Result<PhiNLieDatum, InputError> {
    let mut r = Reader::default();
    let parsed = (|| {
        let o = r.object(v, "")?;
        let dim = r.required(o, "", "dim").and_then(|x| r.natural(x, "/dim"))? as usize;
        let p = r.required(o, "", "p").and_then(|x| r.modulus(x, "/p"));
        let phi = r.required(o, "", "phi").and_then(|x| r.square(x, "/phi", Some(dim)));
        let n = r.required(o, "", "N").and_then(|x| r.square(x, "/N", Some(dim)));
        let w = r.required(o, "", "W").and_then(|x| r.filtration(x, "/W", dim));
        let f0 = match o.get("F0") {
            None => Some(Subspace::zero(dim)),
            Some(x) => r.columns(x, "/F0", dim),
        };
        let mut br = Some(vec![vec![vec![Q::zero(); dim]; dim]; dim]);
        let mut seen = BTreeMap::new();
        if let Some(es) = o.get("bracket").and_then(|x| r.array(x, "/bracket")) {
            for (e, entry) in es.iter().enumerate() {
                let path = idx("/bracket", e);
                let got = (|| {
                    let a = r.array(entry, &path)?;
                    if a.len() != 3 {
                        return r.err(&path, "expected [i, j, [coefficients]]");
                    }
                    let i = r.natural(&a[0], &idx(&path, 0));
                    let j = r.natural(&a[1], &idx(&path, 1));
                    let c = r.vector(&a[2], &idx(&path, 2), Some(dim));
                    let (i, j, c) = (i? as usize, j? as usize, c?);
                    if i >= dim || j >= dim {
                        return r.err(&path, format!("basis index out of range for dimension {dim}"));
                    }
                    if i == j && c.iter().any(|x| !x.is_zero()) {
                        return r.err(&path, "[e_i, e_i] must be zero");
                    }
                    if let Some(prev) = seen.insert((i.min(j), i.max(j)), e) {
                        return r.err(&path, format!("pair ({i}, {j}) already given at /bracket/{prev}"));
                    }
                    Some((i, j, c))
                })();
                match (got, br.as_mut()) {
                    (Some((i, j, c)), Some(b)) => {
                        b[j][i] = c.iter().map(|x| -x).collect();
                        b[i][j] = c;
                    }
                    _ => br = None,
                }
            }
        }
        Some((p?, br?, phi?, n?, w?, f0?))
    })();
    let (p, br, phi, n, w, f0) = r.finish(parsed)?;
    PhiNLieDatum::new(p, br, phi, n, w, f0).map_err(domain)
}

/// `{"x"?, "v"?, "u"}`; missing vectors are zero.
pub fn read_cocycle(v: &Value, dim: usize) -> Result<GCocycle, InputError> {
    let mut r = Reader::default();
    let parsed = (|| {
        let o = r.object(v, "")?;
        let mut get = |k: &str| match o.get(k) {
            None => Some(vec![Q::zero(); dim]),
            Some(x) => r.vector(x, &child("", k), Some(dim)),
        };
        let (x, vv, u) = (get("x"), get("v"), get("u"));
        Some(GCocycle { x: x?, v: vv?, u: u? })
    })();
    r.finish(parsed)
}

/// `{"g", "g0", "n", "deg", "nu": [["u1", 1], ...]}`.
pub fn read_curve(v: &Value) -> Result<CurveSelmerInput, InputError> {
    let mut r = Reader::default();
    let parsed = (|| {
        let o = r.object(v, "")?;
        let mut nat = |k: &str| r.required(o, "", k).cloned().and_then(|x| r.natural(&x, &child("", k)));
        let (g, g0, n, deg) = (nat("g"), nat("g0"), nat("n"), nat("deg"));
        let mut nu = Some(Vec::new());
        if let Some(es) = o.get("nu").and_then(|x| r.array(x, "/nu")) {
            for (i, e) in es.iter().enumerate() {
                let path = idx("/nu", i);
                let got = (|| {
                    let a = r.array(e, &path)?;
                    if a.len() != 2 {
                        return r.err(&path, "expected [label, multiplicity]");
                    }
                    let l = match a[0].as_str().map(str::parse::<Label>) {
                        Some(Ok(l)) => Some(l),
                        _ => r.err(&idx(&path, 0), "expected a label: s, st, u<k> or u<k>^-1"),
                    };
                    let k = r.natural(&a[1], &idx(&path, 1));
                    Some((l?, k?))
                })();
                match (got, nu.as_mut()) {
                    (Some(x), Some(v)) => v.push(x),
                    _ => nu = None,
                }
            }
        }
        Some((g?, g0?, n?, deg?, nu?))
    })();
    let (g, g0, n, deg, nu) = r.finish(parsed)?;
    CurveSelmerInput::new(g, g0, n, deg, &nu).map_err(domain)
}

// Writers.

pub fn q_value(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn vec_value(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_value).collect())
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vec_value(r)).collect())
}

/// Columns of the echelon basis.
pub fn subspace_value(s: &Subspace) -> Value {
    Value::Array(s.basis_vecs().iter().map(|c| vec_value(c)).collect())
}

pub fn filtration_value(w: &BTreeMap<i64, Subspace>) -> Value {
    Value::Object(w.iter().map(|(i, s)| (i.to_string(), subspace_value(s))).collect())
}

pub fn wdrep_value(r: &WDRep) -> Value {
    json!({
        "dim": r.dim(),
        "q": r.q().to_string(),
        "phi": matrix_value(r.phi()),
        "N": matrix_value(r.n()),
    })
}

pub fn filtered_value(v: &FilteredWDRep) -> Value {
    let mut o = wdrep_value(v.rep());
    o["W"] = filtration_value(v.stored());
    o
}

pub fn datum_value(d: &PhiNLieDatum) -> Value {
    let sc = d.structure_constants();
    let mut br = Vec::new();
    for i in 0..d.dim() {
        for j in i + 1..d.dim() {
            if sc[i][j].iter().any(|c| !c.is_zero()) {
                br.push(json!([i, j, vec_value(&sc[i][j])]));
            }
        }
    }
    json!({
        "dim": d.dim(),
        "p": d.p().to_string(),
        "bracket": br,
        "phi": matrix_value(d.phi()),
        "N": matrix_value(d.n()),
        "W": filtration_value(d.stored_w()),
        "F0": subspace_value(d.f0()),
    })
}

pub fn curve_value(c: &CurveSelmerInput) -> Value {
    json!({
        "g": c.g,
        "g0": c.g0,
        "n": c.n,
        "deg": c.deg,
        "nu": c.nu.iter().map(|(l, k)| json!([l.to_string(), k])).collect::<Vec<_>>(),
    })
}

/// Copy of `v` with every rational string replaced by its nearest `f64`.
pub fn floatify(v: &Value) -> Value {
    match v {
        Value::String(s) => match parse_q(s) {
            Ok(q) if q.denom().is_positive() => json!(crate::exact::rational::to_f64(&q)),
            _ => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(floatify).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), floatify(x))).collect()),
        _ => v.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::selmer::examples::heisenberg_monodromy;

    fn paths(e: InputError) -> Vec<String> {
        match e {
            InputError::Schema(es) => es.into_iter().map(|e| e.path).collect(),
            InputError::Domain(m) => panic!("domain error {m}"),
        }
    }

    #[test]
    fn wdrep_errors_have_pointers() {
        let e = read_wdrep(&json!({"phi": [["1"]], "N": [["0"]]})).unwrap_err();
        assert_eq!(paths(e), vec!["/q"]);
        let e = read_wdrep(&json!({"q": "2", "phi": [["1", "0"]], "N": [["0"]]})).unwrap_err();
        assert!(paths(e).contains(&"/phi".to_string()));
        let e = read_wdrep(&json!({"q": "2", "phi": [["1/0"]], "N": [["0"]]})).unwrap_err();
        assert_eq!(paths(e), vec!["/phi/0/0"]);
        let e = read_wdrep(&json!({"q": 2, "phi": [["1"]], "N": [["0", "1"]]})).unwrap_err();
        assert_eq!(paths(e), vec!["/N"]);
    }

    #[test]
    fn domain_errors_are_separate() {
        let e = read_wdrep(&json!({"q": "2", "phi": [["1", "0"], ["0", "1"]], "N": [["0", "0"], ["1", "0"]]})).unwrap_err();
        assert!(matches!(e, InputError::Domain(_)));
        assert!(read_wdrep_unchecked(&json!({"q": "2", "phi": [["1", "0"], ["0", "1"]], "N": [["0", "0"], ["1", "0"]]})).is_ok());
    }

    #[test]
    fn filtered_round_trip() {
        let doc = json!({"q": "3", "phi": [["1", "0"], ["0", "1/9"]], "N": [["0", "0"], ["0", "0"]],
                         "W": {"-2": [["0", "1"]], "0": [["1", "0"], ["0", "1"]]}});
        let v = read_filtered(&doc).unwrap();
        assert_eq!(v.weights(), vec![-2, 0]);
        assert_eq!(read_filtered(&filtered_value(&v)).unwrap(), v);
        let e = read_filtered(&json!({"q": "3", "phi": [["1"]], "N": [["0"]], "W": {"x": [], "0": [["1", "2"]]}})).unwrap_err();
        assert_eq!(paths(e), vec!["/W/0/0", "/W/x"]);
    }

    #[test]
    fn datum_round_trip() {
        let d = heisenberg_monodromy(2).unwrap();
        assert_eq!(read_datum(&datum_value(&d)).unwrap(), d);
        let mut doc = datum_value(&d);
        doc["bracket"] = json!([[0, 1, ["0", "0", "1"]], [1, 0, ["0", "0", "-1"]]]);
        assert_eq!(paths(read_datum(&doc).unwrap_err()), vec!["/bracket/1"]);
    }

    #[test]
    fn pi1_and_curve() {
        let (t, k) = read_pi1(&json!({"letters": 2, "depth": 2, "q": "2", "eigenvalues": ["1", "1/2"], "N_pairs": [[0, 1]]})).unwrap();
        assert_eq!((t.dim(), k.dim()), (7, 0));
        let e = read_pi1(&json!({"letters": 2, "depth": 2, "q": "2", "eigenvalues": ["1"], "N_pairs": [[0, 5]]})).unwrap_err();
        assert_eq!(paths(e), vec!["/eigenvalues", "/N_pairs/0"]);
        let c = read_curve(&json!({"g": 1, "g0": 0, "n": 2, "deg": 1, "nu": [["u1", 1]]})).unwrap();
        assert_eq!(read_curve(&curve_value(&c)).unwrap(), c);
        let e = read_curve(&json!({"g": 1, "g0": 0, "n": 2, "nu": [["v", 1]]})).unwrap_err();
        assert_eq!(paths(e), vec!["/deg", "/nu/0/0"]);
    }

    #[test]
    fn floats_sit_beside_rationals() {
        let v = floatify(&json!({"a": ["1/4", "x"], "b": 3}));
        assert_eq!(v, json!({"a": [0.25, "x"], "b": 3}));
        assert_eq!(q_value(&q(-3)), json!("-3"));
    }
}
