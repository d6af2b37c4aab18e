//! Verb implementations: input document in, payload and summary out.

use std::collections::BTreeMap;

use mixedwd::exact::{parse_q, Q};
use mixedwd::json::{
    matrix_value, read_cocycle, read_curve, read_datum, read_filtered, read_pi1, read_wdrep_unchecked, subspace_value,
    vec_value,
};
use mixedwd::mixedfilt::cg::{clebsch_gordan, verify_clebsch_gordan};
use mixedwd::mixedfilt::ml2::{ml2_act, ML2Element};
use mixedwd::mixedfilt::{canonical_splitting, structure_decompose};
use mixedwd::pi1::{lyndon_count, lyndon_words};
use mixedwd::selmer::{curve_selmer_dim, curve_selmer_oracle, normalize_f, normalize_g, selmer_dims, vge};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::{Failure, Output};

fn weight_map(it: impl IntoIterator<Item = (i64, usize)>) -> Value {
    Value::Object(it.into_iter().map(|(i, d)| (i.to_string(), json!(d))).collect::<Map<_, _>>())
}

fn rational_flag(name: &str, s: &str) -> Result<Q, Failure> {
    parse_q(s).map_err(|e| Failure::input(format!("--{name}: {e}")))
}

pub fn check(doc: &Value) -> Result<Output, Failure> {
    let rep = read_wdrep_unchecked(doc)?;
    let ax = rep.check_axioms();
    let mut payload = json!({
        "dim": rep.dim(),
        "q": rep.q().to_string(),
        "axioms": {
            "invertible": ax.invertible,
            "nilpotent": ax.nilpotent,
            "commutation": ax.commutation,
        },
    });
    if !ax.ok() {
        return Err(Failure {
            code: 1,
            diagnostics: ax.violations,
            payload,
        });
    }
    let ws = rep.weight_spaces().map_err(Failure::domain)?;
    payload["weights"] = weight_map(ws.parts.iter().map(|(&i, s)| (i, s.dim())));
    payload["unclassified_dim"] = json!(ws.unclassified.dim());
    payload["frobenius_semisimple"] = json!(rep.is_frobenius_semisimple());
    let summary = format!(
        "dim {}, weights {:?}, Frobenius {}semisimple",
        rep.dim(),
        ws.parts.iter().map(|(i, s)| (*i, s.dim())).collect::<Vec<_>>(),
        if rep.is_frobenius_semisimple() { "" } else { "not " }
    );
    if !ws.unclassified.is_zero() {
        return Err(Failure {
            code: 1,
            diagnostics: vec![format!("{} dimensions have eigenvalues that are not Weil numbers", ws.unclassified.dim())],
            payload,
        });
    }
    Ok(Output { payload, summary })
}

pub fn analyze(doc: &Value) -> Result<Output, Failure> {
    let v = read_filtered(doc)?;
    let cert = v.check_mixed().map_err(Failure::domain)?;
    let pieces: Vec<Value> = cert
        .pieces
        .iter()
        .map(|c| {
            json!({
                "weight": c.weight,
                "pure": c.pure,
                "unclassified_dim": c.unclassified_dim,
                "steps": c.steps.iter().map(|s| json!({
                    "j": s.j, "dim_upper": s.dim_upper, "dim_lower": s.dim_lower, "rank": s.rank,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let fs = v.rep().is_frobenius_semisimple();
    let gfs = v.graded().rep().is_frobenius_semisimple();
    let payload = json!({
        "weights": v.weights(),
        "gr_dims": weight_map(v.pieces().iter().map(|p| (p.weight, p.dim()))),
        "mixed": cert.mixed,
        "pieces": pieces,
        "frobenius_semisimple": fs,
        "graded_frobenius_semisimple": gfs,
    });
    if !cert.mixed {
        return Err(Failure {
            code: 1,
            diagnostics: vec![format!("not mixed: graded pieces of weight {:?} are not pure", cert.failing())],
            payload,
        });
    }
    let summary = format!("mixed, weights {:?}, Frobenius semisimple {fs} (graded {gfs})", v.weights());
    Ok(Output { payload, summary })
}

pub fn split(doc: &Value) -> Result<Output, Failure> {
    let v = read_filtered(doc)?;
    let s = canonical_splitting(&v).map_err(Failure::domain)?;
    let lifts: Map<String, Value> = s.weights.iter().map(|&i| (i.to_string(), matrix_value(&s.lift(i)))).collect();
    let eq = s.is_n_equivariant(&v);
    Ok(Output {
        payload: json!({
            "weights": s.weights,
            "matrix": matrix_value(&s.matrix),
            "lifts": lifts,
            "n_equivariant": eq,
        }),
        summary: format!("splitting over weights {:?}, N-equivariant {eq}", s.weights),
    })
}

pub fn decompose(doc: &Value) -> Result<Output, Failure> {
    let v = read_filtered(doc)?;
    let sd = structure_decompose(&v).map_err(Failure::domain)?;
    let comps: Map<String, Value> = sd.components.iter().map(|((i, j), s)| (format!("({i},{j})"), json!(s.dim()))).collect();
    let blocks: Vec<Value> = sd
        .blocks
        .iter()
        .map(|b| {
            json!({
                "i": b.i,
                "j": b.j,
                "multiplicity": b.basis.cols(),
                "offset": b.offset,
                "basis": subspace_value(&mixedwd::exact::Subspace::col_span(&b.basis)),
            })
        })
        .collect();
    let summary = sd.blocks.iter().map(|b| format!("V^({},{}) ⊗ std_{}: {}", b.i, b.j, b.j, b.basis.cols())).collect::<Vec<_>>().join("\n");
    Ok(Output {
        payload: json!({
            "components": comps,
            "blocks": blocks,
            "embedding": matrix_value(&sd.embedding),
            "inverse": matrix_value(&sd.inverse),
        }),
        summary,
    })
}

pub fn cg(j1: usize, j2: usize, q: &str) -> Result<Output, Failure> {
    let q: BigInt = q.parse().map_err(|_| Failure::input(format!("--q: {q:?} is not an integer")))?;
    if !mixedwd::wdrep::is_prime_power(&q) {
        return Err(Failure::input(format!("--q: {q} is not a prime power")));
    }
    let gens = clebsch_gordan(j1, j2);
    let ok = verify_clebsch_gordan(j1, j2, &q);
    let summands: Vec<Value> = gens
        .iter()
        .map(|(r, g)| json!({"r": r, "j": j1 + j2 - 2 * r, "twist": r, "generator": vec_value(g)}))
        .collect();
    let payload = json!({"j1": j1, "j2": j2, "summands": summands, "verified": ok});
    if !ok {
        return Err(Failure {
            code: 1,
            diagnostics: vec!["generators do not decompose the tensor product".into()],
            payload,
        });
    }
    let summary = gens.iter().map(|(r, _)| format!("std_{}({r})", j1 + j2 - 2 * r)).collect::<Vec<_>>().join(" ⊕ ");
    Ok(Output { payload, summary })
}

pub fn ml2(doc: &Value, entries: [&String; 5]) -> Result<Output, Failure> {
    let names = ["a", "b", "c", "d", "sqrt-det"];
    let mut xs = Vec::new();
    for (n, s) in names.iter().zip(entries) {
        xs.push(rational_flag(n, s)?);
    }
    let m = ML2Element::new(xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone(), xs[4].clone()).map_err(|e| Failure::input(e.to_string()))?;
    let v = read_filtered(doc)?;
    let a = ml2_act(&m, &v).map_err(Failure::domain)?;
    Ok(Output {
        payload: json!({"matrix": matrix_value(&a)}),
        summary: format!("{}x{} action matrix", a.rows(), a.cols()),
    })
}

pub fn pi1_build(doc: &Value) -> Result<Output, Failure> {
    let (t, k) = read_pi1(doc)?;
    let v = t.weight_filtration(&k).map_err(Failure::domain)?;
    let cert = v.check_mixed().map_err(Failure::domain)?;
    let prim = t.primitive_dims();
    let lyn: Vec<String> = (1..=t.depth() as u64).map(|i| lyndon_count(&BigInt::from(t.letters()), i).to_string()).collect();
    let fs = v.rep().is_frobenius_semisimple();
    let payload = json!({
        "dim": t.dim(),
        "W": mixedwd::json::filtration_value(v.stored()),
        "weights": v.weights(),
        "gr_dims": weight_map(v.pieces().iter().map(|p| (p.weight, p.dim()))),
        "mixed": cert.mixed,
        "frobenius_semisimple": fs,
        "primitive_dims": prim,
        "lyndon_counts": lyn,
    });
    if !cert.mixed {
        return Err(Failure {
            code: 1,
            diagnostics: vec![format!("not mixed: graded pieces of weight {:?} are not pure", cert.failing())],
            payload,
        });
    }
    Ok(Output {
        payload,
        summary: format!("dim {}, mixed, Frobenius semisimple {fs}, primitives by degree {prim:?}", t.dim()),
    })
}

pub fn selmer(doc: &Value, deg: usize) -> Result<Output, Failure> {
    let d = read_datum(doc)?;
    let s = selmer_dims(&d, deg).map_err(Failure::domain)?;
    let vg = vge(&d).map_err(Failure::domain)?;
    Ok(Output {
        payload: json!({
            "dim_e": s.dim_e,
            "dim_f": s.dim_f,
            "dim_g": s.dim_g,
            "hodge": s.hodge,
            "vge": subspace_value(&vg.space),
            "vge_phi_fixed": subspace_value(&vg.phi_fixed),
            "graded_bk": s.graded_bk,
        }),
        summary: format!("dim H_e = dim H_f = {}, dim H_g = {}", s.dim_f, s.dim_g),
    })
}

pub fn normalize(doc: &Value, cocycle: &Value, crystalline: bool) -> Result<Output, Failure> {
    let d = read_datum(doc)?;
    let c = read_cocycle(cocycle, d.dim())?;
    if crystalline {
        let w = normalize_f(&d, &c.u).map_err(Failure::domain)?;
        return Ok(Output {
            payload: json!({"w": vec_value(&w)}),
            summary: "u.w = 1".into(),
        });
    }
    let nf = normalize_g(&d, &c.v, &c.u).map_err(Failure::domain)?;
    Ok(Output {
        payload: json!({"v0": vec_value(&nf.v0), "w": vec_value(&nf.w)}),
        summary: "(v, u).w = (v0, 1)".into(),
    })
}

pub fn curve_doc(g: Option<u64>, g0: u64, n: u64, deg: u64, nu: &[String]) -> Result<Value, Failure> {
    let g = g.ok_or_else(|| Failure::input("curve-dim needs --g or --input"))?;
    let mut pairs = Vec::new();
    for s in nu {
        let (l, k) = s.split_once('=').ok_or_else(|| Failure::input(format!("--nu {s:?}: expected LABEL=MULTIPLICITY")))?;
        let k: u64 = k.parse().map_err(|_| Failure::input(format!("--nu {s:?}: bad multiplicity")))?;
        pairs.push(json!([l, k]));
    }
    Ok(json!({"g": g, "g0": g0, "n": n, "deg": deg, "nu": pairs}))
}

pub fn curve_dim(doc: &Value, oracle: bool) -> Result<Output, Failure> {
    let c = read_curve(doc)?;
    let (ef, g) = curve_selmer_dim(&c);
    let mut payload = json!({"dim_g": g, "dim_ef": ef});
    let mut summary = format!("dim H_e = dim H_f = {ef}, dim H_g = {g}");
    if oracle {
        let o = curve_selmer_oracle(&c);
        payload["oracle_dim_g"] = json!(o);
        summary.push_str(&format!(" (oracle {o})"));
        if o != g {
            return Err(Failure {
                code: 1,
                diagnostics: vec![format!("closed formula {g} disagrees with the Lyndon count {o}")],
                payload,
            });
        }
    }
    Ok(Output { payload, summary })
}

/// Word lists are capped at this many words.
const MAX_WORDS: usize = 100_000;

pub fn lyndon(m: usize, n: usize, words: bool) -> Result<Output, Failure> {
    if m == 0 || n == 0 {
        return Err(Failure::input("--m and --n must be at least 1"));
    }
    let mb = BigInt::from(m);
    let counts: Vec<BigInt> = (1..=n as u64).map(|i| lyndon_count(&mb, i)).collect();
    let total: BigInt = counts.iter().sum();
    let mut payload = json!({
        "m": m,
        "n": n,
        "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "total": total.to_string(),
    });
    if words {
        if total > BigInt::from(MAX_WORDS) {
            return Err(Failure::input(format!("{total} words exceed the listing limit of {MAX_WORDS}")));
        }
        let mut by_len = BTreeMap::new();
        for i in 1..=n {
            by_len.insert(i.to_string(), json!(lyndon_words(m, i)));
        }
        payload["words"] = json!(by_len);
    }
    Ok(Output {
        payload,
        summary: format!("Lyndon words on {m} letters up to length {n}: {total}"),
    })
}
