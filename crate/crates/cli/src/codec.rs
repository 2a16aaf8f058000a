//! JSON encoding of core types: rationals as `"p/q"`, dimension vectors and
//! weights keyed by gauge vertex id.

use qbps_core::bps::{Decomposition, SummandLabel};
use qbps_core::lattice::{DimVec, Weight};
use qbps_core::rational::{fmt_q, parse_q};
use qbps_core::sod::{LabelEntry, SodReport, WindowSpec};
use qbps_core::{EdgeTag, Error, GenericReal, Quiver, Result, Q};
use serde_json::{json, Map, Value};

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub fn q_json(q: &Q) -> Value {
    Value::String(fmt_q(q))
}

pub fn parse_q_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Q::from_integer(i.into())),
            None => bad(format!("expected an integer or \"p/q\" string, got {n}")),
        },
        other => bad(format!("expected a rational, got {other}")),
    }
}

pub fn generic_json(g: &GenericReal) -> Value {
    json!({"q": fmt_q(&g.q), "eps": g.eps})
}

pub fn quiver_json(q: &Quiver) -> Value {
    let names = q.vertices();
    let mut m = Map::new();
    m.insert("vertices".into(), json!(names));
    let edges: Vec<Value> = q.edges().iter().map(|&(s, t)| json!([names[s], names[t]])).collect();
    m.insert("edges".into(), Value::Array(edges));
    if let Some(tags) = q.tags() {
        m.insert("tags".into(), json!(tags.iter().map(|t| t.name()).collect::<Vec<_>>()));
    }
    Value::Object(m)
}

pub fn parse_quiver(v: &Value) -> Result<Quiver> {
    let Some(obj) = v.as_object() else {
        return bad("quiver must be a JSON object");
    };
    let Some(vs) = obj.get("vertices").and_then(Value::as_array) else {
        return bad("quiver needs a \"vertices\" array");
    };
    let vertices = vs
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => bad(format!("bad vertex id {other}")),
        })
        .collect::<Result<Vec<_>>>()?;
    let Some(es) = obj.get("edges").and_then(Value::as_array) else {
        return bad("quiver needs an \"edges\" array");
    };
    let index = |x: &Value| -> Result<usize> {
        let id = match x {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            other => return bad(format!("bad vertex id {other}")),
        };
        vertices
            .iter()
            .position(|v| *v == id)
            .ok_or_else(|| Error::Invalid(format!("unknown vertex {id:?}")))
    };
    let edges = es
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([s, t]) => Ok((index(s)?, index(t)?)),
            _ => bad(format!("edge must be a [source, target] pair, got {e}")),
        })
        .collect::<Result<Vec<_>>>()?;
    let tags = match obj.get("tags") {
        None | Some(Value::Null) => None,
        Some(Value::Array(ts)) => Some(
            ts.iter()
                .map(|t| t.as_str().map_or_else(|| bad("edge tags must be strings"), EdgeTag::from_name))
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(other) => return bad(format!("bad tags {other}")),
    };
    Quiver::with_tags(vertices, edges, tags)
}

pub fn dim_json(q: &Quiver, d: &DimVec) -> Value {
    let mut m = Map::new();
    for (a, &k) in d.0.iter().enumerate() {
        m.insert(q.vertices()[a].clone(), json!(k));
    }
    Value::Object(m)
}

pub fn parse_dim(q: &Quiver, v: &Value) -> Result<DimVec> {
    let n = q.gauge_count();
    match v {
        Value::Number(x) if n == 1 => match x.as_u64() {
            Some(k) => Ok(DimVec(vec![k as usize])),
            None => bad(format!("bad dimension {x}")),
        },
        Value::Object(m) => {
            let mut d = vec![0usize; n];
            for (k, x) in m {
                let a = q.index(k)?;
                if a >= n {
                    return bad(format!("vertex {k:?} is not a gauge vertex"));
                }
                d[a] = x.as_u64().ok_or_else(|| Error::Invalid(format!("bad dimension at {k:?}")))? as usize;
            }
            Ok(DimVec(d))
        }
        other => bad(format!("dimension vector must be an object keyed by vertex, got {other}")),
    }
}

pub fn weight_json(q: &Quiver, d: &DimVec, w: &Weight) -> Value {
    let mut m = Map::new();
    let mut s = 0;
    for (a, &k) in d.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        m.insert(q.vertices()[a].clone(), Value::Array(w.0[s..s + k].iter().map(q_json).collect()));
        s += k;
    }
    Value::Object(m)
}

pub fn parse_weight(q: &Quiver, d: &DimVec, v: &Value) -> Result<Weight> {
    let Some(m) = v.as_object() else {
        return bad("weight must be an object keyed by vertex");
    };
    let offsets = d.offsets();
    let mut w = Weight::zero(d.total());
    let mut seen = vec![false; d.len()];
    for (k, xs) in m {
        let a = q.index(k)?;
        if a >= d.len() {
            return bad(format!("vertex {k:?} is not a gauge vertex"));
        }
        let Some(xs) = xs.as_array() else {
            return bad(format!("weight at {k:?} must be an array"));
        };
        if xs.len() != d.0[a] {
            return bad(format!("weight at {k:?} has {} entries, expected {}", xs.len(), d.0[a]));
        }
        for (i, x) in xs.iter().enumerate() {
            w.0[offsets[a] + i] = parse_q_json(x)?;
        }
        seen[a] = true;
    }
    if let Some(a) = (0..d.len()).find(|&a| !seen[a] && d.0[a] > 0) {
        return bad(format!("weight is missing vertex {:?}", q.vertices()[a]));
    }
    Ok(w)
}

pub fn label_json(q: &Quiver, l: &SummandLabel) -> Value {
    json!({"parts": l.parts.iter().map(|(d, v)| json!([dim_json(q, d), q_json(v)])).collect::<Vec<_>>()})
}

pub fn parse_label(q: &Quiver, v: &Value) -> Result<SummandLabel> {
    let parts = match v {
        Value::Object(m) => m.get("parts").cloned().unwrap_or(Value::Null),
        other => other.clone(),
    };
    let Some(ps) = parts.as_array() else {
        return bad("label must be {\"parts\": [[d, v], ...]}");
    };
    let parts = ps
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([d, v]) => Ok((parse_dim(q, d)?, parse_q_json(v)?)),
            _ => bad(format!("label part must be [d, v], got {p}")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SummandLabel::new(parts))
}

pub fn decomposition_json(q: &Quiver, d: &DimVec, dec: &Decomposition) -> Value {
    let parts = dec.label.partition();
    let levels: Vec<Value> = dec
        .path
        .levels
        .iter()
        .map(|l| {
            json!({
                "r": q_json(&l.r),
                "partition": l.partition.iter().map(|p| dim_json(q, p)).collect::<Vec<_>>(),
                "n": weight_json(q, d, &l.n_weight),
            })
        })
        .collect();
    json!({
        "w": q_json(&dec.w),
        "label": label_json(q, &dec.label),
        "levels": levels,
        "psi": dec.path.psi.iter().zip(&parts).map(|(w, p)| weight_json(q, p, w)).collect::<Vec<_>>(),
        "theta": dec.thetas.iter().zip(&parts).map(|(w, p)| weight_json(q, p, w)).collect::<Vec<_>>(),
    })
}

fn window_json(w: &WindowSpec) -> Value {
    match w {
        WindowSpec::Framed { mu, alpha } => json!({"mu": generic_json(mu), "alpha": alpha}),
        WindowSpec::Unframed { w, lo, hi } => json!({"w": q_json(w), "lo": generic_json(lo), "hi": generic_json(hi)}),
        WindowSpec::Preprojective { lo, hi } => json!({"lo": generic_json(lo), "hi": generic_json(hi)}),
    }
}

fn entry_json(q: &Quiver, e: &LabelEntry) -> Value {
    let mut m = Map::new();
    m.insert(
        "parts".into(),
        Value::Array(e.label.parts.iter().map(|(d, v)| json!([dim_json(q, d), q_json(v)])).collect()),
    );
    m.insert(
        "block_weights".into(),
        Value::Array(e.block_weights.iter().zip(&e.label.parts).map(|(w, (p, _))| weight_json(q, p, w)).collect()),
    );
    m.insert("cosets".into(), Value::Array(e.cosets.iter().map(q_json).collect()));
    if let Some(g) = e.generators {
        m.insert("generators".into(), json!(g));
    }
    if let Some(ws) = &e.shifted_w {
        m.insert("shifted_w".into(), Value::Array(ws.iter().map(q_json).collect()));
    }
    Value::Object(m)
}

pub fn sod_json(r: &SodReport) -> Value {
    let q = &r.quiver;
    let mut m = Map::new();
    m.insert("quiver".into(), quiver_json(q));
    m.insert("d".into(), dim_json(q, &r.d));
    m.insert("window".into(), window_json(&r.window));
    m.insert("order".into(), json!(r.order.name()));
    m.insert("labels".into(), Value::Array(r.labels.iter().map(|e| entry_json(q, e)).collect()));
    m.insert("count".into(), json!(r.count));
    if let Some(g) = r.generator_count {
        m.insert("generator_count".into(), json!(g));
    }
    Value::Object(m)
}

/// Flattens JSON into `path<TAB>value` lines.
pub fn to_tsv(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    walk(&key(k), x, out);
                }
            }
            Value::Array(xs) if !xs.is_empty() => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&key(&i.to_string()), x, out);
                }
            }
            Value::String(s) => {
                out.push_str(prefix);
                out.push('\t');
                out.push_str(s);
                out.push('\n');
            }
            other => {
                out.push_str(prefix);
                out.push('\t');
                out.push_str(&other.to_string());
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_round_trip() {
        let q = Quiver::a2().triple().frame(2).unwrap();
        assert_eq!(parse_quiver(&quiver_json(&q)).unwrap(), q);
    }

    #[test]
    fn weight_round_trip() {
        let q = Quiver::a2();
        let d = DimVec(vec![2, 1]);
        let w = Weight(vec![Q::new((-1).into(), 2.into()), Q::new(1.into(), 2.into()), Q::from_integer(3.into())]);
        let v = weight_json(&q, &d, &w);
        assert_eq!(v, json!({"0": ["-1/2", "1/2"], "1": ["3"]}));
        assert_eq!(parse_weight(&q, &d, &v).unwrap(), w);
        assert!(parse_weight(&q, &d, &json!({"0": ["1"]})).is_err());
    }

    #[test]
    fn label_round_trip() {
        let q = Quiver::loops(3);
        let l = SummandLabel::new(vec![(DimVec(vec![1]), Q::from_integer((-1).into())), (DimVec(vec![1]), Q::from_integer(1.into()))]);
        assert_eq!(parse_label(&q, &label_json(&q, &l)).unwrap(), l);
    }

    #[test]
    fn tsv_flattening() {
        assert_eq!(to_tsv(&json!({"a": {"b": ["1/2", 3]}, "c": true})), "a.b.0\t1/2\na.b.1\t3\nc\ttrue\n");
    }
}
