//! Monoid query syntax.
//!
//! ```text
//! eq: X = Y
//! leq: X <= Y
//! refine: X1 | X2 = Y1 | Y2
//! fred: N; X; Y; Z
//! 23div: U
//! irreducible: U mod {v, w}
//! abelian: U mod {v, w}
//! project: U mod {v, w}
//! ```
//!
//! Vectors use the monoid syntax `2*v + w`; `mod {..}` may be omitted for
//! the empty set.

use leavitt_core::graph::{Graph, VertexSet};
use leavitt_core::monoid::{Monoid, MonoidVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Equal(MonoidVector, MonoidVector),
    Leq(MonoidVector, MonoidVector),
    Refine([MonoidVector; 4]),
    Fred(u64, [MonoidVector; 3]),
    TwoThree(MonoidVector),
    Irreducible(MonoidVector, VertexSet),
    Abelian(MonoidVector, VertexSet),
    Project(MonoidVector, VertexSet),
}

impl Query {
    pub fn kind(&self) -> &'static str {
        match self {
            Query::Equal(..) => "eq",
            Query::Leq(..) => "leq",
            Query::Refine(..) => "refine",
            Query::Fred(..) => "fred",
            Query::TwoThree(..) => "23div",
            Query::Irreducible(..) => "irreducible",
            Query::Abelian(..) => "abelian",
            Query::Project(..) => "project",
        }
    }
}

fn split2<'a>(text: &'a str, sep: &str) -> Result<(&'a str, &'a str), String> {
    let parts: Vec<&str> = text.split(sep).collect();
    match parts.as_slice() {
        [a, b] => Ok((a.trim(), b.trim())),
        _ => Err(format!("expected exactly one `{sep}` in `{}`", text.trim())),
    }
}

fn vector(m: &Monoid, text: &str) -> Result<MonoidVector, String> {
    m.parse(text.trim()).map_err(|e| e.to_string())
}

fn modulo(g: &Graph, m: &Monoid, text: &str) -> Result<(MonoidVector, VertexSet), String> {
    let (u, set) = match text.split_once("mod") {
        Some((u, set)) => (u, set.trim()),
        None => (text, "{}"),
    };
    let inner = set
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| format!("expected `{{...}}` after `mod`, found `{set}`"))?;
    let ids: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let h = g.vertex_set(ids).map_err(|e| e.to_string())?;
    Ok((vector(m, u)?, h))
}

pub fn parse(g: &Graph, m: &Monoid, text: &str) -> Result<Query, String> {
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| format!("expected `kind: ...`, found `{text}`"))?;
    match kind.trim() {
        "eq" => {
            let (x, y) = split2(body, "=")?;
            Ok(Query::Equal(vector(m, x)?, vector(m, y)?))
        }
        "leq" => {
            let (x, y) = split2(body, "<=")?;
            Ok(Query::Leq(vector(m, x)?, vector(m, y)?))
        }
        "refine" => {
            let (left, right) = split2(body, "=")?;
            let (x1, x2) = split2(left, "|")?;
            let (y1, y2) = split2(right, "|")?;
            Ok(Query::Refine([vector(m, x1)?, vector(m, x2)?, vector(m, y1)?, vector(m, y2)?]))
        }
        "fred" => {
            let parts: Vec<&str> = body.split(';').map(str::trim).collect();
            let [n, x, y, z] = parts.as_slice() else {
                return Err("fred takes `n; x; y; z`".into());
            };
            let n: u64 = n.parse().map_err(|_| format!("`{n}` is not a positive integer"))?;
            if n == 0 {
                return Err("n must be positive".into());
            }
            Ok(Query::Fred(n, [vector(m, x)?, vector(m, y)?, vector(m, z)?]))
        }
        "23div" => Ok(Query::TwoThree(vector(m, body)?)),
        "irreducible" => modulo(g, m, body).map(|(u, h)| Query::Irreducible(u, h)),
        "abelian" => modulo(g, m, body).map(|(u, h)| Query::Abelian(u, h)),
        "project" => modulo(g, m, body).map(|(u, h)| Query::Project(u, h)),
        other => Err(format!("unknown query kind `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use leavitt_core::corpus::bundled_graph;

    #[test]
    fn parses_every_kind() {
        let g = bundled_graph("twin-roses").unwrap();
        let m = Monoid::new(&g);
        let v = m.parse("v").unwrap();
        assert_eq!(parse(&g, &m, "eq: v = 2v").unwrap(), Query::Equal(v.clone(), v.scale(2)));
        assert!(matches!(parse(&g, &m, "leq: v <= w + v"), Ok(Query::Leq(..))));
        assert!(matches!(parse(&g, &m, "refine: v | w = w | v"), Ok(Query::Refine(..))));
        assert!(matches!(parse(&g, &m, "fred: 2; v; v; v"), Ok(Query::Fred(2, _))));
        assert_eq!(parse(&g, &m, "23div: v").unwrap(), Query::TwoThree(v.clone()));
        let Query::Irreducible(_, h) = parse(&g, &m, "irreducible: v mod {w}").unwrap() else {
            panic!()
        };
        assert_eq!(g.set_ids(&h), ["w"]);
        let Query::Abelian(_, h) = parse(&g, &m, "abelian: v").unwrap() else { panic!() };
        assert!(h.is_empty());
    }

    #[test]
    fn rejects_malformed_queries() {
        let g = bundled_graph("rose2").unwrap();
        let m = Monoid::new(&g);
        for bad in ["v = v", "eq: v", "eq: v = x", "fred: 0; v; v; v", "fred: v; v", "project: v mod w", "size: v"] {
            assert!(parse(&g, &m, bad).is_err(), "{bad}");
        }
    }
}
