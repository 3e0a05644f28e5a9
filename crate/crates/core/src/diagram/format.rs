//! HDG v1 text format.
//!
//! ```text
//! hdg torus_s3
//! crossings 1
//! 1: 1 2 1 2
//! edge 1: 1,0-1,2 sign +1 curve a
//! edge 2: 1,1-1,3 sign +1 curve b
//! curve a: system prime
//! curve b: system double_prime
//! ```
//!
//! Vertices and edges are 1-based, slots 0-based. An edge whose last field
//! is `scaffold` instead of `curve <name>` belongs to no curve. `crossings`
//! counts every vertex of the map.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Curve, End, MapEdge, SurfaceDiagram, System};
use crate::error::{Error, ParseError, ParseErrorKind};

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::malformed(line, msg))
}

fn inconsistent(line: usize, msg: String) -> Error {
    Error::Parse(ParseError::new(line, ParseErrorKind::Inconsistent(msg)))
}

fn out_of_range(line: usize, v: usize, max: usize) -> Error {
    Error::Parse(ParseError::new(line, ParseErrorKind::VertexOutOfRange { vertex: v + 1, max }))
}

fn parse_index(line: usize, tok: &str, what: &str) -> Result<usize, Error> {
    tok.parse::<usize>()
        .map_err(|_| malformed(line, format!("bad {what} `{tok}`")))
}

fn parse_end(line: usize, tok: &str) -> Result<End, Error> {
    let (v, s) = tok
        .split_once(',')
        .ok_or_else(|| malformed(line, format!("bad edge end `{tok}`")))?;
    let vertex = parse_index(line, v, "vertex")?;
    if vertex == 0 {
        return Err(malformed(line, "vertices are 1-based"));
    }
    Ok(End {
        vertex: vertex - 1,
        slot: parse_index(line, s, "slot")?,
    })
}

struct RawEdge {
    line: usize,
    ends: [End; 2],
    sign: i8,
    curve: Option<String>,
}

pub fn parse_hdg(text: &str) -> Result<SurfaceDiagram, Error> {
    let mut name = None;
    let mut vertices = None;
    let mut rotations: HashMap<usize, (usize, Vec<usize>)> = HashMap::new();
    let mut edges: HashMap<usize, RawEdge> = HashMap::new();
    let mut curves: Vec<Curve> = Vec::new();
    let mut curve_lines: HashMap<String, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let head = words.next().expect("nonempty");
        if name.is_none() {
            if head != "hdg" {
                return Err(Error::Parse(ParseError::new(line, ParseErrorKind::MissingHeader("hdg"))));
            }
            let n: Vec<&str> = words.collect();
            if n.len() != 1 {
                return Err(malformed(line, "expected `hdg <name>`"));
            }
            name = Some(n[0].to_string());
            continue;
        }
        match head {
            "crossings" => {
                let n: Vec<&str> = words.collect();
                if n.len() != 1 || vertices.is_some() {
                    return Err(malformed(line, "expected a single `crossings <n>`"));
                }
                vertices = Some(parse_index(line, n[0], "vertex count")?);
            }
            "edge" => {
                let rest: Vec<&str> = words.collect();
                let id = rest
                    .first()
                    .and_then(|t| t.strip_suffix(':'))
                    .ok_or_else(|| malformed(line, "expected `edge <id>:`"))?;
                let id = parse_index(line, id, "edge id")?;
                let (ends, sign, curve) = match rest[1..] {
                    [ends, "sign", sign, "curve", c] => (ends, sign, Some(c.to_string())),
                    [ends, "sign", sign, "scaffold"] => (ends, sign, None),
                    _ => return Err(malformed(line, "expected `edge <id>: v,s-v,s sign ±1 curve <name>`")),
                };
                let (a, b) = ends
                    .split_once('-')
                    .ok_or_else(|| malformed(line, format!("bad edge ends `{ends}`")))?;
                let sign = match sign {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    s => return Err(malformed(line, format!("bad sign `{s}`"))),
                };
                let raw = RawEdge {
                    line,
                    ends: [parse_end(line, a)?, parse_end(line, b)?],
                    sign,
                    curve,
                };
                if id == 0 || edges.insert(id, raw).is_some() {
                    return Err(malformed(line, format!("edge id {id} invalid or repeated")));
                }
            }
            "curve" => {
                let rest: Vec<&str> = words.collect();
                let (cname, system) = match rest[..] {
                    [n, "system", s] => (n.strip_suffix(':'), s),
                    _ => (None, ""),
                };
                let cname = cname.ok_or_else(|| malformed(line, "expected `curve <name>: system <s>`"))?;
                let system = match system {
                    "prime" => System::Prime,
                    "double_prime" => System::DoublePrime,
                    s => return Err(malformed(line, format!("unknown system `{s}`"))),
                };
                if curve_lines.insert(cname.to_string(), curves.len()).is_some() {
                    return Err(malformed(line, format!("curve {cname} declared twice")));
                }
                curves.push(Curve {
                    name: cname.to_string(),
                    system,
                });
            }
            v if v.ends_with(':') => {
                let id = parse_index(line, &v[..v.len() - 1], "vertex")?;
                if id == 0 {
                    return Err(malformed(line, "vertices are 1-based"));
                }
                let list = words
                    .map(|t| parse_index(line, t, "edge id"))
                    .collect::<Result<Vec<_>, _>>()?;
                if rotations.insert(id - 1, (line, list)).is_some() {
                    return Err(malformed(line, format!("vertex {id} listed twice")));
                }
            }
            other => return Err(malformed(line, format!("unknown line `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| Error::Parse(ParseError::new(1, ParseErrorKind::MissingHeader("hdg"))))?;
    let vertices = vertices.ok_or_else(|| malformed(1, "missing `crossings` line"))?;
    let count = edges.len();
    let mut out = Vec::with_capacity(count);
    for id in 1..=count {
        let raw = edges
            .remove(&id)
            .ok_or_else(|| malformed(1, format!("edge ids must be 1..{count}; {id} missing")))?;
        let curve = match raw.curve {
            None => None,
            Some(c) => Some(
                *curve_lines
                    .get(&c)
                    .ok_or_else(|| malformed(raw.line, format!("undeclared curve {c}")))?,
            ),
        };
        for end in raw.ends {
            if end.vertex >= vertices {
                return Err(out_of_range(raw.line, end.vertex, vertices));
            }
        }
        out.push(MapEdge {
            ends: raw.ends,
            sign: raw.sign,
            curve,
        });
    }
    // rotation lines must agree with the edge ends
    let mut rows: Vec<_> = rotations.iter().collect();
    rows.sort_by_key(|(&v, _)| v);
    for (&v, (line, list)) in rows {
        if v >= vertices {
            return Err(out_of_range(*line, v, vertices));
        }
        for (slot, &e) in list.iter().enumerate() {
            let ok = e >= 1
                && e <= count
                && out[e - 1].ends.iter().any(|x| x.vertex == v && x.slot == slot);
            if !ok {
                return Err(inconsistent(*line, format!("vertex {} slot {slot} does not end edge {e}", v + 1)));
            }
        }
    }
    let d = SurfaceDiagram::new(name, vertices, out, curves)?;
    for v in 0..vertices {
        let listed = rotations.get(&v).map_or(0, |(_, l)| l.len());
        if listed != d.rotation(v).len() {
            let line = rotations.get(&v).map_or(1, |(l, _)| *l);
            return Err(inconsistent(line, format!("vertex {} lists {listed} edge ends", v + 1)));
        }
    }
    Ok(d)
}

pub fn serialize_hdg(d: &SurfaceDiagram) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "hdg {}", d.name());
    let _ = writeln!(s, "crossings {}", d.vertex_count());
    for v in 0..d.vertex_count() {
        let _ = write!(s, "{}:", v + 1);
        for &h in d.rotation(v) {
            let _ = write!(s, " {}", h / 2 + 1);
        }
        s.push('\n');
    }
    for (e, edge) in d.edges().iter().enumerate() {
        let [a, b] = edge.ends;
        let sign = if edge.sign > 0 { "+1" } else { "-1" };
        let _ = write!(
            s,
            "edge {}: {},{}-{},{} sign {sign} ",
            e + 1,
            a.vertex + 1,
            a.slot,
            b.vertex + 1,
            b.slot
        );
        match edge.curve {
            Some(c) => {
                let _ = writeln!(s, "curve {}", d.curves()[c].name);
            }
            None => s.push_str("scaffold\n"),
        }
    }
    for c in d.curves() {
        let _ = writeln!(s, "curve {}: system {}", c.name, c.system);
    }
    s
}
