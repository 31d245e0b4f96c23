//! Line-oriented text format for diagrams.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::diagram::*;
use crate::error::ParseError;

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == '(' || ch == ')';
        if sep {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..i], col: s + 1 });
            }
            if ch == '(' || ch == ')' {
                out.push(Tok { text: &line[i..i + 1], col: i + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], col: s + 1 });
    }
    out
}

#[derive(Default)]
struct Raw {
    genus: Option<(u32, usize)>,
    curves: Vec<(String, Family, usize, usize)>,
    vertices: Vec<(String, String, String, usize)>,
    arcs: Vec<(String, String, Option<((String, bool), (String, bool))>, usize)>,
    regions: Vec<(String, u32, Vec<Vec<(bool, String)>>, usize)>,
    points: Vec<(String, String, usize)>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, msg: msg.into() }
}

fn keyval<'a>(t: &Tok<'a>, key: &str, line: usize) -> Result<&'a str, ParseError> {
    t.text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| syntax(line, t.col, format!("expected {}=...", key)))
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, col: usize) -> Result<T, ParseError> {
    s.parse().map_err(|_| syntax(line, col, format!("bad number '{}'", s)))
}

fn end_spec(s: &str, line: usize, col: usize) -> Result<(String, bool), ParseError> {
    let (v, g) = s.rsplit_once(':').ok_or_else(|| syntax(line, col, "expected <vertex>:<in|out>"))?;
    let out = match g {
        "out" => true,
        "in" => false,
        _ => return Err(syntax(line, col, format!("bad germ '{}'", g))),
    };
    Ok((v.to_string(), out))
}

/// Parses the text format without checking the Heegaard conditions.
pub fn parse_unchecked(text: &str) -> Result<Diagram, ParseError> {
    let mut raw = Raw::default();
    let mut header = false;
    for (li, full) in text.lines().enumerate() {
        let ln = li + 1;
        let line = full.split('#').next().unwrap_or("");
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if !header {
            if toks.len() == 2 && toks[0].text == "heegaard-diagram" && toks[1].text == "v1" {
                header = true;
                continue;
            }
            return Err(syntax(ln, toks[0].col, "expected header 'heegaard-diagram v1'"));
        }
        let arg = |i: usize| -> Result<&Tok, ParseError> {
            toks.get(i).ok_or_else(|| syntax(ln, line.len() + 1, "unexpected end of line"))
        };
        let exact = |n: usize| -> Result<(), ParseError> {
            if toks.len() > n {
                Err(syntax(ln, toks[n].col, format!("unexpected '{}'", toks[n].text)))
            } else {
                Ok(())
            }
        };
        match toks[0].text {
            "genus" => {
                let t = arg(1)?;
                exact(2)?;
                if raw.genus.is_some() {
                    return Err(syntax(ln, toks[0].col, "genus declared twice"));
                }
                raw.genus = Some((parse_num(t.text, ln, t.col)?, ln));
            }
            "curve" => {
                let id = arg(1)?.text.to_string();
                let f = arg(2)?;
                let fam = match keyval(f, "family", ln)? {
                    "alpha" => Family::Alpha,
                    "beta" => Family::Beta,
                    x => return Err(syntax(ln, f.col, format!("bad family '{}'", x))),
                };
                let it = arg(3)?;
                let idx: usize = parse_num(keyval(it, "index", ln)?, ln, it.col)?;
                exact(4)?;
                raw.curves.push((id, fam, idx, ln));
            }
            "vertex" => {
                let id = arg(1)?.text.to_string();
                let a = keyval(arg(2)?, "alpha", ln)?.to_string();
                let b = keyval(arg(3)?, "beta", ln)?.to_string();
                exact(4)?;
                raw.vertices.push((id, a, b, ln));
            }
            "arc" => {
                let id = arg(1)?.text.to_string();
                let c = keyval(arg(2)?, "curve", ln)?.to_string();
                let t3 = arg(3)?;
                if t3.text == "closed" {
                    exact(4)?;
                    raw.arcs.push((id, c, None, ln));
                } else {
                    let f = end_spec(keyval(t3, "from", ln)?, ln, t3.col)?;
                    let t4 = arg(4)?;
                    let t = end_spec(keyval(t4, "to", ln)?, ln, t4.col)?;
                    exact(5)?;
                    raw.arcs.push((id, c, Some((f, t)), ln));
                }
            }
            "region" => {
                let id = arg(1)?.text.to_string();
                let gt = arg(2)?;
                let h: u32 = parse_num(keyval(gt, "genus", ln)?, ln, gt.col)?;
                let bt = arg(3)?;
                if keyval(bt, "boundary", ln)? != "" {
                    return Err(syntax(ln, bt.col, "expected 'boundary=' followed by cycles"));
                }
                let mut cycles = Vec::new();
                let mut cur: Option<Vec<(bool, String)>> = None;
                for t in &toks[4..] {
                    match (t.text, cur.is_some()) {
                        ("(", false) => cur = Some(Vec::new()),
                        (")", true) => cycles.push(cur.take().unwrap()),
                        (s, true) if s.len() > 1 && (s.starts_with('+') || s.starts_with('-')) => {
                            cur.as_mut().unwrap().push((s.starts_with('+'), s[1..].to_string()))
                        }
                        (s, _) => return Err(syntax(ln, t.col, format!("unexpected '{}' in boundary", s))),
                    }
                }
                if cur.is_some() {
                    return Err(syntax(ln, line.len() + 1, "unclosed boundary cycle"));
                }
                raw.regions.push((id, h, cycles, ln));
            }
            "point" => {
                let id = arg(1)?.text.to_string();
                let r = keyval(arg(2)?, "region", ln)?.to_string();
                exact(3)?;
                raw.points.push((id, r, ln));
            }
            other => return Err(syntax(ln, toks[0].col, format!("unknown record '{}'", other))),
        }
    }
    if !header {
        return Err(syntax(1, 1, "missing header 'heegaard-diagram v1'"));
    }
    resolve(raw)
}

fn index_of(names: &[String], kind: &str, line: usize) -> Result<HashMap<String, usize>, ParseError> {
    let mut m = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if m.insert(n.clone(), i).is_some() {
            return Err(ParseError::Duplicate { kind: kind.to_string(), id: n.clone(), line });
        }
    }
    Ok(m)
}

fn lookup(m: &HashMap<String, usize>, kind: &str, id: &str, line: usize) -> Result<usize, ParseError> {
    m.get(id).copied().ok_or_else(|| ParseError::Dangling { kind: kind.to_string(), id: id.to_string(), line })
}

fn resolve(raw: Raw) -> Result<Diagram, ParseError> {
    let (genus, _) = raw.genus.ok_or_else(|| syntax(1, 1, "missing 'genus' record"))?;
    let names = Names {
        curves: raw.curves.iter().map(|c| c.0.clone()).collect(),
        vertices: raw.vertices.iter().map(|c| c.0.clone()).collect(),
        arcs: raw.arcs.iter().map(|c| c.0.clone()).collect(),
        regions: raw.regions.iter().map(|c| c.0.clone()).collect(),
        points: raw.points.iter().map(|c| c.0.clone()).collect(),
    };
    let cm = index_of(&names.curves, "curve", 0)?;
    let vm = index_of(&names.vertices, "vertex", 0)?;
    let am = index_of(&names.arcs, "arc", 0)?;
    let rm = index_of(&names.regions, "region", 0)?;
    index_of(&names.points, "point", 0)?;

    let curves: Vec<Curve> = raw.curves.iter().map(|c| Curve { family: c.1, index: c.2 }).collect();
    let mut vertices = Vec::new();
    for (_, a, b, ln) in &raw.vertices {
        let a = lookup(&cm, "curve", a, *ln)?;
        let b = lookup(&cm, "curve", b, *ln)?;
        if curves[a].family != Family::Alpha || curves[b].family != Family::Beta {
            return Err(ParseError::Germ { line: *ln, msg: "vertex must join an alpha and a beta curve".into() });
        }
        vertices.push(Vertex { alpha: CurveId(a), beta: CurveId(b) });
    }
    let mut arcs = Vec::new();
    let mut flipped = vec![false; raw.arcs.len()];
    for (ai, (_, c, ends, ln)) in raw.arcs.iter().enumerate() {
        let c = CurveId(lookup(&cm, "curve", c, *ln)?);
        let ends = match ends {
            None => None,
            Some(((f, fo), (t, to))) => {
                let f = VertexId(lookup(&vm, "vertex", f, *ln)?);
                let t = VertexId(lookup(&vm, "vertex", t, *ln)?);
                match (fo, to) {
                    (true, false) => Some((f, t)),
                    (false, true) => {
                        flipped[ai] = true;
                        Some((t, f))
                    }
                    _ => {
                        return Err(ParseError::Germ {
                            line: *ln,
                            msg: "an arc must leave one endpoint and enter the other".into(),
                        })
                    }
                }
            }
        };
        arcs.push(Arc { curve: c, ends });
    }
    let mut regions = Vec::new();
    for (_, h, cycles, ln) in &raw.regions {
        let mut cs = Vec::new();
        for cyc in cycles {
            let mut ds = Vec::new();
            for (pos, a) in cyc {
                let a = lookup(&am, "arc", a, *ln)?;
                ds.push(Dart::new(ArcId(a), *pos != flipped[a]));
            }
            cs.push(ds);
        }
        regions.push(Region { genus: *h, cycles: cs });
    }
    let mut points = Vec::new();
    for (_, r, ln) in &raw.points {
        points.push(Point { region: RegionId(lookup(&rm, "region", r, *ln)?) });
    }
    Ok(Diagram { genus, curves, vertices, arcs, regions, points, names })
}

/// Parses and validates; the first violation becomes the error.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let d = parse_unchecked(text)?;
    let report = d.validate();
    match report.violations.into_iter().next() {
        None => Ok(d),
        Some(v) => Err(ParseError::Invalid(v)),
    }
}

pub fn serialize(d: &Diagram) -> String {
    let n = &d.names;
    let mut s = String::from("heegaard-diagram v1\n");
    writeln!(s, "genus {}", d.genus).unwrap();
    for (i, c) in d.curves.iter().enumerate() {
        writeln!(s, "curve {} family={} index={}", n.curves[i], c.family.as_str(), c.index).unwrap();
    }
    for (i, v) in d.vertices.iter().enumerate() {
        writeln!(s, "vertex {} alpha={} beta={}", n.vertices[i], n.curves[v.alpha.0], n.curves[v.beta.0]).unwrap();
    }
    for (i, a) in d.arcs.iter().enumerate() {
        match a.ends {
            None => writeln!(s, "arc {} curve={} closed", n.arcs[i], n.curves[a.curve.0]).unwrap(),
            Some((f, t)) => writeln!(
                s,
                "arc {} curve={} from={}:out to={}:in",
                n.arcs[i], n.curves[a.curve.0], n.vertices[f.0], n.vertices[t.0]
            )
            .unwrap(),
        }
    }
    for (i, r) in d.regions.iter().enumerate() {
        write!(s, "region {} genus={} boundary=", n.regions[i], r.genus).unwrap();
        for (k, c) in r.cycles.iter().enumerate() {
            s.push_str(if k == 0 { "(" } else { " (" });
            for dt in c {
                write!(s, " {}{}", if dt.forward { '+' } else { '-' }, n.arcs[dt.arc.0]).unwrap();
            }
            s.push_str(" )");
        }
        s.push('\n');
    }
    for (i, p) in d.points.iter().enumerate() {
        writeln!(s, "point {} region={}", n.points[i], n.regions[p.region.0]).unwrap();
    }
    s
}
