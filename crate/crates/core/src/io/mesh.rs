//! Bulk mesh files.
//!
//! The native format is line based; `#` starts a comment:
//!
//! ```text
//! vertices 4
//! 0 0
//! 1 0
//! 1 1
//! 0 1
//! triangles 2
//! 0 1 2
//! 0 2 3
//! edges 4
//! 0 1 bottom
//! 1 2 right
//! 2 3 top
//! 3 0 left
//! ```
//!
//! Gmsh ASCII v2 files (`.msh`) are read as well: 3-node triangles form the
//! mesh, 2-node lines carry the boundary tags through their physical names.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::geometry::{BulkMesh, Point2};
use crate::{Error, Result};

/// Reads a mesh, choosing the format by extension (`.msh` is gmsh v2).
pub fn read_mesh(path: &Path) -> Result<BulkMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if path.extension().is_some_and(|e| e == "msh") {
        parse_msh2(&text, path)
    } else {
        parse_ascii_mesh(&text, path)
    }
}

struct Lines<'a> {
    it: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    path: PathBuf,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, path: &Path, comments: bool) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(move |(i, l)| (i + 1, if comments { l.split('#').next().unwrap_or("") } else { l }.trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines { it: it.peekable(), path: path.to_path_buf() }
    }

    fn err(&self, line: usize, reason: impl std::fmt::Display) -> Error {
        Error::Parse { path: self.path.clone(), reason: format!("line {line}: {reason}") }
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        self.it.next().ok_or_else(|| Error::Parse { path: self.path.clone(), reason: "unexpected end of file".into() })
    }

    fn fields<T: std::str::FromStr>(&mut self, n: usize) -> Result<(usize, Vec<T>, Vec<&'a str>)> {
        let (no, line) = self.next()?;
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() < n {
            return Err(self.err(no, format!("expected {n} numbers, got `{line}`")));
        }
        let nums = words[..n].iter().map(|w| w.parse::<T>().map_err(|_| self.err(no, format!("bad number `{w}`")))).collect::<Result<_>>()?;
        Ok((no, nums, words[n..].to_vec()))
    }

    fn header(&mut self, key: &str) -> Result<usize> {
        let (no, line) = self.next()?;
        let mut w = line.split_whitespace();
        match (w.next(), w.next().map(str::parse::<usize>)) {
            (Some(k), Some(Ok(n))) if k == key => Ok(n),
            _ => Err(self.err(no, format!("expected `{key} <count>`, got `{line}`"))),
        }
    }

    fn expect(&mut self, tag: &str) -> Result<()> {
        let (no, line) = self.next()?;
        if line == tag {
            Ok(())
        } else {
            Err(self.err(no, format!("expected `{tag}`, got `{line}`")))
        }
    }
}

fn index(lines: &Lines, no: usize, v: usize, n: usize) -> Result<usize> {
    if v < n {
        Ok(v)
    } else {
        Err(lines.err(no, format!("vertex {v} out of range (have {n})")))
    }
}

pub fn parse_ascii_mesh(text: &str, path: &Path) -> Result<BulkMesh> {
    let mut lines = Lines::new(text, path, true);
    let nv = lines.header("vertices")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (_, v, _) = lines.fields::<f64>(2)?;
        vertices.push(Point2::new(v[0], v[1]));
    }
    let nt = lines.header("triangles")?;
    let mut triangles = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (no, t, _) = lines.fields::<usize>(3)?;
        triangles.push([index(&lines, no, t[0], nv)?, index(&lines, no, t[1], nv)?, index(&lines, no, t[2], nv)?]);
    }
    let mut tagged = Vec::new();
    if lines.it.peek().is_some() {
        let ne = lines.header("edges")?;
        for _ in 0..ne {
            let (no, e, rest) = lines.fields::<usize>(2)?;
            let tag = match rest.as_slice() {
                [t] => t.to_string(),
                _ => return Err(lines.err(no, "edge needs exactly one tag")),
            };
            tagged.push(([index(&lines, no, e[0], nv)?, index(&lines, no, e[1], nv)?], tag));
        }
    }
    if let Some((no, l)) = lines.it.next() {
        return Err(lines.err(no, format!("trailing content `{l}`")));
    }
    BulkMesh::new(vertices, triangles, &tagged)
}

pub fn write_ascii_mesh(mesh: &BulkMesh) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices {}", mesh.n_vertices());
    for v in &mesh.vertices {
        let _ = writeln!(s, "{:?} {:?}", v.x, v.y);
    }
    let _ = writeln!(s, "triangles {}", mesh.n_triangles());
    for t in &mesh.triangles {
        let _ = writeln!(s, "{} {} {}", t[0], t[1], t[2]);
    }
    let _ = writeln!(s, "edges {}", mesh.boundary.len());
    for b in &mesh.boundary {
        let _ = writeln!(s, "{} {} {}", b.vertices[0], b.vertices[1], b.tag);
    }
    s
}

pub fn parse_msh2(text: &str, path: &Path) -> Result<BulkMesh> {
    let mut lines = Lines::new(text, path, false);
    let mut names: HashMap<i64, String> = HashMap::new();
    let mut ids: HashMap<i64, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    let mut lines_tagged: Vec<([i64; 2], i64)> = Vec::new();
    while let Some((no, line)) = lines.it.next() {
        match line {
            "$MeshFormat" => {
                let (no, l) = lines.next()?;
                if !l.starts_with("2.") {
                    return Err(lines.err(no, format!("only msh version 2 is supported, got `{l}`")));
                }
                let mut w = l.split_whitespace().skip(1);
                if w.next() != Some("0") {
                    return Err(lines.err(no, "binary msh files are not supported"));
                }
                lines.expect("$EndMeshFormat")?;
            }
            "$PhysicalNames" => {
                let (_, n, _) = lines.fields::<usize>(1)?;
                for _ in 0..n[0] {
                    let (_, v, rest) = lines.fields::<i64>(2)?;
                    names.insert(v[1], rest.join(" ").trim_matches('"').to_string());
                }
                lines.expect("$EndPhysicalNames")?;
            }
            "$Nodes" => {
                let (_, n, _) = lines.fields::<usize>(1)?;
                for _ in 0..n[0] {
                    let (no, v, _) = lines.fields::<f64>(3)?;
                    let id = v[0] as i64;
                    if ids.insert(id, vertices.len()).is_some() {
                        return Err(lines.err(no, format!("duplicate node {id}")));
                    }
                    vertices.push(Point2::new(v[1], v[2]));
                }
                lines.expect("$EndNodes")?;
            }
            "$Elements" => {
                let (_, n, _) = lines.fields::<usize>(1)?;
                for _ in 0..n[0] {
                    let (no, l) = lines.next()?;
                    let w = l
                        .split_whitespace()
                        .map(|x| x.parse::<i64>().map_err(|_| lines.err(no, format!("bad integer `{x}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    if w.len() < 3 || w.len() < 3 + w[2] as usize {
                        return Err(lines.err(no, "truncated element"));
                    }
                    let ntags = w[2] as usize;
                    let physical = if ntags > 0 { w[3] } else { 0 };
                    let nodes = &w[3 + ntags..];
                    match (w[1], nodes.len()) {
                        (1, 2) => lines_tagged.push(([nodes[0], nodes[1]], physical)),
                        (2, 3) => triangles.push([nodes[0], nodes[1], nodes[2]]),
                        (15, 1) => {}
                        (t, _) => return Err(lines.err(no, format!("unsupported element type {t}"))),
                    }
                }
                lines.expect("$EndElements")?;
            }
            l if l.starts_with('$') => {
                // skip unknown sections
                let end = format!("$End{}", &l[1..]);
                while lines.next()?.1 != end {}
            }
            l => return Err(lines.err(no, format!("unexpected `{l}`"))),
        }
    }
    let node = |id: i64| ids.get(&id).copied().ok_or_else(|| Error::Parse { path: path.to_path_buf(), reason: format!("unknown node {id}") });
    let tris = triangles.iter().map(|t| Ok([node(t[0])?, node(t[1])?, node(t[2])?])).collect::<Result<Vec<_>>>()?;
    let tagged = lines_tagged
        .iter()
        .map(|(e, p)| Ok(([node(e[0])?, node(e[1])?], names.get(p).cloned().unwrap_or_else(|| p.to_string()))))
        .collect::<Result<Vec<_>>>()?;
    if tris.is_empty() {
        return Err(Error::Parse { path: path.to_path_buf(), reason: "no triangles".into() });
    }
    // drop vertices not used by any triangle (geometry points, line-only nodes)
    let mut used = vec![usize::MAX; vertices.len()];
    let mut kept = Vec::new();
    for t in &tris {
        for &v in t {
            if used[v] == usize::MAX {
                used[v] = kept.len();
                kept.push(vertices[v]);
            }
        }
    }
    let tris = tris.iter().map(|t| t.map(|v| used[v])).collect();
    let tagged: Vec<([usize; 2], String)> = tagged
        .into_iter()
        .filter(|(e, _)| used[e[0]] != usize::MAX && used[e[1]] != usize::MAX)
        .map(|(e, t)| ([used[e[0]], used[e[1]]], t))
        .collect();
    BulkMesh::new(kept, tris, &tagged)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "# unit square\nvertices 4\n0 0\n1 0\n1 1\n0 1\ntriangles 2\n0 1 2\n0 2 3\nedges 4\n0 1 bottom\n1 2 right\n2 3 top\n3 0 left\n";

    #[test]
    fn ascii_round_trip() {
        let m = parse_ascii_mesh(SQUARE, Path::new("square")).unwrap();
        assert_eq!(m.n_triangles(), 2);
        assert_eq!(m.tags().len(), 4);
        let again = parse_ascii_mesh(&write_ascii_mesh(&m), Path::new("again")).unwrap();
        assert_eq!(again.vertices, m.vertices);
        assert_eq!(again.triangles, m.triangles);
        assert_eq!(again.boundary, m.boundary);
    }

    #[test]
    fn ascii_errors_carry_line_numbers() {
        let bad = SQUARE.replace("0 2 3", "0 2 9");
        match parse_ascii_mesh(&bad, Path::new("bad")) {
            Err(Error::Parse { reason, .. }) => assert!(reason.contains("line 9"), "{reason}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn msh2_square() {
        let text = "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$PhysicalNames\n2\n1 1 \"bottom\"\n2 2 \"domain\"\n$EndPhysicalNames\n\
$Nodes\n5\n1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n9 0.5 0.5 0\n$EndNodes\n$Elements\n6\n1 15 2 0 1 1\n2 1 2 1 1 1 2\n\
3 2 2 2 1 1 2 9\n4 2 2 2 1 2 3 9\n5 2 2 2 1 3 4 9\n6 2 2 2 1 4 1 9\n$EndElements\n";
        let m = parse_msh2(text, Path::new("sq.msh")).unwrap();
        assert_eq!(m.n_vertices(), 5);
        assert_eq!(m.n_triangles(), 4);
        assert!((m.total_area() - 1.0).abs() < 1e-14);
        assert_eq!(m.tagged_vertices("bottom").len(), 2);
        assert_eq!(m.boundary.len(), 4);
    }
}
