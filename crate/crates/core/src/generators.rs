//! Standard test complexes and complex-building operators.
//!
//! Operators that combine two complexes keep the first operand's vertex ids
//! and shift the second's by `f_0` of the first. If any label of the second
//! operand collides with one of the first, every label of the second operand
//! gets a `'` suffix (repeated until the label sets are disjoint).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::complex::{Face, SimplicialComplex, VertexId, VertexTable, MAX_FACET_SIZE};
use crate::error::{Error, Result};

/// Boundary of the `n`-simplex on vertices `0..=n`, a triangulated `S^{n-1}`.
pub fn simplex_boundary(n: u32) -> Result<SimplicialComplex> {
    if n < 1 || n as usize > MAX_FACET_SIZE {
        return Err(Error::InvalidParameter {
            generator: "simplex_boundary",
            reason: format!("n must be in 1..={MAX_FACET_SIZE}, got {n}"),
        });
    }
    let facets = (0..=n)
        .rev()
        .map(|skip| (0..=n).filter(move |&v| v != skip).map(|v| v.to_string()));
    SimplicialComplex::from_facets(facets)
}

/// Boundary of the `n`-dimensional cross-polytope on vertices `p1, m1, ...,
/// pn, mn`: every subset containing no pair `{p_i, m_i}`.
pub fn cross_polytope_boundary(n: u32) -> Result<SimplicialComplex> {
    if n < 1 || n as usize > MAX_FACET_SIZE {
        return Err(Error::InvalidParameter {
            generator: "cross_polytope_boundary",
            reason: format!("n must be in 1..={MAX_FACET_SIZE}, got {n}"),
        });
    }
    let labels: Vec<String> = (1..=n).flat_map(|i| [format!("p{i}"), format!("m{i}")]).collect();
    let table = VertexTable::from_unique_labels(labels);
    let facets = (0u64..1 << n)
        .map(|mask| {
            Face::from_sorted(
                (0..n)
                    .map(|i| VertexId(2 * i + ((mask >> i) & 1) as u32))
                    .collect(),
            )
        })
        .collect();
    Ok(SimplicialComplex::from_table_and_faces(table, facets))
}

/// The cycle on vertices `0..n`.
pub fn polygon(n: u32) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidParameter {
            generator: "polygon",
            reason: format!("n must be at least 3, got {n}"),
        });
    }
    SimplicialComplex::from_facets((0..n).map(|i| [i.to_string(), ((i + 1) % n).to_string()]))
}

/// The 7-vertex torus: facets `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> Result<SimplicialComplex> {
    let facets = (0..7u32)
        .flat_map(|i| [[i, i + 1, i + 3], [i, i + 2, i + 3]].map(|f| f.map(|v| (v % 7).to_string())));
    let k = SimplicialComplex::from_facets(facets)?;
    validate_closed_surface("torus7", &k, &[7, 21, 14], 6)?;
    Ok(k)
}

/// The 6-vertex real projective plane, obtained as the quotient of the
/// icosahedron by the antipodal map.
pub fn projective_plane6() -> Result<SimplicialComplex> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut points: Vec<[f64; 3]> = Vec::with_capacity(12);
    for a in [1.0, -1.0] {
        for b in [phi, -phi] {
            points.push([0.0, a, b]);
            points.push([a, b, 0.0]);
            points.push([b, 0.0, a]);
        }
    }
    let dist2 = |p: &[f64; 3], q: &[f64; 3]| -> f64 { p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum() };
    // Icosahedron edges have length 2; the next distance up is 2φ.
    let adjacent = |i: usize, j: usize| (dist2(&points[i], &points[j]) - 4.0).abs() < 1e-9;

    // Antipodal classes, numbered in order of first appearance.
    let mut class = vec![usize::MAX; points.len()];
    let mut classes = 0;
    for i in 0..points.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let neg = points[i].map(|x| -x);
        let j = (0..points.len())
            .find(|&j| dist2(&points[j], &neg) < 1e-9)
            .ok_or_else(|| Error::Validation {
                generator: "projective_plane6",
                reason: "icosahedron vertex without antipode".into(),
            })?;
        class[i] = classes;
        class[j] = classes;
        classes += 1;
    }

    let mut facets: Vec<[usize; 3]> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    let mut f = [class[i], class[j], class[k]];
                    f.sort_unstable();
                    facets.push(f);
                }
            }
        }
    }
    if facets.len() != 20 {
        return Err(Error::Validation {
            generator: "projective_plane6",
            reason: format!("expected 20 icosahedron faces, found {}", facets.len()),
        });
    }
    facets.sort_unstable();
    facets.dedup();
    let k = SimplicialComplex::from_facets(facets.iter().map(|f| f.map(|v| v.to_string())))?;
    validate_closed_surface("projective_plane6", &k, &[6, 15, 10], 5)?;
    Ok(k)
}

/// Checks the f-vector, that every edge lies in exactly two triangles, and
/// that every vertex link is a single cycle of the given length.
fn validate_closed_surface(
    generator: &'static str,
    k: &SimplicialComplex,
    f: &[u64],
    link_cycle: usize,
) -> Result<()> {
    let fail = |reason: String| Err(Error::Validation { generator, reason });
    if k.face_counts() != f {
        return fail(format!("f-vector {:?}, expected {f:?}", k.face_counts()));
    }
    for edge in k.faces_of_dim(1) {
        let n = k.facets_containing(edge).count();
        if n != 2 {
            return fail(format!("edge {edge} lies in {n} triangles"));
        }
    }
    for v in k.faces_of_dim(0) {
        let link = k.link(v)?;
        if !is_single_cycle(&link, link_cycle) {
            return fail(format!("link of vertex {v} is not a {link_cycle}-cycle"));
        }
    }
    Ok(())
}

fn is_single_cycle(k: &SimplicialComplex, len: usize) -> bool {
    if k.dim() != 1 || k.face_counts() != [len as u64, len as u64] || !k.is_pure() {
        return false;
    }
    let mut adj = vec![Vec::new(); len];
    for e in k.faces_of_dim(1) {
        let (a, b) = (e.vertices()[0].index(), e.vertices()[1].index());
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|n| n.len() != 2) {
        return false;
    }
    // Walk the cycle from vertex 0.
    let (mut prev, mut cur, mut steps) = (0, adj[0][0], 1);
    while cur != 0 {
        let next = if adj[cur][0] == prev {
            adj[cur][1]
        } else {
            adj[cur][0]
        };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == len
}

fn point(label: &str) -> SimplicialComplex {
    SimplicialComplex::from_facets([[label]]).expect("single vertex")
}

/// Labels for the second operand, suffixed until disjoint from `taken`.
fn disjoint_labels(taken: &VertexTable, labels: &[String]) -> Vec<String> {
    let mut suffix = String::new();
    loop {
        let candidate: Vec<String> = labels.iter().map(|l| format!("{l}{suffix}")).collect();
        if candidate.iter().all(|l| !taken.contains_label(l)) {
            return candidate;
        }
        suffix.push('\'');
    }
}

/// Shared vertex table for `a` followed by `b`, and `b`'s id offset.
fn combined_table(a: &SimplicialComplex, b: &SimplicialComplex) -> (VertexTable, u32) {
    let mut labels = a.vertex_table().labels().to_vec();
    labels.extend(disjoint_labels(a.vertex_table(), b.vertex_table().labels()));
    (VertexTable::from_unique_labels(labels), a.num_vertices() as u32)
}

fn shift(face: &Face, offset: u32) -> Face {
    Face::from_sorted(face.vertices().iter().map(|v| VertexId(v.0 + offset)).collect())
}

/// Join `A * B`: all unions `α ∪ β` of a face or ∅ from each side.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (table, offset) = combined_table(a, b);
    let facets: Vec<Face> = if a.is_empty() {
        b.facets().iter().map(|f| shift(f, offset)).collect()
    } else if b.is_empty() {
        a.facets().to_vec()
    } else {
        let mut out = Vec::with_capacity(a.facets().len() * b.facets().len());
        for fa in a.facets() {
            for fb in b.facets() {
                if fa.len() + fb.len() > MAX_FACET_SIZE {
                    return Err(Error::FacetTooLarge {
                        facet: out.len(),
                        size: fa.len() + fb.len(),
                        max: MAX_FACET_SIZE,
                    });
                }
                out.push(fa.union(&shift(fb, offset)));
            }
        }
        out
    };
    Ok(SimplicialComplex::from_table_and_faces(table, facets))
}

/// Join with a new vertex `apex`.
pub fn cone(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    join(k, &point("apex"))
}

/// Join with two new vertices `north` and `south`.
pub fn suspension(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let poles = SimplicialComplex::from_facets([["north"], ["south"]])?;
    join(k, &poles)
}

pub fn disjoint_union(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (table, offset) = combined_table(a, b);
    let facets = a
        .facets()
        .iter()
        .cloned()
        .chain(b.facets().iter().map(|f| shift(f, offset)))
        .collect();
    Ok(SimplicialComplex::from_table_and_faces(table, facets))
}

/// Order complex of the face poset. Vertex `b{0.2.5}` stands for the face
/// with vertex ids 0, 2, 5 of the input; vertices follow the input's
/// canonical face order.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let faces: Vec<&Face> = k.faces().collect();
    let index: HashMap<&Face, u32> = faces.iter().enumerate().map(|(i, f)| (*f, i as u32)).collect();
    let labels = faces.iter().map(|f| format!("b{f}")).collect();

    // Maximal chains are the complete flags of facets.
    let mut chains = Vec::new();
    for facet in k.facets() {
        if facet.len() > MAX_FACET_SIZE {
            return Err(Error::FacetTooLarge {
                facet: chains.len(),
                size: facet.len(),
                max: MAX_FACET_SIZE,
            });
        }
        let mut chain = Vec::with_capacity(facet.len());
        flags(facet, &index, &mut chain, &mut chains);
    }
    Ok(SimplicialComplex::from_table_and_faces(
        VertexTable::from_unique_labels(labels),
        chains,
    ))
}

/// Pushes every chain `{v_1} ⊂ ... ⊂ face` extended by `suffix` (built from
/// the top down) onto `out`.
fn flags(face: &Face, index: &HashMap<&Face, u32>, suffix: &mut Vec<VertexId>, out: &mut Vec<Face>) {
    suffix.push(VertexId(index[face]));
    if face.len() == 1 {
        let mut chain = suffix.clone();
        chain.sort_unstable();
        out.push(Face::from_sorted(chain));
    } else {
        for sub in face.boundary() {
            flags(&sub, index, suffix, out);
        }
    }
    suffix.pop();
}

/// A generator expression: `name[:p][(arg,arg)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    SimplexBoundary(u32),
    CrossPolytopeBoundary(u32),
    Polygon(u32),
    Torus7,
    ProjectivePlane6,
    Cone(Box<GeneratorSpec>),
    Suspension(Box<GeneratorSpec>),
    Join(Box<GeneratorSpec>, Box<GeneratorSpec>),
    DisjointUnion(Box<GeneratorSpec>, Box<GeneratorSpec>),
    BarycentricSubdivision(Box<GeneratorSpec>),
}

pub const GENERATOR_NAMES: [&str; 10] = [
    "simplex_boundary",
    "cross_polytope_boundary",
    "polygon",
    "torus7",
    "projective_plane6",
    "cone",
    "suspension",
    "join",
    "disjoint_union",
    "barycentric_subdivision",
];

impl GeneratorSpec {
    pub fn name(&self) -> &'static str {
        use GeneratorSpec::*;
        match self {
            SimplexBoundary(_) => "simplex_boundary",
            CrossPolytopeBoundary(_) => "cross_polytope_boundary",
            Polygon(_) => "polygon",
            Torus7 => "torus7",
            ProjectivePlane6 => "projective_plane6",
            Cone(_) => "cone",
            Suspension(_) => "suspension",
            Join(..) => "join",
            DisjointUnion(..) => "disjoint_union",
            BarycentricSubdivision(_) => "barycentric_subdivision",
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        use GeneratorSpec::*;
        match self {
            SimplexBoundary(n) => simplex_boundary(*n),
            CrossPolytopeBoundary(n) => cross_polytope_boundary(*n),
            Polygon(n) => polygon(*n),
            Torus7 => torus7(),
            ProjectivePlane6 => projective_plane6(),
            Cone(k) => cone(&k.build()?),
            Suspension(k) => suspension(&k.build()?),
            Join(a, b) => join(&a.build()?, &b.build()?),
            DisjointUnion(a, b) => disjoint_union(&a.build()?, &b.build()?),
            BarycentricSubdivision(k) => barycentric_subdivision(&k.build()?),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        f.write_str(self.name())?;
        match self {
            SimplexBoundary(n) | CrossPolytopeBoundary(n) | Polygon(n) => write!(f, ":{n}"),
            Torus7 | ProjectivePlane6 => Ok(()),
            Cone(k) | Suspension(k) | BarycentricSubdivision(k) => write!(f, "({k})"),
            Join(a, b) | DisjointUnion(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Syntax error in a generator expression, with a byte offset.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid generator expression at offset {offset}: {message}")]
pub struct SpecParseError {
    pub offset: usize,
    pub message: String,
}

impl FromStr for GeneratorSpec {
    type Err = SpecParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut p = SpecParser { src: s, pos: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn error(&self, message: impl Into<String>) -> SpecParseError {
        SpecParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &str {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c| !pred(c)).unwrap_or(rest.len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn expr(&mut self) -> std::result::Result<GeneratorSpec, SpecParseError> {
        let start = self.pos;
        let name = self
            .take_while(|c| c.is_ascii_alphanumeric() || c == '_')
            .to_owned();
        if name.is_empty() {
            return Err(self.error("expected a generator name"));
        }
        let param = if self.eat(':') {
            let digits = self.take_while(|c| c.is_ascii_digit());
            let n = digits
                .parse::<u32>()
                .map_err(|_| self.error("expected a non-negative integer parameter"))?;
            Some(n)
        } else {
            None
        };
        let mut args = Vec::new();
        if self.eat('(') {
            loop {
                args.push(self.expr()?);
                if self.eat(',') {
                    continue;
                }
                if self.eat(')') {
                    break;
                }
                return Err(self.error("expected `,` or `)`"));
            }
        }

        let nargs = args.len();
        let mut args = args.into_iter().map(Box::new);
        let at = |p: &Self, message: String| SpecParseError {
            offset: start.min(p.pos),
            message,
        };
        let arity = |want_param: bool, want_args: usize, p: &Self| {
            if param.is_some() != want_param {
                return Err(at(
                    p,
                    if want_param {
                        format!("{name} needs a parameter, e.g. {name}:3")
                    } else {
                        format!("{name} takes no parameter")
                    },
                ));
            }
            if nargs != want_args {
                return Err(at(
                    p,
                    format!("{name} takes {want_args} argument(s), got {nargs}"),
                ));
            }
            Ok(())
        };
        use GeneratorSpec::*;
        let spec = match name.as_str() {
            "simplex_boundary" | "cross_polytope_boundary" | "polygon" => {
                arity(true, 0, self)?;
                let n = param.expect("checked");
                match name.as_str() {
                    "simplex_boundary" => SimplexBoundary(n),
                    "cross_polytope_boundary" => CrossPolytopeBoundary(n),
                    _ => Polygon(n),
                }
            }
            "torus7" | "projective_plane6" => {
                arity(false, 0, self)?;
                if name == "torus7" {
                    Torus7
                } else {
                    ProjectivePlane6
                }
            }
            "cone" | "suspension" | "barycentric_subdivision" => {
                arity(false, 1, self)?;
                let k = args.next().expect("checked");
                match name.as_str() {
                    "cone" => Cone(k),
                    "suspension" => Suspension(k),
                    _ => BarycentricSubdivision(k),
                }
            }
            "join" | "disjoint_union" => {
                arity(false, 2, self)?;
                let (a, b) = (args.next().expect("checked"), args.next().expect("checked"));
                if name == "join" {
                    Join(a, b)
                } else {
                    DisjointUnion(a, b)
                }
            }
            _ => {
                return Err(SpecParseError {
                    offset: start,
                    message: format!(
                        "unknown generator `{name}` (expected one of {})",
                        GENERATOR_NAMES.join(", ")
                    ),
                })
            }
        };
        Ok(spec)
    }
}
