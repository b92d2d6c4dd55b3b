//! Shared test helpers: random complexes and brute-force oracles that do not
//! go through the library's closure, link, or polynomial code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use eulerian_kit::generators::{self, GeneratorSpec};
use eulerian_kit::SimplicialComplex;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::RngExt;

pub type LabelSet = BTreeSet<String>;

/// Random facet list on at most `max_vertices` vertices.
pub fn random_facets(rng: &mut StdRng, max_vertices: u32) -> Vec<Vec<String>> {
    let n = rng.random_range(1..=max_vertices);
    let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let count = rng.random_range(1..=8);
    (0..count)
        .map(|_| {
            let size = rng.random_range(1..=n.min(5)) as usize;
            let mut vs = vertices.clone();
            vs.shuffle(rng);
            vs.truncate(size);
            vs
        })
        .collect()
}

pub fn random_complex(rng: &mut StdRng, max_vertices: u32) -> SimplicialComplex {
    SimplicialComplex::from_facets(random_facets(rng, max_vertices)).unwrap()
}

/// Every nonempty subset of every facet.
pub fn brute_closure<S: AsRef<str>>(facets: &[Vec<S>]) -> BTreeSet<LabelSet> {
    let mut out = BTreeSet::new();
    for f in facets {
        for mask in 1u32..(1 << f.len()) {
            out.insert(
                (0..f.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i].as_ref().to_owned())
                    .collect(),
            );
        }
    }
    out
}

/// All faces of `k` as label sets.
pub fn label_faces(k: &SimplicialComplex) -> BTreeSet<LabelSet> {
    k.faces()
        .map(|f| k.face_labels(f).into_iter().collect())
        .collect()
}

/// Face counts per dimension from a set of label sets.
pub fn counts(faces: &BTreeSet<LabelSet>) -> Vec<u64> {
    let top = faces.iter().map(BTreeSet::len).max().unwrap_or(0);
    (1..=top)
        .map(|n| faces.iter().filter(|f| f.len() == n).count() as u64)
        .collect()
}

/// Link by definition: faces disjoint from σ whose union with σ is a face.
pub fn brute_link(faces: &BTreeSet<LabelSet>, sigma: &LabelSet) -> BTreeSet<LabelSet> {
    faces
        .iter()
        .filter(|t| t.is_disjoint(sigma) && faces.contains(&t.union(sigma).cloned().collect()))
        .cloned()
        .collect()
}

/// Flag test by enumerating every vertex subset.
pub fn brute_is_flag(faces: &BTreeSet<LabelSet>) -> bool {
    let vertices: Vec<&String> = faces
        .iter()
        .filter(|f| f.len() == 1)
        .flat_map(|f| f.iter())
        .collect();
    assert!(vertices.len() <= 16, "brute-force flag test is exponential");
    let adjacent = |a: &String, b: &String| faces.contains(&[a.clone(), b.clone()].into_iter().collect());
    for mask in 1u32..(1 << vertices.len()) {
        let set: Vec<&String> = (0..vertices.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vertices[i])
            .collect();
        let clique = set
            .iter()
            .enumerate()
            .all(|(i, a)| set[i + 1..].iter().all(|b| adjacent(a, b)));
        if clique && !faces.contains(&set.iter().map(|s| (*s).clone()).collect()) {
            return false;
        }
    }
    true
}

/// Σ_{i=0}^{d} f_{i-1} t^{d-i} with f_{-1} = 1, in i128 with naive powers.
pub fn naive_f_poly(counts: &[u64], t: i128) -> i128 {
    let d = counts.len() as u32;
    let mut sum = t.pow(d);
    for (i, &f) in counts.iter().enumerate() {
        sum += f as i128 * t.pow(d - 1 - i as u32);
    }
    sum
}

pub fn alternating_sum(counts: &[u64]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Canonical complexes known to be Eulerian manifolds, with their names.
pub fn canonical_eulerian() -> Vec<(String, SimplicialComplex)> {
    let mut base: Vec<String> = Vec::new();
    for n in 1..=6 {
        base.push(format!("simplex_boundary:{n}"));
    }
    for n in 1..=4 {
        base.push(format!("cross_polytope_boundary:{n}"));
    }
    base.extend(
        [
            "polygon:5",
            "torus7",
            "projective_plane6",
            "join(simplex_boundary:2,simplex_boundary:2)",
            "disjoint_union(simplex_boundary:3,simplex_boundary:3)",
        ]
        .map(String::from),
    );
    for n in 2..=4 {
        base.push(format!("suspension(simplex_boundary:{n})"));
    }
    let mut all = base.clone();
    for spec in &base {
        all.push(format!("barycentric_subdivision({spec})"));
    }
    all.into_iter()
        .map(|s| {
            let k = s.parse::<GeneratorSpec>().unwrap().build().unwrap();
            (s, k)
        })
        .collect()
}

/// Every canonical generator output, Eulerian or not.
pub fn all_generator_outputs() -> Vec<(String, SimplicialComplex)> {
    let mut out = canonical_eulerian();
    for s in [
        "cone(polygon:4)",
        "cone(torus7)",
        "suspension(torus7)",
        "disjoint_union(simplex_boundary:3,polygon:3)",
        "polygon:6",
    ] {
        out.push((s.to_owned(), s.parse::<GeneratorSpec>().unwrap().build().unwrap()));
    }
    out.push(("empty".into(), SimplicialComplex::empty()));
    out.push((
        "cone(empty)".into(),
        generators::cone(&SimplicialComplex::empty()).unwrap(),
    ));
    out
}
