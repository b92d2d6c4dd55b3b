//! Finite abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] stores every nonempty face explicitly, bucketed by
//! dimension and sorted lexicographically within each bucket. Vertices are
//! dense [`VertexId`]s `0..f_0`; external string labels live in a
//! [`VertexTable`].
//!
//! Complexes are immutable once built. All constructors return the downward
//! closure of their input.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest facet accepted by the constructors. Closure is exponential in the
/// facet size.
pub const MAX_FACET_SIZE: usize = 24;

/// Dense vertex index within one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A simplex: a strictly increasing sequence of vertex ids.
///
/// The empty face is a valid value (dimension -1) but is never stored in a
/// complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Sorts the vertices. Returns the first repeated vertex on failure.
    pub fn new(mut vertices: Vec<VertexId>) -> std::result::Result<Self, VertexId> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(w[0]);
        }
        Ok(Face(vertices))
    }

    /// Caller guarantees `vertices` is strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True if every vertex of `other` is a vertex of `self`.
    pub fn is_superset_of(&self, other: &Face) -> bool {
        if other.len() > self.len() {
            return false;
        }
        let mut mine = self.0.iter();
        'outer: for v in &other.0 {
            for w in mine.by_ref() {
                match w.cmp(v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Face(out)
    }

    /// Vertices of `self` not in `other`.
    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// The codimension-one faces, obtained by dropping each vertex in turn.
    pub fn boundary(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |skip| {
            Face(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Order by dimension, then lexicographically.
    pub fn canonical_cmp(&self, other: &Face) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Bijection between vertex ids and external labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexTable {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `label`, assigning the next free id on first use.
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = VertexId(self.labels.len() as u32);
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    /// Builds a table from labels that are already unique.
    pub(crate) fn from_unique_labels(labels: Vec<String>) -> Self {
        let index: HashMap<String, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId(i as u32)))
            .collect();
        assert_eq!(index.len(), labels.len(), "vertex labels must be unique");
        VertexTable { labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: VertexId) -> &str {
        &self.labels[id.index()]
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }
}

/// A finite, downward-closed set of nonempty faces.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    table: VertexTable,
    /// `levels[k]` holds the faces with `k + 1` vertices, sorted.
    levels: Vec<Vec<Face>>,
    index: HashSet<Face>,
    /// Maximal faces in canonical order.
    facets: Vec<Face>,
    /// Indices into `facets` of the facets containing each vertex.
    vertex_facets: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.levels == other.levels
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn empty() -> Self {
        Self::from_table_and_faces(VertexTable::new(), Vec::new())
    }

    /// Downward closure of a list of facets given by vertex labels.
    ///
    /// Labels are interned in first-appearance order. Duplicate and dominated
    /// input faces are absorbed; empty input faces are ignored.
    pub fn from_facets<I, F, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = VertexTable::new();
        let mut faces = Vec::new();
        for (n, facet) in facets.into_iter().enumerate() {
            let ids: Vec<VertexId> = facet.into_iter().map(|l| table.intern(l.as_ref())).collect();
            if ids.len() > MAX_FACET_SIZE {
                return Err(Error::FacetTooLarge {
                    facet: n,
                    size: ids.len(),
                    max: MAX_FACET_SIZE,
                });
            }
            let face = Face::new(ids).map_err(|v| Error::DuplicateVertex {
                facet: n,
                label: table.label(v).to_owned(),
            })?;
            if !face.is_empty() {
                faces.push(face);
            }
        }
        Ok(Self::from_table_and_faces(table, faces))
    }

    /// Downward closure of `faces` over an existing vertex table.
    ///
    /// Every vertex of `table` must occur in some face.
    pub(crate) fn from_table_and_faces(table: VertexTable, faces: Vec<Face>) -> Self {
        let top = faces.iter().map(Face::len).max().unwrap_or(0);
        // Per level: face -> "is contained in a larger face".
        let mut marked: Vec<HashMap<Face, bool>> = vec![HashMap::new(); top];
        for face in faces {
            if !face.is_empty() {
                let k = face.len() - 1;
                marked[k].entry(face).or_insert(false);
            }
        }
        for k in (1..top).rev() {
            let (lower, upper) = marked.split_at_mut(k);
            let below = &mut lower[k - 1];
            for face in upper[0].keys() {
                for sub in face.boundary() {
                    below.insert(sub, true);
                }
            }
        }

        let mut facets = Vec::new();
        let mut levels = Vec::with_capacity(top);
        let mut index = HashSet::new();
        for level in marked {
            let mut faces: Vec<Face> = Vec::with_capacity(level.len());
            for (face, dominated) in level {
                if !dominated {
                    facets.push(face.clone());
                }
                faces.push(face);
            }
            faces.sort_unstable();
            index.extend(faces.iter().cloned());
            levels.push(faces);
        }
        facets.sort_unstable_by(Face::canonical_cmp);

        let mut vertex_facets = vec![Vec::new(); table.len()];
        for (i, facet) in facets.iter().enumerate() {
            for v in facet.vertices() {
                vertex_facets[v.index()].push(i);
            }
        }
        debug_assert_eq!(
            levels.first().map_or(0, Vec::len),
            table.len(),
            "every vertex of the table must be a face"
        );

        SimplicialComplex {
            table,
            levels,
            index,
            facets,
            vertex_facets,
        }
    }

    /// Closure of `faces` (ids of `self`), relabeled densely in ascending id
    /// order and keeping the original labels.
    fn induced(&self, faces: Vec<Face>) -> Self {
        let mut used: Vec<VertexId> = faces.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let mut remap = vec![u32::MAX; self.table.len()];
        for (new, old) in used.iter().enumerate() {
            remap[old.index()] = new as u32;
        }
        let labels = used.iter().map(|&v| self.table.label(v).to_owned()).collect();
        let faces = faces
            .into_iter()
            .map(|f| Face::from_sorted(f.vertices().iter().map(|v| VertexId(remap[v.index()])).collect()))
            .collect();
        Self::from_table_and_faces(VertexTable::from_unique_labels(labels), faces)
    }

    pub fn vertex_table(&self) -> &VertexTable {
        &self.table
    }

    pub fn num_vertices(&self) -> usize {
        self.table.len()
    }

    /// Total number of nonempty faces.
    pub fn num_faces(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Maximum face dimension, or -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.levels.len() as i64 - 1
    }

    /// Faces of dimension `dim`, sorted lexicographically.
    pub fn faces_of_dim(&self, dim: usize) -> &[Face] {
        self.levels.get(dim).map_or(&[], Vec::as_slice)
    }

    /// All faces in canonical (dimension, lexicographic) order.
    pub fn faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.levels.iter().flatten()
    }

    /// Number of faces per dimension.
    pub fn face_counts(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.index.contains(face)
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn label(&self, v: VertexId) -> &str {
        self.table.label(v)
    }

    pub fn face_labels(&self, face: &Face) -> Vec<String> {
        face.vertices()
            .iter()
            .map(|&v| self.label(v).to_owned())
            .collect()
    }

    /// Looks up a face by its vertex labels. Returns `None` if a label is
    /// unknown, repeated, or the set is not a face.
    pub fn face_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<Face> {
        let ids = labels
            .iter()
            .map(|l| self.table.id(l.as_ref()))
            .collect::<Option<Vec<_>>>()?;
        let face = Face::new(ids).ok()?;
        (face.is_empty() || self.contains(&face)).then_some(face)
    }

    /// Facets containing `face`, in canonical order.
    pub fn facets_containing<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Face> + 'a {
        let candidates: &[usize] = match face.vertices().first() {
            Some(v) => &self.vertex_facets[v.index()],
            None => &[],
        };
        candidates
            .iter()
            .map(move |&i| &self.facets[i])
            .filter(move |f| f.is_superset_of(face))
    }

    fn require_face(&self, face: &Face) -> Result<()> {
        if face.is_empty() {
            return Err(Error::EmptyFace);
        }
        if !self.contains(face) {
            return Err(Error::FaceNotInComplex(
                face.vertices()
                    .iter()
                    .map(|v| {
                        if v.index() < self.table.len() {
                            self.label(*v).to_owned()
                        } else {
                            format!("#{v}")
                        }
                    })
                    .collect(),
            ));
        }
        Ok(())
    }

    /// The link `{ τ : τ ∩ σ = ∅, τ ∪ σ ∈ K }`, relabeled densely.
    pub fn link(&self, sigma: &Face) -> Result<Self> {
        self.require_face(sigma)?;
        let faces = self
            .facets_containing(sigma)
            .map(|f| f.difference(sigma))
            .collect();
        Ok(self.induced(faces))
    }

    /// Euler characteristic of the link of `sigma`, without relabeling.
    pub(crate) fn link_euler_characteristic(&self, sigma: &Face) -> i64 {
        let tops: Vec<Face> = self
            .facets_containing(sigma)
            .map(|f| f.difference(sigma))
            .filter(|f| !f.is_empty())
            .collect();
        if tops.is_empty() {
            return 0;
        }
        let mut seen: HashSet<Face> = HashSet::new();
        let mut frontier: Vec<Face> = Vec::new();
        for f in tops {
            if seen.insert(f.clone()) {
                frontier.push(f);
            }
        }
        let mut chi = 0i64;
        while let Some(face) = frontier.pop() {
            chi += if face.len() % 2 == 1 { 1 } else { -1 };
            if face.len() > 1 {
                for sub in face.boundary() {
                    if seen.insert(sub.clone()) {
                        frontier.push(sub);
                    }
                }
            }
        }
        chi
    }

    /// Closed star: closure of the faces containing `sigma`, relabeled densely.
    pub fn star(&self, sigma: &Face) -> Result<Self> {
        self.require_face(sigma)?;
        let faces = self.facets_containing(sigma).cloned().collect();
        Ok(self.induced(faces))
    }

    /// True iff every facet has dimension `dim()`. The empty complex is pure.
    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// First facet (canonical order) whose dimension is below `dim()`.
    pub fn purity_violation(&self) -> Option<&Face> {
        let d = self.dim();
        self.facets.iter().find(|f| f.dim() != d)
    }

    /// True iff every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> bool {
        self.flag_violation().is_none()
    }

    /// Smallest (then lexicographically first) clique of the 1-skeleton that
    /// is not a face. Such a clique is a minimal non-face: all its proper
    /// subsets are faces.
    pub fn flag_violation(&self) -> Option<Face> {
        // A minimal non-face of size s+1 has all of its s-subsets as faces,
        // so s ranges over existing face sizes >= 2.
        for level in self.levels.iter().skip(1) {
            for face in level {
                let last = *face.vertices().last().expect("nonempty face");
                for w in (last.0 + 1)..self.table.len() as u32 {
                    let w = VertexId(w);
                    let mut candidate = face.vertices().to_vec();
                    candidate.push(w);
                    let candidate = Face::from_sorted(candidate);
                    if self.contains(&candidate) {
                        continue;
                    }
                    if candidate.boundary().all(|sub| self.contains(&sub)) {
                        return Some(candidate);
                    }
                }
            }
        }
        None
    }
}
