//! Integer-lattice geometry: points, `c_u` adjacencies, digital intervals,
//! digital images and normal product adjacencies.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AsGraph, SimpleGraph};

/// A point of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a point needs at least one coordinate".into()));
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// Concatenates coordinates, giving the point of a product image.
    pub fn concat(&self, other: &Point) -> Point {
        let mut coords = self.0.clone();
        coords.extend_from_slice(&other.0);
        Point(coords)
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The adjacency relation of a digital image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjacency {
    /// `c_u` adjacency induced by the lattice.
    Cu(usize),
    /// An explicit edge set, stored as normalized pairs `i < j`.
    Explicit(BTreeSet<(usize, usize)>),
}

impl Adjacency {
    /// Builds an explicit adjacency, normalizing each pair to `i < j`.
    pub fn explicit<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Adjacency::Explicit(set))
    }
}

/// Level of a normal product adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NpLevel {
    #[serde(rename = "NP1")]
    Np1,
    #[serde(rename = "NP2")]
    Np2,
}

impl NpLevel {
    /// Maximum number of coordinates allowed to move along an edge.
    pub fn positions(self) -> usize {
        match self {
            NpLevel::Np1 => 1,
            NpLevel::Np2 => 2,
        }
    }
}

impl fmt::Display for NpLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NpLevel::Np1 => write!(f, "NP1"),
            NpLevel::Np2 => write!(f, "NP2"),
        }
    }
}

impl std::str::FromStr for NpLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "np1" | "1" => Ok(NpLevel::Np1),
            "np2" | "2" => Ok(NpLevel::Np2),
            other => Err(Error::InvalidArgument(format!("unknown NP level `{other}`"))),
        }
    }
}

/// `c_u` adjacency of two lattice points.
pub fn cu_adjacent(p: &Point, q: &Point, u: usize) -> Result<bool> {
    if p.dimension() != q.dimension() {
        return Err(Error::DimensionMismatch {
            expected: p.dimension(),
            found: q.dimension(),
        });
    }
    if u == 0 || u > p.dimension() {
        return Err(Error::AdjacencyOutOfRange {
            u,
            dimension: p.dimension(),
        });
    }
    Ok(cu_adjacent_unchecked(p.coords(), q.coords(), u))
}

fn cu_adjacent_unchecked(p: &[i64], q: &[i64], u: usize) -> bool {
    let mut moved = 0;
    for (&a, &b) in p.iter().zip(q) {
        match (a as i128 - b as i128).abs() {
            0 => {}
            1 => moved += 1,
            _ => return false,
        }
    }
    (1..=u).contains(&moved)
}

/// A finite set of lattice points with an adjacency relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalImage {
    dimension: usize,
    points: Vec<Point>,
    adjacency: Adjacency,
    graph: SimpleGraph,
}

impl DigitalImage {
    pub fn new(dimension: usize, points: Vec<Point>, adjacency: Adjacency) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidArgument("a digital image needs at least one point".into()));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.dimension(),
                });
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.coords().to_vec()));
            }
        }
        let n = points.len();
        let graph = match &adjacency {
            Adjacency::Cu(u) => {
                if *u == 0 || *u > dimension {
                    return Err(Error::AdjacencyOutOfRange { u: *u, dimension });
                }
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if cu_adjacent_unchecked(points[i].coords(), points[j].coords(), *u) {
                            edges.push((i, j));
                        }
                    }
                }
                SimpleGraph::from_edges(n, edges)?
            }
            Adjacency::Explicit(edges) => SimpleGraph::from_edges(n, edges.iter().copied())?,
        };
        Ok(DigitalImage {
            dimension,
            points,
            adjacency,
            graph,
        })
    }

    /// An image carried by an abstract graph: vertex `i` sits at the point `(i)`
    /// of `Z` and adjacency is explicit.
    pub fn from_graph(graph: &SimpleGraph) -> Result<Self> {
        let points = (0..graph.order()).map(|i| Point(vec![i as i64])).collect();
        DigitalImage::new(1, points, Adjacency::explicit(graph.edges())?)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Adjacency query by point index.
    pub fn adjacent(&self, i: usize, j: usize) -> Result<bool> {
        let len = self.len();
        for index in [i, j] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        Ok(self.graph.adjacent(i, j))
    }

    /// The same point set with every edge listed explicitly.
    pub fn to_explicit(&self) -> DigitalImage {
        DigitalImage {
            dimension: self.dimension,
            points: self.points.clone(),
            adjacency: Adjacency::Explicit(self.graph.edges().collect()),
            graph: self.graph.clone(),
        }
    }

    /// Sub-image on the given point indices with the restricted adjacency.
    pub fn restrict(&self, indices: &[usize]) -> Result<DigitalImage> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let sub = self.graph.induced(indices);
        DigitalImage::new(self.dimension, points, Adjacency::explicit(sub.edges())?)
    }
}

impl AsGraph for DigitalImage {
    fn as_graph(&self) -> &SimpleGraph {
        &self.graph
    }
}

/// Dispatching adjacency query; see [`DigitalImage::adjacent`].
pub fn image_adjacent(image: &DigitalImage, i: usize, j: usize) -> Result<bool> {
    image.adjacent(i, j)
}

/// The digital interval `[a, b]` of `Z` under `c_1`.
pub fn digital_interval(a: i64, b: i64) -> Result<DigitalImage> {
    if a >= b {
        return Err(Error::InvalidArgument(format!("digital interval needs a < b, got [{a}, {b}]")));
    }
    let points = (a..=b).map(|x| Point(vec![x])).collect();
    DigitalImage::new(1, points, Adjacency::Cu(1))
}

/// Iterates the `NP_u`-adjacent pairs `(p, q)`, `p < q`, of the product of two
/// graphs in lexicographic order. Product vertex `(x, y)` has index `x * |Y| + y`.
pub(crate) fn np_adjacent_pairs<'a>(
    left: &'a SimpleGraph,
    right: &'a SimpleGraph,
    level: NpLevel,
) -> impl Iterator<Item = (usize, usize)> + 'a {
    let width = right.order();
    let limit = level.positions();
    (0..left.order()).flat_map(move |x| {
        (0..width).flat_map(move |y| {
            let p = x * width + y;
            left.closed_neighbors(x).flat_map(move |x2| {
                right.closed_neighbors(y).filter_map(move |y2| {
                    let q = x2 * width + y2;
                    let moved = usize::from(x2 != x) + usize::from(y2 != y);
                    (q > p && moved <= limit).then_some((p, q))
                })
            })
        })
    })
}

/// Normal product adjacency `NP_u` on `X × Y`.
pub fn np_product(x: &DigitalImage, y: &DigitalImage, level: NpLevel) -> Result<DigitalImage> {
    let mut points = Vec::with_capacity(x.len() * y.len());
    for p in x.points() {
        for q in y.points() {
            points.push(p.concat(q));
        }
    }
    let edges = np_adjacent_pairs(x.graph(), y.graph(), level);
    DigitalImage::new(
        x.dimension() + y.dimension(),
        points,
        Adjacency::explicit(edges)?,
    )
}
