//! Exhaustive searches over small images: group structures on a fixed image,
//! connected subsets of a window of `(Z^2, c_1)`, and all small graphs.

use std::collections::HashMap;
use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::dtg::{classify_np2, np_level, verify_dtg};
use crate::error::{Error, Result};
use crate::graph::{
    automorphisms, find_isomorphism, is_simple_closed_curve, AsGraph, Permutation, SearchLimits,
    SimpleGraph,
};
use crate::groups::{validate_group, FiniteGroup};
use crate::lattice::{Adjacency, DigitalImage, NpLevel, Point};

/// Largest image handled by [`dtg_structures`].
pub const STRUCTURE_BOUND: usize = 12;
/// Largest window half-width handled by [`scan_z2_windows`].
pub const MAX_WINDOW: usize = 2;
/// Largest vertex count handled by [`scan_np2`].
pub const MAX_NP2_VERTICES: usize = 7;

/// Regular subgroups of the automorphism group. Each is returned as the list
/// `σ_0, ..., σ_{n-1}` where `σ_v` is its unique element sending 0 to `v`.
pub fn regular_subgroups(g: &SimpleGraph, limits: &SearchLimits) -> Result<Vec<Vec<Permutation>>> {
    let n = g.order();
    if n == 0 {
        return Ok(Vec::new());
    }
    let auts = automorphisms(g, limits)?;
    let mut by_target: Vec<Vec<&Permutation>> = vec![Vec::new(); n];
    for a in &auts {
        if !a.has_fixed_point() {
            by_target[a.apply(0)].push(a);
        }
    }
    let mut slots: Vec<Option<Permutation>> = vec![None; n];
    slots[0] = Some(Permutation::identity(n));
    let mut out = Vec::new();
    search(&by_target, &mut Vec::new(), slots, &mut out);
    Ok(out)
}

fn search(
    by_target: &[Vec<&Permutation>],
    gens: &mut Vec<Permutation>,
    slots: Vec<Option<Permutation>>,
    out: &mut Vec<Vec<Permutation>>,
) {
    let Some(v) = slots.iter().position(Option::is_none) else {
        out.push(slots.into_iter().flatten().collect());
        return;
    };
    for &candidate in &by_target[v] {
        gens.push(candidate.clone());
        if let Some(grown) = grow(&slots, gens) {
            search(by_target, gens, grown, out);
        }
        gens.pop();
    }
}

/// Closure of the current slots under the generators, or `None` once two
/// elements send 0 to the same vertex.
fn grow(slots: &[Option<Permutation>], gens: &[Permutation]) -> Option<Vec<Option<Permutation>>> {
    let mut slots = slots.to_vec();
    let mut queue: VecDeque<Permutation> = slots.iter().flatten().cloned().collect();
    while let Some(p) = queue.pop_front() {
        for s in gens {
            let q = s.compose(&p);
            let v = q.apply(0);
            match &slots[v] {
                Some(existing) if *existing == q => {}
                Some(_) => return None,
                None => {
                    slots[v] = Some(q.clone());
                    queue.push_back(q);
                }
            }
        }
    }
    Some(slots)
}

/// Group structures with identity at vertex 0 that make the image an `NP_1`
/// digital topological group. Left translations form a regular subgroup of
/// the automorphisms; each candidate is kept only if it verifies.
pub fn dtg_structures<C: AsGraph + ?Sized>(carrier: &C) -> Result<Vec<FiniteGroup>> {
    dtg_structures_with(carrier, STRUCTURE_BOUND, &SearchLimits::default())
}

pub fn dtg_structures_with<C: AsGraph + ?Sized>(
    carrier: &C,
    bound: usize,
    limits: &SearchLimits,
) -> Result<Vec<FiniteGroup>> {
    let g = carrier.as_graph();
    if g.order() > bound {
        return Err(Error::SizeBound {
            size: g.order(),
            bound,
        });
    }
    let limits = SearchLimits {
        max_vertices: limits.max_vertices.max(bound),
        ..*limits
    };
    let mut out = Vec::new();
    for sigma in regular_subgroups(g, &limits)? {
        let rows: Vec<Vec<usize>> = sigma.iter().map(|s| s.as_slice().to_vec()).collect();
        let group = validate_group(&rows).map_err(|e| Error::TheoremFalsified {
            statement: "a regular subgroup of automorphisms defines a group".into(),
            detail: e.to_string(),
        })?;
        if verify_dtg(g, &group, NpLevel::Np1)?.ok() {
            out.push(group);
        }
    }
    Ok(out)
}

/// Result of examining one candidate image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub vertices: usize,
    /// Lattice points, when the candidate lives in a window of `Z^2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
    pub edges: Vec<(usize, usize)>,
    pub structure_count: usize,
    /// Highest level reached by any structure.
    pub np_level: Option<NpLevel>,
    /// What the classification theorem predicts.
    pub predicted: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub scan: String,
    pub bound: usize,
    pub candidates: usize,
    pub exceptions: usize,
    pub records: Vec<CandidateRecord>,
}

impl ScanReport {
    fn new(scan: &str, bound: usize, records: Vec<CandidateRecord>) -> Self {
        ScanReport {
            scan: scan.into(),
            bound,
            candidates: records.len(),
            exceptions: records.iter().filter(|r| !r.consistent).count(),
            records,
        }
    }

    pub fn consistent(&self) -> bool {
        self.exceptions == 0
    }
}

fn best_level<C: AsGraph + ?Sized>(carrier: &C, groups: &[FiniteGroup]) -> Result<Option<NpLevel>> {
    let mut best = None;
    for g in groups {
        best = best.max(np_level(carrier, g)?);
    }
    Ok(best)
}

/// Cells of `[-w, w]^2` as bits, row-major from the bottom-left corner.
struct Window {
    w: i64,
    side: usize,
    neighbors: Vec<u32>,
}

impl Window {
    fn new(w: usize) -> Self {
        let side = 2 * w + 1;
        let neighbors = (0..side * side)
            .map(|c| {
                let (x, y) = (c % side, c / side);
                let mut m = 0u32;
                if x > 0 {
                    m |= 1 << (c - 1);
                }
                if x + 1 < side {
                    m |= 1 << (c + 1);
                }
                if y > 0 {
                    m |= 1 << (c - side);
                }
                if y + 1 < side {
                    m |= 1 << (c + side);
                }
                m
            })
            .collect();
        Window {
            w: w as i64,
            side,
            neighbors,
        }
    }

    fn cells(&self) -> usize {
        self.side * self.side
    }

    fn point(&self, c: usize) -> Point {
        Point::from(vec![(c % self.side) as i64 - self.w, (c / self.side) as i64 - self.w])
    }

    fn touches_corner_sides(&self, set: u32) -> bool {
        let column: u32 = (0..self.side).map(|y| 1u32 << (y * self.side)).sum();
        let row: u32 = (1u32 << self.side) - 1;
        set & column != 0 && set & row != 0
    }

    fn is_regular(&self, set: u32) -> bool {
        let mut degree = None;
        let mut rest = set;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.neighbors[c] & set).count_ones();
            if *degree.get_or_insert(d) != d {
                return false;
            }
        }
        true
    }

    /// Every connected subset, each exactly once, in a fixed order.
    fn connected_subsets(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for anchor in 0..self.cells() {
            let below: u32 = (1u32 << anchor) - 1;
            let start = 1u32 << anchor;
            self.extend(start, self.neighbors[anchor] & !below, below | start, &mut out);
        }
        out
    }

    fn extend(&self, current: u32, candidates: u32, excluded: u32, out: &mut Vec<u32>) {
        out.push(current);
        let mut candidates = candidates;
        let mut excluded = excluded;
        while candidates != 0 {
            let bit = candidates & candidates.wrapping_neg();
            candidates &= !bit;
            excluded |= bit;
            let c = bit.trailing_zeros() as usize;
            let fresh = self.neighbors[c] & !excluded & !current & !candidates;
            self.extend(current | bit, candidates | fresh, excluded, out);
        }
    }

    fn image(&self, set: u32) -> Result<DigitalImage> {
        let points = (0..self.cells())
            .filter(|&c| set >> c & 1 == 1)
            .map(|c| self.point(c))
            .collect();
        DigitalImage::new(2, points, Adjacency::Cu(1))
    }
}

/// Connected subsets of `[-w, w]^2` under `c_1`, one per translation class,
/// as images.
pub fn z2_window_subsets(w: usize) -> Result<Vec<DigitalImage>> {
    check_window(w)?;
    let window = Window::new(w);
    window
        .connected_subsets()
        .into_iter()
        .filter(|&s| window.touches_corner_sides(s))
        .map(|s| window.image(s))
        .collect()
}

fn check_window(w: usize) -> Result<()> {
    if w > MAX_WINDOW {
        return Err(Error::InvalidArgument(format!(
            "window half-width {w} exceeds {MAX_WINDOW}"
        )));
    }
    Ok(())
}

/// Checks that a connected subset of `[-w, w]^2` carries a group structure
/// exactly when it is a simple closed curve or has at most two points.
///
/// Subsets within [`STRUCTURE_BOUND`] points are searched directly. Larger
/// subsets that are not regular are recorded without search, since every
/// verified structure is vertex-transitive; regular ones are searched with
/// a raised bound.
pub fn scan_z2_windows(w: usize) -> Result<ScanReport> {
    check_window(w)?;
    let window = Window::new(w);
    let subsets: Vec<u32> = window
        .connected_subsets()
        .into_iter()
        .filter(|&s| window.touches_corner_sides(s))
        .collect();
    let limits = SearchLimits::with_max_vertices(window.cells());
    let records = subsets
        .par_iter()
        .map(|&set| {
            let image = window.image(set)?;
            let n = image.len();
            let predicted = n <= 2 || is_simple_closed_curve(image.graph());
            let structures = if n <= STRUCTURE_BOUND || window.is_regular(set) {
                dtg_structures_with(&image, window.cells(), &limits)?
            } else {
                Vec::new()
            };
            let np_level = best_level(&image, &structures)?;
            Ok(CandidateRecord {
                vertices: n,
                edges: image.graph().edges().collect(),
                points: Some(image.points().to_vec()),
                structure_count: structures.len(),
                np_level,
                predicted,
                consistent: predicted == !structures.is_empty(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::new("z2", w, records))
}

fn invariant(g: &SimpleGraph) -> Vec<(usize, Vec<usize>)> {
    let mut key: Vec<(usize, Vec<usize>)> = (0..g.order())
        .map(|v| {
            let mut around: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            around.sort_unstable();
            (g.degree(v), around)
        })
        .collect();
    key.sort();
    key
}

/// One graph from each isomorphism class on exactly `n` vertices, built by
/// attaching a new vertex to every neighbor set of every class on `n - 1`.
pub fn graph_classes(n: usize) -> Result<Vec<SimpleGraph>> {
    if n > MAX_NP2_VERTICES {
        return Err(Error::SizeBound {
            size: n,
            bound: MAX_NP2_VERTICES,
        });
    }
    let mut classes = vec![SimpleGraph::empty(0)];
    for k in 1..=n {
        let mut next: Vec<SimpleGraph> = Vec::new();
        let mut buckets: HashMap<Vec<(usize, Vec<usize>)>, Vec<usize>> = HashMap::new();
        for base in &classes {
            for mask in 0u32..(1 << (k - 1)) {
                let edges = base
                    .edges()
                    .chain((0..k - 1).filter(|&i| mask >> i & 1 == 1).map(|i| (i, k - 1)));
                let g = SimpleGraph::from_edges(k, edges)?;
                let bucket = buckets.entry(invariant(&g)).or_default();
                let mut known = false;
                for &i in bucket.iter() {
                    if find_isomorphism(&g, &next[i], &SearchLimits::default())?.is_some() {
                        known = true;
                        break;
                    }
                }
                if !known {
                    bucket.push(next.len());
                    next.push(g);
                }
            }
        }
        classes = next;
    }
    Ok(classes)
}

/// Checks, for every graph on at most `max_vertices` vertices, that an
/// `NP_2` structure exists exactly on regular cluster graphs.
pub fn scan_np2(max_vertices: usize) -> Result<ScanReport> {
    if max_vertices > MAX_NP2_VERTICES {
        return Err(Error::SizeBound {
            size: max_vertices,
            bound: MAX_NP2_VERTICES,
        });
    }
    let mut graphs = Vec::new();
    for n in 1..=max_vertices {
        graphs.extend(graph_classes(n)?);
    }
    let records = graphs
        .par_iter()
        .map(|g| {
            let structures = dtg_structures(g)?;
            let mut np2 = 0;
            for s in &structures {
                if verify_dtg(g, s, NpLevel::Np2)?.ok() {
                    np2 += 1;
                }
            }
            let predicted = classify_np2(g)?.admits_np2;
            Ok(CandidateRecord {
                vertices: g.order(),
                points: None,
                edges: g.edges().collect(),
                structure_count: structures.len(),
                np_level: best_level(g, &structures)?,
                predicted,
                consistent: predicted == (np2 > 0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::new("np2", max_vertices, records))
}
