//! Constructors for digital topological groups and the named fixture gallery.

use std::collections::BTreeSet;

use crate::dtg::{verify_dtg, Dtg};
use crate::error::{Error, Result};
use crate::graph::{is_isomorphism, SimpleGraph};
use crate::groups::{
    closure, cyclic_group, dihedral_8, dihedral_8_names, direct_product, subgroup_ops,
    FiniteGroup, Subgroup,
};
use crate::lattice::{Adjacency, DigitalImage, NpLevel, Point};

/// Where a simple closed curve lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ambient {
    /// Explicit cycle adjacency on points of `Z`.
    #[default]
    Abstract,
    /// Boundary of an axis-aligned rectangle in `(Z^2, c_1)`.
    Z2,
}

/// The boundary of a rectangle with perimeter `n`, walked counterclockwise
/// from the middle of the right side. Needs `n = 4` or `n` even and `n >= 8`.
fn rectangle_boundary(n: usize) -> Result<Vec<Point>> {
    if n % 2 == 1 || n == 6 || n < 4 {
        return Err(Error::InvalidArgument(format!(
            "no c_1 simple closed curve of {n} points in Z^2 (need 4 or an even number >= 8)"
        )));
    }
    let half = (n / 2) as i64;
    let width = half / 2;
    let height = half - width;
    let (x0, x1) = (-(width / 2), width - width / 2);
    let (y0, y1) = (-(height / 2), height - height / 2);
    let (mut x, mut y) = (x1, 0);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        points.push(Point::from(vec![x, y]));
        if x == x1 && y < y1 {
            y += 1;
        } else if y == y1 && x > x0 {
            x -= 1;
        } else if x == x0 && y > y0 {
            y -= 1;
        } else {
            x += 1;
        }
    }
    Ok(points)
}

/// `Z_n` on a simple closed curve `x_0, ..., x_{n-1}` with `x_i ~ x_{i+1}`.
pub fn scc_group(n: usize, ambient: Ambient) -> Result<Dtg> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a simple closed curve needs at least 3 points, got {n}"
        )));
    }
    let image = match ambient {
        Ambient::Abstract => DigitalImage::from_graph(&SimpleGraph::cycle(n))?,
        Ambient::Z2 => DigitalImage::new(2, rectangle_boundary(n)?, Adjacency::Cu(1))?,
    };
    let level = if n == 3 { NpLevel::Np2 } else { NpLevel::Np1 };
    Dtg::verified(image, cyclic_group(n)?, level)
}

fn check_generators(group: &FiniteGroup, gens: &[usize]) -> Result<BTreeSet<usize>> {
    if !subgroup_ops(group, gens)?.is_symmetric_genset {
        if gens.contains(&group.identity()) {
            return Err(Error::IdentityInGenerators);
        }
        let missing = gens.iter().copied().find(|&g| !gens.contains(&group.inv(g)));
        return Err(Error::NotSymmetrized(missing.unwrap_or_default()));
    }
    Ok(gens.iter().copied().collect())
}

/// The graph with edges `{x, gx}` for `g` in `gens`, without verification.
pub fn cayley_image(group: &FiniteGroup, gens: &[usize]) -> Result<DigitalImage> {
    let gens = check_generators(group, gens)?;
    let edges = (0..group.order())
        .flat_map(|x| gens.iter().map(move |&g| (x, g)))
        .map(|(x, g)| (x, group.mul(g, x)));
    DigitalImage::from_graph(&SimpleGraph::from_edges(group.order(), edges)?)
}

/// Whether `g S g^{-1} = S` for every `g`.
pub fn is_conjugation_closed(group: &FiniteGroup, gens: &[usize]) -> bool {
    let set: BTreeSet<usize> = gens.iter().copied().collect();
    (0..group.order()).all(|g| {
        set.iter()
            .all(|&s| set.contains(&group.mul(group.mul(g, s), group.inv(g))))
    })
}

/// Cayley graph of `(group, gens)`, returned only once verified `NP_1`.
/// Left translations preserve the edges `{x, gx}` only when `gens` is closed
/// under conjugation; otherwise verification fails and the witness is
/// reported as [`Error::TheoremFalsified`].
pub fn cayley_graph(group: &FiniteGroup, gens: &[usize]) -> Result<Dtg> {
    let image = cayley_image(group, gens)?;
    if let Some(w) = verify_dtg(&image, group, NpLevel::Np1)?.witness {
        return Err(Error::TheoremFalsified {
            statement: "a Cayley graph is an NP1 digital topological group".into(),
            detail: format!("generators {gens:?}: {w}"),
        });
    }
    Dtg::new(image, group.clone())
}

/// Some `x` in `gens` with `x^2` neither in `gens` nor the identity.
pub fn cayley_np2_obstruction(group: &FiniteGroup, gens: &[usize]) -> Option<usize> {
    let set: BTreeSet<usize> = gens.iter().copied().collect();
    set.iter().copied().find(|&x| {
        let sq = group.mul(x, x);
        sq != group.identity() && !set.contains(&sq)
    })
}

/// `k` disjoint copies of `K_n` carrying `Z_n × Z_k`; vertex `i * k + j` is
/// element `(i, j)` and lies in copy `j`.
pub fn cluster_np2_group(n: usize, k: usize) -> Result<Dtg> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("cluster sizes must be positive".into()));
    }
    let group = direct_product(&cyclic_group(n)?, &cyclic_group(k)?);
    let order = n * k;
    let edges = (0..order)
        .flat_map(|a| (a + 1..order).map(move |b| (a, b)))
        .filter(|&(a, b)| a % k == b % k);
    let graph = SimpleGraph::from_edges(order, edges)?;
    Dtg::verified(DigitalImage::from_graph(&graph)?, group, NpLevel::Np2)
}

/// An abstract graph realized in `[-1, 1]^m` with `c_m` adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeEmbedding {
    pub image: DigitalImage,
    /// Vertex `v` of the graph is point `vertex_to_point[v]`.
    pub vertex_to_point: Vec<usize>,
}

/// Coordinate `i` of vertex `j` is 1 when `j = i`, 0 when `j ~ i`, -1
/// otherwise, for `i < |V| - 1`.
pub fn embed_in_hypercube(g: &SimpleGraph) -> Result<HypercubeEmbedding> {
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "embedding needs at least 2 vertices, got {n}"
        )));
    }
    let m = n - 1;
    let points = (0..n)
        .map(|j| {
            let coords: Vec<i64> = (0..m)
                .map(|i| {
                    if i == j {
                        1
                    } else if g.adjacent(i, j) {
                        0
                    } else {
                        -1
                    }
                })
                .collect();
            Point::from(coords)
        })
        .collect();
    let image = DigitalImage::new(m, points, Adjacency::Cu(m))?;
    let vertex_to_point: Vec<usize> = (0..n).collect();
    if !is_isomorphism(g, image.graph(), &vertex_to_point) {
        return Err(Error::TheoremFalsified {
            statement: "the hypercube embedding is a graph isomorphism".into(),
            detail: format!("graph with edges {:?}", g.edges().collect::<Vec<_>>()),
        });
    }
    Ok(HypercubeEmbedding {
        image,
        vertex_to_point,
    })
}

/// Stable names of the gallery entries.
pub const FIXTURE_NAMES: [&str; 6] = [
    "d8-cube",
    "d8-split",
    "scc16-mod4",
    "cross4-c1",
    "cross4-c2",
    "unit-square-c2",
];

/// A named example: a group on an image, element names, and a distinguished
/// subgroup when the example has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub dtg: Dtg,
    pub names: Option<Vec<String>>,
    pub subgroup: Option<Subgroup>,
}

fn points(coords: &[&[i64]]) -> Vec<Point> {
    coords.iter().map(|c| Point::from(c.to_vec())).collect()
}

fn d8_on(coords: &[&[i64]]) -> Result<Dtg> {
    let dimension = coords[0].len();
    let image = DigitalImage::new(dimension, points(coords), Adjacency::Cu(1))?;
    Dtg::new(image, dihedral_8())
}

const CROSS: [&[i64]; 4] = [&[1, 0], &[0, 1], &[-1, 0], &[0, -1]];

/// Builds the fixture called `name`. The resulting [`Dtg`] records whatever
/// level actually verifies, which may be none.
pub fn fixture(name: &str) -> Result<Fixture> {
    let mut names = None;
    let mut subgroup = None;
    let (name, dtg) = match name {
        "d8-cube" => {
            names = Some(dihedral_8_names());
            let cube: [&[i64]; 8] = [
                &[0, 0, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 1, 1],
                &[1, 1, 1],
                &[1, 1, 0],
            ];
            ("d8-cube", d8_on(&cube)?)
        }
        "d8-split" => {
            names = Some(dihedral_8_names());
            let split: [&[i64]; 8] = [
                &[0, 0],
                &[1, 0],
                &[1, 1],
                &[0, 1],
                &[3, 0],
                &[4, 0],
                &[4, 1],
                &[3, 1],
            ];
            ("d8-split", d8_on(&split)?)
        }
        "scc16-mod4" => {
            let dtg = scc_group(16, Ambient::Z2)?;
            subgroup = Some(closure(dtg.group(), &[4])?);
            ("scc16-mod4", dtg)
        }
        "cross4-c1" | "cross4-c2" => {
            let u = if name == "cross4-c1" { 1 } else { 2 };
            let image = DigitalImage::new(2, points(&CROSS), Adjacency::Cu(u))?;
            let label = if u == 1 { "cross4-c1" } else { "cross4-c2" };
            (label, Dtg::new(image, cyclic_group(4)?)?)
        }
        "unit-square-c2" => {
            let square: [&[i64]; 4] = [&[0, 0], &[1, 0], &[1, 1], &[0, 1]];
            let image = DigitalImage::new(2, points(&square), Adjacency::Cu(2))?;
            ("unit-square-c2", Dtg::new(image, cyclic_group(4)?)?)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown fixture {other:?}; expected one of {}",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    Ok(Fixture {
        name,
        dtg,
        names,
        subgroup,
    })
}

pub fn fixtures() -> Result<Vec<Fixture>> {
    FIXTURE_NAMES.iter().map(|n| fixture(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtg::{verify_dtg, Violation};
    use crate::graph::{
        components, degree_profile, find_isomorphism, is_simple_closed_curve, SearchLimits,
    };
    use crate::groups::{is_isomorphic, small_groups};

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn closed_curves() {
        for n in 3..=12 {
            let d = scc_group(n, Ambient::Abstract).unwrap();
            assert!(is_simple_closed_curve(d.graph()));
            assert_eq!(d.level() == Some(NpLevel::Np2), n == 3);
        }
        assert!(scc_group(2, Ambient::Abstract).is_err());
    }

    #[test]
    fn rectangle_curves() {
        let d = scc_group(16, Ambient::Z2).unwrap();
        let pts = d.image().points();
        assert_eq!(pts[0], Point::from(vec![2, 0]));
        assert_eq!(pts[1], Point::from(vec![2, 1]));
        assert_eq!(pts[2], Point::from(vec![2, 2]));
        assert_eq!(pts[3], Point::from(vec![1, 2]));
        assert!(pts.iter().all(|p| p.coords().iter().any(|c| c.abs() == 2)));
        for n in [4, 8, 10, 12, 14, 20] {
            let d = scc_group(n, Ambient::Z2).unwrap();
            assert!(is_simple_closed_curve(d.graph()), "n = {n}");
            assert!(d.graph().adjacent(0, n - 1));
        }
        for n in [5, 6, 7, 9] {
            assert!(scc_group(n, Ambient::Z2).is_err());
        }
    }

    #[test]
    fn cayley_examples() {
        let z6 = cyclic_group(6).unwrap();
        let c = cayley_graph(&z6, &[1, 5]).unwrap();
        assert!(is_simple_closed_curve(c.graph()));
        assert_eq!(cayley_np2_obstruction(&z6, &[1, 5]), Some(1));

        let z2 = cyclic_group(2).unwrap();
        let k2 = cayley_graph(&z2, &[1]).unwrap();
        assert!(degree_profile(k2.graph()).is_complete);
        assert_eq!(cayley_np2_obstruction(&z2, &[1]), None);

        let z4 = cyclic_group(4).unwrap();
        assert_eq!(cayley_np2_obstruction(&z4, &[1, 2, 3]), None);

        assert_eq!(cayley_graph(&z6, &[1]).unwrap_err(), Error::NotSymmetrized(1));
        assert_eq!(
            cayley_graph(&z6, &[0, 1, 5]).unwrap_err(),
            Error::IdentityInGenerators
        );
    }

    #[test]
    fn cayley_d8_needs_conjugation_closure() {
        let d8 = dihedral_8();
        // r, r^3, s
        let gens = [1, 3, 4];
        let image = cayley_image(&d8, &gens).unwrap();
        let profile = degree_profile(image.graph());
        assert!(profile.is_regular);
        assert_eq!(profile.degrees[0], 3);
        assert!(!is_conjugation_closed(&d8, &gens));
        assert!(matches!(
            cayley_graph(&d8, &gens),
            Err(Error::TheoremFalsified { .. })
        ));
        // r, r^3, s, r^2 s are closed under conjugation
        let closed = [1, 3, 4, 6];
        assert!(is_conjugation_closed(&d8, &closed));
        assert!(cayley_graph(&d8, &closed).is_ok());
    }

    /// Every Cayley graph of a symmetric set closed under conjugation
    /// verifies, for all groups of order at most 8.
    #[test]
    fn conjugation_closed_cayley_graphs_verify() {
        for order in 1..=8 {
            for g in small_groups(order).unwrap() {
                for mask in 0u32..(1 << order) {
                    let gens: Vec<usize> = (1..order).filter(|&x| mask >> x & 1 == 1).collect();
                    if mask & 1 == 1 || !gens.iter().all(|&x| gens.contains(&g.inv(x))) {
                        continue;
                    }
                    let closed = is_conjugation_closed(&g, &gens);
                    let verified = cayley_graph(&g, &gens).is_ok();
                    assert_eq!(closed, verified, "order {order}, gens {gens:?}");
                    if verified {
                        let d = degree_profile(cayley_image(&g, &gens).unwrap().graph());
                        assert!(d.degrees.iter().all(|&x| x == gens.len()));
                    }
                }
            }
        }
    }

    #[test]
    fn clusters() {
        let d = cluster_np2_group(4, 2).unwrap();
        assert_eq!(d.order(), 8);
        let comps = components(d.graph());
        assert_eq!(comps.count(), 2);
        assert!(comps.components.iter().all(|c| c.len() == 4));
        assert_eq!(d.level(), Some(NpLevel::Np2));
        assert_eq!(cluster_np2_group(1, 5).unwrap().graph().edge_count(), 0);
        assert!(degree_profile(cluster_np2_group(5, 1).unwrap().graph()).is_complete);
        assert!(cluster_np2_group(0, 1).is_err());
    }

    #[test]
    fn hypercube_examples() {
        let k2 = embed_in_hypercube(&SimpleGraph::complete(2)).unwrap();
        assert_eq!(k2.image.dimension(), 1);
        assert!(k2.image.graph().adjacent(0, 1));

        let p3 = embed_in_hypercube(&SimpleGraph::path(3)).unwrap();
        assert_eq!(p3.image.dimension(), 2);
        assert_eq!(p3.image.adjacency(), &Adjacency::Cu(2));
        assert_eq!(p3.image.graph().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let c5 = SimpleGraph::cycle(5);
        let e = embed_in_hypercube(&c5).unwrap();
        assert_eq!(e.image.dimension(), 4);
        assert!(e.image.points().iter().all(|p| p.coords().iter().all(|c| c.abs() <= 1)));
        assert!(find_isomorphism(e.image.graph(), &c5, &limits()).unwrap().is_some());

        assert!(embed_in_hypercube(&SimpleGraph::empty(1)).is_err());
    }

    #[test]
    fn cube_fixture() {
        let f = fixture("d8-cube").unwrap();
        let d8 = f.dtg.group();
        let names = f.names.as_ref().unwrap();
        let idx = |s: &str| names.iter().position(|n| n == s).unwrap();
        assert_eq!(d8.mul(idx("s"), idx("r")), idx("r3s"));
        assert_eq!(d8.mul(idx("r"), idx("s")), idx("rs"));
        assert_eq!(d8.inv(idx("r")), idx("r3"));
        // rs is its own inverse, written s r^3 in the inverse table
        assert_eq!(d8.inv(idx("rs")), idx("rs"));
        assert!(!verify_dtg(f.dtg.image(), d8, NpLevel::Np2).unwrap().ok());
        // e ~ r, but s e = s and s r = r^3 s sit at distance 2
        let report = verify_dtg(f.dtg.image(), d8, NpLevel::Np1).unwrap();
        assert!(matches!(report.witness, Some(Violation::Multiplication { .. })));
        assert_eq!(f.dtg.level(), None);
    }

    #[test]
    fn gallery_levels() {
        let level = |n: &str| fixture(n).unwrap().dtg.level();
        assert_eq!(level("d8-split"), Some(NpLevel::Np1));
        assert_eq!(level("scc16-mod4"), Some(NpLevel::Np1));
        // discrete under c_1, a 4-cycle under c_2
        assert_eq!(level("cross4-c1"), Some(NpLevel::Np2));
        assert_eq!(level("cross4-c2"), Some(NpLevel::Np1));
        assert_eq!(level("unit-square-c2"), Some(NpLevel::Np2));
        let scc = fixture("scc16-mod4").unwrap();
        assert_eq!(scc.subgroup.unwrap().members(), &[0, 4, 8, 12]);
        assert!(fixture("nope").is_err());
        assert_eq!(fixtures().unwrap().len(), 6);
    }

    #[test]
    fn square_is_not_a_cycle_cayley_graph() {
        let sq = fixture("unit-square-c2").unwrap();
        let z4 = cyclic_group(4).unwrap();
        let cyc = cayley_image(&z4, &[1, 3]).unwrap();
        assert!(find_isomorphism(sq.dtg.graph(), cyc.graph(), &limits())
            .unwrap()
            .is_none());
        assert!(is_isomorphic(sq.dtg.group(), &z4));
    }
}
