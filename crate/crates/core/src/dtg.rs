//! Digital topological groups: a digital image whose points are the elements
//! of a finite group, point `i` being element `i`.
//!
//! Multiplication must be continuous from the `NP_u` product adjacency and
//! inversion continuous on the image. Theorem-level statements (inverse
//! continuity, quotient re-verification, component structure) are checked
//! rather than assumed: a failure surfaces as [`Error::TheoremFalsified`].

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    components, degree_profile, find_isomorphism, is_isomorphism, is_simple_closed_curve,
    AsGraph, ComponentDecomposition, SearchLimits, SimpleGraph,
};
use crate::groups::{
    direct_product, hom_check, is_normal, quotient_group, validate_group, FiniteGroup, Subgroup,
};
use crate::lattice::{np_adjacent_pairs, np_product, Adjacency, DigitalImage, NpLevel};

/// A digital image paired with a group structure and its verified NP level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dtg {
    image: DigitalImage,
    group: FiniteGroup,
    level: Option<NpLevel>,
}

impl Dtg {
    /// Pairs an image with a group and records the highest verified level.
    pub fn new(image: DigitalImage, group: FiniteGroup) -> Result<Self> {
        let level = np_level(&image, &group)?;
        Ok(Dtg {
            image,
            group,
            level,
        })
    }

    /// Like [`Dtg::new`], but fails unless the pair verifies at `level`.
    pub fn verified(image: DigitalImage, group: FiniteGroup, level: NpLevel) -> Result<Self> {
        let dtg = Dtg::new(image, group)?;
        dtg.require(level)?;
        Ok(dtg)
    }

    pub fn image(&self) -> &DigitalImage {
        &self.image
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn level(&self) -> Option<NpLevel> {
        self.level
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.image.graph()
    }

    pub fn require(&self, level: NpLevel) -> Result<()> {
        match self.level {
            Some(l) if l >= level => Ok(()),
            _ => Err(Error::NotVerified { required: level }),
        }
    }

    pub fn into_parts(self) -> (DigitalImage, FiniteGroup) {
        (self.image, self.group)
    }
}

impl AsGraph for Dtg {
    fn as_graph(&self) -> &SimpleGraph {
        self.image.graph()
    }
}

/// An adjacent pair whose images are neither adjacent nor equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Violation {
    Map {
        source: (usize, usize),
        image: (usize, usize),
    },
    /// `first` and `second` are product-adjacent pairs `(x, y)`; `products`
    /// are `xy` for each.
    Multiplication {
        first: (usize, usize),
        second: (usize, usize),
        products: (usize, usize),
    },
    Inverse {
        source: (usize, usize),
        image: (usize, usize),
    },
}

impl Violation {
    /// Renders the violation with element labels in place of indices.
    pub fn describe(&self, labels: &[String]) -> String {
        let l = |i: usize| labels.get(i).cloned().unwrap_or_else(|| i.to_string());
        match *self {
            Violation::Map { source, image } => format!(
                "{} ~ {} maps to {} and {}, which are not adjacent",
                l(source.0),
                l(source.1),
                l(image.0),
                l(image.1)
            ),
            Violation::Multiplication {
                first,
                second,
                products,
            } => format!(
                "({},{}) ~ ({},{}) but products {} and {} are not adjacent",
                l(first.0),
                l(first.1),
                l(second.0),
                l(second.1),
                l(products.0),
                l(products.1)
            ),
            Violation::Inverse { source, image } => format!(
                "{} ~ {} but inverses {} and {} are not adjacent",
                l(source.0),
                l(source.1),
                l(image.0),
                l(image.1)
            ),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&[]))
    }
}

/// Continuity certificate: `ok` exactly when there is no witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContinuityReport {
    pub witness: Option<Violation>,
}

impl ContinuityReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    fn from(witness: Option<Violation>) -> Self {
        ContinuityReport { witness }
    }
}

fn check_size<C: AsGraph + ?Sized>(carrier: &C, group: &FiniteGroup) -> Result<()> {
    let points = carrier.as_graph().order();
    if points != group.order() {
        return Err(Error::SizeMismatch {
            points,
            order: group.order(),
        });
    }
    Ok(())
}

fn map_violation(f: &[usize], source: &SimpleGraph, target: &SimpleGraph) -> Option<Violation> {
    source.edges().find_map(|(a, b)| {
        (!target.adjacent_or_equal(f[a], f[b])).then_some(Violation::Map {
            source: (a, b),
            image: (f[a], f[b]),
        })
    })
}

fn multiplication_violation(
    g: &SimpleGraph,
    group: &FiniteGroup,
    level: NpLevel,
) -> Option<Violation> {
    let m = group.order();
    np_adjacent_pairs(g, g, level).find_map(|(p, q)| {
        let first = (p / m, p % m);
        let second = (q / m, q % m);
        let products = (group.mul(first.0, first.1), group.mul(second.0, second.1));
        (!g.adjacent_or_equal(products.0, products.1)).then_some(Violation::Multiplication {
            first,
            second,
            products,
        })
    })
}

fn inverse_violation(g: &SimpleGraph, group: &FiniteGroup) -> Option<Violation> {
    match map_violation(group.inverses(), g, g)? {
        Violation::Map { source, image } => Some(Violation::Inverse { source, image }),
        other => Some(other),
    }
}

/// `(κ, λ)`-continuity of an index map: adjacent points go to adjacent or
/// equal points. The witness is the first failing edge in index order.
pub fn check_continuous<X, Y>(f: &[usize], source: &X, target: &Y) -> Result<ContinuityReport>
where
    X: AsGraph + ?Sized,
    Y: AsGraph + ?Sized,
{
    let (sg, tg) = (source.as_graph(), target.as_graph());
    if f.len() != sg.order() {
        return Err(Error::SizeMismatch {
            points: sg.order(),
            order: f.len(),
        });
    }
    if let Some(&index) = f.iter().find(|&&y| y >= tg.order()) {
        return Err(Error::IndexOutOfRange {
            index,
            len: tg.order(),
        });
    }
    Ok(ContinuityReport::from(map_violation(f, sg, tg)))
}

/// Continuity of multiplication from `NP_level` and of inversion.
pub fn verify_dtg<C: AsGraph + ?Sized>(
    carrier: &C,
    group: &FiniteGroup,
    level: NpLevel,
) -> Result<ContinuityReport> {
    check_size(carrier, group)?;
    let g = carrier.as_graph();
    let witness = multiplication_violation(g, group, level).or_else(|| inverse_violation(g, group));
    Ok(ContinuityReport::from(witness))
}

/// Continuity of multiplication alone.
pub fn check_multiplication<C: AsGraph + ?Sized>(
    carrier: &C,
    group: &FiniteGroup,
    level: NpLevel,
) -> Result<ContinuityReport> {
    check_size(carrier, group)?;
    Ok(ContinuityReport::from(multiplication_violation(
        carrier.as_graph(),
        group,
        level,
    )))
}

/// Highest level at which the pair verifies.
pub fn np_level<C: AsGraph + ?Sized>(carrier: &C, group: &FiniteGroup) -> Result<Option<NpLevel>> {
    if !verify_dtg(carrier, group, NpLevel::Np1)?.ok() {
        return Ok(None);
    }
    if verify_dtg(carrier, group, NpLevel::Np2)?.ok() {
        Ok(Some(NpLevel::Np2))
    } else {
        Ok(Some(NpLevel::Np1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translations {
    /// `y -> xy`
    pub left: Vec<usize>,
    /// `y -> yx`
    pub right: Vec<usize>,
    pub both_isomorphisms: bool,
}

pub fn translations<C: AsGraph + ?Sized>(
    carrier: &C,
    group: &FiniteGroup,
    x: usize,
) -> Result<Translations> {
    check_size(carrier, group)?;
    if x >= group.order() {
        return Err(Error::IndexOutOfRange {
            index: x,
            len: group.order(),
        });
    }
    let g = carrier.as_graph();
    let left: Vec<usize> = (0..group.order()).map(|y| group.mul(x, y)).collect();
    let right: Vec<usize> = (0..group.order()).map(|y| group.mul(y, x)).collect();
    let both_isomorphisms = is_isomorphism(g, g, &left) && is_isomorphism(g, g, &right);
    Ok(Translations {
        left,
        right,
        both_isomorphisms,
    })
}

/// Certifies `NP_1` structure through continuity of every left and right
/// translation. Agrees with `verify_dtg(.., Np1)`.
pub fn dtg_from_translations<C: AsGraph + ?Sized>(
    carrier: &C,
    group: &FiniteGroup,
) -> Result<ContinuityReport> {
    check_size(carrier, group)?;
    let g = carrier.as_graph();
    for x in 0..group.order() {
        let t = translations(g, group, x)?;
        for map in [&t.left, &t.right] {
            if let Some(w) = map_violation(map, g, g) {
                return Ok(ContinuityReport::from(Some(w)));
            }
        }
    }
    Ok(ContinuityReport::from(None))
}

/// Given continuous multiplication at `level`, reports whether inversion is
/// continuous.
pub fn inverse_continuity_lemma_check<C: AsGraph + ?Sized>(
    carrier: &C,
    group: &FiniteGroup,
    level: NpLevel,
) -> Result<bool> {
    if let Some(w) = check_multiplication(carrier, group, level)?.witness {
        return Err(Error::Precondition(format!(
            "multiplication is not {level}-continuous: {w}"
        )));
    }
    Ok(inverse_violation(carrier.as_graph(), group).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTheory {
    /// Vertices of the component containing the identity.
    pub identity_component: Vec<usize>,
    pub decomposition: ComponentDecomposition,
    /// `x G_y = G_{xy}` for all `x`, `y`.
    pub translates_components: bool,
    pub components_pairwise_isomorphic: bool,
    pub identity_component_normal: bool,
    /// Group on component labels with `G_x G_y = G_{xy}`.
    pub component_group: FiniteGroup,
    /// `G / G_e -> C_G`, coset `xG_e` to the component of `x`, is a group isomorphism.
    pub quotient_iso_ok: bool,
}

pub fn component_theory(dtg: &Dtg, limits: &SearchLimits) -> Result<ComponentTheory> {
    dtg.require(NpLevel::Np1)?;
    let g = dtg.graph();
    let group = dtg.group();
    let decomposition = components(g);
    let label = &decomposition.component_id;
    let e = group.identity();
    let identity_component = decomposition.components[label[e]].clone();

    let translates_components = (0..group.order()).all(|x| {
        decomposition.components.iter().all(|comp| {
            let moved: BTreeSet<usize> = comp.iter().map(|&y| group.mul(x, y)).collect();
            let target = &decomposition.components[label[group.mul(x, comp[0])]];
            moved.iter().copied().eq(target.iter().copied())
        })
    });

    let base = g.induced(&identity_component);
    let mut components_pairwise_isomorphic = true;
    for comp in &decomposition.components {
        if find_isomorphism(&base, &g.induced(comp), limits)?.is_none() {
            components_pairwise_isomorphic = false;
            break;
        }
    }

    let ge = Subgroup::new(group, &identity_component).map_err(|_| Error::TheoremFalsified {
        statement: "the identity component is a subgroup".into(),
        detail: format!("{identity_component:?} is not closed"),
    })?;
    let identity_component_normal = is_normal(group, &ge);

    let k = decomposition.count();
    let mut rows = vec![vec![usize::MAX; k]; k];
    for x in 0..group.order() {
        for y in 0..group.order() {
            let (a, b, c) = (label[x], label[y], label[group.mul(x, y)]);
            if rows[a][b] == usize::MAX {
                rows[a][b] = c;
            } else if rows[a][b] != c {
                return Err(Error::TheoremFalsified {
                    statement: "G_x G_y = G_{xy}".into(),
                    detail: format!("components {a} and {b} multiply into several components"),
                });
            }
        }
    }
    let component_group = validate_group(&rows).map_err(|err| Error::TheoremFalsified {
        statement: "components form a group".into(),
        detail: err.to_string(),
    })?;

    let quotient_iso_ok = if identity_component_normal {
        let q = quotient_group(group, &ge)?;
        let map: Vec<usize> = q.representatives.iter().map(|&r| label[r]).collect();
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        distinct.len() == k
            && q.group.order() == k
            && hom_check(&q.group, &component_group, &map)?.is_hom
    } else {
        false
    };

    Ok(ComponentTheory {
        identity_component,
        decomposition,
        translates_components,
        components_pairwise_isomorphic,
        identity_component_normal,
        component_group,
        quotient_iso_ok,
    })
}

/// Direct product at `level`; element `(g, h)` has index `g * |H| + h`.
pub fn dtg_product(first: &Dtg, second: &Dtg, level: NpLevel) -> Result<Dtg> {
    first.require(level)?;
    second.require(level)?;
    let image = np_product(first.image(), second.image(), level)?;
    let group = direct_product(first.group(), second.group());
    let dtg = Dtg::new(image, group)?;
    if dtg.require(level).is_err() {
        let witness = verify_dtg(dtg.image(), dtg.group(), level)?.witness;
        return Err(Error::TheoremFalsified {
            statement: format!("a product of {level} groups is an {level} group"),
            detail: format!("{witness:?}"),
        });
    }
    Ok(dtg)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtgQuotient {
    pub dtg: Dtg,
    /// Coset index of each element: the projection `G -> G/N`.
    pub projection: Vec<usize>,
    /// Minimal element of each coset.
    pub representatives: Vec<usize>,
}

/// Quotient by a normal subgroup. Cosets are adjacent when some members are;
/// a coset is never adjacent to itself. Points are the representatives' points.
pub fn dtg_quotient(dtg: &Dtg, n: &Subgroup) -> Result<DtgQuotient> {
    let level = dtg.level().ok_or(Error::NotVerified {
        required: NpLevel::Np1,
    })?;
    let q = quotient_group(dtg.group(), n)?;
    let points = q
        .representatives
        .iter()
        .map(|&r| dtg.image().point(r).clone())
        .collect();
    let edges: BTreeSet<(usize, usize)> = dtg
        .graph()
        .edges()
        .map(|(x, y)| (q.coset_of[x], q.coset_of[y]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    let image = DigitalImage::new(
        dtg.image().dimension(),
        points,
        Adjacency::explicit(edges)?,
    )?;
    let report = verify_dtg(&image, &q.group, level)?;
    if let Some(w) = report.witness {
        return Err(Error::TheoremFalsified {
            statement: format!("a quotient of an {level} group is an {level} group"),
            detail: w.to_string(),
        });
    }
    Ok(DtgQuotient {
        dtg: Dtg::new(image, q.group)?,
        projection: q.coset_of,
        representatives: q.representatives,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Np2Classification {
    pub admits_np2: bool,
    /// Size of each clique when the graph is a regular cluster graph.
    pub clique_size: Option<usize>,
    pub clique_count: Option<usize>,
    /// `Z_n × Z_k` on the vertices, verified at `NP_2`.
    pub witness_group: Option<FiniteGroup>,
}

/// `NP_2` structures exist exactly on regular cluster graphs; when they do,
/// builds `Z_n × Z_k` with vertex `(i, j)` the `i`-th smallest vertex of the
/// `j`-th component.
pub fn classify_np2<C: AsGraph + ?Sized>(carrier: &C) -> Result<Np2Classification> {
    let g = carrier.as_graph();
    let decomposition = components(g);
    let n = decomposition.components[0].len();
    let regular_cluster = decomposition
        .components
        .iter()
        .all(|c| c.len() == n && c.iter().all(|&v| g.degree(v) + 1 == n));
    if !regular_cluster {
        return Ok(Np2Classification {
            admits_np2: false,
            clique_size: None,
            clique_count: None,
            witness_group: None,
        });
    }
    let k = decomposition.count();
    // coordinates (i, j) of each vertex
    let mut coords = vec![(0, 0); g.order()];
    let mut vertex_at = vec![vec![0; n]; k];
    for (j, comp) in decomposition.components.iter().enumerate() {
        for (i, &v) in comp.iter().enumerate() {
            coords[v] = (i, j);
            vertex_at[j][i] = v;
        }
    }
    let rows: Vec<Vec<usize>> = (0..g.order())
        .map(|v| {
            (0..g.order())
                .map(|w| {
                    let (i, j) = coords[v];
                    let (a, b) = coords[w];
                    vertex_at[(j + b) % k][(i + a) % n]
                })
                .collect()
        })
        .collect();
    let group = validate_group(&rows)?;
    if let Some(w) = verify_dtg(g, &group, NpLevel::Np2)?.witness {
        return Err(Error::TheoremFalsified {
            statement: "Z_n x Z_k makes a regular cluster graph an NP2 group".into(),
            detail: w.to_string(),
        });
    }
    Ok(Np2Classification {
        admits_np2: true,
        clique_size: Some(n),
        clique_count: Some(k),
        witness_group: Some(group),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Z2Verdict {
    Scc,
    AtMost2Points,
    NotADtg,
}

/// Connected images in `(Z^2, c_1)` carry a group structure only when they
/// are simple closed curves or have at most two points.
pub fn z2_c1_classification(image: &DigitalImage) -> Result<Z2Verdict> {
    if image.dimension() != 2 || image.adjacency() != &Adjacency::Cu(1) {
        return Err(Error::Precondition(
            "expected an image in Z^2 with c_1 adjacency".into(),
        ));
    }
    if !components(image.graph()).is_connected() {
        return Err(Error::Precondition("image is not connected".into()));
    }
    Ok(if image.len() <= 2 {
        Z2Verdict::AtMost2Points
    } else if is_simple_closed_curve(image.graph()) {
        Z2Verdict::Scc
    } else {
        Z2Verdict::NotADtg
    })
}

/// Whether every verified `NP_2` image is a regular cluster graph, complete
/// when connected. Used by property checks.
pub fn np2_shape_holds<C: AsGraph + ?Sized>(carrier: &C) -> bool {
    let g = carrier.as_graph();
    let profile = degree_profile(g);
    let decomposition = components(g);
    let cluster = decomposition
        .components
        .iter()
        .all(|c| c.iter().all(|&v| g.degree(v) + 1 == c.len()));
    cluster && profile.is_regular && (!decomposition.is_connected() || profile.is_complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{closure, cyclic_group, dihedral_8, is_isomorphic, small_groups};
    use crate::lattice::Point;
    use crate::testutil::permutations;

    fn cycle(n: usize) -> DigitalImage {
        DigitalImage::from_graph(&SimpleGraph::cycle(n)).unwrap()
    }

    fn z(n: usize) -> FiniteGroup {
        cyclic_group(n).unwrap()
    }

    fn cross(u: usize) -> DigitalImage {
        let pts = [[1, 0], [0, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|c| Point::from(c.to_vec()))
            .collect();
        DigitalImage::new(2, pts, Adjacency::Cu(u)).unwrap()
    }

    fn split_d8() -> Dtg {
        let coords = [[0, 0], [1, 0], [1, 1], [0, 1], [3, 0], [4, 0], [4, 1], [3, 1]];
        let pts = coords.iter().map(|c| Point::from(c.to_vec())).collect();
        let image = DigitalImage::new(2, pts, Adjacency::Cu(1)).unwrap();
        Dtg::verified(image, dihedral_8(), NpLevel::Np1).unwrap()
    }

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn continuity_examples() {
        let id = [0, 1, 2, 3];
        assert!(check_continuous(&id, &cross(1), &cross(2)).unwrap().ok());
        assert!(check_continuous(&[2, 2, 2, 2], &cross(2), &cross(1)).unwrap().ok());
        let back = check_continuous(&id, &cross(2), &cross(1)).unwrap();
        assert_eq!(
            back.witness,
            Some(Violation::Map {
                source: (0, 1),
                image: (0, 1)
            })
        );
        assert_eq!(cross(2).point(0), &Point::from(vec![1, 0]));
        assert_eq!(cross(2).point(1), &Point::from(vec![0, 1]));
        assert!(check_continuous(&[0, 1], &cross(1), &cross(1)).is_err());
        assert!(check_continuous(&[0, 1, 2, 9], &cross(1), &cross(1)).is_err());
    }

    #[test]
    fn closed_curve_group() {
        let c5 = cycle(5);
        assert!(verify_dtg(&c5, &z(5), NpLevel::Np1).unwrap().ok());
        let np2 = verify_dtg(&c5, &z(5), NpLevel::Np2).unwrap();
        assert_eq!(
            np2.witness,
            Some(Violation::Multiplication {
                first: (0, 0),
                second: (1, 1),
                products: (0, 2)
            })
        );
        assert!(matches!(
            verify_dtg(&c5, &z(4), NpLevel::Np1),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn complete_graphs_are_np2_for_every_group() {
        for order in [4, 6, 8] {
            for g in small_groups(order).unwrap() {
                let k = SimpleGraph::complete(order);
                assert!(verify_dtg(&k, &g, NpLevel::Np2).unwrap().ok());
            }
        }
    }

    #[test]
    fn levels() {
        let discrete = SimpleGraph::empty(6);
        for g in small_groups(6).unwrap() {
            assert_eq!(np_level(&discrete, &g).unwrap(), Some(NpLevel::Np2));
        }
        assert_eq!(np_level(&SimpleGraph::path(3), &z(3)).unwrap(), None);
        assert_eq!(np_level(&cycle(6), &z(6)).unwrap(), Some(NpLevel::Np1));
        assert_eq!(np_level(&cycle(3), &z(3)).unwrap(), Some(NpLevel::Np2));
        assert_eq!(split_d8().level(), Some(NpLevel::Np1));
    }

    #[test]
    fn translation_maps() {
        let c6 = cycle(6);
        let t = translations(&c6, &z(6), 2).unwrap();
        assert_eq!(t.left, vec![2, 3, 4, 5, 0, 1]);
        assert!(t.both_isomorphisms);
        let t = translations(&c6, &z(6), 0).unwrap();
        assert_eq!(t.left, (0..6).collect::<Vec<_>>());
        assert_eq!(t.right, (0..6).collect::<Vec<_>>());
        let t = translations(&SimpleGraph::path(3), &z(3), 1).unwrap();
        assert!(!t.both_isomorphisms);
    }

    #[test]
    fn translation_certificates() {
        assert!(dtg_from_translations(&cycle(6), &z(6)).unwrap().ok());
        let split = split_d8();
        assert!(dtg_from_translations(split.image(), split.group()).unwrap().ok());
        assert!(!dtg_from_translations(&SimpleGraph::path(3), &z(3)).unwrap().ok());
    }

    #[test]
    fn inverse_lemma() {
        assert!(inverse_continuity_lemma_check(&cycle(8), &z(8), NpLevel::Np1).unwrap());
        assert!(matches!(
            inverse_continuity_lemma_check(&SimpleGraph::path(3), &z(3), NpLevel::Np1),
            Err(Error::Precondition(_))
        ));
    }

    /// Brute force over every labeling of every graph on up to 5 vertices by
    /// every group of that order: NP1-continuous multiplication forces
    /// continuous inversion, translations agree with the definition, and NP2
    /// implies NP1.
    #[test]
    fn theorem_checks_on_all_small_labelings() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p);
                let g = SimpleGraph::from_edges(n, edges).unwrap();
                for group in small_groups(n).unwrap() {
                    for perm in permutations(n) {
                        let relabeled =
                            g.relabel(&crate::graph::Permutation::from_vec(perm).unwrap());
                        let mu1 = check_multiplication(&relabeled, &group, NpLevel::Np1)
                            .unwrap()
                            .ok();
                        let np1 = verify_dtg(&relabeled, &group, NpLevel::Np1).unwrap().ok();
                        let np2 = verify_dtg(&relabeled, &group, NpLevel::Np2).unwrap().ok();
                        let tr = dtg_from_translations(&relabeled, &group).unwrap().ok();
                        if mu1 {
                            assert!(inverse_continuity_lemma_check(&relabeled, &group, NpLevel::Np1)
                                .unwrap());
                        }
                        assert_eq!(np1, tr);
                        assert!(!np2 || np1);
                        if np2 {
                            assert!(np2_shape_holds(&relabeled));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_d8_component_theory() {
        let theory = component_theory(&split_d8(), &limits()).unwrap();
        assert_eq!(theory.identity_component, vec![0, 1, 2, 3]);
        assert!(theory.translates_components);
        assert!(theory.components_pairwise_isomorphic);
        assert!(theory.identity_component_normal);
        assert!(theory.quotient_iso_ok);
        assert!(is_isomorphic(&theory.component_group, &z(2)));
        let ge = crate::groups::Subgroup::new(&dihedral_8(), &theory.identity_component).unwrap();
        let q = quotient_group(&dihedral_8(), &ge).unwrap();
        assert!(is_isomorphic(&q.group, &z(2)));
        let sub = DigitalImage::from_graph(&split_d8().graph().induced(&theory.identity_component))
            .unwrap();
        assert!(is_simple_closed_curve(sub.graph()));
        // not a direct product: Z4 x Z2 is abelian, D8 is not
        assert!(!is_isomorphic(&direct_product(&z(4), &z(2)), &dihedral_8()));
    }

    #[test]
    fn connected_and_discrete_component_theory() {
        let c7 = Dtg::verified(cycle(7), z(7), NpLevel::Np1).unwrap();
        let theory = component_theory(&c7, &limits()).unwrap();
        assert_eq!(theory.identity_component.len(), 7);
        assert_eq!(theory.component_group.order(), 1);

        let discrete = DigitalImage::from_graph(&SimpleGraph::empty(3)).unwrap();
        let d = Dtg::verified(discrete, z(3), NpLevel::Np1).unwrap();
        let theory = component_theory(&d, &limits()).unwrap();
        assert_eq!(theory.identity_component, vec![0]);
        assert!(is_isomorphic(&theory.component_group, &z(3)));
        assert!(theory.quotient_iso_ok);

        let raw = Dtg::new(DigitalImage::from_graph(&SimpleGraph::path(3)).unwrap(), z(3)).unwrap();
        assert!(matches!(component_theory(&raw, &limits()), Err(Error::NotVerified { .. })));
    }

    #[test]
    fn products() {
        let c4 = Dtg::verified(cycle(4), z(4), NpLevel::Np1).unwrap();
        let c8 = Dtg::verified(cycle(8), z(8), NpLevel::Np1).unwrap();
        let torus = dtg_product(&c4, &c8, NpLevel::Np1).unwrap();
        assert_eq!(torus.order(), 32);
        assert!(is_isomorphic(torus.group(), &direct_product(&z(4), &z(8))));

        let point = Dtg::verified(
            DigitalImage::from_graph(&SimpleGraph::empty(1)).unwrap(),
            z(1),
            NpLevel::Np2,
        )
        .unwrap();
        let same = dtg_product(&c4, &point, NpLevel::Np1).unwrap();
        assert!(find_isomorphism(same.graph(), c4.graph(), &limits()).unwrap().is_some());

        let k2 = Dtg::verified(
            DigitalImage::from_graph(&SimpleGraph::complete(2)).unwrap(),
            z(2),
            NpLevel::Np2,
        )
        .unwrap();
        let k4 = dtg_product(&k2, &k2, NpLevel::Np2).unwrap();
        assert!(degree_profile(k4.graph()).is_complete);
        assert_eq!(k4.level(), Some(NpLevel::Np2));

        assert!(matches!(
            dtg_product(&c4, &c8, NpLevel::Np2),
            Err(Error::NotVerified { .. })
        ));
    }

    #[test]
    fn quotients() {
        let c16 = Dtg::verified(cycle(16), z(16), NpLevel::Np1).unwrap();
        let n = closure(c16.group(), &[4]).unwrap();
        let q = dtg_quotient(&c16, &n).unwrap();
        assert_eq!(q.dtg.order(), 4);
        assert!(is_simple_closed_curve(q.dtg.graph()));
        assert_eq!(q.representatives, vec![0, 1, 2, 3]);

        let same = dtg_quotient(&c16, &Subgroup::trivial(c16.group())).unwrap();
        assert!(is_isomorphism(same.dtg.graph(), c16.graph(), &(0..16).collect::<Vec<_>>()));

        let point = dtg_quotient(&c16, &Subgroup::whole(c16.group())).unwrap();
        assert_eq!(point.dtg.order(), 1);

        let split = split_d8();
        let s = closure(split.group(), &[4]).unwrap();
        assert_eq!(dtg_quotient(&split, &s).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn quotients_reverify_for_every_normal_subgroup() {
        let mut fixtures = vec![split_d8()];
        for n in [4, 6, 8, 12] {
            fixtures.push(Dtg::verified(cycle(n), z(n), NpLevel::Np1).unwrap());
        }
        for d in &fixtures {
            for n in crate::groups::all_subgroups(d.group()) {
                if is_normal(d.group(), &n) {
                    let q = dtg_quotient(d, &n).unwrap();
                    assert!(q.dtg.level() >= d.level());
                }
            }
        }
    }

    #[test]
    fn np2_classification() {
        let three_k2 =
            SimpleGraph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let c = classify_np2(&three_k2).unwrap();
        assert!(c.admits_np2);
        assert_eq!((c.clique_size, c.clique_count), (Some(2), Some(3)));
        let g = c.witness_group.unwrap();
        assert!(is_isomorphic(&g, &direct_product(&z(2), &z(3))));

        assert!(!classify_np2(&cycle(5)).unwrap().admits_np2);
        assert!(classify_np2(&SimpleGraph::complete(3)).unwrap().admits_np2);
        let uneven = SimpleGraph::from_edges(3, [(0, 1)]).unwrap();
        assert!(!classify_np2(&uneven).unwrap().admits_np2);
    }

    #[test]
    fn z2_verdicts() {
        let ring: Vec<Point> = (-1..=1)
            .flat_map(|x| (-1..=1).map(move |y| (x, y)))
            .filter(|&(x, y)| (x, y) != (0, 0))
            .map(|(x, y)| Point::from(vec![x, y]))
            .collect();
        let ring = DigitalImage::new(2, ring, Adjacency::Cu(1)).unwrap();
        assert_eq!(z2_c1_classification(&ring).unwrap(), Z2Verdict::Scc);

        let pair = vec![Point::from(vec![0, 0]), Point::from(vec![1, 0])];
        let pair = DigitalImage::new(2, pair, Adjacency::Cu(1)).unwrap();
        assert_eq!(z2_c1_classification(&pair).unwrap(), Z2Verdict::AtMost2Points);

        let tromino = [[0, 0], [1, 0], [0, 1]]
            .iter()
            .map(|c| Point::from(c.to_vec()))
            .collect();
        let tromino = DigitalImage::new(2, tromino, Adjacency::Cu(1)).unwrap();
        assert_eq!(z2_c1_classification(&tromino).unwrap(), Z2Verdict::NotADtg);

        assert!(z2_c1_classification(&cross(2)).is_err());
        assert!(z2_c1_classification(&cross(1)).is_err());
    }
}
