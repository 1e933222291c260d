//! Homomorphisms of digital topological groups, open maps and the first
//! isomorphism theorem.

use std::collections::{BTreeMap, VecDeque};

use crate::dtg::{check_continuous, dtg_quotient, Dtg, DtgQuotient};
use crate::error::{Error, Result};
use crate::graph::is_isomorphism;
use crate::groups::{closure, hom_check, subgroup_group, FiniteGroup, Subgroup};
use crate::lattice::NpLevel;

/// A map between two digital topological groups with its checked properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtgHom {
    pub source: Dtg,
    pub target: Dtg,
    pub map: Vec<usize>,
    pub is_hom: bool,
    pub is_continuous: bool,
    /// Source elements sent to the identity, sorted.
    pub kernel: Vec<usize>,
    /// Range of the map, sorted.
    pub image: Vec<usize>,
}

pub fn check_dtg_hom(source: &Dtg, target: &Dtg, map: &[usize]) -> Result<DtgHom> {
    let report = hom_check(source.group(), target.group(), map)?;
    let continuity = check_continuous(map, source.image(), target.image())?;
    Ok(DtgHom {
        source: source.clone(),
        target: target.clone(),
        map: map.to_vec(),
        is_hom: report.is_hom,
        is_continuous: continuity.ok(),
        kernel: report.kernel,
        image: report.image,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenReport {
    pub open: bool,
    /// Adjacent target elements whose preimages are nowhere adjacent or equal.
    pub witness: Option<(usize, usize)>,
}

/// Whether every adjacent pair `z ~ w` in the range has preimages `a`, `b`
/// with `a` adjacent or equal to `b`.
pub fn is_open_map(h: &DtgHom) -> Result<OpenReport> {
    if !h.is_continuous {
        return Err(Error::Precondition("the map is not continuous".into()));
    }
    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &y) in h.map.iter().enumerate() {
        fibers.entry(y).or_default().push(x);
    }
    let (sg, tg) = (h.source.graph(), h.target.graph());
    for (i, &z) in h.image.iter().enumerate() {
        for &w in &h.image[i + 1..] {
            if !tg.adjacent(z, w) {
                continue;
            }
            let joined = fibers[&z]
                .iter()
                .any(|&a| fibers[&w].iter().any(|&b| sg.adjacent_or_equal(a, b)));
            if !joined {
                return Ok(OpenReport {
                    open: false,
                    witness: Some((z, w)),
                });
            }
        }
    }
    Ok(OpenReport {
        open: true,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstIsomorphism {
    /// `G / ker h` with its projection.
    pub quotient: DtgQuotient,
    /// Target elements in the range; element `i` of `f.target` is `image_elements[i]`.
    pub image_elements: Vec<usize>,
    /// The induced map from the quotient onto the range, with the range
    /// carrying the restricted adjacency of the target.
    pub f: DtgHom,
    pub open: bool,
    pub is_dtg_isomorphism: bool,
}

/// Builds `F: G / ker h -> h(G)` with `F ∘ π = h`. `F` is forced pointwise,
/// which is its uniqueness. An open `h` must give a digital isomorphism.
pub fn first_isomorphism(h: &DtgHom) -> Result<FirstIsomorphism> {
    if !h.is_hom || !h.is_continuous {
        return Err(Error::Precondition(
            "first_isomorphism needs a continuous homomorphism".into(),
        ));
    }
    let source_group = h.source.group();
    let kernel = Subgroup::new(source_group, &h.kernel)?;
    let quotient = dtg_quotient(&h.source, &kernel)?;

    let image_sub = Subgroup::new(h.target.group(), &h.image)?;
    let image_group = subgroup_group(h.target.group(), &image_sub)?;
    let image = h.target.image().restrict(&h.image)?;
    let range = Dtg::new(image, image_group)?;

    let position = |y: usize| h.image.binary_search(&y).expect("image element");
    let f_map: Vec<usize> = quotient
        .representatives
        .iter()
        .map(|&r| position(h.map[r]))
        .collect();
    for (x, &coset) in quotient.projection.iter().enumerate() {
        if h.image[f_map[coset]] != h.map[x] {
            return Err(Error::TheoremFalsified {
                statement: "F ∘ π = h".into(),
                detail: format!("element {x}"),
            });
        }
    }
    let f = check_dtg_hom(&quotient.dtg, &range, &f_map)?;
    let bijective = f_map.len() == range.order();
    let is_dtg_isomorphism =
        bijective && f.is_hom && is_isomorphism(quotient.dtg.graph(), range.graph(), &f_map);
    let open = is_open_map(h)?.open;
    if open && !is_dtg_isomorphism {
        return Err(Error::TheoremFalsified {
            statement: "an open continuous homomorphism induces a digital isomorphism".into(),
            detail: format!("map {:?}", h.map),
        });
    }
    Ok(FirstIsomorphism {
        quotient,
        image_elements: h.image.clone(),
        f,
        open,
        is_dtg_isomorphism,
    })
}

/// Checks continuity only at pairs `x ~ e`. Whenever that local check holds,
/// global continuity must follow, and this is enforced.
pub fn continuity_from_identity(source: &Dtg, target: &Dtg, map: &[usize]) -> Result<bool> {
    source.require(NpLevel::Np1)?;
    target.require(NpLevel::Np1)?;
    if !hom_check(source.group(), target.group(), map)?.is_hom {
        return Err(Error::Precondition("the map is not a homomorphism".into()));
    }
    let e = source.group().identity();
    let local = source
        .graph()
        .neighbors(e)
        .iter()
        .all(|&x| target.graph().adjacent_or_equal(map[x], map[e]));
    if local {
        if let Some(w) = check_continuous(map, source.image(), target.image())?.witness {
            return Err(Error::TheoremFalsified {
                statement: "a homomorphism continuous at the identity is continuous".into(),
                detail: w.to_string(),
            });
        }
    }
    Ok(local)
}

/// `second ∘ first`. Composites of continuous homomorphisms must again be
/// continuous homomorphisms.
pub fn compose(first: &DtgHom, second: &DtgHom) -> Result<DtgHom> {
    if first.target != second.source {
        return Err(Error::InvalidArgument(
            "the first map's target is not the second map's source".into(),
        ));
    }
    let map: Vec<usize> = first.map.iter().map(|&y| second.map[y]).collect();
    let h = check_dtg_hom(&first.source, &second.target, &map)?;
    let expected_hom = first.is_hom && second.is_hom;
    let expected_cont = first.is_continuous && second.is_continuous;
    if (expected_hom && !h.is_hom) || (expected_cont && !h.is_continuous) {
        return Err(Error::TheoremFalsified {
            statement: "composites of continuous homomorphisms are continuous homomorphisms"
                .into(),
            detail: format!("composite map {map:?}"),
        });
    }
    Ok(h)
}

/// A generating set chosen greedily in index order.
fn greedy_generators(g: &FiniteGroup) -> Result<Vec<usize>> {
    let mut gens = Vec::new();
    let mut span = closure(g, &[])?;
    for x in 0..g.order() {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens)?;
        }
    }
    Ok(gens)
}

/// Every group homomorphism `g -> h`, in lexicographic order of generator images.
pub fn homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let gens = greedy_generators(g)?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend(g, h, &gens, &choice) {
            if hom_check(g, h, &map)?.is_hom {
                out.push(map);
            }
        }
        // odometer over h^|gens|
        let mut i = gens.len();
        loop {
            if i == 0 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < h.order() {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(s, x);
            let image = h.mul(t, map[x]);
            if map[y] == usize::MAX {
                map[y] = image;
                queue.push_back(y);
            } else if map[y] != image {
                return None;
            }
        }
    }
    Some(map)
}
