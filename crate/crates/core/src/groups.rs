//! Finite groups given by multiplication tables over element indices.
//!
//! Elements are `0..order`. Named elements such as `e, r, s` only appear in
//! fixture metadata; everything here is index arithmetic.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a >= self.order {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: self.order,
            });
        }
        Ok(())
    }
}

/// Validates a multiplication table and derives identity and inverses.
/// `rows[i][j]` is the index of the product `i * j`.
pub fn validate_group(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
    let m = rows.len();
    if m == 0 {
        return Err(Error::InvalidTable("empty table".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::InvalidTable(format!(
                "row {i} has {} entries, expected {m}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= m) {
            return Err(Error::InvalidTable(format!("entry {bad} in row {i} out of range")));
        }
    }
    let table: Vec<usize> = rows.iter().flatten().copied().collect();
    let at = |i: usize, j: usize| table[i * m + j];

    let identity = (0..m)
        .find(|&e| (0..m).all(|i| at(e, i) == i && at(i, e) == i))
        .ok_or(Error::NoIdentity)?;

    let mut inverse = Vec::with_capacity(m);
    for i in 0..m {
        let inv = (0..m)
            .find(|&j| at(i, j) == identity && at(j, i) == identity)
            .ok_or(Error::NoInverse(i))?;
        inverse.push(inv);
    }

    for i in 0..m {
        for j in 0..m {
            let ij = at(i, j);
            for k in 0..m {
                if at(ij, k) != at(i, at(j, k)) {
                    return Err(Error::NotAssociative { i, j, k });
                }
            }
        }
    }

    Ok(FiniteGroup {
        order: m,
        table,
        identity,
        inverse,
    })
}

fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|i| (0..order).map(|j| mul(i, j)).collect())
        .collect();
    validate_group(&rows).expect("constructed table is a group")
}

/// `Z_n` with element `i` the residue `i`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::InvalidArgument("cyclic group order must be at least 1".into()));
    }
    Ok(from_fn(n, |a, b| (a + b) % n))
}

/// Dihedral group of order `2m`: element `k + eps*m` is `r^k s^eps`, with
/// `s r^k = r^{-k} s`.
pub fn dihedral(m: usize) -> Result<FiniteGroup> {
    if m < 1 {
        return Err(Error::InvalidArgument("dihedral group needs m >= 1".into()));
    }
    Ok(from_fn(2 * m, |a, b| {
        let (k, e) = (a % m, a / m);
        let (l, d) = (b % m, b / m);
        if e == 0 {
            (k + l) % m + d * m
        } else {
            (k + m - l) % m + ((1 + d) % 2) * m
        }
    }))
}

/// `D_8` ordered `e, r, r², r³, s, rs, r²s, r³s`.
pub fn dihedral_8() -> FiniteGroup {
    dihedral(4).expect("m = 4")
}

/// Element names of [`dihedral_8`].
pub fn dihedral_8_names() -> Vec<String> {
    ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Quaternion group `Q_8`: `0..4` are `1, i, -1, -i`, and `4..8` are
/// `j, k, -j, -k` (i.e. `i^a j`).
pub fn quaternion_8() -> FiniteGroup {
    // i^a j^b with j^2 = i^2, j i = i^{-1} j
    from_fn(8, |x, y| {
        let (a, b) = (x % 4, x / 4);
        let (c, d) = (y % 4, y / 4);
        let c = if b == 1 { (4 - c) % 4 } else { c };
        let mut power = (a + c) % 4;
        if b + d == 2 {
            power = (power + 2) % 4;
        }
        power + ((b + d) % 2) * 4
    })
}

/// Direct product; element `(g, h)` has index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let w = h.order();
    let order = g.order() * w;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            table.push(g.mul(a / w, b / w) * w + h.mul(a % w, b % w));
        }
    }
    let inverse = (0..order).map(|a| g.inv(a / w) * w + h.inv(a % w)).collect();
    FiniteGroup {
        order,
        table,
        identity: g.identity() * w + h.identity(),
        inverse,
    }
}

/// The group formed by a list of permutations closed under composition;
/// `perms[i] * perms[j] = perms[i] ∘ perms[j]`.
pub fn from_permutations(perms: &[Permutation]) -> Result<FiniteGroup> {
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if index.len() != perms.len() {
        return Err(Error::InvalidTable("repeated permutation".into()));
    }
    let mut rows = Vec::with_capacity(perms.len());
    for a in perms {
        let mut row = Vec::with_capacity(perms.len());
        for b in perms {
            let c = a.compose(b);
            row.push(*index.get(&c).ok_or_else(|| {
                Error::InvalidTable("permutations are not closed under composition".into())
            })?);
        }
        rows.push(row);
    }
    validate_group(&rows)
}

/// Representatives of every isomorphism class of groups of the given order,
/// for orders up to 8.
pub fn small_groups(order: usize) -> Result<Vec<FiniteGroup>> {
    let z = |n| cyclic_group(n).expect("n >= 1");
    Ok(match order {
        1 | 2 | 3 | 5 | 7 => vec![z(order)],
        4 => vec![z(4), direct_product(&z(2), &z(2))],
        6 => vec![z(6), dihedral(3)?],
        8 => vec![
            z(8),
            direct_product(&z(4), &z(2)),
            direct_product(&direct_product(&z(2), &z(2)), &z(2)),
            dihedral_8(),
            quaternion_8(),
        ],
        _ => {
            return Err(Error::InvalidArgument(format!(
                "small group catalogue covers orders 1..=8, not {order}"
            )))
        }
    })
}

/// A subgroup, as the sorted list of its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: vec![g.identity()],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: (0..g.order()).collect(),
        }
    }

    /// Accepts `members` only if it is closed under products and inverses.
    pub fn new(g: &FiniteGroup, members: &[usize]) -> Result<Subgroup> {
        for &x in members {
            g.check_element(x)?;
        }
        let closed = closure(g, members)?;
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if set.len() != closed.order() || !set.iter().all(|&x| closed.contains(x)) {
            return Err(Error::NotSubgroup);
        }
        Ok(closed)
    }
}

/// Smallest subgroup containing `generators`.
pub fn closure(g: &FiniteGroup, generators: &[usize]) -> Result<Subgroup> {
    for &x in generators {
        g.check_element(x)?;
    }
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    let mut members = vec![g.identity()];
    let mut queue: VecDeque<usize> = VecDeque::from([g.identity()]);
    while let Some(a) = queue.pop_front() {
        for &s in generators {
            let b = g.mul(a, s);
            if !inside[b] {
                inside[b] = true;
                members.push(b);
                queue.push_back(b);
            }
        }
    }
    members.sort_unstable();
    Ok(Subgroup { members })
}

/// `x N x^{-1} = N` for every `x`.
pub fn is_normal(g: &FiniteGroup, n: &Subgroup) -> bool {
    (0..g.order()).all(|x| {
        n.members()
            .iter()
            .all(|&y| n.contains(g.mul(g.mul(x, y), g.inv(x))))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupReport {
    pub closure: Subgroup,
    /// The given set is itself a subgroup.
    pub is_subgroup: bool,
    /// The closure is normal.
    pub is_normal: bool,
    /// Inverse-closed and free of the identity.
    pub is_symmetric_genset: bool,
}

pub fn subgroup_ops(g: &FiniteGroup, set: &[usize]) -> Result<SubgroupReport> {
    let closure = closure(g, set)?;
    let distinct: BTreeSet<usize> = set.iter().copied().collect();
    let is_subgroup =
        distinct.len() == closure.order() && distinct.iter().all(|&x| closure.contains(x));
    let is_normal = is_normal(g, &closure);
    let is_symmetric_genset =
        !distinct.contains(&g.identity()) && distinct.iter().all(|&x| distinct.contains(&g.inv(x)));
    Ok(SubgroupReport {
        closure,
        is_subgroup,
        is_normal,
        is_symmetric_genset,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of each element of the ambient group.
    pub coset_of: Vec<usize>,
    /// Minimal element of each coset, in increasing order.
    pub representatives: Vec<usize>,
}

pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(x);
        for &y in n.members() {
            coset_of[g.mul(x, y)] = c;
        }
    }
    let k = representatives.len();
    let rows: Vec<Vec<usize>> = representatives
        .iter()
        .map(|&a| {
            representatives
                .iter()
                .map(|&b| coset_of[g.mul(a, b)])
                .collect()
        })
        .collect();
    debug_assert_eq!(rows.len(), k);
    Ok(Quotient {
        group: validate_group(&rows)?,
        coset_of,
        representatives,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub is_hom: bool,
    /// Preimage of the identity, sorted.
    pub kernel: Vec<usize>,
    /// Range of the map, sorted.
    pub image: Vec<usize>,
}

pub fn hom_check(g: &FiniteGroup, h: &FiniteGroup, f: &[usize]) -> Result<HomReport> {
    if f.len() != g.order() {
        return Err(Error::SizeMismatch {
            points: f.len(),
            order: g.order(),
        });
    }
    for &y in f {
        h.check_element(y)?;
    }
    let is_hom = (0..g.order())
        .all(|a| (0..g.order()).all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])));
    let kernel = (0..g.order()).filter(|&x| f[x] == h.identity()).collect();
    let image: BTreeSet<usize> = f.iter().copied().collect();
    Ok(HomReport {
        is_hom,
        kernel,
        image: image.into_iter().collect(),
    })
}

/// A subgroup as a group in its own right; element `i` is `sub.members()[i]`.
pub fn subgroup_group(g: &FiniteGroup, sub: &Subgroup) -> Result<FiniteGroup> {
    let members = sub.members();
    let pos = |x: usize| members.binary_search(&x).map_err(|_| Error::NotSubgroup);
    let rows = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos(g.mul(a, b))).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    validate_group(&rows)
}

/// Every subgroup, ordered by `(order, members)`.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let trivial = Subgroup::trivial(g);
    let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        for x in 0..g.order() {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.members().to_vec();
            gens.push(x);
            let bigger = closure(g, &gens).expect("elements in range");
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    let mut all: Vec<Subgroup> = seen.into_iter().collect();
    all.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    all
}

/// A subgroup `K` with `K ∩ N = {e}` and `|K||N| = |G|`, if any.
pub fn find_complement(g: &FiniteGroup, n: &Subgroup) -> Result<Option<Subgroup>> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let wanted = g.order() / n.order();
    Ok(all_subgroups(g).into_iter().find(|k| {
        k.order() == wanted && k.members().iter().all(|&x| x == g.identity() || !n.contains(x))
    }))
}

/// A group isomorphism `G -> H` as an element map, if one exists.
pub fn find_group_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g);
    for x in 0..g.order() {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens).expect("elements in range");
        }
    }
    let h_orders: Vec<usize> = (0..h.order()).map(|y| h.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            (0..h.order()).filter(|&y| h_orders[y] == o).collect()
        })
        .collect();

    let mut choice = vec![0usize; gens.len()];
    fn extend(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        choice: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return try_generator_images(g, h, gens, choice);
        }
        for &y in &candidates[depth] {
            choice[depth] = y;
            if let Some(f) = extend(g, h, gens, candidates, choice, depth + 1) {
                return Some(f);
            }
        }
        None
    }
    extend(g, h, &gens, &candidates, &mut choice, 0)
}

fn try_generator_images(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut f = vec![usize::MAX; g.order()];
    f[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(a) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let b = g.mul(a, s);
            let fb = h.mul(f[a], t);
            if f[b] == usize::MAX {
                f[b] = fb;
                queue.push_back(b);
            } else if f[b] != fb {
                return None;
            }
        }
    }
    let distinct: HashSet<usize> = f.iter().copied().collect();
    if distinct.len() != g.order() {
        return None;
    }
    let report = hom_check(g, h, &f).ok()?;
    report.is_hom.then_some(f)
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_group_isomorphism(g, h).is_some()
}
