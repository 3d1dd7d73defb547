//! Permutation groups on the ground set: composition, deterministic
//! Schreier-Sims stabilizer chains, orbits, minimal block systems, and
//! brute-force isomorphism of small multiplication tables.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// A permutation stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::GroupStructure(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Build from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                images[cyc[w]] = cyc[(w + 1) % cyc.len()];
            }
        }
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(p ∘ q)(i) = p(q(i))`.
    pub fn compose(&self, q: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), q.degree());
        Perm { images: q.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] == i).collect()
    }

    pub fn moved_points(&self) -> usize {
        (0..self.degree()).filter(|&i| self.images[i] != i).count()
    }

    /// Image of a point set given as a bitmask (degree at most 64).
    pub fn apply_mask(&self, mask: u64) -> u64 {
        debug_assert!(self.degree() <= 64);
        crate::bits::iter(mask).fold(0u64, |m, i| m | (1u64 << self.images[i]))
    }

    /// Induced permutation on a sorted list of stable points of a set.
    pub fn restrict_to(&self, points: &[usize]) -> Result<Perm> {
        let pos: HashMap<usize, usize> =
            points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut images = Vec::with_capacity(points.len());
        for &p in points {
            let q = self.images[p];
            let Some(&k) = pos.get(&q) else {
                return Err(Error::GroupStructure(format!(
                    "permutation does not stabilize point set {points:?}"
                )));
            };
            images.push(k);
        }
        Perm::from_images(images)
    }

    /// Sign of the permutation: +1 for even, -1 for odd.
    pub fn parity(&self) -> i8 {
        let transpositions: usize =
            self.cycle_lengths().into_iter().map(|l| l - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps `base` to `p`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level { base, gens: Vec::new(), transversal }
    }

    /// Deterministic BFS orbit: queue order, generators in list order.
    fn recompute(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        let mut queue = VecDeque::from([self.base]);
        while let Some(p) = queue.pop_front() {
            let u = self.transversal[p].clone().expect("queued point reached");
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(g.compose(&u));
                    queue.push_back(q);
                }
            }
        }
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().flatten().count()
    }

    fn orbit_points(&self) -> Vec<usize> {
        (0..self.transversal.len())
            .filter(|&p| self.transversal[p].is_some())
            .collect()
    }
}

/// A permutation group with a base and strong generating set, built by a
/// deterministic (non-randomized) Schreier-Sims run. Base points are taken
/// in natural order: each new base is the smallest point moved by the
/// residue that created its level.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Group generated by `gens`.
    pub fn generate(degree: usize, gens: &[Perm]) -> PermGroup {
        Self::generate_with_base(degree, gens, &[])
    }

    /// Same, but force the leading base points (used to read a point
    /// stabilizer off the chain).
    pub fn generate_with_base(degree: usize, gens: &[Perm], base_pref: &[usize]) -> PermGroup {
        let generators: Vec<Perm> =
            gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut group =
            PermGroup { degree, generators: generators.clone(), levels: Vec::new() };
        if generators.is_empty() {
            return group;
        }
        let first_base = base_pref.first().copied().unwrap_or_else(|| {
            (0..degree)
                .find(|&p| generators.iter().any(|g| g.apply(p) != p))
                .expect("nonidentity generator moves something")
        });
        group.levels.push(Level::new(degree, first_base));
        group.levels[0].gens = generators;
        group.close_level(0, base_pref);
        debug_assert!(group
            .generators
            .iter()
            .all(|g| group.sift(g).0.is_identity()));
        group
    }

    /// Re-establish the chain condition at `level` and below: every Schreier
    /// generator must sift to the identity through the deeper chain.
    fn close_level(&mut self, level: usize, base_pref: &[usize]) {
        self.levels[level].recompute(self.degree);
        'restart: loop {
            let points = self.levels[level].orbit_points();
            for &p in &points {
                let u_p = self.levels[level].transversal[p].clone().unwrap();
                for gi in 0..self.levels[level].gens.len() {
                    let g = self.levels[level].gens[gi].clone();
                    let target = g.apply(p);
                    let u_t = self.levels[level].transversal[target]
                        .clone()
                        .expect("orbit closed under generators");
                    let schreier = u_t.inverse().compose(&g).compose(&u_p);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, reached) = self.sift_from(level + 1, schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    if reached == self.levels.len() {
                        let base = base_pref.get(reached).copied().unwrap_or_else(|| {
                            (0..self.degree)
                                .find(|&q| residue.apply(q) != q)
                                .expect("nonidentity residue")
                        });
                        self.levels.push(Level::new(self.degree, base));
                    }
                    self.levels[reached].gens.push(residue);
                    self.close_level(reached, base_pref);
                    continue 'restart;
                }
            }
            break;
        }
    }

    fn sift_from(&self, start: usize, mut h: Perm) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let target = h.apply(level.base);
            match &level.transversal[target] {
                None => return (h, l),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        (h, self.levels.len())
    }

    /// Strip through the chain; members leave an identity residue.
    pub fn sift(&self, p: &Perm) -> (Perm, usize) {
        self.sift_from(0, p.clone())
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.sift(p).0.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit_len() as u64).product()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Element of the group mapping `base[0]` to `p`, if in the orbit.
    pub fn transversal_to(&self, p: usize) -> Option<Perm> {
        self.levels.first()?.transversal[p].clone()
    }

    pub fn first_orbit(&self) -> Vec<usize> {
        self.levels.first().map(|l| l.orbit_points()).unwrap_or_default()
    }

    /// Strong generators fixing `base[0]`: generators of the point
    /// stabilizer when the chain was built with that first base.
    pub fn first_stabilizer_gens(&self) -> Vec<Perm> {
        self.levels
            .iter()
            .skip(1)
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    /// All elements, via breadth-first closure, provided the order does not
    /// exceed `cap`.
    pub fn elements_capped(&self, cap: usize) -> Option<Vec<Perm>> {
        if self.order() > cap as u64 {
            return None;
        }
        let mut seen = HashSet::new();
        let mut out = vec![Perm::identity(self.degree)];
        seen.insert(out[0].clone());
        let mut queue = VecDeque::from([out[0].clone()]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    out.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Some(out)
    }

    /// Uniformly random element: one transversal representative per level.
    pub fn random_element<Rng: rand::Rng>(&self, rng: &mut Rng) -> Perm {
        let mut out = Perm::identity(self.degree);
        for level in &self.levels {
            let pts = level.orbit_points();
            let p = pts[rng.random_range(0..pts.len())];
            out = out.compose(level.transversal[p].as_ref().unwrap());
        }
        out
    }
}

/// Orbit of `seed` under an induced action, with a witness group element
/// mapping the seed to each orbit member. Deterministic BFS.
pub fn orbit<T, F>(gens: &[Perm], seed: T, act: F) -> BTreeMap<T, Perm>
where
    T: Ord + Clone,
    F: Fn(&Perm, &T) -> T,
{
    let degree = gens.first().map(|g| g.degree()).unwrap_or(0);
    let mut out = BTreeMap::new();
    out.insert(seed.clone(), Perm::identity(degree));
    let mut queue = VecDeque::from([seed]);
    while let Some(t) = queue.pop_front() {
        let w = out[&t].clone();
        for g in gens {
            let u = act(g, &t);
            if !out.contains_key(&u) {
                out.insert(u.clone(), g.compose(&w));
                queue.push_back(u);
            }
        }
    }
    out
}

pub fn orbit_points(gens: &[Perm], seed: usize) -> BTreeMap<usize, Perm> {
    orbit(gens, seed, |g, &p| g.apply(p))
}

/// A partition of the domain into blocks, sorted for determinism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn is_trivial(&self, degree: usize) -> bool {
        self.blocks.len() == 1 || self.blocks.len() == degree
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }
}

/// Minimal block system in which `a` and `b` share a block, for a group
/// transitive on `0..degree` (union-find closure of the congruence).
pub fn minimal_block_system(degree: usize, gens: &[Perm], a: usize, b: usize) -> BlockSystem {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    if ra != rb {
        let (keep, merge) = (ra.min(rb), ra.max(rb));
        parent[merge] = keep;
        queue.push_back(merge);
    }
    while let Some(q) = queue.pop_front() {
        let rep = find(&mut parent, q);
        for g in gens {
            let (r1, r2) = (
                find(&mut parent, g.apply(q)),
                find(&mut parent, g.apply(rep)),
            );
            if r1 != r2 {
                let (keep, merge) = (r1.min(r2), r1.max(r2));
                parent[merge] = keep;
                queue.push_back(merge);
            }
        }
        // the class of q may have merged again while it sat in the queue
        if find(&mut parent, q) != rep {
            queue.push_back(q);
        }
    }
    let mut by_rep: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..degree {
        let r = find(&mut parent, x);
        by_rep.entry(r).or_default().push(x);
    }
    BlockSystem { blocks: by_rep.into_values().collect() }
}

/// Primitivity test for a transitive group: primitive iff every minimal
/// block system through `{0, y}` is trivial. Returns the verdict and one
/// nontrivial system when present.
pub fn primitivity(degree: usize, gens: &[Perm]) -> (bool, Option<BlockSystem>) {
    for y in 1..degree {
        let sys = minimal_block_system(degree, gens, 0, y);
        if !sys.is_trivial(degree) {
            return (false, Some(sys));
        }
    }
    (true, None)
}

/// Multiplication table of a small group; entries index into the element
/// list it was built from.
#[derive(Clone, Debug)]
pub struct MulTable {
    pub n: usize,
    t: Vec<u16>,
    identity: usize,
}

impl MulTable {
    pub fn from_elements(elems: &[Perm]) -> Result<MulTable> {
        let n = elems.len();
        let index: HashMap<&Perm, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut t = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = elems[i].compose(&elems[j]);
                let Some(&k) = index.get(&prod) else {
                    return Err(Error::GroupStructure(
                        "element list is not closed under composition".into(),
                    ));
                };
                t[i * n + j] = k as u16;
            }
        }
        let identity = elems
            .iter()
            .position(|p| p.is_identity())
            .ok_or_else(|| Error::GroupStructure("no identity in element list".into()))?;
        Ok(MulTable { n, t, identity })
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.t[i * self.n + j] as usize
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    fn centralizer_size(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.mul(i, j) == self.mul(j, i)).count()
    }

    /// Per-element conjugation invariant (order, centralizer size).
    fn invariants(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .map(|i| (self.order_of(i), self.centralizer_size(i)))
            .collect()
    }

    /// The symmetric group on `k` letters as a table (k! elements).
    pub fn symmetric(k: usize) -> MulTable {
        let mut elems = vec![Perm::identity(k)];
        let gens: Vec<Perm> = (0..k.saturating_sub(1))
            .map(|i| Perm::from_cycles(k, &[&[i, i + 1]]))
            .collect();
        let mut seen: HashSet<Perm> = elems.iter().cloned().collect();
        let mut queue: VecDeque<Perm> = elems.clone().into();
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    elems.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        elems.sort_by(|p, q| p.images().cmp(q.images()));
        MulTable::from_elements(&elems).expect("symmetric group is closed")
    }

    pub fn cyclic(k: usize) -> MulTable {
        let elems: Vec<Perm> = (0..k)
            .map(|s| Perm::from_images((0..k).map(|i| (i + s) % k).collect()).unwrap())
            .collect();
        MulTable::from_elements(&elems).expect("cyclic group is closed")
    }

    /// Direct product table (elements are pairs, row-major).
    pub fn direct_product(&self, other: &MulTable) -> MulTable {
        let n = self.n * other.n;
        let mut t = vec![0u16; n * n];
        let pack = |a: usize, b: usize| a * other.n + b;
        for a1 in 0..self.n {
            for b1 in 0..other.n {
                for a2 in 0..self.n {
                    for b2 in 0..other.n {
                        t[pack(a1, b1) * n + pack(a2, b2)] =
                            pack(self.mul(a1, a2), other.mul(b1, b2)) as u16;
                    }
                }
            }
        }
        MulTable { n, t, identity: pack(self.identity, other.identity) }
    }

    /// A small generating set, grown greedily.
    fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.span(&gens);
        for x in 0..self.n {
            if span.contains(&x) {
                continue;
            }
            gens.push(x);
            span = self.span(&gens);
            if span.len() == self.n {
                break;
            }
        }
        gens
    }

    fn span(&self, gens: &[usize]) -> HashSet<usize> {
        let mut seen = HashSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// Exact isomorphism test for groups of order up to a few hundred, by
/// backtracking over generator images with order/centralizer pruning.
pub fn isomorphic(a: &MulTable, b: &MulTable) -> bool {
    if a.n != b.n {
        return false;
    }
    let inv_a = a.invariants();
    let inv_b = b.invariants();
    let mut profile_a = inv_a.clone();
    let mut profile_b = inv_b.clone();
    profile_a.sort_unstable();
    profile_b.sort_unstable();
    if profile_a != profile_b {
        return false;
    }
    let gens = a.generating_set();
    let mut images = vec![0usize; gens.len()];
    backtrack(a, b, &inv_a, &inv_b, &gens, 0, &mut images)
}

fn backtrack(
    a: &MulTable,
    b: &MulTable,
    inv_a: &[(usize, usize)],
    inv_b: &[(usize, usize)],
    gens: &[usize],
    k: usize,
    images: &mut Vec<usize>,
) -> bool {
    if k == gens.len() {
        return extends_to_isomorphism(a, b, gens, images);
    }
    for cand in 0..b.n {
        if inv_b[cand] != inv_a[gens[k]] {
            continue;
        }
        images[k] = cand;
        if backtrack(a, b, inv_a, inv_b, gens, k + 1, images) {
            return true;
        }
    }
    false
}

fn extends_to_isomorphism(
    a: &MulTable,
    b: &MulTable,
    gens: &[usize],
    images: &[usize],
) -> bool {
    // propagate phi over A by right-multiplication with the generators
    let mut phi = vec![usize::MAX; a.n];
    phi[a.identity] = b.identity;
    let mut queue = VecDeque::from([a.identity]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let want = b.mul(phi[x], h);
            if phi[y] == usize::MAX {
                phi[y] = want;
                queue.push_back(y);
            } else if phi[y] != want {
                return false;
            }
        }
    }
    if phi.iter().any(|&v| v == usize::MAX) {
        return false;
    }
    let mut hit = vec![false; b.n];
    for &v in &phi {
        if hit[v] {
            return false;
        }
        hit[v] = true;
    }
    (0..a.n).all(|i| (0..a.n).all(|j| phi[a.mul(i, j)] == b.mul(phi[i], phi[j])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let p = Perm::from_cycles(5, &[&[0, 1, 2]]);
        let q = Perm::from_cycles(5, &[&[2, 3]]);
        assert_eq!(Perm::identity(5).compose(&q), q);
        assert!(p.compose(&p.inverse()).is_identity());
        // (p∘q)(2) = p(q(2)) = p(3) = 3
        assert_eq!(p.compose(&q).apply(2), 3);
        assert_eq!(p.order(), 3);
        assert_eq!(q.parity(), -1);
    }

    #[test]
    fn from_images_validates() {
        assert!(Perm::from_images(vec![1, 0, 2]).is_ok());
        assert!(Perm::from_images(vec![1, 1, 2]).is_err());
        assert!(Perm::from_images(vec![1, 3, 2]).is_err());
    }

    #[test]
    fn trivial_and_symmetric_group_orders() {
        let trivial = PermGroup::generate(6, &[Perm::identity(6)]);
        assert_eq!(trivial.order(), 1);
        let s5 = PermGroup::generate(
            5,
            &[Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])],
        );
        assert_eq!(s5.order(), 120);
        assert!(s5.contains(&Perm::from_cycles(5, &[&[2, 4]])));
        let a4 = PermGroup::generate(
            4,
            &[Perm::from_cycles(4, &[&[0, 1, 2]]), Perm::from_cycles(4, &[&[1, 2, 3]])],
        );
        assert_eq!(a4.order(), 12);
        assert!(!a4.contains(&Perm::from_cycles(4, &[&[0, 1]])));
    }

    #[test]
    fn dihedral_chain_and_elements() {
        let rot = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]);
        let flip = Perm::from_images(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let d6 = PermGroup::generate(6, &[rot, flip]);
        assert_eq!(d6.order(), 12);
        let elems = d6.elements_capped(20).unwrap();
        assert_eq!(elems.len(), 12);
        for e in &elems {
            assert!(d6.contains(e));
        }
        assert!(!d6.contains(&Perm::from_cycles(6, &[&[0, 1]])));
    }

    #[test]
    fn stabilizer_from_forced_base() {
        let s4 = PermGroup::generate_with_base(
            4,
            &[Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 1, 2, 3]])],
            &[0],
        );
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.base()[0], 0);
        let stab = PermGroup::generate(4, &s4.first_stabilizer_gens());
        assert_eq!(stab.order(), 6); // S3 on {1,2,3}
        assert!(stab.generators().iter().all(|g| g.apply(0) == 0));
    }

    #[test]
    fn orbits_with_witnesses() {
        let rot = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4]]);
        let orb = orbit_points(&[rot], 0);
        assert_eq!(orb.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        for (&p, w) in &orb {
            assert_eq!(w.apply(0), p);
        }
        let single = orbit_points(&[Perm::identity(6)], 5);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn regular_cyclic_action_is_imprimitive() {
        let c6 = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]);
        let sys = minimal_block_system(6, &[c6.clone()], 0, 3);
        assert_eq!(sys.blocks, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let (prim, witness) = primitivity(6, &[c6]);
        assert!(!prim);
        assert!(witness.is_some());
    }

    #[test]
    fn natural_symmetric_action_is_primitive() {
        let gens =
            [Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])];
        let (prim, witness) = primitivity(5, &gens);
        assert!(prim);
        assert!(witness.is_none());
    }

    #[test]
    fn table_isomorphism_examples() {
        let z4 = MulTable::cyclic(4);
        let z2z2 = MulTable::cyclic(2).direct_product(&MulTable::cyclic(2));
        assert!(!isomorphic(&z4, &z2z2));
        assert!(isomorphic(&z4, &z4));
        // S3 x Z2 is the dihedral group of order 12
        let s3z2 = MulTable::symmetric(3).direct_product(&MulTable::cyclic(2));
        let rot = Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]);
        let flip = Perm::from_images(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let d6 = PermGroup::generate(6, &[rot, flip]);
        let d6_table = MulTable::from_elements(&d6.elements_capped(12).unwrap()).unwrap();
        assert!(isomorphic(&s3z2, &d6_table));
        assert!(!isomorphic(&z4, &MulTable::cyclic(5)));
    }

    #[test]
    fn s5_table_has_expected_order_profile() {
        let s5 = MulTable::symmetric(5);
        assert_eq!(s5.n, 120);
        let mut orders: Vec<usize> = (0..120).map(|i| s5.order_of(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders.iter().filter(|&&o| o == 1).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 25);
        assert_eq!(orders.iter().filter(|&&o| o == 6).count(), 20);
    }

    #[test]
    fn random_elements_are_members() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let s5 = PermGroup::generate(
            5,
            &[Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])],
        );
        for _ in 0..50 {
            let p = s5.random_element(&mut rng);
            assert!(s5.contains(&p));
        }
    }
}
