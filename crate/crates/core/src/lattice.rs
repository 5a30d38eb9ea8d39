//! The lattice of normal subgroups, its radical and socle, and the
//! decomposition of the socle into G-isomorphism types.

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{is_power_of, ConjClass, Group, Subgroup};
use crate::modp;

/// All normal subgroups of a group ordered by inclusion.
///
/// Nodes are sorted by order (ties broken by bitset), so node 0 is the
/// trivial subgroup and the last node is the whole group.
#[derive(Clone, Debug)]
pub struct NormalLattice {
    group_order: usize,
    nodes: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    /// `up[i]` holds every `j` with `nodes[i] <= nodes[j]`.
    up: Vec<FixedBitSet>,
    /// `covers[i]` lists the upper covers of node `i`.
    covers: Vec<Vec<usize>>,
}

impl NormalLattice {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Subgroup {
        &self.nodes[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn index_of(&self, sub: &Subgroup) -> Option<usize> {
        self.index.get(sub.bits()).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// Nodes `j` with `i <= j`.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[i].ones()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn lower_covers(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.covers[i].contains(&j)).collect()
    }

    /// Least upper bound. Nodes are sorted by order, so the first common
    /// upper bound is the least one.
    pub fn join_index(&self, i: usize, j: usize) -> usize {
        let mut both = self.up[i].clone();
        both.intersect_with(&self.up[j]);
        both.minimum().expect("the whole group bounds every pair")
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.nodes[i].meet(&self.nodes[j]))
            .expect("intersection of normal subgroups is normal")
    }

    /// Index of the join of a set of nodes (the bottom for an empty set).
    pub fn join_all(&self, nodes: impl IntoIterator<Item = usize>) -> usize {
        nodes.into_iter().fold(0, |acc, n| self.join_index(acc, n))
    }

    /// Hasse diagram as `(lower, upper)` cover pairs.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(i, cs)| cs.iter().map(move |&j| (i, j)))
            .collect()
    }
}

/// Smallest normal subgroup containing `seed`.
pub fn normal_closure(g: &Group, seed: impl IntoIterator<Item = usize>) -> Subgroup {
    g.normal_closure(seed)
}

/// Enumerates every normal subgroup: the normal closure of each single
/// conjugacy class, closed under join until nothing new appears.
/// Every normal subgroup is a union of classes and hence the join of the
/// closures of its classes, so joining each node with the single-class
/// closures reaches all of them.
pub fn enumerate_normal_subgroups(g: &Group) -> NormalLattice {
    let n = g.order();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut list: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup, list: &mut Vec<Subgroup>| {
        if seen.insert(s.bits().clone()) {
            list.push(s);
        }
    };
    push(Subgroup::trivial(n), &mut list);
    // One class per distinct closure is enough to generate joins.
    let mut seeds: Vec<&ConjClass> = Vec::new();
    for c in g.conjugacy_classes().iter().skip(1) {
        let before = list.len();
        push(g.normal_closure([c.representative]), &mut list);
        if list.len() > before {
            seeds.push(c);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for c in &seeds {
            if list[i].contains(c.representative) {
                continue;
            }
            let joined = g.extend_subgroup(&list[i], c.members.ones());
            push(joined, &mut list);
        }
        i += 1;
    }
    build_lattice(n, list)
}

fn build_lattice(group_order: usize, mut nodes: Vec<Subgroup>) -> NormalLattice {
    nodes.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    let m = nodes.len();
    let index = nodes.iter().enumerate().map(|(i, s)| (s.bits().clone(), i)).collect();
    let up: Vec<FixedBitSet> = (0..m)
        .map(|i| {
            let mut set = FixedBitSet::with_capacity(m);
            for j in i..m {
                if nodes[i].is_subset(&nodes[j]) {
                    set.insert(j);
                }
            }
            set
        })
        .collect();
    // Index order extends the inclusion order, so scanning the up-set in
    // increasing index finds each cover before anything above it.
    let covers = (0..m)
        .map(|i| {
            let mut dominated = FixedBitSet::with_capacity(m);
            let mut cs = Vec::new();
            for j in up[i].ones().filter(|&j| j != i) {
                if !dominated.contains(j) {
                    cs.push(j);
                    dominated.union_with(&up[j]);
                }
            }
            cs
        })
        .collect();
    NormalLattice {
        group_order,
        nodes,
        index,
        up,
        covers,
    }
}

/// Coatoms of the lattice.
pub fn maximal_normal_subgroups(lat: &NormalLattice) -> Result<Vec<Subgroup>> {
    if lat.group_order() == 1 {
        return Err(Error::TrivialGroup);
    }
    Ok(lat.lower_covers(lat.top()).into_iter().map(|i| lat.node(i).clone()).collect())
}

/// Atoms of the lattice.
pub fn minimal_normal_subgroups(lat: &NormalLattice) -> Result<Vec<Subgroup>> {
    if lat.group_order() == 1 {
        return Err(Error::TrivialGroup);
    }
    Ok(lat.upper_covers(0).iter().map(|&i| lat.node(i).clone()).collect())
}

/// Intersection of all maximal normal subgroups.
pub fn radical(lat: &NormalLattice) -> Result<Subgroup> {
    Ok(lat.node(radical_index(lat)?).clone())
}

pub fn radical_index(lat: &NormalLattice) -> Result<usize> {
    if lat.group_order() == 1 {
        return Err(Error::TrivialGroup);
    }
    let top = lat.top();
    Ok(lat
        .lower_covers(top)
        .into_iter()
        .fold(top, |acc, m| lat.meet_index(acc, m)))
}

/// Join of all minimal normal subgroups.
pub fn socle(lat: &NormalLattice) -> Result<Subgroup> {
    Ok(lat.node(socle_index(lat)?).clone())
}

pub fn socle_index(lat: &NormalLattice) -> Result<usize> {
    if lat.group_order() == 1 {
        return Err(Error::TrivialGroup);
    }
    Ok(lat.join_all(lat.upper_covers(0).iter().copied()))
}

/// An elementary abelian normal subgroup presented as an `F_p` vector
/// space: a basis and the coordinates of every member.
struct Module {
    prime: usize,
    basis: Vec<usize>,
    coords: HashMap<usize, Vec<u64>>,
}

impl Module {
    fn new(g: &Group, a: &Subgroup) -> Result<Self> {
        if !g.is_normal(a) {
            return Err(Error::NotNormal);
        }
        let prime = elementary_prime(g, a).ok_or(Error::NotElementaryAbelian)?;
        let basis = g.subgroup_generators(a);
        let k = basis.len();
        let mut coords = HashMap::with_capacity(a.order());
        coords.insert(0, vec![0; k]);
        // Span the basis one vector at a time.
        for (i, &e) in basis.iter().enumerate() {
            let existing: Vec<(usize, Vec<u64>)> = coords.iter().map(|(x, v)| (*x, v.clone())).collect();
            for (x, v) in existing {
                let mut y = x;
                for c in 1..prime {
                    y = g.mul(y, e);
                    let mut w = v.clone();
                    w[i] = c as u64;
                    coords.insert(y, w);
                }
            }
        }
        if coords.len() != a.order() {
            return Err(Error::NotElementaryAbelian);
        }
        Ok(Module { prime, basis, coords })
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn coord(&self, x: usize) -> &[u64] {
        &self.coords[&x]
    }

    /// Matrix of conjugation by `h`; column j is the image of basis vector j.
    fn action(&self, g: &Group, h: usize) -> modp::Matrix {
        let k = self.rank();
        let mut m = vec![vec![0; k]; k];
        for (j, &e) in self.basis.iter().enumerate() {
            let img = self.coord(g.conjugate(e, h));
            for i in 0..k {
                m[i][j] = img[i];
            }
        }
        m
    }
}

/// The prime p if `a` is a nontrivial elementary abelian p-group.
pub fn elementary_prime(g: &Group, a: &Subgroup) -> Option<usize> {
    if a.is_trivial() {
        return None;
    }
    let elems: Vec<usize> = a.elements().collect();
    let p = g.element_order(elems[1]);
    let ok = elems[1..].iter().all(|&x| g.element_order(x) == p)
        && elems.iter().all(|&x| elems.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    (ok && crate::group::is_prime(p as u64)).then_some(p)
}

/// Number of G-equivariant homomorphisms `a -> b` between elementary
/// abelian normal subgroups of the same exponent.
///
/// Equivariance `f(x^h) = f(x)^h` is linear in the matrix of `f`, and it
/// suffices to impose it for generators `h` of G; the count is `p^nullity`
/// of that system.
pub fn g_hom_count(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<u64> {
    let ma = Module::new(g, a)?;
    let mb = Module::new(g, b)?;
    if ma.prime != mb.prime {
        return Err(Error::NotElementaryAbelian);
    }
    let p = ma.prime as u64;
    let (k, m) = (ma.rank(), mb.rank());
    // Unknown F is m x k, entry (r, c) at position r * k + c.
    let unknowns = m * k;
    let mut system: modp::Matrix = Vec::new();
    for &h in g.generators() {
        let act_a = ma.action(g, h);
        let act_b = mb.action(g, h);
        // (F · act_a - act_b · F)[r][c] = 0
        for r in 0..m {
            for c in 0..k {
                let mut row = vec![0u64; unknowns];
                for t in 0..k {
                    row[r * k + t] = (row[r * k + t] + act_a[t][c]) % p;
                }
                for t in 0..m {
                    row[t * k + c] = (row[t * k + c] + p - act_b[r][t]) % p;
                }
                system.push(row);
            }
        }
    }
    let nullity = unknowns - modp::rank(system, p);
    p.checked_pow(nullity as u32)
        .ok_or_else(|| Error::DomainError(format!("{p}^{nullity} overflows")))
}

/// Exhaustive counterpart of [`g_hom_count`]: tries every assignment of
/// basis images and keeps those commuting with conjugation by every element
/// of G. Limited to `budget` candidate maps.
pub fn g_hom_count_bruteforce(g: &Group, a: &Subgroup, b: &Subgroup, budget: u64) -> Result<u64> {
    let ma = Module::new(g, a)?;
    let mb = Module::new(g, b)?;
    if ma.prime != mb.prime {
        return Err(Error::NotElementaryAbelian);
    }
    let targets: Vec<usize> = b.elements().collect();
    let k = ma.rank();
    let candidates = (targets.len() as u64)
        .checked_pow(k as u32)
        .filter(|&c| c <= budget)
        .ok_or(Error::BudgetExceeded { budget })?;
    let members: Vec<usize> = a.elements().collect();
    let mut count = 0;
    let mut choice = vec![0usize; k];
    for _ in 0..candidates {
        let images: Vec<usize> = choice.iter().map(|&i| targets[i]).collect();
        let f = |x: usize| -> usize {
            ma.coord(x)
                .iter()
                .zip(&images)
                .fold(0, |acc, (&c, &img)| g.mul(acc, g.power(img, c as usize)))
        };
        let hom = members.iter().all(|&x| members.iter().all(|&y| f(g.mul(x, y)) == g.mul(f(x), f(y))));
        let equivariant = hom
            && (0..g.order()).all(|h| members.iter().all(|&x| f(g.conjugate(x, h)) == g.conjugate(f(x), h)));
        if equivariant {
            count += 1;
        }
        for slot in choice.iter_mut() {
            *slot += 1;
            if *slot < targets.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(count)
}

/// One G-isomorphism type of elementary abelian minimal normal subgroups.
#[derive(Clone, Debug)]
pub struct AbelianSocleFactor {
    /// A representative minimal normal subgroup `A_i`.
    pub representative: Subgroup,
    pub prime: usize,
    /// `|A_i|`.
    pub order: usize,
    /// `d_i`: the span of the type is `A_i^{d_i}`.
    pub multiplicity: u32,
    /// `q_i = |Hom_G(A_i, A_i)|`.
    pub field_size: u64,
    /// Every minimal normal subgroup of this type.
    pub members: Vec<Subgroup>,
    /// Join of the members.
    pub span: Subgroup,
}

#[derive(Clone, Debug)]
pub struct SocleDecomposition {
    pub abelian: Vec<AbelianSocleFactor>,
    pub non_abelian: Vec<Subgroup>,
    pub socle: Subgroup,
}

impl SocleDecomposition {
    /// Number of G-isomorphism types of elementary abelian minimal normals.
    pub fn a(&self) -> usize {
        self.abelian.len()
    }

    /// Number of non-abelian minimal normal subgroups.
    pub fn b(&self) -> usize {
        self.non_abelian.len()
    }
}

/// Splits the socle into G-isomorphism types.
///
/// Two elementary abelian minimal normal subgroups of equal order are
/// G-isomorphic exactly when a nonzero equivariant map exists between them
/// (both are irreducible modules). For each type, `q` comes from
/// [`g_hom_count`] and `d` from the member count `(q^d - 1)/(q - 1)`.
pub fn socle_decomposition(g: &Group, lat: &NormalLattice) -> Result<SocleDecomposition> {
    let atoms = minimal_normal_subgroups(lat)?;
    let mut abelian: Vec<AbelianSocleFactor> = Vec::new();
    let mut non_abelian = Vec::new();
    for atom in atoms {
        let Some(prime) = elementary_prime(g, &atom) else {
            non_abelian.push(atom);
            continue;
        };
        let mut placed = false;
        for factor in abelian.iter_mut() {
            if factor.order == atom.order()
                && factor.prime == prime
                && g_hom_count(g, &factor.representative, &atom)? > 1
            {
                factor.members.push(atom.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            abelian.push(AbelianSocleFactor {
                representative: atom.clone(),
                prime,
                order: atom.order(),
                multiplicity: 0,
                field_size: 0,
                members: vec![atom.clone()],
                span: atom,
            });
        }
    }
    for factor in abelian.iter_mut() {
        let q = g_hom_count(g, &factor.representative, &factor.representative)?;
        if q < 2 || !is_power_of(q as usize, factor.prime) {
            return Err(Error::InternalInconsistency(format!(
                "endomorphism count {q} is not a power of {}",
                factor.prime
            )));
        }
        let count = factor.members.len() as u64;
        let target = count * (q - 1) + 1;
        let mut d = 0u32;
        let mut power = 1u64;
        while power < target {
            power *= q;
            d += 1;
        }
        if power != target {
            return Err(Error::InternalInconsistency(format!(
                "{count} minimal normal subgroups is not (q^d-1)/(q-1) for q = {q}"
            )));
        }
        factor.field_size = q;
        factor.multiplicity = d;
        let span_idx = lat.join_all(factor.members.iter().map(|m| lat.index_of(m).expect("atom is a node")));
        factor.span = lat.node(span_idx).clone();
        let expected = (factor.order as u64).pow(d);
        if factor.span.order() as u64 != expected {
            return Err(Error::InternalInconsistency(format!(
                "span of type has order {} but |A|^d = {expected}",
                factor.span.order()
            )));
        }
    }
    let socle = socle(lat)?;
    let product: u64 = abelian.iter().map(|f| f.span.order() as u64).product::<u64>()
        * non_abelian.iter().map(|s| s.order() as u64).product::<u64>();
    if product != socle.order() as u64 {
        return Err(Error::InternalInconsistency(format!(
            "socle order {} differs from product of factors {product}",
            socle.order()
        )));
    }
    Ok(SocleDecomposition {
        abelian,
        non_abelian,
        socle,
    })
}

/// True iff the radical is trivial (always true for the trivial group).
pub fn is_product_of_simples(lat: &NormalLattice) -> bool {
    lat.group_order() == 1 || (radical_index(lat) == Ok(0))
}

/// Isomorphism fingerprint of a non-abelian simple group: its order and
/// sorted class sizes. Adequate at the orders handled here.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub order: usize,
    pub class_sizes: Vec<usize>,
}

impl SimpleType {
    pub fn of(group: &Group) -> Self {
        let mut class_sizes: Vec<usize> = group.conjugacy_classes().iter().map(|c| c.size).collect();
        class_sizes.sort_unstable();
        SimpleType {
            order: group.order(),
            class_sizes,
        }
    }

    pub fn name(&self) -> String {
        match self.order {
            60 => "A5".into(),
            168 => "PSL(2,7)".into(),
            360 => "A6".into(),
            504 => "PSL(2,8)".into(),
            660 => "PSL(2,11)".into(),
            1092 => "PSL(2,13)".into(),
            n => format!("simple({n})"),
        }
    }
}

/// Direct-factor structure of a group with trivial radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactorDecomposition {
    /// Non-abelian simple factor types with multiplicities `s_i`.
    pub non_abelian: Vec<(SimpleType, u32)>,
    /// Elementary abelian part as `(p_j, a_j)`.
    pub abelian: Vec<(usize, u32)>,
}

/// Factors a group with trivial radical as `prod S_i^{s_i} x prod C_p^{a_j}`.
pub fn simple_factor_decomposition(g: &Group, lat: &NormalLattice) -> Result<SimpleFactorDecomposition> {
    if !is_product_of_simples(lat) {
        return Err(Error::NotSemisimple);
    }
    if g.order() == 1 {
        return Ok(SimpleFactorDecomposition {
            non_abelian: vec![],
            abelian: vec![],
        });
    }
    let dec = socle_decomposition(g, lat)?;
    let mut abelian: BTreeMap<usize, u32> = BTreeMap::new();
    for f in &dec.abelian {
        if f.order != f.prime {
            return Err(Error::InternalInconsistency(
                "abelian direct factor of a semisimple group is not of prime order".into(),
            ));
        }
        *abelian.entry(f.prime).or_default() += f.multiplicity;
    }
    let mut types: BTreeMap<SimpleType, u32> = BTreeMap::new();
    for s in &dec.non_abelian {
        let (sg, _) = g.subgroup_as_group(s);
        if !sg.is_simple()? {
            return Err(Error::InternalInconsistency("non-abelian factor is not simple".into()));
        }
        *types.entry(SimpleType::of(&sg)).or_default() += 1;
    }
    if dec.socle.order() != g.order() {
        return Err(Error::InternalInconsistency("semisimple group differs from its socle".into()));
    }
    Ok(SimpleFactorDecomposition {
        non_abelian: types.into_iter().collect(),
        abelian: abelian.into_iter().collect(),
    })
}
