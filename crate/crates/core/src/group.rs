//! Finite groups stored as dense Cayley tables.
//!
//! Elements are the indices `0..order`, with `0` always the identity. Every
//! algorithm downstream is table lookups plus bitset scans, so groups are
//! expected to be small (a few thousand elements at most).

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on the order of any constructed group.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<usize>,
    classes: OnceLock<ClassData>,
}

#[derive(Clone, Debug)]
struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup, held as a membership bitset over the parent's element indices.
///
/// The parent group is not referenced; callers pass it alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: FixedBitSet,
}

/// A conjugacy class. The representative is the smallest member index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    pub members: FixedBitSet,
    pub size: usize,
    pub element_order: usize,
}

/// The natural epimorphism onto a quotient group.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// Image of every source element in the quotient.
    pub image: Vec<usize>,
    pub kernel: Subgroup,
    target_order: usize,
}

impl Subgroup {
    pub fn from_bits(members: FixedBitSet) -> Self {
        Subgroup { members }
    }

    pub fn from_elements(group_order: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut members = FixedBitSet::with_capacity(group_order);
        for e in elements {
            members.insert(e);
        }
        Subgroup { members }
    }

    pub fn trivial(group_order: usize) -> Self {
        Self::from_elements(group_order, [0])
    }

    pub fn whole(group_order: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(group_order);
        members.insert_range(..);
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn meet(&self, other: &Subgroup) -> Subgroup {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subgroup { members }
    }

    /// Size of the ambient group this bitset was built for.
    pub fn parent_order(&self) -> usize {
        self.members.len()
    }
}

impl QuotientMap {
    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Image of a subgroup of the source in the quotient.
    pub fn map_subgroup(&self, sub: &Subgroup) -> Subgroup {
        Subgroup::from_elements(self.target_order, sub.elements().map(|x| self.image[x]))
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let source_order = self.image.len();
        Subgroup::from_elements(
            source_order,
            (0..source_order).filter(|&x| sub.contains(self.image[x])),
        )
    }
}

impl Group {
    /// Builds a group from a full multiplication table (row-major, `a*b` at
    /// `a*order+b`). Element 0 must be the identity. Inverses are derived
    /// from the table; associativity is not checked here (see
    /// [`Group::check_axioms`]).
    pub fn from_table(order: usize, mul: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        if order == 0 || mul.len() != order * order || labels.len() != order {
            return Err(Error::DomainError("table dimensions do not match order".into()));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::DomainError("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row
                .iter()
                .position(|&p| p == 0)
                .ok_or_else(|| Error::DomainError(format!("element {x} has no inverse")))?;
            inv[x] = y as u32;
        }
        let mut group = Group {
            order,
            mul,
            inv,
            labels,
            generators: Vec::new(),
            classes: OnceLock::new(),
        };
        group.generators = group.find_generators();
        Ok(group)
    }

    pub fn trivial() -> Self {
        Group::from_table(1, vec![0], vec!["()".into()]).expect("trivial group table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// A generating set found greedily at construction time.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, x| num_integer::lcm(acc, self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive associativity, identity and inverse check. Cubic in the
    /// order; intended for tests and `--verify`.
    pub fn check_axioms(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            if self.mul(a, 0) != a || self.mul(0, a) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return false;
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        self.labels.iter().all(|l| seen.insert(l.as_str()))
    }

    fn find_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut members = FixedBitSet::with_capacity(self.order);
        members.insert(0);
        let mut list = vec![0];
        // Prefer elements of large order so that few generators are needed.
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&x| std::cmp::Reverse(self.element_order(x)));
        for x in candidates {
            if list.len() == self.order {
                break;
            }
            if !members.contains(x) {
                gens.push(x);
                self.close_under(&mut members, &mut list, &gens);
            }
        }
        gens
    }

    /// Closes `list` (which contains the identity) under right multiplication
    /// by `gens`, yielding the subgroup generated by `gens` when the list
    /// started inside it.
    fn close_under(&self, members: &mut FixedBitSet, list: &mut Vec<usize>, gens: &[usize]) {
        let mut idx = 0;
        while idx < list.len() {
            let x = list[idx];
            for &s in gens {
                let y = self.mul(x, s);
                if !members.contains(y) {
                    members.insert(y);
                    list.push(y);
                }
            }
            idx += 1;
        }
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, seed: impl IntoIterator<Item = usize>) -> Subgroup {
        self.extend_subgroup(&Subgroup::trivial(self.order), seed)
    }

    /// Subgroup generated by `base` together with `extra`.
    pub fn extend_subgroup(&self, base: &Subgroup, extra: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut members = base.members.clone();
        let mut list: Vec<usize> = members.ones().collect();
        let mut gens: Option<Vec<usize>> = None;
        for x in extra {
            if members.contains(x) {
                continue;
            }
            let gens = gens.get_or_insert_with(|| self.subgroup_generators(base));
            gens.push(x);
            self.close_under(&mut members, &mut list, gens);
        }
        Subgroup { members }
    }

    /// A (small) generating set of a subgroup, chosen greedily.
    pub fn subgroup_generators(&self, sub: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut members = FixedBitSet::with_capacity(self.order);
        members.insert(0);
        let mut list = vec![0];
        for x in sub.elements() {
            if list.len() == sub.order() {
                break;
            }
            if !members.contains(x) {
                gens.push(x);
                self.close_under(&mut members, &mut list, &gens);
            }
        }
        gens
    }

    /// The join `HK` of two subgroups when one normalises the other.
    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        if k.is_subset(h) {
            return h.clone();
        }
        if h.is_subset(k) {
            return k.clone();
        }
        self.extend_subgroup(h, self.subgroup_generators(k))
    }

    pub fn is_subgroup(&self, members: &FixedBitSet) -> bool {
        if !members.contains(0) {
            return false;
        }
        let elems: Vec<usize> = members.ones().collect();
        elems.iter().all(|&a| {
            members.contains(self.inv(a)) && elems.iter().all(|&b| members.contains(self.mul(a, b)))
        })
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        sub.elements()
            .all(|x| self.generators.iter().all(|&g| sub.contains(self.conjugate(x, g))))
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.order;
        let mut assigned = FixedBitSet::with_capacity(n);
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned.contains(x) {
                continue;
            }
            let mut members = FixedBitSet::with_capacity(n);
            members.insert(x);
            assigned.insert(x);
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in &self.generators {
                    let z = self.conjugate(y, g);
                    if !members.contains(z) {
                        members.insert(z);
                        assigned.insert(z);
                        queue.push_back(z);
                    }
                }
            }
            let size = members.count_ones(..);
            classes.push(ConjClass {
                representative: x,
                members,
                size,
                element_order: self.element_order(x),
            });
        }
        classes.sort_by_key(|c| (c.element_order, c.size, c.representative));
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for x in c.members.ones() {
                class_of[x] = i;
            }
        }
        ClassData { classes, class_of }
    }

    /// Conjugacy classes, identity class first, ordered by
    /// (element order, class size, smallest member).
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    /// Index into [`Group::conjugacy_classes`] of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_data().class_of[x]
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_elements(
            self.order,
            (0..self.order)
                .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    /// Smallest normal subgroup containing `seed`: the subgroup generated by
    /// the conjugacy classes of the seed elements.
    pub fn normal_closure(&self, seed: impl IntoIterator<Item = usize>) -> Subgroup {
        let classes = self.conjugacy_classes();
        let mut used = FixedBitSet::with_capacity(classes.len());
        let mut elems = Vec::new();
        for x in seed {
            let c = self.class_of(x);
            if !used.contains(c) {
                used.insert(c);
                elems.extend(classes[c].members.ones());
            }
        }
        self.generate(elems)
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// member, so the identity coset is element 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, QuotientMap)> {
        if n.parent_order() != self.order || !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut image = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if image[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for k in n.elements() {
                image[self.mul(x, k)] = idx;
            }
        }
        let m = reps.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                mul.push(image[self.mul(a, b)] as u32);
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.labels[r])).collect();
        let group = Group::from_table(m, mul, labels)?;
        Ok((
            group,
            QuotientMap {
                image,
                kernel: n.clone(),
                target_order: m,
            },
        ))
    }

    /// The subgroup as a group in its own right, together with the embedding
    /// (index in the new group -> index in `self`).
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> (Group, Vec<usize>) {
        let elems: Vec<usize> = sub.elements().collect();
        let mut local = vec![u32::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i as u32;
        }
        let m = elems.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &elems {
            for &b in &elems {
                mul.push(local[self.mul(a, b)]);
            }
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let group = Group::from_table(m, mul, labels).expect("subgroup table is a group table");
        (group, elems)
    }

    /// True iff the only normal subgroups are trivial and the whole group.
    pub fn is_simple(&self) -> Result<bool> {
        if self.order == 1 {
            return Err(Error::TrivialGroup);
        }
        Ok(self
            .conjugacy_classes()
            .iter()
            .skip(1)
            .all(|c| self.normal_closure([c.representative]).order() == self.order))
    }

    /// Direct product with `(x, y)` stored at index `x * |h| + y`.
    pub fn direct_product(&self, h: &Group, cap: usize) -> Result<Group> {
        let (a, b) = (self.order, h.order);
        let n = a.checked_mul(b).filter(|&n| n <= cap).ok_or(Error::ClosureCapExceeded { cap })?;
        let mut mul = Vec::with_capacity(n * n);
        for x1 in 0..a {
            for y1 in 0..b {
                for x2 in 0..a {
                    let x = self.mul(x1, x2) * b;
                    for y2 in 0..b {
                        mul.push((x + h.mul(y1, y2)) as u32);
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(n);
        for x in 0..a {
            for y in 0..b {
                labels.push(format!("({}, {})", self.labels[x], h.labels[y]));
            }
        }
        Group::from_table(n, mul, labels)
    }

    /// True iff every Sylow subgroup is normal, tested by counting the
    /// elements of prime-power order for each prime divisor.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.order;
        prime_factors(n).into_iter().all(|(p, e)| {
            let part = p.pow(e);
            let count = (0..n).filter(|&x| is_power_of(self.element_order(x), p)).count();
            count == part
        })
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }
}

pub(crate) fn is_power_of(mut x: usize, p: usize) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Prime factorisation as (prime, exponent) pairs, ascending.
pub fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::group_from_catalog;

    fn g(name: &str) -> Group {
        group_from_catalog(name, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn class_sizes_of_s3() {
        let s3 = g("S3");
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn cyclic_groups_have_singleton_classes() {
        let c5 = g("C5");
        assert_eq!(c5.conjugacy_classes().len(), 5);
        assert!(c5.conjugacy_classes().iter().all(|c| c.size == 1));
    }

    #[test]
    fn sl23_classes() {
        let sl = g("SL23");
        let classes = sl.conjugacy_classes();
        assert_eq!(classes.len(), 7);
        assert!(classes.iter().any(|c| c.element_order == 3 && c.size == 4));
    }

    #[test]
    fn centers() {
        assert!(g("S3").center().is_trivial());
        assert_eq!(g("C2^2xC3").center().order(), 12);
        assert_eq!(g("Q8").center().order(), 2);
    }

    #[test]
    fn quotients() {
        let s3 = g("S3");
        let a3 = s3.normal_closure([s3.conjugacy_classes()[2].representative]);
        assert_eq!(a3.order(), 3);
        let (q, map) = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(map.target_order(), 2);

        let (same, _) = s3.quotient(&Subgroup::trivial(6)).unwrap();
        assert_eq!(same.order(), 6);
        assert!(!same.is_abelian());

        let sl = g("SL23");
        let (a4, _) = sl.quotient(&sl.center()).unwrap();
        assert_eq!(a4.order(), 12);
        let sizes: Vec<usize> = a4.conjugacy_classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = g("S3");
        let t = s3.conjugacy_classes()[1].representative;
        let sub = s3.generate([t]);
        assert_eq!(s3.quotient(&sub).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn simplicity() {
        assert!(g("A5").is_simple().unwrap());
        assert!(g("C7").is_simple().unwrap());
        assert!(!g("S4").is_simple().unwrap());
        assert_eq!(Group::trivial().is_simple(), Err(Error::TrivialGroup));
    }

    #[test]
    fn direct_product_layout() {
        let c2 = g("C2");
        let c3 = g("C3");
        let p = c2.direct_product(&c3, DEFAULT_CAP).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_cyclic());
        let v = c2.direct_product(&c2, DEFAULT_CAP).unwrap();
        assert!(!v.is_cyclic() && v.is_abelian());
        for x1 in 0..2 {
            for y1 in 0..3 {
                for x2 in 0..2 {
                    for y2 in 0..3 {
                        let expected = c2.mul(x1, x2) * 3 + c3.mul(y1, y2);
                        assert_eq!(p.mul(x1 * 3 + y1, x2 * 3 + y2), expected);
                    }
                }
            }
        }
        assert_eq!(
            c2.direct_product(&c3, 5).unwrap_err(),
            Error::ClosureCapExceeded { cap: 5 }
        );
    }

    #[test]
    fn normal_closures() {
        let s3 = g("S3");
        let t = s3.conjugacy_classes()[1].representative;
        assert_eq!(s3.normal_closure([t]).order(), 6);
        assert!(s3.normal_closure([0]).is_trivial());
        let s4 = g("S4");
        let three_cycle = (0..24).find(|&x| s4.element_order(x) == 3).unwrap();
        assert_eq!(s4.normal_closure([three_cycle]).order(), 12);
    }

    #[test]
    fn nilpotency() {
        assert!(g("Q8xC3").is_nilpotent());
        assert!(g("D4").is_nilpotent());
        assert!(!g("S3").is_nilpotent());
        assert!(!g("A4").is_nilpotent());
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_factors(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_prime(61) && !is_prime(1) && !is_prime(91));
    }
}
