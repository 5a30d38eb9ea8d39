//! Generation of a group by conjugacy classes: the class generating number
//! and counts of generating tuples of classes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{is_prime, Group, Subgroup};
use crate::lattice::{radical_index, simple_factor_decomposition, socle_decomposition, enumerate_normal_subgroups, NormalLattice};
use crate::moebius::{gaussian_binomial, moebius_closed};

/// Default bound on the size of the subset-counting table used by
/// [`f_k_bruteforce`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// `x (x-1) ... (x-m+1)`.
pub fn falling_factorial(x: &BigInt, m: usize) -> BigInt {
    (0..m).map(|i| x - BigInt::from(i)).product()
}

/// Number of conjugacy classes of `g` inside the normal subgroup `h`.
pub fn class_count_in(g: &Group, h: &Subgroup) -> Result<usize> {
    if !g.is_normal(h) {
        return Err(Error::NotNormal);
    }
    Ok(g.conjugacy_classes().iter().filter(|c| h.contains(c.representative)).count())
}

/// Lattice index of the normal closure of each conjugacy class.
fn class_closures(g: &Group, lat: &NormalLattice) -> Vec<usize> {
    g.conjugacy_classes()
        .iter()
        .map(|c| lat.index_of(&g.normal_closure([c.representative])).expect("closure is a node"))
        .collect()
}

/// Smallest k such that some k nonidentity classes generate `g`, by
/// searching subsets in increasing size.
pub fn class_generating_number_bruteforce(g: &Group, lat: &NormalLattice) -> Result<usize> {
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    let closures = class_closures(g, lat);
    let nontrivial = &closures[1..];
    let top = lat.top();
    for k in 1..=nontrivial.len() {
        if subset_reaches(lat, nontrivial, k, 0, 0, top) {
            return Ok(k);
        }
    }
    Err(Error::InternalInconsistency("the classes together do not generate the group".into()))
}

fn subset_reaches(lat: &NormalLattice, closures: &[usize], k: usize, start: usize, acc: usize, top: usize) -> bool {
    if k == 0 {
        return acc == top;
    }
    (start..closures.len()).any(|i| {
        let next = lat.join_index(acc, closures[i]);
        // A class already inside the running join adds nothing.
        next != acc && subset_reaches(lat, closures, k - 1, i + 1, next, top)
    })
}

/// Class generating number read off `G/R`: the largest exponent among the
/// elementary abelian factors, or 1 if there are none.
pub fn class_generating_number_structural(g: &Group, lat: &NormalLattice) -> Result<usize> {
    let r = radical_index(lat)?;
    let (q, _) = g.quotient(lat.node(r))?;
    let qlat = enumerate_normal_subgroups(&q);
    let factors = simple_factor_decomposition(&q, &qlat)?;
    Ok(factors.abelian.iter().map(|&(_, a)| a as usize).max().unwrap_or(1).max(1))
}

/// `counts[node][k]`: number of k-element sets of distinct classes whose
/// joint normal closure is that lattice node.
///
/// Every subset of classes is counted exactly once: classes are scanned in
/// order and each partial subset is tracked by its joint closure and size.
pub fn subset_closure_counts(g: &Group, lat: &NormalLattice, budget: u64) -> Result<Vec<Vec<BigInt>>> {
    let closures = class_closures(g, lat);
    let m = closures.len();
    let work = (m as u64).saturating_mul(lat.len() as u64).saturating_mul(m as u64 + 1);
    if work > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut counts = vec![vec![BigInt::zero(); m + 1]; lat.len()];
    counts[0][0] = BigInt::one();
    for (seen, &c) in closures.iter().enumerate() {
        let mut next = counts.clone();
        for (node, row) in counts.iter().enumerate() {
            let joined = lat.join_index(node, c);
            for size in 0..=seen {
                if !row[size].is_zero() {
                    next[joined][size + 1] += &row[size];
                }
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// Ordered k-tuples of distinct classes of `g` whose joint normal closure
/// is exactly `h`.
pub fn f_k_bruteforce(g: &Group, lat: &NormalLattice, h: &Subgroup, k: usize, budget: u64) -> Result<BigInt> {
    let hi = lat.index_of(h).ok_or(Error::NotNormal)?;
    let counts = subset_closure_counts(g, lat, budget)?;
    Ok(counts[hi].get(k).map_or_else(BigInt::zero, |c| c * factorial(k)))
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// Normal subgroups containing the radical (all nodes for the trivial group).
pub fn major_subgroups(lat: &NormalLattice) -> Vec<usize> {
    match radical_index(lat) {
        Ok(r) => lat.up_set(r).collect(),
        Err(_) => vec![lat.top()],
    }
}

/// The nonzero terms `(‖T‖, μ(T, G))` of the inversion sum, one per major
/// subgroup `T`, with closed-form μ.
pub fn inversion_terms(g: &Group, lat: &NormalLattice) -> Result<Vec<(usize, BigInt)>> {
    let dec = if g.order() > 1 {
        Some(socle_decomposition(g, lat)?)
    } else {
        None
    };
    let whole = lat.node(lat.top());
    let mut terms = Vec::new();
    for t in major_subgroups(lat) {
        let mu = moebius_closed(g, lat, dec.as_ref(), lat.node(t), whole)?;
        if !mu.is_zero() {
            terms.push((class_count_in(g, lat.node(t))?, mu));
        }
    }
    Ok(terms)
}

/// Evaluates `Σ [‖T‖]_k μ(T, G)` from precomputed terms.
pub fn evaluate_inversion(terms: &[(usize, BigInt)], k: usize) -> BigInt {
    terms
        .iter()
        .map(|(classes, mu)| falling_factorial(&BigInt::from(*classes), k) * mu)
        .sum()
}

/// Generating k-tuples of classes by Möbius inversion:
/// `Σ_T [‖T‖]_k μ(T, G)` over the major subgroups, with closed-form μ.
pub fn f_k_inversion(g: &Group, lat: &NormalLattice, k: usize) -> Result<BigInt> {
    Ok(evaluate_inversion(&inversion_terms(g, lat)?, k))
}

/// Ordered k-tuples generating an abelian p-group of order `p^n` whose
/// Frattini quotient has rank `d`:
/// `Σ_{i=0}^{d} [p^{n-d+i}]_k · [d choose i]_p · (-1)^{d-i} p^{binom(d-i,2)}`.
pub fn abelian_pgroup_tuple_count(p: u64, n: u32, d: u32, k: usize) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::DomainError(format!("{p} is not prime")));
    }
    if d < 1 || d > n {
        return Err(Error::DomainError(format!("need 1 <= d <= n, got d = {d}, n = {n}")));
    }
    let pb = BigInt::from(p);
    let mut total = BigInt::zero();
    for i in 0..=d {
        let j = d - i;
        let mut term = falling_factorial(&pb.pow(n - d + i), k) * gaussian_binomial(d, i, p)?;
        term *= pb.pow(j * j.saturating_sub(1) / 2);
        if j % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct MajorSubgroup {
    pub node: usize,
    pub order: usize,
    pub class_count: usize,
}

/// Class generating number, generating-tuple counts and major subgroups.
#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub class_generating_number: usize,
    pub fk: BTreeMap<usize, BigInt>,
    pub major_subgroups: Vec<MajorSubgroup>,
}

/// Builds a report with `f_k(G)` for `k = 0..=max_k` (by inversion).
pub fn generation_report(g: &Group, lat: &NormalLattice, max_k: usize) -> Result<GenerationReport> {
    let class_generating_number = class_generating_number_structural(g, lat)?;
    let terms = inversion_terms(g, lat)?;
    let fk = (0..=max_k).map(|k| (k, evaluate_inversion(&terms, k))).collect();
    let major_subgroups = major_subgroups(lat)
        .into_iter()
        .map(|t| {
            Ok(MajorSubgroup {
                node: t,
                order: lat.node(t).order(),
                class_count: class_count_in(g, lat.node(t))?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GenerationReport {
        class_generating_number,
        fk,
        major_subgroups,
    })
}
