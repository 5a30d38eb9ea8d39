//! Möbius function of the normal subgroup lattice: the defining recursion
//! and the closed form through socle decompositions of quotients.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{Group, QuotientMap, Subgroup};
use crate::lattice::{
    enumerate_normal_subgroups, simple_factor_decomposition, socle_decomposition, NormalLattice,
    SimpleFactorDecomposition, SocleDecomposition,
};

/// `μ(X, Y)` for every comparable pair of lattice nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusTable {
    values: Vec<Vec<Option<BigInt>>>,
}

impl MoebiusTable {
    /// `None` when node `i` is not below node `j`.
    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.values[i][j].as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All defined entries as `(i, j, μ(i, j))`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.values.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter_map(move |(j, v)| v.as_ref().map(|v| (i, j, v)))
        })
    }
}

/// The defining recursion `μ(X,X) = 1`, `μ(X,Y) = -Σ_{X≤Z<Y} μ(X,Z)`.
pub fn moebius_recursive(lat: &NormalLattice) -> MoebiusTable {
    let n = lat.len();
    let mut values = vec![vec![None; n]; n];
    for i in 0..n {
        // Nodes are sorted by order, so every Z strictly between i and j has
        // a smaller index than j.
        let above: Vec<usize> = lat.up_set(i).collect();
        let mut row: Vec<Option<BigInt>> = vec![None; n];
        for &j in &above {
            let v = if j == i {
                BigInt::one()
            } else {
                let s: BigInt = above
                    .iter()
                    .take_while(|&&z| z < j)
                    .filter(|&&z| lat.leq(z, j))
                    .map(|&z| row[z].as_ref().expect("filled in index order"))
                    .sum();
                -s
            };
            row[j] = Some(v);
        }
        values[i] = row;
    }
    MoebiusTable { values }
}

/// `(-1)^{Σ s_i} Π (-1)^{a_j} p_j^{binom(a_j, 2)}` for a factored
/// direct product of simple groups.
pub fn mu_one_from_factors(factors: &SimpleFactorDecomposition) -> BigInt {
    let simple_count: u32 = factors.non_abelian.iter().map(|(_, s)| s).sum();
    let mut value = sign(simple_count as u64);
    for &(p, a) in &factors.abelian {
        value *= sign(a as u64) * BigInt::from(p).pow(binom2(a as u64) as u32);
    }
    value
}

/// `μ(1, G)` for a direct product of simple groups.
pub fn mu_one_semisimple(g: &Group) -> Result<BigInt> {
    let lat = enumerate_normal_subgroups(g);
    Ok(mu_one_from_factors(&simple_factor_decomposition(g, &lat)?))
}

fn sign(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Closed-form `μ(1, T)` inside a group whose socle decomposition is `dec`:
/// zero unless `T` lies in the socle, otherwise
/// `(-1)^c Π (-1)^{α_i} q_i^{binom(α_i, 2)}` where `T ≅ Π A_i^{α_i} × Π S_{j_k}`.
pub fn mu_from_socle(dec: Option<&SocleDecomposition>, t: &Subgroup) -> Result<BigInt> {
    if t.is_trivial() {
        return Ok(BigInt::one());
    }
    let dec = dec.ok_or_else(|| Error::InternalInconsistency("nontrivial subgroup of trivial group".into()))?;
    if !t.is_subset(&dec.socle) {
        return Ok(BigInt::zero());
    }
    let mut accounted: u64 = 1;
    let mut value = BigInt::one();
    for s in &dec.non_abelian {
        if s.is_subset(t) {
            value = -value;
            accounted *= s.order() as u64;
        } else if !s.meet(t).is_trivial() {
            return Err(Error::InternalInconsistency("subgroup cuts a non-abelian minimal normal".into()));
        }
    }
    for f in &dec.abelian {
        let part = t.meet(&f.span).order() as u64;
        let mut alpha = 0u64;
        let mut size = 1u64;
        while size < part {
            size *= f.order as u64;
            alpha += 1;
        }
        if size != part {
            return Err(Error::InternalInconsistency(format!(
                "|T ∩ S_i| = {part} is not a power of |A_i| = {}",
                f.order
            )));
        }
        accounted *= part;
        value *= sign(alpha) * BigInt::from(f.field_size).pow(binom2(alpha) as u32);
    }
    if accounted != t.order() as u64 {
        return Err(Error::InternalInconsistency(
            "subgroup of the socle is not the product of its type components".into(),
        ));
    }
    Ok(value)
}

/// Closed-form `μ(H, T)`, evaluated as `μ(1, T/H)` in `G/H`.
///
/// `dec` is the socle decomposition of `g` itself and is used directly when
/// `H` is trivial; otherwise the quotient is built and decomposed.
pub fn moebius_closed(
    g: &Group,
    lat: &NormalLattice,
    dec: Option<&SocleDecomposition>,
    h: &Subgroup,
    t: &Subgroup,
) -> Result<BigInt> {
    let hi = lat.index_of(h).ok_or(Error::NotInLattice)?;
    let ti = lat.index_of(t).ok_or(Error::NotInLattice)?;
    if !lat.leq(hi, ti) {
        return Err(Error::NotComparable);
    }
    if hi == ti {
        return Ok(BigInt::one());
    }
    if hi == 0 {
        return mu_from_socle(dec, t);
    }
    let quotient = QuotientData::new(g, h)?;
    quotient.mu_to(t)
}

/// A quotient `G/H` with its own socle decomposition.
struct QuotientData {
    map: QuotientMap,
    dec: Option<SocleDecomposition>,
}

impl QuotientData {
    fn new(g: &Group, h: &Subgroup) -> Result<Self> {
        let (q, map) = g.quotient(h)?;
        let dec = if q.order() > 1 {
            let qlat = enumerate_normal_subgroups(&q);
            Some(socle_decomposition(&q, &qlat)?)
        } else {
            None
        };
        Ok(QuotientData { map, dec })
    }

    fn mu_to(&self, t: &Subgroup) -> Result<BigInt> {
        mu_from_socle(self.dec.as_ref(), &self.map.map_subgroup(t))
    }
}

/// Closed-form values for every comparable pair, building each quotient
/// `G/H` once.
pub fn moebius_closed_table(g: &Group, lat: &NormalLattice) -> Result<MoebiusTable> {
    let n = lat.len();
    let mut values = vec![vec![None; n]; n];
    let mut cache: HashMap<usize, QuotientData> = HashMap::new();
    for (i, row) in values.iter_mut().enumerate() {
        for j in lat.up_set(i) {
            let v = if i == j {
                BigInt::one()
            } else {
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(i) {
                    e.insert(QuotientData::new(g, lat.node(i))?);
                }
                cache[&i].mu_to(lat.node(j))?
            };
            row[j] = Some(v);
        }
    }
    Ok(MoebiusTable { values })
}

/// Number of `k`-dimensional subspaces of `F_q^d`:
/// `Π_{i<k} (q^{d-i} - 1) / (q^{i+1} - 1)`, exactly.
pub fn gaussian_binomial(d: u32, k: u32, q: u64) -> Result<BigInt> {
    if k > d {
        return Err(Error::DomainError(format!("k = {k} exceeds d = {d}")));
    }
    if q < 2 {
        return Err(Error::DomainError(format!("q = {q} must be at least 2")));
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow(d - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    Ok(num / den)
}
