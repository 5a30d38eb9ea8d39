//! Irreducible complex characters by Dixon's method, character kernels,
//! vertical cuts and the faithful-character orthogonality sums.
//!
//! The class-multiplication matrices are diagonalized simultaneously over a
//! prime field `F_l` with `exponent(G) | l - 1`. Each common eigenvector
//! gives a character mod `l`; values are lifted exactly by recovering, for
//! every element `g`, the multiplicity of each root of unity among the
//! eigenvalues of `g` from the values on the powers of `g`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{prime_factors, ConjClass, Group, Subgroup};
use crate::lattice::{NormalLattice, SocleDecomposition};
use crate::modp::{inv_mod, nullspace, pow_mod, solve_in_span, Matrix};

/// Primes used by the Dixon reduction stay below this bound.
pub const PRIME_BOUND: u64 = 1 << 16;

/// Tolerance for deciding `χ(c) = χ(1)` when reading off kernels.
pub const KERNEL_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Character {
    pub degree: u64,
    /// `χ(c)` for each class.
    pub values: Vec<Complex64>,
    /// For each class with representative `g` of order `o`, the number of
    /// eigenvalues of `g` equal to `exp(2πik/o)`, for `k = 0..o`.
    pub multiplicities: Vec<Vec<u64>>,
    pub kernel: Subgroup,
}

impl Character {
    pub fn is_faithful(&self) -> bool {
        self.kernel.is_trivial()
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group_order: usize,
    pub classes: Vec<ConjClass>,
    pub characters: Vec<Character>,
    /// The prime the table was computed modulo.
    pub prime: u64,
}

impl CharacterTable {
    pub fn value(&self, chi: usize, class: usize) -> Complex64 {
        self.characters[chi].values[class]
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.degree).collect()
    }

    /// `Σ χ(1)²` over the faithful irreducible characters.
    pub fn faithful_degree_square_sum(&self) -> u64 {
        self.characters.iter().filter(|c| c.is_faithful()).map(|c| c.degree * c.degree).sum()
    }

    /// Largest deviation from row and column orthogonality.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.group_order as f64;
        let r = self.classes.len();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let row: Complex64 = (0..r)
                    .map(|c| self.value(i, c) * self.value(j, c).conj() * self.classes[c].size as f64)
                    .sum();
                let expected = if i == j { n } else { 0.0 };
                worst = worst.max((row - expected).norm());
                let col: Complex64 = (0..r).map(|x| self.value(x, i) * self.value(x, j).conj()).sum();
                let expected = if i == j { n / self.classes[i].size as f64 } else { 0.0 };
                worst = worst.max((col - expected).norm());
            }
        }
        worst
    }
}

/// Smallest prime `l ≡ 1 (mod exponent)` with `l > 2·sqrt(order)` that is at
/// least `from`.
fn dixon_prime(exponent: u64, order: u64, from: u64) -> Option<u64> {
    let mut l = exponent + 1;
    while l < PRIME_BOUND {
        if l >= from && l * l > 4 * order && crate::group::is_prime(l) {
            return Some(l);
        }
        l += exponent;
    }
    None
}

fn primitive_root(l: u64) -> u64 {
    let factors = prime_factors((l - 1) as usize);
    (2..l)
        .find(|&g| factors.iter().all(|&(p, _)| pow_mod(g, (l - 1) / p as u64, l) != 1))
        .expect("prime fields have primitive roots")
}

/// `coeffs[i][j][k]`: number of pairs `(x, y)` in `C_i × C_j` with `xy`
/// equal to the representative of `C_k`.
fn class_coefficients(g: &Group) -> Vec<Vec<Vec<u64>>> {
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut coeffs = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck.representative;
        for (i, ci) in classes.iter().enumerate() {
            for x in ci.members.ones() {
                let y = g.mul(g.inv(x), z);
                coeffs[i][g.class_of(y)][k] += 1;
            }
        }
    }
    coeffs
}

/// Computes the complete character table of `g`.
pub fn character_table(g: &Group, cap: usize) -> Result<CharacterTable> {
    if g.order() > cap {
        return Err(Error::CapExceeded { order: g.order(), cap });
    }
    let exponent = g.exponent() as u64;
    let coeffs = class_coefficients(g);
    let mut from = 0;
    // A prime can fail to separate the characters only through a bug or an
    // unlucky reduction; move on to the next admissible prime in that case.
    let mut last_err = None;
    while let Some(l) = dixon_prime(exponent, g.order() as u64, from) {
        match table_mod(g, &coeffs, l) {
            Ok(table) => return Ok(table),
            Err(e @ Error::KernelNotNormal) => return Err(e),
            Err(e) => last_err = Some(e),
        }
        from = l + 1;
    }
    Err(last_err.unwrap_or(Error::PrimeSearchFailed { exponent, bound: PRIME_BOUND }))
}

/// Splits `F_l^r` into common eigenlines of the class matrices.
fn common_eigenvectors(coeffs: &[Vec<Vec<u64>>], l: u64) -> Result<Vec<Vec<u64>>> {
    let r = coeffs.len();
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for m in coeffs.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // Image of each basis vector under the class matrix, in basis
            // coordinates.
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| (0..r).map(|j| (0..r).fold(0, |acc, k| (acc + m[j][k] * v[k]) % l)).collect())
                .collect();
            let cols = solve_in_span(&basis, &images, l)
                .ok_or_else(|| Error::InternalInconsistency("eigenspace is not invariant".into()))?;
            let d = basis.len();
            let mut found = 0;
            for lambda in 0..l {
                let shifted: Matrix = (0..d)
                    .map(|row| {
                        (0..d)
                            .map(|col| {
                                let x = cols[col][row];
                                if row == col {
                                    (x + l - lambda) % l
                                } else {
                                    x
                                }
                            })
                            .collect()
                    })
                    .collect();
                let kernel = nullspace(shifted, d, l);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                next.push(
                    kernel
                        .iter()
                        .map(|x| {
                            (0..r)
                                .map(|i| basis.iter().zip(x).fold(0, |acc, (b, &c)| (acc + b[i] * c) % l))
                                .collect()
                        })
                        .collect(),
                );
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(Error::InternalInconsistency("class matrix is not diagonalizable".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::InternalInconsistency("characters not separated modulo the prime".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().expect("one vector")).collect())
}

fn table_mod(g: &Group, coeffs: &[Vec<Vec<u64>>], l: u64) -> Result<CharacterTable> {
    let n = g.order() as u64;
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let exponent = g.exponent() as u64;
    let zeta = pow_mod(primitive_root(l), (l - 1) / exponent, l);
    let sizes: Vec<u64> = classes.iter().map(|c| c.size as u64 % l).collect();
    let inverse_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inv(c.representative))).collect();
    // power_classes[c][t]: class of rep_c^t.
    let power_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut x = g.identity();
            (0..c.element_order)
                .map(|_| {
                    let k = g.class_of(x);
                    x = g.mul(x, c.representative);
                    k
                })
                .collect()
        })
        .collect();

    let mut characters = Vec::with_capacity(r);
    for w in common_eigenvectors(coeffs, l)? {
        if w[0] == 0 {
            return Err(Error::InternalInconsistency("eigenvector vanishes at the identity".into()));
        }
        let s = inv_mod(w[0], l);
        let omega: Vec<u64> = w.iter().map(|x| x * s % l).collect();
        let norm = (0..r).fold(0, |acc, j| (acc + omega[j] * omega[inverse_class[j]] % l * inv_mod(sizes[j], l)) % l);
        if norm == 0 {
            return Err(Error::InternalInconsistency("zero norm".into()));
        }
        let square = n % l * inv_mod(norm, l) % l;
        let degree = (1..=n)
            .take_while(|f| f * f <= n)
            .find(|f| f * f % l == square)
            .ok_or_else(|| Error::InternalInconsistency("no integral degree".into()))?;
        let theta: Vec<u64> = (0..r).map(|j| omega[j] * degree % l * inv_mod(sizes[j], l) % l).collect();

        let mut values = Vec::with_capacity(r);
        let mut multiplicities = Vec::with_capacity(r);
        for (c, class) in classes.iter().enumerate() {
            let o = class.element_order as u64;
            let root = pow_mod(zeta, exponent / o, l);
            let o_inv = inv_mod(o % l, l);
            let mut mult = Vec::with_capacity(o as usize);
            for k in 0..o {
                let step = pow_mod(root, (o - k % o) % o, l);
                let mut acc = 0;
                let mut twist = 1;
                for t in 0..o as usize {
                    acc = (acc + theta[power_classes[c][t]] * twist) % l;
                    twist = twist * step % l;
                }
                mult.push(acc * o_inv % l);
            }
            if mult.iter().sum::<u64>() != degree {
                return Err(Error::InternalInconsistency("eigenvalue multiplicities do not sum to the degree".into()));
            }
            let value = mult
                .iter()
                .enumerate()
                .map(|(k, &m)| Complex64::from_polar(m as f64, std::f64::consts::TAU * k as f64 / o as f64))
                .sum();
            values.push(value);
            multiplicities.push(mult);
        }
        let kernel = kernel_from_values(g, classes, &values, degree)?;
        characters.push(Character {
            degree,
            values,
            multiplicities,
            kernel,
        });
    }
    characters.sort_by(|a, b| {
        let principal = |c: &Character| c.degree == 1 && c.multiplicities.iter().all(|m| m[0] == 1);
        (!principal(a), a.degree, &a.multiplicities).cmp(&(!principal(b), b.degree, &b.multiplicities))
    });
    Ok(CharacterTable {
        group_order: g.order(),
        classes: classes.to_vec(),
        characters,
        prime: l,
    })
}

fn kernel_from_values(g: &Group, classes: &[ConjClass], values: &[Complex64], degree: u64) -> Result<Subgroup> {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for (class, value) in classes.iter().zip(values) {
        if (value - Complex64::new(degree as f64, 0.0)).norm() < KERNEL_TOLERANCE {
            bits.union_with(&class.members);
        }
    }
    if !g.is_subgroup(&bits) {
        return Err(Error::KernelNotNormal);
    }
    Ok(Subgroup::from_bits(bits))
}

/// Kernel of character `i`, checked to be a node of `lat`.
pub fn character_kernel(ct: &CharacterTable, lat: &NormalLattice, i: usize) -> Result<Subgroup> {
    let kernel = &ct.characters[i].kernel;
    if lat.index_of(kernel).is_none() {
        return Err(Error::KernelNotNormal);
    }
    Ok(kernel.clone())
}

/// Smallest `d` such that some `d` nonidentity columns, together with the
/// identity column, leave no non-principal row constant.
pub fn vertical_cut_number(ct: &CharacterTable) -> Result<usize> {
    let r = ct.classes.len();
    if ct.group_order == 1 {
        return Err(Error::TrivialGroup);
    }
    // equal[i]: columns on which row i takes the value χ_i(1).
    let equal: Vec<FixedBitSet> = ct.characters[1..]
        .iter()
        .map(|chi| {
            let one = chi.values[0];
            let mut bits = FixedBitSet::with_capacity(r);
            for (c, v) in chi.values.iter().enumerate() {
                bits.set(c, (v - one).norm() < KERNEL_TOLERANCE);
            }
            bits
        })
        .collect();
    let rows: Vec<usize> = (0..equal.len()).collect();
    for d in 1..r {
        if cut_exists(&equal, &rows, d, 1, r) {
            return Ok(d);
        }
    }
    Err(Error::InternalInconsistency("no vertical cut separates the rows".into()))
}

fn cut_exists(equal: &[FixedBitSet], constant_rows: &[usize], d: usize, start: usize, r: usize) -> bool {
    if constant_rows.is_empty() {
        return true;
    }
    if d == 0 {
        return false;
    }
    (start..r).any(|c| {
        let remaining: Vec<usize> = constant_rows.iter().copied().filter(|&i| equal[i].contains(c)).collect();
        remaining.len() < constant_rows.len() && cut_exists(equal, &remaining, d - 1, c + 1, r)
    })
}

/// `Σ χ(a)·conj(χ(b))` over the characters whose kernel is exactly `n`.
pub fn kernel_restricted_sum(
    ct: &CharacterTable,
    lat: &NormalLattice,
    a: usize,
    b: usize,
    n: &Subgroup,
) -> Result<Complex64> {
    if lat.index_of(n).is_none() {
        return Err(Error::NotInLattice);
    }
    Ok(pair_sum(ct, a, b, |chi| chi.kernel == *n))
}

/// `Σ χ(a)·conj(χ(b))` over the faithful characters.
pub fn faithful_pair_sum(ct: &CharacterTable, a: usize, b: usize) -> Complex64 {
    pair_sum(ct, a, b, Character::is_faithful)
}

fn pair_sum(ct: &CharacterTable, a: usize, b: usize, keep: impl Fn(&Character) -> bool) -> Complex64 {
    ct.characters
        .iter()
        .filter(|chi| keep(chi))
        .map(|chi| chi.values[a] * chi.values[b].conj())
        .sum()
}

/// Whether `|C·S| = |C|·|S|`.
pub fn class_extends_socle(g: &Group, c: &ConjClass, s: &Subgroup) -> bool {
    let mut product = FixedBitSet::with_capacity(g.order());
    for x in c.members.ones() {
        for y in s.elements() {
            product.insert(g.mul(x, y));
        }
    }
    product.count_ones(..) == c.size * s.order()
}

/// Whether classes `a` and `b` have different images in `G/S`.
pub fn distinct_modulo(g: &Group, a: &ConjClass, b: &ConjClass, s: &Subgroup) -> bool {
    // a·S meets b iff the images coincide as classes of G/S.
    let x = a.representative;
    !s.elements().any(|y| b.members.contains(g.mul(x, y)))
}

/// `∏_{j=0}^{d-1} (1 - q^j/|A|)`.
pub fn abelian_factor_product(a_order: u64, q: u64, d: u32) -> BigRational {
    let a = BigInt::from(a_order);
    let q = BigInt::from(q);
    (0..d)
        .map(|j| BigRational::one() - BigRational::new(q.pow(j), a.clone()))
        .product()
}

/// `Σ_{k=0}^{d} |A|^{-k} (-1)^k Q(d, k)` with
/// `Q(m, k) = (q^m - 1)...(q^m - q^{k-1}) / ((q^k - 1)...(q - 1))`.
/// Equals [`abelian_factor_product`].
pub fn abelian_factor_series(a_order: u64, q: u64, d: u32) -> BigRational {
    let a = BigInt::from(a_order);
    (0..=d)
        .map(|k| {
            let term = BigRational::new(q_ratio(q, d, k), a.pow(k));
            if k % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// `Q(m, k) = ∏_{i<k} (q^m - q^i) / ∏_{i=1}^{k} (q^i - 1)`.
pub fn q_ratio(q: u64, m: u32, k: u32) -> BigInt {
    let q = BigInt::from(q);
    let num: BigInt = (0..k).map(|i| q.pow(m) - q.pow(i)).product();
    let den: BigInt = (1..=k).map(|i| q.pow(i) - 1).product();
    num / den
}

/// `(|G|/|C|) ∏_i ∏_{j<d_i} (1 - q_i^j/|A_i|) ∏_k (1 - 1/|S_k|)`, the sum of
/// `|χ(C)|²` over the faithful characters.
pub fn theorem5_product(g: &Group, dec: &SocleDecomposition, c: &ConjClass) -> Result<BigRational> {
    if !class_extends_socle(g, c, &dec.socle) {
        return Err(Error::PreconditionViolated("|CS| != |C||S|".into()));
    }
    let mut value = BigRational::new(BigInt::from(g.order()), BigInt::from(c.size));
    for f in &dec.abelian {
        value *= abelian_factor_product(f.order as u64, f.field_size, f.multiplicity);
    }
    for s in &dec.non_abelian {
        value *= BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(s.order()));
    }
    Ok(value)
}

/// Whether a faithful irreducible character exists, read off the socle:
/// it fails exactly when `|A_i| = q_i^j` for some `i` and `0 ≤ j < d_i`.
pub fn has_faithful_irrep_structural(dec: &SocleDecomposition) -> bool {
    !dec.abelian.iter().any(|f| {
        (0..f.multiplicity).any(|j| BigInt::from(f.field_size).pow(j) == BigInt::from(f.order))
    })
}

/// Real approximation of a rational, for comparison with table sums.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
