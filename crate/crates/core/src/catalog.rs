//! Named groups.
//!
//! Grammar: `Cn` (cyclic), `Sn`, `An`, `Dn` (dihedral of order 2n), `Q8`,
//! `SL23`, any factor raised to a power with `^d` (so `Cp^d` is elementary
//! abelian), and `x`-separated direct products such as `C2^2xS3`. A spec
//! starting with `perm:` is read as `;`-separated permutation generators,
//! e.g. `perm:(1 2 3)(4 5);(1 2)`.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{group_from_permutations, parse_generators, Permutation};

/// Builds a group from a catalog name or a `perm:` generator list.
pub fn group_from_catalog(name: &str, cap: usize) -> Result<Group> {
    let name = name.trim();
    if let Some(gens) = name.strip_prefix("perm:") {
        return group_from_permutations(&parse_generators(gens)?, cap);
    }
    if name.is_empty() {
        return Err(Error::UnknownName(name.into()));
    }
    let mut product: Option<Group> = None;
    for factor in name.split('x') {
        let g = parse_power(factor, name, cap)?;
        product = Some(match product {
            None => g,
            Some(acc) => acc.direct_product(&g, cap)?,
        });
    }
    Ok(product.expect("at least one factor"))
}

fn parse_power(factor: &str, full: &str, cap: usize) -> Result<Group> {
    let unknown = || Error::UnknownName(full.to_string());
    let (base, power) = match factor.split_once('^') {
        Some((b, p)) => (b, p.parse::<u32>().map_err(|_| unknown())?),
        None => (factor, 1),
    };
    if power == 0 {
        return Err(unknown());
    }
    let g = parse_base(base).ok_or_else(unknown)?(cap)?;
    let mut acc = g.clone();
    for _ in 1..power {
        acc = acc.direct_product(&g, cap)?;
    }
    Ok(acc)
}

type Builder = Box<dyn Fn(usize) -> Result<Group>>;

fn parse_base(base: &str) -> Option<Builder> {
    match base {
        "Q8" => return Some(Box::new(|_| quaternion_group())),
        "SL23" => return Some(Box::new(|_| sl23())),
        _ => {}
    }
    let kind = base.chars().next()?;
    let n: usize = base[kind.len_utf8()..].parse().ok()?;
    if n == 0 {
        return None;
    }
    let gens: Vec<Vec<Vec<usize>>> = match kind {
        'C' => vec![cycle(1, n)],
        'S' if n >= 3 => vec![cycle(1, n), vec![vec![1, 2]]],
        'S' => vec![cycle(1, n)],
        'A' if n >= 3 => (3..=n).map(|k| vec![vec![1, 2, k]]).collect(),
        'A' => vec![],
        'D' if n == 1 => vec![vec![vec![1, 2]]],
        'D' if n == 2 => vec![vec![vec![1, 2]], vec![vec![3, 4]]],
        'D' => {
            let reflection = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
            vec![cycle(1, n), reflection]
        }
        _ => return None,
    };
    Some(Box::new(move |cap| {
        let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(0);
        let perms = gens
            .iter()
            .map(|c| Permutation::from_cycles(c, degree))
            .collect::<Result<Vec<_>>>()?;
        group_from_permutations(&perms, cap)
    }))
}

fn cycle(from: usize, to: usize) -> Vec<Vec<usize>> {
    if to > from {
        vec![(from..=to).collect()]
    } else {
        vec![]
    }
}

/// Q8 as `{±1, ±i, ±j, ±k}` in that order.
pub fn quaternion_group() -> Result<Group> {
    // (sign, unit) with unit 0..4 = 1, i, j, k.
    let units = ["1", "i", "j", "k"];
    let elems: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let index = |(neg, u): (bool, usize)| 2 * u + neg as usize;
    let mut mul = Vec::with_capacity(64);
    for &(na, ua) in &elems {
        for &(nb, ub) in &elems {
            let (nu, u) = unit_mul(ua, ub);
            mul.push(index((na ^ nb ^ nu, u)) as u32);
        }
    }
    let labels = elems
        .iter()
        .map(|&(neg, u)| format!("{}{}", if neg { "-" } else { "" }, units[u]))
        .collect();
    Group::from_table(8, mul, labels)
}

/// SL(2,3): all 2x2 matrices over F_3 of determinant 1, multiplied out once
/// and then kept only as a table. Labels are `[[a,b],[c,d]]` with entries
/// in `0..3`.
pub fn sl23() -> Result<Group> {
    type Mat = [u8; 4];
    let mut mats: Vec<Mat> = vec![[1, 0, 0, 1]];
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    let det = (a * d + 3 * 3 - (b * c) % 3) % 3;
                    let m = [a, b, c, d];
                    if det == 1 && m != [1, 0, 0, 1] {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let mat_mul = |x: &Mat, y: &Mat| -> Mat {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    let n = mats.len();
    let mut mul = Vec::with_capacity(n * n);
    for x in &mats {
        for y in &mats {
            let z = mat_mul(x, y);
            mul.push(mats.iter().position(|m| *m == z).expect("closed under product") as u32);
        }
    }
    let labels = mats
        .iter()
        .map(|m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]))
        .collect();
    Group::from_table(n, mul, labels)
}

/// The groups exercised by `--verify` and the acceptance suite: orders up
/// to 200 covering cyclic, elementary abelian, dihedral, quaternion,
/// symmetric, alternating, SL(2,3) and mixed direct products.
pub const STANDARD_CATALOG: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C12", "C2^2", "C2^3", "C2^4", "C3^2", "C5^2",
    "C2xC4", "C2^3xC3", "C2^2xC3^2", "S3", "S4", "A4", "A5", "D4", "D5", "D6", "Q8", "SL23",
    "S3xC3", "S3xS3", "S3xC2^2", "A4xC2", "A4xC3", "Q8xC2", "Q8xC3", "D4xC3", "S4xC2", "S4xC3",
    "SL23xC2", "A5xC2", "A5xC3", "A4xA4", "S5", "D4xD4", "C2xQ8xC3",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn named_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C2^3", 8),
            ("SL23", 24),
            ("S4xC3", 72),
            ("D4", 8),
            ("D1", 2),
            ("D2", 4),
            ("A5", 60),
            ("A2", 1),
            ("S1", 1),
            ("Q8", 8),
            ("C2^2xS3", 24),
            ("perm:(1 2 3)(4 5);(1 2)", 12),
        ] {
            let g = group_from_catalog(name, DEFAULT_CAP).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn elementary_abelian_power() {
        let g = group_from_catalog("C2^3", DEFAULT_CAP).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn unknown_names() {
        for bad in ["", "Z5", "C", "C0", "Q9", "S3x", "C2^x", "C2^0"] {
            assert!(
                matches!(group_from_catalog(bad, DEFAULT_CAP), Err(Error::UnknownName(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn fixed_tables_satisfy_axioms() {
        let q8 = quaternion_group().unwrap();
        assert!(q8.check_axioms());
        assert!(!q8.is_abelian());
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 4).count(), 6);
        let sl = sl23().unwrap();
        assert_eq!(sl.order(), 24);
        assert!(sl.check_axioms());
        assert_eq!(sl.label(0), "[[1,0],[0,1]]");
    }

    #[test]
    fn catalog_is_well_formed() {
        assert!(STANDARD_CATALOG.len() >= 25);
        for name in STANDARD_CATALOG {
            let g = group_from_catalog(name, DEFAULT_CAP).unwrap();
            assert!(g.order() <= 200, "{name}");
        }
    }
}
