//! Permutations in disjoint-cycle notation and permutation-group closure.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;

/// A permutation of `{0..degree}` stored as its image vector. Input and
/// output use 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 0-based images; fails unless the map is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// From 1-based disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!("point {p} out of range 1..={degree}")));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated")));
                }
                touched[p - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` then `other`: the image of x is `other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses one permutation such as `(1 2 3)(4 5)` into 1-based cycles.
/// Commas are accepted as separators inside a cycle.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::InvalidPermutation(format!("cannot parse `{text}`"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let cycle = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses `;`-separated generators. The degree is the largest point used.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>> {
    let parsed = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_cycles)
        .collect::<Result<Vec<_>>>()?;
    let degree = parsed.iter().flatten().flatten().copied().max().unwrap_or(0);
    parsed.iter().map(|c| Permutation::from_cycles(c, degree)).collect()
}

/// Closure of the generators under composition, as a Cayley table.
/// Element 0 is the identity; labels are cycle notation.
pub fn group_from_permutations(generators: &[Permutation], cap: usize) -> Result<Group> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = generators.iter().map(|p| p.extended(degree)).collect();

    let mut index: HashMap<Permutation, u32> = HashMap::new();
    let mut elements = vec![Permutation::identity(degree)];
    index.insert(elements[0].clone(), 0);
    let mut i = 0;
    while i < elements.len() {
        for s in &gens {
            let y = elements[i].then(s);
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
        }
        i += 1;
    }

    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    let mut scratch = Permutation::identity(degree);
    for a in &elements {
        for b in &elements {
            for (dst, &x) in scratch.images.iter_mut().zip(&a.images) {
                *dst = b.images[x as usize];
            }
            mul.push(index[&scratch]);
        }
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    Group::from_table(n, mul, labels)
}
