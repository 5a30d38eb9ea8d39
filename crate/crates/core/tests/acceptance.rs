//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use normlat::catalog::{group_from_catalog, STANDARD_CATALOG};
use normlat::chartable::{
    character_table, class_extends_socle, distinct_modulo, faithful_pair_sum, has_faithful_irrep_structural,
    rational_to_f64, theorem5_product, vertical_cut_number,
};
use normlat::generation::{
    abelian_pgroup_tuple_count, class_generating_number_bruteforce, class_generating_number_structural,
    f_k_bruteforce, f_k_inversion, DEFAULT_BUDGET,
};
use normlat::group::DEFAULT_CAP;
use normlat::lattice::{
    enumerate_normal_subgroups, is_product_of_simples, minimal_normal_subgroups, radical, socle_decomposition,
};
use normlat::moebius::{gaussian_binomial, moebius_closed_table, moebius_recursive};
use normlat::{Group, NormalLattice, Subgroup};

const TOLERANCE: f64 = 1e-8;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn from(problems: Vec<String>, summary: String) -> Self {
        let ok = problems.is_empty();
        let detail = if ok {
            summary
        } else {
            let shown: Vec<&str> = problems.iter().take(5).map(String::as_str).collect();
            format!("{} problem(s): {}", problems.len(), shown.join("; "))
        };
        Outcome { ok, detail }
    }
}

fn load(name: &str) -> (Group, NormalLattice) {
    let g = group_from_catalog(name, DEFAULT_CAP).expect("catalog group");
    let lat = enumerate_normal_subgroups(&g);
    (g, lat)
}

fn catalog() -> Vec<(&'static str, Group, NormalLattice)> {
    STANDARD_CATALOG
        .iter()
        .map(|&name| {
            let (g, lat) = load(name);
            (name, g, lat)
        })
        .collect()
}

fn sl23_reproduction() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let (g, lat) = load("SL23");
    let minimal = minimal_normal_subgroups(&lat).unwrap();
    let dec = socle_decomposition(&g, &lat).unwrap();
    if minimal.len() != 1 || dec.socle.order() != 2 {
        problems.push(format!("socle order {} from {} minimal normals", dec.socle.order(), minimal.len()));
    }
    let abelian: Vec<(u32, u64)> = dec.abelian.iter().map(|f| (f.multiplicity, f.field_size)).collect();
    if dec.a() != 1 || dec.b() != 0 || abelian != [(1, 2)] {
        problems.push(format!("a={} b={} (d,q)={abelian:?}", dec.a(), dec.b()));
    }
    let ct = character_table(&g, DEFAULT_CAP).unwrap();
    let faithful: Vec<u64> = ct.characters.iter().filter(|c| c.is_faithful()).map(|c| c.degree).collect();
    let sum = ct.faithful_degree_square_sum();
    if faithful != [2, 2, 2] || sum != 12 {
        problems.push(format!("faithful degrees {faithful:?}, sum of squares {sum}"));
    }
    if theorem5_product(&g, &dec, &ct.classes[0]).unwrap() != BigRational::from_integer(12.into()) {
        problems.push("product at the identity class is not 12".into());
    }
    match ct.classes.iter().find(|c| c.element_order == 3 && c.size == 4) {
        Some(c) => {
            if !class_extends_socle(&g, c, &dec.socle) || !sum.is_multiple_of(c.size as u64) {
                problems.push("order-3 class of size 4 fails |CS| = |C||S| or 4 | 12".into());
            }
        }
        None => problems.push("no order-3 class of size 4".into()),
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        problems.push(format!("took {elapsed:?}"));
    }
    Outcome::from(problems, format!("socle 2, a=1 b=0 d=1 q=2, 12 = 2²+2²+2², 4 | 12 in {elapsed:.2?}"))
}

fn moebius_equivalence() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut pairs = 0;
    let mut groups = 0;
    for &name in STANDARD_CATALOG {
        let (g, lat) = load(name);
        if g.order() > 200 {
            continue;
        }
        groups += 1;
        let recursive = moebius_recursive(&lat);
        let closed = match moebius_closed_table(&g, &lat) {
            Ok(t) => t,
            Err(e) => {
                problems.push(format!("{name}: {e}"));
                continue;
            }
        };
        for (i, j, r) in recursive.entries() {
            pairs += 1;
            if closed.get(i, j) != Some(r) {
                problems.push(format!("{name}: mu(N{i},N{j}) closed {:?} recursive {r}", closed.get(i, j)));
            }
        }
    }
    let elapsed = start.elapsed();
    if groups < 25 {
        problems.push(format!("only {groups} catalog groups"));
    }
    if elapsed >= Duration::from_secs(60) {
        problems.push(format!("took {elapsed:?}"));
    }
    Outcome::from(problems, format!("{groups} groups, {pairs} comparable pairs, 0 mismatches in {elapsed:.2?}"))
}

fn tuple_count_equivalence(groups: &[(&str, Group, NormalLattice)]) -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for (name, g, lat) in groups.iter().filter(|(_, g, _)| g.order() <= 48) {
        let whole = lat.node(lat.top()).clone();
        let d = class_generating_number_structural(g, lat).unwrap();
        for k in 0..=g.conjugacy_classes().len() {
            checked += 1;
            let inv = f_k_inversion(g, lat, k).unwrap();
            let brute = f_k_bruteforce(g, lat, &whole, k, DEFAULT_BUDGET).unwrap();
            if inv != brute {
                problems.push(format!("{name} k={k}: inversion {inv} brute force {brute}"));
            }
            if k < d && !inv.is_zero() {
                problems.push(format!("{name} k={k} < {d}: f_k = {inv}"));
            }
        }
    }
    Outcome::from(problems, format!("{checked} (group, k) pairs exact"))
}

fn class_generating_agreement(groups: &[(&str, Group, NormalLattice)]) -> Outcome {
    let mut problems = Vec::new();
    for (name, g, lat) in groups {
        let structural = class_generating_number_structural(g, lat).unwrap();
        let brute = class_generating_number_bruteforce(g, lat).unwrap();
        let cut = vertical_cut_number(&character_table(g, DEFAULT_CAP).unwrap()).unwrap();
        if structural != brute || brute != cut {
            problems.push(format!("{name}: structural {structural} brute {brute} cut {cut}"));
        }
    }
    Outcome::from(problems, format!("{} groups agree", groups.len()))
}

fn faithful_sums(groups: &[(&str, Group, NormalLattice)]) -> Outcome {
    let mut problems = Vec::new();
    let mut orthogonal = 0;
    let mut products = 0;
    for (name, g, lat) in groups.iter().filter(|(_, g, _)| g.order() <= 120) {
        let dec = socle_decomposition(g, lat).unwrap();
        let ct = character_table(g, DEFAULT_CAP).unwrap();
        for (i, a) in ct.classes.iter().enumerate() {
            for (j, b) in ct.classes.iter().enumerate() {
                if distinct_modulo(g, a, b, &dec.socle) {
                    orthogonal += 1;
                    let v = faithful_pair_sum(&ct, i, j).norm();
                    if v >= TOLERANCE {
                        problems.push(format!("{name} C{i},C{j}: |sum| = {v:e}"));
                    }
                }
            }
            if class_extends_socle(g, a, &dec.socle) {
                products += 1;
                let p = rational_to_f64(&theorem5_product(g, &dec, a).unwrap());
                let s = faithful_pair_sum(&ct, i, i);
                if (s.re - p).abs() >= TOLERANCE || s.im.abs() >= TOLERANCE {
                    problems.push(format!("{name} C{i}: sum {s} product {p}"));
                }
            }
        }
    }
    for (name, expected) in [("A4", 9), ("C2^2", 0)] {
        let (g, lat) = load(name);
        let dec = socle_decomposition(&g, &lat).unwrap();
        let ct = character_table(&g, DEFAULT_CAP).unwrap();
        let p = theorem5_product(&g, &dec, &ct.classes[0]).unwrap();
        if p != BigRational::from_integer(BigInt::from(expected)) {
            problems.push(format!("{name}: identity-class product {p}, expected {expected}"));
        }
    }
    Outcome::from(
        problems,
        format!("{orthogonal} pairs distinct mod socle vanish, {products} class products match; A4 = 9, C2^2 = 0"),
    )
}

fn faithful_existence(groups: &[(&str, Group, NormalLattice)]) -> Outcome {
    let mut problems = Vec::new();
    let mut nilpotent = 0;
    for (name, g, lat) in groups {
        let dec = socle_decomposition(g, lat).unwrap();
        let structural = has_faithful_irrep_structural(&dec);
        let ct = character_table(g, DEFAULT_CAP).unwrap();
        let table = ct.characters.iter().any(|c| c.is_faithful());
        if structural != table {
            problems.push(format!("{name}: structural {structural} table {table}"));
        }
        if g.is_nilpotent() {
            nilpotent += 1;
            let (center, _) = g.subgroup_as_group(&g.center());
            let cyclic = center.is_cyclic();
            if structural != cyclic {
                problems.push(format!("{name}: nilpotent, structural {structural}, cyclic center {cyclic}"));
            }
        }
    }
    Outcome::from(problems, format!("{} groups, {nilpotent} nilpotent", groups.len()))
}

fn abelian_p_groups() -> Outcome {
    let mut problems = Vec::new();
    let (g, _) = load("C2^2");
    let mut bases = 0;
    for x in 0..4 {
        for y in 0..4 {
            if x != y && g.generate([x, y]).order() == 4 {
                bases += 1;
            }
        }
    }
    let value = abelian_pgroup_tuple_count(2, 2, 2, 2).unwrap();
    if value != BigInt::from(6) || bases != 6 {
        problems.push(format!("formula {value}, ordered bases {bases}"));
    }
    let mut vanishing = 0;
    for p in [2u64, 3] {
        for n in 1..=4u32 {
            for d in 1..=n {
                for k in 0..d as usize {
                    vanishing += 1;
                    let v = abelian_pgroup_tuple_count(p, n, d, k).unwrap();
                    if !v.is_zero() {
                        problems.push(format!("p={p} n={n} d={d} k={k}: {v}"));
                    }
                }
            }
        }
    }
    Outcome::from(problems, format!("(2,2,2,2) = 6 = ordered bases of C2^2; {vanishing} sums with k < d vanish"))
}

fn product_bits(a: &Subgroup, b: &Subgroup, b_order: usize) -> Subgroup {
    let elements = a.elements().flat_map(|x| b.elements().map(move |y| x * b_order + y));
    Subgroup::from_elements(a.parent_order() * b_order, elements)
}

fn structural_identities(groups: &[(&str, Group, NormalLattice)]) -> Outcome {
    let mut problems = Vec::new();
    let small: Vec<&(&str, Group, NormalLattice)> = groups.iter().filter(|(_, g, _)| g.order() <= 24).collect();
    let mut coprime = 0;
    let mut products = 0;
    for (i, (na, a, la)) in small.iter().enumerate() {
        for (nb, b, lb) in &small[i..] {
            if a.order() * b.order() > 200 {
                continue;
            }
            let ab = a.direct_product(b, DEFAULT_CAP).unwrap();
            let lab = enumerate_normal_subgroups(&ab);
            products += 1;
            if num_integer::gcd(a.order(), b.order()) == 1 {
                coprime += 1;
                if lab.len() != la.len() * lb.len() {
                    problems.push(format!("{na} x {nb}: {} nodes, expected {}", lab.len(), la.len() * lb.len()));
                }
            }
            let expected = product_bits(&radical(la).unwrap(), &radical(lb).unwrap(), b.order());
            if radical(&lab).unwrap() != expected {
                problems.push(format!("radical of {na} x {nb} is not the product of radicals"));
            }
        }
    }
    let (a5, la5) = load("A5");
    for (name, g, lat) in small.iter().filter(|(_, g, _)| g.order() <= 12) {
        let prod = a5.direct_product(g, DEFAULT_CAP).unwrap();
        let nodes = enumerate_normal_subgroups(&prod).len();
        if nodes != la5.len() * lat.len() {
            problems.push(format!("A5 x {name}: {nodes} nodes, expected {}", la5.len() * lat.len()));
        }
    }
    let mut factors = 0;
    for (name, g, lat) in groups {
        let r = radical(lat).unwrap();
        let (q, _) = g.quotient(&r).unwrap();
        if !is_product_of_simples(&enumerate_normal_subgroups(&q)) {
            problems.push(format!("{name}: G/R is not a product of simples"));
        }
        let dec = socle_decomposition(g, lat).unwrap();
        let mut expected = BigInt::from(1u64 << dec.b());
        for f in &dec.abelian {
            factors += 1;
            let subspaces: BigInt = (0..=f.multiplicity)
                .map(|k| gaussian_binomial(f.multiplicity, k, f.field_size).unwrap())
                .sum();
            expected *= subspaces;
            let q = BigInt::from(f.field_size);
            let greene = (q.pow(f.multiplicity) - 1u32) / (q - 1u32);
            if BigInt::from(f.members.len()) != greene {
                problems.push(format!("{name}: {} members of a type, expected {greene}", f.members.len()));
            }
        }
        let below = lat.nodes().iter().filter(|n| n.is_subset(&dec.socle)).count();
        if BigInt::from(below) != expected {
            problems.push(format!("{name}: {below} nodes below the socle, expected {expected}"));
        }
    }
    Outcome::from(
        problems,
        format!(
            "{coprime} coprime products, {products} radical products, A5 products, {} G/R checks, {factors} socle types",
            groups.len()
        ),
    )
}

fn main() {
    let groups = catalog();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 SL(2,3) reproduction", Box::new(sl23_reproduction)),
        ("2 Möbius closed form equals recursion", Box::new(moebius_equivalence)),
        ("3 tuple counts by inversion equal direct counts", Box::new(|| tuple_count_equivalence(&groups))),
        ("4 class generating number three ways", Box::new(|| class_generating_agreement(&groups))),
        ("5 faithful orthogonality sums", Box::new(|| faithful_sums(&groups))),
        ("6 faithful irreducible existence", Box::new(|| faithful_existence(&groups))),
        ("7 abelian p-group tuple sums", Box::new(abelian_p_groups)),
        ("8 structural identities", Box::new(|| structural_identities(&groups))),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = check();
        if !outcome.ok {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if outcome.ok { "PASS" } else { "FAIL" }, outcome.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
