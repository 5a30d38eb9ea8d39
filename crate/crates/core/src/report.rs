//! Serializable analysis sections and the oracle cross-checks behind
//! `--verify`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::chartable::{
    character_table, class_extends_socle, distinct_modulo, faithful_pair_sum, has_faithful_irrep_structural,
    rational_to_f64, theorem5_product, vertical_cut_number, CharacterTable,
};
use crate::error::Result;
use crate::generation::{
    class_generating_number_bruteforce, class_generating_number_structural, evaluate_inversion, inversion_terms,
    major_subgroups, subset_closure_counts, DEFAULT_BUDGET,
};
use crate::group::Group;
use crate::lattice::{radical_index, socle_decomposition, socle_index, NormalLattice, SocleDecomposition};
use crate::moebius::{moebius_closed_table, moebius_recursive};

/// An exact integer, emitted as a JSON number when it is below `2^53` in
/// magnitude and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigValue(pub BigInt);

const EXACT_LIMIT: i64 = 1 << 53;

impl Serialize for BigValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() < EXACT_LIMIT => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigValue;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BigValue, E> {
                Ok(BigValue(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigValue, E> {
                Ok(BigValue(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigValue, E> {
                v.parse().map(BigValue).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl From<BigInt> for BigValue {
    fn from(v: BigInt) -> Self {
        BigValue(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeInfo {
    pub index: usize,
    pub order: usize,
    pub class_count: usize,
    pub upper_covers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeSection {
    pub node_count: usize,
    pub nodes: Vec<NodeInfo>,
    pub radical_order: Option<usize>,
    pub socle_order: Option<usize>,
}

pub fn lattice_section(g: &Group, lat: &NormalLattice) -> LatticeSection {
    let classes = g.conjugacy_classes();
    let nodes = (0..lat.len())
        .map(|i| NodeInfo {
            index: i,
            order: lat.node(i).order(),
            class_count: classes.iter().filter(|c| lat.node(i).contains(c.representative)).count(),
            upper_covers: lat.upper_covers(i).to_vec(),
        })
        .collect();
    LatticeSection {
        node_count: lat.len(),
        nodes,
        radical_order: radical_index(lat).ok().map(|i| lat.node(i).order()),
        socle_order: socle_index(lat).ok().map(|i| lat.node(i).order()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AbelianFactorInfo {
    /// `|A_i|`.
    pub order: usize,
    pub prime: usize,
    /// `d_i`.
    pub multiplicity: u32,
    /// `q_i`.
    pub field_size: u64,
    /// Number of minimal normal subgroups of this type.
    pub member_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SocleSection {
    pub a: usize,
    pub b: usize,
    pub socle_order: usize,
    pub abelian: Vec<AbelianFactorInfo>,
    pub non_abelian_orders: Vec<usize>,
}

pub fn socle_section(dec: &SocleDecomposition) -> SocleSection {
    SocleSection {
        a: dec.a(),
        b: dec.b(),
        socle_order: dec.socle.order(),
        abelian: dec
            .abelian
            .iter()
            .map(|f| AbelianFactorInfo {
                order: f.order,
                prime: f.prime,
                multiplicity: f.multiplicity,
                field_size: f.field_size,
                member_count: f.members.len(),
            })
            .collect(),
        non_abelian_orders: dec.non_abelian.iter().map(|s| s.order()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoebiusEntry {
    pub lower: usize,
    pub upper: usize,
    pub closed: BigValue,
    pub recursive: BigValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoebiusSection {
    /// `μ(1, G)`.
    pub mu_one_g: BigValue,
    pub entries: Vec<MoebiusEntry>,
    pub mismatches: usize,
}

/// Both Möbius tables side by side. Fails for the trivial group, which has
/// no coatoms and hence no radical.
pub fn moebius_section(g: &Group, lat: &NormalLattice) -> Result<MoebiusSection> {
    radical_index(lat)?;
    let recursive = moebius_recursive(lat);
    let closed = moebius_closed_table(g, lat)?;
    let mut mismatches = 0;
    let entries = recursive
        .entries()
        .map(|(i, j, r)| {
            let c = closed.get(i, j).cloned().unwrap_or_else(BigInt::zero);
            if &c != r {
                mismatches += 1;
            }
            MoebiusEntry {
                lower: i,
                upper: j,
                closed: c.into(),
                recursive: r.clone().into(),
            }
        })
        .collect();
    let mu_one_g = closed.get(lat.bottom(), lat.top()).cloned().unwrap_or_default().into();
    Ok(MoebiusSection {
        mu_one_g,
        entries,
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassGeneratingNumbers {
    pub structural: usize,
    pub brute_force: usize,
    pub vertical_cut: usize,
}

impl ClassGeneratingNumbers {
    pub fn agree(&self) -> bool {
        self.structural == self.brute_force && self.brute_force == self.vertical_cut
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FkEntry {
    pub k: usize,
    pub value: BigValue,
    /// Direct count, present only when verification ran.
    pub brute_force: Option<BigValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MajorInfo {
    pub node: usize,
    pub order: usize,
    pub class_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenerationSection {
    pub class_generating_number: usize,
    pub class_generating_numbers: ClassGeneratingNumbers,
    pub fk: Vec<FkEntry>,
    pub major_subgroups: Vec<MajorInfo>,
}

/// Class generating numbers and `f_k(G)` for the given `ks`; with `verify`
/// each `f_k` is also counted directly.
pub fn generation_section(
    g: &Group,
    lat: &NormalLattice,
    ct: &CharacterTable,
    ks: &[usize],
    verify: bool,
) -> Result<GenerationSection> {
    let numbers = ClassGeneratingNumbers {
        structural: class_generating_number_structural(g, lat)?,
        brute_force: class_generating_number_bruteforce(g, lat)?,
        vertical_cut: vertical_cut_number(ct)?,
    };
    let terms = inversion_terms(g, lat)?;
    let counts = if verify {
        Some(subset_closure_counts(g, lat, DEFAULT_BUDGET)?)
    } else {
        None
    };
    let fk = ks
        .iter()
        .map(|&k| FkEntry {
            k,
            value: evaluate_inversion(&terms, k).into(),
            brute_force: counts.as_ref().map(|c| {
                let subsets = c[lat.top()].get(k).cloned().unwrap_or_default();
                BigValue(subsets * (1..=k).map(BigInt::from).product::<BigInt>())
            }),
        })
        .collect();
    let classes = g.conjugacy_classes();
    let major_subgroups = major_subgroups(lat)
        .into_iter()
        .map(|t| MajorInfo {
            node: t,
            order: lat.node(t).order(),
            class_count: classes.iter().filter(|c| lat.node(t).contains(c.representative)).count(),
        })
        .collect();
    Ok(GenerationSection {
        class_generating_number: numbers.structural,
        class_generating_numbers: numbers,
        fk,
        major_subgroups,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassInfo {
    pub index: usize,
    pub representative: String,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterInfo {
    pub degree: u64,
    /// `[re, im]` per class.
    pub values: Vec<[f64; 2]>,
    pub kernel_node: Option<usize>,
    pub kernel_order: usize,
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CharTableSection {
    pub prime: u64,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<CharacterInfo>,
    pub orthogonality_defect: f64,
}

fn clean(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-12 {
        r + 0.0
    } else {
        x
    }
}

pub fn chartable_section(g: &Group, lat: &NormalLattice, ct: &CharacterTable) -> CharTableSection {
    CharTableSection {
        prime: ct.prime,
        classes: ct
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| ClassInfo {
                index: i,
                representative: g.label(c.representative).to_string(),
                size: c.size,
                element_order: c.element_order,
            })
            .collect(),
        characters: ct
            .characters
            .iter()
            .map(|chi| CharacterInfo {
                degree: chi.degree,
                values: chi.values.iter().map(|v| [clean(v.re), clean(v.im)]).collect(),
                kernel_node: lat.index_of(&chi.kernel),
                kernel_order: chi.kernel.order(),
                faithful: chi.is_faithful(),
            })
            .collect(),
        orthogonality_defect: ct.orthogonality_defect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCheck {
    pub class: usize,
    pub size: usize,
    pub extends_socle: bool,
    /// Real part of `Σ* |χ(C)|²` over faithful characters.
    pub pair_sum: f64,
    /// The closed-form product as an exact fraction, when it applies.
    pub product: Option<String>,
    pub matches: Option<bool>,
    /// Whether `|C|` divides `Σ* χ(1)²`.
    pub divides: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaithfulSection {
    pub faithful_sum_squares: u64,
    pub has_faithful_irrep: bool,
    pub has_faithful_irrep_structural: bool,
    pub socle_order: usize,
    pub class_checks: Vec<ClassCheck>,
    /// Class pairs distinct modulo the socle.
    pub distinct_pairs: usize,
    /// Largest `|Σ* χ(A)conj(χ(B))|` over those pairs.
    pub max_distinct_pair_sum: f64,
}

pub fn faithful_section(
    g: &Group,
    dec: &SocleDecomposition,
    ct: &CharacterTable,
    tolerance: f64,
) -> Result<FaithfulSection> {
    let sum_squares = ct.faithful_degree_square_sum();
    let mut class_checks = Vec::new();
    for (i, c) in ct.classes.iter().enumerate() {
        let extends = class_extends_socle(g, c, &dec.socle);
        let pair_sum = clean(faithful_pair_sum(ct, i, i).re);
        let (product, matches, divides) = if extends {
            let p = theorem5_product(g, dec, c)?;
            let expected = BigRational::new(BigInt::from(sum_squares), BigInt::from(c.size));
            let matches = (rational_to_f64(&p) - pair_sum).abs() < tolerance && p == expected;
            (Some(p.to_string()), Some(matches), Some(sum_squares.is_multiple_of(c.size as u64)))
        } else {
            (None, None, None)
        };
        class_checks.push(ClassCheck {
            class: i,
            size: c.size,
            extends_socle: extends,
            pair_sum,
            product,
            matches,
            divides,
        });
    }
    let mut distinct_pairs = 0;
    let mut max_distinct_pair_sum: f64 = 0.0;
    for (i, a) in ct.classes.iter().enumerate() {
        for (j, b) in ct.classes.iter().enumerate() {
            if distinct_modulo(g, a, b, &dec.socle) {
                distinct_pairs += 1;
                max_distinct_pair_sum = max_distinct_pair_sum.max(faithful_pair_sum(ct, i, j).norm());
            }
        }
    }
    Ok(FaithfulSection {
        faithful_sum_squares: sum_squares,
        has_faithful_irrep: ct.characters.iter().any(|c| c.is_faithful()),
        has_faithful_irrep_structural: has_faithful_irrep_structural(dec),
        socle_order: dec.socle.order(),
        class_checks,
        distinct_pairs,
        max_distinct_pair_sum,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub group_spec: String,
    pub order: usize,
    pub class_count: usize,
    pub lattice: LatticeSection,
    pub socle_decomposition: SocleSection,
    pub moebius: MoebiusSection,
    pub generation: GenerationSection,
    pub character_table: CharTableSection,
    pub faithful: FaithfulSection,
}

/// Everything at once; `f_k` is reported for `k = 0..=classCount`.
pub fn analyze(spec: &str, g: &Group, lat: &NormalLattice, tolerance: f64, verify: bool) -> Result<AnalysisReport> {
    let dec = socle_decomposition(g, lat)?;
    let ct = character_table(g, usize::MAX)?;
    let ks: Vec<usize> = (0..=ct.classes.len()).collect();
    Ok(AnalysisReport {
        group_spec: spec.to_string(),
        order: g.order(),
        class_count: ct.classes.len(),
        lattice: lattice_section(g, lat),
        socle_decomposition: socle_section(&dec),
        moebius: moebius_section(g, lat)?,
        generation: generation_section(g, lat, &ct, &ks, verify)?,
        character_table: chartable_section(g, lat, &ct),
        faithful: faithful_section(g, &dec, &ct, tolerance)?,
    })
}

/// Describes every failed cross-check in the given sections.
pub fn moebius_problems(m: &MoebiusSection) -> Vec<String> {
    m.entries
        .iter()
        .filter(|e| e.closed != e.recursive)
        .map(|e| format!("mu(N{}, N{}): closed {} != recursive {}", e.lower, e.upper, e.closed.0, e.recursive.0))
        .collect()
}

pub fn generation_problems(s: &GenerationSection) -> Vec<String> {
    let mut out = Vec::new();
    let n = &s.class_generating_numbers;
    if !n.agree() {
        out.push(format!(
            "class generating number: structural {}, brute force {}, vertical cut {}",
            n.structural, n.brute_force, n.vertical_cut
        ));
    }
    for e in &s.fk {
        if let Some(b) = &e.brute_force {
            if b != &e.value {
                out.push(format!("f_{}: inversion {} != direct count {}", e.k, e.value.0, b.0));
            }
        }
        if e.k < s.class_generating_number && !e.value.0.is_zero() {
            out.push(format!("f_{} should vanish below the class generating number", e.k));
        }
    }
    out
}

pub fn chartable_problems(c: &CharTableSection, tolerance: f64) -> Vec<String> {
    let mut out = Vec::new();
    if !(c.orthogonality_defect < tolerance) {
        out.push(format!("orthogonality defect {:e} exceeds tolerance", c.orthogonality_defect));
    }
    for (i, chi) in c.characters.iter().enumerate() {
        if chi.kernel_node.is_none() {
            out.push(format!("kernel of character {i} is not a lattice node"));
        }
    }
    out
}

pub fn faithful_problems(f: &FaithfulSection, tolerance: f64) -> Vec<String> {
    let mut out = Vec::new();
    if f.has_faithful_irrep != f.has_faithful_irrep_structural {
        out.push(format!(
            "faithful irreducible character: table says {}, socle says {}",
            f.has_faithful_irrep, f.has_faithful_irrep_structural
        ));
    }
    if !(f.max_distinct_pair_sum < tolerance) {
        out.push(format!("classes distinct modulo the socle have faithful sum {:e}", f.max_distinct_pair_sum));
    }
    for c in &f.class_checks {
        if c.matches == Some(false) {
            out.push(format!("class {}: faithful sum {} != product {:?}", c.class, c.pair_sum, c.product));
        }
        if c.divides == Some(false) {
            out.push(format!("class {}: size {} does not divide {}", c.class, c.size, f.faithful_sum_squares));
        }
    }
    out
}

pub fn analysis_problems(r: &AnalysisReport, tolerance: f64) -> Vec<String> {
    let mut out = moebius_problems(&r.moebius);
    out.extend(generation_problems(&r.generation));
    out.extend(chartable_problems(&r.character_table, tolerance));
    out.extend(faithful_problems(&r.faithful, tolerance));
    out
}
