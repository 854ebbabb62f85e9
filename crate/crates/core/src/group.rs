//! The nonabelian group of order 21, partitions of its non-identity
//! elements that carry K3's atom structure, and the right regular
//! representation of its subsets as binary relations.
//!
//! Elements are normal forms `f^a g^b` with `f^3 = g^7 = 1` and `gf = fg^2`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::models::ModelStructure;

pub const GROUP_ORDER: usize = 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cannot read group element '{0}'")]
    Parse(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("there is no partition {0}; choose 1..=8")]
    UnknownPartition(usize),
    #[error("representation check '{which}' fails{}", witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default())]
    IdentityFailed {
        which: String,
        witness: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElement {
    /// Exponent of `f`, mod 3.
    pub a: u8,
    /// Exponent of `g`, mod 7.
    pub b: u8,
}

pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0 };
pub const F: GroupElement = GroupElement { a: 1, b: 0 };
pub const G: GroupElement = GroupElement { a: 0, b: 1 };

fn pow2_mod7(e: u8) -> u32 {
    1 << e
}

impl GroupElement {
    pub fn new(a: u8, b: u8) -> GroupElement {
        GroupElement { a: a % 3, b: b % 7 }
    }

    pub fn index(self) -> usize {
        7 * self.a as usize + self.b as usize
    }

    pub fn from_index(i: usize) -> GroupElement {
        GroupElement::new((i / 7) as u8, (i % 7) as u8)
    }

    pub fn all() -> impl Iterator<Item = GroupElement> {
        (0..GROUP_ORDER).map(GroupElement::from_index)
    }

    /// Parses `1`, `f`, `f^2`, `g^5`, `fg^3`, `f^2g` and the like.
    pub fn parse(text: &str) -> Result<GroupElement, GroupError> {
        let err = || GroupError::Parse(text.to_string());
        let s = text.trim();
        if s == "1" {
            return Ok(IDENTITY);
        }
        let mut rest = s;
        let mut exps = [0u8; 2];
        for (k, letter) in ['f', 'g'].into_iter().enumerate() {
            if let Some(r) = rest.strip_prefix(letter) {
                rest = r;
                exps[k] = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let digits = r.bytes().take_while(u8::is_ascii_digit).count();
                    exps[k] = r[..digits].parse().map_err(|_| err())?;
                    rest = &r[digits..];
                }
            }
        }
        if !rest.is_empty() || s.is_empty() || exps[0] >= 3 || exps[1] >= 7 {
            return Err(err());
        }
        Ok(GroupElement::new(exps[0], exps[1]))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == IDENTITY {
            return f.write_str("1");
        }
        for (letter, e) in [('f', self.a), ('g', self.b)] {
            match e {
                0 => {}
                1 => write!(f, "{letter}")?,
                _ => write!(f, "{letter}^{e}")?,
            }
        }
        Ok(())
    }
}

/// `g^b f = f g^(2b)`, so `f^a1 g^b1 f^a2 g^b2 = f^(a1+a2) g^(b1 2^a2 + b2)`.
pub fn gmul(x: GroupElement, y: GroupElement) -> GroupElement {
    let b = (x.b as u32 * pow2_mod7(y.a) + y.b as u32) % 7;
    GroupElement::new(x.a + y.a, b as u8)
}

pub fn ginv(x: GroupElement) -> GroupElement {
    // (f^a g^b)^-1 = g^-b f^-a = f^-a g^(-b 2^-a)
    let a = (3 - x.a) % 3;
    let b = (7 - x.b as u32) * pow2_mod7(a) % 7;
    GroupElement::new(a, b as u8)
}

/// Subset of the group, bit `i` for the element with index `i`.
pub type Complex = u32;

pub const WHOLE_GROUP: Complex = (1 << GROUP_ORDER) - 1;

pub fn complex_of(elements: &[GroupElement]) -> Complex {
    elements.iter().fold(0, |acc, e| acc | 1 << e.index())
}

fn elements_of(x: Complex) -> impl Iterator<Item = GroupElement> {
    (0..GROUP_ORDER)
        .filter(move |i| x >> i & 1 == 1)
        .map(GroupElement::from_index)
}

pub fn complex_product(x: Complex, y: Complex) -> Complex {
    let mut out = 0;
    for h in elements_of(x) {
        for k in elements_of(y) {
            out |= 1 << gmul(h, k).index();
        }
    }
    out
}

pub fn complex_inverse(x: Complex) -> Complex {
    elements_of(x).fold(0, |acc, h| acc | 1 << ginv(h).index())
}

pub fn format_complex(x: Complex) -> String {
    let names: Vec<String> = elements_of(x).map(|e| e.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub id: usize,
    pub a: Complex,
    pub b: Complex,
    pub b_star: Complex,
}

const COMMON_A1: &str = "f f^2 g g^2 g^5 g^6";
const COMMON_A2: &str = "f f^2 fg fg^2 f^2g^3 f^2g^6";

const PARTITIONS: [(&str, &str, &str); 8] = [
    (
        COMMON_A1,
        "fg f^2g fg^2 fg^3 g^4 fg^4 fg^6",
        "g^3 f^2g^2 f^2g^3 f^2g^4 fg^5 f^2g^5 f^2g^6",
    ),
    (
        COMMON_A1,
        "fg g^3 fg^3 fg^4 fg^5 fg^6 f^2g^6",
        "f^2g fg^2 f^2g^2 g^4 f^2g^3 f^2g^4 f^2g^5",
    ),
    (
        COMMON_A1,
        "fg g^3 fg^3 f^2g^4 fg^5 f^2g^5 f^2g^6",
        "f^2g fg^2 f^2g^2 g^4 f^2g^3 fg^4 fg^6",
    ),
    (
        COMMON_A1,
        "fg f^2g^2 g^4 fg^4 f^2g^4 fg^5 f^2g^6",
        "f^2g fg^2 g^3 fg^3 f^2g^3 f^2g^5 fg^6",
    ),
    (
        COMMON_A1,
        "fg fg^3 g^4 f^2g^4 fg^5 f^2g^5 f^2g^6",
        "f^2g fg^2 g^3 f^2g^2 f^2g^3 fg^4 fg^6",
    ),
    (
        COMMON_A2,
        "g f^2g g^3 f^2g^2 fg^4 g^5 f^2g^4",
        "g^2 fg^3 g^4 fg^5 g^6 f^2g^5 fg^6",
    ),
    (
        COMMON_A2,
        "g f^2g g^3 f^2g^2 fg^4 g^5 fg^6",
        "g^2 fg^3 g^4 f^2g^4 fg^5 g^6 f^2g^5",
    ),
    (
        COMMON_A2,
        "g f^2g g^3 fg^3 fg^4 g^5 fg^6",
        "g^2 f^2g^2 g^4 f^2g^4 fg^5 g^6 f^2g^5",
    ),
];

fn parse_complex(text: &str) -> Result<Complex, GroupError> {
    let elems: Result<Vec<_>, _> = text.split_whitespace().map(GroupElement::parse).collect();
    Ok(complex_of(&elems?))
}

pub fn partition(id: usize) -> Result<Partition, GroupError> {
    let (a, b, bs) = *PARTITIONS
        .get(id.wrapping_sub(1))
        .ok_or(GroupError::UnknownPartition(id))?;
    Ok(Partition {
        id,
        a: parse_complex(a)?,
        b: parse_complex(b)?,
        b_star: parse_complex(bs)?,
    })
}

pub fn partitions() -> Vec<Partition> {
    (1..=PARTITIONS.len())
        .map(|i| partition(i).expect("built-in partitions parse"))
        .collect()
}

impl Partition {
    /// Blocks in atom order `0, a, b, b*`.
    pub fn blocks(&self) -> [Complex; 4] {
        [complex_of(&[IDENTITY]), self.a, self.b, self.b_star]
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |m: String| Err(GroupError::InvalidPartition(m));
        let blocks = self.blocks();
        let sizes = blocks.map(|x| x.count_ones());
        if sizes != [1, 6, 7, 7] {
            return bad(format!("block sizes {sizes:?}, expected [1, 6, 7, 7]"));
        }
        if blocks.iter().fold(0, |acc, x| acc | x) != WHOLE_GROUP {
            return bad("blocks do not cover the group".into());
        }
        if complex_inverse(self.a) != self.a {
            return bad("a is not closed under inverses".into());
        }
        if complex_inverse(self.b) != self.b_star {
            return bad("b* is not the set of inverses of b".into());
        }
        Ok(())
    }
}

/// Atoms `0, a, b, b*` with `Rxyz` iff block `z` lies inside the product of blocks `x` and `y`.
pub fn build_atom_structure(p: &Partition) -> Result<ModelStructure, GroupError> {
    p.validate()?;
    let blocks = p.blocks();
    let mut triples = Vec::new();
    for (x, &bx) in blocks.iter().enumerate() {
        for (y, &by) in blocks.iter().enumerate() {
            let prod = complex_product(bx, by);
            for (z, &bz) in blocks.iter().enumerate() {
                if bz & !prod == 0 {
                    triples.push((x, y, z));
                }
            }
        }
    }
    let star = (0..4).map(|x| {
        blocks
            .iter()
            .position(|&b| b == complex_inverse(blocks[x]))
            .expect("validated")
    });
    let elements = ["0", "a", "b", "b*"].map(String::from).to_vec();
    ModelStructure::new(
        format!("G21-{}", p.id),
        elements,
        0,
        star.collect(),
        triples,
    )
    .map_err(|e| GroupError::InvalidPartition(e.to_string()))
}

/// Binary relation on the group: row `i` holds the successors of element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupRelation {
    rows: [u32; GROUP_ORDER],
}

impl GroupRelation {
    pub const EMPTY: GroupRelation = GroupRelation {
        rows: [0; GROUP_ORDER],
    };
    pub const ALL: GroupRelation = GroupRelation {
        rows: [WHOLE_GROUP; GROUP_ORDER],
    };

    pub fn diagonal() -> GroupRelation {
        let mut r = GroupRelation::EMPTY;
        for i in 0..GROUP_ORDER {
            r.rows[i] = 1 << i;
        }
        r
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn union(&self, o: &GroupRelation) -> GroupRelation {
        GroupRelation {
            rows: std::array::from_fn(|i| self.rows[i] | o.rows[i]),
        }
    }

    pub fn intersection(&self, o: &GroupRelation) -> GroupRelation {
        GroupRelation {
            rows: std::array::from_fn(|i| self.rows[i] & o.rows[i]),
        }
    }

    pub fn complement(&self) -> GroupRelation {
        GroupRelation {
            rows: std::array::from_fn(|i| !self.rows[i] & WHOLE_GROUP),
        }
    }

    pub fn converse(&self) -> GroupRelation {
        let mut r = GroupRelation::EMPTY;
        for i in 0..GROUP_ORDER {
            for j in 0..GROUP_ORDER {
                if self.contains(i, j) {
                    r.rows[j] |= 1 << i;
                }
            }
        }
        r
    }

    /// `self | o`: pairs `(x, z)` with some `y`, `x self y` and `y o z`.
    pub fn compose(&self, o: &GroupRelation) -> GroupRelation {
        let mut r = GroupRelation::EMPTY;
        for i in 0..GROUP_ORDER {
            for j in 0..GROUP_ORDER {
                if self.contains(i, j) {
                    r.rows[i] |= o.rows[j];
                }
            }
        }
        r
    }

    /// Some pair on which the two relations differ.
    fn difference_witness(&self, o: &GroupRelation) -> Option<String> {
        (0..GROUP_ORDER).find_map(|i| {
            let d = self.rows[i] ^ o.rows[i];
            (d != 0).then(|| {
                let j = d.trailing_zeros() as usize;
                format!(
                    "<{},{}>",
                    GroupElement::from_index(i),
                    GroupElement::from_index(j)
                )
            })
        })
    }
}

/// Right regular representation: `{<k, kh> : k in G, h in x}`.
pub fn sigma(x: Complex) -> GroupRelation {
    let mut r = GroupRelation::EMPTY;
    for k in GroupElement::all() {
        for h in elements_of(x) {
            r.rows[k.index()] |= 1 << gmul(k, h).index();
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub partition: usize,
    pub checks: Vec<SigmaCheck>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn into_result(self) -> Result<SigmaReport, GroupError> {
        match self.checks.iter().find(|c| !c.passed) {
            Some(c) => Err(GroupError::IdentityFailed {
                which: c.name.clone(),
                witness: c.witness.clone(),
            }),
            None => Ok(self),
        }
    }
}

/// Audits the homomorphism identities over all unions of blocks, and the
/// block-level products that make the image a representation of K3.
pub fn check_sigma_homomorphism(p: &Partition) -> SigmaReport {
    let blocks = p.blocks();
    let unions: Vec<Complex> = (0..16u32)
        .map(|m| {
            (0..4)
                .filter(|k| m >> k & 1 == 1)
                .fold(0, |acc, k| acc | blocks[k])
        })
        .collect();
    let mut checks = Vec::new();
    let mut record =
        |name: &str, pairs: &mut dyn Iterator<Item = (GroupRelation, GroupRelation)>| {
            let witness = pairs
                .map(|(l, r)| l.difference_witness(&r))
                .find(Option::is_some)
                .flatten();
            checks.push(SigmaCheck {
                name: name.into(),
                passed: witness.is_none(),
                witness,
            });
        };
    let pairs = || {
        unions
            .iter()
            .flat_map(|&x| unions.iter().map(move |&y| (x, y)))
    };
    record(
        "union",
        &mut pairs().map(|(x, y)| (sigma(x | y), sigma(x).union(&sigma(y)))),
    );
    record(
        "intersection",
        &mut pairs().map(|(x, y)| (sigma(x & y), sigma(x).intersection(&sigma(y)))),
    );
    record(
        "complement",
        &mut unions
            .iter()
            .map(|&x| (sigma(WHOLE_GROUP & !x), sigma(x).complement())),
    );
    record(
        "product",
        &mut pairs().map(|(x, y)| (sigma(complex_product(x, y)), sigma(x).compose(&sigma(y)))),
    );
    record(
        "inverse",
        &mut unions
            .iter()
            .map(|&x| (sigma(complex_inverse(x)), sigma(x).converse())),
    );
    record(
        "identity",
        &mut std::iter::once((sigma(blocks[0]), GroupRelation::diagonal())),
    );

    let rel = blocks.map(sigma);
    let [zero, a, b, bs] = rel;
    record(
        "blocks partition GxG",
        &mut std::iter::once((
            rel.iter().fold(GroupRelation::EMPTY, |u, r| u.union(r)),
            GroupRelation::ALL,
        )),
    );
    let overlap = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
    record(
        "blocks disjoint",
        &mut overlap.map(|(i, j)| (rel[i].intersection(&rel[j]), GroupRelation::EMPTY)),
    );
    record(
        "converses",
        &mut [
            (zero.converse(), zero),
            (a.converse(), a),
            (b.converse(), bs),
        ]
        .into_iter(),
    );
    record(
        "zero is neutral",
        &mut rel
            .iter()
            .flat_map(|x| [(zero.compose(x), *x), (x.compose(&zero), *x)]),
    );
    let full = [(a, a), (b, bs), (bs, b)];
    record(
        "A|A = B|B^ = B^|B = GxG",
        &mut full.iter().map(|(x, y)| (x.compose(y), GroupRelation::ALL)),
    );
    let diversity = zero.complement();
    let others = [(1, 2), (1, 3), (2, 1), (3, 1), (2, 2), (3, 3)];
    record(
        "other products are the diversity",
        &mut others
            .iter()
            .map(|&(i, j)| (rel[i].compose(&rel[j]), diversity)),
    );
    record(
        "singleton permutations disjoint",
        &mut GroupElement::all().flat_map(|h| {
            GroupElement::all().filter(move |&k| k != h).map(move |k| {
                (
                    sigma(complex_of(&[h])).intersection(&sigma(complex_of(&[k]))),
                    GroupRelation::EMPTY,
                )
            })
        }),
    );
    SigmaReport {
        partition: p.id,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::get_structure;
    use crate::models::{check_postulates, Postulate};

    fn el(s: &str) -> GroupElement {
        GroupElement::parse(s).unwrap()
    }

    #[test]
    fn multiplication() {
        assert_eq!(gmul(G, F), el("fg^2"));
        assert_eq!(gmul(el("fg"), el("fg")), el("f^2g^3"));
        assert_ne!(gmul(G, F), gmul(F, G));
        assert_eq!(ginv(F), el("f^2"));
        assert_eq!(ginv(G), el("g^6"));
        for x in GroupElement::all() {
            assert_eq!(gmul(IDENTITY, x), x);
            assert_eq!(gmul(x, IDENTITY), x);
            assert_eq!(gmul(x, ginv(x)), IDENTITY);
            assert_eq!(GroupElement::parse(&x.to_string()).unwrap(), x);
            for y in GroupElement::all() {
                for z in GroupElement::all() {
                    assert_eq!(gmul(gmul(x, y), z), gmul(x, gmul(y, z)));
                }
            }
        }
        assert!(GroupElement::parse("g^7").is_err());
        assert!(GroupElement::parse("gf").is_err());
    }

    /// Permutations act on the right, so `p * q` applies `p` first.
    fn perm_mul(p: &[usize], q: &[usize]) -> Vec<usize> {
        p.iter().map(|&i| q[i]).collect()
    }

    fn perm_from_cycles(cycles: &[&[usize]]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..=GROUP_ORDER).collect();
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                p[i] = c[(k + 1) % c.len()];
            }
        }
        p
    }

    #[test]
    fn permutation_presentation_is_isomorphic() {
        let f = perm_from_cycles(&[
            &[3, 6, 12],
            &[5, 8, 14],
            &[7, 10, 16],
            &[9, 18, 15],
            &[11, 20, 17],
            &[13, 21, 19],
        ]);
        let g = perm_from_cycles(&[&[2, 20, 17, 14, 11, 8, 5], &[4, 16, 7, 19, 10, 21, 13]]);
        let one: Vec<usize> = (0..=GROUP_ORDER).collect();
        let pow = |p: &Vec<usize>, n: u8| (0..n).fold(one.clone(), |acc, _| perm_mul(&acc, p));
        let image = |x: GroupElement| perm_mul(&pow(&f, x.a), &pow(&g, x.b));
        let images: std::collections::BTreeSet<Vec<usize>> =
            GroupElement::all().map(image).collect();
        assert_eq!(images.len(), GROUP_ORDER);
        for x in GroupElement::all() {
            for y in GroupElement::all() {
                assert_eq!(image(gmul(x, y)), perm_mul(&image(x), &image(y)), "{x} {y}");
            }
        }
    }

    #[test]
    fn every_partition_gives_k3() {
        let k3 = get_structure("K3").unwrap();
        for p in partitions() {
            let m = build_atom_structure(&p).unwrap();
            assert_eq!(
                m.composition_table(),
                k3.composition_table(),
                "partition {}",
                p.id
            );
            assert_eq!(m.triples(), k3.triples());
            let report = check_postulates(&m);
            assert!(
                Postulate::ALL.iter().all(|&q| report.holds(q)),
                "{}: {:?}",
                p.id,
                report.failing()
            );
        }
        assert_eq!(partition(9), Err(GroupError::UnknownPartition(9)));
    }

    #[test]
    fn moved_element_is_rejected() {
        let mut p = partition(1).unwrap();
        let h = el("fg").index();
        p.b &= !(1 << h);
        p.a |= 1 << h;
        assert!(matches!(
            build_atom_structure(&p),
            Err(GroupError::InvalidPartition(_))
        ));
    }

    #[test]
    fn sigma_is_a_representation() {
        assert_eq!(sigma(complex_of(&[IDENTITY])), GroupRelation::diagonal());
        assert!(sigma(0).is_empty());
        assert_eq!(sigma(WHOLE_GROUP), GroupRelation::ALL);
        for p in partitions() {
            let r = check_sigma_homomorphism(&p);
            assert!(r.passed(), "{}: {:?}", p.id, r.clone().into_result());
        }
    }
}
