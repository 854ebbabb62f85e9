//! Exhaustive audit of the structural postulates.

use serde::Serialize;

use super::{members, ModelStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Postulate {
    /// `R0aa`
    P1,
    /// `Raaa`
    P2,
    /// `R²abcd => R²acbd`
    P3,
    /// `R²0abc => Rabc`
    P4,
    /// `Rabc => Rac*b*`
    P5,
    /// `a** = a`
    P6,
    /// `Rabc => Rbac`
    Comm,
    /// `R²abcd => R²a(bc)d`
    P3Prime,
    /// `Rabc => Rc*ab*`
    P5Prime,
    /// `0* = 0`
    Normal,
    /// `R0ab <=> a = b`
    CrStar,
    /// `Rxyz <=> Rzy*x`
    Peirce,
}

impl Postulate {
    pub const ALL: [Postulate; 12] = [
        Postulate::P1,
        Postulate::P2,
        Postulate::P3,
        Postulate::P4,
        Postulate::P5,
        Postulate::P6,
        Postulate::Comm,
        Postulate::P3Prime,
        Postulate::P5Prime,
        Postulate::Normal,
        Postulate::CrStar,
        Postulate::Peirce,
    ];

    /// p1 through p6.
    pub const BASIC: [Postulate; 6] = [
        Postulate::P1,
        Postulate::P2,
        Postulate::P3,
        Postulate::P4,
        Postulate::P5,
        Postulate::P6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::P1 => "p1",
            Postulate::P2 => "p2",
            Postulate::P3 => "p3",
            Postulate::P4 => "p4",
            Postulate::P5 => "p5",
            Postulate::P6 => "p6",
            Postulate::Comm => "comm",
            Postulate::P3Prime => "p3prime",
            Postulate::P5Prime => "p5prime",
            Postulate::Normal => "normal",
            Postulate::CrStar => "crstar",
            Postulate::Peirce => "peirce",
        }
    }

    pub fn from_name(name: &str) -> Option<Postulate> {
        Postulate::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Lexicographically least failing tuple of element indices, if any.
    pub fn first_failure(self, m: &ModelStructure) -> Option<Vec<usize>> {
        let n = m.size();
        let st = |x| m.star(x);
        let r = |a, b, c| m.related(a, b, c);
        // R²abcd: some x with Rabx and Rxcd.
        let r2 =
            |a: usize, b: usize, c: usize, d: usize| members(m.product(a, b)).any(|x| r(x, c, d));
        // R²a(bc)d: some x with Rbcx and Raxd.
        let r2_right =
            |a: usize, b: usize, c: usize, d: usize| members(m.product(b, c)).any(|x| r(a, x, d));
        let all1 = || (0..n).map(|a| vec![a]);
        let all2 = || (0..n).flat_map(move |a| (0..n).map(move |b| vec![a, b]));
        let all3 = || all2().flat_map(move |v| (0..n).map(move |c| [v.as_slice(), &[c]].concat()));
        let all4 = || all3().flat_map(move |v| (0..n).map(move |d| [v.as_slice(), &[d]].concat()));
        let zero = m.zero();
        match self {
            Postulate::P1 => all1().find(|t| !r(zero, t[0], t[0])),
            Postulate::P2 => all1().find(|t| !r(t[0], t[0], t[0])),
            Postulate::P3 => {
                all4().find(|t| r2(t[0], t[1], t[2], t[3]) && !r2(t[0], t[2], t[1], t[3]))
            }
            Postulate::P4 => all3().find(|t| r2(zero, t[0], t[1], t[2]) && !r(t[0], t[1], t[2])),
            Postulate::P5 => all3().find(|t| r(t[0], t[1], t[2]) && !r(t[0], st(t[2]), st(t[1]))),
            Postulate::P6 => all1().find(|t| st(st(t[0])) != t[0]),
            Postulate::Comm => all3().find(|t| r(t[0], t[1], t[2]) && !r(t[1], t[0], t[2])),
            Postulate::P3Prime => {
                all4().find(|t| r2(t[0], t[1], t[2], t[3]) && !r2_right(t[0], t[1], t[2], t[3]))
            }
            Postulate::P5Prime => {
                all3().find(|t| r(t[0], t[1], t[2]) && !r(st(t[2]), t[0], st(t[1])))
            }
            Postulate::Normal => (st(zero) != zero).then(|| vec![zero]),
            Postulate::CrStar => all2().find(|t| r(zero, t[0], t[1]) != (t[0] == t[1])),
            Postulate::Peirce => all3().find(|t| r(t[0], t[1], t[2]) != r(t[2], st(t[1]), t[0])),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PostulateOutcome {
    pub postulate: Postulate,
    pub holds: bool,
    /// Element names of the least failing tuple.
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PostulateReport {
    pub structure: String,
    pub outcomes: Vec<PostulateOutcome>,
    /// Triples `(z, y*, x)` whose Peirce partner `(x, y, z)` is present.
    pub peirce_missing: Vec<[String; 3]>,
}

impl PostulateReport {
    pub fn holds(&self, p: Postulate) -> bool {
        self.outcome(p).holds
    }

    pub fn outcome(&self, p: Postulate) -> &PostulateOutcome {
        self.outcomes
            .iter()
            .find(|o| o.postulate == p)
            .expect("every postulate is audited")
    }

    pub fn failing(&self) -> Vec<Postulate> {
        self.outcomes
            .iter()
            .filter(|o| !o.holds)
            .map(|o| o.postulate)
            .collect()
    }
}

pub fn check_postulates(m: &ModelStructure) -> PostulateReport {
    let name = |i: usize| m.elements()[i].clone();
    let outcomes = Postulate::ALL
        .iter()
        .map(|&p| {
            let w = p.first_failure(m);
            PostulateOutcome {
                postulate: p,
                holds: w.is_none(),
                witness: w.map(|t| t.into_iter().map(name).collect()),
            }
        })
        .collect();
    let mut missing: Vec<(usize, usize, usize)> = m
        .triples()
        .into_iter()
        .map(|(x, y, z)| (z, m.star(y), x))
        .filter(|&(a, b, c)| !m.related(a, b, c))
        .collect();
    missing.sort_unstable();
    missing.dedup();
    PostulateReport {
        structure: m.name().to_string(),
        outcomes,
        peirce_missing: missing
            .into_iter()
            .map(|(a, b, c)| [name(a), name(b), name(c)])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{all_structures, get_structure};

    fn names(ts: &[[&str; 3]]) -> Vec<[String; 3]> {
        let mut v: Vec<[String; 3]> = ts.iter().map(|t| t.map(String::from)).collect();
        v.sort();
        v
    }

    #[test]
    fn audits_of_builtins() {
        for m in all_structures() {
            let r = check_postulates(&m);
            for p in [
                Postulate::P1,
                Postulate::P2,
                Postulate::P4,
                Postulate::P6,
                Postulate::P3Prime,
            ] {
                assert!(r.holds(p), "{} {}", m.name(), p.name());
            }
            assert!(
                r.holds(Postulate::P5Prime)
                    && r.holds(Postulate::Normal)
                    && r.holds(Postulate::CrStar)
            );
            let commutative = m.name() != "K5";
            assert_eq!(r.holds(Postulate::Comm), commutative);
            assert_eq!(r.holds(Postulate::P3), commutative);
            assert_eq!(r.holds(Postulate::P5), commutative);
            assert_eq!(r.holds(Postulate::Peirce), !matches!(m.name(), "K1" | "K2"));
            for o in &r.outcomes {
                assert_eq!(o.holds, o.witness.is_none());
            }
        }
    }

    #[test]
    fn peirce_missing_triples() {
        let k1 = check_postulates(&get_structure("K1").unwrap());
        assert_eq!(
            k1.peirce_missing,
            names(&[["b", "a", "a"], ["a", "b", "a"], ["a", "a", "b*"]])
        );
        let k2 = check_postulates(&get_structure("K2").unwrap());
        assert_eq!(k2.peirce_missing, names(&[["b*", "b*", "b"]]));
        assert!(check_postulates(&get_structure("K3").unwrap())
            .peirce_missing
            .is_empty());
    }

    #[test]
    fn adding_missing_triples_gives_k3() {
        let k3 = get_structure("K3").unwrap().triples();
        for k in ["K1", "K2"] {
            let m = get_structure(k).unwrap();
            let mut t = m.triples();
            for [a, b, c] in check_postulates(&m).peirce_missing {
                let idx = |s: &str| m.element_index(s).unwrap();
                t.push((idx(&a), idx(&b), idx(&c)));
            }
            t.sort_unstable();
            assert_eq!(t, k3, "{k}");
        }
    }

    #[test]
    fn witnesses_are_least() {
        let r = check_postulates(&get_structure("K5").unwrap());
        assert_eq!(
            r.outcome(Postulate::P3).witness,
            Some(vec!["0".into(), "a".into(), "b*".into(), "b*".into()])
        );
        assert_eq!(Postulate::from_name("p3prime"), Some(Postulate::P3Prime));
    }
}
