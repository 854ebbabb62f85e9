//! Exhaustive search for small structures satisfying chosen postulates.
//!
//! Element 0 is the zero. For each star map the triples are grouped into
//! orbits of the required symmetry postulates (comm, p5, p5', Peirce), so a
//! candidate relation is a choice of orbits. p1, p2 and CR* seed orbits as
//! forced in or out; every remaining postulate is audited per candidate.

use super::postulates::Postulate;
use super::{ModelError, ModelStructure};

pub const MAX_ENUMERATE_SIZE: usize = 3;

/// Orbits beyond this many free choices are refused even with `force`.
type Triple = (usize, usize, usize);

const MAX_FREE_ORBITS: usize = 40;

pub fn enumerate_structures(
    size: usize,
    required: &[Postulate],
    force: bool,
) -> Result<impl Iterator<Item = ModelStructure>, ModelError> {
    if size == 0 || (size > MAX_ENUMERATE_SIZE && !force) {
        return Err(ModelError::Unsupported(size));
    }
    let required: Vec<Postulate> = required.to_vec();
    let elements: Vec<String> = (0..size)
        .map(|i| if i == 0 { "0".into() } else { format!("e{i}") })
        .collect();
    let plans = star_maps(size, required.contains(&Postulate::P6))
        .into_iter()
        .filter(|star| !required.contains(&Postulate::Normal) || star[0] == 0)
        .filter_map(|star| Plan::new(size, star, &required))
        .collect::<Vec<_>>();
    if plans.iter().any(|p| p.free.len() > MAX_FREE_ORBITS) {
        return Err(ModelError::Unsupported(size));
    }
    Ok(plans.into_iter().flat_map(move |plan| {
        let elements = elements.clone();
        let required = required.clone();
        (0u64..1 << plan.free.len()).filter_map(move |mask| {
            let mut triples = plan.forced.clone();
            for (k, orbit) in plan.free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    triples.extend_from_slice(orbit);
                }
            }
            let m = ModelStructure::new(
                "enumerated",
                elements.clone(),
                0,
                plan.star.clone(),
                triples,
            )
            .ok()?;
            required
                .iter()
                .all(|p| p.first_failure(&m).is_none())
                .then_some(m)
        })
    }))
}

fn star_maps(n: usize, involutions_only: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut rest = code;
        let star: Vec<usize> = (0..n)
            .map(|_| {
                let d = rest % n;
                rest /= n;
                d
            })
            .collect();
        if !involutions_only || (0..n).all(|a| star[star[a]] == a) {
            out.push(star);
        }
    }
    out
}

struct Plan {
    star: Vec<usize>,
    forced: Vec<(usize, usize, usize)>,
    free: Vec<Vec<(usize, usize, usize)>>,
}

impl Plan {
    fn new(n: usize, star: Vec<usize>, required: &[Postulate]) -> Option<Plan> {
        let encode = |(a, b, c): (usize, usize, usize)| (a * n + b) * n + c;
        let decode = |t: usize| (t / (n * n), t / n % n, t % n);
        let bijective = {
            let mut seen = vec![false; n];
            star.iter().for_each(|&s| seen[s] = true);
            seen.iter().all(|&s| s)
        };
        let star_copy = star.clone();
        let st = |x: usize| star_copy[x];
        let mut maps: Vec<Box<dyn Fn(Triple) -> Triple + '_>> = Vec::new();
        if required.contains(&Postulate::Comm) {
            maps.push(Box::new(|(a, b, c)| (b, a, c)));
        }
        if bijective {
            if required.contains(&Postulate::P5) {
                maps.push(Box::new(move |(a, b, c)| (a, st(c), st(b))));
            }
            if required.contains(&Postulate::P5Prime) {
                maps.push(Box::new(move |(a, b, c)| (st(c), a, st(b))));
            }
            if required.contains(&Postulate::Peirce) {
                maps.push(Box::new(move |(x, y, z)| (z, st(y), x)));
            }
        }
        let total = n * n * n;
        let mut parent: Vec<usize> = (0..total).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for t in 0..total {
            for f in &maps {
                let u = encode(f(decode(t)));
                let (a, b) = (root(&mut parent, t), root(&mut parent, u));
                parent[a] = b;
            }
        }
        // Some(true): must be present, Some(false): must be absent.
        let mut want: Vec<Option<bool>> = vec![None; total];
        let set = |t: (usize, usize, usize), v: bool, want: &mut Vec<Option<bool>>| -> bool {
            let k = encode(t);
            match want[k] {
                Some(old) if old != v => false,
                _ => {
                    want[k] = Some(v);
                    true
                }
            }
        };
        for a in 0..n {
            if required.contains(&Postulate::P1) && !set((0, a, a), true, &mut want) {
                return None;
            }
            if required.contains(&Postulate::P2) && !set((a, a, a), true, &mut want) {
                return None;
            }
            if required.contains(&Postulate::CrStar) {
                for b in 0..n {
                    if !set((0, a, b), a == b, &mut want) {
                        return None;
                    }
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = vec![Vec::new(); total];
        for t in 0..total {
            let r = root(&mut parent, t);
            orbits[r].push(t);
        }
        let mut forced = Vec::new();
        let mut free = Vec::new();
        for orbit in orbits.into_iter().filter(|o| !o.is_empty()) {
            let wants: Vec<bool> = orbit.iter().filter_map(|&t| want[t]).collect();
            let triples: Vec<_> = orbit.iter().map(|&t| decode(t)).collect();
            match (wants.contains(&true), wants.contains(&false)) {
                (true, true) => return None,
                (true, false) => forced.extend(triples),
                (false, true) => {}
                (false, false) => free.push(triples),
            }
        }
        Some(Plan { star, forced, free })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::check_postulates;

    #[test]
    fn size_two_relevant_structures() {
        let mut req = Postulate::BASIC.to_vec();
        req.push(Postulate::Normal);
        let found: Vec<_> = enumerate_structures(2, &req, false).unwrap().collect();
        assert!(!found.is_empty());
        for m in &found {
            let r = check_postulates(m);
            assert!(req.iter().all(|&p| r.holds(p)));
        }
    }

    #[test]
    fn crstar_filter() {
        for m in enumerate_structures(2, &[Postulate::CrStar], false).unwrap() {
            for a in 0..2 {
                for b in 0..2 {
                    assert_eq!(m.related(0, a, b), a == b);
                }
            }
        }
    }

    #[test]
    fn size_three_commutative() {
        let mut req = Postulate::BASIC.to_vec();
        req.push(Postulate::Comm);
        let mut seen = 0;
        for m in enumerate_structures(3, &req, false).unwrap().take(200) {
            seen += 1;
            for x in 0..3 {
                for y in 0..3 {
                    assert_eq!(m.product(x, y), m.product(y, x));
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn orbit_pruning_matches_plain_filtering() {
        let req = [Postulate::P1, Postulate::Comm, Postulate::P5];
        let fast = enumerate_structures(2, &req, false).unwrap().count();
        let slow = (0u64..1 << 8)
            .flat_map(|mask| star_maps(2, false).into_iter().map(move |s| (mask, s)))
            .filter(|(mask, star)| {
                let triples = (0..8)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| (k / 4, k / 2 % 2, k % 2));
                let m = ModelStructure::new(
                    "x",
                    vec!["0".into(), "e1".into()],
                    0,
                    star.clone(),
                    triples,
                )
                .unwrap();
                req.iter().all(|p| p.first_failure(&m).is_none())
            })
            .count();
        assert_eq!(fast, slow);
    }

    #[test]
    fn refuses_large_sizes() {
        assert!(matches!(
            enumerate_structures(4, &[], false),
            Err(ModelError::Unsupported(4))
        ));
    }
}
