//! Buchberger's algorithm with the Gebauer-Möller pair criteria and a normal selection
//! strategy (pairs processed by ascending lcm).

use std::sync::Arc;

use crate::algebra::{FieldElement, Monomial, MonomialOrder, Polynomial, RingSpec};

/// A basis element together with its expression over the input generators.
/// `cofactors` is empty when tracking is off.
#[derive(Debug, Clone)]
pub(crate) struct Tracked {
    pub poly: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

impl Tracked {
    fn scale(self, c: &FieldElement) -> Tracked {
        Tracked {
            poly: self.poly.scale(c),
            cofactors: self.cofactors.iter().map(|q| q.scale(c)).collect(),
        }
    }

    fn monic(self) -> Tracked {
        match self.poly.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self,
        }
    }

    /// `self - c * m * other`, on the polynomial and on the cofactors.
    fn sub_scaled(self, c: &FieldElement, m: &Monomial, other: &Tracked) -> Tracked {
        let poly = self.poly.sub_scaled_shift(c, m, &other.poly);
        let cofactors = self
            .cofactors
            .into_iter()
            .zip(&other.cofactors)
            .map(|(a, b)| if b.is_zero() { a } else { a.sub_scaled_shift(c, m, b) })
            .collect();
        Tracked { poly, cofactors }
    }
}

/// Full reduction of `p` by `basis` (monic leading coefficients assumed). When `tracked`
/// is set the cofactors of `p` are updated alongside.
pub(crate) fn reduce(mut p: Tracked, basis: &[&Tracked]) -> Tracked {
    let ring = p.poly.ring().clone();
    let mut rem = Polynomial::zero(&ring);
    loop {
        let Some((lm, lc)) = p.poly.leading_term().cloned() else { break };
        match basis
            .iter()
            .find(|g| g.poly.leading_monomial().is_some_and(|gm| gm.divides(&lm)))
        {
            Some(g) => {
                let gm = g.poly.leading_monomial().unwrap();
                let shift = gm.quotient_of(&lm);
                let c = match g.poly.leading_coeff() {
                    Some(gc) if !gc.is_one() => lc.div(gc).unwrap(),
                    _ => lc,
                };
                p = p.sub_scaled(&c, &shift, g);
            }
            None => {
                let (m, c) = p.poly.pop_leading().unwrap();
                rem.push_trailing(m, c);
            }
        }
    }
    Tracked {
        poly: rem,
        cofactors: p.cofactors,
    }
}

/// Reduction that records the quotient of each divisor, for certificate assembly.
pub(crate) fn divide(p: &Polynomial, basis: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let ring = p.ring().clone();
    let mut quotients: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); basis.len()];
    let mut rem = Polynomial::zero(&ring);
    let mut p = p.clone();
    loop {
        let Some((lm, lc)) = p.leading_term().cloned() else { break };
        match basis
            .iter()
            .position(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&lm)))
        {
            Some(i) => {
                let g = &basis[i];
                let shift = g.leading_monomial().unwrap().quotient_of(&lm);
                let c = lc.div(g.leading_coeff().unwrap()).unwrap();
                p = p.sub_scaled_shift(&c, &shift, g);
                quotients[i].push((shift, c));
            }
            None => {
                let (m, c) = p.pop_leading().unwrap();
                rem.push_trailing(m, c);
            }
        }
    }
    let quotients = quotients.into_iter().map(|q| Polynomial::from_terms(&ring, q)).collect();
    (quotients, rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`. With `track`, each basis element
/// carries cofactors expressing it over `gens`.
pub(crate) fn groebner(ring: &Arc<RingSpec>, gens: &[Polynomial], track: bool) -> Vec<Tracked> {
    let order = ring.order();
    let m = gens.len();
    let zero = Polynomial::zero(ring);
    let mut basis: Vec<Tracked> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Tracked> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| Tracked {
            poly: g.clone(),
            cofactors: if track {
                (0..m)
                    .map(|k| if k == i { Polynomial::one(ring) } else { zero.clone() })
                    .collect()
            } else {
                Vec::new()
            },
        })
        .collect();
    // Feeding small leading terms first keeps early reductions cheap.
    inputs.sort_by(|a, b| order.compare(a.poly.leading_monomial().unwrap(), b.poly.leading_monomial().unwrap()));

    let mut queue: std::collections::VecDeque<Tracked> = inputs.into();
    loop {
        let next = if let Some(t) = queue.pop_front() {
            Some(t)
        } else if let Some(idx) = select_pair(&pairs, order) {
            let pair = pairs.swap_remove(idx);
            Some(s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm))
        } else {
            None
        };
        let Some(h) = next else { break };
        let divisors: Vec<&Tracked> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(t, _)| t).collect();
        let h = reduce(h, &divisors);
        if h.poly.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.poly.leading_monomial().unwrap().is_one() {
            // Unit ideal.
            return vec![h];
        }
        update(&mut basis, &mut active, &mut pairs, h);
    }

    let kept: Vec<Tracked> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(t, _)| t)
        .collect();
    interreduce(kept, order)
}

fn select_pair(pairs: &[Pair], order: MonomialOrder) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| order.compare(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
        .map(|(i, _)| i)
}

fn s_polynomial(f: &Tracked, g: &Tracked, lcm: &Monomial) -> Tracked {
    let fm = f.poly.leading_monomial().unwrap();
    let gm = g.poly.leading_monomial().unwrap();
    let ring = f.poly.ring();
    let one = ring.field().one();
    let fshift = fm.quotient_of(lcm);
    let gshift = gm.quotient_of(lcm);
    let start = Tracked {
        poly: f.poly.mul_term(&fshift, &one),
        cofactors: f.cofactors.iter().map(|q| q.mul_term(&fshift, &one)).collect(),
    };
    start.sub_scaled(&one, &gshift, g)
}

/// Gebauer-Möller update: adds `h`, pruning new and old pairs by the chain and product
/// criteria and deactivating basis elements whose leading monomial `h` divides.
fn update(basis: &mut Vec<Tracked>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Tracked) {
    let hm = h.poly.leading_monomial().unwrap().clone();
    let hidx = basis.len();

    let candidates: Vec<(usize, Monomial, bool)> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| active[*i])
        .map(|(i, g)| {
            let gm = g.poly.leading_monomial().unwrap();
            (i, hm.lcm(gm), hm.is_coprime(gm))
        })
        .collect();

    // New pairs (h, g): keep one per minimal lcm, then drop those with coprime leading
    // monomials (Becker-Weispfenning UPDATE).
    let mut pending: Vec<(usize, Monomial, bool)> = candidates;
    let mut survivors: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((i, lcm, coprime)) = (!pending.is_empty()).then(|| pending.remove(0)) {
        let dominated = pending
            .iter()
            .chain(survivors.iter())
            .any(|(_, other, _)| other.divides(&lcm));
        if coprime || !dominated {
            survivors.push((i, lcm, coprime));
        }
    }
    let new_pairs: Vec<Pair> = survivors
        .into_iter()
        .filter(|(_, _, coprime)| !coprime)
        .map(|(i, lcm, _)| Pair { i, j: hidx, lcm })
        .collect();

    // Old pairs made redundant by h.
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(basis[p.i].poly.leading_monomial().unwrap());
        let lj = hm.lcm(basis[p.j].poly.leading_monomial().unwrap());
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for (i, g) in basis.iter().enumerate() {
        if active[i] && hm.divides(g.poly.leading_monomial().unwrap()) {
            active[i] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

/// Turns a minimal basis into the reduced one, sorted by descending leading monomial.
fn interreduce(mut basis: Vec<Tracked>, order: MonomialOrder) -> Vec<Tracked> {
    // Remove elements whose leading monomial is divisible by another's.
    basis.sort_by(|a, b| order.compare(a.poly.leading_monomial().unwrap(), b.poly.leading_monomial().unwrap()));
    let mut minimal: Vec<Tracked> = Vec::with_capacity(basis.len());
    for t in basis {
        let lm = t.poly.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|g| g.poly.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(t);
        }
    }
    let n = minimal.len();
    let mut reduced: Vec<Tracked> = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<&Tracked> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t)
            .collect();
        let t = &minimal[i];
        let (lm, lc) = t.poly.leading_term().unwrap().clone();
        let mut tail = t.clone();
        let lead = tail.poly.pop_leading().unwrap();
        debug_assert_eq!(lead.0, lm);
        // The leading term survives (no other leading monomial divides it); reduce the tail.
        let lead_only = Polynomial::monomial(t.poly.ring(), lm, lc);
        let reduced_tail = reduce(tail, &others);
        reduced.push(
            Tracked {
                poly: &lead_only + &reduced_tail.poly,
                cofactors: reduced_tail.cofactors,
            }
            .monic(),
        );
    }
    reduced.sort_by(|a, b| order.compare(b.poly.leading_monomial().unwrap(), a.poly.leading_monomial().unwrap()));
    reduced
}
