//! Structural invariants of a constructed group: subgroup closure, center
//! and derived subgroup, abelianization, Sylow subgroup counting, and the
//! full automorphism group by generating-tuple images.

use std::collections::HashSet;

use super::{FiniteGroup, GroupError};
use crate::arith;

/// Subgroup generated by `seeds`, as a sorted element list. The identity is
/// always included.
pub fn closure(g: &FiniteGroup, seeds: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut out = vec![0u32];
    let mut head = 0usize;
    while head < out.len() {
        let cur = out[head];
        head += 1;
        for &s in seeds {
            let nxt = g.mul(cur, s);
            if !seen[nxt as usize] {
                seen[nxt as usize] = true;
                out.push(nxt);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Does `seeds` generate the whole group?
pub fn generates(g: &FiniteGroup, seeds: &[u32]) -> bool {
    closure(g, seeds).len() == g.order()
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    /// Invariant factors of G/G', each dividing the next.
    pub abelian_invariants: Vec<u64>,
    pub is_perfect: bool,
}

pub fn structure(g: &FiniteGroup) -> StructureReport {
    let n = g.order();
    let gens: Vec<u32> = g.generators().iter().map(|&(_, x)| x).collect();
    let center_order = (0..n as u32)
        .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .count();
    // The derived subgroup is generated by all commutators (already closed
    // under conjugation, so plain closure suffices).
    let mut comms: HashSet<u32> = HashSet::new();
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            comms.insert(g.commutator(a, b));
        }
    }
    let mut comms: Vec<u32> = comms.into_iter().collect();
    comms.sort_unstable();
    let derived = closure(g, &comms);
    let abelian_invariants = quotient_invariants(g, &derived);
    StructureReport {
        order: n,
        center_order,
        derived_order: derived.len(),
        abelian_invariants,
        is_perfect: derived.len() == n,
    }
}

/// Invariant factors of the abelian quotient G/N for a normal subgroup N
/// given as a sorted element list.
fn quotient_invariants(g: &FiniteGroup, normal: &[u32]) -> Vec<u64> {
    let n = g.order();
    let q = n / normal.len();
    if q == 1 {
        return Vec::new();
    }
    // Name each coset by its least element.
    let mut coset_rep = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(q);
    for x in 0..n as u32 {
        if coset_rep[x as usize] == u32::MAX {
            reps.push(x);
            for &d in normal {
                coset_rep[g.mul(x, d) as usize] = x;
            }
        }
    }
    // Coset orders in the quotient.
    let order_in_q = |x: u32| -> u64 {
        let mut acc = g.mul(0, x);
        let mut ord = 1u64;
        while coset_rep[acc as usize] != 0 {
            acc = g.mul(acc, x);
            ord += 1;
        }
        ord
    };
    let orders: Vec<u64> = reps.iter().map(|&r| order_in_q(r)).collect();
    // For each prime p | q, the counts N_k = #{cosets of order dividing p^k}
    // determine the p-primary exponents (conjugate partition).
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for p in arith::prime_divisors(q as u64) {
        let mut exps: Vec<u32> = Vec::new();
        let mut k = 1u32;
        let mut prev = orders.iter().filter(|&&o| o == 1).count() as u64;
        loop {
            let nk = orders
                .iter()
                .filter(|&&o| {
                    let pk = p.pow(k);
                    pk % o == 0 && is_p_power(o, p)
                })
                .count() as u64;
            // a_k = log_p(N_k / N_{k-1}) = number of cyclic factors with
            // exponent >= k.
            let ratio = nk / prev;
            let a_k = ratio.trailing_zeros_base(p);
            if a_k == 0 {
                break;
            }
            for i in 0..a_k {
                if exps.len() <= i as usize {
                    exps.push(0);
                }
                exps[i as usize] = k;
            }
            prev = nk;
            k += 1;
        }
        per_prime.push(exps);
    }
    // Zip the primes' exponent lists into invariant factors, pairing the
    // i-th largest exponents together (each exps list is non-increasing).
    let primes = arith::prime_divisors(q as u64);
    let nfactors = per_prime.iter().map(|e| e.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for i in 0..nfactors {
        let mut f = 1u64;
        for (pi, exps) in per_prime.iter().enumerate() {
            if let Some(&e) = exps.get(i) {
                f *= primes[pi].pow(e);
            }
        }
        factors.push(f);
    }
    factors.sort_unstable();
    factors
}

fn is_p_power(mut o: u64, p: u64) -> bool {
    while o.is_multiple_of(p) {
        o /= p;
    }
    o == 1
}

trait TrailingZerosBase {
    fn trailing_zeros_base(self, p: u64) -> u32;
}

impl TrailingZerosBase for u64 {
    /// Largest e with p^e dividing self (self > 0).
    fn trailing_zeros_base(self, p: u64) -> u32 {
        let mut n = self;
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        e
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SylowReport {
    pub p: u64,
    pub subgroup_order: u64,
    pub count: usize,
}

/// Number of Sylow p-subgroups: find one by greedily extending a p-subgroup
/// with p-elements, then count its conjugates.
pub fn sylow_count(g: &FiniteGroup, p: u64) -> Result<SylowReport, GroupError> {
    if !arith::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let n = g.order() as u64;
    let mut p_part = 1u64;
    let mut m = n;
    while m.is_multiple_of(p) {
        p_part *= p;
        m /= p;
    }
    if p_part == 1 {
        return Ok(SylowReport {
            p,
            subgroup_order: 1,
            count: 1,
        });
    }
    let mut sylow: Vec<u32> = vec![0];
    while (sylow.len() as u64) < p_part {
        let mut extended = false;
        for x in 1..g.order() as u32 {
            if !is_p_power(u64::from(g.element_order(x)), p) {
                continue;
            }
            if sylow.binary_search(&x).is_ok() {
                continue;
            }
            let mut seeds = sylow.clone();
            seeds.push(x);
            let bigger = closure(g, &seeds);
            if is_p_power(bigger.len() as u64, p) {
                sylow = bigger;
                extended = true;
                break;
            }
        }
        // Every p-subgroup below full p-part extends inside some Sylow
        // subgroup, so the greedy step always finds a witness.
        assert!(extended, "greedy Sylow extension must succeed");
    }
    let mut distinct: HashSet<Vec<u32>> = HashSet::new();
    for t in 0..g.order() as u32 {
        let mut conj: Vec<u32> = sylow.iter().map(|&x| g.conj(x, t)).collect();
        conj.sort_unstable();
        distinct.insert(conj);
    }
    Ok(SylowReport {
        p,
        subgroup_order: p_part,
        count: distinct.len(),
    })
}

/// The full automorphism group, as permutations of the element indices,
/// sorted lexicographically (the identity map comes first).
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub maps: Vec<Vec<u32>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }
}

/// Compute Aut(G) by sending a fixed minimal generating tuple to all
/// candidate images with matching element orders and keeping the assignments
/// that extend to bijective homomorphisms. Groups larger than `cap` are
/// rejected.
pub fn automorphisms(g: &FiniteGroup, cap: usize) -> Result<AutomorphismGroup, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let tuple = minimal_generating_tuple(g);
    if tuple.is_empty() {
        return Ok(AutomorphismGroup {
            maps: vec![vec![0]],
        });
    }
    let buckets: Vec<Vec<u32>> = tuple
        .iter()
        .map(|&t| g.elements_of_order(g.element_order(t)))
        .collect();
    let mut maps = Vec::new();
    let mut images = vec![0u32; tuple.len()];
    assign(g, &tuple, &buckets, 0, &mut images, &mut maps);
    maps.sort_unstable();
    Ok(AutomorphismGroup { maps })
}

fn assign(
    g: &FiniteGroup,
    tuple: &[u32],
    buckets: &[Vec<u32>],
    slot: usize,
    images: &mut Vec<u32>,
    maps: &mut Vec<Vec<u32>>,
) {
    if slot == tuple.len() {
        if let Some(map) = extend_hom(g, tuple, images) {
            maps.push(map);
        }
        return;
    }
    for &c in &buckets[slot] {
        images[slot] = c;
        assign(g, tuple, buckets, slot + 1, images, maps);
    }
}

/// Try to extend tuple -> images to a homomorphism by propagating along the
/// Cayley graph; returns the map when it is a well-defined bijection.
fn extend_hom(g: &FiniteGroup, tuple: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = g.order();
    let mut phi = vec![u32::MAX; n];
    phi[0] = 0;
    let mut queue: Vec<u32> = vec![0];
    let mut head = 0;
    let mut reached = 1usize;
    while head < queue.len() {
        let cur = queue[head];
        head += 1;
        for (i, &t) in tuple.iter().enumerate() {
            let nxt = g.mul(cur, t);
            let img = g.mul(phi[cur as usize], images[i]);
            let cell = &mut phi[nxt as usize];
            if *cell == u32::MAX {
                *cell = img;
                reached += 1;
                queue.push(nxt);
            } else if *cell != img {
                return None;
            }
        }
    }
    if reached < n {
        return None; // images of a non-generating assignment
    }
    // The propagation fixed phi on a spanning tree; verify multiplicativity
    // on every edge of the Cayley graph.
    for a in 0..n as u32 {
        for (i, &t) in tuple.iter().enumerate() {
            if phi[g.mul(a, t) as usize] != g.mul(phi[a as usize], images[i]) {
                return None;
            }
        }
    }
    // Bijectivity.
    let mut seen = vec![false; n];
    for &v in &phi {
        if seen[v as usize] {
            return None;
        }
        seen[v as usize] = true;
    }
    Some(phi)
}

/// A smallest generating tuple, preferring low element indices; empty for
/// the trivial group.
fn minimal_generating_tuple(g: &FiniteGroup) -> Vec<u32> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    for x in 1..n as u32 {
        if g.element_order(x) as usize == n {
            return vec![x];
        }
    }
    for a in 1..n as u32 {
        let sub_a = closure(g, &[a]);
        for b in a + 1..n as u32 {
            if sub_a.binary_search(&b).is_ok() {
                continue;
            }
            if generates(g, &[a, b]) {
                return vec![a, b];
            }
        }
    }
    for a in 1..n as u32 {
        for b in a + 1..n as u32 {
            for c in b + 1..n as u32 {
                if generates(g, &[a, b, c]) {
                    return vec![a, b, c];
                }
            }
        }
    }
    // Fall back to the named generators (never reached for the groups here).
    g.generators().iter().map(|&(_, x)| x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupDescriptor;

    fn build(s: &str) -> FiniteGroup {
        FiniteGroup::construct(&s.parse::<GroupDescriptor>().unwrap()).unwrap()
    }

    #[test]
    fn closure_basics() {
        let g = build("C(12)");
        assert_eq!(closure(&g, &[]), vec![0]);
        assert_eq!(closure(&g, &[6, 10]).len(), 6);
        assert_eq!(closure(&g, &[1]).len(), 12);
    }

    #[test]
    fn structure_of_s4() {
        let g = build("S(4)");
        let s = structure(&g);
        assert_eq!(s.order, 24);
        assert_eq!(s.center_order, 1);
        assert_eq!(s.derived_order, 12);
        assert_eq!(s.abelian_invariants, [2]);
        assert!(!s.is_perfect);
    }

    #[test]
    fn perfect_groups() {
        for name in ["A(5)", "PSL2(7)"] {
            let s = structure(&build(name));
            assert!(s.is_perfect, "{} should be perfect", name);
            assert_eq!(s.abelian_invariants, [] as [u64; 0]);
        }
    }

    #[test]
    fn structure_of_abelian_groups() {
        let s = structure(&build("C(12)"));
        assert_eq!(s.center_order, 12);
        assert_eq!(s.derived_order, 1);
        assert_eq!(s.abelian_invariants, [12]);
    }

    #[test]
    fn structure_of_example_i() {
        // EXI(p) = (C_p x| C_6) x C_2: center C_2, derived C_p.
        let s = structure(&build("EXI(7)"));
        assert_eq!(s.order, 84);
        assert_eq!(s.center_order, 2);
        assert_eq!(s.derived_order, 7);
        assert_eq!(s.abelian_invariants, [2, 6]);
    }

    #[test]
    fn sylow_counts_in_s4() {
        let g = build("S(4)");
        let s2 = sylow_count(&g, 2).unwrap();
        assert_eq!((s2.subgroup_order, s2.count), (8, 3));
        let s3 = sylow_count(&g, 3).unwrap();
        assert_eq!((s3.subgroup_order, s3.count), (3, 4));
        let s5 = sylow_count(&g, 5).unwrap();
        assert_eq!((s5.subgroup_order, s5.count), (1, 1));
    }

    #[test]
    fn sylow_counts_in_a5() {
        let g = build("A(5)");
        assert_eq!(sylow_count(&g, 5).unwrap().count, 6);
        assert_eq!(sylow_count(&g, 3).unwrap().count, 10);
        assert_eq!(sylow_count(&g, 2).unwrap().count, 5);
    }

    #[test]
    fn sylow_normal_in_metacyclic() {
        let g = build("MC(11,10,2)");
        let s = sylow_count(&g, 11).unwrap();
        assert_eq!((s.subgroup_order, s.count), (11, 1));
    }

    #[test]
    fn automorphism_orders() {
        // Aut(C12) has order phi(12) = 4.
        assert_eq!(automorphisms(&build("C(12)"), 1200).unwrap().order(), 4);
        // Aut(S4) = S4.
        assert_eq!(automorphisms(&build("S(4)"), 1200).unwrap().order(), 24);
        // Aut(C2 x C2) = S3 via the presented Klein group.
        let klein = build("<x, y | x^2, y^2, [x,y]>");
        assert_eq!(automorphisms(&klein, 1200).unwrap().order(), 6);
        // Aut(D4) has order 8.
        assert_eq!(automorphisms(&build("D(4)"), 1200).unwrap().order(), 8);
    }

    #[test]
    fn automorphisms_respect_cap() {
        assert!(matches!(
            automorphisms(&build("PSL2(13)"), 1000),
            Err(GroupError::CapExceeded { order: 1092, .. })
        ));
    }

    #[test]
    fn automorphism_maps_are_homomorphisms() {
        let g = build("D(6)");
        let auts = automorphisms(&g, 1200).unwrap();
        assert_eq!(auts.order(), 12); // |Aut(D6)| = 6 * phi(6) = 12
        for phi in &auts.maps {
            for a in 0..g.order() as u32 {
                for b in 0..g.order() as u32 {
                    assert_eq!(
                        phi[g.mul(a, b) as usize],
                        g.mul(phi[a as usize], phi[b as usize])
                    );
                }
            }
        }
        assert_eq!(auts.maps[0], (0..g.order() as u32).collect::<Vec<_>>());
    }
}
