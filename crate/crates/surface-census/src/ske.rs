//! Surface-kernel epimorphisms: generating tuples (c1, ..., ck) with
//! prescribed element orders and product 1, their orbits under Aut(G), and
//! the eigenvalue labels and tuple moves used to tell orbits apart.
//!
//! Aut(G) acts slot-wise on tuples; on generating tuples the action is
//! semiregular (an automorphism fixing a generating set is the identity),
//! so orbit count = tuple count / |Aut(G)|. That identity is checked, not
//! assumed.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{automorphisms, generates, FiniteGroup, GroupDescriptor, GroupError};
use crate::signatures::Signature;

/// Default bound on |G| for tuple searches and automorphism enumeration.
pub const DEFAULT_CAP: usize = 1200;

/// The active search cap: `SURFACE_CENSUS_CAP` when set, else the default.
pub fn search_cap() -> usize {
    std::env::var("SURFACE_CENSUS_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Error)]
pub enum SkeError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("|G| = {order} exceeds the search cap {cap} (set SURFACE_CENSUS_CAP to raise it)")]
    CapExceeded { order: usize, cap: usize },
    #[error("tuple searches need a genus-0 signature, got {0}")]
    PositiveGenus(String),
    #[error("tuple searches need a hyperbolic signature, got {0}")]
    NotHyperbolic(String),
    #[error("eigenvalue labels are defined only for groups with a normal Sylow subgroup of prime order; {0} has none tracked")]
    NoNormalSylow(String),
    #[error("slot-2 generator does not act as a valid eigenvalue: {0}")]
    NotEigenPower(String),
    #[error("Aut(G) does not act semiregularly: orbit of size {orbit} with |Aut| = {aut}")]
    NotSemiregular { orbit: usize, aut: usize },
    #[error("tuple move {0} needs a 3-slot tuple")]
    NeedsTriple(String),
}

fn check_cap(g: &FiniteGroup) -> Result<usize, SkeError> {
    let cap = search_cap();
    if g.order() > cap {
        return Err(SkeError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    Ok(cap)
}

/// All generating tuples with exact orders matching `sig` and product 1, in
/// lexicographic element order. The final slot is solved from the product
/// rather than searched.
pub fn enumerate_tuples(g: &FiniteGroup, sig: &Signature) -> Result<Vec<Vec<u32>>, SkeError> {
    check_cap(g)?;
    search(g, sig, false)
}

/// Early-exit variant: the first tuple in search order, if any.
pub fn exists_tuple(g: &FiniteGroup, sig: &Signature) -> Result<Option<Vec<u32>>, SkeError> {
    check_cap(g)?;
    Ok(search(g, sig, true)?.into_iter().next())
}

fn search(g: &FiniteGroup, sig: &Signature, stop_at_first: bool) -> Result<Vec<Vec<u32>>, SkeError> {
    if sig.genus() != 0 {
        return Err(SkeError::PositiveGenus(sig.to_string()));
    }
    if !sig.is_hyperbolic() {
        return Err(SkeError::NotHyperbolic(sig.to_string()));
    }
    let periods = sig.periods();
    let k = periods.len();
    let buckets: Vec<Vec<u32>> = periods
        .iter()
        .map(|&m| {
            if m > g.order() as u64 {
                Vec::new()
            } else {
                g.elements_of_order(m as u32)
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut tuple = vec![0u32; k];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &FiniteGroup,
        buckets: &[Vec<u32>],
        periods: &[u64],
        slot: usize,
        prod: u32,
        tuple: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        stop: bool,
    ) {
        if stop && !out.is_empty() {
            return;
        }
        if slot + 1 == periods.len() {
            // The last entry is forced: c_k = prod^-1.
            let last = g.inv(prod);
            if u64::from(g.element_order(last)) == periods[slot] {
                tuple[slot] = last;
                if generates(g, tuple) {
                    out.push(tuple.clone());
                }
            }
            return;
        }
        for &c in &buckets[slot] {
            tuple[slot] = c;
            rec(g, buckets, periods, slot + 1, g.mul(prod, c), tuple, out, stop);
            if stop && !out.is_empty() {
                return;
            }
        }
    }
    rec(g, &buckets, periods, 0, 0, &mut tuple, &mut out, stop_at_first);
    Ok(out)
}

/// One Aut(G)-orbit of tuples.
#[derive(Clone, Debug, Serialize)]
pub struct SkeOrbit {
    pub rep: Vec<u32>,
    pub size: usize,
}

/// Full orbit decomposition of the tuple set under Aut(G).
pub struct SkeAnalysis {
    pub sig: Signature,
    pub tuples: Vec<Vec<u32>>,
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<SkeOrbit>,
    pub aut_order: usize,
    /// Genus of the covered surfaces (None when no tuples exist).
    pub genus: Option<u64>,
    index: HashMap<Vec<u32>, usize>,
}

impl SkeAnalysis {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    fn orbit_of_tuple(&self, t: &[u32]) -> Option<usize> {
        self.index.get(t).map(|&i| self.orbit_of[i])
    }
}

/// Decompose the tuple set into Aut(G)-orbits, checking semiregularity.
pub fn orbits(g: &FiniteGroup, sig: &Signature) -> Result<SkeAnalysis, SkeError> {
    let cap = check_cap(g)?;
    let tuples = enumerate_tuples(g, sig)?;
    let auts = automorphisms(g, cap)?;
    let aut_order = auts.order();
    let index: HashMap<Vec<u32>, usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; tuples.len()];
    let mut orbits_out: Vec<SkeOrbit> = Vec::new();
    for i in 0..tuples.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let oid = orbits_out.len();
        let mut size = 0usize;
        for phi in &auts.maps {
            let image: Vec<u32> = tuples[i].iter().map(|&c| phi[c as usize]).collect();
            let j = *index
                .get(&image)
                .expect("automorphisms permute the tuple set");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = oid;
                size += 1;
            } else if orbit_of[j] != oid {
                // Two previously distinct orbits met: impossible for a
                // group action; indicates a broken automorphism list.
                panic!("orbit bookkeeping is inconsistent");
            }
        }
        if size != aut_order {
            return Err(SkeError::NotSemiregular {
                orbit: size,
                aut: aut_order,
            });
        }
        orbits_out.push(SkeOrbit {
            rep: tuples[i].clone(),
            size,
        });
    }
    let genus = sig.rh_genus(g.order() as u64).ok();
    Ok(SkeAnalysis {
        sig: sig.clone(),
        tuples,
        orbit_of,
        orbits: orbits_out,
        aut_order,
        genus,
        index,
    })
}

/// An eigenvalue label for a tuple: the slot-2 generator conjugates the
/// normal subgroup <x> of order p by x -> x^(u^j) (families with m2 = 6 or
/// 8) or x -> x^(u^2j) (m2 = 5, where only even powers of u occur). The
/// label is the symmetric residue of j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EigenLabel {
    pub p: u64,
    pub modulus: u64,
    pub j: i64,
}

impl EigenLabel {
    fn symmetric(j: u64, modulus: u64) -> i64 {
        if j > modulus / 2 {
            j as i64 - modulus as i64
        } else {
            j as i64
        }
    }
}

/// Label a tuple by the eigenvalue of its slot-2 entry on the distinguished
/// normal subgroup of prime order. Defined for the split metacyclic and
/// 12p-family descriptors, whose backends expose <x> as indices 0..p.
pub fn eigen_label(g: &FiniteGroup, tuple: &[u32]) -> Result<EigenLabel, SkeError> {
    let (p, u) = match *g.descriptor() {
        GroupDescriptor::SplitMetacyclic { p, u, .. } => (p, u),
        GroupDescriptor::ExampleI { p, u } => (p, u),
        ref d => return Err(SkeError::NoNormalSylow(d.to_string())),
    };
    if tuple.len() < 2 {
        return Err(SkeError::NeedsTriple("eigen_label".into()));
    }
    let b = tuple[1];
    let conj = g.conj(1, b); // b^-1 x b for the canonical generator x = 1
    if u64::from(conj) >= p || conj == 0 {
        return Err(SkeError::NotEigenPower(format!(
            "conjugate of x lands at index {} (outside <x> or trivial)",
            conj
        )));
    }
    let e = u64::from(conj);
    let m2 = u64::from(g.element_order(b));
    match m2 {
        6 | 8 => {
            // e must be u^j with u^j of order 8 (m2 = 8), resp. of order
            // divisible by 3 (m2 = 6, where order-6 slot entries can act
            // through the order-3 part).
            let j = discrete_log(u, e, p, m2).ok_or_else(|| {
                SkeError::NotEigenPower(format!("{} is not a power of u = {}", e, u))
            })?;
            let valid = if m2 == 8 { j % 2 == 1 } else { j % 3 != 0 };
            if !valid {
                return Err(SkeError::NotEigenPower(format!(
                    "eigenvalue u^{} does not label a kernel",
                    j
                )));
            }
            Ok(EigenLabel {
                p,
                modulus: m2,
                j: EigenLabel::symmetric(j, m2),
            })
        }
        5 => {
            // Order-5 slot in the (2,5,10) family: e = (u^2)^j.
            let u2 = u * u % p;
            let j = discrete_log(u2, e, p, 5).ok_or_else(|| {
                SkeError::NotEigenPower(format!("{} is not an even power of u = {}", e, u))
            })?;
            if j == 0 {
                return Err(SkeError::NotEigenPower("eigenvalue 1 is not primitive".into()));
            }
            Ok(EigenLabel {
                p,
                modulus: 5,
                j: EigenLabel::symmetric(j, 5),
            })
        }
        other => Err(SkeError::NotEigenPower(format!(
            "no eigen convention for a slot-2 generator of order {}",
            other
        ))),
    }
}

fn discrete_log(base: u64, target: u64, p: u64, order: u64) -> Option<u64> {
    let mut acc = 1u64;
    for j in 0..order {
        if acc == target {
            return Some(j);
        }
        acc = acc * base % p;
    }
    None
}

/// Braid move on slots 2,3: (a, b, c) -> (a, b c b^-1, b). Preserves the
/// product and, when m2 = m3, the signature.
pub fn braid_swap(g: &FiniteGroup, t: &[u32]) -> Result<Vec<u32>, SkeError> {
    if t.len() != 3 {
        return Err(SkeError::NeedsTriple("braid_swap".into()));
    }
    let (a, b, c) = (t[0], t[1], t[2]);
    Ok(vec![a, g.mul(g.mul(b, c), g.inv(b)), b])
}

/// Reflection: (a, b, c) -> (a^-1, a b^-1 a^-1, a b c^-1 b^-1 a^-1); an
/// orientation-reversing symmetry of the tuple set that preserves the
/// signature and the product-1 condition.
pub fn reflect(g: &FiniteGroup, t: &[u32]) -> Result<Vec<u32>, SkeError> {
    if t.len() != 3 {
        return Err(SkeError::NeedsTriple("reflect".into()));
    }
    let (a, b, c) = (t[0], t[1], t[2]);
    let ai = g.inv(a);
    let s2 = g.mul(g.mul(a, g.inv(b)), ai);
    let s3 = g.mul(g.mul(g.mul(g.mul(a, b), g.inv(c)), g.inv(b)), ai);
    Ok(vec![ai, s2, s3])
}

/// How a tuple move permutes the orbit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMove {
    BraidSwap,
    Reflect,
}

impl std::fmt::Display for TupleMove {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TupleMove::BraidSwap => write!(f, "braid_swap"),
            TupleMove::Reflect => write!(f, "reflect"),
        }
    }
}

/// The permutation a move induces on orbits: orbit_map[i] is the orbit of
/// the image of orbit i's representative. Well defined because the moves
/// commute with the slotwise Aut(G)-action.
pub fn orbit_action(
    g: &FiniteGroup,
    analysis: &SkeAnalysis,
    mv: TupleMove,
) -> Result<Vec<usize>, SkeError> {
    let mut map = Vec::with_capacity(analysis.orbits.len());
    for orbit in &analysis.orbits {
        let image = match mv {
            TupleMove::BraidSwap => braid_swap(g, &orbit.rep)?,
            TupleMove::Reflect => reflect(g, &orbit.rep)?,
        };
        let target = analysis.orbit_of_tuple(&image).ok_or_else(|| {
            SkeError::NotEigenPower(format!(
                "move {} left the tuple set for signature {}",
                mv, analysis.sig
            ))
        })?;
        map.push(target);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signatures::Signature;

    fn build(s: &str) -> FiniteGroup {
        FiniteGroup::construct(&s.parse::<GroupDescriptor>().unwrap()).unwrap()
    }

    #[test]
    fn s4_acts_in_genus_three() {
        // S4 with (3,4,4): q = 1/12, genus 1 + 24/12 = 3.
        let g = build("S(4)");
        let sig = Signature::triangle(3, 4, 4).unwrap();
        let a = orbits(&g, &sig).unwrap();
        assert!(!a.tuples.is_empty());
        assert_eq!(a.aut_order, 24);
        // Semiregularity: tuple count is a multiple of |Aut|.
        assert_eq!(a.tuples.len(), 24 * a.orbit_count());
        assert_eq!(a.genus, Some(3));
    }

    #[test]
    fn spherical_signatures_are_rejected() {
        let g = build("S(4)");
        let sig = Signature::triangle(2, 3, 4).unwrap();
        assert!(matches!(
            enumerate_tuples(&g, &sig),
            Err(SkeError::NotHyperbolic(_))
        ));
    }

    #[test]
    fn tuple_products_and_orders_hold() {
        let g = build("SD(8)");
        let sig = Signature::triangle(2, 4, 8).unwrap();
        for t in enumerate_tuples(&g, &sig).unwrap() {
            assert_eq!(g.mul(g.mul(t[0], t[1]), t[2]), 0);
            assert_eq!(g.element_order(t[0]), 2);
            assert_eq!(g.element_order(t[1]), 4);
            assert_eq!(g.element_order(t[2]), 8);
            assert!(generates(&g, &t));
        }
    }

    #[test]
    fn exists_agrees_with_enumerate() {
        let g = build("A(5)");
        let yes = Signature::triangle(2, 5, 5).unwrap();
        // A5 has no element of order 4.
        let no = Signature::triangle(2, 4, 5).unwrap();
        assert!(exists_tuple(&g, &yes).unwrap().is_some());
        assert!(enumerate_tuples(&g, &no).unwrap().is_empty());
        assert!(exists_tuple(&g, &no).unwrap().is_none());
    }

    #[test]
    fn moves_stay_inside_the_tuple_set() {
        let g = build("MC(17,8,2)");
        let sig = Signature::triangle(2, 8, 8).unwrap();
        let a = orbits(&g, &sig).unwrap();
        assert!(a.orbit_count() > 0);
        for orbit in &a.orbits {
            let braided = braid_swap(&g, &orbit.rep).unwrap();
            assert!(a.orbit_of_tuple(&braided).is_some());
            let reflected = reflect(&g, &orbit.rep).unwrap();
            assert!(a.orbit_of_tuple(&reflected).is_some());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = build("PGL2(13)");
        let sig = Signature::triangle(2, 3, 7).unwrap();
        assert!(matches!(
            enumerate_tuples(&g, &sig),
            Err(SkeError::CapExceeded { order: 2184, .. })
        ));
    }
}
