//! Builders for every descriptor: validation, normal-form backends, and
//! closure of concrete generator models into multiplication tables.

use std::collections::HashMap;
use std::hash::Hash;

use super::{Backend, FiniteGroup, GroupDescriptor, GroupError, TABLE_CAP};
use crate::arith;
use crate::presentations::{parse_presentation, permutation_group, DEFAULT_COSET_LIMIT};

pub(super) fn build(desc: &GroupDescriptor) -> Result<FiniteGroup, GroupError> {
    match desc {
        GroupDescriptor::Cyclic(n) => {
            require(*n >= 1, desc, "n must be at least 1")?;
            check_cap(*n)?;
            let mut g = metacyclic(desc.clone(), *n, 1, 1)?;
            if *n > 1 {
                g.add_generator_name("x", 1);
            }
            Ok(g)
        }
        GroupDescriptor::Dihedral(n) => {
            require(*n >= 2, desc, "n must be at least 2")?;
            check_cap(2 * *n)?;
            let mut g = metacyclic(desc.clone(), *n, 2, n - 1)?;
            g.add_generator_name("c", 1);
            g.add_generator_name("a", *n as u32);
            Ok(g)
        }
        GroupDescriptor::Semidihedral(n) => {
            require(*n >= 4 && *n % 4 == 0, desc, "n must be a multiple of 4")?;
            check_cap(2 * *n)?;
            let mut g = metacyclic(desc.clone(), *n, 2, n / 2 - 1)?;
            g.add_generator_name("c", 1);
            g.add_generator_name("a", *n as u32);
            // b with a b c = 1, i.e. b = a^-1 c^-1.
            let b = g.mul(g.inv(*n as u32), g.inv(1));
            g.add_generator_name("b", b);
            Ok(g)
        }
        GroupDescriptor::SplitMetacyclic { p, k, u } => {
            if !arith::is_prime(*p) {
                return Err(GroupError::NotPrime(*p));
            }
            require(*k >= 1, desc, "k must be at least 1")?;
            require(*u % *p != 0, desc, "u must be a unit mod p")?;
            if arith::pow_mod(*u, *k, *p) != 1 {
                return Err(GroupError::Parameter {
                    desc: desc.to_string(),
                    msg: format!("{}^{} is not 1 mod {}", u, k, p),
                });
            }
            check_cap(p * k)?;
            let mut g = metacyclic(desc.clone(), *p, *k, *u)?;
            g.add_generator_name("x", 1);
            if *k > 1 {
                g.add_generator_name("y", *p as u32);
            }
            Ok(g)
        }
        GroupDescriptor::ExampleI { p, u } => {
            if !arith::is_prime(*p) {
                return Err(GroupError::NotPrime(*p));
            }
            if arith::mult_order(*u, *p) != Some(6) {
                return Err(GroupError::Parameter {
                    desc: desc.to_string(),
                    msg: format!("{} is not a primitive 6th root of unity mod {}", u, p),
                });
            }
            check_cap(12 * *p)?;
            let u_inv = arith::pow_mod(*u, 5, *p); // u^-1 = u^5
            let u_inv_pow: Vec<u64> = (0..6).map(|j| arith::pow_mod(u_inv, j, *p)).collect();
            let backend = Backend::ExampleI { p: *p, u_inv_pow };
            let mut g = FiniteGroup::assemble(desc.clone(), (12 * p) as usize, backend, vec![]);
            g.add_generator_name("x", 1);
            g.add_generator_name("y", *p as u32);
            g.add_generator_name("z", (6 * p) as u32);
            Ok(g)
        }
        GroupDescriptor::AlmostMetacyclicIV(n) => {
            require(*n >= 3 && *n % 3 == 0, desc, "n must be a positive multiple of 3")?;
            check_cap(8 * *n)?;
            build_affine(desc, *n / 3, AffineFamily::Iv)
        }
        GroupDescriptor::AlmostMetacyclicV(n) => {
            require(*n >= 2 && *n % 2 == 0, desc, "n must be a positive multiple of 2")?;
            check_cap(4 * *n)?;
            build_affine(desc, *n / 2, AffineFamily::V)
        }
        GroupDescriptor::Symmetric(n) => {
            require(*n >= 2, desc, "n must be at least 2")?;
            check_cap(desc.order().ok_or_else(|| too_big(desc))?)?;
            let id: Vec<u8> = (0..*n as u8).collect();
            let mut x = id.clone();
            x.swap(0, 1);
            let mut y = id.clone();
            y.rotate_left(1);
            table_group(desc, vec![("x".into(), x), ("y".into(), y)], perm_mul)
        }
        GroupDescriptor::Alternating(n) => {
            require(*n >= 3, desc, "n must be at least 3")?;
            check_cap(desc.order().ok_or_else(|| too_big(desc))?)?;
            let id: Vec<u8> = (0..*n as u8).collect();
            let mut x = id.clone(); // 3-cycle (0 1 2)
            x[0] = 1;
            x[1] = 2;
            x[2] = 0;
            let mut y = id.clone();
            if *n % 2 == 1 {
                y.rotate_left(1); // n-cycle is even for odd n
            } else {
                y[1..].rotate_left(1); // (1 2 ... n-1), even for even n
            }
            table_group(desc, vec![("x".into(), x), ("y".into(), y)], perm_mul)
        }
        GroupDescriptor::Psl2(q) | GroupDescriptor::Pgl2(q) => {
            let projective = matches!(desc, GroupDescriptor::Pgl2(_));
            if !arith::is_prime(*q) {
                return Err(GroupError::NotPrime(*q));
            }
            require(*q >= 3 && *q <= 13, desc, "q must be an odd prime at most 13")?;
            check_cap(desc.order().unwrap())?;
            let q = *q;
            let canon = move |m: [u64; 4]| -> [u64; 4] {
                if projective {
                    let lead = m.iter().copied().find(|&x| x != 0).expect("nonzero matrix");
                    let inv = arith::pow_mod(lead, q - 2, q);
                    [m[0] * inv % q, m[1] * inv % q, m[2] * inv % q, m[3] * inv % q]
                } else {
                    let neg = [
                        (q - m[0]) % q,
                        (q - m[1]) % q,
                        (q - m[2]) % q,
                        (q - m[3]) % q,
                    ];
                    if neg < m {
                        neg
                    } else {
                        m
                    }
                }
            };
            let mul = move |a: &[u64; 4], b: &[u64; 4]| -> [u64; 4] {
                canon([
                    (a[0] * b[0] + a[1] * b[2]) % q,
                    (a[0] * b[1] + a[1] * b[3]) % q,
                    (a[2] * b[0] + a[3] * b[2]) % q,
                    (a[2] * b[1] + a[3] * b[3]) % q,
                ])
            };
            let s = canon([0, q - 1, 1, 0]);
            let t = canon([1, 1, 0, 1]);
            let mut gens = vec![("s".to_string(), s), ("t".to_string(), t)];
            if projective {
                // An element of non-square determinant to reach all of PGL2.
                let z = (2..q)
                    .find(|&z| arith::pow_mod(z, (q - 1) / 2, q) != 1)
                    .expect("non-residue exists");
                gens.push(("d".to_string(), canon([z, 0, 0, 1])));
            }
            table_group(desc, gens, mul)
        }
        GroupDescriptor::FromPresentation(text) => {
            let pres = parse_presentation(text)?;
            let g = permutation_group(&pres, DEFAULT_COSET_LIMIT)?;
            check_cap(g.order() as u64)?;
            Ok(g)
        }
    }
}

fn require(cond: bool, desc: &GroupDescriptor, msg: &str) -> Result<(), GroupError> {
    if cond {
        Ok(())
    } else {
        Err(GroupError::Parameter {
            desc: desc.to_string(),
            msg: msg.to_string(),
        })
    }
}

fn too_big(_desc: &GroupDescriptor) -> GroupError {
    GroupError::CapExceeded {
        order: usize::MAX,
        cap: TABLE_CAP,
    }
}

fn check_cap(order: u64) -> Result<(), GroupError> {
    if order as usize > TABLE_CAP {
        Err(GroupError::CapExceeded {
            order: order as usize,
            cap: TABLE_CAP,
        })
    } else {
        Ok(())
    }
}

/// Normal-form backend for C_n x| C_k with y^-1 x y = x^u.
fn metacyclic(
    desc: GroupDescriptor,
    n: u64,
    k: u64,
    u: u64,
) -> Result<FiniteGroup, GroupError> {
    // u^-j mod n for each j; u is invertible mod n with u^k = 1, so
    // u^-1 = u^(k-1).
    let u = u % n.max(1);
    let u_inv = arith::pow_mod(u, k - 1, n.max(2)) % n.max(1);
    let u_inv_pow: Vec<u64> = (0..k)
        .map(|j| {
            if n <= 1 {
                0
            } else {
                arith::pow_mod(u_inv, j, n)
            }
        })
        .collect();
    let backend = Backend::Metacyclic { n, k, u_inv_pow };
    Ok(FiniteGroup::assemble(desc, (n * k) as usize, backend, vec![]))
}

#[allow(clippy::ptr_arg)]
fn perm_mul(a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
    // Apply a, then b.
    a.iter().map(|&i| b[i as usize]).collect()
}

/// One fiber map of the affine models: a signed permutation of six base
/// points with a translation in Z_m over each.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct AffineMap {
    perm: [u8; 6],
    flip: bool, // acts on the fiber as t -> -t + shift when set
    shift: [u64; 6],
}

enum AffineFamily {
    Iv,
    V,
}

/// The two almost-metacyclic families as groups of affine maps on six
/// Z_m-fibers. The models were found by solving the defining relations over
/// the integers; the expected orders are re-checked on construction.
fn build_affine(
    desc: &GroupDescriptor,
    m: u64,
    family: AffineFamily,
) -> Result<FiniteGroup, GroupError> {
    let (a_perm, a_shift, c_perm, c_shift): ([u8; 6], [u64; 6], [u8; 6], [u64; 6]) = match family
    {
        // Base points are the six face centers of a cube; c acts by the
        // order-3 rotation (x,y,z) -> (z,x,y), a by (x,y,z) -> (y,x,-z).
        AffineFamily::Iv => (
            [1, 0, 5, 4, 3, 2],
            [0; 6],
            [1, 2, 0, 4, 5, 3],
            [1, 0, 0, 1, 0, 0],
        ),
        // Base points are the four vertices of a square plus two poles.
        AffineFamily::V => (
            [0, 3, 2, 1, 5, 4],
            [(2 * m - 2) % m, 0, 0, 0, 0, 0],
            [1, 0, 3, 2, 5, 4],
            [1, 0, 1, 0, 1, 0],
        ),
    };
    let a = AffineMap {
        perm: a_perm,
        flip: true,
        shift: a_shift.map(|x| x % m),
    };
    let c = AffineMap {
        perm: c_perm,
        flip: false,
        shift: c_shift.map(|x| x % m),
    };
    let mul = move |g: &AffineMap, h: &AffineMap| -> AffineMap {
        // Composite: apply g, then h.
        let mut perm = [0u8; 6];
        let mut shift = [0u64; 6];
        for i in 0..6 {
            perm[i] = h.perm[g.perm[i] as usize];
            let v = if h.flip { (m - g.shift[i]) % m } else { g.shift[i] };
            shift[i] = (v + h.shift[g.perm[i] as usize]) % m;
        }
        AffineMap {
            perm,
            flip: g.flip ^ h.flip,
            shift,
        }
    };
    let mut g = table_group(
        desc,
        vec![("a".to_string(), a.clone()), ("c".to_string(), c)],
        mul,
    )?;
    let expected = desc.order().unwrap() as usize;
    if g.order() != expected {
        return Err(GroupError::Parameter {
            desc: desc.to_string(),
            msg: format!("affine model closed at order {}, expected {}", g.order(), expected),
        });
    }
    let b = {
        let ai = g.generator("a").unwrap();
        let ci = g.generator("c").unwrap();
        g.mul(g.inv(ai), g.inv(ci))
    };
    g.add_generator_name("b", b);
    Ok(g)
}

/// Close a set of concrete generators under multiplication and cache the
/// full table. Element 0 is the identity; the rest are numbered in
/// breadth-first discovery order, so construction is deterministic.
fn table_group<E, F>(
    desc: &GroupDescriptor,
    gens: Vec<(String, E)>,
    mul: F,
) -> Result<FiniteGroup, GroupError>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    // The identity is g^ord(g) for any generator g; find it by cycling the
    // first generator (groups here are nontrivial).
    let first = &gens
        .first()
        .expect("table groups need at least one generator")
        .1;
    let mut id = mul(first, first);
    let mut prev = first.clone();
    loop {
        // id runs through powers g^2, g^3, ...; stop when g^k = g, i.e. the
        // previous power was the identity.
        if &id == first {
            id = prev;
            break;
        }
        prev = id.clone();
        id = mul(&id, first);
    }
    let mut elems: Vec<E> = vec![id.clone()];
    let mut index: HashMap<E, u32> = HashMap::new();
    index.insert(id, 0);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for (_, g) in &gens {
            let nxt = mul(&cur, g);
            if !index.contains_key(&nxt) {
                if elems.len() >= TABLE_CAP {
                    return Err(GroupError::CapExceeded {
                        order: elems.len() + 1,
                        cap: TABLE_CAP,
                    });
                }
                index.insert(nxt.clone(), elems.len() as u32);
                elems.push(nxt);
            }
        }
    }
    let n = elems.len();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index[&mul(&elems[i], &elems[j])];
        }
    }
    let named: Vec<(String, u32)> = gens
        .iter()
        .map(|(name, g)| (name.clone(), index[g]))
        .collect();
    Ok(FiniteGroup::from_table(desc.clone(), table, n, named))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(desc: &str) -> usize {
        let d: GroupDescriptor = desc.parse().unwrap();
        FiniteGroup::construct(&d).unwrap().order()
    }

    #[test]
    fn structured_backends() {
        assert_eq!(order_of("C(12)"), 12);
        assert_eq!(order_of("D(6)"), 12);
        assert_eq!(order_of("SD(8)"), 16);
        assert_eq!(order_of("MC(11,10,2)"), 110);
        assert_eq!(order_of("EXI(7)"), 84);
    }

    #[test]
    fn table_backends() {
        assert_eq!(order_of("S(4)"), 24);
        assert_eq!(order_of("S(5)"), 120);
        assert_eq!(order_of("A(5)"), 60);
        assert_eq!(order_of("PSL2(7)"), 168);
        assert_eq!(order_of("PGL2(7)"), 336);
        assert_eq!(order_of("PSL2(13)"), 1092);
    }

    #[test]
    fn affine_families_close_at_the_right_order() {
        for m in 1..=8u64 {
            assert_eq!(order_of(&format!("AMIV({})", 3 * m)), (24 * m) as usize);
            assert_eq!(order_of(&format!("AMV({})", 2 * m)), (8 * m) as usize);
        }
    }

    #[test]
    fn amiv_generator_orders() {
        let g = FiniteGroup::construct(&"AMIV(9)".parse().unwrap()).unwrap();
        assert_eq!(g.order(), 72);
        let (a, b, c) = (
            g.generator("a").unwrap(),
            g.generator("b").unwrap(),
            g.generator("c").unwrap(),
        );
        assert_eq!(g.element_order(a), 2);
        assert_eq!(g.element_order(b), 4);
        assert_eq!(g.element_order(c), 9);
        // a b c = 1 and (c^3)^a = c^-3.
        assert_eq!(g.mul(g.mul(a, b), c), 0);
        let c3 = g.pow(c, 3);
        assert_eq!(g.conj(c3, a), g.inv(c3));
    }

    #[test]
    fn amv_generator_orders() {
        let g = FiniteGroup::construct(&"AMV(10)".parse().unwrap()).unwrap();
        assert_eq!(g.order(), 40);
        let (a, b, c) = (
            g.generator("a").unwrap(),
            g.generator("b").unwrap(),
            g.generator("c").unwrap(),
        );
        assert_eq!(g.element_order(a), 2);
        assert_eq!(g.element_order(b), 4);
        assert_eq!(g.element_order(c), 10);
        assert_eq!(g.mul(g.mul(a, b), c), 0);
        let c2 = g.pow(c, 2);
        assert_eq!(g.conj(c2, a), g.inv(c2));
    }

    #[test]
    fn split_metacyclic_relations() {
        let g = FiniteGroup::construct(&"MC(11,10,2)".parse().unwrap()).unwrap();
        let x = g.generator("x").unwrap();
        let y = g.generator("y").unwrap();
        assert_eq!(g.element_order(x), 11);
        assert_eq!(g.element_order(y), 10);
        // y^-1 x y = x^2.
        assert_eq!(g.conj(x, y), g.pow(x, 2));
    }

    #[test]
    fn example_i_relations() {
        let g = FiniteGroup::construct(&"EXI(7)".parse().unwrap()).unwrap();
        let (x, y, z) = (
            g.generator("x").unwrap(),
            g.generator("y").unwrap(),
            g.generator("z").unwrap(),
        );
        assert_eq!(g.element_order(x), 7);
        assert_eq!(g.element_order(y), 6);
        assert_eq!(g.element_order(z), 2);
        assert_eq!(g.conj(x, y), g.pow(x, 3)); // canonical u = 3 mod 7
        assert_eq!(g.mul(y, z), g.mul(z, y));
        assert_eq!(g.mul(x, z), g.mul(z, x));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            FiniteGroup::construct(&GroupDescriptor::SplitMetacyclic { p: 7, k: 5, u: 2 }),
            Err(GroupError::Parameter { .. })
        ));
        assert!(matches!(
            FiniteGroup::construct(&GroupDescriptor::Semidihedral(10)),
            Err(GroupError::Parameter { .. })
        ));
        assert!(matches!(
            FiniteGroup::construct(&GroupDescriptor::Symmetric(8)),
            Err(GroupError::CapExceeded { .. })
        ));
        assert!(matches!(
            FiniteGroup::construct(&GroupDescriptor::ExampleI { p: 7, u: 2 }),
            Err(GroupError::Parameter { .. })
        ));
        assert!(matches!(
            FiniteGroup::construct(&GroupDescriptor::Psl2(9)),
            Err(GroupError::NotPrime(9))
        ));
    }

    #[test]
    fn cyclic_is_additive() {
        let g = FiniteGroup::construct(&GroupDescriptor::Cyclic(12)).unwrap();
        assert_eq!(g.mul(7, 8), 3);
        assert_eq!(g.inv(5), 7);
        assert_eq!(g.element_order(4), 3);
    }
}
