//! Concrete finite group models.
//!
//! Groups are handled through a uniform interface: elements are indices
//! 0..order with 0 the identity, and multiplication is answered either by a
//! structured normal-form backend (cyclic, dihedral, semidihedral, split
//! metacyclic, and the 12p-element family) or by a cached multiplication
//! table built from a faithful concrete model (permutations, matrices over
//! F_q, or affine maps for the two "almost metacyclic" families). Coset
//! enumeration is never needed to realize any of these groups.

mod analysis;
mod construct;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use analysis::{
    automorphisms, closure, generates, structure, sylow_count, AutomorphismGroup,
    StructureReport, SylowReport,
};

use crate::arith;
use crate::presentations::PresentationError;

/// Largest order realized through a full multiplication table.
pub const TABLE_CAP: usize = 5000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid parameters for {desc}: {msg}")]
    Parameter { desc: String, msg: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("cannot parse group descriptor {0:?}")]
    ParseDescriptor(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Canonical name of a finite group the census knows how to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// C(n), cyclic of order n with additive element encoding.
    Cyclic(u64),
    /// D(n), dihedral of order 2n.
    Dihedral(u64),
    /// SD(n): < a, c | a^2, c^n, c^a = c^(n/2 - 1) > of order 2n, 4 | n.
    Semidihedral(u64),
    /// MC(p,k,u): C_p x| C_k with y^-1 x y = x^u, u^k = 1 mod p.
    SplitMetacyclic { p: u64, k: u64, u: u64 },
    /// EXI(p,u): (C_p x| C_6) x C_2 of order 12p, u a primitive 6th root
    /// mod p.
    ExampleI { p: u64, u: u64 },
    /// AMIV(n): order 8n, 3 | n; the (2,4,n) group <a,b,c | a^2, b^4, c^n,
    /// abc, (c^3)^a = c^-3>-like quotient realized by affine maps.
    AlmostMetacyclicIV(u64),
    /// AMV(n): order 4n, 2 | n; the companion (2,4,n) family.
    AlmostMetacyclicV(u64),
    /// S(n), symmetric group.
    Symmetric(u32),
    /// A(n), alternating group.
    Alternating(u32),
    /// PSL2(q), q an odd prime <= 13.
    Psl2(u64),
    /// PGL2(q), q an odd prime <= 13.
    Pgl2(u64),
    /// A finite group given by presentation text; realized through coset
    /// enumeration of the trivial subgroup.
    FromPresentation(String),
}

impl GroupDescriptor {
    /// Split metacyclic with the canonical twist: the least u of
    /// multiplicative order exactly k mod p.
    pub fn split_metacyclic(p: u64, k: u64) -> Result<GroupDescriptor, GroupError> {
        if !arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let u = arith::least_root_of_order(k, p).ok_or_else(|| GroupError::Parameter {
            desc: format!("MC({},{})", p, k),
            msg: format!("no element of multiplicative order {} mod {}", k, p),
        })?;
        Ok(GroupDescriptor::SplitMetacyclic { p, k, u })
    }

    /// The 12p family with the canonical primitive 6th root mod p.
    pub fn example_i(p: u64) -> Result<GroupDescriptor, GroupError> {
        if !arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let u = arith::least_root_of_order(6, p).ok_or_else(|| GroupError::Parameter {
            desc: format!("EXI({})", p),
            msg: format!("no primitive 6th root of unity mod {}", p),
        })?;
        Ok(GroupDescriptor::ExampleI { p, u })
    }

    /// Order of the group this descriptor names (before construction).
    pub fn order(&self) -> Option<u64> {
        Some(match self {
            GroupDescriptor::Cyclic(n) => *n,
            GroupDescriptor::Dihedral(n) => 2 * n,
            GroupDescriptor::Semidihedral(n) => 2 * n,
            GroupDescriptor::SplitMetacyclic { p, k, .. } => p * k,
            GroupDescriptor::ExampleI { p, .. } => 12 * p,
            GroupDescriptor::AlmostMetacyclicIV(n) => 8 * n,
            GroupDescriptor::AlmostMetacyclicV(n) => 4 * n,
            GroupDescriptor::Symmetric(n) => factorial(*n)?,
            GroupDescriptor::Alternating(n) => factorial(*n)? / 2,
            GroupDescriptor::Psl2(q) => q * (q * q - 1) / 2,
            GroupDescriptor::Pgl2(q) => q * (q * q - 1),
            GroupDescriptor::FromPresentation(_) => return None,
        })
    }
}

fn factorial(n: u32) -> Option<u64> {
    let mut acc = 1u64;
    for i in 2..=u64::from(n) {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "C({})", n),
            GroupDescriptor::Dihedral(n) => write!(f, "D({})", n),
            GroupDescriptor::Semidihedral(n) => write!(f, "SD({})", n),
            GroupDescriptor::SplitMetacyclic { p, k, u } => write!(f, "MC({},{},{})", p, k, u),
            GroupDescriptor::ExampleI { p, u } => write!(f, "EXI({},{})", p, u),
            GroupDescriptor::AlmostMetacyclicIV(n) => write!(f, "AMIV({})", n),
            GroupDescriptor::AlmostMetacyclicV(n) => write!(f, "AMV({})", n),
            GroupDescriptor::Symmetric(n) => write!(f, "S({})", n),
            GroupDescriptor::Alternating(n) => write!(f, "A({})", n),
            GroupDescriptor::Psl2(q) => write!(f, "PSL2({})", q),
            GroupDescriptor::Pgl2(q) => write!(f, "PGL2({})", q),
            GroupDescriptor::FromPresentation(text) => write!(f, "{}", text),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let t = s.trim();
        if t.starts_with('<') {
            return Ok(GroupDescriptor::FromPresentation(t.to_string()));
        }
        let bad = || GroupError::ParseDescriptor(s.to_string());
        let open = t.find('(').ok_or_else(bad)?;
        let head = &t[..open];
        let args: Vec<u64> = t[open + 1..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .split(',')
            .map(|a| a.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (head, args.as_slice()) {
            ("C", [n]) => Ok(GroupDescriptor::Cyclic(*n)),
            ("D", [n]) => Ok(GroupDescriptor::Dihedral(*n)),
            ("SD", [n]) => Ok(GroupDescriptor::Semidihedral(*n)),
            ("MC", [p, k]) => GroupDescriptor::split_metacyclic(*p, *k),
            ("MC", [p, k, u]) => Ok(GroupDescriptor::SplitMetacyclic {
                p: *p,
                k: *k,
                u: *u,
            }),
            ("EXI", [p]) => GroupDescriptor::example_i(*p),
            ("EXI", [p, u]) => Ok(GroupDescriptor::ExampleI { p: *p, u: *u }),
            ("AMIV", [n]) => Ok(GroupDescriptor::AlmostMetacyclicIV(*n)),
            ("AMV", [n]) => Ok(GroupDescriptor::AlmostMetacyclicV(*n)),
            ("S", [n]) => Ok(GroupDescriptor::Symmetric(*n as u32)),
            ("A", [n]) => Ok(GroupDescriptor::Alternating(*n as u32)),
            ("PSL2", [q]) => Ok(GroupDescriptor::Psl2(*q)),
            ("PGL2", [q]) => Ok(GroupDescriptor::Pgl2(*q)),
            _ => Err(bad()),
        }
    }
}

impl serde::Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

pub(crate) enum Backend {
    /// C_n x| C_k in normal form x^i y^j, encoded i + n*j.
    /// u_inv_pow[j] = u^-j mod n.
    Metacyclic { n: u64, k: u64, u_inv_pow: Vec<u64> },
    /// (C_p x| C_6) x C_2 in normal form x^i y^j z^l, encoded i + p*(j + 6l).
    ExampleI { p: u64, u_inv_pow: Vec<u64> },
    /// Full multiplication table, row-major: table[a * n + b] = a * b.
    Table { n: usize, table: Vec<u32> },
}

/// A concrete finite group. Elements are 0..order(), 0 is the identity.
pub struct FiniteGroup {
    descriptor: GroupDescriptor,
    order: usize,
    backend: Backend,
    generators: Vec<(String, u32)>,
    inverse: Vec<u32>,
    element_orders: Vec<u32>,
}

impl FiniteGroup {
    pub fn construct(desc: &GroupDescriptor) -> Result<FiniteGroup, GroupError> {
        construct::build(desc)
    }

    pub(crate) fn assemble(
        descriptor: GroupDescriptor,
        order: usize,
        backend: Backend,
        generators: Vec<(String, u32)>,
    ) -> FiniteGroup {
        let mut g = FiniteGroup {
            descriptor,
            order,
            backend,
            generators,
            inverse: Vec::new(),
            element_orders: Vec::new(),
        };
        let mut inverse = vec![0u32; order];
        let mut orders = vec![1u32; order];
        for x in 0..order as u32 {
            let mut acc = x;
            let mut ord = 1u32;
            let mut prev = 0u32;
            while acc != 0 {
                prev = acc;
                acc = g.mul(acc, x);
                ord += 1;
            }
            orders[x as usize] = ord;
            inverse[x as usize] = prev; // x^(ord-1); 0 for the identity
        }
        g.inverse = inverse;
        g.element_orders = orders;
        g
    }

    /// Wrap an explicit multiplication table (used for presented groups).
    pub fn from_table(
        descriptor: GroupDescriptor,
        table: Vec<u32>,
        n: usize,
        generators: Vec<(String, u32)>,
    ) -> FiniteGroup {
        FiniteGroup::assemble(descriptor, n, Backend::Table { n, table }, generators)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.backend {
            Backend::Metacyclic { n, k, u_inv_pow } => {
                let (n, k) = (*n, *k);
                let (i1, j1) = (u64::from(a) % n, u64::from(a) / n);
                let (i2, j2) = (u64::from(b) % n, u64::from(b) / n);
                let i = (i1 + i2 * u_inv_pow[j1 as usize]) % n;
                let j = (j1 + j2) % k;
                (i + n * j) as u32
            }
            Backend::ExampleI { p, u_inv_pow } => {
                let p = *p;
                let (i1, r1) = (u64::from(a) % p, u64::from(a) / p);
                let (i2, r2) = (u64::from(b) % p, u64::from(b) / p);
                let (j1, l1) = (r1 % 6, r1 / 6);
                let (j2, l2) = (r2 % 6, r2 / 6);
                let i = (i1 + i2 * u_inv_pow[j1 as usize]) % p;
                let j = (j1 + j2) % 6;
                let l = (l1 + l2) % 2;
                (i + p * (j + 6 * l)) as u32
            }
            Backend::Table { n, table } => table[a as usize * n + b as usize],
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.element_orders[a as usize]
    }

    /// b^-1 a b.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut acc = 0u32;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, x)| x)
    }

    pub(crate) fn add_generator_name(&mut self, name: &str, x: u32) {
        self.generators.push((name.to_string(), x));
    }

    pub fn elements_of_order(&self, m: u32) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&x| self.element_orders[x as usize] == m)
            .collect()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.descriptor, self.order)
    }
}
