//! Todd-Coxeter coset enumeration, HLT strategy with full coincidence
//! processing. Cosets are numbered in order of first definition, which makes
//! every run deterministic; coset 0 is the subgroup itself.

use std::collections::HashMap;

use super::{Presentation, PresentationError, Word};
use crate::groups::FiniteGroup;

/// Default cap on live cosets before giving up.
pub const DEFAULT_COSET_LIMIT: usize = 2_000_000;

const UNDEF: u32 = u32::MAX;

/// A completed coset table: the right action of each generator on the coset
/// space of the subgroup. Coset 0 is the subgroup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub cosets: usize,
    /// action[g][c] = c * generator g (one permutation per generator).
    pub action: Vec<Vec<u32>>,
}

struct Enumerator {
    ncols: usize,
    tab: Vec<u32>, // coset-major
    parent: Vec<u32>,
    alive: usize,
    limit: usize,
}

impl Enumerator {
    fn new(ncols: usize, limit: usize) -> Self {
        let mut e = Enumerator {
            ncols,
            tab: Vec::new(),
            parent: Vec::new(),
            alive: 0,
            limit,
        };
        e.new_coset();
        e
    }

    fn new_coset(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.tab.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.alive += 1;
        id
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.tab[c as usize * self.ncols + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.tab[c as usize * self.ncols + col] = v;
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn is_alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, PresentationError> {
        let d = self.new_coset();
        if self.alive > self.limit {
            return Err(PresentationError::LimitExceeded { limit: self.limit });
        }
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    /// Merge the classes of a and b, queueing the loser for table repair.
    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.alive -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let dead = queue[qi];
            qi += 1;
            for col in 0..self.ncols {
                let target = self.get(dead, col);
                if target == UNDEF {
                    continue;
                }
                // Remove the back-reference before transplanting the edge.
                self.set(target, col ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let existing = self.get(mu, col);
                if existing != UNDEF {
                    self.merge(nu, existing, &mut queue);
                } else {
                    let back = self.get(nu, col ^ 1);
                    if back != UNDEF {
                        self.merge(mu, back, &mut queue);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Trace `letters` from coset `start`, defining cosets to close the gap
    /// (HLT scan-and-fill).
    fn scan_and_fill(&mut self, start: u32, letters: &[usize]) -> Result<(), PresentationError> {
        if letters.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i: i64 = 0;
        let mut j: i64 = letters.len() as i64 - 1;
        loop {
            while i <= j {
                let next = self.get(f, letters[i as usize]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let prev = self.get(b, letters[j as usize] ^ 1);
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i {
                // The backward scan met or passed the forward one: the whole
                // word is traced and the endpoints must agree.
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i {
                self.set(f, letters[i as usize], b);
                self.set(b, letters[i as usize] ^ 1, f);
                return Ok(());
            }
            f = self.define(f, letters[i as usize])?;
            i += 1;
        }
    }
}

fn word_columns(w: &Word) -> Vec<usize> {
    w.letters()
        .into_iter()
        .map(|(g, positive)| 2 * g + usize::from(!positive))
        .collect()
}

/// Enumerate the cosets of the subgroup generated by `subgroup` in the group
/// presented by `pres`. Fails with `LimitExceeded` once more than `limit`
/// cosets are alive at once (in particular on infinite-index subgroups).
pub fn coset_enumerate(
    pres: &Presentation,
    subgroup: &[Word],
    limit: usize,
) -> Result<CosetTable, PresentationError> {
    let ncols = 2 * pres.ngens();
    let mut e = Enumerator::new(ncols.max(2), limit);
    let relators: Vec<Vec<usize>> = pres.relators.iter().map(word_columns).collect();
    for w in subgroup {
        e.scan_and_fill(0, &word_columns(w))?;
    }
    let mut alpha = 0u32;
    while (alpha as usize) < e.parent.len() {
        if e.is_alive(alpha) {
            for r in &relators {
                e.scan_and_fill(alpha, r)?;
                if !e.is_alive(alpha) {
                    break;
                }
            }
            if e.is_alive(alpha) {
                for col in 0..ncols {
                    if e.get(alpha, col) == UNDEF {
                        e.define(alpha, col)?;
                    }
                }
            }
        }
        alpha += 1;
    }
    // Compact live cosets in numeric order.
    let mut index = HashMap::new();
    let mut live = Vec::new();
    for c in 0..e.parent.len() as u32 {
        if e.is_alive(c) {
            index.insert(c, live.len() as u32);
            live.push(c);
        }
    }
    let mut action = vec![vec![0u32; live.len()]; pres.ngens()];
    for (new_idx, &c) in live.iter().enumerate() {
        for (g, col) in action.iter_mut().enumerate() {
            let t = e.get(c, 2 * g);
            debug_assert_ne!(t, UNDEF);
            let t = e.rep(t);
            col[new_idx] = index[&t];
        }
    }
    Ok(CosetTable {
        cosets: live.len(),
        action,
    })
}

/// The regular representation of the presented group, realized as a concrete
/// `FiniteGroup` with a full multiplication table. Enumerates cosets of the
/// trivial subgroup, so the group order is bounded by `limit`.
pub fn permutation_group(
    pres: &Presentation,
    limit: usize,
) -> Result<FiniteGroup, PresentationError> {
    let table = coset_enumerate(pres, &[], limit)?;
    let n = table.cosets;
    if n > crate::groups::TABLE_CAP {
        return Err(PresentationError::CapExceeded {
            order: n,
            cap: crate::groups::TABLE_CAP,
        });
    }
    // perm[j] = right multiplication by the element of coset j; built by
    // walking the coset graph from the identity coset.
    let mut perms: Vec<Option<Vec<u32>>> = vec![None; n];
    perms[0] = Some((0..n as u32).collect());
    let mut stack = vec![0u32];
    while let Some(i) = stack.pop() {
        for g in 0..pres.ngens() {
            let fwd = table.action[g][i as usize];
            if perms[fwd as usize].is_none() {
                let p = perms[i as usize].as_ref().unwrap();
                let composed: Vec<u32> =
                    p.iter().map(|&x| table.action[g][x as usize]).collect();
                perms[fwd as usize] = Some(composed);
                stack.push(fwd);
            }
            // Inverse edge: find j with j * g = i.
            let back = (0..n as u32).find(|&j| table.action[g][j as usize] == i);
            if let Some(j) = back {
                if perms[j as usize].is_none() {
                    let p = perms[i as usize].as_ref().unwrap();
                    // element(j) = element(i) * g^-1: invert the g-action.
                    let mut inv_g = vec![0u32; n];
                    for x in 0..n as u32 {
                        inv_g[table.action[g][x as usize] as usize] = x;
                    }
                    let composed: Vec<u32> = p.iter().map(|&x| inv_g[x as usize]).collect();
                    perms[j as usize] = Some(composed);
                    stack.push(j);
                }
            }
        }
    }
    let mut mult = vec![0u32; n * n];
    for j in 0..n {
        let p = perms[j].take().expect("coset graph is connected");
        for i in 0..n {
            mult[i * n + j] = p[i];
        }
    }
    let gens: Vec<(String, u32)> = pres
        .generators
        .iter()
        .enumerate()
        .map(|(g, name)| (name.clone(), table.action[g][0]))
        .collect();
    Ok(FiniteGroup::from_table(
        crate::groups::GroupDescriptor::FromPresentation(pres.to_string()),
        mult,
        n,
        gens,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    #[test]
    fn trivial_and_cyclic() {
        let p = parse_presentation("<x | x^5>").unwrap();
        let t = coset_enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.cosets, 5);
        let sub = Word::from_syllables(vec![(0, 1)]);
        let t = coset_enumerate(&p, &[sub], 100).unwrap();
        assert_eq!(t.cosets, 1);
    }

    #[test]
    fn triangle_groups() {
        // (2,3,3) -> A4, (2,3,4) -> S4, (2,3,5) -> A5.
        for (n, order) in [(3u64, 12), (4, 24), (5, 60)] {
            let p = Presentation::triangle(2, 3, n);
            let t = coset_enumerate(&p, &[], 10_000).unwrap();
            assert_eq!(t.cosets, order, "triangle (2,3,{})", n);
        }
    }

    #[test]
    fn subgroup_index() {
        // In (2,3,5) = A5 the subgroup <y> (order 3) has index 20.
        let p = Presentation::triangle(2, 3, 5);
        let sub = Word::from_syllables(vec![(1, 1)]);
        let t = coset_enumerate(&p, &[sub], 10_000).unwrap();
        assert_eq!(t.cosets, 20);
    }

    #[test]
    fn limit_is_an_error_for_infinite_groups() {
        let p = parse_presentation("<x, y | x^2>").unwrap();
        match coset_enumerate(&p, &[], 500) {
            Err(PresentationError::LimitExceeded { limit }) => assert_eq!(limit, 500),
            other => panic!("expected LimitExceeded, got {:?}", other.map(|t| t.cosets)),
        }
    }

    #[test]
    fn coincidences_collapse_correctly() {
        // Adding a relator that kills the group.
        let p = parse_presentation("<x, y | x^6, y^4, x y^-1>").unwrap();
        let t = coset_enumerate(&p, &[], 1000).unwrap();
        assert_eq!(t.cosets, 2);
    }
}
