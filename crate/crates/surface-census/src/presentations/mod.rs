//! Finite group presentations: a small relator language, HLT-style coset
//! enumeration with coincidence handling, and abelianization via Smith
//! normal form.

mod abelian;
mod coset;
mod parse;

use std::fmt;

use thiserror::Error;

pub use abelian::{abelian_invariants, abelianization, smith_normal_form, AbelianQuotient};
pub use coset::{coset_enumerate, permutation_group, CosetTable, DEFAULT_COSET_LIMIT};
pub use parse::parse_presentation;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator {name:?} at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("coset enumeration exceeded the limit of {limit} live cosets")]
    LimitExceeded { limit: usize },
    #[error("order {order} exceeds the table cap {cap}")]
    CapExceeded { order: usize, cap: usize },
}

/// A free-group word in the generators, stored as freely reduced syllables
/// (generator index, nonzero exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_syllables(raw: Vec<(usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in raw {
            w.push(g, e);
        }
        w
    }

    /// Append a syllable, merging and cancelling with the tail as needed.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    pub fn extend(&mut self, other: &Word) {
        for &(g, e) in &other.syllables {
            self.push(g, e);
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Flatten to single letters: generator index plus a sign.
    pub fn letters(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let positive = e > 0;
            for _ in 0..e.unsigned_abs() {
                out.push((g, positive));
            }
        }
        out
    }

    /// Exponent sum per generator (image in the free abelianization).
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for &(g, e) in &self.syllables {
            v[g] += e;
        }
        v
    }

    fn display(&self, names: &[String]) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finite presentation < generators | relators >.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation {
            generators,
            relators,
        }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    /// Triangle presentation < x, y | x^l, y^m, (xy)^n >.
    pub fn triangle(l: u64, m: u64, n: u64) -> Presentation {
        let x = Word::from_syllables(vec![(0, l as i64)]);
        let y = Word::from_syllables(vec![(1, m as i64)]);
        let mut xy = Word::identity();
        for _ in 0..n {
            xy.push(0, 1);
            xy.push(1, 1);
        }
        Presentation::new(vec!["x".into(), "y".into()], vec![x, y, xy])
    }

    /// Semidihedral-type presentation < a, c | a^2, c^n, a^-1 c a c^-(n/2-1) >.
    pub fn semidihedral(n: u64) -> Presentation {
        let m = n / 2;
        let rel = Word::from_syllables(vec![(0, -1), (1, 1), (0, 1), (1, -((m as i64) - 1))]);
        Presentation::new(
            vec!["a".into(), "c".into()],
            vec![
                Word::from_syllables(vec![(0, 2)]),
                Word::from_syllables(vec![(1, n as i64)]),
                rel,
            ],
        )
    }

    /// < a, b, c | a^2, b^4, c^n, abc, a^-1 c^3 a c^3 > (order 24n/3 when 3|n).
    pub fn almost_metacyclic_iv(n: u64) -> Presentation {
        Presentation::three_gen_quotient(n, 3)
    }

    /// < a, b, c | a^2, b^4, c^n, abc, a^-1 c^2 a c^2 > (order 8n/2 when 2|n).
    pub fn almost_metacyclic_v(n: u64) -> Presentation {
        Presentation::three_gen_quotient(n, 2)
    }

    fn three_gen_quotient(n: u64, j: i64) -> Presentation {
        Presentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Word::from_syllables(vec![(0, 2)]),
                Word::from_syllables(vec![(1, 4)]),
                Word::from_syllables(vec![(2, n as i64)]),
                Word::from_syllables(vec![(0, 1), (1, 1), (2, 1)]),
                Word::from_syllables(vec![(0, -1), (2, j), (0, 1), (2, j)]),
            ],
        )
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display(&self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| w.display(&self.generators)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}
