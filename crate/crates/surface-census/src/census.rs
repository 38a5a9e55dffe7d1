//! Theorem-level orchestration: the six families of large automorphism
//! groups in genus p + 1, the maximum-order function N(g), the per-prime
//! candidate analysis at lambda = 8, the published signature table, and the
//! sporadic small-genus witnesses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::groups::{FiniteGroup, GroupDescriptor, GroupError};
use crate::signatures::{enumerate_sigma, Signature, SignatureError};
use crate::ske::{
    eigen_label, exists_tuple, orbit_action, orbits, search_cap, SkeAnalysis, SkeError, TupleMove,
};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Ske(#[from] SkeError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("family ({case}) requires {condition}; p = {p} fails it")]
    Congruence {
        case: FamilyCase,
        p: u64,
        condition: String,
    },
    #[error("classification at lambda = 8 is validated only for 17 <= p <= 85 (threshold c_8 = 17; smaller primes are covered by the sporadic examples), got p = {0}")]
    OutOfRange(u64),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

/// The six families of Theorem-style large actions in genus p + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FamilyCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyCase::I => "i",
            FamilyCase::II => "ii",
            FamilyCase::III => "iii",
            FamilyCase::IV => "iv",
            FamilyCase::V => "v",
            FamilyCase::VI => "vi",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for FamilyCase {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, CensusError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(FamilyCase::I),
            "ii" | "2" => Ok(FamilyCase::II),
            "iii" | "3" => Ok(FamilyCase::III),
            "iv" | "4" => Ok(FamilyCase::IV),
            "v" | "5" => Ok(FamilyCase::V),
            "vi" | "6" => Ok(FamilyCase::VI),
            other => Err(CensusError::Mismatch(format!(
                "unknown family case {:?} (expected i..vi)",
                other
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRecord {
    pub case: FamilyCase,
    pub p: u64,
    pub signature: Signature,
    pub group: GroupDescriptor,
    pub order: u64,
    pub genus: u64,
    pub predicted_orbits: usize,
    pub predicted_surfaces: usize,
    pub chirality: String,
    pub congruence: String,
}

/// Instantiate one family at a prime p.
pub fn family(case: FamilyCase, p: u64) -> Result<FamilyRecord, CensusError> {
    if !arith::is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    let congruence_err = |condition: &str| CensusError::Congruence {
        case,
        p,
        condition: condition.to_string(),
    };
    let g = p + 1;
    let (signature, group, predicted_orbits, predicted_surfaces, chirality, congruence) =
        match case {
            FamilyCase::I => {
                if p % 3 != 1 {
                    return Err(congruence_err("p = 1 mod 3"));
                }
                (
                    Signature::triangle(2, 6, 6)?,
                    GroupDescriptor::example_i(p)?,
                    4,
                    2,
                    "braid pairs j <-> 3-j; reflection pairs j <-> -j".to_string(),
                    "p = 1 mod 3".to_string(),
                )
            }
            FamilyCase::II => {
                if p % 5 != 1 {
                    return Err(congruence_err("p = 1 mod 5"));
                }
                (
                    Signature::triangle(2, 5, 10)?,
                    GroupDescriptor::split_metacyclic(p, 10)?,
                    4,
                    4,
                    "two chiral pairs: reflection pairs j <-> -j".to_string(),
                    "p = 1 mod 5".to_string(),
                )
            }
            FamilyCase::III => {
                if p % 8 != 1 {
                    return Err(congruence_err("p = 1 mod 8"));
                }
                (
                    Signature::triangle(2, 8, 8)?,
                    GroupDescriptor::split_metacyclic(p, 8)?,
                    4,
                    2,
                    "braid pairs j <-> 4-j; reflection pairs j <-> -j".to_string(),
                    "p = 1 mod 8".to_string(),
                )
            }
            FamilyCase::IV => {
                if p % 3 != 2 {
                    return Err(congruence_err("p = 2 mod 3"));
                }
                (
                    Signature::triangle(2, 4, p + 4)?,
                    GroupDescriptor::AlmostMetacyclicIV(p + 4),
                    1,
                    1,
                    "single achiral class".to_string(),
                    "p = 2 mod 3".to_string(),
                )
            }
            FamilyCase::V => (
                Signature::triangle(2, 4, 2 * p + 4)?,
                GroupDescriptor::AlmostMetacyclicV(2 * p + 4),
                1,
                1,
                "single achiral class".to_string(),
                "none".to_string(),
            ),
            FamilyCase::VI => (
                Signature::triangle(2, 4, 4 * p + 4)?,
                GroupDescriptor::Semidihedral(4 * p + 4),
                1,
                1,
                "single achiral class".to_string(),
                "none (n = 2m with m = 2p+2 even)".to_string(),
            ),
        };
    let order = group
        .order()
        .expect("family descriptors have known orders");
    let genus = signature.rh_genus(order)?;
    if genus != g {
        return Err(CensusError::Mismatch(format!(
            "family ({}) at p = {}: Riemann-Hurwitz genus {} differs from p+1 = {}",
            case, p, genus, g
        )));
    }
    Ok(FamilyRecord {
        case,
        p,
        signature,
        group,
        order,
        genus,
        predicted_orbits,
        predicted_surfaces,
        chirality,
        congruence,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerification {
    pub record: FamilyRecord,
    pub tuple_count: usize,
    pub aut_order: usize,
    pub orbit_count: usize,
    pub surface_count: usize,
    /// Eigenvalue label per orbit, when the convention applies.
    pub labels: Vec<Option<i64>>,
    /// (label, image label) pairs under the braid move, when applicable.
    pub braid_pairing: Option<Vec<(i64, i64)>>,
    /// (label, image label) pairs under reflection, when applicable.
    pub reflect_pairing: Option<Vec<(i64, i64)>>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn push_check(checks: &mut Vec<CheckResult>, name: &str, pass: bool, detail: String) {
    checks.push(CheckResult {
        name: name.to_string(),
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        detail,
    });
}

/// Run every mechanical check for one family instance: construction, order,
/// genus, orbit count, labels, and the braid/reflection pairings. Cap
/// overruns produce a partial report with the heavy checks marked skipped.
pub fn verify_family(case: FamilyCase, p: u64) -> Result<FamilyVerification, CensusError> {
    let record = family(case, p)?;
    let mut checks = Vec::new();
    let g = FiniteGroup::construct(&record.group)?;
    push_check(
        &mut checks,
        "group order",
        g.order() as u64 == record.order,
        format!("constructed order {}, expected {}", g.order(), record.order),
    );
    let genus = record.signature.rh_genus(record.order)?;
    push_check(
        &mut checks,
        "genus",
        genus == record.genus,
        format!("Riemann-Hurwitz genus {}", genus),
    );
    if g.order() > search_cap() {
        checks.push(CheckResult {
            name: "orbits".into(),
            status: CheckStatus::Skipped,
            detail: format!(
                "|G| = {} exceeds the search cap {}",
                g.order(),
                search_cap()
            ),
        });
        return Ok(FamilyVerification {
            record,
            tuple_count: 0,
            aut_order: 0,
            orbit_count: 0,
            surface_count: 0,
            labels: Vec::new(),
            braid_pairing: None,
            reflect_pairing: None,
            passed: checks.iter().all(|c| c.status != CheckStatus::Fail),
            checks,
        });
    }
    let analysis = orbits(&g, &record.signature)?;
    push_check(
        &mut checks,
        "orbit count",
        analysis.orbit_count() == record.predicted_orbits,
        format!(
            "{} orbits of size {} ({} tuples)",
            analysis.orbit_count(),
            analysis.aut_order,
            analysis.tuples.len()
        ),
    );
    let labels: Vec<Option<i64>> = analysis
        .orbits
        .iter()
        .map(|o| eigen_label(&g, &o.rep).ok().map(|l| l.j))
        .collect();
    let labelled = matches!(case, FamilyCase::I | FamilyCase::II | FamilyCase::III);
    if labelled {
        let distinct: BTreeSet<Option<i64>> = labels.iter().copied().collect();
        push_check(
            &mut checks,
            "labels",
            labels.iter().all(|l| l.is_some()) && distinct.len() == labels.len(),
            format!("orbit labels {:?}", labels),
        );
    }
    let periods = record.signature.periods();
    let braid_applicable = periods[1] == periods[2];
    let braid_pairing = if labelled && braid_applicable {
        Some(move_pairing(&g, &analysis, &labels, TupleMove::BraidSwap)?)
    } else {
        None
    };
    let reflect_pairing = if labelled {
        Some(move_pairing(&g, &analysis, &labels, TupleMove::Reflect)?)
    } else {
        None
    };
    if let Some(pairs) = &braid_pairing {
        let modulus: i64 = periods[1] as i64;
        let anchor = modulus / 2; // 3 for (2,6,6), 4 for (2,8,8)
        let ok = pairs
            .iter()
            .all(|&(j, jj)| (jj - (anchor - j)).rem_euclid(modulus) == 0);
        push_check(
            &mut checks,
            "braid pairing",
            ok,
            format!("j -> {} - j checked on {:?}", anchor, pairs),
        );
    }
    if let Some(pairs) = &reflect_pairing {
        let modulus = periods[1] as i64;
        let ok = pairs.iter().all(|&(j, jj)| (jj + j).rem_euclid(modulus) == 0);
        push_check(
            &mut checks,
            "reflect pairing",
            ok,
            format!("j -> -j checked on {:?}", pairs),
        );
    }
    // Surface count: braid-equivalent orbits cover the same surface (the two
    // equal periods are interchangeable), so count braid classes when the
    // braid applies, otherwise orbits.
    let surface_count = if braid_applicable {
        let map = orbit_action(&g, &analysis, TupleMove::BraidSwap)?;
        count_classes(&map)
    } else {
        analysis.orbit_count()
    };
    push_check(
        &mut checks,
        "surface count",
        surface_count == record.predicted_surfaces,
        format!("{} isomorphism classes", surface_count),
    );
    if matches!(case, FamilyCase::IV | FamilyCase::V | FamilyCase::VI) {
        push_check(
            &mut checks,
            "uniqueness",
            analysis.orbit_count() == 1,
            "single normal surface subgroup".to_string(),
        );
    }
    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(FamilyVerification {
        record,
        tuple_count: analysis.tuples.len(),
        aut_order: analysis.aut_order,
        orbit_count: analysis.orbit_count(),
        surface_count,
        labels,
        braid_pairing,
        reflect_pairing,
        checks,
        passed,
    })
}

fn move_pairing(
    g: &FiniteGroup,
    analysis: &SkeAnalysis,
    labels: &[Option<i64>],
    mv: TupleMove,
) -> Result<Vec<(i64, i64)>, CensusError> {
    let map = orbit_action(g, analysis, mv)?;
    let mut out = Vec::new();
    for (i, &target) in map.iter().enumerate() {
        if let (Some(a), Some(b)) = (labels[i], labels[target]) {
            out.push((a, b));
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn count_classes(map: &[usize]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut classes = 0;
    for i in 0..map.len() {
        if !seen[i] {
            classes += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = map[j];
            }
        }
    }
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NgenusSource {
    Theorem2CaseA,
    Theorem2CaseB,
    Theorem2CaseC,
    SmallTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct NgenusWitness {
    pub group: GroupDescriptor,
    pub signature: Signature,
    pub order: u64,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NgenusResult {
    pub p: u64,
    pub genus: u64,
    pub value: u64,
    pub source: NgenusSource,
    pub witness: Option<NgenusWitness>,
}

/// N(p+1): the maximum automorphism-group order in genus p + 1.
pub fn n_genus(p: u64) -> Result<NgenusResult, CensusError> {
    if !arith::is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    let g = p + 1;
    let (value, source, witness_spec): (u64, NgenusSource, Option<(GroupDescriptor, Signature)>) =
        if p < 17 {
            // Published small-genus values; witnesses where a constructor
            // for the extremal group is in scope.
            let (value, wit): (u64, Option<(GroupDescriptor, Signature)>) = match p {
                2 => (168, Some((GroupDescriptor::Psl2(7), Signature::triangle(2, 3, 7)?))),
                3 => (120, Some((GroupDescriptor::Symmetric(5), Signature::triangle(2, 4, 5)?))),
                5 => (150, None),
                7 => (336, Some((GroupDescriptor::Pgl2(7), Signature::triangle(2, 3, 8)?))),
                11 => (120, None),
                13 => (1092, Some((GroupDescriptor::Psl2(13), Signature::triangle(2, 3, 7)?))),
                _ => unreachable!("primes below 17"),
            };
            (value, NgenusSource::SmallTable, wit)
        } else if p % 3 == 1 {
            let rec = family(FamilyCase::I, p)?;
            (12 * (g - 1), NgenusSource::Theorem2CaseA, Some((rec.group, rec.signature)))
        } else if p % 15 == 11 {
            let rec = family(FamilyCase::II, p)?;
            (10 * (g - 1), NgenusSource::Theorem2CaseB, Some((rec.group, rec.signature)))
        } else {
            // p = 2, 8, 14 mod 15.
            let rec = family(FamilyCase::IV, p)?;
            (8 * (g + 3), NgenusSource::Theorem2CaseC, Some((rec.group, rec.signature)))
        };
    let witness = match witness_spec {
        None => None,
        Some((group, signature)) => {
            let order = group.order().expect("witness orders are known");
            debug_assert_eq!(order, value);
            let verified = if order as usize <= search_cap() {
                let grp = FiniteGroup::construct(&group)?;
                exists_tuple(&grp, &signature)?.is_some()
            } else {
                false
            };
            Some(NgenusWitness {
                group,
                signature,
                order,
                verified,
            })
        }
    };
    Ok(NgenusResult {
        p,
        genus: g,
        value,
        source,
        witness,
    })
}

/// How one candidate signature was disposed of.
#[derive(Clone, Debug, Serialize)]
pub enum Disposition {
    /// Survives as a Theorem-1 family signature.
    Family { case: FamilyCase },
    /// Killed by pure arithmetic (integrality, divisibility, congruence).
    EliminatedArithmetic { condition: String },
    /// Killed by a quoted paper argument that is not mechanized here.
    EliminatedCited { section: String, argument: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateEntry {
    pub signature: Signature,
    /// Required group order (g-1) * s / r = p * s / r.
    pub group_order: u64,
    pub r: u64,
    pub s: u64,
    pub disposition: Disposition,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub p: u64,
    pub lambda: String,
    pub genus: u64,
    /// r = 1 values of s divisible by some kp+1 > 1 (potentially non-normal
    /// Sylow p-subgroup; eliminated by the cited Lemma-4 arguments).
    pub r1_obstruction_s: Vec<u64>,
    /// The finite-table candidates with r = p.
    pub rp_candidates: Vec<Signature>,
    pub entries: Vec<CandidateEntry>,
    pub survivors: Vec<(Signature, FamilyCase)>,
    pub mechanized_facts: Vec<String>,
    pub citations: Vec<String>,
}

/// Per-prime candidate analysis over Sigma_lambda for genus p + 1.
///
/// Candidates are the sigma with |G| = p s / r integral, i.e. r = 1 or
/// r = p. Family signatures survive (congruence-gated); everything else is
/// eliminated either by recorded arithmetic or by a cited argument. Only
/// integrality, divisibility, congruence, and exhaustive-search facts are
/// claimed as mechanized.
pub fn classify(p: u64, lambda: &BigRational) -> Result<ClassificationReport, CensusError> {
    if !arith::is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    let eight = BigRational::from_integer(BigInt::from(8));
    if *lambda == eight && !(17..=85).contains(&p) {
        return Err(CensusError::OutOfRange(p));
    }
    let sigma = enumerate_sigma(lambda)?;
    let genus = p + 1;
    let mut entries: Vec<CandidateEntry> = Vec::new();
    let mut r1_obstruction_s: BTreeSet<u64> = BTreeSet::new();
    let mut rp_candidates: Vec<Signature> = Vec::new();
    let mut mechanized_facts: Vec<String> = Vec::new();
    let mut citations: Vec<String> = Vec::new();

    citations.push(
        "Sylow counts 1 mod p: a group of order p*s with no divisor of s congruent to 1 mod p \
         (other than 1) has a normal Sylow p-subgroup (cited, not mechanized)"
            .to_string(),
    );

    for sig in &sigma.finite {
        let q = sig.q_fraction()?;
        let (r, s) = (
            q.r_u64().expect("table r fits"),
            q.s_u64().expect("table s fits"),
        );
        if r == 1 {
            let group_order = p * s;
            let obstructed: Vec<u64> = (2..=s).filter(|d| s % d == 0 && d % p == 1).collect();
            if !obstructed.is_empty() {
                r1_obstruction_s.insert(s);
            }
            let disposition = match family_match_r1(sig, p) {
                FamilyGate::Survives(case) => {
                    mechanized_facts.push(format!(
                        "{}: congruence {} holds at p = {}",
                        sig,
                        family_congruence_text(case),
                        p
                    ));
                    Disposition::Family { case }
                }
                FamilyGate::FailsCongruence(case, cond) => {
                    Disposition::EliminatedArithmetic {
                        condition: format!(
                            "family ({}) shape but {} fails (twist order must divide p-1)",
                            case, cond
                        ),
                    }
                }
                FamilyGate::NotAFamilyShape => {
                    if !obstructed.is_empty() {
                        Disposition::EliminatedCited {
                            section: "Lemma 4 / final-section case analysis".to_string(),
                            argument: format!(
                                "s = {} has divisors {:?} congruent to 1 mod p; the possible \
                                 non-normal Sylow configurations are excluded by the cited \
                                 arguments",
                                s, obstructed
                            ),
                        }
                    } else {
                        eliminate_r1_normal_sylow(sig, p, s, &mut mechanized_facts)
                    }
                }
            };
            entries.push(CandidateEntry {
                signature: sig.clone(),
                group_order,
                r,
                s,
                disposition,
            });
        } else if r == p {
            rp_candidates.push(sig.clone());
            let group_order = s;
            let disposition = rp_disposition(sig, p, &mut mechanized_facts);
            entries.push(CandidateEntry {
                signature: sig.clone(),
                group_order,
                r,
                s,
                disposition,
            });
        }
        // Other r: |G| = p s / r is not an integer; not a candidate at all.
    }

    // Tail members: (m1, m2, n) for arbitrarily large n. r = 1 members all
    // fall in the finite range; r = p requires the key (n - m1*m2) ~ 0 mod p
    // and a cyclic subgroup of order n, so n <= 4g + 2 (Wiman's bound,
    // cited) caps the scan.
    citations.push("Wiman bound: a genus-g surface has no automorphism of order above 4g+2 (cited), capping tail periods".to_string());
    for tail in &sigma.tails {
        for n in tail.min_n..=(4 * genus + 2) {
            let sig = Signature::new(0, {
                let mut v = tail.prefix.clone();
                v.push(n);
                v
            })?;
            let q = match sig.q_fraction() {
                Ok(q) => q,
                Err(_) => continue,
            };
            let (r, s) = (q.r_u64().unwrap_or(0), q.s_u64().unwrap_or(0));
            if r != p {
                continue;
            }
            rp_candidates_tail_note(&mut mechanized_facts, &sig, p);
            let disposition = rp_disposition(&sig, p, &mut mechanized_facts);
            entries.push(CandidateEntry {
                signature: sig,
                group_order: s,
                r,
                s,
                disposition,
            });
        }
    }

    let survivors: Vec<(Signature, FamilyCase)> = entries
        .iter()
        .filter_map(|e| match &e.disposition {
            Disposition::Family { case } => Some((e.signature.clone(), *case)),
            _ => None,
        })
        .collect();
    Ok(ClassificationReport {
        p,
        lambda: sigma.lambda.clone(),
        genus,
        r1_obstruction_s: r1_obstruction_s.into_iter().collect(),
        rp_candidates,
        entries,
        survivors,
        mechanized_facts,
        citations,
    })
}

enum FamilyGate {
    Survives(FamilyCase),
    FailsCongruence(FamilyCase, String),
    NotAFamilyShape,
}

fn family_congruence_text(case: FamilyCase) -> &'static str {
    match case {
        FamilyCase::I => "p = 1 mod 3",
        FamilyCase::II => "p = 1 mod 5",
        FamilyCase::III => "p = 1 mod 8",
        FamilyCase::IV => "p = 2 mod 3",
        FamilyCase::V | FamilyCase::VI => "none",
    }
}

fn family_match_r1(sig: &Signature, p: u64) -> FamilyGate {
    let ps = sig.periods();
    if ps == [2, 6, 6] {
        return if p % 3 == 1 {
            FamilyGate::Survives(FamilyCase::I)
        } else {
            FamilyGate::FailsCongruence(FamilyCase::I, "p = 1 mod 3".into())
        };
    }
    if ps == [2, 5, 10] {
        return if p % 5 == 1 {
            FamilyGate::Survives(FamilyCase::II)
        } else {
            FamilyGate::FailsCongruence(FamilyCase::II, "p = 1 mod 5".into())
        };
    }
    if ps == [2, 8, 8] {
        return if p % 8 == 1 {
            FamilyGate::Survives(FamilyCase::III)
        } else {
            FamilyGate::FailsCongruence(FamilyCase::III, "p = 1 mod 8".into())
        };
    }
    FamilyGate::NotAFamilyShape
}

fn rp_candidates_tail_note(facts: &mut Vec<String>, sig: &Signature, p: u64) {
    let n = sig.periods()[2];
    let key = match sig.periods()[1] {
        3 => n - 6,
        4 => n - 4,
        _ => return,
    };
    facts.push(format!("{}: p = {} divides the key {} (divisibility)", sig, p, key));
}

fn rp_disposition(sig: &Signature, p: u64, facts: &mut Vec<String>) -> Disposition {
    let ps = sig.periods();
    if ps.len() == 3 && ps[0] == 2 && ps[1] == 4 {
        let n = ps[2];
        if n == p + 4 {
            return if p % 3 == 2 {
                facts.push(format!(
                    "{}: n = p + 4 with 3 | n, the Accola-Maclachlan shape (iv)",
                    sig
                ));
                Disposition::Family {
                    case: FamilyCase::IV,
                }
            } else {
                Disposition::EliminatedCited {
                    section: "presentation analysis of (2,4,n) actions of order 8n".to_string(),
                    argument: format!(
                        "3 does not divide n = {}; no group of order 8n acts with (2,4,n)",
                        n
                    ),
                }
            };
        }
        if n == 2 * p + 4 {
            facts.push(format!("{}: n = 2p + 4, shape (v)", sig));
            return Disposition::Family {
                case: FamilyCase::V,
            };
        }
        if n == 4 * p + 4 {
            facts.push(format!("{}: n = 4p + 4, shape (vi)", sig));
            return Disposition::Family {
                case: FamilyCase::VI,
            };
        }
        return Disposition::EliminatedCited {
            section: "(2,4,n) case analysis".to_string(),
            argument: format!("n = {} is none of p+4, 2p+4, 4p+4 up to the Wiman cap", n),
        };
    }
    Disposition::EliminatedCited {
        section: "per-prime special arguments (final section)".to_string(),
        argument: format!(
            "candidate of order s = {} eliminated by the quoted group-theoretic analysis",
            sig.q_fraction().map(|q| q.s().to_string()).unwrap_or_default()
        ),
    }
}

/// Mechanized elimination attempts for r = 1 signatures with a guaranteed
/// normal Sylow p-subgroup: perfectness of the triangle group (its image
/// could not have a normal p-complement structure), and for (4,4,4) an
/// exhaustive quotient-and-extension search.
fn eliminate_r1_normal_sylow(
    sig: &Signature,
    p: u64,
    s: u64,
    facts: &mut Vec<String>,
) -> Disposition {
    if sig.genus() == 0 && sig.k() == 3 {
        let ps = sig.periods();
        let pres = crate::presentations::Presentation::triangle(ps[0], ps[1], ps[2]);
        let ab = crate::presentations::abelianization(&pres);
        if ab.order == Some(1) {
            facts.push(format!(
                "{}: triangle group is perfect (trivial abelianization, computed)",
                sig
            ));
            return Disposition::EliminatedCited {
                section: "solvability of |G| = ps extensions".to_string(),
                argument: "a perfect quotient cannot equal an extension of C_p with cyclic \
                           twist action (cited); perfectness itself is mechanized"
                    .to_string(),
            };
        }
        if ps == [4, 4, 4] {
            return eliminate_444(p, facts);
        }
    }
    Disposition::EliminatedCited {
        section: "normal-Sylow case analysis (final section)".to_string(),
        argument: format!(
            "G would be C_{} extended by a group of order {}; eliminated by the quoted analysis",
            p, s
        ),
    }
}

/// (4,4,4) with |G| = 8p: the quotient by the normal Sylow p-subgroup would
/// be a group of order 8 carrying an exact-order generating (4,4,4) triple
/// (orders are coprime to p, so they survive the quotient - mechanized).
/// Searching the five groups of order 8 leaves only Q8; searching the two
/// C_p-extensions of Q8 (split by Schur-Zassenhaus, action through the
/// cyclic quotient of Q8 - both steps cited) leaves nothing.
fn eliminate_444(p: u64, facts: &mut Vec<String>) -> Disposition {
    let sig = Signature::triangle(4, 4, 4).expect("valid");
    let order8: [&str; 5] = [
        "C(8)",
        "<x, y | x^4, y^2, [x,y]>",
        "<x, y, z | x^2, y^2, z^2, [x,y], [x,z], [y,z]>",
        "D(4)",
        "<x, y | x^4, x^2 y^-2, y^-1 x y x>", // Q8
    ];
    let mut quotient_hits = Vec::new();
    for desc in order8 {
        let g = FiniteGroup::construct(&desc.parse().expect("parses"))
            .expect("order-8 groups construct");
        if exists_tuple(&g, &sig).expect("within caps").is_some() {
            quotient_hits.push(desc.to_string());
        }
    }
    facts.push(format!(
        "(4,4,4): exact-order generating triples exist in {} of the 5 groups of order 8 \
         (exhaustive search): {:?}",
        quotient_hits.len(),
        quotient_hits
    ));
    let mut extension_hit = false;
    if !quotient_hits.is_empty() {
        // Both extensions of C_p by Q8: direct product and the inverting
        // action (every epimorphism Q8 -> Aut(C_p) factors through C_2).
        let exts = [
            format!("<t, x, y | t^{}, x^4, x^2 y^-2, y^-1 x y x, [t,x], [t,y]>", p),
            format!(
                "<t, x, y | t^{}, x^4, x^2 y^-2, y^-1 x y x, x^-1 t x t, y^-1 t y t>",
                p
            ),
        ];
        for text in &exts {
            let g = FiniteGroup::construct(&text.parse().expect("parses"))
                .expect("order-8p extensions construct");
            assert_eq!(g.order() as u64, 8 * p, "extension order sanity");
            if exists_tuple(&g, &sig).expect("within caps").is_some() {
                extension_hit = true;
            }
        }
        facts.push(format!(
            "(4,4,4): neither C_{} extension of Q8 admits a generating exact-order triple \
             (exhaustive search): {}",
            p, !extension_hit
        ));
    }
    if extension_hit {
        // Would contradict the classification; surface it loudly.
        return Disposition::EliminatedCited {
            section: "UNRESOLVED".to_string(),
            argument: "a (4,4,4) extension admitted a tuple; classification hole".to_string(),
        };
    }
    Disposition::EliminatedCited {
        section: "Sylow + Schur-Zassenhaus (structure steps cited; searches mechanized)"
            .to_string(),
        argument: "no order-8 quotient shape extends to a (4,4,4) action of order 8p".to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixRow {
    pub signature: Signature,
    /// s/r in lowest terms, rendered as an integer when r = 1.
    pub value: String,
}

/// The published Sigma_8 table: 41 sporadic rows plus the two parametric
/// families evaluated at every n in range (72 + 32 rows). Values are
/// computed from the measure, never stored.
///
/// The boundary signature (4,4,4) also satisfies the Sigma_8 measure bound
/// but is absent from the published table; enumerate_sigma reports it, while
/// this function reproduces the table as printed.
pub fn appendix_table() -> Vec<AppendixRow> {
    let eight = BigRational::from_integer(BigInt::from(8));
    let sigma = enumerate_sigma(&eight).expect("lambda = 8 enumerates");
    let mut rows: Vec<AppendixRow> = Vec::new();
    let mut family_rows: Vec<AppendixRow> = Vec::new();
    for sig in &sigma.finite {
        let ps = sig.periods();
        let in_23 = ps.len() == 3 && ps[0] == 2 && ps[1] == 3;
        let in_24 = ps.len() == 3 && ps[0] == 2 && ps[1] == 4;
        if in_23 || in_24 {
            family_rows.push(AppendixRow {
                signature: sig.clone(),
                value: sig.q_fraction().expect("hyperbolic").inverted_string(),
            });
            continue;
        }
        if ps == [4, 4, 4] {
            continue; // not printed in the published table
        }
        rows.push(AppendixRow {
            signature: sig.clone(),
            value: sig.q_fraction().expect("hyperbolic").inverted_string(),
        });
    }
    rows.extend(family_rows);
    rows
}

#[derive(Clone, Debug, Serialize)]
pub struct SporadicWitness {
    pub signature: Signature,
    pub group: GroupDescriptor,
    pub order: u64,
    pub genus: u64,
    pub exists: bool,
}

/// The three sporadic extremal actions verified by direct tuple search.
pub fn sporadic_witnesses() -> Result<Vec<SporadicWitness>, CensusError> {
    let cases = [
        (Signature::triangle(2, 4, 5)?, GroupDescriptor::Symmetric(5)),
        (Signature::triangle(2, 3, 8)?, GroupDescriptor::Pgl2(7)),
        (Signature::triangle(2, 3, 7)?, GroupDescriptor::Psl2(13)),
    ];
    let mut out = Vec::new();
    for (sig, desc) in cases {
        let g = FiniteGroup::construct(&desc)?;
        let genus = sig.rh_genus(g.order() as u64)?;
        let exists = exists_tuple(&g, &sig)?.is_some();
        out.push(SporadicWitness {
            signature: sig,
            group: desc,
            order: g.order() as u64,
            genus,
            exists,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    fn eight() -> BigRational {
        BigRational::from_integer(BigInt::from(8))
    }

    #[test]
    fn family_records() {
        let r = family(FamilyCase::IV, 29).unwrap();
        assert_eq!(r.signature.to_string(), "(2,4,33)");
        assert_eq!(r.order, 264);
        assert_eq!(r.genus, 30);
        let r = family(FamilyCase::I, 7).unwrap();
        assert_eq!(r.signature.to_string(), "(2,6,6)");
        assert_eq!(r.order, 84);
        assert_eq!(r.genus, 8);
        assert_eq!(r.predicted_surfaces, 2);
        let r = family(FamilyCase::VI, 3).unwrap();
        assert_eq!(r.signature.to_string(), "(2,4,16)");
        assert_eq!(r.order, 32);
        assert_eq!(r.genus, 4);
    }

    #[test]
    fn family_congruences_are_enforced() {
        assert!(matches!(
            family(FamilyCase::I, 5),
            Err(CensusError::Congruence { .. })
        ));
        assert!(matches!(
            family(FamilyCase::IV, 7),
            Err(CensusError::Congruence { .. })
        ));
        assert!(matches!(family(FamilyCase::II, 9), Err(CensusError::NotPrime(9))));
    }

    #[test]
    fn verify_family_vi_smallest() {
        // p = 2: SD(12), order 24, genus 3, single orbit.
        let v = verify_family(FamilyCase::VI, 2).unwrap();
        assert!(v.passed, "checks: {:?}", v.checks);
        assert_eq!(v.record.order, 24);
        assert_eq!(v.record.genus, 3);
        assert_eq!(v.orbit_count, 1);
    }

    #[test]
    fn appendix_row_counts_and_spots() {
        let rows = appendix_table();
        assert_eq!(rows.len(), 41 + 72 + 32);
        let get = |sig: &str| {
            rows.iter()
                .find(|r| r.signature.to_string() == sig)
                .map(|r| r.value.clone())
                .unwrap_or_else(|| panic!("{} missing", sig))
        };
        assert_eq!(get("(2,5,13)"), "260/29");
        assert_eq!(get("(2,6,9)"), "9");
        assert_eq!(get("(3,4,5)"), "120/13");
        assert_eq!(get("(2,5,7)"), "140/11");
        assert_eq!(get("(2,6,11)"), "33/4");
        assert_eq!(get("(2,2,2,3)"), "12");
        assert_eq!(get("(2,3,7)"), "84");
        assert_eq!(get("(2,3,78)"), "13");
        assert_eq!(get("(2,4,36)"), "9");
    }

    #[test]
    fn classification_range_is_enforced() {
        assert!(matches!(classify(13, &eight()), Err(CensusError::OutOfRange(13))));
        assert!(classify(17, &eight()).is_ok());
    }

    #[test]
    fn ngenus_small_table() {
        for (p, n) in [(2u64, 168u64), (3, 120), (5, 150), (7, 336), (11, 120), (13, 1092)] {
            let r = n_genus(p).unwrap();
            assert_eq!(r.value, n, "N({})", p + 1);
            assert_eq!(r.source, NgenusSource::SmallTable);
            if let Some(w) = &r.witness {
                assert!(w.verified, "witness at p = {}", p);
                assert_eq!(w.order, n);
            }
        }
    }

    #[test]
    fn ngenus_theorem_cases() {
        let r = n_genus(19).unwrap();
        assert_eq!((r.value, r.source), (228, NgenusSource::Theorem2CaseA));
        let r = n_genus(41).unwrap();
        assert_eq!((r.value, r.source), (410, NgenusSource::Theorem2CaseB));
        let r = n_genus(17).unwrap();
        assert_eq!((r.value, r.source), (168, NgenusSource::Theorem2CaseC));
        for p in [17u64, 19, 41] {
            let w = n_genus(p).unwrap().witness.expect("witness in range");
            assert!(w.verified, "p = {}", p);
        }
    }
}
