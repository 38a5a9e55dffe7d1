//! One test per acceptance criterion; each prints a single pass/fail line.

use num::{BigInt, BigRational};

use surface_census::census::{
    appendix_table, classify, n_genus, sporadic_witnesses, verify_family, FamilyCase,
    NgenusSource,
};
use surface_census::groups::{FiniteGroup, GroupDescriptor};
use surface_census::presentations::{coset_enumerate, Presentation, DEFAULT_COSET_LIMIT};
use surface_census::signatures::{bound_constants, enumerate_sigma, Signature};
use surface_census::ske::orbits;

fn report(n: u32, name: &str, pass: bool) {
    println!("criterion {:2} [{}]: {}", n, if pass { "pass" } else { "FAIL" }, name);
    assert!(pass, "criterion {} failed: {}", n, name);
}

fn eight() -> BigRational {
    BigRational::from_integer(BigInt::from(8))
}

fn ratio_string(num: u64, den: u64) -> String {
    let q = BigRational::new(BigInt::from(num), BigInt::from(den));
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[test]
fn criterion_01_appendix_reproduction() {
    let rows = appendix_table();
    let value = |sig: &str| {
        rows.iter()
            .find(|r| r.signature.to_string() == sig)
            .map(|r| r.value.clone())
    };
    let mut pass = rows.len() == 41 + 72 + 32;
    pass &= value("(2,5,7)").as_deref() == Some("140/11");
    pass &= value("(2,6,11)").as_deref() == Some("33/4");
    pass &= value("(2,2,2,3)").as_deref() == Some("12");
    // The two parametric families at every n, against an independent
    // rational computation of |G|/(g-1) = 1/q.
    for n in 7..=78 {
        pass &= value(&format!("(2,3,{})", n)) == Some(ratio_string(12 * n, n - 6));
    }
    for n in 5..=36 {
        pass &= value(&format!("(2,4,{})", n)) == Some(ratio_string(8 * n, n - 4));
    }
    report(1, "appendix table rows and values", pass);
}

#[test]
fn criterion_02_sigma8_constants() {
    let sigma = enumerate_sigma(&eight()).unwrap();
    let bc = bound_constants(&sigma);
    report(
        2,
        "Sigma_8 bound constants (71, 13, 84)",
        (bc.p_max_r, bc.p_max_period, bc.s_max) == (71, 13, 84),
    );
}

#[test]
fn criterion_03_family_ii_at_11() {
    let v = verify_family(FamilyCase::II, 11).unwrap();
    let reflect = v.reflect_pairing.clone().unwrap_or_default();
    let pass = v.passed
        && v.tuple_count == 440
        && v.aut_order == 110
        && v.orbit_count == 4
        && v.record.genus == 12
        && reflect.contains(&(1, -1))
        && reflect.contains(&(2, -2))
        && reflect.contains(&(-1, 1))
        && reflect.contains(&(-2, 2));
    report(3, "(2,5,10) onto MC(11,10,2): counts and reflect pairing", pass);
}

#[test]
fn criterion_04_family_i_at_7() {
    let v = verify_family(FamilyCase::I, 7).unwrap();
    let braid = v.braid_pairing.clone().unwrap_or_default();
    let reflect = v.reflect_pairing.clone().unwrap_or_default();
    let pass = v.passed
        && v.aut_order == 84
        && v.tuple_count == 336
        && v.orbit_count == 4
        && v.record.genus == 8
        && braid.contains(&(1, 2))
        && braid.contains(&(-1, -2))
        && reflect.contains(&(1, -1));
    report(4, "(2,6,6) onto the 12p-group at p = 7: counts and pairings", pass);
}

#[test]
fn criterion_05_family_iii_at_17() {
    let v = verify_family(FamilyCase::III, 17).unwrap();
    let braid = v.braid_pairing.clone().unwrap_or_default();
    let pass = v.passed
        && v.orbit_count == 4
        && braid.contains(&(1, 3))
        && braid.contains(&(-1, -3));
    report(5, "(2,8,8) onto MC(17,8,u): orbits and braid pairing", pass);
}

#[test]
fn criterion_06_presentation_orders_and_unique_orbits() {
    let mut pass = true;
    let cases: [(Presentation, &str, u64, u64); 3] = [
        (Presentation::semidihedral(8), "SD(8)", 8, 2),
        (Presentation::almost_metacyclic_iv(9), "AMIV(9)", 9, 6),
        (Presentation::almost_metacyclic_v(10), "AMV(10)", 10, 4),
    ];
    for (pres, desc, n, genus) in cases {
        let enumerated = coset_enumerate(&pres, &[], DEFAULT_COSET_LIMIT).unwrap().cosets;
        let d: GroupDescriptor = desc.parse().unwrap();
        let g = FiniteGroup::construct(&d).unwrap();
        pass &= enumerated == g.order();
        let sig = Signature::triangle(2, 4, n).unwrap();
        let a = orbits(&g, &sig).unwrap();
        pass &= a.orbit_count() == 1 && a.genus == Some(genus);
    }
    report(6, "coset-enumerated orders match constructors; unique orbits", pass);
}

#[test]
fn criterion_07_sporadic_witnesses() {
    let ws = sporadic_witnesses().unwrap();
    let pass = ws.len() == 3
        && ws.iter().all(|w| w.exists)
        && ws.iter().map(|w| w.genus).collect::<Vec<_>>() == [4, 8, 14];
    report(7, "sporadic witnesses S5, PGL2(7), PSL2(13)", pass);
}

#[test]
fn criterion_08_per_prime_arithmetic() {
    let r31 = classify(31, &eight()).unwrap();
    let mut rp: Vec<String> = r31.rp_candidates.iter().map(|s| s.to_string()).collect();
    rp.sort();
    let mut pass = rp == ["(2,3,37)", "(2,3,68)", "(2,4,35)", "(2,7,9)"];
    let r23 = classify(23, &eight()).unwrap();
    pass &= r23.r1_obstruction_s == [24, 48];
    let r29 = classify(29, &eight()).unwrap();
    pass &= r29
        .survivors
        .iter()
        .any(|(sig, case)| sig.to_string() == "(2,4,33)" && *case == FamilyCase::IV);
    report(8, "classify arithmetic at p = 31, 23, 29", pass);
}

#[test]
fn criterion_09_ngenus_values_and_witnesses() {
    let mut pass = true;
    for (p, value, source) in [
        (13u64, 1092u64, NgenusSource::SmallTable),
        (19, 228, NgenusSource::Theorem2CaseA),
        (41, 410, NgenusSource::Theorem2CaseB),
        (17, 168, NgenusSource::Theorem2CaseC),
    ] {
        let r = n_genus(p).unwrap();
        pass &= r.value == value && r.source == source;
        let w = r.witness.expect("witness available");
        pass &= w.order == value && w.verified;
    }
    // Full family (i) verification at p = 19.
    pass &= verify_family(FamilyCase::I, 19).unwrap().passed;
    report(9, "N(p+1) values with verified witnesses", pass);
}

#[test]
fn criterion_10_property_suite() {
    let mut pass = true;

    // Semiregularity across enumerated SKE sets: every orbit has size
    // exactly |Aut(G)| (orbits() hard-fails otherwise).
    for (desc, sig) in [
        ("MC(11,10,2)", (2u64, 5u64, 10u64)),
        ("EXI(7)", (2, 6, 6)),
        ("SD(8)", (2, 4, 8)),
        ("AMIV(9)", (2, 4, 9)),
        ("S(5)", (2, 4, 5)),
    ] {
        let g = FiniteGroup::construct(&desc.parse().unwrap()).unwrap();
        let sig = Signature::triangle(sig.0, sig.1, sig.2).unwrap();
        let a = orbits(&g, &sig).unwrap();
        pass &= a.orbits.iter().all(|o| o.size == a.aut_order);
    }

    // Abelian invariants are invariant under relator/period permutation,
    // and coprime periods force a perfect triangle group.
    use surface_census::presentations::abelian_invariants;
    let a = abelian_invariants(&Presentation::triangle(2, 6, 6));
    let b = abelian_invariants(&Presentation::triangle(6, 2, 6));
    let c = abelian_invariants(&Presentation::triangle(6, 6, 2));
    pass &= a == b && b == c;
    for (l, m, n) in [(2u64, 3, 7), (3, 5, 7), (2, 5, 9), (4, 5, 9)] {
        pass &= abelian_invariants(&Presentation::triangle(l, m, n)).is_empty();
    }

    // Riemann-Hurwitz round trip g = 1 + |G| q = p + 1 across all families
    // for p <= 60 (exact rational arithmetic).
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59] {
        for case in [
            FamilyCase::I,
            FamilyCase::II,
            FamilyCase::III,
            FamilyCase::IV,
            FamilyCase::V,
            FamilyCase::VI,
        ] {
            // Skips primes outside the case's congruence class.
            if let Ok(rec) = surface_census::census::family(case, p) {
                pass &= rec.signature.rh_genus(rec.order).unwrap() == p + 1;
            }
        }
    }

    // No genus-positive signature appears in any Sigma_lambda with
    // lambda > 6: the finite members all have orbit genus 0.
    for lam in [7u64, 8, 9, 12, 20] {
        let sigma = enumerate_sigma(&BigRational::from_integer(BigInt::from(lam))).unwrap();
        pass &= sigma.finite.iter().all(|s| s.genus() == 0);
    }

    report(10, "property suite", pass);
}
