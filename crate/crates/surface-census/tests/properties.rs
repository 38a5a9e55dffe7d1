//! Randomized and sweep invariants beyond the single-number checks.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use surface_census::census::{classify, verify_family, Disposition, FamilyCase};
use surface_census::groups::FiniteGroup;
use surface_census::presentations::{abelian_invariants, Presentation};
use surface_census::signatures::{enumerate_sigma, Signature};
use surface_census::ske::enumerate_tuples;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn closed_form_tuple_counts_for_the_205_family() {
    // 4p(p-1) generating tuples for (2,5,10) onto the order-10p group.
    for p in [11u64, 31] {
        let g = FiniteGroup::construct(&format!("MC({},10)", p).parse().unwrap()).unwrap();
        let sig = Signature::triangle(2, 5, 10).unwrap();
        let tuples = enumerate_tuples(&g, &sig).unwrap();
        assert_eq!(tuples.len() as u64, 4 * p * (p - 1), "p = {}", p);
    }
}

#[test]
fn family_iv_verifies_for_all_small_primes_in_its_congruence_class() {
    for p in (2..=60).filter(|&p| is_prime(p) && p % 3 == 2) {
        let v = verify_family(FamilyCase::IV, p).unwrap();
        assert!(v.passed, "family (iv) at p = {}: {:?}", p, v.checks);
        assert_eq!(v.orbit_count, 1, "p = {}", p);
    }
}

#[test]
fn classification_survivors_are_family_signatures_throughout_the_range() {
    let eight = BigRational::from_integer(BigInt::from(8));
    for p in (17..=85).filter(|&p| is_prime(p)) {
        let report = classify(p, &eight).unwrap();
        for entry in &report.entries {
            if let Disposition::Family { case } = entry.disposition {
                let rec = surface_census::census::family(case, p)
                    .unwrap_or_else(|e| panic!("survivor at p = {}: {}", p, e));
                assert_eq!(rec.signature, entry.signature, "p = {}", p);
                assert_eq!(rec.order, entry.group_order, "p = {}", p);
            }
        }
        // The guaranteed families always survive.
        assert!(report
            .survivors
            .iter()
            .any(|(_, c)| *c == FamilyCase::V));
        assert!(report
            .survivors
            .iter()
            .any(|(_, c)| *c == FamilyCase::VI));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelian_invariants_ignore_period_order(mut periods in proptest::collection::vec(2u64..30, 3)) {
        let base = abelian_invariants(&Presentation::triangle(periods[0], periods[1], periods[2]));
        periods.rotate_left(1);
        let rotated = abelian_invariants(&Presentation::triangle(periods[0], periods[1], periods[2]));
        prop_assert_eq!(base, rotated);
    }

    #[test]
    fn coprime_periods_give_perfect_triangle_groups(a in 2u64..20, b in 2u64..20, c in 2u64..20) {
        prop_assume!(num::integer::gcd(a, b) == 1
            && num::integer::gcd(a, c) == 1
            && num::integer::gcd(b, c) == 1);
        prop_assert!(abelian_invariants(&Presentation::triangle(a, b, c)).is_empty());
    }

    #[test]
    fn sigma_members_satisfy_the_measure_bound(num in 13u64..40) {
        // lambda = num/2 ranges over (6.5, 20); every finite member must
        // have 0 < mu/4pi <= 1/lambda.
        let lambda = BigRational::new(BigInt::from(num), BigInt::from(2));
        let sigma = enumerate_sigma(&lambda).unwrap();
        let bound = lambda.recip();
        for sig in &sigma.finite {
            let q = sig.q_fraction().unwrap().value();
            prop_assert!(q > BigRational::from_integer(BigInt::from(0)));
            prop_assert!(q <= bound);
            prop_assert_eq!(sig.genus(), 0);
        }
    }

    #[test]
    fn rh_genus_round_trips_on_sigma8(idx in 0usize..42) {
        // For any member and any multiplier m, an action of order m*s has
        // genus 1 + m*r.
        let eight = BigRational::from_integer(BigInt::from(8));
        let sigma = enumerate_sigma(&eight).unwrap();
        let sig = &sigma.finite[idx % sigma.finite.len()];
        let q = sig.q_fraction().unwrap();
        let (r, s) = (q.r_u64().unwrap(), q.s_u64().unwrap());
        for m in 1u64..=5 {
            prop_assert_eq!(sig.rh_genus(m * s).unwrap(), 1 + m * r);
        }
    }
}
