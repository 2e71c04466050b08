use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thetaring::quotient::{HowellBasis, SpanVector};
use thetaring::sample::PolySampler;
use thetaring::{
    brute_force_membership_oracle, verify_certificate, ExampleRing, IntegerRing, LocalRing,
    Membership, Polynomial,
};

const ORACLE_CELLS: [(u64, u32, u32); 3] = [(2, 1, 2), (2, 1, 3), (3, 1, 2)];

fn checked(m: &Membership) -> bool {
    match m {
        Membership::Member(c) => {
            assert!(verify_certificate(c), "certificate for {} fails", c.target);
            true
        }
        Membership::NonMember(w) => {
            assert!(!w.is_zero());
            false
        }
    }
}

#[test]
fn howell_agrees_with_oracle_on_span_monomials() {
    for (p, e, m) in ORACLE_CELLS {
        let ring = ExampleRing::new(p, e, m).unwrap();
        let side = ring.ideal().side();
        let q = p.pow(m) as i64;
        for j in 0..side {
            for i in 0..side {
                // Scaled monomials probe the torsion structure, not just units.
                for c in (1..q).filter(|c| q % c == 0) {
                    let f = Polynomial::monomial(IntegerRing, c, i, j);
                    let fast = checked(&ring.is_member(&f));
                    let slow = brute_force_membership_oracle(p, e, m, &f).unwrap();
                    assert_eq!(fast, slow, "({p},{e},{m}) {f}");
                }
            }
        }
    }
}

#[test]
fn howell_agrees_with_oracle_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, e, m) in ORACLE_CELLS {
        let ring = ExampleRing::new(p, e, m).unwrap();
        let sampler = PolySampler::new(LocalRing::new(p).unwrap());
        for _ in 0..50 {
            let f = sampler.sample_integral(&mut rng);
            let f_z = f.map_coefficients(IntegerRing, |c| c.numer().clone());
            let fast = checked(&ring.is_member(&f));
            assert_eq!(fast, brute_force_membership_oracle(p, e, m, &f_z).unwrap());
        }
    }
}

#[test]
fn shuffled_generating_sets_give_the_same_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, e, m) in [(2u64, 1u32, 3u32), (3, 1, 2), (2, 2, 3), (3, 2, 3)] {
        let ring = ExampleRing::new(p, e, m).unwrap();
        let module = ring.module();
        let dim = module.rewrite().dim();
        let reference = module.basis().key_rows();
        let rows: Vec<Vec<u64>> = reference.clone();
        // Random combinations of the basis span the same module.
        let md = module.modulus();
        for _ in 0..3 {
            let mut gens = rows.clone();
            for _ in 0..rows.len() {
                let mut v = vec![0u64; dim];
                for r in &rows {
                    let c = rand::Rng::gen_range(&mut rng, 0..md.value());
                    for (a, b) in v.iter_mut().zip(r) {
                        *a = md.add_raw(*a, md.mul_raw(c, *b));
                    }
                }
                gens.push(v);
            }
            rand::seq::SliceRandom::shuffle(gens.as_mut_slice(), &mut rng);
            let mut basis = HowellBasis::new(md, dim, dim);
            for g in gens {
                basis.insert(g);
            }
            basis.canonicalize();
            assert_eq!(basis.key_rows(), reference, "({p},{e},{m})");
        }
    }
}

#[test]
fn nilpotence_is_monotone_in_m() {
    for (p, e) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1)] {
        let n = p.pow(e) + p.pow(e - 1);
        for m in [e + 1, e + 2] {
            let fine = ExampleRing::new(p, e, m + 1).unwrap();
            let coarse = ExampleRing::new(p, e, m).unwrap();
            for k in [n - 1, n] {
                let f = Polynomial::monomial(IntegerRing, 1, k as u32, 0);
                if checked(&fine.is_member(&f)) {
                    assert!(checked(&coarse.is_member(&f)), "({p},{e}) x^{k} mod p^{m}");
                }
            }
        }
    }
}

#[test]
fn residue_witness_is_reduced() {
    let ring = ExampleRing::new(2, 1, 2).unwrap();
    let w = ring.is_member(&Polynomial::monomial(IntegerRing, 1, 2, 0));
    let w: &SpanVector = w.witness().unwrap();
    assert_eq!(w.to_string(), "2*y");
}

fn coset_cells() -> impl Strategy<Value = (u64, u32, u64)> {
    prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((3, 1)), Just((5, 1))]
        .prop_flat_map(|(p, e)| (Just(p), Just(e), any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_is_constant_on_cosets((p, e, seed) in coset_cells()) {
        let ring = ExampleRing::new(p, e, e + 1).unwrap();
        let sampler = PolySampler::new(LocalRing::new(p).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sampler.sample(&mut rng);
        let j = sampler.sample_combination(ring.ideal().generators(), &mut rng);
        prop_assert!(checked(&ring.is_member(&j)));
        prop_assert_eq!(checked(&ring.is_member(&f)), checked(&ring.is_member(&(&f + &j))));
    }
}
