use modspec_core::arith::{self, Ideal, Int, RingDesc};
use modspec_core::lattice;
use modspec_core::localization::{self, LocalizationMap, MultSet};
use modspec_core::sheaf;
use modspec_core::spectrum::{self, OpenSet};
use modspec_core::{Caps, FgModule};
use proptest::prelude::*;

const Z: RingDesc = RingDesc::Integers;

fn det3(m: &[Vec<Int>]) -> Int {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    }
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<Int>>> {
    (1..=max).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-6i128..=6, k), k))
}

fn chain() -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(prop::sample::select(vec![2i128, 3, 4, 6, 8, 9, 12]), 0..=3).prop_map(|v| {
        // turn any list into a divisibility chain by running lcm
        let mut out = Vec::new();
        let (mut acc, mut size) = (1, 1);
        for x in v {
            acc = arith::lcm(acc, x).unwrap();
            size *= acc;
            if size > 256 {
                break;
            }
            out.push(acc);
        }
        out
    })
}

fn finite_module() -> impl Strategy<Value = FgModule> {
    chain().prop_map(|c| FgModule::from_invariants(Z, &c, 0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn radical_distributes_over_sums(a in 0i128..=1_000_000, b in 0i128..=1_000_000, c in 0i128..=1_000_000) {
        let (i, j, k) = (Ideal::new(Z, a).unwrap(), Ideal::new(Z, b).unwrap(), Ideal::new(Z, c).unwrap());
        let lhs = i.sum(&j).unwrap().intersect(&i.sum(&k).unwrap()).unwrap().radical().unwrap();
        let rhs = i.sum(&j.intersect(&k).unwrap()).unwrap().radical().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_operations_are_commutative_and_radical_idempotent(a in 0i128..500, b in 0i128..500, n in 2i128..80) {
        for ring in [Z, RingDesc::IntegersMod(n)] {
            let (i, j) = (Ideal::new(ring, a).unwrap(), Ideal::new(ring, b).unwrap());
            prop_assert_eq!(i.sum(&j).unwrap(), j.sum(&i).unwrap());
            prop_assert_eq!(i.intersect(&j).unwrap(), j.intersect(&i).unwrap());
            prop_assert_eq!(i.product(&j).unwrap(), j.product(&i).unwrap());
            prop_assert!(i.intersect(&j).unwrap().contains(&i.product(&j).unwrap()));
            let r = i.radical().unwrap();
            prop_assert_eq!(r.radical().unwrap(), r);
            prop_assert!(r.contains(&i));
        }
    }

    #[test]
    fn bezout_decompositions_verify(f in 0i128..40, gens in prop::collection::vec(0i128..40, 1..4), n in 2i128..50) {
        for ring in [Z, RingDesc::IntegersMod(n)] {
            let ideals: Vec<Ideal> = gens.iter().map(|&g| Ideal::new(ring, g).unwrap()).collect();
            match arith::bezout_decompose(f, &ideals, ring) {
                Ok(d) => prop_assert!(d.verify(f, &ideals, ring).unwrap()),
                Err(modspec_core::Error::NotInRadical { .. }) => {
                    let total = ideals.iter().fold(Ideal::zero(ring).unwrap(), |acc, i| acc.sum(i).unwrap());
                    prop_assert!(!total.radical().unwrap().contains_element(f).unwrap());
                }
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn smith_form_is_a_chain_with_inverse_transform(a in square(3)) {
        let k = a.len();
        let s = lattice::smith_form(k, &a).unwrap();
        let nonzero: Vec<Int> = s.diagonal.iter().copied().filter(|&d| d != 0).collect();
        prop_assert!(nonzero.windows(2).all(|w| w[1] % w[0] == 0));
        for i in 0..k {
            for j in 0..k {
                let x: Int = (0..k).map(|t| s.u[i][t] * s.u_inv[t][j]).sum();
                prop_assert_eq!(x, Int::from(i == j));
            }
        }
        let d = det3(&a);
        if d != 0 {
            prop_assert_eq!(s.diagonal.iter().product::<Int>(), d.abs());
        }
    }

    #[test]
    fn presentations_normalize_to_their_module(rels in square(3), swap in 0usize..3, mult in -3i128..=3) {
        let k = rels.len();
        let m = FgModule::normalize(Z, k, &rels).unwrap();
        // every relation is zero, and coordinates round-trip
        for r in &rels {
            prop_assert!(m.from_generator_coords(r).unwrap() == m.zero_element());
        }
        let d = det3(&rels);
        if d != 0 {
            prop_assert_eq!(m.factors().iter().product::<Int>(), d.abs());
            prop_assert_eq!(m.free_rank(), 0);
        }
        // change of relation basis: add a multiple of one relation to another
        let mut other = rels.clone();
        let (i, j) = (swap % k, (swap + 1) % k);
        if i != j {
            let src = other[j].clone();
            for (x, y) in other[i].iter_mut().zip(&src) {
                *x += mult * y;
            }
        }
        other.reverse();
        let m2 = FgModule::normalize(Z, k, &other).unwrap();
        prop_assert_eq!(m.factors(), m2.factors());
        prop_assert_eq!(m.free_rank(), m2.free_rank());
    }

    #[test]
    fn submodules_form_a_modular_lattice(m in finite_module(), xs in prop::collection::vec(0usize..1000, 3)) {
        prop_assume!(!m.is_zero());
        let card = m.finite_cardinality(4096).unwrap() as usize;
        let sub = |i: usize| m.submodule_from_generators(&[m.element_at(xs[i] % card)]).unwrap();
        let (a, b, c0) = (sub(0), sub(1), sub(2));
        let c = m.sub_sum(&a, &c0).unwrap();
        // a ⊆ c ⇒ a + (b ∩ c) = (a + b) ∩ c
        let lhs = m.sub_sum(&a, &m.sub_intersect(&b, &c).unwrap()).unwrap();
        let rhs = m.sub_intersect(&m.sub_sum(&a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.sub_sum(&a, &b).unwrap(), m.sub_sum(&b, &a).unwrap());
        prop_assert!(m.is_subset(&m.sub_intersect(&a, &b).unwrap(), &a).unwrap());
        // (N:M)·M ⊆ N
        let colon = m.colon(&b).unwrap();
        prop_assert!(m.is_subset(&m.ideal_multiple_submodule(&colon).unwrap(), &b).unwrap());
    }

    #[test]
    fn localizing_twice_changes_nothing(m in finite_module(), f in 0i128..13, p in prop::sample::select(vec![2i128, 3, 5])) {
        for s in [MultSet::PowersOf(f), MultSet::ComplementOfPrime(p)] {
            let once = LocalizationMap::new(&m, &s).unwrap();
            let twice = localization::localize(once.target(), &s).unwrap();
            prop_assert!(twice.matches(once.target()));
        }
    }

    #[test]
    fn basic_opens_multiply(m in finite_module(), f in 0i128..30, g in 0i128..30) {
        let d = |x| spectrum::basic_open(x, &m).unwrap();
        prop_assert_eq!(d(f * g), d(f).intersection(&d(g)));
        prop_assert_eq!(d(1), spectrum::whole_spectrum(&m).unwrap());
        prop_assert_eq!(d(0), OpenSet::empty());
    }

    #[test]
    fn random_covers_decompose(m in finite_module(), seed in any::<u64>()) {
        let mut rng = modspec_core::corpus::rng(seed);
        let (f, hs) = modspec_core::corpus::random_cover(&m, &mut rng).unwrap();
        let d = sheaf::cover_decompose(&m, f, &hs).unwrap();
        prop_assert!(sheaf::verify_cover(&m, f, &d).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn restriction_is_transitive_and_additive(m in finite_module()) {
        let sh = sheaf::StructureSheaf::new(&m).unwrap();
        let whole = sh.spectrum();
        let space = sh.sections(&whole).unwrap();
        let elems = space.elements(Caps::default().cardinality).unwrap();
        for v in whole.subsets() {
            let sv = sh.sections(&v).unwrap();
            for w in v.subsets() {
                for s in elems.iter().take(40) {
                    let a = sheaf::restrict(&sheaf::restrict(s, &v).unwrap(), &w).unwrap();
                    prop_assert_eq!(a, sheaf::restrict(s, &w).unwrap());
                }
            }
            for s in elems.iter().take(12) {
                for t in elems.iter().take(12) {
                    let lhs = sheaf::restrict(&space.add(s, t).unwrap(), &v).unwrap();
                    let rhs = sv.add(&sheaf::restrict(s, &v).unwrap(), &sheaf::restrict(t, &v).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn finite_modules_have_bijective_psi(m in finite_module(), f in 0i128..13) {
        let psi = sheaf::psi_map(&m, f, &Caps::default()).unwrap();
        prop_assert!(psi.well_defined && psi.bijective);
        prop_assert_eq!(psi.space().cardinality() == 1, psi.localized.is_zero());
    }
}
