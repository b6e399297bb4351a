//! Desk-scale acceptance run over the module corpus.
//!
//! Runs without the default harness so that every criterion prints one
//! PASS/FAIL line. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use modspec_core::arith::{Ideal, Int, RingDesc};
use modspec_core::corpus::{self, CorpusEntry, SCAN_LIMIT};
use modspec_core::localization::{self, LocalKind, LocalizationMap, MultSet};
use modspec_core::module::{self, FgModule, ModElement};
use modspec_core::sheaf::{self, StructureSheaf};
use modspec_core::spectrum::{self, Strategy};
use modspec_core::Caps;
use rand::Rng;

struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

type Criterion = fn(&Fixture) -> Outcome;

struct Fixture {
    all: Vec<CorpusEntry>,
    finite: Vec<CorpusEntry>,
    caps: Caps,
}

fn size(m: &FgModule) -> u128 {
    m.finite_cardinality(u128::MAX).expect("finite corpus module")
}

// ---- independent oracles -------------------------------------------------

fn gcd(a: Int, b: Int) -> Int {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Product of the distinct primes of `n` by trial division (`rad(0) = 0`).
fn squarefree_kernel(mut n: Int) -> Int {
    if n == 0 {
        return 0;
    }
    n = n.abs();
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out *= n;
    }
    out
}

/// Ideals of `Z/n` as explicit subsets, with sum, intersection and radical
/// computed on the subsets themselves.
struct SubsetIdeals {
    n: usize,
    sets: Vec<Vec<bool>>,
    gens: Vec<Int>,
}

impl SubsetIdeals {
    fn new(n: usize) -> Self {
        let gens: Vec<Int> = (1..=n as Int).filter(|d| n as Int % d == 0).collect();
        let sets = gens
            .iter()
            .map(|&d| (0..n).map(|x| x as Int % d == 0).collect())
            .collect();
        SubsetIdeals { n, sets, gens }
    }

    fn index(&self, set: &[bool]) -> usize {
        self.sets.iter().position(|s| s == set).expect("result is an ideal")
    }

    fn sum(&self, i: usize, j: usize) -> usize {
        let mut out = vec![false; self.n];
        for a in (0..self.n).filter(|&a| self.sets[i][a]) {
            for b in (0..self.n).filter(|&b| self.sets[j][b]) {
                out[(a + b) % self.n] = true;
            }
        }
        self.index(&out)
    }

    fn meet(&self, i: usize, j: usize) -> usize {
        let out: Vec<bool> = (0..self.n).map(|x| self.sets[i][x] && self.sets[j][x]).collect();
        self.index(&out)
    }

    fn radical(&self, i: usize) -> usize {
        let out: Vec<bool> = (0..self.n)
            .map(|x| {
                let mut y = x % self.n;
                for _ in 0..=self.n {
                    if self.sets[i][y] {
                        return true;
                    }
                    y = (y * x) % self.n;
                }
                false
            })
            .collect();
        self.index(&out)
    }
}

/// Basic opens of a finite module: the relevant primes not dividing `x`.
fn basic_open_oracle(m: &FgModule, x: Int) -> BTreeSet<Int> {
    let e = m.exponent();
    (2..=e.max(1))
        .filter(|p| e % p == 0 && (2..*p).all(|d| p % d != 0))
        .filter(|p| x % p != 0)
        .collect()
}

/// `P` is a `(p)`-prime of `M` iff `M/P` is a nonzero `F_p`-vector space.
fn quotient_is_fp_space(m: &FgModule, sub: &modspec_core::Submodule, p: Int) -> bool {
    let q = m.quotient(sub).expect("quotient").module;
    !q.is_zero() && q.free_rank() == 0 && q.factors().iter().all(|&e| e == p)
}

// ---- criteria ----------------------------------------------------------------

fn artinian_pradical(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in fx.all.iter().filter(|e| e.module.ring().modulus().is_some()) {
        let rep = spectrum::is_pradical(&e.module, Strategy::Both, &fx.caps).expect("is_pradical");
        o.check(rep.pradical, || format!("{} is not P-radical", e.name));
    }
    o
}

fn strategy_oracle(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in fx.finite.iter().filter(|e| size(&e.module) <= 128) {
        let brute = spectrum::spec_enumerate(&e.module, Strategy::BruteForce, &fx.caps).unwrap();
        let classified = spectrum::spec_enumerate(&e.module, Strategy::Classified, &fx.caps).unwrap();
        o.check(brute == classified, || format!("spectra differ on {}", e.name));
    }
    o
}

fn prime_radical_oracle(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in fx.finite.iter().filter(|e| size(&e.module) <= 64) {
        let m = &e.module;
        let spec = spectrum::spec_enumerate(m, Strategy::BruteForce, &fx.caps).unwrap();
        for n in spectrum::enumerate_submodules(m, &fx.caps).unwrap() {
            let closed = spectrum::prime_radical(&n, m, Strategy::Classified, &fx.caps).unwrap();
            // intersection of the primes containing N, or M
            let mut meet = m.full_submodule();
            for p in spec.iter() {
                if m.is_subset(&n, &p.sub).unwrap() {
                    meet = m.sub_intersect(&meet, &p.sub).unwrap();
                }
            }
            o.check(closed == meet, || format!("prime radical differs on {}", e.name));
        }
    }
    o
}

fn stalks(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in &fx.finite {
        let m = &e.module;
        let sheaf = StructureSheaf::new(m).unwrap();
        for p in spectrum::spec_enumerate(m, Strategy::Classified, &fx.caps).unwrap().iter() {
            let st = sheaf::stalk(&sheaf, p, &fx.caps).unwrap();
            let prime = p.char_ideal.gen();
            let pairs =
                localization::localize_bruteforce(m, &MultSet::ComplementOfPrime(prime), &fx.caps).unwrap();
            o.check(st.bijective && st.localized.iso_class_equal(&pairs), || {
                format!("stalk at ({prime}) of {}", e.name)
            });
        }
    }
    o
}

fn global_sections(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in &fx.finite {
        let m = &e.module;
        for f in 0..=SCAN_LIMIT {
            let psi = sheaf::psi_map(m, f, &fx.caps).unwrap();
            o.check(psi.well_defined && psi.bijective, || format!("ψ at f = {f} on {}", e.name));
            if f == 1 {
                o.check(module::iso_class_equal(psi.space().carrier(), m), || {
                    format!("global sections of {}", e.name)
                });
            }
        }
    }
    o
}

fn iso_criterion(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in &fx.finite {
        let m = &e.module;
        let local: Vec<_> = (1..=SCAN_LIMIT)
            .map(|f| localization::localize_bruteforce(m, &MultSet::PowersOf(f), &fx.caps).unwrap())
            .collect();
        for f in 1..=SCAN_LIMIT {
            for g in 1..=SCAN_LIMIT {
                let c = sheaf::iso_criterion(m, f, g).unwrap();
                let iso = local[(f - 1) as usize].iso_class_equal(&local[(g - 1) as usize]);
                o.check(c.radicals_equal == iso && c.modules_isomorphic == iso, || {
                    format!("f = {f}, g = {g} on {}", e.name)
                });
            }
        }
    }
    for p in corpus::PRUFER_PRIMES {
        let m = FgModule::prufer(p).unwrap();
        let q = [2, 3, 5, 7].into_iter().find(|&q| q != p).unwrap();
        let c = sheaf::iso_criterion(&m, p, q).unwrap();
        let mp = localization::localize(&m, &MultSet::PowersOf(p)).unwrap();
        let mq = localization::localize(&m, &MultSet::PowersOf(q)).unwrap();
        o.check(
            c.radical_f.is_unit()
                && c.radical_g.is_unit()
                && mp.is_zero()
                && mq.kind == LocalKind::Prufer(p)
                && !c.modules_isomorphic,
            || format!("Prufer({p}) counterexample"),
        );
    }
    o
}

fn prufer_controls(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for p in corpus::PRUFER_PRIMES {
        let m = FgModule::prufer(p).unwrap();
        let spec = spectrum::spec_enumerate(&m, Strategy::Both, &fx.caps).unwrap();
        o.check(spec.is_empty(), || format!("Spec(Prufer({p})) nonempty"));
        let rep = spectrum::is_pradical(&m, Strategy::Both, &fx.caps).unwrap();
        let cert = rep.certificate.clone();
        o.check(
            !rep.pradical && cert.is_some_and(|c| c.prime.gen() == p && c.radical_colon.is_unit()),
            || format!("Prufer({p}) certificate"),
        );
        let psi = sheaf::psi_map(&m, 1, &fx.caps).unwrap();
        o.check(psi.space().cardinality() == 1 && !m.is_zero() && !psi.bijective, || {
            format!("O(Spec Prufer({p})) is not 0")
        });
    }
    o
}

fn radical_distributivity(_: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=60usize {
        let ring = RingDesc::integers_mod(n as Int).unwrap();
        let sub = SubsetIdeals::new(n);
        let k = sub.gens.len();
        let ideal = |i: usize| Ideal::new(ring, sub.gens[i]).unwrap();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let lhs = sub.radical(sub.meet(sub.sum(a, b), sub.sum(a, c)));
                    let rhs = sub.radical(sub.sum(a, sub.meet(b, c)));
                    let (i, j, kk) = (ideal(a), ideal(b), ideal(c));
                    let lib_l = i.sum(&j).unwrap().intersect(&i.sum(&kk).unwrap()).unwrap().radical().unwrap();
                    let lib_r = i.sum(&j.intersect(&kk).unwrap()).unwrap().radical().unwrap();
                    o.check(
                        lhs == rhs && lib_l.gen() == sub.gens[lhs] && lib_r.gen() == sub.gens[rhs],
                        || format!("Z/{n}: ({}), ({}), ({})", sub.gens[a], sub.gens[b], sub.gens[c]),
                    );
                }
            }
        }
    }
    let mut rng = corpus::rng(corpus::DEFAULT_SEED);
    for _ in 0..1000 {
        let [i, j, k] = corpus::random_ideal_triple(1_000_000, &mut rng).unwrap();
        let (a, b, c) = (i.gen(), j.gen(), k.gen());
        let lcm = |x: Int, y: Int| if x == 0 || y == 0 { 0 } else { x / gcd(x, y) * y };
        let lhs = squarefree_kernel(lcm(gcd(a, b), gcd(a, c)));
        let rhs = squarefree_kernel(gcd(a, lcm(b, c)));
        let lib_l = i.sum(&j).unwrap().intersect(&i.sum(&k).unwrap()).unwrap().radical().unwrap();
        let lib_r = i.sum(&j.intersect(&k).unwrap()).unwrap().radical().unwrap();
        o.check(lhs == rhs && lib_l.gen() == lhs && lib_r.gen() == rhs, || format!("Z: ({a}), ({b}), ({c})"));
    }
    o
}

fn mult_sets(m: &FgModule) -> Vec<MultSet> {
    let mut out: Vec<MultSet> = (0..=SCAN_LIMIT).map(MultSet::PowersOf).collect();
    out.extend(m.relevant_primes().unwrap().into_iter().map(MultSet::ComplementOfPrime));
    out
}

fn correspondence(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in &fx.all {
        let m = &e.module;
        if m.is_prufer() {
            let c = localization::prime_correspondence(m, &MultSet::PowersOf(2), Strategy::Both, &fx.caps).unwrap();
            o.check(c.pairs.is_empty(), || format!("{} has primes", e.name));
            continue;
        }
        for s in mult_sets(m) {
            let ctx = || format!("{} at {s:?}", e.name);
            let c = match localization::prime_correspondence(m, &s, Strategy::Both, &fx.caps) {
                Ok(c) => c,
                Err(err) => {
                    o.check(false, || format!("{}: {err}", ctx()));
                    continue;
                }
            };
            let map = LocalizationMap::new(m, &s).unwrap();
            let target_spec = spectrum::spec_enumerate(map.target(), Strategy::BruteForce, &fx.caps).unwrap();
            let expected: usize = spectrum::spec_enumerate(m, Strategy::BruteForce, &fx.caps)
                .unwrap()
                .iter()
                .filter(|p| !s.meets(&p.char_ideal).unwrap())
                .count();
            o.check(c.pairs.len() == expected && c.pairs.len() == target_spec.len(), ctx);
            let ring = map.localized_ring().unwrap();
            for (p, q) in &c.pairs {
                let round_trip = map.extend(&p.sub).unwrap() == q.sub && map.contract(&q.sub).unwrap() == p.sub;
                let colons = p.char_ideal.extend_to(ring).unwrap()
                    == map.target().colon(&q.sub).unwrap().extend_to(ring).unwrap();
                o.check(round_trip && colons, ctx);
            }
        }
    }
    o
}

fn direct_sums(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = corpus::rng(corpus::DEFAULT_SEED);
    for (i, j) in corpus::random_pairs(&fx.finite, 200, &mut rng) {
        let (m1, m2) = (&fx.finite[i].module, &fx.finite[j].module);
        let name = format!("{} ⊕ {}", fx.finite[i].name, fx.finite[j].name);
        let ds = module::direct_sum(m1, m2).unwrap();
        let sum = &ds.module;
        let small = size(sum) <= fx.caps.bruteforce;
        let strategy = if small { Strategy::Both } else { Strategy::Classified };
        o.check(spectrum::is_pradical(sum, strategy, &fx.caps).unwrap().pradical, || name.clone());

        let right: Vec<ModElement> = m2.basis().iter().map(|x| ds.inject_right(x).unwrap()).collect();
        for p in spectrum::spec_enumerate(m1, Strategy::Classified, &fx.caps).unwrap().iter() {
            let mut gens: Vec<ModElement> =
                m1.submodule_generators(&p.sub).unwrap().iter().map(|x| ds.inject_left(x).unwrap()).collect();
            gens.extend(right.iter().cloned());
            let lifted = sum.submodule_from_generators(&gens).unwrap();
            let prime = p.char_ideal.gen();
            let mut ok = quotient_is_fp_space(sum, &lifted, prime) && sum.colon(&lifted).unwrap() == p.char_ideal;
            if small {
                ok &= spectrum::is_prime_submodule(&lifted, sum, &fx.caps).unwrap() == Some(p.char_ideal);
            }
            o.check(ok, || format!("lifted ({prime})-prime in {name}"));
        }
    }
    o
}

fn localization_oracle(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in &fx.finite {
        let m = &e.module;
        let mut sets = mult_sets(m);
        for p in [0, 2, 3, 5] {
            let s = MultSet::ComplementOfPrime(p);
            if s.validate(m.ring()).is_ok() && !sets.contains(&s) {
                sets.push(s);
            }
        }
        for s in sets {
            let sym = localization::localize(m, &s).unwrap();
            let pairs = localization::localize_bruteforce(m, &s, &fx.caps).unwrap();
            o.check(sym.iso_class_equal(&pairs), || format!("{} at {s:?}", e.name));
        }
    }
    o
}

fn covers(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = corpus::rng(corpus::DEFAULT_SEED ^ 0xc0);
    for _ in 0..100 {
        let e = &fx.finite[rng.gen_range(0..fx.finite.len())];
        let m = &e.module;
        let (f, hs) = corpus::random_cover(m, &mut rng).unwrap();
        let ctx = || format!("D({f}M) by {hs:?} on {}", e.name);
        let d = match sheaf::cover_decompose(m, f, &hs) {
            Ok(d) => d,
            Err(err) => {
                o.check(false, || format!("{}: {err}", ctx()));
                continue;
            }
        };
        let reduce = |x: Int| match m.ring().modulus() {
            Some(n) => x.rem_euclid(n),
            None => x,
        };
        let lhs = (0..d.exponent).fold(reduce(1), |acc, _| reduce(acc * f));
        let rhs = d.terms.iter().fold(0, |acc, (r, b)| reduce(acc + r * b));
        let members = d.terms.iter().zip(&hs).all(|((r, _), &h)| {
            let colon = m.colon(&m.scalar_multiple_submodule(h).unwrap()).unwrap();
            colon.gen() == 0 && reduce(*r) == 0 || colon.gen() != 0 && r % colon.gen() == 0
        });
        let union: BTreeSet<Int> = d.terms.iter().flat_map(|(r, _)| basic_open_oracle(m, *r)).collect();
        o.check(lhs == rhs && members && union == basic_open_oracle(m, f), ctx);
    }
    o
}

fn sheaf_axioms(fx: &Fixture) -> Outcome {
    let mut o = Outcome::new();
    for e in &fx.all {
        if spectrum::fiber_labels(&e.module).unwrap().len() > 4 {
            continue;
        }
        let r = sheaf::sheaf_axioms_check(&e.module, &fx.caps).unwrap();
        o.check(r.passed(), || format!("{}: {:?}", e.name, r.failures));
    }
    o
}

fn main() -> ExitCode {
    let all = corpus::corpus().expect("corpus");
    let finite: Vec<CorpusEntry> = all.iter().filter(|e| e.module.is_finite()).cloned().collect();
    let fx = Fixture { all, finite, caps: Caps::default() };
    println!("corpus: {} modules, {} finite", fx.all.len(), fx.finite.len());

    let criteria: [(&str, Criterion, Option<f64>); 13] = [
        ("every module over Z/n is P-radical", artinian_pradical, Some(60.0)),
        ("brute-force and classified spectra agree", strategy_oracle, None),
        ("closed-form prime radical matches intersection of primes", prime_radical_oracle, None),
        ("stalks are the localizations at primes", stalks, None),
        ("psi from M_f onto sections over D(fM) is bijective", global_sections, None),
        ("equal colon radicals iff isomorphic localizations", iso_criterion, None),
        ("Prufer groups: empty spectrum, not P-radical, zero sections", prufer_controls, None),
        ("radical of (I+J)∩(I+K) equals radical of I+(J∩K)", radical_distributivity, None),
        ("prime correspondence under localization", correspondence, None),
        ("direct sums stay P-radical and primes lift", direct_sums, None),
        ("symbolic localization matches the pair construction", localization_oracle, None),
        ("cover decompositions f^n = Σ r_i b_i", covers, None),
        ("sheaf identity, gluing and restriction axioms", sheaf_axioms, None),
    ];

    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run(&fx);
        let secs = t.elapsed().as_secs_f64();
        let in_budget = budget.is_none_or(|b| secs < b);
        let ok = o.failures.is_empty() && o.checked > 0 && in_budget;
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {} checks, {} failures, {secs:.1}s",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            o.checked,
            o.failures.len()
        );
        for f in o.failures.iter().filter(|f| !f.is_empty()) {
            println!("        {f}");
        }
        if !in_budget {
            println!("        exceeded the {:.0}s budget", budget.unwrap());
        }
    }
    println!("acceptance: {}/13 passed in {:.1}s", 13 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
