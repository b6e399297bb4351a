//! Property checks over single modules and over the corpus.
//!
//! Each check either holds or records a failure message. Errors other than
//! [`Error::Violation`] abort the run; violations are recorded.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{Ideal, Int, RingDesc};
use crate::caps::Caps;
use crate::corpus::{self, CorpusEntry};
use crate::error::{Error, Result};
use crate::localization::{self, LocalizationMap, MultSet};
use crate::module::{self, FgModule, ModElement};
use crate::sheaf::{self, StructureSheaf};
use crate::spectrum::{self, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Spectrum,
    Ideals,
    Varieties,
    DirectSums,
    Localization,
    Stalks,
    GlobalSections,
    Covers,
    IsoCriterion,
    SheafAxioms,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Spectrum,
        Suite::Ideals,
        Suite::Varieties,
        Suite::DirectSums,
        Suite::Localization,
        Suite::Stalks,
        Suite::GlobalSections,
        Suite::Covers,
        Suite::IsoCriterion,
        Suite::SheafAxioms,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Spectrum => "spectrum",
            Suite::Ideals => "ideals",
            Suite::Varieties => "varieties",
            Suite::DirectSums => "direct-sums",
            Suite::Localization => "localization",
            Suite::Stalks => "stalks",
            Suite::GlobalSections => "global-sections",
            Suite::Covers => "covers",
            Suite::IsoCriterion => "iso-criterion",
            Suite::SheafAxioms => "sheaf-axioms",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Runs a fallible check; a violation counts as a failure.
    fn run(&mut self, ctx: &str, f: impl FnOnce() -> Result<bool>) -> Result<()> {
        match f() {
            Ok(ok) => self.check(ok, || ctx.to_string()),
            Err(Error::Violation(msg)) => self.check(false, || format!("{ctx}: {msg}")),
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub strategy: Strategy,
    pub caps: Caps,
    pub scan_limit: Int,
    pub seed: u64,
    pub pairs: usize,
    pub covers: usize,
    pub triples: usize,
    pub triple_bound: Int,
    /// Largest `n` for the exhaustive ideal-triple scan over `Z/n`.
    pub max_modulus: Int,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            strategy: Strategy::Both,
            caps: Caps::default(),
            scan_limit: corpus::SCAN_LIMIT,
            seed: corpus::DEFAULT_SEED,
            pairs: 200,
            covers: 100,
            triples: 1000,
            triple_bound: 1_000_000,
            max_modulus: 60,
        }
    }
}

impl Config {
    /// Scan bound covering every relevant prime of `m`.
    fn scan_for(&self, m: &FgModule) -> Result<Int> {
        let top = match m.prufer_prime() {
            Some(p) => p,
            None => m.relevant_primes()?.into_iter().max().unwrap_or(1),
        };
        Ok(self.scan_limit.max(top + 1))
    }

    fn strategy_for(&self, m: &FgModule) -> Strategy {
        match m.finite_cardinality(self.caps.bruteforce) {
            Ok(_) => self.strategy,
            Err(_) => Strategy::Classified,
        }
    }
}

pub fn lemma_radical_distributive(i: &Ideal, j: &Ideal, k: &Ideal) -> Result<bool> {
    let lhs = i.sum(j)?.intersect(&i.sum(k)?)?.radical()?;
    let rhs = i.sum(&j.intersect(k)?)?.radical()?;
    Ok(lhs == rhs)
}

fn check_ideals(ring: RingDesc, bound: Int, tally: &mut Tally) -> Result<()> {
    let ideals = corpus::ideals_of(ring, bound)?;
    for i in &ideals {
        for j in &ideals {
            for k in &ideals {
                let ok = lemma_radical_distributive(i, j, k)?;
                tally.check(ok, || format!("radical distributivity fails for {i}, {j}, {k}"));
            }
        }
    }
    Ok(())
}

fn check_spectrum(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    let caps = &cfg.caps;
    if let Some(p) = m.prufer_prime() {
        let spec = spectrum::spec_enumerate(m, Strategy::Classified, caps)?;
        tally.check(spec.is_empty(), || format!("Spec(Prufer({p})) is not empty"));
        let rep = spectrum::is_pradical(m, Strategy::Classified, caps)?;
        tally.check(!rep.pradical && rep.certificate.is_some(), || {
            format!("Prufer({p}) lacks a non-P-radical certificate")
        });
        return Ok(());
    }
    if !m.is_finite() {
        let rep = spectrum::is_pradical(m, Strategy::Classified, caps)?;
        tally.check(rep.pradical, || format!("{m} with free rank is not P-radical"));
        return Ok(());
    }
    let size = m.finite_cardinality(caps.cardinality)?;
    let strategy = cfg.strategy_for(m);
    if size <= caps.bruteforce {
        tally.run(&format!("spectrum strategies on {m}"), || {
            spectrum::spec_enumerate(m, Strategy::Both, caps).map(|_| true)
        })?;
    }
    if size <= 64 {
        for n in spectrum::enumerate_submodules(m, caps)? {
            tally.run(&format!("prime radical routes on {m}"), || {
                spectrum::prime_radical(&n, m, Strategy::Both, caps).map(|_| true)
            })?;
            let rad = spectrum::prime_radical(&n, m, Strategy::Classified, caps)?;
            let same = spectrum::variety(&n, m)?.primes == spectrum::variety(&rad, m)?.primes;
            tally.check(same, || format!("V(N) ≠ V(√N) on {m}"));
        }
    }
    let rep = spectrum::is_pradical(m, strategy, caps)?;
    tally.check(rep.pradical, || format!("finite module {m} is not P-radical"));
    let nat = spectrum::natural_map(m, strategy, caps)?;
    tally.check(nat.surjective, || format!("finite module {m} is not primeful"));
    Ok(())
}

fn check_varieties(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    if !m.is_finite() {
        return Ok(());
    }
    let ring = m.ring();
    let ideals = corpus::ideals_of(ring, cfg.scan_for(m)?)?;
    let ann = m.annihilator()?;
    let v = |i: &Ideal| -> Result<BTreeSet<Int>> {
        Ok(spectrum::variety(&m.ideal_multiple_submodule(i)?, m)?.primes)
    };
    let colon_rad = |i: &Ideal| -> Result<Ideal> { m.colon(&m.ideal_multiple_submodule(i)?)?.radical() };
    for i1 in &ideals {
        let v1 = v(i1)?;
        for i2 in &ideals {
            let v2 = v(i2)?;
            if !v1.is_subset(&v2) {
                continue;
            }
            if i1.contains(&ann) && i2.contains(&ann) {
                let ok = i1.radical()?.contains(&i2.radical()?);
                tally.check(ok, || format!("V({i1}M) ⊆ V({i2}M) but √I2 ⊄ √I1 on {m}"));
            }
            let ok = colon_rad(i1)?.contains(&colon_rad(i2)?);
            tally.check(ok, || format!("V({i1}M) ⊆ V({i2}M) but colon radicals disagree on {m}"));
        }
        if *i1 == i1.radical()? {
            let fixed = m.colon(&m.ideal_multiple_submodule(i1)?)? == *i1;
            tally.check(fixed == i1.contains(&ann), || format!("(IM:M) = I vs Ann ⊆ I for {i1} on {m}"));
        }
    }
    Ok(())
}

fn check_direct_sum(m1: &FgModule, m2: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    let caps = &cfg.caps;
    let ds = module::direct_sum(m1, m2)?;
    let sum = &ds.module;
    let both = spectrum::is_pradical(m1, cfg.strategy_for(m1), caps)?.pradical
        && spectrum::is_pradical(m2, cfg.strategy_for(m2), caps)?.pradical;
    if both {
        let ok = spectrum::is_pradical(sum, cfg.strategy_for(sum), caps)?.pradical;
        tally.check(ok, || format!("{m1} ⊕ {m2} is not P-radical"));
    }
    let small = sum.finite_cardinality(caps.cardinality).is_ok();
    let right: Vec<ModElement> =
        m2.basis().iter().map(|x| ds.inject_right(x)).collect::<Result<_>>()?;
    for p in spectrum::spec_enumerate(m1, Strategy::Classified, caps)?.iter() {
        let mut gens: Vec<ModElement> = m1
            .submodule_generators(&p.sub)?
            .iter()
            .map(|x| ds.inject_left(x))
            .collect::<Result<_>>()?;
        gens.extend(right.iter().cloned());
        let lifted = sum.submodule_from_generators(&gens)?;
        let ok = if small {
            spectrum::is_prime_submodule(&lifted, sum, caps)? == Some(p.char_ideal)
        } else {
            spectrum::fiber_classified(sum, p.char_ideal.gen())?
                .iter()
                .any(|q| q.sub == lifted)
        };
        tally.check(ok, || format!("P ⊕ M2 is not {}-prime in {m1} ⊕ {m2}", p.char_ideal));
    }
    Ok(())
}

fn mult_sets(m: &FgModule, cfg: &Config) -> Result<Vec<MultSet>> {
    let mut out: Vec<MultSet> = (0..=cfg.scan_for(m)?).map(MultSet::PowersOf).collect();
    out.extend(m.relevant_primes()?.into_iter().map(MultSet::ComplementOfPrime));
    Ok(out)
}

fn check_localization(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    let caps = &cfg.caps;
    if let Some(p) = m.prufer_prime() {
        for f in 0..=cfg.scan_for(m)? {
            let l = localization::localize(m, &MultSet::PowersOf(f))?;
            let expect_zero = f % p == 0;
            tally.check(l.is_zero() == expect_zero, || format!("Prufer({p}) localized at {f}"));
        }
        let c = localization::prime_correspondence(m, &MultSet::PowersOf(1), Strategy::Classified, caps)?;
        tally.check(c.pairs.is_empty(), || format!("Prufer({p}) has a prime correspondence"));
        return Ok(());
    }
    if !m.is_finite() {
        return Ok(());
    }
    let strategy = cfg.strategy_for(m);
    let sets = mult_sets(m, cfg)?;
    let ring = m.ring();
    let mut ideals: Vec<Ideal> = vec![Ideal::zero(ring)?];
    let e = m.exponent();
    for d in (1..=e).filter(|d| e % d == 0) {
        ideals.push(Ideal::new(ring, d)?);
    }
    ideals.sort();
    ideals.dedup();
    for s in &sets {
        let ctx = format!("{m} at {s:?}");
        let sym = localization::localize(m, s)?;
        let brute = localization::localize_bruteforce(m, s, caps)?;
        tally.check(sym.iso_class_equal(&brute), || format!("{ctx}: symbolic and pair-class localizations differ"));
        let map = LocalizationMap::new(m, s)?;
        tally.check(sym.matches(map.target()), || format!("{ctx}: M/T_S does not match the invariants"));
        tally.run(&format!("{ctx}: prime correspondence"), || {
            localization::prime_correspondence(m, s, strategy, caps).map(|_| true)
        })?;
        for i in &ideals {
            tally.run(&format!("{ctx}: variety transfer for {i}"), || {
                localization::check_variety_transfer(m, s, i, Strategy::Classified, caps).map(|_| true)
            })?;
        }
        tally.run(&format!("{ctx}: intersection transfer"), || {
            localization::check_intersection_transfer(m, s, Strategy::Classified, caps).map(|_| true)
        })?;
    }
    let report = localization::verify_localization_transfer(m, &sets, Strategy::Classified, caps)?;
    for c in &report.clauses {
        tally.check(c.passes(), || format!("{m}: {}", c.name));
    }
    Ok(())
}

fn check_stalks(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    let caps = &cfg.caps;
    if !m.is_finite() {
        if m.is_prufer() {
            let sheaf = StructureSheaf::new(m)?;
            tally.check(sheaf.spectrum().is_empty(), || format!("{m} has stalks"));
        }
        return Ok(());
    }
    let sheaf = StructureSheaf::new(m)?;
    for p in spectrum::spec_enumerate(m, cfg.strategy_for(m), caps)?.iter() {
        let st = sheaf::stalk(&sheaf, p, caps)?;
        tally.check(st.bijective, || format!("stalk at a ({})-prime of {m} is not M_(p)", st.prime));
    }
    if m.finite_cardinality(caps.cardinality)? <= 64 {
        for &p in sheaf.spectrum().primes() {
            let (classes, consistent) = sheaf::germ_classes(&sheaf, p, caps)?;
            let expect = sheaf.sections(&spectrum::OpenSet::from_primes([p]))?.cardinality();
            tally.check(consistent && classes as u128 == expect, || {
                format!("germs at ({p}) of {m} disagree with values")
            });
        }
    }
    Ok(())
}

fn check_global_sections(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    let caps = &cfg.caps;
    if let Some(p) = m.prufer_prime() {
        let psi = sheaf::psi_map(m, 1, caps)?;
        let pradical = spectrum::is_pradical(m, Strategy::Classified, caps)?.pradical;
        tally.check(!psi.bijective && !pradical && psi.space().cardinality() == 1 && !m.is_zero(), || {
            format!("Prufer({p}) global sections control")
        });
        return Ok(());
    }
    if !m.is_finite() {
        return Ok(());
    }
    let pradical = spectrum::is_pradical(m, cfg.strategy_for(m), caps)?.pradical;
    for f in 0..=cfg.scan_for(m)? {
        let psi = sheaf::psi_map(m, f, caps)?;
        if pradical {
            tally.check(psi.well_defined && psi.bijective, || format!("ψ for f = {f} on {m} is not bijective"));
            let zero_space = psi.space().cardinality() == 1;
            tally.check(zero_space == psi.open.is_empty() && zero_space == psi.localized.is_zero(), || {
                format!("O(D({f}M)) = 0, D({f}M) = ∅ and M_{f} = 0 disagree on {m}")
            });
        }
        if f == 1 {
            tally.check(module::iso_class_equal(psi.space().carrier(), m), || {
                format!("global sections of {m} are not M")
            });
        }
    }
    for f in [1, 2, 3, 6] {
        for g in [2, 3, 5] {
            let pf = sheaf::psi_map(m, f, caps)?;
            let pfg = sheaf::psi_map(m, f * g, caps)?;
            let mf = LocalizationMap::new(m, &MultSet::PowersOf(f))?;
            let mfg = LocalizationMap::new(m, &MultSet::PowersOf(f * g))?;
            let mut ok = true;
            for x in mf.target().elements(caps.cardinality)? {
                let image = mfg.apply(&mf.lift(&x)?)?;
                ok &= sheaf::restrict(&pf.apply(&x)?, &pfg.open)? == pfg.apply(&image)?;
            }
            tally.check(ok, || format!("ψ is not natural for f = {f}, g = {g} on {m}"));
        }
    }
    Ok(())
}

fn check_cover(m: &FgModule, f: Int, hs: &[Int], tally: &mut Tally) -> Result<()> {
    let ctx = format!("cover of D({f}M) by {hs:?} on {m}");
    match sheaf::cover_decompose(m, f, hs) {
        Ok(d) => tally.check(sheaf::verify_cover(m, f, &d)?, || ctx),
        Err(e) => tally.check(false, || format!("{ctx}: {e}")),
    }
    Ok(())
}

fn check_iso(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    let caps = &cfg.caps;
    if let Some(p) = m.prufer_prime() {
        // the counterexample: equal radicals, non-isomorphic localizations
        let q = [2, 3, 5, 7].into_iter().find(|&q| q != p).expect("another prime");
        let c = sheaf::iso_criterion(m, p, q)?;
        tally.check(
            c.radical_f.is_unit() && c.radical_g.is_unit() && c.radicals_equal && !c.modules_isomorphic,
            || format!("Prufer({p}) counterexample does not reproduce"),
        );
        return Ok(());
    }
    let pradical = spectrum::is_pradical(m, cfg.strategy_for(m), caps)?.pradical;
    if !pradical {
        return Ok(());
    }
    let l = cfg.scan_for(m)?;
    for f in 1..=l {
        for g in 1..=l {
            let c = sheaf::iso_criterion(m, f, g)?;
            tally.check(c.agrees(), || format!("M_{f} ≅ M_{g} vs equal radicals disagree on {m}"));
        }
    }
    Ok(())
}

fn check_axioms(m: &FgModule, cfg: &Config, tally: &mut Tally) -> Result<()> {
    if !m.is_finite() && !m.is_prufer() {
        return Ok(());
    }
    if spectrum::fiber_labels(m)?.len() > sheaf::MAX_AXIOM_FIBERS {
        return Ok(());
    }
    let r = sheaf::sheaf_axioms_check(m, &cfg.caps)?;
    tally.checked += r.covers;
    for f in r.failures {
        tally.failures.push(format!("{m}: {f}"));
    }
    tally.check(true, String::new);
    Ok(())
}

/// Runs one suite on a single module.
pub fn check_module(suite: Suite, m: &FgModule, cfg: &Config) -> Result<Tally> {
    let mut t = Tally::default();
    match suite {
        Suite::Spectrum => check_spectrum(m, cfg, &mut t)?,
        Suite::Ideals => check_ideals(m.ring(), cfg.scan_limit, &mut t)?,
        Suite::Varieties => check_varieties(m, cfg, &mut t)?,
        Suite::DirectSums => {
            if m.is_finite() {
                check_direct_sum(m, m, cfg, &mut t)?
            }
        }
        Suite::Localization => check_localization(m, cfg, &mut t)?,
        Suite::Stalks => check_stalks(m, cfg, &mut t)?,
        Suite::GlobalSections => check_global_sections(m, cfg, &mut t)?,
        Suite::Covers => {
            // the decomposition needs M to be P-radical, which every finite module is
            if m.is_finite() {
                let mut rng = corpus::rng(cfg.seed);
                for _ in 0..cfg.covers {
                    let (f, hs) = corpus::random_cover(m, &mut rng)?;
                    check_cover(m, f, &hs, &mut t)?;
                }
            }
        }
        Suite::IsoCriterion => check_iso(m, cfg, &mut t)?,
        Suite::SheafAxioms => check_axioms(m, cfg, &mut t)?,
    }
    Ok(t)
}

/// Runs one suite over the corpus.
pub fn check_corpus(suite: Suite, cfg: &Config) -> Result<Tally> {
    let entries = corpus::corpus()?;
    let finite: Vec<CorpusEntry> = entries.iter().filter(|e| e.module.is_finite()).cloned().collect();
    let mut t = Tally::default();
    match suite {
        Suite::Ideals => {
            for n in 2..=cfg.max_modulus {
                check_ideals(RingDesc::integers_mod(n)?, 0, &mut t)?;
            }
            let mut rng = corpus::rng(cfg.seed);
            for _ in 0..cfg.triples {
                let [i, j, k] = corpus::random_ideal_triple(cfg.triple_bound, &mut rng)?;
                let ok = lemma_radical_distributive(&i, &j, &k)?;
                t.check(ok, || format!("radical distributivity fails for {i}, {j}, {k}"));
            }
        }
        Suite::DirectSums => {
            let mut rng = corpus::rng(cfg.seed);
            for (i, j) in corpus::random_pairs(&finite, cfg.pairs, &mut rng) {
                check_direct_sum(&finite[i].module, &finite[j].module, cfg, &mut t)?;
            }
        }
        Suite::Covers => {
            use rand::Rng;
            let mut rng = corpus::rng(cfg.seed);
            for _ in 0..cfg.covers {
                let m = &finite[rng.gen_range(0..finite.len())].module;
                let (f, hs) = corpus::random_cover(m, &mut rng)?;
                check_cover(m, f, &hs, &mut t)?;
            }
        }
        _ => {
            for e in &entries {
                t.merge(check_module(suite, &e.module, cfg)?);
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Config {
        Config { pairs: 5, covers: 5, triples: 50, max_modulus: 12, ..Config::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn every_suite_passes_on_small_modules() {
        let cfg = quick();
        let ms = [
            FgModule::cyclic(RingDesc::Integers, 12).unwrap(),
            FgModule::from_invariants(RingDesc::IntegersMod(6), &[6], 0).unwrap(),
            FgModule::from_invariants(RingDesc::Integers, &[2, 6], 0).unwrap(),
            FgModule::prufer(3).unwrap(),
            FgModule::zero(RingDesc::Integers).unwrap(),
        ];
        for m in &ms {
            for s in Suite::ALL {
                let t = check_module(s, m, &cfg).unwrap();
                assert!(t.passed(), "{s} on {m}: {:?}", t.failures);
            }
        }
    }

    #[test]
    fn corpus_level_ideals_and_pairs() {
        let cfg = quick();
        for s in [Suite::Ideals, Suite::DirectSums, Suite::Covers] {
            let t = check_corpus(s, &cfg).unwrap();
            assert!(t.passed() && t.checked > 0, "{s}: {:?}", t.failures);
        }
    }
}
