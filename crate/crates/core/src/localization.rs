//! Localization of modules at `{1, f, f^2, …}` or at the complement of a prime.
//!
//! For a finite module the localization map `M → M_S` is onto with kernel the
//! `S`-torsion submodule, so `M_S` is realized concretely as that quotient.
//! Over such `M_S` every element of `S` acts invertibly, hence its
//! `R_S`-submodules and `R_S`-primes are exactly its `Z`-submodules and
//! `Z`-primes whose characteristic ideal avoids `S`.

use std::collections::BTreeMap;

use crate::arith::{self, Ideal, Int, LocalizedAt, LocalizedRing, RingDesc};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::module::{FgModule, ModElement, Quotient, Submodule};
use crate::spectrum::{self, PrimeSubmodule, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultSet {
    PowersOf(Int),
    /// `R \ (p)`; `p = 0` means every nonzero element.
    ComplementOfPrime(Int),
}

impl MultSet {
    pub fn validate(&self, ring: RingDesc) -> Result<()> {
        if let MultSet::ComplementOfPrime(p) = *self {
            if p < 0 || (p != 0 && !arith::is_prime(p)?) {
                return Err(Error::InvalidInput(format!("{p} is not a prime")));
            }
            if p == 0 && ring.modulus().is_some() {
                return Err(Error::InvalidInput("(0) is not a prime ideal of Z/n here".into()));
            }
            if let Some(n) = ring.modulus() {
                if p != 0 && n % p != 0 {
                    return Err(Error::InvalidInput(format!("({p}) is not a prime ideal of Z/{n}")));
                }
            }
        }
        Ok(())
    }

    /// Whether `0 ∈ S`, which forces every localization to vanish.
    pub fn is_degenerate(&self, ring: RingDesc) -> Result<bool> {
        match *self {
            MultSet::PowersOf(f) => {
                let f = ring.reduce(f);
                Ok(match ring.modulus() {
                    _ if f == 0 => true,
                    Some(n) => f % arith::rad(n)? == 0,
                    None => false,
                })
            }
            MultSet::ComplementOfPrime(_) => Ok(false),
        }
    }

    /// `S ∩ I ≠ ∅`.
    pub fn meets(&self, ideal: &Ideal) -> Result<bool> {
        match *self {
            MultSet::PowersOf(f) => {
                Ok(ideal.is_unit() || arith::radical_membership_witness(f, ideal)?.is_some())
            }
            MultSet::ComplementOfPrime(q) => Ok(!arith::divides(q, ideal.gen())),
        }
    }

    /// Membership of a ring element, up to the reduction of the ring.
    pub fn contains(&self, s: Int, ring: RingDesc) -> Result<bool> {
        let s = ring.reduce(s);
        match *self {
            MultSet::ComplementOfPrime(q) => Ok(!arith::divides(q, s)),
            MultSet::PowersOf(f) => {
                let f = ring.reduce(f);
                let mut x = ring.reduce(1);
                for _ in 0..=Int::BITS {
                    if x == s {
                        return Ok(true);
                    }
                    let next = ring.reduce(arith::mul(x, f)?);
                    if next == x || (ring.modulus().is_none() && next.abs() > s.abs()) {
                        return Ok(false);
                    }
                    x = next;
                }
                Ok(false)
            }
        }
    }

    /// The localized base ring, or the original ring when `S` is degenerate.
    pub fn localized_ring(&self, ring: RingDesc) -> Result<RingDesc> {
        if self.is_degenerate(ring)? {
            return Ok(ring);
        }
        let at = match *self {
            MultSet::PowersOf(f) => LocalizedAt::Invert(ring.reduce(f)),
            MultSet::ComplementOfPrime(p) => LocalizedAt::Prime(p),
        };
        Ok(RingDesc::IntegersLocalized(LocalizedRing { modulus: ring.modulus(), at }))
    }

    /// The part of a torsion order `e` that survives localization.
    pub fn surviving_part(&self, e: Int, ring: RingDesc) -> Result<Int> {
        if self.is_degenerate(ring)? {
            return Ok(1);
        }
        match *self {
            MultSet::PowersOf(f) => arith::strip_primes_of(e, ring.reduce(f)),
            MultSet::ComplementOfPrime(q) => Ok(arith::primary_part(e, q)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalKind {
    Zero,
    Prufer(Int),
    Standard,
}

/// Invariant data of `M_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedModule {
    pub base: RingDesc,
    pub factors: Vec<Int>,
    pub free_rank: usize,
    pub kind: LocalKind,
}

impl LocalizedModule {
    fn zero(base: RingDesc) -> Self {
        LocalizedModule { base, factors: Vec::new(), free_rank: 0, kind: LocalKind::Zero }
    }

    fn standard(base: RingDesc, mut factors: Vec<Int>, free_rank: usize) -> Self {
        factors.retain(|&e| e != 1);
        factors.sort();
        if factors.is_empty() && free_rank == 0 {
            return Self::zero(base);
        }
        LocalizedModule { base, factors, free_rank, kind: LocalKind::Standard }
    }

    pub fn is_zero(&self) -> bool {
        self.kind == LocalKind::Zero
    }

    pub fn cardinality(&self) -> Option<u128> {
        match self.kind {
            LocalKind::Zero => Some(1),
            LocalKind::Prufer(_) => None,
            LocalKind::Standard if self.free_rank > 0 => None,
            LocalKind::Standard => Some(self.factors.iter().map(|&e| e as u128).product()),
        }
    }

    /// Isomorphism as modules over the original ring.
    pub fn iso_class_equal(&self, other: &LocalizedModule) -> bool {
        self.kind == other.kind && self.factors == other.factors && self.free_rank == other.free_rank
    }

    /// Whether a concrete module has exactly these invariants.
    pub fn matches(&self, m: &FgModule) -> bool {
        match self.kind {
            LocalKind::Zero => m.is_zero(),
            LocalKind::Prufer(p) => m.prufer_prime() == Some(p),
            LocalKind::Standard => {
                !m.is_prufer() && m.factors() == self.factors.as_slice() && m.free_rank() == self.free_rank
            }
        }
    }
}

/// `M_S` from the invariant factors: primes inverted by `S` are stripped.
pub fn localize(m: &FgModule, s: &MultSet) -> Result<LocalizedModule> {
    let ring = m.ring();
    s.validate(ring)?;
    let base = s.localized_ring(ring)?;
    if s.is_degenerate(ring)? {
        return Ok(LocalizedModule::zero(base));
    }
    if let Some(p) = m.prufer_prime() {
        let survives = match *s {
            MultSet::PowersOf(f) => !arith::divides(p, f),
            MultSet::ComplementOfPrime(q) => q == p,
        };
        return Ok(if survives {
            LocalizedModule { base, factors: Vec::new(), free_rank: 0, kind: LocalKind::Prufer(p) }
        } else {
            LocalizedModule::zero(base)
        });
    }
    let factors = m
        .factors()
        .iter()
        .map(|&e| s.surviving_part(e, ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalizedModule::standard(base, factors, m.free_rank()))
}

/// The `S`-torsion submodule `{m : s·m = 0 for some s ∈ S}` of a module
/// without Prufer kind.
pub fn s_torsion(m: &FgModule, s: &MultSet) -> Result<Submodule> {
    let ring = m.ring();
    if s.is_degenerate(ring)? {
        return Ok(m.full_submodule());
    }
    let mut gens = Vec::new();
    for (i, &e) in m.factors().iter().enumerate() {
        let mut v = vec![0; m.dim()];
        v[i] = s.surviving_part(e, ring)?;
        gens.push(m.element(&v)?);
    }
    m.submodule_from_generators(&gens)
}

/// The natural map `λ: M → M_S` of a finite module, with `M_S` realized as `M / T_S`.
#[derive(Debug, Clone)]
pub struct LocalizationMap {
    pub set: MultSet,
    pub source: FgModule,
    pub kernel: Submodule,
    quotient: Quotient,
}

impl LocalizationMap {
    pub fn new(m: &FgModule, s: &MultSet) -> Result<Self> {
        s.validate(m.ring())?;
        if !m.is_finite() {
            return Err(Error::InfiniteModule);
        }
        let kernel = s_torsion(m, s)?;
        let quotient = m.quotient(&kernel)?;
        Ok(LocalizationMap { set: *s, source: m.clone(), kernel, quotient })
    }

    pub fn target(&self) -> &FgModule {
        &self.quotient.module
    }

    /// `m ↦ m/1`.
    pub fn apply(&self, x: &ModElement) -> Result<ModElement> {
        self.quotient.project(x)
    }

    /// Some `m` with `λ(m) = y`.
    pub fn lift(&self, y: &ModElement) -> Result<ModElement> {
        self.source.element(&self.target().to_generator_coords(y)?)
    }

    /// `P ↦ P_S`.
    pub fn extend(&self, p: &Submodule) -> Result<Submodule> {
        let gens = self
            .source
            .submodule_generators(p)?
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        self.target().submodule_from_generators(&gens)
    }

    /// `Q ↦ Q^c = {m : λ(m) ∈ Q}`.
    pub fn contract(&self, q: &Submodule) -> Result<Submodule> {
        let gens = self.target().submodule_generators(q)?;
        self.source.preimage(&self.quotient, &self.kernel, &gens)
    }

    /// The base ring `R_S` in which localized ideals live.
    pub fn localized_ring(&self) -> Result<RingDesc> {
        self.set.localized_ring(self.source.ring())
    }
}

/// Structure of a finite abelian group from the element orders alone.
fn invariants_from_orders(orders: &[Int]) -> Result<Vec<Int>> {
    let exponent = orders.iter().fold(1, |acc, &o| acc / arith::gcd(acc, o) * o);
    let mut per_prime: BTreeMap<Int, Vec<u32>> = BTreeMap::new();
    for (p, a) in arith::factorize(exponent)? {
        // c_j = #{x : p^j x = 0}; the number of cyclic p-factors of order
        // at least p^j is log_p(c_j / c_{j-1}).
        let mut prev = 1u128;
        let mut at_least = Vec::new();
        for j in 1..=a {
            let pj = arith::pow(p, j)?;
            let c = orders.iter().filter(|&&o| arith::divides(o, pj) || pj % o == 0).count() as u128;
            let mut ratio = c / prev;
            let mut k = 0u32;
            while ratio > 1 {
                ratio /= p as u128;
                k += 1;
            }
            at_least.push(k);
            prev = c;
        }
        // exponents of the cyclic p-factors, largest first
        let count = at_least.first().copied().unwrap_or(0) as usize;
        let mut exps = vec![0u32; count];
        for (j, &k) in at_least.iter().enumerate() {
            for e in exps.iter_mut().take(k as usize) {
                *e = j as u32 + 1;
            }
        }
        per_prime.insert(p, exps);
    }
    let t = per_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1 as Int; t];
    for (p, exps) in &per_prime {
        for (i, &e) in exps.iter().enumerate() {
            factors[i] = arith::mul(factors[i], arith::pow(*p, e)?)?;
        }
    }
    factors.reverse();
    Ok(factors)
}

/// Image of `S` in `Z/e` (for `e ≥ 1`).
fn s_image(s: &MultSet, ring: RingDesc, e: Int) -> Result<Vec<Int>> {
    let mut out = std::collections::BTreeSet::new();
    match *s {
        MultSet::PowersOf(f) => {
            let f = ring.reduce(f);
            let mut x = 1 % e;
            while out.insert(x) {
                x = arith::mul(x, f.rem_euclid(e))? % e;
            }
        }
        MultSet::ComplementOfPrime(q) => {
            // S is periodic modulo lcm(e, q), so one period covers every residue
            let period = if q == 0 { e } else { arith::mul(e, q)? };
            for x in 1..=period {
                if s.contains(x, ring)? {
                    out.insert(x % e);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Independent construction of `M_S` from pairs `(m, s)` modulo
/// `(m,s) ~ (m',s') ⇔ u(s'm − sm') = 0 for some u ∈ S`.
pub fn localize_bruteforce(m: &FgModule, s: &MultSet, caps: &Caps) -> Result<LocalizedModule> {
    let ring = m.ring();
    s.validate(ring)?;
    let base = s.localized_ring(ring)?;
    let elems = m.elements(caps.cardinality)?;
    let e = m.exponent();
    let image = s_image(s, ring, e)?;
    let pairs = elems.len() as u128 * image.len() as u128;
    if pairs > caps.cardinality * caps.cardinality {
        return Err(Error::CapExceeded { what: "localization pairs", size: pairs, cap: caps.cardinality });
    }

    // y is S-torsion iff some u in the image of S kills it
    let killed: Vec<bool> = elems
        .iter()
        .map(|y| {
            image
                .iter()
                .map(|&u| m.scale(u, y).map(|z| z == m.zero_element()))
                .collect::<Result<Vec<bool>>>()
                .map(|v| v.into_iter().any(|b| b))
        })
        .collect::<Result<_>>()?;
    let equivalent = |(x, sx): (&ModElement, Int), (y, sy): (&ModElement, Int)| -> Result<bool> {
        let d = m.sub(&m.scale(sy, x)?, &m.scale(sx, y)?)?;
        Ok(killed[m.index_of(&d)])
    };

    let mut reps: Vec<(ModElement, Int)> = Vec::new();
    for x in &elems {
        for &sx in &image {
            let mut found = false;
            for (r, sr) in &reps {
                if equivalent((x, sx), (r, *sr))? {
                    found = true;
                    break;
                }
            }
            if !found {
                reps.push((x.clone(), sx));
            }
        }
    }

    // k·[(x, s)] = [(k x, s)]
    let zero = m.zero_element();
    let mut orders = Vec::with_capacity(reps.len());
    for (x, sx) in &reps {
        let mut k: Int = 1;
        loop {
            if equivalent((&m.scale(k, x)?, *sx), (&zero, 1))? {
                break;
            }
            k += 1;
        }
        orders.push(k);
    }
    let factors = invariants_from_orders(&orders)?;
    Ok(LocalizedModule::standard(base, factors, 0))
}

/// The bijection `P ↦ P_S` between primes of `M` whose characteristic ideal
/// avoids `S` and the primes of `M_S`.
#[derive(Debug, Clone)]
pub struct PrimeCorrespondence {
    pub pairs: Vec<(PrimeSubmodule, PrimeSubmodule)>,
    /// `((P:M)_S, (P_S : M_S))` for each pair.
    pub colon_pairs: Vec<(Ideal, Ideal)>,
}

fn violation(msg: String) -> Error {
    Error::Violation(msg)
}

pub fn prime_correspondence(
    m: &FgModule,
    s: &MultSet,
    strategy: Strategy,
    caps: &Caps,
) -> Result<PrimeCorrespondence> {
    s.validate(m.ring())?;
    if m.is_prufer() {
        // primeless on both sides
        return Ok(PrimeCorrespondence { pairs: Vec::new(), colon_pairs: Vec::new() });
    }
    let map = LocalizationMap::new(m, s)?;
    let target = map.target();
    let local_ring = map.localized_ring()?;
    let spec_m = spectrum::spec_enumerate(m, strategy, caps)?;
    let spec_s = spectrum::spec_enumerate(target, strategy, caps)?;

    let mut pairs = Vec::new();
    let mut colon_pairs = Vec::new();
    for p in spec_m.iter() {
        let avoids = !s.meets(&p.char_ideal)?;
        let ext = map.extend(&p.sub)?;
        let proper = !target.is_full(&ext);
        if avoids != proper {
            return Err(violation(format!(
                "on {m}: (P:M) ∩ S = ∅ is {avoids} but P_S ≠ M_S is {proper}"
            )));
        }
        if !avoids {
            continue;
        }
        let ext_char = spectrum::is_prime_submodule(&ext, target, caps)?
            .ok_or_else(|| violation(format!("on {m}: P_S is not prime in M_S")))?;
        if map.contract(&ext)? != p.sub {
            return Err(violation(format!("on {m}: (P_S)^c ≠ P")));
        }
        let lhs = p.char_ideal.extend_to(local_ring)?;
        let rhs = target.colon(&ext)?.extend_to(local_ring)?;
        if lhs != rhs {
            return Err(violation(format!("on {m}: (P:M)_S = {lhs} but (P_S:M_S) = {rhs}")));
        }
        colon_pairs.push((lhs, rhs));
        pairs.push((p.clone(), PrimeSubmodule { sub: ext, char_ideal: ext_char }));
    }

    // bijectivity onto Spec(M_S)
    let mut images: Vec<&Submodule> = pairs.iter().map(|(_, q)| &q.sub).collect();
    images.sort();
    let before = images.len();
    images.dedup();
    if images.len() != before {
        return Err(violation(format!("on {m}: P ↦ P_S is not injective")));
    }
    let mut targets: Vec<&Submodule> = spec_s.iter().map(|q| &q.sub).collect();
    targets.sort();
    if images != targets {
        return Err(violation(format!(
            "on {m}: image has {} primes but Spec(M_S) has {}",
            images.len(),
            targets.len()
        )));
    }
    for q in spec_s.iter() {
        if map.extend(&map.contract(&q.sub)?)? != q.sub {
            return Err(violation(format!("on {m}: (Q^c)_S ≠ Q")));
        }
    }
    // order: P1 ⊆ P2 ⇔ (P1)_S ⊆ (P2)_S
    for (p1, q1) in &pairs {
        for (p2, q2) in &pairs {
            if m.is_subset(&p1.sub, &p2.sub)? != target.is_subset(&q1.sub, &q2.sub)? {
                return Err(violation(format!("on {m}: correspondence is not order preserving")));
            }
        }
    }
    Ok(PrimeCorrespondence { pairs, colon_pairs })
}

/// Compares `{(P:M)_S : P ∈ V(IM), (P:M) ∩ S = ∅}` with
/// `{(Q : M_S) : Q ∈ V(I_S M_S)}` as sets of ideals of `R_S`.
pub fn check_variety_transfer(
    m: &FgModule,
    s: &MultSet,
    ideal: &Ideal,
    strategy: Strategy,
    caps: &Caps,
) -> Result<()> {
    let map = LocalizationMap::new(m, s)?;
    let target = map.target();
    let local_ring = map.localized_ring()?;
    let v_m = spectrum::variety(&m.ideal_multiple_submodule(ideal)?, m)?;
    let v_s = spectrum::variety(&target.ideal_multiple_submodule(ideal)?, target)?;

    let mut lhs = std::collections::BTreeSet::new();
    for p in spectrum::spec_enumerate(m, strategy, caps)?.iter() {
        if v_m.primes.contains(&p.char_ideal.gen()) && !s.meets(&p.char_ideal)? {
            lhs.insert(p.char_ideal.extend_to(local_ring)?);
        }
    }
    let mut rhs = std::collections::BTreeSet::new();
    for q in spectrum::spec_enumerate(target, strategy, caps)?.iter() {
        if v_s.primes.contains(&q.char_ideal.gen()) {
            rhs.insert(target.colon(&q.sub)?.extend_to(local_ring)?);
        }
    }
    if lhs != rhs {
        return Err(violation(format!("on {m}: variety transfer sets differ")));
    }
    Ok(())
}

/// Under `√[p](𝒫_S M_S) ≠ M_S` for all primes of `M_S`, checks
/// `∩_{P ∈ V(𝒫M)} (P:M)_S = (∩_{P ∈ V(𝒫M)} (P:M))_S` for each relevant `𝒫`.
/// Returns `false` when the hypothesis does not hold.
pub fn check_intersection_transfer(
    m: &FgModule,
    s: &MultSet,
    strategy: Strategy,
    caps: &Caps,
) -> Result<bool> {
    let map = LocalizationMap::new(m, s)?;
    let target = map.target();
    let local_ring = map.localized_ring()?;
    for q in target.relevant_primes()? {
        let rad = spectrum::prime_radical(&target.scalar_multiple_submodule(q)?, target, strategy, caps)?;
        if target.is_full(&rad) {
            return Ok(false);
        }
    }
    let spec_m = spectrum::spec_enumerate(m, strategy, caps)?;
    for p in m.relevant_primes()? {
        let v = spectrum::variety(&m.scalar_multiple_submodule(p)?, m)?;
        let mut local_meet = Ideal::unit(local_ring);
        let mut meet = Ideal::unit(m.ring());
        for prime in spec_m.iter().filter(|x| v.primes.contains(&x.char_ideal.gen())) {
            local_meet = local_meet.intersect(&prime.char_ideal.extend_to(local_ring)?)?;
            meet = meet.intersect(&prime.char_ideal)?;
        }
        if local_meet != meet.extend_to(local_ring)? {
            return Err(violation(format!("on {m}: intersection does not commute with localization")));
        }
    }
    Ok(true)
}

/// One hypothesis ⇒ conclusion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferClause {
    pub name: String,
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl TransferClause {
    pub fn passes(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

#[derive(Debug, Clone, Default)]
pub struct TransferReport {
    pub clauses: Vec<TransferClause>,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(TransferClause::passes)
    }
}

/// Local/global transfer of the ℙ-radical property for a finite module:
/// localization at each witness `S`, the converse from all `M_(p)`, and the
/// converse from maximal ideals with annihilators commuting.
pub fn verify_localization_transfer(
    m: &FgModule,
    witnesses: &[MultSet],
    strategy: Strategy,
    caps: &Caps,
) -> Result<TransferReport> {
    if !m.is_finite() {
        return Err(Error::InfiniteModule);
    }
    let mut report = TransferReport::default();
    let global = spectrum::is_pradical(m, strategy, caps)?.pradical;

    for s in witnesses {
        let map = LocalizationMap::new(m, s)?;
        let target = map.target();
        let mut hypothesis = global;
        for q in target.relevant_primes()? {
            let rad =
                spectrum::prime_radical(&target.scalar_multiple_submodule(q)?, target, strategy, caps)?;
            hypothesis &= !target.is_full(&rad);
        }
        let conclusion = spectrum::is_pradical(target, strategy, caps)?.pradical;
        report.clauses.push(TransferClause {
            name: format!("localization at {s:?} stays P-radical"),
            hypothesis,
            conclusion,
        });
    }

    let primes = m.relevant_primes()?;
    let mut all_local = true;
    let mut all_local_with_ann = true;
    for &p in &primes {
        let s = MultSet::ComplementOfPrime(p);
        let map = LocalizationMap::new(m, &s)?;
        let target = map.target();
        let local_ok = spectrum::is_pradical(target, strategy, caps)?.pradical;
        all_local &= !target.is_zero() && local_ok;
        let local_ring = map.localized_ring()?;
        let ann_commutes = target.annihilator()?.extend_to(local_ring)?
            == m.annihilator()?.extend_to(local_ring)?;
        all_local_with_ann &= local_ok && ann_commutes;
    }
    report.clauses.push(TransferClause {
        name: "nonzero P-radical localizations at every prime imply P-radical".into(),
        hypothesis: all_local,
        conclusion: global,
    });
    report.clauses.push(TransferClause {
        name: "P-radical localizations at maximal ideals with Ann commuting imply P-radical".into(),
        hypothesis: all_local_with_ann,
        conclusion: global,
    });
    Ok(report)
}
