//! The structure sheaf on `Spec(M)` for finite `M`.
//!
//! Every fiber of a finite spectrum is open, so a locally constant section
//! over `U` is one value in `M_(p)` per fiber `p ∈ U`. Each `M_(p)` is realized
//! as the quotient `M / T_(p)` from [`LocalizationMap`].

use std::collections::{BTreeMap, HashMap};

use crate::arith::{self, Ideal, Int};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::localization::{self, LocalizationMap, LocalizedModule, MultSet};
use crate::module::{self, DirectSum, FgModule, ModElement};
use crate::spectrum::{self, OpenSet, PrimeSubmodule};

/// A function on the fibers of an open set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    open: OpenSet,
    values: BTreeMap<Int, ModElement>,
}

impl Section {
    pub fn open(&self) -> &OpenSet {
        &self.open
    }

    pub fn values(&self) -> &BTreeMap<Int, ModElement> {
        &self.values
    }

    pub fn value(&self, p: Int) -> Option<&ModElement> {
        self.values.get(&p)
    }
}

/// Drops the fibers outside `v`.
pub fn restrict(s: &Section, v: &OpenSet) -> Result<Section> {
    if !v.is_subset(&s.open) {
        return Err(Error::NotContained);
    }
    let values = s
        .values
        .iter()
        .filter(|(p, _)| v.contains(**p))
        .map(|(p, x)| (*p, x.clone()))
        .collect();
    Ok(Section { open: v.clone(), values })
}

/// `𝒪_Spec(M)` together with the local modules `M_(p)`.
#[derive(Debug, Clone)]
pub struct StructureSheaf {
    module: FgModule,
    local: BTreeMap<Int, LocalizationMap>,
}

impl StructureSheaf {
    /// Requires `M` finite or Prufer (whose spectrum is empty).
    pub fn new(m: &FgModule) -> Result<Self> {
        if !m.is_prufer() && !m.is_finite() {
            return Err(Error::InfiniteModule);
        }
        let mut local = BTreeMap::new();
        for p in spectrum::fiber_labels(m)? {
            local.insert(p, LocalizationMap::new(m, &MultSet::ComplementOfPrime(p))?);
        }
        Ok(StructureSheaf { module: m.clone(), local })
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn spectrum(&self) -> OpenSet {
        OpenSet::from_primes(self.local.keys().copied())
    }

    pub fn local_map(&self, p: Int) -> Result<&LocalizationMap> {
        self.local
            .get(&p)
            .ok_or_else(|| Error::InvalidInput(format!("({p}) is not a fiber of Spec(M)")))
    }

    pub fn local_module(&self, p: Int) -> Result<&FgModule> {
        Ok(self.local_map(p)?.target())
    }

    /// `𝒪(U)`.
    pub fn sections(&self, u: &OpenSet) -> Result<SheafSpace> {
        if !u.is_subset(&self.spectrum()) {
            return Err(Error::NotContained);
        }
        let fibers: Vec<(Int, FgModule)> = u
            .primes()
            .iter()
            .map(|&p| Ok((p, self.local_module(p)?.clone())))
            .collect::<Result<_>>()?;
        let mut carrier = FgModule::zero(self.module.ring())?;
        let mut sums = Vec::new();
        for (i, (_, mp)) in fibers.iter().enumerate() {
            if i == 0 {
                carrier = mp.clone();
            } else {
                let ds = module::direct_sum(&carrier, mp)?;
                carrier = ds.module.clone();
                sums.push(ds);
            }
        }
        Ok(SheafSpace { open: u.clone(), fibers, carrier, sums })
    }
}

/// `𝒪(U)` as the product of `M_(p)` over the fibers of `U`.
#[derive(Debug, Clone)]
pub struct SheafSpace {
    open: OpenSet,
    fibers: Vec<(Int, FgModule)>,
    carrier: FgModule,
    sums: Vec<DirectSum>,
}

impl SheafSpace {
    pub fn open(&self) -> &OpenSet {
        &self.open
    }

    pub fn fibers(&self) -> &[(Int, FgModule)] {
        &self.fibers
    }

    /// A single module isomorphic to the product.
    pub fn carrier(&self) -> &FgModule {
        &self.carrier
    }

    pub fn cardinality(&self) -> u128 {
        self.fibers
            .iter()
            .map(|(_, m)| match m.cardinality() {
                module::Cardinality::Finite(c) => c,
                module::Cardinality::Infinite => unreachable!("local modules of finite M are finite"),
            })
            .product()
    }

    pub fn zero(&self) -> Section {
        let values = self.fibers.iter().map(|(p, m)| (*p, m.zero_element())).collect();
        Section { open: self.open.clone(), values }
    }

    pub fn section(&self, values: BTreeMap<Int, ModElement>) -> Result<Section> {
        if values.len() != self.fibers.len() {
            return Err(Error::InvalidInput("one value per fiber is required".into()));
        }
        for (p, m) in &self.fibers {
            let x = values
                .get(p)
                .ok_or_else(|| Error::InvalidInput(format!("missing value at fiber ({p})")))?;
            if m.element(x.coords())? != *x {
                return Err(Error::InvalidInput(format!("value at ({p}) is not reduced")));
            }
        }
        Ok(Section { open: self.open.clone(), values })
    }

    fn check(&self, s: &Section) -> Result<()> {
        if s.open != self.open {
            return Err(Error::InvalidInput("section lives over a different open".into()));
        }
        Ok(())
    }

    pub fn add(&self, a: &Section, b: &Section) -> Result<Section> {
        self.check(a)?;
        self.check(b)?;
        let mut values = BTreeMap::new();
        for (p, m) in &self.fibers {
            values.insert(*p, m.add(&a.values[p], &b.values[p])?);
        }
        Ok(Section { open: self.open.clone(), values })
    }

    /// `(r s)(P) = r · s(P)`.
    pub fn scale(&self, r: Int, s: &Section) -> Result<Section> {
        self.check(s)?;
        let mut values = BTreeMap::new();
        for (p, m) in &self.fibers {
            values.insert(*p, m.scale(r, &s.values[p])?);
        }
        Ok(Section { open: self.open.clone(), values })
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<Section>> {
        let size = self.cardinality();
        if size > cap {
            return Err(Error::CapExceeded { what: "section space", size, cap });
        }
        let mut out = vec![BTreeMap::new()];
        for (p, m) in &self.fibers {
            let elems = m.elements(cap)?;
            let mut next = Vec::with_capacity(out.len() * elems.len());
            for partial in &out {
                for x in &elems {
                    let mut v: BTreeMap<Int, ModElement> = partial.clone();
                    v.insert(*p, x.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        Ok(out
            .into_iter()
            .map(|values| Section { open: self.open.clone(), values })
            .collect())
    }

    /// Image of a section in the carrier.
    pub fn to_carrier(&self, s: &Section) -> Result<ModElement> {
        self.check(s)?;
        let mut it = self.fibers.iter();
        let Some((p0, _)) = it.next() else {
            return Ok(self.carrier.zero_element());
        };
        let mut acc = s.values[p0].clone();
        for ((p, _), ds) in it.zip(&self.sums) {
            acc = ds.module.add(&ds.inject_left(&acc)?, &ds.inject_right(&s.values[p])?)?;
        }
        Ok(acc)
    }
}

/// The stalk at `P` with the map `φ: germ ↦ value at P` onto `M_(p)`.
#[derive(Debug, Clone)]
pub struct Stalk {
    pub prime: Int,
    /// Germs, one per section over the minimal open `{p}`.
    pub germs: SheafSpace,
    pub localized: LocalizedModule,
    pub bijective: bool,
}

pub fn stalk(sheaf: &StructureSheaf, p: &PrimeSubmodule, caps: &Caps) -> Result<Stalk> {
    let m = sheaf.module();
    let prime = p.char_ideal.gen();
    let germs = sheaf.sections(&OpenSet::from_primes([prime]))?;
    let localized = localization::localize(m, &MultSet::ComplementOfPrime(prime))?;
    let target = sheaf.local_module(prime)?;
    let mut images = std::collections::BTreeSet::new();
    for s in germs.elements(caps.cardinality)? {
        let v = s.value(prime).expect("minimal open contains p").clone();
        images.insert(target.index_of(&v));
    }
    let onto = localized.cardinality() == Some(images.len() as u128);
    let injective = images.len() as u128 == germs.cardinality();
    let bijective = onto && injective && localized.matches(target);
    Ok(Stalk { prime, germs, localized, bijective })
}

/// Germs at `p` by the definition: pairs `(U, s)` with `p ∈ U`, identified
/// when they agree on some open `W` with `p ∈ W ⊆ U ∩ U'`. Returns the number
/// of classes and whether the class is determined by the value at `p`.
pub fn germ_classes(sheaf: &StructureSheaf, p: Int, caps: &Caps) -> Result<(usize, bool)> {
    let opens: Vec<OpenSet> = sheaf
        .spectrum()
        .subsets()
        .into_iter()
        .filter(|u| u.contains(p))
        .collect();
    let mut pairs: Vec<Section> = Vec::new();
    for u in &opens {
        pairs.extend(sheaf.sections(u)?.elements(caps.cardinality)?);
        if pairs.len() as u128 > caps.cardinality * 16 {
            return Err(Error::CapExceeded { what: "germ pairs", size: pairs.len() as u128, cap: caps.cardinality * 16 });
        }
    }
    let equivalent = |a: &Section, b: &Section| -> Result<bool> {
        let common = a.open.intersection(&b.open);
        for w in common.subsets() {
            if w.contains(p) && restrict(a, &w)? == restrict(b, &w)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let mut reps: Vec<&Section> = Vec::new();
    let mut consistent = true;
    for s in &pairs {
        let mut found = false;
        for r in &reps {
            let eq = equivalent(s, r)?;
            if eq != (s.value(p) == r.value(p)) {
                consistent = false;
            }
            if eq {
                found = true;
                break;
            }
        }
        if !found {
            for r in &reps {
                if s.value(p) == r.value(p) {
                    consistent = false;
                }
            }
            reps.push(s);
        }
    }
    Ok((reps.len(), consistent))
}

/// `ψ: M_f → 𝒪(D(fM))`, `m/f^n ↦ (p ↦ (f^n)^{-1} λ_p(m))`.
#[derive(Debug, Clone)]
pub struct PsiMap {
    pub f: Int,
    pub open: OpenSet,
    pub localized: LocalizedModule,
    /// `None` for the Prufer group, whose `M_f` is not enumerated.
    map: Option<LocalizationMap>,
    space: SheafSpace,
    sheaf: StructureSheaf,
    pub well_defined: bool,
    pub bijective: bool,
}

impl PsiMap {
    pub fn space(&self) -> &SheafSpace {
        &self.space
    }

    pub fn source(&self) -> Option<&FgModule> {
        self.map.as_ref().map(LocalizationMap::target)
    }

    /// `ψ(x)` using the representative `x = m / f^n`.
    fn apply_with(&self, x: &ModElement, n: u32) -> Result<Section> {
        let map = self.map.as_ref().ok_or(Error::PruferUnsupported)?;
        let mf = map.target();
        let ring = self.sheaf.module().ring();
        let fn_ = ring.reduce(arith::pow(ring.reduce(self.f), n)?);
        let m = map.lift(&mf.scale(fn_, x)?)?;
        let mut values = BTreeMap::new();
        for &p in self.open.primes() {
            let lp = self.sheaf.local_map(p)?;
            let mp = lp.target();
            let e = mp.exponent();
            let inv = if e <= 1 {
                0
            } else {
                let (g, a, _) = arith::ext_gcd(fn_.rem_euclid(e), e);
                if g != 1 {
                    return Err(Error::Violation(format!("f^{n} is not a unit on M_({p})")));
                }
                a
            };
            values.insert(p, mp.scale(inv, &lp.apply(&m)?)?);
        }
        self.space.section(values)
    }

    pub fn apply(&self, x: &ModElement) -> Result<Section> {
        self.apply_with(x, 0)
    }
}

pub fn psi_map(m: &FgModule, f: Int, caps: &Caps) -> Result<PsiMap> {
    let sheaf = StructureSheaf::new(m)?;
    let s = MultSet::PowersOf(f);
    let localized = localization::localize(m, &s)?;
    if m.is_prufer() {
        let space = sheaf.sections(&OpenSet::empty())?;
        let bijective = localized.is_zero();
        return Ok(PsiMap {
            f,
            open: OpenSet::empty(),
            localized,
            map: None,
            space,
            sheaf,
            well_defined: true,
            bijective,
        });
    }
    let open = spectrum::basic_open(f, m)?;
    let space = sheaf.sections(&open)?;
    let map = LocalizationMap::new(m, &s)?;
    let mut psi = PsiMap {
        f,
        open,
        localized,
        map: Some(map),
        space,
        sheaf,
        well_defined: true,
        bijective: false,
    };
    let source = psi.source().expect("finite module").clone();
    let mut images = std::collections::BTreeSet::new();
    let mut well_defined = true;
    for x in source.elements(caps.cardinality)? {
        let s0 = psi.apply_with(&x, 0)?;
        for n in 1..=2 {
            well_defined &= psi.apply_with(&x, n)? == s0;
        }
        images.insert(s0);
    }
    psi.well_defined = well_defined;
    psi.bijective = well_defined
        && images.len() as u128 == source.finite_cardinality(caps.cardinality)?
        && images.len() as u128 == psi.space.cardinality();
    Ok(psi)
}

/// `f^n = Σ r_i b_i` with `r_i ∈ (h_i M : M)` and `D(fM) = ∪ D(r_i M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDecomposition {
    pub exponent: u32,
    pub terms: Vec<(Int, Int)>,
    pub ideals: Vec<Ideal>,
}

fn union_of_basic_opens(m: &FgModule, xs: impl IntoIterator<Item = Int>) -> Result<OpenSet> {
    let mut u = OpenSet::empty();
    for x in xs {
        u = u.union(&spectrum::basic_open(x, m)?);
    }
    Ok(u)
}

pub fn cover_decompose(m: &FgModule, f: Int, hs: &[Int]) -> Result<CoverDecomposition> {
    let ring = m.ring();
    let d_f = spectrum::basic_open(f, m)?;
    if !d_f.is_subset(&union_of_basic_opens(m, hs.iter().copied())?) {
        return Err(Error::CoverPrecondition(format!(
            "D({f}M) is not covered by the D(hM) for h in {hs:?}"
        )));
    }
    let ideals = hs
        .iter()
        .map(|&h| m.colon(&m.scalar_multiple_submodule(h)?))
        .collect::<Result<Vec<_>>>()?;
    let bez = match arith::bezout_decompose(f, &ideals, ring) {
        Err(Error::NotInRadical { .. }) => {
            return Err(Error::CoverPrecondition(format!(
                "{f} is not in the radical of the sum of the (hM:M) for h in {hs:?}; {m} is not P-radical"
            )))
        }
        other => other?,
    };
    let (mut exponent, mut terms) = (bez.exponent, bez.terms);
    if union_of_basic_opens(m, terms.iter().map(|t| t.0))? != d_f {
        // D(f r_i M) = D(fM) ∩ D(r_i M), and f^{n+1} = Σ (f r_i) b_i
        exponent += 1;
        for t in terms.iter_mut() {
            t.0 = ring.reduce(arith::mul(f, t.0)?);
        }
    }
    let out = CoverDecomposition { exponent, terms, ideals };
    if !verify_cover(m, f, &out)? {
        return Err(Error::Violation(format!("cover decomposition of {f} failed re-verification")));
    }
    Ok(out)
}

/// Direct re-check of `f^n = Σ r_i b_i`, `r_i ∈ (h_i M : M)` and `D(fM) = ∪ D(r_i M)`.
pub fn verify_cover(m: &FgModule, f: Int, d: &CoverDecomposition) -> Result<bool> {
    let ring = m.ring();
    let bez = arith::BezoutDecomposition { exponent: d.exponent, terms: d.terms.clone() };
    Ok(bez.verify(f, &d.ideals, ring)?
        && union_of_basic_opens(m, d.terms.iter().map(|t| t.0))? == spectrum::basic_open(f, m)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCriterion {
    pub radical_f: Ideal,
    pub radical_g: Ideal,
    pub radicals_equal: bool,
    pub modules_isomorphic: bool,
}

impl IsoCriterion {
    pub fn agrees(&self) -> bool {
        self.radicals_equal == self.modules_isomorphic
    }
}

/// Compares `√(fM:M) = √(gM:M)` with `M_f ≅ M_g`.
pub fn iso_criterion(m: &FgModule, f: Int, g: Int) -> Result<IsoCriterion> {
    let radical = |x: Int| -> Result<Ideal> { m.colon(&m.scalar_multiple_submodule(x)?)?.radical() };
    let radical_f = radical(f)?;
    let radical_g = radical(g)?;
    let mf = localization::localize(m, &MultSet::PowersOf(f))?;
    let mg = localization::localize(m, &MultSet::PowersOf(g))?;
    Ok(IsoCriterion {
        radicals_equal: radical_f == radical_g,
        modules_isomorphic: mf.iso_class_equal(&mg),
        radical_f,
        radical_g,
    })
}

/// Outcome of the exhaustive sheaf-axiom check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub opens: usize,
    pub covers: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const MAX_AXIOM_FIBERS: usize = 4;

/// All families of nonempty subopens of `u` whose union is `u`.
fn covers_of(u: &OpenSet) -> Vec<Vec<OpenSet>> {
    let parts: Vec<OpenSet> = u.subsets().into_iter().filter(|v| !v.is_empty()).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << parts.len()) {
        let family: Vec<OpenSet> = (0..parts.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| parts[i].clone())
            .collect();
        let union = family.iter().fold(OpenSet::empty(), |acc, v| acc.union(v));
        if union == *u {
            out.push(family);
        }
    }
    out
}

/// Identity, gluing, transitivity of restriction and additivity/linearity of
/// restriction over every open and every cover.
pub fn sheaf_axioms_check(m: &FgModule, caps: &Caps) -> Result<AxiomReport> {
    let sheaf = StructureSheaf::new(m)?;
    let whole = sheaf.spectrum();
    if whole.len() > MAX_AXIOM_FIBERS {
        return Err(Error::CapExceeded {
            what: "fibers for axiom check",
            size: whole.len() as u128,
            cap: MAX_AXIOM_FIBERS as u128,
        });
    }
    let opens = whole.subsets();
    let mut spaces = BTreeMap::new();
    let mut elements = BTreeMap::new();
    for u in &opens {
        let space = sheaf.sections(u)?;
        elements.insert(u.clone(), space.elements(caps.cardinality)?);
        spaces.insert(u.clone(), space);
    }
    let mut report = AxiomReport { opens: opens.len(), ..Default::default() };
    let fail = |report: &mut AxiomReport, msg: String| report.failures.push(msg);
    let e = m.exponent().max(1);

    for u in &opens {
        let space = &spaces[u];
        let elems = &elements[u];
        if u.is_empty() && space.cardinality() != 1 {
            fail(&mut report, "sections over the empty open are not zero".into());
        }

        for v in opens.iter().filter(|v| v.is_subset(u)) {
            let sv = &spaces[v];
            for w in opens.iter().filter(|w| w.is_subset(v)) {
                for s in elems {
                    if restrict(&restrict(s, v)?, w)? != restrict(s, w)? {
                        fail(&mut report, format!("restriction not transitive on {:?}", u.primes()));
                    }
                }
            }
            for s in elems {
                for t in elems {
                    let lhs = restrict(&space.add(s, t)?, v)?;
                    let rhs = sv.add(&restrict(s, v)?, &restrict(t, v)?)?;
                    if lhs != rhs {
                        fail(&mut report, format!("restriction not additive on {:?}", u.primes()));
                    }
                }
                for r in 0..e {
                    if restrict(&space.scale(r, s)?, v)? != sv.scale(r, &restrict(s, v)?)? {
                        fail(&mut report, format!("restriction not linear on {:?}", u.primes()));
                    }
                }
            }
        }

        for cover in covers_of(u) {
            report.covers += 1;
            let zero = space.zero();
            let mut glued: HashMap<Vec<Section>, usize> = HashMap::new();
            for s in elems {
                let family = cover.iter().map(|v| restrict(s, v)).collect::<Result<Vec<_>>>()?;
                if *s != zero && family.iter().zip(&cover).all(|(x, v)| *x == spaces[v].zero()) {
                    fail(&mut report, format!("identity fails on {:?}", u.primes()));
                }
                *glued.entry(family).or_default() += 1;
            }
            // every compatible family glues to exactly one section
            let mut families = 0usize;
            let mut chosen = Vec::with_capacity(cover.len());
            let mut unglued = 0usize;
            compatible_families(&cover, &elements, &mut chosen, &mut |fam| {
                families += 1;
                if glued.get(fam) != Some(&1) {
                    unglued += 1;
                }
            })?;
            if unglued > 0 || families != glued.len() {
                fail(&mut report, format!("gluing fails on {:?}", u.primes()));
            }
        }
    }
    report.failures.dedup();
    Ok(report)
}

fn compatible_families(
    cover: &[OpenSet],
    elements: &BTreeMap<OpenSet, Vec<Section>>,
    chosen: &mut Vec<Section>,
    visit: &mut dyn FnMut(&Vec<Section>),
) -> Result<()> {
    let i = chosen.len();
    if i == cover.len() {
        visit(chosen);
        return Ok(());
    }
    for t in &elements[&cover[i]] {
        let mut ok = true;
        for (j, s) in chosen.iter().enumerate() {
            let overlap = cover[i].intersection(&cover[j]);
            if restrict(t, &overlap)? != restrict(s, &overlap)? {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(t.clone());
            compatible_families(cover, elements, chosen, visit)?;
            chosen.pop();
        }
    }
    Ok(())
}
