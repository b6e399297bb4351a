//! Prime submodules and the Zariski topology on `Spec(M)`.
//!
//! For a finite module the primes with characteristic ideal `(p)` form a
//! fiber; `V(N)` only sees `(N:M)`, so closed and open sets are unions of
//! whole fibers and are stored as sets of fiber labels.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::arith::{self, Ideal, Int};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::module::{FgModule, ModElement, Submodule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate every subgroup and test the prime condition directly.
    BruteForce,
    /// Pull back proper subspaces of `M/pM` for each relevant `p`.
    Classified,
    /// Run both and require agreement.
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeSubmodule {
    pub sub: Submodule,
    /// `(P:M)`, a prime ideal of the base ring.
    pub char_ideal: Ideal,
}

/// `Spec(M)` grouped by characteristic prime.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectrumView {
    fibers: BTreeMap<Int, Vec<PrimeSubmodule>>,
}

impl SpectrumView {
    pub fn fibers(&self) -> &BTreeMap<Int, Vec<PrimeSubmodule>> {
        &self.fibers
    }

    pub fn fiber(&self, p: Int) -> &[PrimeSubmodule] {
        self.fibers.get(&p).map_or(&[], |v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.fibers.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &PrimeSubmodule> {
        self.fibers.values().flatten()
    }

    fn from_primes(primes: Vec<PrimeSubmodule>) -> Self {
        let mut fibers: BTreeMap<Int, Vec<PrimeSubmodule>> = BTreeMap::new();
        for p in primes {
            fibers.entry(p.char_ideal.gen()).or_default().push(p);
        }
        for v in fibers.values_mut() {
            v.sort();
            v.dedup();
        }
        SpectrumView { fibers }
    }
}

/// A Zariski-open subset of `Spec(M)`, as a set of fiber labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OpenSet {
    primes: BTreeSet<Int>,
}

impl OpenSet {
    pub fn empty() -> Self {
        OpenSet::default()
    }

    pub fn from_primes(primes: impl IntoIterator<Item = Int>) -> Self {
        OpenSet { primes: primes.into_iter().collect() }
    }

    pub fn primes(&self) -> &BTreeSet<Int> {
        &self.primes
    }

    pub fn contains(&self, p: Int) -> bool {
        self.primes.contains(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        self.primes.is_subset(&other.primes)
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet { primes: self.primes.union(&other.primes).copied().collect() }
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet { primes: self.primes.intersection(&other.primes).copied().collect() }
    }

    /// Every open subset of this one.
    pub fn subsets(&self) -> Vec<OpenSet> {
        let labels: Vec<Int> = self.primes.iter().copied().collect();
        (0u32..1 << labels.len())
            .map(|mask| {
                OpenSet::from_primes(
                    labels.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| *p),
                )
            })
            .collect()
    }
}

/// `V(N)`: the fibers `(p)` with `(N:M) ⊆ (p)`, and its defining ideal `√(N:M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSet {
    pub primes: BTreeSet<Int>,
    pub ideal: Ideal,
}

/// Fiber labels of `Spec(M)`: the relevant primes of a finite module; none
/// for the Prufer group.
pub fn fiber_labels(m: &FgModule) -> Result<Vec<Int>> {
    if m.is_prufer() {
        return Ok(Vec::new());
    }
    m.relevant_primes()
}

pub fn whole_spectrum(m: &FgModule) -> Result<OpenSet> {
    Ok(OpenSet::from_primes(fiber_labels(m)?))
}

/// Element table of a finite module: addition and the action of
/// `0..exponent` by index.
struct ElementTable {
    elems: Vec<ModElement>,
    add: Vec<u32>,
    scale: Vec<u32>,
}

impl ElementTable {
    /// `sums` fills the addition table, which only subgroup closure needs.
    fn new(m: &FgModule, cap: u128, sums: bool) -> Result<Self> {
        let elems = m.elements(cap)?;
        let n = elems.len();
        let mut add = Vec::new();
        if sums {
            add = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let s = m.index_of(&m.add(&elems[i], &elems[j])?) as u32;
                    add[i * n + j] = s;
                    add[j * n + i] = s;
                }
            }
        }
        let e = m.exponent() as usize;
        let mut scale = vec![0u32; e * n];
        for a in 0..e {
            for (i, x) in elems.iter().enumerate() {
                scale[a * n + i] = m.index_of(&m.scale(a as Int, x)?) as u32;
            }
        }
        Ok(ElementTable { elems, add, scale })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn sum(&self, i: usize, j: usize) -> usize {
        self.add[i * self.len() + j] as usize
    }

    fn membership(&self, m: &FgModule, n: &Submodule) -> Result<Vec<bool>> {
        self.elems.iter().map(|x| m.contains(n, x)).collect()
    }
}

/// All submodules of a finite module by subgroup closure.
pub fn enumerate_submodules(m: &FgModule, caps: &Caps) -> Result<Vec<Submodule>> {
    let table = ElementTable::new(m, caps.bruteforce, true)?;
    let n = table.len();
    let mut zero = vec![false; n];
    zero[0] = true;

    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue: VecDeque<(Vec<bool>, Vec<usize>)> = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back((zero, Vec::new()));
    let mut out = Vec::new();

    while let Some((set, gens)) = queue.pop_front() {
        let mut done = set.clone();
        for g in 0..n {
            if done[g] {
                continue;
            }
            // <H, g> = ∪_k (k·g + H)
            let members: Vec<usize> = (0..n).filter(|&i| set[i]).collect();
            let mut next = set.clone();
            let mut cur = g;
            while !next[cur] {
                for &h in &members {
                    next[table.sum(cur, h)] = true;
                }
                cur = table.sum(cur, g);
            }
            for &h in &members {
                done[table.sum(g, h)] = true;
            }
            if seen.insert(next.clone()) {
                let mut ng = gens.clone();
                ng.push(g);
                queue.push_back((next, ng));
            }
        }
        let gen_elems: Vec<ModElement> = gens.iter().map(|&i| table.elems[i].clone()).collect();
        out.push(m.submodule_from_generators(&gen_elems)?);
    }
    out.sort();
    Ok(out)
}

/// Decides primality of `P` by the defining condition; returns `(P:M)` when prime.
pub fn is_prime_submodule(p: &Submodule, m: &FgModule, caps: &Caps) -> Result<Option<Ideal>> {
    let table = ElementTable::new(m, caps.cardinality, false)?;
    prime_by_table(p, m, &table)
}

fn prime_by_table(p: &Submodule, m: &FgModule, table: &ElementTable) -> Result<Option<Ideal>> {
    if m.is_full(p) {
        return Ok(None);
    }
    let in_p = table.membership(m, p)?;
    let n = table.len();
    let e = m.exponent() as usize;
    for a in 0..e {
        let row = &table.scale[a * n..(a + 1) * n];
        if (0..n).all(|i| in_p[row[i] as usize]) {
            // aM ⊆ P
            continue;
        }
        if (0..n).any(|i| in_p[row[i] as usize] && !in_p[i]) {
            return Ok(None);
        }
    }
    Ok(Some(m.colon(p)?))
}

/// Proper subspaces of `F_p^d`, each as a list of basis rows in reduced echelon form.
fn proper_subspaces(p: Int, d: usize) -> Vec<Vec<Vec<Int>>> {
    let mut out = Vec::new();
    for rank in 0..d {
        for pivots in combinations(d, rank) {
            // free slots: (row, col) with col > pivot(row) and col not a pivot
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &c)| {
                    let pivots = &pivots;
                    (c + 1..d).filter(move |j| !pivots.contains(j)).map(move |j| (r, j))
                })
                .collect();
            let total = (p as u128).pow(slots.len() as u32);
            for mut code in 0..total {
                let mut rows: Vec<Vec<Int>> = pivots
                    .iter()
                    .map(|&c| {
                        let mut v = vec![0; d];
                        v[c] = 1;
                        v
                    })
                    .collect();
                for &(r, j) in &slots {
                    rows[r][j] = (code % p as u128) as Int;
                    code /= p as u128;
                }
                out.push(rows);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn spec_bruteforce(m: &FgModule, caps: &Caps) -> Result<SpectrumView> {
    let table = ElementTable::new(m, caps.bruteforce, false)?;
    let mut primes = Vec::new();
    for sub in enumerate_submodules(m, caps)? {
        if let Some(char_ideal) = prime_by_table(&sub, m, &table)? {
            primes.push(PrimeSubmodule { sub, char_ideal });
        }
    }
    Ok(SpectrumView::from_primes(primes))
}

/// Primes of characteristic `(p)`: submodules `P` with `pM ⊆ P ⊊ M`.
pub fn fiber_classified(m: &FgModule, p: Int) -> Result<Vec<PrimeSubmodule>> {
    let pm = m.scalar_multiple_submodule(p)?;
    let q = m.quotient(&pm)?;
    let d = q.module.dim();
    let char_ideal = Ideal::new(m.ring(), p)?;
    let mut out = Vec::new();
    for rows in proper_subspaces(p, d) {
        let gens = rows
            .iter()
            .map(|r| q.module.element(r))
            .collect::<Result<Vec<_>>>()?;
        let sub = m.preimage(&q, &pm, &gens)?;
        out.push(PrimeSubmodule { sub, char_ideal });
    }
    Ok(out)
}

fn spec_classified(m: &FgModule) -> Result<SpectrumView> {
    let mut primes = Vec::new();
    for p in m.relevant_primes()? {
        primes.extend(fiber_classified(m, p)?);
    }
    Ok(SpectrumView::from_primes(primes))
}

pub fn spec_enumerate(m: &FgModule, strategy: Strategy, caps: &Caps) -> Result<SpectrumView> {
    if m.is_prufer() {
        return Ok(SpectrumView::default());
    }
    if !m.is_finite() {
        return Err(Error::InfiniteModule);
    }
    match strategy {
        Strategy::BruteForce => spec_bruteforce(m, caps),
        Strategy::Classified => spec_classified(m),
        Strategy::Both => {
            let a = spec_bruteforce(m, caps)?;
            let b = spec_classified(m)?;
            if a != b {
                return Err(Error::Violation(format!(
                    "spectrum strategies disagree on {m}: {} vs {} primes",
                    a.len(),
                    b.len()
                )));
            }
            Ok(b)
        }
    }
}

pub fn variety(n: &Submodule, m: &FgModule) -> Result<ClosedSet> {
    let colon = m.colon(n)?;
    let primes = fiber_labels(m)?
        .into_iter()
        .filter(|p| arith::divides(*p, colon.gen()))
        .collect();
    Ok(ClosedSet { primes, ideal: colon.radical()? })
}

/// `D(fM)`, the complement of `V(fM)`.
pub fn basic_open(f: Int, m: &FgModule) -> Result<OpenSet> {
    let closed = variety(&m.scalar_multiple_submodule(f)?, m)?;
    Ok(OpenSet::from_primes(
        fiber_labels(m)?.into_iter().filter(|p| !closed.primes.contains(p)),
    ))
}

/// Complement of a closed set.
pub fn complement(closed: &ClosedSet, m: &FgModule) -> Result<OpenSet> {
    Ok(OpenSet::from_primes(
        fiber_labels(m)?.into_iter().filter(|p| !closed.primes.contains(p)),
    ))
}

/// `√[p]N`: the intersection of the primes containing `N`, or `M` if there are none.
pub fn prime_radical(
    n: &Submodule,
    m: &FgModule,
    strategy: Strategy,
    caps: &Caps,
) -> Result<Submodule> {
    if m.is_prufer() {
        return Ok(m.full_submodule());
    }
    if !m.is_finite() {
        return Err(Error::InfiniteModule);
    }
    match strategy {
        Strategy::BruteForce => prime_radical_bruteforce(n, m, caps),
        Strategy::Classified => prime_radical_closed_form(n, m),
        Strategy::Both => {
            let a = prime_radical_bruteforce(n, m, caps)?;
            let b = prime_radical_closed_form(n, m)?;
            if a != b {
                return Err(Error::Violation(format!(
                    "prime radical routes disagree on {m}"
                )));
            }
            Ok(b)
        }
    }
}

fn prime_radical_bruteforce(n: &Submodule, m: &FgModule, caps: &Caps) -> Result<Submodule> {
    let spec = spec_bruteforce(m, caps)?;
    let mut acc: Option<Submodule> = None;
    for p in spec.iter() {
        if m.is_subset(n, &p.sub)? {
            acc = Some(match acc {
                None => p.sub.clone(),
                Some(a) => m.sub_intersect(&a, &p.sub)?,
            });
        }
    }
    Ok(acc.unwrap_or_else(|| m.full_submodule()))
}

/// `∩ {N + pM : N + pM ≠ M}` over the relevant primes.
fn prime_radical_closed_form(n: &Submodule, m: &FgModule) -> Result<Submodule> {
    let mut acc: Option<Submodule> = None;
    for p in m.relevant_primes()? {
        let s = m.sub_sum(n, &m.scalar_multiple_submodule(p)?)?;
        if !m.is_full(&s) {
            acc = Some(match acc {
                None => s,
                Some(a) => m.sub_intersect(&a, &s)?,
            });
        }
    }
    Ok(acc.unwrap_or_else(|| m.full_submodule()))
}

/// One evaluation of `(√[p](𝒫M) : M)` against `𝒫`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalCondition {
    pub prime: Ideal,
    pub radical_colon: Ideal,
}

impl RadicalCondition {
    pub fn holds(&self) -> bool {
        self.prime == self.radical_colon
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PradicalReport {
    pub pradical: bool,
    /// Every prime that was examined.
    pub checked: Vec<RadicalCondition>,
    /// First violating prime, when not ℙ-radical.
    pub certificate: Option<RadicalCondition>,
    /// Decided by the structural rule for modules with free rank.
    pub symbolic: bool,
}

/// Decides the prime radical condition `(√[p](𝒫M):M) = 𝒫` for every prime `𝒫 ⊇ Ann(M)`.
pub fn is_pradical(m: &FgModule, strategy: Strategy, caps: &Caps) -> Result<PradicalReport> {
    let ring = m.ring();
    if let Some(p) = m.prufer_prime() {
        // primeless: every radical is M, so (√[p](pM):M) = (1)
        let cond = RadicalCondition {
            prime: Ideal::new(ring, p)?,
            radical_colon: m.colon(&prime_radical(&m.scalar_multiple_submodule(p)?, m, strategy, caps)?)?,
        };
        return Ok(PradicalReport {
            pradical: false,
            checked: vec![cond.clone()],
            certificate: Some(cond),
            symbolic: false,
        });
    }
    if m.free_rank() > 0 {
        // The torsion submodule T is prime with (T:M) = (0), and for p ≠ 0
        // M/pM is a nonzero F_p-space so pM is itself (p)-prime.
        let torsion_gens: Vec<ModElement> = m.basis().into_iter().take(m.factors().len()).collect();
        let torsion = m.submodule_from_generators(&torsion_gens)?;
        let cond = RadicalCondition { prime: Ideal::zero(ring)?, radical_colon: m.colon(&torsion)? };
        let ok = cond.holds();
        return Ok(PradicalReport {
            pradical: ok,
            certificate: if ok { None } else { Some(cond.clone()) },
            checked: vec![cond],
            symbolic: true,
        });
    }
    let mut checked = Vec::new();
    for p in m.relevant_primes()? {
        let pm = m.scalar_multiple_submodule(p)?;
        let rad = prime_radical(&pm, m, strategy, caps)?;
        let cond = RadicalCondition { prime: Ideal::new(ring, p)?, radical_colon: m.colon(&rad)? };
        checked.push(cond);
    }
    let certificate = checked.iter().find(|c| !c.holds()).cloned();
    Ok(PradicalReport { pradical: certificate.is_none(), checked, certificate, symbolic: false })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Codomain {
    Finite(Vec<Ideal>),
    /// Every prime ideal of `Z` (the annihilator is zero).
    AllPrimesOfZ,
}

#[derive(Debug, Clone)]
pub struct NaturalMap {
    pub images: Vec<(PrimeSubmodule, Ideal)>,
    pub codomain: Codomain,
    pub surjective: bool,
}

/// `ψ(P) = (P:M)` and whether every prime containing `Ann(M)` is hit.
pub fn natural_map(m: &FgModule, strategy: Strategy, caps: &Caps) -> Result<NaturalMap> {
    let spec = spec_enumerate(m, strategy, caps)?;
    let images: Vec<(PrimeSubmodule, Ideal)> =
        spec.iter().map(|p| (p.clone(), p.char_ideal)).collect();
    if m.is_prufer() {
        return Ok(NaturalMap { images, codomain: Codomain::AllPrimesOfZ, surjective: false });
    }
    let codomain: Vec<Ideal> = m
        .relevant_primes()?
        .into_iter()
        .map(|p| Ideal::new(m.ring(), p))
        .collect::<Result<_>>()?;
    let hit: BTreeSet<Ideal> = images.iter().map(|(_, i)| *i).collect();
    let surjective = m.is_zero() || codomain.iter().all(|i| hit.contains(i));
    Ok(NaturalMap { images, codomain: Codomain::Finite(codomain), surjective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RingDesc;

    const Z: RingDesc = RingDesc::Integers;

    fn caps() -> Caps {
        Caps::default()
    }

    fn z(g: Int) -> Ideal {
        Ideal::new(Z, g).unwrap()
    }

    #[test]
    fn prime_test_examples() {
        let m = FgModule::cyclic(Z, 4).unwrap();
        let two_m = m.scalar_multiple_submodule(2).unwrap();
        assert_eq!(is_prime_submodule(&two_m, &m, &caps()).unwrap(), Some(z(2)));
        assert_eq!(is_prime_submodule(&m.zero_submodule(), &m, &caps()).unwrap(), None);
        assert_eq!(is_prime_submodule(&m.full_submodule(), &m, &caps()).unwrap(), None);
    }

    #[test]
    fn subgroup_counts() {
        // (Z/2)^2 has 5 subgroups, Z/12 has 6, Z/2 + Z/4 has 8
        let counts = [(vec![2, 2], 5), (vec![12], 6), (vec![2, 4], 8), (vec![], 1)];
        for (f, c) in counts {
            let m = FgModule::from_invariants(Z, &f, 0).unwrap();
            assert_eq!(enumerate_submodules(&m, &caps()).unwrap().len(), c, "{f:?}");
        }
    }

    #[test]
    fn spec_examples() {
        let v = FgModule::from_invariants(Z, &[2, 2], 0).unwrap();
        let s = spec_enumerate(&v, Strategy::Both, &caps()).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.fiber(2).len(), 4);
        assert!(s.fiber(2).iter().any(|p| v.is_zero_submodule(&p.sub)));

        let m = FgModule::cyclic(Z, 6).unwrap();
        let s = spec_enumerate(&m, Strategy::Both, &caps()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.fiber(2)[0].sub, m.scalar_multiple_submodule(2).unwrap());
        assert_eq!(s.fiber(3)[0].sub, m.scalar_multiple_submodule(3).unwrap());

        let p = FgModule::prufer(3).unwrap();
        assert!(spec_enumerate(&p, Strategy::Both, &caps()).unwrap().is_empty());

        let free = FgModule::from_invariants(Z, &[2], 1).unwrap();
        assert_eq!(spec_enumerate(&free, Strategy::Both, &caps()).unwrap_err(), Error::InfiniteModule);
    }

    #[test]
    fn variety_and_opens() {
        let m = FgModule::cyclic(Z, 6).unwrap();
        let all: BTreeSet<Int> = [2, 3].into_iter().collect();
        assert_eq!(variety(&m.zero_submodule(), &m).unwrap().primes, all);
        assert!(variety(&m.full_submodule(), &m).unwrap().primes.is_empty());
        let v = variety(&m.scalar_multiple_submodule(2).unwrap(), &m).unwrap();
        assert_eq!(v.primes, [2].into_iter().collect());

        assert_eq!(basic_open(3, &m).unwrap(), OpenSet::from_primes([2]));
        assert_eq!(basic_open(1, &m).unwrap(), OpenSet::from_primes([2, 3]));
        let r = RingDesc::IntegersMod(12);
        let m12 = FgModule::cyclic(r, 12).unwrap();
        assert!(basic_open(6, &m12).unwrap().is_empty());
    }

    #[test]
    fn prime_radical_examples() {
        let m = FgModule::cyclic(Z, 4).unwrap();
        let r = prime_radical(&m.zero_submodule(), &m, Strategy::Both, &caps()).unwrap();
        assert_eq!(r, m.scalar_multiple_submodule(2).unwrap());
        let r = prime_radical(&m.full_submodule(), &m, Strategy::Both, &caps()).unwrap();
        assert!(m.is_full(&r));
        let p = FgModule::prufer(3).unwrap();
        let r = prime_radical(&p.zero_submodule(), &p, Strategy::Both, &caps()).unwrap();
        assert!(p.is_full(&r));
    }

    #[test]
    fn pradical_examples() {
        let r6 = RingDesc::IntegersMod(6);
        let m = FgModule::cyclic(r6, 6).unwrap();
        assert!(is_pradical(&m, Strategy::Both, &caps()).unwrap().pradical);

        let p = FgModule::prufer(5).unwrap();
        let rep = is_pradical(&p, Strategy::Both, &caps()).unwrap();
        assert!(!rep.pradical);
        let cert = rep.certificate.unwrap();
        assert_eq!(cert.prime, z(5));
        assert_eq!(cert.radical_colon, z(1));

        let zero = FgModule::zero(Z).unwrap();
        let rep = is_pradical(&zero, Strategy::Both, &caps()).unwrap();
        assert!(rep.pradical && rep.checked.is_empty());

        let free = FgModule::from_invariants(Z, &[4], 2).unwrap();
        let rep = is_pradical(&free, Strategy::Both, &caps()).unwrap();
        assert!(rep.pradical && rep.symbolic);
    }

    #[test]
    fn natural_map_examples() {
        let m = FgModule::cyclic(Z, 6).unwrap();
        let nm = natural_map(&m, Strategy::Both, &caps()).unwrap();
        assert!(nm.surjective);
        assert_eq!(nm.codomain, Codomain::Finite(vec![z(2), z(3)]));

        let p = FgModule::prufer(3).unwrap();
        let nm = natural_map(&p, Strategy::Both, &caps()).unwrap();
        assert!(!nm.surjective && nm.images.is_empty());

        let zero = FgModule::zero(Z).unwrap();
        assert!(natural_map(&zero, Strategy::Both, &caps()).unwrap().surjective);
    }

    #[test]
    fn subspace_counts() {
        // number of proper subspaces of F_p^d = Σ_{k<d} Gaussian binomial
        assert_eq!(proper_subspaces(2, 2).len(), 4);
        assert_eq!(proper_subspaces(3, 2).len(), 5);
        assert_eq!(proper_subspaces(2, 3).len(), 15);
        assert_eq!(proper_subspaces(2, 0).len(), 0);
    }
}
