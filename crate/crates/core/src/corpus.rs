//! The desk-scale module corpus and seeded random instances drawn from it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Ideal, Int, RingDesc};
use crate::error::Result;
use crate::module::FgModule;
use crate::spectrum;

/// Invariant factors are chains of divisors of these, of length at most 3.
pub const FACTOR_SOURCES: [Int; 5] = [4, 6, 8, 12, 36];
pub const MAX_FACTORS: usize = 3;
pub const MAX_CARDINALITY: Int = 256;
pub const MODULI: [Int; 4] = [4, 6, 12, 36];
pub const PRUFER_PRIMES: [Int; 3] = [2, 3, 5];
/// Ring elements `0..=L` are used wherever a scan over `f` is needed.
pub const SCAN_LIMIT: Int = 12;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub module: FgModule,
}

fn divisor_pool() -> Vec<Int> {
    let mut d: Vec<Int> = (2..=36)
        .filter(|x| FACTOR_SOURCES.iter().any(|s| s % x == 0))
        .collect();
    d.sort();
    d
}

/// Divisibility chains `e_1 | … | e_t` (`t ≤ 3`, all `e_i > 1`) from the pool
/// with product at most [`MAX_CARDINALITY`], including the empty chain.
pub fn factor_chains() -> Vec<Vec<Int>> {
    let pool = divisor_pool();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Int>> = vec![Vec::new()];
    for _ in 0..MAX_FACTORS {
        let mut next = Vec::new();
        for chain in &frontier {
            let product: Int = chain.iter().product();
            for &e in &pool {
                if chain.last().is_none_or(|&l| e % l == 0) && product * e <= MAX_CARDINALITY {
                    let mut c = chain.clone();
                    c.push(e);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn describe(ring: RingDesc, factors: &[Int]) -> String {
    if factors.is_empty() {
        return format!("0 over {ring}");
    }
    let parts: Vec<String> = factors.iter().map(|e| format!("Z/{e}")).collect();
    format!("{} over {ring}", parts.join(" + "))
}

/// Every corpus module: chains over `Z`, chains dividing `n` over `Z/n`, and
/// the Prufer groups.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let chains = factor_chains();
    let mut out = Vec::new();
    for c in &chains {
        out.push(CorpusEntry {
            name: describe(RingDesc::Integers, c),
            module: FgModule::from_invariants(RingDesc::Integers, c, 0)?,
        });
    }
    for n in MODULI {
        let ring = RingDesc::integers_mod(n)?;
        for c in chains.iter().filter(|c| c.iter().all(|e| n % e == 0)) {
            out.push(CorpusEntry { name: describe(ring, c), module: FgModule::from_invariants(ring, c, 0)? });
        }
    }
    for p in PRUFER_PRIMES {
        out.push(CorpusEntry { name: format!("Prufer({p})"), module: FgModule::prufer(p)? });
    }
    Ok(out)
}

pub fn finite_corpus() -> Result<Vec<CorpusEntry>> {
    Ok(corpus()?.into_iter().filter(|e| e.module.is_finite()).collect())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random index pairs of entries over a common ring.
pub fn random_pairs(entries: &[CorpusEntry], count: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(count);
    if entries.is_empty() {
        return out;
    }
    while out.len() < count {
        let i = rng.gen_range(0..entries.len());
        let ring = entries[i].module.ring();
        let same: Vec<usize> = (0..entries.len()).filter(|&j| entries[j].module.ring() == ring).collect();
        let j = *same.choose(rng).expect("i itself qualifies");
        out.push((i, j));
    }
    out
}

/// A random `(f, [h_1..h_k])` with `D(fM) ⊆ ∪ D(h_i M)`, by rejection.
pub fn random_cover(m: &FgModule, rng: &mut impl Rng) -> Result<(Int, Vec<Int>)> {
    loop {
        let f = rng.gen_range(0..=SCAN_LIMIT);
        let k = rng.gen_range(1..=3);
        let hs: Vec<Int> = (0..k).map(|_| rng.gen_range(0..=SCAN_LIMIT)).collect();
        let d_f = spectrum::basic_open(f, m)?;
        let mut union = spectrum::OpenSet::empty();
        for &h in &hs {
            union = union.union(&spectrum::basic_open(h, m)?);
        }
        if d_f.is_subset(&union) {
            return Ok((f, hs));
        }
    }
}

/// Random ideals of `Z` with generators in `[0, bound]`.
pub fn random_ideal_triple(bound: Int, rng: &mut impl Rng) -> Result<[Ideal; 3]> {
    let mut g = || Ideal::new(RingDesc::Integers, rng.gen_range(0..=bound));
    Ok([g()?, g()?, g()?])
}

/// Every ideal of the ring, for `Z/n`; for `Z`, the ideals generated by `0..=bound`.
pub fn ideals_of(ring: RingDesc, bound: Int) -> Result<Vec<Ideal>> {
    let mut out: Vec<Ideal> = match ring.modulus() {
        Some(n) => (1..=n).filter(|d| n % d == 0).map(|d| Ideal::new(ring, d)).collect::<Result<_>>()?,
        None => (0..=bound).map(|g| Ideal::new(ring, g)).collect::<Result<_>>()?,
    };
    out.sort();
    out.dedup();
    Ok(out)
}
