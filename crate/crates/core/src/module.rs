//! Finitely generated modules over `Z` and `Z/n` in invariant-factor form,
//! their elements and submodules, plus the Prufer group `Z(p^∞)` as a
//! special kind.
//!
//! Elements are coordinate vectors in the canonical decomposition
//! `Z/e_1 ⊕ … ⊕ Z/e_t ⊕ Z^r`. A submodule is stored as the Hermite normal
//! form of its preimage lattice in `Z^(t+r)`, which always contains the
//! relation lattice `diag(e_1, …, e_t, 0, …, 0)`.

use std::fmt;

use crate::arith::{self, Ideal, Int, RingDesc};
use crate::error::{Error, Result};
use crate::lattice::{self, Matrix};

/// Default bound on element enumeration.
pub const DEFAULT_CARDINALITY_CAP: u128 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Finite(u128),
    Infinite,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    generators: usize,
    relations: Vec<Vec<Int>>,
    factors: Vec<Int>,
    free_rank: usize,
    to_canonical: Matrix,
    from_canonical: Matrix,
}

#[derive(Debug, Clone)]
pub enum ModuleKind {
    Presented(Presentation),
    Prufer(Int),
}

#[derive(Debug, Clone)]
pub struct FgModule {
    ring: RingDesc,
    kind: ModuleKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModElement(Vec<Int>);

impl ModElement {
    pub fn coords(&self) -> &[Int] {
        &self.0
    }
}

impl fmt::Display for ModElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum SubRepr {
    Lattice(Matrix),
    /// `0 ⊂ Z(p^∞)`.
    PruferZero,
    /// `Z(p^∞)` itself.
    PruferWhole,
}

/// A submodule in canonical form. Equality is submodule equality provided
/// both sides belong to the same parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    repr: SubRepr,
}

impl Submodule {
    /// HNF rows of the preimage lattice, if this is a lattice submodule.
    pub fn basis(&self) -> Option<&Matrix> {
        match &self.repr {
            SubRepr::Lattice(h) => Some(h),
            _ => None,
        }
    }
}

impl FgModule {
    /// Canonicalizes `Z^k / <relations>` over `ring`. Each relation is a
    /// vector of length `k`. Over `Z/n` the relations `n·e_i` are implied.
    pub fn normalize(ring: RingDesc, generators: usize, relations: &[Vec<Int>]) -> Result<Self> {
        if let RingDesc::IntegersLocalized(_) = ring {
            return Err(Error::InvalidInput(
                "modules are presented over Z or Z/n only".into(),
            ));
        }
        if let RingDesc::IntegersMod(n) = ring {
            if n < 2 {
                return Err(Error::InvalidInput(format!("modulus must be >= 2, got {n}")));
            }
        }
        for (i, rel) in relations.iter().enumerate() {
            if rel.len() != generators {
                return Err(Error::InvalidInput(format!(
                    "relation {i} has length {}, expected {generators}",
                    rel.len()
                )));
            }
        }
        let mut columns: Vec<Vec<Int>> = relations.to_vec();
        if let Some(n) = ring.modulus() {
            for i in 0..generators {
                let mut r = vec![0; generators];
                r[i] = n;
                columns.push(r);
            }
        }
        // k × m with relations as columns
        let a: Matrix = (0..generators)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        let snf = lattice::smith_form(generators, &a)?;

        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (i, &d) in snf.diagonal.iter().enumerate() {
            match d {
                0 => free.push(i),
                1 => {}
                _ => torsion.push(i),
            }
        }
        let kept: Vec<usize> = torsion.iter().chain(&free).copied().collect();
        let factors: Vec<Int> = torsion.iter().map(|&i| snf.diagonal[i]).collect();
        let to_canonical: Matrix = kept.iter().map(|&i| snf.u[i].clone()).collect();
        let from_canonical: Matrix = (0..generators)
            .map(|r| kept.iter().map(|&i| snf.u_inv[r][i]).collect())
            .collect();
        Ok(FgModule {
            ring,
            kind: ModuleKind::Presented(Presentation {
                generators,
                relations: relations.to_vec(),
                free_rank: free.len(),
                factors,
                to_canonical,
                from_canonical,
            }),
        })
    }

    /// `Z/f_1 ⊕ … ⊕ Z/f_s ⊕ Z^free_rank`, re-normalized (units dropped, chain restored).
    pub fn from_invariants(ring: RingDesc, factors: &[Int], free_rank: usize) -> Result<Self> {
        let k = factors.len() + free_rank;
        let relations: Vec<Vec<Int>> = factors
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let mut r = vec![0; k];
                r[i] = f;
                r
            })
            .collect();
        Self::normalize(ring, k, &relations)
    }

    pub fn cyclic(ring: RingDesc, order: Int) -> Result<Self> {
        Self::from_invariants(ring, &[order], 0)
    }

    pub fn zero(ring: RingDesc) -> Result<Self> {
        Self::normalize(ring, 0, &[])
    }

    pub fn prufer(p: Int) -> Result<Self> {
        if !arith::is_prime(p)? {
            return Err(Error::InvalidInput(format!("Prufer group needs a prime, got {p}")));
        }
        Ok(FgModule { ring: RingDesc::Integers, kind: ModuleKind::Prufer(p) })
    }

    pub fn ring(&self) -> RingDesc {
        self.ring
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn prufer_prime(&self) -> Option<Int> {
        match self.kind {
            ModuleKind::Prufer(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_prufer(&self) -> bool {
        self.prufer_prime().is_some()
    }

    pub(crate) fn presentation(&self) -> Result<&Presentation> {
        match &self.kind {
            ModuleKind::Presented(p) => Ok(p),
            ModuleKind::Prufer(_) => Err(Error::PruferUnsupported),
        }
    }

    /// Invariant factors; empty for Prufer.
    pub fn factors(&self) -> &[Int] {
        match &self.kind {
            ModuleKind::Presented(p) => &p.factors,
            ModuleKind::Prufer(_) => &[],
        }
    }

    pub fn free_rank(&self) -> usize {
        match &self.kind {
            ModuleKind::Presented(p) => p.free_rank,
            ModuleKind::Prufer(_) => 0,
        }
    }

    /// Original presentation `(generators, relations)`; `None` for Prufer.
    pub fn original_presentation(&self) -> Option<(usize, &[Vec<Int>])> {
        match &self.kind {
            ModuleKind::Presented(p) => Some((p.generators, &p.relations)),
            ModuleKind::Prufer(_) => None,
        }
    }

    /// Number of canonical coordinates `t + r`.
    pub fn dim(&self) -> usize {
        self.factors().len() + self.free_rank()
    }

    /// Modulus of each canonical coordinate (`0` for free coordinates).
    pub fn moduli(&self) -> Vec<Int> {
        let mut m = self.factors().to_vec();
        m.extend(std::iter::repeat_n(0, self.free_rank()));
        m
    }

    pub fn cardinality(&self) -> Cardinality {
        if self.is_prufer() || self.free_rank() > 0 {
            return Cardinality::Infinite;
        }
        Cardinality::Finite(self.factors().iter().map(|&e| e as u128).product())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.cardinality(), Cardinality::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        self.cardinality() == Cardinality::Finite(1)
    }

    /// Finite cardinality within `cap`, or an error.
    pub fn finite_cardinality(&self, cap: u128) -> Result<u128> {
        match self.cardinality() {
            Cardinality::Infinite => Err(Error::InfiniteModule),
            Cardinality::Finite(c) if c > cap => Err(Error::CapExceeded {
                what: "module cardinality",
                size: c,
                cap,
            }),
            Cardinality::Finite(c) => Ok(c),
        }
    }

    /// Generator of the annihilator over `Z` (the exponent for finite modules).
    pub fn exponent(&self) -> Int {
        if self.is_prufer() || self.free_rank() > 0 {
            0
        } else {
            self.factors().last().copied().unwrap_or(1)
        }
    }

    pub fn annihilator(&self) -> Result<Ideal> {
        Ideal::new(self.ring, self.exponent())
    }

    /// Primes `p` with `(p) ⊇ Ann(M)` for a finite module.
    pub fn relevant_primes(&self) -> Result<Vec<Int>> {
        if !self.is_finite() {
            return Err(Error::InfiniteModule);
        }
        arith::prime_divisors(self.exponent())
    }

    // ----- elements -----

    pub fn zero_element(&self) -> ModElement {
        ModElement(vec![0; self.dim()])
    }

    fn reduce_coords(&self, mut v: Vec<Int>) -> ModElement {
        for (x, &e) in v.iter_mut().zip(self.factors()) {
            *x = x.rem_euclid(e);
        }
        ModElement(v)
    }

    /// Element from canonical coordinates (reduced into range).
    pub fn element(&self, coords: &[Int]) -> Result<ModElement> {
        self.presentation()?;
        if coords.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "element needs {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(self.reduce_coords(coords.to_vec()))
    }

    /// Image of a vector in the original generator coordinates.
    pub fn from_generator_coords(&self, v: &[Int]) -> Result<ModElement> {
        let p = self.presentation()?;
        if v.len() != p.generators {
            return Err(Error::InvalidInput(format!(
                "expected {} generator coordinates, got {}",
                p.generators,
                v.len()
            )));
        }
        Ok(self.reduce_coords(lattice::mat_vec(&p.to_canonical, v)?))
    }

    /// A vector in generator coordinates representing `x`.
    pub fn to_generator_coords(&self, x: &ModElement) -> Result<Vec<Int>> {
        let p = self.presentation()?;
        lattice::mat_vec(&p.from_canonical, &x.0)
    }

    pub fn add(&self, a: &ModElement, b: &ModElement) -> Result<ModElement> {
        let v = a.0.iter().zip(&b.0).map(|(x, y)| arith::add(*x, *y)).collect::<Result<_>>()?;
        Ok(self.reduce_coords(v))
    }

    pub fn neg(&self, a: &ModElement) -> ModElement {
        self.reduce_coords(a.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &ModElement, b: &ModElement) -> Result<ModElement> {
        self.add(a, &self.neg(b))
    }

    /// `r · a` for a ring element `r`.
    pub fn scale(&self, r: Int, a: &ModElement) -> Result<ModElement> {
        let r = self.ring.reduce(r);
        let v = a.0.iter().map(|x| arith::mul(r, *x)).collect::<Result<_>>()?;
        Ok(self.reduce_coords(v))
    }

    /// Canonical generators `u_1, …, u_(t+r)`.
    pub fn basis(&self) -> Vec<ModElement> {
        (0..self.dim())
            .map(|i| {
                let mut v = vec![0; self.dim()];
                v[i] = 1;
                ModElement(v)
            })
            .collect()
    }

    /// Mixed-radix index of an element of a finite module.
    pub fn index_of(&self, x: &ModElement) -> usize {
        let mut idx = 0usize;
        for (c, &e) in x.0.iter().zip(self.factors()) {
            idx = idx * e as usize + *c as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> ModElement {
        let f = self.factors();
        let mut v = vec![0; f.len()];
        for i in (0..f.len()).rev() {
            let e = f[i] as usize;
            v[i] = (idx % e) as Int;
            idx /= e;
        }
        ModElement(v)
    }

    /// All elements of a finite module in index order.
    pub fn elements(&self, cap: u128) -> Result<Vec<ModElement>> {
        self.presentation()?;
        let n = self.finite_cardinality(cap)?;
        Ok((0..n as usize).map(|i| self.element_at(i)).collect())
    }

    /// Additive order of an element of a finite module.
    pub fn order_of(&self, x: &ModElement) -> Int {
        x.0.iter()
            .zip(self.factors())
            .fold(1, |acc, (c, &e)| {
                let o = e / arith::gcd(*c, e);
                acc / arith::gcd(acc, o) * o
            })
    }

    // ----- submodules -----

    pub fn zero_submodule(&self) -> Submodule {
        match self.kind {
            ModuleKind::Prufer(_) => Submodule { repr: SubRepr::PruferZero },
            ModuleKind::Presented(_) => self
                .lattice_submodule(&[])
                .expect("diagonal lattice is always representable"),
        }
    }

    pub fn full_submodule(&self) -> Submodule {
        match self.kind {
            ModuleKind::Prufer(_) => Submodule { repr: SubRepr::PruferWhole },
            ModuleKind::Presented(_) => {
                let d = self.dim();
                Submodule { repr: SubRepr::Lattice(lattice::identity(d)) }
            }
        }
    }

    fn lattice_submodule(&self, rows: &[Vec<Int>]) -> Result<Submodule> {
        let h = lattice::hnf(rows, self.dim(), &self.moduli())?;
        Ok(Submodule { repr: SubRepr::Lattice(h) })
    }

    pub fn submodule_from_generators(&self, gens: &[ModElement]) -> Result<Submodule> {
        self.presentation()?;
        for g in gens {
            if g.0.len() != self.dim() {
                return Err(Error::InvalidInput("generator has wrong dimension".into()));
            }
        }
        let rows: Vec<Vec<Int>> = gens.iter().map(|g| g.0.clone()).collect();
        self.lattice_submodule(&rows)
    }

    fn lattice_of<'a>(&self, n: &'a Submodule) -> Result<&'a Matrix> {
        n.basis().ok_or(Error::PruferUnsupported)
    }

    pub fn contains(&self, n: &Submodule, x: &ModElement) -> Result<bool> {
        lattice::lattice_contains(self.lattice_of(n)?, &x.0)
    }

    pub fn is_full(&self, n: &Submodule) -> bool {
        match &n.repr {
            SubRepr::Lattice(h) => h.len() == self.dim() && h.iter().enumerate().all(|(i, r)| r[i] == 1),
            SubRepr::PruferWhole => true,
            SubRepr::PruferZero => false,
        }
    }

    pub fn is_zero_submodule(&self, n: &Submodule) -> bool {
        *n == self.zero_submodule()
    }

    /// Nonzero generators read off the canonical basis.
    pub fn submodule_generators(&self, n: &Submodule) -> Result<Vec<ModElement>> {
        let h = self.lattice_of(n)?;
        Ok(h.iter()
            .map(|r| self.reduce_coords(r.clone()))
            .filter(|x| x.0.iter().any(|c| *c != 0))
            .collect())
    }

    /// `a ⊆ b`.
    pub fn is_subset(&self, a: &Submodule, b: &Submodule) -> Result<bool> {
        match (&a.repr, &b.repr) {
            (SubRepr::Lattice(ha), SubRepr::Lattice(hb)) => {
                for r in ha {
                    if !lattice::lattice_contains(hb, r)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (SubRepr::PruferZero, _) | (_, SubRepr::PruferWhole) => Ok(true),
            _ => Ok(false),
        }
    }

    pub fn sub_sum(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        match (&a.repr, &b.repr) {
            (SubRepr::Lattice(ha), SubRepr::Lattice(hb)) => {
                let rows: Vec<Vec<Int>> = ha.iter().chain(hb).cloned().collect();
                self.lattice_submodule(&rows)
            }
            (SubRepr::PruferWhole, _) | (_, SubRepr::PruferWhole) => Ok(self.full_submodule()),
            _ => Ok(self.zero_submodule()),
        }
    }

    pub fn sub_intersect(&self, a: &Submodule, b: &Submodule) -> Result<Submodule> {
        match (&a.repr, &b.repr) {
            (SubRepr::Lattice(ha), SubRepr::Lattice(hb)) => {
                let h = lattice::intersect(ha, hb, self.dim(), &self.moduli())?;
                Ok(Submodule { repr: SubRepr::Lattice(h) })
            }
            (SubRepr::PruferZero, _) | (_, SubRepr::PruferZero) => Ok(self.zero_submodule()),
            _ => Ok(self.full_submodule()),
        }
    }

    /// `|N|` for a submodule of a finite module.
    pub fn submodule_cardinality(&self, n: &Submodule) -> Result<u128> {
        let total = self.finite_cardinality(u128::MAX)?;
        let h = self.lattice_of(n)?;
        let index: u128 = h
            .iter()
            .enumerate()
            .map(|(i, r)| r[i] as u128)
            .product();
        Ok(total / index)
    }

    /// `M/N` with its projection, presented on the canonical coordinates of `M`.
    pub fn quotient(&self, n: &Submodule) -> Result<Quotient> {
        let h = self.lattice_of(n)?;
        let k = self.dim();
        let mut relations: Vec<Vec<Int>> = Vec::new();
        for (i, &e) in self.factors().iter().enumerate() {
            let mut r = vec![0; k];
            r[i] = e;
            relations.push(r);
        }
        relations.extend(h.iter().cloned());
        let module = FgModule::normalize(self.ring, k, &relations)?;
        Ok(Quotient { module })
    }

    /// `(N : M) = Ann(M/N)`.
    pub fn colon(&self, n: &Submodule) -> Result<Ideal> {
        match &n.repr {
            SubRepr::PruferWhole => Ok(Ideal::unit(self.ring)),
            SubRepr::PruferZero => Ideal::zero(self.ring),
            SubRepr::Lattice(_) => self.quotient(n)?.module.annihilator(),
        }
    }

    /// `fM`. For the Prufer group this is `M` for `f != 0` and `0` for `f = 0`.
    pub fn scalar_multiple_submodule(&self, f: Int) -> Result<Submodule> {
        match self.kind {
            ModuleKind::Prufer(_) => Ok(if f == 0 {
                Submodule { repr: SubRepr::PruferZero }
            } else {
                Submodule { repr: SubRepr::PruferWhole }
            }),
            ModuleKind::Presented(_) => {
                let gens = self
                    .basis()
                    .iter()
                    .map(|u| self.scale(f, u))
                    .collect::<Result<Vec<_>>>()?;
                self.submodule_from_generators(&gens)
            }
        }
    }

    /// `I·M` for an ideal of the base ring.
    pub fn ideal_multiple_submodule(&self, ideal: &Ideal) -> Result<Submodule> {
        self.scalar_multiple_submodule(ideal.gen())
    }

    /// Preimage of the submodule of `M/N` generated by `gens`, under the
    /// quotient projection.
    pub fn preimage(&self, q: &Quotient, n: &Submodule, gens: &[ModElement]) -> Result<Submodule> {
        let mut lifts = Vec::with_capacity(gens.len());
        for g in gens {
            lifts.push(self.reduce_coords(q.module.to_generator_coords(g)?));
        }
        let lifted = self.submodule_from_generators(&lifts)?;
        self.sub_sum(&lifted, n)
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModuleKind::Prufer(p) => write!(f, "Z({p}^inf)"),
            ModuleKind::Presented(_) => {
                let mut parts: Vec<String> =
                    self.factors().iter().map(|e| format!("Z/{e}")).collect();
                if self.free_rank() > 0 {
                    parts.push(format!("Z^{}", self.free_rank()));
                }
                if parts.is_empty() {
                    parts.push("0".into());
                }
                write!(f, "{} over {}", parts.join(" + "), self.ring)
            }
        }
    }
}

/// A quotient `M/N`; its generators are the canonical coordinates of `M`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: FgModule,
}

impl Quotient {
    pub fn project(&self, x: &ModElement) -> Result<ModElement> {
        self.module.from_generator_coords(&x.0)
    }
}

/// `M1 ⊕ M2` together with its two injections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: FgModule,
    left_dim: usize,
    right_dim: usize,
}

impl DirectSum {
    pub fn inject_left(&self, x: &ModElement) -> Result<ModElement> {
        let mut v = x.0.clone();
        v.extend(std::iter::repeat_n(0, self.right_dim));
        self.module.from_generator_coords(&v)
    }

    pub fn inject_right(&self, x: &ModElement) -> Result<ModElement> {
        let mut v = vec![0; self.left_dim];
        v.extend_from_slice(&x.0);
        self.module.from_generator_coords(&v)
    }
}

pub fn direct_sum(m1: &FgModule, m2: &FgModule) -> Result<DirectSum> {
    if m1.ring != m2.ring {
        return Err(Error::RingMismatch(m1.ring.to_string(), m2.ring.to_string()));
    }
    m1.presentation()?;
    m2.presentation()?;
    let (d1, d2) = (m1.dim(), m2.dim());
    let k = d1 + d2;
    let mut relations = Vec::new();
    for (i, e) in m1.moduli().into_iter().chain(m2.moduli()).enumerate() {
        if e > 0 {
            let mut r = vec![0; k];
            r[i] = e;
            relations.push(r);
        }
    }
    let module = FgModule::normalize(m1.ring, k, &relations)?;
    Ok(DirectSum { module, left_dim: d1, right_dim: d2 })
}

/// Complete isomorphism invariant for the representable classes.
pub fn iso_class_equal(m1: &FgModule, m2: &FgModule) -> bool {
    m1.ring == m2.ring
        && m1.prufer_prime() == m2.prufer_prime()
        && m1.factors() == m2.factors()
        && m1.free_rank() == m2.free_rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingDesc = RingDesc::Integers;

    fn z(g: Int) -> Ideal {
        Ideal::new(Z, g).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let m = FgModule::normalize(Z, 2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(m.factors(), &[6]);
        assert_eq!(m.free_rank(), 0);

        let m = FgModule::normalize(Z, 1, &[]).unwrap();
        assert_eq!(m.factors(), &[] as &[Int]);
        assert_eq!(m.free_rank(), 1);
        assert_eq!(m.cardinality(), Cardinality::Infinite);

        let m = FgModule::normalize(RingDesc::IntegersMod(12), 1, &[vec![4]]).unwrap();
        assert_eq!(m.factors(), &[4]);
        assert_eq!(m.free_rank(), 0);

        let m = FgModule::normalize(Z, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.annihilator().unwrap(), z(1));
    }

    #[test]
    fn generator_coordinates_round_trip() {
        let m = FgModule::normalize(Z, 2, &[vec![2, 0], vec![0, 3]]).unwrap();
        let g1 = m.from_generator_coords(&[1, 0]).unwrap();
        let g2 = m.from_generator_coords(&[0, 1]).unwrap();
        assert_eq!(m.order_of(&g1), 2);
        assert_eq!(m.order_of(&g2), 3);
        let x = m.element(&[5]).unwrap();
        let back = m.to_generator_coords(&x).unwrap();
        assert_eq!(m.from_generator_coords(&back).unwrap(), x);
    }

    #[test]
    fn submodule_examples() {
        let m = FgModule::cyclic(Z, 4).unwrap();
        let n = m.submodule_from_generators(&[m.element(&[2]).unwrap()]).unwrap();
        assert_eq!(m.submodule_cardinality(&n).unwrap(), 2);
        assert!(m.contains(&n, &m.element(&[2]).unwrap()).unwrap());
        assert!(!m.contains(&n, &m.element(&[1]).unwrap()).unwrap());

        let v = FgModule::from_invariants(Z, &[2, 2], 0).unwrap();
        let d = v.submodule_from_generators(&[v.element(&[1, 1]).unwrap()]).unwrap();
        assert_eq!(v.submodule_cardinality(&d).unwrap(), 2);
        assert!(v.contains(&d, &v.element(&[1, 1]).unwrap()).unwrap());
        assert!(!v.contains(&d, &v.element(&[1, 0]).unwrap()).unwrap());

        let m = FgModule::cyclic(Z, 6).unwrap();
        let n = m
            .submodule_from_generators(&[m.element(&[2]).unwrap(), m.element(&[3]).unwrap()])
            .unwrap();
        assert!(m.is_full(&n));

        let p = FgModule::prufer(3).unwrap();
        assert_eq!(p.submodule_from_generators(&[]).unwrap_err(), Error::PruferUnsupported);
    }

    #[test]
    fn colon_examples() {
        let m = FgModule::cyclic(Z, 12).unwrap();
        let two_m = m.scalar_multiple_submodule(2).unwrap();
        assert_eq!(m.colon(&two_m).unwrap(), z(2));
        assert_eq!(m.colon(&m.full_submodule()).unwrap(), z(1));
        let free = FgModule::from_invariants(Z, &[], 1).unwrap();
        assert_eq!(free.colon(&free.zero_submodule()).unwrap(), z(0));
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(FgModule::cyclic(Z, 6).unwrap().annihilator().unwrap(), z(6));
        assert_eq!(FgModule::prufer(3).unwrap().annihilator().unwrap(), z(0));
        assert_eq!(FgModule::zero(Z).unwrap().annihilator().unwrap(), z(1));
    }

    #[test]
    fn scalar_multiple_examples() {
        let m = FgModule::cyclic(Z, 12).unwrap();
        let n = m.scalar_multiple_submodule(2).unwrap();
        let elems: Vec<Int> = m
            .elements(100)
            .unwrap()
            .into_iter()
            .filter(|x| m.contains(&n, x).unwrap())
            .map(|x| x.coords()[0])
            .collect();
        assert_eq!(elems, vec![0, 2, 4, 6, 8, 10]);

        let p = FgModule::prufer(5).unwrap();
        assert!(p.is_full(&p.scalar_multiple_submodule(5).unwrap()));

        let r = RingDesc::IntegersMod(12);
        let m = FgModule::cyclic(r, 12).unwrap();
        let n = m.scalar_multiple_submodule(6).unwrap();
        assert_eq!(m.submodule_cardinality(&n).unwrap(), 2);
    }

    #[test]
    fn direct_sum_examples() {
        let a = FgModule::cyclic(Z, 2).unwrap();
        let b = FgModule::cyclic(Z, 3).unwrap();
        assert_eq!(direct_sum(&a, &b).unwrap().module.factors(), &[6]);
        let zero = FgModule::zero(Z).unwrap();
        assert!(iso_class_equal(&direct_sum(&a, &zero).unwrap().module, &a));
        assert_eq!(direct_sum(&a, &a).unwrap().module.factors(), &[2, 2]);
        assert!(direct_sum(&a, &FgModule::prufer(2).unwrap()).is_err());
    }

    #[test]
    fn iso_examples() {
        let a = FgModule::from_invariants(Z, &[2, 6], 0).unwrap();
        let b = FgModule::from_invariants(Z, &[6, 2], 0).unwrap();
        assert!(iso_class_equal(&a, &b));
        let c = FgModule::from_invariants(Z, &[4], 0).unwrap();
        let d = FgModule::from_invariants(Z, &[2, 2], 0).unwrap();
        assert!(!iso_class_equal(&c, &d));
        assert!(!iso_class_equal(&FgModule::prufer(3).unwrap(), &FgModule::zero(Z).unwrap()));
    }

    #[test]
    fn intersection_and_sum() {
        let m = FgModule::cyclic(Z, 12).unwrap();
        let a = m.scalar_multiple_submodule(2).unwrap();
        let b = m.scalar_multiple_submodule(3).unwrap();
        assert_eq!(m.sub_intersect(&a, &b).unwrap(), m.scalar_multiple_submodule(6).unwrap());
        assert!(m.is_full(&m.sub_sum(&a, &b).unwrap()));
    }

    #[test]
    fn quotient_projection() {
        let m = FgModule::from_invariants(Z, &[2, 4], 0).unwrap();
        let n = m.submodule_from_generators(&[m.element(&[1, 2]).unwrap()]).unwrap();
        let q = m.quotient(&n).unwrap();
        assert_eq!(q.module.cardinality(), Cardinality::Finite(4));
        for x in m.elements(100).unwrap() {
            let px = q.project(&x).unwrap();
            assert_eq!(px == q.module.zero_element(), m.contains(&n, &x).unwrap());
        }
    }
}
