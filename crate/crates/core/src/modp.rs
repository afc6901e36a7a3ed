//! Symplectic matrices over `ℤ/p` and a deterministic stabilizer chain for
//! the groups they generate.
//!
//! The chain uses the natural action on vectors of `(ℤ/p)^{2g}` with the
//! standard basis vectors `e1, e2, …` as base points, in order. An element
//! fixing every standard basis vector is the identity, so sifting through all
//! `2g` levels always terminates with an exact answer.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::symplectic::{
    eval_sp, exchange_matrix, flip_matrix, transvection, HomologyClass, SymplecticMatrix,
};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModPError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is too large (must be below 65536)")]
    ModulusTooLarge(u32),
    #[error("dimension mismatch: expected genus {expected_g} mod {expected_p}, got genus {got_g} mod {got_p}")]
    DimensionMismatch { expected_g: usize, expected_p: u32, got_g: usize, got_p: u32 },
    #[error("matrix is not symplectic mod {0}")]
    NotSymplectic(u32),
    #[error("vector space (ℤ/{p})^{n} is too large to index")]
    SpaceTooLarge { p: u32, n: usize },
    #[error("genus must be at least {min}, got {genus}")]
    GenusTooSmall { genus: usize, min: usize },
}

/// Trial division, for `p < 2¹⁶`.
pub fn check_prime(p: u32) -> Result<(), ModPError> {
    if p >= 1 << 16 {
        return Err(ModPError::ModulusTooLarge(p));
    }
    if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(ModPError::NotPrime(p));
    }
    Ok(())
}

/// `|Sp(2g, p)| = p^{g²} ∏_{i=1..g} (p^{2i} − 1)`.
pub fn symplectic_group_order(g: usize, p: u32) -> BigUint {
    let p = BigUint::from(p);
    let mut order = p.pow((g * g) as u32);
    for i in 1..=g {
        order *= p.pow(2 * i as u32) - BigUint::one();
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPMatrix {
    g: usize,
    p: u32,
    entries: Vec<u32>,
}

impl ModPMatrix {
    pub fn identity(g: usize, p: u32) -> Self {
        let n = 2 * g;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ModPMatrix { g, p, entries }
    }

    /// Row-major entries, reduced mod `p`. Does not check the symplectic
    /// condition.
    pub fn from_entries(g: usize, p: u32, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), 4 * g * g);
        let entries = entries.into_iter().map(|x| x % p).collect();
        ModPMatrix { g, p, entries }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim() + col]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries.iter().enumerate().all(|(k, &x)| x == u32::from(k / n == k % n))
    }

    pub fn mul(&self, rhs: &ModPMatrix) -> ModPMatrix {
        debug_assert_eq!((self.g, self.p), (rhs.g, rhs.p));
        let n = self.dim();
        let p = u64::from(self.p);
        let mut entries = vec![0u32; n * n];
        let mut row = vec![0u64; n];
        for i in 0..n {
            row.iter_mut().for_each(|x| *x = 0);
            for k in 0..n {
                let a = u64::from(self.entries[i * n + k]);
                if a == 0 {
                    continue;
                }
                let rk = &rhs.entries[k * n..(k + 1) * n];
                for (acc, &b) in row.iter_mut().zip(rk) {
                    *acc += a * u64::from(b);
                }
            }
            for (j, acc) in row.iter().enumerate() {
                entries[i * n + j] = (acc % p) as u32;
            }
        }
        ModPMatrix { g: self.g, p: self.p, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let p = u64::from(self.p);
        (0..n)
            .map(|i| {
                let s: u64 = (0..n).map(|j| u64::from(self.entries[i * n + j]) * u64::from(v[j])).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Column `j`, the image of the `j`-th basis vector.
    pub fn column(&self, j: usize) -> Vec<u32> {
        let n = self.dim();
        (0..n).map(|i| self.entries[i * n + j]).collect()
    }

    fn form(g: usize, p: u32) -> ModPMatrix {
        let n = 2 * g;
        let mut entries = vec![0; n * n];
        for k in (0..n).step_by(2) {
            entries[k * n + k + 1] = 1;
            entries[(k + 1) * n + k] = p - 1;
        }
        ModPMatrix { g, p, entries }
    }

    pub fn transpose(&self) -> ModPMatrix {
        let n = self.dim();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        ModPMatrix { g: self.g, p: self.p, entries }
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Self::form(self.g, self.p);
        self.transpose().mul(&j).mul(self) == j
    }

    /// `J⁻¹ Mᵀ J`; valid for symplectic `M`.
    pub fn inverse(&self) -> ModPMatrix {
        let j = Self::form(self.g, self.p);
        let mut j_inv = j.clone();
        j_inv.entries.iter_mut().for_each(|x| *x = (self.p - *x) % self.p);
        j_inv.mul(&self.transpose()).mul(&j)
    }
}

impl fmt::Display for ModPMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.entries.chunks(self.dim().max(1)).enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn reduce_mod_p(m: &SymplecticMatrix, p: u32) -> Result<ModPMatrix, ModPError> {
    check_prime(p)?;
    Ok(ModPMatrix { g: m.genus(), p, entries: m.residues(p) })
}

/// Encodes vectors of `(ℤ/p)^n` as integers `Σ v_i p^i`.
#[derive(Debug, Clone, Copy)]
struct PointCodec {
    p: u64,
    n: usize,
}

impl PointCodec {
    fn new(p: u32, n: usize) -> Result<Self, ModPError> {
        let fits = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(p))).is_some();
        if !fits {
            return Err(ModPError::SpaceTooLarge { p, n });
        }
        Ok(PointCodec { p: u64::from(p), n })
    }

    /// Code of column `j` of `m`, without materializing the column.
    fn encode_column(&self, m: &ModPMatrix, j: usize) -> u64 {
        (0..self.n).rev().fold(0, |acc, i| acc * self.p + u64::from(m.entries[i * self.n + j]))
    }
}

#[derive(Debug, Clone)]
struct Level {
    /// index of the base vector `e_k`
    base: usize,
    /// indices into the chain's strong generators
    gens: Vec<usize>,
    /// per generator: how many orbit points have had their Schreier
    /// generator tested
    tested: Vec<usize>,
    orbit: Vec<u64>,
    position: HashMap<u64, usize>,
    transversal: Vec<ModPMatrix>,
    transversal_inv: Vec<ModPMatrix>,
}

impl Level {
    fn new(base: usize, identity: &ModPMatrix, codec: &PointCodec) -> Self {
        let start = codec.encode_column(identity, base);
        Level {
            base,
            gens: Vec::new(),
            tested: Vec::new(),
            orbit: vec![start],
            position: HashMap::from([(start, 0)]),
            transversal: vec![identity.clone()],
            transversal_inv: vec![identity.clone()],
        }
    }
}

/// Base and strong generating set for a subgroup of `Sp(2g, p)`.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    g: usize,
    p: u32,
    codec: PointCodec,
    strong: Vec<ModPMatrix>,
    strong_inv: Vec<ModPMatrix>,
    levels: Vec<Level>,
}

/// Outcome of sifting an element through a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// The sift residue; the identity exactly when `member` holds.
    pub residue: ModPMatrix,
    /// The level at which sifting stopped (the dimension when it went
    /// all the way through).
    pub level: usize,
}

impl StabilizerChain {
    /// Deterministic Schreier–Sims. Generators are processed in the order
    /// given; identity generators and repeats are dropped.
    pub fn build(g: usize, p: u32, gens: &[ModPMatrix]) -> Result<Self, ModPError> {
        check_prime(p)?;
        let n = 2 * g;
        let codec = PointCodec::new(p, n)?;
        let identity = ModPMatrix::identity(g, p);
        let mut chain = StabilizerChain {
            g,
            p,
            codec,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: (0..n).map(|k| Level::new(k, &identity, &codec)).collect(),
        };
        for m in gens {
            if (m.g, m.p) != (g, p) {
                return Err(ModPError::DimensionMismatch { expected_g: g, expected_p: p, got_g: m.g, got_p: m.p });
            }
            if !m.is_symplectic() {
                return Err(ModPError::NotSymplectic(p));
            }
        }
        let mut seen = HashSet::new();
        for m in gens {
            if m.is_identity() || !seen.insert(m.clone()) {
                continue;
            }
            let fixed = chain.fixed_prefix(m);
            chain.add_strong(m.clone(), 0, fixed);
        }
        chain.complete();
        Ok(chain)
    }

    /// Number of leading base vectors fixed by `m` (at most `2g − 1` for a
    /// non-identity element).
    fn fixed_prefix(&self, m: &ModPMatrix) -> usize {
        let n = self.dim();
        (0..n)
            .find(|&k| self.codec.encode_column(m, k) != self.levels[k].orbit[0])
            .unwrap_or(n)
    }

    fn dim(&self) -> usize {
        2 * self.g
    }

    /// Registers `m` as a strong generator on levels `from..=to`.
    fn add_strong(&mut self, m: ModPMatrix, from: usize, to: usize) {
        let idx = self.strong.len();
        self.strong_inv.push(m.inverse());
        self.strong.push(m);
        for l in from..=to.min(self.dim() - 1) {
            self.extend_orbit(l, idx);
        }
    }

    fn extend_orbit(&mut self, l: usize, new_gen: usize) {
        let old_len = self.levels[l].orbit.len();
        self.levels[l].gens.push(new_gen);
        self.levels[l].tested.push(0);
        let base = self.levels[l].base;
        let mut q = 0;
        while q < self.levels[l].orbit.len() {
            let gens: Vec<usize> = if q < old_len { vec![new_gen] } else { self.levels[l].gens.clone() };
            for s in gens {
                let image = self.strong[s].mul(&self.levels[l].transversal[q]);
                let code = self.codec.encode_column(&image, base);
                let level = &mut self.levels[l];
                if !level.position.contains_key(&code) {
                    let inv = level.transversal_inv[q].mul(&self.strong_inv[s]);
                    level.position.insert(code, level.orbit.len());
                    level.orbit.push(code);
                    level.transversal.push(image);
                    level.transversal_inv.push(inv);
                }
            }
            q += 1;
        }
    }

    /// Next untested Schreier generator at level `l`, skipping trivial ones.
    fn next_schreier(&mut self, l: usize) -> Option<ModPMatrix> {
        let base = self.levels[l].base;
        for k in 0..self.levels[l].gens.len() {
            while self.levels[l].tested[k] < self.levels[l].orbit.len() {
                let q = self.levels[l].tested[k];
                self.levels[l].tested[k] += 1;
                let level = &self.levels[l];
                let s = &self.strong[level.gens[k]];
                let su = s.mul(&level.transversal[q]);
                let code = self.codec.encode_column(&su, base);
                let r = level.position[&code];
                let h = level.transversal_inv[r].mul(&su);
                if !h.is_identity() {
                    return Some(h);
                }
            }
        }
        None
    }

    fn complete(&mut self) {
        let n = self.dim();
        let mut l = n as isize - 1;
        while l >= 0 {
            let lu = l as usize;
            match self.next_schreier(lu) {
                None => l -= 1,
                Some(h) => {
                    let m = self.sift_from(h, lu + 1);
                    if !m.member {
                        let j = m.level;
                        self.add_strong(m.residue, lu + 1, j);
                        l = j as isize;
                    }
                }
            }
        }
    }

    fn sift_from(&self, mut h: ModPMatrix, from: usize) -> Membership {
        for l in from..self.dim() {
            let level = &self.levels[l];
            let code = self.codec.encode_column(&h, level.base);
            match level.position.get(&code) {
                Some(&r) => h = level.transversal_inv[r].mul(&h),
                None => return Membership { member: false, residue: h, level: l },
            }
        }
        Membership { member: h.is_identity(), residue: h, level: self.dim() }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.base_len_iter().map(|l| l.orbit.len()).collect()
    }

    fn base_len_iter(&self) -> impl Iterator<Item = &Level> {
        let len = self.levels.iter().rposition(|l| l.orbit.len() > 1).map_or(0, |k| k + 1);
        self.levels[..len].iter()
    }

    /// Base points actually needed: standard basis vectors up to the last
    /// level with a nontrivial orbit, each as a vector.
    pub fn base(&self) -> Vec<Vec<u32>> {
        let identity = ModPMatrix::identity(self.g, self.p);
        self.base_len_iter().map(|l| identity.column(l.base)).collect()
    }

    pub fn strong_generators(&self) -> &[ModPMatrix] {
        &self.strong
    }

    pub fn sift(&self, m: &ModPMatrix) -> Result<Membership, ModPError> {
        if (m.g, m.p) != (self.g, self.p) {
            return Err(ModPError::DimensionMismatch { expected_g: self.g, expected_p: self.p, got_g: m.g, got_p: m.p });
        }
        Ok(self.sift_from(m.clone(), 0))
    }

    pub fn contains(&self, m: &ModPMatrix) -> Result<bool, ModPError> {
        Ok(self.sift(m)?.member)
    }
}

/// Homology images of `t`, `w` and every `x{i}` at genus `g`, before
/// reduction.
pub fn powell_generators(g: usize) -> Result<Vec<SymplecticMatrix>, ModPError> {
    if g < 2 {
        return Err(ModPError::GenusTooSmall { genus: g, min: 2 });
    }
    let mut gens = vec![
        eval_sp(g, &Word::parse("t").expect("static word")).expect("t is valid for g >= 2"),
        flip_matrix(g, 1).expect("valid index"),
    ];
    gens.extend((1..g).map(|i| exchange_matrix(g, i, i + 1).expect("valid pair")));
    Ok(gens)
}

/// Transvections along every `a_i`, `b_i` and `a_i − a_{i+1}` (the images of
/// the Lickorish twists); these generate `Sp(2g, ℤ)` and hence every `Sp(2g, p)`.
pub fn full_generators(g: usize) -> Vec<SymplecticMatrix> {
    let n = 2 * g;
    let mut gens: Vec<SymplecticMatrix> = (0..n)
        .map(|k| {
            let mut v = vec![0i64; n];
            v[k] = 1;
            transvection(&HomologyClass::from_i64s(&v))
        })
        .collect();
    for i in 0..g.saturating_sub(1) {
        let mut v = vec![0i64; n];
        v[2 * i] = 1;
        v[2 * i + 2] = -1;
        gens.push(transvection(&HomologyClass::from_i64s(&v)));
    }
    gens
}

fn reduce_all(gens: &[SymplecticMatrix], p: u32) -> Result<Vec<ModPMatrix>, ModPError> {
    gens.iter().map(|m| reduce_mod_p(m, p)).collect()
}

/// The mod-`p` image of the subgroup generated by `t`, `w`, `x1 … x{g−1}`.
pub fn powell_subgroup(g: usize, p: u32) -> Result<StabilizerChain, ModPError> {
    StabilizerChain::build(g, p, &reduce_all(&powell_generators(g)?, p)?)
}

pub fn full_group(g: usize, p: u32) -> Result<StabilizerChain, ModPError> {
    StabilizerChain::build(g, p, &reduce_all(&full_generators(g), p)?)
}

/// Element-by-element closure, for cross-checking the chain on small groups.
pub mod naive {
    use super::*;

    fn pack(m: &ModPMatrix) -> u128 {
        m.entries.iter().rev().fold(0u128, |acc, &x| acc * u128::from(m.p) + u128::from(x))
    }

    /// Whether `p^{(2g)²}` fits the packed representation.
    pub fn feasible(g: usize, p: u32) -> bool {
        let n = 2 * g;
        (0..n * n).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(p))).is_some()
    }

    /// Every element of the group generated by `gens`, as packed codes.
    pub fn closure(g: usize, p: u32, gens: &[ModPMatrix]) -> HashSet<u128> {
        assert!(feasible(g, p), "group too large to enumerate");
        let identity = ModPMatrix::identity(g, p);
        let mut seen = HashSet::from([pack(&identity)]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = x.mul(s);
                if seen.insert(pack(&y)) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn contains(elements: &HashSet<u128>, m: &ModPMatrix) -> bool {
        elements.contains(&pack(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(check_prime(2).is_ok());
        assert!(check_prime(65521).is_ok());
        assert_eq!(check_prime(1), Err(ModPError::NotPrime(1)));
        assert_eq!(check_prime(9), Err(ModPError::NotPrime(9)));
        assert_eq!(check_prime(65536), Err(ModPError::ModulusTooLarge(65536)));
    }

    #[test]
    fn reductions() {
        let f = flip_matrix(2, 1).unwrap();
        assert!(reduce_mod_p(&f, 2).unwrap().is_identity());
        let f3 = reduce_mod_p(&f, 3).unwrap();
        assert_eq!(f3.entries(), &[2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
        let t = eval_sp(2, &Word::parse("t").unwrap()).unwrap();
        let t5 = reduce_mod_p(&t, 5).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = ((t.get(i, j) % 5i32 + 5i32) % 5i32).to_string();
                assert_eq!(t5.get(i, j).to_string(), expected);
            }
        }
        assert!(t5.is_symplectic());
        assert!(matches!(reduce_mod_p(&t, 4), Err(ModPError::NotPrime(4))));
    }

    #[test]
    fn inverse_mod_p() {
        let t = reduce_mod_p(&eval_sp(3, &Word::parse("t e x2 w").unwrap()).unwrap(), 7).unwrap();
        assert!(t.mul(&t.inverse()).is_identity());
    }

    #[test]
    fn small_orders() {
        assert_eq!(symplectic_group_order(1, 2), BigUint::from(6u32));
        assert_eq!(symplectic_group_order(2, 2), BigUint::from(720u32));
        assert_eq!(symplectic_group_order(2, 3), BigUint::from(51840u32));
        assert_eq!(symplectic_group_order(3, 2), BigUint::from(1451520u32));
        let basis: Vec<ModPMatrix> = [HomologyClass::a(1, 1), HomologyClass::b(1, 1)]
            .iter()
            .map(|c| reduce_mod_p(&transvection(c), 2).unwrap())
            .collect();
        assert_eq!(StabilizerChain::build(1, 2, &basis).unwrap().order(), BigUint::from(6u32));
        assert_eq!(StabilizerChain::build(2, 3, &[]).unwrap().order(), BigUint::one());
        assert_eq!(full_group(2, 2).unwrap().order(), BigUint::from(720u32));
    }

    #[test]
    fn rejects_mismatched_generators() {
        let a = ModPMatrix::identity(1, 2);
        let r = StabilizerChain::build(2, 2, &[a]);
        assert!(matches!(r, Err(ModPError::DimensionMismatch { .. })));
        let bad = ModPMatrix::from_entries(1, 3, vec![2, 0, 0, 1]);
        assert_eq!(StabilizerChain::build(1, 3, &[bad]).unwrap_err(), ModPError::NotSymplectic(3));
    }

    #[test]
    fn membership_basics() {
        let chain = powell_subgroup(2, 3).unwrap();
        assert!(chain.contains(&ModPMatrix::identity(2, 3)).unwrap());
        for s in chain.strong_generators() {
            assert!(chain.contains(s).unwrap());
        }
        let e = reduce_mod_p(&eval_sp(2, &Word::parse("e").unwrap()).unwrap(), 3).unwrap();
        assert!(chain.contains(&e).unwrap());
        // the generators preserve the span of the longitudes; this does not
        let t = reduce_mod_p(&transvection(&HomologyClass::a(2, 1)), 3).unwrap();
        let m = chain.sift(&t).unwrap();
        assert!(!m.member && !m.residue.is_identity());
        assert!(chain.sift(&ModPMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn deterministic() {
        let a = powell_subgroup(3, 2).unwrap();
        let b = powell_subgroup(3, 2).unwrap();
        assert_eq!(a.base(), b.base());
        assert_eq!(a.order(), b.order());
        assert_eq!(a.strong_generators(), b.strong_generators());
    }
}
