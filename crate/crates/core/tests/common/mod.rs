//! Test-only brute-force group enumeration, written independently of the
//! library's chain and closure code.
#![allow(dead_code)]

use std::collections::HashSet;

/// Row-major `n × n` matrices mod `p`, as plain vectors.
pub type Mat = Vec<u64>;

pub fn identity(n: usize) -> Mat {
    (0..n * n).map(|k| u64::from(k / n == k % n)).collect()
}

pub fn mul(a: &Mat, b: &Mat, n: usize, p: u64) -> Mat {
    let mut c = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            c[i * n + j] = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum::<u64>() % p;
        }
    }
    c
}

fn key(m: &Mat, p: u64) -> u128 {
    m.iter().fold(0u128, |acc, &x| acc * u128::from(p) + u128::from(x))
}

/// All products of `gens`, by breadth-first search.
pub struct Enumerated {
    pub p: u64,
    pub elements: HashSet<u128>,
}

impl Enumerated {
    pub fn new(gens: &[Mat], n: usize, p: u64) -> Self {
        let start = identity(n);
        let mut elements = HashSet::from([key(&start, p)]);
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = mul(s, &x, n, p);
                if elements.insert(key(&y, p)) {
                    frontier.push(y);
                }
            }
        }
        Enumerated { p, elements }
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.elements.contains(&key(m, self.p))
    }
}

/// `MᵀJM = J` with `J` the block form on `(a1, b1, a2, b2, …)`.
pub fn is_symplectic(m: &Mat, n: usize, p: u64) -> bool {
    let j = |r: usize, c: usize| -> u64 {
        if r / 2 != c / 2 || r == c {
            0
        } else if r.is_multiple_of(2) {
            1
        } else {
            p - 1
        }
    };
    for r in 0..n {
        for c in 0..n {
            let mut s = 0u64;
            for k in 0..n {
                for l in 0..n {
                    s += m[k * n + r] * j(k, l) % p * m[l * n + c];
                }
            }
            if s % p != j(r, c) {
                return false;
            }
        }
    }
    true
}

/// Counts symplectic matrices by running over all of `M_n(F_p)`.
pub fn count_symplectic(n: usize, p: u64) -> u64 {
    let total = p.pow((n * n) as u32);
    let mut count = 0;
    let mut m = vec![0u64; n * n];
    for mut code in 0..total {
        for x in m.iter_mut() {
            *x = code % p;
            code /= p;
        }
        if is_symplectic(&m, n, p) {
            count += 1;
        }
    }
    count
}

/// `p^{g²} ∏ (p^{2i} − 1)`, saturating at `u128::MAX`.
pub fn classical_order(g: u32, p: u64) -> u128 {
    let p = u128::from(p);
    let pow = |e: u32| p.checked_pow(e).unwrap_or(u128::MAX);
    (1..=g).fold(pow(g * g), |acc, i| acc.saturating_mul(pow(2 * i).saturating_sub(1)))
}

pub fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

use num_bigint::BigInt;
use num_integer::Integer;
use powell_calc::modp::{full_generators, powell_generators, ModPMatrix, StabilizerChain};
use powell_calc::symplectic::SymplecticMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn reduce(m: &SymplecticMatrix, p: u64) -> Mat {
    let bp = BigInt::from(p);
    m.entries().iter().map(|x| u64::try_from(x.mod_floor(&bp)).unwrap()).collect()
}

fn to_modp(m: &Mat, g: usize, p: u64) -> ModPMatrix {
    ModPMatrix::from_entries(g, p as u32, m.iter().map(|&x| x as u32).collect())
}

/// Every `(g, p, subgroup)` with `|Sp(2g, p)| ≤ 2·10⁶`; the Powell subgroup
/// only exists from genus two.
pub fn oracle_cases() -> Vec<(usize, u32, bool)> {
    let mut cases = Vec::new();
    for g in 1..=3u32 {
        for p in primes_up_to(200) {
            if classical_order(g, u64::from(p)) <= 2_000_000 {
                cases.push((g as usize, p, false));
                if g >= 2 {
                    cases.push((g as usize, p, true));
                }
            }
        }
    }
    cases
}

/// Chain order and `queries` membership answers against enumeration.
pub fn check_against_enumeration(g: usize, p: u32, powell: bool, queries: usize, seed: u64) -> Result<(), String> {
    let n = 2 * g;
    let pp = u64::from(p);
    let gens_z = if powell { powell_generators(g).unwrap() } else { full_generators(g) };
    let gens: Vec<Mat> = gens_z.iter().map(|m| reduce(m, pp)).collect();
    let full: Vec<Mat> = full_generators(g).iter().map(|m| reduce(m, pp)).collect();
    let chain = StabilizerChain::build(g, p, &gens.iter().map(|m| to_modp(m, g, pp)).collect::<Vec<_>>()).unwrap();
    let group = Enumerated::new(&gens, n, pp);
    let label = format!("g={g} p={p} {}", if powell { "powell" } else { "full" });
    if chain.order() != group.elements.len().into() {
        return Err(format!("{label}: chain order {} vs enumerated {}", chain.order(), group.elements.len()));
    }
    if !powell && group.elements.len() as u128 != classical_order(g as u32, pp) {
        return Err(format!("{label}: full group has order {}", group.elements.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..queries {
        let pool = if k % 2 == 0 { &gens } else { &full };
        let mut q = identity(n);
        for _ in 0..rng.gen_range(0..30) {
            q = mul(&q, &pool[rng.gen_range(0..pool.len())], n, pp);
        }
        let want = group.contains(&q);
        let got = chain.contains(&to_modp(&q, g, pp)).unwrap();
        if want != got {
            return Err(format!("{label}: query {k} chain says {got}, enumeration says {want}"));
        }
    }
    for s in chain.strong_generators() {
        if !chain.sift(s).unwrap().residue.is_identity() {
            return Err(format!("{label}: a strong generator does not sift to the identity"));
        }
    }
    Ok(())
}
