//! Seeded random words, matrices and lens configurations for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::symplectic::{transvection_pow, EyeglassSpec, HomologyClass, SymplecticMatrix};
use crate::words::{Exp, GeneratorSymbol, Letter, Word};

/// A random word over `w`, `x{i}`, `e` and `t` at genus `g ≥ 2`.
pub fn random_powell_word<R: Rng + ?Sized>(rng: &mut R, g: usize, len: usize) -> Word {
    let mut alphabet = vec![GeneratorSymbol::Flip(None), GeneratorSymbol::Rotation, GeneratorSymbol::standard_eyeglass()];
    alphabet.extend((1..g).map(GeneratorSymbol::Exchange));
    let letters = (0..len)
        .map(|_| {
            let s = alphabet.choose(rng).expect("non-empty alphabet").clone();
            Letter::new(s, if rng.gen_bool(0.5) { Exp::Pos } else { Exp::Neg })
        })
        .collect();
    Word::from_letters(letters)
}

/// A random word that may also use flips and exchanges of any valid index
/// and general eyeglasses on single basis classes.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, g: usize, len: usize) -> Word {
    use crate::words::ClassExpr;
    let letters = (0..len)
        .map(|_| {
            let s = match rng.gen_range(0..5) {
                0 => GeneratorSymbol::Flip(Some(rng.gen_range(1..=g))),
                1 => GeneratorSymbol::Exchange(rng.gen_range(1..g)),
                2 => GeneratorSymbol::Rotation,
                3 => GeneratorSymbol::Flip(None),
                _ => {
                    let i = rng.gen_range(1..=g);
                    let mut j = rng.gen_range(1..=g);
                    while j == i {
                        j = rng.gen_range(1..=g);
                    }
                    GeneratorSymbol::Eyeglass(ClassExpr::a(i), ClassExpr::b(j))
                }
            };
            Letter::new(s, if rng.gen_bool(0.5) { Exp::Pos } else { Exp::Neg })
        })
        .collect();
    Word::from_letters(letters)
}

fn small_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Product of `k` random transvections along short vectors.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, g: usize, k: usize) -> SymplecticMatrix {
    (0..k).fold(SymplecticMatrix::identity(g), |acc, _| {
        let c = HomologyClass::from_i64s(&small_vector(rng, 2 * g, 1));
        let power = if rng.gen_bool(0.5) { 1 } else { -1 };
        &acc * &transvection_pow(&c, power)
    })
}

/// A random vector of `ℤ^g` orthogonal (dot product) to `w`, built from the
/// lattice vectors `w_j e_i − w_i e_j`.
fn orthogonal_to<R: Rng + ?Sized>(rng: &mut R, w: &[i64]) -> Vec<i64> {
    let g = w.len();
    let mut u = vec![0i64; g];
    for i in 0..g {
        for j in i + 1..g {
            let c = rng.gen_range(-1..=1);
            u[i] += c * w[j];
            u[j] -= c * w[i];
        }
    }
    u
}

fn lift(coeffs: &[i64], b_side: bool) -> HomologyClass {
    let g = coeffs.len();
    let mut v = vec![0i64; 2 * g];
    for (i, &c) in coeffs.iter().enumerate() {
        v[2 * i + usize::from(b_side)] = c;
    }
    HomologyClass::from_i64s(&v)
}

/// Three mutually orthogonal classes `(ℓa, ℓb, μ)` at genus `g ≥ 2`, moved
/// into general position by a random symplectic matrix.
pub fn random_orthogonal_triple<R: Rng + ?Sized>(rng: &mut R, g: usize) -> (HomologyClass, HomologyClass, HomologyClass) {
    let w = small_vector(rng, g, 2);
    let u = orthogonal_to(rng, &w);
    let v = orthogonal_to(rng, &w);
    let s = random_symplectic(rng, g, 3);
    (s.apply(&lift(&u, false)), s.apply(&lift(&w, true)), s.apply(&lift(&v, false)))
}

pub fn random_eyeglass_spec<R: Rng + ?Sized>(rng: &mut R, g: usize) -> EyeglassSpec {
    let (a, b, _) = random_orthogonal_triple(rng, g);
    let direction = if rng.gen_bool(0.5) { 1 } else { -1 };
    EyeglassSpec::new(a, b, direction).expect("orthogonal by construction")
}
