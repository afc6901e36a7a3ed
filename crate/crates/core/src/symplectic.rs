//! Action on first homology of the splitting surface.
//!
//! Classes are integer vectors in the basis `(a1, b1, a2, b2, …, ag, bg)`
//! with `⟨a_i, b_i⟩ = +1` and every other basis pairing zero. Matrices act on
//! column vectors from the left, so column `j` of a matrix is the image of
//! the `j`-th basis class.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::error::EvalError;
use crate::words::{ClassExpr, Exp, GeneratorSymbol, Side, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    coeffs: Vec<BigInt>,
}

impl HomologyClass {
    pub fn zero(g: usize) -> Self {
        HomologyClass { coeffs: vec![BigInt::zero(); 2 * g] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len().is_multiple_of(2), "homology vectors have even length");
        HomologyClass { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Meridian class `a_i` (1-based).
    pub fn a(g: usize, i: usize) -> Self {
        let mut x = Self::zero(g);
        x.coeffs[2 * (i - 1)] = BigInt::one();
        x
    }

    /// Longitude class `b_i` (1-based).
    pub fn b(g: usize, i: usize) -> Self {
        let mut x = Self::zero(g);
        x.coeffs[2 * (i - 1) + 1] = BigInt::one();
        x
    }

    pub fn from_expr(g: usize, expr: &ClassExpr) -> Result<Self, EvalError> {
        let mut x = Self::zero(g);
        for (side, index, mult) in expr.terms() {
            if index == 0 || index > g {
                return Err(EvalError::IndexOutOfRange { symbol: expr.to_string(), index, genus: g });
            }
            let k = 2 * (index - 1) + usize::from(side == Side::B);
            x.coeffs[k] += BigInt::from(mult);
        }
        Ok(x)
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The intersection pairing `⟨self, other⟩`.
    pub fn pairing(&self, other: &HomologyClass) -> BigInt {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "genus mismatch in pairing");
        let mut s = BigInt::zero();
        for k in (0..self.coeffs.len()).step_by(2) {
            s += &self.coeffs[k] * &other.coeffs[k + 1];
            s -= &self.coeffs[k + 1] * &other.coeffs[k];
        }
        s
    }

    pub fn scale(&self, k: &BigInt) -> HomologyClass {
        HomologyClass { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }
}

impl Add for &HomologyClass {
    type Output = HomologyClass;

    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "genus mismatch");
        HomologyClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &HomologyClass {
    type Output = HomologyClass;

    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        self + &(-rhs)
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;

    fn neg(self) -> HomologyClass {
        HomologyClass { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = format!("{}{}", if k % 2 == 0 { 'a' } else { 'b' }, k / 2 + 1);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            if mag.is_one() {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A `2g × 2g` integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    g: usize,
    entries: Vec<BigInt>,
}

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("matrix is not symplectic")]
    NotSymplectic,
}

impl SymplecticMatrix {
    pub fn identity(g: usize) -> Self {
        let n = 2 * g;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        SymplecticMatrix { g, entries }
    }

    /// Builds from rows without checking the symplectic condition.
    pub fn from_rows_unchecked(rows: &[Vec<BigInt>]) -> Self {
        let n = rows.len();
        assert!(n.is_multiple_of(2) && rows.iter().all(|r| r.len() == n), "matrix must be square of even size");
        SymplecticMatrix { g: n / 2, entries: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, EvalError> {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let m = Self::from_rows_unchecked(&rows);
        if m.is_symplectic() {
            Ok(m)
        } else {
            Err(EvalError::NotSymplectic)
        }
    }

    /// Columns are the images of the basis classes.
    pub fn from_columns(columns: &[HomologyClass]) -> Self {
        let n = columns.len();
        let mut entries = vec![BigInt::zero(); n * n];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.coeffs.len(), n);
            for (i, c) in col.coeffs.iter().enumerate() {
                entries[i * n + j] = c.clone();
            }
        }
        SymplecticMatrix { g: n / 2, entries }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim() + col]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.dim().max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.g)
    }

    pub fn apply(&self, x: &HomologyClass) -> HomologyClass {
        let n = self.dim();
        assert_eq!(x.coeffs.len(), n, "genus mismatch");
        let coeffs = (0..n)
            .map(|i| {
                let mut s = BigInt::zero();
                for j in 0..n {
                    let m = &self.entries[i * n + j];
                    if !m.is_zero() && !x.coeffs[j].is_zero() {
                        s += m * &x.coeffs[j];
                    }
                }
                s
            })
            .collect();
        HomologyClass { coeffs }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        SymplecticMatrix { g: self.g, entries }
    }

    /// The form matrix `J`: block diagonal with blocks `[[0, 1], [-1, 0]]`.
    pub fn form(g: usize) -> Self {
        let n = 2 * g;
        let mut entries = vec![BigInt::zero(); n * n];
        for k in (0..n).step_by(2) {
            entries[k * n + k + 1] = BigInt::one();
            entries[(k + 1) * n + k] = -BigInt::one();
        }
        SymplecticMatrix { g, entries }
    }

    /// `MᵀJM = J`.
    pub fn is_symplectic(&self) -> bool {
        let j = Self::form(self.g);
        &(&self.transpose() * &j) * self == j
    }

    /// Exact inverse of a symplectic matrix, `J⁻¹ Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = Self::form(self.g);
        let j_inv = -&j;
        &(&j_inv * &self.transpose()) * &j
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.g);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim();
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Entries reduced into `0..p`.
    pub fn residues(&self, p: u32) -> Vec<u32> {
        let m = BigInt::from(p);
        self.entries
            .iter()
            .map(|x| x.mod_floor(&m).to_u32().expect("residue fits"))
            .collect()
    }

    /// Matrix file: `g=<G>` then `2g` rows of `2g` integers.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("g={}\n", self.g);
        for row in self.rows() {
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_file(text: &str) -> Result<Self, MatrixFileError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or(MatrixFileError::Parse { line: 1, message: "empty matrix file".into() })?;
        let g: usize = header
            .trim()
            .strip_prefix("g=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| MatrixFileError::Parse { line: 1, message: format!("expected `g=<G>`, found `{header}`") })?;
        let n = 2 * g;
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines {
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>().map_err(|_| MatrixFileError::Parse {
                        line: idx + 1,
                        message: format!("bad integer `{t}`"),
                    })
                })
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(MatrixFileError::Parse {
                    line: idx + 1,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(MatrixFileError::Parse {
                line: text.lines().count(),
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        let m = Self::from_rows_unchecked(&rows);
        if !m.is_symplectic() {
            return Err(MatrixFileError::NotSymplectic);
        }
        Ok(m)
    }
}

impl Mul for &SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        assert_eq!(self.g, rhs.g, "genus mismatch in product");
        let n = self.dim();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        SymplecticMatrix { g: self.g, entries }
    }
}

impl Neg for &SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn neg(self) -> SymplecticMatrix {
        SymplecticMatrix { g: self.g, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SymplecticMatrix {
    type Err = MatrixFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_file(s)
    }
}

/// `x ↦ x + k⟨x,c⟩c`, the `k`-th power of the twist along `c`.
pub fn transvection_pow(c: &HomologyClass, k: i64) -> SymplecticMatrix {
    let n = c.coeffs.len();
    let g = n / 2;
    let k = BigInt::from(k);
    let columns: Vec<HomologyClass> = (0..n)
        .map(|j| {
            let mut e = HomologyClass::zero(g);
            e.coeffs[j] = BigInt::one();
            let t = e.pairing(c) * &k;
            &e + &c.scale(&t)
        })
        .collect();
    SymplecticMatrix::from_columns(&columns)
}

/// `x ↦ x + ⟨x,c⟩c`.
pub fn transvection(c: &HomologyClass) -> SymplecticMatrix {
    transvection_pow(c, 1)
}

/// An eyeglass twist, keyed by its two lens classes and a direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EyeglassSpec {
    lens_a: HomologyClass,
    lens_b: HomologyClass,
    direction: i8,
}

impl EyeglassSpec {
    pub fn new(lens_a: HomologyClass, lens_b: HomologyClass, direction: i8) -> Result<Self, EvalError> {
        if lens_a.genus() != lens_b.genus() {
            return Err(EvalError::GenusMismatch { expected: lens_a.genus(), got: lens_b.genus() });
        }
        assert!(direction == 1 || direction == -1, "direction is ±1");
        let pairing = lens_a.pairing(&lens_b);
        if !pairing.is_zero() {
            return Err(EvalError::NonOrthogonalLenses {
                a: lens_a.to_string(),
                b: lens_b.to_string(),
                pairing: pairing.to_string(),
            });
        }
        Ok(EyeglassSpec { lens_a, lens_b, direction })
    }

    pub fn lens_a(&self) -> &HomologyClass {
        &self.lens_a
    }

    pub fn lens_b(&self) -> &HomologyClass {
        &self.lens_b
    }

    pub fn direction(&self) -> i8 {
        self.direction
    }

    pub fn genus(&self) -> usize {
        self.lens_a.genus()
    }

    pub fn inverse(&self) -> EyeglassSpec {
        EyeglassSpec { direction: -self.direction, ..self.clone() }
    }
}

/// Homology action of an eyeglass twist:
/// `x ↦ x + d(⟨x,ℓb⟩ℓa + ⟨x,ℓa⟩ℓb)`.
pub fn eyeglass_map(spec: &EyeglassSpec) -> SymplecticMatrix {
    let g = spec.genus();
    let d = BigInt::from(spec.direction);
    let columns: Vec<HomologyClass> = (0..2 * g)
        .map(|j| {
            let mut e = HomologyClass::zero(g);
            e.coeffs[j] = BigInt::one();
            let shift = &spec.lens_a.scale(&(e.pairing(&spec.lens_b) * &d))
                + &spec.lens_b.scale(&(e.pairing(&spec.lens_a) * &d));
            &e + &shift
        })
        .collect();
    SymplecticMatrix::from_columns(&columns)
}

/// The same map assembled from twists along the lenses and their band sum:
/// `(T_{ℓa+ℓb} T_{ℓa}⁻¹ T_{ℓb}⁻¹)^d`.
pub fn eyeglass_map_from_twists(spec: &EyeglassSpec) -> SymplecticMatrix {
    let sum = &spec.lens_a + &spec.lens_b;
    let once = &(&transvection(&sum) * &transvection_pow(&spec.lens_a, -1)) * &transvection_pow(&spec.lens_b, -1);
    once.pow(i64::from(spec.direction))
}

fn check_index(g: usize, i: usize, symbol: &str) -> Result<(), EvalError> {
    if i == 0 || i > g {
        Err(EvalError::IndexOutOfRange { symbol: symbol.to_string(), index: i, genus: g })
    } else {
        Ok(())
    }
}

/// `−I` on the block of bubble `i`, identity elsewhere.
pub fn flip_matrix(g: usize, i: usize) -> Result<SymplecticMatrix, EvalError> {
    check_index(g, i, "flip")?;
    let mut m = SymplecticMatrix::identity(g);
    let n = 2 * g;
    for k in [2 * (i - 1), 2 * (i - 1) + 1] {
        m.entries[k * n + k] = -BigInt::one();
    }
    Ok(m)
}

/// Swaps the `(a_i, b_i)` and `(a_j, b_j)` blocks.
pub fn exchange_matrix(g: usize, i: usize, j: usize) -> Result<SymplecticMatrix, EvalError> {
    if i == 0 || j == 0 || i > g || j > g || i >= j {
        return Err(EvalError::InvalidExchange { i, j, genus: g });
    }
    Ok(block_permutation(g, |k| if k == i { j } else if k == j { i } else { k }))
}

/// Block `i` goes to block `i+1` (mod `g`).
pub fn rotation_matrix(g: usize) -> Result<SymplecticMatrix, EvalError> {
    if g < 2 {
        return Err(EvalError::GenusTooSmall { genus: g, min: 2 });
    }
    Ok(block_permutation(g, |k| k % g + 1))
}

fn block_permutation(g: usize, target: impl Fn(usize) -> usize) -> SymplecticMatrix {
    let columns: Vec<HomologyClass> = (0..2 * g)
        .map(|j| {
            let block = j / 2 + 1;
            if j % 2 == 0 {
                HomologyClass::a(g, target(block))
            } else {
                HomologyClass::b(g, target(block))
            }
        })
        .collect();
    SymplecticMatrix::from_columns(&columns)
}

/// Image of a single positive generator at genus `g`.
pub fn symbol_matrix(g: usize, symbol: &GeneratorSymbol) -> Result<SymplecticMatrix, EvalError> {
    symbol.check_at_genus(g)?;
    match symbol {
        GeneratorSymbol::Flip(slot) => flip_matrix(g, slot.unwrap_or(1)),
        GeneratorSymbol::Exchange(i) => exchange_matrix(g, *i, *i + 1),
        GeneratorSymbol::Rotation => rotation_matrix(g),
        GeneratorSymbol::Eyeglass(a, b) => {
            let spec = EyeglassSpec::new(HomologyClass::from_expr(g, a)?, HomologyClass::from_expr(g, b)?, 1)?;
            Ok(eyeglass_map(&spec))
        }
        GeneratorSymbol::DihRho(_) => Err(EvalError::DihedralSymbol(symbol.to_string())),
    }
}

/// Homology image of a word.
pub fn eval_sp(g: usize, word: &Word) -> Result<SymplecticMatrix, EvalError> {
    if g == 0 {
        return Err(EvalError::GenusTooSmall { genus: g, min: 1 });
    }
    let mut acc = SymplecticMatrix::identity(g);
    for letter in word.letters() {
        let m = symbol_matrix(g, &letter.symbol)?;
        let m = match letter.exp {
            Exp::Pos => m,
            Exp::Neg => m.inverse(),
        };
        acc = &acc * &m;
    }
    Ok(acc)
}

/// Adds a standard bubble: identity on the new `(a_{g+1}, b_{g+1})` block.
pub fn stabilize(m: &SymplecticMatrix) -> Result<SymplecticMatrix, EvalError> {
    if !m.is_symplectic() {
        return Err(EvalError::NotSymplectic);
    }
    let g = m.g + 1;
    let n = 2 * g;
    let old = m.dim();
    let mut out = SymplecticMatrix::identity(g);
    for i in 0..old {
        for j in 0..old {
            out.entries[i * n + j] = m.entries[i * old + j].clone();
        }
    }
    Ok(out)
}

/// Result of comparing two matrices that should agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: SymplecticMatrix,
    pub rhs: SymplecticMatrix,
}

impl IdentityCheck {
    pub fn new(lhs: SymplecticMatrix, rhs: SymplecticMatrix) -> Self {
        IdentityCheck { lhs, rhs }
    }

    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Twisting along `(ℓa, ℓb)` then along `(μ, ℓb)` is the twist along the
/// band sum `(ℓa + μ, ℓb)`, when all three lenses are mutually orthogonal.
pub fn eyeglass_composition_check(
    lens_a: &HomologyClass,
    lens_b: &HomologyClass,
    mu: &HomologyClass,
) -> Result<IdentityCheck, EvalError> {
    let tau = EyeglassSpec::new(lens_a.clone(), lens_b.clone(), 1)?;
    let tau_prime = EyeglassSpec::new(mu.clone(), lens_b.clone(), 1)?;
    let pairing = lens_a.pairing(mu);
    if !pairing.is_zero() {
        return Err(EvalError::NonOrthogonalLenses { a: lens_a.to_string(), b: mu.to_string(), pairing: pairing.to_string() });
    }
    let tau_plus = EyeglassSpec::new(lens_a + mu, lens_b.clone(), 1)?;
    Ok(IdentityCheck::new(&eyeglass_map(&tau) * &eyeglass_map(&tau_prime), eyeglass_map(&tau_plus)))
}

/// `M τ M⁻¹` is the twist along the image eyeglass `(Mℓa, Mℓb)`.
pub fn conjugation_covariance_check(spec: &EyeglassSpec, m: &SymplecticMatrix) -> Result<IdentityCheck, EvalError> {
    if m.genus() != spec.genus() {
        return Err(EvalError::GenusMismatch { expected: spec.genus(), got: m.genus() });
    }
    if !m.is_symplectic() {
        return Err(EvalError::NotSymplectic);
    }
    let lhs = &(m * &eyeglass_map(spec)) * &m.inverse();
    let image = EyeglassSpec::new(m.apply(&spec.lens_a), m.apply(&spec.lens_b), spec.direction)?;
    Ok(IdentityCheck::new(lhs, eyeglass_map(&image)))
}

/// The genus one slope computation: the twist matrices, their product and
/// the action of the product on two slope vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Report {
    pub phi_eps: [[i64; 2]; 2],
    pub phi_alpha: [[i64; 2]; 2],
    pub product: [[i64; 2]; 2],
    /// product · (0, 1)
    pub image_of_first: [i64; 2],
    /// product · (2, −1)
    pub image_of_second: [i64; 2],
    /// smallest `k` with `product^k = ±I`
    pub projective_order: u32,
    pub checks: Vec<(&'static str, bool)>,
}

impl Sl2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

fn to_2x2(m: &SymplecticMatrix) -> [[i64; 2]; 2] {
    let e = |i, j| m.get(i, j).to_i64().expect("small entry");
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn local_sl2_check() -> Sl2Report {
    let a = HomologyClass::a(1, 1);
    let b = HomologyClass::b(1, 1);
    let phi_eps_m = transvection_pow(&a, -2);
    let phi_alpha_m = transvection_pow(&b, -1);
    let product_m = &phi_alpha_m * &phi_eps_m;
    let apply = |v: [i64; 2]| {
        let y = product_m.apply(&HomologyClass::from_i64s(&v));
        [y.coeffs[0].to_i64().unwrap(), y.coeffs[1].to_i64().unwrap()]
    };
    let image_of_first = apply([0, 1]);
    let image_of_second = apply([2, -1]);
    let id = SymplecticMatrix::identity(1);
    let minus_id = -&id;
    let mut projective_order = 0;
    let mut acc = id.clone();
    for k in 1..=12 {
        acc = &acc * &product_m;
        if acc == id || acc == minus_id {
            projective_order = k;
            break;
        }
    }
    let phi_eps = to_2x2(&phi_eps_m);
    let phi_alpha = to_2x2(&phi_alpha_m);
    let product = to_2x2(&product_m);
    let checks = vec![
        ("phi_eps = [[1,2],[0,1]]", phi_eps == [[1, 2], [0, 1]]),
        ("phi_alpha = [[1,0],[-1,1]]", phi_alpha == [[1, 0], [-1, 1]]),
        ("phi_alpha phi_eps = [[1,2],[-1,-1]]", product == [[1, 2], [-1, -1]]),
        ("product (0,1) = (2,-1)", image_of_first == [2, -1]),
        ("product (2,-1) = -(0,1)", image_of_second == [0, -1]),
        ("phi_eps fixes (1,0)", phi_eps_m.apply(&a) == a),
        ("projective order divides 6", projective_order != 0 && 6 % projective_order == 0),
    ];
    Sl2Report { phi_eps, phi_alpha, product, image_of_first, image_of_second, projective_order, checks }
}
