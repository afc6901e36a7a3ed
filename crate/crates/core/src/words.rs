//! Generator alphabet and free word calculus.
//!
//! Words are read as compositions of maps, right to left: the word
//! `x1 x2 x3` first applies `x3`, then `x2`, then `x1`. Every representation
//! in this crate evaluates a word as the ordered product of its letters, so
//! `eval(uv) = eval(u) * eval(v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::EvalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown token `{token}` at byte {offset}")]
    UnknownToken { offset: usize, token: String },
    #[error("malformed index `{text}` at byte {offset}")]
    MalformedIndex { offset: usize, text: String },
}

/// Which handlebody a basis class bounds in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// meridian class `a_i`
    A,
    /// longitude class `b_i`
    B,
}

/// A non-negative integer combination of basis classes, e.g. `a1+a3`.
///
/// Stored canonically (sorted, with multiplicities) so that syntactically
/// different spellings of the same sum compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClassExpr {
    terms: BTreeMap<(Side, usize), u32>,
}

impl ClassExpr {
    pub fn basis(side: Side, index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((side, index), 1);
        ClassExpr { terms }
    }

    pub fn a(index: usize) -> Self {
        Self::basis(Side::A, index)
    }

    pub fn b(index: usize) -> Self {
        Self::basis(Side::B, index)
    }

    pub fn plus(mut self, other: &ClassExpr) -> Self {
        for (&k, &m) in &other.terms {
            *self.terms.entry(k).or_insert(0) += m;
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(side, index, multiplicity)`.
    pub fn terms(&self) -> impl Iterator<Item = (Side, usize, u32)> + '_ {
        self.terms.iter().map(|(&(s, i), &m)| (s, i, m))
    }

    /// Largest basis index mentioned, or 0 for the empty sum.
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|&(_, i)| i).max().unwrap_or(0)
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (side, index, mult) in self.terms() {
            let letter = match side {
                Side::A => 'a',
                Side::B => 'b',
            };
            for _ in 0..mult {
                if !first {
                    f.write_str("+")?;
                }
                write!(f, "{letter}{index}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Axis of one of the four π-rotations of the genus two splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoAxis {
    E,
    Q0,
    Q1,
    Q2,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorSymbol {
    /// Standard flip `D_ω`; `Some(i)` is the flip `ω_i` of bubble `i`.
    Flip(Option<usize>),
    /// Standard exchange `φ_i` of bubbles `i` and `i+1`.
    Exchange(usize),
    /// Powell's rotation `D_η`.
    Rotation,
    /// Eyeglass twist keyed by its two lens classes.
    Eyeglass(ClassExpr, ClassExpr),
    /// π-rotation of the genus two splitting.
    DihRho(RhoAxis),
}

impl GeneratorSymbol {
    /// Powell's `D_θ`, the eyeglass with lenses `a1` and `b2`.
    pub fn standard_eyeglass() -> Self {
        GeneratorSymbol::Eyeglass(ClassExpr::a(1), ClassExpr::b(2))
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self, GeneratorSymbol::DihRho(_))
    }

    /// Checks that every index is valid at genus `g` and that the symbol
    /// acts on a genus `g` splitting at all.
    pub fn check_at_genus(&self, g: usize) -> Result<(), EvalError> {
        let out_of_range = |index| EvalError::IndexOutOfRange { symbol: self.to_string(), index, genus: g };
        match self {
            GeneratorSymbol::Flip(Some(i)) if *i == 0 || *i > g => Err(out_of_range(*i)),
            GeneratorSymbol::Exchange(i) if *i == 0 || *i + 1 > g => Err(out_of_range(*i)),
            GeneratorSymbol::Eyeglass(a, b) => {
                let m = a.max_index().max(b.max_index());
                if m > g {
                    Err(out_of_range(m))
                } else {
                    Ok(())
                }
            }
            GeneratorSymbol::DihRho(_) => Err(EvalError::DihedralSymbol(self.to_string())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSymbol::Flip(None) => f.write_str("w"),
            GeneratorSymbol::Flip(Some(i)) => write!(f, "w{i}"),
            GeneratorSymbol::Exchange(i) => write!(f, "x{i}"),
            GeneratorSymbol::Rotation => f.write_str("e"),
            GeneratorSymbol::Eyeglass(a, b) => {
                if *a == ClassExpr::a(1) && *b == ClassExpr::b(2) {
                    f.write_str("t")
                } else {
                    write!(f, "t({a},{b})")
                }
            }
            GeneratorSymbol::DihRho(axis) => f.write_str(match axis {
                RhoAxis::E => "re",
                RhoAxis::Q0 => "r0",
                RhoAxis::Q1 => "r1",
                RhoAxis::Q2 => "r2",
            }),
        }
    }
}

/// Exponent of a letter; only ±1 is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exp {
    Pos,
    Neg,
}

impl Exp {
    pub fn inverse(self) -> Exp {
        match self {
            Exp::Pos => Exp::Neg,
            Exp::Neg => Exp::Pos,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Exp::Pos => 1,
            Exp::Neg => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub exp: Exp,
}

impl Letter {
    pub fn new(symbol: GeneratorSymbol, exp: Exp) -> Self {
        Letter { symbol, exp }
    }

    pub fn pos(symbol: GeneratorSymbol) -> Self {
        Letter::new(symbol, Exp::Pos)
    }

    pub fn neg(symbol: GeneratorSymbol) -> Self {
        Letter::new(symbol, Exp::Neg)
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.symbol.clone(), self.exp.inverse())
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.symbol == other.symbol && self.exp != other.exp
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            Exp::Pos => write!(f, "{}", self.symbol),
            Exp::Neg => write!(f, "{}^-1", self.symbol),
        }
    }
}

/// A word in the generators. Not necessarily reduced; see [`Word::reduce`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letter(symbol: GeneratorSymbol) -> Self {
        Word { letters: vec![Letter::pos(symbol)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if out.last().is_some_and(|top| top.cancels(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// `by · self · by⁻¹`, reduced.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.invert()).reduce()
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        Word { letters }
    }

    pub fn has_dihedral(&self) -> bool {
        self.letters.iter().any(|l| l.symbol.is_dihedral())
    }

    pub fn has_genus_symbols(&self) -> bool {
        self.letters.iter().any(|l| !l.symbol.is_dihedral())
    }

    /// `x1 x2 … x{g−1}`
    pub fn exchange_chain(g: usize) -> Word {
        Word {
            letters: (1..g).map(|i| Letter::pos(GeneratorSymbol::Exchange(i))).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for (offset, token) in tokenize(text)? {
            let (symbol, power) = parse_token(token, offset)?;
            let letter = if power < 0 {
                Letter::neg(symbol)
            } else {
                Letter::pos(symbol)
            };
            for _ in 0..power.unsigned_abs() {
                letters.push(letter.clone());
            }
        }
        Ok(Word { letters })
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Splits on whitespace outside parentheses. Yields `(byte offset, token)`.
fn tokenize(text: &str) -> Result<Vec<(usize, &str)>, WordError> {
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => {
                depth += 1;
                start.get_or_insert(i);
            }
            ')' => {
                if depth == 0 {
                    return Err(WordError::Syntax { offset: i, message: "unbalanced `)`".into() });
                }
                depth -= 1;
            }
            c if c.is_whitespace() && depth == 0 => {
                if let Some(s) = start.take() {
                    tokens.push((s, &text[s..i]));
                }
            }
            _ => {
                start.get_or_insert(i);
            }
        }
    }
    if depth > 0 {
        return Err(WordError::Syntax { offset: text.len(), message: "unclosed `(`".into() });
    }
    if let Some(s) = start {
        tokens.push((s, &text[s..]));
    }
    Ok(tokens)
}

fn parse_token(token: &str, offset: usize) -> Result<(GeneratorSymbol, i64), WordError> {
    let (body, power) = match token.find('^') {
        Some(caret) => {
            let p = &token[caret + 1..];
            let power: i64 = p.parse().map_err(|_| WordError::Syntax {
                offset: offset + caret + 1,
                message: format!("bad exponent `{p}`"),
            })?;
            if power == 0 {
                return Err(WordError::Syntax {
                    offset: offset + caret + 1,
                    message: "exponent must be nonzero".into(),
                });
            }
            (&token[..caret], power)
        }
        None => (token, 1),
    };
    let unknown = || WordError::UnknownToken { offset, token: body.to_string() };
    let symbol = match body {
        "w" => GeneratorSymbol::Flip(None),
        "e" => GeneratorSymbol::Rotation,
        "t" => GeneratorSymbol::standard_eyeglass(),
        "re" => GeneratorSymbol::DihRho(RhoAxis::E),
        "r0" => GeneratorSymbol::DihRho(RhoAxis::Q0),
        "r1" => GeneratorSymbol::DihRho(RhoAxis::Q1),
        "r2" => GeneratorSymbol::DihRho(RhoAxis::Q2),
        _ if body.starts_with("t(") => {
            let inner = body
                .strip_prefix("t(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| WordError::Syntax {
                    offset,
                    message: "eyeglass must be `t(<class>,<class>)`".into(),
                })?;
            let comma = inner.find(',').ok_or_else(|| WordError::Syntax {
                offset: offset + 2,
                message: "eyeglass needs two lens classes".into(),
            })?;
            let lens_a = parse_class(&inner[..comma], offset + 2)?;
            let lens_b = parse_class(&inner[comma + 1..], offset + 3 + comma)?;
            GeneratorSymbol::Eyeglass(lens_a, lens_b)
        }
        _ if body.starts_with('w') => GeneratorSymbol::Flip(Some(parse_index(&body[1..], offset + 1)?)),
        _ if body.starts_with('x') => GeneratorSymbol::Exchange(parse_index(&body[1..], offset + 1)?),
        _ => return Err(unknown()),
    };
    Ok((symbol, power))
}

fn parse_index(text: &str, offset: usize) -> Result<usize, WordError> {
    let malformed = || WordError::MalformedIndex { offset, text: text.to_string() };
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    match text.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i),
        _ => Err(malformed()),
    }
}

/// Parses `a{i}`, `b{i}` and `+`-separated sums.
pub fn parse_class(text: &str, offset: usize) -> Result<ClassExpr, WordError> {
    let mut expr = ClassExpr::default();
    let mut pos = offset;
    for term in text.split('+') {
        let trimmed = term.trim();
        let lead = term.len() - term.trim_start().len();
        let side = match trimmed.chars().next() {
            Some('a') => Side::A,
            Some('b') => Side::B,
            _ => {
                return Err(WordError::Syntax {
                    offset: pos + lead,
                    message: format!("expected `a<i>` or `b<i>`, found `{trimmed}`"),
                })
            }
        };
        let index = parse_index(&trimmed[1..], pos + lead + 1)?;
        expr = expr.plus(&ClassExpr::basis(side, index));
        pos += term.len() + 1;
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> GeneratorSymbol {
        GeneratorSymbol::Exchange(i)
    }

    #[test]
    fn reduce_examples() {
        let w = Word::from_letters(vec![
            Letter::pos(GeneratorSymbol::Flip(None)),
            Letter::neg(GeneratorSymbol::Flip(None)),
        ]);
        assert_eq!(w.reduce(), Word::identity());
        assert_eq!(Word::identity().reduce(), Word::identity());

        let w = Word::from_letters(vec![
            Letter::pos(x(1)),
            Letter::pos(x(2)),
            Letter::neg(x(2)),
            Letter::pos(x(1)),
        ]);
        assert_eq!(w.reduce(), Word::from_letters(vec![Letter::pos(x(1)), Letter::pos(x(1))]));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Word::parse("e").unwrap().invert(), Word::parse("e^-1").unwrap());
        assert_eq!(Word::identity().invert(), Word::identity());
        let w = Word::from_letters(vec![Letter::pos(GeneratorSymbol::Flip(None)), Letter::pos(x(1))]);
        assert_eq!(
            w.invert(),
            Word::from_letters(vec![Letter::neg(x(1)), Letter::neg(GeneratorSymbol::Flip(None))])
        );
    }

    #[test]
    fn conjugate_examples() {
        let w = Word::parse("w").unwrap();
        assert_eq!(w.conjugate(&Word::identity()), w);
        assert_eq!(Word::identity().conjugate(&Word::parse("x1 e t").unwrap()), Word::identity());
        assert_eq!(
            Word::parse("x1").unwrap().conjugate(&Word::parse("e").unwrap()),
            Word::parse("e x1 e^-1").unwrap()
        );
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            Word::parse("w x1 x2 x3").unwrap().letters(),
            &[
                Letter::pos(GeneratorSymbol::Flip(None)),
                Letter::pos(x(1)),
                Letter::pos(x(2)),
                Letter::pos(x(3)),
            ]
        );
        assert_eq!(Word::parse("e^-1").unwrap().letters(), &[Letter::neg(GeneratorSymbol::Rotation)]);
        assert_eq!(
            Word::parse("t").unwrap().letters(),
            &[Letter::pos(GeneratorSymbol::Eyeglass(ClassExpr::a(1), ClassExpr::b(2)))]
        );
        assert_eq!(Word::parse("t(a1,b2)").unwrap(), Word::parse("t").unwrap());
        assert_eq!(Word::parse("  ").unwrap(), Word::identity());
        assert_eq!(Word::parse("e^3").unwrap().len(), 3);
    }

    #[test]
    fn parse_general_eyeglass_and_rho() {
        let w = Word::parse("t(a1+a3,b2)^-1 w2 re r0 r1 r2").unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(
            w.letters()[0],
            Letter::neg(GeneratorSymbol::Eyeglass(ClassExpr::a(1).plus(&ClassExpr::a(3)), ClassExpr::b(2)))
        );
        assert_eq!(w.letters()[1].symbol, GeneratorSymbol::Flip(Some(2)));
        assert!(w.has_dihedral() && w.has_genus_symbols());
        assert_eq!(w.to_string(), "t(a1+a3,b2)^-1 w2 re r0 r1 r2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Word::parse("w q"), Err(WordError::UnknownToken { offset: 2, .. })));
        assert!(matches!(Word::parse("x0"), Err(WordError::MalformedIndex { offset: 1, .. })));
        assert!(matches!(Word::parse("e x"), Err(WordError::MalformedIndex { offset: 3, .. })));
        assert!(matches!(Word::parse("x1a"), Err(WordError::MalformedIndex { .. })));
        assert!(matches!(Word::parse("e^"), Err(WordError::Syntax { offset: 2, .. })));
        assert!(matches!(Word::parse("t(a1,b2"), Err(WordError::Syntax { .. })));
        assert!(matches!(Word::parse("t(a1)"), Err(WordError::Syntax { .. })));
        assert!(matches!(Word::parse("t(c1,b2)"), Err(WordError::Syntax { offset: 2, .. })));
        assert!(matches!(Word::parse("e)"), Err(WordError::Syntax { offset: 1, .. })));
    }

    #[test]
    fn print_is_canonical() {
        assert_eq!(Word::parse("t(a3+a1,b2+b2)").unwrap().to_string(), "t(a1+a3,b2+b2)");
        assert_eq!(Word::parse("w1 w").unwrap().to_string(), "w1 w");
    }
}
