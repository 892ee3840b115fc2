//! Exact symbolic algebra of N-qubit Pauli strings.
//!
//! A [`PauliString`] is a word over `{I, X, Y, Z}`, one letter per qubit.
//! Products of strings are again strings up to a phase in `{1, i, -1, -i}`,
//! which is tracked exactly. A [`SkewHermitianOp`] is a real-weighted sum of
//! strings with an implicit `-i` in front, i.e. the matrix `-i * sum c_P P`;
//! these are the Lie-algebra elements that generate the feature maps.
//! Commutators of such operators stay in the same representation with real
//! coefficients, so brackets, the Lie closure, and everything built on top of
//! them are computed without any floating-point linear algebra.

mod dense;

pub use dense::DenseMatrix;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients below this threshold are dropped when an operator is put in
/// canonical form, so floating noise cannot inflate a Lie closure.
pub const COEFF_EPS: f64 = 1e-14;

/// Single-qubit Pauli axis. The declaration order defines the total order
/// used for canonical maps: `I < X < Y < Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    fn letter(self) -> char {
        match self {
            Axis::I => 'I',
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    fn from_letter(c: char) -> Option<Axis> {
        match c {
            'I' => Some(Axis::I),
            'X' => Some(Axis::X),
            'Y' => Some(Axis::Y),
            'Z' => Some(Axis::Z),
            _ => None,
        }
    }

    /// Single-qubit product `a * b = i^k * c`, returned as `(k, c)` with
    /// `k` in `0..4`.
    fn mul(self, other: Axis) -> (u8, Axis) {
        use Axis::*;
        match (self, other) {
            (I, b) => (0, b),
            (a, I) => (0, a),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Axis::I => [[l, o], [o, l]],
            Axis::X => [[o, l], [l, o]],
            Axis::Y => [[o, -i], [i, o]],
            Axis::Z => [[l, o], [o, -l]],
        }
    }
}

/// Phase of a product of Pauli strings: one of `{+1, +i, -1, -i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    fn from_exponent(k: u8) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn as_complex(self) -> Complex64 {
        match self {
            Phase::PlusOne => Complex64::new(1.0, 0.0),
            Phase::PlusI => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }
}

/// An N-qubit word over `{I, X, Y, Z}`; the leftmost letter acts on qubit 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    axes: Vec<Axis>,
}

impl PauliString {
    pub fn new(axes: Vec<Axis>) -> PauliString {
        PauliString { axes }
    }

    pub fn identity(qubits: usize) -> PauliString {
        PauliString { axes: vec![Axis::I; qubits] }
    }

    pub fn qubits(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn is_identity(&self) -> bool {
        self.axes.iter().all(|a| *a == Axis::I)
    }

    /// Two strings either commute or anticommute; they anticommute exactly
    /// when an odd number of positions carries two distinct non-identity axes.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = self
            .axes
            .iter()
            .zip(&other.axes)
            .filter(|(a, b)| **a != Axis::I && **b != Axis::I && a != b)
            .count();
        anti % 2 == 0
    }

    /// Exact product: `M(self) * M(other) == phase * M(result)`.
    pub fn mul(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        if self.qubits() != other.qubits() {
            return Err(Error::QubitMismatch { left: self.qubits(), right: other.qubits() });
        }
        let mut exponent = 0u8;
        let mut axes = Vec::with_capacity(self.axes.len());
        for (a, b) in self.axes.iter().zip(&other.axes) {
            let (k, c) = a.mul(*b);
            exponent = (exponent + k) % 4;
            axes.push(c);
        }
        Ok((Phase::from_exponent(exponent), PauliString { axes }))
    }

    /// Dense `2^N x 2^N` rendering as the Kronecker product of the
    /// single-qubit matrices, leftmost letter first.
    pub fn to_matrix(&self) -> DenseMatrix {
        let mut m = DenseMatrix::identity(1);
        for axis in &self.axes {
            let a = axis.matrix();
            let mut block = DenseMatrix::zeros(2);
            for (r, row) in a.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    block.set(r, c, *entry);
                }
            }
            m = m.kron(&block);
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in &self.axes {
            write!(f, "{}", axis.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<PauliString> {
        if s.is_empty() {
            return Err(Error::Parse { offset: 0, message: "empty Pauli string".into() });
        }
        let mut axes = Vec::with_capacity(s.len());
        for (offset, c) in s.char_indices() {
            match Axis::from_letter(c) {
                Some(a) => axes.push(a),
                None => {
                    return Err(Error::Parse {
                        offset,
                        message: format!("invalid Pauli letter '{c}'"),
                    })
                }
            }
        }
        Ok(PauliString { axes })
    }
}

/// A real-weighted sum of Pauli strings with an implicit `-i` factor:
/// the matrix `-i * sum_P terms[P] * M(P)`.
///
/// The representation is canonical: zero coefficients are absent and the
/// term map is ordered, so equal operators compare equal structurally.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewHermitianOp {
    qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl SkewHermitianOp {
    pub fn zero(qubits: usize) -> SkewHermitianOp {
        SkewHermitianOp { qubits, terms: BTreeMap::new() }
    }

    pub fn single(string: PauliString, coeff: f64) -> SkewHermitianOp {
        let qubits = string.qubits();
        SkewHermitianOp::from_terms(qubits, [(string, coeff)]).expect("consistent qubit count")
    }

    pub fn from_terms<T>(qubits: usize, terms: T) -> Result<SkewHermitianOp>
    where
        T: IntoIterator<Item = (PauliString, f64)>,
    {
        let mut map: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (string, coeff) in terms {
            if string.qubits() != qubits {
                return Err(Error::QubitMismatch { left: qubits, right: string.qubits() });
            }
            if !coeff.is_finite() {
                return Err(Error::Numerical(format!("non-finite coefficient {coeff}")));
            }
            *map.entry(string).or_insert(0.0) += coeff;
        }
        map.retain(|_, c| c.abs() >= COEFF_EPS);
        Ok(SkewHermitianOp { qubits, terms: map })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.qubits
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, string: &PauliString) -> f64 {
        self.terms.get(string).copied().unwrap_or(0.0)
    }

    /// Iterate terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.keys()
    }

    /// Euclidean norm of the coefficient vector. The Frobenius norm of the
    /// dense rendering is `2^(N/2)` times this.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &SkewHermitianOp) -> Result<SkewHermitianOp> {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &SkewHermitianOp) -> Result<SkewHermitianOp> {
        self.add_scaled(other, -1.0)
    }

    pub fn add_scaled(&self, other: &SkewHermitianOp, factor: f64) -> Result<SkewHermitianOp> {
        if self.qubits != other.qubits {
            return Err(Error::QubitMismatch { left: self.qubits, right: other.qubits });
        }
        let mut map = self.terms.clone();
        for (string, coeff) in &other.terms {
            *map.entry(string.clone()).or_insert(0.0) += factor * coeff;
        }
        map.retain(|_, c| c.abs() >= COEFF_EPS);
        Ok(SkewHermitianOp { qubits: self.qubits, terms: map })
    }

    pub fn scaled(&self, factor: f64) -> SkewHermitianOp {
        let mut terms = BTreeMap::new();
        for (string, coeff) in &self.terms {
            let c = coeff * factor;
            if c.abs() >= COEFF_EPS {
                terms.insert(string.clone(), c);
            }
        }
        SkewHermitianOp { qubits: self.qubits, terms }
    }

    /// Dense rendering `-i * sum c_P M(P)`; anti-Hermitian by construction.
    pub fn to_dense(&self) -> DenseMatrix {
        let dim = self.dim();
        let mut out = DenseMatrix::zeros(dim);
        let minus_i = Complex64::new(0.0, -1.0);
        for (string, coeff) in &self.terms {
            let m = string.to_matrix();
            out.add_scaled_assign(&m, minus_i * Complex64::new(*coeff, 0.0));
        }
        out
    }

    /// Dense rendering of the Hermitian part `H = sum c_P M(P)`, so that the
    /// operator itself is `-iH`.
    pub fn hermitian_part(&self) -> DenseMatrix {
        let dim = self.dim();
        let mut out = DenseMatrix::zeros(dim);
        for (string, coeff) in &self.terms {
            let m = string.to_matrix();
            out.add_scaled_assign(&m, Complex64::new(*coeff, 0.0));
        }
        out
    }
}

impl fmt::Display for SkewHermitianOp {
    /// One term per line, `coefficient<space>string`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (string, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{coeff} {string}")?;
        }
        Ok(())
    }
}

impl FromStr for SkewHermitianOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<SkewHermitianOp> {
        let mut terms: Vec<(PauliString, f64)> = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (coeff, string) = line.split_once(' ').ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("expected 'coefficient string', got '{line}'"),
            })?;
            let coeff: f64 = coeff.parse().map_err(|_| Error::Parse {
                offset: 0,
                message: format!("invalid coefficient '{coeff}'"),
            })?;
            terms.push((string.trim().parse()?, coeff));
        }
        if terms.is_empty() {
            return Err(Error::Parse { offset: 0, message: "empty operator".into() });
        }
        let qubits = terms[0].0.qubits();
        SkewHermitianOp::from_terms(qubits, terms)
    }
}

/// Lie bracket of two operators in the implicit `-i` representation.
///
/// Only anticommuting string pairs contribute; their product phase is `+-i`,
/// which combines with the implicit `-i` factors so the result has real
/// coefficients again: for `PQ = s*i*R` the bracket adds `2*s*a_P*b_Q` to `R`.
pub fn commutator(a: &SkewHermitianOp, b: &SkewHermitianOp) -> Result<SkewHermitianOp> {
    if a.qubits != b.qubits {
        return Err(Error::QubitMismatch { left: a.qubits, right: b.qubits });
    }
    let mut map: BTreeMap<PauliString, f64> = BTreeMap::new();
    for (p, cp) in &a.terms {
        for (q, cq) in &b.terms {
            if p.commutes_with(q) {
                continue;
            }
            let (phase, r) = p.mul(q)?;
            let sign = match phase {
                Phase::PlusI => 1.0,
                Phase::MinusI => -1.0,
                // anticommuting products always carry an imaginary phase
                _ => unreachable!("anticommuting Pauli product with real phase"),
            };
            *map.entry(r).or_insert(0.0) += 2.0 * sign * cp * cq;
        }
    }
    map.retain(|_, c| c.abs() >= COEFF_EPS);
    Ok(SkewHermitianOp { qubits: a.qubits, terms: map })
}

/// Smallest set of Pauli strings containing every string of the generators
/// and closed under the bracket of its unit-coefficient elements.
///
/// Iterates breadth-first over unordered pairs; the result is ordered, so the
/// output is deterministic. Terminates because the string set over N qubits
/// is finite.
pub fn lie_closure(generators: &[SkewHermitianOp]) -> Result<BTreeSet<PauliString>> {
    let qubits = match generators.first() {
        Some(g) => g.qubits(),
        None => return Err(Error::InvalidSpec("empty generator set".into())),
    };
    let mut set: BTreeSet<PauliString> = BTreeSet::new();
    for g in generators {
        if g.qubits() != qubits {
            return Err(Error::QubitMismatch { left: qubits, right: g.qubits() });
        }
        set.extend(g.strings().cloned());
    }
    loop {
        let current: Vec<&PauliString> = set.iter().collect();
        let mut fresh: BTreeSet<PauliString> = BTreeSet::new();
        for (i, p) in current.iter().enumerate() {
            for q in &current[i + 1..] {
                if p.commutes_with(q) {
                    continue;
                }
                let (_, r) = p.mul(q)?;
                if !set.contains(&r) {
                    fresh.insert(r);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(set);
        }
        set.extend(fresh);
    }
}
