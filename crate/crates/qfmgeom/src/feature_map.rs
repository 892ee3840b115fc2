//! Hamiltonian quantum feature maps `U(p) = exp(sum_k f_k(p) L_k)` and their
//! tangent vectors.
//!
//! A [`FeatureMapSpec`] pairs each smooth pre-processing function `f_k` with a
//! generator `L_k`. Construction validates the non-degeneracy assumptions
//! (no vanishing generator, every coordinate feeds at least one `f_k`) and
//! precomputes all symbolic partials.
//!
//! Tangent vectors come from the derivative of the exponential: with
//! `dL = sum_k <grad f_k(p), v> L_k`, the derivative of `U` along `v` is
//! `U(p)` times the series
//!
//! ```text
//! bar = sum_{q=0..Q} (-1)^q / (q+1)! * ad_{L(p)}^q (dL)
//! ```
//!
//! truncated at a configurable order `Q`. The `ad` powers are applied
//! symbolically over the Pauli-string representation, so no floating-point
//! error accumulates inside the series and dense matrices only appear at the
//! boundary. When the generators commute pairwise every bracket vanishes and
//! the series collapses to `dL` at any order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::linalg::{expm_skew, UnitaryMatrix};
use crate::pauli::{commutator, PauliString, SkewHermitianOp};

/// Default series truncation order.
pub const DEFAULT_ORDER: usize = 3;
/// Largest order the configuration surface accepts.
pub const MAX_ORDER: usize = 12;

/// One `(f_k, L_k)` pair of a feature map.
#[derive(Debug, Clone)]
pub struct EncodingTerm {
    source: String,
    function: Expr,
    partials: Vec<Expr>,
    generator: SkewHermitianOp,
}

impl EncodingTerm {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn function(&self) -> &Expr {
        &self.function
    }

    pub fn partial(&self, coord: usize) -> &Expr {
        &self.partials[coord]
    }

    pub fn generator(&self) -> &SkewHermitianOp {
        &self.generator
    }

    /// A term depends on a coordinate iff its symbolic partial is not the
    /// constant-zero tree after folding.
    pub fn depends_on(&self, coord: usize) -> bool {
        !self.partials[coord].is_const_zero()
    }
}

/// A validated feature map.
#[derive(Debug, Clone)]
pub struct FeatureMapSpec {
    qubits: usize,
    coords: Vec<String>,
    terms: Vec<EncodingTerm>,
    commutative: bool,
}

/// Tangent vector at `U(p)`: the full vector is `U(p) * dense(bar)`; only the
/// `bar` part is stored since the unitary prefactor cancels out of every
/// metric and curvature computation.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: Vec<f64>,
    order: usize,
    bar: SkewHermitianOp,
}

impl TangentVector {
    /// Wrap a bar part that did not come from the series, e.g. a closure
    /// string promoted to a frame vector.
    pub fn synthetic(base: Vec<f64>, bar: SkewHermitianOp) -> TangentVector {
        TangentVector { base, order: 0, bar }
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bar(&self) -> &SkewHermitianOp {
        &self.bar
    }

    pub fn into_bar(self) -> SkewHermitianOp {
        self.bar
    }
}

impl FeatureMapSpec {
    /// Build and validate a feature map from expression sources and
    /// generators.
    pub fn new(
        qubits: usize,
        coords: Vec<String>,
        pairs: Vec<(String, SkewHermitianOp)>,
    ) -> Result<FeatureMapSpec> {
        if qubits == 0 {
            return Err(Error::InvalidSpec("qubit count must be positive".into()));
        }
        if coords.is_empty() {
            return Err(Error::InvalidSpec("no input coordinates declared".into()));
        }
        for (i, name) in coords.iter().enumerate() {
            if coords[..i].contains(name) {
                return Err(Error::InvalidSpec(format!("duplicate coordinate '{name}'")));
            }
        }
        if pairs.is_empty() {
            return Err(Error::InvalidSpec("feature map has no terms".into()));
        }

        let mut terms = Vec::with_capacity(pairs.len());
        for (k, (source, generator)) in pairs.into_iter().enumerate() {
            if generator.qubits() != qubits {
                return Err(Error::QubitMismatch { left: qubits, right: generator.qubits() });
            }
            if generator.is_zero() {
                return Err(Error::InvalidSpec(format!("generator L_{} is zero", k + 1)));
            }
            let function = expr::parse(&source, &coords)?;
            let partials = (0..coords.len()).map(|j| function.differentiate(j)).collect();
            terms.push(EncodingTerm { source, function, partials, generator });
        }

        for (j, name) in coords.iter().enumerate() {
            if !terms.iter().any(|t| t.depends_on(j)) {
                return Err(Error::InvalidSpec(format!(
                    "no pre-processing function depends on coordinate '{name}'"
                )));
            }
        }

        let commutative = pairwise_commutative(&terms)?;
        Ok(FeatureMapSpec { qubits, coords, terms, commutative })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.qubits
    }

    pub fn input_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn terms(&self) -> &[EncodingTerm] {
        &self.terms
    }

    pub fn generators(&self) -> Vec<SkewHermitianOp> {
        self.terms.iter().map(|t| t.generator.clone()).collect()
    }

    /// True iff all generator pairs commute symbolically; by the
    /// matrix-product-state argument such a map is classically representable.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Alias for [`is_commutative`](Self::is_commutative) under the name the
    /// classical-simulability certificate goes by.
    pub fn is_dequantizable(&self) -> bool {
        self.commutative
    }

    fn check_point(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.coords.len() {
            return Err(Error::PointDim { expected: self.coords.len(), got: p.len() });
        }
        Ok(())
    }

    /// `L(p) = sum_k f_k(p) L_k` in canonical form.
    pub fn eval_l(&self, p: &[f64]) -> Result<SkewHermitianOp> {
        self.check_point(p)?;
        let mut acc = SkewHermitianOp::zero(self.qubits);
        for term in &self.terms {
            let weight = term.function.eval(p)?;
            acc = acc.add_scaled(&term.generator, weight)?;
        }
        Ok(acc)
    }

    /// `U(p) = exp(L(p))`.
    pub fn eval_u(&self, p: &[f64]) -> Result<UnitaryMatrix> {
        expm_skew(&self.eval_l(p)?)
    }

    /// Directional derivative of `L` at `p` along `v`:
    /// `sum_k <grad f_k(p), v> L_k`.
    pub fn direction_derivative(&self, p: &[f64], v: &[f64]) -> Result<SkewHermitianOp> {
        self.check_point(p)?;
        self.check_point(v)?;
        let mut acc = SkewHermitianOp::zero(self.qubits);
        for term in &self.terms {
            let mut weight = 0.0;
            for (j, vj) in v.iter().enumerate() {
                if *vj != 0.0 && term.depends_on(j) {
                    weight += vj * term.partials[j].eval(p)?;
                }
            }
            if weight != 0.0 {
                acc = acc.add_scaled(&term.generator, weight)?;
            }
        }
        Ok(acc)
    }

    /// Tangent vector at `p` along `v`, truncating the `ad`-series at `order`.
    pub fn tangent(&self, p: &[f64], v: &[f64], order: usize) -> Result<TangentVector> {
        let d_l = self.direction_derivative(p, v)?;
        let l = self.eval_l(p)?;
        let bar = ad_series(&l, &d_l, order)?;
        Ok(TangentVector { base: p.to_vec(), order, bar })
    }

    /// Tangent vectors along every coordinate direction.
    pub fn coordinate_tangents(&self, p: &[f64], order: usize) -> Result<Vec<TangentVector>> {
        let m = self.coords.len();
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let mut v = vec![0.0; m];
            v[j] = 1.0;
            out.push(self.tangent(p, &v, order)?);
        }
        Ok(out)
    }

    /// Read the map from its JSON file format.
    pub fn from_json(text: &str) -> Result<FeatureMapSpec> {
        let file: SpecFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSpec(format!("malformed feature map JSON: {e}")))?;
        file.build()
    }

    /// Serialize back to the JSON file format.
    pub fn to_json(&self) -> String {
        let file = SpecFile {
            qubits: self.qubits,
            coords: self.coords.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TermFile {
                    f: t.source.clone(),
                    l: t.generator
                        .terms()
                        .map(|(p, c)| PauliTermFile { c, p: p.to_string() })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("spec file serializes")
    }
}

/// Truncated derivative-of-exponential series
/// `sum_{q=0..order} (-1)^q/(q+1)! ad_l^q(seed)`, computed symbolically.
pub fn ad_series(l: &SkewHermitianOp, seed: &SkewHermitianOp, order: usize) -> Result<SkewHermitianOp> {
    let mut acc = seed.clone();
    let mut nested = seed.clone();
    let mut factorial = 1.0;
    for q in 1..=order {
        nested = commutator(l, &nested)?;
        if nested.is_zero() {
            break;
        }
        factorial *= (q + 1) as f64;
        let coefficient = if q % 2 == 0 { 1.0 } else { -1.0 } / factorial;
        acc = acc.add_scaled(&nested, coefficient)?;
    }
    Ok(acc)
}

fn pairwise_commutative(terms: &[EncodingTerm]) -> Result<bool> {
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if !commutator(&a.generator, &b.generator)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Serialize, Deserialize)]
struct SpecFile {
    qubits: usize,
    coords: Vec<String>,
    terms: Vec<TermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermFile {
    f: String,
    #[serde(rename = "L")]
    l: Vec<PauliTermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PauliTermFile {
    c: f64,
    p: String,
}

impl SpecFile {
    fn build(self) -> Result<FeatureMapSpec> {
        let mut pairs = Vec::with_capacity(self.terms.len());
        for term in self.terms {
            let mut entries = Vec::with_capacity(term.l.len());
            for entry in term.l {
                entries.push((entry.p.parse::<PauliString>()?, entry.c));
            }
            let generator = SkewHermitianOp::from_terms(self.qubits, entries)?;
            pairs.push((term.f, generator));
        }
        FeatureMapSpec::new(self.qubits, self.coords, pairs)
    }
}

/// The two reference encodings used throughout the experiments.
pub mod reference {
    use super::*;

    /// Angle encoding on two qubits: `(x, y) -> exp(-i(x XI + y IX))`.
    pub fn angle() -> FeatureMapSpec {
        FeatureMapSpec::from_json(
            r#"{
              "qubits": 2,
              "coords": ["x", "y"],
              "terms": [
                { "f": "x", "L": [ { "c": 1.0, "p": "XI" } ] },
                { "f": "y", "L": [ { "c": 1.0, "p": "IX" } ] }
              ]
            }"#,
        )
        .expect("angle reference spec")
    }

    /// IQP-style XY-Hamiltonian encoding on two qubits:
    /// `(x, y) -> exp(-i(x YI + y IY + xy XX))`.
    pub fn iqp() -> FeatureMapSpec {
        FeatureMapSpec::from_json(
            r#"{
              "qubits": 2,
              "coords": ["x", "y"],
              "terms": [
                { "f": "x", "L": [ { "c": 1.0, "p": "YI" } ] },
                { "f": "y", "L": [ { "c": 1.0, "p": "IY" } ] },
                { "f": "x*y", "L": [ { "c": 1.0, "p": "XX" } ] }
              ]
            }"#,
        )
        .expect("iqp reference spec")
    }
}
