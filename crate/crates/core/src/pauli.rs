//! Complex-weighted Pauli strings and sums.
//!
//! Axes are stored in symplectic form: one `x` bit and one `z` bit per qubit,
//! with `Y = i·X·Z`. Qubit `k` is bit `k` of both masks, which is also bit `k`
//! of a computational basis index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Coefficients below this magnitude are dropped by [`PauliSum::simplify`].
pub const PRUNE_TOLERANCE: f64 = 1e-12;

/// Widest register a dense matrix is built for.
pub const MAX_MATRIX_QUBITS: usize = 12;

pub const MAX_WIDTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Product of two single-qubit Paulis as `(phase, axis)`.
    pub fn product(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (a, b) if a == b => (one, I),
            (X, Y) => (i, Z),
            (Y, Z) => (i, X),
            (Z, X) => (i, Y),
            (Y, X) => (-i, Z),
            (Z, Y) => (-i, X),
            (X, Z) => (-i, Y),
            _ => unreachable!(),
        }
    }
}

/// The axes of a Pauli string on a fixed-width register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    width: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(width: usize) -> Self {
        assert!(width <= MAX_WIDTH, "register wider than {MAX_WIDTH} qubits");
        PauliString { width, x: 0, z: 0 }
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut s = Self::identity(paulis.len());
        for (q, &p) in paulis.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    /// Place single-qubit operators on a register of `width` qubits.
    pub fn from_sparse(width: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(width);
        for &(q, p) in ops {
            if q >= width {
                return Err(Error::IndexOutOfRange { index: q, width });
            }
            s.set(q, p);
        }
        Ok(s)
    }

    /// Parse a dense label such as `"XIYZ"` (qubit 0 first).
    pub fn parse(label: &str) -> Result<Self> {
        let paulis = label
            .chars()
            .map(|ch| match ch {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("invalid Pauli label {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if paulis.len() > MAX_WIDTH {
            return Err(Error::DimensionTooLarge {
                what: "Pauli string width",
                size: paulis.len(),
                limit: MAX_WIDTH,
            });
        }
        Ok(Self::from_paulis(&paulis))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.width);
        let (xb, zb) = p.bits();
        let bit = 1u64 << q;
        self.x = if xb { self.x | bit } else { self.x & !bit };
        self.z = if zb { self.z | bit } else { self.z & !bit };
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    /// Non-identity qubits in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.width).filter(|&q| self.support_mask() >> q & 1 == 1).collect()
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    pub fn count(&self, p: Pauli) -> usize {
        (0..self.width).filter(|&q| self.get(q) == p).count()
    }

    /// Symplectic commutation test.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }

    /// `self · other = phase · axes`.
    pub fn product(&self, other: &PauliString) -> (Complex64, PauliString) {
        debug_assert_eq!(self.width, other.width);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut overlap = self.support_mask() & other.support_mask();
        while overlap != 0 {
            let q = overlap.trailing_zeros() as usize;
            overlap &= overlap - 1;
            phase *= self.get(q).product(other.get(q)).0;
        }
        let axes = PauliString {
            width: self.width,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        };
        (phase, axes)
    }

    /// `(row, value)` with `P|col⟩ = value·|row⟩`.
    pub fn apply_to_basis(&self, col: usize) -> (usize, Complex64) {
        let ys = (self.x & self.z).count_ones() % 4;
        let mut value = match ys {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        if (col as u64 & self.z).count_ones() % 2 == 1 {
            value = -value;
        }
        (col ^ self.x as usize, value)
    }

    pub fn label(&self) -> String {
        (0..self.width).map(|q| self.get(q).symbol()).collect()
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width.cmp(&other.width).then_with(|| {
            (0..self.width)
                .map(|q| self.get(q).cmp(&other.get(q)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| format!("{}{}", self.get(q).symbol(), q))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    pub axes: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: Complex64, axes: PauliString) -> Self {
        PauliTerm { coefficient, axes }
    }

    pub fn real(coefficient: f64, axes: PauliString) -> Self {
        Self::new(Complex64::new(coefficient, 0.0), axes)
    }

    pub fn width(&self) -> usize {
        self.axes.width
    }

    pub fn multiply(&self, other: &PauliTerm) -> Result<PauliTerm> {
        check_width(self.width(), other.width())?;
        let (phase, axes) = self.axes.product(&other.axes);
        Ok(PauliTerm::new(self.coefficient * other.coefficient * phase, axes))
    }

    pub fn commutes(&self, other: &PauliTerm) -> Result<bool> {
        check_width(self.width(), other.width())?;
        Ok(self.axes.commutes_with(&other.axes))
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", format_coefficient(self.coefficient), self.axes)
    }
}

fn format_coefficient(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

fn check_width(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::WidthMismatch { expected, found });
    }
    Ok(())
}

pub fn multiply(a: &PauliTerm, b: &PauliTerm) -> Result<PauliTerm> {
    a.multiply(b)
}

pub fn commutes(a: &PauliTerm, b: &PauliTerm) -> Result<bool> {
    a.commutes(b)
}

/// A linear combination of Pauli strings on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    width: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn zero(width: usize) -> Self {
        PauliSum {
            width,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(width: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        for t in &terms {
            check_width(width, t.width())?;
        }
        Ok(PauliSum { width, terms })
    }

    pub fn constant(width: usize, value: Complex64) -> Self {
        PauliSum {
            width,
            terms: vec![PauliTerm::new(value, PauliString::identity(width))],
        }
    }

    pub fn single(term: PauliTerm) -> Self {
        PauliSum {
            width: term.width(),
            terms: vec![term],
        }
    }

    /// `σ₊ = (X + iY)/2`, the operator taking `|1⟩` to `|0⟩`.
    pub fn sigma_plus(width: usize, q: usize) -> Result<Self> {
        Self::ladder(width, q, 1.0)
    }

    /// `σ₋ = (X − iY)/2`, the operator taking `|0⟩` to `|1⟩`.
    pub fn sigma_minus(width: usize, q: usize) -> Result<Self> {
        Self::ladder(width, q, -1.0)
    }

    fn ladder(width: usize, q: usize, sign: f64) -> Result<Self> {
        let x = PauliString::from_sparse(width, &[(q, Pauli::X)])?;
        let y = PauliString::from_sparse(width, &[(q, Pauli::Y)])?;
        Self::from_terms(
            width,
            vec![
                PauliTerm::new(Complex64::new(0.5, 0.0), x),
                PauliTerm::new(Complex64::new(0.0, 0.5 * sign), y),
            ],
        )
    }

    /// `(1 + Z_q)/2`, the projector onto `|0⟩` of qubit `q`.
    pub fn zero_projector(width: usize, q: usize) -> Result<Self> {
        let z = PauliString::from_sparse(width, &[(q, Pauli::Z)])?;
        Self::from_terms(
            width,
            vec![
                PauliTerm::real(0.5, PauliString::identity(width)),
                PauliTerm::real(0.5, z),
            ],
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PauliTerm> {
        self.terms.iter()
    }

    pub fn push(&mut self, term: PauliTerm) -> Result<()> {
        check_width(self.width, term.width())?;
        self.terms.push(term);
        Ok(())
    }

    /// Coefficient of the given axes after merging duplicates.
    pub fn coefficient_of(&self, axes: &PauliString) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.axes == *axes)
            .map(|t| t.coefficient)
            .sum()
    }

    /// Merge equal axes, drop negligible terms, sort lexicographically.
    pub fn simplify(&self) -> PauliSum {
        let mut merged: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for t in &self.terms {
            *merged.entry(t.axes).or_default() += t.coefficient;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() >= PRUNE_TOLERANCE)
            .map(|(axes, c)| PauliTerm::new(c, axes))
            .collect();
        PauliSum {
            width: self.width,
            terms,
        }
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        check_width(self.width, other.width)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(PauliSum {
            width: self.width,
            terms,
        }
        .simplify())
    }

    pub fn scale(&self, factor: Complex64) -> PauliSum {
        PauliSum {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.coefficient * factor, t.axes))
                .collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> PauliSum {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        check_width(self.width, other.width)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.multiply(b)?);
            }
        }
        Ok(PauliSum {
            width: self.width,
            terms,
        }
        .simplify())
    }

    /// Hermitian adjoint; Pauli strings are Hermitian so only coefficients conjugate.
    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.coefficient.conj(), t.axes))
                .collect(),
        }
    }

    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.add(&ba.scale_real(-1.0))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.simplify().terms.iter().all(|t| t.coefficient.im.abs() < tol)
    }

    /// Coefficient of the identity string.
    pub fn constant_term(&self) -> Complex64 {
        self.coefficient_of(&PauliString::identity(self.width))
    }

    /// Dense matrix in the computational basis, bit `k` of the index being qubit `k`.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.width > MAX_MATRIX_QUBITS {
            return Err(Error::DimensionTooLarge {
                what: "dense matrix qubits",
                size: self.width,
                limit: MAX_MATRIX_QUBITS,
            });
        }
        let dim = 1usize << self.width;
        let mut m = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            for col in 0..dim {
                let (row, value) = t.axes.apply_to_basis(col);
                m[(row, col)] += t.coefficient * value;
            }
        }
        Ok(m)
    }

    /// Greedy partition into mutually commuting groups, in first-seen order.
    pub fn commuting_groups(&self) -> Vec<Vec<PauliTerm>> {
        let mut groups: Vec<Vec<PauliTerm>> = Vec::new();
        for t in &self.terms {
            match groups
                .iter_mut()
                .find(|g| g.iter().all(|m| m.axes.commutes_with(&t.axes)))
            {
                Some(g) => g.push(*t),
                None => groups.push(vec![*t]),
            }
        }
        groups
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn simplify(s: &PauliSum) -> PauliSum {
    s.simplify()
}

pub fn commuting_groups(s: &PauliSum) -> Vec<Vec<PauliTerm>> {
    s.commuting_groups()
}

pub fn to_matrix(s: &PauliSum) -> Result<CMatrix> {
    s.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, max_abs_diff};

    fn term(label: &str) -> PauliTerm {
        PauliTerm::real(1.0, PauliString::parse(label).unwrap())
    }

    #[test]
    fn xy_gives_iz() {
        let p = term("XI").multiply(&term("YI")).unwrap();
        assert_eq!(p.axes.label(), "ZI");
        assert!((p.coefficient - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn involution() {
        let p = term("XX").multiply(&term("XX")).unwrap();
        assert!(p.axes.is_identity());
        assert!((p.coefficient - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn xx_times_yy_matches_matrix_product() {
        let p = term("XX").multiply(&term("YY")).unwrap();
        assert_eq!(p.axes.label(), "ZZ");
        assert!((p.coefficient - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let a = PauliSum::single(term("XX")).to_matrix().unwrap();
        let b = PauliSum::single(term("YY")).to_matrix().unwrap();
        let ab = PauliSum::single(p).to_matrix().unwrap();
        assert!(max_abs_diff(&(a * b), &ab) < 1e-15);
    }

    #[test]
    fn width_mismatch_is_reported() {
        assert_eq!(
            term("X").multiply(&term("XX")),
            Err(Error::WidthMismatch { expected: 1, found: 2 })
        );
        assert!(term("X").commutes(&term("XX")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(term("XXXX").commutes(&term("XYYX")).unwrap());
        assert!(!term("XI").commutes(&term("YI")).unwrap());
    }

    #[test]
    fn simplify_merges_and_cancels() {
        let xx = PauliString::parse("XX").unwrap();
        let s = PauliSum::from_terms(2, vec![PauliTerm::real(0.5, xx), PauliTerm::real(0.5, xx)])
            .unwrap()
            .simplify();
        assert_eq!(s.len(), 1);
        assert!((s.terms()[0].coefficient.re - 1.0).abs() < 1e-15);
        let s = PauliSum::from_terms(2, vec![PauliTerm::real(0.5, xx), PauliTerm::real(-0.5, xx)])
            .unwrap()
            .simplify();
        assert!(s.is_empty());
    }

    #[test]
    fn simplify_orders_lexicographically() {
        let s = PauliSum::from_terms(
            2,
            vec![term("ZI"), term("IX"), term("XZ"), term("XY"), term("II")],
        )
        .unwrap()
        .simplify();
        let labels: Vec<String> = s.iter().map(|t| t.axes.label()).collect();
        assert_eq!(labels, ["II", "IX", "XY", "XZ", "ZI"]);
    }

    #[test]
    fn ladder_operators_have_expected_matrices() {
        let sp = PauliSum::sigma_plus(1, 0).unwrap().to_matrix().unwrap();
        // σ₊|1⟩ = |0⟩
        assert!((sp[(0, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(sp[(1, 0)].norm() < 1e-15);
        let sm = PauliSum::sigma_minus(1, 0).unwrap().to_matrix().unwrap();
        assert!((sm[(1, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_matrix() {
        let m = PauliSum::single(term("II")).to_matrix().unwrap();
        assert!(max_abs_diff(&m, &CMatrix::identity(4, 4)) < 1e-15);
    }

    #[test]
    fn too_wide_for_matrix() {
        let s = PauliSum::zero(13);
        assert!(matches!(s.to_matrix(), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn groups() {
        let s = PauliSum::from_terms(1, vec![term("X"), term("Y")]).unwrap();
        assert_eq!(s.commuting_groups().len(), 2);
    }

    #[test]
    fn symplectic_matches_matrix_commutator_exhaustively() {
        let all: Vec<PauliString> = (0..64u32)
            .map(|k| {
                let ps: Vec<Pauli> = (0..3)
                    .map(|q| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][(k >> (2 * q) & 3) as usize])
                    .collect();
                PauliString::from_paulis(&ps)
            })
            .collect();
        let mats: Vec<CMatrix> = all
            .iter()
            .map(|p| PauliSum::single(PauliTerm::real(1.0, *p)).to_matrix().unwrap())
            .collect();
        for (a, ma) in all.iter().zip(&mats) {
            for (b, mb) in all.iter().zip(&mats) {
                let norm = commutator(ma, mb).norm();
                assert_eq!(a.commutes_with(b), norm < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn display() {
        let t = PauliTerm::real(0.125, PauliString::parse("XXYY").unwrap());
        assert_eq!(t.to_string(), "0.125·X0 X1 Y2 Y3");
        let t = PauliTerm::new(Complex64::new(0.0, -0.25), PauliString::parse("IZ").unwrap());
        assert_eq!(t.to_string(), "-0.25i·Z1");
    }
}
