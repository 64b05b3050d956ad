//! Integral lattices given by a Gram matrix, and divisor classes on them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::clear_denominators;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is empty")]
    Empty,
    #[error("Gram matrix is not square: row {row} has {len} entries, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("Gram matrix is not symmetric at [{i}][{j}]: {upper} != {lower}")]
    NotSymmetric { i: usize, j: usize, upper: BigInt, lower: BigInt },
    #[error("{names} basis names given for a rank {rank} lattice")]
    BasisMismatch { names: usize, rank: usize },
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("coordinate vector of length {got} for lattice `{lattice}` of rank {rank}")]
    WrongLength { lattice: String, rank: usize, got: usize },
    #[error("classes live on different lattices `{left}` and `{right}`")]
    Mismatch { left: String, right: String },
}

/// A free Z-module with a symmetric integral bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    label: String,
    basis: Vec<String>,
    gram: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_even: bool,
    pub signature: Signature,
}

impl Classification {
    /// Even and of signature (1, rank-1): the shape of a Néron–Severi lattice
    /// of a projective K3 surface.
    pub fn is_k3_type(&self) -> bool {
        self.is_even && self.signature.positive == 1 && self.signature.zero == 0
    }
}

/// Outcome of a negative definiteness test on a family of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    NegativeDefinite,
    /// `witness` is an integral combination of the input classes with
    /// non-negative square.
    NotNegativeDefinite {
        witness: Vec<BigInt>,
        square: BigInt,
    },
    /// The input classes are linearly dependent.
    Degenerate,
}

fn validate_gram(gram: &[Vec<BigInt>]) -> Result<(), LatticeError> {
    let rank = gram.len();
    if rank == 0 {
        return Err(LatticeError::Empty);
    }
    for (row, entries) in gram.iter().enumerate() {
        if entries.len() != rank {
            return Err(LatticeError::NotSquare { row, len: entries.len(), rank });
        }
    }
    for i in 0..rank {
        for j in i + 1..rank {
            if gram[i][j] != gram[j][i] {
                return Err(LatticeError::NotSymmetric { i, j, upper: gram[i][j].clone(), lower: gram[j][i].clone() });
            }
        }
    }
    Ok(())
}

fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect()).collect()
}

/// Inertia of a symmetric rational matrix by congruence diagonalisation.
fn inertia(m: Vec<Vec<BigRational>>) -> Signature {
    let n = m.len();
    let mut a = m;
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    let mut k = 0;
    while k < n {
        let mut pivot = (k..n).find(|&i| !a[i][i].is_zero());
        if pivot.is_none() {
            // all remaining diagonal entries vanish; fold a nonzero off-diagonal
            // entry onto the diagonal via e_i -> e_i + e_j
            let pair = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
            match pair {
                None => {
                    sig.zero += n - k;
                    break;
                }
                Some((i, j)) => {
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[i][c] += v;
                    }
                    for r in 0..n {
                        let v = a[r][j].clone();
                        a[r][i] += v;
                    }
                    pivot = Some(i);
                }
            }
        }
        let p = pivot.expect("pivot chosen above");
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
            a[k][i] = BigRational::zero();
        }
        k += 1;
    }
    sig
}

/// Parity and inertia of a Gram matrix.
pub fn classify_gram(gram: &[Vec<BigInt>]) -> Result<Classification, LatticeError> {
    validate_gram(gram)?;
    let is_even = gram.iter().enumerate().all(|(i, r)| r[i].is_even());
    Ok(Classification { is_even, signature: inertia(to_rational(gram)) })
}

/// Negative definiteness of a symmetric matrix by an unpivoted LDLᵀ sweep.
/// Returns `Err(x)` with `xᵀ m x >= 0`, `x != 0` when the test fails.
pub(crate) fn negative_definite_or_witness(m: &[Vec<BigRational>]) -> Result<(), Vec<BigRational>> {
    let n = m.len();
    let mut a = m.to_vec();
    // lower unit-triangular factor, column k holds the multipliers of step k
    let mut l = vec![vec![BigRational::zero(); n]; n];
    for k in 0..n {
        l[k][k] = BigRational::one();
        let d = a[k][k].clone();
        if !d.is_negative() {
            // x = L^{-T} e_k restricted to the leading block gives xᵀ m x = d
            let mut x = vec![BigRational::zero(); n];
            x[k] = BigRational::one();
            for i in (0..k).rev() {
                let mut s = BigRational::zero();
                for j in i + 1..=k {
                    s += &l[j][i] * &x[j];
                }
                x[i] = -s;
            }
            return Err(x);
        }
        for i in k + 1..n {
            let f = &a[i][k] / &d;
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
            l[i][k] = f;
        }
    }
    Ok(())
}

fn rank_of(rows: &[Vec<BigInt>]) -> usize {
    let mut a = to_rational(rows);
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[rank][c];
            for j in c..cols {
                let delta = &f * &a[rank][j];
                a[r][j] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

impl Lattice {
    pub fn new(
        label: impl Into<String>,
        basis: Vec<String>,
        gram: Vec<Vec<BigInt>>,
    ) -> Result<Arc<Self>, LatticeError> {
        validate_gram(&gram)?;
        if basis.len() != gram.len() {
            return Err(LatticeError::BasisMismatch { names: basis.len(), rank: gram.len() });
        }
        for (i, name) in basis.iter().enumerate() {
            if basis[..i].contains(name) {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        Ok(Arc::new(Lattice { label: label.into(), basis, gram }))
    }

    /// Convenience constructor from small integer entries.
    pub fn from_rows(label: &str, basis: &[&str], rows: &[&[i64]]) -> Result<Arc<Self>, LatticeError> {
        let gram = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Lattice::new(label, basis.iter().map(|s| s.to_string()).collect(), gram)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn gram_rational(&self) -> Vec<Vec<BigRational>> {
        to_rational(&self.gram)
    }

    /// The bilinear form on raw coordinate vectors.
    pub fn form(&self, a: &[BigInt], b: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += ai * bj * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// `G v` for a coordinate vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.gram.iter().map(|row| row.iter().zip(v).map(|(g, x)| g * x).sum()).collect()
    }

    pub fn classify(&self) -> Classification {
        classify_gram(&self.gram).expect("gram validated at construction")
    }

    pub fn class(self: &Arc<Self>, coords: Vec<BigInt>) -> Result<DivisorClass, LatticeError> {
        if coords.len() != self.rank() {
            return Err(LatticeError::WrongLength {
                lattice: self.label.clone(),
                rank: self.rank(),
                got: coords.len(),
            });
        }
        Ok(DivisorClass { lattice: Arc::clone(self), coords })
    }

    pub fn class_from(self: &Arc<Self>, coords: &[i64]) -> Result<DivisorClass, LatticeError> {
        self.class(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn basis_class(self: &Arc<Self>, index: usize) -> DivisorClass {
        let mut coords = vec![BigInt::zero(); self.rank()];
        coords[index] = BigInt::one();
        DivisorClass { lattice: Arc::clone(self), coords }
    }

    pub fn zero(self: &Arc<Self>) -> DivisorClass {
        DivisorClass { lattice: Arc::clone(self), coords: vec![BigInt::zero(); self.rank()] }
    }

    /// Whether the Gram matrix restricted to the span of `classes` is negative definite.
    pub fn is_negative_definite(&self, classes: &[DivisorClass]) -> Result<Definiteness, LatticeError> {
        for c in classes {
            if !same_lattice(&c.lattice, self) {
                return Err(LatticeError::Mismatch { left: self.label.clone(), right: c.lattice.label.clone() });
            }
        }
        let rows: Vec<Vec<BigInt>> = classes.iter().map(|c| c.coords.clone()).collect();
        if rank_of(&rows) < classes.len() {
            return Ok(Definiteness::Degenerate);
        }
        let restricted: Vec<Vec<BigRational>> =
            rows.iter().map(|a| rows.iter().map(|b| BigRational::from(self.form(a, b))).collect()).collect();
        match negative_definite_or_witness(&restricted) {
            Ok(()) => Ok(Definiteness::NegativeDefinite),
            Err(x) => {
                let witness = clear_denominators(&x);
                let mut combo = vec![BigInt::zero(); self.rank()];
                for (w, row) in witness.iter().zip(&rows) {
                    for (c, r) in combo.iter_mut().zip(row) {
                        *c += w * r;
                    }
                }
                let square = self.form(&combo, &combo);
                Ok(Definiteness::NotNegativeDefinite { witness, square })
            }
        }
    }
}

fn same_lattice(a: &Lattice, b: &Lattice) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// An integral divisor class: a coordinate vector on a fixed lattice.
#[derive(Clone)]
pub struct DivisorClass {
    lattice: Arc<Lattice>,
    coords: Vec<BigInt>,
}

impl DivisorClass {
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    fn check_same(&self, other: &DivisorClass) -> Result<(), LatticeError> {
        if same_lattice(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(LatticeError::Mismatch { left: self.lattice.label.clone(), right: other.lattice.label.clone() })
        }
    }

    /// Intersection number.
    pub fn pair(&self, other: &DivisorClass) -> Result<BigInt, LatticeError> {
        self.check_same(other)?;
        Ok(self.lattice.form(&self.coords, &other.coords))
    }

    pub fn square(&self) -> BigInt {
        self.lattice.form(&self.coords, &self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: &BigInt) -> DivisorClass {
        DivisorClass { lattice: Arc::clone(&self.lattice), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// `self / k` when every coordinate is divisible by `k`.
    pub fn divide_exact(&self, k: &BigInt) -> Option<DivisorClass> {
        if k.is_zero() || self.coords.iter().any(|c| !c.is_multiple_of(k)) {
            return None;
        }
        Some(DivisorClass { lattice: Arc::clone(&self.lattice), coords: self.coords.iter().map(|c| c / k).collect() })
    }

    fn zip_with(&self, other: &DivisorClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DivisorClass({}: {:?})",
            self.lattice.label,
            self.coords.iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    }
}

/// Writes the class as a combination of basis names, e.g. `2H + F - B`.
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coords.iter().zip(&self.lattice.basis) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, false) => {}
                (true, true) => write!(f, "-")?,
                (false, _) => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_lattice(&self.lattice, &other.lattice)
    }
}

impl Eq for DivisorClass {}

impl Hash for DivisorClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates.
impl Ord for DivisorClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// # Panics
    /// Panics when the classes live on different lattices; use
    /// [`DivisorClass::checked_add`] to get an error instead.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    /// # Panics
    /// Panics when the classes live on different lattices.
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(&BigInt::from(self))
    }
}

/// A Q-divisor class.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalClass {
    lattice: Arc<Lattice>,
    coords: Vec<BigRational>,
}

impl RationalClass {
    pub fn new(lattice: &Arc<Lattice>, coords: Vec<BigRational>) -> Result<Self, LatticeError> {
        if coords.len() != lattice.rank() {
            return Err(LatticeError::WrongLength {
                lattice: lattice.label.clone(),
                rank: lattice.rank(),
                got: coords.len(),
            });
        }
        Ok(RationalClass { lattice: Arc::clone(lattice), coords })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn pair(&self, other: &RationalClass) -> Result<BigRational, LatticeError> {
        if !same_lattice(&self.lattice, &other.lattice) {
            return Err(LatticeError::Mismatch {
                left: self.lattice.label.clone(),
                right: other.lattice.label.clone(),
            });
        }
        let mut acc = BigRational::zero();
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in other.coords.iter().enumerate() {
                acc += a * b * BigRational::from(self.lattice.gram[i][j].clone());
            }
        }
        Ok(acc)
    }

    pub fn square(&self) -> BigRational {
        self.pair(self).expect("same lattice")
    }

    /// The integral class when every coordinate is an integer.
    pub fn to_integral(&self) -> Option<DivisorClass> {
        if self.coords.iter().all(|c| c.is_integer()) {
            Some(DivisorClass {
                lattice: Arc::clone(&self.lattice),
                coords: self.coords.iter().map(|c| c.to_integer()).collect(),
            })
        } else {
            None
        }
    }
}

impl From<&DivisorClass> for RationalClass {
    fn from(c: &DivisorClass) -> Self {
        RationalClass {
            lattice: Arc::clone(&c.lattice),
            coords: c.coords.iter().map(|x| BigRational::from(x.clone())).collect(),
        }
    }
}

impl fmt::Debug for RationalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RationalClass({}: {:?})",
            self.lattice.label,
            self.coords.iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b_ii() -> Arc<Lattice> {
        Lattice::from_rows("B-ii", &["H", "F", "B"], &[&[6, 4, 6], &[4, 0, 3], &[6, 3, 2]]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = b_ii().classify();
        assert!(c.is_even);
        assert_eq!(c.signature, Signature { positive: 1, negative: 2, zero: 0 });
        let c = Lattice::from_rows("h", &["x", "y"], &[&[0, 1], &[1, 0]]).unwrap().classify();
        assert!(c.is_even);
        assert_eq!(c.signature, Signature { positive: 1, negative: 1, zero: 0 });
        let odd = Lattice::from_rows("odd", &["x", "y"], &[&[1, 0], &[0, -1]]).unwrap().classify();
        assert!(!odd.is_even);
        assert_eq!(odd.signature, Signature { positive: 1, negative: 1, zero: 0 });
        let degenerate = classify_gram(&[vec![2.into(), 2.into()], vec![2.into(), 2.into()]]).unwrap();
        assert_eq!(degenerate.signature, Signature { positive: 1, negative: 0, zero: 1 });
    }

    #[test]
    fn zero_diagonal_needs_off_diagonal_fold() {
        let g = Lattice::from_rows("u3", &["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(g.classify().signature, Signature { positive: 1, negative: 2, zero: 0 });
        let z = classify_gram(&[vec![0.into(); 3], vec![0.into(); 3], vec![0.into(); 3]]).unwrap();
        assert_eq!(z.signature, Signature { positive: 0, negative: 0, zero: 3 });
    }

    #[test]
    fn asymmetric_is_rejected() {
        let err = Lattice::from_rows("bad", &["x", "y"], &[&[2, 1], &[0, 2]]).unwrap_err();
        assert_eq!(err, LatticeError::NotSymmetric { i: 0, j: 1, upper: 1.into(), lower: 0.into() });
        assert!(matches!(classify_gram(&[]), Err(LatticeError::Empty)));
        assert!(matches!(Lattice::from_rows("bad", &["x"], &[&[2, 1]]), Err(LatticeError::NotSquare { .. })));
    }

    #[test]
    fn pairing_and_display() {
        let l = b_ii();
        let m = 2 * &l.basis_class(0);
        let m = &(&m + &l.basis_class(1)) - &l.basis_class(2);
        assert_eq!(m.to_string(), "2H + F - B");
        assert_eq!(m.square(), 12.into());
        assert_eq!(m.pair(&l.basis_class(0)).unwrap(), 10.into());
        assert_eq!((-&m).to_string(), "-2H - F + B");
        assert_eq!(l.zero().to_string(), "0");
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = b_ii();
        let b = Lattice::from_rows("other", &["x", "y", "z"], &[&[2, 0, 0], &[0, -2, 0], &[0, 0, -2]]).unwrap();
        let err = a.basis_class(0).pair(&b.basis_class(0)).unwrap_err();
        assert_eq!(err, LatticeError::Mismatch { left: "B-ii".into(), right: "other".into() });
    }

    #[test]
    #[should_panic(expected = "different lattices")]
    fn operator_mismatch_panics() {
        let a = b_ii();
        let b = Lattice::from_rows("other", &["x", "y", "z"], &[&[2, 0, 0], &[0, -2, 0], &[0, 0, -2]]).unwrap();
        let _ = &a.basis_class(0) + &b.basis_class(0);
    }

    #[test]
    fn negative_definite_examples() {
        let l = b_ii();
        let c2 = l.class_from(&[1, -1, 0]).unwrap();
        let c4 = l.class_from(&[1, 1, -1]).unwrap();
        assert_eq!(l.is_negative_definite(std::slice::from_ref(&c2)).unwrap(), Definiteness::NegativeDefinite);
        // C2·C4 = 3, so the span of C2, C4 carries [[−2,3],[3,−2]]
        assert!(matches!(
            l.is_negative_definite(&[c2.clone(), c4.clone()]).unwrap(),
            Definiteness::NotNegativeDefinite { .. }
        ));
        let h = l.basis_class(0);
        match l.is_negative_definite(&[c2.clone(), h]).unwrap() {
            Definiteness::NotNegativeDefinite { square, .. } => assert!(!square.is_negative()),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(l.is_negative_definite(&[c2.clone(), 2 * &c2]).unwrap(), Definiteness::Degenerate);
    }

    #[test]
    fn witness_from_later_pivot() {
        // [[−2, 1], [1, −2]] is negative definite; [[−2, 3], [3, −2]] is not and
        // the failure shows only at the second pivot
        let l = Lattice::from_rows("t", &["a", "b"], &[&[-2, 3], &[3, -2]]).unwrap();
        match l.is_negative_definite(&[l.basis_class(0), l.basis_class(1)]).unwrap() {
            Definiteness::NotNegativeDefinite { witness, square } => {
                let v = l.class(witness).unwrap();
                assert_eq!(v.square(), square);
                assert!(!square.is_negative());
            }
            other => panic!("unexpected {other:?}"),
        }
        let l = Lattice::from_rows("t", &["a", "b"], &[&[-2, 1], &[1, -2]]).unwrap();
        assert_eq!(
            l.is_negative_definite(&[l.basis_class(0), l.basis_class(1)]).unwrap(),
            Definiteness::NegativeDefinite
        );
    }

    #[test]
    fn rational_classes() {
        let l = b_ii();
        let half = RationalClass::new(
            &l,
            vec![BigRational::new(1.into(), 2.into()), BigRational::zero(), BigRational::zero()],
        )
        .unwrap();
        assert_eq!(half.square(), BigRational::new(3.into(), 2.into()));
        assert!(half.to_integral().is_none());
        let h = RationalClass::from(&l.basis_class(0));
        assert_eq!(h.to_integral().unwrap(), l.basis_class(0));
    }
}
