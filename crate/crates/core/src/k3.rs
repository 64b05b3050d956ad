//! Line bundle criteria on a K3 surface given by its polarized Picard lattice.
//!
//! Every check reduces to finitely many calls of [`enum_classes`]; each
//! result carries the classes it examined so a report can show them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::enumerate::{enum_classes, Constraint, DegreeWindow, EnumError};
use crate::lattice::{DivisorClass, Lattice, LatticeError, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum K3Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("lattice `{label}` is not a K3 Picard lattice: even = {even}, signature {signature}")]
    NotK3Type { label: String, even: bool, signature: Signature },
    #[error("polarization {class} has square {square}, expected a positive square")]
    NotPositive { class: String, square: BigInt },
    #[error("{op} needs {requirement}; {class} has square {square} and degree {degree}")]
    Precondition { op: &'static str, requirement: &'static str, class: String, square: BigInt, degree: BigInt },
}

/// A K3 surface seen through Pic(S) and an ample class `H`.
#[derive(Debug, Clone)]
pub struct PolarizedK3Model {
    lattice: Arc<Lattice>,
    polarization: DivisorClass,
    irreducible: Vec<DivisorClass>,
}

/// Why a class with no base points passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeBecause {
    /// No `D` with `D² = 0`, `L·D = 1`.
    NoIsotropicDegreeOne,
    /// A nef class of square zero is a multiple of an elliptic pencil.
    EllipticPencil,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasePoints {
    Free(FreeBecause),
    Fixed { witnesses: Vec<DivisorClass> },
}

impl BasePoints {
    pub fn is_free(&self) -> bool {
        matches!(self, BasePoints::Free(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VeryAmpleClause {
    /// `D² = -2`, `L·D = 0`
    ContractedCurve,
    /// `D² = 0`, `L·D ∈ {1, 2}`
    IsotropicLowDegree,
    /// `L = 2D`, `D² = 2`
    HalfOfSquareTwo,
}

impl VeryAmpleClause {
    pub fn tag(self) -> &'static str {
        match self {
            VeryAmpleClause::ContractedCurve => "contracted_curve",
            VeryAmpleClause::IsotropicLowDegree => "isotropic_low_degree",
            VeryAmpleClause::HalfOfSquareTwo => "half_of_square_two",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeryAmpleness {
    pub witnesses: Vec<(VeryAmpleClause, DivisorClass)>,
}

impl VeryAmpleness {
    pub fn is_very_ample(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricEmbedding {
    /// Classes with `C² = 0`, `H·C = 3`.
    pub witnesses: Vec<DivisorClass>,
}

impl QuadricEmbedding {
    pub fn is_smooth_quadric(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nefness {
    /// `(D, L·D)` for every (−2)-class that was tested.
    pub pairings: Vec<(DivisorClass, BigInt)>,
    pub violators: Vec<DivisorClass>,
}

impl Nefness {
    pub fn is_nef(&self) -> bool {
        self.violators.is_empty()
    }
}

/// `M² = constant + Σ linear_i a_i + Σ_{i<=j} quadratic_ij a_i a_j` for
/// `M = L - Σ a_i C_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPartSquare {
    pub constant: BigInt,
    pub linear: Vec<BigInt>,
    /// Upper triangle, row `i` holds the coefficients of `a_i a_j` for `j >= i`.
    pub quadratic: Vec<Vec<BigInt>>,
}

impl FixedPartSquare {
    pub fn evaluate(&self, a: &[BigInt]) -> BigInt {
        let mut v = self.constant.clone();
        for (i, ai) in a.iter().enumerate() {
            v += &self.linear[i] * ai;
            for (j, aj) in a.iter().enumerate().skip(i) {
                v += &self.quadratic[i][j - i] * ai * aj;
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Movability {
    pub curves: Vec<DivisorClass>,
    pub polynomial: FixedPartSquare,
    /// Number of coefficient vectors within the degree bound.
    pub examined: usize,
    pub feasible: Vec<Vec<BigInt>>,
}

impl Movability {
    pub fn is_movable(&self) -> bool {
        self.feasible.len() == 1 && self.feasible[0].iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub part: DivisorClass,
    pub rest: DivisorClass,
    pub h0_part: BigInt,
    pub h0_rest: BigInt,
}

impl Decomposition {
    pub fn product(&self) -> BigInt {
        &self.h0_part * &self.h0_rest
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrillNoether {
    pub h0_polarization: BigInt,
    pub candidates: Vec<Decomposition>,
}

impl BrillNoether {
    pub fn failures(&self) -> impl Iterator<Item = &Decomposition> {
        self.candidates.iter().filter(|d| d.product() >= self.h0_polarization)
    }

    pub fn is_general(&self) -> bool {
        self.failures().next().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeNef {
    /// `(D, Ffib·D)` for every (−2)-class with negative pairing against the restriction.
    pub witnesses: Vec<(DivisorClass, BigInt)>,
    pub degree_bound: BigInt,
    pub restriction_is_rigid: bool,
}

impl RelativeNef {
    pub fn passes(&self) -> bool {
        self.restriction_is_rigid && self.witnesses.iter().all(|(_, f)| f.is_positive())
    }
}

impl PolarizedK3Model {
    pub fn new(lattice: &Arc<Lattice>, polarization: DivisorClass) -> Result<Self, K3Error> {
        lattice.zero().checked_add(&polarization)?;
        let c = lattice.classify();
        if !c.is_k3_type() {
            return Err(K3Error::NotK3Type {
                label: lattice.label().to_string(),
                even: c.is_even,
                signature: c.signature,
            });
        }
        let square = polarization.square();
        if !square.is_positive() {
            return Err(K3Error::NotPositive { class: polarization.to_string(), square });
        }
        Ok(PolarizedK3Model { lattice: Arc::clone(lattice), polarization, irreducible: Vec::new() })
    }

    /// Record classes known to be represented by irreducible curves.
    pub fn with_irreducible(mut self, marks: Vec<DivisorClass>) -> Result<Self, K3Error> {
        for m in &marks {
            self.lattice.zero().checked_add(m)?;
        }
        self.irreducible = marks;
        Ok(self)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn polarization(&self) -> &DivisorClass {
        &self.polarization
    }

    pub fn degree(&self, c: &DivisorClass) -> Result<BigInt, K3Error> {
        Ok(self.polarization.pair(c)?)
    }

    fn precondition(&self, op: &'static str, requirement: &'static str, c: &DivisorClass) -> K3Error {
        K3Error::Precondition {
            op,
            requirement,
            class: c.to_string(),
            square: c.square(),
            degree: self.polarization.pair(c).unwrap_or_default(),
        }
    }

    /// Riemann–Roch count `2 + C²/2`, read as h⁰ for effective classes; 1 for `C = 0`.
    pub fn h0_rr(&self, c: &DivisorClass) -> Result<BigInt, K3Error> {
        let d = self.degree(c)?;
        if c.is_zero() {
            return Ok(BigInt::one());
        }
        let sq = c.square();
        if sq < BigInt::from(-2) || sq.is_odd() || !d.is_positive() {
            return Err(self.precondition("h0_rr", "even square >= -2 and positive degree", c));
        }
        Ok(BigInt::from(2) + sq / 2)
    }

    /// Riemann–Roch effectivity: `C = 0`, or `C² >= -2` and `H·C > 0`.
    pub fn effective_candidate(&self, c: &DivisorClass) -> bool {
        if c.is_zero() {
            return true;
        }
        match self.polarization.pair(c) {
            Ok(d) => c.square() >= BigInt::from(-2) && d.is_positive(),
            Err(_) => false,
        }
    }

    fn window(&self, f: &DivisorClass, min: impl Into<BigInt>, max: impl Into<BigInt>) -> DegreeWindow {
        DegreeWindow::new(f.clone(), min, max)
    }

    /// Classes of square `square` and `H`-degree in `[min, max]`.
    pub fn classes_of_degree(
        &self,
        square: impl Into<BigInt>,
        min: impl Into<BigInt>,
        max: impl Into<BigInt>,
    ) -> Result<Vec<DivisorClass>, K3Error> {
        let w = self.window(&self.polarization, min, max);
        Ok(enum_classes(&self.lattice, &square.into(), &[], Some(&w))?)
    }

    /// (−2)-classes with `0 < H·D <= max_degree`.
    pub fn minus_two_up_to(&self, max_degree: impl Into<BigInt>) -> Result<Vec<DivisorClass>, K3Error> {
        self.classes_of_degree(-2, 1, max_degree)
    }

    /// (−2)-classes orthogonal to `H`; they come in pairs `±D`.
    pub fn minus_two_of_degree_zero(&self) -> Result<Vec<DivisorClass>, K3Error> {
        let c = Constraint::new(self.polarization.clone(), 0);
        Ok(enum_classes(&self.lattice, &BigInt::from(-2), &[c], None)?)
    }

    /// Base point freeness of a nef class `L`.
    pub fn bpf_check(&self, l: &DivisorClass) -> Result<BasePoints, K3Error> {
        let sq = l.square();
        if sq.is_negative() {
            return Err(self.precondition("bpf_check", "a nef class of square >= 0", l));
        }
        if sq.is_zero() {
            // the Hodge slice {D² = 0, L·D = 1} is not compact here
            return Ok(BasePoints::Free(FreeBecause::EllipticPencil));
        }
        let found = enum_classes(&self.lattice, &BigInt::zero(), &[Constraint::new(l.clone(), 1)], None)?;
        Ok(if found.is_empty() {
            BasePoints::Free(FreeBecause::NoIsotropicDegreeOne)
        } else {
            BasePoints::Fixed { witnesses: found }
        })
    }

    pub fn very_ample_check(&self, l: &DivisorClass) -> Result<VeryAmpleness, K3Error> {
        self.lattice.zero().checked_add(l)?;
        if l.square() < BigInt::from(4) {
            return Err(self.precondition("very_ample_check", "square >= 4", l));
        }
        let mut witnesses = Vec::new();
        for d in enum_classes(&self.lattice, &BigInt::from(-2), &[Constraint::new(l.clone(), 0)], None)? {
            witnesses.push((VeryAmpleClause::ContractedCurve, d));
        }
        let w = self.window(l, 1, 2);
        for d in enum_classes(&self.lattice, &BigInt::zero(), &[], Some(&w))? {
            witnesses.push((VeryAmpleClause::IsotropicLowDegree, d));
        }
        if let Some(half) = l.divide_exact(&BigInt::from(2)) {
            if half.square() == BigInt::from(2) {
                witnesses.push((VeryAmpleClause::HalfOfSquareTwo, half));
            }
        }
        Ok(VeryAmpleness { witnesses })
    }

    /// Sufficient condition for the quadric through a genus 4 canonical
    /// curve section to be smooth: no `C` with `C² = 0`, `H·C = 3`.
    pub fn quadric_embedding_check(&self) -> Result<QuadricEmbedding, K3Error> {
        if self.polarization.square() != BigInt::from(6) {
            return Err(self.precondition("quadric_embedding_check", "H² = 6", &self.polarization));
        }
        Ok(QuadricEmbedding { witnesses: self.classes_of_degree(0, 3, 3)? })
    }

    pub fn nef_check(&self, l: &DivisorClass) -> Result<Nefness, K3Error> {
        if !self.effective_candidate(l) || l.square().is_negative() {
            return Err(self.precondition("nef_check", "an effective candidate of square >= 0", l));
        }
        let d = self.degree(l)?;
        let mut pairings = Vec::new();
        let mut violators = Vec::new();
        for c in self.minus_two_up_to(d)? {
            let v = l.pair(&c)?;
            if v.is_negative() {
                violators.push(c.clone());
            }
            pairings.push((c, v));
        }
        // for H·D = 0 only one of ±D is effective, so require L·D = 0
        for c in self.minus_two_of_degree_zero()? {
            let v = l.pair(&c)?;
            if v.is_negative() {
                violators.push(c.clone());
            }
            pairings.push((c, v));
        }
        Ok(Nefness { pairings, violators })
    }

    /// Expansion of `(L - Σ a_i C_i)²` in the coefficients `a`.
    pub fn fixed_part_square(&self, l: &DivisorClass, curves: &[DivisorClass]) -> Result<FixedPartSquare, K3Error> {
        let mut linear = Vec::with_capacity(curves.len());
        let mut quadratic = Vec::with_capacity(curves.len());
        for (i, ci) in curves.iter().enumerate() {
            linear.push(-BigInt::from(2) * l.pair(ci)?);
            let mut row = Vec::with_capacity(curves.len() - i);
            for (j, cj) in curves.iter().enumerate().skip(i) {
                let p = ci.pair(cj)?;
                row.push(if i == j { p } else { BigInt::from(2) * p });
            }
            quadratic.push(row);
        }
        Ok(FixedPartSquare { constant: l.square(), linear, quadratic })
    }

    /// Search for a nonzero fixed part `Σ a_i C_i` of `|L|` among (−2)-curves
    /// of degree below `H·L`.
    pub fn movable_check(&self, l: &DivisorClass) -> Result<Movability, K3Error> {
        if !self.effective_candidate(l) || l.square().is_negative() {
            return Err(self.precondition("movable_check", "an effective candidate of square >= 0", l));
        }
        let budget: BigInt = self.degree(l)? - 1;
        let curves = self.minus_two_up_to(budget.clone())?;
        let polynomial = self.fixed_part_square(l, &curves)?;
        let degrees: Vec<BigInt> = curves.iter().map(|c| self.polarization.pair(c)).collect::<Result<_, _>>()?;

        let mut feasible = Vec::new();
        let mut examined = 0usize;
        let mut a = vec![BigInt::zero(); curves.len()];
        self.walk_fixed_parts(l, &curves, &degrees, 0, &budget, &mut a, &mut examined, &mut feasible)?;
        feasible.sort();
        Ok(Movability { curves, polynomial, examined, feasible })
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_fixed_parts(
        &self,
        l: &DivisorClass,
        curves: &[DivisorClass],
        degrees: &[BigInt],
        index: usize,
        budget: &BigInt,
        a: &mut [BigInt],
        examined: &mut usize,
        feasible: &mut Vec<Vec<BigInt>>,
    ) -> Result<(), K3Error> {
        if index == curves.len() {
            *examined += 1;
            let mut m = l.clone();
            for (ai, c) in a.iter().zip(curves) {
                m = m.checked_sub(&c.scale(ai))?;
            }
            let ok = !m.square().is_negative()
                && self.degree(&m)?.is_positive()
                && !m.pair(l)?.is_negative()
                && curves.iter().all(|c| !m.pair(c).map(|v| v.is_negative()).unwrap_or(true));
            if ok {
                feasible.push(a.to_vec());
            }
            return Ok(());
        }
        let mut k = BigInt::zero();
        while &k * &degrees[index] <= *budget {
            a[index] = k.clone();
            let rest = budget - &k * &degrees[index];
            self.walk_fixed_parts(l, curves, degrees, index + 1, &rest, a, examined, feasible)?;
            k += 1;
        }
        a[index] = BigInt::zero();
        Ok(())
    }

    /// Every splitting `H = L + N` into effective candidates, with the
    /// Riemann–Roch product `h⁰(L) h⁰(N)`.
    pub fn bn_general_check(&self) -> Result<BrillNoether, K3Error> {
        let h = &self.polarization;
        let h2 = h.square();
        let h0_polarization = self.h0_rr(h)?;
        let marks: Vec<&DivisorClass> = self.irreducible.iter().filter(|j| !j.square().is_negative()).collect();
        let mut candidates = Vec::new();
        let mut d = BigInt::one();
        while d < h2 {
            // Hodge index: L² H² <= (H·L)²
            let max_sq = (&d * &d).div_floor(&h2);
            let mut s = BigInt::from(-2);
            while s <= max_sq {
                let w = self.window(h, d.clone(), d.clone());
                for part in enum_classes(&self.lattice, &s, &[], Some(&w))? {
                    let rest = h.checked_sub(&part)?;
                    if rest.is_zero() || !self.effective_candidate(&rest) {
                        continue;
                    }
                    let mut ok = true;
                    for j in &marks {
                        if part.pair(j)?.is_negative() || rest.pair(j)?.is_negative() {
                            ok = false;
                        }
                    }
                    if ok {
                        let h0_part = self.h0_rr(&part)?;
                        let h0_rest = self.h0_rr(&rest)?;
                        candidates.push(Decomposition { part, rest, h0_part, h0_rest });
                    }
                }
                s += 2;
            }
            d += 1;
        }
        candidates.sort_by(|a, b| a.part.cmp(&b.part));
        Ok(BrillNoether { h0_polarization, candidates })
    }

    /// Certificate that a relatively anticanonical restriction `restriction`
    /// is nef on curves contracted by the fibration with fiber class `fiber`.
    pub fn relative_nef_check(&self, restriction: &DivisorClass, fiber: &DivisorClass) -> Result<RelativeNef, K3Error> {
        self.lattice.zero().checked_add(fiber)?;
        let sq = restriction.square();
        let degree_bound: BigInt = self.degree(restriction)? + sq.abs() + 2;
        let mut witnesses = Vec::new();
        let mut pool =
            if degree_bound.is_positive() { self.minus_two_up_to(degree_bound.clone())? } else { Vec::new() };
        pool.extend(self.minus_two_of_degree_zero()?);
        for d in pool {
            if restriction.pair(&d)?.is_negative() {
                let f = fiber.pair(&d)?;
                witnesses.push((d, f));
            }
        }
        let restriction_is_rigid = sq != BigInt::from(-2) || self.h0_rr(restriction).is_ok_and(|h| h.is_one());
        Ok(RelativeNef { witnesses, degree_bound, restriction_is_rigid })
    }
}
