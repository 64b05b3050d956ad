//! Picard lattices of the rational and ruled surfaces that appear as
//! exceptional divisors or hyperplane sections: blown-up planes, ruled
//! surfaces over a curve, and products `C × P¹`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::enumerate::{enum_classes, Constraint, EnumError};
use crate::expr::{Combination, ExprError};
use crate::k3::PolarizedK3Model;
use crate::lattice::{DivisorClass, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("a blown-up plane with {0} points is not del Pezzo (at most 8 points)")]
    TooManyPoints(usize),
    #[error("nefness via lines needs between 2 and 8 blown-up points, got {0}")]
    LinesDoNotGenerate(usize),
    #[error("{class}: C² + K·C = {value} is odd")]
    OddAdjunction { class: String, value: BigInt },
    #[error("{class} has negative arithmetic genus {genus}")]
    NegativeGenus { class: String, genus: BigInt },
    #[error("`{0}` is not in the restriction table")]
    UnknownRestriction(String),
}

/// A smooth projective surface seen through its Picard lattice.
pub trait Surface {
    fn lattice(&self) -> &Arc<Lattice>;
    fn canonical(&self) -> DivisorClass;
}

/// Arithmetic genus `1 + (C² + K·C)/2`.
pub fn adjunction_genus<S: Surface + ?Sized>(surface: &S, curve: &DivisorClass) -> Result<BigInt, SurfaceError> {
    let k = surface.canonical();
    let value = curve.square() + curve.pair(&k)?;
    if value.is_odd() {
        return Err(SurfaceError::OddAdjunction { class: curve.to_string(), value });
    }
    let genus: BigInt = BigInt::one() + value / 2;
    if genus.is_negative() {
        return Err(SurfaceError::NegativeGenus { class: curve.to_string(), genus });
    }
    Ok(genus)
}

impl Surface for PolarizedK3Model {
    fn lattice(&self) -> &Arc<Lattice> {
        PolarizedK3Model::lattice(self)
    }

    fn canonical(&self) -> DivisorClass {
        PolarizedK3Model::lattice(self).zero()
    }
}

/// P² blown up in `n` points: basis `h, e1..en`, `K = -3h + Σ e_i`.
#[derive(Debug, Clone)]
pub struct DelPezzoLattice {
    points: usize,
    lattice: Arc<Lattice>,
}

impl DelPezzoLattice {
    pub fn new(points: usize) -> Result<Self, SurfaceError> {
        if points > 8 {
            return Err(SurfaceError::TooManyPoints(points));
        }
        let mut basis = vec!["h".to_string()];
        basis.extend((1..=points).map(|i| format!("e{i}")));
        let gram = (0..=points)
            .map(|i| {
                (0..=points)
                    .map(|j| match (i, j) {
                        (0, 0) => BigInt::one(),
                        _ if i == j => BigInt::from(-1),
                        _ => BigInt::from(0),
                    })
                    .collect()
            })
            .collect();
        let lattice = Lattice::new(format!("dP({points})"), basis, gram)?;
        Ok(DelPezzoLattice { points, lattice })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// The (−1)-classes: `ℓ² = -1`, `K·ℓ = -1`.
    pub fn minus_one_classes(&self) -> Result<Vec<DivisorClass>, SurfaceError> {
        let k = self.canonical();
        Ok(enum_classes(&self.lattice, &BigInt::from(-1), &[Constraint::new(k, -1)], None)?)
    }

    /// Nef test against all lines, assuming the points are in general position.
    pub fn nef_check(&self, l: &DivisorClass) -> Result<Vec<DivisorClass>, SurfaceError> {
        if !(2..=8).contains(&self.points) {
            return Err(SurfaceError::LinesDoNotGenerate(self.points));
        }
        let mut witnesses = Vec::new();
        for line in self.minus_one_classes()? {
            if l.pair(&line)?.is_negative() {
                witnesses.push(line);
            }
        }
        Ok(witnesses)
    }
}

impl Surface for DelPezzoLattice {
    fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    fn canonical(&self) -> DivisorClass {
        let mut coords = vec![BigInt::one(); self.points + 1];
        coords[0] = BigInt::from(-3);
        self.lattice.class(coords).expect("rank matches")
    }
}

/// `P(E)` for a rank 2 bundle of degree `e` on a curve of genus `g`:
/// basis `h` (tautological), `f` (fiber), with `h² = e`, `h·f = 1`, `f² = 0`.
#[derive(Debug, Clone)]
pub struct RuledSurfaceModel {
    base_genus: i64,
    degree: i64,
    lattice: Arc<Lattice>,
    restrictions: BTreeMap<String, DivisorClass>,
}

impl RuledSurfaceModel {
    pub fn new(base_genus: i64, degree: i64) -> Result<Self, SurfaceError> {
        let lattice = Lattice::from_rows("ruled", &["h", "f"], &[&[degree, 1], &[1, 0]])?;
        Ok(RuledSurfaceModel { base_genus, degree, lattice, restrictions: BTreeMap::new() })
    }

    /// Record the restriction of an ambient divisor to this surface.
    pub fn with_restriction(mut self, name: impl Into<String>, class: DivisorClass) -> Result<Self, SurfaceError> {
        self.lattice.zero().checked_add(&class)?;
        self.restrictions.insert(name.into(), class);
        Ok(self)
    }

    pub fn base_genus(&self) -> i64 {
        self.base_genus
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn fiber(&self) -> DivisorClass {
        self.lattice.basis_class(1)
    }

    pub fn tautological(&self) -> DivisorClass {
        self.lattice.basis_class(0)
    }

    pub fn restrictions(&self) -> &BTreeMap<String, DivisorClass> {
        &self.restrictions
    }

    /// Restriction of an integer combination of ambient divisors.
    pub fn restricted_class(&self, expression: &Combination) -> Result<DivisorClass, SurfaceError> {
        expression.evaluate(
            self.lattice.zero(),
            |n| self.restrictions.get(n).cloned().ok_or_else(|| SurfaceError::UnknownRestriction(n.to_string())),
            |acc, k, v| Ok(acc.checked_add(&v.scale(k))?),
        )
    }
}

impl Surface for RuledSurfaceModel {
    fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    fn canonical(&self) -> DivisorClass {
        self.lattice.class_from(&[-2, self.degree + 2 * self.base_genus - 2]).expect("rank 2")
    }
}

/// `C × P¹` with basis `a = [C × pt]`, `b = [pt × P¹]`.
#[derive(Debug, Clone)]
pub struct ProductSurfaceModel {
    base_genus: i64,
    lattice: Arc<Lattice>,
}

impl ProductSurfaceModel {
    pub fn new(base_genus: i64) -> Result<Self, SurfaceError> {
        let lattice = Lattice::from_rows("product", &["a", "b"], &[&[0, 1], &[1, 0]])?;
        Ok(ProductSurfaceModel { base_genus, lattice })
    }

    pub fn base_genus(&self) -> i64 {
        self.base_genus
    }
}

impl Surface for ProductSurfaceModel {
    fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    fn canonical(&self) -> DivisorClass {
        self.lattice.class_from(&[-2, 2 * self.base_genus - 2]).expect("rank 2")
    }
}
