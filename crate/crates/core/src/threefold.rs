//! Threefold numerics: curve blowups, the two-ray game on a del Pezzo
//! fibration of degree 5 or 6, and h^{1,2} bookkeeping.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{binomial, exact_sqrt, rational_sqrt, solve_rational, NonSquareWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreefoldError {
    #[error("fibration degree must be 5 or 6, got {0}")]
    UnsupportedDegree(i64),
    #[error("a degree 5 fibration lives on P²×P¹, so (-K_W)³ must be 54, got {0}")]
    AmbientNotP2xP1(BigInt),
    #[error("curve genus must be non-negative, got {0}")]
    NegativeGenus(BigInt),
    #[error("unknown base threefold `{0}` (known: P3, Q3, P2xP1, B(4), B(5), V(9), V(10))")]
    UnknownBase(String),
    #[error("h^{{1,2}} becomes negative ({value}) at step {step}")]
    NegativeHodge { step: usize, value: BigInt },
    #[error("expected exactly one admissible fiber triple, found {0}")]
    AdmissibleTriple(usize),
    #[error("the linear system for the flopped side is singular")]
    SingularSystem,
    #[error("bidegree count needs a, b >= 1, got ({a}, {b})")]
    BadProjectiveDimensions { a: u64, b: u64 },
    #[error("quadric pencil model needs 4x4 matrices with entries of degree >= 1, got size {size}, degree {degree}")]
    BadPencil { size: u64, degree: u64 },
    #[error("third Betti number {0} is odd or negative")]
    BadBetti(BigInt),
}

/// Intersection numbers on the blowup `Z → V` along a smooth curve `B`:
/// `(-K_Z)³`, `(-K_Z)²·E`, `(-K_Z)·E²` and `E³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupInvariants {
    pub kx3: BigInt,
    pub k2e: BigInt,
    pub ke2: BigInt,
    pub e3: BigInt,
}

pub fn blowup_curve_invariants(kv3: &BigInt, kv_dot_b: &BigInt, genus: &BigInt) -> BlowupInvariants {
    let two = BigInt::from(2);
    BlowupInvariants {
        kx3: kv3 - &two * kv_dot_b + &two * genus - &two,
        k2e: kv_dot_b + &two - &two * genus,
        ke2: &two * genus - &two,
        e3: -kv_dot_b - &two * genus + &two,
    }
}

/// Degree of the del Pezzo fibration, 5 or 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibrationDegree(u8);

impl FibrationDegree {
    pub fn new(d: i64) -> Result<Self, ThreefoldError> {
        match d {
            5 | 6 => Ok(FibrationDegree(d as u8)),
            other => Err(ThreefoldError::UnsupportedDegree(other)),
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for FibrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineInput {
    pub kw3: BigInt,
    pub kw_dot_b: BigInt,
    pub g_b: BigInt,
    pub degree: FibrationDegree,
}

impl PipelineInput {
    pub fn new(
        kw3: impl Into<BigInt>,
        kw_dot_b: impl Into<BigInt>,
        g_b: impl Into<BigInt>,
        degree: i64,
    ) -> Result<Self, ThreefoldError> {
        let input = PipelineInput {
            kw3: kw3.into(),
            kw_dot_b: kw_dot_b.into(),
            g_b: g_b.into(),
            degree: FibrationDegree::new(degree)?,
        };
        if input.g_b.is_negative() {
            return Err(ThreefoldError::NegativeGenus(input.g_b));
        }
        if input.degree.get() == 5 && input.kw3 != BigInt::from(54) {
            return Err(ThreefoldError::AmbientNotP2xP1(input.kw3));
        }
        Ok(input)
    }

    pub fn blowup(&self) -> BlowupInvariants {
        blowup_curve_invariants(&self.kw3, &self.kw_dot_b, &self.g_b)
    }
}

/// `(-K_X)³`, `-K_X·C` and the fiber coefficient `z` of the flopped side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameResult {
    pub kx3: BigRational,
    pub kx_dot_c: BigRational,
    pub z: BigRational,
}

fn q(n: BigInt, d: i64) -> BigRational {
    BigRational::new(n, BigInt::from(d))
}

/// Closed forms for the flopped side.
pub fn dpd_transform(input: &PipelineInput) -> GameResult {
    let (kw3, kwb, g) = (&input.kw3, &input.kw_dot_b, &input.g_b);
    match input.degree.get() {
        6 => GameResult {
            kx3: q(3 * kw3 - 16 * g - 32, 4),
            kx_dot_c: q(8 * kwb - 24 * g - kw3 - 32, 8),
            z: q(4 * kwb - 8 * g - kw3, 8),
        },
        _ => GameResult { kx3: q(22 - 2 * g, 1), kx_dot_c: q(kwb - 2 * g - 16, 1), z: q(2 * kwb, 3) - q(g + 12, 1) },
    }
}

/// The degree 5 closed forms before specialising `(-K_W)³ = 54`.
pub fn dp5_general_forms(kw3: &BigInt, kw_dot_b: &BigInt, g_b: &BigInt) -> GameResult {
    GameResult {
        kx3: q(5 * kw3 - 18 * g_b - 72, 9),
        kx_dot_c: q(9 * kw_dot_b - 18 * g_b - 2 * kw3 - 36, 9),
        z: q(6 * kw_dot_b - 9 * g_b - 2 * kw3, 9),
    }
}

/// Re-derive the flopped side from the blowup invariants and the admissible
/// fiber triple by solving the three intersection equations directly.
pub fn dpd_transform_by_system(input: &PipelineInput) -> Result<GameResult, ThreefoldError> {
    let game = FiberGame::new(input.degree);
    let t = game.admissible_triple()?;
    let inv = input.blowup();
    let r = |n: &BigInt| BigRational::from(n.clone());
    let (p3, q2, r1) = (r(&inv.kx3), r(&inv.k2e), r(&inv.ke2));
    let k = BigRational::from(BigInt::from(game.fiber_degree));
    let pts = BigRational::from(BigInt::from(game.points));
    let one = BigRational::from(BigInt::from(1));
    let two = BigRational::from(BigInt::from(2));
    let zero = BigRational::zero();
    // unknowns (X3, XC, z); D = x(-K_Z) + yE + zF on Z, C ⊂ X a smooth rational curve
    //   X3 - 2 XC - 2           = (-K_Z)³
    //   XC + 2                  = x P + y Q + k z
    //   -2 = x² P + 2xy Q + y² R + 2 x k z + 2 y p z
    let m = vec![
        vec![one.clone(), -&two, zero.clone()],
        vec![zero.clone(), one.clone(), -&k],
        vec![zero.clone(), zero, &two * &t.x * &k + &two * &t.y * &pts],
    ];
    let rhs = vec![
        &p3 + &two,
        &t.x * &p3 + &t.y * &q2 - &two,
        -&two - &t.x * &t.x * &p3 - &two * &t.x * &t.y * &q2 - &t.y * &t.y * &r1,
    ];
    let sol = solve_rational(&m, &rhs).ok_or(ThreefoldError::SingularSystem)?;
    Ok(GameResult { kx3: sol[0].clone(), kx_dot_c: sol[1].clone(), z: sol[2].clone() })
}

/// `(m, x, y)`: a divisor `D` restricting to `x(-K_F) + yE|_F` on the general
/// fiber `F`, with `m = (-K_F)·D|_F`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiberTriple {
    pub m: i64,
    pub x: BigRational,
    pub y: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSearch {
    pub m: i64,
    /// Discriminant of the quadratic in `x`, with its square factor removed.
    pub discriminant: BigInt,
    pub non_square: Option<NonSquareWitness>,
    pub solutions: Vec<FiberTriple>,
    /// Rational solutions dropped by the integrality condition on `E|_F · D|_F`.
    pub non_integral: Vec<FiberTriple>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleTriples {
    pub degree: FibrationDegree,
    pub searches: Vec<TripleSearch>,
    pub triples: Vec<FiberTriple>,
}

/// Exclusion of a divisorial contraction: `x² = 2np / (k(p+k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorialElimination {
    pub n: i64,
    /// `[a, b, c]` of `a x² + b x + c = 0` from the intersection equations.
    pub derived: [BigInt; 3],
    /// `x = ±√radicand / denominator`
    pub radicand: BigInt,
    pub denominator: BigInt,
    pub normal_form_matches: bool,
    pub x_squared: BigRational,
    pub x_is_rational: bool,
    pub witness: Option<NonSquareWitness>,
}

/// Exclusion of a contraction onto a surface: a quadratic in `x` with
/// irrational roots `(center ± √radicand) / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceElimination {
    pub derived: [BigInt; 3],
    pub center: BigInt,
    pub radicand: BigInt,
    pub denominator: BigInt,
    pub normal_form_matches: bool,
    pub discriminant: BigInt,
    pub roots_are_rational: bool,
    pub witness: Option<NonSquareWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eliminations {
    pub degree: FibrationDegree,
    pub divisorial: Vec<DivisorialElimination>,
    pub surface: SurfaceElimination,
}

impl Eliminations {
    /// Every alternative contraction is excluded and the normal forms agree
    /// with the derived equations.
    pub fn all_excluded(&self) -> bool {
        self.divisorial.iter().all(|d| {
            d.normal_form_matches && !d.x_is_rational && d.witness.as_ref().is_some_and(NonSquareWitness::holds)
        }) && self.surface.normal_form_matches
            && !self.surface.roots_are_rational
            && self.surface.witness.as_ref().is_some_and(NonSquareWitness::holds)
    }
}

/// The general fiber data of the game: `(-K_F)² = k` on the fiber of `Z`,
/// and `E` meets it in `p` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberGame {
    degree: FibrationDegree,
    fiber_degree: i64,
    points: i64,
}

fn proportional(a: &[BigInt; 3], b: &[BigInt; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i])) && a.iter().any(|x| !x.is_zero())
}

/// Remove the largest square factor.
fn squarefree_part(n: &BigInt) -> BigInt {
    let mut rest = n.abs();
    let mut square = BigInt::from(1);
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        let ff = &f * &f;
        while (&rest % &ff).is_zero() {
            rest /= &ff;
            square *= &ff;
        }
        f += 1;
    }
    n / square
}

impl FiberGame {
    pub fn new(degree: FibrationDegree) -> Self {
        let (fiber_degree, points) = match degree.get() {
            6 => (5, 3),
            _ => (4, 5),
        };
        FiberGame { degree, fiber_degree, points }
    }

    pub fn fiber_degree(&self) -> i64 {
        self.fiber_degree
    }

    pub fn points(&self) -> i64 {
        self.points
    }

    /// `(-K_{F_X})² = k + m <= 9`.
    pub fn max_m(&self) -> i64 {
        9 - self.fiber_degree
    }

    /// Solutions of `kx + py = m`, `kx² + 2pxy - py² = -m` with `p(x - y) ∈ Z`.
    pub fn feasible_triples(&self) -> FeasibleTriples {
        let (k, p) = (BigInt::from(self.fiber_degree), BigInt::from(self.points));
        let mut searches = Vec::new();
        let mut triples = Vec::new();
        for m in 0..=self.max_m() {
            let mb = BigInt::from(m);
            // eliminating y: k(p+k) x² - 2m(p+k) x + m(m-p) = 0
            let a = &k * (&p + &k);
            let b = -BigInt::from(2) * &mb * (&p + &k);
            let c = &mb * (&mb - &p);
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            let reduced = squarefree_part(&(BigInt::from(4) * &p * (&p + &k))) * &mb * (&mb + &k);
            let mut search = TripleSearch {
                m,
                discriminant: reduced,
                non_square: None,
                solutions: Vec::new(),
                non_integral: Vec::new(),
            };
            match exact_sqrt(&disc) {
                Err(w) => search.non_square = Some(w),
                Ok(root) => {
                    let mut xs = vec![
                        BigRational::new(-&b + &root, BigInt::from(2) * &a),
                        BigRational::new(-&b - &root, BigInt::from(2) * &a),
                    ];
                    xs.dedup();
                    for x in xs {
                        let y = (BigRational::from(mb.clone()) - BigRational::from(k.clone()) * &x)
                            / BigRational::from(p.clone());
                        let t = FiberTriple { m, x: x.clone(), y: y.clone() };
                        if (BigRational::from(p.clone()) * (&x - &y)).is_integer() {
                            search.solutions.push(t.clone());
                            triples.push(t);
                        } else {
                            search.non_integral.push(t);
                        }
                    }
                }
            }
            searches.push(search);
        }
        triples.sort();
        triples.dedup();
        FeasibleTriples { degree: self.degree, searches, triples }
    }

    /// The unique triple describing the strict transform of the flopping
    /// divisor: drop `(0,0,0)` (a multiple of the fiber) and `x = 0, y = 1`
    /// (the exceptional divisor itself).
    pub fn admissible_triple(&self) -> Result<FiberTriple, ThreefoldError> {
        let zero = BigRational::zero();
        let one = BigRational::from(BigInt::from(1));
        let left: Vec<FiberTriple> =
            self.feasible_triples().triples.into_iter().filter(|t| t.m != 0 && !(t.x == zero && t.y == one)).collect();
        match left.as_slice() {
            [t] => Ok(t.clone()),
            _ => Err(ThreefoldError::AdmissibleTriple(left.len())),
        }
    }

    /// Exclude the other two contraction types on the far side of the game.
    pub fn eliminations(&self) -> Eliminations {
        let (k, p) = (BigInt::from(self.fiber_degree), BigInt::from(self.points));
        // irrational normal forms x = ±√(r n)/s and x = (a ± √r)/b
        let (rad_per_n, rad_den, center, surf_rad, surf_den) = match self.degree.get() {
            6 => (15, 10, 4, 6, 10),
            _ => (90, 18, 3, 5, 6),
        };
        let divisorial = (1..=2)
            .map(|n| {
                let nb = BigInt::from(n);
                let derived = [&k * (&p + &k), BigInt::zero(), -BigInt::from(2) * &nb * &p];
                let radicand = BigInt::from(rad_per_n) * &nb;
                let denominator = BigInt::from(rad_den);
                let normal = [&denominator * &denominator, BigInt::zero(), -radicand.clone()];
                let x_squared = BigRational::new(BigInt::from(2) * &nb * &p, &k * (&p + &k));
                DivisorialElimination {
                    n,
                    normal_form_matches: proportional(&derived, &normal),
                    x_is_rational: rational_sqrt(&x_squared).is_some(),
                    witness: exact_sqrt(&radicand).err(),
                    derived,
                    radicand,
                    denominator,
                    x_squared,
                }
            })
            .collect();
        let derived = [&k * (&p + &k), -BigInt::from(4) * (&p + &k), BigInt::from(4)];
        let (a, r, b) = (BigInt::from(center), BigInt::from(surf_rad), BigInt::from(surf_den));
        let normal = [&b * &b, -BigInt::from(2) * &a * &b, &a * &a - &r];
        let discriminant = &derived[1] * &derived[1] - BigInt::from(4) * &derived[0] * &derived[2];
        let surface = SurfaceElimination {
            normal_form_matches: proportional(&derived, &normal),
            roots_are_rational: exact_sqrt(&discriminant).is_ok(),
            witness: exact_sqrt(&r).err(),
            derived,
            center: a,
            radicand: r,
            denominator: b,
            discriminant,
        };
        Eliminations { degree: self.degree, divisorial, surface }
    }
}

/// Fano threefolds whose h^{1,2} enters the chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FanoBase {
    ProjectiveSpace,
    Quadric,
    PlaneTimesLine,
    DelPezzo4,
    DelPezzo5,
    Mukai9,
    Mukai10,
}

impl FanoBase {
    pub const ALL: [FanoBase; 7] = [
        FanoBase::ProjectiveSpace,
        FanoBase::Quadric,
        FanoBase::PlaneTimesLine,
        FanoBase::DelPezzo4,
        FanoBase::DelPezzo5,
        FanoBase::Mukai9,
        FanoBase::Mukai10,
    ];

    pub fn h12(self) -> u64 {
        match self {
            FanoBase::ProjectiveSpace | FanoBase::Quadric | FanoBase::PlaneTimesLine | FanoBase::DelPezzo5 => 0,
            FanoBase::DelPezzo4 | FanoBase::Mukai10 => 2,
            FanoBase::Mukai9 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FanoBase::ProjectiveSpace => "P3",
            FanoBase::Quadric => "Q3",
            FanoBase::PlaneTimesLine => "P2xP1",
            FanoBase::DelPezzo4 => "B(4)",
            FanoBase::DelPezzo5 => "B(5)",
            FanoBase::Mukai9 => "V(9)",
            FanoBase::Mukai10 => "V(10)",
        }
    }
}

impl FromStr for FanoBase {
    type Err = ThreefoldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FanoBase::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| ThreefoldError::UnknownBase(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HodgeBase {
    Named(FanoBase),
    Explicit(u64),
}

impl HodgeBase {
    pub fn value(self) -> u64 {
        match self {
            HodgeBase::Named(b) => b.h12(),
            HodgeBase::Explicit(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HodgeStep {
    Blowup { genus: u64 },
    Flop,
    Blowdown { genus: u64 },
}

impl HodgeStep {
    fn delta(self) -> BigInt {
        match self {
            HodgeStep::Blowup { genus } => BigInt::from(genus),
            HodgeStep::Flop => BigInt::zero(),
            HodgeStep::Blowdown { genus } => -BigInt::from(genus),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeRecord {
    pub base: HodgeBase,
    /// Each step with the running value after it.
    pub steps: Vec<(HodgeStep, BigInt)>,
    pub value: BigInt,
}

/// Curve blowups add the genus, flops preserve h^{1,2}, blowdowns to a curve
/// subtract its genus.
pub fn h12_chain(base: HodgeBase, steps: &[HodgeStep]) -> Result<HodgeRecord, ThreefoldError> {
    let mut value = BigInt::from(base.value());
    let mut record = Vec::with_capacity(steps.len());
    for (i, step) in steps.iter().enumerate() {
        value += step.delta();
        if value.is_negative() {
            return Err(ThreefoldError::NegativeHodge { step: i, value });
        }
        record.push((*step, value.clone()));
    }
    Ok(HodgeRecord { base, steps: record, value })
}

/// `h⁰(Pᵃ × Pᵇ, O(m, n))`.
pub fn h0_bidegree(a: u64, b: u64, m: u64, n: u64) -> Result<BigInt, ThreefoldError> {
    if a == 0 || b == 0 {
        return Err(ThreefoldError::BadProjectiveDimensions { a, b });
    }
    Ok(binomial(m + a, a) * binomial(n + b, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricPencil {
    pub delta: BigInt,
    pub euler: BigInt,
    pub b3: BigInt,
    pub h12: BigInt,
}

/// A pencil of quadric surfaces in P³ given by a symmetric 4×4 matrix with
/// entries of degree `entry_degree` on P¹, all singular members being cones.
pub fn quadric_pencil_h12(matrix_size: u64, entry_degree: u64) -> Result<QuadricPencil, ThreefoldError> {
    if matrix_size != 4 || entry_degree == 0 {
        return Err(ThreefoldError::BadPencil { size: matrix_size, degree: entry_degree });
    }
    const EULER_SMOOTH_QUADRIC: i64 = 4;
    const EULER_QUADRIC_CONE: i64 = 3;
    const EULER_LINE: i64 = 2;
    const EVEN_BETTI_SUM: i64 = 1 + 2 + 2 + 1;
    let delta = BigInt::from(matrix_size * entry_degree);
    let euler = BigInt::from(EULER_SMOOTH_QUADRIC * EULER_LINE) + &delta * (EULER_QUADRIC_CONE - EULER_SMOOTH_QUADRIC);
    let b3 = BigInt::from(EVEN_BETTI_SUM) - &euler;
    if b3.is_negative() || (&b3 % 2u32) != BigInt::zero() {
        return Err(ThreefoldError::BadBetti(b3));
    }
    let h12 = &b3 / 2;
    Ok(QuadricPencil { delta, euler, b3, h12 })
}
