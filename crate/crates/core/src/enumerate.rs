//! Complete enumeration of classes with prescribed square and prescribed
//! intersection numbers.
//!
//! The linear conditions are solved over Z by a column echelon form, which
//! leaves an affine sublattice `v0 + K t`. On it the square is a quadratic in
//! `t` whose quadratic part must be negative definite; the solutions are then
//! the integer points on an ellipsoid, listed by a Fincke–Pohst sweep done in
//! exact rational arithmetic.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{clear_denominators, floor, floor_sqrt_rational, solve_rational};
use crate::lattice::{negative_definite_or_witness, DivisorClass, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("search region is unbounded: direction {direction} has square {square} and satisfies every constraint")]
    Unbounded { direction: DivisorClass, square: BigInt },
}

/// `functional · C = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub functional: DivisorClass,
    pub value: BigInt,
}

impl Constraint {
    pub fn new(functional: DivisorClass, value: impl Into<BigInt>) -> Self {
        Constraint { functional, value: value.into() }
    }
}

/// `min <= functional · C <= max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWindow {
    pub functional: DivisorClass,
    pub min: BigInt,
    pub max: BigInt,
}

impl DegreeWindow {
    pub fn new(functional: DivisorClass, min: impl Into<BigInt>, max: impl Into<BigInt>) -> Self {
        DegreeWindow { functional, min: min.into(), max: max.into() }
    }
}

/// Column echelon form `A U = E` with `U` unimodular.
struct ColumnEchelon {
    echelon: Vec<Vec<BigInt>>,
    transform: Vec<Vec<BigInt>>,
    pivot_of_row: Vec<Option<usize>>,
    rank: usize,
}

fn column_combine(m: &mut [Vec<BigInt>], c: usize, j: usize, coeffs: [&BigInt; 4]) {
    // (col_c, col_j) <- (a col_c + b col_j, e col_c + f col_j)
    let [a, b, e, f] = coeffs;
    for row in m.iter_mut() {
        let x = row[c].clone();
        let y = row[j].clone();
        row[c] = a * &x + b * &y;
        row[j] = e * &x + f * &y;
    }
}

impl ColumnEchelon {
    fn new(rows: Vec<Vec<BigInt>>, n: usize) -> Self {
        let mut echelon = rows;
        let mut transform: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        let mut pivot_of_row = Vec::with_capacity(echelon.len());
        let mut c = 0;
        for r in 0..echelon.len() {
            if c == n {
                pivot_of_row.push(None);
                continue;
            }
            for j in c + 1..n {
                if echelon[r][j].is_zero() {
                    continue;
                }
                let x = echelon[r][c].clone();
                let y = echelon[r][j].clone();
                let eg = x.extended_gcd(&y);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let e = -(&y / &g);
                let f = &x / &g;
                column_combine(&mut echelon, c, j, [&s, &t, &e, &f]);
                column_combine(&mut transform, c, j, [&s, &t, &e, &f]);
            }
            if echelon[r][c].is_zero() {
                pivot_of_row.push(None);
            } else {
                pivot_of_row.push(Some(c));
                c += 1;
            }
        }
        ColumnEchelon { echelon, transform, pivot_of_row, rank: c }
    }

    /// One integral solution of `A x = rhs`, if any.
    fn solve(&self, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.transform.len();
        let mut y = vec![BigInt::zero(); n];
        for (r, row) in self.echelon.iter().enumerate() {
            let known: BigInt = match self.pivot_of_row[r] {
                Some(p) => row[..p].iter().zip(&y[..p]).map(|(a, b)| a * b).sum(),
                None => row.iter().zip(&y).map(|(a, b)| a * b).sum(),
            };
            let rest = &rhs[r] - known;
            match self.pivot_of_row[r] {
                Some(p) => {
                    if !rest.is_multiple_of(&row[p]) {
                        return None;
                    }
                    y[p] = rest / &row[p];
                }
                None if !rest.is_zero() => return None,
                None => {}
            }
        }
        Some(self.transform.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum()).collect())
    }

    /// A basis of the integral kernel, as coordinate vectors.
    fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.transform.len()).map(|c| self.transform.iter().map(|row| row[c].clone()).collect()).collect()
    }
}

/// Upper-triangular data for `(t-c)ᵀ P (t-c) = Σ_i q_ii (t_i - c_i + Σ_{j>i} q_ij (t_j - c_j))²`.
struct Ellipsoid {
    q: Vec<Vec<BigRational>>,
}

impl Ellipsoid {
    /// `p` must be positive definite.
    fn new(p: &[Vec<BigRational>]) -> Self {
        let k = p.len();
        let mut q = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k {
            let mut d = p[i][i].clone();
            for l in 0..i {
                d -= &q[l][l] * &q[l][i] * &q[l][i];
            }
            q[i][i] = d;
            for j in i + 1..k {
                let mut s = p[i][j].clone();
                for l in 0..i {
                    s -= &q[l][l] * &q[l][i] * &q[l][j];
                }
                q[i][j] = s / &q[i][i];
            }
        }
        Ellipsoid { q }
    }

    /// Every integer `t` with `(t-center)ᵀ P (t-center) <= radius`.
    fn points(&self, center: &[BigRational], radius: &BigRational) -> Vec<Vec<BigInt>> {
        let k = self.q.len();
        let mut out = Vec::new();
        let mut t = vec![BigInt::zero(); k];
        if !radius.is_negative() {
            self.descend(k, center, radius, &mut t, &mut out);
        }
        out
    }

    fn descend(
        &self,
        level: usize,
        center: &[BigRational],
        budget: &BigRational,
        t: &mut [BigInt],
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if level == 0 {
            out.push(t.to_vec());
            return;
        }
        let i = level - 1;
        let mut c = center[i].clone();
        for j in i + 1..t.len() {
            c -= &self.q[i][j] * (BigRational::from(t[j].clone()) - &center[j]);
        }
        let span = floor_sqrt_rational(&(budget / &self.q[i][i]));
        let base = floor(&c);
        let mut ti: BigInt = &base - &span - 1;
        let stop = &base + &span + 2;
        while ti <= stop {
            let offset = BigRational::from(ti.clone()) - &c;
            let used = &self.q[i][i] * &offset * &offset;
            if &used <= budget {
                t[i] = ti.clone();
                let rest = budget - used;
                self.descend(i, center, &rest, t, out);
            }
            ti += 1;
        }
    }
}

fn functional_row(f: &DivisorClass) -> Vec<BigInt> {
    f.lattice().apply(f.coords())
}

/// All classes `C` with `C² = square`, `f · C = v` for each constraint, and
/// the window bound when one is given. Sorted lexicographically.
///
/// Fails with [`EnumError::Unbounded`] when the square is not negative
/// definite on the common kernel of the linear conditions, so that the
/// solution set could be infinite.
pub fn enum_classes(
    lattice: &Arc<Lattice>,
    square: &BigInt,
    constraints: &[Constraint],
    window: Option<&DegreeWindow>,
) -> Result<Vec<DivisorClass>, EnumError> {
    let zero = lattice.zero();
    for c in constraints {
        zero.checked_add(&c.functional)?;
    }
    if let Some(w) = window {
        zero.checked_add(&w.functional)?;
    }
    let n = lattice.rank();
    let mut rows: Vec<Vec<BigInt>> = constraints.iter().map(|c| functional_row(&c.functional)).collect();
    if let Some(w) = window {
        rows.push(functional_row(&w.functional));
    }
    let echelon = ColumnEchelon::new(rows, n);
    let kernel = echelon.kernel();
    let k = kernel.len();
    let gk: Vec<Vec<BigInt>> = kernel.iter().map(|v| lattice.apply(v)).collect();
    let residual: Vec<Vec<BigRational>> =
        (0..k).map(|i| (0..k).map(|j| BigRational::from(lattice.form(&kernel[i], &kernel[j]))).collect()).collect();
    if let Err(x) = negative_definite_or_witness(&residual) {
        let w = clear_denominators(&x);
        let mut dir = vec![BigInt::zero(); n];
        for (wi, col) in w.iter().zip(&kernel) {
            for (d, c) in dir.iter_mut().zip(col) {
                *d += wi * c;
            }
        }
        let direction = lattice.class(dir)?;
        let sq = direction.square();
        return Err(EnumError::Unbounded { direction, square: sq });
    }
    let positive: Vec<Vec<BigRational>> = residual.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let ellipsoid = Ellipsoid::new(&positive);

    let base_rhs: Vec<BigInt> = constraints.iter().map(|c| c.value.clone()).collect();
    let targets: Vec<Vec<BigInt>> = match window {
        None => vec![base_rhs],
        Some(w) => {
            let mut v = Vec::new();
            let mut d = w.min.clone();
            while d <= w.max {
                let mut rhs = base_rhs.clone();
                rhs.push(d.clone());
                v.push(rhs);
                d += 1;
            }
            v
        }
    };

    let mut found = Vec::new();
    for rhs in targets {
        let Some(v0) = echelon.solve(&rhs) else { continue };
        let v0_sq = lattice.form(&v0, &v0);
        let candidates: Vec<Vec<BigInt>> = if k == 0 {
            vec![Vec::new()]
        } else {
            // square(v0 + K t) = v0² + 2 bᵀt - tᵀ P t with b = Kᵀ G v0
            let b: Vec<BigRational> =
                gk.iter().map(|g| BigRational::from(g.iter().zip(&v0).map(|(x, y)| x * y).sum::<BigInt>())).collect();
            let center = solve_rational(&positive, &b).expect("positive definite matrix is invertible");
            let bc: BigRational = b.iter().zip(&center).map(|(x, y)| x * y).sum();
            let radius = BigRational::from(&v0_sq - square) + bc;
            ellipsoid.points(&center, &radius)
        };
        for t in candidates {
            let mut coords = v0.clone();
            for (ti, col) in t.iter().zip(&kernel) {
                for (c, x) in coords.iter_mut().zip(col) {
                    *c += ti * x;
                }
            }
            let class = lattice.class(coords)?;
            if &class.square() != square {
                continue;
            }
            let ok = constraints.iter().all(|c| c.functional.pair(&class).map(|v| v == c.value).unwrap_or(false))
                && window.is_none_or(|w| {
                    let d = w.functional.pair(&class).expect("checked above");
                    w.min <= d && d <= w.max
                });
            if ok {
                found.push(class);
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}
