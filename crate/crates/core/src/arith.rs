//! Small exact-arithmetic helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Floor of the square root of a non-negative integer.
///
/// # Panics
/// Panics on negative input.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer {n}");
    n.sqrt()
}

/// Witness that an integer is not a perfect square: `floor² < value < (floor+1)²`,
/// or the value is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonSquareWitness {
    pub value: BigInt,
    pub floor_sqrt: Option<BigInt>,
}

impl NonSquareWitness {
    /// Re-check the witness from scratch.
    pub fn holds(&self) -> bool {
        match &self.floor_sqrt {
            None => self.value.is_negative(),
            Some(r) => {
                let next = r + 1u32;
                !r.is_negative() && r * r < self.value && self.value < &next * &next
            }
        }
    }
}

/// `Ok(root)` when `n` is a perfect square, otherwise a checkable witness.
pub fn exact_sqrt(n: &BigInt) -> Result<BigInt, NonSquareWitness> {
    if n.is_negative() {
        return Err(NonSquareWitness { value: n.clone(), floor_sqrt: None });
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Ok(r)
    } else {
        Err(NonSquareWitness { value: n.clone(), floor_sqrt: Some(r) })
    }
}

/// Square root of a rational when it is the square of a rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let num = exact_sqrt(q.numer()).ok()?;
    let den = exact_sqrt(q.denom()).ok()?;
    Some(BigRational::new(num, den))
}

/// Largest `s` with `s² <= q`, for a non-negative rational `q`.
pub fn floor_sqrt_rational(q: &BigRational) -> BigInt {
    assert!(!q.is_negative(), "floor_sqrt of negative rational");
    // floor(sqrt(p/q)) == isqrt(floor(p/q))
    isqrt(&q.numer().div_floor(q.denom()))
}

pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &BigRational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Binomial coefficient for non-negative arguments.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Solve `m x = rhs` over the rationals by Gaussian elimination.
/// Returns `None` when `m` is singular.
pub fn solve_rational(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..=n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &a[i][n] / &a[i][i]).collect())
}

/// Smallest positive integer multiple of a rational vector, with coprime entries.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
