//! Exact rational phase-one simplex for `A x = b, x >= 0` where every column
//! of `A` is a 0/1 vector.
//!
//! Revised form with an explicit basis inverse and Bland's rule. The
//! constraint matrices produced by marginal problems have few rows and many
//! columns, so pricing dominates; it runs on integer-scaled duals.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{lcm_of_denominators, Rational};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Feasibility {
    /// A basic feasible solution, one value per column.
    Feasible(Vec<Rational>),
    /// Dual vector `y` with `y·A_j <= 0` for every column and `y·b > 0`.
    Infeasible(Vec<Rational>),
}

/// Duals scaled to a common denominator for cheap sign tests.
enum ScaledDuals {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl ScaledDuals {
    fn new(y: &[Rational]) -> Self {
        let d = lcm_of_denominators(y);
        let nums: Vec<BigInt> = y
            .iter()
            .map(|v| (v * Rational::from_integer(d.clone())).to_integer())
            .collect();
        match nums.iter().map(|v| v.to_i64()).collect::<Option<Vec<i64>>>() {
            Some(small) => ScaledDuals::Small(small),
            None => ScaledDuals::Big(nums),
        }
    }

    /// `Σ_{r in rows} y_r > 0`.
    fn sum_positive(&self, rows: &[usize]) -> bool {
        match self {
            ScaledDuals::Small(v) => rows.iter().map(|&r| v[r] as i128).sum::<i128>() > 0,
            ScaledDuals::Big(v) => rows.iter().fold(BigInt::zero(), |acc, &r| acc + &v[r]).is_positive(),
        }
    }
}

pub(crate) fn phase_one(rows: usize, columns: &[Vec<usize>], b: &[Rational]) -> Feasibility {
    assert_eq!(b.len(), rows);
    assert!(b.iter().all(|v| !v.is_negative()), "right-hand side must be nonnegative");
    let n = columns.len();
    let m = rows;
    let one = Rational::one();

    let mut binv: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|k| if i == k { one.clone() } else { Rational::zero() }).collect())
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut is_basic = vec![false; n + m];
    for &v in &basis {
        is_basic[v] = true;
    }
    let mut xb: Vec<Rational> = b.to_vec();

    loop {
        // y = c_B^T B^{-1}; only artificial variables carry cost 1.
        let mut y = vec![Rational::zero(); m];
        for (r, &var) in basis.iter().enumerate() {
            if var >= n {
                for k in 0..m {
                    if !binv[r][k].is_zero() {
                        y[k] += &binv[r][k];
                    }
                }
            }
        }
        let scaled = ScaledDuals::new(&y);
        let entering = (0..n + m).find(|&j| {
            !is_basic[j]
                && if j < n {
                    scaled.sum_positive(&columns[j])
                } else {
                    y[j - n] > one
                }
        });
        let Some(j) = entering else {
            let objective: Rational = basis
                .iter()
                .zip(&xb)
                .filter(|(&var, _)| var >= n)
                .fold(Rational::zero(), |acc, (_, v)| acc + v);
            if objective.is_zero() {
                let mut x = vec![Rational::zero(); n];
                for (r, &var) in basis.iter().enumerate() {
                    if var < n {
                        x[var] = xb[r].clone();
                    }
                }
                return Feasibility::Feasible(x);
            }
            return Feasibility::Infeasible(y);
        };

        let u: Vec<Rational> = (0..m)
            .map(|r| {
                if j < n {
                    columns[j]
                        .iter()
                        .fold(Rational::zero(), |acc, &k| acc + &binv[r][k])
                } else {
                    binv[r][j - n].clone()
                }
            })
            .collect();

        // Ratio test; ties go to the smallest basic variable index.
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if u[r].is_positive() {
                let ratio = &xb[r] / &u[r];
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase-one objective is bounded below");

        let pivot = u[r].clone();
        for k in 0..m {
            if !binv[r][k].is_zero() {
                binv[r][k] = &binv[r][k] / &pivot;
            }
        }
        xb[r] = &xb[r] / &pivot;
        let pivot_row = binv[r].clone();
        let pivot_x = xb[r].clone();
        for i in 0..m {
            if i == r || u[i].is_zero() {
                continue;
            }
            for k in 0..m {
                if !pivot_row[k].is_zero() {
                    binv[i][k] = &binv[i][k] - &u[i] * &pivot_row[k];
                }
            }
            xb[i] = &xb[i] - &u[i] * &pivot_x;
        }
        is_basic[basis[r]] = false;
        is_basic[j] = true;
        basis[r] = j;
    }
}
