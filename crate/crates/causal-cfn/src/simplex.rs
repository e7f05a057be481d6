//! Exact LP feasibility over the rationals.
//!
//! The only question asked here is cone-hull membership: does `x` lie in the
//! nonnegative hull of a finite generator list? This is a phase-one simplex
//! with Bland's rule, which terminates on exact arithmetic.

use num::{Signed, Zero};

use crate::rat::{Rat, RationalVector};

/// True iff `x = sum t_i g_i` has a solution with all `t_i >= 0`.
pub fn in_cone_hull(gens: &[RationalVector], x: &RationalVector) -> bool {
    let dim = x.dim();
    if x.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let n = gens.len();
    // Tableau for: minimize sum of artificials, [G | S] [t; a] = x,
    // where S is a signed identity making the right hand side nonnegative.
    // Columns 0..n are the t variables, n..n+dim the artificials.
    let cols = n + dim;
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    let mut b: Vec<Rat> = Vec::with_capacity(dim);
    for i in 0..dim {
        let xi = x.get(i).clone();
        let sign = if xi.is_negative() { -Rat::from_integer(1.into()) } else { Rat::from_integer(1.into()) };
        let mut row: Vec<Rat> = (0..cols).map(|_| Rat::zero()).collect();
        for (j, g) in gens.iter().enumerate() {
            row[j] = g.get(i) * &sign;
        }
        row[n + i] = Rat::from_integer(1.into());
        a.push(row);
        b.push(xi.abs());
    }
    // Basis starts as the artificial columns.
    let mut basis: Vec<usize> = (n..cols).collect();
    // Reduced objective row for minimizing the artificial sum: z_j - c_j.
    // Maintain implicitly: obj[j] = sum over rows of a[i][j] where basis[i]
    // is artificial, minus (1 if j is artificial).
    loop {
        // Compute reduced costs.
        let mut entering: Option<usize> = None;
        for j in 0..cols {
            if basis.contains(&j) {
                continue;
            }
            let mut red = Rat::zero();
            for i in 0..dim {
                if basis[i] >= n {
                    red += &a[i][j];
                }
            }
            if j >= n {
                red -= Rat::from_integer(1.into());
            }
            if red.is_positive() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(e) = entering else { break };
        // Ratio test with Bland's tie-break on basis index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..dim {
            if a[i][e].is_positive() {
                let ratio = &b[i] / &a[i][e];
                let better = match &best {
                    None => true,
                    Some(cur) => {
                        ratio < *cur || (ratio == *cur && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            // Phase one is bounded below by 0, so no leaving row means the
            // entering column was numerically impossible; report infeasible.
            return false;
        };
        // Pivot on (l, e).
        let piv = a[l][e].clone();
        for j in 0..cols {
            a[l][j] = &a[l][j] / &piv;
        }
        b[l] = &b[l] / &piv;
        for i in 0..dim {
            if i != l && !a[i][e].is_zero() {
                let f = a[i][e].clone();
                for j in 0..cols {
                    let d = &f * &a[l][j];
                    a[i][j] = &a[i][j] - d;
                }
                let d = &f * &b[l];
                b[i] = &b[i] - d;
            }
        }
        basis[l] = e;
    }
    // Feasible iff every artificial still in the basis has value zero.
    basis.iter().zip(&b).all(|(&j, bi)| j < n || bi.is_zero())
}
