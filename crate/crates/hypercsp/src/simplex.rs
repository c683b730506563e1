//! A small dense simplex over arbitrary-precision rationals.
//!
//! Solves `max c·y subject to A·y <= b, y >= 0` with `b >= 0`, so the
//! all-slack basis is feasible and no phase-one is needed. Bland's rule
//! picks the pivots, which prevents cycling and makes every result (value,
//! primal witness, dual witness) a deterministic function of the input.

// index loops here walk two rows of the same tableau at once
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Signed, Zero};

use crate::weights::Rational;

pub(crate) struct LpSolution {
    pub value: Rational,
    /// optimal y, one entry per structural variable
    pub primal: Vec<Rational>,
    /// optimal dual multipliers, one entry per constraint row
    pub dual: Vec<Rational>,
}

/// Maximize `c·y` over `{ y >= 0 : rows[i].0 · y <= rows[i].1 }`.
///
/// Panics if some right-hand side is negative or the program is unbounded;
/// the covering/packing programs built by this crate never are.
pub(crate) fn maximize(c: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> LpSolution {
    let n = c.len();
    let m = rows.len();
    for (coeffs, rhs) in rows {
        assert_eq!(coeffs.len(), n, "row length mismatch");
        assert!(!rhs.is_negative(), "negative right-hand side");
    }

    // Tableau rows: n structural columns, m slack columns, rhs.
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in rows.iter().enumerate() {
        let mut row = Vec::with_capacity(n + m + 1);
        row.extend(coeffs.iter().cloned());
        for j in 0..m {
            row.push(if j == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        row.push(rhs.clone());
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective expressed in the nonbasic variables: z = value + Σ zrow[j]·x_j.
    let mut zrow: Vec<Rational> = c.to_vec();
    zrow.extend(std::iter::repeat_n(Rational::zero(), m));
    let mut value = Rational::zero();

    // Bland: entering variable = least index with positive reduced cost.
    while let Some(enter) = zrow.iter().position(|r| r.is_positive()) {
        // Ratio test; ties broken by least basic-variable index (Bland).
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][n + m] / &t[i][enter];
                match &leave {
                    Some((li, lr)) if *lr < ratio || (*lr == ratio && basis[*li] < basis[i]) => {}
                    _ => leave = Some((i, ratio)),
                }
            }
        }
        let (r, _) = leave.expect("linear program is unbounded");

        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=n + m {
                    let delta = &f * &t[r][j];
                    t[i][j] = &t[i][j] - &delta;
                }
            }
        }
        let f = zrow[enter].clone();
        for j in 0..n + m {
            let delta = &f * &t[r][j];
            zrow[j] = &zrow[j] - &delta;
        }
        value = &value + &(&f * &t[r][n + m]);
        basis[r] = enter;
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            primal[b] = t[i][n + m].clone();
        }
    }
    // The dual multiplier of row i is the negated reduced cost of its slack.
    let dual: Vec<Rational> = (0..m).map(|i| -zrow[n + i].clone()).collect();
    LpSolution {
        value,
        primal,
        dual,
    }
}
