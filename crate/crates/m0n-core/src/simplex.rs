//! Exact phase-1 simplex over the rationals.
//!
//! Solves `A x = b`, `x ≥ 0` feasibility by minimising the sum of artificial
//! variables with Bland's pivoting rule (smallest eligible column; ties in
//! the ratio test broken by smallest basis variable).  Bland's rule excludes
//! cycling, so the solver terminates and — having no other source of
//! nondeterminism — always returns the same point for the same input.

use num_traits::Zero;

use crate::rational::Q;

/// Returns some `x ≥ 0` with `Σ x_j · columns[j] = rhs`, or `None` if the
/// system is infeasible.  All `columns` must have the length of `rhs`.
pub fn feasible_point(columns: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let m = rhs.len();
    let nvars = columns.len();
    for col in columns {
        assert_eq!(col.len(), m, "column/rhs dimension mismatch");
    }
    let total = nvars + m; // structural + artificial variables
    let zero = Q::zero();
    let one = Q::from_integer(1.into());

    // Rows of [A | b], sign-normalised so b ≥ 0, then extended with an
    // identity block for the artificial basis.
    let mut tab: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(rhs[i].clone());
            if row[nvars] < zero {
                for entry in &mut row {
                    let negated = -entry.clone();
                    *entry = negated;
                }
            }
            let b = row.pop().expect("rhs entry");
            for j in 0..m {
                row.push(if i == j { one.clone() } else { zero.clone() });
            }
            row.push(b);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nvars..total).collect();

    // Reduced-cost row for minimising the artificial sum: cost_j = c_j − Σ_i
    // tab[i][j] with c_j = 1 exactly on artificial columns.  The last entry
    // tracks the negated objective value.
    let mut cost = vec![zero.clone(); total + 1];
    for (j, slot) in cost.iter_mut().enumerate() {
        for row in &tab {
            *slot -= &row[j];
        }
        if (nvars..total).contains(&j) {
            *slot += &one;
        }
    }

    // Bland's rule terminates in finitely many steps; the cap is a defence
    // against an implementation bug, not a tuning knob.
    let mut fuel = 2_000_000u64;
    loop {
        let Some(enter) = (0..total).find(|&j| cost[j] < zero) else {
            break;
        };
        let mut pivot: Option<(Q, usize, usize)> = None; // (ratio, basis var, row)
        for (i, row) in tab.iter().enumerate() {
            if row[enter] > zero {
                let ratio = &row[total] / &row[enter];
                let candidate = (ratio, basis[i], i);
                match &pivot {
                    Some(best) if (&candidate.0, candidate.1) >= (&best.0, best.1) => {}
                    _ => pivot = Some(candidate),
                }
            }
        }
        let (_, _, prow) = pivot.expect("phase-1 objective is bounded below");

        let denom = tab[prow][enter].clone();
        for entry in &mut tab[prow] {
            *entry /= &denom;
        }
        let pivot_row = tab[prow].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == prow || row[enter].is_zero() {
                continue;
            }
            // pivot_row[enter] is 1, so this clears row[enter] itself too.
            let factor = row[enter].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for (entry, p) in cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
        }
        basis[prow] = enter;

        fuel -= 1;
        assert!(fuel > 0, "pivot budget exhausted: Bland's rule should have terminated");
    }

    // cost[total] holds −(artificial sum); feasible exactly when it is zero.
    if !cost[total].is_zero() {
        return None;
    }
    let mut x = vec![zero; nvars];
    for (i, &var) in basis.iter().enumerate() {
        if var < nvars {
            x[var] = tab[i][total].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qq};

    fn cols(data: &[&[i64]]) -> Vec<Vec<Q>> {
        data.iter().map(|col| col.iter().map(|&v| q(v)).collect()).collect()
    }

    fn check(columns: &[Vec<Q>], rhs: &[Q], x: &[Q]) {
        for (i, target) in rhs.iter().enumerate() {
            let total: Q = columns.iter().zip(x).map(|(col, xi)| &col[i] * xi).sum();
            assert_eq!(&total, target);
        }
        assert!(x.iter().all(|v| *v >= q(0)));
    }

    #[test]
    fn solves_a_square_system() {
        let columns = cols(&[&[1, 0], &[0, 1], &[1, 1]]);
        let rhs = vec![q(2), q(3)];
        let x = feasible_point(&columns, &rhs).unwrap();
        check(&columns, &rhs, &x);
    }

    #[test]
    fn handles_negative_rhs_rows() {
        let columns = cols(&[&[-1, 0], &[0, -1]]);
        let rhs = vec![q(-5), q(-7)];
        let x = feasible_point(&columns, &rhs).unwrap();
        check(&columns, &rhs, &x);
        assert_eq!(x, vec![q(5), q(7)]);
    }

    #[test]
    fn reports_infeasibility() {
        // x ≥ 0 with x = −1 is impossible.
        assert!(feasible_point(&cols(&[&[1]]), &[q(-1)]).is_none());
        // Two equations forcing x = 1 and x = 2.
        assert!(feasible_point(&cols(&[&[1, 1]]), &[q(1), q(2)]).is_none());
        // Nonnegative combination of positive columns cannot reach a
        // mixed-sign target.
        assert!(feasible_point(&cols(&[&[1, 1], &[2, 1]]), &[q(1), q(-1)]).is_none());
    }

    #[test]
    fn rational_data_stays_exact() {
        let columns = vec![vec![qq(1, 3), qq(1, 2)], vec![qq(2, 3), qq(-1, 2)]];
        let rhs = vec![qq(5, 3), qq(1, 4)];
        let x = feasible_point(&columns, &rhs).unwrap();
        check(&columns, &rhs, &x);
    }

    #[test]
    fn redundant_rows_do_not_confuse_the_solver() {
        // Second row is twice the first.
        let columns = cols(&[&[1, 2], &[3, 6]]);
        let rhs = vec![q(5), q(10)];
        let x = feasible_point(&columns, &rhs).unwrap();
        check(&columns, &rhs, &x);
        // ... and an inconsistent near-duplicate is caught.
        assert!(feasible_point(&cols(&[&[1, 2]]), &[q(5), q(11)]).is_none());
    }

    #[test]
    fn deterministic_across_reruns() {
        let columns = cols(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 1]]);
        let rhs = vec![q(4), q(5), q(6)];
        let first = feasible_point(&columns, &rhs).unwrap();
        for _ in 0..5 {
            assert_eq!(feasible_point(&columns, &rhs).unwrap(), first);
        }
    }

    #[test]
    fn dense_systems_where_every_pivot_rewrites_every_row() {
        // rhs is the image of (1, 1, 1, 0, 1), so the system is feasible, and
        // all entries are positive, so each pivot touches each row.
        let columns = cols(&[
            &[1, 2, 1, 1],
            &[2, 1, 3, 1],
            &[1, 1, 1, 2],
            &[3, 1, 2, 1],
            &[1, 3, 1, 1],
        ]);
        let rhs = vec![q(5), q(7), q(6), q(5)];
        let x = feasible_point(&columns, &rhs).unwrap();
        check(&columns, &rhs, &x);
    }

    #[test]
    fn zero_dimensional_cases() {
        // No variables: feasible only if rhs is zero.
        assert_eq!(feasible_point(&[], &[q(0), q(0)]), Some(vec![]));
        assert!(feasible_point(&[], &[q(1)]).is_none());
        // No constraints: the zero vector works.
        assert_eq!(feasible_point(&cols(&[&[], &[]]), &[]), Some(vec![q(0), q(0)]));
    }
}
