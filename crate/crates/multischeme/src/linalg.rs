//! Sparse exact linear systems: incremental fraction-free Gauss–Jordan over
//! integer rows, with rational solutions read off at the end.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::Rational;

#[derive(Clone, Debug)]
struct Row {
    coeffs: BTreeMap<usize, BigInt>,
    rhs: BigInt,
}

impl Row {
    fn normalize(&mut self) {
        let mut g = self.rhs.abs();
        for c in self.coeffs.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if let Some((_, lead)) = self.coeffs.iter().next() {
            if lead.is_negative() {
                g = -g;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.values_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
    }

    /// `self ← p·self − c·other`, cancelling column `col`.
    fn eliminate(&mut self, other: &Row, col: usize) {
        let Some(c) = self.coeffs.get(&col).cloned() else {
            return;
        };
        let p = other.coeffs[&col].clone();
        let g = c.gcd(&p);
        let (a, b) = (&p / &g, &c / &g);
        if !a.is_one() {
            for v in self.coeffs.values_mut() {
                *v *= &a;
            }
            self.rhs *= &a;
        }
        for (k, v) in &other.coeffs {
            let e = self.coeffs.entry(*k).or_insert_with(BigInt::zero);
            *e -= &b * v;
            if e.is_zero() {
                self.coeffs.remove(k);
            }
        }
        self.rhs -= &b * &other.rhs;
    }
}

/// A linear system `A x = b` in reduced row echelon form, built one equation at a time.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<Row>,
    pivot_row: BTreeMap<usize, usize>,
    col_rows: BTreeMap<usize, BTreeSet<usize>>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem {
            ncols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
            col_rows: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Adds `Σ c_k x_k = rhs`; returns whether the row was independent.
    pub fn add_equation(&mut self, terms: &[(usize, Rational)], rhs: &Rational) -> bool {
        let mut den = rhs.denom().clone();
        for (_, c) in terms {
            den = den.lcm(c.denom());
        }
        let mut row = Row {
            coeffs: BTreeMap::new(),
            rhs: (rhs * Rational::from_integer(den.clone())).to_integer(),
        };
        for (k, c) in terms {
            assert!(*k < self.ncols, "column {k} out of range");
            let v = (c * Rational::from_integer(den.clone())).to_integer();
            let e = row.coeffs.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                row.coeffs.remove(k);
            }
        }
        self.insert_row(row)
    }

    fn insert_row(&mut self, mut row: Row) -> bool {
        let cols: Vec<usize> = row
            .coeffs
            .keys()
            .filter(|c| self.pivot_row.contains_key(c))
            .copied()
            .collect();
        for col in cols {
            let r = self.pivot_row[&col];
            row.eliminate(&self.rows[r], col);
        }
        row.normalize();
        let Some((&pivot, _)) = row.coeffs.iter().next() else {
            if !row.rhs.is_zero() {
                self.inconsistent = true;
            }
            return false;
        };
        let new_index = self.rows.len();
        let touched: Vec<usize> = self
            .col_rows
            .get(&pivot)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for r in touched {
            let before: Vec<usize> = self.rows[r].coeffs.keys().copied().collect();
            self.rows[r].eliminate(&row, pivot);
            self.rows[r].normalize();
            for c in before {
                if !self.rows[r].coeffs.contains_key(&c) {
                    if let Some(s) = self.col_rows.get_mut(&c) {
                        s.remove(&r);
                    }
                }
            }
            let after: Vec<usize> = self.rows[r].coeffs.keys().copied().collect();
            for c in after {
                self.col_rows.entry(c).or_default().insert(r);
            }
        }
        for &c in row.coeffs.keys() {
            self.col_rows.entry(c).or_default().insert(new_index);
        }
        self.pivot_row.insert(pivot, new_index);
        self.rows.push(row);
        true
    }

    /// Pivot column `col` as `x_col = constant + Σ coeff·x_free`.
    pub fn pivot_expression(&self, col: usize) -> Option<(Rational, Vec<(usize, Rational)>)> {
        let r = &self.rows[*self.pivot_row.get(&col)?];
        let p = &r.coeffs[&col];
        let constant = Rational::new(r.rhs.clone(), p.clone());
        let rest = r
            .coeffs
            .iter()
            .filter(|(k, _)| **k != col)
            .map(|(k, v)| (*k, -Rational::new(v.clone(), p.clone())))
            .collect();
        Some((constant, rest))
    }

    /// Solution with the given free-column values (missing ones are zero).
    pub fn solve_with(&self, free_values: &BTreeMap<usize, Rational>) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for (k, v) in free_values {
            if !self.pivot_row.contains_key(k) {
                x[*k] = v.clone();
            }
        }
        for &col in self.pivot_row.keys() {
            let (c, rest) = self.pivot_expression(col).expect("pivot");
            let mut val = c;
            for (k, coeff) in rest {
                val += coeff * &x[k];
            }
            x[col] = val;
        }
        Some(x)
    }

    pub fn particular(&self) -> Option<Vec<Rational>> {
        self.solve_with(&BTreeMap::new())
    }
}

/// Rank of a set of rational vectors of length `ncols`.
pub fn rank_of(vectors: &[Vec<Rational>], ncols: usize) -> usize {
    let mut sys = LinearSystem::new(ncols);
    for v in vectors {
        let terms: Vec<(usize, Rational)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        sys.add_equation(&terms, &Rational::zero());
    }
    sys.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{int, rat};

    #[test]
    fn small_system() {
        // x + y = 3, x - y = 1
        let mut s = LinearSystem::new(2);
        assert!(s.add_equation(&[(0, int(1)), (1, int(1))], &int(3)));
        assert!(s.add_equation(&[(0, int(1)), (1, int(-1))], &int(1)));
        assert_eq!(s.particular().unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn rational_coefficients_and_free_columns() {
        // x/2 + z = 1/3
        let mut s = LinearSystem::new(3);
        s.add_equation(&[(0, rat(1, 2)), (2, int(1))], &rat(1, 3));
        assert_eq!(s.free_columns(), vec![1, 2]);
        let sol = s.solve_with(&BTreeMap::from([(2, int(1))])).unwrap();
        assert_eq!(sol, vec![rat(-4, 3), int(0), int(1)]);
    }

    #[test]
    fn inconsistency_and_redundancy() {
        let mut s = LinearSystem::new(2);
        s.add_equation(&[(0, int(2)), (1, int(4))], &int(2));
        assert!(!s.add_equation(&[(0, int(1)), (1, int(2))], &int(1)));
        assert!(s.is_consistent());
        s.add_equation(&[(0, int(3)), (1, int(6))], &int(1));
        assert!(!s.is_consistent());
        assert!(s.particular().is_none());
    }

    #[test]
    fn rank_examples() {
        let v = vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(1)]];
        assert_eq!(rank_of(&v, 2), 2);
    }
}
