//! The Heffter array data model, the axiom verifier, and the elementary
//! transforms shared by every construction.
//!
//! An `H(n;k)` is an `n x n` partial matrix of nonzero integers in which
//! every row and column has exactly `k` filled cells summing to 0, and for
//! each `x` in `{1, ..., nk}` exactly one of `x`, `-x` appears.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Row or column, for locating verification failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

/// A line with the wrong number of filled cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FillViolation {
    pub axis: Axis,
    pub index: usize,
    pub count: usize,
}

/// A line whose entries do not sum to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumViolation {
    pub axis: Axis,
    pub index: usize,
    pub sum: i64,
}

/// Defects in the multiset of absolute values.
///
/// A value is `duplicated` if its absolute value occurs at least twice,
/// regardless of signs: the support axiom forbids both `{x, -x}` and
/// `{x, x}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportViolations {
    pub missing: BTreeSet<i32>,
    pub duplicated: BTreeSet<i32>,
    pub out_of_range: BTreeSet<i32>,
}

impl SupportViolations {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.duplicated.is_empty() && self.out_of_range.is_empty()
    }
}

/// Outcome of checking the three `H(n;k)` axioms, with every violation
/// located exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub fill_violations: Vec<FillViolation>,
    pub sum_violations: Vec<SumViolation>,
    pub support_violations: SupportViolations,
}

impl VerificationReport {
    /// True iff all three violation lists are empty.
    pub fn is_valid(&self) -> bool {
        self.fill_violations.is_empty()
            && self.sum_violations.is_empty()
            && self.support_violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "all axioms hold");
        }
        for v in &self.fill_violations {
            writeln!(f, "{} {} has {} filled cells", v.axis, v.index, v.count)?;
        }
        for v in &self.sum_violations {
            writeln!(f, "{} {} sums to {}", v.axis, v.index, v.sum)?;
        }
        let s = &self.support_violations;
        if !s.missing.is_empty() {
            writeln!(f, "missing absolute values: {:?}", s.missing)?;
        }
        if !s.duplicated.is_empty() {
            writeln!(f, "duplicated absolute values: {:?}", s.duplicated)?;
        }
        if !s.out_of_range.is_empty() {
            writeln!(f, "out-of-range absolute values: {:?}", s.out_of_range)?;
        }
        Ok(())
    }
}

/// Index of a cyclic diagonal: `D_i` is the cell set
/// `{(r, (r + i) mod n) : 0 <= r < n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiagonalIndex(pub usize);

impl fmt::Display for DiagonalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}", self.0)
    }
}

/// A set of `n` filled cells, one per row and one per column.
///
/// Producers guarantee the primary property: the absolute values on the
/// transversal are exactly `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    cells: Vec<(usize, usize)>,
}

impl Transversal {
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }
}

/// Result of the opt-in backtracking transversal search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StripOutcome {
    /// A primary transversal with balanced removal was found.
    Found(Transversal),
    /// The full candidate space was searched without a budget cutoff;
    /// no such transversal exists.
    NotFound,
    /// The node budget ran out before the space was exhausted.
    Inconclusive,
}

/// An `n x n` partial matrix of nonzero integers with a declared number
/// `k` of filled cells per line.
///
/// The type enforces shape and nonzero entries; the `H(n;k)` axioms are
/// checked by [`HeffterArray::verify`], never assumed. All transforms
/// return new values, so shared references are safe to use concurrently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeffterArray {
    n: usize,
    k: usize,
    cells: Vec<Option<i32>>,
}

impl HeffterArray {
    /// An all-empty `n x n` array declaring `k` filled cells per line.
    pub fn empty(n: usize, k: usize) -> Self {
        assert!(n >= 1, "side length must be positive");
        Self {
            n,
            k,
            cells: vec![None; n * n],
        }
    }

    /// Builds an array from rows, rejecting wrong shapes and zero entries.
    pub fn from_rows(n: usize, k: usize, rows: Vec<Vec<Option<i32>>>) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::RowCount { n, rows: rows.len() });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RowLength { n, row: r, len: row.len() });
            }
            for (c, cell) in row.into_iter().enumerate() {
                if cell == Some(0) {
                    return Err(Error::ZeroEntry { row: r, col: c });
                }
                cells.push(cell);
            }
        }
        Ok(Self { n, k, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared filled cells per row and column.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, r: usize, c: usize) -> Option<i32> {
        self.cells[r * self.n + c]
    }

    /// Writes a nonzero value, overwriting any previous content.
    ///
    /// Panics on a zero value or an out-of-range index.
    pub fn set(&mut self, r: usize, c: usize, v: i32) {
        assert!(v != 0, "0 is not a valid entry");
        self.cells[r * self.n + c] = Some(v);
    }

    pub(crate) fn with_declared_k(&self, k: usize) -> Self {
        Self {
            n: self.n,
            k,
            cells: self.cells.clone(),
        }
    }

    /// Iterates filled cells as `(row, col, value)` in row-major order.
    pub fn filled_cells(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, c)| c.map(|v| (i / n, i % n, v)))
    }

    /// Checks the three axioms against the declared `(n, k)` and reports
    /// every violation. Pure: two calls on the same array agree.
    pub fn verify(&self) -> VerificationReport {
        let n = self.n;
        let nk = n * self.k;
        let mut fill_violations = Vec::new();
        let mut sum_violations = Vec::new();

        for r in 0..n {
            let mut count = 0usize;
            let mut sum = 0i64;
            for c in 0..n {
                if let Some(v) = self.get(r, c) {
                    count += 1;
                    sum += i64::from(v);
                }
            }
            if count != self.k {
                fill_violations.push(FillViolation { axis: Axis::Row, index: r, count });
            }
            if sum != 0 {
                sum_violations.push(SumViolation { axis: Axis::Row, index: r, sum });
            }
        }
        for c in 0..n {
            let mut count = 0usize;
            let mut sum = 0i64;
            for r in 0..n {
                if let Some(v) = self.get(r, c) {
                    count += 1;
                    sum += i64::from(v);
                }
            }
            if count != self.k {
                fill_violations.push(FillViolation { axis: Axis::Column, index: c, count });
            }
            if sum != 0 {
                sum_violations.push(SumViolation { axis: Axis::Column, index: c, sum });
            }
        }

        let mut occurrences = vec![0usize; nk + 1];
        let mut support_violations = SupportViolations::default();
        let mut high: std::collections::BTreeMap<i32, usize> = std::collections::BTreeMap::new();
        for (_, _, v) in self.filled_cells() {
            let a = v.unsigned_abs() as usize;
            if a > nk {
                *high.entry(v.abs()).or_insert(0) += 1;
            } else {
                occurrences[a] += 1;
            }
        }
        for a in 1..=nk {
            match occurrences[a] {
                0 => {
                    support_violations.missing.insert(a as i32);
                }
                1 => {}
                _ => {
                    support_violations.duplicated.insert(a as i32);
                }
            }
        }
        for (a, count) in high {
            support_violations.out_of_range.insert(a);
            if count >= 2 {
                support_violations.duplicated.insert(a);
            }
        }

        VerificationReport { fill_violations, sum_violations, support_violations }
    }

    /// True iff every row and every column holds equally many positive and
    /// negative entries. Always false for odd `k`.
    pub fn is_shiftable(&self) -> bool {
        if self.k % 2 != 0 {
            return false;
        }
        let n = self.n;
        for r in 0..n {
            let (mut pos, mut neg) = (0usize, 0usize);
            for c in 0..n {
                match self.get(r, c) {
                    Some(v) if v > 0 => pos += 1,
                    Some(_) => neg += 1,
                    None => {}
                }
            }
            if pos != neg {
                return false;
            }
        }
        for c in 0..n {
            let (mut pos, mut neg) = (0usize, 0usize);
            for r in 0..n {
                match self.get(r, c) {
                    Some(v) if v > 0 => pos += 1,
                    Some(_) => neg += 1,
                    None => {}
                }
            }
            if pos != neg {
                return false;
            }
        }
        true
    }

    /// Adds `x` to every positive entry and `-x` to every negative entry,
    /// leaving empty cells unchanged. On a shiftable array this preserves
    /// all line sums and moves the support up by `x`.
    pub fn shifted(&self, x: i32) -> Self {
        assert!(x >= 0, "shift amount must be nonnegative");
        let cells = self
            .cells
            .iter()
            .map(|c| c.map(|v| if v > 0 { v + x } else { v - x }))
            .collect();
        Self { n: self.n, k: self.k, cells }
    }

    /// Flips the sign of every filled cell.
    pub fn negated(&self) -> Self {
        let cells = self.cells.iter().map(|c| c.map(|v| -v)).collect();
        Self { n: self.n, k: self.k, cells }
    }

    /// Exchanges rows and columns.
    pub fn transposed(&self) -> Self {
        let n = self.n;
        let mut out = Self::empty(n, self.k);
        for (r, c, v) in self.filled_cells() {
            out.set(c, r, v);
        }
        out
    }

    /// Moves row `r` to row `(r + offset) mod n`, rows intact.
    pub fn rows_permuted_cyclic(&self, offset: usize) -> Self {
        let n = self.n;
        let mut out = Self::empty(n, self.k);
        for (r, c, v) in self.filled_cells() {
            out.set((r + offset) % n, c, v);
        }
        out
    }

    /// True iff no cell of `D_d` is filled.
    pub fn diagonal_is_empty(&self, d: usize) -> bool {
        let n = self.n;
        (0..n).all(|r| self.get(r, (r + d) % n).is_none())
    }

    /// All maximal cyclically-consecutive runs of completely empty
    /// diagonals, sorted by start index. A run may wrap past `D_{n-1}`;
    /// a fully empty array reports the single run `(D_0, n)`.
    pub fn empty_diagonal_runs(&self) -> Vec<(DiagonalIndex, usize)> {
        let n = self.n;
        let empty: Vec<bool> = (0..n).map(|d| self.diagonal_is_empty(d)).collect();
        if empty.iter().all(|&e| e) {
            return vec![(DiagonalIndex(0), n)];
        }
        let mut runs = Vec::new();
        for d in 0..n {
            if empty[d] && !empty[(d + n - 1) % n] {
                let mut len = 0;
                while empty[(d + len) % n] {
                    len += 1;
                }
                runs.push((DiagonalIndex(d), len));
            }
        }
        runs.sort_by_key(|&(d, _)| d);
        runs
    }

    /// Checks whether the main diagonal is a primary transversal whose
    /// removal leaves every line with balanced signs.
    ///
    /// This is the default strippability effort; it suffices for every
    /// array this crate generates. `None` means only that this candidate
    /// failed, not that no primary transversal exists; see
    /// [`HeffterArray::find_primary_transversal`] for the search.
    /// Strippability is defined only for odd `k`.
    pub fn is_strippable(&self) -> Option<Transversal> {
        if self.k % 2 == 0 {
            return None;
        }
        let n = self.n;
        let cells: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        if self.transversal_is_primary_balanced(&cells) {
            Some(Transversal { cells })
        } else {
            None
        }
    }

    fn transversal_is_primary_balanced(&self, cells: &[(usize, usize)]) -> bool {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        for &(r, c) in cells {
            let v = match self.get(r, c) {
                Some(v) => v,
                None => return false,
            };
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return false;
            }
            seen[a] = true;
        }
        // balance of each line once its transversal cell is removed
        for &(r, c) in cells {
            let v = self.get(r, c).unwrap();
            if self.line_balance(Axis::Row, r) != v.signum() as i64
                || self.line_balance(Axis::Column, c) != v.signum() as i64
            {
                return false;
            }
        }
        true
    }

    /// Number of positive minus number of negative entries on a line.
    fn line_balance(&self, axis: Axis, index: usize) -> i64 {
        let n = self.n;
        let mut balance = 0i64;
        for t in 0..n {
            let v = match axis {
                Axis::Row => self.get(index, t),
                Axis::Column => self.get(t, index),
            };
            match v {
                Some(v) if v > 0 => balance += 1,
                Some(_) => balance -= 1,
                None => {}
            }
        }
        balance
    }

    /// Backtracking search for any primary transversal with balanced
    /// removal, one row at a time over filled cells with absolute value
    /// at most `n`. Exhausting the space without a budget cutoff proves
    /// nonexistence; hitting the budget is inconclusive.
    pub fn find_primary_transversal(&self, node_budget: Option<u64>) -> StripOutcome {
        if self.k % 2 == 0 {
            return StripOutcome::NotFound;
        }
        let n = self.n;
        assert!(n <= 64, "transversal search supports n <= 64");
        // removing a cell of sign s balances a line iff its balance is s
        let mut row_sign = vec![0i64; n];
        let mut col_sign = vec![0i64; n];
        for r in 0..n {
            row_sign[r] = self.line_balance(Axis::Row, r);
        }
        for c in 0..n {
            col_sign[c] = self.line_balance(Axis::Column, c);
        }
        if row_sign.iter().chain(col_sign.iter()).any(|&s| s.abs() != 1) {
            return StripOutcome::NotFound;
        }

        struct Search<'a> {
            arr: &'a HeffterArray,
            row_sign: Vec<i64>,
            col_sign: Vec<i64>,
            used_cols: u64,
            used_vals: u64,
            cells: Vec<(usize, usize)>,
            nodes: u64,
            budget: Option<u64>,
            inconclusive: bool,
        }
        impl Search<'_> {
            fn go(&mut self, r: usize) -> bool {
                let n = self.arr.n();
                if r == n {
                    return true;
                }
                for c in 0..n {
                    if self.used_cols & (1 << c) != 0 {
                        continue;
                    }
                    let v = match self.arr.get(r, c) {
                        Some(v) => v,
                        None => continue,
                    };
                    let a = v.unsigned_abs() as usize;
                    if a > n || self.used_vals & (1 << (a - 1)) != 0 {
                        continue;
                    }
                    let s = v.signum() as i64;
                    if self.row_sign[r] != s || self.col_sign[c] != s {
                        continue;
                    }
                    self.nodes += 1;
                    if let Some(b) = self.budget {
                        if self.nodes > b {
                            self.inconclusive = true;
                            return false;
                        }
                    }
                    self.used_cols |= 1 << c;
                    self.used_vals |= 1 << (a - 1);
                    self.cells.push((r, c));
                    if self.go(r + 1) {
                        return true;
                    }
                    if self.inconclusive {
                        return false;
                    }
                    self.cells.pop();
                    self.used_cols &= !(1 << c);
                    self.used_vals &= !(1 << (a - 1));
                }
                false
            }
        }

        let mut search = Search {
            arr: self,
            row_sign,
            col_sign,
            used_cols: 0,
            used_vals: 0,
            cells: Vec::with_capacity(n),
            nodes: 0,
            budget: node_budget,
            inconclusive: false,
        };
        if search.go(0) {
            StripOutcome::Found(Transversal { cells: search.cells })
        } else if search.inconclusive {
            StripOutcome::Inconclusive
        } else {
            StripOutcome::NotFound
        }
    }
}

impl fmt::Display for HeffterArray {
    /// One row per line, cells separated by single spaces, `.` for empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            for c in 0..self.n {
                if c > 0 {
                    write!(f, " ")?;
                }
                match self.get(r, c) {
                    Some(v) => write!(f, "{}", v)?,
                    None => write!(f, ".")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The H(4;3) used throughout: known valid with a main-diagonal
    /// primary transversal.
    pub(crate) fn h4_3() -> HeffterArray {
        HeffterArray::from_rows(
            4,
            3,
            vec![
                vec![Some(4), Some(8), None, Some(-12)],
                vec![Some(-9), Some(3), Some(6), None],
                vec![None, Some(-11), Some(1), Some(10)],
                vec![Some(5), None, Some(-7), Some(2)],
            ],
        )
        .unwrap()
    }

    fn hs6_4() -> HeffterArray {
        HeffterArray::from_rows(
            6,
            4,
            vec![
                vec![None, None, Some(13), Some(-15), Some(-9), Some(11)],
                vec![None, None, Some(-14), Some(16), Some(10), Some(-12)],
                vec![Some(-1), Some(3), None, None, Some(17), Some(-19)],
                vec![Some(2), Some(-4), None, None, Some(-18), Some(20)],
                vec![Some(21), Some(-23), Some(-5), Some(7), None, None],
                vec![Some(-22), Some(24), Some(6), Some(-8), None, None],
            ],
        )
        .unwrap()
    }

    #[test]
    fn golden_h4_3_verifies() {
        let report = h4_3().verify();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn single_cell_perturbation_is_located_exactly() {
        let mut arr = h4_3();
        arr.set(0, 0, 5);
        let report = arr.verify();
        assert!(!report.is_valid());
        assert!(report.fill_violations.is_empty());
        assert!(report
            .sum_violations
            .contains(&SumViolation { axis: Axis::Row, index: 0, sum: 1 }));
        assert!(report
            .sum_violations
            .contains(&SumViolation { axis: Axis::Column, index: 0, sum: 1 }));
        assert_eq!(report.sum_violations.len(), 2);
        let s = &report.support_violations;
        assert_eq!(s.missing.iter().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(s.duplicated.iter().copied().collect::<Vec<_>>(), vec![5]);
        assert!(s.out_of_range.is_empty());
    }

    #[test]
    fn empty_grid_reports_every_line() {
        let report = HeffterArray::empty(4, 3).verify();
        assert!(!report.is_valid());
        assert_eq!(report.fill_violations.len(), 8);
        assert!(report.fill_violations.iter().all(|v| v.count == 0));
        assert!(report.sum_violations.is_empty());
        assert_eq!(report.support_violations.missing.len(), 12);
    }

    #[test]
    fn zero_entry_is_a_structural_error() {
        let err = HeffterArray::from_rows(
            2,
            1,
            vec![vec![Some(0), None], vec![None, Some(1)]],
        )
        .unwrap_err();
        assert_eq!(err, Error::ZeroEntry { row: 0, col: 0 });
    }

    #[test]
    fn bad_shape_is_a_structural_error() {
        assert_eq!(
            HeffterArray::from_rows(2, 1, vec![vec![None, None]]).unwrap_err(),
            Error::RowCount { n: 2, rows: 1 }
        );
        assert_eq!(
            HeffterArray::from_rows(2, 1, vec![vec![None], vec![None, None]]).unwrap_err(),
            Error::RowLength { n: 2, row: 0, len: 1 }
        );
    }

    #[test]
    fn shiftable_detection() {
        assert!(hs6_4().is_shiftable());
        // odd k is never shiftable
        assert!(!h4_3().is_shiftable());
    }

    #[test]
    fn shift_identity_and_arithmetic() {
        let a = HeffterArray::from_rows(
            2,
            2,
            vec![vec![Some(1), Some(-2)], vec![Some(-3), Some(4)]],
        )
        .unwrap();
        assert_eq!(a.shifted(0), a);
        let b = a.shifted(10);
        assert_eq!(b.get(0, 0), Some(11));
        assert_eq!(b.get(0, 1), Some(-12));
        assert_eq!(b.get(1, 0), Some(-13));
        assert_eq!(b.get(1, 1), Some(14));
        // row sums unchanged: (-1, 1)
        let sums = |arr: &HeffterArray| -> Vec<i64> {
            (0..2)
                .map(|r| (0..2).filter_map(|c| arr.get(r, c)).map(i64::from).sum())
                .collect()
        };
        assert_eq!(sums(&a), sums(&b));
    }

    #[test]
    fn transforms_preserve_validity() {
        let a = h4_3();
        assert!(a.negated().verify().is_valid());
        assert!(a.transposed().verify().is_valid());
        for offset in 0..4 {
            assert!(a.rows_permuted_cyclic(offset).verify().is_valid());
        }
        let s = hs6_4();
        assert!(s.transposed().is_shiftable());
    }

    #[test]
    fn diagonal_runs_of_empty_array() {
        let arr = HeffterArray::empty(5, 3);
        assert_eq!(arr.empty_diagonal_runs(), vec![(DiagonalIndex(0), 5)]);
    }

    #[test]
    fn diagonal_runs_wrap_around() {
        // fill D_2 only: runs are D_3..D_1 wrapping, one run of length 4
        let mut arr = HeffterArray::empty(5, 1);
        for r in 0..5 {
            arr.set(r, (r + 2) % 5, 1 + r as i32);
        }
        assert_eq!(arr.empty_diagonal_runs(), vec![(DiagonalIndex(3), 4)]);
        let total_empty: usize = arr.empty_diagonal_runs().iter().map(|&(_, l)| l).sum();
        assert_eq!(total_empty, 4);
    }

    #[test]
    fn main_diagonal_strippability() {
        let t = h4_3().is_strippable().expect("main diagonal is primary");
        assert_eq!(t.cells(), &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        // even k: strippability undefined
        assert!(hs6_4().is_strippable().is_none());
    }

    #[test]
    fn transversal_search_finds_displaced_diagonal() {
        // cyclic row shift moves the primary transversal off the main
        // diagonal; the search must still find one
        let arr = h4_3().rows_permuted_cyclic(1);
        assert!(arr.is_strippable().is_none());
        match arr.find_primary_transversal(None) {
            StripOutcome::Found(t) => {
                let vals: BTreeSet<i32> = t
                    .cells()
                    .iter()
                    .map(|&(r, c)| arr.get(r, c).unwrap().abs())
                    .collect();
                assert_eq!(vals, (1..=4).collect());
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn transversal_search_budget() {
        let arr = h4_3().rows_permuted_cyclic(1);
        assert_eq!(arr.find_primary_transversal(Some(0)), StripOutcome::Inconclusive);
    }

    #[test]
    fn display_renders_dots() {
        let s = h4_3().to_string();
        assert_eq!(s.lines().next().unwrap(), "4 8 . -12");
    }
}
