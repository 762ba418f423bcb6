//! Integer-current assignments on Möbius and cylindrical ladder graphs,
//! their equivalence with cyclically tridiagonal `H(n;3)`, and the
//! `k = 3 (mod 4)` family obtained by augmentation.
//!
//! A ladder on `n` rungs is the cubic bipartite graph on `R ∪ C`,
//! `R = {r_1..r_n}`, `C = {c_1..c_n}`, with edges `{r_i, c_j}` for
//! `j ∈ {i-1, i, i+1}` (subscripts mod `n`, representatives `1..n`).
//! An integer-current assignment maps arcs to `±{1..3n}` bijectively,
//! antisymmetric under reversal, with the outgoing currents at every
//! vertex summing to zero (Kirchhoff's current law over the integers).

use std::collections::BTreeMap;

use crate::array::{DiagonalIndex, HeffterArray};
use crate::shiftable::augment4;
use crate::{Error, Result};

/// Which ladder the assignment was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderFamily {
    /// `4m + 1` rungs, wrap edges twisted.
    Mobius,
    /// `4m` rungs.
    Cylinder,
}

/// A vertex of the bipartition, 1-based as in the ladder tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Vertex {
    R(usize),
    C(usize),
}

/// A directed edge `(tail, head)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

/// An arc-to-integer map storing one orientation per edge; the reverse
/// orientation carries the negated current.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurrentAssignment {
    rungs: usize,
    family: Option<LadderFamily>,
    currents: BTreeMap<Arc, i32>,
}

impl CurrentAssignment {
    fn new(rungs: usize, family: Option<LadderFamily>) -> Self {
        Self { rungs, family, currents: BTreeMap::new() }
    }

    pub fn rungs(&self) -> usize {
        self.rungs
    }

    /// `None` for assignments recovered from arbitrary arrays.
    pub fn family(&self) -> Option<LadderFamily> {
        self.family
    }

    /// Stored arcs in deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Arc, &i32)> {
        self.currents.iter()
    }

    /// Current on `arc`, deriving the reversed orientation by negation.
    pub fn current(&self, arc: Arc) -> Option<i32> {
        if let Some(&v) = self.currents.get(&arc) {
            return Some(v);
        }
        let rev = Arc { tail: arc.head, head: arc.tail };
        self.currents.get(&rev).map(|&v| -v)
    }

    fn insert(&mut self, tail: Vertex, head: Vertex, value: usize) {
        let arc = Arc { tail, head };
        let rev = Arc { tail: head, head: tail };
        assert!(value >= 1, "currents are nonzero");
        assert!(
            !self.currents.contains_key(&arc) && !self.currents.contains_key(&rev),
            "edge {arc:?} assigned twice"
        );
        self.currents.insert(arc, value as i32);
    }

    /// Checks the two invariants: the stored currents are a bijection onto
    /// `{1..3n}` (so the arc map is a bijection onto `±{1..3n}`), and KCL
    /// holds at every vertex.
    pub fn validate(&self) -> Result<()> {
        let n = self.rungs;
        let edge_count = 3 * n;
        if self.currents.len() != edge_count {
            return Err(Error::InconsistentCurrents(format!(
                "{} edges stored, expected {edge_count}",
                self.currents.len()
            )));
        }
        let mut seen = vec![false; edge_count + 1];
        for (&arc, &v) in &self.currents {
            let a = v.unsigned_abs() as usize;
            if v <= 0 || a > edge_count {
                return Err(Error::InconsistentCurrents(format!(
                    "current {v} on {arc:?} outside 1..{edge_count}"
                )));
            }
            if seen[a] {
                return Err(Error::InconsistentCurrents(format!("current {a} repeats")));
            }
            seen[a] = true;
        }
        // outgoing currents per vertex; a stored arc leaves its tail and
        // its reversal leaves the head with the negated value
        let mut out: BTreeMap<Vertex, i64> = BTreeMap::new();
        for (&arc, &v) in &self.currents {
            *out.entry(arc.tail).or_insert(0) += i64::from(v);
            *out.entry(arc.head).or_insert(0) -= i64::from(v);
        }
        for (vertex, sum) in out {
            if sum != 0 {
                return Err(Error::InconsistentCurrents(format!(
                    "KCL fails at {vertex:?}: outgoing sum {sum}"
                )));
            }
        }
        Ok(())
    }
}

/// 1-based representative of `i` modulo `n`.
fn wrap(i: usize, n: usize) -> usize {
    (i - 1) % n + 1
}

/// The current assignment on the Möbius ladder with `4m + 1` rungs.
/// KCL holds over the integers, not merely modulo `24m + 7`.
pub fn mobius_currents(m: usize) -> CurrentAssignment {
    assert!(m >= 1);
    let n = 4 * m + 1;
    let r = Vertex::R;
    let c = Vertex::C;
    let mut ca = CurrentAssignment::new(n, Some(LadderFamily::Mobius));
    for i in 1..=m {
        ca.insert(r(2 * i - 1), c(2 * i), 8 * m + 3 - i);
        ca.insert(c(2 * i - 1), r(2 * i), 8 * m + 2 + i);
        ca.insert(r(2 * i), c(2 * i + 1), 12 * m + 3 - i);
        ca.insert(c(2 * i), r(2 * i + 1), 4 * m + 2 + i);
        ca.insert(r(2 * m + 2 * i - 1), c(2 * m + 2 * i), 9 * m + 2 + i);
        ca.insert(c(2 * m + 2 * i - 1), r(2 * m + 2 * i), 7 * m + 3 - i);
        ca.insert(r(2 * m + 2 * i), c(wrap(2 * m + 2 * i + 1, n)), 5 * m + 2 + i);
        ca.insert(c(2 * m + 2 * i), r(wrap(2 * m + 2 * i + 1, n)), 11 * m + 3 - i);
    }
    for i in 1..=2 * m {
        ca.insert(c(i), r(i), 4 * m + 1 - i);
    }
    for i in 1..=2 * m - 1 {
        ca.insert(r(2 * m + i + 1), c(2 * m + i + 1), 2 * m - i);
    }
    ca.insert(r(4 * m + 1), c(1), 12 * m + 3);
    ca.insert(c(4 * m + 1), r(1), 4 * m + 2);
    ca.insert(c(2 * m + 1), r(2 * m + 1), 4 * m + 1);
    ca.insert(c(4 * m + 1), r(4 * m + 1), 2 * m);
    ca
}

/// The current assignment on the cylindrical ladder with `4m` rungs.
/// KCL again holds over the integers.
pub fn cylinder_currents(m: usize) -> CurrentAssignment {
    assert!(m >= 1);
    let n = 4 * m;
    let r = Vertex::R;
    let c = Vertex::C;
    let mut ca = CurrentAssignment::new(n, Some(LadderFamily::Cylinder));
    for i in 1..=m {
        ca.insert(r(2 * i - 1), c(2 * i), 8 * m + 1 - i);
        ca.insert(c(2 * i - 1), r(2 * i), 8 * m + i);
    }
    for i in 1..m {
        ca.insert(r(2 * i), c(2 * i + 1), 12 * m - i);
        ca.insert(c(2 * i), r(2 * i + 1), 4 * m + 1 + i);
    }
    for i in 1..=m {
        ca.insert(r(2 * m - 2 + 2 * i), c(2 * m - 1 + 2 * i), 5 * m + i);
        ca.insert(c(2 * m - 2 + 2 * i), r(2 * m - 1 + 2 * i), 11 * m + 1 - i);
        ca.insert(r(2 * m - 1 + 2 * i), c(wrap(2 * m + 2 * i, n)), 9 * m + i);
        ca.insert(c(2 * m - 1 + 2 * i), r(wrap(2 * m + 2 * i, n)), 7 * m + 1 - i);
    }
    for i in 1..=2 * m - 2 {
        ca.insert(c(i + 1), r(i + 1), 4 * m - 1 - i);
    }
    for i in 1..=2 * m - 1 {
        ca.insert(r(2 * m + i), c(2 * m + i), 2 * m - i);
    }
    ca.insert(r(4 * m), c(1), 4 * m + 1);
    ca.insert(c(4 * m), r(1), 12 * m);
    ca.insert(r(1), c(1), 4 * m);
    ca.insert(r(2 * m), c(2 * m), 4 * m - 1);
    ca.insert(r(4 * m), c(4 * m), 2 * m);
    ca
}

/// Writes the assignment into an array: `a[i][j] = κ((r_i, c_j))`, with
/// arcs stored as `(c_j, r_i)` contributing the negated current. Requires
/// the arcs to form a regular bipartite graph on `rungs + rungs` vertices.
pub fn currents_to_array(ca: &CurrentAssignment) -> Result<HeffterArray> {
    let n = ca.rungs();
    let mut cells: Vec<Option<i32>> = vec![None; n * n];
    for (&arc, &v) in ca.iter() {
        let (row, col, value) = match (arc.tail, arc.head) {
            (Vertex::R(i), Vertex::C(j)) => (i, j, v),
            (Vertex::C(j), Vertex::R(i)) => (i, j, -v),
            _ => {
                return Err(Error::InconsistentCurrents(format!(
                    "arc {arc:?} does not cross the bipartition"
                )))
            }
        };
        if row < 1 || row > n || col < 1 || col > n {
            return Err(Error::InconsistentCurrents(format!(
                "arc {arc:?} names a vertex outside 1..{n}"
            )));
        }
        let slot = &mut cells[(row - 1) * n + (col - 1)];
        if slot.is_some() {
            return Err(Error::InconsistentCurrents(format!(
                "parallel edges between r_{row} and c_{col}"
            )));
        }
        *slot = Some(value);
    }
    let degree = cells[..n].iter().filter(|c| c.is_some()).count();
    for r in 0..n {
        let row_deg = (0..n).filter(|&c| cells[r * n + c].is_some()).count();
        let col_deg = (0..n).filter(|&t| cells[t * n + r].is_some()).count();
        if row_deg != degree || col_deg != degree {
            return Err(Error::InconsistentCurrents(format!(
                "graph is not regular: line {r} has degree {row_deg}/{col_deg}, expected {degree}"
            )));
        }
    }
    let rows = (0..n).map(|r| cells[r * n..(r + 1) * n].to_vec()).collect();
    HeffterArray::from_rows(n, degree, rows)
}

/// Reverses [`currents_to_array`] on a verified array: positive cells
/// become `(r, c)` arcs, negative cells `(c, r)` arcs with the absolute
/// current.
pub fn array_to_currents(arr: &HeffterArray) -> Result<CurrentAssignment> {
    if !arr.verify().is_valid() {
        return Err(Error::InvalidArray { n: arr.n(), k: arr.k() });
    }
    let mut ca = CurrentAssignment::new(arr.n(), None);
    for (r, c, v) in arr.filled_cells() {
        if v > 0 {
            ca.insert(Vertex::R(r + 1), Vertex::C(c + 1), v as usize);
        } else {
            ca.insert(Vertex::C(c + 1), Vertex::R(r + 1), (-v) as usize);
        }
    }
    Ok(ca)
}

/// Cyclically tridiagonal, strippable `H(n;3)` for `n = 0, 1 (mod 4)`,
/// `n >= 4`, via the matching ladder family.
pub fn build_h3(n: usize) -> Result<HeffterArray> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("H(n;3) needs n >= 4, got {n}")));
    }
    let ca = match n % 4 {
        0 => cylinder_currents(n / 4),
        1 => mobius_currents(n / 4),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "no H({n};3) exists: 3n = {} = {} (mod 4)",
                3 * n,
                3 * n % 4
            )))
        }
    };
    currents_to_array(&ca)
}

/// `H(n;k)` for `k = 3 (mod 4)`, `3 <= k < n`, `n = 0, 1 (mod 4)`: the
/// tridiagonal base plus `(k-3)/4` augmentations on the empty run
/// starting at `D_2`.
pub fn build_k3mod4(n: usize, k: usize) -> Result<HeffterArray> {
    if k % 4 != 3 || k < 3 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need k = 3 (mod 4) and 3 <= k < n, got ({n},{k})"
        )));
    }
    let mut arr = build_h3(n)?;
    for group in 0..(k - 3) / 4 {
        arr = augment4(&arr, DiagonalIndex(2 + 4 * group))?;
    }
    Ok(arr)
}

/// True iff every filled cell lies on `D_{n-1}`, `D_0`, or `D_1`.
pub fn is_cyclically_tridiagonal(arr: &HeffterArray) -> bool {
    let n = arr.n();
    arr.filled_cells().all(|(r, c, _)| {
        let d = (c + n - r) % n;
        d == 0 || d == 1 || d == n - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::StripOutcome;

    #[test]
    fn mobius_point_values_at_m3() {
        let ca = mobius_currents(3);
        assert_eq!(ca.current(Arc { tail: Vertex::R(1), head: Vertex::C(2) }), Some(26));
        assert_eq!(ca.current(Arc { tail: Vertex::C(13), head: Vertex::R(1) }), Some(14));
        // reversal negates
        assert_eq!(ca.current(Arc { tail: Vertex::R(1), head: Vertex::C(13) }), Some(-14));
    }

    #[test]
    fn cylinder_point_values_at_m3() {
        let ca = cylinder_currents(3);
        assert_eq!(ca.current(Arc { tail: Vertex::R(1), head: Vertex::C(1) }), Some(12));
        assert_eq!(ca.current(Arc { tail: Vertex::C(12), head: Vertex::R(1) }), Some(36));
    }

    #[test]
    fn assignments_validate_across_sizes() {
        for m in 1..=10 {
            mobius_currents(m).validate().unwrap();
            cylinder_currents(m).validate().unwrap();
        }
    }

    #[test]
    fn smallest_cylinder_gives_the_known_h4_3() {
        let arr = currents_to_array(&cylinder_currents(1)).unwrap();
        let want = HeffterArray::from_rows(
            4,
            3,
            vec![
                vec![Some(4), Some(8), None, Some(-12)],
                vec![Some(-9), Some(3), Some(6), None],
                vec![None, Some(-11), Some(1), Some(10)],
                vec![Some(5), None, Some(-7), Some(2)],
            ],
        )
        .unwrap();
        assert_eq!(arr, want);
    }

    #[test]
    fn mobius_array_spot_cells() {
        let arr = currents_to_array(&mobius_currents(3)).unwrap();
        assert_eq!(arr.get(0, 0), Some(-12));
        assert_eq!(arr.get(0, 1), Some(26));
        assert_eq!(arr.get(0, 12), Some(-14));
        assert_eq!(arr.get(12, 0), Some(39));
        assert_eq!(arr.get(12, 11), Some(-33));
        assert_eq!(arr.get(12, 12), Some(-6));
    }

    #[test]
    fn round_trip_between_arrays_and_currents() {
        for m in 1..=4 {
            let arr = currents_to_array(&mobius_currents(m)).unwrap();
            let back = currents_to_array(&array_to_currents(&arr).unwrap()).unwrap();
            assert_eq!(arr, back);
            array_to_currents(&arr).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn invalid_array_has_no_currents() {
        let bad = HeffterArray::empty(4, 3);
        assert!(matches!(array_to_currents(&bad), Err(Error::InvalidArray { .. })));
    }

    #[test]
    fn h3_structure() {
        let arr = build_h3(5).unwrap();
        assert_eq!(arr.get(0, 0), Some(-4));
        assert_eq!(arr.get(0, 1), Some(10));
        assert_eq!(arr.get(0, 4), Some(-6));
        for n in [4, 5, 8, 9, 12, 13, 16, 17, 20, 21] {
            let arr = build_h3(n).unwrap();
            let report = arr.verify();
            assert!(report.is_valid(), "H({n};3): {report}");
            assert!(is_cyclically_tridiagonal(&arr), "H({n};3) not tridiagonal");
            assert!(arr.is_strippable().is_some(), "H({n};3) main diagonal not primary");
            // one broken off-diagonal all positive, the other all negative
            let signs_on = |d: usize| -> Vec<i32> {
                (0..n).map(|r| arr.get(r, (r + d) % n).unwrap().signum()).collect()
            };
            assert!(signs_on(1).iter().all(|&s| s == 1));
            assert!(signs_on(n - 1).iter().all(|&s| s == -1));
        }
        assert!(build_h3(6).is_err());
        assert!(build_h3(7).is_err());
    }

    #[test]
    fn k3mod4_family() {
        for (n, k) in [(13, 7), (12, 11), (8, 7), (9, 7), (16, 11), (17, 15)] {
            let arr = build_k3mod4(n, k).unwrap();
            let report = arr.verify();
            assert!(report.is_valid(), "H({n};{k}): {report}");
        }
        assert_eq!(build_k3mod4(13, 3).unwrap(), build_h3(13).unwrap());
        assert!(build_k3mod4(14, 7).is_err());
        assert!(build_k3mod4(13, 5).is_err());
        assert!(build_k3mod4(13, 13).is_err());
    }

    #[test]
    fn tridiagonal_base_is_strippable_only_via_main_diagonal_by_default() {
        let arr = build_h3(12).unwrap();
        match arr.find_primary_transversal(None) {
            StripOutcome::Found(t) => {
                assert_eq!(t.cells(), arr.is_strippable().unwrap().cells());
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }
}
