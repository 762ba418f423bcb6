//! Brute-force existence oracle: exhaustive backtracking over 0/1 fill
//! patterns with the declared line sums, then over signed value
//! assignments from `{1..nk}`, pruning on partial sums and support.
//!
//! The pattern space is partitioned by the first-row mask; those units
//! run in parallel under the `parallel` feature unless
//! `deterministic_order` is set, in which case they run sequentially in
//! lexicographic order and repeated runs return the identical first
//! solution and node count. Shared state across workers is limited to a
//! node counter and a stop flag.
//!
//! The support bitset is monomorphized: instances with `nk <= 64` run on
//! a single machine word, wider ones on a block vector.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::array::HeffterArray;
use crate::dispatch::{existence_status, Verdict};

/// How much of the space to explore.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first solution.
    FirstSolution,
    /// Exhaust the space, verifying and counting every solution found;
    /// the first one is retained.
    ExhaustAll,
    /// Exhaust the space counting solutions, skipping per-solution
    /// verification; the first one is still retained for the outcome.
    CountOnly,
}

/// Search parameters.
///
/// `node_budget` bounds accepted placements; exceeding it yields
/// [`SearchOutcome::Inconclusive`], never a false `NoneExists` (the
/// cutoff is enforced within a small batch tolerance across workers).
/// `symmetry_breaking` defaults to on for [`SearchMode::FirstSolution`]
/// and off for the exhaustive modes so that counts stay raw.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub mode: SearchMode,
    pub node_budget: Option<u64>,
    pub symmetry_breaking: bool,
    pub deterministic_order: bool,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize, mode: SearchMode) -> Self {
        Self {
            n,
            k,
            mode,
            node_budget: None,
            symmetry_breaking: matches!(mode, SearchMode::FirstSolution),
            deterministic_order: true,
        }
    }
}

/// Verdict of a search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A solution exists; it passes verification.
    Found(Box<HeffterArray>),
    /// The full space was exhausted with no budget cutoff.
    NoneExists,
    /// The node budget ran out first.
    Inconclusive,
}

/// Outcome plus exploration statistics.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
    pub solutions_found: u64,
    pub elapsed: Duration,
}

/// Set of still-unused absolute values. Queries that exclude a value are
/// used while that value is being proposed but not yet consumed.
trait Support: Clone + Send {
    type Snapshot: Copy;

    fn full(nk: usize) -> Self;
    fn contains(&self, v: usize) -> bool;
    fn take(&mut self, v: usize);
    fn put(&mut self, v: usize);
    /// Sum of the `count` largest available values, excluding one.
    fn sum_top_excluding(&self, count: usize, excluding: usize) -> i64;
    /// Two distinct available values with difference `d > 0`, excluding one.
    fn has_pair_with_difference(&self, d: usize, excluding: usize) -> bool;
    /// Snapshot restricted to values `<= cap`, for iterating candidates
    /// while the set is mutated deeper in the recursion; between siblings
    /// the set is restored, so the snapshot stays accurate.
    fn snapshot_capped(&self, cap: usize) -> Self::Snapshot;
    /// Pops the largest value from the snapshot.
    fn snapshot_next(snapshot: &mut Self::Snapshot) -> Option<usize>;

    /// Two distinct available values summing to `s`, excluding one.
    fn has_pair_with_sum(&self, s: usize, nk: usize, excluding: usize) -> bool {
        if s < 3 {
            return false;
        }
        let lo = if s > nk { s - nk } else { 1 };
        let hi = (s - 1) / 2;
        for a in lo..=hi {
            let b = s - a;
            if a == excluding || b == excluding {
                continue;
            }
            if self.contains(a) && self.contains(b) {
                return true;
            }
        }
        false
    }
}

/// Single-word support for `nk <= 64`; bit `v - 1` of `bits` means `v`
/// is unused. A mirrored word (bit `nk - v`) makes pair-sum queries a
/// single shift-and-mask.
#[derive(Clone)]
struct SmallSupport {
    bits: u64,
    mirrored: u64,
    nk: u32,
}

impl Support for SmallSupport {
    type Snapshot = u64;

    #[inline]
    fn full(nk: usize) -> Self {
        let bits = if nk == 64 { u64::MAX } else { (1 << nk) - 1 };
        SmallSupport { bits, mirrored: bits, nk: nk as u32 }
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.bits & (1 << (v - 1)) != 0
    }

    #[inline]
    fn take(&mut self, v: usize) {
        self.bits &= !(1 << (v - 1));
        self.mirrored &= !(1 << (self.nk as usize - v));
    }

    #[inline]
    fn put(&mut self, v: usize) {
        self.bits |= 1 << (v - 1);
        self.mirrored |= 1 << (self.nk as usize - v);
    }

    #[inline]
    fn sum_top_excluding(&self, count: usize, excluding: usize) -> i64 {
        let mut bits = self.bits;
        if excluding != 0 {
            bits &= !(1 << (excluding - 1));
        }
        let mut sum = 0i64;
        for _ in 0..count {
            if bits == 0 {
                break;
            }
            let b = 63 - bits.leading_zeros() as u64;
            bits &= !(1 << b);
            sum += b as i64 + 1;
        }
        sum
    }

    #[inline]
    fn has_pair_with_difference(&self, d: usize, excluding: usize) -> bool {
        if d == 0 || d >= 64 {
            return false;
        }
        let mut bits = self.bits;
        if excluding != 0 {
            bits &= !(1 << (excluding - 1));
        }
        bits & (bits >> d) != 0
    }

    /// Pair `a + b = s` exists iff bit `a-1` is set in `bits` and bit
    /// `nk - (s - a)` in the mirror, which lines up as one shift.
    #[inline]
    fn has_pair_with_sum(&self, s: usize, nk: usize, excluding: usize) -> bool {
        if s < 3 || s > 2 * nk - 1 {
            return false;
        }
        let mut bits = self.bits;
        let mut mirrored = self.mirrored;
        if excluding != 0 {
            bits &= !(1 << (excluding - 1));
            mirrored &= !(1 << (nk - excluding));
        }
        let mut hits = if s <= nk {
            bits & (mirrored >> (nk + 1 - s))
        } else {
            bits & (mirrored << (s - nk - 1))
        };
        if s % 2 == 0 {
            hits &= !(1 << (s / 2 - 1));
        }
        hits != 0
    }

    #[inline]
    fn snapshot_capped(&self, cap: usize) -> u64 {
        if cap >= 64 {
            self.bits
        } else {
            self.bits & ((1u64 << cap) - 1)
        }
    }

    #[inline]
    fn snapshot_next(snapshot: &mut u64) -> Option<usize> {
        if *snapshot == 0 {
            return None;
        }
        let b = 63 - snapshot.leading_zeros() as usize;
        *snapshot &= !(1 << b);
        Some(b + 1)
    }
}

const MAX_VALUE_BITS: usize = 512;
const WIDE_BLOCKS: usize = MAX_VALUE_BITS / 64;

/// Block-vector support for `64 < nk <= 512`.
#[derive(Clone)]
struct WideSupport([u64; WIDE_BLOCKS]);

impl WideSupport {
    #[inline]
    fn cleared(&self, excluding: usize) -> [u64; WIDE_BLOCKS] {
        let mut blocks = self.0;
        if excluding != 0 {
            blocks[(excluding - 1) / 64] &= !(1 << ((excluding - 1) % 64));
        }
        blocks
    }
}

impl Support for WideSupport {
    type Snapshot = ([u64; WIDE_BLOCKS], usize);

    fn full(nk: usize) -> Self {
        let mut blocks = [0u64; WIDE_BLOCKS];
        for (i, block) in blocks.iter_mut().enumerate() {
            let low = i * 64;
            if nk >= low + 64 {
                *block = u64::MAX;
            } else if nk > low {
                *block = (1u64 << (nk - low)) - 1;
            }
        }
        WideSupport(blocks)
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.0[(v - 1) / 64] & (1 << ((v - 1) % 64)) != 0
    }

    #[inline]
    fn take(&mut self, v: usize) {
        self.0[(v - 1) / 64] &= !(1 << ((v - 1) % 64));
    }

    #[inline]
    fn put(&mut self, v: usize) {
        self.0[(v - 1) / 64] |= 1 << ((v - 1) % 64);
    }

    fn sum_top_excluding(&self, count: usize, excluding: usize) -> i64 {
        let blocks = self.cleared(excluding);
        let mut sum = 0i64;
        let mut left = count;
        for bi in (0..WIDE_BLOCKS).rev() {
            let mut bits = blocks[bi];
            while bits != 0 {
                if left == 0 {
                    return sum;
                }
                let b = 63 - bits.leading_zeros() as usize;
                bits &= !(1 << b);
                sum += (bi * 64 + b + 1) as i64;
                left -= 1;
            }
        }
        sum
    }

    fn has_pair_with_difference(&self, d: usize, excluding: usize) -> bool {
        if d == 0 || d >= MAX_VALUE_BITS {
            return false;
        }
        let blocks = self.cleared(excluding);
        let (word_shift, bit_shift) = (d / 64, d % 64);
        for bi in 0..WIDE_BLOCKS - word_shift {
            let mut shifted = blocks[bi + word_shift] >> bit_shift;
            if bit_shift != 0 && bi + word_shift + 1 < WIDE_BLOCKS {
                shifted |= blocks[bi + word_shift + 1] << (64 - bit_shift);
            }
            if blocks[bi] & shifted != 0 {
                return true;
            }
        }
        false
    }

    fn snapshot_capped(&self, cap: usize) -> Self::Snapshot {
        let mut blocks = self.0;
        for (i, block) in blocks.iter_mut().enumerate() {
            let low = i * 64;
            if cap <= low {
                *block = 0;
            } else if cap < low + 64 {
                *block &= (1u64 << (cap - low)) - 1;
            }
        }
        (blocks, WIDE_BLOCKS)
    }

    fn snapshot_next(snapshot: &mut Self::Snapshot) -> Option<usize> {
        let (blocks, upper) = snapshot;
        for bi in (0..*upper).rev() {
            if blocks[bi] != 0 {
                let b = 63 - blocks[bi].leading_zeros() as usize;
                blocks[bi] &= !(1 << b);
                *upper = bi + 1;
                return Some(bi * 64 + b + 1);
            }
        }
        *upper = 0;
        None
    }
}

/// All `n`-bit masks with exactly `k` set bits, ascending.
fn row_masks(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut mask = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while mask < limit {
        out.push(mask);
        if k == n {
            break;
        }
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

struct Runner<'a, S: Support> {
    n: usize,
    k: usize,
    nk: usize,
    mode: SearchMode,
    symmetry: bool,
    masks: &'a [u64],
    budget: Option<u64>,
    shared_nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    budget_flag: &'a AtomicBool,
    flush_every: u64,
    // work splitting: this runner only explores candidates of each
    // pattern's first free cell whose index is `residue` modulo `stripes`
    stripes: u64,
    residue: u64,
    stripe_spent: bool,
    // pattern state
    rows: Vec<u64>,
    col_count: Vec<u8>,
    // value state, rebuilt per completed pattern
    cells: Vec<(u32, u32)>,
    values: Vec<i32>,
    row_sum: Vec<i32>,
    col_sum: Vec<i32>,
    row_left: Vec<u8>,
    col_left: Vec<u8>,
    avail: S,
    // local bookkeeping
    nodes_local: u64,
    solutions: u64,
    first: Option<HeffterArray>,
    stopped: bool,
}

impl<'a, S: Support> Runner<'a, S> {
    fn new(
        cfg: &SearchConfig,
        masks: &'a [u64],
        shared_nodes: &'a AtomicU64,
        stop: &'a AtomicBool,
        budget_flag: &'a AtomicBool,
    ) -> Self {
        let (n, k) = (cfg.n, cfg.k);
        Self {
            n,
            k,
            nk: n * k,
            mode: cfg.mode,
            symmetry: cfg.symmetry_breaking,
            masks,
            budget: cfg.node_budget,
            shared_nodes,
            stop,
            budget_flag,
            flush_every: if cfg.node_budget.is_some() { 64 } else { 8192 },
            stripes: 1,
            residue: 0,
            stripe_spent: false,
            rows: Vec::with_capacity(n),
            col_count: vec![0; n],
            cells: Vec::with_capacity(n * k),
            values: vec![0; n * k],
            row_sum: vec![0; n],
            col_sum: vec![0; n],
            row_left: vec![0; n],
            col_left: vec![0; n],
            avail: S::full(n * k),
            nodes_local: 0,
            solutions: 0,
            first: None,
            stopped: false,
        }
    }

    /// Publishes local node counts. The budget is only checked on
    /// mid-search flushes: a search that ran to completion keeps its
    /// verdict even if the final count nominally exceeds the budget.
    fn flush_nodes(&mut self, check_budget: bool) {
        if self.nodes_local > 0 {
            let total = self.shared_nodes.fetch_add(self.nodes_local, Ordering::Relaxed)
                + self.nodes_local;
            self.nodes_local = 0;
            if check_budget {
                if let Some(budget) = self.budget {
                    if total > budget {
                        self.budget_flag.store(true, Ordering::Relaxed);
                        self.stop.store(true, Ordering::Relaxed);
                    }
                }
            }
        }
        if self.stop.load(Ordering::Relaxed) {
            self.stopped = true;
        }
    }

    #[inline]
    fn node(&mut self) {
        self.nodes_local += 1;
        if self.nodes_local >= self.flush_every {
            self.flush_nodes(true);
        }
    }

    /// Explores one work unit: a first-row mask, restricted to one
    /// stripe of each pattern's first free cell.
    fn run_unit(&mut self, first_mask: u64, stripes: u64, residue: u64) {
        self.flush_nodes(true);
        if self.stopped {
            return;
        }
        self.stripes = stripes;
        self.residue = residue;
        self.apply_row(first_mask);
        self.extend_pattern(1);
        self.unapply_row(first_mask);
    }

    fn apply_row(&mut self, mask: u64) {
        self.rows.push(mask);
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.col_count[c] += 1;
        }
    }

    fn unapply_row(&mut self, mask: u64) {
        self.rows.pop();
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.col_count[c] -= 1;
        }
    }

    fn extend_pattern(&mut self, r: usize) {
        if self.stopped {
            return;
        }
        let n = self.n;
        if r == n {
            debug_assert!(self.col_count.iter().all(|&c| c as usize == self.k));
            self.complete_pattern();
            return;
        }
        // columns that must appear in every remaining row, and columns
        // that are already full
        let remaining = n - r;
        let mut required = 0u64;
        let mut forbidden = 0u64;
        for c in 0..n {
            let deficit = self.k - self.col_count[c] as usize;
            if deficit == remaining {
                required |= 1 << c;
            } else if deficit == 0 {
                forbidden |= 1 << c;
            }
        }
        for i in 0..self.masks.len() {
            let mask = self.masks[i];
            if mask & required != required || mask & forbidden != 0 {
                continue;
            }
            self.node();
            self.apply_row(mask);
            self.extend_pattern(r + 1);
            self.unapply_row(mask);
            if self.stopped {
                return;
            }
        }
    }

    /// True iff the pattern is lexicographically larger than its
    /// transpose, in which case the transposed pattern covers this class.
    fn skip_by_transpose(&self) -> bool {
        let n = self.n;
        for r in 0..n {
            let mut transposed = 0u64;
            for (j, &row) in self.rows.iter().enumerate() {
                transposed |= ((row >> r) & 1) << j;
            }
            match self.rows[r].cmp(&transposed) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => return true,
                std::cmp::Ordering::Equal => {}
            }
        }
        false
    }

    /// Emits the pattern cells line by line, always completing the row or
    /// column with the fewest cells still to emit. Interleaving rows and
    /// columns this way surfaces forced cells as early as possible.
    fn build_cell_order(&mut self) {
        let n = self.n;
        self.cells.clear();
        let mut row_open = vec![0u8; n];
        let mut col_open = vec![0u8; n];
        for (r, &mask) in self.rows.iter().enumerate() {
            row_open[r] = mask.count_ones() as u8;
            let mut bits = mask;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                col_open[c] += 1;
            }
        }
        let mut emitted = vec![0u64; n];
        while self.cells.len() < self.nk {
            let mut best: Option<(u8, bool, usize)> = None;
            for r in 0..n {
                if row_open[r] > 0 && best.map_or(true, |(open, _, _)| row_open[r] < open) {
                    best = Some((row_open[r], true, r));
                }
            }
            for c in 0..n {
                if col_open[c] > 0 && best.map_or(true, |(open, _, _)| col_open[c] < open) {
                    best = Some((col_open[c], false, c));
                }
            }
            let (_, is_row, index) = best.expect("open cells remain");
            if is_row {
                let mut bits = self.rows[index] & !emitted[index];
                while bits != 0 {
                    let c = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    self.cells.push((index as u32, c as u32));
                    emitted[index] |= 1 << c;
                    row_open[index] -= 1;
                    col_open[c] -= 1;
                }
            } else {
                for r in 0..n {
                    if self.rows[r] & (1 << index) != 0 && emitted[r] & (1 << index) == 0 {
                        self.cells.push((r as u32, index as u32));
                        emitted[r] |= 1 << index;
                        row_open[r] -= 1;
                        col_open[index] -= 1;
                    }
                }
            }
        }
    }

    fn complete_pattern(&mut self) {
        if self.symmetry && self.skip_by_transpose() {
            return;
        }
        self.node();
        self.build_cell_order();
        self.stripe_spent = false;
        self.row_sum.fill(0);
        self.col_sum.fill(0);
        self.row_left.fill(self.k as u8);
        self.col_left.fill(self.k as u8);
        self.place(0);
    }

    #[inline]
    fn value_ok(&self, v: i32) -> bool {
        let a = v.unsigned_abs() as usize;
        if a == 0 || a > self.nk || !self.avail.contains(a) {
            return false;
        }
        // global negation is quotiented by pinning the sign of nk
        !(self.symmetry && v == -(self.nk as i32))
    }

    #[inline]
    fn line_feasible(&self, sum: i32, left_after: usize, excluding: usize) -> bool {
        let t = sum.unsigned_abs() as usize;
        match left_after {
            0 => sum == 0,
            1 => t >= 1 && t <= self.nk && t != excluding && self.avail.contains(t),
            2 => {
                // two distinct values with +-a +-b = -sum; impossible for
                // sum 0 since absolute values cannot repeat
                if sum == 0 {
                    return false;
                }
                self.avail.has_pair_with_sum(t, self.nk, excluding)
                    || self.avail.has_pair_with_difference(t, excluding)
            }
            m => i64::from(sum.abs()) <= self.avail.sum_top_excluding(m, excluding),
        }
    }

    fn place(&mut self, idx: usize) {
        if self.stopped {
            return;
        }
        if idx == self.cells.len() {
            self.record_solution();
            return;
        }
        let (r, c) = self.cells[idx];
        let (r, c) = (r as usize, c as usize);
        let row_last = self.row_left[r] == 1;
        let col_last = self.col_left[c] == 1;
        if row_last || col_last {
            let v = if row_last { -self.row_sum[r] } else { -self.col_sum[c] };
            if !self.value_ok(v) {
                return;
            }
            let a = v.unsigned_abs() as usize;
            if row_last && col_last {
                if v != -self.col_sum[c] {
                    return;
                }
            } else if row_last {
                if !self.line_feasible(self.col_sum[c] + v, self.col_left[c] as usize - 1, a) {
                    return;
                }
            } else if !self.line_feasible(self.row_sum[r] + v, self.row_left[r] as usize - 1, a) {
                return;
            }
            self.node();
            self.do_place(idx, r, c, v);
            return;
        }
        // free cell: try unused absolute values, largest first. Lines
        // with three or more cells still open are bounded per node by the
        // top-sum window; tighter lines get exact per-candidate checks.
        let row_after = self.row_left[r] as usize - 1;
        let col_after = self.col_left[c] as usize - 1;
        let row_sum = self.row_sum[r];
        let col_sum = self.col_sum[c];
        let mut cap = self.nk as i64;
        let row_bound = if row_after >= 3 {
            let b = self.avail.sum_top_excluding(row_after, 0);
            cap = cap.min(i64::from(row_sum.abs()) + b);
            b
        } else {
            0
        };
        let col_bound = if col_after >= 3 {
            let b = self.avail.sum_top_excluding(col_after, 0);
            cap = cap.min(i64::from(col_sum.abs()) + b);
            b
        } else {
            0
        };
        if cap <= 0 {
            return;
        }
        let striping = self.stripes > 1 && !self.stripe_spent;
        if striping {
            self.stripe_spent = true;
        }
        let mut candidate_index = 0u64;
        let mut snapshot = self.avail.snapshot_capped(cap.min(self.nk as i64) as usize);
        while let Some(a) = S::snapshot_next(&mut snapshot) {
            for v in [a as i32, -(a as i32)] {
                if striping {
                    let mine = candidate_index % self.stripes == self.residue;
                    candidate_index += 1;
                    if !mine {
                        continue;
                    }
                }
                if self.symmetry && a == self.nk && v < 0 {
                    continue;
                }
                let row_ok = if row_after >= 3 {
                    i64::from((row_sum + v).abs()) <= row_bound
                } else {
                    self.line_feasible(row_sum + v, row_after, a)
                };
                if !row_ok {
                    continue;
                }
                let col_ok = if col_after >= 3 {
                    i64::from((col_sum + v).abs()) <= col_bound
                } else {
                    self.line_feasible(col_sum + v, col_after, a)
                };
                if !col_ok {
                    continue;
                }
                self.node();
                self.do_place(idx, r, c, v);
                if self.stopped {
                    return;
                }
            }
        }
    }

    fn do_place(&mut self, idx: usize, r: usize, c: usize, v: i32) {
        let a = v.unsigned_abs() as usize;
        self.avail.take(a);
        self.row_sum[r] += v;
        self.col_sum[c] += v;
        self.row_left[r] -= 1;
        self.col_left[c] -= 1;
        self.values[idx] = v;
        self.place(idx + 1);
        self.avail.put(a);
        self.row_sum[r] -= v;
        self.col_sum[c] -= v;
        self.row_left[r] += 1;
        self.col_left[c] += 1;
    }

    /// Allocation-free check of all three axioms on the completed
    /// assignment, used as a soundness assert during exhaustive runs.
    fn assignment_is_valid(&self) -> bool {
        let mut row_count = [0usize; 64];
        let mut col_count = [0usize; 64];
        let mut row_total = [0i64; 64];
        let mut col_total = [0i64; 64];
        let mut seen = [0u64; MAX_VALUE_BITS / 64];
        for (idx, &(r, c)) in self.cells.iter().enumerate() {
            let v = self.values[idx];
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > self.nk {
                return false;
            }
            if seen[(a - 1) / 64] & (1 << ((a - 1) % 64)) != 0 {
                return false;
            }
            seen[(a - 1) / 64] |= 1 << ((a - 1) % 64);
            row_count[r as usize] += 1;
            col_count[c as usize] += 1;
            row_total[r as usize] += i64::from(v);
            col_total[c as usize] += i64::from(v);
        }
        (0..self.n).all(|i| {
            row_count[i] == self.k
                && col_count[i] == self.k
                && row_total[i] == 0
                && col_total[i] == 0
        })
    }

    fn record_solution(&mut self) {
        self.solutions += 1;
        if matches!(self.mode, SearchMode::ExhaustAll) {
            assert!(self.assignment_is_valid(), "search produced an invalid solution");
        }
        if self.first.is_none() {
            let mut arr = HeffterArray::empty(self.n, self.k);
            for (idx, &(r, c)) in self.cells.iter().enumerate() {
                arr.set(r as usize, c as usize, self.values[idx]);
            }
            self.first = Some(arr);
        }
        if matches!(self.mode, SearchMode::FirstSolution) {
            self.stop.store(true, Ordering::Relaxed);
            self.stopped = true;
        }
    }

    fn finish(mut self) -> (Option<HeffterArray>, u64) {
        self.flush_nodes(false);
        (self.first.take(), self.solutions)
    }
}

fn run_search<S: Support>(
    config: &SearchConfig,
    masks: &[u64],
    shared_nodes: &AtomicU64,
    stop: &AtomicBool,
    budget_flag: &AtomicBool,
) -> (Option<HeffterArray>, u64) {
    let sequential = config.deterministic_order || !cfg!(feature = "parallel");
    if sequential {
        let mut runner = Runner::<S>::new(config, masks, shared_nodes, stop, budget_flag);
        for &mask in masks {
            runner.run_unit(mask, 1, 0);
            if runner.stopped {
                break;
            }
        }
        runner.finish()
    } else {
        run_units_parallel::<S>(config, masks, shared_nodes, stop, budget_flag)
    }
}

#[cfg(feature = "parallel")]
fn run_units_parallel<S: Support>(
    config: &SearchConfig,
    masks: &[u64],
    shared_nodes: &AtomicU64,
    stop: &AtomicBool,
    budget_flag: &AtomicBool,
) -> (Option<HeffterArray>, u64) {
    // split each mask into candidate stripes until there is enough
    // work granularity for the pool; solution totals are unaffected
    let mut stripes = 1u64;
    let target = 4 * rayon::current_num_threads().max(1) as u64;
    while (masks.len() as u64) * stripes < target && stripes < 64 {
        stripes *= 2;
    }
    let units: Vec<(u64, u64)> = masks
        .iter()
        .flat_map(|&mask| (0..stripes).map(move |residue| (mask, residue)))
        .collect();
    let outcomes: Vec<(Option<HeffterArray>, u64)> = units
        .par_iter()
        .map(|&(mask, residue)| {
            let mut runner = Runner::<S>::new(config, masks, shared_nodes, stop, budget_flag);
            runner.run_unit(mask, stripes, residue);
            runner.finish()
        })
        .collect();
    let mut first = None;
    let mut solutions = 0;
    for (unit_first, unit_solutions) in outcomes {
        solutions += unit_solutions;
        if first.is_none() {
            first = unit_first;
        }
    }
    (first, solutions)
}

#[cfg(not(feature = "parallel"))]
fn run_units_parallel<S: Support>(
    _config: &SearchConfig,
    _masks: &[u64],
    _shared_nodes: &AtomicU64,
    _stop: &AtomicBool,
    _budget_flag: &AtomicBool,
) -> (Option<HeffterArray>, u64) {
    unreachable!("parallel lane is gated on the feature")
}

/// Runs the configured search. Found arrays are re-verified before being
/// returned.
pub fn solve(config: &SearchConfig) -> SearchResult {
    let start = Instant::now();
    assert!(config.n >= 1 && config.n <= 63, "search supports 1 <= n <= 63");
    assert!(config.k >= 1, "search needs k >= 1");
    assert!(
        config.n * config.k <= MAX_VALUE_BITS,
        "search supports nk <= {MAX_VALUE_BITS}"
    );
    let masks = row_masks(config.n, config.k);
    let shared_nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let budget_flag = AtomicBool::new(false);

    let (first, solutions) = if config.n * config.k <= 64 {
        run_search::<SmallSupport>(config, &masks, &shared_nodes, &stop, &budget_flag)
    } else {
        run_search::<WideSupport>(config, &masks, &shared_nodes, &stop, &budget_flag)
    };

    let budget_hit = budget_flag.load(Ordering::Relaxed);
    let found_first = matches!(config.mode, SearchMode::FirstSolution) && first.is_some();
    let outcome = if budget_hit && !found_first {
        SearchOutcome::Inconclusive
    } else if let Some(arr) = first {
        let report = arr.verify();
        assert!(report.is_valid(), "search returned an invalid solution: {report}");
        SearchOutcome::Found(Box::new(arr))
    } else if budget_hit {
        SearchOutcome::Inconclusive
    } else {
        SearchOutcome::NoneExists
    };
    SearchResult {
        outcome,
        nodes_explored: shared_nodes.load(Ordering::Relaxed),
        solutions_found: solutions,
        elapsed: start.elapsed(),
    }
}

/// Errors from [`crosscheck`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrosscheckError {
    /// The search hit its node budget; the comparison is indeterminate,
    /// which is distinct from a disagreement.
    #[error("search exhausted its node budget before reaching a verdict")]
    Inconclusive,
    /// The dispatcher verdict is not one the oracle can confirm or refute.
    #[error("dispatcher verdict {0} cannot be crosschecked")]
    Undecided(Verdict),
}

/// Compares the oracle's verdict with the dispatcher's under the given
/// mode and budget. `true` means they agree.
pub fn crosscheck_with(
    n: usize,
    k: usize,
    mode: SearchMode,
    node_budget: Option<u64>,
) -> Result<bool, CrosscheckError> {
    let status = existence_status(n, k);
    let expected = match status.verdict {
        Verdict::Exists => true,
        Verdict::DoesNotExist => false,
        other => return Err(CrosscheckError::Undecided(other)),
    };
    let mut config = SearchConfig::new(n, k, mode);
    config.node_budget = node_budget;
    config.deterministic_order = false;
    let result = solve(&config);
    match result.outcome {
        SearchOutcome::Found(_) => Ok(expected),
        SearchOutcome::NoneExists => Ok(!expected),
        SearchOutcome::Inconclusive => Err(CrosscheckError::Inconclusive),
    }
}

/// [`crosscheck_with`] under full exhaustion and no budget.
pub fn crosscheck(n: usize, k: usize) -> Result<bool, CrosscheckError> {
    crosscheck_with(n, k, SearchMode::ExhaustAll, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_h3_3_by_exhaustion() {
        let result = solve(&SearchConfig::new(3, 3, SearchMode::ExhaustAll));
        assert!(matches!(result.outcome, SearchOutcome::NoneExists));
        assert_eq!(result.solutions_found, 0);
        assert!(result.nodes_explored > 0);
    }

    #[test]
    fn finds_h4_3() {
        let result = solve(&SearchConfig::new(4, 3, SearchMode::FirstSolution));
        match result.outcome {
            SearchOutcome::Found(arr) => assert!(arr.verify().is_valid()),
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn first_solution_is_deterministic() {
        let cfg = SearchConfig::new(4, 4, SearchMode::FirstSolution);
        let a = solve(&cfg);
        let b = solve(&cfg);
        assert_eq!(a.nodes_explored, b.nodes_explored);
        match (a.outcome, b.outcome) {
            (SearchOutcome::Found(x), SearchOutcome::Found(y)) => assert_eq!(x, y),
            other => panic!("expected two Found outcomes, got {other:?}"),
        }
    }

    #[test]
    fn budget_cutoff_is_inconclusive() {
        let mut cfg = SearchConfig::new(5, 4, SearchMode::ExhaustAll);
        cfg.node_budget = Some(10);
        let result = solve(&cfg);
        assert!(matches!(result.outcome, SearchOutcome::Inconclusive));
    }

    #[test]
    fn k_larger_than_n_has_no_patterns() {
        let result = solve(&SearchConfig::new(3, 4, SearchMode::ExhaustAll));
        assert!(matches!(result.outcome, SearchOutcome::NoneExists));
        assert_eq!(result.nodes_explored, 0);
    }

    #[test]
    fn wide_support_matches_small_support() {
        // same instance forced through both bitset widths
        let cfg = SearchConfig::new(4, 3, SearchMode::CountOnly);
        let masks = row_masks(4, 3);
        let nodes = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        let flag = AtomicBool::new(false);
        let (small_first, small_count) =
            run_search::<SmallSupport>(&cfg, &masks, &nodes, &stop, &flag);
        let nodes2 = AtomicU64::new(0);
        let stop2 = AtomicBool::new(false);
        let flag2 = AtomicBool::new(false);
        let (wide_first, wide_count) =
            run_search::<WideSupport>(&cfg, &masks, &nodes2, &stop2, &flag2);
        assert_eq!(small_count, wide_count);
        assert_eq!(small_first, wide_first);
        assert_eq!(
            nodes.load(Ordering::Relaxed),
            nodes2.load(Ordering::Relaxed)
        );
    }

    #[test]
    fn crosscheck_agrees_on_small_cells() {
        assert!(crosscheck(3, 3).unwrap());
        assert!(crosscheck(4, 3).unwrap());
    }

    #[test]
    fn crosscheck_rejects_undecided_classes() {
        assert_eq!(
            crosscheck(28, 5),
            Err(CrosscheckError::Undecided(Verdict::Unknown))
        );
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_counts_agree() {
        let mut seq = SearchConfig::new(4, 3, SearchMode::CountOnly);
        seq.deterministic_order = true;
        let mut par = seq.clone();
        par.deterministic_order = false;
        let a = solve(&seq);
        let b = solve(&par);
        assert_eq!(a.solutions_found, b.solutions_found);
        assert!(matches!(a.outcome, SearchOutcome::Found(_)));
        assert!(matches!(b.outcome, SearchOutcome::Found(_)));
    }
}
