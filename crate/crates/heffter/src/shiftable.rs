//! Shiftable constructions: 2x2 block tiles for even side and even `k`,
//! the four-diagonal `H_s(n;4)`, and the add-four-diagonals augmentation
//! they enable.

use crate::array::{DiagonalIndex, HeffterArray};
use crate::{Error, Result};

/// The three 2x2 tile shapes used by the even/even construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TileKind {
    A,
    B,
    C,
}

/// A 2x2 signed block with support `{4i+1, ..., 4i+4}`.
///
/// Row-sum signatures: A = (1, -1), B = (-1, 1), C = (-2, 2).
/// Column-sum signatures: A = (2, -2), B = (-2, 2), C = (-1, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockTile {
    pub kind: TileKind,
    pub index: usize,
    cells: [[i32; 2]; 2],
}

impl BlockTile {
    pub fn cells(&self) -> &[[i32; 2]; 2] {
        &self.cells
    }

    pub fn row_sums(&self) -> [i32; 2] {
        [self.cells[0][0] + self.cells[0][1], self.cells[1][0] + self.cells[1][1]]
    }

    pub fn col_sums(&self) -> [i32; 2] {
        [self.cells[0][0] + self.cells[1][0], self.cells[0][1] + self.cells[1][1]]
    }
}

/// The tile `A_i`, `B_i`, or `C_i`.
pub fn tile(kind: TileKind, index: usize) -> BlockTile {
    let i = 4 * index as i32;
    let cells = match kind {
        TileKind::A => [[-1 - i, 2 + i], [3 + i, -4 - i]],
        TileKind::B => [[1 + i, -2 - i], [-3 - i, 4 + i]],
        TileKind::C => [[1 + i, -3 - i], [-2 - i, 4 + i]],
    };
    BlockTile { kind, index, cells }
}

fn place_tile(arr: &mut HeffterArray, t: &BlockTile, block_row: usize, block_col: usize) {
    for (p, row) in t.cells().iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            let (r, c) = (2 * block_row + p, 2 * block_col + q);
            debug_assert!(arr.get(r, c).is_none(), "tile placed on a filled cell");
            arr.set(r, c, v);
        }
    }
}

/// Builds a shiftable `H_s(n;k)` for even `n` and `k` with `4 <= k <= n`.
///
/// Tiles are laid on broken block-diagonals of the `(n/2) x (n/2)` block
/// grid. For `k = 0 (mod 4)`, `k/4` diagonals of A tiles pair with `k/4`
/// diagonals of B tiles; aligned A/B pairs cancel in rows and columns.
/// For `k = 2 (mod 4)`, every block-row holds `A, C, A` on diagonals
/// 0..2, the top-row swap repairs the `+-3` column sums, and the
/// remaining diagonals are filled with paired A/B tiles as before.
pub fn build_even_even(n: usize, k: usize) -> Result<HeffterArray> {
    if n % 2 != 0 || k % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "H_s(n;k) with 2x2 tiles needs n and k even, got ({n},{k})"
        )));
    }
    if k < 4 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 4 <= k <= n, got ({n},{k})"
        )));
    }
    let m = n / 2;
    let mut arr = HeffterArray::empty(n, k);

    if k % 4 == 0 {
        let q = k / 4;
        let mut index = 0;
        for d in 0..2 * q {
            let kind = if d < q { TileKind::A } else { TileKind::B };
            for i in 0..m {
                place_tile(&mut arr, &tile(kind, index), i, (i + d + 1) % m);
                index += 1;
            }
        }
    } else {
        // k = 2r with r odd
        let r = k / 2;
        if m < 3 {
            return Err(Error::InvalidParameter(format!(
                "the k = 2 (mod 4) layout needs n >= 6, got n = {n}"
            )));
        }
        for i in 0..m {
            place_tile(&mut arr, &tile(TileKind::A, 3 * i), i, i);
            place_tile(&mut arr, &tile(TileKind::C, 3 * i + 1), i, (i + 1) % m);
            place_tile(&mut arr, &tile(TileKind::A, 3 * i + 2), i, (i + 2) % m);
        }
        // The upper-left cell of C_{3i+1} exceeds the upper-right cell of
        // A_{3i} by exactly 3; swapping them in the top grid row of every
        // block-row zeroes all column sums.
        for i in 0..m {
            let row = 2 * i;
            let ca = 2 * i + 1;
            let cc = (2 * (i + 1)) % n;
            let va = arr.get(row, ca).unwrap();
            let vc = arr.get(row, cc).unwrap();
            arr.set(row, ca, vc);
            arr.set(row, cc, va);
        }
        let extra = (r - 3) / 2;
        let mut index = 3 * m;
        for e in 0..2 * extra {
            let kind = if e < extra { TileKind::A } else { TileKind::B };
            for i in 0..m {
                place_tile(&mut arr, &tile(kind, index), i, (i + 3 + e) % m);
                index += 1;
            }
        }
    }
    Ok(arr)
}

/// The deterministic four-diagonal `H_s(n;4)`, `n >= 4`.
///
/// With 1-based labels: column 1 holds `1, -(n+1), -(2n+1), 3n+1` in rows
/// 1..4; column `c` for `2 <= c <= n-1` holds `c, -(2n+c), -(n+c), 3n+c`
/// in rows `c..c+3` (mod n); column `n` holds `n, -2n, -3n, 4n` in rows
/// `n, 1, 2, 3`. All filled cells land on four consecutive cyclic
/// diagonals, which is what makes the augmentation below possible.
pub fn build_hs4(n: usize) -> Result<HeffterArray> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("H_s(n;4) needs n >= 4, got {n}")));
    }
    let ni = n as i32;
    let mut arr = HeffterArray::empty(n, 4);
    arr.set(0, 0, 1);
    arr.set(1, 0, -(ni + 1));
    arr.set(2, 0, -(2 * ni + 1));
    arr.set(3, 0, 3 * ni + 1);
    for c in 1..n - 1 {
        let v = (c + 1) as i32;
        arr.set(c, c, v);
        arr.set((c + 1) % n, c, -(2 * ni + v));
        arr.set((c + 2) % n, c, -(ni + v));
        arr.set((c + 3) % n, c, 3 * ni + v);
    }
    arr.set(n - 1, n - 1, ni);
    arr.set(0, n - 1, -2 * ni);
    arr.set(1, n - 1, -3 * ni);
    arr.set(2, n - 1, 4 * ni);
    Ok(arr)
}

/// Overlays a freshly built, row-rotated, support-shifted `H_s(n;4)` onto
/// the four consecutive empty diagonals `D_start .. D_{start+3}` of
/// `host`, yielding an `H(n;k+4)`. Shiftability of the host is preserved.
pub fn augment4(host: &HeffterArray, start: DiagonalIndex) -> Result<HeffterArray> {
    let n = host.n();
    let k = host.k();
    let s = start.0 % n;
    for off in 0..4 {
        let d = (s + off) % n;
        if !host.diagonal_is_empty(d) {
            return Err(Error::DiagonalOccupied(d));
        }
    }
    if k + 4 > n {
        return Err(Error::InvalidParameter(format!(
            "cannot augment H({n};{k}) beyond k = n"
        )));
    }
    // the H_s(n;4) occupies D_{n-3}..D_0; rotate rows so it lands on
    // D_s..D_{s+3}, then shift its support past {1..nk}
    let patch = build_hs4(n)?
        .rows_permuted_cyclic((2 * n - 3 - s) % n)
        .shifted((n * k) as i32);
    let mut out = host.with_declared_k(k + 4);
    for (r, c, v) in patch.filled_cells() {
        debug_assert!(out.get(r, c).is_none());
        out.set(r, c, v);
    }
    Ok(out)
}

/// `H_s(n;k)` for `k = 0 (mod 4)`, `4 <= k <= n`: the four-diagonal base
/// plus `k/4 - 1` augmentations on consecutive groups of its empty run.
pub fn build_hs_4k(n: usize, k: usize) -> Result<HeffterArray> {
    if k % 4 != 0 || k < 4 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need k = 0 (mod 4) and 4 <= k <= n, got ({n},{k})"
        )));
    }
    let mut arr = build_hs4(n)?;
    for group in 0..k / 4 - 1 {
        arr = augment4(&arr, DiagonalIndex(1 + 4 * group))?;
    }
    Ok(arr)
}
