//! Single entry point mapping `(n, k)` to an existence verdict and, when
//! solved, a constructed array with its route.

use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::array::HeffterArray;
use crate::boosters::{self, K1Route};
use crate::ladder;
use crate::shiftable;

/// Four-valued existence verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Exists,
    DoesNotExist,
    Unknown,
    OutOfScope,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Exists => write!(f, "Exists"),
            Verdict::DoesNotExist => write!(f, "DoesNotExist"),
            Verdict::Unknown => write!(f, "Unknown"),
            Verdict::OutOfScope => write!(f, "OutOfScope"),
        }
    }
}

/// Identifier of the construction used for an existing class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// The deterministic `H_s(n;4)` on four consecutive diagonals.
    FourDiagonal,
    /// Four-diagonal base plus repeated augmentation, `k = 0 (mod 4)`.
    FourDiagonalRepeated,
    /// 2x2 tile layout for `n`, `k` even with `k = 2 (mod 4)`.
    EvenTiles,
    /// Möbius-ladder currents, `k = 3`, `n = 1 (mod 4)`.
    MobiusLadder,
    /// Cylindrical-ladder currents, `k = 3`, `n = 0 (mod 4)`.
    CylinderLadder,
    /// Ladder base plus augmentation, `k = 3 (mod 4)`, `n = 1 (mod 4)`.
    MobiusLadderAugmented,
    /// Ladder base plus augmentation, `k = 3 (mod 4)`, `n = 0 (mod 4)`.
    CylinderLadderAugmented,
    /// One of the three stored sporadic arrays.
    StoredLiteral,
    /// 3x3 filler composition plus augmentation.
    Filler33Composition,
    /// 4x4 filler composition plus augmentation.
    Filler43Composition,
    /// Booster block construction.
    BoosterBlocks,
}

impl Route {
    /// Routes that always produce shiftable arrays.
    pub fn promises_shiftable(self) -> bool {
        matches!(
            self,
            Route::FourDiagonal | Route::FourDiagonalRepeated | Route::EvenTiles
        )
    }

    /// Routes whose output is a cyclically tridiagonal `H(n;3)`.
    pub fn is_ladder_base(self) -> bool {
        matches!(self, Route::MobiusLadder | Route::CylinderLadder)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Route::FourDiagonal => "four-diagonal",
            Route::FourDiagonalRepeated => "four-diagonal+add4",
            Route::EvenTiles => "even-tiles",
            Route::MobiusLadder => "mobius-ladder",
            Route::CylinderLadder => "cylinder-ladder",
            Route::MobiusLadderAugmented => "mobius-ladder+add4",
            Route::CylinderLadderAugmented => "cylinder-ladder+add4",
            Route::StoredLiteral => "stored-literal",
            Route::Filler33Composition => "filler33+add4",
            Route::Filler43Composition => "filler43+add4",
            Route::BoosterBlocks => "booster-blocks",
        };
        write!(f, "{name}")
    }
}

/// Verdict plus route and a human-readable congruence explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceStatus {
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub reason: String,
}

impl ExistenceStatus {
    fn exists(route: Route, reason: impl Into<String>) -> Self {
        Self { verdict: Verdict::Exists, route: Some(route), reason: reason.into() }
    }

    fn without_route(verdict: Verdict, reason: impl Into<String>) -> Self {
        Self { verdict, route: None, reason: reason.into() }
    }
}

/// Classifies `(n, k)` per the necessary congruence conditions and the
/// solved construction classes.
pub fn existence_status(n: usize, k: usize) -> ExistenceStatus {
    if k < 3 {
        return ExistenceStatus::without_route(
            Verdict::OutOfScope,
            format!("k = {k} < 3 filled cells per line is out of scope"),
        );
    }
    if k > n {
        return ExistenceStatus::without_route(
            Verdict::OutOfScope,
            format!("k = {k} exceeds the side length n = {n}"),
        );
    }
    let nk = n * k;
    if nk % 4 == 1 || nk % 4 == 2 {
        return ExistenceStatus::without_route(
            Verdict::DoesNotExist,
            format!("nk = {nk} = {} (mod 4); an H(n;k) needs nk = 0 or 3 (mod 4)", nk % 4),
        );
    }
    if k == n {
        return if n % 4 == 0 {
            ExistenceStatus::exists(
                if n == 4 { Route::FourDiagonal } else { Route::FourDiagonalRepeated },
                "fully filled, n = 0 (mod 4): repeated four-diagonal augmentation fills the square",
            )
        } else {
            ExistenceStatus::without_route(
                Verdict::OutOfScope,
                "fully filled arrays with n != 0 (mod 4) are covered by prior work on H(m,n;n,m)",
            )
        };
    }
    match k % 4 {
        0 => ExistenceStatus::exists(
            if k == 4 { Route::FourDiagonal } else { Route::FourDiagonalRepeated },
            "k = 0 (mod 4) is solved for every n >= k",
        ),
        2 => {
            debug_assert!(n % 2 == 0, "nk = 0 (mod 4) forces n even here");
            ExistenceStatus::exists(
                Route::EvenTiles,
                "n, k even: 2x2 tile layout on broken block diagonals",
            )
        }
        3 => {
            let (base, augmented) = if n % 4 == 1 {
                (Route::MobiusLadder, Route::MobiusLadderAugmented)
            } else {
                debug_assert!(n % 4 == 0, "nk = 0, 3 (mod 4) forces n = 0, 1 (mod 4) here");
                (Route::CylinderLadder, Route::CylinderLadderAugmented)
            };
            ExistenceStatus::exists(
                if k == 3 { base } else { augmented },
                "k = 3 (mod 4) with n = 0, 1 (mod 4): ladder currents plus augmentation",
            )
        }
        _ => match boosters::k1mod4_route(n, k) {
            Some(K1Route::Literal) => {
                ExistenceStatus::exists(Route::StoredLiteral, "stored sporadic array")
            }
            Some(K1Route::Filler33) => ExistenceStatus::exists(
                Route::Filler33Composition,
                "n = 0 or 3 (mod 12): 3x3 filler composition plus augmentation",
            ),
            Some(K1Route::Filler43) => ExistenceStatus::exists(
                Route::Filler43Composition,
                "n = 0 or 4 (mod 16): 4x4 filler composition plus augmentation",
            ),
            Some(K1Route::Boosters) => ExistenceStatus::exists(
                Route::BoosterBlocks,
                format!("k >= {}: booster block construction", boosters::booster_min_k(n)),
            ),
            None => ExistenceStatus::without_route(
                Verdict::Unknown,
                "admissible congruence class with no known construction",
            ),
        },
    }
}

/// A constructed array together with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub array: HeffterArray,
    pub route: Route,
}

/// Builds the array for `(n, k)` when its class is solved, or returns the
/// status unchanged. Deterministic: equal parameters give the identical
/// array.
///
/// Panics if a routed construction produces an array that fails
/// verification; that is a bug trap, not an expected outcome.
pub fn construct(n: usize, k: usize) -> Result<Construction, ExistenceStatus> {
    let status = existence_status(n, k);
    if status.verdict != Verdict::Exists {
        return Err(status);
    }
    let route = status.route.expect("Exists always carries a route");
    let built = match route {
        Route::FourDiagonal | Route::FourDiagonalRepeated => shiftable::build_hs_4k(n, k),
        Route::EvenTiles => shiftable::build_even_even(n, k),
        Route::MobiusLadder | Route::CylinderLadder => ladder::build_h3(n),
        Route::MobiusLadderAugmented | Route::CylinderLadderAugmented => {
            ladder::build_k3mod4(n, k)
        }
        Route::StoredLiteral
        | Route::Filler33Composition
        | Route::Filler43Composition
        | Route::BoosterBlocks => boosters::build_k1mod4(n, k),
    };
    let array = built.unwrap_or_else(|e| panic!("route {route} failed on H({n};{k}): {e}"));
    let report = array.verify();
    assert!(
        report.is_valid(),
        "route {route} produced an invalid H({n};{k}): {report}"
    );
    Ok(Construction { array, route })
}

/// Per-verdict totals of a coverage table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerdictCounts {
    pub exists: usize,
    pub does_not_exist: usize,
    pub unknown: usize,
    pub out_of_scope: usize,
}

/// Existence statuses for all `3 <= n, k <= n_max`, row per `n`.
#[derive(Debug, Clone)]
pub struct CoverageTable {
    n_max: usize,
    cells: Vec<ExistenceStatus>,
}

impl CoverageTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn cell(&self, n: usize, k: usize) -> &ExistenceStatus {
        assert!((3..=self.n_max).contains(&n) && (3..=self.n_max).contains(&k));
        let width = self.n_max - 2;
        &self.cells[(n - 3) * width + (k - 3)]
    }

    /// Iterates `(n, k, status)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &ExistenceStatus)> {
        let width = self.n_max - 2;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, s)| (i / width + 3, i % width + 3, s))
    }

    pub fn counts(&self) -> VerdictCounts {
        let mut counts = VerdictCounts::default();
        for status in &self.cells {
            match status.verdict {
                Verdict::Exists => counts.exists += 1,
                Verdict::DoesNotExist => counts.does_not_exist += 1,
                Verdict::Unknown => counts.unknown += 1,
                Verdict::OutOfScope => counts.out_of_scope += 1,
            }
        }
        counts
    }
}

/// Status grid over `3 <= n, k <= n_max`. Rows are evaluated in parallel
/// when the `parallel` feature is on; assembly is deterministic either
/// way.
pub fn coverage_table(n_max: usize) -> CoverageTable {
    assert!(n_max >= 3, "coverage table needs n_max >= 3");
    let row = |n: usize| -> Vec<ExistenceStatus> {
        (3..=n_max).map(|k| existence_status(n, k)).collect()
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<ExistenceStatus>> = (3..=n_max).into_par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<ExistenceStatus>> = (3..=n_max).map(row).collect();

    CoverageTable { n_max, cells: rows.into_iter().flatten().collect() }
}
