//! Golden test vectors: the published arrays, transcribed as grid text
//! and parsed with a minimal reader so the test data stays diffable.

use heffter::HeffterArray;

/// Parses rows of whitespace-separated cells with `.` for empty.
pub fn grid(n: usize, k: usize, text: &str) -> HeffterArray {
    let rows: Vec<Vec<Option<i32>>> = text
        .trim()
        .lines()
        .map(|line| {
            line.split_whitespace()
                .map(|tok| {
                    if tok == "." {
                        None
                    } else {
                        Some(tok.parse().expect("golden grids hold integers"))
                    }
                })
                .collect()
        })
        .collect();
    HeffterArray::from_rows(n, k, rows).expect("golden grids are well formed")
}

pub fn h4_3() -> HeffterArray {
    grid(
        4,
        3,
        "
        4 8 . -12
        -9 3 6 .
        . -11 1 10
        5 . -7 2
        ",
    )
}

pub fn hs5_4() -> HeffterArray {
    grid(
        5,
        4,
        "
        . 17 -8 -14 5
        1 . 18 -9 -10
        -6 2 . 19 -15
        -11 -12 3 . 20
        16 -7 -13 4 .
        ",
    )
}

pub fn hs6_4() -> HeffterArray {
    grid(
        6,
        4,
        "
        . . 13 -15 -9 11
        . . -14 16 10 -12
        -1 3 . . 17 -19
        2 -4 . . -18 20
        21 -23 -5 7 . .
        -22 24 6 -8 . .
        ",
    )
}

pub fn hs7_4() -> HeffterArray {
    grid(
        7,
        4,
        "
        1 . . . 26 -13 -14
        -8 2 . . . 27 -21
        -15 -16 3 . . . 28
        22 -9 -17 4 . . .
        . 23 -10 -18 5 . .
        . . 24 -11 -19 6 .
        . . . 25 -12 -20 7
        ",
    )
}

pub fn hs8_6() -> HeffterArray {
    grid(
        8,
        6,
        "
        -1 5 2 -7 -9 10 . .
        3 -4 -6 8 11 -12 . .
        . . -13 17 14 -19 -21 22
        . . 15 -16 -18 20 23 -24
        -33 34 . . -25 29 26 -31
        35 -36 . . 27 -28 -30 32
        38 -43 -45 46 . . -37 41
        -42 44 47 -48 . . 39 -40
        ",
    )
}

pub fn h13_3() -> HeffterArray {
    grid(
        13,
        3,
        "
        -12 26 . . . . . . . . . . -14
        -27 -11 38 . . . . . . . . . .
        . -15 -10 25 . . . . . . . . .
        . . -28 -9 37 . . . . . . . .
        . . . -16 -8 24 . . . . . . .
        . . . . -29 -7 36 . . . . . .
        . . . . . -17 -13 30 . . . . .
        . . . . . . -23 5 18 . . . .
        . . . . . . . -35 4 31 . . .
        . . . . . . . . -22 3 19 . .
        . . . . . . . . . -34 2 32 .
        . . . . . . . . . . -21 1 20
        39 . . . . . . . . . . -33 -6
        ",
    )
}

pub fn h12_3() -> HeffterArray {
    grid(
        12,
        3,
        "
        12 24 . . . . . . . . . -36
        -25 -10 35 . . . . . . . . .
        . -14 -9 23 . . . . . . . .
        . . -26 -8 34 . . . . . . .
        . . . -15 -7 22 . . . . . .
        . . . . -27 11 16 . . . . .
        . . . . . -33 5 28 . . . .
        . . . . . . -21 4 17 . . .
        . . . . . . . -32 3 29 . .
        . . . . . . . . -20 2 18 .
        . . . . . . . . . -31 1 30
        13 . . . . . . . . . -19 6
        ",
    )
}

pub fn h8_5() -> HeffterArray {
    grid(
        8,
        5,
        "
        13 -20 19 -11 -1 . . .
        -14 16 18 -22 . 2 . .
        15 -12 -23 17 . . 3 .
        -9 10 -21 24 . . . -4
        -5 . . . 29 -30 31 -25
        . 6 . . -36 32 -28 26
        . . 7 . 35 34 -39 -37
        . . . -8 -27 -38 33 40
        ",
    )
}

pub fn h7_5() -> HeffterArray {
    grid(
        7,
        5,
        "
        -10 . 16 -1 -2 -3 .
        . -4 . -6 -7 -5 22
        -30 29 -9 -8 . . 18
        -11 . -12 28 -31 26 .
        . -14 -15 -13 . 17 25
        27 -34 20 . 19 . -32
        24 23 . . 21 -35 -33
        ",
    )
}

pub fn h11_5() -> HeffterArray {
    grid(
        11,
        5,
        "
        -1 -2 -3 . . 37 . . . -31 .
        -4 -5 . -6 . . -23 38 . . .
        -7 -8 . -18 -10 . . . 43 . .
        . . -11 -16 -9 -17 53 . . . .
        . . -14 -12 -13 -15 . . . . 54
        . 40 . . -19 -49 -20 . . 48 .
        . . -22 52 . . -55 -21 46 . .
        39 -25 . . . . . -24 . 42 -32
        -27 . . . . . 45 41 -26 . -33
        . . . . . 44 . -34 -28 -29 47
        . . 50 . 51 . . . -35 -30 -36
        ",
    )
}

pub fn h12_5() -> HeffterArray {
    grid(
        12,
        5,
        "
        36 -24 -8 40 . . . . . -44 . .
        -20 -4 28 . 48 . . . . . -52 .
        -12 32 -16 . . 56 . . . . . -60
        -41 . . 33 -29 -1 38 . . . . .
        . -49 . -21 7 17 . 46 . . . .
        . . -57 -9 25 -13 . . 54 . . .
        . . . -43 . . 35 -31 -3 42 . .
        . . . . -51 . -23 5 19 . 50 .
        . . . . . -59 -11 27 -15 . . 58
        37 . . . . . -39 . . 34 -30 -2
        . 45 . . . . . -47 . -22 6 18
        . . 53 . . . . . -55 -10 26 -14
        ",
    )
}

/// The eleven published arrays with display names.
pub fn all_golden() -> Vec<(&'static str, HeffterArray)> {
    vec![
        ("H(4;3)", h4_3()),
        ("H_s(5;4)", hs5_4()),
        ("H_s(6;4)", hs6_4()),
        ("H_s(7;4)", hs7_4()),
        ("H_s(8;6)", hs8_6()),
        ("H(13;3)", h13_3()),
        ("H(12;3)", h12_3()),
        ("H(8;5)", h8_5()),
        ("H(7;5)", h7_5()),
        ("H(11;5)", h11_5()),
        ("H(12;5)", h12_5()),
    ]
}
