//! Closed-form vertex spectra of the explicit constructions, written out case by
//! case and independent of the rule code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use meshcolor::coloring::Color;
use meshcolor::graph::GridVertex;

fn run(lo: i64, len: i64) -> BTreeSet<i64> {
    (lo..lo + len).collect()
}

// columns n+2..2n mirror columns 3..n+1 via k -> 2n+3-k
fn low_column(n: i64, j: i64) -> i64 {
    if j <= n + 1 {
        j
    } else {
        2 * n + 3 - j
    }
}

/// Layer 1 of a cylinder with at least two layers.
fn first_layer(i: i64, n: i64, j: i64) -> BTreeSet<i64> {
    if j <= 2 {
        run(3 * i - 2, 3)
    } else {
        run(low_column(n, j) - 1, 3)
    }
}

/// The last layer.
fn last_layer(i: i64, n: i64, j: i64) -> BTreeSet<i64> {
    if j <= 2 {
        run(3 * i - 3, 3)
    } else {
        run(3 * i + low_column(n, j) - 5, 3)
    }
}

/// Interior layers. The formula is written for columns n+2..2n and reflected
/// onto columns 3..n+1.
fn middle_layer(i: i64, n: i64, j: i64) -> BTreeSet<i64> {
    if j <= 2 {
        run(3 * i - 3, 4)
    } else {
        let k = if j >= n + 2 { j } else { 2 * n + 3 - j };
        run(3 * i - k + 2 * n - 2, 4)
    }
}

/// Expected `S(x_j^(i))` for the cylinder `C(m, 2n)`. A one-layer cylinder
/// has no rungs, so its spectra are the ring colors common to the first-layer
/// and last-layer formulas.
pub fn cylinder_case_spectrum(m: u32, n: u32, v: GridVertex) -> BTreeSet<Color> {
    let (m, n, i, j) = (m as i64, n as i64, v.layer as i64, v.ring as i64);
    let set = if m == 1 {
        first_layer(i, n, j).intersection(&last_layer(i, n, j)).copied().collect()
    } else if i == 1 {
        first_layer(i, n, j)
    } else if i == m {
        last_layer(i, n, j)
    } else {
        middle_layer(i, n, j)
    };
    set.into_iter().map(|c| c as Color).collect()
}

/// Expected `S(x_j^(i))` for the torus `T(2m, 2n)`. For `m > n` the coloring
/// comes from the transposed torus, so the lookup swaps layer and ring.
pub fn torus_case_spectrum(m: u32, n: u32, v: GridVertex) -> BTreeSet<Color> {
    if m > n {
        return torus_case_spectrum(n, m, GridVertex::new(v.ring, v.layer));
    }
    let (m, n, i, j) = (m as i64, n as i64, v.layer as i64, v.ring as i64);
    let k = if i <= m { i } else { 2 * m + 1 - i };
    let set = if j == 1 {
        run(k, 4) // column 1
    } else if j <= n + 1 {
        run(k + 3 * j - 6, 4) // columns 2..=n+1
    } else if j < 2 * n {
        run(k - 3 * j + 6 * n + 3, 4) // columns n+2..2n
    } else {
        run(k + 3, 4) // column 2n
    };
    set.into_iter().map(|c| c as Color).collect()
}
