//! Magic rectangles and nearly magic rectangles.
//!
//! An S x T magic rectangle on `[Q+1, Q+ST]` has constant row sum
//! `R = T(2Q+ST+1)/2` and constant column sum `C = S(2Q+ST+1)/2`. A p x q
//! nearly magic rectangle (p even, q odd) on `[A+1, A+pq]` has constant
//! column sums and row sums taking exactly two values that differ by 1, each
//! on half of the rows.
//!
//! Constructions: the Siamese method for odd squares, a complement-pair
//! strip scheme for even x even, a complement-pair row scheme for nearly
//! magic rectangles, and a pruned backtracking search as the fallback for
//! the remaining odd x odd shapes. Offsets are applied by uniform addition
//! after construction. No constructor output is trusted: everything passes
//! the validator before it is returned.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RectError {
    #[error("sides must be at least 2, got {0}x{1}")]
    SideTooSmall(usize, usize),
    #[error("sides must have equal parity, got {0}x{1}")]
    ParityMismatch(usize, usize),
    #[error("no 2x2 magic rectangle exists")]
    TwoByTwo,
    #[error("nearly magic rectangle needs even rows and odd columns >= 3, got {0}x{1}")]
    NearlyParity(usize, usize),
    #[error("construction search exhausted for {0}x{1}")]
    SearchExhausted(usize, usize),
    #[error("constructed rectangle failed validation: {0}")]
    SelfCheck(String),
}

/// `C - R = (2Q + 1 + ST)(S - T) / 2` for any S x T magic rectangle on
/// `[Q+1, Q+ST]`.
pub fn col_row_gap(s: usize, t: usize, q_offset: u64) -> i64 {
    let s = s as i128;
    let t = t as i128;
    let q = q_offset as i128;
    ((2 * q + 1 + s * t) * (s - t) / 2) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagicRectangle {
    pub rows: usize,
    pub cols: usize,
    pub offset: u64,
    /// Row-major entries, `entries[i][j]` in row i, column j.
    pub entries: Vec<Vec<u64>>,
}

impl MagicRectangle {
    pub fn row_sum(&self) -> u64 {
        let (s, t, q) = (self.rows as u64, self.cols as u64, self.offset);
        t * (2 * q + s * t + 1) / 2
    }

    pub fn col_sum(&self) -> u64 {
        let (s, t, q) = (self.rows as u64, self.cols as u64, self.offset);
        s * (2 * q + s * t + 1) / 2
    }

    pub fn transposed(&self) -> MagicRectangle {
        let mut entries = vec![vec![0u64; self.rows]; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j][i] = self.entries[i][j];
            }
        }
        MagicRectangle { rows: self.cols, cols: self.rows, offset: self.offset, entries }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearlyMagicRectangle {
    pub rows: usize,
    pub cols: usize,
    pub offset: u64,
    pub entries: Vec<Vec<u64>>,
    /// 1-based indices of the rows carrying the smaller row sum.
    pub low_rows: Vec<usize>,
}

impl NearlyMagicRectangle {
    pub fn col_sum(&self) -> u64 {
        let (p, q, a) = (self.rows as u64, self.cols as u64, self.offset);
        p * (p * q + 1) / 2 + p * a
    }

    pub fn low_row_sum(&self) -> u64 {
        let (p, q, a) = (self.rows as u64, self.cols as u64, self.offset);
        (q * (p * q + 1) - 1) / 2 + q * a
    }

    pub fn high_row_sum(&self) -> u64 {
        self.low_row_sum() + 1
    }
}

/// Construct an S x T magic rectangle on `[Q+1, Q+ST]`.
pub fn magic_rectangle(s: usize, t: usize, offset: u64) -> Result<MagicRectangle, RectError> {
    if s < 2 || t < 2 {
        return Err(RectError::SideTooSmall(s, t));
    }
    if s % 2 != t % 2 {
        return Err(RectError::ParityMismatch(s, t));
    }
    if s == 2 && t == 2 {
        return Err(RectError::TwoByTwo);
    }
    let base = if s % 2 == 1 {
        if s == t {
            siamese_square(s)
        } else {
            odd_rectangle_search(s, t)?
        }
    } else if t == 2 {
        even_strips(t, s)?.transposed()
    } else {
        even_strips(s, t)?
    };
    let rect = MagicRectangle {
        rows: s,
        cols: t,
        offset,
        entries: base
            .entries
            .iter()
            .map(|row| row.iter().map(|&v| v + offset).collect())
            .collect(),
    };
    let report = validate_magic(&rect);
    if !report.ok {
        return Err(RectError::SelfCheck(report.findings.join("; ")));
    }
    Ok(rect)
}

/// Construct a p x q nearly magic rectangle on `[A+1, A+pq]` with the low
/// rows first (`low_rows = 1..=p/2`).
pub fn nearly_magic_rectangle(
    p: usize,
    q: usize,
    offset: u64,
) -> Result<NearlyMagicRectangle, RectError> {
    if p < 2 || p % 2 != 0 || q < 3 || q % 2 == 0 {
        return Err(RectError::NearlyParity(p, q));
    }
    let entries = nearly_pair_rows(p, q).ok_or(RectError::SearchExhausted(p, q))?;
    let rect = NearlyMagicRectangle {
        rows: p,
        cols: q,
        offset,
        entries: entries
            .iter()
            .map(|row| row.iter().map(|&v| v + offset).collect())
            .collect(),
        low_rows: (1..=p / 2).collect(),
    };
    let report = validate_nearly(&rect);
    if !report.ok {
        return Err(RectError::SelfCheck(report.findings.join("; ")));
    }
    Ok(rect)
}

// --- validation --------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub findings: Vec<String>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    /// Actual column sum minus row sum for magic rectangles; must equal
    /// [`col_row_gap`].
    pub col_row_gap: Option<i64>,
}

fn grid_sums(entries: &[Vec<u64>]) -> (Vec<u64>, Vec<u64>) {
    let rows = entries.len();
    let cols = entries.first().map_or(0, |r| r.len());
    let row_sums = entries.iter().map(|r| r.iter().sum()).collect();
    let mut col_sums = vec![0u64; cols];
    for row in entries {
        for (j, &v) in row.iter().enumerate() {
            col_sums[j] += v;
        }
    }
    let _ = rows;
    (row_sums, col_sums)
}

fn check_bijection(entries: &[Vec<u64>], offset: u64, findings: &mut Vec<String>) {
    let n = entries.len() * entries.first().map_or(0, |r| r.len());
    let mut seen = vec![false; n + 1];
    for row in entries {
        for &v in row {
            if v <= offset || v > offset + n as u64 {
                findings.push(format!("entry {v} outside [{}, {}]", offset + 1, offset + n as u64));
            } else if seen[(v - offset) as usize] {
                findings.push(format!("entry {v} repeated"));
            } else {
                seen[(v - offset) as usize] = true;
            }
        }
    }
}

pub fn validate_magic(rect: &MagicRectangle) -> ValidationReport {
    let mut findings = Vec::new();
    if rect.entries.len() != rect.rows
        || rect.entries.iter().any(|r| r.len() != rect.cols)
    {
        findings.push("grid shape does not match declared dimensions".into());
    }
    check_bijection(&rect.entries, rect.offset, &mut findings);
    let (row_sums, col_sums) = grid_sums(&rect.entries);
    let (r, c) = (rect.row_sum(), rect.col_sum());
    for (i, &s) in row_sums.iter().enumerate() {
        if s != r {
            findings.push(format!("row {} sums to {s}, expected {r}", i + 1));
        }
    }
    for (j, &s) in col_sums.iter().enumerate() {
        if s != c {
            findings.push(format!("column {} sums to {s}, expected {c}", j + 1));
        }
    }
    let actual_gap = c as i64 - r as i64;
    let expected_gap = col_row_gap(rect.rows, rect.cols, rect.offset);
    if actual_gap != expected_gap {
        findings.push(format!("C-R is {actual_gap}, formula gives {expected_gap}"));
    }
    ValidationReport {
        ok: findings.is_empty(),
        findings,
        row_sums,
        col_sums,
        col_row_gap: Some(actual_gap),
    }
}

pub fn validate_nearly(rect: &NearlyMagicRectangle) -> ValidationReport {
    let mut findings = Vec::new();
    if rect.entries.len() != rect.rows
        || rect.entries.iter().any(|r| r.len() != rect.cols)
    {
        findings.push("grid shape does not match declared dimensions".into());
    }
    check_bijection(&rect.entries, rect.offset, &mut findings);
    let (row_sums, col_sums) = grid_sums(&rect.entries);
    let c = rect.col_sum();
    for (j, &s) in col_sums.iter().enumerate() {
        if s != c {
            findings.push(format!("column {} sums to {s}, expected {c}", j + 1));
        }
    }
    let (lo, hi) = (rect.low_row_sum(), rect.high_row_sum());
    let lo_count = row_sums.iter().filter(|&&s| s == lo).count();
    let hi_count = row_sums.iter().filter(|&&s| s == hi).count();
    if lo_count != rect.rows / 2 || hi_count != rect.rows / 2 {
        findings.push(format!(
            "row sums must split {}/{} between {lo} and {hi}; got {lo_count}/{hi_count}",
            rect.rows / 2,
            rect.rows / 2
        ));
    }
    let declared_low: Vec<usize> = rect.low_rows.clone();
    let actual_low: Vec<usize> = row_sums
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == lo)
        .map(|(i, _)| i + 1)
        .collect();
    if declared_low != actual_low {
        findings.push(format!("declared low rows {declared_low:?} but found {actual_low:?}"));
    }
    ValidationReport { ok: findings.is_empty(), findings, row_sums, col_sums, col_row_gap: None }
}

// --- constructions -----------------------------------------------------------

/// Classic Siamese construction for an odd magic square on `[1, n^2]`.
fn siamese_square(n: usize) -> MagicRectangle {
    let mut entries = vec![vec![0u64; n]; n];
    let (mut i, mut j) = (0usize, n / 2);
    for k in 1..=(n * n) as u64 {
        entries[i][j] = k;
        let (ni, nj) = ((i + n - 1) % n, (j + 1) % n);
        if entries[ni][nj] == 0 {
            (i, j) = (ni, nj);
        } else {
            i = (i + 1) % n;
        }
    }
    MagicRectangle { rows: n, cols: n, offset: 0, entries }
}

/// Even x even construction. Rows come in complement pairs (strips): strip s
/// owns the values `(s-1)T+1 ..= sT` and their complements; each column of a
/// strip holds one complement pair, so column sums are automatic, and a
/// subset-sum choice of which element goes on top makes both strip rows hit
/// the row target exactly.
fn even_strips(s: usize, t: usize) -> Result<MagicRectangle, RectError> {
    let n = (s * t) as u64;
    let row_target = t as u64 * (n + 1) / 2;
    let mut entries = vec![vec![0u64; t]; s];
    for strip in 0..s / 2 {
        let smalls: Vec<u64> = (1..=t as u64).map(|c| strip as u64 * t as u64 + c).collect();
        let base: u64 = smalls.iter().sum();
        let delta = row_target - base;
        let gains: Vec<u64> = smalls.iter().map(|&v| n + 1 - 2 * v).collect();
        let flip =
            subset_with_sum(&gains, delta).ok_or(RectError::SearchExhausted(s, t))?;
        for (c, &small) in smalls.iter().enumerate() {
            let (top, bottom) = if flip[c] { (n + 1 - small, small) } else { (small, n + 1 - small) };
            entries[2 * strip][c] = top;
            entries[2 * strip + 1][c] = bottom;
        }
    }
    Ok(MagicRectangle { rows: s, cols: t, offset: 0, entries })
}

/// Find a subset of `values` summing to `target`; returns a membership mask.
fn subset_with_sum(values: &[u64], target: u64) -> Option<Vec<bool>> {
    let total: u64 = values.iter().sum();
    if target > total {
        return None;
    }
    // DP over achievable sums, tracking one predecessor choice.
    let t = target as usize;
    let mut reach: Vec<Option<(usize, bool)>> = vec![None; t + 1];
    reach[0] = Some((usize::MAX, false));
    for (idx, &v) in values.iter().enumerate() {
        let v = v as usize;
        for sum in (0..=t).rev() {
            if sum >= v && reach[sum].is_none() && reach[sum - v].is_some() {
                reach[sum] = Some((idx, true));
            }
        }
    }
    reach[t]?;
    let mut mask = vec![false; values.len()];
    let mut sum = t;
    while sum > 0 {
        let (idx, _) = reach[sum].unwrap();
        // Entries created by item `idx` point back to `sum - values[idx]`.
        mask[idx] = true;
        sum -= values[idx] as usize;
    }
    Some(mask)
}

/// Nearly magic rectangle via complement row pairs: free row r owns the
/// complement pairs with small halves `(r-1)q+1 ..= rq`; a subset-sum choice
/// of orientations makes every free row hit the low target, and the partner
/// rows (positionwise complements) land on the high target.
fn nearly_pair_rows(p: usize, q: usize) -> Option<Vec<Vec<u64>>> {
    let n = (p * q) as u64;
    let low_target = (q as u64 * (n + 1) - 1) / 2;
    let mut entries = vec![vec![0u64; q]; p];
    for r in 0..p / 2 {
        let smalls: Vec<u64> = (1..=q as u64).map(|c| r as u64 * q as u64 + c).collect();
        let base: u64 = smalls.iter().sum();
        if low_target < base {
            return None;
        }
        let delta = low_target - base;
        let gains: Vec<u64> = smalls.iter().map(|&v| n + 1 - 2 * v).collect();
        let flip = subset_with_sum(&gains, delta)?;
        for (c, &small) in smalls.iter().enumerate() {
            let (top, bottom) = if flip[c] { (n + 1 - small, small) } else { (small, n + 1 - small) };
            entries[r][c] = top;
            entries[p / 2 + r][c] = bottom;
        }
    }
    Some(entries)
}

/// Backtracking construction for odd x odd rectangles (S != T): fill column
/// by column, pruning on column subset-sum bounds and per-row residual
/// feasibility. These searches are heavily underconstrained, so the first
/// solution is found quickly at the sizes this crate needs.
fn odd_rectangle_search(s: usize, t: usize) -> Result<MagicRectangle, RectError> {
    // Deeper columns prune better: search the orientation with more rows.
    if s < t {
        return Ok(odd_rectangle_search(t, s)?.transposed());
    }
    let n = (s * t) as u64;
    let col_target = s as u64 * (n + 1) / 2;
    let row_target = t as u64 * (n + 1) / 2;
    let mut used = vec![false; (n + 1) as usize];
    let mut entries = vec![vec![0u64; t]; s];
    let mut row_sums = vec![0u64; s];
    // Budget keeps pathological shapes from hanging; at the supported sizes
    // the search finishes in well under a million nodes.
    let mut nodes_left: u64 = 200_000_000;

    fn bounds(used: &[bool], k: usize) -> Option<(u64, u64)> {
        // Sum of the k smallest and k largest unused values.
        let mut small = 0u64;
        let mut cnt = 0;
        for v in 1..used.len() {
            if !used[v] {
                small += v as u64;
                cnt += 1;
                if cnt == k {
                    break;
                }
            }
        }
        if cnt < k {
            return None;
        }
        let mut large = 0u64;
        cnt = 0;
        for v in (1..used.len()).rev() {
            if !used[v] {
                large += v as u64;
                cnt += 1;
                if cnt == k {
                    break;
                }
            }
        }
        Some((small, large))
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        s: usize,
        t: usize,
        col: usize,
        row: usize,
        col_partial: u64,
        col_target: u64,
        row_target: u64,
        used: &mut Vec<bool>,
        entries: &mut Vec<Vec<u64>>,
        row_sums: &mut Vec<u64>,
        nodes_left: &mut u64,
    ) -> bool {
        if *nodes_left == 0 {
            return false;
        }
        *nodes_left -= 1;
        if row == s {
            // Column complete; check every row can still reach its target.
            let cols_left = t - col - 1;
            for r in 0..s {
                let residual = row_target - row_sums[r];
                match bounds(used, cols_left) {
                    Some((lo, hi)) if residual >= lo && residual <= hi => {}
                    _ if cols_left == 0 && residual == 0 => {}
                    _ => return false,
                }
            }
            if col + 1 == t {
                return true;
            }
            return fill(
                s, t, col + 1, 0, 0, col_target, row_target, used, entries, row_sums, nodes_left,
            );
        }
        let cells_left = s - row - 1;
        let need = col_target - col_partial;
        // Candidate values for this cell, nearest the per-cell average first.
        let avg = need / (cells_left as u64 + 1);
        let mut candidates: Vec<u64> = (1..used.len() as u64)
            .filter(|&v| !used[v as usize])
            .filter(|&v| v <= need)
            .collect();
        candidates.sort_by_key(|&v| (v.abs_diff(avg), v));
        for v in candidates {
            if row_sums[row] + v > row_target {
                continue;
            }
            let partial = col_partial + v;
            if let Some((lo, hi)) = bounds_excluding(used, cells_left, v as usize) {
                let rest = col_target - partial;
                if rest < lo || rest > hi {
                    continue;
                }
            } else if cells_left > 0 {
                continue;
            }
            used[v as usize] = true;
            entries[row][col] = v;
            row_sums[row] += v;
            if fill(
                s, t, col, row + 1, partial, col_target, row_target, used, entries, row_sums,
                nodes_left,
            ) {
                return true;
            }
            row_sums[row] -= v;
            used[v as usize] = false;
        }
        false
    }

    fn bounds_excluding(used: &[bool], k: usize, skip: usize) -> Option<(u64, u64)> {
        if k == 0 {
            return Some((0, 0));
        }
        let mut small = 0u64;
        let mut cnt = 0;
        for v in 1..used.len() {
            if !used[v] && v != skip {
                small += v as u64;
                cnt += 1;
                if cnt == k {
                    break;
                }
            }
        }
        if cnt < k {
            return None;
        }
        let mut large = 0u64;
        cnt = 0;
        for v in (1..used.len()).rev() {
            if !used[v] && v != skip {
                large += v as u64;
                cnt += 1;
                if cnt == k {
                    break;
                }
            }
        }
        Some((small, large))
    }

    if fill(
        s,
        t,
        0,
        0,
        0,
        col_target,
        row_target,
        &mut used,
        &mut entries,
        &mut row_sums,
        &mut nodes_left,
    ) {
        Ok(MagicRectangle { rows: s, cols: t, offset: 0, entries })
    } else {
        Err(RectError::SearchExhausted(s, t))
    }
}
