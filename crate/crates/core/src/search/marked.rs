//! Search state for the moving-1 enumeration.
//!
//! Instead of keeping three separate 0/1 rows plus two quotient overlays,
//! the whole candidate lives in one vector over `{-2,-1,0,1,2,3}` indexed by
//! the non-identity positions `1..order`:
//!
//! * `1` marks members of `S`, `-1` the rest of its quotient `Q(S)\S`,
//! * `2` marks members of `T`, `-2` the rest of `Q(T)\T`,
//! * `3` marks members of `U`, `0` is free.
//!
//! A cell is usable by a lower row exactly when it reads 0, which turns the
//! feasibility conditions on `Q(S)`, `Q(T)` and `U` into single loads.
//! Quotient marks keep per-row undo logs so conflicts roll back exactly.

use crate::group::Group;
use crate::tpp::quotient_from_support;

pub const FREE: i8 = 0;

/// The three rows of a candidate, ordered top to bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    S,
    T,
    U,
}

impl Row {
    fn idx(self) -> usize {
        match self {
            Row::S => 0,
            Row::T => 1,
            Row::U => 2,
        }
    }

    fn member_value(self) -> i8 {
        match self {
            Row::S => 1,
            Row::T => 2,
            Row::U => 3,
        }
    }

    fn quotient_value(self) -> i8 {
        match self {
            Row::S => -1,
            Row::T => -2,
            Row::U => unreachable!("row U never marks a quotient"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MarkState {
    /// No marks outstanding for this row.
    Clear,
    /// Quotient marked; the row's log lists exactly the cells it marked.
    Marked,
    /// A marking attempt conflicted and was rolled back.
    RolledBack,
}

/// Marked vector over the non-identity positions of a fixed group order.
#[derive(Clone, Debug)]
pub struct MarkedVector {
    cells: Vec<i8>,
    supports: [Vec<usize>; 3],
    marks: [MarkState; 2],
    logs: [Vec<usize>; 2],
    scratch: Vec<usize>,
}

impl MarkedVector {
    pub fn new(order: usize) -> Self {
        MarkedVector {
            cells: vec![FREE; order - 1],
            supports: [Vec::new(), Vec::new(), Vec::new()],
            marks: [MarkState::Clear, MarkState::Clear],
            logs: [Vec::new(), Vec::new()],
            scratch: Vec::new(),
        }
    }

    /// Number of non-identity positions.
    pub fn positions(&self) -> usize {
        self.cells.len()
    }

    /// Value at position `p` in `1..=positions()`.
    #[inline]
    pub fn cell(&self, p: usize) -> i8 {
        self.cells[p - 1]
    }

    #[inline]
    fn set_cell(&mut self, p: usize, v: i8) {
        self.cells[p - 1] = v;
    }

    /// Current support (ascending positions) of a row.
    pub fn support(&self, row: Row) -> &[usize] {
        &self.supports[row.idx()]
    }

    /// The row as an element set, identity included.
    pub fn row_set(&self, row: Row) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.supports[row.idx()].len() + 1);
        v.push(0);
        v.extend_from_slice(&self.supports[row.idx()]);
        v
    }

    pub fn is_all_free(&self) -> bool {
        self.cells.iter().all(|&c| c == FREE)
    }

    /// Exclusive lower bound for a row's positions: rows are kept in
    /// ascending order of their minimal support position.
    fn lower_bound(&self, row: Row) -> usize {
        match row {
            Row::S => 0,
            Row::T => self.supports[0][0],
            Row::U => self.supports[1][0],
        }
    }

    /// Places a row at an explicit support (used to seed row S at a shard's
    /// start rank). All target cells must be free and the row empty.
    pub fn place_row(&mut self, row: Row, positions: &[usize]) {
        debug_assert!(self.supports[row.idx()].is_empty());
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        for &p in positions {
            debug_assert_eq!(self.cell(p), FREE);
            self.set_cell(p, row.member_value());
        }
        self.supports[row.idx()] = positions.to_vec();
    }

    /// Builds a row from scratch: the lexicographically least `k` free
    /// positions that respect the row ordering constraint. Returns false
    /// (leaving the row empty) when fewer than `k` positions qualify.
    pub fn seed_row(&mut self, row: Row, k: usize) -> bool {
        debug_assert!(self.supports[row.idx()].is_empty());
        let bound = self.lower_bound(row);
        let mut picked = Vec::with_capacity(k);
        let mut p = bound + 1;
        while p <= self.positions() && picked.len() < k {
            if self.cell(p) == FREE {
                picked.push(p);
            }
            p += 1;
        }
        if picked.len() < k {
            return false;
        }
        for &p in &picked {
            self.set_cell(p, row.member_value());
        }
        self.supports[row.idx()] = picked;
        true
    }

    /// Advances a row to its next candidate: the rightmost movable member
    /// slides to the next free cell on its right; when none can move, the
    /// rightmost member is deleted and the next one moves, with the tail
    /// re-packed into the least free positions. Equivalent to taking the
    /// lexicographic successor over the row's available positions.
    ///
    /// Returns false when the leading member can no longer move; the row is
    /// cleared in that case.
    pub fn next_candidate_row(&mut self, row: Row) -> bool {
        let ri = row.idx();
        let k = self.supports[ri].len();
        if k == 0 {
            return false;
        }
        // Move the current support aside and free its cells.
        std::mem::swap(&mut self.scratch, &mut self.supports[ri]);
        for i in 0..k {
            let p = self.scratch[i];
            debug_assert_eq!(self.cells[p - 1], row.member_value());
            self.cells[p - 1] = FREE;
        }

        let n = self.cells.len();
        let mut placed = false;
        'pivots: for pivot in (0..k).rev() {
            self.supports[ri].clear();
            for i in 0..pivot {
                let keep = self.scratch[i];
                self.supports[ri].push(keep);
            }
            let mut prev = self.scratch[pivot];
            for _ in pivot..k {
                let mut next = 0;
                let mut p = prev + 1;
                while p <= n {
                    if self.cells[p - 1] == FREE {
                        next = p;
                        break;
                    }
                    p += 1;
                }
                if next == 0 {
                    continue 'pivots;
                }
                self.supports[ri].push(next);
                prev = next;
            }
            placed = true;
            break;
        }

        if placed {
            let value = row.member_value();
            for i in 0..k {
                let p = self.supports[ri][i];
                self.cells[p - 1] = value;
            }
            true
        } else {
            self.supports[ri].clear();
            false
        }
    }

    /// Clears a row's member cells (no-op when the row is empty).
    pub fn clear_row(&mut self, row: Row) {
        let support = std::mem::take(&mut self.supports[row.idx()]);
        for p in support {
            debug_assert_eq!(self.cell(p), row.member_value());
            self.set_cell(p, FREE);
        }
    }

    /// Marks the quotient remainder `Q(row) \ row` of row S or T.
    ///
    /// Returns false when some quotient cell is already taken (for row T
    /// that means `Q(S) ∩ Q(T) ≠ {1}`); in that case every mark placed
    /// during this attempt has been rolled back and the vector is unchanged.
    pub fn mark_quotient(&mut self, g: &Group, row: Row) -> bool {
        let slot = row.idx();
        debug_assert!(slot < 2, "row U is never quotient-marked");
        debug_assert!(
            self.marks[slot] != MarkState::Marked,
            "marking a row whose previous marks are still outstanding"
        );
        let member = row.member_value();
        let value = row.quotient_value();
        let quotient = quotient_from_support(g, &self.supports[slot]);
        self.logs[slot].clear();
        for q in quotient.iter() {
            if q == 0 || self.cells[q - 1] == member {
                continue;
            }
            if self.cells[q - 1] != FREE {
                for i in 0..self.logs[slot].len() {
                    let p = self.logs[slot][i];
                    self.cells[p - 1] = FREE;
                }
                self.marks[slot] = MarkState::RolledBack;
                return false;
            }
            self.cells[q - 1] = value;
            self.logs[slot].push(q);
        }
        self.marks[slot] = MarkState::Marked;
        true
    }

    /// Reverts exactly the cells marked by this row's last successful
    /// [`MarkedVector::mark_quotient`]. After a conflicted attempt this is a
    /// no-op (the conflict already rolled back); unmarking a row that was
    /// never marked is a bug caught in debug builds.
    pub fn unmark_quotient(&mut self, row: Row) {
        let slot = row.idx();
        match std::mem::replace(&mut self.marks[slot], MarkState::Clear) {
            MarkState::Marked => {
                for i in 0..self.logs[slot].len() {
                    let p = self.logs[slot][i];
                    debug_assert_eq!(self.cells[p - 1], row.quotient_value());
                    self.cells[p - 1] = FREE;
                }
                self.logs[slot].clear();
            }
            MarkState::RolledBack => {}
            MarkState::Clear => debug_assert!(false, "unmark without a preceding mark"),
        }
    }
}
