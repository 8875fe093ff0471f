//! Labels for the indecomposable projective modules, their bases and the
//! two-sided block ideals.
//!
//! Every basis vector of a projective module sits in a *cell* named by two
//! arrows. The inner arrow (`Up`, `Left`, `Right`, `Down`) records the
//! position along the first `sl2` ladder and the outer arrow (`T`, `L`, `R`,
//! `B`) the position along the second. Within a cell the vector carries an
//! index pair `(x, y)`: `x` runs over `r1` values for `Up`/`Down` and over
//! `p1 - r1` values for `Left`/`Right`; `y` runs over `r2` values for `T`/`B`
//! and over `p2 - r2` values for `L`/`R`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Params;
use crate::error::{Error, Result};
use crate::simple::Sign;

/// Position along the first ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Inner {
    Up,
    Left,
    Right,
    Down,
}

/// Position along the second ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outer {
    T,
    L,
    R,
    B,
}

impl Inner {
    pub const ALL: [Inner; 4] = [Inner::Up, Inner::Left, Inner::Right, Inner::Down];

    /// Two-bit code: the high bit marks `Left`/`Down`, the low bit marks
    /// `Right`/`Down`. Left multiplication can only set bits.
    pub fn bits(self) -> u8 {
        match self {
            Inner::Up => 0b00,
            Inner::Left => 0b10,
            Inner::Right => 0b01,
            Inner::Down => 0b11,
        }
    }

    pub fn from_bits(b: u8) -> Inner {
        match b & 0b11 {
            0b00 => Inner::Up,
            0b10 => Inner::Left,
            0b01 => Inner::Right,
            _ => Inner::Down,
        }
    }

    /// `Left` and `Right` vectors have the opposite sign of `K` and the
    /// complementary ladder length.
    pub fn sideways(self) -> bool {
        matches!(self, Inner::Left | Inner::Right)
    }

    pub fn name(self) -> &'static str {
        match self {
            Inner::Up => "up",
            Inner::Left => "left",
            Inner::Right => "right",
            Inner::Down => "down",
        }
    }

    pub fn parse(s: &str) -> Option<Inner> {
        Inner::ALL.into_iter().find(|i| i.name() == s)
    }
}

impl Outer {
    pub const ALL: [Outer; 4] = [Outer::T, Outer::L, Outer::R, Outer::B];

    pub fn bits(self) -> u8 {
        match self {
            Outer::T => 0b00,
            Outer::L => 0b10,
            Outer::R => 0b01,
            Outer::B => 0b11,
        }
    }

    pub fn from_bits(b: u8) -> Outer {
        match b & 0b11 {
            0b00 => Outer::T,
            0b10 => Outer::L,
            0b01 => Outer::R,
            _ => Outer::B,
        }
    }

    pub fn sideways(self) -> bool {
        matches!(self, Outer::L | Outer::R)
    }

    pub fn name(self) -> &'static str {
        match self {
            Outer::T => "T",
            Outer::L => "L",
            Outer::R => "R",
            Outer::B => "B",
        }
    }

    pub fn parse(s: &str) -> Option<Outer> {
        Outer::ALL.into_iter().find(|o| o.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub outer: Outer,
    pub inner: Inner,
}

impl Cell {
    pub const fn new(outer: Outer, inner: Inner) -> Self {
        Cell { outer, inner }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.outer.name(), self.inner.name())
    }
}

/// The four shapes of projective module, by which ladders are present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjKind {
    /// `r1 = p1, r2 = p2`: the simple projective module, one cell.
    Simple,
    /// `r1 < p1, r2 = p2`: only the first ladder, four cells.
    Row,
    /// `r1 = p1, r2 < p2`: only the second ladder, four cells.
    Column,
    /// `r1 < p1, r2 < p2`: both ladders, sixteen cells.
    Interior,
}

/// The indecomposable projective module `P^alpha_{r1,r2}` (the simple module
/// `X^alpha_{p1,p2}` when both `r_i = p_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjLabel {
    pub alpha: Sign,
    pub r1: usize,
    pub r2: usize,
}

impl ProjLabel {
    pub fn new(p: &Params, alpha: Sign, r1: usize, r2: usize) -> Result<Self> {
        if !(1..=p.p1).contains(&r1) || !(1..=p.p2).contains(&r2) {
            return Err(Error::OutOfRange(format!(
                "projective module needs 1 <= r1 <= {} and 1 <= r2 <= {}, got ({r1}, {r2})",
                p.p1, p.p2
            )));
        }
        Ok(ProjLabel { alpha, r1, r2 })
    }

    pub fn kind(&self, p: &Params) -> ProjKind {
        match (self.r1 == p.p1, self.r2 == p.p2) {
            (true, true) => ProjKind::Simple,
            (false, true) => ProjKind::Row,
            (true, false) => ProjKind::Column,
            (false, false) => ProjKind::Interior,
        }
    }

    /// The cells present, in basis order.
    pub fn cells(&self, p: &Params) -> Vec<Cell> {
        let outers: &[Outer] = match self.kind(p) {
            ProjKind::Simple | ProjKind::Row => &[Outer::B],
            ProjKind::Column | ProjKind::Interior => &Outer::ALL,
        };
        let inners: &[Inner] = match self.kind(p) {
            ProjKind::Simple | ProjKind::Column => &[Inner::Down],
            ProjKind::Row | ProjKind::Interior => &Inner::ALL,
        };
        outers
            .iter()
            .flat_map(|&o| inners.iter().map(move |&i| Cell::new(o, i)))
            .collect()
    }

    pub fn has_cell(&self, p: &Params, cell: Cell) -> bool {
        self.cells(p).contains(&cell)
    }

    /// Index ranges `(x count, y count)` of a cell.
    pub fn cell_shape(&self, p: &Params, cell: Cell) -> (usize, usize) {
        let nx = if cell.inner.sideways() { p.p1 - self.r1 } else { self.r1 };
        let ny = if cell.outer.sideways() { p.p2 - self.r2 } else { self.r2 };
        (nx, ny)
    }

    /// The cell holding the generating idempotent.
    pub fn top_cell(&self, p: &Params) -> Cell {
        match self.kind(p) {
            ProjKind::Simple => Cell::new(Outer::B, Inner::Down),
            ProjKind::Row => Cell::new(Outer::B, Inner::Up),
            ProjKind::Column => Cell::new(Outer::T, Inner::Down),
            ProjKind::Interior => Cell::new(Outer::T, Inner::Up),
        }
    }

    /// The cell spanning the socle.
    pub fn socle_cell(&self) -> Cell {
        Cell::new(Outer::B, Inner::Down)
    }

    /// Bit code of a cell relative to this module's shape: arrows that
    /// cannot vary count as the zero code.
    pub fn cell_bits(&self, p: &Params, cell: Cell) -> (u8, u8) {
        let b1 = match self.kind(p) {
            ProjKind::Row | ProjKind::Interior => cell.inner.bits(),
            _ => 0,
        };
        let b2 = match self.kind(p) {
            ProjKind::Column | ProjKind::Interior => cell.outer.bits(),
            _ => 0,
        };
        (b1, b2)
    }

    /// The cell with the given relative bit code.
    pub fn cell_from_bits(&self, p: &Params, b1: u8, b2: u8) -> Cell {
        let inner = match self.kind(p) {
            ProjKind::Row | ProjKind::Interior => Inner::from_bits(b1),
            _ => Inner::Down,
        };
        let outer = match self.kind(p) {
            ProjKind::Column | ProjKind::Interior => Outer::from_bits(b2),
            _ => Outer::B,
        };
        Cell::new(outer, inner)
    }

    pub fn dim(&self, p: &Params) -> usize {
        self.cells(p)
            .into_iter()
            .map(|c| {
                let (nx, ny) = self.cell_shape(p, c);
                nx * ny
            })
            .sum()
    }

    /// Number of isomorphic copies `P(s1, s2)` in the algebra, `r1 r2`.
    pub fn multiplicity(&self) -> usize {
        self.r1 * self.r2
    }

    /// Position of a basis vector in basis order.
    pub fn local_index(&self, p: &Params, cell: Cell, x: usize, y: usize) -> Option<usize> {
        let mut offset = 0;
        for c in self.cells(p) {
            let (nx, ny) = self.cell_shape(p, c);
            if c == cell {
                return (x < nx && y < ny).then(|| offset + x + nx * y);
            }
            offset += nx * ny;
        }
        None
    }

    /// Inverse of [`ProjLabel::local_index`].
    pub fn basis_vector(&self, p: &Params, index: usize) -> Option<(Cell, usize, usize)> {
        let mut offset = 0;
        for c in self.cells(p) {
            let (nx, ny) = self.cell_shape(p, c);
            if index < offset + nx * ny {
                let k = index - offset;
                return Some((c, k % nx, k / nx));
            }
            offset += nx * ny;
        }
        None
    }

    /// All basis vectors in basis order.
    pub fn basis(&self, p: &Params) -> Vec<(Cell, usize, usize)> {
        (0..self.dim(p)).filter_map(|i| self.basis_vector(p, i)).collect()
    }

    /// The partner across the first ladder, `(-alpha, p1 - r1, r2)`.
    pub fn flip1(&self, p: &Params) -> ProjLabel {
        ProjLabel {
            alpha: self.alpha.flip(),
            r1: p.p1 - self.r1,
            r2: self.r2,
        }
    }

    /// The partner across the second ladder, `(-alpha, r1, p2 - r2)`.
    pub fn flip2(&self, p: &Params) -> ProjLabel {
        ProjLabel {
            alpha: self.alpha.flip(),
            r1: self.r1,
            r2: p.p2 - self.r2,
        }
    }

    /// `K`-eigenvalue exponent (in units of `zeta`) of a basis vector.
    pub fn weight_exponent(&self, p: &Params, cell: Cell, x: usize, y: usize) -> i64 {
        let n = p.n() as i64;
        let mut sign_minus = self.alpha == Sign::Minus;
        if cell.inner.sideways() {
            sign_minus = !sign_minus;
        }
        if cell.outer.sideways() {
            sign_minus = !sign_minus;
        }
        let (nx, ny) = self.cell_shape(p, cell);
        let e1 = nx as i64 - 1 - 2 * x as i64;
        let e2 = ny as i64 - 1 - 2 * y as i64;
        let q1 = 2 * p.p2 as i64;
        let q2 = 2 * p.p1 as i64;
        let sign = if sign_minus { n / 2 } else { 0 };
        (sign + q1 * e1 + q2 * e2).rem_euclid(n)
    }

    /// The block containing this module.
    pub fn block(&self, p: &Params) -> BlockLabel {
        let (p1, p2) = (p.p1, p.p2);
        match self.kind(p) {
            ProjKind::Simple => BlockLabel {
                r1: if self.alpha == Sign::Plus { p1 } else { 0 },
                r2: p2,
            },
            ProjKind::Row => BlockLabel {
                r1: if self.alpha == Sign::Plus { self.r1 } else { p1 - self.r1 },
                r2: p2,
            },
            ProjKind::Column => BlockLabel {
                r1: p1,
                r2: if self.alpha == Sign::Plus { self.r2 } else { p2 - self.r2 },
            },
            ProjKind::Interior => {
                // the block is named by the plus-signed member of the orbit
                // under both flips that lies in the interior index set
                let plus = match self.alpha {
                    Sign::Plus => (self.r1, self.r2),
                    Sign::Minus => (p1 - self.r1, self.r2),
                };
                let (r1, r2) = if in_interior_set(p, plus.0, plus.1) {
                    plus
                } else {
                    (p1 - plus.0, p2 - plus.1)
                };
                BlockLabel { r1, r2 }
            }
        }
    }
}

impl fmt::Display for ProjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{}_({},{})", self.alpha, self.r1, self.r2)
    }
}

/// Whether `(r1, r2)` is in the index set of interior blocks:
/// `1 <= r_i <= p_i - 1` and `p2 r1 + p1 r2 <= p1 p2`.
pub fn in_interior_set(p: &Params, r1: usize, r2: usize) -> bool {
    (1..p.p1).contains(&r1) && (1..p.p2).contains(&r2) && p.p2 * r1 + p.p1 * r2 <= p.p1 * p.p2
}

/// A two-sided block ideal `Q(r1, r2)`; `r1 = 0` with `r2 = p2` names the
/// block of `X^-_{p1,p2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockLabel {
    pub r1: usize,
    pub r2: usize,
}

impl BlockLabel {
    pub fn new(p: &Params, r1: usize, r2: usize) -> Result<Self> {
        let b = BlockLabel { r1, r2 };
        if BlockLabel::all(p).contains(&b) {
            Ok(b)
        } else {
            Err(Error::OutOfRange(format!(
                "Q({r1},{r2}) is not a block for ({}, {})",
                p.p1, p.p2
            )))
        }
    }

    /// All blocks: the two simple blocks, the row blocks, the column blocks
    /// and the interior blocks.
    pub fn all(p: &Params) -> Vec<BlockLabel> {
        let mut out = vec![BlockLabel { r1: p.p1, r2: p.p2 }, BlockLabel { r1: 0, r2: p.p2 }];
        out.extend((1..p.p1).map(|r1| BlockLabel { r1, r2: p.p2 }));
        out.extend((1..p.p2).map(|r2| BlockLabel { r1: p.p1, r2 }));
        for r1 in 1..p.p1 {
            for r2 in 1..p.p2 {
                if in_interior_set(p, r1, r2) {
                    out.push(BlockLabel { r1, r2 });
                }
            }
        }
        out
    }

    pub fn kind(&self, p: &Params) -> ProjKind {
        if self.r2 == p.p2 && (self.r1 == 0 || self.r1 == p.p1) {
            ProjKind::Simple
        } else if self.r2 == p.p2 {
            ProjKind::Row
        } else if self.r1 == p.p1 {
            ProjKind::Column
        } else {
            ProjKind::Interior
        }
    }

    /// The non-isomorphic projective modules in this block, in the order
    /// used by the matrix realization.
    pub fn summands(&self, p: &Params) -> Vec<ProjLabel> {
        let (p1, p2) = (p.p1, p.p2);
        let (r1, r2) = (self.r1, self.r2);
        let l = |alpha, r1, r2| ProjLabel { alpha, r1, r2 };
        match self.kind(p) {
            ProjKind::Simple if r1 == p1 => vec![l(Sign::Plus, p1, p2)],
            ProjKind::Simple => vec![l(Sign::Minus, p1, p2)],
            ProjKind::Row => vec![l(Sign::Plus, r1, p2), l(Sign::Minus, p1 - r1, p2)],
            ProjKind::Column => vec![l(Sign::Plus, p1, r2), l(Sign::Minus, p1, p2 - r2)],
            ProjKind::Interior => vec![
                l(Sign::Plus, r1, r2),
                l(Sign::Minus, p1 - r1, r2),
                l(Sign::Minus, r1, p2 - r2),
                l(Sign::Plus, p1 - r1, p2 - r2),
            ],
        }
    }

    /// Dimension of the block: each summand appears with multiplicity
    /// `r1 r2` (the number of its `(s1, s2)` copies).
    pub fn dim(&self, p: &Params) -> usize {
        self.summands(p).iter().map(|s| s.dim(p) * s.multiplicity()).sum()
    }

    /// Total number of primitive idempotents in the block.
    pub fn idempotent_count(&self, p: &Params) -> usize {
        self.summands(p).iter().map(|s| s.multiplicity()).sum()
    }

    /// Parses `"r1,r2"` or `"r1 r2"`.
    pub fn parse(p: &Params, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let bad = || Error::Format(format!("block label must be two integers, got {s:?}"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let r1 = parts[0].parse().map_err(|_| bad())?;
        let r2 = parts[1].parse().map_err(|_| bad())?;
        BlockLabel::new(p, r1, r2)
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({},{})", self.r1, self.r2)
    }
}

/// One named basis vector of the left ideal `P_label(s1, s2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisKey {
    pub label: ProjLabel,
    pub s1: usize,
    pub s2: usize,
    pub cell: Cell,
    pub x: usize,
    pub y: usize,
}

impl BasisKey {
    pub fn validate(&self, p: &Params) -> Result<()> {
        let l = &self.label;
        if !(1..=l.r1).contains(&self.s1) || !(1..=l.r2).contains(&self.s2) {
            return Err(Error::OutOfRange(format!(
                "{l} needs 1 <= s1 <= {} and 1 <= s2 <= {}, got ({}, {})",
                l.r1, l.r2, self.s1, self.s2
            )));
        }
        if l.local_index(p, self.cell, self.x, self.y).is_none() {
            return Err(Error::OutOfRange(format!(
                "{l} has no basis vector {}[{}, {}]",
                self.cell, self.x, self.y
            )));
        }
        Ok(())
    }

    pub fn with(&self, cell: Cell, x: usize, y: usize) -> BasisKey {
        BasisKey { cell, x, y, ..*self }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(s={},{})[{}; {}, {}]",
            self.label, self.s1, self.s2, self.cell, self.x, self.y
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_dims_at_two_three() {
        let p = Params::new(2, 3).unwrap();
        let blocks = BlockLabel::all(&p);
        let dims: Vec<usize> = blocks.iter().map(|b| b.dim(&p)).collect();
        assert_eq!(dims, vec![36, 36, 72, 72, 72, 144]);
        assert_eq!(dims.iter().sum::<usize>(), p.dim());
        let idem: usize = blocks.iter().map(|b| b.idempotent_count(&p)).sum();
        assert_eq!(idem, 36);
        for b in &blocks {
            for s in b.summands(&p) {
                assert_eq!(s.block(&p), *b, "{s} in {b}");
            }
        }
    }

    #[test]
    fn local_index_round_trips() {
        let p = Params::new(3, 4).unwrap();
        let l = ProjLabel::new(&p, Sign::Minus, 2, 1).unwrap();
        assert_eq!(l.dim(&p), 4 * 12);
        for i in 0..l.dim(&p) {
            let (c, x, y) = l.basis_vector(&p, i).unwrap();
            assert_eq!(l.local_index(&p, c, x, y), Some(i));
        }
    }
}
