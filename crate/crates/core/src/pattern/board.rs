use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A board position. `i` runs along x, `j` along y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub i: i32,
    pub j: i32,
}

impl Cell {
    pub const fn new(i: i32, j: i32) -> Self {
        Self { i, j }
    }

    pub fn as_i64(self) -> [i64; 2] {
        [self.i as i64, self.j as i64]
    }

    pub fn dist(self, other: Cell) -> f64 {
        let di = (self.i - other.i) as f64;
        let dj = (self.j - other.j) as f64;
        (di * di + dj * dj).sqrt()
    }
}

impl From<(i32, i32)> for Cell {
    fn from((i, j): (i32, i32)) -> Self {
        Cell::new(i, j)
    }
}

/// Enabled mirror axes. `x` mirrors across the x axis (flips `j`), `y`
/// across the y axis (flips `i`), `xy` across the diagonal (swaps `i`, `j`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub x: bool,
    pub y: bool,
    pub xy: bool,
}

impl Symmetry {
    pub const NONE: Symmetry = Symmetry { x: false, y: false, xy: false };
    pub const Y: Symmetry = Symmetry { x: false, y: true, xy: false };
    pub const XY: Symmetry = Symmetry { x: true, y: true, xy: false };
    pub const XY_DIAG: Symmetry = Symmetry { x: true, y: true, xy: true };

    /// Parses `"none"`, `"y"`, `"x,y"`, `"x,y,xy"` and similar.
    pub fn parse(s: &str) -> Result<Self> {
        let mut sym = Symmetry::NONE;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "x" => sym.x = true,
                "y" => sym.y = true,
                "xy" => sym.xy = true,
                "none" => {}
                other => return Err(Error::Parse(format!("unknown symmetry axis `{other}`"))),
            }
        }
        Ok(sym)
    }

    pub fn label(&self) -> String {
        let mut parts = vec![];
        if self.x {
            parts.push("x");
        }
        if self.y {
            parts.push("y");
        }
        if self.xy {
            parts.push("xy");
        }
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join(",")
        }
    }
}

/// Linear map on doubled, centered coordinates: `(u, v) -> (a u + b v, c u + d v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection([i32; 4]);

impl Reflection {
    const IDENTITY: Reflection = Reflection([1, 0, 0, 1]);

    fn compose(self, o: Reflection) -> Reflection {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Reflection([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    /// True for orientation-reversing elements.
    pub fn is_mirror(&self) -> bool {
        let [a, b, c, d] = self.0;
        a * d - b * c < 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Board {
    pub width: i32,
    pub height: i32,
    pub symmetry: Symmetry,
    /// `None` means unbounded.
    pub max_crease_length: Option<f64>,
}

impl Board {
    pub fn new(width: i32, height: i32, symmetry: Symmetry, max_crease_length: Option<f64>) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::InvalidConfig(format!("board {width}x{height} too small")));
        }
        if symmetry.xy && width != height {
            return Err(Error::InvalidConfig("xy symmetry needs a square board".into()));
        }
        Ok(Self { width, height, symmetry, max_crease_length })
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.i >= 0 && c.j >= 0 && c.i < self.width && c.j < self.height
    }

    pub fn check(&self, c: Cell) -> Result<Cell> {
        if self.contains(c) {
            Ok(c)
        } else {
            Err(Error::OutOfBounds(c.i, c.j))
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height).flat_map(move |j| (0..self.width).map(move |i| Cell::new(i, j)))
    }

    pub fn cell_count(&self) -> usize {
        (self.width * self.height) as usize
    }

    /// Row-major index of a cell.
    pub fn cell_index(&self, c: Cell) -> usize {
        (c.j * self.width + c.i) as usize
    }

    /// World xy of a cell, with the board center at the origin.
    pub fn world_xy(&self, c: Cell) -> [f64; 2] {
        [
            c.i as f64 - (self.width - 1) as f64 / 2.0,
            c.j as f64 - (self.height - 1) as f64 / 2.0,
        ]
    }

    pub fn center(&self) -> Cell {
        Cell::new((self.width - 1) / 2, (self.height - 1) / 2)
    }

    pub fn diagonal(&self) -> f64 {
        ((self.width * self.width + self.height * self.height) as f64).sqrt()
    }

    /// The symmetry group generated by the enabled axes, identity first.
    pub fn group(&self) -> Vec<Reflection> {
        let mut gens = vec![];
        if self.symmetry.y {
            gens.push(Reflection([-1, 0, 0, 1]));
        }
        if self.symmetry.x {
            gens.push(Reflection([1, 0, 0, -1]));
        }
        if self.symmetry.xy {
            gens.push(Reflection([0, 1, 1, 0]));
        }
        let mut group = vec![Reflection::IDENTITY];
        let mut i = 0;
        while i < group.len() {
            for g in &gens {
                let h = g.compose(group[i]);
                if !group.contains(&h) {
                    group.push(h);
                }
            }
            i += 1;
        }
        group
    }

    pub fn apply(&self, g: Reflection, c: Cell) -> Cell {
        let u = 2 * c.i - (self.width - 1);
        let v = 2 * c.j - (self.height - 1);
        let [a, b, cc, d] = g.0;
        let u2 = a * u + b * v;
        let v2 = cc * u + d * v;
        Cell::new((u2 + self.width - 1) / 2, (v2 + self.height - 1) / 2)
    }

    /// Orbit of a cell under the enabled reflections.
    pub fn reflect_action(&self, c: Cell) -> BTreeSet<Cell> {
        self.group().into_iter().map(|g| self.apply(g, c)).collect()
    }

    pub fn in_playable_area(&self, c: Cell) -> bool {
        let u = 2 * c.i - (self.width - 1);
        let v = 2 * c.j - (self.height - 1);
        self.contains(c)
            && (!self.symmetry.y || u <= 0)
            && (!self.symmetry.x || v <= 0)
            && (!self.symmetry.xy || u <= v)
    }

    /// Symmetry-reduced cells the agent acts on, row-major.
    pub fn playable_area(&self) -> Vec<Cell> {
        self.cells().filter(|&c| self.in_playable_area(c)).collect()
    }

    /// Canonical representative of a cell's orbit inside the playable area.
    pub fn representative(&self, c: Cell) -> Cell {
        self.group()
            .into_iter()
            .map(|g| self.apply(g, c))
            .find(|&r| self.in_playable_area(r))
            .unwrap_or(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_examples() {
        let b = Board::new(9, 9, Symmetry::XY, None).unwrap();
        let orbit: Vec<_> = b.reflect_action(Cell::new(2, 3)).into_iter().collect();
        let mut want = vec![Cell::new(2, 3), Cell::new(6, 3), Cell::new(2, 5), Cell::new(6, 5)];
        want.sort();
        assert_eq!(orbit, want);
        assert_eq!(b.reflect_action(Cell::new(4, 4)).len(), 1);
        let d = Board::new(9, 9, Symmetry::XY_DIAG, None).unwrap();
        assert_eq!(d.reflect_action(Cell::new(1, 3)).len(), 8);
    }

    #[test]
    fn playable_counts() {
        assert_eq!(Board::new(13, 13, Symmetry::XY, None).unwrap().playable_area().len(), 49);
        assert_eq!(Board::new(9, 9, Symmetry::NONE, None).unwrap().playable_area().len(), 81);
        assert_eq!(Board::new(25, 25, Symmetry::XY_DIAG, None).unwrap().playable_area().len(), 91);
        assert_eq!(Board::new(25, 25, Symmetry::Y, None).unwrap().playable_area().len(), 13 * 25);
    }

    #[test]
    fn playable_area_tiles_board() {
        for sym in [Symmetry::NONE, Symmetry::Y, Symmetry::XY, Symmetry::XY_DIAG] {
            for n in [5, 8, 9, 13] {
                let b = Board::new(n, n, sym, None).unwrap();
                let covered: BTreeSet<Cell> = b.playable_area().into_iter().flat_map(|c| b.reflect_action(c)).collect();
                assert_eq!(covered.len(), b.cell_count(), "{sym:?} {n}");
            }
        }
    }

    #[test]
    fn parse_symmetry() {
        assert_eq!(Symmetry::parse("x,y").unwrap(), Symmetry::XY);
        assert_eq!(Symmetry::parse("none").unwrap(), Symmetry::NONE);
        assert!(Symmetry::parse("z").is_err());
    }
}
