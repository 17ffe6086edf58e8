//! The fundamental matrix `M(i,j) = p^jG[p^i]`: rows are exponents `1..=e`,
//! columns are heights `0..e`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{fi_form_name, GroupTable, Subgroup};
use crate::indicator::Indicator;
use crate::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M({},{})", self.row, self.col)
    }
}

/// `M(i,j) ∨ M(k,ℓ) = M(max{i,k}, min{j,ℓ})` as an index formula.
pub fn entry_join(c1: Cell, c2: Cell) -> Cell {
    Cell::new(c1.row.max(c2.row), c1.col.min(c2.col))
}

/// `M(i,j) ∧ M(k,ℓ) = M(min{i,k}, max{j,ℓ})` as an index formula.
pub fn entry_meet(c1: Cell, c2: Cell) -> Cell {
    Cell::new(c1.row.min(c2.row), c1.col.max(c2.col))
}

/// The cells around a pivot: weakly below-right, weakly above-left, and the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quartering {
    pub pivot: Cell,
    /// `k ≤ i`, `ℓ ≥ j`, pivot excluded: entries contained in the pivot.
    pub south_east: Vec<Cell>,
    /// `k ≥ i`, `ℓ ≤ j`, pivot excluded: entries containing the pivot.
    pub north_west: Vec<Cell>,
    pub incomparable: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RisingPath {
    cells: Vec<Cell>,
}

impl RisingPath {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let ok = cells
            .windows(2)
            .all(|w| w[1].row == w[0].row + 1 && w[1].col > w[0].col);
        if !ok {
            return Err(Error::InvalidInput(
                "rising path rows must step by one and columns strictly increase".into(),
            ));
        }
        Ok(Self { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn start_row(&self) -> Option<u32> {
        self.cells.first().map(|c| c.row)
    }

    fn columns(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c.col).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FundMatrix {
    e: u32,
    entries: Vec<Subgroup>,
    homocyclic_cols: Vec<u32>,
    ulm: Vec<u64>,
}

impl FundMatrix {
    pub fn build(t: &GroupTable) -> Self {
        let g = t.spec();
        let e = g.exponent();
        let mut entries = Vec::with_capacity((e * e) as usize);
        for row in 1..=e {
            for col in 0..e {
                entries.push(t.fundamental(col, row));
            }
        }
        Self {
            e,
            entries,
            homocyclic_cols: (0..g.components().len() as u32).collect(),
            ulm: g.ulm_invariants(),
        }
    }

    pub fn size(&self) -> u32 {
        self.e
    }

    pub fn homocyclic_cols(&self) -> &[u32] {
        &self.homocyclic_cols
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.e).flat_map(|r| (0..self.e).map(move |c| Cell::new(r, c)))
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        (1..=self.e).contains(&c.row) && c.col < self.e
    }

    pub fn entry(&self, c: Cell) -> Result<&Subgroup> {
        if !self.contains_cell(c) {
            return Err(Error::IndexOutOfRange {
                index: ((c.row.max(1) - 1) * self.e + c.col) as usize,
                len: self.entries.len(),
            });
        }
        Ok(&self.entries[((c.row - 1) * self.e + c.col) as usize])
    }

    pub fn quartering(&self, pivot: Cell) -> Result<Quartering> {
        self.entry(pivot)?;
        let mut q = Quartering {
            pivot,
            south_east: vec![],
            north_west: vec![],
            incomparable: vec![],
        };
        for c in self.cells().filter(|&c| c != pivot) {
            if c.row <= pivot.row && c.col >= pivot.col {
                q.south_east.push(c);
            } else if c.row >= pivot.row && c.col <= pivot.col {
                q.north_west.push(c);
            } else {
                q.incomparable.push(c);
            }
        }
        Ok(q)
    }

    /// Least homocyclic column `ℓ` with `M(i,ℓ) = M(i,j)`.
    pub fn alias(&self, c: Cell) -> Result<u32> {
        let target = self.entry(c)?;
        let none = Error::NoAlias {
            row: c.row,
            col: c.col,
        };
        if target.is_trivial() {
            return Err(none);
        }
        if self.homocyclic_cols.contains(&c.col) {
            return Ok(c.col);
        }
        for &l in &self.homocyclic_cols {
            if self.entry(Cell::new(c.row, l))? == target {
                return Ok(l);
            }
        }
        Err(none)
    }

    /// A column jump of more than one at column `j` needs `u_j ≠ 0`.
    pub fn path_is_admissible(&self, path: &RisingPath) -> bool {
        path.cells.iter().all(|&c| self.contains_cell(c))
            && path
                .cells
                .windows(2)
                .all(|w| w[1].col == w[0].col + 1 || self.ulm[w[0].col as usize] != 0)
    }

    /// Every rising path in the full grid, the empty path included.
    pub fn rising_paths(&self, budget: &Budget) -> Result<Vec<RisingPath>> {
        let e = self.e;
        let count: u64 = (1..=e)
            .map(|start| {
                (1..=e - start + 1)
                    .map(|k| binomial(e as u64, k as u64))
                    .sum::<u64>()
            })
            .sum::<u64>()
            + 1;
        if count > budget.max_elements {
            return Err(Error::GroupTooLarge {
                size: format!("{count} rising paths"),
                limit: budget.max_elements,
            });
        }
        let mut out = vec![RisingPath { cells: vec![] }];
        for mask in 1u64..1 << e {
            let cols: Vec<u32> = (0..e).filter(|&j| mask >> j & 1 == 1).collect();
            for start in 1..=e + 1 - cols.len() as u32 {
                out.push(RisingPath {
                    cells: cols
                        .iter()
                        .enumerate()
                        .map(|(t, &j)| Cell::new(start + t as u32, j))
                        .collect(),
                });
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn admissible_rising_paths(&self, budget: &Budget) -> Result<Vec<RisingPath>> {
        Ok(self
            .rising_paths(budget)?
            .into_iter()
            .filter(|p| self.path_is_admissible(p))
            .collect())
    }

    /// Reads the columns of an admissible path as an indicator.
    pub fn path_to_indicator(&self, path: &RisingPath) -> Result<Indicator> {
        if !self.path_is_admissible(path) {
            return Err(Error::NotAdmissible(format!("path {:?}", path.columns())));
        }
        Indicator::new(path.columns())
    }

    /// Lays `σ` out from `start_row` upward: `(start_row + t, σ_t)`.
    pub fn indicator_to_path(&self, sigma: &Indicator, start_row: u32) -> Result<RisingPath> {
        let path = RisingPath {
            cells: sigma
                .entries()
                .iter()
                .enumerate()
                .map(|(t, &j)| Cell::new(start_row + t as u32, j))
                .collect(),
        };
        if !self.path_is_admissible(&path) {
            return Err(Error::NotAdmissible(format!(
                "{sigma} from row {start_row}"
            )));
        }
        Ok(path)
    }

    /// The cells `M(t+1, σ_t)` whose sum is compared with `G(σ)`.
    pub fn sigma_cells(&self, sigma: &Indicator) -> Vec<Cell> {
        sigma
            .entries()
            .iter()
            .enumerate()
            .map(|(t, &j)| Cell::new(t as u32 + 1, j))
            .filter(|&c| self.contains_cell(c))
            .collect()
    }

    /// `Σ_t M(t+1, σ_t)`; cells outside the grid contribute 0.
    pub fn sigma_sum(&self, t: &GroupTable, sigma: &Indicator) -> Subgroup {
        let mut acc = t.trivial();
        for c in self.sigma_cells(sigma) {
            acc = t
                .sum(&acc, self.entry(c).expect("in grid"))
                .expect("same group");
        }
        acc
    }

    /// Text rendering: top row is the highest exponent.
    pub fn render_text(&self, t: &GroupTable) -> String {
        let g = t.spec();
        let names: Vec<Vec<String>> = (1..=self.e)
            .rev()
            .map(|r| {
                (0..self.e)
                    .map(|c| {
                        let s = self.entry(Cell::new(r, c)).expect("in grid");
                        fi_form_name(g, s.fi_form.as_deref().expect("fundamental"))
                    })
                    .collect()
            })
            .collect();
        let width = names
            .iter()
            .flatten()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        out.push_str(&format!("{:>8}", ""));
        for c in 0..self.e {
            let mark = if self.homocyclic_cols.contains(&c) {
                "*"
            } else {
                " "
            };
            out.push_str(&format!("  {:<width$}", format!("j={c}{mark}")));
        }
        out.push('\n');
        for (k, row) in names.iter().enumerate() {
            out.push_str(&format!("{:>8}", format!("i={}", self.e - k as u32)));
            for name in row {
                let pad = width - name.chars().count();
                out.push_str(&format!("  {name}{}", " ".repeat(pad)));
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, t: &GroupTable) -> serde_json::Value {
        let g = t.spec();
        let rows: Vec<serde_json::Value> = (1..=self.e)
            .rev()
            .map(|r| {
                let cells: Vec<serde_json::Value> = (0..self.e)
                    .map(|c| {
                        let s = self.entry(Cell::new(r, c)).expect("in grid");
                        let alpha = s.fi_form.clone().expect("fundamental");
                        serde_json::json!({
                            "row": r,
                            "col": c,
                            "alpha": alpha,
                            "name": fi_form_name(g, &alpha),
                            "order": s.order(),
                        })
                    })
                    .collect();
                serde_json::Value::Array(cells)
            })
            .collect();
        serde_json::json!({
            "group": g,
            "size": self.e,
            "homocyclic_cols": self.homocyclic_cols,
            "rows": rows,
        })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
