//! Discrete planning workspace: the measurable lattice, robot-visitable plan
//! points, robot state, and the axis-aligned action model.
//!
//! Coordinates are in measurable-lattice cells. The lattice (`X`) has one
//! point per cell; plan points (`G`) are the sub-lattice at `plan_stride`
//! multiples, so `|X| >= |G|` and every plan point is also measurable.
//! Flattened indices run x-fastest, then y, then z.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point in measurable-cell units. The third component is zero for 2-axis
/// worlds, which lets distance math stay branch-free.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Loc<T>(pub [T; 3]);

impl<T: Scalar> Loc<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Loc([x, y, z])
    }

    pub fn xy(x: T, y: T) -> Self {
        Loc([x, y, T::zero()])
    }

    /// Squared Euclidean distance.
    #[inline]
    pub fn dist2(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for a in 0..3 {
            let d = self.0[a] - other.0[a];
            acc += d * d;
        }
        acc
    }
}

/// Integer lattice coordinate.
pub type Cell = [i64; 3];

/// Grid geometry for one survey area.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridWorld {
    extents: [usize; 3],
    axes: usize,
    plan_stride: usize,
    cell_size: f64,
}

impl GridWorld {
    /// Build a world from measurable-lattice extents (2 or 3 axes).
    ///
    /// `plan_stride` is the spacing of plan points in measurable cells; 1
    /// makes every measurable cell visitable.
    pub fn new(dims: &[usize], plan_stride: usize, cell_size: f64) -> Result<Self> {
        if dims.len() < 2 || dims.len() > 3 {
            return Err(Error::InvalidGrid(format!(
                "expected 2 or 3 axes, got {}",
                dims.len()
            )));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidGrid("all extents must be >= 1".into()));
        }
        if plan_stride == 0 {
            return Err(Error::InvalidGrid("plan_stride must be >= 1".into()));
        }
        if !(cell_size > 0.0) {
            return Err(Error::InvalidGrid("cell_size must be positive".into()));
        }
        let mut extents = [1usize; 3];
        extents[..dims.len()].copy_from_slice(dims);
        Ok(GridWorld {
            extents,
            axes: dims.len(),
            plan_stride,
            cell_size,
        })
    }

    pub fn axes(&self) -> usize {
        self.axes
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn plan_stride(&self) -> usize {
        self.plan_stride
    }

    /// Measurable extent along `axis`.
    pub fn extent(&self, axis: usize) -> usize {
        self.extents[axis]
    }

    /// Plan-lattice extent along `axis`.
    pub fn plan_extent(&self, axis: usize) -> usize {
        (self.extents[axis] - 1) / self.plan_stride + 1
    }

    /// Number of measurable locations.
    pub fn measure_count(&self) -> usize {
        self.extents.iter().product()
    }

    /// Number of plan points.
    pub fn plan_count(&self) -> usize {
        (0..3).map(|a| self.plan_extent(a)).product()
    }

    /// Measurable cell for a flat measurable index.
    pub fn measure_cell(&self, index: usize) -> Cell {
        debug_assert!(index < self.measure_count());
        let nx = self.extents[0];
        let ny = self.extents[1];
        let x = index % nx;
        let y = (index / nx) % ny;
        let z = index / (nx * ny);
        [x as i64, y as i64, z as i64]
    }

    /// Flat measurable index for an in-bounds cell.
    pub fn measure_index(&self, cell: Cell) -> Option<usize> {
        for a in 0..3 {
            if cell[a] < 0 || cell[a] as usize >= self.extents[a] {
                return None;
            }
        }
        let nx = self.extents[0] as i64;
        let ny = self.extents[1] as i64;
        Some(((cell[2] * ny + cell[1]) * nx + cell[0]) as usize)
    }

    /// Plan cell (in plan-lattice steps) for a flat plan index.
    pub fn plan_cell(&self, index: usize) -> Cell {
        debug_assert!(index < self.plan_count());
        let nx = self.plan_extent(0);
        let ny = self.plan_extent(1);
        let x = index % nx;
        let y = (index / nx) % ny;
        let z = index / (nx * ny);
        [x as i64, y as i64, z as i64]
    }

    /// Flat plan index for an in-bounds plan cell.
    pub fn plan_index(&self, cell: Cell) -> Option<usize> {
        for a in 0..3 {
            if cell[a] < 0 || cell[a] as usize >= self.plan_extent(a) {
                return None;
            }
        }
        let nx = self.plan_extent(0) as i64;
        let ny = self.plan_extent(1) as i64;
        Some(((cell[2] * ny + cell[1]) * nx + cell[0]) as usize)
    }

    /// Measurable cell under a plan point.
    pub fn plan_to_measure_cell(&self, plan_index: usize) -> Cell {
        let c = self.plan_cell(plan_index);
        let s = self.plan_stride as i64;
        [c[0] * s, c[1] * s, c[2] * s]
    }

    /// Continuous location of a measurable cell.
    pub fn loc<T: Scalar>(&self, cell: Cell) -> Loc<T> {
        Loc([
            T::from_i64(cell[0]).unwrap(),
            T::from_i64(cell[1]).unwrap(),
            T::from_i64(cell[2]).unwrap(),
        ])
    }

    /// All measurable locations in index order.
    pub fn measure_locs<T: Scalar>(&self) -> Vec<Loc<T>> {
        (0..self.measure_count())
            .map(|i| self.loc(self.measure_cell(i)))
            .collect()
    }

    /// Nearest measurable index to a continuous location (per-axis round,
    /// clamped to bounds).
    pub fn snap<T: Scalar>(&self, loc: &Loc<T>) -> usize {
        let mut cell = [0i64; 3];
        for a in 0..3 {
            let hi = (self.extents[a] - 1) as i64;
            let r = crate::scalar::to_f64(loc.0[a]).round() as i64;
            cell[a] = r.clamp(0, hi);
        }
        self.measure_index(cell).expect("clamped cell in bounds")
    }

    /// Axis-aligned continuous hull of the measurable lattice:
    /// `(lower, upper)` corners in cell units.
    pub fn hull<T: Scalar>(&self) -> (Loc<T>, Loc<T>) {
        let mut hi = [T::zero(); 3];
        for a in 0..self.axes {
            hi[a] = T::from_usize(self.extents[a] - 1).unwrap();
        }
        (Loc([T::zero(); 3]), Loc(hi))
    }
}

/// One axis-aligned unit move on the plan lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Action {
    pub axis: usize,
    /// +1 or -1.
    pub dir: i8,
}

/// Robot state: where it is on the plan lattice and how much budget is left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobotState {
    pub position: usize,
    pub steps_taken: usize,
    pub budget: usize,
}

impl RobotState {
    pub fn new(position: usize, budget: usize) -> Self {
        RobotState {
            position,
            steps_taken: 0,
            budget,
        }
    }

    pub fn remaining_budget(&self) -> usize {
        self.budget - self.steps_taken
    }
}

/// Legal axis-aligned unit moves from `state`, axis-major with the negative
/// direction first. Every returned action stays on the plan lattice.
pub fn neighbors(state: &RobotState, world: &GridWorld) -> Vec<Action> {
    let cell = world.plan_cell(state.position);
    let mut out = Vec::with_capacity(2 * world.axes());
    for axis in 0..world.axes() {
        for dir in [-1i8, 1i8] {
            let mut c = cell;
            c[axis] += dir as i64;
            if world.plan_index(c).is_some() {
                out.push(Action { axis, dir });
            }
        }
    }
    out
}

/// Apply one action, advancing the step counter by one.
pub fn apply_action(state: &RobotState, action: Action, world: &GridWorld) -> Result<RobotState> {
    if state.steps_taken >= state.budget {
        return Err(Error::BudgetExhausted {
            taken: state.steps_taken,
            budget: state.budget,
        });
    }
    let mut cell = world.plan_cell(state.position);
    cell[action.axis] += action.dir as i64;
    let position = world.plan_index(cell).ok_or(Error::RejectedAction {
        axis: action.axis,
        dir: action.dir,
        from: state.position,
    })?;
    Ok(RobotState {
        position,
        steps_taken: state.steps_taken + 1,
        budget: state.budget,
    })
}
