//! Uniform 1D grid, multi-species nodal storage, Dirichlet pinning, and
//! ghost-cell extension for the 6-point flux windows.
//!
//! Boundary nodes are held at their Dirichlet values and never time-integrated;
//! ghost cells are filled with the boundary value itself (constant extension),
//! which is exact whenever the wave front stays away from the domain ends.

use crate::error::SolverError;

/// Smallest cell count for which the 6-point stencil fits in the domain.
pub const MIN_CELLS: usize = 6;

/// Ghost cells per side needed by the flux windows at the outermost half points.
pub const GHOST_WIDTH: usize = 3;

/// Uniform mesh on `[a, b]` with `n_cells + 1` nodes `x_i = a + i*dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n_cells: usize,
    dx: f64,
}

impl Grid {
    pub fn new(a: f64, b: f64, n_cells: usize) -> Result<Self, SolverError> {
        if !(b > a) || n_cells < MIN_CELLS || !a.is_finite() || !b.is_finite() {
            return Err(SolverError::InvalidDomain { a, b, n_cells });
        }
        let dx = (b - a) / n_cells as f64;
        Ok(Grid { a, b, n_cells, dx })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// Number of nodes, `n_cells + 1`.
    pub fn points(&self) -> usize {
        self.n_cells + 1
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Node coordinate `x_i = a + i*dx`. Valid for ghost indices too when
    /// called through [`Grid::x_offset`].
    pub fn x(&self, i: usize) -> f64 {
        self.a + i as f64 * self.dx
    }

    /// Coordinate at a possibly negative node offset (ghost positions).
    pub fn x_offset(&self, i: isize) -> f64 {
        self.a + i as f64 * self.dx
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points()).map(move |i| self.x(i))
    }
}

/// Per-species nodal values at one time level, one contiguous slice per species.
#[derive(Debug, Clone, PartialEq)]
pub struct StateField {
    species: usize,
    points: usize,
    data: Vec<f64>,
}

impl StateField {
    pub fn zeros(species: usize, points: usize) -> Self {
        assert!(species > 0 && points > 0);
        StateField {
            species,
            points,
            data: vec![0.0; species * points],
        }
    }

    /// Build from a closure `(species, node) -> value`.
    pub fn from_fn(species: usize, points: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut field = StateField::zeros(species, points);
        for s in 0..species {
            for i in 0..points {
                field.data[s * points + i] = f(s, i);
            }
        }
        field
    }

    pub fn species_count(&self) -> usize {
        self.species
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn species(&self, s: usize) -> &[f64] {
        &self.data[s * self.points..(s + 1) * self.points]
    }

    pub fn species_mut(&mut self, s: usize) -> &mut [f64] {
        &mut self.data[s * self.points..(s + 1) * self.points]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// True when every value is finite and below `threshold` in magnitude.
    /// The negated comparison also rejects NaN.
    pub fn within_bounds(&self, threshold: f64) -> bool {
        self.data.iter().all(|v| v.abs() <= threshold)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Dirichlet values per species at the two domain ends, equal to the
/// equilibrium states the traveling wave connects.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    left: Vec<f64>,
    right: Vec<f64>,
}

impl BoundarySpec {
    pub fn new(left: Vec<f64>, right: Vec<f64>) -> Result<Self, SolverError> {
        if left.len() != right.len() || left.is_empty() {
            return Err(SolverError::ShapeMismatch {
                context: "boundary values",
                expected: left.len().max(1),
                actual: right.len(),
            });
        }
        Ok(BoundarySpec { left, right })
    }

    pub fn scalar(left: f64, right: f64) -> Self {
        BoundarySpec {
            left: vec![left],
            right: vec![right],
        }
    }

    pub fn species_count(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, s: usize) -> f64 {
        self.left[s]
    }

    pub fn right(&self, s: usize) -> f64 {
        self.right[s]
    }
}

/// Copy one species into `out` with `ghost` constant-extension cells per side.
/// `out` is resized to `values.len() + 2*ghost`.
pub fn extend_species_into(values: &[f64], left: f64, right: f64, ghost: usize, out: &mut Vec<f64>) {
    out.clear();
    out.reserve(values.len() + 2 * ghost);
    out.extend(std::iter::repeat(left).take(ghost));
    out.extend_from_slice(values);
    out.extend(std::iter::repeat(right).take(ghost));
}

/// Ghost-extended copy of every species: each returned array has length
/// `points + 2*ghost_width`, with the boundary value repeated in the ghosts
/// and the interior copied verbatim.
pub fn extend_with_ghosts(
    field: &StateField,
    bc: &BoundarySpec,
    ghost_width: usize,
) -> Result<Vec<Vec<f64>>, SolverError> {
    if bc.species_count() != field.species_count() {
        return Err(SolverError::ShapeMismatch {
            context: "ghost extension species",
            expected: field.species_count(),
            actual: bc.species_count(),
        });
    }
    let mut extended = Vec::with_capacity(field.species_count());
    for s in 0..field.species_count() {
        let mut ext = Vec::new();
        extend_species_into(field.species(s), bc.left(s), bc.right(s), ghost_width, &mut ext);
        extended.push(ext);
    }
    Ok(extended)
}

/// Overwrite the first and last node of every species with its Dirichlet
/// value. Idempotent; interior nodes untouched.
pub fn apply_dirichlet(field: &mut StateField, bc: &BoundarySpec) {
    let n = field.points();
    for s in 0..field.species_count() {
        let values = field.species_mut(s);
        values[0] = bc.left(s);
        values[n - 1] = bc.right(s);
    }
}
