use super::{Engine, FuzzyError};

/// Output sampled over a grid of two inputs, remaining inputs held fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub axis_i: usize,
    pub axis_j: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `values[a][b]` is the output at `(xs[a], ys[b])`; `None` when no rule fired.
    pub values: Vec<Vec<Option<f64>>>,
}

impl Surface {
    pub fn shape(&self) -> (usize, usize) {
        (self.xs.len(), self.ys.len())
    }
}

/// Sweep inputs `axis_i` and `axis_j` over their ranges on an `(ni, nj)` grid.
///
/// `fixed` supplies a value for every input; entries at the two axes are ignored.
pub fn control_surface(
    engine: &Engine,
    axis_i: usize,
    axis_j: usize,
    fixed: &[f64],
    grid: (usize, usize),
    output: usize,
) -> Result<Surface, FuzzyError> {
    let sys = engine.system();
    let n_inputs = sys.inputs.len();
    if axis_i == axis_j || axis_i >= n_inputs || axis_j >= n_inputs {
        return Err(FuzzyError::Axes { axis_i, axis_j, inputs: n_inputs });
    }
    if grid.0 < 2 || grid.1 < 2 {
        return Err(FuzzyError::Grid(grid.0, grid.1));
    }
    if fixed.len() != n_inputs {
        return Err(FuzzyError::InputCount { expected: n_inputs, got: fixed.len() });
    }
    if output >= sys.outputs.len() {
        return Err(FuzzyError::OutputIndex(output));
    }

    let xs: Vec<f64> = sys.inputs[axis_i].range.grid(grid.0).collect();
    let ys: Vec<f64> = sys.inputs[axis_j].range.grid(grid.1).collect();
    let mut point = fixed.to_vec();
    let mut scratch = Default::default();
    let mut values = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut row = Vec::with_capacity(ys.len());
        for &y in &ys {
            point[axis_i] = x;
            point[axis_j] = y;
            let cell = match engine.infer_with(&point, &mut scratch) {
                Ok(inf) if inf.fired[output] => Some(inf.outputs[output]),
                _ => None,
            };
            row.push(cell);
        }
        values.push(row);
    }
    Ok(Surface { axis_i, axis_j, xs, ys, values })
}
