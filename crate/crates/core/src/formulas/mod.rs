//! Closed-form counts, volumes, densities and removal radii.
//!
//! Rational coefficients are assembled exactly; intervals enter only when a
//! coefficient meets a transcendental constant.

mod catalog;
mod counts;
mod density;
mod steiner;

pub use catalog::{
    lhuilier_area, representative_vertices, CatalogEntry, Dim, FaceAngleTable, FaceEdgeCatalog,
};
pub use counts::{g_truncated, g_y};
pub use density::{DensityOrder, PackingSummary, Shape};
pub use steiner::{
    truncated_form, y_plus_ball_form, Basis, BreakdownForms, LinearForm, SteinerBreakdown,
    BASIS_LEN,
};

use crate::interval::{ConstantTable, Interval, Kernel, STANDARD_CONSTANTS};

/// Constant table plus kernel settings; every real-valued formula is a
/// method on this.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub constants: ConstantTable,
    pub kernel: Kernel,
    basis: [Interval; BASIS_LEN],
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(STANDARD_CONSTANTS, Kernel::EXACT)
    }
}

impl Evaluator {
    pub fn new(constants: ConstantTable, kernel: Kernel) -> Self {
        let c = &constants;
        let k = &kernel;
        let edge_excess = k.sub(k.scale_int(c.acos_one_third, 3), c.pi);
        let basis = [
            Interval::ONE,
            c.sqrt2,
            c.pi,
            k.mul(c.sqrt3, c.pi),
            edge_excess,
            c.atan_silver,
            c.pi_sq,
        ];
        Evaluator {
            constants,
            kernel,
            basis,
        }
    }

    pub fn with_kernel(kernel: Kernel) -> Self {
        Evaluator::new(STANDARD_CONSTANTS, kernel)
    }

    pub fn basis_value(&self, b: Basis) -> Interval {
        self.basis[b as usize]
    }
}
