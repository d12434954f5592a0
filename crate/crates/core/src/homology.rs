//! Homology of configuration spaces computed from the Świątkowski complex.

use std::sync::Arc;

use crate::complex::{ComplexError, Mode, SwComplex};
use crate::field::{rank_over, FieldKind, PrimeField};
use crate::graph::Graph;
use crate::snf::{self, AbelianGroup};

impl SwComplex {
    /// `H_q` at weight `n`, with integer coefficients.
    pub fn homology(&self, q: usize, n: usize) -> AbelianGroup {
        snf::homology_unchecked(&self.boundary(q + 1, n), &self.boundary(q, n))
    }

    /// `dim H_q` at weight `n` over `field`.
    pub fn field_homology_dim(&self, q: usize, n: usize, field: FieldKind) -> usize {
        let dim = self.dim(q, n);
        let (out, inc) = (self.boundary(q, n), self.boundary(q + 1, n));
        let (r_out, r_in) = match field {
            FieldKind::Rational => (snf::rank(&out), snf::rank(&inc)),
            FieldKind::Prime(p) => {
                let f = PrimeField::new(p).expect("validated prime");
                (rank_over(&f, &out), rank_over(&f, &inc))
            }
        };
        dim - r_out - r_in
    }

    /// Euler characteristic of the weight-`n` strand.
    pub fn euler_characteristic(&self, n: usize) -> i64 {
        (0..=self.max_q().min(n))
            .map(|q| {
                let d = self.dim(q, n) as i64;
                if q % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

/// `H_q(UF_n(G); Z)`.
pub fn configuration_homology(g: &Graph, q: usize, n: usize, mode: Mode) -> Result<AbelianGroup, ComplexError> {
    Ok(SwComplex::new(Arc::new(g.clone()), mode)?.homology(q, n))
}

/// `dim_k H_q(UF_n(G); k)`.
pub fn field_betti(g: &Graph, q: usize, n: usize, mode: Mode, field: FieldKind) -> Result<usize, ComplexError> {
    Ok(SwComplex::new(Arc::new(g.clone()), mode)?.field_homology_dim(q, n, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn segment_is_connected() {
        assert_eq!(
            configuration_homology(&segment(), 0, 3, Mode::Reduced).unwrap(),
            AbelianGroup::free(1)
        );
        assert_eq!(field_betti(&segment(), 0, 5, Mode::Reduced, FieldKind::Rational).unwrap(), 1);
    }

    #[test]
    fn cycle_first_homology() {
        for mode in [Mode::Full, Mode::Reduced] {
            assert_eq!(
                configuration_homology(&cycle3(), 1, 2, mode).unwrap(),
                AbelianGroup::free(1)
            );
        }
    }

    #[test]
    fn star_two_points() {
        assert_eq!(
            configuration_homology(&star3(), 1, 2, Mode::Reduced).unwrap(),
            AbelianGroup::free(1)
        );
        for field in [FieldKind::Rational, FieldKind::Prime(2)] {
            assert_eq!(field_betti(&star3(), 1, 2, Mode::Reduced, field).unwrap(), 1);
        }
    }
}
