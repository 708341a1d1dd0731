//! Cohomology bookkeeping for `P^N` and a degree-`l` hypersurface `Y` in it.
//!
//! Only powers of the hyperplane class are ever needed: on the hypersurface
//! we work in the restricted subring generated by `i*H`, whose graded pieces
//! all have rank one. A class is therefore just an exponent, and a class
//! whose exponent exceeds the dimension is the zero class (kept representable
//! so enumerators can generate first and prune afterwards).

use crate::rational::Rat;

/// Ambient projective dimension `N` and hypersurface degree `l`.
///
/// `N >= 2` is required whenever a hypersurface is actually in play
/// (`Y` would be a point set in `P^1`); purely ambient computations accept
/// `N >= 1` so that invariants of a hyperplane section can be compared
/// against those of `P^(N-1)` all the way down.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Geometry {
    pub ambient_dim: u32,
    pub hyp_degree: u32,
}

impl Geometry {
    pub fn new(ambient_dim: u32, hyp_degree: u32) -> Self {
        assert!(ambient_dim >= 1, "ambient projective dimension must be >= 1");
        assert!(hyp_degree >= 1, "hypersurface degree must be >= 1");
        Geometry {
            ambient_dim,
            hyp_degree,
        }
    }

    /// `Y . beta` for a curve class of degree `d`: the maximal total
    /// tangency of a degree-`d` curve with `Y`.
    pub fn contact_budget(&self, d: u32) -> u32 {
        self.hyp_degree * d
    }

    /// True for the generic quadric and cubic surfaces in `P^3`, where the
    /// restricted subring misses part of the algebraic cohomology of `Y`;
    /// outputs are then restricted invariants only.
    pub fn restricted_only(&self) -> bool {
        matches!(
            (self.ambient_dim, self.hyp_degree),
            (3, 2) | (3, 3)
        )
    }

    /// Poincare pairing of `H^a` and `H^b` on `P^N`.
    pub fn pair_ambient(&self, a: u32, b: u32) -> Rat {
        if a + b == self.ambient_dim {
            Rat::one()
        } else {
            Rat::zero()
        }
    }

    /// Pairing of `i*H^a` and `i*H^b` on `Y`: the degree of `Y` in top
    /// complementary dimension, zero otherwise.
    pub fn pair_hyp(&self, a: u32, b: u32) -> Rat {
        if a + b + 1 == self.ambient_dim {
            Rat::from(self.hyp_degree)
        } else {
            Rat::zero()
        }
    }

    /// Restricted diagonal of `Y x Y`: the terms `(a, N-1-a, 1/l)` for
    /// `a = 0..N-1`, dual with respect to [`Geometry::pair_hyp`].
    pub fn diagonal_hyp(&self) -> Vec<DiagonalTerm> {
        let inv_l = Rat::one() / Rat::from(self.hyp_degree);
        (0..self.ambient_dim)
            .map(|a| DiagonalTerm {
                left: a,
                right: self.ambient_dim - 1 - a,
                coeff: inv_l.clone(),
            })
            .collect()
    }

    /// Dual of `H^a` in `P^N` with respect to the ambient pairing.
    /// `None` signals the zero class (exponent out of range); callers treat
    /// the term as absent.
    pub fn dual_ambient(&self, a: u32) -> Option<(u32, Rat)> {
        (a <= self.ambient_dim).then(|| (self.ambient_dim - a, Rat::one()))
    }
}

/// One summand of the restricted diagonal decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTerm {
    pub left: u32,
    pub right: u32,
    pub coeff: Rat,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_ambient_examples() {
        let g = Geometry::new(4, 5);
        assert_eq!(g.pair_ambient(2, 2), Rat::one());
        assert_eq!(g.pair_ambient(1, 1), Rat::zero());
        assert_eq!(Geometry::new(2, 1).pair_ambient(0, 2), Rat::one());
    }

    #[test]
    fn pair_hyp_examples() {
        let g = Geometry::new(4, 5);
        assert_eq!(g.pair_hyp(1, 2), Rat::from(5i64));
        assert_eq!(g.pair_hyp(3, 3), Rat::zero());
        assert_eq!(Geometry::new(2, 1).pair_hyp(0, 1), Rat::one());
    }

    #[test]
    fn pairings_symmetric() {
        let g = Geometry::new(3, 3);
        for a in 0..=4 {
            for b in 0..=4 {
                assert_eq!(g.pair_ambient(a, b), g.pair_ambient(b, a));
                assert_eq!(g.pair_hyp(a, b), g.pair_hyp(b, a));
            }
        }
    }

    #[test]
    fn diagonal_line_in_plane() {
        let g = Geometry::new(2, 1);
        let d = g.diagonal_hyp();
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].left, d[0].right), (0, 1));
        assert_eq!((d[1].left, d[1].right), (1, 0));
        assert!(d.iter().all(|t| t.coeff == Rat::one()));
    }

    #[test]
    fn diagonal_quintic() {
        let g = Geometry::new(4, 5);
        let d = g.diagonal_hyp();
        let fifth = Rat::new(1, 5);
        assert_eq!(d.len(), 4);
        for (a, t) in d.iter().enumerate() {
            assert_eq!(t.left, a as u32);
            assert_eq!(t.right, 3 - a as u32);
            assert_eq!(t.coeff, fifth);
        }
    }

    #[test]
    fn diagonal_reproduces_identity() {
        // sum_t coeff * pair_hyp(a, t.right) * [t.left == b] == delta_ab
        for (n, l) in [(2u32, 1u32), (3, 3), (4, 5)] {
            let g = Geometry::new(n, l);
            for a in 0..n {
                for b in 0..n {
                    let mut s = Rat::zero();
                    for t in g.diagonal_hyp() {
                        if t.left == b {
                            s += &t.coeff * &g.pair_hyp(a, t.right);
                        }
                    }
                    let expect = if a == b { Rat::one() } else { Rat::zero() };
                    assert_eq!(s, expect, "N={n} l={l} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn dual_ambient_examples() {
        assert_eq!(Geometry::new(3, 1).dual_ambient(1), Some((2, Rat::one())));
        assert_eq!(Geometry::new(2, 1).dual_ambient(0), Some((2, Rat::one())));
        assert_eq!(Geometry::new(4, 1).dual_ambient(4), Some((0, Rat::one())));
        assert_eq!(Geometry::new(2, 1).dual_ambient(3), None);
    }
}
