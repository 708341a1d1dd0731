//! Independent oracles backing the self-check suite.
//!
//! - [`schubert_lines`]: line counts on hypersurfaces via Schubert calculus
//!   on the Grassmannian of lines,
//! - [`kontsevich_p2`]: rational plane curves through `3d-1` points via the
//!   classical cross-ratio recursion,
//! - [`quintic_mirror`]: quintic instanton numbers from the hypergeometric
//!   period, the mirror map and the normalized Yukawa coupling.
//!
//! These share the exact rational type with the engine but none of its code
//! paths, so agreement between the two is meaningful evidence.

use crate::rational::Rat;
use crate::series::Series;
use num::bigint::BigInt;
use num::{One, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "no finite line count: Sym^{l} S* has rank {rank} but G(2,{amb}) has dimension {dim}"
    )]
    RankMismatch {
        l: u32,
        rank: u32,
        amb: u32,
        dim: u32,
    },
    #[error("degree bound must be >= 1")]
    EmptyRange,
}

/// Number of lines on a generic degree-`l` hypersurface in `P^N`:
/// the integral of the top Chern class of `Sym^l S*` over `G(2, N+1)`.
///
/// Requires `l + 1 = 2(N - 1)` so that the count is finite. The Chern roots
/// of `S*` being `x1, x2`, the class to integrate is
/// `prod_{j=0..l} (j*x1 + (l-j)*x2)`; expanding into monomials and writing
/// the symmetric result in the Schur basis, the coefficient of the top class
/// `sigma_{N-1,N-1}` is `p_{N-1} - p_{N-2}` where `p_i` is the coefficient
/// of `x1^i x2^{L-i}`.
pub fn schubert_lines(ambient_dim: u32, l: u32) -> Result<BigInt, OracleError> {
    let dim = 2 * (ambient_dim - 1);
    if l + 1 != dim {
        return Err(OracleError::RankMismatch {
            l,
            rank: l + 1,
            amb: ambient_dim + 1,
            dim,
        });
    }
    // coeffs[i] = coefficient of x1^i in the homogeneous product so far
    let mut coeffs: Vec<BigInt> = vec![BigInt::one()];
    for j in 0..=l {
        let a = BigInt::from(j);
        let b = BigInt::from(l - j);
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += &a * c;
            next[i] += &b * c;
        }
        coeffs = next;
    }
    let m = (ambient_dim - 1) as usize;
    Ok(&coeffs[m] - &coeffs[m - 1])
}

/// Rational plane curves of degree `1..=dmax` through `3d - 1` general
/// points, by the recursion
/// `N_d = sum_{d1+d2=d} N_{d1} N_{d2} (d1^2 d2^2 C(3d-4,3d1-2) - d1^3 d2 C(3d-4,3d1-1))`
/// with `N_1 = 1`.
pub fn kontsevich_p2(dmax: u32) -> Vec<BigInt> {
    let dmax = dmax as usize;
    let mut n: Vec<BigInt> = vec![BigInt::zero(); dmax + 1];
    if dmax >= 1 {
        n[1] = BigInt::one();
    }
    for d in 2..=dmax {
        let mut total = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let c1 = binomial(3 * d - 4, 3 * d1 - 2);
            let c2 = binomial(3 * d - 4, 3 * d1 - 1);
            let b1 = BigInt::from(d1);
            let b2 = BigInt::from(d2);
            let term = (&b1 * &b1 * &b2 * &b2 * c1) - (&b1 * &b1 * &b1 * &b2 * c2);
            total += &n[d1] * &n[d2] * term;
        }
        n[d] = total;
    }
    n.remove(0);
    n
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Exact mirror-series data for the quintic threefold.
#[derive(Debug, Clone)]
pub struct QuinticMirror {
    /// Genus-0 degree-`d` invariants `I_d`, `d = 1..=dmax`.
    pub invariants: Vec<Rat>,
    /// Instanton numbers `n_d`, `d = 1..=dmax`.
    pub instantons: Vec<BigInt>,
}

/// Computes the quintic instanton numbers `n_d` and invariants `I_d` for
/// `d = 1..=dmax`.
///
/// Pipeline, all in exact truncated series:
/// the period `w0(z) = sum (5m)!/(m!)^5 z^m` and its log-companion
/// `w1 = w0 log z + g` with `g_m = (5m)!/(m!)^5 sum_{j=m+1..5m} 5/j`;
/// the mirror map `q = z exp(g/w0)`; the Yukawa coupling
/// `Y = 5 / ((1 - 5^5 z) w0^2 (1 + theta(g/w0))^3)` pushed to the
/// `q`-coordinate. Then `Y(q) = 5 + sum n_d d^3 q^d/(1-q^d)` is solved for
/// `n_d` and `I_d = sum_{k|d} n_{d/k} / k^3`.
pub fn quintic_mirror(dmax: u32) -> Result<QuinticMirror, OracleError> {
    if dmax < 1 {
        return Err(OracleError::EmptyRange);
    }
    let m = dmax as usize;

    // w0 and the log-companion coefficients.
    let mut w0 = Series::zero(m);
    let mut g = Series::zero(m);
    w0.set_coeff(0, Rat::one());
    for k in 1..=m {
        let c = hypergeometric_coeff(k);
        let mut harm = Rat::zero();
        for j in (k + 1)..=(5 * k) {
            harm += Rat::new(5, j as i64);
        }
        w0.set_coeff(k, c.clone());
        g.set_coeff(k, c * harm);
    }

    let s = &g * &w0.recip();
    let q_over_z = s.exp();
    let q_of_z = &Series::z(m) * &q_over_z;

    // Yukawa coupling in the z coordinate.
    let mut euler_factor = s.theta();
    euler_factor.set_coeff(0, Rat::one()); // 1 + theta(S)
    let mut disc = Series::constant(Rat::one(), m);
    if m >= 1 {
        disc.set_coeff(1, Rat::from(-3125i64)); // 1 - 5^5 z
    }
    let cube = &(&euler_factor * &euler_factor) * &euler_factor;
    let denom = &(&disc * &(&w0 * &w0)) * &cube;
    let yukawa_z = denom.recip().scale(&Rat::from(5i64));

    // Push to the q coordinate through the inverse mirror map.
    let z_of_q = q_of_z.reversion();
    let yukawa_q = yukawa_z.compose(&z_of_q);

    // Y(q) = 5 + sum_d n_d d^3 q^d / (1 - q^d): peel off multiple covers.
    let mut instantons: Vec<BigInt> = Vec::with_capacity(m);
    assert!(
        *yukawa_q.coeff(0) == Rat::from(5i64),
        "Yukawa coupling must start at 5"
    );
    for d in 1..=m {
        // [q^d] of n_k k^3 q^k/(1-q^k) is n_k k^3 for every divisor k of d
        let mut covers = Rat::zero();
        for k in 1..d {
            if d % k == 0 {
                let k3 = (k * k * k) as i64;
                covers += Rat::from_bigint(instantons[k - 1].clone()) * Rat::from(k3);
            }
        }
        let d3 = (d * d * d) as i64;
        let nd = (yukawa_q.coeff(d).clone() - covers) / Rat::from(d3);
        let nd = nd
            .to_integer()
            .expect("instanton numbers of the quintic are integers");
        instantons.push(nd);
    }

    let mut invariants = Vec::with_capacity(m);
    for d in 1..=m {
        let mut total = Rat::zero();
        for k in 1..=d {
            if d % k == 0 {
                let k3 = (k * k * k) as i64;
                total += Rat::from_bigint(instantons[d / k - 1].clone()) / Rat::from(k3);
            }
        }
        invariants.push(total);
    }

    Ok(QuinticMirror {
        invariants,
        instantons,
    })
}

/// `(5m)! / (m!)^5` as an exact rational.
fn hypergeometric_coeff(m: usize) -> Rat {
    let mut num = BigInt::one();
    for j in 1..=(5 * m) {
        num *= BigInt::from(j);
    }
    let mut den = BigInt::one();
    for j in 1..=m {
        den *= BigInt::from(j);
    }
    let den5 = den.pow(5);
    Rat::from_parts(num, den5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_surface_has_27_lines() {
        assert_eq!(schubert_lines(3, 3).unwrap(), BigInt::from(27));
    }

    #[test]
    fn quintic_threefold_has_2875_lines() {
        assert_eq!(schubert_lines(4, 5).unwrap(), BigInt::from(2875));
    }

    #[test]
    fn rank_condition_enforced() {
        assert!(schubert_lines(3, 2).is_err());
        assert!(schubert_lines(5, 5).is_err());
    }

    #[test]
    fn kontsevich_small_degrees() {
        let n = kontsevich_p2(5);
        let expect: Vec<BigInt> = [1i64, 1, 12, 620, 87304]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(n, expect);
    }

    #[test]
    fn hypergeometric_first_coeff() {
        assert_eq!(hypergeometric_coeff(1), Rat::from(120i64));
    }

    #[test]
    fn mirror_map_second_coefficient_is_770() {
        // q = z + 770 z^2 + ... is the classical expansion.
        let m = 3usize;
        let mut w0 = Series::zero(m);
        let mut g = Series::zero(m);
        w0.set_coeff(0, Rat::one());
        for k in 1..=m {
            let c = hypergeometric_coeff(k);
            let mut harm = Rat::zero();
            for j in (k + 1)..=(5 * k) {
                harm += Rat::new(5, j as i64);
            }
            w0.set_coeff(k, c.clone());
            g.set_coeff(k, c * harm);
        }
        let q = &Series::z(m) * &(&g * &w0.recip()).exp();
        assert_eq!(*q.coeff(2), Rat::from(770i64));
    }

    #[test]
    fn quintic_instantons_match_known_values() {
        let q = quintic_mirror(3).unwrap();
        assert_eq!(q.instantons[0], BigInt::from(2875));
        assert_eq!(q.instantons[1], BigInt::from(609250));
        assert_eq!(q.instantons[2], BigInt::from(317206375i64));
        assert_eq!(q.invariants[0], Rat::from(2875i64));
        assert_eq!(q.invariants[1], Rat::new(4876875, 8));
    }

    #[test]
    fn two_oracles_agree_on_lines() {
        let q = quintic_mirror(1).unwrap();
        assert_eq!(
            Rat::from_bigint(schubert_lines(4, 5).unwrap()),
            Rat::from_bigint(q.instantons[0].clone())
        );
    }
}
