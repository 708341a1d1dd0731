//! Genus-0 descendant invariants of projective space.
//!
//! Every ambient invariant is reduced to the degree-zero closed form and
//! the single geometric seed (one line through two points) by four moves:
//!
//! 1. degree zero: the moduli space is a product, so the value is the point
//!    pairing when the slot-1 cotangent power is `n - 3`, else zero;
//! 2. cotangent powers are eliminated by the topological recursion relation
//!    at `n >= 3` ([`trr_expand`]) and by the inverse divisor equation at
//!    `n < 3` (append a hyperplane insertion, divide by `d`);
//! 3. fundamental-class insertions kill a primary invariant (string
//!    equation) and hyperplane insertions strip off a factor `d` (divisor
//!    equation);
//! 4. remaining primaries (all exponents >= 2) are reconstructed through
//!    the WDVV associativity relation, splitting the insertion of minimal
//!    exponent `a` as `H * H^(a-1)`. With the distinguished insertion
//!    chosen minimal the relation rewrites the target into keys with fewer
//!    points, smaller degree, or smaller minimal exponent, so the recursion
//!    terminates; the classical choice of a maximal-exponent insertion can
//!    cycle (on `P^4`, the profiles `{4,3,2}` and `{3,3,3}` feed each
//!    other).
//!
//! The recursion order is asserted at runtime by the engine's rank guard.

use crate::engine::{Engine, EngineError};
use crate::key::{Insertion, InvariantKey, Kind};
use crate::rational::Rat;

/// One summand of a boundary splitting: `coeff * left * right`.
#[derive(Clone, Debug)]
pub struct SplitTerm {
    pub coeff: Rat,
    pub left: InvariantKey,
    pub right: InvariantKey,
}

/// Closed form for degree-zero invariants (ambient or hypersurface kind).
///
/// The moduli space is `M_{0,n} x target`, so the value is the integral of
/// the insertion product over the target times `int psi_1^(n-3) = 1`, and
/// vanishes unless the slot-1 cotangent power is exactly `n - 3`.
pub fn degree0_invariant(key: &InvariantKey) -> Result<Rat, EngineError> {
    if key.n() < 3 {
        return Err(EngineError::Unstable(key.serialize()));
    }
    debug_assert!(key.d == 0);
    if key.psi1() as i64 != key.n() as i64 - 3 {
        return Ok(Rat::zero());
    }
    Ok(key.point_pairing())
}

/// Topological recursion relation for an ambient key with `psi_1 >= 1` and
/// `n >= 3`: trades one cotangent power at slot 1 for boundary splittings
/// with slots 2 and 3 on the far side.
///
/// Degree-zero sides with fewer than three points are omitted.
pub fn trr_expand(key: &InvariantKey) -> Result<Vec<SplitTerm>, EngineError> {
    if key.kind != Kind::Ambient || key.n() < 3 || key.psi1() == 0 {
        return Err(EngineError::Precondition(format!(
            "TRR needs an ambient key with n >= 3 and slot-1 psi >= 1, got {key}"
        )));
    }
    let n_dim = key.geom.ambient_dim;
    let ins = &key.insertions;
    let n = ins.len();
    let slot1 = Insertion::new(ins[0].exp, ins[0].psi - 1);
    let pool: Vec<usize> = (3..n).collect();
    let mut terms = Vec::new();
    for d1 in 0..=key.d {
        let d2 = key.d - d1;
        for mask in 0..(1usize << pool.len()) {
            let mut left_ins = vec![slot1];
            let mut right_ins = vec![
                Insertion::primary(0), // placeholder for the dual class
                ins[1],
                ins[2],
            ];
            for (bit, &idx) in pool.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    left_ins.push(ins[idx]);
                } else {
                    right_ins.push(ins[idx]);
                }
            }
            if d1 == 0 && left_ins.len() + 1 < 3 {
                continue;
            }
            for e in 0..=n_dim {
                let mut li = left_ins.clone();
                li.push(Insertion::primary(e));
                let mut ri = right_ins.clone();
                ri[0] = Insertion::primary(n_dim - e);
                terms.push(SplitTerm {
                    coeff: Rat::one(),
                    left: InvariantKey::ambient(n_dim, d1, li)?,
                    right: InvariantKey::ambient(n_dim, d2, ri)?,
                });
            }
        }
    }
    Ok(terms)
}

/// Compute path for canonical, gate-passing ambient keys. Entered through
/// [`Engine::evaluate`], which owns the memo table and the rank guard.
pub(crate) fn evaluate_ambient(key: &InvariantKey, eng: &mut Engine) -> Result<Rat, EngineError> {
    debug_assert!(key.kind == Kind::Ambient);
    if key.d == 0 {
        return degree0_invariant(key);
    }
    if key.psi1() > 0 {
        if key.n() >= 3 {
            let mut total = Rat::zero();
            for t in trr_expand(key)? {
                let left = eng.evaluate(&t.left)?;
                if left.is_zero() {
                    continue;
                }
                let right = eng.evaluate(&t.right)?;
                total += t.coeff * left * right;
            }
            return Ok(total);
        }
        // Inverse divisor equation: pad with a hyperplane insertion to make
        // the TRR applicable, correcting for the slot-1 descendant.
        let mut padded_ins = key.insertions.clone();
        padded_ins.push(Insertion::primary(1));
        let padded = InvariantKey::ambient(key.geom.ambient_dim, key.d, padded_ins)?;
        let s1 = key.insertions[0];
        let shifted = key.with_slot1(Insertion::new(s1.exp + 1, s1.psi - 1));
        let a = eng.evaluate(&padded)?;
        let b = eng.evaluate(&shifted)?;
        return Ok((a - b) / Rat::from(key.d));
    }
    // Primary invariants, d >= 1. String equation: a fundamental-class
    // insertion kills the invariant.
    if key.insertions.iter().any(|i| i.exp == 0) {
        return Ok(Rat::zero());
    }
    // Divisor equation: strip hyperplane insertions.
    if key.insertions.iter().any(|i| i.exp == 1) {
        let mut ins = key.insertions.clone();
        let idx = ins.iter().rposition(|i| i.exp == 1).unwrap();
        ins.remove(idx);
        let stripped = InvariantKey::ambient(key.geom.ambient_dim, key.d, ins)?;
        return Ok(Rat::from(key.d) * eng.evaluate(&stripped)?);
    }
    // All exponents >= 2 now. The dimension gate leaves exactly two shapes
    // with n <= 2: the seed <pt, pt>_1 = 1 (one line through two points),
    // and on P^1 the empty degree-1 invariant, also 1.
    if key.n() <= 2 {
        let n_dim = key.geom.ambient_dim;
        let seed_ok = (key.n() == 2
            && key.d == 1
            && key.insertions.iter().all(|i| i.exp == n_dim && i.psi == 0))
            || (key.n() == 0 && key.d == 1 && n_dim == 1);
        if !seed_ok {
            return Err(EngineError::Precondition(format!(
                "unexpected primary base case {key}"
            )));
        }
        return Ok(Rat::one());
    }
    wdvv_reconstruct(key, eng)
}

/// WDVV first-reconstruction step.
///
/// For a canonical primary key with all exponents at least two, split the
/// minimal-exponent insertion `H^a` as `H * H^(a-1)` and expand the
/// associativity relation on `(H, H^(a-1) | C, D)` versus
/// `(H, C | H^(a-1), D)`, with `C`, `D` the two largest remaining
/// insertions. The target is the unique `(beta_1 = 0, three-point)` term of
/// the first pairing and appears with coefficient one.
fn wdvv_reconstruct(key: &InvariantKey, eng: &mut Engine) -> Result<Rat, EngineError> {
    let n_dim = key.geom.ambient_dim;
    let d = key.d;
    let ins = &key.insertions;
    let n = ins.len();
    debug_assert!(n >= 3 && ins.iter().all(|i| i.exp >= 2 && i.psi == 0));
    // canonical order is descending, so the distinguished slot is the last
    let a = ins[n - 1].exp;
    let c = ins[0].exp;
    let dd = ins[1].exp;
    let rest: Vec<Insertion> = ins[2..n - 1].to_vec();

    let build = |deg: u32, head: &[u32], tail: &[Insertion]| -> Result<InvariantKey, EngineError> {
        let mut list: Vec<Insertion> = head.iter().map(|&x| Insertion::primary(x)).collect();
        list.extend(tail.iter().copied());
        Ok(InvariantKey::ambient(n_dim, deg, list)?)
    };

    let mut total = Rat::zero();
    // boundary three-point terms of both pairings
    let all = {
        let mut v = vec![ins[1]];
        v.extend(rest.iter().copied());
        v
    };
    total += eng.evaluate(&build(d, &[c + 1, a - 1], &all)?)?;
    total += eng.evaluate(&build(d, &[1, c, a - 1 + dd], &rest)?)?;
    total -= eng.evaluate(&build(d, &[1, a - 1, c + dd], &rest)?)?;
    // genuine degree splits
    for d1 in 1..d {
        let d2 = d - d1;
        for mask in 0..(1usize << rest.len()) {
            let r1: Vec<Insertion> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| *x)
                .collect();
            let r2: Vec<Insertion> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) == 0)
                .map(|(_, x)| *x)
                .collect();
            for e in 0..=n_dim {
                let left = build(d1, &[1, a - 1, e], &r1)?;
                let right = build(d2, &[n_dim - e, c, dd], &r2)?;
                let lv = eng.evaluate(&left)?;
                if !lv.is_zero() {
                    total -= lv * eng.evaluate(&right)?;
                }
                let left = build(d1, &[1, c, e], &r1)?;
                let right = build(d2, &[n_dim - e, a - 1, dd], &r2)?;
                let lv = eng.evaluate(&left)?;
                if !lv.is_zero() {
                    total += lv * eng.evaluate(&right)?;
                }
            }
        }
    }
    Ok(total)
}

/// Residual of the WDVV associativity relation: exactly zero on every valid
/// input. Kept as a property-test surface; it exercises many more relations
/// than the reconstruction consumes.
#[allow(clippy::too_many_arguments)]
pub fn wdvv_residual(
    eng: &mut Engine,
    ambient_dim: u32,
    d: u32,
    a: Insertion,
    b: Insertion,
    c: Insertion,
    dd: Insertion,
    rest: &[Insertion],
) -> Result<Rat, EngineError> {
    let mut total = Rat::zero();
    for d1 in 0..=d {
        let d2 = d - d1;
        for mask in 0..(1usize << rest.len()) {
            let r1: Vec<Insertion> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| *x)
                .collect();
            let r2: Vec<Insertion> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) == 0)
                .map(|(_, x)| *x)
                .collect();
            for e in 0..=ambient_dim {
                let build = |first: Insertion,
                             second: Insertion,
                             tail: &[Insertion],
                             dual: Option<u32>,
                             deg: u32|
                 -> Result<InvariantKey, EngineError> {
                    let mut list = vec![first, second];
                    list.extend(tail.iter().copied());
                    if let Some(x) = dual {
                        list.push(Insertion::primary(x));
                    }
                    Ok(InvariantKey::ambient(ambient_dim, deg, list)?)
                };
                // (a, b | c, d) split
                let l1 = build(a, b, &r1, Some(e), d1)?;
                let mut r1k = vec![Insertion::primary(ambient_dim - e), c, dd];
                r1k.extend(r2.iter().copied());
                let r1k = InvariantKey::ambient(ambient_dim, d2, r1k)?;
                let lv = eng.evaluate(&l1)?;
                if !lv.is_zero() {
                    total += lv * eng.evaluate(&r1k)?;
                }
                // (a, c | b, d) split
                let l2 = build(a, c, &r1, Some(e), d1)?;
                let mut r2k = vec![Insertion::primary(ambient_dim - e), b, dd];
                r2k.extend(r2.iter().copied());
                let r2k = InvariantKey::ambient(ambient_dim, d2, r2k)?;
                let lv = eng.evaluate(&l2)?;
                if !lv.is_zero() {
                    total -= lv * eng.evaluate(&r2k)?;
                }
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;

    fn ins(list: &[(u32, u32)]) -> Vec<Insertion> {
        list.iter().map(|&(e, p)| Insertion::new(e, p)).collect()
    }

    fn eval(key: &InvariantKey) -> Rat {
        Engine::new().evaluate(key).unwrap()
    }

    /// Independent oracle for slot-1 psi integrals on the space of stable
    /// curves, by the literal string-equation recursion: forgetting one of
    /// the insertion-free points lowers the slot-1 power by one (all other
    /// summands carry a negative power and vanish), down to the point
    /// `M_{0,3}`.
    fn psi_power_integral_oracle(n: usize, power: i64) -> Rat {
        assert!(n >= 3);
        if power < 0 {
            return Rat::zero();
        }
        if n == 3 {
            return if power == 0 { Rat::one() } else { Rat::zero() };
        }
        psi_power_integral_oracle(n - 1, power - 1)
    }

    #[test]
    fn psi_rule_matches_string_oracle() {
        for n in 3..=7usize {
            for power in 0..=5u32 {
                let mut ins = vec![Insertion::new(0, power)];
                ins.extend(vec![Insertion::primary(0); n - 2]);
                ins.push(Insertion::primary(2));
                let key = InvariantKey::ambient(2, 0, ins).unwrap();
                assert_eq!(
                    degree0_invariant(&key).unwrap(),
                    psi_power_integral_oracle(n, power as i64),
                    "n={n} power={power}"
                );
            }
        }
    }

    #[test]
    fn degree0_examples() {
        let k = InvariantKey::ambient(2, 0, ins(&[(0, 0), (1, 0), (1, 0)])).unwrap();
        assert_eq!(degree0_invariant(&k).unwrap(), Rat::one());

        assert_eq!(psi_power_integral_oracle(4, 1), Rat::one());
        let k = InvariantKey::ambient(2, 0, ins(&[(0, 1), (1, 0), (1, 0), (0, 0)])).unwrap();
        assert_eq!(degree0_invariant(&k).unwrap(), Rat::one());

        let k = InvariantKey::hypersurface(4, 5, 0, ins(&[(1, 0), (2, 0), (0, 0)])).unwrap();
        assert_eq!(degree0_invariant(&k).unwrap(), Rat::from(5i64));

        let k = InvariantKey::ambient(2, 0, ins(&[(1, 0), (1, 0)])).unwrap();
        assert!(degree0_invariant(&k).is_err());
    }

    #[test]
    fn trr_contract_terms() {
        let key = InvariantKey::ambient(2, 1, ins(&[(2, 1), (1, 0), (1, 0)])).unwrap();
        let terms = trr_expand(&key).unwrap();
        for e in 0..=2u32 {
            let want_left = InvariantKey::ambient(2, 1, ins(&[(2, 0), (e, 0)])).unwrap();
            let want_right = InvariantKey::ambient(2, 0, ins(&[(2 - e, 0), (1, 0), (1, 0)])).unwrap();
            assert!(
                terms
                    .iter()
                    .any(|t| t.left == want_left && t.right == want_right && t.coeff == Rat::one()),
                "missing e={e} term"
            );
        }
        // unstable degree-zero mirror sides are omitted
        assert!(terms
            .iter()
            .all(|t| !(t.left.d == 0 && t.left.n() < 3) && !(t.right.d == 0 && t.right.n() < 3)));
    }

    #[test]
    fn trr_needs_psi() {
        let key = InvariantKey::ambient(2, 1, ins(&[(2, 0), (1, 0), (1, 0)])).unwrap();
        assert!(trr_expand(&key).is_err());
    }

    #[test]
    fn line_through_two_points() {
        let key = InvariantKey::ambient(2, 1, ins(&[(2, 0), (2, 0)])).unwrap();
        assert_eq!(eval(&key), Rat::one());
    }

    #[test]
    fn trr_hand_reduction_totals_one() {
        // <tau_1(pt), H, H>_1 on P^2 reduces by TRR to <pt, pt>_1 = 1.
        let key = InvariantKey::ambient(2, 1, ins(&[(2, 1), (1, 0), (1, 0)])).unwrap();
        assert_eq!(eval(&key), Rat::one());
    }

    #[test]
    fn one_point_descendant_on_p2() {
        let key = InvariantKey::ambient(2, 1, ins(&[(2, 1)])).unwrap();
        assert_eq!(eval(&key), Rat::one());
    }

    #[test]
    fn plane_curve_counts() {
        // N_d for d = 1..3 through the full recursion
        let cases = [(1u32, 2usize, 1i64), (2, 5, 1), (3, 8, 12)];
        let mut eng = Engine::new();
        for (d, pts, expect) in cases {
            let key =
                InvariantKey::ambient(2, d, vec![Insertion::primary(2); pts]).unwrap();
            assert_eq!(eng.evaluate(&key).unwrap(), Rat::from(expect), "N_{d}");
        }
    }

    #[test]
    fn space_line_counts() {
        // lines in P^3: through a point meeting two lines, and meeting four
        // lines
        let k1 = InvariantKey::ambient(3, 1, ins(&[(3, 0), (2, 0), (2, 0)])).unwrap();
        assert_eq!(eval(&k1), Rat::one());
        let k2 = InvariantKey::ambient(3, 1, ins(&[(2, 0), (2, 0), (2, 0), (2, 0)])).unwrap();
        assert_eq!(eval(&k2), Rat::from(2i64));
    }

    #[test]
    fn string_and_divisor_axioms_hold() {
        let mut eng = Engine::new();
        // primary keys with d > 0 on P^2 and P^3
        let keys = [
            InvariantKey::ambient(2, 1, ins(&[(2, 0), (2, 0)])).unwrap(),
            InvariantKey::ambient(2, 2, ins(&[(2, 0); 5])).unwrap(),
            InvariantKey::ambient(3, 1, ins(&[(2, 0), (2, 0), (2, 0), (2, 0)])).unwrap(),
        ];
        for key in keys {
            let v = eng.evaluate(&key).unwrap();
            // string: appending a fundamental-class insertion gives zero
            let mut s = key.insertions.clone();
            s.push(Insertion::primary(0));
            let with_one =
                InvariantKey::ambient(key.geom.ambient_dim, key.d, s).unwrap();
            assert_eq!(eng.evaluate(&with_one).unwrap(), Rat::zero());
            // divisor: appending a hyperplane insertion multiplies by d
            let mut h = key.insertions.clone();
            h.push(Insertion::primary(1));
            let with_h = InvariantKey::ambient(key.geom.ambient_dim, key.d, h).unwrap();
            assert_eq!(
                eng.evaluate(&with_h).unwrap(),
                Rat::from(key.d) * v.clone()
            );
        }
    }

    #[test]
    fn divisor_axiom_with_descendant_correction() {
        // <tau_k(g), rest, H> = d <tau_k(g), rest> + <tau_{k-1}(gH), rest>
        let mut eng = Engine::new();
        let base = InvariantKey::ambient(2, 2, ins(&[(1, 2), (2, 0), (2, 0), (2, 0)])).unwrap();
        let mut padded_ins = base.insertions.clone();
        padded_ins.push(Insertion::primary(1));
        let padded = InvariantKey::ambient(2, 2, padded_ins).unwrap();
        let shifted = base.with_slot1(Insertion::new(2, 1));
        let lhs = eng.evaluate(&padded).unwrap();
        let rhs = Rat::from(2i64) * eng.evaluate(&base).unwrap()
            + eng.evaluate(&shifted).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_invariance() {
        let mut eng = Engine::new();
        let a = InvariantKey::ambient(3, 1, ins(&[(2, 0), (3, 0), (2, 0)])).unwrap();
        let b = InvariantKey::ambient(3, 1, ins(&[(3, 0), (2, 0), (2, 0)])).unwrap();
        assert_eq!(eng.evaluate(&a).unwrap(), eng.evaluate(&b).unwrap());
    }

    #[test]
    fn wdvv_residual_examples() {
        let mut eng = Engine::new();
        let pt = Insertion::primary(2);
        assert_eq!(
            wdvv_residual(&mut eng, 2, 2, pt, pt, pt, pt, &[pt]).unwrap(),
            Rat::zero()
        );
        let h = Insertion::primary(1);
        let h2 = Insertion::primary(2);
        assert_eq!(
            wdvv_residual(&mut eng, 3, 1, h, h2, h2, h2, &[]).unwrap(),
            Rat::zero()
        );
    }

    #[test]
    fn gated_key_evaluates_to_zero() {
        // dimension mismatch
        let key = InvariantKey::ambient(2, 1, ins(&[(2, 0), (1, 0)])).unwrap();
        assert_eq!(eval(&key), Rat::zero());
        // exponent overflow
        let key = InvariantKey::ambient(2, 1, ins(&[(3, 0), (2, 0)])).unwrap();
        assert_eq!(eval(&key), Rat::zero());
    }
}
