//! The master evaluator: multiplicity-raising reduction, comb-curve
//! correction terms, hypersurface extraction, and the memoized dispatch.
//!
//! The working relation, for a relative invariant with multiplicity `m >= 1`
//! concentrated at slot 1, is
//!
//! ```text
//! I_m(...) = (m-1) * I_{m-1}(slot-1 psi + 1)
//!          +   l   * I_{m-1}(slot-1 exp + 1)
//!          - sum of D-term values at multiplicity m-1
//! ```
//!
//! where each D-term is a comb curve: an internal component of degree `d0`
//! mapped into the hypersurface carrying slot 1, and `r >= 1` external
//! components of degrees `d_i >= 1` touching it with contact orders
//! `m_i >= 1`, subject to `l*d0 + sum m_i = m-1`. The fiber product over
//! `Y^r` is opened up with the restricted diagonal, so a D-term value is a
//! hypersurface invariant times `r` relative invariants, weighted by
//! `(prod m_i / r!) * (1/l)^r`.
//!
//! Hypersurface invariants are extracted from the same relation run at
//! multiplicity `l*d + 1`: the left-hand relative term dies for degree
//! reasons, and the correction component with the full curve inside the
//! hypersurface (r = 0, `d0 = d`) is the unknown, solved for as "left-hand
//! side minus the other corrections". Accordingly [`enumerate_dterms`]
//! never emits the full-curve component.
//!
//! Every recursive edge strictly decreases an explicit rank; the engine
//! asserts this at runtime and reports the offending key chain on failure.

use crate::algebra::Geometry;
use crate::ambient;
use crate::cache::{CacheError, CacheStore};
use crate::key::{Insertion, InvariantKey, KeyError, Kind, Reason};
use crate::rational::Rat;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum EngineError {
    #[error("recursion rank failed to decrease at {key}; evaluation chain:\n{chain}")]
    RankViolation { key: String, chain: String },
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error("unstable input: {0}")]
    Unstable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Well-foundedness rank. Relative and hypersurface keys always rank above
/// ambient ones (variant order matters for the derived `Ord`); within each
/// family the fields are compared lexicographically.
///
/// Ambient keys: `(d, psi1, pad, big, min_big, small)` where for descendant
/// keys `pad = 3 - min(n, 3)` counts the missing points for the topological
/// recursion, and for primary keys `big` counts insertions of exponent at
/// least two, `min_big` is their minimal exponent and `small` counts the
/// rest. Relative/hypersurface keys: `(d, n, stage, m)` with stage 0 for
/// degree-zero closed forms, 1 for multiplicity reduction, 2 for
/// extraction, 3 for the zero-point divisor padding.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Rank {
    Ambient {
        d: u32,
        psi: u32,
        pad: u32,
        big: usize,
        min_big: u32,
        small: usize,
    },
    RelHyp {
        d: u32,
        n_pad: usize,
        stage: u8,
        m: u32,
    },
}

fn rank_of(key: &InvariantKey) -> Rank {
    match key.kind {
        Kind::Ambient => {
            let psi = key.psi1();
            if psi > 0 {
                Rank::Ambient {
                    d: key.d,
                    psi,
                    pad: 3 - key.n().min(3) as u32,
                    big: 0,
                    min_big: 0,
                    small: 0,
                }
            } else {
                let big = key.insertions.iter().filter(|i| i.exp >= 2).count();
                let min_big = key
                    .insertions
                    .iter()
                    .filter(|i| i.exp >= 2)
                    .map(|i| i.exp)
                    .min()
                    .unwrap_or(0);
                Rank::Ambient {
                    d: key.d,
                    psi: 0,
                    pad: 0,
                    big,
                    min_big,
                    small: key.n() - big,
                }
            }
        }
        Kind::Relative => Rank::RelHyp {
            d: key.d,
            n_pad: key.n().max(1),
            stage: 1,
            m: key.m,
        },
        Kind::Hypersurface => Rank::RelHyp {
            d: key.d,
            n_pad: key.n().max(1),
            stage: if key.d == 0 {
                0
            } else if key.n() == 0 {
                3
            } else {
                2
            },
            m: 0,
        },
    }
}

struct Frame {
    key: String,
    rank: Rank,
}

/// Memoized evaluator for all three invariant kinds. Purely sequential;
/// the memo table is the only state and inserts are idempotent, so repeated
/// evaluation of any key returns an identical value.
#[derive(Default)]
pub struct Engine {
    memo: CacheStore,
    hits: u64,
    stack: Vec<Frame>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from a previously saved store; results are bit-identical to a
    /// cold run.
    pub fn with_cache(memo: CacheStore) -> Self {
        Engine {
            memo,
            hits: 0,
            stack: Vec::new(),
        }
    }

    pub fn cache(&self) -> &CacheStore {
        &self.memo
    }

    pub fn into_cache(self) -> CacheStore {
        self.memo
    }

    pub fn cache_hits(&self) -> u64 {
        self.hits
    }

    /// Parses, canonicalizes and evaluates a key given in the text grammar.
    pub fn evaluate_str(&mut self, key: &str) -> Result<Rat, EngineError> {
        let key = InvariantKey::parse(key)?;
        self.evaluate(&key)
    }

    /// Evaluates one invariant: canonicalize, gate, memo lookup, dispatch,
    /// idempotent store.
    pub fn evaluate(&mut self, key: &InvariantKey) -> Result<Rat, EngineError> {
        let canon = key.canonicalize();
        if canon.is_trivially_zero() != Reason::None {
            return Ok(Rat::zero());
        }
        let ser = canon.serialize();
        let rank = rank_of(&canon);
        if let Some(parent) = self.stack.last() {
            if rank >= parent.rank {
                let chain = self
                    .stack
                    .iter()
                    .map(|f| f.key.as_str())
                    .chain(std::iter::once(ser.as_str()))
                    .collect::<Vec<_>>()
                    .join("\n");
                return Err(EngineError::RankViolation { key: ser, chain });
            }
        }
        if let Some(v) = self.memo.get(&ser) {
            self.hits += 1;
            return Ok(v.clone());
        }
        self.stack.push(Frame {
            key: ser.clone(),
            rank,
        });
        let result = self.compute(&canon);
        self.stack.pop();
        let value = result?;
        self.memo.put(&ser, value.clone())?;
        Ok(value)
    }

    fn compute(&mut self, key: &InvariantKey) -> Result<Rat, EngineError> {
        match key.kind {
            Kind::Ambient => ambient::evaluate_ambient(key, self),
            Kind::Relative => {
                if key.m == 0 {
                    // an empty tangency condition: the relative space is the
                    // full space of stable maps
                    self.evaluate(&key.ambient_twin())
                } else {
                    self.reduce_relative(key)
                }
            }
            Kind::Hypersurface => {
                if key.d == 0 {
                    ambient::degree0_invariant(key)
                } else if key.n() == 0 {
                    self.divisor_pad(key)
                } else {
                    self.extract_hypersurface(key)
                }
            }
        }
    }

    /// One multiplicity-raising step at slot 1.
    fn reduce_relative(&mut self, key: &InvariantKey) -> Result<Rat, EngineError> {
        debug_assert!(key.kind == Kind::Relative && key.m >= 1);
        let m = key.m;
        let l = key.geom.hyp_degree;
        let s1 = key.insertions[0];
        let mut total = Rat::zero();
        if m > 1 {
            let psi_key = key
                .with_m(m - 1)
                .with_slot1(Insertion::new(s1.exp, s1.psi + 1));
            total += Rat::from(m - 1) * self.evaluate(&psi_key)?;
        }
        let div_key = key
            .with_m(m - 1)
            .with_slot1(Insertion::new(s1.exp + 1, s1.psi));
        total += Rat::from(l) * self.evaluate(&div_key)?;
        for comp in enumerate_dterms(&key.geom, key.d, m - 1, &key.insertions) {
            total -= self.dterm_value(&key.geom, &comp, &key.insertions)?;
        }
        Ok(total)
    }

    /// Solves for a hypersurface invariant by raising the multiplicity past
    /// the contact budget: at `m = l*d + 1` the relative space is empty for
    /// degree reasons, and the dimension count singles out the full-curve
    /// correction term as the only one of full degree.
    fn extract_hypersurface(&mut self, key: &InvariantKey) -> Result<Rat, EngineError> {
        debug_assert!(key.kind == Kind::Hypersurface && key.d >= 1 && key.n() >= 1);
        let budget = key.geom.contact_budget(key.d);
        let l = key.geom.hyp_degree;
        let s1 = key.insertions[0];
        let base = InvariantKey::relative(
            key.geom.ambient_dim,
            l,
            key.d,
            budget,
            key.insertions.clone(),
        )?;
        let psi_key = base.with_slot1(Insertion::new(s1.exp, s1.psi + 1));
        let div_key = base.with_slot1(Insertion::new(s1.exp + 1, s1.psi));
        let mut total = Rat::from(budget) * self.evaluate(&psi_key)?;
        total += Rat::from(l) * self.evaluate(&div_key)?;
        for comp in enumerate_dterms(&key.geom, key.d, budget, &key.insertions) {
            total -= self.dterm_value(&key.geom, &comp, &key.insertions)?;
        }
        Ok(total)
    }

    /// Zero-point hypersurface invariants: add one marked point constrained
    /// to a hyperplane section; the divisor equation says this multiplies
    /// the invariant by the degree.
    fn divisor_pad(&mut self, key: &InvariantKey) -> Result<Rat, EngineError> {
        if key.d == 0 {
            return Err(EngineError::Precondition(
                "divisor padding needs positive degree".into(),
            ));
        }
        let padded = InvariantKey::hypersurface(
            key.geom.ambient_dim,
            key.geom.hyp_degree,
            key.d,
            vec![Insertion::primary(1)],
        )?;
        Ok(self.evaluate(&padded)? / Rat::from(key.d))
    }

    /// Value of one correction component: the internal hypersurface factor
    /// with the slot-1 payload and one node insertion per tooth, times the
    /// external relative factors with the dual node insertions at their
    /// contact points.
    pub fn dterm_value(
        &mut self,
        geom: &Geometry,
        comp: &DTermComponent,
        insertions: &[Insertion],
    ) -> Result<Rat, EngineError> {
        let mut internal_ins: Vec<Insertion> =
            comp.s0.iter().map(|&i| insertions[i]).collect();
        internal_ins.extend(comp.diag.iter().map(|&b| Insertion::primary(b)));
        let internal = InvariantKey::hypersurface(
            geom.ambient_dim,
            geom.hyp_degree,
            comp.d0,
            internal_ins,
        )?;
        let mut value = self.evaluate(&internal)?;
        if value.is_zero() {
            return Ok(Rat::zero());
        }
        for (part, &b) in comp.parts.iter().zip(&comp.diag) {
            let mut ext_ins = vec![Insertion::primary(geom.ambient_dim - 1 - b)];
            ext_ins.extend(part.slots.iter().map(|&i| insertions[i]));
            let external = InvariantKey::relative(
                geom.ambient_dim,
                geom.hyp_degree,
                part.degree,
                part.contact,
                ext_ins,
            )?;
            let v = self.evaluate(&external)?;
            if v.is_zero() {
                return Ok(Rat::zero());
            }
            value = value * v;
        }
        Ok(comp.coeff.clone() * value)
    }
}

/// Genus-0 invariants and instanton numbers of a Calabi-Yau hypersurface
/// (`l = N + 1`): rows `(d, I_d, n_d)` for `d = 1..=dmax`, where the
/// zero-point invariants `I_d` are computed by the engine and the
/// instanton numbers come from the multiple-cover inversion
/// `I_d = sum_{k|d} n_{d/k} / k^3`.
pub fn instanton_table(
    eng: &mut Engine,
    ambient_dim: u32,
    hyp_degree: u32,
    dmax: u32,
) -> Result<Vec<(u32, Rat, Rat)>, EngineError> {
    if hyp_degree != ambient_dim + 1 {
        return Err(EngineError::Precondition(format!(
            "instanton tables need a Calabi-Yau hypersurface (l = N + 1), got N={ambient_dim} l={hyp_degree}"
        )));
    }
    let mut rows: Vec<(u32, Rat, Rat)> = Vec::new();
    for d in 1..=dmax {
        let key = InvariantKey::hypersurface(ambient_dim, hyp_degree, d, Vec::new())?;
        let i_d = eng.evaluate(&key)?;
        let mut covers = Rat::zero();
        for k in 2..=d {
            if d % k == 0 {
                let k3 = (k * k * k) as i64;
                covers += &rows[(d / k - 1) as usize].2 / &Rat::from(k3);
            }
        }
        let n_d = i_d.clone() - covers;
        rows.push((d, i_d, n_d));
    }
    Ok(rows)
}

/// One external tooth of a comb-curve component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DTermPart {
    /// Indices into the parent insertion list carried by this tooth.
    pub slots: Vec<usize>,
    /// Degree of the tooth, at least one.
    pub degree: u32,
    /// Contact order with the hypersurface at the node, at least one.
    pub contact: u32,
}

/// One summand of the correction space: a distribution of marked points,
/// degrees, contact orders and diagonal exponents over a comb curve.
#[derive(Clone, Debug)]
pub struct DTermComponent {
    pub r: usize,
    /// Indices on the internal component; index 0 (slot 1) is always here.
    pub s0: Vec<usize>,
    pub parts: Vec<DTermPart>,
    /// Degree of the internal component.
    pub d0: u32,
    /// Dual-basis exponents assigned to the internal side of each node.
    pub diag: Vec<u32>,
    pub coeff: Rat,
}

/// Enumerates the correction components for a reduction at multiplicity
/// `m_prime` (ordered teeth, weight `prod m_i / r! * (1/l)^r`).
///
/// The constraints are `d0 + sum d_i = d` with `d_i >= 1`, and
/// `l*d0 + sum m_i = m_prime` with `1 <= m_i <= l*d_i`. Components whose
/// factors are trivially zero are pruned: internal insertions restricting
/// to zero, contact overflow on a tooth, and an internal component of
/// degree zero with fewer than three special points. The full-curve
/// component (`r = 0`, `d0 = d`) is the unknown of the extraction relation
/// and is never emitted; for reductions it fails the multiplicity
/// constraint anyway.
pub fn enumerate_dterms(
    geom: &Geometry,
    d: u32,
    m_prime: u32,
    insertions: &[Insertion],
) -> Vec<DTermComponent> {
    enumerate_dterms_impl(geom, d, m_prime, insertions, false)
}

/// Same components, enumerated over unordered multisets of teeth with
/// multinomial weights `prod m_i / prod mult! * (1/l)^r`. Summing values
/// over either enumeration gives the same total; the agreement is a
/// self-check of the combinatorial weights.
pub fn enumerate_dterms_multiset(
    geom: &Geometry,
    d: u32,
    m_prime: u32,
    insertions: &[Insertion],
) -> Vec<DTermComponent> {
    enumerate_dterms_impl(geom, d, m_prime, insertions, true)
}

fn enumerate_dterms_impl(
    geom: &Geometry,
    d: u32,
    m_prime: u32,
    insertions: &[Insertion],
    multiset: bool,
) -> Vec<DTermComponent> {
    let n_dim = geom.ambient_dim;
    let l = geom.hyp_degree;
    let n = insertions.len();
    let mut out = Vec::new();
    let max_r = d.min(m_prime) as usize;
    for r in 1..=max_r {
        let mut degrees = vec![0u32; r];
        let mut chosen: Vec<(Vec<u32>, u32)> = Vec::new();
        degree_tuples(r, d, 0, &mut degrees, &mut chosen);
        for (degrees, d0) in chosen {
            let ld0 = l * d0;
            if ld0 > m_prime {
                continue;
            }
            let m_total = m_prime - ld0;
            if (m_total as usize) < r {
                continue;
            }
            let mut contacts = vec![0u32; r];
            let mut contact_sets: Vec<Vec<u32>> = Vec::new();
            contact_tuples(r, m_total, 0, &mut contacts, &mut contact_sets);
            for contacts in contact_sets {
                if contacts
                    .iter()
                    .zip(&degrees)
                    .any(|(&m_i, &d_i)| m_i > l * d_i)
                {
                    continue;
                }
                // assign each tail slot to the internal component or a tooth
                let mut assignment = vec![0usize; n.saturating_sub(1)];
                loop {
                    let mut s0 = vec![0usize];
                    let mut part_slots: Vec<Vec<usize>> = vec![Vec::new(); r];
                    for (slot_idx, &part) in assignment.iter().enumerate() {
                        if part == 0 {
                            s0.push(slot_idx + 1);
                        } else {
                            part_slots[part - 1].push(slot_idx + 1);
                        }
                    }
                    let stable = d0 > 0 || s0.len() + r >= 3;
                    let internal_nonzero =
                        s0.iter().all(|&i| insertions[i].exp < n_dim);
                    if stable && internal_nonzero {
                        let parts: Vec<DTermPart> = (0..r)
                            .map(|i| DTermPart {
                                slots: part_slots[i].clone(),
                                degree: degrees[i],
                                contact: contacts[i],
                            })
                            .collect();
                        push_diagonals(geom, &s0, &parts, d0, multiset, &mut out);
                    }
                    if !next_assignment(&mut assignment, r) {
                        break;
                    }
                }
            }
        }
    }
    out
}

/// Ordered tuples of tooth degrees, each at least one, total at most `d`.
fn degree_tuples(r: usize, budget: u32, idx: usize, cur: &mut [u32], out: &mut Vec<(Vec<u32>, u32)>) {
    if idx == r {
        out.push((cur.to_vec(), budget));
        return;
    }
    let remaining_teeth = (r - idx - 1) as u32;
    for v in 1..=(budget.saturating_sub(remaining_teeth)) {
        cur[idx] = v;
        degree_tuples(r, budget - v, idx + 1, cur, out);
    }
}

/// Ordered tuples of contacts, each at least one, summing exactly to `total`.
fn contact_tuples(r: usize, total: u32, idx: usize, cur: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if idx == r {
        if total == 0 {
            out.push(cur.to_vec());
        }
        return;
    }
    let remaining_teeth = (r - idx - 1) as u32;
    for v in 1..=(total.saturating_sub(remaining_teeth)) {
        cur[idx] = v;
        contact_tuples(r, total - v, idx + 1, cur, out);
    }
}

fn next_assignment(assignment: &mut [usize], r: usize) -> bool {
    for slot in assignment.iter_mut() {
        if *slot < r {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

fn push_diagonals(
    geom: &Geometry,
    s0: &[usize],
    parts: &[DTermPart],
    d0: u32,
    multiset: bool,
    out: &mut Vec<DTermComponent>,
) {
    let r = parts.len();
    let l = geom.hyp_degree;
    let mut diag = vec![0u32; r];
    loop {
        let full: Vec<(&DTermPart, u32)> = parts.iter().zip(diag.iter().copied()).collect();
        let keep = if multiset {
            full.windows(2).all(|w| {
                (w[0].0, w[0].1) <= (w[1].0, w[1].1)
            })
        } else {
            true
        };
        if keep {
            let mut coeff = Rat::one();
            for p in parts {
                coeff = coeff * Rat::from(p.contact);
            }
            let l_pow = Rat::from(l);
            for _ in 0..r {
                coeff = coeff / l_pow.clone();
            }
            if multiset {
                // divide by the multiplicities of identical teeth
                let mut i = 0;
                while i < r {
                    let mut j = i + 1;
                    while j < r && (full[j].0, full[j].1) == (full[i].0, full[i].1) {
                        j += 1;
                    }
                    let mut fact = 1u64;
                    for k in 2..=(j - i) as u64 {
                        fact *= k;
                    }
                    coeff = coeff / Rat::from(fact as i64);
                    i = j;
                }
            } else {
                let mut fact = 1u64;
                for k in 2..=r as u64 {
                    fact *= k;
                }
                coeff = coeff / Rat::from(fact as i64);
            }
            out.push(DTermComponent {
                r,
                s0: s0.to_vec(),
                parts: parts.to_vec(),
                d0,
                diag: diag.clone(),
                coeff,
            });
        }
        // advance the diagonal exponents
        let mut done = true;
        for b in diag.iter_mut() {
            if *b + 1 < geom.ambient_dim {
                *b += 1;
                done = false;
                break;
            }
            *b = 0;
        }
        if done {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ins(list: &[(u32, u32)]) -> Vec<Insertion> {
        list.iter().map(|&(e, p)| Insertion::new(e, p)).collect()
    }

    #[test]
    fn dterms_empty_for_zero_multiplicity() {
        let g = Geometry::new(3, 2);
        let slots = ins(&[(1, 0), (2, 0)]);
        assert!(enumerate_dterms(&g, 2, 0, &slots).is_empty());
    }

    #[test]
    fn dterms_empty_for_quintic_degree_one() {
        // external degrees >= 1 summing to <= 1 force r <= 1, but an
        // internal component of degree zero with two special points is
        // unstable
        let g = Geometry::new(4, 5);
        let slots = ins(&[(1, 0)]);
        assert!(enumerate_dterms(&g, 1, 5, &slots).is_empty());
    }

    #[test]
    fn dterm_weight_instantiation() {
        // a tooth pair with contacts (2,3) at l = 1 carries weight 2*3/2! = 3
        let g = Geometry::new(2, 1);
        let slots = ins(&[(0, 0)]);
        let comps = enumerate_dterms(&g, 5, 5, &slots);
        let found = comps.iter().find(|c| {
            c.r == 2
                && c.parts[0].contact == 2
                && c.parts[1].contact == 3
                && c.parts[0].degree == 2
                && c.parts[1].degree == 3
        });
        assert_eq!(found.expect("component exists").coeff, Rat::from(3i64));
    }

    #[test]
    fn ordered_and_multiset_weights_agree() {
        let g = Geometry::new(3, 2);
        let slots = ins(&[(1, 0), (2, 0), (1, 0)]);
        for m_prime in 0..=6u32 {
            let ordered = enumerate_dterms(&g, 3, m_prime, &slots);
            let multi = enumerate_dterms_multiset(&g, 3, m_prime, &slots);
            // aggregate by (s0, sorted parts-with-diag, d0)
            let total = |comps: &[DTermComponent]| -> Rat {
                comps.iter().map(|c| c.coeff.clone()).sum()
            };
            assert_eq!(total(&ordered), total(&multi), "m'={m_prime}");
            assert!(multi.len() <= ordered.len());
        }
    }

    #[test]
    fn relative_m1_is_scaled_ambient() {
        // one reduction step: the psi coefficient vanishes and no
        // correction applies, leaving l times the ambient invariant
        let mut eng = Engine::new();
        let key = InvariantKey::relative(2, 1, 1, 1, ins(&[(1, 0), (2, 0)])).unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::one());
    }

    #[test]
    fn relative_m0_equals_ambient_bit_exact() {
        let mut eng = Engine::new();
        let rel = InvariantKey::relative(3, 2, 1, 0, ins(&[(3, 0), (2, 0), (2, 0)])).unwrap();
        let amb = InvariantKey::ambient(3, 1, ins(&[(3, 0), (2, 0), (2, 0)])).unwrap();
        let v1 = eng.evaluate(&rel).unwrap();
        let v2 = eng.evaluate(&amb).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(v1, Rat::one());
    }

    #[test]
    fn contact_overflow_vanishes() {
        let mut eng = Engine::new();
        let key = InvariantKey::relative(2, 1, 1, 2, ins(&[(0, 0)])).unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::zero());
    }

    #[test]
    fn memo_purity_and_hits() {
        let mut eng = Engine::new();
        let key = InvariantKey::ambient(2, 2, vec![Insertion::primary(2); 5]).unwrap();
        let v1 = eng.evaluate(&key).unwrap();
        let before = eng.cache_hits();
        let v2 = eng.evaluate(&key).unwrap();
        assert_eq!(v1, v2);
        assert!(eng.cache_hits() > before);
    }

    #[test]
    fn hyperplane_section_matches_lower_ambient() {
        // l = 1: the hyperplane is P^(N-1); a line through two points
        let mut eng = Engine::new();
        let key = InvariantKey::hypersurface(3, 1, 1, ins(&[(2, 0), (2, 0)])).unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::one());
    }

    #[test]
    fn tangent_conics() {
        // conics through four points tangent to a line
        let mut eng = Engine::new();
        let key = InvariantKey::relative(
            2,
            1,
            2,
            2,
            ins(&[(0, 0), (2, 0), (2, 0), (2, 0), (2, 0)]),
        )
        .unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::from(2i64));
    }

    #[test]
    fn cubic_surface_lines() {
        let mut eng = Engine::new();
        let key = InvariantKey::hypersurface(3, 3, 1, ins(&[(1, 0)])).unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::from(27i64));
    }

    #[test]
    fn quintic_one_point_degree_two() {
        // divisor equation applied to I_2 = 4876875/8
        let mut eng = Engine::new();
        let key = InvariantKey::hypersurface(4, 5, 2, ins(&[(1, 0)])).unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::new(4876875, 4));
    }

    #[test]
    fn elliptic_curve_invariants_vanish() {
        // a plane cubic has no rational curves; the recursion must cancel
        let mut eng = Engine::new();
        let key = InvariantKey::hypersurface(2, 3, 1, ins(&[(0, 0), (0, 0)])).unwrap();
        assert_eq!(eng.evaluate(&key).unwrap(), Rat::zero());
    }
}
