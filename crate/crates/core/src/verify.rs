//! Self-verification suite.
//!
//! Every check pins an exact expected value, produced by an independent
//! oracle or forced analytically, and compares the engine output against it
//! with exact equality. The checks double as the acceptance suite (one
//! test per check in `tests/acceptance.rs`) and as the CLI `verify`
//! command.

use crate::ambient::wdvv_residual;
use crate::cache::CacheStore;
use crate::engine::{
    enumerate_dterms, enumerate_dterms_multiset, instanton_table, Engine, EngineError,
};
use crate::key::{Insertion, InvariantKey, Kind, Reason};
use crate::oracles;
use crate::rational::Rat;
use std::time::Instant;

/// `Fast` covers everything that runs in seconds; `Full` adds the quintic
/// degree-2 and degree-3 extractions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        match s {
            "fast" => Some(Level::Fast),
            "full" => Some(Level::Full),
            _ => None,
        }
    }
}

/// Outcome of one check.
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub struct Report {
    pub level: Level,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the suite at the given level.
pub fn run(level: Level) -> Report {
    let mut checks = vec![
        check_quintic_degree_1(),
        check_kontsevich_plane_curves(),
        check_hyperplane_consistency(),
        check_cubic_surface_lines(),
        check_elliptic_vanishing(),
        check_tangent_conics(),
        check_wdvv_residuals(),
        check_axiom_suite(),
        check_cache_determinism(),
        check_enumerator_equivalence(),
        check_cache_conflict_detection(),
    ];
    if level == Level::Full {
        checks.insert(1, check_quintic_degree_2());
        checks.insert(2, check_quintic_degree_3());
    }
    Report { level, checks }
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    let start = Instant::now();
    let outcome = f();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
            millis,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
            millis,
        },
    }
}

fn eval_err(e: EngineError) -> String {
    format!("engine error: {e}")
}

/// Criterion 1: the quintic threefold contains 2875 lines, independently
/// counted by Schubert calculus.
pub fn check_quintic_degree_1() -> Check {
    timed("quintic-degree-1", || {
        let mut eng = Engine::new();
        let key = InvariantKey::hypersurface(4, 5, 1, vec![Insertion::primary(1)])
            .map_err(|e| e.to_string())?;
        let got = eng.evaluate(&key).map_err(eval_err)?;
        let want = Rat::from_bigint(oracles::schubert_lines(4, 5).map_err(|e| e.to_string())?);
        if got != want {
            return Err(format!("engine {got} != Schubert count {want}"));
        }
        Ok(format!("evaluate({key}) = {got} = schubert_lines(4,5)"))
    })
}

/// Criterion 2: quintic degree 2 against the mirror oracle.
pub fn check_quintic_degree_2() -> Check {
    timed("quintic-degree-2", || {
        let mut eng = Engine::new();
        let rows = instanton_table(&mut eng, 4, 5, 2).map_err(eval_err)?;
        let mirror = oracles::quintic_mirror(2).map_err(|e| e.to_string())?;
        let want_i2 = Rat::new(4876875, 8);
        let want_n2 = Rat::from(609250i64);
        if rows[1].1 != want_i2 || rows[1].1 != mirror.invariants[1] {
            return Err(format!("I_2 = {} (want {})", rows[1].1, want_i2));
        }
        if rows[1].2 != want_n2 || rows[1].2 != Rat::from_bigint(mirror.instantons[1].clone()) {
            return Err(format!("n_2 = {} (want {})", rows[1].2, want_n2));
        }
        if !rows[1].2.is_integer() {
            return Err(format!("n_2 = {} is not integral", rows[1].2));
        }
        Ok(format!("I_2 = {}, n_2 = {}", rows[1].1, rows[1].2))
    })
}

/// Criterion 3: quintic degree 3 against the mirror oracle.
pub fn check_quintic_degree_3() -> Check {
    timed("quintic-degree-3", || {
        let mut eng = Engine::new();
        let rows = instanton_table(&mut eng, 4, 5, 3).map_err(eval_err)?;
        let mirror = oracles::quintic_mirror(3).map_err(|e| e.to_string())?;
        let want = Rat::from(317206375i64);
        if rows[2].2 != want || rows[2].2 != Rat::from_bigint(mirror.instantons[2].clone()) {
            return Err(format!("n_3 = {} (want {})", rows[2].2, want));
        }
        Ok(format!("n_3 = {}", rows[2].2))
    })
}

/// Criterion 4: plane-curve counts `N_1..N_4` against the classical
/// recursion.
pub fn check_kontsevich_plane_curves() -> Check {
    timed("plane-curve-counts", || {
        let mut eng = Engine::new();
        let oracle = oracles::kontsevich_p2(4);
        for (idx, want) in oracle.iter().enumerate() {
            let d = idx as u32 + 1;
            let key = InvariantKey::ambient(2, d, vec![Insertion::primary(2); (3 * d - 1) as usize])
                .map_err(|e| e.to_string())?;
            let got = eng.evaluate(&key).map_err(eval_err)?;
            if got != Rat::from_bigint(want.clone()) {
                return Err(format!("N_{d} = {got}, oracle says {want}"));
            }
        }
        Ok("N_1..N_4 = 1, 1, 12, 620".into())
    })
}

/// All canonical keys of the given kind matching the dimension gate: for
/// each non-increasing exponent sequence the slot-1 psi power is forced by
/// the gate, and when it is positive each distinct exponent can sit at
/// slot 1.
fn vdim_matching_keys(
    kind: Kind,
    ambient_dim: u32,
    hyp_degree: u32,
    d: u32,
    n: usize,
    max_exp: u32,
) -> Vec<InvariantKey> {
    let mut out = Vec::new();
    let build = |ins: Vec<Insertion>| -> InvariantKey {
        match kind {
            Kind::Ambient => InvariantKey::ambient(ambient_dim, d, ins).unwrap(),
            Kind::Hypersurface => {
                InvariantKey::hypersurface(ambient_dim, hyp_degree, d, ins).unwrap()
            }
            Kind::Relative => unreachable!(),
        }
    };
    for exps in non_increasing(max_exp, n) {
        let probe = build(exps.iter().map(|&e| Insertion::primary(e)).collect());
        let missing = probe.vdim() - probe.total_codim();
        if missing < 0 {
            continue;
        }
        if missing == 0 {
            if probe.is_trivially_zero() == Reason::None {
                out.push(probe);
            }
            continue;
        }
        let psi = missing as u32;
        let mut seen = Vec::new();
        for (i, &v) in exps.iter().enumerate() {
            if seen.contains(&v) {
                continue;
            }
            seen.push(v);
            let mut ins = vec![Insertion::new(v, psi)];
            for (j, &w) in exps.iter().enumerate() {
                if j != i {
                    ins.push(Insertion::primary(w));
                }
            }
            let key = build(ins);
            if key.is_trivially_zero() == Reason::None {
                out.push(key);
            }
        }
    }
    out
}

fn non_increasing(max: u32, len: usize) -> Vec<Vec<u32>> {
    fn rec(max: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let cap = cur.last().copied().unwrap_or(max);
        for v in (0..=cap).rev() {
            cur.push(v);
            rec(max, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, len, &mut Vec::new(), &mut out);
    out
}

/// Criterion 5: a degree-one hypersurface is `P^(N-1)`, so every restricted
/// invariant must equal the corresponding ambient invariant one dimension
/// down.
pub fn check_hyperplane_consistency() -> Check {
    timed("hyperplane-consistency", || {
        let mut eng = Engine::new();
        let mut compared = 0usize;
        for n_dim in [2u32, 3, 4] {
            for d in 1..=2u32 {
                for n in 0..=4usize {
                    if n == 0 {
                        let y = InvariantKey::hypersurface(n_dim, 1, d, Vec::new())
                            .map_err(|e| e.to_string())?;
                        if y.is_trivially_zero() != Reason::None {
                            continue;
                        }
                        let a = InvariantKey::ambient(n_dim - 1, d, Vec::new())
                            .map_err(|e| e.to_string())?;
                        let got = eng.evaluate(&y).map_err(eval_err)?;
                        let want = eng.evaluate(&a).map_err(eval_err)?;
                        if got != want {
                            return Err(format!("{y} = {got} but {a} = {want}"));
                        }
                        compared += 1;
                        continue;
                    }
                    for y in vdim_matching_keys(Kind::Hypersurface, n_dim, 1, d, n, n_dim - 1) {
                        let a = InvariantKey::ambient(n_dim - 1, d, y.insertions.clone())
                            .map_err(|e| e.to_string())?;
                        let got = eng.evaluate(&y).map_err(eval_err)?;
                        let want = eng.evaluate(&a).map_err(eval_err)?;
                        if got != want {
                            return Err(format!("{y} = {got} but {a} = {want}"));
                        }
                        compared += 1;
                    }
                }
            }
        }
        Ok(format!("{compared} hyperplane keys match the lower ambient space"))
    })
}

/// Criterion 6: the cubic surface contains 27 lines; the restricted
/// invariant sums the line classes.
pub fn check_cubic_surface_lines() -> Check {
    timed("cubic-surface-lines", || {
        let mut eng = Engine::new();
        let key = InvariantKey::hypersurface(3, 3, 1, vec![Insertion::primary(1)])
            .map_err(|e| e.to_string())?;
        let got = eng.evaluate(&key).map_err(eval_err)?;
        let want = Rat::from_bigint(oracles::schubert_lines(3, 3).map_err(|e| e.to_string())?);
        if got != want {
            return Err(format!("engine {got} != Schubert count {want}"));
        }
        Ok(format!("evaluate({key}) = {got} = schubert_lines(3,3)"))
    })
}

/// Criterion 7: a plane cubic is an elliptic curve and has no rational
/// curves; every invariant must cancel to exactly zero.
pub fn check_elliptic_vanishing() -> Check {
    timed("elliptic-vanishing", || {
        let mut eng = Engine::new();
        let mut checked = 0usize;
        for d in 1..=2u32 {
            for n in 0..=3usize {
                if n == 0 {
                    let y = InvariantKey::hypersurface(2, 3, d, Vec::new())
                        .map_err(|e| e.to_string())?;
                    if y.is_trivially_zero() != Reason::None {
                        continue;
                    }
                    let got = eng.evaluate(&y).map_err(eval_err)?;
                    if !got.is_zero() {
                        return Err(format!("{y} = {got}, expected 0"));
                    }
                    checked += 1;
                    continue;
                }
                for y in vdim_matching_keys(Kind::Hypersurface, 2, 3, d, n, 1) {
                    let got = eng.evaluate(&y).map_err(eval_err)?;
                    if !got.is_zero() {
                        return Err(format!("{y} = {got}, expected 0"));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} elliptic-curve keys vanish exactly"))
    })
}

/// Criterion 8: two conics through four general points are tangent to a
/// general line (the tangency condition is the discriminant of the pencil,
/// a binary quadric in the pencil parameter).
pub fn check_tangent_conics() -> Check {
    timed("tangent-conics", || {
        let mut eng = Engine::new();
        let mut ins = vec![Insertion::primary(0)];
        ins.extend(vec![Insertion::primary(2); 4]);
        let key = InvariantKey::relative(2, 1, 2, 2, ins).map_err(|e| e.to_string())?;
        let got = eng.evaluate(&key).map_err(eval_err)?;
        if got != Rat::from(2i64) {
            return Err(format!("evaluate({key}) = {got}, expected 2"));
        }
        Ok(format!("evaluate({key}) = 2"))
    })
}

/// Criterion 9: the WDVV associativity residual vanishes on a grid of
/// small instances.
pub fn check_wdvv_residuals() -> Check {
    timed("wdvv-residuals", || {
        let mut eng = Engine::new();
        let mut count = 0usize;
        for n_dim in [2u32, 3] {
            let dmax = if n_dim == 2 { 3 } else { 2 };
            let rests: Vec<Vec<Insertion>> = if n_dim == 2 {
                vec![vec![], vec![Insertion::primary(2)]]
            } else {
                vec![vec![]]
            };
            for d in 1..=dmax {
                for a in 1..=n_dim {
                    for b in 1..=n_dim {
                        for c in 1..=n_dim {
                            for dd in 1..=n_dim {
                                for rest in &rests {
                                    let r = wdvv_residual(
                                        &mut eng,
                                        n_dim,
                                        d,
                                        Insertion::primary(a),
                                        Insertion::primary(b),
                                        Insertion::primary(c),
                                        Insertion::primary(dd),
                                        rest,
                                    )
                                    .map_err(eval_err)?;
                                    if !r.is_zero() {
                                        return Err(format!(
                                            "residual N={n_dim} d={d} ({a},{b},{c},{dd}) rest={} is {r}",
                                            rest.len()
                                        ));
                                    }
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        if count < 100 {
            return Err(format!("only {count} instances enumerated"));
        }
        Ok(format!("{count} associativity residuals are exactly zero"))
    })
}

/// Criterion 10: string/divisor identities, permutation invariance, the
/// multiplicity-zero identification and contact-budget vanishing, on the
/// keys of the sweeps above.
pub fn check_axiom_suite() -> Check {
    timed("axiom-suite", || {
        let mut eng = Engine::new();
        let mut keys: Vec<InvariantKey> = Vec::new();
        for d in 1..=3u32 {
            keys.push(
                InvariantKey::ambient(2, d, vec![Insertion::primary(2); (3 * d - 1) as usize])
                    .map_err(|e| e.to_string())?,
            );
        }
        for n_dim in [2u32, 3, 4] {
            for d in 1..=2u32 {
                for n in 1..=3usize {
                    keys.extend(vdim_matching_keys(Kind::Hypersurface, n_dim, 1, d, n, n_dim - 1));
                    keys.extend(vdim_matching_keys(Kind::Ambient, n_dim, 1, d, n, n_dim));
                }
            }
        }
        keys.extend(vdim_matching_keys(Kind::Hypersurface, 3, 3, 1, 2, 2));
        keys.extend(vdim_matching_keys(Kind::Hypersurface, 4, 5, 1, 2, 3));
        let mut divisor = 0usize;
        let mut string = 0usize;
        let mut permutation = 0usize;
        for key in &keys {
            let v = eng.evaluate(key).map_err(eval_err)?;
            let s1 = key.insertions.first().copied().unwrap_or(Insertion::primary(0));
            // divisor equation
            {
                let mut ins = key.insertions.clone();
                ins.push(Insertion::primary(1));
                let mut padded = key.clone();
                padded.insertions = ins;
                let lhs = eng.evaluate(&padded).map_err(eval_err)?;
                let mut rhs = Rat::from(key.d) * v.clone();
                if s1.psi > 0 {
                    let corr = key.with_slot1(Insertion::new(s1.exp + 1, s1.psi - 1));
                    rhs += eng.evaluate(&corr).map_err(eval_err)?;
                }
                if lhs != rhs {
                    return Err(format!("divisor equation fails on {key}: {lhs} vs {rhs}"));
                }
                divisor += 1;
            }
            // string equation
            {
                let mut ins = key.insertions.clone();
                ins.push(Insertion::primary(0));
                let mut padded = key.clone();
                padded.insertions = ins;
                let lhs = eng.evaluate(&padded).map_err(eval_err)?;
                let rhs = if s1.psi > 0 {
                    eng.evaluate(&key.with_slot1(Insertion::new(s1.exp, s1.psi - 1)))
                        .map_err(eval_err)?
                } else {
                    Rat::zero()
                };
                if lhs != rhs {
                    return Err(format!("string equation fails on {key}: {lhs} vs {rhs}"));
                }
                string += 1;
            }
            // permutation invariance: rotate the tail
            if key.n() >= 3 {
                let mut ins = key.insertions.clone();
                let moved = ins.remove(1);
                ins.push(moved);
                let mut rotated = key.clone();
                rotated.insertions = ins;
                let w = eng.evaluate(&rotated).map_err(eval_err)?;
                if w != v {
                    return Err(format!("permutation changes {key}: {v} vs {w}"));
                }
                permutation += 1;
            }
        }
        // multiplicity zero is the ambient invariant, bit-exact
        let mut m0 = 0usize;
        for (n_dim, l, d, exps) in [
            (2u32, 1u32, 1u32, vec![2u32, 2]),
            (3, 2, 1, vec![3, 2, 2]),
            (4, 5, 1, vec![2, 2, 3]),
        ] {
            let ins: Vec<Insertion> = exps.iter().map(|&e| Insertion::primary(e)).collect();
            let rel = InvariantKey::relative(n_dim, l, d, 0, ins.clone())
                .map_err(|e| e.to_string())?;
            let amb = InvariantKey::ambient(n_dim, d, ins).map_err(|e| e.to_string())?;
            let a = eng.evaluate(&rel).map_err(eval_err)?;
            let b = eng.evaluate(&amb).map_err(eval_err)?;
            if a != b {
                return Err(format!("{rel} = {a} but {amb} = {b}"));
            }
            m0 += 1;
        }
        // contact budget: m > l*d vanishes
        let mut overflow = 0usize;
        for (n_dim, l, d, m) in [(2u32, 1u32, 1u32, 2u32), (4, 5, 1, 6), (3, 3, 2, 7)] {
            let rel = InvariantKey::relative(n_dim, l, d, m, vec![Insertion::primary(0)])
                .map_err(|e| e.to_string())?;
            if !eng.evaluate(&rel).map_err(eval_err)?.is_zero() {
                return Err(format!("{rel} should vanish (contact budget)"));
            }
            overflow += 1;
        }
        Ok(format!(
            "divisor x{divisor}, string x{string}, permutation x{permutation}, m=0 x{m0}, overflow x{overflow}"
        ))
    })
}

/// Criterion 11: cold, warm and merged runs produce bit-identical values
/// and byte-identical sorted cache files.
pub fn check_cache_determinism() -> Check {
    timed("cache-determinism", || {
        let workload: Vec<InvariantKey> = vec![
            InvariantKey::hypersurface(4, 5, 1, vec![Insertion::primary(1)]).unwrap(),
            InvariantKey::hypersurface(3, 3, 1, vec![Insertion::primary(1)]).unwrap(),
            InvariantKey::ambient(2, 3, vec![Insertion::primary(2); 8]).unwrap(),
            InvariantKey::relative(2, 1, 2, 2, {
                let mut v = vec![Insertion::primary(0)];
                v.extend(vec![Insertion::primary(2); 4]);
                v
            })
            .unwrap(),
        ];
        let mut cold = Engine::new();
        let mut cold_values = Vec::new();
        for key in &workload {
            cold_values.push(cold.evaluate(key).map_err(eval_err)?);
        }
        let cold_bytes = cold.cache().to_bytes();

        let store = CacheStore::from_bytes(&cold_bytes).map_err(|e| e.to_string())?;
        let mut warm = Engine::with_cache(store);
        for (key, want) in workload.iter().zip(&cold_values) {
            let got = warm.evaluate(key).map_err(eval_err)?;
            if got != *want {
                return Err(format!("warm run differs on {key}: {got} vs {want}"));
            }
        }
        if warm.cache().to_bytes() != cold_bytes {
            return Err("warm cache bytes differ from cold".into());
        }

        // split the workload over two engines and merge
        let mut eng_a = Engine::new();
        let mut eng_b = Engine::new();
        for key in &workload[..2] {
            eng_a.evaluate(key).map_err(eval_err)?;
        }
        for key in &workload[2..] {
            eng_b.evaluate(key).map_err(eval_err)?;
        }
        let merged = CacheStore::merge(eng_a.into_cache(), eng_b.into_cache())
            .map_err(|e| e.to_string())?;
        let mut eng_m = Engine::with_cache(merged);
        for (key, want) in workload.iter().zip(&cold_values) {
            let got = eng_m.evaluate(key).map_err(eval_err)?;
            if got != *want {
                return Err(format!("merged run differs on {key}: {got} vs {want}"));
            }
        }
        if eng_m.cache().to_bytes() != cold_bytes {
            return Err("merged cache bytes differ from cold".into());
        }
        Ok(format!(
            "cold, warm and merged runs agree on {} entries",
            cold.cache().len()
        ))
    })
}

/// Criterion 12: ordered-tuple and multiset enumerations of the correction
/// terms give the same value sums on the reductions behind the criteria.
pub fn check_enumerator_equivalence() -> Check {
    timed("enumerator-equivalence", || {
        let mut eng = Engine::new();
        let mut compared = 0usize;
        let quintic_slot = vec![Insertion::primary(1)];
        let tangency_slots = {
            let mut v = vec![Insertion::primary(0)];
            v.extend(vec![Insertion::primary(2); 4]);
            v
        };
        let cubic_slot = vec![Insertion::primary(1)];
        let psi_slot = vec![Insertion::new(1, 2)];
        let cases: Vec<(u32, u32, u32, &Vec<Insertion>)> = vec![
            (4, 5, 1, &quintic_slot),
            (4, 5, 2, &quintic_slot),
            (4, 5, 2, &psi_slot),
            (3, 3, 1, &cubic_slot),
            (2, 1, 2, &tangency_slots),
            (3, 1, 2, &cubic_slot),
        ];
        for (n_dim, l, d, slots) in cases {
            let geom = crate::algebra::Geometry::new(n_dim, l);
            for m_prime in 0..=geom.contact_budget(d) {
                let ordered = enumerate_dterms(&geom, d, m_prime, slots);
                let multi = enumerate_dterms_multiset(&geom, d, m_prime, slots);
                let mut sum_o = Rat::zero();
                for c in &ordered {
                    sum_o += eng.dterm_value(&geom, c, slots).map_err(eval_err)?;
                }
                let mut sum_m = Rat::zero();
                for c in &multi {
                    sum_m += eng.dterm_value(&geom, c, slots).map_err(eval_err)?;
                }
                if sum_o != sum_m {
                    return Err(format!(
                        "N={n_dim} l={l} d={d} m'={m_prime}: ordered {sum_o} != multiset {sum_m}"
                    ));
                }
                compared += 1;
            }
        }
        Ok(format!("{compared} reduction enumerations agree"))
    })
}

/// A corrupted cache entry must surface as a conflict, not silently win.
pub fn check_cache_conflict_detection() -> Check {
    timed("cache-conflict-detection", || {
        let seed = InvariantKey::ambient(2, 1, vec![Insertion::primary(2); 2]).unwrap();
        let mut eng = Engine::new();
        eng.evaluate(&seed).map_err(eval_err)?;
        let good = eng.into_cache();
        let mut corrupt = CacheStore::new();
        corrupt
            .put(&seed.canonicalize().serialize(), Rat::from(7i64))
            .map_err(|e| e.to_string())?;
        match CacheStore::merge(good, corrupt) {
            Err(e) => Ok(format!("conflict surfaced: {e}")),
            Ok(_) => Err("corrupted entry merged silently".into()),
        }
    })
}
