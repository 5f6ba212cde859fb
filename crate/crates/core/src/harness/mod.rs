//! Instance generators, exhaustive enumerators, a brute-force definitional
//! oracle, and suites that mechanically check the characterization theorems
//! on small instances.

pub mod oracle;
mod suites;

pub use oracle::oracle_search;
pub use suites::{replay, run_suite, suite_names, ReplayOutcome};

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::geninv::{is_group_invertible, is_idempotent, is_symmetric_idempotent};
use crate::matrix::{all_matrices, check_dim, matrix_count, prod, Matrix};
use crate::ring::{RingSpec, Scalar};
use crate::solve::ann_equal;
use crate::weighted::{BottDuffinContext, WeightedContext};

/// Default cap on exhaustive candidate tuples; the WBC_BUDGET environment
/// variable overrides it.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

pub fn budget() -> u64 {
    std::env::var("WBC_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// A named bag of matrices over one ring: the unit of work for suites, the
/// oracle, and replay. Serializes as
/// `{"ring":{...},"k":2,"a":[[...]],"b":[[...]],...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Value", into = "Value")]
pub struct Instance {
    pub ring: RingSpec,
    pub k: usize,
    pub mats: BTreeMap<String, Matrix>,
}

impl Instance {
    pub fn new(ring: &RingSpec, k: usize) -> Instance {
        Instance {
            ring: ring.clone(),
            k,
            mats: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, m: Matrix) -> Instance {
        self.set(name, m);
        self
    }

    pub fn set(&mut self, name: &str, m: Matrix) {
        assert_eq!(m.ring(), &self.ring, "instance ring mismatch");
        assert_eq!(m.k(), self.k, "instance dimension mismatch");
        self.mats.insert(name.to_string(), m);
    }

    pub fn get(&self, name: &str) -> Result<&Matrix, Error> {
        self.mats
            .get(name)
            .ok_or_else(|| Error::BadInput(format!("missing matrix {name:?}")))
    }

    /// Builds the (a, b, c, v, w) context from the equally-named slots.
    pub fn weighted_context(&self) -> Result<WeightedContext, Error> {
        WeightedContext::new(
            self.get("a")?.clone(),
            self.get("b")?.clone(),
            self.get("c")?.clone(),
            self.get("v")?.clone(),
            self.get("w")?.clone(),
        )
    }

    /// Builds the Bott-Duffin context from slots a, v, w, e, f.
    pub fn bott_duffin_context(&self) -> Result<BottDuffinContext, Error> {
        BottDuffinContext::new(
            self.get("a")?.clone(),
            self.get("v")?.clone(),
            self.get("w")?.clone(),
            self.get("e")?.clone(),
            self.get("f")?.clone(),
        )
    }
}

impl From<Instance> for Value {
    fn from(inst: Instance) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("ring".into(), serde_json::to_value(&inst.ring).unwrap());
        map.insert("k".into(), Value::from(inst.k as u64));
        for (name, m) in &inst.mats {
            map.insert(name.clone(), serde_json::to_value(m.to_grid()).unwrap());
        }
        Value::Object(map)
    }
}

impl TryFrom<Value> for Instance {
    type Error = Error;
    fn try_from(v: Value) -> Result<Instance, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::BadInput("instance must be a JSON object".into()))?;
        let ring: RingSpec = serde_json::from_value(
            obj.get("ring")
                .ok_or_else(|| Error::BadInput("missing \"ring\"".into()))?
                .clone(),
        )
        .map_err(|e| Error::BadInput(format!("bad ring: {e}")))?;
        ring.validate()?;
        let k = obj
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::BadInput("missing or non-integer \"k\"".into()))?
            as usize;
        check_dim(k)?;
        let mut inst = Instance::new(&ring, k);
        for (key, val) in obj {
            if key == "ring" || key == "k" {
                continue;
            }
            let grid: Vec<Vec<String>> = serde_json::from_value(val.clone())
                .map_err(|e| Error::BadInput(format!("bad entries for {key:?}: {e}")))?;
            inst.mats
                .insert(key.clone(), Matrix::from_grid(&ring, k, &grid)?);
        }
        Ok(inst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, count: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    VInvertible,
    WInvertible,
    IdempotentPair,
    SymmetricIdempotentPair,
    CentralBc,
    RannEqualBc,
    GroupInvertibleVawb,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpace {
    pub ring: RingSpec,
    pub k: usize,
    pub mode: Mode,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
}

impl InstanceSpace {
    pub fn exhaustive(ring: &RingSpec, k: usize) -> InstanceSpace {
        InstanceSpace {
            ring: ring.clone(),
            k,
            mode: Mode::Exhaustive,
            constraints: Vec::new(),
        }
    }

    pub fn random(ring: &RingSpec, k: usize, seed: u64, count: u64) -> InstanceSpace {
        InstanceSpace {
            ring: ring.clone(),
            k,
            mode: Mode::Random { seed, count },
            constraints: Vec::new(),
        }
    }
}

/// Whether an instance satisfies a constraint; missing slots leave a
/// constraint vacuously satisfied.
pub fn constraint_holds(c: Constraint, inst: &Instance) -> Result<bool, Error> {
    let has = |n: &str| inst.mats.contains_key(n);
    Ok(match c {
        Constraint::VInvertible => !has("v") || inst.get("v")?.is_invertible(),
        Constraint::WInvertible => !has("w") || inst.get("w")?.is_invertible(),
        Constraint::IdempotentPair => {
            (!has("e") || is_idempotent(inst.get("e")?))
                && (!has("f") || is_idempotent(inst.get("f")?))
        }
        Constraint::SymmetricIdempotentPair => {
            (!has("e") || is_symmetric_idempotent(inst.get("e")?))
                && (!has("f") || is_symmetric_idempotent(inst.get("f")?))
        }
        Constraint::CentralBc => {
            (!has("b") || is_scalar_matrix(inst.get("b")?))
                && (!has("c") || is_scalar_matrix(inst.get("c")?))
        }
        Constraint::RannEqualBc => {
            !(has("b") && has("c"))
                || ann_equal(inst.get("b")?, inst.get("c")?, crate::solve::Side::Right)?
        }
        Constraint::GroupInvertibleVawb => {
            if has("v") && has("a") && has("w") && has("b") {
                let vawb = prod(&[inst.get("v")?, inst.get("a")?, inst.get("w")?, inst.get("b")?]);
                is_group_invertible(&vawb)
            } else {
                true
            }
        }
    })
}

pub fn is_scalar_matrix(m: &Matrix) -> bool {
    *m == Matrix::scalar(m.ring(), m.k(), m.at(0, 0))
}

// ---------------------------------------------------------------------------
// random generation (documented stream order: slots in listed order, entries
// row-major; rejection sampling draws whole fresh matrices from the stream)
// ---------------------------------------------------------------------------

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform entries for residue rings; for Q, numerators uniform in [-9, 9]
/// and denominators uniform in [1, 9].
pub fn random_scalar(ring: &RingSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match ring.size() {
        Some(n) => Scalar::Residue(rng.gen_range(0..n)),
        None => {
            let num: i64 = rng.gen_range(-9..=9);
            let den: u64 = rng.gen_range(1..=9);
            ring.parse(&format!("{num}/{den}")).expect("valid literal")
        }
    }
}

pub fn random_matrix(ring: &RingSpec, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut entries = Vec::with_capacity(k * k);
    for _ in 0..k * k {
        entries.push(random_scalar(ring, rng));
    }
    let mut it = entries.into_iter();
    Matrix::from_fn(ring, k, |_, _| it.next().unwrap())
}

pub fn random_invertible(ring: &RingSpec, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, k, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_idempotent(ring: &RingSpec, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, k, rng);
        if is_idempotent(&m) {
            return m;
        }
    }
}

pub fn random_symmetric_idempotent(ring: &RingSpec, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, k, rng);
        if is_symmetric_idempotent(&m) {
            return m;
        }
    }
}

pub fn random_scalar_matrix(ring: &RingSpec, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::scalar(ring, k, &random_scalar(ring, rng))
}

/// Encodes a finite-ring matrix as base-n digits, row-major, entry (0,0)
/// least significant. The enumeration order of `all_matrices` sorts by this.
pub fn encode(m: &Matrix) -> u64 {
    let n = m.ring().size().expect("finite ring");
    let k = m.k();
    let mut acc = 0u64;
    for i in (0..k).rev() {
        for j in (0..k).rev() {
            let Scalar::Residue(r) = m.at(i, j) else {
                panic!("finite ring expected");
            };
            acc = acc * n + *r;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// constrained instance streams
// ---------------------------------------------------------------------------

/// Produces instances satisfying the constraint by construction (slots
/// a, b, c, v, w, plus e, f for the idempotent constraints). In exhaustive
/// mode the weights are pinned to 1 and the constrained slots are enumerated
/// with filtering; in random mode they are drawn by rejection.
pub fn generate_constrained(
    space: &InstanceSpace,
    constraint: Constraint,
) -> Result<Vec<Instance>, Error> {
    let ring = &space.ring;
    let k = space.k;
    let one = Matrix::one(ring, k);
    let mut out = Vec::new();

    match space.mode {
        Mode::Exhaustive => {
            let Some(count) = matrix_count(ring, k) else {
                return Err(Error::BudgetExceeded(
                    "exhaustive generation requires a finite coefficient ring".into(),
                ));
            };
            let all: Vec<Matrix> = all_matrices(ring, k).expect("finite ring").collect();
            let arity: u32 = match constraint {
                Constraint::VInvertible | Constraint::WInvertible => 4,
                Constraint::IdempotentPair | Constraint::SymmetricIdempotentPair => 3,
                Constraint::CentralBc => 1,
                Constraint::RannEqualBc | Constraint::GroupInvertibleVawb => 3,
            };
            if count.pow(arity) > budget() as u128 {
                return Err(Error::BudgetExceeded(format!(
                    "{count}^{arity} candidate tuples exceed the budget"
                )));
            }
            match constraint {
                Constraint::VInvertible | Constraint::WInvertible => {
                    let filter_v = constraint == Constraint::VInvertible;
                    for a in &all {
                        for b in &all {
                            for c in &all {
                                for x in &all {
                                    if !x.is_invertible() {
                                        continue;
                                    }
                                    let (v, w) = if filter_v {
                                        (x.clone(), one.clone())
                                    } else {
                                        (one.clone(), x.clone())
                                    };
                                    out.push(
                                        Instance::new(ring, k)
                                            .with("a", a.clone())
                                            .with("b", b.clone())
                                            .with("c", c.clone())
                                            .with("v", v)
                                            .with("w", w),
                                    );
                                }
                            }
                        }
                    }
                }
                Constraint::IdempotentPair | Constraint::SymmetricIdempotentPair => {
                    let keep: Vec<&Matrix> = all
                        .iter()
                        .filter(|m| {
                            if constraint == Constraint::IdempotentPair {
                                is_idempotent(m)
                            } else {
                                is_symmetric_idempotent(m)
                            }
                        })
                        .collect();
                    for a in &all {
                        for e in &keep {
                            for f in &keep {
                                out.push(
                                    Instance::new(ring, k)
                                        .with("a", a.clone())
                                        .with("v", one.clone())
                                        .with("w", one.clone())
                                        .with("e", (*e).clone())
                                        .with("f", (*f).clone()),
                                );
                            }
                        }
                    }
                }
                Constraint::CentralBc => {
                    let n = ring.size().expect("finite");
                    for a in &all {
                        for sb in 0..n {
                            for sc in 0..n {
                                out.push(
                                    Instance::new(ring, k)
                                        .with("a", a.clone())
                                        .with("b", Matrix::scalar(ring, k, &Scalar::Residue(sb)))
                                        .with("c", Matrix::scalar(ring, k, &Scalar::Residue(sc)))
                                        .with("v", one.clone())
                                        .with("w", one.clone()),
                                );
                            }
                        }
                    }
                }
                Constraint::RannEqualBc => {
                    // c := u·b for a unit u keeps rann(c) = rann(b)
                    for a in &all {
                        for b in &all {
                            for u in &all {
                                if !u.is_invertible() {
                                    continue;
                                }
                                out.push(
                                    Instance::new(ring, k)
                                        .with("a", a.clone())
                                        .with("b", b.clone())
                                        .with("c", u * b)
                                        .with("v", one.clone())
                                        .with("w", one.clone()),
                                );
                            }
                        }
                    }
                }
                Constraint::GroupInvertibleVawb => {
                    for a in &all {
                        for b in &all {
                            if !is_group_invertible(&(a * b)) {
                                continue;
                            }
                            for c in &all {
                                out.push(
                                    Instance::new(ring, k)
                                        .with("a", a.clone())
                                        .with("b", b.clone())
                                        .with("c", c.clone())
                                        .with("v", one.clone())
                                        .with("w", one.clone()),
                                );
                            }
                        }
                    }
                }
            }
        }
        Mode::Random { seed, count } => {
            let mut rng = rng_for(seed);
            for _ in 0..count {
                let inst = match constraint {
                    Constraint::VInvertible | Constraint::WInvertible => {
                        let a = random_matrix(ring, k, &mut rng);
                        let b = random_matrix(ring, k, &mut rng);
                        let c = random_matrix(ring, k, &mut rng);
                        let (v, w) = if constraint == Constraint::VInvertible {
                            let v = random_invertible(ring, k, &mut rng);
                            (v, random_matrix(ring, k, &mut rng))
                        } else {
                            let v = random_matrix(ring, k, &mut rng);
                            (v, random_invertible(ring, k, &mut rng))
                        };
                        Instance::new(ring, k)
                            .with("a", a)
                            .with("b", b)
                            .with("c", c)
                            .with("v", v)
                            .with("w", w)
                    }
                    Constraint::IdempotentPair | Constraint::SymmetricIdempotentPair => {
                        let a = random_matrix(ring, k, &mut rng);
                        let v = random_matrix(ring, k, &mut rng);
                        let w = random_matrix(ring, k, &mut rng);
                        let (e, f) = if constraint == Constraint::IdempotentPair {
                            (
                                random_idempotent(ring, k, &mut rng),
                                random_idempotent(ring, k, &mut rng),
                            )
                        } else {
                            (
                                random_symmetric_idempotent(ring, k, &mut rng),
                                random_symmetric_idempotent(ring, k, &mut rng),
                            )
                        };
                        Instance::new(ring, k)
                            .with("a", a)
                            .with("v", v)
                            .with("w", w)
                            .with("e", e)
                            .with("f", f)
                    }
                    Constraint::CentralBc => Instance::new(ring, k)
                        .with("a", random_matrix(ring, k, &mut rng))
                        .with("b", random_scalar_matrix(ring, k, &mut rng))
                        .with("c", random_scalar_matrix(ring, k, &mut rng))
                        .with("v", random_matrix(ring, k, &mut rng))
                        .with("w", random_matrix(ring, k, &mut rng)),
                    Constraint::RannEqualBc => {
                        let b = random_matrix(ring, k, &mut rng);
                        let u = random_invertible(ring, k, &mut rng);
                        Instance::new(ring, k)
                            .with("a", random_matrix(ring, k, &mut rng))
                            .with("c", &u * &b)
                            .with("b", b)
                            .with("v", random_matrix(ring, k, &mut rng))
                            .with("w", random_matrix(ring, k, &mut rng))
                    }
                    Constraint::GroupInvertibleVawb => loop {
                        let a = random_matrix(ring, k, &mut rng);
                        let b = random_matrix(ring, k, &mut rng);
                        let v = random_matrix(ring, k, &mut rng);
                        let w = random_matrix(ring, k, &mut rng);
                        if is_group_invertible(&prod(&[&v, &a, &w, &b])) {
                            break Instance::new(ring, k)
                                .with("c", random_matrix(ring, k, &mut rng))
                                .with("a", a)
                                .with("b", b)
                                .with("v", v)
                                .with("w", w);
                        }
                    },
                };
                out.push(inst);
            }
        }
    }
    Ok(out)
}

/// Result of one suite run. Failures embed the full instance for replay.
/// Equality deliberately ignores the elapsed time so that identical
/// seed + space gives identical results.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub tested: u64,
    pub skipped: u64,
    pub failures: Vec<SuiteFailure>,
    pub elapsed_ms: u128,
}

impl PartialEq for SuiteResult {
    fn eq(&self, other: &Self) -> bool {
        self.suite == other.suite
            && self.tested == other.tested
            && self.skipped == other.skipped
            && self.failures == other.failures
    }
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteFailure {
    pub suite: String,
    pub property: String,
    pub instance: Instance,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> RingSpec {
        RingSpec::prime_field(2).unwrap()
    }

    #[test]
    fn instance_json_round_trip() {
        let gf2 = gf2();
        let inst = Instance::new(&gf2, 2)
            .with("a", Matrix::one(&gf2, 2))
            .with("b", Matrix::zero(&gf2, 2));
        let v: Value = inst.clone().into();
        assert_eq!(v["k"], 2);
        assert_eq!(v["a"][0][0], "1");
        let back = Instance::try_from(v).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn bad_instance_json() {
        let r = Instance::try_from(serde_json::json!({"k": 2, "a": [["1"]]}));
        assert!(r.is_err());
        let r = Instance::try_from(serde_json::json!({
            "ring": {"kind": "gfp", "p": 2}, "k": 2, "a": [["1","0"]]
        }));
        assert!(r.is_err());
    }

    #[test]
    fn idempotent_pair_generation_exhaustive() {
        // only the 8 idempotents of M_2(GF(2)) may appear in the e, f slots
        let space = InstanceSpace::exhaustive(&gf2(), 2);
        let insts = generate_constrained(&space, Constraint::IdempotentPair).unwrap();
        assert_eq!(insts.len(), 16 * 8 * 8);
        for inst in &insts {
            assert!(is_idempotent(inst.get("e").unwrap()));
            assert!(is_idempotent(inst.get("f").unwrap()));
        }
        let mut es: Vec<u64> = insts.iter().map(|i| encode(i.get("e").unwrap())).collect();
        es.sort_unstable();
        es.dedup();
        assert_eq!(es.len(), 8);
    }

    #[test]
    fn v_invertible_generation() {
        let gf3 = RingSpec::prime_field(3).unwrap();
        let space = InstanceSpace::random(&gf3, 2, 42, 50);
        let insts = generate_constrained(&space, Constraint::VInvertible).unwrap();
        assert_eq!(insts.len(), 50);
        for inst in &insts {
            assert!(inst.get("v").unwrap().is_invertible());
        }
    }

    #[test]
    fn central_bc_generation_commutes() {
        let gf3 = RingSpec::prime_field(3).unwrap();
        let space = InstanceSpace::random(&gf3, 2, 7, 20);
        let insts = generate_constrained(&space, Constraint::CentralBc).unwrap();
        for inst in &insts {
            let b = inst.get("b").unwrap();
            let t = inst.get("a").unwrap();
            assert_eq!(&(b * t), &(t * b), "scalar matrices are central");
            assert!(constraint_holds(Constraint::CentralBc, inst).unwrap());
        }
    }

    #[test]
    fn rann_equal_generation() {
        let gf3 = RingSpec::prime_field(3).unwrap();
        let space = InstanceSpace::random(&gf3, 2, 9, 20);
        let insts = generate_constrained(&space, Constraint::RannEqualBc).unwrap();
        for inst in &insts {
            assert!(constraint_holds(Constraint::RannEqualBc, inst).unwrap());
        }
    }

    #[test]
    fn deterministic_generation() {
        let gf3 = RingSpec::prime_field(3).unwrap();
        let space = InstanceSpace::random(&gf3, 2, 1234, 30);
        let a = generate_constrained(&space, Constraint::GroupInvertibleVawb).unwrap();
        let b = generate_constrained(&space, Constraint::GroupInvertibleVawb).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn encode_matches_enumeration_order() {
        let all: Vec<Matrix> = all_matrices(&gf2(), 2).unwrap().collect();
        for (i, m) in all.iter().enumerate() {
            assert_eq!(encode(m), i as u64);
        }
    }
}
