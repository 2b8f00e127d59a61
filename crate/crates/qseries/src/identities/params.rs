//! Named sample parameters and the seeded generator that draws them.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::scalar::{c64, ComplexScalar};

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Complex(ComplexScalar),
    Int(i64),
    List(Vec<ComplexScalar>),
}

/// Parameters of one sample, in the order the sampler drew them.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    entries: Vec<(&'static str, ParamValue)>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    /// Insert or replace.
    pub fn set(&mut self, name: &'static str, value: ParamValue) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &ParamValue)> {
        self.entries.iter().map(|(n, v)| (*n, v))
    }

    /// Complex parameter; integers are widened. Panics on a missing name, which is a
    /// registry bug rather than a runtime condition.
    pub fn c(&self, name: &str) -> ComplexScalar {
        match self.get(name) {
            Some(ParamValue::Complex(z)) => *z,
            Some(ParamValue::Int(k)) => c64(*k as f64, 0.0),
            other => panic!("parameter `{name}` is not a complex value: {other:?}"),
        }
    }

    /// Several complex parameters at once: `let [q, x] = p.cs(["q", "x"]);`.
    pub fn cs<const N: usize>(&self, names: [&str; N]) -> [ComplexScalar; N] {
        names.map(|n| self.c(n))
    }

    pub fn i(&self, name: &str) -> i64 {
        match self.get(name) {
            Some(ParamValue::Int(k)) => *k,
            other => panic!("parameter `{name}` is not an integer: {other:?}"),
        }
    }

    pub fn list(&self, name: &str) -> &[ComplexScalar] {
        match self.get(name) {
            Some(ParamValue::List(v)) => v,
            other => panic!("parameter `{name}` is not a list: {other:?}"),
        }
    }
}

/// `{"re": .., "im": ..}`, or `null` when either part is not finite.
pub struct JsonComplex(pub ComplexScalar);

impl Serialize for JsonComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let z = self.0;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return s.serialize_none();
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("re", &z.re)?;
        m.serialize_entry("im", &z.im)?;
        m.end()
    }
}

struct JsonList<'a>(&'a [ComplexScalar]);

impl Serialize for JsonList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for &z in self.0 {
            seq.serialize_element(&JsonComplex(z))?;
        }
        seq.end()
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Complex(z) => JsonComplex(*z).serialize(s),
            ParamValue::Int(k) => s.serialize_i64(*k),
            ParamValue::List(v) => JsonList(v).serialize(s),
        }
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.entries.len()))?;
        for (n, v) in &self.entries {
            m.serialize_entry(n, v)?;
        }
        m.end()
    }
}

/// Default sampling ranges.
pub const Q_RANGE: (f64, f64) = (0.05, 0.6);
pub const PARAM_MODULUS: (f64, f64) = (0.1, 0.8);
pub const X_MODULUS: (f64, f64) = (0.3, 1.5);

/// Seeded draws for one attempt at one sample. The stream depends only on
/// `(seed, case id, sample index, attempt)`, so results do not depend on scheduling.
pub struct Draw {
    rng: ChaCha8Rng,
    params: Params,
}

impl Draw {
    pub fn new(seed: u64, case_id: &str, index: usize, attempt: usize) -> Draw {
        let mut h = Sha256::new();
        h.update(seed.to_le_bytes());
        h.update((case_id.len() as u64).to_le_bytes());
        h.update(case_id.as_bytes());
        h.update((index as u64).to_le_bytes());
        h.update((attempt as u64).to_le_bytes());
        let digest: [u8; 32] = h.finalize().into();
        Draw { rng: ChaCha8Rng::from_seed(digest), params: Params::new() }
    }

    pub fn into_params(self) -> Params {
        self.params
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }

    /// Complex number with modulus uniform in `[lo, hi]` and uniform phase, not recorded.
    pub fn raw(&mut self, lo: f64, hi: f64) -> ComplexScalar {
        let r = self.uniform(lo, hi);
        let t = self.uniform(0.0, TAU);
        ComplexScalar::from_polar(r, t)
    }

    pub fn put(&mut self, name: &'static str, z: ComplexScalar) -> ComplexScalar {
        self.params.set(name, ParamValue::Complex(z));
        z
    }

    /// Real `q` from the default range.
    pub fn q(&mut self) -> ComplexScalar {
        let q = self.uniform(Q_RANGE.0, Q_RANGE.1);
        self.put("q", c64(q, 0.0))
    }

    /// Free complex parameter from the default modulus range.
    pub fn c(&mut self, name: &'static str) -> ComplexScalar {
        self.modulus(name, PARAM_MODULUS.0, PARAM_MODULUS.1)
    }

    /// Argument-like parameter (`x` or a multiplier inside theta).
    pub fn x(&mut self, name: &'static str) -> ComplexScalar {
        self.modulus(name, X_MODULUS.0, X_MODULUS.1)
    }

    pub fn modulus(&mut self, name: &'static str, lo: f64, hi: f64) -> ComplexScalar {
        let z = self.raw(lo, hi);
        self.put(name, z)
    }

    pub fn int(&mut self, name: &'static str, lo: i64, hi: i64) -> i64 {
        let k = self.rng.random_range(lo..=hi);
        self.params.set(name, ParamValue::Int(k));
        k
    }

    pub fn put_int(&mut self, name: &'static str, k: i64) -> i64 {
        self.params.set(name, ParamValue::Int(k));
        k
    }

    pub fn list(&mut self, name: &'static str, len: usize) -> Vec<ComplexScalar> {
        let v: Vec<_> = (0..len).map(|_| self.raw(PARAM_MODULUS.0, PARAM_MODULUS.1)).collect();
        self.params.set(name, ParamValue::List(v.clone()));
        v
    }

    /// Halve `value` until `|value * ratio| <= lim`; used to land a series argument
    /// inside its disc without rejecting the whole draw.
    pub fn shrink(value: ComplexScalar, ratio: ComplexScalar, lim: f64) -> ComplexScalar {
        let mut v = value;
        while (v * ratio).norm() > lim && v.norm() > 1e-6 {
            v *= 0.5;
        }
        v
    }
}
