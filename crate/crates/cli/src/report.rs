//! Output records. Every float is written with 17 significant digits so that files are
//! bit-stable and parse back to the same values.

use qergodic::multimatrix::AlgebraElement;
use qergodic::C64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

/// `x` in scientific notation with 17 significant digits; `-0` prints as `0`.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(format_float(self.0)).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(Num)
    }
}

pub fn complex(z: C64) -> [Num; 2] {
    [Num(z.re), Num(z.im)]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub dims: Vec<usize>,
    /// Canonical coordinates: blocks concatenated, each row-major, as `[re, im]`.
    pub coords: Vec<[Num; 2]>,
}

impl From<&AlgebraElement> for Element {
    fn from(a: &AlgebraElement) -> Self {
        Element { dims: a.structure().dims().to_vec(), coords: a.coords().iter().map(|&z| complex(z)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfSummary {
    pub passed: bool,
    pub tol: Num,
    pub residuals: Vec<NamedValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateSummary {
    pub mass_at_identity: Num,
    pub faithful: bool,
    pub support_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Describe {
    pub schema: u32,
    pub group: String,
    pub kind: String,
    pub dims: Vec<usize>,
    pub dimension: usize,
    pub counit_block: usize,
    pub haar_weights: Vec<Num>,
    pub hopf: HopfSummary,
    pub state: StateSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub k: u64,
    pub tv: Num,
    pub l2: Num,
    pub qsd: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub schema: u32,
    pub rows: Vec<TraceRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Ergodic {},
    QuasiSubgroup { projection: Element, rank: usize, central: bool },
    CyclicPartition { projections: Vec<Element> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TvSample {
    pub k: u64,
    pub tv: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub schema: u32,
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub certificate: Certificate,
    pub peripheral: Vec<[Num; 2]>,
    pub cesaro_support: Element,
    pub tv_samples: Vec<TvSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub re: Num,
    pub im: Num,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub schema: u32,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupLike {
    pub rank: usize,
    pub haar_mass: Num,
    pub central: bool,
    pub projection: Element,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupLikes {
    pub schema: u32,
    pub group: String,
    pub count: usize,
    pub grouplikes: Vec<GroupLike>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub m: u64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionProbe {
    pub period: usize,
    /// `‖Δ(p_i) − Σ_j p_{i−j} ⊗ p_j‖_∞` for each `i`.
    pub comultiplication_residuals: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub schema: u32,
    pub cesaro_support_chain: Vec<ChainEntry>,
    /// Whether the ranks increase strictly until they first repeat, and then stay put.
    pub chain_strict_until_stable: bool,
    pub cyclic_partition: Option<PartitionProbe>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Zhang {
    pub schema: u32,
    pub nu_eta: Num,
    pub applies: bool,
    pub spectral_ball_ok: bool,
    pub converges: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Freslon {
    pub schema: u32,
    pub ergodic: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterCoefficient {
    pub label: String,
    pub dim: usize,
    pub trivial: bool,
    pub coefficient: [Num; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Baraquin {
    pub schema: u32,
    pub central: bool,
    pub ergodic: Option<bool>,
    pub coefficients: Vec<CharacterCoefficient>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.0), "0.0000000000000000e0");
        assert_eq!(format_float(-0.125), "-1.2500000000000000e-1");
        let x = 0.1 + 0.2;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn numbers_round_trip_through_json() {
        let row = TraceRow { k: 3, tv: Num(1.0 / 3.0), l2: Num(0.25), qsd: Num(0.0) };
        let text = serde_json::to_string(&row).unwrap();
        assert_eq!(text, r#"{"k":3,"tv":3.3333333333333331e-1,"l2":2.5000000000000000e-1,"qsd":0.0000000000000000e0}"#);
        let back: TraceRow = serde_json::from_str(&text).unwrap();
        assert_eq!(back, row);
    }
}
