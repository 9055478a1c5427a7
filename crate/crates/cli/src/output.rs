//! Serializable reports. Every report parses back from its own JSON.

use std::fmt::Write as _;

use brauer_core::brauer::BrauerClassQ;
use brauer_core::local::{PlaceQ, SquareBudget, SquareCertificate, SquareClassVerdict};
use indexmap::IndexMap;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub trait Report: Serialize {
    fn text(&self) -> String;
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BudgetRepr {
    pub max_prime: u64,
    pub lift_primes: usize,
    pub min_precision: u32,
    pub max_precision: u32,
    pub max_lift_factors: usize,
}

impl From<&SquareBudget> for BudgetRepr {
    fn from(b: &SquareBudget) -> Self {
        BudgetRepr {
            max_prime: b.max_prime,
            lift_primes: b.lift_primes,
            min_precision: b.min_precision,
            max_precision: b.max_precision,
            max_lift_factors: b.max_lift_factors,
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Meta {
    pub seed: u64,
    pub square_budget: BudgetRepr,
}

/// Hilbert symbols rendered as a flat object: `{"2": -1, "real": -1, "product": 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertReport {
    pub symbols: Vec<(PlaceQ, i8)>,
    pub product: Option<i8>,
}

impl Serialize for HilbertReport {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map: IndexMap<String, i8> =
            self.symbols.iter().map(|(v, s)| (v.to_string(), *s)).collect();
        if let Some(p) = self.product {
            map.insert("product".into(), p);
        }
        map.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for HilbertReport {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let map = IndexMap::<String, i8>::deserialize(de)?;
        let mut symbols = Vec::new();
        let mut product = None;
        for (k, s) in map {
            if s != 1 && s != -1 {
                return Err(D::Error::custom(format!("symbol {s} is not +-1")));
            }
            if k == "product" {
                product = Some(s);
            } else {
                symbols.push((k.parse().map_err(D::Error::custom)?, s));
            }
        }
        Ok(HilbertReport { symbols, product })
    }
}

impl Report for HilbertReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for (v, s) in &self.symbols {
            let _ = writeln!(out, "(a, b)_{v} = {s}");
        }
        if let Some(p) = self.product {
            let _ = writeln!(out, "product = {p}");
        }
        out
    }
}

fn class_text(c: &BrauerClassQ) -> String {
    if c.is_zero() {
        return "0 (split)".into();
    }
    c.invariants().iter().map(|(v, inv)| format!("inv_{v} = {inv}")).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassReport(pub BrauerClassQ);

impl Report for ClassReport {
    fn text(&self) -> String {
        format!("{}\nindex = {}\n", class_text(&self.0), self.0.index())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SameSubReport {
    pub same_maximal_subfields: bool,
    pub index: u64,
    pub local_indices1: IndexMap<PlaceQ, u64>,
    pub local_indices2: IndexMap<PlaceQ, u64>,
    pub citations: Vec<String>,
}

impl Report for SameSubReport {
    fn text(&self) -> String {
        format!(
            "same maximal subfields: {}\nindex = {}\n",
            self.same_maximal_subfields, self.index
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Ex65Report {
    pub n: u64,
    pub places: Vec<PlaceQ>,
    pub class1: BrauerClassQ,
    pub class2: BrauerClassQ,
    pub same_maximal_subfields: bool,
    pub same_subgroup: bool,
    pub equal: bool,
}

impl Report for Ex65Report {
    fn text(&self) -> String {
        format!(
            "class1: {}\nclass2: {}\nsame maximal subfields: {}\nsame subgroup: {}\nequal: {}\n",
            class_text(&self.class1),
            class_text(&self.class2),
            self.same_maximal_subfields,
            self.same_subgroup,
            self.equal
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QuatRepr {
    pub a: String,
    pub b: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QuaternionReport {
    pub meta: Meta,
    pub quaternion: QuatRepr,
    pub class: BrauerClassQ,
    pub verified: bool,
}

impl Report for QuaternionReport {
    fn text(&self) -> String {
        format!("({}, {})\nclass: {}\n", self.quaternion.a, self.quaternion.b, class_text(&self.class))
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateRepr {
    Root { root: String },
    NonResidue { prime: u64, factor: String, image: String },
}

impl From<&SquareClassVerdict> for CertificateRepr {
    fn from(v: &SquareClassVerdict) -> Self {
        match &v.certificate {
            SquareCertificate::Root(r) => CertificateRepr::Root { root: r.to_string() },
            SquareCertificate::NonResidue { prime, factor, image } => CertificateRepr::NonResidue {
                prime: *prime,
                factor: factor.to_string(),
                image: image.to_string(),
            },
        }
    }
}

impl CertificateRepr {
    fn text(&self) -> String {
        match self {
            CertificateRepr::Root { root } => format!("root {root}"),
            CertificateRepr::NonResidue { prime, factor, image } => {
                format!("{image} is a non-residue mod ({prime}, {factor})")
            }
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ResidueRepr {
    pub trivial: bool,
    pub symbol: String,
    pub certificate: CertificateRepr,
    pub verified: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QxResiduesReport {
    pub meta: Meta,
    pub f: String,
    pub g: String,
    pub residues: IndexMap<String, ResidueRepr>,
    pub ramified: Vec<String>,
}

impl Report for QxResiduesReport {
    fn text(&self) -> String {
        let mut out = format!("({}, {})\n", self.f, self.g);
        if self.residues.is_empty() {
            out.push_str("no place divides an entry; unramified at every finite place\n");
        }
        for (v, r) in &self.residues {
            let _ = writeln!(
                out,
                "  at {v}: symbol {} -> {} ({})",
                r.symbol,
                if r.trivial { "trivial" } else { "nontrivial" },
                r.certificate.text()
            );
        }
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QxWitnessRepr {
    Residue { place: String, symbol1: String, symbol2: String, ratio_certificate: CertificateRepr, verified: bool },
    Constant { alpha: String, difference: BrauerClassQ, verified: bool },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QxIsomReport {
    pub meta: Meta,
    pub algebra1: QuatRepr,
    pub algebra2: QuatRepr,
    pub isomorphic: bool,
    pub places_checked: Vec<String>,
    pub alpha: Option<String>,
    pub witness: Option<QxWitnessRepr>,
    pub citations: Vec<String>,
}

impl Report for QxIsomReport {
    fn text(&self) -> String {
        let mut out = format!(
            "({}, {}) vs ({}, {}): {}\n",
            self.algebra1.a,
            self.algebra1.b,
            self.algebra2.a,
            self.algebra2.b,
            if self.isomorphic { "isomorphic" } else { "not isomorphic" }
        );
        if let Some(a) = &self.alpha {
            let _ = writeln!(out, "specialization point: x = {a}");
        }
        match &self.witness {
            Some(QxWitnessRepr::Residue { place, symbol1, symbol2, .. }) => {
                let _ = writeln!(out, "residues differ at {place}: {symbol1} vs {symbol2}");
            }
            Some(QxWitnessRepr::Constant { difference, .. }) => {
                let _ = writeln!(out, "constant difference: {}", class_text(difference));
            }
            None => {}
        }
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QxSameMaxReport {
    pub same_maximal_subfields: bool,
    pub summary: String,
    pub decision: QxIsomReport,
}

impl Report for QxSameMaxReport {
    fn text(&self) -> String {
        format!("{}\n{}", self.summary, self.decision.text())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpecializeReport {
    pub alpha: String,
    pub quaternion: QuatRepr,
    pub class: BrauerClassQ,
}

impl Report for SpecializeReport {
    fn text(&self) -> String {
        format!(
            "at x = {}: ({}, {})\nclass: {}\n",
            self.alpha,
            self.quaternion.a,
            self.quaternion.b,
            class_text(&self.class)
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FfxResiduesReport {
    pub p: u64,
    pub f: String,
    pub g: String,
    pub residues: IndexMap<String, i8>,
    pub ramified: Vec<String>,
    pub product: i8,
}

impl Report for FfxResiduesReport {
    fn text(&self) -> String {
        let mut out = format!("({}, {}) over F_{}\n", self.f, self.g, self.p);
        for (v, s) in &self.residues {
            let _ = writeln!(out, "  at {v}: {s}");
        }
        let _ = writeln!(out, "product = {}", self.product);
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FfxIsomReport {
    pub p: u64,
    pub isomorphic: bool,
    pub witness: Option<String>,
    pub class1: Vec<String>,
    pub class2: Vec<String>,
    pub citations: Vec<String>,
}

impl Report for FfxIsomReport {
    fn text(&self) -> String {
        let mut out = format!("{}\n", if self.isomorphic { "isomorphic" } else { "not isomorphic" });
        let _ = writeln!(out, "ramified (1): {{{}}}", self.class1.join(", "));
        let _ = writeln!(out, "ramified (2): {{{}}}", self.class2.join(", "));
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "residues differ at {w}");
        }
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub field: String,
    pub unit: String,
    pub factors: Vec<(String, u32)>,
}

impl Report for FactorReport {
    fn text(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(f, m)| if *m == 1 { format!("({f})") } else { format!("({f})^{m}") })
            .collect();
        if parts.is_empty() {
            format!("{}\n", self.unit)
        } else {
            format!("{} * {}\n", self.unit, parts.join(" * "))
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub meta: Meta,
    pub modulus: String,
    pub value: String,
    pub is_square: bool,
    pub certificate: CertificateRepr,
    pub verified: bool,
}

impl Report for SquareReport {
    fn text(&self) -> String {
        format!(
            "{} is {}a square in Q[x]/({}): {}\n",
            self.value,
            if self.is_square { "" } else { "not " },
            self.modulus,
            self.certificate.text()
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub cases: usize,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl Report for SelftestReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(out, "{} {} ({} cases)", if s.passed { "PASS" } else { "FAIL" }, s.name, s.cases);
            for f in &s.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
        let _ = writeln!(out, "seed {}: {}", self.seed, if self.passed { "all suites passed" } else { "failures" });
        out
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
}
