use std::fs;
use std::path::Path;

use brauer_core::arith::parse::{parse_poly_fp, parse_poly_q, parse_rational};
use brauer_core::arith::{factor_poly_q, PolyQ};
use brauer_core::brauer::{
    class_of_quaternion, four_place_pair, quaternion_of_class, same_maximal_subfields_q, same_subgroup, scale_class,
    BrauerClassQ, QuaternionQ,
};
use brauer_core::funcfield_fp::{
    candidate_places, is_isomorphic_fpx, residue_fp, FactoredFuncFp, QuatClassFp,
};
use brauer_core::funcfield_q::{
    is_isomorphic_qx_with, residue_table, same_maximal_subfields_qx_with, specialize, QuaternionFF, QxVerdict,
    QxWitness, QX_CITATION,
};
use brauer_core::local::{hilbert, is_square_in_number_field_with, relevant_places, NumberFieldElem, PlaceQ, SquareBudget};
use brauer_core::{Error, Result};

use crate::args::{BrqCmd, Cli, Command, FfxCmd, HilbertArgs, PairArgs, QxCmd, TwoPairArgs};
use crate::output::*;
use crate::selftest;

pub const BUDGET_ENV: &str = "BRAUER_SQUARE_BUDGET";

pub const AHBN_CITATION: &str =
    "Albert-Hasse-Brauer-Noether: a class in Br(Q) is determined by its local invariants";
pub const FADDEEV_CITATION: &str =
    "Faddeev exact sequence: residues at finite places plus one specialization determine a class over Q(x)";
pub const FP_CITATION: &str = "Br(F_p) = 0: a 2-torsion class over F_p(x) is its residue vector, infinity included";
pub const LOCAL_INDEX_CITATION: &str =
    "over a number field, division algebras of equal degree share maximal subfields iff local indices agree";

/// Reads the square-test budget override: either `max_prime` alone or
/// comma-separated `key=value` pairs.
pub fn budget_from_env() -> Result<SquareBudget> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => parse_budget(&s),
        Err(_) => Ok(SquareBudget::default()),
    }
}

pub fn parse_budget(s: &str) -> Result<SquareBudget> {
    let mut b = SquareBudget::default();
    let bad = |m: &str| Error::Parse(format!("{BUDGET_ENV}: {m}"));
    let s = s.trim();
    if let Ok(n) = s.parse::<u64>() {
        b.max_prime = n;
        return Ok(b);
    }
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| bad(&format!("expected key=value, got {part:?}")))?;
        let v: u64 = v.trim().parse().map_err(|_| bad(&format!("bad number in {part:?}")))?;
        match k.trim() {
            "max_prime" => b.max_prime = v,
            "lift_primes" => b.lift_primes = v as usize,
            "min_precision" => b.min_precision = v as u32,
            "max_precision" => b.max_precision = v as u32,
            "max_lift_factors" => b.max_lift_factors = v as usize,
            other => return Err(bad(&format!("unknown key {other:?}"))),
        }
    }
    Ok(b)
}

pub struct Rendered {
    pub json: serde_json::Value,
    pub text: String,
}

fn render<R: Report>(r: R) -> Rendered {
    Rendered { json: serde_json::to_value(&r).expect("reports serialize"), text: r.text() }
}

pub fn dispatch(cli: &Cli) -> Result<Rendered> {
    let budget = budget_from_env()?;
    let meta = Meta { seed: cli.seed, square_budget: BudgetRepr::from(&budget) };
    match &cli.command {
        Command::Hilbert(a) => Ok(render(hilbert_cmd(a)?)),
        Command::Brq { cmd } => brq(cmd, cli.seed, &meta),
        Command::Qx { cmd } => qx(cmd, &budget, &meta),
        Command::Ffx { cmd } => ffx(cmd),
        Command::Factor(a) => Ok(render(factor_cmd(&a.f, a.p)?)),
        Command::Square(a) => Ok(render(square_cmd(&a.modulus, &a.value, &budget, meta)?)),
        Command::Selftest(a) => Ok(render(selftest::run(cli.seed, a.cases))),
    }
}

fn hilbert_cmd(a: &HilbertArgs) -> Result<HilbertReport> {
    let x = parse_rational(&a.a)?;
    let y = parse_rational(&a.b)?;
    if let Some(p) = &a.p {
        let v: PlaceQ = p.parse()?;
        if v == PlaceQ::Real {
            return Err(Error::Parse("use --real for the real place".into()));
        }
        return Ok(HilbertReport { symbols: vec![(v.clone(), hilbert(&x, &y, &v)?)], product: None });
    }
    if a.real {
        return Ok(HilbertReport { symbols: vec![(PlaceQ::Real, hilbert(&x, &y, &PlaceQ::Real)?)], product: None });
    }
    let mut symbols = Vec::new();
    for v in relevant_places(&x, &y)? {
        symbols.push((v.clone(), hilbert(&x, &y, &v)?));
    }
    let product = symbols.iter().map(|(_, s)| *s).product();
    Ok(HilbertReport { symbols, product: Some(product) })
}

fn read_class(path: &Path) -> Result<BrauerClassQ> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let msg = e.to_string();
        if e.is_data() && !msg.contains("invalid type") && !msg.contains("missing field") {
            Error::Domain(format!("{}: {msg}", path.display()))
        } else {
            Error::Parse(format!("{}: {msg}", path.display()))
        }
    })
}

fn quat_repr(q: &QuaternionQ) -> QuatRepr {
    QuatRepr { a: q.a().to_string(), b: q.b().to_string() }
}

fn brq(cmd: &BrqCmd, seed: u64, meta: &Meta) -> Result<Rendered> {
    match cmd {
        BrqCmd::Class { a, b } => {
            let q = QuaternionQ::new(parse_rational(a)?, parse_rational(b)?)?;
            Ok(render(ClassReport(class_of_quaternion(&q)?)))
        }
        BrqCmd::Samesub { file1, file2 } => {
            let (c1, c2) = (read_class(file1)?, read_class(file2)?);
            let same = same_maximal_subfields_q(&c1, &c2)?;
            Ok(render(SameSubReport {
                same_maximal_subfields: same,
                index: c1.index(),
                local_indices1: c1.local_indices().into_iter().collect(),
                local_indices2: c2.local_indices().into_iter().collect(),
                citations: vec![AHBN_CITATION.into(), LOCAL_INDEX_CITATION.into()],
            }))
        }
        BrqCmd::Ex65 { n, p } => {
            let places: Vec<PlaceQ> = p.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let arr: [PlaceQ; 4] = places
                .clone()
                .try_into()
                .map_err(|_| Error::Parse("exactly four places are required".into()))?;
            let (class1, class2) = four_place_pair(*n, &arr)?;
            Ok(render(Ex65Report {
                n: *n,
                places,
                same_maximal_subfields: same_maximal_subfields_q(&class1, &class2)?,
                same_subgroup: same_subgroup(&class1, &class2),
                equal: class1 == class2,
                class1,
                class2,
            }))
        }
        BrqCmd::Scale { file, m } => Ok(render(ClassReport(scale_class(&read_class(file)?, *m)))),
        BrqCmd::Quaternion { file } => {
            let c = read_class(file)?;
            let q = quaternion_of_class(&c, seed)?;
            let class = class_of_quaternion(&q)?;
            Ok(render(QuaternionReport {
                meta: meta.clone(),
                quaternion: quat_repr(&q),
                verified: class == c,
                class,
            }))
        }
    }
}

fn parse_pair(p: &PairArgs) -> Result<QuaternionFF> {
    QuaternionFF::parse(&p.f, &p.g)
}

fn ff_repr(d: &QuaternionFF) -> QuatRepr {
    QuatRepr { a: d.f.to_string(), b: d.g.to_string() }
}

pub fn qx_isom_report(d1: &QuaternionFF, d2: &QuaternionFF, v: &QxVerdict, meta: &Meta) -> Result<QxIsomReport> {
    let witness = match &v.witness {
        None => None,
        Some(w) => {
            let verified = w.verify(d1, d2)?;
            Some(match w {
                QxWitness::Residue { place, symbol1, symbol2, ratio } => QxWitnessRepr::Residue {
                    place: place.to_string(),
                    symbol1: symbol1.value().to_string(),
                    symbol2: symbol2.value().to_string(),
                    ratio_certificate: ratio.into(),
                    verified,
                },
                QxWitness::Constant { alpha, difference } => QxWitnessRepr::Constant {
                    alpha: alpha.to_string(),
                    difference: difference.clone(),
                    verified,
                },
            })
        }
    };
    let mut citations = vec![FADDEEV_CITATION.to_string()];
    if v.alpha.is_some() {
        citations.push(AHBN_CITATION.into());
    }
    Ok(QxIsomReport {
        meta: meta.clone(),
        algebra1: ff_repr(d1),
        algebra2: ff_repr(d2),
        isomorphic: v.isomorphic,
        places_checked: v.places_checked.iter().map(|p| p.to_string()).collect(),
        alpha: v.alpha.as_ref().map(|a| a.to_string()),
        witness,
        citations,
    })
}

fn two_pairs(a: &TwoPairArgs) -> Result<(QuaternionFF, QuaternionFF)> {
    Ok((QuaternionFF::parse(&a.f1, &a.g1)?, QuaternionFF::parse(&a.f2, &a.g2)?))
}

fn qx(cmd: &QxCmd, budget: &SquareBudget, meta: &Meta) -> Result<Rendered> {
    match cmd {
        QxCmd::Residues(p) => {
            let d = parse_pair(p)?;
            let table = residue_table(&d, budget)?;
            let mut residues = indexmap::IndexMap::new();
            let mut ramified = Vec::new();
            for r in &table {
                if !r.trivial {
                    ramified.push(r.place.to_string());
                }
                residues.insert(
                    r.place.to_string(),
                    ResidueRepr {
                        trivial: r.trivial,
                        symbol: r.symbol.value().to_string(),
                        certificate: (&r.certificate).into(),
                        verified: r.certificate.verify(&r.symbol),
                    },
                );
            }
            Ok(render(QxResiduesReport { meta: meta.clone(), f: d.f.to_string(), g: d.g.to_string(), residues, ramified }))
        }
        QxCmd::Isom(a) => {
            let (d1, d2) = two_pairs(a)?;
            let v = is_isomorphic_qx_with(&d1, &d2, budget)?;
            Ok(render(qx_isom_report(&d1, &d2, &v, meta)?))
        }
        QxCmd::Samemax(a) => {
            let (d1, d2) = two_pairs(a)?;
            let v = same_maximal_subfields_qx_with(&d1, &d2, budget)?;
            let mut decision = qx_isom_report(&d1, &d2, &v.verdict, meta)?;
            decision.citations.insert(0, v.citation.to_string());
            let summary = if v.same {
                "same maximal subfields (isomorphic)".to_string()
            } else {
                format!("distinct maximal-subfield sets ({QX_CITATION})")
            };
            Ok(render(QxSameMaxReport { same_maximal_subfields: v.same, summary, decision }))
        }
        QxCmd::Specialize { pair, at } => {
            let d = parse_pair(pair)?;
            let alpha = parse_rational(at)?;
            let q = specialize(&d, &alpha)?;
            Ok(render(SpecializeReport {
                alpha: alpha.to_string(),
                quaternion: quat_repr(&q),
                class: class_of_quaternion(&q)?,
            }))
        }
    }
}

fn class_places(c: &QuatClassFp) -> Vec<String> {
    c.residues().keys().map(|v| v.to_string()).collect()
}

fn ffx(cmd: &FfxCmd) -> Result<Rendered> {
    match cmd {
        FfxCmd::Residues { p, pair } => {
            let f = FactoredFuncFp::parse(&pair.f, *p)?;
            let g = FactoredFuncFp::parse(&pair.g, *p)?;
            let mut residues = indexmap::IndexMap::new();
            for v in candidate_places(&f, &g) {
                residues.insert(v.to_string(), residue_fp(&f, &g, &v)?);
            }
            let product = residues.values().product();
            let ramified = residues.iter().filter(|(_, s)| **s == -1).map(|(v, _)| v.clone()).collect();
            Ok(render(FfxResiduesReport { p: *p, f: f.to_string(), g: g.to_string(), residues, ramified, product }))
        }
        FfxCmd::Isom { p, pairs } => {
            let parse = |s: &str| FactoredFuncFp::parse(s, *p);
            let (f1, g1, f2, g2) = (parse(&pairs.f1)?, parse(&pairs.g1)?, parse(&pairs.f2)?, parse(&pairs.g2)?);
            let v = is_isomorphic_fpx((&f1, &g1), (&f2, &g2))?;
            Ok(render(FfxIsomReport {
                p: *p,
                isomorphic: v.isomorphic,
                witness: v.witness.as_ref().map(|w| w.to_string()),
                class1: class_places(&v.class1),
                class2: class_places(&v.class2),
                citations: vec![FP_CITATION.into()],
            }))
        }
    }
}

fn factor_cmd(f: &str, p: Option<u64>) -> Result<FactorReport> {
    match p {
        None => {
            let fq = factor_poly_q(&parse_poly_q(f)?)?;
            Ok(FactorReport {
                field: "Q".into(),
                unit: fq.unit.to_string(),
                factors: fq.factors.iter().map(|(g, m)| (g.to_string(), *m)).collect(),
            })
        }
        Some(p) => {
            let (unit, factors) = parse_poly_fp(f, p)?.factor()?;
            Ok(FactorReport {
                field: format!("F_{p}"),
                unit: unit.to_string(),
                factors: factors.iter().map(|(g, m)| (g.to_string(), *m)).collect(),
            })
        }
    }
}

fn square_cmd(modulus: &str, value: &str, budget: &SquareBudget, meta: Meta) -> Result<SquareReport> {
    let m: PolyQ = parse_poly_q(modulus)?;
    let c = NumberFieldElem::new(m, parse_poly_q(value)?)?;
    let v = is_square_in_number_field_with(&c, budget)?;
    Ok(SquareReport {
        meta,
        modulus: c.modulus().to_string(),
        value: c.value().to_string(),
        is_square: v.is_square,
        certificate: (&v).into(),
        verified: v.verify(&c),
    })
}

/// Exit status for an error: 2 parse, 3 undecided, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::Undecided(_) => 3,
        _ => 1,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
        Error::Undecided(_) => "undecided",
        Error::Internal(_) => "internal",
    }
}
