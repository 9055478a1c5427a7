//! Seeded property suites, runnable from the command line.

use brauer_core::arith::{factor_poly_q, is_irreducible_q, PolyFp, PolyQ};
use brauer_core::brauer::{same_maximal_subfields_q, scale_class, BrauerClassQ};
use brauer_core::funcfield_fp::{candidate_places, residue_fp, FactoredFuncFp};
use brauer_core::funcfield_q::{is_isomorphic_qx, QuaternionFF};
use brauer_core::local::{hilbert, is_square_in_number_field, relevant_places, NumberFieldElem, PlaceQ};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{SelftestReport, SuiteResult};

const SMALL_PRIMES: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn random_rational(rng: &mut impl Rng, bound: i64) -> BigRational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-bound..=bound);
    }
    BigRational::new(n.into(), rng.gen_range(1..=bound).into())
}

/// A class of exact index `n` supported at 2 to 5 small primes.
pub fn random_class(rng: &mut impl Rng, n: u64) -> BrauerClassQ {
    let k = rng.gen_range(2..=5);
    let primes: Vec<u32> = SMALL_PRIMES.choose_multiple(rng, k).copied().collect();
    let mut entries = Vec::new();
    let mut sum = BigRational::from_integer(0.into());
    for (i, p) in primes.iter().enumerate() {
        let inv = if i == 0 {
            BigRational::new(1.into(), (n as i64).into())
        } else if i + 1 == primes.len() {
            -sum.clone()
        } else {
            BigRational::new(rng.gen_range(0..n as i64).into(), (n as i64).into())
        };
        sum += &inv;
        entries.push((PlaceQ::finite(*p).expect("prime"), inv));
    }
    BrauerClassQ::new(entries).expect("invariants sum to zero")
}

/// A random nonzero polynomial over Z with the given degree bound.
pub fn random_poly_q(rng: &mut impl Rng, max_deg: usize, bound: i64) -> PolyQ {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        let f = PolyQ::from_ints(&c);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random monic irreducible polynomial over Q of degree `d`.
pub fn random_irreducible_q(rng: &mut impl Rng, d: usize, bound: i64) -> PolyQ {
    loop {
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
        c.push(1);
        let f = PolyQ::from_ints(&c);
        if is_irreducible_q(&f).unwrap_or(false) {
            return f;
        }
    }
}

pub fn random_poly_fp(rng: &mut impl Rng, p: u64, max_deg: usize) -> PolyFp {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let f = PolyFp::new(p, (0..=d).map(|_| rng.gen_range(0..p)).collect());
        if !f.is_zero() {
            return f;
        }
    }
}

struct Suite {
    name: &'static str,
    failures: Vec<String>,
    cases: usize,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, failures: Vec::new(), cases: 0 }
    }

    fn check(&mut self, ok: Result<bool, String>, what: impl FnOnce() -> String) {
        self.cases += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.failures.push(what()),
            Err(e) => self.failures.push(format!("{}: {e}", what())),
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult { name: self.name.into(), cases: self.cases, passed: self.failures.is_empty(), failures: self.failures }
    }
}

fn hilbert_product(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("hilbert product formula");
    for _ in 0..cases {
        let a = random_rational(rng, 1_000_000);
        let b = random_rational(rng, 1_000_000);
        let ok = relevant_places(&a, &b).and_then(|vs| {
            vs.iter().map(|v| hilbert(&a, &b, v)).try_fold(1i8, |acc, s| Ok(acc * s?))
        });
        s.check(ok.map(|p| p == 1).map_err(|e| e.to_string()), || format!("({a}, {b})"));
    }
    s.finish()
}

fn hilbert_bimultiplicative(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("hilbert bimultiplicativity");
    for _ in 0..cases {
        let a = random_rational(rng, 1000);
        let b = random_rational(rng, 1000);
        let c = random_rational(rng, 1000);
        let bc = &b * &c;
        let ok = (|| -> brauer_core::Result<bool> {
            let mut places = relevant_places(&a, &bc)?;
            places.extend(relevant_places(&a, &b)?);
            places.extend(relevant_places(&a, &c)?);
            for v in &places {
                if hilbert(&a, &bc, v)? != hilbert(&a, &b, v)? * hilbert(&a, &c, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        s.check(ok.map_err(|e| e.to_string()), || format!("a={a} b={b} c={c}"));
    }
    s.finish()
}

fn coprime_scaling(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("Br(Q) coprime scaling and opposite");
    for _ in 0..cases {
        let n = rng.gen_range(3..=8u64);
        let c = random_class(rng, n);
        let m = loop {
            let m = rng.gen_range(-50i64..=50);
            if m.gcd(&(n as i64)) == 1 {
                break m;
            }
        };
        let ok = same_maximal_subfields_q(&c, &scale_class(&c, m))
            .and_then(|x| Ok(x && same_maximal_subfields_q(&c, &c.neg())?));
        s.check(ok.map_err(|e| e.to_string()), || format!("n={n} m={m}"));
    }
    s.finish()
}

fn qx_square_invariance(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("Q(x) square-class invariance");
    for _ in 0..cases {
        let f = random_poly_q(rng, 2, 5);
        let g = random_poly_q(rng, 2, 5);
        let h = random_poly_q(rng, 2, 5);
        let k: i64 = rng.gen_range(1..=6);
        let g2 = &(&g * &(&h * &h)) * &PolyQ::from_ints(&[k * k]);
        let ok = (|| -> brauer_core::Result<bool> {
            let d1 = QuaternionFF::parse(&f.to_string(), &g.to_string())?;
            let d2 = QuaternionFF::parse(&f.to_string(), &g2.to_string())?;
            Ok(is_isomorphic_qx(&d1, &d2)?.isomorphic)
        })();
        s.check(ok.map_err(|e| e.to_string()), || format!("f={f} g={g} h={h} k={k}"));
    }
    s.finish()
}

fn fp_reciprocity(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("F_p(x) reciprocity");
    for _ in 0..cases {
        let p = *[3u64, 5, 7, 11].choose(rng).unwrap();
        let (a, b) = (random_poly_fp(rng, p, 5), random_poly_fp(rng, p, 5));
        let one = PolyFp::one(p);
        let ok = (|| -> brauer_core::Result<bool> {
            let f = FactoredFuncFp::from_fraction(&a, &one)?;
            let g = FactoredFuncFp::from_fraction(&b, &one)?;
            let mut prod = 1;
            for v in candidate_places(&f, &g) {
                prod *= residue_fp(&f, &g, &v)?;
            }
            Ok(prod == 1)
        })();
        s.check(ok.map_err(|e| e.to_string()), || format!("p={p} f={a} g={b}"));
    }
    s.finish()
}

fn factor_roundtrip(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("factorization round-trip");
    for _ in 0..cases {
        let k = rng.gen_range(1..=4);
        let mut parts: Vec<PolyQ> = (0..k).map(|_| {
            let d = rng.gen_range(1..=3);
            random_irreducible_q(rng, d, 6)
        }).collect();
        parts.sort();
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(1..=9)));
        let f = parts.iter().fold(PolyQ::constant(c), |acc, g| &acc * g);
        let ok = factor_poly_q(&f).map(|fq| {
            let mut got: Vec<PolyQ> = fq
                .factors
                .iter()
                .flat_map(|(g, m)| std::iter::repeat_n(g.clone(), *m as usize))
                .collect();
            got.sort();
            got == parts && fq.product() == f
        });
        s.check(ok.map_err(|e| e.to_string()), || format!("f={f}"));
    }
    s.finish()
}

fn number_field_squares(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = Suite::new("number-field squares");
    for _ in 0..cases {
        let d = rng.gen_range(1..=4);
        let pi = random_irreducible_q(rng, d, 5);
        let r = random_poly_q(rng, d - 1, 9);
        let ok = (|| -> brauer_core::Result<bool> {
            let c = NumberFieldElem::new(pi.clone(), &r * &r)?;
            let v = is_square_in_number_field(&c)?;
            Ok(v.is_square && v.verify(&c))
        })();
        s.check(ok.map_err(|e| e.to_string()), || format!("pi={pi} r={r}"));
    }
    s.finish()
}

/// Runs every suite with `cases` cases each; deterministic in `seed`.
pub fn run(seed: u64, cases: usize) -> SelftestReport {
    let suites: Vec<fn(&mut ChaCha8Rng, usize) -> SuiteResult> = vec![
        hilbert_product,
        hilbert_bimultiplicative,
        coprime_scaling,
        qx_square_invariance,
        fp_reciprocity,
        factor_roundtrip,
        number_field_squares,
    ];
    let results: Vec<SuiteResult> = suites
        .iter()
        .enumerate()
        .map(|(i, suite)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64 + 1) << 32));
            suite(&mut rng, cases)
        })
        .collect();
    let passed = results.iter().all(|r| r.passed);
    SelftestReport { seed, cases, suites: results, passed }
}
