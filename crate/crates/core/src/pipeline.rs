//! Finite generation over `Z` of Alexander modules of one-parameter covers:
//! torsion checks over fields, the gcd/cyclotomic pipeline with an exact
//! decider, and Novikov-Betti numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::complex::{FreeComplex, RhoSpec};
use crate::error::{Error, Result};
use crate::genericity::{check_genericity, GenericityReport};
use crate::homology::rank_fraction_field;
use crate::ideal::{content_gcd_of_set, unit_ends_analysis, IdealGenerators, UnitEnds};
use crate::jumping::intersection_observables;
use crate::laurent::LaurentPoly;
use crate::matrix::{determinantal_ideal, PolyMatrix};
use crate::ring::{is_prime, CoeffRing};
use crate::univariate::{is_cyclotomic_product, primitive_integer_rep, squarefree_part, univariate_gcd, CyclotomicFactorization};

pub const DEFAULT_BUDGET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub degree: i64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldTorsion {
    /// `"Q"` or `"Fp:p"`.
    pub field: String,
    /// Ranks over the fraction field per degree of the window.
    pub ranks: Vec<DegreeRank>,
    pub torsion: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorsionCheck {
    pub rho: RhoSpec,
    pub window: (i64, i64),
    pub genericity: GenericityReport,
    pub fields: Vec<FieldTorsion>,
    pub all_torsion: bool,
}

fn check_window(c: &FreeComplex, window: (i64, i64)) -> Result<()> {
    if window.0 > window.1 {
        return Err(Error::Usage(format!("window [{}, {}] is not ordered", window.0, window.1)));
    }
    c.check_degree(window.0)?;
    c.check_degree(window.1)
}

fn check_primes(primes: &[u64]) -> Result<()> {
    match primes.iter().find(|&&p| !is_prime(p)) {
        Some(&p) => Err(Error::NotPrime(p)),
        None => Ok(()),
    }
}

fn require_integers(c: &FreeComplex) -> Result<()> {
    if c.ring().coeffs != CoeffRing::Integers {
        return Err(Error::InvalidRing(format!("expected Z coefficients, got {}", c.ring().coeffs)));
    }
    Ok(())
}

/// Fraction-field ranks of the specialized complex over `k` on the window.
fn field_torsion(specialized: &FreeComplex, k: CoeffRing, window: (i64, i64)) -> Result<FieldTorsion> {
    let ck = specialized.base_change(k)?;
    let ranks = (window.0..=window.1)
        .map(|i| Ok(DegreeRank { degree: i, rank: rank_fraction_field(&ck, i)? }))
        .collect::<Result<Vec<_>>>()?;
    let torsion = ranks.iter().all(|r| r.rank == 0);
    Ok(FieldTorsion { field: k.to_string(), ranks, torsion })
}

/// Whether `H_i` of the specialized complex is torsion over `Q[t^±]` and each
/// `F_p[t^±]` for all `i` in the window. Genericity is recorded, not enforced.
pub fn torsion_check(c: &FreeComplex, rho: &RhoSpec, window: (i64, i64), primes: &[u64]) -> Result<TorsionCheck> {
    require_integers(c)?;
    check_window(c, window)?;
    check_primes(primes)?;
    let obs = intersection_observables(c, window, DEFAULT_BUDGET)?;
    let genericity = check_genericity(&obs.product, rho)?;
    let s = c.specialize(rho)?;
    let mut fields = vec![field_torsion(&s, CoeffRing::Rationals, window)?];
    for &p in primes {
        fields.push(field_torsion(&s, CoeffRing::PrimeField(p), window)?);
    }
    let all_torsion = fields.iter().all(|f| f.torsion);
    Ok(TorsionCheck { rho: rho.clone(), window, genericity, fields, all_torsion })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    FgOverZ,
    NotFg,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    PrincipalCyclotomic,
    CoprimeCofinite,
    Inconclusive,
}

/// Outcome of the unit-ends decider on the specialized ideal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeciderReport {
    pub quotient_fg: bool,
    pub strong_basis: Vec<LaurentPoly>,
    pub involuted_strong_basis: Vec<LaurentPoly>,
    /// Element with both end coefficients ±1, when the quotient is f.g.
    pub unit_ends_witness: Option<LaurentPoly>,
    /// When not f.g.: which end admits no ±1 coefficient, and the leading
    /// coefficients of the corresponding strong basis.
    pub refutation: Option<Refutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub end: String,
    pub strong_basis_leading_coefficients: Vec<String>,
}

impl DeciderReport {
    pub fn from_analysis(a: &UnitEnds) -> Self {
        let refutation = if a.holds() {
            None
        } else if a.unit_leading.is_none() {
            Some(Refutation {
                end: "leading".into(),
                strong_basis_leading_coefficients: a.leading_coefficients().iter().map(|c| c.to_string()).collect(),
            })
        } else {
            Some(Refutation {
                end: "trailing".into(),
                strong_basis_leading_coefficients: a.trailing_coefficients().iter().map(|c| c.to_string()).collect(),
            })
        };
        DeciderReport {
            quotient_fg: a.holds(),
            strong_basis: a.basis.gens().to_vec(),
            involuted_strong_basis: a.involuted_basis.gens().to_vec(),
            unit_ends_witness: a.witness.clone(),
            refutation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeAgreement {
    pub prime: u64,
    pub divides_content: bool,
    pub generators_vanish_mod_p: bool,
    pub torsion_over_fp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FgReport {
    pub window: (i64, i64),
    pub rho: RhoSpec,
    pub dual: bool,
    /// Which generator set genericity was checked against.
    pub genericity_checked_against: String,
    pub genericity: GenericityReport,
    pub jumping_ideals: Vec<Vec<LaurentPoly>>,
    pub product_generators: Vec<LaurentPoly>,
    pub product_truncated: bool,
    pub specialized_generators: Vec<LaurentPoly>,
    pub d: usize,
    pub content_gcd: String,
    pub content_primes: Vec<u64>,
    pub h: LaurentPoly,
    pub h_squarefree: LaurentPoly,
    pub cyclotomic: Option<CyclotomicFactorization>,
    pub prime_agreement: Vec<PrimeAgreement>,
    pub branch: Branch,
    pub decider: Option<DeciderReport>,
    pub verdict: Verdict,
    pub diagnosis: Option<String>,
}

/// Prime divisors of a nonzero integer by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if n.is_multiple_of(&bp) {
            out.push(p);
            while n.is_multiple_of(&bp) {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n.to_u64().unwrap_or(u64::MAX));
    }
    out
}

pub struct FgOptions {
    pub primes: Vec<u64>,
    pub budget: usize,
    /// Run on the dual complex; the window then refers to cohomological degrees.
    pub dual: bool,
}

impl Default for FgOptions {
    fn default() -> Self {
        FgOptions { primes: vec![2, 3, 5, 7], budget: DEFAULT_BUDGET, dual: false }
    }
}

/// Runs the gcd / content / cyclotomic analysis on the product of the
/// jumping ideals over the window, specialized along `rho`.
pub fn fg_pipeline(c: &FreeComplex, window: (i64, i64), rho: &RhoSpec, opts: &FgOptions) -> Result<FgReport> {
    require_integers(c)?;
    check_window(c, window)?;
    check_primes(&opts.primes)?;
    rho.check_len(c.ring().nvars)?;
    let (cx, win) = if opts.dual {
        let s = c.lo() + c.hi();
        (c.dualize(), (s - window.1, s - window.0))
    } else {
        (c.clone(), window)
    };
    let obs = intersection_observables(&cx, win, opts.budget)?;
    let genericity = check_genericity(&obs.product, rho)?;
    if !genericity.passes() {
        return Err(Error::NonGenericRho(genericity.summary()));
    }
    let specialized = obs.product.specialize(&rho.alpha)?.canonical();
    let gens = specialized.gens().to_vec();
    let d = gens.len();
    let content = content_gcd_of_set(&specialized)?;
    let content_primes = prime_factors(&content);
    let gcd = univariate_gcd(&gens, CoeffRing::Rationals)?;
    let h_z = primitive_integer_rep(gcd.primitive.as_ref().expect("gcd over Q"))?;
    let h = h_z.to_laurent(0);
    let h_squarefree = squarefree_part(&h_z).to_laurent(0);

    // c* > 1 <=> generators vanish mod p <=> some H_i is not torsion over F_p
    let sc = cx.specialize(rho)?;
    let mut check_primes_list: Vec<u64> = opts.primes.clone();
    for &p in &content_primes {
        if !check_primes_list.contains(&p) && p < (1 << 32) {
            check_primes_list.push(p);
        }
    }
    check_primes_list.sort_unstable();
    let mut prime_agreement = Vec::new();
    for &p in &check_primes_list {
        let divides_content = content.is_multiple_of(&BigInt::from(p));
        let vanish = specialized.base_change(CoeffRing::PrimeField(p))?.is_zero();
        let torsion = field_torsion(&sc, CoeffRing::PrimeField(p), win)?.torsion;
        if !obs.truncated && (divides_content != vanish || vanish == torsion) {
            return Err(Error::Inconsistent(format!(
                "prime {p}: divides content {divides_content}, generators vanish {vanish}, torsion over F_p {torsion}"
            )));
        }
        prime_agreement.push(PrimeAgreement { prime: p, divides_content, generators_vanish_mod_p: vanish, torsion_over_fp: torsion });
    }

    let h_nonconstant = h_z.degree().is_some_and(|k| k > 0);
    let run_decider = || -> Result<DeciderReport> { Ok(DeciderReport::from_analysis(&unit_ends_analysis(&specialized)?)) };
    let (branch, cyclotomic, decider, verdict, diagnosis);
    if h_nonconstant || d == 1 {
        let cyc = is_cyclotomic_product(&h_squarefree)?;
        if cyc.is_product && content.is_one() {
            branch = Branch::PrincipalCyclotomic;
            verdict = Verdict::FgOverZ;
            decider = None;
            diagnosis = None;
        } else {
            branch = Branch::Inconclusive;
            let why = if content.is_one() {
                format!("h = {h} is not a product of cyclotomic polynomials")
            } else {
                format!("content gcd c* = {content} is not 1")
            };
            let rep = run_decider()?;
            if rep.quotient_fg {
                verdict = Verdict::Inconclusive;
                diagnosis = Some(format!("{why}; the exact decider finds a unit-ends element, so the quotient is finitely generated over Z although the cyclotomic criterion does not apply"));
            } else if obs.truncated {
                verdict = Verdict::Inconclusive;
                diagnosis = Some(format!("{why}; the product ideal was truncated by the budget, so the decider's refutation applies only to a sub-ideal"));
            } else {
                verdict = Verdict::NotFg;
                diagnosis = Some(format!("{why}; the exact decider finds no element with unit end coefficients"));
            }
            decider = Some(rep);
        }
        cyclotomic = Some(cyc);
    } else {
        branch = Branch::CoprimeCofinite;
        cyclotomic = None;
        let rep = run_decider()?;
        if rep.quotient_fg {
            verdict = Verdict::FgOverZ;
            diagnosis = None;
        } else if obs.truncated {
            verdict = Verdict::Inconclusive;
            diagnosis = Some("gcd is 1 but the quotient by the truncated product ideal is not finitely generated".into());
        } else {
            verdict = Verdict::NotFg;
            diagnosis = Some("gcd is 1 but the exact decider finds no element with unit end coefficients".into());
        }
        decider = Some(rep);
    }

    Ok(FgReport {
        window,
        rho: rho.clone(),
        dual: opts.dual,
        genericity_checked_against: if opts.dual { "involuted (dual complex) jumping ideals".into() } else { "jumping ideals".into() },
        genericity,
        jumping_ideals: obs.factors.iter().map(|f| f.gens().to_vec()).collect(),
        product_generators: obs.product.gens().to_vec(),
        product_truncated: obs.truncated,
        specialized_generators: gens,
        d,
        content_gcd: content.to_string(),
        content_primes,
        h,
        h_squarefree,
        cyclotomic,
        prime_agreement,
        branch,
        decider,
        verdict,
        diagnosis,
    })
}

/// Finite generation over `Z` of the cokernel of a one-variable integral
/// matrix (rows = generators), decided on its 0-th Fitting ideal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleFg {
    pub fitting_ideal: Vec<LaurentPoly>,
    pub fg_over_z: bool,
    pub decider: Option<DeciderReport>,
    pub reason: String,
}

pub fn module_fg_over_z(m: &PolyMatrix) -> Result<ModuleFg> {
    if m.ring().coeffs != CoeffRing::Integers || m.ring().nvars != 1 {
        return Err(Error::InvalidRing(format!("expected Z[t^±1], got {}", m.ring())));
    }
    let fitt = determinantal_ideal(m, m.rows());
    if fitt.is_zero() {
        return Ok(ModuleFg {
            fitting_ideal: vec![],
            fg_over_z: false,
            decider: None,
            reason: "Fitting ideal is zero: the module has positive rank".into(),
        });
    }
    let rep = DeciderReport::from_analysis(&unit_ends_analysis(&fitt)?);
    let fg = rep.quotient_fg;
    Ok(ModuleFg {
        fitting_ideal: fitt.gens().to_vec(),
        fg_over_z: fg,
        decider: Some(rep),
        reason: if fg { "Fitting ideal contains a unit-ends element".into() } else { "Fitting ideal contains no unit-ends element".into() },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeBetti {
    pub prime: u64,
    pub rank: usize,
    /// Rank over `F_p(t)` minus rank over `Q(t)`.
    pub excess: usize,
    /// `F_p(t)`-dimension of the `p`-torsion of `H_i` localized at `p`.
    pub p_torsion_rank: usize,
    pub infinite_p_torsion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NovikovDegree {
    pub degree: i64,
    pub b_rational: usize,
    pub primes: Vec<PrimeBetti>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NovikovReport {
    pub rho: RhoSpec,
    pub degrees: Vec<NovikovDegree>,
    pub flags: Vec<String>,
    pub caveat: String,
}

const NOVIKOV_CAVEAT: &str = "Over the local ring Z[t^±1] localized at (p), the rank over F_p(t) of H_i equals b_i + s_i + s_(i-1), where s_i counts the cyclic p-torsion summands of H_i. The flag reports s_i > 0, recovered by peeling the excesses from the bottom degree up. It detects p-torsion of infinite order over F_p; it does not compute Novikov torsion numbers.";

/// Ranks over `Q(t)` and `F_p(t)` of the specialized complex, with the p-torsion diagnostic.
pub fn novikov_betti(c: &FreeComplex, rho: &RhoSpec, primes: &[u64]) -> Result<NovikovReport> {
    require_integers(c)?;
    check_primes(primes)?;
    let s = c.specialize(rho)?;
    let sq = s.base_change(CoeffRing::Rationals)?;
    let b_q = c.degrees().map(|i| rank_fraction_field(&sq, i)).collect::<Result<Vec<_>>>()?;
    let mut per_prime: Vec<Vec<PrimeBetti>> = vec![Vec::new(); b_q.len()];
    let mut flags = Vec::new();
    for &p in primes {
        let sp = s.base_change(CoeffRing::PrimeField(p))?;
        let mut below = 0usize;
        for (k, i) in c.degrees().enumerate() {
            let rank = rank_fraction_field(&sp, i)?;
            let excess = rank.checked_sub(b_q[k]).ok_or_else(|| {
                Error::Inconsistent(format!("degree {i}: rank over F_{p}(t) {rank} is below the rank over Q(t) {}", b_q[k]))
            })?;
            let t = excess.checked_sub(below).ok_or_else(|| {
                Error::Inconsistent(format!("degree {i}, prime {p}: excess {excess} is below the p-torsion of degree {}", i - 1))
            })?;
            below = t;
            if t > 0 {
                flags.push(format!("infinite {p}-torsion detected in degree {i} (rank {t} over F_{p}(t))"));
            }
            per_prime[k].push(PrimeBetti { prime: p, rank, excess, p_torsion_rank: t, infinite_p_torsion: t > 0 });
        }
    }
    let degrees = c
        .degrees()
        .zip(b_q)
        .zip(per_prime)
        .map(|((degree, b_rational), primes)| NovikovDegree { degree, b_rational, primes })
        .collect();
    Ok(NovikovReport { rho: rho.clone(), degrees, flags, caveat: NOVIKOV_CAVEAT.into() })
}

/// True when some generator is nonzero; used by callers before specializing.
pub fn has_nonzero(ideal: &IdealGenerators) -> bool {
    ideal.gens().iter().any(|g| !g.is_zero())
}
