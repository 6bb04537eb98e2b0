//! Scripted check suites. Each suite returns a list of named checks;
//! a suite passes iff every check does.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{squarefree_monomial_ideals, CombinatoricsError, MonomialIdeal};
use crate::field::{primes_between, FieldDescriptor, FieldError};
use crate::groebner::Ideal;
use crate::hankel::{
    verify_independence_of_m, verify_primary_dec, verify_minor_membership, Characterization, HankelError,
    HankelSystem, Shape, SubmatrixRole,
};
use crate::knutson::{certify_family, closure, KnutsonError, KnutsonFamily, WitnessPolicy};
use crate::modp::{knutson_family_mod_p, prime_scan, ModpError};
use crate::poly::{parse_polynomial, Monomial, Ring, TermOrder};
use crate::report::{all_passed, Check, FamilyReport};

/// Largest `m` accepted by the Hankel suites unless raised explicitly.
pub const DEFAULT_MAX_M: usize = 4;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    BadParams(String),
    #[error("closure cap exceeded: {0}")]
    CapExceeded(String),
    #[error(transparent)]
    Hankel(HankelError),
    #[error(transparent)]
    Modp(ModpError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

impl From<KnutsonError> for SuiteError {
    fn from(e: KnutsonError) -> Self {
        match e {
            KnutsonError::ClosureCapExceeded { reason, .. } => SuiteError::CapExceeded(reason),
            other => SuiteError::Hankel(HankelError::Knutson(other)),
        }
    }
}

impl From<HankelError> for SuiteError {
    fn from(e: HankelError) -> Self {
        match e {
            HankelError::Knutson(k) => k.into(),
            other => SuiteError::Hankel(other),
        }
    }
}

impl From<ModpError> for SuiteError {
    fn from(e: ModpError) -> Self {
        match e {
            ModpError::Knutson(k) => k.into(),
            other => SuiteError::Modp(other),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    HankelSquare,
    HankelRect,
    Modp,
    SquarefreeMonomial,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] =
        [SuiteName::HankelSquare, SuiteName::HankelRect, SuiteName::Modp, SuiteName::SquarefreeMonomial];
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::HankelSquare => "hankel-square",
            SuiteName::HankelRect => "hankel-rect",
            SuiteName::Modp => "modp",
            SuiteName::SquarefreeMonomial => "squarefree-monomial",
        })
    }
}

impl FromStr for SuiteName {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        SuiteName::ALL.into_iter().find(|n| n.to_string() == s).ok_or_else(|| SuiteError::UnknownSuite(s.into()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteParams {
    /// Hankel size for the Hankel and modp suites.
    pub m: usize,
    /// Number of variables for the squarefree-monomial suite.
    pub n: usize,
    /// 0 for the rationals, otherwise a prime.
    pub characteristic: u64,
    /// Primes scanned by the modp suite.
    pub primes: Vec<u64>,
    pub max_m: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { m: 2, n: 3, characteristic: 0, primes: primes_between(2, 101), max_m: DEFAULT_MAX_M }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub params: SuiteParams,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub families: Vec<FamilyReport>,
    /// Family compared with the list of determinantal shapes, when
    /// applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characterization: Option<Characterization>,
}

pub fn run_suite(name: SuiteName, params: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport {
        suite: name,
        params: params.clone(),
        passed: false,
        checks: Vec::new(),
        families: Vec::new(),
        characterization: None,
    };
    match name {
        SuiteName::HankelSquare => hankel_suite(Shape::Square, params, &mut report)?,
        SuiteName::HankelRect => hankel_suite(Shape::Rect, params, &mut report)?,
        SuiteName::Modp => modp_suite(params, &mut report)?,
        SuiteName::SquarefreeMonomial => squarefree_suite(params, &mut report)?,
    }
    report.passed = all_passed(&report.checks);
    Ok(report)
}

fn guard_m(params: &SuiteParams) -> Result<(), SuiteError> {
    if params.m < 2 {
        return Err(SuiteError::BadParams(format!("m must be at least 2, got {}", params.m)));
    }
    if params.m > params.max_m {
        return Err(SuiteError::BadParams(format!(
            "m = {} exceeds the desk-scale limit {}; raise the limit explicitly to run it",
            params.m, params.max_m
        )));
    }
    Ok(())
}

/// Squarefreeness, union-basis and initial-ideal checks over a family,
/// plus an independent re-check of every member's reduced basis.
pub fn family_checks(family: &KnutsonFamily, label: &str) -> Result<(Vec<Check>, FamilyReport), SuiteError> {
    let cert = certify_family(family)?;
    let n = cert.members;
    let verified = family.members().iter().filter(|m| m.groebner().verify()).count();
    let checks = vec![
        Check::equal(
            format!("{label}: squarefree initial ideals"),
            "every member of the family has a squarefree initial ideal",
            n,
            cert.squarefree_initial,
        ),
        Check::equal(
            format!("{label}: union of reduced bases is a Gröbner basis"),
            "for members I, J the union of their reduced bases is a Gröbner basis of I + J",
            cert.pairs,
            cert.union_groebner,
        ),
        Check::equal(
            format!("{label}: lt(I ∩ J) = lt(I) ∩ lt(J)"),
            "initial ideals distribute over intersections of members",
            cert.pairs,
            cert.initial_of_intersection,
        ),
        Check::equal(
            format!("{label}: lt(I + J) = lt(I) + lt(J)"),
            "initial ideals distribute over sums of members",
            cert.pairs,
            cert.initial_of_sum,
        ),
        Check::equal(
            format!("{label}: distinct members have distinct initial ideals"),
            "a member is determined by its initial ideal",
            true,
            cert.distinct_initials,
        ),
        Check::equal(
            format!("{label}: reduced bases pass the Buchberger criterion"),
            "every S-polynomial of each reduced basis reduces to zero",
            n,
            verified,
        ),
    ];
    Ok((checks, FamilyReport::new(family, cert)))
}

fn hankel_suite(shape: Shape, params: &SuiteParams, report: &mut SuiteReport) -> Result<(), SuiteError> {
    guard_m(params)?;
    let field = FieldDescriptor::from_characteristic(params.characteristic)?;
    let sys = HankelSystem::new(params.m, shape, field, TermOrder::Lex)?;
    let spec = sys.spec();
    let checks = &mut report.checks;

    let seed = sys.seed()?;
    let all_vars = Monomial::new(vec![1; spec.n]);
    checks.push(Check::equal(
        "leading monomial of the seed",
        "the seed leads with the product of all variables under a diagonal order",
        all_vars.to_string(),
        seed.leading_monomial().map(|m| m.to_string()).unwrap_or_default(),
    ));

    let family = sys.family()?;
    let membership = verify_minor_membership(&sys, &family)?;
    for e in &membership.memberships {
        let claimed = e.name.ends_with("(X)");
        checks.push(Check::new(
            format!("{} is a member", e.name),
            if claimed {
                "every determinantal ideal I_t(X) belongs to the family of the seed"
            } else {
                "determinantal ideals of P1, P2, Q arise while building the family"
            },
            "member",
            e.index.map_or_else(|| "absent".to_string(), |i| format!("member #{i}")),
            e.member,
        ));
    }
    if shape == Shape::Square {
        let ch = &membership.characterization;
        checks.push(Check::equal(
            "shape-list ideals missing from the family",
            "the family consists of the six determinantal shapes",
            "none".to_string(),
            list_or_none(&ch.missing),
        ));
        checks.push(Check::equal(
            "family members outside the shape list",
            "the family consists of the six determinantal shapes, apart from the seed and the unit ideal",
            list_or_none(&[ch.unit_key.clone(), ch.seed_key.clone()].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>()),
            list_or_none(&ch.extra),
        ));
    }
    report.characterization = Some(membership.characterization.clone());

    let (fc, fr) = family_checks(&family, &format!("{shape} m={}", params.m))?;
    checks.extend(fc);
    report.families.push(fr);

    for t in 1..=spec.m {
        checks.extend(sys.closed_form_checks(SubmatrixRole::X, t)?);
        if t < spec.m {
            let same = verify_independence_of_m(t, spec.n, t, spec.m, field, sys.order())?;
            checks.push(Check::equal(
                format!("I_{t}(X_{}) = I_{t}(X_{t}) in {} variables", spec.m, spec.n),
                "the ideal of t-minors does not depend on the number of rows",
                true,
                same,
            ));
        }
    }
    if shape == Shape::Square {
        for t in 2..=spec.m {
            checks.extend(verify_primary_dec(&sys, t)?.checks);
        }
    }
    Ok(())
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join("; ")
    }
}

fn modp_suite(params: &SuiteParams, report: &mut SuiteReport) -> Result<(), SuiteError> {
    guard_m(params)?;
    let lex = TermOrder::Lex;

    let r2 = Ring::new(FieldDescriptor::RATIONALS, 2);
    let linear = Ideal::principal(parse_polynomial("2*x1 - x2", r2, &lex).expect("fixed text"));
    let small = primes_between(2, 50);
    let bad: Vec<String> =
        prime_scan(&linear, &small, &lex)?.iter().filter(|r| !r.matches).map(|r| r.prime.to_string()).collect();
    report.checks.push(Check::equal(
        "bad primes of (2*x1 - x2) up to 50",
        "initial ideals commute with reduction mod p for all but finitely many p",
        "2".to_string(),
        bad.join(", "),
    ));

    for shape in [Shape::Square, Shape::Rect] {
        let sys = HankelSystem::new(params.m, shape, FieldDescriptor::RATIONALS, lex.clone())?;
        let family = sys.family()?;
        let mut mismatches = Vec::new();
        for m in family.members() {
            for r in prime_scan(m.ideal(), &params.primes, &lex)? {
                if !r.matches {
                    mismatches.push(format!("{} mod {}", m.key(), r.prime));
                }
            }
        }
        let label = format!("{shape} m={}", params.m);
        report.checks.push(Check::equal(
            format!("{label}: members whose initial ideal changes mod p"),
            "initial ideals of Hankel family members commute with reduction mod p",
            "none".to_string(),
            list_or_none(&mismatches),
        ));

        let p = params.primes.iter().copied().max().unwrap_or(101);
        let fp = knutson_family_mod_p(&sys.seed()?, p, &sys.witness_policy()?, &lex)?;
        report.checks.push(Check::equal(
            format!("{label}: family size over GF({p})"),
            "reduction mod p maps the family onto the family of the reduced seed",
            family.len(),
            fp.len(),
        ));
        let reduced_keys: BTreeSet<String> = family
            .members()
            .iter()
            .map(|m| {
                let form = crate::modp::integral_form(m.ideal())?;
                let r = crate::modp::reduce_ideal(&form, p)?;
                Ok(r.groebner(&lex).map_err(ModpError::from)?.key())
            })
            .collect::<Result<_, SuiteError>>()?;
        let fp_keys: BTreeSet<String> = fp.keys().into_iter().collect();
        report.checks.push(Check::equal(
            format!("{label}: reductions of members are the members over GF({p})"),
            "reduction mod p maps the family onto the family of the reduced seed",
            true,
            reduced_keys == fp_keys,
        ));
        let (fc, fr) = family_checks(&fp, &format!("{label} over GF({p})"))?;
        report.checks.extend(fc);
        report.families.push(fr);
    }
    Ok(())
}

fn squarefree_suite(params: &SuiteParams, report: &mut SuiteReport) -> Result<(), SuiteError> {
    let n = params.n;
    if n == 0 || n > 5 {
        return Err(SuiteError::BadParams(format!("n must be between 1 and 5, got {n}")));
    }
    let field = FieldDescriptor::from_characteristic(params.characteristic)?;
    let ring = Ring::new(field, n);
    let lex = TermOrder::Lex;
    let oracle: BTreeSet<String> = squarefree_monomial_ideals(n)?.iter().map(MonomialIdeal::to_string).collect();

    let f = crate::poly::Polynomial::monomial(ring, lex.clone(), field.one(), Monomial::new(vec![1; n]));
    let family = closure(&f, &WitnessPolicy::default(), &lex)?;
    let computed: BTreeSet<String> = family
        .members()
        .iter()
        .map(|m| {
            if m.groebner().basis().iter().all(|g| g.len() == 1) {
                m.initial_ideal().to_string()
            } else {
                format!("non-monomial {}", m.key())
            }
        })
        .collect();
    report.checks.push(Check::equal(
        format!("number of members for n={n}"),
        "the family of a product of all variables is every squarefree monomial ideal",
        oracle.len(),
        family.len(),
    ));
    report.checks.push(Check::equal(
        format!("members equal the squarefree monomial ideals for n={n}"),
        "the family of a product of all variables is every squarefree monomial ideal",
        list_or_none(&oracle.iter().cloned().collect::<Vec<_>>()),
        list_or_none(&computed.iter().cloned().collect::<Vec<_>>()),
    ));
    let (fc, fr) = family_checks(&family, &format!("x1*...*x{n}"))?;
    report.checks.extend(fc);
    report.families.push(fr);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_refuses_large_m() {
        let params = SuiteParams { m: 99, ..Default::default() };
        assert!(matches!(run_suite(SuiteName::HankelSquare, &params), Err(SuiteError::BadParams(_))));
    }

    #[test]
    fn names_round_trip() {
        for s in SuiteName::ALL {
            assert_eq!(s.to_string().parse::<SuiteName>().unwrap(), s);
        }
        assert!("hankel".parse::<SuiteName>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for name in SuiteName::ALL {
            let report = run_suite(name, &SuiteParams::default()).unwrap();
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
            assert!(report.passed, "{name}: {failed:#?}");
        }
    }
}
