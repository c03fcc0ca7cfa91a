//! Dispatch of job documents to the library, producing JSON results.

use pairstab::arc::{arc_norm, arcs_equivalent, check_arc, Arc};
use pairstab::group::GroupKind;
use pairstab::kstab::{
    df_invariant, model_norm, toric_df_report, toric_hilb, toric_minnorm, toric_uniform_search,
    HilbCoeffs, ModelNumbers, PLFunction, UniformVerdict,
};
use pairstab::locus::{
    degeneration_locus, family_unstable_locus, graph_ideal, orbit_closure, orbit_map_closure,
    point_degenerates, ActionProblem, PairFamily,
};
use pairstab::pairs::{
    check_certificate, classify_binary_form, dr_stable_at, sample_falsifier, torus_semistable,
    torus_stable_at, Certificate, ConvexWitness, Pair, Status, Verdict,
};
use pairstab::sampling::ArcSampler;
use pairstab_algebra::{
    satisfies_buchberger_criterion, Budget, Ideal, MonomialOrder, MultiPoly, Rational, Ring, Valuation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::*;

fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn valuation(v: Valuation) -> Value {
    match v {
        Valuation::Finite(n) => json!(n),
        Valuation::Infinity => json!("infinity"),
    }
}

fn ideal_json(i: &Ideal) -> Value {
    json!(i.generator_strings())
}

pub fn status_parts(s: Status) -> (&'static str, Option<u32>) {
    match s {
        Status::Semistable => ("semistable", None),
        Status::Unstable => ("unstable", None),
        Status::StableAt(l) => ("stable", Some(l)),
        Status::NotStableAt(l) => ("not_stable", Some(l)),
        Status::Unknown => ("unknown", None),
    }
}

fn parse_status(name: &str, level: Option<u32>) -> Result<Status> {
    let need = || CliError::input(format!("status '{name}' needs a level"));
    Ok(match name {
        "semistable" => Status::Semistable,
        "unstable" => Status::Unstable,
        "stable" => Status::StableAt(level.ok_or_else(need)?),
        "not_stable" => Status::NotStableAt(level.ok_or_else(need)?),
        "unknown" => Status::Unknown,
        other => return Err(CliError::input(format!("unknown status '{other}'"))),
    })
}

pub fn certificate_spec(c: &Certificate) -> CertificateSpec {
    match c {
        Certificate::Vacuous => CertificateSpec::Vacuous,
        Certificate::Containment(ws) => CertificateSpec::Containment {
            witnesses: ws
                .iter()
                .map(|w| WitnessSpec {
                    point: w.point.clone(),
                    combination: w
                        .combination
                        .iter()
                        .map(|(v, l)| TermSpec {
                            vertex: v.clone(),
                            coefficient: Q(l.clone()),
                        })
                        .collect(),
                })
                .collect(),
        },
        Certificate::Destabilizing { exponents, mu } => CertificateSpec::Destabilizing {
            exponents: exponents.clone(),
            mu: *mu,
        },
        Certificate::NormViolation {
            exponents,
            mu,
            norm,
            level,
        } => CertificateSpec::NormViolation {
            exponents: exponents.clone(),
            mu: *mu,
            norm: *norm,
            level: *level,
        },
        Certificate::Cones(n) => CertificateSpec::Cones { count: *n },
        Certificate::Arc { arc, mu } => CertificateSpec::Arc {
            arc: arc.to_strings(),
            mu: *mu,
        },
    }
}

fn certificate_from_spec(c: &CertificateSpec) -> Result<Certificate> {
    Ok(match c {
        CertificateSpec::Vacuous => Certificate::Vacuous,
        CertificateSpec::Containment { witnesses } => Certificate::Containment(
            witnesses
                .iter()
                .map(|w| ConvexWitness {
                    point: w.point.clone(),
                    combination: w
                        .combination
                        .iter()
                        .map(|t| (t.vertex.clone(), t.coefficient.0.clone()))
                        .collect(),
                })
                .collect(),
        ),
        CertificateSpec::Destabilizing { exponents, mu } => Certificate::Destabilizing {
            exponents: exponents.clone(),
            mu: *mu,
        },
        CertificateSpec::NormViolation {
            exponents,
            mu,
            norm,
            level,
        } => Certificate::NormViolation {
            exponents: exponents.clone(),
            mu: *mu,
            norm: *norm,
            level: *level,
        },
        CertificateSpec::Cones { count } => Certificate::Cones(*count),
        CertificateSpec::Arc { arc, mu } => Certificate::Arc {
            arc: Arc::parse(arc)?,
            mu: *mu,
        },
    })
}

pub fn verdict_spec(v: &Verdict) -> VerdictSpec {
    let (status, level) = status_parts(v.status);
    VerdictSpec {
        status: status.to_string(),
        level,
        certificate: certificate_spec(&v.certificate),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    serde_json::to_value(verdict_spec(v)).expect("serializable")
}

fn verification(kind: JobKind, payload: impl serde::Serialize) -> Value {
    serde_json::to_value(JobDocument::new(
        kind,
        serde_json::to_value(payload).expect("serializable"),
    ))
    .expect("serializable")
}

fn check_claim(pair: &Pair, claim: &VerdictSpec) -> Result<Value> {
    let verdict = Verdict {
        status: parse_status(&claim.status, claim.level)?,
        certificate: certificate_from_spec(&claim.certificate)?,
    };
    Ok(json!({ "certificate_valid": check_certificate(pair, &verdict)? }))
}

/// Runs one job and returns its `result` object.
pub fn dispatch(job: &JobDocument, seed: u64, budget: &mut Budget) -> Result<Value> {
    match job.kind {
        JobKind::AlgebraGroebner => groebner(job.payload()?, budget),
        JobKind::ArcsWeight => arcs_weight(job.payload()?, seed),
        JobKind::ArcsEquiv => {
            let p: ArcsEquivPayload = job.payload()?;
            let equivalent = arcs_equivalent(&Arc::parse(&p.arc)?, &Arc::parse(&p.other)?)?;
            Ok(json!({ "equivalent": equivalent }))
        }
        JobKind::PairsCheck => pairs_check(job.payload()?, budget),
        JobKind::PairsStable => pairs_stable(job.payload()?, budget),
        JobKind::PairsFalsify => pairs_falsify(job.payload()?, seed),
        JobKind::LocusMap => {
            let p: LocusMapPayload = job.payload()?;
            let prob = build_problem(&p.problem, budget)?;
            let z = orbit_map_closure(&prob, budget)?;
            Ok(json!({
                "graph": ideal_json(&graph_ideal(&prob)?),
                "z": ideal_json(&z),
                "z_ring": z.ring().vars(),
            }))
        }
        JobKind::LocusDegeneration => {
            let p: LocusDegenerationPayload = job.payload()?;
            let prob = build_problem(&p.problem, budget)?;
            let probes: Vec<Vec<Rational>> = p.probes.iter().map(|v| rationals(v)).collect();
            let report = degeneration_locus(&prob, &probes, budget)?;
            Ok(json!({
                "locus": ideal_json(&report.locus),
                "overapproximation": report.overapproximation,
                "sound": report.sound,
                "probes": report.probes.iter().map(|r| json!({
                    "point": qs(&r.point),
                    "degenerates": r.degenerates,
                    "in_locus": r.in_locus,
                })).collect::<Vec<_>>(),
            }))
        }
        JobKind::LocusOracle => {
            let p: LocusOraclePayload = job.payload()?;
            let prob = build_problem(&p.problem, budget)?;
            let point = rationals(&p.point);
            Ok(json!({
                "degenerates": point_degenerates(&prob, &point, budget)?,
                "orbit_closure": ideal_json(&orbit_closure(&prob, &point, budget)?),
            }))
        }
        JobKind::LocusFamily => locus_family(job.payload()?, seed, budget),
        JobKind::ToricHilb => {
            let p: ToricHilbPayload = job.payload()?;
            let poly = build_polytope(&p.polytope)?;
            let h = toric_hilb(&poly);
            Ok(json!({
                "a0": q(&h.a0),
                "a1": q(&h.a1),
                "volume": q(&poly.volume()),
                "boundary_measure": q(&poly.boundary_measure()),
                "vertices": poly.vertices().iter().map(|v| qs(v)).collect::<Vec<_>>(),
            }))
        }
        JobKind::ToricDf => {
            let p: ToricFunctionPayload = job.payload()?;
            let r = toric_df_report(&build_polytope(&p.polytope)?, &build_function(&p.function)?)?;
            Ok(json!({
                "df": q(&r.df),
                "b0": q(&r.b0),
                "b1": q(&r.b1),
                "a0": q(&r.hilb.a0),
                "a1": q(&r.hilb.a1),
                "integral": q(&r.integral),
                "boundary_integral": q(&r.boundary_integral),
                "volume": q(&r.volume),
                "boundary_measure": q(&r.boundary_measure),
            }))
        }
        JobKind::ToricNorm => {
            let p: ToricFunctionPayload = job.payload()?;
            let poly = build_polytope(&p.polytope)?;
            let f = build_function(&p.function)?;
            Ok(json!({
                "minnorm": q(&toric_minnorm(&poly, &f)?),
                "integral": q(&f.integral(&poly)?),
                "minimum": q(&f.minimum(&poly)?),
                "volume": q(&poly.volume()),
            }))
        }
        JobKind::ToricUniform => toric_uniform(job.payload()?, budget),
        JobKind::ModelDf => {
            let p: ModelDfPayload = job.payload()?;
            let a = HilbCoeffs {
                a0: p.a0.0,
                a1: p.a1.0,
            };
            let b = ModelNumbers::from_weights(p.b0.0, p.b1.0);
            Ok(json!({ "df": q(&df_invariant(&a, &b)?) }))
        }
        JobKind::ModelNorm => {
            let p: ModelNormPayload = job.payload()?;
            let zero = Rational::from_integer(0.into());
            let b = ModelNumbers {
                b0: p.b0.map_or(zero.clone(), |x| x.0),
                b1: p.b1.map_or(zero, |x| x.0),
                r: p.r.0,
                n: p.n,
                l_mix: p.l_mix.map(|x| x.0),
                l_top: p.l_top.map(|x| x.0),
                l_n: p.l_n.map(|x| x.0),
            };
            Ok(json!({ "norm": q(&model_norm(&b)?) }))
        }
    }
}

fn groebner(p: GroebnerPayload, budget: &mut Budget) -> Result<Value> {
    let ring = Ring::new(p.vars.iter().cloned())?;
    let ideal = Ideal::parse(&ring, &p.generators)?;
    let order = match p.order.as_deref() {
        None | Some("grevlex") => MonomialOrder::GrevLex,
        Some("lex") => MonomialOrder::Lex,
        Some(other) => return Err(CliError::input(format!("unknown monomial order '{other}'"))),
    };
    let basis = ideal.groebner(order, budget)?;
    let mut out = json!({
        "basis": ideal_json(&basis),
        "buchberger_criterion": satisfies_buchberger_criterion(basis.generators(), &order),
        "is_unit": basis.is_unit(budget)?,
    });
    if let Some(names) = &p.eliminate {
        let e = ideal.eliminate(names, budget)?;
        out["elimination"] = json!({
            "ring": e.ring().vars(),
            "basis": ideal_json(&e),
            "buchberger_criterion": satisfies_buchberger_criterion(e.generators(), &MonomialOrder::GrevLex),
        });
    }
    if let Some(f) = &p.saturate {
        let f = MultiPoly::parse(f, &ring)?;
        let s = ideal.saturate(&f, budget)?;
        let again = s.saturate(&f, budget)?;
        out["saturation"] = json!({
            "basis": ideal_json(&s),
            "idempotent": s.equals(&again, budget)?,
            "buchberger_criterion": satisfies_buchberger_criterion(s.generators(), &MonomialOrder::GrevLex),
        });
    }
    if let Some(f) = &p.member {
        let f = MultiPoly::parse(f, &ring)?;
        out["member"] = json!(ideal.member(&f, budget)?);
    }
    Ok(out)
}

fn arcs_weight(p: ArcsWeightPayload, seed: u64) -> Result<Value> {
    let pair = p.pair.build()?;
    let mut out = json!({});
    if let Some(rows) = &p.arc {
        let rho = Arc::parse(rows)?;
        let in_group = check_arc(pair.group(), &rho)?;
        let mu = pair.mu(&rho)?;
        out["in_group"] = json!(in_group);
        out["mu"] = valuation(mu);
        out["norm"] = match arc_norm(pair.v_rep(), pair.v(), &rho) {
            Ok(n) => json!(n),
            Err(_) => Value::Null,
        };
        if let Some(claimed) = p.claimed_mu {
            out["certificate_valid"] = json!(in_group && mu == Valuation::Finite(claimed));
        }
    }
    if let Some(sample) = &p.sample {
        let mut sampler = ArcSampler::new(seed);
        let m = pair.group().size();
        match sample.family {
            SampleFamily::TorusUnits => {
                if !pair.group().is_torus() {
                    return Err(CliError::input("torus_units sampling needs a torus group"));
                }
                let mut matches = 0u32;
                for _ in 0..sample.count {
                    let (arc, a) = sampler.unit_perturbed_torus_arc(m);
                    if pair.mu(&arc)? == pair.mu(&Arc::one_parameter(&a))? {
                        matches += 1;
                    }
                }
                out["sample"] = json!({
                    "samples": sample.count,
                    "matches": matches,
                    "all_match": matches == sample.count,
                });
            }
            SampleFamily::Mixed => {
                if let GroupKind::Custom(_) = pair.group().kind() {
                    return Err(CliError::input("mixed sampling needs a torus, SL or GL group"));
                }
                let identity = Arc::identity(m);
                let (mut nonneg, mut equivalent, mut zero_on_equivalent) = (0u32, 0u32, 0u32);
                for i in 0..sample.count {
                    let arc = if i % 4 == 3 {
                        sampler.integral_unit(m)
                    } else {
                        sampler.arc_for(pair.group())?
                    };
                    let norm = arc_norm(pair.v_rep(), pair.v(), &arc)?;
                    nonneg += u32::from(norm >= 0);
                    if arcs_equivalent(&arc, &identity)? {
                        equivalent += 1;
                        zero_on_equivalent += u32::from(norm == 0);
                    }
                }
                out["sample"] = json!({
                    "samples": sample.count,
                    "norm_nonnegative": nonneg,
                    "identity_equivalent": equivalent,
                    "identity_norm_zero": zero_on_equivalent,
                    "all_hold": nonneg == sample.count && zero_on_equivalent == equivalent,
                });
            }
        }
    }
    if p.arc.is_none() && p.sample.is_none() {
        return Err(CliError::input("arcs.weight needs an arc or a sample block"));
    }
    Ok(out)
}

fn pairs_check(p: PairsCheckPayload, budget: &mut Budget) -> Result<Value> {
    match (&p.pair, &p.binary_form, &p.claim) {
        (Some(spec), None, Some(claim)) => check_claim(&spec.build()?, claim),
        (Some(spec), None, None) => {
            let pair = spec.build()?;
            let v = torus_semistable(&pair, budget)?;
            let claim = PairsCheckPayload {
                pair: Some(spec.clone()),
                binary_form: None,
                claim: Some(verdict_spec(&v)),
            };
            Ok(json!({
                "status": status_parts(v.status).0,
                "certificate": verdict_json(&v)["certificate"],
                "verifications": [verification(JobKind::PairsCheck, claim)],
            }))
        }
        (None, Some(coeffs), None) => {
            let coeffs = rationals(coeffs);
            let r = classify_binary_form(&coeffs, budget)?;
            let mut verifications = Vec::new();
            let destabilizer = match &r.destabilizer {
                Some((arc, mu)) => {
                    let payload = ArcsWeightPayload {
                        pair: PairSpec {
                            group: GroupSpec::Label("SL(2)".into()),
                            v_rep: RepSpec::Sym(coeffs.len() as u32 - 1),
                            w_rep: RepSpec::Trivial,
                            v: coeffs.iter().cloned().map(Q).collect(),
                            w: vec![Q(Rational::from_integer(1.into()))],
                        },
                        arc: Some(arc.to_strings()),
                        claimed_mu: Some(*mu),
                        sample: None,
                    };
                    verifications.push(verification(JobKind::ArcsWeight, payload));
                    json!({ "arc": arc.to_strings(), "mu": mu })
                }
                None => Value::Null,
            };
            Ok(json!({
                "status": status_parts(r.status).0,
                "destabilizer": destabilizer,
                "probes": r.probes.iter().map(|pr| json!({
                    "alpha": q(&pr.alpha),
                    "translated": qs(&pr.translated),
                    "status": status_parts(pr.verdict.status).0,
                    "certificate": verdict_json(&pr.verdict)["certificate"],
                })).collect::<Vec<_>>(),
                "verifications": verifications,
            }))
        }
        _ => Err(CliError::input(
            "pairs.check needs either a pair (optionally with a claim) or a binary_form",
        )),
    }
}

fn pairs_stable(p: PairsStablePayload, budget: &mut Budget) -> Result<Value> {
    let pair = p.pair.build()?;
    if let Some(claim) = &p.claim {
        return check_claim(&pair, claim);
    }
    let levels: Vec<u32> = match (p.level, p.max_level) {
        (Some(l), None) => vec![l],
        (None, Some(m)) => (1..=m).collect(),
        _ => return Err(CliError::input("pairs.stable needs exactly one of level and max_level")),
    };
    if levels.contains(&0) {
        return Err(CliError::input("levels start at 1"));
    }
    let mut rows = Vec::new();
    let mut verifications = Vec::new();
    let mut hierarchy = true;
    let mut least_assoc = None;
    let mut least_norm = None;
    for &l in &levels {
        let mut row = json!({ "level": l });
        let assoc = match p.check {
            CheckSpec::Norm => None,
            _ => Some(torus_stable_at(&pair, l, budget)?),
        };
        let norm = match p.check {
            CheckSpec::Associated => None,
            _ => Some(dr_stable_at(&pair, l, budget)?),
        };
        for (key, v) in [("associated", &assoc), ("norm", &norm)] {
            if let Some(v) = v {
                row[key] = verdict_json(v);
                let claim = PairsStablePayload {
                    pair: p.pair.clone(),
                    level: None,
                    max_level: None,
                    check: p.check,
                    claim: Some(verdict_spec(v)),
                };
                verifications.push(verification(JobKind::PairsStable, claim));
            }
        }
        let stable = |v: &Option<Verdict>| v.as_ref().map(|v| v.status == Status::StableAt(l));
        if let (Some(a), Some(n)) = (stable(&assoc), stable(&norm)) {
            hierarchy &= !n || a;
        }
        if stable(&assoc) == Some(true) && least_assoc.is_none() {
            least_assoc = Some(l);
        }
        if stable(&norm) == Some(true) && least_norm.is_none() {
            least_norm = Some(l);
        }
        rows.push(row);
    }
    Ok(json!({
        "levels": rows,
        "least_level": { "associated": least_assoc, "norm": least_norm },
        "hierarchy_holds": hierarchy,
        "verifications": verifications,
    }))
}

fn pairs_falsify(p: PairsFalsifyPayload, seed: u64) -> Result<Value> {
    let pair = p.pair.build()?;
    match sample_falsifier(&pair, p.draws, seed)? {
        None => Ok(json!({ "found": false, "draws": p.draws })),
        Some(hit) => {
            let claim = PairsCheckPayload {
                pair: Some(p.pair.clone()),
                binary_form: None,
                claim: Some(VerdictSpec {
                    status: "unstable".into(),
                    level: None,
                    certificate: CertificateSpec::Arc {
                        arc: hit.arc.to_strings(),
                        mu: hit.mu,
                    },
                }),
            };
            Ok(json!({
                "found": true,
                "draws": p.draws,
                "draw": hit.draw,
                "arc": hit.arc.to_strings(),
                "mu": hit.mu,
                "verifications": [verification(JobKind::PairsCheck, claim)],
            }))
        }
    }
}

fn build_problem(spec: &ProblemSpec, budget: &mut Budget) -> Result<ActionProblem> {
    let group = spec.group.build()?;
    let ring = Ring::new(spec.coords.iter().cloned())?;
    let y = Ideal::parse(&ring, &spec.y)?;
    let w = Ideal::parse(&ring, &spec.w_hat)?.sum(&y)?;
    let rep = spec.action.build(&group)?;
    Ok(ActionProblem::with_representation(group, ring, y, w, &rep, spec.projective, budget)?)
}

fn locus_family(p: LocusFamilyPayload, seed: u64, budget: &mut Budget) -> Result<Value> {
    let group = p.group.build()?;
    let base = Ring::new(p.base.iter().cloned())?;
    let fam = PairFamily::new(
        group.clone(),
        p.v_rep.build(&group)?,
        p.w_rep.build(&group)?,
        base.clone(),
        parse_polys(&base, &p.v)?,
        parse_polys(&base, &p.w)?,
    )?;
    let locus = family_unstable_locus(&fam, budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agree, mut undefined) = (0usize, 0usize);
    for _ in 0..p.check_points {
        let point: Vec<Rational> = (0..base.len())
            .map(|_| Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into()))
            .collect();
        match fam.fiber_unstable(&point, budget)? {
            None => undefined += 1,
            Some(u) => agree += usize::from(u == locus.contains(&point)),
        }
    }
    Ok(json!({
        "pieces": locus.pieces.iter().map(|pc| json!({
            "ideal": ideal_json(&pc.ideal),
            "excluded": pc.excluded.as_ref().map(ToString::to_string),
        })).collect::<Vec<_>>(),
        "checks": {
            "points": p.check_points,
            "agree": agree,
            "undefined": undefined,
            "all_agree": agree + undefined == p.check_points,
        },
    }))
}

fn is_affine(f: &PLFunction) -> bool {
    f.pieces().len() == 1
}

fn toric_uniform(p: ToricUniformPayload, budget: &mut Budget) -> Result<Value> {
    let poly = build_polytope(&p.polytope)?;
    let eps = &p.epsilon.0;
    if let Some(claim) = &p.claim {
        let f = build_function(&claim.function)?;
        let r = toric_df_report(&poly, &f)?;
        let m = toric_minnorm(&poly, &f)?;
        let fails = &r.df - eps * &m < Rational::from_integer(0.into());
        let claimed_fails = match claim.verdict.as_str() {
            "fails" => true,
            "holds" => false,
            other => return Err(CliError::input(format!("unknown verdict '{other}'"))),
        };
        let positive = m > Rational::from_integer(0.into());
        return Ok(json!({
            "certificate_valid": positive && fails == claimed_fails,
            "df": q(&r.df),
            "minnorm": q(&m),
        }));
    }
    let creases: Vec<_> = p.creases.iter().map(CreaseSpec::build).collect();
    let r = toric_uniform_search(&poly, &creases, eps, budget)?;
    let verdict = match r.verdict {
        UniformVerdict::HoldsOnFamily => "holds",
        UniformVerdict::FailsAtEpsilon => "fails",
    };
    let claim = ToricUniformPayload {
        polytope: p.polytope.clone(),
        creases: p.creases.clone(),
        epsilon: p.epsilon.clone(),
        claim: Some(UniformClaim {
            verdict: verdict.into(),
            function: function_spec(&r.function),
        }),
    };
    Ok(json!({
        "verdict": verdict,
        "function": serde_json::to_value(function_spec(&r.function))?,
        "function_text": r.function.to_string(),
        "affine": is_affine(&r.function),
        "df": q(&r.df),
        "minnorm": q(&r.minnorm),
        "min_objective": r.min_objective.as_ref().map(q),
        "cases": r.cases.iter().map(|(pt, v)| json!({
            "point": qs(pt),
            "value": v.as_ref().map(q),
        })).collect::<Vec<_>>(),
        "verifications": [verification(JobKind::ToricUniform, claim)],
    }))
}
