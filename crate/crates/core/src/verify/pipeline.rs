// SPDX-License-Identifier: Apache-2.0

//! End-to-end verification runs for BM and BT varieties.

use std::collections::BTreeSet;

use serde_json::json;

use super::*;
use crate::bc;
use crate::ff::{prime_power, FieldDescriptor, Fq};
use crate::hypersurfaces::{base_matrix, det_closed_form, quadric_sizes, union_of_lines_check};
use crate::varieties::{bm_validate, BmParams, BtParams};

/// Largest q for which PG(6,q) is enumerated point by point.
const MAX_PG6_ORDER: u32 = 9;

#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    /// `None` records the two-character claim as not run.
    pub scan: Option<ScanOptions>,
}

/// GF(q²) over GF(q) with optional modulus and δ overrides.
pub fn build_field(q: u32, delta: Option<u32>, modulus: Option<Vec<u32>>) -> Result<Fq2, VerifyError> {
    let (p, e) = prime_power(q).ok_or_else(|| VerifyError::Config(format!("{q} is not a prime power")))?;
    let base = Fq::new(FieldDescriptor::new(p, e, modulus)?);
    Ok(match delta {
        Some(d) => Fq2::with_delta(base, d)?,
        None => Fq2::new(base),
    })
}

fn labels_json(labels: &[ProjPoint]) -> Vec<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

fn as_set(labels: &[ProjPoint]) -> BTreeSet<ProjPoint> {
    labels.iter().cloned().collect()
}

/// Spread lines of `B'` for the parity and residue of q.
fn expected_bprime_labels(f: &Fq2) -> BTreeSet<ProjPoint> {
    let q = f.q();
    if !f.is_odd() {
        pencil(f, &[1])
    } else if q % 4 == 1 {
        let mu = sqrt_minus_one(f).expect("-1 is a square");
        debug_assert!(f.in_base(mu));
        pencil(f, &[mu, f.neg(mu)])
    } else {
        pencil(f, &[])
    }
}

fn scan_report(
    claim: &str,
    f: &Fq2,
    spec: &VarietySpec,
    params: &ReportParams,
    opts: &PipelineOptions,
) -> Result<VerificationReport, VerifyError> {
    let Some(scan) = &opts.scan else {
        return Ok(VerificationReport::not_run(claim, params, "no scan mode selected"));
    };
    let mut params = params.clone();
    match scan.mode {
        ScanMode::Full => params.mode = Some("full".into()),
        ScanMode::Sampled { n, seed } => {
            params.mode = Some(format!("sampled:{n}"));
            params.seed = Some(seed);
        }
    }
    VerificationReport::run(claim, &params, || {
        let t = two_character_scan(f, spec, scan)?;
        let pass = t.pass(f.order());
        Ok((
            pass,
            json!({ "histogram": t.histogram.counts, "hyperplanes": t.histogram.total, "variety_size": t.variety_size }),
            json!({ "sizes": t.expected_sizes }),
        ))
    })
}

/// The BM pipeline: parameters, two-character scan of `M_{a,b}`, the cone
/// `B'` and its base, the Q1–Q3 audit, spread-line containment, and the
/// partition of `F̄` when q is odd.
pub fn verify_bm(f: &Fq2, bm: BmParams, opts: &PipelineOptions) -> Result<Vec<VerificationReport>, VerifyError> {
    let params = ReportParams::for_field(f).with_ab(f, bm.a, bm.b);
    let q = f.q() as u64;
    let mut out = Vec::new();

    out.push(VerificationReport::run("bm-parameters", &params, || {
        let ok = bm.a != 0 && !f.in_base(bm.b) && bm_validate(f, bm);
        Ok((ok, json!({ "valid": ok }), json!({ "valid": true })))
    })?);
    if out[0].failed() {
        return Ok(out);
    }

    out.push(scan_report("two-character-mab", f, &VarietySpec::Mab(bm), &params, opts)?);

    let bprime = Hypersurface6::bprime(f, bm);
    if f.q() <= MAX_PG6_ORDER {
        out.push(VerificationReport::run("correspondence-bab", &params, || {
            let image = PointSet::from_coords(
                6,
                f.q(),
                VarietySpec::Bab(bm).points(f).iter().filter(|p| p[0] != 0).map(|p| bc::psi(f, &p).expect("affine")),
            );
            let affine = bprime.points(f).filter(|x| x[0] != 0);
            Ok((
                image == affine,
                json!({ "image": image.len(), "affine_bprime": affine.len() }),
                json!({ "size": q.pow(5) }),
            ))
        })?);
    } else {
        out.push(VerificationReport::not_run("correspondence-bab", &params, "PG(6,q) too large to enumerate"));
    }

    out.push(VerificationReport::run("base-quadric", &params, || {
        let m = base_matrix(f, bm);
        let closed = det_closed_form(f, bm);
        let c = hypersurfaces::classify_quadric(f.base(), &m.form);
        let plus = quadric_sizes(5, q).0;
        let pass = c.kind == QuadricType::Hyperbolic
            && c.cross_check == Some(QuadricType::Hyperbolic)
            && c.points == plus
            && m.det_a == closed;
        Ok((
            pass,
            json!({ "matrix": m.a, "det": m.det_a, "kind": c.kind, "points": c.points, "cross_check": c.cross_check }),
            json!({ "det": closed, "kind": QuadricType::Hyperbolic, "points": plus }),
        ))
    })?);

    out.push(VerificationReport::run("q1q2q3-audit", &params, || {
        let a = q1q2q3_audit(f, &bprime);
        let pass = a.triple() == (true, Some(true), false);
        Ok((
            pass,
            json!({ "q1": a.q1, "q2": a.q2, "q3": a.q3, "vertices": labels_json(&a.vertices) }),
            json!({ "q1": true, "q2": true, "q3": false }),
        ))
    })?);

    let expected_labels = expected_bprime_labels(f);
    let expected_lines = expected_labels.len() as u64;
    let lines_in_bprime = count_spread_lines_in(f, &bprime);
    out.push(VerificationReport::run("spread-lines-in-bprime", &params, || {
        let pass = as_set(&lines_in_bprime.labels) == expected_labels;
        Ok((pass, json!({ "count": lines_in_bprime.count }), json!({ "count": expected_lines })))
    })?);

    let b_contained = if f.is_odd() && q % 4 == 3 { 1 } else { expected_lines };
    for (claim, spec, contained) in [
        ("b-infinity-split", VarietySpec::Bab(bm), b_contained),
        ("m-infinity-split", VarietySpec::Mab(bm), expected_lines),
    ] {
        out.push(VerificationReport::run(claim, &params, || {
            let s = infinity_section(f, &spec)?;
            let split = containment_split(f, &s.labels, &bprime);
            let in_all = as_set(&split.contained).is_subset(&as_set(&lines_in_bprime.labels));
            let pass = s.pass() && split.contained.len() as u64 == contained && in_all;
            Ok((
                pass,
                json!({
                    "case": s.case,
                    "labels": s.labels.len(),
                    "contained": split.contained.len(),
                    "contained_labels": labels_json(&split.contained),
                }),
                json!({ "labels": s.expected_count, "contained": contained }),
            ))
        })?);
    }

    if f.is_odd() {
        out.push(VerificationReport::run("fbar-partition", &params, || {
            let s = infinity_section(f, &VarietySpec::Mab(bm))?;
            let fbar = Hypersurface6::Fbar.points(f);
            let p = partition_check(f, &s.labels, &fbar);
            let expected = (q.pow(3) + q * q + 1) * (q + 1);
            Ok((
                p.pass() && p.target_size == expected,
                json!({ "lines": p.lines, "disjoint": p.disjoint, "contained": p.contained, "union": p.union_size, "fbar": p.target_size }),
                json!({ "lines": q.pow(3) + q * q + 1, "fbar": expected }),
            ))
        })?);
    }
    Ok(out)
}

/// The BT pipeline: the gcd condition, two-character scan of `H³_ε`, the
/// hypersurface `C³_ε` as a union of lines, and spread-line containment for
/// the sections of `V³_ε` and `H³_ε`.
pub fn verify_bt(f: &Fq2, bt: BtParams, opts: &PipelineOptions) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut params = ReportParams::for_field(f);
    params.e = Some(bt.e);
    let q = f.q() as u64;
    let mut out = Vec::new();

    out.push(VerificationReport::run("gcd", &params, || {
        let g = gcd_check(bt.e)?;
        Ok((g == 1, json!({ "gcd": g }), json!({ "gcd": 1 })))
    })?);

    if opts.scan.is_some() && f.order() > scan::MAX_SCAN_ORDER {
        return Err(VerifyError::ResourceLimit(format!("hyperplane scan of PG(3,{}) requested", f.order())));
    }
    out.push(scan_report("two-character-heps", f, &VarietySpec::Heps(bt), &params, opts)?);

    let c3 = Hypersurface6::C3eps(bt);
    if f.q() <= MAX_PG6_ORDER {
        out.push(VerificationReport::run("correspondence-veps", &params, || {
            let image = PointSet::from_coords(
                6,
                f.q(),
                VarietySpec::Veps(bt).points(f).iter().filter(|p| p[0] != 0).map(|p| bc::psi(f, &p).expect("affine")),
            );
            let affine = c3.points(f).filter(|x| x[0] != 0);
            Ok((
                image == affine,
                json!({ "image": image.len(), "affine_c3": affine.len() }),
                json!({ "size": q.pow(5) }),
            ))
        })?);
        out.push(VerificationReport::run("union-of-lines", &params, || {
            let u = union_of_lines_check(f, bt);
            Ok((
                u.pass(),
                json!({ "c3": u.c3_size, "base": u.base_size, "union": u.union_size, "equal": u.equal }),
                json!({ "c3": u.expected_c3_size, "base": u.expected_base_size }),
            ))
        })?);
    } else {
        for claim in ["correspondence-veps", "union-of-lines"] {
            out.push(VerificationReport::not_run(claim, &params, "PG(6,q) too large to enumerate"));
        }
    }

    let expected_labels = pencil(f, &[1]);
    let lines_in_c3 = count_spread_lines_in(f, &c3);
    out.push(VerificationReport::run("spread-lines-in-c3", &params, || {
        let pass = as_set(&lines_in_c3.labels) == expected_labels;
        Ok((pass, json!({ "count": lines_in_c3.count }), json!({ "count": q * q + 1 })))
    })?);

    for (claim, spec) in [("v-infinity-split", VarietySpec::Veps(bt)), ("h-infinity-split", VarietySpec::Heps(bt))] {
        out.push(VerificationReport::run(claim, &params, || {
            let s = infinity_section(f, &spec)?;
            let split = containment_split(f, &s.labels, &c3);
            let pass = s.pass() && as_set(&split.contained) == expected_labels;
            Ok((
                pass,
                json!({ "case": s.case, "labels": s.labels.len(), "contained": split.contained.len() }),
                json!({ "labels": s.expected_count, "contained": q * q + 1 }),
            ))
        })?);
    }
    Ok(out)
}
