// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use qhvar::bc::{self, label_of, psi, psi_inverse, spread_line};
use qhvar::ff::{FiniteField, Fq, Fq2};
use qhvar::hypersurfaces::{base_matrix, det_closed_form, Hypersurface6};
use qhvar::linalg;
use qhvar::pg::{normalize, Space};
use qhvar::varieties::{BmParams, VarietySpec};
use qhvar::verify::{scan::IntersectionHistogram, two_character_scan, ScanOptions};

const SMALL_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn gf64() -> Fq2 {
    Fq2::for_q(8).unwrap()
}

#[test]
fn frobenius_is_an_involutive_automorphism_for_small_q() {
    for q in SMALL_Q {
        let f = Fq2::for_q(q).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(x)), x);
            assert_eq!(f.frobenius(x), f.pow(x, q as u64));
            for y in f.elements() {
                assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
                assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
            }
        }
    }
}

#[test]
fn trace_is_additive_and_norm_multiplicative_for_small_q() {
    for q in SMALL_Q {
        let f = Fq2::for_q(q).unwrap();
        let g = f.base();
        let mut norm_image = vec![0u32; q as usize];
        for x in f.elements() {
            assert!(f.in_base(f.trace(x)) && f.in_base(f.norm(x)));
            if x != 0 {
                norm_image[f.norm(x) as usize] += 1;
            }
            for y in f.elements() {
                assert_eq!(f.trace(f.add(x, y)), g.add(f.trace(x), f.trace(y)));
                assert_eq!(f.norm(f.mul(x, y)), g.mul(f.norm(x), f.norm(y)));
            }
        }
        // The norm maps GF(q²)* onto GF(q)* with fibres of size q + 1.
        assert!(norm_image[1..].iter().all(|&c| c == q + 1));
    }
}

#[test]
fn normalize_is_idempotent_and_scale_invariant_for_small_q() {
    for q in SMALL_Q {
        let g = Fq::with_order(q).unwrap();
        for i in 1..q.pow(3) {
            let v = [i % q, (i / q) % q, i / (q * q)];
            let p = normalize(&g, &v).unwrap();
            assert_eq!(normalize(&g, p.coords()).unwrap(), p);
            for l in 1..q {
                assert_eq!(normalize(&g, &v.map(|c| g.mul(l, c))).unwrap(), p);
            }
        }
    }
}

#[test]
fn spread_partitions_infinity_for_q_3_4_5_8() {
    for q in [3, 4, 5, 8] {
        let check = bc::spread_selftest(&Fq2::for_q(q).unwrap());
        assert!(check.pass(), "q = {q}: {check:?}");
        assert_eq!(check.lines, bc::spread_size(q as u64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn gf64_field_laws(x in 0u32..64, y in 0u32..64, z in 0u32..64) {
        let f = gf64();
        let g = f.base();
        prop_assert_eq!(f.frobenius(f.frobenius(x)), x);
        prop_assert_eq!(f.trace(f.add(x, y)), g.add(f.trace(x), f.trace(y)));
        prop_assert_eq!(f.norm(f.mul(x, y)), g.mul(f.norm(x), f.norm(y)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
    }

    #[test]
    fn gf64_normalize(v in prop::array::uniform4(0u32..64), l in 1u32..64) {
        let g = Fq::with_order(64).unwrap();
        match normalize(&g, &v) {
            Ok(p) => {
                prop_assert_eq!(normalize(&g, p.coords()).unwrap(), p.clone());
                prop_assert_eq!(normalize(&g, &v.map(|c| g.mul(l, c))).unwrap(), p);
            }
            Err(_) => prop_assert!(v.iter().all(|&c| c == 0)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn spread_lines_at_q8_are_disjoint(a in 0u64..299_593, b in 0u64..299_593) {
        let f = gf64();
        let space = Space::new(6, f.base()).unwrap();
        let inf = space.num_points_at_infinity();
        let (a, b) = (a % inf, b % inf);
        let (x, y) = (space.point_at(a), space.point_at(b));
        let (lx, ly) = (label_of(&f, x.coords()).unwrap(), label_of(&f, y.coords()).unwrap());
        let rx = spread_line(&f, lx.coords()).unwrap();
        prop_assert_eq!(rx.points().len(), 9);
        prop_assert!(rx.points().iter().any(|p| p[..] == *x.coords()));
        let shared = rx.points().iter().any(|p| p[..] == *y.coords());
        prop_assert_eq!(shared, lx == ly);
    }

    #[test]
    fn psi_round_trips(x in 0u32..64, y in 0u32..64, z in 0u32..64) {
        let f = gf64();
        let p = [1, x, y, z];
        let image = psi(&f, &p).unwrap();
        prop_assert_eq!(image[0], 1);
        prop_assert_eq!(psi_inverse(&f, &image).unwrap(), p);
    }

    #[test]
    fn bprime_is_a_cone_over_its_vertex(idx in 0u64..(3u64.pow(7) - 1) / 2, lambda in 0u32..3) {
        let f = Fq2::for_q(3).unwrap();
        let g = f.base();
        let bprime = Hypersurface6::bprime(&f, BmParams::default_for(&f));
        let p = Space::new(6, g).unwrap().point_at(idx);
        if bprime.member(&f, p.coords()) {
            let mut r: Vec<u32> = p.coords().to_vec();
            r[5] = g.add(r[5], lambda);
            if let Ok(r) = normalize(g, &r) {
                prop_assert!(bprime.member(&f, r.coords()));
            }
        }
    }
}

#[test]
fn base_determinant_matches_closed_form_and_elimination() {
    for q in [3, 4, 5, 7, 8] {
        let f = Fq2::for_q(q).unwrap();
        for bm in BmParams::all_valid(&f) {
            let m = base_matrix(&f, bm);
            assert_eq!(m.det_a, det_closed_form(&f, bm));
            assert_eq!(m.det_a, linalg::det(f.base(), &m.a));
        }
    }
}

#[test]
fn histograms_satisfy_double_counting() {
    for q in [2, 3, 4] {
        let f = Fq2::for_q(q).unwrap();
        let n = f.order() as u128;
        for spec in [VarietySpec::Mab(BmParams::default_for(&f)), VarietySpec::Bab(BmParams::default_for(&f))] {
            let t = two_character_scan(&f, &spec, &ScanOptions::full()).unwrap();
            let h: &IntersectionHistogram = &t.histogram;
            assert_eq!(h.total, n.pow(3) as u64 + n.pow(2) as u64 + n as u64 + 1);
            assert_eq!(h.counts.values().sum::<u64>(), h.total);
            assert_eq!(h.incidences(), t.variety_size as u128 * (n * n + n + 1));
        }
    }
}
