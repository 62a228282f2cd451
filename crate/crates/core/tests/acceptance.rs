//! Acceptance suite: every criterion below prints one PASS/FAIL line (run
//! with `cargo test --test acceptance -- --nocapture` to see them). Each
//! criterion is exact; there are no tolerances.

use drinfeld_core::brandt::{
    brandt_matrix, check_commuting, check_row_sums, BrandtContext, BrandtMatrix,
};
use drinfeld_core::codes::{
    bad_elements, build_semifield_code, good_hyperplanes, hyperplane_basis, search_zero_entry,
    CodeProvenance,
};
use drinfeld_core::drinfeld::{deuring_poly, supersingular_classes};
use drinfeld_core::gf::{make_field, FieldCtx};
use drinfeld_core::homspace::{solve_end_space_rank_r, solve_pair};
use drinfeld_core::polyring::{self, parse_poly_a, PolyA};
use drinfeld_core::skew::SkewPoly;
use rayon::prelude::*;
use std::sync::Arc;

fn f_q(q: u64) -> Arc<FieldCtx> {
    make_field(q, 1, None).unwrap()
}

fn pass(n: u32, name: &str) {
    println!("ACCEPTANCE {n:02} ({name}): PASS");
}

/// Finds one permutation sigma with mine[sigma(i)][sigma(j)] = paper[i][j]
/// simultaneously for every matrix pair.
fn find_simultaneous_permutation(
    mine: &[&BrandtMatrix],
    paper: &[Vec<Vec<u64>>],
) -> Option<Vec<usize>> {
    let n = paper[0].len();
    fn consistent(
        mine: &[&BrandtMatrix],
        paper: &[Vec<Vec<u64>>],
        sigma: &[usize],
        pos: usize,
    ) -> bool {
        for (bm, bp) in mine.iter().zip(paper) {
            for i in 0..=pos {
                if bm.matrix[sigma[pos]][sigma[i]] != bp[pos][i]
                    || bm.matrix[sigma[i]][sigma[pos]] != bp[i][pos]
                {
                    return false;
                }
            }
        }
        true
    }
    fn backtrack(
        mine: &[&BrandtMatrix],
        paper: &[Vec<Vec<u64>>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
        n: usize,
    ) -> bool {
        if pos == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            sigma[pos] = cand;
            used[cand] = true;
            if consistent(mine, paper, sigma, pos)
                && backtrack(mine, paper, sigma, used, pos + 1, n)
            {
                return true;
            }
            used[cand] = false;
        }
        false
    }
    let mut sigma = vec![0usize; n];
    let mut used = vec![false; n];
    backtrack(mine, paper, &mut sigma, &mut used, 0, n).then_some(sigma)
}

#[test]
fn acceptance_01_deuring_golden() {
    let ground = f_q(3);
    let p = parse_poly_a(&ground, "T^4+T+2").unwrap();
    let (fp, h) = deuring_poly(3, &p).unwrap();
    let t = fp.gen();
    // H_p(x) = t^64 x^10 + t^6 x^9 + t^15 x^3 + t^58 x + 1, exactly
    assert_eq!(h.deg(), Some(10));
    let expected: Vec<(usize, u128)> = vec![(10, 64), (9, 6), (3, 15), (1, 58)];
    for (i, k) in &expected {
        assert_eq!(h.coeffs()[*i], fp.pow(&t, *k), "coefficient of x^{i}");
    }
    assert_eq!(h.coeffs()[0], fp.one());
    let support: Vec<usize> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect();
    assert_eq!(support, vec![0, 1, 3, 9, 10]);
    // factorization: 4 linear and 3 quadratic factors
    let fac = drinfeld_core::gf::factor_poly(&h, &fp).unwrap();
    let linear = fac.factors.iter().filter(|(g, _)| g.deg() == Some(1)).count();
    let quadratic = fac.factors.iter().filter(|(g, _)| g.deg() == Some(2)).count();
    assert_eq!((linear, quadratic), (4, 3));
    assert!(fac.factors.iter().all(|(_, m)| *m == 1));
    pass(1, "Deuring golden, q=3 p=T^4+T+2");
}

const EX27_MS: [&str; 8] = [
    "T",
    "T+1",
    "T+2",
    "T^2+1",
    "T^2+2T+2",
    "T^2+T+2",
    "T^3+T^2+T+2",
    "T^4+T^3+T^2+1",
];

fn ex27_golden() -> Vec<Vec<Vec<u64>>> {
    vec![
        vec![vec![0, 2, 1, 1], vec![2, 1, 1, 0], vec![1, 1, 2, 0], vec![4, 0, 0, 0]],
        vec![vec![1, 1, 2, 0], vec![1, 2, 1, 0], vec![2, 1, 0, 1], vec![0, 0, 4, 0]],
        vec![vec![2, 1, 1, 0], vec![1, 0, 2, 1], vec![1, 2, 1, 0], vec![0, 4, 0, 0]],
        vec![vec![4, 2, 4, 0], vec![2, 6, 2, 0], vec![4, 2, 2, 2], vec![0, 0, 8, 2]],
        vec![vec![6, 2, 2, 0], vec![2, 2, 4, 2], vec![2, 4, 4, 0], vec![0, 8, 0, 2]],
        vec![vec![2, 4, 2, 2], vec![4, 4, 2, 0], vec![2, 2, 6, 0], vec![8, 0, 0, 2]],
        vec![
            vec![8, 10, 7, 3],
            vec![10, 3, 11, 4],
            vec![7, 11, 10, 0],
            vec![12, 16, 0, 0],
        ],
        vec![
            vec![24, 26, 26, 6],
            vec![26, 20, 28, 8],
            vec![26, 28, 22, 6],
            vec![24, 32, 24, 2],
        ],
    ]
}

const EX31_MS: [&str; 4] = ["T", "T+1", "T+2", "T^2+T+2"];

fn ex31_golden() -> Vec<Vec<Vec<u64>>> {
    vec![
        vec![
            vec![0, 2, 0, 0, 0, 0, 0, 1, 1, 0],
            vec![2, 0, 0, 0, 1, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 0, 0, 0, 1],
            vec![0, 1, 0, 1, 0, 0, 0, 0, 2, 0],
            vec![0, 0, 1, 1, 0, 1, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 2, 1, 0, 1],
            vec![1, 1, 0, 0, 0, 1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 2, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 1, 0, 0, 1, 0, 0, 1],
        ],
        vec![
            vec![0, 2, 1, 0, 1, 0, 0, 0, 0, 0],
            vec![2, 0, 0, 1, 0, 0, 0, 0, 1, 0],
            vec![1, 0, 0, 2, 0, 0, 1, 0, 0, 0],
            vec![0, 1, 2, 0, 0, 0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 1, 0, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 0, 1, 1, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0, 1, 0, 2],
        ],
        vec![
            vec![0, 1, 0, 1, 0, 1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 1, 0, 0, 0, 1, 0],
            vec![0, 1, 0, 1, 0, 0, 1, 1, 0, 0],
            vec![1, 0, 1, 0, 0, 1, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 2, 0, 0, 0, 1, 0],
            vec![1, 0, 0, 1, 0, 0, 1, 0, 1, 0],
            vec![1, 0, 1, 0, 0, 1, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 0, 0, 2, 0, 1],
            vec![0, 1, 0, 0, 1, 1, 0, 0, 0, 1],
            vec![0, 0, 0, 1, 0, 0, 1, 1, 1, 0],
        ],
        vec![
            vec![1, 0, 0, 2, 0, 1, 1, 1, 1, 3],
            vec![0, 1, 2, 0, 1, 1, 1, 1, 0, 3],
            vec![0, 2, 0, 0, 2, 1, 0, 2, 1, 2],
            vec![2, 0, 0, 0, 1, 1, 0, 2, 2, 2],
            vec![0, 1, 2, 1, 0, 2, 2, 1, 1, 0],
            vec![1, 1, 1, 1, 2, 0, 2, 0, 2, 0],
            vec![1, 1, 0, 0, 2, 2, 0, 2, 2, 0],
            vec![1, 1, 2, 2, 1, 0, 2, 0, 1, 0],
            vec![1, 0, 1, 2, 1, 2, 2, 1, 0, 0],
            vec![3, 3, 2, 2, 0, 0, 0, 0, 0, 0],
        ],
    ]
}

fn compute_set(q: u64, p: &str, ms: &[&str]) -> (BrandtContext, Vec<BrandtMatrix>) {
    let ground = f_q(q);
    let pp = parse_poly_a(&ground, p).unwrap();
    let ctx = BrandtContext::new(supersingular_classes(q, &pp).unwrap());
    let mats = ms
        .iter()
        .map(|m| brandt_matrix(&ctx, &parse_poly_a(&ground, m).unwrap()).unwrap())
        .collect();
    (ctx, mats)
}

#[test]
fn acceptance_02a_brandt_golden_4x4() {
    let (_, mine27) = compute_set(3, "T^3+2T+2", &EX27_MS);
    let refs27: Vec<&BrandtMatrix> = mine27.iter().collect();
    let sigma27 = find_simultaneous_permutation(&refs27, &ex27_golden())
        .expect("one simultaneous permutation must match all eight matrices");
    println!("  example 2.7 permutation (published -> computed): {sigma27:?}");
    pass(2, "Brandt golden 4x4 set (eight matrices, one permutation)");
}

#[test]
fn acceptance_02b_brandt_golden_10x10() {
    let (_, mine31) = compute_set(3, "T^4+T+2", &EX31_MS);
    let refs31: Vec<&BrandtMatrix> = mine31.iter().collect();
    let golden = ex31_golden();
    // The published B(T), B(T+1), B(T^2+T+2) match under one permutation;
    // the published B(T+2) is ordered inconsistently with the other three
    // (it fails commutativity against the published B(T) and B(T+1), while
    // the computed set commutes and satisfies B(m1)B(m2) = B(m1 m2) for
    // coprime m). This assertion is kept as stated and fails on that matrix.
    let sigma31 = find_simultaneous_permutation(&refs31, &golden);
    if sigma31.is_none() {
        let partial: Vec<&BrandtMatrix> = vec![&mine31[0], &mine31[1], &mine31[3]];
        let partial_golden = vec![golden[0].clone(), golden[1].clone(), golden[3].clone()];
        let sigma_three = find_simultaneous_permutation(&partial, &partial_golden);
        println!(
            "  B(T), B(T+1), B(T^2+T+2) match under {:?}; the published \
             B(T+2) alone matches under a different permutation: {:?}",
            sigma_three,
            find_simultaneous_permutation(
                &[&mine31[2]],
                std::slice::from_ref(&golden[2])
            )
        );
    }
    let sigma31 = sigma31.expect(
        "one simultaneous permutation must match all four matrices \
         (unreachable: the published B(T+2) uses an inconsistent ordering; \
         see the printed partial matches above)",
    );
    println!("  example 3.1 permutation (published -> computed): {sigma31:?}");
    pass(2, "Brandt golden 10x10 set (four matrices, one permutation)");
}

#[test]
fn acceptance_03_row_sums() {
    let ground = f_q(3);
    let (ctx27, mine27) = compute_set(3, "T^3+2T+2", &EX27_MS);
    for (ms, b) in EX27_MS.iter().zip(&mine27) {
        let m = parse_poly_a(&ground, ms).unwrap();
        if polyring::is_prime(&m).unwrap() && m != ctx27.cs.p {
            assert_eq!(
                check_row_sums(b, &m, &ctx27.cs.p),
                Some(true),
                "row sums of B({ms})"
            );
            let expected = 3u64.pow(m.deg().unwrap() as u32) + 1;
            assert!(b.row_sums().iter().all(|&s| s == expected));
        }
    }
    let (ctx31, mine31) = compute_set(3, "T^4+T+2", &EX31_MS);
    for (ms, b) in EX31_MS.iter().zip(&mine31) {
        let m = parse_poly_a(&ground, ms).unwrap();
        assert_eq!(check_row_sums(b, &m, &ctx31.cs.p), Some(true));
    }
    pass(3, "row sums q^deg(m)+1 for all prime-m matrices");
}

#[test]
fn acceptance_04_commutativity() {
    let (_, mine27) = compute_set(3, "T^3+2T+2", &EX27_MS);
    assert!(check_commuting(&mine27).unwrap());
    let (_, mine31) = compute_set(3, "T^4+T+2", &EX31_MS);
    assert!(check_commuting(&mine31).unwrap());
    pass(4, "pairwise commutativity within examples 2.7 and 3.1");
}

#[test]
fn acceptance_05_stabilization() {
    // q in {2,3}, up to 5 primes per degree d in 1..=4 (all primes when fewer
    // exist), all class pairs: m_s = 2(s+1)-(d-1) for d-2 <= s <= d+2.
    let configs: Vec<(u64, PolyA)> = [2u64, 3]
        .iter()
        .flat_map(|&q| {
            let ground = f_q(q);
            (1..=4usize).flat_map(move |d| {
                polyring::primes_of_degree(&ground, d)
                    .into_iter()
                    .take(5)
                    .map(move |p| (q, p))
            })
        })
        .collect();
    let total_primes = configs.len();
    configs.par_iter().for_each(|(q, p)| {
        let d = p.deg().unwrap();
        let cs = supersingular_classes(*q, p).unwrap();
        let smax = d + 2;
        for i in 0..cs.class_number() {
            for j in 0..cs.class_number() {
                let hom = solve_pair(&cs, i, j, smax).unwrap();
                for s in d.saturating_sub(2)..=smax {
                    let expected = 2 * (s as i64 + 1) - (d as i64 - 1);
                    assert_eq!(
                        hom.dims[s] as i64, expected,
                        "q={q} p={p} pair ({i},{j}) s={s}"
                    );
                }
                // m_{d-2} = d-1 (for d = 1 this is the m_{-1} = 0 convention)
                if d >= 2 {
                    assert_eq!(hom.dims[d - 2], d - 1, "q={q} p={p} pair ({i},{j})");
                }
            }
        }
    });
    println!("  verified {total_primes} (q, p) configurations");
    pass(5, "stabilization m_s = 2(s+1)-(d-1)");
}

#[test]
fn acceptance_06_remark_triples() {
    let ground = f_q(3);
    let p = parse_poly_a(&ground, "T^5+2T+1").unwrap();
    let cs = supersingular_classes(3, &p).unwrap();
    let mut triples: Vec<(usize, usize, usize)> = (0..cs.class_number())
        .into_par_iter()
        .map(|i| {
            let hom = solve_pair(&cs, i, i, 2).unwrap();
            (hom.dims[0], hom.dims[1], hom.dims[2])
        })
        .collect();
    triples.sort();
    triples.dedup();
    let mut expected = vec![(2, 2, 4), (1, 1, 3), (1, 2, 3), (1, 1, 2)];
    expected.sort();
    assert_eq!(triples, expected);
    pass(6, "endomorphism triples for q=3 p=T^5+2T+1");
}

#[test]
fn acceptance_07_rank_r_formula() {
    let cases = [(2usize, 3usize), (2, 5), (3, 2), (3, 4), (4, 3)];
    cases.par_iter().for_each(|&(r, d)| {
        for q in [2u64, 3] {
            let ground = f_q(q);
            let p = polyring::primes_of_degree(&ground, d)
                .into_iter()
                .next()
                .unwrap();
            let c = (r - 1) * (d - 1);
            let smax = c + 2;
            let hom = solve_end_space_rank_r(q, &p, r, smax).unwrap();
            assert_eq!(hom.dims[0], r, "m_0 = r (q={q} r={r} d={d})");
            for s in c.saturating_sub(1)..=smax {
                let expected = r * (s + 1) - r * c / 2;
                assert_eq!(hom.dims[s], expected, "q={q} r={r} d={d} s={s}");
            }
            // r = 2, d odd: m_s = 2 ceil((s+1)/2) on 0 <= s <= d-2
            if r == 2 && d % 2 == 1 {
                for s in 0..=d - 2 {
                    assert_eq!(hom.dims[s], 2 * ((s + 1).div_ceil(2)), "early range s={s}");
                }
            }
        }
    });
    pass(7, "rank-r dimension formula for t + tau^r");
}

#[test]
fn acceptance_08_section_4_2_counts() {
    let ground = f_q(3);
    let p = parse_poly_a(&ground, "T^2+2T+2").unwrap();
    let cs = supersingular_classes(3, &p).unwrap();
    assert_eq!(cs.class_number(), 1);
    let hom = solve_pair(&cs, 0, 0, 4).unwrap();
    assert_eq!(hom.dim(4), 9, "dim M_4");
    let qp = parse_poly_a(&ground, "T^4+T^3+2T+1").unwrap();
    let bad = bad_elements(&hom, 4, &qp).unwrap();
    assert_eq!(bad.raw_count, 164, "nonzero bad elements");
    let hs = good_hyperplanes(&hom, 4, &bad);
    assert_eq!(hs.total, 9841, "total hyperplanes");
    // The stated good-hyperplane count. The computed truth is 0: any single
    // projective bad point already lies on (3^8-1)/2 = 3280 of the 9841
    // hyperplanes, so with 164 bad elements no count above 6561 is possible;
    // see the analysis shipped with the repository history. This assertion
    // is kept as stated and fails.
    assert_eq!(
        hs.good_functionals.len(),
        8832,
        "good hyperplanes (stated value unreachable: computed {}, and any \
         nonempty bad set caps the count at 6561 < 8832)",
        hs.good_functionals.len()
    );
    pass(8, "section 4.2 counts");
}

#[test]
fn acceptance_09_section_4_4_counts() {
    let ground = f_q(3);
    let p = parse_poly_a(&ground, "T^4+T+2").unwrap();
    let cs = supersingular_classes(3, &p).unwrap();
    // the class with model t + tau + t^26 tau^2
    let t26 = cs
        .fp2
        .embed_from(&cs.fp)
        .unwrap()
        .apply(&cs.fp.pow(&cs.fp.gen(), 26));
    let idx = cs
        .classes
        .iter()
        .position(|c| c.x0.as_ref() == Some(&t26))
        .expect("t^26 is a root of H_p");
    let hom = solve_pair(&cs, idx, idx, 3).unwrap();
    assert_eq!(hom.dim(3), 5, "dim M_3");
    let qp = parse_poly_a(&ground, "T^2+T+2").unwrap();
    let bad = bad_elements(&hom, 3, &qp).unwrap();
    assert_eq!(bad.raw_count, 20, "bad elements");
    let hs = good_hyperplanes(&hom, 3, &bad);
    assert_eq!(hs.good_functionals.len(), 6, "good hyperplanes");
    // each good hyperplane yields a verified semifield code: 80 invertible
    // nonzero words
    for f in &hs.good_functionals {
        let basis = hyperplane_basis(&hom, f);
        let code = build_semifield_code(
            &hom,
            &basis,
            &qp,
            CodeProvenance::Hyperplane { functional: f.clone() },
        )
        .unwrap();
        assert_eq!(code.dim, 4);
        assert_eq!(code.verified_words, 80);
        assert_eq!(code.min_rank_distance, 2);
    }
    pass(9, "section 4.4 counts and verified codes");
}

#[test]
fn acceptance_10_zero_entry_strategy() {
    let ground = f_q(3);
    let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
    let ctx = BrandtContext::new(supersingular_classes(3, &p).unwrap());
    // d = 3: target s = deg q'; zero entries exist for deg q' in {1,2,3}
    // and for none of the degree-4 primes
    for s in 1..=3usize {
        let found = search_zero_entry(&ctx, s).unwrap();
        assert!(!found.is_empty(), "zero entries must exist for s={s}");
    }
    let found4 = search_zero_entry(&ctx, 4).unwrap();
    assert!(
        found4.is_empty(),
        "no zero entries for deg q' = 4, got {}",
        found4.len()
    );
    pass(10, "zero-entry strategy works for s=1,2,3 and fails for s=4");
}

#[test]
fn acceptance_11_property_suites() {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    let f9 = make_field(3, 2, None).unwrap();
    let f81 = make_field(3, 4, None).unwrap();
    let random_elem = |ctx: &Arc<FieldCtx>, rng: &mut ChaCha8Rng| {
        ctx.elem(
            (0..ctx.abs_degree())
                .map(|_| rng.gen_range(0..ctx.characteristic()))
                .collect(),
        )
    };
    let random_skew = |ctx: &Arc<FieldCtx>, rng: &mut ChaCha8Rng, maxdeg: usize| {
        let dg = rng.gen_range(0..=maxdeg);
        SkewPoly::from_coeffs(
            ctx.as_ref(),
            (0..=dg).map(|_| random_elem(ctx, rng)).collect(),
        )
    };

    // skew ring axioms
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    for round in 0..500 {
        let ctx = if round % 2 == 0 { &f9 } else { &f81 };
        let r = ctx.as_ref();
        let a = random_skew(ctx, &mut rng, 4);
        let b = random_skew(ctx, &mut rng, 4);
        let c = random_skew(ctx, &mut rng, 4);
        assert_eq!(a.mul(&b, r).mul(&c, r), a.mul(&b.mul(&c, r), r));
        assert_eq!(a.mul(&b.add(&c, r), r), a.mul(&b, r).add(&a.mul(&c, r), r));
    }

    // right-division recombination
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
    for round in 0..500 {
        let ctx = if round % 2 == 0 { &f9 } else { &f81 };
        let r = ctx.as_ref();
        let f = random_skew(ctx, &mut rng, 7);
        let g = random_skew(ctx, &mut rng, 4);
        if g.is_zero() {
            continue;
        }
        let (q, rem) = f.right_divmod(&g, r).unwrap();
        assert_eq!(q.mul(&g, r).add(&rem, r), f);
        assert!(rem.is_zero() || rem.deg_tau() < g.deg_tau());
    }

    // rgcd exact division
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0003);
    for round in 0..500 {
        let ctx = if round % 2 == 0 { &f9 } else { &f81 };
        let r = ctx.as_ref();
        let f = random_skew(ctx, &mut rng, 5);
        let g = random_skew(ctx, &mut rng, 5);
        if f.is_zero() && g.is_zero() {
            continue;
        }
        let gc = f.right_gcd(&g, r).unwrap();
        if !f.is_zero() {
            assert!(gc.right_divides(&f, r).unwrap());
        }
        if !g.is_zero() {
            assert!(gc.right_divides(&g, r).unwrap());
        }
    }

    // phi_{ab} homomorphism on random a, b
    let ground = f_q(3);
    let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
    let cs = supersingular_classes(3, &p).unwrap();
    let phi = &cs.classes[0].module;
    let ring = phi.field.as_ref();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    for _ in 0..500 {
        let coeffs_a: Vec<u64> = (0..=rng.gen_range(0..4)).map(|_| rng.gen_range(0..3)).collect();
        let coeffs_b: Vec<u64> = (0..=rng.gen_range(0..4)).map(|_| rng.gen_range(0..3)).collect();
        let a = PolyA::from_prime_coeffs(&ground, &coeffs_a);
        let b = PolyA::from_prime_coeffs(&ground, &coeffs_b);
        assert_eq!(
            phi.phi_of(&a.mul(&b)).unwrap(),
            phi.phi_of(&a).unwrap().mul(&phi.phi_of(&b).unwrap(), ring)
        );
    }

    // field axioms
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    for round in 0..500 {
        let ctx = if round % 2 == 0 { &f9 } else { &f81 };
        let a = random_elem(ctx, &mut rng);
        let b = random_elem(ctx, &mut rng);
        let c = random_elem(ctx, &mut rng);
        assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        assert_eq!(
            ctx.mul(&a, &ctx.add(&b, &c)),
            ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c))
        );
        if !a.is_zero() {
            assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
        }
    }
    pass(11, "property suites, 500 seed-pinned cases each");
}

#[test]
fn acceptance_12_tiny_brute_force_oracle() {
    // q = 2, d <= 2, deg m = 1: Brandt entries vs exhaustive kernel
    // classification by evaluating isogenies at every point of a splitting
    // field.
    let ground = f_q(2);
    for pstr in ["T", "T+1", "T^2+T+1"] {
        let p = parse_poly_a(&ground, pstr).unwrap();
        let cs = supersingular_classes(2, &p).unwrap();
        let ctx = BrandtContext::new(supersingular_classes(2, &p).unwrap());
        let n = cs.class_number();
        let d = p.deg().unwrap();
        for ms in ["T", "T+1"] {
            let m = parse_poly_a(&ground, ms).unwrap();
            let b = brandt_matrix(&ctx, &m).unwrap();
            // oracle: enumerate all exact-degree-1 morphisms, find their
            // kernels by evaluation over the working field (u = u0 + u1 tau
            // has its kernel generator u0/u1 inside k, so k splits u), and
            // classify the A-module structure of the kernel directly.
            for i in 0..n {
                for j in 0..n {
                    let hom = ctx.hom(i, j, 1).unwrap();
                    let k = hom.field.clone();
                    // enumerate every element of k by coordinates
                    let card = 2u64.pow(k.abs_degree() as u32);
                    let all_points: Vec<_> = (0..card)
                        .map(|code| {
                            k.elem(
                                (0..k.abs_degree())
                                    .map(|bit| (code >> bit) & 1)
                                    .collect(),
                            )
                        })
                        .collect();
                    let phi_t = hom.source.phi_t();
                    let mut counts: std::collections::HashMap<String, u64> =
                        std::collections::HashMap::new();
                    hom.scan_exact_degree(1, false, |_, u| {
                        let roots: Vec<_> = all_points
                            .iter()
                            .filter(|x| u.evaluate(&k, x).is_zero())
                            .collect();
                        let norm = if roots.len() == 1 {
                            // kernel {0}: purely inseparable, norm p^{ht/d}
                            assert_eq!(u.height(k.as_ref()), Some(d));
                            cs.p.to_string()
                        } else {
                            assert_eq!(roots.len(), 2, "separable degree-1 kernel");
                            let beta = roots
                                .iter()
                                .find(|x| !x.is_zero())
                                .unwrap();
                            // phi_T(beta) = c beta determines the invariant
                            // factor T - c
                            let img = phi_t.evaluate(&k, beta);
                            let c = if img.is_zero() {
                                0
                            } else if img == **beta {
                                1
                            } else {
                                panic!("kernel line must be T-stable for q=2");
                            };
                            if c == 0 {
                                "T".to_string()
                            } else {
                                "T+1".to_string()
                            }
                        };
                        *counts.entry(norm).or_insert(0) += 1;
                    });
                    let raw = counts.get(ms).copied().unwrap_or(0);
                    let aut = cs.classes[j].aut_order;
                    assert_eq!(raw % aut, 0);
                    assert_eq!(
                        raw / aut,
                        b.matrix[i][j],
                        "p={pstr} m={ms} pair ({i},{j})"
                    );
                }
            }
        }
    }
    pass(12, "tiny brute-force kernel oracle agrees, q=2 d<=2");
}
