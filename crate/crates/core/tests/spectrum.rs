use wiener_core::caterpillar::{construct, param_domain, CaterpillarSpec, Family};
use wiener_core::oracle::exact_spectrum;
use wiener_core::spectrum::{build_index, solve};
use wiener_core::transform::schedule;
use wiener_core::{wiener, Error, Witness};

#[test]
fn witnesses_are_sound() {
    for n in [30, 31, 44, 45] {
        let index = build_index(n).unwrap();
        for p in &index.progressions {
            for t in [0, p.count / 2, p.count] {
                let tree = schedule(&p.witness, t).unwrap();
                assert_eq!(tree.n(), n);
                assert_eq!(
                    wiener(&tree).unwrap(),
                    p.base_w + 4 * t,
                    "{} t={t}",
                    p.witness
                );
            }
        }
    }
}

#[test]
fn s_variants_cover_residues() {
    for family in Family::ALL.into_iter().filter(|f| f.is_g()) {
        for n in [family.min_n() + 10, family.min_n() + 20] {
            let domain = param_domain(family, n).unwrap();
            for row in &domain.rows {
                for x in 1..=row.x_max {
                    let specs: Vec<_> = family
                        .seeds()
                        .iter()
                        .map(|&s| CaterpillarSpec::seeded(family, n, row.d, x, s))
                        .filter(|s| s.validate().is_ok())
                        .collect();
                    if specs.len() < family.seeds().len() {
                        continue;
                    }
                    let mut residues: Vec<u64> = specs
                        .iter()
                        .map(|s| wiener(&construct(s).unwrap()).unwrap() % 4)
                        .collect();
                    residues.sort_unstable();
                    residues.dedup();
                    let expected = if family.requires_odd_n() { 2 } else { 4 };
                    assert_eq!(residues.len(), expected, "{family} n={n} d={} x={x}", row.d);
                }
            }
        }
    }
}

#[test]
fn shortfalls_are_reported_as_gaps() {
    for n in (20..=60).chain([99, 100]) {
        let r = build_index(n).unwrap().measured_interval().unwrap();
        let (Some(lo), Some(hi)) = (r.claimed_lo, r.claimed_hi) else {
            continue;
        };
        if r.gaps.is_empty() {
            assert!(r.covers_claim() || lo > hi, "n = {n}: silent shortfall");
        }
        for g in &r.gaps {
            assert!(*g >= lo && *g <= hi);
        }
    }
}

#[test]
fn index_values_are_real_trees() {
    // every constructive value for small n also appears in the exact spectrum
    for n in [19, 20] {
        let index = build_index(n).unwrap();
        let exact = exact_spectrum(n).unwrap();
        for v in index.values() {
            assert!(exact.values.binary_search(&v).is_ok(), "n = {n}: {v}");
        }
    }
}

#[test]
fn solve_errors_and_special_cases() {
    assert!(matches!(
        solve(31, 1001),
        Err(Error::ParityViolation { .. })
    ));
    assert!(matches!(solve(30, 840), Err(Error::OutOfRange { .. })));
    assert!(matches!(solve(30, 2545), Err(Error::NotCovered { .. })));
    assert_eq!(solve(30, 841).unwrap().witness, Witness::Star);
    assert_eq!(solve(10, 165).unwrap().witness, Witness::Path);
    let sol = solve(30, 2546).unwrap();
    assert!(matches!(sol.witness, Witness::Caterpillar { .. }));
    assert_eq!(wiener(&sol.tree).unwrap(), 2546);
}
