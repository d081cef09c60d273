use std::path::PathBuf;

use eqdeg::corpus::{entries, entry, nested_pairs};
use eqdeg::degree::{degree_equidimensional, DegreeConfig};
use eqdeg::groebner::ideal_equal;
use eqdeg::hilbert::hilbert_degree_oracle;
use eqdeg::{
    buchberger, Field, IdealFile, IdealPresentation, MonomialOrder, Polynomial, PrimeField,
    Rationals,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn fixture_files_agree_with_embedded_corpus() {
    let all = entries();
    for e in &all {
        let path = corpus_dir().join(format!("{}.ideal", e.name));
        let text =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert!(e.matches_file(&text), "{} differs from its file", e.name);
        let parsed = IdealFile::parse(&text)
            .unwrap()
            .to_ideal(Rationals)
            .unwrap();
        assert!(ideal_equal(&parsed, &e.ideal(Rationals).unwrap()).unwrap());
    }
    let on_disk = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter(|f| {
            f.as_ref()
                .unwrap()
                .path()
                .extension()
                .is_some_and(|x| x == "ideal")
        })
        .count();
    assert_eq!(on_disk, all.len());
}

#[test]
fn groebner_bases_are_sound_under_both_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for e in entries() {
        let ideal = e.ideal(Rationals).unwrap();
        for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let gb = buchberger(&ideal, order);
            assert!(gb.s_polynomials_reduce_to_zero(), "{} {order:?}", e.name);
            assert!(gb.is_reduced(), "{}", e.name);
            for g in ideal.generators() {
                assert!(gb.contains(g).unwrap());
            }
            for _ in 0..5 {
                let p = random_poly(&mut rng, ideal.num_vars(), 3);
                let nf = gb.normal_form(&p).unwrap();
                assert_eq!(gb.normal_form(&nf).unwrap(), nf);
                assert!(gb.contains(&p.with_order(order).sub(&nf).unwrap()).unwrap());
            }
        }
        let lex = buchberger(&ideal, MonomialOrder::Lex);
        let grevlex = buchberger(&ideal, MonomialOrder::DegRevLex);
        assert_eq!(grevlex.dimension(), Some(e.dimension), "{}", e.name);
        assert_eq!(lex.dimension(), Some(e.dimension), "{}", e.name);
        if e.dimension == 0 {
            assert_eq!(
                lex.standard_monomial_count(),
                grevlex.standard_monomial_count(),
                "{}",
                e.name
            );
            assert_eq!(grevlex.standard_monomial_count().finite(), Some(e.degree));
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Polynomial<Rationals> {
    let terms: Vec<_> = (0..4)
        .map(|_| {
            let mut exps = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=max_deg) {
                exps[rng.gen_range(0..n)] += 1;
            }
            (
                Rationals.from_i64(rng.gen_range(-9..=9)),
                eqdeg::ExponentVector::new(exps).unwrap(),
            )
        })
        .collect();
    Polynomial::from_terms(Rationals, n, MonomialOrder::DegRevLex, terms).unwrap()
}

/// Shuffles the generators, rescales each by a nonzero rational and adds
/// polynomial multiples of the others one at a time, which leaves the
/// ideal unchanged.
fn disguise(
    ideal: &IdealPresentation<Rationals>,
    rng: &mut ChaCha8Rng,
) -> IdealPresentation<Rationals> {
    let mut gens = ideal.generators().to_vec();
    gens.shuffle(rng);
    for i in 0..gens.len() {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let c = Rationals.div(
            &Rationals.from_i64(sign * rng.gen_range(1..=7)),
            &Rationals.from_i64(rng.gen_range(1..=5)),
        );
        gens[i] = gens[i].scale(&c);
        for j in 0..gens.len() {
            if i != j && rng.gen_bool(0.5) {
                let extra = gens[j].mul(&random_poly(rng, ideal.num_vars(), 1)).unwrap();
                gens[i] = gens[i].add(&extra).unwrap();
            }
        }
    }
    IdealPresentation::new(ideal.var_names().to_vec(), gens, None).unwrap()
}

#[test]
fn ideal_equal_is_an_equivalence_on_disguised_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let all = entries();
    for e in &all {
        let a = e.ideal(Rationals).unwrap();
        let b = disguise(&a, &mut rng);
        let c = disguise(&b, &mut rng);
        assert!(ideal_equal(&a, &a).unwrap());
        assert!(
            ideal_equal(&a, &b).unwrap() && ideal_equal(&b, &a).unwrap(),
            "{}",
            e.name
        );
        assert!(ideal_equal(&b, &c).unwrap() && ideal_equal(&a, &c).unwrap());
    }
    let a = entry("cex").unwrap().ideal(Rationals).unwrap();
    let b = entry("double_line").unwrap().ideal(Rationals).unwrap();
    assert!(!ideal_equal(&a, &b).unwrap());
}

#[test]
fn degree_is_stable_across_seeds() {
    for e in entries().iter().filter(|e| e.equidimensional) {
        let ideal = e.ideal(Rationals).unwrap();
        for seed in 0..20 {
            let r = degree_equidimensional(
                &ideal,
                e.dimension,
                &DegreeConfig::default().with_seed(seed),
            )
            .unwrap();
            assert_eq!(r.degree, e.degree, "{} seed {seed}", e.name);
        }
    }
}

#[test]
fn degree_is_monotone_on_nested_pairs() {
    let cfg = DegreeConfig::default();
    for (a, b) in nested_pairs() {
        let (a, b) = (entry(a).unwrap(), entry(b).unwrap());
        let da = degree_equidimensional(&a.ideal(Rationals).unwrap(), a.dimension, &cfg)
            .unwrap()
            .degree;
        let db = degree_equidimensional(&b.ideal(Rationals).unwrap(), b.dimension, &cfg)
            .unwrap()
            .degree;
        assert!(db <= da, "{} vs {}", a.name, b.name);
    }
}

#[test]
fn prime_field_mode_agrees_with_rationals() {
    let primes = PrimeField::random_trial_primes(3, 2024);
    assert_eq!(primes.len(), 3);
    for e in entries().iter().filter(|e| e.equidimensional) {
        let q = degree_equidimensional(
            &e.ideal(Rationals).unwrap(),
            e.dimension,
            &DegreeConfig::default(),
        )
        .unwrap()
        .degree;
        for &p in &primes {
            assert!(p > 1 << 20);
            let field = PrimeField::new(p).unwrap();
            let r = degree_equidimensional(
                &e.ideal(field).unwrap(),
                e.dimension,
                &DegreeConfig::default(),
            )
            .unwrap();
            assert_eq!(r.degree, q, "{} mod {p}", e.name);
        }
    }
}

#[test]
fn hilbert_oracle_agrees_with_random_sections() {
    for e in entries().iter().filter(|e| e.equidimensional) {
        let ideal = e.ideal(Rationals).unwrap();
        let h = hilbert_degree_oracle(&ideal).unwrap();
        let d = degree_equidimensional(&ideal, e.dimension, &DegreeConfig::default()).unwrap();
        assert_eq!(
            (h.degree, h.affine_dimension()),
            (d.degree, e.dimension),
            "{}",
            e.name
        );
    }
}
