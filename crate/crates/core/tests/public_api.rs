use permqm::dynamics::{
    brute_force_dominant, dominant_evolution, prob_step, trace_evolution, WeightScheme,
};
use permqm::exactnum::CyclotomicNumber;
use permqm::perm::Permutation;
use permqm::repstate::{NaturalVector, Representation};
use permqm::rng::stream;
use permqm::spectrum::{base_energy, spectrum_of, EnergyHistogram};

#[test]
fn text_formats_round_trip() {
    let p: Permutation = "3 1 2".parse().unwrap();
    assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    assert_eq!(p.cycle_type().to_string(), "3^1");

    let z: CyclotomicNumber = "3/2 + 1/3*z^2 (k=12)".parse().unwrap();
    assert_eq!(z.to_string(), "3/2 + 1/3*z^2 (k=12)");

    let v: NaturalVector = "0 7 3".parse().unwrap();
    assert_eq!(v.to_string().parse::<NaturalVector>().unwrap(), v);

    let w: WeightScheme = "1 2 3 0.5\n2 1 3 0.5\n".parse().unwrap();
    assert_eq!(w.to_string().parse::<WeightScheme>().unwrap(), w);
}

#[test]
fn dominant_trace_starts_at_its_maximum_step() {
    let mut rng = stream(5, 0);
    for rep in [Representation::Natural, Representation::Standard] {
        let n = NaturalVector::random(40, 1000, &mut rng).unwrap();
        let m = NaturalVector::random(40, 1000, &mut rng).unwrap();
        let d = dominant_evolution(&n, &m, rep).unwrap();
        let trace = trace_evolution(&d.dominant, &n, &m, rep, 10).unwrap();
        assert_eq!(trace.probabilities[1], d.probability);
        assert_eq!(
            trace.probabilities[2],
            prob_step(&d.dominant.power(2), &n, &m, rep).unwrap()
        );
        let levels = spectrum_of(&d.dominant);
        assert_eq!(levels.degree(), 40);
        if let Some(b) = base_energy(&d.dominant) {
            assert_eq!(b.max_cycle(), d.dominant.max_cycle_length());
        }
    }
}

#[test]
fn closed_form_agrees_with_search_on_ties() {
    let n: NaturalVector = "1 1 2 2 3".parse().unwrap();
    let m: NaturalVector = "4 0 4 0 1".parse().unwrap();
    for rep in [Representation::Natural, Representation::Standard] {
        let b = brute_force_dominant(&n, &m, rep).unwrap();
        assert_eq!(
            dominant_evolution(&n, &m, rep).unwrap().probability,
            b.result.probability
        );
        assert!(b.argmax_count > 1);
    }
}

#[test]
fn histogram_merge_is_split_independent() {
    let perms: Vec<Permutation> = (0..60)
        .map(|i| Permutation::random(15, &mut stream(2, i)).unwrap())
        .collect();
    let whole = EnergyHistogram::from_permutations(&perms);
    let mut parts = EnergyHistogram::from_permutations(&perms[..17]);
    parts.merge(&EnergyHistogram::from_permutations(&perms[17..]));
    assert_eq!(whole, parts);
}
