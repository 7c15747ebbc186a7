mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{both, coalitions, load, objectives, random_model};

#[test]
fn random_models_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    for _ in 0..150 {
        let text = random_model(&mut rng);
        let n = load(&text);
        for coalition in coalitions(&n) {
            for obj in objectives() {
                let prop = format!("#synth <<{}>> {}", coalition, obj);
                let (engine, oracle) = both(&n, &prop);
                assert_eq!(engine, oracle, "\n{}\n{}", prop, text);
                checked += 1;
            }
        }
    }
    assert!(checked >= 150 * 32);
}

#[test]
fn random_models_check_mode_agrees_with_synthesis() {
    use stratimed::engine::{explore, Budget, Verdict};
    use stratimed::lang::{parse_property, Mode};

    let mut rng = ChaCha8Rng::seed_from_u64(0xc4ec);
    for _ in 0..60 {
        let text = random_model(&mut rng);
        let n = load(&text);
        for coalition in coalitions(&n) {
            for obj in objectives() {
                let mut p = parse_property(&format!("#synth <<{}>> {}", coalition, obj), &n).unwrap();
                let synth = explore(&n, &p, Budget::unlimited());
                p.mode = Mode::Check;
                let check = explore(&n, &p, Budget::unlimited());
                assert_eq!(check.verdict == Verdict::Holds, !synth.strategies.is_empty(), "{}\n{}", obj, text);
                for s in &check.strategies {
                    assert!(synth.strategies.contains(s), "{}\n{}", obj, text);
                }
            }
        }
    }
}
