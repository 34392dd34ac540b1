use hashi::bench::{generate_member, SuiteSpec};
use hashi::generator::SplitMix64;
use hashi::{build_edges, generate, verify, write_instance, GenConfig};

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[test]
fn small_layout_is_frozen() {
    let g = generate(&GenConfig::new(3, 4, 4, 0.0, 0.0, 7)).unwrap();
    assert_eq!(write_instance(&g.puzzle), "4 4\n...1\n.1.2\n....\n....\n");
    assert_eq!(g.witness.mult, vec![1, 1]);
}

#[test]
fn hundred_island_instance_is_frozen() {
    let g = generate(&GenConfig::new(100, 16, 16, 0.05, 0.5, 42)).unwrap();
    let text = write_instance(&g.puzzle);
    assert_eq!(fnv1a(text.as_bytes()), 8671847965487741271);
    assert_eq!(g.achieved_cycles, 5);
    assert_eq!(g.regenerations, 0);
    assert_eq!(g.witness.bridge_count(), 168);
}

#[test]
fn cycle_count_is_frozen() {
    let g = generate(&GenConfig::new(100, 16, 16, 0.15, 0.5, 42)).unwrap();
    assert_eq!(g.achieved_cycles, 15);
}

#[test]
fn thousand_placements_are_sound() {
    let mut rng = SplitMix64::new(99);
    for _ in 0..1000 {
        let side = 3 + rng.index(14);
        let n = 2 + rng.index(side * side / 3);
        let alpha = rng.unit() * 0.3;
        let beta = rng.unit();
        let cfg = GenConfig::new(n, side, side, alpha, beta, rng.next_u64());
        let g = generate(&cfg).unwrap();
        let es = build_edges(&g.puzzle);
        assert_eq!(g.puzzle.len(), n);
        assert_eq!(g.regenerations, 0);
        assert!(verify(&g.puzzle, &es, &g.witness).is_empty(), "{cfg:?}");
        assert!(g.achieved_cycles <= cfg.cycle_attempts());
        let used = (0..es.len()).filter(|&e| g.witness.used(e)).count();
        assert_eq!(used, n - 1 + g.achieved_cycles);
        for &(x, y) in es.crossings() {
            assert!(!(g.witness.used(x) && g.witness.used(y)));
        }
    }
}

#[test]
fn doubling_rate_is_binomial() {
    let (mut edges, mut doubled) = (0u64, 0u64);
    let mut seed = 0;
    while edges < 10_000 {
        seed += 1;
        let Ok(g) = generate(&GenConfig::new(100, 16, 16, 0.1, 0.5, seed)) else {
            continue;
        };
        edges += g.witness.mult.iter().filter(|&&m| m > 0).count() as u64;
        doubled += g.witness.mult.iter().filter(|&&m| m == 2).count() as u64;
    }
    let mean = edges as f64 * 0.5;
    let sigma = (edges as f64 * 0.25).sqrt();
    assert!(
        (doubled as f64 - mean).abs() <= 3.0 * sigma,
        "{doubled} of {edges}"
    );
}

#[test]
fn extreme_betas_are_exact() {
    for seed in 0..20 {
        let none = generate(&GenConfig::new(50, 12, 12, 0.1, 0.0, seed)).unwrap();
        assert!(none.witness.mult.iter().all(|&m| m <= 1));
        let all = generate(&GenConfig::new(50, 12, 12, 0.1, 1.0, seed)).unwrap();
        assert!(all.witness.mult.iter().all(|&m| m != 1));
    }
}

#[test]
fn same_config_same_output() {
    let cfg = GenConfig::new(200, 24, 24, 0.1, 0.75, 5);
    assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
}

#[test]
fn desk_suite_degrees_are_in_range() {
    let spec = SuiteSpec::desk();
    assert_eq!(spec.instance_count(), 240);
    let mut histogram = [0usize; 9];
    for (group, rep) in spec.members() {
        let (row, puzzle) = generate_member(group, rep);
        assert!(row.is_ok(), "{}", row.id);
        let puzzle = puzzle.unwrap();
        assert_eq!(puzzle.len(), group.n);
        for isl in puzzle.islands() {
            histogram[isl.degree as usize] += 1;
        }
    }
    assert_eq!(histogram[0], 0);
    assert!(histogram[1..].iter().all(|&c| c > 0), "{histogram:?}");
}
