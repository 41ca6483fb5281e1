use acmac_core::channels::random_channel;
use acmac_core::{
    accmac_inner_point, accmac_outer_point, conditional_mutual_information, contains, inner_point,
    joint_law_inner, mutual_information, outer_point, pentagon_vertices, search_inner,
    search_outer, Cognition, ConditionalPmf, DelaySet, DiscreteChannel, InnerParams, JointTensor,
    Pmf, SearchConfig, Var,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_setup(seed: u64, ds: DelaySet) -> (DiscreteChannel, InnerParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, c) = (
        rng.random_range(2..=3),
        rng.random_range(2..=3),
        rng.random_range(2..=4),
    );
    let ch = random_channel(&mut rng, a, b, c).unwrap();
    let params = params_for(&mut rng, &ch, ds);
    (ch, params)
}

fn params_for<R: Rng>(rng: &mut R, ch: &DiscreteChannel, ds: DelaySet) -> InnerParams {
    let rows = ch.x1_size().pow(ds.size() as u32);
    let cond =
        ConditionalPmf::new((0..rows).map(|_| Pmf::random(rng, ch.x2_size())).collect()).unwrap();
    InnerParams::new(ch, ds, Pmf::random(rng, ch.x1_size()), cond).unwrap()
}

fn random_joint(seed: u64) -> JointTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = [
        rng.random_range(1..=3),
        rng.random_range(2..=3),
        rng.random_range(2..=3),
        rng.random_range(2..=3),
    ];
    let axes = vec![
        (Var::V, dims[0]),
        (Var::X1, dims[1]),
        (Var::X2, dims[2]),
        (Var::Y, dims[3]),
    ];
    let p = Pmf::random(&mut rng, dims.iter().product());
    JointTensor::new(axes, p.probs().to_vec()).unwrap()
}

/// Every widening of `{-d_min..d_max}` by one step, restricted to small sets.
fn supersets(ds: DelaySet) -> Vec<DelaySet> {
    vec![
        DelaySet::new(ds.d_min + 1, ds.d_max),
        DelaySet::new(ds.d_min, ds.d_max + 1),
    ]
}

/// Window rows of `big` that agree with `small` on the overlapping slots.
fn lift(params: &InnerParams, small: DelaySet, big: DelaySet) -> InnerParams {
    let nx1 = params.p_x1.len();
    let (ds, db) = (small.size(), big.size());
    // the small window sits inside the big one starting at this offset
    let offset = big.d_max - small.d_max;
    let rows = (0..nx1.pow(db as u32))
        .map(|w| {
            let digits: Vec<usize> = (0..db)
                .rev()
                .map(|k| (w / nx1.pow(k as u32)) % nx1)
                .collect();
            let inner = digits[offset..offset + ds]
                .iter()
                .fold(0, |acc, &s| acc * nx1 + s);
            params.p_x2_given_v.row(inner).clone()
        })
        .collect();
    InnerParams {
        p_x1: params.p_x1.clone(),
        p_x2_given_v: ConditionalPmf::new(rows).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_rule(seed in any::<u64>()) {
        let j = random_joint(seed);
        let joint = mutual_information(&j, &[Var::X1, Var::X2], &[Var::Y]).unwrap();
        let split = mutual_information(&j, &[Var::X1], &[Var::Y]).unwrap()
            + conditional_mutual_information(&j, &[Var::X2], &[Var::Y], &[Var::X1]).unwrap();
        prop_assert!((joint - split).abs() <= 1e-9);
    }

    #[test]
    fn functionals_ignore_axis_order(seed in any::<u64>()) {
        let j = random_joint(seed);
        let p = j.permuted(&[Var::Y, Var::X2, Var::V, Var::X1]).unwrap();
        let a = conditional_mutual_information(&j, &[Var::X2], &[Var::Y], &[Var::V]).unwrap();
        let b = conditional_mutual_information(&p, &[Var::X2], &[Var::Y], &[Var::V]).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!((j.entropy_of(&[Var::X1, Var::Y]).unwrap() - p.entropy_of(&[Var::Y, Var::X1]).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn data_processing(seed in any::<u64>(), d_max in 0usize..2) {
        let ds = DelaySet::new(0, d_max);
        let (ch, params) = random_setup(seed, ds);
        for d in ds.delays() {
            let j = joint_law_inner(&ch, ds, d, &params).unwrap();
            let i = mutual_information(&j, &[Var::X1, Var::X2], &[Var::Y]).unwrap();
            let hy = j.entropy_of(&[Var::Y]).unwrap();
            prop_assert!(i <= hy + 1e-12);
            prop_assert!(hy <= (ch.y_size() as f64).log2() + 1e-12);
        }
    }

    #[test]
    fn inner_caps_bounded(seed in any::<u64>(), d_min in 0usize..2, d_max in 0usize..2) {
        let ds = DelaySet::new(d_min, d_max);
        let (ch, params) = random_setup(seed, ds);
        let r = inner_point(&ch, ds, &params).unwrap();
        let log_y = (ch.y_size() as f64).log2();
        for caps in &r.per_delay {
            prop_assert!(caps.sum_cap <= log_y + 1e-12);
            prop_assert!(caps.r2_cap <= caps.sum_cap + 1e-12);
        }
    }

    #[test]
    fn wider_delay_sets_never_help(seed in any::<u64>(), d_min in 0usize..2, d_max in 0usize..2) {
        let small = DelaySet::new(d_min, d_max);
        let (ch, params) = random_setup(seed, small);
        let p = inner_point(&ch, small, &params).unwrap().pentagon;
        for big in supersets(small) {
            let q = inner_point(&ch, big, &lift(&params, small, big)).unwrap().pentagon;
            prop_assert!(q.a <= p.a + 1e-12 && q.b <= p.b + 1e-12, "{small:?} -> {big:?}: {p:?} vs {q:?}");
        }
    }

    #[test]
    fn accmac_is_acmac_cut_by_entropy(seed in any::<u64>(), d_max in 0usize..2) {
        let ds = DelaySet::new(0, d_max);
        let (ch, params) = random_setup(seed, ds);
        let full = inner_point(&ch, ds, &params).unwrap().pentagon;
        let cut = accmac_inner_point(&ch, ds, &params).unwrap().pentagon;
        prop_assert_eq!((cut.a, cut.b), (full.a, full.b));
        prop_assert!(cut.c <= (ch.x1_size() as f64).log2() + 1e-12);
        let ext = params.product_extension(ds).unwrap();
        let full = outer_point(&ch, ds, &ext).unwrap().pentagon;
        let cut = accmac_outer_point(&ch, ds, &ext).unwrap().pentagon;
        prop_assert_eq!((cut.a, cut.b), (full.a, full.b));
        prop_assert!(cut.c <= (ch.x1_size() as f64).log2() + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn outer_region_holds_every_inner_pentagon(seed in any::<u64>(), codeword in any::<bool>()) {
        let ds = DelaySet::new(0, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ch = random_channel(&mut rng, 2, 2, 2).unwrap();
        let cognition = if codeword { Cognition::Codeword } else { Cognition::Message };
        let cfg = SearchConfig { restarts: 2, ascent_steps: 5, random_samples: 8, seed, ..SearchConfig::default() };
        let inner = search_inner(&ch, ds, &cfg, cognition, &[]).unwrap();
        let seeds: Vec<InnerParams> = inner.trace.iter().map(|e| e.params.clone()).collect();
        let outer = search_outer(&ch, ds, &cfg, cognition, &seeds).unwrap();
        for e in &inner.trace {
            prop_assert!(contains(&outer.hull, &pentagon_vertices(&e.result.pentagon), 1e-9));
        }
    }
}
