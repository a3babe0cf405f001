use polydiag::catalog;
use polydiag::dynamics::{
    equivariance_check, integrate, integrate_with, invariance_test, invariance_test_from, CoupledSystem,
    EquivarianceStatus, InvarianceOptions, Preset, RealMatrix, TwistedSubspace,
};
use polydiag::invariance::{invariant_polydiagonals, InvarianceChecker};
use polydiag::linalg::{int, RationalMatrix};
use polydiag::partitions::{enumerate_tagged_partitions, TaggedPartition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vdp_h() -> RealMatrix {
    RealMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap()
}

fn random_network<R: Rng>(rng: &mut R) -> RationalMatrix {
    let n = rng.gen_range(2..=4);
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
    RationalMatrix::from_ints(&rows)
}

fn opts(seed: u64, t_end: f64) -> InvarianceOptions {
    InvarianceOptions {
        trials: 2,
        dt: 1e-2,
        t_end,
        tol: 1e-6,
        seed,
    }
}

/// Checks every invariant subspace selected by `keep`; blow-ups are
/// inconclusive and only counted.
fn check_family(
    preset: Preset,
    h: RealMatrix,
    keep: impl Fn(&polydiag::partitions::SubspaceClass) -> bool,
    t_end: f64,
    seed: u64,
) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut inconclusive) = (0, 0);
    for trial in 0..30 {
        let m = random_network(&mut rng);
        let sys = CoupledSystem::new(preset.clone(), h.clone(), RealMatrix::from_rational(&m).scaled(0.5)).unwrap();
        for e in invariant_polydiagonals(&m).unwrap().entries.iter().filter(|e| keep(&e.class)) {
            let s = TwistedSubspace::new(e.partition.clone(), sys.k(), None).unwrap();
            let r = invariance_test(&sys, &s, &opts(trial, t_end)).unwrap();
            if r.completed == 0 {
                inconclusive += 1;
                continue;
            }
            assert!(r.max_distance <= 1e-6, "{preset} {m:?} {s}: {r:?}");
            checked += 1;
        }
    }
    (checked, inconclusive)
}

#[test]
fn odd_internal_dynamics_preserve_every_invariant_subspace() {
    let (a, _) = check_family(Preset::vanderpol(2.0), vdp_h(), |_| true, 50.0, 1);
    let (b, _) = check_family(Preset::CubicOdd { k: 1 }, RealMatrix::identity(1), |_| true, 50.0, 2);
    assert!(a > 80 && b > 80);
}

#[test]
fn synchrony_subspaces_for_any_internal_dynamics() {
    let sync = |c: &polydiag::partitions::SubspaceClass| c.synchrony;
    let (a, _) = check_family(Preset::vanderpol(2.0), vdp_h(), sync, 50.0, 3);
    // round-off grows at the Lorenz Lyapunov rate off the subspace, so the
    // horizon is shorter
    let (b, _) = check_family(Preset::lorenz(), RealMatrix::diagonal(&[0.0, 1.0, 0.0]), sync, 20.0, 4);
    assert!(a > 25 && b > 25);
}

#[test]
fn minimally_tagged_subspaces_when_f_fixes_origin() {
    let minimal = |c: &polydiag::partitions::SubspaceClass| c.minimally_tagged;
    let (a, _) = check_family(Preset::lorenz(), RealMatrix::diagonal(&[0.0, 1.0, 0.0]), minimal, 50.0, 5);
    let (b, _) = check_family(Preset::lorenz(), RealMatrix::diagonal(&[0.0, 0.0, 1.0]), minimal, 50.0, 6);
    assert!(a > 30 && b > 30);
}

#[test]
fn non_invariant_subspaces_are_left() {
    for m in [catalog::lap_dirichlet(), catalog::two_cell_adjacency(), catalog::golub()] {
        let checker = InvarianceChecker::new(&m).unwrap();
        let sys = CoupledSystem::new(Preset::vanderpol(2.0), vdp_h(), RealMatrix::from_rational(&m).scaled(0.5)).unwrap();
        for p in enumerate_tagged_partitions(m.rows(), None) {
            if checker.is_invariant(&p).unwrap() {
                continue;
            }
            let s = TwistedSubspace::new(p, 2, None).unwrap();
            let r = invariance_test(&sys, &s, &opts(0, 20.0)).unwrap();
            assert!(r.max_distance > 1e-2, "{s}: {r:?}");
        }
    }
}

#[test]
fn singular_oscillators_stay_in_freely_tagged_sets() {
    let g = catalog::d3_cayley(int(1), int(1));
    let a = g.adjacency_matrix();
    let sys = CoupledSystem::new(Preset::SingularOsc, vdp_h(), RealMatrix::from_rational(&a).scaled(0.2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut checked = 0;
    for e in invariant_polydiagonals(&a).unwrap().entries.iter().filter(|e| e.class.freely_tagged) {
        let s = TwistedSubspace::new(e.partition.clone(), 2, None).unwrap();
        // an odd map of each u keeps the point in the subspace and away from 0
        let starts: Vec<Vec<f64>> = (0..2)
            .map(|_| {
                let mut x = s.sample(&mut rng);
                for cell in 0..6 {
                    let u = x[2 * cell];
                    x[2 * cell] = u.signum() * (0.5 + u.abs());
                }
                x
            })
            .collect();
        let r = invariance_test_from(&sys, &s, &starts, 1e-3, 20.0, 1e-6).unwrap();
        assert!(r.passed && r.blowups.is_empty(), "{s}: {r:?}");
        assert!(r.min_abs_first_coordinate > 0.0);
        checked += 1;
    }
    assert!(checked > 5);
}

#[test]
fn rk4_is_fourth_order() {
    let sys = CoupledSystem::new(
        Preset::vanderpol(2.0),
        vdp_h(),
        RealMatrix::from_rational(&catalog::two_cell_adjacency()).scaled(0.5),
    )
    .unwrap();
    let x0 = [1.0, 0.5, -0.3, 0.2];
    let end = |dt: f64| integrate_with(&sys, &x0, dt, 2.0, |_, _| {}).unwrap();
    let (a, b, c) = (end(0.02), end(0.01), end(0.005));
    let diff = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let ratio = diff(&a, &b) / diff(&b, &c);
    assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn single_lorenz_cell_is_bounded() {
    let sys = CoupledSystem::new(Preset::lorenz(), RealMatrix::zeros(3, 3), RealMatrix::zeros(1, 1)).unwrap();
    let traj = integrate(&sys, &[1.0, 1.0, 1.0], 1e-3, 50.0).unwrap();
    let max = traj.states.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(max > 10.0 && max < 100.0, "{max}");
}

#[test]
fn coupled_van_der_pol_is_bounded() {
    let sys = CoupledSystem::new(
        Preset::vanderpol(2.0),
        vdp_h(),
        RealMatrix::from_rational(&catalog::two_cell_adjacency()).scaled(0.5),
    )
    .unwrap();
    let traj = integrate(&sys, &[0.1, 0.0, -1.0, 0.5], 1e-3, 50.0).unwrap();
    // the uncoupled first cell settles on the limit cycle of amplitude about 2
    let tail = &traj.coordinate(0, 0)[40_000..];
    let amp = tail.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(amp > 1.9 && amp < 2.1, "{amp}");
    let max = traj.states.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(max < 10.0, "{max}");
}

fn lorenz_pair(h: [f64; 3], kappa: f64) -> CoupledSystem {
    let m = RealMatrix::from_rational(&catalog::two_cell_symmetric_laplacian()).scaled(kappa);
    CoupledSystem::new(Preset::lorenz(), RealMatrix::diagonal(&h), m).unwrap()
}

#[test]
fn lorenz_cell_symmetry() {
    let n = RealMatrix::diagonal(&[-1.0, -1.0, 1.0]);
    for cell in 0..2 {
        let r = equivariance_check(&lorenz_pair([0.0, 0.0, 1.0], -2.0), &n, cell, 200, 3).unwrap();
        assert!(r.passed() && r.hn_equals_h && r.nh_equals_h, "{r:?}");
    }
    let r = equivariance_check(&lorenz_pair([0.0, 1.0, 0.0], 2.0), &n, 0, 200, 3).unwrap();
    assert!(matches!(r.status, EquivarianceStatus::HypothesisFailure(_)));
    assert!(r.nh_equals_minus_h && !r.nh_equals_h);
}

#[test]
fn twisted_subspace_for_lorenz_coupling() {
    // NH = -H with N² = I, so the twisted subspace is invariant
    let n = RealMatrix::diagonal(&[-1.0, -1.0, 1.0]);
    let s = TwistedSubspace::new(TaggedPartition::parse_typical_element("(a,-a)").unwrap(), 3, Some(n)).unwrap();
    for kappa in [-2.0, 2.0] {
        let r = invariance_test(&lorenz_pair([0.0, 1.0, 0.0], kappa), &s, &opts(9, 50.0)).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn trivial_equivariance_without_coupling() {
    let sys = CoupledSystem::new(Preset::Zero { k: 3 }, RealMatrix::zeros(3, 3), RealMatrix::identity(3)).unwrap();
    let r = equivariance_check(&sys, &RealMatrix::diagonal(&[1.0, -1.0, 1.0]), 2, 20, 0).unwrap();
    assert!(r.passed());
}
