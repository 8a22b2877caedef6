mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tmodext::closed_form::{pi_matrix, DrinfeldPair};
use tmodext::reduction::{
    coefficient_form, extension_auto, extension_dual, extension_invertible, extension_triangular,
    reduce_invertible, split_ext0, substitute_generator, DegreeBounds, Method, ReductionMode,
};
use tmodext::{Error, Hypothesis, Scope, Side, SkewMatrix, TModule};

const FIX: ReductionMode = ReductionMode::Fixpoint;

fn scope(p: u64) -> Scope {
    Scope::new(common::fq(p), Side::Tau, &["a".to_string(), "b".to_string()]).unwrap()
}

fn m(s: &Scope, rows: &[&[&str]]) -> SkewMatrix {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    s.parse_matrix(&rows).unwrap()
}

fn module(s: &Scope, rows: &[&[&str]]) -> TModule {
    TModule::new(m(s, rows)).unwrap()
}

fn example_pair(s: &Scope) -> (TModule, TModule) {
    (
        module(s, &[&["theta", "T^3"], &["a + T^3", "theta"]]),
        module(s, &[&["theta + T^2", "0"], &["b", "theta + T"]]),
    )
}

#[test]
fn reduced_input_is_left_alone() {
    let s = scope(3).allowing_generator();
    let (phi, psi) = example_pair(&s);
    let v = m(&s, &[&["c*T^2", "a"], &["0", "theta*c + T"]]);
    let (r, trace) = reduce_invertible(&v, &phi, &psi, FIX).unwrap();
    assert_eq!(r, v);
    assert!(trace.steps.is_empty());
}

#[test]
fn third_column_of_the_worked_example() {
    let s = scope(3);
    let (phi, psi) = example_pair(&s);
    let res = extension_invertible(&phi, &psi, FIX).unwrap();
    let col: Vec<String> = (0..12).map(|i| res.pi.t_matrix().get(i, 2).to_string()).collect();
    let want = ["0", "-a^(1)*T^2", "theta + T^6", "0", "(theta - theta^(1))*T^2", "0", "b*T^4", "0", "b", "0", "b*T^2", "0"];
    for (got, want) in col.iter().zip(want) {
        assert_eq!(s.parse_poly(got).unwrap(), s.parse_poly(want).unwrap());
    }
    let t = res.pi.t_matrix();
    assert_eq!(t.get(0, 1), &s.parse_poly("-a*T^2").unwrap());
    assert_eq!(t.get(1, 5), &s.parse_poly("(theta - theta^(1))*T^2").unwrap());
    assert_eq!(t.get(6, 8), &s.parse_poly("-a*T").unwrap());
}

#[test]
fn coefficient_form_examples() {
    let s = scope(3).allowing_generator();
    let v = m(&s, &[&["a + b*T"]]);
    let x = coefficient_form(&v, &DegreeBounds::uniform(1, 1, 2)).unwrap();
    assert_eq!(x, vec![s.parse_coeff("a").unwrap(), s.parse_coeff("b").unwrap()]);
    let v = m(&s, &[&["0", "theta*c"], &["0", "b*c"]]);
    let x = coefficient_form(&v, &DegreeBounds::uniform(2, 2, 3)).unwrap();
    assert_eq!(x.len(), 12);
    assert_eq!(x[3], s.parse_coeff("theta*c").unwrap());
    assert_eq!(x[9], s.parse_coeff("b*c").unwrap());
    assert!(x.iter().enumerate().all(|(i, c)| i == 3 || i == 9 || c.is_zero()));
    assert!(coefficient_form(&m(&s, &[&["T^2"]]), &DegreeBounds::uniform(1, 1, 2)).is_err());
}

#[test]
fn generator_substitution() {
    let s = scope(3).allowing_generator();
    let sub = |e: &str| substitute_generator(&s.parse_coeff(e).unwrap(), Side::Tau).unwrap();
    assert_eq!(sub("theta*c"), s.parse_poly("theta").unwrap());
    assert_eq!(sub("b*c^(2)"), s.parse_poly("b*T^2").unwrap());
    assert_eq!(sub("(theta - theta^(1))*c^(2)"), s.parse_poly("(theta - theta^(1))*T^2").unwrap());
    assert!(substitute_generator(&s.parse_coeff("c^2").unwrap(), Side::Tau).is_err());
    assert!(substitute_generator(&s.parse_coeff("c + 1").unwrap(), Side::Tau).is_err());
}

#[test]
fn carlitz_extension_of_rank_two() {
    let s = scope(3);
    let phi = module(&s, &[&["theta + T^2"]]);
    let psi = module(&s, &[&["theta + T"]]);
    let res = extension_invertible(&phi, &psi, FIX).unwrap();
    assert_eq!(res.pi.dim(), 2);
    let closed = pi_matrix(&DrinfeldPair::from_modules(&phi, &psi).unwrap()).unwrap();
    assert_eq!(res.pi, closed.pi);
    let split = split_ext0(&res).unwrap();
    assert_eq!(split.s, 1);
}

#[test]
fn triangular_route_agrees_on_drinfeld_pairs() {
    let s = scope(5);
    let phi = module(&s, &[&["theta + T^3"]]);
    let psi = module(&s, &[&["theta + T"]]);
    let a = extension_triangular(&phi, &psi, FIX).unwrap();
    let b = extension_invertible(&phi, &psi, FIX).unwrap();
    assert_eq!(a.pi, b.pi);
}

#[test]
fn triangular_dimension_is_the_sum_of_diagonal_degrees() {
    let s = scope(5);
    let psi = module(&s, &[&["theta + T", "0"], &["1", "theta + T"]]);
    let phi = module(&s, &[&["theta + T^3", "0"], &["1 + a*T + T^2", "theta + 3*T^2"]]);
    let res = extension_triangular(&phi, &psi, FIX).unwrap();
    assert_eq!(res.pi.dim(), (3 + 2) * 2);
    assert!(split_ext0(&res).is_err());
}

#[test]
fn zero_nilpotents_give_full_pair_count() {
    let s = scope(3);
    let phi = module(&s, &[&["theta + T^3", "T"], &["T^2", "theta + a*T + 2*T^3"]]);
    let psi = module(&s, &[&["theta + T", "0"], &["0", "theta + b*T"]]);
    let res = extension_invertible(&phi, &psi, FIX).unwrap();
    assert_eq!(split_ext0(&res).unwrap().s, 4);
}

#[test]
fn empty_target_gives_the_zero_module() {
    let s = scope(3);
    let phi = module(&s, &[&["theta + T^2"]]);
    let zero = TModule::zero(common::fq(3), Side::Tau);
    let res = extension_invertible(&phi, &zero, FIX).unwrap();
    assert_eq!(res.pi.dim(), 0);
}

#[test]
fn dual_route_mirrors_the_direct_one() {
    let s = scope(3);
    let res = extension_dual(&module(&s, &[&["theta + T"]]), &module(&s, &[&["theta + T^2"]]), FIX).unwrap();
    assert_eq!(res.side(), Side::Sigma);
    assert_eq!(res.method, Method::Dual);
    let direct = extension_invertible(&module(&s, &[&["theta + T^2"]]), &module(&s, &[&["theta + T"]]), FIX).unwrap();
    assert_eq!(res.pi.mirror(), direct.pi);
}

#[test]
fn dual_route_needs_a_larger_target() {
    let s = scope(3);
    let (phi, _) = example_pair(&s);
    let err = extension_dual(&phi, &module(&s, &[&["theta + T^3", "0"], &["0", "theta + T"]]), FIX).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { hypothesis: Hypothesis::AdjointStrictlyPure, .. }));
}

#[test]
fn adjoint_round_trip_of_both_modules() {
    let s = scope(3);
    let (phi, psi) = example_pair(&s);
    let (a, b) = (psi.adjoint(), phi.adjoint());
    assert_eq!((a.adjoint(), b.adjoint()), (psi, phi));
}

// For a τ-pair (φ, ψ) the dual route on (ψ', φ') with ψ' = (mirror ψ)^τ
// computes on (mirror ψ, mirror φ), whose mirror image is the direct result.
#[test]
fn dual_symmetry_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..25 {
        let fq = common::fq([2, 3, 5][rng.gen_range(0..3)]);
        let d = rng.gen_range(1..=2);
        let e = rng.gen_range(1..=2);
        let deg = rng.gen_range(2..=3);
        let phi = common::rand_strictly_pure(&mut rng, fq, d, deg, &["a"]);
        let psi = common::rand_module(&mut rng, fq, e, deg - 1, &["b"]);
        let direct = extension_invertible(&phi, &psi, FIX).unwrap();
        let phi_d = psi.mirror().adjoint();
        let psi_d = phi.mirror().adjoint();
        let dual = extension_dual(&phi_d, &psi_d, FIX).unwrap();
        assert_eq!(dual.pi.mirror(), direct.pi);
    }
}

#[test]
fn auto_tries_each_route_in_turn() {
    let s = scope(5);
    let (phi, psi) = example_pair(&s);
    assert_eq!(extension_auto(&phi, &psi, FIX).unwrap().method, Method::Inverse);
    let tri_psi = module(&s, &[&["theta + T", "0"], &["1", "theta + T"]]);
    let tri_phi = module(&s, &[&["theta + T^3", "0"], &["1 + a*T + T^2", "theta + 3*T^2"]]);
    assert_eq!(extension_auto(&tri_phi, &tri_psi, FIX).unwrap().method, Method::Triangular);
    let small = module(&s, &[&["theta + T"]]);
    let big = module(&s, &[&["theta + T^2"]]);
    assert_eq!(extension_auto(&small, &big, FIX).unwrap().method, Method::Dual);
    let err = extension_auto(&small, &small, FIX).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
    assert!(err.is_hypothesis());
}

#[test]
fn generator_symbol_is_rejected_in_inputs() {
    let s = scope(3).allowing_generator();
    let phi = module(&s, &[&["theta + c*T^2"]]);
    let psi = module(&s, &[&["theta + T"]]);
    assert!(matches!(extension_invertible(&phi, &psi, FIX), Err(Error::ReservedSymbol(_))));
}

#[test]
fn singular_leading_matrix_is_a_hypothesis_error() {
    let s = scope(3);
    let phi = module(&s, &[&["theta + T^2", "T"], &["T", "theta"]]);
    let psi = module(&s, &[&["theta + T"]]);
    let err = extension_invertible(&phi, &psi, FIX).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { hypothesis: Hypothesis::StrictlyPure, .. }));
}

#[test]
fn single_pass_matches_fixpoint_when_nothing_is_discarded() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let fq = common::fq(3);
        let phi = common::rand_strictly_pure(&mut rng, fq, 2, 2, &["a"]);
        let psi = common::rand_module(&mut rng, fq, 1, 1, &["b"]);
        let a = extension_invertible(&phi, &psi, ReductionMode::SinglePass).unwrap();
        let b = extension_invertible(&phi, &psi, FIX).unwrap();
        if a.discarded.is_empty() {
            assert_eq!(a.pi, b.pi);
        }
    }
}
