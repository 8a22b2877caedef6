mod common;

use tmodext::tmodule::is_morphism;
use tmodext::{KMatrix, RationalCoeff, Scope, Side, SkewMatrix, TModule};

fn scope(p: u64) -> Scope {
    Scope::new(common::fq(p), Side::Tau, &["a".to_string(), "b".to_string()]).unwrap()
}

fn m(s: &Scope, rows: &[&[&str]]) -> SkewMatrix {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    s.parse_matrix(&rows).unwrap()
}

fn k(s: &Scope, rows: &[&[&str]]) -> KMatrix {
    m(s, rows).constant_term()
}

#[test]
fn worked_example_module() {
    let s = scope(3);
    let phi = TModule::new(m(&s, &[&["theta", "T^3"], &["1 + T^3", "theta"]])).unwrap();
    assert_eq!(phi.nilpotent(), &k(&s, &[&["0", "0"], &["1", "0"]]));
    assert_eq!(phi.degree(), 3);
    let a = k(&s, &[&["0", "1"], &["1", "0"]]);
    assert_eq!(phi.leading_matrix(), a);
    assert!(phi.is_strictly_pure());
    assert_eq!(phi.leading_inverse().unwrap(), Some(a));
}

#[test]
fn symbolic_nilpotent_part() {
    let s = scope(3);
    let psi = TModule::new(m(&s, &[&["theta + T^2", "0"], &["b", "theta + T"]])).unwrap();
    assert_eq!(psi.nilpotent(), &k(&s, &[&["0", "0"], &["b", "0"]]));
    assert_eq!(psi.degree(), 2);
}

#[test]
fn unit_on_the_diagonal_is_not_nilpotent() {
    let s = scope(3);
    assert!(TModule::new(m(&s, &[&["theta + 1", "0"], &["0", "theta"]])).is_err());
    assert!(TModule::new(m(&s, &[&["theta^(1)"]])).is_err());
}

#[test]
fn singular_leading_matrix() {
    let s = scope(3);
    let phi = TModule::new(m(&s, &[&["theta + T^2", "T"], &["T", "theta"]])).unwrap();
    assert_eq!(phi.leading_matrix(), k(&s, &[&["1", "0"], &["0", "0"]]));
    assert!(!phi.is_strictly_pure());
    let carlitz = TModule::new(m(&s, &[&["theta + T"]])).unwrap();
    assert_eq!(carlitz.leading_matrix(), k(&s, &[&["1"]]));
}

#[test]
fn product_with_a_generator() {
    let s = scope(3).allowing_generator();
    let psi = m(&s, &[&["theta + T^2", "0"], &["b", "theta + T"]]);
    let g = m(&s, &[&["0", "c"], &["0", "0"]]);
    assert_eq!(psi.mul(&g).unwrap(), m(&s, &[&["0", "theta*c + c^(2)*T^2"], &["0", "b*c"]]));
    let id = SkewMatrix::identity(common::fq(3), Side::Tau, 2);
    assert_eq!(id.mul(&g).unwrap(), g);
}

#[test]
fn adjoint_of_modules() {
    let s = scope(3);
    let sg = s.clone().on_side(Side::Sigma);
    let x = TModule::new(m(&s, &[&["theta + a*T"]])).unwrap();
    assert_eq!(x.adjoint().t_matrix(), &m(&sg, &[&["theta + a^(-1)*S"]]));
    let phi = TModule::new(m(&s, &[&["theta", "T^3"], &["a + T^3", "theta"]])).unwrap();
    assert_eq!(phi.adjoint().adjoint(), phi);
    let y = TModule::new(m(&s, &[&["theta", "T"], &["0", "theta"]])).unwrap();
    assert_eq!(y.adjoint().t_matrix(), &m(&sg, &[&["theta", "0"], &["S", "theta"]]));
}

#[test]
fn isomorphism_between_extensions() {
    let s = scope(3);
    let a = TModule::new(m(&s, &[&["theta", "T"], &["T", "theta"]])).unwrap();
    let b = TModule::new(m(&s, &[&["theta + T", "0"], &["T", "theta - T"]])).unwrap();
    let f = m(&s, &[&["1", "1"], &["0", "1"]]);
    assert!(is_morphism(&f, &a, &b).unwrap());
    assert!(!is_morphism(&f, &b, &a).unwrap());
    let id = SkewMatrix::identity(common::fq(3), Side::Tau, 2);
    assert!(is_morphism(&id, &a, &a).unwrap());
    let c1 = TModule::new(m(&s, &[&["theta + T"]])).unwrap();
    let c2 = TModule::new(m(&s, &[&["theta + T^2"]])).unwrap();
    assert!(!is_morphism(&m(&s, &[&["1"]]), &c1, &c2).unwrap());
}

// f is a morphism Ψ → Φ exactly when f^σ is a morphism Φ^σ → Ψ^σ.
#[test]
fn adjoint_reverses_morphisms() {
    let s = scope(3);
    let a = TModule::new(m(&s, &[&["theta", "T"], &["T", "theta"]])).unwrap();
    let b = TModule::new(m(&s, &[&["theta + T", "0"], &["T", "theta - T"]])).unwrap();
    let f = m(&s, &[&["1", "1"], &["0", "1"]]);
    assert!(is_morphism(&f.adjoint(), &b.adjoint(), &a.adjoint()).unwrap());
    let g = m(&s, &[&["1", "T"], &["0", "1"]]);
    assert_eq!(is_morphism(&g, &a, &b).unwrap(), is_morphism(&g.adjoint(), &b.adjoint(), &a.adjoint()).unwrap());
}

#[test]
fn triangular_assembly() {
    let s = scope(5);
    let q = TModule::new(m(&s, &[&["theta + T"]])).unwrap();
    let sub = TModule::new(m(&s, &[&["theta - T"]])).unwrap();
    let e = TModule::assemble_triangular(&q, &sub, &m(&s, &[&["T"]])).unwrap();
    assert_eq!(e.t_matrix(), &m(&s, &[&["theta + T", "0"], &["T", "theta - T"]]));
    let split = TModule::assemble_triangular(&q, &sub, &m(&s, &[&["0"]])).unwrap();
    assert_eq!(split, TModule::direct_sum(common::fq(5), Side::Tau, &[q.clone(), sub.clone()]).unwrap());

    let top = TModule::new(m(&s, &[&["theta + T^3"]])).unwrap();
    let bottom = TModule::new(m(&s, &[&["theta + 3*T^2"]])).unwrap();
    let phi = TModule::assemble_triangular(&top, &bottom, &m(&s, &[&["1 + a*T + T^2"]])).unwrap();
    assert_eq!(phi.t_matrix(), &m(&s, &[&["theta + T^3", "0"], &["1 + a*T + T^2", "theta + 3*T^2"]]));
}

#[test]
fn zero_module_is_neutral_for_direct_sums() {
    let s = scope(3);
    let fq = common::fq(3);
    let z = TModule::zero(fq, Side::Tau);
    assert_eq!(z.dim(), 0);
    let c = TModule::new(m(&s, &[&["theta + T"]])).unwrap();
    assert_eq!(TModule::direct_sum(fq, Side::Tau, &[z.clone(), c.clone(), z]).unwrap(), c);
}

#[test]
fn constant_term_is_theta_plus_nilpotent() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let fq = common::fq(3);
        let x = common::rand_module(&mut rng, fq, 3, 3, &["a"]);
        let c = x.t_matrix().constant_term();
        let mut n = c.clone();
        for i in 0..3 {
            n.set(i, i, c.get(i, i).sub(&RationalCoeff::theta(fq, 0)));
        }
        assert_eq!(&n, x.nilpotent());
        assert!(n.pow(3).unwrap().is_zero());
        assert_eq!(Some(x.degree()), x.t_matrix().degree().or(Some(0)));
    }
}
