//! Reference example matrices reproduced exactly.

mod common;

use common::golden;

use tmodext::reduction::{extension_invertible, extension_triangular, split_ext0, ReductionMode};
use tmodext::{FieldParams, Fq, Scope, Side, SkewMatrix, TModule};

fn scope(p: u64, symbols: &[&str]) -> Scope {
    let fq = Fq::new(&FieldParams::prime(p)).unwrap();
    let symbols: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
    Scope::new(fq, Side::Tau, &symbols).unwrap()
}

fn matrix(scope: &Scope, rows: &[&[&str]]) -> SkewMatrix {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    scope.parse_matrix(&rows).unwrap()
}

fn module(scope: &Scope, rows: &[&[&str]]) -> TModule {
    TModule::new(matrix(scope, rows)).unwrap()
}

#[test]
fn symbolic_twelve_by_twelve() {
    let s = scope(3, &["a", "b"]);
    let phi = module(&s, &[&["theta", "T^3"], &["a + T^3", "theta"]]);
    let psi = module(&s, &[&["theta + T^2", "0"], &["b", "theta + T"]]);
    let res = extension_invertible(&phi, &psi, ReductionMode::SinglePass).unwrap();
    let want = s.parse_matrix(&golden::twelve("a", "b")).unwrap();
    let got = res.pi.t_matrix();
    for i in 0..12 {
        for j in 0..12 {
            assert_eq!(got.get(i, j), want.get(i, j), "entry ({}, {})", i + 1, j + 1);
        }
    }
}

#[test]
fn ten_by_ten_triangular() {
    let s = scope(5, &["a"]);
    let psi = module(&s, &[&["theta + T", "0"], &["1", "theta + T"]]);
    let phi = module(&s, &[&["theta + T^3", "0"], &["1 + a*T + T^2", "theta + 3*T^2"]]);
    let res = extension_triangular(&phi, &psi, ReductionMode::Fixpoint).unwrap();
    let rows = golden::ten();
    let want = s.parse_matrix(&rows).unwrap();
    let got = res.pi.t_matrix();
    for i in 0..10 {
        for j in 0..10 {
            assert_eq!(got.get(i, j), want.get(i, j), "entry ({}, {})", i + 1, j + 1);
        }
    }
}

#[test]
fn ext0_split_of_numeric_example() {
    let s = scope(3, &[]);
    let phi = module(&s, &[&["theta", "T^3"], &["1 + T^3", "theta"]]);
    let psi = module(&s, &[&["theta + T^2", "0"], &["1", "theta + T"]]);
    let res = extension_invertible(&phi, &psi, ReductionMode::SinglePass).unwrap();
    let want = s.parse_matrix(&golden::twelve("1", "1")).unwrap();
    assert_eq!(res.pi.t_matrix(), &want);
    let split = split_ext0(&res).unwrap();
    assert_eq!(split.s, 1);
    assert_eq!(split.deleted, vec![3]);
    assert_eq!(split.pi0.dim(), 11);
}

// The single sweep leaves `c^(4) T^3` in entry (1,1) of the sixth generator
// after reducing entry (1,2). Sweeping to the fixpoint folds it back in.
#[test]
fn symbolic_twelve_by_twelve_fixpoint() {
    let s = scope(3, &["a", "b"]);
    let phi = module(&s, &[&["theta", "T^3"], &["a + T^3", "theta"]]);
    let psi = module(&s, &[&["theta + T^2", "0"], &["b", "theta + T"]]);

    let single = extension_invertible(&phi, &psi, ReductionMode::SinglePass).unwrap();
    assert_eq!(single.discarded.len(), 1);
    assert_eq!(single.discarded[0].column, 5);
    assert_eq!((single.discarded[0].i, single.discarded[0].j), (0, 0));

    let res = extension_invertible(&phi, &psi, ReductionMode::Fixpoint).unwrap();
    assert!(res.discarded.is_empty());
    let mut rows = golden::twelve("a", "b");
    rows[0][5] = "-a*T^4".into();
    rows[5][5] = "theta + T^6".into();
    rows[9][5] = "b*T^4".into();
    let want = s.parse_matrix(&rows).unwrap();
    assert_eq!(res.pi.t_matrix(), &want);

    for (col, g) in res.ordering.iter().enumerate() {
        let original = res.generator_image(*g).unwrap();
        let moved = res.traces[col].replay(&res.source, &res.target).unwrap();
        assert_eq!(original.sub(&res.reduced[col]).unwrap(), moved, "column {}", col + 1);
        for i in 0..2 {
            for j in 0..2 {
                let d = res.reduced[col].get(i, j).degree();
                assert!(d.is_none_or(|d| d < res.bounds.get(i, j)));
            }
        }
    }
}
