//! The reference example matrices, as text rows.

const Z: &str = "0";

/// The 12×12 matrix for `Φ_t = [[θ, τ³], [a + τ³, θ]]`, `Ψ_t = [[θ + τ², 0], [b, θ + τ]]`.
pub fn twelve(a: &str, b: &str) -> Vec<Vec<String>> {
    let a1 = format!("{a}^(1)");
    let d1 = "(theta - theta^(1))*T^2".to_string();
    let mut rows = vec![vec![Z.to_string(); 12]; 12];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = "theta".into();
    }
    let mut set = |i: usize, j: usize, v: String| rows[i - 1][j - 1] = v;
    set(1, 2, format!("-{a}*T^2"));
    set(2, 3, format!("-{a1}*T^2"));
    set(2, 6, d1.clone());
    set(3, 1, "T^2".into());
    set(3, 3, "theta + T^6".into());
    set(3, 5, "T^4".into());
    set(5, 3, d1);
    set(6, 2, "T^4".into());
    set(6, 4, "T^2".into());
    set(7, 1, b.into());
    set(7, 3, format!("{b}*T^4"));
    set(7, 5, format!("{b}*T^2"));
    set(7, 9, format!("-{a}*T"));
    set(8, 2, b.into());
    set(8, 6, format!("{b}*T^2"));
    set(8, 7, "T".into());
    set(8, 12, "T^2".into());
    set(9, 3, b.into());
    set(9, 8, "T".into());
    set(10, 2, format!("{b}*T^2"));
    set(10, 4, b.into());
    set(11, 3, format!("{b}*T^2"));
    set(11, 5, b.into());
    set(11, 9, "T^2".into());
    set(11, 10, "T".into());
    set(12, 6, b.into());
    set(12, 11, "T".into());
    rows
}

/// The 10×10 matrix of the triangular example over `F_5`.
pub fn ten() -> Vec<Vec<String>> {
    let t3 = "-T/3";
    let ta = "-a*T/3";
    let rows: Vec<Vec<&str>> = vec![
        vec!["theta", Z, Z, Z, t3, Z, Z, Z, Z, Z],
        vec!["T", "theta", "T^2", Z, ta, Z, Z, Z, Z, Z],
        vec![Z, "T", "theta", Z, t3, Z, Z, Z, Z, Z],
        vec![Z, Z, Z, "theta", Z, Z, Z, Z, Z, Z],
        vec![Z, Z, Z, "T", "theta + 1/3*T^2", Z, Z, Z, Z, Z],
        vec!["1", Z, "T", Z, Z, "theta", Z, Z, Z, t3],
        vec![Z, "1", Z, Z, Z, "T", "theta", "T^2", Z, ta],
        vec![Z, Z, "1", Z, Z, Z, "T", "theta", Z, t3],
        vec![Z, Z, Z, "1", "T/3", Z, Z, Z, "theta", Z],
        vec![Z, Z, Z, Z, "1", Z, Z, Z, "T", "theta + 1/3*T^2"],
    ];
    rows.into_iter().map(|r| r.into_iter().map(String::from).collect()).collect()
}
