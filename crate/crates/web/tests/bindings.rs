use intertwine_web::{eigenvalue_curve, intertwining_residual, spectrum_grid};

#[test]
fn grid_matches_hand_values() {
    // p = q = 1, r = 1/2: μ(1,1) = 3 on the even class.
    let grid = spectrum_grid(1, 1, 0.5, 2, 2, 0).unwrap();
    assert_eq!(grid.len(), 9);
    assert!((grid[0] - 1.0).abs() < 1e-14);
    assert!((grid[4] - 3.0).abs() < 1e-13);
    assert!(grid[1].is_nan(), "odd type in even grid");
}

#[test]
fn grid_marks_poles() {
    let grid = spectrum_grid(1, 2, 1.5, 2, 2, 0).unwrap();
    assert_eq!(grid[0], 1.0);
    assert!(grid[2].is_nan() && grid[4].is_nan());
}

#[test]
fn curve_is_one_at_zero_order_and_at_base() {
    let curve = eigenvalue_curve(2, 3, 3, 1, -1.0, 1.0, 5).unwrap();
    assert!((curve[2] - 1.0).abs() < 1e-14);
    let base = eigenvalue_curve(2, 3, 0, 0, -2.0, 2.0, 9).unwrap();
    assert!(base.iter().all(|x| (x - 1.0).abs() < 1e-14));
}

#[test]
fn residual_is_small() {
    assert!(intertwining_residual(2, 3, 0.37, 6, 1).unwrap() < 1e-10);
}

#[test]
fn invalid_signature_is_an_error() {
    assert!(spectrum_grid(0, 1, 0.5, 2, 2, 0).is_err());
}
