use sasakian::chart::FlatChart;
use sasakian::curvature::Depth;
use sasakian::manifolds::{
    adapted_frame, chart_geometry, darboux_geometry, express_in_frame, horizontal_project, sample_point,
    sample_vectors, space_form_geometry, structure_h, DarbouxChart, ExteriorConvention, GeometryAtPoint,
    GeometryOptions, InputClass,
};
use sasakian::manifolds::sampling::stream_rng;
use sasakian::{Error, Tensor, Vector};

fn points(m: usize, count: u64) -> Vec<Vec<f64>> {
    (0..count).map(|i| sample_point(7, i, 2 * m + 1)).collect()
}

fn phi_squared_defect(geom: &GeometryAtPoint) -> f64 {
    let phi = geom.phi.to_matrix().unwrap();
    let n = geom.n;
    let xi = geom.xi_vec();
    let eta = geom.eta.as_vector();
    let expect = -nalgebra::DMatrix::<f64>::identity(n, n) + &xi * eta.transpose();
    (&phi * &phi - expect).amax()
}

#[test]
fn darboux_contact_metric_axioms() {
    for m in 1..=3 {
        for p in points(m, 5) {
            let geom = darboux_geometry(m, &p).unwrap();
            let xi = geom.xi_vec();
            assert!((geom.eta_of(&xi) - 1.0).abs() < 1e-12);
            assert!((geom.gp(&xi, &xi) - 1.0).abs() < 1e-12);
            assert!(geom.phi_of(&xi).amax() < 1e-12);
            assert!(phi_squared_defect(&geom) < 1e-12);
            // dη(X,Y) = g(X,φY)
            let gphi = Tensor::from_fn(geom.n, 0, 2, |i| {
                (0..geom.n).map(|c| geom.g.get(&[i[0], c]) * geom.phi.get(&[c, i[1]])).sum()
            });
            assert!(geom.d_eta.max_diff(&gphi).unwrap() < 1e-12);
        }
    }
}

#[test]
fn unit_exterior_convention_breaks_phi_squared() {
    // Pins the ½ convention: with the factor-1 derivative φ² = -4I on the
    // horizontal distribution instead of -I.
    let chart = DarbouxChart::new(2).unwrap();
    let p = sample_point(1, 0, 5);
    let half = chart_geometry(&chart, &p, GeometryOptions { depth: Depth::Riemann, ..Default::default() }).unwrap();
    let unit = chart_geometry(
        &chart,
        &p,
        GeometryOptions { depth: Depth::Riemann, convention: ExteriorConvention::Unit },
    )
    .unwrap();
    assert!(phi_squared_defect(&half) < 1e-12);
    assert!(phi_squared_defect(&unit) > 1.0);
}

#[test]
fn sasakian_condition_on_both_backends() {
    let mut geoms: Vec<GeometryAtPoint> = points(2, 5).iter().map(|p| darboux_geometry(2, p).unwrap()).collect();
    geoms.push(space_form_geometry(2, -3.0).unwrap());
    geoms.push(space_form_geometry(3, 0.7).unwrap());
    for geom in geoms {
        let mut rng = stream_rng(3, 0);
        for _ in 0..10 {
            let v = sample_vectors(&geom, InputClass::Arbitrary, 2, &mut rng);
            let (x, y) = (&v[0], &v[1]);
            let lhs = geom.r(x, y, &geom.xi_vec());
            let rhs = x * geom.eta_of(y) - y * geom.eta_of(x);
            assert!((lhs - rhs).amax() < 1e-10);
        }
    }
}

#[test]
fn ricci_along_xi() {
    for (m, geom) in [(1, darboux_geometry(1, &[0.3, -0.4, 0.9]).unwrap()), (2, space_form_geometry(2, 5.0).unwrap())] {
        let n = (2 * m + 1) as f64;
        let xi = geom.xi_vec();
        assert!((geom.s(&xi, &xi) - (n - 1.0)).abs() < 1e-10);
    }
    let geom = darboux_geometry(2, &[0.1, 0.2, 0.3, 0.4, 0.5]).unwrap();
    assert!((geom.s(&geom.xi_vec(), &geom.xi_vec()) - 4.0).abs() < 1e-10);
}

#[test]
fn darboux_matches_space_form_minus_three() {
    for m in 1..=3 {
        let model = space_form_geometry(m, -3.0).unwrap();
        for p in points(m, 4) {
            let geom = darboux_geometry(m, &p).unwrap();
            let f = adapted_frame(&geom).unwrap();
            let r = express_in_frame(&geom.riemann, &f).unwrap();
            let s = express_in_frame(&geom.ricci, &f).unwrap();
            let phi = express_in_frame(&geom.phi, &f).unwrap();
            let g = express_in_frame(&geom.g, &f).unwrap();
            assert!(g.max_diff(&model.g).unwrap() < 1e-12);
            assert!(phi.max_diff(&model.phi).unwrap() < 1e-12);
            assert!(r.max_diff(&model.riemann).unwrap() < 1e-8, "m={m}");
            assert!(s.max_diff(&model.ricci).unwrap() < 1e-8);
            assert!((geom.scalar - model.scalar).abs() < 1e-8);
        }
    }
}

#[test]
fn space_form_unit_is_constant_curvature() {
    let geom = space_form_geometry(2, 1.0).unwrap();
    let n = geom.n;
    let expect = Tensor::from_fn(n, 0, 4, |i| {
        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        d(i[1], i[2]) * d(i[0], i[3]) - d(i[0], i[2]) * d(i[1], i[3])
    });
    assert_eq!(geom.riemann_flat.max_diff(&expect).unwrap(), 0.0);
    assert!(geom.ricci.max_diff(&(&geom.g * 4.0)).unwrap() < 1e-15);
}

#[test]
fn killing_characteristic_field() {
    let chart = DarbouxChart::new(2).unwrap();
    for p in points(2, 20) {
        let h = structure_h(&chart, &p).unwrap();
        let geom = darboux_geometry(2, &p).unwrap();
        let gh = h.lower_index(0, &geom.g).unwrap();
        let asym = gh.permute(&sasakian::Permutation::transposition(2, 0, 1).unwrap()).unwrap();
        assert!(gh.max_diff(&asym).unwrap() < 1e-10);
        assert!(h.max_norm() < 1e-10);
    }
}

#[test]
fn flat_chart_has_no_h() {
    let err = structure_h(&FlatChart { dim: 3 }, &[0.0, 0.0, 0.0]).unwrap_err();
    assert!(matches!(err, Error::NotApplicable(_)));
}

#[test]
fn horizontal_projection() {
    let geom = darboux_geometry(2, &[0.5, -0.2, 0.1, 0.7, -0.9]).unwrap();
    assert!(horizontal_project(&geom, &geom.xi_vec()).amax() < 1e-15);
    let v = Vector::from_vec(vec![0.3, -0.1, 0.8, 0.2, 0.5]);
    let h = horizontal_project(&geom, &v);
    assert!((horizontal_project(&geom, &h) - &h).amax() < 1e-14);
    assert!(geom.eta_of(&h).abs() < 1e-14);
    let phi2 = geom.phi_of(&geom.phi_of(&h));
    assert!((phi2 + &h).amax() < 1e-12);
}

#[test]
fn metric_compatibility_and_torsion() {
    for p in points(2, 20) {
        let geom = darboux_geometry(2, &p).unwrap();
        assert!(geom.nabla_metric.as_ref().unwrap().max_norm() < 1e-12);
        let gamma = geom.christoffel.as_ref().unwrap();
        let swapped = gamma.permute(&sasakian::Permutation::new(vec![0, 2, 1]).unwrap()).unwrap();
        assert!(gamma.max_diff(&swapped).unwrap() < 1e-12);
    }
}
