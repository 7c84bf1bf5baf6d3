use diter_core::cases::builtin_cases;
use diter_core::{
    dense_solve_oracle, run_scheme, DenseVector, SchemeKind, SchemeSpec, SparseColumnMatrix, StoppingRule,
    UpdateSequence,
};

const TOL: f64 = 1e-10;

/// Eigenvector of `P` for eigenvalue 1 via `(I - dQ) X = (1 - d) e`, normalized.
fn oracle(case: &diter_core::cases::CaseDefinition) -> DenseVector {
    let pagerank = case.pagerank().unwrap();
    let x = dense_solve_oracle(pagerank.operator(), pagerank.teleport()).unwrap();
    x.scaled(1.0 / x.sigma())
}

/// Brute-force check that `x` is fixed by the dense Google matrix.
fn fixed_by_google(p: &SparseColumnMatrix, x: &DenseVector) -> f64 {
    let n = p.dim();
    let dense = p.to_dense();
    (0..n)
        .map(|i| ((0..n).map(|j| dense[i * n + j] * x[j]).sum::<f64>() - x[i]).abs())
        .sum()
}

#[test]
fn oracle_solution_is_the_stationary_vector() {
    for case in builtin_cases() {
        let x = oracle(&case);
        assert!((x.sigma() - 1.0).abs() <= 1e-10, "{}", case.name);
        assert!(x.iter().all(|&v| v > 0.0));
        let p = case.pagerank().unwrap().google_matrix().unwrap();
        assert!(fixed_by_google(&p, &x) <= 1e-12, "{}", case.name);
    }
}

#[test]
fn classical_schemes_reach_the_oracle() {
    for case in builtin_cases() {
        let target = oracle(&case);
        let pagerank = case.pagerank().unwrap();
        let p = pagerank.google_matrix().unwrap();
        let dq = pagerank.operator().clone();
        let b = pagerank.teleport().clone();
        let e = DenseVector::uniform(5);
        let rr = UpdateSequence::round_robin(5).unwrap();
        let specs = [
            SchemeSpec::power_iteration(p.clone(), e.clone()).unwrap(),
            SchemeSpec::gauss_seidel_linear(p, e, rr.clone()).unwrap(),
            SchemeSpec::jacobi(dq.clone(), b.clone()).unwrap(),
            SchemeSpec::gauss_seidel_affine(dq, b, rr).unwrap(),
        ];
        for spec in specs {
            let run = run_scheme(&spec, &StoppingRule::tolerance(1e-13).with_max_steps(100_000), false).unwrap();
            assert!(run.converged(), "{} {}", case.name, spec.kind());
            let x = run.x.scaled(1.0 / run.x.sigma());
            let err = x.l1_distance(&target).unwrap();
            assert!(err <= 1e-8, "{} {}: {err}", case.name, spec.kind());
        }
    }
}

#[test]
fn diffusion_forms_reach_the_oracle() {
    for case in builtin_cases() {
        let target = oracle(&case);
        let pagerank = case.pagerank().unwrap();
        let rr = UpdateSequence::round_robin(5).unwrap();
        for kind in SchemeKind::ALL {
            let eq = pagerank.diffusion_for(kind, &rr, &DenseVector::uniform(5)).unwrap();
            let run = eq
                .run(StoppingRule::tolerance(1e-13).with_max_steps(1_000_000))
                .unwrap();
            assert!(run.converged(), "{} {kind}", case.name);
            let x = eq.reconstruct(run.state.history()).unwrap();
            let x = x.scaled(1.0 / x.sigma());
            let err = x.l1_distance(&target).unwrap();
            assert!(err <= 1e-8, "{} {kind}: {err}", case.name);
        }
    }
}

#[test]
fn clu_history_error_is_bounded_by_remaining_fluid() {
    let d = 0.85;
    for case in builtin_cases() {
        let pagerank = case.pagerank().unwrap();
        let exact = dense_solve_oracle(pagerank.operator(), pagerank.teleport()).unwrap();
        let eq = pagerank
            .gauss_seidel_affine(&UpdateSequence::round_robin(5).unwrap())
            .unwrap();
        let run = eq.run(StoppingRule::tolerance(TOL)).unwrap();
        assert!(run.converged());
        let residual = run.state.residual();
        assert!(residual <= TOL);
        let err = run.state.history().l1_distance(&exact).unwrap();
        assert!(err <= residual / (1.0 - d) + 1e-15, "{}: {err}", case.name);
    }
}

#[test]
fn jacobi_residual_decays_geometrically() {
    for case in builtin_cases() {
        let eq = case.pagerank().unwrap().jacobi();
        let run = eq.run(StoppingRule::max_steps(40)).unwrap();
        for record in run.trace() {
            let expected = 0.15 * 0.85f64.powi(record.step as i32);
            assert!(
                (record.residual_l1 - expected).abs() <= 1e-14 * expected.max(1.0),
                "{}",
                case.name
            );
        }
    }
}
