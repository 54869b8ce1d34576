use std::sync::OnceLock;

use proptest::prelude::*;

use axial_core::action::ActionModel;
use axial_core::complex::build_projection_complex;
use axial_core::group::{GroupElement, GroupModel};
use axial_core::projections::{AxiomReport, Projector, ProjectionSystem};
use axial_core::wildness::{RadiusLadder, TameStatus, Truncation, TruncationParams};

fn word(max_len: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["a", "A", "b", "B"]), 0..=max_len).prop_map(|v| v.join(" "))
}

fn f2() -> &'static GroupModel {
    static G: OnceLock<GroupModel> = OnceLock::new();
    G.get_or_init(|| GroupModel::free(2))
}

fn z2() -> &'static GroupModel {
    static G: OnceLock<GroupModel> = OnceLock::new();
    G.get_or_init(|| GroupModel::free_abelian(2))
}

fn f2_ladder() -> &'static RadiusLadder {
    static L: OnceLock<RadiusLadder> = OnceLock::new();
    L.get_or_init(|| {
        let g = f2();
        let act = ActionModel::left_regular(g.clone(), g.parse("a").unwrap()).unwrap();
        RadiusLadder::new(&act, &TruncationParams::new(6), 2).unwrap()
    })
}

fn f2_top() -> &'static Truncation {
    f2_ladder().top()
}

fn f2_projections() -> &'static (ProjectionSystem<'static>, AxiomReport) {
    static P: OnceLock<(ProjectionSystem<'static>, AxiomReport)> = OnceLock::new();
    P.get_or_init(|| {
        let ladder = f2_ladder();
        let now = ProjectionSystem::build(ladder.top(), 3).unwrap();
        let prev = ProjectionSystem::build(ladder.prev(), 3).unwrap();
        let report = now.check_axioms(&prev, 0, 0).unwrap();
        (now, report)
    })
}

fn parse(g: &GroupModel, w: &str) -> GroupElement {
    g.parse(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_multiplication_is_associative(x in word(8), y in word(8), z in word(8)) {
        let g = f2();
        let (x, y, z) = (parse(g, &x), parse(g, &y), parse(g, &z));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn abelian_multiplication_is_associative_and_commutative(x in word(8), y in word(8), z in word(8)) {
        let g = z2();
        let (x, y, z) = (parse(g, &x), parse(g, &y), parse(g, &z));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn inverse_is_an_involution(x in word(10)) {
        let g = f2();
        let x = parse(g, &x);
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(x.inverse().len(), x.len());
    }

    #[test]
    fn display_round_trips(x in word(10)) {
        let g = f2();
        let x = parse(g, &x);
        prop_assert_eq!(parse(g, &x.to_string()), x);
    }

    #[test]
    fn powers_add(x in word(4), m in -4i64..=4, n in -4i64..=4) {
        let g = f2();
        let x = parse(g, &x);
        prop_assert_eq!(x.pow(m).mul(&x.pow(n)), x.pow(m + n));
    }

    #[test]
    fn ball_is_nested_and_closed(x in word(6)) {
        let g = f2();
        let x = parse(g, &x);
        let ball = f2_top().ball();
        for r in 0..ball.radius() {
            let inner = ball.within(r);
            prop_assert_eq!(&ball.within(r + 1)[..inner.len()], inner);
        }
        prop_assert_eq!(ball.contains(&x), x.len() <= ball.radius());
        if ball.contains(&x) {
            prop_assert!(ball.contains(&x.inverse()));
        }
    }

    #[test]
    fn translates_shift_block_index(x in word(8), k in -5i64..=5) {
        let act = f2_top().action();
        let x = parse(f2(), &x);
        let gk = act.g().pow(k);
        prop_assert_eq!(act.block_index(&gk.mul(&x)), act.block_index(&x) + k);
    }

    #[test]
    fn coordinate_blocks_partition_z2(x in word(8), k in -5i64..=5) {
        let g = z2();
        let act = ActionModel::left_regular(g.clone(), parse(g, "a")).unwrap();
        let x = parse(g, &x);
        let i = act.block_index(&x);
        prop_assert_eq!(act.block_index(&act.g().pow(-i).mul(&x)), 0);
        prop_assert_eq!(act.block_index(&act.g().pow(k).mul(&x)), i + k);
    }

    #[test]
    fn classification_is_a_dichotomy(x in word(6)) {
        let tr = f2_top();
        let x = parse(f2(), &x);
        let status = tr.classify(&x);
        let interval = tr.witnessed_interval(&x);
        match status {
            TameStatus::TameCertified => {
                prop_assert!(tr.is_tame(&x));
                prop_assert!(tr.center_opt(&x).is_none());
            }
            TameStatus::WildWitnessed => {
                prop_assert!(!tr.is_tame(&x));
                prop_assert!(!interval.is_empty());
            }
            TameStatus::Unknown => prop_assert!(!tr.is_tame(&x) && interval.is_empty()),
        }
        prop_assert_eq!(tr.is_tame(&x), tr.is_tame(&x.inverse()));
    }

    #[test]
    fn intervals_are_sorted_and_centered(x in word(6)) {
        let tr = f2_top();
        let x = parse(f2(), &x);
        let iv = tr.witnessed_interval(&x);
        prop_assert!(iv.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(iv.iter().all(|i| i.abs() <= tr.window()));
        if let Some(c) = tr.center_opt(&x) {
            prop_assert!(iv[0] <= c && c <= *iv.last().unwrap());
        }
    }

    #[test]
    fn coverage_is_found_within_the_window(x in word(4)) {
        let tr = f2_top();
        let w = parse(f2(), &x);
        for i in tr.witnessed_interval(&w) {
            let c = tr.coverage_for(&w, i).unwrap();
            prop_assert!(c.is_some_and(|c| c <= tr.window()));
        }
    }

    #[test]
    fn projection_is_left_equivariant_and_right_invariant(x in word(4), s in -2i64..=2, t in -2i64..=2) {
        let tr = f2_top();
        let p = Projector::new(tr).unwrap();
        let w = parse(f2(), &x);
        let g = tr.action().g();
        let (gs, gt) = (g.pow(s), g.pow(t));
        if let (Ok(base), Ok(moved)) = (p.pi_hat(&w), p.pi_hat(&gs.mul(&w).mul(&gt))) {
            let mut expected: Vec<GroupElement> = base.iter().map(|y| gs.mul(y)).collect();
            expected.sort();
            prop_assert_eq!(moved, expected);
        }
    }
}

#[test]
fn complex_edges_grow_with_k() {
    let (ps, report) = f2_projections();
    let mut prev: Option<Vec<(usize, usize)>> = None;
    for k in 0..=4 {
        let graph = build_projection_complex(ps, report, k).unwrap();
        let edges: Vec<(usize, usize)> = graph.edges().collect();
        if let Some(p) = &prev {
            assert!(p.iter().all(|&(u, v)| graph.has_edge(u, v)), "K = {k}");
        }
        prev = Some(edges);
    }
}

#[test]
fn tame_set_is_closed_under_inverse_and_products() {
    let tr = f2_top();
    let t = &tr.tame_subgroup().t_hat;
    for x in t {
        assert!(tr.is_tame(&x.inverse()));
        for y in t {
            assert!(tr.action().is_tame_exact(&x.mul(y)));
        }
    }
}
