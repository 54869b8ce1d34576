//! Independent reference computations, checked against the library.
//!
//! The free group here is modelled directly on strings over `aAbB`, with a
//! stack reducer and brute-force loops; none of it goes through the
//! library's word arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use axial_core::action::ActionModel;
use axial_core::complex::{hyperbolicity_delta, TruncGraph};
use axial_core::group::{GroupElement, GroupModel};
use axial_core::wildness::{Truncation, TruncationParams};

fn inv_char(c: char) -> char {
    if c.is_ascii_lowercase() {
        c.to_ascii_uppercase()
    } else {
        c.to_ascii_lowercase()
    }
}

fn reduce(s: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for c in s.chars() {
        if out.last() == Some(&inv_char(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out.into_iter().collect()
}

fn inv(s: &str) -> String {
    s.chars().rev().map(inv_char).collect()
}

fn mul(x: &str, y: &str) -> String {
    reduce(&format!("{x}{y}"))
}

fn a_pow(n: i64) -> String {
    let c = if n >= 0 { "a" } else { "A" };
    c.repeat(n.unsigned_abs() as usize)
}

/// Exponent of the leading power of `a`.
fn idx(s: &str) -> i64 {
    let first = s.chars().next();
    let run = s.chars().take_while(|&c| Some(c) == first).count() as i64;
    match first {
        Some('a') => run,
        Some('A') => -run,
        _ => 0,
    }
}

fn reduced_words(n: usize) -> Vec<String> {
    let mut all = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for c in ['a', 'A', 'b', 'B'] {
                if !w.ends_with(inv_char(c)) {
                    next.push(format!("{w}{c}"));
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn spell(x: &GroupElement) -> String {
    let mut s = String::new();
    for &c in x.free_letters().unwrap() {
        s.push(['a', 'A', 'b', 'B'][c as usize]);
    }
    s
}

fn spaced(s: &str) -> String {
    let mut out = String::from("e");
    for c in s.chars() {
        out.push(' ');
        out.push(c);
    }
    out
}

#[test]
fn ball_matches_reduced_word_enumeration() {
    let g = GroupModel::free(2);
    for n in 0..=5u32 {
        let ball = g.ball(n, 1 << 20).unwrap();
        let ours: BTreeSet<String> = ball.iter().map(spell).collect();
        let oracle: BTreeSet<String> = reduced_words(n as usize).into_iter().collect();
        assert_eq!(ours, oracle, "radius {n}");
    }
    let ball = g.ball(6, 1 << 20).unwrap();
    assert_eq!(ball.within(1).len(), 5);
    assert_eq!(ball.within(2).len(), 17);
    for n in 1..=6u32 {
        assert_eq!(ball.sphere(n).len(), 4 * 3usize.pow(n - 1));
    }
}

#[test]
fn reducer_agrees_with_normal_form() {
    let g = GroupModel::free(2);
    let words = ["aAbB", "abBAba", "AAAaaab", "bbBBaBba", "abababABABAB", "BaaAAbbbAAa"];
    for w in words {
        let x = g.parse(&spaced(w)).unwrap();
        assert_eq!(spell(&x), reduce(w), "{w}");
    }
    let small = reduced_words(3);
    for x in &small {
        for y in &small {
            let p = g.parse(&spaced(x)).unwrap().mul(&g.parse(&spaced(y)).unwrap());
            assert_eq!(spell(&p), mul(x, y));
        }
    }
}

/// The witnessed interval, by direct search over the ball.
fn oracle_interval(ball: &[String], w: &str, radius: i64) -> Vec<i64> {
    let window = 2 * radius;
    let tau = (radius + 1) / 2;
    let winv = inv(w);
    let mut best: BTreeMap<i64, i64> = BTreeMap::new();
    for y in ball {
        let i = idx(&mul(&winv, y));
        if i.abs() > window {
            continue;
        }
        let dev = (idx(y) - idx(&mul(w, &a_pow(i)))).abs();
        let e = best.entry(i).or_insert(-1);
        *e = (*e).max(dev);
    }
    best.into_iter().filter(|&(_, d)| d >= tau).map(|(i, _)| i).collect()
}

fn is_power_of_a(s: &str) -> bool {
    s.chars().all(|c| c == 'a') || s.chars().all(|c| c == 'A')
}

/// Smallest `m` such that the points outside `w D_[i-m, i+m]` have block
/// indices inside one `[n - m, n + m]`.
fn oracle_coverage(ball: &[String], w: &str, i: i64, window: i64) -> Option<i64> {
    let winv = inv(w);
    for m in 0..=window {
        let outside: Vec<i64> = ball
            .iter()
            .filter(|y| (idx(&mul(&winv, y)) - i).abs() > m)
            .map(|y| idx(y))
            .collect();
        if (-window..=window).any(|n| outside.iter().all(|&v| (v - n).abs() <= m)) {
            return Some(m);
        }
    }
    None
}

fn oracle_m(ball: &[String], h: &str, radius: i64) -> Option<i64> {
    let window = 2 * radius;
    let set: BTreeSet<&String> = ball.iter().collect();
    let mut value = 0;
    for u in ball {
        if is_power_of_a(u) {
            continue;
        }
        let iu = oracle_interval(ball, u, radius);
        if iu.is_empty() {
            continue;
        }
        let w = mul(&inv(h), u);
        if !set.contains(&w) || is_power_of_a(&w) || oracle_interval(ball, &w, radius).is_empty() {
            continue;
        }
        for i in iu {
            value = value.max(oracle_coverage(ball, &w, i, window)?);
        }
    }
    Some(value)
}

fn f2_truncation(radius: u32) -> (GroupModel, Truncation) {
    let g = GroupModel::free(2);
    let act = ActionModel::left_regular(g.clone(), g.parse("a").unwrap()).unwrap();
    let tr = Truncation::new(&act, TruncationParams::new(radius)).unwrap();
    (g, tr)
}

#[test]
fn witnessed_intervals_match_oracle() {
    let radius = 4;
    let (_, tr) = f2_truncation(radius);
    let ball = reduced_words(radius as usize);
    for x in tr.ball().iter() {
        let s = spell(x);
        assert_eq!(tr.witnessed_interval(x), oracle_interval(&ball, &s, radius as i64), "I({s})");
        assert_eq!(tr.is_tame(x), is_power_of_a(&s), "tameness of {s}");
    }
}

#[test]
fn m_estimates_match_oracle() {
    let radius = 4;
    let (g, tr) = f2_truncation(radius);
    let ball = reduced_words(radius as usize);
    for h in ["", "a", "A", "b", "B", "ab", "ba", "bab", "baab"] {
        let x = g.parse(&spaced(h)).unwrap();
        assert_eq!(
            tr.m_estimate(&x).value,
            oracle_m(&ball, h, radius as i64),
            "m({h})"
        );
    }
}

#[test]
fn frozen_constants_for_f2() {
    // Oracle values at radius 4, frozen.
    let ball = reduced_words(4);
    assert_eq!(oracle_m(&ball, "", 4), Some(0));
    assert_eq!(oracle_m(&ball, "b", 4), Some(0));
    assert_eq!(oracle_m(&ball, "ab", 4), Some(0));
    assert_eq!(oracle_m(&ball, "bab", 4), Some(1));
}

fn brute_delta_twice(n: usize, edges: &[(usize, usize)]) -> u32 {
    const INF: u32 = u32::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut best = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
                    s.sort_unstable();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    best
}

#[test]
fn four_point_delta_matches_brute_force() {
    let cycle = |n: usize| -> Vec<(usize, usize)> { (0..n).map(|i| (i, (i + 1) % n)).collect() };
    let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
        (6, cycle(6)),
        (7, cycle(7)),
        (8, cycle(8)),
        (5, (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect()),
        (7, vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]),
        // 3x3 grid
        (9, vec![(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8)]),
    ];
    for (n, edges) in cases {
        let graph = TruncGraph::from_edges(n, &edges);
        let d = hyperbolicity_delta(&graph, 100).unwrap();
        assert_eq!(d.twice, brute_delta_twice(n, &edges), "{edges:?}");
    }
    // C6 has delta exactly 1.
    assert_eq!(brute_delta_twice(6, &cycle(6)), 2);
}
