#![allow(dead_code)]

use lgmk::polycore::{self, Classification, Monomial, Polynomial};
use lgmk::rational::Rational;
use num_traits::One;

pub fn poly(vars: &[&str], rows: &[Vec<u32>]) -> Polynomial {
    Polynomial::new(
        vars.iter().map(|s| s.to_string()).collect(),
        rows.iter()
            .map(|r| (Rational::one(), Monomial::new(r.clone()))),
    )
    .unwrap()
}

pub fn p(s: &str) -> Polynomial {
    polycore::parse_polynomial(s).unwrap()
}

fn keep_invertible(out: &mut Vec<Polynomial>, w: Polynomial) {
    if polycore::classify(&w) == Classification::Invertible && !out.contains(&w) {
        out.push(w);
    }
}

/// Fermat sums, chains and loops in at most three variables, exponents <= 7.
pub fn invertible_corpus() -> Vec<Polynomial> {
    let mut out = Vec::new();
    let xy = ["x", "y"];
    let xyz = ["x", "y", "z"];
    for a in 2..=7 {
        keep_invertible(&mut out, poly(&["x"], &[vec![a]]));
    }
    for a in 2..=7 {
        for b in a..=7 {
            keep_invertible(&mut out, poly(&xy, &[vec![a, 0], vec![0, b]]));
        }
    }
    for a in 2..=7 {
        for b in 2..=7 {
            // chain x^a y + y^b, x^a + x y^b
            keep_invertible(&mut out, poly(&xy, &[vec![a, 1], vec![0, b]]));
            if a + b <= 9 {
                keep_invertible(&mut out, poly(&xy, &[vec![a, 0], vec![1, b]]));
            }
        }
    }
    for a in 2..=6 {
        for b in a..=6 {
            keep_invertible(&mut out, poly(&xy, &[vec![a, 1], vec![1, b]]));
        }
    }
    for (a, b, c) in [(2, 2, 2), (2, 3, 4), (3, 3, 3), (2, 5, 3), (4, 4, 2)] {
        keep_invertible(
            &mut out,
            poly(&xyz, &[vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]]),
        );
    }
    for (a, b, c) in [(2, 2, 2), (3, 2, 2), (2, 3, 3), (3, 3, 2), (4, 2, 3)] {
        keep_invertible(
            &mut out,
            poly(&xyz, &[vec![a, 1, 0], vec![0, b, 1], vec![0, 0, c]]),
        );
    }
    for (a, b, c) in [(2, 2, 2), (3, 2, 2), (2, 3, 4), (3, 3, 3)] {
        keep_invertible(
            &mut out,
            poly(&xyz, &[vec![a, 1, 0], vec![0, b, 1], vec![1, 0, c]]),
        );
    }
    for (a, b, c) in [(3, 2, 3), (2, 4, 3)] {
        // Fermat plus chain
        keep_invertible(
            &mut out,
            poly(&xyz, &[vec![a, 0, 0], vec![0, b, 1], vec![0, 0, c]]),
        );
    }
    out
}

/// The example polynomials listed for n = 4, 5, 6, 7, grouped by weight system.
pub fn example_table() -> Vec<(i64, Vec<Polynomial>)> {
    vec![
        (
            4,
            vec![
                p("x^4 + y^4 + x^3*y"),
                p("x^4 + x^2*y^2 + x*y^3"),
                p("x^4 + x*y^3"),
            ],
        ),
        (
            5,
            vec![
                p("x^5 + y^5 + x^4*y"),
                p("x^4*y + x*y^4 + x^3*y^2 + x^2*y^3"),
                p("x^5 + x^2*y^3 + x*y^4"),
            ],
        ),
        (
            6,
            vec![
                p("x^6 + y^6 + x^5*y"),
                p("x^5*y + x^4*y^2 + y^6"),
                p("x^6 + x^2*y^4 + x*y^5 + y^6"),
            ],
        ),
        (
            7,
            vec![
                p("x^7 + y^7 + x^6*y"),
                p("x^6*y + x^5*y^2 + y^7"),
                p("x^6*y + x*y^6"),
            ],
        ),
    ]
}

/// `x^n + y^n + x^(n-1) y`.
pub fn family(n: u32) -> Polynomial {
    poly(&["x", "y"], &[vec![n, 0], vec![0, n], vec![n - 1, 1]])
}
