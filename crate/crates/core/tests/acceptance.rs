//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{example_table, family, invertible_corpus};
use lgmk::amodel;
use lgmk::cli;
use lgmk::milnor;
use lgmk::mirror::{self, SearchStatus};
use lgmk::polycore::{self, Polynomial, WeightSystem};
use lgmk::rational::{int, ratio, Rational};
use lgmk::symmetry::{self, GroupElement, SymmetryGroup};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn j_group(w: &Polynomial) -> SymmetryGroup {
    let q = polycore::weights(w).unwrap();
    symmetry::subgroup_generated(w.nvars(), &[GroupElement::from_weights(&q)]).unwrap()
}

fn family_amodel_data() -> Check {
    for n in 3..=12u32 {
        let w = family(n);
        let a = amodel::amodel(&w, &j_group(&w)).map_err(|e| e.to_string())?;
        let n = n as i64;
        ensure(a.dimension() as i64 == 2 * n - 2, || {
            format!("n={n}: dim {} != {}", a.dimension(), 2 * n - 2)
        })?;
        let top = ratio(2 * (2 * n - 4), n);
        ensure(a.top_degree() == Some(&top), || {
            format!("n={n}: top {:?} != {}", a.top_degree(), top)
        })?;
    }
    Ok("n = 3..12: dim 2n-2, top 2(2n-4)/n".into())
}

fn family_gmax() -> Check {
    for n in 3..=12u32 {
        let w = family(n);
        let expected = j_group(&w);
        let snf = symmetry::gmax(&w).map_err(|e| e.to_string())?;
        let brute = symmetry::gmax_bruteforce(&w, n).map_err(|e| e.to_string())?;
        ensure(snf == expected, || {
            format!("n={n}: SNF group has order {}", snf.order())
        })?;
        ensure(brute == expected, || {
            format!("n={n}: brute-force group has order {}", brute.order())
        })?;
    }
    Ok("n = 3..12: SNF and brute force both give <(1/n, 1/n)>".into())
}

fn two_variable_nonexistence() -> Check {
    for n in 4..=50i64 {
        let r = mirror::search_weight_systems(&int(2 * n - 2), &ratio(2 * (2 * n - 4), n), 2, 2)
            .map_err(|e| e.to_string())?;
        ensure(r.status == SearchStatus::NoneExact, || {
            format!("n={n}: {:?}", r.status)
        })?;
    }
    for n in 1..=1000i64 {
        let d = mirror::discriminant_2var(n);
        ensure(d == mirror::discriminant_closed_form(n), || {
            format!("n={n}: discriminant {d}")
        })?;
        let general = mirror::discriminant_general(&int(2 * n - 2), &ratio(2, n)) * int(n * n);
        ensure(d == general, || {
            format!("n={n}: general route gives {general}")
        })?;
    }
    let r =
        mirror::search_weight_systems(&int(4), &ratio(4, 3), 2, 2).map_err(|e| e.to_string())?;
    let third = WeightSystem::new(vec![ratio(1, 3), ratio(1, 3)]).unwrap();
    ensure(r.solutions == vec![third], || {
        format!("n=3: {:?}", r.solutions)
    })?;
    // n = 1: d = 0, s = 2; n = 2: d = 2, s = 1
    let raw1 = mirror::pair_roots(&int(0), &int(2));
    let raw2 = mirror::pair_roots(&int(2), &int(1));
    ensure(raw1 == vec![(int(1), int(1))], || {
        format!("n=1 roots {raw1:?}")
    })?;
    ensure(raw2 == vec![(int(0), int(1))], || {
        format!("n=2 roots {raw2:?}")
    })?;
    ensure(
        mirror::solve_pair(&int(0), &int(2)).is_empty()
            && mirror::solve_pair(&int(2), &int(1)).is_empty(),
        || "n=1,2 roots survived the (0, 1/2] filter".into(),
    )?;
    Ok("NoneExact for n = 4..50; D = -4(2n^3-11n^2+18n-9) for n = 1..1000; (1/3, 1/3) at n = 3; (1,1), (0,1) rejected".into())
}

fn three_variable_reproduction() -> Check {
    let (d, delta) = (int(8), ratio(12, 5));
    let q9 = WeightSystem::new(vec![ratio(1, 9)]).unwrap();
    let top9 = milnor::btop_formula(&q9);
    ensure(top9 == ratio(14, 9) && top9 != delta, || {
        format!("x^9 top degree {top9}")
    })?;
    let b9 = milnor::bmodel(&common::p("x^9")).map_err(|e| e.to_string())?;
    ensure(b9.basis.len() == 8, || {
        "x^9 does not have dimension 8".into()
    })?;
    let m1 = mirror::search_weight_systems(&d, &delta, 1, 60).map_err(|e| e.to_string())?;
    ensure(m1.status == SearchStatus::NoneExact, || {
        format!("m=1: {:?}", m1.status)
    })?;
    let m2 = mirror::search_weight_systems(&d, &delta, 2, 60).map_err(|e| e.to_string())?;
    ensure(m2.status == SearchStatus::NoneExact, || {
        format!("m=2: {:?}", m2.status)
    })?;
    let m3 = mirror::search_weight_systems(&d, &delta, 3, 60).map_err(|e| e.to_string())?;
    ensure(m3.status == SearchStatus::NoneWithinBound, || {
        format!("m=3: {:?}", m3.status)
    })?;
    let boundary = mirror::three_var_discriminant_boundary(&d, &delta, 60);
    ensure(boundary == Some(ratio(1, 9)), || {
        format!("boundary {boundary:?}")
    })?;
    Ok("m=1 rejected (14/9 != 12/5), m=2 NoneExact, m=3 NoneWithinBound at bound 60, boundary q3 = 1/9".into())
}

fn mirror_corpus() -> Check {
    let corpus = invertible_corpus();
    ensure(corpus.len() >= 30, || {
        format!("corpus has only {} polynomials", corpus.len())
    })?;
    for w in &corpus {
        let c = mirror::mirror_comparison(w).map_err(|e| format!("{w}: {e}"))?;
        ensure(c.agrees(), || {
            format!(
                "{w}: A = {} but B(W^T = {}) = {}",
                c.a_side, c.transpose, c.b_side
            )
        })?;
    }
    Ok(format!("{} invertible polynomials", corpus.len()))
}

/// Subgroups of `g` containing `base`.
fn subgroups_over(g: &SymmetryGroup, base: &SymmetryGroup) -> Vec<SymmetryGroup> {
    let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    let mut out = vec![base.clone()];
    seen.insert(base.elements().to_vec());
    let mut i = 0;
    while i < out.len() {
        let h = out[i].clone();
        for e in g.elements() {
            if h.contains(e) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(e.clone());
            let bigger = symmetry::subgroup_generated(g.ambient(), &gens).unwrap();
            if seen.insert(bigger.elements().to_vec()) {
                out.push(bigger);
            }
        }
        i += 1;
    }
    out
}

fn transpose_algebra() -> Check {
    let corpus = invertible_corpus();
    let mut lattice_checks = 0usize;
    for w in &corpus {
        let e = |err: lgmk::Error| format!("{w}: {err}");
        let n = w.nvars();
        let wt = mirror::transpose_polynomial(w).map_err(e)?;
        let gmax = symmetry::gmax(w).map_err(e)?;
        let gmax_t = symmetry::gmax(&wt).map_err(e)?;
        let trivial = SymmetryGroup::trivial(n);
        ensure(
            symmetry::transpose_group(&trivial, w).map_err(e)? == gmax_t,
            || format!("{w}: {{0}}^T"),
        )?;
        ensure(
            symmetry::transpose_group(&gmax, w).map_err(e)? == trivial,
            || format!("{w}: Gmax^T"),
        )?;
        let j = j_group(w);
        ensure(
            symmetry::transpose_group(&j, w).map_err(e)? == symmetry::sl_subgroup(&gmax_t),
            || format!("{w}: <J>^T"),
        )?;
        if n != 2 {
            continue;
        }
        let lattice = subgroups_over(&gmax, &j);
        let transposed: Vec<SymmetryGroup> = lattice
            .iter()
            .map(|g| symmetry::transpose_group(g, w))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        for (g, gt) in lattice.iter().zip(&transposed) {
            let back = symmetry::transpose_group(gt, &wt).map_err(e)?;
            ensure(back == *g, || {
                format!("{w}: (G^T)^T != G for |G| = {}", g.order())
            })?;
        }
        for (g1, g1t) in lattice.iter().zip(&transposed) {
            for (g2, g2t) in lattice.iter().zip(&transposed) {
                if !g1.is_subgroup_of(g2) {
                    continue;
                }
                ensure(g2t.is_subgroup_of(g1t), || format!("{w}: G2^T not in G1^T"))?;
                ensure(g2.order() * g2t.order() == g1.order() * g1t.order(), || {
                    format!("{w}: |G2|/|G1| != |G1^T|/|G2^T|")
                })?;
                let left = symmetry::quotient_invariant_factors(g2, g1).map_err(e)?;
                let right = symmetry::quotient_invariant_factors(g1t, g2t).map_err(e)?;
                ensure(left == right, || {
                    format!("{w}: quotient factors {left:?} vs {right:?}")
                })?;
                lattice_checks += 1;
            }
        }
    }
    Ok(format!(
        "{} polynomials, {} subgroup pairs",
        corpus.len(),
        lattice_checks
    ))
}

fn bendall_property() -> Check {
    let mut count = 0;
    for p in 2..=9u32 {
        for q in 2..=9u32 {
            for r in 1..p {
                // s = q (1 - r/p) must be a positive integer
                if (q * (p - r)) % p != 0 {
                    continue;
                }
                let s = q * (p - r) / p;
                if s == 0 {
                    continue;
                }
                let w = common::poly(&["x", "y"], &[vec![p, 0], vec![0, q], vec![r, s]]);
                let direct = symmetry::gmax(&w).map_err(|e| format!("{w}: {e}"))?;
                let formula = symmetry::bendall_gmax(p, q, r, s).map_err(|e| e.to_string())?;
                let alternative =
                    symmetry::bendall_gmax_alternative(p, q, r, s).map_err(|e| e.to_string())?;
                ensure(formula == direct, || {
                    format!("(p,q,r,s) = ({p},{q},{r},{s}): formula differs")
                })?;
                ensure(alternative == direct, || {
                    format!("(p,q,r,s) = ({p},{q},{r},{s}): alternative differs")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} tuples"))
}

fn milnor_formulas() -> Check {
    let mut polys = invertible_corpus();
    polys.extend(example_table().into_iter().flat_map(|(_, ws)| ws));
    for w in &polys {
        let q = polycore::admissible_weights(w).map_err(|e| format!("{w}: {e}"))?;
        let basis = milnor::milnor_basis(w, &q).map_err(|e| format!("{w}: {e}"))?;
        let dim = Rational::from_integer(basis.len().into());
        ensure(dim == milnor::bdim_formula(&q), || {
            format!("{w}: dim {dim}")
        })?;
        let top = basis
            .iter()
            .map(|m| polycore::monomial_bdegree(m, &q))
            .max();
        ensure(top.as_ref() == Some(&milnor::btop_formula(&q)), || {
            format!("{w}: top {top:?}")
        })?;
    }
    Ok(format!("{} polynomials", polys.len()))
}

fn group_weights() -> Check {
    let mut pairs = 0;
    for (n, ws) in example_table() {
        for (i, w1) in ws.iter().enumerate() {
            for w2 in &ws[i + 1..] {
                let g = j_group(w1);
                let same = amodel::group_weights_compare(w1, w2, &g)
                    .map_err(|e| format!("{w1} / {w2}: {e}"))?;
                ensure(same, || format!("n={n}: {w1} and {w2} differ"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} same-weight pairs"))
}

fn determinism() -> Check {
    let mut outputs = Vec::new();
    for threads in [1, 2, 8] {
        let mut text = String::new();
        for (d, t, m, b) in [
            ("8", "12/5", 3, 60),
            ("4", "4/3", 3, 12),
            ("8", "14/9", 4, 10),
        ] {
            let r = cli::cmd_search(d, t, m, b, threads).map_err(|e| e.to_string())?;
            text += &cli::render(&r, true);
        }
        for (w, g) in [
            ("x^5+y^5+x^4*y", "J"),
            ("x^3+y^3+z^3", "max"),
            ("x^2*y+y^3*z+z^4", "max"),
        ] {
            let r = cli::cmd_amodel(w, g, threads).map_err(|e| e.to_string())?;
            text += &cli::render(&r, true);
            text += &cli::render(&r, false);
        }
        outputs.push(text);
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
        "outputs differ between thread counts".into()
    })?;
    Ok(format!(
        "{} bytes identical for 1, 2, 8 threads",
        outputs[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "family A-model dimension and top degree",
            family_amodel_data,
            Some(Duration::from_secs(5)),
        ),
        ("Gmax of x^n + y^n + x^(n-1)y", family_gmax, None),
        (
            "two-variable nonexistence",
            two_variable_nonexistence,
            Some(Duration::from_secs(1)),
        ),
        (
            "d = 8, delta = 12/5 in 1-3 variables",
            three_variable_reproduction,
            Some(Duration::from_secs(60)),
        ),
        (
            "mirror check on invertible corpus",
            mirror_corpus,
            Some(Duration::from_secs(60)),
        ),
        ("transpose-group algebra", transpose_algebra, None),
        ("Bendall formula", bendall_property, None),
        (
            "Milnor dimension and top degree formulas",
            milnor_formulas,
            None,
        ),
        ("Group-Weights comparison", group_weights, None),
        ("thread-count determinism", determinism, None),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} [{elapsed:.2?}]: {detail}",
                i + 1
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {:>2} FAIL  {name} [{elapsed:.2?}]: {detail}",
                    i + 1
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
