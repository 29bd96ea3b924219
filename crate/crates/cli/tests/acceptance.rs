//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Every numeric comparison is exact; the only
//! tolerances are the runtime budgets below.

use std::process::{Command as Process, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use bmy_core::cover::{first_exceeding_nine, limit_ratio, search_counterexamples, Construction};
use bmy_core::plane::incidence_stats_with_cap;
use bmy_core::primes::primes_minus_one_mod;
use bmy_core::{
    BigInt, BigRational, BuildingData, FSet, Group, IntPolynomial, MultiplicityMap,
    RationalFunction, SectionCounts,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `((q, n), numerator, denominator)`, coefficients ascending.
type Display = ((u64, u64), [i64; 4], [i64; 4]);

const PAIRS: [(u64, u64); 6] = [(3, 3), (3, 4), (5, 3), (5, 4), (7, 3), (7, 4)];
const LIMIT_BUDGET: Duration = Duration::from_secs(10);
const SEARCH_BUDGET: Duration = Duration::from_secs(60);
/// Smallest admissible p with K̃²/χ > 9 for q = n = 3, canonical F, r = 1.
const SMALLEST_P_ABOVE_NINE: u64 = 29;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `q^(n−2)(q²−1)`.
fn k2_lead(q: u64, n: u64) -> BigInt {
    num_traits::pow(big(q), (n - 2) as usize) * (big(q * q) - 1)
}

fn symbolic(q: u64, n: u64) -> Result<BuildingData<IntPolynomial>, String> {
    let g = Group::new(q, n).map_err(err)?;
    BuildingData::assemble_symbolic(&g, SectionCounts::default(), None).map_err(err)
}

fn c1_limits() -> Outcome {
    let start = Instant::now();
    for (q, n) in PAIRS {
        let g = Group::new(q, n).map_err(err)?;
        let l = limit_ratio(&g, SectionCounts::default(), None).map_err(err)?;
        ensure(l == BigRational::from_integer(big(12)), || {
            format!("R({q},{n}) = {l}")
        })?;
    }
    let t = start.elapsed();
    ensure(t < LIMIT_BUDGET, || {
        format!("took {t:?}, budget {LIMIT_BUDGET:?}")
    })?;
    Ok(format!(
        "R(q,n) = 12 for all six pairs in {:.2}s",
        t.as_secs_f64()
    ))
}

fn c2_leading() -> Outcome {
    for (q, n) in PAIRS {
        let data = symbolic(q, n)?;
        let k2 = data.k_tilde_squared().map_err(err)?;
        let chi = data.chi_tilde().map_err(err)?;
        let lead = k2_lead(q, n);
        ensure(
            k2.degree() == Some(3) && k2.leading_coefficient() == Some(&lead),
            || format!("({q},{n}) K^2 = {k2}"),
        )?;
        let chi_lead = BigRational::new(lead, big(12));
        ensure(
            chi.degree() == Some(3) && chi.leading_coefficient() == Some(&chi_lead),
            || format!("({q},{n}) chi = {chi}"),
        )?;
        if (q, n) == (3, 3) {
            ensure(
                k2.coeff(3) == big(24) && chi.coeff(3) == BigRational::from_integer(big(2)),
                || "(3,3) leading coefficients are not 24 and 2".into(),
            )?;
        }
    }
    Ok("K^2 ~ q^(n-2)(q^2-1) p^3, chi ~ q^(n-2)(q^2-1)/12 p^3; (3,3): 24, 2".into())
}

fn c3_estimates() -> Outcome {
    for (q, n) in PAIRS {
        let data = symbolic(q, n)?;
        let e = data.asymptotic_estimates().map_err(err)?;
        let cubic = |p: &IntPolynomial, lead: i64| {
            p.degree() == Some(3) && p.leading_coefficient() == Some(&BigInt::from(lead))
        };
        ensure(e.k_s_squared.degree().unwrap_or(0) <= 2, || {
            format!("({q},{n}) K_S^2 = {}", e.k_s_squared)
        })?;
        ensure(cubic(&e.k_s_dot_sum, 1), || {
            format!("({q},{n}) K_S.sum D = {}", e.k_s_dot_sum)
        })?;
        ensure(cubic(&e.sum_squared, -1), || {
            format!("({q},{n}) (sum D)^2 = {}", e.sum_squared)
        })?;
        let lead = BigRational::new(k2_lead(q, n), big(6));
        ensure(
            e.self_product_sum.degree() == Some(3)
                && e.self_product_sum.leading_coefficient() == Some(&lead),
            || format!("({q},{n}) sum L.(L+K_S) = {}", e.self_product_sum),
        )?;
    }
    Ok("K_S^2 = O(p^2), K_S.sum D = p^3+.., (sum D)^2 = -p^3+.., sum L.(L+K_S) = q^(n-2)(q^2-1)/6 p^3+..".into())
}

/// `Σ_γ L_γ·(L_γ + K_S)` straight from the definitions: every `D(σ)` over
/// `G`, the lifted pairing, division by `q` and the intersection form.
fn brute_force_self_products(data: &BuildingData<BigInt>) -> Result<BigInt, String> {
    let g = data.group();
    let q = big(g.q() as u64);
    let p = data.p().clone();
    let n_pts = &p * &p + &p + 1;
    let divisors: Vec<_> = g.elements().map(|s| data.divisor(&s)).collect();
    let mut total = BigInt::zero();
    for gamma in g.elements() {
        let (mut h, mut e) = (BigInt::zero(), BigInt::zero());
        for (sigma, d) in g.elements().zip(&divisors) {
            let w = BigInt::from(g.pairing(&gamma, &sigma).map_err(err)?);
            h += &w * &d.h;
            e += &w * &d.e;
        }
        ensure((&h % &q).is_zero() && (&e % &q).is_zero(), || {
            format!("q L_{gamma} not divisible")
        })?;
        let (h, e) = (h / &q, e / &q);
        total += &h * (&h - 3) - &n_pts * &e * (&e + 1);
    }
    Ok(total)
}

fn c4_dual_path() -> Outcome {
    let mut count = 0;
    for q in [3u64, 5] {
        let g = Group::new(q, 3).map_err(err)?;
        let c = Arc::new(Construction::new(&g, SectionCounts::default(), None).map_err(err)?);
        for p in primes_minus_one_mod(q, 2, 200) {
            let data = BuildingData::at_prime(c.clone(), p).map_err(err)?;
            let expansion = data.sum_l_self_products().map_err(err)?;
            let direct = brute_force_self_products(&data)?;
            ensure(expansion == direct, || {
                format!("q={q} p={p}: {expansion} vs {direct}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (q,p) cases, exact equality"))
}

fn c5_cover_condition() -> Outcome {
    let (mut positive, mut negative) = (0, 0);
    for q in [3u64, 5] {
        let g = Group::new(q, 3).map_err(err)?;
        let f = FSet::canonical(&g);
        let m = MultiplicityMap::solve(&f).map_err(err)?;
        let base = Arc::new(Construction::from_parts(
            f.clone(),
            m.clone(),
            SectionCounts::default(),
        ));
        let mutants: Vec<Arc<Construction>> = f
            .line_carriers()
            .iter()
            .flat_map(|s| (1..q as u32).map(move |k| (s.clone(), k)))
            .map(|(s, k)| {
                let mut broken = m.clone();
                broken.set(&s, broken.get(&s) + k);
                Arc::new(Construction::from_parts(
                    f.clone(),
                    broken,
                    SectionCounts::default(),
                ))
            })
            .collect();
        for p in primes_minus_one_mod(q, 2, 200) {
            let data = BuildingData::from_parts(base.clone(), big(p));
            ensure(data.check_cover_condition().pass, || {
                format!("q={q} p={p}: valid data rejected")
            })?;
            positive += 1;
            for c in &mutants {
                ensure(!c.multiplicities().weighted_sum().is_zero(), || {
                    "mutant still balanced".into()
                })?;
                let data = BuildingData::from_parts(c.clone(), big(p));
                ensure(!data.check_cover_condition().pass, || {
                    format!("q={q} p={p}: mutant accepted")
                })?;
                negative += 1;
            }
        }
    }
    Ok(format!(
        "{positive} valid cases pass, {negative} single-m mutants fail"
    ))
}

fn c6_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut count = 0;
    for (q, n) in PAIRS {
        let g = Group::new(q, n).map_err(err)?;
        for _ in 0..20 {
            let f = FSet::random(&g, &mut rng);
            let m = MultiplicityMap::solve(&f).map_err(err)?;
            let c = m.conditions(&f);
            ensure(c.unit_at_e1 && c.supported_on_f && c.zero_sum, || {
                format!("({q},{n}): {c:?}")
            })?;
            let mut acc = vec![0u64; n as usize];
            for s in g.elements() {
                for (slot, x) in acc.iter_mut().zip(s.coords()) {
                    *slot += m.get(&s) as u64 * *x as u64;
                }
            }
            ensure(acc.iter().all(|a| a % q == 0), || {
                format!("({q},{n}): coordinate sums {acc:?}")
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} random F-sets, conditions and coordinate sums hold"
    ))
}

fn c7_choice_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let twelve = BigRational::from_integer(big(12));
    for q in [3u64, 5] {
        let g = Group::new(q, 3).map_err(err)?;
        for _ in 0..10 {
            let f = FSet::random(&g, &mut rng);
            let mut r = SectionCounts::uniform(rng.gen_range(0..=3));
            for s in f.line_carriers() {
                r.set(s, rng.gen_range(0..=3));
            }
            let l = limit_ratio(&g, r, Some(f)).map_err(err)?;
            ensure(l == twelve, || format!("q={q}: limit {l}"))?;
        }
    }
    Ok("limit 12 for 10 random (F, r) per q in {3, 5}".into())
}

fn c8_desk_scale() -> Outcome {
    let start = Instant::now();
    let g = Group::new(3, 3).map_err(err)?;
    let rows = search_counterexamples(&g, 2, 2000, SectionCounts::default(), None).map_err(err)?;
    let t = start.elapsed();
    let nine = BigRational::from_integer(big(9));
    let witnesses: Vec<_> = rows
        .iter()
        .filter(|r| r.ratio > nine && r.bigness_margin > BigInt::zero() && r.certificates_pass)
        .collect();
    ensure(!witnesses.is_empty(), || "no prime with ratio > 9".into())?;
    let smallest = first_exceeding_nine(&rows);
    ensure(smallest == Some(SMALLEST_P_ABOVE_NINE), || {
        format!("smallest p = {smallest:?}")
    })?;
    ensure(t < SEARCH_BUDGET, || {
        format!("took {t:?}, budget {SEARCH_BUDGET:?}")
    })?;
    Ok(format!(
        "{} of {} admissible primes exceed 9, smallest p = {SMALLEST_P_ABOVE_NINE}, {:.2}s",
        witnesses.len(),
        rows.len(),
        t.as_secs_f64()
    ))
}

fn c9_incidence() -> Outcome {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let s = incidence_stats_with_cap(p, 13).map_err(err)?;
        let total = p * p + p + 1;
        ensure(
            s.points == total
                && s.lines == total
                && s.points_per_line == p + 1
                && s.lines_per_point == p + 1,
            || format!("p={p}: {s:?}"),
        )?;
    }
    Ok("p in {2,3,5,7,11,13}: p^2+p+1 points and lines, p+1 incidences each".into())
}

fn c10_displays() -> Outcome {
    let poly = |c: [i64; 4]| IntPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect());
    let displays: [Display; 6] = [
        (
            (3, 3),
            [3 * 7568, 3 * 351, 3 * 351, 3 * 8],
            [3023, 134, 134, 2],
        ),
        ((5, 3), [497024, 5647, 5647, 24], [63197, 708, 708, 2]),
        ((7, 3), [7112888, 32015, 32015, 48], [896249, 4006, 4006, 4]),
        (
            (3, 4),
            [3 * 91808, 3 * 1215, 3 * 1215, 3 * 8],
            [35045, 458, 458, 2],
        ),
        (
            (5, 4),
            [13727024, 29647, 29647, 24],
            [1721447, 3708, 3708, 2],
        ),
        (
            (7, 4),
            [365995160, 229583, 229583, 48],
            [45800437, 28702, 28702, 4],
        ),
    ];
    for ((q, n), num, den) in displays {
        let ours = symbolic(q, n)?.ratio().map_err(err)?;
        let expected = RationalFunction::new(poly(num), poly(den)).map_err(err)?;
        ensure(ours.is_identical(&expected), || {
            format!("({q},{n}): got {ours}")
        })?;
    }
    Ok("all six normalized rational functions match exactly with the lexicographic F".into())
}

fn c11_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_bmy");
    let max = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .max(8);
    let run = |argv: &[&str], threads: usize| -> Result<Vec<u8>, String> {
        let out = Process::new(bin)
            .args(argv)
            .args(["--format", "json", "--threads", &threads.to_string()])
            .output()
            .map_err(err)?;
        ensure(out.status.success(), || {
            format!("{argv:?} exited {:?}", out.status.code())
        })?;
        Ok(out.stdout)
    };
    let cases: [&[&str]; 3] = [
        &["verify", "--q", "3", "--n", "3"],
        &["verify", "--q", "5", "--n", "3", "--p", "29"],
        &["verify", "--q", "3", "--n", "4"],
    ];
    for argv in cases {
        let serial = run(argv, 1)?;
        let parallel = run(argv, max)?;
        ensure(serial == parallel, || {
            format!("{argv:?}: serial and {max}-thread output differ")
        })?;
        ensure(!serial.is_empty(), || "empty output".into())?;
    }
    Ok(format!(
        "verify JSON byte-identical with 1 and {max} threads ({} configs)",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("limit reproduction", c1_limits),
        ("leading coefficients", c2_leading),
        ("asymptotic estimates", c3_estimates),
        ("dual-path oracle", c4_dual_path),
        ("cover condition", c5_cover_condition),
        ("multiplicity solver", c6_solver),
        ("choice independence", c7_choice_independence),
        ("ratio above nine at desk scale", c8_desk_scale),
        ("incidence geometry", c9_incidence),
        ("display reproduction", c10_displays),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
