//! Catalog entries. Each builder returns the legs of one identity in
//! cross-multiplied form; constants are written as (2πi)-powers times
//! elements of Q(ζ₅), e.g. 2⁴π⁴ = (2πi)⁴ and −8√5π² = 2√5·(2πi)².

use num_bigint::BigInt;

use super::build::{ch, d_tau, lin, mul, n, nonvanishing, pow, q, quadratic, s5, two_pi_i, z, Ctx, Leg};
use super::{IdentityEntry, Variant};
use crate::arithfn::{partitions_upto, DivisorKernel};
use crate::error::Result;
use crate::exact::{int, BigRat, CycloQ5};
use crate::qseries::{series_mul, series_sub, FracSeries};
use crate::theta::{catalog_chars, char_shift_phase, theta_const, theta_const_product, ThetaChar};

const AS_STATED: &[Variant] = &[Variant::AsStated];
const BOTH: &[Variant] = &[Variant::AsStated, Variant::Corrected];

fn entry<F>(id: &'static str, title: &'static str, location: &'static str, variants: &[Variant], min: i64, f: F) -> IdentityEntry
where
    F: Fn(&Ctx, Variant) -> Result<Vec<Leg>> + Send + Sync + 'static,
{
    IdentityEntry { id, title, location, variants: variants.to_vec(), min_order: int(min), builder: Box::new(f) }
}

/// θ[a]·θ[b] pair data shared by several families.
#[derive(Clone)]
struct Pair {
    a: ThetaChar,
    b: ThetaChar,
}

impl Pair {
    fn new(a: (i64, i64), b: (i64, i64)) -> Self {
        Pair { a: ch(a.0, a.1), b: ch(b.0, b.1) }
    }
}

// Characteristic pairs in fifths.
const P_1_13: ((i64, i64), (i64, i64)) = ((5, 1), (5, 3));
const P_35_15: ((i64, i64), (i64, i64)) = ((3, 5), (1, 5));
const P_11_33: ((i64, i64), (i64, i64)) = ((1, 1), (3, 3));
const P_13_39: ((i64, i64), (i64, i64)) = ((1, 3), (3, 9));
const P_17_31: ((i64, i64), (i64, i64)) = ((1, 7), (3, 1));
const P_19_37: ((i64, i64), (i64, i64)) = ((1, 9), (3, 7));
const P_15_35: ((i64, i64), (i64, i64)) = ((1, 5), (3, 5));

/// P⁴·(A¹⁰ + c₁A⁵B⁵ + c₂B¹⁰) = (2πi)⁴·u·A¹¹B¹¹
fn jacobi_main(ctx: &Ctx, pair: &Pair, u: CycloQ5, c1: CycloQ5, c2: CycloQ5) -> Result<Vec<Leg>> {
    let a = ctx.th(&pair.a, 0)?;
    let b = ctx.th(&pair.b, 0)?;
    let p = ctx.p()?;
    let a5 = pow(&a, 5);
    let b5 = pow(&b, 5);
    let den = quadratic(&a5, &b5, n(1), c1, c2)?;
    let den = nonvanishing(den, "the quintic denominator")?;
    let lhs = series_mul(&pow(&p, 4), &den);
    let rhs = two_pi_i(&mul(&[&pow(&a, 11), &pow(&b, 11)]), 4).mul_scalar(&u);
    Ok(vec![Leg::new("cross-multiplied", lhs, rhs)])
}

/// 10·θ′[x]·A³B³ = c·θ[x]·P·(k₁A⁵ + k₂B⁵), x ∈ {A, B}
fn derivative_formula(ctx: &Ctx, pair: &Pair, first: bool, c: CycloQ5, k1: CycloQ5, k2: CycloQ5) -> Result<Vec<Leg>> {
    let a = ctx.th(&pair.a, 0)?;
    let b = ctx.th(&pair.b, 0)?;
    let p = ctx.p()?;
    let x = if first { &pair.a } else { &pair.b };
    let x0 = if first { &a } else { &b };
    let x1 = ctx.th(x, 1)?;
    let ab3 = nonvanishing(pow(&series_mul(&a, &b), 3), "the cubic denominator")?;
    let lhs = series_mul(&x1, &ab3).mul_scalar(&n(10));
    let num = lin(&[(k1, &pow(&a, 5)), (k2, &pow(&b, 5))])?;
    let rhs = mul(&[x0, &p, &num]).mul_scalar(&c);
    Ok(vec![Leg::new("cross-multiplied", lhs, rhs)])
}

/// Zero-residue relations for φ = θ²[a]θ[b]/θ³[1;1] (`first`) and the
/// companion ψ, cleared of the denominators A²B²P.
fn residue_relation(ctx: &Ctx, pair: &Pair, first: bool) -> Result<Vec<Leg>> {
    let (a0, a1, a2) = (ctx.th(&pair.a, 0)?, ctx.th(&pair.a, 1)?, ctx.th(&pair.a, 2)?);
    let (b0, b1, b2) = (ctx.th(&pair.b, 0)?, ctx.th(&pair.b, 1)?, ctx.th(&pair.b, 2)?);
    let p1 = ctx.p()?;
    let p3 = ctx.th(&ch(5, 5), 3)?;
    let a2b2 = pow(&series_mul(&a0, &b0), 2);
    // A″/A ↦ A″·A·B²·P, and so on.
    let t_a2 = mul(&[&a2, &a0, &b0, &b0, &p1]);
    let t_b2 = mul(&[&b2, &b0, &a0, &a0, &p1]);
    let t_ab = mul(&[&a1, &b1, &a0, &b0, &p1]);
    let t_aa = mul(&[&a1, &a1, &b0, &b0, &p1]);
    let t_bb = mul(&[&b1, &b1, &a0, &a0, &p1]);
    let t_p = series_mul(&p3, &a2b2);
    let (lhs, rhs) = if first {
        (lin(&[(n(2), &t_a2), (n(1), &t_b2), (n(4), &t_ab), (n(2), &t_aa)])?, t_p)
    } else {
        (lin(&[(n(1), &t_a2), (n(2), &t_b2), (n(2), &t_bb)])?, lin(&[(n(1), &t_p), (n(4), &t_ab)])?)
    };
    Ok(vec![Leg::new("residue relation", lhs, rhs)])
}

/// 50·(θ″[x]θ[y] − θ[x]θ″[y])·A⁵B⁵ = c·P²·(k₁A¹⁰ + k₂A⁵B⁵ + k₃B¹⁰), where
/// (x, y) = (A, B) when `a_first`, else (B, A).
fn second_derivative_difference(
    ctx: &Ctx,
    pair: &Pair,
    a_first: bool,
    c: CycloQ5,
    k: [CycloQ5; 3],
) -> Result<(Leg, FracSeries, FracSeries, FracSeries, FracSeries)> {
    let (a0, a2) = (ctx.th(&pair.a, 0)?, ctx.th(&pair.a, 2)?);
    let (b0, b2) = (ctx.th(&pair.b, 0)?, ctx.th(&pair.b, 2)?);
    let p = ctx.p()?;
    let cross = if a_first {
        series_sub(&series_mul(&a2, &b0), &series_mul(&a0, &b2))?
    } else {
        series_sub(&series_mul(&b2, &a0), &series_mul(&b0, &a2))?
    };
    let a5 = pow(&a0, 5);
    let b5 = pow(&b0, 5);
    let lhs = mul(&[&cross, &a5, &b5]).mul_scalar(&n(50));
    let [k1, k2, k3] = k;
    let poly = quadratic(&a5, &b5, k1, k2, k3)?;
    let p2 = series_mul(&p, &p);
    let rhs = series_mul(&p2, &poly).mul_scalar(&c);
    let ab = series_mul(&a0, &b0);
    let a5b5 = series_mul(&a5, &b5);
    Ok((Leg::new("second-derivative difference", lhs, rhs), cross, ab, p2, a5b5))
}

/// ∏(1−qⁿ)⁵(1 − ζʲqⁿ)⁵(1 − ζᵏqⁿ)⁵ / (1−q⁵ⁿ)³, squared.
fn quintic_product_sq(ctx: &Ctx, j: i64, k: i64) -> FracSeries {
    let minus = |c: CycloQ5| -c;
    let f = ctx.q_product(|m| {
        vec![(m, n(-1), 5), (m, minus(z(j)), 5), (m, minus(z(k)), 5), (5 * m, n(-1), -3)]
    });
    series_mul(&f, &f)
}

/// ∏(1−qⁿ)²/((1−q^{5n−r})⁵(1−q^{5n−(5−r)})⁵), squared.
fn rogers_product_sq(ctx: &Ctx, r: usize) -> FracSeries {
    let f = ctx.q_product(|m| vec![(m, n(-1), 2), (5 * m - r, n(-1), -5), (5 * m - (5 - r), n(-1), -5)]);
    series_mul(&f, &f)
}

fn golden_weights() -> (CycloQ5, CycloQ5) {
    // (25 ± 11√5)/50
    let plus = &(n(25) + &s5() * &n(11)) * &q(1, 50);
    let minus = &(n(25) - &s5() * &n(11)) * &q(1, 50);
    (plus, minus)
}

/// 1 + 6Σ(σ(n) − 5σ(n/5))qⁿ
fn sigma_series(ctx: &Ctx) -> FracSeries {
    ctx.divisor_series(1, n(1), n(6), DivisorKernel::S, None)
}

/// X, Y = θ⁵ at 5τ and their τ-derivatives.
fn fifth_powers_5tau(ctx: &Ctx, pair: &Pair) -> Result<(FracSeries, FracSeries)> {
    let x = pow(&ctx.th_5tau(&pair.a)?, 5);
    let y = pow(&ctx.th_5tau(&pair.b)?, 5);
    Ok((x, y))
}

fn fifth_powers(ctx: &Ctx, pair: &Pair) -> Result<(FracSeries, FracSeries)> {
    Ok((pow(&ctx.th(&pair.a, 0)?, 5), pow(&ctx.th(&pair.b, 0)?, 5)))
}

/// X·dY/dτ − Y·dX/dτ
fn wronskian(x: &FracSeries, y: &FracSeries) -> Result<FracSeries> {
    series_sub(&series_mul(x, &d_tau(y)), &series_mul(y, &d_tau(x)))
}

pub fn catalog() -> Vec<IdentityEntry> {
    let mut v = Vec::new();

    v.push(entry("E1", "eta^5(tau)/eta(5tau) = 1 - 5 sum A(n) q^n", "product-series identities", AS_STATED, 10, |ctx, _| {
        let lhs = ctx.z_quot()?;
        let rhs = ctx.divisor_series(1, n(1), n(-5), DivisorKernel::A, None);
        Ok(vec![Leg::new("expansion", lhs, rhs)])
    }));
    v.push(entry("E2", "eta^5(5tau)/eta(tau) = sum B(n) q^n", "product-series identities", AS_STATED, 10, |ctx, _| {
        let lhs = ctx.w_quot()?;
        let rhs = ctx.divisor_series(1, n(0), n(1), DivisorKernel::B, None);
        Ok(vec![Leg::new("expansion", lhs, rhs)])
    }));
    v.push(entry("E3", "sum p(5n+4) q^n = 5 prod (1-q^5n)^5/(1-q^n)^6", "partition congruence", AS_STATED, 10, |ctx, _| {
        let len = ctx.order.ceil().to_integer();
        let len: usize = len.try_into().unwrap_or(0);
        let p = partitions_upto(5 * len + 4);
        let lhs = ctx.q_sum(1, None, |k| CycloQ5::from_rational(BigRat::from_integer(p[5 * k as usize + 4].clone())));
        let rhs = ctx.q_product(|m| vec![(5 * m, n(-1), 5), (m, n(-1), -6)]).mul_scalar(&n(5));
        Ok(vec![Leg::new("generating function", lhs, rhs)])
    }));
    v.push(entry("E4", "theta'[1;1] = -2 pi eta^3", "Jacobi derivative formula", AS_STATED, 10, |ctx, _| {
        let lhs = ctx.p()?;
        let eta3 = ctx.eta_quot(&[((1, 1), 3)])?;
        // −2π = (2πi)·e(1/4)
        let rhs = two_pi_i(&eta3, 1).mul_phase(&crate::exact::Phase::from_ratio(1, 4));
        Ok(vec![Leg::new("eta cube", lhs, rhs)])
    }));

    // Level-five forms of Jacobi's derivative formula.
    let main: [(&'static str, &'static str, _, i64, i64, i64); 6] = [
        ("T1a", "theta'^4 via [1;1/5], [1;3/5]", P_1_13, 0, 0, 0),
        ("T1b", "theta'^4 via [3/5;1], [1/5;1]", P_35_15, 4, 0, 0),
        ("T1c", "theta'^4 via [1/5;1/5], [3/5;3/5]", P_11_33, 0, 4, 3),
        ("T1d", "theta'^4 via [1/5;3/5], [3/5;9/5]", P_13_39, 0, 1, 2),
        ("T1e", "theta'^4 via [1/5;7/5], [3/5;1/5]", P_17_31, 3, 3, 1),
        ("T1f", "theta'^4 via [1/5;9/5], [3/5;7/5]", P_19_37, 3, 1, 2),
    ];
    for (id, title, (a, b), u, e1, e2) in main {
        let pair = Pair::new(a, b);
        let variants = if id == "T1d" { BOTH } else { AS_STATED };
        v.push(entry(id, title, "level-five Jacobi formulas", variants, 20, move |ctx, var| {
            // Printed denominators: A¹⁰ − 11ζ^{e1}A⁵B⁵ − ζ^{e2}B¹⁰, except the
            // (1/5,3/5),(3/5,9/5) case printed as A¹⁰ + 11ζA⁵B⁵ − ζ²B¹⁰.
            let (c1, c2) = match (id, var) {
                ("T1d", Variant::AsStated) => (&z(1) * &n(11), -z(2)),
                ("T1d", Variant::Corrected) => (&z(2) * &n(-11), -z(4)),
                _ => (&z(e1) * &n(-11), -z(e2)),
            };
            jacobi_main(ctx, &pair, z(u), c1, c2)
        }));
    }

    // Derivative formulas θ′[x]/θ[x] = c·P·(k₁A⁵ + k₂B⁵)/(10A³B³).
    type Coef = (i64, i64, i64); // sign, ζ-power, integer multiple
    let deriv: [(&'static str, _, bool, Coef, Coef, Coef); 12] = [
        ("D1", P_11_33, true, (1, 0, 1), (1, 0, 1), (-1, 4, 3)),
        ("D2", P_11_33, false, (1, 0, 1), (1, 0, 3), (1, 4, 1)),
        ("D3", P_13_39, true, (-1, 0, 1), (1, 0, 1), (1, 1, 3)),
        ("D4", P_13_39, false, (-1, 0, 1), (1, 0, 3), (-1, 1, 1)),
        ("D5", P_15_35, true, (-1, 3, 1), (1, 0, 1), (1, 0, 3)),
        ("D6", P_15_35, false, (-1, 3, 1), (1, 0, 3), (-1, 0, 1)),
        ("D7", P_17_31, true, (-1, 1, 1), (1, 0, 1), (-1, 3, 3)),
        ("D8", P_17_31, false, (-1, 1, 1), (1, 0, 3), (1, 3, 1)),
        ("D9", P_19_37, true, (1, 1, 1), (1, 0, 1), (-1, 1, 3)),
        ("D10", P_19_37, false, (1, 1, 1), (1, 0, 3), (1, 1, 1)),
        ("D11", P_1_13, true, (1, 0, 1), (1, 0, 1), (-1, 0, 3)),
        ("D12", P_1_13, false, (1, 0, 1), (1, 0, 3), (1, 0, 1)),
    ];
    let coef = |(s, k, m): Coef| &z(k) * &n(s * m);
    for (id, (a, b), first, c, k1, k2) in deriv {
        let pair = Pair::new(a, b);
        let corrected = matches!(id, "D3" | "D4");
        let variants = if corrected { BOTH } else { AS_STATED };
        v.push(entry(id, "theta'/theta in fifth powers", "derivative formulas", variants, 15, move |ctx, var| {
            // For θ[3/5;9/5] the printed ζ·θ⁵ terms read −ζ²·θ⁵ once corrected.
            let k2 = match (corrected, var, first) {
                (true, Variant::Corrected, true) => &z(2) * &n(-3),
                (true, Variant::Corrected, false) => z(2),
                _ => coef(k2),
            };
            derivative_formula(ctx, &pair, first, coef(c), coef(k1), k2)
        }));
    }

    // Zero-residue relations.
    for (id, (a, b), first, loc) in [
        ("R1", P_1_13, true, "residue relations, [1;1/5] and [1;3/5]"),
        ("R2", P_1_13, false, "residue relations, [1;1/5] and [1;3/5]"),
        ("R4", P_15_35, true, "residue relations, [1/5;1] and [3/5;1]"),
        ("R5", P_15_35, false, "residue relations, [1/5;1] and [3/5;1]"),
    ] {
        let pair = Pair::new(a, b);
        let title = if first { "Res(phi, 0) = 0" } else { "Res(psi, 0) = 0" };
        v.push(entry(id, title, loc, AS_STATED, 10, move |ctx, _| residue_relation(ctx, &pair, first)));
    }

    v.push(entry("R3", "theta''/theta difference for [1;1/5], [1;3/5]", "residue relations, [1;1/5] and [1;3/5]", AS_STATED, 10, |ctx, _| {
        let pair = Pair::new((5, 1), (5, 3));
        let (leg, cross, ab, p2, a5b5) =
            second_derivative_difference(ctx, &pair, true, q(1, 1), [n(-4), n(44), n(4)])?;
        let w = ctx.w_quot()?;
        // (A″B − AB″)/(AB) = −8√5π²·η⁵(5τ)/η(τ)
        let eta_leg = Leg::new("eta quotient", cross, two_pi_i(&series_mul(&w, &ab), 2).mul_scalar(&(&s5() * &n(2))));
        // −8√5π²·W = −(32π⁴/25)·A⁵B⁵/P²
        let jac = Leg::new(
            "fifth powers",
            series_mul(&w, &p2).mul_scalar(&(&s5() * &n(2))),
            two_pi_i(&a5b5, 2).mul_scalar(&q(-2, 25)),
        );
        Ok(vec![leg, eta_leg, jac])
    }));
    v.push(entry("R6", "theta''/theta difference for [1/5;1], [3/5;1]", "residue relations, [1/5;1] and [3/5;1]", AS_STATED, 10, |ctx, _| {
        let pair = Pair::new((1, 5), (3, 5));
        let (leg, cross, ab, p2, a5b5) = second_derivative_difference(ctx, &pair, false, z(1), [n(4), n(44), n(-4)])?;
        let h = ctx.eta_quot(&[((1, 5), 5), ((1, 1), -1)])?;
        // −(8π²/25)·η⁵(τ/5)/η(τ) = (2/25)(2πi)²·H
        let eta_leg = Leg::new("eta quotient", cross, two_pi_i(&series_mul(&h, &ab), 2).mul_scalar(&q(2, 25)));
        let y_series = ctx.divisor_series(5, n(1), n(-5), DivisorKernel::A, None);
        let y_leg = Leg::new("expansion in q^(1/5)", h.clone(), y_series);
        let jac = Leg::new("fifth powers", series_mul(&h, &p2), two_pi_i(&a5b5, 2).neg());
        Ok(vec![leg, eta_leg, y_leg, jac])
    }));
    v.push(entry("R7a", "theta''/theta difference for [1/5;1/5], [3/5;3/5]", "remaining Jacobi formulas", AS_STATED, 10, |ctx, _| {
        let pair = Pair::new((1, 1), (3, 3));
        let (leg, cross, ab, p2, a5b5) =
            second_derivative_difference(ctx, &pair, false, n(1), [n(4), &z(4) * &n(-44), &z(3) * &n(-4)])?;
        // 1 − 5ΣA(n)ỹⁿ with ỹ = ζ·q^{1/5}
        let twisted = ctx.divisor_series(5, n(1), n(-5), DivisorKernel::A, Some(&z(1)));
        let div_leg =
            Leg::new("twisted divisor sum", cross, two_pi_i(&series_mul(&twisted, &ab), 2).mul_scalar(&q(2, 25)));
        let jac = Leg::new("fifth powers", series_mul(&twisted, &p2), two_pi_i(&a5b5, 2));
        Ok(vec![leg, div_leg, jac])
    }));

    // Farkas–Kra type logarithmic derivatives.
    v.push(entry("FK5", "d/dtau log(eta(5tau)/eta(tau)) against theta'/theta", "Farkas-Kra identities", AS_STATED, 10, |ctx, _| {
        let pair = Pair::new((5, 1), (5, 3));
        farkas_kra(ctx, &pair, &[((5, 1), 1), ((1, 1), -1)], &s5() * &n(5))
    }));
    v.push(entry("FK6", "d/dtau log(eta(tau/5)/eta(tau)) against theta'/theta", "Farkas-Kra identities", AS_STATED, 10, |ctx, _| {
        let pair = Pair::new((1, 5), (3, 5));
        farkas_kra(ctx, &pair, &[((1, 5), 1), ((1, 1), -1)], z(3))
    }));

    // Product-series identities with golden-ratio trinomials.
    v.push(entry("C511", "22 sqrt5/50 Z + 5 sqrt5 W in golden products", "product-series identities", AS_STATED, 10, |ctx, _| {
        let (wp, wm) = golden_weights();
        // (1 + φqⁿ + q²ⁿ) = (1 − ζ²qⁿ)(1 − ζ³qⁿ), (1 + φ̄qⁿ + q²ⁿ) = (1 − ζqⁿ)(1 − ζ⁴qⁿ)
        let p1 = quintic_product_sq(ctx, 2, 3);
        let p2 = quintic_product_sq(ctx, 1, 4);
        let lhs = lin(&[(&s5() * &q(22, 50), &ctx.z_quot()?), (&s5() * &n(5), &ctx.w_quot()?)])?;
        let rhs = lin(&[(wp, &p1), (-wm, &p2)])?;
        Ok(vec![Leg::new("product form", lhs, rhs)])
    }));
    v.push(entry("C521", "1 + 6 sum (sigma(n) - 5 sigma(n/5)) q^n in golden products", "product-series identities", AS_STATED, 10, |ctx, _| {
        let (wp, wm) = golden_weights();
        let p1 = quintic_product_sq(ctx, 2, 3);
        let p2 = quintic_product_sq(ctx, 1, 4);
        let rhs = lin(&[(wp, &p1), (wm, &p2)])?;
        Ok(vec![Leg::new("product form", sigma_series(ctx), rhs)])
    }));
    for (id, plus) in [("PS1a", true), ("PS1b", false)] {
        v.push(entry(id, "golden product squared as a divisor series", "product-series identities", AS_STATED, 10, move |ctx, _| {
            let prod = if plus { quintic_product_sq(ctx, 2, 3) } else { quintic_product_sq(ctx, 1, 4) };
            let sign = if plus { 1 } else { -1 };
            // 1 + ((25 ∓ 11√5)/4)·Σ(30C(n) ± √5·D25(n))qⁿ
            let w = &(n(25) - &s5() * &n(11 * sign)) * &q(1, 4);
            let c = ctx.divisor_series(1, n(0), n(30), DivisorKernel::C, None);
            let d = ctx.divisor_series(1, n(0), &s5() * &n(sign), DivisorKernel::D25, None);
            let one = FracSeries::one(ctx.order.clone());
            let rhs = lin(&[(n(1), &one), (w.clone(), &c), (w, &d)])?;
            Ok(vec![Leg::new("divisor expansion", prod, rhs)])
        }));
    }
    v.push(entry("C611", "Rogers-type products: difference of squares", "product-series identities", AS_STATED, 10, |ctx, _| {
        let q1 = rogers_product_sq(ctx, 1);
        let q2 = rogers_product_sq(ctx, 2).shift_q(&int(2));
        let lhs = series_sub(&q1, &q2)?;
        let rhs = lin(&[(n(11), &ctx.w_quot()?), (n(1), &ctx.z_quot()?)])?;
        Ok(vec![Leg::new("eta quotients", lhs, rhs)])
    }));
    v.push(entry("C621", "Rogers-type products: sum of squares", "product-series identities", AS_STATED, 10, |ctx, _| {
        let q1 = rogers_product_sq(ctx, 1);
        let q2 = rogers_product_sq(ctx, 2).shift_q(&int(2));
        let lhs = lin(&[(n(1), &q1), (n(1), &q2)])?;
        Ok(vec![Leg::new("sigma series", lhs, sigma_series(ctx))])
    }));
    for (id, first) in [("PS2a", true), ("PS2b", false)] {
        v.push(entry(id, "Rogers-type product squared as a divisor series", "product-series identities", AS_STATED, 10, move |ctx, _| {
            let (prod, c0, sign) = if first {
                (rogers_product_sq(ctx, 1), n(1), 1)
            } else {
                (rogers_product_sq(ctx, 2).shift_q(&int(2)), n(0), -1)
            };
            // c₀ + Σ(3C(n) ± E11(n)/2)qⁿ
            let c = ctx.divisor_series(1, c0, n(3), DivisorKernel::C, None);
            let e = ctx.divisor_series(1, n(0), q(sign, 2), DivisorKernel::E11, None);
            Ok(vec![Leg::new("divisor expansion", prod, lin(&[(n(1), &c), (n(1), &e)])?)])
        }));
    }

    // Modular equations, differential equations and Wronskians.
    v.push(entry("ME5", "5^5 X^9 Y^9 = Z^10 (X^2 - 11XY - Y^2)^5", "modular equations", AS_STATED, 20, |ctx, _| {
        let pair = Pair::new((5, 1), (5, 3));
        let (x, y) = fifth_powers(ctx, &pair)?;
        let zq = ctx.z_quot()?;
        let quad = quadratic(&x, &y, n(1), n(-11), n(-1))?;
        let lhs = pow(&series_mul(&x, &y), 9).mul_scalar(&n(3125));
        let rhs = series_mul(&pow(&zq, 10), &pow(&quad, 5));
        let a9b9 = pow(&series_mul(&ctx.th(&pair.a, 0)?, &ctx.th(&pair.b, 0)?), 9);
        let q_leg = Leg::new("quadratic form", series_mul(&pow(&zq, 2), &quad), a9b9.mul_scalar(&n(5)));
        Ok(vec![Leg::new("tenth powers", lhs, rhs), q_leg])
    }));
    v.push(entry("ME6", "X^9 Y^9 = Z^10 (X^2 + 11XY - Y^2)^5 at 5tau", "modular equations", BOTH, 20, |ctx, var| {
        let pair = Pair::new((1, 5), (3, 5));
        let (x, y) = fifth_powers_5tau(ctx, &pair)?;
        let w = ctx.w_quot()?;
        let quad = match var {
            Variant::AsStated => quadratic(&x, &y, n(1), n(11), n(-1))?,
            Variant::Corrected => quadratic(&x, &y, n(-1), n(-11), n(1))?,
        };
        let lhs = pow(&series_mul(&x, &y), 9);
        let rhs = series_mul(&pow(&w, 10), &pow(&quad, 5));
        let mut legs = vec![Leg::new("tenth powers", lhs, rhs)];
        if var == Variant::Corrected {
            // At τ: Z̃²(Ỹ² − 11X̃Ỹ − X̃²) = ζ·A⁹B⁹ with Z̃ = η⁵(τ)/η(τ/5).
            let (xt, yt) = fifth_powers(ctx, &pair)?;
            let zt = ctx.eta_quot(&[((1, 1), 5), ((1, 5), -1)])?;
            let quad_t = quadratic(&xt, &yt, n(-1), n(-11), n(1))?;
            let a9b9 = pow(&series_mul(&ctx.th(&pair.a, 0)?, &ctx.th(&pair.b, 0)?), 9);
            legs.push(Leg::new("quadratic form", series_mul(&pow(&zt, 2), &quad_t), a9b9.mul_scalar(&z(1))));
        }
        Ok(legs)
    }));
    v.push(entry("ODE5", "X'Y - XY' = 2 pi i/sqrt5^3 Z (X^2 - 11XY - Y^2)", "Wronskian formulas", AS_STATED, 20, |ctx, _| {
        let pair = Pair::new((5, 1), (5, 3));
        let (x, y) = fifth_powers(ctx, &pair)?;
        let zq = ctx.z_quot()?;
        let lhs = wronskian(&y, &x)?;
        let quad = quadratic(&x, &y, n(1), n(-11), n(-1))?;
        // 1/(√5)³ = √5/25
        let rhs = two_pi_i(&series_mul(&zq, &quad), 1).mul_scalar(&(&s5() * &q(1, 25)));
        let ab = series_mul(&ctx.th(&pair.a, 0)?, &ctx.th(&pair.b, 0)?);
        let p = ctx.p()?;
        let jac = Leg::new("theta'^2", series_mul(&p, &p), two_pi_i(&series_mul(&ab, &zq), 2).mul_scalar(&(&s5() * &q(-1, 5))));
        Ok(vec![Leg::new("first-order equation", lhs, rhs), jac])
    }));
    v.push(entry("ODE6", "X'Y - XY' = 2 pi i Z (X^2 + 11XY - Y^2) at 5tau", "Wronskian formulas", AS_STATED, 20, |ctx, _| {
        let pair = Pair::new((1, 5), (3, 5));
        let (x, y) = fifth_powers_5tau(ctx, &pair)?;
        let w = ctx.w_quot()?;
        let lhs = wronskian(&y, &x)?;
        let quad = quadratic(&x, &y, n(1), n(11), n(-1))?;
        let rhs = two_pi_i(&series_mul(&w, &quad), 1);
        let ab = series_mul(&ctx.th(&pair.a, 0)?, &ctx.th(&pair.b, 0)?);
        let zt = ctx.eta_quot(&[((1, 1), 5), ((1, 5), -1)])?;
        let p = ctx.p()?;
        // θ′²/(AB) = (4π²/ζ)·Z̃
        let jac = Leg::new("theta'^2", series_mul(&p, &p), two_pi_i(&series_mul(&ab, &zt), 2).mul_scalar(&-z(4)));
        Ok(vec![Leg::new("first-order equation", lhs, rhs), jac])
    }));
    v.push(entry("W5", "W(X,Y)^10 = (2 pi i/5)^10 X^9 Y^9 (X^2 - 11XY - Y^2)^5", "Wronskian formulas", AS_STATED, 20, |ctx, _| {
        let pair = Pair::new((5, 1), (5, 3));
        let (x, y) = fifth_powers(ctx, &pair)?;
        let lhs = pow(&wronskian(&x, &y)?, 10);
        let quad = quadratic(&x, &y, n(1), n(-11), n(-1))?;
        let rhs = two_pi_i(&series_mul(&pow(&series_mul(&x, &y), 9), &pow(&quad, 5)), 10).mul_scalar(&q(1, 9_765_625));
        Ok(vec![Leg::new("tenth powers", lhs, rhs)])
    }));
    v.push(entry("W6", "W(X,Y)^10 = (2 pi i)^10 X^9 Y^9 (X^2 + 11XY - Y^2)^5 at 5tau", "Wronskian formulas", BOTH, 20, |ctx, var| {
        let pair = Pair::new((1, 5), (3, 5));
        let (x, y) = fifth_powers_5tau(ctx, &pair)?;
        let quad = quadratic(&x, &y, n(1), n(11), n(-1))?;
        let base = two_pi_i(&series_mul(&pow(&series_mul(&x, &y), 9), &pow(&quad, 5)), 10);
        let (w, rhs) = match var {
            // Printed determinant rows (X, Y) and (dX/dτ, dX/dτ).
            Variant::AsStated => {
                let dx = d_tau(&x);
                (series_sub(&series_mul(&x, &dx), &series_mul(&y, &dx))?, base)
            }
            Variant::Corrected => (wronskian(&x, &y)?, base.neg()),
        };
        Ok(vec![Leg::new("tenth powers", pow(&w, 10), rhs)])
    }));

    // Structural properties of the theta constants.
    v.push(entry("HEAT", "theta'' = 4 pi i d/dtau theta", "heat equation", AS_STATED, 10, |ctx, _| {
        catalog_chars()
            .iter()
            .map(|c| {
                let t0 = ctx.th(c, 0)?;
                let t2 = ctx.th(c, 2)?;
                Ok(Leg::new("heat", t2, two_pi_i(&d_tau(&t0), 1).mul_scalar(&n(2))))
            })
            .collect()
    }));
    v.push(entry("SHIFT", "theta[e+2m; e'+2n] = e(e n/2) theta[e; e'] and parity", "characteristic shifts", AS_STATED, 10, |ctx, _| {
        let mut legs = Vec::new();
        for c in catalog_chars() {
            for (m, k) in [(1, 0), (0, 1), (-1, 1), (1, -2)] {
                let (phase, shifted) = char_shift_phase(&c, &BigInt::from(m), &BigInt::from(k));
                for d in [0, 1] {
                    legs.push(Leg::new("shift", ctx.th(&shifted, d)?, ctx.th(&c, d)?.mul_phase(&phase)));
                }
            }
            let neg = c.negated();
            legs.push(Leg::new("parity", ctx.th(&neg, 0)?, ctx.th(&c, 0)?));
            legs.push(Leg::new("odd parity", ctx.th(&neg, 1)?, ctx.th(&c, 1)?.neg()));
        }
        Ok(legs)
    }));
    v.push(entry("TP-EQ", "triple product agrees with the defining sum", "triple product", AS_STATED, 10, |ctx, _| {
        catalog_chars()
            .iter()
            .map(|c| Ok(Leg::new("triple product", theta_const(c, 0, &ctx.order)?, theta_const_product(c, &ctx.order)?)))
            .collect()
    }));

    v
}

/// 3(2πi)·H′·A²B² = −H·(A′²B² + A²B′²) and −(2πi)²A³B³ = c·P²·H³
fn farkas_kra(ctx: &Ctx, pair: &Pair, quot: &[((i64, i64), i32)], c: CycloQ5) -> Result<Vec<Leg>> {
    let h = ctx.eta_quot(quot)?;
    let (a0, a1) = (ctx.th(&pair.a, 0)?, ctx.th(&pair.a, 1)?);
    let (b0, b1) = (ctx.th(&pair.b, 0)?, ctx.th(&pair.b, 1)?);
    let a2b2 = pow(&series_mul(&a0, &b0), 2);
    let lhs = two_pi_i(&series_mul(&d_tau(&h), &a2b2), 1).mul_scalar(&n(3));
    let sq = lin(&[(n(1), &mul(&[&a1, &a1, &b0, &b0])), (n(1), &mul(&[&a0, &a0, &b1, &b1]))])?;
    let rhs = series_mul(&h, &sq).neg();
    let p = ctx.p()?;
    let a3b3 = pow(&series_mul(&a0, &b0), 3);
    let cube = Leg::new("cubes", two_pi_i(&a3b3, 2).neg(), mul(&[&p, &p, &pow(&h, 3)]).mul_scalar(&c));
    Ok(vec![Leg::new("logarithmic derivative", lhs, rhs), cube])
}
