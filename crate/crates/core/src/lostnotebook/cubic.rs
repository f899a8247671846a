use crate::error::{Error, Result};
use crate::precision::{Ball, Mag, PrecCtx};

use super::septic::SepticState;

/// `(α, β, γ)`, a permutation of the cubic's roots, and its index among
/// the six permutations of `[0, 1, 2]` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RootAssignment {
    pub alpha: Ball,
    pub beta: Ball,
    pub gamma: Ball,
    pub permutation_index: usize,
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Discriminant of `x³ + bx² + cx + d`.
fn discriminant(s: &SepticState) -> Ball {
    let (b, c, d) = (&s.c2, &s.c1, &s.c0);
    let t1 = (&(b * c) * d).mul_i64(18);
    let t2 = (&b.pow_int(3).expect("cube") * d).mul_i64(4);
    let t3 = &b.sqr() * &c.sqr();
    let t4 = c.pow_int(3).expect("cube").mul_i64(4);
    let t5 = d.sqr().mul_i64(27);
    &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
}

/// Trigonometric seeds for three real roots.
fn seeds(s: &SepticState) -> [f64; 3] {
    let (b, c, d) = (s.c2.mid_f64(), s.c1.mid_f64(), s.c0.mid_f64());
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
    let arg = if m == 0.0 { 0.0 } else { (3.0 * q / (p * m)).clamp(-1.0, 1.0) };
    let theta = arg.acos() / 3.0;
    let tau = 2.0 * std::f64::consts::PI / 3.0;
    [0.0, 1.0, 2.0].map(|k| m * (theta - tau * k).cos() - b / 3.0)
}

/// Newton polish on exact midpoints, then an interval Newton step
/// `N(X) = x - r(x)/r'(X)`; `N(X) ⊂ X` certifies a unique root in `N(X)`.
fn certify(s: &SepticState, seed: f64, w: PrecCtx) -> Result<Ball> {
    let exact = |b: &Ball| Ball::new(b.mid().clone(), Mag::zero(), w);
    let mut x = Ball::from_f64(seed, w);
    for _ in 0..64 {
        let step = s.cubic_at(&x).div(&s.cubic_derivative_at(&x)).map_err(|_| Error::RootsNotSeparable)?;
        x = exact(&(&x - &step));
        if step.abs_upper().is_zero() || step.abs_upper().log2() < x.abs_upper().log2() - w.bits() as f64 + 4.0 {
            break;
        }
    }
    let scale = x.abs_upper().log2().max(-(w.bits() as f64)).floor() as i64;
    let mut rho = Mag::pow2(scale - w.bits() as i64 + 24);
    for _ in 0..8 {
        let big_x = x.add_error(rho);
        let deriv = s.cubic_derivative_at(&big_x);
        if !deriv.contains_zero() {
            let n = &x - &s.cubic_at(&x).div(&deriv)?;
            if big_x.contains(&n) {
                return Ok(n);
            }
        }
        rho = rho.mul_2exp(4);
    }
    Err(Error::RootsNotSeparable)
}

/// Three certified, disjoint real root enclosures of the state's cubic, ascending.
pub fn cubic_roots(s: &SepticState, ctx: PrecCtx) -> Result<[Ball; 3]> {
    let disc = discriminant(s);
    if disc.is_negative() {
        return Err(Error::ComplexRootsDetected);
    }
    if disc.contains_zero() {
        return Err(Error::RootsNotSeparable);
    }
    let w = ctx.with_guard(16);
    let mut roots = Vec::with_capacity(3);
    for seed in seeds(s) {
        roots.push(certify(s, seed, w)?.with_prec(ctx));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if roots[i].overlaps(&roots[j]) {
                return Err(Error::RootsNotSeparable);
            }
        }
    }
    roots.sort_by(|a, b| a.mid().cmp(b.mid()));
    Ok([roots[0].clone(), roots[1].clone(), roots[2].clone()])
}

/// `x^(1/7)` for a real ball of either sign.
fn seventh_root(x: &Ball) -> Result<Ball> {
    if x.is_positive() {
        x.nth_root(7)
    } else if x.is_negative() {
        Ok(-(-x).nth_root(7)?)
    } else {
        let m = Mag::from_float_up(&x.abs_upper().to_float());
        let r = Ball::new(m.to_float(), Mag::zero(), x.ctx()).nth_root(7)?;
        Ok(Ball::zero(x.ctx()).add_error(r.abs_upper()))
    }
}

/// `((α²p/β)^(1/7), (β²p/γ)^(1/7), (γ²p/α)^(1/7))`.
pub fn uvw_candidates(alpha: &Ball, beta: &Ball, gamma: &Ball, p: &Ball) -> Result<(Ball, Ball, Ball)> {
    let one = |a: &Ball, b: &Ball| -> Result<Ball> { seventh_root(&(&a.sqr() * p).div(b)?) };
    Ok((one(alpha, beta)?, one(beta, gamma)?, one(gamma, alpha)?))
}

/// The unique permutation whose candidates overlap `(u, v, w)`.
pub fn assign_roots(s: &SepticState, roots: &[Ball; 3], _ctx: PrecCtx) -> Result<RootAssignment> {
    let mut found = None;
    let mut count = 0;
    for (idx, perm) in PERMUTATIONS.iter().enumerate() {
        let (a, b, g) = (&roots[perm[0]], &roots[perm[1]], &roots[perm[2]]);
        let (cu, cv, cw) = match uvw_candidates(a, b, g, &s.p) {
            Ok(c) => c,
            Err(Error::DivisorStraddlesZero) => return Err(Error::MultiplePermutationsMatch),
            Err(e) => return Err(e),
        };
        if cu.overlaps(&s.u) && cv.overlaps(&s.v) && cw.overlaps(&s.w) {
            count += 1;
            found =
                Some(RootAssignment { alpha: a.clone(), beta: b.clone(), gamma: g.clone(), permutation_index: idx });
        }
    }
    match count {
        0 => Err(Error::NoPermutationMatches),
        1 => Ok(found.expect("one match")),
        _ => Err(Error::MultiplePermutationsMatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cospi, int};
    use crate::qseries::{QPoint, QValue};

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    fn special_state(c: PrecCtx) -> SepticState {
        SepticState::compute(&QValue::Point(QPoint::pos(1, 7)), c).unwrap()
    }

    #[test]
    fn roots_at_the_special_point() {
        let c = ctx(512);
        let s = special_state(c);
        let roots = cubic_roots(&s, c).unwrap();
        for (k, r) in [1, 2, 3].iter().zip(roots.iter()) {
            let want = (int(1) / (int(2) * cospi(*k, 7)).pow(2, 1)).eval(c).unwrap();
            assert!(r.overlaps(&want), "k = {k}");
            assert!(s.cubic_at(r).contains_zero());
            assert!(r.rad_log10() < -100.0);
        }
        let sum = &(&roots[0] + &roots[1]) + &roots[2];
        assert!(sum.contains_int(6));
    }

    #[test]
    fn vieta_at_point_three() {
        let c = ctx(256);
        let s = SepticState::compute(&QValue::Real(Ball::from_decimal_str("0.3", c).unwrap()), c).unwrap();
        let [a, b, g] = cubic_roots(&s, c).unwrap();
        assert!((&(&a + &b) + &g).overlaps(&-s.c2.clone()));
        assert!((&(&(&a * &b) + &(&b * &g)) + &(&g * &a)).overlaps(&s.c1));
        assert!((&(&a * &b) * &g).overlaps(&-s.c0.clone()));
    }

    #[test]
    fn assignment_at_the_special_point() {
        let c = ctx(512);
        let s = special_state(c);
        let roots = cubic_roots(&s, c).unwrap();
        let a = assign_roots(&s, &roots, c).unwrap();
        assert_eq!(a.permutation_index, 5);
        // u⁷ = α²p/β
        let u7 = s.u.pow_int(7).unwrap();
        assert!(u7.overlaps(&(&a.alpha.sqr() * &s.p).div(&a.beta).unwrap()));
    }

    #[test]
    fn complex_roots_reported() {
        let c = ctx(128);
        let mut s = special_state(c);
        // ξ³ + ξ = ξ(ξ² + 1)
        s.c2 = Ball::zero(c);
        s.c1 = Ball::one(c);
        s.c0 = Ball::zero(c);
        assert_eq!(cubic_roots(&s, c).unwrap_err(), Error::ComplexRootsDetected);
    }
}
