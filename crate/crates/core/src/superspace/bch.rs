use crate::kernel::{PowerSeries, Scalar};

/// f(x) = 1/(eˣ−1) − 1/x = −(Σ xᵏ/(k+2)!) / (Σ xᵏ/(k+1)!), to `order`.
pub fn bch_series(order: usize) -> PowerSeries {
    let num = PowerSeries::exp_like(order, 2);
    let den = PowerSeries::exp_like(order, 1);
    -&num.div(&den).expect("constant term 1")
}

/// c₀..cₙ, the Taylor coefficients of f at 0.
pub fn bch_coefficients(n: usize) -> Vec<Scalar> {
    bch_series(n).coeffs().to_vec()
}

/// x f′ + 2f + x f² − C(1 + x f), coefficient by coefficient up to
/// `min(order, f.order())`.
pub fn riccati_residual(c: &Scalar, f: &PowerSeries, order: usize) -> PowerSeries {
    let n = order.min(f.order());
    PowerSeries::from_fn(n, |k| {
        let mut r = &f.coeff(k) * &Scalar::int(k as i64 + 2);
        if k == 0 {
            r -= c;
        } else {
            for i in 0..k {
                r += &(&f.coeff(i) * &f.coeff(k - 1 - i));
            }
            r -= &(c * &f.coeff(k - 1));
        }
        r
    })
}

/// The regular solution f_C = C/(1 − e^{−Cx}) − 1/x, expanded as
/// (1/E(−Cx) − 1)/x with E(y) = (eʸ − 1)/y.
pub fn riccati_solution(c: &Scalar, order: usize) -> PowerSeries {
    let e = PowerSeries::exp_like(order + 1, 1).rescale_arg(&-c);
    let inv = e.inverse().expect("constant term 1");
    (&inv - &PowerSeries::one(order + 1)).shift_down().expect("constant term cancels")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        let c = bch_coefficients(5);
        let want = [Scalar::frac(-1, 2), Scalar::frac(1, 12), Scalar::zero(), Scalar::frac(-1, 720), Scalar::zero(), Scalar::frac(1, 30240)];
        assert_eq!(c, want);
    }

    #[test]
    fn general_solution_satisfies_riccati() {
        for c in [Scalar::int(2), Scalar::int(-1), Scalar::frac(3, 7), Scalar::zero()] {
            let f = riccati_solution(&c, 12);
            assert_eq!(f.order(), 12);
            assert!(riccati_residual(&c, &f, 12).is_zero(), "C = {}", c.render());
        }
        assert_eq!(riccati_solution(&Scalar::int(-1), 10), bch_series(10));
    }

    #[test]
    fn corrupted_c1_breaks_riccati() {
        let f = bch_series(8);
        let mut coeffs = f.coeffs().to_vec();
        coeffs[1] += &Scalar::one();
        let r = riccati_residual(&Scalar::int(-1), &PowerSeries::from_coeffs(coeffs, 8), 8);
        assert!(r.coeff(0).is_zero());
        assert!(!r.coeff(1).is_zero());
    }
}
