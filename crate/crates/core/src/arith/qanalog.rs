use num_bigint::BigInt;

use super::{LaurentElement, RationalExponent};
use crate::error::{Error, Result};
use crate::witt_ainf::AinfModel;

/// `q^a = u^(a p^n)` in the model's carrier ring.
pub fn q_power(a: &RationalExponent, model: &AinfModel) -> Result<LaurentElement> {
    let e = scaled(a, model)?;
    Ok(LaurentElement::monomial(model.depth(), e, 1))
}

/// `q^a - 1`, the image of `[eps^a] - 1`; defined for every `a` with
/// denominator at most `p^n`.
pub fn eps_power_minus_one(a: &RationalExponent, model: &AinfModel) -> Result<LaurentElement> {
    let e = scaled(a, model)?;
    if e == 0 {
        return Ok(LaurentElement::zero(model.depth()));
    }
    Ok(LaurentElement::monomial_minus_one(model.depth(), e))
}

/// The q-integer `[a]_q = (q^a - 1)/(q - 1)` for integral `a`.
pub fn q_analog(a: &RationalExponent, model: &AinfModel) -> Result<LaurentElement> {
    if !a.is_integral() {
        return Err(Error::NonIntegralExponent(a.to_string()));
    }
    Ok(q_integer(a.numerator(), model.p(), model.depth()))
}

/// `[a]_q` with `q = u^(p^depth)`, built as a geometric sum.
pub(crate) fn q_integer(a: i64, p: u64, depth: u32) -> LaurentElement {
    let step = super::ipow(p, depth);
    if a >= 0 {
        LaurentElement::from_terms(depth, (0..a).map(|i| (i * step, BigInt::from(1))))
    } else {
        // [a]_q = -q^a [-a]_q = -(q^a + ... + q^-1)
        LaurentElement::from_terms(depth, (a..0).map(|i| (i * step, BigInt::from(-1))))
    }
}

fn scaled(a: &RationalExponent, model: &AinfModel) -> Result<i64> {
    if a.p() != model.p() {
        return Err(Error::InvalidArgument(format!(
            "exponent over p={} used in a p={} model",
            a.p(),
            model.p()
        )));
    }
    a.scaled_numerator(model.depth())
        .ok_or_else(|| Error::ExponentTooDeep {
            exponent: a.to_string(),
            needed: a.den_pow(),
            depth: model.depth(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integers() {
        let m = AinfModel::new(3, 1).unwrap();
        let r = |n| RationalExponent::integer(n, 3);
        assert_eq!(
            q_analog(&r(3), &m).unwrap(),
            LaurentElement::from_terms(1, [(0, 1), (3, 1), (6, 1)])
        );
        assert!(q_analog(&r(1), &m).unwrap().is_one());
        assert!(q_analog(&r(0), &m).unwrap().is_zero());
        assert_eq!(
            q_analog(&r(-1), &m).unwrap(),
            LaurentElement::monomial(1, -3, -1)
        );
        assert!(matches!(
            q_analog(&RationalExponent::new(1, 1, 3), &m),
            Err(Error::NonIntegralExponent(_))
        ));
    }

    #[test]
    fn q_analog_matches_quotient_definition() {
        let m = AinfModel::new(2, 2).unwrap();
        let qm1 = m.mu();
        for a in -7..=7 {
            let a = RationalExponent::integer(a, 2);
            let lhs = q_analog(&a, &m).unwrap();
            let rhs = eps_power_minus_one(&a, &m)
                .unwrap()
                .exact_div(&qm1)
                .unwrap()
                .unwrap();
            assert_eq!(lhs, rhs, "a = {a}");
        }
    }

    #[test]
    fn q_analog_multiplicative() {
        // [ab]_q = [a]_{q^b} [b]_q
        let m = AinfModel::new(2, 1).unwrap();
        for a in 1..6i64 {
            for b in 1..6i64 {
                let lhs = q_integer(a * b, 2, 1);
                let a_at_qb = q_integer(a, 2, 1).substitute_power(b);
                let rhs = a_at_qb.mul(&q_integer(b, 2, 1)).unwrap();
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
        let _ = m;
    }

    #[test]
    fn too_deep_exponent_rejected() {
        let m = AinfModel::new(3, 1).unwrap();
        assert!(matches!(
            eps_power_minus_one(&RationalExponent::new(1, 2, 3), &m),
            Err(Error::ExponentTooDeep { .. })
        ));
    }
}
