use crate::arith;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Kronecker symbol (top/bottom) for arbitrary integers, (a/0) = 1 iff a = ±1.
pub fn kronecker(top: &BigInt, bottom: &BigInt) -> i8 {
    if let (Some(a), Some(n)) = (top.to_i128(), bottom.to_i128()) {
        if a.unsigned_abs() < 1 << 120 && n.unsigned_abs() < 1 << 120 {
            return arith::kronecker_i128(a, n);
        }
    }
    kronecker_big(top, bottom)
}

fn kronecker_big(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut sign = 1i8;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            sign = -sign;
        }
    }
    let eight = BigInt::from(8);
    let v = n.trailing_zeros().unwrap_or(0);
    n >>= v;
    if v > 0 {
        if a.is_even() {
            return 0;
        }
        let r = a.mod_floor(&eight);
        if v % 2 == 1 && (r == BigInt::from(3) || r == BigInt::from(5)) {
            sign = -sign;
        }
    }
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let t = a.trailing_zeros().unwrap_or(0);
        a >>= t;
        let n8 = (&n % &eight).to_u8().unwrap();
        if t % 2 == 1 && (n8 == 3 || n8 == 5) {
            sign = -sign;
        }
        if (&a % 4u8).to_u8() == Some(3) && n8 % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_path_matches_small() {
        for a in -60i64..60 {
            for n in -60i64..60 {
                let (ba, bn) = (BigInt::from(a), BigInt::from(n));
                assert_eq!(kronecker_big(&ba, &bn), arith::kronecker(a, n), "({a}/{n})");
            }
        }
        let big = BigInt::from(10).pow(40) + 1;
        assert_eq!(kronecker(&BigInt::from(1), &big), 1);
    }
}
