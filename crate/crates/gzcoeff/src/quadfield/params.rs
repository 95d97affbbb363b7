use super::disc::Discriminant;
use crate::arith;
use crate::error::{Error, Result};

/// Restrictions on the (N, p) search.
#[derive(Default)]
pub struct ParamConstraints<'a> {
    /// Use this p instead of searching.
    pub fixed_p: Option<u64>,
    /// Require N prime.
    pub level_prime: bool,
    /// Require N < this.
    pub level_below: Option<u64>,
    /// Require N ≥ this.
    pub level_at_least: Option<u64>,
    /// Extra predicate on p (e.g. existence of p-adic character values).
    pub p_filter: Option<&'a dyn Fn(u64) -> bool>,
    /// Search bound for both N and p; defaults to 10⁴.
    pub bound: Option<u64>,
}

fn odd_split(d: i64, q: u64) -> bool {
    q > 2 && arith::is_prime(q) && arith::kronecker(d, q as i64) == 1
}

/// Smallest admissible (N, p): minimise N, then p.
///
/// N ≥ 3 is a squarefree product of odd primes split in K (so (D/N) = 1), and
/// p is an odd split prime not dividing N.
pub fn admissible_params(d: Discriminant, c: &ParamConstraints) -> Result<(u64, u64)> {
    let dv = d.value();
    let bound = c.bound.unwrap_or(10_000);
    let p_ok = |p: u64| odd_split(dv, p) && c.p_filter.is_none_or(|f| f(p));
    if let Some(p) = c.fixed_p {
        if !p_ok(p) {
            return Err(Error::Precondition(format!("p = {p} is not an admissible odd split prime for D = {dv}")));
        }
    }
    let lo = c.level_at_least.unwrap_or(3).max(3);
    let hi = c.level_below.unwrap_or(bound + 1).min(bound + 1);
    for n in lo..hi {
        let f = arith::factor(n);
        if f.iter().any(|&(q, e)| e > 1 || !odd_split(dv, q)) {
            continue;
        }
        if c.level_prime && f.len() != 1 {
            continue;
        }
        debug_assert_eq!(arith::kronecker(dv, n as i64), 1);
        match c.fixed_p {
            Some(p) if n % p != 0 => return Ok((n, p)),
            Some(_) => continue,
            None => {
                if let Some(p) = (3..=bound).find(|&p| n % p != 0 && p_ok(p)) {
                    return Ok((n, p));
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!("no admissible (N, p) for D = {dv} within the given constraints")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_seven() {
        let d = Discriminant::new(-7).unwrap();
        assert_eq!(admissible_params(d, &Default::default()).unwrap(), (11, 23));
        let c = ParamConstraints { fixed_p: Some(11), ..Default::default() };
        assert_eq!(admissible_params(d, &c).unwrap(), (23, 11));
        let c = ParamConstraints { level_prime: true, level_below: Some(11), ..Default::default() };
        assert!(admissible_params(d, &c).is_err());
    }

    #[test]
    fn minus_twenty_three() {
        let d = Discriminant::new(-23).unwrap();
        assert_eq!(admissible_params(d, &Default::default()).unwrap(), (3, 13));
    }
}
