//! Segmented factorisation of the values A + B·t along an arithmetic progression.

use num_integer::Integer;

/// Maximum number of distinct prime factors of a u64.
pub(crate) const MAX_FACTORS: usize = 15;

pub(crate) struct Segment {
    pub len: usize,
    pub val: Vec<u64>,
    pub rem: Vec<u64>,
    pub nf: Vec<u8>,
    pub fac: Vec<[(u32, u8); MAX_FACTORS]>,
}

impl Segment {
    pub fn new(cap: usize) -> Self {
        Segment {
            len: 0,
            val: vec![0; cap],
            rem: vec![0; cap],
            nf: vec![0; cap],
            fac: vec![[(0, 0); MAX_FACTORS]; cap],
        }
    }

    /// Prime-index/exponent pairs of the sieved part of entry i.
    pub fn factors(&self, i: usize) -> &[(u32, u8)] {
        &self.fac[i][..self.nf[i] as usize]
    }
}

/// Factors A + B·t for t in a window; values must be nonnegative and at most
/// `max_value`, so every cofactor left after sieving is 1 or a prime.
pub(crate) struct Progression {
    a: i128,
    b: i128,
    /// per prime: residue class t* mod q of the multiples (None: no t, Some(q) as marker for all t)
    start: Vec<Option<u64>>,
}

impl Progression {
    pub fn new(primes: &[u64], a: i128, b: i128) -> Self {
        let start = primes
            .iter()
            .map(|&q| {
                let qi = q as i128;
                let (am, bm) = (a.rem_euclid(qi), b.rem_euclid(qi));
                if bm == 0 {
                    // every entry or none
                    if am == 0 { Some(u64::MAX) } else { None }
                } else {
                    let inv = bm.extended_gcd(&qi).x.rem_euclid(qi);
                    Some(((-am).rem_euclid(qi) * inv % qi) as u64)
                }
            })
            .collect();
        Progression { a, b, start }
    }

    pub fn fill(&self, primes: &[u64], seg: &mut Segment, t0: u64, len: usize) {
        seg.len = len;
        for i in 0..len {
            let v = self.a + self.b * (t0 + i as u64) as i128;
            debug_assert!(v >= 0);
            seg.val[i] = v as u64;
            seg.rem[i] = v as u64;
            seg.nf[i] = 0;
        }
        for (idx, &q) in primes.iter().enumerate() {
            let Some(ts) = self.start[idx] else { continue };
            let (first, step) = if ts == u64::MAX {
                (0usize, 1usize)
            } else {
                (((ts as i128 - t0 as i128).rem_euclid(q as i128)) as usize, q as usize)
            };
            let mut i = first;
            while i < len {
                let r = seg.rem[i];
                if r != 0 {
                    let mut r = r;
                    let mut e = 0u8;
                    while r % q == 0 {
                        r /= q;
                        e += 1;
                    }
                    if e > 0 {
                        seg.rem[i] = r;
                        let k = seg.nf[i] as usize;
                        seg.fac[i][k] = (idx as u32, e);
                        seg.nf[i] += 1;
                    }
                }
                i += step;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;

    #[test]
    fn matches_trial_factorisation() {
        let a: i128 = 7 * 23 * 23 * 20;
        let b: i128 = -11;
        let tmax = (a / 11) as u64;
        let primes = arith::primes_up_to(arith::isqrt(a as u128) as u64 + 1);
        let prog = Progression::new(&primes, a, b);
        let mut seg = Segment::new(1000);
        let mut t0 = 1;
        while t0 <= tmax {
            let len = ((tmax - t0 + 1) as usize).min(1000);
            prog.fill(&primes, &mut seg, t0, len);
            for i in 0..len {
                let v = seg.val[i];
                if v == 0 {
                    continue;
                }
                let mut f: Vec<(u64, u32)> = seg.factors(i).iter().map(|&(k, e)| (primes[k as usize], e as u32)).collect();
                if seg.rem[i] > 1 {
                    f.push((seg.rem[i], 1));
                }
                f.sort();
                assert_eq!(f, arith::factor(v), "v = {v}");
            }
            t0 += len as u64;
        }
    }
}
