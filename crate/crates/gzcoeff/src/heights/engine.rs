//! The B/C sums over n, run on fixed-width Montgomery residues mod p^W.
//!
//! For each n the engine needs σ_A(n) and r_{A,χ}(j), j = m|D| - nN. Both
//! are read off factorisations produced by a segmented sieve along the two
//! progressions n = b·t and j = m|D| - bN·t. σ_A(n) is an integer
//! combination of log_p(q) over the primes q | n; r_{A,χ}(j) is a product
//! over the prime powers of j in the group ring of the class group.

use super::context::{HeightContext, PrimeShape};
use super::sieve::{Progression, Segment};
use crate::arith;
use crate::error::{Error, Result};
use crate::padic::{iwasawa_log_int, mod_inverse, p_pow};
use crypto_bigint::modular::runtime_mod::{DynResidue, DynResidueParams};
use crypto_bigint::Uint;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

const SEGMENT: usize = 1 << 14;
/// Largest class number the engine's fixed arrays hold.
pub(crate) const MAX_H: usize = 16;
/// Primes below this bound keep their χ data for the whole run.
const PRIME_CACHE: u64 = 1 << 20;

/// Series parameters for log_p(q) = log(q^e)/e with e = (p-1)p^s:
/// T terms of the series mod p^(W+s).
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogPlan {
    pub s: u32,
    pub terms: u32,
    pub exponent: u64,
}

impl LogPlan {
    /// Cheapest (s, T) with T < p - 1 (so the divisions 1/j are by units)
    /// and (T+1)(s+1) ≥ W+s+1 (so the tail vanishes mod p^(W+s)).
    pub fn choose(p: u64, w: u32) -> Option<LogPlan> {
        let mut best: Option<(f64, LogPlan)> = None;
        let mut pe = 1u64;
        for s in 0..64u32 {
            let Some(exponent) = (p - 1).checked_mul(pe) else { break };
            let need = (w + s + 1).div_ceil(s + 1);
            let terms = need.saturating_sub(1).max(1);
            if (terms as u64) + 1 < p {
                let cost = terms as f64 + 1.5 * (exponent as f64).log2();
                if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                    best = Some((cost, LogPlan { s, terms, exponent }));
                }
            }
            let Some(next) = pe.checked_mul(p) else { break };
            pe = next;
        }
        best.map(|(_, plan)| plan)
    }
}

/// Residues mod a fixed odd modulus on L limbs.
#[derive(Clone, Copy)]
struct Ring<const L: usize> {
    params: DynResidueParams<L>,
    small: Option<u128>,
}

type Res<const L: usize> = DynResidue<L>;

impl<const L: usize> Ring<L> {
    fn new(m: &BigUint) -> Self {
        let params = DynResidueParams::new(&Self::uint(m));
        Ring { params, small: m.to_u128().filter(|&v| v < 1 << 126) }
    }

    fn uint(x: &BigUint) -> Uint<L> {
        let mut w = [0u64; L];
        for (i, d) in x.to_u64_digits().into_iter().enumerate() {
            w[i] = d;
        }
        Uint::from_words(w)
    }

    fn modulus(&self) -> BigUint {
        Self::big_of(self.params.modulus())
    }

    fn big_of(u: &Uint<L>) -> BigUint {
        let mut bytes = Vec::with_capacity(8 * L);
        for w in u.to_words() {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        BigUint::from_bytes_le(&bytes)
    }

    fn zero(&self) -> Res<L> {
        Res::zero(self.params)
    }

    fn one(&self) -> Res<L> {
        Res::one(self.params)
    }

    fn from_big(&self, x: &BigUint) -> Res<L> {
        Res::new(&Self::uint(&(x % self.modulus())), self.params)
    }

    fn get(&self, x: &Res<L>) -> BigUint {
        Self::big_of(&x.retrieve())
    }

    fn int(&self, c: i128) -> Res<L> {
        if let Some(m) = self.small {
            let r = c.rem_euclid(m as i128) as u128;
            return Res::new(&Self::uint(&BigUint::from(r)), self.params);
        }
        let mag = c.unsigned_abs();
        let mut w = [0u64; L];
        w[0] = mag as u64;
        w[1] = (mag >> 64) as u64;
        let r = Res::new(&Uint::from_words(w), self.params);
        if c < 0 {
            -r
        } else {
            r
        }
    }

    fn pow(&self, x: &Res<L>, mut e: u64) -> Res<L> {
        let mut base = *x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

/// χ data for a prime q: value and class of each prime ideal above q.
#[derive(Clone, Copy)]
enum PrimeChi<const L: usize> {
    Inert,
    Ramified { class: usize, v: Res<L> },
    Split { class: usize, v: Res<L>, class_bar: usize, vb: Res<L> },
}

struct Engine<'a, const L: usize> {
    ctx: &'a HeightContext,
    ring: Ring<L>,
    lring: Ring<L>,
    plan: Option<LogPlan>,
    inv_j: Vec<Res<L>>,
    inv_pm1: Res<L>,
    inv2: Res<L>,
    sqrt_d: Res<L>,
    kappa: Vec<Res<L>>,
    mul: Vec<Vec<usize>>,
    h: usize,
    ell: u32,
    chi_cache: HashMap<u64, PrimeChi<L>>,
    logs: HashMap<u64, Res<L>>,
    new_logs: Vec<(u64, BigUint)>,
}

/// Per-class sums for index mm. With `divisible` false the result is
/// (sum over all n, sum over p ∤ n); with `divisible` true it is the sum over
/// p | n alone, accumulated along n = p·t (second vector empty).
pub(crate) fn run(ctx: &HeightContext, mm: u64, divisible: bool) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
    if ctx.h() > MAX_H {
        return Err(Error::Precondition(format!("class number {} above {MAX_H}", ctx.h())));
    }
    let plan = LogPlan::choose(ctx.p, ctx.work);
    let extra = plan.map_or(0, |pl| pl.s);
    let bits = p_pow(ctx.p, ctx.work + extra).bits();
    match bits {
        0..=255 => Engine::<4>::new(ctx, plan).run(mm, divisible),
        256..=511 => Engine::<8>::new(ctx, plan).run(mm, divisible),
        512..=1023 => Engine::<16>::new(ctx, plan).run(mm, divisible),
        1024..=2047 => Engine::<32>::new(ctx, plan).run(mm, divisible),
        _ => Err(Error::Precision(format!("p^{} too large for the fixed-width engine", ctx.work))),
    }
}

impl<'a, const L: usize> Engine<'a, L> {
    fn new(ctx: &'a HeightContext, plan: Option<LogPlan>) -> Self {
        let ring = Ring::<L>::new(&ctx.modulus);
        let lmod = p_pow(ctx.p, ctx.work + plan.map_or(0, |pl| pl.s));
        let lring = Ring::<L>::new(&lmod);
        let inv_j = match plan {
            Some(pl) => (0..=pl.terms as u64)
                .map(|j| {
                    if j == 0 {
                        lring.zero()
                    } else {
                        lring.from_big(&mod_inverse(&BigUint::from(j), &lmod).expect("j < p"))
                    }
                })
                .collect(),
            None => Vec::new(),
        };
        let inv_pm1 = ring.from_big(&mod_inverse(&BigUint::from(ctx.p - 1), &ctx.modulus).expect("unit"));
        let inv2 = ring.from_big(&mod_inverse(&BigUint::from(2u32), &ctx.modulus).expect("odd p"));
        let g = ctx.group();
        let h = g.h();
        let mul = (0..h).map(|a| (0..h).map(|b| g.mul(a, b)).collect()).collect();
        Engine {
            ctx,
            ring,
            lring,
            plan,
            inv_j,
            inv_pm1,
            inv2,
            sqrt_d: ring.from_big(&ctx.sqrt_d),
            kappa: ctx.kappa.iter().map(|k| ring.from_big(k)).collect(),
            mul,
            h,
            ell: 2 * ctx.k,
            chi_cache: HashMap::new(),
            logs: HashMap::new(),
            new_logs: Vec::new(),
        }
    }

    /// log_p(q) mod p^W for a prime q ≠ p.
    fn log_prime(&mut self, q: u64) -> Res<L> {
        if let Some(v) = self.logs.get(&q) {
            return *v;
        }
        let shared = self.ctx.log_cache.lock().unwrap().get(&q).cloned();
        let big = match shared {
            Some(b) => b,
            None => {
                let b = self.compute_log(q);
                self.new_logs.push((q, b.clone()));
                b
            }
        };
        let v = self.ring.from_big(&big);
        self.logs.insert(q, v);
        v
    }

    fn compute_log(&self, q: u64) -> BigUint {
        let (p, w) = (self.ctx.p, self.ctx.work);
        let Some(plan) = self.plan else {
            return iwasawa_log_int(p, q as i64, w).and_then(|l| l.residue(w)).expect("log of a unit");
        };
        let lr = &self.lring;
        let x = lr.pow(&lr.int(q as i128), plan.exponent);
        let y = x - lr.one();
        // Horner on Σ_{j=1}^{T} (-1)^(j+1) y^j / j
        let coef = |j: u32| if j % 2 == 1 { self.inv_j[j as usize] } else { -self.inv_j[j as usize] };
        let mut acc = coef(plan.terms);
        for j in (1..plan.terms).rev() {
            acc = coef(j) + y * acc;
        }
        let big = lr.get(&(y * acc));
        let ps = p_pow(p, plan.s);
        let (quot, rem) = big.div_rem(&ps);
        debug_assert!(rem.is_zero());
        let v = self.ring.from_big(&quot) * self.inv_pm1;
        self.ring.get(&v)
    }

    /// emb((x + y√D)/2)^ℓ·κ_class
    fn prime_value(&self, class: usize, x: i128, y: i128) -> Res<L> {
        let r = &self.ring;
        let e = (r.int(x) + r.int(y) * self.sqrt_d) * self.inv2;
        r.pow(&e, self.ell as u64) * self.kappa[class]
    }

    fn chi_prime(&mut self, q: u64) -> PrimeChi<L> {
        if let Some(c) = self.chi_cache.get(&q) {
            return *c;
        }
        let c = match self.ctx.prime_shape(q) {
            PrimeShape::Inert => PrimeChi::Inert,
            PrimeShape::Ramified { class, x, y } => PrimeChi::Ramified { class, v: self.prime_value(class, x, y) },
            PrimeShape::Split { class, x, y, class_bar, xb, yb } => PrimeChi::Split {
                class,
                v: self.prime_value(class, x, y),
                class_bar,
                vb: self.prime_value(class_bar, xb, yb),
            },
        };
        if q < PRIME_CACHE {
            self.chi_cache.insert(q, c);
        }
        c
    }

    /// r_{A,χ}(j) for every class A, from the factorisation of j; None when
    /// an inert prime divides j to an odd power.
    fn r_vector(&mut self, fac: &[(u64, u32)], out: &mut [Res<L>; MAX_H]) -> bool {
        let h = self.h;
        let d = self.ctx.d.value();
        // cheap inert test before any χ work
        for &(q, e) in fac {
            if e % 2 == 1 && q >= PRIME_CACHE && arith::kronecker(d, q as i64) == -1 {
                return false;
            }
        }
        let zero = self.ring.zero();
        let mut cur = [zero; MAX_H];
        cur[0] = self.ring.one();
        let mut scalar = self.ring.one();
        let mut nxt = [zero; MAX_H];
        for &(q, e) in fac {
            match self.chi_prime(q) {
                PrimeChi::Inert => {
                    if e % 2 == 1 {
                        return false;
                    }
                    scalar = scalar * self.ring.pow(&self.ring.int(q as i128), (self.ell * e / 2) as u64);
                }
                PrimeChi::Ramified { class, v } => {
                    scalar = scalar * self.ring.pow(&v, e as u64);
                    let mut c = 0;
                    for _ in 0..e {
                        c = self.mul[c][class];
                    }
                    if c != 0 {
                        nxt[..h].fill(zero);
                        for x in 0..h {
                            nxt[self.mul[x][c]] = cur[x];
                        }
                        cur[..h].copy_from_slice(&nxt[..h]);
                    }
                }
                PrimeChi::Split { class, v, class_bar, vb } => {
                    if h == 1 {
                        // Σ_a v^a vb^(e-a)
                        let mut s = zero;
                        let mut va = self.ring.one();
                        for a in 0..=e {
                            s += va * self.ring.pow(&vb, (e - a) as u64);
                            va = va * v;
                        }
                        scalar = scalar * s;
                        continue;
                    }
                    nxt[..h].fill(zero);
                    let mut va = self.ring.one();
                    let mut ca = 0usize;
                    for a in 0..=e {
                        let coef = va * self.ring.pow(&vb, (e - a) as u64);
                        let mut cls = ca;
                        for _ in 0..(e - a) {
                            cls = self.mul[cls][class_bar];
                        }
                        for x in 0..h {
                            let y = self.mul[x][cls];
                            nxt[y] += coef * cur[x];
                        }
                        va = va * v;
                        ca = self.mul[ca][class];
                    }
                    cur[..h].copy_from_slice(&nxt[..h]);
                }
            }
        }
        for x in 0..h {
            out[x] = cur[x] * scalar;
        }
        true
    }

    /// Integer coefficients c with σ_A(n) = Σ_i c[A][i]·log_p(q_i); false when
    /// σ_A(n) = 0 for every class.
    fn sigma_coeffs(&self, fac: &[(u64, u32)], coef: &mut [[i64; 16]; MAX_H]) -> bool {
        let ctx = self.ctx;
        let d = ctx.d.value();
        let nq = fac.len();
        // D-primes dividing n, as bits of the global subset mask
        let mut dmask = 0usize;
        let mut dpos = [usize::MAX; 16];
        for (i, &(q, _)) in fac.iter().enumerate() {
            if let Some(j) = ctx.d_primes.iter().position(|&x| x == q) {
                dmask |= 1 << j;
                dpos[i] = j;
            }
        }
        for row in coef.iter_mut().take(self.h) {
            row[..nq].fill(0);
        }
        let mut any = false;
        // iterate over submasks S of dmask
        let mut s = dmask;
        loop {
            let d2: i64 = (0..ctx.d_primes.len()).filter(|j| s >> j & 1 == 1).map(|j| ctx.d_prime_discs[j]).product();
            let d1 = d / d2;
            let c0 = d2.signum() * arith::kronecker(d2, ctx.level as i64) as i64;
            let mut a_vals = [0i64; 16];
            let mut b_vals = [0i64; 16];
            for (i, &(q, e)) in fac.iter().enumerate() {
                let e = e as i64;
                if dpos[i] != usize::MAX {
                    let (phi, f) = if s >> dpos[i] & 1 == 1 {
                        (ipow(arith::kronecker(d1, q as i64) as i64, e), e)
                    } else {
                        (ipow(arith::kronecker(d2, q as i64) as i64, e), 0)
                    };
                    a_vals[i] = phi;
                    b_vals[i] = phi * (e - 2 * f);
                } else {
                    let a1 = arith::kronecker(d1, q as i64) as i64;
                    let a2 = if d2 == 1 { 1 } else { arith::kronecker(d2, q as i64) as i64 };
                    let (mut sa, mut sb) = (0, 0);
                    for f in 0..=e {
                        let t = ipow(a1, f) * ipow(a2, e - f);
                        sa += t;
                        sb += t * (e - 2 * f);
                    }
                    a_vals[i] = sa;
                    b_vals[i] = sb;
                }
            }
            let zeros = a_vals[..nq].iter().filter(|&&x| x == 0).count();
            if zeros <= 1 && c0 != 0 {
                for i in 0..nq {
                    if fac[i].0 == ctx.p || b_vals[i] == 0 {
                        continue;
                    }
                    let mut c = c0 * b_vals[i];
                    for (jj, &aj) in a_vals[..nq].iter().enumerate() {
                        if jj != i {
                            c *= aj;
                        }
                    }
                    if c == 0 {
                        continue;
                    }
                    for (cls, row) in coef.iter_mut().enumerate().take(self.h) {
                        row[i] += ctx.genus[cls][s] as i64 * c;
                        any = true;
                    }
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & dmask;
        }
        any && coef.iter().take(self.h).any(|row| row[..nq].iter().any(|&c| c != 0))
    }

    /// Σ_i hc_i X^i Y^(R-i) as an exact integer when it fits.
    fn h_value(&self, x: i128, ypow: &[i128]) -> Option<i128> {
        let hc = &self.ctx.h_int;
        let rr = hc.len() - 1;
        let mut acc = hc[rr].to_i128()?;
        for i in (0..rr).rev() {
            acc = acc.checked_mul(x)?.checked_add(hc[i].to_i128()?.checked_mul(ypow[rr - i])?)?;
        }
        acc.checked_add(self.ctx.h_const.to_i128()?)
    }

    fn h_value_ring(&self, x: i128, y: i128) -> Res<L> {
        let r = &self.ring;
        let hc = &self.ctx.h_int;
        let rr = hc.len() - 1;
        let (xr, yr) = (r.int(x), r.int(y));
        let mut acc = r.from_big(&big_mod(&hc[rr], &self.ctx.modulus));
        let mut yp = r.one();
        for i in (0..rr).rev() {
            yp = yp * yr;
            acc = acc * xr + r.from_big(&big_mod(&hc[i], &self.ctx.modulus)) * yp;
        }
        acc + r.from_big(&big_mod(&self.ctx.h_const, &self.ctx.modulus))
    }

    fn run(mut self, mm: u64, divisible: bool) -> Result<(Vec<BigUint>, Vec<BigUint>)> {
        let ctx = self.ctx;
        let (p, level) = (ctx.p, ctx.level);
        let y = mm as u128 * ctx.d.abs() as u128;
        if y > u64::MAX as u128 / 2 {
            return Err(Error::Precondition(format!("index {mm} too large")));
        }
        let y = y as i128;
        let h = self.h;
        let zero = self.ring.zero();
        let mut acc_all = vec![zero; h];
        let mut acc_cop = vec![zero; h];
        // n ≤ (m|D| - 1)/N keeps j ≥ 1 (r(0) = 0)
        let nmax = ((y - 1) / level as i128).max(0) as u64;
        let step = if divisible { p } else { 1 };
        let tmax = nmax / step;
        if tmax == 0 {
            return Ok((acc_all.iter().map(|_| BigUint::zero()).collect(), if divisible { vec![] } else { vec![BigUint::zero(); h] }));
        }
        let primes = arith::primes_up_to(arith::isqrt(y as u128) as u64 + 1);
        let nprog = Progression::new(&primes, 0, step as i128);
        let jprog = Progression::new(&primes, y, -((step * level) as i128));
        let mut nseg = Segment::new(SEGMENT);
        let mut jseg = Segment::new(SEGMENT);
        let rr = ctx.h_int.len() - 1;
        let ypow: Vec<i128> = (0..=rr as u32).map(|i| y.checked_pow(i).unwrap_or(0)).collect();
        let ypow_ok = (0..=rr as u32).all(|i| y.checked_pow(i).is_some());
        let mut nfac: Vec<(u64, u32)> = Vec::with_capacity(16);
        let mut jfac: Vec<(u64, u32)> = Vec::with_capacity(16);
        let mut coef = [[0i64; 16]; MAX_H];
        let mut rv = [zero; MAX_H];
        let mut t0 = 1u64;
        while t0 <= tmax {
            let len = ((tmax - t0 + 1) as usize).min(SEGMENT);
            nprog.fill(&primes, &mut nseg, t0, len);
            jprog.fill(&primes, &mut jseg, t0, len);
            for i in 0..len {
                let n = nseg.val[i];
                collect(&primes, &nseg, i, &mut nfac);
                if !self.sigma_coeffs(&nfac, &mut coef) {
                    continue;
                }
                collect(&primes, &jseg, i, &mut jfac);
                if !self.r_vector(&jfac, &mut rv) {
                    continue;
                }
                let x = y - 2 * (n as i128) * level as i128;
                let hv = match (ypow_ok, self.h_value(x, &ypow)) {
                    (true, Some(v)) => self.ring.int(v),
                    _ => self.h_value_ring(x, y),
                };
                let logs: Vec<Res<L>> = nfac.iter().map(|&(q, _)| if q == p { zero } else { self.log_prime(q) }).collect();
                let coprime = n % p != 0;
                for cls in 0..h {
                    let row = &coef[cls];
                    if row[..nfac.len()].iter().all(|&c| c == 0) {
                        continue;
                    }
                    let mut sigma = zero;
                    for (k, lg) in logs.iter().enumerate() {
                        if row[k] != 0 {
                            sigma += self.ring.int(row[k] as i128) * lg;
                        }
                    }
                    let term = rv[cls] * sigma * hv;
                    acc_all[cls] += term;
                    if coprime && !divisible {
                        acc_cop[cls] += term;
                    }
                }
            }
            t0 += len as u64;
        }
        if !self.new_logs.is_empty() {
            let mut shared = ctx.log_cache.lock().unwrap();
            for (q, b) in self.new_logs.drain(..) {
                shared.insert(q, b);
            }
        }
        let all = acc_all.iter().map(|x| self.ring.get(x)).collect();
        let cop = if divisible { Vec::new() } else { acc_cop.iter().map(|x| self.ring.get(x)).collect() };
        Ok((all, cop))
    }
}

fn collect(primes: &[u64], seg: &Segment, i: usize, out: &mut Vec<(u64, u32)>) {
    out.clear();
    out.extend(seg.factors(i).iter().map(|&(k, e)| (primes[k as usize], e as u32)));
    if seg.rem[i] > 1 {
        out.push((seg.rem[i], 1));
    }
}

fn ipow(b: i64, e: i64) -> i64 {
    match b {
        1 => 1,
        0 => i64::from(e == 0),
        -1 => {
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        _ => b.pow(e as u32),
    }
}

fn big_mod(x: &num_bigint::BigInt, m: &BigUint) -> BigUint {
    x.mod_floor(&num_bigint::BigInt::from(m.clone())).to_biguint().expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_plan_bounds() {
        for (p, w) in [(23u64, 40u32), (11, 40), (29, 40), (13, 20), (101, 15)] {
            let pl = LogPlan::choose(p, w).unwrap();
            assert!((pl.terms as u64) + 1 < p);
            assert!((pl.terms + 1) * (pl.s + 1) >= w + pl.s + 1);
        }
        assert!(LogPlan::choose(3, 80).is_none());
    }
}
