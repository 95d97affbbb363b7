use crate::arith;
use crate::error::{pre, Error, Result};
use crate::heckechar::{HeckeChar, ValueMode};
use crate::padic::{p_pow, PadicNumber};
use crate::polykit::{binomial, h_poly, lcm_of_denominators};
use crate::quadfield::{kronecker, ClassGroup, Discriminant, IdealRep};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

/// Extra p-adic digits carried beyond the reported precision.
pub const GUARD_DIGITS: u32 = 10;

/// Deliberate faults built into a context (for mutation testing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    None,
    /// H_{r-k-1,k} replaced by H_{r-k-1,k} + 1.
    HPlusOne,
    /// the weight m^(r-k-1)·H(1 - 2nN/(m|D|)) replaced by the same plus 1
    WeightPlusOne,
}

/// Which n enter a coefficient sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum SumKind {
    /// all 1 ≤ n ≤ m|D|/N (C_m)
    All,
    /// p ∤ n (B_m)
    Coprime,
    /// p | n, accumulated along n = p·t
    Divisible,
}

type Cell = Arc<OnceLock<std::result::Result<Arc<Vec<BigUint>>, String>>>;

/// Where a rational prime q sits in K, with the data needed for χ on the
/// primes above it: q-ideal = λ·𝔟_A where λ = ω/a_A, ω = (x + y√D)/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PrimeShape {
    Inert,
    Ramified { class: usize, x: i128, y: i128 },
    Split { class: usize, x: i128, y: i128, class_bar: usize, xb: i128, yb: i128 },
}

/// Parameters (D, N, p, r, k) with a p-adic Hecke character of type (2k, 0)
/// and caches of the B/C coefficient sums.
pub struct HeightContext {
    pub(crate) d: Discriminant,
    pub(crate) level: u64,
    pub(crate) p: u64,
    pub(crate) r: u32,
    pub(crate) k: u32,
    pub(crate) nprec: u32,
    pub(crate) work: u32,
    pub(crate) chi: HeckeChar,
    pub(crate) modulus: BigUint,
    pub(crate) sqrt_d: BigUint,
    pub(crate) kappa: Vec<BigUint>,
    pub(crate) class_index: HashMap<(i64, i64), usize>,
    pub(crate) class_norms: Vec<u64>,
    pub(crate) d_primes: Vec<u64>,
    pub(crate) d_prime_discs: Vec<i64>,
    /// genus[A][S] = (D₂(S)/N(A)) for subsets S of the primes of D
    pub(crate) genus: Vec<Vec<i8>>,
    pub(crate) h_int: Vec<BigInt>,
    pub(crate) h_lcm: BigInt,
    /// extra constant (not multiplied by (m|D|)^R) in the homogenised weight
    pub(crate) h_const: BigInt,
    pub(crate) mutation: Mutation,
    pub(crate) twist: Option<Vec<i64>>,
    frak_p: IdealRep,
    cells: Mutex<HashMap<(SumKind, u64), Cell>>,
    pub(crate) log_cache: Mutex<HashMap<u64, BigUint>>,
    runs: AtomicUsize,
}

impl std::fmt::Debug for HeightContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HeightContext(D={}, N={}, p={}, r={}, k={}, prec={})", self.d, self.level, self.p, self.r, self.k, self.nprec)
    }
}

impl HeightContext {
    /// Validate the hypotheses and build χ in p-adic mode.
    pub fn new(d: i64, level: u64, p: u64, r: u32, k: u32, nprec: u32) -> Result<Self> {
        Self::build(d, level, p, r, k, nprec, Mutation::None, None)
    }

    /// The same parameters with a deliberate fault (fresh caches).
    pub fn mutated(&self, m: Mutation) -> Result<Self> {
        Self::build(self.d.value(), self.level, self.p, self.r, self.k, self.nprec, m, self.twist.clone())
    }

    /// χ multiplied by a class-group character ψ with values ±1 or other
    /// integers (ψ given per class index, checked to be a homomorphism).
    pub fn twisted(&self, psi: Vec<i64>) -> Result<Self> {
        let g = self.chi.group();
        if psi.len() != g.h() {
            return pre("twist must give one value per class");
        }
        for a in 0..g.h() {
            for b in 0..g.h() {
                if psi[g.mul(a, b)] != psi[a] * psi[b] {
                    return pre(format!("twist is not multiplicative at classes {a}, {b}"));
                }
            }
        }
        Self::build(self.d.value(), self.level, self.p, self.r, self.k, self.nprec, self.mutation, Some(psi))
    }

    #[allow(clippy::too_many_arguments)]
    fn build(d: i64, level: u64, p: u64, r: u32, k: u32, nprec: u32, mutation: Mutation, twist: Option<Vec<i64>>) -> Result<Self> {
        let disc = Discriminant::new(d)?;
        if !(0 < k && k < r) {
            return pre(format!("need 0 < k < r, got r = {r}, k = {k}"));
        }
        if level < 3 {
            return pre(format!("level N = {level} must be at least 3"));
        }
        if p == 2 || !arith::is_prime(p) {
            return pre(format!("p = {p} must be an odd prime"));
        }
        if level % p == 0 {
            return pre(format!("p = {p} divides N = {level}"));
        }
        if kronecker(&BigInt::from(d), &BigInt::from(p)) != 1 {
            return pre(format!("p = {p} does not split in Q(√{d})"));
        }
        for (q, _) in arith::factor(level) {
            if kronecker(&BigInt::from(d), &BigInt::from(q)) != 1 {
                return pre(format!("prime {q} of N = {level} does not split in Q(√{d})"));
            }
        }
        if nprec == 0 {
            return pre("precision must be positive");
        }
        let work = nprec + GUARD_DIGITS;
        let group = ClassGroup::new(disc)?;
        let mut rep_a = Vec::new();
        let mut class_index = HashMap::new();
        for (i, f) in group.forms().iter().enumerate() {
            let a = f.a.to_i64().unwrap();
            if a as u64 % p == 0 {
                return pre(format!("p = {p} divides the norm {a} of a class representative"));
            }
            rep_a.push(a);
            class_index.insert((a, f.b.to_i64().unwrap()), i);
        }
        let class_norms: Vec<u64> = (0..group.h()).map(|i| group.class_norm(i)).collect();
        let chi = HeckeChar::build_with_group(group, 2 * k, ValueMode::Padic { p, prec: work + 2 })?;
        if !chi.values_in_qp() {
            return Err(Error::NoRoot(format!("χ values for D = {d} do not lie in Q_{p}")));
        }
        let modulus = p_pow(p, work);
        let sqrt_d = match chi.embedding() {
            crate::heckechar::Embedding::Padic { sqrt_d, .. } => sqrt_d.residue(work)?,
            _ => unreachable!(),
        };
        let mut kappa = Vec::new();
        for (i, v) in chi.table().iter().enumerate() {
            let mut x = v.as_zp().expect("checked above");
            if let Some(t) = &twist {
                x = x.scale_int(t[i]);
            }
            let a = PadicNumber::from_i64(rep_a[i], p, work + 2).pow(2 * k);
            let kv = x.div(&a)?;
            if kv.valuation().is_some_and(|v| v < 0) {
                return pre("class value with negative valuation");
            }
            kappa.push(kv.residue(work)?);
        }
        let d_primes: Vec<u64> = arith::factor(d.unsigned_abs()).into_iter().map(|(q, _)| q).collect();
        let d_prime_discs: Vec<i64> = d_primes.iter().map(|&q| if q % 4 == 1 { q as i64 } else { -(q as i64) }).collect();
        let genus = class_norms
            .iter()
            .map(|&na| {
                (0..1usize << d_primes.len())
                    .map(|s| {
                        let d2: i64 = (0..d_primes.len()).filter(|j| s >> j & 1 == 1).map(|j| d_prime_discs[j]).product();
                        arith::kronecker(d2, na as i64)
                    })
                    .collect()
            })
            .collect();
        let rr = r - k - 1;
        let h = h_poly(rr, k)?;
        let h_lcm = lcm_of_denominators(&h);
        let mut h_int: Vec<BigInt> =
            (0..=rr as usize).map(|i| (h.coeff(i) * num_rational::BigRational::from_integer(h_lcm.clone())).to_integer()).collect();
        if mutation == Mutation::HPlusOne {
            h_int[0] += &h_lcm;
        }
        let h_const = if mutation == Mutation::WeightPlusOne {
            &h_lcm * BigInt::from(disc.abs()).pow(rr)
        } else {
            BigInt::zero()
        };
        let frak_p = chi.frak_p().expect("p-adic mode").clone();
        Ok(HeightContext {
            d: disc,
            level,
            p,
            r,
            k,
            nprec,
            work,
            chi,
            modulus,
            sqrt_d,
            kappa,
            class_index,
            class_norms,
            d_primes,
            d_prime_discs,
            genus,
            h_int,
            h_lcm,
            h_const,
            mutation,
            twist,
            frak_p,
            cells: Mutex::new(HashMap::new()),
            log_cache: Mutex::new(HashMap::new()),
            runs: AtomicUsize::new(0),
        })
    }

    pub fn disc(&self) -> Discriminant {
        self.d
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Reported precision N_prec.
    pub fn prec(&self) -> u32 {
        self.nprec
    }

    /// Internal precision N_prec + guard digits.
    pub fn work_prec(&self) -> u32 {
        self.work
    }

    pub fn h(&self) -> usize {
        self.chi.group().h()
    }

    pub fn group(&self) -> &ClassGroup {
        self.chi.group()
    }

    pub fn chi(&self) -> &HeckeChar {
        &self.chi
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    pub fn twist(&self) -> Option<&[i64]> {
        self.twist.as_deref()
    }

    /// r - k - 1, the degree of H.
    pub fn hdeg(&self) -> u32 {
        self.r - self.k - 1
    }

    /// binom(2r - 2, r - k - 1).
    pub fn binom(&self) -> BigInt {
        binomial(2 * self.r - 2, self.hdeg())
    }

    /// Digits lost to the denominators of H (the only division in the sums).
    pub fn h_slack(&self) -> u32 {
        arith_val(&self.h_lcm, self.p)
    }

    /// 𝔭, the prime above p sent into the maximal ideal, and its conjugate.
    pub fn frak_p(&self) -> &IdealRep {
        &self.frak_p
    }

    pub fn frak_pbar(&self) -> IdealRep {
        self.frak_p.conj()
    }

    /// Classes of 𝔭 and 𝔭̄.
    pub fn frob_classes(&self) -> (usize, usize) {
        let g = self.group();
        (g.class_of_ideal(&self.frak_p), g.class_of_ideal(&self.frak_pbar()))
    }

    /// χ(𝔞) in Z_p at working precision, including the twist.
    pub fn chi_of(&self, id: &IdealRep) -> PadicNumber {
        let (c, v) = self.chi.chi_value_class(id);
        let x = v.as_zp().expect("context values lie in Q_p");
        match &self.twist {
            Some(t) => x.scale_int(t[c]),
            None => x,
        }
    }

    /// r_{A,χ}(n) by direct enumeration of ideals (slow path), with the twist.
    pub fn r_chi_direct(&self, class: usize, n: i64) -> PadicNumber {
        let mut acc = PadicNumber::zero(self.p, self.work as i64);
        if n <= 0 {
            return acc;
        }
        for (id, c) in self.group().ideals_of_norm(n as u64) {
            if c == class {
                acc = acc.add(&self.chi_of(&id));
            }
        }
        acc
    }

    /// The unit constant L_H·|D|^(r-k-1) with C_m = S_m / (L_H·|D|^(r-k-1)),
    /// S_m being the homogenised integer sum.
    pub(crate) fn sum_scale(&self) -> BigInt {
        &self.h_lcm * BigInt::from(self.d.abs()).pow(self.hdeg())
    }

    /// Shape of the prime q in K (q prime).
    pub(crate) fn prime_shape(&self, q: u64) -> PrimeShape {
        let d = self.d.value();
        let kr = if q == 2 { arith::kronecker(d, 2) } else { kronecker_small(d, q) };
        match kr {
            -1 => PrimeShape::Inert,
            0 => {
                let (class, x, y) = self.reduce_prime(q as i128, q as i128);
                PrimeShape::Ramified { class, x, y }
            }
            _ => {
                let b = if q == 2 {
                    1
                } else {
                    let s = arith::sqrt_mod_prime(d.rem_euclid(q as i64) as u64, q).expect("split prime") as i128;
                    if s % 2 == 0 { q as i128 - s } else { s }
                };
                let (class, x, y) = self.reduce_prime(q as i128, b);
                let (class_bar, xb, yb) = self.reduce_prime(q as i128, -b);
                PrimeShape::Split { class, x, y, class_bar, xb, yb }
            }
        }
    }

    /// Reduce the ideal qZ + ((-b + √D)/2)Z; returns its class and ω₁' with
    /// ideal = (ω₁'/a_A)·𝔟_A.
    fn reduce_prime(&self, q: i128, b: i128) -> (usize, i128, i128) {
        let d = self.d.value() as i128;
        let (mut a, mut b0, mut c) = (q, b, (b * b - d) / (4 * q));
        // rows of the basis transform acting on (ω₁, ω₂)
        let mut m = [[1i128, 0], [0, 1]];
        loop {
            if !(b0 > -a && b0 <= a) {
                let two_a = 2 * a;
                let k = (b0 - a).div_euclid(two_a) + if (b0 - a).rem_euclid(two_a) != 0 { 1 } else { 0 };
                c = a * k * k - b0 * k + c;
                b0 -= two_a * k;
                m[1][0] += k * m[0][0];
                m[1][1] += k * m[0][1];
            }
            if a > c || (a == c && b0 < 0) {
                std::mem::swap(&mut a, &mut c);
                b0 = -b0;
                m = [m[1], [-m[0][0], -m[0][1]]];
                continue;
            }
            break;
        }
        let class = self.class_index[&(a as i64, b0 as i64)];
        // ω₁ = q = (2q + 0√D)/2, ω₂ = (-b + √D)/2
        let x = 2 * q * m[0][0] - b * m[0][1];
        let y = m[0][1];
        (class, x, y)
    }

    /// Cached per-class sums S_m (residues mod p^work) for one kind.
    pub(crate) fn sums(&self, kind: SumKind, mm: u64) -> Result<Arc<Vec<BigUint>>> {
        let cell = {
            let mut map = self.cells.lock().unwrap();
            map.entry((kind, mm)).or_default().clone()
        };
        let res = cell.get_or_init(|| self.compute_sums(kind, mm).map_err(|e| e.to_string()));
        res.clone().map_err(Error::Precondition)
    }

    fn compute_sums(&self, kind: SumKind, mm: u64) -> Result<Arc<Vec<BigUint>>> {
        self.runs.fetch_add(1, Ordering::Relaxed);
        match kind {
            SumKind::All | SumKind::Coprime => {
                let (all, cop) = super::engine::run(self, mm, false)?;
                // fill the sibling cell too
                let (mine, other, other_kind) = if kind == SumKind::All {
                    (all, cop, SumKind::Coprime)
                } else {
                    (cop, all, SumKind::All)
                };
                let cell = {
                    let mut map = self.cells.lock().unwrap();
                    map.entry((other_kind, mm)).or_default().clone()
                };
                let _ = cell.set(Ok(Arc::new(other)));
                Ok(Arc::new(mine))
            }
            SumKind::Divisible => Ok(Arc::new(super::engine::run(self, mm, true)?.0)),
        }
    }

    /// Number of filled sum cells.
    pub fn cached_cells(&self) -> usize {
        self.cells.lock().unwrap().values().filter(|c| c.get().is_some()).count()
    }

    /// Number of passes the summation engine has made over some range of n.
    pub fn engine_runs(&self) -> usize {
        self.runs.load(Ordering::Relaxed)
    }
}

fn kronecker_small(d: i64, q: u64) -> i8 {
    arith::kronecker(d, q as i64)
}

/// v_p(n) for nonzero n (0 for n = 0).
pub(crate) fn arith_val(n: &BigInt, p: u64) -> u32 {
    let mut n = n.abs();
    let pb = BigInt::from(p);
    let mut v = 0;
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

