use super::disc::Discriminant;
use super::element::OkElem;
use super::form::{reduced_forms_raw, QuadForm};
use super::ideal::{all_ideals_of_norm, split_type, IdealRep, SplitType};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// The class group of K as reduced forms under composition.
///
/// Index 0 is the principal class; the remaining classes follow the
/// lexicographic (a, b) order of their reduced forms.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    d: Discriminant,
    forms: Vec<QuadForm>,
    index: HashMap<(BigInt, BigInt), usize>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
    generators: Vec<(usize, u64)>,
    coords: Vec<Vec<u64>>,
    norms: Vec<u64>,
}

/// Reduced forms of discriminant d, one per class, sorted by (a, b).
pub fn reduced_forms(d: Discriminant) -> Vec<QuadForm> {
    reduced_forms_raw(d.value())
}

impl ClassGroup {
    pub fn new(d: Discriminant) -> Result<Self> {
        let forms = reduced_forms(d);
        let h = forms.len();
        let index: HashMap<(BigInt, BigInt), usize> =
            forms.iter().enumerate().map(|(i, f)| ((f.a.clone(), f.b.clone()), i)).collect();
        let look = |f: &QuadForm| index[&(f.a.clone(), f.b.clone())];
        let mut table = vec![0u32; h * h];
        for i in 0..h {
            for j in i..h {
                let k = look(&forms[i].compose(&forms[j])?) as u32;
                table[i * h + j] = k;
                table[j * h + i] = k;
            }
        }
        let inverse: Vec<usize> = forms.iter().map(|f| look(&f.inverse())).collect();
        let mut g = ClassGroup {
            d,
            forms,
            index,
            table,
            inverse,
            orders: Vec::new(),
            generators: Vec::new(),
            coords: Vec::new(),
            norms: Vec::new(),
        };
        g.orders = (0..h).map(|i| g.order_of(i)).collect();
        g.generators = g.find_basis().ok_or_else(|| {
            Error::Precondition(format!("no cyclic decomposition found for D={d}"))
        })?;
        g.coords = g.coordinates();
        g.norms = (0..h).map(|i| g.coprime_norm(i)).collect();
        Ok(g)
    }

    pub fn disc(&self) -> Discriminant {
        self.d
    }

    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &QuadForm {
        &self.forms[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.h() + j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn pow(&self, i: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(i) } else { i };
        let mut acc = 0;
        for _ in 0..e.unsigned_abs() % self.orders[i] {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    fn order_of(&self, i: usize) -> u64 {
        let mut x = i;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    /// Cyclic generators (class, order) with G the internal direct product of
    /// the cyclic subgroups they span.
    pub fn generators(&self) -> &[(usize, u64)] {
        &self.generators
    }

    /// Exponent vector of a class in terms of `generators()`.
    pub fn coords(&self, i: usize) -> &[u64] {
        &self.coords[i]
    }

    fn find_basis(&self) -> Option<Vec<(usize, u64)>> {
        let h = self.h();
        let mut member = vec![false; h];
        member[0] = true;
        let mut chosen = Vec::new();
        if self.extend_basis(&mut member, 1, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn extend_basis(&self, member: &mut Vec<bool>, size: usize, chosen: &mut Vec<(usize, u64)>) -> bool {
        let h = self.h();
        if size == h {
            return true;
        }
        let mut cands: Vec<usize> = (1..h)
            .filter(|&x| {
                // <x> meets the current subgroup only in the identity
                let mut y = x;
                while y != 0 {
                    if member[y] {
                        return false;
                    }
                    y = self.mul(y, x);
                }
                true
            })
            .collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x]), x));
        for x in cands {
            let ord = self.orders[x];
            if h % (size * ord as usize) != 0 {
                continue;
            }
            let old: Vec<usize> = (0..h).filter(|&i| member[i]).collect();
            let mut added = Vec::new();
            for &s in &old {
                let mut y = s;
                for _ in 1..ord {
                    y = self.mul(y, x);
                    if !member[y] {
                        member[y] = true;
                        added.push(y);
                    }
                }
            }
            chosen.push((x, ord));
            if self.extend_basis(member, size * ord as usize, chosen) {
                return true;
            }
            chosen.pop();
            for y in added {
                member[y] = false;
            }
        }
        false
    }

    fn coordinates(&self) -> Vec<Vec<u64>> {
        let h = self.h();
        let mut out = vec![Vec::new(); h];
        let n = self.generators.len();
        let mut e = vec![0u64; n];
        loop {
            let mut x = 0;
            for (i, &(g, _)) in self.generators.iter().enumerate() {
                x = self.mul(x, self.pow(g, e[i] as i64));
            }
            out[x] = e.clone();
            let mut j = 0;
            while j < n {
                e[j] += 1;
                if e[j] < self.generators[j].1 {
                    break;
                }
                e[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
        out
    }

    /// Class index of a (not necessarily reduced) form.
    pub fn class_of_form(&self, f: &QuadForm) -> Result<usize> {
        if f.disc_i64() != self.d.value() {
            return Err(Error::DiscriminantMismatch(f.to_string(), self.d.to_string()));
        }
        let r = f.reduce();
        Ok(self.index[&(r.a, r.b)])
    }

    pub fn class_of_ideal(&self, id: &IdealRep) -> usize {
        self.class_of_form(&id.form()).expect("ideal of this field")
    }

    /// Write 𝔞 = λ·𝔟 with 𝔟 the reduced representative ideal of its class.
    /// Returns (class, numerator, denominator) with λ = numerator/denominator.
    pub fn reduce_ideal(&self, id: &IdealRep) -> (usize, OkElem, BigInt) {
        let (r, t) = id.form().reduce_tracked();
        let prim = IdealRep { scale: BigInt::one(), ..id.clone() };
        let (w1, w2) = prim.basis();
        let (n1, _) = t.apply(&w1, &w2);
        let num = n1.scale(&id.scale);
        let class = self.index[&(r.a.clone(), r.b.clone())];
        (class, num, r.a)
    }

    /// The reduced representative ideal aZ + ((-b + √D)/2)Z of a class.
    pub fn representative(&self, i: usize) -> IdealRep {
        IdealRep::from_form(&self.forms[i])
    }

    /// Norm of a class representative coprime to D: the leading coefficient a
    /// when gcd(a, D) = 1, else the smallest integer coprime to D that the
    /// reduced form represents.
    pub fn class_norm(&self, i: usize) -> u64 {
        self.norms[i]
    }

    fn coprime_norm(&self, i: usize) -> u64 {
        let f = &self.forms[i];
        let ad = self.d.abs();
        let a = f.a.to_u64().unwrap();
        if a.gcd(&ad) == 1 {
            return a;
        }
        let mut bound = 4i64;
        loop {
            let mut best: Option<u64> = None;
            for x in -bound..=bound {
                for y in -bound..=bound {
                    if x == 0 && y == 0 {
                        continue;
                    }
                    let v = f.eval(&BigInt::from(x), &BigInt::from(y)).to_u64().unwrap();
                    if v.gcd(&ad) == 1 && best.is_none_or(|b| v < b) {
                        best = Some(v);
                    }
                }
            }
            // outside the box f(x, y) > |D|·bound²/(4·max(a, c))
            let c = f.c.to_u64().unwrap();
            if let Some(b) = best {
                if 4 * b * a.max(c) <= ad * (bound * bound) as u64 {
                    return b;
                }
            }
            bound *= 2;
        }
    }

    /// Integral ideals of norm n tagged with their class index.
    pub fn ideals_of_norm(&self, n: u64) -> Vec<(IdealRep, usize)> {
        all_ideals_of_norm(self.d, n).into_iter().map(|id| {
            let c = self.class_of_ideal(&id);
            (id, c)
        }).collect()
    }

    /// r_A(n) = #{𝔞 ⊂ O_K in class A with N𝔞 = n}; 0 for n ≤ 0.
    pub fn count_ra(&self, class: usize, n: i64) -> u64 {
        if n <= 0 {
            return 0;
        }
        self.ideals_of_norm(n as u64).iter().filter(|(_, c)| *c == class).count() as u64
    }

    /// Classes of the two primes above a split prime, or the one above a ramified prime.
    pub fn prime_classes(&self, q: u64) -> Result<Vec<usize>> {
        Ok(match split_type(self.d, q)? {
            SplitType::Split(p, pb) => vec![self.class_of_ideal(&p), self.class_of_ideal(&pb)],
            SplitType::Ramified(p) => vec![self.class_of_ideal(&p)],
            SplitType::Inert => vec![],
        })
    }

    /// Is the class of 𝔞 principal, and if so a generator.
    pub fn principal_generator(&self, id: &IdealRep) -> Option<OkElem> {
        let (c, num, den) = self.reduce_ideal(id);
        if c != 0 {
            return None;
        }
        // 𝔟 = O_K, λ = num/den must be integral
        let g = OkElem::new(num.x.clone() / &den, num.y.clone() / &den, num.d);
        if !(&num.x % &den).is_zero() || !(&num.y % &den).is_zero() {
            return None;
        }
        Some(g)
    }
}

/// Exhaustive group-axiom check (closure, identity, inverses, associativity,
/// commutativity); intended for h ≤ 12.
pub fn check_group_axioms(g: &ClassGroup) -> Result<()> {
    let h = g.h();
    let bad = |s: String| Err(Error::Precondition(s));
    for i in 0..h {
        if g.mul(0, i) != i {
            return bad(format!("identity fails at {i}"));
        }
        if g.mul(i, g.inv(i)) != 0 {
            return bad(format!("inverse fails at {i}"));
        }
        for j in 0..h {
            if g.mul(i, j) != g.mul(j, i) {
                return bad(format!("commutativity fails at {i},{j}"));
            }
            for k in 0..h {
                if g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k)) {
                    return bad(format!("associativity fails at {i},{j},{k}"));
                }
            }
        }
    }
    let prod: u64 = g.generators().iter().map(|&(_, o)| o).product();
    if prod as usize != h {
        return bad("generator orders do not multiply to h".into());
    }
    Ok(())
}
