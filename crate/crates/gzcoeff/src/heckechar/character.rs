use super::kelem::KElem;
use super::value::{AlgebraicValue, Embedding, ValueMode};
use crate::arith;
use crate::error::{pre, Error, Result};
use crate::padic::{nth_root_quad, nth_root_zp, PadicNumber, PadicQuad};
use crate::quadfield::{split_type, ClassGroup, Discriminant, IdealRep, SplitType};
use serde::Serialize;

/// The root chosen for one cyclic generator: χ(𝔟_g) is a `order`-th root of
/// α^ℓ where 𝔟_g^order = (α).
#[derive(Debug, Clone, Serialize)]
pub struct RootChoice {
    pub class: usize,
    pub order: u64,
    pub alpha: String,
    pub branch: String,
}

/// An unramified Hecke character of infinity type (ℓ, 0), stored by its
/// values on the reduced representative ideal of every class.
#[derive(Debug, Clone)]
pub struct HeckeChar {
    group: ClassGroup,
    ell: u32,
    mode: ValueMode,
    emb: Embedding,
    table: Vec<AlgebraicValue>,
    roots: Vec<RootChoice>,
    /// The split prime above p sent into the maximal ideal (p-adic mode).
    frak_p: Option<IdealRep>,
}

impl HeckeChar {
    /// Build χ with χ((α)) = α^ℓ. `mode` carries p and the precision in
    /// p-adic mode.
    pub fn build(d: Discriminant, ell: u32, mode: ValueMode) -> Result<Self> {
        Self::build_with_group(ClassGroup::new(d)?, ell, mode)
    }

    pub fn build_with_group(group: ClassGroup, ell: u32, mode: ValueMode) -> Result<Self> {
        let d = group.disc();
        if ell == 0 || ell % 2 != 0 {
            return pre(format!("ℓ = {ell} must be even and positive"));
        }
        let mut frak_p = None;
        let emb = match mode {
            ValueMode::Exact => {
                if group.h() > 1 {
                    return Err(Error::Mode(format!("exact mode needs h = 1, got h({}) = {}", d, group.h())));
                }
                Embedding::new(d.value(), mode, None)?
            }
            ValueMode::Complex { .. } => Embedding::new(d.value(), mode, None)?,
            ValueMode::Padic { p, prec } => {
                if p == 2 || !arith::is_prime(p) {
                    return pre(format!("p = {p} must be an odd prime"));
                }
                if prec == 0 {
                    return pre("p-adic precision must be positive");
                }
                let SplitType::Split(pp, _) = split_type(d, p)? else {
                    return pre(format!("p = {p} does not split in Q(√{d})"));
                };
                let b = i64::try_from(&pp.b).unwrap();
                frak_p = Some(pp);
                Embedding::new(d.value(), mode, Some(b))?
            }
        };
        let mut ch = HeckeChar { group, ell, mode, emb, table: Vec::new(), roots: Vec::new(), frak_p };
        ch.fill_table()?;
        Ok(ch)
    }

    fn fill_table(&mut self) -> Result<()> {
        let g = &self.group;
        let mut gen_vals = Vec::new();
        for &(c, ord) in g.generators() {
            let b = g.representative(c);
            let (cls, num, den) = g.reduce_ideal(&b.pow(ord as u32)?);
            debug_assert_eq!(cls, 0);
            let alpha = KElem::from_fraction(&num, &den);
            let target = self.emb.embed(&alpha.pow(self.ell));
            let (root, branch) = self.root_of(&target, ord as u32)?;
            self.roots.push(RootChoice { class: c, order: ord, alpha: alpha.to_string(), branch });
            gen_vals.push(root);
        }
        let mut table = Vec::with_capacity(g.h());
        for a in 0..g.h() {
            let mut id = IdealRep::unit(g.disc());
            let mut val = self.emb.one();
            for (i, &e) in g.coords(a).iter().enumerate() {
                let b = g.representative(g.generators()[i].0);
                id = id.mul(&b.pow(e as u32)?)?;
                val = val.mul(&gen_vals[i].pow(e as u32));
            }
            // id = λ·𝔟_A, so χ(𝔟_A) = χ(id)·λ^(-ℓ)
            let (cls, num, den) = g.reduce_ideal(&id);
            debug_assert_eq!(cls, a);
            let lam = KElem::from_fraction(&num, &den).pow(self.ell);
            let lam_inv = lam.inv().ok_or(Error::DivisionByZero)?;
            table.push(val.mul(&self.emb.embed(&lam_inv)));
        }
        self.table = table;
        Ok(())
    }

    fn root_of(&self, target: &AlgebraicValue, ord: u32) -> Result<(AlgebraicValue, String)> {
        match target {
            AlgebraicValue::Exact(_) => Err(Error::Mode("exact mode cannot extract roots".into())),
            AlgebraicValue::Complex(z) => {
                let r = z.principal_root(ord).ok_or(Error::DivisionByZero)?;
                Ok((AlgebraicValue::Complex(r), "principal".into()))
            }
            AlgebraicValue::Padic(q) => {
                let x = &q.re;
                match nth_root_zp(x, ord) {
                    Ok((r, r0)) => Ok((AlgebraicValue::Padic(PadicQuad::from_zp(r)), format!("Z_p, root ≡ {r0} mod p"))),
                    Err(e1) => match nth_root_quad(x, ord) {
                        Ok((r, (a, b))) => Ok((
                            AlgebraicValue::Padic(r),
                            format!("Z_p[√{}], root ≡ {a} + {b}√{} mod p", q.u, q.u),
                        )),
                        Err(e2) => Err(Error::NoRoot(format!("{ord}-th root of α^ℓ: {e1}; in the quadratic extension: {e2}"))),
                    },
                }
            }
        }
    }

    pub fn group(&self) -> &ClassGroup {
        &self.group
    }

    pub fn disc(&self) -> Discriminant {
        self.group.disc()
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn k(&self) -> u32 {
        self.ell / 2
    }

    pub fn mode(&self) -> ValueMode {
        self.mode
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn root_choices(&self) -> &[RootChoice] {
        &self.roots
    }

    /// χ on the stored representative of each class.
    pub fn table(&self) -> &[AlgebraicValue] {
        &self.table
    }

    /// The prime 𝔭 above p fixed by the p-adic embedding.
    pub fn frak_p(&self) -> Option<&IdealRep> {
        self.frak_p.as_ref()
    }

    /// Do all class values lie in Q_p (p-adic mode)?
    pub fn values_in_qp(&self) -> bool {
        self.table.iter().all(|v| v.as_zp().is_some())
    }

    pub fn embed(&self, k: &KElem) -> AlgebraicValue {
        self.emb.embed(k)
    }

    /// χ(𝔞) for a fractional-free ideal: with 𝔞 = λ·𝔟_A, χ(𝔞) = λ^ℓ·χ(𝔟_A).
    pub fn chi_value(&self, id: &IdealRep) -> AlgebraicValue {
        let (cls, num, den) = self.group.reduce_ideal(id);
        let lam = KElem::from_fraction(&num, &den).pow(self.ell);
        self.emb.embed(&lam).mul(&self.table[cls])
    }

    /// χ(𝔞) together with the class of 𝔞.
    pub fn chi_value_class(&self, id: &IdealRep) -> (usize, AlgebraicValue) {
        let (cls, num, den) = self.group.reduce_ideal(id);
        let lam = KElem::from_fraction(&num, &den).pow(self.ell);
        (cls, self.emb.embed(&lam).mul(&self.table[cls]))
    }

    /// r_{A,χ}(n) = Σ χ(𝔞) over integral 𝔞 in class A of norm n; 0 for n ≤ 0.
    pub fn r_chi(&self, class: usize, n: i64) -> AlgebraicValue {
        let mut acc = self.emb.zero();
        if n <= 0 {
            return acc;
        }
        for (id, c) in self.group.ideals_of_norm(n as u64) {
            if c == class {
                acc = acc.add(&self.chi_value(&id));
            }
        }
        acc
    }

    /// r_{A,χ}(num/den), zero unless the quotient is a positive integer.
    pub fn r_chi_frac(&self, class: usize, num: i64, den: i64) -> AlgebraicValue {
        if den == 0 || num % den != 0 {
            return self.emb.zero();
        }
        self.r_chi(class, num / den)
    }

    /// r_{A,χ}(n) for every class at once.
    pub fn r_chi_all(&self, n: i64) -> Vec<AlgebraicValue> {
        let mut out = vec![self.emb.zero(); self.group.h()];
        if n <= 0 {
            return out;
        }
        for (id, _) in self.group.ideals_of_norm(n as u64) {
            let (c, v) = self.chi_value_class(&id);
            out[c] = out[c].add(&v);
        }
        out
    }
}

/// Convenience constructor.
pub fn build_char(d: i64, ell: u32, mode: ValueMode) -> Result<HeckeChar> {
    HeckeChar::build(Discriminant::new(d)?, ell, mode)
}

/// Embed an integer p-adic number into the value type.
pub fn padic_value(x: PadicNumber) -> AlgebraicValue {
    AlgebraicValue::Padic(PadicQuad::from_zp(x))
}
