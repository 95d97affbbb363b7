use super::context::HeightContext;
use crate::error::Result;
use crate::padic::PadicNumber;

/// A family m ↦ (value per class), such as C_m or B_m.
pub trait ClassSequence {
    fn get(&self, class: usize, m: u64) -> Result<PadicNumber>;
}

impl<F: Fn(usize, u64) -> Result<PadicNumber>> ClassSequence for F {
    fn get(&self, class: usize, m: u64) -> Result<PadicNumber> {
        self(class, m)
    }
}

/// One monomial coeff·U_p^u·σ_𝔭^a·σ_𝔭̄^b.
#[derive(Debug, Clone)]
pub struct OpTerm {
    pub coeff: PadicNumber,
    pub u: u32,
    pub a: u32,
    pub b: u32,
}

/// Polynomial in the commuting operators U_p, σ_𝔭, σ_𝔭̄ with p-adic coefficients.
///
/// (U_p x)_m^A = x_{mp}^A and (σ_𝔭 x)_m^A = x_m^{A·[𝔭]}.
#[derive(Debug, Clone)]
pub struct OperatorPoly {
    p: u64,
    prec: u32,
    terms: Vec<OpTerm>,
}

impl OperatorPoly {
    pub fn zero(p: u64, prec: u32) -> Self {
        OperatorPoly { p, prec, terms: Vec::new() }
    }

    pub fn monomial(coeff: PadicNumber, u: u32, a: u32, b: u32, prec: u32) -> Self {
        let p = coeff.p();
        let mut op = OperatorPoly::zero(p, prec);
        op.push(OpTerm { coeff, u, a, b });
        op
    }

    /// U_p^u
    pub fn u_pow(p: u64, u: u32, prec: u32) -> Self {
        Self::monomial(PadicNumber::one(p, prec), u, 0, 0, prec)
    }

    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    fn push(&mut self, t: OpTerm) {
        if let Some(x) = self.terms.iter_mut().find(|x| (x.u, x.a, x.b) == (t.u, t.a, t.b)) {
            x.coeff = x.coeff.add(&t.coeff);
        } else {
            self.terms.push(t);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for t in &o.terms {
            out.push(t.clone());
        }
        out.terms.retain(|t| !t.coeff.is_zero());
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff = t.coeff.neg();
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = OperatorPoly::zero(self.p, self.prec);
        for x in &self.terms {
            for y in &o.terms {
                out.push(OpTerm { coeff: x.coeff.mul(&y.coeff), u: x.u + y.u, a: x.a + y.a, b: x.b + y.b });
            }
        }
        out.terms.retain(|t| !t.coeff.is_zero());
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::monomial(PadicNumber::one(self.p, self.prec), 0, 0, 0, self.prec);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Apply to `seq` and read off class `class`, index m.
    pub fn apply(&self, ctx: &HeightContext, seq: &dyn ClassSequence, class: usize, m: u64) -> Result<PadicNumber> {
        let g = ctx.group();
        let (cp, cpb) = ctx.frob_classes();
        let mut acc = PadicNumber::zero(self.p, self.prec as i64);
        for t in &self.terms {
            let shift = g.mul(g.pow(cp, t.a as i64), g.pow(cpb, t.b as i64));
            let idx = m * self.p.pow(t.u);
            let v = seq.get(g.mul(class, shift), idx)?;
            acc = acc.add(&t.coeff.mul(&v));
        }
        Ok(acc)
    }
}

/// Deliberate faults in the Euler-type operator (mutation testing).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorVariant {
    Verbatim,
    /// χ(𝔭̄) replaced by χ(𝔭̄) + 1 (and χ(𝔭) by χ(𝔭) + 1).
    PerturbedChi,
    /// each factor taken to the first power instead of squared
    DroppedSquare,
}

/// 𝐅 = Π_{𝔭|p} (U_p - p^(r-k-1) χ(𝔭̄) σ_𝔭)², the product over 𝔭 and 𝔭̄.
pub fn euler_operator(ctx: &HeightContext, variant: OperatorVariant) -> OperatorPoly {
    let (p, w) = (ctx.p(), ctx.work_prec());
    let mut chi_p = ctx.chi_of(ctx.frak_p());
    let mut chi_pb = ctx.chi_of(&ctx.frak_pbar());
    if variant == OperatorVariant::PerturbedChi {
        chi_p = chi_p.add(&PadicNumber::one(p, w));
        chi_pb = chi_pb.add(&PadicNumber::one(p, w));
    }
    let pr = PadicNumber::from_i64(p as i64, p, w).pow(ctx.hdeg());
    let u = OperatorPoly::u_pow(p, 1, w);
    // factor for 𝔭: U - p^R χ(𝔭̄) σ_𝔭; for 𝔭̄: U - p^R χ(𝔭) σ_𝔭̄
    let f1 = u.sub(&OperatorPoly::monomial(pr.mul(&chi_pb), 0, 1, 0, w));
    let f2 = u.sub(&OperatorPoly::monomial(pr.mul(&chi_p), 0, 0, 1, w));
    let e = if variant == OperatorVariant::DroppedSquare { 1 } else { 2 };
    f1.pow(e).mul(&f2.pow(e))
}

/// U_p⁴ - p^(2r-2) U_p².
pub fn u4_operator(ctx: &HeightContext) -> OperatorPoly {
    let (p, w) = (ctx.p(), ctx.work_prec());
    let c = PadicNumber::from_i64(p as i64, p, w).pow(2 * ctx.r() - 2);
    OperatorPoly::u_pow(p, 4, w).sub(&OperatorPoly::monomial(c, 2, 0, 0, w))
}

/// 𝐅 applied to `seq` at (class, m).
pub fn apply_uf(ctx: &HeightContext, seq: &dyn ClassSequence, class: usize, m: u64) -> Result<PadicNumber> {
    euler_operator(ctx, OperatorVariant::Verbatim).apply(ctx, seq, class, m)
}
