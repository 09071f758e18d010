use std::fmt;
use std::sync::Arc;

use super::modular::{digit_cap, inv_mod, pow_u128, reduce_i128, vp_u128};
use super::{Scalar, EXACT};
use crate::error::{Result, SigmaError};

/// Isobaric polynomial in `A4` (weight 4) and `A6` (weight 6).
///
/// `coeffs[a]` is the coefficient of `A4^a A6^b` with `4a + 6b = weight`;
/// slots with no matching `b` stay zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoPoly {
    pub weight: i64,
    pub coeffs: Vec<u128>,
}

impl IsoPoly {
    pub fn zero(weight: i64) -> Self {
        IsoPoly { weight, coeffs: Vec::new() }
    }

    pub fn constant(c: u128) -> Self {
        IsoPoly { weight: 0, coeffs: vec![c] }
    }

    /// `c * A4^a * A6^b`.
    pub fn monomial(c: u128, a: usize, b: usize) -> Self {
        let mut coeffs = vec![0; a + 1];
        coeffs[a] = c;
        IsoPoly { weight: 4 * a as i64 + 6 * b as i64, coeffs }
    }

    pub fn b_of(&self, a: usize) -> Option<usize> {
        let r = self.weight - 4 * a as i64;
        (r >= 0 && r % 6 == 0).then_some((r / 6) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms as `(coefficient, a, b)`.
    pub fn terms(&self) -> impl Iterator<Item = (u128, usize, usize)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| (c, a, self.b_of(a).expect("isobaric slot")))
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn reduce(&self, m: u128) -> Self {
        IsoPoly { weight: self.weight, coeffs: self.coeffs.iter().map(|c| c % m).collect() }.trim()
    }

    pub fn add(&self, o: &Self, m: u128) -> Self {
        debug_assert!(self.is_zero() || o.is_zero() || self.weight == o.weight);
        let weight = if self.is_zero() { o.weight } else { self.weight };
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let x = self.coeffs.get(i).copied().unwrap_or(0) % m;
                let y = o.coeffs.get(i).copied().unwrap_or(0) % m;
                (x + y) % m
            })
            .collect();
        IsoPoly { weight, coeffs }.trim()
    }

    pub fn neg(&self, m: u128) -> Self {
        IsoPoly { weight: self.weight, coeffs: self.coeffs.iter().map(|c| (m - c % m) % m).collect() }.trim()
    }

    pub fn scale(&self, c: u128, m: u128) -> Self {
        IsoPoly { weight: self.weight, coeffs: self.coeffs.iter().map(|x| x % m * (c % m) % m).collect() }.trim()
    }

    pub fn mul(&self, o: &Self, m: u128) -> Self {
        let weight = self.weight + o.weight;
        if self.is_zero() || o.is_zero() {
            return IsoPoly::zero(weight);
        }
        let mut coeffs = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x % m;
            for (j, &y) in o.coeffs.iter().enumerate() {
                if y != 0 {
                    coeffs[i + j] = (coeffs[i + j] + x * (y % m)) % m;
                }
            }
        }
        IsoPoly { weight, coeffs }.trim()
    }

    pub fn pow(&self, k: u32, m: u128) -> Self {
        let mut acc = IsoPoly::constant(1 % m);
        for _ in 0..k {
            acc = acc.mul(self, m);
        }
        acc
    }

    /// Minimum p-adic valuation of the coefficients; `None` for the zero polynomial.
    pub fn content_val(&self, p: u64) -> Option<i64> {
        self.coeffs.iter().filter(|&&c| c != 0).map(|&c| vp_u128(c, p)).min()
    }

    /// Exact quotient `self / h` modulo `m`, if one exists.
    /// The top coefficient of `h` must be invertible modulo `m`.
    pub fn div_exact(&self, h: &Self, m: u128) -> Option<Self> {
        let h = h.reduce(m);
        let top = h.coeffs.len().checked_sub(1)?;
        let lead_inv = inv_mod(h.coeffs[top], m)?;
        let bh = h.b_of(top)?;
        let mut rem = self.reduce(m);
        let qw = self.weight - h.weight;
        if rem.is_zero() {
            return Some(IsoPoly::zero(qw));
        }
        let mut q = vec![0u128; rem.coeffs.len()];
        for a in (0..rem.coeffs.len()).rev() {
            let c = rem.coeffs.get(a).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            if a < top || rem.b_of(a)? < bh {
                return None;
            }
            let qa = a - top;
            let f = c * lead_inv % m;
            q[qa] = f;
            for (i, &hc) in h.coeffs.iter().enumerate() {
                if hc != 0 {
                    let slot = &mut rem.coeffs[qa + i];
                    *slot = (*slot + m - f * hc % m) % m;
                }
            }
        }
        Some(IsoPoly { weight: qw, coeffs: q }.trim())
    }
}

/// Coefficient of `x^(p-1)` in `(x^3 + A4 x + A6)^((p-1)/2)` as an isobaric polynomial.
pub fn hasse_isopoly(p: u64, m: u128) -> IsoPoly {
    let k = ((p - 1) / 2) as usize;
    let target = (p - 1) as usize;
    let binom = |n: usize, r: usize| -> u128 {
        let mut acc: u128 = 1;
        for i in 0..r {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    };
    // f^k = sum k!/(i! b! c!) x^{3i} (A4 x)^b A6^c with i + b + c = k.
    let mut out = IsoPoly::zero(target as i64);
    for i in 0..=k {
        if 3 * i > target {
            break;
        }
        let b = target - 3 * i;
        if i + b > k {
            continue;
        }
        let c = k - i - b;
        let coef = binom(k, i) % m * (binom(k - i, b) % m) % m;
        out = out.add(&IsoPoly::monomial(coef, b, c), m);
    }
    out
}

/// Shared data for the universal ring at a prime `p`.
#[derive(Debug)]
pub struct UnivCtx {
    pub p: u64,
    /// Default precision exponent for constants.
    pub digits: i64,
    pub cap: i64,
    /// The Hasse lift `H`, reduced modulo `p^cap`.
    pub h: IsoPoly,
}

impl UnivCtx {
    pub fn new(p: u64, digits: i64) -> Arc<Self> {
        let cap = digit_cap(p);
        let h = hasse_isopoly(p, pow_u128(p, cap));
        Arc::new(UnivCtx { p, digits: digits.clamp(1, cap), cap, h })
    }

    fn modulus(&self, e: i64) -> u128 {
        pow_u128(self.p, e.clamp(0, self.cap))
    }

    /// `H` as a single monomial `c A4^a A6^b`, if it is one.
    pub fn h_monomial(&self) -> Option<(u128, usize, usize)> {
        let mut t = self.h.terms();
        let first = t.next()?;
        t.next().is_none().then_some(first)
    }
}

/// Element `num / (H^h_den p^p_den)` of the completed universal ring, with the
/// numerator known modulo `p^prec` and isobaric of weight `weight + (p-1) h_den`.
#[derive(Clone)]
pub struct UnivScalar {
    ctx: Arc<UnivCtx>,
    num: IsoPoly,
    h_den: u32,
    p_den: u32,
    weight: i64,
    prec: i64,
}

impl UnivScalar {
    pub fn from_parts(ctx: &Arc<UnivCtx>, num: IsoPoly, h_den: u32, p_den: u32, prec: i64) -> Self {
        let weight = num.weight - (ctx.p as i64 - 1) * h_den as i64;
        UnivScalar { ctx: ctx.clone(), num, h_den, p_den, weight, prec: prec.min(ctx.cap) }.normalized()
    }

    pub fn a4(ctx: &Arc<UnivCtx>) -> Self {
        Self::from_parts(ctx, IsoPoly::monomial(1, 1, 0), 0, 0, ctx.digits)
    }

    pub fn a6(ctx: &Arc<UnivCtx>) -> Self {
        Self::from_parts(ctx, IsoPoly::monomial(1, 0, 1), 0, 0, ctx.digits)
    }

    pub fn hasse(ctx: &Arc<UnivCtx>) -> Self {
        Self::from_parts(ctx, ctx.h.clone(), 0, 0, ctx.digits)
    }

    pub fn numerator(&self) -> &IsoPoly {
        &self.num
    }
    pub fn h_den(&self) -> u32 {
        self.h_den
    }
    pub fn p_den(&self) -> u32 {
        self.p_den
    }
    pub fn num_prec(&self) -> i64 {
        self.prec
    }
    pub fn univ_ctx(&self) -> &Arc<UnivCtx> {
        &self.ctx
    }

    fn m(&self) -> u128 {
        self.ctx.modulus(self.prec)
    }

    fn num_is_zero(&self) -> bool {
        self.prec <= 0 || self.num.is_zero()
    }

    fn normalized(mut self) -> Self {
        let p = self.ctx.p;
        if self.prec >= EXACT {
            // only exact zero carries unbounded precision
            self.num = IsoPoly::zero(self.num.weight);
            self.h_den = 0;
            return self;
        }
        self.prec = self.prec.min(self.ctx.cap);
        if self.prec <= 0 {
            self.num = IsoPoly::zero(self.weight);
            self.h_den = 0;
            return self;
        }
        self.num = self.num.reduce(self.m());
        if self.num.is_zero() {
            self.num = IsoPoly::zero(self.weight);
            self.h_den = 0;
            let drop = (self.p_den as i64).min(self.prec);
            self.prec -= drop;
            self.p_den -= drop as u32;
            return self;
        }
        while self.p_den > 0 && self.num.content_val(p).unwrap_or(0) >= 1 && self.prec > 1 {
            let pp = p as u128;
            self.num.coeffs.iter_mut().for_each(|c| *c /= pp);
            self.prec -= 1;
            self.p_den -= 1;
        }
        while self.h_den > 0 {
            match self.num.div_exact(&self.ctx.h, self.m()) {
                Some(q) => {
                    self.num = q;
                    self.h_den -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// Numerator lifted to denominators `H^h p^j` with `h >= h_den`, `j >= p_den`.
    fn lifted(&self, h: u32, j: u32) -> (IsoPoly, i64) {
        let extra_p = (j - self.p_den) as i64;
        let prec = if self.prec >= EXACT { EXACT } else { (self.prec + extra_p).min(self.ctx.cap) };
        let m = self.ctx.modulus(prec);
        if self.num_is_zero() {
            return (IsoPoly::zero(self.weight + (self.ctx.p as i64 - 1) * h as i64), prec);
        }
        let mut num = self.num.mul(&self.ctx.h.pow(h - self.h_den, m), m);
        num = num.scale(pow_u128(self.ctx.p, extra_p) % m, m);
        (num, prec)
    }

    /// Sum that reports a weight mismatch instead of panicking.
    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.is_exact_zero() {
            return Ok(o.clone());
        }
        if o.is_exact_zero() {
            return Ok(self.clone());
        }
        if !self.num_is_zero() && !o.num_is_zero() && self.weight != o.weight {
            return Err(SigmaError::WeightMismatch { left: self.weight, right: o.weight });
        }
        let weight = if self.num_is_zero() { o.weight } else { self.weight };
        let h = self.h_den.max(o.h_den);
        let j = self.p_den.max(o.p_den);
        let (na, pa) = self.lifted(h, j);
        let (nb, pb) = o.lifted(h, j);
        let prec = pa.min(pb);
        let m = self.ctx.modulus(prec);
        let num = na.add(&nb, m);
        let num = if num.is_zero() { IsoPoly::zero(weight + (self.ctx.p as i64 - 1) * h as i64) } else { num };
        Ok(UnivScalar { ctx: self.ctx.clone(), num, h_den: h, p_den: j, weight, prec }.normalized())
    }

    /// Evaluate at `(a4, a6)` in another scalar ring; the ring homomorphism `A4 -> a4, A6 -> a6`.
    pub fn evaluate<S: Scalar>(&self, a4: &S, a6: &S) -> Result<S> {
        let sctx = a4.ctx();
        if self.is_exact_zero() {
            return Ok(S::zero(&sctx));
        }
        let hval = eval_iso(&self.ctx.h, a4, a6, self.ctx.cap);
        if hval.valuation() > 0 || hval.is_zero() {
            return Err(SigmaError::NotAUnit("the Hasse invariant vanishes mod p at this point".into()));
        }
        let mut v = eval_iso(&self.num, a4, a6, self.prec);
        if self.h_den > 0 {
            v = v.mul(&hval.inv()?.pow(self.h_den as u64));
        }
        Ok(v.mul_p_pow(-(self.p_den as i64)))
    }

    /// Value modulo `p^e` as text. A monomial `H` is folded into the numerator, so the
    /// result reads like `A6/A4`.
    pub fn render(&self, e: i64) -> String {
        let p = self.ctx.p;
        let j = self.p_den as i64;
        let m = self.ctx.modulus((e + j).min(self.prec));
        let num = self.num.reduce(m);
        if num.is_zero() {
            return "0".into();
        }
        let pden = if j > 0 { format!(" /{p}^{j}") } else { String::new() };
        if self.h_den == 0 {
            return format!("{}{pden}", poly_text(num.terms().map(|(c, a, b)| (c, a as i64, b as i64))));
        }
        if let Some((c, ha, hb)) = self.ctx.h_monomial() {
            let k = self.h_den as i64;
            let cinv = inv_mod(c, m).unwrap_or(0);
            let scale = (0..k).fold(1 % m, |acc, _| acc * cinv % m);
            let terms: Vec<(u128, i64, i64)> = num.terms().map(|(x, a, b)| (x * scale % m, a as i64, b as i64)).collect();
            let (mut da, mut db) = (ha as i64 * k, hb as i64 * k);
            let ca = terms.iter().map(|t| t.1).min().unwrap_or(0).min(da);
            let cb = terms.iter().map(|t| t.2).min().unwrap_or(0).min(db);
            da -= ca;
            db -= cb;
            let top = poly_text(terms.iter().map(|&(x, a, b)| (x, a - ca, b - cb)));
            let den = match (da, db) {
                (0, 0) => String::new(),
                (a, 0) => format!("/{}", power("A4", a)),
                (0, b) => format!("/{}", power("A6", b)),
                (a, b) => format!("/({}*{})", power("A4", a), power("A6", b)),
            };
            let top = if terms.len() > 1 && !den.is_empty() { format!("({top})") } else { top };
            return format!("{top}{den}{pden}");
        }
        let top = poly_text(num.terms().map(|(c, a, b)| (c, a as i64, b as i64)));
        format!("({top}) /H^{}{pden}", self.h_den)
    }

    /// Lossless text: numerator, explicit denominators and weight.
    pub fn raw_text(&self) -> String {
        let top = if self.num_is_zero() {
            "0".to_string()
        } else {
            poly_text(self.num.terms().map(|(c, a, b)| (c, a as i64, b as i64)))
        };
        format!("({top}) /H^{} /p^{} [w={}]", self.h_den, self.p_den, self.weight)
    }
}

fn power(v: &str, e: i64) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

fn poly_text(terms: impl Iterator<Item = (u128, i64, i64)>) -> String {
    let parts: Vec<String> = terms
        .map(|(c, a, b)| {
            let mut factors = Vec::new();
            if a > 0 {
                factors.push(power("A4", a));
            }
            if b > 0 {
                factors.push(power("A6", b));
            }
            match (c, factors.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => factors.join("*"),
                _ => format!("{c}*{}", factors.join("*")),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Evaluate an isobaric polynomial with coefficients known modulo `p^prec`.
fn eval_iso<S: Scalar>(poly: &IsoPoly, a4: &S, a6: &S, prec: i64) -> S {
    let ctx = a4.ctx();
    let mut acc = S::zero(&ctx);
    let maxa = poly.coeffs.len();
    let maxb = (poly.weight.max(0) / 6) as usize + 1;
    let mut p4 = vec![S::one(&ctx)];
    for i in 1..maxa {
        p4.push(p4[i - 1].mul(a4));
    }
    let mut p6 = vec![S::one(&ctx)];
    for i in 1..maxb {
        p6.push(p6[i - 1].mul(a6));
    }
    for (c, a, b) in poly.terms() {
        let term = S::from_int(&ctx, c as i64).mul(&p4[a]).mul(&p6[b]);
        acc = acc.add(&term);
    }
    if prec < EXACT {
        let cut = acc.abs_prec().min(prec);
        acc = acc.truncate_prec(cut);
        if acc.is_exact_zero() {
            acc = S::zero(&ctx).truncate_prec(prec);
        }
    }
    acc
}

impl Scalar for UnivScalar {
    type Ctx = Arc<UnivCtx>;

    fn ctx(&self) -> Arc<UnivCtx> {
        self.ctx.clone()
    }
    fn prime_of(ctx: &Arc<UnivCtx>) -> u64 {
        ctx.p
    }
    fn zero(ctx: &Arc<UnivCtx>) -> Self {
        UnivScalar { ctx: ctx.clone(), num: IsoPoly::zero(0), h_den: 0, p_den: 0, weight: 0, prec: EXACT }
    }
    fn from_int(ctx: &Arc<UnivCtx>, n: i64) -> Self {
        if n == 0 {
            return Self::zero(ctx);
        }
        let v = vp_u128(n.unsigned_abs() as u128, ctx.p);
        let prec = (v + ctx.digits).min(ctx.cap);
        let m = ctx.modulus(prec);
        Self::from_parts(ctx, IsoPoly::constant(reduce_i128(n as i128, m)), 0, 0, prec)
    }

    fn add(&self, o: &Self) -> Self {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }

    fn neg(&self) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        UnivScalar { num: self.num.neg(self.m()), ..self.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        let weight = self.weight + o.weight;
        if self.is_exact_zero() || o.is_exact_zero() {
            let mut z = Self::zero(&self.ctx);
            z.weight = weight;
            z.num.weight = weight;
            return z;
        }
        let p = self.ctx.p;
        let va = self.num.content_val(p).unwrap_or(self.prec).min(self.prec);
        let vb = o.num.content_val(p).unwrap_or(o.prec).min(o.prec);
        let prec = (self.prec + vb).min(o.prec + va).min(self.ctx.cap);
        let m = self.ctx.modulus(prec);
        let num = self.num.mul(&o.num, m);
        UnivScalar {
            ctx: self.ctx.clone(),
            num,
            h_den: self.h_den + o.h_den,
            p_den: self.p_den + o.p_den,
            weight,
            prec,
        }
        .normalized()
    }

    fn inv(&self) -> Result<Self> {
        let p = self.ctx.p;
        if self.num_is_zero() {
            return Err(SigmaError::NotAUnit("zero is not invertible".into()));
        }
        if self.num.content_val(p) != Some(0) {
            return Err(SigmaError::NotAUnit(format!("numerator divisible by {p}: {}", self.raw_text())));
        }
        let nw = self.num.weight;
        if nw % (p as i64 - 1) != 0 {
            return Err(SigmaError::NotAUnit(format!("weight {nw} is not a multiple of p-1")));
        }
        let mexp = (nw / (p as i64 - 1)) as u32;
        let mp = p as u128;
        let hm = self.ctx.h.pow(mexp, self.m());
        // N mod p must be c H^m
        let hm_p = hm.reduce(mp);
        let n_p = self.num.reduce(mp);
        let idx = hm_p.coeffs.iter().position(|&c| c != 0).ok_or_else(|| SigmaError::Internal("H^m vanishes".into()))?;
        let c = n_p.coeffs.get(idx).copied().unwrap_or(0) * inv_mod(hm_p.coeffs[idx], mp).unwrap_or(0) % mp;
        if c == 0 || n_p != hm_p.scale(c, mp) {
            return Err(SigmaError::NotAUnit(format!("numerator is not a unit times a power of H: {}", self.raw_text())));
        }
        let m = self.m();
        let cinv = inv_mod(c, m).ok_or_else(|| SigmaError::Internal("residue not invertible".into()))?;
        // X = N/(cH^m) - 1, divisible by p
        let x_num = self.num.add(&hm.scale(c, m).neg(m), m).scale(cinv, m);
        let x = Self::from_parts(&self.ctx, x_num, mexp, 0, self.prec);
        let neg_x = x.neg();
        let mut series = Self::from_int(&self.ctx, 1).truncate_prec(self.prec);
        let mut term = series.clone();
        for _ in 1..self.prec {
            term = term.mul(&neg_x);
            series = series.add(&term);
        }
        let base = Self::from_parts(&self.ctx, IsoPoly::constant(cinv), mexp, 0, self.prec);
        let hk = Self::from_parts(&self.ctx, self.ctx.h.pow(self.h_den, m), 0, 0, self.prec);
        Ok(base.mul(&series).mul(&hk).mul_p_pow(self.p_den as i64))
    }

    fn mul_p_pow(&self, k: i64) -> Self {
        if self.is_exact_zero() || k == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        if k < 0 {
            out.p_den += (-k) as u32;
            return out;
        }
        let cancel = k.min(out.p_den as i64);
        out.p_den -= cancel as u32;
        let rest = k - cancel;
        if rest > 0 {
            let prec = (out.prec + rest).min(out.ctx.cap);
            let m = out.ctx.modulus(prec);
            out.num = out.num.scale(pow_u128(out.ctx.p, rest) % m, m);
            out.prec = prec;
        }
        out.normalized()
    }

    fn valuation(&self) -> i64 {
        let v = if self.num_is_zero() { self.prec } else { self.num.content_val(self.ctx.p).unwrap_or(self.prec) };
        v.min(self.prec) - self.p_den as i64
    }

    fn abs_prec(&self) -> i64 {
        if self.prec >= EXACT {
            EXACT
        } else {
            self.prec - self.p_den as i64
        }
    }

    fn truncate_prec(&self, abs: i64) -> Self {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        let mut out = self.clone();
        let target = abs + out.p_den as i64;
        if target <= 0 {
            out.num = IsoPoly::zero(out.num.weight);
            out.h_den = 0;
            out.p_den = (-abs).max(0) as u32;
            out.prec = 0;
            return out;
        }
        out.prec = target;
        out.normalized()
    }

    fn weight(&self) -> Option<i64> {
        Some(self.weight)
    }

    fn is_exact_zero(&self) -> bool {
        self.prec >= EXACT
    }
}

impl fmt::Debug for UnivScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.raw_text(), self.ctx.p, self.abs_prec())
    }
}

impl fmt::Display for UnivScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PadicCtx, PadicScalar};

    #[test]
    fn hasse_lifts() {
        let m = 1u128 << 100;
        assert_eq!(hasse_isopoly(5, m), IsoPoly::monomial(2, 1, 0));
        assert_eq!(hasse_isopoly(7, m), IsoPoly::monomial(3, 0, 1));
        assert_eq!(hasse_isopoly(11, m), IsoPoly::monomial(20, 1, 1));
        let h13 = hasse_isopoly(13, m);
        let t: Vec<_> = h13.terms().collect();
        assert_eq!(t, vec![(15, 0, 2), (20, 3, 0)]);
    }

    #[test]
    fn weight_adds_under_product() {
        let ctx = UnivCtx::new(5, 3);
        let x = UnivScalar::a4(&ctx).mul(&UnivScalar::a6(&ctx));
        assert_eq!(x.weight(), Some(10));
        assert_eq!(x.h_den(), 0);
    }

    #[test]
    fn inverting_h_moves_it_to_the_denominator() {
        let ctx = UnivCtx::new(7, 3);
        let hi = UnivScalar::hasse(&ctx).inv().unwrap();
        assert_eq!(hi.h_den(), 1);
        assert_eq!(hi.numerator(), &IsoPoly::constant(1));
        assert_eq!(hi.weight(), Some(-6));
    }

    #[test]
    fn p_times_unit_is_not_a_unit() {
        let ctx = UnivCtx::new(5, 3);
        let x = UnivScalar::hasse(&ctx).mul_int(5);
        assert!(matches!(x.inv(), Err(SigmaError::NotAUnit(_))));
        assert!(matches!(UnivScalar::a4(&ctx).try_add(&UnivScalar::a6(&ctx)), Err(SigmaError::WeightMismatch { .. })));
    }

    #[test]
    fn perturbed_unit_inverts() {
        let ctx = UnivCtx::new(5, 4);
        let h = UnivScalar::hasse(&ctx);
        let a4 = UnivScalar::a4(&ctx);
        let x = h.add(&a4.mul_int(5));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).congruent(&UnivScalar::from_int(&ctx, 1), 4));
    }

    #[test]
    fn specialization_examples() {
        let ctx = UnivCtx::new(5, 3);
        let pc = PadicCtx::new(5, 3);
        let one = PadicScalar::from_int(&pc, 1);
        let h = UnivScalar::hasse(&ctx);
        assert_eq!(h.evaluate(&one, &one).unwrap().residue(3), Some(2));
        let q = UnivScalar::a4(&ctx).mul(&h.inv().unwrap());
        assert_eq!(q.evaluate(&one, &one).unwrap().residue(1), Some(3));
        assert_eq!(UnivScalar::from_int(&ctx, 1).evaluate(&one, &one).unwrap().residue(3), Some(1));
        let zero = PadicScalar::from_int(&pc, 0);
        assert!(matches!(h.evaluate(&zero, &one), Err(SigmaError::NotAUnit(_))));
    }

    #[test]
    fn monomial_rendering() {
        let ctx = UnivCtx::new(5, 1);
        let beta = UnivScalar::a6(&ctx).mul(&UnivScalar::a4(&ctx).inv().unwrap());
        assert_eq!(beta.render(1), "A6/A4");
    }

    #[test]
    fn p_denominator_cancels() {
        let ctx = UnivCtx::new(5, 3);
        let x = UnivScalar::a4(&ctx).mul_p_pow(-2).mul_int(25);
        assert_eq!(x.p_den(), 0);
        assert!(x.congruent(&UnivScalar::a4(&ctx), 3));
    }
}
