//! Gindikin–Karpelevich factors `C_w(z)` over a formal completed zeta
//! function.
//!
//! A factor is a reduced quotient of products `Π ζ(a z + b)`.  Pole orders
//! at rational points are read off from the forms whose values land on the
//! poles `{0, 1}` of the completed zeta function, which has no other real
//! zeros or poles.  Laurent expansions are carried out over a ring of
//! Laurent polynomials in formal symbols:
//!
//! * `ρ` — the residue at `1`, so `ζ(1 + ε) = ρ/ε + Σ A_k ε^k`;
//! * `A_k` — the regular Laurent coefficients at `1`;
//! * `Z_k(v)` — the Taylor coefficients `ζ^{(k)}(v)/k!` at a regular
//!   point `v`.
//!
//! The functional equation `ζ(s) = ζ(1 − s)` is built in: expansions at `0`
//! are rewritten at `1` (residue `−ρ`), and `Z_k(v) = (−1)^k Z_k(1 − v)`
//! normalises regular points to `v ≥ 1/2`, with `Z_k(1/2) = 0` for odd
//! `k`.  Leading coefficients are monomials, hence invertible.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chars::{inducing_character, EquivClass};
use crate::error::{Error, Result};
use crate::rootsys::ParabolicIndex;
use crate::scalars::rat::{fmt_rat, int, parse_rat, rat, to_i64, Rat};
use crate::weyl::{EltId, WeylGroup};

/// Default number of Laurent coefficients kept from the leading one.
pub const DEFAULT_DEPTH: usize = 2;

/// The affine form `a z + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    pub a: i64,
    pub b: Rat,
}

impl AffineForm {
    pub fn new(a: i64, b: Rat) -> Self {
        AffineForm { a, b }
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        int(self.a) * z + &self.b
    }

    /// `a z + b + 1`.
    pub fn succ(&self) -> AffineForm {
        AffineForm { a: self.a, b: &self.b + Rat::one() }
    }

    /// Parse `"2z+1"`, `"z−3/2"`, `"z"`, `"-z+1/2"`, `"3"`.
    pub fn parse(s: &str) -> Result<AffineForm> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        let err = || Error::Parse(format!("affine form {s:?}"));
        let Some(zpos) = t.find('z') else {
            return Ok(AffineForm { a: 0, b: parse_rat(&t)? });
        };
        let head = &t[..zpos];
        let a = match head {
            "" | "+" => 1,
            "-" => -1,
            h => h.parse::<i64>().map_err(|_| err())?,
        };
        let tail = &t[zpos + 1..];
        let b = if tail.is_empty() {
            Rat::zero()
        } else {
            let (sign, body) = match tail.as_bytes()[0] {
                b'+' => (1, &tail[1..]),
                b'-' => (-1, &tail[1..]),
                _ => return Err(err()),
            };
            int(sign) * parse_rat(body)?
        };
        Ok(AffineForm { a, b })
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            0 => return write!(f, "{}", fmt_rat(&self.b).replace('-', "−")),
            1 => write!(f, "z")?,
            -1 => write!(f, "−z")?,
            a => write!(f, "{}z", a.to_string().replace('-', "−"))?,
        }
        if self.b.is_positive() {
            write!(f, "+{}", fmt_rat(&self.b))
        } else if self.b.is_negative() {
            write!(f, "−{}", fmt_rat(&-&self.b))
        } else {
            Ok(())
        }
    }
}

/// Display order: larger slope first, then increasing constant.
fn display_key(x: &AffineForm) -> (i64, Rat) {
    (-x.a, x.b.clone())
}

/// `Π ζ(num) / Π ζ(den)`, kept reduced and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaProduct {
    pub num: Vec<AffineForm>,
    pub den: Vec<AffineForm>,
}

impl ZetaProduct {
    pub fn one() -> Self {
        ZetaProduct::default()
    }

    /// Build from multisets and reduce.
    pub fn from_forms(num: Vec<AffineForm>, den: Vec<AffineForm>) -> Self {
        let mut p = ZetaProduct { num, den };
        p.reduce();
        p
    }

    /// Cancel forms common to numerator and denominator.
    pub fn reduce(&mut self) {
        let mut count: BTreeMap<AffineForm, i64> = BTreeMap::new();
        for x in &self.num {
            *count.entry(x.clone()).or_insert(0) += 1;
        }
        for x in &self.den {
            *count.entry(x.clone()).or_insert(0) -= 1;
        }
        self.num.clear();
        self.den.clear();
        for (x, c) in count {
            for _ in 0..c.max(0) {
                self.num.push(x.clone());
            }
            for _ in 0..(-c).max(0) {
                self.den.push(x.clone());
            }
        }
        self.num.sort_by_key(display_key);
        self.den.sort_by_key(display_key);
    }

    pub fn mul(&self, o: &ZetaProduct) -> ZetaProduct {
        ZetaProduct::from_forms([self.num.clone(), o.num.clone()].concat(), [self.den.clone(), o.den.clone()].concat())
    }

    pub fn is_one(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }

    /// Parse the display form, e.g. `"ζ(2z)ζ(z−3/2)²/(ζ(2z+1)ζ(z+5/2))"`.
    pub fn parse(s: &str) -> Result<ZetaProduct> {
        let t = s.trim();
        if t == "1" || t.is_empty() {
            return Ok(ZetaProduct::one());
        }
        let (n, d) = match split_top_level_slash(t) {
            Some((n, d)) => (n, d),
            None => (t, ""),
        };
        let d = d.trim();
        let d = d.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(d);
        let num = if n.trim() == "1" { vec![] } else { parse_zeta_list(n)? };
        Ok(ZetaProduct::from_forms(num, parse_zeta_list(d)?))
    }
}

fn split_top_level_slash(t: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&t[..i], &t[i + 1..])),
            _ => {}
        }
    }
    None
}

fn superscript_value(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|x| x == c).map(|p| p as u32)
}

fn parse_zeta_list(s: &str) -> Result<Vec<AffineForm>> {
    let mut out = vec![];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let r = rest.strip_prefix("ζ(").ok_or_else(|| Error::Parse(format!("expected ζ( in {s:?}")))?;
        let close = r.find(')').ok_or_else(|| Error::Parse(format!("unbalanced ζ( in {s:?}")))?;
        let form = AffineForm::parse(&r[..close])?;
        rest = &r[close + 1..];
        let mut exp = 0u32;
        let mut consumed = 0;
        for c in rest.chars() {
            match superscript_value(c) {
                Some(v) => {
                    exp = exp * 10 + v;
                    consumed += c.len_utf8();
                }
                None => break,
            }
        }
        rest = rest[consumed..].trim_start();
        for _ in 0..exp.max(1) {
            out.push(form.clone());
        }
    }
    Ok(out)
}

fn superscript(n: usize) -> String {
    n.to_string().chars().map(|c| "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().nth(c.to_digit(10).unwrap() as usize).unwrap()).collect()
}

fn fmt_zeta_list(v: &[AffineForm]) -> String {
    let mut s = String::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        s.push_str(&format!("ζ({})", v[i]));
        if j - i > 1 {
            s.push_str(&superscript(j - i));
        }
        i = j;
    }
    s
}

impl fmt::Display for ZetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = if self.num.is_empty() { "1".to_string() } else { fmt_zeta_list(&self.num) };
        match self.den.len() {
            0 => write!(f, "{n}"),
            1 => write!(f, "{n}/{}", fmt_zeta_list(&self.den)),
            _ => write!(f, "{n}/({})", fmt_zeta_list(&self.den)),
        }
    }
}

impl Serialize for ZetaProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `C_w(z) = Π_{β ∈ R(w)} ζ(⟨χ_{P,z}, β̌⟩) / ζ(⟨χ_{P,z}, β̌⟩ + 1)`, reduced.
pub fn gk_product(g: &WeylGroup, p: ParabolicIndex, w: EltId) -> ZetaProduct {
    let chi = inducing_character(g, p);
    let mut num = vec![];
    let mut den = vec![];
    for beta in g.inversion_set(w) {
        let a = g.rs.pairing_idx(&chi.slope, beta);
        let b = g.rs.pairing_idx(&chi.base, beta);
        let a = to_i64(&a).expect("⟨ϖ_i, β̌⟩ is an integer");
        let form = AffineForm { a, b };
        den.push(form.succ());
        num.push(form);
    }
    ZetaProduct::from_forms(num, den)
}

fn pole_value(form: &AffineForm, z0: &Rat) -> Result<bool> {
    let v = form.eval(z0);
    if !v.is_integer() {
        return Err(Error::NonIntegral { form: form.to_string(), z0: fmt_rat(z0) });
    }
    Ok(v.is_zero() || v.is_one())
}

/// Pole order at `z0`: numerator forms on `{0, 1}` minus denominator forms
/// on `{0, 1}`.  Every form must take an integer value.
pub fn order_at(p: &ZetaProduct, z0: &Rat) -> Result<i64> {
    let mut ord = 0;
    for x in &p.num {
        if pole_value(x, z0)? {
            ord += 1;
        }
    }
    for x in &p.den {
        if pole_value(x, z0)? {
            ord -= 1;
        }
    }
    Ok(ord)
}

// ---------------------------------------------------------------------------
// Symbolic coefficient ring

/// A formal symbol of the completed zeta function.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// Residue at `1`.
    Rho,
    /// `A_k`: regular Laurent coefficient of `ε^k` at `1`.
    PoleCoeff(u32),
    /// `Z_k(v)`, `v ≥ 1/2` canonical.
    Taylor(u32, Rat),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Rho => write!(f, "ρ"),
            Sym::PoleCoeff(k) => write!(f, "A{k}"),
            Sym::Taylor(k, v) => write!(f, "Z{k}({})", fmt_rat(v)),
        }
    }
}

/// Monomial `Π sym^e`, `e ∈ Z \ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub BTreeMap<Sym, i32>);

impl Mono {
    fn sym(s: Sym) -> Mono {
        Mono(BTreeMap::from([(s, 1)]))
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0.clone();
        for (s, e) in &o.0 {
            let x = m.entry(s.clone()).or_insert(0);
            *x += e;
            if *x == 0 {
                m.remove(s);
            }
        }
        Mono(m)
    }

    fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect())
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(s, &e)| if e == 1 { s.to_string() } else { format!("{s}^{e}") }).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly(pub BTreeMap<Mono, Rat>);

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        SymPoly::term(Mono::default(), c)
    }

    pub fn term(m: Mono, c: Rat) -> Self {
        let mut p = SymPoly::zero();
        if !c.is_zero() {
            p.0.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        let mut r = self.0.clone();
        for (m, c) in &o.0 {
            let x = r.entry(m.clone()).or_insert_with(Rat::zero);
            *x += c;
            if x.is_zero() {
                r.remove(m);
            }
        }
        SymPoly(r)
    }

    pub fn scale(&self, k: &Rat) -> SymPoly {
        if k.is_zero() {
            return SymPoly::zero();
        }
        SymPoly(self.0.iter().map(|(m, c)| (m.clone(), c * k)).collect())
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut r = SymPoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                r = r.add(&SymPoly::term(m1.mul(m2), c1 * c2));
            }
        }
        r
    }

    /// Inverse of a single term.
    fn inv_term(&self) -> Option<SymPoly> {
        if self.0.len() != 1 {
            return None;
        }
        let (m, c) = self.0.iter().next().unwrap();
        Some(SymPoly::term(m.inv(), c.recip()))
    }

    /// Symbols occurring in the polynomial.
    pub fn symbols(&self) -> Vec<String> {
        let mut v: Vec<String> = self.0.keys().flat_map(|m| m.0.keys().map(|s| s.to_string())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `self / o` when it is a rational number.
    pub fn ratio(&self, o: &SymPoly) -> Result<Rat> {
        let Some((m, c)) = o.0.iter().next() else {
            return Err(Error::NonRationalRatio("division by zero coefficient".into()));
        };
        let r = self.0.get(m).cloned().unwrap_or_else(Rat::zero) / c;
        let resid = self.sub(&o.scale(&r));
        if resid.is_zero() {
            Ok(r)
        } else {
            Err(Error::NonRationalRatio(format!("{} (residual {})", resid.symbols().join(", "), resid)))
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, c)| {
                if m.0.is_empty() {
                    fmt_rat(c)
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{}·{m}", fmt_rat(c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Laurent series in `h = z − z0` over [`SymPoly`], known to `depth`
/// coefficients starting at `h^val`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaLaurent {
    pub val: i32,
    pub coeffs: Vec<SymPoly>,
}

impl ZetaLaurent {
    pub fn one(depth: usize) -> Self {
        let mut coeffs = vec![SymPoly::zero(); depth];
        coeffs[0] = SymPoly::constant(Rat::one());
        ZetaLaurent { val: 0, coeffs }
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `h^k` (zero below `val`).
    pub fn coeff(&self, k: i32) -> SymPoly {
        assert!(k < self.val + self.depth() as i32, "coefficient h^{k} beyond known depth");
        if k < self.val {
            SymPoly::zero()
        } else {
            self.coeffs[(k - self.val) as usize].clone()
        }
    }

    /// The coefficient of `h^val`.
    pub fn leading(&self) -> &SymPoly {
        &self.coeffs[0]
    }

    pub fn mul(&self, o: &ZetaLaurent) -> ZetaLaurent {
        let d = self.depth().min(o.depth());
        let coeffs = (0..d)
            .map(|n| (0..=n).fold(SymPoly::zero(), |acc, k| acc.add(&self.coeffs[k].mul(&o.coeffs[n - k]))))
            .collect();
        ZetaLaurent { val: self.val + o.val, coeffs }
    }

    pub fn inv(&self) -> ZetaLaurent {
        let b0 = self.coeffs[0].inv_term().expect("leading coefficient is a monomial");
        let mut out = vec![b0.clone()];
        for n in 1..self.depth() {
            let s = (1..=n).fold(SymPoly::zero(), |acc, k| acc.add(&self.coeffs[k].mul(&out[n - k])));
            out.push(b0.mul(&s).scale(&-Rat::one()));
        }
        ZetaLaurent { val: -self.val, coeffs: out }
    }

    /// Sum of series with possibly different valuations; the result is
    /// re-normalised so that the leading coefficient is nonzero (or the
    /// series is reported with an empty coefficient list when every known
    /// coefficient cancels).
    pub fn sum(parts: &[ZetaLaurent]) -> ZetaLaurent {
        let lo = parts.iter().map(|p| p.val).min().unwrap();
        let hi = parts.iter().map(|p| p.val + p.depth() as i32).min().unwrap();
        let mut coeffs: Vec<SymPoly> =
            (lo..hi).map(|k| parts.iter().fold(SymPoly::zero(), |acc, p| acc.add(&p.coeff(k)))).collect();
        let nz = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..nz);
        ZetaLaurent { val: lo + nz as i32, coeffs }
    }

    /// Pole order `−val` (meaningful when the leading coefficient is nonzero).
    pub fn pole_order(&self) -> i32 {
        -self.val
    }
}

impl fmt::Display for ZetaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coeffs.iter().enumerate().map(|(i, c)| format!("({c})·h^{}", self.val + i as i32)).collect();
        write!(f, "{} + O(h^{})", parts.join(" + "), self.val + self.depth() as i32)
    }
}

fn taylor_sym(k: u32, v: &Rat) -> (Rat, Option<Sym>) {
    let half = rat(1, 2);
    if *v >= half {
        if *v == half && k % 2 == 1 {
            return (Rat::zero(), None);
        }
        (Rat::one(), Some(Sym::Taylor(k, v.clone())))
    } else {
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        (sign, Some(Sym::Taylor(k, Rat::one() - v)))
    }
}

/// Expansion of `ζ(a z + b)` around `z0` to `depth` coefficients.
pub fn zeta_expansion(form: &AffineForm, z0: &Rat, depth: usize) -> Result<ZetaLaurent> {
    let v = form.eval(z0);
    let a = int(form.a);
    let apow = |k: u32| -> Rat { num_traits::pow(a.clone(), k as usize) };
    if form.a == 0 {
        if v.is_zero() || v.is_one() {
            return Err(Error::InvalidInput(format!("constant form {form} sits on a pole")));
        }
        let (s, sym) = taylor_sym(0, &v);
        let mut l = ZetaLaurent { val: 0, coeffs: vec![SymPoly::zero(); depth] };
        l.coeffs[0] = SymPoly::term(Mono::sym(sym.unwrap()), s);
        return Ok(l);
    }
    if v.is_one() || v.is_zero() {
        // ζ(1 + ε) = ρ/ε + Σ A_k ε^k ;  ζ(ε) = ζ(1 − ε)
        let sgn = if v.is_one() { Rat::one() } else { -Rat::one() };
        let mut coeffs = vec![SymPoly::term(Mono::sym(Sym::Rho), &sgn / &a)];
        for k in 0..depth.saturating_sub(1) as u32 {
            let c = apow(k) * num_traits::pow(sgn.clone(), k as usize);
            coeffs.push(SymPoly::term(Mono::sym(Sym::PoleCoeff(k)), c));
        }
        return Ok(ZetaLaurent { val: -1, coeffs });
    }
    let coeffs = (0..depth as u32)
        .map(|k| {
            let (s, sym) = taylor_sym(k, &v);
            match sym {
                Some(sym) => SymPoly::term(Mono::sym(sym), s * apow(k)),
                None => SymPoly::zero(),
            }
        })
        .collect();
    Ok(ZetaLaurent { val: 0, coeffs })
}

/// Laurent expansion of a factor around `z0`, `depth` coefficients from
/// the leading one.
pub fn leading_laurent(p: &ZetaProduct, z0: &Rat, depth: usize) -> Result<ZetaLaurent> {
    assert!(depth >= 1);
    let mut acc = ZetaLaurent::one(depth);
    for x in &p.num {
        acc = acc.mul(&zeta_expansion(x, z0, depth)?);
    }
    for x in &p.den {
        acc = acc.mul(&zeta_expansion(x, z0, depth)?.inv());
    }
    Ok(acc)
}

/// Leading coefficient of each class member divided by that of the
/// shortest member.  All members must share the same pole order.
pub fn class_coefficient_ratios(g: &WeylGroup, p: ParabolicIndex, cls: &EquivClass) -> Result<Vec<Rat>> {
    let series: Vec<ZetaLaurent> = cls
        .members
        .iter()
        .map(|&w| leading_laurent(&gk_product(g, p, w), &cls.z0, 1))
        .collect::<Result<_>>()?;
    let base = &series[0];
    series
        .iter()
        .zip(&cls.members)
        .map(|(s, &w)| {
            if s.val != base.val {
                return Err(Error::Precondition(format!(
                    "member {} has pole order {} but the shortest has {}",
                    g.render(w),
                    s.pole_order(),
                    base.pole_order()
                )));
            }
            s.leading().ratio(base.leading())
        })
        .collect()
}

/// `Σ_{w ∈ ws} [h^k] C_w(z)` around `z0`.
pub fn summed_coefficient(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, ws: &[EltId], k: i32, depth: usize) -> Result<SymPoly> {
    let mut acc = SymPoly::zero();
    for &w in ws {
        let l = leading_laurent(&gk_product(g, p, w), z0, depth)?;
        acc = acc.add(&l.coeff(k));
    }
    Ok(acc)
}

/// The Laurent expansion of `Σ_{w ∈ ws} C_w(z)` around `z0`.
pub fn class_sum_laurent(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, ws: &[EltId], depth: usize) -> Result<ZetaLaurent> {
    let parts: Vec<ZetaLaurent> =
        ws.iter().map(|&w| leading_laurent(&gk_product(g, p, w), z0, depth)).collect::<Result<_>>()?;
    Ok(ZetaLaurent::sum(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse_word;

    fn elt(g: &WeylGroup, w: &str) -> EltId {
        g.from_word(&parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn form_roundtrip() {
        for s in ["2z+1", "z−3/2", "z", "−z+1/2", "3z−2", "5/2"] {
            assert_eq!(AffineForm::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(AffineForm::parse("z-3/2").unwrap(), AffineForm::new(1, rat(-3, 2)));
    }

    #[test]
    fn identity_factor_is_one() {
        let g = WeylGroup::f4();
        let p = ParabolicIndex { i: 4 };
        let c = gk_product(&g, p, g.identity());
        assert!(c.is_one());
        assert_eq!(order_at(&c, &rat(5, 2)).unwrap(), 0);
        assert_eq!(c.to_string(), "1");
    }

    #[test]
    fn simple_factors_and_display() {
        let g = WeylGroup::f4();
        let p = ParabolicIndex { i: 4 };
        assert_eq!(gk_product(&g, p, elt(&g, "w4")).to_string(), "ζ(z+9/2)/ζ(z+11/2)");
        let c = gk_product(&g, p, elt(&g, "w3w1w2w3w4w3w2w3w1w2w3w4"));
        assert_eq!(c.to_string(), "ζ(2z)ζ(z−3/2)²/(ζ(2z+1)ζ(z+5/2)ζ(z+11/2))");
        assert_eq!(ZetaProduct::parse(&c.to_string()).unwrap(), c);
        assert_eq!(order_at(&c, &rat(5, 2)).unwrap(), 2);
    }

    #[test]
    fn non_integral_value_is_rejected() {
        let c = ZetaProduct::from_forms(vec![AffineForm::new(1, rat(1, 3))], vec![]);
        assert!(matches!(order_at(&c, &int(1)), Err(Error::NonIntegral { .. })));
    }

    #[test]
    fn functional_equation_cancels_symbols() {
        // ζ(z − 1/2)/ζ(z + 1/2) at z0 = 1/2 → −1 + c1 h + …
        let z0 = rat(1, 2);
        let p1 = ZetaProduct::from_forms(vec![AffineForm::new(1, rat(-1, 2))], vec![AffineForm::new(1, rat(1, 2))]);
        let l1 = leading_laurent(&p1, &z0, 2).unwrap();
        assert_eq!(l1.val, 0);
        assert_eq!(l1.coeffs[0], SymPoly::constant(-Rat::one()));
        // ζ(2z − 1)/ζ(2z) has first coefficient doubled
        let p2 = ZetaProduct::from_forms(vec![AffineForm::new(2, int(-1))], vec![AffineForm::new(2, int(0))]);
        let l2 = leading_laurent(&p2, &z0, 2).unwrap();
        assert_eq!(l2.coeffs[0], SymPoly::constant(-Rat::one()));
        assert_eq!(l2.coeffs[1], l1.coeffs[1].scale(&int(2)));
        assert!(!l1.coeffs[1].is_zero());
    }

    #[test]
    fn residue_symbol_at_one() {
        let p = ZetaProduct::from_forms(vec![AffineForm::new(1, int(0))], vec![]);
        let l = leading_laurent(&p, &int(1), 2).unwrap();
        assert_eq!(l.val, -1);
        assert_eq!(l.coeffs[0].to_string(), "ρ");
        assert_eq!(l.coeffs[1].to_string(), "A0");
    }

    #[test]
    fn inverse_series() {
        let f = AffineForm::new(2, rat(1, 3));
        let l = zeta_expansion(&f, &int(1), 4).unwrap();
        let prod = l.mul(&l.inv());
        assert_eq!(prod, ZetaLaurent::one(4));
    }
}
