//! Constant-term class analysis: class labels, effective pole orders with
//! certified cancellations, square-integrability, the Arthur multiplicity
//! formula and the residual-spectrum membership predicate.
//!
//! For a class `[u]` the constant-term contribution is
//! `M_u(z) = Σ_{w ∈ [u]} C_w(z) N_w(z)`.  The analysis combines
//!
//! * the certified image rank of `N_u(z0)` (spherical constituent `π_1`,
//!   or `π_1 ⊕ π_2`, or anything else);
//! * the Gindikin–Karpelevich data: member pole orders and leading
//!   coefficient ratios;
//! * for `π_1 ⊕ π_2` classes, the scalars `a_w` by which `N_w` acts on
//!   `π_2` relative to the shortest member.
//!
//! When the exponent is fixed by simple reflections `s_α` (`α ∈ J`,
//! pairwise orthogonal) and the class is a union of cosets `W_J·h`, each
//! coset contributes `T_h(z) C_h(z) N_h(z)` where `T_h` vanishes to order
//! `|J|` with leading coefficient `Π_{α∈J} ⟨m_h, α̌⟩` times an operator
//! common to all cosets (`m_h` the slope of `h·χ_{P,z}`).  Heads `h` thus
//! carry effective weights `R_h = r_h Π_α ⟨m_h, α̌⟩ / Π_α ⟨m_u, α̌⟩`, and on
//! `π^S` the leading term is proportional to `ν(|S|) = Σ_h R_h a_h^{|S|}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chars::{equivalence_classes, inducing_character, square_integrable, EquivClass};
use crate::error::{Error, Result};
use crate::hecke::images::{
    combination_rank_rows, derivative_identity_check, image_space_equal_rows, kernel, op_row, row_image_rank,
    shortest_antidominant, stabilizer_scalar_rows,
};
use crate::rootsys::ParabolicIndex;
use crate::scalars::linalg::Relation;
use crate::scalars::qfunc::QFunc;
use crate::scalars::rat::{fmt_rat, int, Rat};
use crate::weyl::{EltId, WeylGroup};
use crate::zeta_gk::{class_sum_laurent, gk_product, leading_laurent, order_at, SymPoly, ZetaProduct};

/// Predicates are tabulated for `|S| = 0, …, PREDICATE_RANGE − 1`.
pub const PREDICATE_RANGE: usize = 8;

/// Class labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Label {
    #[serde(rename = "C_sph")]
    Sph,
    #[serde(rename = "C_even")]
    Even,
    #[serde(rename = "C_no")]
    NotOne,
    #[serde(rename = "C_0")]
    Zero,
    #[serde(rename = "C_0a")]
    ZeroA,
    #[serde(rename = "unclassified")]
    Unclassified,
    /// Non-positive C-order and no rank requested.
    #[serde(rename = "unranked")]
    Unranked,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::Sph => "C_sph",
            Label::Even => "C_even",
            Label::NotOne => "C_no",
            Label::Zero => "C_0",
            Label::ZeroA => "C_0a",
            Label::Unclassified => "unclassified",
            Label::Unranked => "unranked",
        };
        write!(f, "{s}")
    }
}

/// Whether `π^S` (by `|S|`) occurs in the leading term of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Contribution {
    Yes,
    No,
    /// Allowed by the argument but not shown to occur.
    Possible,
}

/// How a predicate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Derivation {
    /// Only the spherical constituent occurs.
    Spherical,
    /// `ν(|S|) = Σ_h R_h a_h^{|S|}` from diagonal class data.
    Diagonal,
    /// The class needs an argument beyond diagonal data: sub-leading
    /// balance with the derivative identity, or the non-diagonal head
    /// pattern.  Every mechanical prerequisite of that argument was checked.
    Structural,
    /// The class does not contribute to the `π^S` family.
    NotApplicable,
}

/// Iwahori-fixed dimensions of the constituents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentDims {
    pub pi1: usize,
    pub pi2: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberReport {
    pub word: String,
    pub factor: ZetaProduct,
    pub order: i64,
    /// Leading coefficient relative to the shortest member (same order only).
    pub ratio: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub exponent: Vec<String>,
    pub members: Vec<MemberReport>,
    /// Maximal pole order of the member factors.
    pub c_order: i64,
    /// Pole order of `Σ_w C_w(z)` (the class on the spherical section).
    pub spherical_order: i64,
    /// Simple reflections fixing the exponent (1-based).
    pub stabilizer_letters: Vec<usize>,
    pub rank: Option<usize>,
    pub label: Label,
    pub square_integrable: bool,
    /// Upper bound for the pole order of the class contribution.
    pub effective_order: i64,
    /// The leading combination was shown to vanish (rank 0), lowering the
    /// order by one.
    pub cancellation_certified: bool,
    pub heads: Vec<String>,
    /// Effective weights `R_h`.
    pub weights: Vec<String>,
    /// Scalars `a_h` on `π_2` (diagonal classes only).
    pub scalars: Vec<String>,
    pub predicate: Vec<Contribution>,
    pub derivation: Derivation,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub parabolic: usize,
    pub z0: String,
    /// Pole order of the Eisenstein series (max effective class order).
    pub order: i64,
    /// Pole order on the spherical section (a lower bound).
    pub spherical_order: i64,
    pub square_integrable: bool,
    pub dims: ConstituentDims,
    pub predicate: Vec<Contribution>,
    pub sigma_predicate: String,
    /// Classes outside the `π^S` family that reach the maximal order.
    pub stray_classes: Vec<String>,
    pub classes: Vec<ClassReport>,
}

/// Options controlling how much work a report does.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Rank every class (otherwise only classes with positive C-order and
    /// the anti-dominant class).
    pub rank_all: bool,
    /// Known image ranks (e.g. from an image table).
    pub seed_ranks: HashMap<EltId, usize>,
    /// Skip stabiliser scalars and predicate checks (orders only).
    pub orders_only: bool,
}

/// `(1/|G|) Σ_classes size · trace^{|S|}`.
pub fn arthur_multiplicity(character_table: &[(u64, i64)], size_s: u32, group_order: u64) -> Rat {
    let total: Rat = character_table.iter().map(|&(size, tr)| int(size as i64) * int(tr).pow(size_s as i32)).sum();
    total / int(group_order as i64)
}

/// Render a predicate vector.
pub fn render_predicate(pred: &[Contribution], pi1: usize) -> String {
    use Contribution::*;
    let yes: Vec<bool> = pred.iter().map(|c| *c == Yes).collect();
    let undetermined = pred.iter().any(|c| *c == Possible);
    if !undetermined {
        if yes.iter().enumerate().all(|(n, &y)| y == (n == 0)) {
            return if pi1 == 1 { "trivial".into() } else { "spherical".into() };
        }
        if yes.iter().enumerate().all(|(n, &y)| y == (n % 2 == 0)) {
            return "even".into();
        }
        if yes.iter().enumerate().all(|(n, &y)| y == (n != 1)) {
            return "≠1".into();
        }
        if yes.iter().all(|y| !y) {
            return "none".into();
        }
    }
    let cells: Vec<String> = pred
        .iter()
        .enumerate()
        .map(|(n, c)| format!("{n}:{}", match c {
            Yes => "y",
            No => "n",
            Possible => "?",
        }))
        .collect();
    format!("pattern[{}]", cells.join(","))
}

fn union(a: &[Contribution], b: &[Contribution]) -> Vec<Contribution> {
    use Contribution::*;
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Yes, _) | (_, Yes) => Yes,
            (Possible, _) | (_, Possible) => Possible,
            _ => No,
        })
        .collect()
}

/// Shared state of one analysis: cached rows and ranks.
struct Ctx<'g> {
    g: &'g WeylGroup,
    p: ParabolicIndex,
    z0: Rat,
    rows: HashMap<EltId, Vec<QFunc>>,
    ranks: HashMap<EltId, usize>,
    ad_kernel: Option<Vec<Relation>>,
}

impl<'g> Ctx<'g> {
    fn row(&mut self, w: EltId) -> Result<Vec<QFunc>> {
        if let Some(r) = self.rows.get(&w) {
            return Ok(r.clone());
        }
        let r = op_row(self.g, self.p, &self.z0, self.g.word(w))?;
        self.rows.insert(w, r.clone());
        Ok(r)
    }

    fn rank(&mut self, w: EltId) -> Result<usize> {
        if let Some(&r) = self.ranks.get(&w) {
            return Ok(r);
        }
        let row = self.row(w)?;
        let r = row_image_rank(self.g, self.p, &row)?.rank;
        self.ranks.insert(w, r);
        Ok(r)
    }

    fn combination_rank(&mut self, coeffs: &[Rat], ws: &[EltId]) -> Result<usize> {
        let parts = coeffs.iter().zip(ws).map(|(c, &w)| Ok((c.clone(), self.row(w)?))).collect::<Result<Vec<_>>>()?;
        combination_rank_rows(self.g, self.p, &parts)
    }

    fn antidominant_kernel(&mut self) -> Result<Vec<Relation>> {
        if self.ad_kernel.is_none() {
            let ad = shortest_antidominant(self.g, self.p, &self.z0);
            self.ad_kernel = Some(kernel(self.g, self.p, &self.z0, self.g.word(ad))?.basis);
        }
        Ok(self.ad_kernel.clone().unwrap())
    }
}

/// Pole order of `Σ_{w ∈ ws} C_w(z)` at `z0` (non-negative).
pub fn spherical_class_order(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, ws: &[EltId]) -> Result<i64> {
    let top = ws.iter().map(|&w| order_at(&gk_product(g, p, w), z0)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0);
    if top <= 0 {
        return Ok(0);
    }
    for depth in 1..=(top as usize) {
        let s = class_sum_laurent(g, p, z0, ws, depth)?;
        if !s.coeffs.is_empty() {
            return Ok((-(s.val as i64)).max(0));
        }
    }
    Ok(0)
}

/// Heads of the `W_J`-coset decomposition of a class, or `None` when the
/// class is not a union of full cosets.
fn coset_heads(g: &WeylGroup, cls: &EquivClass, letters: &[usize]) -> Option<Vec<EltId>> {
    for (i, &a) in letters.iter().enumerate() {
        for &b in &letters[i + 1..] {
            if g.rs.cartan[a][b] != 0 {
                return None;
            }
        }
    }
    let wj = g.subgroup(letters);
    let heads: Vec<EltId> = cls
        .members
        .iter()
        .copied()
        .filter(|&x| letters.iter().all(|&a| g.length(g.lmul(a, x)) > g.length(x)))
        .collect();
    if heads.len() * wj.len() != cls.members.len() {
        return None;
    }
    for &h in &heads {
        for &s in &wj {
            if !cls.members.contains(&g.mul(s, h)) {
                return None;
            }
        }
    }
    Some(heads)
}

fn diagonal_predicate(weights: &[Rat], scalars: &[Rat]) -> Vec<Contribution> {
    (0..PREDICATE_RANGE)
        .map(|n| {
            let nu: Rat = weights.iter().zip(scalars).map(|(r, a)| r * a.pow(n as i32)).sum();
            if nu.is_zero() {
                Contribution::No
            } else {
                Contribution::Yes
            }
        })
        .collect()
}

fn pattern_label(pred: &[Contribution]) -> Option<Label> {
    let yes = |n: usize| pred[n] == Contribution::Yes;
    if (0..pred.len()).all(|n| yes(n) == (n % 2 == 0)) {
        Some(Label::Even)
    } else if (0..pred.len()).all(|n| yes(n) == (n != 1)) {
        Some(Label::NotOne)
    } else {
        None
    }
}

struct ClassBase {
    report: ClassReport,
    orders: Vec<i64>,
    ratios: Option<Vec<Rat>>,
}

fn class_base(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, cls: &EquivClass) -> Result<ClassBase> {
    let factors: Vec<ZetaProduct> = cls.members.iter().map(|&w| gk_product(g, p, w)).collect();
    let orders = factors.iter().map(|f| order_at(f, z0)).collect::<Result<Vec<_>>>()?;
    let c_order = *orders.iter().max().unwrap();
    let ratios = if c_order > 0 && orders.iter().all(|&o| o == c_order) {
        let leads: Vec<SymPoly> =
            factors.iter().map(|f| Ok(leading_laurent(f, z0, 1)?.coeffs[0].clone())).collect::<Result<_>>()?;
        Some(leads.iter().map(|l| l.ratio(&leads[0])).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    let members = cls
        .members
        .iter()
        .zip(factors)
        .enumerate()
        .map(|(k, (&w, f))| MemberReport {
            word: g.render(w),
            factor: f,
            order: orders[k],
            ratio: ratios.as_ref().map(|r| fmt_rat(&r[k])),
        })
        .collect();
    let spherical_order = spherical_class_order(g, p, z0, &cls.members)?;
    let letters: Vec<usize> = (0..g.rank()).filter(|&j| cls.exponent.0[j].is_zero()).collect();
    let report = ClassReport {
        exponent: cls.exponent.0.iter().map(fmt_rat).collect(),
        members,
        c_order,
        spherical_order,
        stabilizer_letters: letters.iter().map(|j| j + 1).collect(),
        rank: None,
        label: Label::Unranked,
        square_integrable: square_integrable(g, &cls.exponent),
        effective_order: c_order,
        cancellation_certified: false,
        heads: vec![],
        weights: vec![],
        scalars: vec![],
        predicate: vec![Contribution::No; PREDICATE_RANGE],
        derivation: Derivation::NotApplicable,
        notes: vec![],
    };
    Ok(ClassBase { report, orders, ratios })
}

/// Classify one class given the constituent dimensions.
fn classify(ctx: &mut Ctx, cls: &EquivClass, dims: ConstituentDims, opts: &ReportOptions, cancel_floor: i64) -> Result<ClassReport> {
    let g = ctx.g;
    let p = ctx.p;
    let z0 = ctx.z0.clone();
    let ClassBase { mut report, orders, ratios } = class_base(g, p, &z0, cls)?;
    let need_rank = opts.rank_all || report.c_order > 0 || ctx.ranks.contains_key(&cls.members[0]);
    if !need_rank {
        report.effective_order = report.c_order.max(0);
        return Ok(report);
    }
    let rank = ctx.rank(cls.members[0])?;
    report.rank = Some(rank);
    let u = cls.members[0];
    if rank == dims.pi1 {
        report.label = Label::Sph;
        report.effective_order = report.spherical_order;
        report.derivation = Derivation::Spherical;
        report.predicate[0] = if report.spherical_order > 0 { Contribution::Yes } else { Contribution::No };
        return Ok(report);
    }
    let is_c2 = dims.pi2.is_some_and(|d2| rank == dims.pi1 + d2);
    if !is_c2 {
        report.label = Label::Zero;
        report.effective_order = report.c_order.max(0);
        // cancellation of the leading combination among equal-order members
        if report.c_order >= cancel_floor.max(1) && cls.members.len() >= 2 {
            if let Some(r) = &ratios {
                if ctx.combination_rank(r, &cls.members)? == 0 {
                    report.cancellation_certified = true;
                    report.effective_order -= 1;
                    report.notes.push("leading combination Σ r_w N_w(z0) has rank 0".into());
                }
            }
        }
        if report.c_order == 2 && cls.members.len() == 2 && !report.square_integrable && report.cancellation_certified {
            report.label = Label::ZeroA;
        }
        return Ok(report);
    }

    // π_1 ⊕ π_2 classes
    let chi = inducing_character(g, p);
    let letters: Vec<usize> = report.stabilizer_letters.iter().map(|j| j - 1).collect();
    let (letters, heads) = match coset_heads(g, cls, &letters) {
        Some(h) => (letters, h),
        None => {
            report.notes.push("class is not a union of W_J-cosets; treated member by member".into());
            (vec![], cls.members.clone())
        }
    };
    let ratios = ratios.ok_or_else(|| Error::Precondition("class members have different pole orders".into()))?;
    let slope_factor = |h: EltId| -> Rat {
        let m = g.act(h, &chi.slope);
        letters.iter().map(|&a| m.0[a].clone()).fold(Rat::one(), |acc, x| acc * x)
    };
    let su = slope_factor(u);
    if su.is_zero() || heads.iter().any(|&h| slope_factor(h).is_zero()) {
        return Err(Error::Precondition("stabiliser root constant along the line".into()));
    }
    let weights: Vec<Rat> = heads
        .iter()
        .map(|&h| {
            let k = cls.members.iter().position(|&x| x == h).unwrap();
            &ratios[k] * slope_factor(h) / &su
        })
        .collect();
    report.heads = heads.iter().map(|&h| g.render(h)).collect();
    report.weights = weights.iter().map(fmt_rat).collect();
    report.effective_order = report.c_order - letters.len() as i64;
    let _ = orders;

    // vanishing leading combination
    let lead_rank = ctx.combination_rank(&weights, &heads)?;
    if lead_rank == 0 {
        report.cancellation_certified = true;
        report.effective_order -= 1;
        report.notes.push("leading combination Σ R_h N_h(z0) has rank 0".into());
    }
    if opts.orders_only {
        report.label = Label::Unclassified;
        report.notes.push("orders only: π_2 scalars not computed".into());
        return Ok(report);
    }

    // scalars on π_2
    let mut scalars = vec![Rat::one()];
    let mut diagonal = true;
    let ru = ctx.row(u)?;
    for &h in &heads[1..] {
        let rh = ctx.row(h)?;
        match stabilizer_scalar_rows(g, p, &ru, &rh) {
            Ok(a) => {
                // a·N_u − N_h must kill π_2 and act on π_1 by a − 1
                let expected = if a.is_one() { 0 } else { dims.pi1 };
                let rank = combination_rank_rows(g, p, &[(a.clone(), ru.clone()), (-Rat::one(), rh.clone())])?;
                if rank != expected {
                    report.notes.push(format!("rank drop at a = {} is partial ({rank}); not a scalar on π_2", fmt_rat(&a)));
                    diagonal = false;
                    break;
                }
                scalars.push(a)
            }
            Err(Error::NotScalar) => {
                diagonal = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if diagonal {
        report.scalars = scalars.iter().map(fmt_rat).collect();
    }

    if diagonal && !report.cancellation_certified {
        report.predicate = diagonal_predicate(&weights, &scalars);
        report.derivation = Derivation::Diagonal;
        match pattern_label(&report.predicate) {
            Some(l) => report.label = l,
            None => {
                report.label = Label::Unclassified;
                report.notes.push("diagonal pattern is neither even nor ≠1".into());
            }
        }
        if letters.is_empty() {
            return Ok(report);
        }
        report.notes.push("leading term carries the common W_J-factor operator, assumed nonzero on the image".into());
        return Ok(report);
    }

    if diagonal && report.cancellation_certified && letters.is_empty() {
        // Order drops by one; |S| = 1 vanishes when the sub-leading GK
        // coefficients balance the scalars and the first-order operator
        // combination kills the kernel of the spherical projection.
        let sub: Vec<SymPoly> = heads
            .iter()
            .map(|&h| Ok(leading_laurent(&gk_product(g, p, h), &z0, 2)?.coeffs[1].clone()))
            .collect::<Result<_>>()?;
        let balance = sub.iter().zip(&scalars).fold(SymPoly::zero(), |acc, (s, a)| acc.add(&s.scale(a)));
        let kernel_basis = ctx.antidominant_kernel()?;
        let words: Vec<Vec<usize>> = heads.iter().map(|&h| g.word(h).to_vec()).collect();
        let derivative_ok = derivative_identity_check(g, p, &z0, &words, &weights, &kernel_basis)?;
        report.notes.push(format!(
            "sub-leading balance Σ_h c_h^(sub) a_h = {}; derivative identity on the spherical-projection kernel: {}",
            balance,
            derivative_ok
        ));
        let mut pred = vec![Contribution::Possible; PREDICATE_RANGE];
        pred[0] = if report.spherical_order == report.effective_order { Contribution::Yes } else { Contribution::No };
        pred[1] = if balance.is_zero() && derivative_ok { Contribution::No } else { Contribution::Possible };
        report.predicate = pred;
        report.derivation = Derivation::Structural;
        report.label = if report.predicate[1] == Contribution::No { Label::NotOne } else { Label::Unclassified };
        return Ok(report);
    }

    // non-diagonal: three members with distinct π_2 images
    if !diagonal && letters.is_empty() && heads.len() == 3 {
        let comb = ctx.combination_rank(&weights, &heads)?;
        let (r1, r2) = (ctx.row(heads[1])?, ctx.row(heads[2])?);
        let distinct = !image_space_equal_rows(g, p, &r1, &r2)?;
        report.notes.push(format!(
            "non-diagonal class: rank of Σ R_h N_h(z0) = {comb} (dim π_1 = {}), images of the two longer members distinct: {distinct}",
            dims.pi1
        ));
        if comb == dims.pi1 && distinct {
            report.label = Label::NotOne;
            report.derivation = Derivation::Structural;
            report.predicate = (0..PREDICATE_RANGE).map(|n| if n == 1 { Contribution::No } else { Contribution::Yes }).collect();
            return Ok(report);
        }
    }
    report.label = Label::Unclassified;
    report.notes.push("no diagonal or recognised special structure".into());
    Ok(report)
}

/// Full class analysis at `(P_i, z0)`.
pub fn spectrum_report(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, opts: &ReportOptions) -> Result<SpectrumReport> {
    let classes = equivalence_classes(g, p, z0);
    let mut ctx = Ctx { g, p, z0: z0.clone(), rows: HashMap::new(), ranks: opts.seed_ranks.clone(), ad_kernel: None };
    // constituent dimensions
    let ad = shortest_antidominant(g, p, z0);
    let pi1 = ctx.rank(ad)?;
    let mut positive_ranks = vec![];
    let mut sph_max = 0;
    for c in &classes {
        let o = c.members.iter().map(|&w| order_at(&gk_product(g, p, w), z0)).collect::<Result<Vec<_>>>()?;
        if o.into_iter().max().unwrap_or(0) > 0 {
            positive_ranks.push(ctx.rank(c.members[0])?);
            sph_max = sph_max.max(spherical_class_order(g, p, z0, &c.members)?);
        }
    }
    let pi2 = positive_ranks.iter().filter(|&&r| r > pi1).min().map(|r| r - pi1);
    let dims = ConstituentDims { pi1, pi2 };
    let mut reports = vec![];
    for c in &classes {
        reports.push(classify(&mut ctx, c, dims, opts, sph_max)?);
    }
    let order = reports.iter().map(|r| r.effective_order).max().unwrap_or(0);
    let spherical_order = reports.iter().map(|r| r.spherical_order).max().unwrap_or(0);
    let top: Vec<&ClassReport> = reports.iter().filter(|r| r.effective_order == order && order > 0).collect();
    let square_integrable = top.iter().all(|r| r.square_integrable);
    let mut predicate = vec![Contribution::No; PREDICATE_RANGE];
    let mut stray = vec![];
    for r in &top {
        match r.label {
            Label::Sph | Label::Even | Label::NotOne => predicate = union(&predicate, &r.predicate),
            _ => stray.push(format!("[{}] {}", r.exponent.join(","), r.label)),
        }
    }
    let sigma_predicate = render_predicate(&predicate, pi1);
    Ok(SpectrumReport {
        parabolic: p.i,
        z0: fmt_rat(z0),
        order,
        spherical_order,
        square_integrable,
        dims,
        predicate,
        sigma_predicate,
        stray_classes: stray,
        classes: reports,
    })
}

/// Pole order of `E_P(z)` at `z0` (maximal effective class order).
pub fn eisenstein_order(g: &WeylGroup, p: ParabolicIndex, z0: &Rat) -> Result<i64> {
    let opts = ReportOptions { orders_only: true, ..Default::default() };
    Ok(spectrum_report(g, p, z0, &opts)?.order)
}

/// One classified class (full analysis of its parabolic, then selection).
pub fn classify_class(g: &WeylGroup, p: ParabolicIndex, z0: &Rat, exponent: &[i64]) -> Result<ClassReport> {
    let rep = spectrum_report(g, p, z0, &ReportOptions::default())?;
    let key: Vec<String> = exponent.iter().map(|x| x.to_string()).collect();
    rep.classes
        .into_iter()
        .find(|c| c.exponent == key)
        .ok_or_else(|| Error::InvalidInput(format!("no class with exponent {key:?}")))
}

/// Table of reports keyed by exponent, for fixture diffs.
pub fn reports_by_exponent(rep: &SpectrumReport) -> BTreeMap<Vec<String>, &ClassReport> {
    rep.classes.iter().map(|c| (c.exponent.clone(), c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat::rat;

    #[test]
    fn arthur_s4_and_z2() {
        // S_4 classes: e, (12), (12)(34), (123), (1234); 2-dim character
        let s4 = [(1, 2), (6, 0), (3, 2), (8, -1), (6, 0)];
        assert_eq!(arthur_multiplicity(&s4, 1, 24), Rat::zero());
        assert_eq!(arthur_multiplicity(&s4, 2, 24), Rat::one());
        assert_eq!(arthur_multiplicity(&s4, 3, 24), Rat::one());
        let z2 = [(1, 1), (1, -1)];
        for n in 0..6 {
            assert_eq!(arthur_multiplicity(&z2, n, 2), if n % 2 == 0 { Rat::one() } else { Rat::zero() });
        }
        let trivial = [(1, 1), (6, 1), (3, 1), (8, 1), (6, 1)];
        for n in 0..6 {
            assert_eq!(arthur_multiplicity(&trivial, n, 24), Rat::one());
        }
    }

    #[test]
    fn predicate_rendering() {
        use Contribution::*;
        let even: Vec<_> = (0..PREDICATE_RANGE).map(|n| if n % 2 == 0 { Yes } else { No }).collect();
        assert_eq!(render_predicate(&even, 5), "even");
        let no1: Vec<_> = (0..PREDICATE_RANGE).map(|n| if n == 1 { No } else { Yes }).collect();
        assert_eq!(render_predicate(&no1, 42), "≠1");
        let triv: Vec<_> = (0..PREDICATE_RANGE).map(|n| if n == 0 { Yes } else { No }).collect();
        assert_eq!(render_predicate(&triv, 1), "trivial");
        assert_eq!(diagonal_predicate(&[int(1), rat(1, 3)], &[int(1), int(-3)])[1], No);
        assert_eq!(pattern_label(&diagonal_predicate(&[int(1), int(1)], &[int(1), int(-1)])), Some(Label::Even));
    }

    #[test]
    fn p4_report() {
        let g = WeylGroup::f4();
        let rep = spectrum_report(&g, ParabolicIndex { i: 4 }, &rat(5, 2), &ReportOptions { rank_all: true, ..Default::default() })
            .unwrap();
        assert_eq!(rep.order, 1);
        assert_eq!(rep.dims, ConstituentDims { pi1: 5, pi2: Some(2) });
        assert_eq!(rep.sigma_predicate, "even");
        assert!(rep.square_integrable);
        let by = reports_by_exponent(&rep);
        let c = by[&vec!["-1".to_string(), "-1".into(), "-1".into(), "2".into()]];
        assert_eq!(c.label, Label::Even);
        assert_eq!(c.weights, vec!["1", "1"]);
        assert_eq!(c.scalars, vec!["1", "-1"]);
    }
}
