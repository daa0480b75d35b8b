//! Characterization suites. For each frame, every numbered condition of each
//! equivalence is evaluated on its own and the results compared. On finite
//! frames several of these collapse (all primes are covered, every
//! sublocale is spatial), so for those suites every condition is also
//! required to be true.
//!
//! Infrastructure suites check the engine itself: the join formula, the
//! difference laws, the lemmas about `𝔟`, the adjunctions and the lift.

use std::fmt;

use crate::assembly::{enumerate_assembly, Assembly, AssemblyError};
use crate::classify::{classify_enumerated, d_scattered_property, totally_spatial_property, Verdict};
use crate::element_set::ElementSet;
use crate::interior::InteriorOperator;
use crate::lattice::FiniteFrame;
use crate::structures::{
    absolutely_essential_primes, check_adjunction, essential_primes, is_d_sublocale, lift_surjection,
    meet_closure_m, primes_above, pt_d, pt_d_set, pt_set, s_b, s_b_via_complemented, sp_d, spatialization,
    weakly_covered, Spectrum, Subsystems,
};
use crate::sublocale::{
    boolean_sublocale, closed_sublocale, complement_of, generate_sublocale, open_sublocale,
    sublocale_to_nucleus, supplement, validate_members,
};
use crate::topology::{spatialization_is_iso, spectrum, spectrum_td};

/// Difference laws run on assemblies up to this size.
pub const DIFFERENCE_LIMIT: usize = 32;
/// The `𝔟` lemmas run on frames and assemblies up to these sizes.
pub const LEMMA_FRAME_LIMIT: usize = 8;
pub const LEMMA_ASSEMBLY_LIMIT: usize = 64;
/// Lifts are checked on assemblies up to this size.
pub const LIFT_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: &'static str) -> Self {
        Self { suite, checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            return;
        }
        if self.failures.len() < 20 {
            self.failures.push(what());
        } else if self.failures.last().is_none_or(|m| m != "…") {
            self.failures.push("…".into());
        }
    }

    /// All conditions equal; with `all_true`, also all true.
    fn equivalence(suite: &'static str, conditions: &[bool], all_true: bool) -> Self {
        let mut out = Self::new(suite);
        let listing = || {
            conditions
                .iter()
                .enumerate()
                .map(|(i, c)| format!("({})={c}", i + 1))
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.check(conditions.iter().all(|&c| c == conditions[0]), || {
            format!("conditions differ: {}", listing())
        });
        if all_true {
            out.check(conditions.iter().all(|&c| c), || {
                format!("finite frame with a false condition: {}", listing())
            });
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct FrameReport {
    pub suites: Vec<SuiteOutcome>,
    pub cap_error: Option<AssemblyError>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteOutcome> {
        self.suites.iter().filter(|s| !s.passed())
    }
}

fn pow2(n: usize) -> usize {
    1usize.checked_shl(n as u32).unwrap_or(usize::MAX)
}

/// Whether distinct members of the family have distinct images.
fn injective<T: PartialEq>(images: &[T]) -> bool {
    images.iter().enumerate().all(|(i, a)| images[i + 1..].iter().all(|b| a != b))
}

struct Ctx<'a> {
    f: &'a FiniteFrame,
    a: &'a Assembly,
    sub: &'a Subsystems,
    all: ElementSet,
    cap: usize,
}

impl Ctx<'_> {
    fn op_frame(&self, family: &ElementSet) -> Option<FiniteFrame> {
        self.a.subfamily_frame(family).ok().map(|(f, _)| f)
    }
}

fn td_spatial(c: &Ctx) -> SuiteOutcome {
    let f = c.f;
    let covered = f.covered_primes();
    let b_frame = c.op_frame(&c.sub.b);
    let conditions = [
        spatialization_is_iso(f, &spectrum_td(f)),
        f.every_element_meet_of(&covered),
        b_frame.as_ref().is_some_and(|g| g.is_spatial()),
        b_frame.as_ref().is_some_and(|g| g.is_boolean() && g.size() == pow2(covered.len())),
    ];
    SuiteOutcome::equivalence("td-spatial", &conditions, false)
}

fn strongly_td_spatial(c: &Ctx) -> SuiteOutcome {
    let f = c.f;
    let sp = spectrum(f);
    let spatial = f.is_spatial();
    let pt_images: Vec<ElementSet> = c.sub.sp.iter().map(|i| pt_set(&c.a.get(i))).collect();
    let conditions = [
        f.is_strongly_td_spatial(),
        f.every_element_meet_of(&f.covered_primes()) && f.primes_covered(),
        spatial && sp.space.is_td(),
        spatialization_is_iso(f, &sp) && sp.space.is_sober() && sp.space.is_td(),
        spatial && injective(&pt_images) && pt_images.len() == pow2(f.primes().len()),
        c.sub.b == c.sub.sp,
    ];
    SuiteOutcome::equivalence("strongly-td-spatial", &conditions, false)
}

fn primes_covered(c: &Ctx) -> SuiteOutcome {
    let d = &c.sub.d;
    let conditions = [
        c.f.primes_covered(),
        c.sub.sp.is_subset(&c.sub.b),
        *d == c.all,
        d.iter().all(|i| d.iter().all(|j| d.contains(c.a.meet(i, j)))),
        c.sub.sp.is_subset(d),
    ];
    SuiteOutcome::equivalence("primes-covered", &conditions, true)
}

fn totally_spatial(c: &Ctx) -> SuiteOutcome {
    let conditions = [
        c.sub.sp == c.all,
        c.sub.d.is_subset(&c.sub.sp),
        totally_spatial_property(c.f),
    ];
    SuiteOutcome::equivalence("totally-spatial", &conditions, true)
}

fn hereditarily_td_spatial(c: &Ctx) -> SuiteOutcome {
    let f = c.f;
    let d = &c.sub.d;
    let covered = f.covered_primes();
    let d_frame = c.op_frame(d);
    let points: Vec<ElementSet> = d.iter().map(|i| pt_d_set(&c.a.get(i))).collect();
    let conditions = [
        c.a.iter().all(|s| s.to_frame().frame.is_td_spatial()),
        d.iter().all(|i| c.a.get(i).to_frame().frame.is_td_spatial()),
        d.iter().all(|i| {
            let s = c.a.get(i);
            meet_closure_m(&pt_d(&s)) == s
        }),
        d.len() == pow2(covered.len()) && injective(&points),
        d_frame.as_ref().is_some_and(|g| g.is_spatial() && g.is_boolean()),
        *d == c.sub.b && f.is_td_spatial(),
        c.a.iter().all(|s| s.is_zero() || !pt_d_set(&s).is_empty()),
    ];
    SuiteOutcome::equivalence("hereditarily-td-spatial", &conditions, true)
}

fn hereditarily_strongly_td_spatial(c: &Ctx) -> SuiteOutcome {
    let f = c.f;
    let covered = f.covered_primes();
    let whole_frame = c.op_frame(&c.all);
    let top = f.top();
    let meet_of_covered = |set: Result<ElementSet, _>, a| {
        set.is_ok_and(|e: ElementSet| f.meet_all(e.intersection(&covered).iter()) == a)
    };
    let conditions = [
        c.sub.sp == c.all && f.primes_covered(),
        c.sub.sp == c.all && f.is_strongly_td_spatial(),
        c.a.iter().all(|s| s.to_frame().frame.is_strongly_td_spatial()),
        c.a.len() == pow2(covered.len()) && whole_frame.as_ref().is_some_and(|g| g.is_boolean()),
        whole_frame.as_ref().is_some_and(|g| g.is_spatial() && g.is_boolean()),
        f.elements().all(|a| meet_of_covered(essential_primes(f, a), a)),
        f.elements().all(|a| meet_of_covered(absolutely_essential_primes(f, a), a)),
        f.is_spatial()
            && f.elements().filter(|&a| a != top).all(|a| {
                absolutely_essential_primes(f, a).is_ok_and(|e| !e.is_disjoint(&covered))
            }),
        c.a.iter().all(|s| s.is_zero() || !s.members().is_disjoint(&covered)),
    ];
    SuiteOutcome::equivalence("hereditarily-strongly-td-spatial", &conditions, true)
}

fn d_scattered(c: &Ctx) -> SuiteOutcome {
    let conditions = [c.sub.d.is_subset(&c.sub.b), d_scattered_property(c.a, &c.sub.b)];
    SuiteOutcome::equivalence("d-scattered", &conditions, false)
}

/// If `S_D ⊆ S_b` then `sp(L)` is totally spatial; and the inclusion
/// `S_b(sp(L)) ⊇ {S ∈ S_b(L) | S ⊆ sp(L)}` the argument uses.
fn d_scattered_spatialization(c: &Ctx) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("d-scattered-spatialization");
    let x = spatialization(&c.a.get(c.a.whole()));
    let xf = x.to_frame();
    let Ok(xa) = enumerate_assembly(&xf.frame, c.cap) else {
        out.check(false, || "assembly of sp(L) exceeds the cap".into());
        return out;
    };
    let x_sub_sp = crate::structures::sp_s(&xa);
    let totally = x_sub_sp == xa.all();
    out.check(!c.sub.d.is_subset(&c.sub.b) || totally, || {
        "S_D ⊆ S_b but sp(L) is not totally spatial".into()
    });
    let n = c.f.size();
    let xb: Vec<ElementSet> = s_b(&xa).iter().map(|i| xf.globalize(xa.members(i), n)).collect();
    for i in c.sub.b.iter() {
        let s = c.a.get(i);
        if s.is_subset(&x) {
            out.check(xb.contains(s.members()), || format!("{s} in S_b(L) below sp(L) but not in S_b(sp(L))"));
        }
    }
    out
}

fn closed_joins_spatial(c: &Ctx) -> SuiteOutcome {
    SuiteOutcome::equivalence("closed-joins-spatial", &[c.f.is_spatial(), c.sub.c.is_subset(&c.sub.sp)], false)
}

fn closed_joins_maximal_primes(c: &Ctx) -> SuiteOutcome {
    SuiteOutcome::equivalence("closed-joins-maximal-primes", &[c.f.maximal_primes_only(), c.sub.sp.is_subset(&c.sub.c)], false)
}

fn subfit_d_scattered(c: &Ctx) -> SuiteOutcome {
    let conditions = [
        c.sub.d.is_subset(&c.sub.c),
        c.f.is_subfit() && c.sub.d.is_subset(&c.sub.b),
    ];
    SuiteOutcome::equivalence("subfit-d-scattered", &conditions, false)
}

fn table_rows(c: &Ctx) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("table-rows");
    let class = classify_enumerated(c.a, c.sub);
    for r in &class.rows {
        out.check(r.verdict() == Verdict::Agree, || {
            format!("row {} ({} vs {}): {}", r.index, r.relation_name, r.property_name, r.verdict().as_str())
        });
    }
    out.check(c.sub.b == s_b_via_complemented(c.a), || {
        "double-supplement S_b differs from joins of complemented sublocales".into()
    });
    out.check((c.sub.c == c.sub.b) == c.f.is_subfit(), || "S_c = S_b disagrees with subfitness".into());
    out
}

fn join_formula(c: &Ctx) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("join-formula");
    let n = c.a.len();
    for i in 0..n {
        for j in i..n {
            let (s, t) = (c.a.get(i), c.a.get(j));
            let reference = generate_sublocale(c.f, &s.members().union(t.members()));
            match s.join(&t) {
                Ok(u) => {
                    out.check(validate_members(c.f, u.members()).is_ok(), || format!("{s} ∨ {t} = {u} is not a sublocale"));
                    out.check(u == reference, || format!("{s} ∨ {t} = {u}, expected {reference}"));
                }
                Err(e) => out.check(false, || format!("{s} ∨ {t}: {e}")),
            }
        }
    }
    out
}

fn difference_laws(c: &Ctx) -> Option<SuiteOutcome> {
    let a = c.a;
    let n = a.len();
    if n > DIFFERENCE_LIMIT {
        return None;
    }
    let mut out = SuiteOutcome::new("difference-laws");
    let zero = a.zero();
    let whole = a.whole();
    let diff = |i, j| a.difference(i, j);
    let join = |i, j| a.join(i, j);
    let complemented: Vec<bool> = (0..n)
        .map(|i| complement_of(&a.get(i)).is_ok_and(|s| a.index_of(&s).is_some()))
        .collect();
    let sharp = |i| diff(whole, i);
    for s in 0..n {
        for (t, &t_complemented) in complemented.iter().enumerate() {
            let d = diff(s, t);
            out.check(d.is_some(), || format!("{} ∖ {} is not a sublocale", a.get(s), a.get(t)));
            let Some(d) = d else { continue };
            out.check(a.is_subset(d, s), || format!("law 1 fails for ({s}, {t})"));
            out.check((d == zero) == a.is_subset(s, t), || format!("law 2 fails for ({s}, {t})"));
            if t_complemented {
                let rhs = sharp(t).map(|ts| a.meet(s, ts));
                out.check(rhs == Some(d), || format!("law 3 fails for ({s}, {t})"));
            }
            for r in 0..n {
                let lhs4 = diff(s, a.meet(t, r));
                let rhs4 = diff(s, r).and_then(|sr| join(d, sr));
                out.check(lhs4.is_some() && lhs4 == rhs4, || format!("law 4 fails for ({s}, {t}, {r})"));
                let lhs5 = diff(d, r);
                let rhs5 = diff(s, r).and_then(|sr| diff(sr, t));
                out.check(lhs5.is_some() && lhs5 == rhs5, || format!("law 5 fails for ({s}, {t}, {r})"));
                let tr = join(t, r);
                out.check(tr.is_some_and(|tr| a.is_subset(d, r) == a.is_subset(s, tr)), || {
                    format!("residuation fails for ({s}, {t}, {r})")
                });
            }
        }
    }
    Some(out)
}

fn lemmas(c: &Ctx) -> Option<SuiteOutcome> {
    let f = c.f;
    if f.size() > LEMMA_FRAME_LIMIT || c.a.len() > LEMMA_ASSEMBLY_LIMIT {
        return None;
    }
    let mut out = SuiteOutcome::new("lemmas");
    let covered = f.covered_primes();
    for x in f.elements() {
        for y in f.elements() {
            let lhs = boolean_sublocale(f, f.heyting(x, y));
            let rhs = open_sublocale(f, x).meet(&boolean_sublocale(f, y)).expect("same frame");
            out.check(lhs == rhs, || format!("𝔟({x}→{y}) ≠ 𝔬({x}) ∩ 𝔟({y})"));
        }
        let ess = essential_primes(f, x);
        let bx = boolean_sublocale(f, x);
        out.check(ess.as_ref().ok() == Some(&pt_set(&bx)), || format!("essential primes of {x} ≠ pt(𝔟({x}))"));
        if let (Ok(ess), Ok(abs)) = (ess, absolutely_essential_primes(f, x)) {
            out.check(ess.intersection(&covered).is_subset(&abs), || {
                format!("a covered essential prime of {x} is not absolutely essential")
            });
            // absolutely essential ⇔ in every prime family meeting to x ⇔ weakly covered and essential
            let above = primes_above(f, x).to_vec();
            for &p in &above {
                let in_every = (0u32..1 << above.len()).all(|m| {
                    let family = above.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &q)| q);
                    f.meet_all(family.clone()) != x || family.clone().any(|q| q == p)
                });
                let conditions = [abs.contains(p), in_every, weakly_covered(f, p) && ess.contains(p)];
                out.check(conditions.iter().all(|&c| c == conditions[0]), || {
                    format!("prime {p} over {x}: absolutely essential / in every family / weakly covered and essential = {conditions:?}")
                });
            }
        }
    }
    for p in f.primes().iter() {
        let bp = boolean_sublocale(f, p);
        out.check(complement_of(&bp).is_ok() == covered.contains(p), || {
            format!("𝔟({p}) complemented ≠ {p} covered")
        });
    }
    if let Ok((g, ids)) = c.a.subfamily_frame(&c.sub.d) {
        let got = ElementSet::from_ids(c.a.len(), g.covered_primes().iter().map(|k| ids[k]));
        let expected = ElementSet::from_ids(
            c.a.len(),
            covered.iter().filter_map(|p| c.a.index_of(&boolean_sublocale(f, p))),
        );
        out.check(got == expected, || format!("covered primes of S_D^op are {got}, expected {expected}"));
    }
    // every sublocale is an intersection of complemented ones, and the
    // nucleus round trip is the identity
    for s in c.a.iter() {
        let mut meet = f.all();
        for (join, _) in f.complemented_pairs() {
            if s.members().is_subset(join) {
                meet.intersect_with(join);
            }
        }
        out.check(meet == *s.members(), || format!("{s} is not an intersection of 𝔬(a)∨𝔠(b)"));
        out.check(sublocale_to_nucleus(&s).sublocale() == s, || format!("nucleus round trip moves {s}"));
    }
    for x in f.elements() {
        for y in f.elements() {
            let cj = closed_sublocale(f, f.join(x, y));
            let cm = closed_sublocale(f, x).meet(&closed_sublocale(f, y)).expect("same frame");
            out.check(cj == cm, || format!("𝔠({x}∨{y}) ≠ 𝔠({x}) ∩ 𝔠({y})"));
            let om = open_sublocale(f, f.meet(x, y));
            let oi = open_sublocale(f, x).meet(&open_sublocale(f, y)).expect("same frame");
            out.check(om == oi, || format!("𝔬({x}∧{y}) ≠ 𝔬({x}) ∩ 𝔬({y})"));
        }
    }
    Some(out)
}

fn adjunction(c: &Ctx) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("adjunction");
    let a = c.a;
    for spectrum in [Spectrum::TD, Spectrum::Classical] {
        let r = check_adjunction(a, spectrum);
        out.check(r.passed(), || format!("{spectrum:?} adjunction: {}", r.failures.join("; ")));
    }
    let d = &c.sub.d;
    // sp_D as an interior operator on S_D under inclusion
    match a.subfamily_lattice(d) {
        Ok((lat, ids)) => {
            let map: Option<Vec<usize>> = ids
                .iter()
                .map(|&i| {
                    let t = sp_d(&a.get(i)).ok()?;
                    let g = a.index_of(&t)?;
                    ids.iter().position(|&k| k == g)
                })
                .collect();
            match map.map(|m| InteriorOperator::new(&lat, m)) {
                Some(Ok(iota)) => {
                    out.check(iota.check_interior1().passed(), || "sp_D image fails the interior meet/join laws".into());
                    out.check(iota.check_interior2().passed(), || "sp_D surjection fails to preserve meets".into());
                    out.check(iota.preserves_binary_joins(), || "sp_D does not preserve binary joins".into());
                }
                Some(Err(e)) => out.check(false, || format!("sp_D is not an interior operator: {e}")),
                None => out.check(false, || "sp_D leaves S_D".into()),
            }
        }
        Err(e) => out.check(false, || format!("S_D is not a lattice: {e}")),
    }
    let members: Vec<usize> = d.iter().collect();
    let pts: Vec<ElementSet> = (0..a.len()).map(|i| pt_d_set(&a.get(i))).collect();
    let triples = members.len() <= DIFFERENCE_LIMIT;
    for (x, &i) in members.iter().enumerate() {
        for (y, &j) in members.iter().enumerate().skip(x) {
            let ij = a.join(i, j);
            out.check(ij.is_some_and(|k| d.contains(k)), || format!("S_D not closed under {i} ∨ {j}"));
            if let Some(k) = ij {
                out.check(pts[k] == pts[i].union(&pts[j]), || format!("pt_D({i} ∨ {j}) ≠ union"));
                if triples {
                    for &l in &members[y..] {
                        let ijl = a.join(k, l);
                        out.check(
                            ijl.is_some_and(|m| pts[m] == pts[k].union(&pts[l])),
                            || format!("pt_D({i} ∨ {j} ∨ {l}) ≠ union"),
                        );
                    }
                }
            }
        }
        for t in 0..a.len() {
            out.check(a.difference(i, t).is_some_and(|k| d.contains(k)), || {
                format!("{i} ∖ {t} leaves S_D")
            });
        }
    }
    out.check(c.sub.b.is_subset(d) && d.contains(a.whole()), || "S_D is not dense".into());
    // sp_D[S_D] = 𝔟(sp_D(L)) in S(L)^op
    if let (Ok(op), Ok(spl)) = (a.as_frame(), sp_d(&a.get(a.whole()))) {
        let image = ElementSet::from_ids(
            a.len(),
            members.iter().filter_map(|&i| sp_d(&a.get(i)).ok().and_then(|t| a.index_of(&t))),
        );
        match a.index_of(&spl) {
            Some(k) => {
                let b = boolean_sublocale(&op, k);
                out.check(*b.members() == image, || "sp_D[S_D] ≠ 𝔟(sp_D(L))".into());
            }
            None => out.check(false, || "sp_D(L) outside the assembly".into()),
        }
    }
    out
}

fn lift(c: &Ctx) -> Option<SuiteOutcome> {
    if c.a.len() > LIFT_LIMIT {
        return None;
    }
    let mut out = SuiteOutcome::new("lift");
    for s in c.a.iter() {
        let d = is_d_sublocale(&s);
        match lift_surjection(&s, c.cap) {
            Ok(l) => {
                out.check(d, || format!("lift exists for the non-D sublocale {s}"));
                out.check(l.square_commutes(), || format!("square fails for {s}"));
                out.check(l.preserves_meets(), || format!("lift onto {s} loses meets"));
            }
            Err(e) => out.check(!d, || format!("no lift onto the D-sublocale {s}: {e}")),
        }
    }
    Some(out)
}

fn spectra(c: &Ctx) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("spectra");
    let sp = spectrum(c.f);
    out.check(sp.space.is_sober(), || "spectrum is not sober".into());
    out.check(spectrum_td(c.f).space.is_td(), || "T_D spectrum is not T_D".into());
    out.check(sp.space.is_td() == sp.space.skula().is_discrete(), || "T_D disagrees with a discrete Skula space".into());
    let supp = (0..c.a.len()).all(|i| supplement(&supplement(&c.a.get(i))).is_subset(&c.a.get(i)));
    out.check(supp, || "S## ⊄ S".into());
    out
}

/// Runs every suite on one frame.
pub fn verify_frame_suites(frame: &FiniteFrame, cap: usize) -> FrameReport {
    let assembly = match enumerate_assembly(frame, cap) {
        Ok(a) => a,
        Err(e) => return FrameReport { suites: Vec::new(), cap_error: Some(e) },
    };
    let sub = Subsystems::compute(&assembly);
    let ctx = Ctx { f: frame, a: &assembly, sub: &sub, all: assembly.all(), cap };
    let mut suites = vec![
        td_spatial(&ctx),
        strongly_td_spatial(&ctx),
        primes_covered(&ctx),
        totally_spatial(&ctx),
        hereditarily_td_spatial(&ctx),
        hereditarily_strongly_td_spatial(&ctx),
        d_scattered(&ctx),
        d_scattered_spatialization(&ctx),
        closed_joins_spatial(&ctx),
        closed_joins_maximal_primes(&ctx),
        subfit_d_scattered(&ctx),
        table_rows(&ctx),
        join_formula(&ctx),
        adjunction(&ctx),
        spectra(&ctx),
    ];
    suites.extend(difference_laws(&ctx));
    suites.extend(lemmas(&ctx));
    suites.extend(lift(&ctx));
    FrameReport { suites, cap_error: None }
}

#[derive(Debug, Clone)]
pub struct NamedReport {
    pub name: String,
    pub frame: FiniteFrame,
    pub report: FrameReport,
}

#[derive(Debug, Clone, Default)]
pub struct BatchReport {
    pub frames: Vec<NamedReport>,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.frames.iter().all(|f| f.report.passed())
    }

    pub fn cap_exceeded(&self) -> bool {
        self.frames.iter().any(|f| f.report.cap_error.is_some())
    }

    pub fn failing(&self) -> impl Iterator<Item = &NamedReport> {
        self.frames.iter().filter(|f| !f.report.passed())
    }

    /// `(suite, frames run, frames failed)` in first-seen order.
    pub fn summary(&self) -> Vec<(&'static str, usize, usize)> {
        let mut out: Vec<(&'static str, usize, usize)> = Vec::new();
        for f in &self.frames {
            for s in &f.report.suites {
                let row = match out.iter_mut().find(|r| r.0 == s.suite) {
                    Some(r) => r,
                    None => {
                        out.push((s.suite, 0, 0));
                        out.last_mut().expect("just pushed")
                    }
                };
                row.1 += 1;
                row.2 += usize::from(!s.passed());
            }
        }
        out
    }

    pub fn suite_failed(&self, suite: &str) -> bool {
        self.summary().iter().any(|&(s, _, failed)| s == suite && failed > 0)
    }
}

/// Verifies each frame in turn. Frames are independent, but runs stay on
/// the calling thread so a mutant switched on by the caller applies.
pub fn run_batch(frames: Vec<(String, FiniteFrame)>, cap: usize) -> BatchReport {
    BatchReport {
        frames: frames
            .into_iter()
            .map(|(name, frame)| {
                let report = verify_frame_suites(&frame, cap);
                NamedReport { name, frame, report }
            })
            .collect(),
    }
}

impl fmt::Display for BatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frames: {}", self.frames.len())?;
        if self.frames.is_empty() {
            writeln!(f, "warning: no frames, every suite passes vacuously")?;
        }
        for (suite, run, failed) in self.summary() {
            let status = if failed == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {suite}: {run} frames, {failed} failing")?;
        }
        for nf in &self.frames {
            if let Some(e) = &nf.report.cap_error {
                writeln!(f, "skipped {}: {e}", nf.name)?;
            }
            for s in nf.report.failures() {
                for msg in &s.failures {
                    writeln!(f, "failure {} {}: {msg}", nf.name, s.suite)?;
                }
            }
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}
