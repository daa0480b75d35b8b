//! Classification of a frame against the table of relations between `S(L)`,
//! `S_b`, `S_c`, `S_D` and `sp[S(L)]`. Each row is evaluated twice: as the
//! set relation over the enumerated assembly, and as the frame property,
//! computed without looking at that relation.

use std::fmt::Write as _;

use crate::assembly::{enumerate_assembly, Assembly, AssemblyError};
use crate::element_set::ElementSet;
use crate::lattice::FiniteFrame;
use crate::structures::{essential_primes, pt_d_set, Subsystems};
use crate::topology::spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub index: usize,
    pub relation_name: &'static str,
    pub property_name: &'static str,
    pub relation: Option<bool>,
    pub property: Option<bool>,
}

impl Row {
    pub fn verdict(&self) -> Verdict {
        match (self.relation, self.property) {
            (Some(a), Some(b)) if a == b => Verdict::Agree,
            (Some(_), Some(_)) => Verdict::Disagree,
            _ => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts {
    pub assembly: usize,
    pub s_b: usize,
    pub s_c: usize,
    pub s_d: usize,
    pub sp: usize,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub size: usize,
    /// `None` when enumeration hit the cap
    pub counts: Option<Counts>,
    pub cap_error: Option<AssemblyError>,
    pub spatial: bool,
    pub subfit: bool,
    pub scattered: Option<bool>,
    pub d_scattered: Option<bool>,
    pub totally_spatial: Option<bool>,
    pub primes_covered: bool,
    pub primes_maximal: bool,
    pub td_spatial: bool,
    pub strongly_td_spatial: bool,
    pub rows: Vec<Row>,
}

fn and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// Spatial with a scattered spectrum: every nonempty set of points has an
/// isolated point.
pub fn scattered_property(frame: &FiniteFrame) -> Option<bool> {
    if !frame.is_spatial() {
        return Some(false);
    }
    let space = spectrum(frame).space;
    (space.points() <= 16).then(|| space.is_scattered())
}

/// Every element is the meet of its essential primes.
pub fn totally_spatial_property(frame: &FiniteFrame) -> bool {
    frame.elements().all(|a| {
        essential_primes(frame, a).is_ok_and(|e| frame.meet_all(e.iter()) == a)
    })
}

/// Every sublocale without covered primes is Boolean-generated.
pub fn d_scattered_property(assembly: &Assembly, s_b: &ElementSet) -> bool {
    (0..assembly.len()).all(|i| !pt_d_set(&assembly.get(i)).is_empty() || s_b.contains(i))
}

const ROWS: [(&str, &str); 14] = [
    ("S_b ⊆ sp", "spatial"),
    ("S_b = sp", "strongly T_D-spatial"),
    ("S_b = S", "scattered"),
    ("S = S_D", "primes covered"),
    ("S = sp", "totally spatial"),
    ("S_b = S_D", "D-scattered"),
    ("S_D ⊆ S_b", "D-scattered"),
    ("S_D ⊆ sp", "totally spatial"),
    ("sp ⊆ S_D", "primes covered"),
    ("S_c ⊆ sp", "spatial"),
    ("sp ⊆ S_c", "primes maximal"),
    ("S_D ⊆ S_c", "subfit and D-scattered"),
    ("S_D = S_c", "subfit and D-scattered"),
    ("S = S_c", "subfit and scattered"),
];

pub fn classify(frame: &FiniteFrame, cap: usize) -> Classification {
    match enumerate_assembly(frame, cap) {
        Ok(a) => {
            let s = Subsystems::compute(&a);
            build(frame, Some((&a, &s)), None)
        }
        Err(e) => build(frame, None, Some(e)),
    }
}

/// Classification over an assembly the caller already has.
pub fn classify_enumerated(assembly: &Assembly, subsystems: &Subsystems) -> Classification {
    build(assembly.frame(), Some((assembly, subsystems)), None)
}

fn build(
    frame: &FiniteFrame,
    enumerated: Option<(&Assembly, &Subsystems)>,
    cap_error: Option<AssemblyError>,
) -> Classification {
    let spatial = frame.is_spatial();
    let subfit = frame.is_subfit();
    let primes_covered = frame.primes_covered();
    let primes_maximal = frame.maximal_primes_only();
    let strongly_td = frame.is_strongly_td_spatial();
    let scattered_prop = scattered_property(frame);
    let totally_prop = totally_spatial_property(frame);

    let assembly = enumerated.map(|(a, _)| a);
    let subsystems = enumerated.map(|(_, s)| s);
    let d_scattered_prop = assembly
        .zip(subsystems)
        .map(|(a, s)| d_scattered_property(a, &s.b));

    let rel = |f: &dyn Fn(&Subsystems, &ElementSet) -> bool| {
        assembly.zip(subsystems).map(|(a, s)| f(s, &a.all()))
    };
    let relations = [
        rel(&|s, _| s.b.is_subset(&s.sp)),
        rel(&|s, _| s.b == s.sp),
        rel(&|s, all| s.b == *all),
        rel(&|s, all| s.d == *all),
        rel(&|s, all| s.sp == *all),
        rel(&|s, _| s.b == s.d),
        rel(&|s, _| s.d.is_subset(&s.b)),
        rel(&|s, _| s.d.is_subset(&s.sp)),
        rel(&|s, _| s.sp.is_subset(&s.d)),
        rel(&|s, _| s.c.is_subset(&s.sp)),
        rel(&|s, _| s.sp.is_subset(&s.c)),
        rel(&|s, _| s.d.is_subset(&s.c)),
        rel(&|s, _| s.d == s.c),
        rel(&|s, all| s.c == *all),
    ];
    let properties = [
        Some(spatial),
        Some(strongly_td),
        scattered_prop,
        Some(primes_covered),
        Some(totally_prop),
        d_scattered_prop,
        d_scattered_prop,
        Some(totally_prop),
        Some(primes_covered),
        Some(spatial),
        Some(primes_maximal),
        and(Some(subfit), d_scattered_prop),
        and(Some(subfit), d_scattered_prop),
        and(Some(subfit), scattered_prop),
    ];
    let rows = ROWS
        .iter()
        .zip(relations.iter().zip(properties))
        .enumerate()
        .map(|(i, (&(relation_name, property_name), (&relation, property)))| Row {
            index: i + 1,
            relation_name,
            property_name,
            relation,
            property,
        })
        .collect();

    let counts = assembly.zip(subsystems).map(|(a, s)| Counts {
        assembly: a.len(),
        s_b: s.b.len(),
        s_c: s.c.len(),
        s_d: s.d.len(),
        sp: s.sp.len(),
    });
    let all = assembly.map(|a| a.all());
    Classification {
        size: frame.size(),
        cap_error,
        spatial,
        subfit,
        scattered: subsystems.zip(all.as_ref()).map(|(s, all)| s.b == *all),
        d_scattered: subsystems.map(|s| s.d.is_subset(&s.b)),
        totally_spatial: subsystems.zip(all.as_ref()).map(|(s, all)| s.sp == *all),
        primes_covered,
        primes_maximal,
        td_spatial: frame.is_td_spatial(),
        strongly_td_spatial: strongly_td,
        counts,
        rows,
    }
}

fn opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn count(c: Option<usize>) -> String {
    c.map_or_else(|| "unknown".to_string(), |n| n.to_string())
}

impl Classification {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.verdict() == Verdict::Agree)
    }

    pub fn any_disagree(&self) -> bool {
        self.rows.iter().any(|r| r.verdict() == Verdict::Disagree)
    }

    fn fields(&self) -> Vec<(String, String)> {
        let c = self.counts;
        let mut out = vec![
            ("size".to_string(), self.size.to_string()),
            ("assembly".into(), count(c.map(|c| c.assembly))),
            ("s_b".into(), count(c.map(|c| c.s_b))),
            ("s_c".into(), count(c.map(|c| c.s_c))),
            ("s_d".into(), count(c.map(|c| c.s_d))),
            ("sp".into(), count(c.map(|c| c.sp))),
            ("spatial".into(), opt(Some(self.spatial)).into()),
            ("subfit".into(), opt(Some(self.subfit)).into()),
            ("scattered".into(), opt(self.scattered).into()),
            ("d_scattered".into(), opt(self.d_scattered).into()),
            ("totally_spatial".into(), opt(self.totally_spatial).into()),
            ("primes_covered".into(), opt(Some(self.primes_covered)).into()),
            ("primes_maximal".into(), opt(Some(self.primes_maximal)).into()),
            ("td_spatial".into(), opt(Some(self.td_spatial)).into()),
            ("strongly_td_spatial".into(), opt(Some(self.strongly_td_spatial)).into()),
        ];
        for r in &self.rows {
            out.push((format!("row.{}.relation", r.index), opt(r.relation).into()));
            out.push((format!("row.{}.property", r.index), opt(r.property).into()));
            out.push((format!("row.{}.verdict", r.index), r.verdict().as_str().into()));
        }
        out
    }

    pub fn to_keyvalue(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.fields() {
            writeln!(out, "{k}={v}").unwrap();
        }
        if let Some(e) = &self.cap_error {
            writeln!(out, "cap_exceeded={e}").unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let c = self.counts;
        let mut out = String::new();
        writeln!(out, "|L| = {}", self.size).unwrap();
        writeln!(out, "|S(L)| = {}", count(c.map(|c| c.assembly))).unwrap();
        writeln!(
            out,
            "|S_b| = {}  |S_c| = {}  |S_D| = {}  |sp| = {}",
            count(c.map(|c| c.s_b)),
            count(c.map(|c| c.s_c)),
            count(c.map(|c| c.s_d)),
            count(c.map(|c| c.sp))
        )
        .unwrap();
        if let Some(e) = &self.cap_error {
            writeln!(out, "note: {e}; assembly-dependent entries are unknown").unwrap();
        }
        for (k, v) in self.fields().into_iter().skip(6).take(9) {
            writeln!(out, "{k}: {v}").unwrap();
        }
        writeln!(out, "rows:").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "  {:>2}. {:<10} {:<6} | {:<24} {:<6} {}",
                r.index,
                r.relation_name,
                opt(r.relation),
                r.property_name,
                opt(r.property),
                r.verdict().as_str()
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::DEFAULT_CAP;
    use crate::generate::fixture;

    #[test]
    fn three_chain() {
        let c = classify(&FiniteFrame::chain(3), DEFAULT_CAP);
        assert!(!c.subfit);
        assert_eq!(c.scattered, Some(true));
        assert_eq!(
            c.counts,
            Some(Counts { assembly: 4, s_b: 4, s_c: 3, s_d: 4, sp: 4 })
        );
        assert!(c.all_agree(), "{}", c.to_text());
    }

    #[test]
    fn square_and_regression_fixture() {
        let c = classify(&fixture("boolean-2x2").unwrap(), DEFAULT_CAP);
        assert!(c.subfit && c.all_agree());
        assert_eq!(c.counts.unwrap().s_c, 4);
        assert!(classify(&fixture("antichain-plus-top").unwrap(), DEFAULT_CAP).all_agree());
    }

    #[test]
    fn cap_degrades() {
        let c = classify(&FiniteFrame::chain(5), 3);
        assert!(c.counts.is_none() && c.cap_error.is_some());
        assert_eq!(c.rows[0].verdict(), Verdict::Unknown);
        assert!(c.to_keyvalue().contains("assembly=unknown"));
        assert!(!c.any_disagree());
    }
}
