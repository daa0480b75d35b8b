//! Spectra of sublocales and the distinguished subfamilies of `S(L)`:
//! `S_b`, `S_c`, `S_D` and `sp[S(L)]`, plus spatialization, localic maps,
//! the lifting construction and essential primes.

use thiserror::Error;

use crate::assembly::{enumerate_assembly, Assembly, AssemblyError};
use crate::element_set::ElementSet;
use crate::lattice::{Elem, FiniteFrame, FrameError};
use crate::sublocale::{
    boolean_sublocale, closed_sublocale, complement_of, meet_closure, sublocale_join, supplement,
    Sublocale, SublocaleFrame,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("element {0} is not in the requested spectrum")]
    NotInSpectrum(Elem),
    #[error("the sublocale is not a D-sublocale")]
    NotDSublocale,
    #[error("the surjection onto this sublocale does not lift: it is not a D-sublocale")]
    NotLiftable,
    #[error("{0} is not the meet of the primes above it")]
    PreconditionFailed(Elem),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spectrum {
    /// Subsets of `pt(L)`.
    Classical,
    /// Subsets of `pt_D(L)`.
    TD,
}

/// A set of primes of a frame, tagged with the spectrum it lives in.
#[derive(Clone, Debug)]
pub struct PrimeSubset {
    frame: FiniteFrame,
    points: ElementSet,
    spectrum: Spectrum,
}

impl PrimeSubset {
    pub fn new(frame: &FiniteFrame, points: ElementSet, spectrum: Spectrum) -> Result<Self, StructureError> {
        let allowed = match spectrum {
            Spectrum::Classical => frame.primes(),
            Spectrum::TD => frame.covered_primes(),
        };
        if let Some(p) = points.iter().find(|&p| !allowed.contains(p)) {
            return Err(StructureError::NotInSpectrum(p));
        }
        Ok(Self {
            frame: frame.clone(),
            points,
            spectrum,
        })
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn points(&self) -> &ElementSet {
        &self.points
    }

    pub fn spectrum(&self) -> Spectrum {
        self.spectrum
    }
}

/// Primes of `S` as a lattice in its own right. Meets in `S` are meets in `L`.
pub fn pt_set(s: &Sublocale) -> ElementSet {
    let f = s.frame();
    let list = s.members().to_vec();
    let mut out = ElementSet::empty(f.size());
    for &p in &list {
        if p == f.top() {
            continue;
        }
        let reducible = list.iter().enumerate().any(|(i, &x)| {
            x != p && list[i + 1..].iter().any(|&y| y != p && f.meet(x, y) == p)
        });
        if !reducible {
            out.insert(p);
        }
    }
    out
}

/// Covered primes of `S` as a lattice in its own right.
pub fn pt_d_set(s: &Sublocale) -> ElementSet {
    let f = s.frame();
    let mut out = pt_set(s);
    for p in out.clone().iter() {
        let above = f.meet_all(s.members().iter().filter(|&x| f.lt(p, x)));
        if above == p {
            out.remove(p);
        }
    }
    out
}

pub fn pt(s: &Sublocale) -> PrimeSubset {
    PrimeSubset {
        frame: s.frame().clone(),
        points: pt_set(s),
        spectrum: Spectrum::Classical,
    }
}

/// Intrinsic covered primes of `S`; tagged [`Spectrum::TD`] when they are
/// covered in `L` too.
pub fn pt_d(s: &Sublocale) -> PrimeSubset {
    let points = pt_d_set(s);
    let spectrum = if points.is_subset(&s.frame().covered_primes()) {
        Spectrum::TD
    } else {
        Spectrum::Classical
    };
    PrimeSubset {
        frame: s.frame().clone(),
        points,
        spectrum,
    }
}

/// `pt_D(L) ∩ S`, the extrinsic comparison set.
pub fn extrinsic_pt_d(s: &Sublocale) -> ElementSet {
    s.frame().covered_primes().intersection(s.members())
}

pub fn is_d_sublocale(s: &Sublocale) -> bool {
    pt_d_set(s).is_subset(&s.frame().covered_primes())
}

/// `𝔐(Y)`: all meets of subsets of `Y`.
pub fn meet_closure_m(y: &PrimeSubset) -> Sublocale {
    Sublocale::from_members_unchecked(&y.frame, meet_closure(&y.frame, &y.points))
}

/// `⋁{𝔟(p) | p ∈ Y}`, the second description of `𝔐(Y)`.
pub fn join_of_point_sublocales(y: &PrimeSubset) -> Sublocale {
    let parts: Vec<Sublocale> = y.points.iter().map(|p| boolean_sublocale(&y.frame, p)).collect();
    sublocale_join(&y.frame, &parts).expect("same frame")
}

/// `sp(S) = 𝔐(pt(S))`
pub fn spatialization(s: &Sublocale) -> Sublocale {
    meet_closure_m(&pt(s))
}

/// `sp_D(S) = 𝔐(pt_D(S))`, defined on D-sublocales.
pub fn sp_d(s: &Sublocale) -> Result<Sublocale, StructureError> {
    if !is_d_sublocale(s) {
        return Err(StructureError::NotDSublocale);
    }
    Ok(meet_closure_m(&pt_d(s)))
}

/// The four subfamilies of an assembly, as sets of assembly indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystems {
    pub b: ElementSet,
    pub c: ElementSet,
    pub d: ElementSet,
    pub sp: ElementSet,
}

impl Subsystems {
    pub fn compute(assembly: &Assembly) -> Self {
        Self {
            b: s_b(assembly),
            c: s_c(assembly),
            d: s_d(assembly),
            sp: sp_s(assembly),
        }
    }
}

/// `S_b(L) = {S | S## = S}`
pub fn s_b(assembly: &Assembly) -> ElementSet {
    let mut out = ElementSet::empty(assembly.len());
    for (i, s) in assembly.iter().enumerate() {
        if supplement(&supplement(&s)) == s {
            out.insert(i);
        }
    }
    out
}

/// Smooth sublocales: joins of complemented ones.
pub fn s_b_via_complemented(assembly: &Assembly) -> ElementSet {
    let generators: Vec<usize> = assembly
        .iter()
        .enumerate()
        .filter(|(_, s)| complement_of(s).is_ok())
        .map(|(i, _)| i)
        .collect();
    join_closure(assembly, &generators)
}

/// `S_c(L)`: all joins of closed sublocales.
pub fn s_c(assembly: &Assembly) -> ElementSet {
    let f = assembly.frame();
    let generators: Vec<usize> = f
        .elements()
        .filter_map(|a| assembly.index_of(&closed_sublocale(f, a)))
        .collect();
    join_closure(assembly, &generators)
}

/// Closes `{0}` under joins with the generators. Joins that fall outside the
/// assembly are dropped.
fn join_closure(assembly: &Assembly, generators: &[usize]) -> ElementSet {
    let mut out = ElementSet::empty(assembly.len());
    let mut frontier = vec![assembly.zero()];
    out.insert(assembly.zero());
    while let Some(x) = frontier.pop() {
        for &g in generators {
            if let Some(j) = assembly.join(x, g) {
                if out.insert(j) {
                    frontier.push(j);
                }
            }
        }
    }
    out
}

pub fn s_d(assembly: &Assembly) -> ElementSet {
    ElementSet::from_ids(
        assembly.len(),
        assembly
            .iter()
            .enumerate()
            .filter(|(_, s)| is_d_sublocale(s))
            .map(|(i, _)| i),
    )
}

/// `sp[S(L)] = {S | S = 𝔐(pt(S))}`
pub fn sp_s(assembly: &Assembly) -> ElementSet {
    ElementSet::from_ids(
        assembly.len(),
        assembly
            .iter()
            .enumerate()
            .filter(|(_, s)| spatialization(s) == *s)
            .map(|(i, _)| i),
    )
}

/// Outcome of an exhaustive adjunction check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn subsets(points: &ElementSet) -> impl Iterator<Item = ElementSet> + '_ {
    let list = points.to_vec();
    let n = points.universe();
    assert!(list.len() < 20, "too many points for subset enumeration");
    (0u32..(1u32 << list.len())).map(move |mask| {
        ElementSet::from_ids(n, list.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p))
    })
}

/// `𝔐(Y) ⊆ S ⇔ Y ⊆ pt_D(S)` for every D-sublocale `S` and `Y ⊆ pt_D(L)`,
/// and `pt_D(𝔐(Y)) = Y`. In classical mode the same law with `pt` over all
/// sublocales.
pub fn check_adjunction(assembly: &Assembly, spectrum: Spectrum) -> AdjunctionReport {
    let f = assembly.frame();
    let mut report = AdjunctionReport::default();
    let base = match spectrum {
        Spectrum::Classical => f.primes(),
        Spectrum::TD => f.covered_primes(),
    };
    let targets: Vec<Sublocale> = assembly
        .iter()
        .filter(|s| spectrum == Spectrum::Classical || is_d_sublocale(s))
        .collect();
    for y in subsets(&base) {
        let py = PrimeSubset {
            frame: f.clone(),
            points: y.clone(),
            spectrum,
        };
        let m = meet_closure_m(&py);
        if spectrum == Spectrum::TD && pt_d_set(&m) != y {
            report.failures.push(format!("pt_D(M({y})) = {}", pt_d_set(&m)));
        }
        for s in &targets {
            report.checked += 1;
            let points = match spectrum {
                Spectrum::Classical => pt_set(s),
                Spectrum::TD => pt_d_set(s),
            };
            if m.is_subset(s) != y.is_subset(&points) {
                report.failures.push(format!("Y = {y}, S = {}", s.members()));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("value {0} is outside the target frame")]
    OutOfRange(Elem),
    #[error("bottom is not preserved")]
    BottomNotPreserved,
    #[error("top is not preserved")]
    TopNotPreserved,
    #[error("join of {0} and {1} is not preserved")]
    JoinNotPreserved(Elem, Elem),
    #[error("meet of {0} and {1} is not preserved")]
    MeetNotPreserved(Elem, Elem),
}

/// A frame homomorphism `h: source → target` with its right adjoint, the
/// localic map `target → source`.
#[derive(Clone, Debug)]
pub struct AdjointPair {
    source: FiniteFrame,
    target: FiniteFrame,
    hom: Vec<Elem>,
    right: Vec<Elem>,
}

impl AdjointPair {
    pub fn from_hom(source: &FiniteFrame, target: &FiniteFrame, hom: Vec<Elem>) -> Result<Self, HomError> {
        if hom.len() != source.size() {
            return Err(HomError::WrongLength {
                expected: source.size(),
                got: hom.len(),
            });
        }
        if let Some(&bad) = hom.iter().find(|&&x| x >= target.size()) {
            return Err(HomError::OutOfRange(bad));
        }
        if hom[source.bottom()] != target.bottom() {
            return Err(HomError::BottomNotPreserved);
        }
        if hom[source.top()] != target.top() {
            return Err(HomError::TopNotPreserved);
        }
        for a in source.elements() {
            for b in a + 1..source.size() {
                if hom[source.join(a, b)] != target.join(hom[a], hom[b]) {
                    return Err(HomError::JoinNotPreserved(a, b));
                }
                if hom[source.meet(a, b)] != target.meet(hom[a], hom[b]) {
                    return Err(HomError::MeetNotPreserved(a, b));
                }
            }
        }
        let right = target
            .elements()
            .map(|b| source.join_all(source.elements().filter(|&a| target.leq(hom[a], b))))
            .collect();
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            hom,
            right,
        })
    }

    pub fn identity(frame: &FiniteFrame) -> Self {
        Self::from_hom(frame, frame, frame.elements().collect()).expect("identity is a homomorphism")
    }

    /// The surjection `a ↦ ν_S(a)` onto `S` as a standalone frame.
    pub fn onto_sublocale(s: &Sublocale) -> (Self, SublocaleFrame) {
        let sf = s.to_frame();
        let hom = s
            .frame()
            .elements()
            .map(|a| sf.to_local(s.reflect(a)).expect("ν_S lands in S"))
            .collect();
        let pair = Self::from_hom(s.frame(), &sf.frame, hom).expect("ν_S is a frame surjection");
        (pair, sf)
    }

    pub fn source(&self) -> &FiniteFrame {
        &self.source
    }

    pub fn target(&self) -> &FiniteFrame {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.hom[a]
    }

    pub fn right_adjoint(&self, b: Elem) -> Elem {
        self.right[b]
    }

    /// `h(a) ≤ b ⇔ a ≤ r(b)` for all `a, b`.
    pub fn adjunction_holds(&self) -> bool {
        self.source.elements().all(|a| {
            self.target
                .elements()
                .all(|b| self.target.leq(self.hom[a], b) == self.source.leq(a, self.right[b]))
        })
    }

    /// `f[T]` for a sublocale `T` of the target.
    pub fn image(&self, t: &Sublocale) -> Result<Sublocale, crate::sublocale::SublocaleError> {
        let set = ElementSet::from_ids(self.source.size(), t.members().iter().map(|b| self.right[b]));
        Sublocale::new(&self.source, set)
    }

    /// `f₋₁[S] = ⋁{T ∈ S(target) | f[T] ⊆ S}` over an enumerated target assembly.
    pub fn preimage(&self, s: &Sublocale, target_assembly: &Assembly) -> Sublocale {
        let parts: Vec<Sublocale> = target_assembly
            .iter()
            .filter(|t| self.image(t).map(|img| img.is_subset(s)).unwrap_or(false))
            .collect();
        sublocale_join(&self.target, &parts).expect("same frame")
    }

    /// The localic map sends covered primes to covered primes.
    pub fn is_d_homomorphism(&self) -> bool {
        let covered = self.source.covered_primes();
        self.target
            .covered_primes()
            .iter()
            .all(|p| covered.contains(self.right[p]))
    }
}

/// The lift `h(T) = T ∧ S` of the surjection onto `S`, from `S_D(L)` onto
/// `S_D(S)`, packaged as a frame homomorphism between the reverse-inclusion
/// frames.
pub struct Lift {
    pub pair: AdjointPair,
    /// op-frame element → sublocale of `L` in `S_D(L)`
    pub domain: Vec<Sublocale>,
    /// op-frame element → sublocale of `S` (as a frame) in `S_D(S)`
    pub codomain: Vec<Sublocale>,
    pub sublocale_frame: SublocaleFrame,
    sublocale: Sublocale,
}

impl Lift {
    pub fn apply(&self, t: &Sublocale) -> Option<Sublocale> {
        let i = self.domain.iter().position(|d| d == t)?;
        Some(self.codomain[self.pair.apply(i)].clone())
    }

    /// `h(𝔠_L(a)) = 𝔠_S(a)` for every `a ∈ S`.
    pub fn square_commutes(&self) -> bool {
        let l = self.sublocale.frame();
        let local = &self.sublocale_frame;
        self.sublocale.members().iter().all(|a| {
            let lhs = self.apply(&closed_sublocale(l, a));
            let rhs = closed_sublocale(&local.frame, local.to_local(a).expect("a ∈ S"));
            lhs.as_ref() == Some(&rhs)
        })
    }

    /// The map preserves every meet of a subfamily of `S_D(L)`. Finite meets
    /// reduce to binary ones, which `from_hom` already checked; small domains
    /// are rechecked on every subfamily.
    pub fn preserves_meets(&self) -> bool {
        let n = self.domain.len();
        let op = self.pair.source();
        let cod = self.pair.target();
        if n <= 12 {
            (0u32..(1 << n)).all(|mask| {
                let items: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let lhs = self.pair.apply(op.join_all(items.iter().copied()));
                let rhs = cod.join_all(items.iter().map(|&i| self.pair.apply(i)));
                lhs == rhs
            })
        } else {
            true
        }
    }
}

pub fn lift_surjection(s: &Sublocale, cap: usize) -> Result<Lift, StructureError> {
    if !is_d_sublocale(s) {
        return Err(StructureError::NotLiftable);
    }
    let l = s.frame();
    let l_assembly = enumerate_assembly(l, cap)?;
    let sf = s.to_frame();
    let s_assembly = enumerate_assembly(&sf.frame, cap)?;
    let d_l = s_d(&l_assembly);
    let d_s = s_d(&s_assembly);
    let (dom_frame, dom_ids) = l_assembly.subfamily_frame(&d_l)?;
    let (cod_frame, cod_ids) = s_assembly.subfamily_frame(&d_s)?;
    let domain: Vec<Sublocale> = dom_ids.iter().map(|&i| l_assembly.get(i)).collect();
    let codomain: Vec<Sublocale> = cod_ids.iter().map(|&i| s_assembly.get(i)).collect();
    let hom = domain
        .iter()
        .map(|t| {
            // the meet in S_D(L): the largest D-sublocale inside T ∩ S
            let inter = t.meet(s).expect("same frame");
            let inside: Vec<Sublocale> = domain.iter().filter(|d| d.is_subset(&inter)).cloned().collect();
            let m = sublocale_join(l, &inside).expect("same frame");
            let local = sf.localize(m.members()).expect("inside S");
            codomain
                .iter()
                .position(|c| *c.members() == local)
                .ok_or(StructureError::NotLiftable)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pair = AdjointPair::from_hom(&dom_frame, &cod_frame, hom).map_err(|_| StructureError::NotLiftable)?;
    Ok(Lift {
        pair,
        domain,
        codomain,
        sublocale_frame: sf,
        sublocale: s.clone(),
    })
}

/// `pt(↑a)`
pub fn primes_above(frame: &FiniteFrame, a: Elem) -> ElementSet {
    frame.primes().intersection(&frame.up_set(a))
}

fn check_meet_of_primes(frame: &FiniteFrame, a: Elem) -> Result<ElementSet, StructureError> {
    let above = primes_above(frame, a);
    if frame.meet_all(above.iter()) != a {
        return Err(StructureError::PreconditionFailed(a));
    }
    Ok(above)
}

/// `p ∈ pt(↑a)` with `⋀(pt(↑a) ∖ ↑p) ≠ a`.
pub fn essential_primes(frame: &FiniteFrame, a: Elem) -> Result<ElementSet, StructureError> {
    let above = check_meet_of_primes(frame, a)?;
    let mut out = ElementSet::empty(frame.size());
    for p in above.iter() {
        if frame.meet_all(above.iter().filter(|&q| !frame.leq(p, q))) != a {
            out.insert(p);
        }
    }
    Ok(out)
}

/// `p ∈ pt(↑a)` with `⋀(pt(↑a) ∖ {p}) ≠ a`.
pub fn absolutely_essential_primes(frame: &FiniteFrame, a: Elem) -> Result<ElementSet, StructureError> {
    let above = check_meet_of_primes(frame, a)?;
    let mut out = ElementSet::empty(frame.size());
    for p in above.iter() {
        if frame.meet_all(above.iter().filter(|&q| q != p)) != a {
            out.insert(p);
        }
    }
    Ok(out)
}

/// `p ≠ ⋀{q ∈ pt(L) | q > p}`
pub fn weakly_covered(frame: &FiniteFrame, p: Elem) -> bool {
    p != frame.meet_all(frame.primes().iter().filter(|&q| frame.lt(p, q)))
}
