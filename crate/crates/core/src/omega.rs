//! The infinite chain `1 = a₀ > a₁ > a₂ > … > ⊥`, with sublocales described
//! by eventually periodic level sets.
//!
//! Every finite frame has all of its primes covered, so D-phenomena need an
//! infinite example. Here `⊥` is prime but not covered (it is the meet of all
//! levels and is never attained), while each level `aₙ`, `n ≥ 1`, is covered.
//!
//! Take `S = {1, ⊥} ∪ {a₂, a₄, …}` and `T = {1, ⊥} ∪ {a₁, a₃, …}`. In each,
//! `⊥` is an infinite meet of members and stays uncovered, so both are
//! D-sublocales. Their intersection `{1, ⊥}` is a two-element chain in which
//! `⊥` is covered, hence not a D-sublocale. Over the real interval the same
//! failure shows up with `pt_D(S) = ∅`; on this chain `pt_D(S)` is nonempty
//! but still inside `pt_D(L)`.
//!
//! Text form: `finite: 2 5 9 ; tail: offset=4 pattern=10 ; bottom: yes`.
//! The tail puts level `n ≥ offset` in the set iff
//! `pattern[(n - offset) % len]` is `1`. Every part is optional.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::element_set::ElementSet;
use crate::lattice::FiniteFrame;
use crate::sublocale::Sublocale;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("malformed description: {0}")]
    MalformedDescription(String),
    #[error("infinite level set without ⊥ is not meet-closed")]
    NotSublocale,
    #[error("{0} is not a D-sublocale, so its surjection does not lift")]
    NotLiftable(ChainSublocale),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainElement {
    Bottom,
    /// `Level(0)` is the top.
    Level(u64),
}

impl ChainElement {
    pub const TOP: ChainElement = ChainElement::Level(0);

    pub fn leq(self, other: ChainElement) -> bool {
        match (self, other) {
            (ChainElement::Bottom, _) => true,
            (_, ChainElement::Bottom) => false,
            (ChainElement::Level(m), ChainElement::Level(n)) => m >= n,
        }
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainElement::Bottom => f.write_str("⊥"),
            ChainElement::Level(0) => f.write_str("1"),
            ChainElement::Level(n) => write!(f, "a{n}"),
        }
    }
}

/// An eventually periodic subset of `{1, 2, 3, …}`, kept in normal form:
/// primitive period, shortest prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelSet {
    /// `prefix[i]` is membership of level `i + 1`
    prefix: Vec<bool>,
    period: Vec<bool>,
}

impl LevelSet {
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Result<Self, ChainError> {
        if period.is_empty() {
            return Err(ChainError::MalformedDescription("empty pattern".into()));
        }
        Ok(Self::normalized(prefix, period))
    }

    fn normalized(mut prefix: Vec<bool>, mut period: Vec<bool>) -> Self {
        let len = period.len();
        let d = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (0..len).all(|i| period[i] == period[i % d]))
            .expect("len divides itself");
        period.truncate(d);
        while prefix.last().is_some_and(|b| Some(b) == period.last()) {
            prefix.pop();
            period.rotate_right(1);
        }
        Self { prefix, period }
    }

    pub fn empty() -> Self {
        Self { prefix: Vec::new(), period: vec![false] }
    }

    pub fn all() -> Self {
        Self { prefix: Vec::new(), period: vec![true] }
    }

    pub fn from_finite<I: IntoIterator<Item = u64>>(levels: I) -> Self {
        let mut prefix = Vec::new();
        for n in levels {
            assert!(n >= 1, "levels start at 1");
            let i = (n - 1) as usize;
            if prefix.len() <= i {
                prefix.resize(i + 1, false);
            }
            prefix[i] = true;
        }
        Self::normalized(prefix, vec![false])
    }

    /// Levels `n ≥ offset` with `pattern[(n - offset) % len]`.
    pub fn tail(offset: u64, pattern: Vec<bool>) -> Result<Self, ChainError> {
        if offset == 0 {
            return Err(ChainError::MalformedDescription("tail offset must be at least 1".into()));
        }
        Self::new(vec![false; (offset - 1) as usize], pattern)
    }

    pub fn contains(&self, level: u64) -> bool {
        level >= 1 && self.bit((level - 1) as usize)
    }

    fn bit(&self, i: usize) -> bool {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.period == [false]
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    /// Members among the non-periodic part.
    pub fn prefix_members(&self) -> Vec<u64> {
        (0..self.prefix.len()).filter(|&i| self.prefix[i]).map(|i| i as u64 + 1).collect()
    }

    /// First level covered by the periodic part.
    pub fn offset(&self) -> u64 {
        self.prefix.len() as u64 + 1
    }

    pub fn pattern(&self) -> &[bool] {
        &self.period
    }

    /// Smallest level in the set.
    pub fn min(&self) -> Option<u64> {
        (0..self.prefix.len() + self.period.len())
            .find(|&i| self.bit(i))
            .map(|i| i as u64 + 1)
    }

    /// Largest level, for finite sets.
    pub fn max(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.prefix_members().last().copied()
    }

    fn zip(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let p = self.prefix.len().max(other.prefix.len());
        let q = self.period.len().lcm(&other.period.len());
        let prefix = (0..p).map(|i| op(self.bit(i), other.bit(i))).collect();
        let period = (p..p + q).map(|i| op(self.bit(i), other.bit(i))).collect();
        Self::normalized(prefix, period)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        Self::all().difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Levels `1..=n` that are members.
    pub fn up_to(&self, n: u64) -> Vec<u64> {
        (1..=n).filter(|&l| self.contains(l)).collect()
    }
}

impl fmt::Display for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let finite = self.prefix_members();
        if !finite.is_empty() {
            parts.push(format!("finite: {}", finite.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")));
        }
        if !self.is_finite() {
            let pattern: String = self.period.iter().map(|&b| if b { '1' } else { '0' }).collect();
            parts.push(format!("tail: offset={} pattern={pattern}", self.offset()));
        }
        f.write_str(&parts.join(" ; "))
    }
}

/// A described sublocale: the top, the given levels, and possibly `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainSublocale {
    levels: LevelSet,
    bottom: bool,
}

impl ChainSublocale {
    /// A subset of a chain is a sublocale iff it holds the top and is closed
    /// under meets, which for an infinite level set means `⊥` is present.
    pub fn new(levels: LevelSet, bottom: bool) -> Result<Self, ChainError> {
        if !levels.is_finite() && !bottom {
            return Err(ChainError::NotSublocale);
        }
        Ok(Self { levels, bottom })
    }

    /// `L` itself.
    pub fn whole() -> Self {
        Self { levels: LevelSet::all(), bottom: true }
    }

    /// `{1}`
    pub fn top_only() -> Self {
        Self { levels: LevelSet::empty(), bottom: false }
    }

    /// `𝔠(a) = ↑a`
    pub fn closed(a: ChainElement) -> Self {
        match a {
            ChainElement::Bottom => Self::whole(),
            ChainElement::Level(n) => Self {
                levels: LevelSet::from_finite(1..=n),
                bottom: false,
            },
        }
    }

    pub fn levels(&self) -> &LevelSet {
        &self.levels
    }

    pub fn has_bottom(&self) -> bool {
        self.bottom
    }

    pub fn contains(&self, e: ChainElement) -> bool {
        match e {
            ChainElement::Bottom => self.bottom,
            ChainElement::Level(0) => true,
            ChainElement::Level(n) => self.levels.contains(n),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.levels.is_subset(&other.levels) && (!self.bottom || other.bottom)
    }

    /// The covered primes of the sublocale as a chain of its own. A level
    /// has finitely many members above it, so it is always covered; `⊥` is
    /// covered iff it is not an infinite meet, i.e. the level set is finite.
    pub fn pt_d(&self) -> ChainPoints {
        ChainPoints {
            levels: self.levels.clone(),
            bottom: self.bottom && self.levels.is_finite(),
        }
    }

    /// All primes: every member except the top.
    pub fn pt(&self) -> ChainPoints {
        ChainPoints { levels: self.levels.clone(), bottom: self.bottom }
    }

    /// `pt_D(S) ⊆ pt_D(L)`, i.e. `⊥` is not a covered prime of `S`.
    pub fn is_d_sublocale(&self) -> bool {
        !self.pt_d().bottom
    }

    /// D-ness relative to an ambient sublocale containing `self`.
    pub fn is_d_in(&self, ambient: &Self) -> bool {
        !self.pt_d().bottom || ambient.pt_d().bottom
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self {
            levels: self.levels.intersection(&other.levels),
            bottom: self.bottom && other.bottom,
        }
    }

    /// The union is already meet-closed: an infinite side brings `⊥`.
    pub fn join(&self, other: &Self) -> Self {
        Self {
            levels: self.levels.union(&other.levels),
            bottom: self.bottom || other.bottom,
        }
    }

    /// `S ∖ T`, the least `R` with `S ⊆ T ∨ R`. Since joins are unions, `R`
    /// must hold the levels of `S` missing from `T`, `⊥` if `S` has it and
    /// `T` does not, and `⊥` again whenever those levels are infinite.
    pub fn difference(&self, other: &Self) -> Self {
        let levels = self.levels.difference(&other.levels);
        let bottom = (self.bottom && !other.bottom) || !levels.is_finite();
        Self { levels, bottom }
    }

    /// The largest D-sublocale inside `self`.
    pub fn d_interior(&self) -> Self {
        Self {
            levels: self.levels.clone(),
            bottom: self.bottom && !self.levels.is_finite(),
        }
    }

    /// `ν_S(a)`, the least member above `a`.
    pub fn reflect(&self, a: ChainElement) -> ChainElement {
        match a {
            ChainElement::Bottom if self.bottom => ChainElement::Bottom,
            ChainElement::Bottom => match self.levels.max() {
                Some(n) => ChainElement::Level(n),
                None => ChainElement::TOP,
            },
            ChainElement::Level(n) => (1..=n)
                .rev()
                .find(|&m| self.levels.contains(m))
                .map_or(ChainElement::TOP, ChainElement::Level),
        }
    }

    /// The truncation of `self` as a sublocale of a [`truncated_chain`].
    pub fn truncate(&self, frame: &FiniteFrame) -> Sublocale {
        let n = frame.size() as u64 - 2;
        let mut members = ElementSet::empty(frame.size());
        members.insert(truncated_id(n, ChainElement::TOP));
        if self.bottom {
            members.insert(truncated_id(n, ChainElement::Bottom));
        }
        for l in self.levels.up_to(n) {
            members.insert(truncated_id(n, ChainElement::Level(l)));
        }
        Sublocale::new(frame, members).expect("finite subsets with top are sublocales of a chain")
    }
}

impl fmt::Display for ChainSublocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels = self.levels.to_string();
        if !levels.is_empty() {
            write!(f, "{levels} ; ")?;
        }
        write!(f, "bottom: {}", if self.bottom { "yes" } else { "no" })
    }
}

impl FromStr for ChainSublocale {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| ChainError::MalformedDescription(m);
        let mut levels = LevelSet::empty();
        let mut bottom = false;
        let mut seen = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `key: value`, got `{part}`")))?;
            let key = key.trim();
            let value = value.trim();
            if seen.contains(&key) {
                return Err(bad(format!("duplicate `{key}`")));
            }
            seen.push(key);
            match key {
                "finite" => {
                    let mut ns = Vec::new();
                    for tok in value.split_whitespace() {
                        let n: u64 = tok.parse().map_err(|_| bad(format!("bad level `{tok}`")))?;
                        if n == 0 {
                            return Err(bad("level 0 is the top, which is always present".into()));
                        }
                        ns.push(n);
                    }
                    levels = levels.union(&LevelSet::from_finite(ns));
                }
                "tail" if value == "none" => {}
                "tail" => {
                    let mut offset = None;
                    let mut pattern = None;
                    for tok in value.split_whitespace() {
                        match tok.split_once('=') {
                            Some(("offset", v)) => {
                                offset = Some(v.parse::<u64>().map_err(|_| bad(format!("bad offset `{v}`")))?)
                            }
                            Some(("pattern", v)) => {
                                let bits = v
                                    .chars()
                                    .map(|c| match c {
                                        '0' => Ok(false),
                                        '1' => Ok(true),
                                        _ => Err(bad(format!("bad pattern `{v}`"))),
                                    })
                                    .collect::<Result<Vec<_>, _>>()?;
                                pattern = Some(bits);
                            }
                            _ => return Err(bad(format!("unexpected `{tok}` in tail"))),
                        }
                    }
                    let offset = offset.ok_or_else(|| bad("tail needs offset=".into()))?;
                    let pattern = pattern.ok_or_else(|| bad("tail needs pattern=".into()))?;
                    levels = levels.union(&LevelSet::tail(offset, pattern)?);
                }
                "bottom" => {
                    bottom = match value {
                        "yes" => true,
                        "no" => false,
                        _ => return Err(bad(format!("bottom must be yes or no, got `{value}`"))),
                    }
                }
                _ => return Err(bad(format!("unknown key `{key}`"))),
            }
        }
        Self::new(levels, bottom)
    }
}

/// A set of primes of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPoints {
    pub levels: LevelSet,
    pub bottom: bool,
}

impl ChainPoints {
    pub fn is_empty(&self) -> bool {
        self.levels.is_empty() && !self.bottom
    }

    pub fn contains(&self, e: ChainElement) -> bool {
        match e {
            ChainElement::Bottom => self.bottom,
            ChainElement::Level(0) => false,
            ChainElement::Level(n) => self.levels.contains(n),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.levels.is_subset(&other.levels) && (!self.bottom || other.bottom)
    }

    /// Meet of the points, `None` meaning the empty meet `1`.
    pub fn meet(&self) -> Option<ChainElement> {
        if self.bottom || !self.levels.is_finite() {
            Some(ChainElement::Bottom)
        } else {
            self.levels.max().map(ChainElement::Level)
        }
    }
}

impl fmt::Display for ChainPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = Vec::new();
        if self.levels.is_finite() {
            items.extend(self.levels.prefix_members().iter().map(|n| format!("a{n}")));
        } else {
            items.push(format!("aₙ for n in [{}]", self.levels));
        }
        if self.bottom {
            items.push("⊥".into());
        }
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// The finite chain `⊥ < a_n < … < a₁ < 1`, ids `0..=n+1`.
pub fn truncated_chain(n: u64) -> FiniteFrame {
    FiniteFrame::chain(n as usize + 2)
}

pub fn truncated_id(n: u64, e: ChainElement) -> usize {
    match e {
        ChainElement::Bottom => 0,
        ChainElement::Level(l) => {
            assert!(l <= n, "level beyond truncation depth");
            (n + 1 - l) as usize
        }
    }
}

/// The surjection `L ↠ S` lifted to D-sublocales:
/// `T ↦ largest D-sublocale of S inside T ∩ S`.
#[derive(Debug, Clone)]
pub struct ChainLift {
    codomain: ChainSublocale,
}

pub fn lift_surjection(c: &ChainSublocale) -> Result<ChainLift, ChainError> {
    if !c.is_d_sublocale() {
        return Err(ChainError::NotLiftable(c.clone()));
    }
    Ok(ChainLift { codomain: c.clone() })
}

impl ChainLift {
    pub fn codomain(&self) -> &ChainSublocale {
        &self.codomain
    }

    pub fn apply(&self, t: &ChainSublocale) -> ChainSublocale {
        let m = t.intersect(&self.codomain);
        if m.is_d_in(&self.codomain) {
            m
        } else {
            ChainSublocale { bottom: false, ..m }
        }
    }

    /// `h(𝔠(a)) = 𝔠_S(ν_S(a))`, where `𝔠_S(b) = S ∩ ↑b`.
    pub fn square_commutes_at(&self, a: ChainElement) -> bool {
        let c = &self.codomain;
        let closed_in_s = ChainSublocale::closed(c.reflect(a)).intersect(c);
        self.apply(&ChainSublocale::closed(a)) == closed_in_s
    }
}

/// Everything the `remark` walk-through prints.
#[derive(Debug, Clone)]
pub struct RemarkReport {
    pub s: ChainSublocale,
    pub t: ChainSublocale,
    pub pt_d_s: ChainPoints,
    pub pt_d_t: ChainPoints,
    pub is_d_s: bool,
    pub is_d_t: bool,
    pub meet: ChainSublocale,
    pub pt_d_meet: ChainPoints,
    pub pt_d_whole: ChainPoints,
    pub meet_is_d: bool,
    /// `(N, agrees)` for each truncation depth checked
    pub truncations: Vec<(u64, bool)>,
}

pub const REMARK_S: &str = "tail: offset=2 pattern=10 ; bottom: yes";
pub const REMARK_T: &str = "tail: offset=1 pattern=10 ; bottom: yes";
pub const TRUNCATION_DEPTHS: [u64; 3] = [16, 32, 64];

pub fn remark(s: &ChainSublocale, t: &ChainSublocale, depths: &[u64]) -> RemarkReport {
    let meet = s.intersect(t);
    let truncations = depths
        .iter()
        .map(|&n| (n, truncation_agrees(&[s, t], n)))
        .collect();
    RemarkReport {
        pt_d_s: s.pt_d(),
        pt_d_t: t.pt_d(),
        is_d_s: s.is_d_sublocale(),
        is_d_t: t.is_d_sublocale(),
        pt_d_meet: meet.pt_d(),
        pt_d_whole: ChainSublocale::whole().pt_d(),
        meet_is_d: meet.is_d_sublocale(),
        meet,
        s: s.clone(),
        t: t.clone(),
        truncations,
    }
}

/// Computes intersections, joins and covered primes of the operands in the
/// truncated finite chain and compares with the symbolic answers. `⊥` is
/// compared for the set operations only: truncation makes every member
/// covered, so covered-prime agreement is checked on levels.
pub fn truncation_agrees(operands: &[&ChainSublocale], n: u64) -> bool {
    let frame = truncated_chain(n);
    let same = |sym: &ChainSublocale, fin: &Sublocale| {
        sym.truncate(&frame).members() == fin.members()
    };
    let points_agree = |sym: &ChainSublocale| {
        let fin = crate::structures::pt_d_set(&sym.truncate(&frame));
        let p = sym.pt_d();
        (1..=n).all(|l| fin.contains(truncated_id(n, ChainElement::Level(l))) == p.levels.contains(l))
    };
    operands.iter().all(|s| points_agree(s))
        && operands.iter().enumerate().all(|(i, a)| {
            operands[i..].iter().all(|b| {
                let (fa, fb) = (a.truncate(&frame), b.truncate(&frame));
                let meet = fa.meet(&fb).expect("same frame");
                let join = fa.join(&fb).expect("same frame");
                let sym_meet = a.intersect(b);
                same(&sym_meet, &meet)
                    && same(&a.join(b), &join)
                    && points_agree(&sym_meet)
            })
        })
}

impl fmt::Display for RemarkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "L = chain 1 > a1 > a2 > ... > ⊥")?;
        writeln!(f, "pt_D(L) = {}", self.pt_d_whole)?;
        writeln!(f, "⊥ in pt_D(L): {}", yn(self.pt_d_whole.bottom))?;
        writeln!(f, "S = {}", self.s)?;
        writeln!(f, "pt_D(S) = {}", self.pt_d_s)?;
        writeln!(f, "S is a D-sublocale: {}", yn(self.is_d_s))?;
        writeln!(f, "T = {}", self.t)?;
        writeln!(f, "pt_D(T) = {}", self.pt_d_t)?;
        writeln!(f, "T is a D-sublocale: {}", yn(self.is_d_t))?;
        writeln!(f, "S∩T = {}", self.meet)?;
        writeln!(f, "pt_D(S∩T) = {}", self.pt_d_meet)?;
        writeln!(f, "S∩T is a D-sublocale: {}", yn(self.meet_is_d))?;
        for (n, ok) in &self.truncations {
            writeln!(f, "truncation N={n}: {}", if *ok { "agrees" } else { "DISAGREES" })?;
        }
        let verdict = match (self.is_d_s && self.is_d_t, self.meet_is_d) {
            (true, false) => "S∩T is not a D-sublocale",
            (true, true) => "S∩T is a D-sublocale",
            (false, _) => "S and T are not both D-sublocales",
        };
        write!(f, "verdict: {verdict}")
    }
}
