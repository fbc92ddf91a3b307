//! Finite, proof-irrelevant possible-world semantics for the propositional
//! logics behind the four calculi.
//!
//! Worlds are indices below `num_worlds`; relations are successor bitmasks,
//! so everything quantifies by mask arithmetic. A frame carries an
//! intuitionistic preorder `ri` and a modal relation `rm` subject to
//! inclusion and forward confluence; the logic classes ask `rm` to be
//! nothing more (`sl`), reflexive (`rl`), transitive (`jl`), or both
//! (`ll`).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Propositional formulas. `Circ` is the globally-quantified presentation
/// of the diamond and `Box_` the derived box; both exist for the
/// equivalence experiments and are otherwise optional.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Dia(Box<Formula>),
    Circ(Box<Formula>),
    Box_(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(String::from(name))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Box::new(a))
    }

    pub fn circ(a: Formula) -> Formula {
        Formula::Circ(Box::new(a))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box_(Box::new(a))
    }

    /// Strength: `A * <>B -> <>(A * B)`.
    pub fn axiom_s(a: Formula, b: Formula) -> Formula {
        Formula::imp(
            Formula::and(a.clone(), Formula::dia(b.clone())),
            Formula::dia(Formula::and(a, b)),
        )
    }

    /// Return: `A -> <>A`.
    pub fn axiom_r(a: Formula) -> Formula {
        Formula::imp(a.clone(), Formula::dia(a))
    }

    /// Join: `<><>A -> <>A`.
    pub fn axiom_j(a: Formula) -> Formula {
        Formula::imp(Formula::dia(Formula::dia(a.clone())), Formula::dia(a))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // -> loosest (0), * (1), prefixes (2), atoms (3).
        fn go(a: &Formula, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let level = match a {
                Formula::Imp(..) => 0,
                Formula::And(..) => 1,
                Formula::Dia(_) | Formula::Circ(_) | Formula::Box_(_) => 2,
                Formula::Atom(_) | Formula::Top => 3,
            };
            let paren = level < min;
            if paren {
                f.write_str("(")?;
            }
            match a {
                Formula::Atom(p) => f.write_str(p)?,
                Formula::Top => f.write_str("1")?,
                Formula::And(l, r) => {
                    go(l, 2, f)?;
                    f.write_str(" * ")?;
                    go(r, 1, f)?;
                }
                Formula::Imp(l, r) => {
                    go(l, 1, f)?;
                    f.write_str(" -> ")?;
                    go(r, 0, f)?;
                }
                Formula::Dia(x) => {
                    f.write_str("<>")?;
                    go(x, 2, f)?;
                }
                Formula::Circ(x) => {
                    f.write_str("o ")?;
                    go(x, 2, f)?;
                }
                Formula::Box_(x) => {
                    f.write_str("[]")?;
                    go(x, 2, f)?;
                }
            }
            if paren {
                f.write_str(")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// The four frame classes, ordered by what they require of `rm`.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum FrameClass {
    Sl,
    Rl,
    Jl,
    Ll,
}

impl FrameClass {
    pub const ALL: [FrameClass; 4] = [FrameClass::Sl, FrameClass::Rl, FrameClass::Jl, FrameClass::Ll];

    pub fn requires_rm_reflexive(self) -> bool {
        matches!(self, FrameClass::Rl | FrameClass::Ll)
    }

    pub fn requires_rm_transitive(self) -> bool {
        matches!(self, FrameClass::Jl | FrameClass::Ll)
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::Sl => "sl",
            FrameClass::Rl => "rl",
            FrameClass::Jl => "jl",
            FrameClass::Ll => "ll",
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite frame: worlds `0..num_worlds`, relations as successor masks
/// (`ri[w]` has bit `v` set when `w Ri v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFrame {
    pub num_worlds: usize,
    pub ri: Vec<u32>,
    pub rm: Vec<u32>,
}

impl FiniteFrame {
    pub fn new(num_worlds: usize, ri: Vec<u32>, rm: Vec<u32>) -> FiniteFrame {
        assert!(num_worlds <= 32, "world masks are 32 bits wide");
        assert_eq!(ri.len(), num_worlds);
        assert_eq!(rm.len(), num_worlds);
        FiniteFrame { num_worlds, ri, rm }
    }

    pub fn full_mask(&self) -> u32 {
        if self.num_worlds == 32 {
            u32::MAX
        } else {
            (1u32 << self.num_worlds) - 1
        }
    }

    pub fn ri_has(&self, w: usize, v: usize) -> bool {
        self.ri[w] & (1 << v) != 0
    }

    pub fn rm_has(&self, w: usize, v: usize) -> bool {
        self.rm[w] & (1 << v) != 0
    }

    /// Is `mask` closed under `ri`-successors?
    pub fn is_hereditary(&self, mask: u32) -> bool {
        (0..self.num_worlds).all(|w| mask & (1 << w) == 0 || self.ri[w] & !mask == 0)
    }
}

/// A violated frame condition, with a witnessing tuple of worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RiNotReflexive { w: usize },
    RiNotTransitive { w: usize, v: usize, u: usize },
    Inclusion { w: usize, v: usize },
    /// `w Ri wp` and `w Rm v`, but no `v'` with `wp Rm v'` and `v Ri v'`.
    ForwardConfluence { w: usize, wp: usize, v: usize },
    RmNotReflexive { w: usize },
    RmNotTransitive { w: usize, v: usize, u: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RiNotReflexive { w } => write!(f, "Ri is not reflexive at world {w}"),
            Violation::RiNotTransitive { w, v, u } => {
                write!(f, "Ri is not transitive: {w} Ri {v} Ri {u} but not {w} Ri {u}")
            }
            Violation::Inclusion { w, v } => {
                write!(f, "inclusion fails: {w} Rm {v} but not {w} Ri {v}")
            }
            Violation::ForwardConfluence { w, wp, v } => write!(
                f,
                "forward confluence fails at {w} Ri {wp}, {w} Rm {v}: no v' with {wp} Rm v' and {v} Ri v'"
            ),
            Violation::RmNotReflexive { w } => write!(f, "Rm is not reflexive at world {w}"),
            Violation::RmNotTransitive { w, v, u } => {
                write!(f, "Rm is not transitive: {w} Rm {v} Rm {u} but not {w} Rm {u}")
            }
        }
    }
}

/// Everything [`check_frame`] found wrong; empty means the frame belongs to
/// the class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every condition the class puts on the frame, listing all
/// violations rather than stopping at the first.
pub fn check_frame(frame: &FiniteFrame, class: FrameClass) -> Report {
    let n = frame.num_worlds;
    let mut violations = Vec::new();
    for w in 0..n {
        if !frame.ri_has(w, w) {
            violations.push(Violation::RiNotReflexive { w });
        }
    }
    for w in 0..n {
        for v in 0..n {
            if !frame.ri_has(w, v) {
                continue;
            }
            // Transitivity: everything reachable from v must be reachable
            // from w.
            let missing = frame.ri[v] & !frame.ri[w];
            for u in 0..n {
                if missing & (1 << u) != 0 {
                    violations.push(Violation::RiNotTransitive { w, v, u });
                }
            }
        }
    }
    for w in 0..n {
        let outside = frame.rm[w] & !frame.ri[w];
        for v in 0..n {
            if outside & (1 << v) != 0 {
                violations.push(Violation::Inclusion { w, v });
            }
        }
    }
    for w in 0..n {
        for wp in 0..n {
            if !frame.ri_has(w, wp) {
                continue;
            }
            for v in 0..n {
                if frame.rm_has(w, v) && frame.rm[wp] & frame.ri[v] == 0 {
                    violations.push(Violation::ForwardConfluence { w, wp, v });
                }
            }
        }
    }
    if class.requires_rm_reflexive() {
        for w in 0..n {
            if !frame.rm_has(w, w) {
                violations.push(Violation::RmNotReflexive { w });
            }
        }
    }
    if class.requires_rm_transitive() {
        for w in 0..n {
            for v in 0..n {
                if !frame.rm_has(w, v) {
                    continue;
                }
                let missing = frame.rm[v] & !frame.rm[w];
                for u in 0..n {
                    if missing & (1 << u) != 0 {
                        violations.push(Violation::RmNotTransitive { w, v, u });
                    }
                }
            }
        }
    }
    Report { violations }
}

/// A frame plus a valuation: for each atom, the mask of worlds where it
/// holds. Valuations are expected hereditary; [`FiniteModel::hereditary_ok`]
/// checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    pub frame: FiniteFrame,
    pub valuation: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAtom(pub String);

impl fmt::Display for UnknownAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "valuation has no atom `{}`", self.0)
    }
}

impl FiniteModel {
    pub fn hereditary_ok(&self) -> bool {
        self.valuation.values().all(|mask| self.frame.is_hereditary(*mask))
    }

    /// The mask of worlds satisfying `a`.
    pub fn truth_mask(&self, a: &Formula) -> Result<u32, UnknownAtom> {
        let frame = &self.frame;
        let n = frame.num_worlds;
        Ok(match a {
            Formula::Atom(p) => {
                *self.valuation.get(p).ok_or_else(|| UnknownAtom(p.clone()))?
            }
            Formula::Top => frame.full_mask(),
            Formula::And(l, r) => self.truth_mask(l)? & self.truth_mask(r)?,
            Formula::Imp(l, r) => {
                let (tl, tr) = (self.truth_mask(l)?, self.truth_mask(r)?);
                let mut out = 0;
                for w in 0..n {
                    if frame.ri[w] & tl & !tr == 0 {
                        out |= 1 << w;
                    }
                }
                out
            }
            Formula::Dia(x) => {
                let tx = self.truth_mask(x)?;
                let mut out = 0;
                for w in 0..n {
                    if frame.rm[w] & tx != 0 {
                        out |= 1 << w;
                    }
                }
                out
            }
            Formula::Circ(x) => {
                let tx = self.truth_mask(x)?;
                let mut out = 0;
                for w in 0..n {
                    if (0..n).all(|wp| !frame.ri_has(w, wp) || frame.rm[wp] & tx != 0) {
                        out |= 1 << w;
                    }
                }
                out
            }
            Formula::Box_(x) => {
                let tx = self.truth_mask(x)?;
                let mut out = 0;
                for w in 0..n {
                    if (0..n).all(|wp| !frame.ri_has(w, wp) || frame.rm[wp] & !tx == 0) {
                        out |= 1 << w;
                    }
                }
                out
            }
        })
    }
}

/// Does world `w` satisfy `a` in the model?
pub fn satisfies(model: &FiniteModel, w: usize, a: &Formula) -> Result<bool, UnknownAtom> {
    Ok(model.truth_mask(a)? & (1 << w) != 0)
}

/// Does every world satisfy `a`?
pub fn valid_in_model(model: &FiniteModel, a: &Formula) -> Result<bool, UnknownAtom> {
    Ok(model.truth_mask(a)? == model.frame.full_mask())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundExceeded {
    pub requested: usize,
    pub max: usize,
}

impl fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frame enumeration is capped at {} worlds, requested {}", self.max, self.requested)
    }
}

/// Enumeration guard: raw enumeration over labeled worlds is exponential.
pub const MAX_ENUM_WORLDS: usize = 4;

/// All frames of the class with between 1 and `max_worlds` labeled worlds,
/// in a deterministic order. No isomorphism reduction is attempted.
pub fn enumerate_frames(
    max_worlds: usize,
    class: FrameClass,
) -> Result<Vec<FiniteFrame>, BoundExceeded> {
    if max_worlds > MAX_ENUM_WORLDS {
        return Err(BoundExceeded { requested: max_worlds, max: MAX_ENUM_WORLDS });
    }
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        for ri in preorders(n) {
            enumerate_rm(n, &ri, class, &mut out);
        }
    }
    Ok(out)
}

/// All reflexive-transitive relations on `n` labeled worlds.
fn preorders(n: usize) -> Vec<Vec<u32>> {
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|w| (0..n).filter(move |v| *v != w).map(move |v| (w, v)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << off_diag.len()) {
        let mut ri: Vec<u32> = (0..n).map(|w| 1 << w).collect();
        for (idx, (w, v)) in off_diag.iter().enumerate() {
            if bits & (1 << idx) != 0 {
                ri[*w] |= 1 << *v;
            }
        }
        let transitive = (0..n).all(|w| {
            (0..n).all(|v| ri[w] & (1 << v) == 0 || ri[v] & !ri[w] == 0)
        });
        if transitive {
            out.push(ri);
        }
    }
    out
}

fn enumerate_rm(n: usize, ri: &[u32], class: FrameClass, out: &mut Vec<FiniteFrame>) {
    // Candidate rm pairs are exactly the ri pairs (inclusion by
    // construction).
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|w| (0..n).filter(move |v| ri[w] & (1 << *v) != 0).map(move |v| (w, v)))
        .collect();
    for bits in 0u32..(1 << pairs.len()) {
        let mut rm = alloc::vec![0u32; n];
        for (idx, (w, v)) in pairs.iter().enumerate() {
            if bits & (1 << idx) != 0 {
                rm[*w] |= 1 << *v;
            }
        }
        let frame = FiniteFrame { num_worlds: n, ri: ri.to_vec(), rm };
        if check_frame(&frame, class).is_ok() {
            out.push(frame);
        }
    }
}

/// All hereditary valuations of `num_atoms` atoms over the frame, each an
/// assignment of one mask per atom.
pub fn hereditary_valuations(frame: &FiniteFrame, num_atoms: usize) -> Vec<Vec<u32>> {
    let mut closed: Vec<u32> = Vec::new();
    for mask in 0..=frame.full_mask() {
        if frame.is_hereditary(mask) {
            closed.push(mask);
        }
    }
    let mut out: Vec<Vec<u32>> = alloc::vec![Vec::new()];
    for _ in 0..num_atoms {
        let mut next = Vec::with_capacity(out.len() * closed.len());
        for partial in &out {
            for mask in &closed {
                let mut assignment = partial.clone();
                assignment.push(*mask);
                next.push(assignment);
            }
        }
        out = next;
    }
    out
}

/// Compact formula store for bulk evaluation: nodes are hash-consed, child
/// indices always precede parents, and one pass computes the truth mask of
/// every node for a given frame and valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Atom(u8),
    Top,
    And(u32, u32),
    Imp(u32, u32),
    Dia(u32),
    Circ(u32),
    Box_(u32),
}

#[derive(Debug, Default)]
pub struct FormulaArena {
    nodes: Vec<Node>,
    index: BTreeMap<Node, u32>,
}

impl FormulaArena {
    pub fn new() -> FormulaArena {
        FormulaArena::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn add(&mut self, node: Node) -> u32 {
        if let Some(id) = self.index.get(&node) {
            return *id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    /// Truth masks for every node, children first.
    pub fn eval(&self, frame: &FiniteFrame, valuation: &[u32]) -> Vec<u32> {
        let n = frame.num_worlds;
        let full = frame.full_mask();
        let mut truth = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mask = match node {
                Node::Atom(i) => valuation[*i as usize],
                Node::Top => full,
                Node::And(a, b) => truth[*a as usize] & truth[*b as usize],
                Node::Imp(a, b) => {
                    let (ta, tb): (u32, u32) = (truth[*a as usize], truth[*b as usize]);
                    let mut out = 0;
                    for w in 0..n {
                        if frame.ri[w] & ta & !tb == 0 {
                            out |= 1 << w;
                        }
                    }
                    out
                }
                Node::Dia(a) => {
                    let ta: u32 = truth[*a as usize];
                    let mut out = 0;
                    for w in 0..n {
                        if frame.rm[w] & ta != 0 {
                            out |= 1 << w;
                        }
                    }
                    out
                }
                Node::Circ(a) => {
                    let ta: u32 = truth[*a as usize];
                    let mut out = 0;
                    for w in 0..n {
                        let ok = (0..n)
                            .all(|wp| !frame.ri_has(w, wp) || frame.rm[wp] & ta != 0);
                        if ok {
                            out |= 1 << w;
                        }
                    }
                    out
                }
                Node::Box_(a) => {
                    let ta: u32 = truth[*a as usize];
                    let mut out = 0;
                    for w in 0..n {
                        let ok = (0..n)
                            .all(|wp| !frame.ri_has(w, wp) || frame.rm[wp] & !ta == 0);
                        if ok {
                            out |= 1 << w;
                        }
                    }
                    out
                }
            };
            truth.push(mask);
        }
        truth
    }

    /// Ids of all formulas over `num_atoms` atoms and the `Top`/`And`/`Imp`/
    /// `Dia` connectives with nesting depth at most `depth`.
    pub fn formulas_to_depth(&mut self, num_atoms: u8, depth: usize) -> Vec<u32> {
        let mut layers: Vec<Vec<u32>> = Vec::new();
        let mut leaves: Vec<u32> = (0..num_atoms).map(|i| self.add(Node::Atom(i))).collect();
        leaves.push(self.add(Node::Top));
        layers.push(leaves);
        for _ in 1..depth {
            let below: Vec<u32> = layers.iter().flatten().copied().collect();
            let mut layer = Vec::new();
            for &a in &below {
                for &b in &below {
                    layer.push(self.add(Node::And(a, b)));
                    layer.push(self.add(Node::Imp(a, b)));
                }
            }
            for &a in &below {
                layer.push(self.add(Node::Dia(a)));
            }
            layers.push(layer);
        }
        let mut all: Vec<u32> = layers.into_iter().flatten().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_world(rm_refl: bool) -> FiniteFrame {
        FiniteFrame::new(1, alloc::vec![1], alloc::vec![if rm_refl { 1 } else { 0 }])
    }

    #[test]
    fn check_frame_accepts_and_reports() {
        assert!(check_frame(&single_world(false), FrameClass::Sl).is_ok());
        let report = check_frame(&single_world(false), FrameClass::Rl);
        assert_eq!(report.violations, alloc::vec![Violation::RmNotReflexive { w: 0 }]);

        // Two worlds, rm not included in ri.
        let frame = FiniteFrame::new(2, alloc::vec![0b01, 0b10], alloc::vec![0b10, 0]);
        let report = check_frame(&frame, FrameClass::Sl);
        assert!(report.violations.contains(&Violation::Inclusion { w: 0, v: 1 }));
    }

    #[test]
    fn forward_confluence_violation_is_caught() {
        // w0 Ri w1, w0 Rm w0, but w1 has no Rm successor.
        let frame = FiniteFrame::new(2, alloc::vec![0b11, 0b10], alloc::vec![0b01, 0]);
        let report = check_frame(&frame, FrameClass::Sl);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ForwardConfluence { w: 0, wp: 1, .. })));
    }

    #[test]
    fn satisfaction_clauses() {
        let mut valuation = BTreeMap::new();
        valuation.insert(String::from("p"), 1u32);
        let model = FiniteModel { frame: single_world(false), valuation };
        assert_eq!(satisfies(&model, 0, &Formula::Top), Ok(true));
        // No modal successor: <>p fails.
        assert_eq!(satisfies(&model, 0, &Formula::dia(Formula::atom("p"))), Ok(false));
        assert_eq!(
            satisfies(&model, 0, &Formula::atom("q")),
            Err(UnknownAtom(String::from("q")))
        );

        let mut valuation = BTreeMap::new();
        valuation.insert(String::from("p"), 1u32);
        let model = FiniteModel { frame: single_world(true), valuation };
        // p -> <>p holds when w Rm w and p holds at w.
        let f = Formula::imp(Formula::atom("p"), Formula::dia(Formula::atom("p")));
        assert_eq!(satisfies(&model, 0, &f), Ok(true));
        assert_eq!(valid_in_model(&model, &f), Ok(true));
    }

    #[test]
    fn one_world_frame_counts() {
        assert_eq!(enumerate_frames(1, FrameClass::Sl).unwrap().len(), 2);
        assert_eq!(enumerate_frames(1, FrameClass::Rl).unwrap().len(), 1);
        assert_eq!(enumerate_frames(1, FrameClass::Jl).unwrap().len(), 2);
        assert_eq!(enumerate_frames(1, FrameClass::Ll).unwrap().len(), 1);
        assert_eq!(enumerate_frames(0, FrameClass::Sl).unwrap().len(), 0);
        assert!(enumerate_frames(5, FrameClass::Sl).is_err());
    }

    #[test]
    fn enumerated_frames_pass_their_class_check() {
        for class in FrameClass::ALL {
            for frame in enumerate_frames(2, class).unwrap() {
                assert!(check_frame(&frame, class).is_ok());
            }
        }
    }

    #[test]
    fn hereditary_valuations_are_up_closed() {
        let frame = FiniteFrame::new(2, alloc::vec![0b11, 0b10], alloc::vec![0, 0]);
        let vals = hereditary_valuations(&frame, 1);
        // Up-closed masks of the chain 0 <= 1: {}, {1}, {0,1}.
        let masks: Vec<u32> = vals.into_iter().map(|v| v[0]).collect();
        assert_eq!(masks, alloc::vec![0b00, 0b10, 0b11]);
    }

    #[test]
    fn arena_matches_tree_evaluation() {
        let frame = FiniteFrame::new(2, alloc::vec![0b11, 0b10], alloc::vec![0b10, 0b10]);
        let mut valuation = BTreeMap::new();
        valuation.insert(String::from("p"), 0b10u32);
        valuation.insert(String::from("q"), 0b11u32);
        let model = FiniteModel { frame: frame.clone(), valuation };

        let mut arena = FormulaArena::new();
        let p = arena.add(Node::Atom(0));
        let q = arena.add(Node::Atom(1));
        let imp = arena.add(Node::Imp(p, q));
        let dia = arena.add(Node::Dia(imp));
        let truth = arena.eval(&frame, &[0b10, 0b11]);

        let tree = Formula::dia(Formula::imp(Formula::atom("p"), Formula::atom("q")));
        assert_eq!(truth[dia as usize], model.truth_mask(&tree).unwrap());
    }

    #[test]
    fn formula_count_at_depth_three() {
        let mut arena = FormulaArena::new();
        let ids = arena.formulas_to_depth(2, 3);
        // 3 leaves, then 2 * 24^2 binary nodes and 24 diamonds over the
        // 24 formulas of depth <= 2.
        assert_eq!(ids.len(), 3 + 2 * 24 * 24 + 24);
    }
}
