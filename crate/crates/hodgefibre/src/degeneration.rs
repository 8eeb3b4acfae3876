//! One-parameter degenerations with normal crossing special fibre: the
//! stratification data model, motivic nearby and vanishing fibres, the
//! open-strata (Mobius-inverted) form, the blow-up move that leaves the
//! nearby fibre invariant, and extraction of middle-degree Hodge numbers.
//!
//! Strata classes are user inputs; nothing here computes intersections from
//! equations. A stratification records, for each nonempty subset `J` of
//! components, the class `[D_J]` of the cover stratum (and optionally `[E_J]`
//! of the reduced stratum). Multiplicities are used only to decide whether
//! reduced strata may default to cover strata and to assign the multiplicity
//! of an exceptional component, which is all the invariance proof needs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use thiserror::Error;

use crate::classes::{ClassError, ClassExpr};
use crate::hodge::{HodgeError, HodgeStructure};
use crate::ring::{lefschetz_power, projective_space, torus, BidegreePolynomial, Exponent};

/// A subset of component ids, the key of a stratum.
pub type ComponentSet = BTreeSet<String>;

/// An irreducible component of the special fibre with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub multiplicity: u64,
}

impl Component {
    pub fn new(id: impl Into<String>, multiplicity: u64) -> Self {
        Component {
            id: id.into(),
            multiplicity,
        }
    }
}

/// Which of the two strata tables a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrataKind {
    Cover,
    Reduced,
}

impl fmt::Display for StrataKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrataKind::Cover => "cover (D)",
            StrataKind::Reduced => "reduced (E)",
        })
    }
}

/// A single violated stratification invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("duplicate component id '{id}'")]
    DuplicateComponent { id: String },
    #[error("component '{id}' has multiplicity 0; multiplicities must be positive")]
    ZeroMultiplicity { id: String },
    #[error("{kind} stratum with empty subset")]
    EmptySubset { kind: StrataKind },
    #[error("{kind} stratum {subset:?} references unknown component '{id}'")]
    UnknownComponent {
        kind: StrataKind,
        subset: Vec<String>,
        id: String,
    },
    #[error("{kind} stratum {subset:?}: {source}")]
    ClassEvaluation {
        kind: StrataKind,
        subset: Vec<String>,
        source: ClassError,
    },
    #[error("{kind} stratum {subset:?} is nonzero but its face {missing:?} has class 0")]
    Closure {
        kind: StrataKind,
        subset: Vec<String>,
        missing: Vec<String>,
    },
}

/// Every violation found while constructing or re-checking a stratification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid stratification ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  - {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Failure of a stratification operation on otherwise valid data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error("stratum level must be at least 1")]
    LevelOutOfRange,
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("unknown component id '{0}'")]
    UnknownComponent(String),
    #[error("some multiplicity exceeds 1 and no reduced strata were given; the special fibre class is undetermined")]
    MissingReducedStrata,
}

/// Invalid blow-up center.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("center must lie in at least one component")]
    EmptyContainment,
    #[error("center references unknown component '{0}'")]
    UnknownComponent(String),
    #[error("codimension {codimension} is smaller than the {containing} components containing the center")]
    CodimensionTooSmall { codimension: i64, containing: usize },
    #[error("exceptional component id '{0}' is already taken")]
    NewIdTaken(String),
    #[error("cover subset {subset:?} must be disjoint from the containing components")]
    CoverMeetsCenterComponents { subset: Vec<String> },
    #[error("cover {subset:?}: {source}")]
    CoverClass {
        subset: Vec<String>,
        source: ClassError,
    },
}

/// Failure of [`middle_hodge_numbers`]: the concentration hypothesis is
/// inconsistent with the given nearby-fibre polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MiddleHodgeError {
    #[error("coefficient {coefficient} of u^{p}*v^{q} is not a dimension")]
    NotADimension {
        p: Exponent,
        q: Exponent,
        coefficient: BigInt,
    },
    #[error(transparent)]
    Hodge(#[from] HodgeError),
}

/// A blow-up move: the center `Z` is described by the components containing
/// it, its codimension in the total space, and the classes of its closed
/// intersections with the strata it meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCenter {
    /// Ids of the components `E_i` with `Z` contained in `E_i`; nonempty.
    pub contained_in: Vec<String>,
    /// Codimension of `Z` in the total space; at least `contained_in.len()`.
    pub codimension: i64,
    /// `B -> [W_B]` where `W_B` is the closed part of `Z` lying in the
    /// components `B` disjoint from `contained_in`; `B = {}` carries `[Z]`
    /// itself. Absent subsets mean class 0.
    pub covers: Vec<(Vec<String>, ClassExpr)>,
    /// Fresh id for the exceptional component.
    pub new_id: String,
}

/// A normal crossing degeneration: components with multiplicities and the
/// classes of the closed strata, all evaluated to polynomials up front.
/// Zero classes are never stored, so "absent" and "zero" coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    components: Vec<Component>,
    cover: BTreeMap<ComponentSet, BidegreePolynomial>,
    reduced: Option<BTreeMap<ComponentSet, BidegreePolynomial>>,
    relative_dim: Option<u64>,
}

impl Stratification {
    /// Evaluates all class expressions and validates every invariant,
    /// reporting the full list of violations. Entries with a repeated subset
    /// accumulate.
    pub fn new(
        components: Vec<Component>,
        cover_strata: Vec<(Vec<String>, ClassExpr)>,
        reduced_strata: Option<Vec<(Vec<String>, ClassExpr)>>,
        relative_dim: Option<u64>,
    ) -> Result<Self, ValidationReport> {
        let mut violations = Vec::new();
        let mut ids: BTreeSet<String> = BTreeSet::new();
        for comp in &components {
            if !ids.insert(comp.id.clone()) {
                violations.push(Violation::DuplicateComponent {
                    id: comp.id.clone(),
                });
            }
            if comp.multiplicity == 0 {
                violations.push(Violation::ZeroMultiplicity {
                    id: comp.id.clone(),
                });
            }
        }
        let cover = build_strata(StrataKind::Cover, cover_strata, &ids, &mut violations);
        let reduced =
            reduced_strata.map(|r| build_strata(StrataKind::Reduced, r, &ids, &mut violations));
        check_closure(StrataKind::Cover, &cover, &mut violations);
        if let Some(r) = &reduced {
            check_closure(StrataKind::Reduced, r, &mut violations);
        }
        if violations.is_empty() {
            Ok(Stratification {
                components,
                cover,
                reduced,
                relative_dim,
            })
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Re-checks the strata invariants. Always ok for values built by
    /// [`Stratification::new`]; [`Stratification::blowup_transform`] can
    /// produce closure violations when fed non-geometric cover classes, which
    /// this reports without affecting the nearby-fibre arithmetic.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        check_closure(StrataKind::Cover, &self.cover, &mut violations);
        if let Some(r) = &self.reduced {
            check_closure(StrataKind::Reduced, r, &mut violations);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn relative_dim(&self) -> Option<u64> {
        self.relative_dim
    }

    /// The stored (nonzero) cover strata in subset order.
    pub fn cover_strata(&self) -> impl Iterator<Item = (&ComponentSet, &BidegreePolynomial)> {
        self.cover.iter()
    }

    /// The stored reduced strata, when explicitly given.
    pub fn reduced_strata(
        &self,
    ) -> Option<impl Iterator<Item = (&ComponentSet, &BidegreePolynomial)>> {
        self.reduced.as_ref().map(|r| r.iter())
    }

    /// `[D_J]` for the given subset (zero when absent).
    pub fn cover_class(&self, subset: &[&str]) -> BidegreePolynomial {
        let key: ComponentSet = subset.iter().map(|s| s.to_string()).collect();
        self.cover.get(&key).cloned().unwrap_or_default()
    }

    fn known_id(&self, id: &str) -> bool {
        self.components.iter().any(|c| c.id == id)
    }

    fn all_multiplicities_one(&self) -> bool {
        self.components.iter().all(|c| c.multiplicity == 1)
    }

    /// The reduced strata table: explicit if given, defaulted to the cover
    /// strata when every multiplicity is 1 (the covers are then trivial).
    fn reduced_table(&self) -> Result<&BTreeMap<ComponentSet, BidegreePolynomial>, DegenerationError> {
        match &self.reduced {
            Some(r) => Ok(r),
            None if self.all_multiplicities_one() => Ok(&self.cover),
            None => Err(DegenerationError::MissingReducedStrata),
        }
    }

    /// `[D(m)] = sum over |J| = m of [D_J]`.
    pub fn strata_level_class(&self, m: usize) -> Result<BidegreePolynomial, DegenerationError> {
        if m < 1 {
            return Err(DegenerationError::LevelOutOfRange);
        }
        Ok(level_class(&self.cover, m))
    }

    /// `[D^0_J] = sum over J' containing J of (-1)^(|J'| - |J|) [D_J']`, the
    /// class of the open stratum lying on exactly the components in `J`.
    pub fn open_stratum_class(
        &self,
        subset: &[&str],
    ) -> Result<BidegreePolynomial, DegenerationError> {
        if subset.is_empty() {
            return Err(DegenerationError::EmptySubset);
        }
        for id in subset {
            if !self.known_id(id) {
                return Err(DegenerationError::UnknownComponent(id.to_string()));
            }
        }
        let key: ComponentSet = subset.iter().map(|s| s.to_string()).collect();
        Ok(open_class(&self.cover, &key))
    }

    /// The motivic nearby fibre in closed-strata form:
    /// `sum over m >= 1 of (-1)^(m-1) [D(m)] P_(m-1)`.
    pub fn nearby_fibre(&self) -> BidegreePolynomial {
        let mut out = BidegreePolynomial::zero();
        for m in 1..=self.max_level(&self.cover) {
            let term = level_class(&self.cover, m) * projective_space(m as i64 - 1);
            if m % 2 == 1 {
                out += term;
            } else {
                out -= term;
            }
        }
        out
    }

    /// The motivic nearby fibre in open-strata form:
    /// `sum over j >= 1 of (-1)^(j-1) [D^0(j)] (uv-1)^(j-1)`.
    /// Agrees with [`Stratification::nearby_fibre`] on every input.
    pub fn nearby_fibre_open(&self) -> BidegreePolynomial {
        let mut out = BidegreePolynomial::zero();
        for subset in face_family(&self.cover) {
            let term = open_class(&self.cover, &subset) * torus(subset.len() as u32 - 1);
            if subset.len() % 2 == 1 {
                out += term;
            } else {
                out -= term;
            }
        }
        out
    }

    /// The class `[E]` of the reduced special fibre by inclusion-exclusion
    /// over the reduced strata.
    pub fn special_fibre_class(&self) -> Result<BidegreePolynomial, DegenerationError> {
        let reduced = self.reduced_table()?;
        let mut out = BidegreePolynomial::zero();
        for m in 1..=self.max_level(reduced) {
            let term = level_class(reduced, m);
            if m % 2 == 1 {
                out += term;
            } else {
                out -= term;
            }
        }
        Ok(out)
    }

    /// The motivic vanishing fibre `phi = psi - [E]`.
    pub fn vanishing_fibre(&self) -> Result<BidegreePolynomial, DegenerationError> {
        Ok(self.nearby_fibre() - self.special_fibre_class()?)
    }

    fn max_level(&self, map: &BTreeMap<ComponentSet, BidegreePolynomial>) -> usize {
        map.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Blows up the total space along a center `Z` lying in the components
    /// `A` with codimension `c`, producing the stratification of the new
    /// special fibre:
    ///
    /// * for old subsets `J` with `K = J intersect A`, `B = J minus A`:
    ///   `[D'_J] = [D_J] + [W_B] (P_(c-|K|-1) - 1)`;
    /// * for subsets gaining the exceptional component:
    ///   `[D'_(J + new)] = [W_B] P_(c-|K|-1)`, covering `[D'_new] = [W_{}] P_(c-1)`;
    /// * `P` with negative index is 0, so `K = A`, `c = |A|` degenerates to
    ///   `[D'_J] = [D_J] - [W_B]`.
    ///
    /// The exceptional component gets multiplicity `sum of e_i over A`.
    /// Reduced strata are dropped: the move does not determine them (they
    /// default again when all multiplicities, including the new one, are 1).
    /// The nearby fibre of the result equals that of `self` for every choice
    /// of cover classes.
    pub fn blowup_transform(&self, center: &BlowupCenter) -> Result<Stratification, CenterError> {
        let a: ComponentSet = center.contained_in.iter().cloned().collect();
        if a.is_empty() {
            return Err(CenterError::EmptyContainment);
        }
        for id in &a {
            if !self.known_id(id) {
                return Err(CenterError::UnknownComponent(id.clone()));
            }
        }
        if center.codimension < a.len() as i64 {
            return Err(CenterError::CodimensionTooSmall {
                codimension: center.codimension,
                containing: a.len(),
            });
        }
        if self.known_id(&center.new_id) {
            return Err(CenterError::NewIdTaken(center.new_id.clone()));
        }

        let mut covers: BTreeMap<ComponentSet, BidegreePolynomial> = BTreeMap::new();
        for (subset, expr) in &center.covers {
            let b: ComponentSet = subset.iter().cloned().collect();
            if b.iter().any(|id| a.contains(id)) {
                return Err(CenterError::CoverMeetsCenterComponents {
                    subset: b.into_iter().collect(),
                });
            }
            for id in &b {
                if !self.known_id(id) {
                    return Err(CenterError::UnknownComponent(id.clone()));
                }
            }
            let class = expr.eval().map_err(|source| CenterError::CoverClass {
                subset: b.iter().cloned().collect(),
                source,
            })?;
            add_into(&mut covers, b, class);
        }

        let c = center.codimension;
        let mut cover = self.cover.clone();
        for k_subset in a.iter().cloned().powerset() {
            let k = k_subset.len() as i64;
            let strict_factor = projective_space(c - k - 1) - BidegreePolynomial::one();
            let exceptional_factor = projective_space(c - k - 1);
            for (b, w) in &covers {
                let mut j: ComponentSet = k_subset.iter().cloned().collect();
                j.extend(b.iter().cloned());
                if !j.is_empty() {
                    add_into(&mut cover, j.clone(), w * &strict_factor);
                }
                j.insert(center.new_id.clone());
                add_into(&mut cover, j, w * &exceptional_factor);
            }
        }

        let mut components = self.components.clone();
        components.push(Component::new(
            center.new_id.clone(),
            a.iter()
                .map(|id| {
                    self.components
                        .iter()
                        .find(|comp| comp.id == *id)
                        .expect("containment ids validated")
                        .multiplicity
                })
                .sum(),
        ));
        Ok(Stratification {
            components,
            cover,
            reduced: None,
            relative_dim: self.relative_dim,
        })
    }
}

fn build_strata(
    kind: StrataKind,
    entries: Vec<(Vec<String>, ClassExpr)>,
    ids: &BTreeSet<String>,
    violations: &mut Vec<Violation>,
) -> BTreeMap<ComponentSet, BidegreePolynomial> {
    let mut map: BTreeMap<ComponentSet, BidegreePolynomial> = BTreeMap::new();
    for (subset, expr) in entries {
        let key: ComponentSet = subset.into_iter().collect();
        let mut well_keyed = true;
        if key.is_empty() {
            violations.push(Violation::EmptySubset { kind });
            well_keyed = false;
        }
        for id in &key {
            if !ids.contains(id) {
                violations.push(Violation::UnknownComponent {
                    kind,
                    subset: key.iter().cloned().collect(),
                    id: id.clone(),
                });
                well_keyed = false;
            }
        }
        match expr.eval() {
            Ok(class) if well_keyed => add_into(&mut map, key, class),
            Ok(_) => {}
            Err(source) => violations.push(Violation::ClassEvaluation {
                kind,
                subset: key.iter().cloned().collect(),
                source,
            }),
        }
    }
    map
}

/// Closure of strata: a nonzero stratum forces all its one-smaller faces to
/// be nonzero (and, inductively, all nonempty faces).
fn check_closure(
    kind: StrataKind,
    map: &BTreeMap<ComponentSet, BidegreePolynomial>,
    violations: &mut Vec<Violation>,
) {
    for subset in map.keys() {
        if subset.len() < 2 {
            continue;
        }
        for id in subset {
            let mut face = subset.clone();
            face.remove(id);
            if !map.contains_key(&face) {
                violations.push(Violation::Closure {
                    kind,
                    subset: subset.iter().cloned().collect(),
                    missing: face.into_iter().collect(),
                });
            }
        }
    }
}

/// Inserts accumulatively and keeps the no-stored-zero invariant.
fn add_into(
    map: &mut BTreeMap<ComponentSet, BidegreePolynomial>,
    key: ComponentSet,
    class: BidegreePolynomial,
) {
    if class.is_zero() {
        return;
    }
    let entry = map.entry(key.clone()).or_default();
    *entry += class;
    if entry.is_zero() {
        map.remove(&key);
    }
}

fn level_class(map: &BTreeMap<ComponentSet, BidegreePolynomial>, m: usize) -> BidegreePolynomial {
    let mut out = BidegreePolynomial::zero();
    for (subset, class) in map {
        if subset.len() == m {
            out += class;
        }
    }
    out
}

fn open_class(
    map: &BTreeMap<ComponentSet, BidegreePolynomial>,
    subset: &ComponentSet,
) -> BidegreePolynomial {
    let mut out = BidegreePolynomial::zero();
    for (bigger, class) in map {
        if bigger.is_superset(subset) {
            if (bigger.len() - subset.len()) % 2 == 0 {
                out += class;
            } else {
                out -= class;
            }
        }
    }
    out
}

/// All nonempty subsets of stored keys. On validated input this is just the
/// key set itself; blow-up outputs may lack faces, and the open-strata sum
/// still ranges over them.
fn face_family(map: &BTreeMap<ComponentSet, BidegreePolynomial>) -> BTreeSet<ComponentSet> {
    let mut out = BTreeSet::new();
    for key in map.keys() {
        for face in key.iter().cloned().powerset() {
            if !face.is_empty() {
                out.insert(face.into_iter().collect());
            }
        }
    }
    out
}

/// Reads the middle-degree Hodge numbers out of a nearby-fibre polynomial
/// under the concentration hypothesis: `H^j(X_infinity)` is one-dimensional
/// of bidegree `(j/2, j/2)` for even `j != n` in `[0, 2n]` and zero for odd
/// `j != n`. Returns the dimension table of `(-1)^n (psi - sum of (uv)^(j/2))`
/// and errors when that table has a negative entry or is asymmetric.
pub fn middle_hodge_numbers(
    psi: &BidegreePolynomial,
    n: u32,
) -> Result<HodgeStructure, MiddleHodgeError> {
    let mut adjusted = psi.clone();
    for j in (0..=2 * n).step_by(2) {
        if j != n {
            adjusted -= lefschetz_power(j / 2);
        }
    }
    if n % 2 == 1 {
        adjusted = -adjusted;
    }
    let mut dims = Vec::new();
    for (p, q, coefficient) in adjusted.terms() {
        let dim = u64::try_from(coefficient).map_err(|_| MiddleHodgeError::NotADimension {
            p,
            q,
            coefficient: coefficient.clone(),
        })?;
        dims.push(((p, q), dim));
    }
    Ok(HodgeStructure::new(dims)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;
    use proptest::prelude::*;

    fn parse(s: &str) -> BidegreePolynomial {
        parse_polynomial(s).expect(s)
    }

    fn subset(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    /// `d` lines in general position in the plane, each with class `1 + uv`,
    /// meeting pairwise in points; all multiplicities 1.
    fn lines_family(d: usize) -> Stratification {
        let components = (1..=d).map(|i| Component::new(format!("E{i}"), 1)).collect();
        let mut strata = Vec::new();
        for i in 1..=d {
            strata.push((subset(&[&format!("E{i}")]), ClassExpr::Projective(1)));
        }
        for i in 1..=d {
            for j in (i + 1)..=d {
                strata.push((
                    subset(&[&format!("E{i}"), &format!("E{j}")]),
                    ClassExpr::Point,
                ));
            }
        }
        Stratification::new(components, strata, None, Some(1)).unwrap()
    }

    /// Degenerating degree-`d` surfaces: `d` planes (blown up in `d(d-1)`
    /// points each) and one exceptional quadric per blown-up double point,
    /// `d` of them over each of the `C(d,2)` double lines.
    fn surfaces_family(d: usize) -> Stratification {
        let mut components = Vec::new();
        let mut strata = Vec::new();
        for i in 1..=d {
            components.push(Component::new(format!("E{i}"), 1));
            strata.push((
                subset(&[&format!("E{i}")]),
                ClassExpr::BlowupP2((d * (d - 1)) as i64),
            ));
        }
        for i in 1..=d {
            for j in (i + 1)..=d {
                strata.push((
                    subset(&[&format!("E{i}"), &format!("E{j}")]),
                    ClassExpr::Projective(1),
                ));
                for s in 1..=d {
                    let f = format!("F{i}_{j}_{s}");
                    components.push(Component::new(f.clone(), 1));
                    strata.push((subset(&[&f]), ClassExpr::P1xP1));
                    strata.push((subset(&[&format!("E{i}"), &f]), ClassExpr::Projective(1)));
                    strata.push((subset(&[&format!("E{j}"), &f]), ClassExpr::Projective(1)));
                    strata.push((
                        subset(&[&format!("E{i}"), &format!("E{j}"), &f]),
                        ClassExpr::Point,
                    ));
                }
                for k in (j + 1)..=d {
                    strata.push((
                        subset(&[&format!("E{i}"), &format!("E{j}"), &format!("E{k}")]),
                        ClassExpr::Point,
                    ));
                }
            }
        }
        Stratification::new(components, strata, None, Some(2)).unwrap()
    }

    /// Two transverse quadrics smoothing to a K3, after blowing up the 16
    /// double points of the total space.
    fn k3_family() -> Stratification {
        let mut components = vec![Component::new("Q1", 1), Component::new("Q2", 1)];
        let mut strata = vec![
            (
                subset(&["Q1"]),
                ClassExpr::Literal(parse("1 + 18*u*v + u^2*v^2")),
            ),
            (
                subset(&["Q2"]),
                ClassExpr::Literal(parse("1 + 18*u*v + u^2*v^2")),
            ),
            (subset(&["Q1", "Q2"]), ClassExpr::Curve(1)),
        ];
        for i in 1..=16 {
            let n = format!("N{i}");
            components.push(Component::new(n.clone(), 1));
            strata.push((subset(&[&n]), ClassExpr::P1xP1));
            strata.push((subset(&["Q1", &n]), ClassExpr::Projective(1)));
            strata.push((subset(&["Q2", &n]), ClassExpr::Projective(1)));
            strata.push((subset(&["Q1", "Q2", &n]), ClassExpr::Point));
        }
        Stratification::new(components, strata, None, Some(2)).unwrap()
    }

    fn binomial(n: i64, k: i64) -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        let mut out = 1i64;
        for i in 0..k {
            out = out * (n - i) / (i + 1);
        }
        out
    }

    #[test]
    fn validation_reports_all_violations() {
        assert!(lines_family(4).validate().is_ok());

        let err = Stratification::new(
            vec![Component::new("E1", 1), Component::new("E1", 0)],
            vec![
                (subset(&["E9"]), ClassExpr::Point),
                (subset(&["E1", "E9"]), ClassExpr::Point),
                (vec![], ClassExpr::Point),
                (subset(&["E1"]), ClassExpr::Projective(-1)),
            ],
            None,
            None,
        )
        .unwrap_err();
        assert_eq!(err.violations.len(), 6);
        assert!(err
            .violations
            .contains(&Violation::DuplicateComponent { id: "E1".into() }));
        assert!(err
            .violations
            .contains(&Violation::ZeroMultiplicity { id: "E1".into() }));

        // Nonzero pair stratum over a zero single stratum breaks closure.
        let err = Stratification::new(
            vec![Component::new("E1", 1), Component::new("E2", 1)],
            vec![
                (subset(&["E1"]), ClassExpr::Projective(1)),
                (subset(&["E1", "E2"]), ClassExpr::Point),
            ],
            None,
            None,
        )
        .unwrap_err();
        assert_eq!(
            err.violations,
            vec![Violation::Closure {
                kind: StrataKind::Cover,
                subset: vec!["E1".into(), "E2".into()],
                missing: vec!["E2".into()],
            }]
        );
    }

    #[test]
    fn strata_level_classes() {
        let lines = lines_family(4);
        assert_eq!(lines.strata_level_class(1).unwrap(), parse("4 + 4*u*v"));
        assert_eq!(
            lines.strata_level_class(2).unwrap(),
            BidegreePolynomial::constant(6)
        );
        assert_eq!(lines.strata_level_class(7).unwrap(), BidegreePolynomial::zero());
        assert!(lines.strata_level_class(0).is_err());

        let surfaces = surfaces_family(2);
        assert_eq!(surfaces.strata_level_class(2).unwrap(), parse("5 + 5*u*v"));
    }

    #[test]
    fn open_stratum_classes() {
        let triangle = lines_family(3);
        assert_eq!(triangle.open_stratum_class(&["E1"]).unwrap(), parse("u*v - 1"));
        // Maximal subsets are their own open strata.
        assert_eq!(
            triangle.open_stratum_class(&["E1", "E2"]).unwrap(),
            BidegreePolynomial::one()
        );
        // Absent subsets have open class 0 by closure.
        assert_eq!(
            triangle.open_stratum_class(&["E1", "E2", "E3"]).unwrap(),
            BidegreePolynomial::zero()
        );
        assert!(triangle.open_stratum_class(&[]).is_err());
        assert!(triangle.open_stratum_class(&["E7"]).is_err());
    }

    #[test]
    fn lines_nearby_fibre_matches_closed_formula() {
        for d in 2..=8 {
            let expected =
                parse("1 + u*v") * (d as i64 - binomial(d as i64, 2));
            let family = lines_family(d);
            assert_eq!(family.nearby_fibre(), expected);
            assert_eq!(family.nearby_fibre_open(), expected);
        }
    }

    #[test]
    fn surfaces_nearby_fibre_matches_closed_formula() {
        for d in 2..=5 {
            let di = d as i64;
            let expected = parse("1 + u^2*v^2") * (binomial(di - 1, 3) + 1)
                + parse("u*v") * (di * (2 * di * di - 6 * di + 7) / 3);
            assert_eq!(surfaces_family(d).nearby_fibre(), expected);
        }
    }

    #[test]
    fn k3_nearby_fibre() {
        let expected = parse("1 + u + v + 18*u*v + u^2*v + u*v^2 + u^2*v^2");
        let family = k3_family();
        assert_eq!(family.nearby_fibre(), expected);
        assert_eq!(family.nearby_fibre_open(), expected);
        assert_eq!(
            family.nearby_fibre().specialize_v().to_string(),
            "2 + 20*t + 2*t^2"
        );
    }

    #[test]
    fn single_smooth_component_is_its_own_nearby_fibre() {
        let smooth = Stratification::new(
            vec![Component::new("E1", 1)],
            vec![(subset(&["E1"]), ClassExpr::Curve(2))],
            None,
            Some(1),
        )
        .unwrap();
        let class = ClassExpr::Curve(2).eval().unwrap();
        assert_eq!(smooth.nearby_fibre(), class);
        assert_eq!(smooth.nearby_fibre_open(), class);
        assert_eq!(smooth.special_fibre_class().unwrap(), class);
        assert!(smooth.vanishing_fibre().unwrap().is_zero());
    }

    #[test]
    fn triangle_special_and_vanishing_fibres() {
        let triangle = lines_family(3);
        assert!(triangle.nearby_fibre().is_zero());
        assert_eq!(triangle.special_fibre_class().unwrap(), parse("3*u*v"));
        assert_eq!(triangle.vanishing_fibre().unwrap(), parse("-3*u*v"));
    }

    #[test]
    fn quartic_curve_vanishing_fibre() {
        let family = lines_family(4);
        assert_eq!(family.nearby_fibre(), parse("-2 - 2*u*v"));
        assert_eq!(
            family.vanishing_fibre().unwrap(),
            parse("-2 - 2*u*v") - family.special_fibre_class().unwrap()
        );
    }

    #[test]
    fn surfaces_special_fibre_by_inclusion_exclusion() {
        // d = 2: level classes from the closed formulas.
        let family = surfaces_family(2);
        let level1 = parse("1 + 3*u*v + u^2*v^2") * 2 + parse("1 + u*v").pow(2) * 2;
        let level2 = parse("1 + u*v") * 5;
        let level3 = BidegreePolynomial::constant(2);
        assert_eq!(
            family.special_fibre_class().unwrap(),
            level1 - level2 + level3
        );
    }

    #[test]
    fn multiplicities_above_one_need_explicit_reduced_strata() {
        let double_line = Stratification::new(
            vec![Component::new("E1", 2)],
            vec![(subset(&["E1"]), ClassExpr::Projective(1))],
            None,
            None,
        )
        .unwrap();
        // psi is still defined...
        assert_eq!(double_line.nearby_fibre(), parse("1 + u*v"));
        // ...but [E] is not.
        assert_eq!(
            double_line.special_fibre_class(),
            Err(DegenerationError::MissingReducedStrata)
        );
        assert_eq!(
            double_line.vanishing_fibre(),
            Err(DegenerationError::MissingReducedStrata)
        );

        let with_reduced = Stratification::new(
            vec![Component::new("E1", 2)],
            vec![(subset(&["E1"]), ClassExpr::Projective(1))],
            Some(vec![(subset(&["E1"]), ClassExpr::Projective(1))]),
            None,
        )
        .unwrap();
        assert!(with_reduced.vanishing_fibre().unwrap().is_zero());
    }

    #[test]
    fn blowup_of_point_on_single_component() {
        let smooth = Stratification::new(
            vec![Component::new("E1", 1)],
            vec![(subset(&["E1"]), ClassExpr::Curve(1))],
            None,
            None,
        )
        .unwrap();
        let moved = smooth
            .blowup_transform(&BlowupCenter {
                contained_in: subset(&["E1"]),
                codimension: 2,
                covers: vec![(vec![], ClassExpr::Point)],
                new_id: "EXC".into(),
            })
            .unwrap();
        let curve = ClassExpr::Curve(1).eval().unwrap();
        assert_eq!(moved.cover_class(&["E1"]), curve);
        assert_eq!(moved.cover_class(&["EXC"]), parse("1 + u*v"));
        assert_eq!(moved.cover_class(&["E1", "EXC"]), BidegreePolynomial::one());
        assert_eq!(moved.nearby_fibre(), smooth.nearby_fibre());
        assert_eq!(
            moved.components().last().unwrap(),
            &Component::new("EXC", 1)
        );
    }

    #[test]
    fn blowup_of_double_point_of_triangle() {
        let triangle = lines_family(3);
        let moved = triangle
            .blowup_transform(&BlowupCenter {
                contained_in: subset(&["E1", "E2"]),
                codimension: 2,
                covers: vec![(vec![], ClassExpr::Point)],
                new_id: "EXC".into(),
            })
            .unwrap();
        // The strict transforms of the two lines become disjoint.
        assert!(moved.cover_class(&["E1", "E2"]).is_zero());
        assert_eq!(moved.cover_class(&["EXC"]), parse("1 + u*v"));
        assert_eq!(moved.cover_class(&["E1", "EXC"]), BidegreePolynomial::one());
        assert_eq!(moved.cover_class(&["E2", "EXC"]), BidegreePolynomial::one());
        assert!(moved.cover_class(&["E1", "E2", "EXC"]).is_zero());
        assert!(moved.nearby_fibre().is_zero());
        assert_eq!(moved.components().last().unwrap().multiplicity, 2);
    }

    #[test]
    fn center_validation() {
        let triangle = lines_family(3);
        let center = |contained_in: &[&str], codimension, new_id: &str| BlowupCenter {
            contained_in: subset(contained_in),
            codimension,
            covers: vec![(vec![], ClassExpr::Point)],
            new_id: new_id.into(),
        };
        assert_eq!(
            triangle.blowup_transform(&center(&[], 2, "EXC")),
            Err(CenterError::EmptyContainment)
        );
        assert_eq!(
            triangle.blowup_transform(&center(&["E9"], 2, "EXC")),
            Err(CenterError::UnknownComponent("E9".into()))
        );
        assert_eq!(
            triangle.blowup_transform(&center(&["E1", "E2"], 1, "EXC")),
            Err(CenterError::CodimensionTooSmall {
                codimension: 1,
                containing: 2
            })
        );
        assert_eq!(
            triangle.blowup_transform(&center(&["E1"], 2, "E3")),
            Err(CenterError::NewIdTaken("E3".into()))
        );
        let mut bad_cover = center(&["E1"], 2, "EXC");
        bad_cover.covers = vec![(subset(&["E1"]), ClassExpr::Point)];
        assert!(matches!(
            triangle.blowup_transform(&bad_cover),
            Err(CenterError::CoverMeetsCenterComponents { .. })
        ));
    }

    #[test]
    fn middle_hodge_number_extraction() {
        let k3 = middle_hodge_numbers(&k3_family().nearby_fibre(), 2).unwrap();
        let expected: Vec<((i64, i64), u64)> = vec![
            ((1, 0), 1),
            ((0, 1), 1),
            ((1, 1), 18),
            ((2, 1), 1),
            ((1, 2), 1),
        ];
        assert_eq!(
            k3,
            HodgeStructure::new(expected.into_iter().map(|((p, q), d)| {
                ((Exponent::from(p), Exponent::from(q)), d)
            }))
            .unwrap()
        );

        let quartic = middle_hodge_numbers(&lines_family(4).nearby_fibre(), 1).unwrap();
        assert_eq!(
            quartic.hodge_number_polynomial(),
            parse("3 + 3*u*v")
        );

        for g in 0..4 {
            let smooth_psi = ClassExpr::Curve(g).eval().unwrap();
            let h1 = middle_hodge_numbers(&smooth_psi, 1).unwrap();
            assert_eq!(
                h1.hodge_number_polynomial(),
                parse("u + v") * g
            );
        }

        // A nearby fibre inconsistent with the hypothesis leaves a negative
        // coefficient after the correction.
        assert!(matches!(
            middle_hodge_numbers(&parse("3*u*v"), 1),
            Err(MiddleHodgeError::NotADimension { .. })
        ));
        // An asymmetric middle part is rejected.
        assert!(matches!(
            middle_hodge_numbers(&parse("1 + u*v - u"), 1),
            Err(MiddleHodgeError::Hodge(_))
        ));
    }

    #[test]
    fn specialization_matches_smooth_fibre_cohomology() {
        // Plane curves of degree d: genus C(d-1, 2).
        for d in 2..=6 {
            let genus = binomial(d - 1, 2);
            assert_eq!(
                lines_family(d as usize).nearby_fibre().specialize_v(),
                ClassExpr::Curve(genus).eval().unwrap().specialize_v()
            );
        }
        // Degree-d surfaces: 1 + h20 (u^2 + v^2) + h11 uv + u^2v^2, the
        // hyperplane class counted inside h11.
        for d in 2..=4 {
            let h20 = binomial(d - 1, 3);
            let h11 = d * (2 * d * d - 6 * d + 7) / 3;
            let smooth = BidegreePolynomial::one()
                + parse("u^2*v^2")
                + parse("u^2 + v^2") * h20
                + parse("u*v") * h11;
            assert_eq!(
                surfaces_family(d as usize).nearby_fibre().specialize_v(),
                smooth.specialize_v()
            );
        }
        // K3: 1 + u^2 + 20uv + v^2 + u^2v^2.
        let smooth_k3 = parse("1 + u^2 + 20*u*v + v^2 + u^2*v^2");
        assert_eq!(
            k3_family().nearby_fibre().specialize_v(),
            smooth_k3.specialize_v()
        );
    }

    prop_compose! {
        fn arb_poly()(terms in proptest::collection::vec(
            ((0i64..=3), (0i64..=3), -4i64..=4),
            1..4,
        )) -> BidegreePolynomial {
            BidegreePolynomial::from_terms(terms.into_iter().map(|(a, b, c)| {
                (Exponent::from(a), Exponent::from(b), BigInt::from(c))
            }))
        }
    }

    prop_compose! {
        /// Random valid stratification: the family of strata is the downward
        /// closure of a few random masks, every member carrying a random
        /// nonzero class.
        fn arb_stratification(max_components: usize)(n in 2..=max_components)(
            n in Just(n),
            mults in proptest::collection::vec(1u64..=3, n),
            maximal in proptest::collection::vec(1u32..(1u32 << n), 1..4),
            polys in proptest::collection::vec(arb_poly(), 1usize << n),
        ) -> Stratification {
            let ids: Vec<String> = (0..n).map(|i| format!("C{i}")).collect();
            let mut family: BTreeSet<u32> = BTreeSet::new();
            for &mask in &maximal {
                let mut sub = mask;
                loop {
                    family.insert(sub);
                    sub = (sub - 1) & mask;
                    if sub == 0 {
                        break;
                    }
                }
            }
            let strata = family
                .iter()
                .map(|&mask| {
                    let members: Vec<String> = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| ids[i].clone())
                        .collect();
                    let mut class = polys[mask as usize].clone();
                    if class.is_zero() {
                        class = BidegreePolynomial::one();
                    }
                    (members, ClassExpr::Literal(class))
                })
                .collect();
            let components = ids
                .into_iter()
                .zip(mults)
                .map(|(id, m)| Component::new(id, m))
                .collect();
            Stratification::new(components, strata, None, None).unwrap()
        }
    }

    proptest! {
        #[test]
        fn closed_and_open_nearby_fibres_agree(s in arb_stratification(5)) {
            prop_assert_eq!(s.nearby_fibre(), s.nearby_fibre_open());
        }

        #[test]
        fn mobius_inversion_round_trips(s in arb_stratification(4)) {
            for (key, class) in s.cover_strata() {
                let mut recovered = BidegreePolynomial::zero();
                for bigger in face_family(&s.cover) {
                    if bigger.is_superset(key) {
                        recovered += open_class(&s.cover, &bigger);
                    }
                }
                prop_assert_eq!(recovered, class.clone());
            }
        }

        #[test]
        fn nearby_fibre_is_blowup_invariant(
            s in arb_stratification(4),
            codim_slack in 0i64..=2,
            cover_polys in proptest::collection::vec(arb_poly(), 4),
            a_mask_seed in 1u32..16,
            b_mask_seeds in proptest::collection::vec(0u32..16, 0..3),
        ) {
            let ids: Vec<String> = s.components().iter().map(|c| c.id.clone()).collect();
            let n = ids.len();
            let a_mask = (a_mask_seed % ((1 << n) - 1)) + 1;
            let contained_in: Vec<String> = (0..n)
                .filter(|i| a_mask & (1 << i) != 0)
                .map(|i| ids[i].clone())
                .collect();
            let covers = b_mask_seeds
                .iter()
                .zip(&cover_polys)
                .map(|(&seed, poly)| {
                    let b: Vec<String> = (0..n)
                        .filter(|i| seed & (1 << i) != 0 && a_mask & (1 << i) == 0)
                        .map(|i| ids[i].clone())
                        .collect();
                    (b, ClassExpr::Literal(poly.clone()))
                })
                .collect();
            let center = BlowupCenter {
                contained_in: contained_in.clone(),
                codimension: contained_in.len() as i64 + codim_slack,
                covers,
                new_id: "EXC".into(),
            };
            let moved = s.blowup_transform(&center).unwrap();
            prop_assert_eq!(moved.nearby_fibre(), s.nearby_fibre());
            // The open-strata form stays consistent even off closed families.
            prop_assert_eq!(moved.nearby_fibre_open(), s.nearby_fibre());
        }

        #[test]
        fn vanishing_fibre_zero_for_single_reduced_component(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            let s = Stratification::new(
                vec![Component::new("E1", 1)],
                vec![(vec!["E1".into()], ClassExpr::Literal(p))],
                None,
                None,
            ).unwrap();
            prop_assert!(s.vanishing_fibre().unwrap().is_zero());
        }
    }
}
