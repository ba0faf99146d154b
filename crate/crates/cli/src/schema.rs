//! The JSON specification format. Every scalar, series, polynomial and algebra element is a
//! string in the expression language of [`crate::expr`]; objects refer to each other by name.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub type Table = BTreeMap<String, String>;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpecFile {
    pub lie_algebras: BTreeMap<String, LieAlgebraSpec>,
    pub r_matrices: BTreeMap<String, RMatrixSpec>,
    pub cobrackets: BTreeMap<String, CobracketSpec>,
    pub charts: BTreeMap<String, ChartSpec>,
    pub bivectors: BTreeMap<String, BivectorSpec>,
    pub matrix_groups: BTreeMap<String, MatrixGroupSpec>,
    pub poisson_groups: BTreeMap<String, PoissonGroupSpec>,
    pub momentum_maps: BTreeMap<String, MomentumSpec>,
    pub presentations: BTreeMap<String, PresentationSpec>,
    pub hopf_structures: BTreeMap<String, HopfSpec>,
    pub actions: BTreeMap<String, ActionSpec>,
    pub reductions: BTreeMap<String, ReductionSpec>,
}

impl SpecFile {
    pub fn parse(src: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(src)?)
    }

    /// Adds the entries of `other`; a name defined twice in one section is an input error.
    pub fn merge(&mut self, other: SpecFile) -> CliResult<()> {
        fn join<T>(section: &str, into: &mut BTreeMap<String, T>, from: BTreeMap<String, T>) -> CliResult<()> {
            for (k, v) in from {
                if into.insert(k.clone(), v).is_some() {
                    return Err(CliError::Input(format!("{section}: {k} defined twice")));
                }
            }
            Ok(())
        }
        join("lie_algebras", &mut self.lie_algebras, other.lie_algebras)?;
        join("r_matrices", &mut self.r_matrices, other.r_matrices)?;
        join("cobrackets", &mut self.cobrackets, other.cobrackets)?;
        join("charts", &mut self.charts, other.charts)?;
        join("bivectors", &mut self.bivectors, other.bivectors)?;
        join("matrix_groups", &mut self.matrix_groups, other.matrix_groups)?;
        join("poisson_groups", &mut self.poisson_groups, other.poisson_groups)?;
        join("momentum_maps", &mut self.momentum_maps, other.momentum_maps)?;
        join("presentations", &mut self.presentations, other.presentations)?;
        join("hopf_structures", &mut self.hopf_structures, other.hopf_structures)?;
        join("actions", &mut self.actions, other.actions)?;
        join("reductions", &mut self.reductions, other.reductions)
    }
}

/// `brackets` maps "X,Y" to a linear combination of basis names; unlisted pairs commute.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraSpec {
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Table,
}

/// A rank-2 tensor such as "X@Y - Y@X" or "wedge(X,Y)".
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixSpec {
    pub algebra: String,
    pub tensor: String,
}

/// A scaled comparison against a stored table: pass when computed = normalization · claimed.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TableClaim {
    pub table: Table,
    pub normalization: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CobracketClaims {
    /// Basis name → image tensor.
    pub cobracket: Option<TableClaim>,
    /// "X,Y" → bracket of the dual basis elements, written with the basis names.
    pub dual: Option<TableClaim>,
}

/// Exactly one of `r_matrix` and `images` must be given.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketSpec {
    pub algebra: String,
    #[serde(default)]
    pub r_matrix: Option<String>,
    #[serde(default)]
    pub images: Option<Table>,
    #[serde(default)]
    pub claims: CobracketClaims,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub coords: Vec<String>,
    #[serde(default)]
    pub invertible: Vec<String>,
}

/// `entries` maps "x,y" to the polynomial π(dx, dy).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorSpec {
    pub chart: String,
    #[serde(default)]
    pub entries: Table,
    #[serde(default)]
    pub casimirs: Vec<String>,
}

/// Matrix entries are coordinate names or scalars; `basis` gives one matrix per algebra basis element.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixGroupSpec {
    pub algebra: String,
    pub chart: String,
    pub entries: Vec<Vec<String>>,
    #[serde(default)]
    pub unit_determinant: Option<String>,
    pub basis: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonGroupSpec {
    pub group: String,
    pub r_matrix: String,
    #[serde(default)]
    pub claim: Option<TableClaim>,
    #[serde(default)]
    pub casimirs: Vec<String>,
}

/// One-forms and vector fields map coordinate names to component polynomials.
pub type Components = Table;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MomentumSpec {
    /// ξ_M = X_{H_ξ} and the cocycle c(ξ,η) = {H_ξ,H_η} − H_[ξ,η].
    Classical {
        bivector: String,
        algebra: String,
        hamiltonians: Table,
        fields: BTreeMap<String, Components>,
        #[serde(default)]
        claim_cocycle_zero: Option<bool>,
    },
    /// Bracket and Maurer–Cartan identities for α: 𝔤 → Ω¹. Forms are given or taken from `group`.
    Infinitesimal {
        bivector: String,
        cobracket: String,
        #[serde(default)]
        forms: Option<BTreeMap<String, Components>>,
        #[serde(default)]
        group: Option<String>,
    },
    /// Left-invariant Maurer–Cartan forms of a matrix group, with optional stated forms and
    /// structure equations dθ_k = Σ c θ_i∧θ_j ("i,j" → c).
    MaurerCartan {
        group: String,
        #[serde(default)]
        cobracket: Option<String>,
        #[serde(default)]
        claim_forms: Option<BTreeMap<String, Components>>,
        #[serde(default)]
        claim_structure: Option<BTreeMap<String, Table>>,
    },
    /// Dressing fields π♯(θ) on a dual group and the Poisson-action condition.
    Dressing {
        group: String,
        bivector: String,
        algebra: String,
        #[serde(default)]
        cobracket: Option<String>,
        #[serde(default)]
        claim_fields: Option<BTreeMap<String, Components>>,
    },
    /// The constant c in {α_ξ, α_η} pairing for a Heisenberg triple of forms.
    Heisenberg {
        bivector: String,
        forms: [Components; 3],
        #[serde(default)]
        claim_c: Option<String>,
    },
}

/// `rules` maps a two-letter word "x*y" to its rewrite; letter order follows `generators`.
/// With `commute_rest`, every other descending pair of distinct letters commutes.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub invertible: Vec<String>,
    #[serde(default)]
    pub rules: Table,
    #[serde(default)]
    pub commute_rest: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationClaim {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HopfClaims {
    pub relations: BTreeMap<String, RelationClaim>,
    pub semiclassical_cobracket: Option<TableClaim>,
}

/// Either `enveloping` (a Lie algebra name, primitive structure maps) or an explicit
/// presentation with coproduct, counit and antipode images of every letter.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    #[serde(default)]
    pub enveloping: Option<String>,
    #[serde(default)]
    pub presentation: Option<String>,
    #[serde(default)]
    pub coproduct: Table,
    #[serde(default)]
    pub counit: Table,
    #[serde(default)]
    pub antipode: Table,
    #[serde(default)]
    pub claims: HopfClaims,
}

/// An endomorphism of the acted-on algebra. Strings are elements of that algebra, except in
/// `element` (an element of the acting group) and `phi` (a group letter).
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    Identity,
    Left(String),
    Right(String),
    Commutator(String),
    /// (1/ħ) a [b, ·]
    Hamiltonian(String, String),
    /// (1/ħ) [c, ·] a
    HamiltonianRight(String, String),
    /// a (·) a'
    Conjugation(String, String),
    Scale(String, Box<PhiSpec>),
    Sum(Vec<PhiSpec>),
    Diff(Box<PhiSpec>, Box<PhiSpec>),
    Compose(Box<PhiSpec>, Box<PhiSpec>),
    DivHbar(usize, Box<PhiSpec>),
    DivSeries(String, Box<PhiSpec>),
    Phi(String),
    Element(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieRelationSpec {
    pub x: String,
    pub y: String,
    pub rhs: PhiSpec,
}

/// A stored claim [Φ(x), Φ(y)] = Φ(claimed), diagnosed against the span of `candidates`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketClaim {
    pub x: String,
    pub y: String,
    pub claimed: String,
    pub candidates: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SideSpec {
    Left,
    TwoSided,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub generators: Vec<String>,
    pub side: SideSpec,
    pub max_len: usize,
    /// Degree for this ideal's checks; defaults to the session degree.
    #[serde(default)]
    pub degree: Option<usize>,
    /// Run invariant_subalgebra on the quotient by this ideal.
    #[serde(default)]
    pub invariants: bool,
}

/// `lhs = rhs` in the acted-on algebra. With `paper_claim`, a mismatch is a paper-discrepancy.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRelation {
    pub lhs: String,
    pub rhs: String,
    #[serde(default)]
    pub paper_claim: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: String,
    pub algebra: String,
    pub phi: BTreeMap<String, PhiSpec>,
    pub coproduct: Table,
    pub counit: Table,
    #[serde(default)]
    pub lie_relations: BTreeMap<String, LieRelationSpec>,
    #[serde(default)]
    pub bracket_claims: BTreeMap<String, BracketClaim>,
    /// Named elements of the acted-on algebra, usable in relations and ideals.
    #[serde(default)]
    pub elements: Table,
    #[serde(default)]
    pub relations: BTreeMap<String, ElementRelation>,
    #[serde(default)]
    pub ideals: BTreeMap<String, IdealSpec>,
    /// Invariants of the action on the whole algebra.
    #[serde(default)]
    pub invariants: bool,
}

impl ActionSpec {
    pub fn has_reduction(&self) -> bool {
        self.invariants || !self.ideals.is_empty()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionSpec {
    pub bivector: String,
    #[serde(default)]
    pub fields: BTreeMap<String, Components>,
    #[serde(default)]
    pub momentum: Vec<String>,
    /// Check that each field is the Hamiltonian field of the matching momentum component.
    #[serde(default)]
    pub hamiltonian: bool,
    #[serde(default)]
    pub ideal: Vec<String>,
    /// Degree box for ideal membership; defaults to twice the session degree.
    #[serde(default)]
    pub bound: Option<usize>,
    /// Stored brackets of representatives, "f,g" → class.
    #[serde(default)]
    pub claim_brackets: BTreeMap<String, String>,
}
