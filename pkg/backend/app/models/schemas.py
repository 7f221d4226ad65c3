"""
Pydantic models for flags, records, reports and instance documents
"""
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True)


class ClassifyFlags(FrozenModel):
    """Algebraic classification of a finite semigroup"""
    is_band: bool = Field(..., description="Every element is idempotent")
    is_completely_regular: bool = Field(..., description="Every a has x with axa = a and ax = xa")
    is_cryptic: bool = Field(..., description="Green's H is a congruence")
    is_cryptogroup: bool = Field(..., description="Completely regular and cryptic")


class SeparationFlags(FrozenModel):
    """Separation and connectedness battery of a finite space"""
    t0: bool = Field(..., description="Kolmogorov")
    t1: bool = Field(..., description="Points are closed")
    t2: bool = Field(..., description="Hausdorff")
    regular: bool = Field(..., description="Point/closed-set separation, without T1")
    completely_regular: bool = Field(..., description="Decided by clopen separation, without T1")
    normal: bool = Field(..., description="Disjoint closed sets separated, without T1")
    connected: bool = Field(..., description="No nontrivial clopen set")
    locally_connected: bool = Field(..., description="Every minimal neighborhood is connected")
    discrete: bool = Field(..., description="Every subset is open")
    t3: bool = Field(..., description="Regular and T1")
    tychonoff: bool = Field(..., description="Completely regular and T1")
    metrizable: bool = Field(..., description="Finite-proxy: equals t1")
    separable: bool = Field(default=True, description="Trivially true on finite spaces")
    first_countable: bool = Field(default=True, description="Trivially true on finite spaces")
    second_countable: bool = Field(default=True, description="Trivially true on finite spaces")
    clopens: List[List[int]] = Field(..., description="All clopen sets in bitmask order, or the components when there are too many")
    annotations: Dict[str, str] = Field(default_factory=dict, description="Finite-scale notes per flag")


class TopoFlags(FrozenModel):
    """Topological-algebra classification of a semigroup with a topology"""
    mult_continuous: bool = Field(..., description="Multiplication is jointly continuous")
    inversion_continuous: bool = Field(..., description="x -> x^-1 is continuous (False if not a cryptogroup)")
    is_topological_semigroup: bool = Field(..., description="Same as mult_continuous")
    is_topological_cryptogroup: bool = Field(..., description="Cryptogroup with continuous operations")
    is_botg_definitional: bool = Field(..., description="H-class subspace topologies form a base")
    is_botg_criterion: bool = Field(..., description="Topological cryptogroup with open H-classes")
    mult_witness: Optional[List[int]] = Field(default=None, description="First (x, y) where continuity fails")


class HSummary(FrozenModel):
    """H-class structure of a cryptogroup"""
    classes: List[List[int]] = Field(..., description="H-classes ordered by minimal member")
    identities: List[int] = Field(..., description="Idempotent of each class")
    inverses: List[int] = Field(..., description="x^-1 for each element")


class SubcryptoRecord(FrozenModel):
    """A subset of a cryptogroup with its subcryptogroup flags"""
    subset: List[int] = Field(..., description="Sorted members")
    is_subcryptogroup: bool = Field(..., description="Closed under product and inverse")
    is_full: bool = Field(..., description="Contains every idempotent")
    is_normal: bool = Field(..., description="s k s^-1 in K for all s, k in K")
    is_open: bool = Field(..., description="Open in the ambient topology")
    is_closed: bool = Field(..., description="Closed in the ambient topology")
    is_discrete_subspace: bool = Field(..., description="Subspace topology is discrete")

    @property
    def mask(self) -> int:
        return sum(1 << x for x in self.subset)

    @property
    def is_full_normal(self) -> bool:
        return self.is_subcryptogroup and self.is_full and self.is_normal


class HausdorffTriple(FrozenModel):
    """Quotient Hausdorff / rho_N closed / N closed"""
    subset: List[int] = Field(..., description="The full normal subcryptogroup N")
    quotient_hausdorff: bool = Field(..., description="S/N is Hausdorff")
    rho_closed: bool = Field(..., description="rho_N is closed in S x S")
    n_closed: bool = Field(..., description="N is closed in S")

    @property
    def agree(self) -> bool:
        return self.quotient_hausdorff == self.rho_closed == self.n_closed


class SubcryptoEntry(FrozenModel):
    """Report row for one enumerated subcryptogroup"""
    record: SubcryptoRecord = Field(..., description="Flags")
    hausdorff: Optional[HausdorffTriple] = Field(default=None, description="Present for full normal ones on botg instances")


class AxiomResult(FrozenModel):
    """Outcome of one neighborhood axiom"""
    axiom: int = Field(..., description="Axiom number 1..5")
    holds: bool = Field(..., description="Whether the axiom holds")
    witness: Optional[Dict[str, Any]] = Field(default=None, description="Counterexample when it fails")


class NeighborhoodAxiomReport(FrozenModel):
    """Per-axiom report for a neighborhood system"""
    results: List[AxiomResult] = Field(..., description="Axioms 1..5 in order")

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)

    @property
    def failed(self) -> List[int]:
        return [r.axiom for r in self.results if not r.holds]


class FlagEquivalence(FrozenModel):
    """A global separation flag against its per-H-class values"""
    global_value: bool = Field(..., description="Flag on the whole space")
    per_class: List[bool] = Field(..., description="Flag on each H-class subspace")

    @property
    def agrees(self) -> bool:
        return self.global_value == all(self.per_class)


class SeparationEquivalenceReport(FrozenModel):
    """Per-H-class separation suite"""
    flags: Dict[str, FlagEquivalence] = Field(..., description="Keyed by flag name")
    chain: Dict[str, bool] = Field(..., description="t0, t1, t2, t3, tychonoff")

    @property
    def chain_holds(self) -> bool:
        return len(set(self.chain.values())) == 1


class SubsetFlag(FrozenModel):
    """A computed subset with its closedness"""
    subset: List[int] = Field(..., description="Sorted members")
    closed: bool = Field(..., description="Closed in the ambient topology")


class SpecialSetsReport(FrozenModel):
    """Centralizers, S[k] sets and E(S)"""
    centralizers: Dict[int, SubsetFlag] = Field(..., description="S_t for each t")
    power_preidem: Dict[int, SubsetFlag] = Field(..., description="S[k] for each k")
    idempotent_set: SubsetFlag = Field(..., description="E(S)")
    hausdorff: bool = Field(..., description="Ambient space is Hausdorff")
    annotation: Optional[str] = Field(default=None, description="Finite-scale note")


class HomCheck(FrozenModel):
    """Homomorphism and continuity of an element map"""
    is_hom: bool = Field(..., description="f(ab) = f(a)f(b)")
    cont_at: List[bool] = Field(..., description="Continuity at each point")
    is_continuous: bool = Field(..., description="Continuous everywhere")


class TheoremResult(FrozenModel):
    """One line of the theorem-suite ledger"""
    theorem: str = Field(..., description="Short statement identifier")
    applicable: bool = Field(..., description="Hypotheses hold on this instance")
    passed: bool = Field(..., description="Conclusion verified (True when not applicable)")
    checks: int = Field(default=0, description="Number of configurations checked")
    note: Optional[str] = Field(default=None, description="Annotation, e.g. trivialized at finite scale")
    witness: Optional[Dict[str, Any]] = Field(default=None, description="Counterexample when it fails")


class AnalysisReport(BaseModel):
    """Full analysis of an instance"""
    name: str = Field(..., description="Instance name")
    n: int = Field(..., description="Element count")
    classify: ClassifyFlags = Field(..., description="Algebraic flags")
    topo: TopoFlags = Field(..., description="Topological-algebra flags")
    separation: SeparationFlags = Field(..., description="Separation battery of the whole space")
    separation_per_hclass: Optional[SeparationEquivalenceReport] = Field(default=None, description="Present on botg instances")
    h_structure: Optional[HSummary] = Field(default=None, description="Present on cryptogroups")
    subcryptogroups: List[SubcryptoEntry] = Field(default_factory=list, description="Full normal subcryptogroups")
    theorems: List[TheoremResult] = Field(default_factory=list, description="Theorem-suite ledger")
    annotations: Dict[str, str] = Field(default_factory=dict, description="Finite-scale notes")


class TopologySpec(BaseModel):
    """Either an explicit open family or a subbase"""
    opens: Optional[List[List[int]]] = Field(default=None, description="Complete open family")
    subbase: Optional[List[List[int]]] = Field(default=None, description="Generating sets")

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.opens is None) == (self.subbase is None):
            raise ValueError("topology needs exactly one of 'opens' or 'subbase'")
        return self


class InstanceDocument(BaseModel):
    """Serialized semigroup with topology"""
    name: str = Field(..., description="Instance name")
    n: int = Field(..., description="Element count")
    table: List[List[int]] = Field(..., description="Row-major Cayley table")
    topology: TopologySpec = Field(..., description="Topology on the same ground set")
    subsets: Dict[str, List[int]] = Field(default_factory=dict, description="Named subsets, e.g. candidate N")


class NeighborhoodDocument(BaseModel):
    """Cryptogroup with neighborhood families indexed by idempotents"""
    name: str = Field(..., description="Instance name")
    n: int = Field(..., description="Element count")
    table: List[List[int]] = Field(..., description="Row-major Cayley table")
    families: Dict[str, List[List[int]]] = Field(..., description="Idempotent (as string) -> family of subsets")


class ErrorResponse(BaseModel):
    """Standard error response"""
    error: str = Field(..., description="Error kind")
    message: str = Field(..., description="Error message")
    detail: Dict[str, Any] = Field(default_factory=dict, description="Structured witness")
    timestamp: datetime = Field(default_factory=datetime.utcnow, description="Error timestamp")
