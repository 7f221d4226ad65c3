"""
Theorem suite: every structural claim about an instance run as an
executable check, collected into a pass/fail ledger
"""
import random
from typing import Callable, List, Optional

from loguru import logger

from ..models.errors import InvariantViolation, TooLarge
from ..models.schemas import TheoremResult
from .bitsets import members
from .finsemigroup import classify, idempotents, is_congruence, quotient_by_congruence
from .fintopology import separation_flags
from .subcrypto import (
    discrete_family_check, discrete_full_is_closed, exhaustive_full_subcryptogroups,
    full_subcryptogroup_masks, hausdorff_equivalence, open_full_is_closed,
    quotient_by_n, quotient_correspondence, rho_n, symmetric_pairs, u_disjoint,
    verify_closure_lemmas,
)
from .topoalgebra import (
    TRIVIALIZED, TopoSemigroup, classes_open, h_classes_clopen, hom_check,
    neighborhood_axiom_check, open_filter_system, quotient_by_h,
    rho_classes_open_criterion, separation_per_hclass, special_sets,
    sufficient_condition_holds, topology_from_h_discrete,
    topology_from_neighborhoods, verify_base_properties, verify_star_theorems,
)

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))
from config import settings


class TheoremSuite:
    """Runs the checks that apply to one instance and keeps the ledger"""

    def __init__(self, TS: TopoSemigroup, sample_cap: Optional[int] = None):
        self.TS = TS
        self.sample_cap = sample_cap
        self.results: List[TheoremResult] = []

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[TheoremResult]:
        return [r for r in self.results if not r.passed]

    def skip(self, theorem: str, reason: str):
        logger.warning(f"{self.TS.name}: {theorem} not applicable ({reason})")
        self.results.append(TheoremResult(theorem=theorem, applicable=False, passed=True, note=reason))

    def check(self, theorem: str, holds: bool, checks: int = 1, note: Optional[str] = None,
              witness: Optional[dict] = None):
        self.results.append(TheoremResult(
            theorem=theorem, applicable=True, passed=holds, checks=checks, note=note,
            witness=None if holds else witness,
        ))

    def guarded(self, theorem: str, step: Callable[[], None]):
        """Run a step; cross-check failures become failed ledger rows, size
        limits become skipped ones"""
        try:
            step()
        except TooLarge as e:
            self.skip(theorem, e.message)
        except InvariantViolation as e:
            logger.error(f"{self.TS.name}: {theorem}: {e.message}")
            self.results.append(TheoremResult(
                theorem=theorem, applicable=True, passed=False,
                note=e.message, witness=e.detail,
            ))

    def run(self) -> List[TheoremResult]:
        TS = self.TS
        logger.info(f"Running theorem suite on {TS.name} (n={TS.n})")
        self.guarded("classification", self.classification)
        if not TS.algebra.is_cryptogroup:
            self.skip("cryptogroup-theorems", "not a cryptogroup")
            return self.results

        self.guarded("band-of-groups", self.band_of_groups)
        self.guarded("open-classes", self.open_classes)
        self.guarded("closure-lemmas", lambda: self.results.extend(verify_closure_lemmas(TS, self.sample_cap)))
        self.guarded("rho-n", self.rho_n_congruences)
        if not TS.is_botg:
            self.skip("botg-theorems", "not a band of topological groups")
            return self.results

        self.guarded("star-theorems", lambda: self.results.extend(verify_star_theorems(TS, self.sample_cap)))
        self.guarded("base-properties", lambda: self.results.extend(verify_base_properties(TS)))
        self.guarded("neighborhood-round-trip", self.round_trip)
        self.guarded("continuity-from-idempotents", self.homomorphisms)
        self.guarded("special-sets", self.special)
        self.guarded("separation-per-h-class", self.separation)
        self.guarded("open-full-subcryptogroup-closed", lambda: self.results.append(open_full_is_closed(TS)))
        self.guarded("discrete-full-subcryptogroup-closed",
                     lambda: self.results.append(discrete_full_is_closed(TS)))
        self.guarded("u-disjoint-discrete-family", self.u_disjoint_families)
        self.guarded("quotients-by-n", self.quotients)
        logger.info(f"{TS.name}: {len(self.results)} results, {len(self.failures)} failures")
        return self.results

    # -- sections ----------------------------------------------------------

    def classification(self):
        flags = self.TS.flags
        if flags.is_topological_cryptogroup:
            self.check("botg-routes-agree", flags.is_botg_definitional == flags.is_botg_criterion)
        if sufficient_condition_holds(self.TS):
            self.check("sufficient-condition-gives-botg", flags.is_botg_criterion)

    def band_of_groups(self):
        TS = self.TS
        S, h = TS.S, TS.h
        Q, _ = quotient_by_congruence(S, h.h_partition)
        self.check("quotient-by-h-is-band", idempotents(Q) == Q.full)
        self.check("inverse-involution", all(h.inv[h.inv[x]] == x for x in range(TS.n)))
        self.check(
            "inverse-meets-class-idempotent",
            all(S.mul(x, h.inv[x]) == h.zero[x] == S.mul(h.inv[x], x) for x in range(TS.n)),
            checks=TS.n,
        )
        topology_from_h_discrete(S)
        self.check("h-block-topology-is-botg", True)

    def open_classes(self):
        TS = self.TS
        H = TS.h.h_partition
        self.check("open-classes-criterion", classes_open(TS.T, H) == rho_classes_open_criterion(TS.T, H))
        if TS.is_botg:
            self.check("h-classes-clopen", h_classes_clopen(TS))
            Q = quotient_by_h(TS)
            self.check("quotient-by-h-discrete", separation_flags(Q.T).discrete and classify(Q.S).is_band)

    def rho_n_congruences(self):
        TS = self.TS
        S, h = TS.S, TS.h
        rho = rho_n(S, S.full)
        self.check("rho-of-s-is-h", rho.partition == h.h_partition)
        if TS.n > settings.SUBCRYPTO_CAP:
            self.skip("rho-n-congruence", f"n above {settings.SUBCRYPTO_CAP}")
            return
        normals = full_subcryptogroup_masks(S, only_normal=True)
        for N in normals:
            rho = rho_n(S, N)
            self.check("rho-n-congruence", is_congruence(S, rho.partition), witness={"N": members(N)})
        if TS.n <= settings.ORACLE_MAX_N:
            self.check(
                "enumeration-matches-oracle",
                full_subcryptogroup_masks(S) == exhaustive_full_subcryptogroups(S),
            )

    def round_trip(self):
        TS = self.TS
        NS = open_filter_system(TS)
        report = neighborhood_axiom_check(TS.S, NS)
        self.check("neighborhood-axioms", report.all_hold, checks=len(report.results),
                   witness={"failed": report.failed})
        if report.all_hold:
            rebuilt = topology_from_neighborhoods(TS.S, NS)
            self.check("neighborhood-round-trip", rebuilt == TS.T)

    def homomorphisms(self):
        TS = self.TS
        identity = hom_check(TS, TS, list(range(TS.n)))
        self.check("identity-continuous", identity.is_hom and identity.is_continuous)
        Q = quotient_by_h(TS)
        projection = TS.h.h_partition.class_of
        natural = hom_check(TS, Q, list(projection))
        self.check("projection-continuous", natural.is_hom and natural.is_continuous)

    def special(self):
        report = special_sets(self.TS)
        every = list(report.centralizers.values()) + list(report.power_preidem.values()) + [report.idempotent_set]
        if report.hausdorff:
            self.check("special-sets-closed", all(f.closed for f in every), checks=len(every), note=TRIVIALIZED)
        else:
            self.skip("special-sets-closed", "not Hausdorff")

    def separation(self):
        report = separation_per_hclass(self.TS)
        self.check("separation-per-h-class", all(eq.agrees for eq in report.flags.values()),
                   checks=len(report.flags))
        self.check("separation-chain", report.chain_holds)

    def u_disjoint_families(self):
        TS = self.TS
        rng = random.Random(settings.RANDOM_SEED)
        pairs = symmetric_pairs(TS)
        checks = 0
        for U, V in pairs:
            for _ in range(8):
                A = rng.getrandbits(TS.n)
                discrete = discrete_family_check(TS, A, U, V)
                if u_disjoint(TS, A, U):
                    checks += 1
                    self.check("u-disjoint-family-discrete", discrete, witness={"A": members(A)})
        if not checks:
            logger.debug(f"{TS.name}: no U-disjoint samples drawn")

    def quotients(self):
        TS = self.TS
        if TS.n > settings.SUBCRYPTO_CAP:
            self.skip("hausdorff-triple", f"n above {settings.SUBCRYPTO_CAP}")
            return
        for N in full_subcryptogroup_masks(TS.S, only_normal=True):
            triple = hausdorff_equivalence(TS, N)
            self.check("hausdorff-triple", triple.agree, witness=triple.model_dump())
            quotient_by_n(TS, N)
            if TS.n <= settings.ORACLE_MAX_N:
                self.check("quotient-correspondence", quotient_correspondence(TS, N),
                           witness={"N": members(N)})


def verify_theorems(TS: TopoSemigroup, sample_cap: Optional[int] = None) -> List[TheoremResult]:
    return TheoremSuite(TS, sample_cap).run()


def ledger_passed(results: List[TheoremResult]) -> bool:
    """All applicable checks passed"""
    return all(r.passed for r in results if r.applicable)
